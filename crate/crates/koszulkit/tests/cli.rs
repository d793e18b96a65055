use std::path::PathBuf;

use koszulkit::cli::run;
use koszulkit::format::{parse_json, AlgebraJson, DgModuleJson};
use serde_json::Value;

fn data(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("data");
    p.push(name);
    p.to_string_lossy().into_owned()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("koszulkit-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn koszulkit(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("koszulkit").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn json_of(args: &[&str]) -> Value {
    let (code, out, err) = koszulkit(args);
    assert_eq!(code, 0, "{args:?}: {err}");
    serde_json::from_str(&out).unwrap()
}

#[test]
fn w0_table_a2() {
    let v = json_of(&["weyl", "--type", "A2", "--p", "5", "w0-table"]);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 6);
    assert_eq!(v["tau0_length"], 1);
    for r in rows {
        let d: Vec<i64> = serde_json::from_value(r["dot_zero"].clone()).unwrap();
        assert!(
            d.iter().all(|&c| (0..5).contains(&c)),
            "{d:?} is not restricted"
        );
    }
    // lengths of w and tau0·w add up to l(tau0)
    for r in rows {
        let partner = &rows[r["tau0_partner"].as_u64().unwrap() as usize];
        assert_eq!(
            r["length"].as_u64().unwrap() + partner["length"].as_u64().unwrap(),
            1
        );
    }
}

#[test]
fn koszul_complex_cohomology() {
    let v = json_of(&["dg", "cohomology", "--in", &data("koszul3.json")]);
    let obj = v.as_object().unwrap();
    assert_eq!(obj["(0,0)"], 1);
    assert!(obj
        .iter()
        .filter(|(k, _)| *k != "(0,0)")
        .all(|(_, d)| *d == 0));
    assert!(obj.len() > 1);
}

#[test]
fn cohomology_in_window_lists_zeros() {
    let v = json_of(&[
        "dg",
        "cohomology",
        "--in",
        &data("trivial_t2.json"),
        "--window",
        "-1:1,0:2",
    ]);
    let obj = v.as_object().unwrap();
    assert_eq!(obj.len(), 9);
    assert_eq!(obj["(0,0)"], 1);
    assert_eq!(obj.values().filter(|d| **d == 0).count(), 8);
}

#[test]
fn functors_chain_through_files() {
    let a_out = scratch("a_of_koszul3.json");
    let (code, out, _) = koszulkit(&[
        "dg",
        "apply-A",
        "--in",
        &data("koszul3.json"),
        "--out",
        a_out.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    let t: DgModuleJson = parse_json(&std::fs::read_to_string(&a_out).unwrap()).unwrap();
    assert_eq!(t.algebra, "T");
    // the Koszul complex is quasi-isomorphic to k, and A(k) has H = Λ(V)∨
    let h = json_of(&["dg", "cohomology", "--in", a_out.to_str().unwrap()]);
    let total: u64 = h
        .as_object()
        .unwrap()
        .values()
        .map(|d| d.as_u64().unwrap())
        .sum();
    assert_eq!(total, 8);

    let b = json_of(&[
        "dg",
        "apply-B",
        "--in",
        &data("trivial_t2.json"),
        "--window=-10:10,-4:0",
    ]);
    let s: DgModuleJson = serde_json::from_value(b).unwrap();
    assert_eq!(s.algebra, "S");
    // B of the trivial module is S(V) with zero differential: 1 + 2 + 3 monomials in j ≥ -4
    assert_eq!(s.basis.len(), 6);
    assert!(s.diff.is_empty());
}

#[test]
fn koszul_verdicts() {
    let v = json_of(&[
        "algebra",
        "is-koszul",
        "--in",
        &data("lambda2.json"),
        "--nmax",
        "6",
    ]);
    assert_eq!(v, serde_json::json!({"verdict": "koszul_up_to", "n": 6}));
    let v = json_of(&["algebra", "is-koszul", "--in", &data("cubic_f3.json")]);
    assert_eq!(v["verdict"], "fails_at");
    assert_eq!(v["step"], 2);
}

#[test]
fn ext_dual_of_exterior_algebra() {
    let v = json_of(&[
        "algebra",
        "ext-dual",
        "--in",
        &data("lambda2.json"),
        "--nmax",
        "3",
    ]);
    let a: AlgebraJson = serde_json::from_value(v).unwrap();
    let mut dims = [0usize; 4];
    for b in a.basis.as_ref().unwrap() {
        dims[b.degree as usize] += 1;
    }
    // a polynomial ring in two variables, truncated
    assert_eq!(dims, [1, 2, 3, 4]);
    // the output is itself a valid algebra file
    let path = scratch("ext_dual.json");
    std::fs::write(&path, serde_json::to_string(&a).unwrap()).unwrap();
    // quadratic commutator plus the relations in degree 4 that truncation adds
    let v = json_of(&[
        "algebra",
        "is-koszul",
        "--in",
        path.to_str().unwrap(),
        "--nmax",
        "2",
    ]);
    assert_eq!(v["verdict"], "fails_at");
    assert_eq!(v["step"], 2);
    assert_eq!(v["degrees"], serde_json::json!([2, 4]));
}

#[test]
fn criterion_on_quiver_file() {
    let v = json_of(&[
        "algebra",
        "check-criterion",
        "--in",
        &data("a3_quiver.json"),
    ]);
    assert_eq!(v["ext_vanishing"], true);
    assert_eq!(v["consistent"], true);
    assert_eq!(v["b"]["koszul"]["verdict"], "koszul_up_to");
    let v = json_of(&["algebra", "check-criterion", "--in", &data("cubic_f3.json")]);
    assert_eq!(v["ext_vanishing"], false);
}

#[test]
fn braid_reports() {
    let v = json_of(&["braid", "--type", "B2", "verify-relations", "--radius", "3"]);
    let rels = v["relations"].as_array().unwrap();
    assert_eq!(rels.len(), 4);
    assert!(rels.iter().all(|r| r["failures"] == 0));
    let v = json_of(&["braid", "--type", "G2", "affine-conjugation"]);
    assert_eq!(v["case"], "braid_length_three");
    assert_eq!(v["mismatches"], 0);
}

#[test]
fn usage_errors_exit_2() {
    let cases: &[&[&str]] = &[
        &["frobnicate"],
        &["weyl", "--type", "A2"],
        &["weyl", "--type", "Z3", "w0-table"],
        &["weyl", "--type", "A2", "--p", "3", "w0-table"],
        &["dg", "cohomology", "--in", "/nonexistent/m.json"],
        &["dg", "apply-B", "--in", "TRIVIAL"],
        &["dg", "apply-A", "--in", "TRIVIAL"],
        &["dg", "cohomology", "--in", "TRIVIAL", "--window", "0:1"],
        &["algebra", "is-koszul", "--in", "KOSZUL3"],
        &["algebra", "is-koszul", "--in", "LAMBDA2", "--nmax", "40"],
    ];
    let trivial = data("trivial_t2.json");
    let koszul3 = data("koszul3.json");
    let lambda2 = data("lambda2.json");
    for case in cases {
        let args: Vec<&str> = case
            .iter()
            .map(|a| match *a {
                "TRIVIAL" => trivial.as_str(),
                "KOSZUL3" => koszul3.as_str(),
                "LAMBDA2" => lambda2.as_str(),
                other => other,
            })
            .collect();
        let (code, out, err) = koszulkit(&args);
        assert_eq!(code, 2, "{args:?}: {out}");
        assert!(!err.is_empty());
    }
}

#[test]
fn malformed_files_exit_2() {
    let bad = scratch("bad.json");
    std::fs::write(&bad, "{\"field\": \"Q\", \"basis\": [").unwrap();
    let (code, _, _) = koszulkit(&["algebra", "is-koszul", "--in", bad.to_str().unwrap()]);
    assert_eq!(code, 2);
    // d² ≠ 0 is reported by name
    std::fs::write(
        &bad,
        r#"{"field": "Q", "algebra": "S", "dimV": 0,
            "basis": [{"id": "a", "i": 0, "j": 0}, {"id": "b", "i": 1, "j": 0}, {"id": "c", "i": 2, "j": 0}],
            "diff": [[1, 0, "1"], [2, 1, "1"]], "actions": []}"#,
    )
    .unwrap();
    let (code, _, err) = koszulkit(&["dg", "cohomology", "--in", bad.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("d∘d ≠ 0"), "{err}");
}

#[test]
fn help_exits_0() {
    let (code, out, _) = koszulkit(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("selftest"));
}

#[test]
fn selftest_is_deterministic_and_catches_bad_golden() {
    let (c1, a, _) = koszulkit(&["selftest", "--seed", "7"]);
    let (c2, b, _) = koszulkit(&["selftest", "--seed", "7"]);
    assert_eq!((c1, c2), (0, 0), "{a}");
    assert_eq!(a, b);
    let report: Value = serde_json::from_str(&a).unwrap();
    assert_eq!(report["criteria"].as_array().unwrap().len(), 12);

    let mut golden = koszulkit::selftest::embedded_golden();
    golden.insert(
        "koszul/truncated_cubic".into(),
        serde_json::json!({"verdict": "koszul_up_to", "n": 4}),
    );
    let path = scratch("corrupt_golden.json");
    std::fs::write(&path, serde_json::to_string(&golden).unwrap()).unwrap();
    let (code, out, _) = koszulkit(&["selftest", "--golden", path.to_str().unwrap()]);
    assert_eq!(code, 1);
    let report: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(report["golden"]["pass"], false);
    let diffs = report["golden"]["diffs"].as_array().unwrap();
    assert_eq!(diffs.len(), 1);
    assert!(diffs[0]
        .as_str()
        .unwrap()
        .starts_with("koszul/truncated_cubic:"));
}
