//! The acceptance suite and the golden-table regression check.
//!
//! Every criterion compares exact values. Criteria run in parallel, capped
//! by `KOSZULKIT_THREADS`; results are reported in criterion order so the
//! JSON report is byte-identical across runs with the same seed.

use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

use koszulkit_core::braid_hecke::ConjugationCase;
use koszulkit_core::dg_koszul::{
    functor_a, koszul_complex, koszul_window, random_module_s, random_module_t, round_trip_ab,
    round_trip_ba, tables_equal, DgModuleS, RandomModuleParams,
};
use koszulkit_core::graded_algebra::{
    bundled_algebras, exterior_algebra, square_zero, truncated_polynomial, Analysis, KoszulVerdict,
};
use koszulkit_core::{
    find_affine_conjugation, AffineWeyl, ExtAffineWeylElement, PrimeField, Rationals, RootSystem,
    TruncatedHeckeSpace, Weight, WeylElement,
};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;

pub const DEFAULT_SEED: u64 = 20240601;

/// The four types the combinatorial criteria range over.
pub const TYPES: [&str; 4] = ["A1", "A2", "B2", "G2"];

pub struct Criterion {
    pub id: u32,
    pub name: &'static str,
    pub limit: Duration,
    run: fn(u64) -> Result<String, String>,
}

pub const CRITERIA: [Criterion; 12] = [
    Criterion {
        id: 1,
        name: "tau0 law",
        limit: Duration::from_secs(1),
        run: tau0_law,
    },
    Criterion {
        id: 2,
        name: "length of tau0, two ways",
        limit: Duration::from_secs(1),
        run: tau0_length,
    },
    Criterion {
        id: 3,
        name: "W0 in bijection with W, independent of p",
        limit: Duration::from_secs(1),
        run: w0_size,
    },
    Criterion {
        id: 4,
        name: "braid relations",
        limit: Duration::from_secs(30),
        run: braid_relations,
    },
    Criterion {
        id: 5,
        name: "affine conjugation",
        limit: Duration::from_secs(30),
        run: affine_conjugation,
    },
    Criterion {
        id: 6,
        name: "Koszul complex acyclicity",
        limit: Duration::from_secs(5),
        run: koszul_acyclic,
    },
    Criterion {
        id: 7,
        name: "duality round trip",
        limit: Duration::from_secs(60),
        run: round_trip,
    },
    Criterion {
        id: 8,
        name: "Ext identification",
        limit: Duration::from_secs(5),
        run: ext_identification,
    },
    Criterion {
        id: 9,
        name: "Koszulity verdicts",
        limit: Duration::from_secs(30),
        run: koszul_verdicts,
    },
    Criterion {
        id: 10,
        name: "criterion pipeline",
        limit: Duration::from_secs(60),
        run: criterion_pipeline,
    },
    Criterion {
        id: 11,
        name: "translation survivor",
        limit: Duration::from_secs(1),
        run: translation_survivor,
    },
    Criterion {
        id: 12,
        name: "singular combinatorics",
        limit: Duration::from_secs(1),
        run: singular,
    },
];

#[derive(Clone, Debug, Serialize)]
pub struct CriterionResult {
    pub id: u32,
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl Criterion {
    pub fn run(&self, seed: u64) -> CriterionResult {
        let start = Instant::now();
        let r = (self.run)(seed);
        let elapsed = start.elapsed();
        let (pass, detail) = match r {
            Ok(d) => (true, d),
            Err(d) => (false, d),
        };
        CriterionResult {
            id: self.id,
            name: self.name,
            pass,
            detail,
            elapsed,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GoldenResult {
    pub pass: bool,
    pub diffs: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub seed: u64,
    pub pass: bool,
    pub criteria: Vec<CriterionResult>,
    pub golden: GoldenResult,
}

/// Thread cap from `KOSZULKIT_THREADS`, if set to a positive integer.
pub fn thread_cap() -> Option<usize> {
    std::env::var("KOSZULKIT_THREADS")
        .ok()?
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
}

pub fn run_all(seed: u64, golden: &BTreeMap<String, Value>) -> Report {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = thread_cap() {
        builder = builder.num_threads(n);
    }
    let pool = builder.build().expect("thread pool");
    let (criteria, diffs) = pool.install(|| {
        rayon::join(
            || CRITERIA.par_iter().map(|c| c.run(seed)).collect::<Vec<_>>(),
            || golden_diff(golden, &golden_snapshot()),
        )
    });
    let golden = GoldenResult {
        pass: diffs.is_empty(),
        diffs,
    };
    Report {
        seed,
        pass: golden.pass && criteria.iter().all(|c| c.pass),
        criteria,
        golden,
    }
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn core<T>(r: koszulkit_core::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn setup(t: &str) -> Result<(RootSystem, AffineWeyl), String> {
    let rs = core(RootSystem::build(t))?;
    Ok((rs.clone(), AffineWeyl::new(rs)))
}

// ---------------------------------------------------------------------------
// affine Weyl combinatorics

fn tau0_law(_: u64) -> Result<String, String> {
    let mut checked = 0;
    for t in TYPES {
        let (_, g) = setup(t)?;
        let tau = g.tau0();
        let w0: BTreeSet<ExtAffineWeylElement> = core(g.enumerate_w0())?.into_iter().collect();
        check(core(g.multiply(&tau, &tau))? == g.identity(), || {
            format!("{t}: tau0 is not an involution")
        })?;
        let lt = g.length(&tau) as i64;
        for w in &w0 {
            let tw = core(g.multiply(&tau, w))?;
            check(w0.contains(&tw), || {
                format!("{t}: tau0·w leaves W0 for w = {w:?}")
            })?;
            let expect = lt - g.length(w) as i64;
            check(g.length(&tw) as i64 == expect, || {
                format!(
                    "{t}: l(tau0 w) = {} but l(tau0) - l(w) = {expect}",
                    g.length(&tw)
                )
            })?;
            checked += 1;
        }
    }
    Ok(format!("{checked} elements over A1, A2, B2, G2"))
}

fn tau0_length(_: u64) -> Result<String, String> {
    let mut out = Vec::new();
    for t in TYPES {
        let (rs, g) = setup(t)?;
        let by_length = g.length(&g.tau0());
        let rho = rs.rho();
        let by_roots: i64 = rs
            .positive_roots()
            .iter()
            .map(|r| rs.pairing(&rho, &r.coroot) - 1)
            .sum();
        check(
            by_length as i64 == by_roots && g.tau0_length_closed_form() == by_length,
            || format!("{t}: length {by_length}, root sum {by_roots}"),
        )?;
        out.push(format!("{t}={by_length}"));
    }
    check(out[0] == "A1=0" && out[1] == "A2=1", || {
        format!("small ranks: {out:?}")
    })?;
    Ok(out.join(" "))
}

/// Every `t_λ·v` with `λ` in a box whose `w ∙ 0` is restricted dominant.
fn w0_by_search(
    rs: &RootSystem,
    g: &AffineWeyl,
    p: i64,
) -> Result<BTreeSet<ExtAffineWeylElement>, String> {
    let n = rs.rank();
    let mut out = BTreeSet::new();
    let zero = Weight::zero(n);
    let ws = core(rs.enumerate_weyl(100))?;
    let mut lam = vec![-2i64; n];
    loop {
        for v in &ws {
            let w = g.from_translation_first(&Weight(lam.clone()), v.clone());
            if core(g.is_restricted_dominant(&core(g.dot_action(&w, &zero, p))?, p))? {
                out.insert(w);
            }
        }
        let Some(k) = lam.iter().position(|&c| c < 2) else {
            break;
        };
        lam[k] += 1;
        for c in &mut lam[..k] {
            *c = -2;
        }
    }
    Ok(out)
}

fn w0_size(_: u64) -> Result<String, String> {
    let orders = [2usize, 6, 8, 12];
    for (t, order) in TYPES.into_iter().zip(orders) {
        let (rs, g) = setup(t)?;
        let listed: BTreeSet<_> = core(g.enumerate_w0())?.into_iter().collect();
        check(
            listed.len() == order && rs.weyl_order() as usize == order,
            || format!("{t}: |W0| = {}, expected {order}", listed.len()),
        )?;
        let h = rs.coxeter_number();
        for p in [h + 1, 2 * h + 1] {
            let found = w0_by_search(&rs, &g, p)?;
            check(found == listed, || {
                format!("{t}, p = {p}: search finds {} elements", found.len())
            })?;
        }
    }
    Ok("sizes 2, 6, 8, 12; same set for p = h+1 and 2h+1".into())
}

fn translation_survivor(_: u64) -> Result<String, String> {
    let mut n = 0;
    for (t, ps) in [("A1", [3i64, 5]), ("A2", [5, 7])] {
        let (rs, g) = setup(t)?;
        let tau = g.tau0();
        let minus_rho = -&rs.rho();
        for p in ps {
            for w in core(g.enumerate_w0())? {
                let r = core(g.translate_simple(&w, &minus_rho, p))?;
                let expect = (w == tau).then(|| rs.rho().scale(p - 1));
                check(r == expect, || {
                    format!("{t}, p = {p}: w = {w:?} gives {r:?}")
                })?;
                n += 1;
            }
        }
    }
    Ok(format!(
        "{n} elements; only tau0 survives, with image (p-1)rho"
    ))
}

/// Elements of `W` with a reduced word in the simple reflections `simple`.
fn parabolic(ws: &[WeylElement], simple: &[usize]) -> BTreeSet<Vec<i64>> {
    ws.iter()
        .filter(|v| v.word().iter().all(|i| simple.contains(i)))
        .map(|v| v.matrix().to_vec())
        .collect()
}

fn singular(_: u64) -> Result<String, String> {
    let mut points = 0;
    for t in TYPES {
        let (rs, g) = setup(t)?;
        let n = rs.rank();
        let p = rs.coxeter_number() + 1;
        let w0 = core(g.enumerate_w0())?;
        let minus_rho = -&rs.rho();
        check(core(g.w0_mu(&minus_rho, p))? == vec![g.tau0()], || {
            format!("{t}: W0_mu(-rho) is not {{tau0}}")
        })?;
        check(core(g.w0_mu(&Weight::zero(n), p))? == w0, || {
            format!("{t}: W0_mu(0) is not W0")
        })?;
        let ws = core(rs.enumerate_weyl(100))?;
        // every weight in the closure of C0, found in a box
        let mut lam = vec![-1i64; n];
        loop {
            let mu = Weight(lam.clone());
            if core(g.in_c0_closure(&mu, p))? {
                points += 1;
                let walls: BTreeSet<(usize, i64)> =
                    core(g.singular_walls(&mu, p))?.into_iter().collect();
                // the affine reflection in (α, m) fixes μ under the dot action iff μ is on that wall
                for (k, r) in rs.positive_roots().iter().enumerate() {
                    for m in -2..=2 {
                        let refl = g.element(rs.reflection(k), r.weight.scale(-m));
                        let fixed = core(g.dot_action(&refl, &mu, p))? == mu;
                        check(fixed == walls.contains(&(k, m)), || {
                            format!(
                                "{t}: mu = {:?}, root {k}, m = {m}: fixed {fixed}",
                                mu.coords()
                            )
                        })?;
                    }
                }
                let stab: BTreeSet<Vec<i64>> = ws
                    .iter()
                    .filter(|v| {
                        g.dot_action(&g.finite(v), &mu, p)
                            .map(|x| x == mu)
                            .unwrap_or(false)
                    })
                    .map(|v| v.matrix().to_vec())
                    .collect();
                let affine_walls = walls.iter().any(|&(_, m)| m != 0);
                for mask in 0u32..(1 << n) {
                    let simple: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
                    let expect = !affine_walls && stab == parabolic(&ws, &simple);
                    let got = core(g.is_parabolic_singularity(&mu, &simple, p))?;
                    check(got == expect, || {
                        format!(
                            "{t}: mu = {:?}, I = {simple:?}: parabolic test says {got}",
                            mu.coords()
                        )
                    })?;
                }
            }
            let Some(k) = lam.iter().position(|&c| c < p) else {
                break;
            };
            lam[k] += 1;
            for c in &mut lam[..k] {
                *c = -1;
            }
        }
    }
    Ok(format!("{points} weights in closures of C0 checked"))
}

// ---------------------------------------------------------------------------
// braid group

fn braid_relations(_: u64) -> Result<String, String> {
    let mut total = 0;
    for t in TYPES {
        let rs = core(RootSystem::build(t))?;
        let space = core(TruncatedHeckeSpace::build(rs.clone(), 4))?;
        for r in space.verify_relations() {
            check(r.failures == 0, || {
                format!("{t}: {} fails on {} instances", r.relation, r.failures)
            })?;
            let vacuous_ok = rs.rank() == 1 && r.relation == "braid";
            check(r.instances_checked > 0 || vacuous_ok, || {
                format!("{t}: {} never tested", r.relation)
            })?;
            total += r.instances_checked;
        }
    }
    Ok(format!("{total} instances, radius 4"))
}

fn affine_conjugation(_: u64) -> Result<String, String> {
    let mut out = Vec::new();
    for (t, case) in [
        ("A1", ConjugationCase::LengthZero),
        ("A2", ConjugationCase::LengthZero),
        ("G2", ConjugationCase::BraidLengthThree),
    ] {
        let (rs, g) = setup(t)?;
        let c = core(find_affine_conjugation(&g))?;
        check(c.case == case, || format!("{t}: found {:?}", c.case))?;
        let space = core(TruncatedHeckeSpace::build(rs, 4))?;
        let (lhs, rhs) = c.sides(&g);
        let cmp = space.compare(&lhs, &rhs);
        check(cmp.equal(), || {
            format!(
                "{t}: {} mismatches on {} monomials",
                cmp.mismatches, cmp.common_domain
            )
        })?;
        out.push(format!(
            "{t}: beta={} on {} monomials",
            c.beta, cmp.common_domain
        ));
    }
    Ok(out.join("; "))
}

// ---------------------------------------------------------------------------
// linear Koszul duality

fn koszul_acyclic(_: u64) -> Result<String, String> {
    for n in 1..=4 {
        let k = core(koszul_complex(&Rationals, n))?;
        check(k.validate().is_valid(), || {
            format!("dim V = {n}: not a dg-module")
        })?;
        let h: BTreeMap<_, _> = k
            .cohomology_in(&koszul_window(n))
            .into_iter()
            .filter(|(_, d)| *d > 0)
            .collect();
        check(h == BTreeMap::from([((0, 0), 1)]), || {
            format!("dim V = {n}: H = {h:?}")
        })?;
    }
    Ok("H = k at (0,0) for dim V = 1..4".into())
}

pub const RANDOM_MODULES: usize = 50;

fn round_trip(seed: u64) -> Result<String, String> {
    let f = PrimeField::new(5).map_err(|e| e.to_string())?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut nonzero = 0;
    for k in 0..RANDOM_MODULES {
        let params = RandomModuleParams {
            dim_v: 1 + k % 3,
            max_dim: 8,
        };
        let t = random_module_t(&f, params, &mut rng);
        check(t.validate().is_valid() && t.dim() <= 8, || {
            format!("module {k} over T is invalid")
        })?;
        let (h, hab) = round_trip_ab(&t);
        check(tables_equal(&h, &hab), || {
            format!("module {k} over T: H = {h:?}, H(AB) = {hab:?}")
        })?;
        let s = random_module_s(&f, params, &mut rng);
        check(s.validate().is_valid() && s.dim() <= 8, || {
            format!("module {k} over S is invalid")
        })?;
        let (h2, hba) = round_trip_ba(&s);
        check(tables_equal(&h2, &hba), || {
            format!("module {k} over S: H = {h2:?}, H(BA) = {hba:?}")
        })?;
        nonzero +=
            usize::from(h.values().any(|&d| d > 0)) + usize::from(h2.values().any(|&d| d > 0));
    }
    Ok(format!(
        "{RANDOM_MODULES} modules over each of S and T, {nonzero} with nonzero cohomology"
    ))
}

fn binomial(n: usize, k: usize) -> usize {
    let mut row = vec![1usize];
    for _ in 0..n {
        let mut next = vec![1usize; row.len() + 1];
        for i in 1..row.len() {
            next[i] = row[i - 1] + row[i];
        }
        row = next;
    }
    row.get(k).copied().unwrap_or(0)
}

fn ext_identification(_: u64) -> Result<String, String> {
    for n in 1..=4 {
        let a = functor_a(&DgModuleS::trivial(&Rationals, n, (0, 0)));
        check(a.validate().is_valid(), || {
            format!("dim V = {n}: A(k) is not a dg-module")
        })?;
        let mut by_degree: BTreeMap<i64, usize> = BTreeMap::new();
        for ((i, _), d) in a.cohomology() {
            *by_degree.entry(i).or_default() += d;
        }
        by_degree.retain(|_, d| *d > 0);
        let expect: BTreeMap<i64, usize> = (0..=n).map(|k| (k as i64, binomial(n, k))).collect();
        check(by_degree == expect, || {
            format!("dim V = {n}: H by degree {by_degree:?}")
        })?;
    }
    // the cohomological degree carries the sign of the exterior grading: H^k, not H^{-k}
    Ok("dim H^k(A(k)) = binom(n, k) for n <= 4, in cohomological degree +k".into())
}

// ---------------------------------------------------------------------------
// graded algebras

fn koszul_verdicts(_: u64) -> Result<String, String> {
    let q = Rationals;
    let lam = core(Analysis::new(&core(exterior_algebra(&q, 2))?))?;
    let v = core(lam.is_koszul(6))?;
    check(v == KoszulVerdict::KoszulUpTo(6), || {
        format!("exterior algebra: {v}")
    })?;
    let ext = core(lam.ext_bigraded_dims(0, 0, 6))?;
    let expect: BTreeMap<(usize, i64), usize> = (0..=6).map(|n| ((n, n as i64), n + 1)).collect();
    check(ext == expect, || {
        format!("exterior algebra: Ext table {ext:?}")
    })?;

    let cubic = core(Analysis::new(&core(truncated_polynomial(&q, 3))?))?;
    let v = core(cubic.is_koszul(6))?;
    check(matches!(v, KoszulVerdict::FailsAt { step: 2, .. }), || {
        format!("k[x]/(x^3): {v}")
    })?;

    for d in 1..=2usize {
        let sz = core(Analysis::new(&core(square_zero(&q, d))?))?;
        let v = core(sz.is_koszul(6))?;
        check(v == KoszulVerdict::KoszulUpTo(6), || {
            format!("square-zero, d = {d}: {v}")
        })?;
        let ext = core(sz.ext_bigraded_dims(0, 0, 6))?;
        let expect: BTreeMap<(usize, i64), usize> =
            (0..=6).map(|n| ((n, n as i64), d.pow(n as u32))).collect();
        check(ext == expect, || {
            format!("square-zero, d = {d}: Ext table {ext:?}")
        })?;
    }
    Ok("exterior: Ext 1..7 on the diagonal; k[x]/(x^3) fails at 2; square-zero: d^n".into())
}

fn criterion_pipeline(_: u64) -> Result<String, String> {
    let q = Rationals;
    let mut hyp = Vec::new();
    for (name, a) in core(bundled_algebras(&q))? {
        let an = core(Analysis::new(&a))?;
        if !core(an.ext_vanishing_check(6))? {
            continue;
        }
        let b = core(an.endomorphism_ring_b(6))?;
        check(b.non_negative, || format!("{name}: B has negative degrees"))?;
        check(b.b0_semisimple, || format!("{name}: B_0 is not semisimple"))?;
        check(b.koszul == KoszulVerdict::KoszulUpTo(6), || {
            format!("{name}: B is {}", b.koszul)
        })?;
        for i in 0..an.num_simples() {
            for (n, layer) in an.radical_layers(&an.projective(i)).iter().enumerate() {
                check(layer.is_pure(n as i64), || {
                    format!(
                        "{name}: layer {n} of P_{i} has degrees {:?}",
                        layer.dims.keys().collect::<Vec<_>>()
                    )
                })?;
            }
        }
        hyp.push(name);
    }
    check(!hyp.is_empty(), || {
        "no bundled algebra satisfies the hypothesis".into()
    })?;
    Ok(format!(
        "{} algebras satisfy Ext-vanishing: {}",
        hyp.len(),
        hyp.join(", ")
    ))
}

// ---------------------------------------------------------------------------
// golden tables

pub const GOLDEN: &str = include_str!("../golden/tables.json");

pub fn embedded_golden() -> BTreeMap<String, Value> {
    serde_json::from_str(GOLDEN).expect("embedded golden tables parse")
}

/// Values the golden file pins down: `W⁰` tables, relation counts and
/// Koszulity verdicts of the bundled algebras.
pub fn golden_snapshot() -> BTreeMap<String, Value> {
    let mut out = BTreeMap::new();
    for t in TYPES {
        let v = crate::commands::w0_table(t, None).unwrap_or_else(|e| Value::String(e.to_string()));
        out.insert(format!("w0_table/{t}"), v);
        let v = crate::commands::verify_relations(t, 3)
            .map(|o| o.json)
            .unwrap_or_else(|e| Value::String(e.to_string()));
        out.insert(format!("relations/{t}"), v);
    }
    let q = Rationals;
    if let Ok(algs) = bundled_algebras(&q) {
        for (name, a) in algs {
            let v = Analysis::new(&a)
                .and_then(|an| an.is_koszul(4))
                .map(|v| crate::commands::verdict_json(&v))
                .unwrap_or_else(|e| Value::String(e.to_string()));
            out.insert(format!("koszul/{name}"), v);
        }
    }
    out
}

/// One line per key whose value differs.
pub fn golden_diff(
    expected: &BTreeMap<String, Value>,
    actual: &BTreeMap<String, Value>,
) -> Vec<String> {
    let keys: BTreeSet<&String> = expected.keys().chain(actual.keys()).collect();
    let mut out = Vec::new();
    for k in keys {
        match (expected.get(k), actual.get(k)) {
            (Some(e), Some(a)) if e == a => {}
            (Some(e), Some(a)) => out.push(format!("{k}: expected {e}, got {a}")),
            (Some(_), None) => out.push(format!("{k}: missing from the computed tables")),
            (None, Some(_)) => out.push(format!("{k}: not in the golden file")),
            (None, None) => unreachable!(),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(4, 2), 6);
        assert_eq!(binomial(3, 0), 1);
        assert_eq!(binomial(2, 3), 0);
    }

    #[test]
    fn golden_diff_names_keys() {
        let mut a = BTreeMap::new();
        a.insert("x".to_string(), Value::from(1));
        a.insert("y".to_string(), Value::from(2));
        let mut b = a.clone();
        assert!(golden_diff(&a, &b).is_empty());
        b.insert("y".to_string(), Value::from(3));
        b.remove("x");
        let d = golden_diff(&a, &b);
        assert_eq!(d.len(), 2);
        assert!(d[0].starts_with("x:") && d[1].starts_with("y: expected 2, got 3"));
    }

    #[test]
    fn search_agrees_for_a1() {
        let (rs, g) = setup("A1").unwrap();
        assert_eq!(w0_by_search(&rs, &g, 3).unwrap().len(), 2);
    }
}
