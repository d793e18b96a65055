//! The computations behind each subcommand, returning JSON values.

use std::collections::BTreeMap;

use koszulkit_core::braid_hecke::ConjugationCase;
use koszulkit_core::dg_koszul::{functor_a, functor_b, DgModule, Ext, Kind, Sym, Window};
use koszulkit_core::graded_algebra::{Analysis, KoszulVerdict};
use koszulkit_core::{
    find_affine_conjugation, AffineWeyl, BraidWord, ExtAffineWeylElement, Field, Letter,
    RootSystem, TruncatedHeckeSpace, Weight,
};
use serde_json::{json, Value};

use crate::format::{cohomology_json, AlgebraJson, DgAlgebra, DgModuleJson, FormatError};
use crate::with_field;

#[derive(Debug, thiserror::Error)]
pub enum CommandError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error(transparent)]
    Core(#[from] koszulkit_core::Error),
}

pub type Result<T> = std::result::Result<T, CommandError>;

/// JSON output plus whether every check it reports passed.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub json: Value,
    pub ok: bool,
}

impl Outcome {
    fn ok(json: Value) -> Self {
        Outcome { json, ok: true }
    }
}

fn weight_json(w: &Weight) -> Value {
    json!(w.coords())
}

/// `p = h + 1` unless given.
pub fn default_p(rs: &RootSystem) -> i64 {
    rs.coxeter_number() + 1
}

/// The table of `W⁰`: for each element its normal form `v·t_x`, length,
/// the index of `τ₀w` in the table and `w ∙ 0`.
pub fn w0_table(cartan: &str, p: Option<i64>) -> Result<Value> {
    let rs = RootSystem::build(cartan)?;
    let p = p.unwrap_or_else(|| default_p(&rs));
    let g = AffineWeyl::new(rs.clone());
    let elems = g.enumerate_w0()?;
    let tau0 = g.tau0();
    let index_of = |w: &ExtAffineWeylElement| elems.iter().position(|e| e == w);
    let zero = Weight::zero(rs.rank());
    let mut rows = Vec::with_capacity(elems.len());
    for (k, w) in elems.iter().enumerate() {
        let partner = index_of(&g.multiply(&tau0, w)?);
        rows.push(json!({
            "index": k,
            "finite_word": w.finite_part().word(),
            "translation": weight_json(w.translation()),
            "length": g.length(w),
            "tau0_partner": partner,
            "dot_zero": weight_json(&g.dot_action(w, &zero, p)?),
        }));
    }
    Ok(json!({
        "type": rs.type_name(),
        "p": p,
        "coxeter_number": rs.coxeter_number(),
        "tau0": index_of(&tau0),
        "tau0_length": g.length(&tau0),
        "rows": rows,
    }))
}

pub fn verify_relations(cartan: &str, radius: i64) -> Result<Outcome> {
    let rs = RootSystem::build(cartan)?;
    let space = TruncatedHeckeSpace::build(rs.clone(), radius)?;
    let reports = space.verify_relations();
    let ok = reports.iter().all(|r| r.failures == 0);
    let rels: Vec<Value> = reports
        .iter()
        .map(|r| json!({"relation": r.relation, "instances_checked": r.instances_checked, "failures": r.failures}))
        .collect();
    Ok(Outcome {
        json: json!({"type": rs.type_name(), "radius": radius, "relations": rels}),
        ok,
    })
}

pub fn format_word(w: &BraidWord) -> Vec<String> {
    w.0.iter()
        .map(|l| match l {
            Letter::T {
                index,
                inverse: false,
            } => format!("T{index}"),
            Letter::T {
                index,
                inverse: true,
            } => format!("T{index}^-1"),
            Letter::Theta(x) => format!(
                "theta({})",
                x.coords()
                    .iter()
                    .map(|c| c.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            ),
        })
        .collect()
}

/// `β`, `b₀` and whether `C(s₀) = b₀·T_β·b₀⁻¹` holds on the weight box.
pub fn affine_conjugation(cartan: &str, radius: i64) -> Result<Outcome> {
    let rs = RootSystem::build(cartan)?;
    let g = AffineWeyl::new(rs.clone());
    let c = find_affine_conjugation(&g)?;
    let space = TruncatedHeckeSpace::build(rs.clone(), radius)?;
    let (lhs, rhs) = c.sides(&g);
    let cmp = space.compare(&lhs, &rhs);
    Ok(Outcome {
        json: json!({
            "type": rs.type_name(),
            "beta": c.beta,
            "case": match c.case {
                ConjugationCase::LengthZero => "length_zero",
                ConjugationCase::BraidLengthThree => "braid_length_three",
            },
            "b0": format_word(&c.b0),
            "common_domain": cmp.common_domain,
            "mismatches": cmp.mismatches,
        }),
        ok: cmp.equal(),
    })
}

/// `i0:i1,j0:j1`, both ends inclusive.
pub fn parse_window(s: &str) -> Result<Window> {
    let bad = || CommandError::Usage(format!("window `{s}` is not of the form i0:i1,j0:j1"));
    let (a, b) = s.split_once(',').ok_or_else(bad)?;
    let range = |r: &str| -> Result<(i64, i64)> {
        let (x, y) = r.split_once(':').ok_or_else(bad)?;
        Ok((
            x.trim().parse().map_err(|_| bad())?,
            y.trim().parse().map_err(|_| bad())?,
        ))
    };
    let (i0, i1) = range(a)?;
    let (j0, j1) = range(b)?;
    Ok(Window::new(i0, i1, j0, j1)?)
}

const MAX_WINDOW_CELLS: i64 = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DgAction {
    ApplyA,
    ApplyB,
    Cohomology,
}

pub fn dg(action: DgAction, input: &str, window: Option<&str>) -> Result<Value> {
    let j: DgModuleJson = crate::format::parse_json(input)?;
    let window = window.map(parse_window).transpose()?;
    let algebra = j.algebra()?;
    with_field!(j.field_spec()?, |f| match algebra {
        DgAlgebra::S => dg_on::<_, Sym>(f, &j, action, window.as_ref(), algebra),
        DgAlgebra::T => dg_on::<_, Ext>(f, &j, action, window.as_ref(), algebra),
    })
}

fn dg_on<F: Field, K: Kind>(
    f: &F,
    j: &DgModuleJson,
    action: DgAction,
    window: Option<&Window>,
    algebra: DgAlgebra,
) -> Result<Value> {
    match (action, algebra) {
        (DgAction::Cohomology, _) => {
            let m: DgModule<F, K> = j.to_module(f)?;
            match window {
                Some(w) => {
                    let cells = (w.i_max - w.i_min + 1).saturating_mul(w.j_max - w.j_min + 1);
                    if cells > MAX_WINDOW_CELLS {
                        return Err(CommandError::Usage(format!(
                            "window has {cells} bidegrees, limit {MAX_WINDOW_CELLS}"
                        )));
                    }
                    let keys = (w.i_min..=w.i_max)
                        .flat_map(|i| (w.j_min..=w.j_max).map(move |jj| (i, jj)));
                    Ok(json!(cohomology_json(&m.cohomology_in(w), keys)))
                }
                None => Ok(json!(cohomology_json(
                    &m.cohomology(),
                    m.degrees().iter().copied()
                ))),
            }
        }
        (DgAction::ApplyA, DgAlgebra::S) => {
            let s: DgModule<F, Sym> = j.to_module(f)?;
            Ok(json!(DgModuleJson::from_module(
                &functor_a(&s),
                DgAlgebra::T
            )))
        }
        (DgAction::ApplyB, DgAlgebra::T) => {
            let w = window.ok_or_else(|| CommandError::Usage("apply-B needs --window".into()))?;
            let t: DgModule<F, Ext> = j.to_module(f)?;
            Ok(json!(DgModuleJson::from_module(
                &functor_b(&t, w),
                DgAlgebra::S
            )))
        }
        (DgAction::ApplyA, DgAlgebra::T) => {
            Err(CommandError::Usage("apply-A takes a module over S".into()))
        }
        (DgAction::ApplyB, DgAlgebra::S) => {
            Err(CommandError::Usage("apply-B takes a module over T".into()))
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AlgebraAction {
    IsKoszul,
    ExtDual,
    CheckCriterion,
}

pub fn verdict_json(v: &KoszulVerdict) -> Value {
    match v {
        KoszulVerdict::KoszulUpTo(n) => json!({"verdict": "koszul_up_to", "n": n}),
        KoszulVerdict::FailsAt { step, degrees } => {
            json!({"verdict": "fails_at", "step": step, "degrees": degrees})
        }
        KoszulVerdict::DegreeZeroNotSemisimple => json!({"verdict": "degree_zero_not_semisimple"}),
    }
}

fn dims_json(d: &BTreeMap<i64, usize>) -> Value {
    json!(d
        .iter()
        .map(|(k, v)| (k.to_string(), *v))
        .collect::<BTreeMap<_, _>>())
}

pub const MAX_NMAX: usize = 12;

pub fn algebra(action: AlgebraAction, input: &str, n_max: usize) -> Result<Outcome> {
    if n_max > MAX_NMAX {
        return Err(CommandError::Usage(format!("--nmax is at most {MAX_NMAX}")));
    }
    let j: AlgebraJson = crate::format::parse_json(input)?;
    with_field!(j.field_spec()?, |f| {
        let a = j.to_algebra(f)?;
        let an = Analysis::new(&a)?;
        match action {
            AlgebraAction::IsKoszul => Ok(Outcome::ok(verdict_json(&an.is_koszul(n_max)?))),
            AlgebraAction::ExtDual => Ok(Outcome::ok(json!(AlgebraJson::from_algebra(
                &an.ext_algebra(n_max)?
            )))),
            AlgebraAction::CheckCriterion => check_criterion(&an, n_max),
        }
    })
}

/// If Ext-vanishing holds, `B` must be non-negatively graded with `B₀`
/// semisimple, Koszul, and every projective must have pure radical layers.
pub fn check_criterion<F: Field>(an: &Analysis<F>, n_max: usize) -> Result<Outcome> {
    if !an.ext_vanishing_check(n_max)? {
        return Ok(Outcome::ok(json!({"ext_vanishing": false, "n_max": n_max})));
    }
    let ring = an.endomorphism_ring_b(n_max)?;
    let mut pure = true;
    let mut layers = Vec::new();
    for i in 0..an.num_simples() {
        let ls = an.radical_layers(&an.projective(i));
        pure &= ls.iter().enumerate().all(|(n, l)| l.is_pure(n as i64));
        layers.push(ls.iter().map(|l| dims_json(&l.dims)).collect::<Vec<_>>());
    }
    let ok = ring.non_negative && ring.b0_semisimple && ring.koszul.is_koszul() && pure;
    Ok(Outcome {
        json: json!({
            "ext_vanishing": true,
            "n_max": n_max,
            "b": {
                "dim": ring.algebra.dim(),
                "graded_dims": dims_json(&ring.algebra.graded_dims()),
                "non_negative": ring.non_negative,
                "b0_semisimple": ring.b0_semisimple,
                "koszul": verdict_json(&ring.koszul),
            },
            "radical_layers": layers,
            "radical_layers_pure": pure,
            "consistent": ok,
        }),
        ok,
    })
}
