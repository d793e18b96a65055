//! JSON file formats.
//!
//! Field elements are always strings (`"3"`, `"-1/2"`), so every number in a
//! file is exact. Sparse matrices are lists of `[row, col, "coeff"]` triples
//! over basis indices; the entry at `(row, col)` is the coefficient of basis
//! element `row` in the image of basis element `col`.

use std::collections::{BTreeMap, BTreeSet};

use koszulkit_core::dg_koszul::{CohomologyTable, DgModule, Kind};
use koszulkit_core::graded_algebra::{Arrow, GradedAlgebra, Product, Quiver};
use koszulkit_core::{Field, PrimeField, SparseMatrix};
use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("unknown field `{0}` (expected \"Q\" or \"F_p\")")]
    UnknownField(String),
    #[error("cannot parse `{0}` as a field element")]
    BadElement(String),
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Core(#[from] koszulkit_core::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, FormatError>;

/// The base field named in a file.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldSpec {
    Rationals,
    Prime(u64),
}

impl FieldSpec {
    pub fn parse(s: &str) -> Result<Self> {
        let t = s.trim();
        if t == "Q" {
            return Ok(FieldSpec::Rationals);
        }
        let p = t
            .strip_prefix("F_")
            .and_then(|p| p.parse::<u64>().ok())
            .ok_or_else(|| FormatError::UnknownField(s.to_string()))?;
        PrimeField::new(p)?;
        Ok(FieldSpec::Prime(p))
    }

    pub fn prime_field(self) -> Option<PrimeField> {
        match self {
            FieldSpec::Prime(p) => PrimeField::new(p).ok(),
            FieldSpec::Rationals => None,
        }
    }
}

pub fn field_name<F: Field>(f: &F) -> String {
    match f.characteristic() {
        0 => "Q".to_string(),
        p => format!("F_{p}"),
    }
}

/// Runs `body` with the concrete field named by `spec`.
#[macro_export]
macro_rules! with_field {
    ($spec:expr, |$f:ident| $body:expr) => {
        match $spec {
            $crate::format::FieldSpec::Rationals => {
                let $f = &koszulkit_core::Rationals;
                $body
            }
            $crate::format::FieldSpec::Prime(p) => {
                let $f = &koszulkit_core::PrimeField::new(p).expect("checked when parsed");
                $body
            }
        }
    };
}

fn elem<F: Field>(f: &F, s: &str) -> Result<F::Elem> {
    f.parse(s)
        .ok_or_else(|| FormatError::BadElement(s.to_string()))
}

/// `[row, col, "coeff"]`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Entry(pub usize, pub usize, pub String);

fn sparse_to_json<F: Field>(m: &SparseMatrix<F>) -> Vec<Entry> {
    let f = m.field();
    let mut out: Vec<Entry> = m
        .entries()
        .map(|(r, c, x)| Entry(r, c, f.format(x)))
        .collect();
    out.sort_by_key(|e| (e.0, e.1));
    out
}

fn sparse_from_json<F: Field>(f: &F, n: usize, entries: &[Entry]) -> Result<SparseMatrix<F>> {
    let mut m = SparseMatrix::zeros(f, n, n);
    let mut seen = BTreeSet::new();
    for Entry(r, c, x) in entries {
        if *r >= n || *c >= n {
            return Err(FormatError::Invalid(format!(
                "entry ({r}, {c}) outside a {n}x{n} matrix"
            )));
        }
        if !seen.insert((*r, *c)) {
            return Err(FormatError::Invalid(format!(
                "entry ({r}, {c}) given twice"
            )));
        }
        m.add_to(*r, *c, elem(f, x)?);
    }
    Ok(m)
}

// ---------------------------------------------------------------------------
// dg-modules

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BigradedBasis {
    pub id: String,
    pub i: i64,
    pub j: i64,
}

/// A bigraded dg-module over `S(V)` (`"algebra": "S"`) or `Λ(V)`
/// (`"algebra": "T"`). `actions[k]` is the action of the `k`-th generator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DgModuleJson {
    pub field: String,
    pub algebra: String,
    #[serde(rename = "dimV")]
    pub dim_v: usize,
    pub basis: Vec<BigradedBasis>,
    pub diff: Vec<Entry>,
    pub actions: Vec<Vec<Entry>>,
}

/// Which algebra a dg-module file is over.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DgAlgebra {
    S,
    T,
}

impl DgModuleJson {
    pub fn algebra(&self) -> Result<DgAlgebra> {
        match self.algebra.as_str() {
            "S" => Ok(DgAlgebra::S),
            "T" => Ok(DgAlgebra::T),
            other => Err(FormatError::Invalid(format!(
                "algebra must be \"S\" or \"T\", got `{other}`"
            ))),
        }
    }

    pub fn field_spec(&self) -> Result<FieldSpec> {
        FieldSpec::parse(&self.field)
    }

    pub fn from_module<F: Field, K: Kind>(m: &DgModule<F, K>, algebra: DgAlgebra) -> Self {
        DgModuleJson {
            field: field_name(m.field()),
            algebra: match algebra {
                DgAlgebra::S => "S",
                DgAlgebra::T => "T",
            }
            .to_string(),
            dim_v: m.dim_v(),
            basis: m
                .degrees()
                .iter()
                .enumerate()
                .map(|(k, &(i, j))| BigradedBasis {
                    id: format!("m{k}"),
                    i,
                    j,
                })
                .collect(),
            diff: sparse_to_json(m.differential()),
            actions: m.actions().iter().map(sparse_to_json).collect(),
        }
    }

    /// Builds the module and checks the dg-module axioms.
    pub fn to_module<F: Field, K: Kind>(&self, f: &F) -> Result<DgModule<F, K>> {
        let n = self.basis.len();
        let ids: BTreeSet<&str> = self.basis.iter().map(|b| b.id.as_str()).collect();
        if ids.len() != n {
            return Err(FormatError::Invalid("basis ids are not unique".into()));
        }
        let degrees = self.basis.iter().map(|b| (b.i, b.j)).collect();
        let diff = sparse_from_json(f, n, &self.diff)?;
        let actions = self
            .actions
            .iter()
            .map(|a| sparse_from_json(f, n, a))
            .collect::<Result<Vec<_>>>()?;
        let m = DgModule::new(f, self.dim_v, degrees, diff, actions)?;
        let report = m.validate();
        if !report.is_valid() {
            return Err(FormatError::Invalid(report.violations.join("; ")));
        }
        Ok(m)
    }
}

/// `{"(i,j)": dim}` in bidegree order, listing zeros for every bidegree in
/// `keys`.
pub fn cohomology_json(
    table: &CohomologyTable,
    keys: impl IntoIterator<Item = (i64, i64)>,
) -> serde_json::Map<String, serde_json::Value> {
    let mut all: BTreeMap<(i64, i64), usize> = keys.into_iter().map(|k| (k, 0)).collect();
    all.extend(table.iter().map(|(k, d)| (*k, *d)));
    all.into_iter()
        .map(|((i, j), d)| (format!("({i},{j})"), serde_json::Value::from(d)))
        .collect()
}

// ---------------------------------------------------------------------------
// algebras

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedBasis {
    pub id: String,
    pub degree: i64,
}

/// `[id, "coeff"]`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term(pub String, pub String);

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductJson {
    pub a: String,
    pub b: String,
    pub result: Vec<Term>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowJson {
    pub src: usize,
    pub dst: usize,
    pub degree: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

/// One term of a relation: a coefficient times a path, arrows listed in the
/// order they are travelled.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathTerm {
    pub coeff: String,
    pub path: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuiverJson {
    pub vertices: usize,
    pub arrows: Vec<ArrowJson>,
    #[serde(default)]
    pub relations: Vec<Vec<PathTerm>>,
}

/// Either structure constants (`basis`, `unit`, `products`; products not
/// listed are zero) or a quiver with relations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraJson {
    pub field: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<GradedBasis>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit: Option<Vec<Term>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub products: Option<Vec<ProductJson>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quiver: Option<QuiverJson>,
}

impl AlgebraJson {
    pub fn field_spec(&self) -> Result<FieldSpec> {
        FieldSpec::parse(&self.field)
    }

    pub fn from_algebra<F: Field>(a: &GradedAlgebra<F>) -> Self {
        let f = a.field();
        let ids = a.names();
        let terms = |v: &[(usize, F::Elem)]| -> Vec<Term> {
            v.iter()
                .map(|(c, x)| Term(ids[*c].clone(), f.format(x)))
                .collect()
        };
        let unit: Vec<(usize, F::Elem)> = a
            .unit()
            .iter()
            .enumerate()
            .filter(|(_, x)| !f.is_zero(x))
            .map(|(c, x)| (c, x.clone()))
            .collect();
        let mut products = Vec::new();
        for x in 0..a.dim() {
            for y in 0..a.dim() {
                let r = a.product(x, y);
                if !r.is_empty() {
                    products.push(ProductJson {
                        a: ids[x].clone(),
                        b: ids[y].clone(),
                        result: terms(&r),
                    });
                }
            }
        }
        AlgebraJson {
            field: field_name(f),
            basis: Some(
                ids.iter()
                    .zip(a.degrees())
                    .map(|(id, &degree)| GradedBasis {
                        id: id.clone(),
                        degree,
                    })
                    .collect(),
            ),
            unit: Some(terms(&unit)),
            products: Some(products),
            quiver: None,
        }
    }

    /// Builds the algebra and checks the axioms.
    pub fn to_algebra<F: Field>(&self, f: &F) -> Result<GradedAlgebra<F>> {
        match (&self.basis, &self.unit, &self.products, &self.quiver) {
            (Some(basis), Some(unit), products, None) => {
                let index: BTreeMap<&str, usize> = basis
                    .iter()
                    .enumerate()
                    .map(|(k, b)| (b.id.as_str(), k))
                    .collect();
                if index.len() != basis.len() {
                    return Err(FormatError::Invalid("basis ids are not unique".into()));
                }
                let lookup = |id: &str| {
                    index
                        .get(id)
                        .copied()
                        .ok_or_else(|| FormatError::Invalid(format!("unknown basis id `{id}`")))
                };
                let vector = |ts: &[Term]| -> Result<Vec<(usize, F::Elem)>> {
                    ts.iter()
                        .map(|Term(id, x)| Ok((lookup(id)?, elem(f, x)?)))
                        .collect()
                };
                let mut u = vec![f.zero(); basis.len()];
                for (c, x) in vector(unit)? {
                    u[c] = f.add(&u[c], &x);
                }
                let mut seen = BTreeSet::new();
                let mut prods: Vec<Product<F>> = Vec::new();
                for p in products.iter().flatten() {
                    let (a, b) = (lookup(&p.a)?, lookup(&p.b)?);
                    if !seen.insert((a, b)) {
                        return Err(FormatError::Invalid(format!(
                            "product ({}, {}) given twice",
                            p.a, p.b
                        )));
                    }
                    prods.push((a, b, vector(&p.result)?));
                }
                Ok(GradedAlgebra::new_checked(
                    f,
                    basis.iter().map(|b| b.id.clone()).collect(),
                    basis.iter().map(|b| b.degree).collect(),
                    &prods,
                    u,
                )?)
            }
            (None, None, None, Some(q)) => {
                let quiver = Quiver::<F> {
                    vertices: q.vertices,
                    arrows: q
                        .arrows
                        .iter()
                        .enumerate()
                        .map(|(k, a)| Arrow {
                            src: a.src,
                            dst: a.dst,
                            degree: a.degree,
                            name: a.name.clone().unwrap_or_else(|| format!("a{k}")),
                        })
                        .collect(),
                    relations: q
                        .relations
                        .iter()
                        .map(|rel| {
                            rel.iter()
                                .map(|t| Ok((elem(f, &t.coeff)?, t.path.clone())))
                                .collect::<Result<Vec<_>>>()
                        })
                        .collect::<Result<Vec<_>>>()?,
                };
                let a = quiver.compile(f)?;
                let report = a.validate();
                if !report.is_valid() {
                    return Err(FormatError::Invalid(report.violations.join("; ")));
                }
                Ok(a)
            }
            _ => Err(FormatError::Invalid(
                "an algebra needs either basis + unit (+ products) or a quiver".into(),
            )),
        }
    }
}

pub fn parse_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    Ok(serde_json::from_str(text)?)
}

pub fn emit_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use koszulkit_core::dg_koszul::{koszul_complex, DgModuleS, DgModuleT};
    use koszulkit_core::graded_algebra::{bundled_algebras, exterior_algebra};
    use koszulkit_core::Rationals;

    #[test]
    fn field_names() {
        assert_eq!(FieldSpec::parse("Q").unwrap(), FieldSpec::Rationals);
        assert_eq!(FieldSpec::parse("F_7").unwrap(), FieldSpec::Prime(7));
        assert!(FieldSpec::parse("F_8").is_err());
        assert!(FieldSpec::parse("R").is_err());
        assert_eq!(field_name(&PrimeField::new(5).unwrap()), "F_5");
    }

    #[test]
    fn dg_module_round_trip() {
        let q = Rationals;
        let k = koszul_complex(&q, 3).unwrap();
        let j = DgModuleJson::from_module(&k, DgAlgebra::S);
        let text = emit_json(&j);
        let back: DgModuleJson = parse_json(&text).unwrap();
        assert_eq!(back, j);
        let m: DgModuleS<Rationals> = back.to_module(&q).unwrap();
        assert_eq!(m.degrees(), k.degrees());
        assert_eq!(m.differential(), k.differential());
        assert_eq!(m.actions(), k.actions());
        assert_eq!(
            emit_json(&DgModuleJson::from_module(&m, DgAlgebra::S)),
            text
        );
    }

    #[test]
    fn bad_modules_rejected() {
        let q = Rationals;
        let k = DgModuleT::<Rationals>::trivial(&q, 1, (0, 0));
        let mut j = DgModuleJson::from_module(&k, DgAlgebra::T);
        j.diff.push(Entry(0, 0, "1".into()));
        assert!(j
            .to_module::<_, koszulkit_core::dg_koszul::Ext>(&q)
            .is_err());
        let mut j = DgModuleJson::from_module(&k, DgAlgebra::T);
        j.algebra = "U".into();
        assert!(j.algebra().is_err());
    }

    #[test]
    fn algebra_round_trip() {
        let f = PrimeField::new(5).unwrap();
        for (name, a) in bundled_algebras(&f).unwrap() {
            let j = AlgebraJson::from_algebra(&a);
            let text = emit_json(&j);
            let back: AlgebraJson = parse_json(&text).unwrap();
            assert_eq!(back, j, "{name}");
            let b = back.to_algebra(&f).unwrap();
            assert_eq!(b.degrees(), a.degrees(), "{name}");
            assert_eq!(emit_json(&AlgebraJson::from_algebra(&b)), text, "{name}");
        }
    }

    #[test]
    fn quiver_file() {
        let text = r#"{"field": "Q", "quiver": {"vertices": 3,
            "arrows": [{"src": 0, "dst": 1, "degree": 1}, {"src": 1, "dst": 2, "degree": 1}],
            "relations": [[{"coeff": "1", "path": [0, 1]}]]}}"#;
        let j: AlgebraJson = parse_json(text).unwrap();
        let a = j.to_algebra(&Rationals).unwrap();
        assert_eq!(a.dim(), 5);
    }

    #[test]
    fn non_associative_table_rejected() {
        let q = Rationals;
        let mut j = AlgebraJson::from_algebra(&exterior_algebra(&q, 1).unwrap());
        let unit = j.basis.as_ref().unwrap()[0].id.clone();
        j.products
            .as_mut()
            .unwrap()
            .retain(|p| p.a != unit || p.b != unit);
        assert!(j.to_algebra(&q).is_err());
        let mut j = AlgebraJson::from_algebra(&exterior_algebra(&q, 1).unwrap());
        j.quiver = Some(QuiverJson {
            vertices: 1,
            arrows: vec![],
            relations: vec![],
        });
        assert!(j.to_algebra(&q).is_err());
    }
}
