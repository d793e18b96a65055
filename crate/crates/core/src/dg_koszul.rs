//! Linear Koszul duality over a point.
//!
//! `S = S(V*)` has its generators `y_i*` in bidegree `(2, −2)`, and `Λ = Λ(V)`
//! has its generators `y_i` in bidegree `(−1, 2)`. Bidegrees are written
//! `(i, j)`: cohomological degree first, internal degree second. A dg-module
//! is a finite bigraded space with a differential of bidegree `(1, 0)` and
//! one linear map per generator of `V`.
//!
//! The functor `𝒜(M) = Hom(Λ, M) = Λ∨ ⊗ M` has basis pairs `(I, m)`, for a
//! subset `I` of the generators, standing for the functional `y_I ↦ m`:
//!
//! ```text
//! bideg(I, m) = bideg(m) + (|I|, −2|I|)
//! d₁(I, m) = (−1)^{|I|} (I, d m)
//! d₂(I, m) = −Σ_{i∈I} ε(i, I∖i) (I∖i, y_i*·m)
//! y_k·(I, m) = −ε(k, I∖k) (I∖k, m)            (k ∈ I)
//! ```
//!
//! where `y_k ∧ y_J = ε(k, J) y_{J∪k}`. The functor `ℬ(N) = S ⊗ N` has
//! `d(s ⊗ n) = s ⊗ d n + Σ_i s y_i* ⊗ y_i·n`.
//!
//! `ℬ(N)` is infinite dimensional but each internal degree is finite, and the
//! differential preserves the internal degree. Truncating to a range of
//! internal degrees gives a subquotient dg-module that agrees with `ℬ(N)` on
//! that range, so every windowed computation here is exact on its window.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Debug;
use core::marker::PhantomData;

use rand::Rng;

use crate::field::Field;
use crate::linalg::{Matrix, SparseMatrix, Subspace};
use crate::{Error, Result};

/// Which algebra acts, fixed at the type level.
pub trait Kind: Clone + Debug + PartialEq + Eq + Default {
    /// Bidegree of a generator of `V`.
    const GEN_DEGREE: (i64, i64);
    /// Generators anticommute and square to zero.
    const ODD: bool;
    const NAME: &'static str;
}

/// Modules over `S(V*)`, generators in bidegree `(2, −2)`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Sym;
/// Modules over `Λ(V)`, generators in bidegree `(−1, 2)`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Ext;
/// Modules over `S(V*)` regraded by `ξ`, generators in bidegree `(0, −2)`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SymXi;
/// Bigraded complexes with no algebra acting.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Plain;

impl Kind for Sym {
    const GEN_DEGREE: (i64, i64) = (2, -2);
    const ODD: bool = false;
    const NAME: &'static str = "S";
}
impl Kind for Ext {
    const GEN_DEGREE: (i64, i64) = (-1, 2);
    const ODD: bool = true;
    const NAME: &'static str = "Lambda";
}
impl Kind for SymXi {
    const GEN_DEGREE: (i64, i64) = (0, -2);
    const ODD: bool = false;
    const NAME: &'static str = "R";
}
impl Kind for Plain {
    const GEN_DEGREE: (i64, i64) = (0, 0);
    const ODD: bool = false;
    const NAME: &'static str = "complex";
}

pub type Bidegree = (i64, i64);
/// Nonzero cohomology dimensions by bidegree.
pub type CohomologyTable = BTreeMap<Bidegree, usize>;
pub type SparseVector<F> = BTreeMap<usize, <F as Field>::Elem>;

/// A rectangle of bidegrees.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Window {
    pub i_min: i64,
    pub i_max: i64,
    pub j_min: i64,
    pub j_max: i64,
}

impl Window {
    pub fn new(i_min: i64, i_max: i64, j_min: i64, j_max: i64) -> Result<Self> {
        if i_min > i_max || j_min > j_max {
            return Err(Error::Invalid(format!(
                "empty window {i_min}:{i_max},{j_min}:{j_max}"
            )));
        }
        Ok(Window {
            i_min,
            i_max,
            j_min,
            j_max,
        })
    }

    /// Only internal degrees are bounded.
    pub fn internal(j_min: i64, j_max: i64) -> Result<Self> {
        Self::new(i64::MIN / 4, i64::MAX / 4, j_min, j_max)
    }

    pub fn contains(&self, (i, j): Bidegree) -> bool {
        self.i_min <= i && i <= self.i_max && self.j_min <= j && j <= self.j_max
    }

    pub fn contains_internal(&self, j: i64) -> bool {
        self.j_min <= j && j <= self.j_max
    }
}

/// A finite bigraded dg-module over the algebra selected by `K`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DgModule<F: Field, K: Kind> {
    field: F,
    dim_v: usize,
    degrees: Vec<Bidegree>,
    differential: SparseMatrix<F>,
    actions: Vec<SparseMatrix<F>>,
    _kind: PhantomData<K>,
}

pub type DgModuleS<F> = DgModule<F, Sym>;
pub type DgModuleT<F> = DgModule<F, Ext>;
pub type BigradedComplex<F> = DgModule<F, Plain>;

/// Failed identities found by [`DgModule::validate`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<String>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

fn shifted(a: Bidegree, b: Bidegree) -> Bidegree {
    (a.0 + b.0, a.1 + b.1)
}

impl<F: Field, K: Kind> DgModule<F, K> {
    /// Checks shapes and that every map has the right bidegree.
    pub fn new(
        field: &F,
        dim_v: usize,
        degrees: Vec<Bidegree>,
        differential: SparseMatrix<F>,
        actions: Vec<SparseMatrix<F>>,
    ) -> Result<Self> {
        let n = degrees.len();
        if actions.len() != dim_v {
            return Err(Error::DimensionMismatch(format!(
                "{} action matrices for dim V = {dim_v}",
                actions.len()
            )));
        }
        let check = |m: &SparseMatrix<F>, step: Bidegree, what: &str| -> Result<()> {
            if m.rows() != n || m.cols() != n {
                return Err(Error::DimensionMismatch(format!(
                    "{what} is {}x{}, module has dimension {n}",
                    m.rows(),
                    m.cols()
                )));
            }
            for (r, c, _) in m.entries() {
                if degrees[r] != shifted(degrees[c], step) {
                    return Err(Error::Invalid(format!(
                        "{what} maps basis {c} at {:?} to basis {r} at {:?}",
                        degrees[c], degrees[r]
                    )));
                }
            }
            Ok(())
        };
        check(&differential, (1, 0), "differential")?;
        for (k, a) in actions.iter().enumerate() {
            check(a, K::GEN_DEGREE, &format!("action {k}"))?;
        }
        Ok(DgModule {
            field: field.clone(),
            dim_v,
            degrees,
            differential,
            actions,
            _kind: PhantomData,
        })
    }

    /// The zero module.
    pub fn zero(field: &F, dim_v: usize) -> Self {
        DgModule {
            field: field.clone(),
            dim_v,
            degrees: Vec::new(),
            differential: SparseMatrix::zeros(field, 0, 0),
            actions: vec![SparseMatrix::zeros(field, 0, 0); dim_v],
            _kind: PhantomData,
        }
    }

    /// The one-dimensional module `k` at `degree`, with zero differential and
    /// zero action.
    pub fn trivial(field: &F, dim_v: usize, degree: Bidegree) -> Self {
        DgModule {
            field: field.clone(),
            dim_v,
            degrees: vec![degree],
            differential: SparseMatrix::zeros(field, 1, 1),
            actions: vec![SparseMatrix::zeros(field, 1, 1); dim_v],
            _kind: PhantomData,
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn dim_v(&self) -> usize {
        self.dim_v
    }
    pub fn dim(&self) -> usize {
        self.degrees.len()
    }
    pub fn degrees(&self) -> &[Bidegree] {
        &self.degrees
    }
    pub fn differential(&self) -> &SparseMatrix<F> {
        &self.differential
    }
    pub fn actions(&self) -> &[SparseMatrix<F>] {
        &self.actions
    }

    /// Dimension of each nonzero bidegree.
    pub fn dims(&self) -> CohomologyTable {
        let mut t = CohomologyTable::new();
        for &d in &self.degrees {
            *t.entry(d).or_insert(0) += 1;
        }
        t
    }

    fn by_degree(&self) -> BTreeMap<Bidegree, Vec<usize>> {
        let mut m: BTreeMap<Bidegree, Vec<usize>> = BTreeMap::new();
        for (k, &d) in self.degrees.iter().enumerate() {
            m.entry(d).or_default().push(k);
        }
        m
    }

    /// Checks `d² = 0`, the (anti)commutation of the generators and the
    /// Leibniz rule with the sign of the generator parity.
    pub fn validate(&self) -> ValidationReport {
        let f = &self.field;
        let d = &self.differential;
        let mut violations = Vec::new();
        if !d.compose(d).is_zero() {
            violations.push(String::from("d∘d ≠ 0"));
        }
        let sign = if K::ODD { f.one() } else { f.neg(&f.one()) };
        for (k, a) in self.actions.iter().enumerate() {
            // d a + a d (odd) or d a − a d (even)
            let c = d.compose(a).add(&a.compose(d).scale(&sign));
            if !c.is_zero() {
                let rel = if K::ODD {
                    "d∘y + y∘d"
                } else {
                    "d∘y − y∘d"
                };
                violations.push(format!("{rel} ≠ 0 for generator {k}"));
            }
            for (l, b) in self.actions.iter().enumerate().skip(k) {
                if l == k {
                    if K::ODD && !a.compose(a).is_zero() {
                        violations.push(format!("generator {k} does not square to zero"));
                    }
                    continue;
                }
                let c = a.compose(b).add(&b.compose(a).scale(&sign));
                if !c.is_zero() {
                    let rel = if K::ODD { "anticommute" } else { "commute" };
                    violations.push(format!("generators {k} and {l} do not {rel}"));
                }
            }
        }
        ValidationReport { violations }
    }

    /// `dim ker − dim im` in every bidegree; zero entries are omitted.
    pub fn cohomology(&self) -> CohomologyTable {
        let groups = self.by_degree();
        let empty = Vec::new();
        let mut out = CohomologyTable::new();
        for (&(i, j), idx) in &groups {
            let next = groups.get(&(i + 1, j)).unwrap_or(&empty);
            let prev = groups.get(&(i - 1, j)).unwrap_or(&empty);
            let r_out = if next.is_empty() {
                0
            } else {
                self.differential.block(next, idx).rank()
            };
            let r_in = if prev.is_empty() {
                0
            } else {
                self.differential.block(idx, prev).rank()
            };
            let h = idx.len() - r_out - r_in;
            if h > 0 {
                out.insert((i, j), h);
            }
        }
        out
    }

    /// Cohomology restricted to a window.
    pub fn cohomology_in(&self, w: &Window) -> CohomologyTable {
        self.cohomology()
            .into_iter()
            .filter(|(d, _)| w.contains(*d))
            .collect()
    }

    /// Cocycles whose classes form a basis of the cohomology, per bidegree.
    pub fn cohomology_representatives(&self) -> BTreeMap<Bidegree, Vec<SparseVector<F>>> {
        let f = &self.field;
        let groups = self.by_degree();
        let mut out = BTreeMap::new();
        for (&(i, j), idx) in &groups {
            let n = idx.len();
            let cocycles = match groups.get(&(i + 1, j)) {
                Some(next) => self.differential.block(next, idx).kernel(),
                None => Subspace::full(f, n),
            };
            let boundaries = match groups.get(&(i - 1, j)) {
                Some(prev) => self.differential.block(idx, prev).image(),
                None => Subspace::zero(f, n),
            };
            let mut span = boundaries;
            let mut reps = Vec::new();
            for v in cocycles.basis_vectors() {
                if !span.contains(&v) {
                    span = span
                        .sum(&Subspace::from_vectors(f, n, core::slice::from_ref(&v)))
                        .expect("same ambient");
                    let sparse: SparseVector<F> = idx
                        .iter()
                        .zip(v)
                        .filter(|(_, x)| !f.is_zero(x))
                        .map(|(&k, x)| (k, x))
                        .collect();
                    reps.push(sparse);
                }
            }
            if !reps.is_empty() {
                out.insert((i, j), reps);
            }
        }
        out
    }

    /// `Σ_i (−1)^i dim M^i_j` for every internal degree `j`.
    pub fn euler_characteristics(table: &CohomologyTable) -> BTreeMap<i64, i64> {
        let mut e = BTreeMap::new();
        for (&(i, j), &d) in table {
            let s = if i.rem_euclid(2) == 0 { 1 } else { -1 };
            *e.entry(j).or_insert(0) += s * d as i64;
        }
        e.retain(|_, v| *v != 0);
        e
    }

    /// `M[a]⟨b⟩`: the element in bidegree `(i, j)` moves to `(i − a, j + b)`.
    /// The differential picks up `(−1)^a`, odd generators also act with the
    /// sign `(−1)^a`.
    pub fn shift(&self, a: i64, b: i64) -> Self {
        let f = &self.field;
        let odd_a = a.rem_euclid(2) == 1;
        let minus = f.neg(&f.one());
        let degrees = self.degrees.iter().map(|&(i, j)| (i - a, j + b)).collect();
        let differential = if odd_a {
            self.differential.scale(&minus)
        } else {
            self.differential.clone()
        };
        let actions = self
            .actions
            .iter()
            .map(|m| {
                if odd_a && K::ODD {
                    m.scale(&minus)
                } else {
                    m.clone()
                }
            })
            .collect();
        DgModule {
            field: f.clone(),
            dim_v: self.dim_v,
            degrees,
            differential,
            actions,
            _kind: PhantomData,
        }
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        if self.dim_v != other.dim_v {
            return Err(Error::DimensionMismatch(format!(
                "dim V {} vs {}",
                self.dim_v, other.dim_v
            )));
        }
        let f = &self.field;
        let n = self.dim();
        let m = other.dim();
        let block = |a: &SparseMatrix<F>, b: &SparseMatrix<F>| {
            let mut s = SparseMatrix::zeros(f, n + m, n + m);
            for (r, c, v) in a.entries() {
                s.add_to(r, c, v.clone());
            }
            for (r, c, v) in b.entries() {
                s.add_to(n + r, n + c, v.clone());
            }
            s
        };
        let mut degrees = self.degrees.clone();
        degrees.extend_from_slice(&other.degrees);
        Ok(DgModule {
            field: f.clone(),
            dim_v: self.dim_v,
            degrees,
            differential: block(&self.differential, &other.differential),
            actions: self
                .actions
                .iter()
                .zip(&other.actions)
                .map(|(a, b)| block(a, b))
                .collect(),
            _kind: PhantomData,
        })
    }

    /// The cone of the identity, `M ⊕ M[1]` with `d(x, x') = (d x + x', −d x')`.
    /// It is contractible.
    pub fn cone_of_identity(&self) -> Self {
        let f = &self.field;
        let n = self.dim();
        let sum = self.direct_sum(&self.shift(1, 0)).expect("same dim V");
        let mut d = sum.differential.clone();
        for k in 0..n {
            d.add_to(k, n + k, f.one());
        }
        DgModule {
            differential: d,
            ..sum
        }
    }

    /// The same module with `V` given the basis `y'_i = Σ_k g[i][k] y_k`.
    pub fn change_basis(&self, g: &Matrix<F>) -> Result<Self> {
        if g.rows() != self.dim_v || g.cols() != self.dim_v || g.inverse().is_none() {
            return Err(Error::Invalid(String::from(
                "change of basis must be an invertible dim V x dim V matrix",
            )));
        }
        let f = &self.field;
        let n = self.dim();
        let actions = (0..self.dim_v)
            .map(|i| {
                let mut acc = SparseMatrix::zeros(f, n, n);
                for (k, a) in self.actions.iter().enumerate() {
                    acc = acc.add(&a.scale(g.get(i, k)));
                }
                acc
            })
            .collect();
        Ok(DgModule {
            actions,
            ..self.clone()
        })
    }

    fn reindexed<L: Kind>(&self, map: impl Fn(Bidegree) -> Bidegree) -> DgModule<F, L> {
        DgModule {
            field: self.field.clone(),
            dim_v: self.dim_v,
            degrees: self.degrees.iter().map(|&d| map(d)).collect(),
            differential: self.differential.clone(),
            actions: self.actions.clone(),
            _kind: PhantomData,
        }
    }
}

/// `ξ(M)^i_j = M^{i−j}_j`: bidegree `(a, b)` moves to `(a + b, b)`.
pub fn regrade_xi<F: Field>(m: &DgModuleS<F>) -> DgModule<F, SymXi> {
    m.reindexed(|(a, b)| (a + b, b))
}

pub fn regrade_xi_inverse<F: Field>(m: &DgModule<F, SymXi>) -> DgModuleS<F> {
    m.reindexed(|(i, j)| (i - j, j))
}

/// `ζ(M)^i_j = M^{i+j}_j`: a complex of graded spaces with an element in
/// cohomological degree `n` and internal degree `j` goes to `(n − j, j)`.
pub fn zeta<F: Field>(c: &BigradedComplex<F>) -> BigradedComplex<F> {
    c.reindexed(|(n, j)| (n - j, j))
}

pub fn zeta_inverse<F: Field>(c: &BigradedComplex<F>) -> BigradedComplex<F> {
    c.reindexed(|(i, j)| (i + j, j))
}

/// `ε(k, J)` with `y_k ∧ y_J = ε(k, J) y_{J ∪ k}`, for `k ∉ J`.
fn wedge_sign(k: usize, set: u32) -> bool {
    // true means negative
    (set & ((1u32 << k) - 1)).count_ones() % 2 == 1
}

fn signed<F: Field>(f: &F, negative: bool, x: &F::Elem) -> F::Elem {
    if negative {
        f.neg(x)
    } else {
        x.clone()
    }
}

/// `𝒜(M) = Λ∨ ⊗ M`.
pub fn functor_a<F: Field>(m: &DgModuleS<F>) -> DgModuleT<F> {
    let f = m.field();
    let n = m.dim_v();
    let dm = m.dim();
    let subsets = 1usize << n;
    let index = |set: usize, k: usize| set * dm + k;
    let total = subsets * dm;
    let mut degrees = Vec::with_capacity(total);
    for set in 0..subsets {
        let s = set.count_ones() as i64;
        for &(i, j) in m.degrees() {
            degrees.push((i + s, j - 2 * s));
        }
    }
    let mut d = SparseMatrix::zeros(f, total, total);
    let mut actions = vec![SparseMatrix::zeros(f, total, total); n];
    for set in 0..subsets {
        let odd = set.count_ones() % 2 == 1;
        for (r, c, v) in m.differential().entries() {
            d.add_to(index(set, r), index(set, c), signed(f, odd, v));
        }
        for i in 0..n {
            if set & (1 << i) == 0 {
                continue;
            }
            let rest = set & !(1 << i);
            let eps = wedge_sign(i, rest as u32);
            // d₂ carries an overall minus sign
            for (r, c, v) in m.actions()[i].entries() {
                d.add_to(index(rest, r), index(set, c), signed(f, !eps, v));
            }
            // y_i·(I, m) = −ε (I∖i, m)
            for k in 0..dm {
                actions[i].add_to(index(rest, k), index(set, k), signed(f, !eps, &f.one()));
            }
        }
    }
    DgModule::new(f, n, degrees, d, actions).expect("functor A preserves bidegrees")
}

/// Exponent vectors of all monomials of total degree `deg` in `n` variables.
fn monomials_of_degree(n: usize, deg: u32) -> Vec<Vec<u32>> {
    fn rec(n: usize, deg: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if prefix.len() == n - 1 {
            prefix.push(deg);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for a in (0..=deg).rev() {
            prefix.push(a);
            rec(n, deg - a, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if deg == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(n, deg, &mut Vec::new(), &mut out);
    out
}

/// `ℬ(N) = S ⊗ N` on the internal degrees of `w`. The result is the
/// subquotient of `ℬ(N)` spanned by basis elements with internal degree in
/// the window, which is itself a dg-module and coincides with `ℬ(N)` there.
pub fn functor_b<F: Field>(nmod: &DgModuleT<F>, w: &Window) -> DgModuleS<F> {
    let f = nmod.field();
    let n = nmod.dim_v();
    let mut index: BTreeMap<(Vec<u32>, usize), usize> = BTreeMap::new();
    let mut degrees = Vec::new();
    for (k, &(i, j)) in nmod.degrees().iter().enumerate() {
        // s of degree e sits in (2e, −2e)
        if j < w.j_min {
            continue;
        }
        let max_e = (j - w.j_min) / 2;
        for e in 0..=max_e {
            let jj = j - 2 * e;
            if jj > w.j_max {
                continue;
            }
            if n == 0 && e > 0 {
                break;
            }
            for s in monomials_of_degree(n, e as u32) {
                index.insert((s, k), degrees.len());
                degrees.push((i + 2 * e, jj));
            }
        }
    }
    let total = degrees.len();
    let mut d = SparseMatrix::zeros(f, total, total);
    let mut actions = vec![SparseMatrix::zeros(f, total, total); n];
    for ((s, k), &col) in &index {
        for (&r, v) in nmod.differential().column(*k) {
            if let Some(&row) = index.get(&(s.clone(), r)) {
                d.add_to(row, col, v.clone());
            }
        }
        for i in 0..n {
            let mut t = s.clone();
            t[i] += 1;
            for (&r, v) in nmod.actions()[i].column(*k) {
                if let Some(&row) = index.get(&(t.clone(), r)) {
                    d.add_to(row, col, v.clone());
                }
            }
            if let Some(&row) = index.get(&(t, *k)) {
                actions[i].add_to(row, col, f.one());
            }
        }
    }
    DgModule::new(f, n, degrees, d, actions).expect("functor B preserves bidegrees")
}

/// The Koszul complex `S ⊗ Λ^•` with `Λ^m` in bidegree `(m, −2m)` and the
/// contraction differential, on internal degrees `[−2(dim_v + 2), 2]`. It is
/// `ℬ(𝒜(k))`, a resolution of `k` in bidegree `(0, 0)`.
pub fn koszul_complex<F: Field>(field: &F, dim_v: usize) -> Result<DgModuleS<F>> {
    if !(1..=6).contains(&dim_v) {
        return Err(Error::Invalid(format!(
            "Koszul complex needs 1 <= dim V <= 6, got {dim_v}"
        )));
    }
    let k = DgModuleS::trivial(field, dim_v, (0, 0));
    let w = koszul_window(dim_v);
    Ok(functor_b(&functor_a(&k), &w))
}

/// Internal degrees on which [`koszul_complex`] is built.
pub fn koszul_window(dim_v: usize) -> Window {
    Window::internal(-2 * (dim_v as i64 + 2), 2).expect("nonempty")
}

/// Internal degrees where `𝒜(ℬ(N))` must be computed to compare with `N`
/// on `[j_min − 2, j_max + 2]`: `𝒜` in internal degree `j` reads `ℬ(N)` in
/// `[j, j + 2 dim V]`.
pub fn round_trip_windows<F: Field, K: Kind>(m: &DgModule<F, K>) -> Option<(Window, Window)> {
    let jmin = m.degrees().iter().map(|d| d.1).min()?;
    let jmax = m.degrees().iter().map(|d| d.1).max()?;
    let n = 2 * m.dim_v() as i64;
    let compare = Window::internal(jmin - 2, jmax + 2).ok()?;
    let build = if K::ODD {
        Window::internal(jmin - 2, jmax + 2 + n).ok()?
    } else {
        Window::internal(jmin - n - 2, jmax + 2).ok()?
    };
    Some((build, compare))
}

/// `H(N)` and `H(𝒜(ℬ(N)))` on the comparison window.
pub fn round_trip_ab<F: Field>(nmod: &DgModuleT<F>) -> (CohomologyTable, CohomologyTable) {
    let Some((build, compare)) = round_trip_windows(nmod) else {
        return (CohomologyTable::new(), CohomologyTable::new());
    };
    let ab = functor_a(&functor_b(nmod, &build));
    (nmod.cohomology_in(&compare), ab.cohomology_in(&compare))
}

/// `H(M)` and `H(ℬ(𝒜(M)))` on the comparison window.
pub fn round_trip_ba<F: Field>(m: &DgModuleS<F>) -> (CohomologyTable, CohomologyTable) {
    let Some((build, compare)) = round_trip_windows(m) else {
        return (CohomologyTable::new(), CohomologyTable::new());
    };
    let ba = functor_b(&functor_a(m), &build);
    (m.cohomology_in(&compare), ba.cohomology_in(&compare))
}

/// The isomorphism `ψ : Λ → Λ∨ ⊗ det V [n]⟨2n⟩`, `ψ(t)(u) = (−1)^{j(j+1)/2}`
/// times the top coefficient of `t ∧ u` for `t ∈ Λ^j`.
#[derive(Clone, Debug)]
pub struct PsiDuality<F: Field> {
    pub dim_v: usize,
    /// Row `U`, column `J`: `ψ(y_J)(y_U)`, both indexed by subsets as bitmasks.
    pub matrix: Matrix<F>,
}

/// `(−1)^{j(j+1)/2}`, negative when true.
pub fn psi_sign(j: u32) -> bool {
    (j * (j + 1) / 2) % 2 == 1
}

/// Sign of `y_A ∧ y_B` relative to `y_{A∪B}`, `None` when they overlap.
fn wedge_sets(a: u32, b: u32) -> Option<bool> {
    if a & b != 0 {
        return None;
    }
    let mut neg = false;
    for k in 0..32 {
        if b & (1 << k) != 0 {
            // move y_k left past the elements of a above k
            let above = (a >> (k + 1)).count_ones();
            if above % 2 == 1 {
                neg = !neg;
            }
        }
    }
    Some(neg)
}

pub fn psi_top_duality<F: Field>(field: &F, dim_v: usize) -> Result<PsiDuality<F>> {
    if !(1..=6).contains(&dim_v) {
        return Err(Error::Invalid(format!(
            "psi needs 1 <= dim V <= 6, got {dim_v}"
        )));
    }
    let size = 1usize << dim_v;
    let top = (size - 1) as u32;
    let mut matrix = Matrix::zeros(field, size, size);
    for t in 0..size as u32 {
        let u = top & !t;
        let neg = wedge_sets(t, u).expect("complementary") ^ psi_sign(t.count_ones());
        matrix.set(u as usize, t as usize, signed(field, neg, &field.one()));
    }
    Ok(PsiDuality { dim_v, matrix })
}

impl<F: Field> PsiDuality<F> {
    /// `ψ(t)(u)` for basis monomials.
    pub fn pair(&self, t: u32, u: u32) -> F::Elem {
        self.matrix.get(u as usize, t as usize).clone()
    }

    pub fn is_invertible(&self) -> bool {
        self.matrix.inverse().is_some()
    }

    /// `ψ(s t)(u) = (−1)^{deg(s)(deg(s)+1)/2} ψ(t)(s u)` for `s = y_k`, with
    /// `deg` the exterior degree. Returns the number of failing triples.
    pub fn equivariance_failures(&self) -> usize {
        let f = self.matrix.field();
        let n = self.dim_v;
        let size = 1u32 << n;
        let mut failures = 0;
        for k in 0..n {
            let s = 1u32 << k;
            for t in 0..size {
                for u in 0..size {
                    let lhs = match wedge_sets(s, t) {
                        Some(neg) => signed(f, neg, &self.pair(s | t, u)),
                        None => f.zero(),
                    };
                    let rhs = match wedge_sets(s, u) {
                        Some(neg) => signed(f, neg ^ psi_sign(1), &self.pair(t, s | u)),
                        None => f.zero(),
                    };
                    if lhs != rhs {
                        failures += 1;
                    }
                }
            }
        }
        failures
    }
}

/// Bidegree-wise comparison of two cohomology tables, including zeros.
pub fn tables_equal(a: &CohomologyTable, b: &CohomologyTable) -> bool {
    a == b
}

/// Monomial bases of `S` and `Λ` used by the random module generator.
trait Monomials: Kind {
    type Mono: Clone + Ord + Debug;
    fn all(n: usize, max_deg: u32) -> Vec<Self::Mono>;
    fn degree(m: &Self::Mono) -> u32;
    fn divides(a: &Self::Mono, b: &Self::Mono) -> bool;
    /// `a·b` with its sign (true = negative), `None` if zero.
    fn mul(a: &Self::Mono, b: &Self::Mono) -> Option<(bool, Self::Mono)>;
    fn generator(n: usize, i: usize) -> Self::Mono;
}

impl Monomials for Sym {
    type Mono = Vec<u32>;
    fn all(n: usize, max_deg: u32) -> Vec<Vec<u32>> {
        (0..=max_deg)
            .flat_map(|e| monomials_of_degree(n, e))
            .collect()
    }
    fn degree(m: &Vec<u32>) -> u32 {
        m.iter().sum()
    }
    fn divides(a: &Vec<u32>, b: &Vec<u32>) -> bool {
        a.iter().zip(b).all(|(x, y)| x <= y)
    }
    fn mul(a: &Vec<u32>, b: &Vec<u32>) -> Option<(bool, Vec<u32>)> {
        Some((false, a.iter().zip(b).map(|(x, y)| x + y).collect()))
    }
    fn generator(n: usize, i: usize) -> Vec<u32> {
        let mut v = vec![0; n];
        v[i] = 1;
        v
    }
}

impl Monomials for Ext {
    type Mono = u32;
    fn all(n: usize, max_deg: u32) -> Vec<u32> {
        (0..1u32 << n)
            .filter(|m| m.count_ones() <= max_deg)
            .collect()
    }
    fn degree(m: &u32) -> u32 {
        m.count_ones()
    }
    fn divides(a: &u32, b: &u32) -> bool {
        a & b == *a
    }
    fn mul(a: &u32, b: &u32) -> Option<(bool, u32)> {
        wedge_sets(*a, *b).map(|neg| (neg, a | b))
    }
    fn generator(_n: usize, i: usize) -> u32 {
        1 << i
    }
}

/// Parameters of the random module generators.
#[derive(Clone, Copy, Debug)]
pub struct RandomModuleParams {
    pub dim_v: usize,
    pub max_dim: usize,
}

struct Gen<M> {
    degree: Bidegree,
    /// Surviving monomials `m` with `m·g ≠ 0`.
    basis: Vec<M>,
    /// `d g = Σ c·t·g_s` over bottom generators.
    diff: Vec<(usize, M, i64)>,
}

fn random_ideal_complement<K: Monomials, R: Rng + ?Sized>(
    rng: &mut R,
    all: &[K::Mono],
    max_deg: u32,
    allowed: impl Fn(&K::Mono) -> bool,
) -> Vec<K::Mono> {
    let gens: Vec<&K::Mono> = all
        .iter()
        .filter(|m| K::degree(m) > 0 && rng.gen_bool(0.25))
        .collect();
    all.iter()
        .filter(|m| {
            let in_ideal = K::degree(m) > max_deg || gens.iter().any(|g| K::divides(g, m));
            // J = random ideal ∩ allowed
            !(in_ideal && allowed(m))
        })
        .cloned()
        .collect()
}

fn random_module_of<F: Field, K: Monomials, R: Rng + ?Sized>(
    field: &F,
    p: RandomModuleParams,
    rng: &mut R,
) -> DgModule<F, K> {
    let n = p.dim_v;
    let cap = if K::ODD { n as u32 } else { 2 };
    let all = K::all(n, if K::ODD { n as u32 } else { cap + 2 });
    loop {
        let mut gens: Vec<Gen<K::Mono>> = Vec::new();
        let bottom = rng.gen_range(1..=2);
        for _ in 0..bottom {
            let degree = (rng.gen_range(-2..=2), rng.gen_range(-3..=3));
            let max_deg = rng.gen_range(0..=cap);
            let basis = random_ideal_complement::<K, _>(rng, &all, max_deg, |_| true);
            gens.push(Gen {
                degree,
                basis,
                diff: Vec::new(),
            });
        }
        let top = rng.gen_range(0..=2);
        for _ in 0..top {
            let s0 = rng.gen_range(0..bottom);
            let t0: Vec<&K::Mono> = gens[s0].basis.iter().collect();
            let t = t0[rng.gen_range(0..t0.len())].clone();
            let e = K::degree(&t) as i64;
            let g = K::GEN_DEGREE;
            let ds = gens[s0].degree;
            let degree = (e * g.0 + ds.0 - 1, e * g.1 + ds.1);
            let mut diff = vec![(s0, t, rng.gen_range(1..=3) as i64)];
            for s in 0..bottom {
                if s == s0 || !rng.gen_bool(0.5) {
                    continue;
                }
                // need t' of degree e' with e'·g = degree + (1,0) − deg(g_s)
                let want = (degree.0 + 1 - gens[s].degree.0, degree.1 - gens[s].degree.1);
                let cands: Vec<&K::Mono> = gens[s]
                    .basis
                    .iter()
                    .filter(|m| {
                        let e = K::degree(m) as i64;
                        (e * g.0, e * g.1) == want
                    })
                    .collect();
                if !cands.is_empty() {
                    let t = cands[rng.gen_range(0..cands.len())].clone();
                    let c = if rng.gen_bool(0.5) { 1 } else { -1 };
                    diff.push((s, t, c));
                }
            }
            let max_deg = if K::ODD {
                n as u32
            } else {
                diff.iter()
                    .map(|(s, t, _)| {
                        let ks = gens[*s]
                            .basis
                            .iter()
                            .map(|m| K::degree(m))
                            .max()
                            .unwrap_or(0);
                        ks.saturating_sub(K::degree(t))
                    })
                    .max()
                    .unwrap_or(0)
            };
            let gens_ref = &gens;
            let diff_ref = &diff;
            // m may lie in J_r only if every m·t lies in J_s
            let allowed = |m: &K::Mono| {
                diff_ref.iter().all(|(s, t, _)| match K::mul(m, t) {
                    None => true,
                    Some((_, mt)) => !gens_ref[*s].basis.contains(&mt),
                })
            };
            let basis = random_ideal_complement::<K, _>(rng, &all, max_deg, allowed);
            gens.push(Gen {
                degree,
                basis,
                diff,
            });
        }

        let mut index: BTreeMap<(usize, K::Mono), usize> = BTreeMap::new();
        let mut degrees = Vec::new();
        for (gi, g) in gens.iter().enumerate() {
            for m in &g.basis {
                let e = K::degree(m) as i64;
                index.insert((gi, m.clone()), degrees.len());
                degrees.push((
                    g.degree.0 + e * K::GEN_DEGREE.0,
                    g.degree.1 + e * K::GEN_DEGREE.1,
                ));
            }
        }
        let total = degrees.len();
        if total == 0 || total > p.max_dim {
            continue;
        }
        let f = field;
        let mut d = SparseMatrix::zeros(f, total, total);
        let mut actions = vec![SparseMatrix::zeros(f, total, total); n];
        for ((gi, m), &col) in &index {
            for i in 0..n {
                if let Some((neg, ym)) = K::mul(&K::generator(n, i), m) {
                    if let Some(&row) = index.get(&(*gi, ym)) {
                        actions[i].add_to(row, col, signed(f, neg, &f.one()));
                    }
                }
            }
            let sign_m = K::ODD && K::degree(m) % 2 == 1;
            for (s, t, c) in &gens[*gi].diff {
                if let Some((neg, mt)) = K::mul(m, t) {
                    if let Some(&row) = index.get(&(*s, mt)) {
                        d.add_to(row, col, signed(f, neg ^ sign_m, &f.from_i64(*c)));
                    }
                }
            }
        }
        let module = DgModule::new(f, n, degrees, d, actions).expect("homogeneous by construction");
        if module.validate().is_valid() {
            return module;
        }
    }
}

/// A random finite dg-module over `S(V*)`: cyclic monomial quotients in one
/// or two layers, with the top layer differential landing in the bottom one.
pub fn random_module_s<F: Field, R: Rng + ?Sized>(
    field: &F,
    params: RandomModuleParams,
    rng: &mut R,
) -> DgModuleS<F> {
    random_module_of::<F, Sym, R>(field, params, rng)
}

/// A random finite dg-module over `Λ(V)`, built like [`random_module_s`].
pub fn random_module_t<F: Field, R: Rng + ?Sized>(
    field: &F,
    params: RandomModuleParams,
    rng: &mut R,
) -> DgModuleT<F> {
    random_module_of::<F, Ext, R>(field, params, rng)
}

/// Distinct bidegrees appearing in a table.
pub fn support(t: &CohomologyTable) -> BTreeSet<Bidegree> {
    t.keys().copied().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn binom(n: usize, k: usize) -> usize {
        if k > n {
            return 0;
        }
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn trivial_module_is_valid() {
        let q = Rationals;
        let k = DgModuleS::trivial(&q, 2, (0, 0));
        assert!(k.validate().is_valid());
        assert_eq!(k.cohomology(), k.dims());
    }

    #[test]
    fn bad_differential_is_reported() {
        let q = Rationals;
        let mut d = SparseMatrix::zeros(&q, 3, 3);
        d.add_to(1, 0, q.one());
        d.add_to(2, 1, q.one());
        let m = DgModuleS::new(&q, 0, vec![(0, 0), (1, 0), (2, 0)], d, vec![]).unwrap();
        let r = m.validate();
        assert!(!r.is_valid());
        assert!(r.violations[0].contains("d∘d"));
    }

    #[test]
    fn inhomogeneous_maps_rejected() {
        let q = Rationals;
        let mut d = SparseMatrix::zeros(&q, 2, 2);
        d.add_to(1, 0, q.one());
        assert!(DgModuleS::new(&q, 0, vec![(0, 0), (2, 0)], d, vec![]).is_err());
    }

    #[test]
    fn koszul_complex_resolves_k() {
        let f = PrimeField::new(101).unwrap();
        for n in 1..=4 {
            let k = koszul_complex(&f, n).unwrap();
            assert!(k.validate().is_valid());
            let h = k.cohomology();
            assert_eq!(h, CohomologyTable::from([((0, 0), 1)]), "dim V = {n}");
            let chi = DgModuleS::<PrimeField>::euler_characteristics(&k.dims());
            for (j, e) in chi {
                assert!(j == 0 && e == 1, "j = {j}, chi = {e}");
            }
        }
    }

    #[test]
    fn a_of_trivial_module() {
        let q = Rationals;
        for n in 1..=4 {
            let k = DgModuleS::trivial(&q, n, (0, 0));
            let a = functor_a(&k);
            assert!(a.validate().is_valid());
            assert!(a.differential().is_zero());
            let h = a.cohomology();
            for p in 0..=n as i64 {
                let dim = h.get(&(p, -2 * p)).copied().unwrap_or(0);
                assert_eq!(dim, binom(n, p as usize));
                if p > 0 {
                    assert!(!h.keys().any(|&(i, _)| i == -p));
                }
            }
        }
    }

    #[test]
    fn b_of_trivial_module_is_s() {
        let q = Rationals;
        let k = DgModuleT::trivial(&q, 2, (0, 0));
        let w = Window::internal(-6, 0).unwrap();
        let b = functor_b(&k, &w);
        assert!(b.differential().is_zero());
        assert!(b.validate().is_valid());
        // S_e has dimension e + 1 in two variables
        assert_eq!(
            b.dims(),
            CohomologyTable::from([((0, 0), 1), ((2, -2), 2), ((4, -4), 3), ((6, -6), 4)])
        );
    }

    #[test]
    fn b_of_free_exterior_module() {
        // Λ as a module over itself: ℬ(Λ) ≅ k[−1]⟨2⟩... H is k in bidegree (−n, 2n)
        let q = Rationals;
        for n in 1..=3usize {
            let size = 1usize << n;
            let degrees: Vec<Bidegree> = (0..size)
                .map(|s| {
                    let c = s.count_ones() as i64;
                    (-c, 2 * c)
                })
                .collect();
            let mut actions = vec![SparseMatrix::zeros(&q, size, size); n];
            for (k, a) in actions.iter_mut().enumerate() {
                for s in 0..size as u32 {
                    if let Some(neg) = wedge_sets(1 << k, s) {
                        a.add_to((s | 1 << k) as usize, s as usize, signed(&q, neg, &q.one()));
                    }
                }
            }
            let lam = DgModuleT::new(&q, n, degrees, SparseMatrix::zeros(&q, size, size), actions)
                .unwrap();
            assert!(lam.validate().is_valid());
            let b = functor_b(&lam, &Window::internal(-6, 2 * n as i64 + 2).unwrap());
            assert!(b.validate().is_valid());
            let n = n as i64;
            assert_eq!(b.cohomology(), CohomologyTable::from([((-n, 2 * n), 1)]));
        }
    }

    #[test]
    fn a_of_free_module_on_window() {
        let q = Rationals;
        // S restricted to internal degrees ≥ −8: a quotient of S
        let k = DgModuleT::trivial(&q, 2, (0, 0));
        let s = functor_b(&k, &Window::internal(-8, 0).unwrap());
        let a = functor_a(&s);
        assert!(a.validate().is_valid());
        // trustworthy where j + 4 ≤ 0 reaches inside the window
        let w = Window::internal(-4, 4).unwrap();
        assert_eq!(a.cohomology_in(&w), CohomologyTable::from([((0, 0), 1)]));
    }

    #[test]
    fn ext_oracle_in_one_variable() {
        // M = S/(y) ⊕ (S/(y²))⟨shift⟩ with zero differential
        let q = Rationals;
        let degrees = vec![(0, 0), (1, 1), (3, -1)];
        let mut y = SparseMatrix::zeros(&q, 3, 3);
        y.add_to(2, 1, q.one());
        let m = DgModuleS::new(
            &q,
            1,
            degrees,
            SparseMatrix::zeros(&q, 3, 3),
            vec![y.clone()],
        )
        .unwrap();
        let a = functor_a(&m);
        assert!(a.validate().is_valid());
        // with a single generator, 𝒜(M) is coker(y) at deg m and ker(y) at deg m + (1, −2)
        let dense = y.to_dense();
        let ker = dense.kernel();
        let img = dense.image();
        let mut expected = CohomologyTable::new();
        for (k, &(i, j)) in m.degrees().iter().enumerate() {
            let mut e = vec![q.zero(); 3];
            e[k] = q.one();
            if !img.contains(&e) {
                *expected.entry((i, j)).or_insert(0) += 1;
            }
            if ker.contains(&e) {
                *expected.entry((i + 1, j - 2)).or_insert(0) += 1;
            }
        }
        assert_eq!(a.cohomology(), expected);
    }

    #[test]
    fn random_modules_validate_and_round_trip() {
        let f = PrimeField::new(7).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in 1..=3 {
            let p = RandomModuleParams {
                dim_v: n,
                max_dim: 8,
            };
            for _ in 0..8 {
                let t = random_module_t(&f, p, &mut rng);
                assert!(t.validate().is_valid());
                let (h, hab) = round_trip_ab(&t);
                assert_eq!(h, hab);
                let s = random_module_s(&f, p, &mut rng);
                assert!(s.validate().is_valid());
                assert!(functor_a(&s).validate().is_valid());
                let (h, hba) = round_trip_ba(&s);
                assert_eq!(h, hba);
            }
        }
    }

    #[test]
    fn contractible_summand_is_invisible() {
        let q = Rationals;
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let p = RandomModuleParams {
            dim_v: 2,
            max_dim: 6,
        };
        let m = random_module_s(&q, p, &mut rng);
        let c = random_module_s(&q, p, &mut rng).cone_of_identity();
        assert!(c.validate().is_valid());
        assert!(c.cohomology().is_empty());
        let sum = m.direct_sum(&c).unwrap();
        assert_eq!(functor_a(&sum).cohomology(), functor_a(&m).cohomology());
        let t = random_module_t(&q, p, &mut rng).cone_of_identity();
        assert!(t.validate().is_valid());
        assert!(t.cohomology().is_empty());
    }

    #[test]
    fn basis_change_keeps_cohomology() {
        let q = Rationals;
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let p = RandomModuleParams {
            dim_v: 2,
            max_dim: 8,
        };
        let g = Matrix::from_i64(&q, &[&[1, 2], &[1, 3]]);
        for _ in 0..5 {
            let m = random_module_s(&q, p, &mut rng);
            let m2 = m.change_basis(&g).unwrap();
            assert!(m2.validate().is_valid());
            assert_eq!(functor_a(&m).cohomology(), functor_a(&m2).cohomology());
        }
    }

    #[test]
    fn shifts() {
        let q = Rationals;
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let m = random_module_t(
            &q,
            RandomModuleParams {
                dim_v: 2,
                max_dim: 8,
            },
            &mut rng,
        );
        assert_eq!(m.shift(0, 0), m);
        assert_eq!(m.shift(0, 1).shift(0, -1), m);
        let s = m.shift(3, 0);
        assert!(s.validate().is_valid());
        let expected: CohomologyTable = m
            .cohomology()
            .into_iter()
            .map(|((i, j), d)| ((i - 3, j), d))
            .collect();
        assert_eq!(s.cohomology(), expected);
    }

    #[test]
    fn xi_regrading() {
        let q = Rationals;
        let k = DgModuleT::trivial(&q, 1, (0, 0));
        let s = functor_b(&k, &Window::internal(-2, 0).unwrap());
        let x = regrade_xi(&s);
        assert!(x.validate().is_valid());
        // the generator y* at (2, −2) lands at (0, −2)
        assert!(x.degrees().contains(&(0, -2)));
        assert_eq!(regrade_xi_inverse(&x), s);
        let h: CohomologyTable = s
            .cohomology()
            .into_iter()
            .map(|((a, b), d)| ((a + b, b), d))
            .collect();
        assert_eq!(x.cohomology(), h);
    }

    #[test]
    fn zeta_reindexing() {
        let q = Rationals;
        let one = BigradedComplex::trivial(&q, 0, (0, 0));
        assert_eq!(zeta(&one), one);
        let mut d = SparseMatrix::zeros(&q, 2, 2);
        d.add_to(1, 0, q.one());
        let c = BigradedComplex::new(&q, 0, vec![(0, 3), (1, 3)], d, vec![]).unwrap();
        assert_eq!(zeta_inverse(&zeta(&c)), c);
        // ζ(M⟨1⟩) = ζ(M)[1]⟨1⟩ up to the sign of d
        let lhs = zeta(&c.shift(0, 1));
        let rhs = zeta(&c).shift(1, 1);
        assert_eq!(lhs.degrees(), rhs.degrees());
        assert_eq!(
            lhs.differential(),
            &rhs.differential().scale(&q.neg(&q.one()))
        );
    }

    #[test]
    fn psi_duality() {
        let q = Rationals;
        let one = psi_top_duality(&q, 1).unwrap();
        assert_eq!(one.pair(0, 1), q.one());
        let two = psi_top_duality(&q, 2).unwrap();
        // ψ(y_1)(y_2): sign (−1)^{1} and y_1 ∧ y_2 = +top
        assert_eq!(two.pair(1, 2), q.from_i64(-1));
        for n in 1..=6 {
            let p = psi_top_duality(&q, n).unwrap();
            assert!(p.is_invertible());
            assert_eq!(p.equivariance_failures(), 0, "n = {n}");
        }
        assert!(psi_top_duality(&q, 7).is_err());
    }

    #[test]
    fn representatives_match_table() {
        let f = PrimeField::new(5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let m = random_module_s(
            &f,
            RandomModuleParams {
                dim_v: 2,
                max_dim: 8,
            },
            &mut rng,
        );
        let reps = m.cohomology_representatives();
        let h = m.cohomology();
        assert_eq!(reps.len(), h.len());
        for (deg, vs) in reps {
            assert_eq!(vs.len(), h[&deg]);
        }
    }
}
