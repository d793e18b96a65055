//! Finite-dimensional non-negatively graded algebras.
//!
//! An algebra is given by a homogeneous basis and structure constants; the
//! matrix `left[a]` has as column `b` the coordinates of `a·b`. Modules are
//! left modules with one action matrix per algebra basis element.
//!
//! Only split algebras are supported: `A/rad(A)` must be a product of full
//! matrix algebras over the base field, otherwise the idempotent search
//! reports [`Error::NonSplit`].

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::field::Field;
use crate::linalg::{Matrix, SparseMatrix, Subspace};
use crate::{Error, Result};

pub type Vector<F> = Vec<<F as Field>::Elem>;

fn unit_vector<F: Field>(f: &F, n: usize, k: usize) -> Vector<F> {
    let mut v = vec![f.zero(); n];
    v[k] = f.one();
    v
}

fn is_zero_vec<F: Field>(f: &F, v: &[F::Elem]) -> bool {
    v.iter().all(|x| f.is_zero(x))
}

fn axpy<F: Field>(f: &F, acc: &mut [F::Elem], c: &F::Elem, v: &[F::Elem]) {
    if f.is_zero(c) {
        return;
    }
    for (a, b) in acc.iter_mut().zip(v) {
        f.add_mul_assign(a, c, b);
    }
}

fn lin_comb<F: Field>(f: &F, n: usize, coeffs: &[F::Elem], vs: &[Vector<F>]) -> Vector<F> {
    let mut out = vec![f.zero(); n];
    for (c, v) in coeffs.iter().zip(vs) {
        axpy(f, &mut out, c, v);
    }
    out
}

/// Failed axioms found by [`GradedAlgebra::validate`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AlgebraReport {
    pub violations: Vec<String>,
}

impl AlgebraReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedAlgebra<F: Field> {
    field: F,
    names: Vec<String>,
    degrees: Vec<i64>,
    left: Vec<Matrix<F>>,
    unit: Vector<F>,
}

/// One product `a·b = Σ c_k e_k` in sparse form.
pub type Product<F> = (usize, usize, Vec<(usize, <F as Field>::Elem)>);

impl<F: Field> GradedAlgebra<F> {
    /// Builds the algebra without checking the axioms; see [`Self::validate`].
    /// Products not listed are zero.
    pub fn from_products(
        field: &F,
        names: Vec<String>,
        degrees: Vec<i64>,
        products: &[Product<F>],
        unit: Vector<F>,
    ) -> Result<Self> {
        let n = degrees.len();
        if names.len() != n || unit.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "{} names, {} degrees, unit of length {}",
                names.len(),
                n,
                unit.len()
            )));
        }
        let mut left = vec![Matrix::zeros(field, n, n); n];
        for (a, b, terms) in products {
            if *a >= n || *b >= n {
                return Err(Error::DimensionMismatch(format!(
                    "product ({a},{b}) out of range"
                )));
            }
            for (c, x) in terms {
                if *c >= n {
                    return Err(Error::DimensionMismatch(format!(
                        "basis index {c} out of range"
                    )));
                }
                let cur = left[*a].get(*c, *b).clone();
                left[*a].set(*c, *b, field.add(&cur, x));
            }
        }
        Ok(GradedAlgebra {
            field: field.clone(),
            names,
            degrees,
            left,
            unit,
        })
    }

    fn from_left(
        field: &F,
        names: Vec<String>,
        degrees: Vec<i64>,
        left: Vec<Matrix<F>>,
        unit: Vector<F>,
    ) -> Self {
        GradedAlgebra {
            field: field.clone(),
            names,
            degrees,
            left,
            unit,
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn dim(&self) -> usize {
        self.degrees.len()
    }
    pub fn names(&self) -> &[String] {
        &self.names
    }
    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }
    pub fn unit(&self) -> &[F::Elem] {
        &self.unit
    }
    /// Column `b` holds `a·b`.
    pub fn left_matrix(&self, a: usize) -> &Matrix<F> {
        &self.left[a]
    }

    pub fn basis_vector(&self, a: usize) -> Vector<F> {
        unit_vector(&self.field, self.dim(), a)
    }

    /// Structure constants `a·b`, nonzero entries only.
    pub fn product(&self, a: usize, b: usize) -> Vec<(usize, F::Elem)> {
        (0..self.dim())
            .filter(|&c| !self.field.is_zero(self.left[a].get(c, b)))
            .map(|c| (c, self.left[a].get(c, b).clone()))
            .collect()
    }

    /// `L_x = Σ x_a L_a`.
    pub fn left_mult(&self, x: &[F::Elem]) -> Matrix<F> {
        let f = &self.field;
        let n = self.dim();
        let mut m = Matrix::zeros(f, n, n);
        for (a, c) in x.iter().enumerate() {
            if !f.is_zero(c) {
                m = m.add(&self.left[a].scale(c));
            }
        }
        m
    }

    pub fn mul(&self, x: &[F::Elem], y: &[F::Elem]) -> Vector<F> {
        let f = &self.field;
        let mut out = vec![f.zero(); self.dim()];
        for (a, c) in x.iter().enumerate() {
            if !f.is_zero(c) {
                axpy(f, &mut out, c, &self.left[a].apply(y));
            }
        }
        out
    }

    /// Degree of a nonzero homogeneous vector.
    pub fn degree_of(&self, x: &[F::Elem]) -> Option<i64> {
        x.iter()
            .position(|c| !self.field.is_zero(c))
            .map(|k| self.degrees[k])
    }

    /// Associativity on all triples, unit laws, degree additivity and
    /// non-negativity of the grading.
    pub fn validate(&self) -> AlgebraReport {
        let f = &self.field;
        let n = self.dim();
        let mut violations = Vec::new();
        for (a, &d) in self.degrees.iter().enumerate() {
            if d < 0 {
                violations.push(format!(
                    "basis element {} has negative degree {d}",
                    self.names[a]
                ));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for (c, _) in self.product(a, b) {
                    if self.degrees[c] != self.degrees[a] + self.degrees[b] {
                        violations.push(format!(
                            "degree not additive: {}·{} has a component on {}",
                            self.names[a], self.names[b], self.names[c]
                        ));
                    }
                }
            }
        }
        if self
            .unit
            .iter()
            .enumerate()
            .any(|(k, c)| !f.is_zero(c) && self.degrees[k] != 0)
        {
            violations.push(String::from("unit is not in degree 0"));
        }
        for b in 0..n {
            let e = self.basis_vector(b);
            if self.mul(&self.unit, &e) != e || self.mul(&e, &self.unit) != e {
                violations.push(format!("unit law fails for {}", self.names[b]));
            }
        }
        'outer: for a in 0..n {
            for b in 0..n {
                let ab: Vector<F> = self.left[a].column(b);
                let lhs = self.left_mult(&ab);
                let rhs = self.left[a].mul(&self.left[b]).expect("square");
                if lhs != rhs {
                    for c in 0..n {
                        if lhs.column(c) != rhs.column(c) {
                            violations.push(format!(
                                "associativity fails at ({}, {}, {})",
                                self.names[a], self.names[b], self.names[c]
                            ));
                            break;
                        }
                    }
                    if violations.len() > 20 {
                        break 'outer;
                    }
                }
            }
        }
        violations.dedup();
        AlgebraReport { violations }
    }

    /// Checked variant of [`Self::from_products`].
    pub fn new_checked(
        field: &F,
        names: Vec<String>,
        degrees: Vec<i64>,
        products: &[Product<F>],
        unit: Vector<F>,
    ) -> Result<Self> {
        let a = Self::from_products(field, names, degrees, products, unit)?;
        let r = a.validate();
        if !r.is_valid() {
            return Err(Error::Invalid(r.violations.join("; ")));
        }
        Ok(a)
    }

    /// Basis indices of degree 0.
    pub fn degree_zero_indices(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&k| self.degrees[k] == 0).collect()
    }

    /// `A₀` as an algebra on the degree-0 basis elements.
    pub fn degree_zero_part(&self) -> GradedAlgebra<F> {
        let idx = self.degree_zero_indices();
        self.restrict(&idx)
    }

    /// Subalgebra spanned by a set of basis elements closed under products.
    fn restrict(&self, idx: &[usize]) -> GradedAlgebra<F> {
        let left = idx.iter().map(|&a| self.left[a].select(idx, idx)).collect();
        let names = idx.iter().map(|&a| self.names[a].clone()).collect();
        let degrees = idx.iter().map(|&a| self.degrees[a]).collect();
        let unit = idx.iter().map(|&a| self.unit[a].clone()).collect();
        GradedAlgebra::from_left(&self.field, names, degrees, left, unit)
    }

    /// Jacobson radical, computed without using the grading: the kernel of
    /// the trace form in characteristic 0, and the Cohen–Ivanyos–Wales
    /// sequence of trace-like functionals in characteristic `p`.
    pub fn radical_ungraded(&self) -> Subspace<F> {
        let f = &self.field;
        let n = self.dim();
        let p = f.characteristic();
        let levels = if p == 0 {
            1
        } else {
            // p^i ≤ n for every level i used
            let mut l = 0;
            let mut pw = p;
            while pw <= n as u64 {
                l += 1;
                pw = pw.saturating_mul(p);
            }
            l + 1
        };
        let mut ideal: Vec<Vector<F>> = (0..n).map(|k| self.basis_vector(k)).collect();
        for i in 0..levels {
            if ideal.is_empty() {
                break;
            }
            // G[b][v] = g_i(v·b)
            let mut g = Matrix::zeros(f, n, ideal.len());
            for (col, v) in ideal.iter().enumerate() {
                let lv = self.left_mult(v);
                for b in 0..n {
                    let vb = lv.column(b);
                    let val = if p == 0 {
                        self.left_mult(&vb).trace()
                    } else {
                        self.trace_functional(&vb, i as u32)
                    };
                    g.set(b, col, val);
                }
            }
            let ker = g.kernel();
            ideal = ker
                .basis_vectors()
                .iter()
                .map(|c| lin_comb(f, n, c, &ideal))
                .collect();
        }
        Subspace::from_vectors(f, n, &ideal)
    }

    /// `(Tr(L̃_x^{p^i}) mod p^{i+1}) / p^i` with `L̃_x` the entrywise integer
    /// lift of the left multiplication matrix.
    fn trace_functional(&self, x: &[F::Elem], i: u32) -> F::Elem {
        let f = &self.field;
        let p = f.characteristic() as u128;
        let n = self.dim();
        let modulus = p.pow(i + 1);
        let lx = self.left_mult(x);
        let mut m: Vec<u128> = (0..n * n)
            .map(|k| f.residue(lx.get(k / n, k % n)).expect("prime field") as u128)
            .collect();
        let matmul = |a: &[u128], b: &[u128]| -> Vec<u128> {
            let mut c = vec![0u128; n * n];
            for r in 0..n {
                for k in 0..n {
                    let x = a[r * n + k];
                    if x == 0 {
                        continue;
                    }
                    for s in 0..n {
                        c[r * n + s] = (c[r * n + s] + x * b[k * n + s]) % modulus;
                    }
                }
            }
            c
        };
        let mut e = p.pow(i);
        let mut acc: Option<Vec<u128>> = None;
        while e > 0 {
            if e & 1 == 1 {
                acc = Some(match acc {
                    None => m.clone(),
                    Some(a) => matmul(&a, &m),
                });
            }
            e >>= 1;
            if e > 0 {
                m = matmul(&m, &m);
            }
        }
        let acc = acc.expect("positive exponent");
        let tr = (0..n).fold(0u128, |s, k| (s + acc[k * n + k]) % modulus);
        let q = tr / p.pow(i);
        f.from_i64((q % p) as i64)
    }

    /// Graded radical `rad(A₀) ⊕ A_{>0}`. For a non-negatively graded algebra
    /// this is the Jacobson radical.
    pub fn graded_radical(&self) -> Subspace<F> {
        let f = &self.field;
        let n = self.dim();
        let idx = self.degree_zero_indices();
        let r0 = self.restrict(&idx).radical_ungraded();
        let mut vs: Vec<Vector<F>> = r0
            .basis_vectors()
            .iter()
            .map(|v| {
                let mut w = vec![f.zero(); n];
                for (k, &a) in idx.iter().enumerate() {
                    w[a] = v[k].clone();
                }
                w
            })
            .collect();
        for k in 0..n {
            if self.degrees[k] > 0 {
                vs.push(self.basis_vector(k));
            }
        }
        Subspace::from_vectors(f, n, &vs)
    }

    /// The corner algebra `eAe` for a homogeneous idempotent `e` of degree 0,
    /// with its basis expressed in `A`.
    pub fn corner(&self, e: &[F::Elem]) -> (GradedAlgebra<F>, Vec<Vector<F>>) {
        let f = &self.field;
        let n = self.dim();
        let mut basis: Vec<Vector<F>> = Vec::new();
        let mut span = Subspace::zero(f, n);
        for b in 0..n {
            let v = self.mul(&self.mul(e, &self.basis_vector(b)), e);
            if !span.contains(&v) {
                span = span
                    .sum(&Subspace::from_vectors(f, n, core::slice::from_ref(&v)))
                    .expect("same ambient");
                basis.push(v);
            }
        }
        let m = basis.len();
        let cols = Matrix::from_columns(f, n, &basis);
        let coords = |v: &[F::Elem]| cols.solve(v).expect("product stays in the corner");
        let left: Vec<Matrix<F>> = basis
            .iter()
            .map(|x| {
                let prods: Vec<Vector<F>> = basis.iter().map(|y| coords(&self.mul(x, y))).collect();
                Matrix::from_columns(f, m, &prods)
            })
            .collect();
        let degrees = basis
            .iter()
            .map(|v| self.degree_of(v).unwrap_or(0))
            .collect();
        let names = (0..m).map(|k| format!("b{k}")).collect();
        let unit = coords(e);
        (
            GradedAlgebra::from_left(f, names, degrees, left, unit),
            basis,
        )
    }

    /// Truncation `A / A_{>n}`.
    pub fn truncate(&self, n: i64) -> GradedAlgebra<F> {
        let idx: Vec<usize> = (0..self.dim()).filter(|&k| self.degrees[k] <= n).collect();
        let f = &self.field;
        let left = idx
            .iter()
            .map(|&a| {
                let mut m = self.left[a].select(&idx, &idx);
                for (r, &c) in idx.iter().enumerate() {
                    for (s, &b) in idx.iter().enumerate() {
                        if self.degrees[a] + self.degrees[b] != self.degrees[c] {
                            m.set(r, s, f.zero());
                        }
                    }
                }
                m
            })
            .collect();
        GradedAlgebra::from_left(
            f,
            idx.iter().map(|&a| self.names[a].clone()).collect(),
            idx.iter().map(|&a| self.degrees[a]).collect(),
            left,
            idx.iter().map(|&a| self.unit[a].clone()).collect(),
        )
    }

    /// Dimension of each degree.
    pub fn graded_dims(&self) -> BTreeMap<i64, usize> {
        let mut t = BTreeMap::new();
        for &d in &self.degrees {
            *t.entry(d).or_insert(0) += 1;
        }
        t
    }
}

// polynomials over F, coefficients low to high

fn poly_trim<F: Field>(f: &F, p: &mut Vector<F>) {
    while p.last().is_some_and(|x| f.is_zero(x)) {
        p.pop();
    }
}

fn poly_mul<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vector<F> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut r = vec![f.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            f.add_mul_assign(&mut r[i + j], x, y);
        }
    }
    poly_trim(f, &mut r);
    r
}

fn poly_sub<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vector<F> {
    let n = a.len().max(b.len());
    let z = f.zero();
    let mut r: Vector<F> = (0..n)
        .map(|i| f.sub(a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z)))
        .collect();
    poly_trim(f, &mut r);
    r
}

fn poly_divmod<F: Field>(f: &F, a: &[F::Elem], m: &[F::Elem]) -> (Vector<F>, Vector<F>) {
    let mut r = a.to_vec();
    poly_trim(f, &mut r);
    let lead = f.inv(m.last().expect("nonzero divisor")).expect("unit");
    let mut q = vec![f.zero(); r.len().saturating_sub(m.len()) + 1];
    while r.len() >= m.len() && !r.is_empty() {
        let c = f.mul(r.last().unwrap(), &lead);
        let shift = r.len() - m.len();
        q[shift] = c.clone();
        for (i, y) in m.iter().enumerate() {
            let t = f.mul(&c, y);
            r[shift + i] = f.sub(&r[shift + i], &t);
        }
        poly_trim(f, &mut r);
    }
    poly_trim(f, &mut q);
    (q, r)
}

/// `(u, w)` with `u a + w b = 1` for coprime `a`, `b`.
fn poly_bezout<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> (Vector<F>, Vector<F>) {
    let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
    let (mut s0, mut s1) = (vec![f.one()], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), vec![f.one()]);
    while !r1.is_empty() {
        let (q, r) = poly_divmod(f, &r0, &r1);
        let s = poly_sub(f, &s0, &poly_mul(f, &q, &s1));
        let t = poly_sub(f, &t0, &poly_mul(f, &q, &t1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
        t0 = t1;
        t1 = t;
    }
    // r0 is a nonzero constant
    let c = f.inv(&r0[0]).expect("coprime");
    let sc = |p: Vector<F>| p.iter().map(|x| f.mul(x, &c)).collect();
    (sc(s0), sc(t0))
}

impl<F: Field> GradedAlgebra<F> {
    fn eval_poly(&self, p: &[F::Elem], x: &[F::Elem], unit: &[F::Elem]) -> Vector<F> {
        let f = &self.field;
        let mut acc = vec![f.zero(); self.dim()];
        for c in p.iter().rev() {
            acc = self.mul(&acc, x);
            axpy(f, &mut acc, c, unit);
        }
        acc
    }

    /// Monic minimal polynomial of `x` inside a corner with unit `unit`.
    fn minimal_polynomial(&self, x: &[F::Elem], unit: &[F::Elem]) -> Vector<F> {
        let f = &self.field;
        let n = self.dim();
        let mut powers = vec![unit.to_vec()];
        loop {
            let next = self.mul(powers.last().unwrap(), x);
            let m = Matrix::from_columns(f, n, &powers);
            if let Some(sol) = m.solve(&next) {
                let mut p: Vector<F> = sol.iter().map(|c| f.neg(c)).collect();
                p.push(f.one());
                return p;
            }
            powers.push(next);
        }
    }

    /// Splits an idempotent `e` of a semisimple algebra into primitive
    /// orthogonal idempotents.
    fn split_idempotent(&self, e: &[F::Elem], out: &mut Vec<Vector<F>>) -> Result<()> {
        let f = &self.field;
        let n = self.dim();
        let mut corner = Vec::new();
        let mut span = Subspace::zero(f, n);
        for b in 0..n {
            let v = self.mul(&self.mul(e, &self.basis_vector(b)), e);
            if !span.contains(&v) {
                span = span
                    .sum(&Subspace::from_vectors(f, n, core::slice::from_ref(&v)))
                    .expect("same ambient");
                corner.push(v);
            }
        }
        if corner.len() <= 1 {
            out.push(e.to_vec());
            return Ok(());
        }
        let mut candidates = corner.clone();
        for i in 0..corner.len() {
            for j in i + 1..corner.len() {
                let mut v = corner[i].clone();
                axpy(f, &mut v, &f.from_i64(j as i64 + 1), &corner[j]);
                candidates.push(v);
            }
        }
        let mut generic = vec![f.zero(); n];
        for (k, c) in corner.iter().enumerate() {
            axpy(f, &mut generic, &f.from_i64(k as i64 * k as i64 + 1), c);
        }
        candidates.push(generic);
        for x in candidates {
            let m = self.minimal_polynomial(&x, e);
            if m.len() <= 2 {
                continue;
            }
            for lam in f.roots(&m) {
                // m = (t − λ)^a g with g(λ) ≠ 0
                let lin = vec![f.neg(&lam), f.one()];
                let mut g = m.clone();
                let mut pw = vec![f.one()];
                loop {
                    let (q, r) = poly_divmod(f, &g, &lin);
                    if !r.is_empty() {
                        break;
                    }
                    g = q;
                    pw = poly_mul(f, &pw, &lin);
                }
                if g.len() <= 1 {
                    continue;
                }
                let (_, w) = poly_bezout(f, &pw, &g);
                let e1 = self.eval_poly(&poly_mul(f, &w, &g), &x, e);
                let e2 = poly_sub(f, e, &e1);
                let e2 = if e2.len() < n {
                    let mut v = e2;
                    v.resize(n, f.zero());
                    v
                } else {
                    e2
                };
                self.split_idempotent(&e1, out)?;
                self.split_idempotent(&e2, out)?;
                return Ok(());
            }
        }
        Err(Error::NonSplit)
    }
}

/// Primitive idempotents, radical and indecomposable projectives.
#[derive(Clone, Debug)]
pub struct AlgebraStructure<F: Field> {
    pub radical: Subspace<F>,
    /// Complete set of primitive orthogonal idempotents in `A₀`.
    pub idempotents: Vec<Vector<F>>,
    /// Isomorphism class of `A e` for each idempotent.
    pub class_of: Vec<usize>,
    /// One idempotent per class.
    pub basic: Vec<usize>,
    /// Number of idempotents in each class.
    pub multiplicities: Vec<usize>,
    /// Homogeneous basis of `A e_i` for each class, starting with `e_i`.
    pub covers: Vec<Vec<Vector<F>>>,
}

impl<F: Field> AlgebraStructure<F> {
    pub fn num_simples(&self) -> usize {
        self.basic.len()
    }
    pub fn idempotent(&self, class: usize) -> &Vector<F> {
        &self.idempotents[self.basic[class]]
    }
}

/// An algebra together with its radical and idempotents.
#[derive(Clone, Debug)]
pub struct Analysis<F: Field> {
    pub algebra: GradedAlgebra<F>,
    pub structure: AlgebraStructure<F>,
}

fn newton_lift<F: Field>(a: &GradedAlgebra<F>, x: &[F::Elem]) -> Result<Vector<F>> {
    let f = a.field();
    let mut e = x.to_vec();
    for _ in 0..64 {
        let e2 = a.mul(&e, &e);
        if e2 == e {
            return Ok(e);
        }
        let e3 = a.mul(&e2, &e);
        // 3e² − 2e³
        let mut next = vec![f.zero(); e.len()];
        axpy(f, &mut next, &f.from_i64(3), &e2);
        axpy(f, &mut next, &f.from_i64(-2), &e3);
        e = next;
    }
    Err(Error::IdempotentLifting(String::from(
        "Newton iteration did not converge",
    )))
}

impl<F: Field> Analysis<F> {
    pub fn new(algebra: &GradedAlgebra<F>) -> Result<Self> {
        let report = algebra.validate();
        if !report.is_valid() {
            return Err(Error::Invalid(report.violations.join("; ")));
        }
        let f = algebra.field();
        let n = algebra.dim();
        let radical = algebra.graded_radical();

        // A₀, its radical and the semisimple quotient Ā on a complement
        let idx0 = algebra.degree_zero_indices();
        let a0 = algebra.degree_zero_part();
        let n0 = a0.dim();
        let r0 = a0.radical_ungraded();
        let comp = r0.complement_indices();
        let m = comp.len();
        let reduce = |v: &[F::Elem]| -> Vector<F> {
            let w = r0.reduce(v);
            comp.iter().map(|&c| w[c].clone()).collect()
        };
        let lift = |v: &[F::Elem]| -> Vector<F> {
            let mut w = vec![f.zero(); n0];
            for (k, &c) in comp.iter().enumerate() {
                w[c] = v[k].clone();
            }
            w
        };
        let qleft: Vec<Matrix<F>> = comp
            .iter()
            .map(|&a| {
                let cols: Vec<Vector<F>> = comp
                    .iter()
                    .map(|&b| reduce(&a0.left_matrix(a).column(b)))
                    .collect();
                Matrix::from_columns(f, m, &cols)
            })
            .collect();
        let quotient = GradedAlgebra::from_left(
            f,
            comp.iter().map(|&c| a0.names[c].clone()).collect(),
            vec![0; m],
            qleft,
            reduce(a0.unit()),
        );
        let mut bars = Vec::new();
        quotient.split_idempotent(quotient.unit(), &mut bars)?;

        // lift one after another inside the corner of the remainder
        let mut lifted: Vec<Vector<F>> = Vec::new();
        let mut s = vec![f.zero(); n0];
        for eb in &bars {
            let rest = poly_sub(f, a0.unit(), &s);
            let mut rest = rest;
            rest.resize(n0, f.zero());
            let x = a0.mul(&a0.mul(&rest, &lift(eb)), &rest);
            let e = newton_lift(&a0, &x)?;
            if reduce(&e) != *eb {
                return Err(Error::IdempotentLifting(String::from(
                    "lift changed the residue class",
                )));
            }
            axpy(f, &mut s, &f.one(), &e);
            lifted.push(e);
        }
        if s != a0.unit() {
            return Err(Error::IdempotentLifting(String::from(
                "lifted idempotents do not sum to 1",
            )));
        }
        let idempotents: Vec<Vector<F>> = lifted
            .iter()
            .map(|e| {
                let mut w = vec![f.zero(); n];
                for (k, &a) in idx0.iter().enumerate() {
                    w[a] = e[k].clone();
                }
                w
            })
            .collect();

        // A e_i ≅ A e_j iff e_j Ā e_i ≠ 0
        let mut class_of = vec![usize::MAX; bars.len()];
        let mut basic = Vec::new();
        for i in 0..bars.len() {
            if class_of[i] != usize::MAX {
                continue;
            }
            let c = basic.len();
            basic.push(i);
            for j in i..bars.len() {
                let linked = (0..m).any(|b| {
                    let v =
                        quotient.mul(&quotient.mul(&bars[j], &quotient.basis_vector(b)), &bars[i]);
                    !is_zero_vec(f, &v)
                });
                if linked {
                    class_of[j] = c;
                }
            }
        }
        let mut multiplicities = vec![0; basic.len()];
        for &c in &class_of {
            multiplicities[c] += 1;
        }
        let covers = basic
            .iter()
            .map(|&i| {
                let e = &idempotents[i];
                let mut vs = vec![e.clone()];
                let mut span = Subspace::from_vectors(f, n, core::slice::from_ref(e));
                for b in 0..n {
                    let v = algebra.mul(&algebra.basis_vector(b), e);
                    if !span.contains(&v) {
                        span = span
                            .sum(&Subspace::from_vectors(f, n, core::slice::from_ref(&v)))
                            .expect("same ambient");
                        vs.push(v);
                    }
                }
                vs
            })
            .collect();
        Ok(Analysis {
            algebra: algebra.clone(),
            structure: AlgebraStructure {
                radical,
                idempotents,
                class_of,
                basic,
                multiplicities,
                covers,
            },
        })
    }

    pub fn field(&self) -> &F {
        self.algebra.field()
    }

    pub fn num_simples(&self) -> usize {
        self.structure.num_simples()
    }

    /// `A₀` is semisimple.
    pub fn degree_zero_semisimple(&self) -> bool {
        self.algebra.degree_zero_part().radical_ungraded().dim() == 0
    }

    /// The projective cover `P_i = A e_i`, generated in degree 0.
    pub fn projective(&self, i: usize) -> GradedModule<F> {
        let a = &self.algebra;
        let f = a.field();
        let vs = &self.structure.covers[i];
        let cols = Matrix::from_columns(f, a.dim(), vs);
        let action = (0..a.dim())
            .map(|b| {
                let images: Vec<Vector<F>> = vs
                    .iter()
                    .map(|v| {
                        cols.solve(&a.left_matrix(b).apply(v))
                            .expect("A e is a left ideal")
                    })
                    .collect();
                SparseMatrix::from_dense(&Matrix::from_columns(f, vs.len(), &images))
            })
            .collect();
        GradedModule {
            field: f.clone(),
            degrees: vs.iter().map(|v| a.degree_of(v).unwrap_or(0)).collect(),
            action,
        }
    }

    /// The simple module `L_i = P_i / rad P_i`, head in degree 0.
    pub fn simple(&self, i: usize) -> GradedModule<F> {
        let p = self.projective(i);
        let rad = p.radical(self);
        p.quotient(&rad)
    }

    /// `L_i`, `P_i` and the surjection `P_i → L_i` for every simple.
    pub fn simples_and_covers(&self) -> Vec<(GradedModule<F>, GradedModule<F>, Matrix<F>)> {
        (0..self.num_simples())
            .map(|i| {
                let p = self.projective(i);
                let rad = p.radical(self);
                let (l, map) = p.quotient_with_map(&rad);
                (l, p, map)
            })
            .collect()
    }

    /// `⊕_i L_i`, one copy of each simple.
    pub fn semisimple_top(&self) -> GradedModule<F> {
        let mut m = GradedModule::zero(self.field(), self.algebra.dim());
        for i in 0..self.num_simples() {
            m = m.direct_sum(&self.simple(i));
        }
        m
    }

    /// `A₀ = A / A_{>0}` as a left module.
    pub fn degree_zero_module(&self) -> GradedModule<F> {
        let a = &self.algebra;
        let regular = GradedModule::regular(a);
        let pos: Vec<Vector<F>> = (0..a.dim())
            .filter(|&k| a.degrees()[k] > 0)
            .map(|k| a.basis_vector(k))
            .collect();
        regular.quotient(&Subspace::from_vectors(a.field(), a.dim(), &pos))
    }

    fn free_module(&self, summands: &[Summand]) -> GradedModule<F> {
        let mut m = GradedModule::zero(self.field(), self.algebra.dim());
        for s in summands {
            m = m.direct_sum(&self.projective(s.vertex).shift(s.degree));
        }
        m
    }

    /// Matrix of the map `⊕ P_{v}⟨d⟩ → target` sending the generators to
    /// `images`.
    fn map_from_free(
        &self,
        summands: &[Summand],
        target: &GradedModule<F>,
        images: &[Vector<F>],
    ) -> Matrix<F> {
        let f = self.field();
        let mut cols = Vec::new();
        for (s, y) in summands.iter().zip(images) {
            for v in &self.structure.covers[s.vertex] {
                cols.push(target.act(v, y));
            }
        }
        Matrix::from_columns(f, target.dim(), &cols)
    }

    /// Homogeneous generators of a graded submodule `k ⊆ m` modulo
    /// `rad(A)·k`, sorted by vertex.
    fn top_generators(&self, m: &GradedModule<F>, k: &Subspace<F>) -> Vec<(Summand, Vector<F>)> {
        let f = self.field();
        let radk = m.radical_of(self, k);
        let mut out = Vec::new();
        for (vertex, &idx) in self.structure.basic.iter().enumerate() {
            let e = &self.structure.idempotents[idx];
            let ek: Vec<Vector<F>> = k.basis_vectors().iter().map(|v| m.act(e, v)).collect();
            let er: Vec<Vector<F>> = radk.basis_vectors().iter().map(|v| m.act(e, v)).collect();
            let mut span = Subspace::from_vectors(f, m.dim(), &er);
            let ek = Subspace::from_vectors(f, m.dim(), &ek);
            for v in ek.basis_vectors() {
                if !span.contains(&v) {
                    span = span
                        .sum(&Subspace::from_vectors(
                            f,
                            m.dim(),
                            core::slice::from_ref(&v),
                        ))
                        .expect("same ambient");
                    let degree = m.degree_of(&v).expect("nonzero");
                    out.push((Summand { vertex, degree }, v));
                }
            }
        }
        out.sort_by_key(|(s, _)| (s.degree, s.vertex));
        out
    }

    /// Minimal graded projective resolution of `m`, steps `0..=n_max`.
    pub fn minimal_graded_resolution(
        &self,
        m: &GradedModule<F>,
        n_max: usize,
    ) -> Result<Resolution<F>> {
        if n_max > 12 {
            return Err(Error::Invalid(format!("n_max = {n_max} exceeds 12")));
        }
        let f = self.field();
        let mut target = m.clone();
        let mut k = Subspace::full(f, m.dim());
        let mut steps: Vec<ResolutionStep<F>> = Vec::new();
        let mut complete = false;
        for n in 0..=n_max {
            if k.dim() == 0 {
                complete = true;
                break;
            }
            let gens = self.top_generators(&target, &k);
            let summands: Vec<Summand> = gens.iter().map(|(s, _)| *s).collect();
            let images: Vec<Vector<F>> = gens.into_iter().map(|(_, v)| v).collect();
            let p = self.free_module(&summands);
            let d = self.map_from_free(&summands, &target, &images);
            let minimal = n == 0 || target.radical(self).contains_subspace(&k).unwrap_or(false);
            let image_ok = d.image() == k;
            let kernel = d.kernel();
            let mut offsets = Vec::with_capacity(summands.len());
            let mut off = 0;
            for s in &summands {
                offsets.push(off);
                off += self.structure.covers[s.vertex].len();
            }
            steps.push(ResolutionStep {
                summands,
                offsets,
                module: p.clone(),
                differential: d,
                minimal: minimal && image_ok,
            });
            k = kernel;
            target = p;
        }
        if !complete && k.dim() == 0 {
            complete = true;
        }
        Ok(Resolution { steps, complete })
    }

    /// Generator degrees of step `n` of the minimal resolution of `A₀`.
    pub fn is_koszul(&self, n_max: usize) -> Result<KoszulVerdict> {
        if !self.degree_zero_semisimple() {
            return Ok(KoszulVerdict::DegreeZeroNotSemisimple);
        }
        let res = self.minimal_graded_resolution(&self.degree_zero_module(), n_max)?;
        for (n, step) in res.steps.iter().enumerate() {
            let degrees: Vec<i64> = step.summands.iter().map(|s| s.degree).collect();
            if degrees.iter().any(|&d| d != n as i64) {
                let mut degrees = degrees;
                degrees.dedup();
                return Ok(KoszulVerdict::FailsAt { step: n, degrees });
            }
        }
        Ok(KoszulVerdict::KoszulUpTo(n_max))
    }

    /// `(n, m) ↦ dim Ext^n(L_i, L_j⟨m⟩)`, read off the minimal resolution of
    /// `L_i` as the multiplicity of `P_j⟨m⟩` in step `n`.
    pub fn ext_bigraded_dims(&self, i: usize, j: usize, n_max: usize) -> Result<ExtTable> {
        let res = self.minimal_graded_resolution(&self.simple(i), n_max)?;
        Ok(res.multiplicities(j))
    }

    /// All tables `Ext(L_i, L_j⟨·⟩)` indexed by `(i, j)`.
    pub fn ext_tables(&self, n_max: usize) -> Result<BTreeMap<(usize, usize), ExtTable>> {
        let mut out = BTreeMap::new();
        for i in 0..self.num_simples() {
            let res = self.minimal_graded_resolution(&self.simple(i), n_max)?;
            for j in 0..self.num_simples() {
                out.insert((i, j), res.multiplicities(j));
            }
        }
        Ok(out)
    }

    /// `Ext^n(L_i, L_j⟨m⟩) = 0` unless `n = m`, for all simples, `n ≤ n_max`.
    pub fn ext_vanishing_check(&self, n_max: usize) -> Result<bool> {
        Ok(self
            .ext_tables(n_max)?
            .values()
            .all(|t| t.keys().all(|&(n, m)| n as i64 == m)))
    }

    /// The algebra `e A e` for `e` the sum of one primitive idempotent per
    /// simple, with its basis inside `A`.
    pub fn basic_version(&self) -> (GradedAlgebra<F>, Vec<Vector<F>>) {
        let f = self.field();
        let mut e = vec![f.zero(); self.algebra.dim()];
        for c in 0..self.num_simples() {
            axpy(f, &mut e, &f.one(), self.structure.idempotent(c));
        }
        self.algebra.corner(&e)
    }

    /// `⊕_n Ext^n(L, L)` for `L = ⊕_i L_i`, with the opposite of the Yoneda
    /// product, in degrees `0..=n_max`. Basis elements are named
    /// `x[n,m,k]`: the dual of the `k`-th generator of step `n`, of internal
    /// degree `m`.
    pub fn ext_algebra(&self, n_max: usize) -> Result<GradedAlgebra<F>> {
        let f = self.field().clone();
        let l = self.semisimple_top();
        let res = self.minimal_graded_resolution(&l, n_max)?;
        let steps = &res.steps;
        // fixed element ℓ_j of e_j L for every vertex
        let ell: Vec<Vector<F>> = (0..self.num_simples())
            .map(|j| {
                let e = self.structure.idempotent(j);
                let im = l.act_matrix(e).to_dense().image();
                im.basis_vectors()
                    .into_iter()
                    .next()
                    .expect("e_j L_j is one-dimensional")
            })
            .collect();
        let mut index = Vec::new();
        for (n, st) in steps.iter().enumerate() {
            for k in 0..st.summands.len() {
                index.push((n, k));
            }
        }
        let pos: BTreeMap<(usize, usize), usize> =
            index.iter().enumerate().map(|(p, &nk)| (nk, p)).collect();
        let dim = index.len();

        // φ_{n,k}: P_n → L, generator k ↦ ℓ_{v}, others ↦ 0
        let phi = |n: usize, k: usize| -> Matrix<F> {
            let st = &steps[n];
            let images: Vec<Vector<F>> = st
                .summands
                .iter()
                .enumerate()
                .map(|(g, s)| {
                    if g == k {
                        ell[s.vertex].clone()
                    } else {
                        vec![f.zero(); l.dim()]
                    }
                })
                .collect();
            self.map_from_free(&st.summands, &l, &images)
        };
        // coefficient vector of a map P_N → L in the basis φ_{N,·}
        let coefficients = |n: usize, map: &Matrix<F>| -> Vector<F> {
            let st = &steps[n];
            let mut out = vec![f.zero(); dim];
            for (g, s) in st.summands.iter().enumerate() {
                let val = map.column(st.offsets[g]);
                let l_v = &ell[s.vertex];
                let piv = l_v.iter().position(|x| !f.is_zero(x)).expect("nonzero");
                let c = f.div(&val[piv], &l_v[piv]).expect("nonzero pivot");
                out[pos[&(n, g)]] = c;
            }
            out
        };

        let mut products: Vec<Product<F>> = Vec::new();
        for (m, stm) in steps.iter().enumerate() {
            for h in 0..stm.summands.len() {
                // lift ψ = φ_{m,h} to χ_k: P_{m+k} → P_k
                let psi = phi(m, h);
                let shift = stm.summands[h].degree;
                let mut chi: Option<Matrix<F>> = None;
                for k in 0..steps.len() {
                    if m + k >= steps.len() {
                        break;
                    }
                    let src = &steps[m + k];
                    let (tgt_map, tgt_module) = (&steps[k].differential, &steps[k].module);
                    let mut images = Vec::new();
                    for (g, s) in src.summands.iter().enumerate() {
                        let gen = unit_vector(&f, src.module.dim(), src.offsets[g]);
                        let want = match &chi {
                            None => psi.apply(&gen),
                            Some(prev) => prev.apply(&src.differential.apply(&gen)),
                        };
                        let x = solve_in_degree(tgt_map, tgt_module, &want, s.degree - shift)
                            .ok_or_else(|| {
                                Error::Invalid(String::from("chain map lifting failed"))
                            })?;
                        let e = self.structure.idempotent(s.vertex);
                        images.push(tgt_module.act(e, &x));
                    }
                    let map = self.map_from_free(&src.summands, tgt_module, &images);
                    // Yoneda composite φ_{k,g} ∘ χ_k, stored as φ_{m,h} · φ_{k,g} in the opposite ring
                    for g in 0..steps[k].summands.len() {
                        let comp = phi(k, g).mul(&map).expect("composable");
                        let c = coefficients(m + k, &comp);
                        let terms: Vec<(usize, F::Elem)> = c
                            .into_iter()
                            .enumerate()
                            .filter(|(_, x)| !f.is_zero(x))
                            .collect();
                        if !terms.is_empty() {
                            products.push((pos[&(m, h)], pos[&(k, g)], terms));
                        }
                    }
                    chi = Some(map);
                }
            }
        }
        let names = index
            .iter()
            .map(|&(n, k)| format!("x[{n},{},{k}]", steps[n].summands[k].degree))
            .collect();
        let degrees = index.iter().map(|&(n, _)| n as i64).collect();
        // identity of L = ε = Σ_g c_g φ_{0,g}
        let unit = coefficients(0, &steps[0].differential);
        GradedAlgebra::from_products(&f, names, degrees, &products, unit)
    }

    /// `B = ⊕_n Hom(P⟨n⟩, P)` for `P = ⊕_i P_i`, realised as `e A e`, plus
    /// the three properties it must have when Ext-vanishing holds.
    pub fn endomorphism_ring_b(&self, n_max: usize) -> Result<EndomorphismRing<F>> {
        if !self.ext_vanishing_check(n_max)? {
            return Err(Error::HypothesisFailure(String::from(
                "Ext^n(L_i, L_j<m>) is nonzero for some n != m",
            )));
        }
        let (b, basis_in_a) = self.basic_version();
        let non_negative = b.degrees().iter().all(|&d| d >= 0);
        let b0_semisimple = b.degree_zero_part().radical_ungraded().dim() == 0;
        let koszul = Analysis::new(&b)?.is_koszul(n_max)?;
        Ok(EndomorphismRing {
            algebra: b,
            basis_in_a,
            non_negative,
            b0_semisimple,
            koszul,
        })
    }

    /// `Hom_A(P, M) ≅ e M` as a graded module over `B = eAe`.
    pub fn morita_transport(
        &self,
        ring: &EndomorphismRing<F>,
        m: &GradedModule<F>,
    ) -> GradedModule<F> {
        let f = self.field();
        let b = &ring.algebra;
        let mut e = vec![f.zero(); self.algebra.dim()];
        for c in 0..self.num_simples() {
            axpy(f, &mut e, &f.one(), self.structure.idempotent(c));
        }
        let em = m.act_matrix(&e).to_dense().image();
        let vs = em.basis_vectors();
        let cols = Matrix::from_columns(f, m.dim(), &vs);
        let action = (0..b.dim())
            .map(|k| {
                let x = &ring.basis_in_a[k];
                let images: Vec<Vector<F>> = vs
                    .iter()
                    .map(|v| cols.solve(&m.act(x, v)).expect("eAe preserves eM"))
                    .collect();
                SparseMatrix::from_dense(&Matrix::from_columns(f, vs.len(), &images))
            })
            .collect();
        GradedModule {
            field: f.clone(),
            degrees: vs.iter().map(|v| m.degree_of(v).unwrap_or(0)).collect(),
            action,
        }
    }

    /// Layers `rad^n M / rad^{n+1} M` with `rad^n M = rad(A)^n M`.
    pub fn radical_layers(&self, m: &GradedModule<F>) -> Vec<RadicalLayer> {
        let f = self.field();
        let mut layers = Vec::new();
        let mut cur = Subspace::full(f, m.dim());
        while cur.dim() > 0 {
            let next = m.radical_of(self, &cur);
            let mut dims = BTreeMap::new();
            let mut composition = BTreeMap::new();
            let deg_dims = |s: &Subspace<F>| -> BTreeMap<i64, usize> {
                let mut t = BTreeMap::new();
                for v in s.basis_vectors() {
                    *t.entry(m.degree_of(&v).expect("nonzero")).or_insert(0) += 1;
                }
                t
            };
            let (dc, dn) = (deg_dims(&cur), deg_dims(&next));
            for (d, c) in dc {
                let x = c - dn.get(&d).copied().unwrap_or(0);
                if x > 0 {
                    dims.insert(d, x);
                }
            }
            for v in 0..self.num_simples() {
                let e = self.structure.idempotent(v);
                let ec = Subspace::from_vectors(
                    f,
                    m.dim(),
                    &cur.basis_vectors()
                        .iter()
                        .map(|x| m.act(e, x))
                        .collect::<Vec<_>>(),
                );
                let en = Subspace::from_vectors(
                    f,
                    m.dim(),
                    &next
                        .basis_vectors()
                        .iter()
                        .map(|x| m.act(e, x))
                        .collect::<Vec<_>>(),
                );
                let (dc, dn) = (deg_dims(&ec), deg_dims(&en));
                for (d, c) in dc {
                    let x = c - dn.get(&d).copied().unwrap_or(0);
                    if x > 0 {
                        composition.insert((v, d), x);
                    }
                }
            }
            layers.push(RadicalLayer { dims, composition });
            if next.dim() == cur.dim() {
                break;
            }
            cur = next;
        }
        layers
    }
}

/// Solves `d x = want` with `x` supported on basis elements of `degree`.
fn solve_in_degree<F: Field>(
    d: &Matrix<F>,
    source: &GradedModule<F>,
    want: &[F::Elem],
    degree: i64,
) -> Option<Vector<F>> {
    let f = d.field();
    let cols: Vec<usize> = (0..source.dim())
        .filter(|&k| source.degrees[k] == degree)
        .collect();
    if cols.is_empty() {
        return if is_zero_vec(f, want) {
            Some(vec![f.zero(); source.dim()])
        } else {
            None
        };
    }
    let rows: Vec<usize> = (0..d.rows()).collect();
    let sub = d.select(&rows, &cols);
    let sol = sub.solve(want)?;
    let mut x = vec![f.zero(); source.dim()];
    for (k, &c) in cols.iter().enumerate() {
        x[c] = sol[k].clone();
    }
    Some(x)
}

/// `P_vertex⟨degree⟩`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Summand {
    pub vertex: usize,
    pub degree: i64,
}

#[derive(Clone, Debug)]
pub struct ResolutionStep<F: Field> {
    pub summands: Vec<Summand>,
    /// Position of each summand's generator in `module`.
    pub offsets: Vec<usize>,
    pub module: GradedModule<F>,
    /// Map to the previous step, or to the resolved module for step 0.
    pub differential: Matrix<F>,
    /// The kernel of the previous map lies in the radical of the previous
    /// step and this map hits exactly that kernel.
    pub minimal: bool,
}

#[derive(Clone, Debug)]
pub struct Resolution<F: Field> {
    pub steps: Vec<ResolutionStep<F>>,
    /// The last kernel computed was zero.
    pub complete: bool,
}

/// `(n, m) ↦ multiplicity`.
pub type ExtTable = BTreeMap<(usize, i64), usize>;

impl<F: Field> Resolution<F> {
    pub fn multiplicities(&self, vertex: usize) -> ExtTable {
        let mut t = ExtTable::new();
        for (n, st) in self.steps.iter().enumerate() {
            for s in &st.summands {
                if s.vertex == vertex {
                    *t.entry((n, s.degree)).or_insert(0) += 1;
                }
            }
        }
        t
    }

    /// Number of generators at each step.
    pub fn ranks(&self) -> Vec<usize> {
        self.steps.iter().map(|s| s.summands.len()).collect()
    }

    pub fn is_minimal(&self) -> bool {
        self.steps.iter().all(|s| s.minimal)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KoszulVerdict {
    KoszulUpTo(usize),
    FailsAt { step: usize, degrees: Vec<i64> },
    DegreeZeroNotSemisimple,
}

impl KoszulVerdict {
    pub fn is_koszul(&self) -> bool {
        matches!(self, KoszulVerdict::KoszulUpTo(_))
    }
}

impl fmt::Display for KoszulVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KoszulVerdict::KoszulUpTo(n) => write!(f, "koszul_up_to({n})"),
            KoszulVerdict::FailsAt { step, .. } => write!(f, "fails_at({step})"),
            KoszulVerdict::DegreeZeroNotSemisimple => write!(f, "degree_zero_not_semisimple"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct EndomorphismRing<F: Field> {
    pub algebra: GradedAlgebra<F>,
    pub basis_in_a: Vec<Vector<F>>,
    pub non_negative: bool,
    pub b0_semisimple: bool,
    pub koszul: KoszulVerdict,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RadicalLayer {
    pub dims: BTreeMap<i64, usize>,
    /// `(vertex, degree) ↦ multiplicity` of `L_vertex⟨degree⟩`.
    pub composition: BTreeMap<(usize, i64), usize>,
}

impl RadicalLayer {
    pub fn is_pure(&self, degree: i64) -> bool {
        self.dims.keys().all(|&d| d == degree)
    }
}

/// A graded left module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedModule<F: Field> {
    field: F,
    degrees: Vec<i64>,
    /// One matrix per algebra basis element.
    action: Vec<SparseMatrix<F>>,
}

impl<F: Field> GradedModule<F> {
    pub fn new(field: &F, degrees: Vec<i64>, action: Vec<SparseMatrix<F>>) -> Self {
        GradedModule {
            field: field.clone(),
            degrees,
            action,
        }
    }

    pub fn zero(field: &F, algebra_dim: usize) -> Self {
        GradedModule {
            field: field.clone(),
            degrees: Vec::new(),
            action: vec![SparseMatrix::zeros(field, 0, 0); algebra_dim],
        }
    }

    pub fn regular(a: &GradedAlgebra<F>) -> Self {
        GradedModule {
            field: a.field().clone(),
            degrees: a.degrees().to_vec(),
            action: a.left.iter().map(SparseMatrix::from_dense).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.degrees.len()
    }
    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }
    pub fn action(&self) -> &[SparseMatrix<F>] {
        &self.action
    }

    pub fn graded_dims(&self) -> BTreeMap<i64, usize> {
        let mut t = BTreeMap::new();
        for &d in &self.degrees {
            *t.entry(d).or_insert(0) += 1;
        }
        t
    }

    pub fn degree_of(&self, v: &[F::Elem]) -> Option<i64> {
        v.iter()
            .position(|c| !self.field.is_zero(c))
            .map(|k| self.degrees[k])
    }

    /// Action matrix of an algebra element.
    pub fn act_matrix(&self, x: &[F::Elem]) -> SparseMatrix<F> {
        let f = &self.field;
        let n = self.dim();
        let mut m = SparseMatrix::zeros(f, n, n);
        for (a, c) in x.iter().enumerate() {
            if !f.is_zero(c) {
                m = m.add(&self.action[a].scale(c));
            }
        }
        m
    }

    pub fn act(&self, x: &[F::Elem], v: &[F::Elem]) -> Vector<F> {
        let f = &self.field;
        let mut out = vec![f.zero(); self.dim()];
        for (a, c) in x.iter().enumerate() {
            if !f.is_zero(c) {
                axpy(f, &mut out, c, &self.action[a].apply(v));
            }
        }
        out
    }

    /// Module axioms and degree compatibility.
    pub fn validate(&self, a: &GradedAlgebra<F>) -> AlgebraReport {
        let n = self.dim();
        let mut violations = Vec::new();
        if self.action.len() != a.dim() {
            violations.push(format!(
                "{} action matrices for an algebra of dimension {}",
                self.action.len(),
                a.dim()
            ));
            return AlgebraReport { violations };
        }
        if self.act_matrix(a.unit()) != SparseMatrix::identity(&self.field, n) {
            violations.push(String::from("unit does not act as the identity"));
        }
        for x in 0..a.dim() {
            if self.action[x]
                .entries()
                .any(|(r, c, _)| self.degrees[r] != self.degrees[c] + a.degrees()[x])
            {
                violations.push(format!("action of {} is not homogeneous", a.names()[x]));
            }
            for y in 0..a.dim() {
                let xy = a.left_matrix(x).column(y);
                if self.act_matrix(&xy) != self.action[x].compose(&self.action[y]) {
                    violations.push(format!(
                        "({}·{})·m ≠ {}·({}·m)",
                        a.names()[x],
                        a.names()[y],
                        a.names()[x],
                        a.names()[y]
                    ));
                }
            }
        }
        AlgebraReport { violations }
    }

    /// `M⟨d⟩`: every degree raised by `d`.
    pub fn shift(&self, d: i64) -> Self {
        GradedModule {
            degrees: self.degrees.iter().map(|x| x + d).collect(),
            ..self.clone()
        }
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let action = self
            .action
            .iter()
            .zip(&other.action)
            .map(|(a, b)| a.direct_sum(b))
            .collect();
        let mut degrees = self.degrees.clone();
        degrees.extend_from_slice(&other.degrees);
        GradedModule {
            field: self.field.clone(),
            degrees,
            action,
        }
    }

    /// `rad(A)·k` for a submodule `k`.
    pub fn radical_of(&self, an: &Analysis<F>, k: &Subspace<F>) -> Subspace<F> {
        let f = &self.field;
        let kv = k.basis_vectors();
        let mut span = Subspace::zero(f, self.dim());
        for r in an.structure.radical.basis_vectors() {
            let m = self.act_matrix(&r);
            let vs: Vec<Vector<F>> = kv
                .iter()
                .map(|v| m.apply(v))
                .filter(|w| !is_zero_vec(f, w) && !span.contains(w))
                .collect();
            if !vs.is_empty() {
                span = span
                    .sum(&Subspace::from_vectors(f, self.dim(), &vs))
                    .expect("same ambient");
            }
        }
        span
    }

    pub fn radical(&self, an: &Analysis<F>) -> Subspace<F> {
        self.radical_of(an, &Subspace::full(&self.field, self.dim()))
    }

    /// `M / N` on the standard complement of a graded submodule.
    pub fn quotient(&self, sub: &Subspace<F>) -> Self {
        self.quotient_with_map(sub).0
    }

    pub fn quotient_with_map(&self, sub: &Subspace<F>) -> (Self, Matrix<F>) {
        let f = &self.field;
        let n = self.dim();
        let comp = sub.complement_indices();
        let proj = |v: &[F::Elem]| -> Vector<F> {
            let w = sub.reduce(v);
            comp.iter().map(|&c| w[c].clone()).collect()
        };
        let q = comp.len();
        let action = self
            .action
            .iter()
            .map(|a| {
                let cols: Vec<Vector<F>> = comp
                    .iter()
                    .map(|&c| proj(&a.apply(&unit_vector(f, n, c))))
                    .collect();
                SparseMatrix::from_dense(&Matrix::from_columns(f, q, &cols))
            })
            .collect();
        let map_cols: Vec<Vector<F>> = (0..n).map(|k| proj(&unit_vector(f, n, k))).collect();
        (
            GradedModule {
                field: f.clone(),
                degrees: comp.iter().map(|&c| self.degrees[c]).collect(),
                action,
            },
            Matrix::from_columns(f, q, &map_cols),
        )
    }
}

/// An arrow of a graded quiver.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub src: usize,
    pub dst: usize,
    pub degree: i64,
    pub name: String,
}

/// A quiver with relations; each relation is a combination of paths, a path
/// being a list of arrows in the order they are travelled.
#[derive(Clone, Debug)]
pub struct Quiver<F: Field> {
    pub vertices: usize,
    pub arrows: Vec<Arrow>,
    pub relations: Vec<Vec<(F::Elem, Vec<usize>)>>,
}

const MAX_PATH_LENGTH: usize = 40;

impl<F: Field> Quiver<F> {
    fn path_ends(&self, p: &[usize], start: usize) -> Option<(usize, usize)> {
        let mut cur = start;
        for &a in p {
            let ar = self.arrows.get(a)?;
            if ar.src != cur {
                return None;
            }
            cur = ar.dst;
        }
        Some((start, cur))
    }

    /// Paths of length `l` as (source, arrows).
    fn paths(&self, l: usize) -> Vec<(usize, Vec<usize>)> {
        let mut cur: Vec<(usize, Vec<usize>, usize)> =
            (0..self.vertices).map(|v| (v, Vec::new(), v)).collect();
        for _ in 0..l {
            let mut next = Vec::new();
            for (s, p, end) in &cur {
                for (k, a) in self.arrows.iter().enumerate() {
                    if a.src == *end {
                        let mut q = p.clone();
                        q.push(k);
                        next.push((*s, q, a.dst));
                    }
                }
            }
            cur = next;
        }
        cur.into_iter().map(|(s, p, _)| (s, p)).collect()
    }

    /// Compiles `kQ/I` to structure constants. The product `x·y` is "first
    /// `y`, then `x`", so `A e_v` is spanned by the paths leaving `v`.
    pub fn compile(&self, field: &F) -> Result<GradedAlgebra<F>> {
        let f = field;
        for a in &self.arrows {
            if a.src >= self.vertices || a.dst >= self.vertices || a.degree < 0 {
                return Err(Error::Invalid(format!("bad arrow {}", a.name)));
            }
        }
        // relations: homogeneous in length, degree, source and target
        let mut rels = Vec::new();
        for r in &self.relations {
            let first = r
                .first()
                .ok_or_else(|| Error::Invalid(String::from("empty relation")))?;
            let src = first
                .1
                .first()
                .and_then(|&a| self.arrows.get(a).map(|x| x.src))
                .ok_or_else(|| Error::Invalid(String::from("relation with a trivial path")))?;
            let key = |p: &[usize]| -> Option<(usize, usize, usize, i64)> {
                let (s, t) = self.path_ends(p, self.arrows.get(*p.first()?)?.src)?;
                Some((
                    s,
                    t,
                    p.len(),
                    p.iter().map(|&a| self.arrows[a].degree).sum(),
                ))
            };
            let k0 = key(&first.1)
                .ok_or_else(|| Error::Invalid(String::from("relation term is not a path")))?;
            for (_, p) in r {
                if key(p) != Some(k0) {
                    return Err(Error::Invalid(String::from("relation is not homogeneous")));
                }
            }
            let _ = src;
            rels.push((k0, r.clone()));
        }

        // per length: paths, the ideal, and chosen complement
        struct Level<F: Field> {
            paths: Vec<(usize, Vec<usize>)>,
            index: BTreeMap<Vec<usize>, usize>,
            ideal: Subspace<F>,
            keep: Vec<usize>,
        }
        let mut levels: Vec<Level<F>> = Vec::new();
        for l in 0..=MAX_PATH_LENGTH {
            let paths = self.paths(l);
            let index: BTreeMap<Vec<usize>, usize> = paths
                .iter()
                .enumerate()
                .filter(|(_, (_, p))| !p.is_empty())
                .map(|(k, (_, p))| (p.clone(), k))
                .collect();
            let np = paths.len();
            let mut gens = Vec::new();
            for ((s, t, len, _), r) in &rels {
                if *len > l {
                    continue;
                }
                for a in 0..=(l - len) {
                    let b = l - len - a;
                    // u of length a ending at s, w of length b starting at t
                    let us: Vec<Vec<usize>> = self
                        .paths(a)
                        .into_iter()
                        .filter(|(src, p)| self.path_ends(p, *src).map(|e| e.1) == Some(*s))
                        .map(|x| x.1)
                        .collect();
                    let ws: Vec<Vec<usize>> = self
                        .paths(b)
                        .into_iter()
                        .filter(|(src, _)| src == t)
                        .map(|x| x.1)
                        .collect();
                    for u in &us {
                        for w in &ws {
                            let mut v = vec![f.zero(); np];
                            for (c, p) in r {
                                let mut full = u.clone();
                                full.extend_from_slice(p);
                                full.extend_from_slice(w);
                                let k = index[&full];
                                v[k] = f.add(&v[k], c);
                            }
                            gens.push(v);
                        }
                    }
                }
            }
            let ideal = Subspace::from_vectors(f, np, &gens);
            let keep = ideal.complement_indices();
            let done = keep.is_empty();
            levels.push(Level {
                paths,
                index,
                ideal,
                keep,
            });
            if done {
                break;
            }
            if l == MAX_PATH_LENGTH {
                return Err(Error::Invalid(String::from(
                    "quiver algebra is infinite dimensional",
                )));
            }
        }
        // global basis
        let mut basis: Vec<(usize, usize)> = Vec::new();
        let mut where_: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for (l, lev) in levels.iter().enumerate() {
            for &k in &lev.keep {
                where_.insert((l, k), basis.len());
                basis.push((l, k));
            }
        }
        let n = basis.len();
        let ends = |l: usize, k: usize| -> (usize, usize) {
            let (s, p) = &levels[l].paths[k];
            self.path_ends(p, *s).expect("path")
        };
        let mut names = Vec::new();
        let mut degrees = Vec::new();
        for &(l, k) in &basis {
            let (s, p) = &levels[l].paths[k];
            if p.is_empty() {
                names.push(format!("e{s}"));
                degrees.push(0);
            } else {
                names.push(
                    p.iter()
                        .map(|&a| self.arrows[a].name.clone())
                        .collect::<Vec<_>>()
                        .join("*"),
                );
                degrees.push(p.iter().map(|&a| self.arrows[a].degree).sum());
            }
        }
        let mut products: Vec<Product<F>> = Vec::new();
        for (x, &(lx, kx)) in basis.iter().enumerate() {
            for (y, &(ly, ky)) in basis.iter().enumerate() {
                let (sx, _) = ends(lx, kx);
                let (_, ty) = ends(ly, ky);
                if ty != sx {
                    continue;
                }
                let l = lx + ly;
                if l >= levels.len() {
                    continue;
                }
                let lev = &levels[l];
                let pos = if l == 0 {
                    sx
                } else {
                    let mut full = levels[ly].paths[ky].1.clone();
                    full.extend_from_slice(&levels[lx].paths[kx].1);
                    lev.index[&full]
                };
                let red = lev.ideal.reduce(&unit_vector(f, lev.paths.len(), pos));
                let terms: Vec<(usize, F::Elem)> = lev
                    .keep
                    .iter()
                    .filter(|&&k| !f.is_zero(&red[k]))
                    .map(|&k| (where_[&(l, k)], red[k].clone()))
                    .collect();
                if !terms.is_empty() {
                    products.push((x, y, terms));
                }
            }
        }
        let mut unit = vec![f.zero(); n];
        for v in 0..self.vertices {
            if let Some(&k) = where_.get(&(0, v)) {
                unit[k] = f.one();
            }
        }
        GradedAlgebra::new_checked(f, names, degrees, &products, unit)
    }
}

fn arrow(src: usize, dst: usize, name: &str) -> Arrow {
    Arrow {
        src,
        dst,
        degree: 1,
        name: name.to_string(),
    }
}

/// `Λ(V)` with `dim V = d`, generators in degree 1.
pub fn exterior_algebra<F: Field>(f: &F, d: usize) -> Result<GradedAlgebra<F>> {
    let arrows = (0..d).map(|i| arrow(0, 0, &format!("x{i}"))).collect();
    let mut relations = Vec::new();
    for i in 0..d {
        relations.push(vec![(f.one(), vec![i, i])]);
        for j in i + 1..d {
            relations.push(vec![(f.one(), vec![i, j]), (f.one(), vec![j, i])]);
        }
    }
    Quiver {
        vertices: 1,
        arrows,
        relations,
    }
    .compile(f)
}

/// `k[x]/(x^n)`, `x` in degree 1.
pub fn truncated_polynomial<F: Field>(f: &F, n: usize) -> Result<GradedAlgebra<F>> {
    Quiver {
        vertices: 1,
        arrows: vec![arrow(0, 0, "x")],
        relations: vec![vec![(f.one(), vec![0; n])]],
    }
    .compile(f)
}

/// The trivial extension `k ⋉ V`, `V` in degree 1 with `V·V = 0`.
pub fn square_zero<F: Field>(f: &F, d: usize) -> Result<GradedAlgebra<F>> {
    let arrows = (0..d).map(|i| arrow(0, 0, &format!("v{i}"))).collect();
    let mut relations = Vec::new();
    for i in 0..d {
        for j in 0..d {
            relations.push(vec![(f.one(), vec![i, j])]);
        }
    }
    Quiver {
        vertices: 1,
        arrows,
        relations,
    }
    .compile(f)
}

/// `k^r` by structure constants.
pub fn semisimple_product<F: Field>(f: &F, r: usize) -> Result<GradedAlgebra<F>> {
    let products: Vec<Product<F>> = (0..r).map(|i| (i, i, vec![(i, f.one())])).collect();
    GradedAlgebra::new_checked(
        f,
        (0..r).map(|i| format!("e{i}")).collect(),
        vec![0; r],
        &products,
        vec![f.one(); r],
    )
}

/// `M_n(k)` in degree 0, basis `E_ij` at index `i n + j`.
pub fn matrix_algebra<F: Field>(f: &F, n: usize) -> Result<GradedAlgebra<F>> {
    let mut products = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                products.push((i * n + j, j * n + k, vec![(i * n + k, f.one())]));
            }
        }
    }
    let mut unit = vec![f.zero(); n * n];
    for i in 0..n {
        unit[i * n + i] = f.one();
    }
    let names = (0..n * n).map(|k| format!("E{}{}", k / n, k % n)).collect();
    GradedAlgebra::new_checked(f, names, vec![0; n * n], &products, unit)
}

/// Upper triangular 2×2 matrices with `E12` in degree 1.
pub fn upper_triangular<F: Field>(f: &F) -> Result<GradedAlgebra<F>> {
    // basis E11, E12, E22
    let one = f.one();
    let products: Vec<Product<F>> = vec![
        (0, 0, vec![(0, one.clone())]),
        (0, 1, vec![(1, one.clone())]),
        (1, 2, vec![(1, one.clone())]),
        (2, 2, vec![(2, one.clone())]),
    ];
    GradedAlgebra::new_checked(
        f,
        vec!["E11".into(), "E12".into(), "E22".into()],
        vec![0, 1, 0],
        &products,
        vec![one.clone(), f.zero(), one],
    )
}

/// Linearly oriented quiver `1 → 2 → … → n` with all paths of length
/// `relation_length` set to zero (no relations when it is 0).
pub fn linear_quiver<F: Field>(
    f: &F,
    n: usize,
    relation_length: usize,
) -> Result<GradedAlgebra<F>> {
    let arrows: Vec<Arrow> = (0..n - 1)
        .map(|i| arrow(i, i + 1, &format!("a{i}")))
        .collect();
    let mut relations = Vec::new();
    if relation_length > 0 {
        for s in 0..n.saturating_sub(relation_length) {
            relations.push(vec![(f.one(), (s..s + relation_length).collect())]);
        }
    }
    Quiver {
        vertices: n,
        arrows,
        relations,
    }
    .compile(f)
}

/// Two vertices and two parallel arrows.
pub fn kronecker<F: Field>(f: &F) -> Result<GradedAlgebra<F>> {
    Quiver::<F> {
        vertices: 2,
        arrows: vec![arrow(0, 1, "a"), arrow(0, 1, "b")],
        relations: Vec::new(),
    }
    .compile(f)
}

/// The algebras shipped with the crate, by name.
pub fn bundled_algebras<F: Field>(f: &F) -> Result<Vec<(&'static str, GradedAlgebra<F>)>> {
    Ok(vec![
        ("semisimple_k2", semisimple_product(f, 2)?),
        ("matrix_m2", matrix_algebra(f, 2)?),
        ("dual_numbers", truncated_polynomial(f, 2)?),
        ("truncated_cubic", truncated_polynomial(f, 3)?),
        ("exterior_1", exterior_algebra(f, 1)?),
        ("exterior_2", exterior_algebra(f, 2)?),
        ("exterior_3", exterior_algebra(f, 3)?),
        ("square_zero_2", square_zero(f, 2)?),
        ("a2_quiver", linear_quiver(f, 2, 0)?),
        ("upper_triangular", upper_triangular(f)?),
        ("a3_quadratic_monomial", linear_quiver(f, 3, 2)?),
        ("a4_cubic_monomial", linear_quiver(f, 4, 3)?),
        ("kronecker", kronecker(f)?),
    ])
}

/// Brute-force radical over a small prime field: `x ∈ rad` iff every element
/// of `A x` is nilpotent. Exponential in the dimension; a test oracle.
pub fn radical_brute_force<F: Field>(a: &GradedAlgebra<F>) -> Option<Subspace<F>> {
    let f = a.field();
    let elems = f.elements()?;
    let n = a.dim();
    let q = elems.len();
    if q.checked_pow(2 * n as u32).is_none_or(|x| x > 5_000_000) {
        return None;
    }
    let all: Vec<Vector<F>> = (0..q.pow(n as u32))
        .map(|mut k| {
            (0..n)
                .map(|_| {
                    let e = elems[k % q].clone();
                    k /= q;
                    e
                })
                .collect()
        })
        .collect();
    let members: Vec<Vector<F>> = all
        .iter()
        .filter(|x| all.iter().all(|y| a.left_mult(&a.mul(y, x)).is_nilpotent()))
        .cloned()
        .collect();
    Some(Subspace::from_vectors(f, n, &members))
}
