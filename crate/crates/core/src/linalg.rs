//! Dense exact linear algebra: row reduction, kernels, and subspaces kept in a
//! canonical echelon form so that equal subspaces compare equal.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::field::Field;
use crate::{Error, Result};

/// Dense row-major matrix over an exact field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(field: &F, rows: usize, cols: usize) -> Self {
        Matrix {
            data: vec![field.zero(); rows * cols],
            field: field.clone(),
            rows,
            cols,
        }
    }

    pub fn identity(field: &F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    pub fn from_data(field: &F, rows: usize, cols: usize, data: Vec<F::Elem>) -> Self {
        assert_eq!(
            data.len(),
            rows * cols,
            "entry count must equal rows * cols"
        );
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data,
        }
    }

    pub fn from_rows(field: &F, rows: &[Vec<F::Elem>], cols: usize) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols);
            data.extend(r.iter().cloned());
        }
        Self::from_data(field, rows.len(), cols, data)
    }

    pub fn from_i64(field: &F, rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols);
            data.extend(r.iter().map(|&x| field.from_i64(x)));
        }
        Self::from_data(field, rows.len(), cols, data)
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(field: &F, rows: usize, columns: &[Vec<F::Elem>]) -> Self {
        let mut m = Self::zeros(field, rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for (i, x) in c.iter().enumerate() {
                m.data[i * m.cols + j] = x.clone();
            }
        }
        m
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &F::Elem {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F::Elem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[F::Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<F::Elem> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row_vectors(&self) -> Vec<Vec<F::Elem>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| self.field.is_zero(x))
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(alloc::format!(
                "{}x{} times {}x{}",
                self.rows,
                self.cols,
                other.rows,
                other.cols
            )));
        }
        let f = &self.field;
        let mut out = Self::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !f.is_zero(b) {
                        let idx = i * out.cols + j;
                        f.add_mul_assign(&mut out.data[idx], a, b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn apply(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        assert_eq!(v.len(), self.cols);
        let f = &self.field;
        (0..self.rows)
            .map(|i| {
                let mut acc = f.zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !f.is_zero(a) && !f.is_zero(b) {
                        f.add_mul_assign(&mut acc, a, b);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| self.field.add(a, b))
            .collect();
        Self::from_data(&self.field, self.rows, self.cols, data)
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| self.field.sub(a, b))
            .collect();
        Self::from_data(&self.field, self.rows, self.cols, data)
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let data = self.data.iter().map(|a| self.field.mul(a, c)).collect();
        Self::from_data(&self.field, self.rows, self.cols, data)
    }

    /// Reduced row-echelon form, its rank, and the pivot columns.
    pub fn rref_with_pivots(&self) -> (Self, usize, Vec<usize>) {
        let f = &self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !f.is_zero(m.get(i, c))) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = f.inv(m.get(r, c)).expect("pivot is nonzero");
            for j in c..m.cols {
                let v = f.mul(m.get(r, j), &inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || f.is_zero(m.get(i, c)) {
                    continue;
                }
                let factor = m.get(i, c).clone();
                for j in c..m.cols {
                    let rj = m.get(r, j);
                    if f.is_zero(rj) {
                        continue;
                    }
                    let t = f.mul(&factor, rj);
                    let v = f.sub(m.get(i, j), &t);
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, r, pivots)
    }

    pub fn rref(&self) -> (Self, usize) {
        let (m, r, _) = self.rref_with_pivots();
        (m, r)
    }

    pub fn rank(&self) -> usize {
        self.rref().1
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Basis of `{v : self * v = 0}`.
    pub fn kernel(&self) -> Subspace<F> {
        let f = &self.field;
        let (r, rank, pivots) = self.rref_with_pivots();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![f.zero(); self.cols];
            v[free] = f.one();
            for (row, &pc) in pivots.iter().enumerate().take(rank) {
                v[pc] = f.neg(r.get(row, free));
            }
            basis.push(v);
        }
        Subspace::from_vectors(f, self.cols, &basis)
    }

    /// Column space.
    pub fn image(&self) -> Subspace<F> {
        let t = self.transpose();
        Subspace::from_vectors(&self.field, self.rows, &t.row_vectors())
    }

    /// Some `x` with `self * x = b`, if one exists.
    pub fn solve(&self, b: &[F::Elem]) -> Option<Vec<F::Elem>> {
        assert_eq!(b.len(), self.rows);
        let f = &self.field;
        let mut aug = Self::zeros(f, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let (r, rank, pivots) = aug.rref_with_pivots();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![f.zero(); self.cols];
        for (row, &pc) in pivots.iter().enumerate().take(rank) {
            x[pc] = r.get(row, self.cols).clone();
        }
        Some(x)
    }

    /// Solves `self * X = B` column by column.
    pub fn solve_matrix(&self, b: &Self) -> Option<Self> {
        let mut cols = Vec::with_capacity(b.cols);
        for j in 0..b.cols {
            cols.push(self.solve(&b.column(j))?);
        }
        Some(Self::from_columns(&self.field, self.cols, &cols))
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.rows != self.cols {
            return None;
        }
        let id = Self::identity(&self.field, self.rows);
        if self.rank() != self.rows {
            return None;
        }
        self.solve_matrix(&id)
    }

    pub fn trace(&self) -> F::Elem {
        let f = &self.field;
        let mut acc = f.zero();
        for i in 0..self.rows.min(self.cols) {
            acc = f.add(&acc, self.get(i, i));
        }
        acc
    }

    /// Nilpotency test by repeated squaring up to the dimension.
    pub fn is_nilpotent(&self) -> bool {
        assert_eq!(self.rows, self.cols);
        let mut p = self.clone();
        let mut k = 1;
        while k < self.rows {
            p = p.mul(&p).expect("square");
            k *= 2;
        }
        p.is_zero()
    }

    /// Submatrix of the given rows and columns.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut m = Self::zeros(&self.field, rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                m.set(a, b, self.get(i, j).clone());
            }
        }
        m
    }
}

/// A linear subspace of `k^n`, stored as the rows of its reduced echelon
/// basis. Two equal subspaces have identical representations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace<F: Field> {
    ambient_dim: usize,
    basis: Matrix<F>,
    pivots: Vec<usize>,
}

impl<F: Field> Subspace<F> {
    pub fn zero(field: &F, ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Matrix::zeros(field, 0, ambient_dim),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: &F, ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Matrix::identity(field, ambient_dim),
            pivots: (0..ambient_dim).collect(),
        }
    }

    /// Span of arbitrary vectors.
    pub fn from_vectors(field: &F, ambient_dim: usize, vectors: &[Vec<F::Elem>]) -> Self {
        let m = Matrix::from_rows(field, vectors, ambient_dim);
        let (r, rank, pivots) = m.rref_with_pivots();
        let data = r.data[..rank * ambient_dim].to_vec();
        Subspace {
            ambient_dim,
            basis: Matrix::from_data(field, rank, ambient_dim, data),
            pivots,
        }
    }

    pub fn field(&self) -> &F {
        self.basis.field()
    }
    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }
    pub fn dim(&self) -> usize {
        self.basis.rows()
    }
    pub fn basis(&self) -> &Matrix<F> {
        &self.basis
    }
    pub fn basis_vectors(&self) -> Vec<Vec<F::Elem>> {
        self.basis.row_vectors()
    }
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::DimensionMismatch(alloc::format!(
                "ambient {} vs {}",
                self.ambient_dim,
                other.ambient_dim
            )));
        }
        Ok(())
    }

    /// Reduces `v` against the echelon basis; the result is zero iff `v` lies
    /// in the subspace.
    pub fn reduce(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        let f = self.field();
        let mut w = v.to_vec();
        for (row, &pc) in self.pivots.iter().enumerate() {
            if f.is_zero(&w[pc]) {
                continue;
            }
            let c = w[pc].clone();
            for (j, b) in self.basis.row(row).iter().enumerate() {
                if !f.is_zero(b) {
                    let t = f.mul(&c, b);
                    w[j] = f.sub(&w[j], &t);
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &[F::Elem]) -> bool {
        let f = self.field();
        self.reduce(v).iter().all(|x| f.is_zero(x))
    }

    /// Coordinates of `v` in the echelon basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[F::Elem]) -> Option<Vec<F::Elem>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&pc| v[pc].clone()).collect())
    }

    pub fn contains_subspace(&self, other: &Self) -> Result<bool> {
        self.check(other)?;
        Ok(other.basis_vectors().iter().all(|v| self.contains(v)))
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut vs = self.basis_vectors();
        vs.extend(other.basis_vectors());
        Ok(Self::from_vectors(self.field(), self.ambient_dim, &vs))
    }

    pub fn intersection(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let f = self.field();
        let (a, b) = (self.dim(), other.dim());
        if a == 0 || b == 0 {
            return Ok(Self::zero(f, self.ambient_dim));
        }
        // columns a_1..a_k, -b_1..-b_l; a kernel vector (c, d) gives sum c_i a_i
        let mut cols = self.basis_vectors();
        for v in other.basis_vectors() {
            cols.push(v.iter().map(|x| f.neg(x)).collect());
        }
        let m = Matrix::from_columns(f, self.ambient_dim, &cols);
        let ker = m.kernel();
        let a_rows = self.basis_vectors();
        let vs: Vec<Vec<F::Elem>> = ker
            .basis_vectors()
            .iter()
            .map(|kv| {
                let mut v = vec![f.zero(); self.ambient_dim];
                for (c, row) in kv[..a].iter().zip(&a_rows) {
                    if f.is_zero(c) {
                        continue;
                    }
                    for (x, y) in v.iter_mut().zip(row) {
                        f.add_mul_assign(x, c, y);
                    }
                }
                v
            })
            .collect();
        Ok(Self::from_vectors(f, self.ambient_dim, &vs))
    }

    /// `dim (a + b) / b`.
    pub fn quotient_dim(&self, other: &Self) -> Result<usize> {
        Ok(self.sum(other)?.dim() - other.dim())
    }

    /// Coordinate vectors (standard basis indices) spanning a complement.
    pub fn complement_indices(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient_dim];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ambient_dim).filter(|&i| !is_pivot[i]).collect()
    }

    /// Image of the subspace under a linear map given as a matrix.
    pub fn map(&self, m: &Matrix<F>) -> Self {
        let vs: Vec<Vec<F::Elem>> = self.basis_vectors().iter().map(|v| m.apply(v)).collect();
        Self::from_vectors(self.field(), m.rows(), &vs)
    }
}

/// Sparse matrix stored by columns; used for large bigraded maps where every
/// column has a handful of entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix<F: Field> {
    field: F,
    rows: usize,
    columns: Vec<BTreeMap<usize, F::Elem>>,
}

impl<F: Field> SparseMatrix<F> {
    pub fn zeros(field: &F, rows: usize, cols: usize) -> Self {
        SparseMatrix {
            field: field.clone(),
            rows,
            columns: vec![BTreeMap::new(); cols],
        }
    }

    pub fn identity(field: &F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.columns[i].insert(i, field.one());
        }
        m
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn get(&self, i: usize, j: usize) -> F::Elem {
        self.columns[j]
            .get(&i)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn column(&self, j: usize) -> &BTreeMap<usize, F::Elem> {
        &self.columns[j]
    }

    /// Adds `v` to entry `(i, j)`, dropping it if the sum vanishes.
    pub fn add_to(&mut self, i: usize, j: usize, v: F::Elem) {
        assert!(i < self.rows && j < self.columns.len());
        if self.field.is_zero(&v) {
            return;
        }
        let f = &self.field;
        let col = &mut self.columns[j];
        let new = match col.get(&i) {
            Some(old) => f.add(old, &v),
            None => v,
        };
        if f.is_zero(&new) {
            col.remove(&i);
        } else {
            col.insert(i, new);
        }
    }

    /// Triples `(row, col, value)` in column-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &F::Elem)> + '_ {
        self.columns
            .iter()
            .enumerate()
            .flat_map(|(j, c)| c.iter().map(move |(&i, v)| (i, j, v)))
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(|c| c.len()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(|c| c.is_empty())
    }

    pub fn apply_sparse(&self, v: &BTreeMap<usize, F::Elem>) -> BTreeMap<usize, F::Elem> {
        let f = &self.field;
        let mut out: BTreeMap<usize, F::Elem> = BTreeMap::new();
        for (&j, c) in v {
            for (&i, a) in &self.columns[j] {
                let t = f.mul(a, c);
                let e = out.entry(i).or_insert_with(|| f.zero());
                *e = f.add(e, &t);
            }
        }
        out.retain(|_, x| !f.is_zero(x));
        out
    }

    /// `self * v` for a dense vector.
    pub fn apply(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        let mut out = vec![f.zero(); self.rows];
        for (j, c) in v.iter().enumerate() {
            if f.is_zero(c) {
                continue;
            }
            for (&i, a) in &self.columns[j] {
                f.add_mul_assign(&mut out[i], a, c);
            }
        }
        out
    }

    /// Block diagonal sum.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut columns = self.columns.clone();
        for c in &other.columns {
            columns.push(c.iter().map(|(&i, v)| (i + self.rows, v.clone())).collect());
        }
        SparseMatrix {
            field: self.field.clone(),
            rows: self.rows + other.rows,
            columns,
        }
    }

    /// `self * other`
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.cols(), other.rows);
        let columns = other.columns.iter().map(|c| self.apply_sparse(c)).collect();
        SparseMatrix {
            field: self.field.clone(),
            rows: self.rows,
            columns,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols()), (other.rows, other.cols()));
        let mut out = self.clone();
        for (i, j, v) in other.entries() {
            out.add_to(i, j, v.clone());
        }
        out
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let f = &self.field;
        let mut out = Self::zeros(f, self.rows, self.cols());
        for (i, j, v) in self.entries() {
            out.add_to(i, j, f.mul(v, c));
        }
        out
    }

    /// Dense block with the given row and column index sets.
    pub fn block(&self, rows: &[usize], cols: &[usize]) -> Matrix<F> {
        let mut row_pos = BTreeMap::new();
        for (a, &i) in rows.iter().enumerate() {
            row_pos.insert(i, a);
        }
        let mut m = Matrix::zeros(&self.field, rows.len(), cols.len());
        for (b, &j) in cols.iter().enumerate() {
            for (i, v) in &self.columns[j] {
                if let Some(&a) = row_pos.get(i) {
                    m.set(a, b, v.clone());
                }
            }
        }
        m
    }

    pub fn to_dense(&self) -> Matrix<F> {
        let rows: Vec<usize> = (0..self.rows).collect();
        let cols: Vec<usize> = (0..self.cols()).collect();
        self.block(&rows, &cols)
    }

    pub fn from_dense(m: &Matrix<F>) -> Self {
        let f = m.field();
        let mut s = Self::zeros(f, m.rows(), m.cols());
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                s.add_to(i, j, m.get(i, j).clone());
            }
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    #[test]
    fn rref_identity_and_zero() {
        let q = Rationals;
        let id = Matrix::identity(&q, 3);
        assert_eq!(id.rref(), (id.clone(), 3));
        let z = Matrix::zeros(&q, 2, 4);
        assert_eq!(z.rref(), (z.clone(), 0));
    }

    #[test]
    fn rank_of_dependent_rows() {
        let q = Rationals;
        let m = Matrix::from_i64(&q, &[&[1, 2], &[2, 4]]);
        let (r, rank) = m.rref();
        assert_eq!(rank, 1);
        assert_eq!(r, Matrix::from_i64(&q, &[&[1, 2], &[0, 0]]));
    }

    #[test]
    fn kernel_examples() {
        let q = Rationals;
        assert_eq!(Matrix::identity(&q, 4).kernel().dim(), 0);
        let z = Matrix::zeros(&q, 2, 3);
        assert_eq!(z.kernel(), Subspace::full(&q, 3));

        let f5 = PrimeField::new(5).unwrap();
        let m = Matrix::from_i64(&f5, &[&[1, 1]]);
        let k = m.kernel();
        assert_eq!(k.dim(), 1);
        assert_eq!(k.basis_vectors(), vec![vec![1, 4]]);
    }

    #[test]
    fn subspace_lattice() {
        let q = Rationals;
        let e = |v: &[i64]| v.iter().map(|&x| q.from_i64(x)).collect::<Vec<_>>();
        let a = Subspace::from_vectors(&q, 4, &[e(&[1, 0, 0, 0]), e(&[0, 1, 0, 0])]);
        let b = Subspace::from_vectors(&q, 4, &[e(&[0, 0, 1, 0]), e(&[0, 0, 0, 1])]);
        assert_eq!(a.intersection(&b).unwrap().dim(), 0);
        assert_eq!(a.sum(&b).unwrap(), Subspace::full(&q, 4));
        assert_eq!(a.intersection(&a).unwrap(), a);
        assert_eq!(a.quotient_dim(&b).unwrap(), 2);

        let p1 = Subspace::from_vectors(&q, 3, &[e(&[1, 0, 0]), e(&[0, 1, 0])]);
        let p2 = Subspace::from_vectors(&q, 3, &[e(&[1, 1, 1]), e(&[0, 1, 2])]);
        let i = p1.intersection(&p2).unwrap();
        assert_eq!(i.dim(), 1);
        // (1,1,1) - (1/2)(0,1,2)... = direction (2,1,0) up to scale
        assert!(i.contains(&e(&[2, 1, 0])));
    }

    #[test]
    fn ambient_mismatch_is_an_error() {
        let q = Rationals;
        let a = Subspace::full(&q, 2);
        let b = Subspace::full(&q, 3);
        assert!(a.sum(&b).is_err());
        assert!(a.intersection(&b).is_err());
    }

    #[test]
    fn equal_spans_have_equal_representations() {
        let f = PrimeField::new(7).unwrap();
        let a = Subspace::from_vectors(&f, 3, &[vec![1, 2, 3], vec![0, 1, 1]]);
        let b = Subspace::from_vectors(&f, 3, &[vec![1, 3, 4], vec![2, 4, 6]]);
        assert_eq!(a, b);
    }

    #[test]
    fn solve_and_inverse() {
        let q = Rationals;
        let m = Matrix::from_i64(&q, &[&[2, 1], &[1, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), Matrix::identity(&q, 2));
        let x = m.solve(&[q.from_i64(3), q.from_i64(2)]).unwrap();
        assert_eq!(x, vec![q.from_i64(1), q.from_i64(1)]);
        let sing = Matrix::from_i64(&q, &[&[1, 1], &[1, 1]]);
        assert!(sing.solve(&[q.from_i64(1), q.from_i64(0)]).is_none());
    }

    #[test]
    fn sparse_compose_matches_dense() {
        let q = Rationals;
        let a = Matrix::from_i64(&q, &[&[1, 0, 2], &[0, 3, 0]]);
        let b = Matrix::from_i64(&q, &[&[1, 1], &[0, 1], &[4, 0]]);
        let sa = SparseMatrix::from_dense(&a);
        let sb = SparseMatrix::from_dense(&b);
        assert_eq!(sa.compose(&sb).to_dense(), a.mul(&b).unwrap());
    }
}
