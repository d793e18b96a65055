//! Irreducible reduced root systems, their finite Weyl groups, and the
//! integer pairings `<lambda, alpha^vee>` used by every alcove formula.
//!
//! Weights are stored in fundamental-weight coordinates, so the pairing with
//! a simple coroot is just a coordinate. Roots carry three coordinate
//! vectors: simple-root coefficients, fundamental-weight coordinates, and
//! the coefficients of the coroot in the simple-coroot basis.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Neg, Sub};

use crate::{Error, Result};

/// An integral weight in fundamental-weight coordinates.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }

    pub fn fundamental(rank: usize, i: usize) -> Self {
        let mut w = vec![0; rank];
        w[i] = 1;
        Weight(w)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn scale(&self, c: i64) -> Self {
        Weight(self.0.iter().map(|x| x * c).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, o: &Weight) -> Weight {
        Weight(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, o: &Weight) -> Weight {
        Weight(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight(self.0.iter().map(|a| -a).collect())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// A coroot, stored by its coefficients in the simple-coroot basis.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Coroot(pub Vec<i64>);

/// A root with its coroot.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Root {
    /// Coefficients in the simple roots.
    pub coeffs: Vec<i64>,
    /// Fundamental-weight coordinates.
    pub weight: Weight,
    pub coroot: Coroot,
}

impl Root {
    pub fn height(&self) -> i64 {
        self.coeffs.iter().sum()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CartanType {
    A(usize),
    B(usize),
    C(usize),
    D(usize),
    E(usize),
    F4,
    G2,
}

impl CartanType {
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::UnknownCartanType(s.to_string());
        let mut chars = s.chars();
        let letter = chars.next().ok_or_else(bad)?.to_ascii_uppercase();
        let n: usize = chars.as_str().parse().map_err(|_| bad())?;
        let t = match letter {
            'A' if (1..=8).contains(&n) => CartanType::A(n),
            'B' if (2..=8).contains(&n) => CartanType::B(n),
            'C' if (2..=8).contains(&n) => CartanType::C(n),
            'D' if (4..=8).contains(&n) => CartanType::D(n),
            'E' if (6..=8).contains(&n) => CartanType::E(n),
            'F' if n == 4 => CartanType::F4,
            'G' if n == 2 => CartanType::G2,
            _ => return Err(bad()),
        };
        Ok(t)
    }

    pub fn rank(self) -> usize {
        match self {
            CartanType::A(n)
            | CartanType::B(n)
            | CartanType::C(n)
            | CartanType::D(n)
            | CartanType::E(n) => n,
            CartanType::F4 => 4,
            CartanType::G2 => 2,
        }
    }

    /// `a[i][j] = <alpha_j, alpha_i^vee>`, Bourbaki numbering.
    pub fn cartan_matrix(self) -> Vec<Vec<i64>> {
        let n = self.rank();
        let mut a = vec![vec![0i64; n]; n];
        for (i, row) in a.iter_mut().enumerate() {
            row[i] = 2;
        }
        let mut link = |i: usize, j: usize| {
            a[i][j] = -1;
            a[j][i] = -1;
        };
        match self {
            CartanType::A(_) | CartanType::B(_) | CartanType::C(_) => {
                for i in 0..n.saturating_sub(1) {
                    link(i, i + 1);
                }
            }
            CartanType::D(_) => {
                for i in 0..n - 2 {
                    link(i, i + 1);
                }
                link(n - 3, n - 1);
            }
            CartanType::E(_) => {
                link(0, 2);
                link(1, 3);
                for i in 2..n - 1 {
                    link(i, i + 1);
                }
            }
            CartanType::F4 => {
                link(0, 1);
                link(1, 2);
                link(2, 3);
            }
            CartanType::G2 => link(0, 1),
        }
        match self {
            // alpha_n short
            CartanType::B(_) => a[n - 1][n - 2] = -2,
            // alpha_n long
            CartanType::C(_) => a[n - 2][n - 1] = -2,
            // alpha_3, alpha_4 short
            CartanType::F4 => a[2][1] = -2,
            // alpha_1 short, alpha_2 long
            CartanType::G2 => a[0][1] = -3,
            _ => {}
        }
        a
    }

    /// Order of the Weyl group.
    pub fn weyl_order(self) -> u64 {
        let fact = |n: usize| (1..=n as u64).product::<u64>();
        match self {
            CartanType::A(n) => fact(n + 1),
            CartanType::B(n) | CartanType::C(n) => (1u64 << n) * fact(n),
            CartanType::D(n) => (1u64 << (n - 1)) * fact(n),
            CartanType::E(6) => 51_840,
            CartanType::E(7) => 2_903_040,
            CartanType::E(_) => 696_729_600,
            CartanType::F4 => 1152,
            CartanType::G2 => 12,
        }
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CartanType::A(n) => write!(f, "A{n}"),
            CartanType::B(n) => write!(f, "B{n}"),
            CartanType::C(n) => write!(f, "C{n}"),
            CartanType::D(n) => write!(f, "D{n}"),
            CartanType::E(n) => write!(f, "E{n}"),
            CartanType::F4 => write!(f, "F4"),
            CartanType::G2 => write!(f, "G2"),
        }
    }
}

/// Element of the finite Weyl group: its matrix on fundamental-weight
/// coordinates together with a cached reduced word.
#[derive(Clone, Debug)]
pub struct WeylElement {
    rank: usize,
    /// Row-major `rank x rank`.
    matrix: Vec<i64>,
    word: Vec<usize>,
}

impl PartialEq for WeylElement {
    fn eq(&self, other: &Self) -> bool {
        self.matrix == other.matrix
    }
}
impl Eq for WeylElement {}

impl PartialOrd for WeylElement {
    fn partial_cmp(&self, other: &Self) -> Option<core::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for WeylElement {
    fn cmp(&self, other: &Self) -> core::cmp::Ordering {
        self.matrix.cmp(&other.matrix)
    }
}

impl core::hash::Hash for WeylElement {
    fn hash<H: core::hash::Hasher>(&self, state: &mut H) {
        self.matrix.hash(state)
    }
}

impl WeylElement {
    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn length(&self) -> usize {
        self.word.len()
    }

    pub fn matrix(&self) -> &[i64] {
        &self.matrix
    }

    pub fn is_identity(&self) -> bool {
        self.word.is_empty()
    }

    pub fn act(&self, lam: &Weight) -> Weight {
        let n = self.rank;
        Weight(
            (0..n)
                .map(|i| (0..n).map(|j| self.matrix[i * n + j] * lam.0[j]).sum())
                .collect(),
        )
    }
}

/// Cartan data, positive roots and the finite Weyl group of one irreducible
/// type.
#[derive(Clone, Debug)]
pub struct RootSystem {
    cartan_type: CartanType,
    rank: usize,
    cartan: Vec<Vec<i64>>,
    positive: Vec<Root>,
    /// Fundamental-weight coordinates of every root (both signs) to
    /// `(index into positive, sign)`.
    root_index: BTreeMap<Vec<i64>, (usize, i8)>,
    w0: WeylElement,
    coxeter_number: i64,
}

impl PartialEq for RootSystem {
    fn eq(&self, other: &Self) -> bool {
        self.cartan_type == other.cartan_type
    }
}
impl Eq for RootSystem {}

impl RootSystem {
    pub fn build(cartan_type: &str) -> Result<Self> {
        Ok(Self::from_type(CartanType::parse(cartan_type)?))
    }

    pub fn from_type(cartan_type: CartanType) -> Self {
        let rank = cartan_type.rank();
        let cartan = cartan_type.cartan_matrix();
        let half_norms = symmetrizer(&cartan);
        let positive = positive_roots(&cartan, &half_norms);
        let mut root_index = BTreeMap::new();
        for (k, r) in positive.iter().enumerate() {
            root_index.insert(r.weight.0.clone(), (k, 1i8));
            root_index.insert((-&r.weight).0, (k, -1i8));
        }
        let mut rs = RootSystem {
            cartan_type,
            rank,
            cartan,
            positive,
            root_index,
            w0: WeylElement {
                rank,
                matrix: identity_matrix(rank),
                word: Vec::new(),
            },
            coxeter_number: 0,
        };
        let n_roots = 2 * rs.positive.len() as i64;
        rs.coxeter_number = n_roots / rank as i64;
        let rho = rs.rho();
        let (_, w0) = rs.to_dominant(&(-&rho));
        rs.w0 = w0;
        rs
    }

    pub fn cartan_type(&self) -> CartanType {
        self.cartan_type
    }
    pub fn type_name(&self) -> String {
        self.cartan_type.to_string()
    }
    pub fn rank(&self) -> usize {
        self.rank
    }
    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }
    pub fn positive_roots(&self) -> &[Root] {
        &self.positive
    }
    pub fn w0(&self) -> &WeylElement {
        &self.w0
    }
    pub fn coxeter_number(&self) -> i64 {
        self.coxeter_number
    }
    pub fn weyl_order(&self) -> u64 {
        self.cartan_type.weyl_order()
    }

    /// Sum of the fundamental weights.
    pub fn rho(&self) -> Weight {
        Weight(vec![1; self.rank])
    }

    pub fn simple_root(&self, i: usize) -> &Root {
        &self.positive[i]
    }

    pub fn simple_roots(&self) -> &[Root] {
        &self.positive[..self.rank]
    }

    /// The highest root.
    pub fn highest_root(&self) -> &Root {
        self.positive
            .iter()
            .max_by_key(|r| r.height())
            .expect("nonempty")
    }

    /// The root whose coroot is the highest coroot (the highest short root).
    /// Its reflection hyperplane bounds the fundamental alcove from above.
    pub fn highest_short_root(&self) -> &Root {
        self.positive
            .iter()
            .max_by_key(|r| r.coroot.0.iter().sum::<i64>())
            .expect("nonempty")
    }

    /// `<lambda, alpha^vee>`
    pub fn pairing(&self, lam: &Weight, coroot: &Coroot) -> i64 {
        lam.0.iter().zip(&coroot.0).map(|(a, b)| a * b).sum()
    }

    /// `(index, is_positive)` of a root given in weight coordinates.
    pub fn root_lookup(&self, w: &Weight) -> Option<(usize, bool)> {
        self.root_index.get(&w.0).map(|&(k, s)| (k, s > 0))
    }

    pub fn identity(&self) -> WeylElement {
        WeylElement {
            rank: self.rank,
            matrix: identity_matrix(self.rank),
            word: Vec::new(),
        }
    }

    fn simple_reflection_matrix(&self, i: usize) -> Vec<i64> {
        let n = self.rank;
        let mut m = identity_matrix(n);
        // s_i(lam) = lam - lam_i alpha_i; alpha_i has coordinates a[.][i]
        for r in 0..n {
            m[r * n + i] -= self.cartan[r][i];
        }
        m
    }

    pub fn simple_reflection(&self, i: usize) -> WeylElement {
        WeylElement {
            rank: self.rank,
            matrix: self.simple_reflection_matrix(i),
            word: vec![i],
        }
    }

    pub fn from_word(&self, word: &[usize]) -> WeylElement {
        let n = self.rank;
        let mut m = identity_matrix(n);
        for &i in word {
            m = mat_mul(n, &m, &self.simple_reflection_matrix(i));
        }
        self.with_reduced_word(m)
    }

    fn with_reduced_word(&self, matrix: Vec<i64>) -> WeylElement {
        let mut e = WeylElement {
            rank: self.rank,
            matrix,
            word: Vec::new(),
        };
        e.word = self.reduced_word_of(&e);
        e
    }

    /// Reduced word by repeatedly stripping right descents.
    fn reduced_word_of(&self, w: &WeylElement) -> Vec<usize> {
        let n = self.rank;
        let mut m = w.matrix.clone();
        let mut word = Vec::new();
        'outer: loop {
            let cur = WeylElement {
                rank: n,
                matrix: m.clone(),
                word: Vec::new(),
            };
            for i in 0..n {
                let image = cur.act(&self.positive[i].weight);
                let (_, pos) = self.root_lookup(&image).expect("Weyl group permutes roots");
                if !pos {
                    word.push(i);
                    m = mat_mul(n, &m, &self.simple_reflection_matrix(i));
                    continue 'outer;
                }
            }
            break;
        }
        word.reverse();
        word
    }

    pub fn multiply(&self, a: &WeylElement, b: &WeylElement) -> WeylElement {
        self.with_reduced_word(mat_mul(self.rank, &a.matrix, &b.matrix))
    }

    pub fn inverse(&self, a: &WeylElement) -> WeylElement {
        let word: Vec<usize> = a.word.iter().rev().copied().collect();
        self.from_word(&word)
    }

    pub fn act(&self, w: &WeylElement, lam: &Weight) -> Weight {
        w.act(lam)
    }

    /// Whether `w(alpha)` is a positive root, for positive root `alpha`.
    pub fn maps_positive(&self, w: &WeylElement, root: usize) -> bool {
        let image = w.act(&self.positive[root].weight);
        self.root_lookup(&image)
            .expect("Weyl group permutes roots")
            .1
    }

    /// Number of positive roots sent to negative roots.
    pub fn inversion_count(&self, w: &WeylElement) -> usize {
        (0..self.positive.len())
            .filter(|&k| !self.maps_positive(w, k))
            .count()
    }

    /// Moves `lam` into the dominant chamber; returns the dominant weight and
    /// the element `w` with `w(lam)` dominant.
    pub fn to_dominant(&self, lam: &Weight) -> (Weight, WeylElement) {
        let n = self.rank;
        let mut cur = lam.clone();
        let mut word = Vec::new();
        while let Some(i) = (0..n).find(|&i| cur.0[i] < 0) {
            let s = self.simple_reflection(i);
            cur = s.act(&cur);
            word.push(i);
        }
        word.reverse();
        (cur, self.from_word(&word))
    }

    pub fn is_dominant(&self, lam: &Weight) -> bool {
        lam.0.iter().all(|&x| x >= 0)
    }

    /// All elements of `W`, in breadth-first (length) order. Refuses groups
    /// beyond `limit` elements.
    pub fn enumerate_weyl(&self, limit: u64) -> Result<Vec<WeylElement>> {
        if self.weyl_order() > limit {
            return Err(Error::Invalid(alloc::format!(
                "|W({})| = {} exceeds the enumeration limit {}",
                self.cartan_type,
                self.weyl_order(),
                limit
            )));
        }
        let n = self.rank;
        let gens: Vec<Vec<i64>> = (0..n).map(|i| self.simple_reflection_matrix(i)).collect();
        let mut seen: BTreeMap<Vec<i64>, usize> = BTreeMap::new();
        let mut out = vec![self.identity()];
        seen.insert(out[0].matrix.clone(), 0);
        let mut queue = VecDeque::from([0usize]);
        while let Some(k) = queue.pop_front() {
            for (i, g) in gens.iter().enumerate() {
                let m = mat_mul(n, &out[k].matrix, g);
                if seen.contains_key(&m) {
                    continue;
                }
                let mut word = out[k].word.clone();
                word.push(i);
                seen.insert(m.clone(), out.len());
                queue.push_back(out.len());
                out.push(WeylElement {
                    rank: n,
                    matrix: m,
                    word,
                });
            }
        }
        Ok(out)
    }

    /// `s_alpha` for a positive root, as a Weyl group element.
    pub fn reflection(&self, root: usize) -> WeylElement {
        let n = self.rank;
        let r = &self.positive[root];
        let mut m = identity_matrix(n);
        // s(lam) = lam - <lam, r^vee> r
        for i in 0..n {
            for j in 0..n {
                m[i * n + j] -= r.weight.0[i] * r.coroot.0[j];
            }
        }
        self.with_reduced_word(m)
    }

    /// Order of `s_i s_j` in `W`.
    pub fn coxeter_exponent(&self, i: usize, j: usize) -> usize {
        if i == j {
            return 1;
        }
        match self.cartan[i][j] * self.cartan[j][i] {
            0 => 2,
            1 => 3,
            2 => 4,
            3 => 6,
            _ => unreachable!("crystallographic"),
        }
    }
}

fn identity_matrix(n: usize) -> Vec<i64> {
    let mut m = vec![0; n * n];
    for i in 0..n {
        m[i * n + i] = 1;
    }
    m
}

fn mat_mul(n: usize, a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut c = vec![0; n * n];
    for i in 0..n {
        for k in 0..n {
            let x = a[i * n + k];
            if x == 0 {
                continue;
            }
            for j in 0..n {
                c[i * n + j] += x * b[k * n + j];
            }
        }
    }
    c
}

/// Half squared lengths `|alpha_i|^2 / 2`, scaled to coprime integers with
/// the short roots of length 1.
fn symmetrizer(a: &[Vec<i64>]) -> Vec<i64> {
    let n = a.len();
    // len_i a_ij = len_j a_ji; propagate as fractions num/den over the Dynkin tree
    let mut num = vec![0i64; n];
    let mut den = vec![0i64; n];
    num[0] = 1;
    den[0] = 1;
    let mut stack = vec![0];
    while let Some(i) = stack.pop() {
        for j in 0..n {
            if i != j && a[i][j] != 0 && num[j] == 0 {
                // len_j = len_i * a_ij / a_ji
                num[j] = num[i] * a[i][j];
                den[j] = den[i] * a[j][i];
                stack.push(j);
            }
        }
    }
    let l = den.iter().fold(1i64, |acc, &d| lcm(acc, d.abs()));
    let mut vals: Vec<i64> = (0..n)
        .map(|i| num[i] * (l / den[i]))
        .map(|x| x.abs())
        .collect();
    let g = vals.iter().fold(0i64, |acc, &x| gcd(acc, x));
    for v in &mut vals {
        *v /= g;
    }
    vals
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: i64, b: i64) -> i64 {
    a / gcd(a, b) * b
}

fn positive_roots(a: &[Vec<i64>], half_norms: &[i64]) -> Vec<Root> {
    let n = a.len();
    let weight_of = |c: &[i64]| -> Weight {
        Weight(
            (0..n)
                .map(|i| (0..n).map(|j| a[i][j] * c[j]).sum())
                .collect(),
        )
    };
    let mut coeffs: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            let mut c = vec![0; n];
            c[i] = 1;
            c
        })
        .collect();
    let mut known: BTreeMap<Vec<i64>, ()> = coeffs.iter().map(|c| (c.clone(), ())).collect();
    let mut frontier = coeffs.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for beta in &frontier {
            let w = weight_of(beta);
            for i in 0..n {
                // p = how far beta - k alpha_i stays a root (or zero)
                let mut p = 0;
                let mut c = beta.clone();
                loop {
                    c[i] -= 1;
                    if c[i] < 0 || !known.contains_key(&c) {
                        break;
                    }
                    p += 1;
                }
                let q = p - w.0[i];
                if q > 0 {
                    let mut up = beta.clone();
                    up[i] += 1;
                    if !known.contains_key(&up) {
                        known.insert(up.clone(), ());
                        next.push(up);
                    }
                }
            }
        }
        coeffs.extend(next.iter().cloned());
        frontier = next;
    }
    coeffs
        .into_iter()
        .map(|c| {
            // (beta, beta) = sum_jk c_j c_k a_jk len_j ; beta^vee = sum_j c_j 2 len_j / (beta,beta) alpha_j^vee
            let mut norm = 0i64;
            for j in 0..n {
                for k in 0..n {
                    norm += c[j] * c[k] * a[j][k] * half_norms[j];
                }
            }
            let coroot = (0..n)
                .map(|j| {
                    let x = 2 * c[j] * half_norms[j];
                    debug_assert_eq!(x % norm, 0);
                    x / norm
                })
                .collect();
            Root {
                weight: weight_of(&c),
                coeffs: c,
                coroot: Coroot(coroot),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn count_positive(t: &str) -> usize {
        RootSystem::build(t).unwrap().positive_roots().len()
    }

    #[test]
    fn positive_root_counts() {
        assert_eq!(count_positive("A1"), 1);
        assert_eq!(count_positive("A2"), 3);
        assert_eq!(count_positive("A4"), 10);
        assert_eq!(count_positive("B2"), 4);
        assert_eq!(count_positive("B3"), 9);
        assert_eq!(count_positive("C4"), 16);
        assert_eq!(count_positive("D4"), 12);
        assert_eq!(count_positive("G2"), 6);
        assert_eq!(count_positive("F4"), 24);
        assert_eq!(count_positive("E6"), 36);
        assert_eq!(count_positive("E7"), 63);
        assert_eq!(count_positive("E8"), 120);
    }

    #[test]
    fn small_types() {
        let a1 = RootSystem::build("A1").unwrap();
        assert_eq!(a1.coxeter_number(), 2);
        assert_eq!(a1.enumerate_weyl(100).unwrap().len(), 2);
        let a2 = RootSystem::build("A2").unwrap();
        assert_eq!(a2.coxeter_number(), 3);
        assert_eq!(a2.enumerate_weyl(100).unwrap().len(), 6);
        let g2 = RootSystem::build("G2").unwrap();
        assert_eq!(g2.coxeter_number(), 6);
        assert_eq!(g2.enumerate_weyl(100).unwrap().len(), 12);
    }

    #[test]
    fn unknown_types_are_rejected() {
        for t in ["X3", "A0", "A9", "D3", "E5", "G3", "", "B"] {
            assert!(RootSystem::build(t).is_err(), "{t}");
        }
    }

    #[test]
    fn rho_pairs_to_one_on_simple_coroots() {
        for t in ["A3", "B3", "C3", "D5", "E6", "F4", "G2"] {
            let rs = RootSystem::build(t).unwrap();
            for r in rs.simple_roots() {
                assert_eq!(rs.pairing(&rs.rho(), &r.coroot), 1);
            }
            assert_eq!(
                rs.pairing(&Weight::zero(rs.rank()), &rs.simple_root(0).coroot),
                0
            );
        }
    }

    #[test]
    fn coxeter_number_from_highest_coroot() {
        for t in ["A3", "B3", "C3", "D4", "E6", "E8", "F4", "G2"] {
            let rs = RootSystem::build(t).unwrap();
            let hs = rs.highest_short_root();
            assert_eq!(
                rs.pairing(&rs.rho(), &hs.coroot) + 1,
                rs.coxeter_number(),
                "{t}"
            );
        }
        let a2 = RootSystem::build("A2").unwrap();
        assert_eq!(a2.pairing(&a2.rho(), &a2.highest_root().coroot), 2);
    }

    #[test]
    fn sum_of_positive_roots_is_two_rho() {
        for t in ["A2", "B2", "C3", "D4", "G2", "F4", "E6"] {
            let rs = RootSystem::build(t).unwrap();
            let mut s = Weight::zero(rs.rank());
            for r in rs.positive_roots() {
                s = &s + &r.weight;
            }
            assert_eq!(s, rs.rho().scale(2), "{t}");
        }
    }

    #[test]
    fn reflection_of_fundamental_weight_in_a1() {
        let a1 = RootSystem::build("A1").unwrap();
        let s = a1.simple_reflection(0);
        assert_eq!(s.act(&Weight(vec![1])), Weight(vec![-1]));
        assert_eq!(a1.identity().act(&Weight(vec![5])), Weight(vec![5]));
    }

    #[test]
    fn w0_is_an_involution_reversing_positivity() {
        for t in ["A2", "A3", "B2", "C3", "D4", "D5", "G2", "F4", "E6", "E7"] {
            let rs = RootSystem::build(t).unwrap();
            let w0 = rs.w0();
            assert!(rs.multiply(w0, w0).is_identity(), "{t}");
            assert_eq!(w0.length(), rs.positive_roots().len());
            assert_eq!(w0.act(&rs.rho()), -&rs.rho());
            for k in 0..rs.positive_roots().len() {
                assert!(!rs.maps_positive(w0, k));
            }
        }
    }

    #[test]
    fn enumeration_is_closed_under_products() {
        let rs = RootSystem::build("B2").unwrap();
        let all = rs.enumerate_weyl(100).unwrap();
        assert_eq!(all.len(), 8);
        for a in &all {
            for b in &all {
                assert!(all.contains(&rs.multiply(a, b)));
            }
            assert_eq!(a.length(), rs.inversion_count(a));
        }
    }

    #[test]
    fn reflection_parity() {
        let rs = RootSystem::build("A3").unwrap();
        let all = rs.enumerate_weyl(100).unwrap();
        for k in 0..rs.positive_roots().len() {
            let s = rs.reflection(k);
            for w in &all {
                let sw = rs.multiply(&s, w);
                assert_ne!(sw.length() % 2, w.length() % 2);
            }
        }
    }

    #[test]
    fn enumeration_limit() {
        let rs = RootSystem::build("E7").unwrap();
        assert!(rs.enumerate_weyl(100_000).is_err());
    }
}
