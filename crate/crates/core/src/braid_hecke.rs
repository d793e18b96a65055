//! Words in the extended affine braid group, the canonical lift of the
//! extended affine Weyl group, and a truncated Demazure–Lusztig
//! representation on Laurent monomials in which braid identities are
//! certified.
//!
//! Equality of braid words is never decided in the group itself. Two words
//! are compared as partial operators on the span of `e^x`, `x` in a finite
//! `W`-stable box of weights; a word is defined on a monomial when every
//! intermediate image stays inside the box.
//!
//! Coefficients are Laurent polynomials in `v = q^{1/2}` with integer
//! coefficients, and the generator `T_α` acts by
//!
//! ```text
//! T_α(f) = v·s_α(f) + (v − v⁻¹)·(f − s_α(f)) / (1 − e^{−α})
//! ```
//!
//! which is `v⁻¹` times the operator `q·s_α(f) + (q − 1)(f − s_α f)/(1 − e^{−α})`.
//! The rescaling makes `θ_x = T_α θ_{x−α} T_α` hold on the nose.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::affine_weyl::{AffineWeyl, ExtAffineWeylElement};
use crate::root_system::{RootSystem, Weight};
use crate::{Error, Result};

/// Laurent polynomial in `v` with integer coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Laurent(BTreeMap<i32, BigInt>);

impl Laurent {
    pub fn zero() -> Self {
        Laurent(BTreeMap::new())
    }

    /// `c·v^k`
    pub fn monomial(k: i32, c: i64) -> Self {
        let mut m = BTreeMap::new();
        if c != 0 {
            m.insert(k, BigInt::from(c));
        }
        Laurent(m)
    }

    pub fn one() -> Self {
        Self::monomial(0, 1)
    }

    /// `v − v⁻¹`
    pub fn v_minus_v_inv() -> Self {
        let mut m = Self::monomial(1, 1);
        m.add_assign(&Self::monomial(-1, -1));
        m
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &BigInt)> {
        self.0.iter().map(|(k, c)| (*k, c))
    }

    pub fn add_assign(&mut self, o: &Laurent) {
        for (k, c) in &o.0 {
            let e = self.0.entry(*k).or_insert_with(BigInt::zero);
            *e += c;
            if e.is_zero() {
                self.0.remove(k);
            }
        }
    }

    pub fn mul(&self, o: &Laurent) -> Laurent {
        let mut out = Laurent::zero();
        for (a, x) in &self.0 {
            for (b, y) in &o.0 {
                let mut t = BTreeMap::new();
                t.insert(a + b, x * y);
                out.add_assign(&Laurent(t));
            }
        }
        out
    }

    pub fn neg(&self) -> Laurent {
        Laurent(self.0.iter().map(|(k, c)| (*k, -c)).collect())
    }
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        for (i, (k, c)) in self.0.iter().rev().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            if i > 0 {
                write!(f, " {sign} ")?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            let a = c.abs();
            match (*k, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (1, true) => write!(f, "v")?,
                (1, false) => write!(f, "{a}v")?,
                (k, true) => write!(f, "v^{k}")?,
                (k, false) => write!(f, "{a}v^{k}")?,
            }
        }
        Ok(())
    }
}

/// Element of the span of the monomials `e^x`.
pub type HeckeVector = BTreeMap<Weight, Laurent>;

/// One letter of a braid word: `T_α^{±1}` for the finite simple root with
/// 0-based index `index`, or `θ_x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Letter {
    T { index: usize, inverse: bool },
    Theta(Weight),
}

/// A free word in the generators; the group element it denotes is the
/// left-to-right product.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BraidWord(pub Vec<Letter>);

impl BraidWord {
    pub fn empty() -> Self {
        BraidWord(Vec::new())
    }

    pub fn t(index: usize) -> Self {
        BraidWord(vec![Letter::T {
            index,
            inverse: false,
        }])
    }

    pub fn theta(x: Weight) -> Self {
        BraidWord(vec![Letter::Theta(x)])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, o: &BraidWord) -> BraidWord {
        let mut v = self.0.clone();
        v.extend(o.0.iter().cloned());
        BraidWord(v)
    }

    pub fn inverse(&self) -> BraidWord {
        BraidWord(
            self.0
                .iter()
                .rev()
                .map(|l| match l {
                    Letter::T { index, inverse } => Letter::T {
                        index: *index,
                        inverse: !inverse,
                    },
                    Letter::Theta(x) => Letter::Theta(-x),
                })
                .collect(),
        )
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            match l {
                Letter::T {
                    index,
                    inverse: false,
                } => write!(f, "T{}", index + 1)?,
                Letter::T {
                    index,
                    inverse: true,
                } => write!(f, "T{}^-1", index + 1)?,
                Letter::Theta(x) => write!(f, "theta{x}")?,
            }
        }
        Ok(())
    }
}

/// The canonical lift `C` of the extended affine Weyl group.
///
/// On reduced products it is multiplicative; simple reflections go to
/// `T_α`, `C(t_x) = θ_x` for dominant `x`, and `s₀`, `Ω` are reached through
/// such translations.
pub fn canonical_lift(g: &AffineWeyl, w: &ExtAffineWeylElement) -> Result<BraidWord> {
    let (omega, word) = g.reduced_decomposition(w)?;
    let mut out = lift_length_zero(g, &omega)?;
    for k in word {
        out = out.concat(&lift_affine_simple(g, k));
    }
    Ok(out)
}

/// `C` of a finite Weyl group element: the `T`'s along a reduced word.
fn lift_finite(word: &[usize]) -> BraidWord {
    BraidWord(
        word.iter()
            .map(|&i| Letter::T {
                index: i,
                inverse: false,
            })
            .collect(),
    )
}

/// `C(s₀) = θ_α·C(s_α)⁻¹` for the highest short root `α`, from
/// `t_α = s₀·s_α` with lengths adding.
fn lift_affine_simple(g: &AffineWeyl, k: usize) -> BraidWord {
    let rs = g.root_system();
    if k > 0 {
        return BraidWord::t(k - 1);
    }
    let s0 = g.affine_simple(0);
    let alpha = rs.highest_short_root().weight.clone();
    let s_alpha = s0.finite_part();
    debug_assert_eq!(
        g.length(&g.translation(&alpha)),
        1 + s_alpha.length(),
        "t_alpha = s0 s_alpha is reduced"
    );
    BraidWord::theta(alpha).concat(&lift_finite(s_alpha.word()).inverse())
}

/// For `ω = t_z·u` of length zero, `C(ω) = θ_z·C(u⁻¹)⁻¹` since
/// `t_z = ω·u⁻¹` with lengths adding.
fn lift_length_zero(g: &AffineWeyl, omega: &ExtAffineWeylElement) -> Result<BraidWord> {
    if g.length(omega) != 0 {
        return Err(Error::Invalid(String::from("element has positive length")));
    }
    let rs = g.root_system();
    let (z, u) = g.translation_first(omega);
    if z.is_zero() {
        return Ok(BraidWord::empty());
    }
    let u_inv = rs.inverse(&u);
    Ok(BraidWord::theta(z).concat(&lift_finite(u_inv.word()).inverse()))
}

/// Result of comparing two words as partial operators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Comparison {
    /// Monomials on which both words are defined.
    pub common_domain: usize,
    /// Monomials of the common domain on which they disagree.
    pub mismatches: usize,
}

impl Comparison {
    pub fn equal(&self) -> bool {
        self.common_domain > 0 && self.mismatches == 0
    }
}

/// Outcome of checking one family of defining relations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationReport {
    pub relation: String,
    pub instances_checked: usize,
    pub failures: usize,
}

/// The truncated Demazure–Lusztig module on the monomials of a weight box.
#[derive(Clone, Debug)]
pub struct TruncatedHeckeSpace {
    rs: RootSystem,
    radius: i64,
    monomials: Vec<Weight>,
    /// `T_i(e^x)` for every box monomial.
    t_images: Vec<BTreeMap<Weight, HeckeVector>>,
}

/// Refuses boxes with more monomials than this.
pub const MAX_BOX: usize = 200_000;

impl TruncatedHeckeSpace {
    /// Weights `x` with `|⟨x, β∨⟩| ≤ radius` for every root `β`.
    pub fn build(rs: RootSystem, radius: i64) -> Result<Self> {
        if radius < 2 {
            return Err(Error::BoxTooSmall(radius));
        }
        let n = rs.rank();
        let side = (2 * radius + 1) as u128;
        if side.pow(n as u32) > MAX_BOX as u128 * 16 {
            return Err(Error::Invalid(format!(
                "box of radius {radius} in rank {n} is too large"
            )));
        }
        let mut monomials = Vec::new();
        let mut cur = vec![-radius; n];
        loop {
            let x = Weight(cur.clone());
            if in_box(&rs, &x, radius) {
                monomials.push(x);
            }
            let mut i = 0;
            while i < n && cur[i] == radius {
                cur[i] = -radius;
                i += 1;
            }
            if i == n {
                break;
            }
            cur[i] += 1;
        }
        if monomials.len() > MAX_BOX {
            return Err(Error::Invalid(format!(
                "box of radius {radius} has {} monomials",
                monomials.len()
            )));
        }
        let t_images = (0..n)
            .map(|i| {
                monomials
                    .iter()
                    .map(|x| (x.clone(), dl_monomial(&rs, i, x)))
                    .collect()
            })
            .collect();
        Ok(TruncatedHeckeSpace {
            rs,
            radius,
            monomials,
            t_images,
        })
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn radius(&self) -> i64 {
        self.radius
    }

    pub fn monomials(&self) -> &[Weight] {
        &self.monomials
    }

    pub fn contains(&self, x: &Weight) -> bool {
        in_box(&self.rs, x, self.radius)
    }

    fn apply_letter(&self, letter: &Letter, f: &HeckeVector) -> Option<HeckeVector> {
        let mut out = HeckeVector::new();
        match letter {
            Letter::Theta(x) => {
                for (y, c) in f {
                    let z = x + y;
                    if !self.contains(&z) {
                        return None;
                    }
                    out.insert(z, c.clone());
                }
            }
            Letter::T { index, inverse } => {
                let shift = Laurent::v_minus_v_inv().neg();
                for (y, c) in f {
                    let img = self.t_images.get(*index)?.get(y)?;
                    for (z, d) in img {
                        add_term(&mut out, z, &c.mul(d));
                    }
                    if *inverse {
                        add_term(&mut out, y, &c.mul(&shift));
                    }
                }
            }
        }
        Some(out)
    }

    /// The image of `e^x` under the word, if defined.
    pub fn apply_to_monomial(&self, word: &BraidWord, x: &Weight) -> Option<HeckeVector> {
        let mut f = HeckeVector::new();
        f.insert(x.clone(), Laurent::one());
        for l in word.0.iter().rev() {
            f = self.apply_letter(l, &f)?;
        }
        Some(f)
    }

    /// The word as a partial operator: monomial to image, on its domain.
    pub fn apply_word(&self, word: &BraidWord) -> Result<BTreeMap<Weight, HeckeVector>> {
        let op: BTreeMap<Weight, HeckeVector> = self
            .monomials
            .iter()
            .filter_map(|x| self.apply_to_monomial(word, x).map(|f| (x.clone(), f)))
            .collect();
        if op.is_empty() {
            return Err(Error::EmptyDomain);
        }
        Ok(op)
    }

    /// Compares two words on the monomials where both are defined.
    pub fn compare(&self, a: &BraidWord, b: &BraidWord) -> Comparison {
        let mut common = 0;
        let mut mismatches = 0;
        for x in &self.monomials {
            if let (Some(fa), Some(fb)) =
                (self.apply_to_monomial(a, x), self.apply_to_monomial(b, x))
            {
                common += 1;
                if fa != fb {
                    mismatches += 1;
                }
            }
        }
        Comparison {
            common_domain: common,
            mismatches,
        }
    }

    /// Checks every defining relation on test weights of the half-radius
    /// box.
    pub fn verify_relations(&self) -> Vec<RelationReport> {
        let rs = &self.rs;
        let n = rs.rank();
        let small: Vec<Weight> = self
            .monomials
            .iter()
            .filter(|x| in_box(rs, x, self.radius / 2))
            .cloned()
            .collect();
        let mut reports = Vec::new();

        let mut braid = RelationReport::new("braid");
        for i in 0..n {
            for j in i + 1..n {
                let m = rs.coxeter_exponent(i, j);
                let alt = |a: usize, b: usize| {
                    BraidWord(
                        (0..m)
                            .map(|k| Letter::T {
                                index: if k % 2 == 0 { a } else { b },
                                inverse: false,
                            })
                            .collect(),
                    )
                };
                braid.record(&self.compare(&alt(i, j), &alt(j, i)));
            }
        }
        reports.push(braid);

        let mut additive = RelationReport::new("theta_x theta_y = theta_{x+y}");
        for x in &small {
            for y in &small {
                let lhs = BraidWord::theta(x.clone()).concat(&BraidWord::theta(y.clone()));
                additive.record(&self.compare(&lhs, &BraidWord::theta(x + y)));
            }
        }
        reports.push(additive);

        let mut commute = RelationReport::new("T_a theta_x = theta_x T_a if <x,a^vee> = 0");
        let mut conj = RelationReport::new("theta_x = T_a theta_{x-a} T_a if <x,a^vee> = 1");
        for x in &small {
            for i in 0..n {
                let t = BraidWord::t(i);
                match x.0[i] {
                    0 => {
                        let th = BraidWord::theta(x.clone());
                        commute.record(&self.compare(&t.concat(&th), &th.concat(&t)));
                    }
                    1 => {
                        let shifted = x - &rs.simple_root(i).weight;
                        let rhs = t.concat(&BraidWord::theta(shifted)).concat(&t);
                        conj.record(&self.compare(&BraidWord::theta(x.clone()), &rhs));
                    }
                    _ => {}
                }
            }
        }
        reports.push(commute);
        reports.push(conj);
        reports
    }
}

impl RelationReport {
    fn new(relation: &str) -> Self {
        RelationReport {
            relation: String::from(relation),
            instances_checked: 0,
            failures: 0,
        }
    }

    fn record(&mut self, c: &Comparison) {
        if c.common_domain == 0 {
            return;
        }
        self.instances_checked += 1;
        if c.mismatches > 0 {
            self.failures += 1;
        }
    }
}

fn in_box(rs: &RootSystem, x: &Weight, radius: i64) -> bool {
    rs.positive_roots()
        .iter()
        .all(|r| rs.pairing(x, &r.coroot).abs() <= radius)
}

fn add_term(f: &mut HeckeVector, x: &Weight, c: &Laurent) {
    if c.is_zero() {
        return;
    }
    let e = f.entry(x.clone()).or_default();
    e.add_assign(c);
    if e.is_zero() {
        f.remove(x);
    }
}

/// `T_i(e^λ)`; the division by `1 − e^{−α}` is an exact finite sum.
fn dl_monomial(rs: &RootSystem, i: usize, lam: &Weight) -> HeckeVector {
    let alpha = &rs.simple_root(i).weight;
    let n = lam.0[i];
    let s_lam = lam - &alpha.scale(n);
    let mut out = HeckeVector::new();
    add_term(&mut out, &s_lam, &Laurent::monomial(1, 1));
    let c = Laurent::v_minus_v_inv();
    if n > 0 {
        for k in 0..n {
            add_term(&mut out, &(lam - &alpha.scale(k)), &c);
        }
    } else {
        let minus = c.neg();
        for k in 1..=-n {
            add_term(&mut out, &(lam + &alpha.scale(k)), &minus);
        }
    }
    out
}

/// Which case produced the conjugating word.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConjugationCase {
    /// `b₀ = C(ω⁻¹)` for a nontrivial length-zero `ω` with `ω·s₀·ω⁻¹ = s_β`.
    LengthZero,
    /// `b₀ = C(s_β)·C(s₀)` with `s₀`, `s_β` satisfying a braid relation of
    /// length 3.
    BraidLengthThree,
}

/// `β` and `b₀` with `C(s₀) = b₀·T_β·b₀⁻¹`.
#[derive(Clone, Debug)]
pub struct AffineConjugation {
    /// 0-based finite simple root index.
    pub beta: usize,
    pub b0: BraidWord,
    pub case: ConjugationCase,
}

impl AffineConjugation {
    /// `(C(s₀), b₀·T_β·b₀⁻¹)`
    pub fn sides(&self, g: &AffineWeyl) -> (BraidWord, BraidWord) {
        let lhs = lift_affine_simple(g, 0);
        let rhs = self
            .b0
            .concat(&BraidWord::t(self.beta))
            .concat(&self.b0.inverse());
        (lhs, rhs)
    }
}

pub fn find_affine_conjugation(g: &AffineWeyl) -> Result<AffineConjugation> {
    let rs = g.root_system();
    let s0 = g.affine_simple(0);
    for om in g.omega() {
        if g.length(&om) == 0 && om != g.identity() {
            let conj = g.multiply(&g.multiply(&om, &s0)?, &g.inverse(&om)?)?;
            if let Some(beta) = (0..rs.rank()).find(|&i| g.affine_simple(i + 1) == conj) {
                // C(s_β) = C(ω)·C(s₀)·C(ω)⁻¹, so the conjugator is C(ω⁻¹)
                return Ok(AffineConjugation {
                    beta,
                    b0: canonical_lift(g, &g.inverse(&om)?)?,
                    case: ConjugationCase::LengthZero,
                });
            }
        }
    }
    for beta in 0..rs.rank() {
        let sb = g.affine_simple(beta + 1);
        let prod = g.multiply(&s0, &sb)?;
        let cube = g.multiply(&g.multiply(&prod, &prod)?, &prod)?;
        if cube == g.identity() {
            let b0 = BraidWord::t(beta).concat(&lift_affine_simple(g, 0));
            return Ok(AffineConjugation {
                beta,
                b0,
                case: ConjugationCase::BraidLengthThree,
            });
        }
    }
    Err(Error::Invalid(format!(
        "no conjugating element found for {}",
        rs.type_name()
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn setup(t: &str, r: i64) -> (AffineWeyl, TruncatedHeckeSpace) {
        let rs = RootSystem::build(t).unwrap();
        (
            AffineWeyl::new(rs.clone()),
            TruncatedHeckeSpace::build(rs, r).unwrap(),
        )
    }

    #[test]
    fn laurent_display() {
        assert_eq!(Laurent::v_minus_v_inv().to_string(), "v - v^-1");
        assert_eq!(Laurent::zero().to_string(), "0");
        assert_eq!(Laurent::monomial(0, -3).to_string(), "-3");
    }

    #[test]
    fn lift_of_generators() {
        let (g, _) = setup("A2", 2);
        assert!(canonical_lift(&g, &g.identity()).unwrap().is_empty());
        for i in 0..2 {
            let s = g.affine_simple(i + 1);
            assert_eq!(canonical_lift(&g, &s).unwrap(), BraidWord::t(i));
        }
    }

    #[test]
    fn quadratic_relation_and_inverse() {
        let (_, h) = setup("B2", 3);
        for i in 0..2 {
            let t = BraidWord::t(i);
            let c = h.compare(&t.concat(&t.inverse()), &BraidWord::empty());
            assert!(c.equal());
            assert_eq!(c.common_domain, h.monomials().len());
        }
        assert!(h.apply_word(&BraidWord::empty()).unwrap().len() == h.monomials().len());
    }

    #[test]
    fn relations_hold_in_rank_two() {
        for t in ["A1", "A2", "B2", "G2"] {
            let (_, h) = setup(t, 4);
            for rep in h.verify_relations() {
                assert_eq!(rep.failures, 0, "{t}: {}", rep.relation);
                if t != "A1" || rep.relation != "braid" {
                    assert!(rep.instances_checked > 0, "{t}: {}", rep.relation);
                }
            }
        }
    }

    #[test]
    fn a1_conjugation_relation() {
        let (_, h) = setup("A1", 4);
        let t = BraidWord::t(0);
        let rhs = t.concat(&BraidWord::theta(Weight(vec![-1]))).concat(&t);
        assert!(h.compare(&BraidWord::theta(Weight(vec![1])), &rhs).equal());
    }

    #[test]
    fn lift_of_dominant_translation_is_theta() {
        for t in ["A1", "A2", "B2", "G2"] {
            let (g, h) = setup(t, 4);
            let n = g.root_system().rank();
            for i in 0..n {
                let x = Weight::fundamental(n, i);
                let c = canonical_lift(&g, &g.translation(&x)).unwrap();
                assert!(h.compare(&c, &BraidWord::theta(x)).equal(), "{t}");
            }
        }
    }

    #[test]
    fn affine_conjugation() {
        let (g, h) = setup("A1", 4);
        let c = find_affine_conjugation(&g).unwrap();
        assert_eq!(c.case, ConjugationCase::LengthZero);
        assert_eq!(c.beta, 0);
        assert_eq!(c.b0, canonical_lift(&g, &g.tau0()).unwrap());
        let (l, r) = c.sides(&g);
        assert!(h.compare(&l, &r).equal());
        for t in ["A2", "B2", "G2"] {
            let (g, h) = setup(t, 4);
            let c = find_affine_conjugation(&g).unwrap();
            let expected = if t == "G2" {
                ConjugationCase::BraidLengthThree
            } else {
                ConjugationCase::LengthZero
            };
            assert_eq!(c.case, expected, "{t}");
            let (l, r) = c.sides(&g);
            assert!(h.compare(&l, &r).equal(), "{t}");
        }
    }

    #[test]
    fn small_box_rejected() {
        let rs = RootSystem::build("A1").unwrap();
        assert_eq!(
            TruncatedHeckeSpace::build(rs, 1).unwrap_err(),
            Error::BoxTooSmall(1)
        );
    }
}
