//! The extended affine Weyl group `W ⋉ X`, its dot action at level `p`,
//! lengths, alcove facets, the set `W⁰` and the element `τ₀`.
//!
//! Elements are kept in the normal form `v·t_x` (finite part first). The
//! "translation first" form `t_λ·v` equals `v·t_{v⁻¹λ}` and can be built with
//! [`AffineWeyl::from_translation_first`]. Translations act on weights by
//! `p`-multiples:
//!
//! ```text
//! (v·t_x) ∙ μ = v(μ + p·x + ρ) − ρ
//! ```
//!
//! Affine simple reflections are indexed by `0..=rank`: index `0` is `s₀`,
//! the reflection in the upper wall of the fundamental alcove, and index
//! `k ≥ 1` is the finite simple reflection `s_k` (Bourbaki numbering, stored
//! as `k − 1` in [`RootSystem`]).

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use crate::root_system::{CartanType, RootSystem, Weight, WeylElement};
use crate::{Error, Result};

/// Element `v·t_x` of the extended affine Weyl group.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExtAffineWeylElement {
    system: CartanType,
    finite: WeylElement,
    translation: Weight,
}

impl ExtAffineWeylElement {
    /// The finite part `v`.
    pub fn finite_part(&self) -> &WeylElement {
        &self.finite
    }
    /// The translation `x` of the normal form `v·t_x`.
    pub fn translation(&self) -> &Weight {
        &self.translation
    }
    pub fn system(&self) -> CartanType {
        self.system
    }
}

/// Position of a weight relative to one family of parallel walls
/// `⟨λ + ρ, α∨⟩ ∈ pℤ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WallPosition {
    /// `⟨λ + ρ, α∨⟩ = n·p`
    Wall(i64),
    /// `n·p < ⟨λ + ρ, α∨⟩ < (n + 1)·p`
    Open(i64),
}

/// A facet of the `p`-dilated alcove geometry, recorded root by root in the
/// order of [`RootSystem::positive_roots`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Facet {
    pub p: i64,
    pub positions: Vec<WallPosition>,
}

/// The extended affine Weyl group of one root system.
#[derive(Clone, Debug)]
pub struct AffineWeyl {
    rs: RootSystem,
}

/// Refuses Weyl group enumerations beyond this size.
pub const ENUMERATION_LIMIT: u64 = 100_000;

impl AffineWeyl {
    pub fn new(rs: RootSystem) -> Self {
        AffineWeyl { rs }
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    fn check(&self, a: &ExtAffineWeylElement) -> Result<()> {
        if a.system != self.rs.cartan_type() {
            return Err(Error::SystemMismatch);
        }
        Ok(())
    }

    fn check_p(&self, p: i64) -> Result<()> {
        let h = self.rs.coxeter_number();
        if p <= h {
            return Err(Error::PrimeTooSmall { p, h });
        }
        Ok(())
    }

    /// `v·t_x`
    pub fn element(&self, v: WeylElement, x: Weight) -> ExtAffineWeylElement {
        ExtAffineWeylElement {
            system: self.rs.cartan_type(),
            finite: v,
            translation: x,
        }
    }

    /// `t_λ·v`
    pub fn from_translation_first(&self, lam: &Weight, v: WeylElement) -> ExtAffineWeylElement {
        let x = self.rs.inverse(&v).act(lam);
        self.element(v, x)
    }

    /// `(λ, v)` with `w = t_λ·v`.
    pub fn translation_first(&self, w: &ExtAffineWeylElement) -> (Weight, WeylElement) {
        (w.finite.act(&w.translation), w.finite.clone())
    }

    pub fn identity(&self) -> ExtAffineWeylElement {
        self.element(self.rs.identity(), Weight::zero(self.rs.rank()))
    }

    pub fn translation(&self, x: &Weight) -> ExtAffineWeylElement {
        self.element(self.rs.identity(), x.clone())
    }

    pub fn finite(&self, v: &WeylElement) -> ExtAffineWeylElement {
        self.element(v.clone(), Weight::zero(self.rs.rank()))
    }

    /// `(v·t_x)(u·t_y) = vu·t_{u⁻¹x + y}`
    pub fn multiply(
        &self,
        a: &ExtAffineWeylElement,
        b: &ExtAffineWeylElement,
    ) -> Result<ExtAffineWeylElement> {
        self.check(a)?;
        self.check(b)?;
        let u_inv = self.rs.inverse(&b.finite);
        let x = &u_inv.act(&a.translation) + &b.translation;
        Ok(self.element(self.rs.multiply(&a.finite, &b.finite), x))
    }

    /// `(v·t_x)⁻¹ = v⁻¹·t_{−v(x)}`
    pub fn inverse(&self, a: &ExtAffineWeylElement) -> Result<ExtAffineWeylElement> {
        self.check(a)?;
        let x = -&a.finite.act(&a.translation);
        Ok(self.element(self.rs.inverse(&a.finite), x))
    }

    /// `w ∙ λ` at level `p`.
    pub fn dot_action(&self, w: &ExtAffineWeylElement, lam: &Weight, p: i64) -> Result<Weight> {
        self.check(w)?;
        self.check_p(p)?;
        Ok(self.dot_unchecked(w, lam, p))
    }

    fn dot_unchecked(&self, w: &ExtAffineWeylElement, lam: &Weight, p: i64) -> Weight {
        let rho = self.rs.rho();
        let shifted = &(&(lam + &w.translation.scale(p)) + &rho);
        &w.finite.act(shifted) - &rho
    }

    /// Length via the inversion formula
    /// `Σ_{α>0, vα>0} |⟨x,α∨⟩| + Σ_{α>0, vα<0} |1 + ⟨x,α∨⟩|`.
    pub fn length(&self, w: &ExtAffineWeylElement) -> usize {
        let mut total = 0i64;
        for (k, root) in self.rs.positive_roots().iter().enumerate() {
            let c = self.rs.pairing(&w.translation, &root.coroot);
            total += if self.rs.maps_positive(&w.finite, k) {
                c.abs()
            } else {
                (1 + c).abs()
            };
        }
        total as usize
    }

    /// `τ₀ = t_ρ·w₀`
    pub fn tau0(&self) -> ExtAffineWeylElement {
        self.from_translation_first(&self.rs.rho(), self.rs.w0().clone())
    }

    /// `Σ_{α>0} (⟨ρ, α∨⟩ − 1)`, the closed form for `ℓ(τ₀)`.
    pub fn tau0_length_closed_form(&self) -> usize {
        let rho = self.rs.rho();
        self.rs
            .positive_roots()
            .iter()
            .map(|r| (self.rs.pairing(&rho, &r.coroot) - 1) as usize)
            .sum()
    }

    /// The element of `W⁰` with finite part `v`: `t_λ·v` with
    /// `⟨λ, α∨⟩ = 1` exactly for the simple `α` with `v⁻¹α < 0`.
    pub fn w0_element_for(&self, v: &WeylElement) -> ExtAffineWeylElement {
        let v_inv = self.rs.inverse(v);
        let n = self.rs.rank();
        let lam = Weight(
            (0..n)
                .map(|i| i64::from(!self.rs.maps_positive(&v_inv, i)))
                .collect(),
        );
        self.from_translation_first(&lam, v.clone())
    }

    /// All of `W⁰`, one element per `v ∈ W`, in the order of
    /// [`RootSystem::enumerate_weyl`].
    pub fn enumerate_w0(&self) -> Result<Vec<ExtAffineWeylElement>> {
        Ok(self
            .rs
            .enumerate_weyl(ENUMERATION_LIMIT)?
            .iter()
            .map(|v| self.w0_element_for(v))
            .collect())
    }

    pub fn is_in_w0(&self, w: &ExtAffineWeylElement) -> bool {
        w.system == self.rs.cartan_type() && self.w0_element_for(&w.finite) == *w
    }

    /// `0 < ⟨λ + ρ, α∨⟩ < p` for all positive `α`.
    pub fn in_c0(&self, lam: &Weight, p: i64) -> Result<bool> {
        self.check_p(p)?;
        let shifted = lam + &self.rs.rho();
        Ok(self.rs.positive_roots().iter().all(|r| {
            let c = self.rs.pairing(&shifted, &r.coroot);
            0 < c && c < p
        }))
    }

    /// `0 ≤ ⟨λ + ρ, α∨⟩ ≤ p` for all positive `α`.
    pub fn in_c0_closure(&self, lam: &Weight, p: i64) -> Result<bool> {
        self.check_p(p)?;
        let shifted = lam + &self.rs.rho();
        Ok(self.rs.positive_roots().iter().all(|r| {
            let c = self.rs.pairing(&shifted, &r.coroot);
            0 <= c && c <= p
        }))
    }

    /// `⟨λ + ρ, α∨⟩ ∉ pℤ` for all positive `α`.
    pub fn is_regular(&self, lam: &Weight, p: i64) -> Result<bool> {
        Ok(self.singular_walls(lam, p)?.is_empty())
    }

    /// `0 ≤ ⟨λ, α∨⟩ ≤ p − 1` for every simple `α`.
    pub fn is_restricted_dominant(&self, lam: &Weight, p: i64) -> Result<bool> {
        self.check_p(p)?;
        Ok(lam.coords().iter().all(|&c| 0 <= c && c < p))
    }

    pub fn facet_of(&self, lam: &Weight, p: i64) -> Result<Facet> {
        self.check_p(p)?;
        let shifted = lam + &self.rs.rho();
        let positions = self
            .rs
            .positive_roots()
            .iter()
            .map(|r| {
                let c = self.rs.pairing(&shifted, &r.coroot);
                if c.rem_euclid(p) == 0 {
                    WallPosition::Wall(c.div_euclid(p))
                } else {
                    WallPosition::Open(c.div_euclid(p))
                }
            })
            .collect();
        Ok(Facet { p, positions })
    }

    /// Walls of the facet must match exactly; an open interval
    /// `(n·p, (n+1)·p)` may be left only through its upper end.
    pub fn upper_closure_contains(&self, f: &Facet, mu: &Weight) -> bool {
        let p = f.p;
        let shifted = mu + &self.rs.rho();
        self.rs
            .positive_roots()
            .iter()
            .zip(&f.positions)
            .all(|(r, pos)| {
                let c = self.rs.pairing(&shifted, &r.coroot);
                match *pos {
                    WallPosition::Wall(n) => c == n * p,
                    WallPosition::Open(n) => n * p < c && c <= (n + 1) * p,
                }
            })
    }

    /// `w ∙ μ₀` when it lies in the upper closure of `w ∙ C₀`.
    pub fn translate_simple(
        &self,
        w: &ExtAffineWeylElement,
        mu0: &Weight,
        p: i64,
    ) -> Result<Option<Weight>> {
        self.check(w)?;
        if !self.in_c0_closure(mu0, p)? {
            return Err(Error::NotInClosure);
        }
        if !self.is_in_w0(w) {
            return Err(Error::NotInW0);
        }
        let zero = Weight::zero(self.rs.rank());
        let facet = self.facet_of(&self.dot_unchecked(w, &zero, p), p)?;
        let image = self.dot_unchecked(w, mu0, p);
        Ok(self.upper_closure_contains(&facet, &image).then_some(image))
    }

    /// All `(positive root index, n)` with `⟨μ + ρ, α∨⟩ = n·p`.
    pub fn singular_walls(&self, mu: &Weight, p: i64) -> Result<Vec<(usize, i64)>> {
        self.check_p(p)?;
        let shifted = mu + &self.rs.rho();
        Ok(self
            .rs
            .positive_roots()
            .iter()
            .enumerate()
            .filter_map(|(k, r)| {
                let c = self.rs.pairing(&shifted, &r.coroot);
                (c.rem_euclid(p) == 0).then_some((k, c.div_euclid(p)))
            })
            .collect())
    }

    /// Whether the walls through `μ` are exactly `{(α, 0) : α ∈ R⁺_I}` for the
    /// parabolic subsystem spanned by the simple roots `I` (0-based).
    pub fn is_parabolic_singularity(&self, mu: &Weight, simple: &[usize], p: i64) -> Result<bool> {
        let walls: BTreeSet<(usize, i64)> = self.singular_walls(mu, p)?.into_iter().collect();
        let inside: BTreeSet<usize> = simple.iter().copied().collect();
        let expected: BTreeSet<(usize, i64)> = self
            .rs
            .positive_roots()
            .iter()
            .enumerate()
            .filter(|(_, r)| {
                r.coeffs
                    .iter()
                    .enumerate()
                    .all(|(i, &c)| c == 0 || inside.contains(&i))
            })
            .map(|(k, _)| (k, 0))
            .collect();
        Ok(walls == expected)
    }

    /// `{w ∈ W⁰ : w ∙ μ₀ in the upper closure of w ∙ C₀}`
    pub fn w0_mu(&self, mu0: &Weight, p: i64) -> Result<Vec<ExtAffineWeylElement>> {
        let mut out = Vec::new();
        for w in self.enumerate_w0()? {
            if self.translate_simple(&w, mu0, p)?.is_some() {
                out.push(w);
            }
        }
        Ok(out)
    }

    /// Affine simple reflection `s_k`, `k ∈ 0..=rank`.
    pub fn affine_simple(&self, k: usize) -> ExtAffineWeylElement {
        if k == 0 {
            // reflection in ⟨μ + ρ, α∨⟩ = p for the highest coroot: s_α·t_{−α}
            let (idx, root) = self
                .rs
                .positive_roots()
                .iter()
                .enumerate()
                .max_by_key(|(_, r)| r.coroot.0.iter().sum::<i64>())
                .expect("nonempty");
            self.element(self.rs.reflection(idx), -&root.weight)
        } else {
            self.finite(&self.rs.simple_reflection(k - 1))
        }
    }

    /// The length-zero subgroup `Ω`. Candidates are `t_λ·v` with `λ` zero
    /// or a fundamental weight and `v` the unique element that could send
    /// `C₀` back to itself.
    pub fn omega(&self) -> Vec<ExtAffineWeylElement> {
        let n = self.rs.rank();
        let big = self.rs.coxeter_number() + 1;
        let mut out = vec![self.identity()];
        for i in 0..n {
            let lam = Weight::fundamental(n, i);
            let psi = &self.rs.rho() - &lam.scale(big);
            let (_, to_dom) = self.rs.to_dominant(&psi);
            let v = self.rs.inverse(&to_dom);
            let w = self.from_translation_first(&lam, v);
            if self.length(&w) == 0 {
                out.push(w);
            }
        }
        out
    }

    /// `w = ω·s_{i₁}⋯s_{i_k}` with `k = ℓ(w)` and `ℓ(ω) = 0`.
    pub fn reduced_decomposition(
        &self,
        w: &ExtAffineWeylElement,
    ) -> Result<(ExtAffineWeylElement, Vec<usize>)> {
        self.check(w)?;
        let simples: Vec<ExtAffineWeylElement> = (0..=self.rs.rank())
            .map(|k| self.affine_simple(k))
            .collect();
        let mut cur = w.clone();
        let mut len = self.length(&cur);
        let mut word = Vec::with_capacity(len);
        while len > 0 {
            let (k, next) = simples
                .iter()
                .enumerate()
                .map(|(k, s)| (k, self.multiply(&cur, s).expect("same system")))
                .find(|(_, next)| self.length(next) < len)
                .expect("a non-identity element of positive length has a right descent");
            cur = next;
            len -= 1;
            word.push(k);
        }
        word.reverse();
        Ok((cur, word))
    }

    /// `ω·s_{i₁}⋯s_{i_k}`
    pub fn compose(
        &self,
        omega: &ExtAffineWeylElement,
        word: &[usize],
    ) -> Result<ExtAffineWeylElement> {
        let mut acc = omega.clone();
        for &k in word {
            if k > self.rs.rank() {
                return Err(Error::Invalid(alloc::format!(
                    "affine simple index {k} out of range"
                )));
            }
            acc = self.multiply(&acc, &self.affine_simple(k))?;
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn aw(t: &str) -> AffineWeyl {
        AffineWeyl::new(RootSystem::build(t).unwrap())
    }

    fn w(v: &[i64]) -> Weight {
        Weight(v.to_vec())
    }

    /// Hyperplanes `⟨x, α∨⟩ ∈ pℤ` crossed between an interior point of `C₀`
    /// and its image, computed on `ρ`-shifted coordinates scaled by `h`.
    fn crossed_hyperplanes(g: &AffineWeyl, e: &ExtAffineWeylElement, p: i64) -> usize {
        let rs = g.root_system();
        let h = rs.coxeter_number();
        let start = rs.rho().scale(p);
        let image = e
            .finite_part()
            .act(&(&start + &e.translation().scale(h * p)));
        let step = h * p;
        rs.positive_roots()
            .iter()
            .map(|r| {
                let a = rs.pairing(&start, &r.coroot);
                let b = rs.pairing(&image, &r.coroot);
                let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                (hi.div_euclid(step) - lo.div_euclid(step)) as usize
            })
            .sum()
    }

    #[test]
    fn group_laws() {
        let g = aw("A1");
        let s = g.finite(&g.root_system().simple_reflection(0));
        let a = g.multiply(&s, &g.translation(&w(&[1]))).unwrap();
        let inv = g.inverse(&a).unwrap();
        assert_eq!(g.multiply(&a, &inv).unwrap(), g.identity());
        let tx = g.translation(&w(&[2]));
        let ty = g.translation(&w(&[-5]));
        assert_eq!(g.multiply(&tx, &ty).unwrap(), g.translation(&w(&[-3])));
        let other = aw("A2");
        assert_eq!(other.multiply(&a, &a), Err(Error::SystemMismatch));
    }

    #[test]
    fn square_matches_composed_affine_maps() {
        let g = aw("A1");
        let s = g.root_system().simple_reflection(0);
        let a = g.element(s, w(&[1]));
        let sq = g.multiply(&a, &a).unwrap();
        for p in [3, 5, 7] {
            for m in -6..6 {
                let lam = w(&[m]);
                let twice = g
                    .dot_action(&a, &g.dot_action(&a, &lam, p).unwrap(), p)
                    .unwrap();
                assert_eq!(g.dot_action(&sq, &lam, p).unwrap(), twice);
            }
        }
    }

    #[test]
    fn dot_action_examples() {
        let g = aw("A1");
        let s = g.root_system().simple_reflection(0);
        assert_eq!(g.dot_action(&g.identity(), &w(&[4]), 3).unwrap(), w(&[4]));
        assert_eq!(g.dot_action(&g.finite(&s), &w(&[0]), 3).unwrap(), w(&[-2]));
        let ts = g.from_translation_first(&w(&[1]), s);
        assert_eq!(g.dot_action(&ts, &w(&[0]), 3).unwrap(), w(&[1]));
        assert!(matches!(
            g.dot_action(&ts, &w(&[0]), 2),
            Err(Error::PrimeTooSmall { .. })
        ));
    }

    #[test]
    fn length_examples() {
        let g = aw("A1");
        assert_eq!(g.length(&g.identity()), 0);
        assert_eq!(g.length(&g.translation(&w(&[1]))), 1);
        assert_eq!(g.length(&g.tau0()), 0);
        let a2 = aw("A2");
        assert_eq!(a2.length(&a2.tau0()), 1);
        assert_eq!(a2.tau0_length_closed_form(), 1);
        assert_eq!(a2.length(&a2.translation(&w(&[2, 1]))), 2 + 1 + 3);
    }

    #[test]
    fn length_counts_crossed_hyperplanes() {
        for t in ["A1", "A2", "B2", "G2"] {
            let g = aw(t);
            let rs = g.root_system().clone();
            let n = rs.rank();
            for v in rs.enumerate_weyl(100).unwrap() {
                for a in -2..=2 {
                    for b in -2..=2 {
                        let mut x = vec![a; n];
                        x[n - 1] = b;
                        let e = g.element(v.clone(), Weight(x));
                        let p = rs.coxeter_number() + 1;
                        assert_eq!(g.length(&e), crossed_hyperplanes(&g, &e, p), "{t}");
                    }
                }
            }
        }
    }

    #[test]
    fn alcove_predicates() {
        let g = aw("A1");
        assert!(g.in_c0(&w(&[0]), 3).unwrap());
        assert!(!g.is_regular(&w(&[-1]), 3).unwrap());
        assert!(g.is_restricted_dominant(&w(&[2]), 3).unwrap());
        assert!(!g.is_restricted_dominant(&w(&[3]), 3).unwrap());
        for t in ["A2", "B3", "G2", "F4"] {
            let g = aw(t);
            let h = g.root_system().coxeter_number();
            let zero = Weight::zero(g.root_system().rank());
            for p in [h + 1, h + 2, 2 * h + 1] {
                assert!(g.in_c0(&zero, p).unwrap());
            }
        }
    }

    #[test]
    fn w0_in_a1() {
        let g = aw("A1");
        let set = g.enumerate_w0().unwrap();
        let s = g.root_system().simple_reflection(0);
        assert_eq!(set.len(), 2);
        assert!(set.contains(&g.identity()));
        assert!(set.contains(&g.from_translation_first(&w(&[1]), s)));
        assert_eq!(
            g.tau0(),
            g.from_translation_first(&w(&[1]), g.root_system().simple_reflection(0))
        );
    }

    #[test]
    fn w0_elements_land_on_restricted_weights() {
        for t in ["A1", "A2", "B2", "G2", "A3", "C3"] {
            let g = aw(t);
            let h = g.root_system().coxeter_number();
            let set = g.enumerate_w0().unwrap();
            assert_eq!(set.len() as u64, g.root_system().weyl_order());
            let zero = Weight::zero(g.root_system().rank());
            for e in &set {
                for p in [h + 1, h + 2, 2 * h + 1] {
                    let mu = g.dot_action(e, &zero, p).unwrap();
                    assert!(g.is_restricted_dominant(&mu, p).unwrap(), "{t} {mu}");
                }
            }
        }
    }

    #[test]
    fn tau0_law() {
        for t in ["A1", "A2", "B2", "G2"] {
            let g = aw(t);
            let tau = g.tau0();
            assert_eq!(g.multiply(&tau, &tau).unwrap(), g.identity());
            assert!(g.is_in_w0(&tau));
            assert_eq!(g.length(&tau), g.tau0_length_closed_form());
            for e in g.enumerate_w0().unwrap() {
                let te = g.multiply(&tau, &e).unwrap();
                assert!(g.is_in_w0(&te), "{t}");
                assert_eq!(g.length(&te) + g.length(&e), g.length(&tau), "{t}");
            }
        }
    }

    #[test]
    fn upper_closure_a1() {
        let g = aw("A1");
        let f = g.facet_of(&w(&[0]), 3).unwrap();
        assert_eq!(f.positions, vec![WallPosition::Open(0)]);
        assert!(g.upper_closure_contains(&f, &w(&[0])));
        assert!(g.upper_closure_contains(&f, &w(&[2])));
        assert!(!g.upper_closure_contains(&f, &w(&[-1])));
        let s = g.finite(&g.root_system().simple_reflection(0));
        let rho = g.root_system().rho();
        for e in [g.identity(), s.clone()] {
            let fe = g
                .facet_of(&g.dot_action(&e, &w(&[0]), 3).unwrap(), 3)
                .unwrap();
            assert_eq!(g.upper_closure_contains(&fe, &(-&rho)), e == s);
        }
    }

    #[test]
    fn translation_to_minus_rho() {
        for t in ["A1", "A2", "B2", "G2"] {
            let g = aw(t);
            let rs = g.root_system();
            let p = rs.coxeter_number() + 1;
            let rho = rs.rho();
            let minus_rho = -&rho;
            let tau = g.tau0();
            for e in g.enumerate_w0().unwrap() {
                let out = g.translate_simple(&e, &minus_rho, p).unwrap();
                if e == tau {
                    assert_eq!(out, Some(rho.scale(p - 1)));
                } else {
                    assert_eq!(out, None, "{t}");
                }
            }
            assert_eq!(g.w0_mu(&minus_rho, p).unwrap(), vec![tau]);
            let zero = Weight::zero(rs.rank());
            assert_eq!(g.w0_mu(&zero, p).unwrap().len() as u64, rs.weyl_order());
        }
        let g = aw("A1");
        assert_eq!(
            g.translate_simple(&g.identity(), &w(&[-1]), 3).unwrap(),
            None
        );
        assert_eq!(g.w0_mu(&w(&[1]), 3).unwrap().len(), 2);
        assert_eq!(g.w0_mu(&w(&[2]), 3).unwrap(), vec![g.identity()]);
        assert_eq!(
            g.translate_simple(&g.identity(), &w(&[5]), 3),
            Err(Error::NotInClosure)
        );
        let not_w0 = g.translation(&w(&[4]));
        assert_eq!(
            g.translate_simple(&not_w0, &w(&[0]), 3),
            Err(Error::NotInW0)
        );
    }

    #[test]
    fn walls() {
        let g = aw("A2");
        assert!(g.singular_walls(&w(&[0, 0]), 5).unwrap().is_empty());
        let all = g.singular_walls(&w(&[-1, -1]), 5).unwrap();
        assert_eq!(all, vec![(0, 0), (1, 0), (2, 0)]);
        assert!(g
            .is_parabolic_singularity(&w(&[-1, -1]), &[0, 1], 5)
            .unwrap());
        // ⟨μ+ρ, α∨⟩ = (0, 3)
        let mu = w(&[-1, 2]);
        assert_eq!(g.singular_walls(&mu, 5).unwrap(), vec![(0, 0)]);
        assert!(g.is_parabolic_singularity(&mu, &[0], 5).unwrap());
        assert!(!g.is_parabolic_singularity(&mu, &[1], 5).unwrap());
        let s1 = g.finite(&g.root_system().simple_reflection(0));
        assert_eq!(g.dot_action(&s1, &mu, 5).unwrap(), mu);
    }

    #[test]
    fn omega_has_determinant_order() {
        for (t, det) in [
            ("A1", 2),
            ("A2", 3),
            ("A4", 5),
            ("B3", 2),
            ("C3", 2),
            ("D4", 4),
            ("D5", 4),
            ("E6", 3),
            ("E7", 2),
            ("E8", 1),
            ("F4", 1),
            ("G2", 1),
        ] {
            let g = aw(t);
            let om = g.omega();
            assert_eq!(om.len(), det, "{t}");
            for a in &om {
                assert_eq!(g.length(a), 0);
                for b in &om {
                    assert!(om.contains(&g.multiply(a, b).unwrap()));
                }
            }
        }
    }

    #[test]
    fn reduced_decompositions() {
        let g = aw("A1");
        let (om, word) = g.reduced_decomposition(&g.tau0()).unwrap();
        assert_eq!((om, word.len()), (g.tau0(), 0));
        let alpha = g.root_system().simple_root(0).weight.clone();
        let (om, word) = g.reduced_decomposition(&g.translation(&alpha)).unwrap();
        assert_eq!(word.len(), 2);
        assert_eq!(g.compose(&om, &word).unwrap(), g.translation(&alpha));

        for t in ["A2", "B2", "G2"] {
            let g = aw(t);
            let rs = g.root_system().clone();
            for v in rs.enumerate_weyl(100).unwrap() {
                for a in -1..=1 {
                    for b in -1..=1 {
                        let e = g.element(v.clone(), w(&[a, b]));
                        let (om, word) = g.reduced_decomposition(&e).unwrap();
                        assert_eq!(g.length(&om), 0);
                        assert_eq!(word.len(), g.length(&e));
                        let mut acc = om.clone();
                        for (k, &i) in word.iter().enumerate() {
                            acc = g.multiply(&acc, &g.affine_simple(i)).unwrap();
                            assert_eq!(g.length(&acc), k + 1);
                        }
                        assert_eq!(acc, e);
                    }
                }
            }
        }
    }

    #[test]
    fn affine_simple_reflections_are_involutions() {
        for t in ["A2", "C3", "G2", "F4"] {
            let g = aw(t);
            for k in 0..=g.root_system().rank() {
                let s = g.affine_simple(k);
                assert_eq!(g.length(&s), 1, "{t} {k}");
                assert_eq!(g.multiply(&s, &s).unwrap(), g.identity());
            }
        }
    }
}
