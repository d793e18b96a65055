//! Exact base fields.
//!
//! Every computation in the crate is linear over a prime field or over the
//! rationals. Nothing needs the base field to be algebraically closed: the
//! systems solved here (kernels, images, idempotent lifting, structure
//! constants) are all defined over the prime field, so `Q` and `F_p` are the
//! only fields offered.

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Arithmetic of an exact field. Elements are plain values; the field object
/// carries the context (the modulus, for prime fields).
pub trait Field: Clone + fmt::Debug + PartialEq + Eq {
    type Elem: Clone + fmt::Debug + PartialEq + Eq;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, n: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    /// 0 for the rationals, `p` for `F_p`.
    fn characteristic(&self) -> u64;
    /// Exact text form: integers, `a/b` for rationals.
    fn format(&self, a: &Self::Elem) -> String;
    fn parse(&self, s: &str) -> Option<Self::Elem>;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    /// `acc += a * b`
    fn add_mul_assign(&self, acc: &mut Self::Elem, a: &Self::Elem, b: &Self::Elem) {
        let t = self.mul(a, b);
        *acc = self.add(acc, &t);
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Iterates over all elements when the field is finite.
    fn elements(&self) -> Option<alloc::vec::Vec<Self::Elem>> {
        None
    }

    /// The representative in `0..p` of an element of a prime field.
    fn residue(&self, _a: &Self::Elem) -> Option<u64> {
        None
    }

    /// Distinct roots in the field of `c_0 + c_1 t + … + c_n t^n`.
    fn roots(&self, coeffs: &[Self::Elem]) -> Vec<Self::Elem>;
}

/// The field of rational numbers, with arbitrary-precision elements.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn is_one(&self, a: &BigRational) -> bool {
        a.is_one()
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn format(&self, a: &BigRational) -> String {
        if a.denom().is_one() {
            a.numer().to_string()
        } else {
            alloc::format!("{}/{}", a.numer(), a.denom())
        }
    }
    fn parse(&self, s: &str) -> Option<BigRational> {
        let s = s.trim();
        match s.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().ok()?;
                let d: BigInt = d.trim().parse().ok()?;
                if d.is_zero() {
                    None
                } else {
                    Some(BigRational::new(n, d))
                }
            }
            None => Some(BigRational::from_integer(s.parse().ok()?)),
        }
    }
    fn roots(&self, coeffs: &[BigRational]) -> Vec<BigRational> {
        rational_roots(coeffs)
    }
}

fn eval<F: Field>(f: &F, coeffs: &[F::Elem], x: &F::Elem) -> F::Elem {
    let mut acc = f.zero();
    for c in coeffs.iter().rev() {
        acc = f.mul(&acc, x);
        acc = f.add(&acc, c);
    }
    acc
}

fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs();
    let mut out = Vec::new();
    let mut d = BigInt::one();
    // trial division; coefficients of the polynomials seen here are small
    let limit = BigInt::from(1u64 << 24);
    while &d * &d <= n {
        if d > limit {
            return None;
        }
        if (&n % &d).is_zero() {
            out.push(d.clone());
            out.push(&n / &d);
        }
        d += 1;
    }
    Some(out)
}

/// Rational root theorem on the primitive integer multiple of the polynomial.
fn rational_roots(coeffs: &[BigRational]) -> Vec<BigRational> {
    let q = Rationals;
    let mut c: Vec<BigRational> = coeffs.to_vec();
    while c.last().is_some_and(|x| x.is_zero()) {
        c.pop();
    }
    let mut out = Vec::new();
    if c.len() < 2 {
        return out;
    }
    if c[0].is_zero() {
        out.push(BigRational::zero());
        let k = c.iter().position(|x| !x.is_zero()).unwrap_or(0);
        c.drain(..k);
        if c.len() < 2 {
            return out;
        }
    }
    let lcm = c.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = c
        .iter()
        .map(|x| (x * BigRational::from_integer(lcm.clone())).to_integer())
        .collect();
    let (Some(num), Some(den)) = (divisors(&ints[0]), divisors(&ints[ints.len() - 1])) else {
        return out;
    };
    for a in &num {
        for b in &den {
            for sign in [1, -1] {
                let r = BigRational::new(a * BigInt::from(sign), b.clone());
                if !out.contains(&r) && q.is_zero(&eval(&q, &c, &r)) {
                    out.push(r);
                }
            }
        }
    }
    out
}

/// The prime field `F_p`. The modulus must be a prime below `2^31` so that
/// products fit in a `u64`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, crate::Error> {
        if !(2..(1 << 31)).contains(&p) || !is_prime(p) {
            return Err(crate::Error::InvalidModulus(p));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn from_i64(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            return None;
        }
        // Fermat
        Some(self.pow(a, self.p - 2))
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
    fn format(&self, a: &u64) -> String {
        a.to_string()
    }
    fn parse(&self, s: &str) -> Option<u64> {
        let s = s.trim();
        if let Some((n, d)) = s.split_once('/') {
            let n = self.from_i64(n.trim().parse().ok()?);
            let d = self.from_i64(d.trim().parse().ok()?);
            return self.div(&n, &d);
        }
        let v: BigInt = s.parse().ok()?;
        let m = BigInt::from(self.p);
        ((v % &m + &m) % &m).to_u64()
    }
    fn elements(&self) -> Option<alloc::vec::Vec<u64>> {
        Some((0..self.p).collect())
    }
    fn residue(&self, a: &u64) -> Option<u64> {
        Some(*a)
    }
    fn roots(&self, coeffs: &[u64]) -> Vec<u64> {
        let mut c = coeffs.to_vec();
        trim(&mut c);
        if c.len() < 2 {
            return Vec::new();
        }
        if self.p <= 1 << 16 {
            return (0..self.p).filter(|x| eval(self, &c, x) == 0).collect();
        }
        // split gcd(f, t^p − t), a product of distinct linear factors
        let t = vec![0, 1];
        let tp = poly_powmod(self, &t, self.p, &c);
        let g = poly_gcd(self, &c, &poly_sub(self, &tp, &t));
        let mut out = Vec::new();
        split_linear(self, g, &mut out, 1);
        out.sort_unstable();
        out
    }
}

fn trim(a: &mut Vec<u64>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn poly_sub(f: &PrimeField, a: &[u64], b: &[u64]) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut r: Vec<u64> = (0..n)
        .map(|i| f.sub(a.get(i).unwrap_or(&0), b.get(i).unwrap_or(&0)))
        .collect();
    trim(&mut r);
    r
}

fn poly_mul(f: &PrimeField, a: &[u64], b: &[u64]) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut r = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            f.add_mul_assign(&mut r[i + j], x, y);
        }
    }
    trim(&mut r);
    r
}

fn poly_rem(f: &PrimeField, a: &[u64], m: &[u64]) -> Vec<u64> {
    let mut r = a.to_vec();
    trim(&mut r);
    let lead = f.inv(m.last().expect("nonzero modulus")).expect("unit");
    while r.len() >= m.len() {
        let c = f.mul(r.last().unwrap(), &lead);
        let shift = r.len() - m.len();
        for (i, y) in m.iter().enumerate() {
            let t = f.mul(&c, y);
            r[shift + i] = f.sub(&r[shift + i], &t);
        }
        trim(&mut r);
    }
    r
}

fn poly_gcd(f: &PrimeField, a: &[u64], b: &[u64]) -> Vec<u64> {
    let (mut a, mut b) = (a.to_vec(), b.to_vec());
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let r = poly_rem(f, &a, &b);
        a = b;
        b = r;
    }
    if let Some(l) = a.last() {
        let li = f.inv(l).expect("unit");
        a = a.iter().map(|x| f.mul(x, &li)).collect();
    }
    a
}

fn poly_powmod(f: &PrimeField, base: &[u64], mut e: u64, m: &[u64]) -> Vec<u64> {
    let mut acc = vec![1];
    let mut b = poly_rem(f, base, m);
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_rem(f, &poly_mul(f, &acc, &b), m);
        }
        b = poly_rem(f, &poly_mul(f, &b, &b), m);
        e >>= 1;
    }
    acc
}

/// Equal-degree splitting of a monic product of distinct linear factors.
fn split_linear(f: &PrimeField, g: Vec<u64>, out: &mut Vec<u64>, mut a: u64) {
    match g.len() {
        0 | 1 => {}
        2 => out.push(f.neg(&g[0])),
        _ => loop {
            let h = poly_powmod(f, &[a, 1], (f.p - 1) / 2, &g);
            let d = poly_gcd(f, &g, &poly_sub(f, &h, &[1]));
            a += 1;
            if d.len() > 1 && d.len() < g.len() {
                let mut q = g.clone();
                // exact division g / d
                let mut quot = vec![0; g.len() - d.len() + 1];
                while q.len() >= d.len() {
                    let c = *q.last().unwrap();
                    let shift = q.len() - d.len();
                    quot[shift] = c;
                    for (i, y) in d.iter().enumerate() {
                        let t = f.mul(&c, y);
                        q[shift + i] = f.sub(&q[shift + i], &t);
                    }
                    trim(&mut q);
                }
                split_linear(f, d, out, a);
                split_linear(f, quot, out, a);
                return;
            }
        },
    }
}
