//! Exact arithmetic in cyclotomic integers `Z[ζ_e]`.
//!
//! A value is an integer polynomial in `ζ_e` reduced modulo the cyclotomic
//! polynomial `Φ_e`. That remainder is unique, so equality is structural. The
//! coefficient vector always has length `e`; entries at degree `φ(e)` and above
//! are zero.

use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::rc::Rc;

use crate::group::{gcd, lcm};

thread_local! {
    static PHI: RefCell<HashMap<usize, Rc<Vec<i64>>>> = RefCell::new(HashMap::new());
}

/// Coefficients of `Φ_e`, lowest degree first.
pub fn cyclotomic_polynomial(e: usize) -> Rc<Vec<i64>> {
    if let Some(p) = PHI.with(|c| c.borrow().get(&e).cloned()) {
        return p;
    }
    // x^e - 1 divided by Φ_d for every proper divisor d.
    let mut poly = vec![0i64; e + 1];
    poly[0] = -1;
    poly[e] = 1;
    for d in (1..e).filter(|d| e.is_multiple_of(*d)) {
        poly = divide_monic(&poly, &cyclotomic_polynomial(d));
    }
    let poly = Rc::new(poly);
    PHI.with(|c| c.borrow_mut().insert(e, poly.clone()));
    poly
}

/// Exact quotient of `num` by a monic divisor.
fn divide_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let qd = rem.len() - 1 - dd;
    let mut quot = vec![0i64; qd + 1];
    for i in (0..=qd).rev() {
        let t = rem[i + dd];
        quot[i] = t;
        if t != 0 {
            for (j, &c) in den.iter().enumerate() {
                rem[i + j] -= t * c;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0), "division by Φ_d was not exact");
    quot
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cyclotomic {
    modulus: usize,
    coeffs: Vec<i64>,
}

impl Cyclotomic {
    /// `Σ coeffs[j]·ζ_e^j`, with exponents taken mod `e`.
    pub fn from_coeffs(modulus: usize, coeffs: &[i64]) -> Self {
        assert!(modulus > 0, "modulus must be positive");
        let mut folded = vec![0i64; modulus];
        for (j, &c) in coeffs.iter().enumerate() {
            folded[j % modulus] += c;
        }
        let mut value = Cyclotomic { modulus, coeffs: folded };
        value.reduce();
        value
    }

    pub fn zero(modulus: usize) -> Self {
        Cyclotomic { modulus, coeffs: vec![0; modulus] }
    }

    pub fn integer(modulus: usize, n: i64) -> Self {
        let mut v = Self::zero(modulus);
        v.coeffs[0] = n;
        v
    }

    pub fn one(modulus: usize) -> Self {
        Self::integer(modulus, 1)
    }

    /// `ζ_e^j`
    pub fn root_of_unity(modulus: usize, j: usize) -> Self {
        let mut coeffs = vec![0i64; modulus];
        coeffs[j % modulus] = 1;
        Self::from_coeffs(modulus, &coeffs)
    }

    pub fn modulus(&self) -> usize {
        self.modulus
    }

    /// Canonical coefficients on `1, ζ, …, ζ^{e-1}`.
    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    fn reduce(&mut self) {
        let phi = cyclotomic_polynomial(self.modulus);
        let deg = phi.len() - 1;
        for i in (deg..self.modulus).rev() {
            let t = self.coeffs[i];
            if t != 0 {
                for (j, &c) in phi.iter().enumerate() {
                    self.coeffs[i - deg + j] -= t * c;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// The value as an ordinary integer, if it is one.
    pub fn as_integer(&self) -> Option<i64> {
        self.coeffs[1..].iter().all(|&c| c == 0).then_some(self.coeffs[0])
    }

    pub fn is_integer(&self, n: i64) -> bool {
        self.as_integer() == Some(n)
    }

    /// Rewrites the value over `ζ_m` for a multiple `m` of the modulus.
    pub fn embed(&self, modulus: usize) -> Self {
        assert!(modulus.is_multiple_of(self.modulus), "{modulus} is not a multiple of {}", self.modulus);
        if modulus == self.modulus {
            return self.clone();
        }
        let step = modulus / self.modulus;
        let mut coeffs = vec![0i64; modulus];
        for (j, &c) in self.coeffs.iter().enumerate() {
            coeffs[j * step] = c;
        }
        Self::from_coeffs(modulus, &coeffs)
    }

    /// Applies `ζ ↦ ζ^k` for `k` coprime to the modulus.
    pub fn galois(&self, k: usize) -> Self {
        debug_assert_eq!(gcd(k % self.modulus, self.modulus), 1);
        let mut coeffs = vec![0i64; self.modulus];
        for (j, &c) in self.coeffs.iter().enumerate() {
            coeffs[(j * k) % self.modulus] += c;
        }
        Self::from_coeffs(self.modulus, &coeffs)
    }

    /// Complex conjugate.
    pub fn conj(&self) -> Self {
        self.galois(self.modulus - 1)
    }

    pub fn scale(&self, k: i64) -> Self {
        Cyclotomic { modulus: self.modulus, coeffs: self.coeffs.iter().map(|&c| c * k).collect() }
    }

    /// Content: gcd of all coefficients (0 for zero).
    pub fn content(&self) -> i64 {
        self.coeffs.iter().fold(0i64, |acc, &c| gcd(acc.unsigned_abs() as usize, c.unsigned_abs() as usize) as i64)
    }

    /// Exact division by an integer that divides every coefficient.
    pub fn div_exact(&self, k: i64) -> Self {
        assert!(k != 0 && self.coeffs.iter().all(|&c| c % k == 0), "inexact division by {k}");
        Cyclotomic { modulus: self.modulus, coeffs: self.coeffs.iter().map(|&c| c / k).collect() }
    }

    /// Image in `F_p` under `ζ_e ↦ z`, where `z` has multiplicative order `e`.
    pub fn to_mod_p(&self, p: u64, z: u64) -> u64 {
        let mut acc = 0u64;
        let mut power = 1u64;
        for &c in &self.coeffs {
            let c = c.rem_euclid(p as i64) as u64;
            acc = (acc + c * power) % p;
            power = power * z % p;
        }
        acc
    }

    /// Adds `k·a·b` to `acc`, a coefficient vector modulo `x^e - 1` that the
    /// caller reduces once with [`Cyclotomic::from_coeffs`].
    pub(crate) fn mul_acc(acc: &mut [i64], a: &Self, b: &Self, k: i64) {
        let e = acc.len();
        debug_assert!(a.modulus == e && b.modulus == e);
        for (i, &x) in a.coeffs.iter().enumerate().filter(|(_, &x)| x != 0) {
            for (j, &y) in b.coeffs.iter().enumerate().filter(|(_, &y)| y != 0) {
                acc[(i + j) % e] += k * x * y;
            }
        }
    }

    fn lifted(a: &Self, b: &Self) -> (Self, Self) {
        let m = lcm(a.modulus, b.modulus);
        (a.embed(m), b.embed(m))
    }
}

impl Add for &Cyclotomic {
    type Output = Cyclotomic;

    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        let (a, b) = Cyclotomic::lifted(self, rhs);
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect();
        Cyclotomic { modulus: a.modulus, coeffs }
    }
}

impl Sub for &Cyclotomic {
    type Output = Cyclotomic;

    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        self + &(-rhs)
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;

    fn neg(self) -> Cyclotomic {
        self.scale(-1)
    }
}

impl Mul for &Cyclotomic {
    type Output = Cyclotomic;

    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        let (a, b) = Cyclotomic::lifted(self, rhs);
        let e = a.modulus;
        let mut coeffs = vec![0i64; e];
        for (i, &x) in a.coeffs.iter().enumerate().filter(|(_, &x)| x != 0) {
            for (j, &y) in b.coeffs.iter().enumerate().filter(|(_, &y)| y != 0) {
                coeffs[(i + j) % e] += x * y;
            }
        }
        let mut out = Cyclotomic { modulus: e, coeffs };
        out.reduce();
        out
    }
}

impl fmt::Display for Cyclotomic {
    /// Integers print as integers; anything else as a sum of `c*E(e)^j` terms.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(n) = self.as_integer() {
            return write!(f, "{n}");
        }
        let mut first = true;
        for (j, &c) in self.coeffs.iter().enumerate().filter(|(_, &c)| c != 0) {
            let term = match (j, c.abs()) {
                (0, a) => a.to_string(),
                (1, 1) => format!("E({})", self.modulus),
                (_, 1) => format!("E({})^{j}", self.modulus),
                (1, a) => format!("{a}*E({})", self.modulus),
                (_, a) => format!("{a}*E({})^{j}", self.modulus),
            };
            match (first, c < 0) {
                (true, true) => write!(f, "-{term}")?,
                (true, false) => write!(f, "{term}")?,
                (false, true) => write!(f, " - {term}")?,
                (false, false) => write!(f, " + {term}")?,
            }
            first = false;
        }
        Ok(())
    }
}

/// A cyclotomic integer divided by a positive integer, kept in lowest terms.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CyclotomicFraction {
    num: Cyclotomic,
    den: i64,
}

impl CyclotomicFraction {
    pub fn new(num: Cyclotomic, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        let (num, den) = if den < 0 { (-&num, -den) } else { (num, den) };
        let g = gcd(num.content().unsigned_abs() as usize, den as usize) as i64;
        let g = if num.is_zero() { den } else { g };
        CyclotomicFraction { num: num.div_exact(g), den: den / g }
    }

    pub fn zero(modulus: usize) -> Self {
        CyclotomicFraction { num: Cyclotomic::zero(modulus), den: 1 }
    }

    pub fn numerator(&self) -> &Cyclotomic {
        &self.num
    }

    pub fn denominator(&self) -> i64 {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn scale(&self, k: i64) -> Self {
        CyclotomicFraction::new(self.num.scale(k), self.den)
    }
}

impl Add for &CyclotomicFraction {
    type Output = CyclotomicFraction;

    fn add(self, rhs: &CyclotomicFraction) -> CyclotomicFraction {
        let den = lcm(self.den as usize, rhs.den as usize) as i64;
        let num = &self.num.scale(den / self.den) + &rhs.num.scale(den / rhs.den);
        CyclotomicFraction::new(num, den)
    }
}

impl Sub for &CyclotomicFraction {
    type Output = CyclotomicFraction;

    fn sub(self, rhs: &CyclotomicFraction) -> CyclotomicFraction {
        self + &CyclotomicFraction { num: -&rhs.num, den: rhs.den }
    }
}

impl Mul for &CyclotomicFraction {
    type Output = CyclotomicFraction;

    fn mul(self, rhs: &CyclotomicFraction) -> CyclotomicFraction {
        CyclotomicFraction::new(&self.num * &rhs.num, self.den * rhs.den)
    }
}

impl fmt::Display for CyclotomicFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.den, self.num.as_integer()) {
            (1, _) => write!(f, "{}", self.num),
            (d, Some(_)) => write!(f, "{}/{d}", self.num),
            (d, None) => write!(f, "({})/{d}", self.num),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(*cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(*cyclotomic_polynomial(2), vec![1, 1]);
        assert_eq!(*cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(*cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(*cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn roots_of_unity_sum_to_zero() {
        for e in [2usize, 3, 5, 6, 12, 60] {
            let sum = (0..e).fold(Cyclotomic::zero(e), |acc, j| &acc + &Cyclotomic::root_of_unity(e, j));
            assert!(sum.is_zero(), "e = {e}");
        }
        // ζ_12^6 = -1, ζ_4 squared is -1
        assert!(Cyclotomic::root_of_unity(12, 6).is_integer(-1));
        let i = Cyclotomic::root_of_unity(4, 1);
        assert!((&i * &i).is_integer(-1));
    }

    #[test]
    fn embedding_preserves_values() {
        let w = Cyclotomic::root_of_unity(3, 1);
        let w12 = w.embed(12);
        assert_eq!(w12, Cyclotomic::root_of_unity(12, 4));
        assert_eq!(&w + &Cyclotomic::one(4), &w12 + &Cyclotomic::one(12));
    }

    #[test]
    fn rendering() {
        assert_eq!(Cyclotomic::integer(12, -2).to_string(), "-2");
        assert_eq!(Cyclotomic::root_of_unity(5, 1).to_string(), "E(5)");
        assert_eq!(Cyclotomic::root_of_unity(3, 2).to_string(), "-1 - E(3)");
        let half = CyclotomicFraction::new(Cyclotomic::integer(2, -1), 2);
        assert_eq!(half.to_string(), "-1/2");
    }

    #[test]
    fn fractions_reduce() {
        let a = CyclotomicFraction::new(Cyclotomic::integer(4, 6), 4);
        assert_eq!((a.numerator().as_integer(), a.denominator()), (Some(3), 2));
        let b = CyclotomicFraction::new(Cyclotomic::integer(4, 1), 2);
        assert_eq!(&a - &b, CyclotomicFraction::new(Cyclotomic::integer(4, 1), 1));
        assert!((&b - &b).is_zero());
    }

    fn arb_value(e: usize) -> impl Strategy<Value = Cyclotomic> {
        proptest::collection::vec(-5i64..=5, e).prop_map(move |c| Cyclotomic::from_coeffs(e, &c))
    }

    fn arb_triple() -> impl Strategy<Value = (Cyclotomic, Cyclotomic, Cyclotomic)> {
        prop::sample::select(vec![1usize, 2, 3, 4, 6, 8, 12, 15])
            .prop_flat_map(|e| (arb_value(e), arb_value(e), arb_value(e)))
    }

    proptest! {
        #[test]
        fn ring_laws_hold((a, b, c) in arb_triple()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert!((&a - &a).is_zero());
            prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
        }

        #[test]
        fn reduction_agrees_with_evaluation_mod_p(coeffs in proptest::collection::vec(-20i64..20, 12)) {
            // p = 13 has a primitive 12th root of unity: 2.
            let v = Cyclotomic::from_coeffs(12, &coeffs);
            let direct = coeffs.iter().enumerate().fold(0u64, |acc, (j, &c)| {
                (acc + c.rem_euclid(13) as u64 * 2u64.pow(j as u32) % 13) % 13
            });
            prop_assert_eq!(v.to_mod_p(13, 2), direct);
        }
    }
}
