//! Exact scalars: rationals, the real multiquadratic field generated by
//! square roots of squarefree positive integers, and its Gaussian extension.
//!
//! A [`Surd`] is a finite sum `sum_d c_d * sqrt(d)` with rational `c_d` and
//! squarefree radicands `d >= 1` (`d = 1` is the rational part).  The map
//! from radicands to coefficients is the canonical form: two surds are equal
//! iff their maps are equal.  Signed contents `sqrt(k(k+1))` and all
//! idempotent denominators live here.  The imaginary unit is kept out of
//! [`Surd`] on purpose; the few places that need it use [`GaussianSurd`].

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Arbitrary-precision rational, always reduced, denominator positive.
pub type Rational = num_rational::BigRational;

/// Rational from an integer.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Rational `p/q`.
pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Parse `"p/q"` or `"p"`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                return None;
            }
            Some(Rational::new(p, q))
        }
        None => {
            let p: BigInt = s.parse().ok()?;
            Some(Rational::from_integer(p))
        }
    }
}

/// Format as `"p/q"` (or `"p"` when the denominator is 1).
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Split `n = s^2 * f` with `f` squarefree; returns `(s, f)`.
fn split_square(n: u64) -> (u64, u64) {
    debug_assert!(n >= 1);
    let mut square_root = 1u64;
    let mut free = 1u64;
    let mut m = n;
    let mut p = 2u64;
    while p * p <= m {
        if m % p == 0 {
            let mut e = 0u32;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            square_root *= p.pow(e / 2);
            if e % 2 == 1 {
                free *= p;
            }
        }
        p += 1;
    }
    free *= m; // leftover prime
    (square_root, free)
}

fn gcd(a: u64, b: u64) -> u64 {
    num_integer::gcd(a, b)
}

/// Element of the field Q(sqrt d : d squarefree), in canonical form.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Surd {
    terms: BTreeMap<u64, Rational>,
}

impl Surd {
    pub fn zero() -> Self {
        Surd::default()
    }

    pub fn one() -> Self {
        Surd::from_int(1)
    }

    pub fn from_rational(r: Rational) -> Self {
        let mut s = Surd::default();
        s.add_term(1, r);
        s
    }

    pub fn from_int(n: i64) -> Self {
        Surd::from_rational(rat(n))
    }

    /// `sqrt(n)` for `n >= 0`, reduced to a squarefree radicand.
    pub fn sqrt(n: u64) -> Self {
        if n == 0 {
            return Surd::zero();
        }
        let (s, f) = split_square(n);
        let mut out = Surd::default();
        out.add_term(f, rat(s as i64));
        out
    }

    /// Signed-content radical `sqrt(k(k+1))` for a box of content `k`.
    pub fn sqrt_content(k: u64) -> Self {
        Surd::sqrt(k * (k + 1))
    }

    /// `sqrt(r)` for a nonnegative rational `r`, when it stays in the field:
    /// `sqrt(p/q) = sqrt(pq)/q`.
    pub fn sqrt_rational(r: &Rational) -> Option<Self> {
        if r.is_negative() {
            return None;
        }
        if r.is_zero() {
            return Some(Surd::zero());
        }
        let p: u64 = r.numer().try_into().ok()?;
        let q: u64 = r.denom().try_into().ok()?;
        let mut s = Surd::sqrt(p.checked_mul(q)?);
        s = s.scale(&Rational::new(BigInt::one(), BigInt::from(q)));
        Some(s)
    }

    fn add_term(&mut self, radicand: u64, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(radicand) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get() + coeff;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of `sqrt(1)`, i.e. the rational component.
    pub fn rational_part(&self) -> Rational {
        self.terms.get(&1).cloned().unwrap_or_else(Rational::zero)
    }

    /// `Some(r)` iff the surd is plain rational.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.terms.is_empty() {
            return Some(Rational::zero());
        }
        if self.terms.len() == 1 {
            if let Some(r) = self.terms.get(&1) {
                return Some(r.clone());
            }
        }
        None
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Surd::zero();
        }
        let mut out = Surd::default();
        for (d, c) in &self.terms {
            out.terms.insert(*d, c * r);
        }
        out
    }

    pub fn terms(&self) -> impl Iterator<Item = (u64, &Rational)> {
        self.terms.iter().map(|(d, c)| (*d, c))
    }

    /// Multiplicative inverse, by conjugation descent: split on one radical
    /// prime, multiply by the conjugate, and invert the norm in the smaller
    /// field.  Panics on zero.
    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "division by zero Surd");
        if let Some(r) = self.as_rational() {
            return Surd::from_rational(Rational::one() / r);
        }
        // any prime dividing some radicand > 1
        let p = {
            let d = *self.terms.keys().find(|d| **d > 1).unwrap();
            let mut p = 2u64;
            loop {
                if d % p == 0 {
                    break p;
                }
                p += 1;
            }
        };
        let conj = self.conjugate_at(p);
        let norm = self * &conj;
        debug_assert!(norm.terms.keys().all(|d| d % p != 0));
        &conj * &norm.inv()
    }

    /// Field automorphism sending `sqrt(p) -> -sqrt(p)` for the prime `p`.
    fn conjugate_at(&self, p: u64) -> Self {
        let mut out = Surd::default();
        for (d, c) in &self.terms {
            if d % p == 0 {
                out.terms.insert(*d, -c);
            } else {
                out.terms.insert(*d, c.clone());
            }
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut map = serde_json::Map::new();
        for (d, c) in &self.terms {
            map.insert(d.to_string(), serde_json::Value::String(format_rational(c)));
        }
        serde_json::Value::Object(map)
    }

    pub fn from_json(v: &serde_json::Value) -> Option<Self> {
        let mut out = Surd::default();
        for (k, val) in v.as_object()? {
            let d: u64 = k.parse().ok()?;
            let (_, f) = split_square(d);
            if f != d {
                return None; // radicands must be squarefree
            }
            out.add_term(d, parse_rational(val.as_str()?)?);
        }
        Some(out)
    }
}

impl fmt::Debug for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if *d == 1 {
                write!(f, "{}", format_rational(c))?;
            } else {
                write!(f, "{}*sqrt({})", format_rational(c), d)?;
            }
        }
        Ok(())
    }
}

impl Add for &Surd {
    type Output = Surd;
    fn add(self, rhs: &Surd) -> Surd {
        let mut out = self.clone();
        for (d, c) in &rhs.terms {
            out.add_term(*d, c.clone());
        }
        out
    }
}

impl Sub for &Surd {
    type Output = Surd;
    fn sub(self, rhs: &Surd) -> Surd {
        let mut out = self.clone();
        for (d, c) in &rhs.terms {
            out.add_term(*d, -c.clone());
        }
        out
    }
}

impl Neg for &Surd {
    type Output = Surd;
    fn neg(self) -> Surd {
        let mut out = Surd::default();
        for (d, c) in &self.terms {
            out.terms.insert(*d, -c.clone());
        }
        out
    }
}

impl Mul for &Surd {
    type Output = Surd;
    fn mul(self, rhs: &Surd) -> Surd {
        let mut out = Surd::default();
        for (d1, c1) in &self.terms {
            for (d2, c2) in &rhs.terms {
                let g = gcd(*d1, *d2);
                let rad = (d1 / g) * (d2 / g);
                let mut coeff = c1 * c2;
                if g > 1 {
                    coeff *= rat(g as i64);
                }
                out.add_term(rad, coeff);
            }
        }
        out
    }
}

macro_rules! forward_owned_ops {
    ($t:ty) => {
        impl Add for $t {
            type Output = $t;
            fn add(self, rhs: $t) -> $t {
                &self + &rhs
            }
        }
        impl Sub for $t {
            type Output = $t;
            fn sub(self, rhs: $t) -> $t {
                &self - &rhs
            }
        }
        impl Mul for $t {
            type Output = $t;
            fn mul(self, rhs: $t) -> $t {
                &self * &rhs
            }
        }
        impl Neg for $t {
            type Output = $t;
            fn neg(self) -> $t {
                -&self
            }
        }
    };
}

forward_owned_ops!(Surd);

/// Pair `re + i*im` of surds with `i^2 = -1`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussianSurd {
    pub re: Surd,
    pub im: Surd,
}

impl GaussianSurd {
    pub fn zero() -> Self {
        GaussianSurd::default()
    }

    pub fn one() -> Self {
        GaussianSurd::from_real(Surd::one())
    }

    pub fn i() -> Self {
        GaussianSurd {
            re: Surd::zero(),
            im: Surd::one(),
        }
    }

    pub fn from_real(re: Surd) -> Self {
        GaussianSurd {
            re,
            im: Surd::zero(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        GaussianSurd::from_real(Surd::from_int(n))
    }

    pub fn from_rational(r: Rational) -> Self {
        GaussianSurd::from_real(Surd::from_rational(r))
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussianSurd {
            re: self.re.clone(),
            im: -&self.im,
        }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        GaussianSurd {
            re: self.re.scale(r),
            im: self.im.scale(r),
        }
    }

    pub fn scale_surd(&self, s: &Surd) -> Self {
        GaussianSurd {
            re: &self.re * s,
            im: &self.im * s,
        }
    }

    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "division by zero GaussianSurd");
        let norm = &(&self.re * &self.re) + &(&self.im * &self.im);
        self.conj().scale_surd(&norm.inv())
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({ "re": self.re.to_json(), "im": self.im.to_json() })
    }
}

impl fmt::Debug for GaussianSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else {
            write!(f, "({}) + i*({})", self.re, self.im)
        }
    }
}

impl Add for &GaussianSurd {
    type Output = GaussianSurd;
    fn add(self, rhs: &GaussianSurd) -> GaussianSurd {
        GaussianSurd {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }
}

impl Sub for &GaussianSurd {
    type Output = GaussianSurd;
    fn sub(self, rhs: &GaussianSurd) -> GaussianSurd {
        GaussianSurd {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }
}

impl Neg for &GaussianSurd {
    type Output = GaussianSurd;
    fn neg(self) -> GaussianSurd {
        GaussianSurd {
            re: -&self.re,
            im: -&self.im,
        }
    }
}

impl Mul for &GaussianSurd {
    type Output = GaussianSurd;
    fn mul(self, rhs: &GaussianSurd) -> GaussianSurd {
        GaussianSurd {
            re: &(&self.re * &rhs.re) - &(&self.im * &rhs.im),
            im: &(&self.re * &rhs.im) + &(&self.im * &rhs.re),
        }
    }
}

forward_owned_ops!(GaussianSurd);

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Independent squarefree-factorization oracle by full trial division.
    fn squarefree_oracle(n: u64) -> (u64, u64) {
        let mut best_s = 1;
        for s in 1..=n {
            if s * s > n {
                break;
            }
            if n % (s * s) == 0 {
                best_s = s;
            }
        }
        (best_s, n / (best_s * best_s))
    }

    #[test]
    fn sqrt_content_examples() {
        assert_eq!(Surd::sqrt_content(0), Surd::zero());
        assert_eq!(Surd::sqrt_content(1), Surd::sqrt(2));
        // k = 3: 3*4 = 12 = 2^2 * 3
        let (s, f) = squarefree_oracle(12);
        assert_eq!((s, f), (2, 3));
        assert_eq!(Surd::sqrt_content(3), Surd::sqrt(3).scale(&rat(2)));
        for k in 0..=10u64 {
            let r = Surd::sqrt_content(k);
            assert_eq!(&r * &r, Surd::from_int((k * (k + 1)) as i64));
            // single term with squarefree radicand
            assert!(r.terms.len() <= 1);
            for (d, _) in r.terms() {
                assert_eq!(squarefree_oracle(d).0, 1);
            }
        }
    }

    #[test]
    fn split_square_matches_oracle() {
        for n in 1..=400u64 {
            assert_eq!(split_square(n), squarefree_oracle(n), "n = {n}");
        }
    }

    #[test]
    fn mul_examples() {
        // sqrt2 * sqrt6 = 2 sqrt3
        assert_eq!(&Surd::sqrt(2) * &Surd::sqrt(6), Surd::sqrt(3).scale(&rat(2)));
        let x = &Surd::sqrt(7) + &Surd::from_rational(ratio(1, 3));
        assert_eq!(&x * &Surd::one(), x);
        // (1 + sqrt2)(1 - sqrt2) = -1
        let a = &Surd::one() + &Surd::sqrt(2);
        let b = &Surd::one() - &Surd::sqrt(2);
        assert_eq!(&a * &b, Surd::from_int(-1));
    }

    #[test]
    fn add_examples() {
        assert_eq!(&Surd::sqrt(2) + &(-&Surd::sqrt(2)), Surd::zero());
        assert_eq!(
            &Surd::from_rational(ratio(1, 2)) + &Surd::from_rational(ratio(1, 3)),
            Surd::from_rational(ratio(5, 6))
        );
        assert_eq!(
            &Surd::sqrt(3).scale(&rat(2)) + &Surd::sqrt(3),
            Surd::sqrt(3).scale(&rat(3))
        );
    }

    #[test]
    fn inv_examples() {
        assert_eq!(Surd::one().inv(), Surd::one());
        // 1/sqrt2 = sqrt2/2
        assert_eq!(Surd::sqrt(2).inv(), Surd::sqrt(2).scale(&ratio(1, 2)));
        // 1/(1+sqrt2) = -1+sqrt2
        let a = &Surd::one() + &Surd::sqrt(2);
        assert_eq!(a.inv(), &Surd::from_int(-1) + &Surd::sqrt(2));
    }

    #[test]
    #[should_panic(expected = "division by zero")]
    fn inv_zero_panics() {
        let _ = Surd::zero().inv();
    }

    #[test]
    fn inv_four_radical_primes() {
        // element touching sqrt2, sqrt3, sqrt5, sqrt7 through composite radicands
        let mut a = Surd::from_rational(ratio(2, 3));
        a = &a + &Surd::sqrt(6).scale(&ratio(1, 2));
        a = &a + &Surd::sqrt(35).scale(&rat(-1));
        a = &a + &Surd::sqrt(14).scale(&ratio(3, 5));
        a = &a + &Surd::sqrt(15);
        let inv = a.inv();
        assert_eq!(&a * &inv, Surd::one());
    }

    #[test]
    fn json_round_trip() {
        let a = &Surd::from_rational(ratio(1, 2)) + &Surd::sqrt(2).scale(&ratio(1, 4));
        let j = a.to_json();
        assert_eq!(j, serde_json::json!({"1": "1/2", "2": "1/4"}));
        assert_eq!(Surd::from_json(&j).unwrap(), a);
        assert!(Surd::from_json(&serde_json::json!({"4": "1"})).is_none());
    }

    #[test]
    fn gaussian_ops() {
        let i = GaussianSurd::i();
        assert_eq!(&i * &i, GaussianSurd::from_int(-1));
        let z = GaussianSurd {
            re: Surd::sqrt(2),
            im: &Surd::one() + &Surd::sqrt(3),
        };
        assert_eq!(&z * &z.inv(), GaussianSurd::one());
    }

    fn arb_surd() -> impl Strategy<Value = Surd> {
        let radicands = prop::sample::select(vec![1u64, 2, 3, 5, 6, 7, 10]);
        let coeff = (-6i64..=6, 1i64..=4).prop_map(|(p, q)| ratio(p, q));
        prop::collection::vec((radicands, coeff), 0..4).prop_map(|ts| {
            let mut s = Surd::default();
            for (d, c) in ts {
                s.add_term(d, c);
            }
            s
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn field_axioms(a in arb_surd(), b in arb_surd(), c in arb_surd()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            if !a.is_zero() {
                prop_assert_eq!(&a * &a.inv(), Surd::one());
            }
        }

        #[test]
        fn canonical_sub(a in arb_surd()) {
            prop_assert!((&a - &a).is_zero());
            prop_assert_eq!(&a * &Surd::one(), a.clone());
        }
    }
}
