//! Multivariate polynomials over [`Surd`] in a fixed number of commuting
//! variables, plus the supersymmetry (cancellation) predicate.
//!
//! Exponent vectors are dense of fixed arity; polynomials of different arity
//! do not mix.

use crate::scalar::{Rational, Surd};
use rustc_hash::FxHashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Clone, Default)]
pub struct Poly {
    nvars: usize,
    terms: FxHashMap<Vec<u16>, Surd>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        if self.terms.is_empty() && other.terms.is_empty() {
            return true;
        }
        self.nvars == other.nvars && self.terms == other.terms
    }
}

impl Eq for Poly {}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: FxHashMap::default(),
        }
    }

    pub fn constant(nvars: usize, c: Surd) -> Self {
        let mut p = Poly::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        Poly::constant(nvars, Surd::one())
    }

    /// The variable `y_k`, 1-based.
    pub fn var(nvars: usize, k: usize) -> Self {
        assert!(k >= 1 && k <= nvars, "variable index out of range");
        let mut e = vec![0u16; nvars];
        e[k - 1] = 1;
        let mut p = Poly::zero(nvars);
        p.add_term(e, Surd::one());
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u16>, &Surd)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn add_term(&mut self, exps: Vec<u16>, coeff: Surd) {
        assert_eq!(exps.len(), self.nvars, "exponent arity mismatch");
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::hash_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::hash_map::Entry::Occupied(mut o) => {
                let sum = &*o.get() + &coeff;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    fn check_compat(&self, other: &Poly) -> usize {
        if self.terms.is_empty() {
            return other.nvars;
        }
        if other.terms.is_empty() {
            return self.nvars;
        }
        assert_eq!(self.nvars, other.nvars, "polynomial arity mismatch");
        self.nvars
    }

    pub fn scale(&self, c: &Surd) -> Poly {
        let mut out = Poly::zero(self.nvars);
        if c.is_zero() {
            return out;
        }
        for (e, v) in &self.terms {
            out.terms.insert(e.clone(), v * c);
        }
        out
    }

    pub fn scale_rat(&self, r: &Rational) -> Poly {
        self.scale(&Surd::from_rational(r.clone()))
    }

    /// Total degree; 0 for the zero polynomial.
    pub fn degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|e| e.iter().map(|&x| x as u32).sum())
            .max()
            .unwrap_or(0)
    }

    /// Sum of the terms of maximal total degree.  Panics on zero input.
    pub fn top_degree_component(&self) -> Poly {
        assert!(!self.is_zero(), "top degree of the zero polynomial");
        let d = self.degree();
        let mut out = Poly::zero(self.nvars);
        for (e, c) in &self.terms {
            if e.iter().map(|&x| x as u32).sum::<u32>() == d {
                out.terms.insert(e.clone(), c.clone());
            }
        }
        out
    }

    /// Exact evaluation at a point of matching arity.
    pub fn evaluate(&self, point: &[Surd]) -> Surd {
        assert_eq!(point.len(), self.nvars, "evaluation point arity mismatch");
        let mut acc = Surd::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (x, &exp) in point.iter().zip(e.iter()) {
                for _ in 0..exp {
                    term = &term * x;
                }
            }
            acc = &acc + &term;
        }
        acc
    }

    /// Image under a permutation of the variables: `y_k -> y_{perm(k)}`,
    /// `perm` 0-based.
    pub fn permute_vars(&self, perm: &[usize]) -> Poly {
        assert_eq!(perm.len(), self.nvars);
        let mut out = Poly::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut ne = vec![0u16; self.nvars];
            for (k, &exp) in e.iter().enumerate() {
                ne[perm[k]] = exp;
            }
            out.add_term(ne, c.clone());
        }
        out
    }

    pub fn is_symmetric(&self) -> bool {
        // adjacent transpositions generate the full symmetric group
        for a in 0..self.nvars.saturating_sub(1) {
            let mut perm: Vec<usize> = (0..self.nvars).collect();
            perm.swap(a, a + 1);
            if self.permute_vars(&perm) != *self {
                return false;
            }
        }
        true
    }

    /// Supersymmetry: symmetric, and substituting `y1 = z, y2 = -z` leaves a
    /// polynomial with no monomial containing `z`.
    pub fn is_supersymmetric(&self) -> bool {
        if self.nvars < 2 {
            return self.is_symmetric();
        }
        if !self.is_symmetric() {
            return false;
        }
        // substitute: a term y1^a y2^b contributes (-1)^b z^(a+b)
        let mut subst: FxHashMap<Vec<u16>, Surd> = FxHashMap::default();
        for (e, c) in &self.terms {
            let mut ne = e.clone();
            let a = ne[0];
            let b = ne[1];
            ne[0] = a + b;
            ne[1] = 0;
            let signed = if b % 2 == 1 { -c } else { c.clone() };
            match subst.entry(ne) {
                std::collections::hash_map::Entry::Vacant(v) => {
                    v.insert(signed);
                }
                std::collections::hash_map::Entry::Occupied(mut o) => {
                    let sum = &*o.get() + &signed;
                    if sum.is_zero() {
                        o.remove();
                    } else {
                        *o.get_mut() = sum;
                    }
                }
            }
        }
        subst.keys().all(|e| e[0] == 0)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|a, b| a.0.cmp(b.0));
        serde_json::Value::Array(
            terms
                .into_iter()
                .map(|(e, c)| {
                    serde_json::json!({
                        "exps": e.iter().map(|&x| x as u64).collect::<Vec<_>>(),
                        "coeff": c.to_json(),
                    })
                })
                .collect(),
        )
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let nvars = self.check_compat(rhs);
        let mut out = Poly::zero(nvars);
        for (e, c) in self.terms.iter().chain(rhs.terms.iter()) {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (e, c) in &self.terms {
            out.terms.insert(e.clone(), -c);
        }
        out
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let nvars = self.check_compat(rhs);
        let mut out = Poly::zero(nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e: Vec<u16> = e1.iter().zip(e2.iter()).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|a, b| a.0.cmp(b.0));
        let mut first = true;
        for (e, c) in terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            for (k, &exp) in e.iter().enumerate() {
                if exp > 0 {
                    write!(f, "*y{}^{}", k + 1, exp)?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;
    use proptest::prelude::*;

    fn y(k: usize, n: usize) -> Poly {
        Poly::var(n, k)
    }

    #[test]
    fn ring_examples() {
        let n = 2;
        let lhs = &(&y(1, n) + &y(2, n)) * &(&y(1, n) - &y(2, n));
        let rhs = &(&y(1, n) * &y(1, n)) - &(&y(2, n) * &y(2, n));
        assert_eq!(lhs, rhs);
        let p = &y(1, 2) * &y(2, 2);
        assert_eq!(
            p.evaluate(&[Surd::from_int(2), Surd::from_int(3)]),
            Surd::from_int(6)
        );
        // 2 y1 (y1 + 1) vanishes at y1 = -1
        let q = (&y(1, 1) * &(&y(1, 1) + &Poly::one(1))).scale(&Surd::from_int(2));
        assert_eq!(q.evaluate(&[Surd::from_int(-1)]), Surd::zero());
    }

    #[test]
    fn supersymmetry_examples() {
        let n = 3;
        let p1 = &(&y(1, n) + &y(2, n)) + &y(3, n);
        assert!(p1.scale(&Surd::from_int(2)).is_supersymmetric());
        let p2 = &y(1, 2) + &y(2, 2).scale(&Surd::from_int(2));
        assert!(!p2.is_supersymmetric());
        // e_2 for N = 2 is symmetric but not supersymmetric
        let e2 = &y(1, 2) * &y(2, 2);
        assert!(e2.is_symmetric());
        assert!(!e2.is_supersymmetric());
    }

    #[test]
    fn top_degree_examples() {
        let q = (&y(1, 1) * &(&y(1, 1) + &Poly::one(1))).scale(&Surd::from_int(2));
        let top = q.top_degree_component();
        let expected = (&y(1, 1) * &y(1, 1)).scale(&Surd::from_int(2));
        assert_eq!(top, expected);
        let c = Poly::constant(2, Surd::from_int(5));
        assert_eq!(c.top_degree_component(), c);
    }

    #[test]
    #[should_panic(expected = "zero polynomial")]
    fn top_degree_zero_panics() {
        let _ = Poly::zero(2).top_degree_component();
    }

    fn arb_poly() -> impl Strategy<Value = Poly> {
        let term = (prop::collection::vec(0u16..3, 2), -4i64..=4);
        prop::collection::vec(term, 0..5).prop_map(|ts| {
            let mut p = Poly::zero(2);
            for (e, c) in ts {
                p.add_term(e, Surd::from_rational(rat(c)));
            }
            p
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        }
    }
}
