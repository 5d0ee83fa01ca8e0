//! Schur Q-polynomials and factorial Schur Q-polynomials by summation over
//! marked shifted tableaux, with the vanishing-characterization oracle.

use crate::poly::Poly;
use crate::scalar::{rat, Surd};
use crate::shifted::{enumerate_marked, strict_partitions, StrictPartition};

/// Sign selecting the factorial deformation `Q^+` or `Q^-`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum FactorialSign {
    Plus,
    Minus,
}

impl FactorialSign {
    fn to_int(self) -> i64 {
        match self {
            FactorialSign::Plus => 1,
            FactorialSign::Minus => -1,
        }
    }
}

/// `Q_lambda(y_1..y_N) = sum over marked shifted tableaux of prod y_|label|`.
/// Zero iff the shape has more than `n_vars` rows.
pub fn schur_q(shape: &StrictPartition, n_vars: usize) -> Poly {
    let mut acc = Poly::zero(n_vars);
    for t in enumerate_marked(shape, n_vars as u32) {
        let mut term = Poly::one(n_vars);
        for (k, _, _) in t.box_data() {
            term = &term * &Poly::var(n_vars, k as usize);
        }
        acc = &acc + &term;
    }
    acc
}

/// Factorial Schur Q-polynomial
/// `Q^±_lambda(y) = sum_T prod_boxes (y_|label| ± sgn(label) * content)`.
pub fn factorial_schur_q(shape: &StrictPartition, n_vars: usize, sign: FactorialSign) -> Poly {
    let s = sign.to_int();
    let mut acc = Poly::zero(n_vars);
    for t in enumerate_marked(shape, n_vars as u32) {
        let mut term = Poly::one(n_vars);
        for (k, sgn, content) in t.box_data() {
            let shift = Poly::constant(
                n_vars,
                Surd::from_rational(rat(s * sgn as i64 * content as i64)),
            );
            let factor = &Poly::var(n_vars, k as usize) + &shift;
            term = &term * &factor;
        }
        acc = &acc + &term;
    }
    acc
}

/// Evaluation points for the characterization property: every strict
/// partition `mu` with `|mu| < bound` and at most `n_vars` rows, padded with
/// zeros to an `n_vars`-tuple.
pub fn evaluation_points(bound: u32, n_vars: usize) -> Vec<Vec<Surd>> {
    let mut out = Vec::new();
    for size in 0..bound {
        for mu in strict_partitions(size) {
            if mu.len() > n_vars {
                continue;
            }
            let mut point: Vec<Surd> = mu
                .parts()
                .iter()
                .map(|&p| Surd::from_int(p as i64))
                .collect();
            point.resize(n_vars, Surd::zero());
            out.push(point);
        }
    }
    out
}

/// Characterization oracle: `p` is supersymmetric, its top degree component
/// is `Q_lambda`, and `p` vanishes at `-mu` (for `+`) or `mu` (for `-`) for
/// every strict `mu` with `|mu| < |lambda|`.
pub fn characterization_check(
    p: &Poly,
    shape: &StrictPartition,
    n_vars: usize,
    sign: FactorialSign,
) -> bool {
    if !p.is_supersymmetric() {
        return false;
    }
    let q = schur_q(shape, n_vars);
    let top_matches = if p.is_zero() {
        q.is_zero()
    } else {
        p.top_degree_component() == q
    };
    if !top_matches {
        return false;
    }
    for point in evaluation_points(shape.size(), n_vars) {
        let evaluated = match sign {
            FactorialSign::Plus => {
                let neg: Vec<Surd> = point.iter().map(|x| -x).collect();
                p.evaluate(&neg)
            }
            FactorialSign::Minus => p.evaluate(&point),
        };
        if !evaluated.is_zero() {
            return false;
        }
    }
    true
}

/// `p(-y)`: flip the sign of every variable.
pub fn negate_variables(p: &Poly) -> Poly {
    let mut out = Poly::zero(p.nvars());
    for (e, c) in p.terms() {
        let total: u32 = e.iter().map(|&x| x as u32).sum();
        let coeff = if total % 2 == 1 { -c } else { c.clone() };
        out.add_term(e.clone(), coeff);
    }
    out
}
