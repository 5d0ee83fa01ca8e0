//! Small dense exact linear algebra over a field, enough for rank checks,
//! span membership and change-of-basis solves on module bases.

use crate::scalar::{GaussianSurd, Rational, Surd};
use num_traits::{One, Zero};

/// Exact field operations; every implementor is an honest field, so `inv`
/// may panic on zero.
pub trait Field: Clone + PartialEq + std::fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn inv(&self) -> Self;
    fn is_zero(&self) -> bool;
}

impl Field for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn inv(&self) -> Self {
        <Rational as One>::one() / self
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
}

impl Field for Surd {
    fn zero() -> Self {
        Surd::zero()
    }
    fn one() -> Self {
        Surd::one()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn inv(&self) -> Self {
        Surd::inv(self)
    }
    fn is_zero(&self) -> bool {
        Surd::is_zero(self)
    }
}

impl Field for GaussianSurd {
    fn zero() -> Self {
        GaussianSurd::zero()
    }
    fn one() -> Self {
        GaussianSurd::one()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn inv(&self) -> Self {
        GaussianSurd::inv(self)
    }
    fn is_zero(&self) -> bool {
        GaussianSurd::is_zero(self)
    }
}

/// Dense column-major matrix used as a list of vectors.
#[derive(Clone, Debug)]
pub struct Matrix<F> {
    pub rows: usize,
    pub cols: usize,
    /// `data[c][r]`
    pub data: Vec<Vec<F>>,
}

impl<F: Field> Matrix<F> {
    pub fn from_columns(rows: usize, cols: Vec<Vec<F>>) -> Self {
        for c in &cols {
            assert_eq!(c.len(), rows);
        }
        Matrix {
            rows,
            cols: cols.len(),
            data: cols,
        }
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![vec![F::zero(); rows]; cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zero(n, n);
        for i in 0..n {
            m.data[i][i] = F::one();
        }
        m
    }

    pub fn get(&self, r: usize, c: usize) -> &F {
        &self.data[c][r]
    }

    pub fn set(&mut self, r: usize, c: usize, v: F) {
        self.data[c][r] = v;
    }

    pub fn matmul(&self, rhs: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.cols, rhs.rows);
        let mut out: Matrix<F> = Matrix::zero(self.rows, rhs.cols);
        for c in 0..rhs.cols {
            for k in 0..self.cols {
                let f = &rhs.data[c][k];
                if f.is_zero() {
                    continue;
                }
                for r in 0..self.rows {
                    let add = self.data[k][r].mul(f);
                    out.data[c][r] = out.data[c][r].add(&add);
                }
            }
        }
        out
    }

    pub fn column(&self, c: usize) -> &[F] {
        &self.data[c]
    }
}

/// Row-reduced echelon solver built once over a set of spanning vectors.
pub struct Solver<F> {
    rows: usize,
    /// reduced columns, paired with pivot rows
    reduced: Vec<Vec<F>>,
    pivots: Vec<usize>,
    /// expresses each reduced column in terms of the original columns
    combo: Vec<Vec<F>>,
    n_orig: usize,
}

impl<F: Field> Solver<F> {
    /// Gaussian elimination over the columns of `m`.
    pub fn new(m: &Matrix<F>) -> Self {
        let mut reduced: Vec<Vec<F>> = Vec::new();
        let mut pivots: Vec<usize> = Vec::new();
        let mut combo: Vec<Vec<F>> = Vec::new();
        for c in 0..m.cols {
            let mut v = m.data[c].clone();
            let mut expr = vec![F::zero(); m.cols];
            expr[c] = F::one();
            reduce_against(&mut v, &mut expr, &reduced, &pivots, &combo);
            if let Some(p) = v.iter().position(|x| !x.is_zero()) {
                let inv = v[p].inv();
                for x in v.iter_mut() {
                    *x = x.mul(&inv);
                }
                for x in expr.iter_mut() {
                    *x = x.mul(&inv);
                }
                // back-substitute into existing columns
                for i in 0..reduced.len() {
                    let f = reduced[i][p].clone();
                    if !f.is_zero() {
                        for r in 0..m.rows {
                            let sub = v[r].mul(&f);
                            reduced[i][r] = reduced[i][r].sub(&sub);
                        }
                        for k in 0..m.cols {
                            let sub = expr[k].mul(&f);
                            combo[i][k] = combo[i][k].sub(&sub);
                        }
                    }
                }
                reduced.push(v);
                pivots.push(p);
                combo.push(expr);
            }
        }
        Solver {
            rows: m.rows,
            reduced,
            pivots,
            combo,
            n_orig: m.cols,
        }
    }

    pub fn rank(&self) -> usize {
        self.reduced.len()
    }

    /// Coordinates of `v` in terms of the ORIGINAL columns, if `v` is in the
    /// span.
    pub fn solve(&self, v: &[F]) -> Option<Vec<F>> {
        assert_eq!(v.len(), self.rows);
        let mut v = v.to_vec();
        let mut coeffs = vec![F::zero(); self.n_orig];
        for (i, p) in self.pivots.iter().enumerate() {
            let f = v[*p].clone();
            if f.is_zero() {
                continue;
            }
            for r in 0..self.rows {
                let sub = self.reduced[i][r].mul(&f);
                v[r] = v[r].sub(&sub);
            }
            for k in 0..self.n_orig {
                let add = self.combo[i][k].mul(&f);
                coeffs[k] = coeffs[k].add(&add);
            }
        }
        if v.iter().all(|x| x.is_zero()) {
            Some(coeffs)
        } else {
            None
        }
    }

    pub fn contains(&self, v: &[F]) -> bool {
        self.solve(v).is_some()
    }
}

fn reduce_against<F: Field>(
    v: &mut [F],
    expr: &mut [F],
    reduced: &[Vec<F>],
    pivots: &[usize],
    combo: &[Vec<F>],
) {
    for (i, p) in pivots.iter().enumerate() {
        let f = v[*p].clone();
        if f.is_zero() {
            continue;
        }
        for r in 0..v.len() {
            let sub = reduced[i][r].mul(&f);
            v[r] = v[r].sub(&sub);
        }
        for k in 0..expr.len() {
            let sub = combo[i][k].mul(&f);
            expr[k] = expr[k].sub(&sub);
        }
    }
}

/// Rank of the set of vectors (as columns).
pub fn rank<F: Field>(rows: usize, vectors: &[Vec<F>]) -> usize {
    Solver::new(&Matrix::from_columns(rows, vectors.to_vec())).rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn rank_and_solve() {
        let cols = vec![
            vec![rat(1), rat(0), rat(1)],
            vec![rat(0), rat(1), rat(1)],
            vec![rat(1), rat(1), rat(2)], // dependent
        ];
        let m = Matrix::from_columns(3, cols);
        let s = Solver::new(&m);
        assert_eq!(s.rank(), 2);
        let coords = s.solve(&[rat(2), rat(3), rat(5)]).unwrap();
        // verify the combination reproduces the vector
        let mut acc = [rat(0), rat(0), rat(0)];
        for (k, c) in coords.iter().enumerate() {
            for r in 0..3 {
                acc[r] = &acc[r] + &(m.get(r, k) * c);
            }
        }
        assert_eq!(acc.to_vec(), vec![rat(2), rat(3), rat(5)]);
        assert!(s.solve(&[rat(1), rat(0), rat(0)]).is_none());
    }

    #[test]
    fn surd_field_rank() {
        let cols = vec![
            vec![Surd::one(), Surd::sqrt(2)],
            vec![Surd::sqrt(2), Surd::from_int(2)], // sqrt2 * first
        ];
        assert_eq!(rank(2, &cols), 1);
    }
}
