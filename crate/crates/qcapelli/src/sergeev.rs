//! Exact arithmetic in the Sergeev superalgebra S_n: the semidirect product
//! of the symmetric group algebra with the Clifford superalgebra on odd
//! generators c_1..c_n satisfying c_a^2 = -1 and c_a c_b = -c_b c_a.
//!
//! Elements are stored in the basis `sigma * c_1^{e_1} ... c_n^{e_n}` with
//! the permutation on the left and the Clifford monomial on the right in
//! ascending index order.  The module provides the even and odd Jucys-Murphy
//! elements, the barred-tableau idempotents, Clifford idempotents, the
//! explicit modules with their generator matrices, conjugation sums and
//! character elements.

use crate::linalg::{Matrix, Solver};
use crate::scalar::{GaussianSurd, Rational, Surd};
use crate::shifted::{enumerate_standard, enumerate_standard_barred, BarredStandardTableau, StrictPartition};
use rustc_hash::FxHashMap;
use smallvec::SmallVec;
use std::fmt;

/// Permutation of `{1..n}` in one-line notation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: SmallVec<[u8; 8]>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (1..=n as u8).collect(),
        }
    }

    pub fn from_images(images: Vec<u8>) -> Self {
        let mut seen = vec![false; images.len() + 1];
        for &v in &images {
            assert!(v >= 1 && (v as usize) <= images.len() && !seen[v as usize]);
            seen[v as usize] = true;
        }
        Permutation {
            images: images.into(),
        }
    }

    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        assert!(a != b && a >= 1 && b >= 1 && a <= n && b <= n);
        let mut p = Permutation::identity(n);
        p.images.swap(a - 1, b - 1);
        p
    }

    pub fn adjacent(n: usize, a: usize) -> Self {
        Permutation::transposition(n, a, a + 1)
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1] as usize
    }

    /// `(self * other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.n(), other.n());
        Permutation {
            images: (1..=self.n()).map(|i| self.apply(other.apply(i)) as u8).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = smallvec::smallvec![0u8; self.n()];
        for i in 1..=self.n() {
            images[self.apply(i) - 1] = i as u8;
        }
        Permutation { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| v as usize == i + 1)
    }

    /// Pad to act on `{1..m}` fixing the new points.
    pub fn embed(&self, m: usize) -> Permutation {
        assert!(m >= self.n());
        let mut images = self.images.clone();
        for i in self.n() + 1..=m {
            images.push(i as u8);
        }
        Permutation { images }
    }

    /// Word `w` of adjacent-transposition indices with
    /// `self = s_{w[0]} . s_{w[1]} . ... (composition applies the rightmost
    /// factor first)`.
    pub fn adjacent_word(&self) -> Vec<usize> {
        let mut p = self.clone();
        let mut word = Vec::new();
        loop {
            let descent = (1..p.n()).find(|&i| p.apply(i) > p.apply(i + 1));
            match descent {
                None => break,
                Some(i) => {
                    p.images.swap(i - 1, i);
                    word.push(i);
                }
            }
        }
        word.reverse();
        word
    }

    /// All permutations of `{1..n}`.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut cur: Vec<u8> = (1..=n as u8).collect();
        permute_rec(&mut cur, 0, &mut out);
        out
    }
}

fn permute_rec(cur: &mut Vec<u8>, k: usize, out: &mut Vec<Permutation>) {
    if k == cur.len() {
        out.push(Permutation {
            images: cur.clone().into(),
        });
        return;
    }
    for i in k..cur.len() {
        cur.swap(k, i);
        permute_rec(cur, k + 1, out);
        cur.swap(k, i);
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.images.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" "))
    }
}

/// Clifford monomial as a bitmask: bit `a-1` set means `c_a` is present;
/// the monomial is read in ascending index order.
pub type CliffordMask = u32;

/// `c^{eps1} * c^{eps2}` in normal form: returns `(sign, eps)`.
pub fn clifford_mul(eps1: CliffordMask, eps2: CliffordMask) -> (i32, CliffordMask) {
    let mut acc = eps1;
    let mut sign = 1i32;
    let mut rest = eps2;
    while rest != 0 {
        let b = rest.trailing_zeros();
        rest &= rest - 1;
        // move c_{b+1} left past accumulated factors with larger index
        let higher = acc >> (b + 1);
        if higher.count_ones() % 2 == 1 {
            sign = -sign;
        }
        if acc & (1 << b) != 0 {
            sign = -sign; // c^2 = -1
            acc &= !(1 << b);
        } else {
            acc |= 1 << b;
        }
    }
    (sign, acc)
}

/// Rewrites `sigma * c^{eps}` as `c^{sigma(eps)} * sigma` is the defining
/// relation; this helper computes the other direction used in products:
/// given the ascending word over `eps`, the image word `[f(b)]` sorted into
/// ascending order with its reordering sign.
fn relabel_clifford(eps: CliffordMask, f: impl Fn(usize) -> usize) -> (i32, CliffordMask) {
    let mut images: SmallVec<[u8; 8]> = SmallVec::new();
    let mut rest = eps;
    while rest != 0 {
        let b = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        images.push(f(b + 1) as u8);
    }
    let mut sign = 1i32;
    let mut out: CliffordMask = 0;
    for (i, &v) in images.iter().enumerate() {
        for &w in &images[..i] {
            if w > v {
                sign = -sign;
            }
        }
        out |= 1 << (v - 1);
    }
    (sign, out)
}

/// Basis element `sigma * c^{eps}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SergeevBasis {
    pub perm: Permutation,
    pub eps: CliffordMask,
}

impl SergeevBasis {
    pub fn identity(n: usize) -> Self {
        SergeevBasis {
            perm: Permutation::identity(n),
            eps: 0,
        }
    }

    /// Parity: the permutation is even, each Clifford generator is odd.
    pub fn parity(&self) -> u8 {
        (self.eps.count_ones() % 2) as u8
    }

    /// `(sign, product)` of two basis elements.
    pub fn mul(&self, other: &SergeevBasis) -> (i32, SergeevBasis) {
        // sigma c^eps . tau c^phi = (sigma tau) c^{tau^{-1}(eps)} c^phi
        let tau_inv = other.perm.inverse();
        let (s1, eps_moved) = relabel_clifford(self.eps, |b| tau_inv.apply(b));
        let (s2, eps) = clifford_mul(eps_moved, other.eps);
        (
            s1 * s2,
            SergeevBasis {
                perm: self.perm.compose(&other.perm),
                eps,
            },
        )
    }

    /// `(sign, inverse)`: every basis element is invertible.
    pub fn inv(&self) -> (i32, SergeevBasis) {
        // (c^eps)^{-1} = (-1)^{r(r+1)/2} c^eps, then move past sigma^{-1}
        let r = self.eps.count_ones();
        let sign_c = if (r * (r + 1) / 2) % 2 == 0 { 1 } else { -1 };
        let cpart = SergeevBasis {
            perm: Permutation::identity(self.perm.n()),
            eps: self.eps,
        };
        let ppart = SergeevBasis {
            perm: self.perm.inverse(),
            eps: 0,
        };
        let (s, b) = cpart.mul(&ppart);
        (sign_c * s, b)
    }
}

impl fmt::Debug for SergeevBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.perm)?;
        let mut rest = self.eps;
        while rest != 0 {
            let b = rest.trailing_zeros();
            rest &= rest - 1;
            write!(f, "c{}", b + 1)?;
        }
        Ok(())
    }
}

/// Element of S_n: a linear combination of basis elements over [`GaussianSurd`].
#[derive(Clone, PartialEq, Eq)]
pub struct SergeevElement {
    n: usize,
    terms: FxHashMap<SergeevBasis, GaussianSurd>,
}

impl SergeevElement {
    pub fn zero(n: usize) -> Self {
        SergeevElement {
            n,
            terms: FxHashMap::default(),
        }
    }

    pub fn one(n: usize) -> Self {
        SergeevElement::from_basis(SergeevBasis::identity(n), GaussianSurd::one())
    }

    pub fn scalar(n: usize, c: GaussianSurd) -> Self {
        SergeevElement::from_basis(SergeevBasis::identity(n), c)
    }

    pub fn from_basis(b: SergeevBasis, c: GaussianSurd) -> Self {
        let n = b.perm.n();
        let mut e = SergeevElement::zero(n);
        e.add_term(b, c);
        e
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (&SergeevBasis, &GaussianSurd)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// All coefficients lie in the real subfield.
    pub fn is_real(&self) -> bool {
        self.terms.values().all(|c| c.is_real())
    }

    /// Homogeneous of even parity (products of evenly many odd factors).
    pub fn is_even(&self) -> bool {
        self.terms.keys().all(|b| b.parity() == 0)
    }

    pub fn add_term(&mut self, b: SergeevBasis, c: GaussianSurd) {
        assert_eq!(b.perm.n(), self.n, "mixed ranks");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(b) {
            std::collections::hash_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::hash_map::Entry::Occupied(mut o) => {
                let sum = &*o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &SergeevElement) -> SergeevElement {
        assert_eq!(self.n, other.n);
        let mut out = self.clone();
        for (b, c) in &other.terms {
            out.add_term(b.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &SergeevElement) -> SergeevElement {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> SergeevElement {
        let mut out = SergeevElement::zero(self.n);
        for (b, c) in &self.terms {
            out.terms.insert(b.clone(), -c);
        }
        out
    }

    pub fn scale(&self, c: &GaussianSurd) -> SergeevElement {
        let mut out = SergeevElement::zero(self.n);
        if c.is_zero() {
            return out;
        }
        for (b, v) in &self.terms {
            let prod = v * c;
            if !prod.is_zero() {
                out.terms.insert(b.clone(), prod);
            }
        }
        out
    }

    pub fn scale_surd(&self, s: &Surd) -> SergeevElement {
        self.scale(&GaussianSurd::from_real(s.clone()))
    }

    pub fn mul(&self, other: &SergeevElement) -> SergeevElement {
        assert_eq!(self.n, other.n);
        let mut out = SergeevElement::zero(self.n);
        for (b1, c1) in &self.terms {
            for (b2, c2) in &other.terms {
                let (sign, b) = b1.mul(b2);
                let mut c = c1 * c2;
                if sign < 0 {
                    c = -&c;
                }
                out.add_term(b, c);
            }
        }
        out
    }

    /// Embed S_n into S_m for `m >= n`, fixing the extra letters.
    pub fn embed(&self, m: usize) -> SergeevElement {
        assert!(m >= self.n);
        let mut out = SergeevElement::zero(m);
        for (b, c) in &self.terms {
            out.terms.insert(
                SergeevBasis {
                    perm: b.perm.embed(m),
                    eps: b.eps,
                },
                c.clone(),
            );
        }
        out
    }

    /// Coefficient of a basis element.
    pub fn coefficient(&self, b: &SergeevBasis) -> GaussianSurd {
        self.terms.get(b).cloned().unwrap_or_else(GaussianSurd::zero)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by_key(|(b, _)| (b.perm.clone(), b.eps));
        serde_json::Value::Array(
            terms
                .into_iter()
                .map(|(b, c)| {
                    serde_json::json!({
                        "perm": (1..=self.n).map(|i| b.perm.apply(i)).collect::<Vec<_>>(),
                        "eps": (0..self.n).map(|a| u32::from(b.eps >> a & 1)).collect::<Vec<_>>(),
                        "coeff": c.to_json(),
                    })
                })
                .collect(),
        )
    }
}

impl fmt::Debug for SergeevElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by_key(|(b, _)| (b.perm.clone(), b.eps));
        for (i, (b, c)) in terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({:?}) {:?}", c, b)?;
        }
        Ok(())
    }
}

/// Adjacent transposition `s_a` as an element of S_n.
pub fn s_gen(n: usize, a: usize) -> SergeevElement {
    SergeevElement::from_basis(
        SergeevBasis {
            perm: Permutation::adjacent(n, a),
            eps: 0,
        },
        GaussianSurd::one(),
    )
}

/// Clifford generator `c_a`.
pub fn c_gen(n: usize, a: usize) -> SergeevElement {
    assert!(a >= 1 && a <= n);
    SergeevElement::from_basis(
        SergeevBasis {
            perm: Permutation::identity(n),
            eps: 1 << (a - 1),
        },
        GaussianSurd::one(),
    )
}

/// Transposition `(a, b)` as an element.
pub fn transposition(n: usize, a: usize, b: usize) -> SergeevElement {
    SergeevElement::from_basis(
        SergeevBasis {
            perm: Permutation::transposition(n, a, b),
            eps: 0,
        },
        GaussianSurd::one(),
    )
}

/// Even Jucys-Murphy element `x_b = sum_{a<b} (a,b)(1 + c_a c_b)`; `x_1 = 0`.
pub fn jm(n: usize, b: usize) -> SergeevElement {
    assert!(b >= 1 && b <= n);
    let mut out = SergeevElement::zero(n);
    for a in 1..b {
        let perm = Permutation::transposition(n, a, b);
        out.add_term(
            SergeevBasis {
                perm: perm.clone(),
                eps: 0,
            },
            GaussianSurd::one(),
        );
        out.add_term(
            SergeevBasis {
                perm,
                eps: (1 << (a - 1)) | (1 << (b - 1)),
            },
            GaussianSurd::one(),
        );
    }
    out
}

/// Spin generator `t_a = s_a (c_a - c_{a+1}) / sqrt 2`, the odd element with
/// `s_a = t_a (c_{a+1} - c_a)/sqrt 2` and `t_a^2 = 1`.
pub fn t_gen(n: usize, a: usize) -> SergeevElement {
    let diff = c_gen(n, a).sub(&c_gen(n, a + 1));
    s_gen(n, a)
        .mul(&diff)
        .scale_surd(&Surd::sqrt(2).inv())
}

/// Spin transposition `t_{ab} = (-1)^{b-a-1} t_{b-1}..t_{a+1} t_a t_{a+1}..t_{b-1}`.
pub fn t_transposition(n: usize, a: usize, b: usize) -> SergeevElement {
    assert!(a < b);
    let mut elem = t_gen(n, a);
    for k in a + 1..b {
        let t = t_gen(n, k);
        elem = t.mul(&elem).mul(&t);
    }
    if (b - a - 1) % 2 == 1 {
        elem = elem.neg();
    }
    elem
}

/// Odd Jucys-Murphy element `m_b = t_{1b} + ... + t_{b-1,b}`; `m_1 = 0`.
pub fn odd_jm(n: usize, b: usize) -> SergeevElement {
    let mut out = SergeevElement::zero(n);
    for a in 1..b {
        out = out.add(&t_transposition(n, a, b));
    }
    out
}

/// All `2^n n!` basis elements `sigma c^eps`.
pub fn all_basis(n: usize) -> Vec<SergeevBasis> {
    let mut out = Vec::new();
    for perm in Permutation::all(n) {
        for eps in 0..(1u32 << n) {
            out.push(SergeevBasis {
                perm: perm.clone(),
                eps,
            });
        }
    }
    out
}

/// Memoized builder for the barred-tableau idempotents `e_U`.
#[derive(Default)]
pub struct IdempotentTable {
    memo: FxHashMap<BarredStandardTableau, SergeevElement>,
}

impl IdempotentTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// The idempotent `e_U` of S_n, `n` the number of boxes of `U`, built by
    /// the recursion
    /// `e_U = e_V (x_n - b_1)...(x_n - b_p) / ((kappa - b_1)...(kappa - b_p))`
    /// where `V` removes the box of the largest entry, `kappa` is that box's
    /// signed content and the `b_j` run over the signed contents of all
    /// addable boxes of sh(V) other than `kappa`.
    pub fn get(&mut self, u: &BarredStandardTableau) -> SergeevElement {
        if let Some(e) = self.memo.get(u) {
            return e.clone();
        }
        let n = u.size() as usize;
        let result = if n == 1 {
            SergeevElement::one(1)
        } else {
            let v = u.remove_last();
            let ev = self.get(&v).embed(n);
            let kappa = u.signed_content(n as u32);
            let mut bs: Vec<Surd> = Vec::new();
            for bx in v.shape().addable_boxes() {
                if bx.is_diagonal() {
                    bs.push(Surd::zero());
                } else {
                    let r = Surd::sqrt_content(bx.content() as u64);
                    bs.push(r.clone());
                    bs.push(-&r);
                }
            }
            let pos = bs
                .iter()
                .position(|b| *b == kappa)
                .expect("kappa among addable signed contents");
            bs.remove(pos);
            let x = jm(n, n);
            let mut num = ev;
            let mut den = Surd::one();
            for b in bs {
                let factor = x.sub(&SergeevElement::scalar(n, GaussianSurd::from_real(b.clone())));
                num = num.mul(&factor);
                let d = &kappa - &b;
                assert!(!d.is_zero(), "vanishing idempotent denominator");
                den = &den * &d;
            }
            num.scale_surd(&den.inv())
        };
        self.memo.insert(u.clone(), result.clone());
        result
    }

    /// All idempotents for tableaux with `n` boxes, keyed by tableau.
    pub fn all_for_n(&mut self, n: u32) -> Vec<(BarredStandardTableau, SergeevElement)> {
        let mut out = Vec::new();
        for shape in crate::shifted::strict_partitions(n) {
            for u in enumerate_standard_barred(&shape) {
                let e = self.get(&u);
                out.push((u, e));
            }
        }
        out
    }
}

/// Convenience one-shot `e_U`.
pub fn idempotent(u: &BarredStandardTableau) -> SergeevElement {
    IdempotentTable::new().get(u)
}

/// Clifford idempotent `E^U_delta = prod_a (1 + i delta_a c_{d_{2a-1}} c_{d_{2a}})/2`
/// over the diagonal entries `d` of `U`; `delta` has length `m` where
/// `l(shape) = 2m` or `2m + 1`.
pub fn clifford_idempotent(u: &BarredStandardTableau, delta: &[i8]) -> SergeevElement {
    let n = u.size() as usize;
    let d = u.diagonal_entries();
    let l = d.len();
    let m = l / 2;
    assert_eq!(delta.len(), m, "delta length must be floor(l/2)");
    let half = Rational::new(1.into(), 2.into());
    let mut out = SergeevElement::one(n);
    for (a, &da) in delta.iter().enumerate() {
        assert!(da == 1 || da == -1);
        let cc = c_gen(n, d[2 * a] as usize).mul(&c_gen(n, d[2 * a + 1] as usize));
        let mut ic = cc.scale(&GaussianSurd::i());
        if da < 0 {
            ic = ic.neg();
        }
        let factor = SergeevElement::one(n).add(&ic).scale(&GaussianSurd::from_rational(half.clone()));
        out = out.mul(&factor);
    }
    out
}

/// All sign tuples of length m.
pub fn delta_tuples(m: usize) -> Vec<Vec<i8>> {
    let mut out = Vec::new();
    for code in 0..(1usize << m) {
        out.push((0..m).map(|a| if code >> a & 1 == 1 { -1 } else { 1 }).collect());
    }
    out
}

/// Explicit module on the basis `{c^eps v_T : T standard of shape lambda}`,
/// with the matrices of the generators and of the Jucys-Murphy elements.
pub struct ModuleMatrixSet {
    pub shape: StrictPartition,
    pub dim: usize,
    /// Standard (unbarred) tableaux of the shape, fixing the `v_T` order.
    pub tableaux: Vec<BarredStandardTableau>,
    /// Matrices of `s_1..s_{n-1}`.
    pub s_mats: Vec<Matrix<GaussianSurd>>,
    /// Matrices of `c_1..c_n`.
    pub c_mats: Vec<Matrix<GaussianSurd>>,
    /// Matrices of `x_1..x_n`.
    pub x_mats: Vec<Matrix<GaussianSurd>>,
    perm_cache: std::cell::RefCell<FxHashMap<Permutation, Matrix<GaussianSurd>>>,
}

impl ModuleMatrixSet {
    /// Basis index of `c^eps v_T`.
    pub fn basis_index(&self, eps: CliffordMask, t_idx: usize) -> usize {
        eps as usize * self.tableaux.len() + t_idx
    }

    /// Coordinate vector of `v_U` for a standard barred tableau of the same
    /// shape: `v_U = c_{a_1}..c_{a_r} v_T` over the barred entries of `U`.
    pub fn vector_of(&self, u: &BarredStandardTableau) -> Vec<GaussianSurd> {
        assert_eq!(u.shape(), &self.shape);
        let t = u.unbarred();
        let t_idx = self
            .tableaux
            .iter()
            .position(|s| *s == t)
            .expect("standard tableau of the shape");
        let mut eps: CliffordMask = 0;
        for a in u.barred_entries() {
            eps |= 1 << (a - 1);
        }
        let mut v = vec![GaussianSurd::zero(); self.dim];
        v[self.basis_index(eps, t_idx)] = GaussianSurd::one();
        v
    }

    /// Matrix of an arbitrary element of S_n in this module.
    pub fn matrix_of(&self, e: &SergeevElement) -> Matrix<GaussianSurd> {
        let mut out = Matrix::zero(self.dim, self.dim);
        for (b, coeff) in e.terms() {
            let pm = {
                let mut cache = self.perm_cache.borrow_mut();
                cache
                    .entry(b.perm.clone())
                    .or_insert_with(|| {
                        let mut m = Matrix::identity(self.dim);
                        for a in b.perm.adjacent_word() {
                            m = m.matmul(&self.s_mats[a - 1]);
                        }
                        m
                    })
                    .clone()
            };
            let mut m = pm;
            let mut rest = b.eps;
            while rest != 0 {
                let a = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                m = m.matmul(&self.c_mats[a]);
            }
            for c in 0..self.dim {
                for r in 0..self.dim {
                    let add = m.get(r, c) * coeff;
                    if !add.is_zero() {
                        let cur = out.get(r, c) + &add;
                        out.set(r, c, cur);
                    }
                }
            }
        }
        out
    }

    pub fn apply(&self, m: &Matrix<GaussianSurd>, v: &[GaussianSurd]) -> Vec<GaussianSurd> {
        let mut out = vec![GaussianSurd::zero(); self.dim];
        for (c, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for r in 0..self.dim {
                let add = m.get(r, c) * x;
                if !add.is_zero() {
                    out[r] = &out[r] + &add;
                }
            }
        }
        out
    }
}

/// Build the module for a shape: `s_a` acts by
/// `s_a v_T = (1/(k_{a+1}-k_a) + c_a c_{a+1}/(k_{a+1}+k_a)) v_T + Y_a(T) v_{s_a T}`
/// with `Y_a(T) = sqrt(1 - 1/(k_{a+1}-k_a)^2 - 1/(k_{a+1}+k_a)^2)`, while
/// `c_a` multiplies the Clifford prefix; `x_a` is assembled from the
/// transposition matrices afterwards.
pub fn module_matrices(shape: &StrictPartition) -> ModuleMatrixSet {
    let n = shape.size() as usize;
    let tableaux = enumerate_standard(shape);
    let g = tableaux.len();
    let dim = (1usize << n) * g;
    let contents: Vec<Vec<Surd>> = tableaux.iter().map(|t| t.signed_contents()).collect();

    let mut c_mats = Vec::new();
    for a in 1..=n {
        let mut m = Matrix::zero(dim, dim);
        for eps in 0..(1u32 << n) {
            let (sign, neps) = clifford_mul(1 << (a - 1), eps);
            for t in 0..g {
                let col = eps as usize * g + t;
                let row = neps as usize * g + t;
                let val = if sign < 0 {
                    -&GaussianSurd::one()
                } else {
                    GaussianSurd::one()
                };
                m.set(row, col, val);
            }
        }
        c_mats.push(m);
    }

    let mut s_mats = Vec::new();
    for a in 1..n {
        let mut m = Matrix::zero(dim, dim);
        for (t_idx, t) in tableaux.iter().enumerate() {
            let ka = &contents[t_idx][a - 1];
            let kb = &contents[t_idx][a];
            let diff_inv = (kb - ka).inv();
            let sum_inv = (kb + ka).inv();
            // images of v_T itself
            let swapped = t.swap_adjacent(a as u32);
            for eps in 0..(1u32 << n) {
                // s_a c^eps = (sign) c^{s_a(eps)} s_a
                let (csign, neps) = relabel_clifford(eps, |b| {
                    if b == a {
                        a + 1
                    } else if b == a + 1 {
                        a
                    } else {
                        b
                    }
                });
                let col = eps as usize * g + t_idx;
                let base_sign = GaussianSurd::from_int(csign as i64);
                // diagonal part: coeff1 * c^{neps} v_T
                {
                    let row = neps as usize * g + t_idx;
                    let add = &base_sign * &GaussianSurd::from_real(diff_inv.clone());
                    let cur = m.get(row, col) + &add;
                    m.set(row, col, cur);
                }
                // c_a c_{a+1} part
                {
                    let pair = (1 << (a - 1)) | (1 << a);
                    let (s2, eps2) = clifford_mul(neps, pair);
                    let row = eps2 as usize * g + t_idx;
                    let mut add = &base_sign * &GaussianSurd::from_real(sum_inv.clone());
                    if s2 < 0 {
                        add = -&add;
                    }
                    let cur = m.get(row, col) + &add;
                    m.set(row, col, cur);
                }
                // Y_a(T) v_{s_a T}
                if let Some(ts) = &swapped {
                    let ts_plain = ts.unbarred();
                    let t2 = tableaux.iter().position(|s| *s == ts_plain).unwrap();
                    let u = ka;
                    let v = kb;
                    let one = Surd::one();
                    let a_uv = &(&one - &(&(u - v) * &(u - v)).inv()) - &(&(u + v) * &(u + v)).inv();
                    let y = Surd::sqrt_rational(&a_uv.as_rational().expect("A(u,v) rational"))
                        .expect("A(u,v) nonnegative");
                    let row = neps as usize * g + t2;
                    let add = &base_sign * &GaussianSurd::from_real(y);
                    let cur = m.get(row, col) + &add;
                    m.set(row, col, cur);
                }
            }
        }
        s_mats.push(m);
    }

    // x_b = sum_{a<b} (a,b)(1 + c_a c_b) assembled from generator matrices
    let mut trans_memo: FxHashMap<(usize, usize), Matrix<GaussianSurd>> = FxHashMap::default();
    let mut trans = |a: usize, b: usize, s_mats: &Vec<Matrix<GaussianSurd>>| -> Matrix<GaussianSurd> {
        if let Some(m) = trans_memo.get(&(a, b)) {
            return m.clone();
        }
        let perm = Permutation::transposition(n, a, b);
        let mut m = Matrix::identity(dim);
        for w in perm.adjacent_word() {
            m = m.matmul(&s_mats[w - 1]);
        }
        trans_memo.insert((a, b), m.clone());
        m
    };
    let mut x_mats = Vec::new();
    for b in 1..=n {
        let mut m = Matrix::zero(dim, dim);
        for a in 1..b {
            let tm = trans(a, b, &s_mats);
            let cc = c_mats[a - 1].matmul(&c_mats[b - 1]);
            let mut part = Matrix::identity(dim);
            for r in 0..dim {
                for c in 0..dim {
                    let val = if r == c {
                        &GaussianSurd::one() + cc.get(r, c)
                    } else {
                        cc.get(r, c).clone()
                    };
                    part.set(r, c, val);
                }
            }
            let term = tm.matmul(&part);
            for r in 0..dim {
                for c in 0..dim {
                    let cur = m.get(r, c) + term.get(r, c);
                    m.set(r, c, cur);
                }
            }
        }
        x_mats.push(m);
    }

    ModuleMatrixSet {
        shape: shape.clone(),
        dim,
        tableaux,
        s_mats,
        c_mats,
        x_mats,
        perm_cache: std::cell::RefCell::new(FxHashMap::default()),
    }
}

/// Basis vectors `c_{d_{j_1}}..c_{d_{j_s}} E^U_delta v_U` (all `j` odd) of
/// the simple submodule attached to `delta`, as coordinate vectors.
pub fn submodule_basis(
    mm: &ModuleMatrixSet,
    delta: &[i8],
) -> Vec<Vec<GaussianSurd>> {
    let d_entries_len = mm.shape.len();
    let m = d_entries_len / 2;
    assert_eq!(delta.len(), m, "delta length must be floor(l/2)");
    submodule_vectors(mm, delta, None)
}

/// For odd `l(shape) = 2m + 1`, the two bases of the plus/minus split: the
/// extra projector `(1 ± (-1)^r i c_{d_l})/2` is applied, `r` the number of
/// bars of `U`, and the `j` run over odd values `<= 2m - 1`.
pub fn split_pm(
    mm: &ModuleMatrixSet,
    delta: &[i8],
) -> (Vec<Vec<GaussianSurd>>, Vec<Vec<GaussianSurd>>) {
    let l = mm.shape.len();
    assert!(l % 2 == 1, "plus/minus split needs odd l(shape)");
    (
        submodule_vectors(mm, delta, Some(1)),
        submodule_vectors(mm, delta, Some(-1)),
    )
}

fn submodule_vectors(
    mm: &ModuleMatrixSet,
    delta: &[i8],
    pm: Option<i8>,
) -> Vec<Vec<GaussianSurd>> {
    let n = mm.shape.size() as usize;
    let mut out = Vec::new();
    let tableaux = enumerate_standard_barred(&mm.shape);
    let half = GaussianSurd::from_rational(Rational::new(1.into(), 2.into()));
    for u in &tableaux {
        let d = u.diagonal_entries();
        let l = d.len();
        let m = l / 2;
        let e_delta = clifford_idempotent(u, delta);
        let e_mat = mm.matrix_of(&e_delta);
        let mut v = mm.vector_of(u);
        if let Some(sign) = pm {
            // (1 ± (-1)^r i c_{d_l})/2 applied first
            let r = u.barred_entries().len() as u32;
            let mut ic = c_gen(n, d[l - 1] as usize).scale(&GaussianSurd::i());
            if (r % 2 == 1) != (sign < 0) {
                // (-1)^r * sign < 0
                ic = ic.neg();
            }
            let proj = SergeevElement::one(n).add(&ic).scale(&half);
            v = mm.apply(&mm.matrix_of(&proj), &v);
        }
        v = mm.apply(&e_mat, &v);
        let j_max = if pm.is_some() { 2 * m } else { l + 1 };
        let odd_js: Vec<usize> = (1..j_max).step_by(2).collect();
        for subset in 0..(1usize << odd_js.len()) {
            let mut w = v.clone();
            // apply the c_{d_j} factors right to left so the written order matches
            for (bit, &j) in odd_js.iter().enumerate().rev() {
                if subset >> bit & 1 == 1 {
                    let cm = &mm.c_mats[d[j - 1] as usize - 1];
                    w = mm.apply(cm, &w);
                }
            }
            out.push(w);
        }
    }
    out
}

/// `sum_h h e_V h^{-1}` over all `2^n n!` basis elements `h`.
pub fn conjugation_sum(e_v: &SergeevElement) -> SergeevElement {
    let n = e_v.n();
    let mut out = SergeevElement::zero(n);
    for h in all_basis(n) {
        let (s_inv, h_inv) = h.inv();
        for (b, c) in e_v.terms() {
            let (s1, hb) = h.mul(b);
            let (s2, hbh) = hb.mul(&h_inv);
            let sign = s1 * s2 * s_inv;
            let coeff = if sign < 0 { -c } else { c.clone() };
            out.add_term(hbh, coeff);
        }
    }
    out
}

/// The character element `chi^lambda = sum_h tr(h | U^lambda) h^{-1}`, with
/// the trace taken in the simple module realized inside the big module via
/// `submodule_basis` (delta = (1,..,1); for odd length the two split halves
/// together).
pub fn character_element(shape: &StrictPartition) -> SergeevElement {
    let n = shape.size() as usize;
    let mm = module_matrices(shape);
    let l = shape.len();
    let m = l / 2;
    let delta = vec![1i8; m];
    let basis = if l % 2 == 1 {
        let (p, q) = split_pm(&mm, &delta);
        p.into_iter().chain(q).collect::<Vec<_>>()
    } else {
        submodule_basis(&mm, &delta)
    };
    assert_eq!(basis.len() as u64, shape.dim_simple(), "simple module dimension");
    let mat = Matrix::from_columns(mm.dim, basis.clone());
    let solver = Solver::new(&mat);
    assert_eq!(solver.rank(), basis.len(), "independent module basis");
    let mut out = SergeevElement::zero(n);
    for h in all_basis(n) {
        let h_elem = SergeevElement::from_basis(h.clone(), GaussianSurd::one());
        let hm = mm.matrix_of(&h_elem);
        let mut tr = GaussianSurd::zero();
        for (i, col) in basis.iter().enumerate() {
            let image = mm.apply(&hm, col);
            let coords = solver.solve(&image).expect("module closed under action");
            tr = &tr + &coords[i];
        }
        if tr.is_zero() {
            continue;
        }
        let (s_inv, h_inv) = h.inv();
        let coeff = if s_inv < 0 { -&tr } else { tr };
        let mut e = SergeevElement::zero(n);
        e.add_term(h_inv, coeff);
        out = out.add(&e);
    }
    out
}
