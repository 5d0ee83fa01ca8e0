//! Sparse parity-graded operators on tensor products of graded index spaces,
//! generic over the coefficient ring.
//!
//! A term is a tensor product of per-slot entries followed by a coefficient
//! on the right; multiplying two terms moves every entry of the right term
//! past the later entries and the coefficient of the left term, picking up
//! the Koszul sign.  Slots may hold plain graded matrix units, "queer" matrix
//! units (a pair basis with a type bit that adds modulo 2 under composition),
//! or the formal unit, which composes transparently and has no space
//! attached.
//!
//! The module also hosts the action of the Sergeev superalgebra on
//! `(C^{N|N})^{tensor n}`: `c_a` acts by `J_a` and `(a,b)` by `P_{ab}`.

use crate::poly::Poly;
use crate::scalar::{GaussianSurd, Rational, Surd};
use crate::sergeev::{SergeevBasis, SergeevElement};
use crate::shifted::BarredStandardTableau;
use rustc_hash::FxHashMap;
use smallvec::SmallVec;
use std::fmt;

/// Coefficient ring of a graded operator.  `parity_split` separates the even
/// and odd parts; rings without odd elements return themselves and zero.
pub trait SuperRing: Clone + PartialEq + fmt::Debug {
    fn zero() -> Self;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn parity_split(&self) -> (Self, Self);
}

impl SuperRing for GaussianSurd {
    fn zero() -> Self {
        GaussianSurd::zero()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn is_zero(&self) -> bool {
        GaussianSurd::is_zero(self)
    }
    fn parity_split(&self) -> (Self, Self) {
        (self.clone(), GaussianSurd::zero())
    }
}

impl SuperRing for Poly {
    fn zero() -> Self {
        Poly::zero(0)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn is_zero(&self) -> bool {
        Poly::is_zero(self)
    }
    fn parity_split(&self) -> (Self, Self) {
        (self.clone(), Poly::zero(self.nvars()))
    }
}

/// Graded index space.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Space {
    /// `C^{N|N}`: indices `-N..-1, 1..N`; negative indices are odd.
    Super(u8),
    /// `C^M`: indices `1..M`, all even.
    Even(u8),
}

impl Space {
    pub fn indices(&self) -> Vec<i8> {
        match *self {
            Space::Super(n) => {
                let n = n as i8;
                (-n..=-1).chain(1..=n).collect()
            }
            Space::Even(m) => (1..=m as i8).collect(),
        }
    }

    pub fn parity(&self, i: i8) -> u8 {
        match self {
            Space::Super(_) => u8::from(i < 0),
            Space::Even(_) => 0,
        }
    }
}

/// Index into a graded space.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Idx {
    pub space: Space,
    pub idx: i8,
}

impl Idx {
    pub fn new(space: Space, idx: i8) -> Self {
        Idx { space, idx }
    }

    pub fn parity(&self) -> u8 {
        self.space.parity(self.idx)
    }
}

/// One tensor factor of a term.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum SlotEntry {
    /// The formal unit: composes transparently, parity 0.
    Unit,
    /// Graded matrix unit `E_{row,col}`.
    Mat { row: Idx, col: Idx },
    /// Queer matrix unit: the `e`/`f` pair basis, with the type bit adding
    /// modulo 2 under composition (`e.e = e`, `e.f = f.e = f`, `f.f = e`).
    QMat { ty: bool, row: Idx, col: Idx },
}

impl SlotEntry {
    pub fn parity(&self) -> u8 {
        match self {
            SlotEntry::Unit => 0,
            SlotEntry::Mat { row, col } => (row.parity() + col.parity()) % 2,
            SlotEntry::QMat { ty, row, col } => {
                (u8::from(*ty) + row.parity() + col.parity()) % 2
            }
        }
    }

    /// Row index for matching; `None` for the unit.
    fn row_idx(&self) -> Option<Idx> {
        match self {
            SlotEntry::Unit => None,
            SlotEntry::Mat { row, .. } | SlotEntry::QMat { row, .. } => Some(*row),
        }
    }

    fn col_idx(&self) -> Option<Idx> {
        match self {
            SlotEntry::Unit => None,
            SlotEntry::Mat { col, .. } | SlotEntry::QMat { col, .. } => Some(*col),
        }
    }

    /// Slotwise composition; `None` encodes a vanishing delta.
    fn compose(&self, other: &SlotEntry) -> Option<SlotEntry> {
        match (self, other) {
            (SlotEntry::Unit, x) => Some(*x),
            (x, SlotEntry::Unit) => Some(*x),
            (SlotEntry::Mat { row: r1, col: c1 }, SlotEntry::Mat { row: r2, col: c2 }) => {
                if c1 == r2 {
                    Some(SlotEntry::Mat { row: *r1, col: *c2 })
                } else {
                    None
                }
            }
            (
                SlotEntry::QMat { ty: t1, row: r1, col: c1 },
                SlotEntry::QMat { ty: t2, row: r2, col: c2 },
            ) => {
                if c1 == r2 {
                    Some(SlotEntry::QMat {
                        ty: t1 ^ t2,
                        row: *r1,
                        col: *c2,
                    })
                } else {
                    None
                }
            }
            _ => panic!("mixed plain and queer entries in one slot"),
        }
    }
}

pub type TermKey = SmallVec<[SlotEntry; 4]>;

/// Sparse graded operator: a linear combination of slot-entry tensors with
/// coefficients in `R`.
#[derive(Clone)]
pub struct SuperOperator<R: SuperRing> {
    n_slots: usize,
    terms: FxHashMap<TermKey, R>,
}

impl<R: SuperRing> PartialEq for SuperOperator<R> {
    fn eq(&self, other: &Self) -> bool {
        if self.terms.is_empty() && other.terms.is_empty() {
            return true;
        }
        self.n_slots == other.n_slots && self.terms == other.terms
    }
}

impl<R: SuperRing> SuperOperator<R> {
    pub fn zero(n_slots: usize) -> Self {
        SuperOperator {
            n_slots,
            terms: FxHashMap::default(),
        }
    }

    /// Identity with explicit diagonal over the given per-slot spaces.
    pub fn identity(spaces: &[Space], one: R) -> Self {
        let mut op = SuperOperator::zero(spaces.len());
        for key in diagonal_keys(spaces) {
            op.add_term(key, one.clone());
        }
        op
    }

    pub fn n_slots(&self) -> usize {
        self.n_slots
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TermKey, &R)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, key: TermKey, coeff: R) {
        assert_eq!(key.len(), self.n_slots);
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            std::collections::hash_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::hash_map::Entry::Occupied(mut o) => {
                let sum = o.get().add(&coeff);
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.n_slots, other.n_slots);
        let mut out = self.clone();
        out.add_assign_ref(other);
        out
    }

    /// In-place sum, avoiding the clone of the accumulator.
    pub fn add_assign_ref(&mut self, other: &Self) {
        assert_eq!(self.n_slots, other.n_slots);
        for (k, c) in &other.terms {
            self.add_term(k.clone(), c.clone());
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let mut out = SuperOperator::zero(self.n_slots);
        for (k, c) in &self.terms {
            out.terms.insert(k.clone(), c.neg());
        }
        out
    }

    /// Multiply every coefficient by `r` on the right (no sign: the scalar
    /// slot sits rightmost).
    pub fn scale(&self, r: &R) -> Self {
        let mut out = SuperOperator::zero(self.n_slots);
        if r.is_zero() {
            return out;
        }
        for (k, c) in &self.terms {
            let prod = c.mul(r);
            if !prod.is_zero() {
                out.terms.insert(k.clone(), prod);
            }
        }
        out
    }

    pub fn map_coeffs<S: SuperRing>(&self, f: impl Fn(&R) -> S) -> SuperOperator<S> {
        let mut out = SuperOperator::zero(self.n_slots);
        for (k, c) in &self.terms {
            out.add_term(k.clone(), f(c));
        }
        out
    }

    fn has_units(&self) -> bool {
        self.terms
            .keys()
            .any(|k| k.iter().any(|e| matches!(e, SlotEntry::Unit)))
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n_slots, other.n_slots);
        if self.has_units() || other.has_units() {
            self.mul_naive(other)
        } else {
            self.mul_indexed(other)
        }
    }

    fn mul_naive(&self, other: &Self) -> Self {
        let mut out = SuperOperator::zero(self.n_slots);
        for (ka, ca) in &self.terms {
            let (even, odd) = ca.parity_split();
            for (part, par) in [(even, 0u8), (odd, 1u8)] {
                if part.is_zero() {
                    continue;
                }
                for (kb, cb) in &other.terms {
                    if let Some((key, sign)) = mul_term(ka, par, kb) {
                        let mut coeff = part.mul(cb);
                        if sign {
                            coeff = coeff.neg();
                        }
                        out.add_term(key, coeff);
                    }
                }
            }
        }
        out
    }

    fn mul_indexed(&self, other: &Self) -> Self {
        // index the right factor by its row multi-index
        let mut index: FxHashMap<SmallVec<[Idx; 4]>, Vec<(&TermKey, &R)>> = FxHashMap::default();
        for (kb, cb) in &other.terms {
            let rows: SmallVec<[Idx; 4]> = kb.iter().map(|e| e.row_idx().unwrap()).collect();
            index.entry(rows).or_default().push((kb, cb));
        }
        let mut out = SuperOperator::zero(self.n_slots);
        for (ka, ca) in &self.terms {
            let cols: SmallVec<[Idx; 4]> = ka.iter().map(|e| e.col_idx().unwrap()).collect();
            let Some(matches) = index.get(&cols) else {
                continue;
            };
            let (even, odd) = ca.parity_split();
            for (part, par) in [(even, 0u8), (odd, 1u8)] {
                if part.is_zero() {
                    continue;
                }
                for (kb, cb) in matches {
                    if let Some((key, sign)) = mul_term(ka, par, kb) {
                        let mut coeff = part.mul(cb);
                        if sign {
                            coeff = coeff.neg();
                        }
                        out.add_term(key, coeff);
                    }
                }
            }
        }
        out
    }

    /// Supertrace over all slots: diagonal terms weighted by
    /// `(-1)^{parity of the multi-index}`.  All slots must be plain square
    /// matrix units.
    pub fn supertrace(&self) -> R {
        let mut acc = R::zero();
        for (k, c) in &self.terms {
            let mut sign = 0u8;
            let mut diagonal = true;
            for e in k.iter() {
                match e {
                    SlotEntry::Mat { row, col } => {
                        if row != col {
                            diagonal = false;
                            break;
                        }
                        sign ^= row.parity();
                    }
                    _ => panic!("supertrace requires explicit square matrix slots"),
                }
            }
            if diagonal {
                let t = if sign == 1 { c.neg() } else { c.clone() };
                acc = acc.add(&t);
            }
        }
        acc
    }
}

impl<R: SuperRing> fmt::Debug for SuperOperator<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "SuperOperator[{} slots, {} terms]", self.n_slots, self.terms.len())?;
        let mut keys: Vec<_> = self.terms.keys().collect();
        keys.sort_by_key(|k| format!("{k:?}"));
        for k in keys.into_iter().take(24) {
            writeln!(f, "  {:?} -> {:?}", k, self.terms[k])?;
        }
        Ok(())
    }
}

/// `(key, negate)` of the product of two homogeneous terms, where the left
/// coefficient has parity `left_coeff_parity`.  The sign is
/// `sum_a |B_a| (sum_{b>a} |A_b| + |r_A|)` from moving the right term's
/// factors into place.
pub fn mul_term(
    ka: &TermKey,
    left_coeff_parity: u8,
    kb: &TermKey,
) -> Option<(TermKey, bool)> {
    debug_assert_eq!(ka.len(), kb.len());
    let mut sign = 0u8;
    let mut suffix = left_coeff_parity;
    // walk slots right to left so `suffix` is |r_A| + sum of A-parities
    // strictly to the right of the current slot
    for a in (0..ka.len()).rev() {
        sign ^= kb[a].parity() & suffix;
        suffix ^= ka[a].parity();
    }
    let mut key: TermKey = SmallVec::with_capacity(ka.len());
    for (ea, eb) in ka.iter().zip(kb.iter()) {
        key.push(ea.compose(eb)?);
    }
    Some((key, sign == 1))
}

/// All diagonal multi-index keys over the given spaces.
pub fn diagonal_keys(spaces: &[Space]) -> Vec<TermKey> {
    let mut keys: Vec<TermKey> = vec![SmallVec::new()];
    for space in spaces {
        let mut next = Vec::with_capacity(keys.len() * space.indices().len());
        for key in &keys {
            for i in space.indices() {
                let mut k = key.clone();
                let idx = Idx::new(*space, i);
                k.push(SlotEntry::Mat { row: idx, col: idx });
                next.push(k);
            }
        }
        keys = next;
    }
    keys
}

/// Add `coeff * (entries at the assigned slots) ox identity elsewhere`, with
/// the identity expanded explicitly over `space`.
pub fn add_embedded<R: SuperRing>(
    op: &mut SuperOperator<R>,
    space: Space,
    assigned: &[(usize, SlotEntry)],
    coeff: R,
) {
    let n = op.n_slots();
    let free: Vec<usize> = (0..n)
        .filter(|s| assigned.iter().all(|(a, _)| a != s))
        .collect();
    let mut fillings: Vec<TermKey> = vec![SmallVec::from_elem(SlotEntry::Unit, n)];
    for key in fillings.iter_mut() {
        for &(slot, entry) in assigned {
            key[slot] = entry;
        }
    }
    for &slot in &free {
        let mut next = Vec::with_capacity(fillings.len() * space.indices().len());
        for key in &fillings {
            for i in space.indices() {
                let mut k = key.clone();
                let idx = Idx::new(space, i);
                k[slot] = SlotEntry::Mat { row: idx, col: idx };
                next.push(k);
            }
        }
        fillings = next;
    }
    for key in fillings {
        op.add_term(key, coeff.clone());
    }
}

/// Image of the transposition `(a, b)`: `P_{ab} = sum_{ij} E_ij^(a) E_ji^(b) (-1)^{|j|}`.
pub fn p_op(n: usize, big_n: u8, a: usize, b: usize) -> SuperOperator<GaussianSurd> {
    assert!(a != b && a >= 1 && b >= 1 && a <= n && b <= n);
    let space = Space::Super(big_n);
    let mut op = SuperOperator::zero(n);
    for i in space.indices() {
        for j in space.indices() {
            let coeff = if space.parity(j) == 1 {
                GaussianSurd::from_int(-1)
            } else {
                GaussianSurd::one()
            };
            add_embedded(
                &mut op,
                space,
                &[
                    (
                        a - 1,
                        SlotEntry::Mat {
                            row: Idx::new(space, i),
                            col: Idx::new(space, j),
                        },
                    ),
                    (
                        b - 1,
                        SlotEntry::Mat {
                            row: Idx::new(space, j),
                            col: Idx::new(space, i),
                        },
                    ),
                ],
                coeff,
            );
        }
    }
    op
}

/// Image of `c_a`: `J_a` with `J = sum_i E_{i,-i} (-1)^{|i|}`.
pub fn j_op(n: usize, big_n: u8, a: usize) -> SuperOperator<GaussianSurd> {
    assert!(a >= 1 && a <= n);
    let space = Space::Super(big_n);
    let mut op = SuperOperator::zero(n);
    for i in space.indices() {
        let coeff = if space.parity(i) == 1 {
            GaussianSurd::from_int(-1)
        } else {
            GaussianSurd::one()
        };
        add_embedded(
            &mut op,
            space,
            &[(
                a - 1,
                SlotEntry::Mat {
                    row: Idx::new(space, i),
                    col: Idx::new(space, -i),
                },
            )],
            coeff,
        );
    }
    op
}

/// Image of the Jucys-Murphy element `x_b`:
/// `X^{(b)} = sum_{a<b} P_{ab}(1 + J_a J_b)`.
pub fn jm_image(n: usize, big_n: u8, b: usize) -> SuperOperator<GaussianSurd> {
    let space = Space::Super(big_n);
    let id = SuperOperator::identity(&vec![space; n], GaussianSurd::one());
    let mut out = SuperOperator::zero(n);
    for a in 1..b {
        let p = p_op(n, big_n, a, b);
        let jj = j_op(n, big_n, a).mul(&j_op(n, big_n, b));
        out.add_assign_ref(&p.mul(&id.add(&jj)));
    }
    out
}

/// Memoized action of S_n basis elements on `(C^{N|N})^{tensor n}`.
pub struct SergeevAction {
    n: usize,
    big_n: u8,
    perm_images: FxHashMap<crate::sergeev::Permutation, SuperOperator<GaussianSurd>>,
    eps_images: FxHashMap<u32, SuperOperator<GaussianSurd>>,
}

impl SergeevAction {
    pub fn new(n: usize, big_n: u8) -> Self {
        SergeevAction {
            n,
            big_n,
            perm_images: FxHashMap::default(),
            eps_images: FxHashMap::default(),
        }
    }

    fn perm_image(&mut self, p: &crate::sergeev::Permutation) -> SuperOperator<GaussianSurd> {
        if let Some(op) = self.perm_images.get(p) {
            return op.clone();
        }
        let space = Space::Super(self.big_n);
        let mut op = SuperOperator::identity(&vec![space; self.n], GaussianSurd::one());
        for a in p.adjacent_word() {
            op = op.mul(&p_op(self.n, self.big_n, a, a + 1));
        }
        self.perm_images.insert(p.clone(), op.clone());
        op
    }

    fn eps_image(&mut self, eps: u32) -> SuperOperator<GaussianSurd> {
        if let Some(op) = self.eps_images.get(&eps) {
            return op.clone();
        }
        let space = Space::Super(self.big_n);
        let mut op = SuperOperator::identity(&vec![space; self.n], GaussianSurd::one());
        let mut rest = eps;
        while rest != 0 {
            let a = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            op = op.mul(&j_op(self.n, self.big_n, a + 1));
        }
        self.eps_images.insert(eps, op.clone());
        op
    }

    pub fn basis_image(&mut self, b: &SergeevBasis) -> SuperOperator<GaussianSurd> {
        let p = self.perm_image(&b.perm);
        let e = self.eps_image(b.eps);
        p.mul(&e)
    }

    pub fn element_image(&mut self, e: &SergeevElement) -> SuperOperator<GaussianSurd> {
        assert_eq!(e.n(), self.n);
        let mut out = SuperOperator::zero(self.n);
        for (b, c) in e.terms() {
            out.add_assign_ref(&self.basis_image(b).scale(c));
        }
        out
    }
}

/// One-shot image of a Sergeev element on `(C^{N|N})^{tensor n}`.
pub fn sergeev_to_operator(e: &SergeevElement, big_n: u8) -> SuperOperator<GaussianSurd> {
    SergeevAction::new(e.n(), big_n).element_image(e)
}

/// Diagonal matrix `Y = sum_i y_i E_ii (-1)^{|i|}` (with `y_{-i} = y_i`) in
/// slot `a`, over `Poly` in `big_n` variables.
pub fn y_op(n: usize, big_n: u8, a: usize) -> SuperOperator<Poly> {
    let space = Space::Super(big_n);
    let nvars = big_n as usize;
    let mut op = SuperOperator::zero(n);
    for i in space.indices() {
        let mut coeff = Poly::var(nvars, i.unsigned_abs() as usize);
        if space.parity(i) == 1 {
            coeff = -&coeff;
        }
        let idx = Idx::new(space, i);
        add_embedded(
            &mut op,
            space,
            &[(a - 1, SlotEntry::Mat { row: idx, col: idx })],
            coeff,
        );
    }
    op
}

/// The diagonal product `Y_1 ... Y_n` assembled in one pass.
pub fn y_product(n: usize, big_n: u8) -> SuperOperator<Poly> {
    let space = Space::Super(big_n);
    let nvars = big_n as usize;
    let mut op = SuperOperator::zero(n);
    for key in diagonal_keys(&vec![space; n]) {
        let mut coeff = Poly::one(nvars);
        for e in key.iter() {
            let SlotEntry::Mat { row, .. } = e else { unreachable!() };
            let mut v = Poly::var(nvars, row.idx.unsigned_abs() as usize);
            if row.parity() == 1 {
                v = -&v;
            }
            coeff = &coeff * &v;
        }
        op.add_term(key, coeff);
    }
    op
}

/// Both sides of the supertrace character identity:
/// `str(E_U Y_1..Y_n)` and the Schur Q-polynomial of the shape.
pub fn character_identity(u: &BarredStandardTableau, big_n: u8) -> (Poly, Poly) {
    let n = u.size() as usize;
    let e = crate::sergeev::idempotent(u);
    assert!(e.is_real(), "idempotent has real coefficients");
    let image = sergeev_to_operator(&e, big_n);
    let as_poly = image.map_coeffs(|c| {
        let mut p = Poly::zero(big_n as usize);
        if !c.is_zero() {
            p = Poly::constant(big_n as usize, c.re.clone());
        }
        p
    });
    let lhs = as_poly.mul(&y_product(n, big_n)).supertrace();
    let rhs = crate::schur_q::schur_q(u.shape(), big_n as usize);
    (lhs, rhs)
}

/// Scalar helpers used when scaling Gaussian operators by rationals.
pub fn gs_rat(r: Rational) -> GaussianSurd {
    GaussianSurd::from_rational(r)
}

pub fn gs_surd(s: Surd) -> GaussianSurd {
    GaussianSurd::from_real(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;
    use crate::sergeev::{all_basis, c_gen, jm, s_gen, transposition};
    use crate::shifted::{enumerate_standard_barred, strict_partitions};

    fn id_op(n: usize, big_n: u8) -> SuperOperator<GaussianSurd> {
        SuperOperator::identity(&vec![Space::Super(big_n); n], GaussianSurd::one())
    }

    #[test]
    fn p_squares_to_identity() {
        for big_n in [1u8, 2] {
            let p = p_op(2, big_n, 1, 2);
            assert_eq!(p.mul(&p), id_op(2, big_n));
        }
    }

    #[test]
    fn j_squares_to_minus_identity() {
        for big_n in [1u8, 2] {
            let j = j_op(2, big_n, 1);
            assert_eq!(j.mul(&j), id_op(2, big_n).neg());
            // relation transport: image of s_a c_a equals image of c_{a+1} s_a
            let n = 2;
            let lhs = sergeev_to_operator(&s_gen(n, 1).mul(&c_gen(n, 1)), big_n);
            let rhs = sergeev_to_operator(&c_gen(n, 2).mul(&s_gen(n, 1)), big_n);
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn action_is_superalgebra_homomorphism() {
        // all defining relations transported through the action, n <= 3, N = 2
        let n = 3;
        let big_n = 2;
        let check = |x: &SergeevElement, y: &SergeevElement| {
            assert_eq!(
                sergeev_to_operator(&x.mul(y), big_n),
                sergeev_to_operator(x, big_n).mul(&sergeev_to_operator(y, big_n))
            );
        };
        for a in 1..n {
            check(&s_gen(n, a), &s_gen(n, a));
            check(&s_gen(n, a), &c_gen(n, a));
            check(&c_gen(n, a), &s_gen(n, a));
        }
        for a in 1..=n {
            for b in 1..=n {
                check(&c_gen(n, a), &c_gen(n, b));
            }
        }
        check(&s_gen(n, 1), &s_gen(n, 2));
        check(&jm(n, 2), &jm(n, 3));
        check(&transposition(n, 1, 3), &c_gen(n, 2));
    }

    #[test]
    fn supertrace_basics() {
        // str(identity on C^{N|N}) = 0
        let one = SuperOperator::identity(&[Space::Super(2)], GaussianSurd::one());
        assert!(one.supertrace().is_zero());
        // str(E_kk) = (-1)^{|k|}
        for (k, expected) in [(1i8, 1i64), (-1, -1)] {
            let mut op = SuperOperator::zero(1);
            let idx = Idx::new(Space::Super(2), k);
            op.add_term(
                smallvec::smallvec![SlotEntry::Mat { row: idx, col: idx }],
                GaussianSurd::one(),
            );
            assert_eq!(op.supertrace(), GaussianSurd::from_int(expected));
        }
    }

    #[test]
    fn supertrace_cyclic_on_homogeneous_ops() {
        // str(AB) = (-1)^{|A||B|} str(BA) on random-ish homogeneous sparse ops
        let space = Space::Super(2);
        let idxs = space.indices();
        let mk = |entries: &[((i8, i8), (i8, i8))]| {
            let mut op = SuperOperator::zero(2);
            for &((r1, c1), (r2, c2)) in entries {
                op.add_term(
                    smallvec::smallvec![
                        SlotEntry::Mat {
                            row: Idx::new(space, r1),
                            col: Idx::new(space, c1)
                        },
                        SlotEntry::Mat {
                            row: Idx::new(space, r2),
                            col: Idx::new(space, c2)
                        }
                    ],
                    GaussianSurd::one(),
                );
            }
            op
        };
        // parity of a term
        let parity = |op: &SuperOperator<GaussianSurd>| -> Option<u8> {
            let mut par = None;
            for (k, _) in op.terms() {
                let p = k.iter().map(|e| e.parity()).sum::<u8>() % 2;
                match par {
                    None => par = Some(p),
                    Some(q) if q == p => {}
                    _ => return None,
                }
            }
            par
        };
        let mut seed = 9u64;
        let mut next = || {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (seed >> 33) as usize
        };
        for _ in 0..30 {
            let pick = |next: &mut dyn FnMut() -> usize| {
                (idxs[next() % idxs.len()], idxs[next() % idxs.len()])
            };
            let (r1, c1) = pick(&mut next);
            let (r2, c2) = pick(&mut next);
            let (r3, c3) = pick(&mut next);
            let (r4, c4) = pick(&mut next);
            let a = mk(&[((r1, c1), (r2, c2))]);
            let b = mk(&[((r3, c3), (r4, c4))]);
            let (pa, pb) = (parity(&a).unwrap(), parity(&b).unwrap());
            let lhs = a.mul(&b).supertrace();
            let mut rhs = b.mul(&a).supertrace();
            if pa & pb == 1 {
                rhs = -&rhs;
            }
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn jm_image_matches_action() {
        // X^{(1)} = 0 and X^{(b)} agrees with the image of x_b
        for n in 2..=3usize {
            for big_n in [1u8, 2] {
                assert!(jm_image(n, big_n, 1).is_zero());
                for b in 2..=n {
                    assert_eq!(
                        jm_image(n, big_n, b),
                        sergeev_to_operator(&jm(n, b), big_n),
                        "n={n} N={big_n} b={b}"
                    );
                }
            }
        }
    }

    #[test]
    fn str_y_is_twice_power_sum() {
        // str Y = 2(y_1 + ... + y_N)
        for big_n in [1u8, 2, 3] {
            let y = y_op(1, big_n, 1);
            let nvars = big_n as usize;
            let mut expected = Poly::zero(nvars);
            for k in 1..=nvars {
                expected = &expected + &Poly::var(nvars, k);
            }
            expected = expected.scale(&Surd::from_int(2));
            assert_eq!(y.supertrace(), expected);
        }
    }

    #[test]
    fn y_product_consistent_with_factors() {
        let n = 2;
        let big_n = 2;
        let via_factors = y_op(n, big_n, 1).mul(&y_op(n, big_n, 2));
        assert_eq!(via_factors, y_product(n, big_n));
    }

    #[test]
    fn conjugation_invariance_of_character_trace() {
        // str(H E_V H^{-1} Y_1 Y_2) = str(E_V Y_1 Y_2) for all basis images H
        let n = 2;
        let big_n = 2;
        let u = BarredStandardTableau::parse("1,2").unwrap();
        let e = crate::sergeev::idempotent(&u);
        let mut action = SergeevAction::new(n, big_n);
        let e_img = action.element_image(&e);
        let yprod = y_product(n, big_n);
        let to_poly = |op: &SuperOperator<GaussianSurd>| {
            op.map_coeffs(|c| {
                assert!(c.is_real());
                Poly::constant(big_n as usize, c.re.clone())
            })
        };
        let base = to_poly(&e_img).mul(&yprod).supertrace();
        for h in all_basis(n) {
            let himg = action.basis_image(&h);
            let (sgn, hinv) = h.inv();
            let mut hinv_img = action.basis_image(&hinv);
            if sgn < 0 {
                hinv_img = hinv_img.neg();
            }
            let conj = himg.mul(&e_img).mul(&hinv_img);
            let got = to_poly(&conj).mul(&yprod).supertrace();
            assert_eq!(got, base, "H = {h:?}");
        }
    }

    #[test]
    fn character_identity_examples() {
        // lambda = (1), N = 2: both sides 2(y1 + y2)
        let u = BarredStandardTableau::parse("1").unwrap();
        let (lhs, rhs) = character_identity(&u, 2);
        assert_eq!(lhs, rhs);
        assert_eq!(
            rhs,
            (&Poly::var(2, 1) + &Poly::var(2, 2)).scale(&Surd::from_int(2))
        );
        // lambda = (2), N = 1: both sides 2 y1^2
        let u = BarredStandardTableau::parse("1,2").unwrap();
        let (lhs, rhs) = character_identity(&u, 1);
        assert_eq!(lhs, rhs);
        let y1 = Poly::var(1, 1);
        assert_eq!(rhs, (&y1 * &y1).scale(&Surd::from_int(2)));
        // lambda = (2,1), N = 1: both sides vanish
        let u = BarredStandardTableau::parse("1,2;3").unwrap();
        let (lhs, rhs) = character_identity(&u, 1);
        assert!(lhs.is_zero() && rhs.is_zero());
    }

    #[test]
    fn character_identity_small_sweep() {
        for n in 1..=3u32 {
            for shape in strict_partitions(n) {
                for big_n in [2u8] {
                    for u in enumerate_standard_barred(&shape) {
                        let (lhs, rhs) = character_identity(&u, big_n);
                        assert_eq!(lhs, rhs, "{} N={big_n}", u.to_compact());
                    }
                }
            }
        }
    }

    #[test]
    fn idempotent_images_are_idempotent() {
        let n = 3;
        let big_n = 2;
        let mut table = crate::sergeev::IdempotentTable::new();
        let mut action = SergeevAction::new(n, big_n);
        let all = table.all_for_n(n as u32);
        let images: Vec<_> = all.iter().map(|(_, e)| action.element_image(e)).collect();
        for (i, a) in images.iter().enumerate() {
            assert_eq!(a.mul(a), *a, "projector");
            for (j, b) in images.iter().enumerate() {
                if i != j {
                    assert!(a.mul(b).is_zero(), "orthogonal images");
                }
            }
        }
        let _ = rat(0);
    }
}
