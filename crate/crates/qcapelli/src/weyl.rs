//! The polynomial superalgebra on generators `x_{ak}` (`a` in `-M..M`
//! nonzero, `k` in `1..=N`, parity of `x_{ak}` = parity of `a`), its algebra
//! of differential operators in normal form, the representations of q_N by
//! differential operators, the X/D matrix factorizations and the universal
//! Capelli identity checks.
//!
//! Normal form puts every variable to the left of every derivation; both
//! blocks are written in ascending variable order, and all signs follow from
//! that fixed order.

use crate::scalar::{GaussianSurd, Rational, Surd};
use crate::sergeev::character_element;
use crate::shifted::{BarredStandardTableau, StrictPartition};
use crate::tensor::{
    jm_image, sergeev_to_operator, Idx, SlotEntry, Space, SuperOperator, SuperRing, TermKey,
};
use crate::uqn::{
    bracket, f_matrix, g_matrix_q, odd_jm_matrix_q, quantum_immanant, PBWElement, QGenerator,
};
use rustc_hash::FxHashMap;
use smallvec::SmallVec;
use std::fmt;

/// Variable context: `2 M N` generators `x_{ak}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct WeylCtx {
    pub m: u8,
    pub n: u8,
}

impl WeylCtx {
    pub fn new(m: u8, n: u8) -> Self {
        assert!(m >= 1 && n >= 1);
        WeylCtx { m, n }
    }

    pub fn nvars(&self) -> usize {
        2 * self.m as usize * self.n as usize
    }

    /// Variable id of `x_{ak}`; `a` runs `-M..-1, 1..M` in ascending order.
    pub fn var_id(&self, a: i8, k: u8) -> usize {
        assert!(a != 0 && a.unsigned_abs() <= self.m && k >= 1 && k <= self.n);
        let arank = if a < 0 {
            (a + self.m as i8) as usize
        } else {
            self.m as usize + a as usize - 1
        };
        arank * self.n as usize + (k as usize - 1)
    }

    pub fn a_of(&self, id: usize) -> i8 {
        let arank = (id / self.n as usize) as i8;
        if arank < self.m as i8 {
            arank - self.m as i8
        } else {
            arank - self.m as i8 + 1
        }
    }

    pub fn k_of(&self, id: usize) -> u8 {
        (id % self.n as usize) as u8 + 1
    }

    pub fn var_parity(&self, id: usize) -> u8 {
        u8::from(self.a_of(id) < 0)
    }
}

/// Exponent block pair `(x exponents, then derivation exponents)`.
type DKey = SmallVec<[u8; 16]>;

/// Normal-ordered element of the differential-operator superalgebra.
#[derive(Clone)]
pub struct DiffOp {
    ctx: WeylCtx,
    terms: FxHashMap<DKey, GaussianSurd>,
}

impl PartialEq for DiffOp {
    fn eq(&self, other: &Self) -> bool {
        if self.terms.is_empty() && other.terms.is_empty() {
            return true;
        }
        self.ctx == other.ctx && self.terms == other.terms
    }
}

impl DiffOp {
    pub fn zero(ctx: WeylCtx) -> Self {
        DiffOp {
            ctx,
            terms: FxHashMap::default(),
        }
    }

    pub fn scalar(ctx: WeylCtx, c: GaussianSurd) -> Self {
        let mut op = DiffOp::zero(ctx);
        op.add_term(smallvec::smallvec![0; 2 * ctx.nvars()], c);
        op
    }

    pub fn one(ctx: WeylCtx) -> Self {
        DiffOp::scalar(ctx, GaussianSurd::one())
    }

    /// The single term `x_{ak}` or, with `derivation`, `d/dx_{ak}`.
    pub fn generator(ctx: WeylCtx, a: i8, k: u8, derivation: bool) -> Self {
        let nv = ctx.nvars();
        let mut key: DKey = smallvec::smallvec![0; 2 * nv];
        let id = ctx.var_id(a, k);
        key[if derivation { nv + id } else { id }] = 1;
        let mut op = DiffOp::zero(ctx);
        op.add_term(key, GaussianSurd::one());
        op
    }

    pub fn ctx(&self) -> WeylCtx {
        self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&DKey, &GaussianSurd)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, key: DKey, c: GaussianSurd) {
        debug_assert_eq!(key.len(), 2 * self.ctx.nvars());
        if c.is_zero() {
            return;
        }
        match self.terms.entry(key) {
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

    fn ctx_compat(&self, other: &Self) -> WeylCtx {
        if self.terms.is_empty() {
            return other.ctx;
        }
        if other.terms.is_empty() {
            return self.ctx;
        }
        assert_eq!(self.ctx, other.ctx, "mixed variable contexts");
        self.ctx
    }

    pub fn add(&self, other: &Self) -> Self {
        let ctx = self.ctx_compat(other);
        let mut out = DiffOp::zero(ctx);
        for (k, c) in self.terms.iter().chain(other.terms.iter()) {
            out.add_term(k.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let mut out = DiffOp::zero(self.ctx);
        for (k, c) in &self.terms {
            out.terms.insert(k.clone(), -c);
        }
        out
    }

    pub fn scale(&self, c: &GaussianSurd) -> Self {
        let mut out = DiffOp::zero(self.ctx);
        if c.is_zero() {
            return out;
        }
        for (k, v) in &self.terms {
            let p = v * c;
            if !p.is_zero() {
                out.terms.insert(k.clone(), p);
            }
        }
        out
    }

    fn term_parity(&self, key: &DKey) -> u8 {
        let nv = self.ctx.nvars();
        let mut p = 0u8;
        for id in 0..nv {
            if self.ctx.var_parity(id) == 1 {
                p ^= (key[id] + key[nv + id]) & 1;
            }
        }
        p
    }

    pub fn mul(&self, other: &Self) -> Self {
        let ctx = self.ctx_compat(other);
        let nv = ctx.nvars();
        let mut out = DiffOp::zero(ctx);
        let mut scratch = Vec::new();
        for (k1, c1) in &self.terms {
            for (k2, c2) in &other.terms {
                scratch.clear();
                compose_terms(ctx, k1, k2, &mut scratch);
                for (key, int_coeff) in &scratch {
                    debug_assert_eq!(key.len(), 2 * nv);
                    let coeff = (c1 * c2).scale(&Rational::from_integer((*int_coeff).into()));
                    out.add_term(key.clone(), coeff);
                }
            }
        }
        out
    }

    /// Super-commutator with parity handling.
    pub fn super_commutator(&self, other: &Self) -> Self {
        let ctx = self.ctx_compat(other);
        let (se, so) = self.parity_split();
        let (oe, oo) = other.parity_split();
        let mut out = DiffOp::zero(ctx);
        for (a, pa) in [(se, 0u8), (so, 1u8)] {
            if a.is_zero() {
                continue;
            }
            for (b, pb) in [(oe.clone(), 0u8), (oo.clone(), 1u8)] {
                if b.is_zero() {
                    continue;
                }
                let ab = a.mul(&b);
                let ba = b.mul(&a);
                let term = if pa & pb == 1 { ab.add(&ba) } else { ab.sub(&ba) };
                out = out.add(&term);
            }
        }
        out
    }

    /// Apply to a polynomial (kill every term that still carries a
    /// derivation after composing).
    pub fn apply(&self, p: &SuperPolynomial) -> SuperPolynomial {
        let ctx = self.ctx;
        let nv = ctx.nvars();
        let mut out = SuperPolynomial::zero(ctx);
        let mut scratch = Vec::new();
        for (k1, c1) in &self.terms {
            for (k2, c2) in &p.terms {
                let mut key2: DKey = smallvec::smallvec![0; 2 * nv];
                key2[..nv].copy_from_slice(k2);
                scratch.clear();
                compose_terms(ctx, k1, &key2, &mut scratch);
                for (key, int_coeff) in &scratch {
                    if key[nv..].iter().any(|&e| e != 0) {
                        continue; // a derivation survived; acts as zero on 1
                    }
                    let coeff = (c1 * c2).scale(&Rational::from_integer((*int_coeff).into()));
                    out.add_term(key[..nv].into(), coeff);
                }
            }
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let nv = self.ctx.nvars();
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|a, b| a.0.cmp(b.0));
        serde_json::Value::Array(
            terms
                .into_iter()
                .map(|(k, c)| {
                    let fmt_block = |block: &[u8]| {
                        let mut parts = Vec::new();
                        for (id, &e) in block.iter().enumerate() {
                            if e > 0 {
                                parts.push(serde_json::json!({
                                    "a": self.ctx.a_of(id),
                                    "k": self.ctx.k_of(id),
                                    "exp": e,
                                }));
                            }
                        }
                        parts
                    };
                    serde_json::json!({
                        "x": fmt_block(&k[..nv]),
                        "d": fmt_block(&k[nv..]),
                        "coeff": c.to_json(),
                    })
                })
                .collect(),
        )
    }
}

impl fmt::Debug for DiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let nv = self.ctx.nvars();
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|a, b| a.0.cmp(b.0));
        for (i, (k, c)) in terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c:?})")?;
            for id in 0..nv {
                if k[id] > 0 {
                    write!(f, " x[{},{}]^{}", self.ctx.a_of(id), self.ctx.k_of(id), k[id])?;
                }
            }
            for id in 0..nv {
                if k[nv + id] > 0 {
                    write!(f, " d[{},{}]^{}", self.ctx.a_of(id), self.ctx.k_of(id), k[nv + id])?;
                }
            }
        }
        Ok(())
    }
}

impl SuperRing for DiffOp {
    fn zero() -> Self {
        DiffOp {
            ctx: WeylCtx { m: 1, n: 1 },
            terms: FxHashMap::default(),
        }
    }
    fn add(&self, other: &Self) -> Self {
        DiffOp::add(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        DiffOp::mul(self, other)
    }
    fn neg(&self) -> Self {
        DiffOp::neg(self)
    }
    fn is_zero(&self) -> bool {
        DiffOp::is_zero(self)
    }
    fn parity_split(&self) -> (Self, Self) {
        let mut even = DiffOp::zero(self.ctx);
        let mut odd = DiffOp::zero(self.ctx);
        for (k, c) in &self.terms {
            if self.term_parity(k) == 0 {
                even.terms.insert(k.clone(), c.clone());
            } else {
                odd.terms.insert(k.clone(), c.clone());
            }
        }
        (even, odd)
    }
}

/// Normal ordering of `(x^A d^B)(x^C d^D)`: pushes every derivation of `B`
/// through `x^C` by the super-Leibniz rule, then merges blocks.  Appends
/// `(key, integer coefficient)` pairs to `out`.
fn compose_terms(ctx: WeylCtx, k1: &DKey, k2: &DKey, out: &mut Vec<(DKey, i64)>) {
    let nv = ctx.nvars();
    let (a, b) = k1.split_at(nv);
    let (c, d) = k2.split_at(nv);
    let mut b: SmallVec<[u8; 16]> = b.into();
    let mut c: SmallVec<[u8; 16]> = c.into();
    let mut d: SmallVec<[u8; 16]> = d.into();
    compose_rec(ctx, a, &mut b, &mut c, &mut d, 1, out);
}

fn compose_rec(
    ctx: WeylCtx,
    a: &[u8],
    b: &mut SmallVec<[u8; 16]>,
    c: &mut SmallVec<[u8; 16]>,
    d: &mut SmallVec<[u8; 16]>,
    coeff: i64,
    out: &mut Vec<(DKey, i64)>,
) {
    let nv = ctx.nvars();
    // rightmost derivation of the left factor touches x^C first
    let u = match (0..nv).rev().find(|&v| b[v] > 0) {
        None => {
            // merge x^A with x^C
            let mut sign = 1i64;
            let mut key: DKey = smallvec::smallvec![0; 2 * nv];
            for v in 0..nv {
                let total = a[v] as u16 + c[v] as u16;
                if ctx.var_parity(v) == 1 {
                    if total > 1 {
                        return; // odd variable squared
                    }
                    if c[v] == 1 {
                        // x_v of C moves left past the odd part of A above v
                        let mut crossings = 0u8;
                        for w in v + 1..nv {
                            if ctx.var_parity(w) == 1 {
                                crossings ^= a[w] & 1;
                            }
                        }
                        if crossings == 1 {
                            sign = -sign;
                        }
                    }
                }
                key[v] = total as u8;
            }
            for v in 0..nv {
                key[nv + v] = d[v];
            }
            out.push((key, coeff * sign));
            return;
        }
        Some(u) => u,
    };
    b[u] -= 1;
    let u_odd = ctx.var_parity(u) == 1;

    // derivative branch: d_u consumes one x_u of C
    if c[u] > 0 {
        let mut sign = 1i64;
        if u_odd {
            let mut crossings = 0u8;
            for v in 0..u {
                if ctx.var_parity(v) == 1 {
                    crossings ^= c[v] & 1;
                }
            }
            if crossings == 1 {
                sign = -1;
            }
        }
        let mult = c[u] as i64;
        c[u] -= 1;
        compose_rec(ctx, a, b, c, d, coeff * mult * sign, out);
        c[u] += 1;
    }

    // pass-through branch: d_u crosses all of x^C and joins d^D
    let can_join = !(u_odd && d[u] > 0);
    if can_join {
        let mut sign = 1i64;
        if u_odd {
            let mut crossings = 0u8;
            for v in 0..nv {
                if ctx.var_parity(v) == 1 {
                    crossings ^= c[v] & 1;
                }
            }
            // then slide right past the derivations of D below u
            for v in 0..u {
                if ctx.var_parity(v) == 1 {
                    crossings ^= d[v] & 1;
                }
            }
            if crossings == 1 {
                sign = -1;
            }
        }
        d[u] += 1;
        compose_rec(ctx, a, b, c, d, coeff * sign, out);
        d[u] -= 1;
    }

    b[u] += 1;
}

/// Polynomial in the `x_{ak}` (no derivations).
#[derive(Clone)]
pub struct SuperPolynomial {
    ctx: WeylCtx,
    terms: FxHashMap<SmallVec<[u8; 16]>, GaussianSurd>,
}

impl PartialEq for SuperPolynomial {
    fn eq(&self, other: &Self) -> bool {
        if self.terms.is_empty() && other.terms.is_empty() {
            return true;
        }
        self.ctx == other.ctx && self.terms == other.terms
    }
}

impl SuperPolynomial {
    pub fn zero(ctx: WeylCtx) -> Self {
        SuperPolynomial {
            ctx,
            terms: FxHashMap::default(),
        }
    }

    pub fn one(ctx: WeylCtx) -> Self {
        let mut p = SuperPolynomial::zero(ctx);
        p.add_term(smallvec::smallvec![0; ctx.nvars()], GaussianSurd::one());
        p
    }

    pub fn monomial(ctx: WeylCtx, exps: &[u8]) -> Self {
        let mut p = SuperPolynomial::zero(ctx);
        p.add_term(exps.into(), GaussianSurd::one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, key: SmallVec<[u8; 16]>, c: GaussianSurd) {
        debug_assert_eq!(key.len(), self.ctx.nvars());
        if c.is_zero() {
            return;
        }
        match self.terms.entry(key) {
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
}

/// All monomial exponent vectors of total degree `<= d` (odd variables at
/// most once).
pub fn monomials_up_to_degree(ctx: WeylCtx, d: u32) -> Vec<SmallVec<[u8; 16]>> {
    let nv = ctx.nvars();
    let mut out = Vec::new();
    let mut cur: SmallVec<[u8; 16]> = smallvec::smallvec![0; nv];
    fn rec(
        ctx: WeylCtx,
        v: usize,
        left: u32,
        cur: &mut SmallVec<[u8; 16]>,
        out: &mut Vec<SmallVec<[u8; 16]>>,
    ) {
        let nv = ctx.nvars();
        if v == nv {
            out.push(cur.clone());
            return;
        }
        let cap = if ctx.var_parity(v) == 1 { left.min(1) } else { left };
        for e in 0..=cap {
            cur[v] = e as u8;
            rec(ctx, v + 1, left - e, cur, out);
        }
        cur[v] = 0;
    }
    rec(ctx, 0, d, &mut cur, &mut out);
    out
}

/// `true` iff `op` kills every polynomial of total degree `<= d`.
pub fn annihilation_degree(op: &DiffOp, d: u32) -> bool {
    let ctx = op.ctx();
    monomials_up_to_degree(ctx, d)
        .into_iter()
        .all(|m| op.apply(&SuperPolynomial::monomial(ctx, &m)).is_zero())
}

/// Representation of a canonical generator by a differential operator:
/// `F_kl -> -sum_a x_{al} d_{ka}` and `F_{k,-l} -> i sum_a x_{al} d_{k,-a}`.
pub fn rep_gen(ctx: WeylCtx, g: QGenerator) -> DiffOp {
    let nv = ctx.nvars();
    let mut op = DiffOp::zero(ctx);
    let k = g.i as u8;
    let l = g.j;
    let m = ctx.m as i8;
    if l > 0 {
        for a in (-m..=m).filter(|&a| a != 0) {
            let mut key: DKey = smallvec::smallvec![0; 2 * nv];
            key[ctx.var_id(a, l as u8)] += 1;
            key[nv + ctx.var_id(a, k)] += 1;
            op.add_term(key, GaussianSurd::from_int(-1));
        }
    } else {
        for a in (-m..=m).filter(|&a| a != 0) {
            let mut key: DKey = smallvec::smallvec![0; 2 * nv];
            key[ctx.var_id(a, (-l) as u8)] += 1;
            key[nv + ctx.var_id(-a, k)] += 1;
            op.add_term(key, GaussianSurd::i());
        }
    }
    op
}

/// Untwisted action: `F_kl -> sum_a x_{ak} d_{la}` and
/// `F_{k,-l} -> sum_a x_{ak} d_{l,-a}`.
pub fn rep_howe_gen(ctx: WeylCtx, g: QGenerator) -> DiffOp {
    let nv = ctx.nvars();
    let mut op = DiffOp::zero(ctx);
    let k = g.i as u8;
    let l = g.j;
    let m = ctx.m as i8;
    if l > 0 {
        for a in (-m..=m).filter(|&a| a != 0) {
            let mut key: DKey = smallvec::smallvec![0; 2 * nv];
            key[ctx.var_id(a, k)] += 1;
            key[nv + ctx.var_id(a, l as u8)] += 1;
            op.add_term(key, GaussianSurd::one());
        }
    } else {
        for a in (-m..=m).filter(|&a| a != 0) {
            let mut key: DKey = smallvec::smallvec![0; 2 * nv];
            key[ctx.var_id(a, k)] += 1;
            key[nv + ctx.var_id(-a, (-l) as u8)] += 1;
            op.add_term(key, GaussianSurd::one());
        }
    }
    op
}

/// The twisting automorphism: `F_kl -> -F_lk`, `F_{k,-l} -> i F_{l,-k}`.
pub fn automorphism_gen(g: QGenerator) -> PBWElement {
    let k = g.i;
    let l = g.j;
    if l > 0 {
        PBWElement::gen(QGenerator::new(l, k)).neg()
    } else {
        PBWElement::gen(QGenerator::new(-l, -k)).scale(&GaussianSurd::i())
    }
}

/// Extend a generator map multiplicatively to normal-ordered elements.
pub fn rep_element(ctx: WeylCtx, z: &PBWElement) -> DiffOp {
    let mut out = DiffOp::zero(ctx);
    for (m, c) in z.terms() {
        let mut acc = DiffOp::scalar(ctx, c.clone());
        for (g, e) in m.iter() {
            for _ in 0..*e {
                acc = acc.mul(&rep_gen(ctx, *g));
            }
        }
        out = out.add(&acc);
    }
    out
}

/// The twisted action equals the untwisted one composed with the
/// automorphism, generator by generator.
pub fn twist_consistency(m: u8, n: u8) -> bool {
    let ctx = WeylCtx::new(m, n);
    for g in QGenerator::all(n) {
        let direct = rep_gen(ctx, g);
        let mut via = DiffOp::zero(ctx);
        for (mono, c) in automorphism_gen(g).terms() {
            assert_eq!(mono.len(), 1);
            let (h, e) = mono[0];
            assert_eq!(e, 1);
            via = via.add(&rep_howe_gen(ctx, h).scale(c));
        }
        if direct != via {
            return false;
        }
    }
    true
}

fn qmat(space_dim: u8, ty: bool, row: i8, col_space_dim: u8, col: i8) -> SlotEntry {
    SlotEntry::QMat {
        ty,
        row: Idx::new(Space::Even(space_dim), row),
        col: Idx::new(Space::Even(col_space_dim), col),
    }
}

/// Odd-form variable matrix on `n` slots, occupying slot `r`:
/// `X = sum_{ak} (e_{ka} ox x_{ak} - i f_{ka} ox x_{-a,k})`.
pub fn x_matrix_odd(ctx: WeylCtx, n: usize, r: usize) -> SuperOperator<DiffOp> {
    let mut op = SuperOperator::zero(n);
    for a in 1..=ctx.m as i8 {
        for k in 1..=ctx.n {
            let mut key: TermKey = SmallVec::from_elem(SlotEntry::Unit, n);
            key[r - 1] = qmat(ctx.n, false, k as i8, ctx.m, a);
            op.add_term(key, DiffOp::generator(ctx, a, k, false));
            let mut key: TermKey = SmallVec::from_elem(SlotEntry::Unit, n);
            key[r - 1] = qmat(ctx.n, true, k as i8, ctx.m, a);
            op.add_term(
                key,
                DiffOp::generator(ctx, -a, k, false).scale(&(-&GaussianSurd::i())),
            );
        }
    }
    op
}

/// Odd-form derivation matrix on `n` slots, occupying slot `r`:
/// `D = sum_{ak} (i e_{ak} ox d_{k,-a} + f_{ak} ox d_{ka})`.
pub fn d_matrix_odd(ctx: WeylCtx, n: usize, r: usize) -> SuperOperator<DiffOp> {
    let mut op = SuperOperator::zero(n);
    for a in 1..=ctx.m as i8 {
        for k in 1..=ctx.n {
            let mut key: TermKey = SmallVec::from_elem(SlotEntry::Unit, n);
            key[r - 1] = qmat(ctx.m, false, a, ctx.n, k as i8);
            op.add_term(
                key,
                DiffOp::generator(ctx, -a, k, true).scale(&GaussianSurd::i()),
            );
            let mut key: TermKey = SmallVec::from_elem(SlotEntry::Unit, n);
            key[r - 1] = qmat(ctx.m, true, a, ctx.n, k as i8);
            op.add_term(key, DiffOp::generator(ctx, a, k, true));
        }
    }
    op
}

fn mat(rs: Space, r: i8, cs: Space, c: i8) -> SlotEntry {
    SlotEntry::Mat {
        row: Idx::new(rs, r),
        col: Idx::new(cs, c),
    }
}

/// Even-form variable matrix between `C^{M|M}` and `C^{N|N}`:
/// `X = sum_{ak} ((E_{ka} + E_{-k,-a}) ox x_{ak} - i (E_{-k,a} + E_{k,-a}) ox x_{-a,k})`.
pub fn x_matrix_even(ctx: WeylCtx, n: usize, r: usize) -> SuperOperator<DiffOp> {
    let sn = Space::Super(ctx.n);
    let sm = Space::Super(ctx.m);
    let mut op = SuperOperator::zero(n);
    for a in 1..=ctx.m as i8 {
        for k in 1..=ctx.n as i8 {
            let x = DiffOp::generator(ctx, a, k as u8, false);
            let x_neg = DiffOp::generator(ctx, -a, k as u8, false).scale(&(-&GaussianSurd::i()));
            for entry in [mat(sn, k, sm, a), mat(sn, -k, sm, -a)] {
                let mut key: TermKey = SmallVec::from_elem(SlotEntry::Unit, n);
                key[r - 1] = entry;
                op.add_term(key, x.clone());
            }
            for entry in [mat(sn, -k, sm, a), mat(sn, k, sm, -a)] {
                let mut key: TermKey = SmallVec::from_elem(SlotEntry::Unit, n);
                key[r - 1] = entry;
                op.add_term(key, x_neg.clone());
            }
        }
    }
    op
}

/// Even-form derivation matrix:
/// `D = sum_{ak} ((E_{-a,-k} - E_{ak}) ox d_{ka} + i (E_{-a,k} - E_{a,-k}) ox d_{k,-a})`.
pub fn d_matrix_even(ctx: WeylCtx, n: usize, r: usize) -> SuperOperator<DiffOp> {
    let sn = Space::Super(ctx.n);
    let sm = Space::Super(ctx.m);
    let mut op = SuperOperator::zero(n);
    for a in 1..=ctx.m as i8 {
        for k in 1..=ctx.n as i8 {
            let dd = DiffOp::generator(ctx, a, k as u8, true);
            let dd_neg = DiffOp::generator(ctx, -a, k as u8, true).scale(&GaussianSurd::i());
            for (entry, sign) in [(mat(sm, -a, sn, -k), 1i64), (mat(sm, a, sn, k), -1)] {
                let mut key: TermKey = SmallVec::from_elem(SlotEntry::Unit, n);
                key[r - 1] = entry;
                op.add_term(key, dd.scale(&GaussianSurd::from_int(sign)));
            }
            for (entry, sign) in [(mat(sm, -a, sn, k), 1i64), (mat(sm, a, sn, -k), -1)] {
                let mut key: TermKey = SmallVec::from_elem(SlotEntry::Unit, n);
                key[r - 1] = entry;
                op.add_term(key, dd_neg.scale(&GaussianSurd::from_int(sign)));
            }
        }
    }
    op
}

/// `X_1 .. X_n D_1 .. D_n` for either form.
pub fn xd_product(
    ctx: WeylCtx,
    n: usize,
    even_form: bool,
) -> SuperOperator<DiffOp> {
    let x = |r| {
        if even_form {
            x_matrix_even(ctx, n, r)
        } else {
            x_matrix_odd(ctx, n, r)
        }
    };
    let d = |r| {
        if even_form {
            d_matrix_even(ctx, n, r)
        } else {
            d_matrix_odd(ctx, n, r)
        }
    };
    let mut prod = x(1);
    for r in 2..=n {
        prod = prod.mul(&x(r));
    }
    for r in 1..=n {
        prod = prod.mul(&d(r));
    }
    prod
}

/// Outcome of an exact identity check, with a few witnesses on failure.
#[derive(Debug, Clone)]
pub struct VerifyOutcome {
    pub exact_equal: bool,
    pub lhs_terms: usize,
    pub rhs_terms: usize,
    pub discrepancies: Vec<String>,
}

fn compare_ops(
    lhs: &SuperOperator<DiffOp>,
    rhs: &SuperOperator<DiffOp>,
) -> VerifyOutcome {
    let diff = lhs.sub(rhs);
    let mut discrepancies: Vec<String> = diff
        .terms()
        .take(5)
        .map(|(k, c)| format!("{k:?} -> {c:?}"))
        .collect();
    discrepancies.sort();
    VerifyOutcome {
        exact_equal: diff.is_zero(),
        lhs_terms: lhs.num_terms(),
        rhs_terms: rhs.num_terms(),
        discrepancies,
    }
}

/// Odd universal Capelli identity:
/// image of `(G_1 + M^{(1)}) .. (G_n + M^{(n)})` equals `X_1..X_n D_1..D_n`.
pub fn verify_odd_capelli(m: u8, big_n: u8, n: usize) -> VerifyOutcome {
    let ctx = WeylCtx::new(m, big_n);
    let mut lhs_pbw = g_matrix_q(n, big_n, 1); // M^{(1)} = 0
    for b in 2..=n {
        let factor = g_matrix_q(n, big_n, b).add(
            &odd_jm_matrix_q(n, big_n, b),
        );
        lhs_pbw = lhs_pbw.mul(&factor);
    }
    let lhs = lhs_pbw.map_coeffs(|z| rep_element(ctx, z));
    let rhs = xd_product(ctx, n, false);
    compare_ops(&lhs, &rhs)
}

/// Even universal Capelli identity:
/// image of `(F_1 + X^{(1)}) .. (F_n + X^{(n)})` equals `X_1..X_n D_1..D_n`.
pub fn verify_even_capelli(m: u8, big_n: u8, n: usize) -> VerifyOutcome {
    let ctx = WeylCtx::new(m, big_n);
    let lhs_pbw = even_capelli_lhs(big_n, n, None);
    let lhs = lhs_pbw.map_coeffs(|z| rep_element(ctx, z));
    let rhs = xd_product(ctx, n, true);
    compare_ops(&lhs, &rhs)
}

/// `(F_1 + c_1)...(F_n + c_n)` where `c_b` is the Jucys-Murphy image by
/// default or the signed contents of a tableau when given.
fn even_capelli_lhs(big_n: u8, n: usize, kappas: Option<&[Surd]>) -> SuperOperator<PBWElement> {
    let spaces = vec![Space::Super(big_n); n];
    let id = SuperOperator::identity(&spaces, PBWElement::one());
    let mut prod: Option<SuperOperator<PBWElement>> = None;
    for b in 1..=n {
        let corr = match kappas {
            None => jm_image(n, big_n, b).map_coeffs(|c| PBWElement::scalar(c.clone())),
            Some(ks) => id.scale(&PBWElement::scalar(GaussianSurd::from_real(ks[b - 1].clone()))),
        };
        let factor = f_matrix(n, big_n, b).add(&corr);
        prod = Some(match prod {
            None => factor,
            Some(p) => p.mul(&factor),
        });
    }
    prod.unwrap()
}

/// Per-tableau identity: the replacement step
/// `(F_1 + X^{(1)})..(F_n + X^{(n)}) E_U = (F_1 + k_1)..(F_n + k_n) E_U`
/// inside the enveloping algebra, then the exact differential-operator
/// equality of the image of the right side against `X_1..X_n D_1..D_n E_U`.
pub fn verify_tableau_capelli(u: &BarredStandardTableau, m: u8, big_n: u8) -> VerifyOutcome {
    assert!(
        u.shape().len() <= big_n as usize,
        "shape has more rows than N"
    );
    let ctx = WeylCtx::new(m, big_n);
    let n = u.size() as usize;
    let e_img = sergeev_to_operator(&crate::sergeev::idempotent(u), big_n);
    let e_pbw = e_img.map_coeffs(|c| PBWElement::scalar(c.clone()));
    let kappas = u.signed_contents();

    let jm_side = even_capelli_lhs(big_n, n, None).mul(&e_pbw);
    let kappa_side = even_capelli_lhs(big_n, n, Some(&kappas)).mul(&e_pbw);
    if jm_side != kappa_side {
        return VerifyOutcome {
            exact_equal: false,
            lhs_terms: jm_side.num_terms(),
            rhs_terms: kappa_side.num_terms(),
            discrepancies: vec!["replacement of Jucys-Murphy images by signed contents".into()],
        };
    }

    let lhs = kappa_side.map_coeffs(|z| rep_element(ctx, z));
    let e_diff = e_img.map_coeffs(|c| DiffOp::scalar(ctx, c.clone()));
    let rhs = xd_product(ctx, n, true).mul(&e_diff);
    compare_ops(&lhs, &rhs)
}

/// Image of the quantum immanant under the differential-operator action.
pub fn image_of_immanant(u: &BarredStandardTableau, m: u8, big_n: u8) -> DiffOp {
    let ctx = WeylCtx::new(m, big_n);
    let s = quantum_immanant(u, big_n).expect("shape fits");
    rep_element(ctx, &s)
}

/// The same image through the character element:
/// `2^{floor(l/2)} / (2^n n!) * str(X^lambda X_1..X_n D_1..D_n)`.
pub fn image_via_character(shape: &StrictPartition, m: u8, big_n: u8) -> DiffOp {
    assert!(shape.len() <= big_n as usize);
    let ctx = WeylCtx::new(m, big_n);
    let n = shape.size() as usize;
    let chi = character_element(shape);
    let chi_img = sergeev_to_operator(&chi, big_n).map_coeffs(|c| DiffOp::scalar(ctx, c.clone()));
    let xd = xd_product(ctx, n, true);
    let mut fact = 1i64;
    for k in 1..=n as i64 {
        fact *= k;
    }
    let scalar = Rational::new(
        (1i64 << (shape.len() / 2)).into(),
        ((1i64 << n) * fact).into(),
    );
    chi_img
        .mul(&xd)
        .supertrace()
        .scale(&GaussianSurd::from_rational(scalar))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shifted::strict_partitions;

    fn ctx22() -> WeylCtx {
        WeylCtx::new(2, 2)
    }

    #[test]
    fn var_id_round_trip() {
        let ctx = ctx22();
        let mut seen = std::collections::HashSet::new();
        for a in [-2i8, -1, 1, 2] {
            for k in 1..=2u8 {
                let id = ctx.var_id(a, k);
                assert!(seen.insert(id));
                assert_eq!(ctx.a_of(id), a);
                assert_eq!(ctx.k_of(id), k);
            }
        }
        assert_eq!(seen.len(), ctx.nvars());
    }

    #[test]
    fn leibniz_relations() {
        let ctx = ctx22();
        // even u: d_u x_u = 1 + x_u d_u
        let x = DiffOp::generator(ctx, 1, 1, false);
        let d = DiffOp::generator(ctx, 1, 1, true);
        let lhs = d.mul(&x);
        let rhs = DiffOp::one(ctx).add(&x.mul(&d));
        assert_eq!(lhs, rhs);
        // odd u: d_u x_u = 1 - x_u d_u
        let xo = DiffOp::generator(ctx, -1, 1, false);
        let do_ = DiffOp::generator(ctx, -1, 1, true);
        assert_eq!(do_.mul(&xo), DiffOp::one(ctx).sub(&xo.mul(&do_)));
        // cross odd-odd: d_u x_v = -x_v d_u
        let xv = DiffOp::generator(ctx, -2, 1, false);
        assert_eq!(do_.mul(&xv), xv.mul(&do_).neg());
        // odd-even commute
        let xe = DiffOp::generator(ctx, 2, 1, false);
        assert_eq!(do_.mul(&xe), xe.mul(&do_));
        // odd squares vanish
        assert!(xo.mul(&xo).is_zero());
        assert!(do_.mul(&do_).is_zero());
    }

    #[test]
    fn composition_associative_random() {
        let ctx = WeylCtx::new(1, 2);
        let nv = ctx.nvars();
        let mut seed = 5u64;
        let mut next = || {
            seed = seed
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            (seed >> 33) as usize
        };
        let rand_op = |next: &mut dyn FnMut() -> usize| {
            let mut op = DiffOp::zero(ctx);
            for _ in 0..2 {
                let mut key: DKey = smallvec::smallvec![0; 2 * nv];
                for _ in 0..2 {
                    let slot = next() % (2 * nv);
                    let id = slot % nv;
                    if ctx.var_parity(id) == 1 {
                        key[slot] = (key[slot] + 1).min(1);
                    } else {
                        key[slot] += 1;
                    }
                }
                let c = GaussianSurd::from_int((next() % 5) as i64 - 2);
                op.add_term(key, c);
            }
            op
        };
        for _ in 0..40 {
            let a = rand_op(&mut next);
            let b = rand_op(&mut next);
            let c = rand_op(&mut next);
            assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        }
    }

    #[test]
    fn rep_examples() {
        // F_11 for M = N = 1: -(x_{1,1} d_{1,1} + x_{-1,1} d_{1,-1})
        let ctx = WeylCtx::new(1, 1);
        let got = rep_gen(ctx, QGenerator::new(1, 1));
        let x_p = DiffOp::generator(ctx, 1, 1, false);
        let d_p = DiffOp::generator(ctx, 1, 1, true);
        let x_m = DiffOp::generator(ctx, -1, 1, false);
        let d_m = DiffOp::generator(ctx, -1, 1, true);
        let expected = x_p.mul(&d_p).add(&x_m.mul(&d_m)).neg();
        assert_eq!(got, expected);
        // applied to the constant: zero
        let one = SuperPolynomial::one(ctx);
        assert!(got.apply(&one).is_zero());
        // rep(F_11) does not kill degree 1
        assert!(!annihilation_degree(&got, 1));
    }

    #[test]
    fn rep_is_homomorphism() {
        let ctx = ctx22();
        let gens = QGenerator::all(2);
        for &a in &gens {
            for &b in &gens {
                let lhs = rep_element(ctx, &bracket(a, b));
                let rhs = rep_gen(ctx, a).super_commutator(&rep_gen(ctx, b));
                assert_eq!(lhs, rhs, "{a:?} {b:?}");
            }
        }
    }

    #[test]
    fn twist_examples() {
        assert!(twist_consistency(2, 2));
        assert!(twist_consistency(1, 2));
        // the automorphism preserves brackets (spot checks)
        let pairs = [
            (QGenerator::new(1, 2), QGenerator::new(2, 1)),
            (QGenerator::new(1, -1), QGenerator::new(1, -1)),
            (QGenerator::new(1, -2), QGenerator::new(2, 1)),
        ];
        let extend = |z: &PBWElement| -> PBWElement {
            let mut out = PBWElement::zero();
            for (mono, c) in z.terms() {
                let mut acc = PBWElement::scalar(c.clone());
                for (g, e) in mono.iter() {
                    for _ in 0..*e {
                        acc = acc.mul(&automorphism_gen(*g));
                    }
                }
                out = out.add(&acc);
            }
            out
        };
        for (a, b) in pairs {
            let lhs = extend(&bracket(a, b));
            let rhs = automorphism_gen(a).super_commutator(&automorphism_gen(b));
            assert_eq!(lhs, rhs, "{a:?} {b:?}");
        }
    }

    #[test]
    fn xd_base_cases() {
        // odd form: G -> XD for n = 1
        for (m, n_big) in [(1u8, 1u8), (2, 2)] {
            let ctx = WeylCtx::new(m, n_big);
            let lhs = g_matrix_q(1, n_big, 1).map_coeffs(|z| rep_element(ctx, z));
            let rhs = x_matrix_odd(ctx, 1, 1).mul(&d_matrix_odd(ctx, 1, 1));
            assert_eq!(lhs, rhs, "odd M={m} N={n_big}");
            // even form: F -> XD for n = 1
            let lhs = f_matrix(1, n_big, 1).map_coeffs(|z| rep_element(ctx, z));
            let rhs = x_matrix_even(ctx, 1, 1).mul(&d_matrix_even(ctx, 1, 1));
            assert_eq!(lhs, rhs, "even M={m} N={n_big}");
        }
    }

    #[test]
    fn dx_commutation_produces_t_correction() {
        // odd form: D_r X_n = X_n D_r + T~_rn
        let ctx = ctx22();
        let n = 2;
        let (r, s) = (1usize, 2usize);
        let d_r = d_matrix_odd(ctx, n, r);
        let x_n = x_matrix_odd(ctx, n, s);
        let mut t_odd = SuperOperator::<DiffOp>::zero(n);
        for a in 1..=ctx.m as i8 {
            for l in 1..=ctx.n as i8 {
                let mut key: TermKey = SmallVec::from_elem(SlotEntry::Unit, n);
                key[r - 1] = qmat(ctx.m, true, a, ctx.n, l);
                key[s - 1] = qmat(ctx.n, false, l, ctx.m, a);
                t_odd.add_term(key, DiffOp::one(ctx));
                let mut key: TermKey = SmallVec::from_elem(SlotEntry::Unit, n);
                key[r - 1] = qmat(ctx.m, false, a, ctx.n, l);
                key[s - 1] = qmat(ctx.n, true, l, ctx.m, a);
                t_odd.add_term(key, DiffOp::one(ctx).neg());
            }
        }
        assert_eq!(d_r.mul(&x_n), x_n.mul(&d_r).add(&t_odd));

        // even form: D_r X_n = X_n D_r - T~_rn
        let d_r = d_matrix_even(ctx, n, r);
        let x_n = x_matrix_even(ctx, n, s);
        let sm = Space::Super(ctx.m);
        let sn = Space::Super(ctx.n);
        let mut t_even = SuperOperator::<DiffOp>::zero(n);
        for a in sm.indices() {
            for l in sn.indices() {
                let coeff = if sn.parity(l) == 1 {
                    DiffOp::one(ctx).neg()
                } else {
                    DiffOp::one(ctx)
                };
                let mut key: TermKey = SmallVec::from_elem(SlotEntry::Unit, n);
                key[r - 1] = mat(sm, a, sn, l);
                key[s - 1] = mat(sn, l, sm, a);
                t_even.add_term(key, coeff.clone());
                let mut key: TermKey = SmallVec::from_elem(SlotEntry::Unit, n);
                key[r - 1] = mat(sm, a, sn, l);
                key[s - 1] = mat(sn, -l, sm, -a);
                t_even.add_term(key, coeff);
            }
        }
        assert_eq!(d_r.mul(&x_n), x_n.mul(&d_r).sub(&t_even));
    }

    #[test]
    fn odd_capelli_small() {
        for (m, n_big, n) in [(1u8, 1u8, 1usize), (1, 1, 2), (2, 2, 1), (2, 2, 2)] {
            let out = verify_odd_capelli(m, n_big, n);
            assert!(out.exact_equal, "odd M={m} N={n_big} n={n}: {out:?}");
        }
    }

    #[test]
    fn even_capelli_small() {
        for (m, n_big, n) in [(1u8, 1u8, 1usize), (1, 1, 2), (2, 2, 1), (2, 2, 2)] {
            let out = verify_even_capelli(m, n_big, n);
            assert!(out.exact_equal, "even M={m} N={n_big} n={n}: {out:?}");
        }
    }

    #[test]
    fn tableau_capelli_small() {
        for tab in ["1", "1,2", "1,2b"] {
            let u = BarredStandardTableau::parse(tab).unwrap();
            let out = verify_tableau_capelli(&u, 2, 2);
            assert!(out.exact_equal, "{tab}: {out:?}");
        }
    }

    #[test]
    fn immanant_image_routes_agree_small() {
        for n in 1..=2u32 {
            for shape in strict_partitions(n) {
                if shape.len() > 2 {
                    continue;
                }
                let u = BarredStandardTableau::row_major(&shape);
                let direct = image_of_immanant(&u, 2, 2);
                let via = image_via_character(&shape, 2, 2);
                assert_eq!(direct, via, "{shape}");
            }
        }
    }

    #[test]
    fn annihilation_examples() {
        // the image of the two-box immanant kills degree <= 1
        let u = BarredStandardTableau::parse("1,2").unwrap();
        let img = image_of_immanant(&u, 2, 2);
        assert!(!img.is_zero());
        assert!(annihilation_degree(&img, 1));
    }

    #[test]
    fn degree_preservation() {
        // generator images map degree-d monomials to degree-d polynomials
        let ctx = ctx22();
        for g in QGenerator::all(2) {
            let op = rep_gen(ctx, g);
            for mono in monomials_up_to_degree(ctx, 2) {
                let d: u32 = mono.iter().map(|&e| e as u32).sum();
                let image = op.apply(&SuperPolynomial::monomial(ctx, &mono));
                for (k, _) in image.terms.iter() {
                    let dd: u32 = k.iter().map(|&e| e as u32).sum();
                    assert_eq!(dd, d, "{g:?}");
                }
            }
        }
    }
}
