//! Expanding a product of zero divisors into tensor components.
//!
//! `Vbar_i^e = sum_j C(e, j) V_i^j x V_i^{e-j}`, and each tensor slot
//! collapses to a monomial `R^a V_S` determined by its degree and the set
//! `S` of indices with a positive exponent there. So a term is fixed by the
//! left degree `d1` and the supports `S1`, `S2` with `S1 + S2` the support
//! of the product. Its coefficient is the coefficient of `x^{d1}` in
//!
//! `(1+x)^{e_0} * prod_{S1 only} x^{e_i} * prod_{both} ((1+x)^{e_i} - 1 - x^{e_i})`,
//!
//! computed over `F_2[x]` in a machine word.

use crate::cohomology::CohContext;
use crate::combinatorics::SubsetMask;
use crate::error::{Error, Result};
use crate::f2::BitVec;

use super::ZeroDivisorProduct;

/// Polynomials over `F_2` truncated above degree `cap < 64`.
#[derive(Clone, Copy)]
pub(crate) struct Trunc {
    mask: u64,
}

impl Trunc {
    pub(crate) fn new(cap: u32) -> Self {
        assert!(cap < 64, "degree {cap} too large for word polynomials");
        Trunc { mask: if cap == 63 { u64::MAX } else { (1u64 << (cap + 1)) - 1 } }
    }

    /// `(1+x)^e`: the coefficient of `x^j` is odd iff `j` is a bitwise subset of `e`.
    pub(crate) fn binomial(self, e: u32) -> u64 {
        let mut out = 0u64;
        let mut j = u64::from(e);
        // iterate over submasks of e that fit
        loop {
            if j < 64 {
                out |= 1 << j;
            }
            if j == 0 {
                break;
            }
            j = (j - 1) & u64::from(e);
        }
        out & self.mask
    }

    pub(crate) fn monomial(self, e: u32) -> u64 {
        if e < 64 {
            (1u64 << e) & self.mask
        } else {
            0
        }
    }

    /// `(1+x)^e - 1 - x^e`, the terms splitting a factor across both slots.
    pub(crate) fn middle(self, e: u32) -> u64 {
        self.binomial(e) & !1 & !self.monomial(e)
    }

    pub(crate) fn mul(self, a: u64, b: u64) -> u64 {
        let mut out = 0u64;
        let mut a = a;
        while a != 0 {
            let t = a.trailing_zeros();
            out ^= b << t;
            a &= a - 1;
        }
        out & self.mask
    }
}

/// Calls `visit(S1, S2)` for every term of `p` in bidegree
/// `(d1, deg p - d1)` with odd coefficient. `allowed` must be closed under
/// subsets; branches with a disallowed support are pruned.
pub(crate) fn for_each_term(
    p: &ZeroDivisorProduct,
    d1: u32,
    allowed: &dyn Fn(SubsetMask) -> bool,
    visit: &mut dyn FnMut(SubsetMask, SubsetMask),
) {
    let total = p.total_degree();
    if d1 > total {
        return;
    }
    let tr = Trunc::new(d1);
    let factors: Vec<(u32, u32)> = p.vbar_exps.iter().filter(|(_, &e)| e > 0).map(|(&i, &e)| (i, e)).collect();
    #[allow(clippy::too_many_arguments)]
    fn walk(
        factors: &[(u32, u32)],
        k: usize,
        s1: SubsetMask,
        s2: SubsetMask,
        poly: u64,
        tr: Trunc,
        d1: u32,
        allowed: &dyn Fn(SubsetMask) -> bool,
        visit: &mut dyn FnMut(SubsetMask, SubsetMask),
    ) {
        if poly == 0 {
            return;
        }
        let Some(&(i, e)) = factors.get(k) else {
            if poly >> d1 & 1 == 1 {
                visit(s1, s2);
            }
            return;
        };
        let l = s1.with(i);
        let r = s2.with(i);
        if allowed(l) {
            walk(factors, k + 1, l, s2, tr.mul(poly, tr.monomial(e)), tr, d1, allowed, visit);
        }
        if allowed(r) {
            walk(factors, k + 1, s1, r, poly, tr, d1, allowed, visit);
        }
        if e >= 2 && allowed(l) && allowed(r) {
            walk(factors, k + 1, l, r, tr.mul(poly, tr.middle(e)), tr, d1, allowed, visit);
        }
    }
    walk(&factors, 0, SubsetMask::EMPTY, SubsetMask::EMPTY, tr.binomial(p.rbar_exp), tr, d1, allowed, visit);
}

/// `sum (phi1 x phi2)` over the terms of `p` in bidegree `(d1, deg p - d1)`,
/// for arbitrary functionals given on monomial supports.
pub fn pairing_with(
    p: &ZeroDivisorProduct,
    d1: u32,
    phi1: impl Fn(SubsetMask) -> bool,
    phi2: impl Fn(SubsetMask) -> bool,
) -> bool {
    let mut acc = false;
    for_each_term(p, d1, &|_| true, &mut |s1, s2| {
        if phi1(s1) && phi2(s2) {
            acc = !acc;
        }
    });
    acc
}

/// `(phi x psi)` of the `(m, m-1)` component of a product of degree `2m - 1`.
pub fn pairing(ctx: &CohContext, p: &ZeroDivisorProduct) -> Result<bool> {
    let m = ctx.m();
    if m == 0 || p.total_degree() != 2 * m - 1 {
        return Err(Error::Domain(format!(
            "pairing needs degree {} but {p} has degree {}",
            2 * m - 1,
            p.total_degree()
        )));
    }
    // surface a context error before expanding
    ctx.phi(SubsetMask::EMPTY)?;
    let mut acc = false;
    for_each_term(p, m, &|s| ctx.is_subgee(s), &mut |s1, s2| {
        if s1.len() <= m as usize
            && s2.len() < m as usize
            && ctx.phi(s1).unwrap_or(false)
            && ctx.psi(s2).unwrap_or(false)
        {
            acc = !acc;
        }
    });
    Ok(acc)
}

/// An element of `H^{d1} x H^{d2}` as a `dim H^{d1}` by `dim H^{d2}`
/// matrix over the canonical bases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorComponent {
    pub bidegree: (u32, u32),
    pub rows: Vec<BitVec>,
}

impl TensorComponent {
    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(BitVec::is_zero)
    }

    /// Rank of the matrix, i.e. the tensor rank of the element.
    pub fn rank(&self) -> usize {
        crate::f2::Echelon::new(self.rows.first().map_or(0, BitVec::len), self.rows.iter().cloned()).rank()
    }

    /// The transposed component, in bidegree `(d2, d1)`.
    pub fn transpose(&self) -> TensorComponent {
        let cols = self.rows.first().map_or(0, BitVec::len);
        let rows = (0..cols)
            .map(|j| BitVec::from_ones(self.rows.len(), (0..self.rows.len()).filter(|&i| self.rows[i].get(j))))
            .collect();
        TensorComponent { bidegree: (self.bidegree.1, self.bidegree.0), rows }
    }
}

fn check_bidegree(ctx: &CohContext, p: &ZeroDivisorProduct, (d1, d2): (u32, u32)) -> Result<()> {
    if d1 + d2 != p.total_degree() {
        return Err(Error::Domain(format!(
            "bidegree ({d1},{d2}) does not add up to the degree {} of {p}",
            p.total_degree()
        )));
    }
    let m = ctx.m();
    if d1 > m || d2 > m {
        return Err(Error::Degree { degree: d1.max(d2), m });
    }
    Ok(())
}

/// The reduced component of `p` in bidegree `(d1, d2)`.
pub fn component(ctx: &CohContext, p: &ZeroDivisorProduct, bidegree: (u32, u32)) -> Result<TensorComponent> {
    check_bidegree(ctx, p, bidegree)?;
    let (d1, d2) = bidegree;
    let dim1 = ctx.dim(d1)?;
    let dim2 = ctx.dim(d2)?;
    let mut rows = vec![BitVec::zeros(dim2); dim1];
    for_each_term(p, d1, &|s| ctx.is_subgee(s), &mut |s1, s2| {
        let (Some(a), Some(b)) = (ctx.monomial_coordinates(d1, s1), ctx.monomial_coordinates(d2, s2)) else {
            return;
        };
        for i in a.ones() {
            rows[i].xor_assign(b);
        }
    });
    Ok(TensorComponent { bidegree, rows })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// `phi x psi` on the `(m, m-1)` component.
    Pairing,
    /// The full reduced component.
    Exact,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Evaluation {
    Pairing(bool),
    Exact(TensorComponent),
}

impl Evaluation {
    pub fn is_nonzero(&self) -> bool {
        match self {
            Evaluation::Pairing(v) => *v,
            Evaluation::Exact(c) => !c.is_zero(),
        }
    }
}

pub fn expand_evaluate(
    ctx: &CohContext,
    p: &ZeroDivisorProduct,
    bidegree: (u32, u32),
    mode: Mode,
) -> Result<Evaluation> {
    check_bidegree(ctx, p, bidegree)?;
    match mode {
        Mode::Pairing => {
            let m = ctx.m();
            if bidegree != (m, m.saturating_sub(1)) {
                return Err(Error::Domain(format!("pairing mode needs bidegree ({m},{})", m.saturating_sub(1))));
            }
            pairing(ctx, p).map(Evaluation::Pairing)
        }
        Mode::Exact => component(ctx, p, bidegree).map(Evaluation::Exact),
    }
}

/// The first bidegree `(d1, d2)`, `d1 >= d2`, `d1` decreasing, where `p`
/// has a nonzero component. By symmetry of the product under swapping the
/// factors, the components with `d1 < d2` are transposes of these.
pub fn nonzero_bidegree(ctx: &CohContext, p: &ZeroDivisorProduct) -> Result<Option<(u32, u32)>> {
    let total = p.total_degree();
    let m = ctx.m();
    if total > 2 * m {
        return Ok(None);
    }
    for d1 in (total.div_ceil(2)..=total.min(m)).rev() {
        let b = (d1, total - d1);
        if !component(ctx, p, b)?.is_zero() {
            return Ok(Some(b));
        }
    }
    Ok(None)
}
