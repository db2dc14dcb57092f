//! Explicit nonzero products of degree `2m - 1`.
//!
//! When `R^m = 0`, a smallest set `I` with `phi(R^{m-|I|} V_I) = 1` gives
//! `prod_{j<r} Vbar_{i_j}^3 * Vbar_{i_r}^A * Rbar^{2m+2-A-3r}` once
//! `m >= r + 2^{lg r}`. When `R^m != 0`, either `m` is a power of two and
//! `Rbar^{2m-1}` works, or the shape of the family of sets with `phi = 1`
//! yields one of two products built from a witness set `T`.

use std::collections::BTreeSet;

use crate::cohomology::CohContext;
use crate::combinatorics::{binom_mod2, is_power_of_two, lg, SubsetMask};
use crate::error::{Error, Result};
use crate::polygon::GeneticCode;

use super::expand::{nonzero_bidegree, pairing};
use super::{Aux, Certificate, Method, ZeroDivisorProduct};

fn b2(n: u32, k: i64) -> bool {
    binom_mod2(u64::from(n), k) == 1
}

/// Checks both the pairing value and the exact component.
fn confirm(ctx: &CohContext, p: &ZeroDivisorProduct, method: Method, aux: Aux) -> Result<Certificate> {
    let m = ctx.m();
    if !pairing(ctx, p)? {
        return Err(Error::Certificate(format!("{p} pairs to 0 on {}", ctx.code())));
    }
    match nonzero_bidegree(ctx, p)? {
        Some(b) if b == (m, m - 1) => Ok(Certificate::from_product(ctx.code(), p, b, method, aux)),
        other => Err(Error::Certificate(format!("{p} has first nonzero bidegree {other:?}"))),
    }
}

/// The `R^m = 0` construction, or `None` when `m < r + 2^{lg r}`.
pub fn genlthm_certificate(ctx: &CohContext) -> Result<Option<Certificate>> {
    let m = ctx.m();
    if m < 2 {
        return Ok(None);
    }
    if ctx.phi(SubsetMask::EMPTY)? {
        return Err(Error::Precondition("R^m is nonzero".into()));
    }
    let (_, family) = ctx.phi_support()?;
    let Some(&witness) = family.first() else {
        return Err(Error::InvalidContext("no monomial pairs to 1".into()));
    };
    let r = witness.len() as u32;
    if m < r + (1 << lg(u64::from(r))) {
        return Ok(None);
    }
    let f = lg(u64::from(m - r));
    let a = 2 * m - 2 * r + 3 - (1 << (f + 1));
    let rbar = 2 * m + 2 - a - 3 * r;
    let closed = b2(2 * m - 2 * r + 1, i64::from(m - r + 1)) ^ b2((1 << (f + 1)) - 1, i64::from(m - r + 1));
    if !closed {
        return Err(Error::Certificate(format!("closed form vanishes for m={m}, r={r}")));
    }
    let last = witness.max_element().expect("r >= 1");
    let exps = witness.iter().map(|i| (i, if i == last { a } else { 3 }));
    let p = ZeroDivisorProduct::new(rbar, exps)?;
    let aux = Aux { r: Some(r), f: Some(f), a: Some(a), ..Aux::default() };
    confirm(ctx, &p, Method::Genlthm, aux).map(Some)
}

/// The three shapes a family `C` of subsets of `U` containing the empty
/// set can take.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SupportCase {
    /// `C` is the power set of `X`.
    PowerSet(SubsetMask),
    /// `C` meets the power set of `T` in everything but `T`.
    Long(SubsetMask),
    /// The only member of `C` inside `S` containing `s` is `S` itself.
    Short { s: u32, set: SubsetMask },
}

pub fn classify_support(u: SubsetMask, family: &[SubsetMask]) -> Result<SupportCase> {
    let members: BTreeSet<u32> = family.iter().map(|s| s.bits()).collect();
    if !members.contains(&0) {
        return Err(Error::Precondition("family does not contain the empty set".into()));
    }
    if family.iter().any(|s| !s.is_subset(u)) {
        return Err(Error::Precondition("family is not inside U".into()));
    }
    let has = |s: SubsetMask| members.contains(&s.bits());
    let x = u.iter().filter(|&t| has(SubsetMask::singleton(t))).fold(SubsetMask::EMPTY, |a, t| a.with(t));
    let mut power_x: Vec<SubsetMask> = x.subsets().collect();
    power_x.sort_by_key(|s| s.graded_key());
    if let Some(&t) = power_x.iter().find(|&&s| !has(s)) {
        return Ok(SupportCase::Long(t));
    }
    let mut sorted: Vec<SubsetMask> = family.to_vec();
    sorted.sort_by_key(|s| s.graded_key());
    let Some(&outside) = sorted.iter().find(|s| !s.is_subset(x)) else {
        return Ok(SupportCase::PowerSet(x));
    };
    let s = outside.difference(x).min_element().expect("not inside X");
    let set = *sorted.iter().find(|c| c.contains(s)).expect("outside contains s");
    Ok(SupportCase::Short { s, set })
}

pub(crate) fn longprop_exponent(m: u32, t: u32) -> Option<(u32, &'static str)> {
    let e = lg(u64::from(m));
    let delta = m - (1 << e);
    let pow_e = 1u32 << e;
    if (1..=2 * delta).contains(&t) {
        return Some((2 * delta + 1 - t, "a"));
    }
    if (2 * delta + 1..=pow_e).contains(&t) {
        return Some(if b2(t - delta - 1, i64::from(delta)) {
            (1 << lg(u64::from(2 * delta)), "c")
        } else {
            (delta, "b")
        });
    }
    if t > pow_e && t < m {
        return if b2(m - t + delta, i64::from(delta)) {
            let nu = (m - t).trailing_zeros();
            delta.checked_sub(1 << nu).filter(|&a| a >= 1).map(|a| (a, "e"))
        } else {
            Some((delta, "d"))
        };
    }
    None
}

/// The `R^m != 0` constructions. `None` when the witness is too large for
/// the construction to apply.
pub fn nonzthm_certificate(ctx: &CohContext) -> Result<Option<Certificate>> {
    let m = ctx.m();
    if m < 1 {
        return Ok(None);
    }
    if !ctx.phi(SubsetMask::EMPTY)? {
        return Err(Error::Precondition("R^m is zero".into()));
    }
    if is_power_of_two(u64::from(m)) {
        let p = ZeroDivisorProduct::rbar_power(2 * m - 1);
        let aux = Aux { e: Some(lg(u64::from(m))), ..Aux::default() };
        return confirm(ctx, &p, Method::PowerOfTwo, aux).map(Some);
    }
    let (u, family) = ctx.phi_support()?;
    let e = lg(u64::from(m));
    let delta = m - (1 << e);
    match classify_support(u, &family)? {
        SupportCase::PowerSet(_) => Ok(None),
        SupportCase::Long(t_set) => {
            if t_set.len() as u32 > m {
                return Ok(None);
            }
            let t = t_set.len() as u32 - 1;
            let Some((a, case)) = longprop_exponent(m, t) else { return Ok(None) };
            let Some(rbar) = (2 * m).checked_sub(a + t + 1) else { return Ok(None) };
            let closed = b2(2 * m - t, i64::from(m)) ^ b2(2 * m - a - t, i64::from(m - t));
            if !closed {
                return Err(Error::Certificate(format!("closed form vanishes for m={m}, t={t}, A={a}")));
            }
            let last = t_set.max_element().expect("|T| >= 2");
            let p = ZeroDivisorProduct::new(rbar, t_set.iter().map(|i| (i, if i == last { a } else { 1 })))?;
            let aux = Aux {
                t: Some(t),
                a: Some(a),
                delta: Some(delta),
                e: Some(e),
                case: Some(case.to_string()),
                ..Aux::default()
            };
            confirm(ctx, &p, Method::NonzthmLong, aux).map(Some)
        }
        SupportCase::Short { s, set } => {
            if set.len() as u32 > m {
                return Ok(None);
            }
            let t = set.len() as u32 - 1;
            let p = ZeroDivisorProduct::new(m - 1, set.iter().map(|i| (i, if i == s { m - t } else { 1 })))?;
            let aux = Aux { t: Some(t), ..Aux::default() };
            confirm(ctx, &p, Method::NonzthmShort, aux).map(Some)
        }
    }
}

/// Re-derives a certificate's value from its code and product alone.
pub fn verify_certificate(cert: &Certificate) -> Result<bool> {
    let code: GeneticCode = cert.code.parse()?;
    let ctx = CohContext::new(&code);
    let p = cert.product();
    if p.total_degree() != cert.degree {
        return Err(Error::Certificate(format!("degree {} does not match {p}", cert.degree)));
    }
    let comp = super::expand::component(&ctx, &p, cert.bidegree)?;
    let nonzero = !comp.is_zero();
    if cert.method != Method::Search && nonzero && cert.bidegree == (ctx.m(), ctx.m() - 1) && !pairing(&ctx, &p)? {
        return Ok(false);
    }
    Ok(nonzero == (cert.value == 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tc::pairing_with;

    fn ctx(code: &str) -> CohContext {
        CohContext::new(&code.parse::<GeneticCode>().unwrap())
    }

    fn set(e: &[u32]) -> SubsetMask {
        SubsetMask::from_elements(e.iter().copied()).unwrap()
    }

    #[test]
    fn minimal_monomial_products() {
        let c = genlthm_certificate(&ctx("8321")).unwrap().unwrap();
        assert_eq!((c.aux.r, c.aux.f, c.aux.a, c.rbar_exp), (Some(3), Some(1), Some(3), 0));
        assert_eq!(c.bidegree, (5, 4));
        assert!(genlthm_certificate(&ctx("7321")).unwrap().is_none());
        let c = genlthm_certificate(&ctx("E4321")).unwrap().unwrap();
        assert_eq!((c.aux.r, c.aux.f, c.aux.a, c.rbar_exp), (Some(4), Some(2), Some(3), 3));
        assert!(verify_certificate(&c).unwrap());
        assert!(matches!(genlthm_certificate(&ctx("62")), Err(Error::Precondition(_))));
    }

    #[test]
    fn support_shapes() {
        let u = set(&[1, 2]);
        let all: Vec<SubsetMask> = u.subsets().collect();
        assert_eq!(classify_support(u, &all).unwrap(), SupportCase::PowerSet(u));
        assert_eq!(classify_support(u, &[SubsetMask::EMPTY, set(&[1]), set(&[2])]).unwrap(), SupportCase::Long(u));
        assert_eq!(
            classify_support(u, &[SubsetMask::EMPTY, set(&[1, 2])]).unwrap(),
            SupportCase::Short { s: 1, set: u }
        );
        assert!(classify_support(u, &[set(&[1])]).is_err());
    }

    #[test]
    fn power_of_two_dimension() {
        // gee {2}, n = 7: m = 4 and R^4 != 0
        let c = nonzthm_certificate(&ctx("72")).unwrap().unwrap();
        assert_eq!(c.method, Method::PowerOfTwo);
        assert_eq!(c.rbar_exp, 7);
        assert!(b2(7, 4));
    }

    #[test]
    fn long_exponent_table() {
        // m = 5: e = 2, delta = 1; t = 1 is case a with A = 2
        assert_eq!(longprop_exponent(5, 1), Some((2, "a")));
        assert!(b2(9, 5) ^ b2(7, 4));
        for m in 3..=40u32 {
            if is_power_of_two(u64::from(m)) {
                continue;
            }
            for t in 1..m {
                if let Some((a, _)) = longprop_exponent(m, t) {
                    assert!(a >= 1);
                    assert!(b2(2 * m - t, i64::from(m)) ^ b2(2 * m - a - t, i64::from(m - t)), "m={m} t={t} A={a}");
                }
            }
        }
    }

    #[test]
    fn nonzero_top_power_codes_get_certificates() {
        for code in ["82", "92", "T2", "862", "8631;854", "962", "9532", "T5421"] {
            let c = ctx(code);
            if !c.phi(SubsetMask::EMPTY).unwrap() {
                continue;
            }
            let cert = nonzthm_certificate(&c).unwrap().expect(code);
            assert!(verify_certificate(&cert).unwrap(), "{code}");
        }
    }

    #[test]
    fn short_product_pairs_to_one_on_its_hypothesis() {
        // phi(R^m) = 1, phi(V_T) = 1, and phi(V_I) = 0 for I inside T containing t+1
        for m in 3..=8u32 {
            for t in 1..m {
                let top = t + 1;
                let full = SubsetMask::interval(top);
                let phi = |s: SubsetMask| s.is_empty() || s == full || (!s.contains(top) && s.len() % 2 == 1);
                let p =
                    ZeroDivisorProduct::new(m - 1, (1..=top).map(|i| (i, if i == top { m - t } else { 1 }))).unwrap();
                assert!(pairing_with(&p, m, phi, phi), "m={m} t={t}");
            }
        }
    }
}
