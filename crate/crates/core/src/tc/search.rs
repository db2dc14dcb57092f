//! Exhaustive search for a nonzero product of barred generators of a
//! given degree.
//!
//! Generators are `Rbar` and `Vbar_i` for each `i` with `V_i != 0`.
//! Indices whose transposition preserves the subgee family are
//! interchangeable, so exponents are taken non-increasing along each such
//! class. For each support `V` of `Vbar` exponents, only pairs `(S1, S2)` of
//! subgees covering `V` whose monomials are nonzero in some searched
//! bidegree can contribute, and supports without such pairs are skipped.
//! Candidates are tried in a fixed order (supports by size then colex,
//! exponent vectors lexicographically) and the first hit is returned,
//! independent of thread scheduling.

use rayon::prelude::*;

use crate::cohomology::CohContext;
use crate::combinatorics::SubsetMask;
use crate::error::{Error, Result};
use crate::f2::BitVec;

use super::expand::Trunc;
use super::{Aux, Certificate, Method, ZeroDivisorProduct};

/// Classes of interchangeable indices among `active`, each increasing.
fn symmetry_classes(ctx: &CohContext, active: SubsetMask) -> Vec<Vec<u32>> {
    let members = ctx.subgees().members();
    let swaps = |i: u32, j: u32| {
        members.iter().all(|&s| {
            let t = match (s.contains(i), s.contains(j)) {
                (true, false) => s.without(i).with(j),
                (false, true) => s.without(j).with(i),
                _ => s,
            };
            ctx.is_subgee(t)
        })
    };
    let mut classes: Vec<Vec<u32>> = Vec::new();
    for i in active.iter() {
        match classes.iter_mut().find(|c| swaps(c[0], i)) {
            Some(c) => c.push(i),
            None => classes.push(vec![i]),
        }
    }
    classes
}

struct Pair<'a> {
    left_only: SubsetMask,
    both: SubsetMask,
    // coordinates per searched bidegree, when both monomials are nonzero
    coords: Vec<Option<(&'a BitVec, &'a BitVec)>>,
}

fn pairs_for<'a>(ctx: &'a CohContext, v: SubsetMask, bids: &[(u32, u32)]) -> Vec<Pair<'a>> {
    let mut out = Vec::new();
    for s1 in v.subsets() {
        if !ctx.is_subgee(s1) {
            continue;
        }
        let must = v.difference(s1);
        for extra in s1.subsets() {
            let s2 = must.union(extra);
            if !ctx.is_subgee(s2) {
                continue;
            }
            let coords: Vec<_> = bids
                .iter()
                .map(|&(d1, d2)| {
                    let a = ctx.monomial_coordinates(d1, s1).filter(|x| !x.is_zero())?;
                    let b = ctx.monomial_coordinates(d2, s2).filter(|x| !x.is_zero())?;
                    Some((a, b))
                })
                .collect();
            if coords.iter().any(Option::is_some) {
                out.push(Pair { left_only: s1.difference(s2), both: s1.intersection(s2), coords });
            }
        }
    }
    out
}

/// Exponent vectors over `elems` with entries at least 1, total at most
/// `budget`, non-increasing between consecutive members of a class.
fn compositions(elems: &[u32], same_class_as_prev: &[bool], budget: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(elems.len());
    fn rec(k: usize, left: u32, prev: u32, same: &[bool], n: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if k == n {
            out.push(cur.clone());
            return;
        }
        // the remaining entries need at least one each
        let reserve = (n - k - 1) as u32;
        let hi = if same[k] { prev.min(left - reserve) } else { left - reserve };
        for e in 1..=hi {
            cur.push(e);
            rec(k + 1, left - e, e, same, n, cur, out);
            cur.pop();
        }
    }
    if elems.len() as u32 <= budget {
        rec(0, budget, u32::MAX, same_class_as_prev, elems.len(), &mut cur, &mut out);
    }
    out
}

fn evaluate(
    ctx: &CohContext,
    pairs: &[Pair<'_>],
    elems: &[u32],
    exps: &[u32],
    a0: u32,
    bids: &[(u32, u32)],
    tr: Trunc,
) -> Option<(u32, u32)> {
    let polys: Vec<u64> = pairs
        .iter()
        .map(|p| {
            let mut poly = tr.binomial(a0);
            for (k, &i) in elems.iter().enumerate() {
                if poly == 0 {
                    break;
                }
                if p.left_only.contains(i) {
                    poly = tr.mul(poly, tr.monomial(exps[k]));
                } else if p.both.contains(i) {
                    poly = tr.mul(poly, tr.middle(exps[k]));
                }
            }
            poly
        })
        .collect();
    for (b, &(d1, d2)) in bids.iter().enumerate() {
        let dim1 = ctx.dim(d1).ok()?;
        let dim2 = ctx.dim(d2).ok()?;
        let mut rows = vec![BitVec::zeros(dim2); dim1];
        let mut touched = false;
        for (p, &poly) in pairs.iter().zip(&polys) {
            if poly >> d1 & 1 == 0 {
                continue;
            }
            if let Some((x, y)) = p.coords[b] {
                for i in x.ones() {
                    rows[i].xor_assign(y);
                }
                touched = true;
            }
        }
        if touched && rows.iter().any(|r| !r.is_zero()) {
            return Some((d1, d2));
        }
    }
    None
}

/// The first nonzero product of degree `target` in canonical order, with
/// the number of candidates that were generated.
pub fn zcl_search_with_candidates(ctx: &CohContext, target: u32) -> Result<(Option<Certificate>, u64)> {
    let m = ctx.m();
    if target == 0 || target > 2 * m {
        return Err(Error::Domain(format!("target {target} outside 1..={}", 2 * m)));
    }
    let bids: Vec<(u32, u32)> = (target.div_ceil(2)..=target.min(m)).rev().map(|d1| (d1, target - d1)).collect();
    let tr = Trunc::new(target.min(m));
    let active = ctx.subgees().active_indices();
    let classes = symmetry_classes(ctx, active);
    let mut supports: Vec<SubsetMask> = active
        .subsets()
        .filter(|v| v.len() as u32 <= target)
        .filter(|v| {
            classes.iter().all(|c| {
                let k = c.iter().filter(|&&i| v.contains(i)).count();
                c[..k].iter().all(|&i| v.contains(i))
            })
        })
        .collect();
    supports.sort_by_key(|s| s.graded_key());
    let mut generated = 0u64;
    for v in supports {
        let pairs = pairs_for(ctx, v, &bids);
        if pairs.is_empty() {
            continue;
        }
        let elems: Vec<u32> = v.iter().collect();
        let same: Vec<bool> = elems
            .iter()
            .enumerate()
            .map(|(k, &i)| k > 0 && classes.iter().any(|c| c.contains(&i) && c.contains(&elems[k - 1])))
            .collect();
        let cands = compositions(&elems, &same, target);
        generated += cands.len() as u64;
        let hit = cands.par_iter().find_map_first(|exps| {
            let a0 = target - exps.iter().sum::<u32>();
            evaluate(ctx, &pairs, &elems, exps, a0, &bids, tr).map(|b| (exps.clone(), a0, b))
        });
        if let Some((exps, a0, b)) = hit {
            let p = ZeroDivisorProduct::new(a0, elems.iter().copied().zip(exps))?;
            let cert = Certificate::from_product(ctx.code(), &p, b, Method::Search, Aux::default());
            return Ok((Some(cert), generated));
        }
    }
    Ok((None, generated))
}

/// A nonzero product of barred generators of degree `target`, if any.
pub fn zcl_search(ctx: &CohContext, target: u32) -> Result<Option<Certificate>> {
    zcl_search_with_candidates(ctx, target).map(|(c, _)| c)
}
