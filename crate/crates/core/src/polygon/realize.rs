//! Integer length vectors for a given genetic code.
//!
//! With `l_i = 1 + d_1 + ... + d_i` and `d >= 0`, ordering and positivity
//! are automatic, and the code is pinned by one inequality per gee (its gene
//! is short by at least 1) and one per dominance-minimal non-subgee (that
//! set plus `n` is long by at least 1). Everything else follows by
//! monotonicity. Feasibility is decided exactly by a phase-one simplex over
//! rationals with Bland's rule.

use num_rational::Ratio;
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, One, Signed, Zero};

use super::code::{GeneticCode, SubgeeFamily};
use super::LengthVector;
use crate::combinatorics::SubsetMask;
use crate::error::{Error, Result};

type Q = Ratio<i128>;

fn overflow() -> Error {
    Error::Domain("arithmetic overflow in exact feasibility".into())
}

fn sub(a: &Q, b: &Q) -> Result<Q> {
    a.checked_sub(b).ok_or_else(overflow)
}

fn mul(a: &Q, b: &Q) -> Result<Q> {
    a.checked_mul(b).ok_or_else(overflow)
}

fn div(a: &Q, b: &Q) -> Result<Q> {
    a.checked_div(b).ok_or_else(overflow)
}

/// Finds `x >= 0` with `a_i . x >= b_i` for every row, or `None`.
fn feasible_point(rows: &[(Vec<i64>, i64)], nvars: usize) -> Result<Option<Vec<Q>>> {
    let r = rows.len();
    // columns: x (nvars), surplus (r), artificial (r); rhs kept separately
    let ncols = nvars + 2 * r;
    let mut tab: Vec<Vec<Q>> = Vec::with_capacity(r);
    let mut rhs: Vec<Q> = Vec::with_capacity(r);
    let mut basis: Vec<usize> = Vec::with_capacity(r);
    let mut cost = vec![Q::zero(); ncols];
    for (i, (a, b)) in rows.iter().enumerate() {
        let mut row = vec![Q::zero(); ncols];
        if *b > 0 {
            for (j, &c) in a.iter().enumerate() {
                row[j] = Q::from_integer(i128::from(c));
            }
            row[nvars + i] = -Q::one();
            row[nvars + r + i] = Q::one();
            cost[nvars + r + i] = Q::one();
            basis.push(nvars + r + i);
            rhs.push(Q::from_integer(i128::from(*b)));
        } else {
            for (j, &c) in a.iter().enumerate() {
                row[j] = Q::from_integer(-i128::from(c));
            }
            row[nvars + i] = Q::one();
            basis.push(nvars + i);
            rhs.push(Q::from_integer(-i128::from(*b)));
        }
        tab.push(row);
    }
    // reduced costs d_j = c_j - sum_i c_B(i) T[i][j]
    let mut reduced = cost.clone();
    for (i, row) in tab.iter().enumerate() {
        if cost[basis[i]].is_zero() {
            continue;
        }
        for j in 0..ncols {
            reduced[j] = sub(&reduced[j], &row[j])?;
        }
    }
    while let Some(enter) = (0..ncols).find(|&j| reduced[j].is_negative()) {
        let mut leave: Option<(usize, Q)> = None;
        for i in 0..r {
            if tab[i][enter].is_positive() {
                let ratio = div(&rhs[i], &tab[i][enter])?;
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        // phase one is bounded below by zero
        let (p, _) = leave.expect("phase-one objective is bounded");
        let pivot = tab[p][enter];
        for x in tab[p].iter_mut() {
            *x = div(x, &pivot)?;
        }
        rhs[p] = div(&rhs[p], &pivot)?;
        for i in 0..r {
            if i == p || tab[i][enter].is_zero() {
                continue;
            }
            let f = tab[i][enter];
            let prow = tab[p].clone();
            for (x, y) in tab[i].iter_mut().zip(&prow) {
                if !y.is_zero() {
                    *x = sub(x, &mul(&f, y)?)?;
                }
            }
            rhs[i] = sub(&rhs[i], &mul(&f, &rhs[p])?)?;
        }
        let f = reduced[enter];
        for j in 0..ncols {
            if !tab[p][j].is_zero() {
                reduced[j] = sub(&reduced[j], &mul(&f, &tab[p][j])?)?;
            }
        }
        basis[p] = enter;
    }
    let mut objective = Q::zero();
    for i in 0..r {
        if !cost[basis[i]].is_zero() {
            objective = objective.checked_add(&rhs[i]).ok_or_else(overflow)?;
        }
    }
    if objective.is_positive() {
        return Ok(None);
    }
    let mut x = vec![Q::zero(); nvars];
    for i in 0..r {
        if basis[i] < nvars {
            x[basis[i]] = rhs[i];
        }
    }
    Ok(Some(x))
}

/// Row `a . d >= b` saying gene `b_set` (containing `n`) is short
/// (`long == false`) or long (`long == true`) by a margin of at least 1.
fn margin_row(n: usize, b_set: SubsetMask, long: bool) -> (Vec<i64>, i64) {
    // margin = sum_{i not in B} l_i - sum_{i in B} l_i, sign s_i = -1 on B
    let sign: Vec<i64> = (1..=n as u32).map(|i| if b_set.contains(i) { -1 } else { 1 }).collect();
    let flip = if long { -1 } else { 1 };
    let constant: i64 = sign.iter().sum::<i64>() * flip;
    let mut coeffs = vec![0i64; n];
    let mut suffix = 0;
    for j in (0..n).rev() {
        suffix += sign[j];
        coeffs[j] = suffix * flip;
    }
    (coeffs, 1 - constant)
}

fn constraint_rows(n: u32, gees: &[SubsetMask]) -> Vec<(Vec<i64>, i64)> {
    let top = SubsetMask::singleton(n);
    let family = SubgeeFamily::from_gees(n, gees);
    let mut rows: Vec<(Vec<i64>, i64)> = gees.iter().map(|&g| margin_row(n as usize, g.union(top), false)).collect();
    rows.extend(family.minimal_non_members().into_iter().map(|s| margin_row(n as usize, s.union(top), true)));
    rows
}

pub(crate) fn is_feasible(n: u32, gees: &[SubsetMask]) -> Result<bool> {
    Ok(feasible_point(&constraint_rows(n, gees), n as usize)?.is_some())
}

/// An integer length vector with odd perimeter whose genetic code is `code`.
pub fn realize(code: &GeneticCode) -> Result<LengthVector> {
    let n = code.n() as usize;
    let rows = constraint_rows(code.n(), code.gees());
    let Some(d) = feasible_point(&rows, n)? else {
        return Err(Error::Unrealizable(code.to_string()));
    };
    let mut lengths: Vec<Q> = Vec::with_capacity(n);
    let mut acc = Q::one();
    for dj in d {
        acc = acc.checked_add(&dj).ok_or_else(overflow)?;
        lengths.push(acc);
    }
    let den = lengths.iter().fold(1i128, |a, l| super::lcm(a, *l.denom()));
    let mut ints: Vec<i64> = lengths
        .iter()
        .map(|l| {
            let v = l.numer().checked_mul(&(den / l.denom())).ok_or_else(overflow)?;
            i64::try_from(v).map_err(|_| overflow())
        })
        .collect::<Result<_>>()?;
    if ints.iter().sum::<i64>() % 2 == 0 {
        for x in &mut ints {
            *x *= 2;
        }
        ints[n - 1] += 1;
    }
    let v = LengthVector::from_integers(&ints)?;
    let back = v.genetic_code()?;
    if &back != code {
        return Err(Error::Domain(format!("realized vector {v} has code {back}, expected {code}")));
    }
    Ok(v)
}
