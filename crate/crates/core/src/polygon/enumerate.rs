//! Exhaustive listing of genetic codes for a fixed `n`.
//!
//! A code is determined by its subgee family `D`, one boolean per subset of
//! `{1..n-1}`. Every short set of `{1..n}` is a literal over these booleans
//! (`A + {n}` short iff `x_A`; `B` avoiding `n` short iff `!x_{B^c}`), and
//! downward closure under dominance becomes a set of binary implications
//! between literals. Codes are exactly the solutions with `x_{} = true`,
//! found by depth-first search with unit propagation. For `n >= 9` closure
//! is no longer enough, and each solution is also checked for exact
//! feasibility.

use rayon::prelude::*;

use super::code::{GeneticCode, SubgeeFamily};
use super::realize::is_feasible;
use crate::combinatorics::{dominance_down_covers, SubsetMask};
use crate::error::{Error, Result};

pub const ENUMERATE_MIN_N: u32 = 4;
pub const ENUMERATE_MAX_N: u32 = 9;

#[derive(Clone, Copy)]
struct Lit(u32);

impl Lit {
    fn new(var: u32, positive: bool) -> Self {
        Lit(var << 1 | u32::from(!positive))
    }
    fn var(self) -> usize {
        (self.0 >> 1) as usize
    }
    fn positive(self) -> bool {
        self.0 & 1 == 0
    }
    fn negate(self) -> Self {
        Lit(self.0 ^ 1)
    }
}

struct Solver {
    implications: Vec<Vec<Lit>>,
    value: Vec<Option<bool>>,
    trail: Vec<usize>,
}

impl Solver {
    /// Assigns `lit` and everything it implies; on conflict returns false
    /// (the caller undoes the trail).
    fn assign(&mut self, lit: Lit) -> bool {
        let mut queue = vec![lit];
        while let Some(l) = queue.pop() {
            match self.value[l.var()] {
                Some(v) if v == l.positive() => continue,
                Some(_) => return false,
                None => {
                    self.value[l.var()] = Some(l.positive());
                    self.trail.push(l.var());
                    queue.extend(self.implications[l.0 as usize].iter().copied());
                }
            }
        }
        true
    }

    fn undo_to(&mut self, mark: usize) {
        for v in self.trail.drain(mark..) {
            self.value[v] = None;
        }
    }

    fn search(&mut self, next: usize, out: &mut Vec<Vec<bool>>) {
        let Some(var) = (next..self.value.len()).find(|&v| self.value[v].is_none()) else {
            out.push(self.value.iter().map(|v| v.unwrap()).collect());
            return;
        };
        for choice in [true, false] {
            let mark = self.trail.len();
            if self.assign(Lit::new(var as u32, choice)) {
                self.search(var + 1, out);
            }
            self.undo_to(mark);
        }
    }
}

/// All genetic codes with `n` sides, in canonical order.
pub fn enumerate_codes(n: u32) -> Result<Vec<GeneticCode>> {
    if !(ENUMERATE_MIN_N..=ENUMERATE_MAX_N).contains(&n) {
        return Err(Error::OutOfRange { n, lo: ENUMERATE_MIN_N, hi: ENUMERATE_MAX_N });
    }
    let low = SubsetMask::interval(n - 1);
    let vars = 1u32 << (n - 1);
    let short_lit = |b: SubsetMask| {
        if b.contains(n) {
            Lit::new(b.without(n).bits(), true)
        } else {
            Lit::new(low.difference(b).bits(), false)
        }
    };
    let mut implications = vec![Vec::new(); 2 * vars as usize];
    for bits in 0..1u32 << n {
        let b = SubsetMask::from_bits(bits);
        let lb = short_lit(b);
        for d in dominance_down_covers(b) {
            let ld = short_lit(d);
            implications[lb.0 as usize].push(ld);
            implications[ld.negate().0 as usize].push(lb.negate());
        }
    }
    let mut solver = Solver { implications, value: vec![None; vars as usize], trail: Vec::new() };
    let mut solutions = Vec::new();
    if solver.assign(Lit::new(0, true)) {
        solver.search(0, &mut solutions);
    }
    let mut codes: Vec<GeneticCode> = solutions
        .into_par_iter()
        .map(|x| {
            let family = SubgeeFamily::from_predicate(n, |s| x[s.bits() as usize]);
            let gees = family.maximal();
            if n >= 9 && !is_feasible(n, &gees)? {
                return Ok(None);
            }
            Ok(Some(GeneticCode::from_parts_unchecked(n, gees)))
        })
        .filter_map(Result::transpose)
        .collect::<Result<_>>()?;
    codes.sort_by_key(GeneticCode::sort_key);
    codes.dedup();
    Ok(codes)
}
