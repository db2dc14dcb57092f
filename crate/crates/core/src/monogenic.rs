//! Closed-form duality values for codes with a single gee.
//!
//! For the gee `g_1 > ... > g_k` with gaps `a_i = g_i - g_{i+1}` (`g_{k+1} = 0`),
//! the value of the top-degree functional on `R^{m-|J|} V_J` is a sum over
//! lattice-path tuples `B` of products of binomial parities, and only
//! depends on the residues `a_i mod 2^{lg(2i)}`.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::combinatorics::{binom_mod2, lg, theta, SubsetMask};
use crate::error::{Error, Result};

/// Gaps `a_1, ..., a_k` of a gee, all positive.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GapVector(Vec<u32>);

impl GapVector {
    pub fn new(a: Vec<u32>) -> Result<Self> {
        if a.is_empty() || a.contains(&0) {
            return Err(Error::Domain(format!("gaps must be positive and nonempty, got {a:?}")));
        }
        Ok(GapVector(a))
    }

    pub fn from_gee(gee: SubsetMask) -> Result<Self> {
        let g = gee.to_desc_vec();
        if g.is_empty() {
            return Err(Error::Domain("the empty gee has no gap vector".into()));
        }
        let mut a: Vec<u32> = g.windows(2).map(|w| w[0] - w[1]).collect();
        a.push(*g.last().unwrap());
        Ok(GapVector(a))
    }

    pub fn gaps(&self) -> &[u32] {
        &self.0
    }

    pub fn k(&self) -> usize {
        self.0.len()
    }

    /// The gee `g_1 > ... > g_k` as partial sums from the end.
    pub fn gee_elements(&self) -> Vec<u32> {
        let mut g: Vec<u32> = self
            .0
            .iter()
            .rev()
            .scan(0, |acc, &x| {
                *acc += x;
                Some(*acc)
            })
            .collect();
        g.reverse();
        g
    }

    pub fn gee(&self) -> Result<SubsetMask> {
        SubsetMask::from_elements(self.gee_elements())
    }

    /// `w_i = V_{g_i}` for the 1-based indices in `idx`, as a support set.
    pub fn w_support(&self, idx: SubsetMask) -> Result<SubsetMask> {
        let g = self.gee_elements();
        if idx.max_element().is_some_and(|i| i as usize > g.len()) {
            return Err(Error::Domain(format!("index set {idx} exceeds k = {}", g.len())));
        }
        SubsetMask::from_elements(idx.iter().map(|i| g[i as usize - 1]))
    }
}

/// `2^{lg(2i)}`, the modulus for the `i`-th gap.
pub fn gap_modulus(i: usize) -> u32 {
    1 << lg(2 * i as u64)
}

/// Reduced gaps `a_i mod 2^{lg(2i)}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct AbarVector(Vec<u32>);

impl AbarVector {
    pub fn new(abar: Vec<u32>) -> Result<Self> {
        for (i, &x) in abar.iter().enumerate() {
            if x >= gap_modulus(i + 1) {
                return Err(Error::Domain(format!("entry {x} at position {} is not reduced", i + 1)));
            }
        }
        Ok(AbarVector(abar))
    }

    pub fn values(&self) -> &[u32] {
        &self.0
    }

    pub fn k(&self) -> usize {
        self.0.len()
    }

    /// A gap vector with these residues; zero residues use the modulus.
    pub fn representative(&self) -> GapVector {
        GapVector(self.0.iter().enumerate().map(|(i, &x)| if x == 0 { gap_modulus(i + 1) } else { x }).collect())
    }

    /// Every reduced vector of length `k`, in lexicographic order.
    pub fn all(k: usize) -> Vec<AbarVector> {
        let mut out = vec![Vec::with_capacity(k)];
        for i in 1..=k {
            out = out
                .into_iter()
                .flat_map(|v: Vec<u32>| {
                    (0..gap_modulus(i)).map(move |x| {
                        let mut w = v.clone();
                        w.push(x);
                        w
                    })
                })
                .collect();
        }
        out.into_iter().map(AbarVector).collect()
    }
}

impl fmt::Display for AbarVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

pub fn abar_reduce(a: &GapVector) -> AbarVector {
    AbarVector(a.0.iter().enumerate().map(|(i, &x)| x % gap_modulus(i + 1)).collect())
}

/// Parity of `C(a + b - 2, b)`, taking `C(-1, 0) = 1`.
fn gap_binom(a: u32, b: u32) -> u8 {
    if b == 0 {
        1
    } else {
        binom_mod2(u64::from(a + b - 2), i64::from(b))
    }
}

/// Sum over `B` with `|B| = k - |J|` and `B + theta(J)` a lattice path of
/// the products of `C(a_i + b_i - 2, b_i)`, mod 2.
pub fn phi_closed_form(a: &GapVector, j: SubsetMask) -> Result<bool> {
    let th = theta(j, &a.gee_elements())?;
    Ok(phi_from_theta(a, &th.0))
}

/// The same value from the gap counts `theta(J)` alone.
pub fn phi_from_theta(a: &GapVector, th: &[u32]) -> bool {
    let k = a.k();
    assert_eq!(th.len(), k, "theta has the wrong length");
    let r: u32 = th.iter().sum();
    if r as usize > k {
        return false;
    }
    let mut total = 0u8;
    // depth-first over b_1, ..., b_k with prefix sums of B + theta at most i
    fn walk(a: &[u32], th: &[u32], i: usize, left: u32, prefix: u32, prod: u8, total: &mut u8) {
        if i == a.len() {
            if left == 0 {
                *total ^= prod;
            }
            return;
        }
        for b in 0..=left {
            let p = prefix + th[i] + b;
            if p > i as u32 + 1 {
                break;
            }
            let f = gap_binom(a[i], b);
            if f == 1 {
                walk(a, th, i + 1, left - b, p, prod, total);
            }
        }
    }
    walk(&a.0, th, 0, k as u32 - r, 0, 1, &mut total);
    total == 1
}

/// `phi(R^m)` depends only on the reduced gaps.
pub fn rm_nonzero(abar: &AbarVector) -> bool {
    phi_closed_form(&abar.representative(), SubsetMask::EMPTY).expect("empty J is always valid")
}

/// `(number of reduced gap vectors of length k, number with R^m = 0)`.
pub fn count_rm_zero(k: usize) -> Result<(u64, u64)> {
    if !(1..=8).contains(&k) {
        return Err(Error::Domain(format!("k = {k} outside 1..=8")));
    }
    let all = AbarVector::all(k);
    let zero = all.par_iter().filter(|v| !rm_nonzero(v)).count();
    Ok((all.len() as u64, zero as u64))
}

/// Whether every `a_i` is 1 modulo `2^{lg(2i)}`.
pub fn toplem_check(a: &GapVector) -> bool {
    abar_reduce(a).0.iter().all(|&x| x == 1)
}

/// Directly: every `R^{m-t} w_{i_1} ... w_{i_t}` with `t < k` has `phi = 0`.
pub fn proper_w_monomials_vanish(a: &GapVector) -> bool {
    let k = a.k();
    SubsetMask::interval(k as u32).subsets().filter(|s| s.len() < k).all(|idx| !phi_from_theta(a, &w_theta(k, idx)))
}

/// Gap counts of `prod_{i in idx} w_i`: one element in each chosen gap.
pub fn w_theta(k: usize, idx: SubsetMask) -> Vec<u32> {
    (1..=k as u32).map(|i| u32::from(idx.contains(i))).collect()
}

/// If every residue is 0 or 1 and some are 1, the indices `Z` of the 1s
/// and `r = |Z|`.
pub fn thm01_certificate(abar: &AbarVector) -> Option<(SubsetMask, u32)> {
    if abar.0.iter().any(|&x| x > 1) {
        return None;
    }
    let z = SubsetMask::from_elements(abar.0.iter().enumerate().filter(|(_, &x)| x == 1).map(|(i, _)| i as u32 + 1))
        .expect("k is small");
    if z.is_empty() {
        None
    } else {
        Some((z, z.len() as u32))
    }
}

/// If the residues are 2 on `T`, 1 on `Z`, 0 elsewhere, and each `t` in
/// `T` follows a 0, returns `(T, Z, |T| + |Z|)`.
pub fn thm02_certificate(abar: &AbarVector) -> Option<(SubsetMask, SubsetMask, u32)> {
    let mut t = SubsetMask::EMPTY;
    let mut z = SubsetMask::EMPTY;
    for (i, &x) in abar.0.iter().enumerate() {
        let idx = i as u32 + 1;
        match x {
            0 => {}
            1 => z.insert(idx),
            2 if i >= 1 && abar.0[i - 1] == 0 => t.insert(idx),
            _ => return None,
        }
    }
    if t.is_empty() && z.is_empty() {
        None
    } else {
        Some((t, z, (t.len() + z.len()) as u32))
    }
}

/// The `w`-index set of the thm02 monomial: `Z` together with `t - 1` for `t` in `T`.
pub fn thm02_indices(t: SubsetMask, z: SubsetMask) -> SubsetMask {
    t.iter().fold(z, |acc, i| acc.with(i - 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ga(a: &[u32]) -> GapVector {
        GapVector::new(a.to_vec()).unwrap()
    }

    fn set(e: &[u32]) -> SubsetMask {
        SubsetMask::from_elements(e.iter().copied()).unwrap()
    }

    #[test]
    fn gap_vector_round_trip() {
        let g = set(&[6, 3, 2, 1]);
        let a = GapVector::from_gee(g).unwrap();
        assert_eq!(a.gaps(), &[3, 1, 1, 1]);
        assert_eq!(a.gee().unwrap(), g);
        assert_eq!(a.w_support(set(&[1, 3])).unwrap(), set(&[6, 2]));
        assert!(GapVector::new(vec![1, 0]).is_err());
    }

    #[test]
    fn closed_form_examples() {
        assert!(!phi_closed_form(&ga(&[1, 1, 1]), SubsetMask::EMPTY).unwrap());
        assert!(phi_closed_form(&ga(&[2]), SubsetMask::EMPTY).unwrap());
        // one index per gap: only B = 0 contributes
        let a = ga(&[2, 3, 1]);
        let g = a.gee_elements();
        assert!(phi_closed_form(&a, set(&[g[0], g[1], g[2]])).unwrap());
        assert!(phi_closed_form(&a, set(&[g[0] - 1, g[1] - 2, g[2]])).unwrap());
        assert!(phi_closed_form(&a, set(&[g[0] + 1])).is_err());
    }

    #[test]
    fn reduction_examples() {
        assert_eq!(abar_reduce(&ga(&[3, 1, 1, 1])).values(), &[1, 1, 1, 1]);
        assert_eq!(abar_reduce(&ga(&[1, 2, 3, 4])).values(), &[1, 2, 3, 4]);
        assert_eq!(abar_reduce(&ga(&[2, 5, 4, 9])).values(), &[0, 1, 0, 1]);
        assert_eq!(AbarVector::all(3).len(), 32);
    }

    #[test]
    fn table_counts() {
        assert_eq!(count_rm_zero(3).unwrap(), (32, 20));
        assert_eq!(count_rm_zero(4).unwrap(), (256, 128));
    }

    #[test]
    fn three_gap_polynomial() {
        let c = |x: u32, k: u32| binom_mod2(u64::from(x), i64::from(k)) as u32;
        for a1 in 1..=8 {
            for a2 in 1..=8 {
                for a3 in 1..=8 {
                    let (p1, p2, p3) = (a1 - 1, a2 - 1, a3 - 1);
                    let poly = (p1 * p2 * p3 + c(a3, 2) * (p1 + p2) + c(a2, 2) * p3 + c(a3 + 1, 3)) % 2;
                    let direct = phi_closed_form(&ga(&[a1, a2, a3]), SubsetMask::EMPTY).unwrap();
                    assert_eq!(poly == 1, direct, "a = ({a1},{a2},{a3})");
                }
            }
        }
    }

    #[test]
    fn toplem_matches_exhaustive_check() {
        for k in 1..=5 {
            for abar in AbarVector::all(k) {
                let a = abar.representative();
                assert_eq!(toplem_check(&a), proper_w_monomials_vanish(&a), "{abar}");
            }
        }
        assert!(toplem_check(&ga(&[3, 1, 1, 1])));
        assert!(!toplem_check(&ga(&[2, 1, 1])));
    }

    #[test]
    fn certificate_patterns() {
        let v = |x: &[u32]| AbarVector::new(x.to_vec()).unwrap();
        assert_eq!(thm01_certificate(&v(&[1, 1, 0, 1])), Some((set(&[1, 2, 4]), 3)));
        assert_eq!(thm01_certificate(&v(&[0, 0, 0])), None);
        assert_eq!(thm01_certificate(&v(&[1, 2, 0])), None);
        assert_eq!(thm02_certificate(&v(&[0, 2, 1])), Some((set(&[2]), set(&[3]), 2)));
        assert_eq!(thm02_certificate(&v(&[0, 2, 0, 2])), Some((set(&[2, 4]), SubsetMask::EMPTY, 2)));
        assert_eq!(thm02_certificate(&v(&[1, 2, 1])), None);
        assert!(AbarVector::new(vec![2]).is_err());
    }

    fn satisfies_minimality(a: &GapVector, idx: SubsetMask) -> bool {
        let k = a.k();
        phi_from_theta(a, &w_theta(k, idx))
            && idx.subsets().filter(|&s| s != idx).all(|s| !phi_from_theta(a, &w_theta(k, s)))
    }

    #[test]
    fn certificates_satisfy_their_hypothesis() {
        for k in 1..=5 {
            for abar in AbarVector::all(k) {
                let a = abar.representative();
                if let Some((z, _)) = thm01_certificate(&abar) {
                    assert!(satisfies_minimality(&a, z), "thm01 {abar}");
                }
                if let Some((t, z, r)) = thm02_certificate(&abar) {
                    let idx = thm02_indices(t, z);
                    assert_eq!(idx.len() as u32, r);
                    assert!(satisfies_minimality(&a, idx), "thm02 {abar}");
                }
            }
        }
    }

    proptest! {
        #[test]
        fn depends_only_on_reduced_gaps(
            a in prop::collection::vec(1u32..=64, 1..=6),
            shifts in prop::collection::vec(0u32..4, 6),
            th in prop::collection::vec(0u32..=2, 6),
        ) {
            let a1 = GapVector::new(a.clone()).unwrap();
            let a2 = GapVector::new(a.iter().enumerate().map(|(i, &x)| x + shifts[i] * gap_modulus(i + 1)).collect()).unwrap();
            prop_assert_eq!(abar_reduce(&a1), abar_reduce(&a2));
            // a gap of size a_i holds at most a_i elements of J
            let th: Vec<u32> = a.iter().zip(&th).map(|(&x, &t)| t.min(x)).collect();
            prop_assert_eq!(phi_from_theta(&a1, &th), phi_from_theta(&a2, &th));
        }
    }
}
