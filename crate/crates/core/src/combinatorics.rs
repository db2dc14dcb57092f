//! Subset, order and parity primitives shared by the rest of the crate.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest element a [`SubsetMask`] can hold.
pub const MAX_ELEMENT: u32 = 31;

/// A finite set of positive integers `1..=31`, stored as a bit mask
/// (bit `i - 1` is element `i`).
///
/// Iteration is in increasing order. The derived `Ord` compares raw masks,
/// which is colexicographic order on the underlying sets.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SubsetMask(u32);

impl SubsetMask {
    pub const EMPTY: SubsetMask = SubsetMask(0);

    pub const fn from_bits(bits: u32) -> Self {
        SubsetMask(bits)
    }

    pub const fn bits(self) -> u32 {
        self.0
    }

    /// The interval `{1, ..., k}`.
    pub fn interval(k: u32) -> Self {
        assert!(k <= MAX_ELEMENT, "interval bound {k} too large");
        if k == 0 {
            SubsetMask(0)
        } else {
            SubsetMask(u32::MAX >> (32 - k))
        }
    }

    pub fn singleton(i: u32) -> Self {
        assert!((1..=MAX_ELEMENT).contains(&i), "element {i} out of range");
        SubsetMask(1 << (i - 1))
    }

    /// Builds a set from elements; duplicates are rejected.
    pub fn from_elements<I: IntoIterator<Item = u32>>(elems: I) -> Result<Self> {
        let mut bits = 0u32;
        for i in elems {
            if !(1..=MAX_ELEMENT).contains(&i) {
                return Err(Error::Domain(format!("set element {i} outside 1..={MAX_ELEMENT}")));
            }
            let b = 1u32 << (i - 1);
            if bits & b != 0 {
                return Err(Error::Domain(format!("repeated set element {i}")));
            }
            bits |= b;
        }
        Ok(SubsetMask(bits))
    }

    pub fn contains(self, i: u32) -> bool {
        (1..=MAX_ELEMENT).contains(&i) && self.0 & (1 << (i - 1)) != 0
    }

    pub fn insert(&mut self, i: u32) {
        *self = self.with(i);
    }

    pub fn remove(&mut self, i: u32) {
        *self = self.without(i);
    }

    #[must_use]
    pub fn with(self, i: u32) -> Self {
        SubsetMask(self.0 | Self::singleton(i).0)
    }

    #[must_use]
    pub fn without(self, i: u32) -> Self {
        SubsetMask(self.0 & !Self::singleton(i).0)
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn max_element(self) -> Option<u32> {
        (self.0 != 0).then(|| 32 - self.0.leading_zeros())
    }

    pub fn min_element(self) -> Option<u32> {
        (self.0 != 0).then(|| self.0.trailing_zeros() + 1)
    }

    pub fn union(self, other: Self) -> Self {
        SubsetMask(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        SubsetMask(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        SubsetMask(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    /// Complement inside `{1, ..., n}`.
    pub fn complement_in(self, n: u32) -> Self {
        SubsetMask(Self::interval(n).0 & !self.0)
    }

    /// Elements in increasing order.
    pub fn iter(self) -> Elements {
        Elements(self.0)
    }

    /// Elements in decreasing order.
    pub fn to_desc_vec(self) -> Vec<u32> {
        let mut v: Vec<u32> = self.iter().collect();
        v.reverse();
        v
    }

    /// All subsets of `self`, in increasing mask order.
    pub fn subsets(self) -> impl Iterator<Item = SubsetMask> {
        let full = self.0;
        let mut next = Some(0u32);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == full { None } else { Some((cur.wrapping_sub(full)) & full) };
            Some(SubsetMask(cur))
        })
    }

    /// Key for the canonical "size, then colex" order used for bases.
    pub fn graded_key(self) -> (usize, u32) {
        (self.len(), self.0)
    }
}

pub struct Elements(u32);

impl Iterator for Elements {
    type Item = u32;

    fn next(&mut self) -> Option<u32> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros();
        self.0 &= self.0 - 1;
        Some(i + 1)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Elements {}

impl fmt::Debug for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, i) in self.to_desc_vec().into_iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{i}")?;
        }
        f.write_str("}")
    }
}

/// The dominance order: `s <= t` when `t` contains elementwise larger
/// representatives of the elements of `s`.
///
/// Matching the `i`-th largest element of `s` against the `i`-th largest of
/// `t` is optimal, so the existential definition reduces to a linear scan.
pub fn dominates(s: SubsetMask, t: SubsetMask) -> bool {
    if s.len() > t.len() {
        return false;
    }
    let mut sb = s.0;
    let mut tb = t.0;
    while sb != 0 {
        let si = 31 - sb.leading_zeros();
        let ti = 31 - tb.leading_zeros();
        if si > ti {
            return false;
        }
        sb &= !(1 << si);
        tb &= !(1 << ti);
    }
    true
}

/// Sets covered from below by `s` in the dominance order, restricted to
/// elements `<= top`: raise one element by one, or add the element 1.
pub(crate) fn dominance_up_covers(s: SubsetMask, top: u32) -> impl Iterator<Item = SubsetMask> {
    let add_one = (!s.contains(1) && top >= 1).then(|| s.with(1));
    let raises = s.iter().filter(move |&x| x < top && !s.contains(x + 1)).map(move |x| s.without(x).with(x + 1));
    add_one.into_iter().chain(raises)
}

/// Sets covering `s` from above, i.e. the generators of `<=` going down:
/// lower one element by one, or drop the element 1.
pub(crate) fn dominance_down_covers(s: SubsetMask) -> impl Iterator<Item = SubsetMask> {
    let drop_one = s.contains(1).then(|| s.without(1));
    let lowers = s.iter().filter(move |&x| x > 1 && !s.contains(x - 1)).map(move |x| s.without(x).with(x - 1));
    drop_one.into_iter().chain(lowers)
}

/// Parity of the binomial coefficient `C(n, k)`, zero outside `0 <= k <= n`.
pub fn binom_mod2(n: u64, k: i64) -> u8 {
    if k < 0 || k as u64 > n {
        return 0;
    }
    let k = k as u64;
    u8::from(k & (n - k) == 0)
}

/// Same as [`binom_mod2`] but with a signed top, zero whenever `n < 0`.
pub fn binom_mod2_signed(n: i64, k: i64) -> u8 {
    if n < 0 {
        0
    } else {
        binom_mod2(n as u64, k)
    }
}

/// A `k`-tuple of nonnegative integers.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct KTuple(pub Vec<u32>);

impl KTuple {
    pub fn zeros(k: usize) -> Self {
        KTuple(vec![0; k])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Membership in the lattice-path set: every prefix sum is at most the
    /// prefix length.
    pub fn in_sk(&self) -> bool {
        in_sk(&self.0)
    }
}

/// True iff every prefix sum of `b` is at most its length.
pub fn in_sk(b: &[u32]) -> bool {
    let mut sum = 0u64;
    for (j, &x) in b.iter().enumerate() {
        sum += u64::from(x);
        if sum > j as u64 + 1 {
            return false;
        }
    }
    true
}

/// Counts the elements of `j` in each gap `(g_{i+1}, g_i]` of a decreasing
/// sequence `g`, with `g_{k+1} = 0`.
pub fn theta(j: SubsetMask, g: &[u32]) -> Result<KTuple> {
    if g.windows(2).any(|w| w[0] <= w[1]) || g.last() == Some(&0) {
        return Err(Error::Domain(format!("gee {g:?} is not strictly decreasing and positive")));
    }
    let top = g.first().copied().unwrap_or(0);
    if let Some(x) = j.max_element() {
        if x > top {
            return Err(Error::Domain(format!("element {x} of {j} exceeds {top}")));
        }
    }
    let mut out = vec![0u32; g.len()];
    for x in j.iter() {
        // the gap index is the last i with g_i >= x
        let i = g.iter().rposition(|&gi| gi >= x).expect("x <= g_1");
        out[i] += 1;
    }
    Ok(KTuple(out))
}

/// 2-adic valuation and floor of log base 2.
pub fn two_adic(x: u64) -> Result<(u32, u32)> {
    if x == 0 {
        return Err(Error::Domain("two_adic needs a positive argument".into()));
    }
    Ok((x.trailing_zeros(), lg(x)))
}

/// Floor of log base 2; `x` must be positive.
pub fn lg(x: u64) -> u32 {
    assert!(x > 0, "lg of zero");
    63 - x.leading_zeros()
}

pub fn is_power_of_two(x: u64) -> bool {
    x != 0 && x & (x - 1) == 0
}
