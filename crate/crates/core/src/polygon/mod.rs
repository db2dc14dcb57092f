//! Length vectors, shortness, genetic codes and their enumeration.

mod code;
mod enumerate;
mod realize;

use std::fmt;

use num_rational::Ratio;
use num_traits::{Signed, Zero};
use serde::{Serialize, Serializer};

use crate::combinatorics::SubsetMask;
use crate::error::{Error, Result};

pub use code::{is_admissible, GeneticCode, SubgeeFamily};
pub use enumerate::enumerate_codes;
pub use realize::realize;

/// Largest number of sides handled by single-code analysis. Subgee families
/// are stored as bitmaps over `2^(n-1)` sets.
pub const MAX_N: u32 = 20;

pub type Length = Ratio<i64>;

/// Side lengths `l_1 <= ... <= l_n` of a planar polygon, `n >= 3`, with
/// `l_n < l_1 + ... + l_{n-1}`.
#[derive(Clone, PartialEq, Eq)]
pub struct LengthVector {
    lengths: Vec<Length>,
    // lengths times the common denominator
    scaled: Vec<i128>,
}

impl LengthVector {
    pub fn new(lengths: Vec<Length>) -> Result<Self> {
        let n = lengths.len();
        if n < 3 || n as u32 > MAX_N {
            return Err(Error::OutOfRange { n: n as u32, lo: 3, hi: MAX_N });
        }
        if lengths.iter().any(|l| !l.is_positive()) {
            return Err(Error::Domain("side lengths must be positive".into()));
        }
        if lengths.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::Domain("side lengths must be nondecreasing".into()));
        }
        let den = lengths.iter().fold(1i128, |acc, l| lcm(acc, i128::from(*l.denom())));
        let scaled: Vec<i128> =
            lengths.iter().map(|l| i128::from(*l.numer()) * (den / i128::from(*l.denom()))).collect();
        let last = scaled[n - 1];
        let rest: i128 = scaled[..n - 1].iter().sum();
        if last >= rest {
            return Err(Error::EmptySpace);
        }
        Ok(LengthVector { lengths, scaled })
    }

    /// Sorts the lengths first; permuting sides does not change the space.
    pub fn from_unsorted(mut lengths: Vec<Length>) -> Result<Self> {
        lengths.sort();
        Self::new(lengths)
    }

    pub fn from_integers(lengths: &[i64]) -> Result<Self> {
        Self::new(lengths.iter().map(|&x| Length::from_integer(x)).collect())
    }

    /// Parses `"1,1,2/3,4"`; the entries are sorted.
    pub fn parse(s: &str) -> Result<Self> {
        let err = || Error::Parse { what: "length vector", input: s.to_string() };
        let lengths = s
            .split(',')
            .map(|t| {
                let t = t.trim();
                match t.split_once('/') {
                    Some((a, b)) => {
                        let a: i64 = a.trim().parse().map_err(|_| err())?;
                        let b: i64 = b.trim().parse().map_err(|_| err())?;
                        if b == 0 {
                            return Err(err());
                        }
                        Ok(Length::new(a, b))
                    }
                    None => t.parse::<i64>().map(Length::from_integer).map_err(|_| err()),
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_unsorted(lengths)
    }

    pub fn n(&self) -> u32 {
        self.lengths.len() as u32
    }

    pub fn lengths(&self) -> &[Length] {
        &self.lengths
    }

    /// Entries as integers, when they all are.
    pub fn as_integers(&self) -> Option<Vec<i64>> {
        self.lengths.iter().map(|l| l.is_integer().then(|| l.to_integer())).collect()
    }

    /// The perimeter `|l|`.
    pub fn total(&self) -> Length {
        self.lengths.iter().fold(Length::zero(), |a, b| a + b)
    }

    fn scaled_sum(&self, s: u32) -> i128 {
        SubsetMask::from_bits(s).iter().map(|i| self.scaled[i as usize - 1]).sum()
    }

    fn scaled_total(&self) -> i128 {
        self.scaled.iter().sum()
    }

    /// No subset has exactly half the perimeter.
    pub fn is_generic(&self) -> bool {
        let n = self.n();
        let total = self.scaled_total();
        // complementary pairs: only subsets containing n
        let top = 1u32 << (n - 1);
        (0..top).all(|s| 2 * self.scaled_sum(s | top) != total)
    }

    fn require_generic(&self) -> Result<()> {
        if self.is_generic() {
            Ok(())
        } else {
            Err(Error::NotGeneric)
        }
    }

    /// `S` (a subset of `{1..n}`) is short when its lengths sum to less than
    /// the rest.
    pub fn is_short(&self, s: SubsetMask) -> Result<bool> {
        self.require_generic()?;
        if s.max_element().is_some_and(|x| x > self.n()) {
            return Err(Error::Domain(format!("{s} is not a subset of 1..={}", self.n())));
        }
        Ok(2 * self.scaled_sum(s.bits()) < self.scaled_total())
    }

    /// The maximal short sets containing `n`, with `n` dropped.
    pub fn genetic_code(&self) -> Result<GeneticCode> {
        self.require_generic()?;
        let n = self.n();
        let top = self.scaled[n as usize - 1];
        let total = self.scaled_total();
        let family = SubgeeFamily::from_predicate(n, |s| 2 * (self.scaled_sum(s.bits()) + top) < total);
        let gees = family.maximal();
        Ok(GeneticCode::from_parts_unchecked(n, gees))
    }

    /// Brings an integer generic vector into the equivalent form with
    /// `l_n + l_{n-1} <= l_1 + ... + l_{n-2} + 1` and odd perimeter.
    pub fn normalize(&self) -> Result<LengthVector> {
        let mut l = self.as_integers().ok_or_else(|| Error::Precondition("normalize needs integer lengths".into()))?;
        self.require_generic()?;
        let n = l.len();
        if l.iter().sum::<i64>() % 2 == 0 {
            // every signed split is a nonzero integer, so 2l + e_n keeps all
            // signs and makes the total odd
            for x in &mut l {
                *x *= 2;
            }
            l[n - 1] += 1;
        }
        loop {
            let excess = l[n - 1] + l[n - 2] - l[..n - 2].iter().sum::<i64>();
            // excess = 2d + 1
            if excess <= 1 {
                break;
            }
            if l[n - 2] > l[n - 3] {
                l[n - 1] -= 1;
                l[n - 2] -= 1;
            } else if l[n - 1] > l[n - 2] {
                // block l_{n-1} = ... = l_{n-t} > l_{n-t-1}, t >= 2
                let v = l[n - 2];
                let t = (1..n).take_while(|&j| l[n - 1 - j] == v).count();
                for j in 1..=t {
                    l[n - 1 - j] -= 1;
                }
                l[n - 1] -= t as i64;
            } else {
                l[n - 1] -= 2;
                l[n - 2] -= 2;
                l[n - 3] -= 2;
            }
        }
        LengthVector::from_integers(&l)
    }

    pub fn satisfies_lcond(&self) -> bool {
        match self.as_integers() {
            Some(l) => {
                let n = l.len();
                l[n - 1] + l[n - 2] <= l[..n - 2].iter().sum::<i64>() + 1
            }
            None => false,
        }
    }

    /// Adds one side while keeping the gees: `(l_1, ..., l_{n-1}, h - l_n, h)`
    /// with `h = (|l| + 1) / 2`.
    pub fn stabilize(&self) -> Result<LengthVector> {
        let l = self.as_integers().ok_or_else(|| Error::Precondition("stabilize needs integer lengths".into()))?;
        let total: i64 = l.iter().sum();
        if total % 2 == 0 {
            return Err(Error::Precondition("stabilize needs an odd perimeter".into()));
        }
        if !self.satisfies_lcond() {
            return Err(Error::Domain("stabilize needs l_n + l_(n-1) <= l_1 + ... + l_(n-2) + 1".into()));
        }
        let n = l.len();
        let half = (total + 1) / 2;
        let mut out = l[..n - 1].to_vec();
        out.push(half - l[n - 1]);
        out.push(half);
        LengthVector::from_integers(&out)
    }
}

pub(crate) fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: i128, b: i128) -> i128 {
    a / gcd(a, b) * b
}

impl fmt::Display for LengthVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, l) in self.lengths.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for LengthVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

impl Serialize for LengthVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.lengths.iter().map(|l| l.to_string()))
    }
}
