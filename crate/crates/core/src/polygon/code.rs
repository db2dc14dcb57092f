use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::MAX_N;
use crate::combinatorics::{dominance_down_covers, dominance_up_covers, dominates, SubsetMask};
use crate::error::{Error, Result};

/// All subgees of a code: the subsets `S` of `{1..n-1}` with `S + {n}`
/// short. Downward closed under dominance (hence also under inclusion).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgeeFamily {
    n: u32,
    // graded order: size, then colex
    members: Vec<SubsetMask>,
    bitmap: Vec<u64>,
}

impl SubgeeFamily {
    /// Downward closure of `gees` over `{1..n-1}`.
    pub fn from_gees(n: u32, gees: &[SubsetMask]) -> Self {
        Self::from_predicate(n, |s| gees.iter().any(|&g| dominates(s, g)))
    }

    pub(crate) fn from_predicate(n: u32, mut keep: impl FnMut(SubsetMask) -> bool) -> Self {
        assert!((2..=MAX_N).contains(&n), "n = {n} out of range");
        let universe = 1usize << (n - 1);
        let mut bitmap = vec![0u64; universe.div_ceil(64)];
        let mut members = Vec::new();
        for bits in 0..universe as u32 {
            let s = SubsetMask::from_bits(bits);
            if keep(s) {
                bitmap[bits as usize / 64] |= 1 << (bits % 64);
                members.push(s);
            }
        }
        members.sort_by_key(|s| s.graded_key());
        SubgeeFamily { n, members, bitmap }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn contains(&self, s: SubsetMask) -> bool {
        let b = s.bits() as usize;
        b < self.bitmap.len() * 64 && self.bitmap[b / 64] >> (b % 64) & 1 == 1
    }

    /// Members in graded (size, then colex) order.
    pub fn members(&self) -> &[SubsetMask] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn max_size(&self) -> usize {
        self.members.last().map_or(0, |s| s.len())
    }

    /// Dominance-maximal members, in canonical gee order.
    pub fn maximal(&self) -> Vec<SubsetMask> {
        let top = self.n - 1;
        let mut out: Vec<SubsetMask> =
            self.members.iter().copied().filter(|&s| dominance_up_covers(s, top).all(|u| !self.contains(u))).collect();
        sort_gees(&mut out);
        out
    }

    /// Dominance-minimal subsets of `{1..n-1}` that are not members.
    pub fn minimal_non_members(&self) -> Vec<SubsetMask> {
        let universe = 1u32 << (self.n - 1);
        (0..universe)
            .map(SubsetMask::from_bits)
            .filter(|&s| !self.contains(s) && dominance_down_covers(s).all(|d| self.contains(d)))
            .collect()
    }

    /// The sets `i` with `{i}` a subgee, i.e. the nonzero classes `V_i`.
    pub fn active_indices(&self) -> SubsetMask {
        self.members.iter().filter(|s| s.len() == 1).fold(SubsetMask::EMPTY, |a, &s| a.union(s))
    }
}

fn gee_cmp(a: &SubsetMask, b: &SubsetMask) -> Ordering {
    // larger gees first: compare decreasing element lists, reversed
    b.to_desc_vec().cmp(&a.to_desc_vec())
}

pub(crate) fn sort_gees(gees: &mut [SubsetMask]) {
    gees.sort_by(gee_cmp);
}

/// A genetic code: an antichain of gees over `{1..n-1}` together with `n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GeneticCode {
    n: u32,
    gees: Vec<SubsetMask>,
}

impl GeneticCode {
    /// Validates the antichain, the range of every element, and
    /// admissibility (see [`is_admissible`]).
    pub fn new(n: u32, mut gees: Vec<SubsetMask>) -> Result<Self> {
        check_structure(n, &gees)?;
        sort_gees(&mut gees);
        gees.dedup();
        if let Err(reason) = admissibility(n, &gees) {
            return Err(Error::NotAdmissible(reason));
        }
        Ok(GeneticCode { n, gees })
    }

    pub(crate) fn from_parts_unchecked(n: u32, mut gees: Vec<SubsetMask>) -> Self {
        sort_gees(&mut gees);
        GeneticCode { n, gees }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// `m = n - 3`, the dimension of the polygon space.
    pub fn m(&self) -> u32 {
        self.n - 3
    }

    pub fn gees(&self) -> &[SubsetMask] {
        &self.gees
    }

    pub fn subgees(&self) -> SubgeeFamily {
        SubgeeFamily::from_gees(self.n, &self.gees)
    }

    /// Size of the largest gee.
    pub fn largest_gee_size(&self) -> usize {
        self.gees.iter().map(|g| g.len()).max().unwrap_or(0)
    }

    pub fn is_monogenic(&self) -> bool {
        self.gees.len() == 1
    }

    /// The code `<{n}>`, whose space is a real projective space.
    pub fn is_projective_space(&self) -> bool {
        self.gees == [SubsetMask::EMPTY]
    }

    /// The code `<{n, n-3, ..., 1}>`, whose space is a torus.
    pub fn is_torus(&self) -> bool {
        self.n >= 4 && self.gees == [SubsetMask::interval(self.n - 3)]
    }

    /// Key for the canonical order of codes: gee lists compared
    /// lexicographically, each gee as its decreasing element list.
    pub fn sort_key(&self) -> (u32, Vec<Vec<u32>>) {
        (self.n, self.gees.iter().map(|g| g.to_desc_vec()).collect())
    }
}

fn check_structure(n: u32, gees: &[SubsetMask]) -> Result<()> {
    if !(3..=MAX_N).contains(&n) {
        return Err(Error::OutOfRange { n, lo: 3, hi: MAX_N });
    }
    if gees.is_empty() {
        return Err(Error::NotAdmissible("no gees".into()));
    }
    for g in gees {
        if g.max_element().is_some_and(|x| x >= n) {
            return Err(Error::NotAdmissible(format!("gee {g} has an element >= n = {n}")));
        }
    }
    for (i, a) in gees.iter().enumerate() {
        for b in &gees[i + 1..] {
            if a != b && (dominates(*a, *b) || dominates(*b, *a)) {
                return Err(Error::NotAdmissible(format!("gees {a} and {b} are comparable")));
            }
        }
    }
    Ok(())
}

/// Whether `gees` is the genetic code of some length vector with `n` sides.
///
/// The gees determine every short set of `{1..n}`: `A + {n}` is short iff
/// `A` is a subgee, and a set `B` avoiding `n` is short iff its complement
/// in `{1..n-1}` is not. Exactly one of each complementary pair is then
/// short, and the test is that this family is closed downward under
/// dominance, as shortness is for any ordered length vector. That closure
/// is sufficient for `n <= 8`; from `n = 9` on the linear system behind
/// [`super::realize`] is also solved exactly.
pub fn is_admissible(n: u32, gees: &[SubsetMask]) -> bool {
    check_structure(n, gees).is_ok() && admissibility(n, gees).is_ok()
}

fn admissibility(n: u32, gees: &[SubsetMask]) -> std::result::Result<(), String> {
    down_closure(n, gees)?;
    if n >= 9 && !super::realize::is_feasible(n, gees).map_err(|e| e.to_string())? {
        return Err("down-closed but not realizable by any length vector".into());
    }
    Ok(())
}

fn down_closure(n: u32, gees: &[SubsetMask]) -> std::result::Result<(), String> {
    let family = SubgeeFamily::from_gees(n, gees);
    let low = SubsetMask::interval(n - 1);
    let short = |b: SubsetMask| {
        if b.contains(n) {
            family.contains(b.without(n))
        } else {
            !family.contains(low.difference(b))
        }
    };
    for bits in 0..1u32 << n {
        let b = SubsetMask::from_bits(bits);
        if !short(b) {
            continue;
        }
        if let Some(below) = dominance_down_covers(b).find(|&d| !short(d)) {
            return Err(format!("{b} would be short while {below} is long"));
        }
    }
    Ok(())
}

fn symbol(x: u32) -> char {
    match x {
        1..=9 => char::from_digit(x, 10).unwrap(),
        10 => 'T',
        11 => 'E',
        _ => unreachable!("symbol for {x}"),
    }
}

fn format_gene(n: u32, gee: SubsetMask) -> String {
    let mut elems = vec![n];
    elems.extend(gee.to_desc_vec());
    if n <= 11 {
        elems.into_iter().map(symbol).collect()
    } else {
        let parts: Vec<String> = elems.iter().map(u32::to_string).collect();
        format!("{{{}}}", parts.join(","))
    }
}

/// Genes in the compact notation: decreasing digits with `T = 10`,
/// `E = 11`, or `{12,9,3}` for larger `n`; several genes joined by `;`.
impl fmt::Display for GeneticCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let genes: Vec<String> = self.gees.iter().map(|&g| format_gene(self.n, g)).collect();
        f.write_str(&genes.join(";"))
    }
}

impl fmt::Debug for GeneticCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{self}>")
    }
}

fn parse_gene(s: &str) -> Result<Vec<u32>> {
    let err = || Error::Parse { what: "gene", input: s.to_string() };
    let s = s.trim();
    let elems: Vec<u32> = if let Some(inner) = s.strip_prefix('{') {
        let inner = inner.strip_suffix('}').ok_or_else(err)?;
        inner.split(',').map(|t| t.trim().parse::<u32>().map_err(|_| err())).collect::<Result<_>>()?
    } else {
        s.chars()
            .map(|c| match c {
                '1'..='9' => Ok(c.to_digit(10).unwrap()),
                'T' | 't' => Ok(10),
                'E' | 'e' => Ok(11),
                _ => Err(err()),
            })
            .collect::<Result<_>>()?
    };
    if elems.is_empty() || elems.windows(2).any(|w| w[0] <= w[1]) || elems.contains(&0) {
        return Err(err());
    }
    Ok(elems)
}

impl FromStr for GeneticCode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut n = None;
        let mut gees = Vec::new();
        for part in s.split(';').filter(|p| !p.trim().is_empty()) {
            let elems = parse_gene(part)?;
            match n {
                None => n = Some(elems[0]),
                Some(m) if m != elems[0] => {
                    return Err(Error::Parse { what: "genetic code (genes disagree on n)", input: s.into() })
                }
                _ => {}
            }
            if elems[0] > MAX_N {
                return Err(Error::OutOfRange { n: elems[0], lo: 3, hi: MAX_N });
            }
            gees.push(SubsetMask::from_elements(elems[1..].iter().copied())?);
        }
        let n = n.ok_or_else(|| Error::Parse { what: "genetic code", input: s.into() })?;
        GeneticCode::new(n, gees)
    }
}

impl Serialize for GeneticCode {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for GeneticCode {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
