//! The mod 2 cohomology ring of the planar polygon space of a genetic code.
//!
//! `H^*` is generated by `R, V_1, ..., V_{n-1}` in degree 1. A monomial of
//! degree `d` only depends on the set `S` of `V`'s dividing it, so it is
//! written `R^{d-|S|} V_S`; it vanishes unless `S` is a subgee. In degree
//! `d`, each subgee `S` with `|S| >= m + 1 - d` contributes the relation
//! that the sum of `R^{d-|T|} V_T` over subgees `T` disjoint from `S`
//! vanishes, and these generate all relations.
//!
//! Classes are bit vectors over the monomial basis of their degree: the
//! subgees of size at most `d`, in graded order.

use std::fmt;
use std::sync::OnceLock;

use crate::combinatorics::SubsetMask;
use crate::error::{Error, Result};
use crate::f2::{BitVec, Echelon};
use crate::polygon::{GeneticCode, SubgeeFamily};

/// The monomial `R^{degree - |support|} V_support`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    pub degree: u32,
    pub support: SubsetMask,
}

impl Monomial {
    pub fn new(degree: u32, support: SubsetMask) -> Result<Self> {
        if support.len() as u32 > degree {
            return Err(Error::Domain(format!("support {support} is larger than degree {degree}")));
        }
        Ok(Monomial { degree, support })
    }

    pub fn r_exponent(&self) -> u32 {
        self.degree - self.support.len() as u32
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a = self.r_exponent();
        let v = if self.support.is_empty() {
            String::new()
        } else {
            let elems: Vec<String> = self.support.iter().map(|i| i.to_string()).collect();
            format!("V{{{}}}", elems.join(","))
        };
        match (a, v.is_empty()) {
            (0, true) => f.write_str("1"),
            (0, false) => f.write_str(&v),
            (1, true) => f.write_str("R"),
            (1, false) => write!(f, "R {v}"),
            (_, true) => write!(f, "R^{a}"),
            (_, false) => write!(f, "R^{a} {v}"),
        }
    }
}

/// An element of `H^degree`, as coefficients over the monomial basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CohClass {
    degree: u32,
    coeffs: BitVec,
}

impl CohClass {
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn coeffs(&self) -> &BitVec {
        &self.coeffs
    }

    pub fn add(&self, other: &CohClass) -> CohClass {
        assert_eq!(self.degree, other.degree, "adding classes of different degrees");
        let mut coeffs = self.coeffs.clone();
        coeffs.xor_assign(&other.coeffs);
        CohClass { degree: self.degree, coeffs }
    }

    /// Zero as a vector of coefficients; use [`CohContext::is_zero`] to
    /// test the class itself.
    pub fn is_zero_vector(&self) -> bool {
        self.coeffs.is_zero()
    }
}

struct DegreeData {
    relations: Echelon,
    // quotient coordinates of each basis monomial
    red: Vec<BitVec>,
}

/// The cohomology ring of one genetic code, with per-degree relation
/// spans computed on first use.
pub struct CohContext {
    code: GeneticCode,
    m: u32,
    family: SubgeeFamily,
    index: Vec<u32>,
    prefix: Vec<usize>,
    degrees: Vec<OnceLock<DegreeData>>,
}

const NONE: u32 = u32::MAX;

impl CohContext {
    pub fn new(code: &GeneticCode) -> Self {
        let family = code.subgees();
        let m = code.m();
        let mut index = vec![NONE; 1usize << (code.n() - 1)];
        for (i, s) in family.members().iter().enumerate() {
            index[s.bits() as usize] = i as u32;
        }
        let prefix = (0..=m).map(|d| family.members().partition_point(|s| s.len() <= d as usize)).collect();
        CohContext { code: code.clone(), m, family, index, prefix, degrees: (0..=m).map(|_| OnceLock::new()).collect() }
    }

    pub fn code(&self) -> &GeneticCode {
        &self.code
    }

    /// Dimension of the polygon space, `n - 3`.
    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn subgees(&self) -> &SubgeeFamily {
        &self.family
    }

    pub fn is_subgee(&self, s: SubsetMask) -> bool {
        self.family.contains(s)
    }

    fn check_degree(&self, d: u32) -> Result<()> {
        if d > self.m {
            return Err(Error::Degree { degree: d, m: self.m });
        }
        Ok(())
    }

    /// Supports of the monomial basis of degree `d`: subgees of size at most `d`.
    pub fn monomial_supports(&self, d: u32) -> &[SubsetMask] {
        let end = self.prefix[d.min(self.m) as usize];
        &self.family.members()[..end]
    }

    fn basis_len(&self, d: u32) -> usize {
        if d > self.m {
            0
        } else {
            self.prefix[d as usize]
        }
    }

    fn position(&self, d: u32, s: SubsetMask) -> Option<usize> {
        if d > self.m || s.len() > d as usize {
            return None;
        }
        match self.index.get(s.bits() as usize) {
            Some(&i) if i != NONE => Some(i as usize),
            _ => None,
        }
    }

    pub fn zero(&self, d: u32) -> CohClass {
        CohClass { degree: d, coeffs: BitVec::zeros(self.basis_len(d)) }
    }

    /// The class of `R^{d-|S|} V_S`; zero when `S` is not a subgee or `d > m`.
    pub fn monomial(&self, d: u32, s: SubsetMask) -> Result<CohClass> {
        if s.len() > d as usize {
            return Err(Error::Domain(format!("support {s} is larger than degree {d}")));
        }
        let mut c = self.zero(d);
        if let Some(i) = self.position(d, s) {
            c.coeffs.set(i, true);
        }
        Ok(c)
    }

    /// `R` in degree 1.
    pub fn r(&self) -> CohClass {
        self.monomial(1, SubsetMask::EMPTY).expect("degree 1")
    }

    /// `V_i` in degree 1.
    pub fn v(&self, i: u32) -> Result<CohClass> {
        self.monomial(1, SubsetMask::singleton(i))
    }

    fn relation_rows(&self, d: u32) -> Vec<BitVec> {
        let len = self.basis_len(d);
        let threshold = (self.m + 1).saturating_sub(d) as usize;
        let basis = self.monomial_supports(d);
        self.family
            .members()
            .iter()
            .filter(|s| s.len() >= threshold)
            .map(|&s| {
                BitVec::from_ones(len, basis.iter().enumerate().filter(|(_, t)| t.is_disjoint(s)).map(|(i, _)| i))
            })
            .collect()
    }

    fn data(&self, d: u32) -> &DegreeData {
        self.degrees[d as usize].get_or_init(|| {
            let len = self.basis_len(d);
            let relations = Echelon::new(len, self.relation_rows(d));
            let red = (0..len).map(|i| relations.quotient_coords(&BitVec::unit(len, i))).collect();
            DegreeData { relations, red }
        })
    }

    /// One relation per subgee `S` with `|S| >= m + 1 - d`, in graded order of `S`.
    pub fn relation_vectors(&self, d: u32) -> Result<Vec<CohClass>> {
        self.check_degree(d)?;
        Ok(self.relation_rows(d).into_iter().map(|coeffs| CohClass { degree: d, coeffs }).collect())
    }

    /// Canonical representative of the class modulo relations.
    pub fn reduce(&self, c: &CohClass) -> CohClass {
        if c.degree > self.m {
            return self.zero(c.degree);
        }
        CohClass { degree: c.degree, coeffs: self.data(c.degree).relations.reduce(&c.coeffs) }
    }

    pub fn is_zero(&self, c: &CohClass) -> bool {
        self.reduce(c).coeffs.is_zero()
    }

    pub fn dim(&self, d: u32) -> Result<usize> {
        self.check_degree(d)?;
        Ok(self.data(d).relations.corank())
    }

    /// Dimensions of `H^0, ..., H^m`.
    pub fn betti(&self) -> Vec<usize> {
        (0..=self.m).map(|d| self.data(d).relations.corank()).collect()
    }

    /// Monomials whose classes form the canonical basis of `H^d`.
    pub fn basis(&self, d: u32) -> Result<Vec<Monomial>> {
        self.check_degree(d)?;
        let supports = self.monomial_supports(d);
        Ok(self
            .data(d)
            .relations
            .free_columns()
            .iter()
            .map(|&i| Monomial { degree: d, support: supports[i] })
            .collect())
    }

    /// Coordinates of a class in the canonical basis of its degree.
    pub fn coordinates(&self, c: &CohClass) -> BitVec {
        if c.degree > self.m {
            return BitVec::zeros(0);
        }
        self.data(c.degree).relations.quotient_coords(&c.coeffs)
    }

    /// Coordinates of `R^{d-|S|} V_S`, or `None` if the monomial is zero
    /// before reduction (`S` not a subgee, `|S| > d`, or `d > m`).
    pub fn monomial_coordinates(&self, d: u32, s: SubsetMask) -> Option<&BitVec> {
        let i = self.position(d, s)?;
        Some(&self.data(d).red[i])
    }

    /// Whether `R^{d-|S|} V_S` is a nonzero class.
    pub fn monomial_is_nonzero(&self, d: u32, s: SubsetMask) -> bool {
        self.monomial_coordinates(d, s).is_some_and(|v| !v.is_zero())
    }

    pub fn multiply(&self, a: &CohClass, b: &CohClass) -> CohClass {
        let d = a.degree + b.degree;
        let mut out = self.zero(d);
        if d > self.m {
            return out;
        }
        let sa = self.monomial_supports(a.degree);
        let sb = self.monomial_supports(b.degree);
        for i in a.coeffs.ones() {
            for j in b.coeffs.ones() {
                if let Some(k) = self.position(d, sa[i].union(sb[j])) {
                    out.coeffs.flip(k);
                }
            }
        }
        self.reduce(&out)
    }

    fn top(&self) -> Result<&DegreeData> {
        let top = self.data(self.m);
        if top.relations.corank() != 1 {
            return Err(Error::InvalidContext(format!(
                "H^{} has dimension {} for code {}",
                self.m,
                top.relations.corank(),
                self.code
            )));
        }
        Ok(top)
    }

    /// The duality functional on `H^m` at `R^{m-|S|} V_S`.
    pub fn phi(&self, s: SubsetMask) -> Result<bool> {
        let top = self.top()?;
        if s.len() > self.m as usize {
            return Err(Error::Domain(format!("|{s}| exceeds m = {}", self.m)));
        }
        Ok(self.position(self.m, s).is_some_and(|i| top.red[i].get(0)))
    }

    pub fn phi_class(&self, c: &CohClass) -> Result<bool> {
        if c.degree != self.m {
            return Err(Error::Degree { degree: c.degree, m: self.m });
        }
        let top = self.top()?;
        Ok(top.relations.quotient_coords(&c.coeffs).get(0))
    }

    /// `phi` composed with multiplication by `R`, at `R^{m-1-|S|} V_S`.
    pub fn psi(&self, s: SubsetMask) -> Result<bool> {
        if self.m == 0 || s.len() >= self.m as usize {
            return Err(Error::Domain(format!("|{s}| must be below m = {}", self.m)));
        }
        self.phi(s)
    }

    pub fn psi_class(&self, c: &CohClass) -> Result<bool> {
        if c.degree + 1 != self.m {
            return Err(Error::Degree { degree: c.degree, m: self.m });
        }
        self.phi_class(&self.multiply(&self.r(), c))
    }

    /// `U`, the indices occurring in monomials with `phi = 1`, and the
    /// family of all `I` in `U` with `phi(I) = 1`, in graded order.
    pub fn phi_support(&self) -> Result<(SubsetMask, Vec<SubsetMask>)> {
        let top = self.top()?;
        let family: Vec<SubsetMask> = self
            .monomial_supports(self.m)
            .iter()
            .enumerate()
            .filter(|(i, _)| top.red[*i].get(0))
            .map(|(_, &s)| s)
            .collect();
        let u = family.iter().fold(SubsetMask::EMPTY, |a, &s| a.union(s));
        Ok((u, family))
    }

    /// Human-readable form, e.g. `R^2 V{1,3} + V{1,2,3}`.
    pub fn format_class(&self, c: &CohClass) -> String {
        let supports = self.monomial_supports(c.degree);
        let terms: Vec<String> =
            c.coeffs.ones().map(|i| Monomial { degree: c.degree, support: supports[i] }.to_string()).collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }
}

impl fmt::Debug for CohContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CohContext").field("code", &self.code.to_string()).field("m", &self.m).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ctx(code: &str) -> CohContext {
        CohContext::new(&code.parse().unwrap())
    }

    fn set(e: &[u32]) -> SubsetMask {
        SubsetMask::from_elements(e.iter().copied()).unwrap()
    }

    #[test]
    fn gee_321_top_and_next_degree() {
        for n in 7..=10 {
            let c = CohContext::new(&GeneticCode::new(n, vec![set(&[3, 2, 1])]).unwrap());
            let m = c.m();
            assert_eq!(c.dim(m).unwrap(), 1);
            assert!(!c.phi(SubsetMask::EMPTY).unwrap());
            assert!(c.phi(set(&[1, 2, 3])).unwrap());
            if m >= 5 {
                assert_eq!(c.dim(m - 1).unwrap(), 4);
            }
        }
    }

    #[test]
    fn relation_for_singleton_three() {
        let c = ctx("8321");
        let m = c.m();
        // gee {3,2,1}: S = {3} gives R^m + R^{m-1}V_1 + R^{m-1}V_2 + R^{m-2}V_1V_2
        let rels = c.relation_vectors(m).unwrap();
        let supports = c.monomial_supports(m);
        let idx = c.subgees().members().iter().filter(|s| !s.is_empty()).position(|&s| s == set(&[3])).unwrap();
        let terms: Vec<SubsetMask> = rels[idx].coeffs().ones().map(|i| supports[i]).collect();
        assert_eq!(terms, vec![SubsetMask::EMPTY, set(&[1]), set(&[2]), set(&[1, 2])]);
        // degrees with m + 1 - d above the largest subgee carry no relations
        assert!(c.relation_vectors(0).unwrap().is_empty());
    }

    #[test]
    fn single_element_gee() {
        // gee {2}: phi(R^m) = 1
        let c = ctx("62");
        assert!(c.phi(SubsetMask::EMPTY).unwrap());
        let (_, family) = c.phi_support().unwrap();
        assert!(family.contains(&SubsetMask::EMPTY));
    }

    #[test]
    fn projective_space_cohomology() {
        let c = ctx("7");
        assert_eq!(c.betti(), vec![1; 5]);
        assert!(c.phi(SubsetMask::EMPTY).unwrap());
    }

    #[test]
    fn torus_betti_numbers_are_binomial() {
        let c = ctx("74321");
        assert_eq!(c.betti(), vec![1, 4, 6, 4, 1]);
    }

    #[test]
    fn products_follow_the_collapse_rule() {
        let c = ctx("86321");
        let v1 = c.v(1).unwrap();
        let rv1 = c.monomial(2, set(&[1])).unwrap();
        assert_eq!(c.multiply(&v1, &v1), c.reduce(&rv1));
        // {4} and {5} are subgees of 86321 but {4,5} is not
        let v4 = c.v(4).unwrap();
        let v5 = c.v(5).unwrap();
        assert!(!c.is_zero(&c.multiply(&v1, &v5)));
        assert!(c.is_zero(&c.multiply(&v4, &v5)));
        // above the top degree everything vanishes
        let top = c.monomial(c.m(), set(&[1, 2, 3])).unwrap();
        assert!(c.is_zero(&c.multiply(&top, &c.r())));
    }

    #[test]
    fn monomial_formatting() {
        let c = ctx("86321");
        let x = c.monomial(4, set(&[1, 3])).unwrap().add(&c.monomial(4, SubsetMask::EMPTY).unwrap());
        assert_eq!(c.format_class(&x), "R^4 + R^2 V{1,3}");
        assert_eq!(c.format_class(&c.zero(2)), "0");
        assert_eq!(Monomial::new(3, set(&[1, 2, 3])).unwrap().to_string(), "V{1,2,3}");
        assert_eq!(Monomial::new(1, SubsetMask::EMPTY).unwrap().to_string(), "R");
    }

    #[test]
    fn psi_is_phi_after_r() {
        for code in ["86321", "8521", "84321", "8631;854", "62"] {
            let c = ctx(code);
            let m = c.m();
            for &s in c.monomial_supports(m - 1) {
                let x = c.monomial(m - 1, s).unwrap();
                assert_eq!(c.psi(s).unwrap(), c.psi_class(&x).unwrap(), "{code} {s}");
                assert_eq!(c.psi(s).unwrap(), c.phi(s).unwrap());
            }
            for rel in c.relation_vectors(m - 1).unwrap() {
                assert!(!c.psi_class(&rel).unwrap());
            }
            for rel in c.relation_vectors(m).unwrap() {
                assert!(!c.phi_class(&rel).unwrap());
            }
        }
    }

    #[test]
    fn maximal_subgees_pair_to_one() {
        for code in ["86321", "8521", "8631;854", "97521", "8321"] {
            let c = ctx(code);
            let k = c.code().largest_gee_size();
            for &s in c.subgees().members() {
                if s.len() == k {
                    assert!(c.phi(s).unwrap(), "{code} {s}");
                }
            }
        }
    }

    #[test]
    fn degree_errors() {
        let c = ctx("62");
        assert!(c.dim(4).is_err());
        assert!(c.relation_vectors(4).is_err());
        assert!(c.monomial(1, set(&[1, 2])).is_err());
    }

    fn random_class(c: &CohContext, d: u32, bits: u64) -> CohClass {
        let len = c.monomial_supports(d).len();
        CohClass { degree: d, coeffs: BitVec::from_ones(len, (0..len).filter(|&i| bits >> (i % 64) & 1 == 1)) }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn ring_axioms(x in any::<u64>(), y in any::<u64>(), z in any::<u64>(), d1 in 0u32..3, d2 in 0u32..3, d3 in 0u32..2) {
            let c = ctx("8631;854");
            let (a, b, w) = (random_class(&c, d1, x), random_class(&c, d2, y), random_class(&c, d3, z));
            prop_assert_eq!(c.multiply(&a, &b), c.multiply(&b, &a));
            let left = c.multiply(&c.multiply(&a, &b), &w);
            let right = c.multiply(&a, &c.multiply(&b, &w));
            prop_assert_eq!(left, right);
            let ra = c.reduce(&a);
            prop_assert_eq!(c.reduce(&ra), ra.clone());
            // a and its reduction differ by relations
            prop_assert!(c.is_zero(&a.add(&ra)));
            // products are well defined on classes
            prop_assert_eq!(c.multiply(&ra, &b), c.multiply(&a, &b));
        }
    }
}
