//! Bounds on topological complexity from cohomology.

use serde::{Deserialize, Serialize};

use crate::cohomology::CohContext;
use crate::combinatorics::SubsetMask;
use crate::error::Result;
use crate::polygon::GeneticCode;

use super::certificates::{genlthm_certificate, nonzthm_certificate};
use super::search::zcl_search;
use super::{Certificate, Method};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ReportOptions {
    /// Also search for a nonzero product of the full degree `2m`.
    pub full_degree: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SpecialCase {
    /// The code with no nonempty gee: real projective space of dimension `m`.
    ProjectiveSpace,
    /// The gee `{1, ..., n-3}`: an `m`-torus, whose TC is `m + 1`.
    Torus,
}

impl SpecialCase {
    pub fn as_str(self) -> &'static str {
        match self {
            SpecialCase::ProjectiveSpace => "projective-space",
            SpecialCase::Torus => "torus",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TcReport {
    pub code: String,
    pub n: u32,
    pub m: u32,
    pub genes: Vec<String>,
    /// `dim H^d` for `d = 0..=m`.
    pub betti: Vec<usize>,
    /// Largest gee size.
    pub k: usize,
    pub rm_zero: bool,
    /// Smallest `|I|` with `phi(R^{m-|I|} V_I) = 1`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<u32>,
    pub tc_lower: u32,
    pub tc_upper: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub method: Option<Method>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Certificate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub special_case: Option<SpecialCase>,
    /// No nonzero product of degree `2m - 1` exists among the barred generators.
    pub exceptional: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl TcReport {
    /// Whether the bounds determine TC.
    pub fn is_exact(&self) -> bool {
        self.tc_lower == self.tc_upper
    }
}

/// Searches downward from `from` and returns the first hit.
fn search_down(ctx: &CohContext, from: u32) -> Result<Option<Certificate>> {
    for target in (1..=from).rev() {
        if let Some(c) = zcl_search(ctx, target)? {
            return Ok(Some(c));
        }
    }
    Ok(None)
}

/// A nonzero product of degree `2m - 1`: an explicit construction when one
/// applies, else the first hit of the search.
pub fn top_certificate(ctx: &CohContext) -> Result<Option<Certificate>> {
    let m = ctx.m();
    if m == 0 {
        return Ok(None);
    }
    let constructed = if ctx.phi(SubsetMask::EMPTY)? { nonzthm_certificate(ctx)? } else { genlthm_certificate(ctx)? };
    match constructed {
        Some(c) => Ok(Some(c)),
        None => zcl_search(ctx, 2 * m - 1),
    }
}

pub fn tc_report(code: &GeneticCode, opts: &ReportOptions) -> Result<TcReport> {
    let ctx = CohContext::new(code);
    let n = code.n();
    let m = ctx.m();
    let (_, family) = ctx.phi_support()?;
    let rm_zero = !ctx.phi(SubsetMask::EMPTY)?;
    let mut report = TcReport {
        code: code.to_string(),
        n,
        m,
        genes: code.to_string().split(';').map(str::to_owned).collect(),
        betti: ctx.betti(),
        k: code.largest_gee_size(),
        rm_zero,
        r: family.first().map(|s| s.len() as u32),
        tc_lower: 1,
        tc_upper: 2 * m + 1,
        method: None,
        certificate: None,
        special_case: None,
        exceptional: false,
        note: None,
    };
    if code.is_torus() {
        report.special_case = Some(SpecialCase::Torus);
        report.tc_lower = m + 1;
        report.tc_upper = m + 1;
        report.note = Some(format!("torus T^{m}"));
        return Ok(report);
    }
    if code.is_projective_space() {
        report.special_case = Some(SpecialCase::ProjectiveSpace);
        report.note = Some(format!(
            "real projective space RP^{m}; its TC is governed by immersion dimension, only the cohomological lower bound is given"
        ));
        if let Some(c) = search_down(&ctx, 2 * m)? {
            report.tc_lower = c.degree + 1;
            report.method = Some(Method::Search);
            report.certificate = Some(c);
        }
        return Ok(report);
    }
    if opts.full_degree {
        if let Some(c) = zcl_search(&ctx, 2 * m)? {
            report.tc_lower = 2 * m + 1;
            report.method = Some(Method::Search);
            report.certificate = Some(c);
            return Ok(report);
        }
    }
    let cert = match top_certificate(&ctx)? {
        Some(c) => Some(c),
        None => {
            report.exceptional = true;
            search_down(&ctx, 2 * m - 2)?
        }
    };
    if let Some(c) = cert {
        report.tc_lower = c.degree + 1;
        report.method = Some(c.method);
        report.certificate = Some(c);
    }
    Ok(report)
}
