//! Lower bounds for topological complexity from products of zero divisors
//! `zbar = z x 1 + 1 x z` in `H^*(M x M)`.

mod certificates;
mod expand;
mod report;
mod search;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::combinatorics::SubsetMask;
use crate::error::{Error, Result};

pub use certificates::{classify_support, genlthm_certificate, nonzthm_certificate, verify_certificate, SupportCase};
pub use expand::{
    component, expand_evaluate, nonzero_bidegree, pairing, pairing_with, Evaluation, Mode, TensorComponent,
};
pub use report::{tc_report, top_certificate, ReportOptions, SpecialCase, TcReport};
pub use search::{zcl_search, zcl_search_with_candidates};

/// `Rbar^rbar_exp * prod_i Vbar_i^{e_i}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ZeroDivisorProduct {
    pub rbar_exp: u32,
    pub vbar_exps: BTreeMap<u32, u32>,
}

impl ZeroDivisorProduct {
    pub fn new(rbar_exp: u32, vbar_exps: impl IntoIterator<Item = (u32, u32)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (i, e) in vbar_exps {
            if !(1..=crate::combinatorics::MAX_ELEMENT).contains(&i) {
                return Err(Error::Domain(format!("index {i} out of range")));
            }
            if e > 0 {
                *map.entry(i).or_insert(0) += e;
            }
        }
        Ok(ZeroDivisorProduct { rbar_exp, vbar_exps: map })
    }

    pub fn rbar_power(e: u32) -> Self {
        ZeroDivisorProduct { rbar_exp: e, vbar_exps: BTreeMap::new() }
    }

    pub fn total_degree(&self) -> u32 {
        self.rbar_exp + self.vbar_exps.values().sum::<u32>()
    }

    /// Indices `i` with a positive exponent on `Vbar_i`.
    pub fn support(&self) -> SubsetMask {
        self.vbar_exps.iter().filter(|(_, &e)| e > 0).fold(SubsetMask::EMPTY, |a, (&i, _)| a.with(i))
    }
}

impl fmt::Display for ZeroDivisorProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        for (&i, &e) in &self.vbar_exps {
            parts.push(if e == 1 { format!("Vbar{i}") } else { format!("Vbar{i}^{e}") });
        }
        match self.rbar_exp {
            0 => {}
            1 => parts.push("Rbar".into()),
            e => parts.push(format!("Rbar^{e}")),
        }
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join(" "))
        }
    }
}

/// How a certificate was produced.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Genlthm,
    NonzthmShort,
    NonzthmLong,
    PowerOfTwo,
    Search,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Genlthm => "genlthm",
            Method::NonzthmShort => "nonzthm-short",
            Method::NonzthmLong => "nonzthm-long",
            Method::PowerOfTwo => "power-of-two",
            Method::Search => "search",
        })
    }
}

/// Parameters of the construction that produced a certificate.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Aux {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub r: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub f: Option<u32>,
    #[serde(rename = "A", skip_serializing_if = "Option::is_none", default)]
    pub a: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub t: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub delta: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub e: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub case: Option<String>,
}

/// A product of zero divisors with a nonzero component in `bidegree`,
/// so that `zcl >= degree` and `TC >= degree + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub code: String,
    pub degree: u32,
    pub rbar_exp: u32,
    pub vbar_exps: BTreeMap<u32, u32>,
    pub bidegree: (u32, u32),
    pub value: u8,
    pub method: Method,
    #[serde(default)]
    pub aux: Aux,
}

impl Certificate {
    pub fn product(&self) -> ZeroDivisorProduct {
        ZeroDivisorProduct { rbar_exp: self.rbar_exp, vbar_exps: self.vbar_exps.clone() }
    }

    pub(crate) fn from_product(
        code: &crate::polygon::GeneticCode,
        p: &ZeroDivisorProduct,
        bidegree: (u32, u32),
        method: Method,
        aux: Aux,
    ) -> Self {
        Certificate {
            code: code.to_string(),
            degree: p.total_degree(),
            rbar_exp: p.rbar_exp,
            vbar_exps: p.vbar_exps.clone(),
            bidegree,
            value: 1,
            method,
            aux,
        }
    }
}
