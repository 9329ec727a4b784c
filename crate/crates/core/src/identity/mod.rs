//! Identity catalog and audit engine.
//!
//! Every identity is checked by expanding both sides exactly and inspecting
//! the difference: a zero polynomial for algebraic identities, or agreement of
//! every coefficient through a truncation order for generating-function
//! identities. Displays known to be misprinted carry a documented corrected
//! variant; the printed form is always checked first and its failure kept on
//! record.

mod audit;
mod catalog;
mod tag;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::format::{poly_to_json_terms, JsonTerm};
use crate::poly::Poly;
use crate::scalar::Scalar;

pub use audit::{audit_grid, default_pq_set, summarize, AuditSummary, GridRanges};
pub use catalog::{param_rec_repairs, pochhammer_tail, ParamRecRepair};
pub use tag::{Tag, TagKind};

/// Free indices and scalars one check is evaluated at. Only the fields the
/// tag quantifies over are set.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IdentityParams {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<u32>,
    /// n′ of the Nielsen formulas.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n2: Option<u32>,
    /// m′ of the Nielsen formulas.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m2: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub j: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<u32>,
    /// Rational specializations (a, b, z, w, gamma) as `num/den` strings.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub values: BTreeMap<String, String>,
}

impl IdentityParams {
    pub fn pqnm(p: u32, q: u32, n: u32, m: u32) -> Self {
        IdentityParams {
            p: Some(p),
            q: Some(q),
            n: Some(n),
            m: Some(m),
            ..Default::default()
        }
    }

    pub fn with_value(mut self, name: &str, v: &Scalar) -> Self {
        self.values.insert(name.to_string(), v.to_canonical_string());
        self
    }

    pub(crate) fn value(&self, tag: Tag, name: &str) -> Result<Scalar> {
        let s = self.values.get(name).ok_or_else(|| Error::Arity {
            tag: tag.name().to_string(),
            msg: format!("missing value `{name}`"),
        })?;
        s.parse()
    }
}

impl fmt::Display for IdentityParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (name, v) in [
            ("p", self.p),
            ("q", self.q),
            ("n", self.n),
            ("m", self.m),
            ("n2", self.n2),
            ("m2", self.m2),
            ("j", self.j),
            ("k", self.k),
        ] {
            if let Some(v) = v {
                parts.push(format!("{name}={v}"));
            }
        }
        for (k, v) in &self.values {
            parts.push(format!("{k}={v}"));
        }
        f.write_str(&parts.join(","))
    }
}

/// Which form of a display was checked.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Variant {
    Printed,
    Corrected(&'static str),
}

impl Variant {
    pub fn label(&self) -> String {
        match self {
            Variant::Printed => "printed".to_string(),
            Variant::Corrected(d) => format!("corrected:{d}"),
        }
    }
}

impl Serialize for Variant {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.label())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Status {
    ExactPass,
    SeriesPass(usize),
    Fail,
}

impl Status {
    pub fn passed(&self) -> bool {
        !matches!(self, Status::Fail)
    }

    pub fn name(&self) -> &'static str {
        match self {
            Status::ExactPass => "ExactPass",
            Status::SeriesPass(_) => "SeriesPass",
            Status::Fail => "Fail",
        }
    }
}

/// Outcome of one identity check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityReport {
    pub tag: Tag,
    pub params: IdentityParams,
    pub variant: Variant,
    pub status: Status,
    /// lhs − rhs; for series identities, Σ (coefficient difference) u^i v^j.
    pub difference: Poly,
    pub notes: String,
}

#[derive(Serialize)]
struct ReportDoc<'a> {
    tag: &'static str,
    params: &'a IdentityParams,
    variant: String,
    status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    order: Option<usize>,
    difference: Vec<JsonTerm>,
    notes: &'a str,
}

impl Serialize for IdentityReport {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let order = match self.status {
            Status::SeriesPass(o) => Some(o),
            _ => None,
        };
        ReportDoc {
            tag: self.tag.name(),
            params: &self.params,
            variant: self.variant.label(),
            status: self.status.name(),
            order,
            difference: poly_to_json_terms(&self.difference),
            notes: &self.notes,
        }
        .serialize(s)
    }
}

/// Which variants a run checks and which outcome counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum VariantPolicy {
    /// Printed form only.
    Printed,
    /// Documented correction where one exists, printed form otherwise.
    Corrected,
    /// Printed form, falling back to the documented correction when the
    /// printed form fails. Both outcomes are reported.
    #[default]
    Both,
}

impl FromStr for VariantPolicy {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "printed" => Ok(VariantPolicy::Printed),
            "corrected" => Ok(VariantPolicy::Corrected),
            "both" => Ok(VariantPolicy::Both),
            _ => Err(Error::InvalidParams(format!("unknown variant policy `{s}`"))),
        }
    }
}

/// Reports produced for one (tag, params) cell under a policy. The last
/// report is the one that decides pass/fail.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verification {
    pub reports: Vec<IdentityReport>,
}

impl Verification {
    pub fn decisive(&self) -> &IdentityReport {
        self.reports.last().expect("at least one report")
    }

    pub fn passed(&self) -> bool {
        self.decisive().status.passed()
    }

    /// The printed-form report, if the policy ran it.
    pub fn printed(&self) -> Option<&IdentityReport> {
        self.reports.iter().find(|r| r.variant == Variant::Printed)
    }

    pub fn corrected(&self) -> Option<&IdentityReport> {
        self.reports
            .iter()
            .find(|r| matches!(r.variant, Variant::Corrected(_)))
    }
}

/// Checks one identity at one parameter point under `policy`.
pub fn verify(tag: Tag, params: &IdentityParams, order: usize, policy: VariantPolicy) -> Result<Verification> {
    let run = |corrected: bool| -> Result<Option<IdentityReport>> {
        catalog::check(tag, params, order, corrected)
    };
    let printed = || -> Result<IdentityReport> {
        run(false)?.ok_or_else(|| Error::Unsupported(format!("{} has no printed check", tag.name())))
    };
    let reports = match policy {
        VariantPolicy::Printed => vec![printed()?],
        VariantPolicy::Corrected => match run(true)? {
            Some(r) => vec![r],
            None => vec![printed()?],
        },
        VariantPolicy::Both => {
            let first = printed()?;
            if first.status.passed() {
                vec![first]
            } else {
                match run(true)? {
                    Some(r) => vec![first, r],
                    None => vec![first],
                }
            }
        }
    };
    Ok(Verification { reports })
}

/// Exact check of a finite polynomial identity.
pub fn verify_algebraic(tag: Tag, params: &IdentityParams) -> Result<Verification> {
    if !matches!(tag.kind(), TagKind::Algebraic) {
        return Err(Error::Arity {
            tag: tag.name().to_string(),
            msg: "not an algebraic identity".to_string(),
        });
    }
    verify(tag, params, 0, VariantPolicy::Both)
}

/// Coefficient-wise check of a generating-function identity through `order`.
pub fn verify_series(tag: Tag, params: &IdentityParams, order: usize) -> Result<Verification> {
    if !matches!(tag.kind(), TagKind::Series) {
        return Err(Error::Arity {
            tag: tag.name().to_string(),
            msg: "not a series identity".to_string(),
        });
    }
    verify(tag, params, order, VariantPolicy::Both)
}

/// Terminating ₂F₀(−n, −m; ; −1/z) against its ₁F₁ form at a nonzero rational z.
pub fn verify_hypergeom_transform(n: u32, m: u32, z: &Scalar) -> Result<Verification> {
    let params = IdentityParams {
        n: Some(n),
        m: Some(m),
        ..Default::default()
    }
    .with_value("z", z);
    verify(Tag::Hyp2F0To1F1, &params, 0, VariantPolicy::Both)
}

/// Applies one of the differential operators to the family member and checks
/// the residual vanishes.
pub fn verify_pde(tag: Tag, p: u32, q: u32, n: u32, m: u32) -> Result<Verification> {
    if !matches!(tag.kind(), TagKind::Pde) {
        return Err(Error::Arity {
            tag: tag.name().to_string(),
            msg: "not a differential-equation check".to_string(),
        });
    }
    verify(tag, &IdentityParams::pqnm(p, q, n, m), 0, VariantPolicy::Both)
}
