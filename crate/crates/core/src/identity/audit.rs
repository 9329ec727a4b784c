//! Grid audit: every tag over every valid parameter tuple of a grid.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

use super::catalog::applicable;
use super::{verify, IdentityParams, Status, Tag, TagKind, Variant, VariantPolicy, Verification};

/// Index ranges of an audit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridRanges {
    pub n_max: u32,
    pub m_max: u32,
    pub pq: Vec<(u32, u32)>,
    /// Bound on the auxiliary indices n′, m′, j, k.
    pub extra_max: u32,
}

impl GridRanges {
    pub fn new(n_max: u32, m_max: u32, pq: Vec<(u32, u32)>) -> Self {
        GridRanges {
            n_max,
            m_max,
            pq,
            extra_max: 3,
        }
    }
}

pub fn default_pq_set() -> Vec<(u32, u32)> {
    vec![(1, 1), (2, 1), (1, 2), (2, 2)]
}

/// Points where the ₂F₀ ↔ ₁F₁ transformation is evaluated.
fn hyp_points() -> [Scalar; 3] {
    [Scalar::from_int(2), Scalar::new(-3, 2), Scalar::from_int(7)]
}

/// (a, b, z, w, γ) specializations for the Pochhammer-weighted series; a and b
/// are deliberately non-integral.
fn pochhammer_s_points() -> [[Scalar; 5]; 3] {
    [
        [Scalar::new(1, 2), Scalar::new(1, 3), Scalar::from_int(2), Scalar::from_int(3), Scalar::from_int(5)],
        [Scalar::new(-3, 2), Scalar::new(5, 4), Scalar::from_int(-1), Scalar::new(1, 2), Scalar::new(2, 3)],
        [Scalar::new(7, 3), Scalar::new(-1, 5), Scalar::new(3, 4), Scalar::from_int(-2), Scalar::from_int(-3)],
    ]
}

fn dedup_sorted<T: Ord>(mut v: Vec<T>) -> Vec<T> {
    v.sort();
    v.dedup();
    v
}

/// All parameter tuples a tag is checked at.
pub(crate) fn cells(tag: Tag, r: &GridRanges) -> Vec<IdentityParams> {
    use Tag::*;
    let pq: Vec<(u32, u32)> = dedup_sorted(r.pq.clone())
        .into_iter()
        .filter(|&(p, q)| applicable(tag, p, q))
        .collect();
    let e = r.extra_max;
    let mut out = Vec::new();
    let pqnm = |out: &mut Vec<IdentityParams>, f: &dyn Fn(IdentityParams) -> Vec<IdentityParams>| {
        for &(p, q) in &pq {
            for n in 0..=r.n_max {
                for m in 0..=r.m_max {
                    out.extend(f(IdentityParams::pqnm(p, q, n, m)));
                }
            }
        }
    };
    match tag {
        Hyp2F0To1F1 => {
            for n in 0..=r.n_max {
                for m in 0..=r.m_max {
                    for z in hyp_points() {
                        out.push(
                            IdentityParams {
                                n: Some(n),
                                m: Some(m),
                                ..Default::default()
                            }
                            .with_value("z", &z),
                        );
                    }
                }
            }
        }
        ConnIto => {
            for n in 0..=r.n_max {
                out.push(IdentityParams {
                    n: Some(n),
                    ..Default::default()
                });
            }
        }
        MultGh => {
            let ps = dedup_sorted(pq.iter().map(|&(p, _)| p).collect());
            for p in ps {
                for n in 0..=r.n_max {
                    out.push(IdentityParams {
                        p: Some(p),
                        n: Some(n),
                        ..Default::default()
                    });
                }
            }
        }
        ConnGhFromPq | ConnGhSum => {
            for &(p, q) in &pq {
                for n in 0..=r.n_max {
                    out.push(IdentityParams {
                        p: Some(p),
                        q: Some(q),
                        n: Some(n),
                        ..Default::default()
                    });
                }
            }
        }
        GenFull | SpecialPq => {
            for &(p, q) in &pq {
                out.push(IdentityParams {
                    p: Some(p),
                    q: Some(q),
                    ..Default::default()
                });
            }
        }
        GenPartialU => {
            for &(p, q) in &pq {
                for m in 0..=r.m_max {
                    out.push(IdentityParams {
                        p: Some(p),
                        q: Some(q),
                        m: Some(m),
                        ..Default::default()
                    });
                }
            }
        }
        GenPartialV => {
            for &(p, q) in &pq {
                for n in 0..=r.n_max {
                    out.push(IdentityParams {
                        p: Some(p),
                        q: Some(q),
                        n: Some(n),
                        ..Default::default()
                    });
                }
            }
        }
        GenPochhammerG => {
            for &(p, q) in &pq {
                for j in 1..=e.max(1) {
                    for k in 1..=e.max(1) {
                        out.push(IdentityParams {
                            p: Some(p),
                            q: Some(q),
                            j: Some(j),
                            k: Some(k),
                            ..Default::default()
                        });
                    }
                }
            }
        }
        GenPochhammerS => {
            for &(p, q) in &pq {
                for [a, b, z, w, g] in pochhammer_s_points() {
                    out.push(
                        IdentityParams {
                            p: Some(p),
                            q: Some(q),
                            ..Default::default()
                        }
                        .with_value("a", &a)
                        .with_value("b", &b)
                        .with_value("z", &z)
                        .with_value("w", &w)
                        .with_value("gamma", &g),
                    );
                }
            }
        }
        DerivJk => pqnm(&mut out, &|base| {
            let mut v = Vec::new();
            for j in 0..=e {
                for k in 0..=e {
                    v.push(IdentityParams {
                        j: Some(j),
                        k: Some(k),
                        ..base.clone()
                    });
                }
            }
            v
        }),
        DerivGammaK => pqnm(&mut out, &|base| {
            (0..=e)
                .map(|k| IdentityParams {
                    k: Some(k),
                    ..base.clone()
                })
                .collect()
        }),
        NielsenN => pqnm(&mut out, &|base| {
            (0..=e)
                .map(|n2| IdentityParams {
                    n2: Some(n2),
                    ..base.clone()
                })
                .collect()
        }),
        NielsenM => pqnm(&mut out, &|base| {
            (0..=e)
                .map(|m2| IdentityParams {
                    m2: Some(m2),
                    ..base.clone()
                })
                .collect()
        }),
        NielsenFull => pqnm(&mut out, &|base| {
            let mut v = Vec::new();
            for n2 in 0..=e {
                for m2 in 0..=e {
                    v.push(IdentityParams {
                        n2: Some(n2),
                        m2: Some(m2),
                        ..base.clone()
                    });
                }
            }
            v
        }),
        _ => pqnm(&mut out, &|base| vec![base]),
    }
    out
}

/// Runs every tag over the grid. Cells are independent and run on the
/// current rayon pool; the result is sorted by (tag, params) regardless of
/// scheduling.
pub fn audit_grid(
    tags: &[Tag],
    ranges: &GridRanges,
    order: usize,
    policy: VariantPolicy,
) -> Result<Vec<Verification>> {
    if tags.is_empty() {
        return Ok(Vec::new());
    }
    if ranges.pq.is_empty() {
        return Err(Error::InvalidParams("empty (p,q) set".to_string()));
    }
    for &(p, q) in &ranges.pq {
        if p + q == 0 {
            return Err(Error::InvalidParams("p = q = 0 is not a polynomial family".to_string()));
        }
        if tags.iter().any(|t| t.kind() == TagKind::Series) && order < (p + q) as usize {
            return Err(Error::InvalidParams(format!(
                "truncation order {order} is below p + q = {} for (p,q) = ({p},{q})",
                p + q
            )));
        }
    }
    let tags = dedup_sorted(tags.to_vec());
    let mut work: Vec<(Tag, IdentityParams)> = Vec::new();
    for &t in &tags {
        for c in cells(t, ranges) {
            work.push((t, c));
        }
    }
    work.sort();
    work.par_iter()
        .map(|(t, c)| verify(*t, c, order, policy))
        .collect()
}

/// Counts over an audit.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct AuditSummary {
    pub cells: usize,
    pub exact_pass: usize,
    pub series_pass: usize,
    pub fail: usize,
    /// Cells decided by a documented corrected variant.
    pub corrected_used: usize,
    /// Per tag: cells whose printed form failed.
    pub printed_failures: BTreeMap<String, usize>,
    /// Per tag: cells that failed under the active policy.
    pub failures: BTreeMap<String, usize>,
}

pub fn summarize(results: &[Verification]) -> AuditSummary {
    let mut s = AuditSummary {
        cells: results.len(),
        ..Default::default()
    };
    for v in results {
        let d = v.decisive();
        match d.status {
            Status::ExactPass => s.exact_pass += 1,
            Status::SeriesPass(_) => s.series_pass += 1,
            Status::Fail => {
                s.fail += 1;
                *s.failures.entry(d.tag.name().to_string()).or_default() += 1;
            }
        }
        if matches!(d.variant, Variant::Corrected(_)) {
            s.corrected_used += 1;
        }
        if let Some(p) = v.printed() {
            if p.status == Status::Fail {
                *s.printed_failures.entry(p.tag.name().to_string()).or_default() += 1;
            }
        }
    }
    s
}
