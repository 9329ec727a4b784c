//! Command-line front end. [`run`] parses arguments, dispatches, writes the
//! document to `out`, and returns the process exit code:
//! 0 on success, 1 when a check fails, 2 on usage or parameter errors.

use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::expr::{parse_poly_expr, parse_scalar};
use crate::family::{construct, via_genfun, FamilyParams, Strategy};
use crate::format::{poly_to_csv, poly_to_json_terms, poly_to_latex, poly_to_text, JsonTerm};
use crate::heat::{check_invariants, random_initial, residual, solve, HeatCheck, HeatProblem};
use crate::identity::{
    audit_grid, default_pq_set, summarize, AuditSummary, GridRanges, IdentityReport, Status, Tag,
    VariantPolicy, Verification,
};
use crate::poly::Poly;
use crate::scalar::Scalar;
use crate::var::Var;

#[derive(Debug, Parser)]
#[command(name = "ghpq", version, about = "Exact (p,q) Gould-Hopper polynomials, identity audits, and heat-equation solutions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Construct H_{n,m}^{(p,q)}(z,w|gamma) by one strategy.
    Compute(ComputeArgs),
    /// Check identities over a parameter grid.
    Verify(VerifyArgs),
    /// Full identity audit plus seeded heat-equation property checks.
    Audit(AuditArgs),
    /// Solve c d_z^p d_w^q u = d_t u from a polynomial initial datum.
    Heat(HeatArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PolyFormat {
    Text,
    Json,
    Csv,
    Latex,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Json,
    Junit,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    Printed,
    Corrected,
    Both,
}

impl From<VariantArg> for VariantPolicy {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Printed => VariantPolicy::Printed,
            VariantArg::Corrected => VariantPolicy::Corrected,
            VariantArg::Both => VariantPolicy::Both,
        }
    }
}

impl VariantArg {
    fn name(self) -> &'static str {
        match self {
            VariantArg::Printed => "printed",
            VariantArg::Corrected => "corrected",
            VariantArg::Both => "both",
        }
    }
}

#[derive(Debug, clap::Args)]
pub struct ComputeArgs {
    #[arg(long)]
    pub p: u32,
    #[arg(long)]
    pub q: u32,
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub m: u32,
    /// explicit | operational | creation | recurrence | genfun | hypergeom
    #[arg(long, default_value = "explicit")]
    pub strategy: String,
    /// Truncation order for the genfun strategy (default n + m).
    #[arg(long)]
    pub order: Option<usize>,
    /// Simultaneous substitution, e.g. `z=1/2,w=z+1,gamma=-1`.
    #[arg(long)]
    pub subst: Option<String>,
    #[arg(long, value_enum, default_value = "text")]
    pub format: PolyFormat,
}

#[derive(Debug, clap::Args)]
pub struct GridArgs {
    #[arg(long, default_value_t = 6)]
    pub nmax: u32,
    #[arg(long, default_value_t = 6)]
    pub mmax: u32,
    /// (p,q) pairs, e.g. `1,1;2,1`.
    #[arg(long)]
    pub pq: Option<String>,
    /// Bound on the auxiliary indices n', m', j, k.
    #[arg(long, default_value_t = 3)]
    pub extra_max: u32,
    /// Truncation order for generating-function identities.
    #[arg(long, default_value_t = 10)]
    pub order: usize,
    #[arg(long, value_enum, default_value = "both")]
    pub variant: VariantArg,
}

#[derive(Debug, clap::Args)]
pub struct VerifyArgs {
    /// Tag name, comma-separated list, or `all`.
    #[arg(long, default_value = "all")]
    pub tag: String,
    #[command(flatten)]
    pub grid: GridArgs,
    #[arg(long, value_enum, default_value = "json")]
    pub format: ReportFormat,
}

#[derive(Debug, clap::Args)]
pub struct AuditArgs {
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Worker threads; 0 picks the number of cores.
    #[arg(long, default_value_t = 0)]
    pub jobs: usize,
    /// Random initial data for the heat-equation checks.
    #[arg(long, default_value_t = 25)]
    pub heat_samples: u32,
    #[command(flatten)]
    pub grid: GridArgs,
    #[arg(long, value_enum, default_value = "json")]
    pub format: ReportFormat,
}

#[derive(Debug, clap::Args)]
pub struct HeatArgs {
    #[arg(long)]
    pub p: u32,
    #[arg(long)]
    pub q: u32,
    /// The constant c as `num` or `num/den`.
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    pub c: String,
    /// Initial datum f(z, w), e.g. `z^2*w + 3/2`.
    #[arg(long, allow_hyphen_values = true)]
    pub initial: String,
    #[arg(long, value_enum, default_value = "text")]
    pub format: PolyFormat,
}

/// A failure that maps to an exit code.
enum Exit {
    Usage(String),
    Io(std::io::Error),
}

impl From<Error> for Exit {
    fn from(e: Error) -> Self {
        Exit::Usage(e.to_string())
    }
}

impl From<std::io::Error> for Exit {
    fn from(e: std::io::Error) -> Self {
        Exit::Io(e)
    }
}

impl From<serde_json::Error> for Exit {
    fn from(e: serde_json::Error) -> Self {
        Exit::Io(e.into())
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            if code == 0 {
                let _ = out.write_all(rendered.as_bytes());
            } else {
                let _ = err.write_all(rendered.as_bytes());
            }
            return code;
        }
    };
    let result = match cli.command {
        Command::Compute(a) => compute(&a, out),
        Command::Verify(a) => verify_cmd(&a, out),
        Command::Audit(a) => audit_cmd(&a, out),
        Command::Heat(a) => heat_cmd(&a, out),
    };
    match result {
        Ok(code) => code,
        Err(Exit::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(Exit::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn write_poly(out: &mut dyn Write, p: &Poly, format: PolyFormat) -> std::result::Result<(), Exit> {
    match format {
        PolyFormat::Text => writeln!(out, "{}", poly_to_text(p))?,
        PolyFormat::Latex => writeln!(out, "{}", poly_to_latex(p))?,
        PolyFormat::Csv => out.write_all(poly_to_csv(p).as_bytes())?,
        PolyFormat::Json => {
            serde_json::to_writer(&mut *out, &poly_to_json_terms(p))?;
            writeln!(out)?;
        }
    }
    Ok(())
}

/// Parses `z=expr,w=expr,...` into simultaneous bindings.
pub fn parse_bindings(src: &str, allowed: &[Var]) -> Result<Vec<(Var, Poly)>> {
    let mut out: Vec<(Var, Poly)> = Vec::new();
    for part in src.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (name, expr) = part.split_once('=').ok_or_else(|| Error::Parse {
            pos: 0,
            msg: format!("expected `var=expr`, found `{part}`"),
        })?;
        let v: Var = name.trim().parse()?;
        if !allowed.contains(&v) {
            return Err(Error::DisallowedVariable(v.name().to_string()));
        }
        if out.iter().any(|(w, _)| *w == v) {
            return Err(Error::InvalidParams(format!("`{}` bound twice", v.name())));
        }
        out.push((v, parse_poly_expr(expr, allowed)?));
    }
    Ok(out)
}

#[derive(Serialize)]
struct ComputeDoc<'a> {
    p: u32,
    q: u32,
    n: u32,
    m: u32,
    strategy: &'a str,
    text: String,
    terms: Vec<JsonTerm>,
}

fn compute(a: &ComputeArgs, out: &mut dyn Write) -> std::result::Result<i32, Exit> {
    let strategy: Strategy = a.strategy.parse()?;
    let params = FamilyParams::new(a.p, a.q, a.n, a.m)?;
    let g = match (strategy, a.order) {
        (Strategy::Genfun, Some(order)) => via_genfun(params, order)?,
        _ => construct(params, strategy)?,
    };
    let allowed = [Var::Z, Var::W, Var::Gamma, Var::T];
    let poly = match &a.subst {
        Some(s) => g.poly.subst(&parse_bindings(s, &allowed)?),
        None => g.poly,
    };
    if a.format == PolyFormat::Json {
        let doc = ComputeDoc {
            p: a.p,
            q: a.q,
            n: a.n,
            m: a.m,
            strategy: strategy.name(),
            text: poly_to_text(&poly),
            terms: poly_to_json_terms(&poly),
        };
        serde_json::to_writer(&mut *out, &doc)?;
        writeln!(out)?;
    } else {
        write_poly(out, &poly, a.format)?;
    }
    Ok(0)
}

/// Parses `1,1;2,1` into pairs.
pub fn parse_pq_set(src: &str) -> Result<Vec<(u32, u32)>> {
    let mut out = Vec::new();
    for item in src.split(';').map(str::trim).filter(|s| !s.is_empty()) {
        let (p, q) = item.split_once(',').ok_or_else(|| Error::Parse {
            pos: 0,
            msg: format!("expected `p,q`, found `{item}`"),
        })?;
        let parse = |s: &str| {
            s.trim().parse::<u32>().map_err(|_| Error::Parse {
                pos: 0,
                msg: format!("`{s}` is not a nonnegative integer"),
            })
        };
        out.push((parse(p)?, parse(q)?));
    }
    if out.is_empty() {
        return Err(Error::InvalidParams("empty (p,q) set".to_string()));
    }
    Ok(out)
}

fn parse_tags(src: &str) -> Result<Vec<Tag>> {
    if src.eq_ignore_ascii_case("all") {
        return Ok(Tag::ALL.to_vec());
    }
    src.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(str::parse)
        .collect()
}

fn ranges(g: &GridArgs) -> Result<GridRanges> {
    let pq = match &g.pq {
        Some(s) => parse_pq_set(s)?,
        None => default_pq_set(),
    };
    Ok(GridRanges {
        n_max: g.nmax,
        m_max: g.mmax,
        pq,
        extra_max: g.extra_max,
    })
}

fn flatten(results: &[Verification]) -> Vec<&IdentityReport> {
    results.iter().flat_map(|v| v.reports.iter()).collect()
}

fn status_text(s: Status) -> String {
    match s {
        Status::SeriesPass(o) => format!("SeriesPass({o})"),
        other => other.name().to_string(),
    }
}

fn write_text_reports(out: &mut dyn Write, results: &[Verification], summary: &AuditSummary) -> std::io::Result<()> {
    for r in flatten(results) {
        write!(out, "{} [{}] {} {}", r.tag, r.params, r.variant.label(), status_text(r.status))?;
        if r.status == Status::Fail {
            write!(out, " difference: {}", poly_to_text(&r.difference))?;
        }
        writeln!(out)?;
    }
    writeln!(
        out,
        "cells: {}, exact: {}, series: {}, fail: {}, corrected used: {}",
        summary.cells, summary.exact_pass, summary.series_pass, summary.fail, summary.corrected_used
    )
}

fn xml_escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for ch in s.chars() {
        match ch {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            c => out.push(c),
        }
    }
    out
}

fn write_junit(out: &mut dyn Write, results: &[Verification], extra_failures: usize) -> std::io::Result<()> {
    // Only the deciding report of each cell counts as a test case; printed
    // failures that were rescued by a correction are recorded as properties.
    let failures = results.iter().filter(|v| !v.passed()).count() + extra_failures;
    writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#)?;
    writeln!(
        out,
        r#"<testsuite name="ghpq" tests="{}" failures="{}">"#,
        results.len(),
        failures
    )?;
    for v in results {
        let d = v.decisive();
        let name = xml_escape(&format!("[{}] {}", d.params, d.variant.label()));
        write!(out, r#"  <testcase classname="{}" name="{}">"#, d.tag, name)?;
        if let Some(p) = v.printed() {
            if p.status == Status::Fail && d.status.passed() {
                write!(
                    out,
                    r#"<system-out>printed form fails: {}</system-out>"#,
                    xml_escape(&poly_to_text(&p.difference))
                )?;
            }
        }
        if !d.status.passed() {
            write!(
                out,
                r#"<failure message="nonzero difference">{}</failure>"#,
                xml_escape(&poly_to_text(&d.difference))
            )?;
        }
        writeln!(out, "</testcase>")?;
    }
    writeln!(out, "</testsuite>")
}

fn verify_cmd(a: &VerifyArgs, out: &mut dyn Write) -> std::result::Result<i32, Exit> {
    let tags = parse_tags(&a.tag)?;
    let r = ranges(&a.grid)?;
    let results = audit_grid(&tags, &r, a.grid.order, a.grid.variant.into())?;
    let summary = summarize(&results);
    match a.format {
        ReportFormat::Json => {
            serde_json::to_writer_pretty(&mut *out, &flatten(&results))?;
            writeln!(out)?;
        }
        ReportFormat::Junit => write_junit(out, &results, 0)?,
        ReportFormat::Text => write_text_reports(out, &results, &summary)?,
    }
    Ok(if summary.fail == 0 { 0 } else { 1 })
}

#[derive(Serialize)]
struct GridDoc {
    nmax: u32,
    mmax: u32,
    pq: Vec<(u32, u32)>,
    extra_max: u32,
    order: usize,
    variant: &'static str,
}

#[derive(Serialize)]
struct HeatDoc {
    samples: u32,
    c_values: Vec<String>,
    passed: bool,
    checks: Vec<HeatCheck>,
}

#[derive(Serialize)]
struct AuditDoc<'a> {
    seed: u64,
    grid: GridDoc,
    summary: &'a AuditSummary,
    heat: HeatDoc,
    reports: Vec<&'a IdentityReport>,
}

/// Seed-determined heat-equation property checks: `samples` random data,
/// each solved for every (p,q) in `pq` and every c in {1, −1, 3/7}.
pub fn heat_suite(seed: u64, samples: u32, pq: &[(u32, u32)]) -> Result<Vec<HeatCheck>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cs = heat_c_values();
    let mut tasks = Vec::new();
    for _ in 0..samples {
        let f = random_initial(&mut rng, 6);
        let g = random_initial(&mut rng, 6);
        let lambda = Scalar::new(rand::Rng::gen_range(&mut rng, -7i64..=7), rand::Rng::gen_range(&mut rng, 1i64..=4));
        for &(p, q) in pq {
            for c in &cs {
                tasks.push((p, q, c.clone(), f.clone(), g.clone(), lambda.clone()));
            }
        }
    }
    tasks
        .par_iter()
        .map(|(p, q, c, f, g, l)| check_invariants(*p, *q, c, f, g, l))
        .collect()
}

pub fn heat_c_values() -> Vec<Scalar> {
    vec![Scalar::one(), Scalar::from_int(-1), Scalar::new(3, 7)]
}

fn audit_cmd(a: &AuditArgs, out: &mut dyn Write) -> std::result::Result<i32, Exit> {
    let r = ranges(&a.grid)?;
    let tags = Tag::ALL.to_vec();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(a.jobs)
        .build()
        .map_err(|e| Exit::Usage(e.to_string()))?;
    let (results, heat) = pool.install(|| -> Result<_> {
        let results = audit_grid(&tags, &r, a.grid.order, a.grid.variant.into())?;
        let heat = heat_suite(a.seed, a.heat_samples, &r.pq)?;
        Ok((results, heat))
    })?;
    let summary = summarize(&results);
    let heat_failures = heat.iter().filter(|h| !h.passed()).count();
    match a.format {
        ReportFormat::Json => {
            let doc = AuditDoc {
                seed: a.seed,
                grid: GridDoc {
                    nmax: r.n_max,
                    mmax: r.m_max,
                    pq: r.pq.clone(),
                    extra_max: r.extra_max,
                    order: a.grid.order,
                    variant: a.grid.variant.name(),
                },
                summary: &summary,
                heat: HeatDoc {
                    samples: a.heat_samples,
                    c_values: heat_c_values().iter().map(Scalar::to_canonical_string).collect(),
                    passed: heat_failures == 0,
                    checks: heat,
                },
                reports: flatten(&results),
            };
            serde_json::to_writer_pretty(&mut *out, &doc)?;
            writeln!(out)?;
        }
        ReportFormat::Junit => write_junit(out, &results, heat_failures)?,
        ReportFormat::Text => {
            write_text_reports(out, &results, &summary)?;
            writeln!(out, "heat checks: {}, failed: {}", heat.len(), heat_failures)?;
        }
    }
    Ok(if summary.fail == 0 && heat_failures == 0 { 0 } else { 1 })
}

#[derive(Serialize)]
struct HeatSolutionDoc {
    p: u32,
    q: u32,
    c: String,
    initial: String,
    u: String,
    u_terms: Vec<JsonTerm>,
    residual: String,
    residual_terms: Vec<JsonTerm>,
}

fn heat_cmd(a: &HeatArgs, out: &mut dyn Write) -> std::result::Result<i32, Exit> {
    let c = parse_scalar(&a.c)?;
    let initial = parse_poly_expr(&a.initial, &[Var::Z, Var::W])?;
    let prob = HeatProblem::new(a.p, a.q, c, initial)?;
    let u = solve(&prob)?.u;
    let res = residual(&prob, &u);
    match a.format {
        PolyFormat::Json => {
            let doc = HeatSolutionDoc {
                p: a.p,
                q: a.q,
                c: prob.c.to_canonical_string(),
                initial: poly_to_text(&prob.initial),
                u: poly_to_text(&u),
                u_terms: poly_to_json_terms(&u),
                residual: poly_to_text(&res),
                residual_terms: poly_to_json_terms(&res),
            };
            serde_json::to_writer(&mut *out, &doc)?;
            writeln!(out)?;
        }
        PolyFormat::Text => {
            writeln!(out, "u = {}", poly_to_text(&u))?;
            writeln!(out, "residual = {}", poly_to_text(&res))?;
        }
        PolyFormat::Latex => {
            writeln!(out, "u = {}", poly_to_latex(&u))?;
            writeln!(out, "residual = {}", poly_to_latex(&res))?;
        }
        PolyFormat::Csv => out.write_all(poly_to_csv(&u).as_bytes())?,
    }
    Ok(if res.is_zero() { 0 } else { 1 })
}
