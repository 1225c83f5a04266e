//! The `homcalc` command line: validate specs, compute (co)homology, run the
//! property suites and build BV generators.
//!
//! Exit codes: 0 success (including "no BV structure" findings), 1 a check
//! failed, 2 usage, parse or I/O error. The JSON report goes to `--json` when
//! given (the table then goes to stdout), otherwise JSON goes to stdout and
//! the table to stderr.

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::algebra::{validate, Coefficients, ValidationReport};
use crate::bv::{bv_report, BvReport, BvStatus, GeneratorReport};
use crate::error::{Error, Result};
use crate::fixtures::{self, Fixture};
use crate::homology::{Engine, EngineConfig, SpaceSummary};
use crate::io::AlgebraSpec;
use crate::verifier::{run_suites, Status, Suite, SuiteResult, VerifyConfig};

#[derive(Debug, Parser)]
#[command(name = "homcalc", version, about = "Hochschild (co)homology and calculus checks for hom-associative algebras")]
pub struct Cli {
    /// Write the JSON report to this file.
    #[arg(long, global = true, value_name = "PATH")]
    json: Option<PathBuf>,
    /// Directory searched for `<name>.json` specs before the bundled fixtures.
    #[arg(long, global = true, value_name = "DIR")]
    fixtures_dir: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check the hom-algebra axioms of a spec.
    Validate(SpecArg),
    /// Hochschild cohomology dimensions and representatives.
    Cohomology {
        #[command(flatten)]
        spec: SpecArg,
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..))]
        max_degree: u64,
        #[arg(long, value_enum, default_value_t = CoeffArg::Algebra)]
        coefficients: CoeffArg,
    },
    /// Hochschild homology (normalized when the algebra is unital).
    Homology {
        #[command(flatten)]
        spec: SpecArg,
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..))]
        max_degree: u64,
    },
    /// Run property suites.
    Verify {
        #[command(flatten)]
        spec: SpecArg,
        #[command(flatten)]
        run: RunArgs,
        /// Suites to run (default: all).
        #[arg(long, num_args = 1.., value_parser = parse_suite)]
        suite: Vec<Suite>,
    },
    /// Build BV generators and check the BV identity on cohomology classes.
    Bv {
        #[command(flatten)]
        spec: SpecArg,
        #[command(flatten)]
        run: RunArgs,
    },
    /// List the bundled fixtures.
    Fixtures,
}

#[derive(Debug, Args)]
struct SpecArg {
    /// Path to a spec file, or the name of a fixture.
    spec: String,
}

#[derive(Debug, Args)]
struct RunArgs {
    /// Cochain degree cap; chains go one degree higher.
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..))]
    max_degree: u64,
    #[arg(long, default_value_t = 100)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl RunArgs {
    fn config(&self) -> VerifyConfig {
        VerifyConfig {
            cochain_cap: self.max_degree as usize,
            chain_cap: self.max_degree as usize + 1,
            trials: self.trials,
            seed: self.seed,
            ..VerifyConfig::default()
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CoeffArg {
    Algebra,
    Dual,
}

fn parse_suite(s: &str) -> std::result::Result<Suite, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Loads a spec from a path, from `--fixtures-dir`, or from the bundled set.
pub fn resolve_spec(spec: &str, fixtures_dir: Option<&Path>) -> Result<Fixture> {
    let direct = Path::new(spec);
    let path = if direct.is_file() {
        Some(direct.to_path_buf())
    } else {
        fixtures_dir
            .map(|d| d.join(format!("{spec}.json")))
            .filter(|p| p.is_file())
    };
    match path {
        Some(p) => Fixture::from_spec(AlgebraSpec::load(&p)?),
        None => fixtures::get(spec).ok_or_else(|| {
            Error::Io(format!("{spec}: no such file and no fixture with that name"))
        }),
    }
}

/// A finished command: JSON payload, human table and exit code.
struct Outcome {
    json: String,
    table: String,
    code: i32,
}

fn outcome<T: Serialize>(report: &T, table: String, code: i32) -> Outcome {
    let mut json = serde_json::to_string_pretty(report).expect("reports serialize");
    json.push('\n');
    Outcome { json, table, code }
}

/// Runs the CLI on `args` (including the program name) and returns the exit
/// code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let result = execute(&cli).and_then(|o| {
        match &cli.json {
            Some(path) => {
                std::fs::write(path, &o.json).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
                let _ = out.write_all(o.table.as_bytes());
            }
            None => {
                let _ = out.write_all(o.json.as_bytes());
                let _ = err.write_all(o.table.as_bytes());
            }
        }
        Ok(o.code)
    });
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::Parse(_) | Error::Io(_) => 2,
                _ => 1,
            }
        }
    }
}

fn execute(cli: &Cli) -> Result<Outcome> {
    let dir = cli.fixtures_dir.as_deref();
    match &cli.command {
        Command::Validate(s) => cmd_validate(&resolve_spec(&s.spec, dir)?),
        Command::Cohomology {
            spec,
            max_degree,
            coefficients,
        } => {
            let coeffs = match coefficients {
                CoeffArg::Algebra => Coefficients::Algebra,
                CoeffArg::Dual => Coefficients::Dual,
            };
            cmd_cohomology(&resolve_spec(&spec.spec, dir)?, *max_degree as usize, coeffs)
        }
        Command::Homology { spec, max_degree } => cmd_homology(&resolve_spec(&spec.spec, dir)?, *max_degree as usize),
        Command::Verify { spec, run, suite } => {
            let suites = if suite.is_empty() { Suite::ALL.to_vec() } else { suite.clone() };
            cmd_verify(&resolve_spec(&spec.spec, dir)?, run.config(), &suites)
        }
        Command::Bv { spec, run } => cmd_bv(&resolve_spec(&spec.spec, dir)?, run.config()),
        Command::Fixtures => cmd_fixtures(dir),
    }
}

/// Left-aligned columns separated by two spaces.
fn render(headers: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = headers.iter().map(|h| h.len()).collect();
    for r in rows {
        for (w, c) in widths.iter_mut().zip(r) {
            *w = (*w).max(c.chars().count());
        }
    }
    let mut s = String::new();
    let line = |s: &mut String, cells: Vec<&str>| {
        let mut l = String::new();
        for (i, (c, w)) in cells.iter().zip(&widths).enumerate() {
            if i + 1 == cells.len() {
                l.push_str(c);
            } else {
                let _ = write!(l, "{c:<w$}  ");
            }
        }
        s.push_str(l.trim_end());
        s.push('\n');
    };
    line(&mut s, headers.to_vec());
    for r in rows {
        line(&mut s, r.iter().map(String::as_str).collect());
    }
    s
}

fn pass_fail(ok: bool) -> String {
    if ok { "pass" } else { "FAIL" }.to_string()
}

#[derive(Serialize)]
struct ValidateReport<'a> {
    algebra: &'a str,
    dim: usize,
    regular: bool,
    unital: bool,
    passed: bool,
    #[serde(flatten)]
    report: &'a ValidationReport,
}

fn validation_table(name: &str, report: &ValidationReport) -> String {
    let rows: Vec<Vec<String>> = report
        .checks
        .iter()
        .map(|c| {
            vec![
                c.name.clone(),
                if c.required { pass_fail(c.passed) } else if c.passed { "yes".into() } else { "no".into() },
                c.failures.to_string(),
                c.witness.clone().unwrap_or_default(),
            ]
        })
        .collect();
    format!("{name}\n{}", render(&["check", "status", "failures", "first witness"], &rows))
}

fn cmd_validate(fx: &Fixture) -> Result<Outcome> {
    let alg = &fx.algebra;
    let report = validate(alg);
    let passed = report.passed();
    let json = ValidateReport {
        algebra: alg.name(),
        dim: alg.dim(),
        regular: alg.is_regular(),
        unital: alg.is_unital(),
        passed,
        report: &report,
    };
    Ok(outcome(&json, validation_table(alg.name(), &report), if passed { 0 } else { 1 }))
}

/// Commands other than `verify` refuse algebras that fail validation.
fn require_valid(fx: &Fixture) -> Result<()> {
    let report = validate(&fx.algebra);
    match report.first_failure() {
        Some(c) => Err(Error::HypothesisNotSatisfied(format!(
            "{} is not a valid hom-algebra: {} fails at {}",
            fx.name,
            c.name,
            c.witness.clone().unwrap_or_default()
        ))),
        None => Ok(()),
    }
}

#[derive(Serialize)]
struct DegreeEntry {
    degree: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    skipped: Option<String>,
    #[serde(flatten, skip_serializing_if = "Option::is_none")]
    space: Option<SpaceSummary>,
}

#[derive(Serialize)]
struct GroupsReport<'a> {
    algebra: &'a str,
    kind: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    coefficients: Option<Coefficients>,
    #[serde(skip_serializing_if = "Option::is_none")]
    normalized: Option<bool>,
    max_degree: usize,
    degrees: Vec<DegreeEntry>,
}

fn groups_table(title: String, degrees: &[DegreeEntry], cycles: &str, boundaries: &str) -> String {
    let rows: Vec<Vec<String>> = degrees
        .iter()
        .map(|d| match (&d.space, &d.skipped) {
            (Some(s), _) => vec![
                d.degree.to_string(),
                s.dim.to_string(),
                s.cycles_dim.to_string(),
                s.boundaries_dim.to_string(),
                s.ambient_dim.to_string(),
            ],
            (None, reason) => vec![
                d.degree.to_string(),
                format!("skipped ({})", reason.clone().unwrap_or_default()),
            ],
        })
        .collect();
    format!("{title}\n{}", render(&["degree", "dim", cycles, boundaries, "ambient"], &rows))
}

fn cmd_cohomology(fx: &Fixture, max_degree: usize, coeffs: Coefficients) -> Result<Outcome> {
    require_valid(fx)?;
    let alg = &fx.algebra;
    let engine = Engine::new(
        alg,
        EngineConfig {
            cochain_cap: max_degree,
            ..EngineConfig::default()
        },
    );
    let degrees = (0..=max_degree)
        .map(|p| match engine.cohomology(p, coeffs) {
            Ok(s) => Ok(DegreeEntry {
                degree: p,
                skipped: None,
                space: Some(s.summary()),
            }),
            Err(e @ Error::Regularity(_)) => Ok(DegreeEntry {
                degree: p,
                skipped: Some(e.kind().to_string()),
                space: None,
            }),
            Err(e) => Err(e),
        })
        .collect::<Result<Vec<_>>>()?;
    let title = format!("H^p({}, {coeffs})", alg.name());
    let table = groups_table(title, &degrees, "cocycles", "coboundaries");
    let report = GroupsReport {
        algebra: alg.name(),
        kind: "cohomology",
        coefficients: Some(coeffs),
        normalized: None,
        max_degree,
        degrees,
    };
    Ok(outcome(&report, table, 0))
}

fn cmd_homology(fx: &Fixture, max_degree: usize) -> Result<Outcome> {
    require_valid(fx)?;
    let alg = &fx.algebra;
    let engine = Engine::new(
        alg,
        EngineConfig {
            chain_cap: max_degree,
            ..EngineConfig::default()
        },
    );
    let degrees = (0..=max_degree)
        .map(|n| {
            Ok(DegreeEntry {
                degree: n,
                skipped: None,
                space: Some(engine.homology(n)?.summary()),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let normalized = engine.normalized_chains();
    let title = format!("H_n({}){}", alg.name(), if normalized { ", normalized chains" } else { "" });
    let table = groups_table(title, &degrees, "cycles", "boundaries");
    let report = GroupsReport {
        algebra: alg.name(),
        kind: "homology",
        coefficients: None,
        normalized: Some(normalized),
        max_degree,
        degrees,
    };
    Ok(outcome(&report, table, 0))
}

#[derive(Serialize)]
struct VerifyReport<'a> {
    algebra: &'a str,
    config: VerifyConfig,
    passed: bool,
    suites: Vec<SuiteResult>,
}

fn status_word(s: Status) -> &'static str {
    match s {
        Status::Pass => "pass",
        Status::Fail => "FAIL",
        Status::Skipped => "skipped",
    }
}

fn verify_table(name: &str, results: &[SuiteResult]) -> String {
    let mut rows = Vec::new();
    for r in results {
        rows.push(vec![r.suite.to_string(), String::new(), status_word(r.status).into(), String::new(), String::new()]);
        for o in &r.identities {
            let note = match (&o.reason, &o.witness) {
                (Some(reason), _) => reason.clone(),
                (None, Some(w)) => w.detail.clone(),
                _ => String::new(),
            };
            let status = if o.required || o.status != Status::Fail {
                status_word(o.status).to_string()
            } else {
                "fail (informational)".to_string()
            };
            rows.push(vec![String::new(), o.name.clone(), status, format!("{}/{}", o.failures, o.checked), note]);
        }
    }
    format!("{name}\n{}", render(&["suite", "identity", "status", "failed/checked", "note"], &rows))
}

fn cmd_verify(fx: &Fixture, config: VerifyConfig, suites: &[Suite]) -> Result<Outcome> {
    let results = run_suites(suites, &fx.algebra, fx.theta.as_ref(), config);
    let passed = results.iter().all(SuiteResult::passed);
    let table = verify_table(fx.algebra.name(), &results);
    let report = VerifyReport {
        algebra: fx.algebra.name(),
        config,
        passed,
        suites: results,
    };
    Ok(outcome(&report, table, if passed { 0 } else { 1 }))
}

fn generator_rows(label: &str, g: &GeneratorReport) -> Vec<Vec<String>> {
    let status = serde_json::to_value(g.status).expect("enum serializes");
    let mut rows = vec![vec![
        label.to_string(),
        status.as_str().unwrap_or_default().to_string(),
        g.reason.clone().unwrap_or_default(),
    ]];
    if let Some(sq) = g.squares_to_zero {
        rows.push(vec![String::new(), "Delta^2 = 0".into(), pass_fail(sq)]);
        let held = g.pairs.iter().filter(|c| c.holds).count();
        rows.push(vec![
            String::new(),
            "BV identity".into(),
            format!("{} ({held}/{} class pairs)", pass_fail(held == g.pairs.len()), g.pairs.len()),
        ]);
    }
    rows
}

fn bv_table(r: &BvReport) -> String {
    let dims: Vec<String> = r.cohomology_dims.iter().map(usize::to_string).collect();
    let theta = match (&r.theta.matrix, r.theta.valid) {
        (None, _) => "none".to_string(),
        (Some(_), true) => format!("{:?}, valid", r.theta.source).to_lowercase(),
        (Some(_), false) => format!(
            "{}, invalid: {}",
            format!("{:?}", r.theta.source).to_lowercase(),
            r.theta.failure.clone().unwrap_or_default()
        ),
    };
    let mut rows = vec![
        vec!["H^p dims".into(), dims.join(" "), String::new()],
        vec!["Theta".into(), theta, String::new()],
    ];
    rows.extend(generator_rows("Delta via Theta", &r.via_theta));
    rows.extend(generator_rows("Delta via homology class", &r.via_homology_class));
    let status = serde_json::to_value(r.status).expect("enum serializes");
    rows.push(vec!["status".into(), status.as_str().unwrap_or_default().to_string(), String::new()]);
    format!("{}\n{}", r.algebra, render(&["item", "result", "note"], &rows))
}

fn cmd_bv(fx: &Fixture, config: VerifyConfig) -> Result<Outcome> {
    require_valid(fx)?;
    let engine = Engine::new(&fx.algebra, config.engine());
    let report = bv_report(&engine, fx.theta.as_ref())?;
    let code = if report.status == BvStatus::IdentityFailed { 1 } else { 0 };
    Ok(outcome(&report, bv_table(&report), code))
}

#[derive(Serialize)]
struct FixtureEntry {
    name: String,
    dim: usize,
    mutant: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    description: Option<String>,
}

fn cmd_fixtures(dir: Option<&Path>) -> Result<Outcome> {
    let mut list: Vec<Fixture> = fixtures::all();
    if let Some(d) = dir {
        let mut paths: Vec<PathBuf> = std::fs::read_dir(d)
            .map_err(|e| Error::Io(format!("{}: {e}", d.display())))?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "json"))
            .collect();
        paths.sort();
        for p in paths {
            list.push(Fixture::from_spec(AlgebraSpec::load(&p)?)?);
        }
    }
    let entries: Vec<FixtureEntry> = list
        .into_iter()
        .map(|f| FixtureEntry {
            dim: f.algebra.dim(),
            mutant: f.is_mutant(),
            description: f.spec.description.clone(),
            name: f.name,
        })
        .collect();
    let rows: Vec<Vec<String>> = entries
        .iter()
        .map(|e| {
            vec![
                e.name.clone(),
                e.dim.to_string(),
                if e.mutant { "mutant" } else { "" }.into(),
                e.description.clone().unwrap_or_default(),
            ]
        })
        .collect();
    Ok(outcome(&entries, render(&["name", "dim", "", "description"], &rows), 0))
}
