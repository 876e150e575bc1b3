//! Command-line front end: parses arguments, dispatches to the core
//! library and writes a JSON or CSV report.

pub mod args;
pub mod config;
pub mod error;
pub mod report;

use std::ffi::OsString;
use std::io::Write;

use bnpair_core::git::{self, AnyGrassPoint, GrassPoint, Linearization};
use bnpair_core::linalg::Field;
use bnpair_core::p1model::{self, PairP1};
use bnpair_core::stability::verdict_against;
use bnpair_core::{existence_check, numerical_jh, PairType};
use clap::Parser;
use serde::Serialize;

use args::{CheckArgs, Cli, Command, Format, GitArgs, JhArgs, P1Args, P1CheckArgs, P1SweepArgs, WallsArgs};
use config::{parse_interval, parse_rational, parse_type, read_json, resolve_budget, resolve_type, RunConfig};
pub use error::{CliError, EXIT_BUDGET, EXIT_INTERNAL, EXIT_INVALID, EXIT_OK};
use report::{CheckResult, CsvTable, GitResult, JhResult, P1CheckResult, P1SweepResult, Report, WallsResult};

/// Runs one command line and returns the process exit code: 0 when a
/// result was computed (whatever the verdict), 2 for invalid input, 3 when
/// an enumeration budget is exceeded and 1 for internal failures.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                return EXIT_INVALID;
            }
            let _ = write!(out, "{}", e.render());
            return EXIT_OK;
        }
    };
    match execute(&cli, out) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<(), CliError> {
    let format = if cli.json { Format::Json } else { cli.format };
    let base = |name: &str| RunConfig::new(name, format, cli.decimal);
    match &cli.command {
        Command::Walls(a) => emit(out, walls(base("walls"), a)?),
        Command::Check(a) => emit(out, check(base("check"), a)?),
        Command::Jh(a) => emit(out, jh(base("jh"), a)?),
        Command::GitCheck(a) => emit(out, git_check(base("git-check"), a)?),
        Command::P1Check(a) => emit(out, p1_check(base("p1-check"), a)?),
        Command::P1Sweep(a) => emit(out, p1_sweep(base("p1-sweep"), a)?),
    }
}

fn emit<T: Serialize + CsvTable>(out: &mut dyn Write, report: Report<T>) -> Result<(), CliError> {
    let io = |e: std::io::Error| CliError::Output(e.to_string());
    match report.config.format {
        Format::Json => {
            let text = match report.config.decimal {
                Some(digits) => {
                    let mut value = serde_json::to_value(&report).map_err(|e| CliError::Output(e.to_string()))?;
                    report::decimalize(&mut value, digits);
                    serde_json::to_string_pretty(&value)
                }
                None => serde_json::to_string_pretty(&report),
            }
            .map_err(|e| CliError::Output(e.to_string()))?;
            writeln!(out, "{text}").map_err(io)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            let csv_err = |e: csv::Error| CliError::Output(e.to_string());
            w.write_record(report.result.header()).map_err(csv_err)?;
            for mut row in report.result.rows() {
                if let Some(digits) = report.config.decimal {
                    for cell in &mut row {
                        if let Ok(r) = parse_rational(cell) {
                            *cell = r.to_decimal_string(digits);
                        }
                    }
                }
                w.write_record(&row).map_err(csv_err)?;
            }
            w.flush().map_err(io)
        }
    }
}

pub fn walls(mut cfg: RunConfig, a: &WallsArgs) -> Result<Report<WallsResult>, CliError> {
    let (ty, curve) = resolve_type(&a.ty)?;
    let interval = parse_interval(&a.interval)?;
    let report = bnpair_core::chambers(&ty, &curve, &interval)?;
    cfg.ty = Some(ty.clone());
    cfg.curve = Some(curve);
    cfg.interval = Some(interval);
    Ok(Report::new(cfg, WallsResult { ty, report }))
}

pub fn check(mut cfg: RunConfig, a: &CheckArgs) -> Result<Report<CheckResult>, CliError> {
    let (ty, curve) = resolve_type(&a.ty)?;
    let alpha = parse_rational(&a.alpha)?;
    let subs = a.subs.iter().map(|s| parse_type(s)).collect::<Result<Vec<PairType>, _>>()?;
    let feasibility = existence_check(&ty, &alpha, &curve)?;
    let verdict = if subs.is_empty() { None } else { Some(verdict_against(&ty, &alpha, &subs)?) };
    cfg.ty = Some(ty.clone());
    cfg.curve = Some(curve);
    cfg.alpha = Some(alpha.clone());
    cfg.subs = subs;
    Ok(Report::new(
        cfg,
        CheckResult {
            ty,
            alpha,
            feasibility,
            verdict,
        },
    ))
}

pub fn jh(mut cfg: RunConfig, a: &JhArgs) -> Result<Report<JhResult>, CliError> {
    let (ty, curve) = resolve_type(&a.ty)?;
    let alpha = parse_rational(&a.alpha)?;
    let decompositions = numerical_jh(&ty, &alpha, &curve, a.max_parts)?;
    cfg.ty = Some(ty.clone());
    cfg.curve = Some(curve);
    cfg.alpha = Some(alpha.clone());
    cfg.max_parts = a.max_parts;
    Ok(Report::new(
        cfg,
        JhResult {
            ty,
            alpha,
            decompositions,
        },
    ))
}

fn decide<F: Field>(
    pt: &GrassPoint<F>,
    lin: &Linearization,
    method: &str,
    opts: &git::SearchOptions,
) -> Result<git::HmVerdict, CliError> {
    Ok(git::strategy::<F>(method)?.decide(pt, lin, opts)?)
}

pub fn git_check(mut cfg: RunConfig, a: &GitArgs) -> Result<Report<GitResult>, CliError> {
    let point: AnyGrassPoint = read_json(&a.point)?;
    let lin = Linearization::new(parse_rational(&a.p)?, parse_rational(&a.q)?)?;
    let opts = git::SearchOptions {
        budget: resolve_budget(&a.budget, git::strategy::DEFAULT_BUDGET)?,
        samples: a.samples,
        seed: a.seed,
    };
    let verdict = match &point {
        AnyGrassPoint::Prime(pt) => decide(pt, &lin, &a.method, &opts)?,
        AnyGrassPoint::Rational(pt) => decide(pt, &lin, &a.method, &opts)?,
    };
    cfg.input = Some(a.point.clone());
    cfg.p = Some(lin.p.clone());
    cfg.q = Some(lin.q.clone());
    cfg.method = Some(a.method.clone());
    cfg.samples = Some(opts.samples);
    cfg.seed = Some(opts.seed);
    cfg.budget = Some(opts.budget);
    Ok(Report::new(
        cfg,
        GitResult {
            point,
            linearization: lin,
            verdict,
        },
    ))
}

fn load_pair(cfg: &mut RunConfig, a: &P1Args) -> Result<(PairP1, p1model::SearchOptions), CliError> {
    let pair: PairP1 = read_json(&a.pair)?;
    let mut opts = p1model::SearchOptions {
        budget: resolve_budget(&a.budget, p1model::search::DEFAULT_BUDGET)?,
        ..p1model::SearchOptions::default()
    };
    if !a.families.is_empty() {
        for name in &a.families {
            p1model::family(name)?;
        }
        opts.families = a.families.clone();
    }
    cfg.input = Some(a.pair.clone());
    cfg.field_order = Some(a.field_order);
    cfg.families = opts.families.clone();
    cfg.budget = Some(opts.budget);
    cfg.ty = Some(pair.numerical_type());
    cfg.curve = Some(bnpair_core::CurveData::p1());
    Ok((pair, opts))
}

pub fn p1_check(mut cfg: RunConfig, a: &P1CheckArgs) -> Result<Report<P1CheckResult>, CliError> {
    let (pair, opts) = load_pair(&mut cfg, &a.pair)?;
    let alpha = parse_rational(&a.alpha)?;
    let verdict = p1model::destabilizer_search(&pair, &alpha, a.pair.field_order, &opts)?;
    cfg.alpha = Some(alpha.clone());
    Ok(Report::new(
        cfg,
        P1CheckResult {
            ty: pair.numerical_type(),
            pair,
            alpha,
            verdict,
        },
    ))
}

pub fn p1_sweep(mut cfg: RunConfig, a: &P1SweepArgs) -> Result<Report<P1SweepResult>, CliError> {
    let (pair, opts) = load_pair(&mut cfg, &a.pair)?;
    let interval = parse_interval(&a.interval)?;
    let report = p1model::alpha_range_report(&pair, &interval, a.pair.field_order, &opts)?;
    cfg.interval = Some(interval);
    Ok(Report::new(cfg, P1SweepResult { pair, report }))
}
