use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use polyineq::inequalities::{
    certify_on_circle, certify_on_grid, check_pointwise, CheckConfig, CheckReport, InequalityId, Subject,
};
use polyineq::lab::generate::{GeneratorSpec, ZeroRegion};
use polyineq::lab::probe::{sharpness_probe, Family, ParameterGrid};
use polyineq::lab::report::{render, Format};
use polyineq::lab::search::{violation_search_with, SearchConfig};
use polyineq::lab::selftest::{self, Scale};
use polyineq::lab::sweep::{sweep, SweepSource};
use polyineq::operators::{ParameterSet, DEFAULT_RADIUS_GRID};
use polyineq::poly::ComplexPolynomial;

/// Numerical checks of Bernstein-type inequalities for the modified Smirnov
/// operator.
///
/// Exit status: 0 when every margin is within tolerance, 2 when a violation
/// is found (or a self-test criterion fails), 1 on usage or input errors.
#[derive(Parser)]
#[command(name = "polyineq", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check one polynomial against one inequality at a point or on a circle.
    Check {
        #[command(flatten)]
        instance: InstanceArgs,
        /// Evaluate at this point (`re` or `re,im`) instead of certifying a circle.
        #[arg(long, value_parser = parse_complex)]
        z: Option<Complex64>,
        /// Circle radius certified when no point is given.
        #[arg(long, default_value_t = 1.0)]
        radius: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Certify an inequality on every radius of the radius grid.
    Certify {
        #[command(flatten)]
        instance: InstanceArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Largest lhs/rhs ratio of an extremal family over a parameter grid.
    Probe {
        #[arg(long, value_parser = parse_ineq)]
        ineq: InequalityId,
        #[arg(long, default_value = "lambda_zn")]
        family: Family,
        /// Scale of the `lambda_zn` family.
        #[arg(long, value_parser = parse_complex, default_value = "1")]
        lambda: Complex64,
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Randomized counterexample search.
    Search {
        #[arg(long, value_parser = parse_ineq)]
        ineq: InequalityId,
        #[arg(long, default_value_t = 10_000)]
        budget: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 8)]
        max_degree: usize,
        /// Multiplies every right-hand side (harness sensitivity checks).
        #[arg(long, default_value_t = 1.0)]
        rhs_factor: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Reports over a Cartesian parameter grid.
    Sweep {
        #[arg(long, value_parser = parse_ineq)]
        ineq: InequalityId,
        /// Extremal family; ignored when `--region` is given.
        #[arg(long, default_value = "lambda_zn")]
        family: Family,
        #[arg(long, value_parser = parse_complex, default_value = "1")]
        lambda: Complex64,
        /// Generate instances instead: anywhere, outside, inside, boundary or annulus:LO:HI.
        #[arg(long, value_parser = parse_region)]
        region: Option<ZeroRegion>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        check: CheckArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run the acceptance criteria.
    Selftest {
        /// Reduced instance counts and search budgets.
        #[arg(long)]
        quick: bool,
        /// Only these criteria (1-10).
        #[arg(long, value_delimiter = ',')]
        only: Vec<u8>,
    },
}

#[derive(Args)]
struct InstanceArgs {
    #[arg(long, value_parser = parse_ineq)]
    ineq: InequalityId,
    /// Coefficients as JSON `[[re,im],...]` (constant term first), or a path to such a file.
    #[arg(long)]
    poly: String,
    /// Dominating polynomial F for the pair inequalities (L5, DOM-A, DOM-B).
    #[arg(long)]
    dominant: Option<String>,
    #[arg(long = "R", default_value_t = 1.0)]
    dilation: f64,
    #[arg(long, value_parser = parse_complex, default_value = "0")]
    alpha: Complex64,
    #[arg(long, value_parser = parse_complex, default_value = "0")]
    beta: Complex64,
    #[arg(long, value_parser = parse_complex, default_value = "0")]
    a: Complex64,
    #[arg(long, default_value_t = 1.0)]
    k: f64,
    #[arg(long, value_delimiter = ',')]
    radius_grid: Option<Vec<f64>>,
    #[command(flatten)]
    check: CheckArgs,
}

#[derive(Args)]
struct CheckArgs {
    /// Samples per circle for sampled margins.
    #[arg(long)]
    samples: Option<usize>,
    /// Relative bracket tolerance.
    #[arg(long, default_value_t = polyineq::circle_max::DEFAULT_TOL)]
    tol: f64,
}

#[derive(Args)]
struct GridArgs {
    #[arg(long = "R", value_delimiter = ',', default_value = "1")]
    dilation: Vec<f64>,
    /// Repeat for several values; each `re` or `re,im`.
    #[arg(long, value_parser = parse_complex, default_value = "0")]
    alpha: Vec<Complex64>,
    #[arg(long, value_parser = parse_complex, default_value = "0")]
    beta: Vec<Complex64>,
    #[arg(long, value_parser = parse_complex, default_value = "0")]
    a: Vec<Complex64>,
    /// Degrees as a list `1,2,5` or a range `2..8` (inclusive).
    #[arg(long, default_value = "2..8")]
    degrees: String,
    #[arg(long, value_delimiter = ',', default_value = "1")]
    radius_grid: Vec<f64>,
    #[arg(long, default_value_t = 1.0)]
    k: f64,
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long, default_value = "json")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_ineq(s: &str) -> Result<InequalityId, String> {
    s.parse().map_err(|e: polyineq::Error| e.to_string())
}

/// `re`, `re,im` or `[re,im]`.
fn parse_complex(s: &str) -> Result<Complex64, String> {
    let t = s.trim().trim_start_matches('[').trim_end_matches(']');
    let parts: Vec<&str> = t.split(',').map(str::trim).collect();
    let num = |x: &str| x.parse::<f64>().map_err(|_| format!("invalid number '{x}' in '{s}'"));
    match parts.as_slice() {
        [re] => Ok(Complex64::new(num(re)?, 0.0)),
        [re, im] => Ok(Complex64::new(num(re)?, num(im)?)),
        _ => Err(format!("expected re or re,im, got '{s}'")),
    }
}

fn parse_region(s: &str) -> Result<ZeroRegion, String> {
    let parts: Vec<&str> = s.split(':').collect();
    match parts.as_slice() {
        ["anywhere"] => Ok(ZeroRegion::Anywhere),
        ["outside"] => Ok(ZeroRegion::OutsideClosedDisk),
        ["inside"] => Ok(ZeroRegion::InsideClosedDisk),
        ["boundary"] => Ok(ZeroRegion::BoundaryHugging),
        ["annulus", lo, hi] => {
            let k_lo = lo.parse().map_err(|_| format!("invalid radius '{lo}'"))?;
            let k_hi = hi.parse().map_err(|_| format!("invalid radius '{hi}'"))?;
            Ok(ZeroRegion::Annulus { k_lo, k_hi })
        }
        _ => Err(format!("unknown region '{s}'")),
    }
}

fn parse_degrees(s: &str) -> Result<Vec<usize>> {
    let bad = || anyhow::anyhow!("invalid degree list '{s}'");
    if let Some((lo, hi)) = s.split_once("..") {
        let lo: usize = lo.trim().parse().map_err(|_| bad())?;
        let hi: usize = hi.trim().trim_start_matches('=').parse().map_err(|_| bad())?;
        if lo > hi {
            bail!(bad());
        }
        return Ok((lo..=hi).collect());
    }
    s.split(',').map(|d| d.trim().parse().map_err(|_| bad())).collect()
}

fn read_poly(arg: &str) -> Result<ComplexPolynomial> {
    let text = if arg.trim_start().starts_with('[') {
        arg.to_string()
    } else {
        fs::read_to_string(Path::new(arg)).with_context(|| format!("reading polynomial file {arg}"))?
    };
    Ok(ComplexPolynomial::from_json(&text)?)
}

impl CheckArgs {
    fn config(&self) -> Result<CheckConfig> {
        if !(self.tol > 0.0) {
            bail!("--tol must be positive");
        }
        Ok(CheckConfig { tol: self.tol, samples: self.samples, ..CheckConfig::default() })
    }
}

impl InstanceArgs {
    fn params(&self) -> Result<ParameterSet> {
        let grid = self.radius_grid.clone().unwrap_or_else(|| DEFAULT_RADIUS_GRID.to_vec());
        Ok(ParameterSet::new(self.dilation, self.alpha, self.beta, self.a, self.k, grid)?)
    }

    fn polys(&self) -> Result<(ComplexPolynomial, Option<ComplexPolynomial>)> {
        let p = read_poly(&self.poly)?;
        let f = self.dominant.as_deref().map(read_poly).transpose()?;
        Ok((p, f))
    }
}

fn subject<'a>(p: &'a ComplexPolynomial, f: &'a Option<ComplexPolynomial>) -> Subject<'a> {
    match f {
        Some(dominant) => Subject::Pair { p, dominant },
        None => Subject::Single(p),
    }
}

impl GridArgs {
    fn grid(&self) -> Result<ParameterGrid> {
        Ok(ParameterGrid {
            dilation: self.dilation.clone(),
            alpha: self.alpha.clone(),
            beta: self.beta.clone(),
            a: self.a.clone(),
            degrees: parse_degrees(&self.degrees)?,
            radius_grid: self.radius_grid.clone(),
            k: self.k,
        })
    }
}

fn emit(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display()))?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            if !text.ends_with('\n') {
                stdout.write_all(b"\n")?;
            }
        }
    }
    Ok(())
}

enum Status {
    Clean,
    Violation,
}

fn status_of(reports: &[CheckReport]) -> Status {
    if reports.iter().any(CheckReport::is_violation) {
        Status::Violation
    } else {
        Status::Clean
    }
}

fn emit_reports(reports: &[CheckReport], output: &OutputArgs) -> Result<Status> {
    emit(&render(reports, output.format)?, output.out.as_deref())?;
    Ok(status_of(reports))
}

fn run(cli: Cli) -> Result<Status> {
    match cli.command {
        Command::Check { instance, z, radius, output } => {
            let (p, f) = instance.polys()?;
            let params = instance.params()?;
            let cfg = instance.check.config()?;
            let report = match z {
                Some(z) => check_pointwise(instance.ineq, subject(&p, &f), &params, z, &cfg)?,
                None => certify_on_circle(instance.ineq, subject(&p, &f), &params, radius, &cfg)?,
            };
            emit_reports(&[report], &output)
        }
        Command::Certify { instance, output } => {
            let (p, f) = instance.polys()?;
            let params = instance.params()?;
            let reports = certify_on_grid(instance.ineq, subject(&p, &f), &params, &instance.check.config()?)?;
            emit_reports(&reports, &output)
        }
        Command::Probe { ineq, family, lambda, grid, out } => {
            let result = sharpness_probe(ineq, family, lambda, &grid.grid()?)?;
            emit(&serde_json::to_string_pretty(&result)?, out.as_deref())?;
            Ok(Status::Clean)
        }
        Command::Search { ineq, budget, seed, max_degree, rhs_factor, out } => {
            if budget == 0 {
                bail!("--budget must be at least 1");
            }
            if !(rhs_factor > 0.0) {
                bail!("--rhs-factor must be positive");
            }
            let mut cfg = SearchConfig::new(budget, seed);
            cfg.max_degree = max_degree;
            cfg.check.rhs_factor = rhs_factor;
            let result = violation_search_with(ineq, &cfg);
            emit(&serde_json::to_string_pretty(&result)?, out.as_deref())?;
            Ok(if result.violation_found { Status::Violation } else { Status::Clean })
        }
        Command::Sweep { ineq, family, lambda, region, seed, grid, check, output } => {
            let source = match region {
                Some(region) => SweepSource::Generated(GeneratorSpec::new(1, region, seed)),
                None => SweepSource::Family { family, lambda },
            };
            let reports = sweep(ineq, &grid.grid()?, &source, &check.config()?)?;
            emit_reports(&reports, &output)
        }
        Command::Selftest { quick, only } => {
            let scale = if quick { Scale::Quick } else { Scale::Full };
            let mut all_passed = true;
            for (number, _) in selftest::CRITERIA {
                if !only.is_empty() && !only.contains(&number) {
                    continue;
                }
                let outcome = selftest::run(number, scale).expect("listed criterion");
                println!("{outcome}");
                all_passed &= outcome.passed;
            }
            Ok(if all_passed { Status::Clean } else { Status::Violation })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(Status::Clean) => ExitCode::SUCCESS,
        Ok(Status::Violation) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
