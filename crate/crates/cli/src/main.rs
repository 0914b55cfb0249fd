//! `antilin`: analyse antilinear operators stored as JSON operator files and
//! emit verification reports.
//!
//! Exit codes: 0 when every check passes, 1 when a check fails, 2 on a usage
//! or input error (one-line diagnostic on stderr).

mod commands;

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use antilin::gen::GenKind;
use antilin::matkernel::{Tolerances, C64};
use clap::{Args, Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(name = "antilin", version, about = "Verify identities of antilinear operators on C^n")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Operator file (schema antilin.operator/v1).
    #[arg(long)]
    input: PathBuf,
    /// Write the report here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Relative tolerance for structural comparisons and rank decisions.
    #[arg(long)]
    tol: Option<f64>,
    /// Seed for sampled checks.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, conflicts_with = "csv")]
    json: bool,
    #[arg(long)]
    csv: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Adjoint, normality, self-adjointness, modulus, polar and pseudoinverse summary.
    Inspect(Common),
    /// Pseudoinverse identities, range equality and the normal-operator criteria.
    Identities(Common),
    /// Spectral circles and their cross-check against the realification.
    Spectrum(Common),
    /// Numerical range disk and witnesses.
    Numrange {
        #[command(flatten)]
        common: Common,
        /// Requested value as RE,IM; repeatable.
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        target: Vec<C64>,
    },
    /// Schur and quadratic complements, factorizations and spectral scans.
    Block {
        #[command(flatten)]
        common: Common,
        /// Shift points as RE,IM; repeatable or separated by ';'.
        #[arg(long, value_parser = parse_mu_list, allow_hyphen_values = true)]
        mu: Vec<MuList>,
    },
    /// Extension residuals and minimality of a normal extension.
    Extension(Common),
    /// Write a seeded random operator file.
    Gen {
        #[arg(long, value_parser = parse_kind)]
        kind: GenKind,
        #[arg(long)]
        dim: usize,
        /// Second block size for `--kind block`.
        #[arg(long)]
        dim2: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Debug, Clone)]
struct MuList(Vec<C64>);

fn parse_complex(s: &str) -> Result<C64, String> {
    let (re, im) = s.split_once(',').unwrap_or((s, "0"));
    let re: f64 = re.trim().parse().map_err(|_| format!("bad real part in {s:?}"))?;
    let im: f64 = im.trim().parse().map_err(|_| format!("bad imaginary part in {s:?}"))?;
    if !re.is_finite() || !im.is_finite() {
        return Err(format!("non-finite value {s:?}"));
    }
    Ok(C64::new(re, im))
}

fn parse_mu_list(s: &str) -> Result<MuList, String> {
    s.split(';')
        .filter(|p| !p.trim().is_empty())
        .map(parse_complex)
        .collect::<Result<Vec<_>, _>>()
        .map(MuList)
}

fn parse_kind(s: &str) -> Result<GenKind, String> {
    s.parse().map_err(|e: antilin::Error| e.to_string())
}

fn fail(msg: impl std::fmt::Display) -> ExitCode {
    let line = msg.to_string();
    let line = line.lines().next().unwrap_or("error").trim_start_matches("error: ");
    eprintln!("antilin: error: {line}");
    ExitCode::from(2)
}

fn write_out(path: Option<&PathBuf>, text: &str) -> Result<(), String> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| format!("cannot write {}: {e}", p.display())),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| format!("cannot write to stdout: {e}")),
    }
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            return fail(e);
        }
    };
    let echo: Vec<String> = argv.into_iter().skip(1).collect();

    let (common, job) = match cli.command {
        Command::Gen {
            kind,
            dim,
            dim2,
            seed,
            output,
        } => {
            return match antilin::gen::generate(kind, dim, dim2, seed) {
                Ok(file) => match write_out(output.as_ref(), &file.to_json()) {
                    Ok(()) => ExitCode::SUCCESS,
                    Err(e) => fail(e),
                },
                Err(e) => fail(e),
            };
        }
        Command::Inspect(c) => (c, commands::Job::Inspect),
        Command::Identities(c) => (c, commands::Job::Identities),
        Command::Spectrum(c) => (c, commands::Job::Spectrum),
        Command::Numrange { common, target } => (common, commands::Job::Numrange(target)),
        Command::Block { common, mu } => (common, commands::Job::Block(mu.into_iter().flat_map(|m| m.0).collect())),
        Command::Extension(c) => (c, commands::Job::Extension),
    };

    let mut tol = Tolerances::default();
    if let Some(rtol) = common.tol {
        if !(rtol.is_finite() && rtol > 0.0) {
            return fail(format!("--tol must be a positive number, got {rtol}"));
        }
        tol.rtol = rtol;
    }
    let text = match fs::read_to_string(&common.input) {
        Ok(t) => t,
        Err(e) => return fail(format!("cannot read {}: {e}", common.input.display())),
    };
    let report = match commands::run(job, &text, echo, tol, common.seed) {
        Ok(r) => r,
        Err(e) => return fail(e),
    };
    let rendered = if common.csv { report.to_csv() } else { report.to_json() };
    if let Err(e) = write_out(common.output.as_ref(), &rendered) {
        return fail(e);
    }
    if report.pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
