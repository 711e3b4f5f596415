use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::Value;

use symdyn::analysis::suite::basis_change_table;
use symdyn::analysis::{counterexample_suite, entropy_profile, run_all, BoundReport};
use symdyn::freegroup::{
    cancellation_bound_estimate, verify_basis_change_inequality, BasisChangeConstants,
    FreeGroupHom, STABLE_INCREMENTS,
};
use symdyn::recognize::check_recognizability;
use symdyn::{ComplexityTable, Morphism, Presentation};

#[derive(Parser)]
#[command(
    name = "symdyn",
    version,
    about = "Factor complexity of subshifts and their images"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
    Text,
}

#[derive(Args)]
struct Output {
    /// Output format; each command has its own default.
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Write to this file instead of standard output.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Complexity table `n,p` of a subshift.
    Complexity {
        subshift: PathBuf,
        #[arg(short, value_parser = positive)]
        n: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Complexity table of the image of a subshift under a morphism.
    Image {
        subshift: PathBuf,
        morphism: PathBuf,
        #[arg(short, value_parser = positive)]
        n: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Recognizability certificate of a morphism on a subshift.
    Recognize {
        morphism: PathBuf,
        subshift: PathBuf,
        #[arg(long, default_value_t = 3)]
        r_max: usize,
        /// Defaults to `2·r_max + 2`.
        #[arg(long)]
        window: Option<usize>,
        #[arg(long, default_value_t = 4, value_parser = positive)]
        period_max: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Entropy profile `n,p,log_p_over_n`.
    Entropy {
        subshift: PathBuf,
        #[arg(short, value_parser = positive)]
        n: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Doubling-morphism counterexample on the full k-shift.
    Counterexample {
        #[arg(long, value_parser = positive)]
        alphabet_size: usize,
        #[arg(short, value_parser = positive)]
        n: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Complexity comparison across a free basis change of a doubled subshift.
    BasisChange {
        subshift: PathBuf,
        phi: PathBuf,
        phi_inverse: PathBuf,
        #[arg(short, value_parser = positive)]
        n: usize,
        /// Window of the cancellation-bound estimates.
        #[arg(short = 'L', default_value_t = 6, value_parser = positive)]
        cancellation_window: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Runs verification suites.
    Verify {
        #[command(subcommand)]
        target: VerifyTarget,
    },
}

#[derive(Subcommand)]
enum VerifyTarget {
    /// Every claim on the standard examples.
    All {
        #[arg(short, value_parser = positive)]
        n: usize,
        #[command(flatten)]
        out: Output,
    },
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be positive".into()),
        Ok(v) => Ok(v),
        Err(e) => Err(e.to_string()),
    }
}

fn read_json(path: &Path) -> Result<Value> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn load_subshift(path: &Path) -> Result<Presentation> {
    Presentation::from_json(&read_json(path)?)
        .with_context(|| format!("loading {}", path.display()))
}

fn load_morphism(path: &Path) -> Result<Morphism> {
    Morphism::from_json(&read_json(path)?).with_context(|| format!("loading {}", path.display()))
}

fn load_hom(path: &Path) -> Result<FreeGroupHom> {
    FreeGroupHom::from_json(&read_json(path)?)
        .with_context(|| format!("loading {}", path.display()))
}

fn emit(out: &Output, text: &str) -> Result<()> {
    match &out.output {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

fn format_of(out: &Output, default: Format, allowed: &[Format]) -> Result<Format> {
    let f = out.format.unwrap_or(default);
    if !allowed.contains(&f) {
        bail!("this command does not support the requested format");
    }
    Ok(f)
}

fn emit_table(out: &Output, table: &ComplexityTable) -> Result<()> {
    match format_of(out, Format::Csv, &[Format::Csv, Format::Json])? {
        Format::Json => emit(out, &to_json(table)?),
        _ => emit(out, &table.to_csv()),
    }
}

/// Whether every verifier passed, and the failing claim ids otherwise.
enum Outcome {
    Done,
    Failed(Vec<String>),
}

fn report_outcome(reports: &[&BoundReport]) -> Outcome {
    let failed: Vec<String> = reports
        .iter()
        .flat_map(|r| {
            r.checks
                .iter()
                .filter(|c| !c.passed())
                .map(|c| c.name.clone())
        })
        .collect();
    if failed.is_empty() {
        Outcome::Done
    } else {
        Outcome::Failed(failed)
    }
}

fn run(cli: Cli) -> Result<Outcome> {
    match cli.command {
        Command::Complexity { subshift, n, out } => {
            let x = load_subshift(&subshift)?;
            emit_table(&out, &x.complexity_table(n)?)?;
        }
        Command::Image {
            subshift,
            morphism,
            n,
            out,
        } => {
            let x = load_subshift(&subshift)?;
            let sigma = symdyn::subshift::realign_source(load_morphism(&morphism)?, x.alphabet())?;
            let y = Presentation::image(x, sigma)?;
            emit_table(&out, &y.complexity_table(n)?)?;
        }
        Command::Recognize {
            morphism,
            subshift,
            r_max,
            window,
            period_max,
            out,
        } => {
            let x = load_subshift(&subshift)?;
            let sigma = symdyn::subshift::realign_source(load_morphism(&morphism)?, x.alphabet())?;
            let window = window.unwrap_or(2 * r_max + 2);
            let cert = check_recognizability(&sigma, &x, r_max, window, period_max)?;
            format_of(&out, Format::Json, &[Format::Json])?;
            emit(&out, &to_json(&cert)?)?;
        }
        Command::Entropy { subshift, n, out } => {
            let x = load_subshift(&subshift)?;
            let profile = entropy_profile(&x, 1..=n)?;
            match format_of(&out, Format::Csv, &[Format::Csv, Format::Json])? {
                Format::Json => emit(&out, &to_json(&profile)?)?,
                _ => emit(&out, &profile.to_csv())?,
            }
        }
        Command::Counterexample {
            alphabet_size,
            n,
            out,
        } => {
            let bundle = counterexample_suite(alphabet_size, n)?;
            match format_of(&out, Format::Text, &[Format::Text, Format::Json])? {
                Format::Json => emit(&out, &to_json(&bundle)?)?,
                _ => emit(&out, &bundle.to_text())?,
            }
            let mut outcome = report_outcome(&[&bundle.doubling, &bundle.ratio]);
            if bundle.entropy.h_y >= bundle.entropy.h_x {
                outcome = match outcome {
                    Outcome::Done => Outcome::Failed(vec!["entropy-drop".into()]),
                    Outcome::Failed(mut v) => {
                        v.push("entropy-drop".into());
                        Outcome::Failed(v)
                    }
                };
            }
            return Ok(outcome);
        }
        Command::BasisChange {
            subshift,
            phi,
            phi_inverse,
            n,
            cancellation_window,
            out,
        } => {
            let phi = load_hom(&phi)?;
            let psi = load_hom(&phi_inverse)?.realign(phi.target())?;
            let x = load_subshift(&subshift)?;
            let x_pm = if x.alphabet().ensure_same(phi.source().full()).is_ok() {
                x
            } else {
                Presentation::double(x)
            };
            x_pm.alphabet()
                .ensure_same(phi.source().full())
                .context("subshift alphabet does not match the homomorphism")?;
            let cf = cancellation_bound_estimate(&phi, cancellation_window);
            let cb = cancellation_bound_estimate(&psi, cancellation_window);
            let k = BasisChangeConstants::from_pair(&phi, &psi, cf.bound, cb.bound);
            let y_table = basis_change_table(&x_pm, &phi, &psi, &k, n)?;
            let x_table = x_pm.complexity_table(k.stretch() * n)?;
            let report = verify_basis_change_inequality(&x_table, &y_table, &k, n)
                .constant("cancellation_window", cancellation_window)
                .constant(
                    "forward_cancellation_stable",
                    cf.stable_over(STABLE_INCREMENTS),
                )
                .constant(
                    "backward_cancellation_stable",
                    cb.stable_over(STABLE_INCREMENTS),
                );
            match format_of(&out, Format::Text, &[Format::Text, Format::Json])? {
                Format::Json => emit(&out, &to_json(&report)?)?,
                _ => emit(&out, &report.to_text())?,
            }
            return Ok(report_outcome(&[&report]));
        }
        Command::Verify {
            target: VerifyTarget::All { n, out },
        } => {
            let suite = run_all(n);
            match format_of(&out, Format::Text, &[Format::Text, Format::Json])? {
                Format::Json => emit(&out, &to_json(&suite)?)?,
                _ => emit(&out, &suite.to_text())?,
            }
            let failed: Vec<String> = suite
                .failed_claims()
                .into_iter()
                .map(String::from)
                .collect();
            return Ok(if failed.is_empty() {
                Outcome::Done
            } else {
                Outcome::Failed(failed)
            });
        }
    }
    Ok(Outcome::Done)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(Outcome::Done) => ExitCode::SUCCESS,
        Ok(Outcome::Failed(claims)) => {
            eprintln!("verification failed: {}", claims.join(", "));
            ExitCode::from(3)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
