use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use romanovski::exact::{int, to_f64};
use romanovski::quad::{self, QuadResult};
use romanovski::verify::{self, VerifyConfig};
use romanovski::{parse_rational, three_term_q, Params, Poly, Rational};

const EXIT_FAILURES: u8 = 1;
const EXIT_DOMAIN: u8 = 3;
const EXIT_IO: u8 = 4;

#[derive(Parser)]
#[command(
    name = "romanovski",
    version,
    about = "Romanovski complementary polynomials Q_nu^(alpha,-a)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Coefficient table of Q_0 .. Q_max.
    Table {
        #[arg(long, value_parser = rational, allow_hyphen_values = true)]
        alpha: Rational,
        #[arg(long, value_parser = rational, allow_hyphen_values = true)]
        a: Rational,
        #[arg(long)]
        max_degree: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Output file; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run identity checks over seeded random parameters.
    Verify {
        #[arg(long, value_parser = suite_name, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 8)]
        max_degree: usize,
        #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Orthogonality integral O_{mu,nu}.
    Ortho {
        #[arg(long, value_parser = rational, allow_hyphen_values = true)]
        alpha: Rational,
        #[arg(long, value_parser = rational, allow_hyphen_values = true)]
        a: Rational,
        #[arg(long)]
        mu: usize,
        #[arg(long)]
        nu: usize,
        /// Extra sqrt(sigma) in the numerator.
        #[arg(long)]
        half_power: bool,
    },
    /// Evaluate I_0, I_1 or I on a y grid and write CSV.
    Scan {
        #[arg(value_enum)]
        kind: ScanKind,
        #[arg(long, value_parser = rational, allow_hyphen_values = true, default_value = "0")]
        alpha: Rational,
        #[arg(long, value_parser = rational, allow_hyphen_values = true)]
        a: Rational,
        #[arg(long, allow_hyphen_values = true)]
        y_min: f64,
        #[arg(long, allow_hyphen_values = true)]
        y_max: f64,
        #[arg(long, default_value_t = 19, value_parser = clap::value_parser!(u64).range(2..))]
        steps: u64,
        /// CSV destination; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ScanKind {
    I0,
    I1,
    I,
}

fn rational(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn suite_name(s: &str) -> Result<String, String> {
    verify::parse_suites(s)
        .map(|_| s.to_string())
        .map_err(|e| e.to_string())
}

fn open_out(out: &Option<PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match out {
        Some(path) => Box::new(BufWriter::new(
            File::create(path).with_context(|| format!("cannot create {}", path.display()))?,
        )),
        None => Box::new(io::stdout().lock()),
    })
}

fn write_table(polys: &[Poly], format: Format, w: &mut dyn Write) -> Result<()> {
    match format {
        Format::Json => {
            serde_json::to_writer(&mut *w, polys)?;
            writeln!(w)?;
        }
        Format::Csv => {
            let width = polys
                .iter()
                .map(|p| p.coeffs().len())
                .max()
                .unwrap_or(1)
                .max(1);
            let mut out = csv::Writer::from_writer(w);
            let header = std::iter::once("degree".to_string())
                .chain((0..width).map(|k| format!("coeff{k}")));
            out.write_record(header)?;
            for (deg, p) in polys.iter().enumerate() {
                let row = std::iter::once(deg.to_string())
                    .chain((0..width).map(|k| p.coeff(k).to_string()));
                out.write_record(row)?;
            }
            out.flush()?;
        }
    }
    Ok(())
}

/// `max |f(y) - f(-y)|` over the grid.
fn max_asymmetry(values: &[QuadResult], mirrored: &[QuadResult]) -> f64 {
    values
        .iter()
        .zip(mirrored)
        .map(|(v, m)| (v.value - m.value).abs())
        .fold(0.0, f64::max)
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Table {
            alpha,
            a,
            max_degree,
            format,
            out,
        } => {
            let fam = three_term_q(&Params::new(alpha, a), max_degree);
            let mut w = open_out(&out)?;
            write_table(fam.polys(), format, &mut w)?;
            w.flush()?;
            Ok(0)
        }
        Command::Verify {
            suite,
            max_degree,
            trials,
            seed,
        } => {
            let suites = verify::parse_suites(&suite)?;
            let cfg = VerifyConfig {
                max_degree,
                trials: trials as usize,
                seed,
            };
            let mut failed = 0;
            let mut stdout = io::stdout().lock();
            for s in suites {
                let report = verify::run_suite(s, &cfg);
                write!(stdout, "{report}")?;
                stdout.flush()?;
                eprintln!(
                    "suite {}: {:.3} s",
                    report.suite,
                    report.wall_time.as_secs_f64()
                );
                failed += report.failures.len();
            }
            writeln!(stdout, "total failures: {failed}")?;
            Ok(if failed == 0 { 0 } else { EXIT_FAILURES })
        }
        Command::Ortho {
            alpha,
            a,
            mu,
            nu,
            half_power,
        } => {
            let r = quad::ortho_integral(&Params::new(alpha, a), mu, nu, half_power)?;
            println!(
                "value={} error_estimate={} nodes={}",
                quad::format_float(r.value),
                quad::format_float(r.abs_error_estimate),
                r.nodes_used
            );
            Ok(0)
        }
        Command::Scan {
            kind,
            alpha,
            a,
            y_min,
            y_max,
            steps,
            out,
        } => {
            let params = Params::new(alpha, a.clone());
            let ys = quad::y_grid(y_min, y_max, steps as usize);
            let mirror: Vec<f64> = ys.iter().map(|y| -y).collect();
            let run_scan = |grid: &[f64]| match kind {
                ScanKind::I0 => quad::i0_scan(&a, grid),
                ScanKind::I1 => quad::i1_scan(&params, grid),
                ScanKind::I => quad::i_scan(&params, grid),
            };
            let values = run_scan(&ys)?;
            let mirrored = run_scan(&mirror)?;

            let mut summary = Vec::new();
            if kind == ScanKind::I0 {
                let reference = quad::i0_reference(to_f64(&a))?;
                let dev = values
                    .iter()
                    .map(|r| (r.value - reference).abs())
                    .fold(0.0, f64::max);
                summary.push(format!("reference={}", quad::format_float(reference)));
                summary.push(format!("max_deviation={}", quad::format_float(dev)));
            }
            summary.push(format!(
                "max_asymmetry={}",
                quad::format_float(max_asymmetry(&values, &mirrored))
            ));
            if kind != ScanKind::I0 && params.alpha == int(0) {
                summary.push("alpha=0: even in y".to_string());
            }

            let to_stdout = out.is_none();
            let w = open_out(&out)?;
            quad::write_scan_csv(w, &ys, &values)?;
            for line in summary {
                if to_stdout {
                    eprintln!("{line}");
                } else {
                    println!("{line}");
                }
            }
            Ok(0)
        }
    }
}

fn exit_code(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if cause.is::<io::Error>() {
            return EXIT_IO;
        }
        if let Some(e) = cause.downcast_ref::<csv::Error>() {
            return if e.is_io_error() {
                EXIT_IO
            } else {
                EXIT_DOMAIN
            };
        }
        if cause.is::<serde_json::Error>() {
            return EXIT_IO;
        }
        if cause.is::<romanovski::Error>() {
            return EXIT_DOMAIN;
        }
    }
    EXIT_FAILURES
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = verify::init_workers_from_env() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
