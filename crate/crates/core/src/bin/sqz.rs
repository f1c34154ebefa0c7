//! Command-line surface: apply squeezes to state files, emit spectra and
//! resonance tables, run the Takagi factorization on matrix files, and
//! execute the full verification suite.
//!
//! Exit codes: 0 all assertions pass, 1 numerical failure, 2 usage or
//! configuration error.

use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use squeeze_spectra::error::Error;
use squeeze_spectra::multimode::{matrix_from_json, takagi};
use squeeze_spectra::report::{report_json, run_all, TolOverrides};
use squeeze_spectra::singlemode::{apply_exact, resonant_pair};
use squeeze_spectra::spectral::{mellin_forward, MellinParams};
use squeeze_spectra::states::GridFunction;

#[derive(Parser)]
#[command(name = "sqz", about = "squeeze-operator toolkit", version)]
struct Cli {
    /// RNG seed for randomized checks; echoed into every report
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,

    /// Tolerance override as KEY=VAL, repeatable (e.g. spectral.plancherel=1e-5)
    #[arg(long = "tol-override", global = true, value_name = "KEY=VAL")]
    tol_override: Vec<String>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Run every invariant suite and write a pass/fail table
    Verify {
        /// Report JSON destination (stdout if omitted)
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Apply the squeeze S(r) to a state file
    Apply {
        #[arg(long)]
        r: f64,
        /// Squeeze phase; only 0 is supported for grid states (remove the
        /// phase by mode rotation first)
        #[arg(long, default_value_t = 0.0)]
        theta: f64,
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Emit the continuous-spectrum amplitudes of a state
    Spectrum {
        #[arg(long)]
        r: f64,
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: PathBuf,
    },
    /// Tabulate resonance energies and eigenvalue ladders for n <= n-max
    Resonances {
        #[arg(long)]
        r: f64,
        #[arg(long = "n-max", default_value_t = 10)]
        n_max: usize,
        /// Destination (stdout if omitted)
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Factor a complex symmetric matrix file as e^{-iPhi} Z e^{-iPhi^T} = Z_D
    Takagi {
        #[arg(long)]
        input: PathBuf,
        /// Result JSON destination (stdout if omitted)
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

fn parse_overrides(raw: &[String]) -> Result<TolOverrides, String> {
    let mut out = TolOverrides::new();
    for item in raw {
        let (key, val) = item
            .split_once('=')
            .ok_or_else(|| format!("tolerance override '{item}' is not KEY=VAL"))?;
        let val: f64 = val
            .parse()
            .map_err(|_| format!("tolerance override '{item}' has a non-numeric value"))?;
        if !(val >= f64::EPSILON) {
            return Err(format!(
                "tolerance override '{item}' must be at least machine epsilon"
            ));
        }
        out.insert(key.to_string(), val);
    }
    Ok(out)
}

fn sink(path: &Option<PathBuf>) -> std::io::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(std::io::stdout().lock()),
    })
}

fn read_state(path: &PathBuf) -> Result<GridFunction, Error> {
    let mut reader = BufReader::new(File::open(path)?);
    GridFunction::read_csv(&mut reader)
}

fn state_to_json(state: &GridFunction) -> serde_json::Value {
    let spec = state.spec();
    serde_json::json!({
        "x_min": spec.x_min,
        "x_max": spec.x_max,
        "n_points": spec.n_points,
        "samples": state.samples().iter().map(|c| vec![c.re, c.im]).collect::<Vec<_>>(),
    })
}

/// true = usage-class error (exit 2), false = numerical failure (exit 1)
fn is_usage_error(e: &Error) -> bool {
    matches!(
        e,
        Error::Config(_)
            | Error::Parse(_)
            | Error::Io(_)
            | Error::ShapeMismatch(_)
            | Error::Asymmetric(_)
    )
}

fn run(cli: Cli) -> Result<(), (u8, String)> {
    let overrides =
        parse_overrides(&cli.tol_override).map_err(|m| (2, m))?;
    let seed = cli.seed;
    let fail = |e: Error| -> (u8, String) {
        (if is_usage_error(&e) { 2 } else { 1 }, e.to_string())
    };
    match cli.command {
        Command::Verify { output } => {
            let records = run_all(seed, &overrides).map_err(fail)?;
            let mut failures = Vec::new();
            println!("seed = {seed}");
            println!("{:<40} {:>12} {:>12}  result", "check", "residual", "tolerance");
            for r in &records {
                let name = format!("{}.{}", r.suite, r.check);
                println!(
                    "{:<40} {:>12.3e} {:>12.3e}  {}",
                    name,
                    r.residual,
                    r.tolerance,
                    if r.pass { "pass" } else { "FAIL" }
                );
                if !r.pass {
                    failures.push(format!("{name} residual {:.3e}", r.residual));
                }
            }
            let json = report_json(seed, &records);
            let mut w = sink(&output).map_err(|e| (2u8, e.to_string()))?;
            writeln!(w, "{}", serde_json::to_string_pretty(&json).unwrap())
                .map_err(|e| (2u8, e.to_string()))?;
            if failures.is_empty() {
                Ok(())
            } else {
                Err((1, failures.join("; ")))
            }
        }
        Command::Apply { r, theta, input, output, format } => {
            if theta != 0.0 {
                return Err((
                    2,
                    "apply supports theta = 0 only; rotate the mode to remove the phase first"
                        .into(),
                ));
            }
            let state = read_state(&input).map_err(fail)?;
            let out = apply_exact(r, &state).map_err(fail)?;
            let mut w = BufWriter::new(File::create(&output).map_err(|e| (2u8, e.to_string()))?);
            match format {
                Format::Csv => out.write_csv(&mut w).map_err(fail)?,
                Format::Json => writeln!(
                    w,
                    "{}",
                    serde_json::to_string_pretty(&state_to_json(&out)).unwrap()
                )
                .map_err(|e| (2u8, e.to_string()))?,
            }
            Ok(())
        }
        Command::Spectrum { r, input, output } => {
            let state = read_state(&input).map_err(fail)?;
            let amp = mellin_forward(&state, r, &MellinParams::default()).map_err(fail)?;
            let mut w = BufWriter::new(File::create(&output).map_err(|e| (2u8, e.to_string()))?);
            amp.write_csv(&mut w).map_err(fail)?;
            Ok(())
        }
        Command::Resonances { r, n_max, output, format } => {
            let mut w = sink(&output).map_err(|e| (2u8, e.to_string()))?;
            match format {
                Format::Csv => {
                    writeln!(w, "# n,re_E_n,im_E_n,s_plus,s_minus")
                        .map_err(|e| (2u8, e.to_string()))?;
                    for n in 0..=n_max {
                        let p = resonant_pair(n, r).map_err(fail)?;
                        writeln!(
                            w,
                            "{},{:.17e},{:.17e},{:.17e},{:.17e}",
                            n, p.e_n.re, p.e_n.im, p.s_plus, p.s_minus
                        )
                        .map_err(|e| (2u8, e.to_string()))?;
                    }
                }
                Format::Json => {
                    let rows: Vec<serde_json::Value> = (0..=n_max)
                        .map(|n| resonant_pair(n, r).map(|p| p.to_json()))
                        .collect::<Result<_, _>>()
                        .map_err(fail)?;
                    writeln!(w, "{}", serde_json::to_string_pretty(&rows).unwrap())
                        .map_err(|e| (2u8, e.to_string()))?;
                }
            }
            Ok(())
        }
        Command::Takagi { input, output } => {
            let text = std::fs::read_to_string(&input).map_err(|e| (2u8, e.to_string()))?;
            let value: serde_json::Value = serde_json::from_str(&text)
                .map_err(|e| (2, format!("matrix JSON: {e}")))?;
            let z = matrix_from_json(&value).map_err(fail)?;
            let result = takagi(&z).map_err(fail)?;
            let mut w = sink(&output).map_err(|e| (2u8, e.to_string()))?;
            writeln!(w, "{}", serde_json::to_string_pretty(&result.to_json()).unwrap())
                .map_err(|e| (2u8, e.to_string()))?;
            let tol = overrides
                .get("multimode.takagi_residual")
                .copied()
                .unwrap_or(1e-10);
            if result.residual <= tol {
                Ok(())
            } else {
                Err((1, format!("takagi residual {:.3e} exceeds {:.3e}", result.residual, tol)))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err((code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
