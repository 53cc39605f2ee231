use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use gme_core::families::{self, DEFAULT_N, DEFAULT_STEPS};
use gme_core::fmt::sig15;
use gme_core::roof::{self, DEFAULT_RESTARTS};
use gme_core::{measure_report, schmidt_decompose, ComplexMatrix, MeasureReport, C64};

mod statefile;

#[derive(Parser)]
#[command(name = "gme", version, about = "Three-qubit entanglement measures")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Every concurrence-based measure of a pure state.
    Measure {
        #[arg(long)]
        input: PathBuf,
        /// Also write the report as a one-row CSV.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Canonical five-term form and the local unitaries reaching it.
    Schmidt {
        #[arg(long)]
        input: PathBuf,
    },
    /// Closed-form tangle, C_AB and MPC over a p grid, as CSV.
    Family {
        #[arg(long, value_enum)]
        family: Family,
        /// W weight divisor for ghz-w-wt, q = (1 - p)/n.
        #[arg(long, default_value_t = DEFAULT_N)]
        n: u32,
        #[arg(long, default_value_t = DEFAULT_STEPS)]
        steps: usize,
        /// Output path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Randomized property suite; exits 1 if an asserted property fails.
    Props {
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
    },
    /// Numerical convex-roof tangle against the closed form.
    Roof {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        p: f64,
        #[arg(long, default_value_t = DEFAULT_N)]
        n: u32,
        /// Decomposition size; rank + 2 when omitted.
        #[arg(long)]
        m: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_RESTARTS)]
        restarts: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    GhzW,
    GhzWWt,
}

/// Failure with its process exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn parse(message: impl Into<String>) -> Self {
        Failure { code: 2, message: message.into() }
    }

    fn io(message: impl Into<String>) -> Self {
        Failure { code: 1, message: message.into() }
    }
}

impl From<gme_core::Error> for Failure {
    fn from(e: gme_core::Error) -> Self {
        let code = if e.is_numerical() { 4 } else { 3 };
        Failure { code, message: e.to_string() }
    }
}

type Outcome = Result<ExitCode, Failure>;

fn read_state(path: &Path) -> Result<gme_core::PureState3, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::parse(format!("cannot read {}: {e}", path.display())))?;
    match statefile::parse(&text) {
        Ok(f) => {
            if f.renormalized() {
                log::warn!("{}: norm {} renormalized to 1", path.display(), f.raw_norm);
            }
            Ok(f.state)
        }
        Err(e @ statefile::StateFileError::Norm { .. }) => Err(Failure { code: 3, message: e.to_string() }),
        Err(e) => Err(Failure::parse(format!("{}: {e}", path.display()))),
    }
}

fn write_file(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents).map_err(|e| Failure::io(format!("cannot write {}: {e}", path.display())))
}

fn report_csv(r: &MeasureReport) -> String {
    let mut header: Vec<&str> = MeasureReport::FIELD_NAMES.to_vec();
    header.extend(["mpc_pair", "gmc_cut"]);
    let mut row: Vec<String> = r.values().iter().map(|&v| sig15(v)).collect();
    row.push(r.mpc_pair.label().to_string());
    row.push(r.gmc_cut.cut_label().to_string());
    format!("{}\n{}\n", header.join(","), row.join(","))
}

fn measure(input: &Path, out: Option<&Path>) -> Outcome {
    let psi = read_state(input)?;
    let r = measure_report(&psi)?;
    let mut text = String::new();
    for (name, v) in r.fields() {
        writeln!(text, "{name}={}", sig15(v)).unwrap();
    }
    writeln!(text, "mpc_pair={}", r.mpc_pair.label()).unwrap();
    writeln!(text, "gmc_cut={}", r.gmc_cut.cut_label()).unwrap();
    print!("{text}");
    if let Some(path) = out {
        write_file(path, &report_csv(&r))?;
    }
    Ok(ExitCode::SUCCESS)
}

fn complex(z: C64) -> String {
    let im = sig15(z.im.abs());
    let sign = if z.im.is_sign_negative() && z.im != 0.0 { '-' } else { '+' };
    format!("{}{sign}{im}i", sig15(z.re))
}

fn matrix_line(name: &str, m: &ComplexMatrix) -> String {
    let row = |i: usize| format!("{} {}", complex(m[(i, 0)]), complex(m[(i, 1)]));
    format!("{name}={}; {}\n", row(0), row(1))
}

fn schmidt(input: &Path) -> Outcome {
    let psi = read_state(input)?;
    let (form, u) = schmidt_decompose(&psi)?;
    let mut text = String::new();
    for (i, l) in form.lambda().iter().enumerate() {
        writeln!(text, "lambda{i}={}", sig15(*l)).unwrap();
    }
    writeln!(text, "phi={}", sig15(form.phi())).unwrap();
    writeln!(text, "fidelity={}", sig15(u.apply(&psi).fidelity(&form.to_state()))).unwrap();
    text.push_str(&matrix_line("u_a", &u.u_a));
    text.push_str(&matrix_line("u_b", &u.u_b));
    text.push_str(&matrix_line("u_c", &u.u_c));
    print!("{text}");
    Ok(ExitCode::SUCCESS)
}

fn family_csv(family: Family, n: u32, steps: usize) -> Result<String, Failure> {
    let mut csv = String::from("p,tau,c_ab,mpc,branch\n");
    let mut row = |p: f64, tau: f64, c_ab: f64, mpc: f64, branch: families::Branch| {
        writeln!(csv, "{},{},{},{},{}", sig15(p), sig15(tau), sig15(c_ab), sig15(mpc), branch.label()).unwrap();
    };
    match family {
        Family::GhzW => {
            for pt in families::ghz_w_sweep(steps)? {
                row(pt.p, pt.tau, pt.c_ab, pt.mpc, pt.branch);
            }
        }
        Family::GhzWWt => {
            for pt in families::ghz_w_wt_sweep(n, steps)? {
                row(pt.p, pt.tau, pt.c_ab, pt.mpc, pt.branch);
            }
        }
    }
    Ok(csv)
}

fn family(family: Family, n: u32, steps: usize, out: Option<&Path>) -> Outcome {
    let csv = family_csv(family, n, steps)?;
    match out {
        Some(path) => write_file(path, &csv)?,
        None => print!("{csv}"),
    }
    Ok(ExitCode::SUCCESS)
}

fn props(samples: usize, seed: u64) -> Outcome {
    let report = gme_core::run_property_suite(samples, seed)?;
    print!("{}", report.render());
    Ok(if report.passed() { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn roof_cmd(family: Family, p: f64, n: u32, m: Option<usize>, restarts: usize, seed: u64) -> Outcome {
    let (name, rho, analytic) = match family {
        Family::GhzW => ("ghz-w", families::ghz_w_state(p)?, families::ghz_w_tangle(p)?),
        Family::GhzWWt => ("ghz-w-wt", families::ghz_w_wt_state(p, n)?, families::ghz_w_wt_tangle(p, n)?),
    };
    let m = match m {
        Some(m) => m,
        None => roof::rank(&rho)? + 2,
    };
    let est = roof::minimize_tangle(&rho, m, restarts, seed)?;
    if !est.converged {
        log::warn!("optimizer hit the sweep cap; estimate is the best found");
    }
    let mut text = String::new();
    writeln!(text, "family={name}").unwrap();
    writeln!(text, "p={}", sig15(p)).unwrap();
    if let Family::GhzWWt = family {
        writeln!(text, "n={n}").unwrap();
    }
    writeln!(text, "m={m}").unwrap();
    writeln!(text, "restarts={restarts}").unwrap();
    writeln!(text, "seed={seed}").unwrap();
    writeln!(text, "estimate={}", sig15(est.estimate)).unwrap();
    writeln!(text, "analytic={}", sig15(analytic)).unwrap();
    writeln!(text, "gap={}", sig15((est.estimate - analytic).abs())).unwrap();
    writeln!(text, "residual={}", sig15(est.best.residual)).unwrap();
    writeln!(text, "converged={}", est.converged).unwrap();
    writeln!(text, "sweeps={}", est.sweeps).unwrap();
    print!("{text}");
    Ok(ExitCode::SUCCESS)
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Measure { input, out } => measure(&input, out.as_deref()),
        Command::Schmidt { input } => schmidt(&input),
        Command::Family { family: f, n, steps, out } => family(f, n, steps, out.as_deref()),
        Command::Props { samples, seed } => props(samples, seed),
        Command::Roof { family, p, n, m, restarts, seed } => roof_cmd(family, p, n, m, restarts, seed),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
