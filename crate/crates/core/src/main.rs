use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use grover_dephasing::harness::{self, output, Format, Mode, ResultRow, SweepConfig};
use grover_dephasing::oracle::{self, DEFAULT_ENTANGLEMENT_TOL};
use grover_dephasing::{Error, Result};

#[derive(Parser)]
#[command(version, about = "Coherent versus dephased Grover amplification")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Coherent Grover iteration.
    Quantum(PointArgs),
    /// Grover iteration with complete a-b dephasing after every step.
    Classical(PointArgs),
    /// Analog two-level search model with x = 1/sqrt(N), E dt = 1.
    Analog {
        #[command(flatten)]
        point: PointArgs,
        /// Dephase after every time step.
        #[arg(long)]
        dephased: bool,
    },
    /// First threshold crossing over a list of sizes, with a log-log fit.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        /// Overrides `output_path` from the config.
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long)]
        format: Option<String>,
        /// Evaluate sizes one after another instead of in parallel.
        #[arg(long)]
        serial: bool,
    },
    /// Single-qubit purities of the Grover iterates for N = 2^n.
    Entangle {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Cross-checks closed forms against the brute-force oracle.
    Validate {
        /// Largest problem size (at most 4096).
        #[arg(long, default_value_t = 1024)]
        n: usize,
        #[command(flatten)]
        out: OutArgs,
    },
}

#[derive(Args)]
struct PointArgs {
    #[arg(long)]
    n: u64,
    /// Number of steps; defaults to the first threshold crossing k*.
    #[arg(long)]
    k: Option<u64>,
    #[arg(long)]
    threshold: Option<f64>,
    /// Search cap for k* (default 64 N).
    #[arg(long)]
    max_steps: Option<u64>,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Args)]
struct OutArgs {
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long)]
    format: Option<String>,
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Verification { .. } => 1,
        Error::Io { .. } | Error::Serialize(_) => 3,
        _ => 2,
    }
}

fn resolve_format(format: Option<&str>, path: Option<&Path>) -> Result<Format> {
    match format {
        Some(f) => f.parse(),
        None => Ok(match path.and_then(|p| p.extension()).and_then(|e| e.to_str()) {
            Some("json") => Format::Json,
            _ => Format::Csv,
        }),
    }
}

fn io_err(path: &Path) -> impl FnOnce(io::Error) -> Error + '_ {
    move |source| Error::Io {
        path: path.to_path_buf(),
        source,
    }
}

/// Writes to `path`, or to stdout when none is given.
fn emit(path: Option<&Path>, body: impl FnOnce(&mut dyn Write) -> Result<()>) -> Result<()> {
    match path {
        Some(p) => {
            let mut w = BufWriter::new(File::create(p).map_err(io_err(p))?);
            body(&mut w)?;
            w.flush().map_err(io_err(p))
        }
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            body(&mut lock)?;
            lock.flush().map_err(io_err(Path::new("<stdout>")))
        }
    }
}

fn run_point(mode: Mode, args: &PointArgs) -> Result<bool> {
    let threshold = args.threshold.unwrap_or(mode.default_threshold());
    let max_steps = args.max_steps.unwrap_or(args.n.saturating_mul(64));
    let probe = SweepConfig {
        sizes: vec![args.n],
        mode,
        threshold,
        max_steps,
        output_path: PathBuf::new(),
        seed: 0,
    };
    probe.validate()?;
    let point = harness::find_k_star(mode, args.n, threshold, max_steps)?;
    let mut row = ResultRow::from_point(mode, threshold, max_steps, &point);
    if let Some(k) = args.k {
        row.k = k;
        row.p_success = harness::mode_probability(mode, args.n, k)?;
    }
    let path = args.out.output.as_deref();
    let format = resolve_format(args.out.format.as_deref(), path)?;
    emit(path, |w| output::write_rows(&[row], format, w))?;
    Ok(true)
}

fn run_sweep(config: &Path, output_override: Option<PathBuf>, format: Option<&str>, serial: bool) -> Result<bool> {
    let mut config = SweepConfig::from_json_file(config)?;
    if let Some(p) = output_override {
        config.output_path = p;
    }
    let format = resolve_format(format, Some(&config.output_path))?;
    let points = harness::run_sweep(&config, !serial)?;
    let rows: Vec<ResultRow> = points
        .iter()
        .map(|p| ResultRow::from_point(config.mode, config.threshold, config.max_steps, p))
        .collect();
    emit(Some(&config.output_path), |w| output::write_rows(&rows, format, w))?;
    match harness::fit_scaling(&points) {
        Ok(fit) => eprintln!(
            "fit: slope {:.6} intercept {:.6} r^2 {:.6} ({} points, {} excluded)",
            fit.slope, fit.intercept, fit.r_squared, fit.n_points, fit.excluded
        ),
        Err(e) => eprintln!("fit skipped: {e}"),
    }
    Ok(true)
}

fn run_entangle(n: usize, out: &OutArgs) -> Result<bool> {
    let entries = oracle::entanglement_scan(n, DEFAULT_ENTANGLEMENT_TOL)?;
    let path = out.output.as_deref();
    let format = resolve_format(out.format.as_deref(), path)?;
    emit(path, |w| output::write_scan(1u64 << n, &entries, format, w))?;
    let bad = entries.iter().filter(|e| !e.consistent()).count();
    if bad > 0 {
        eprintln!("{bad} iterates disagree with the product-state prediction");
    }
    Ok(bad == 0)
}

fn run_validate(max_n: usize, out: &OutArgs) -> Result<bool> {
    let report = harness::validate_all(max_n)?;
    let path = out.output.as_deref();
    let json = match out.format.as_deref() {
        Some("json") => true,
        Some("csv") | Some("text") => false,
        Some(other) => return Err(Error::Config(format!("unknown format `{other}`"))),
        None => path.and_then(|p| p.extension()).is_some_and(|e| e == "json"),
    };
    emit(path, |w| {
        if json {
            return output::write_json(&report, w);
        }
        let io = |source| Error::Io {
            path: "<output>".into(),
            source,
        };
        writeln!(w, "check,max_deviation,tolerance,passed").map_err(io)?;
        for c in &report.checks {
            writeln!(
                w,
                "{},{},{},{}",
                c.name,
                output::format_float(c.max_deviation),
                output::format_float(c.tolerance),
                c.passed
            )
            .map_err(io)?;
        }
        Ok(())
    })?;
    for c in report.checks.iter().filter(|c| !c.passed) {
        eprintln!("FAILED {}: {:e} > {:e}", c.name, c.max_deviation, c.tolerance);
    }
    Ok(report.passed())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Quantum(a) => run_point(Mode::Quantum, a),
        Command::Classical(a) => run_point(Mode::Classical, a),
        Command::Analog { point, dephased } => {
            let mode = if *dephased {
                Mode::AnalogDephased
            } else {
                Mode::AnalogCoherent
            };
            run_point(mode, point)
        }
        Command::Sweep {
            config,
            output,
            format,
            serial,
        } => run_sweep(config, output.clone(), format.as_deref(), *serial),
        Command::Entangle { n, out } => run_entangle(*n, out),
        Command::Validate { n, out } => run_validate(*n, out),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
