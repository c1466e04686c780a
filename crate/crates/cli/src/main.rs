use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use unruh_otto::sweep::{
    cycle_from_config_str, emit_csv, format_value, presets, run_sweep_parallel,
    spec_from_config_str,
};
use unruh_otto::{
    efficiency, response, response_extrapolated, stroke_ledger, CycleConfig, Error, QuadratureSpec,
    ResponseQuery,
};

/// Circular-motion Unruh quantum Otto engine.
#[derive(Debug, Parser)]
#[command(name = "unruh-otto", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate the response function F(E, T) once.
    Response {
        /// Signed energy gap; negative for de-excitation.
        #[arg(long, allow_hyphen_values = true)]
        energy: f64,
        /// Switching timescale T.
        #[arg(long)]
        duration: f64,
        /// Proper acceleration a.
        #[arg(long)]
        accel: f64,
        /// Also print the quadrature estimate.
        #[arg(long)]
        oracle: bool,
    },
    /// Print the stroke-by-stroke ledger of one cycle.
    Cycle(CycleArgs),
    /// Run a parameter sweep and write CSV.
    Sweep(SweepArgs),
}

#[derive(Debug, Args)]
struct CycleArgs {
    /// Key-value config file; excludes the parameter flags.
    #[arg(long, conflicts_with_all = ["v", "a_hot", "r_hot", "a_cold", "r_cold", "e1", "e2", "p"])]
    config: Option<PathBuf>,
    #[arg(long)]
    v: Option<f64>,
    #[arg(long, conflicts_with = "r_hot")]
    a_hot: Option<f64>,
    #[arg(long)]
    r_hot: Option<f64>,
    #[arg(long, conflicts_with = "r_cold")]
    a_cold: Option<f64>,
    #[arg(long)]
    r_cold: Option<f64>,
    #[arg(long, default_value_t = 1.0)]
    e1: f64,
    #[arg(long)]
    e2: Option<f64>,
    /// Fixed ground-state excitation probability; defaults to the cyclic value.
    #[arg(long)]
    p: Option<f64>,
}

#[derive(Debug, Args)]
struct SweepArgs {
    #[arg(long, conflicts_with = "config", required_unless_present = "config")]
    preset: Option<String>,
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    out: PathBuf,
    /// Cross-check every 10th grid point against the quadrature.
    #[arg(long)]
    oracle_check: bool,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Pin the hot switching timescale instead of coupling it to the motion.
    #[arg(long = "decoupled-T")]
    decoupled_t: Option<f64>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_config() || matches!(e, Error::Io(_)) {
                ExitCode::from(1)
            } else {
                ExitCode::from(2)
            }
        }
    }
}

fn run(command: Command) -> unruh_otto::Result<()> {
    match command {
        Command::Response {
            energy,
            duration,
            accel,
            oracle,
        } => {
            let q = ResponseQuery::new(energy, duration, accel)?;
            let closed = response(energy, duration, accel)?;
            println!("F = {}", format_value(closed));
            if oracle {
                let ex = response_extrapolated(&q, &QuadratureSpec::default())?;
                println!("oracle = {} +- {:.3e}", format_value(ex.value), ex.error);
                println!(
                    "relative deviation = {:.3e}",
                    (closed - ex.value).abs() / ex.value.abs()
                );
            }
            Ok(())
        }
        Command::Cycle(args) => {
            let config = cycle_config(args)?;
            print_ledger(&config)
        }
        Command::Sweep(args) => {
            let mut spec = match (&args.preset, &args.config) {
                (Some(name), _) => presets::preset(name)?,
                (None, Some(path)) => spec_from_config_str(&fs::read_to_string(path)?)?,
                (None, None) => unreachable!("clap requires one of --preset and --config"),
            };
            if args.oracle_check {
                spec.oracle_check = true;
            }
            if args.decoupled_t.is_some() {
                spec.decoupled_duration = args.decoupled_t;
            }
            spec.validate()?;
            let rows = run_sweep_parallel(&spec, args.jobs)?;
            emit_csv(&spec.header(), &rows, &args.out)?;
            if let Some(worst) = rows
                .iter()
                .filter_map(|r| r.oracle_deviation)
                .reduce(f64::max)
            {
                eprintln!("largest oracle deviation: {worst:.3e}");
            }
            Ok(())
        }
    }
}

fn cycle_config(args: CycleArgs) -> unruh_otto::Result<CycleConfig> {
    if let Some(path) = args.config {
        return cycle_from_config_str(&fs::read_to_string(path)?);
    }
    let missing = |what: &str| Error::Config(format!("missing --{what} (or use --config)"));
    let v = args.v.ok_or_else(|| missing("v"))?;
    let e2 = args.e2.ok_or_else(|| missing("e2"))?;
    let config = match (args.a_hot, args.r_hot, args.a_cold, args.r_cold) {
        (Some(ah), None, Some(ac), None) => {
            CycleConfig::from_accelerations(v, ah, ac, args.e1, e2)?
        }
        (None, Some(rh), None, Some(rc)) => CycleConfig::from_radii(v, rh, rc, args.e1, e2)?,
        _ => {
            return Err(Error::Config(
                "give --a-hot with --a-cold, or --r-hot with --r-cold".into(),
            ))
        }
    };
    match args.p {
        Some(p) => config.with_population(p),
        None => Ok(config),
    }
}

fn print_ledger(config: &CycleConfig) -> unruh_otto::Result<()> {
    let p = config.effective_population()?;
    let ledger = stroke_ledger(config, p)?;
    let hot = config.hot_motion();
    let cold = config.cold_motion();
    println!("gamma = {}", format_value(config.gamma()));
    println!(
        "hot:  a = {}  R = {}  T = {}",
        format_value(hot.acceleration()),
        format_value(hot.radius()),
        format_value(hot.half_circle_duration())
    );
    println!(
        "cold: a = {}  R = {}  T = {}",
        format_value(cold.acceleration()),
        format_value(cold.radius()),
        format_value(cold.half_circle_duration())
    );
    println!("p = {}", format_value(ledger.population));
    println!("delta_p_H = {}", format_value(ledger.delta_p_hot));
    let rows = [
        ("Q1", ledger.q1),
        ("W1", ledger.w1),
        ("Q2", ledger.q2),
        ("W2", ledger.w2),
        ("Q3", ledger.q3),
        ("W3", ledger.w3),
        ("Q4", ledger.q4),
        ("W4", ledger.w4),
        ("W_total", ledger.w_total),
        ("Q_total", ledger.q_total),
        ("W_ext", ledger.extracted_work()),
    ];
    for (name, value) in rows {
        println!("{name} = {}", format_value(value));
    }
    println!("efficiency = {}", format_value(efficiency(config)));
    Ok(())
}
