//! Command-line front end.
//!
//! Exit codes: 0 success, 64 usage error, 65 data error, 2 I/O error.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use secgame::experiments::{
    plateau_iteration, read_scenario, run_convergence, run_sweep, write_atomic,
    write_convergence_csv, write_scenario, ScenarioFile, ScenarioSpec,
};
use secgame::solvers::{solve, Method, SolverOptions};
use secgame::Error;

pub const EXIT_OK: u8 = 0;
pub const EXIT_IO: u8 = 2;
pub const EXIT_USAGE: u8 = 64;
pub const EXIT_DATA: u8 = 65;

const VERSION: &str = concat!(env!("CARGO_PKG_VERSION"), " (prng splitmix64/top53)");

#[derive(Debug, Parser)]
#[command(name = "secgame", version = VERSION, about = "Friendly-jammer power allocation via pricing games")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Scenario files.
    Scenario {
        #[command(subcommand)]
        action: ScenarioCommand,
    },
    /// Solve a scenario and print the allocation as JSON.
    Solve(SolveArgs),
    /// Write the game solver's per-iteration sum secrecy rate as CSV.
    Converge(ConvergeArgs),
    /// Sweep channel counts and seeds, writing one CSV row per cell and method.
    Sweep(SweepArgs),
}

#[derive(Debug, Subcommand)]
enum ScenarioCommand {
    /// Generate a seeded scenario.
    Gen(GenArgs),
}

#[derive(Debug, Args)]
struct PowerArgs {
    /// Jammer power budget, watts.
    #[arg(long, default_value_t = 0.05)]
    p_total: f64,
    /// Legitimate user transmit power, watts.
    #[arg(long, default_value_t = 0.01)]
    p_s: f64,
    /// Noise power, watts.
    #[arg(long, default_value_t = 1.0)]
    sigma2: f64,
    /// Multiplier applied to uniform [0, 1) gain draws.
    #[arg(long, default_value_t = 1e4)]
    gain_scale: f64,
    /// Force g_s >= g_e on every channel.
    #[arg(long)]
    nonneg_baseline: bool,
}

impl PowerArgs {
    fn spec(&self, n_channels: usize, seed: u64) -> ScenarioSpec {
        ScenarioSpec {
            n_channels,
            seed,
            p_total_w: self.p_total,
            p_s_w: self.p_s,
            sigma2_w: self.sigma2,
            gain_scale: self.gain_scale,
            nonneg_baseline: self.nonneg_baseline,
        }
    }
}

#[derive(Debug, Args)]
struct GenArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
    #[command(flatten)]
    power: PowerArgs,
}

#[derive(Debug, Args)]
struct SolverArgs {
    /// Grid oracle resolution (steps per budget).
    #[arg(long, default_value_t = 2000)]
    resolution: usize,
    /// Projected gradient iterations.
    #[arg(long, default_value_t = 10_000)]
    pga_iters: usize,
    /// Relative budget tolerance of the expert and game solvers.
    #[arg(long, default_value_t = 1e-9)]
    budget_tol: f64,
}

impl SolverArgs {
    fn options(&self) -> SolverOptions {
        let mut opts = SolverOptions {
            grid_resolution: self.resolution,
            pga_iters: self.pga_iters,
            expert_tol: self.budget_tol,
            ..SolverOptions::default()
        };
        opts.game.budget_tol = self.budget_tol;
        opts
    }
}

#[derive(Debug, Args)]
struct SolveArgs {
    #[arg(long)]
    scenario: PathBuf,
    /// epr | expert | game | grid | pga
    #[arg(long)]
    method: Method,
    #[command(flatten)]
    solver: SolverArgs,
}

#[derive(Debug, Args)]
struct ConvergeArgs {
    #[arg(long)]
    scenario: PathBuf,
    #[arg(long)]
    out: PathBuf,
    #[arg(long, default_value_t = 1e-9)]
    budget_tol: f64,
}

#[derive(Debug, Args)]
struct SweepArgs {
    #[arg(long)]
    n_min: usize,
    #[arg(long)]
    n_max: usize,
    /// Seeds per channel count.
    #[arg(long)]
    seeds: u64,
    #[arg(long)]
    out: PathBuf,
    /// Comma-separated list of methods.
    #[arg(long, value_delimiter = ',', default_value = "epr,game,expert")]
    methods: Vec<Method>,
    /// Base seed mixed with n and the replicate index.
    #[arg(long, default_value_t = 1)]
    base_seed: u64,
    #[command(flatten)]
    power: PowerArgs,
    #[command(flatten)]
    solver: SolverArgs,
}

#[derive(Serialize)]
struct SolveOutput<'a> {
    method: Method,
    n_channels: usize,
    allocation: &'a [f64],
    sum_rate_clipped: f64,
    sum_rate_surrogate: f64,
    converged: bool,
    rounds: usize,
    final_price: Option<f64>,
    degenerate: bool,
}

fn usage(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::InvalidArgument(_) | Error::ResourceLimit { .. } => EXIT_USAGE,
        Error::Data(_) => EXIT_DATA,
        Error::Io(_) => EXIT_IO,
    }
}

pub fn run<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match execute(cli.command) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("secgame: {e}");
            exit_code(&e)
        }
    }
}

fn execute(command: Command) -> secgame::Result<()> {
    match command {
        Command::Scenario {
            action: ScenarioCommand::Gen(args),
        } => {
            if args.out.as_os_str().is_empty() {
                return Err(usage("--out must not be empty"));
            }
            let file = ScenarioFile::generated(&args.power.spec(args.n, args.seed))?;
            write_scenario(&args.out, &file)
        }
        Command::Solve(args) => {
            let scenario = read_scenario(&args.scenario)?;
            let result = solve(&scenario, args.method, &args.solver.options())?;
            let out = SolveOutput {
                method: result.method,
                n_channels: scenario.n_channels(),
                allocation: result.alloc.powers(),
                sum_rate_clipped: result.sum_rate_clipped,
                sum_rate_surrogate: result.sum_rate_surrogate,
                converged: result.converged,
                rounds: result.rounds_used,
                final_price: result.final_price,
                degenerate: result.degenerate,
            };
            println!(
                "{}",
                serde_json::to_string_pretty(&out).expect("solve output serializes")
            );
            Ok(())
        }
        Command::Converge(args) => {
            let scenario = read_scenario(&args.scenario)?;
            let config = secgame::solvers::GameConfig {
                budget_tol: args.budget_tol,
                ..Default::default()
            };
            let series = run_convergence(&scenario, &config)?;
            let mut buf = Vec::new();
            write_convergence_csv(&series, &mut buf)?;
            write_atomic(&args.out, &buf)?;
            if let Some(k) = plateau_iteration(&series, 1e-9) {
                eprintln!("{} iterations, plateau from iteration {k}", series.len());
            }
            Ok(())
        }
        Command::Sweep(args) => {
            if args.n_min == 0 || args.n_min > args.n_max {
                return Err(usage("need 1 <= --n-min <= --n-max"));
            }
            let ns: Vec<usize> = (args.n_min..=args.n_max).collect();
            let base = args.power.spec(1, args.base_seed);
            let table = run_sweep(
                &ns,
                args.seeds,
                &base,
                &args.methods,
                &args.solver.options(),
            )?;
            write_atomic(&args.out, table.to_csv_string()?.as_bytes())?;
            for note in &table.notes {
                eprintln!("note: {note}");
            }
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use secgame::experiments::PRNG_CONTRACT;

    #[test]
    fn version_names_prng_contract() {
        assert!(VERSION.contains(PRNG_CONTRACT));
        assert!(VERSION.starts_with(env!("CARGO_PKG_VERSION")));
    }

    #[test]
    fn usage_errors() {
        assert_eq!(run(["secgame"]), EXIT_USAGE);
        assert_eq!(
            run([
                "secgame",
                "solve",
                "--scenario",
                "x.json",
                "--method",
                "maddpg"
            ]),
            EXIT_USAGE
        );
        assert_eq!(run(["secgame", "scenario", "gen", "--n", "5"]), EXIT_USAGE);
        assert_eq!(run(["secgame", "--version"]), EXIT_OK);
    }
}
