// `!(x > 0.0)`-style guards reject NaN along with the out-of-range values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use tauberian_cli::{exit, grid, logging, output, verify};
use tauberian_core::closure::{check_concat_closure, check_shift_closure};
use tauberian_core::systems::system_by_name;
use tauberian_core::tauberian::{sweep, ScheduleKind};
use tauberian_core::value::{value_discounted, value_time};
use tauberian_core::ControlSystem;

/// Cesàro and Abel value functions of abstract control systems: verify the
/// built-in numbers, query values, sweep the limits, and check closure of
/// the feasible set.
#[derive(Parser)]
#[command(name = "tauberian", version, about, max_term_width = 100)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full verification battery and print a pass/fail table.
    VerifyPaper(VerifyArgs),
    /// Evaluate one value function at a state.
    Value(ValueArgs),
    /// Sweep both value functions over schedules and render the verdict.
    Sweep(SweepArgs),
    /// Run both closure checks and print the reports.
    Closure(ClosureArgs),
}

#[derive(Args)]
struct VerifyArgs {
    /// Built-in system to verify.
    #[arg(long, default_value = "paper")]
    system: String,
    /// Value-function tolerance.
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
    /// Seed for the closure checks.
    #[arg(long, default_value_t = 7)]
    seed: u64,
    /// Sample count for the closure checks.
    #[arg(long, default_value_t = 500)]
    n: usize,
}

#[derive(Args)]
struct ValueArgs {
    /// Built-in system.
    #[arg(long, default_value = "paper")]
    system: String,
    /// State, comma-separated coordinates.
    #[arg(long)]
    state: String,
    /// Time horizon (exclusive with --lambda).
    #[arg(long = "T")]
    t_horizon: Option<f64>,
    /// Discount rate (exclusive with --T).
    #[arg(long)]
    lambda: Option<f64>,
    /// Minimization tolerance.
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
    /// Output format; omit for human-readable text.
    #[arg(long)]
    format: Option<Format>,
}

#[derive(Args)]
struct SweepArgs {
    /// Built-in system.
    #[arg(long, default_value = "paper")]
    system: String,
    /// Single state overriding the preset witness set.
    #[arg(long)]
    state: Option<String>,
    /// Horizon grid start:ratio:count (multiplies by ratio).
    #[arg(long = "T-grid")]
    t_grid: Option<String>,
    /// Discount grid start:ratio:count (divides by ratio).
    #[arg(long = "lambda-grid")]
    lambda_grid: Option<String>,
    /// Value-function tolerance; defaults to the system preset.
    #[arg(long)]
    tol: Option<f64>,
    /// Write the report to this path instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Output format.
    #[arg(long, default_value = "csv")]
    format: Format,
}

#[derive(Args)]
struct ClosureArgs {
    /// Built-in system.
    #[arg(long, default_value = "paper")]
    system: String,
    /// Sampling seed.
    #[arg(long, default_value_t = 7)]
    seed: u64,
    /// Number of sampled generator processes per check.
    #[arg(long, default_value_t = 500)]
    n: usize,
    /// Write the report to this path instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Output format; omit for human-readable text.
    #[arg(long)]
    format: Option<Format>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::VerifyPaper(args) => cmd_verify(&args),
        Command::Value(args) => cmd_value(&args),
        Command::Sweep(args) => cmd_sweep(&args),
        Command::Closure(args) => cmd_closure(&args),
    };
    ExitCode::from(code as u8)
}

fn usage_error(message: &str) -> i32 {
    eprintln!("error: {message}");
    exit::USAGE
}

fn load_system(name: &str) -> Result<ControlSystem, i32> {
    system_by_name(name)
        .ok_or_else(|| usage_error(&format!("unknown system `{name}` (expected paper or sanity)")))
}

fn cmd_verify(args: &VerifyArgs) -> i32 {
    if !(args.tol > 0.0) {
        return usage_error("--tol must be positive");
    }
    let Some(checks) = verify::run_battery(&args.system, args.tol, args.seed, args.n) else {
        return usage_error(&format!(
            "unknown system `{}` (expected paper or sanity)",
            args.system
        ));
    };
    let (table, all_pass) = verify::render_table(&checks);
    print!("{table}");
    if all_pass {
        exit::OK
    } else {
        exit::FAILURE
    }
}

fn cmd_value(args: &ValueArgs) -> i32 {
    let system = match load_system(&args.system) {
        Ok(system) => system,
        Err(code) => return code,
    };
    let state = match grid::parse_state(&args.state, system.state_dim()) {
        Ok(state) => state,
        Err(message) => return usage_error(&message),
    };
    let (kind, horizon) = match (args.t_horizon, args.lambda) {
        (Some(t), None) => (ScheduleKind::Time, t),
        (None, Some(l)) => (ScheduleKind::Discount, l),
        _ => return usage_error("pass exactly one of --T or --lambda"),
    };
    if args.format == Some(Format::Csv) {
        return usage_error("value supports only json output (or omit --format for text)");
    }
    logging::info(format!(
        "evaluating {} value at {state} on system {}",
        if kind == ScheduleKind::Time { "time" } else { "discounted" },
        system.name()
    ));
    let result = match kind {
        ScheduleKind::Time => value_time(&system, &state, horizon, args.tol),
        ScheduleKind::Discount => value_discounted(&system, &state, horizon, args.tol),
    };
    match result {
        Ok(result) => {
            if args.format == Some(Format::Json) {
                let doc = output::value_json(system.name(), &state, kind, horizon, &result);
                println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
            } else {
                print!("{}", output::value_text(&result));
            }
            exit::OK
        }
        Err(err) => {
            eprintln!("error: {err}");
            exit::FAILURE
        }
    }
}

fn cmd_sweep(args: &SweepArgs) -> i32 {
    let system = match load_system(&args.system) {
        Ok(system) => system,
        Err(code) => return code,
    };
    let preset = grid::preset(&args.system).expect("every built-in system has a preset");
    let states = match &args.state {
        Some(text) => match grid::parse_state(text, system.state_dim()) {
            Ok(state) => vec![state],
            Err(message) => return usage_error(&message),
        },
        None => preset.states.clone(),
    };
    let time_spec = match &args.t_grid {
        Some(text) => match grid::GridSpec::parse(text) {
            Ok(spec) => spec,
            Err(message) => return usage_error(&message),
        },
        None => preset.time_grid,
    };
    let discount_spec = match &args.lambda_grid {
        Some(text) => match grid::GridSpec::parse(text) {
            Ok(spec) => spec,
            Err(message) => return usage_error(&message),
        },
        None => preset.discount_grid,
    };
    let time_schedule = match time_spec.schedule(ScheduleKind::Time) {
        Ok(schedule) => schedule,
        Err(message) => return usage_error(&message),
    };
    let discount_schedule = match discount_spec.schedule(ScheduleKind::Discount) {
        Ok(schedule) => schedule,
        Err(message) => return usage_error(&message),
    };
    let tol = args.tol.unwrap_or(preset.tol);
    if !(tol > 0.0) {
        return usage_error("--tol must be positive");
    }

    logging::info(format!(
        "sweeping {} states x ({} + {}) horizons on system {}",
        states.len(),
        time_schedule.points().len(),
        discount_schedule.points().len(),
        system.name()
    ));
    let report = match sweep(&system, &states, &time_schedule, &discount_schedule, tol) {
        Ok(report) => report,
        Err(err) => {
            eprintln!("error: {err}");
            return exit::FAILURE;
        }
    };

    let summary = output::sweep_summary(system.name(), tol, &report);
    let artifact = match args.format {
        Format::Csv => output::sweep_csv(&report),
        Format::Json => {
            let doc = output::SweepJson {
                summary,
                rows: output::sweep_rows(&report),
            };
            let mut text = serde_json::to_string_pretty(&doc).expect("serializable");
            text.push('\n');
            text
        }
    };

    match &args.out {
        Some(path) => {
            if let Err(err) = fs::write(path, artifact.as_bytes()) {
                eprintln!("error: cannot write {}: {err}", path.display());
                return exit::FAILURE;
            }
            if args.format == Format::Csv {
                // The CSV went to the file; the summary is still wanted on
                // stdout for scripting.
                let summary = output::sweep_summary(system.name(), tol, &report);
                println!(
                    "{}",
                    serde_json::to_string_pretty(&summary).expect("serializable")
                );
            }
        }
        None => {
            print!("{artifact}");
            let _ = std::io::stdout().flush();
        }
    }
    eprintln!("{}", output::verdict_line(&report));
    exit::OK
}

fn cmd_closure(args: &ClosureArgs) -> i32 {
    let system = match load_system(&args.system) {
        Ok(system) => system,
        Err(code) => return code,
    };
    if args.n == 0 {
        return usage_error("--n must be at least 1");
    }
    logging::info(format!(
        "closure checks on system {} (seed {}, n {})",
        system.name(),
        args.seed,
        args.n
    ));
    let concat = check_concat_closure(&system, args.seed, args.n);
    let shift = check_shift_closure(&system, args.seed, args.n);

    let artifact = match args.format {
        Some(Format::Json) => {
            let doc = output::ClosureJson {
                system: system.name().to_string(),
                seed: args.seed,
                n: args.n,
                concatenation: output::closure_report_json(&concat),
                shift: output::closure_report_json(&shift),
            };
            let mut text = serde_json::to_string_pretty(&doc).expect("serializable");
            text.push('\n');
            text
        }
        Some(Format::Csv) => {
            return usage_error("closure supports only json output (or omit --format for text)")
        }
        None => format!(
            "{}{}",
            output::closure_text(&concat),
            output::closure_text(&shift)
        ),
    };

    match &args.out {
        Some(path) => {
            if let Err(err) = fs::write(path, artifact.as_bytes()) {
                eprintln!("error: cannot write {}: {err}", path.display());
                return exit::FAILURE;
            }
        }
        None => print!("{artifact}"),
    }
    exit::OK
}
