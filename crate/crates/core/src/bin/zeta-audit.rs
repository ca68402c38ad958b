use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use zeta_audit::report::{
    cmd_audit, cmd_census, cmd_figure_data, cmd_sweep, cmd_zeros, with_threads, CommandOutput,
    FigureKind, FigureRange, RunConfig,
};
use zeta_audit::{Error, Result};

/// Zeta and xi evaluation, critical-line zero census and Littlewood-rectangle audits.
///
/// Exit codes: 0 success, 1 usage or I/O error, 2 inconsistency flagged,
/// 3 precondition violated, 4 accuracy failure.
#[derive(Parser, Debug)]
#[command(name = "zeta-audit", version)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Config file of `key = value` lines (TOML)
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Worker threads (default: all cores)
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Target absolute accuracy of function evaluations
    #[arg(long, global = true)]
    abs_tol: Option<f64>,
    /// Output file (default: standard output)
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List critical-line zeros below t_max as CSV
    Zeros {
        #[arg(long)]
        t_max: f64,
    },
    /// JSON census report: N0(T), N(T), von Mangoldt estimate, ratio
    Census {
        #[arg(short = 'T', long = "T")]
        t: f64,
    },
    /// Audit Littlewood's lemma on one rectangle (JSON)
    Audit {
        #[arg(long)]
        alpha: f64,
        #[arg(short = 'T', long = "T")]
        t: f64,
    },
    /// Audit every (alpha, T) pair; CSV unless --json
    Sweep {
        #[arg(long, value_delimiter = ',')]
        alphas: Vec<f64>,
        #[arg(long = "T-values", value_delimiter = ',')]
        t_values: Vec<f64>,
        #[arg(long)]
        json: bool,
    },
    /// Plottable series: z-trace, s-staircase or residuals
    FigureData {
        kind: String,
        #[arg(long, default_value_t = 0.0)]
        t_lo: f64,
        #[arg(long, default_value_t = 50.0)]
        t_hi: f64,
        #[arg(long, default_value_t = 0.05)]
        step: f64,
        #[arg(long, value_delimiter = ',')]
        alphas: Vec<f64>,
        #[arg(long = "T-values", value_delimiter = ',')]
        t_values: Vec<f64>,
    },
}

fn load_config(global: &Global) -> Result<RunConfig> {
    let file = match &global.config {
        Some(path) => Some(std::fs::read_to_string(path)?),
        None => None,
    };
    let mut cfg = RunConfig::load(file.as_deref(), std::env::vars())?;
    if let Some(t) = global.threads {
        cfg.threads = Some(t);
    }
    if let Some(tol) = global.abs_tol {
        cfg.eval.abs_tol = tol;
    }
    if let Some(out) = &global.out {
        cfg.out = Some(out.display().to_string());
    }
    cfg.validate()?;
    Ok(cfg)
}

fn run_command(command: &Command, cfg: &RunConfig) -> Result<CommandOutput> {
    let eval = &cfg.eval;
    match command {
        Command::Zeros { t_max } => cmd_zeros(*t_max, eval),
        Command::Census { t } => cmd_census(*t, eval),
        Command::Audit { alpha, t } => cmd_audit(*alpha, *t, eval),
        Command::Sweep { alphas, t_values, json } => {
            let alphas = if alphas.is_empty() { &cfg.alphas } else { alphas };
            let t_values = if t_values.is_empty() { &cfg.t_values } else { t_values };
            let mut check = cfg.clone();
            check.alphas = alphas.clone();
            check.t_values = t_values.clone();
            check.dedupe_t_values();
            check.validate()?;
            cmd_sweep(&check.alphas, &check.t_values, eval, *json)
        }
        Command::FigureData { kind, t_lo, t_hi, step, alphas, t_values } => {
            let kind: FigureKind = kind.parse()?;
            let range = FigureRange {
                t_lo: *t_lo,
                t_hi: *t_hi,
                step: *step,
                alphas: alphas.clone(),
                t_values: t_values.clone(),
            };
            cmd_figure_data(kind, &range, eval)
        }
    }
}

fn emit(output: &CommandOutput, out: Option<&str>) -> Result<()> {
    match out {
        Some(path) => {
            std::fs::write(path, &output.body)?;
            if let Some(summary) = &output.summary {
                println!("{summary}");
            }
        }
        None => {
            print!("{}", output.body);
            if !output.body.ends_with('\n') {
                println!();
            }
            if let Some(summary) = &output.summary {
                eprintln!("{summary}");
            }
        }
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<i32> {
    let cfg = load_config(&cli.global)?;
    let output = with_threads(cfg.threads.unwrap_or(0), || run_command(&cli.command, &cfg))??;
    emit(&output, cfg.out.as_deref())?;
    Ok(output.exit_code)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            if let Error::OrdinateCollision { gamma, .. } = e {
                eprintln!("offending zero ordinate: {gamma:.12}");
            }
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
