use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};

use ialab_cli::config::{validate_config_str, ConfigError, Format};
use ialab_cli::{describe, emit, run_experiment};

#[derive(Parser)]
#[command(name = "ialab", version, about = "Seeded experiments for alignment, geometry and group testing")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List experiments with their parameters.
    List,
    /// Run a named experiment.
    #[command(external_subcommand)]
    Run(Vec<String>),
}

#[derive(Parser)]
#[command(name = "ialab <experiment>", no_binary_name = true)]
struct RunArgs {
    experiment: String,
    /// Config file with one `[experiment]` section; defaults apply without it.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    format: Option<Format>,
    /// Cap on worker threads.
    #[arg(long)]
    threads: Option<usize>,
}

fn config_errors(errs: Vec<ConfigError>) -> ExitCode {
    for e in errs {
        eprintln!("config error: {e}");
    }
    ExitCode::from(1)
}

fn run(args: RunArgs) -> ExitCode {
    if let Some(n) = args.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("cannot set thread count: {e}");
            return ExitCode::from(2);
        }
    }
    let text = match &args.config {
        Some(path) => match std::fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) => return config_errors(vec![ConfigError::Io(format!("{}: {e}", path.display()))]),
        },
        None => format!("[{}]\n", args.experiment),
    };
    let parsed = match &args.config {
        Some(_) => validate_config_str(&text, Some(&args.experiment), args.seed.is_some()),
        None => validate_config_str(&text, None, args.seed.is_some()),
    };
    let mut cfg = match parsed {
        Ok(cfg) => cfg,
        Err(errs) => return config_errors(errs),
    };
    if args.seed.is_some() {
        cfg.seed = args.seed;
    }
    if let Some(f) = args.format {
        cfg.format = f;
    }
    if args.out.is_some() {
        cfg.output = args.out;
    }
    let started = Instant::now();
    let result = run_experiment(&cfg).and_then(|table| emit(&table, cfg.format, cfg.output.as_deref()));
    eprintln!("wall time: {:.3} s", started.elapsed().as_secs_f64());
    match result {
        Ok(Some(text)) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Ok(None) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match cli.command {
        Command::List => {
            print!("{}", describe());
            ExitCode::SUCCESS
        }
        Command::Run(raw) => match RunArgs::try_parse_from(raw) {
            Ok(args) => run(args),
            Err(e) => {
                let code = if e.use_stderr() { 1 } else { 0 };
                let _ = e.print();
                ExitCode::from(code)
            }
        },
    }
}
