use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use g2ein::config::{config_hash, RunConfig};
use g2ein::report::Report;
use g2ein::run::{run_fuchsian, run_solve, run_verify};

#[derive(Parser)]
#[command(name = "g2ein", version, about = "G2' geometry of Ein^{2,3} and the cyclic Hitchin system")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the algebraic, G2, Ein and Fuchsian invariant suites.
    Verify(Common),
    /// Solve one Hitchin-system instance and write its fields.
    Solve(Common),
    /// Sample developed fibers, classify sextics and tabulate the degenerate set.
    Fuchsian(Common),
}

#[derive(Args)]
struct Common {
    /// TOML configuration; defaults are used when omitted.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Overrides the seed in the configuration.
    #[arg(long)]
    seed: Option<u64>,
    /// Output directory.
    #[arg(long, default_value = "out")]
    out: PathBuf,
}

fn load(c: &Common) -> Result<(RunConfig, String), String> {
    let text = match &c.config {
        Some(p) => std::fs::read_to_string(p).map_err(|e| format!("{}: {e}", p.display()))?,
        None => String::new(),
    };
    let mut cfg = RunConfig::parse(&text).map_err(|e| e.to_string())?;
    if let Some(s) = c.seed {
        cfg.seed = s;
    }
    std::fs::create_dir_all(&c.out).map_err(|e| format!("{}: {e}", c.out.display()))?;
    Ok((cfg, config_hash(&text)))
}

fn finish(name: &str, c: &Common, rep: g2ein::Result<Report>) -> ExitCode {
    let rep = match rep {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    for ch in &rep.checks {
        println!("{} {} (value {:e}, tolerance {:e}) {}", if ch.passed { "PASS" } else { "FAIL" }, ch.name, ch.value, ch.tolerance, ch.detail);
    }
    let path = c.out.join(format!("{name}.json"));
    if let Err(e) = rep.write(&path) {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    if rep.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (name, common) = match &cli.command {
        Command::Verify(c) => ("verify", c),
        Command::Solve(c) => ("solve", c),
        Command::Fuchsian(c) => ("fuchsian", c),
    };
    let (cfg, hash) = match load(common) {
        Ok(x) => x,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let rep = match &cli.command {
        Command::Verify(_) => run_verify(&cfg, hash),
        Command::Solve(c) => run_solve(&cfg, hash, &c.out),
        Command::Fuchsian(c) => run_fuchsian(&cfg, hash, &c.out),
    };
    finish(name, common, rep)
}
