use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use sobolev_bumps::cli::{run, Command, Format, RunConfig, Spacing};

#[derive(Parser)]
#[command(name = "sobolev-bumps", version, about = "Norm-minimal bump functions for Matern kernels")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Sample the optimal bump on [0, 1.05 r]
    Profile(Common),
    /// Norm of the optimal bump over a radius grid
    Beta(Common),
    /// Fit the small-radius power law of the norm
    Scaling(Common),
    /// Optimal bump next to the Wendland bump (d=1, m=1)
    CompareWendland(Common),
    /// Representers of point evaluation in the restricted space (d=1, m=1)
    Translates(Common),
    /// Run every applicable invariant and report pass/fail
    Validate(Common),
}

#[derive(Clone, Copy, ValueEnum)]
enum SpacingArg {
    Lin,
    Log,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Args)]
struct Common {
    #[arg(long, default_value_t = 1)]
    d: usize,
    #[arg(long, default_value_t = 1.0)]
    m: f64,
    #[arg(long, default_value_t = 1.0)]
    r: f64,
    #[arg(long, default_value_t = 1e-3)]
    r_min: f64,
    #[arg(long, default_value_t = 1.0)]
    r_max: f64,
    #[arg(long, default_value_t = 13)]
    r_count: usize,
    #[arg(long, value_enum, default_value = "log")]
    r_spacing: SpacingArg,
    #[arg(long, default_value_t = 201)]
    samples: usize,
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    #[arg(long)]
    seed: Option<u64>,
    /// csv for table commands, json for validate
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
    #[arg(long, short)]
    output: Option<PathBuf>,
    /// Comma-separated centers for translates
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    centers: Vec<f64>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (command, a) = match cli.command {
        Cmd::Profile(a) => (Command::Profile, a),
        Cmd::Beta(a) => (Command::Beta, a),
        Cmd::Scaling(a) => (Command::Scaling, a),
        Cmd::CompareWendland(a) => (Command::CompareWendland, a),
        Cmd::Translates(a) => (Command::Translates, a),
        Cmd::Validate(a) => (Command::Validate, a),
    };
    let mut cfg = RunConfig::new(command);
    cfg.d = a.d;
    cfg.m = a.m;
    cfg.r = a.r;
    cfg.r_min = a.r_min;
    cfg.r_max = a.r_max;
    cfg.r_count = a.r_count;
    cfg.r_spacing = match a.r_spacing {
        SpacingArg::Lin => Spacing::Lin,
        SpacingArg::Log => Spacing::Log,
    };
    cfg.n_samples = a.samples;
    cfg.tol = a.tol;
    if let Some(seed) = a.seed {
        cfg.seed = seed;
    }
    if let Some(f) = a.format {
        cfg.format = match f {
            FormatArg::Csv => Format::Csv,
            FormatArg::Json => Format::Json,
        };
    }
    cfg.output = a.output;
    cfg.centers = a.centers;

    let report = match run(&cfg) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("sobolev-bumps: {e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    let text = report.render(cfg.format);
    match &cfg.output {
        Some(path) => {
            if let Err(e) = std::fs::write(path, text) {
                eprintln!("sobolev-bumps: cannot write {}: {e}", path.display());
                return ExitCode::from(3);
            }
        }
        None => print!("{text}"),
    }
    for c in report.checks.iter().filter(|c| !c.pass) {
        eprintln!("check failed: {}", c.name);
    }
    ExitCode::from(report.exit_code as u8)
}
