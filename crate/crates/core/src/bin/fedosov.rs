use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use fedosov_engine::cli::{self, Command, Overrides, RawConfig, RunError};

#[derive(Parser)]
#[command(name = "fedosov", version, about = "Exact Fedosov star products and equivariant classes on R^2n")]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Subcommand)]
enum Sub {
    /// Coefficients C0..CK of f * g
    Star(Common),
    /// Quantum momentum map or its obstruction
    Momentum(Common),
    /// Characteristic class representative and projections
    Class(Common),
    /// Relative class of two pairs, with witness or obstruction
    Compare(Common),
    /// Run the invariant suite; exits 1 on any failure
    Verify {
        #[command(flatten)]
        common: Common,
        /// Witness file, or a `compare` report carrying one
        #[arg(long)]
        witness: Option<PathBuf>,
    },
}

#[derive(Args)]
struct Common {
    #[arg(long)]
    config: PathBuf,
    #[arg(long)]
    f: Option<String>,
    #[arg(long)]
    g: Option<String>,
    #[arg(long)]
    order: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    degree_bound: Option<u32>,
}

fn execute(sub: Sub) -> Result<i32, RunError> {
    let start = Instant::now();
    let (name, common, witness) = match sub {
        Sub::Star(c) => ("star", c, None),
        Sub::Momentum(c) => ("momentum", c, None),
        Sub::Class(c) => ("class", c, None),
        Sub::Compare(c) => ("compare", c, None),
        Sub::Verify { common, witness } => ("verify", common, witness),
    };
    let text = std::fs::read_to_string(&common.config).map_err(|e| cli::ConfigError {
        location: common.config.display().to_string(),
        message: e.to_string(),
    })?;
    let mut raw = RawConfig::parse(&text)?;
    Overrides {
        f: common.f,
        g: common.g,
        order: common.order,
        degree_bound: common.degree_bound,
    }
    .apply(&mut raw);
    let cfg = raw.validate()?;
    let cmd = match name {
        "star" => Command::Star,
        "momentum" => Command::Momentum,
        "class" => Command::Class,
        "compare" => Command::Compare,
        _ => Command::Verify {
            witness: witness
                .map(|p| cli::read_witness(&p, cfg.dim, cfg.order))
                .transpose()?,
        },
    };
    let report = cli::run(&cmd, &cfg)?;
    let mut json = report.json.clone();
    json["timing"] = serde_json::json!({ "elapsed_ms": start.elapsed().as_millis() as u64 });
    let rendered = cli::Report { json, passed: report.passed }.render();
    match &common.out {
        Some(path) => std::fs::write(path, rendered).map_err(|e| cli::ConfigError {
            location: path.display().to_string(),
            message: e.to_string(),
        })?,
        None => print!("{rendered}"),
    }
    Ok(report.exit_code())
}

fn main() -> ExitCode {
    let parsed = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match execute(parsed.command) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
