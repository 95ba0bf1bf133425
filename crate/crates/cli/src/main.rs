use std::io;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use frechet_cli::{cmd_decide, cmd_dist, cmd_morphing, DecideArgs, DistArgs, Mode};

#[derive(Parser)]
#[command(name = "frechet", about = "Fréchet, VE-Fréchet and sweep distances between polygonal curves")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Distance between two curve files.
    Dist {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, value_enum, default_value = "exact")]
        mode: Mode,
        /// Target upper/lower ratio for `approx`.
        #[arg(long, default_value_t = 1.1)]
        ratio: f64,
        #[arg(long, default_value_t = 100)]
        max_rounds: usize,
        /// Print the morphing report as JSON.
        #[arg(long)]
        json: bool,
        #[arg(long)]
        svg: Option<PathBuf>,
        /// Exit 0 even if the iteration cap was reached.
        #[arg(long)]
        allow_approx: bool,
    },
    /// Decide `distance <= threshold` for every line of a query file.
    Decide {
        queries: PathBuf,
        /// Directory for persisted simplification profiles.
        #[arg(long)]
        cache: Option<PathBuf>,
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Export the morphing as JSON, and optionally as SVG.
    Morphing {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, value_enum, default_value = "exact")]
        mode: Mode,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
}

fn main() {
    let cli = Cli::parse();
    let mut out = io::stdout().lock();
    let res = match cli.cmd {
        Cmd::Dist { a, b, mode, ratio, max_rounds, json, svg, allow_approx } => {
            let args = DistArgs { mode, ratio, max_rounds, json, svg, allow_approx };
            cmd_dist(&a, &b, &args, &mut out)
        }
        Cmd::Decide { queries, cache, jobs } => cmd_decide(&queries, &DecideArgs { cache, jobs }, &mut out),
        Cmd::Morphing { a, b, mode, svg } => cmd_morphing(&a, &b, mode, svg.as_deref(), &mut out),
    };
    match res {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            std::process::exit(2);
        }
    }
}
