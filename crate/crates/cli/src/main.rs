use std::path::PathBuf;
use std::process::ExitCode;

use adgame::Outcome;
use adgame_core::SearchLimits;
use clap::{Parser, Subcommand};

/// Attacker-defender graph games: matchings, partitions and equilibria.
#[derive(Parser)]
#[command(name = "adgame", version)]
struct Cli {
    /// Vertex bound for the exact exponential searches.
    #[arg(long, global = true, value_name = "N")]
    bound: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sizes, edge cover number and regime table.
    Analyze { graph: PathBuf },
    /// A minimum edge cover.
    MinEdgeCover { graph: PathBuf },
    /// A fractional perfect matching, or NONE.
    Fpm { graph: PathBuf },
    /// Canonical form of a fractional perfect matching.
    Reduce {
        /// Matching to reduce; defaults to the one `fpm` prints.
        #[arg(long, value_name = "FILE")]
        fpm: Option<PathBuf>,
        graph: PathBuf,
    },
    /// A delta-partitionable fractional perfect matching, or NONE.
    Partition {
        #[arg(long)]
        delta: usize,
        graph: PathBuf,
    },
    /// A defense-optimal equilibrium, or NONE.
    ConstructNe {
        #[arg(long)]
        alpha: usize,
        #[arg(long)]
        delta: usize,
        /// Pure vertex-balanced equilibrium instead.
        #[arg(long)]
        pure: bool,
        graph: PathBuf,
    },
    /// Checks a profile against the equilibrium conditions.
    VerifyNe {
        #[arg(long, value_name = "FILE")]
        profile: PathBuf,
        graph: PathBuf,
    },
    /// Defender regime for a given number of defenders.
    Classify {
        #[arg(long)]
        delta: usize,
        graph: PathBuf,
    },
}

fn run(cli: Cli) -> adgame::Result<Outcome> {
    let limits = cli.bound.map(SearchLimits::uniform).unwrap_or_default();
    match cli.command {
        Command::Analyze { graph } => adgame::analyze(&adgame::load_graph(&graph)?),
        Command::MinEdgeCover { graph } => Ok(adgame::min_edge_cover(&adgame::load_graph(&graph)?)),
        Command::Fpm { graph } => Ok(adgame::fpm(&adgame::load_graph(&graph)?)),
        Command::Reduce { fpm, graph } => adgame::reduce(&adgame::load_graph(&graph)?, fpm.as_deref()),
        Command::Partition { delta, graph } => adgame::partition(&adgame::load_graph(&graph)?, delta, limits),
        Command::ConstructNe {
            alpha,
            delta,
            pure,
            graph,
        } => adgame::construct_ne(&adgame::load_graph(&graph)?, alpha, delta, pure, limits),
        Command::VerifyNe { profile, graph } => adgame::verify(&adgame::load_graph(&graph)?, &profile),
        Command::Classify { delta, graph } => adgame::classify(&adgame::load_graph(&graph)?, delta),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(outcome) => {
            print!("{}", outcome.text);
            if outcome.success {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
