use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use horoforge_analysis::{DEFAULT_BALL_CEILING, DEFAULT_SEED};
use horoforge_cli::stats::Tables;
use horoforge_cli::{
    cmd_fsm, cmd_generate, cmd_oracle_check, cmd_stats, cmd_validate, CliError, Format, FsmArgs, GenerateArgs,
    MachineKind, OracleArgs, StatsArgs,
};
use horoforge_rips::GraphKind;

#[derive(Parser)]
#[command(
    name = "horoforge",
    version,
    about = "Horosphere graphs of hyperbolic right-angled Coxeter groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a defining graph against the standing assumptions.
    Validate { graph: PathBuf },
    /// Build one of the word machines.
    Fsm {
        graph: PathBuf,
        #[arg(long, value_enum)]
        machine: MachineKind,
        /// Ray letters `A,B`, needed by the suffix machines.
        #[arg(long)]
        ray: Option<String>,
        #[arg(long)]
        dump: Option<PathBuf>,
        #[arg(long)]
        stats: bool,
    },
    /// Generate a 2-Rips graph on a horosphere.
    Rips(GenerateCmd),
    /// Generate a divergence graph on a horosphere.
    Divergence {
        #[command(flatten)]
        common: GenerateCmd,
        /// Keep vertices whose lex state is small.
        #[arg(long)]
        allow_small_states: bool,
    },
    /// Metrics of an exported JSON graph.
    Stats {
        input: PathBuf,
        #[arg(long)]
        growth: bool,
        #[arg(long)]
        distortion: bool,
        #[arg(long)]
        connectivity: bool,
        /// Directory receiving growth.csv, distortion.csv and bfs.csv.
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Compare a generated graph with the brute-force oracles.
    OracleCheck {
        graph: PathBuf,
        #[arg(long)]
        ray: String,
        #[arg(long, allow_negative_numbers = true)]
        busemann: i64,
        #[arg(long)]
        max_suffix: usize,
        #[arg(long, value_enum)]
        kind: KindArg,
        /// Successor depth for the divergence oracle.
        #[arg(long, default_value_t = 8)]
        depth: usize,
        /// Use the exact divergence oracle instead of the depth-limited one.
        #[arg(long)]
        exact: bool,
        #[arg(long)]
        allow_small_states: bool,
        #[arg(long, default_value_t = DEFAULT_BALL_CEILING)]
        ceiling: usize,
    },
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum KindArg {
    Rips,
    Divergence,
}

#[derive(Args)]
struct GenerateCmd {
    graph: PathBuf,
    #[arg(long)]
    ray: String,
    #[arg(long, allow_negative_numbers = true)]
    busemann: i64,
    #[arg(long)]
    max_suffix: usize,
    #[arg(long)]
    out: PathBuf,
    #[arg(long, value_enum, default_value = "graphml")]
    format: Format,
    #[arg(long)]
    threads: Option<usize>,
    /// Keep only the first N suffixes in (length, word) order.
    #[arg(long)]
    vertex_cap: Option<usize>,
}

impl GenerateCmd {
    fn args(&self, allow_small_states: bool) -> GenerateArgs {
        GenerateArgs {
            graph: self.graph.clone(),
            ray: self.ray.clone(),
            busemann: self.busemann,
            max_suffix: self.max_suffix,
            threads: self.threads,
            vertex_cap: self.vertex_cap,
            allow_small_states,
        }
    }
}

fn run(cli: Cli) -> Result<String, CliError> {
    match cli.command {
        Command::Validate { graph } => cmd_validate(&graph),
        Command::Fsm {
            graph,
            machine,
            ray,
            dump,
            stats,
        } => cmd_fsm(&FsmArgs {
            graph,
            machine,
            ray,
            dump,
            stats,
        }),
        Command::Rips(c) => cmd_generate(GraphKind::Rips2, &c.args(false), &c.out, c.format),
        Command::Divergence {
            common,
            allow_small_states,
        } => cmd_generate(
            GraphKind::Divergence,
            &common.args(allow_small_states),
            &common.out,
            common.format,
        ),
        Command::Stats {
            input,
            growth,
            distortion,
            connectivity,
            csv,
            seed,
        } => cmd_stats(&StatsArgs {
            input,
            tables: Tables {
                growth,
                distortion,
                connectivity,
            },
            csv,
            seed,
        }),
        Command::OracleCheck {
            graph,
            ray,
            busemann,
            max_suffix,
            kind,
            depth,
            exact,
            allow_small_states,
            ceiling,
        } => cmd_oracle_check(&OracleArgs {
            graph,
            ray,
            busemann,
            max_suffix,
            kind: match kind {
                KindArg::Rips => GraphKind::Rips2,
                KindArg::Divergence => GraphKind::Divergence,
            },
            depth,
            exact,
            allow_small_states,
            ceiling,
        }),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
