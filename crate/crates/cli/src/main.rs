use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use qjf_cli::{run, CliError, Command, Format, RunConfig, SeriesName, SurfaceArg, YSpec, DEFAULT_T_ORDER};
use qjf_core::verify::Suite;

#[derive(Parser)]
#[command(name = "qjf", version, about = "Exact q-series for curve counts on surfaces with trivial canonical class")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Common {
    /// Output format: json, csv or text.
    #[arg(long, default_value = "text")]
    format: Format,
    /// Evaluate at y = 1 after the exact computation.
    #[arg(long)]
    y1: bool,
    /// Run on one thread.
    #[arg(long)]
    sequential: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Compute a named series.
    Series {
        /// A, K, H, X, theta, G2, Delta, phi101, tildeDelta or tildeDG2.
        #[arg(long)]
        name: SeriesName,
        #[arg(long, default_value_t = 10)]
        order: i64,
        /// t-expansion order of K.
        #[arg(long, default_value_t = DEFAULT_T_ORDER)]
        t_order: i64,
        #[command(flatten)]
        common: Common,
    },
    /// Tabulate N^i for all genera up to gmax.
    Table {
        #[arg(long)]
        surface: SurfaceArg,
        #[arg(long, default_value_t = 0)]
        k: u32,
        #[arg(long, default_value_t = 6)]
        gmax: i64,
        /// Defaults to max(24, 2 gmax + 6).
        #[arg(long)]
        t_order: Option<i64>,
        #[command(flatten)]
        common: Common,
    },
    /// N^i for a single genus.
    Ninv {
        #[arg(long)]
        surface: SurfaceArg,
        #[arg(long)]
        g: i64,
        #[arg(long, default_value_t = 0)]
        k: u32,
        /// Defaults to max(24, 2g + 6).
        #[arg(long)]
        t_order: Option<i64>,
        #[command(flatten)]
        common: Common,
    },
    /// Run the identity checks.
    Verify {
        /// all, forms, genfun, invariants or inversion.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 6)]
        order: i64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        sequential: bool,
    },
}

fn config(cmd: Cmd) -> Result<RunConfig, CliError> {
    let apply = |command, order, t_order, c: Common| RunConfig {
        command,
        order,
        t_order,
        y: if c.y1 { YSpec::One } else { YSpec::Formal },
        format: c.format,
        parallel: !c.sequential,
    };
    let window = |t: Option<i64>, g: i64| t.unwrap_or(DEFAULT_T_ORDER.max(2 * g + 6));
    Ok(match cmd {
        Cmd::Series { name, order, t_order, common } => apply(Command::Series { name }, order, t_order, common),
        Cmd::Table { surface, k, gmax, t_order, common } => {
            apply(Command::Table { surface, k, gmax }, gmax.max(1), window(t_order, gmax), common)
        }
        Cmd::Ninv { surface, g, k, t_order, common } => {
            apply(Command::Ninv { surface, g, k }, g.max(1), window(t_order, g), common)
        }
        Cmd::Verify { suite, order, seed, sequential } => {
            let suites = if suite == "all" {
                Vec::new()
            } else {
                vec![suite.parse::<Suite>().map_err(CliError::Config)?]
            };
            let mut cfg = RunConfig::new(Command::Verify { suites, seed });
            cfg.order = order;
            cfg.parallel = !sequential;
            cfg
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match config(cli.cmd).and_then(|c| run(&c)) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            if let CliError::Verification { report, .. } = &e {
                print!("{report}");
            }
            eprintln!("qjf: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
