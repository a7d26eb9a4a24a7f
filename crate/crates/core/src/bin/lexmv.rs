use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use lexmv::dsl::{run, RunError, RunOptions, COMMANDS};
use lexmv::perfect::WitnessKind;
use lexmv::Config;

#[derive(Parser)]
#[command(name = "lexmv", version, about = "Check pseudo MV-algebras given in a small text syntax")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run one command on an algebra and print a JSON report.
    Run {
        /// One of: check-axioms, classify, witness, lexify, ideals, radical,
        /// states, retractive, lexid, rdp2, isomorphic.
        command: String,
        /// Algebra expression, e.g. "gamma(lex(Z,Z),(2,1))".
        dsl: String,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        /// Coordinate bound for sampled group elements.
        #[arg(long)]
        bound: Option<i64>,
        /// Write the report here instead of stdout.
        #[arg(long, value_name = "FILE")]
        json: Option<PathBuf>,
        /// Finite table bound to the `table` atom.
        #[arg(long, value_name = "FILE")]
        table: Option<PathBuf>,
        #[arg(long, value_enum)]
        kind: Option<Kind>,
        /// Element literal for classify and states.
        #[arg(long)]
        elem: Option<String>,
        #[arg(long)]
        workers: Option<usize>,
        /// Include wall-clock milliseconds in the report.
        #[arg(long)]
        timing: bool,
    },
    /// List the available commands.
    Commands,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Strong,
    Weak,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.cmd {
        Cmd::Commands => {
            for c in COMMANDS {
                println!("{c}");
            }
            ExitCode::SUCCESS
        }
        Cmd::Run { command, dsl, samples, seed, bound, json, table, kind, elem, workers, timing } => {
            let mut cfg = Config::default();
            if let Some(s) = samples {
                cfg.samples = s;
            }
            if let Some(s) = seed {
                cfg.seed = s;
            }
            if let Some(b) = bound {
                cfg.bound = b;
            }
            if let Some(w) = workers {
                cfg.workers = w.max(1);
            }
            let table = match table.map(|p| fs::read_to_string(&p).map_err(|e| format!("{}: {e}", p.display()))) {
                Some(Err(e)) => return fail(&e, 2),
                Some(Ok(t)) => Some(t),
                None => None,
            };
            let kind = kind.map(|k| match k {
                Kind::Strong => WitnessKind::Strong,
                Kind::Weak => WitnessKind::Weak,
            });
            let opts = RunOptions { cfg, kind, elem, table, timing };
            match run(&command, &dsl, &opts) {
                Ok(out) => {
                    if let Some(path) = json {
                        if let Err(e) = fs::write(&path, &out.json) {
                            return fail(&format!("{}: {e}", path.display()), 2);
                        }
                    } else {
                        print!("{}", out.json);
                    }
                    ExitCode::from(out.verdict.exit_code() as u8)
                }
                Err(e) => fail(&e.to_string(), RunError::exit_code(&e)),
            }
        }
    }
}

fn fail(msg: &str, code: i32) -> ExitCode {
    eprintln!("lexmv: {msg}");
    ExitCode::from(code as u8)
}
