use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use dynbfs::harness::{self, ReplayError, ReplayMode};
use dynbfs::{generate, parse_trace, DynamicBfs, UpdateTrace};

#[derive(Parser)]
#[command(name = "dynbfs", version, about = "Dynamic BFS trace tooling")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a random update trace.
    Gen {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 32)]
        nodes: u32,
        /// Edges inserted during warm-up.
        #[arg(long, default_value_t = 64)]
        edges: u64,
        /// Mixed updates after warm-up.
        #[arg(long, default_value_t = 200)]
        ops: usize,
        #[arg(long, default_value_t = 0.5)]
        p_insert: f64,
        /// Output file; stdout when omitted.
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Replay a trace, checking the maintained state against a static BFS.
    Replay {
        #[arg(long)]
        trace: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Verify)]
        mode: Mode,
        /// JSON-lines metrics output; stdout when omitted.
        #[arg(long)]
        metrics: Option<PathBuf>,
        /// Corrupts the state after the given op, for testing failure reporting.
        #[arg(long, hide = true)]
        corrupt_after: Option<usize>,
    },
    /// Compare the dynamic engine with rebuilding after every update.
    Bench {
        #[arg(long)]
        trace: PathBuf,
        /// Print the report as JSON instead of a table.
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Verify,
    Fast,
}

enum Failure {
    Usage(String),
    Verification(String),
    Io(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Verification(_) => 2,
            Failure::Io(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Verification(m) | Failure::Io(m) => m,
        }
    }
}

fn io_failure(path: &Path, err: io::Error) -> Failure {
    Failure::Io(format!("{}: {err}", path.display()))
}

fn load(path: &Path) -> Result<UpdateTrace, Failure> {
    let text = fs::read_to_string(path).map_err(|e| io_failure(path, e))?;
    parse_trace(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn replay_failure(err: ReplayError) -> Failure {
    match err {
        ReplayError::Io(e) => Failure::Io(e.to_string()),
        other => Failure::Verification(other.to_string()),
    }
}

/// Pushes the last numbered vertex one level too deep.
fn corrupt(engine: &mut DynamicBfs) {
    let state = engine.state_mut();
    if let Some(&v) = state.order().last() {
        let level = state.level(v).unwrap_or_default();
        let _ = state.tree.set_level(v, level + 1);
    }
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Gen {
            seed,
            nodes,
            edges,
            ops,
            p_insert,
            trace,
        } => {
            let generated = generate(seed, nodes, edges, ops, p_insert)
                .map_err(|e| Failure::Usage(e.to_string()))?;
            let text = generated.to_string();
            match trace {
                Some(path) => fs::write(&path, text).map_err(|e| io_failure(&path, e)),
                None => io::stdout()
                    .write_all(text.as_bytes())
                    .map_err(|e| Failure::Io(e.to_string())),
            }
        }
        Command::Replay {
            trace,
            mode,
            metrics,
            corrupt_after,
        } => {
            let loaded = load(&trace)?;
            let mode = match mode {
                Mode::Verify => ReplayMode::Verify,
                Mode::Fast => ReplayMode::Fast,
            };
            let mut sink: Box<dyn Write> = match &metrics {
                Some(path) => Box::new(BufWriter::new(
                    File::create(path).map_err(|e| io_failure(path, e))?,
                )),
                None => Box::new(BufWriter::new(io::stdout().lock())),
            };
            let result = harness::replay_with(&loaded, mode, &mut sink, |op, engine| {
                if Some(op) == corrupt_after {
                    corrupt(engine);
                }
            });
            sink.flush().map_err(|e| Failure::Io(e.to_string()))?;
            let summary = result.map_err(replay_failure)?;
            eprintln!(
                "replayed {} ops, {} checks passed, {} vertices touched",
                summary.ops, summary.checks, summary.totals.vertices_touched
            );
            Ok(())
        }
        Command::Bench { trace, json } => {
            let loaded = load(&trace)?;
            let report = harness::bench(&loaded).map_err(replay_failure)?;
            let text = if json {
                let mut text = serde_json::to_string_pretty(&report)
                    .map_err(|e| Failure::Io(e.to_string()))?;
                text.push('\n');
                text
            } else {
                report.table()
            };
            io::stdout()
                .write_all(text.as_bytes())
                .map_err(|e| Failure::Io(e.to_string()))?;
            if report.final_states_agree {
                Ok(())
            } else {
                Err(Failure::Verification(
                    "dynamic and recomputed levels disagree at the end of the trace".into(),
                ))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let _ = err.print();
            return if err.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {}", failure.message());
            ExitCode::from(failure.code())
        }
    }
}
