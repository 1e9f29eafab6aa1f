use clap::{Args, Parser, Subcommand};
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use weylcheck::catalog::{catalog, find};
use weylcheck::config::{ConfigError, Geometry};
use weylcheck::runner::{self, RunDocument, RunError, RunOptions, TASKS};

#[derive(Parser)]
#[command(name = "weylcheck", version, about = "Check harmonic morphisms and twistorial maps between Weyl spaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run checks on a geometry file.
    Check {
        file: PathBuf,
        /// Task to run; repeatable. Defaults to `[run] tasks` of the file.
        #[arg(long = "task", value_name = "NAME")]
        tasks: Vec<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Built-in example geometries.
    Examples {
        #[command(subcommand)]
        action: ExamplesAction,
    },
    /// Raw residual of one identity
    /// (chain | trace-b | fundamental | lemma34 | lemma55 | eq13 | eq41 | eq42).
    Identity {
        name: String,
        file: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// List the registered tasks.
    Tasks,
}

#[derive(Subcommand)]
enum ExamplesAction {
    /// List catalog entries.
    List,
    /// Print a catalog entry as a geometry file.
    Emit {
        name: String,
        /// Write to this path instead of standard output.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
}

#[derive(Args)]
struct Common {
    #[arg(long)]
    points: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    tol: Option<f64>,
    /// Override the chart orientation (+1 or -1).
    #[arg(long, allow_hyphen_values = true, value_parser = parse_orientation)]
    orientation: Option<i8>,
    /// Worker threads (0: all cores).
    #[arg(long)]
    jobs: Option<usize>,
    /// Emit the JSON report instead of a table.
    #[arg(long)]
    json: bool,
}

fn parse_orientation(s: &str) -> Result<i8, String> {
    match s {
        "+1" | "1" | "+" => Ok(1),
        "-1" | "-" => Ok(-1),
        _ => Err(format!("orientation must be +1 or -1, got `{s}`")),
    }
}

impl Common {
    fn options(&self, tasks: Vec<String>) -> RunOptions {
        RunOptions {
            tasks,
            points: self.points,
            seed: self.seed,
            tol: self.tol,
            orientation: self.orientation,
            jobs: self.jobs,
        }
    }
}

fn load(file: &Path) -> Result<Geometry, ExitCode> {
    Geometry::load(file).map_err(|e| {
        eprintln!("error: {e}");
        ExitCode::from(match e {
            ConfigError::Geometry(_) => 3,
            _ => 2,
        })
    })
}

fn finish(result: Result<RunDocument, RunError>, json: bool) -> ExitCode {
    match result {
        Ok(doc) => {
            if json {
                println!("{}", doc.to_json());
            } else {
                print!("{}", doc.to_table());
            }
            ExitCode::from(doc.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Check { file, tasks, common } => {
            let g = match load(&file) {
                Ok(g) => g,
                Err(code) => return code,
            };
            finish(runner::run(&g, &common.options(tasks)), common.json)
        }
        Command::Identity { name, file, common } => {
            let g = match load(&file) {
                Ok(g) => g,
                Err(code) => return code,
            };
            finish(runner::identity(&name, &g, &common.options(Vec::new())), common.json)
        }
        Command::Tasks => {
            for (name, about) in TASKS {
                println!("{name:<18} {about}");
            }
            ExitCode::SUCCESS
        }
        Command::Examples { action: ExamplesAction::List } => {
            for e in catalog() {
                println!("{:<28} {}", e.name, e.summary);
            }
            ExitCode::SUCCESS
        }
        Command::Examples { action: ExamplesAction::Emit { name, output } } => {
            let Some(entry) = find(&name) else {
                eprintln!("error: no catalog entry `{name}`; see `weylcheck examples list`");
                return ExitCode::from(2);
            };
            let written = match output {
                Some(path) => std::fs::write(&path, entry.config),
                None => std::io::stdout().write_all(entry.config.as_bytes()),
            };
            match written {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(1)
                }
            }
        }
    }
}
