use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand};
use skew_app::harness::gallery::gallery;
use skew_app::Limits;
use skew_app_cli::replay::{replay_report, replay_status};
use skew_app_cli::{run_job, Job, Mode, Overrides, Report, RunOptions, Status};

#[derive(Parser)]
#[command(
    name = "skew-app",
    version,
    about = "Annihilator checks for skew generalized power series rings"
)]
struct Cli {
    /// Re-verify the evidence stored in a report.
    #[arg(long, value_name = "REPORT")]
    replay: Option<PathBuf>,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand)]
enum Command {
    /// Run the checks listed in a job file.
    Run {
        /// Job file of `key.path = value` lines.
        spec: PathBuf,
        /// exhaustive or sampled; by default chosen from the ring size.
        #[arg(long, value_parser = parse_mode)]
        mode: Option<Mode>,
        /// Random instances per sampled check.
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        /// Write the JSON report here.
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
        /// Record per-check timings in the report.
        #[arg(long)]
        timings: bool,
        /// Run scans on one thread.
        #[arg(long)]
        sequential: bool,
    },
    /// Parse and resolve a job file without running it.
    Validate { spec: PathBuf },
    /// List the built-in rings and their named automorphisms.
    ListGallery,
    /// Same as --replay.
    Replay { report: PathBuf },
}

fn parse_mode(s: &str) -> Result<Mode, String> {
    s.parse()
}

fn exit(status: Status) -> ExitCode {
    ExitCode::from(status.code())
}

fn read_job(path: &Path, overrides: &Overrides, limits: &Limits) -> Result<Job, Status> {
    let text = fs::read_to_string(path).map_err(|e| {
        eprintln!("cannot read {}: {e}", path.display());
        Status::SpecError
    })?;
    Job::from_text(&text, overrides, limits).map_err(|e| {
        eprintln!("{}: {e}", path.display());
        Status::SpecError
    })
}

fn replay(path: &Path) -> ExitCode {
    let result = fs::read_to_string(path)
        .with_context(|| format!("cannot read {}", path.display()))
        .and_then(|text| serde_json::from_str::<Report>(&text).context("not a report file"))
        .and_then(|report| replay_report(&report, &Limits::default()));
    match result {
        Ok(lines) => {
            for line in &lines {
                println!("{}", line.render());
            }
            exit(replay_status(&lines))
        }
        Err(e) => {
            eprintln!("replay failed: {e:#}");
            exit(Status::SpecError)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                exit(Status::SpecError)
            } else {
                exit(Status::Pass)
            };
        }
    };
    if let Some(path) = cli.replay {
        return replay(&path);
    }
    let Some(command) = cli.command else {
        eprintln!("nothing to do; see --help");
        return exit(Status::SpecError);
    };
    match command {
        Command::Run {
            spec,
            mode,
            trials,
            seed,
            out,
            timings,
            sequential,
        } => {
            let mut limits = Limits::default();
            if sequential {
                limits.exec = skew_app::Exec::Sequential;
            }
            let overrides = Overrides {
                mode,
                trials,
                seed,
                output: out,
            };
            let job = match read_job(&spec, &overrides, &limits) {
                Ok(job) => job,
                Err(status) => return exit(status),
            };
            let report = match run_job(&job, &RunOptions { limits, timings }) {
                Ok(r) => r,
                Err(e) => {
                    eprintln!("{}: {e}", spec.display());
                    return exit(Status::SpecError);
                }
            };
            print!("{}", report.summary());
            if let Some(path) = &job.output {
                if let Err(e) = fs::write(path, report.to_json()) {
                    eprintln!("cannot write {}: {e}", path.display());
                    return exit(Status::SpecError);
                }
            }
            exit(report.status())
        }
        Command::Validate { spec } => match read_job(&spec, &Overrides::default(), &Limits::default()) {
            Ok(job) => {
                println!(
                    "ok: {} over {}, |R| = {}, checks: {}",
                    job.name,
                    job.monoid,
                    job.ring.size(),
                    job.checks.join(", ")
                );
                exit(Status::Pass)
            }
            Err(status) => exit(status),
        },
        Command::ListGallery => {
            let mut stdout = std::io::stdout().lock();
            for entry in gallery() {
                let written = writeln!(
                    stdout,
                    "{:<7} {:>3}  {:<40} {}",
                    entry.name,
                    entry.size,
                    entry.description,
                    entry.actions.join(", ")
                );
                if written.is_err() {
                    break;
                }
            }
            exit(Status::Pass)
        }
        Command::Replay { report } => replay(&report),
    }
}
