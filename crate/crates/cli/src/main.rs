//! Batch CLI: reads a job document (file, stdin, or `--preset`), runs it,
//! and emits the result table as JSON or CSV.
//!
//! Exit codes: 0 ok, 2 argument error, 3 resource error, 4 verification
//! failure, 5 unsettled integrality under `--require-snap`.

mod job;
mod presets;
mod run;
mod table;

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use job::JobDocument;
use run::{run_job, RunConfig};
use table::{emit, OutputFormat};

#[derive(Parser, Debug)]
#[command(
    name = "entrobetti",
    about = "Exact GF(2) window invariants of linear subshifts over Z^d: entropy, duality, entropy Betti numbers",
    version
)]
struct Cli {
    /// Job document (JSON). Reads stdin when omitted and no preset is given.
    job: Option<PathBuf>,

    /// Run a named built-in job instead of reading a document.
    #[arg(long, conflicts_with = "job")]
    preset: Option<String>,

    /// Print the available preset names and exit.
    #[arg(long)]
    list_presets: bool,

    /// Override the window schedule, e.g. 2,4,8,16.
    #[arg(long, value_delimiter = ',')]
    schedule: Option<Vec<usize>>,

    /// Override the degree of a betti job (switches an euler-check job to a
    /// single-degree estimate).
    #[arg(long)]
    degree: Option<usize>,

    /// Override the document seed.
    #[arg(long)]
    seed: Option<u64>,

    /// Cap on window cells (alphabet rank × stencil-padded volume).
    #[arg(long)]
    max_cells: Option<usize>,

    /// Output format.
    #[arg(long, default_value = "json")]
    format: OutputFormat,

    /// Write the result here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,

    /// Exit with code 5 when the summary stays unsettled.
    #[arg(long)]
    require_snap: bool,

    /// Print the canonical job document instead of running it.
    #[arg(long)]
    dump_job: bool,
}

fn fail(code: u8, message: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {message}");
    ExitCode::from(code)
}

/// Write to stdout, treating a closed pipe as a clean exit.
fn write_stdout(text: &str) -> Result<(), ExitCode> {
    use std::io::Write;
    match std::io::stdout().write_all(text.as_bytes()) {
        Ok(()) => Ok(()),
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Err(ExitCode::SUCCESS),
        Err(e) => Err(fail(2, format!("cannot write to stdout: {e}"))),
    }
}

fn threads_from_env() -> Result<usize, String> {
    match std::env::var("ENTROBETTI_THREADS") {
        Ok(text) => match text.trim().parse::<usize>() {
            Ok(n) if n >= 1 => Ok(n),
            _ => Err(format!(
                "ENTROBETTI_THREADS must be a positive integer, got '{text}'"
            )),
        },
        Err(_) => Ok(std::thread::available_parallelism().map_or(1, |n| n.get().min(8))),
    }
}

fn apply_overrides(doc: &mut JobDocument, cli: &Cli) -> Result<(), String> {
    if let Some(schedule) = &cli.schedule {
        match doc {
            JobDocument::Entropy { schedule: s, .. }
            | JobDocument::Betti { schedule: s, .. }
            | JobDocument::Duality { schedule: s, .. }
            | JobDocument::Grothendieck { schedule: s, .. } => *s = Some(schedule.clone()),
            _ => return Err("--schedule does not apply to this job kind".into()),
        }
    }
    if let Some(degree) = cli.degree {
        match doc {
            JobDocument::Betti { degree: d, .. } => *d = Some(degree),
            JobDocument::Covers { degree: d, .. } => *d = degree,
            _ => return Err("--degree applies to betti and covers jobs only".into()),
        }
    }
    if let Some(seed) = cli.seed {
        match doc {
            JobDocument::Entropy { seed: s, .. }
            | JobDocument::Betti { seed: s, .. }
            | JobDocument::Covers { seed: s, .. }
            | JobDocument::Fixpoints { seed: s, .. }
            | JobDocument::Duality { seed: s, .. }
            | JobDocument::Grothendieck { seed: s, .. }
            | JobDocument::Oracle { seed: s, .. }
            | JobDocument::TilingVerify { seed: s, .. } => *s = Some(seed),
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();

    if cli.list_presets {
        let listing = presets::PRESET_NAMES.join("\n") + "\n";
        return match write_stdout(&listing) {
            Ok(()) => ExitCode::SUCCESS,
            Err(code) => code,
        };
    }

    let doc = if let Some(name) = &cli.preset {
        match presets::preset(name) {
            Some(doc) => doc,
            None => return fail(2, format!("unknown preset '{name}' (see --list-presets)")),
        }
    } else {
        let text = match &cli.job {
            Some(path) => match std::fs::read_to_string(path) {
                Ok(t) => t,
                Err(e) => return fail(2, format!("cannot read {}: {e}", path.display())),
            },
            None => {
                let mut buf = String::new();
                if let Err(e) = std::io::stdin().read_to_string(&mut buf) {
                    return fail(2, format!("cannot read stdin: {e}"));
                }
                buf
            }
        };
        match job::parse_job(&text) {
            Ok(doc) => doc,
            Err(e) => return fail(2, e),
        }
    };

    let mut doc = doc;
    if let Err(e) = apply_overrides(&mut doc, &cli) {
        return fail(2, e);
    }
    let doc = match doc.validate() {
        Ok(doc) => doc,
        Err(e) => return fail(2, e),
    };

    if cli.dump_job {
        return match write_stdout(&job::serialize_job(&doc)) {
            Ok(()) => ExitCode::SUCCESS,
            Err(code) => code,
        };
    }

    let threads = match threads_from_env() {
        Ok(n) => n,
        Err(e) => return fail(2, e),
    };
    let cfg = RunConfig {
        threads,
        max_cells: cli.max_cells,
    };

    let outcome = match run_job(&doc, &cfg) {
        Ok(outcome) => outcome,
        Err(e) => return fail(e.exit_code as u8, e),
    };

    let rendered = emit(&outcome.table, cli.format);
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &rendered) {
                return fail(2, format!("cannot write {}: {e}", path.display()));
            }
        }
        None => {
            if let Err(code) = write_stdout(&rendered) {
                return code;
            }
        }
    }

    if outcome.verification_failed {
        ExitCode::from(4)
    } else if cli.require_snap && outcome.table.is_unsettled() {
        ExitCode::from(5)
    } else {
        ExitCode::SUCCESS
    }
}
