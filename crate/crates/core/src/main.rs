use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use polyalg::hseries::descent_word;
use polyalg::lproject::verify_projection;
use polyalg::rook::{labeled_chains, psi, rook_polynomial, verify_theorem_with_seeds};
use polyalg::sweep::{sweep, write_csv, ClassFilter, SweepConfig};
use polyalg::{classify, parse_grid, Error, Polyomino};

#[derive(Parser)]
#[command(
    name = "polyalg",
    version,
    about = "h-polynomials and rook polynomials of polyominoes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the theorem report of one polyomino as JSON.
    Analyze {
        file: PathBuf,
        #[arg(long, value_delimiter = ',', default_value = "0,1,2")]
        seeds: Vec<u64>,
    },
    /// Check every fixed polyomino up to a size; writes CSV and a JSON summary line.
    Sweep {
        #[arg(long)]
        max_cells: usize,
        #[arg(long, default_value = "convex_sublattice")]
        class: ClassFilter,
        #[arg(long, value_delimiter = ',', default_value = "0,1,2")]
        seeds: Vec<u64>,
        /// CSV destination; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Worker threads (overrides POLYALG_THREADS).
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Print the Ferrers projection report of an L-convex polyomino as JSON.
    Project { file: PathBuf },
    /// List every maximal chain with its labels, descents and psi cells.
    Chains {
        file: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

const EXIT_IO: u8 = 1;
const EXIT_PRECONDITION: u8 = 2;
const EXIT_COUNTEREXAMPLE: u8 = 3;

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::EmptyInput | Error::NotConnected | Error::RaggedRows { .. } | Error::InvalidChar { .. } => {
            EXIT_IO
        }
        Error::NotSublattice(..)
        | Error::NotConvex
        | Error::NotLConvex
        | Error::IsThin
        | Error::TooLarge(_)
        | Error::OutOfRange(_) => EXIT_PRECONDITION,
        Error::NonUnitCover(..)
        | Error::NegativeCoefficient { .. }
        | Error::ProjectionInvariantFailed(_)
        | Error::Invariant(_) => EXIT_COUNTEREXAMPLE,
    }
}

fn fail(e: &Error) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(exit_code(e))
}

fn load(path: &Path) -> Result<Polyomino, ExitCode> {
    let text = fs::read_to_string(path).map_err(|e| {
        eprintln!("error: cannot read {}: {e}", path.display());
        ExitCode::from(EXIT_IO)
    })?;
    parse_grid(&text).map_err(|e| fail(&e))
}

fn print_json(value: &impl serde::Serialize) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("reports serialize")
    );
}

fn analyze(path: &Path, seeds: &[u64]) -> Result<ExitCode, ExitCode> {
    let p = load(path)?;
    let class = classify(&p);
    if !class.convex_sublattice() {
        let r = rook_polynomial(&p).map_err(|e| fail(&e))?;
        print_json(&json!({
            "h": null,
            "r": r,
            "thin": class.thin,
            "dominance": null,
            "strict_at_2": null,
            "witness": null,
        }));
        let reason = match class.sublattice_witness {
            Some((a, b)) => Error::NotSublattice(a, b),
            None => Error::NotConvex,
        };
        eprintln!("h unavailable: {reason}");
        return Ok(ExitCode::from(EXIT_PRECONDITION));
    }
    let report = verify_theorem_with_seeds(&p, seeds).map_err(|e| fail(&e))?;
    print_json(&report);
    if let Some(why) = report.counterexample() {
        eprintln!("counterexample: {why}\n{p}");
        return Ok(ExitCode::from(EXIT_COUNTEREXAMPLE));
    }
    Ok(ExitCode::SUCCESS)
}

fn run_sweep(config: SweepConfig, out: Option<&Path>) -> Result<ExitCode, ExitCode> {
    let outcome = sweep(&config).map_err(|e| fail(&e))?;
    let written = match out {
        Some(path) => File::create(path)
            .map_err(|e| e.into())
            .and_then(|f| write_csv(&outcome.records, BufWriter::new(f))),
        None => write_csv(&outcome.records, io::stdout().lock()),
    };
    if let Err(e) = written {
        eprintln!("error: writing CSV: {e}");
        return Err(ExitCode::from(EXIT_IO));
    }
    for rec in outcome.counterexamples() {
        eprintln!(
            "counterexample #{}:\n{}\n{}",
            rec.id,
            rec.polyomino,
            rec.counterexample.as_deref().unwrap_or("")
        );
        eprintln!("{}", serde_json::to_string(rec).expect("records serialize"));
    }
    println!(
        "{}",
        serde_json::to_string(&outcome.summary).expect("summary serializes")
    );
    if outcome.summary.counterexamples > 0 {
        return Ok(ExitCode::from(EXIT_COUNTEREXAMPLE));
    }
    Ok(ExitCode::SUCCESS)
}

fn project(path: &Path) -> Result<ExitCode, ExitCode> {
    let p = load(path)?;
    let report = verify_projection(&p).map_err(|e| fail(&e))?;
    print_json(&report);
    Ok(ExitCode::SUCCESS)
}

fn chains(path: &Path, seed: u64) -> Result<ExitCode, ExitCode> {
    let p = load(path)?;
    let (ji, omega, chains) = labeled_chains(&p, seed).map_err(|e| fail(&e))?;
    let mut stdout = io::stdout().lock();
    let join = |items: Vec<String>| items.join(",");
    for chain in &chains {
        let word = descent_word(chain, &ji, &omega);
        let cells = psi(chain, &ji, &omega);
        let line = format!(
            "{}\tlabels={}\tdescents={{{}}}\tpsi={{{}}}",
            chain.step_word(),
            join(word.labels.iter().map(u32::to_string).collect()),
            join(word.descents.iter().map(usize::to_string).collect()),
            join(cells.cells().iter().map(|c| c.to_string()).collect()),
        );
        if writeln!(stdout, "{line}").is_err() {
            return Err(ExitCode::from(EXIT_IO));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Analyze { file, seeds } => analyze(&file, &seeds),
        Command::Sweep {
            max_cells,
            class,
            seeds,
            out,
            threads,
        } => run_sweep(
            SweepConfig {
                max_cells,
                class,
                seeds,
                threads,
            },
            out.as_deref(),
        ),
        Command::Project { file } => project(&file),
        Command::Chains { file, seed } => chains(&file, seed),
    };
    result.unwrap_or_else(|code| code)
}
