//! Exhaustive sweeps over enumerated polyominoes.

use std::fmt;
use std::io::Write;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::enumerate::{enumerate_fixed_polyominoes, MAX_ENUM_CELLS};
use crate::error::{Error, Result};
use crate::lproject::verify_projection;
use crate::poly::{HVector, RookPolynomial};
use crate::polyomino::{classify, ClassReport, Polyomino};
use crate::rook::{rook_polynomial, verify_theorem_with_seeds, DEFAULT_SEEDS};

pub const THREADS_ENV: &str = "POLYALG_THREADS";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassFilter {
    All,
    ConvexSublattice,
    LConvex,
    Thin,
}

impl ClassFilter {
    pub fn admits(self, report: &ClassReport) -> bool {
        match self {
            ClassFilter::All => true,
            ClassFilter::ConvexSublattice => report.convex_sublattice(),
            ClassFilter::LConvex => report.l_convex,
            ClassFilter::Thin => report.thin,
        }
    }
}

impl FromStr for ClassFilter {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "all" => Ok(ClassFilter::All),
            "convex_sublattice" => Ok(ClassFilter::ConvexSublattice),
            "l_convex" => Ok(ClassFilter::LConvex),
            "thin" => Ok(ClassFilter::Thin),
            other => Err(format!(
                "unknown class {other:?} (expected all, convex_sublattice, l_convex, thin)"
            )),
        }
    }
}

impl fmt::Display for ClassFilter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ClassFilter::All => "all",
            ClassFilter::ConvexSublattice => "convex_sublattice",
            ClassFilter::LConvex => "l_convex",
            ClassFilter::Thin => "thin",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepConfig {
    pub max_cells: usize,
    pub class: ClassFilter,
    pub seeds: Vec<u64>,
    /// Worker count; `None` reads `POLYALG_THREADS`, then falls back to the
    /// number of CPUs.
    pub threads: Option<usize>,
}

impl SweepConfig {
    pub fn new(max_cells: usize, class: ClassFilter) -> Self {
        SweepConfig {
            max_cells,
            class,
            seeds: DEFAULT_SEEDS.to_vec(),
            threads: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepRecord {
    /// Position in the full enumeration (all sizes, sorted within a size).
    pub id: usize,
    pub polyomino: Polyomino,
    pub cell_count: usize,
    pub class: ClassReport,
    /// `None` outside the convex sublattice class.
    pub h: Option<HVector>,
    pub r: RookPolynomial,
    pub dominance: Option<bool>,
    pub strict_at_2: Option<bool>,
    pub equality: Option<bool>,
    pub counterexample: Option<String>,
    #[serde(skip)]
    pub runtime_micros: u128,
}

impl SweepRecord {
    /// Equality of records ignoring timing.
    pub fn same_result(&self, other: &SweepRecord) -> bool {
        SweepRecord {
            runtime_micros: 0,
            ..self.clone()
        } == SweepRecord {
            runtime_micros: 0,
            ..other.clone()
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SweepSummary {
    pub max_cells: usize,
    pub class: String,
    pub instances: usize,
    pub thin: usize,
    pub convex_sublattice: usize,
    pub l_convex: usize,
    pub non_thin_convex_sublattice: usize,
    pub strict_at_2: usize,
    pub equality: usize,
    pub max_h_degree: usize,
    pub counterexamples: usize,
    pub elapsed_ms: u128,
}

#[derive(Clone, Debug)]
pub struct SweepOutcome {
    pub records: Vec<SweepRecord>,
    pub summary: SweepSummary,
}

impl SweepOutcome {
    pub fn counterexamples(&self) -> impl Iterator<Item = &SweepRecord> {
        self.records.iter().filter(|r| r.counterexample.is_some())
    }
}

/// Runs every check that applies to `p` and records the outcome. Errors
/// from the lattice-side checks are captured as counterexamples.
pub fn analyze_instance(id: usize, p: &Polyomino, seeds: &[u64]) -> Result<SweepRecord> {
    let start = Instant::now();
    let class = classify(p);
    let r = rook_polynomial(p)?;
    let mut record = SweepRecord {
        id,
        polyomino: p.clone(),
        cell_count: p.len(),
        class: class.clone(),
        h: None,
        r,
        dominance: None,
        strict_at_2: None,
        equality: None,
        counterexample: None,
        runtime_micros: 0,
    };
    let mut problems = Vec::new();
    if class.convex_sublattice() {
        match verify_theorem_with_seeds(p, seeds) {
            Ok(rep) => {
                record.dominance = Some(rep.dominance);
                record.strict_at_2 = Some(rep.strict_at_2);
                record.equality = Some(rep.h == rep.r);
                if rep.r != record.r {
                    problems.push("theorem report disagrees with rook polynomial".to_string());
                }
                problems.extend(rep.counterexample());
                record.h = Some(rep.h);
            }
            Err(e) => problems.push(e.to_string()),
        }
    }
    if class.l_convex {
        match verify_projection(p) {
            Ok(rep) if !rep.thin_transfer && !class.thin => {
                problems.push("thinness does not transfer to the projection".into())
            }
            Ok(_) => {}
            Err(e) => problems.push(format!("projection: {e}")),
        }
    }
    if !problems.is_empty() {
        record.counterexample = Some(problems.join("; "));
    }
    record.runtime_micros = start.elapsed().as_micros();
    Ok(record)
}

fn worker_count(config: &SweepConfig) -> usize {
    config
        .threads
        .or_else(|| std::env::var(THREADS_ENV).ok().and_then(|v| v.parse().ok()))
        .filter(|&n| n > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}

pub fn sweep(config: &SweepConfig) -> Result<SweepOutcome> {
    if config.max_cells > MAX_ENUM_CELLS {
        return Err(Error::OutOfRange(config.max_cells));
    }
    let start = Instant::now();
    let mut instances = Vec::new();
    for n in 1..=config.max_cells {
        instances.extend(enumerate_fixed_polyominoes(n)?);
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(worker_count(config))
        .build()
        .map_err(|e| Error::Invariant(format!("thread pool: {e}")))?;
    let analyzed: Vec<Option<SweepRecord>> = pool.install(|| {
        instances
            .par_iter()
            .enumerate()
            .map(|(id, p)| {
                if config.class.admits(&classify(p)) {
                    analyze_instance(id, p, &config.seeds).map(Some)
                } else {
                    Ok(None)
                }
            })
            .collect::<Result<_>>()
    })?;
    let records: Vec<SweepRecord> = analyzed.into_iter().flatten().collect();
    let mut summary = summarize(&records);
    summary.max_cells = config.max_cells;
    summary.class = config.class.to_string();
    summary.elapsed_ms = start.elapsed().as_millis();
    Ok(SweepOutcome { records, summary })
}

fn summarize(records: &[SweepRecord]) -> SweepSummary {
    let count = |f: &dyn Fn(&SweepRecord) -> bool| records.iter().filter(|r| f(r)).count();
    SweepSummary {
        instances: records.len(),
        thin: count(&|r| r.class.thin),
        convex_sublattice: count(&|r| r.class.convex_sublattice()),
        l_convex: count(&|r| r.class.l_convex),
        non_thin_convex_sublattice: count(&|r| r.class.convex_sublattice() && !r.class.thin),
        strict_at_2: count(&|r| r.strict_at_2 == Some(true)),
        equality: count(&|r| r.equality == Some(true)),
        max_h_degree: records
            .iter()
            .filter_map(|r| r.h.as_ref()?.degree())
            .max()
            .unwrap_or(0),
        counterexamples: count(&|r| r.counterexample.is_some()),
        ..SweepSummary::default()
    }
}

#[derive(Serialize)]
struct CsvRow<'a> {
    cells: usize,
    grid: String,
    thin: bool,
    convex: bool,
    sublattice: bool,
    lconvex: bool,
    h: String,
    r: String,
    dominance: &'a str,
    strict_at_2: &'a str,
    equality: &'a str,
}

fn coeff_list(p: &crate::poly::IntPolynomial) -> String {
    p.coeffs()
        .iter()
        .map(u64::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

fn opt_flag(b: Option<bool>) -> &'static str {
    match b {
        Some(true) => "true",
        Some(false) => "false",
        None => "",
    }
}

/// One row per record; coefficient lists are space-separated, lowest degree
/// first, and `h` is `unavailable` outside the convex sublattice class.
pub fn write_csv<W: Write>(records: &[SweepRecord], out: W) -> csv::Result<()> {
    let mut writer = csv::Writer::from_writer(out);
    for rec in records {
        writer.serialize(CsvRow {
            cells: rec.cell_count,
            grid: rec.polyomino.to_run_length(),
            thin: rec.class.thin,
            convex: rec.class.hv_convex,
            sublattice: rec.class.vertex_sublattice,
            lconvex: rec.class.l_convex,
            h: rec
                .h
                .as_ref()
                .map_or_else(|| "unavailable".to_string(), coeff_list),
            r: coeff_list(&rec.r),
            dominance: opt_flag(rec.dominance),
            strict_at_2: opt_flag(rec.strict_at_2),
            equality: opt_flag(rec.equality),
        })?;
    }
    writer.flush()?;
    Ok(())
}

pub fn csv_string(records: &[SweepRecord]) -> String {
    let mut buf = Vec::new();
    write_csv(records, &mut buf).expect("writing to memory");
    String::from_utf8(buf).expect("csv is utf-8")
}
