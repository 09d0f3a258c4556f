//! Command-line front end: `check`, `scan`, `verify`, `family`, `gaps`.
//!
//! Machine output is one JSON object per line with a stable field order.
//! Human output is an aligned table. Exact rationals are printed as
//! `"num/den"` strings; fields ending in `_approx` are display-only decimals
//! rounded to 12 significant digits.
//!
//! Exit codes: 0 on success, 1 when `verify` finds a counterexample, 2 on
//! any usage, domain or checkpoint error.

use std::io::{self, Write};
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::abundancy::{abundancy_index, lower_bound, upper_bound, Ratio, SignedRatio};
use crate::criterion::{classify, verify_equivalence_with, BandRules, EquivalenceReport, Verdict, VerifyOptions};
use crate::error::{Error, Result};
use crate::families::{analyze_even_family, analyze_power_of_two, tightness_gaps, FamilyReport, Gaps};
use crate::natural::{check_range, Natural};
use crate::sieve::{scan_almost_perfect_with, ScanOptions, ScanReport, DEFAULT_SEGMENT_SIZE};

pub const EXIT_OK: i32 = 0;
pub const EXIT_COUNTEREXAMPLE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "almost-perfect",
    version,
    about = "Abundancy-index criterion for almost perfect numbers"
)]
pub struct Cli {
    /// Output format; defaults to human on a terminal, machine otherwise.
    #[arg(long, value_enum, global = true)]
    pub format: Option<Format>,

    /// Worker threads.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    pub jobs: u32,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Machine,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate every predicate for a single n.
    Check { n: u64 },
    /// Find almost perfect numbers in [lo, hi).
    Scan {
        lo: u64,
        hi: u64,
        /// Resumable progress file.
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        /// Numbers per sieve segment (a power of two).
        #[arg(long, default_value_t = DEFAULT_SEGMENT_SIZE)]
        segment_size: u64,
    },
    /// Check that the definition and both bands agree on all of [lo, hi).
    Verify { lo: u64, hi: u64 },
    /// Band reports for 2^m * r over odd r, or for powers of two.
    Family(FamilyArgs),
    /// Exact gaps between I(n) and both band edges for n in [lo, hi).
    Gaps { lo: u64, hi: u64 },
}

#[derive(Debug, Args)]
#[group(required = true, multiple = true)]
pub struct FamilyArgs {
    /// Exponent of two.
    #[arg(long, requires_all = ["r_from", "r_to"], conflicts_with = "pow2")]
    pub m: Option<u32>,
    /// First odd part (inclusive).
    #[arg(long, requires = "m")]
    pub r_from: Option<u64>,
    /// Last odd part (inclusive).
    #[arg(long, requires = "m")]
    pub r_to: Option<u64>,
    /// Exponent range K_FROM K_TO (inclusive) of powers of two.
    #[arg(long, num_args = 2, value_names = ["K_FROM", "K_TO"])]
    pub pow2: Option<Vec<u32>>,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write, default_format: Format) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match execute(&cli, out, err, default_format) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

pub fn execute(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write, default_format: Format) -> Result<i32> {
    let format = cli.format.unwrap_or(default_format);
    let jobs = cli.jobs as usize;
    match &cli.command {
        Command::Check { n } => cmd_check(*n, format, out).map(|_| EXIT_OK),
        Command::Scan {
            lo,
            hi,
            checkpoint,
            segment_size,
        } => {
            if !segment_size.is_power_of_two() {
                return Err(Error::InvalidArgument(format!(
                    "segment size {segment_size} is not a power of two"
                )));
            }
            let opts = ScanOptions {
                segment_size: *segment_size,
                jobs,
                checkpoint: checkpoint.clone(),
                max_segments: None,
            };
            cmd_scan(*lo, *hi, &opts, format, out, err).map(|_| EXIT_OK)
        }
        Command::Verify { lo, hi } => {
            let opts = VerifyOptions {
                jobs,
                ..VerifyOptions::default()
            };
            cmd_verify(*lo, *hi, &opts, format, out)
        }
        Command::Family(args) => {
            let reports = match (&args.pow2, args.m, args.r_from, args.r_to) {
                (Some(ks), None, None, None) => power_of_two_sweep(ks[0], ks[1])?,
                (None, Some(m), Some(from), Some(to)) => even_family_sweep(m, from, to)?,
                _ => {
                    return Err(Error::InvalidArgument(
                        "use either --pow2 or --m with --r-from/--r-to".into(),
                    ))
                }
            };
            write_family(&reports, format, out).map(|_| EXIT_OK)
        }
        Command::Gaps { lo, hi } => cmd_gaps(*lo, *hi, format, out).map(|_| EXIT_OK),
    }
}

fn io_err(source: io::Error) -> Error {
    Error::Io {
        path: PathBuf::from("<output>"),
        source,
    }
}

/// Decimal rendering with 12 significant digits; display only.
pub fn approx(x: f64) -> String {
    if x == 0.0 {
        return "0".to_owned();
    }
    let exp = x.abs().log10().floor() as i32;
    if (-4..15).contains(&exp) {
        format!("{:.*}", (11 - exp).max(0) as usize, x)
    } else {
        format!("{:.11e}", x)
    }
}

fn emit<T: Serialize>(out: &mut dyn Write, record: &T) -> Result<()> {
    serde_json::to_writer(&mut *out, record).map_err(|e| io_err(e.into()))?;
    writeln!(out).map_err(io_err)
}

/// Column-aligned text table; the first column is left-aligned, the rest
/// right-aligned.
struct Table {
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Table {
    fn new(header: &[&str]) -> Self {
        Table {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }

    fn write(&self, out: &mut dyn Write) -> Result<()> {
        let mut widths: Vec<usize> = self.header.iter().map(|h| h.chars().count()).collect();
        for row in &self.rows {
            for (w, cell) in widths.iter_mut().zip(row) {
                *w = (*w).max(cell.chars().count());
            }
        }
        for row in std::iter::once(&self.header).chain(&self.rows) {
            let line: Vec<String> = row
                .iter()
                .zip(&widths)
                .enumerate()
                .map(|(i, (cell, &w))| {
                    if i == 0 {
                        format!("{cell:<w$}")
                    } else {
                        format!("{cell:>w$}")
                    }
                })
                .collect();
            writeln!(out, "{}", line.join("  ").trim_end()).map_err(io_err)?;
        }
        Ok(())
    }
}

#[derive(Debug, Serialize)]
pub struct CheckRecord {
    pub n: u64,
    pub sigma: u64,
    pub index_exact: String,
    pub index_approx: String,
    pub lower_exact: String,
    pub upper_exact: String,
    pub deficiency: i128,
    pub label: &'static str,
    pub almost_perfect: bool,
    pub lemma1_band: bool,
    pub theorem1_band: bool,
}

pub fn check_record(n: u64) -> Result<CheckRecord> {
    let n = Natural::new(n)?;
    let class = classify(n)?;
    let index = abundancy_index(n)?;
    let verdict = Verdict::from_sigma(n, class.sigma, BandRules::EXACT);
    Ok(CheckRecord {
        n: n.get(),
        sigma: class.sigma,
        index_exact: index.to_string(),
        index_approx: approx(index.approx()),
        lower_exact: lower_bound(n).to_string(),
        upper_exact: upper_bound(n).to_string(),
        deficiency: class.deficiency,
        label: class.label.as_str(),
        almost_perfect: class.almost_perfect,
        lemma1_band: verdict.lemma1_band,
        theorem1_band: verdict.theorem1_band,
    })
}

pub fn cmd_check(n: u64, format: Format, out: &mut dyn Write) -> Result<()> {
    let rec = check_record(n)?;
    match format {
        Format::Machine => emit(out, &rec),
        Format::Human => {
            let mut t = Table::new(&["field", "value"]);
            let rows: [(&str, String); 11] = [
                ("n", rec.n.to_string()),
                ("sigma", rec.sigma.to_string()),
                ("index", rec.index_exact.clone()),
                ("index (approx)", rec.index_approx.clone()),
                ("lower 2n/(n+1)", rec.lower_exact.clone()),
                ("upper (2n+1)/(n+1)", rec.upper_exact.clone()),
                ("deficiency", rec.deficiency.to_string()),
                ("label", rec.label.to_owned()),
                ("almost perfect", rec.almost_perfect.to_string()),
                ("lemma1_band", rec.lemma1_band.to_string()),
                ("theorem1_band", rec.theorem1_band.to_string()),
            ];
            for (k, v) in rows {
                t.push(vec![k.to_owned(), v]);
            }
            t.write(out)
        }
    }
}

#[derive(Serialize)]
struct HitRecord {
    record: &'static str,
    n: u64,
}

#[derive(Serialize)]
struct ScanSummary<'a> {
    record: &'static str,
    lo: u64,
    hi: u64,
    hits: usize,
    found: &'a [u64],
    deficient: u64,
    perfect: u64,
    abundant: u64,
}

pub fn cmd_scan(
    lo: u64,
    hi: u64,
    opts: &ScanOptions,
    format: Format,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<ScanReport> {
    let started = Instant::now();
    let mut write_error = None;
    let report = scan_almost_perfect_with(lo, hi, opts, |n| {
        if write_error.is_some() {
            return;
        }
        let res = match format {
            Format::Machine => emit(out, &HitRecord { record: "hit", n }),
            Format::Human => writeln!(out, "almost perfect: {n}").map_err(io_err),
        };
        if let Err(e) = res {
            write_error = Some(e);
        }
    })?;
    if let Some(e) = write_error {
        return Err(e);
    }
    write_scan_summary(&report, format, out)?;

    let elapsed = started.elapsed().as_secs_f64();
    let count = report.hi.get() - report.lo.get();
    let _ = writeln!(
        err,
        "scanned {count} numbers in {elapsed:.3} s ({} numbers/s)",
        approx(count as f64 / elapsed.max(1e-9))
    );
    Ok(report)
}

pub fn write_scan_summary(report: &ScanReport, format: Format, out: &mut dyn Write) -> Result<()> {
    match format {
        Format::Machine => emit(
            out,
            &ScanSummary {
                record: "scan",
                lo: report.lo.get(),
                hi: report.hi.get(),
                hits: report.found.len(),
                found: &report.found,
                deficient: report.census.deficient,
                perfect: report.census.perfect,
                abundant: report.census.abundant,
            },
        ),
        Format::Human => {
            let mut t = Table::new(&["summary", "value"]);
            t.push(vec!["range".into(), format!("[{}, {})", report.lo, report.hi)]);
            t.push(vec!["hits".into(), report.found.len().to_string()]);
            t.push(vec!["deficient".into(), report.census.deficient.to_string()]);
            t.push(vec!["perfect".into(), report.census.perfect.to_string()]);
            t.push(vec!["abundant".into(), report.census.abundant.to_string()]);
            t.write(out)
        }
    }
}

#[derive(Serialize)]
struct CounterexampleRecord {
    record: &'static str,
    n: u64,
    sigma: u64,
    definition: bool,
    lemma1_band: bool,
    theorem1_band: bool,
    dissenting: &'static str,
}

#[derive(Serialize)]
struct VerifySummary {
    record: &'static str,
    lo: u64,
    hi: u64,
    checked: u64,
    counterexamples: u64,
}

pub fn cmd_verify(lo: u64, hi: u64, opts: &VerifyOptions, format: Format, out: &mut dyn Write) -> Result<i32> {
    let report = verify_equivalence_with(lo, hi, opts)?;
    write_verify(&report, format, out)?;
    Ok(verify_exit_code(&report))
}

pub fn verify_exit_code(report: &EquivalenceReport) -> i32 {
    if report.holds() {
        EXIT_OK
    } else {
        EXIT_COUNTEREXAMPLE
    }
}

pub fn write_verify(report: &EquivalenceReport, format: Format, out: &mut dyn Write) -> Result<()> {
    match format {
        Format::Machine => {
            for c in &report.counterexamples {
                emit(
                    out,
                    &CounterexampleRecord {
                        record: "counterexample",
                        n: c.n,
                        sigma: c.sigma,
                        definition: c.verdict.definition,
                        lemma1_band: c.verdict.lemma1_band,
                        theorem1_band: c.verdict.theorem1_band,
                        dissenting: c.verdict.dissenting().unwrap_or(""),
                    },
                )?;
            }
            emit(
                out,
                &VerifySummary {
                    record: "verify",
                    lo: report.lo.get(),
                    hi: report.hi.get(),
                    checked: report.checked,
                    counterexamples: report.disagreements,
                },
            )
        }
        Format::Human => {
            if !report.counterexamples.is_empty() {
                let mut t = Table::new(&["n", "sigma", "definition", "lemma1_band", "theorem1_band", "dissenting"]);
                for c in &report.counterexamples {
                    t.push(vec![
                        c.n.to_string(),
                        c.sigma.to_string(),
                        c.verdict.definition.to_string(),
                        c.verdict.lemma1_band.to_string(),
                        c.verdict.theorem1_band.to_string(),
                        c.verdict.dissenting().unwrap_or("").to_owned(),
                    ]);
                }
                t.write(out)?;
            }
            writeln!(
                out,
                "[{}, {}): checked {}, {} counterexamples",
                report.lo, report.hi, report.checked, report.disagreements
            )
            .map_err(io_err)
        }
    }
}

fn power_of_two_sweep(from: u32, to: u32) -> Result<Vec<FamilyReport>> {
    if from > to {
        return Err(Error::InvalidArgument(format!("empty exponent range {from}..={to}")));
    }
    (from..=to).map(analyze_power_of_two).collect()
}

fn even_family_sweep(m: u32, from: u64, to: u64) -> Result<Vec<FamilyReport>> {
    if from > to {
        return Err(Error::InvalidArgument(format!("empty odd-part range {from}..={to}")));
    }
    let first = from | 1;
    (first..=to).step_by(2).map(|r| analyze_even_family(m, r)).collect()
}

#[derive(Serialize)]
struct FamilyRecord {
    record: &'static str,
    n: u64,
    m: u32,
    r: u64,
    index_exact: String,
    index_approx: String,
    lower_exact: String,
    upper_exact: String,
    in_band: bool,
    failure_side: Option<&'static str>,
    gap_low_exact: String,
    gap_low_approx: String,
    gap_high_exact: String,
    gap_high_approx: String,
}

fn ratio_pair(r: Ratio) -> (String, String) {
    (r.to_string(), approx(r.approx()))
}

fn gap_pair(r: SignedRatio) -> (String, String) {
    (r.to_string(), approx(r.approx()))
}

pub fn write_family(reports: &[FamilyReport], format: Format, out: &mut dyn Write) -> Result<()> {
    let records: Vec<FamilyRecord> = reports
        .iter()
        .map(|rep| {
            let (index_exact, index_approx) = ratio_pair(rep.index);
            let (gap_low_exact, gap_low_approx) = gap_pair(rep.gaps.low);
            let (gap_high_exact, gap_high_approx) = gap_pair(rep.gaps.high);
            FamilyRecord {
                record: "family",
                n: rep.n.get(),
                m: rep.m,
                r: rep.r,
                index_exact,
                index_approx,
                lower_exact: rep.lower.to_string(),
                upper_exact: rep.upper.to_string(),
                in_band: rep.in_band,
                failure_side: rep.failure_side.map(|s| s.as_str()),
                gap_low_exact,
                gap_low_approx,
                gap_high_exact,
                gap_high_approx,
            }
        })
        .collect();
    match format {
        Format::Machine => records.iter().try_for_each(|r| emit(out, r)),
        Format::Human => {
            let mut t = Table::new(&[
                "n", "m", "r", "index", "lower", "upper", "in_band", "failure", "gap_low", "gap_high",
            ]);
            for r in records {
                t.push(vec![
                    r.n.to_string(),
                    r.m.to_string(),
                    r.r.to_string(),
                    r.index_exact,
                    r.lower_exact,
                    r.upper_exact,
                    r.in_band.to_string(),
                    r.failure_side.unwrap_or("-").to_owned(),
                    r.gap_low_exact,
                    r.gap_high_exact,
                ]);
            }
            t.write(out)
        }
    }
}

#[derive(Serialize)]
struct GapRecord {
    record: &'static str,
    n: u64,
    index_exact: String,
    gap_low_exact: String,
    gap_low_approx: String,
    gap_high_exact: String,
    gap_high_approx: String,
    in_band: bool,
}

fn gap_record(n: Natural, gaps: Gaps) -> Result<GapRecord> {
    let (gap_low_exact, gap_low_approx) = gap_pair(gaps.low);
    let (gap_high_exact, gap_high_approx) = gap_pair(gaps.high);
    Ok(GapRecord {
        record: "gaps",
        n: n.get(),
        index_exact: abundancy_index(n)?.to_string(),
        gap_low_exact,
        gap_low_approx,
        gap_high_exact,
        gap_high_approx,
        in_band: gaps.in_band(),
    })
}

pub fn cmd_gaps(lo: u64, hi: u64, format: Format, out: &mut dyn Write) -> Result<()> {
    check_range(lo, hi)?;
    let mut table = Table::new(&["n", "index", "gap_low", "gap_low≈", "gap_high", "gap_high≈", "in_band"]);
    for v in lo..hi {
        let n = Natural::new(v)?;
        let rec = gap_record(n, tightness_gaps(n)?)?;
        match format {
            Format::Machine => emit(out, &rec)?,
            Format::Human => table.push(vec![
                rec.n.to_string(),
                rec.index_exact,
                rec.gap_low_exact,
                rec.gap_low_approx,
                rec.gap_high_exact,
                rec.gap_high_approx,
                rec.in_band.to_string(),
            ]),
        }
    }
    if format == Format::Human {
        table.write(out)?;
    }
    Ok(())
}
