//! Bulk σ over contiguous ranges, and a resumable scan for almost perfect
//! numbers built on it.
//!
//! A segment `[lo, hi)` is evaluated by walking every prime `p ≤ √(hi-1)`
//! over its multiples in the segment, dividing the full `p`-power out of a
//! residual array while multiplying `1 + p + ... + p^a` into the σ array.
//! Whatever residual remains above 1 is a single prime `q` and contributes
//! `q + 1`.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::abundancy::deficiency_from_sigma;
use crate::criterion::Label;
use crate::error::{Error, Result};
use crate::natural::{check_range, Natural};
use crate::parallel::with_jobs;

pub const DEFAULT_SEGMENT_SIZE: u64 = 1 << 20;
pub const CHECKPOINT_FORMAT_VERSION: u32 = 1;

/// Primes `≤ limit`, by an odd-only sieve of Eratosthenes.
pub fn primes_up_to(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    // index i stands for 2i + 1
    let len = ((limit - 1) / 2 + 1) as usize;
    let mut composite = vec![false; len];
    let mut primes = vec![2];
    let mut i = 1;
    while i < len {
        if !composite[i] {
            let p = 2 * i as u64 + 1;
            primes.push(p);
            let mut j = (p * p / 2) as usize;
            while j < len {
                composite[j] = true;
                j += p as usize;
            }
        }
        i += 1;
    }
    primes
}

const PRIME_BLOCK: u64 = 1 << 20;

/// Primes below 2^32, generated block by block on first use and shared.
///
/// Block `k` holds the primes in `[k * 2^20, (k + 1) * 2^20)`. Block 0 is
/// also the base for sieving every later block, since √(2^32) < 2^20.
#[derive(Debug, Default)]
struct PrimeTable {
    blocks: Mutex<Vec<Arc<Vec<u32>>>>,
}

/// One table for the whole process; every sieve reads from it.
static PRIMES: PrimeTable = PrimeTable::new();

impl PrimeTable {
    const fn new() -> Self {
        PrimeTable {
            blocks: Mutex::new(Vec::new()),
        }
    }

    fn block(&self, k: usize) -> Arc<Vec<u32>> {
        let mut blocks = self.blocks.lock().unwrap_or_else(|e| e.into_inner());
        while blocks.len() <= k {
            let next = blocks.len() as u64;
            let block = if next == 0 {
                primes_up_to(PRIME_BLOCK - 1).into_iter().map(|p| p as u32).collect()
            } else {
                sieve_block(&blocks[0], next * PRIME_BLOCK, (next + 1) * PRIME_BLOCK)
            };
            blocks.push(Arc::new(block));
        }
        Arc::clone(&blocks[k])
    }
}

/// Primes in `[lo, hi)` given every prime below √hi in `base`.
fn sieve_block(base: &[u32], lo: u64, hi: u64) -> Vec<u32> {
    let mut composite = vec![false; (hi - lo) as usize];
    for &p in base {
        let p = p as u64;
        if p * p >= hi {
            break;
        }
        let mut m = lo.div_ceil(p).max(p) * p;
        while m < hi {
            composite[(m - lo) as usize] = true;
            m += p;
        }
    }
    composite
        .iter()
        .enumerate()
        .filter(|&(_, &c)| !c)
        .map(|(i, _)| (lo + i as u64) as u32)
        .collect()
}

fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r.checked_mul(r).is_none_or(|sq| sq > n) {
        r -= 1;
    }
    while (r + 1).checked_mul(r + 1).is_some_and(|sq| sq <= n) {
        r += 1;
    }
    r
}

/// Dense σ values over a half-open range.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SigmaSegment {
    lo: Natural,
    hi: Natural,
    values: Vec<u64>,
}

impl SigmaSegment {
    pub fn lo(&self) -> Natural {
        self.lo
    }

    pub fn hi(&self) -> Natural {
        self.hi
    }

    /// `values()[i] == σ(lo + i)`.
    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, n: u64) -> Option<u64> {
        n.checked_sub(self.lo.get())
            .and_then(|i| self.values.get(i as usize).copied())
    }

    /// `(n, σ(n))` pairs in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        (self.lo.get()..).zip(self.values.iter().copied())
    }
}

/// Sieving limits shared across the segments of one scan. Primes up to
/// `√(hi-1)` come from a process-wide table, extended only as far as some
/// segment actually needs.
#[derive(Debug, Clone)]
pub struct SegmentSieve {
    hi: u64,
    segment_size: u64,
}

impl SegmentSieve {
    /// Prepares to sieve any segment inside `[1, hi)`.
    pub fn new(hi: u64, segment_size: u64) -> Result<Self> {
        Natural::new(hi)?;
        if segment_size == 0 {
            return Err(Error::InvalidArgument("segment size must be positive".into()));
        }
        Ok(SegmentSieve { hi, segment_size })
    }

    pub fn segment_size(&self) -> u64 {
        self.segment_size
    }

    pub fn segment(&self, lo: u64, hi: u64) -> Result<SigmaSegment> {
        let (lo_n, hi_n) = check_range(lo, hi)?;
        if hi > self.hi {
            return Err(Error::InvalidRange {
                lo,
                hi,
                reason: "segment extends past the sieve limit",
            });
        }
        let len = hi - lo;
        if len > self.segment_size {
            return Err(Error::SegmentTooLarge {
                requested: len,
                limit: self.segment_size,
            });
        }

        let len = len as usize;
        let mut residual: Vec<u64> = (lo..hi).collect();
        let mut values = vec![1u64; len];
        let bound = isqrt(hi - 1);
        // Upper bound on every residual; once p^2 exceeds it, each residual
        // above 1 is prime.
        let mut largest = hi - 1;
        let mut walked = 0u32;

        'blocks: for k in 0.. {
            if k as u64 * PRIME_BLOCK > bound {
                break;
            }
            let block = PRIMES.block(k);
            for &p in block.iter() {
                let p = p as u64;
                if p > bound || p * p > largest {
                    break 'blocks;
                }
                let first = lo.div_ceil(p) * p;
                let mut i = (first - lo) as usize;
                while i < len {
                    let mut r = residual[i] / p;
                    let mut term = 1 + p;
                    while r.is_multiple_of(p) {
                        r /= p;
                        term = term * p + 1;
                    }
                    residual[i] = r;
                    values[i] = values[i].checked_mul(term).ok_or(Error::Overflow {
                        what: "sigma",
                        n: lo + i as u64,
                    })?;
                    i += p as usize;
                }
                walked += 1;
                if walked.is_multiple_of(256) {
                    largest = residual.iter().copied().max().unwrap_or(1);
                }
            }
        }

        for (i, (value, &r)) in values.iter_mut().zip(&residual).enumerate() {
            if r > 1 {
                *value = value.checked_mul(r + 1).ok_or(Error::Overflow {
                    what: "sigma",
                    n: lo + i as u64,
                })?;
            }
        }

        Ok(SigmaSegment {
            lo: lo_n,
            hi: hi_n,
            values,
        })
    }
}

/// σ over `[lo, hi)`, limited to [`DEFAULT_SEGMENT_SIZE`] elements.
pub fn sigma_segment(lo: u64, hi: u64) -> Result<SigmaSegment> {
    sigma_segment_with_limit(lo, hi, DEFAULT_SEGMENT_SIZE)
}

pub fn sigma_segment_with_limit(lo: u64, hi: u64, segment_size: u64) -> Result<SigmaSegment> {
    check_range(lo, hi)?;
    SegmentSieve::new(hi, segment_size)?.segment(lo, hi)
}

/// Deficient / perfect / abundant tallies.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Census {
    pub deficient: u64,
    pub perfect: u64,
    pub abundant: u64,
}

impl Census {
    pub fn total(&self) -> u64 {
        self.deficient + self.perfect + self.abundant
    }

    pub fn record(&mut self, label: Label) {
        match label {
            Label::Deficient => self.deficient += 1,
            Label::Perfect => self.perfect += 1,
            Label::Abundant => self.abundant += 1,
        }
    }

    fn absorb(&mut self, other: Census) {
        self.deficient += other.deficient;
        self.perfect += other.perfect;
        self.abundant += other.abundant;
    }
}

/// Persisted scan progress.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Checkpoint {
    pub format_version: u32,
    pub scan_id: String,
    pub next_lo: u64,
    pub target_hi: u64,
    pub found: Vec<u64>,
    pub counts: Census,
}

impl Checkpoint {
    pub fn scan_id(lo: u64, hi: u64) -> String {
        format!("almost-perfect-{lo}-{hi}")
    }

    fn fresh(lo: u64, hi: u64) -> Self {
        Checkpoint {
            format_version: CHECKPOINT_FORMAT_VERSION,
            scan_id: Self::scan_id(lo, hi),
            next_lo: lo,
            target_hi: hi,
            found: Vec::new(),
            counts: Census::default(),
        }
    }

    /// Reads a checkpoint, returning `Ok(None)` if the file does not exist.
    pub fn load(path: &Path) -> Result<Option<Self>> {
        let text = match fs::read_to_string(path) {
            Ok(text) => text,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(source) => {
                return Err(Error::Io {
                    path: path.to_owned(),
                    source,
                })
            }
        };
        let corrupt = |reason: String| Error::CorruptCheckpoint {
            path: path.to_owned(),
            reason,
        };
        let cp: Checkpoint = toml::from_str(&text).map_err(|e| corrupt(e.message().to_owned()))?;
        cp.validate().map_err(corrupt)?;
        Ok(Some(cp))
    }

    /// Writes via a temporary sibling file and an atomic rename.
    pub fn store(&self, path: &Path) -> Result<()> {
        let io = |source| Error::Io {
            path: path.to_owned(),
            source,
        };
        let text = toml::to_string(self).expect("checkpoint fields are plain TOML values");
        let mut tmp = path.as_os_str().to_owned();
        tmp.push(".tmp");
        let tmp = PathBuf::from(tmp);
        {
            let mut file = fs::File::create(&tmp).map_err(io)?;
            file.write_all(text.as_bytes()).map_err(io)?;
            file.sync_all().map_err(io)?;
        }
        fs::rename(&tmp, path).map_err(io)
    }

    fn validate(&self) -> std::result::Result<(), String> {
        if self.format_version != CHECKPOINT_FORMAT_VERSION {
            return Err(format!("unsupported format_version {}", self.format_version));
        }
        if self.next_lo == 0 || self.target_hi > Natural::MAX_VALUE {
            return Err("range outside the supported domain".into());
        }
        if self.next_lo > self.target_hi {
            return Err(format!("next_lo {} is past target_hi {}", self.next_lo, self.target_hi));
        }
        if !self.found.windows(2).all(|w| w[0] < w[1]) {
            return Err("found list is not strictly increasing".into());
        }
        if self.found.last().is_some_and(|&n| n >= self.next_lo) {
            return Err("found list contains values at or past next_lo".into());
        }
        Ok(())
    }

    /// Checks that this checkpoint belongs to the scan of `[lo, hi)`.
    fn check_matches(&self, lo: u64, hi: u64, path: &Path) -> Result<()> {
        let mismatch = |reason: String| Error::CheckpointMismatch {
            path: path.to_owned(),
            reason,
        };
        let expected = Self::scan_id(lo, hi);
        if self.scan_id != expected {
            return Err(mismatch(format!("scan_id {:?}, expected {expected:?}", self.scan_id)));
        }
        if self.target_hi != hi {
            return Err(mismatch(format!("target_hi {}, expected {hi}", self.target_hi)));
        }
        if self.next_lo < lo || self.counts.total() != self.next_lo - lo {
            return Err(Error::CorruptCheckpoint {
                path: path.to_owned(),
                reason: format!(
                    "tallies cover {} numbers but [{lo}, {}) holds {}",
                    self.counts.total(),
                    self.next_lo,
                    self.next_lo.saturating_sub(lo)
                ),
            });
        }
        if self.found.first().is_some_and(|&n| n < lo) {
            return Err(Error::CorruptCheckpoint {
                path: path.to_owned(),
                reason: "found list contains values below the scan start".into(),
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanReport {
    pub lo: Natural,
    pub hi: Natural,
    /// Ascending almost perfect numbers in `[lo, scanned_to)`.
    pub found: Vec<u64>,
    pub census: Census,
    /// Exclusive end of the scanned prefix; equals `hi` once complete.
    pub scanned_to: u64,
}

impl ScanReport {
    pub fn is_complete(&self) -> bool {
        self.scanned_to == self.hi.get()
    }
}

#[derive(Debug, Clone)]
pub struct ScanOptions {
    pub segment_size: u64,
    /// Worker threads; `0` uses all available cores.
    pub jobs: usize,
    pub checkpoint: Option<PathBuf>,
    /// Stop after this many segments in this call, leaving the scan
    /// incomplete and resumable.
    pub max_segments: Option<u64>,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions {
            segment_size: DEFAULT_SEGMENT_SIZE,
            jobs: 1,
            checkpoint: None,
            max_segments: None,
        }
    }
}

struct SegmentSummary {
    end: u64,
    found: Vec<u64>,
    census: Census,
}

fn summarize(sieve: &SegmentSieve, lo: u64, hi: u64) -> Result<SegmentSummary> {
    let segment = sieve.segment(lo, hi)?;
    let mut found = Vec::new();
    let mut census = Census::default();
    for (n, s) in segment.iter() {
        let deficiency = deficiency_from_sigma(n, s);
        census.record(Label::from_deficiency(deficiency));
        if deficiency == 1 {
            found.push(n);
        }
    }
    Ok(SegmentSummary { end: hi, found, census })
}

/// Finds every `n` in `[lo, hi)` with `σ(n) = 2n - 1`, persisting progress
/// to `checkpoint_path` after each segment when given.
pub fn scan_almost_perfect(lo: u64, hi: u64, checkpoint_path: Option<&Path>) -> Result<ScanReport> {
    let opts = ScanOptions {
        checkpoint: checkpoint_path.map(Path::to_owned),
        ..Default::default()
    };
    scan_almost_perfect_with(lo, hi, &opts, |_| {})
}

/// Like [`scan_almost_perfect`], calling `on_hit` for each almost perfect
/// number in ascending order (including those restored from a checkpoint).
pub fn scan_almost_perfect_with(
    lo: u64,
    hi: u64,
    opts: &ScanOptions,
    mut on_hit: impl FnMut(u64),
) -> Result<ScanReport> {
    let (lo_n, hi_n) = check_range(lo, hi)?;
    let sieve = SegmentSieve::new(hi, opts.segment_size)?;

    let mut state = match &opts.checkpoint {
        Some(path) => match Checkpoint::load(path)? {
            Some(cp) => {
                cp.check_matches(lo, hi, path)?;
                cp
            }
            None => Checkpoint::fresh(lo, hi),
        },
        None => Checkpoint::fresh(lo, hi),
    };
    state.found.iter().copied().for_each(&mut on_hit);

    let batch = match opts.jobs {
        0 => rayon::current_num_threads(),
        n => n,
    } as u64;
    let mut budget = opts.max_segments.unwrap_or(u64::MAX);

    while state.next_lo < hi && budget > 0 {
        let count = batch.min(budget);
        let bounds: Vec<(u64, u64)> = (0..count)
            .map(|k| state.next_lo.saturating_add(k.saturating_mul(opts.segment_size)))
            .take_while(|&start| start < hi)
            .map(|start| (start, hi.min(start.saturating_add(opts.segment_size))))
            .collect();

        let summaries: Vec<Result<SegmentSummary>> = with_jobs(opts.jobs, || {
            bounds.par_iter().map(|&(s, e)| summarize(&sieve, s, e)).collect()
        });

        // Commit in order so the checkpoint only ever covers a contiguous prefix.
        for summary in summaries {
            let summary = summary?;
            summary.found.iter().copied().for_each(&mut on_hit);
            state.found.extend(summary.found);
            state.counts.absorb(summary.census);
            state.next_lo = summary.end;
            budget -= 1;
            if let Some(path) = &opts.checkpoint {
                state.store(path)?;
            }
        }
    }

    Ok(ScanReport {
        lo: lo_n,
        hi: hi_n,
        found: state.found,
        census: state.counts,
        scanned_to: state.next_lo,
    })
}
