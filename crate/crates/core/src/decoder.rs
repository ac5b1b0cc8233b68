//! Sequential (peeling) recovery of erasures with the local parity checks.
//!
//! A step repairs a symbol that is the only erased symbol in the support of
//! some row of H. The canonical decoder always takes the lowest such row, so
//! schedules are reproducible.

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::combinatorics::binomial;
use crate::construction::CodeInstance;
use crate::error::{Error, Result};
use crate::gf2::{vectors_independent, word_count, BitMatrix, WORD_BITS};

/// A set of erased column indices, kept sorted and deduplicated.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ErasurePattern {
    erased: Vec<usize>,
}

impl ErasurePattern {
    pub fn new(mut erased: Vec<usize>, n: usize) -> Result<Self> {
        if let Some(&bad) = erased.iter().find(|&&i| i >= n) {
            return Err(Error::IndexOutOfRange {
                index: bad,
                limit: n,
            });
        }
        erased.sort_unstable();
        erased.dedup();
        Ok(Self { erased })
    }

    pub fn indices(&self) -> &[usize] {
        &self.erased
    }

    pub fn len(&self) -> usize {
        self.erased.len()
    }

    pub fn is_empty(&self) -> bool {
        self.erased.is_empty()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RecoveryStep {
    pub symbol: usize,
    pub row: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct RecoverySchedule {
    pub steps: Vec<RecoveryStep>,
}

impl RecoverySchedule {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum PeelOutcome {
    Success(RecoverySchedule),
    Stuck { remaining: Vec<usize> },
}

impl PeelOutcome {
    pub fn is_success(&self) -> bool {
        matches!(self, PeelOutcome::Success(_))
    }
}

/// Peeling decoder bound to one code. Holds the column-to-row adjacency so
/// repeated decodes skip rows that touch no erasure.
pub struct Decoder<'a> {
    h: &'a BitMatrix,
    adjacency: Vec<Vec<usize>>,
}

impl<'a> Decoder<'a> {
    pub fn new(h: &'a BitMatrix) -> Self {
        Self {
            h,
            adjacency: h.column_adjacency(),
        }
    }

    pub fn for_code(code: &'a CodeInstance) -> Self {
        Self::new(&code.h)
    }

    pub fn peel(&self, pattern: &ErasurePattern) -> Result<PeelOutcome> {
        let n = self.h.cols();
        if let Some(&bad) = pattern.indices().iter().find(|&&i| i >= n) {
            return Err(Error::IndexOutOfRange {
                index: bad,
                limit: n,
            });
        }
        let mut mask = vec![0u64; word_count(n)];
        for &i in pattern.indices() {
            mask[i / WORD_BITS] |= 1 << (i % WORD_BITS);
        }
        let mut candidates: Vec<usize> = pattern
            .indices()
            .iter()
            .flat_map(|&c| self.adjacency[c].iter().copied())
            .collect();
        candidates.sort_unstable();
        candidates.dedup();

        let mut remaining = pattern.len();
        let mut steps = Vec::with_capacity(remaining);
        // Rows outside `candidates` meet no erasure, so scanning only these
        // in ascending order is the same as scanning every row of H.
        'scan: while remaining > 0 {
            for &row in &candidates {
                let words = self.h.row_words(row);
                let mut hits = 0;
                let mut found = 0;
                for (k, (&w, &m)) in words.iter().zip(&mask).enumerate() {
                    let x = w & m;
                    if x != 0 {
                        hits += x.count_ones();
                        found = k * WORD_BITS + x.trailing_zeros() as usize;
                    }
                }
                if hits == 1 {
                    mask[found / WORD_BITS] &= !(1 << (found % WORD_BITS));
                    steps.push(RecoveryStep { symbol: found, row });
                    remaining -= 1;
                    continue 'scan;
                }
            }
            let left = pattern
                .indices()
                .iter()
                .copied()
                .filter(|&i| mask[i / WORD_BITS] >> (i % WORD_BITS) & 1 == 1)
                .collect();
            return Ok(PeelOutcome::Stuck { remaining: left });
        }
        Ok(PeelOutcome::Success(RecoverySchedule { steps }))
    }
}

/// Canonical peeling decode of `pattern` against the rows of `code.h`.
pub fn peel(code: &CodeInstance, pattern: &ErasurePattern) -> Result<PeelOutcome> {
    Decoder::for_code(code).peel(pattern)
}

/// Whether any decoder could fill the erasures: the erased columns of H are
/// linearly independent.
pub fn correctable_ml(code: &CodeInstance, pattern: &ErasurePattern) -> Result<bool> {
    code.h.columns_independent(pattern.indices())
}

/// Replays `schedule` against `pattern`: at every step the row must contain
/// the step's symbol and no other still-erased symbol, and every erased
/// symbol must be repaired exactly once.
pub fn schedule_is_valid(h: &BitMatrix, pattern: &ErasurePattern, schedule: &RecoverySchedule) -> bool {
    let mut erased: Vec<usize> = pattern.indices().to_vec();
    for step in &schedule.steps {
        if step.row >= h.rows() {
            return false;
        }
        let Some(pos) = erased.iter().position(|&e| e == step.symbol) else {
            return false;
        };
        let support = h.row_support(step.row);
        let touched = erased.iter().filter(|e| support.contains(e)).count();
        if !support.contains(&step.symbol) || touched != 1 {
            return false;
        }
        erased.swap_remove(pos);
    }
    erased.is_empty()
}

/// Allocation-free decoder for small patterns, used by exhaustive sweeps.
/// Reports only the residual set (which does not depend on step order).
pub(crate) struct SmallPeeler<'a> {
    adjacency: &'a [Vec<usize>],
    rows: Vec<usize>,
    masks: Vec<u64>,
}

impl<'a> SmallPeeler<'a> {
    pub(crate) fn new(adjacency: &'a [Vec<usize>]) -> Self {
        Self {
            adjacency,
            rows: Vec::with_capacity(64),
            masks: Vec::with_capacity(64),
        }
    }

    /// Bitmask (over positions in `erased`) of the symbols left unrecovered.
    /// `erased` must hold at most 64 distinct columns.
    #[inline]
    pub(crate) fn residual(&mut self, erased: &[usize]) -> u64 {
        debug_assert!(erased.len() <= 64);
        self.rows.clear();
        self.masks.clear();
        for (k, &c) in erased.iter().enumerate() {
            for &row in &self.adjacency[c] {
                match self.rows.iter().position(|&x| x == row) {
                    Some(p) => self.masks[p] |= 1 << k,
                    None => {
                        self.rows.push(row);
                        self.masks.push(1 << k);
                    }
                }
            }
        }
        let mut remaining = if erased.len() == 64 {
            u64::MAX
        } else {
            (1u64 << erased.len()) - 1
        };
        loop {
            let before = remaining;
            for &m in &self.masks {
                let x = m & remaining;
                if x != 0 && x & (x - 1) == 0 {
                    remaining &= !x;
                }
            }
            if remaining == 0 || remaining == before {
                return remaining;
            }
        }
    }
}

/// Independence test over pre-packed columns with a reusable buffer.
pub(crate) struct SmallIndependence<'a> {
    columns: &'a [Vec<u64>],
    scratch: Vec<Vec<u64>>,
}

impl<'a> SmallIndependence<'a> {
    pub(crate) fn new(columns: &'a [Vec<u64>]) -> Self {
        Self {
            columns,
            scratch: Vec::new(),
        }
    }

    #[inline]
    pub(crate) fn independent(&mut self, cols: &[usize]) -> bool {
        let words = self.columns.first().map_or(0, Vec::len);
        if words == 1 {
            // Single-word fast path.
            let mut basis = [0u64; 64];
            for (len, &c) in cols.iter().enumerate() {
                let mut v = self.columns[c][0];
                for &b in &basis[..len] {
                    let low = b & b.wrapping_neg();
                    if v & low != 0 {
                        v ^= b;
                    }
                }
                if v == 0 {
                    return false;
                }
                basis[len] = v;
            }
            return true;
        }
        let mut scratch = std::mem::take(&mut self.scratch);
        scratch.resize(cols.len(), Vec::new());
        scratch.truncate(cols.len());
        for (dst, &c) in scratch.iter_mut().zip(cols) {
            dst.clear();
            dst.extend_from_slice(&self.columns[c]);
        }
        let ok = vectors_independent(std::mem::take(&mut scratch));
        self.scratch = scratch;
        ok
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StuckExemplar {
    pub pattern: Vec<usize>,
    pub residual: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SimulationReport {
    pub trials: u64,
    pub max_erasures: usize,
    pub seed: u64,
    pub successes: u64,
    pub stuck: u64,
    /// `None` when no trials ran.
    pub success_rate: Option<f64>,
    /// Mean number of repair steps over successful trials.
    pub mean_schedule_length: Option<f64>,
    pub stuck_exemplars: Vec<StuckExemplar>,
}

pub const DEFAULT_EXEMPLAR_CAP: usize = 10;

/// Monte Carlo decoding. Each trial draws a pattern uniformly from all
/// patterns of size at most `max_erasures` (so size `s` has weight `C(n, s)`)
/// and runs the canonical peeler.
pub fn simulate(code: &CodeInstance, trials: u64, max_erasures: usize, seed: u64) -> Result<SimulationReport> {
    let n = code.n;
    if max_erasures > n {
        return Err(Error::InvalidParameters(format!(
            "max_erasures {max_erasures} exceeds n = {n}"
        )));
    }
    let mut report = SimulationReport {
        trials,
        max_erasures,
        seed,
        successes: 0,
        stuck: 0,
        success_rate: None,
        mean_schedule_length: None,
        stuck_exemplars: Vec::new(),
    };
    if trials == 0 {
        return Ok(report);
    }
    let weights: Vec<f64> = (0..=max_erasures)
        .map(|s| binomial(n as u64, s as u64) as f64)
        .collect();
    let sizes = WeightedIndex::new(&weights)
        .map_err(|e| Error::InvalidParameters(format!("size distribution: {e}")))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let decoder = Decoder::for_code(code);
    let mut total_steps = 0u64;
    for _ in 0..trials {
        let s = sizes.sample(&mut rng);
        let picked = rand::seq::index::sample(&mut rng, n, s).into_vec();
        let pattern = ErasurePattern::new(picked, n)?;
        match decoder.peel(&pattern)? {
            PeelOutcome::Success(schedule) => {
                report.successes += 1;
                total_steps += schedule.len() as u64;
            }
            PeelOutcome::Stuck { remaining } => {
                report.stuck += 1;
                if report.stuck_exemplars.len() < DEFAULT_EXEMPLAR_CAP {
                    report.stuck_exemplars.push(StuckExemplar {
                        pattern: pattern.indices().to_vec(),
                        residual: remaining,
                    });
                }
            }
        }
    }
    report.success_rate = Some(report.successes as f64 / trials as f64);
    if report.successes > 0 {
        report.mean_schedule_length = Some(total_steps as f64 / report.successes as f64);
    }
    Ok(report)
}
