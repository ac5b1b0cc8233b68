use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::combinatorics::{binomial, colex_next, colex_unrank};
use crate::construction::CodeInstance;
use crate::decoder::{SmallIndependence, SmallPeeler};
use crate::error::{Error, Result};

use super::{DEFAULT_BUDGET, DEFAULT_FAILURE_CAP};

/// Patterns per work unit. Fixed so that results do not depend on the
/// number of workers.
const CHUNK: u64 = 1 << 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VerifyMode {
    Peel,
    Ml,
    Both,
}

impl VerifyMode {
    fn peel(self) -> bool {
        matches!(self, VerifyMode::Peel | VerifyMode::Both)
    }

    fn ml(self) -> bool {
        matches!(self, VerifyMode::Ml | VerifyMode::Both)
    }
}

impl std::str::FromStr for VerifyMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "peel" => Ok(VerifyMode::Peel),
            "ml" => Ok(VerifyMode::Ml),
            "both" => Ok(VerifyMode::Both),
            _ => Err(Error::InvalidParameters(format!("unknown mode {s:?}"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub t: usize,
    pub mode: VerifyMode,
    pub workers: usize,
    pub budget: u64,
    pub failure_cap: usize,
}

impl VerifyOptions {
    pub fn new(t: usize, mode: VerifyMode) -> Self {
        Self {
            t,
            mode,
            workers: 1,
            budget: DEFAULT_BUDGET,
            failure_cap: DEFAULT_FAILURE_CAP,
        }
    }

    pub fn workers(mut self, workers: usize) -> Self {
        self.workers = workers;
        self
    }

    pub fn budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }

    pub fn failure_cap(mut self, cap: usize) -> Self {
        self.failure_cap = cap;
        self
    }
}

/// Outcome of an exhaustive sweep over every erasure pattern of one size.
/// Failure lists hold the first `failure_cap` failures in colex order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub t_checked: usize,
    pub mode: VerifyMode,
    pub patterns_total: u64,
    pub peel_failure_count: u64,
    pub peel_failures: Vec<Vec<usize>>,
    pub ml_failure_count: u64,
    pub ml_failures: Vec<Vec<usize>>,
    pub verified: bool,
    #[serde(skip)]
    pub elapsed: Duration,
}

#[derive(Default)]
struct ChunkResult {
    peel_count: u64,
    peel: Vec<Vec<usize>>,
    ml_count: u64,
    ml: Vec<Vec<usize>>,
}

/// Checks every erasure pattern of size exactly `opts.t`. Under peeling,
/// passing at size `t` implies passing at every smaller size, since a subset
/// of a peelable set is peelable.
pub fn verify_exhaustive(code: &CodeInstance, opts: &VerifyOptions) -> Result<VerifyReport> {
    let started = Instant::now();
    let n = code.h.cols();
    let t = opts.t;
    if t > 64 || t > n {
        return Err(Error::InvalidParameters(format!("t={t} with n={n}")));
    }
    let total = binomial(n as u64, t as u64);
    if total > opts.budget {
        return Err(Error::BudgetExceeded {
            required: u128::from(total),
            budget: u128::from(opts.budget),
        });
    }
    let workers = opts.workers.max(1);
    let chunks = total.div_ceil(CHUNK) as usize;
    let adjacency = code.h.column_adjacency();
    let packed = if opts.mode.ml() {
        code.h.packed_columns()
    } else {
        Vec::new()
    };

    let next = AtomicUsize::new(0);
    let results: Mutex<Vec<Option<ChunkResult>>> =
        Mutex::new((0..chunks).map(|_| None).collect());

    let work = || {
        let mut peeler = SmallPeeler::new(&adjacency);
        let mut ind = SmallIndependence::new(&packed);
        loop {
            let c = next.fetch_add(1, Ordering::Relaxed);
            if c >= chunks {
                break;
            }
            let start = c as u64 * CHUNK;
            let count = CHUNK.min(total - start);
            let mut comb = colex_unrank(start, t);
            let mut res = ChunkResult::default();
            for i in 0..count {
                if opts.mode.peel() && peeler.residual(&comb) != 0 {
                    res.peel_count += 1;
                    if res.peel.len() < opts.failure_cap {
                        res.peel.push(comb.clone());
                    }
                }
                if opts.mode.ml() && !ind.independent(&comb) {
                    res.ml_count += 1;
                    if res.ml.len() < opts.failure_cap {
                        res.ml.push(comb.clone());
                    }
                }
                if i + 1 < count {
                    colex_next(&mut comb, n);
                }
            }
            results.lock().expect("worker panicked")[c] = Some(res);
        }
    };

    if workers == 1 {
        work();
    } else {
        std::thread::scope(|s| {
            for _ in 0..workers {
                s.spawn(work);
            }
        });
    }

    let mut report = VerifyReport {
        t_checked: t,
        mode: opts.mode,
        patterns_total: total,
        peel_failure_count: 0,
        peel_failures: Vec::new(),
        ml_failure_count: 0,
        ml_failures: Vec::new(),
        verified: false,
        elapsed: Duration::ZERO,
    };
    for res in results.into_inner().expect("worker panicked") {
        let res = res.expect("every chunk is processed");
        report.peel_failure_count += res.peel_count;
        report.ml_failure_count += res.ml_count;
        let room = opts.failure_cap - report.peel_failures.len();
        report.peel_failures.extend(res.peel.into_iter().take(room));
        let room = opts.failure_cap - report.ml_failures.len();
        report.ml_failures.extend(res.ml.into_iter().take(room));
    }
    report.verified = report.peel_failure_count == 0 && report.ml_failure_count == 0;
    report.elapsed = started.elapsed();
    Ok(report)
}
