//! Rates, the four-erasure rate bound, exhaustive verification, minimum
//! distance search and the audit of the bound's counting argument.

mod audit;
mod mindist;
mod verify;

pub use audit::{bound_audit, bound_audit_code, AuditChecks, AuditHypotheses, AuditReport, Inequality};
pub use mindist::{min_distance_upto, min_distance_upto_matrix, MinDistance};
pub use verify::{verify_exhaustive, VerifyMode, VerifyOptions, VerifyReport};

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::construction::CodeInstance;
use crate::error::{Error, Result};

/// Default cap on enumerated patterns or column subsets.
pub const DEFAULT_BUDGET: u64 = 500_000_000;

/// Default cap on stored failure patterns (counts stay exact).
pub const DEFAULT_FAILURE_CAP: usize = 100;

/// An exact rational in lowest terms, serialized as `{"num": .., "den": ..}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Exact {
    pub num: i128,
    pub den: i128,
}

impl From<Ratio<u64>> for Exact {
    fn from(r: Ratio<u64>) -> Self {
        Exact {
            num: i128::from(*r.numer()),
            den: i128::from(*r.denom()),
        }
    }
}

impl From<Ratio<i128>> for Exact {
    fn from(r: Ratio<i128>) -> Self {
        Exact {
            num: *r.numer(),
            den: *r.denom(),
        }
    }
}

impl std::fmt::Display for Exact {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// Upper bound `r^2 / (r^2 + 2r + 2)` on the rate of a code with locality `r`
/// and sequential recovery from four erasures.
pub fn rate_bound(r: u64) -> Result<Ratio<u64>> {
    if r == 0 {
        return Err(Error::InvalidR);
    }
    Ok(Ratio::new(r * r, r * r + 2 * r + 2))
}

/// `(n - rank H) / n`.
pub fn rate(code: &CodeInstance) -> Ratio<u64> {
    let n = code.h.cols() as u64;
    if n == 0 {
        return Ratio::from_integer(0);
    }
    Ratio::new(n - code.h.rank() as u64, n)
}

/// Whether a four-erasure code meets the rate bound exactly.
pub fn optimality_check(code: &CodeInstance) -> Result<bool> {
    if code.t != 4 {
        return Err(Error::WrongT {
            expected: 4,
            actual: code.t,
        });
    }
    Ok(rate(code) == rate_bound(code.r as u64)?)
}
