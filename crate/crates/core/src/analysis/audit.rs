//! Measures the counting quantities of the rate-bound argument on a concrete
//! matrix and evaluates the inequalities built from them.
//!
//! From the rows of weight at most `r + 1`, a basis of `m` rows is picked
//! greedily by ascending row index. Within that basis:
//!
//! * `s1` counts weight-1 columns; the rows holding them are the "D rows";
//! * `s2` counts weight-2 columns, split into `s21` (exactly one 1 in a D row)
//!   and `s22` (everything else);
//! * `p = m - s1 - s21`.
//!
//! The inequalities are evaluated exactly:
//!
//! * lower: `s1 >= (m - p) / (r + 1)`
//! * weight-2: `s2 <= (m - s1 - p) + ((m - s1) r + p) / 2`
//! * length: `3n <= m (3r/2 + 2 - (r - 2) / (2(r + 1)))`
//! * redundancy: `n - k >= m`
//!
//! They follow from the counts only when the structural facts in
//! [`AuditHypotheses`] hold, which is guaranteed for codes with sequential
//! recovery from four erasures but not for arbitrary matrices.

use num_rational::Ratio;
use serde::Serialize;

use crate::construction::CodeInstance;
use crate::error::{Error, Result};
use crate::gf2::BitMatrix;

use super::Exact;

type Q = Ratio<i128>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Inequality {
    pub lhs: Exact,
    pub rhs: Exact,
    pub holds: bool,
}

impl Inequality {
    fn le(lhs: Q, rhs: Q) -> Self {
        Self {
            lhs: lhs.into(),
            rhs: rhs.into(),
            holds: lhs <= rhs,
        }
    }

    fn ge(lhs: Q, rhs: Q) -> Self {
        Self {
            lhs: lhs.into(),
            rhs: rhs.into(),
            holds: lhs >= rhs,
        }
    }

    pub fn is_equality(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// Structural facts the bound argument derives from recoverability.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct AuditHypotheses {
    /// No basis row holds two weight-1 columns.
    pub weight1_rows_distinct: bool,
    /// No weight-2 column has both 1s in D rows.
    pub no_weight2_within_d_rows: bool,
    /// Every non-D row meets at most one `s21` column.
    pub b_rows_at_most_one: bool,
    /// Every column is covered by the basis.
    pub no_empty_columns: bool,
}

impl AuditHypotheses {
    pub fn all(&self) -> bool {
        self.weight1_rows_distinct
            && self.no_weight2_within_d_rows
            && self.b_rows_at_most_one
            && self.no_empty_columns
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct AuditChecks {
    pub ineq_s1_lower: Inequality,
    pub ineq_s2_upper: Inequality,
    pub ineq_length: Inequality,
    pub redundancy: Inequality,
    /// `2n(r+1) = m(r^2 + 2r + 2)`, the equality case of the length bound.
    pub length_equality: bool,
}

impl AuditChecks {
    pub fn all_hold(&self) -> bool {
        self.ineq_s1_lower.holds && self.ineq_s2_upper.holds && self.ineq_length.holds && self.redundancy.holds
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AuditReport {
    pub n: usize,
    pub r: usize,
    pub k: usize,
    pub m: usize,
    pub s1: usize,
    pub s2: usize,
    pub s21: usize,
    pub s22: usize,
    /// May be negative when the hypotheses fail.
    pub p: i64,
    pub basis_rows: Vec<usize>,
    pub hypotheses: AuditHypotheses,
    pub checks: AuditChecks,
}

pub fn bound_audit_code(code: &CodeInstance) -> Result<AuditReport> {
    bound_audit(&code.h, code.r)
}

/// Audits the local rows of `h` for locality `r`. `k` is taken as
/// `cols - rank(h)`.
pub fn bound_audit(h: &BitMatrix, r: usize) -> Result<AuditReport> {
    if r == 0 {
        return Err(Error::InvalidR);
    }
    let limit = r + 1;
    for i in 0..h.rows() {
        let weight = h.row_weight(i);
        if weight > limit {
            return Err(Error::RowTooHeavy { row: i, weight, limit });
        }
    }
    let n = h.cols();
    let k = n - h.rank();

    let basis_rows = greedy_basis(h);
    let basis = h.select_rows(&basis_rows);
    let m = basis_rows.len();
    let col_weights = basis.col_weights();
    let col_rows = basis.column_adjacency();

    let mut is_d_row = vec![false; m];
    let mut weight1_per_row = vec![0usize; m];
    for (j, rows) in col_rows.iter().enumerate() {
        if col_weights[j] == 1 {
            is_d_row[rows[0]] = true;
            weight1_per_row[rows[0]] += 1;
        }
    }
    let s1 = col_weights.iter().filter(|&&w| w == 1).count();
    let s2 = col_weights.iter().filter(|&&w| w == 2).count();

    let mut s21 = 0;
    let mut both_in_d = false;
    let mut b_row_hits = vec![0usize; m];
    for (j, rows) in col_rows.iter().enumerate() {
        if col_weights[j] != 2 {
            continue;
        }
        let (x, y) = (rows[0], rows[1]);
        match (is_d_row[x], is_d_row[y]) {
            (true, false) => {
                s21 += 1;
                b_row_hits[y] += 1;
            }
            (false, true) => {
                s21 += 1;
                b_row_hits[x] += 1;
            }
            (true, true) => both_in_d = true,
            (false, false) => {}
        }
    }
    let s22 = s2 - s21;
    let p = m as i64 - s1 as i64 - s21 as i64;

    let hypotheses = AuditHypotheses {
        weight1_rows_distinct: weight1_per_row.iter().all(|&c| c <= 1),
        no_weight2_within_d_rows: !both_in_d,
        b_rows_at_most_one: b_row_hits.iter().all(|&c| c <= 1),
        no_empty_columns: col_weights.iter().all(|&w| w > 0),
    };

    let q = |x: i64| Q::from_integer(i128::from(x));
    let (nq, rq, mq, s1q, s2q, pq) = (
        q(n as i64),
        q(r as i64),
        q(m as i64),
        q(s1 as i64),
        q(s2 as i64),
        q(p),
    );
    let one = q(1);
    let two = q(2);

    let ineq_s1_lower = Inequality::ge(s1q, (mq - pq) / (rq + one));
    let ineq_s2_upper = Inequality::le(s2q, (mq - s1q - pq) + ((mq - s1q) * rq + pq) / two);
    let coefficient = q(3) * rq / two + two - (rq - two) / (two * (rq + one));
    let ineq_length = Inequality::le(q(3) * nq, mq * coefficient);
    let redundancy = Inequality::ge(q((n - k) as i64), mq);
    let length_equality = 2 * n * (r + 1) == m * (r * r + 2 * r + 2);

    Ok(AuditReport {
        n,
        r,
        k,
        m,
        s1,
        s2,
        s21,
        s22,
        p,
        basis_rows,
        hypotheses,
        checks: AuditChecks {
            ineq_s1_lower,
            ineq_s2_upper,
            ineq_length,
            redundancy,
            length_equality,
        },
    })
}

/// Rows kept when scanning in ascending order and dropping any row in the
/// span of those already kept.
fn greedy_basis(h: &BitMatrix) -> Vec<usize> {
    let mut reduced: Vec<(usize, u32, Vec<u64>)> = Vec::new();
    let mut kept = Vec::new();
    for i in 0..h.rows() {
        let mut v = h.row_words(i).to_vec();
        for (word, bit, b) in &reduced {
            if v[*word] >> bit & 1 == 1 {
                for (x, y) in v.iter_mut().zip(b) {
                    *x ^= y;
                }
            }
        }
        if let Some((word, w)) = v.iter().enumerate().find(|(_, &w)| w != 0) {
            let bit = w.trailing_zeros();
            reduced.push((word, bit, v));
            kept.push(i);
        }
    }
    kept
}
