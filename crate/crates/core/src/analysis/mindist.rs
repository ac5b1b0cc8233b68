use std::collections::HashMap;

use serde::Serialize;

use crate::combinatorics::{binomial, for_each_combination};
use crate::construction::CodeInstance;
use crate::error::{Error, Result};
use crate::gf2::BitMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MinDistance {
    Exact(usize),
    AboveDmax,
}

pub fn min_distance_upto(code: &CodeInstance, dmax: usize, budget: u64) -> Result<MinDistance> {
    min_distance_upto_matrix(&code.h, dmax, budget)
}

/// Smallest `w <= dmax` such that some `w` columns of `h` sum to zero, which
/// is the minimum distance of the code with parity-check matrix `h`.
///
/// Each size `w` is split as `a + b` with `a = w / 2`: sums of `a`-subsets
/// are tabulated and every `b`-subset is looked up against disjoint entries.
pub fn min_distance_upto_matrix(h: &BitMatrix, dmax: usize, budget: u64) -> Result<MinDistance> {
    let n = h.cols();
    let required = binomial(n as u64, dmax as u64);
    if required > budget {
        return Err(Error::BudgetExceeded {
            required: u128::from(required),
            budget: u128::from(budget),
        });
    }
    let columns = h.packed_columns();
    let words = columns.first().map_or(0, Vec::len);
    let sum_of = |subset: &[usize], out: &mut Vec<u64>| {
        out.clear();
        out.resize(words, 0);
        for &c in subset {
            for (o, x) in out.iter_mut().zip(&columns[c]) {
                *o ^= x;
            }
        }
    };

    let mut tables: HashMap<usize, HashMap<Vec<u64>, Vec<Vec<usize>>>> = HashMap::new();
    let mut buf = Vec::with_capacity(words);
    for w in 1..=dmax.min(n) {
        let a = w / 2;
        let b = w - a;
        let table = tables.entry(a).or_insert_with(|| {
            let mut t: HashMap<Vec<u64>, Vec<Vec<usize>>> = HashMap::new();
            let mut buf = Vec::with_capacity(words);
            for_each_combination(n, a, |s| {
                sum_of(s, &mut buf);
                t.entry(buf.clone()).or_default().push(s.to_vec());
            });
            t
        });
        let mut found = false;
        for_each_combination(n, b, |s| {
            if found {
                return;
            }
            sum_of(s, &mut buf);
            if let Some(halves) = table.get(&buf) {
                found = halves.iter().any(|half| half.iter().all(|c| !s.contains(c)));
            }
        });
        if found {
            return Ok(MinDistance::Exact(w));
        }
    }
    Ok(MinDistance::AboveDmax)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construction::{build_t4, build_t5};
    use crate::graph::BipartiteGraph;
    use proptest::prelude::*;

    /// Smallest dependent column set, by checking every subset's rank.
    fn brute_force(h: &BitMatrix, dmax: usize) -> MinDistance {
        for w in 1..=dmax.min(h.cols()) {
            let mut hit = false;
            for_each_combination(h.cols(), w, |s| {
                hit = hit || !h.columns_independent(s).unwrap();
            });
            if hit {
                return MinDistance::Exact(w);
            }
        }
        MinDistance::AboveDmax
    }

    #[test]
    fn repetition_code() {
        let h = BitMatrix::from_dense(&[vec![1, 1]]);
        assert_eq!(min_distance_upto_matrix(&h, 3, 100).unwrap(), MinDistance::Exact(2));
    }

    #[test]
    fn zero_column_gives_one() {
        let h = BitMatrix::from_dense(&[vec![1, 0, 1]]);
        assert_eq!(min_distance_upto_matrix(&h, 3, 100).unwrap(), MinDistance::Exact(1));
    }

    #[test]
    fn small_constructions_match_brute_force() {
        let single = BipartiteGraph::new(1, 1, vec![(0, 0)]).unwrap();
        let hexagon = BipartiteGraph::new(3, 2, (0..3).flat_map(|u| [(u, u), (u, (u + 1) % 3)]).collect())
            .unwrap();
        for g in [single, hexagon] {
            for code in [build_t4(&g).unwrap(), build_t5(&g).unwrap()] {
                let d = min_distance_upto(&code, 6, u64::MAX).unwrap();
                assert_eq!(d, brute_force(&code.h, 6));
            }
        }
    }

    #[test]
    fn budget_enforced() {
        let h = BitMatrix::identity(50);
        assert!(matches!(
            min_distance_upto_matrix(&h, 5, 1000),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    proptest! {
        #[test]
        fn agrees_with_brute_force(rows in proptest::collection::vec(proptest::collection::vec(0u8..2, 12), 1..7)) {
            let h = BitMatrix::from_dense(&rows);
            prop_assert_eq!(min_distance_upto_matrix(&h, 5, u64::MAX).unwrap(), brute_force(&h, 5));
        }
    }
}
