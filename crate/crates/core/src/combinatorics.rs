//! k-subsets of `0..n` in colexicographic order, with ranking, so a sweep can
//! be cut into contiguous rank ranges.
//!
//! Combinations are ascending index slices `c[0] < c[1] < ... < c[k-1]`;
//! their colex rank is `sum C(c[i], i + 1)`.

/// `C(n, k)`, saturating at `u64::MAX`.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * u128::from(n - i) / u128::from(i + 1);
        if acc > u128::from(u64::MAX) {
            return u64::MAX;
        }
    }
    acc as u64
}

pub fn colex_rank(comb: &[usize]) -> u64 {
    comb.iter()
        .enumerate()
        .map(|(i, &c)| binomial(c as u64, i as u64 + 1))
        .sum()
}

/// The `rank`-th `k`-subset in colex order.
pub fn colex_unrank(mut rank: u64, k: usize) -> Vec<usize> {
    let mut out = vec![0; k];
    for i in (0..k).rev() {
        let want = i as u64 + 1;
        // Largest c with C(c, i+1) <= rank; C(c, i+1) grows with c.
        let mut c = i;
        while binomial(c as u64 + 1, want) <= rank {
            c += 1;
        }
        out[i] = c;
        rank -= binomial(c as u64, want);
    }
    out
}

/// Advances `comb` to its colex successor among subsets of `0..n`.
/// Returns false (leaving `comb` unspecified) past the last one.
#[inline]
pub fn colex_next(comb: &mut [usize], n: usize) -> bool {
    let k = comb.len();
    for i in 0..k {
        let limit = if i + 1 < k { comb[i + 1] } else { n };
        if comb[i] + 1 < limit {
            comb[i] += 1;
            for (j, c) in comb[..i].iter_mut().enumerate() {
                *c = j;
            }
            return true;
        }
    }
    false
}

/// Calls `f` on every `k`-subset of `0..n`, in colex order.
pub fn for_each_combination(n: usize, k: usize, mut f: impl FnMut(&[usize])) {
    if k > n {
        return;
    }
    let mut comb: Vec<usize> = (0..k).collect();
    loop {
        f(&comb);
        if !colex_next(&mut comb, n) {
            return;
        }
    }
}
