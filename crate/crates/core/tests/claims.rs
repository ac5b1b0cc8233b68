//! Recovery claims for the Fano-plane codes beyond the acceptance suite.

use seqrec_core::analysis::{min_distance_upto, verify_exhaustive, MinDistance, VerifyMode, VerifyOptions};
use seqrec_core::combinatorics::binomial;
use seqrec_core::construction::{build_t4, build_t5, CodeInstance, Symbol};
use seqrec_core::decoder::{peel, simulate, ErasurePattern, PeelOutcome};
use seqrec_core::graph::{projective_plane_incidence, random_girth6};

fn fano_t4() -> CodeInstance {
    build_t4(&projective_plane_incidence(2).unwrap()).unwrap()
}

/// Whether `set` contains an edge of some copy together with both of its
/// endpoint nodes in that copy and both endpoint `N` parities.
fn has_five_core(code: &CodeInstance, set: &[usize]) -> bool {
    let l = code.l();
    let idx = &code.index;
    set.iter().any(|&c| match code.symbol(c) {
        Some(Symbol::Edge { copy, edge }) => {
            let (u, v) = code.base_graph.edges()[edge];
            [idx.node(copy, u), idx.node(copy, l + v), idx.n_sym(u), idx.n_sym(l + v)]
                .iter()
                .all(|s| set.contains(s))
        }
        _ => false,
    })
}

#[test]
fn five_erasure_failures_are_exactly_the_cores() {
    let code = fano_t4();
    let opts = VerifyOptions::new(5, VerifyMode::Both).budget(binomial(119, 5));
    let rep = verify_exhaustive(&code, &opts).unwrap();
    assert_eq!(rep.patterns_total, 182_637_273);
    // One core per edge per copy: 21 * 3.
    assert_eq!(rep.peel_failure_count, 63);
    assert_eq!(rep.ml_failure_count, 63);
    assert_eq!(rep.peel_failures, rep.ml_failures);
    for f in &rep.peel_failures {
        let p = ErasurePattern::new(f.clone(), code.n).unwrap();
        let PeelOutcome::Stuck { remaining } = peel(&code, &p).unwrap() else {
            panic!("{f:?} peeled");
        };
        assert!(has_five_core(&code, &remaining), "{remaining:?}");
    }
}

#[test]
fn smaller_patterns_on_five_erasure_code() {
    let code = build_t5(&projective_plane_incidence(2).unwrap()).unwrap();
    for t in 0..=4 {
        let rep = verify_exhaustive(&code, &VerifyOptions::new(t, VerifyMode::Both)).unwrap();
        assert!(rep.verified, "t={t}");
    }
}

#[test]
fn four_erasure_sweep_with_ml_oracle() {
    let code = fano_t4();
    let rep = verify_exhaustive(&code, &VerifyOptions::new(4, VerifyMode::Both)).unwrap();
    assert_eq!(rep.patterns_total, 7_940_751);
    assert!(rep.verified);
}

#[test]
fn random_base_graph_codes() {
    let g = random_girth6(9, 3, 11, 2000).unwrap();
    let t4 = build_t4(&g).unwrap();
    assert_eq!(t4.n, 9 * 9 + 2 * 9 * 3 + 18);
    assert!(verify_exhaustive(&t4, &VerifyOptions::new(4, VerifyMode::Peel)).unwrap().verified);
    assert_eq!(min_distance_upto(&t4, 5, u64::MAX).unwrap(), MinDistance::Exact(5));
    let t5 = build_t5(&g).unwrap();
    assert_eq!(min_distance_upto(&t5, 5, u64::MAX).unwrap(), MinDistance::AboveDmax);
}

#[test]
fn simulation_up_to_four_always_succeeds() {
    let rep = simulate(&fano_t4(), 100_000, 4, 17).unwrap();
    assert_eq!(rep.successes, 100_000);
    assert_eq!(rep.success_rate, Some(1.0));
    assert!(rep.stuck_exemplars.is_empty());
}

#[test]
fn simulation_at_five_finds_cores() {
    // About 63 / C(119, 5) of draws hit a core, so this needs many trials.
    let code = fano_t4();
    let rep = simulate(&code, 10_000_000, 5, 3).unwrap();
    assert!(rep.stuck > 0);
    assert!(rep.success_rate.unwrap() < 1.0);
    for ex in &rep.stuck_exemplars {
        assert!(has_five_core(&code, &ex.residual));
    }
}
