use criterion::{criterion_group, criterion_main, BatchSize, Criterion};

use seqrec_core::analysis::{min_distance_upto, verify_exhaustive, VerifyMode, VerifyOptions};
use seqrec_core::decoder::{correctable_ml, Decoder, ErasurePattern};
use seqrec_core::graph::{projective_plane_incidence, random_girth6};
use seqrec_core::{build_t4, build_t5};

fn decoding(c: &mut Criterion) {
    let code = build_t4(&projective_plane_incidence(2).unwrap()).unwrap();
    let dec = Decoder::for_code(&code);
    let four = ErasurePattern::new(vec![0, 1, 63, 105], code.n).unwrap();
    let core = ErasurePattern::new(vec![0, 63, 74, 105, 116], code.n).unwrap();

    c.bench_function("peel/fano_t4/4", |b| b.iter(|| dec.peel(&four).unwrap()));
    c.bench_function("peel/fano_t4/core5", |b| b.iter(|| dec.peel(&core).unwrap()));
    c.bench_function("ml/fano_t4/4", |b| b.iter(|| correctable_ml(&code, &four).unwrap()));
}

fn linear_algebra(c: &mut Criterion) {
    let g = projective_plane_incidence(3).unwrap();
    let code = build_t4(&g).unwrap();
    c.bench_function("rank/pg3_t4", |b| b.iter(|| code.h.rank()));
    c.bench_function("build/pg3_t5", |b| b.iter(|| build_t5(&g).unwrap()));
    let fano = build_t4(&projective_plane_incidence(2).unwrap()).unwrap();
    c.bench_function("mindist/fano_t4/5", |b| b.iter(|| min_distance_upto(&fano, 5, u64::MAX).unwrap()));
}

fn sweeps(c: &mut Criterion) {
    let code = build_t4(&projective_plane_incidence(2).unwrap()).unwrap();
    let mut group = c.benchmark_group("verify");
    group.sample_size(10);
    group.bench_function("fano_t4/peel/3", |b| {
        b.iter(|| verify_exhaustive(&code, &VerifyOptions::new(3, VerifyMode::Peel)).unwrap())
    });
    group.bench_function("fano_t4/both/3", |b| {
        b.iter(|| verify_exhaustive(&code, &VerifyOptions::new(3, VerifyMode::Both)).unwrap())
    });
    group.finish();

    c.bench_function("random_girth6/20x4", |b| {
        b.iter_batched(|| 7u64, |seed| random_girth6(20, 4, seed, 1000).unwrap(), BatchSize::SmallInput)
    });
}

criterion_group!(benches, decoding, linear_algebra, sweeps);
criterion_main!(benches);
