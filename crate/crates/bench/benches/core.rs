use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use msq_core::stats::{lda_fit, pca_fit, symmetric_eigen, DataMatrix, Matrix};
use msq_core::{enumerate_family, tally_patterns, to_parity, Family, FamilySpec, ParityMatrix, TallyMode};

fn enumeration(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumerate");
    group.sample_size(10);
    for (family, order) in [(Family::General, 4), (Family::Associative, 4), (Family::Ultra, 5)] {
        let spec = FamilySpec::new(family, order).unwrap();
        group.bench_function(spec.fingerprint(), |b| b.iter(|| enumerate_family(black_box(&spec)).unwrap()));
    }
    group.finish();
}

fn random_symmetric(d: usize, rng: &mut ChaCha8Rng) -> Matrix {
    let mut m = Matrix::zeros(d, d);
    for i in 0..d {
        for j in i..d {
            let v: f64 = rng.gen_range(-1.0..1.0);
            m[(i, j)] = v;
            m[(j, i)] = v;
        }
    }
    m
}

fn eigen(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for d in [16, 64] {
        let m = random_symmetric(d, &mut rng);
        c.bench_function(&format!("jacobi/{d}"), |b| b.iter(|| symmetric_eigen(black_box(&m)).unwrap()));
    }
}

fn patterns_and_projections(c: &mut Criterion) {
    let spec = FamilySpec::new(Family::General, 4).unwrap();
    let squares = enumerate_family(&spec).unwrap().squares;
    c.bench_function("tally/general-4", |b| {
        b.iter(|| tally_patterns(black_box(&squares).iter(), TallyMode::Canonical).unwrap())
    });
    let patterns: Vec<ParityMatrix> = squares.iter().map(to_parity).collect();
    let x = DataMatrix::from_patterns(&patterns).unwrap();
    let (ids, _) = x.class_ids();
    c.bench_function("pca/general-4", |b| b.iter(|| pca_fit(black_box(&x), 2).unwrap()));
    c.bench_function("lda/general-4", |b| b.iter(|| lda_fit(black_box(&x), &ids, 2).unwrap()));
}

criterion_group!(benches, enumeration, eigen, patterns_and_projections);
criterion_main!(benches);
