use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use entrobetti_core::{
    BitMatrix, EvalOptions, LatticeWindow, LaurentMatrix, LaurentPoly, SubshiftPresentation,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_bit_matrix(n: usize, seed: u64) -> BitMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    BitMatrix::from_fn(n, n, |_, _| rng.random_bool(0.5))
}

fn bench_rank(c: &mut Criterion) {
    let mut group = c.benchmark_group("gf2_rank");
    group.sample_size(10);
    for &n in &[1024usize, 4096, 8192] {
        let m = random_bit_matrix(n, 42);
        group.bench_function(format!("dense_{n}x{n}"), |b| {
            b.iter_batched(|| m.clone(), |m| m.rank(), BatchSize::LargeInput)
        });
    }
    group.finish();
}

fn bench_kernel(c: &mut Criterion) {
    let m = random_bit_matrix(2048, 7);
    c.bench_function("gf2_kernel_basis_2048", |b| {
        b.iter_batched(
            || m.clone(),
            |m| m.kernel_basis().len(),
            BatchSize::LargeInput,
        )
    });
}

fn bench_ledrappier_window(c: &mut Criterion) {
    let rel = LaurentMatrix::from_entries(
        1,
        1,
        2,
        vec![LaurentPoly::from_exponents(
            2,
            [[0, 0, 0], [1, 0, 0], [0, 1, 0]],
        )],
    )
    .unwrap();
    let p = SubshiftPresentation::new(1, 2, rel).unwrap();
    let w = LatticeWindow::folner_box(64, 2).unwrap();
    c.bench_function("ledrappier_local_kernel_dim_n64", |b| {
        b.iter(|| p.local_kernel_dim(&w))
    });
    c.bench_function("ledrappier_entropy_schedule_to_32", |b| {
        b.iter(|| {
            p.entropy(&[2, 4, 8, 16, 32], &EvalOptions::default())
                .unwrap()
        })
    });
}

criterion_group!(benches, bench_rank, bench_kernel, bench_ledrappier_window);
criterion_main!(benches);
