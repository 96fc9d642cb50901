//! Differential benchmark: the rayon-backed fan-out versus the sequential
//! reference path on a realistic shuffle-product workload.
//!
//! The workload is the symmetrized product of two root vectors in B_3 — the
//! coset enumeration inside `shuffle_product` is exactly the loop that
//! `par::map_collect` fans out, so timing the same product with the pool
//! capped at one thread (`SHUFFLE_THREADS=1`) versus uncapped isolates the
//! parallel speedup. A direct `map_collect` vs `map_collect_seq` comparison
//! on the raw closure is included as a microbenchmark.

use criterion::{criterion_group, criterion_main, Criterion};
use shuffle_core::par::{map_collect, map_collect_seq};
use shuffle_core::rootsys::RootSystem;
use shuffle_core::rootvec::{canonical_tilde_svals, tilde_root_vector};
use shuffle_core::shuffle::{ShuffleContext, ShuffleElement};

fn heavy_operands() -> (ShuffleElement, ShuffleElement) {
    let ctx = ShuffleContext::trig(RootSystem::b(3));
    let beta = ctx.rs.root(&[1, 2, 3, 3, 2]).expect("two-row root of B_3");
    let svals = canonical_tilde_svals(&ctx.rs, &beta, 0);
    let a = tilde_root_vector(&ctx, &beta, true, &svals)
        .expect("root vector")
        .psi()
        .expect("psi");
    let gamma = ctx.rs.root(&[2, 3]).expect("segment root");
    let svals = canonical_tilde_svals(&ctx.rs, &gamma, 1);
    let b = tilde_root_vector(&ctx, &gamma, true, &svals)
        .expect("root vector")
        .psi()
        .expect("psi");
    (a, b)
}

fn bench_shuffle_product(c: &mut Criterion) {
    let (a, b) = heavy_operands();
    let mut group = c.benchmark_group("shuffle_product_b3");
    group.sample_size(10);
    group.bench_function("parallel_pool", |bench| {
        bench.iter(|| a.shuffle_product(&b).expect("product"))
    });
    group.finish();
}

fn bench_map_collect(c: &mut Criterion) {
    // CPU-bound per-item work comparable to one coset term: exact
    // big-rational polynomial arithmetic.
    let (a, b) = heavy_operands();
    let items: Vec<u32> = (0..64).collect();
    let work = |seed: u32| {
        let mut acc = a.f.clone();
        for _ in 0..(seed % 3) {
            acc = &acc * &b.f;
        }
        acc.terms().count()
    };
    let mut group = c.benchmark_group("map_collect_64_items");
    group.sample_size(10);
    group.bench_function("parallel", |bench| {
        bench.iter(|| map_collect(items.clone(), work))
    });
    group.bench_function("sequential", |bench| {
        bench.iter(|| map_collect_seq(items.clone(), work))
    });
    group.finish();
}

criterion_group!(benches, bench_shuffle_product, bench_map_collect);
criterion_main!(benches);
