use criterion::{black_box, criterion_group, criterion_main, Criterion};

use prohecke::verify::{self, Suite, SuiteParams};
use prohecke::Side;
use prohecke_bench::{fixture, longest};

fn hecke(c: &mut Criterion) {
    for (preset, p) in [("SL2", 3), ("SL3", 3), ("Sp4", 3)] {
        let (s, basis) = fixture(preset, p, 4);
        let long = longest(&s, &basis);
        let (x, y) = (&long[0], &long[long.len() / 2]);
        c.bench_function(&format!("{preset} mul_basis ℓ=4"), |b| {
            b.iter(|| s.alg.mul_basis(black_box(x), black_box(y)))
        });
        c.bench_function(&format!("{preset} iota ℓ=4"), |b| {
            b.iter(|| s.alg.iota_basis(black_box(x)))
        });
        let phi = s.top.phi(y.clone());
        let tau = s.alg.tau(x.clone());
        c.bench_function(&format!("{preset} E^d right action ℓ=4"), |b| {
            b.iter(|| s.top.act(black_box(&tau), black_box(&phi), Side::Right))
        });
    }
}

fn group(c: &mut Criterion) {
    let (s, basis) = fixture("G2sc", 5, 6);
    let long = longest(&s, &basis);
    let (x, y) = (&long[0], &long[long.len() - 1]);
    c.bench_function("G2sc pro-p mul", |b| {
        b.iter(|| s.group.mul(black_box(x), black_box(y)))
    });
    c.bench_function("G2sc decompose", |b| {
        b.iter(|| s.group.decompose(black_box(x)))
    });
    let weyl = s.group.weyl();
    c.bench_function("G2sc length closed form", |b| {
        b.iter(|| weyl.length(black_box(&x.w)))
    });
    c.bench_function("G2sc length brute force", |b| {
        b.iter(|| weyl.length_bruteforce(black_box(&x.w)))
    });
}

fn suites(c: &mut Criterion) {
    let (s, _) = fixture("SL3", 3, 0);
    let params = SuiteParams {
        max_len: 2,
        samples: 100,
        seed: 1,
    };
    let mut g = c.benchmark_group("suites");
    g.sample_size(10);
    for suite in [Suite::Assoc, Suite::Bimodule, Suite::Supersingular] {
        g.bench_function(suite.name(), |b| {
            b.iter(|| verify::run(&s, suite, &params).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, hecke, group, suites);
criterion_main!(benches);
