use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use finalg::decide::{is_s_secondary, SecondaryForm};
use finalg::fractions::FractionRing;
use finalg::laws::{law_suite, universe_battery, Universe};
use finalg::{spectrum, Submodule};
use finalg_bench::{cyclic, regular, set};

fn bench_spectrum(c: &mut Criterion) {
    let r12 = cyclic(12);
    let r36 = cyclic(36);
    c.bench_function("spectrum/Z12", |b| b.iter(|| spectrum(black_box(&r12))));
    c.bench_function("spectrum/Z36", |b| b.iter(|| spectrum(black_box(&r36))));
}

fn bench_lattice(c: &mut Criterion) {
    let m12 = regular(&cyclic(12));
    let m36 = regular(&cyclic(36));
    c.bench_function("submodules/Z12", |b| b.iter(|| m12.submodules().unwrap()));
    c.bench_function("submodules/Z36", |b| b.iter(|| m36.submodules().unwrap()));
    c.bench_function("completely_irreducibles/Z36", |b| {
        b.iter(|| m36.completely_irreducibles().unwrap())
    });
}

fn bench_deciders(c: &mut Criterion) {
    let ring = cyclic(12);
    let s = set(&ring, &[1, 5]);
    let m = regular(&ring);
    let whole = Submodule::whole(&m);
    for form in SecondaryForm::ALL {
        c.bench_function(&format!("s_secondary/Z12/form_{form}"), |b| {
            b.iter(|| is_s_secondary(black_box(&whole), black_box(&s), form).unwrap())
        });
    }
}

fn bench_fractions(c: &mut Criterion) {
    let ring = cyclic(36);
    let s = set(&ring, &[1, 13, 25]);
    c.bench_function("fraction_ring/Z36", |b| {
        b.iter(|| FractionRing::new(black_box(&ring), black_box(&s)))
    });
}

fn bench_laws(c: &mut Criterion) {
    let ring = cyclic(12);
    let u = Universe::plain("bench", ring.clone(), set(&ring, &[1, 5]), regular(&ring)).unwrap();
    c.bench_function("law_suite/Z12", |b| {
        b.iter(|| law_suite(black_box(&u)).unwrap())
    });
    c.bench_function("universe_battery/build", |b| b.iter(universe_battery));
}

criterion_group!(
    benches,
    bench_spectrum,
    bench_lattice,
    bench_deciders,
    bench_fractions,
    bench_laws
);
criterion_main!(benches);
