use std::f64::consts::PI;
use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use turing_flow::forms::ns_terms;
use turing_flow::gluing::{build_turing_flow, BuildDescriptor, GluedStructure};
use turing_flow::ode::OdeOptions;
use turing_flow::shift::{check_turing_equivalence, compile_shift, encode_config, shift_step};
use turing_flow::suspension::{disk_map, poincare_return, SectionSpec, SuspensionStructure};
use turing_flow::tm::{samples, Tape};
use turing_flow::HamiltonianIsotopy;

fn discrete(c: &mut Criterion) {
    let m = samples::loop3();
    let g = compile_shift(&m);
    c.bench_function("equivalence/loop3/512-tapes", |b| {
        let tapes: Vec<Tape> = Tape::enumerate(-4, 4).collect();
        b.iter(|| tapes.iter().filter(|t| check_turing_equivalence(&m, &g, t, 200, 8).agreement).count())
    });

    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let r = samples::random(&mut rng, 5);
    let shift = compile_shift(&r);
    c.bench_function("shift_step/random-5-state", |b| {
        b.iter_batched(
            || encode_config(&r, &samples::random_config(&mut rng, &r, 16)),
            |p| shift_step(&shift, &p).unwrap(),
            BatchSize::SmallInput,
        )
    });
}

fn flows(c: &mut Criterion) {
    let iso = HamiltonianIsotopy::rotation(PI / 3.0, 0.5, 0.8);
    let f = disk_map(iso.clone(), OdeOptions::with_tol(1e-9)).unwrap();
    c.bench_function("disk_map/rotation", |b| b.iter(|| f.apply(black_box([0.2, 0.1])).unwrap()));

    let s = SuspensionStructure { isotopy: iso, c: 1.0 };
    let section = SectionSpec { ode: OdeOptions::with_tol(1e-9), ..SectionSpec::default() };
    c.bench_function("poincare_return/rotation", |b| {
        b.iter(|| poincare_return(&s.reeb(), &section, black_box([0.2, 0.1])).unwrap())
    });
}

fn glued(c: &mut Criterion) {
    let d = BuildDescriptor::rotation(PI / 3.0);
    let s = GluedStructure::new(d.isotopy.clone(), d.tori, d.c).unwrap();
    // A collar point, where every term of beta~ is active.
    let p = [0.5 + 0.2, 0.5 + 0.05, 0.4];
    c.bench_function("ns_terms/collar", |b| b.iter(|| ns_terms(&s.field(), &s.metric(), black_box(&p)).unwrap()));

    let mut group = c.benchmark_group("build");
    group.sample_size(10);
    let small = BuildDescriptor { samples: d.samples.capped(1_000), ..d.clone() };
    group.bench_function("rotation/1000-samples", |b| b.iter(|| build_turing_flow(&small).unwrap().1.pass));
    group.finish();
}

criterion_group!(benches, discrete, flows, glued);
criterion_main!(benches);
