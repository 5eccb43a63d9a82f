use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use turing_flow::forms::*;
use turing_flow::profile::{smooth_step, time_bump, time_bump_integral};
use turing_flow::quadrature::composite;
use turing_flow::sampling::halton;
use turing_flow::shift::*;
use turing_flow::suspension::HamiltonianIsotopy;
use turing_flow::tm::samples;
use turing_flow::tm::*;

fn machine(seed: u64, states: usize) -> TuringMachine {
    samples::random(&mut ChaCha8Rng::seed_from_u64(seed), states)
}

fn tape_strategy(radius: i64) -> impl Strategy<Value = Tape> {
    proptest::collection::btree_set(-radius..=radius, 0..8).prop_map(Tape::from_ones)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn shift_conjugates_step(seed in any::<u64>(), states in 2usize..=5, cfg_seed in any::<u64>()) {
        let m = machine(seed, states);
        let g = compile_shift(&m);
        let c = samples::random_config(&mut ChaCha8Rng::seed_from_u64(cfg_seed), &m, 10);
        let next = m.step(&c).unwrap();
        prop_assert_eq!(shift_step(&g, &encode_config(&m, &c)).unwrap(), encode_config(&m, &next));
    }

    #[test]
    fn encoding_is_injective(seed in any::<u64>(), states in 2usize..=5, a in tape_strategy(6), b in tape_strategy(6), sa in 0usize..5, sb in 0usize..5) {
        let m = machine(seed, states);
        let ca = Configuration::new(sa % states, a);
        let cb = Configuration::new(sb % states, b);
        let (pa, pb) = (encode_config(&m, &ca), encode_config(&m, &cb));
        prop_assert_eq!(decode_point(&m, &pa).unwrap(), ca.clone());
        prop_assert_eq!(pa == pb, ca == cb);
    }

    #[test]
    fn pieces_preserve_area(seed in any::<u64>(), states in 2usize..=6) {
        for p in compile_shift(&machine(seed, states)).pieces() {
            prop_assert!(num_traits::One::is_one(&p.map.determinant()));
        }
    }

    #[test]
    fn runs_extend(seed in any::<u64>(), states in 2usize..=4, input in tape_strategy(4), h in 0u64..40, extra in 0u64..40) {
        let m = machine(seed, states);
        let short = m.run(&input, h);
        let long = m.run(&input, h + extra);
        match short {
            RunOutcome::Halted { .. } => prop_assert_eq!(long, short),
            RunOutcome::StillRunning { config, steps } => {
                prop_assert_eq!(steps, h);
                let resumed = m.run_from(config, extra);
                match (resumed, long) {
                    (RunOutcome::Halted { output: a, steps: sa }, RunOutcome::Halted { output: b, steps: sb }) => {
                        prop_assert_eq!(a, b);
                        prop_assert_eq!(sa + h, sb);
                    }
                    (RunOutcome::StillRunning { config: a, .. }, RunOutcome::StillRunning { config: b, .. }) => prop_assert_eq!(a, b),
                    _ => prop_assert!(false, "resumed and direct runs disagree"),
                }
            }
        }
    }

    #[test]
    fn halting_region_is_sound(seed in any::<u64>(), states in 2usize..=5, out in tape_strategy(3), other in tape_strategy(3), far in tape_strategy(12)) {
        let m = machine(seed, states);
        let region = halting_region(&m, &out, 4).unwrap();
        let halt = m.halt();
        // Same window, any content beyond cell 6 or below -6.
        let mut extended = out.clone();
        for c in far.ones().filter(|c| c.abs() > 6) {
            extended.set(c, 1);
        }
        prop_assert!(region.contains(&encode_config(&m, &Configuration::new(halt, extended))));
        let other_point = encode_config(&m, &Configuration::new(halt, other.clone()));
        prop_assert_eq!(region.contains(&other_point), other == out);
        if halt > 0 {
            prop_assert!(!region.contains(&encode_config(&m, &Configuration::new(0, out.clone()))));
        }
    }

    #[test]
    fn machine_encoding_round_trips(seed in any::<u64>(), states in 2usize..=6) {
        let m = machine(seed, states);
        prop_assert_eq!(decode_machine(&encode_machine(&m)).unwrap(), m);
    }

    #[test]
    fn smooth_step_is_monotone_in_unit_interval(a in -0.5f64..1.5, b in -0.5f64..1.5) {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        let (sl, sh): (f64, f64) = (smooth_step(lo), smooth_step(hi));
        prop_assert!((0.0..=1.0).contains(&sl) && (0.0..=1.0).contains(&sh));
        prop_assert!(sl <= sh);
        prop_assert!((smooth_step(lo) + smooth_step(1.0 - lo) - 1.0f64).abs() < 1e-15);
    }

    #[test]
    fn time_bump_has_unit_mass(a in 0.0f64..0.4, w in 0.1f64..0.6) {
        let mass: f64 = composite(12, 512).iter().map(|&(t, wt)| wt * time_bump(t, a, a + w)).sum();
        prop_assert!((mass - 1.0).abs() < 1e-10, "{}", mass);
        prop_assert!((time_bump_integral(0.999_999, a, a + w) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn d_squared_and_star_star(seed in any::<u64>(), degree in 0usize..=1) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = TrigField::random(&mut rng, degree, 3, 1.0);
        let g = TrigMetric::random(&mut rng, 2, 0.4);
        let dd = ExtD(ExtD(&f));
        let ss = hodge_star(&g, hodge_star(&g, &f));
        for p in halton(20, seed) {
            prop_assert!(max_abs(degree + 2, &dd.eval(&p)) < 1e-10);
            let a: [f64; 3] = Form::eval(&f, &p);
            let b: [f64; 3] = ss.eval(&p);
            prop_assert!(max_abs(degree, &[a[0] - b[0], a[1] - b[1], a[2] - b[2]]) < 1e-10);
        }
    }

    #[test]
    fn rotation_isotopy_map_is_rotation(omega in -3.0f64..3.0, r in 0.0f64..0.45, th in 0.0f64..std::f64::consts::TAU) {
        let iso = HamiltonianIsotopy::rotation(omega, 0.5, 0.8);
        let q = [r * th.cos(), r * th.sin()];
        let got = iso.closed_form_map(q).unwrap();
        prop_assert!((got[0].hypot(got[1]) - r).abs() < 1e-14);
        let turned = got[1].atan2(got[0]) - q[1].atan2(q[0]);
        let d = (turned + omega).rem_euclid(std::f64::consts::TAU);
        prop_assert!(r < 1e-9 || d < 1e-9 || std::f64::consts::TAU - d < 1e-9);
    }
}
