//! End-to-end acceptance suite. Each criterion prints one PASS/FAIL line;
//! the test fails if any criterion does.

use std::f64::consts::{PI, TAU};
use std::time::{Duration, Instant};

use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use turing_flow::forms::*;
use turing_flow::gluing::{build_turing_flow, BuildDescriptor, BuildReport, GluedStructure};
use turing_flow::jet::Scalar;
use turing_flow::ode::OdeOptions;
use turing_flow::sampling::{disk, halton};
use turing_flow::shift::{check_turing_equivalence, compile_shift, encode_config, shift_step, Rational};
use turing_flow::suspension::*;
use turing_flow::tm::samples;
use turing_flow::tm::{Tape, TuringMachine};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn within(t: Duration, limit_s: u64) -> bool {
    t < Duration::from_secs(limit_s)
}

fn check_of<'a>(report: &'a BuildReport, name: &str) -> &'a turing_flow::CheckReport {
    report.checks.iter().find(|c| c.check == name).unwrap_or_else(|| panic!("missing check {name}"))
}

fn random_machines() -> Vec<TuringMachine> {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    (0..20)
        .map(|_| {
            let states = rng.random_range(2..=5);
            samples::random(&mut rng, states)
        })
        .collect()
}

fn c1_equivalence() -> Outcome {
    let start = Instant::now();
    let machines = [("FLIP", samples::flip()), ("ZSEEK", samples::zero_seek()), ("LOOP3", samples::loop3())];
    let mut cases = 0;
    let mut agree = 0;
    let mut halting = 0;
    for (_, m) in &machines {
        let g = compile_shift(m);
        for tape in Tape::enumerate(-4, 4) {
            let r = check_turing_equivalence(m, &g, &tape, 200, 8);
            cases += 1;
            agree += r.agreement as usize;
            halting += r.machine_halts as usize;
        }
    }
    let t = start.elapsed();
    outcome(
        cases == 3 * 512 && agree == cases && halting > 0 && halting < cases && within(t, 60),
        format!("{agree}/{cases} agree ({halting} halting), {:.2?}", t),
    )
}

fn c2_conjugacy() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut checked = 0;
    let mut mismatches = 0;
    for m in random_machines() {
        let g = compile_shift(&m);
        for _ in 0..500 {
            let c = samples::random_config(&mut rng, &m, 8);
            let lhs = shift_step(&g, &encode_config(&m, &c));
            let rhs = m.step(&c).map(|n| encode_config(&m, &n));
            checked += 1;
            if lhs.is_err() || lhs.ok() != rhs.ok() {
                mismatches += 1;
            }
        }
    }
    let t = start.elapsed();
    outcome(checked == 10_000 && mismatches == 0 && within(t, 30), format!("{checked} configurations, {mismatches} mismatches, {:.2?}", t))
}

fn c3_area() -> Outcome {
    let mut machines = vec![samples::flip(), samples::zero_seek(), samples::loop3(), samples::halt3(), samples::stuck()];
    machines.extend(random_machines());
    let mut pieces = 0;
    let mut bad = 0;
    for m in &machines {
        for p in compile_shift(m).pieces() {
            pieces += 1;
            bad += (p.map.determinant() != Rational::one()) as usize;
        }
    }
    outcome(bad == 0 && pieces > 0, format!("{pieces} pieces over {} machines, {bad} with det != 1", machines.len()))
}

fn c4_return_map() -> Outcome {
    let start = Instant::now();
    let c = 1.0;
    let section = SectionSpec { ode: OdeOptions::with_tol(1e-9), ..SectionSpec::default() };
    let seeds = disk([0.0, 0.0], 0.9, 100, 41);
    let mut worst_point = 0.0f64;
    let mut worst_time = 0.0f64;
    let mut worst_closed = 0.0f64;
    for iso in [HamiltonianIsotopy::rotation(PI / 3.0, 0.5, 0.8), HamiltonianIsotopy::shear(0.4, 0.5, 0.8)] {
        let s = SuspensionStructure { isotopy: iso.clone(), c };
        let f = match disk_map(iso.clone(), OdeOptions::with_tol(1e-9)) {
            Ok(f) => f,
            Err(e) => return outcome(false, format!("disk map: {e}")),
        };
        let cmp = match compare_return_map(&s.reeb(), &section, &f, c, &seeds) {
            Ok(r) => r,
            Err(e) => return outcome(false, format!("return map: {e}")),
        };
        worst_point = worst_point.max(cmp.max_point_error);
        worst_time = worst_time.max(cmp.max_time_error);
        // Closed form where available: rotation everywhere, shear on r < r_a.
        for h in &cmp.hits {
            if let Some(q) = iso.closed_form_map(h.start) {
                worst_closed = worst_closed.max((h.point[0] - q[0]).hypot(h.point[1] - q[1]));
            }
        }
    }
    let t = start.elapsed();
    outcome(
        worst_point < 1e-6 && worst_closed < 1e-6 && worst_time < 1e-9 && within(t, 60),
        format!(
            "rotation + shear x 100 seeds: |return - disk map| {worst_point:.2e}, vs closed form {worst_closed:.2e}, |time - c| {worst_time:.2e}, {:.2?}",
            t
        ),
    )
}

fn c5_beta_tilde(report: &BuildReport) -> Outcome {
    let closed = check_of(report, "beta-tilde-closed");
    let positive = check_of(report, "beta-tilde-positive");
    let outside = check_of(report, "beta-tilde-outside");
    let pass = closed.pass
        && closed.samples >= 10_000
        && closed.max_residual < 1e-10
        && positive.pass
        && positive.samples >= 100_000
        && positive.max_residual > 0.0
        && outside.pass
        && outside.samples >= 1_000
        && outside.max_residual < 1e-12;
    outcome(
        pass,
        format!(
            "d beta~ {:.2e} @ {}, min alpha^beta~ {:.4} @ {}, |beta~ - dx^dy| off T {:.2e} @ {}",
            closed.max_residual, closed.samples, positive.max_residual, positive.samples, outside.max_residual, outside.samples
        ),
    )
}

fn c6_harmonic(report: &BuildReport) -> Outcome {
    let star = check_of(report, "star-alpha");
    let d_star = check_of(report, "d-star-alpha");
    let d_alpha = check_of(report, "d-alpha");
    let metric = check_of(report, "metric-outside");
    let pass = star.samples >= 10_000
        && star.max_residual < 1e-10
        && d_alpha.max_residual == 0.0
        && d_star.max_residual < 1e-7
        && metric.max_residual < 1e-12
        && star.pass
        && d_star.pass
        && metric.pass;
    outcome(
        pass,
        format!(
            "|*alpha - beta~| {:.2e} @ {}, |d alpha| {:.1e}, |d*alpha| {:.2e}, |g~ - g| off T {:.2e} @ {}",
            star.max_residual, star.samples, d_alpha.max_residual, d_star.max_residual, metric.max_residual, metric.samples
        ),
    )
}

/// `X~` scaled by `1 + sin(2 pi x)/2`: no longer harmonic or steady.
struct Broken<'a>(Sharp<GluedMetricRef<'a>, ConstForm>);
type GluedMetricRef<'a> = turing_flow::gluing::GluedMetric<'a>;

impl VectorField for Broken<'_> {
    fn eval<S: Scalar>(&self, p: &Point<S>) -> [S; 3] {
        let x = self.0.eval(p);
        let k = (p[0] * TAU).sin() * 0.5 + 1.0;
        [x[0] * k, x[1] * k, x[2] * k]
    }
}

fn c7_navier_stokes(s: &GluedStructure, report: &BuildReport, build_time: Duration) -> Outcome {
    let nus: Vec<f64> = report.navier_stokes.iter().map(|r| r.nu).collect();
    let worst = report.navier_stokes.iter().map(|r| r.momentum_residual_max).fold(0.0, f64::max);
    let div = report.navier_stokes.iter().map(|r| r.divergence_max).fold(0.0, f64::max);
    let samples = report.navier_stokes.first().map_or(0, |r| r.samples);
    let broken_samples = s.tori.samples_t1(1_000, 77);
    let broken = ns_residual_sweep(&Broken(s.field()), &s.metric(), &nus, &broken_samples);
    let broken_min = match &broken {
        Ok(r) => r.iter().map(|r| r.momentum_residual_max).fold(f64::INFINITY, f64::min),
        Err(_) => f64::NAN,
    };
    let pass = nus == [0.0, 0.1, 1.0]
        && samples >= 1_000
        && worst < 1e-6
        && div < 1e-8
        && broken_min >= 0.1
        && within(build_time, 300);
    outcome(
        pass,
        format!(
            "nu {nus:?} @ {samples}: momentum {worst:.2e}, divergence {div:.2e}; broken field min residual {broken_min:.3}; build {:.2?}",
            build_time
        ),
    )
}

fn c8_symmetry(report: &BuildReport) -> Outcome {
    let s = &report.symmetry;
    outcome(
        s.samples >= 1_000 && s.symmetry_defect < 1e-8 && s.gradient_defect < 1e-8,
        format!("symmetry {:.2e}, gradient identity {:.2e} @ {}", s.symmetry_defect, s.gradient_defect, s.samples),
    )
}

fn c9_gauge() -> Outcome {
    let domain = SolidTorus { center: [0.5, 0.5], radius: 0.3 };
    let alpha = ManufacturedAlpha { c: 1.0, eps: 0.05, domain };
    let samples = domain.samples(10_000, 90);
    match gauge_normalize(alpha, 1.0, domain, &samples, GaugeTolerances::default()) {
        Ok((_, r)) => outcome(
            r.samples == 10_000 && r.pullback_residual < 1e-7 && r.min_det > 0.0,
            format!("|G*(c dt) - alpha| {:.2e}, min det DG {:.4} @ {}", r.pullback_residual, r.min_det, r.samples),
        ),
        Err(e) => outcome(false, format!("gauge failed: {e}")),
    }
}

fn c10_calculus() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(100);
    let pts = halton(200, 101);
    let (mut dd, mut ss, mut cc, mut fd) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for _ in 0..10 {
        let g = TrigMetric::random(&mut rng, 2, 0.4);
        let f0 = TrigField::random(&mut rng, 0, 4, 1.0);
        let f1 = TrigField::random(&mut rng, 1, 4, 1.0);
        let f2 = TrigField::random(&mut rng, 2, 3, 1.0);
        let fk: Vec<TrigField> = (0..=3).map(|k| TrigField::random(&mut rng, k, 3, 1.0)).collect();
        let dd0 = ExtD(ExtD(&f0));
        let dd1 = ExtD(ExtD(&f1));
        let cod = codifferential(&g, codifferential(&g, &f2).unwrap()).unwrap();
        for p in &pts {
            dd = dd.max(max_abs(2, &dd0.eval(p))).max(max_abs(3, &dd1.eval(p)));
            cc = cc.max(cod.eval(p)[0].abs());
            for (k, f) in fk.iter().enumerate() {
                let a: [f64; 3] = Form::eval(f, p);
                let b: [f64; 3] = hodge_star(&g, hodge_star(&g, f)).eval(p);
                ss = ss.max(max_abs(k, &[a[0] - b[0], a[1] - b[1], a[2] - b[2]]));
            }
            let da: [f64; 3] = ExtD(&f1).eval(p);
            let d = [0, 1, 2].map(|ax| finite_difference(&f1, p, ax, 1e-5));
            let curl = [d[1][2] - d[2][1], d[2][0] - d[0][2], d[0][1] - d[1][0]];
            let gamma = christoffel(&g, p).unwrap();
            let dg = [0, 1, 2].map(|ax| metric_finite_difference(&g, p, ax, 1e-5));
            let inv = inv3(&g.eval(p));
            let mut e = max_abs(1, &[da[0] - curl[0], da[1] - curl[1], da[2] - curl[2]]);
            for i in 0..3 {
                for j in 0..3 {
                    for k in 0..3 {
                        let want: f64 = (0..3).map(|l| 0.5 * inv[i][l] * (dg[j][l][k] + dg[k][l][j] - dg[l][j][k])).sum();
                        e = e.max((gamma[i][j][k] - want).abs());
                    }
                }
            }
            fd = fd.max(e);
        }
    }
    let t = start.elapsed();
    outcome(
        dd < 1e-10 && cc < 1e-10 && ss < 1e-10 && fd < 1e-6 && within(t, 30),
        format!("d^2 {dd:.1e}, d*^2 {cc:.1e}, ** - id {ss:.1e}, jet vs FD {fd:.1e}, {:.2?}", t),
    )
}

#[test]
fn acceptance() {
    let mut results = vec![
        ("discrete halting equivalence", c1_equivalence()),
        ("exact conjugacy", c2_conjugacy()),
        ("area preservation", c3_area()),
        ("return map = disk map", c4_return_map()),
    ];
    let start = Instant::now();
    let built = build_turing_flow(&BuildDescriptor::rotation(PI / 3.0));
    let build_time = start.elapsed();
    match &built {
        Ok((s, report)) => {
            results.push(("beta~ closed, positive, local", c5_beta_tilde(report)));
            results.push(("harmonicity under g~", c6_harmonic(report)));
            results.push(("Navier-Stokes for every viscosity", c7_navier_stokes(s, report, build_time)));
            results.push(("symmetry identity", c8_symmetry(report)));
        }
        Err(e) => {
            for name in ["beta~ closed, positive, local", "harmonicity under g~", "Navier-Stokes for every viscosity", "symmetry identity"] {
                results.push((name, outcome(false, format!("build failed: {e}"))));
            }
        }
    }
    results.push(("gauge normalization", c9_gauge()));
    results.push(("calculus substrate", c10_calculus()));

    for (i, (name, o)) in results.iter().enumerate() {
        println!("criterion {:>2} [{}] {name}: {}", i + 1, if o.pass { "PASS" } else { "FAIL" }, o.detail);
    }
    let failed: Vec<usize> = results.iter().enumerate().filter(|(_, r)| !r.1.pass).map(|(i, _)| i + 1).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
