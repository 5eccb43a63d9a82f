use std::f64::consts::PI;

use turing_flow::forms::*;
use turing_flow::jet::Scalar;
use turing_flow::ode::OdeOptions;
use turing_flow::sampling::{disk, halton};
use turing_flow::suspension::*;

fn rotation() -> HamiltonianIsotopy {
    HamiltonianIsotopy::rotation(PI / 3.0, 0.5, 0.8)
}

fn rot(p: [f64; 2], angle: f64) -> [f64; 2] {
    let (s, c) = angle.sin_cos();
    [c * p[0] - s * p[1], s * p[0] + c * p[1]]
}

fn dist(a: [f64; 2], b: [f64; 2]) -> f64 {
    (a[0] - b[0]).hypot(a[1] - b[1])
}

fn section(tol: f64) -> SectionSpec {
    SectionSpec { ode: OdeOptions::with_tol(tol), ..SectionSpec::default() }
}

#[test]
fn hamiltonian_vector_field_examples() {
    struct Quadratic;
    impl Form for Quadratic {
        fn degree(&self) -> usize {
            0
        }
        fn eval<S: Scalar>(&self, p: &Point<S>) -> [S; 3] {
            [(p[0] * p[0] + p[1] * p[1]) * 0.5, S::zero(), S::zero()]
        }
    }
    assert_eq!(ham_vector_field(&Quadratic, &[0.3, -0.2, 0.1]), [-0.2, -0.3]);
    assert_eq!(ham_vector_field(&HamiltonianIsotopy::zero(), &[0.3, -0.2, 0.5]), [0.0, 0.0]);
    // i_{X_H}(dx^dy) = X^x dy - X^y dx = d_p H
    let iso = rotation();
    for p in halton(200, 1) {
        let p = [p[0] - 0.5, p[1] - 0.5, p[2]];
        let x = ham_vector_field(&iso, &p);
        let dh = ExtD(&iso).eval(&p);
        assert!((-x[1] - dh[0]).abs() < 1e-12 && (x[0] - dh[1]).abs() < 1e-12);
    }
}

#[test]
fn zero_isotopy_gives_identity() {
    let f = disk_map(HamiltonianIsotopy::zero(), OdeOptions::default()).unwrap();
    assert_eq!(f.apply([0.3, 0.1]).unwrap(), [0.3, 0.1]);
}

#[test]
fn rotation_disk_map_matches_closed_form() {
    let iso = rotation();
    let f = disk_map(iso.clone(), OdeOptions::with_tol(1e-11)).unwrap();
    for q in disk([0.0, 0.0], 0.95, 100, 2) {
        let got = f.apply(q).unwrap();
        assert!(dist(got, iso.closed_form_map(q).unwrap()) < 1e-8);
        if q[0].hypot(q[1]) < 0.5 {
            assert!(dist(got, rot(q, -PI / 3.0)) < 1e-8);
        }
    }
    let area = f.area_report(&disk([0.0, 0.0], 0.95, 100, 3)).unwrap();
    assert!(area.max_det_defect < 1e-8, "{area:?}");
}

#[test]
fn shear_disk_map_is_area_preserving() {
    let iso = HamiltonianIsotopy::shear(0.4, 0.5, 0.8);
    let f = disk_map(iso.clone(), OdeOptions::with_tol(1e-11)).unwrap();
    let q = [0.1, 0.2];
    assert!(dist(f.apply(q).unwrap(), iso.closed_form_map(q).unwrap()) < 1e-9);
    assert!(f.area_report(&disk([0.0, 0.0], 0.95, 100, 4)).unwrap().max_det_defect < 1e-8);
}

#[test]
fn suspension_of_zero_isotopy_is_standard() {
    let (s, reports) = suspend(HamiltonianIsotopy::zero(), 1.0, 500, 5, 1e-10).unwrap();
    assert!(reports.iter().all(|r| r.pass));
    let p = [0.2, 0.3, 0.4];
    assert_eq!(Form::eval(&s.alpha(), &p), [0.0, 0.0, 1.0]);
    assert_eq!(s.beta().eval(&p), [0.0, 0.0, 1.0]);
    assert_eq!(s.reeb().eval(&p), [0.0, 0.0, 1.0]);
}

#[test]
fn rotation_suspension_invariants() {
    let (s, reports) = suspend(rotation(), 1.5, 10_000, 6, 1e-8).unwrap();
    for r in &reports {
        assert!(r.pass, "{r:?}");
    }
    let pair = s.pair();
    for p in s.samples(1000, 7) {
        let y = reeb_solve(&pair, &p).unwrap();
        let z: [f64; 3] = s.reeb().eval(&p);
        assert!((0..3).all(|i| (y[i] - z[i]).abs() < 1e-10));
        assert_eq!(pair.volume(&p), 1.5);
    }
    assert!(matches!(suspend(rotation(), 0.0, 10, 1, 1e-8), Err(SuspensionError::InvalidParameter(_))));
}

#[test]
fn flow_preserves_beta() {
    // Pull back beta by the suspension flow: on (f_t(p), t) the pushed-forward
    // frame (Df_t e_1, Df_t e_2) must have beta-area 1, the numeric
    // counterpart of the closed-form beta.
    let iso = HamiltonianIsotopy::shear(0.7, 0.3, 0.7);
    let s = SuspensionStructure { isotopy: iso.clone(), c: 1.0 };
    for t_end in [0.3, 0.5, 0.77] {
        let f = |t: f64, y: &[f64; 6]| {
            let v = iso.velocity(y[0], y[1], t);
            let a = iso.velocity_jacobian(y[0], y[1], t);
            [
                v[0],
                v[1],
                a[0][0] * y[2] + a[0][1] * y[4],
                a[0][0] * y[3] + a[0][1] * y[5],
                a[1][0] * y[2] + a[1][1] * y[4],
                a[1][0] * y[3] + a[1][1] * y[5],
            ]
        };
        for q in disk([0.0, 0.0], 0.6, 20, 8) {
            let y = turing_flow::ode::solve(f, 0.0, [q[0], q[1], 1.0, 0.0, 0.0, 1.0], t_end, OdeOptions::with_tol(1e-12), false)
                .unwrap()
                .y;
            // Images of e_1, e_2 under the time-t flow of the Reeb field, in (x, y, t).
            let v1 = [y[2], y[4], 0.0];
            let v2 = [y[3], y[5], 0.0];
            let b = s.beta().eval(&[y[0], y[1], t_end]);
            // beta(v1, v2) with beta = i_B mu is mu(B, v1, v2) = B . (v1 x v2)
            let area = dot(&b, &cross(&v1, &v2));
            assert!((area - 1.0).abs() < 1e-9, "{area}");
        }
    }
}

#[test]
fn straight_return_for_zero_isotopy() {
    let s = SuspensionStructure { isotopy: HamiltonianIsotopy::zero(), c: 2.0 };
    let hit = poincare_return(&s.reeb(), &section(1e-9), [0.3, 0.1]).unwrap();
    assert!(dist(hit.point, [0.3, 0.1]) < 1e-14);
    assert!((hit.time - 2.0).abs() < 1e-12);
}

#[test]
fn rotation_return_map() {
    let iso = rotation();
    let s = SuspensionStructure { isotopy: iso.clone(), c: 1.0 };
    let sec = section(1e-9);
    let f = disk_map(iso.clone(), OdeOptions::with_tol(1e-11)).unwrap();
    let seeds = disk([0.0, 0.0], 0.45, 100, 9);
    let cmp = compare_return_map(&s.reeb(), &sec, &f, 1.0, &seeds).unwrap();
    assert!(cmp.max_point_error < 1e-6, "{}", cmp.max_point_error);
    assert!(cmp.max_time_error < 1e-9);
    for h in &cmp.hits {
        assert!(dist(h.point, rot(h.start, -PI / 3.0)) < 1e-6);
    }
}

#[test]
fn halving_tolerance_moves_returns_less_than_estimate() {
    let iso = HamiltonianIsotopy::shear(0.5, 0.4, 0.8);
    let s = SuspensionStructure { isotopy: iso, c: 1.0 };
    for q in disk([0.0, 0.0], 0.7, 20, 10) {
        let a = poincare_return(&s.reeb(), &section(1e-7), q).unwrap();
        let b = poincare_return(&s.reeb(), &section(5e-8), q).unwrap();
        assert!(dist(a.point, b.point) <= a.error_estimate, "{:?} {:?}", a, b);
    }
}

#[test]
fn return_rejects_bad_starts_and_fields() {
    let s = SuspensionStructure { isotopy: HamiltonianIsotopy::zero(), c: 1.0 };
    assert!(matches!(poincare_return(&s.reeb(), &section(1e-9), [2.0, 0.0]), Err(SuspensionError::StartOffSection(_))));
    let backwards = ConstVector([0.1, 0.0, -1.0]);
    assert!(matches!(
        poincare_return(&backwards, &section(1e-9), [0.0, 0.0]),
        Err(SuspensionError::TransversalityLoss { .. })
    ));
}

#[test]
fn reeb_flow_preserves_volume() {
    let s = SuspensionStructure { isotopy: HamiltonianIsotopy::shear(0.9, 0.3, 0.7), c: 0.7 };
    for p in s.samples(10_000, 11) {
        assert!(s.reeb_divergence(&p).abs() < 1e-8);
    }
}

fn domain() -> SolidTorus {
    SolidTorus { center: [0.5, 0.5], radius: 0.3 }
}

#[test]
fn gauge_of_standard_form_is_identity() {
    let samples = domain().samples(1000, 12);
    let (g, rep) = gauge_normalize(ConstForm::dt(1.3), 1.3, domain(), &samples, GaugeTolerances::default()).unwrap();
    assert_eq!(rep.pullback_residual, 0.0);
    assert_eq!(g.apply(&[0.4, 0.6, 0.2]), [0.4, 0.6, 0.2]);
}

#[test]
fn gauge_recovers_manufactured_potential() {
    let c = 1.0;
    let eps = 0.05; // below c / (2 pi)
    let alpha = ManufacturedAlpha { c, eps, domain: domain() };
    let samples = domain().samples(10_000, 13);
    let (g, rep) = gauge_normalize(alpha, c, domain(), &samples, GaugeTolerances::default()).unwrap();
    assert!(rep.checks.iter().all(|r| r.pass), "{:?}", rep.checks);
    assert!(rep.pullback_residual < 1e-7);
    assert!(rep.min_det > 0.0);
    for p in &samples[..2000] {
        assert!((g.potential(p) - alpha.generator(p)).abs() < 1e-8);
        let dt_g = 2.0 * PI * eps * (2.0 * PI * p[2]).cos();
        assert!(g.det(p) >= 1.0 - dt_g.abs() / c - 1e-12);
    }
}

#[test]
fn gauge_rejects_bad_forms() {
    let samples = domain().samples(200, 14);
    let wrong_period = gauge_normalize(ConstForm::dt(2.0), 1.0, domain(), &samples, GaugeTolerances::default());
    assert!(matches!(wrong_period, Err(SuspensionError::NonCohomologous { .. })));
    struct Twisted;
    impl Form for Twisted {
        fn degree(&self) -> usize {
            1
        }
        fn eval<S: Scalar>(&self, p: &Point<S>) -> [S; 3] {
            [S::zero(), p[0], S::one()]
        }
    }
    assert!(matches!(
        gauge_normalize(Twisted, 1.0, domain(), &samples, GaugeTolerances::default()),
        Err(SuspensionError::NonClosed { .. })
    ));
}
