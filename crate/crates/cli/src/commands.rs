use std::path::Path;

use anyhow::{Context, Result};
use clap::ValueEnum;
use serde::Serialize;
use serde_json::json;
use turing_flow::forms::{ns_residual_sweep, symmetry_check, NsReport};
use turing_flow::gluing::{
    build_tilde_beta, build_turing_flow, metric_checks, BuildDescriptor, GluedStructure, GluingSamples,
};
use turing_flow::ode::OdeOptions;
use turing_flow::sampling::disk;
use turing_flow::shift::{
    check_turing_equivalence, compile_shift, encode_config, orbit, Rational, SquarePoint,
};
use turing_flow::suspension::{
    compare_return_map, disk_map as make_disk_map, gauge_normalize, poincare_trajectory, suspend as make_suspension,
    GaugeTolerances, ManufacturedAlpha, SectionSpec, SolidTorus, SuspensionStructure,
};
use turing_flow::tm::{encode_machine, encode_machine_bits, encoded_len, program_tape, RunOutcome, TapeSpec};
use turing_flow::{CheckReport, Tolerances};

use crate::io::{self, Sink};
use crate::{Check, Common, Status};

const DEFAULT_SEED: u64 = 0;

fn rational(r: &Rational) -> String {
    r.to_string()
}

fn point_json(p: &SquarePoint) -> serde_json::Value {
    json!({ "x": rational(&p.x), "y": rational(&p.y) })
}

/// Prints one line per check to stderr and folds them into a status.
fn summarize(checks: &[CheckReport]) -> Status {
    for c in checks {
        eprintln!(
            "{} {:<28} {:>12.3e} (tolerance {:.1e}, {} samples)",
            if c.pass { "PASS" } else { "FAIL" },
            c.check,
            c.max_residual,
            c.tolerance,
            c.samples
        );
    }
    status(checks.iter().all(|c| c.pass))
}

fn status(pass: bool) -> Status {
    if pass {
        Status::Pass
    } else {
        Status::Negative
    }
}

pub fn tm_run(machine: &Path, tape: Option<&Path>, horizon: u64, common: &Common) -> Result<Status> {
    let m = io::machine(machine)?;
    let input = io::tape(tape)?;
    let sink = Sink::new(common.out.clone())?;
    let outcome = m.run(&input, horizon);
    let value = match &outcome {
        RunOutcome::Halted { output, steps } => json!({
            "outcome": "halted",
            "steps": steps,
            "output": TapeSpec::from(output),
        }),
        RunOutcome::StillRunning { config, steps } => json!({
            "outcome": "still-running",
            "steps": steps,
            "state": m.state_name(config.state),
            "tape": TapeSpec::from(&config.tape),
        }),
    };
    sink.json("run", &value)?;
    Ok(status(outcome.halted()))
}

pub fn tm_encode(machine: &Path, tape: Option<&Path>, common: &Common) -> Result<Status> {
    let m = io::machine(machine)?;
    let input = io::tape(tape)?;
    let sink = Sink::new(common.out.clone())?;
    let bits: String = encode_machine_bits(&m).iter().map(|b| char::from(b'0' + b)).collect();
    let start = encode_config(&m, &m.initial_config(input.clone()));
    let value = json!({
        "states": m.num_states(),
        "bits": bits,
        "encoded_len": encoded_len(&m),
        "machine_tape": TapeSpec::from(&encode_machine(&m)),
        "program_tape": TapeSpec::from(&program_tape(&m, &input)?),
        "initial_point": point_json(&start),
    });
    sink.json("encoding", &value)?;
    Ok(Status::Pass)
}

#[derive(Serialize)]
struct OrbitRow {
    iterate: usize,
    x_num: String,
    x_den: String,
    y_num: String,
    y_den: String,
}

pub fn shift_orbit(machine: &Path, tape: Option<&Path>, horizon: u64, common: &Common) -> Result<Status> {
    let m = io::machine(machine)?;
    let input = io::tape(tape)?;
    let sink = Sink::new(common.out.clone())?;
    let shift = compile_shift(&m);
    let points = orbit(&shift, encode_config(&m, &m.initial_config(input)), horizon);
    let rows: Vec<OrbitRow> = points
        .iter()
        .enumerate()
        .map(|(i, p)| OrbitRow {
            iterate: i,
            x_num: p.x.numer().to_string(),
            x_den: p.x.denom().to_string(),
            y_num: p.y.numer().to_string(),
            y_den: p.y.denom().to_string(),
        })
        .collect();
    sink.csv("orbit", &rows, true)?;
    let last = points.last().expect("orbit holds its start");
    eprintln!("{} iterates, halting strip reached: {}", points.len() - 1, shift.in_halting_strip(last));
    Ok(Status::Pass)
}

pub fn equiv(machine: &Path, tape: Option<&Path>, horizon: u64, m_window: u32, common: &Common) -> Result<Status> {
    let m = io::machine(machine)?;
    let input = io::tape(tape)?;
    let sink = Sink::new(common.out.clone())?;
    let report = check_turing_equivalence(&m, &compile_shift(&m), &input, horizon, m_window);
    sink.json("equivalence", &report)?;
    Ok(status(report.agreement))
}

#[derive(Serialize)]
struct DiskRow {
    x: f64,
    y: f64,
    fx: f64,
    fy: f64,
    det_defect: f64,
}

pub fn disk_map(isotopy: &Path, common: &Common) -> Result<Status> {
    let file = io::isotopy(isotopy)?;
    let sink = Sink::new(common.out.clone())?;
    let iso = file.isotopy;
    let f = make_disk_map(iso.clone(), OdeOptions::with_tol(common.tol.unwrap_or(1e-11)))?;
    let points = disk([0.0, 0.0], 0.95 * iso.disk_radius, common.samples.unwrap_or(100), common.seed.unwrap_or(DEFAULT_SEED));
    let mut rows = Vec::with_capacity(points.len());
    let mut closed = 0.0f64;
    for &q in &points {
        let (p, j) = f.with_jacobian(q)?;
        if let Some(c) = iso.closed_form_map(q) {
            closed = closed.max((p[0] - c[0]).hypot(p[1] - c[1]));
        }
        rows.push(DiskRow { x: q[0], y: q[1], fx: p[0], fy: p[1], det_defect: j[0][0] * j[1][1] - j[0][1] * j[1][0] - 1.0 });
    }
    let area = f.area_report(&points)?;
    let checks = vec![
        CheckReport::below("area-preservation", "det Df = 1", area.samples, area.max_det_defect, 1e-8),
        CheckReport::below("closed-form", "f matches its closed form where one exists", points.len(), closed, 1e-8),
    ];
    sink.json("disk_map", &json!({ "isotopy": iso, "area": area, "checks": checks }))?;
    sink.csv("disk_map", &rows, false)?;
    Ok(summarize(&checks))
}

pub fn suspend(isotopy: &Path, common: &Common) -> Result<Status> {
    let file = io::isotopy(isotopy)?;
    let sink = Sink::new(common.out.clone())?;
    let (s, checks) = make_suspension(
        file.isotopy,
        file.c,
        common.samples.unwrap_or(10_000),
        common.seed.unwrap_or(DEFAULT_SEED),
        common.tol.unwrap_or(1e-8),
    )?;
    sink.json("suspension", &json!({ "structure": s, "checks": checks }))?;
    Ok(summarize(&checks))
}

#[derive(Serialize)]
struct TrajectoryRow {
    seed: usize,
    time: f64,
    x: f64,
    y: f64,
    t: f64,
}

pub fn return_map(isotopy: &Path, common: &Common) -> Result<Status> {
    let file = io::isotopy(isotopy)?;
    let sink = Sink::new(common.out.clone())?;
    let tol = common.tol.unwrap_or(1e-9);
    let iso = file.isotopy;
    let s = SuspensionStructure { isotopy: iso.clone(), c: file.c };
    let section = SectionSpec { radius: iso.disk_radius, ode: OdeOptions::with_tol(tol), ..SectionSpec::default() };
    let reference = make_disk_map(iso.clone(), OdeOptions::with_tol(tol * 1e-2))?;
    let seeds = disk([0.0, 0.0], 0.95 * iso.disk_radius, common.samples.unwrap_or(100), common.seed.unwrap_or(DEFAULT_SEED));
    let cmp = compare_return_map(&s.reeb(), &section, &reference, file.c, &seeds)?;
    let defaults = Tolerances::default();
    let checks = vec![
        CheckReport::below("return-map", "the return map is the disk map", cmp.seeds, cmp.max_point_error, defaults.return_map),
        CheckReport::below("return-time", "the return time is c", cmp.seeds, cmp.max_time_error, defaults.integrator),
    ];
    sink.json("return_map", &json!({ "integrator_tolerance": tol, "comparison": cmp, "checks": checks }))?;
    if common.out.is_some() {
        let mut rows = Vec::new();
        for (i, q) in seeds.iter().enumerate() {
            let (_, trace) = poincare_trajectory(&s.reeb(), &section, *q, true)?;
            rows.extend(trace.into_iter().map(|r| TrajectoryRow { seed: i, time: r[0], x: r[1], y: r[2], t: r[3] }));
        }
        sink.csv("trajectories", &rows, false)?;
    }
    Ok(summarize(&checks))
}

pub fn gauge(c: f64, eps: f64, radius: f64, common: &Common) -> Result<Status> {
    let sink = Sink::new(common.out.clone())?;
    let domain = SolidTorus { center: [0.5, 0.5], radius };
    let alpha = ManufacturedAlpha { c, eps, domain };
    let samples = domain.samples(common.samples.unwrap_or(10_000), common.seed.unwrap_or(DEFAULT_SEED));
    let tol = GaugeTolerances { pullback: common.tol.unwrap_or(GaugeTolerances::default().pullback), ..GaugeTolerances::default() };
    let (_, report) = gauge_normalize(alpha, c, domain, &samples, tol)?;
    sink.json("gauge", &json!({ "alpha": alpha, "report": report }))?;
    Ok(summarize(&report.checks))
}

fn load_descriptor(path: &Path, common: &Common) -> Result<BuildDescriptor> {
    let mut d = io::descriptor(path)?;
    if let Some(n) = common.samples {
        d.samples = d.samples.capped(n);
    }
    if let Some(s) = common.seed {
        d.seed = s;
    }
    if let Some(t) = common.tol {
        d.tolerances.integrator = t;
    }
    Ok(d)
}

pub fn build(descriptor: &Path, grid: usize, common: &Common) -> Result<Status> {
    let d = load_descriptor(descriptor, common)?;
    let sink = Sink::new(common.out.clone())?;
    let (s, report) = build_turing_flow(&d).context("build failed")?;
    sink.json("report", &report)?;
    sink.csv("field_dump", &s.field_dump(grid, 0.0), false)?;
    Ok(summarize(&report.checks))
}

fn ns_checks(reports: &[NsReport], tol: &Tolerances) -> Vec<CheckReport> {
    let mut checks: Vec<CheckReport> = reports
        .iter()
        .map(|r| {
            CheckReport::below(&format!("ns-momentum-nu-{}", r.nu), "stationary Navier-Stokes at this viscosity", r.samples, r.momentum_residual_max, tol.second_order)
        })
        .collect();
    if let Some(r) = reports.first() {
        checks.push(CheckReport::below("divergence", "X~ is divergence-free", r.samples, r.divergence_max, tol.divergence));
    }
    checks
}

pub fn verify(descriptor: &Path, check: Check, nu: &[f64], common: &Common) -> Result<Status> {
    let d = load_descriptor(descriptor, common)?;
    let sink = Sink::new(common.out.clone())?;
    let s = GluedStructure::new(d.isotopy.clone(), d.tori, d.c)?;
    let samples = GluingSamples::new(&d.tori, &d.samples, d.seed);
    let tol = &d.tolerances;
    let (checks, details) = match check {
        Check::Harmonicity => {
            let all = metric_checks(&s, &samples, tol)?;
            let keep = ["star-alpha", "d-alpha", "d-star-alpha"];
            (all.into_iter().filter(|c| keep.contains(&c.check.as_str())).collect(), serde_json::Value::Null)
        }
        Check::Ns => {
            let nus = if nu.is_empty() { d.nu_list.clone() } else { nu.to_vec() };
            let reports = ns_residual_sweep(&s.field(), &s.metric(), &nus, &samples.second_order)?;
            (ns_checks(&reports, tol), serde_json::to_value(&reports)?)
        }
        Check::Symmetry => {
            let r = symmetry_check(&s.field(), &s.metric(), &samples.second_order, d.seed)?;
            let checks = vec![
                CheckReport::below("symmetry", "g(nabla_Y X, Z) = g(nabla_Z X, Y)", r.samples, r.symmetry_defect, tol.symmetry),
                CheckReport::below("gradient-identity", "nabla_X X = grad(|X|^2 / 2)", r.samples, r.gradient_defect, tol.symmetry),
            ];
            (checks, serde_json::to_value(&r)?)
        }
        Check::Cosymplectic => {
            let (_, checks, decomposition) = build_tilde_beta(&s.isotopy, &s.tori, s.c, &samples, tol)?;
            (checks, serde_json::to_value(decomposition)?)
        }
        Check::ReturnMap => {
            let section = s.section(OdeOptions::with_tol(tol.integrator));
            let reference = make_disk_map(s.isotopy.clone(), OdeOptions::with_tol(tol.integrator * 1e-2))?;
            let cmp = compare_return_map(&s.reeb(), &section, &reference, s.c, &samples.return_seeds)?;
            let checks = vec![
                CheckReport::below("return-map", "the return map to D_0 x {0} is the disk map", cmp.seeds, cmp.max_point_error, tol.return_map),
                CheckReport::below("return-time", "the return time is c", cmp.seeds, cmp.max_time_error, tol.integrator.max(1e-9)),
            ];
            (checks, serde_json::to_value(turing_flow::gluing::ReturnSummary::from(&cmp))?)
        }
        Check::Gauge => {
            let domain = SolidTorus { center: s.tori.center, radius: s.tori.r1 };
            let (_, report) = gauge_normalize(s.alpha(), s.c, domain, &samples.first_order, GaugeTolerances::default())?;
            (report.checks.clone(), serde_json::to_value(&report)?)
        }
    };
    let name = check.to_possible_value().map_or_else(String::new, |v| v.get_name().to_string());
    sink.json("verify", &json!({ "check": name, "descriptor": d, "checks": checks, "details": details }))?;
    Ok(summarize(&checks))
}
