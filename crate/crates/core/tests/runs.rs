use xflow_core::analytic::Branch;
use xflow_core::suites::{all_suites, suite};
use xflow_core::*;

fn m(a: f64, b: f64, c: f64) -> MetricDiag {
    MetricDiag::new(a, b, c).unwrap()
}

fn run(geom: GeometryClass, init: MetricDiag, opts: &IntegratorOptions) -> Trajectory {
    integrate(geom, FlowSpec::NEGATIVE, init, opts).unwrap()
}

#[test]
fn runs_are_deterministic() {
    let opts = IntegratorOptions::new(10.0);
    let a = run(GeometryClass::Sl2r, m(1.0, 2.0, 1.0), &opts);
    let b = run(GeometryClass::Sl2r, m(1.0, 2.0, 1.0), &opts);
    assert_eq!(a.times, b.times);
    assert_eq!(a.states, b.states);
    assert_eq!(a.termination, b.termination);
}

#[test]
fn tightening_tolerance_converges() {
    for (g, init) in [
        (GeometryClass::Sol, m(2.0, 4.0, 1.0)),
        (GeometryClass::Su2, m(3.0, 2.0, 1.0)),
        (GeometryClass::Sl2r, m(1.0, 2.0, 1.0)),
    ] {
        let loose = run(
            g,
            init,
            &IntegratorOptions::new(10.0).with_tolerances(1e-7, 1e-10),
        );
        let fine = run(
            g,
            init,
            &IntegratorOptions::new(10.0).with_tolerances(1e-12, 1e-15),
        );
        let Termination::SingularTime { t_stop, .. } = fine.termination else {
            panic!("{g} not singular")
        };
        let mut worst: f64 = 0.0;
        for k in 0..200 {
            let t = 0.99 * t_stop * k as f64 / 199.0;
            let (p, q) = (loose.sample_at(t).unwrap(), fine.sample_at(t).unwrap());
            for (x, y) in p.to_array().iter().zip(q.to_array()) {
                worst = worst.max((x - y).abs() / y);
            }
        }
        assert!(worst <= 1e-5, "{g}: {worst:e}");
    }
}

#[test]
fn sol_symmetric_termination_classifies_axes() {
    let traj = run(
        GeometryClass::Sol,
        m(1.0, 8.0, 1.0),
        &IntegratorOptions::new(10.0),
    );
    let Termination::SingularTime {
        t_stop,
        vanishing,
        exploding,
        ..
    } = &traj.termination
    else {
        panic!("{:?}", traj.termination);
    };
    assert!((t_stop - 1.0).abs() < 1e-6);
    assert_eq!(vanishing, &vec![Axis::B]);
    assert_eq!(exploding, &vec![Axis::A, Axis::C]);
}

#[test]
fn step_budget_is_reported() {
    let opts = IntegratorOptions::new(1e8).with_max_steps(20);
    let traj = run(GeometryClass::E2, m(2.0, 1.0, 1.0), &opts);
    assert!(matches!(
        traj.termination,
        Termination::StepBudgetExhausted { .. }
    ));
    assert_eq!(traj.stats.accepted, 20);
}

#[test]
fn verify_examples() {
    let heis = run(
        GeometryClass::Heisenberg,
        m(1.0, 1.0, 1.0),
        &IntegratorOptions::new(100.0),
    );
    let report = verify(&heis);
    assert!(report.pass, "{:?}", report.failures());
    assert!(report.conserved.iter().all(|c| c.max_rel_drift <= 1e-9));

    let sl = run(
        GeometryClass::Sl2r,
        m(1.0, 2.0, 1.0),
        &IntegratorOptions::new(10.0),
    );
    let report = verify(&sl);
    assert!(report.pass, "{:?}", report.failures());
    assert_eq!(report.branch, Branch::Sl2rGeneric);
    let region = report.region.unwrap();
    assert!(region.entered_at.is_some() && region.retained);
    let c_law = report.law(Variable::C).unwrap();
    assert!((c_law.fit.unwrap().coefficient - 8.0).abs() < 0.24);

    let flat = run(
        GeometryClass::E2,
        m(3.0, 3.0, 1.0),
        &IntegratorOptions::new(10.0),
    );
    let report = verify(&flat);
    assert!(report.pass && report.laws.is_empty());
    assert_eq!(report.branch, Branch::E2Flat);
}

#[test]
fn verify_is_idempotent() {
    let traj = run(
        GeometryClass::Sol,
        m(2.0, 4.0, 1.0),
        &IntegratorOptions::new(10.0),
    );
    let before = traj.clone();
    assert_eq!(verify(&traj), verify(&traj));
    assert_eq!(traj.states, before.states);
}

#[test]
fn every_law_is_reported_once() {
    let traj = run(
        GeometryClass::E2,
        m(2.0, 1.0, 1.0),
        &IntegratorOptions::new(1e8),
    );
    let report = verify(&traj);
    let laws = analytic::expected_asymptotics(GeometryClass::E2, FlowSpec::NEGATIVE, &traj.initial)
        .unwrap();
    assert_eq!(report.laws.len(), laws.len());
    for (check, law) in report.laws.iter().zip(&laws) {
        assert_eq!(&check.law, law);
    }
}

#[test]
fn failing_report_lists_the_failure() {
    // Too short to reach the asymptotic regime: the E(2) fits cannot pass.
    let traj = run(
        GeometryClass::E2,
        m(2.0, 1.0, 1.0),
        &IntegratorOptions::new(1.0),
    );
    let report = verify(&traj);
    assert!(!report.pass);
    assert!(!report.failures().is_empty());
}

#[test]
fn every_suite_passes() {
    for r in all_suites() {
        let (_, report) = r.execute().unwrap();
        assert!(report.pass, "{}: {:?}", r.name, report.failures());
    }
}

#[test]
fn suites_cover_both_sl2r_branches() {
    let names: Vec<&str> = suite(GeometryClass::Sl2r).iter().map(|r| r.name).collect();
    assert!(names.contains(&"sl2r-symmetric") && names.contains(&"sl2r-generic"));
}

#[test]
fn trajectory_json_names_termination() {
    let traj = run(
        GeometryClass::Sol,
        m(1.0, 8.0, 1.0),
        &IntegratorOptions::new(10.0),
    );
    let v: serde_json::Value = serde_json::to_value(&traj).unwrap();
    assert_eq!(v["termination"]["kind"], "singular_time");
    assert_eq!(v["spec"], "xcf-");
    assert_eq!(v["initial"]["B"], 8.0);
}

#[test]
fn sample_at_respects_range() {
    let traj = run(
        GeometryClass::Heisenberg,
        m(1.0, 1.0, 1.0),
        &IntegratorOptions::new(5.0),
    );
    assert_eq!(traj.sample_at(0.0).unwrap(), traj.initial);
    assert!(matches!(
        traj.sample_at(6.0),
        Err(FlowError::OutOfRange { .. })
    ));
    let mid = traj.sample_at(2.5).unwrap();
    let exact = analytic::heisenberg_exact(&traj.initial, 2.5).unwrap();
    assert!((mid.b() - exact.b()).abs() <= 1e-8 * exact.b());
}
