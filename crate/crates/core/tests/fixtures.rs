use sublab::fixtures::*;
use sublab::linalg::Rational;
use sublab::report::Sections;

fn opts(sections: Sections) -> RunOptions {
    RunOptions {
        sections,
        ..RunOptions::default()
    }
}

fn obstruction_only() -> Sections {
    Sections {
        obstruction: true,
        ..Sections::none()
    }
}

fn metric_only() -> Sections {
    Sections {
        decomposition: true,
        metric: true,
        ..Sections::none()
    }
}

#[test]
fn sphere_chain_report() {
    let fx = fixture("so2n-u-sphere").unwrap();
    let r = run_scenario(fx, 4, &RunOptions::default()).unwrap();
    assert_eq!(r.decomposition.as_ref().unwrap().dims, vec![6, 6]);
    let m = r.metric.as_ref().unwrap();
    assert_eq!(m.ratios(), vec![Rational::from(1), Rational::from_signeds(1, 2)]);
    assert_eq!(m.matches_expected, Some(true));
    let v = r.verdict.as_ref().unwrap();
    assert!(v.verdict.is_riemannian_submersion);
    assert_eq!(v.matches_expected, Some(true));
    let o = r.obstruction.as_ref().unwrap();
    assert!(o.is_certificate());
    assert_eq!(o.required_dim, 22);
    assert!(!r.is_negative());
    assert_eq!(r.scenario.chain, "so(8)/u(4) = so(7)/u(3) -> so(7)/so(6) = S^6");
}

#[test]
fn unit_tangent_report_is_negative() {
    let fx = fixture("so4n-unit-tangent").unwrap();
    let r = run_scenario(fx, 3, &RunOptions::default()).unwrap();
    let v = &r.verdict.as_ref().unwrap().verdict;
    assert!(!v.is_riemannian_submersion);
    assert_eq!(v.condition_i.witnesses[0].q, "q3");
    assert_eq!(v.condition_i.witnesses[0].splits_into, ["p3", "p5"]);
    assert!(r.is_negative());
    let json: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
    assert_eq!(json["verdict"]["counterexample"]["value"], "-1/4");
    assert!(r.obstruction.is_none());
}

#[test]
fn su_chain_expected_ratios() {
    let fx = fixture("su2n-sphere").unwrap();
    let r = run_scenario(fx, 3, &opts(metric_only())).unwrap();
    let m = r.metric.unwrap();
    assert_eq!(m.matches_expected, Some(true));
    assert_eq!(m.ratios()[1], Rational::from_signeds(3, 5));
    let json = serde_json::to_value(&m.lambdas).unwrap();
    assert_eq!(json[1]["ratio"], "3/5");
}

#[test]
fn out_of_range_and_unknown() {
    let fx = fixture("so2n-u-sphere").unwrap();
    for n in [0, 3] {
        let e = run_scenario(fx, n, &RunOptions::default()).unwrap_err();
        assert!(e.is_input_error(), "{e}");
    }
    let fixed = fixture("so16-s8").unwrap();
    assert!(run_scenario(fixed, 2, &RunOptions::default()).unwrap_err().is_input_error());
    assert!(fixture("so2n-nothing").is_err());
}

#[test]
fn unsupported_fixture_still_obstructs() {
    let fx = fixture("so16-s8").unwrap();
    let r = run_scenario(fx, 1, &RunOptions::default()).unwrap();
    assert_eq!(r.scenario.status, OUT_OF_SCOPE);
    assert!(r.decomposition.is_none() && r.verdict.is_none());
    assert_eq!(r.obstruction.unwrap().required_dim, 112);
}

#[test]
fn reports_are_reproducible() {
    let fx = fixture("su2n-cp").unwrap();
    let a = run_scenario(fx, 3, &RunOptions::default()).unwrap().to_json();
    let b = run_scenario(fx, 3, &RunOptions::default()).unwrap().to_json();
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    for key in ["version", "scenario", "decomposition", "metric", "verdict", "obstruction"] {
        assert!(v.get(key).is_some(), "{key}");
    }
    assert_eq!(v["version"], "1.0");
}

#[test]
fn obstruction_sweep() {
    let fx = fixture("so4n-stiefel").unwrap();
    let r = sweep(fx, 3, 50, &opts(obstruction_only()), true);
    assert_eq!(r.summary.runs, 48);
    assert_eq!(r.summary.certificates, 48);
    assert_eq!(r.summary.errors, 0);
    assert!(!r.is_negative());
    let circle = sweep(fixture("so4n-stiefel-circle").unwrap(), 3, 50, &opts(obstruction_only()), true);
    assert_eq!(circle.summary.certificates, 48);
}

#[test]
fn metric_sweep_records_range_errors() {
    let fx = fixture("so2n-u-sphere").unwrap();
    let r = sweep(fx, 3, 5, &opts(metric_only()), false);
    assert_eq!(r.summary.runs, 3);
    assert_eq!(r.summary.errors, 1);
    assert!(r.entries[0].error.is_some());
    assert_eq!(r.summary.ratios, vec![Rational::from(1), Rational::from_signeds(1, 2)]);
    assert!(r.is_negative());
}

#[test]
fn parallel_sweep_matches_serial() {
    let fx = fixture("su2n-sphere").unwrap();
    let o = opts(Sections::all());
    assert_eq!(sweep(fx, 3, 4, &o, true).to_json(), sweep(fx, 3, 4, &o, false).to_json());
}

#[test]
fn every_fixture_runs_at_its_smallest_n() {
    for fx in fixtures() {
        let r = run_scenario(fx, fx.n_min, &RunOptions::default()).unwrap();
        if let (Some(v), Some(expected)) = (&r.verdict, fx.expected_verdict) {
            assert_eq!(v.verdict.is_riemannian_submersion, expected, "{}", fx.id);
        }
        if let Some(m) = &r.metric {
            assert_ne!(m.matches_expected, Some(false), "{}", fx.id);
        }
        assert!(r.scenario.catalog_entry.is_some(), "{}", fx.id);
    }
}
