use super::*;

fn quick(trials: usize) -> VerifyOptions {
    VerifyOptions {
        seed: 7,
        trials: Some(trials),
        ..VerifyOptions::default()
    }
}

#[test]
fn every_suite_runs() {
    for suite in SUITES {
        let opts = match suite {
            "example-si" => VerifyOptions {
                n: Some(2),
                ..quick(1)
            },
            "footnote-perm" => VerifyOptions {
                n: Some(3),
                ..quick(1)
            },
            "unsub" => VerifyOptions {
                r: Some(3),
                ..quick(5)
            },
            _ => quick(20),
        };
        let report = run_suite(suite, &opts).unwrap();
        assert!(report.trials > 0, "{suite}");
        if suite != "commute0" && suite != "commute0b" {
            assert!(report.passed(), "{suite}: {}", report.summary());
        }
    }
}

#[test]
fn unknown_suite_is_rejected() {
    assert!(matches!(
        run_suite("nope", &quick(1)),
        Err(Error::Domain(_))
    ));
}

#[test]
fn unsub_reaches_depth_three_at_seven() {
    let r = run_suite(
        "unsub",
        &VerifyOptions {
            r: Some(7),
            ..quick(10)
        },
    )
    .unwrap();
    assert!(r.passed(), "{}", r.summary());
    assert_eq!(r.observed["max_depth"], serde_json::json!(3));
}

#[test]
fn reports_are_deterministic_and_serialize() {
    let a = run_suite("clean", &quick(30)).unwrap();
    let b = run_suite("clean", &quick(30)).unwrap();
    assert_eq!(a, b);
    let json = serde_json::to_string(&a).unwrap();
    assert_eq!(
        serde_json::from_str::<VerificationReport>(&json).unwrap(),
        a
    );
    assert_eq!(a.bounds[0].checked, 30);
}

#[test]
fn bound_violations_become_failures() {
    let mut rec = Recorder::new("x", &quick(1));
    let inst = serde_json::json!({});
    rec.bound("b", "1", 3, 1, 0, &inst);
    rec.bound("b", "1", 1, 1, 1, &inst);
    let r = rec.report;
    assert_eq!(r.failures.len(), 1);
    assert_eq!(r.bounds[0].violations, 1);
    assert_eq!(r.bounds[0].worst_observed, 3);
}
