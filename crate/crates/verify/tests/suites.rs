use brinv_verify::{run_suite, SuiteOptions, VerifyError, SUITES};

fn small(s: Option<u8>, max: usize, samples: usize) -> SuiteOptions {
    SuiteOptions {
        s,
        max_size: Some(max),
        samples: Some(samples),
        ..SuiteOptions::default()
    }
}

#[test]
fn every_suite_passes_at_small_scope() {
    for name in SUITES {
        let s = match name {
            "pushing_3v" => Some(3),
            "pushing_2v" | "general_2v" => Some(2),
            _ => None,
        };
        let max = if name.starts_with("pushing") || name == "general_2v" { 6 } else { 4 };
        let r = run_suite(name, &small(s, max, 200)).unwrap();
        assert!(r.pass, "{}", r.summary());
        assert!(r.cases > 0, "{name}");
    }
}

#[test]
fn reports_are_reproducible() {
    let opts = small(Some(3), 7, 300);
    let a = run_suite("pushing_3v", &opts).unwrap();
    let b = run_suite("pushing_3v", &opts).unwrap();
    assert_eq!(a.stats, b.stats);
    assert_eq!(a.cases, b.cases);
    let json: serde_json::Value = serde_json::from_str(&a.to_json()).unwrap();
    assert_eq!(json["suite"], "pushing_3v");
    assert_eq!(json["cases"], 300);
}

#[test]
fn budget_overrun_is_reported_not_raised() {
    let opts = SuiteOptions {
        s: Some(2),
        max_size: Some(6),
        budget: 5,
        ..SuiteOptions::default()
    };
    let r = run_suite("tec2a", &opts).unwrap();
    assert!(r.budget_exceeded.is_some());
    assert!(!r.pass);
}

#[test]
fn bad_requests() {
    assert!(matches!(
        run_suite("nope", &SuiteOptions::default()),
        Err(VerifyError::UnknownSuite(_))
    ));
    assert!(matches!(
        run_suite("pushing_2v", &small(Some(3), 5, 1)),
        Err(VerifyError::InvalidOption(_))
    ));
}
