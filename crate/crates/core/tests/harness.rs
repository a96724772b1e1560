use zp2code::harness::{recheck, run_suite, Claim, SuiteConfig, Verdict};
use zp2code::{GeneratorMatrix, Limits, LinearCode, SearchOptions};

#[test]
fn default_suite_reports_obey_verdict_rules() {
    let opts = SearchOptions::default();
    let outcome = run_suite(&SuiteConfig::default_suite(), &opts).unwrap();
    assert!(outcome.reports.len() >= 20);
    for r in &outcome.reports {
        let radius = r
            .computed
            .get("radius")
            .and_then(|v| v.as_u64())
            .map(|v| v as u32);
        match (r.verdict, &r.claimed) {
            (Verdict::Confirmed, Claim::Exact(c)) => assert_eq!(radius, Some(*c), "{r:?}"),
            (Verdict::WithinBounds, Claim::Bounds { lower, upper }) => {
                let radius = radius.unwrap();
                assert!(*lower <= radius && radius <= *upper, "{r:?}");
            }
            (Verdict::WithinBounds, Claim::AtMost(s)) => assert!(radius.unwrap() <= *s),
            (Verdict::Contradicted, _) => {
                let cx = r
                    .counterexample
                    .as_ref()
                    .expect("contradictions carry evidence");
                assert!(recheck(cx, &opts).unwrap(), "{r:?}");
            }
            _ => assert!(r.counterexample.is_none()),
        }
    }
}

#[test]
fn contradictions_survive_a_json_round_trip() {
    let opts = SearchOptions::with_threads(3);
    let config = SuiteConfig::parse(
        r#"{"audits": [
            {"theorem": "thm_l", "grid": {"p": [2], "n": [1, 3]}},
            {"theorem": "prop_d", "params": [{"code": {"family": "zero_div_rep", "p": 3, "n": 1}}]},
            {"theorem": "field_rep", "params": [{"q": 3, "n": 2}]}
        ]}"#,
    )
    .unwrap();
    let outcome = run_suite(&config, &opts).unwrap();
    assert_eq!(outcome.exit_code(), 3);
    for r in &outcome.reports {
        let text = serde_json::to_string(r.counterexample.as_ref().unwrap()).unwrap();
        assert!(recheck(&serde_json::from_str(&text).unwrap(), &opts).unwrap());
    }
}

#[test]
fn generator_text_round_trip_preserves_code() {
    let limits = Limits::default();
    for spec in zp2code::harness::fixture_codes() {
        let g = spec.generator().unwrap();
        let back = GeneratorMatrix::parse(&g.to_text()).unwrap();
        let a = LinearCode::span(&g, &limits).unwrap();
        let b = LinearCode::span(&back, &limits).unwrap();
        assert_eq!(a.codewords(), b.codewords());
    }
}
