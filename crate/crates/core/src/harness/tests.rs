use super::*;
use serde_json::json;

fn opts() -> SearchOptions {
    SearchOptions::with_threads(2)
}

fn run(id: TheoremId, params: Value) -> TheoremReport {
    audit(id, &params, &opts()).unwrap()
}

#[test]
fn unit_repetition_confirmed_where_formula_holds() {
    let r = run(TheoremId::ThmJ, json!({"p": 2, "n": 2}));
    assert_eq!(r.claimed, Claim::Exact(2));
    assert_eq!(r.verdict, Verdict::Confirmed);
    assert_eq!(r.computed["radius"], json!(2));
}

#[test]
fn unit_repetition_contradicted_at_n1() {
    let r = run(TheoremId::ThmJ, json!({"p": 2, "n": 1}));
    assert_eq!(r.verdict, Verdict::Contradicted);
    let cx = r.counterexample.unwrap();
    assert_eq!(cx.radius, Some(0));
    assert!(recheck(&cx, &opts()).unwrap());
}

#[test]
fn zero_divisor_repetition_p3_n1() {
    let r = run(TheoremId::ThmI, json!({"p": 3, "n": 1}));
    assert_eq!(r.claimed, Claim::Exact(2));
    assert_eq!(r.computed["radius"], json!(1));
    assert_eq!(r.verdict, Verdict::Contradicted);
    assert!(recheck(r.counterexample.as_ref().unwrap(), &opts()).unwrap());
}

#[test]
fn full_block_repetition_within_bounds() {
    let r = run(TheoremId::ThmK, json!({"p": 2, "n": 1}));
    assert_eq!(r.claimed, Claim::Bounds { lower: 3, upper: 4 });
    assert_eq!(r.verdict, Verdict::WithinBounds);
    assert_eq!(r.computed["radius"], json!(3));
    assert_eq!(r.computed["parameter_claim_holds"], json!(true));
}

#[test]
fn drop_last_below_lower_bound() {
    let r = run(TheoremId::ThmL, json!({"p": 2, "n": 1}));
    assert_eq!(r.claimed, Claim::Bounds { lower: 2, upper: 3 });
    assert_eq!(r.computed["radius"], json!(1));
    let cx = r.counterexample.unwrap();
    assert_eq!(cx.violation, Violation::RadiusBelow { bound: 2 });
    assert!(recheck(&cx, &opts()).unwrap());
}

#[test]
fn mixed_block_reports_parameter_check() {
    let r = run(TheoremId::ThmM, json!({"p": 2, "m": 2, "n": 1}));
    assert_eq!(r.claimed, Claim::Bounds { lower: 3, upper: 4 });
    assert_eq!(r.computed["radius"], json!(3));
    assert_eq!(r.verdict, Verdict::WithinBounds);
    assert!(r.computed.contains_key("parameter_claim_holds"));
}

#[test]
fn weight_distributions_confirmed() {
    for p in [2, 3] {
        for n in [1, 2] {
            assert_eq!(
                run(TheoremId::ThmWdist, json!({"p": p, "n": n})).verdict,
                Verdict::Confirmed
            );
        }
    }
}

#[test]
fn resource_cap_skips() {
    let r = run(TheoremId::ThmK, json!({"p": 5, "n": 1}));
    assert_eq!(r.verdict, Verdict::SkippedResource);
    assert!(r.counterexample.is_none());
    assert_eq!(
        r.claimed,
        Claim::Bounds {
            lower: 99,
            upper: 100
        }
    );
}

#[test]
fn malformed_parameters_are_config_errors() {
    assert!(matches!(
        audit(TheoremId::ThmJ, &json!({"p": 2}), &opts()),
        Err(Error::Config(_))
    ));
    assert!(matches!(
        audit(TheoremId::ThmJ, &json!({"p": 2, "n": 1, "x": 0}), &opts()),
        Err(Error::Config(_))
    ));
    assert!(matches!(
        audit(TheoremId::ThmJ, &json!({"p": 4, "n": 1}), &opts()),
        Err(Error::Config(_))
    ));
}

#[test]
fn gray_transfer_fails_for_odd_p() {
    let spec = json!({"family": "zero_div_rep", "p": 3, "n": 1});
    let r = run(TheoremId::PropD, json!({"code": spec}));
    assert_eq!(r.computed["lee_radius"], json!(1));
    assert_eq!(r.computed["gray_hamming_radius"], json!(2));
    let cx = r.counterexample.unwrap();
    assert_eq!(cx.metric, Metric::Hamming);
    assert!(matches!(cx.code, CodeRef::GrayImage(_)));
    assert!(recheck(&cx, &opts()).unwrap());

    let binary = run(
        TheoremId::PropD,
        json!({"code": {"family": "unit_rep", "p": 2, "n": 3}}),
    );
    assert_eq!(binary.verdict, Verdict::Confirmed);
}

#[test]
fn method_agreement_and_bounds_on_fixtures() {
    for spec in fixture_codes().into_iter().take(8) {
        for metric in ["hamming", "lee"] {
            let r = run(TheoremId::PropC, json!({"code": spec, "metric": metric}));
            assert_eq!(r.verdict, Verdict::Confirmed, "{spec:?}");
            assert_eq!(r.computed["witnesses_agree"], json!(true));
        }
        assert_eq!(
            run(TheoremId::ThmF, json!({"code": spec})).verdict,
            Verdict::WithinBounds
        );
        let e = run(TheoremId::PropE, json!({"code": spec}));
        assert!(e.computed["exact_ball_bound"]["radius"].as_u64() <= e.computed["radius"].as_u64());
    }
}

#[test]
fn sphere_covering_unsatisfiable_is_reported() {
    let r = run(
        TheoremId::PropE,
        json!({"code": {"family": "zero_div_rep", "p": 3, "n": 1}}),
    );
    assert_eq!(r.verdict, Verdict::Unsatisfiable);
}

#[test]
fn paper_sphere_bound_fails_on_ambient_z9() {
    let r = run(
        TheoremId::PropE,
        json!({"code": {"family": "unit_rep", "p": 3, "n": 1}}),
    );
    assert_eq!(r.computed["radius"], json!(0));
    let cx = r.counterexample.unwrap();
    assert_eq!(cx.violation, Violation::RadiusBelow { bound: 1 });
    assert!(recheck(&cx, &opts()).unwrap());
}

#[test]
fn product_and_stacking() {
    let rep = json!({"family": "unit_rep", "p": 2, "n": 2});
    let r = run(
        TheoremId::ThmCb,
        json!({"left": rep, "right": rep, "metric": "lee"}),
    );
    assert_eq!(r.claimed, Claim::Exact(4));
    assert_eq!(r.verdict, Verdict::Confirmed);
    let g = run(
        TheoremId::ThmG,
        json!({"lower": rep, "upper": rep, "a": [[1, 1]], "metric": "lee"}),
    );
    assert_eq!(g.claimed, Claim::AtMost(4));
    assert_eq!(g.verdict, Verdict::WithinBounds);
}

#[test]
fn field_repetition_formula_checked() {
    let r = run(TheoremId::FieldRep, json!({"q": 2, "n": 1}));
    assert_eq!(r.claimed, Claim::Exact(1));
    assert_eq!(r.computed["radius"], json!(0));
    assert_eq!(r.verdict, Verdict::Contradicted);
    assert!(recheck(r.counterexample.as_ref().unwrap(), &opts()).unwrap());
    assert_eq!(
        run(TheoremId::FieldRep, json!({"q": 2, "n": 2})).verdict,
        Verdict::Confirmed
    );
}

#[test]
fn zero_code_readings() {
    let h = run(
        TheoremId::ZeroCode,
        json!({"p": 3, "n": 2, "metric": "hamming"}),
    );
    assert_eq!(h.verdict, Verdict::Confirmed);
    let l = run(
        TheoremId::ZeroCode,
        json!({"p": 3, "n": 2, "metric": "lee"}),
    );
    assert_eq!(l.claimed, Claim::Exact(6));
    assert_eq!(l.verdict, Verdict::Confirmed);
}

#[test]
fn tampered_counterexample_fails_recheck() {
    let r = run(TheoremId::ThmL, json!({"p": 2, "n": 1}));
    let mut cx = r.counterexample.unwrap();
    cx.radius = Some(2);
    assert!(!recheck(&cx, &opts()).unwrap());
}

#[test]
fn report_json_round_trip() {
    let r = run(TheoremId::ThmI, json!({"p": 2, "n": 2}));
    let text = serde_json::to_string(&r).unwrap();
    let back: TheoremReport = serde_json::from_str(&text).unwrap();
    assert_eq!(back.computed, r.computed);
    assert_eq!(back.claimed, r.claimed);
    assert_eq!(back.counterexample, r.counterexample);
}

#[test]
fn config_grid_expansion_and_errors() {
    let c = SuiteConfig::parse(
        r#"{"audits":[{"theorem":"thm_j","params":[{"p":3,"n":1}],"grid":{"n":[1,2],"p":[2]}}]}"#,
    )
    .unwrap();
    let ex = c.expand();
    assert_eq!(ex.len(), 3);
    assert_eq!(ex[1].1, json!({"p": 2, "n": 1}));
    assert_eq!(ex[2].1, json!({"p": 2, "n": 2}));

    let err =
        SuiteConfig::parse(r#"{"audits":[{"theorem":"thm_j","params":[{"p":2,"n":1},{"p":2}]}]}"#)
            .unwrap_err();
    assert!(err.to_string().contains("audits[0].params[1]"), "{err}");
    let err = SuiteConfig::parse("{\n\"audits\": [\n{\"theorem\": \"thm_zz\"}]}").unwrap_err();
    assert!(err.to_string().contains("line 3"), "{err}");
}

#[test]
fn empty_suite_succeeds() {
    let c = SuiteConfig::parse(r#"{"audits":[]}"#).unwrap();
    let out = run_suite(&c, &opts()).unwrap();
    assert!(out.reports.is_empty());
    assert_eq!(out.exit_code(), 0);
}

#[test]
fn suite_exit_codes_and_rendering() {
    let c = SuiteConfig::parse(r#"{"audits":[{"theorem":"thm_j","params":[{"p":2,"n":2}]},{"theorem":"thm_k","params":[{"p":5,"n":1}]}]}"#)
        .unwrap();
    let out = run_suite(&c, &opts()).unwrap();
    assert_eq!(out.exit_code(), 2);
    assert_eq!(out.totals()["skipped_resource"], 1);
    let table = out.to_table();
    assert!(table.lines().next().unwrap().starts_with("theorem"));
    assert!(table.contains("skipped_resource"));
    let j = out.to_json();
    assert_eq!(j["suite"]["config_hash"].as_str().unwrap().len(), 64);
    assert_eq!(j["reports"].as_array().unwrap().len(), 2);
}

#[test]
fn default_suite_validates() {
    let c = SuiteConfig::default_suite();
    c.validate().unwrap();
    let ids: std::collections::BTreeSet<_> = c.expand().into_iter().map(|(id, _)| id).collect();
    assert_eq!(ids.len(), TheoremId::ALL.len());
}
