use std::process::{Command, Output};

const PARAMS: &str = "t=1/3,t0=1/5,t1=1/7,t2=1/11";

fn qboson(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qboson"))
        .args(args)
        .env("QBOSON_THREADS", "2")
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn constant_shift_example() {
    let out = qboson(&["constant-shift", "--n", "1", "--params", "t=1/3,t0=1/5,t1=1,t2=1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out), "26/5");
}

#[test]
fn principal_specialisation_is_one() {
    let out = qboson(&["principal", "--lambda", "2,1", "--mode", "four"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out), "1");
}

#[test]
fn coeff_w_single_site() {
    let out = qboson(&["coeff-w", "--mode", "three", "--lambda", "0", "--plus", "1", "--params", PARAMS]);
    assert_eq!(out.status.code(), Some(0));
    // (1 - t0 t1)(1 - t0 t2)(1 - t1 t2) = (34/35)(54/55)(76/77)
    assert_eq!(stdout_json(&out), "139536/148225");
}

#[test]
fn gauge_and_coefficients_are_rationals() {
    for args in [
        vec!["gauge-h", "--lambda", "2,1", "--params", PARAMS],
        vec!["coeff-v", "--lambda", "2,1", "--plus", "1", "--params", PARAMS],
        vec!["coeff-u", "--lambda", "2,1", "--k", "1", "--m", "1", "--params", PARAMS],
    ] {
        let out = qboson(&args);
        assert_eq!(out.status.code(), Some(0), "{args:?}");
        assert!(stdout_json(&out).is_string());
    }
}

#[test]
fn apply_explicit_matches_general_h1() {
    let general = qboson(&["apply", "--l", "1", "--lambda", "2,0", "--params", PARAMS]);
    let explicit = qboson(&["apply", "--l", "1", "--lambda", "2,0", "--explicit", "--params", PARAMS]);
    assert_eq!(general.status.code(), Some(0));
    assert_eq!(general.stdout, explicit.stdout);
}

#[test]
fn commute_and_pieri_pass() {
    let out = qboson(&["commute", "--lambda", "1,0", "--k", "1", "--l", "2", "--params", PARAMS]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out), serde_json::json!([]));

    let out = qboson(&["pieri", "--lambda", "1,0", "--l", "1", "--mode", "four", "--params", "t=1/3,t0=1/5,t1=1/7,t2=1/11,t3=2/9"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["pass"], true);
}

#[test]
fn hl_and_e_poly_emit_term_lists() {
    for args in [
        vec!["hl", "--lambda", "1,0", "--params", PARAMS],
        vec!["e-poly", "--n", "2", "--l", "1", "--params", PARAMS],
    ] {
        let out = qboson(&args);
        assert_eq!(out.status.code(), Some(0), "{args:?}");
        assert!(!stdout_json(&out).as_array().unwrap().is_empty());
    }
}

#[test]
fn suite_passes_and_is_reproducible() {
    let args = ["suite", "--n", "2", "--cutoff", "2", "--seed", "7", "--tuples", "1", "--check", "commute,pieri,gauge"];
    let a = qboson(&args);
    let b = qboson(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout_json(&a)["pass"], true);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn suite_writes_report_file() {
    let path = std::env::temp_dir().join(format!("qboson-cli-{}.json", std::process::id()));
    let path_str = path.to_str().unwrap();
    let out = qboson(&["suite", "--n", "1", "--cutoff", "2", "--check", "h1", "--out", path_str]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let report: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    std::fs::remove_file(&path).ok();
    assert_eq!(report["pass"], true);
}

#[test]
fn literal_variant_fails_pieri() {
    let out = qboson(&["suite", "--n", "1", "--cutoff", "3", "--lmax", "1", "--mode", "three", "--check", "pieri", "--variant", "literal"]);
    assert_eq!(out.status.code(), Some(1));
    let report = stdout_json(&out);
    assert_eq!(report["pass"], false);
    assert!(report["checks"][0]["failed"].as_u64().unwrap() > 0);
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["bogus"],
        vec!["coeff-w", "--lambda", "1,2", "--plus", "1", "--params", PARAMS],
        vec!["coeff-w", "--lambda", "0", "--plus", "1", "--params", "t=1/3"],
        vec!["principal", "--lambda", "1", "--mode", "both"],
        vec!["suite", "--n", "1", "--check", "nonsense"],
    ] {
        assert_eq!(qboson(&args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn degenerate_parameters_exit_three() {
    let out = qboson(&["coeff-w", "--lambda", "0,0", "--plus", "1", "--params", "t=-1,t0=1/5,t1=1/7,t2=1/11"]);
    assert_eq!(out.status.code(), Some(3));
}
