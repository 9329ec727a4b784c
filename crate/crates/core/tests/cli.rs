use ghpq::cli::{parse_bindings, parse_pq_set, run};
use ghpq::var::Var;
use serde_json::Value;

fn ghpq(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("ghpq").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn schema(name: &str) -> jsonschema::JSONSchema {
    let path = format!("{}/schemas/{name}.schema.json", env!("CARGO_MANIFEST_DIR"));
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::JSONSchema::compile(&doc).unwrap()
}

fn assert_valid(name: &str, doc: &str) -> Value {
    let v: Value = serde_json::from_str(doc).unwrap();
    let s = schema(name);
    if let Err(errors) = s.validate(&v) {
        let msgs: Vec<String> = errors.map(|e| format!("{} at {}", e, e.instance_path)).collect();
        panic!("{name} schema violations: {msgs:?}");
    }
    v
}

#[test]
fn compute_latex_example() {
    let (code, out, _) = ghpq(&["compute", "--p", "1", "--q", "1", "--n", "2", "--m", "1", "--format", "latex"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim_end(), r"z^{2}w + 2\gamma z");
}

#[test]
fn compute_text_uses_ascii_gamma() {
    let (code, out, _) = ghpq(&["compute", "--p", "2", "--q", "1", "--n", "3", "--m", "2"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim_end(), "z^3*w^2 + 12*z*w*gamma");
}

#[test]
fn every_strategy_agrees_from_the_command_line() {
    let base = ["compute", "--p", "2", "--q", "2", "--n", "5", "--m", "4", "--strategy"];
    let outs: Vec<String> = ["explicit", "operational", "creation", "recurrence", "genfun", "hypergeom"]
        .iter()
        .map(|s| {
            let mut args = base.to_vec();
            args.push(s);
            let (code, out, err) = ghpq(&args);
            assert_eq!(code, 0, "{s}: {err}");
            out
        })
        .collect();
    assert!(outs.windows(2).all(|w| w[0] == w[1]));
}

#[test]
fn compute_json_and_subst() {
    let (code, out, _) = ghpq(&[
        "compute", "--p", "1", "--q", "1", "--n", "2", "--m", "1", "--subst", "z=1/2, gamma=-1", "--format", "json",
    ]);
    assert_eq!(code, 0);
    let v = assert_valid("compute", &out);
    assert_eq!(v["text"], "1/4*w - 1");
}

#[test]
fn compute_csv_has_header() {
    let (code, out, _) = ghpq(&["compute", "--p", "1", "--q", "1", "--n", "1", "--m", "1", "--format", "csv"]);
    assert_eq!(code, 0);
    assert!(out.lines().count() >= 3);
}

#[test]
fn compute_rejects_bad_input() {
    assert_eq!(ghpq(&["compute", "--p", "0", "--q", "0", "--n", "1", "--m", "1"]).0, 2);
    assert_eq!(ghpq(&["compute", "--p", "1", "--q", "1", "--n", "1", "--m", "1", "--strategy", "magic"]).0, 2);
    assert_eq!(ghpq(&["compute", "--p", "1", "--q", "1", "--n", "1", "--m", "1", "--bogus"]).0, 2);
    assert_eq!(ghpq(&["compute", "--p", "1", "--q", "0", "--n", "1", "--m", "1", "--strategy", "hypergeom"]).0, 2);
    let (code, _, err) = ghpq(&["compute", "--p", "1", "--q", "1", "--n", "1", "--m", "1", "--subst", "x=1"]);
    assert_eq!(code, 2);
    assert!(err.starts_with("error:"));
}

#[test]
fn verify_symmetry_example() {
    let (code, out, _) = ghpq(&["verify", "--tag", "SYMMETRY", "--nmax", "3", "--mmax", "3", "--pq", "1,1"]);
    assert_eq!(code, 0);
    let v = assert_valid("verify", &out);
    let reports = v.as_array().unwrap();
    assert_eq!(reports.len(), 16);
    assert!(reports.iter().all(|r| r["status"] == "ExactPass"));
}

#[test]
fn verify_printed_param_rec_fails() {
    let (code, out, _) =
        ghpq(&["verify", "--tag", "PARAM_REC", "--variant", "printed", "--pq", "1,1", "--nmax", "2", "--mmax", "1"]);
    assert_eq!(code, 1);
    let v = assert_valid("verify", &out);
    let fails: Vec<&Value> = v.as_array().unwrap().iter().filter(|r| r["status"] == "Fail").collect();
    assert!(!fails.is_empty());
    assert!(fails.iter().all(|r| !r["difference"].as_array().unwrap().is_empty()));
}

#[test]
fn verify_corrected_param_rec_passes() {
    let (code, out, _) = ghpq(&[
        "verify", "--tag", "PARAM_REC", "--variant", "corrected", "--pq", "1,1;2,1", "--nmax", "3", "--mmax", "3",
    ]);
    assert_eq!(code, 0);
    let v = assert_valid("verify", &out);
    assert!(v.as_array().unwrap().iter().all(|r| r["variant"].as_str().unwrap().starts_with("corrected:")));
}

#[test]
fn verify_series_tags_report_order() {
    let (code, out, _) = ghpq(&["verify", "--tag", "gen_full,gen_partial_u", "--pq", "1,1", "--nmax", "2", "--mmax", "2", "--order", "6"]);
    assert_eq!(code, 0);
    let v = assert_valid("verify", &out);
    assert!(v.as_array().unwrap().iter().all(|r| r["status"] == "SeriesPass" && r["order"] == 6));
}

#[test]
fn verify_junit_and_text() {
    let args = ["verify", "--tag", "RUNGE_HALF", "--pq", "1,1", "--nmax", "2", "--mmax", "2"];
    let (code, out, _) = ghpq(&[&args[..], &["--format", "junit"]].concat());
    assert_eq!(code, 0);
    assert!(out.starts_with("<?xml"));
    assert!(out.contains(r#"failures="0""#));
    assert!(out.contains("printed form fails"));
    let (code, out, _) = ghpq(&[&args[..], &["--format", "text", "--variant", "printed"]].concat());
    assert_eq!(code, 1);
    assert!(out.lines().last().unwrap().starts_with("cells: 9,"));
}

#[test]
fn verify_usage_errors() {
    assert_eq!(ghpq(&["verify", "--tag", "NO_SUCH_TAG"]).0, 2);
    assert_eq!(ghpq(&["verify", "--tag", "GEN_FULL", "--order", "1", "--pq", "1,1"]).0, 2);
    assert_eq!(ghpq(&["verify", "--pq", "1;1"]).0, 2);
    assert_eq!(ghpq(&["verify", "--pq", "0,0"]).0, 2);
    assert_eq!(ghpq(&["verify", "--variant", "sometimes"]).0, 2);
}

#[test]
fn heat_examples() {
    let (code, out, _) = ghpq(&["heat", "--p", "1", "--q", "1", "--initial", "z^2*w"]);
    assert_eq!(code, 0);
    assert_eq!(out, "u = z^2*w + 2*z*t\nresidual = 0\n");
    let (code, out, _) = ghpq(&["heat", "--p", "2", "--q", "0", "--initial", "z^3"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("u = z^3 + 6*z*t\n"));
    let (code, out, _) = ghpq(&["heat", "--p", "1", "--q", "2", "--c", "-3/7", "--initial", "z^2*w^4 - 1/2", "--format", "json"]);
    assert_eq!(code, 0);
    let v = assert_valid("heat", &out);
    assert_eq!(v["residual"], "0");
    assert_eq!(v["c"], "-3/7");
}

#[test]
fn heat_rejects_bad_input() {
    assert_eq!(ghpq(&["heat", "--p", "1", "--q", "1", "--initial", "z^-1"]).0, 2);
    assert_eq!(ghpq(&["heat", "--p", "1", "--q", "1", "--initial", "gamma*z"]).0, 2);
    assert_eq!(ghpq(&["heat", "--p", "0", "--q", "0", "--initial", "z"]).0, 2);
    assert_eq!(ghpq(&["heat", "--p", "1", "--q", "1", "--c", "1/0", "--initial", "z"]).0, 2);
}

#[test]
fn small_audit_validates_and_is_stable() {
    let args = ["audit", "--nmax", "2", "--mmax", "2", "--pq", "1,1;2,1", "--heat-samples", "3", "--seed", "7"];
    let (code, first, _) = ghpq(&args);
    assert_eq!(code, 0);
    let v = assert_valid("audit", &first);
    assert_eq!(v["heat"]["checks"].as_array().unwrap().len(), 3 * 2 * 3);
    assert_eq!(v["summary"]["fail"], 0);
    let (_, second, _) = ghpq(&[&args[..], &["--jobs", "2"]].concat());
    assert_eq!(first, second);
    let (_, other_seed, _) = ghpq(&[&args[..8], &["--seed", "8"]].concat());
    assert_ne!(first, other_seed);
}

#[test]
fn help_exits_zero() {
    let (code, out, _) = ghpq(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("verify"));
}

#[test]
fn helpers_parse() {
    assert_eq!(parse_pq_set("1,1; 2,1;").unwrap(), vec![(1, 1), (2, 1)]);
    assert!(parse_pq_set("").is_err());
    let b = parse_bindings("z=w+1,gamma=2", &[Var::Z, Var::W, Var::Gamma]).unwrap();
    assert_eq!(b.len(), 2);
    assert!(parse_bindings("z=1,z=2", &[Var::Z]).is_err());
}
