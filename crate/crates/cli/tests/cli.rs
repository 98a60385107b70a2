use std::io::Write;
use std::process::{Command, Output, Stdio};

use milnor_alg::polyring::{format_polynomial, parse_polynomial, PrimeField, Ring};
use proptest::prelude::*;
use serde_json::Value;

fn milnor(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_milnor"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    {
        let mut input = child.stdin.take().unwrap();
        if let Some(s) = stdin {
            input.write_all(s.as_bytes()).unwrap();
        }
    }
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

fn line<'a>(text: &'a str, key: &str) -> &'a str {
    text.lines().find_map(|l| l.strip_prefix(key)).unwrap_or_else(|| panic!("no '{key}' in\n{text}")).trim()
}

const FERMAT: &str = "x0^3+x1^3+x2^3+x3^3";

#[test]
fn fermat_report_text_and_json_agree() {
    let o = milnor(&["milnor-report", FERMAT], None);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(line(&text, "T:"), "4");
    assert_eq!(line(&text, "reg:"), "4");
    assert_eq!(line(&text, "st:"), "5");
    assert!(text.contains("reg = T"));
    let j = json(&milnor(&["milnor-report", FERMAT, "--format", "json"], None));
    assert_eq!(j["T"], 4);
    assert_eq!(j["reg"], 4);
    assert_eq!(j["st"], 5);
    assert_eq!(j["pd"], 4);
    assert_eq!(j["config"]["seed"], 0);
    assert_eq!(j["config"]["field"]["Prime"], 32003);
    let hf: Vec<String> = j["hf_samples"].as_array().unwrap().iter().map(|v| v.to_string()).collect();
    assert_eq!(line(&text, "HF:"), hf.join(" "));
    let ranks: Vec<i64> = (0..5).map(|i| j["betti"]["entries"].as_array().unwrap().iter().filter(|e| e["i"] == i).map(|e| e["rank"].as_i64().unwrap()).sum()).collect();
    assert_eq!(ranks, vec![1, 4, 6, 4, 1]);
    assert!(text.contains("total: 1 4 6 4 1"));
}

#[test]
fn rationals_give_the_same_report() {
    let j = json(&milnor(&["--field", "QQ", "--format", "json", "milnor-report", FERMAT], None));
    assert_eq!((j["reg"].as_i64(), j["st"].as_i64()), (Some(4), Some(5)));
    assert_eq!(j["config"]["field"], "Rationals");
}

#[test]
fn bigraded_example_at_degree_nineteen() {
    let o = milnor(&["bigraded-syzygy", "--k", "6", "--d", "19", "--seed", "1"], None);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(line(&text, "bidegree:"), "(108,18)");
    assert_eq!(line(&text, "predicted:"), "(108,18)");
    assert_eq!(line(&text, "total degree:"), "126");
    assert_eq!(line(&text, "reg lower bound:"), "124");
    assert_eq!(line(&text, "certificate:"), "passed");
}

#[test]
fn arrangement_pipes_into_resolve() {
    let fam = milnor(&["family", "arrangement", "--n", "3", "--d", "5"], None);
    assert_eq!(fam.status.code(), Some(0));
    let o = milnor(&["resolve"], Some(&stdout(&fam)));
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(line(&text, "reg:"), "4");
    assert_eq!(line(&text, "depth:"), "0");
    assert_eq!(line(&text, "hilbert series check:"), "pass");
    // the JSON form of a family is an input document too
    let fam = milnor(&["--format", "json", "family", "arrangement", "--n", "3", "--d", "5"], None);
    let o = milnor(&["--format", "json", "resolve"], Some(&stdout(&fam)));
    assert_eq!(json(&o)["reg"], 4);
}

#[test]
fn family_output_is_seed_determined() {
    let a = stdout(&milnor(&["--seed", "7", "family", "arrangement", "--n", "3", "--d", "6"], None));
    let b = stdout(&milnor(&["--seed", "7", "family", "arrangement", "--n", "3", "--d", "6"], None));
    let c = stdout(&milnor(&["--seed", "8", "family", "arrangement", "--n", "3", "--d", "6"], None));
    assert_eq!(a, b);
    assert_ne!(line(&a, "hypersurface:"), line(&c, "hypersurface:"));
}

#[test]
fn syntax_errors_exit_with_one() {
    let o = milnor(&["hilbert", "x0^2 +"], None);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("offset 6"));
    let o = milnor(&["gb", "--order", "bogus", "x0"], None);
    assert_eq!(o.status.code(), Some(1));
    let o = milnor(&["--field", "32004", "gb", "x0"], None);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn groebner_and_hilbert_commands() {
    let text = stdout(&milnor(&["gb", "--nvars", "3", "x0^2 - x1*x2", "x0*x1"], None));
    assert_eq!(line(&text, "complete:"), "true");
    let j = json(&milnor(&["--format", "json", "gb", "--nvars", "3", "x0^2 - x1*x2", "x0*x1"], None));
    let basis: Vec<&str> = j["basis"].as_array().unwrap().iter().map(|v| v.as_str().unwrap()).collect();
    assert_eq!(basis, vec!["x0^2 - x1*x2", "x0*x1", "x1^2*x2"]);
    let text = stdout(&milnor(&["hilbert", "--jacobian", FERMAT], None));
    assert_eq!(line(&text, "HF:"), "1 4 6 4 1 0 0");
    assert_eq!(line(&text, "st:"), "5");
    let text = stdout(&milnor(&["hilbert", "x0", "x1"], None));
    assert_eq!(line(&text, "HP:"), "k + 1");
}

#[test]
fn caps_mark_results_as_bounds() {
    let o = milnor(&["--length-cap", "2", "resolve", "--jacobian", FERMAT], None);
    let text = stdout(&o);
    assert!(line(&text, "status:").starts_with("truncated"));
    assert!(line(&text, "reg:").ends_with("(lower bound)"));
    assert!(!text.contains("hilbert series check"));
}

#[test]
fn bigraded_resolution_reports_bidegrees() {
    let fam = milnor(&["family", "bigraded", "--k", "1", "--d", "4", "--seed", "2"], None);
    let text = stdout(&milnor(&["--length-cap", "3", "resolve"], Some(&stdout(&fam))));
    let f2 = line(&text, "bidegrees F_2:");
    assert!(f2.contains("(1,3)") && f2.contains("(3,3)"), "{f2}");
}

#[test]
fn surface_presets() {
    let text = stdout(&milnor(&["family", "surfaces", "--preset", "plane-cone", "--d", "3"], None));
    assert!(text.contains("# jacobian = (g_i) * H: true"));
    assert!(text.contains("# maximal minors of psi are the g_i: true"));
    // the cone vertex (0:0:0:1) is an extra singular point off the plane
    assert!(text.contains("# saturation of J_f equals (g_i): false"));
    let j = json(&milnor(&["--format", "json", "milnor-report"], Some(&text)));
    assert_eq!(j["st"], 4);
}

#[test]
fn verify_suite_exit_codes() {
    let o = milnor(&["verify", "--only", "1,5"], None);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("PASS 1 "));
    let o = milnor(&["verify", "--only", "9", "--mutate-minimalize"], None);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("FAIL 9 "));
    let j = json(&milnor(&["--format", "json", "verify", "--only", "4,6", "--seeds", "0,1,2"], None));
    assert_eq!(j["seed_stable"], true);
    assert_eq!(j["runs"].as_array().unwrap().len(), 3);
}

#[test]
fn regression_polynomials_round_trip() {
    let ring = Ring::new(PrimeField::default(), 4);
    for s in [FERMAT, "x3*(x0^2+x1^2+x2^2)", "(x1^3 + 2*x2^3 + x3^3)*(x0^3 + x1^3 + x2^3)", "-x0*x1*x2*x3 + 7", "x0^2*x1 - 16001*x3^3"] {
        let p = parse_polynomial(&ring, s).unwrap();
        assert_eq!(parse_polynomial(&ring, &format_polynomial(&p)).unwrap(), p);
    }
    let v3 = parse_polynomial(&ring, "x3*(x0^2+x1^2+x2^2)").unwrap();
    assert_eq!(format_polynomial(&v3), "x0^2*x3 + x1^2*x3 + x2^2*x3");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn printed_polynomials_parse_back(terms in proptest::collection::vec((-40i64..40, proptest::collection::vec(0u16..4, 4)), 0..8)) {
        let ring = Ring::new(PrimeField::default(), 4);
        let mut src = String::from("0");
        for (c, e) in &terms {
            let sign = if *c < 0 { '-' } else { '+' };
            src.push_str(&format!(" {sign} {}*x0^{}*x1^{}*x2^{}*x3^{}", c.abs(), e[0], e[1], e[2], e[3]));
        }
        let p = parse_polynomial(&ring, &src).unwrap();
        prop_assert_eq!(parse_polynomial(&ring, &format_polynomial(&p)).unwrap(), p);
    }
}
