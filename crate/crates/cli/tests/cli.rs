use std::process::Command;

use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};
use serde_json::Value;
use zariski_cli::{parse_poly_expr, ParseError};
use zariski_core::afield::{ratio, Field, Quad};
use zariski_core::poly::{vars_of, Monomial, MultiPoly};

fn forge(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_zariski-forge")).args(args).output().expect("binary runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn json_body(args: &[&str]) -> (i32, Value) {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let (code, out, err) = forge(&all);
    let v: Value = serde_json::from_str(&out).unwrap_or_else(|e| panic!("{args:?}: {e}\n{out}\n{err}"));
    (code, v)
}

#[test]
fn golden_exit_codes() {
    let cases: &[(&[&str], i32)] = &[
        (&["derive-family"], 0),
        (&["verify", "prop4"], 0),
        (&["verify", "prop5"], 0),
        (&["build", "series1", "--q", "5", "--seed", "7"], 0),
        (&["build", "series1", "--q", "3"], 1),
        (&["build", "series2", "--q", "3"], 0),
        (&["build", "series2", "--q", "4"], 1),
        (&["build", "cpqk", "--p", "3", "--q", "2", "--k", "1"], 0),
        (&["check-conditions", "--expr", "(X+Y+Z)^3 + (a-6)*X*Y*Z", "--param", "a=7"], 2),
        (&["--field", "Qw", "check-conditions", "--expr", "(X+Y+Z)^3 + 3*(w^2-1)*X^2*Y + 3*(w-1)*X*Y^2"], 0),
        (&["check-conditions", "--expr", "X^2 + Y"], 1),
        (&["singular-points", "--expr", "X^2*Z - Y^2*Z - X^3"], 0),
        (&["singular-points", "--expr", "Y^2*Z^2 - (X^2-2*Z^2)^2"], 3),
        (&["singular-points", "--expr", "X^"], 1),
        (&["singular-points", "--expr", "i*X*Y*Z"], 1),
        (&["abelianization", "--p", "3", "--q", "2", "--k", "1"], 0),
        (&["abelianization", "--p", "2", "--q", "4"], 1),
        (&["nonabelian-cert", "--p", "3", "--q", "2"], 0),
        (&["nonabelian-cert", "--p", "3", "--q", "2", "--max-degree", "2"], 3),
        (&["pair", "--p", "3", "--q", "2", "--k", "1"], 0),
        (&["pair", "--p", "3", "--q", "2", "--series", "series2"], 1),
        (&["no-such-command"], 1),
        (&["--help"], 0),
        (&["--version"], 0),
    ];
    for (args, expected) in cases {
        let (code, _, err) = forge(args);
        assert_eq!(code, *expected, "{args:?}: {err}");
    }
}

#[test]
fn input_files_hold_one_expression_per_line() {
    let dir = std::env::temp_dir().join(format!("zariski-forge-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("quartic.txt");
    std::fs::write(&path, "# quartic pencil\n(x1^2+x2^2)^2 + 2*x3*x4*(x1^2-x2^2) + x3^2*x4^2\n\n").unwrap();
    let (code, v) = json_body(&["check-conditions", "--input", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    let names: Vec<&str> = v["checks"].as_array().unwrap().iter().map(|c| c["name"].as_str().unwrap()).collect();
    assert_eq!(names, ["condition_1", "condition_2", "condition_3", "condition_4"]);
    assert_eq!(v["result"][0]["p"], 2);
    let (code, _, err) = forge(&["check-conditions", "--input", dir.join("missing.txt").to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(err.contains("cannot read"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn reports_of_the_worked_examples() {
    let (code, v) = json_body(&["verify", "prop5"]);
    assert_eq!(code, 0);
    assert_eq!(v["schema"], "zariski-forge/1");
    assert_eq!(v["toolkit"]["version"], env!("CARGO_PKG_VERSION"));
    let points = v["result"]["sing_s2"].as_array().unwrap();
    assert_eq!(points.len(), 4);

    let (code, v) = json_body(&["build", "series1", "--q", "5", "--seed", "7"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["bundle"]["degree"], 15);
    assert_eq!(v["result"]["verification"]["records"].as_array().unwrap().len(), 15);

    let (code, v) = json_body(&["abelianization", "--p", "3", "--q", "2", "--k", "1"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["elementary_divisors"], serde_json::json!([6]));

    let (code, v) = json_body(&["check-conditions", "--expr", "(X+Y+Z)^3 + (a-6)*X*Y*Z", "--param", "a=7"]);
    assert_eq!(code, 2);
    let c1 = &v["checks"][0];
    assert_eq!(c1["name"], "condition_1");
    assert_eq!(c1["passed"], false);
    assert!(!c1["witnesses"].as_array().unwrap().is_empty());
}

#[test]
fn syntax_errors_report_their_offset() {
    let err = parse_poly_expr("X^", &["X".to_string()], &Field::rationals()).unwrap_err();
    assert!(matches!(err, ParseError::Syntax { offset: 2, .. }));
    let (code, out, err) = forge(&["singular-points", "--expr", "X^"]);
    assert_eq!(code, 1);
    assert!(out.is_empty());
    assert!(err.contains("offset 2"), "{err}");
}

fn strip_timing(mut v: Value) -> String {
    v.as_object_mut().unwrap().remove("timing");
    serde_json::to_string(&v).unwrap()
}

#[test]
fn identical_requests_give_identical_reports() {
    for args in [
        &["build", "series1", "--q", "4", "--seed", "3"][..],
        &["build", "cpqk", "--p", "2", "--q", "3", "--seed", "11"],
        &["verify", "prop4"],
        &["nonabelian-cert", "--p", "2", "--q", "5"],
    ] {
        let (c1, a) = json_body(args);
        let (c2, b) = json_body(args);
        assert_eq!(c1, c2);
        assert_eq!(strip_timing(a), strip_timing(b), "{args:?}");
    }
}

fn coefficient(field_index: usize) -> impl Strategy<Value = Quad> {
    let part = (-30i64..30, 1i64..8).prop_map(|(n, d)| ratio(n, d));
    (part.clone(), part).prop_map(move |(a0, a1)| if field_index == 0 { Quad::from_rational(a0) } else { Quad::new(a0, a1) })
}

fn polynomial() -> impl Strategy<Value = MultiPoly> {
    (0usize..3).prop_flat_map(|fi| {
        let term = (prop::collection::vec(0u32..4, 3), coefficient(fi));
        prop::collection::vec(term, 0..7).prop_map(move |terms| {
            let field = [Field::rationals(), Field::eisenstein(), Field::gaussian()][fi].clone();
            let mut f = MultiPoly::zero(vars_of(&["x", "y1", "Z"]), field);
            for (e, c) in terms {
                f.add_term(Monomial(e), c);
            }
            f
        })
    })
}

#[test]
fn canonical_print_round_trips() {
    let mut runner = TestRunner::new(Config { cases: 256, ..Config::default() });
    runner
        .run(&polynomial(), |f| {
            let text = f.to_canonical_string();
            let vars: Vec<String> = f.vars().to_vec();
            let back = parse_poly_expr(&text, &vars, f.field()).map_err(|e| TestCaseError::fail(format!("{text}: {e}")))?;
            prop_assert_eq!(back, f, "{}", text);
            Ok(())
        })
        .unwrap();
}
