use super::parser::parse_expression;
use super::printer::format_poly;
use super::*;
use crate::polyring::Poly;
use proptest::prelude::*;

fn curve_ranking() -> Ranking {
    Ranking::new(&["x", "y"]).unwrap()
}

fn cole_hopf() -> DiffRanking {
    DiffRanking::orderly(2, &["zeta", "eta"]).unwrap()
}

fn problem_path(name: &str) -> String {
    format!("{}/problems/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn cli(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("thomas").chain(args.iter().copied());
    let code = run_with_io(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn parses_the_curve() {
    let r = curve_ranking();
    let (x, y) = (Poly::var(Variable(0)), Poly::var(Variable(1)));
    let p = parse_expression("y^2 - x^3 - x^2", &r).unwrap();
    assert_eq!(p, y.pow(2) - x.pow(3) - x.pow(2));
    assert_eq!(format_poly(&p, &r), "y^2 - x^3 - x^2");
}

#[test]
fn parses_jets() {
    let r = cole_hopf();
    let p = parse_expression("eta[1,0] - eta[0,0]*zeta[0,0]", &r).unwrap();
    let (eta, zeta) = (Poly::var(r.base(1)), Poly::var(r.base(0)));
    assert_eq!(p, Poly::var(r.jet(1, &[1, 0])) - &eta * &zeta);
    assert_eq!(parse_expression("eta", &r).unwrap(), eta);
    assert_eq!(format_poly(&p, &r), "eta[1,0] - zeta*eta");
}

#[test]
fn parses_rationals_and_precedence() {
    let r = curve_ranking();
    let x = Poly::var(Variable(0));
    let half = crate::polyring::Rational::new(1.into(), 2.into());
    assert_eq!(parse_expression("3/2*x - x/2", &r).unwrap(), x.clone());
    assert_eq!(parse_expression("-x^2", &r).unwrap(), -x.pow(2));
    assert_eq!(parse_expression("2*(x+1)^2", &r).unwrap(), &Poly::from_int(2) * &(x.clone() + Poly::one()).pow(2));
    assert_eq!(format_poly(&x.scale(&half), &r), "1/2*x");
}

#[test]
fn reports_errors_with_positions() {
    let r = curve_ranking();
    let e = parse_expression("x^(-1)", &r).unwrap_err();
    assert_eq!((e.line, e.column, e.message.as_str()), (1, 3, "negative exponent"));
    let e = parse_expression("x + z", &r).unwrap_err();
    assert_eq!((e.column, e.message.as_str()), (5, "unknown identifier z"));
    let e = parse_expression("x +\n  * y", &r).unwrap_err();
    assert_eq!((e.line, e.column), (2, 3));
    let e = parse_expression("eta[1]", &cole_hopf()).unwrap_err();
    assert_eq!(e.message, "jet eta needs 2 indices, got 1");
    assert!(parse_expression("x[1]", &r).is_err());
    assert!(parse_expression("x/y", &r).is_err());
    assert!(parse_expression("(x", &r).is_err());
}

#[test]
fn loads_problem_files() {
    let text = std::fs::read_to_string(problem_path("worked.json")).unwrap();
    let file: ProblemFile = serde_json::from_str(&text).unwrap();
    match file.load().unwrap() {
        Problem::Algebraic { ranking, relations } => {
            assert_eq!(ranking.names(), ["a", "x"]);
            assert_eq!(relations.len(), 2);
            assert!(!relations[1].is_equation());
        }
        Problem::Differential { .. } => panic!("wrong mode"),
    }
    let bad = r#"{"schema": 1, "mode": "algebraic", "ranking": {"variables": ["x"], "blocks": [["x"]]}}"#;
    assert!(serde_json::from_str::<ProblemFile>(bad).unwrap().load().is_err());
    let bad = r#"{"schema": 2, "mode": "algebraic", "ranking": {"variables": ["x"]}}"#;
    assert!(serde_json::from_str::<ProblemFile>(bad).unwrap().load().is_err());
    assert!(serde_json::from_str::<ProblemFile>(r#"{"schema": 1, "mode": "algebraic", "ranking": {}, "extra": 1}"#).is_err());
}

#[test]
fn equations_may_have_two_sides() {
    let r = curve_ranking();
    let rels = parse_relations(&r, &["y^2 = x".into(), "1 = 0".into()], &["x != 1".into()]).unwrap();
    assert_eq!(rels[0].poly, parse_expression("y^2 - x", &r).unwrap());
    assert!(rels[1].is_contradiction());
    assert_eq!(rels[2].poly, parse_expression("x - 1", &r).unwrap());
    assert!(parse_relations(&r, &["x != 1".into()], &[]).is_err());
}

#[test]
fn decompose_curve_through_cli() {
    let (code, out, _) = cli(&["decompose", &problem_path("curve.json")]);
    assert_eq!(code, 0);
    let result: ResultFile = serde_json::from_str(&out).unwrap();
    assert_eq!(
        result.systems,
        vec![
            SystemEntry { equations: vec!["y^2 - x^3 - x^2".into()], inequations: vec!["x^2 + x".into()] },
            SystemEntry { equations: vec!["x^2 + x".into(), "y".into()], inequations: vec![] },
        ]
    );
    assert_eq!(result.statistics.time_ms, None);
}

#[test]
fn inconsistent_input_gives_no_systems() {
    let path = problem_path("inconsistent.json");
    let (code, out, _) = cli(&["decompose", &path]);
    assert_eq!(code, 0);
    assert!(serde_json::from_str::<ResultFile>(&out).unwrap().systems.is_empty());
    assert_eq!(cli(&["decompose", &path, "--fail-on-empty"]).0, 1);
}

#[test]
fn reduce_burgers_to_zero() {
    let (code, out, _) =
        cli(&["reduce", &problem_path("colehopf.json"), "--poly", "zeta[0,1]+zeta[2,0]+2*zeta[1,0]*zeta[0,0]"]);
    assert_eq!(code, 0);
    assert_eq!(out, "0\n");
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(cli(&["decompose"]).0, 2);
    assert_eq!(cli(&["decompose", "/nonexistent/problem.json"]).0, 2);
    assert_eq!(cli(&["decompose", &problem_path("curve.json"), "--jobs", "0"]).0, 2);
    assert_eq!(cli(&["decompose", &problem_path("curve.json"), "--verify", "--tolerance", "1e-60"]).0, 2);
    assert_eq!(cli(&["decompose", &problem_path("curve.json"), "--max-iterations", "2"]).0, 2);
    let (code, _, err) = cli(&["reduce", &problem_path("curve.json"), "--poly", "x^(-1)"]);
    assert_eq!(code, 2);
    assert!(err.contains("negative exponent"));
}

#[test]
fn verify_round_trip() {
    let dir = std::env::temp_dir().join(format!("thomas-frontend-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let result = dir.join("worked.json");
    let (code, _, _) = cli(&["decompose", &problem_path("worked.json"), "--output", result.to_str().unwrap()]);
    assert_eq!(code, 0);
    let (code, out, _) = cli(&["verify", result.to_str().unwrap()]);
    assert_eq!(code, 0);
    let report: Report = serde_json::from_str(&out).unwrap();
    assert!(report.ok() && report.points > 0);

    let mut tampered: ResultFile = serde_json::from_str(&std::fs::read_to_string(&result).unwrap()).unwrap();
    tampered.systems.push(tampered.systems[0].clone());
    std::fs::write(&result, serde_json::to_string(&tampered).unwrap()).unwrap();
    assert_eq!(cli(&["verify", result.to_str().unwrap()]).0, 1);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn differential_verification_is_symbolic() {
    let (code, out, _) = cli(&["decompose", &problem_path("control.json"), "--verify"]);
    assert_eq!(code, 0);
    let result: ResultFile = serde_json::from_str(&out).unwrap();
    assert_eq!(result.systems.len(), 2);
    assert!(result.verification.unwrap().ok());
}

#[test]
fn output_is_independent_of_jobs() {
    for name in ["curve.json", "worked.json", "colehopf.json"] {
        let one = cli(&["decompose", &problem_path(name), "--jobs", "1"]);
        let four = cli(&["decompose", &problem_path(name), "--jobs", "4"]);
        assert_eq!(one, four);
    }
}

fn arb_poly() -> impl Strategy<Value = Poly<Variable>> {
    let term = (-9i64..=9, 1i64..=4, 0u32..=3, 0u32..=3);
    proptest::collection::vec(term, 0..5).prop_map(|ts| {
        ts.into_iter().fold(Poly::zero(), |acc, (n, d, i, j)| {
            let c = crate::polyring::Rational::new(n.into(), d.into());
            acc + Poly::var(Variable(0)).pow(i) * Poly::var(Variable(1)).pow(j) * Poly::constant(c)
        })
    })
}

fn arb_jet_poly() -> impl Strategy<Value = Poly<Jet>> {
    let term = (-5i64..=5, 0u32..2, 0u32..=2, 0u32..=2, 1u32..=2);
    proptest::collection::vec(term, 0..4).prop_map(|ts| {
        let r = cole_hopf();
        ts.into_iter().fold(Poly::zero(), |acc, (c, u, i, j, e)| acc + &Poly::from_int(c) * &Poly::var(r.jet(u, &[i, j])).pow(e))
    })
}

proptest! {
    #[test]
    fn prop_parse_inverts_print(p in arb_poly()) {
        let r = curve_ranking();
        prop_assert_eq!(parse_expression(&format_poly(&p, &r), &r).unwrap(), p);
    }

    #[test]
    fn prop_parse_inverts_print_on_jets(p in arb_jet_poly()) {
        let r = cole_hopf();
        prop_assert_eq!(parse_expression(&format_poly(&p, &r), &r).unwrap(), p);
    }

    #[test]
    fn prop_canonical_printing_is_idempotent(p in arb_poly()) {
        let r = curve_ranking();
        let once = format_poly(&p.normalized(), &r);
        let again = format_poly(&parse_expression(&once, &r).unwrap().normalized(), &r);
        prop_assert_eq!(once, again);
    }
}

#[test]
fn reports_unicode_characters() {
    let e = parse_expression("x·y", &curve_ranking()).unwrap_err();
    assert_eq!((e.column, e.message.as_str()), (2, "unexpected '·'"));
}
