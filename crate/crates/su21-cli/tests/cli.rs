use std::process::Command;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use su21::traces::trace_coordinates;
use su21::{sample, Cx, Element};
use su21_cli::run;

fn su21(args: &[&str], stdin: &str) -> su21_cli::Outcome {
    let mut v = vec!["su21"];
    v.extend_from_slice(args);
    run(v, stdin.as_bytes())
}

fn stdout_json(o: &su21_cli::Outcome) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

fn cx(z: Cx) -> Value {
    json!([z.re, z.im])
}

fn matrix(g: &Element) -> Value {
    json!(g
        .m
        .0
        .iter()
        .map(|r| r.iter().map(|z| cx(*z)).collect::<Vec<_>>())
        .collect::<Vec<_>>())
}

#[test]
fn classify_diagonal_loxodromic() {
    let o = su21(
        &["classify"],
        r#"{"form":"siegel","matrix":[[[2,0],[0,0],[0,0]],[[0,0],[1,0],[0,0]],[[0,0],[0,0],[0.5,0]]]}"#,
    );
    assert_eq!(o.code, 0, "{}", o.stderr);
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(
        text.starts_with(
            r#"{"class":"Loxodromic","data":{"lambda":[2,0],"length":1.3862943611198906}"#
        ),
        "{text}"
    );
}

#[test]
fn modular_scan_rows_are_monotone() {
    let o = su21(&["modular-scan", "--family", "line", "--steps", "3"], "");
    assert_eq!(o.code, 0);
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(!text.contains('\r'));
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(
        lines[0],
        "alpha,cos3alpha,trCommRe,cartan,commClass,verdict"
    );
    assert_eq!(lines.len(), 4);
    let alphas: Vec<f64> = lines[1..]
        .iter()
        .map(|l| l.split(',').next().unwrap().parse().unwrap())
        .collect();
    assert!(alphas.windows(2).all(|w| w[0] < w[1]));
    assert!((alphas[0] - std::f64::consts::FRAC_PI_6).abs() < 1e-15);
    assert!((alphas[2] - std::f64::consts::FRAC_PI_3).abs() < 1e-15);
    // the nested spelling is the same command
    assert_eq!(
        su21(&["modular", "scan", "--family", "line", "--steps", "3"], "").stdout,
        text.as_bytes()
    );
}

#[test]
fn exists_echoes_phi_of_a_sampled_pair() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..5 {
        let a = sample::loxodromic(&mut rng);
        let b = sample::loxodromic(&mut rng);
        let phi = trace_coordinates(&a, &b).phi();
        let doc = json!({"phi": phi.iter().map(|z| cx(*z)).collect::<Vec<_>>()});
        let o = su21(&["exists"], &doc.to_string());
        assert_eq!(o.code, 0, "{}", String::from_utf8_lossy(&o.stdout));
        let v = stdout_json(&o);
        assert_eq!(v["exists"], json!(true));
        let ws = v["witnesses"].as_array().unwrap();
        assert!(!ws.is_empty());
        for w in ws {
            // rebuild the witness from its printed matrices
            let a2 = read_element(&w["a"]);
            let b2 = read_element(&w["b"]);
            let phi2 = trace_coordinates(&a2, &b2).phi();
            for (x, y) in phi.iter().zip(&phi2) {
                assert!((x - y).norm() < 1e-6 * (1.0 + x.norm()), "{x} vs {y}");
            }
        }
    }
}

fn read_element(v: &Value) -> Element {
    let doc = su21_cli::input::element(v, None, su21::Form::Siegel).unwrap();
    assert_eq!(v["form"], json!("siegel"));
    doc
}

#[test]
fn pair_reports_trace_data() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let a = sample::loxodromic(&mut rng);
    let b = sample::loxodromic(&mut rng);
    let doc = json!({"form": "siegel", "a": matrix(&a), "b": matrix(&b)});
    let o = su21(&["pair"], &doc.to_string());
    assert_eq!(o.code, 0, "{}", o.stderr);
    let v = stdout_json(&o);
    assert_eq!(v["classA"]["class"], json!("Loxodromic"));
    let x = a.commutator(&b).trace();
    let res = v["traceEquation"]["residual"].as_f64().unwrap();
    assert!(res <= 1e-8 * (1.0 + x.norm_sqr()), "{res}");
    assert!(v["normalForm"]["crossRatios"]["X1"].is_array());
    assert!(v["strike"]["residual"].as_f64().unwrap() < 1e-8);
}

#[test]
fn invariants_of_points() {
    let three = r#"{"form":"siegel","points":[[1,0,0],[0,0,1],[[-0.5,0],[0,1],1]]}"#;
    let o = su21(&["invariants"], three);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let v = stdout_json(&o);
    assert!(v["cartan"].as_f64().unwrap().abs() <= std::f64::consts::FRAC_PI_2);
    let bad = su21(&["invariants"], r#"{"points":[[1,0,0],[1,0,0],[0,0,1]]}"#);
    assert_eq!(bad.code, 2);
    assert_eq!(stdout_json(&bad)["error"], json!("DegenerateTriple"));
}

#[test]
fn jorgensen_on_modular_generators_does_not_fire() {
    let o = su21(&["jorgensen"], r#"{"a":[[0,-1],[1,0]],"b":[[1,1],[0,1]]}"#);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let v = stdout_json(&o);
    assert_eq!(v["verdict"]["verdict"], json!("NoConclusion"));
    let bad = su21(&["jorgensen"], r#"{"a":[[2,0],[0,1]],"b":[[1,1],[0,1]]}"#);
    assert_eq!(bad.code, 2);
}

#[test]
fn triangle_commands() {
    let o = su21(&["triangle", "type", "4", "4", "4"], "");
    assert_eq!(o.code, 0);
    let v = stdout_json(&o);
    assert_eq!(v["type"], json!("A"));
    let o = su21(
        &[
            "triangle-scan",
            "inf",
            "inf",
            "inf",
            "--steps",
            "5",
            "--words",
            "123",
        ],
        "",
    );
    assert_eq!(o.code, 0);
    let text = String::from_utf8(o.stdout).unwrap();
    assert_eq!(
        text.lines().next().unwrap(),
        "t,123_class,123_trRe,123_trIm,123_fVal"
    );
    assert_eq!(text.lines().count(), 6);
}

#[test]
fn exit_codes() {
    // domain error: structured JSON, exit 2
    let o = su21(&["classify"], r#"{"matrix":[[1,0,0],[0,1,0],[0,0,2]]}"#);
    assert_eq!(o.code, 2);
    let v = stdout_json(&o);
    assert_eq!(v["error"], json!("InvalidInput"));
    assert_eq!(su21(&["triangle", "type", "3", "3", "3"], "").code, 2);
    // malformed input: exit 1
    assert_eq!(su21(&["classify"], "{").code, 1);
    assert_eq!(su21(&["classify"], "[[1,2],[3,4]]").code, 1);
    assert_eq!(su21(&["classify", "--tol", "-1"], "{}").code, 1);
    assert_eq!(su21(&["nope"], "").code, 1);
    assert_eq!(
        su21(&["triangle", "scan", "4", "4", "4", "--words", "12x"], "").code,
        1
    );
    assert_eq!(su21(&["--help"], "").code, 0);
}

#[test]
fn output_is_deterministic() {
    let args = ["triangle", "scan", "3", "4", "5", "--steps", "40"];
    let a = su21(&args, "");
    let b = su21(&args, "");
    assert_eq!(a.code, 0);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn writes_out_file() {
    let dir = std::env::temp_dir().join(format!("su21-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("scan.csv");
    let p = path.to_str().unwrap();
    let o = su21(
        &[
            "modular", "scan", "--family", "point", "--steps", "4", "--out", p,
        ],
        "",
    );
    assert_eq!(o.code, 0);
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().count(), 5);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_su21");
    let st = Command::new(bin)
        .args(["triangle", "type", "3", "3", "3"])
        .output()
        .unwrap();
    assert_eq!(st.status.code(), Some(2));
    let st = Command::new(bin)
        .args(["modular-scan", "--family", "nowhere"])
        .output()
        .unwrap();
    assert_eq!(st.status.code(), Some(1));
    let st = Command::new(bin)
        .args(["modular-scan", "--family", "line", "--steps", "2"])
        .output()
        .unwrap();
    assert_eq!(st.status.code(), Some(0));
    assert_eq!(String::from_utf8(st.stdout).unwrap().lines().count(), 3);
}
