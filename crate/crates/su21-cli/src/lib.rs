//! Command-line front end for `su21`. [`run`] is the whole program minus
//! process plumbing, so it can be driven from tests.

pub mod format;
pub mod input;

use std::ffi::OsString;
use std::path::PathBuf;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use su21::classify::{classify, resultant_f};
use su21::discrete::{jkp_test, jorgensen_sl2, JkpInput};
use su21::invariants::{
    cartan, cross_ratio, cross_ratio_triple, quadruple_ratio, triple_ratio, IdealTetrahedron,
};
use su21::linalg::verify_su21;
use su21::modular::{modular_discreteness, modular_invariants, modular_rep, Family};
use su21::pairs::{
    loxodromic_pair_exists, normalize_loxodromic_pair, r_decomposable, strike_identity,
};
use su21::traces::{trace_coordinates, trace_equation_coeffs, TraceVector8};
use su21::triangle::{triangle_type, word_classify_scan, Angles, Order};
use su21::{suite, Cx, Element, Form};

use format::{fmt17, to_json};

#[derive(Parser, Debug)]
#[command(
    name = "su21",
    version,
    about = "Isometries of the complex hyperbolic plane"
)]
pub struct Cli {
    /// Numerical tolerance.
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tol: f64,
    /// Hermitian form for inputs that do not name one.
    #[arg(long, global = true, value_enum, default_value_t = FormArg::Siegel)]
    pub form: FormArg,
    /// Seed for sampling commands.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Write the output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FormArg {
    Ball,
    Siegel,
}

impl From<FormArg> for Form {
    fn from(f: FormArg) -> Form {
        match f {
            FormArg::Ball => Form::Ball,
            FormArg::Siegel => Form::Siegel,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Point,
    Line,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Classify one matrix.
    Classify(InputArg),
    /// Triple ratio and Cartan invariant of 3 points, or cross-ratios of 4.
    Invariants(InputArg),
    /// Trace coordinates, trace equation and normal form of a pair `a`, `b`.
    Pair(InputArg),
    /// Does a loxodromic pair with traces (zA, zB, zAB, zA⁻¹B) exist?
    Exists(InputArg),
    /// Jørgensen's inequality for an SL(2,ℂ) pair.
    Jorgensen(InputArg),
    /// Non-discreteness conditions for a pair with loxodromic `a`.
    Jkp(InputArg),
    /// Representations of the modular group.
    Modular {
        #[command(subcommand)]
        cmd: ModularCmd,
    },
    #[command(name = "modular-scan", hide = true)]
    ModularScan(ModularScanArgs),
    /// Complex hyperbolic triangle groups.
    Triangle {
        #[command(subcommand)]
        cmd: TriangleCmd,
    },
    #[command(name = "triangle-scan", hide = true)]
    TriangleScan(TriangleScanArgs),
    #[command(name = "triangle-type", hide = true)]
    TriangleType(TriangleArgs),
    /// Run the acceptance battery and print a pass/fail table.
    Suite,
}

#[derive(Args, Debug)]
pub struct InputArg {
    /// JSON input file; stdin when absent or "-".
    pub input: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum ModularCmd {
    /// CSV of invariants across α.
    Scan(ModularScanArgs),
}

#[derive(Args, Debug)]
pub struct ModularScanArgs {
    #[arg(long, value_enum)]
    pub family: FamilyArg,
    #[arg(long, default_value_t = 101)]
    pub steps: usize,
    #[arg(long, allow_negative_numbers = true)]
    pub alpha_min: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub alpha_max: Option<f64>,
}

#[derive(Subcommand, Debug)]
pub enum TriangleCmd {
    /// CSV of word classes across the deformation interval.
    Scan(TriangleScanArgs),
    /// Which of the two short words turns elliptic first.
    Type(TriangleArgs),
}

#[derive(Args, Debug)]
pub struct TriangleArgs {
    /// Vertex orders; "inf" for an ideal vertex.
    pub p: String,
    pub q: String,
    pub r: String,
}

#[derive(Args, Debug)]
pub struct TriangleScanArgs {
    #[command(flatten)]
    pub angles: TriangleArgs,
    #[arg(long, default_value_t = 101)]
    pub steps: usize,
    /// Comma-separated words in the reflections 1, 2, 3.
    #[arg(long, default_value = "1232,123")]
    pub words: String,
}

/// What a command produced: an exit code, bytes for stdout and a message
/// for stderr.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: Vec<u8>,
    pub stderr: String,
}

enum Failure {
    Domain(su21::Error),
    Malformed(anyhow::Error),
}

impl From<su21::Error> for Failure {
    fn from(e: su21::Error) -> Self {
        Failure::Domain(e)
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Malformed(e)
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Malformed(e.into())
    }
}

type Res<T> = std::result::Result<T, Failure>;

/// Parse `args` (including the program name) and execute.
pub fn run<I, T>(args: I, stdin: &[u8]) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(&cli, stdin),
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                Outcome {
                    code,
                    stdout: text.into_bytes(),
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: vec![],
                    stderr: text,
                }
            }
        }
    }
}

pub fn execute(cli: &Cli, stdin: &[u8]) -> Outcome {
    let result = if cli.tol.is_finite() && cli.tol > 0.0 {
        dispatch(cli, stdin)
    } else {
        Err(Failure::Malformed(anyhow!(
            "--tol must be positive, got {}",
            cli.tol
        )))
    };
    let (code, body, stderr) = match result {
        // a failing criterion is a domain outcome; the table is still printed
        Ok(body)
            if matches!(cli.command, Command::Suite)
                && body.lines().any(|l| l.starts_with("[FAIL]")) =>
        {
            (2, body, String::new())
        }
        Ok(body) => (0, body, String::new()),
        Err(Failure::Domain(e)) => {
            let body = to_json(&json!({"error": e.tag(), "message": e.to_string()}))
                .unwrap_or_default()
                + "\n";
            (2, body, String::new())
        }
        Err(Failure::Malformed(e)) => {
            return Outcome {
                code: 1,
                stdout: vec![],
                stderr: format!("error: {e:#}\n"),
            }
        }
    };
    match &cli.out {
        Some(path) => match std::fs::write(path, &body) {
            Ok(()) => Outcome {
                code,
                stdout: vec![],
                stderr,
            },
            Err(e) => Outcome {
                code: 1,
                stdout: vec![],
                stderr: format!("error: writing {}: {e}\n", path.display()),
            },
        },
        None => Outcome {
            code,
            stdout: body.into_bytes(),
            stderr,
        },
    }
}

fn dispatch(cli: &Cli, stdin: &[u8]) -> Res<String> {
    let form = Form::from(cli.form);
    let tol = cli.tol;
    let json_line = |v: Value| -> Res<String> { Ok(to_json(&v)? + "\n") };
    match &cli.command {
        Command::Classify(i) => json_line(cmd_classify(&read_doc(i, stdin)?, form, tol)?),
        Command::Invariants(i) => json_line(cmd_invariants(&read_doc(i, stdin)?, form, tol)?),
        Command::Pair(i) => json_line(cmd_pair(&read_doc(i, stdin)?, form, tol)?),
        Command::Exists(i) => json_line(cmd_exists(&read_doc(i, stdin)?, tol)?),
        Command::Jorgensen(i) => json_line(cmd_jorgensen(&read_doc(i, stdin)?, tol)?),
        Command::Jkp(i) => json_line(cmd_jkp(&read_doc(i, stdin)?, form, tol)?),
        Command::Modular {
            cmd: ModularCmd::Scan(a),
        }
        | Command::ModularScan(a) => modular_scan(a, tol),
        Command::Triangle {
            cmd: TriangleCmd::Scan(a),
        }
        | Command::TriangleScan(a) => triangle_scan(a, tol),
        Command::Triangle {
            cmd: TriangleCmd::Type(a),
        }
        | Command::TriangleType(a) => json_line(cmd_triangle_type(a, tol)?),
        Command::Suite => Ok(cmd_suite(cli.seed)),
    }
}

fn read_doc(arg: &InputArg, stdin: &[u8]) -> anyhow::Result<Value> {
    match &arg.input {
        Some(p) if p.as_os_str() != "-" => {
            let bytes = std::fs::read(p).with_context(|| format!("reading {}", p.display()))?;
            input::parse(&bytes)
        }
        _ => input::parse(stdin),
    }
}

fn cx(z: Cx) -> Value {
    json!([z.re, z.im])
}

fn element_json(g: &Element) -> Value {
    json!({
        "form": g.form,
        "matrix": g.m.0.iter().map(|r| r.iter().map(|z| cx(*z)).collect::<Vec<_>>()).collect::<Vec<_>>(),
    })
}

/// Reject matrices that are not in SU(2,1) for their form.
fn checked(g: Element, tol: f64) -> Res<Element> {
    let n = g.m.norm_inf();
    let (ok, res) = verify_su21(&g.m, g.form, tol.max(1e-8) * (1.0 + n * n));
    if !ok {
        return Err(su21::Error::InvalidInput(format!(
            "matrix is not in SU(2,1) (residual {res:e})"
        ))
        .into());
    }
    Ok(g)
}

fn class_value(g: &Element, tol: f64) -> Res<Value> {
    let mut v = serde_json::to_value(classify(g, tol)?)?;
    let t = g.trace();
    v["traceValue"] = cx(t);
    v["fValue"] = json!(resultant_f(t));
    Ok(v)
}

/// Class, or the error tag when classification fails.
fn class_or_error(g: &Element, tol: f64) -> Res<Value> {
    match class_value(g, tol) {
        Err(Failure::Domain(e)) => Ok(json!({"error": e.tag(), "message": e.to_string()})),
        other => other,
    }
}

fn cmd_classify(doc: &Value, form: Form, tol: f64) -> Res<Value> {
    let g = checked(input::element(doc, None, form)?, tol)?;
    class_value(&g, tol)
}

fn cmd_invariants(doc: &Value, form: Form, tol: f64) -> Res<Value> {
    let form = input::form(doc, form)?;
    let pts = doc
        .get("points")
        .and_then(Value::as_array)
        .ok_or_else(|| anyhow!("expected a \"points\" array"))?;
    let pts = pts
        .iter()
        .map(input::vector)
        .collect::<anyhow::Result<Vec<_>>>()?;
    match pts.as_slice() {
        [a, b, c] => {
            let t = triple_ratio(a, b, c, form)?;
            Ok(
                json!({"tripleRatio": cx(t.t), "angularInvariant": t.alpha, "cartan": cartan(a, b, c, form)?}),
            )
        }
        [a, b, c, d] => {
            let x = cross_ratio(a, b, c, d, form)?;
            let q = quadruple_ratio(a, b, c, d, form)?;
            let tet = IdealTetrahedron::new([*a, *b, *c, *d], form, tol.max(1e-10))?;
            let triple = if tet.degenerate {
                Value::Null
            } else {
                serde_json::to_value(cross_ratio_triple(&tet)?)?
            };
            Ok(json!({
                "crossRatio": cx(x),
                "quadrupleRatio": cx(q),
                "inComplexLine": tet.degenerate,
                "crossRatios": triple,
            }))
        }
        _ => Err(anyhow!("expected 3 or 4 points, got {}", pts.len()).into()),
    }
}

fn cmd_pair(doc: &Value, form: Form, tol: f64) -> Res<Value> {
    let a = checked(input::element(doc, Some("a"), form)?, tol)?;
    let b = checked(input::element(doc, Some("b"), form)?, tol)?;
    let tc = trace_coordinates(&a, &b);
    let eq = trace_equation_coeffs(&TraceVector8::of(&a, &b));
    let [r0, r1] = eq.roots();
    let (normal, strike) = match normalize_loxodromic_pair(&a, &b, tol) {
        Ok(nf) => (
            json!({
                "mu": cx(nf.mu), "nu": cx(nf.nu),
                "z1": cx(nf.z1), "z2": cx(nf.z2), "w2": cx(nf.w2), "w3": cx(nf.w3),
                "crossRatios": nf.cross_ratios,
            }),
            serde_json::to_value(strike_identity(&a, &b, tol)?)?,
        ),
        Err(e) => (json!({"error": e.tag()}), Value::Null),
    };
    let dec = match r_decomposable(&a, &b, tol) {
        Ok(d) => serde_json::to_value(d)?,
        Err(e) => json!({"error": e.tag()}),
    };
    Ok(json!({
        "classA": class_or_error(&a, tol)?,
        "classB": class_or_error(&b, tol)?,
        "phi": tc.phi().iter().map(|z| cx(*z)).collect::<Vec<_>>(),
        "trComm": cx(tc.tr_comm),
        "traceEquation": {
            "s": cx(eq.s), "p": cx(eq.p),
            "discriminant": cx(eq.discriminant()),
            "roots": [cx(r0), cx(r1)],
            "residual": tc.residual,
        },
        "normalForm": normal,
        "strike": strike,
        "rDecomposable": dec,
    }))
}

fn cmd_exists(doc: &Value, tol: f64) -> Res<Value> {
    let z = input::complex_list(doc, &["phi", "traces"], 4)?;
    let ex = loxodromic_pair_exists(z[0], z[1], z[2], z[3], tol)?;
    let witnesses: Vec<Value> = ex
        .witnesses
        .iter()
        .map(|w| {
            let phi = trace_coordinates(&w.a, &w.b).phi();
            let dev = phi
                .iter()
                .zip(&z)
                .map(|(p, q)| (p - q).norm())
                .fold(0.0, f64::max);
            json!({
                "a": element_json(&w.a),
                "b": element_json(&w.b),
                "sign": w.sign,
                "trComm": cx(w.tr_comm),
                "phi": phi.iter().map(|p| cx(*p)).collect::<Vec<_>>(),
                "phiResidual": dev,
            })
        })
        .collect();
    Ok(json!({"exists": ex.exists, "Q": ex.q, "witnesses": witnesses}))
}

fn cmd_jorgensen(doc: &Value, tol: f64) -> Res<Value> {
    let a = input::mat2(doc, "a")?;
    let b = input::mat2(doc, "b")?;
    Ok(serde_json::to_value(jorgensen_sl2(&a, &b, tol)?)?)
}

fn cmd_jkp(doc: &Value, form: Form, tol: f64) -> Res<Value> {
    let a = checked(input::element(doc, Some("a"), form)?, tol)?;
    let b = checked(input::element(doc, Some("b"), form)?, tol)?;
    let inp = JkpInput::new(&a, &b, tol)?;
    Ok(json!({
        "lambda": cx(inp.lambda),
        "M": inp.m,
        "p": inp.p.iter().map(|z| cx(*z)).collect::<Vec<_>>(),
        "q": inp.q.iter().map(|z| cx(*z)).collect::<Vec<_>>(),
        "verdict": jkp_test(&inp),
    }))
}

fn grid(lo: f64, hi: f64, steps: usize) -> Vec<f64> {
    if steps == 1 {
        return vec![lo];
    }
    (0..steps)
        .map(|k| lo + (hi - lo) * k as f64 / (steps - 1) as f64)
        .collect()
}

fn csv_text(header: &[String], rows: &[Vec<String>]) -> Res<String> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(vec![]);
    w.write_record(header).map_err(anyhow::Error::from)?;
    for r in rows {
        w.write_record(r).map_err(anyhow::Error::from)?;
    }
    let bytes = w.into_inner().map_err(|e| anyhow!("{e}"))?;
    Ok(String::from_utf8(bytes).map_err(anyhow::Error::from)?)
}

fn modular_scan(a: &ModularScanArgs, tol: f64) -> Res<String> {
    let family = match a.family {
        FamilyArg::Point => Family::Point,
        FamilyArg::Line => Family::Line,
    };
    let (lo0, hi0) = family.alpha_range();
    let (lo, hi) = (a.alpha_min.unwrap_or(lo0), a.alpha_max.unwrap_or(hi0));
    if a.steps == 0 {
        return Err(anyhow!("--steps must be positive").into());
    }
    if !(lo.is_finite() && hi.is_finite() && lo <= hi) {
        return Err(anyhow!("need finite alpha-min <= alpha-max").into());
    }
    let header = [
        "alpha",
        "cos3alpha",
        "trCommRe",
        "cartan",
        "commClass",
        "verdict",
    ]
    .map(String::from);
    let nan = fmt17(f64::NAN);
    let rows: Vec<Vec<String>> = grid(lo, hi, a.steps)
        .into_iter()
        .map(|alpha| {
            let head = [fmt17(alpha), fmt17((3.0 * alpha).cos())];
            let tail = match modular_rep(family, alpha) {
                Err(e) => [nan.clone(), nan.clone(), e.tag().into(), e.tag().into()],
                Ok(rep) => match modular_invariants(&rep, tol) {
                    Ok(inv) => [
                        fmt17(inv.trace_commutator.re),
                        fmt17(inv.cartan),
                        inv.commutator_class.tag().into(),
                        inv.discreteness_verdict.tag().into(),
                    ],
                    Err(e) => [
                        fmt17(rep.e.commutator(&rep.p).trace().re),
                        nan.clone(),
                        e.tag().into(),
                        modular_discreteness(&rep, tol).verdict.tag().into(),
                    ],
                },
            };
            head.into_iter().chain(tail).collect()
        })
        .collect();
    csv_text(&header, &rows)
}

fn angles(a: &TriangleArgs) -> Res<Angles> {
    let order = |s: &str| s.parse::<Order>().map_err(|e| anyhow!("{e}"));
    Ok(Angles::new(order(&a.p)?, order(&a.q)?, order(&a.r)?)?)
}

fn triangle_scan(a: &TriangleScanArgs, tol: f64) -> Res<String> {
    let ang = angles(&a.angles)?;
    let words: Vec<String> = a
        .words
        .split(',')
        .map(|w| w.trim().to_string())
        .filter(|w| !w.is_empty())
        .collect();
    if words.is_empty()
        || words
            .iter()
            .any(|w| !w.chars().all(|c| matches!(c, '1' | '2' | '3')))
    {
        return Err(anyhow!(
            "--words must be comma-separated words in 1, 2, 3; got {:?}",
            a.words
        )
        .into());
    }
    if a.steps == 0 {
        return Err(anyhow!("--steps must be positive").into());
    }
    let scan = word_classify_scan(&ang, &words, a.steps, tol)?;
    let mut header = vec!["t".to_string()];
    for w in &words {
        for col in ["class", "trRe", "trIm", "fVal"] {
            header.push(format!("{w}_{col}"));
        }
    }
    let nan = fmt17(f64::NAN);
    let rows: Vec<Vec<String>> = scan
        .rows
        .iter()
        .map(|row| {
            let mut r = vec![fmt17(row.t)];
            match &row.error {
                Some(tag) => {
                    for _ in &words {
                        r.extend([tag.clone(), nan.clone(), nan.clone(), nan.clone()]);
                    }
                }
                None => {
                    for s in &row.words {
                        r.extend([
                            s.class.clone(),
                            fmt17(s.trace.re),
                            fmt17(s.trace.im),
                            fmt17(s.f_value),
                        ]);
                    }
                }
            }
            r
        })
        .collect();
    csv_text(&header, &rows)
}

fn cmd_triangle_type(a: &TriangleArgs, tol: f64) -> Res<Value> {
    let report = triangle_type(&angles(a)?, tol)?;
    let mut v = serde_json::to_value(&report)?;
    if report.kind.is_none() {
        v["note"] = json!(su21::Error::NoOnsetFound.tag());
    }
    Ok(v)
}

fn cmd_suite(seed: u64) -> String {
    let results = suite::run(seed);
    let mut out = String::new();
    for c in &results {
        out.push_str(&c.to_string());
        out.push('\n');
    }
    let passed = results.iter().filter(|c| c.passed).count();
    out.push_str(&format!(
        "{passed}/{} criteria passed (seed {seed})\n",
        results.len()
    ));
    out
}
