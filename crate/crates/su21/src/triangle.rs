//! Complex hyperbolic `(p,q,r)` triangle groups: the one-parameter family of
//! mirror configurations, scans of word classes across it, and the A/B type.
//!
//! Mirrors are the complex lines polar to unit positive vectors `n₁,n₂,n₃`
//! with `⟨n₁,n₂⟩ = −cos(π/p)`, `⟨n₂,n₃⟩ = −cos(π/q)`,
//! `⟨n₃,n₁⟩ = −cos(π/r)e^{iθ}`. The parameter is `t = −θ/2`, which for the
//! ideal group is the Cartan invariant of the vertex triangle.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64 as Cx;
use serde::{Deserialize, Serialize};

use crate::classify::{cis, classify, complex_reflection_from_vector, resultant_f};
use crate::error::{Error, Result};
use crate::linalg::{r, Element, Form, Mat3, Vec3};

/// Order of a vertex: a finite integer or `∞` (tangent mirrors).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Order {
    Finite(u32),
    Infinite,
}

impl Order {
    /// `cos(π/p)`, 1 for `∞`.
    pub fn cos(self) -> f64 {
        match self {
            Order::Finite(p) => (PI / p as f64).cos(),
            Order::Infinite => 1.0,
        }
    }

    fn recip(self) -> f64 {
        match self {
            Order::Finite(p) => 1.0 / p as f64,
            Order::Infinite => 0.0,
        }
    }

    fn key(self) -> u64 {
        match self {
            Order::Finite(p) => p as u64,
            Order::Infinite => u64::MAX,
        }
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(p) => write!(f, "{p}"),
            Order::Infinite => write!(f, "inf"),
        }
    }
}

impl FromStr for Order {
    type Err = Error;
    fn from_str(s: &str) -> Result<Order> {
        match s.trim() {
            "inf" | "infinity" | "∞" | "oo" => Ok(Order::Infinite),
            x => match x.parse::<u32>() {
                Ok(p) if p >= 2 => Ok(Order::Finite(p)),
                _ => Err(Error::InvalidInput(format!("bad vertex order {x:?}"))),
            },
        }
    }
}

/// `(p,q,r)` with `1/p + 1/q + 1/r < 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Angles {
    pub p: Order,
    pub q: Order,
    pub r: Order,
}

impl Angles {
    pub fn new(p: Order, q: Order, r: Order) -> Result<Angles> {
        if p.recip() + q.recip() + r.recip() >= 1.0 - 1e-12 {
            return Err(Error::InvalidInput(format!(
                "({p},{q},{r}) is not hyperbolic"
            )));
        }
        Ok(Angles { p, q, r })
    }

    pub fn parse(p: &str, q: &str, r: &str) -> Result<Angles> {
        Angles::new(p.parse()?, q.parse()?, r.parse()?)
    }

    /// Orders of `I₁I₂`, `I₂I₃`, `I₃I₁`.
    pub fn orders(&self) -> [Order; 3] {
        [self.p, self.q, self.r]
    }

    pub fn is_sorted(&self) -> bool {
        self.p.key() <= self.q.key() && self.q.key() <= self.r.key()
    }
}

/// Symmetric parameter interval; the endpoints are excluded (degenerate Gram).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    #[serde(rename = "tMin")]
    pub t_min: f64,
    #[serde(rename = "tMax")]
    pub t_max: f64,
}

impl Interval {
    pub fn contains(&self, t: f64) -> bool {
        t > self.t_min && t < self.t_max
    }
}

/// Gram determinant `1 − Σc² − 2Πc·cos θ` at `θ = −2t`.
pub fn gram_determinant(angles: &Angles, t: f64) -> f64 {
    let [a, b, c] = angles.orders().map(Order::cos);
    1.0 - a * a - b * b - c * c - 2.0 * a * b * c * (2.0 * t).cos()
}

pub fn triangle_interval(angles: &Angles) -> Interval {
    let [a, b, c] = angles.orders().map(Order::cos);
    let prod = a * b * c;
    if prod < 1e-15 {
        // a right angle makes the family rigid; every phase is admissible
        return Interval {
            t_min: -FRAC_PI_2,
            t_max: FRAC_PI_2,
        };
    }
    let ct = ((1.0 - a * a - b * b - c * c) / (2.0 * prod)).clamp(-1.0, 1.0);
    let h = ct.acos() / 2.0;
    Interval {
        t_min: -h,
        t_max: h,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TriangleGroupRep {
    pub angles: Angles,
    pub t: f64,
    pub form: Form,
    /// `I₁, I₂, I₃`.
    pub reflections: [Element; 3],
    pub polars: [Vec3; 3],
}

impl TriangleGroupRep {
    /// Word over the letters `1`, `2`, `3`.
    pub fn word(&self, w: &str) -> Result<Element> {
        let mut g = Element::identity(self.form);
        for ch in w.chars() {
            let k = match ch {
                '1' => 0,
                '2' => 1,
                '3' => 2,
                _ => return Err(Error::InvalidInput(format!("bad letter {ch:?} in {w:?}"))),
            };
            g = g * self.reflections[k];
        }
        Ok(g)
    }

    /// `−½ arg(−⟨n₁,n₂⟩⟨n₂,n₃⟩⟨n₃,n₁⟩)`, the parameter read back.
    pub fn angular_parameter(&self) -> f64 {
        let [n1, n2, n3] = &self.polars;
        let f = self.form;
        let prod = f.inner(n1, n2) * f.inner(n2, n3) * f.inner(n3, n1);
        -0.5 * (-prod).arg()
    }
}

/// Eigen-decomposition `H = U diag(d) U*` of a Hermitian matrix by cyclic
/// Jacobi rotations.
fn hermitian_eigen(h: &Mat3) -> ([f64; 3], Mat3) {
    let mut a = *h;
    let mut u = Mat3::identity();
    for _ in 0..64 {
        let off: f64 = [(0, 1), (0, 2), (1, 2)]
            .iter()
            .map(|&(i, j)| a.0[i][j].norm())
            .sum();
        if off < 1e-15 * (1.0 + a.max_abs()) {
            break;
        }
        for (p, q) in [(0, 1), (0, 2), (1, 2)] {
            let b = a.0[p][q];
            if b.norm() < 1e-300 {
                continue;
            }
            let phase = b / b.norm();
            let th = 0.5 * (2.0 * b.norm()).atan2(a.0[q][q].re - a.0[p][p].re);
            let (c, s) = (th.cos(), th.sin());
            let mut g = Mat3::identity();
            g.0[p][p] = r(c);
            g.0[p][q] = r(s);
            g.0[q][p] = -phase.conj() * s;
            g.0[q][q] = phase.conj() * c;
            a = g.adjoint() * a * g;
            u = u * g;
        }
    }
    ([a.0[0][0].re, a.0[1][1].re, a.0[2][2].re], u)
}

/// Unit vectors realizing a Hermitian Gram matrix `G[i][j] = ⟨nᵢ,nⱼ⟩` of
/// signature (2,1), in the ball model.
fn realize_gram(g: &Mat3) -> Option<[Vec3; 3]> {
    // ⟨nᵢ,nⱼ⟩ = (N*JN)[j][i], so N*JN = Gᵀ
    let (d, u) = hermitian_eigen(&g.transpose());
    let mut idx = [0usize, 1, 2];
    idx.sort_by(|&x, &y| d[y].total_cmp(&d[x]));
    let scale = d.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    if d[idx[1]] <= 1e-12 * scale || d[idx[2]] >= -1e-12 * scale {
        return None;
    }
    // N = |D|^{1/2} U* with rows ordered (+,+,−)
    let ustar = u.adjoint();
    let mut n = Mat3::zero();
    for (row, &k) in idx.iter().enumerate() {
        let s = d[k].abs().sqrt();
        for col in 0..3 {
            n.0[row][col] = ustar.0[k][col] * s;
        }
    }
    Some([n.column(0), n.column(1), n.column(2)])
}

/// The representation at parameter `t`, validated against the vertex orders.
pub fn triangle_rep(angles: &Angles, t: f64, form: Form, tol: f64) -> Result<TriangleGroupRep> {
    let iv = triangle_interval(angles);
    if !iv.contains(t) || gram_determinant(angles, t) >= -1e-14 {
        return Err(Error::OutOfInterval(t));
    }
    let [c12, c23, c31] = angles.orders().map(Order::cos);
    let e = cis(-2.0 * t) * (-c31);
    let g = Mat3::from_rows([
        [r(1.0), r(-c12), e.conj()],
        [r(-c12), r(1.0), r(-c23)],
        [e, r(-c23), r(1.0)],
    ]);
    let ns = realize_gram(&g).ok_or(Error::OutOfInterval(t))?;
    let polars = match form {
        Form::Ball => ns,
        Form::Siegel => ns.map(|v| crate::linalg::cayley_vector(&v)),
    };
    let refl = |v: &Vec3| complex_reflection_from_vector(v, form, tol);
    let reflections = [refl(&polars[0])?, refl(&polars[1])?, refl(&polars[2])?];
    let rep = TriangleGroupRep {
        angles: *angles,
        t,
        form,
        reflections,
        polars,
    };
    check_orders(&rep, tol)?;
    Ok(rep)
}

/// `tr(IᵢIⱼ) = 1 + 2cos(2π/p)`, and the product is parabolic for `∞`.
fn check_orders(rep: &TriangleGroupRep, tol: f64) -> Result<()> {
    let pairs = [
        ("12", rep.angles.p),
        ("23", rep.angles.q),
        ("31", rep.angles.r),
    ];
    for (w, ord) in pairs {
        let g = rep.word(w)?;
        let tr = g.trace();
        let want = match ord {
            Order::Finite(p) => 1.0 + 2.0 * (2.0 * PI / p as f64).cos(),
            Order::Infinite => 3.0,
        };
        let bad = (tr - r(want)).norm() > 1e-8 * (1.0 + want.abs());
        let bad = bad
            || match ord {
                Order::Finite(p) => {
                    let gp = g.pow(p as i32);
                    gp.central_distance(&Element::identity(rep.form)).0 > 1e-7
                }
                Order::Infinite => !classify(&g, tol.max(1e-9))
                    .map(|c| c.is_parabolic())
                    .unwrap_or(false),
            };
        if bad {
            return Err(Error::OrderMismatch(format!(
                "I{}I{} has trace {tr} for order {ord}",
                &w[..1],
                &w[1..]
            )));
        }
    }
    Ok(())
}

pub const W_A: &str = "1232";
pub const W_B: &str = "123";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WordSample {
    pub word: String,
    /// Class tag, or the error tag when classification failed.
    pub class: String,
    pub trace: Cx,
    #[serde(rename = "fValue")]
    pub f_value: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanRow {
    pub t: f64,
    pub words: Vec<WordSample>,
    /// Construction failure at this grid point (endpoints, order mismatch).
    pub error: Option<String>,
}

/// A change between elliptic and non-elliptic along the scan, refined by
/// bisection on the sign of `f(tr W)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Onset {
    pub word: String,
    pub t: f64,
    /// Width of the final bracket.
    pub bracket: f64,
    /// Class at the refined parameter.
    pub class: String,
    /// `true` when the word is elliptic for larger `t`.
    pub elliptic_above: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Scan {
    pub interval: Interval,
    pub rows: Vec<ScanRow>,
    pub onsets: Vec<Onset>,
}

fn word_sample(rep: &TriangleGroupRep, w: &str, tol: f64) -> Result<WordSample> {
    let g = rep.word(w)?;
    let tr = g.trace();
    let class = match classify(&g, tol) {
        Ok(c) => c.tag().to_string(),
        Err(e) => e.tag().to_string(),
    };
    Ok(WordSample {
        word: w.to_string(),
        class,
        trace: tr,
        f_value: resultant_f(tr),
    })
}

fn f_at(angles: &Angles, w: &str, t: f64, tol: f64) -> Option<f64> {
    let rep = triangle_rep(angles, t, Form::Ball, tol).ok()?;
    Some(resultant_f(rep.word(w).ok()?.trace()))
}

/// Bisects a sign change of `f(tr W)` on `[lo, hi]` down to `width`.
pub fn refine_onset(
    angles: &Angles,
    w: &str,
    mut lo: f64,
    mut hi: f64,
    width: f64,
    tol: f64,
) -> Option<(f64, f64)> {
    let mut flo = f_at(angles, w, lo, tol)?;
    let fhi = f_at(angles, w, hi, tol)?;
    if flo.signum() == fhi.signum() {
        return None;
    }
    while hi - lo > width {
        let mid = 0.5 * (lo + hi);
        let fm = f_at(angles, w, mid, tol)?;
        if fm == 0.0 {
            return Some((mid, 0.0));
        }
        if fm.signum() == flo.signum() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    Some((0.5 * (lo + hi), hi - lo))
}

fn validate_words(words: &[String]) -> Result<()> {
    for w in words {
        if w.is_empty() || !w.chars().all(|c| matches!(c, '1' | '2' | '3')) {
            return Err(Error::InvalidInput(format!("bad word {w:?}")));
        }
    }
    Ok(())
}

/// Word list with `W_A` and `W_B` appended when missing.
pub fn with_short_words(words: &[String]) -> Vec<String> {
    let mut out = words.to_vec();
    for w in [W_A, W_B] {
        if !out.iter().any(|x| x == w) {
            out.push(w.to_string());
        }
    }
    out
}

/// `steps` rows on the closed interval (endpoint rows carry an error), plus
/// onsets refined to `1e-10` in `t`.
pub fn word_classify_scan(
    angles: &Angles,
    words: &[String],
    steps: usize,
    tol: f64,
) -> Result<Scan> {
    validate_words(words)?;
    if steps == 0 {
        return Err(Error::InvalidInput("steps must be positive".into()));
    }
    let iv = triangle_interval(angles);
    let ts: Vec<f64> = if steps == 1 {
        vec![0.0]
    } else {
        (0..steps)
            .map(|k| iv.t_min + (iv.t_max - iv.t_min) * k as f64 / (steps - 1) as f64)
            .collect()
    };
    let row = |&t: &f64| -> ScanRow {
        match triangle_rep(angles, t, Form::Ball, tol) {
            Ok(rep) => {
                let ws: Result<Vec<_>> = words.iter().map(|w| word_sample(&rep, w, tol)).collect();
                match ws {
                    Ok(words) => ScanRow {
                        t,
                        words,
                        error: None,
                    },
                    Err(e) => ScanRow {
                        t,
                        words: vec![],
                        error: Some(e.tag().into()),
                    },
                }
            }
            Err(e) => ScanRow {
                t,
                words: vec![],
                error: Some(e.tag().into()),
            },
        }
    };
    #[cfg(feature = "parallel")]
    let rows: Vec<ScanRow> = {
        use rayon::prelude::*;
        ts.par_iter().map(row).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let rows: Vec<ScanRow> = ts.iter().map(row).collect();

    let mut onsets = Vec::new();
    for (k, w) in words.iter().enumerate() {
        for pair in rows.windows(2) {
            let (a, b) = (&pair[0], &pair[1]);
            if a.error.is_some() || b.error.is_some() {
                continue;
            }
            let (fa, fb) = (a.words[k].f_value, b.words[k].f_value);
            if fa.signum() == fb.signum() {
                continue;
            }
            if let Some(o) = onset(angles, w, a.t, b.t, tol) {
                onsets.push(o);
            }
        }
    }
    Ok(Scan {
        interval: iv,
        rows,
        onsets,
    })
}

fn onset(angles: &Angles, w: &str, lo: f64, hi: f64, tol: f64) -> Option<Onset> {
    let (t, bracket) = refine_onset(angles, w, lo, hi, 1e-10, tol)?;
    let rep = triangle_rep(angles, t, Form::Ball, tol).ok()?;
    let g = rep.word(w).ok()?;
    let class = match classify(&g, 1e-6) {
        Ok(c) => c.tag().to_string(),
        Err(e) => e.tag().to_string(),
    };
    Some(Onset {
        word: w.to_string(),
        t,
        bracket,
        class,
        elliptic_above: f_at(angles, w, hi, tol)? < 0.0,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TriangleType {
    A,
    B,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TypeReport {
    #[serde(rename = "type")]
    pub kind: Option<TriangleType>,
    /// First parameter `t > 0` where `W_A` becomes elliptic.
    #[serde(rename = "tA")]
    pub t_a: Option<f64>,
    #[serde(rename = "tB")]
    pub t_b: Option<f64>,
    /// The same onsets searched on `t < 0`.
    #[serde(rename = "tANeg")]
    pub t_a_neg: Option<f64>,
    #[serde(rename = "tBNeg")]
    pub t_b_neg: Option<f64>,
    pub interval: Interval,
}

/// First `t` on the path from 0 towards `end` where `W` turns elliptic.
fn first_elliptic(angles: &Angles, w: &str, end: f64, steps: usize, tol: f64) -> Option<f64> {
    let mut prev_t = 0.0;
    let mut prev_f = f_at(angles, w, 0.0, tol)?;
    for k in 1..steps {
        let t = end * k as f64 / steps as f64;
        let Some(f) = f_at(angles, w, t, tol) else {
            break;
        };
        if prev_f > 0.0 && f <= 0.0 {
            let (lo, hi) = if prev_t < t { (prev_t, t) } else { (t, prev_t) };
            return refine_onset(angles, w, lo, hi, 1e-10, tol).map(|x| x.0);
        }
        prev_t = t;
        prev_f = f;
    }
    None
}

/// Type A when `W_A` becomes elliptic before `W_B` as `t` grows from 0.
pub fn triangle_type(angles: &Angles, tol: f64) -> Result<TypeReport> {
    if !angles.is_sorted() {
        return Err(Error::InvalidInput("expected p ≤ q ≤ r".into()));
    }
    let iv = triangle_interval(angles);
    let steps = 4000;
    let t_a = first_elliptic(angles, W_A, iv.t_max, steps, tol);
    let t_b = first_elliptic(angles, W_B, iv.t_max, steps, tol);
    let t_a_neg = first_elliptic(angles, W_A, iv.t_min, steps, tol);
    let t_b_neg = first_elliptic(angles, W_B, iv.t_min, steps, tol);
    let kind = match (t_a, t_b) {
        (None, None) => None,
        (Some(_), None) => Some(TriangleType::A),
        (None, Some(_)) => Some(TriangleType::B),
        (Some(a), Some(b)) => Some(if a < b {
            TriangleType::A
        } else {
            TriangleType::B
        }),
    };
    Ok(TypeReport {
        kind,
        t_a,
        t_b,
        t_a_neg,
        t_b_neg,
        interval: iv,
    })
}

/// Vertex of the mirrors polar to `a` and `b`.
pub fn mirror_intersection(a: &Vec3, b: &Vec3, form: Form) -> Vec3 {
    crate::linalg::cross(&form.dual(a), &form.dual(b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::triple_ratio;
    use crate::linalg::verify_su21;
    use crate::pairs::c_decomposable_necessary;

    fn ideal() -> Angles {
        Angles::parse("inf", "inf", "inf").unwrap()
    }

    #[test]
    fn intervals() {
        let iv = triangle_interval(&ideal());
        assert!((iv.t_max - FRAC_PI_2).abs() < 1e-12 && iv.t_min == -iv.t_max);
        let a = Angles::parse("4", "4", "4").unwrap();
        let iv = triangle_interval(&a);
        assert!((iv.t_max - 3.0 * PI / 8.0).abs() < 1e-12);
        for s in [-1e-6, 1e-6] {
            let d = gram_determinant(&a, iv.t_max + s);
            assert_eq!(d < 0.0, s < 0.0);
        }
        assert!(Angles::parse("3", "3", "3").is_err());
    }

    #[test]
    fn construction() {
        for (a, ts) in [
            (ideal(), vec![0.0, 0.4, -1.2, 1.5]),
            (Angles::parse("4", "4", "4").unwrap(), vec![0.0, 0.7, -1.1]),
            (Angles::parse("3", "4", "inf").unwrap(), vec![0.0, 0.3]),
            (Angles::parse("2", "3", "7").unwrap(), vec![0.0]),
        ] {
            for t in ts {
                for form in [Form::Ball, Form::Siegel] {
                    let rep = triangle_rep(&a, t, form, 1e-9).unwrap();
                    for i in &rep.reflections {
                        assert!(verify_su21(&i.m, form, 1e-10).0);
                        assert!((*i * *i).m.dist(&Mat3::identity()) < 1e-10);
                        assert!((i.trace() + 1.0).norm() < 1e-12);
                    }
                    if a.orders().iter().all(|o| o.cos() > 1e-9) {
                        assert!((rep.angular_parameter() - t).abs() < 1e-9);
                    }
                    for w in ["12", "23", "31"] {
                        assert!(rep.word(w).unwrap().trace().im.abs() < 1e-10);
                    }
                    let (g, h) = (rep.word("12").unwrap(), rep.word("23").unwrap());
                    assert!(c_decomposable_necessary(&g, &h, 1e-9));
                }
            }
        }
        let e = triangle_rep(&ideal(), FRAC_PI_2, Form::Ball, 1e-9).unwrap_err();
        assert_eq!(e.tag(), "OutOfInterval");
    }

    #[test]
    fn ideal_vertices() {
        let rep = triangle_rep(&ideal(), 0.9, Form::Siegel, 1e-9).unwrap();
        let [n1, n2, n3] = &rep.polars;
        let f = rep.form;
        let v = [
            mirror_intersection(n1, n2, f),
            mirror_intersection(n2, n3, f),
            mirror_intersection(n3, n1, f),
        ];
        for x in &v {
            assert!(f.norm2(x).abs() < 1e-10 * crate::linalg::vnorm(x).powi(2));
        }
        let tr = triple_ratio(&v[0], &v[1], &v[2], f).unwrap();
        assert!((tr.alpha - 0.9).abs() < 1e-9, "{}", tr.alpha);
        // the real-plane case
        let g = triangle_rep(&ideal(), 0.0, Form::Ball, 1e-9).unwrap();
        for i in &g.reflections {
            assert!(i.m.0.iter().flatten().all(|z| z.im.abs() < 1e-12));
        }
    }

    #[test]
    fn ideal_scan() {
        let words = with_short_words(&[]);
        let scan = word_classify_scan(&ideal(), &words, 101, 1e-9).unwrap();
        assert_eq!(scan.rows.len(), 101);
        assert!(scan.rows[0].error.is_some() && scan.rows[100].error.is_some());
        let b: Vec<&Onset> = scan.onsets.iter().filter(|o| o.word == W_B).collect();
        assert_eq!(b.len(), 2, "{:?}", scan.onsets);
        let want = (125.0f64 / 3.0).sqrt().atan();
        assert!((b[0].t + want).abs() < 1e-6 && (b[1].t - want).abs() < 1e-6);
        for o in &b {
            assert!(o.class.contains("Parabolic"), "{o:?}");
        }
        // non-elliptic on the closed middle piece
        for row in &scan.rows {
            if row.error.is_none() && row.t.abs() < want - 1e-6 {
                assert!(!row.words[1].class.contains("Elliptic"));
            }
        }
    }

    #[test]
    fn type_444() {
        let a = Angles::parse("4", "4", "4").unwrap();
        let rep = triangle_type(&a, 1e-9).unwrap();
        assert_eq!(rep.kind, Some(TriangleType::A));
        let (ta, tn) = (rep.t_a.unwrap(), rep.t_a_neg.unwrap());
        assert!((ta + tn).abs() < 1e-8);
    }
}
