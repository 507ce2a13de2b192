//! Two-generator configurations: loxodromic pairs in normal form, the
//! traces ↔ cross-ratios dictionary, existence of pairs with prescribed
//! traces, decomposability tests and the reducible walls for products of
//! elliptics.

use std::f64::consts::PI;

use num_complex::Complex64 as Cx;
use serde::{Deserialize, Serialize};

use crate::classify::{classify, eigenvalues_from_trace, mod_2pi, resultant_f, IsometryClass};
use crate::error::{Error, Result};
use crate::invariants::{
    cross_ratio_triple, tetrahedron_from_cross_ratios, CrossRatioTriple, IdealTetrahedron,
};
use crate::linalg::{cross, eigensystem3, vadd, vnorm, vscale, Element, Form, Mat3, Vec3, I, ONE};
use crate::traces::{fixed_point, trace_equation_coeffs, FixedChoice, TraceVector8};

/// `g(z) = z − z̄/z`.
pub fn g(z: Cx) -> Cx {
    z - z.conj() / z
}

/// The loxodromic map with attracting fixed point `p` (eigenvalue `λ`) and
/// repelling fixed point `q` (eigenvalue `1/λ̄`).
pub fn loxodromic_from_fixed(p: &Vec3, q: &Vec3, lam: Cx, form: Form) -> Result<Element> {
    let pq = form.inner(p, q);
    let scale = vnorm(p) * vnorm(q);
    if pq.norm() <= 1e-12 * scale {
        return Err(Error::DegenerateFixedPoints);
    }
    let id = Mat3::identity().scale(lam.conj() / lam);
    let m = id
        + form.outer(p, q).scale(g(lam) / pq)
        + form.outer(q, p).scale(g(lam.conj().inv()) / pq.conj());
    Ok(Element::new(m, form))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LoxodromicPairNormalForm {
    pub mu: Cx,
    pub nu: Cx,
    pub z1: Cx,
    pub z2: Cx,
    pub w2: Cx,
    pub w3: Cx,
    pub cross_ratios: CrossRatioTriple,
    /// Rebuilt pair, Siegel form.
    pub a: Element,
    pub b: Element,
}

/// Attracting and repelling fixed points with the attracting eigenvalue.
fn lox_data(a: &Element, tol: f64) -> Result<(Vec3, Vec3, Cx)> {
    match classify(a, tol)? {
        IsometryClass::Loxodromic { .. } => {
            let p = fixed_point(a, FixedChoice::Attracting, tol)?;
            let q = fixed_point(a, FixedChoice::Repelling, tol)?;
            Ok((p.vector, q.vector, p.eigenvalue))
        }
        _ => Err(Error::NotLoxodromic),
    }
}

/// Build the pair from eigenvalues and a normalized tetrahedron
/// `(p_B, p_A, q_A, q_B)`.
fn pair_from_tetrahedron(mu: Cx, nu: Cx, t: &IdealTetrahedron) -> Result<(Element, Element)> {
    let [pb, pa, qa, qb] = &t.points;
    let a = loxodromic_from_fixed(pa, qa, mu, t.form)?;
    let b = loxodromic_from_fixed(pb, qb, nu, t.form)?;
    Ok((a, b))
}

fn normal_form_from(mu: Cx, nu: Cx, t: IdealTetrahedron) -> Result<LoxodromicPairNormalForm> {
    let (a, b) = pair_from_tetrahedron(mu, nu, &t)?;
    let cross_ratios = cross_ratio_triple(&t)?;
    let [_, _, q1, q2] = t.points;
    Ok(LoxodromicPairNormalForm {
        mu,
        nu,
        z1: q1[0],
        z2: q1[1],
        w2: q2[1],
        w3: q2[2],
        cross_ratios,
        a,
        b,
    })
}

/// Conjugate a loxodromic pair so that `p_B = (0,0,1)`, `p_A = (1,0,0)`,
/// `q_A = (z1,z2,1)` and `q_B = (1,w2,w3)`.
pub fn normalize_loxodromic_pair(
    a: &Element,
    b: &Element,
    tol: f64,
) -> Result<LoxodromicPairNormalForm> {
    let (pa, qa, mu) = lox_data(a, tol)?;
    let (pb, qb, nu) = lox_data(b, tol)?;
    let tet = IdealTetrahedron::new([pb, pa, qa, qb], a.form, 1e-6)
        .map_err(|_| Error::DegenerateFixedPoints)?;
    if tet.degenerate {
        return Err(Error::DegenerateFixedPoints);
    }
    let x = cross_ratio_triple(&tet).map_err(|_| Error::DegenerateFixedPoints)?;
    let sign = if x.x3.im < 0.0 { -1 } else { 1 };
    let t = tetrahedron_from_cross_ratios(x.x1, x.x2, sign, 1e-6)?;
    normal_form_from(mu, nu, t)
}

fn coeffs(mu: Cx, nu: Cx) -> (Cx, [Cx; 4]) {
    let (gm, gmi) = (g(mu), g(mu.conj().inv()));
    let (gn, gni) = (g(nu), g(nu.conj().inv()));
    let rm = mu.conj() / mu;
    let rn = nu.conj() / nu;
    let c0 = rm * rn * 3.0 + rm * (gn + gni) + rn * (gm + gmi);
    // coefficients of X1, X̄1, X2, X̄2
    (c0, [gmi * gni, gm * gn, gm * gni, gmi * gn])
}

/// `tr AB` and `tr A⁻¹B` for the normalized pair with eigenvalues `μ`, `ν`
/// and cross-ratios `X1`, `X2`.
pub fn traces_from_crossratios(mu: Cx, nu: Cx, x1: Cx, x2: Cx) -> (Cx, Cx) {
    let eval = |m: Cx| {
        let (c0, k) = coeffs(m, nu);
        c0 + k[0] * x1 + k[1] * x1.conj() + k[2] * x2 + k[3] * x2.conj()
    };
    (eval(mu), eval(mu.inv()))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolvedCrossRatios {
    #[serde(rename = "X1")]
    pub x1: Cx,
    #[serde(rename = "X2")]
    pub x2: Cx,
    /// Mismatch between the solved unknowns and the conjugates they should be.
    pub conjugate_residual: f64,
}

fn solve4(mut a: [[Cx; 4]; 4], mut b: [Cx; 4]) -> Option<[Cx; 4]> {
    let scale = a.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max);
    for col in 0..4 {
        let piv = (col..4).max_by(|&i, &j| a[i][col].norm().total_cmp(&a[j][col].norm()))?;
        if a[piv][col].norm() <= 1e-13 * scale {
            return None;
        }
        a.swap(col, piv);
        b.swap(col, piv);
        for row in col + 1..4 {
            let f = a[row][col] / a[col][col];
            for k in col..4 {
                let t = a[col][k];
                a[row][k] -= f * t;
            }
            let t = b[col];
            b[row] -= f * t;
        }
    }
    let mut x = [Cx::new(0.0, 0.0); 4];
    for row in (0..4).rev() {
        let s: Cx = (row + 1..4).map(|k| a[row][k] * x[k]).sum();
        x[row] = (b[row] - s) / a[row][row];
    }
    Some(x)
}

/// Invert [`traces_from_crossratios`] by solving the two trace equations
/// and their conjugates as a linear system in `(X1, X̄1, X2, X̄2)`.
pub fn crossratios_from_traces(
    mu: Cx,
    nu: Cx,
    tr_ab: Cx,
    tr_ainv_b: Cx,
) -> Result<SolvedCrossRatios> {
    if (mu.norm() - 1.0).abs() < 1e-9 || (nu.norm() - 1.0).abs() < 1e-9 {
        return Err(Error::SingularSystem);
    }
    let (c0, k) = coeffs(mu, nu);
    let (d0, l) = coeffs(mu.inv(), nu);
    let row = |k: &[Cx; 4]| [k[0], k[1], k[2], k[3]];
    let conj_row = |k: &[Cx; 4]| [k[1].conj(), k[0].conj(), k[3].conj(), k[2].conj()];
    let a = [row(&k), row(&l), conj_row(&k), conj_row(&l)];
    let rhs1 = tr_ab - c0;
    let rhs2 = tr_ainv_b - d0;
    let b = [rhs1, rhs2, rhs1.conj(), rhs2.conj()];
    let u = solve4(a, b).ok_or(Error::SingularSystem)?;
    let x1 = (u[0] + u[1].conj()) / 2.0;
    let x2 = (u[2] + u[3].conj()) / 2.0;
    let conjugate_residual = (u[0] - u[1].conj()).norm() + (u[2] - u[3].conj()).norm();
    Ok(SolvedCrossRatios {
        x1,
        x2,
        conjugate_residual,
    })
}

/// `((|μ|²−1)(|ν|²−1)|(ν²−ν̄)(μ²−μ̄)|²/(|μ|⁴|ν|⁴))²` times the two
/// cross-ratio factors.
pub fn strike_rhs(mu: Cx, nu: Cx, x1: Cx, x2: Cx) -> f64 {
    let (m2, n2) = (mu.norm_sqr(), nu.norm_sqr());
    let pre = (m2 - 1.0) * (n2 - 1.0) * ((nu * nu - nu.conj()) * (mu * mu - mu.conj())).norm_sqr()
        / (m2 * m2 * n2 * n2);
    let s = 2.0 * (x1 + x2).re - 1.0;
    let f1 = (x1.norm() - x2.norm()).powi(2) - s;
    let f2 = (x1.norm() + x2.norm()).powi(2) - s;
    pre * pre * f1 * f2
}

/// `Q = S² − 4P` at the four traces, as a real number.
pub fn q_value(za: Cx, zb: Cx, zab: Cx, zaib: Cx) -> Cx {
    trace_equation_coeffs(&TraceVector8::from_four(za, zb, zab, zaib)).discriminant()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct StrikeCheck {
    pub lhs: f64,
    pub rhs: f64,
    /// `|lhs − rhs| / max(1, |S|², 4|P|)`: `S² − 4P` cancels terms of that
    /// size, so this is the attainable relative accuracy.
    pub residual: f64,
    /// `|lhs − rhs| / (1 + |lhs| + |rhs|)`
    pub relative: f64,
}

pub fn strike_identity(a: &Element, b: &Element, tol: f64) -> Result<StrikeCheck> {
    let nf = normalize_loxodromic_pair(a, b, tol)?;
    let tau = TraceVector8::of(a, b);
    let eq = trace_equation_coeffs(&tau);
    let lhs = eq.discriminant().re;
    let rhs = strike_rhs(nf.mu, nf.nu, nf.cross_ratios.x1, nf.cross_ratios.x2);
    let scale = 1f64.max(eq.s.norm_sqr()).max(4.0 * eq.p.norm());
    Ok(StrikeCheck {
        lhs,
        rhs,
        residual: (lhs - rhs).abs() / scale,
        relative: (lhs - rhs).abs() / (1.0 + lhs.abs() + rhs.abs()),
    })
}

pub fn strike_identity_residual(a: &Element, b: &Element, tol: f64) -> Result<f64> {
    Ok(strike_identity(a, b, tol)?.residual)
}

/// Attracting eigenvalue of the loxodromic class with trace `z`.
pub fn eigenvalue_from_trace(z: Cx) -> Result<Cx> {
    if resultant_f(z) <= 0.0 {
        return Err(Error::NotLoxodromicTrace(format!("f({z}) <= 0")));
    }
    let roots = eigenvalues_from_trace(z);
    Ok(*roots
        .iter()
        .max_by(|a, b| a.norm().total_cmp(&b.norm()))
        .unwrap())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub a: Element,
    pub b: Element,
    /// Sign of `Im X3` used for the tetrahedron.
    pub sign: i8,
    pub tr_comm: Cx,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Existence {
    pub exists: bool,
    #[serde(rename = "Q")]
    pub q: f64,
    /// One witness per sign of `Im X3`; their commutator traces are the two
    /// roots of the trace equation.
    pub witnesses: Vec<Witness>,
}

/// Decide whether a pair of loxodromics with traces `(zA, zB, zAB, zA⁻¹B)`
/// exists in SU(2,1) and build witnesses when it does.
pub fn loxodromic_pair_exists(za: Cx, zb: Cx, zab: Cx, zaib: Cx, tol: f64) -> Result<Existence> {
    if resultant_f(za) <= 0.0 || resultant_f(zb) <= 0.0 {
        return Err(Error::NotLoxodromicTrace(format!(
            "f(zA) = {}, f(zB) = {}",
            resultant_f(za),
            resultant_f(zb)
        )));
    }
    let q = q_value(za, zb, zab, zaib);
    let scale = 1.0
        + [za, zb, zab, zaib]
            .iter()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .powi(3);
    if q.re > tol * scale {
        return Ok(Existence {
            exists: false,
            q: q.re,
            witnesses: vec![],
        });
    }
    let mu = eigenvalue_from_trace(za)?;
    let nu = eigenvalue_from_trace(zb)?;
    let sol = crossratios_from_traces(mu, nu, zab, zaib)?;
    let mut witnesses = Vec::new();
    let mut last_err = None;
    for sign in [1i8, -1] {
        match tetrahedron_from_cross_ratios(sol.x1, sol.x2, sign, 1e-6)
            .and_then(|t| pair_from_tetrahedron(mu, nu, &t))
        {
            Ok((a, b)) => {
                let tr_comm = a.commutator(&b).trace();
                witnesses.push(Witness {
                    a,
                    b,
                    sign,
                    tr_comm,
                });
            }
            Err(e) => last_err = Some(e),
        }
    }
    if witnesses.is_empty() {
        return Err(Error::ReconstructionFailure(format!("{:?}", last_err)));
    }
    Ok(Existence {
        exists: true,
        q: q.re,
        witnesses,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub vector: Vec3,
    pub eigenvalue: Cx,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Decomposability {
    pub decomposable: bool,
    pub certificate: Option<Certificate>,
}

/// A vector of the span with non-positive norm, if any.
fn closed_ball_vector(basis: &[Vec3], form: Form, tol: f64) -> Option<Vec3> {
    let mut cands: Vec<Vec3> = basis.to_vec();
    if basis.len() >= 2 {
        let (u, v) = (basis[0], basis[1]);
        for s in [ONE, -ONE, I, -I] {
            cands.push(vadd(&u, &vscale(&v, s)));
        }
        // the minimum of the form on span(u, v)
        let (a, b, d) = (form.norm2(&u), form.inner(&v, &u), form.norm2(&v));
        if d.abs() > 1e-14 {
            cands.push(vadd(&u, &vscale(&v, -b / d)));
        }
        if a.abs() > 1e-14 {
            cands.push(vadd(&v, &vscale(&u, -b.conj() / a)));
        }
    }
    if basis.len() == 3 {
        // the whole space: any negative vector
        let (o, z) = (ONE, Cx::new(0.0, 0.0));
        cands.extend([[z, z, o], [o, z, -o]]);
    }
    cands
        .into_iter()
        .map(|v| (form.norm2(&v) / vnorm(&v).powi(2), v))
        .filter(|(n, _)| *n <= tol)
        .min_by(|x, y| x.0.total_cmp(&y.0))
        .map(|(_, v)| v)
}

/// True when `A` and `B` share a fixed point in the closed ball.
pub fn common_fixed_point(a: &Element, b: &Element, tol: f64) -> Option<Vec3> {
    let es = eigensystem3(&a.m, tol);
    for pair in &es.pairs {
        let v = match closed_ball_vector(&pair.basis, a.form, tol) {
            Some(v) if pair.basis.len() == 1 => v,
            _ if pair.basis.len() == 1 => continue,
            _ => {
                // higher-dimensional eigenspace: test B-invariant directions inside it
                let bs = eigensystem3(&b.m, tol);
                match bs.pairs.iter().find_map(|bp| {
                    let w = closed_ball_vector(&bp.basis, b.form, tol)?;
                    let aw = a.apply(&w);
                    (vnorm(&cross(&aw, &w)) <= 1e-7 * vnorm(&aw) * vnorm(&w)).then_some(w)
                }) {
                    Some(w) => w,
                    None => continue,
                }
            }
        };
        let bv = b.apply(&v);
        if vnorm(&cross(&bv, &v)) <= 1e-7 * vnorm(&bv) * vnorm(&v) {
            return Some(v);
        }
    }
    None
}

/// `(A, B)` is ℝ-decomposable iff `[A, B]` fixes a point of the closed ball
/// with a real positive eigenvalue.
pub fn r_decomposable(a: &Element, b: &Element, tol: f64) -> Result<Decomposability> {
    if common_fixed_point(a, b, tol).is_some() {
        return Err(Error::CommonFixedPoint);
    }
    let comm = a.commutator(b);
    let tr = comm.trace();
    if tr.im.abs() > 1e-8 * (1.0 + tr.norm()) {
        return Ok(Decomposability {
            decomposable: false,
            certificate: None,
        });
    }
    let es = eigensystem3(&comm.m, tol);
    for pair in &es.pairs {
        let lam = pair.value;
        if lam.re <= 0.0 || lam.im.abs() > 1e-7 * (1.0 + lam.norm()) {
            continue;
        }
        if let Some(v) = closed_ball_vector(&pair.basis, comm.form, 1e-8) {
            return Ok(Decomposability {
                decomposable: true,
                certificate: Some(Certificate {
                    vector: v,
                    eigenvalue: lam,
                }),
            });
        }
    }
    Ok(Decomposability {
        decomposable: false,
        certificate: None,
    })
}

/// Necessary condition only: `tr A`, `tr B`, `tr AB`, `tr A⁻¹B` all real.
pub fn c_decomposable_necessary(a: &Element, b: &Element, tol: f64) -> bool {
    let t = TraceVector8::of(a, b);
    t.0[..4]
        .iter()
        .all(|z| z.im.abs() <= tol * (1.0 + z.norm()))
}

/// Unordered angle pair stored as `(θ₁, θ₂)` with `θ₂ ≤ θ₁` in `[0, 2π)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnglePair(pub f64, pub f64);

impl AnglePair {
    pub fn new(a: f64, b: f64) -> Self {
        let (a, b) = (mod_2pi(a), mod_2pi(b));
        if b <= a {
            AnglePair(a, b)
        } else {
            AnglePair(b, a)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct EllipticClassPair {
    pub theta_a: AnglePair,
    pub theta_b: AnglePair,
}

impl EllipticClassPair {
    pub fn new(theta_a: (f64, f64), theta_b: (f64, f64)) -> Self {
        EllipticClassPair {
            theta_a: AnglePair::new(theta_a.0, theta_a.1),
            theta_b: AnglePair::new(theta_b.0, theta_b.1),
        }
    }

    /// `[θ₁, θ₂, θ₃, θ₄]`
    pub fn angles(&self) -> [f64; 4] {
        [
            self.theta_a.0,
            self.theta_a.1,
            self.theta_b.0,
            self.theta_b.1,
        ]
    }
}

/// A piece of the spherical segment lying in one affine chart, with the
/// integer `k` of `θ₅ + θ₆ = θ₁+θ₂+θ₃+θ₄ + 2kπ`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SegmentPiece {
    pub from: (f64, f64),
    pub to: (f64, f64),
    pub k: i32,
}

/// The points `D₂ + s(1, −1)`, `0 ≤ s ≤ length`, ending at `D₁`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SphericalSegment {
    pub start: (f64, f64),
    pub length: f64,
    pub pieces: Vec<SegmentPiece>,
    pub collapsed: bool,
}

impl SphericalSegment {
    pub fn point(&self, s: f64) -> (f64, f64) {
        (mod_2pi(self.start.0 + s), mod_2pi(self.start.1 - s))
    }

    pub fn end(&self) -> (f64, f64) {
        self.point(self.length)
    }
}

/// `θ_C = 2θ_N + θᵢ + θⱼ − 2θₖ − 2θₗ (mod 2π)` with `θ_C` in an open range.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HyperbolicFamily {
    pub i: usize,
    pub j: usize,
    pub offset: f64,
    /// Open interval for `θ_C`; empty when `θᵢ + θⱼ = 2π`.
    pub range: (f64, f64),
    /// Endpoints are open; the wraparound convention is not pinned down.
    pub open_endpoints: bool,
}

impl HyperbolicFamily {
    /// The two `θ_N` values paired with `θ_C`.
    pub fn theta_n(&self, theta_c: f64) -> [f64; 2] {
        let h = mod_2pi(theta_c - self.offset) / 2.0;
        [h, mod_2pi(h + PI)]
    }

    pub fn congruence_residual(&self, theta_c: f64, theta_n: f64) -> f64 {
        let d = mod_2pi(theta_c - 2.0 * theta_n - self.offset);
        d.min(2.0 * PI - d)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ReducibleWallSet {
    pub totally_reducible: [AnglePair; 2],
    pub spherical_segment: SphericalSegment,
    pub hyperbolic_families: Vec<HyperbolicFamily>,
}

fn maslov(p: (f64, f64), total: f64) -> i32 {
    ((p.0 + p.1 - total) / (2.0 * PI)).round() as i32
}

pub fn elliptic_reducible_walls(classes: &EllipticClassPair) -> ReducibleWallSet {
    let [t1, t2, t3, t4] = classes.angles();
    let d1 = AnglePair::new(t1 + t3, t2 + t4);
    let d2 = AnglePair::new(t1 + t4, t2 + t3);
    let total = t1 + t2 + t3 + t4;
    let start = (mod_2pi(t1 + t4), mod_2pi(t2 + t3));
    let length = t3 - t4;
    // split where a coordinate wraps
    let mut cuts = vec![0.0, length];
    let first_wrap = 2.0 * PI - start.0;
    if first_wrap > 0.0 && first_wrap < length {
        cuts.push(first_wrap);
    }
    if start.1 > 0.0 && start.1 < length {
        cuts.push(start.1);
    }
    cuts.sort_by(f64::total_cmp);
    let seg = SphericalSegment {
        start,
        length,
        pieces: vec![],
        collapsed: length.abs() < 1e-12,
    };
    let mut pieces = Vec::new();
    for w in cuts.windows(2) {
        if w[1] - w[0] < 1e-15 && cuts.len() > 2 {
            continue;
        }
        let mid = seg.point((w[0] + w[1]) / 2.0);
        pieces.push(SegmentPiece {
            from: seg.point(w[0]),
            to: seg.point(w[1]),
            k: maslov(mid, total),
        });
    }
    let mut families = Vec::new();
    for (i, j, k, l) in [(1, 3, 2, 4), (1, 4, 2, 3), (2, 3, 1, 4), (2, 4, 1, 3)] {
        let th = |n: usize| [t1, t2, t3, t4][n - 1];
        let sum = th(i) + th(j);
        let range = if sum < 2.0 * PI {
            (sum, 2.0 * PI)
        } else {
            (0.0, sum - 2.0 * PI)
        };
        families.push(HyperbolicFamily {
            i,
            j,
            offset: mod_2pi(th(i) + th(j) - 2.0 * th(k) - 2.0 * th(l)),
            range,
            open_endpoints: true,
        });
    }
    ReducibleWallSet {
        totally_reducible: [d1, d2],
        spherical_segment: SphericalSegment { pieces, ..seg },
        hyperbolic_families: families,
    }
}

/// Surjectivity of the product map on two elliptic classes.
pub fn paupert_surjective(classes: &EllipticClassPair) -> bool {
    let [t1, t2, t3, t4] = classes.angles();
    t1 - 2.0 * t2 + t3 - 2.0 * t4 >= 2.0 * PI && 2.0 * t1 - t2 + 2.0 * t3 - t4 >= 6.0 * PI
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{r, verify_su21};
    use crate::sample;
    use crate::traces::trace_coordinates;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn close(a: f64, b: f64) -> bool {
        let d = mod_2pi(a - b);
        d.min(2.0 * PI - d) < 1e-12
    }

    #[test]
    fn lox_is_su21() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            let p = sample::boundary_point(&mut rng, 1.0);
            let q = sample::boundary_point(&mut rng, 1.0);
            let lam = sample::lox_eigenvalue(&mut rng, 1.2, 2.0);
            let a = loxodromic_from_fixed(&p, &q, lam, Form::Siegel).unwrap();
            assert!(verify_su21(&a.m, Form::Siegel, 1e-10).0);
            let ap = a.apply(&p);
            assert!(vnorm(&vadd(&ap, &vscale(&p, -lam))) < 1e-10 * vnorm(&p));
        }
    }

    #[test]
    fn traces_match_direct() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..100 {
            let a = sample::loxodromic(&mut rng);
            let b = sample::loxodromic(&mut rng);
            let nf = normalize_loxodromic_pair(&a, &b, 1e-9).unwrap();
            let (tab, taib) =
                traces_from_crossratios(nf.mu, nf.nu, nf.cross_ratios.x1, nf.cross_ratios.x2);
            let d = TraceVector8::of(&a, &b);
            assert!((tab - d.0[2]).norm() < 1e-8 * (1.0 + tab.norm()));
            assert!((taib - d.0[3]).norm() < 1e-8 * (1.0 + taib.norm()));
            let t0 = trace_coordinates(&a, &b);
            let t1 = trace_coordinates(&nf.a, &nf.b);
            for (x, y) in t0.psi().iter().zip(t1.psi().iter()) {
                assert!((x - y).norm() < 1e-7 * (1.0 + x.norm()), "{x} {y}");
            }
            let back = crossratios_from_traces(nf.mu, nf.nu, tab, taib).unwrap();
            assert!((back.x1 - nf.cross_ratios.x1).norm() < 1e-7 * (1.0 + back.x1.norm()));
            assert!((back.x2 - nf.cross_ratios.x2).norm() < 1e-7 * (1.0 + back.x2.norm()));
            let s = strike_identity(&a, &b, 1e-9).unwrap();
            assert!(s.residual < 1e-8, "{s:?}");
        }
    }

    #[test]
    fn mu_swap_exchanges() {
        let (mu, nu, x1, x2) = (
            Cx::new(1.3, 0.4),
            Cx::new(-0.7, 1.5),
            Cx::new(0.3, 2.0),
            Cx::new(-1.0, 0.5),
        );
        let (a, b) = traces_from_crossratios(mu, nu, x1, x2);
        let (c, d) = traces_from_crossratios(mu.inv(), nu, x1, x2);
        assert!((a - d).norm() < 1e-12 && (b - c).norm() < 1e-12);
        let (e, f) = traces_from_crossratios(r(1.5), r(2.5), r(0.7), r(3.0));
        assert!(e.im.abs() < 1e-14 && f.im.abs() < 1e-14);
    }

    #[test]
    fn existence_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let a = sample::loxodromic(&mut rng);
            let b = sample::loxodromic(&mut rng);
            let tc = trace_coordinates(&a, &b);
            let ex =
                loxodromic_pair_exists(tc.tr_a, tc.tr_b, tc.tr_ab, tc.tr_ainv_b, 1e-9).unwrap();
            assert!(ex.exists);
            let mut hit = false;
            for w in &ex.witnesses {
                let wc = trace_coordinates(&w.a, &w.b);
                for (x, y) in tc.phi().iter().zip(wc.phi().iter()) {
                    assert!((x - y).norm() < 1e-6 * (1.0 + x.norm()));
                }
                hit |= (wc.tr_comm - tc.tr_comm).norm() < 1e-6 * (1.0 + tc.tr_comm.norm());
            }
            assert!(hit);
        }
    }

    #[test]
    fn walls() {
        let w = elliptic_reducible_walls(&EllipticClassPair::new(
            (PI, PI / 2.0),
            (PI / 3.0, PI / 6.0),
        ));
        let [d1, d2] = w.totally_reducible;
        assert!(close(d1.0, 4.0 * PI / 3.0) && close(d1.1, 2.0 * PI / 3.0));
        assert!(close(d2.0, 7.0 * PI / 6.0) && close(d2.1, 5.0 * PI / 6.0));
        let seg = &w.spherical_segment;
        let e = seg.end();
        assert!(close(e.0, 4.0 * PI / 3.0) && close(e.1, 2.0 * PI / 3.0));
        for f in &w.hyperbolic_families {
            for tc in [0.3, 1.7, 5.0] {
                for tn in f.theta_n(tc) {
                    assert!(f.congruence_residual(tc, tn) < 1e-12);
                }
            }
        }
        let pts = elliptic_reducible_walls(&EllipticClassPair::new(
            (2.0 * PI / 3.0, 2.0 * PI / 3.0),
            (2.0 * PI / 3.0, 2.0 * PI / 3.0),
        ));
        assert!(pts.spherical_segment.collapsed);
    }

    #[test]
    fn paupert() {
        let t = 2.0 * PI;
        assert!(!paupert_surjective(&EllipticClassPair::new(
            (t / 3.0, t / 4.0),
            (t / 5.0, t / 6.0)
        )));
        let big = EllipticClassPair::new((t * 0.99, t * 0.01), (t * 0.99, t * 0.01));
        let [a, b, c, d] = big.angles();
        assert_eq!(
            paupert_surjective(&big),
            a - 2.0 * b + c - 2.0 * d >= t && 2.0 * a - b + 2.0 * c - d >= 3.0 * t
        );
    }
}
