//! Projective invariants of boundary configurations: triple ratio and
//! angular (Cartan) invariant, Korányi–Reimann cross-ratio, cross-ratio
//! triples of ideal tetrahedra and their reconstruction, quadruple ratio.

use num_complex::Complex64 as Cx;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{r, vnorm, vscale, Form, Mat3, Point, PointType, Vec3, ONE, ZERO};

fn pair_ok(x: Cx, a: &Vec3, b: &Vec3, tol: f64) -> bool {
    x.norm() > tol * vnorm(a) * vnorm(b)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TripleRatio {
    #[serde(rename = "T")]
    pub t: Cx,
    pub alpha: f64,
}

/// Triple ratio and angular invariant `arg(−⟨p1,p2⟩⟨p2,p3⟩⟨p3,p1⟩)`.
pub fn triple_ratio(p1: &Vec3, p2: &Vec3, p3: &Vec3, form: Form) -> Result<TripleRatio> {
    let a12 = form.inner(p1, p2);
    let a23 = form.inner(p2, p3);
    let a31 = form.inner(p3, p1);
    let tol = 1e-12;
    if !pair_ok(a12, p1, p2, tol) || !pair_ok(a23, p2, p3, tol) || !pair_ok(a31, p3, p1, tol) {
        return Err(Error::DegenerateTriple);
    }
    let num = a12 * a23 * a31;
    let t = num / num.conj();
    Ok(TripleRatio {
        t,
        alpha: (-num).arg(),
    })
}

/// Cartan invariant of three boundary points (an angle in `[−π/2, π/2]`).
pub fn cartan(p1: &Vec3, p2: &Vec3, p3: &Vec3, form: Form) -> Result<f64> {
    triple_ratio(p1, p2, p3, form).map(|t| t.alpha)
}

/// `𝕏(p1,p2,p3,p4) = ⟨p3,p1⟩⟨p4,p2⟩ / (⟨p3,p2⟩⟨p4,p1⟩)`.
pub fn cross_ratio(p1: &Vec3, p2: &Vec3, p3: &Vec3, p4: &Vec3, form: Form) -> Result<Cx> {
    let d1 = form.inner(p3, p2);
    let d2 = form.inner(p4, p1);
    let tol = 1e-13;
    if !pair_ok(d1, p3, p2, tol) || !pair_ok(d2, p4, p1, tol) {
        return Err(Error::DegenerateConfiguration);
    }
    Ok(form.inner(p3, p1) * form.inner(p4, p2) / (d1 * d2))
}

/// Quadruple ratio; has modulus one.
pub fn quadruple_ratio(p1: &Vec3, p2: &Vec3, p3: &Vec3, p4: &Vec3, form: Form) -> Result<Cx> {
    let num = form.inner(p1, p2) * form.inner(p2, p3) * form.inner(p3, p4) * form.inner(p4, p1);
    let den = form.inner(p1, p4) * form.inner(p4, p3) * form.inner(p3, p2) * form.inner(p2, p1);
    let scale = vnorm(p1).powi(2) * vnorm(p2).powi(2) * vnorm(p3).powi(2) * vnorm(p4).powi(2);
    if den.norm() <= 1e-24 * scale {
        return Err(Error::DegenerateConfiguration);
    }
    Ok(num / den)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct IdealTetrahedron {
    pub points: [Vec3; 4],
    pub form: Form,
    pub degenerate: bool,
}

impl IdealTetrahedron {
    /// Checks nullity and distinctness; flags (does not reject) the complex-line case.
    pub fn new(points: [Vec3; 4], form: Form, tol: f64) -> Result<Self> {
        for p in &points {
            let pt = Point::new(*p, form, tol)?;
            if pt.kind != PointType::Null {
                return Err(Error::InvalidInput("tetrahedron vertex is not null".into()));
            }
        }
        for i in 0..4 {
            for j in i + 1..4 {
                let pi = Point::raw(points[i], form);
                if pi.same_as(&Point::raw(points[j], form), 1e-10) {
                    return Err(Error::InvalidInput("tetrahedron vertices coincide".into()));
                }
            }
        }
        Ok(IdealTetrahedron {
            points,
            form,
            degenerate: in_complex_line(&points),
        })
    }
}

/// Rank test on the 3×4 matrix of lifts: all four 3×3 minors of the
/// Euclidean-normalized columns vanish iff the points span a plane.
pub fn in_complex_line(points: &[Vec3; 4]) -> bool {
    let u: Vec<Vec3> = points
        .iter()
        .map(|p| vscale(p, r(1.0 / vnorm(p))))
        .collect();
    let mut best: f64 = 0.0;
    for skip in 0..4 {
        let cols: Vec<&Vec3> = (0..4).filter(|&k| k != skip).map(|k| &u[k]).collect();
        let d = Mat3::from_columns(cols[0], cols[1], cols[2]).det().norm();
        best = best.max(d);
    }
    best < 1e-8
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CrossRatioTriple {
    #[serde(rename = "X1")]
    pub x1: Cx,
    #[serde(rename = "X2")]
    pub x2: Cx,
    #[serde(rename = "X3")]
    pub x3: Cx,
    /// `| |X2| − |X1X3| |`
    pub residual1: f64,
    /// `|2|X1|²Re X3 − (|X1|²+|X2|²+1−2Re(X1+X2))|`
    pub residual2: f64,
    /// `|X1X3 − X2 e^{2iA(p1,p2,p3)}|`, relative.
    pub residual3: f64,
}

pub fn relation_residuals(x1: Cx, x2: Cx, x3: Cx) -> (f64, f64) {
    let r1 = (x2.norm() - (x1 * x3).norm()).abs();
    let n1 = x1.norm_sqr();
    let r2 = (2.0 * n1 * x3.re - (n1 + x2.norm_sqr() + 1.0 - 2.0 * (x1 + x2).re)).abs();
    (r1, r2)
}

/// `X1 = 𝕏(p1,p2,p3,p4)`, `X2 = 𝕏(p1,p3,p2,p4)`, `X3 = 𝕏(p2,p3,p1,p4)`.
pub fn cross_ratio_triple(t: &IdealTetrahedron) -> Result<CrossRatioTriple> {
    if t.degenerate {
        return Err(Error::DegenerateTetrahedron);
    }
    let [p1, p2, p3, p4] = &t.points;
    let f = t.form;
    let x1 = cross_ratio(p1, p2, p3, p4, f)?;
    let x2 = cross_ratio(p1, p3, p2, p4, f)?;
    let x3 = cross_ratio(p2, p3, p1, p4, f)?;
    let (residual1, residual2) = relation_residuals(x1, x2, x3);
    let tr = triple_ratio(p1, p2, p3, f)?;
    let rhs = x2 * tr.t;
    let residual3 = (x1 * x3 - rhs).norm() / (1.0 + rhs.norm());
    Ok(CrossRatioTriple {
        x1,
        x2,
        x3,
        residual1,
        residual2,
        residual3,
    })
}

/// `X3` from `(X1, X2)` by the two real relations; `sign` picks the sign of `Im X3`.
pub fn third_cross_ratio(x1: Cx, x2: Cx, sign: i8, tol: f64) -> Result<Cx> {
    let n1 = x1.norm_sqr();
    if n1 == 0.0 {
        return Err(Error::DegenerateConfiguration);
    }
    let lhs = 2.0 * (x1 + x2).re - 1.0;
    let lo = (x1.norm() - x2.norm()).powi(2);
    let hi = (x1.norm() + x2.norm()).powi(2);
    let violation = (lo - lhs).max(lhs - hi).max(0.0);
    if violation > tol * (1.0 + hi) {
        return Err(Error::IncompatibleCrossRatios(violation));
    }
    let re = (n1 + x2.norm_sqr() + 1.0 - 2.0 * (x1 + x2).re) / (2.0 * n1);
    let modsq = x2.norm_sqr() / n1;
    let im = (modsq - re * re).max(0.0).sqrt();
    Ok(Cx::new(re, if sign < 0 { -im } else { im }))
}

/// A normalized ideal tetrahedron (Siegel lifts
/// `(0,0,1), (1,0,0), (z1,z2,1), (1,w2,w3)`) realizing `(X1, X2)` and the
/// chosen sign of `Im X3`. Gauge: `z2 ≥ 0` real and `|z1| = 1`.
pub fn tetrahedron_from_cross_ratios(
    x1: Cx,
    x2: Cx,
    sign: i8,
    tol: f64,
) -> Result<IdealTetrahedron> {
    let x3 = third_cross_ratio(x1, x2, sign, tol)?;
    // z1/z̄1 = X1 X3 / X2
    if x2.norm() == 0.0 {
        return Err(Error::DegenerateConfiguration);
    }
    let e = x1 * x3 / x2;
    let theta0 = e.arg() / 2.0;
    let mut best: Option<(f64, [Vec3; 4])> = None;
    for theta in [theta0, theta0 + std::f64::consts::PI] {
        let z1 = Cx::from_polar(1.0, theta);
        let cos = z1.re;
        if cos > 1e-12 {
            continue;
        }
        let z2 = (-2.0 * cos).max(0.0).sqrt();
        let w3 = x1 / z1;
        let w2 = if z2 > 1e-9 {
            (x2 - ONE - z1.conj() * w3) / z2
        } else {
            // complex-line triple: w2 is only fixed up to phase
            r((-2.0 * w3.re).max(0.0).sqrt())
        };
        let pts = [
            [ZERO, ZERO, ONE],
            [ONE, ZERO, ZERO],
            [z1, r(z2), ONE],
            [ONE, w2, w3],
        ];
        let null_res = (w3.re + w2.norm_sqr() / 2.0).abs() + (z1.re + z2 * z2 / 2.0).abs();
        if best.as_ref().map_or(true, |(b, _)| null_res < *b) {
            best = Some((null_res, pts));
        }
    }
    let (res, pts) =
        best.ok_or_else(|| Error::ReconstructionFailure("no admissible gauge".into()))?;
    if res > 1e-6 * (1.0 + x1.norm() + x2.norm()) {
        return Err(Error::ReconstructionFailure(format!(
            "null constraint residual {res:e}"
        )));
    }
    Ok(IdealTetrahedron {
        points: pts,
        form: Form::Siegel,
        degenerate: in_complex_line(&pts),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{c, I};
    use std::f64::consts::{FRAC_PI_2, SQRT_2};

    fn worked() -> [Vec3; 4] {
        [
            [ZERO, ZERO, ONE],
            [ONE, ZERO, ZERO],
            [r(-1.0), r(SQRT_2), ONE],
            [ONE, r(SQRT_2), r(-1.0)],
        ]
    }

    #[test]
    fn triple_ratio_examples() {
        let p = [I, ZERO, ONE];
        let q = [-I, ZERO, ONE];
        let rr = [ONE, ZERO, ZERO];
        let t = triple_ratio(&p, &q, &rr, Form::Siegel).unwrap();
        assert!((t.alpha + FRAC_PI_2).abs() < 1e-14);
        let real = [
            [r(-1.0), r(SQRT_2), ONE],
            [ONE, ZERO, ZERO],
            [r(-4.0), r(-2.0 * SQRT_2), ONE],
        ];
        let a = triple_ratio(&real[0], &real[1], &real[2], Form::Siegel).unwrap();
        assert!(a.alpha.abs() < 1e-14);
        let scaled = vscale(&p, c(2.0, -3.0));
        let t2 = triple_ratio(&scaled, &q, &rr, Form::Siegel).unwrap();
        assert!((t2.t - t.t).norm() < 1e-14 && (t2.alpha - t.alpha).abs() < 1e-14);
    }

    #[test]
    fn worked_tetrahedron() {
        let pts = worked();
        let x1 = cross_ratio(&pts[0], &pts[1], &pts[2], &pts[3], Form::Siegel).unwrap();
        let x2 = cross_ratio(&pts[0], &pts[2], &pts[1], &pts[3], Form::Siegel).unwrap();
        assert!((x1 - ONE).norm() < 1e-14);
        assert!((x2 - r(4.0)).norm() < 1e-14);
        let t = IdealTetrahedron::new(pts, Form::Siegel, 1e-12).unwrap();
        let tr = cross_ratio_triple(&t).unwrap();
        assert!((tr.x3 - r(4.0)).norm() < 1e-14);
        assert!(tr.residual1 < 1e-14 && tr.residual2 < 1e-14);
    }

    #[test]
    fn reconstruct_worked() {
        let t = tetrahedron_from_cross_ratios(ONE, r(4.0), 1, 1e-9).unwrap();
        let tr = cross_ratio_triple(&t).unwrap();
        assert!((tr.x1 - ONE).norm() < 1e-10);
        assert!((tr.x2 - r(4.0)).norm() < 1e-10);
        assert!((tr.x3 - r(4.0)).norm() < 1e-10);
    }

    #[test]
    fn incompatible() {
        // large X1 with X2 fixed breaks the upper bound
        let e = tetrahedron_from_cross_ratios(r(-50.0), r(1.0), 1, 1e-9).unwrap_err();
        assert_eq!(e.tag(), "IncompatibleCrossRatios");
    }

    #[test]
    fn quadruple_ratio_relations() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let f = Form::Siegel;
        for _ in 0..100 {
            let p: Vec<Vec3> = (0..4)
                .map(|_| crate::sample::boundary_point(&mut rng, 2.0))
                .collect();
            let q = quadruple_ratio(&p[0], &p[1], &p[2], &p[3], f).unwrap();
            assert!((q.norm() - 1.0).abs() < 1e-10);
            let t1 = triple_ratio(&p[0], &p[1], &p[2], f).unwrap().t;
            let t2 = triple_ratio(&p[0], &p[2], &p[3], f).unwrap().t;
            assert!((q - t1 * t2).norm() < 1e-9);
            let x = cross_ratio(&p[0], &p[1], &p[2], &p[3], f).unwrap();
            let q2 = quadruple_ratio(&p[0], &p[3], &p[1], &p[2], f).unwrap();
            assert!((q2 - x / x.conj()).norm() < 1e-9);
        }
        let w = worked();
        let q = quadruple_ratio(&w[0], &w[1], &w[2], &w[3], f).unwrap();
        assert!((q - ONE).norm() < 1e-14);
    }
}
