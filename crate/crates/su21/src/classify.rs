//! Conjugacy classes of SU(2,1): trace test against the deltoid, boundary
//! refinement by eigenstructure, and normal-form representatives.

use std::f64::consts::{PI, SQRT_2};

use num_complex::Complex64 as Cx;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{
    c, cube_roots_of_unity, cubic_derivative_roots, cubic_roots, kernel_basis, r, vnorm, Element,
    Form, Mat3, Vec3, I, ONE, ZERO,
};

/// `f(z) = |z|⁴ − 8Re(z³) + 18|z|² − 27`. Positive outside the deltoid
/// (loxodromic traces), negative inside (regular elliptic traces).
pub fn resultant_f(z: Cx) -> f64 {
    // expanded around the real cusp so the sign survives near z = 3
    let (x, y2) = (z.re, z.im * z.im);
    (x - 3.0).powi(3) * (x + 1.0) + y2 * (2.0 * x * x + 24.0 * x + 18.0 + y2)
}

/// Width of the band around `f = 0` in which the sign of `f` is not trusted.
pub fn boundary_band(z: Cx) -> f64 {
    1e-8 * (1.0 + z.norm().powi(4))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Region {
    Outside,
    Inside,
    OnBoundary,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DeltoidVerdict {
    pub value: f64,
    pub region: Region,
}

pub fn deltoid_verdict(z: Cx) -> DeltoidVerdict {
    let value = resultant_f(z);
    let band = boundary_band(z);
    let region = if value > band {
        Region::Outside
    } else if value < -band {
        Region::Inside
    } else {
        Region::OnBoundary
    };
    DeltoidVerdict { value, region }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Step {
    TwoStep,
    ThreeStep,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "class", content = "data")]
pub enum IsometryClass {
    Loxodromic {
        lambda: Cx,
        #[serde(rename = "length")]
        translation_length: f64,
    },
    RegularElliptic {
        /// `(θ₁, θ₂)` with `θ₂ ≤ θ₁`, both in `[0, 2π)`.
        #[serde(rename = "anglePair")]
        angle_pair: (f64, f64),
        #[serde(rename = "negativeEigenvalue")]
        negative_eigenvalue: Cx,
    },
    ComplexReflectionLine {
        theta: f64,
    },
    ComplexReflectionPoint {
        theta: f64,
    },
    ScrewParabolic {
        alpha: f64,
    },
    UnipotentParabolic {
        step: Step,
        vertical: bool,
        /// Sign of the vertical translation for two-step classes, 0 otherwise.
        sign: i8,
    },
    Identity,
}

impl IsometryClass {
    pub fn tag(&self) -> &'static str {
        match self {
            IsometryClass::Loxodromic { .. } => "Loxodromic",
            IsometryClass::RegularElliptic { .. } => "RegularElliptic",
            IsometryClass::ComplexReflectionLine { .. } => "ComplexReflectionLine",
            IsometryClass::ComplexReflectionPoint { .. } => "ComplexReflectionPoint",
            IsometryClass::ScrewParabolic { .. } => "ScrewParabolic",
            IsometryClass::UnipotentParabolic { .. } => "UnipotentParabolic",
            IsometryClass::Identity => "Identity",
        }
    }

    pub fn is_elliptic(&self) -> bool {
        matches!(
            self,
            IsometryClass::RegularElliptic { .. }
                | IsometryClass::ComplexReflectionLine { .. }
                | IsometryClass::ComplexReflectionPoint { .. }
        )
    }

    pub fn is_parabolic(&self) -> bool {
        matches!(
            self,
            IsometryClass::ScrewParabolic { .. } | IsometryClass::UnipotentParabolic { .. }
        )
    }

    /// Compares class data: angles modulo 2π, numbers to `tol`.
    pub fn approx_eq(&self, other: &IsometryClass, tol: f64) -> bool {
        use IsometryClass::*;
        let ang = |a: f64, b: f64| angle_dist(a, b) <= tol;
        match (self, other) {
            (
                Loxodromic {
                    lambda: a,
                    translation_length: la,
                },
                Loxodromic {
                    lambda: b,
                    translation_length: lb,
                },
            ) => {
                (a - b).norm() <= tol * (1.0 + a.norm())
                    && (la - lb).abs() <= tol * (1.0 + la.abs())
            }
            (
                RegularElliptic {
                    angle_pair: (a1, a2),
                    negative_eigenvalue: na,
                },
                RegularElliptic {
                    angle_pair: (b1, b2),
                    negative_eigenvalue: nb,
                },
            ) => {
                let pair = (ang(*a1, *b1) && ang(*a2, *b2)) || (ang(*a1, *b2) && ang(*a2, *b1));
                pair && (na - nb).norm() <= tol
            }
            (ComplexReflectionLine { theta: a }, ComplexReflectionLine { theta: b }) => ang(*a, *b),
            (ComplexReflectionPoint { theta: a }, ComplexReflectionPoint { theta: b }) => {
                ang(*a, *b)
            }
            (ScrewParabolic { alpha: a }, ScrewParabolic { alpha: b }) => ang(*a, *b),
            (a @ UnipotentParabolic { .. }, b @ UnipotentParabolic { .. }) => a == b,
            (Identity, Identity) => true,
            _ => false,
        }
    }
}

/// Distance between two angles on the circle.
pub fn angle_dist(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(2.0 * PI);
    d.min(2.0 * PI - d)
}

/// Representative in `[0, 2π)`.
pub fn mod_2pi(a: f64) -> f64 {
    let x = a.rem_euclid(2.0 * PI);
    if x >= 2.0 * PI {
        0.0
    } else {
        x
    }
}

/// Representative in `(−π, π]`.
pub fn principal_angle(a: f64) -> f64 {
    let x = mod_2pi(a);
    if x > PI {
        x - 2.0 * PI
    } else {
        x
    }
}

/// Multiplies by a cube root of unity so that the argument lies in `(−π/3, π/3]`.
pub fn z3_normalize(z: Cx) -> Cx {
    let a = z.arg();
    let k = ((a - PI / 3.0) / (2.0 * PI / 3.0)).ceil();
    z * Cx::from_polar(1.0, -2.0 * PI * k / 3.0)
}

fn char_residual(tr: Cx, c2: Cx, x: Cx) -> Cx {
    ((x - tr) * x + c2) * x - ONE
}

/// Eigenvalues of an SU(2,1) element from its trace alone
/// (`X³ − zX² + z̄X − 1`).
pub fn eigenvalues_from_trace(z: Cx) -> [Cx; 3] {
    cubic_roots(-z, z.conj(), -ONE)
}

/// Classify `g` into its conjugacy class.
pub fn classify(g: &Element, tol: f64) -> Result<IsometryClass> {
    let m = &g.m;
    let mnorm = m.norm_inf();
    for w in cube_roots_of_unity() {
        if m.dist(&Mat3::identity().scale(w)) <= tol * (1.0 + mnorm) {
            return Ok(IsometryClass::Identity);
        }
    }
    let z = m.trace();
    let fv = resultant_f(z);
    let band = boundary_band(z);
    if fv > band {
        let roots = cubic_roots(-z, m.principal_minor_sum(), -m.det());
        let lam = *roots
            .iter()
            .max_by(|a, b| a.norm().total_cmp(&b.norm()))
            .unwrap();
        let lam = z3_normalize(lam);
        return Ok(IsometryClass::Loxodromic {
            lambda: lam,
            translation_length: 2.0 * lam.norm().ln(),
        });
    }
    if fv < -band {
        return classify_elliptic(g);
    }
    classify_boundary(g, tol)
}

fn classify_elliptic(g: &Element) -> Result<IsometryClass> {
    let m = &g.m;
    let roots = cubic_roots(-m.trace(), m.principal_minor_sum(), -m.det());
    let mut data: Vec<(Cx, f64)> = Vec::with_capacity(3);
    for lam in roots {
        let shifted = *m - Mat3::identity().scale(lam);
        let v = kernel_basis(&shifted, 1)[0];
        let n = g.form.norm2(&v) / vnorm(&v).powi(2);
        data.push((lam, n));
    }
    let neg = (0..3)
        .min_by(|&a, &b| data[a].1.total_cmp(&data[b].1))
        .unwrap();
    let gamma = data[neg].0;
    let mut angles: Vec<f64> = (0..3)
        .filter(|&k| k != neg)
        .map(|k| mod_2pi((data[k].0 / gamma).arg()))
        .collect();
    angles.sort_by(|a, b| b.total_cmp(a));
    Ok(IsometryClass::RegularElliptic {
        angle_pair: (angles[0], angles[1]),
        negative_eigenvalue: z3_normalize(gamma / gamma.norm()),
    })
}

fn classify_boundary(g: &Element, tol: f64) -> Result<IsometryClass> {
    let m = &g.m;
    let z = m.trace();
    let c2 = m.principal_minor_sum();
    let mnorm = m.norm_inf();

    // triple eigenvalue: trace is 3ω for a cube root of unity ω
    for w in cube_roots_of_unity() {
        if (z - w * 3.0).norm() <= 1e-5 * (1.0 + z.norm()) {
            let n = m.scale(w.conj()) - Mat3::identity();
            let nn = n.max_abs();
            if nn <= tol * (1.0 + mnorm) {
                return Ok(IsometryClass::Identity);
            }
            let ratio = (n * n).max_abs() / (nn * nn);
            if ratio <= 1e-9 {
                return Ok(IsometryClass::UnipotentParabolic {
                    step: Step::TwoStep,
                    vertical: true,
                    sign: vertical_sign(&n, g.form),
                });
            }
            if ratio >= 1e-6 {
                return Ok(IsometryClass::UnipotentParabolic {
                    step: Step::ThreeStep,
                    vertical: false,
                    sign: 0,
                });
            }
            return Err(Error::AmbiguousBoundary(vec![
                "UnipotentParabolic(TwoStep)".into(),
                "UnipotentParabolic(ThreeStep)".into(),
            ]));
        }
    }

    // double eigenvalue: it is a simple root of the derivative
    let crit = cubic_derivative_roots(z, c2);
    let mu = *crit
        .iter()
        .min_by(|a, b| {
            char_residual(z, c2, **a)
                .norm()
                .total_cmp(&char_residual(z, c2, **b).norm())
        })
        .unwrap();
    let sigma = (mu * mu).inv();
    let shifted = *m - Mat3::identity().scale(mu);
    let s = shifted.max_abs();
    let rho = shifted.max_minor() / (s * s);
    if rho <= 1e-6 {
        let basis = kernel_basis(&shifted, 2);
        let f = g.form;
        let g11 = f.norm2(&basis[0]);
        let g22 = f.norm2(&basis[1]);
        let g12 = f.inner(&basis[1], &basis[0]);
        let det = g11 * g22 - g12.norm_sqr();
        if det < 0.0 {
            return Ok(IsometryClass::ComplexReflectionLine {
                theta: mod_2pi((sigma / mu).arg()),
            });
        }
        return Ok(IsometryClass::ComplexReflectionPoint {
            theta: mod_2pi((mu / sigma).arg()),
        });
    }
    if rho >= 1e-4 {
        return Ok(IsometryClass::ScrewParabolic {
            alpha: principal_angle((sigma / mu).arg()),
        });
    }
    Err(Error::AmbiguousBoundary(vec![
        "ScrewParabolic".into(),
        "ComplexReflection".into(),
    ]))
}

/// For a rank-one nilpotent `N = c·v⟨·,v⟩` with `v` null, the sign of `Im c`.
fn vertical_sign(n: &Mat3, form: Form) -> i8 {
    let col = (0..3)
        .max_by(|&a, &b| vnorm(&n.column(a)).total_cmp(&vnorm(&n.column(b))))
        .unwrap();
    let v: Vec3 = n.column(col);
    let outer = form.outer(&v, &v);
    let (mut bi, mut bj) = (0, 0);
    for i in 0..3 {
        for j in 0..3 {
            if outer.0[i][j].norm() > outer.0[bi][bj].norm() {
                bi = i;
                bj = j;
            }
        }
    }
    let coef = n.0[bi][bj] / outer.0[bi][bj];
    if coef.im >= 0.0 {
        1
    } else {
        -1
    }
}

/// The representative matrix of a class.
pub fn normal_form(class: &IsometryClass) -> Result<Element> {
    use IsometryClass::*;
    Ok(match class {
        Loxodromic { lambda, .. } => {
            let l = *lambda;
            if l.norm() <= 1.0 {
                return Err(Error::OutOfRange(format!(
                    "|lambda| = {} must exceed 1",
                    l.norm()
                )));
            }
            Element::new(Mat3::diag(l, l.conj() / l, l.conj().inv()), Form::Siegel)
        }
        RegularElliptic {
            angle_pair: (t1, t2),
            negative_eigenvalue,
        } => {
            let g = *negative_eigenvalue;
            Element::new(
                Mat3::diag(
                    g * Cx::from_polar(1.0, *t1),
                    g * Cx::from_polar(1.0, *t2),
                    g,
                ),
                Form::Ball,
            )
        }
        ComplexReflectionLine { theta } => {
            let mu = Cx::from_polar(1.0, -theta / 3.0);
            Element::new(
                Mat3::diag(Cx::from_polar(1.0, 2.0 * theta / 3.0), mu, mu),
                Form::Ball,
            )
        }
        ComplexReflectionPoint { theta } => {
            let mu = Cx::from_polar(1.0, theta / 3.0);
            Element::new(
                Mat3::diag(mu, mu, Cx::from_polar(1.0, -2.0 * theta / 3.0)),
                Form::Ball,
            )
        }
        ScrewParabolic { alpha } => screw_parabolic(*alpha),
        UnipotentParabolic {
            step: Step::TwoStep,
            sign,
            ..
        } => {
            let s = if *sign < 0 { -1.0 } else { 1.0 };
            Element::new(
                Mat3([[ONE, ZERO, I * s], [ZERO, ONE, ZERO], [ZERO, ZERO, ONE]]),
                Form::Siegel,
            )
        }
        UnipotentParabolic {
            step: Step::ThreeStep,
            ..
        } => Element::new(
            Mat3([
                [ONE, r(-SQRT_2), r(-1.0)],
                [ZERO, ONE, r(SQRT_2)],
                [ZERO, ZERO, ONE],
            ]),
            Form::Siegel,
        ),
        Identity => Element::identity(Form::Ball),
    })
}

/// The screw parabolic normal form; acts on the boundary as `[z,t] ↦ [e^{iα}z, t+1]`.
pub fn screw_parabolic(alpha: f64) -> Element {
    let a = Cx::from_polar(1.0, -alpha / 3.0);
    let b = Cx::from_polar(1.0, 2.0 * alpha / 3.0);
    Element::new(
        Mat3([[a, ZERO, I * a], [ZERO, b, ZERO], [ZERO, ZERO, a]]),
        Form::Siegel,
    )
}

/// The order-two lift `z ↦ −z + 2⟨z,v⟩/⟨v,v⟩ v`, fixing the point `[v]`
/// and acting as `−1` on `v^⊥`.
pub fn complex_reflection_from_vector(v: &Vec3, form: Form, tol: f64) -> Result<Element> {
    let n = form.norm2(v);
    if n.abs() <= tol * vnorm(v).powi(2) {
        return Err(Error::NullVector);
    }
    let m = form.outer(v, v).scale(r(2.0 / n)) - Mat3::identity();
    Ok(Element::new(m, form))
}

/// `e^{iθ}` helper used by the families.
pub fn cis(t: f64) -> Cx {
    c(t.cos(), t.sin())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{omega, Heisenberg};

    #[test]
    fn f_examples() {
        assert_eq!(resultant_f(r(3.0)), 0.0);
        assert_eq!(resultant_f(ZERO), -27.0);
        assert!((resultant_f(r(3.5)) - 0.5625).abs() < 1e-12);
    }

    #[test]
    fn classify_examples() {
        let lox = Element::new(Mat3::diag(r(2.0), ONE, r(0.5)), Form::Siegel);
        match classify(&lox, 1e-9).unwrap() {
            IsometryClass::Loxodromic {
                lambda,
                translation_length,
            } => {
                assert!((lambda - r(2.0)).norm() < 1e-12);
                assert!((translation_length - 2.0 * 2f64.ln()).abs() < 1e-12);
            }
            other => panic!("{other:?}"),
        }
        let w = omega();
        let ell = Element::new(Mat3::diag(ONE, w, w * w), Form::Ball);
        assert_eq!(classify(&ell, 1e-9).unwrap().tag(), "RegularElliptic");
        let t = Heisenberg::new(ZERO, 1.0).translation();
        assert_eq!(
            classify(&t, 1e-9).unwrap(),
            IsometryClass::UnipotentParabolic {
                step: Step::TwoStep,
                vertical: true,
                sign: 1
            }
        );
        match classify(&screw_parabolic(PI / 2.0), 1e-9).unwrap() {
            IsometryClass::ScrewParabolic { alpha } => assert!((alpha - PI / 2.0).abs() < 1e-12),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn normal_form_examples() {
        let l = normal_form(&IsometryClass::Loxodromic {
            lambda: r(2.0),
            translation_length: 0.0,
        })
        .unwrap();
        assert!(l.m.dist(&Mat3::diag(r(2.0), ONE, r(0.5))) < 1e-15);
        let u = normal_form(&IsometryClass::UnipotentParabolic {
            step: Step::ThreeStep,
            vertical: false,
            sign: 0,
        })
        .unwrap();
        assert_eq!(u.m.0[0][1], r(-SQRT_2));
        assert!(normal_form(&IsometryClass::Loxodromic {
            lambda: r(0.5),
            translation_length: 0.0
        })
        .is_err());
    }

    #[test]
    fn reflection_from_vector() {
        let g = complex_reflection_from_vector(&[ZERO, ONE, ZERO], Form::Ball, 1e-12).unwrap();
        assert!((g.trace() + ONE).norm() < 1e-15);
        assert!((g.m * g.m).dist(&Mat3::identity()) < 1e-15);
        assert_eq!(classify(&g, 1e-9).unwrap().tag(), "ComplexReflectionLine");
        let p = complex_reflection_from_vector(&[ZERO, ZERO, ONE], Form::Ball, 1e-12).unwrap();
        assert_eq!(classify(&p, 1e-9).unwrap().tag(), "ComplexReflectionPoint");
        assert_eq!(
            complex_reflection_from_vector(&[ONE, ZERO, ONE], Form::Ball, 1e-12),
            Err(Error::NullVector)
        );
    }

    #[test]
    fn screw_boundary_action() {
        let g = screw_parabolic(0.7);
        let x = Heisenberg::new(c(0.3, -1.2), 0.4);
        let img = g.apply(&x.lift());
        let y = Heisenberg::from_vector(&img).unwrap();
        assert!((y.z - cis(0.7) * x.z).norm() < 1e-12);
        assert!((y.t - (x.t + 1.0)).abs() < 1e-12);
    }
}
