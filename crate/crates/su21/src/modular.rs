//! The two arcs of representations of PSL(2,ℤ) with parabolic image of `p`,
//! indexed by the type of the involution `E`.

use std::f64::consts::PI;

use num_complex::Complex64 as Cx;
use serde::{Deserialize, Serialize};

use crate::classify::{cis, classify, resultant_f, IsometryClass};
use crate::discrete::{modular_generators, Mat2};
use crate::error::{Error, Result};
use crate::invariants::cartan;
use crate::linalg::{r, Element, Form, Mat3, Point, PointType, Vec3, ONE, ZERO};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    /// `E` is a complex reflection in a point.
    Point,
    /// `E` is a complex reflection in a line.
    Line,
}

impl Family {
    /// `+1` for points, `−1` for lines: the sign in front of `cos 3α`.
    fn sign(self) -> f64 {
        match self {
            Family::Point => 1.0,
            Family::Line => -1.0,
        }
    }

    /// Default scan range in `α`.
    pub fn alpha_range(self) -> (f64, f64) {
        match self {
            Family::Point => (-PI / 6.0, PI / 6.0),
            Family::Line => (PI / 6.0, PI / 3.0),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModularRep {
    pub family: Family,
    pub alpha: f64,
    pub e: Element,
    pub p: Element,
    pub u: Cx,
}

/// Canonical representative of `α` in `(−π/3, π/3]`.
pub fn canonical_alpha(alpha: f64) -> f64 {
    let a = (alpha + PI / 3.0).rem_euclid(2.0 * PI / 3.0) - PI / 3.0;
    if a <= -PI / 3.0 + 1e-15 {
        a + 2.0 * PI / 3.0
    } else {
        a
    }
}

/// The representation with `E`, `P` given by the explicit Siegel matrices.
pub fn modular_rep(family: Family, alpha: f64) -> Result<ModularRep> {
    let alpha = canonical_alpha(alpha);
    let radicand = 2.0 * family.sign() * (3.0 * alpha).cos();
    if radicand < -1e-12 {
        return Err(Error::OutOfRange(format!(
            "alpha = {alpha} is outside the {family:?} family (radicand {radicand})"
        )));
    }
    let s = r(radicand.max(0.0).sqrt());
    let u = cis(alpha);
    let (uu, u2) = (u.inv(), (u * u).inv());
    let sg = family.sign();
    let e = Mat3::from_real([[0.0, 0.0, -sg], [0.0, -1.0, 0.0], [-sg, 0.0, 0.0]]);
    let p = Mat3::from_rows([[u, s, -u2 * sg], [ZERO, u2, -s * uu], [ZERO, ZERO, u]]);
    Ok(ModularRep {
        family,
        alpha,
        e: Element::new(e, Form::Siegel),
        p: Element::new(p, Form::Siegel),
        u,
    })
}

impl ModularRep {
    pub fn c(&self) -> Element {
        self.e * self.p
    }

    /// Largest defect in `E² = Id`, `(EP)³` central and `tr P = 2u + u⁻²`.
    pub fn relation_residual(&self) -> f64 {
        let id = Element::identity(Form::Siegel);
        let e2 = (self.e * self.e).m.dist(&id.m);
        let c3 = self.c().pow(3).central_distance(&id).0;
        let trp = (self.p.trace() - (self.u * 2.0 + (self.u * self.u).inv())).norm();
        e2.max(c3).max(trp)
    }

    /// `2(2 + u³ + u⁻³)`
    pub fn commutator_trace_closed_form(&self) -> f64 {
        4.0 + 4.0 * (3.0 * self.alpha).cos()
    }

    /// Fixed points of `P`, `CPC⁻¹`, `C⁻¹PC`.
    pub fn triangle(&self) -> [Vec3; 3] {
        let p1 = [ONE, ZERO, ZERO];
        let c = self.c();
        [p1, c.apply(&p1), c.inv().apply(&p1)]
    }

    /// `arg(ū³)` for points, `arg(−ū³)` for lines.
    pub fn expected_cartan(&self) -> f64 {
        let u3 = (self.u * self.u * self.u).conj();
        (u3 * self.family.sign()).arg()
    }

    pub fn evaluate_word(&self, word: &str) -> Result<Element> {
        let (e, p, c) = (self.e, self.p, self.c());
        let mut g = Element::identity(Form::Siegel);
        for ch in word.chars() {
            g = g * match ch {
                'e' => e,
                'p' => p,
                'P' => p.inv(),
                'c' => c,
                'C' => c.inv(),
                other => return Err(Error::InvalidInput(format!("bad letter {other:?}"))),
            };
        }
        Ok(g)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ModularVerdict {
    DiscreteFaithful,
    DiscreteUnfaithfulBoundaryCase,
    NonDiscreteOrUnknown,
}

impl ModularVerdict {
    pub fn tag(self) -> &'static str {
        match self {
            ModularVerdict::DiscreteFaithful => "DiscreteFaithful",
            ModularVerdict::DiscreteUnfaithfulBoundaryCase => "DiscreteUnfaithfulBoundaryCase",
            ModularVerdict::NonDiscreteOrUnknown => "NonDiscreteOrUnknown",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ModularInvariants {
    pub trace_commutator: Cx,
    pub trace_commutator_closed_form: f64,
    pub trace_residual: f64,
    pub cartan: f64,
    pub expected_cartan: f64,
    pub triangle: [Vec3; 3],
    pub commutator_class: IsometryClass,
    pub discreteness_verdict: ModularVerdict,
}

pub fn modular_invariants(rep: &ModularRep, tol: f64) -> Result<ModularInvariants> {
    let comm = rep.e.commutator(&rep.p);
    let tr = comm.trace();
    let closed = rep.commutator_trace_closed_form();
    let tri = rep.triangle();
    let a = cartan(&tri[0], &tri[1], &tri[2], Form::Siegel)?;
    Ok(ModularInvariants {
        trace_commutator: tr,
        trace_commutator_closed_form: closed,
        trace_residual: (tr - closed).norm(),
        cartan: a,
        expected_cartan: rep.expected_cartan(),
        triangle: tri,
        commutator_class: classify(&comm, tol)?,
        discreteness_verdict: modular_discreteness(rep, tol).verdict,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct DiscretenessReport {
    pub verdict: ModularVerdict,
    /// `f(tr[E,P])` from the matrices.
    pub f_value: f64,
    /// The classifier agrees: `[E,P]` is non-elliptic iff the verdict is discrete.
    pub consistent: bool,
}

/// Closed-form verdict: every point-family representation is discrete and
/// faithful; the line family is iff `cos 3α ∈ [−1/4, 0]`, with `α = ±π/3`
/// discrete but not faithful.
pub fn modular_discreteness(rep: &ModularRep, tol: f64) -> DiscretenessReport {
    let c3 = (3.0 * rep.alpha).cos();
    let verdict = match rep.family {
        Family::Point => ModularVerdict::DiscreteFaithful,
        Family::Line if (c3 + 1.0).abs() <= tol => ModularVerdict::DiscreteUnfaithfulBoundaryCase,
        Family::Line if c3 >= -0.25 - tol && c3 <= tol => ModularVerdict::DiscreteFaithful,
        Family::Line => ModularVerdict::NonDiscreteOrUnknown,
    };
    let tr = rep.e.commutator(&rep.p).trace();
    let f_value = resultant_f(tr);
    let non_elliptic = f_value >= -crate::classify::boundary_band(tr);
    let consistent = match verdict {
        ModularVerdict::DiscreteFaithful => non_elliptic,
        // the boundary case has an elliptic commutator of finite order
        ModularVerdict::DiscreteUnfaithfulBoundaryCase => true,
        ModularVerdict::NonDiscreteOrUnknown => !non_elliptic,
    };
    DiscretenessReport {
        verdict,
        f_value,
        consistent,
    }
}

/// Locate the line-family transition in `cos 3α` by bisection on the sign of
/// `f(tr[E,P])` computed from the matrices.
pub fn line_family_transition(tol: f64) -> Result<f64> {
    let f_at = |c3: f64| -> Result<f64> {
        let alpha = c3.acos() / 3.0;
        let rep = modular_rep(Family::Line, alpha)?;
        Ok(resultant_f(rep.e.commutator(&rep.p).trace()))
    };
    // f < 0 (elliptic) at cos 3α = −1/2, f ≥ 0 at −1/8
    let (mut lo, mut hi) = (-0.5, -0.125);
    if f_at(lo)? >= 0.0 || f_at(hi)? < 0.0 {
        return Err(Error::NoOnsetFound);
    }
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if f_at(mid)? < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// The unique order-three regular elliptic map cycling `p1 → p2 → p3`.
pub fn order_three_from_triangle(
    p1: &Vec3,
    p2: &Vec3,
    p3: &Vec3,
    form: Form,
    tol: f64,
) -> Result<Element> {
    for p in [p1, p2, p3] {
        if Point::new(*p, form, tol.max(1e-9))?.kind != PointType::Null {
            return Err(Error::InvalidInput("vertices must be null".into()));
        }
    }
    let g12 = form.inner(p1, p2).norm();
    let g23 = form.inner(p2, p3).norm();
    let g31 = form.inner(p3, p1).norm();
    if g12 == 0.0 || g23 == 0.0 || g31 == 0.0 {
        return Err(Error::DegenerateTriple);
    }
    // positive rescalings making the three |⟨pi,pj⟩| equal
    let r1 = (g23 / (g12 * g31)).sqrt();
    let r2 = (g31 / (g12 * g23)).sqrt();
    let r3 = (g12 / (g23 * g31)).sqrt();
    let v: Vec<Vec3> = [(p1, r1), (p2, r2), (p3, r3)]
        .iter()
        .map(|(p, k)| crate::linalg::vscale(p, r(*k)))
        .collect();
    let n = Mat3::from_columns(&v[0], &v[1], &v[2]);
    let scale = v.iter().map(crate::linalg::vnorm).product::<f64>();
    if n.det().norm() <= 1e-9 * scale {
        return Err(Error::DegenerateTriple);
    }
    let h12 = form.inner(&v[0], &v[1]);
    let h23 = form.inner(&v[1], &v[2]);
    let h31 = form.inner(&v[2], &v[0]);
    // C v1 = a v2, C v2 = b v3, C v3 = c v1 with a = 1
    let b = (h12 / h23).conj();
    let c = (h23 / (h31 * b)).conj();
    let s = Mat3::from_rows([[ZERO, ZERO, c], [ONE, ZERO, ZERO], [ZERO, b, ZERO]]);
    let m = n * s * n.inverse().ok_or(Error::DegenerateTriple)?;
    let d = m.det();
    let m = m.scale(Cx::from_polar(1.0, -d.arg() / 3.0));
    Ok(Element::new(m, form))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Surface {
    OncePuncturedTorus,
    ThricePuncturedSphere,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SubgroupWords {
    pub generators: (Element, Element),
    /// `(identity, residual from a central element)`
    pub identity_checks: Vec<(String, f64)>,
}

/// `a₁ = cec⁻¹e`, `b₁ = cecec` for the torus; `a = cece`, `b = c⁻¹ecec⁻¹`
/// for the sphere, with the word identities they satisfy.
pub fn subgroup_words(rep: &ModularRep, surface: Surface) -> Result<SubgroupWords> {
    let comm = rep.e.commutator(&rep.p);
    let w = |s: &str| rep.evaluate_word(s);
    let mut checks = vec![(
        "[e,p] = cec^-1 e".to_string(),
        comm.central_distance(&w("ceCe")?).0,
    )];
    let (e2, p2, c2) = modular_generators();
    let w2 = |s: &str| -> Mat2 {
        s.chars().fold(Mat2::identity(), |g, ch| {
            g * match ch {
                'e' => e2,
                'p' => p2,
                'P' => p2.inv(),
                'c' => c2,
                _ => c2.inv(),
            }
        })
    };
    let sl2 = if e2.commutator(&p2).eq_projective(&w2("ceCe"), 1e-12) {
        0.0
    } else {
        1.0
    };
    checks.push(("2x2: epep^-1 = cec^-1 e".to_string(), sl2));
    let gens = match surface {
        Surface::OncePuncturedTorus => (w("ceCe")?, w("cecec")?),
        Surface::ThricePuncturedSphere => {
            let a = w("cece")?;
            let b = w("CeceC")?;
            let lhs = comm.pow(3);
            let rhs = b.inv().commutator(&a.inv());
            checks.push((
                "[e,p]^3 = [b^-1,a^-1]".to_string(),
                lhs.central_distance(&rhs).0,
            ));
            let (a2, b2) = (w2("cece"), w2("CeceC"));
            let l2 = {
                let k = e2.commutator(&p2);
                k * k * k
            };
            let ok = l2.eq_projective(&b2.inv().commutator(&a2.inv()), 1e-12);
            checks.push((
                "2x2: [e,p]^3 = [b^-1,a^-1]".to_string(),
                if ok { 0.0 } else { 1.0 },
            ));
            (a, b)
        }
    };
    Ok(SubgroupWords {
        generators: gens,
        identity_checks: checks,
    })
}

/// The three products `E₁E₂`, `E₂E₃`, `E₃E₁` of the index-three subgroup
/// generated by `E₁ = E`, `E₂ = CEC⁻¹`, `E₃ = C⁻¹EC`.
pub fn reflection_subgroup_products(rep: &ModularRep) -> [Element; 3] {
    let c = rep.c();
    let e1 = rep.e;
    let e2 = e1.conjugate_by(&c);
    let e3 = e1.conjugate_by(&c.inv());
    [e1 * e2, e2 * e3, e3 * e1]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::verify_su21;

    #[test]
    fn alpha_zero_point() {
        let rep = modular_rep(Family::Point, 0.0).unwrap();
        let s2 = 2f64.sqrt();
        let want = Mat3::from_real([[1.0, s2, -1.0], [0.0, 1.0, -s2], [0.0, 0.0, 1.0]]);
        assert!(rep.p.m.dist(&want) < 1e-15);
        assert!((rep.p.trace() - r(3.0)).norm() < 1e-15);
        assert!((rep.e.trace() + 1.0).norm() < 1e-15);
        let inv = modular_invariants(&rep, 1e-9).unwrap();
        assert!((inv.trace_commutator - r(8.0)).norm() < 1e-12);
        assert!(inv.cartan.abs() < 1e-12);
    }

    #[test]
    fn relations_and_cartan() {
        for fam in [Family::Point, Family::Line] {
            let (lo, hi) = fam.alpha_range();
            for k in 0..=20 {
                let a = lo + (hi - lo) * k as f64 / 20.0;
                let rep = modular_rep(fam, a).unwrap();
                assert!(verify_su21(&rep.p.m, Form::Siegel, 1e-12).0);
                assert!(verify_su21(&rep.e.m, Form::Siegel, 1e-12).0);
                assert!(rep.relation_residual() < 1e-12);
                let inv = modular_invariants(&rep, 1e-9).unwrap();
                assert!(inv.trace_residual < 1e-12);
                let d = crate::classify::angle_dist(inv.cartan, inv.expected_cartan);
                let boundary = (inv.expected_cartan.abs() - PI / 2.0).abs() < 1e-9;
                assert!(
                    d < 1e-9 || boundary,
                    "{fam:?} {a} {} {}",
                    inv.cartan,
                    inv.expected_cartan
                );
                assert!(modular_discreteness(&rep, 1e-9).consistent);
            }
        }
    }

    #[test]
    fn special_values() {
        let rep = modular_rep(Family::Point, PI / 6.0).unwrap();
        assert!((rep.e.commutator(&rep.p).trace() - r(4.0)).norm() < 1e-12);
        let rep = modular_rep(Family::Line, PI / 3.0).unwrap();
        assert!(rep.e.commutator(&rep.p).trace().norm() < 1e-12);
        assert_eq!(
            modular_discreteness(&rep, 1e-9).verdict,
            ModularVerdict::DiscreteUnfaithfulBoundaryCase
        );
        let rep = modular_rep(Family::Line, (-0.3f64).acos() / 3.0).unwrap();
        assert_eq!(
            modular_discreteness(&rep, 1e-9).verdict,
            ModularVerdict::NonDiscreteOrUnknown
        );
        let c = classify(&rep.e.commutator(&rep.p), 1e-9).unwrap();
        assert_eq!(c.tag(), "RegularElliptic");
        assert!(modular_rep(Family::Point, PI / 3.0).is_err());
        let x = line_family_transition(1e-10).unwrap();
        assert!((x + 0.25).abs() < 1e-9, "{x}");
    }

    #[test]
    fn order_three() {
        for a in [0.0, 0.2, -0.8] {
            let rep = modular_rep(
                if a == -0.8 {
                    Family::Line
                } else {
                    Family::Point
                },
                a,
            )
            .unwrap();
            let [p1, p2, p3] = rep.triangle();
            let c = order_three_from_triangle(&p1, &p2, &p3, Form::Siegel, 1e-9).unwrap();
            assert!(c.central_distance(&rep.c()).0 < 1e-9);
            assert!(
                c.pow(3)
                    .central_distance(&Element::identity(Form::Siegel))
                    .0
                    < 1e-12
            );
        }
    }

    #[test]
    fn words() {
        for (fam, a) in [(Family::Point, 0.1), (Family::Line, 0.8)] {
            let rep = modular_rep(fam, a).unwrap();
            for s in [Surface::OncePuncturedTorus, Surface::ThricePuncturedSphere] {
                let w = subgroup_words(&rep, s).unwrap();
                for (name, res) in &w.identity_checks {
                    assert!(*res < 1e-9, "{name}: {res}");
                }
            }
        }
        let rep = modular_rep(Family::Line, (-0.25f64).acos() / 3.0).unwrap();
        let w = subgroup_words(&rep, Surface::OncePuncturedTorus).unwrap();
        assert!(classify(&w.generators.0, 1e-6).unwrap().is_parabolic());
    }
}
