//! Seeded random sampling of group elements, boundary points and
//! configurations. Every function takes the generator explicitly so callers
//! own reproducibility.

use std::f64::consts::PI;

use num_complex::Complex64 as Cx;
use rand::Rng;

use crate::classify::cis;
use crate::linalg::{c, cayley_transfer, r, Element, Form, Heisenberg, Mat3, Vec3, ONE, ZERO};

pub fn complex<R: Rng>(rng: &mut R, scale: f64) -> Cx {
    c(rng.gen_range(-scale..scale), rng.gen_range(-scale..scale))
}

/// Loxodromic eigenvalue with modulus in `[lo, hi]` and uniform argument.
pub fn lox_eigenvalue<R: Rng>(rng: &mut R, lo: f64, hi: f64) -> Cx {
    Cx::from_polar(rng.gen_range(lo..hi), rng.gen_range(-PI..PI))
}

/// `diag(λ, λ̄/λ, 1/λ̄)` in Siegel form.
pub fn loxodromic_diag(lam: Cx) -> Element {
    Element::new(
        Mat3::diag(lam, lam.conj() / lam, lam.conj().inv()),
        Form::Siegel,
    )
}

/// Conjugation by `J₂` exchanges the fixed points `q∞` and `o`.
pub fn swap_ends(g: &Element) -> Element {
    let j = Form::Siegel.matrix();
    Element::new(j * g.m * j, Form::Siegel)
}

/// One normal-form generator: Heisenberg translation, its flip, a
/// loxodromic diagonal or a ball-model elliptic.
pub fn generator<R: Rng>(rng: &mut R) -> Element {
    match rng.gen_range(0..4) {
        0 => Heisenberg::new(complex(rng, 1.0), rng.gen_range(-1.0..1.0)).translation(),
        1 => swap_ends(&Heisenberg::new(complex(rng, 1.0), rng.gen_range(-1.0..1.0)).translation()),
        2 => loxodromic_diag(lox_eigenvalue(rng, 1.05, 2.0)),
        _ => {
            let a = rng.gen_range(0.0..2.0 * PI);
            let b = rng.gen_range(0.0..2.0 * PI);
            let g = Element::new(Mat3::diag(cis(a), cis(b), cis(-a - b)), Form::Ball);
            cayley_transfer(&g)
        }
    }
}

/// A word of length 2..=6 in normal-form generators, in the requested form.
pub fn element<R: Rng>(rng: &mut R, form: Form) -> Element {
    let len = rng.gen_range(2..=6);
    let mut g = Element::identity(Form::Siegel);
    for _ in 0..len {
        g = g * generator(rng);
    }
    // re-normalise the determinant against accumulated rounding
    let d = g.m.det();
    let g = Element::new(g.m.scale(d.powf(-1.0 / 3.0)), Form::Siegel);
    g.to_form(form)
}

/// A moderately conditioned generic conjugator: a translation, a flipped
/// translation and one more generator.
pub fn conjugator<R: Rng>(rng: &mut R, form: Form) -> Element {
    let t1 = Heisenberg::new(complex(rng, 1.0), rng.gen_range(-1.0..1.0)).translation();
    let t2 = swap_ends(&Heisenberg::new(complex(rng, 1.0), rng.gen_range(-1.0..1.0)).translation());
    (t1 * t2 * generator(rng)).to_form(form)
}

/// Null vector `[z,t]` lift in Siegel form.
pub fn boundary_point<R: Rng>(rng: &mut R, scale: f64) -> Vec3 {
    Heisenberg::new(complex(rng, scale), rng.gen_range(-scale..scale)).lift()
}

/// Loxodromic element `h diag(λ, λ̄/λ, 1/λ̄) h⁻¹`.
pub fn loxodromic<R: Rng>(rng: &mut R) -> Element {
    let lam = lox_eigenvalue(rng, 1.2, 2.5);
    let h = conjugator(rng, Form::Siegel);
    loxodromic_diag(lam).conjugate_by(&h)
}

/// Normalized ideal tetrahedron lifts `(0,0,1), (1,0,0), (z1,z2,1), (1,w2,w3)`
/// with the null constraints.
pub fn normalized_tetrahedron<R: Rng>(rng: &mut R) -> [Vec3; 4] {
    let z2 = complex(rng, 1.5);
    let z1 = c(-z2.norm_sqr() / 2.0, rng.gen_range(-2.0..2.0));
    let w2 = complex(rng, 1.5);
    let w3 = c(-w2.norm_sqr() / 2.0, rng.gen_range(-2.0..2.0));
    [
        [ZERO, ZERO, ONE],
        [ONE, ZERO, ZERO],
        [z1, z2, ONE],
        [ONE, w2, w3],
    ]
}

pub fn real_angle<R: Rng>(rng: &mut R) -> f64 {
    rng.gen_range(0.0..2.0 * PI)
}

pub fn unit<R: Rng>(rng: &mut R) -> Cx {
    cis(rng.gen_range(-PI..PI))
}

pub fn real<R: Rng>(rng: &mut R, lo: f64, hi: f64) -> Cx {
    r(rng.gen_range(lo..hi))
}
