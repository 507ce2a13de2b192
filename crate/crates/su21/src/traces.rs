//! Trace machinery for pairs: the polynomials `S` and `P` of the trace
//! equation, trace coordinates, the τ-involution, eigenvalue/cross-ratio
//! identities and the product identity for punctured surfaces.

use num_complex::Complex64 as Cx;
use serde::{Deserialize, Serialize};

use crate::classify::{classify, resultant_f, IsometryClass};
use crate::error::{Error, Result};
use crate::invariants::{cross_ratio, quadruple_ratio};
use crate::linalg::{
    cube_roots_of_unity, cubic_derivative_roots, cubic_roots, kernel_basis, omega, r, vadd, vnorm,
    vscale, Element, Form, Heisenberg, Mat3, Vec3, I, ONE,
};

/// `(tr A, tr B, tr AB, tr A⁻¹B, tr A⁻¹, tr B⁻¹, tr B⁻¹A⁻¹, tr B⁻¹A)`.
///
/// The last entry is the trace of `(A⁻¹B)⁻¹`, so that for SU(2,1) pairs
/// `x_{i+4} = conj(x_i)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TraceVector8(pub [Cx; 8]);

impl TraceVector8 {
    pub fn of(a: &Element, b: &Element) -> Self {
        let (ai, bi) = (a.inv(), b.inv());
        TraceVector8([
            a.trace(),
            b.trace(),
            (*a * *b).trace(),
            (ai * *b).trace(),
            ai.trace(),
            bi.trace(),
            (bi * ai).trace(),
            (bi * *a).trace(),
        ])
    }

    /// The SU(2,1) vector determined by four traces.
    pub fn from_four(za: Cx, zb: Cx, zab: Cx, zaib: Cx) -> Self {
        TraceVector8([
            za,
            zb,
            zab,
            zaib,
            za.conj(),
            zb.conj(),
            zab.conj(),
            zaib.conj(),
        ])
    }

    /// `max |x_{i+4} − conj(x_i)|`.
    pub fn symmetry_residual(&self) -> f64 {
        (0..4)
            .map(|i| (self.0[i + 4] - self.0[i].conj()).norm())
            .fold(0.0, f64::max)
    }
}

/// Monomials of `P`: coefficient and exponents of `x1..x8`.
const P_TABLE: &[(i32, [u8; 8])] = &[
    (-1, [3, 1, 0, 0, 0, 1, 0, 0]),
    (1, [3, 0, 0, 0, 0, 0, 0, 0]),
    (1, [2, 2, 1, 0, 0, 0, 0, 0]),
    (1, [2, 1, 0, 0, 2, 1, 0, 0]),
    (-1, [2, 1, 0, 0, 1, 0, 1, 0]),
    (1, [2, 1, 0, 0, 0, 0, 0, 1]),
    (1, [2, 0, 1, 0, 0, 1, 0, 0]),
    (-1, [2, 0, 0, 1, 1, 1, 0, 0]),
    (1, [2, 0, 0, 1, 0, 0, 1, 0]),
    (1, [2, 0, 0, 0, 0, 2, 0, 1]),
    (-1, [1, 3, 0, 0, 1, 0, 0, 0]),
    (1, [1, 2, 0, 1, 0, 0, 0, 0]),
    (1, [1, 2, 0, 0, 1, 2, 0, 0]),
    (-1, [1, 2, 0, 0, 0, 1, 1, 0]),
    (-2, [1, 1, 2, 0, 0, 0, 0, 0]),
    (-1, [1, 1, 1, 1, 1, 0, 0, 0]),
    (-1, [1, 1, 1, 0, 0, 1, 0, 1]),
    (-1, [1, 1, 0, 1, 0, 2, 0, 0]),
    (-1, [1, 1, 0, 0, 2, 0, 0, 1]),
    (1, [1, 1, 0, 0, 1, 1, 0, 0]),
    (3, [1, 1, 0, 0, 0, 0, 1, 0]),
    (1, [1, 0, 1, 2, 0, 0, 0, 0]),
    (-1, [1, 0, 1, 0, 2, 1, 0, 0]),
    (1, [1, 0, 1, 0, 1, 0, 1, 0]),
    (-3, [1, 0, 1, 0, 0, 0, 0, 1]),
    (1, [1, 0, 0, 1, 1, 0, 0, 1]),
    (3, [1, 0, 0, 1, 0, 1, 0, 0]),
    (-1, [1, 0, 0, 0, 1, 3, 0, 0]),
    (-1, [1, 0, 0, 0, 1, 1, 1, 1]),
    (-6, [1, 0, 0, 0, 1, 0, 0, 0]),
    (1, [1, 0, 0, 0, 0, 2, 1, 0]),
    (-2, [1, 0, 0, 0, 0, 1, 0, 2]),
    (1, [1, 0, 0, 0, 0, 0, 2, 1]),
    (1, [0, 3, 0, 0, 0, 0, 0, 0]),
    (1, [0, 2, 1, 0, 1, 0, 0, 0]),
    (1, [0, 2, 0, 1, 2, 0, 0, 0]),
    (-1, [0, 2, 0, 0, 1, 1, 0, 1]),
    (1, [0, 2, 0, 0, 0, 0, 1, 1]),
    (-3, [0, 1, 1, 1, 0, 0, 0, 0]),
    (-1, [0, 1, 1, 0, 1, 2, 0, 0]),
    (1, [0, 1, 1, 0, 0, 1, 1, 0]),
    (1, [0, 1, 1, 0, 0, 0, 0, 2]),
    (-2, [0, 1, 0, 2, 1, 0, 0, 0]),
    (-1, [0, 1, 0, 1, 1, 1, 1, 0]),
    (1, [0, 1, 0, 1, 0, 1, 0, 1]),
    (1, [0, 1, 0, 1, 0, 0, 2, 0]),
    (-1, [0, 1, 0, 0, 3, 1, 0, 0]),
    (1, [0, 1, 0, 0, 2, 0, 1, 0]),
    (3, [0, 1, 0, 0, 1, 0, 0, 1]),
    (-6, [0, 1, 0, 0, 0, 1, 0, 0]),
    (1, [0, 0, 3, 0, 0, 0, 0, 0]),
    (1, [0, 0, 2, 1, 1, 0, 0, 0]),
    (1, [0, 0, 2, 0, 0, 1, 0, 1]),
    (1, [0, 0, 1, 1, 0, 2, 0, 0]),
    (1, [0, 0, 1, 1, 0, 0, 1, 1]),
    (1, [0, 0, 1, 0, 2, 0, 0, 1]),
    (3, [0, 0, 1, 0, 1, 1, 0, 0]),
    (-6, [0, 0, 1, 0, 0, 0, 1, 0]),
    (1, [0, 0, 0, 3, 0, 0, 0, 0]),
    (1, [0, 0, 0, 2, 0, 1, 1, 0]),
    (1, [0, 0, 0, 1, 2, 1, 0, 0]),
    (-3, [0, 0, 0, 1, 1, 0, 1, 0]),
    (-6, [0, 0, 0, 1, 0, 0, 0, 1]),
    (1, [0, 0, 0, 0, 3, 0, 0, 0]),
    (1, [0, 0, 0, 0, 2, 2, 1, 0]),
    (1, [0, 0, 0, 0, 1, 2, 0, 1]),
    (-2, [0, 0, 0, 0, 1, 1, 2, 0]),
    (1, [0, 0, 0, 0, 1, 0, 1, 2]),
    (1, [0, 0, 0, 0, 0, 3, 0, 0]),
    (-3, [0, 0, 0, 0, 0, 1, 1, 1]),
    (1, [0, 0, 0, 0, 0, 0, 3, 0]),
    (1, [0, 0, 0, 0, 0, 0, 0, 3]),
    (9, [0, 0, 0, 0, 0, 0, 0, 0]),
];

fn monomial(x: &[Cx; 8], e: &[u8; 8]) -> Cx {
    let mut acc = ONE;
    for (xi, &k) in x.iter().zip(e.iter()) {
        for _ in 0..k {
            acc *= xi;
        }
    }
    acc
}

/// `S(τ) = x1x5 + x2x6 + x3x7 + x4x8 − x1x2x7 − x5x6x3 − x5x2x8 − x1x6x4 + x1x2x5x6 − 3`.
pub fn s_poly(t: &TraceVector8) -> Cx {
    let [x1, x2, x3, x4, x5, x6, x7, x8] = t.0;
    x1 * x5 + x2 * x6 + x3 * x7 + x4 * x8
        - x1 * x2 * x7
        - x5 * x6 * x3
        - x5 * x2 * x8
        - x1 * x6 * x4
        + x1 * x2 * x5 * x6
        - 3.0
}

pub fn p_poly(t: &TraceVector8) -> Cx {
    P_TABLE
        .iter()
        .map(|(c, e)| monomial(&t.0, e) * (*c as f64))
        .sum()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TraceEquation {
    pub s: Cx,
    pub p: Cx,
}

impl TraceEquation {
    pub fn discriminant(&self) -> Cx {
        self.s * self.s - self.p * 4.0
    }

    pub fn residual(&self, x: Cx) -> f64 {
        (x * x - self.s * x + self.p).norm()
    }

    pub fn roots(&self) -> [Cx; 2] {
        let d = self.discriminant().sqrt();
        [(self.s + d) / 2.0, (self.s - d) / 2.0]
    }
}

pub fn trace_equation_coeffs(t: &TraceVector8) -> TraceEquation {
    TraceEquation {
        s: s_poly(t),
        p: p_poly(t),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct TraceCoordinates {
    pub tr_a: Cx,
    pub tr_b: Cx,
    pub tr_ab: Cx,
    pub tr_ainv_b: Cx,
    pub tr_comm: Cx,
    /// `|trComm² − s·trComm + p|`
    pub residual: f64,
}

impl TraceCoordinates {
    pub fn phi(&self) -> [Cx; 4] {
        [self.tr_a, self.tr_b, self.tr_ab, self.tr_ainv_b]
    }

    pub fn psi(&self) -> [Cx; 5] {
        [
            self.tr_a,
            self.tr_b,
            self.tr_ab,
            self.tr_ainv_b,
            self.tr_comm,
        ]
    }
}

pub fn trace_coordinates(a: &Element, b: &Element) -> TraceCoordinates {
    let tau = TraceVector8::of(a, b);
    let eq = trace_equation_coeffs(&tau);
    let comm = a.commutator(b).trace();
    TraceCoordinates {
        tr_a: tau.0[0],
        tr_b: tau.0[1],
        tr_ab: tau.0[2],
        tr_ainv_b: tau.0[3],
        tr_comm: comm,
        residual: eq.residual(comm),
    }
}

/// `A ↦ J Aᵀ J`; on pairs it fixes the four traces and conjugates `tr[A,B]`.
pub fn tau_conjugate(a: &Element) -> Element {
    let j = a.form.matrix();
    Element::new(j * a.m.transpose() * j, a.form)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FixedChoice {
    Attracting,
    Repelling,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FixedPoint {
    pub vector: Vec3,
    pub eigenvalue: Cx,
}

fn eigvec(m: &Mat3, lam: Cx) -> Vec3 {
    kernel_basis(&(*m - Mat3::identity().scale(lam)), 1)[0]
}

/// A fixed point of `g` in the closed ball with its eigenvalue. The choice
/// only matters for loxodromic elements.
pub fn fixed_point(g: &Element, choice: FixedChoice, tol: f64) -> Result<FixedPoint> {
    let m = &g.m;
    let class = classify(g, tol)?;
    let (tr, c2, det) = (m.trace(), m.principal_minor_sum(), m.det());
    match class {
        IsometryClass::Identity => Err(Error::NoCompatibleSelection),
        IsometryClass::Loxodromic { .. } => {
            let roots = cubic_roots(-tr, c2, -det);
            let cmp = |a: &&Cx, b: &&Cx| a.norm().total_cmp(&b.norm());
            let lam = match choice {
                FixedChoice::Attracting => *roots.iter().max_by(cmp).unwrap(),
                FixedChoice::Repelling => *roots.iter().min_by(cmp).unwrap(),
            };
            Ok(FixedPoint {
                vector: eigvec(m, lam),
                eigenvalue: lam,
            })
        }
        IsometryClass::RegularElliptic { .. } => {
            let roots = cubic_roots(-tr, c2, -det);
            let best = roots
                .iter()
                .map(|&l| {
                    let v = eigvec(m, l);
                    (g.form.norm2(&v) / vnorm(&v).powi(2), l, v)
                })
                .min_by(|a, b| a.0.total_cmp(&b.0))
                .unwrap();
            Ok(FixedPoint {
                vector: best.2,
                eigenvalue: best.1,
            })
        }
        IsometryClass::UnipotentParabolic { .. } => {
            let w = *cube_roots_of_unity()
                .iter()
                .min_by(|a, b| (tr - **a * 3.0).norm().total_cmp(&(tr - **b * 3.0).norm()))
                .unwrap();
            Ok(FixedPoint {
                vector: eigvec(m, w),
                eigenvalue: w,
            })
        }
        IsometryClass::ScrewParabolic { .. } => {
            let mu = repeated_eigenvalue(tr, c2);
            Ok(FixedPoint {
                vector: eigvec(m, mu),
                eigenvalue: mu,
            })
        }
        IsometryClass::ComplexReflectionPoint { .. } => {
            let mu = repeated_eigenvalue(tr, c2);
            let sigma = (mu * mu).inv();
            Ok(FixedPoint {
                vector: eigvec(m, sigma),
                eigenvalue: sigma,
            })
        }
        IsometryClass::ComplexReflectionLine { .. } => {
            let mu = repeated_eigenvalue(tr, c2);
            let basis = kernel_basis(&(*m - Mat3::identity().scale(mu)), 2);
            // a negative vector in the (1,1) eigenspace
            let cands = [
                basis[0],
                basis[1],
                vadd(&basis[0], &basis[1]),
                vadd(&basis[0], &vscale(&basis[1], -ONE)),
                vadd(&basis[0], &vscale(&basis[1], I)),
                vadd(&basis[0], &vscale(&basis[1], -I)),
            ];
            let v = cands
                .iter()
                .min_by(|a, b| {
                    (g.form.norm2(a) / vnorm(a).powi(2))
                        .total_cmp(&(g.form.norm2(b) / vnorm(b).powi(2)))
                })
                .unwrap();
            Ok(FixedPoint {
                vector: *v,
                eigenvalue: mu,
            })
        }
    }
}

fn repeated_eigenvalue(tr: Cx, c2: Cx) -> Cx {
    let res = |x: Cx| (((x - tr) * x + c2) * x - ONE).norm();
    let crit = cubic_derivative_roots(tr, c2);
    if res(crit[0]) <= res(crit[1]) {
        crit[0]
    } else {
        crit[1]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct IdentityCheck {
    pub lhs: Cx,
    pub rhs: Cx,
    pub residual: f64,
}

/// Fixed points `p_A`, `p_B`, `p_AB`, `p_BA = B p_AB` with their eigenvalues.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CompatibleTuple {
    pub a: FixedPoint,
    pub b: FixedPoint,
    pub ab: FixedPoint,
    pub ba: Vec3,
}

pub fn compatible_tuple(
    a: &Element,
    b: &Element,
    choice: [FixedChoice; 3],
    tol: f64,
) -> Result<CompatibleTuple> {
    let fa = fixed_point(a, choice[0], tol)?;
    let fb = fixed_point(b, choice[1], tol)?;
    let fab = fixed_point(&(*a * *b), choice[2], tol)?;
    let ba = b.apply(&fab.vector);
    Ok(CompatibleTuple {
        a: fa,
        b: fb,
        ab: fab,
        ba,
    })
}

/// `𝕏(p_A, p_B, p_AB, p_BA)` against `1/(λ̄_A λ̄_B λ_AB)`.
pub fn crossratio_from_eigenvalues(
    a: &Element,
    b: &Element,
    choice: [FixedChoice; 3],
    tol: f64,
) -> Result<IdentityCheck> {
    let t = compatible_tuple(a, b, choice, tol)?;
    let lhs = cross_ratio(&t.a.vector, &t.b.vector, &t.ab.vector, &t.ba, a.form)
        .map_err(|_| Error::NoCompatibleSelection)?;
    let rhs = (t.a.eigenvalue.conj() * t.b.eigenvalue.conj() * t.ab.eigenvalue).inv();
    Ok(IdentityCheck {
        lhs,
        rhs,
        residual: (lhs - rhs).norm() / (1.0 + rhs.norm()),
    })
}

/// A pair of pants: `A = ρ(a)`, `B = ρ(b)` and implicitly `C = (AB)⁻¹`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PantsDatum {
    pub a: Element,
    pub b: Element,
    pub choice: [FixedChoice; 3],
}

impl PantsDatum {
    pub fn new(a: Element, b: Element) -> Self {
        PantsDatum {
            a,
            b,
            choice: [FixedChoice::Attracting; 3],
        }
    }

    pub fn c(&self) -> Element {
        (self.a * self.b).inv()
    }

    /// Peripheral element for slot 0, 1, 2 (`A`, `B`, `C`).
    pub fn peripheral(&self, slot: usize) -> Element {
        match slot {
            0 => self.a,
            1 => self.b,
            _ => self.c(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct QCheck {
    #[serde(rename = "Q")]
    pub q: Cx,
    pub spin: Cx,
    pub residual: f64,
}

/// `Q(p_A, p_B, p_C, p_{BCB⁻¹})` against `λ_Aλ_Bλ_C / conj(λ_Aλ_Bλ_C)`.
pub fn quadruple_ratio_eigenvalue_check(pants: &PantsDatum, tol: f64) -> Result<QCheck> {
    let a = &pants.a;
    let b = &pants.b;
    let cc = pants.c();
    let fa = fixed_point(a, pants.choice[0], tol)?;
    let fb = fixed_point(b, pants.choice[1], tol)?;
    let fc = fixed_point(&cc, pants.choice[2], tol)?;
    let pbc = b.apply(&fc.vector);
    // With the conjugate-linear second slot, `𝕏(p1,p2,p3,p4)/conj(𝕏)` is the
    // product formula read in the order `(p1,p4,p2,p3)`.
    let q = quadruple_ratio(&fa.vector, &pbc, &fb.vector, &fc.vector, a.form)
        .map_err(|_| Error::NoCompatibleSelection)?;
    let prod = fa.eigenvalue * fb.eigenvalue * fc.eigenvalue;
    let spin = prod / prod.conj();
    Ok(QCheck {
        q,
        spin,
        residual: (q - spin).norm(),
    })
}

/// How pants are glued: `(i, slot_i, j, slot_j)` identifies a peripheral
/// curve of pant `i` with one of pant `j` (condition `ρᵢ(γ) = ρⱼ(γ)⁻¹`).
/// A handle glues two curves of the same pant (`i == j`); those must be
/// conjugate to each other's inverse.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Gluing {
    pub pairs: Vec<(usize, usize, usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SurfaceCheck {
    pub lhs: Cx,
    pub rhs: Cx,
    pub residual: f64,
    /// Eigenvalues at the chosen fixed points of the unglued peripheral curves.
    pub peripheral_eigenvalues: Vec<Cx>,
}

/// Product of quadruple ratios against the product of `λ/λ̄` over punctures.
pub fn surface_identity_check(
    pants: &[PantsDatum],
    gluing: &Gluing,
    tol: f64,
) -> Result<SurfaceCheck> {
    let mut glued = vec![[false; 3]; pants.len()];
    for &(i, si, j, sj) in &gluing.pairs {
        if i >= pants.len() || j >= pants.len() || si > 2 || sj > 2 {
            return Err(Error::InvalidInput(
                "gluing refers to a missing curve".into(),
            ));
        }
        let gi = pants[i].peripheral(si);
        let gj = pants[j].peripheral(sj);
        let res = if i == j {
            // handle: conjugate to the inverse, tested on traces
            (gi.trace() - gj.inv().trace()).norm()
        } else {
            (gi * gj).central_distance(&Element::identity(gi.form)).0
        };
        if res > 1e-8 * (1.0 + gi.m.norm_inf()) {
            return Err(Error::GluingViolation(res));
        }
        glued[i][si] = true;
        glued[j][sj] = true;
    }
    let mut lhs = ONE;
    for p in pants {
        lhs *= quadruple_ratio_eigenvalue_check(p, tol)?.q;
    }
    let mut rhs = ONE;
    let mut eigs = Vec::new();
    for (k, p) in pants.iter().enumerate() {
        for slot in 0..3 {
            if glued[k][slot] {
                continue;
            }
            let fp = fixed_point(&p.peripheral(slot), p.choice[slot], tol)?;
            eigs.push(fp.eigenvalue);
            rhs *= fp.eigenvalue / fp.eigenvalue.conj();
        }
    }
    Ok(SurfaceCheck {
        lhs,
        rhs,
        residual: (lhs - rhs).norm(),
        peripheral_eigenvalues: eigs,
    })
}

/// Second pant glued to the third curve of `first`: `A₂ = a`, `B₂ = A₂⁻¹C₁`,
/// so `C₂ = C₁⁻¹`. The fixed point of `C₂` is chosen opposite to the one of
/// `C₁`, which makes it the same boundary point.
pub fn glue_on_third(first: &PantsDatum, a: Element) -> PantsDatum {
    let b = a.inv() * first.c();
    let flip = match first.choice[2] {
        FixedChoice::Attracting => FixedChoice::Repelling,
        FixedChoice::Repelling => FixedChoice::Attracting,
    };
    PantsDatum {
        a,
        b,
        choice: [FixedChoice::Attracting, FixedChoice::Attracting, flip],
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct UnipotentProduct {
    /// `(1, −(51+|w|²), 657+2Re(w³)+21|w|²)`
    pub quadratic: (f64, f64, f64),
    /// `|w|⁴ − 8Re(w³) + 18|w|² − 27` with `w = z − 9`.
    pub discriminant: f64,
    /// `w` lies in the closed deltoid region.
    pub in_translated_deltoid: bool,
    /// Class tag of `A⁻¹B` read from `f(z)`.
    pub verdict: &'static str,
    /// Mismatch against `S`, `P` evaluated on `(3,3,3ω,z,3,3,3ω̄,z̄)`.
    pub cross_check: f64,
}

/// Trace equation of a pair of unipotent maps `A`, `B` with `AB` unipotent
/// (up to the centre, `tr AB = 3ω` with `ω` primitive), as a function of
/// `z = tr A⁻¹B`.
pub fn unipotent_pair_product_analysis(z: Cx) -> UnipotentProduct {
    let w = z - 9.0;
    let n = w.norm_sqr();
    let w3 = (w * w * w).re;
    let b = -(51.0 + n);
    let cc = 657.0 + 2.0 * w3 + 21.0 * n;
    let om = omega();
    let tau = TraceVector8([
        r(3.0),
        r(3.0),
        om * 3.0,
        z,
        r(3.0),
        r(3.0),
        om.conj() * 3.0,
        z.conj(),
    ]);
    let eq = trace_equation_coeffs(&tau);
    let cross_check =
        ((eq.s + b).norm() / (1.0 + b.abs())).max((eq.p - cc).norm() / (1.0 + cc.abs()));
    let disc = resultant_f(w);
    let verdict = match crate::classify::deltoid_verdict(z).region {
        crate::classify::Region::Outside => "Loxodromic",
        crate::classify::Region::Inside => "RegularElliptic",
        crate::classify::Region::OnBoundary => "Boundary",
    };
    UnipotentProduct {
        quadratic: (1.0, b, cc),
        discriminant: disc,
        in_translated_deltoid: disc <= 1e-9 * (1.0 + n * n),
        verdict,
        cross_check,
    }
}

/// Unipotent `A = T_[1,t]` and `B = J T_[w,s] J` with `tr AB = 3ω`, `ω`
/// primitive. Real solutions `w` exist for `t ≲ −0.95`.
pub fn unipotent_pair(t: f64) -> Result<(Element, Element)> {
    let om = omega();
    let a = 1.0 + t * t;
    let c0 = 4.5 + 3.0 * t * om.im;
    let disc = 16.0 - 4.0 * a * c0;
    if disc < 0.0 {
        return Err(Error::OutOfRange(format!("no unipotent pair at t = {t}")));
    }
    let w = (4.0 + disc.sqrt()) / (2.0 * a);
    let s = -t * w * w - 3.0 * om.im;
    let j = Form::Siegel.matrix();
    let ta = Heisenberg::new(r(1.0), t).translation();
    let tb = Heisenberg::new(r(w), s).translation();
    Ok((ta, Element::new(j * tb.m * j, Form::Siegel)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::c;
    use crate::modular::{modular_rep, Family};
    use crate::sample;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn all_threes() {
        let t = TraceVector8([r(3.0); 8]);
        let eq = trace_equation_coeffs(&t);
        assert_eq!(eq.s, r(6.0));
        assert_eq!(eq.p, r(9.0));
    }

    #[test]
    fn modular_specialization() {
        for k in 0..20 {
            let u = Cx::from_polar(1.0, 0.3 * k as f64);
            let trp = u * 2.0 + (u * u).inv();
            let t = TraceVector8::from_four(r(-1.0), trp, r(0.0), r(0.0));
            let eq = trace_equation_coeffs(&t);
            let s = (u * u * u).inv() * 4.0 * (u * u * u + 1.0).powi(2);
            assert!((eq.s - s).norm() < 1e-12);
            assert!((eq.p - eq.s * eq.s / 4.0).norm() < 1e-11);
        }
    }

    #[test]
    fn identity_pair() {
        let id = Element::identity(Form::Siegel);
        let tc = trace_coordinates(&id, &id);
        assert!(tc.psi().iter().all(|z| (*z - r(3.0)).norm() < 1e-15));
    }

    #[test]
    fn unipotent_w_zero() {
        let u = unipotent_pair_product_analysis(r(9.0));
        assert_eq!(u.quadratic, (1.0, -51.0, 657.0));
        assert_eq!(u.discriminant, -27.0);
        assert!(51.0f64 * 51.0 - 4.0 * 657.0 == -27.0);
        assert!(u.cross_check < 1e-12);
        let cusp = unipotent_pair_product_analysis(r(12.0));
        assert_eq!(cusp.discriminant, 0.0);
        let off = unipotent_pair_product_analysis(c(9.7, -0.4));
        assert!(off.cross_check < 1e-12);
    }

    #[test]
    fn unipotent_pairs() {
        for k in 0..20 {
            let t = -1.1 - 1.9 * k as f64 / 19.0;
            let (a, b) = unipotent_pair(t).unwrap();
            assert!((a.trace() - r(3.0)).norm() < 1e-12 && (b.trace() - r(3.0)).norm() < 1e-12);
            assert!(((a * b).trace() - omega() * 3.0).norm() < 1e-12);
            let z = (a.inv() * b).trace();
            let u = unipotent_pair_product_analysis(z);
            assert!(u.cross_check < 1e-8);
            assert!(u.in_translated_deltoid);
            assert_eq!(classify(&(a.inv() * b), 1e-9).unwrap().tag(), "Loxodromic");
        }
    }

    #[test]
    fn eigenvalue_cross_ratio() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let a = sample::loxodromic(&mut rng);
            let b = sample::loxodromic(&mut rng);
            let chk =
                crossratio_from_eigenvalues(&a, &b, [FixedChoice::Attracting; 3], 1e-9).unwrap();
            assert!(chk.residual < 1e-8, "{chk:?}");
            let q = quadruple_ratio_eigenvalue_check(&PantsDatum::new(a, b), 1e-9).unwrap();
            assert!(q.residual < 1e-8, "{q:?}");
            assert!((q.q.norm() - 1.0).abs() < 1e-8);
        }
    }

    #[test]
    fn tau_involution() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..20 {
            let a = sample::element(&mut rng, Form::Siegel);
            let b = sample::element(&mut rng, Form::Siegel);
            let (at, bt) = (tau_conjugate(&a), tau_conjugate(&b));
            let t0 = trace_coordinates(&a, &b);
            let t1 = trace_coordinates(&at, &bt);
            for (x, y) in t0.phi().iter().zip(t1.phi().iter()) {
                assert!((x - y).norm() < 1e-9 * (1.0 + x.norm()));
            }
            assert!((t1.tr_comm - t0.tr_comm.conj()).norm() < 1e-9 * (1.0 + t0.tr_comm.norm()));
            assert!(tau_conjugate(&at).m.dist(&a.m) < 1e-12 * (1.0 + a.m.norm_inf()));
        }
    }

    #[test]
    fn modular_pair_coordinates() {
        let rep = modular_rep(Family::Point, 0.0).unwrap();
        let tc = trace_coordinates(&rep.e, &rep.p);
        let want = [r(-1.0), r(3.0), r(0.0), r(0.0), r(8.0)];
        for (x, y) in tc.psi().iter().zip(want.iter()) {
            assert!((x - y).norm() < 1e-12);
        }
    }

    fn modular_pant(alpha: f64) -> PantsDatum {
        let rep = modular_rep(Family::Point, alpha).unwrap();
        PantsDatum::new(rep.p, rep.e * rep.p.inv() * rep.e)
    }

    #[test]
    fn modular_pants_q() {
        for alpha in [-0.4, 0.1, 0.3] {
            let rep = modular_rep(Family::Point, alpha).unwrap();
            let cc = rep.c();
            let pd = PantsDatum::new(rep.p, cc * rep.p * cc.inv());
            let q = quadruple_ratio_eigenvalue_check(&pd, 1e-9).unwrap();
            assert!(q.residual < 1e-10, "{q:?}");
            let u4 = rep.u.powi(4);
            assert!((q.q - u4).norm() < 1e-10, "{q:?} {u4}");
        }
    }

    #[test]
    fn surface_identity() {
        // one pant
        let p1 = modular_pant(0.2);
        let one = surface_identity_check(&[p1.clone()], &Gluing { pairs: vec![] }, 1e-9).unwrap();
        let q = quadruple_ratio_eigenvalue_check(&p1, 1e-9).unwrap();
        assert!(one.residual < 1e-10 && (one.lhs - q.q).norm() < 1e-15);

        // two modular pants sharing the loxodromic curve
        let h = Heisenberg::new(c(0.3, -0.2), 0.5).translation();
        let second = modular_rep(Family::Point, -0.35)
            .unwrap()
            .p
            .conjugate_by(&h);
        let p2 = glue_on_third(&p1, second);
        assert!(classify(&p1.c(), 1e-9).unwrap().tag() == "Loxodromic");
        let gl = Gluing {
            pairs: vec![(0, 2, 1, 2)],
        };
        let two = surface_identity_check(&[p1.clone(), p2.clone()], &gl, 1e-9).unwrap();
        assert_eq!(two.peripheral_eigenvalues.len(), 4);
        assert!(two.residual < 1e-8, "{two:?}");

        // R-Fuchsian: real matrices throughout
        let f1 = modular_pant(0.0);
        let hr = Heisenberg::new(r(0.7), 0.0).translation();
        let f2 = glue_on_third(
            &f1,
            modular_rep(Family::Point, 0.0).unwrap().p.conjugate_by(&hr),
        );
        let fu = surface_identity_check(&[f1, f2], &gl, 1e-9).unwrap();
        assert!((fu.lhs - ONE).norm() < 1e-10 && (fu.rhs - ONE).norm() < 1e-10);

        // a curve that is not inverted
        let bad = Gluing {
            pairs: vec![(0, 0, 1, 2)],
        };
        let e = surface_identity_check(&[p1, p2], &bad, 1e-9).unwrap_err();
        assert_eq!(e.tag(), "GluingViolation");
    }
}
