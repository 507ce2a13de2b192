//! 3×3 complex linear algebra, the two standard Hermitian forms of signature
//! (2,1), boundary (Heisenberg) coordinates and a closed-form eigensolver.

use std::f64::consts::{FRAC_1_SQRT_2, PI, SQRT_2};
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64 as Cx;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Vec3 = [Cx; 3];

pub const ZERO: Cx = Cx::new(0.0, 0.0);
pub const ONE: Cx = Cx::new(1.0, 0.0);
pub const I: Cx = Cx::new(0.0, 1.0);

pub fn c(re: f64, im: f64) -> Cx {
    Cx::new(re, im)
}

pub fn r(re: f64) -> Cx {
    Cx::new(re, 0.0)
}

/// Primitive cube root of unity `e^{2πi/3}`.
pub fn omega() -> Cx {
    Cx::from_polar(1.0, 2.0 * PI / 3.0)
}

/// The three cube roots of unity, starting with 1.
pub fn cube_roots_of_unity() -> [Cx; 3] {
    let w = omega();
    [ONE, w, w * w]
}

pub fn vnorm(v: &Vec3) -> f64 {
    (v[0].norm_sqr() + v[1].norm_sqr() + v[2].norm_sqr()).sqrt()
}

pub fn vscale(v: &Vec3, s: Cx) -> Vec3 {
    [v[0] * s, v[1] * s, v[2] * s]
}

pub fn vsub(a: &Vec3, b: &Vec3) -> Vec3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

pub fn vadd(a: &Vec3, b: &Vec3) -> Vec3 {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

/// Plain (bilinear) cross product: the result is annihilated by both
/// arguments under `x·y = Σ xᵢyᵢ`.
pub fn cross(a: &Vec3, b: &Vec3) -> Vec3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn finite(z: Cx) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Mat3(pub [[Cx; 3]; 3]);

impl Mat3 {
    pub fn zero() -> Self {
        Mat3([[ZERO; 3]; 3])
    }

    pub fn identity() -> Self {
        Mat3::diag(ONE, ONE, ONE)
    }

    pub fn diag(a: Cx, b: Cx, d: Cx) -> Self {
        Mat3([[a, ZERO, ZERO], [ZERO, b, ZERO], [ZERO, ZERO, d]])
    }

    pub fn from_rows(rows: [[Cx; 3]; 3]) -> Self {
        Mat3(rows)
    }

    pub fn from_real(rows: [[f64; 3]; 3]) -> Self {
        let mut m = Mat3::zero();
        for i in 0..3 {
            for j in 0..3 {
                m.0[i][j] = r(rows[i][j]);
            }
        }
        m
    }

    pub fn from_columns(a: &Vec3, b: &Vec3, d: &Vec3) -> Self {
        let mut m = Mat3::zero();
        for i in 0..3 {
            m.0[i][0] = a[i];
            m.0[i][1] = b[i];
            m.0[i][2] = d[i];
        }
        m
    }

    pub fn column(&self, j: usize) -> Vec3 {
        [self.0[0][j], self.0[1][j], self.0[2][j]]
    }

    pub fn trace(&self) -> Cx {
        self.0[0][0] + self.0[1][1] + self.0[2][2]
    }

    pub fn det(&self) -> Cx {
        let m = &self.0;
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    }

    /// Sum of the principal 2×2 minors (second coefficient of the
    /// characteristic polynomial).
    pub fn principal_minor_sum(&self) -> Cx {
        let m = &self.0;
        (m[0][0] * m[1][1] - m[0][1] * m[1][0])
            + (m[0][0] * m[2][2] - m[0][2] * m[2][0])
            + (m[1][1] * m[2][2] - m[1][2] * m[2][1])
    }

    pub fn adjugate(&self) -> Self {
        let m = &self.0;
        let mut a = Mat3::zero();
        for i in 0..3 {
            for j in 0..3 {
                let (r0, r1) = ((j + 1) % 3, (j + 2) % 3);
                let (c0, c1) = ((i + 1) % 3, (i + 2) % 3);
                a.0[i][j] = m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0];
            }
        }
        a
    }

    /// General inverse through the adjugate. Returns `None` for a singular matrix.
    pub fn inverse(&self) -> Option<Self> {
        let d = self.det();
        if d.norm() == 0.0 || !finite(d) {
            return None;
        }
        Some(self.adjugate().scale(d.inv()))
    }

    pub fn transpose(&self) -> Self {
        let mut t = Mat3::zero();
        for i in 0..3 {
            for j in 0..3 {
                t.0[i][j] = self.0[j][i];
            }
        }
        t
    }

    pub fn conj(&self) -> Self {
        let mut t = *self;
        for row in t.0.iter_mut() {
            for z in row.iter_mut() {
                *z = z.conj();
            }
        }
        t
    }

    pub fn adjoint(&self) -> Self {
        self.transpose().conj()
    }

    pub fn scale(&self, s: Cx) -> Self {
        let mut t = *self;
        for row in t.0.iter_mut() {
            for z in row.iter_mut() {
                *z *= s;
            }
        }
        t
    }

    pub fn apply(&self, v: &Vec3) -> Vec3 {
        let m = &self.0;
        [
            m[0][0] * v[0] + m[0][1] * v[1] + m[0][2] * v[2],
            m[1][0] * v[0] + m[1][1] * v[1] + m[1][2] * v[2],
            m[2][0] * v[0] + m[2][1] * v[1] + m[2][2] * v[2],
        ]
    }

    /// Maximum absolute row sum.
    pub fn norm_inf(&self) -> f64 {
        self.0
            .iter()
            .map(|row| row.iter().map(|z| z.norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.0
            .iter()
            .flat_map(|row| row.iter().map(|z| z.norm()))
            .fold(0.0, f64::max)
    }

    pub fn dist(&self, other: &Mat3) -> f64 {
        (*self - *other).max_abs()
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Mat3::identity();
        for _ in 0..n {
            acc = acc * *self;
        }
        acc
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|row| row.iter().all(|z| finite(*z)))
    }

    /// Largest absolute 2×2 minor.
    pub fn max_minor(&self) -> f64 {
        let m = &self.0;
        let mut best: f64 = 0.0;
        for r0 in 0..3 {
            for r1 in r0 + 1..3 {
                for c0 in 0..3 {
                    for c1 in c0 + 1..3 {
                        let d = m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0];
                        best = best.max(d.norm());
                    }
                }
            }
        }
        best
    }
}

impl Add for Mat3 {
    type Output = Mat3;
    fn add(self, o: Mat3) -> Mat3 {
        let mut t = self;
        for i in 0..3 {
            for j in 0..3 {
                t.0[i][j] += o.0[i][j];
            }
        }
        t
    }
}

impl Sub for Mat3 {
    type Output = Mat3;
    fn sub(self, o: Mat3) -> Mat3 {
        let mut t = self;
        for i in 0..3 {
            for j in 0..3 {
                t.0[i][j] -= o.0[i][j];
            }
        }
        t
    }
}

impl Neg for Mat3 {
    type Output = Mat3;
    fn neg(self) -> Mat3 {
        self.scale(-ONE)
    }
}

impl Mul for Mat3 {
    type Output = Mat3;
    fn mul(self, o: Mat3) -> Mat3 {
        let mut t = Mat3::zero();
        for i in 0..3 {
            for j in 0..3 {
                t.0[i][j] =
                    self.0[i][0] * o.0[0][j] + self.0[i][1] * o.0[1][j] + self.0[i][2] * o.0[2][j];
            }
        }
        t
    }
}

/// Which of the two standard forms a matrix or vector refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Form {
    /// `J₁ = diag(1, 1, −1)`.
    Ball,
    /// `J₂`, the antidiagonal matrix with ones.
    Siegel,
}

impl Form {
    pub fn matrix(self) -> Mat3 {
        match self {
            Form::Ball => Mat3::from_real([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, -1.0]]),
            Form::Siegel => Mat3::from_real([[0.0, 0.0, 1.0], [0.0, 1.0, 0.0], [1.0, 0.0, 0.0]]),
        }
    }

    pub fn other(self) -> Form {
        match self {
            Form::Ball => Form::Siegel,
            Form::Siegel => Form::Ball,
        }
    }

    /// `⟨v,w⟩ = w̄ᵀJv`, linear in `v` and conjugate-linear in `w`.
    pub fn inner(self, v: &Vec3, w: &Vec3) -> Cx {
        match self {
            Form::Ball => v[0] * w[0].conj() + v[1] * w[1].conj() - v[2] * w[2].conj(),
            Form::Siegel => v[0] * w[2].conj() + v[1] * w[1].conj() + v[2] * w[0].conj(),
        }
    }

    /// `⟨v,v⟩`, always real.
    pub fn norm2(self, v: &Vec3) -> f64 {
        self.inner(v, v).re
    }

    /// The row vector `v̄ᵀJ`, so that `⟨x,v⟩ = dual(v)·x`.
    pub fn dual(self, v: &Vec3) -> Vec3 {
        match self {
            Form::Ball => [v[0].conj(), v[1].conj(), -v[2].conj()],
            Form::Siegel => [v[2].conj(), v[1].conj(), v[0].conj()],
        }
    }

    /// The rank-one matrix `x ↦ ⟨x,b⟩ a`.
    pub fn outer(self, a: &Vec3, b: &Vec3) -> Mat3 {
        let d = self.dual(b);
        let mut m = Mat3::zero();
        for i in 0..3 {
            for j in 0..3 {
                m.0[i][j] = a[i] * d[j];
            }
        }
        m
    }
}

pub fn hermitian_inner(v: &Vec3, w: &Vec3, form: Form) -> Cx {
    form.inner(v, w)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PointType {
    Negative,
    Null,
    Positive,
}

/// A point of `ℂP²` together with the form it is measured against.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub rep: Vec3,
    pub form: Form,
    pub kind: PointType,
}

impl Point {
    /// Canonically scaled point. `tol` decides when `⟨v,v⟩` counts as zero,
    /// relative to the squared Euclidean norm of the scaled vector.
    pub fn new(v: Vec3, form: Form, tol: f64) -> Result<Point> {
        if !v.iter().all(|z| finite(*z)) {
            return Err(Error::InvalidInput("non-finite vector".into()));
        }
        let k = (0..3)
            .max_by(|&a, &b| v[a].norm().total_cmp(&v[b].norm()))
            .unwrap();
        if v[k].norm() == 0.0 {
            return Err(Error::InvalidInput("zero vector".into()));
        }
        let rep = vscale(&v, v[k].inv());
        let n = form.norm2(&rep) / (vnorm(&rep) * vnorm(&rep));
        let kind = if n.abs() <= tol {
            PointType::Null
        } else if n < 0.0 {
            PointType::Negative
        } else {
            PointType::Positive
        };
        Ok(Point { rep, form, kind })
    }

    /// Wraps a vector without rescaling; `kind` is computed with tolerance 1e-9.
    pub fn raw(v: Vec3, form: Form) -> Point {
        let s = vnorm(&v).powi(2).max(f64::MIN_POSITIVE);
        let n = form.norm2(&v) / s;
        let kind = if n.abs() <= 1e-9 {
            PointType::Null
        } else if n < 0.0 {
            PointType::Negative
        } else {
            PointType::Positive
        };
        Point { rep: v, form, kind }
    }

    pub fn inner(&self, other: &Point) -> Cx {
        self.form.inner(&self.rep, &other.rep)
    }

    /// Same projective point (up to a complex scalar), within `tol`.
    pub fn same_as(&self, other: &Point, tol: f64) -> bool {
        let cr = cross(&self.rep, &other.rep);
        vnorm(&cr) <= tol * vnorm(&self.rep) * vnorm(&other.rep)
    }
}

/// A matrix in SU(2,1) for the indicated form (membership is not enforced;
/// see [`verify_su21`]).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Element {
    pub m: Mat3,
    pub form: Form,
}

impl Element {
    pub fn new(m: Mat3, form: Form) -> Element {
        Element { m, form }
    }

    pub fn identity(form: Form) -> Element {
        Element::new(Mat3::identity(), form)
    }

    /// Builds an element and rejects it unless it lies in SU(2,1) within `tol`.
    pub fn checked(m: Mat3, form: Form, tol: f64) -> Result<Element> {
        if !m.is_finite() {
            return Err(Error::InvalidInput("non-finite matrix".into()));
        }
        let (ok, res) = verify_su21(&m, form, tol);
        if !ok {
            return Err(Error::InvalidInput(format!(
                "not in SU(2,1): residual {res:e}"
            )));
        }
        Ok(Element::new(m, form))
    }

    pub fn trace(&self) -> Cx {
        self.m.trace()
    }

    /// Inverse using `M⁻¹ = J M* J`, exact for genuine group elements.
    pub fn inv(&self) -> Element {
        let j = self.form.matrix();
        Element::new(j * self.m.adjoint() * j, self.form)
    }

    pub fn apply(&self, v: &Vec3) -> Vec3 {
        self.m.apply(v)
    }

    pub fn apply_point(&self, p: &Point) -> Point {
        Point::raw(self.m.apply(&p.rep), p.form)
    }

    pub fn conjugate_by(&self, h: &Element) -> Element {
        *h * *self * h.inv()
    }

    pub fn commutator(&self, other: &Element) -> Element {
        *self * *other * self.inv() * other.inv()
    }

    pub fn pow(&self, n: i32) -> Element {
        let base = if n < 0 { self.inv() } else { *self };
        Element::new(base.m.pow(n.unsigned_abs()), self.form)
    }

    /// Same element of PU(2,1) within `tol`: minimum over the centre.
    pub fn central_distance(&self, other: &Element) -> (f64, Cx) {
        cube_roots_of_unity()
            .iter()
            .map(|w| (self.m.dist(&other.m.scale(*w)), *w))
            .min_by(|a, b| a.0.total_cmp(&b.0))
            .unwrap()
    }

    pub fn to_form(&self, form: Form) -> Element {
        if form == self.form {
            *self
        } else {
            cayley_transfer(self)
        }
    }
}

impl Mul for Element {
    type Output = Element;
    fn mul(self, o: Element) -> Element {
        debug_assert_eq!(self.form, o.form);
        Element::new(self.m * o.m, self.form)
    }
}

/// Returns `(ok, residual)` with `residual = max(‖M*JM − J‖∞, |det M − 1|)`.
pub fn verify_su21(m: &Mat3, form: Form, tol: f64) -> (bool, f64) {
    let j = form.matrix();
    let a = (m.adjoint() * j * *m - j).norm_inf();
    let d = (m.det() - ONE).norm();
    let res = a.max(d);
    (res <= tol, res)
}

/// The Cayley matrix, an involution exchanging `J₁` and `J₂`.
pub fn cayley_matrix() -> Mat3 {
    let s = FRAC_1_SQRT_2;
    Mat3::from_real([[s, 0.0, s], [0.0, 1.0, 0.0], [s, 0.0, -s]])
}

/// `g ↦ CgC⁻¹` with the form toggled.
pub fn cayley_transfer(g: &Element) -> Element {
    let cm = cayley_matrix();
    Element::new(cm * g.m * cm, g.form.other())
}

pub fn cayley_vector(v: &Vec3) -> Vec3 {
    cayley_matrix().apply(v)
}

/// A boundary point `[z,t]` of the Siegel domain.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Heisenberg {
    pub z: Cx,
    pub t: f64,
}

impl Heisenberg {
    pub fn new(z: Cx, t: f64) -> Self {
        Heisenberg { z, t }
    }

    pub fn compose(&self, b: &Heisenberg) -> Heisenberg {
        heisenberg_compose(self, b)
    }

    pub fn inverse(&self) -> Heisenberg {
        Heisenberg::new(-self.z, -self.t)
    }

    /// Lift `(−|z|²+it, √2 z, 1)`.
    pub fn lift(&self) -> Vec3 {
        [r(-self.z.norm_sqr()) + I * self.t, self.z * SQRT_2, ONE]
    }

    /// The Heisenberg translation `T_[z,t]` in Siegel form.
    pub fn translation(&self) -> Element {
        let z = self.z;
        Element::new(
            Mat3([
                [ONE, -z.conj() * SQRT_2, r(-z.norm_sqr()) + I * self.t],
                [ZERO, ONE, z * SQRT_2],
                [ZERO, ZERO, ONE],
            ]),
            Form::Siegel,
        )
    }

    /// Reads `[z,t]` back from a null Siegel vector with nonzero last entry.
    pub fn from_vector(v: &Vec3) -> Option<Heisenberg> {
        if v[2].norm() == 0.0 {
            return None;
        }
        let w = vscale(v, v[2].inv());
        Some(Heisenberg::new(w[1] / SQRT_2, w[0].im))
    }
}

pub fn heisenberg_compose(a: &Heisenberg, b: &Heisenberg) -> Heisenberg {
    Heisenberg::new(a.z + b.z, a.t + b.t + 2.0 * (a.z * b.z.conj()).im)
}

/// `m_{z,t,u} = (−|z|²−u+it, √2 z, 1)` in Siegel form.
pub fn standard_lift(z: Cx, t: f64, u: f64) -> Result<Point> {
    if !(u >= 0.0) || !finite(z) || !t.is_finite() {
        return Err(Error::InvalidInput(
            "standard lift needs u ≥ 0 and finite data".into(),
        ));
    }
    let rep = [r(-z.norm_sqr() - u) + I * t, z * SQRT_2, ONE];
    let kind = if u > 0.0 {
        PointType::Negative
    } else {
        PointType::Null
    };
    Ok(Point {
        rep,
        form: Form::Siegel,
        kind,
    })
}

/// Roots of the monic cubic `x³ + a x² + b x + d`, each polished by Newton steps.
pub fn cubic_roots(a: Cx, b: Cx, d: Cx) -> [Cx; 3] {
    let shift = a / 3.0;
    let p = b - a * a / 3.0;
    let q = a * a * a * (2.0 / 27.0) - a * b / 3.0 + d;
    let disc = (q * q / 4.0 + p * p * p / 27.0).sqrt();
    let u1 = -q / 2.0 + disc;
    let u2 = -q / 2.0 - disc;
    let u3 = if u1.norm() >= u2.norm() { u1 } else { u2 };
    let w = omega();
    let mut ys = [ZERO; 3];
    if u3.norm() == 0.0 {
        // p = q = 0: a triple root
    } else {
        let u = u3.powf(1.0 / 3.0);
        let mut uk = u;
        for y in ys.iter_mut() {
            let v = if uk.norm() == 0.0 {
                ZERO
            } else {
                -p / (uk * 3.0)
            };
            *y = uk + v;
            uk *= w;
        }
    }
    let f = |x: Cx| ((x + a) * x + b) * x + d;
    let fp = |x: Cx| (x * 3.0 + a * 2.0) * x + b;
    let mut out = [ZERO; 3];
    for k in 0..3 {
        let mut x = ys[k] - shift;
        for _ in 0..2 {
            let dfx = fp(x);
            if dfx.norm() < 1e-300 {
                break;
            }
            let nx = x - f(x) / dfx;
            if finite(nx) && f(nx).norm() <= f(x).norm() {
                x = nx;
            } else {
                break;
            }
        }
        out[k] = x;
    }
    out
}

/// Characteristic polynomial coefficients `(tr, c₂, det)` for
/// `λ³ − tr λ² + c₂ λ − det`.
pub fn char_poly(m: &Mat3) -> (Cx, Cx, Cx) {
    (m.trace(), m.principal_minor_sum(), m.det())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EigenPair {
    pub value: Cx,
    /// One eigenvector (Euclidean unit length).
    pub vector: Vec3,
    /// A basis of the eigenspace, `geometric` vectors long.
    pub basis: Vec<Vec3>,
    pub algebraic: usize,
    pub geometric: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Eigensystem {
    pub pairs: Vec<EigenPair>,
    /// Set when two eigenvalues are closer than the clustering radius, or
    /// when a residual check fails.
    pub ill_conditioned: bool,
}

pub fn unit(v: &Vec3) -> Vec3 {
    let n = vnorm(v);
    if n == 0.0 {
        *v
    } else {
        vscale(v, r(1.0 / n))
    }
}

/// Numerical rank of a 3×3 matrix relative to `scale`.
pub fn numerical_rank(m: &Mat3, scale: f64, tol: f64) -> usize {
    let s = m.max_abs();
    if s <= tol * scale {
        return 0;
    }
    if m.det().norm() > tol * s * s * s.max(scale) {
        return 3;
    }
    if m.max_minor() <= tol * s * s.max(scale) {
        1
    } else {
        2
    }
}

/// Kernel basis of `m` assuming the given rank deficiency. Vectors are
/// annihilated by every row (bilinearly).
pub fn kernel_basis(m: &Mat3, dim: usize) -> Vec<Vec3> {
    let rows = m.0;
    match dim {
        0 => vec![],
        1 => {
            let cands = [
                cross(&rows[0], &rows[1]),
                cross(&rows[1], &rows[2]),
                cross(&rows[2], &rows[0]),
            ];
            let best = cands
                .iter()
                .max_by(|a, b| vnorm(a).total_cmp(&vnorm(b)))
                .unwrap();
            vec![unit(best)]
        }
        2 => {
            let row = *rows
                .iter()
                .max_by(|a, b| vnorm(a).total_cmp(&vnorm(b)))
                .unwrap();
            // two independent vectors orthogonal (bilinearly) to `row`
            let k = (0..3)
                .max_by(|&a, &b| row[a].norm().total_cmp(&row[b].norm()))
                .unwrap();
            let (i, j) = ((k + 1) % 3, (k + 2) % 3);
            let mut v1 = [ZERO; 3];
            v1[i] = ONE;
            v1[k] = -row[i] / row[k];
            let mut v2 = [ZERO; 3];
            v2[j] = ONE;
            v2[k] = -row[j] / row[k];
            // Gram–Schmidt (Euclidean) for conditioning
            let u1 = unit(&v1);
            let proj: Cx = (0..3).map(|t| v2[t] * u1[t].conj()).sum();
            let u2 = unit(&vsub(&v2, &vscale(&u1, proj)));
            vec![u1, u2]
        }
        _ => vec![[ONE, ZERO, ZERO], [ZERO, ONE, ZERO], [ZERO, ZERO, ONE]],
    }
}

/// Eigenvalues (clustered), eigenvectors and multiplicities of a 3×3 matrix.
pub fn eigensystem3(m: &Mat3, tol: f64) -> Eigensystem {
    let (tr, c2, det) = char_poly(m);
    let roots = cubic_roots(-tr, c2, -det);
    let mnorm = m.norm_inf();
    let radius = 1e-7 * (1.0 + mnorm);

    // union-find free clustering of three items
    let mut cluster = [0usize, 1, 2];
    for i in 0..3 {
        for j in i + 1..3 {
            if (roots[i] - roots[j]).norm() < radius {
                let (a, b) = (cluster[i], cluster[j]);
                for cl in cluster.iter_mut() {
                    if *cl == b {
                        *cl = a;
                    }
                }
            }
        }
    }
    let mut ill = false;
    for i in 0..3 {
        for j in i + 1..3 {
            let d = (roots[i] - roots[j]).norm();
            if d < radius * 1e3 && cluster[i] != cluster[j] {
                ill = true;
            }
        }
    }

    let mut pairs = Vec::new();
    let mut seen = Vec::new();
    for i in 0..3 {
        if seen.contains(&cluster[i]) {
            continue;
        }
        seen.push(cluster[i]);
        let members: Vec<usize> = (0..3).filter(|&k| cluster[k] == cluster[i]).collect();
        let alg = members.len();
        let value = match alg {
            1 => roots[i],
            2 => {
                // the double root is a simple root of the derivative
                let crit = cubic_derivative_roots(tr, c2);
                let mean = (roots[members[0]] + roots[members[1]]) / 2.0;
                *crit
                    .iter()
                    .min_by(|a, b| (**a - mean).norm().total_cmp(&(**b - mean).norm()))
                    .unwrap()
            }
            _ => tr / 3.0,
        };
        let shifted = *m - Mat3::identity().scale(value);
        let rank = numerical_rank(&shifted, 1.0 + mnorm, 1e-7).min(2);
        let geo = (3 - rank).min(alg).max(1);
        let basis = kernel_basis(&shifted, geo);
        let vector = basis[0];
        let resid = vnorm(&vsub(&m.apply(&vector), &vscale(&vector, value)));
        if resid > tol.max(1e-10) * (1.0 + mnorm) * 1e3 {
            ill = true;
        }
        pairs.push(EigenPair {
            value,
            vector,
            basis,
            algebraic: alg,
            geometric: geo,
        });
    }
    Eigensystem {
        pairs,
        ill_conditioned: ill,
    }
}

/// Roots of `3x² − 2·tr·x + c₂`, the derivative of the characteristic polynomial.
pub fn cubic_derivative_roots(tr: Cx, c2: Cx) -> [Cx; 2] {
    let disc = (tr * tr * 4.0 - c2 * 12.0).sqrt();
    let b = tr * 2.0;
    // stable quadratic formula
    let qq = if (b.conj() * disc).re >= 0.0 {
        (b + disc) / 2.0
    } else {
        (b - disc) / 2.0
    };
    if qq.norm() == 0.0 {
        return [tr / 3.0, tr / 3.0];
    }
    [qq / 3.0, c2 / qq]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inner_examples() {
        let e1 = [ONE, ZERO, ZERO];
        let e2 = [ZERO, ONE, ZERO];
        assert_eq!(Form::Siegel.inner(&e1, &e1), ZERO);
        assert_eq!(Form::Siegel.inner(&e2, &e2), ONE);
        let m = standard_lift(ZERO, 0.0, 1.0).unwrap();
        assert_eq!(Form::Siegel.inner(&m.rep, &m.rep), r(-2.0));
    }

    #[test]
    fn su21_examples() {
        assert_eq!(
            verify_su21(&Mat3::identity(), Form::Ball, 1e-9),
            (true, 0.0)
        );
        let t = Heisenberg::new(ZERO, 1.0).translation();
        assert!(verify_su21(&t.m, Form::Siegel, 1e-12).0);
        assert!(!verify_su21(&Form::Siegel.matrix(), Form::Siegel, 1e-9).0);
    }

    #[test]
    fn eigen_diag() {
        let m = Mat3::diag(r(2.0), ONE, r(0.5));
        let es = eigensystem3(&m, 1e-9);
        assert_eq!(es.pairs.len(), 3);
        let mut vals: Vec<f64> = es.pairs.iter().map(|p| p.value.re).collect();
        vals.sort_by(f64::total_cmp);
        for (v, e) in vals.iter().zip([0.5, 1.0, 2.0]) {
            assert!((v - e).abs() < 1e-14);
        }
        assert!(es
            .pairs
            .iter()
            .all(|p| p.algebraic == 1 && p.geometric == 1));
    }

    #[test]
    fn eigen_heisenberg_translation() {
        let t = Heisenberg::new(ONE, 0.0).translation();
        let es = eigensystem3(&t.m, 1e-9);
        assert_eq!(es.pairs.len(), 1);
        let p = &es.pairs[0];
        assert!((p.value - ONE).norm() < 1e-14);
        assert_eq!((p.algebraic, p.geometric), (3, 1));
    }

    #[test]
    fn heisenberg_law() {
        let a = Heisenberg::new(ONE, 0.0);
        let b = Heisenberg::new(I, 0.0);
        let ab = a.compose(&b);
        assert_eq!(ab, Heisenberg::new(c(1.0, 1.0), -2.0));
        let lhs = a.translation() * b.translation();
        assert!(lhs.m.dist(&ab.translation().m) < 1e-14);
        let z = Heisenberg::new(ZERO, 0.0);
        assert_eq!(z.compose(&ab), ab);
    }

    #[test]
    fn lift_examples() {
        let p = standard_lift(ZERO, 0.0, 0.0).unwrap();
        assert_eq!(p.rep, [ZERO, ZERO, ONE]);
        assert_eq!(p.kind, PointType::Null);
        let q = standard_lift(ONE, 2.0, 0.0).unwrap();
        assert_eq!(q.rep, [c(-1.0, 2.0), r(SQRT_2), ONE]);
        assert!(Form::Siegel.inner(&q.rep, &q.rep).norm() < 1e-15);
    }

    #[test]
    fn cayley_roundtrip() {
        let g = Element::identity(Form::Ball);
        let h = cayley_transfer(&g);
        assert_eq!(h.form, Form::Siegel);
        assert!(h.m.dist(&Mat3::identity()) < 1e-15);
        let a = Element::new(Mat3::diag(r(2.0), ONE, r(0.5)), Form::Siegel);
        let b = cayley_transfer(&a);
        assert!(verify_su21(&b.m, Form::Ball, 1e-12).0);
        assert!(cayley_transfer(&b).m.dist(&a.m) < 1e-12);
    }
}
