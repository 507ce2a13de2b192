//! Non-discreteness certificates. Nothing here ever claims a group is
//! discrete: the inequalities only certify "elementary or non-discrete".

use std::f64::consts::{PI, SQRT_2};
use std::ops::Mul;

use num_complex::Complex64 as Cx;
use serde::{Deserialize, Serialize};

use crate::classify::{classify, IsometryClass};
use crate::error::{Error, Result};
use crate::invariants::cross_ratio;
use crate::linalg::{kernel_basis, vadd, vscale, vsub, Element, Form, Mat3, Vec3, I, ONE, ZERO};
use crate::traces::{fixed_point, FixedChoice};

/// A 2×2 complex matrix, for SL(2,ℂ) data.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Mat2(pub [[Cx; 2]; 2]);

impl Mat2 {
    pub fn from_real(m: [[f64; 2]; 2]) -> Self {
        Mat2([
            [Cx::new(m[0][0], 0.0), Cx::new(m[0][1], 0.0)],
            [Cx::new(m[1][0], 0.0), Cx::new(m[1][1], 0.0)],
        ])
    }

    pub fn identity() -> Self {
        Mat2([[ONE, ZERO], [ZERO, ONE]])
    }

    pub fn trace(&self) -> Cx {
        self.0[0][0] + self.0[1][1]
    }

    pub fn det(&self) -> Cx {
        self.0[0][0] * self.0[1][1] - self.0[0][1] * self.0[1][0]
    }

    /// Inverse of a determinant-one matrix.
    pub fn inv(&self) -> Self {
        let [[a, b], [c, d]] = self.0;
        Mat2([[d, -b], [-c, a]])
    }

    pub fn commutator(&self, o: &Mat2) -> Mat2 {
        *self * *o * self.inv() * o.inv()
    }

    pub fn neg(&self) -> Mat2 {
        let [[a, b], [c, d]] = self.0;
        Mat2([[-a, -b], [-c, -d]])
    }

    pub fn dist(&self, o: &Mat2) -> f64 {
        (0..2)
            .flat_map(|i| (0..2).map(move |j| (i, j)))
            .map(|(i, j)| (self.0[i][j] - o.0[i][j]).norm())
            .fold(0.0, f64::max)
    }

    /// Equal up to sign, i.e. in PSL(2,ℂ).
    pub fn eq_projective(&self, o: &Mat2, tol: f64) -> bool {
        self.dist(o) <= tol || self.dist(&o.neg()) <= tol
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, o: Mat2) -> Mat2 {
        let mut r = [[ZERO; 2]; 2];
        for (i, row) in r.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().enumerate() {
                *x = self.0[i][0] * o.0[0][j] + self.0[i][1] * o.0[1][j];
            }
        }
        Mat2(r)
    }
}

/// The generators `e`, `p` and `c = ep` of PSL(2,ℤ).
pub fn modular_generators() -> (Mat2, Mat2, Mat2) {
    let e = Mat2::from_real([[0.0, -1.0], [1.0, 0.0]]);
    let p = Mat2::from_real([[1.0, 1.0], [0.0, 1.0]]);
    (e, p, e * p)
}

/// Real `g ∈ SL(2,ℝ)` acting on the complex line spanned by `q∞` and `o`
/// (Siegel form), fixing the polar vector.
pub fn embed_sl2(g: &Mat2) -> Element {
    let [[a, b], [c, d]] = g.0;
    Element::new(
        Mat3::from_rows([[a, ZERO, -I * b], [ZERO, ONE, ZERO], [I * c, ZERO, d]]),
        Form::Siegel,
    )
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    ElementaryOrNonDiscrete,
    NoConclusion,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct DiscretenessVerdict {
    pub verdict: Verdict,
    pub fired_condition: Option<u8>,
    /// Left-hand sides of the tested conditions, `None` when undefined.
    pub witness_values: Vec<Option<f64>>,
    /// Conditions whose cross-ratio was undefined.
    pub degenerate: Vec<u8>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct JorgensenResult {
    pub value: f64,
    pub verdict: DiscretenessVerdict,
}

/// `|tr²A − 4| + |tr[A,B] − 2|`; fires when below `1 − tol`, so that the
/// equality cases of genuine lattices do not fire on rounding noise.
pub fn jorgensen_sl2(a: &Mat2, b: &Mat2, tol: f64) -> Result<JorgensenResult> {
    for m in [a, b] {
        if (m.det() - ONE).norm() > 1e-9 {
            return Err(Error::InvalidInput("determinant is not 1".into()));
        }
    }
    let t = a.trace();
    let value = (t * t - 4.0).norm() + (a.commutator(b).trace() - 2.0).norm();
    let fires = value < 1.0 - tol;
    Ok(JorgensenResult {
        value,
        verdict: DiscretenessVerdict {
            verdict: if fires {
                Verdict::ElementaryOrNonDiscrete
            } else {
                Verdict::NoConclusion
            },
            fired_condition: fires.then_some(1),
            witness_values: vec![Some(value)],
            degenerate: vec![],
        },
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct JkpInput {
    pub a: Element,
    pub b: Element,
    pub p: Vec3,
    pub q: Vec3,
    pub lambda: Cx,
    #[serde(rename = "M")]
    pub m: f64,
}

impl JkpInput {
    pub fn from_parts(a: Element, b: Element, p: Vec3, q: Vec3, lambda: Cx) -> Self {
        JkpInput {
            a,
            b,
            p,
            q,
            lambda,
            m: (lambda - 1.0).norm() + (lambda.inv() - 1.0).norm(),
        }
    }

    /// Fixed points and dilation factor read off `A`. For a loxodromic map
    /// `p` is attracting, `q` repelling and `λ` is the polar eigenvalue over
    /// the eigenvalue at `q`; for a reflection in a line it is `σ/μ`.
    pub fn new(a: &Element, b: &Element, tol: f64) -> Result<Self> {
        let class = classify(a, tol)?;
        let (p, q, lambda) = match class {
            IsometryClass::Loxodromic { .. } => {
                let fp = fixed_point(a, FixedChoice::Attracting, tol)?;
                let fq = fixed_point(a, FixedChoice::Repelling, tol)?;
                let polar = a.m.det() / (fp.eigenvalue * fq.eigenvalue);
                (fp.vector, fq.vector, polar / fq.eigenvalue)
            }
            IsometryClass::ComplexReflectionLine { .. } => {
                let (p, q, mu) = line_reflection_boundary(a, tol)?;
                (p, q, (mu * mu).inv() / mu)
            }
            other => {
                return Err(Error::InvalidInput(format!(
                    "A must be loxodromic or a reflection in a line, got {}",
                    other.tag()
                )))
            }
        };
        Ok(JkpInput {
            a: *a,
            b: *b,
            p,
            q,
            lambda,
            m: (lambda - 1.0).norm() + (lambda.inv() - 1.0).norm(),
        })
    }
}

/// Two boundary points of the mirror of a complex reflection in a line.
fn line_reflection_boundary(a: &Element, tol: f64) -> Result<(Vec3, Vec3, Cx)> {
    let fp = fixed_point(a, FixedChoice::Attracting, tol)?;
    let mu = fp.eigenvalue;
    let basis = kernel_basis(&(a.m - Mat3::identity().scale(mu)), 2);
    let f = a.form;
    let (u, v) = (basis[0], basis[1]);
    // the mirror has signature (1,1): complete the negative vector by an
    // orthogonal positive one
    let neg = fp.vector;
    let (a1, a2) = (f.inner(&u, &neg), f.inner(&v, &neg));
    let pos = if a2.norm() > a1.norm() {
        vsub(&vscale(&u, a2), &vscale(&v, a1))
    } else {
        vsub(&vscale(&v, a1), &vscale(&u, a2))
    };
    let (nn, pp) = (f.norm2(&neg), f.norm2(&pos));
    if nn >= 0.0 || pp <= 0.0 {
        return Err(Error::DegenerateConfiguration);
    }
    let k = (-nn / pp).sqrt();
    let p = vadd(&neg, &vscale(&pos, Cx::new(k, 0.0)));
    let q = vsub(&neg, &vscale(&pos, Cx::new(k, 0.0)));
    Ok((p, q, mu))
}

/// The four cross-ratio conditions; the first that fires is reported.
pub fn jkp_test(input: &JkpInput) -> DiscretenessVerdict {
    let f = input.a.form;
    let (p, q) = (&input.p, &input.q);
    let bp = input.b.apply(p);
    let bq = input.b.apply(q);
    let m = input.m;
    let x_bqpb = cross_ratio(&bp, q, p, &bq, f)
        .ok()
        .filter(|z| z.is_finite())
        .map(|z| z.norm());
    let x_bpqb = cross_ratio(&bp, p, q, &bq, f)
        .ok()
        .filter(|z| z.is_finite())
        .map(|z| z.norm());
    let x_pqbb = cross_ratio(p, q, &bp, &bq, f)
        .ok()
        .filter(|z| z.is_finite())
        .map(|z| z.norm());
    let mut degenerate = Vec::new();
    let mut values = Vec::new();
    let mut fired = None;
    let mut record = |k: u8, lhs: Option<f64>, rhs: f64, gate: bool| {
        match lhs {
            None => degenerate.push(k),
            Some(v) => {
                if gate && v < rhs && fired.is_none() {
                    fired = Some(k);
                }
            }
        }
        values.push(lhs);
    };
    record(1, x_bqpb.map(|x| m * (x.sqrt() + 1.0)), 1.0, true);
    record(2, x_bpqb.map(|x| m * (x.sqrt() + 1.0)), 1.0, true);
    let bound3 = (1.0 - m + (1.0 - 2.0 * m + m * m).sqrt()) / (m * m);
    let gate3 = m < SQRT_2 - 1.0;
    record(3, x_bpqb.zip(x_bqpb).map(|(a, b)| a + b), bound3, gate3);
    record(4, x_pqbb.map(|x| m + x.sqrt()), 1.0, true);
    DiscretenessVerdict {
        verdict: if fired.is_some() {
            Verdict::ElementaryOrNonDiscrete
        } else {
            Verdict::NoConclusion
        },
        fired_condition: fired,
        witness_values: values,
        degenerate,
    }
}

/// Denominator-based rationality score of `x`: `1/q` for the smallest
/// `q ≤ 10⁶` found by continued fractions with `|x − p/q| ≤ 10⁻⁹`, else 0.
pub fn rationality_score(x: f64) -> f64 {
    let x = x.rem_euclid(1.0);
    let (mut h0, mut h1) = (0.0f64, 1.0f64);
    let (mut k0, mut k1) = (1.0f64, 0.0f64);
    let mut y = x;
    for _ in 0..64 {
        let a = y.floor();
        let h = a * h1 + h0;
        let k = a * k1 + k0;
        if k > 1e6 {
            break;
        }
        if k >= 1.0 && (x - h / k).abs() <= 1e-9 {
            return 1.0 / k;
        }
        (h0, h1, k0, k1) = (h1, h, k1, k);
        let frac = y - a;
        if frac < 1e-15 {
            break;
        }
        y = 1.0 / frac;
    }
    // endpoints 0 and 1 count as rational with q = 1
    if x < 1e-9 || 1.0 - x < 1e-9 {
        1.0
    } else {
        0.0
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct WordReport {
    pub word: String,
    pub class: IsometryClass,
    pub angle_rationality_score: f64,
}

const LETTERS: [char; 4] = ['a', 'A', 'b', 'B'];

fn inverse_letter(c: char) -> char {
    match c {
        'a' => 'A',
        'A' => 'a',
        'b' => 'B',
        _ => 'b',
    }
}

/// All reduced words of length `1..=max_len` over the given letters, in
/// length-then-lexicographic order.
pub fn reduced_words(max_len: usize, letters: &[char]) -> Vec<String> {
    let mut out = Vec::new();
    let mut layer: Vec<String> = letters.iter().map(|c| c.to_string()).collect();
    for _ in 0..max_len {
        out.extend(layer.iter().cloned());
        let mut next = Vec::with_capacity(layer.len() * 3);
        for w in &layer {
            let last = w.chars().last().unwrap();
            for &c in letters {
                if c != inverse_letter(last) {
                    next.push(format!("{w}{c}"));
                }
            }
        }
        layer = next;
    }
    out
}

/// Evaluate a word in `a`, `A = a⁻¹`, `b`, `B = b⁻¹`.
pub fn evaluate_word(word: &str, a: &Element, b: &Element) -> Result<Element> {
    let (ai, bi) = (a.inv(), b.inv());
    let mut g = Element::identity(a.form);
    for c in word.chars() {
        g = g * match c {
            'a' => *a,
            'A' => ai,
            'b' => *b,
            'B' => bi,
            other => return Err(Error::InvalidInput(format!("bad letter {other:?} in word"))),
        };
    }
    Ok(g)
}

fn score_class(class: &IsometryClass) -> Option<f64> {
    let s = |t: f64| rationality_score(t / (2.0 * PI));
    match class {
        IsometryClass::RegularElliptic {
            angle_pair: (a, b), ..
        } => Some(s(*a).min(s(*b))),
        IsometryClass::ComplexReflectionLine { theta }
        | IsometryClass::ComplexReflectionPoint { theta } => Some(s(*theta)),
        _ => None,
    }
}

/// Elliptic words up to `max_len`, least rational angles first.
pub fn elliptic_word_search(
    a: &Element,
    b: &Element,
    max_len: usize,
    tol: f64,
) -> Result<Vec<WordReport>> {
    if max_len > 12 {
        return Err(Error::OutOfRange(format!(
            "word length {max_len} exceeds 12"
        )));
    }
    let same = a.central_distance(b).0 <= tol * (1.0 + a.m.norm_inf());
    let letters: &[char] = if same { &LETTERS[..2] } else { &LETTERS };
    let words = reduced_words(max_len, letters);
    let eval = |w: &String| -> Option<WordReport> {
        let g = evaluate_word(w, a, b).ok()?;
        let class = classify(&g, tol).ok()?;
        let score = score_class(&class)?;
        Some(WordReport {
            word: w.clone(),
            class,
            angle_rationality_score: score,
        })
    };
    #[cfg(feature = "parallel")]
    let mut found: Vec<WordReport> = {
        use rayon::prelude::*;
        words.par_iter().filter_map(eval).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let mut found: Vec<WordReport> = words.iter().filter_map(eval).collect();
    // stable: ties keep enumeration order
    found.sort_by(|x, y| {
        x.angle_rationality_score
            .total_cmp(&y.angle_rationality_score)
    });
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{verify_su21, Heisenberg};
    use crate::sample::loxodromic_diag;

    #[test]
    fn jorgensen_examples() {
        let (e, p, _) = modular_generators();
        let r = jorgensen_sl2(&p, &p, 1e-9).unwrap();
        assert_eq!(r.value, 0.0);
        assert_eq!(r.verdict.fired_condition, Some(1));
        let r = jorgensen_sl2(&e, &p, 1e-9).unwrap();
        assert!(r.value >= 4.0);
        assert_eq!(r.verdict.verdict, Verdict::NoConclusion);
        let eps: f64 = 0.05;
        let rot = Mat2::from_real([[eps.cos(), -eps.sin()], [eps.sin(), eps.cos()]]);
        let r = jorgensen_sl2(&rot, &p, 1e-9).unwrap();
        assert_eq!(r.verdict.verdict, Verdict::ElementaryOrNonDiscrete);
    }

    #[test]
    fn modular_word_identity() {
        let (e, p, c) = modular_generators();
        let lhs = e.commutator(&p);
        let rhs = c * e * c.inv() * e;
        assert!(lhs.eq_projective(&rhs, 1e-15));
    }

    #[test]
    fn embed_is_su21() {
        let g = Mat2::from_real([[2.0, 1.0], [1.0, 1.0]]);
        let m = embed_sl2(&g);
        assert!(verify_su21(&m.m, Form::Siegel, 1e-12).0);
    }

    #[test]
    fn jkp_examples() {
        let a = loxodromic_diag(Cx::new(2.0, 0.0));
        let b = Heisenberg::new(Cx::new(0.3, 0.1), 0.2).translation();
        let inp = JkpInput::new(&a, &b, 1e-9).unwrap();
        assert!((inp.m - 1.5).abs() < 1e-12);
        assert_eq!(jkp_test(&inp).verdict, Verdict::NoConclusion);
        let a = loxodromic_diag(Cx::new(1.1, 0.0));
        let b = Heisenberg::new(Cx::new(1e-3, 0.0), 0.0).translation();
        let inp = JkpInput::new(&a, &b, 1e-9).unwrap();
        let v = jkp_test(&inp);
        assert_eq!(v.fired_condition, Some(1), "{v:?}");
    }

    #[test]
    fn line_reflection_input() {
        let a = crate::classify::normal_form(&IsometryClass::ComplexReflectionLine { theta: 1.0 })
            .unwrap()
            .to_form(Form::Siegel);
        let inp = JkpInput::new(&a, &a, 1e-9).unwrap();
        assert!((inp.lambda.norm() - 1.0).abs() < 1e-12);
        for v in [inp.p, inp.q] {
            assert!(Form::Siegel.norm2(&v).abs() < 1e-12);
        }
    }

    #[test]
    fn word_counts() {
        for l in 1..=6 {
            let n = reduced_words(l, &LETTERS)
                .iter()
                .filter(|w| w.len() == l)
                .count();
            assert_eq!(n, 4 * 3usize.pow(l as u32 - 1));
        }
        let w = reduced_words(5, &LETTERS);
        let mut d = w.clone();
        d.sort();
        d.dedup();
        assert_eq!(d.len(), w.len());
    }

    #[test]
    fn rationality() {
        assert!((rationality_score(1.0 / 3.0) - 1.0 / 3.0).abs() < 1e-15);
        assert!(rationality_score(2f64.sqrt() - 1.0) < 1e-4);
        assert_eq!(rationality_score(0.0), 1.0);
    }
}
