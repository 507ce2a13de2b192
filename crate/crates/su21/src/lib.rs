//! Isometries of the complex hyperbolic plane.
//!
//! Elements of SU(2,1) are 3×3 complex matrices preserving one of two
//! Hermitian forms of signature (2,1). Every inner product in this crate is
//! `⟨v,w⟩ = w̄ᵀJv`, conjugate-linear in the second slot; angular invariants
//! change sign under the opposite convention.

pub mod classify;
pub mod discrete;
pub mod error;
pub mod invariants;
pub mod linalg;
pub mod modular;
pub mod pairs;
pub mod sample;
pub mod suite;
pub mod traces;
pub mod triangle;

pub use error::{Error, Result};
pub use linalg::{Element, Form, Mat3, Point, Vec3};
pub use num_complex::Complex64 as Cx;
