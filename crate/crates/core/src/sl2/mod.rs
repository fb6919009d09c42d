//! `SL(2,C)` matrices, words in the free group `⟨a, b⟩`, and reduction of
//! word traces to polynomials in `α = tr A`, `β = tr B`, `γ = tr AB`.

mod pair;
mod poly;
mod reduce;
mod word;

use std::fmt;
use std::ops::{Mul, Neg};

use num_complex::Complex64;
use thiserror::Error;

pub use pair::{eigenvalue_branch, make_fundamental_pair, FundamentalPair, REDUCIBLE_TOLERANCE};
pub use poly::{OverflowError, ParsePolynomialError, TracePolynomial};
pub use reduce::{commutator_trace, trace_reduce, TraceReducer};
pub use word::{eval_word, Letter, ParseWordError, Word};

/// Largest `|det − 1|` accepted by [`Mat2::unimodular`].
pub const DET_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Sl2Error {
    #[error("determinant {det} is not 1")]
    NotUnimodular { det: Complex64 },
    #[error("characters with tr[A,B] = 2 are reducible")]
    ReducibleCharacter,
    #[error(transparent)]
    Overflow(#[from] OverflowError),
}

/// A 2×2 complex matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2 {
    pub m: [[Complex64; 2]; 2],
}

impl Mat2 {
    pub const IDENTITY: Mat2 = Mat2 {
        m: [
            [Complex64 { re: 1.0, im: 0.0 }, Complex64 { re: 0.0, im: 0.0 }],
            [Complex64 { re: 0.0, im: 0.0 }, Complex64 { re: 1.0, im: 0.0 }],
        ],
    };

    pub fn new(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Mat2 {
        Mat2 { m: [[a, b], [c, d]] }
    }

    /// As [`Mat2::new`], rejecting determinants off 1 by more than [`DET_TOLERANCE`].
    pub fn unimodular(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Result<Mat2, Sl2Error> {
        let m = Mat2::new(a, b, c, d);
        let det = m.det();
        if !((det - 1.0).norm() <= DET_TOLERANCE) {
            return Err(Sl2Error::NotUnimodular { det });
        }
        Ok(m)
    }

    pub fn det(&self) -> Complex64 {
        self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]
    }

    pub fn trace(&self) -> Complex64 {
        self.m[0][0] + self.m[1][1]
    }

    /// Inverse by the adjugate, divided by the determinant.
    pub fn inverse(&self) -> Mat2 {
        let [[a, b], [c, d]] = self.m;
        let det = self.det();
        Mat2::new(d / det, -b / det, -c / det, a / det)
    }

    /// Adjugate, which is the inverse for determinant 1.
    pub fn adjugate(&self) -> Mat2 {
        let [[a, b], [c, d]] = self.m;
        Mat2::new(d, -b, -c, a)
    }

    pub fn pow(&self, k: i32) -> Mat2 {
        let base = if k < 0 { self.inverse() } else { *self };
        (0..k.unsigned_abs()).fold(Mat2::IDENTITY, |acc, _| acc * base)
    }

    pub fn scale(&self, s: Complex64) -> Mat2 {
        let [[a, b], [c, d]] = self.m;
        Mat2::new(a * s, b * s, c * s, d * s)
    }

    /// Largest entrywise modulus of `self − other`.
    pub fn max_diff(&self, other: &Mat2) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..2 {
            for j in 0..2 {
                worst = worst.max((self.m[i][j] - other.m[i][j]).norm());
            }
        }
        worst
    }

    /// The two eigenvalues `(t ± √(t² − 4))/2` of a determinant-1 matrix.
    pub fn eigenvalues(&self) -> [Complex64; 2] {
        let t = self.trace();
        let s = (t * t - 4.0).sqrt();
        [(t + s) / 2.0, (t - s) / 2.0]
    }
}

impl Mul for Mat2 {
    type Output = Mat2;

    fn mul(self, r: Mat2) -> Mat2 {
        let (a, b) = (self.m, r.m);
        Mat2::new(
            a[0][0] * b[0][0] + a[0][1] * b[1][0],
            a[0][0] * b[0][1] + a[0][1] * b[1][1],
            a[1][0] * b[0][0] + a[1][1] * b[1][0],
            a[1][0] * b[0][1] + a[1][1] * b[1][1],
        )
    }
}

impl Neg for Mat2 {
    type Output = Mat2;

    fn neg(self) -> Mat2 {
        self.scale(Complex64::new(-1.0, 0.0))
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(({}, {}), ({}, {}))", self.m[0][0], self.m[0][1], self.m[1][0], self.m[1][1])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn unimodular_constructor() {
        assert!(Mat2::unimodular(c(2.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(1.0, 0.0)).is_ok());
        assert!(matches!(
            Mat2::unimodular(c(2.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(2.0, 0.0)),
            Err(Sl2Error::NotUnimodular { .. })
        ));
    }

    #[test]
    fn inverse_and_powers() {
        let m = Mat2::new(c(1.0, 1.0), c(2.0, 0.0), c(0.5, -1.0), c(0.0, 3.0));
        assert!((m * m.inverse()).max_diff(&Mat2::IDENTITY) < 1e-14);
        assert!((m.pow(3) * m.pow(-3)).max_diff(&Mat2::IDENTITY) < 1e-12);
        assert_eq!(m.pow(0), Mat2::IDENTITY);
    }

    #[test]
    fn monodromy_matrix_factorization() {
        // (−1 −2; −2 −5) = −(1 0; 1 1)² (1 1; 0 1)²
        let one = c(1.0, 0.0);
        let zero = c(0.0, 0.0);
        let l = Mat2::new(one, zero, one, one);
        let r = Mat2::new(one, one, zero, one);
        let m = -(l.pow(2) * r.pow(2));
        assert_eq!(m, Mat2::new(c(-1.0, 0.0), c(-2.0, 0.0), c(-2.0, 0.0), c(-5.0, 0.0)));
    }
}
