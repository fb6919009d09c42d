use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{DeformationError, EquationSystem, ShapeAssignment};
use crate::json;
use crate::triangulation::MonomialEquation;

const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };
const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };

/// A shape together with its complement `1 - z`, each held to full relative
/// precision (the solver keeps whichever is small as the primary variable).
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Pair {
    pub z: Complex64,
    pub w: Complex64,
}

impl Pair {
    pub fn of(z: Complex64) -> Pair {
        Pair { z, w: ONE - z }
    }
}

pub(crate) fn pairs(s: &ShapeAssignment) -> Vec<Pair> {
    s.shapes.iter().copied().map(Pair::of).collect()
}

/// `z^a w^b`, or `None` if a negative power of zero is needed.
#[inline]
fn factor(p: Pair, a: i32, b: i32) -> Option<Complex64> {
    if (a < 0 && p.z == ZERO) || (b < 0 && p.w == ZERO) {
        return None;
    }
    Some(p.z.powi(a) * p.w.powi(b))
}

/// `d/dz (z^a w^b)` with `w = 1 - z`, written without dividing by `z` or `w`.
#[inline]
fn factor_derivative(p: Pair, a: i32, b: i32) -> Option<Complex64> {
    if (a < 0 && p.z == ZERO) || (b < 0 && p.w == ZERO) {
        return None;
    }
    let mut d = ZERO;
    if a != 0 {
        d += p.z.powi(a - 1) * p.w.powi(b) * a as f64;
    }
    if b != 0 {
        d -= p.z.powi(a) * p.w.powi(b - 1) * b as f64;
    }
    Some(d)
}

fn degenerate(eq: &MonomialEquation, tet: usize) -> DeformationError {
    DeformationError::DegenerateEvaluation {
        label: eq.label.clone(),
        tet,
    }
}

/// `∏ zᵢ^aᵢ wᵢ^bᵢ` (without the sign).
pub(crate) fn product(eq: &MonomialEquation, p: &[Pair]) -> Result<Complex64, DeformationError> {
    let mut v = ONE;
    for (i, &pi) in p.iter().enumerate() {
        v *= factor(pi, eq.a[i], eq.b[i]).ok_or_else(|| degenerate(eq, i))?;
    }
    Ok(v)
}

/// Gradient of `∏ zᵢ^aᵢ wᵢ^bᵢ` with respect to the `zᵢ`.
pub(crate) fn product_gradient(eq: &MonomialEquation, p: &[Pair]) -> Result<Vec<Complex64>, DeformationError> {
    let n = p.len();
    let factors: Vec<Complex64> = (0..n)
        .map(|i| factor(p[i], eq.a[i], eq.b[i]).ok_or_else(|| degenerate(eq, i)))
        .collect::<Result<_, _>>()?;
    (0..n)
        .map(|i| {
            if eq.a[i] == 0 && eq.b[i] == 0 {
                return Ok(ZERO);
            }
            let d = factor_derivative(p[i], eq.a[i], eq.b[i]).ok_or_else(|| degenerate(eq, i))?;
            let rest: Complex64 = factors
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != i)
                .map(|(_, f)| *f)
                .product();
            Ok(d * rest)
        })
        .collect()
}

/// The numerator and denominator monomials `(P, Q)` with `∏ = P / Q`, both
/// with nonnegative exponents.
pub(crate) fn cleared_parts(eq: &MonomialEquation) -> (MonomialEquation, MonomialEquation) {
    let pos = |v: &[i32]| v.iter().map(|&e| e.max(0)).collect::<Vec<_>>();
    let neg = |v: &[i32]| v.iter().map(|&e| (-e).max(0)).collect::<Vec<_>>();
    (
        MonomialEquation::new(eq.label.clone(), pos(&eq.a), pos(&eq.b), eq.sign),
        MonomialEquation::new(eq.label.clone(), neg(&eq.a), neg(&eq.b), eq.sign),
    )
}

/// Residuals `∏ zᵢ^aᵢ (1 − zᵢ)^bᵢ − sign` of the edge equations.
pub fn eval_residuals(sys: &EquationSystem, s: &ShapeAssignment) -> Result<Vec<Complex64>, DeformationError> {
    sys.check_len(s)?;
    let p = pairs(s);
    sys.equations
        .iter()
        .map(|eq| Ok(product(eq, &p)? - eq.sign.value()))
        .collect()
}

/// Jacobian of [`eval_residuals`] with respect to the shapes; entry `(j, i)`
/// is `fⱼ · (aᵢ/zᵢ − bᵢ/(1 − zᵢ))`.
pub fn eval_jacobian(sys: &EquationSystem, s: &ShapeAssignment) -> Result<DMatrix<Complex64>, DeformationError> {
    sys.check_len(s)?;
    let p = pairs(s);
    let mut j = DMatrix::zeros(sys.equations.len(), sys.tet_count());
    for (r, eq) in sys.equations.iter().enumerate() {
        for (c, g) in product_gradient(eq, &p)?.into_iter().enumerate() {
            j[(r, c)] = g;
        }
    }
    Ok(j)
}

/// Edge residuals in cleared form `P(z) − sign · Q(z)`; defined everywhere.
pub fn eval_cleared_residuals(sys: &EquationSystem, s: &ShapeAssignment) -> Result<Vec<Complex64>, DeformationError> {
    sys.check_len(s)?;
    let p = pairs(s);
    Ok(sys
        .equations
        .iter()
        .map(|eq| {
            let (num, den) = cleared_parts(eq);
            let pv = product(&num, &p).expect("nonnegative exponents");
            let qv = product(&den, &p).expect("nonnegative exponents");
            pv - qv * eq.sign.value()
        })
        .collect())
}

/// Jacobian of [`eval_cleared_residuals`].
pub fn eval_cleared_jacobian(sys: &EquationSystem, s: &ShapeAssignment) -> Result<DMatrix<Complex64>, DeformationError> {
    sys.check_len(s)?;
    let p = pairs(s);
    let mut j = DMatrix::zeros(sys.equations.len(), sys.tet_count());
    for (r, eq) in sys.equations.iter().enumerate() {
        let (num, den) = cleared_parts(eq);
        let gp = product_gradient(&num, &p).expect("nonnegative exponents");
        let gq = product_gradient(&den, &p).expect("nonnegative exponents");
        for c in 0..sys.tet_count() {
            j[(r, c)] = gp[c] - gq[c] * eq.sign.value();
        }
    }
    Ok(j)
}

/// Value of a peripheral holonomy.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum HolonomyValue {
    Finite {
        #[serde(with = "json::complex")]
        value: Complex64,
    },
    /// A denominator vanishes, or the magnitude passed the pole threshold.
    /// `magnitude` is absent when a denominator is exactly zero.
    Pole { magnitude: Option<f64> },
}

impl HolonomyValue {
    pub fn finite(&self) -> Option<Complex64> {
        match *self {
            HolonomyValue::Finite { value } => Some(value),
            HolonomyValue::Pole { .. } => None,
        }
    }

    pub fn is_pole(&self) -> bool {
        matches!(self, HolonomyValue::Pole { .. })
    }

    /// Reclassify finite values above `threshold` in magnitude as poles.
    pub fn with_pole_threshold(self, threshold: f64) -> HolonomyValue {
        match self {
            HolonomyValue::Finite { value } if !(value.norm() <= threshold) => HolonomyValue::Pole {
                magnitude: Some(value.norm()).filter(|m| m.is_finite()),
            },
            other => other,
        }
    }
}

pub(crate) fn holonomy_at(curve: &MonomialEquation, p: &[Pair]) -> Result<HolonomyValue, DeformationError> {
    let (num, den) = cleared_parts(curve);
    let pv = product(&num, p).expect("nonnegative exponents");
    let qv = product(&den, p).expect("nonnegative exponents");
    if qv == ZERO {
        if pv == ZERO {
            return Err(DeformationError::Indeterminate(curve.label.clone()));
        }
        return Ok(HolonomyValue::Pole { magnitude: None });
    }
    Ok(HolonomyValue::Finite {
        value: pv / qv * curve.sign.value(),
    })
}

/// `h = sign · ∏ zᵢ^aᵢ (1 − zᵢ)^bᵢ` for the named curve.
pub fn holonomy(sys: &EquationSystem, curve: &str, s: &ShapeAssignment) -> Result<HolonomyValue, DeformationError> {
    sys.check_len(s)?;
    holonomy_at(sys.curve(curve)?, &pairs(s))
}
