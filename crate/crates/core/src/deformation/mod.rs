//! Deformation varieties of ideal triangulations.
//!
//! A point of the deformation variety assigns each tetrahedron a complex
//! edge parameter `z`; the gluing equations cut out the variety and the
//! peripheral holonomies are monomial functions on it. This module evaluates
//! those systems, solves for the complete structure, follows orbifold
//! Dehn-filling paths `h = exp(2πi t/n)` and classifies where the path ends.

mod chart;
mod continuation;
mod eval;
mod roots;
mod solver;
mod tangent;
mod volume;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::json;
use crate::triangulation::{align_labeling, MonomialEquation, Slot, TriangulationError, TriangulationFile};
use num_complex::Complex64;

pub use continuation::{continue_filling, ContinuationOptions, DegenerationReport, Outcome};
pub use eval::{
    eval_cleared_jacobian, eval_cleared_residuals, eval_jacobian, eval_residuals, holonomy, HolonomyValue,
};
pub use roots::{detect_root_of_unity, AlternateRoot, RootError, RootOfUnity};
pub use solver::{solve_complete, Solution, SolverOptions};
pub use tangent::{tangent_nullity, TangentSpectrum};
pub use volume::{bloch_wigner, volume, volume_with};

/// Default distance below which a shape counts as collapsed onto 0, 1 or ∞.
pub const DEFAULT_DEGENERACY: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DeformationError {
    #[error("shape vector has length {found}, system expects {expected}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("`{label}` cannot be evaluated: tetrahedron {tet} sits at a zero of a denominator")]
    DegenerateEvaluation { label: String, tet: usize },
    #[error("no peripheral curve named `{0}`")]
    UnknownCurve(String),
    #[error("holonomy `{0}` is 0/0 at this point")]
    Indeterminate(String),
    #[error("system has no peripheral curves to impose completeness with")]
    MissingCurves,
    #[error("file has no explicit equations")]
    MissingEquations,
    #[error("explicit equations do not match the built gluing equations under any relabeling")]
    LabelingMismatch,
    #[error("Gauss-Newton did not converge after {iterations} iterations (residual {residual:.3e})")]
    NoConvergence { iterations: usize, residual: f64 },
    #[error("iterates left the nondegenerate region")]
    DegenerateLimit { shapes: ShapeAssignment },
    #[error("solution is not positively oriented")]
    NotPositivelyOriented { shapes: ShapeAssignment },
    #[error("filling order must be positive")]
    InvalidOrder,
    #[error(transparent)]
    Triangulation(#[from] TriangulationError),
}

/// One complex edge parameter per tetrahedron.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ShapeAssignment {
    #[serde(with = "json::complex_vec")]
    pub shapes: Vec<Complex64>,
}

/// The degenerate value a collapsed shape tends to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Limit {
    Zero,
    One,
    Infinity,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Collapse {
    pub tet: usize,
    pub limit: Limit,
}

/// Distance from a shape to the nearest of 0, 1, ∞, with that point.
pub(crate) fn nearest_degenerate(z: Complex64, w: Complex64) -> (f64, Limit) {
    let (dz, dw, dinf) = (z.norm(), w.norm(), 1.0 / z.norm());
    if dz <= dw && dz <= dinf {
        (dz, Limit::Zero)
    } else if dw <= dinf {
        (dw, Limit::One)
    } else {
        (dinf, Limit::Infinity)
    }
}

impl ShapeAssignment {
    pub fn new(shapes: Vec<Complex64>) -> Self {
        ShapeAssignment { shapes }
    }

    /// The same shape on every tetrahedron.
    pub fn uniform(z: Complex64, n: usize) -> Self {
        ShapeAssignment { shapes: vec![z; n] }
    }

    /// Default seed: the regular ideal tetrahedron `1/2 + (√3/2) i`.
    pub fn regular(n: usize) -> Self {
        Self::uniform(Complex64::new(0.5, 3f64.sqrt() / 2.0), n)
    }

    pub fn len(&self) -> usize {
        self.shapes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.shapes.is_empty()
    }

    /// Every shape stays at least `delta` away from 0, 1 and ∞.
    pub fn is_nondegenerate(&self, delta: f64) -> bool {
        self.collapsed(delta).is_empty()
    }

    /// Every `Im zᵢ > delta`; shapes flatter than that count as unoriented.
    pub fn is_positively_oriented(&self, delta: f64) -> bool {
        self.shapes.iter().all(|z| z.im > delta)
    }

    /// Tetrahedra within `delta` of 0, 1 or ∞.
    pub fn collapsed(&self, delta: f64) -> Vec<Collapse> {
        self.shapes
            .iter()
            .enumerate()
            .filter_map(|(tet, &z)| {
                let (d, limit) = nearest_degenerate(z, Complex64::new(1.0, 0.0) - z);
                (d < delta || !d.is_finite()).then_some(Collapse { tet, limit })
            })
            .collect()
    }
}

/// Edge equations plus named peripheral holonomies, all over the same
/// tetrahedra.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EquationSystem {
    n: usize,
    pub equations: Vec<MonomialEquation>,
    pub curves: Vec<MonomialEquation>,
}

impl EquationSystem {
    pub fn new(
        n: usize,
        equations: Vec<MonomialEquation>,
        curves: Vec<MonomialEquation>,
    ) -> Result<Self, DeformationError> {
        for eq in equations.iter().chain(&curves) {
            if eq.a.len() != n || eq.b.len() != n {
                return Err(DeformationError::LengthMismatch {
                    expected: n,
                    found: eq.a.len().max(eq.b.len()),
                });
            }
        }
        Ok(EquationSystem { n, equations, curves })
    }

    /// The file's own equations and curves, in its own labeling.
    pub fn explicit(file: &TriangulationFile) -> Result<Self, DeformationError> {
        if file.equations.is_empty() {
            return Err(DeformationError::MissingEquations);
        }
        Self::new(file.triangulation.len(), file.equations.clone(), file.curves.clone())
    }

    /// Gluing equations built from the triangulation.
    ///
    /// When the file also carries explicit equations, its curves are written
    /// in that labeling, so the labeling is aligned with the builder's first
    /// and the curves rewritten; the slots used are returned. Without explicit
    /// equations the curves are taken to be in the builder's labeling already.
    pub fn derived(file: &TriangulationFile) -> Result<(Self, Option<Vec<Slot>>), DeformationError> {
        let built = file.triangulation.gluing_equations()?;
        let n = file.triangulation.len();
        if file.equations.is_empty() {
            return Ok((Self::new(n, built, file.curves.clone())?, None));
        }
        let slots = align_labeling(&file.equations, &built).ok_or(DeformationError::LabelingMismatch)?;
        let curves = file.curves.iter().map(|c| c.substitute(&slots)).collect();
        Ok((Self::new(n, built, curves)?, Some(slots)))
    }

    pub fn tet_count(&self) -> usize {
        self.n
    }

    pub fn curve(&self, label: &str) -> Result<&MonomialEquation, DeformationError> {
        self.curves
            .iter()
            .find(|c| c.label == label)
            .ok_or_else(|| DeformationError::UnknownCurve(label.to_string()))
    }

    pub(crate) fn check_len(&self, s: &ShapeAssignment) -> Result<(), DeformationError> {
        if s.len() != self.n {
            return Err(DeformationError::LengthMismatch {
                expected: self.n,
                found: s.len(),
            });
        }
        Ok(())
    }
}

/// Apply a slot rotation to shapes: `zᵢ = slots[i](wᵢ)`.
pub fn apply_slots(w: &ShapeAssignment, slots: &[Slot]) -> ShapeAssignment {
    let one = Complex64::new(1.0, 0.0);
    ShapeAssignment::new(
        w.shapes
            .iter()
            .zip(slots)
            .map(|(&w, slot)| match slot {
                Slot::Z => w,
                Slot::ZPrime => one / (one - w),
                Slot::ZDoublePrime => (w - one) / w,
            })
            .collect(),
    )
}
