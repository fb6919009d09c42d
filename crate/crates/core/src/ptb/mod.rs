//! The once-punctured torus bundle `N` with monodromy
//! `(−1 −2; −2 −5) = −(1 0; 1 1)²(1 1; 0 1)²`.
//!
//! `π₁(N) = ⟨a, b, t | t a t⁻¹ = φ(a), t b t⁻¹ = φ(b)⟩` with
//! `φ(a) = b⁻¹a⁻¹b⁻¹` and `φ(b) = b a (b⁻¹a⁻¹b⁻¹)³`.
//!
//! The component `X₀` used here is cut out in trace coordinates
//! `α = tr A`, `β = tr B`, `γ = tr AB`, `τ = tr T` by
//!
//! ```text
//! 2α = βγ,   2α² − γ² − 4 = 0,   2τ = −iγ²
//! ```
//!
//! and is parametrized by `γ`, with `α = ±√((γ² + 4)/2)` and `β = 2α/γ`.

mod complete;
mod limits;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::deformation::RootError;
use crate::json;
use crate::sl2::{commutator_trace, make_fundamental_pair, Mat2, Sl2Error};

pub use complete::{characters_with_fiber_trace, find_complete_character, CompleteCharacter, CompleteCharacters};
pub use limits::{ideal_point_limits, IdealDirection, IdealPointReport, LimitRow};

/// Distance from `0`, `±2` (and `±2i`, where `α = 0`) below which `γ` is rejected.
pub const EXCLUDED_TOLERANCE: f64 = 1e-8;
/// Singular values below this fraction of the largest span the null space.
pub const NULL_TOLERANCE: f64 = 1e-9;
/// Largest `|tr T − τ|`, relative to `max(1, |τ|)`, accepted for the sign of `T`.
pub const COMPONENT_TOLERANCE: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PtbError {
    #[error("gamma = {gamma} lies on an excluded locus")]
    ExcludedLocus { gamma: Complex64 },
    #[error("the equations for T have a {nullity}-dimensional solution space, expected 1")]
    WrongComponentOrReducible { nullity: usize },
    #[error("tr T = {trace} matches neither sign of tau = {tau}")]
    ComponentMismatch { trace: Complex64, tau: Complex64 },
    #[error("{which} has trace ±2")]
    BranchDegeneracy { which: &'static str },
    #[error("inconclusive limit: {0}")]
    InconclusiveLimit(String),
    #[error(transparent)]
    Sl2(#[from] Sl2Error),
    #[error(transparent)]
    Root(#[from] RootError),
}

/// Which square root of `(γ² + 4)/2` is `α`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Sheet {
    Principal,
    /// `(−α, −β)`
    Negated,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CharacterPoint {
    pub sheet: Sheet,
    #[serde(with = "json::complex")]
    pub alpha: Complex64,
    #[serde(with = "json::complex")]
    pub beta: Complex64,
    #[serde(with = "json::complex")]
    pub gamma: Complex64,
    #[serde(with = "json::complex")]
    pub tau: Complex64,
    #[serde(with = "json::complex")]
    pub tr_at: Complex64,
    #[serde(with = "json::complex")]
    pub tr_bt: Complex64,
    #[serde(with = "json::complex")]
    pub tr_abt: Complex64,
    #[serde(with = "json::complex")]
    pub tr_lt: Complex64,
    /// `tr [A, B]`
    #[serde(with = "json::complex")]
    pub tr_l: Complex64,
}

/// Moduli of the defining relations at a point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Relations {
    /// `2α − βγ`
    pub alpha_beta: f64,
    /// `2β − α(αβ − γ)`
    pub beta_alpha: f64,
    /// `2α² − γ² − 4`
    pub curve: f64,
    /// `2τ + iγ²`
    pub component: f64,
    /// `β²γ² − 2γ² − 8`
    pub p: f64,
}

impl Relations {
    pub fn max(&self) -> f64 {
        [self.alpha_beta, self.beta_alpha, self.curve, self.component, self.p]
            .into_iter()
            .fold(0.0, f64::max)
    }
}

impl CharacterPoint {
    pub fn relations(&self) -> Relations {
        let (a, b, g, t) = (self.alpha, self.beta, self.gamma, self.tau);
        let i = Complex64::i();
        Relations {
            alpha_beta: (2.0 * a - b * g).norm(),
            beta_alpha: (2.0 * b - a * (a * b - g)).norm(),
            curve: (2.0 * a * a - g * g - 4.0).norm(),
            component: (2.0 * t + i * g * g).norm(),
            p: (b * b * g * g - 2.0 * g * g - 8.0).norm(),
        }
    }
}

/// The point of `X₀` over `γ` on the principal sheet.
pub fn x0_point(gamma: Complex64) -> Result<CharacterPoint, PtbError> {
    x0_point_on(gamma, Sheet::Principal)
}

pub fn x0_point_on(gamma: Complex64, sheet: Sheet) -> Result<CharacterPoint, PtbError> {
    let near = |w: Complex64| (gamma - w).norm() < EXCLUDED_TOLERANCE;
    let two = Complex64::new(2.0, 0.0);
    if !gamma.is_finite() || [Complex64::new(0.0, 0.0), two, -two, 2.0 * Complex64::i(), -2.0 * Complex64::i()].into_iter().any(near) {
        return Err(PtbError::ExcludedLocus { gamma });
    }
    let mut alpha = ((gamma * gamma + 4.0) / 2.0).sqrt();
    if sheet == Sheet::Negated {
        alpha = -alpha;
    }
    let beta = 2.0 * alpha / gamma;
    let tau = -Complex64::i() * gamma * gamma / 2.0;
    Ok(CharacterPoint {
        sheet,
        alpha,
        beta,
        gamma,
        tau,
        tr_at: beta / gamma * tau,
        tr_bt: 2.0 * beta * (alpha * alpha - 3.0) * tau / (gamma * gamma),
        tr_abt: 2.0 * tau / gamma,
        tr_lt: -4.0 / tau,
        tr_l: commutator_trace().eval(alpha, beta, gamma),
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PtbRepresentation {
    pub a: Mat2,
    pub b: Mat2,
    pub t: Mat2,
    /// `B⁻¹A⁻¹B⁻¹`
    pub phi_a: Mat2,
    /// `BA(B⁻¹A⁻¹B⁻¹)³`
    pub phi_b: Mat2,
}

impl PtbRepresentation {
    /// `L = ABA⁻¹B⁻¹`, the boundary of the fiber.
    pub fn l(&self) -> Mat2 {
        self.a * self.b * self.a.inverse() * self.b.inverse()
    }
}

/// Images of `φ(a)`, `φ(b)` under `a ↦ A`, `b ↦ B`.
pub fn monodromy_images(a: &Mat2, b: &Mat2) -> (Mat2, Mat2) {
    let phi_a = b.inverse() * a.inverse() * b.inverse();
    let phi_b = *b * *a * phi_a.pow(3);
    (phi_a, phi_b)
}

/// Rows of `T X − P T = 0` in the unknowns `vec(T)` (row-major).
fn conjugacy_rows(x: &Mat2, px: &Mat2, rows: &mut Vec<[Complex64; 4]>) {
    for r in 0..2 {
        for c in 0..2 {
            let mut row = [Complex64::new(0.0, 0.0); 4];
            for k in 0..2 {
                row[r * 2 + k] += x.m[k][c];
                row[k * 2 + c] -= px.m[r][k];
            }
            rows.push(row);
        }
    }
}

/// Solve `T A = φ(a) T`, `T B = φ(b) T` for `T ∈ SL(2,C)` with `tr T = τ`.
pub fn build_representation(p: &CharacterPoint) -> Result<PtbRepresentation, PtbError> {
    let pair = make_fundamental_pair(p.alpha, p.beta, p.gamma)?;
    let (a, b) = (pair.a, pair.b);
    let (phi_a, phi_b) = monodromy_images(&a, &b);

    let mut rows = Vec::with_capacity(8);
    conjugacy_rows(&a, &phi_a, &mut rows);
    conjugacy_rows(&b, &phi_b, &mut rows);
    let m = DMatrix::from_fn(8, 4, |i, j| {
        let scale = rows[i].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if scale > 0.0 {
            rows[i][j] / scale
        } else {
            rows[i][j]
        }
    });
    let svd = m.svd(false, true);
    let sv = &svd.singular_values;
    let smax = sv.max();
    let nullity = sv.iter().filter(|&&s| s <= NULL_TOLERANCE * smax).count();
    if nullity != 1 {
        return Err(PtbError::WrongComponentOrReducible { nullity });
    }
    let k = sv.imin();
    let v_t = svd.v_t.expect("requested V^H");
    let n = |j: usize| v_t[(k, j)].conj();
    let raw = Mat2::new(n(0), n(1), n(2), n(3));
    let mut t = raw.scale(raw.det().sqrt().inv());
    let trace = t.trace();
    if (trace + p.tau).norm() < (trace - p.tau).norm() {
        t = -t;
    }
    if (t.trace() - p.tau).norm() > COMPONENT_TOLERANCE * p.tau.norm().max(1.0) {
        return Err(PtbError::ComponentMismatch { trace: t.trace(), tau: p.tau });
    }
    Ok(PtbRepresentation { a, b, t, phi_a, phi_b })
}

/// How far a representation is from satisfying the group relations.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RepresentationResiduals {
    /// Largest `|det − 1|` over `A`, `B`, `T`.
    pub det: f64,
    /// `‖T A T⁻¹ − φ(a)‖ / max(1, ‖φ(a)‖)`, entrywise max norm.
    pub conj_a: f64,
    pub conj_b: f64,
    /// `|tr φ(ab) − γ|`
    pub relation_ab: f64,
    /// `|tr T − τ|`
    pub trace_t: f64,
}

impl RepresentationResiduals {
    pub fn max(&self) -> f64 {
        [self.det, self.conj_a, self.conj_b, self.relation_ab, self.trace_t]
            .into_iter()
            .fold(0.0, f64::max)
    }
}

fn max_entry(m: &Mat2) -> f64 {
    m.m.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn check_representation(p: &CharacterPoint, r: &PtbRepresentation) -> RepresentationResiduals {
    let t_inv = r.t.inverse();
    let conj = |x: &Mat2, px: &Mat2| (r.t * *x * t_inv).max_diff(px) / max_entry(px).max(1.0);
    RepresentationResiduals {
        det: [r.a, r.b, r.t].iter().map(|m| (m.det() - 1.0).norm()).fold(0.0, f64::max),
        conj_a: conj(&r.a, &r.phi_a),
        conj_b: conj(&r.b, &r.phi_b),
        relation_ab: ((r.phi_a * r.phi_b).trace() - p.gamma).norm(),
        trace_t: (r.t.trace() - p.tau).norm(),
    }
}

/// Matrix traces against the closed forms on `X₀`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StarResiduals {
    /// `|tr AT − (β/γ)τ|`
    pub tr_at: f64,
    /// `|tr BT − 2β(α² − 3)τ/γ²|`
    pub tr_bt: f64,
    /// `|tr ABT − 2τ/γ|`
    pub tr_abt: f64,
    /// `|tr LT + 4/τ|`
    pub tr_lt: f64,
    /// `|4 (tr T)² + γ⁴|`
    pub tau_squared: f64,
}

impl StarResiduals {
    pub fn max(&self) -> f64 {
        [self.tr_at, self.tr_bt, self.tr_abt, self.tr_lt, self.tau_squared]
            .into_iter()
            .fold(0.0, f64::max)
    }
}

pub fn verify_star_system(p: &CharacterPoint, r: &PtbRepresentation) -> StarResiduals {
    let t = r.t;
    let tr_t = t.trace();
    StarResiduals {
        tr_at: ((r.a * t).trace() - p.tr_at).norm(),
        tr_bt: ((r.b * t).trace() - p.tr_bt).norm(),
        tr_abt: ((r.a * r.b * t).trace() - p.tr_abt).norm(),
        tr_lt: ((r.l() * t).trace() - p.tr_lt).norm(),
        tau_squared: (4.0 * tr_t * tr_t + p.gamma.powu(4)).norm(),
    }
}

/// `|xy + ix + iy + 1|` for each choice of eigenvalue `x` of `T` and `y` of
/// `LT`, in the order `(x₀,y₀), (x₀,y₁), (x₁,y₀), (x₁,y₁)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PlaneCurveResidual {
    pub residuals: [f64; 4],
    pub min: f64,
}

pub fn plane_curve_check(r: &PtbRepresentation) -> Result<PlaneCurveResidual, PtbError> {
    let lt = r.l() * r.t;
    let parabolic = |m: &Mat2| {
        let tr = m.trace();
        (tr - 2.0).norm() < EXCLUDED_TOLERANCE || (tr + 2.0).norm() < EXCLUDED_TOLERANCE
    };
    if parabolic(&r.t) {
        return Err(PtbError::BranchDegeneracy { which: "T" });
    }
    if parabolic(&lt) {
        return Err(PtbError::BranchDegeneracy { which: "LT" });
    }
    let i = Complex64::i();
    let mut residuals = [0.0; 4];
    for (n, (x, y)) in r
        .t
        .eigenvalues()
        .into_iter()
        .flat_map(|x| lt.eigenvalues().into_iter().map(move |y| (x, y)))
        .enumerate()
    {
        residuals[n] = (x * y + i * x + i * y + 1.0).norm();
    }
    let min = residuals.into_iter().fold(f64::INFINITY, f64::min);
    Ok(PlaneCurveResidual { residuals, min })
}

/// `tr(A²T)`, which is `±2i` on `X₀`.
pub fn a2t_trace(r: &PtbRepresentation) -> Complex64 {
    (r.a * r.a * r.t).trace()
}
