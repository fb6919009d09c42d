use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{x0_point_on, PtbError, Sheet};
use crate::deformation::{detect_root_of_unity, RootOfUnity};
use crate::json;
use crate::sl2::eigenvalue_branch;

/// The four ends of `X₀`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum IdealDirection {
    /// `γ → 0⁺` with `α → √2`
    GammaToZeroPlus,
    /// `γ → 0⁺` on the negated sheet, `α → −√2`
    GammaToZeroMinus,
    /// `γ → +∞`, `γ/α → √2`
    GammaToInfinityPlus,
    /// `γ → −∞`, `γ/α → −√2`
    GammaToInfinityMinus,
}

impl IdealDirection {
    pub const ALL: [IdealDirection; 4] = [
        IdealDirection::GammaToZeroPlus,
        IdealDirection::GammaToZeroMinus,
        IdealDirection::GammaToInfinityPlus,
        IdealDirection::GammaToInfinityMinus,
    ];

    fn to_zero(self) -> bool {
        matches!(self, IdealDirection::GammaToZeroPlus | IdealDirection::GammaToZeroMinus)
    }

    fn sheet(self) -> Sheet {
        match self {
            IdealDirection::GammaToZeroMinus => Sheet::Negated,
            _ => Sheet::Principal,
        }
    }

    /// `γ = ±10^{∓k}` for `k = 1..=k_max`.
    pub fn samples(self, k_max: u32) -> Vec<Complex64> {
        (1..=k_max as i32)
            .map(|k| match self {
                IdealDirection::GammaToZeroPlus | IdealDirection::GammaToZeroMinus => 10f64.powi(-k),
                IdealDirection::GammaToInfinityPlus => 10f64.powi(k),
                IdealDirection::GammaToInfinityMinus => -(10f64.powi(k)),
            })
            .map(|g| Complex64::new(g, 0.0))
            .collect()
    }

    /// The limit in homogeneous coordinates `(α : γ : 1)`.
    pub fn expected_point(self) -> [Complex64; 3] {
        let r2 = std::f64::consts::SQRT_2;
        let (x, y, w) = match self {
            IdealDirection::GammaToZeroPlus => (r2, 0.0, 1.0),
            IdealDirection::GammaToZeroMinus => (-r2, 0.0, 1.0),
            IdealDirection::GammaToInfinityPlus => (1.0, r2, 0.0),
            IdealDirection::GammaToInfinityMinus => (1.0, -r2, 0.0),
        };
        [x, y, w].map(|v| Complex64::new(v, 0.0))
    }

    /// The peripheral element whose trace stays finite: `t` or `lt`.
    pub fn slope(self) -> &'static str {
        if self.to_zero() {
            "t"
        } else {
            "lt"
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LimitRow {
    #[serde(with = "json::complex")]
    pub gamma: Complex64,
    #[serde(with = "json::complex")]
    pub alpha: Complex64,
    #[serde(with = "json::complex")]
    pub tr_t: Complex64,
    #[serde(with = "json::complex")]
    pub tr_lt: Complex64,
    /// `(α : γ : 1)` scaled so the coordinate that stays bounded away from
    /// zero is the expected one.
    #[serde(with = "json::complex_vec")]
    pub point: Vec<Complex64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdealPointReport {
    pub direction: IdealDirection,
    pub slope: String,
    pub rows: Vec<LimitRow>,
    /// `|tr|` of the finite trace over successive samples; each below the last.
    pub finite_trace: Vec<f64>,
    /// `|tr|` of the other peripheral trace; each above the last.
    pub pole_trace: Vec<f64>,
    /// Extrapolated limit of the finite trace.
    #[serde(with = "json::complex")]
    pub finite_limit: Complex64,
    #[serde(with = "json::complex_vec")]
    pub point_limit: Vec<Complex64>,
    #[serde(with = "json::complex_vec")]
    pub expected_point: Vec<Complex64>,
    pub point_error: f64,
    pub root_of_unity: RootOfUnity,
}

/// Geometric extrapolation from the last three terms of a sequence.
fn extrapolate(seq: &[Complex64]) -> Result<Complex64, PtbError> {
    let n = seq.len();
    let last = seq[n - 1];
    let d2 = last - seq[n - 2];
    let d1 = seq[n - 2] - seq[n - 3];
    if d2.norm() == 0.0 {
        return Ok(last);
    }
    if d1.norm() == 0.0 {
        return Err(PtbError::InconclusiveLimit("sequence moved after standing still".into()));
    }
    let r = d2 / d1;
    if r.norm() >= 1.0 {
        return Err(PtbError::InconclusiveLimit(format!("successive differences grow by {:.3e}", r.norm())));
    }
    Ok(last + d2 * r / (1.0 - r))
}

fn strictly_monotone(v: &[f64], decreasing: bool) -> bool {
    v.windows(2).all(|w| if decreasing { w[1] < w[0] } else { w[1] > w[0] })
}

/// Follow `X₀` through `samples` toward the ideal point in `direction` and
/// identify the limit.
///
/// Rows use the closed-form traces on `X₀`; matrix representations lose
/// all precision this close to an ideal point.
pub fn ideal_point_limits(direction: IdealDirection, samples: &[Complex64]) -> Result<IdealPointReport, PtbError> {
    if samples.len() < 3 {
        return Err(PtbError::InconclusiveLimit(format!("{} samples, need at least 3", samples.len())));
    }
    let magnitudes: Vec<f64> = samples.iter().map(|g| g.norm()).collect();
    if !strictly_monotone(&magnitudes, direction.to_zero()) {
        return Err(PtbError::InconclusiveLimit("|gamma| does not move monotonically toward the end".into()));
    }
    let mut rows = Vec::with_capacity(samples.len());
    for &g in samples {
        let p = x0_point_on(g, direction.sheet())?;
        let point = if direction.to_zero() {
            vec![p.alpha, p.gamma, Complex64::new(1.0, 0.0)]
        } else {
            vec![Complex64::new(1.0, 0.0), p.gamma / p.alpha, p.alpha.inv()]
        };
        rows.push(LimitRow {
            gamma: g,
            alpha: p.alpha,
            tr_t: p.tau,
            tr_lt: p.tr_lt,
            point,
        });
    }
    let (finite, pole): (Vec<Complex64>, Vec<Complex64>) = if direction.to_zero() {
        rows.iter().map(|r| (r.tr_t, r.tr_lt)).unzip()
    } else {
        rows.iter().map(|r| (r.tr_lt, r.tr_t)).unzip()
    };
    let finite_trace: Vec<f64> = finite.iter().map(|z| z.norm()).collect();
    let pole_trace: Vec<f64> = pole.iter().map(|z| z.norm()).collect();
    if !strictly_monotone(&finite_trace, true) {
        return Err(PtbError::InconclusiveLimit(format!("tr {} is not decreasing", direction.slope())));
    }
    if !strictly_monotone(&pole_trace, false) {
        return Err(PtbError::InconclusiveLimit("the other peripheral trace is not growing".into()));
    }
    let finite_limit = extrapolate(&finite)?;
    let point_limit: Vec<Complex64> = (0..3)
        .map(|j| extrapolate(&rows.iter().map(|r| r.point[j]).collect::<Vec<_>>()))
        .collect::<Result<_, _>>()?;
    let expected = direction.expected_point();
    let point_error = point_limit
        .iter()
        .zip(&expected)
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max);

    let lambda = eigenvalue_branch(finite_limit);
    let root_of_unity = detect_root_of_unity(lambda * lambda, Some(finite_limit), 12, 1e-6)?;
    Ok(IdealPointReport {
        direction,
        slope: direction.slope().to_string(),
        rows,
        finite_trace,
        pole_trace,
        finite_limit,
        point_limit,
        expected_point: expected.to_vec(),
        point_error,
        root_of_unity,
    })
}
