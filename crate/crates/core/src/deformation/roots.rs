use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::json;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RootError {
    #[error("|h| = {modulus} is not within tolerance of 1")]
    NotUnitModulus { modulus: f64 },
    #[error("no order up to {max_order} makes lambda^n = 1")]
    OrderNotFound { max_order: u32 },
}

/// The other square root `−λ` of the same holonomy.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AlternateRoot {
    #[serde(with = "json::complex")]
    pub lambda: Complex64,
    /// `None` when no order up to the search bound works.
    pub order: Option<u32>,
    #[serde(with = "json::complex")]
    pub trace: Complex64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RootOfUnity {
    #[serde(with = "json::complex")]
    pub lambda: Complex64,
    pub order: u32,
    /// `λ + 1/λ`
    #[serde(with = "json::complex")]
    pub trace: Complex64,
    pub alternate: AlternateRoot,
}

fn minimal_order(lambda: Complex64, max_order: u32, tol: f64) -> Option<u32> {
    let one = Complex64::new(1.0, 0.0);
    let mut power = one;
    for k in 1..=max_order {
        power *= lambda;
        if (power - one).norm() < tol {
            return Some(k);
        }
    }
    None
}

/// Recover the eigenvalue `λ` with `λ² = h` and find its order.
///
/// Without a hint `λ` is the principal square root; with a trace hint the
/// sign whose `λ + 1/λ` is closer to the hint wins. `λ` is normalized onto
/// the unit circle. The other sign is reported as the alternate.
pub fn detect_root_of_unity(
    h: Complex64,
    finite_trace_hint: Option<Complex64>,
    max_order: u32,
    tol: f64,
) -> Result<RootOfUnity, RootError> {
    let modulus = h.norm();
    if !((modulus - 1.0).abs() <= tol) {
        return Err(RootError::NotUnitModulus { modulus });
    }
    let mut lambda = (h / modulus).sqrt();
    lambda /= lambda.norm();
    if let Some(hint) = finite_trace_hint {
        let tr = |l: Complex64| l + l.inv();
        if (tr(-lambda) - hint).norm() < (tr(lambda) - hint).norm() {
            lambda = -lambda;
        }
    }
    let order = minimal_order(lambda, max_order, tol).ok_or(RootError::OrderNotFound { max_order })?;
    let alt = -lambda;
    Ok(RootOfUnity {
        lambda,
        order,
        trace: lambda + lambda.inv(),
        alternate: AlternateRoot {
            lambda: alt,
            order: minimal_order(alt, max_order, tol),
            trace: alt + alt.inv(),
        },
    })
}
