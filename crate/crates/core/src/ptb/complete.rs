use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{build_representation, x0_point_on, CharacterPoint, PtbError, Sheet};
use crate::json;

/// A point of `X₀` with `tr L = −2`, with `tr T` taken from the matrix.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CompleteCharacter {
    pub point: CharacterPoint,
    #[serde(with = "json::complex")]
    pub matrix_tr_t: Complex64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompleteCharacters {
    pub points: Vec<CompleteCharacter>,
    /// Values of `α²` solving `tr L = 2`, all on the reducible locus.
    #[serde(with = "json::complex_vec")]
    pub rejected_alpha_squared: Vec<Complex64>,
}

/// Points of `X₀` with `tr L = c`, and the `α²` roots that fall on an excluded locus.
///
/// On `X₀`, `tr L = α² − 6 + 2α²/(α² − 2)`, so `tr L = c` becomes
/// `α⁴ − (6 + c)α² + 2(6 + c) = 0`. Each admissible `α²` gives `γ = √(2α² − 4)`
/// and both sheets.
pub fn characters_with_fiber_trace(c: Complex64) -> (Vec<CharacterPoint>, Vec<Complex64>) {
    let s = c + 6.0;
    let disc = (s * s - 8.0 * s).sqrt();
    let mut roots = vec![(s + disc) / 2.0];
    if disc.norm() > 1e-12 {
        roots.push((s - disc) / 2.0);
    }
    let mut points = Vec::new();
    let mut rejected = Vec::new();
    for u in roots {
        let gamma = (2.0 * u - 4.0).sqrt();
        let built: Result<Vec<_>, _> = [Sheet::Principal, Sheet::Negated]
            .into_iter()
            .map(|sheet| x0_point_on(gamma, sheet))
            .collect();
        match built {
            Ok(ps) => points.extend(ps),
            Err(_) => rejected.push(u),
        }
    }
    (points, rejected)
}

/// The characters on `X₀` where the fiber boundary `l` is parabolic.
///
/// `tr L = 2` is the reducible locus; `tr L = −2` gives four points with
/// `α² = 2 ± 2i`, where `tr T = ±2`.
pub fn find_complete_character() -> Result<CompleteCharacters, PtbError> {
    let (found, _) = characters_with_fiber_trace(Complex64::new(-2.0, 0.0));
    let (_, rejected_alpha_squared) = characters_with_fiber_trace(Complex64::new(2.0, 0.0));
    let points = found
        .into_iter()
        .map(|point| {
            let r = build_representation(&point)?;
            Ok(CompleteCharacter {
                point,
                matrix_tr_t: r.t.trace(),
            })
        })
        .collect::<Result<_, PtbError>>()?;
    Ok(CompleteCharacters {
        points,
        rejected_alpha_squared,
    })
}
