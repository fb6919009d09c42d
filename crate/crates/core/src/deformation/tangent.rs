use serde::{Deserialize, Serialize};

use super::eval::eval_cleared_jacobian;
use super::{DeformationError, EquationSystem, ShapeAssignment};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TangentSpectrum {
    /// Descending.
    pub singular_values: Vec<f64>,
    /// `tets − rank`, counting singular values below `rank_tol · σ_max` as zero.
    pub nullity: usize,
    /// Smallest retained singular value over the largest discarded one;
    /// `f64::MAX` when nothing is discarded or the discarded ones are exactly 0.
    pub gap_ratio: f64,
}

/// Dimension of the Zariski tangent space of the edge equations at `s`.
///
/// Uses the cleared form `P − sign · Q`, so points with coordinates exactly
/// at 0 or 1 are fine.
pub fn tangent_nullity(
    sys: &EquationSystem,
    s: &ShapeAssignment,
    rank_tol: f64,
) -> Result<TangentSpectrum, DeformationError> {
    let j = eval_cleared_jacobian(sys, s)?;
    let mut sv: Vec<f64> = if j.nrows() == 0 || j.ncols() == 0 {
        Vec::new()
    } else {
        j.singular_values().iter().copied().collect()
    };
    sv.sort_by(|a, b| b.total_cmp(a));
    // a wide Jacobian has fewer singular values than columns
    sv.resize(sys.tet_count().max(sv.len()), 0.0);
    let smax = sv.first().copied().unwrap_or(0.0);
    let rank = sv.iter().filter(|&&x| smax > 0.0 && x > rank_tol * smax).count();
    let gap_ratio = match (rank.checked_sub(1).map(|r| sv[r]), sv.get(rank)) {
        (Some(kept), Some(&dropped)) if dropped > 0.0 => (kept / dropped).min(f64::MAX),
        _ => f64::MAX,
    };
    Ok(TangentSpectrum {
        singular_values: sv,
        nullity: sys.tet_count() - rank,
        gap_ratio,
    })
}
