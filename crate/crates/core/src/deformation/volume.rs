use std::sync::OnceLock;

use num_complex::Complex64;

use super::{nearest_degenerate, ShapeAssignment, DEFAULT_DEGENERACY};

const SERIES_TERMS: usize = 40;

/// `Bₙ / (n+1)!`, so that `Li₂(z) = Σ cₙ uⁿ⁺¹` with `u = −log(1 − z)`.
fn bernoulli_coefficients() -> &'static [f64; SERIES_TERMS] {
    static COEFFS: OnceLock<[f64; SERIES_TERMS]> = OnceLock::new();
    COEFFS.get_or_init(|| {
        // βₙ = Bₙ/n! from Σ_{k≤n} βₖ/(n+1−k)! = 0 for n ≥ 1
        let mut fact = [1.0f64; SERIES_TERMS + 2];
        for k in 1..fact.len() {
            fact[k] = fact[k - 1] * k as f64;
        }
        let mut beta = [0.0f64; SERIES_TERMS];
        beta[0] = 1.0;
        for n in 1..SERIES_TERMS {
            beta[n] = -(0..n).map(|k| beta[k] / fact[n + 1 - k]).sum::<f64>();
        }
        let mut c = [0.0; SERIES_TERMS];
        for n in 0..SERIES_TERMS {
            c[n] = beta[n] / (n + 1) as f64;
        }
        c
    })
}

/// `Li₂(z)` for `|z| ≤ 1`, `Re z ≤ 1/2`, where `|log(1 − z)| ≤ π/3`.
fn li2_reduced(z: Complex64) -> Complex64 {
    let u = -(Complex64::new(1.0, 0.0) - z).ln();
    let mut power = u;
    let mut sum = Complex64::new(0.0, 0.0);
    for &c in bernoulli_coefficients() {
        sum += power * c;
        power *= u;
    }
    sum
}

/// The Bloch-Wigner dilogarithm `D(z) = Im Li₂(z) + arg(1 − z) log|z|`:
/// the volume of the ideal tetrahedron with shape `z` when `Im z > 0`.
///
/// Zero on the real line, including 0, 1 and ∞.
pub fn bloch_wigner(z: Complex64) -> f64 {
    if z.im == 0.0 || !z.is_finite() {
        return 0.0;
    }
    let one = Complex64::new(1.0, 0.0);
    // D(z) = D(1/(1−z)) = D(1 − 1/z) = −D(1/z) = −D(1−z) = −D(z/(z−1))
    let candidates = [
        (z, 1.0),
        (one / (one - z), 1.0),
        (one - one / z, 1.0),
        (one / z, -1.0),
        (one - z, -1.0),
        (z / (z - one), -1.0),
    ];
    let (w, sign) = candidates
        .into_iter()
        .find(|(w, _)| w.norm() <= 1.0 && w.re <= 0.5)
        .unwrap_or((z, 1.0));
    let d = li2_reduced(w).im + (one - w).arg() * w.norm().ln();
    sign * d
}

/// Sum of `D(zᵢ)`, with shapes within [`DEFAULT_DEGENERACY`] of 0, 1, ∞
/// contributing nothing.
pub fn volume(s: &ShapeAssignment) -> f64 {
    volume_with(s, DEFAULT_DEGENERACY)
}

pub fn volume_with(s: &ShapeAssignment, delta: f64) -> f64 {
    s.shapes
        .iter()
        .map(|&z| {
            let (d, _) = nearest_degenerate(z, Complex64::new(1.0, 0.0) - z);
            if d < delta || !d.is_finite() {
                0.0
            } else {
                bloch_wigner(z)
            }
        })
        .sum()
}
