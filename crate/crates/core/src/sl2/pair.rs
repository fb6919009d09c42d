use num_complex::Complex64;

use super::reduce::commutator_trace;
use super::{Mat2, Sl2Error};

/// `|tr[A,B] − 2|` below this counts as reducible.
pub const REDUCIBLE_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FundamentalPair {
    pub a: Mat2,
    pub b: Mat2,
    /// `tr A = ±2` or `tr B = ±2`: the eigenvalue is `±1` and the diagonal
    /// entry does not separate the two eigenvectors.
    pub branch_degenerate: bool,
}

/// The root `x` of `x + 1/x = t` given by `(t + √(t² − 4))/2`, with the
/// square root taken in the closed upper half plane (nonnegative real part
/// on the real axis).
pub fn eigenvalue_branch(t: Complex64) -> Complex64 {
    let mut s = (t * t - 4.0).sqrt();
    if s.im < 0.0 || (s.im == 0.0 && s.re < 0.0) {
        s = -s;
    }
    (t + s) / 2.0
}

/// `A = ((x, 1), (0, 1/x))`, `B = ((y, 0), (z, 1/y))` with `tr A = α`,
/// `tr B = β`, `tr AB = γ`.
pub fn make_fundamental_pair(alpha: Complex64, beta: Complex64, gamma: Complex64) -> Result<FundamentalPair, Sl2Error> {
    let kappa = commutator_trace().eval(alpha, beta, gamma);
    if (kappa - 2.0).norm() < REDUCIBLE_TOLERANCE {
        return Err(Sl2Error::ReducibleCharacter);
    }
    let x = eigenvalue_branch(alpha);
    let y = eigenvalue_branch(beta);
    let z = gamma - x * y - (x * y).inv();
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    let near_pm2 = |t: Complex64| (t - 2.0).norm() < REDUCIBLE_TOLERANCE || (t + 2.0).norm() < REDUCIBLE_TOLERANCE;
    Ok(FundamentalPair {
        a: Mat2::new(x, one, zero, x.inv()),
        b: Mat2::new(y, zero, z, y.inv()),
        branch_degenerate: near_pm2(alpha) || near_pm2(beta),
    })
}
