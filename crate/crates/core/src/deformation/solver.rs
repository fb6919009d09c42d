use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::chart::{self, Coord};
use super::eval::{product, product_gradient};
use super::{DeformationError, EquationSystem, ShapeAssignment, DEFAULT_DEGENERACY};
use crate::triangulation::MonomialEquation;

/// Singular values below this fraction of the largest are treated as zero
/// when forming the pseudo-inverse step.
const PINV_RCOND: f64 = 1e-14;
/// Halvings tried per Gauss-Newton step before giving up.
const MAX_BACKTRACK: usize = 30;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolverOptions {
    pub tolerance: f64,
    pub max_iterations: usize,
    pub degeneracy: f64,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            tolerance: 1e-12,
            max_iterations: 50,
            degeneracy: DEFAULT_DEGENERACY,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Solution {
    pub shapes: ShapeAssignment,
    pub iterations: usize,
    pub residual: f64,
}

/// A curve whose holonomy is pinned to `value`.
pub(crate) struct Target<'a> {
    pub curve: &'a MonomialEquation,
    pub value: Complex64,
}

pub(crate) struct Converged {
    pub coords: Vec<Coord>,
    pub iterations: usize,
    pub residual: f64,
}

pub(crate) struct Failed {
    pub iterations: usize,
    pub residual: f64,
}

fn residuals(sys: &EquationSystem, targets: &[Target<'_>], x: &[Coord]) -> Option<DVector<Complex64>> {
    let p = chart::pairs(x);
    let mut out = Vec::with_capacity(sys.equations.len() + targets.len());
    for eq in &sys.equations {
        out.push(product(eq, &p).ok()? - eq.sign.value());
    }
    for t in targets {
        out.push(product(t.curve, &p).ok()? * t.curve.sign.value() - t.value);
    }
    out.iter().all(|r| r.is_finite()).then(|| DVector::from_vec(out))
}

fn jacobian(sys: &EquationSystem, targets: &[Target<'_>], x: &[Coord]) -> Option<DMatrix<Complex64>> {
    let p = chart::pairs(x);
    let rows = sys.equations.len() + targets.len();
    let mut j = DMatrix::zeros(rows, x.len());
    let all = sys
        .equations
        .iter()
        .map(|e| (e, 1.0))
        .chain(targets.iter().map(|t| (t.curve, t.curve.sign.value())));
    for (r, (eq, scale)) in all.enumerate() {
        let g = product_gradient(eq, &p).ok()?;
        for (c, gc) in g.into_iter().enumerate() {
            j[(r, c)] = gc * x[c].dz_du() * scale;
        }
    }
    j.iter().all(|v| v.is_finite()).then_some(j)
}

/// Gauss-Newton on `[edge residuals; h − target]` in chart coordinates, with
/// an SVD pseudo-inverse step and backtracking on the residual norm.
pub(crate) fn gauss_newton(
    sys: &EquationSystem,
    targets: &[Target<'_>],
    start: &[Coord],
    opts: &SolverOptions,
) -> Result<Converged, Failed> {
    let mut x = start.to_vec();
    let Some(mut f) = residuals(sys, targets, &x) else {
        return Err(Failed {
            iterations: 0,
            residual: f64::INFINITY,
        });
    };
    let mut norm = f.norm();
    for it in 0..opts.max_iterations {
        if norm < opts.tolerance {
            return Ok(Converged {
                coords: x,
                iterations: it,
                residual: norm,
            });
        }
        let fail = Failed {
            iterations: it,
            residual: norm,
        };
        let Some(j) = jacobian(sys, targets, &x) else {
            return Err(fail);
        };
        let svd = j.svd(true, true);
        let smax = svd.singular_values.max();
        let Ok(du) = svd.solve(&(-&f), PINV_RCOND * smax) else {
            return Err(fail);
        };
        let mut scale = 1.0;
        let mut accepted = None;
        for _ in 0..MAX_BACKTRACK {
            let trial: Option<Vec<Coord>> = x.iter().zip(du.iter()).map(|(c, d)| c.step(*d * scale)).collect();
            if let Some(trial) = trial {
                if let Some(ft) = residuals(sys, targets, &trial) {
                    let nt = ft.norm();
                    if nt < norm {
                        accepted = Some((trial, ft, nt));
                        break;
                    }
                }
            }
            scale *= 0.5;
        }
        let Some((nx, nf, nn)) = accepted else {
            return Err(fail);
        };
        x = nx;
        f = nf;
        norm = nn;
    }
    if norm < opts.tolerance {
        return Ok(Converged {
            coords: x,
            iterations: opts.max_iterations,
            residual: norm,
        });
    }
    Err(Failed {
        iterations: opts.max_iterations,
        residual: norm,
    })
}

/// Solve for the complete structure: every edge equation holds and every
/// peripheral holonomy equals 1.
///
/// The result must be nondegenerate and positively oriented.
pub fn solve_complete(
    sys: &EquationSystem,
    seed: &ShapeAssignment,
    opts: &SolverOptions,
) -> Result<Solution, DeformationError> {
    sys.check_len(seed)?;
    if sys.curves.is_empty() {
        return Err(DeformationError::MissingCurves);
    }
    let targets: Vec<Target<'_>> = sys
        .curves
        .iter()
        .map(|c| Target {
            curve: c,
            value: Complex64::new(1.0, 0.0),
        })
        .collect();
    let start = chart::coords(&seed.shapes);
    let done = gauss_newton(sys, &targets, &start, opts).map_err(|f| DeformationError::NoConvergence {
        iterations: f.iterations,
        residual: f.residual,
    })?;
    let shapes = ShapeAssignment::new(chart::shapes(&done.coords));
    if !shapes.is_nondegenerate(opts.degeneracy) {
        return Err(DeformationError::DegenerateLimit { shapes });
    }
    if !shapes.is_positively_oriented(opts.degeneracy) {
        return Err(DeformationError::NotPositivelyOriented { shapes });
    }
    Ok(Solution {
        shapes,
        iterations: done.iterations,
        residual: done.residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::triangulation::Sign;

    #[test]
    fn real_solution_is_rejected() {
        // z1 = z2 and -z1 (1 - z1) = 1, so z1^2 - z1 - 1 = 0
        let eqs = vec![MonomialEquation::new("e", vec![1, -1], vec![0, 0], Sign::Plus)];
        let curves = vec![MonomialEquation::new("c", vec![1, 0], vec![1, 0], Sign::Minus)];
        let sys = EquationSystem::new(2, eqs, curves).unwrap();
        let seed = ShapeAssignment::new(vec![Complex64::new(1.6, 0.1), Complex64::new(1.6, 0.1)]);
        let err = solve_complete(&sys, &seed, &SolverOptions::default()).unwrap_err();
        // the solution (1 + √5)/2 is real, so it is not positively oriented
        assert!(matches!(err, DeformationError::NotPositivelyOriented { .. }), "{err:?}");
    }

    #[test]
    fn requires_curves() {
        let sys = EquationSystem::new(1, vec![], vec![]).unwrap();
        assert_eq!(
            solve_complete(&sys, &ShapeAssignment::regular(1), &SolverOptions::default()),
            Err(DeformationError::MissingCurves)
        );
    }

    #[test]
    fn regular_tetrahedron_from_nearby_seed() {
        // z (1 - z) = 1 has the root e^{iπ/3}
        let curves = vec![MonomialEquation::new("c", vec![1], vec![1], Sign::Plus)];
        let sys = EquationSystem::new(1, vec![], curves).unwrap();
        let seed = ShapeAssignment::new(vec![Complex64::new(0.4, 0.7)]);
        let sol = solve_complete(&sys, &seed, &SolverOptions::default()).unwrap();
        let expect = Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_3);
        assert!((sol.shapes.shapes[0] - expect).norm() < 1e-12);
    }
}
