use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::chart::{self, Coord};
use super::eval::{holonomy_at, HolonomyValue};
use super::roots::{detect_root_of_unity, RootOfUnity};
use super::solver::{gauss_newton, SolverOptions, Target};
use super::volume::volume_with;
use super::{Collapse, DeformationError, EquationSystem, ShapeAssignment};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Outcome {
    HyperbolicSolution,
    IdealPointDegeneration,
    Inconclusive,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ContinuationOptions {
    pub solver: SolverOptions,
    pub initial_step: f64,
    /// Declare the path stuck once the step falls below this.
    pub min_step: f64,
    pub max_step: f64,
    pub max_steps: usize,
    /// Holonomy magnitudes above this are reported as poles.
    pub pole_threshold: f64,
    /// A stuck path counts as degenerating if some shape is this close to 0, 1 or ∞.
    pub approach: f64,
    /// Largest chordal move of any shape accepted in one step.
    pub max_jump: f64,
    pub max_order: u32,
    pub root_tolerance: f64,
}

impl Default for ContinuationOptions {
    fn default() -> Self {
        ContinuationOptions {
            solver: SolverOptions::default(),
            initial_step: 0.01,
            min_step: 1e-9,
            max_step: 0.1,
            max_steps: 10_000,
            pole_threshold: 1e6,
            approach: 1e-3,
            max_jump: 0.1,
            max_order: 12,
            root_tolerance: 1e-6,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DegenerationReport {
    pub outcome: Outcome,
    pub curve: String,
    pub order: u32,
    /// Path parameter of the final point; the target there is `exp(2πi t/n)`.
    pub final_t: f64,
    pub final_shapes: ShapeAssignment,
    pub collapsed: Vec<Collapse>,
    pub holonomy_values: BTreeMap<String, HolonomyValue>,
    pub root_of_unity: Option<RootOfUnity>,
    pub volume: f64,
    pub steps_taken: usize,
    pub detail: String,
}

/// Distance on the Riemann sphere, finite at ∞.
fn chordal(a: Complex64, b: Complex64) -> f64 {
    if !a.is_finite() || !b.is_finite() {
        return match (a.is_finite(), b.is_finite()) {
            (false, false) => 0.0,
            (true, _) => 1.0 / (1.0 + a.norm_sqr()).sqrt(),
            (_, true) => 1.0 / (1.0 + b.norm_sqr()).sqrt(),
        };
    }
    (a - b).norm() / ((1.0 + a.norm_sqr()) * (1.0 + b.norm_sqr())).sqrt()
}

fn max_jump(a: &[Coord], b: &[Coord]) -> f64 {
    a.iter().zip(b).map(|(x, y)| chordal(x.z(), y.z())).fold(0.0, f64::max)
}

/// Follow `h_curve = exp(2πi t/n)` for `t` from 0 to 1, starting at a
/// solution with `h_curve = 1`, and classify where the path ends. For
/// `n = 1` the target is held at 1.
///
/// A corrector result that collapses some shape is not accepted (the step
/// is halved instead) but is remembered: if the step later underflows next
/// to it, the path is reported as degenerating there.
pub fn continue_filling(
    sys: &EquationSystem,
    curve: &str,
    n: u32,
    start: &ShapeAssignment,
    opts: &ContinuationOptions,
) -> Result<DegenerationReport, DeformationError> {
    if n == 0 {
        return Err(DeformationError::InvalidOrder);
    }
    sys.check_len(start)?;
    let filled = sys.curve(curve)?;
    let delta = opts.solver.degeneracy;
    // n = 1 is the trivial filling
    let target = |t: f64| {
        if n == 1 {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::from_polar(1.0, 2.0 * PI * t / n as f64)
        }
    };
    let solve = |x: &[Coord], t: f64| {
        let targets = [Target {
            curve: filled,
            value: target(t),
        }];
        gauss_newton(sys, &targets, x, &opts.solver)
    };

    let mut x = solve(&chart::coords(&start.shapes), 0.0)
        .map_err(|f| DeformationError::NoConvergence {
            iterations: f.iterations,
            residual: f.residual,
        })?
        .coords;
    let mut t = 0.0;
    let mut dt = opts.initial_step;
    let mut steps = 0;
    let mut degenerate: Option<(Vec<Coord>, f64)> = None;

    while t < 1.0 && steps < opts.max_steps && dt >= opts.min_step {
        let tn = (t + dt).min(1.0);
        steps += 1;
        let Ok(c) = solve(&x, tn) else {
            dt /= 2.0;
            continue;
        };
        if max_jump(&x, &c.coords) > opts.max_jump {
            dt /= 2.0;
            continue;
        }
        if !ShapeAssignment::new(chart::shapes(&c.coords)).is_nondegenerate(delta) {
            if degenerate.as_ref().is_none_or(|(_, td)| tn >= *td) {
                degenerate = Some((c.coords, tn));
            }
            dt /= 2.0;
            continue;
        }
        x = c.coords;
        t = tn;
        if c.iterations < 4 {
            dt = (dt * 2.0).min(opts.max_step);
        }
    }

    let current = ShapeAssignment::new(chart::shapes(&x));
    let (outcome, coords, final_t, detail) = if t >= 1.0 {
        if current.is_positively_oriented(delta) {
            (Outcome::HyperbolicSolution, x, t, "reached the target holonomy".to_string())
        } else {
            (
                Outcome::Inconclusive,
                x,
                t,
                "reached the target holonomy with mixed orientation".to_string(),
            )
        }
    } else if steps >= opts.max_steps {
        (Outcome::Inconclusive, x, t, format!("step budget of {} exhausted", opts.max_steps))
    } else {
        match degenerate {
            Some((d, td)) if max_jump(&x, &d) <= opts.max_jump => (
                Outcome::IdealPointDegeneration,
                d,
                td,
                "corrector converged onto collapsed shapes; step underflow".to_string(),
            ),
            _ if !current.collapsed(opts.approach).is_empty() => (
                Outcome::IdealPointDegeneration,
                x,
                t,
                "step underflow with shapes approaching 0, 1 or infinity".to_string(),
            ),
            _ => (
                Outcome::Inconclusive,
                x,
                t,
                "step underflow away from degenerate shapes".to_string(),
            ),
        }
    };

    let final_shapes = ShapeAssignment::new(chart::shapes(&coords));
    let mut collapsed = final_shapes.collapsed(delta);
    if outcome == Outcome::IdealPointDegeneration && collapsed.is_empty() {
        collapsed = final_shapes.collapsed(opts.approach);
    }
    let pairs = chart::pairs(&coords);
    let mut holonomy_values = BTreeMap::new();
    let mut skipped = Vec::new();
    for c in &sys.curves {
        match holonomy_at(c, &pairs) {
            Ok(v) => {
                holonomy_values.insert(c.label.clone(), v.with_pole_threshold(opts.pole_threshold));
            }
            Err(_) => skipped.push(c.label.clone()),
        }
    }
    let root_of_unity = if outcome == Outcome::IdealPointDegeneration {
        // the filled curve first, then the rest in label order
        let order = std::iter::once(curve).chain(holonomy_values.keys().map(String::as_str).filter(|l| *l != curve));
        order
            .filter_map(|l| holonomy_values.get(l).and_then(HolonomyValue::finite))
            .find_map(|h| detect_root_of_unity(h, None, opts.max_order, opts.root_tolerance).ok())
    } else {
        None
    };
    let mut detail = detail;
    if !skipped.is_empty() {
        detail.push_str(&format!("; holonomy 0/0 for {}", skipped.join(", ")));
    }
    Ok(DegenerationReport {
        outcome,
        curve: curve.to_string(),
        order: n,
        final_t,
        volume: volume_with(&final_shapes, delta),
        final_shapes,
        collapsed,
        holonomy_values,
        root_of_unity,
        steps_taken: steps,
        detail,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chordal_distance() {
        let inf = Complex64::new(f64::INFINITY, 0.0);
        assert_eq!(chordal(inf, inf), 0.0);
        assert!((chordal(Complex64::new(0.0, 0.0), inf) - 1.0).abs() < 1e-15);
        assert!(chordal(Complex64::new(1e12, 0.0), Complex64::new(-1e12, 0.0)) < 1e-11);
    }

    #[test]
    fn zero_order_is_rejected() {
        let sys = EquationSystem::new(1, vec![], vec![]).unwrap();
        assert_eq!(
            continue_filling(&sys, "x", 0, &ShapeAssignment::regular(1), &ContinuationOptions::default()),
            Err(DeformationError::InvalidOrder)
        );
    }
}
