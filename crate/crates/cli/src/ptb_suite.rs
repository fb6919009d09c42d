use std::f64::consts::TAU;
use std::time::Instant;

use ideal_roots::json;
use ideal_roots::ptb::{
    a2t_trace, build_representation, check_representation, find_complete_character, ideal_point_limits,
    plane_curve_check, verify_star_system, x0_point_on, CharacterPoint, CompleteCharacters, IdealDirection,
    IdealPointReport, PlaneCurveResidual, RepresentationResiduals, Sheet, StarResiduals,
};
use ideal_roots::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::commands::Settings;
use crate::report::{CommandResult, RunReport};
use crate::CliError;

/// Every residual in the suite must be below this.
pub const PTB_TOLERANCE: f64 = 1e-8;
/// Decades sampled toward each ideal point.
pub const LIMIT_DECADES: u32 = 6;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PtbSample {
    pub point: CharacterPoint,
    #[serde(with = "json::complex")]
    pub matrix_tr_t: Complex64,
    pub representation: RepresentationResiduals,
    pub star: StarResiduals,
    pub plane_curve: PlaneCurveResidual,
    #[serde(with = "json::complex")]
    pub a2t: Complex64,
    /// `| |tr A²T| − 2 |` plus `|Re tr A²T|`.
    pub a2t_residual: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LimitSummary {
    pub report: IdealPointReport,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PtbSuite {
    pub seed: u64,
    pub tolerance: f64,
    pub samples: Vec<PtbSample>,
    pub ideal_points: Vec<LimitSummary>,
    pub complete: CompleteCharacters,
    pub complete_passed: bool,
    pub passed: bool,
}

/// `γ` uniformly in angle and radius on `0.3 < |γ| < 3`, kept away from
/// `±2` and `±2i`.
fn annulus_gamma(rng: &mut ChaCha8Rng) -> Complex64 {
    loop {
        let g = Complex64::from_polar(rng.random_range(0.3..3.0), rng.random_range(0.0..TAU));
        if (g - 2.0).norm() > 0.05 && (g + 2.0).norm() > 0.05 && (g * g + 4.0).norm() > 0.05 {
            return g;
        }
    }
}

pub fn sample(gamma: Complex64, sheet: Sheet) -> Result<PtbSample, CliError> {
    let point = x0_point_on(gamma, sheet)?;
    let rep = build_representation(&point)?;
    let representation = check_representation(&point, &rep);
    let star = verify_star_system(&point, &rep);
    let plane_curve = plane_curve_check(&rep)?;
    let a2t = a2t_trace(&rep);
    let a2t_residual = (a2t.norm() - 2.0).abs() + a2t.re.abs();
    let passed = representation.max() < PTB_TOLERANCE
        && star.max() < PTB_TOLERANCE
        && plane_curve.min < PTB_TOLERANCE
        && a2t_residual < PTB_TOLERANCE
        && point.relations().max() < 1e-9;
    Ok(PtbSample {
        point,
        matrix_tr_t: rep.t.trace(),
        representation,
        star,
        plane_curve,
        a2t,
        a2t_residual,
        passed,
    })
}

/// The first sample is `γ = 1 + i`; the rest are drawn from `seed`, with
/// sheets alternating.
pub fn sample_gammas(count: usize, seed: u64) -> Vec<(Complex64, Sheet)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|k| {
            let g = if k == 0 { Complex64::new(1.0, 1.0) } else { annulus_gamma(&mut rng) };
            (g, if k % 2 == 0 { Sheet::Principal } else { Sheet::Negated })
        })
        .collect()
}

pub fn run_suite(count: usize, seed: u64) -> Result<PtbSuite, CliError> {
    let samples = sample_gammas(count, seed)
        .into_iter()
        .map(|(g, sheet)| sample(g, sheet))
        .collect::<Result<Vec<_>, _>>()?;
    let ideal_points = IdealDirection::ALL
        .into_iter()
        .map(|d| {
            let report = ideal_point_limits(d, &d.samples(LIMIT_DECADES))?;
            let lambda = report.root_of_unity.lambda;
            let passed = report.finite_limit.norm() < 1e-6
                && report.point_error < 1e-6
                && report.root_of_unity.order == 4
                && (lambda - Complex64::i()).norm().min((lambda + Complex64::i()).norm()) < 1e-6;
            Ok(LimitSummary { report, passed })
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    let complete = find_complete_character()?;
    let complete_passed = complete.points.len() == 4
        && complete
            .points
            .iter()
            .all(|c| (c.point.tr_l + 2.0).norm() < 1e-10 && (c.matrix_tr_t.norm() - 2.0).abs() < PTB_TOLERANCE);
    let passed = samples.iter().all(|s| s.passed) && ideal_points.iter().all(|l| l.passed) && complete_passed;
    Ok(PtbSuite {
        seed,
        tolerance: PTB_TOLERANCE,
        samples,
        ideal_points,
        complete,
        complete_passed,
        passed,
    })
}

pub fn cmd_ptb(samples: usize, seed: u64, settings: &Settings) -> Result<RunReport, CliError> {
    let start = Instant::now();
    if samples == 0 {
        return Err(CliError::Usage("--samples must be at least 1".into()));
    }
    let suite = run_suite(samples, seed)?;
    Ok(RunReport {
        command: "ptb".into(),
        input: "builtin:ptb".into(),
        tolerances: settings.tolerances(),
        result: CommandResult::Ptb(suite),
        wall_time_s: start.elapsed().as_secs_f64(),
    })
}
