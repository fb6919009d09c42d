use std::collections::BTreeMap;
use std::time::Instant;

use ideal_roots::deformation::{
    apply_slots, continue_filling, holonomy, solve_complete, tangent_nullity, volume, ContinuationOptions,
    DegenerationReport, EquationSystem, Outcome, ShapeAssignment, SolverOptions,
};
use ideal_roots::expr::parse_complex_list;
use ideal_roots::triangulation::{compute_edge_classes, parse_triangulation_file, Slot, TriangulationFile};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::report::{
    CommandResult, RunReport, SearchResult, SearchRow, SolveResult, TangentResult, Tolerances, ValidateResult,
};
use crate::CliError;

/// Which edge equations to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    /// The equations written in the file.
    Explicit,
    /// Equations built from the gluing table.
    Derived,
}

/// Numerical settings shared by all commands.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Settings {
    pub continuation: ContinuationOptions,
    /// Relative singular-value cutoff for tangent ranks.
    pub rank_tolerance: f64,
}

impl Default for Settings {
    fn default() -> Self {
        Settings {
            continuation: ContinuationOptions::default(),
            rank_tolerance: 1e-9,
        }
    }
}

impl Settings {
    pub fn new(tol: Option<f64>, max_steps: Option<usize>) -> Settings {
        let mut s = Settings::default();
        if let Some(t) = tol {
            s.continuation.solver.tolerance = t;
        }
        if let Some(m) = max_steps {
            s.continuation.max_steps = m;
        }
        s
    }

    pub fn solver(&self) -> SolverOptions {
        self.continuation.solver
    }

    pub fn tolerances(&self) -> Tolerances {
        Tolerances {
            newton: self.continuation.solver.tolerance,
            degeneracy: self.continuation.solver.degeneracy,
            root: self.continuation.root_tolerance,
        }
    }
}

fn report(command: &str, input: &str, settings: &Settings, start: Instant, result: CommandResult) -> RunReport {
    RunReport {
        command: command.to_string(),
        input: input.to_string(),
        tolerances: settings.tolerances(),
        result,
        wall_time_s: start.elapsed().as_secs_f64(),
    }
}

pub fn load(path: &str) -> Result<TriangulationFile, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_string(),
        source,
    })?;
    parse_triangulation_file(&text).map_err(|source| CliError::Parse {
        path: path.to_string(),
        source,
    })
}

/// The equation system for `mode`, defaulting to the file's equations when
/// it has any. Slots are present when the system is relabeled from the file.
struct System {
    mode: Mode,
    sys: EquationSystem,
    slots: Option<Vec<Slot>>,
}

impl System {
    fn new(file: &TriangulationFile, mode: Option<Mode>) -> Result<System, CliError> {
        let mode = mode.unwrap_or(if file.equations.is_empty() { Mode::Derived } else { Mode::Explicit });
        Ok(match mode {
            Mode::Explicit => System {
                mode,
                sys: EquationSystem::explicit(file)?,
                slots: None,
            },
            Mode::Derived => {
                let (sys, slots) = EquationSystem::derived(file)?;
                System { mode, sys, slots }
            }
        })
    }

    /// File labeling to system labeling.
    fn to_system(&self, s: &ShapeAssignment) -> ShapeAssignment {
        match &self.slots {
            Some(slots) => {
                let inverse: Vec<Slot> = slots
                    .iter()
                    .map(|s| match s {
                        Slot::Z => Slot::Z,
                        Slot::ZPrime => Slot::ZDoublePrime,
                        Slot::ZDoublePrime => Slot::ZPrime,
                    })
                    .collect();
                apply_slots(s, &inverse)
            }
            None => s.clone(),
        }
    }

    /// System labeling to file labeling.
    fn to_file(&self, s: &ShapeAssignment) -> ShapeAssignment {
        match &self.slots {
            Some(slots) => apply_slots(s, slots),
            None => s.clone(),
        }
    }
}

/// Shapes from `--seed`/`--at` text, the file's seed, or the regular
/// tetrahedron, in that order; always given in the file's labeling.
fn shapes_arg(
    flag: &'static str,
    text: Option<&str>,
    file: &TriangulationFile,
    system: &System,
) -> Result<ShapeAssignment, CliError> {
    let n = file.triangulation.len();
    let given = match text {
        Some(t) => Some(parse_complex_list(t).map_err(|source| CliError::Expr { flag, source })?),
        None => file.seed.clone(),
    };
    match given {
        Some(v) if v.len() != n => Err(CliError::Usage(format!("--{flag} has {} shapes, expected {n}", v.len()))),
        Some(v) => Ok(system.to_system(&ShapeAssignment::new(v))),
        None => Ok(ShapeAssignment::regular(n)),
    }
}

pub fn cmd_validate(path: &str, settings: &Settings) -> Result<RunReport, CliError> {
    let start = Instant::now();
    let file = load(path)?;
    let classes = compute_edge_classes(&file.triangulation).map_err(|e| CliError::Usage(format!("{path}: {e}")))?;
    let derived = EquationSystem::derived(&file);
    let result = ValidateResult {
        name: file.triangulation.name().to_string(),
        tetrahedra: file.triangulation.len(),
        edge_classes: classes.len(),
        edge_valences: classes.iter().map(|c| c.valence()).collect(),
        orientable: file.orientable(),
        equations: file.equations.iter().map(|e| e.label.clone()).collect(),
        curves: file.curves.iter().map(|c| c.label.clone()).collect(),
        has_seed: file.seed.is_some(),
        derived_mode: derived.is_ok(),
        labeling: derived.ok().and_then(|(_, slots)| slots),
    };
    Ok(report("validate", path, settings, start, CommandResult::Validate(result)))
}

pub fn cmd_solve(path: &str, mode: Option<Mode>, seed: Option<&str>, settings: &Settings) -> Result<RunReport, CliError> {
    let start = Instant::now();
    let file = load(path)?;
    let system = System::new(&file, mode)?;
    let seed = shapes_arg("seed", seed, &file, &system)?;
    let sol = solve_complete(&system.sys, &seed, &settings.solver())?;
    let mut holonomies = BTreeMap::new();
    for c in &system.sys.curves {
        holonomies.insert(c.label.clone(), holonomy(&system.sys, &c.label, &sol.shapes)?);
    }
    let result = SolveResult {
        mode: system.mode,
        file_shapes: system.to_file(&sol.shapes),
        volume: volume(&sol.shapes),
        shapes: sol.shapes,
        iterations: sol.iterations,
        residual: sol.residual,
        holonomies,
    };
    Ok(report("solve", path, settings, start, CommandResult::Solve(result)))
}

pub fn cmd_fill(
    path: &str,
    curve: &str,
    n: u32,
    mode: Option<Mode>,
    seed: Option<&str>,
    settings: &Settings,
) -> Result<RunReport, CliError> {
    let start = Instant::now();
    let file = load(path)?;
    let system = System::new(&file, mode)?;
    system.sys.curve(curve)?;
    let seed = shapes_arg("seed", seed, &file, &system)?;
    let complete = solve_complete(&system.sys, &seed, &settings.solver())?;
    let rep = continue_filling(&system.sys, curve, n, &complete.shapes, &settings.continuation)?;
    Ok(report("fill", path, settings, start, CommandResult::Fill(rep)))
}

fn verdict(rep: &DegenerationReport) -> String {
    match rep.outcome {
        Outcome::HyperbolicSolution => "hyperbolic".to_string(),
        Outcome::Inconclusive => "inconclusive".to_string(),
        Outcome::IdealPointDegeneration => match rep.root_of_unity.map(|r| r.order) {
            Some(1 | 2) => "trivial root ±1".to_string(),
            Some(4) => "fourth root ±i".to_string(),
            Some(6) => "sixth root".to_string(),
            Some(k) => format!("root of order {k}"),
            None => "root not identified".to_string(),
        },
    }
}

/// Fill every curve (or just `curves`) with every order, in parallel.
pub fn cmd_search(
    path: &str,
    orders: &[u32],
    curves: Option<&[String]>,
    mode: Option<Mode>,
    seed: Option<&str>,
    settings: &Settings,
) -> Result<RunReport, CliError> {
    let start = Instant::now();
    let file = load(path)?;
    let system = System::new(&file, mode)?;
    let labels: Vec<String> = match curves {
        Some(c) => {
            for l in c {
                system.sys.curve(l)?;
            }
            c.to_vec()
        }
        None => system.sys.curves.iter().map(|c| c.label.clone()).collect(),
    };
    let seed = shapes_arg("seed", seed, &file, &system)?;
    let complete = solve_complete(&system.sys, &seed, &settings.solver())?;
    let jobs: Vec<(String, u32)> = labels.iter().flat_map(|l| orders.iter().map(move |&n| (l.clone(), n))).collect();
    let mut rows: Vec<SearchRow> = jobs
        .par_iter()
        .map(|(curve, n)| match continue_filling(&system.sys, curve, *n, &complete.shapes, &settings.continuation) {
            Ok(rep) => SearchRow {
                curve: curve.clone(),
                order: *n,
                outcome: Some(rep.outcome),
                root_order: rep.root_of_unity.map(|r| r.order),
                lambda: rep.root_of_unity.map(|r| r.lambda),
                volume: Some(rep.volume),
                verdict: verdict(&rep),
                error: None,
            },
            Err(e) => SearchRow {
                curve: curve.clone(),
                order: *n,
                outcome: None,
                root_order: None,
                lambda: None,
                volume: None,
                verdict: "error".to_string(),
                error: Some(e.to_string()),
            },
        })
        .collect();
    rows.sort_by(|a, b| (&a.curve, a.order).cmp(&(&b.curve, b.order)));
    let result = SearchResult {
        mode: system.mode,
        complete_volume: volume(&complete.shapes),
        rows,
    };
    Ok(report("search", path, settings, start, CommandResult::Search(result)))
}

pub fn cmd_tangent(path: &str, at: &str, mode: Option<Mode>, settings: &Settings) -> Result<RunReport, CliError> {
    let start = Instant::now();
    let file = load(path)?;
    let system = System::new(&file, mode)?;
    let shapes = shapes_arg("at", Some(at), &file, &system)?;
    let rank = tangent_nullity(&system.sys, &shapes, settings.rank_tolerance)?;
    let result = TangentResult {
        mode: system.mode,
        shapes,
        rank_tolerance: settings.rank_tolerance,
        singular_values: rank.singular_values,
        nullity: rank.nullity,
        gap_ratio: rank.gap_ratio,
    };
    Ok(report("tangent", path, settings, start, CommandResult::Tangent(result)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use ideal_roots::Complex64;

    const M137: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/../../data/m137.tri");

    #[test]
    fn settings_override_defaults() {
        let s = Settings::new(Some(1e-10), Some(42));
        assert_eq!(s.tolerances().newton, 1e-10);
        assert_eq!(s.continuation.max_steps, 42);
        assert_eq!(Settings::new(None, None), Settings::default());
    }

    #[test]
    fn labeling_conversions_are_inverse() {
        let file = load(M137).unwrap();
        let system = System::new(&file, Some(Mode::Derived)).unwrap();
        assert!(system.slots.is_some());
        let w = ShapeAssignment::new(vec![Complex64::new(0.3, 0.7), Complex64::new(1.2, 0.4), Complex64::new(-0.5, 2.0), Complex64::new(0.1, 0.1)]);
        let back = system.to_file(&system.to_system(&w));
        for (a, b) in back.shapes.iter().zip(&w.shapes) {
            assert!((a - b).norm() < 1e-14);
        }
    }

    #[test]
    fn mode_defaults_to_the_file_equations() {
        let file = load(M137).unwrap();
        assert_eq!(System::new(&file, None).unwrap().mode, Mode::Explicit);
    }

    #[test]
    fn search_verdicts() {
        let rep = match cmd_search(M137, &[3], Some(&["alpha".to_string()]), None, None, &Settings::default()).unwrap().result {
            CommandResult::Search(s) => s,
            _ => unreachable!(),
        };
        assert_eq!(rep.rows.len(), 1);
        assert_eq!(rep.rows[0].verdict, "sixth root");
    }
}
