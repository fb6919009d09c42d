use std::collections::BTreeMap;

use ideal_roots::deformation::{DegenerationReport, HolonomyValue, Outcome, ShapeAssignment};
use ideal_roots::json;
use ideal_roots::triangulation::Slot;
use ideal_roots::Complex64;
use serde::{Deserialize, Serialize};

use crate::commands::Mode;
use crate::ptb_suite::PtbSuite;
use crate::{EXIT_INCONCLUSIVE, EXIT_NUMERICAL, EXIT_OK};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub newton: f64,
    pub degeneracy: f64,
    pub root: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: String,
    /// File path, or `builtin:ptb`.
    pub input: String,
    pub tolerances: Tolerances,
    pub result: CommandResult,
    pub wall_time_s: f64,
}

impl RunReport {
    pub fn exit_code(&self) -> i32 {
        match &self.result {
            CommandResult::Fill(r) if r.outcome == Outcome::Inconclusive => EXIT_INCONCLUSIVE,
            CommandResult::Search(s) if s.rows.iter().any(|r| r.outcome != Some(Outcome::HyperbolicSolution) && r.outcome != Some(Outcome::IdealPointDegeneration)) => {
                EXIT_INCONCLUSIVE
            }
            CommandResult::Ptb(p) if !p.passed => EXIT_NUMERICAL,
            _ => EXIT_OK,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports contain only finite numbers and string keys")
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CommandResult {
    Validate(ValidateResult),
    Solve(SolveResult),
    Fill(DegenerationReport),
    Search(SearchResult),
    Tangent(TangentResult),
    Ptb(PtbSuite),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidateResult {
    pub name: String,
    pub tetrahedra: usize,
    pub edge_classes: usize,
    pub edge_valences: Vec<usize>,
    pub orientable: bool,
    pub equations: Vec<String>,
    pub curves: Vec<String>,
    pub has_seed: bool,
    /// The builder's gluing equations can stand in for the file's.
    pub derived_mode: bool,
    /// Per-tetrahedron slot taking the builder's labeling to the file's.
    pub labeling: Option<Vec<Slot>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveResult {
    pub mode: Mode,
    /// In the labeling of the solved system.
    pub shapes: ShapeAssignment,
    /// The same shapes in the file's labeling.
    pub file_shapes: ShapeAssignment,
    pub iterations: usize,
    pub residual: f64,
    pub volume: f64,
    pub holonomies: BTreeMap<String, HolonomyValue>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchRow {
    pub curve: String,
    pub order: u32,
    pub outcome: Option<Outcome>,
    pub root_order: Option<u32>,
    #[serde(with = "json::complex_opt")]
    pub lambda: Option<Complex64>,
    pub volume: Option<f64>,
    pub verdict: String,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchResult {
    pub mode: Mode,
    pub complete_volume: f64,
    /// Sorted by curve label, then order.
    pub rows: Vec<SearchRow>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TangentResult {
    pub mode: Mode,
    pub shapes: ShapeAssignment,
    pub rank_tolerance: f64,
    pub singular_values: Vec<f64>,
    pub nullity: usize,
    pub gap_ratio: f64,
}
