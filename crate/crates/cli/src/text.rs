use std::fmt::Write;

use ideal_roots::deformation::HolonomyValue;
use ideal_roots::Complex64;

use crate::report::{CommandResult, RunReport};

fn z(c: Complex64) -> String {
    format!("{:.10}{:+.10}i", c.re, c.im)
}

fn hol(h: &HolonomyValue) -> String {
    match h {
        HolonomyValue::Finite { value } => z(*value),
        HolonomyValue::Pole { magnitude: Some(m) } => format!("pole (|h| = {m:.3e})"),
        HolonomyValue::Pole { magnitude: None } => "pole".to_string(),
    }
}

/// A human-readable summary of a report.
pub fn render(r: &RunReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{} {}", r.command, r.input);
    let _ = match &r.result {
        CommandResult::Validate(v) => writeln!(
            s,
            "  {}: {} tetrahedra, {} edge classes (valences {:?}), orientable: {}\n  equations: {:?}\n  curves: {:?}\n  derived mode: {}",
            v.name, v.tetrahedra, v.edge_classes, v.edge_valences, v.orientable, v.equations, v.curves, v.derived_mode
        ),
        CommandResult::Solve(v) => {
            let _ = writeln!(s, "  mode: {:?}, iterations: {}, residual: {:.3e}", v.mode, v.iterations, v.residual);
            for (i, w) in v.file_shapes.shapes.iter().enumerate() {
                let _ = writeln!(s, "  z{} = {}", i + 1, z(*w));
            }
            for (label, h) in &v.holonomies {
                let _ = writeln!(s, "  h_{label} = {}", hol(h));
            }
            writeln!(s, "  volume: {:.10}", v.volume)
        }
        CommandResult::Fill(v) => {
            let _ = writeln!(
                s,
                "  {} n={}: {:?} at t = {:.6} after {} steps",
                v.curve, v.order, v.outcome, v.final_t, v.steps_taken
            );
            for (i, w) in v.final_shapes.shapes.iter().enumerate() {
                let _ = writeln!(s, "  z{} = {}", i + 1, z(*w));
            }
            for (label, h) in &v.holonomy_values {
                let _ = writeln!(s, "  h_{label} = {}", hol(h));
            }
            if let Some(root) = &v.root_of_unity {
                let _ = writeln!(
                    s,
                    "  lambda = {} (order {}), alternate {} (order {})",
                    z(root.lambda),
                    root.order,
                    z(root.alternate.lambda),
                    root.alternate.order.map_or("none".to_string(), |o| o.to_string())
                );
            }
            writeln!(s, "  volume: {:.10}\n  {}", v.volume, v.detail)
        }
        CommandResult::Search(v) => {
            let _ = writeln!(s, "  complete volume: {:.10}", v.complete_volume);
            for row in &v.rows {
                let _ = writeln!(
                    s,
                    "  {:<8} n={:<3} {:<26} {}{}",
                    row.curve,
                    row.order,
                    row.outcome.map(|o| format!("{o:?}")).unwrap_or_else(|| "-".into()),
                    row.verdict,
                    row.error.as_deref().map(|e| format!(" ({e})")).unwrap_or_default()
                );
            }
            Ok(())
        }
        CommandResult::Tangent(v) => writeln!(
            s,
            "  nullity {} (gap ratio {:.3e})\n  singular values: {:?}",
            v.nullity, v.gap_ratio, v.singular_values
        ),
        CommandResult::Ptb(v) => {
            for smp in &v.samples {
                let _ = writeln!(
                    s,
                    "  gamma = {:<32} rep {:.1e} star {:.1e} curve {:.1e} tr(A^2T) = {}  {}",
                    z(smp.point.gamma),
                    smp.representation.max(),
                    smp.star.max(),
                    smp.plane_curve.min,
                    z(smp.a2t),
                    if smp.passed { "ok" } else { "FAIL" }
                );
            }
            for l in &v.ideal_points {
                let root = &l.report.root_of_unity;
                let _ = writeln!(
                    s,
                    "  {:?}: slope {}, limit point error {:.1e}, lambda = {} (order {})  {}",
                    l.report.direction,
                    l.report.slope,
                    l.report.point_error,
                    z(root.lambda),
                    root.order,
                    if l.passed { "ok" } else { "FAIL" }
                );
            }
            for c in &v.complete.points {
                let _ = writeln!(s, "  tr L = -2 at alpha = {}, tr T = {}", z(c.point.alpha), z(c.matrix_tr_t));
            }
            writeln!(s, "  {}", if v.passed { "all checks passed" } else { "SOME CHECKS FAILED" })
        }
    };
    let _ = writeln!(s, "  wall time: {:.3} s", r.wall_time_s);
    s
}
