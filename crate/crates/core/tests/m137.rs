use std::f64::consts::PI;

use ideal_roots::deformation::{
    continue_filling, eval_jacobian, eval_residuals, holonomy, solve_complete, tangent_nullity, volume, Collapse,
    ContinuationOptions, EquationSystem, HolonomyValue, Limit, Outcome, ShapeAssignment, SolverOptions,
};
use ideal_roots::triangulation::{parse_triangulation_file, TriangulationFile};
use ideal_roots::Complex64;

const M137: &str = include_str!("../../../data/m137.tri");

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn file() -> TriangulationFile {
    parse_triangulation_file(M137).unwrap()
}

fn p0() -> ShapeAssignment {
    ShapeAssignment::new(vec![c(0.5, 0.5), c(1.0, 1.0), c(0.5, 0.5), c(1.0, 1.0)])
}

fn zeta() -> Complex64 {
    Complex64::from_polar(1.0 / 3f64.sqrt(), PI / 6.0)
}

fn ideal_point() -> ShapeAssignment {
    ShapeAssignment::new(vec![zeta(), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)])
}

/// Catalan's constant times four: two regular-quadrilateral-type tetrahedra
/// with `D(1/2 + i/2) = D(1 + i) = G`.
const COMPLETE_VOLUME: f64 = 4.0 * 0.915_965_594_177_219;

#[test]
fn explicit_residuals_vanish_at_p0() {
    let sys = EquationSystem::explicit(&file()).unwrap();
    for r in eval_residuals(&sys, &p0()).unwrap() {
        assert!(r.norm() < 1e-12);
    }
    let h = holonomy(&sys, "alpha", &p0()).unwrap().finite().unwrap();
    assert!((h - c(1.0, 0.0)).norm() < 1e-12);
}

#[test]
fn third_equation_matches_its_product_form() {
    // z2 (1 - z3) = (1 - z1) z4
    let sys = EquationSystem::explicit(&file()).unwrap();
    let z = [c(0.3, 0.4), c(1.1, 0.2), c(0.7, 0.5), c(0.9, 0.1)];
    let one = c(1.0, 0.0);
    let s = ShapeAssignment::new(z.to_vec());
    let r = eval_residuals(&sys, &s).unwrap()[2];
    let direct = z[1] * (one - z[2]) / ((one - z[0]) * z[3]) - one;
    assert!((r - direct).norm() < 1e-14);
}

#[test]
fn edge_jacobian_at_p0_has_one_redundancy() {
    let sys = EquationSystem::explicit(&file()).unwrap();
    let j = eval_jacobian(&sys, &p0()).unwrap();
    let mut sv: Vec<f64> = j.singular_values().iter().copied().collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    assert!(sv[3] / sv[0] < 1e-9);
    assert!(sv[2] / sv[0] > 1e-3);
}

#[test]
fn complete_structure_from_default_seed() {
    let f = file();
    let sys = EquationSystem::explicit(&f).unwrap();
    let seed = f.seed.clone().map(ShapeAssignment::new).unwrap_or_else(|| ShapeAssignment::regular(4));
    let sol = solve_complete(&sys, &seed, &SolverOptions::default()).unwrap();
    for (z, w) in sol.shapes.shapes.iter().zip(&p0().shapes) {
        assert!((z - w).norm() < 1e-9, "{z} vs {w}");
    }
    assert!((volume(&sol.shapes) - COMPLETE_VOLUME).abs() < 1e-12);
    assert!((volume(&sol.shapes) - 3.6638).abs() < 1e-3);
}

#[test]
fn seeding_at_the_solution_is_a_fixed_point() {
    let sys = EquationSystem::explicit(&file()).unwrap();
    let sol = solve_complete(&sys, &p0(), &SolverOptions::default()).unwrap();
    assert!(sol.iterations <= 1);
    assert!((sol.shapes.shapes[1] - c(1.0, 1.0)).norm() < 1e-12);
}

#[test]
fn derived_mode_agrees_with_explicit_mode() {
    let f = file();
    let explicit = EquationSystem::explicit(&f).unwrap();
    let (derived, slots) = EquationSystem::derived(&f).unwrap();
    assert!(slots.is_some());
    let opts = SolverOptions::default();
    let a = solve_complete(&explicit, &ShapeAssignment::regular(4), &opts).unwrap();
    let b = solve_complete(&derived, &ShapeAssignment::regular(4), &opts).unwrap();
    assert!((volume(&a.shapes) - volume(&b.shapes)).abs() < 1e-6);
    // builder shapes: tet 1 carries the other parameter of the same tetrahedron
    let expect = [c(0.5, 0.5), c(0.0, 1.0), c(0.5, 0.5), c(1.0, 1.0)];
    for (z, w) in b.shapes.shapes.iter().zip(expect) {
        assert!((z - w).norm() < 1e-9, "{z} vs {w}");
    }
}

#[test]
fn derived_mode_without_explicit_equations() {
    // strip equations and curves; the builder alone still yields the redundant edge system
    let f = file();
    let bare = TriangulationFile {
        equations: vec![],
        curves: vec![],
        ..f
    };
    let (sys, slots) = EquationSystem::derived(&bare).unwrap();
    assert!(slots.is_none());
    assert_eq!(sys.equations.len(), 4);
    let derived_p0 = ShapeAssignment::new(vec![c(0.5, 0.5), c(0.0, 1.0), c(0.5, 0.5), c(1.0, 1.0)]);
    for r in eval_residuals(&sys, &derived_p0).unwrap() {
        assert!(r.norm() < 1e-12);
    }
}

#[test]
fn holonomies_at_the_ideal_point() {
    let sys = EquationSystem::explicit(&file()).unwrap();
    // reduced form on the edge variety: h_alpha = -(1 - z1)/(z1 z2 z3)
    let z = zeta();
    let one = c(1.0, 0.0);
    let reduced = -(one - z) / z;
    let third = Complex64::from_polar(1.0, 2.0 * PI / 3.0);
    assert!((reduced - third).norm() < 1e-14);
    // the unreduced monomial is 0/0 there, and h_beta has a zero denominator
    assert!(holonomy(&sys, "alpha", &ideal_point()).is_err());
    assert_eq!(
        holonomy(&sys, "beta", &ideal_point()).unwrap(),
        HolonomyValue::Pole { magnitude: None }
    );
}

#[test]
fn tangent_space_dimensions() {
    let sys = EquationSystem::explicit(&file()).unwrap();
    let at_p = tangent_nullity(&sys, &ideal_point(), 1e-9).unwrap();
    assert_eq!(at_p.nullity, 2);
    assert!(at_p.gap_ratio > 1e3);
    let at_p0 = tangent_nullity(&sys, &p0(), 1e-9).unwrap();
    assert_eq!(at_p0.nullity, 1);
}

#[test]
fn third_filling_runs_into_the_ideal_point() {
    let sys = EquationSystem::explicit(&file()).unwrap();
    let r = continue_filling(&sys, "alpha", 3, &p0(), &ContinuationOptions::default()).unwrap();
    assert_eq!(r.outcome, Outcome::IdealPointDegeneration, "{r:?}");
    for (z, w) in r.final_shapes.shapes.iter().zip(&ideal_point().shapes) {
        assert!((z - w).norm() < 1e-4, "{z} vs {w}");
    }
    assert_eq!(
        r.collapsed,
        vec![
            Collapse { tet: 1, limit: Limit::One },
            Collapse { tet: 2, limit: Limit::One },
            Collapse { tet: 3, limit: Limit::Zero },
        ]
    );
    let h = r.holonomy_values["alpha"].finite().unwrap();
    assert!((h - Complex64::from_polar(1.0, 2.0 * PI / 3.0)).norm() < 1e-6);
    match r.holonomy_values["beta"] {
        HolonomyValue::Pole { magnitude } => assert!(magnitude.is_none_or(|m| m > 1e4)),
        HolonomyValue::Finite { value } => panic!("h_beta finite: {value}"),
    }
    let root = r.root_of_unity.unwrap();
    assert_eq!(root.order, 6);
    assert!((root.lambda - c(1.0, 0.0)).norm() > 0.1 && (root.lambda + c(1.0, 0.0)).norm() > 0.1);
    assert!(r.volume > 0.1);
}

#[test]
fn trivial_filling_stays_put() {
    let sys = EquationSystem::explicit(&file()).unwrap();
    let r = continue_filling(&sys, "alpha", 1, &p0(), &ContinuationOptions::default()).unwrap();
    assert_eq!(r.outcome, Outcome::HyperbolicSolution, "{r:?}");
    for (z, w) in r.final_shapes.shapes.iter().zip(&p0().shapes) {
        assert!((z - w).norm() < 1e-12);
    }
}

#[test]
fn large_order_filling_is_hyperbolic() {
    let sys = EquationSystem::explicit(&file()).unwrap();
    let r = continue_filling(&sys, "alpha", 100, &p0(), &ContinuationOptions::default()).unwrap();
    assert_eq!(r.outcome, Outcome::HyperbolicSolution, "{r:?}");
    assert!(r.final_shapes.shapes.iter().all(|z| z.im > 0.0));
    assert!(r.volume < COMPLETE_VOLUME && r.volume > 3.0);
    for res in eval_residuals(&sys, &r.final_shapes).unwrap() {
        assert!(res.norm() < 1e-10);
    }
}
