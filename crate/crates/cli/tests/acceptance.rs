//! Acceptance criteria, run end to end against the `ideal-roots` binary and
//! the library. Prints one PASS/FAIL line per criterion and exits nonzero if
//! any fails.

use std::f64::consts::PI;
use std::process::Command;
use std::time::{Duration, Instant};

use ideal_roots::deformation::{eval_residuals, holonomy, EquationSystem, HolonomyValue, Outcome, ShapeAssignment};
use ideal_roots::sl2::{commutator_trace, Mat2, TraceReducer, Word};
use ideal_roots::triangulation::parse_triangulation_file;
use ideal_roots::Complex64;
use ideal_roots_cli::report::CommandResult;
use ideal_roots_cli::RunReport;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const M137: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/../../data/m137.tri");
const COMPLETE_VOLUME: f64 = 3.6638;

type Check = Result<String, String>;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn p0() -> [Complex64; 4] {
    [c(0.5, 0.5), c(1.0, 1.0), c(0.5, 0.5), c(1.0, 1.0)]
}

fn zeta() -> Complex64 {
    Complex64::from_polar(1.0 / 3f64.sqrt(), PI / 6.0)
}

/// Run the binary, returning the parsed report, exit code and elapsed time.
fn run(args: &[&str]) -> Result<(RunReport, i32, Duration), String> {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_ideal-roots"))
        .args(args)
        .output()
        .map_err(|e| format!("cannot run binary: {e}"))?;
    let elapsed = start.elapsed();
    let code = out.status.code().unwrap_or(-1);
    let report: RunReport = serde_json::from_slice(&out.stdout)
        .map_err(|e| format!("{args:?}: exit {code}, bad JSON ({e}): {}", String::from_utf8_lossy(&out.stderr)))?;
    Ok((report, code, elapsed))
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn criterion_1() -> Check {
    let (rep, code, t) = run(&["solve", M137])?;
    let CommandResult::Solve(s) = rep.result else {
        return Err("not a solve report".into());
    };
    ensure(code == 0, || format!("exit {code}"))?;
    ensure((s.volume - COMPLETE_VOLUME).abs() < 1e-3, || format!("volume {}", s.volume))?;
    let err = s.file_shapes.shapes.iter().zip(p0()).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
    ensure(err < 1e-9, || format!("shape error {err:.2e}"))?;
    ensure(t < Duration::from_secs(1), || format!("runtime {t:?}"))?;
    Ok(format!("volume {:.10}, shape error {err:.1e}, {:.3} s", s.volume, t.as_secs_f64()))
}

fn criterion_2() -> Check {
    let file = parse_triangulation_file(&std::fs::read_to_string(M137).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    let sys = EquationSystem::explicit(&file).map_err(|e| e.to_string())?;
    let p0 = ShapeAssignment::new(p0().to_vec());
    let worst = eval_residuals(&sys, &p0).map_err(|e| e.to_string())?.iter().map(|r| r.norm()).fold(0.0, f64::max);
    ensure(worst < 1e-12, || format!("edge residual {worst:.2e}"))?;
    let h = holonomy(&sys, "alpha", &p0).map_err(|e| e.to_string())?.finite().ok_or("h_alpha is a pole")?;
    let dh = (h - 1.0).norm();
    ensure(dh < 1e-12, || format!("|h_alpha - 1| = {dh:.2e}"))?;
    Ok(format!("max edge residual {worst:.1e}, |h_alpha - 1| = {dh:.1e}"))
}

fn criterion_3() -> Check {
    let (rep, code, t) = run(&["fill", M137, "--curve", "alpha", "--n", "3"])?;
    let CommandResult::Fill(f) = rep.result else {
        return Err("not a fill report".into());
    };
    ensure(code == 0, || format!("exit {code}"))?;
    ensure(f.outcome == Outcome::IdealPointDegeneration, || format!("outcome {:?}", f.outcome))?;
    let target = [zeta(), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)];
    let err = f.final_shapes.shapes.iter().zip(target).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
    ensure(err < 1e-4, || format!("distance to (zeta,1,1,0) {err:.2e}"))?;
    let ha = f.holonomy_values["alpha"].finite().ok_or("h_alpha is a pole")?;
    let dha = (ha - Complex64::from_polar(1.0, 2.0 * PI / 3.0)).norm();
    ensure(dha < 1e-6, || format!("h_alpha = {ha}"))?;
    let hb = match f.holonomy_values["beta"] {
        HolonomyValue::Finite { value } => value.norm(),
        HolonomyValue::Pole { magnitude } => magnitude.unwrap_or(f64::INFINITY),
    };
    ensure(hb > 1e4, || format!("|h_beta| = {hb:.2e}"))?;
    let root = f.root_of_unity.ok_or("no root of unity reported")?;
    ensure(root.order == 6, || format!("order {}", root.order))?;
    ensure((root.lambda - 1.0).norm() > 1e-3 && (root.lambda + 1.0).norm() > 1e-3, || format!("lambda = {}", root.lambda))?;
    ensure(f.volume > 0.1, || format!("volume {}", f.volume))?;
    ensure(t < Duration::from_secs(10), || format!("runtime {t:?}"))?;
    Ok(format!(
        "shape error {err:.1e}, |h_beta| = {hb:.1e}, lambda = {:.6}{:+.6}i order 6, volume {:.6}, {:.3} s",
        root.lambda.re,
        root.lambda.im,
        f.volume,
        t.as_secs_f64()
    ))
}

fn criterion_4() -> Check {
    let (rep, _, _) = run(&["tangent", M137, "--at", "(exp(i*pi/6)/sqrt(3), 1, 1, 0)"])?;
    let CommandResult::Tangent(at_p) = rep.result else {
        return Err("not a tangent report".into());
    };
    ensure(at_p.nullity == 2, || format!("nullity at p = {}", at_p.nullity))?;
    ensure(at_p.gap_ratio > 1e3, || format!("gap ratio {:.2e}", at_p.gap_ratio))?;
    let (rep, _, _) = run(&["tangent", M137, "--at", "0.5+0.5i, 1+i, 0.5+0.5i, 1+i"])?;
    let CommandResult::Tangent(at_p0) = rep.result else {
        return Err("not a tangent report".into());
    };
    ensure(at_p0.nullity == 1, || format!("nullity at p0 = {}", at_p0.nullity))?;
    Ok(format!("nullity 2 at p (gap {:.1e}), 1 at p0", at_p.gap_ratio))
}

fn random_sl2(rng: &mut ChaCha8Rng) -> Mat2 {
    loop {
        let mut e = || c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
        let m = Mat2::new(e(), e(), e(), e());
        let det = m.det();
        if det.norm() > 0.3 {
            return m.scale(det.sqrt().inv());
        }
    }
}

fn criterion_5() -> Check {
    let kappa = commutator_trace().to_string();
    ensure(kappa == "a^2 - a*b*g + b^2 + g^2 - 2", || format!("tr[a,b] reduced to {kappa}"))?;
    let words: Vec<Word> = (0..=8).flat_map(Word::all_of_length).collect();
    let mut reducer = TraceReducer::new();
    let polys = words.iter().map(|w| reducer.trace(w)).collect::<Result<Vec<_>, _>>().map_err(|e| e.to_string())?;
    let mut rng = ChaCha8Rng::seed_from_u64(20240601);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let (a, b) = (random_sl2(&mut rng), random_sl2(&mut rng));
        let (ta, tb, tab) = (a.trace(), b.trace(), (a * b).trace());
        for (w, p) in words.iter().zip(&polys) {
            let err = (p.eval(ta, tb, tab) - w.eval(&a, &b).trace()).norm();
            worst = worst.max(err);
            ensure(err < 1e-10, || format!("word {w}: error {err:.2e}"))?;
        }
    }
    Ok(format!("{} words x 100 pairs, max error {worst:.1e}", words.len()))
}

fn ptb_report() -> Result<ideal_roots_cli::ptb_suite::PtbSuite, String> {
    let (rep, code, _) = run(&["ptb", "--samples", "20"])?;
    ensure(code == 0, || format!("ptb exit {code}"))?;
    match rep.result {
        CommandResult::Ptb(p) => Ok(p),
        _ => Err("not a ptb report".into()),
    }
}

fn criterion_6() -> Check {
    let suite = ptb_report()?;
    ensure(suite.samples.len() == 20, || format!("{} samples", suite.samples.len()))?;
    let mut worst = 0.0f64;
    for s in &suite.samples {
        let r = &s.representation;
        for (name, v) in [
            ("conj_a", r.conj_a),
            ("conj_b", r.conj_b),
            ("relation_ab", r.relation_ab),
            ("det", r.det),
            ("4tau^2+gamma^4", s.star.tau_squared),
            ("tr(LT)+4/tau", s.star.tr_lt),
            ("plane curve", s.plane_curve.min),
            ("tr(A^2T) = ±2i", s.a2t_residual),
        ] {
            worst = worst.max(v);
            ensure(v < 1e-8, || format!("gamma = {}: {name} residual {v:.2e}", s.point.gamma))?;
        }
    }
    Ok(format!("20 samples, max residual {worst:.1e}"))
}

fn criterion_7() -> Check {
    let suite = ptb_report()?;
    ensure(suite.ideal_points.len() == 4, || "expected four ideal points".into())?;
    for l in &suite.ideal_points {
        let r = &l.report;
        let k = r.rows.len();
        ensure(k == 6, || format!("{:?}: {k} samples", r.direction))?;
        ensure(r.finite_trace.windows(2).all(|w| w[1] < w[0]), || format!("{:?}: not decreasing", r.direction))?;
        ensure(r.finite_limit.norm() < 1e-6, || format!("{:?}: limit {}", r.direction, r.finite_limit))?;
        let lam = r.root_of_unity.lambda;
        ensure((lam - Complex64::i()).norm().min((lam + Complex64::i()).norm()) < 1e-6, || format!("lambda {lam}"))?;
        ensure(r.root_of_unity.order == 4, || format!("order {}", r.root_of_unity.order))?;
        ensure(r.point_error < 1e-6, || format!("{:?}: point error {:.2e}", r.direction, r.point_error))?;
    }
    let worst = suite.ideal_points.iter().map(|l| l.report.point_error).fold(0.0, f64::max);
    Ok(format!("4 ends, lambda = ±i order 4, max (alpha:gamma:1) error {worst:.1e}"))
}

fn criterion_8() -> Check {
    let (e, _, _) = run(&["solve", M137, "--mode", "explicit"])?;
    let (d, _, _) = run(&["solve", M137, "--mode", "derived"])?;
    let (v, _, _) = run(&["validate", M137])?;
    let (CommandResult::Solve(e), CommandResult::Solve(d), CommandResult::Validate(v)) = (e.result, d.result, v.result) else {
        return Err("unexpected report kinds".into());
    };
    let dv = (e.volume - d.volume).abs();
    ensure(dv < 1e-6, || format!("volume difference {dv:.2e}"))?;
    ensure(v.edge_classes == 4, || format!("{} edge classes", v.edge_classes))?;
    Ok(format!("volume difference {dv:.1e}, 4 edge classes"))
}

type Criterion = (&'static str, fn() -> Check);

fn main() {
    let criteria: [Criterion; 8] = [
        ("m137 complete structure", criterion_1),
        ("explicit residuals at p0", criterion_2),
        ("1/3 filling reaches the ideal point", criterion_3),
        ("tangent space dimensions", criterion_4),
        ("trace reduction vs matrix traces", criterion_5),
        ("punctured-torus bundle residual suite", criterion_6),
        ("punctured-torus bundle ideal points", criterion_7),
        ("explicit vs derived equations", criterion_8),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("criterion {}: PASS  {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {why}", i + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} of {} criteria failed", criteria.len());
        std::process::exit(1);
    }
    println!("all {} criteria passed", criteria.len());
}
