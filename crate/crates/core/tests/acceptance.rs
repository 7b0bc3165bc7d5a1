//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure.

mod common;

use std::f64::consts::{FRAC_PI_2, LN_2};
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use common::*;
use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use seisgal::algebra::{poisson_bracket, ComplexRational, Polynomial, Variables};
use seisgal::galois::*;
use seisgal::hamiltonics::*;
use seisgal::quiver::*;
use seisgal::raytrace::*;

const SEED: u64 = 20261014;
const BIN: &str = env!("CARGO_BIN_EXE_seisgal");

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        detail: detail.into(),
    }
}

fn within_budget(elapsed: Duration, budget: Duration) -> bool {
    elapsed <= budget
}

fn cz(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn involution() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut nonzero = 0usize;
    for _ in 0..20 {
        let h = hamiltonian_from_model(&random_diagonal_model(&mut rng));
        let parts: Vec<_> = split_separable(&h).iter().map(|p| p.poly().clone()).collect();
        if parts.len() != 3 {
            return outcome(false, format!("split produced {} parts", parts.len()));
        }
        let rep = involution_report(&parts, 3).unwrap();
        nonzero += rep.iter().flatten().filter(|z| !**z).count();
    }
    let t = start.elapsed();
    outcome(
        nonzero == 0 && within_budget(t, Duration::from_secs(1)),
        format!("20 models, nonzero brackets {nonzero}, {:.0} ms", t.as_secs_f64() * 1e3),
    )
}

fn eight_cases() -> Outcome {
    let start = Instant::now();
    let mut seen = std::collections::BTreeSet::new();
    let mut wrong = 0;
    for bits in 0..8u32 {
        let b: [f64; 3] = std::array::from_fn(|i| ((bits >> i) & 1) as f64);
        let kinds = classify_model(&QuadraticSeismicModel::from_f64(1.0, [0.0; 3], b).unwrap()).kinds();
        for i in 0..3 {
            let want = if b[i] == 0.0 { FactorKind::Additive } else { FactorKind::Multiplicative };
            wrong += (kinds[i] != want) as usize;
        }
        seen.insert(format!("{:?}", kinds));
    }
    let t = start.elapsed();
    outcome(
        seen.len() == 8 && wrong == 0 && within_budget(t, Duration::from_secs(1)),
        format!("{} distinct triples, {wrong} misclassified axes, {:.0} ms", seen.len(), t.as_secs_f64() * 1e3),
    )
}

fn infinity() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 1);
    let mut bad = 0;
    for _ in 0..50 {
        let k = random_coeff(&mut rng);
        let want = if num_traits::Zero::is_zero(&k) {
            PointClass::RegularSingular
        } else {
            PointClass::IrregularSingular
        };
        bad += (classify_at_infinity(&SecondOrderOde::oscillator(&k)) != want) as usize;
    }
    let zero = classify_at_infinity(&SecondOrderOde::oscillator(&ComplexRational::from_integer(0)));
    bad += (zero != PointClass::RegularSingular) as usize;
    let t = start.elapsed();
    outcome(
        bad == 0 && within_budget(t, Duration::from_secs(1)),
        format!("51 equations, {bad} wrong, {:.0} ms", t.as_secs_f64() * 1e3),
    )
}

fn int_matrix(rows: [[i64; 2]; 2]) -> ExactMatrix {
    ExactMatrix::from_fn(2, 2, |i, j| ComplexRational::from_integer(rows[i][j]))
}

fn quiver_matrices() -> Outcome {
    let q = Quiver::gamma2();
    let rep = canonical_representation(&q, &q.arrow_path(ArrowId(0)).unwrap()).unwrap();
    let ok = rep.vertex_matrix(0) == &int_matrix([[1, 0], [0, 0]])
        && rep.vertex_matrix(1) == &int_matrix([[0, 0], [0, 1]])
        && rep.arrow_matrix(ArrowId(0)) == &int_matrix([[0, 1], [0, 0]]);
    outcome(ok, "phi(e0), phi(e1), phi(alpha) compared exactly")
}

fn exponentials() -> Outcome {
    let q = Quiver::gamma2();
    let rep = canonical_representation(&q, &q.arrow_path(ArrowId(0)).unwrap()).unwrap();
    let alpha = to_complex_matrix(rep.arrow_matrix(ArrowId(0)));
    let diag = to_complex_matrix(&(rep.vertex_matrix(0) - rep.vertex_matrix(1)));
    let mut exact = true;
    let mut diag_err = 0.0f64;
    for t in [0.0, 1.0, LN_2, -2.0] {
        let a = matrix_exponential(&alpha, cz(t));
        exact &= a == DMatrix::from_row_slice(2, 2, &[cz(1.0), cz(t), cz(0.0), cz(1.0)]);
        let d = matrix_exponential(&diag, cz(t));
        let want = DMatrix::from_row_slice(2, 2, &[cz(t.exp()), cz(0.0), cz(0.0), cz((-t).exp())]);
        diag_err = diag_err.max(max_abs_diff(&d, &want));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 2);
    let mut law = 0.0f64;
    for _ in 0..20 {
        let (s, t) = (rng.random_range(-3.0..3.0), rng.random_range(-3.0..3.0));
        for m in [&alpha, &diag] {
            let lhs = matrix_exponential(m, cz(s)) * matrix_exponential(m, cz(t));
            law = law.max(scaled_diff(&lhs, &matrix_exponential(m, cz(s + t))));
        }
    }
    outcome(
        exact && diag_err <= 1e-12 && law <= 1e-10,
        format!("unipotent exact: {exact}, diagonal error {diag_err:.1e}, group law {law:.1e} (scaled)"),
    )
}

fn constant_ray() -> Outcome {
    let start = Instant::now();
    let m = QuadraticSeismicModel::from_f64(0.25, [0.0; 3], [0.0; 3]).unwrap();
    let cfg = IntegratorConfig::new(Method::Rk4, 1e-3, 4.0).unwrap();
    let ray = trace_ray(&m, RayState::emit(&m, [0.0; 3], FRAC_PI_2, 0.0).unwrap(), &cfg).unwrap();
    let s = ray.last();
    let err = [(s.x[0] - 2.0).abs(), s.x[1].abs(), s.x[2].abs(), (s.tau - 1.0).abs()]
        .into_iter()
        .fold(0.0, f64::max);
    let t = start.elapsed();
    outcome(
        s.sigma == 4.0 && err <= 1e-9 && within_budget(t, Duration::from_secs(1)),
        format!("max error {err:.1e} at sigma {}, {:.0} ms", s.sigma, t.as_secs_f64() * 1e3),
    )
}

fn linear_ray() -> Outcome {
    let m = QuadraticSeismicModel::from_f64(1.0, [0.0, 0.0, 1.0], [0.0; 3]).unwrap();
    let cfg = IntegratorConfig::new(Method::Rk4, 1e-3, 5.0).unwrap();
    let mut err = 0.0f64;
    for theta in [0.0, 0.4, FRAC_PI_2, 2.2] {
        let ray = trace_ray(&m, RayState::emit(&m, [0.0; 3], theta, 0.0).unwrap(), &cfg).unwrap();
        let s = ray.last();
        let (x, p, tau) = linear_medium_ray(theta, 5.0);
        for i in 0..3 {
            err = err.max((s.x[i] - x[i]).abs()).max((s.p[i] - p[i]).abs());
        }
        err = err.max((s.tau - tau).abs());
    }
    outcome(err <= 1e-8, format!("4 take-offs, max error {err:.1e} at sigma 5"))
}

fn harmonic_error(step: f64) -> f64 {
    let m = QuadraticSeismicModel::from_f64(1.0, [0.0; 3], [0.0, 0.0, -1.0]).unwrap();
    let cfg = IntegratorConfig::new(Method::Rk4, step, 10.0).unwrap();
    let ray = trace_ray(&m, RayState::emit(&m, [0.0; 3], 0.0, 0.0).unwrap(), &cfg).unwrap();
    let (x3, p3) = harmonic_medium_ray(1.0, 1.0, 10.0);
    (ray.last().x[2] - x3).abs().max((ray.last().p[2] - p3).abs())
}

fn constant_terminal_error(step: f64) -> f64 {
    let m = QuadraticSeismicModel::from_f64(0.25, [0.0; 3], [0.0; 3]).unwrap();
    let cfg = IntegratorConfig::new(Method::Rk4, step, 4.0).unwrap();
    let ray = trace_ray(&m, RayState::emit(&m, [0.0; 3], FRAC_PI_2, 0.0).unwrap(), &cfg).unwrap();
    (ray.last().x[0] - 2.0).abs()
}

fn eikonal() -> Outcome {
    let models = [
        ([0.0, 0.0, 0.0], [0.0, 0.0, 0.0]),
        ([0.0, 0.0, 0.0], [0.0, 0.0, -1.0]),
        ([0.1, -0.2, 0.3], [-0.5, -0.25, -1.0]),
        ([0.0, 0.0, 0.5], [0.05, 0.0, -0.1]),
        ([0.2, 0.0, 0.0], [0.1, 0.1, 0.1]),
    ];
    let cfg = IntegratorConfig::new(Method::Rk4, 1e-3, 10.0).unwrap();
    let mut worst = 0.0f64;
    for (a, b) in models {
        let m = QuadraticSeismicModel::from_f64(1.0, a, b).unwrap();
        for (theta, phi) in [(0.4, 0.1), (1.2, 2.0), (2.5, -1.0)] {
            let ray = trace_ray(&m, RayState::emit(&m, [0.0; 3], theta, phi).unwrap(), &cfg).unwrap();
            worst = worst.max(ray.max_abs_residual());
        }
    }
    // RK4 reproduces straight rays to rounding, so the order is measured on
    // u = 1 − q3², whose rays are known in closed form
    let ratio = harmonic_error(0.05) / harmonic_error(0.025);
    let (c1, c2) = (constant_terminal_error(1e-3), constant_terminal_error(5e-4));
    outcome(
        worst <= 1e-8 && ratio >= 12.0,
        format!(
            "max |p|^2-u {worst:.1e} over 15 rays; step-halving ratio {ratio:.1} (harmonic medium); constant-medium terminal errors {c1:.1e}, {c2:.1e}"
        ),
    )
}

fn symplectic() -> Outcome {
    let models = [
        ([0.0, 0.1, 0.0], [0.2, -0.7, 0.0]),
        ([0.0, 0.0, 0.0], [-1.0, -0.5, -0.25]),
        ([0.3, 0.0, -0.2], [0.1, 0.0, 0.05]),
    ];
    let cfg = IntegratorConfig::new(Method::Rk4, 1e-3, 10.0).unwrap();
    let (mut defect, mut flow_err) = (0.0f64, 0.0f64);
    for (a, b) in models {
        let m = QuadraticSeismicModel::from_f64(1.0, a, b).unwrap();
        let h = hamiltonian_from_model(&m);
        let ray = trace_ray(&m, RayState::emit(&m, [0.0; 3], 1.1, 0.4).unwrap(), &cfg).unwrap();
        let flow = variational_flow(&h, &ray, &cfg).unwrap();
        let last = flow.last().unwrap();
        if last.sigma != 10.0 {
            return outcome(false, format!("ray stopped at sigma {}", last.sigma));
        }
        defect = defect.max(symplectic_defect(&last.matrix));
        let a = variational_matrix(&h, &[cz(0.0); 6]);
        let e = matrix_exponential(&a, cz(10.0));
        flow_err = flow_err.max(scaled_diff(&last.matrix.map(cz), &e));
    }
    outcome(
        defect <= 1e-6 && flow_err <= 1e-8,
        format!("defect {defect:.1e} at sigma 10; flow vs exp(A sigma) {flow_err:.1e} (scaled)"),
    )
}

fn algebra_axioms() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 3);
    let vars = Variables::phase_space(2);
    let b = |x: &Polynomial, y: &Polynomial| poisson_bracket(x, y, 2).unwrap();
    let mut failures = 0;
    for _ in 0..100 {
        let f = random_poly(&mut rng, &vars, 3, 5);
        let g = random_poly(&mut rng, &vars, 3, 5);
        let h = random_poly(&mut rng, &vars, 3, 5);
        let anti = (&b(&f, &g) + &b(&g, &f)).is_zero();
        let leibniz = b(&f, &(&g * &h)) == &(&b(&f, &g) * &h) + &(&g * &b(&f, &h));
        let jacobi = (&(&b(&f, &b(&g, &h)) + &b(&g, &b(&h, &f))) + &b(&h, &b(&f, &g))).is_zero();
        failures += (!(anti && leibniz && jacobi)) as usize;
    }
    let mut fd_err = 0.0f64;
    for _ in 0..20 {
        let h = Hamiltonian::new(3, random_real_cubic(&mut rng, 3)).unwrap();
        let pt: Vec<f64> = (0..6).map(|_| rng.random_range(-1.0..1.0)).collect();
        fd_err = fd_err.max((fd_jacobian(&h, &pt, 1e-5) - variational_matrix_real(&h, &pt)).abs().max());
    }
    outcome(
        failures == 0 && fd_err <= 1e-6,
        format!("100 triples, {failures} violations; finite-difference Jacobian error {fd_err:.1e}"),
    )
}

fn run_bin(args: &[&str]) -> (i32, String) {
    let o = Command::new(BIN).args(args).output().expect("binary runs");
    (o.status.code().unwrap_or(-1), String::from_utf8_lossy(&o.stdout).into_owned())
}

fn cli_contract() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let cfg = |name: &str, model: &str, integ: &str| {
        let p = d.join(name);
        std::fs::write(
            &p,
            format!(r#"{{"model": {model}, "source": [0, 0, 0], "takeoff": [[1.5707963267948966, 0]], "integrator": {integ}}}"#),
        )
        .unwrap();
        p.to_str().unwrap().to_owned()
    };
    let rk = r#"{"method": "rk4", "step": 0.001, "sigma_max": 4}"#;
    let good = cfg("good.json", r#"{"a0": "1/4", "a": [0, 0, 0], "b": [0, 0, "1"]}"#, rk);
    let bad_step = cfg("step.json", r#"{"a0": 1, "a": [0, 0, 0], "b": [0, 0, 0]}"#, r#"{"method": "rk4", "step": 0, "sigma_max": 1}"#);
    let overflow = cfg("big.json", r#"{"a0": 1, "a": [0, 0, 0], "b": [1e150, 0, 0]}"#, r#"{"method": "rk4", "step": 0.1, "sigma_max": 10}"#);
    let coarse = cfg("coarse.json", r#"{"a0": 1, "a": [0, 0, 0], "b": [-2, 0, 0]}"#, r#"{"method": "leapfrog", "step": 0.2, "sigma_max": 10}"#);
    let malformed = d.join("bad.json");
    std::fs::write(&malformed, "{ not json").unwrap();
    let malformed = malformed.to_str().unwrap().to_owned();
    let out = |n: &str| d.join(n).to_str().unwrap().to_owned();

    let mut failures = Vec::new();
    let mut expect = |label: &str, args: &[&str], want: i32| {
        let (code, stdout) = run_bin(args);
        if code != want {
            failures.push(format!("{label}: exit {code}, want {want}"));
        }
        stdout
    };
    expect("trace good", &["trace", "--config", &good, "--out", &out("o1")], 0);
    expect("trace malformed", &["trace", "--config", &malformed, "--out", &out("o2")], 2);
    expect("trace bad step", &["trace", "--config", &bad_step, "--out", &out("o3")], 2);
    expect("trace overflow", &["trace", "--config", &overflow, "--out", &out("o4")], 3);
    let galois = expect("galois good", &["galois", "--config", &good], 0);
    expect("galois malformed", &["galois", "--config", &malformed], 2);
    let quiver = expect("quiver", &["quiver"], 0);
    expect("check good", &["check", "--config", &good], 0);
    expect("check failing", &["check", "--config", &coarse], 4);
    expect("check malformed", &["check", "--config", &malformed], 2);

    let header = std::fs::read_to_string(Path::new(&out("o1")).join("ray_000.csv"))
        .ok()
        .and_then(|t| t.lines().next().map(str::to_owned));
    if header.as_deref() != Some("sigma,x1,x2,x3,p1,p2,p3,tau,eikonal_residual") {
        failures.push(format!("csv header {header:?}"));
    }
    if Path::new(&out("o2")).exists() || Path::new(&out("o3")).exists() {
        failures.push("output written for a bad config".into());
    }
    if !galois_schema(&galois) {
        failures.push("galois report schema".into());
    }
    if !quiver_schema(&quiver) {
        failures.push("quiver report schema".into());
    }
    let passed = failures.is_empty();
    outcome(
        passed,
        if passed {
            "10 invocations, exit codes 0/2/3/4 as specified; header and reports valid".to_string()
        } else {
            failures.join("; ")
        },
    )
}

fn galois_schema(text: &str) -> bool {
    let Ok(v) = serde_json::from_str::<serde_json::Value>(text) else {
        return false;
    };
    let axes_ok = v["axes"].as_array().is_some_and(|axes| {
        axes.len() == 3
            && axes.iter().all(|a| {
                a["axis"].is_u64()
                    && ["k", "factor", "group", "basis", "extension", "infinity"]
                        .iter()
                        .all(|k| a[*k].is_string())
            })
    });
    axes_ok && v["product"] == "Ga⊗Ga⊗Gm" && v["axes"][2]["infinity"] == "IrregularSingular" && v["tool"]["version"].is_string()
}

fn quiver_schema(text: &str) -> bool {
    let Ok(v) = serde_json::from_str::<serde_json::Value>(text) else {
        return false;
    };
    let rep = &v["representation"];
    rep["alpha"] == serde_json::json!([[0, 1], [0, 0]])
        && rep["e0"] == serde_json::json!([[1, 0], [0, 0]])
        && rep["e1"] == serde_json::json!([[0, 0], [0, 1]])
        && v["samples"].as_array().is_some_and(|s| s.len() == 3)
        && v["checks"].as_array().is_some_and(|c| c.iter().all(|c| c["passed"] == true))
        && v["passed"] == true
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("involution of split Hamiltonians", involution),
        ("Galois eight-case table", eight_cases),
        ("singularity at infinity", infinity),
        ("quiver representation matrices", quiver_matrices),
        ("one-parameter group exponentials", exponentials),
        ("ray oracle, constant medium", constant_ray),
        ("ray oracle, linear medium", linear_ray),
        ("eikonal conservation and RK4 order", eikonal),
        ("symplectic variational flow", symplectic),
        ("bracket axioms and Jacobian", algebra_axioms),
        ("CLI contract", cli_contract),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let o = f();
        failed += (!o.passed) as usize;
        println!("{} [{:02}] {name}: {}", if o.passed { "PASS" } else { "FAIL" }, i + 1, o.detail);
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
