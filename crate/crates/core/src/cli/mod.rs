//! Command-line front end.
//!
//! Exit codes: 0 success, 2 configuration error, 3 integration failure,
//! 4 failed invariant check.

mod config;
mod output;

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use num_complex::Complex64;
use rayon::prelude::*;
use serde_json::json;

pub use config::{ConfigError, IntegratorSection, MethodName, ModelConfig, RunConfig, RunPlan, Scalar};
pub use output::{
    format_value, ray_file_name, ray_rows, read_ray_csv, write_ray_csv, CsvReadError, RayRow, CSV_HEADER,
};

use crate::galois::classify_model_axes;
use crate::hamiltonics::{hamiltonian_from_model, involution_report, split_separable, variational_matrix};
use crate::quiver::{gamma2_demo, matrix_exponential};
use crate::raytrace::{symplectic_defect, trace_ray, variational_flow, Method, Ray, RayError, RayState, Termination};

pub const EXIT_OK: u8 = 0;
pub const EXIT_CONFIG: u8 = 2;
pub const EXIT_INTEGRATION: u8 = 3;
pub const EXIT_INVARIANT: u8 = 4;

pub const TOOL_NAME: &str = "seisgal";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

const EIKONAL_TOL_RK4: f64 = 1e-8;
const EIKONAL_TOL_LEAPFROG: f64 = 1e-5;
const SYMPLECTIC_TOL: f64 = 1e-6;
const EXP_FLOW_TOL: f64 = 1e-8;

#[derive(Parser, Debug)]
#[command(name = "seisgal", version, about = "Seismic rays, variational flows and their Galois groups")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Trace one ray per take-off pair and write CSV files
    Trace {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Classify the Galois group of the variational equations (JSON)
    Galois {
        #[arg(long)]
        config: PathBuf,
    },
    /// Canonical representation of the two-vertex quiver and its exponentials (JSON)
    Quiver,
    /// Run the invariant checks on a config
    Check {
        #[arg(long)]
        config: PathBuf,
    },
}

pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> u8 {
    match &cli.command {
        Command::Trace { config, out: dir } => cmd_trace(config, dir, out, err),
        Command::Galois { config } => cmd_galois(config, out, err),
        Command::Quiver => cmd_quiver(out, err),
        Command::Check { config } => cmd_check(config, out, err),
    }
}

fn load_plan(path: &Path, err: &mut dyn Write) -> Result<RunPlan, u8> {
    RunConfig::load(path).and_then(|c| c.validate()).map_err(|e| {
        let _ = writeln!(err, "error: {e}");
        EXIT_CONFIG
    })
}

fn trace_all(plan: &RunPlan) -> Vec<Result<Ray, RayError>> {
    plan.takeoffs
        .par_iter()
        .map(|&(theta, phi)| {
            let s0 = RayState::emit(&plan.model, plan.source, theta, phi)?;
            trace_ray(&plan.model, s0, &plan.integrator)
        })
        .collect()
}

fn ray_error_code(e: &RayError) -> u8 {
    match e {
        RayError::NonPhysicalMedium { .. } | RayError::InvalidConfig(_) => EXIT_CONFIG,
        _ => EXIT_INTEGRATION,
    }
}

pub fn cmd_trace(config: &Path, dir: &Path, out: &mut dyn Write, err: &mut dyn Write) -> u8 {
    let plan = match load_plan(config, err) {
        Ok(p) => p,
        Err(code) => return code,
    };
    let mut rays = Vec::with_capacity(plan.takeoffs.len());
    for (i, r) in trace_all(&plan).into_iter().enumerate() {
        match r {
            Ok(ray) => rays.push(ray),
            Err(e) => {
                let _ = writeln!(err, "error: take-off {i}: {e}");
                return ray_error_code(&e);
            }
        }
    }
    if let Err(e) = std::fs::create_dir_all(dir) {
        let _ = writeln!(err, "error: cannot create {}: {e}", dir.display());
        return EXIT_CONFIG;
    }
    for (i, ray) in rays.iter().enumerate() {
        let path = dir.join(ray_file_name(i));
        if let Err(e) = write_ray_csv(&path, ray) {
            let _ = writeln!(err, "error: cannot write {}: {e}", path.display());
            return EXIT_CONFIG;
        }
        if let Termination::NonPhysicalMedium { sigma } = ray.termination() {
            let _ = writeln!(err, "warning: take-off {i} stopped at sigma = {sigma}: medium no longer physical");
        }
        let _ = writeln!(out, "{}", path.display());
    }
    EXIT_OK
}

pub fn galois_report(plan: &RunPlan) -> serde_json::Value {
    let axes = classify_model_axes(&plan.model);
    let product = axes.iter().map(|a| a.factor.kind.symbol()).collect::<Vec<_>>().join("⊗");
    json!({
        "tool": { "name": TOOL_NAME, "version": TOOL_VERSION },
        "axes": axes
            .iter()
            .enumerate()
            .map(|(i, a)| json!({
                "axis": i + 1,
                "k": a.k.to_string(),
                "factor": a.factor.kind.symbol(),
                "group": a.factor.generator(),
                "basis": a.basis.descriptor(),
                "extension": a.basis.extension(),
                "infinity": a.infinity.to_string(),
            }))
            .collect::<Vec<_>>(),
        "product": product,
    })
}

pub fn cmd_galois(config: &Path, out: &mut dyn Write, err: &mut dyn Write) -> u8 {
    let plan = match load_plan(config, err) {
        Ok(p) => p,
        Err(code) => return code,
    };
    let report = galois_report(&plan);
    let _ = writeln!(out, "{}", serde_json::to_string_pretty(&report).expect("report serializes"));
    EXIT_OK
}

pub const QUIVER_TIMES: [f64; 3] = [0.0, 1.0, std::f64::consts::LN_2];

pub fn quiver_report() -> (serde_json::Value, bool) {
    let r = gamma2_demo(&QUIVER_TIMES);
    let alpha = crate::quiver::ArrowId(0);
    let report = json!({
        "tool": { "name": TOOL_NAME, "version": TOOL_VERSION },
        "representation": {
            "e0": output::exact_matrix_json(r.rep.vertex_matrix(0)),
            "e1": output::exact_matrix_json(r.rep.vertex_matrix(1)),
            "alpha": output::exact_matrix_json(r.rep.arrow_matrix(alpha)),
        },
        "samples": r.samples.iter().map(|s| json!({
            "t": s.t,
            "exp_t_alpha": output::complex_matrix_json(&s.additive),
            "exp_t_e0_minus_e1": output::complex_matrix_json(&s.multiplicative),
        })).collect::<Vec<_>>(),
        "checks": r.checks,
        "passed": r.passed(),
    });
    (report, r.passed())
}

pub fn cmd_quiver(out: &mut dyn Write, err: &mut dyn Write) -> u8 {
    let (report, passed) = quiver_report();
    let _ = writeln!(out, "{}", serde_json::to_string(&report).expect("report serializes"));
    if passed {
        EXIT_OK
    } else {
        let _ = writeln!(err, "error: quiver self-check failed");
        EXIT_INVARIANT
    }
}

/// One line of `check` output.
#[derive(Clone, Debug, PartialEq)]
pub struct CheckResult {
    pub name: &'static str,
    pub measured: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl std::fmt::Display for CheckResult {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{} {}: measured {:.3e}, tolerance {:.1e}",
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.measured,
            self.tolerance
        )
    }
}

fn result(name: &'static str, measured: f64, tolerance: f64) -> CheckResult {
    CheckResult {
        name,
        measured,
        tolerance,
        passed: measured <= tolerance,
    }
}

/// Involution, eikonal conservation, symplectic defect and
/// exponential-versus-flow agreement for one configuration.
pub fn run_checks(plan: &RunPlan) -> Result<Vec<CheckResult>, RayError> {
    let h = hamiltonian_from_model(&plan.model);
    let parts: Vec<_> = split_separable(&h).into_iter().map(|p| p.poly().clone()).collect();
    let brackets = involution_report(&parts, h.degrees()).expect("split parts share the phase space");
    let nonzero = brackets.iter().flatten().filter(|zero| !**zero).count();
    let mut out = vec![result("involution (nonzero brackets)", nonzero as f64, 0.0)];

    let rays = trace_all(plan).into_iter().collect::<Result<Vec<_>, _>>()?;
    let eik_tol = match plan.integrator.method() {
        Method::Rk4 => EIKONAL_TOL_RK4,
        Method::Leapfrog => EIKONAL_TOL_LEAPFROG,
    };
    let eik = rays.iter().map(Ray::max_abs_residual).fold(0.0, f64::max);
    out.push(result("eikonal residual", eik, eik_tol));

    let mut defect = 0.0f64;
    let mut exp_err = 0.0f64;
    let mut quadratic = true;
    for ray in &rays {
        let flow = variational_flow(&h, ray, &plan.integrator)?;
        let last = flow.last().expect("flow holds the initial sample");
        defect = defect.max(symplectic_defect(&last.matrix));

        let pt: Vec<Complex64> = ray.samples()[0].phase_point().iter().map(|v| Complex64::new(*v, 0.0)).collect();
        let a = variational_matrix(&h, &pt);
        quadratic &= h.poly().total_degree().is_none_or(|d| d <= 2);
        let e = matrix_exponential(&a, Complex64::new(last.sigma, 0.0));
        let scale = e.iter().fold(1.0f64, |m, z| m.max(z.norm()));
        let diff = e
            .iter()
            .zip(last.matrix.iter())
            .fold(0.0f64, |m, (z, x)| m.max((z - Complex64::new(*x, 0.0)).norm()));
        exp_err = exp_err.max(diff / scale);
    }
    out.push(result("symplectic defect", defect, SYMPLECTIC_TOL));
    if quadratic {
        out.push(result("flow vs matrix exponential", exp_err, EXP_FLOW_TOL));
    }
    Ok(out)
}

pub fn cmd_check(config: &Path, out: &mut dyn Write, err: &mut dyn Write) -> u8 {
    let plan = match load_plan(config, err) {
        Ok(p) => p,
        Err(code) => return code,
    };
    let checks = match run_checks(&plan) {
        Ok(c) => c,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return ray_error_code(&e);
        }
    };
    for c in &checks {
        let _ = writeln!(out, "{c}");
    }
    if checks.iter().all(|c| c.passed) {
        EXIT_OK
    } else {
        EXIT_INVARIANT
    }
}
