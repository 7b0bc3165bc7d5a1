//! Fixed-step integration of the ray system
//!
//! ```text
//! dx/dσ = p,   dp/dσ = ½ ∇u(x),   dτ/dσ = u(x)
//! ```
//!
//! and of the variational flow `Φ' = A(σ)Φ`, `Φ(0) = I`, along a traced ray.

use nalgebra::DMatrix;
use thiserror::Error;

use crate::algebra::NumericPolynomial;
use crate::hamiltonics::{variational_matrix_symbolic, Hamiltonian, QuadraticSeismicModel, SymplecticForm};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RayError {
    #[error("non-physical medium: squared slowness {u} <= 0 at the source")]
    NonPhysicalMedium { u: f64 },
    #[error("invalid integrator configuration: {0}")]
    InvalidConfig(String),
    #[error("initial state violates the eikonal equation (residual {residual:e})")]
    InvalidInitialState { residual: f64 },
    #[error("integration failed at sigma = {sigma}: non-finite state")]
    IntegrationFailure { sigma: f64 },
    #[error("ray does not match the configuration: {0}")]
    Mismatch(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Rk4,
    Leapfrog,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IntegratorConfig {
    method: Method,
    step: f64,
    sigma_max: f64,
}

impl IntegratorConfig {
    pub fn new(method: Method, step: f64, sigma_max: f64) -> Result<Self, RayError> {
        if !(step.is_finite() && step > 0.0) {
            return Err(RayError::InvalidConfig(format!("step must be positive, got {step}")));
        }
        if !(sigma_max.is_finite() && sigma_max >= step) {
            return Err(RayError::InvalidConfig(format!(
                "sigma_max must be at least step ({step}), got {sigma_max}"
            )));
        }
        Ok(Self {
            method,
            step,
            sigma_max,
        })
    }

    pub fn method(&self) -> Method {
        self.method
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn sigma_max(&self) -> f64 {
        self.sigma_max
    }

    /// Sample grid `0, h, 2h, …, σ_max`; a shorter last step absorbs any
    /// remainder.
    pub fn grid(&self) -> Vec<f64> {
        let ratio = self.sigma_max / self.step;
        let n = if (ratio - ratio.round()).abs() <= 1e-9 * ratio.max(1.0) {
            ratio.round() as usize
        } else {
            ratio.ceil() as usize
        };
        let mut g: Vec<f64> = (0..n).map(|i| i as f64 * self.step).collect();
        g.push(self.sigma_max);
        g
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RayState {
    pub x: [f64; 3],
    pub p: [f64; 3],
    pub tau: f64,
    pub sigma: f64,
}

impl RayState {
    /// Emission state at `x0` with the given take-off angles, `τ = σ = 0`.
    pub fn emit(
        model: &QuadraticSeismicModel,
        x0: [f64; 3],
        theta: f64,
        phi: f64,
    ) -> Result<Self, RayError> {
        Ok(Self {
            x: x0,
            p: initial_slowness(model, &x0, theta, phi)?,
            tau: 0.0,
            sigma: 0.0,
        })
    }

    pub fn phase_point(&self) -> [f64; 6] {
        [self.x[0], self.x[1], self.x[2], self.p[0], self.p[1], self.p[2]]
    }

    fn is_finite(&self) -> bool {
        self.x.iter().chain(&self.p).all(|v| v.is_finite()) && self.tau.is_finite()
    }
}

/// Why integration stopped.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Termination {
    Completed,
    /// The next step would have entered `u ≤ 0`; the ray ends at the last
    /// physical sample.
    NonPhysicalMedium { sigma: f64 },
}

#[derive(Clone, Debug, PartialEq)]
pub struct Ray {
    samples: Vec<RayState>,
    residuals: Vec<f64>,
    termination: Termination,
}

impl Ray {
    pub fn samples(&self) -> &[RayState] {
        &self.samples
    }

    pub fn residuals(&self) -> &[f64] {
        &self.residuals
    }

    pub fn termination(&self) -> Termination {
        self.termination
    }

    pub fn last(&self) -> &RayState {
        self.samples.last().expect("rays always hold the emission sample")
    }

    pub fn max_abs_residual(&self) -> f64 {
        self.residuals.iter().fold(0.0, |m, r| m.max(r.abs()))
    }
}

/// `p0 = √u(x0) · (sinθ cosφ, sinθ sinφ, cosθ)`.
pub fn initial_slowness(
    model: &QuadraticSeismicModel,
    x0: &[f64; 3],
    theta: f64,
    phi: f64,
) -> Result<[f64; 3], RayError> {
    let u = model.slowness_squared_at(x0);
    if !(u > 0.0) {
        return Err(RayError::NonPhysicalMedium { u });
    }
    let s = u.sqrt();
    let (st, ct) = theta.sin_cos();
    let (sp, cp) = phi.sin_cos();
    Ok([s * st * cp, s * st * sp, s * ct])
}

/// `|p|² − u(x)`.
pub fn eikonal_residual(model: &QuadraticSeismicModel, state: &RayState) -> f64 {
    let p2: f64 = state.p.iter().map(|v| v * v).sum();
    p2 - model.slowness_squared_at(&state.x)
}

const EMISSION_TOLERANCE: f64 = 1e-12;

pub fn trace_ray(
    model: &QuadraticSeismicModel,
    state0: RayState,
    config: &IntegratorConfig,
) -> Result<Ray, RayError> {
    let u0 = model.slowness_squared_at(&state0.x);
    if !(u0 > 0.0) {
        return Err(RayError::NonPhysicalMedium { u: u0 });
    }
    let r0 = eikonal_residual(model, &state0);
    if !(r0.abs() <= EMISSION_TOLERANCE * u0.max(1.0)) {
        return Err(RayError::InvalidInitialState { residual: r0 });
    }

    let grid = config.grid();
    let mut samples = Vec::with_capacity(grid.len());
    let mut residuals = Vec::with_capacity(grid.len());
    let mut state = RayState { sigma: grid[0], ..state0 };
    samples.push(state);
    residuals.push(r0);
    let mut termination = Termination::Completed;

    for w in grid.windows(2) {
        let h = w[1] - w[0];
        let mut next = match config.method {
            Method::Rk4 => rk4_step(model, &state, h),
            Method::Leapfrog => leapfrog_step(model, &state, h),
        };
        next.sigma = w[1];
        if !next.is_finite() {
            return Err(RayError::IntegrationFailure { sigma: w[1] });
        }
        if model.slowness_squared_at(&next.x) <= 0.0 {
            termination = Termination::NonPhysicalMedium { sigma: w[1] };
            break;
        }
        residuals.push(eikonal_residual(model, &next));
        samples.push(next);
        state = next;
    }

    Ok(Ray {
        samples,
        residuals,
        termination,
    })
}

type Phase = [f64; 7];

fn ray_rhs(model: &QuadraticSeismicModel, s: &Phase) -> Phase {
    let x = [s[0], s[1], s[2]];
    let g = model.slowness_squared_gradient(&x);
    [s[3], s[4], s[5], 0.5 * g[0], 0.5 * g[1], 0.5 * g[2], model.slowness_squared_at(&x)]
}

fn axpy(y: &Phase, a: f64, x: &Phase) -> Phase {
    std::array::from_fn(|i| y[i] + a * x[i])
}

fn rk4_step(model: &QuadraticSeismicModel, st: &RayState, h: f64) -> RayState {
    let y: Phase = [st.x[0], st.x[1], st.x[2], st.p[0], st.p[1], st.p[2], st.tau];
    let k1 = ray_rhs(model, &y);
    let k2 = ray_rhs(model, &axpy(&y, 0.5 * h, &k1));
    let k3 = ray_rhs(model, &axpy(&y, 0.5 * h, &k2));
    let k4 = ray_rhs(model, &axpy(&y, h, &k3));
    let n: Phase = std::array::from_fn(|i| y[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]));
    RayState {
        x: [n[0], n[1], n[2]],
        p: [n[3], n[4], n[5]],
        tau: n[6],
        sigma: st.sigma + h,
    }
}

/// Kick-drift-kick on `(x, p)`; `τ` by the midpoint rule.
fn leapfrog_step(model: &QuadraticSeismicModel, st: &RayState, h: f64) -> RayState {
    let g0 = model.slowness_squared_gradient(&st.x);
    let p_half: [f64; 3] = std::array::from_fn(|i| st.p[i] + 0.25 * h * g0[i]);
    let x: [f64; 3] = std::array::from_fn(|i| st.x[i] + h * p_half[i]);
    let g1 = model.slowness_squared_gradient(&x);
    let p: [f64; 3] = std::array::from_fn(|i| p_half[i] + 0.25 * h * g1[i]);
    let mid: [f64; 3] = std::array::from_fn(|i| 0.5 * (st.x[i] + x[i]));
    RayState {
        x,
        p,
        tau: st.tau + h * model.slowness_squared_at(&mid),
        sigma: st.sigma + h,
    }
}

/// `Φ(σ)` sampled along a ray.
#[derive(Clone, Debug, PartialEq)]
pub struct FundamentalMatrix {
    pub sigma: f64,
    pub matrix: DMatrix<f64>,
}

/// Integrates `Φ' = A(σ)Φ`, `A = J·Hess(H)` at the ray samples, with RK4 on
/// the ray's own grid. Midpoint values of `A` are interpolated linearly.
pub fn variational_flow(
    h: &Hamiltonian,
    ray: &Ray,
    config: &IntegratorConfig,
) -> Result<Vec<FundamentalMatrix>, RayError> {
    if h.degrees() != 3 {
        return Err(RayError::Mismatch(format!(
            "Hamiltonian has {} degrees of freedom, rays live in 3",
            h.degrees()
        )));
    }
    let samples = ray.samples();
    for (i, w) in samples.windows(2).enumerate() {
        let d = w[1].sigma - w[0].sigma;
        let last = i + 2 == samples.len();
        let tol = 1e-9 * config.step.max(w[1].sigma.abs());
        if d > config.step + tol || (!last && (d - config.step).abs() > tol) {
            return Err(RayError::Mismatch(format!(
                "sample spacing {d} at sigma = {} differs from step {}",
                w[0].sigma, config.step
            )));
        }
    }

    let sym = variational_matrix_symbolic(h);
    let constant = sym.iter().flatten().all(|p| p.is_constant());
    let compiled: Vec<Vec<NumericPolynomial>> = sym
        .iter()
        .map(|row| row.iter().map(|p| p.to_numeric()).collect())
        .collect();
    let eval_at = |s: &RayState| {
        let pt = s.phase_point();
        DMatrix::from_fn(6, 6, |i, j| compiled[i][j].eval_real(&pt))
    };

    let mut phi = DMatrix::<f64>::identity(6, 6);
    let mut out = Vec::with_capacity(samples.len());
    out.push(FundamentalMatrix {
        sigma: samples[0].sigma,
        matrix: phi.clone(),
    });
    let a_const = constant.then(|| eval_at(&samples[0]));
    let mut a0 = a_const.clone().unwrap_or_else(|| eval_at(&samples[0]));
    for w in samples.windows(2) {
        let step = w[1].sigma - w[0].sigma;
        let a1 = a_const.clone().unwrap_or_else(|| eval_at(&w[1]));
        let am = if constant { a0.clone() } else { (&a0 + &a1) * 0.5 };
        let k1 = &a0 * &phi;
        let k2 = &am * (&phi + &k1 * (0.5 * step));
        let k3 = &am * (&phi + &k2 * (0.5 * step));
        let k4 = &a1 * (&phi + &k3 * step);
        phi += (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (step / 6.0);
        if phi.iter().any(|v| !v.is_finite()) {
            return Err(RayError::IntegrationFailure { sigma: w[1].sigma });
        }
        out.push(FundamentalMatrix {
            sigma: w[1].sigma,
            matrix: phi.clone(),
        });
        a0 = a1;
    }
    Ok(out)
}

/// `‖ΦᵀJΦ − J‖_∞` (maximum absolute row sum). Panics on odd dimension.
pub fn symplectic_defect(phi: &DMatrix<f64>) -> f64 {
    let m = phi.nrows();
    assert!(m == phi.ncols() && m % 2 == 0, "need an even square matrix");
    let j = SymplecticForm::new(m / 2).matrix();
    let d = phi.transpose() * &j * phi - &j;
    d.row_iter()
        .map(|r| r.iter().map(|v| v.abs()).sum::<f64>())
        .fold(0.0, f64::max)
}
