//! Shared generators and oracles for the integration and acceptance tests.
#![allow(dead_code)]

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_rational::BigRational;
use rand::Rng;
use seisgal::algebra::{ComplexRational, Polynomial, Variables};
use seisgal::hamiltonics::{hamiltonian_vector_field, Hamiltonian, QuadraticSeismicModel};

pub fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(num.into(), den.into())
}

pub fn random_coeff<R: Rng>(rng: &mut R) -> ComplexRational {
    let re = ComplexRational::ratio(rng.random_range(-9..=9), rng.random_range(1..=5));
    if rng.random_bool(0.25) {
        let im = ComplexRational::ratio(rng.random_range(-9..=9), rng.random_range(1..=5));
        &re + &(&im * &ComplexRational::i())
    } else {
        re
    }
}

/// Up to `max_terms` random monomials of total degree at most `max_deg`.
pub fn random_poly<R: Rng>(rng: &mut R, vars: &Variables, max_deg: u32, max_terms: usize) -> Polynomial {
    let n = vars.len();
    let count = rng.random_range(0..=max_terms);
    let terms = (0..count).map(|_| {
        let mut e = vec![0u32; n];
        let deg = rng.random_range(0..=max_deg);
        for _ in 0..deg {
            e[rng.random_range(0..n)] += 1;
        }
        (e, random_coeff(rng))
    });
    Polynomial::from_terms(vars, terms).unwrap()
}

/// Random real cubic in `2n` phase-space variables.
pub fn random_real_cubic<R: Rng>(rng: &mut R, n: usize) -> Polynomial {
    let vars = Variables::phase_space(n);
    let terms = (0..12).map(|_| {
        let mut e = vec![0u32; 2 * n];
        let deg = rng.random_range(1..=3);
        for _ in 0..deg {
            e[rng.random_range(0..2 * n)] += 1;
        }
        (e, ComplexRational::ratio(rng.random_range(-9..=9), rng.random_range(1..=7)))
    });
    Polynomial::from_terms(&vars, terms).unwrap()
}

/// Model with exact rational coefficients and `u(0) = a0 > 0`.
pub fn random_diagonal_model<R: Rng>(rng: &mut R) -> QuadraticSeismicModel {
    let mut r = |lo: i64, hi: i64| rational(rng.random_range(lo..=hi), rng.random_range(1..=9));
    let a0 = &r(1, 9) + &rational(1, 1);
    let a = [r(-5, 5), r(-5, 5), r(-5, 5)];
    let b = [r(-5, 5), r(-5, 5), r(-5, 5)];
    QuadraticSeismicModel::new(a0, a, b)
}

/// Central-difference Jacobian of `X_H` at a real point.
pub fn fd_jacobian(h: &Hamiltonian, point: &[f64], step: f64) -> DMatrix<f64> {
    let field: Vec<_> = hamiltonian_vector_field(h).iter().map(|p| p.to_numeric()).collect();
    let m = point.len();
    DMatrix::from_fn(m, m, |i, j| {
        let mut plus = point.to_vec();
        let mut minus = point.to_vec();
        plus[j] += step;
        minus[j] -= step;
        (field[i].eval_real(&plus) - field[i].eval_real(&minus)) / (2.0 * step)
    })
}

/// `Σ_{k<terms} (tM)^k / k!`, with no scaling or shortcuts.
pub fn raw_series_exp(m: &DMatrix<Complex64>, t: Complex64, terms: usize) -> DMatrix<Complex64> {
    let n = m.nrows();
    let a = m * t;
    let mut sum = DMatrix::<Complex64>::identity(n, n);
    let mut term = sum.clone();
    for k in 1..terms {
        term = &term * &a / Complex64::new(k as f64, 0.0);
        sum += &term;
    }
    sum
}

pub fn max_abs_diff(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> f64 {
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

/// Max entry difference divided by `max(1, max |b|)`.
pub fn scaled_diff(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> f64 {
    let scale = b.iter().fold(1.0f64, |m, z| m.max(z.norm()));
    max_abs_diff(a, b) / scale
}

/// Closed-form ray in `u = 1 + q3` from the origin with `p0 = (sinθ, 0, cosθ)`.
pub fn linear_medium_ray(theta: f64, sigma: f64) -> ([f64; 3], [f64; 3], f64) {
    let (s, c) = theta.sin_cos();
    let x = [s * sigma, 0.0, c * sigma + sigma * sigma / 4.0];
    let p = [s, 0.0, c + sigma / 2.0];
    let tau = sigma + c * sigma * sigma / 2.0 + sigma.powi(3) / 12.0;
    (x, p, tau)
}

/// Closed-form ray in `u = a0 − ω² q3²` from the origin with a vertical
/// take-off: `x3 = (√a0/ω) sin ωσ`, `p3 = √a0 cos ωσ`.
pub fn harmonic_medium_ray(a0: f64, omega: f64, sigma: f64) -> (f64, f64) {
    let s = a0.sqrt();
    (s / omega * (omega * sigma).sin(), s * (omega * sigma).cos())
}
