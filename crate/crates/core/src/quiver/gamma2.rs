//! The two-vertex quiver `Γ²` and the one-parameter groups obtained by
//! exponentiating its canonical representation.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use super::{canonical_representation, matrix_exponential, to_complex_matrix, ArrowId, CanonicalRep, ExactMatrix, Quiver};
use crate::galois::{factor_element, GaloisFactor};

const FACTOR_TOL: f64 = 1e-12;
const GROUP_LAW_TOL: f64 = 1e-10;

#[derive(Clone, Debug)]
pub struct Gamma2Sample {
    pub t: f64,
    /// `exp(t φ(α))`.
    pub additive: DMatrix<Complex64>,
    /// `exp(t (φ(ε₀) − φ(ε₁)))`.
    pub multiplicative: DMatrix<Complex64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Gamma2Check {
    pub name: String,
    pub passed: bool,
    pub measured: f64,
    pub tolerance: f64,
}

#[derive(Clone, Debug)]
pub struct Gamma2Report {
    pub quiver: Quiver,
    pub rep: CanonicalRep,
    pub samples: Vec<Gamma2Sample>,
    pub checks: Vec<Gamma2Check>,
}

impl Gamma2Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Entrywise distance scaled by `max(1, |b|)`.
fn mixed_distance(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm() / y.norm().max(1.0))
        .fold(0.0, f64::max)
}

fn check(name: &str, measured: f64, tolerance: f64) -> Gamma2Check {
    Gamma2Check {
        name: name.into(),
        passed: measured <= tolerance,
        measured,
        tolerance,
    }
}

fn exact_check(name: &str, holds: bool) -> Gamma2Check {
    Gamma2Check {
        name: name.into(),
        passed: holds,
        measured: if holds { 0.0 } else { 1.0 },
        tolerance: 0.0,
    }
}

pub fn gamma2_demo(ts: &[f64]) -> Gamma2Report {
    let quiver = Quiver::gamma2();
    let alpha = ArrowId(0);
    let path = quiver.arrow_path(alpha).expect("Γ² has one arrow");
    let rep = canonical_representation(&quiver, &path).expect("nontrivial path");

    let e0 = rep.vertex_matrix(0).clone();
    let e1 = rep.vertex_matrix(1).clone();
    let a = rep.arrow_matrix(alpha).clone();
    let id = ExactMatrix::identity(2, 2);
    let zero = ExactMatrix::zeros(2, 2);

    let mut checks = vec![
        exact_check("idempotent e0", &e0 * &e0 == e0),
        exact_check("idempotent e1", &e1 * &e1 == e1),
        exact_check("orthogonal e0 e1", &e0 * &e1 == zero && &e1 * &e0 == zero),
        exact_check("complete e0 + e1", &e0 + &e1 == id),
        exact_check("alpha = e0 alpha e1", &(&e0 * &a) * &e1 == a),
    ];

    let alpha_c = to_complex_matrix(&a);
    let diag_c = to_complex_matrix(&(&e0 - &e1));
    let generate = |t: f64| Gamma2Sample {
        t,
        additive: matrix_exponential(&alpha_c, Complex64::new(t, 0.0)),
        multiplicative: matrix_exponential(&diag_c, Complex64::new(t, 0.0)),
    };
    let samples: Vec<Gamma2Sample> = ts.iter().map(|&t| generate(t)).collect();

    let mut add_err = 0.0f64;
    let mut mul_err = 0.0f64;
    let mut tri_err = 0.0f64;
    let mut det_err = 0.0f64;
    for s in &samples {
        let mu = Complex64::new(s.t, 0.0);
        let lambda = Complex64::new(s.t.exp(), 0.0);
        let ga = factor_element(&GaloisFactor::additive(), mu).expect("additive");
        let gm = factor_element(&GaloisFactor::multiplicative(), lambda).expect("λ = e^t ≠ 0");
        add_err = add_err.max(mixed_distance(&s.additive, &DMatrix::from_iterator(2, 2, ga.iter().copied())));
        mul_err = mul_err.max(mixed_distance(&s.multiplicative, &DMatrix::from_iterator(2, 2, gm.iter().copied())));
        let m = &s.additive;
        tri_err = tri_err
            .max((m[(0, 0)] - 1.0).norm())
            .max((m[(1, 1)] - 1.0).norm())
            .max(m[(1, 0)].norm());
        for g in [&s.additive, &s.multiplicative] {
            let det = g[(0, 0)] * g[(1, 1)] - g[(0, 1)] * g[(1, 0)];
            det_err = det_err.max((det - 1.0).norm());
        }
    }
    checks.push(check("additive matches Ga", add_err, FACTOR_TOL));
    checks.push(check("multiplicative matches Gm", mul_err, FACTOR_TOL));
    checks.push(check("additive unitriangular", tri_err, FACTOR_TOL));
    checks.push(check("determinant one", det_err, FACTOR_TOL));

    let mut law_err = 0.0f64;
    for s in &samples {
        for r in &samples {
            let sum = generate(s.t + r.t);
            law_err = law_err
                .max(mixed_distance(&(&s.additive * &r.additive), &sum.additive))
                .max(mixed_distance(&(&s.multiplicative * &r.multiplicative), &sum.multiplicative));
        }
    }
    checks.push(check("group law", law_err, GROUP_LAW_TOL));

    Gamma2Report {
        quiver,
        rep,
        samples,
        checks,
    }
}
