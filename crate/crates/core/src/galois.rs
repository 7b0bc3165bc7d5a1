//! Singular points of `y'' + b1 y' + b0 y = 0` and the differential Galois
//! groups of the decoupled variational equations `ξ̈ = k ξ`.
//!
//! With constant coefficients the base field is `ℂ`. For `k = 0` the
//! solutions `{1, t}` generate `ℂ(t)` and the automorphisms `t ↦ t + μ` form
//! the additive group. For `k ≠ 0` the solutions `exp(±√k t)` generate
//! `ℂ(exp(√k t))` and the automorphisms `y ↦ λ^{±1} y` form the
//! multiplicative group.

use std::fmt;

use nalgebra::Matrix2;
use num_complex::Complex64;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{ComplexRational, RationalFunction};
use crate::hamiltonics::{oscillator_coefficients, QuadraticSeismicModel};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GaloisError {
    #[error("multiplicative group parameter must be nonzero")]
    ZeroMultiplier,
    #[error("{factor:?} factor cannot act on a {basis} solution basis")]
    KindMismatch { factor: FactorKind, basis: &'static str },
}

/// `y'' + b1(x) y' + b0(x) y = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct SecondOrderOde {
    pub b1: RationalFunction,
    pub b0: RationalFunction,
}

impl SecondOrderOde {
    pub fn new(b1: RationalFunction, b0: RationalFunction) -> Self {
        Self { b1, b0 }
    }

    /// `y'' = k y`, i.e. `b1 = 0`, `b0 = −k`.
    pub fn oscillator(k: &ComplexRational) -> Self {
        Self::new(RationalFunction::zero(), RationalFunction::constant(-k))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PointClass {
    Ordinary,
    RegularSingular,
    IrregularSingular,
}

impl fmt::Display for PointClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            PointClass::Ordinary => "Ordinary",
            PointClass::RegularSingular => "RegularSingular",
            PointClass::IrregularSingular => "IrregularSingular",
        };
        f.write_str(s)
    }
}

/// Ordinary when `b1, b0` are analytic at `x0`; regular singular when
/// `(x−x0) b1` and `(x−x0)² b0` are; irregular otherwise.
pub fn classify_point(ode: &SecondOrderOde, x0: &ComplexRational) -> PointClass {
    let o1 = ode.b1.order_at(x0);
    let o0 = ode.b0.order_at(x0);
    if o1.at_least(0) && o0.at_least(0) {
        PointClass::Ordinary
    } else if o1.at_least(-1) && o0.at_least(-2) {
        PointClass::RegularSingular
    } else {
        PointClass::IrregularSingular
    }
}

/// The equation after `x = 1/z`:
/// `B1(z) = 2/z − b1(1/z)/z²`, `B0(z) = b0(1/z)/z⁴`.
pub fn ode_at_infinity(ode: &SecondOrderOde) -> SecondOrderOde {
    let one = ComplexRational::from_integer(1);
    let two_over_z = RationalFunction::power_of_x(ComplexRational::from_integer(2), -1);
    let b1 = &two_over_z - &(&ode.b1.compose_reciprocal() * &RationalFunction::power_of_x(one.clone(), -2));
    let b0 = &ode.b0.compose_reciprocal() * &RationalFunction::power_of_x(one, -4);
    SecondOrderOde::new(b1, b0)
}

/// Class of the point at infinity, i.e. of `z = 0` after `x = 1/z`.
pub fn classify_at_infinity(ode: &SecondOrderOde) -> PointClass {
    classify_point(&ode_at_infinity(ode), &ComplexRational::zero())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FactorKind {
    Additive,
    Multiplicative,
}

impl FactorKind {
    pub fn symbol(self) -> &'static str {
        match self {
            FactorKind::Additive => "Ga",
            FactorKind::Multiplicative => "Gm",
        }
    }
}

/// One abelian factor: `{[[1, μ], [0, 1]] : μ ∈ ℂ}` or
/// `{[[λ, 0], [0, 1/λ]] : λ ∈ ℂ*}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GaloisFactor {
    pub kind: FactorKind,
}

impl GaloisFactor {
    pub fn additive() -> Self {
        Self { kind: FactorKind::Additive }
    }

    pub fn multiplicative() -> Self {
        Self { kind: FactorKind::Multiplicative }
    }

    pub fn generator(&self) -> &'static str {
        match self.kind {
            FactorKind::Additive => "[[1, mu], [0, 1]]",
            FactorKind::Multiplicative => "[[lambda, 0], [0, 1/lambda]]",
        }
    }

    pub fn element(&self, param: Complex64) -> Result<Matrix2<Complex64>, GaloisError> {
        factor_element(self, param)
    }
}

pub fn factor_element(factor: &GaloisFactor, param: Complex64) -> Result<Matrix2<Complex64>, GaloisError> {
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    match factor.kind {
        FactorKind::Additive => Ok(Matrix2::new(one, param, zero, one)),
        FactorKind::Multiplicative => {
            if param == zero {
                return Err(GaloisError::ZeroMultiplier);
            }
            Ok(Matrix2::new(param, zero, zero, param.inv()))
        }
    }
}

/// A fundamental system of `ξ̈ = k ξ`.
#[derive(Clone, Debug, PartialEq)]
pub enum SolutionBasis {
    /// `{1, t}` for `k = 0`.
    Polynomial,
    /// `{exp(r t), exp(−r t)}` with `r = √k` on the principal branch.
    Exponential { k: ComplexRational, root: Complex64 },
}

impl SolutionBasis {
    fn name(&self) -> &'static str {
        match self {
            SolutionBasis::Polynomial => "polynomial",
            SolutionBasis::Exponential { .. } => "exponential",
        }
    }

    pub fn descriptor(&self) -> String {
        match self {
            SolutionBasis::Polynomial => "{1, t}".into(),
            SolutionBasis::Exponential { k, .. } => {
                format!("{{exp(sqrt({k}) t), exp(-sqrt({k}) t)}}")
            }
        }
    }

    /// The Picard-Vessiot extension of `ℂ` generated by the basis.
    pub fn extension(&self) -> String {
        match self {
            SolutionBasis::Polynomial => "C(t)".into(),
            SolutionBasis::Exponential { k, .. } => format!("C(exp(sqrt({k}) t))"),
        }
    }

    pub fn eval(&self, t: Complex64) -> [Complex64; 2] {
        match self {
            SolutionBasis::Polynomial => [Complex64::new(1.0, 0.0), t],
            SolutionBasis::Exponential { root, .. } => [(root * t).exp(), (-root * t).exp()],
        }
    }

    pub fn derivative(&self, t: Complex64) -> [Complex64; 2] {
        match self {
            SolutionBasis::Polynomial => [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
            SolutionBasis::Exponential { root, .. } => {
                [root * (root * t).exp(), -root * (-root * t).exp()]
            }
        }
    }

    pub fn second_derivative(&self, t: Complex64) -> [Complex64; 2] {
        match self {
            SolutionBasis::Polynomial => [Complex64::new(0.0, 0.0); 2],
            SolutionBasis::Exponential { root, .. } => {
                let r2 = root * root;
                [r2 * (root * t).exp(), r2 * (-root * t).exp()]
            }
        }
    }

    pub fn wronskian(&self, t: Complex64) -> Complex64 {
        let y = self.eval(t);
        let dy = self.derivative(t);
        y[0] * dy[1] - dy[0] * y[1]
    }
}

/// Galois factor and solution basis of `ξ̈ = k ξ`. The zero test is exact.
pub fn classify_oscillator(k: &ComplexRational) -> (GaloisFactor, SolutionBasis) {
    if k.is_zero() {
        (GaloisFactor::additive(), SolutionBasis::Polynomial)
    } else {
        (
            GaloisFactor::multiplicative(),
            SolutionBasis::Exponential {
                k: k.clone(),
                root: k.to_complex64().sqrt(),
            },
        )
    }
}

/// Ordered triple of factors, one per decoupled oscillator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GaloisProduct(pub [GaloisFactor; 3]);

impl GaloisProduct {
    pub fn kinds(&self) -> [FactorKind; 3] {
        self.0.map(|f| f.kind)
    }

    /// Block-diagonal 6×6 element from one parameter per factor.
    pub fn element(&self, params: [Complex64; 3]) -> Result<nalgebra::Matrix6<Complex64>, GaloisError> {
        let mut m = nalgebra::Matrix6::zeros();
        for (i, (f, p)) in self.0.iter().zip(params).enumerate() {
            let b = factor_element(f, p)?;
            m.fixed_view_mut::<2, 2>(2 * i, 2 * i).copy_from(&b);
        }
        Ok(m)
    }
}

impl fmt::Display for GaloisProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.kinds().map(FactorKind::symbol);
        write!(f, "{a}⊗{b}⊗{c}")
    }
}

/// Everything the classification derives for one model.
#[derive(Clone, Debug, PartialEq)]
pub struct AxisClassification {
    pub k: ComplexRational,
    pub factor: GaloisFactor,
    pub basis: SolutionBasis,
    pub infinity: PointClass,
}

pub fn classify_model(model: &QuadraticSeismicModel) -> GaloisProduct {
    let k = oscillator_coefficients(model);
    GaloisProduct(k.each_ref().map(|k| classify_oscillator(k).0))
}

/// Per-axis detail behind [`classify_model`].
pub fn classify_model_axes(model: &QuadraticSeismicModel) -> [AxisClassification; 3] {
    oscillator_coefficients(model).map(|k| {
        let (factor, basis) = classify_oscillator(&k);
        let infinity = classify_at_infinity(&SecondOrderOde::oscillator(&k));
        AxisClassification {
            k,
            factor,
            basis,
            infinity,
        }
    })
}

/// The automorphism with parameter `param` applied to the evaluated basis:
/// `(1, t) ↦ (1, t + μ)` or `(y1, y2) ↦ (λ y1, y2/λ)`.
pub fn basis_action(
    factor: &GaloisFactor,
    param: Complex64,
    basis: &SolutionBasis,
    t: Complex64,
) -> Result<[Complex64; 2], GaloisError> {
    let y = basis.eval(t);
    match (factor.kind, basis) {
        (FactorKind::Additive, SolutionBasis::Polynomial) => Ok([y[0], y[1] + param]),
        (FactorKind::Multiplicative, SolutionBasis::Exponential { .. }) => {
            if param == Complex64::new(0.0, 0.0) {
                return Err(GaloisError::ZeroMultiplier);
            }
            Ok([param * y[0], y[1] / param])
        }
        (kind, b) => Err(GaloisError::KindMismatch {
            factor: kind,
            basis: b.name(),
        }),
    }
}
