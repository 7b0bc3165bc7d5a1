//! Seismic models with quadratic squared slowness and the Hamiltonian
//! machinery built on them.
//!
//! The squared slowness is `u(q) = 1/c²(q) = a0 + Σ a_i q_i + Σ b_i q_i²`.
//! The associated Hamiltonian is `H = |p|²/2 − u(q)/2`, whose flow is the ray
//! system `dx/dσ = p`, `dp/dσ = ∇u/2` and whose level set `H = 0` is the
//! eikonal equation.

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use crate::algebra::{poisson_bracket, AlgebraError, ComplexRational, Polynomial, Variables};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HamiltonError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("polynomial has {arity} variables, expected {expected}")]
    Arity { arity: usize, expected: usize },
    #[error("Hamiltonian is not a set of uncoupled oscillators: {0}")]
    NotUncoupled(String),
}

/// Squared-slowness field `u(q) = a0 + Σ a_i q_i + Σ b_i q_i²` in three
/// dimensions, with no `q_i q_j` interaction terms.
///
/// Coefficients are kept exactly; float copies are cached for tracing.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadraticSeismicModel {
    a0: BigRational,
    a: [BigRational; 3],
    b: [BigRational; 3],
    a0_f: f64,
    a_f: [f64; 3],
    b_f: [f64; 3],
}

impl QuadraticSeismicModel {
    pub fn new(a0: BigRational, a: [BigRational; 3], b: [BigRational; 3]) -> Self {
        let f = |r: &BigRational| r.to_f64().unwrap_or(f64::NAN);
        Self {
            a0_f: f(&a0),
            a_f: [f(&a[0]), f(&a[1]), f(&a[2])],
            b_f: [f(&b[0]), f(&b[1]), f(&b[2])],
            a0,
            a,
            b,
        }
    }

    /// Exact binary values of the given floats. Non-finite input yields `None`.
    pub fn from_f64(a0: f64, a: [f64; 3], b: [f64; 3]) -> Option<Self> {
        let r = |x: f64| BigRational::from_float(x);
        Some(Self::new(
            r(a0)?,
            [r(a[0])?, r(a[1])?, r(a[2])?],
            [r(b[0])?, r(b[1])?, r(b[2])?],
        ))
    }

    /// Homogeneous medium with velocity `c`, i.e. `u = 1/c²`.
    pub fn constant_velocity(c: f64) -> Option<Self> {
        Self::from_f64(1.0 / (c * c), [0.0; 3], [0.0; 3])
    }

    pub fn a0(&self) -> &BigRational {
        &self.a0
    }

    pub fn linear(&self) -> &[BigRational; 3] {
        &self.a
    }

    pub fn quadratic(&self) -> &[BigRational; 3] {
        &self.b
    }

    /// `u(x)` in floating point.
    pub fn slowness_squared_at(&self, x: &[f64; 3]) -> f64 {
        let mut u = self.a0_f;
        for i in 0..3 {
            u += x[i] * (self.a_f[i] + self.b_f[i] * x[i]);
        }
        u
    }

    /// `∇u(x)` in floating point.
    pub fn slowness_squared_gradient(&self, x: &[f64; 3]) -> [f64; 3] {
        std::array::from_fn(|i| self.a_f[i] + 2.0 * self.b_f[i] * x[i])
    }

    /// Velocity `c(x) = u(x)^{-1/2}`; `None` where `u ≤ 0`.
    pub fn velocity_at(&self, x: &[f64; 3]) -> Option<f64> {
        let u = self.slowness_squared_at(x);
        (u > 0.0).then(|| u.sqrt().recip())
    }

    /// `u` as an exact polynomial on the six phase-space variables.
    pub fn slowness_squared(&self) -> Polynomial {
        let vars = Variables::phase_space(3);
        let cr = |r: &BigRational| ComplexRational::from_real(r.clone());
        let mut terms = vec![(vec![0; 6], cr(&self.a0))];
        for i in 0..3 {
            let mut e1 = vec![0; 6];
            e1[i] = 1;
            terms.push((e1, cr(&self.a[i])));
            let mut e2 = vec![0; 6];
            e2[i] = 2;
            terms.push((e2, cr(&self.b[i])));
        }
        Polynomial::from_terms(&vars, terms).expect("arity 6 by construction")
    }

    /// Constant Hessian of `u`, which is `2·diag(b)`.
    pub fn slowness_squared_hessian(&self) -> [[BigRational; 3]; 3] {
        let two = BigRational::from_integer(2.into());
        std::array::from_fn(|i| {
            std::array::from_fn(|j| if i == j { &two * &self.b[i] } else { BigRational::zero() })
        })
    }
}

/// A polynomial Hamiltonian on `q1..qn, p1..pn`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hamiltonian {
    degrees: usize,
    poly: Polynomial,
}

impl Hamiltonian {
    pub fn new(degrees: usize, poly: Polynomial) -> Result<Self, HamiltonError> {
        if poly.arity() != 2 * degrees {
            return Err(HamiltonError::Arity {
                arity: poly.arity(),
                expected: 2 * degrees,
            });
        }
        Ok(Self { degrees, poly })
    }

    /// `|p|²/2 + V(q)` for a potential given on the phase-space variables.
    pub fn natural(degrees: usize, potential: &Polynomial) -> Result<Self, HamiltonError> {
        let kinetic = kinetic_energy(degrees);
        Self::new(degrees, kinetic.checked_add(potential)?)
    }

    pub fn degrees(&self) -> usize {
        self.degrees
    }

    pub fn poly(&self) -> &Polynomial {
        &self.poly
    }

    pub fn q_indices(&self) -> Vec<usize> {
        (0..self.degrees).collect()
    }

    pub fn all_indices(&self) -> Vec<usize> {
        (0..2 * self.degrees).collect()
    }
}

/// `|p|²/2` on the canonical variables of `n` degrees of freedom.
pub fn kinetic_energy(n: usize) -> Polynomial {
    let vars = Variables::phase_space(n);
    let half = ComplexRational::ratio(1, 2);
    Polynomial::from_terms(
        &vars,
        (0..n).map(|i| {
            let mut e = vec![0; 2 * n];
            e[n + i] = 2;
            (e, half.clone())
        }),
    )
    .expect("arity 2n by construction")
}

/// The constant matrix `J = [[0, I], [−I, 0]]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SymplecticForm {
    n: usize,
}

impl SymplecticForm {
    pub fn new(n: usize) -> Self {
        Self { n }
    }

    pub fn degrees(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> DMatrix<f64> {
        let n = self.n;
        DMatrix::from_fn(2 * n, 2 * n, |i, j| {
            if i < n && j == i + n {
                1.0
            } else if i >= n && j + n == i {
                -1.0
            } else {
                0.0
            }
        })
    }
}

/// `H = |p|²/2 − u(q)/2`.
pub fn hamiltonian_from_model(model: &QuadraticSeismicModel) -> Hamiltonian {
    let potential = model.slowness_squared().scale(&ComplexRational::ratio(-1, 2));
    Hamiltonian::natural(3, &potential).expect("arity 6")
}

/// `X_H = J∇H = (∂H/∂p, −∂H/∂q)`.
pub fn hamiltonian_vector_field(h: &Hamiltonian) -> Vec<Polynomial> {
    let n = h.degrees;
    let grad = h.poly.gradient(&h.all_indices()).expect("indices in range");
    let mut field: Vec<Polynomial> = grad[n..].to_vec();
    field.extend(grad[..n].iter().map(|g| -g));
    field
}

/// `J·Hess(H)` as a matrix of exact polynomials.
pub fn variational_matrix_symbolic(h: &Hamiltonian) -> Vec<Vec<Polynomial>> {
    let n = h.degrees;
    let hess = h.poly.hessian(&h.all_indices()).expect("indices in range");
    let mut rows: Vec<Vec<Polynomial>> = hess[n..].to_vec();
    rows.extend(hess[..n].iter().map(|r| r.iter().map(|p| -p).collect()));
    rows
}

/// `A = J·Hess(H)` evaluated at a phase-space point.
pub fn variational_matrix(h: &Hamiltonian, point: &[Complex64]) -> DMatrix<Complex64> {
    assert_eq!(point.len(), 2 * h.degrees, "point has wrong length");
    let sym = variational_matrix_symbolic(h);
    let m = 2 * h.degrees;
    DMatrix::from_fn(m, m, |i, j| sym[i][j].eval(point))
}

/// Real variant of [`variational_matrix`] for real Hamiltonians.
pub fn variational_matrix_real(h: &Hamiltonian, point: &[f64]) -> DMatrix<f64> {
    let z: Vec<Complex64> = point.iter().map(|&x| Complex64::new(x, 0.0)).collect();
    variational_matrix(h, &z).map(|c| c.re)
}

/// Groups of canonical pairs `(q_i, p_i)` coupled through some monomial.
/// Pairs that never occur are omitted; sorted by smallest pair index.
pub fn separable_components(h: &Hamiltonian) -> Vec<Vec<usize>> {
    let n = h.degrees;
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    let mut used = vec![false; n];
    for (e, _) in h.poly.terms() {
        let pairs: Vec<usize> = (0..n).filter(|&k| e[k] > 0 || e[n + k] > 0).collect();
        for &k in &pairs {
            used[k] = true;
        }
        for w in pairs.windows(2) {
            let (ra, rb) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
            if ra != rb {
                parent[ra.max(rb)] = ra.min(rb);
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut root_slot = vec![usize::MAX; n];
    for k in 0..n {
        if !used[k] {
            continue;
        }
        let r = find(&mut parent, k);
        if root_slot[r] == usize::MAX {
            root_slot[r] = groups.len();
            groups.push(Vec::new());
        }
        groups[root_slot[r]].push(k);
    }
    groups
}

/// Split `H` into sub-Hamiltonians on disjoint groups of canonical pairs.
///
/// Every sub-Hamiltonian keeps the full phase space. A constant term goes
/// to the first block. With fewer than two groups, `H` is returned whole.
pub fn split_separable(h: &Hamiltonian) -> Vec<Hamiltonian> {
    let groups = separable_components(h);
    if groups.len() < 2 {
        return vec![h.clone()];
    }
    let n = h.degrees;
    let vars = h.poly.variables();
    let mut block_of = vec![usize::MAX; n];
    for (g, pairs) in groups.iter().enumerate() {
        for &k in pairs {
            block_of[k] = g;
        }
    }
    let mut blocks: Vec<Vec<_>> = vec![Vec::new(); groups.len()];
    for (e, c) in h.poly.terms() {
        let g = (0..n)
            .find(|&k| e[k] > 0 || e[n + k] > 0)
            .map_or(0, |k| block_of[k]);
        blocks[g].push((e.clone(), c.clone()));
    }
    blocks
        .into_iter()
        .map(|terms| {
            let poly = Polynomial::from_terms(vars, terms).expect("same arity");
            Hamiltonian { degrees: n, poly }
        })
        .collect()
}

/// `report[i][j]` is true iff `{F_i, F_j} = 0` exactly.
pub fn involution_report(
    integrals: &[Polynomial],
    n: usize,
) -> Result<Vec<Vec<bool>>, HamiltonError> {
    if let Some(bad) = integrals.iter().find(|f| f.arity() != 2 * n) {
        return Err(AlgebraError::NotPhaseSpace {
            arity: bad.arity(),
            degrees: n,
        }
        .into());
    }
    let m = integrals.len();
    let mut out = vec![vec![true; m]; m];
    for i in 0..m {
        for j in (i + 1)..m {
            let zero = poisson_bracket(&integrals[i], &integrals[j], n)?.is_zero();
            out[i][j] = zero;
            out[j][i] = zero;
        }
    }
    Ok(out)
}

/// For `H` whose variational equation decouples into `ξ̈_i = k_i ξ_i`,
/// returns `k_i = −∂²H/∂q_i²`.
///
/// Requires a constant Hessian with identity momentum block, no mixed
/// `q`–`p` terms and a diagonal position block.
pub fn uncoupled_oscillator_coefficients(
    h: &Hamiltonian,
) -> Result<Vec<ComplexRational>, HamiltonError> {
    let n = h.degrees;
    let hess = h.poly.hessian(&h.all_indices())?;
    let mut consts = vec![vec![ComplexRational::zero(); 2 * n]; 2 * n];
    for i in 0..2 * n {
        for j in 0..2 * n {
            consts[i][j] = hess[i][j].as_constant().ok_or_else(|| {
                HamiltonError::NotUncoupled(format!("Hessian entry ({i},{j}) is not constant"))
            })?;
        }
    }
    let one = ComplexRational::from_integer(1);
    for i in 0..n {
        for j in 0..n {
            if i != j && !consts[i][j].is_zero() {
                return Err(HamiltonError::NotUncoupled(format!(
                    "position interaction q{}q{}",
                    i + 1,
                    j + 1
                )));
            }
            let mom = &consts[n + i][n + j];
            let expected = if i == j { one.clone() } else { ComplexRational::zero() };
            if *mom != expected {
                return Err(HamiltonError::NotUncoupled(
                    "momentum block is not the identity".into(),
                ));
            }
            if !consts[i][n + j].is_zero() {
                return Err(HamiltonError::NotUncoupled("mixed q-p term".into()));
            }
        }
    }
    Ok((0..n).map(|i| -&consts[i][i]).collect())
}

/// The decoupled oscillator coefficients of the model's variational
/// equation, `k_i = b_i`.
pub fn oscillator_coefficients(model: &QuadraticSeismicModel) -> [ComplexRational; 3] {
    let k = uncoupled_oscillator_coefficients(&hamiltonian_from_model(model))
        .expect("quadratic seismic models have no interactions");
    [k[0].clone(), k[1].clone(), k[2].clone()]
}
