//! Sparse multivariate polynomials with exact coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_complex::Complex64;
use num_traits::{One, Zero};

use super::{AlgebraError, ComplexRational};

/// Exponent vector of a monomial; its length is the arity of the ring.
pub type Exponents = Vec<u32>;

/// Ordered variable names of a polynomial ring.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Variables(Arc<[String]>);

impl Variables {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Self {
        Self(names.into_iter().map(Into::into).collect())
    }

    /// `q1..qn, p1..pn`, the canonical phase-space ordering.
    pub fn phase_space(n: usize) -> Self {
        Self::new(
            (1..=n)
                .map(|i| format!("q{i}"))
                .chain((1..=n).map(|i| format!("p{i}"))),
        )
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|n| n == name)
    }
}

/// A polynomial stored as a map from exponent vectors to nonzero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Polynomial {
    vars: Variables,
    terms: BTreeMap<Exponents, ComplexRational>,
}

impl Polynomial {
    pub fn zero(vars: &Variables) -> Self {
        Self {
            vars: vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &Variables, c: ComplexRational) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(vec![0; vars.len()], c);
        }
        p
    }

    pub fn one(vars: &Variables) -> Self {
        Self::constant(vars, ComplexRational::one())
    }

    /// The polynomial `x_index`.
    pub fn variable(vars: &Variables, index: usize) -> Result<Self, AlgebraError> {
        check_index(index, vars.len())?;
        let mut e = vec![0; vars.len()];
        e[index] = 1;
        Self::monomial(vars, e, ComplexRational::one())
    }

    pub fn monomial(
        vars: &Variables,
        exponents: Exponents,
        coeff: ComplexRational,
    ) -> Result<Self, AlgebraError> {
        if exponents.len() != vars.len() {
            return Err(AlgebraError::ArityMismatch {
                left: vars.len(),
                right: exponents.len(),
            });
        }
        let mut p = Self::zero(vars);
        if !coeff.is_zero() {
            p.terms.insert(exponents, coeff);
        }
        Ok(p)
    }

    /// Build from `(exponents, coefficient)` pairs; repeated exponents are summed.
    pub fn from_terms(
        vars: &Variables,
        terms: impl IntoIterator<Item = (Exponents, ComplexRational)>,
    ) -> Result<Self, AlgebraError> {
        let mut p = Self::zero(vars);
        for (e, c) in terms {
            if e.len() != vars.len() {
                return Err(AlgebraError::ArityMismatch {
                    left: vars.len(),
                    right: e.len(),
                });
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    fn add_term(&mut self, e: Exponents, c: ComplexRational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn arity(&self) -> usize {
        self.vars.len()
    }

    pub fn variables(&self) -> &Variables {
        &self.vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &ComplexRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, exponents: &[u32]) -> ComplexRational {
        self.terms
            .get(exponents)
            .cloned()
            .unwrap_or_else(ComplexRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn is_constant(&self) -> bool {
        self.total_degree().unwrap_or(0) == 0
    }

    /// Constant term if the polynomial is constant.
    pub fn as_constant(&self) -> Option<ComplexRational> {
        if self.is_constant() {
            Some(self.coefficient(&vec![0; self.arity()]))
        } else {
            None
        }
    }

    /// True when some monomial has a positive exponent in `var`.
    pub fn depends_on(&self, var: usize) -> bool {
        self.terms.keys().any(|e| e.get(var).copied().unwrap_or(0) > 0)
    }

    fn compatible(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.arity() != other.arity() {
            return Err(AlgebraError::ArityMismatch {
                left: self.arity(),
                right: other.arity(),
            });
        }
        if self.vars != other.vars {
            return Err(AlgebraError::VariableMismatch);
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.compatible(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.compatible(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.compatible(other)?;
        let mut out = Self::zero(&self.vars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Exponents = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &ComplexRational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        Self {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one(&self.vars);
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Formal partial derivative with respect to variable `var`.
    pub fn partial(&self, var: usize) -> Result<Self, AlgebraError> {
        check_index(var, self.arity())?;
        let mut out = Self::zero(&self.vars);
        for (e, c) in &self.terms {
            let k = e[var];
            if k == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[var] -= 1;
            out.add_term(e2, c * &ComplexRational::from_integer(k as i64));
        }
        Ok(out)
    }

    pub fn gradient(&self, vars: &[usize]) -> Result<Vec<Self>, AlgebraError> {
        vars.iter().map(|&v| self.partial(v)).collect()
    }

    /// Matrix of second partials `H[i][j] = ∂²f/∂x_{vars[i]}∂x_{vars[j]}`.
    pub fn hessian(&self, vars: &[usize]) -> Result<Vec<Vec<Self>>, AlgebraError> {
        let grad = self.gradient(vars)?;
        grad.iter().map(|g| g.gradient(vars)).collect()
    }

    /// Numeric evaluation. Panics if `point.len() != arity`.
    pub fn eval(&self, point: &[Complex64]) -> Complex64 {
        self.to_numeric().eval(point)
    }

    /// Copy with float coefficients for repeated evaluation.
    pub fn to_numeric(&self) -> NumericPolynomial {
        NumericPolynomial {
            arity: self.arity(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), c.to_complex64()))
                .collect(),
        }
    }
}

fn check_index(index: usize, arity: usize) -> Result<(), AlgebraError> {
    if index >= arity {
        Err(AlgebraError::IndexOutOfRange { index, arity })
    } else {
        Ok(())
    }
}

/// Panics on incompatible variable sets; use [`Polynomial::checked_add`] to recover.
impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("polynomial addition")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.checked_sub(rhs).expect("polynomial subtraction")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs).expect("polynomial multiplication")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // highest degree first
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|a, b| {
            let da: u32 = a.0.iter().sum();
            let db: u32 = b.0.iter().sum();
            db.cmp(&da).then_with(|| b.0.cmp(a.0))
        });
        for (k, (e, c)) in terms.into_iter().enumerate() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &p)| p > 0)
                .map(|(i, &p)| {
                    let name = &self.vars.names()[i];
                    if p == 1 {
                        name.clone()
                    } else {
                        format!("{name}^{p}")
                    }
                })
                .collect();
            let cs = if c.is_real() { c.to_string() } else { format!("({c})") };
            if k > 0 {
                write!(f, " + ")?;
            }
            match (mono.is_empty(), c.is_one()) {
                (true, _) => write!(f, "{cs}")?,
                (false, true) => write!(f, "{}", mono.join("*"))?,
                (false, false) => write!(f, "{cs}*{}", mono.join("*"))?,
            }
        }
        Ok(())
    }
}

/// Float image of a [`Polynomial`], for evaluation in inner loops.
#[derive(Clone, Debug)]
pub struct NumericPolynomial {
    arity: usize,
    terms: Vec<(Exponents, Complex64)>,
}

impl NumericPolynomial {
    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn eval(&self, point: &[Complex64]) -> Complex64 {
        assert_eq!(point.len(), self.arity, "evaluation point has wrong length");
        self.terms
            .iter()
            .map(|(e, c)| {
                e.iter()
                    .zip(point)
                    .filter(|(&k, _)| k > 0)
                    .fold(*c, |acc, (&k, x)| acc * x.powu(k))
            })
            .sum()
    }

    /// Real evaluation using the real parts of the coefficients.
    pub fn eval_real(&self, point: &[f64]) -> f64 {
        assert_eq!(point.len(), self.arity, "evaluation point has wrong length");
        self.terms
            .iter()
            .map(|(e, c)| {
                e.iter()
                    .zip(point)
                    .filter(|(&k, _)| k > 0)
                    .fold(c.re, |acc, (&k, x)| acc * x.powi(k as i32))
            })
            .sum()
    }
}

/// Canonical Poisson bracket on `q1..qn, p1..pn`:
/// `{f,g} = Σ_k ∂f/∂q_k ∂g/∂p_k − ∂f/∂p_k ∂g/∂q_k`, so `{q_i, p_j} = δ_ij`.
pub fn poisson_bracket(f: &Polynomial, g: &Polynomial, n: usize) -> Result<Polynomial, AlgebraError> {
    for arity in [f.arity(), g.arity()] {
        if arity != 2 * n {
            return Err(AlgebraError::NotPhaseSpace { arity, degrees: n });
        }
    }
    f.compatible(g)?;
    let mut out = Polynomial::zero(f.variables());
    for k in 0..n {
        let fq = f.partial(k)?;
        let fp = f.partial(n + k)?;
        let gq = g.partial(k)?;
        let gp = g.partial(n + k)?;
        out = out.checked_add(&fq.checked_mul(&gp)?)?;
        out = out.checked_sub(&fp.checked_mul(&gq)?)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vars2() -> Variables {
        Variables::phase_space(1)
    }

    fn c(n: i64) -> ComplexRational {
        ComplexRational::from_integer(n)
    }

    #[test]
    fn additive_inverse_is_zero() {
        let v = vars2();
        let q = Polynomial::variable(&v, 0).unwrap();
        assert!((&q + &(-&q)).is_zero());
    }

    #[test]
    fn disjoint_supports_add() {
        let v = vars2();
        let q = Polynomial::variable(&v, 0).unwrap();
        let p = Polynomial::variable(&v, 1).unwrap();
        let f = &q.pow(2) + &Polynomial::one(&v);
        let s = &f + &p;
        assert_eq!(s.num_terms(), 3);
        assert_eq!(s.coefficient(&[2, 0]), c(1));
        assert_eq!(s.coefficient(&[0, 1]), c(1));
        assert_eq!(s.coefficient(&[0, 0]), c(1));
    }

    #[test]
    fn difference_of_squares() {
        let v = vars2();
        let q = Polynomial::variable(&v, 0).unwrap();
        let p = Polynomial::variable(&v, 1).unwrap();
        let prod = &(&q + &p) * &(&q - &p);
        let expected = &q.pow(2) - &p.pow(2);
        assert_eq!(prod, expected);
        assert_eq!(&prod * &Polynomial::one(&v), prod);
    }

    #[test]
    fn arity_mismatch_is_an_error() {
        let a = Polynomial::one(&Variables::phase_space(1));
        let b = Polynomial::one(&Variables::phase_space(2));
        assert!(matches!(
            a.checked_add(&b),
            Err(AlgebraError::ArityMismatch { left: 2, right: 4 })
        ));
        assert!(a.checked_mul(&b).is_err());
        assert!(Polynomial::variable(&Variables::phase_space(1), 2).is_err());
    }

    #[test]
    fn power_rule_and_disjoint_partial() {
        let v = vars2();
        let q = Polynomial::variable(&v, 0).unwrap();
        let p = Polynomial::variable(&v, 1).unwrap();
        assert_eq!(q.pow(2).partial(0).unwrap(), q.scale(&c(2)));
        let b = ComplexRational::ratio(3, 7);
        let h = &p.pow(2).scale(&ComplexRational::ratio(1, 2)) + &q.pow(2).scale(&b);
        assert_eq!(h.partial(1).unwrap(), p);
        assert!(matches!(
            h.partial(5),
            Err(AlgebraError::IndexOutOfRange { index: 5, arity: 2 })
        ));
    }

    #[test]
    fn eval_basics() {
        let v = vars2();
        let q = Polynomial::variable(&v, 0).unwrap();
        let pt = [Complex64::new(3.0, 0.0), Complex64::new(-1.0, 0.0)];
        assert_eq!(q.pow(2).eval(&pt), Complex64::new(9.0, 0.0));
        assert_eq!(Polynomial::zero(&v).eval(&pt), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn hessian_simple_cases() {
        let v = Variables::new(["q1", "q2"]);
        let q1 = Polynomial::variable(&v, 0).unwrap();
        let q2 = Polynomial::variable(&v, 1).unwrap();
        let f = &q1.pow(2) + &q2.pow(2);
        let h = f.hessian(&[0, 1]).unwrap();
        assert_eq!(h[0][0].as_constant(), Some(c(2)));
        assert_eq!(h[1][1].as_constant(), Some(c(2)));
        assert!(h[0][1].is_zero() && h[1][0].is_zero());
        let lin = &(&q1.scale(&c(5)) - &q2) + &Polynomial::one(&v);
        assert!(lin.hessian(&[0, 1]).unwrap().iter().flatten().all(Polynomial::is_zero));
    }

    #[test]
    fn canonical_pair_bracket() {
        let v = vars2();
        let q = Polynomial::variable(&v, 0).unwrap();
        let p = Polynomial::variable(&v, 1).unwrap();
        assert_eq!(poisson_bracket(&q, &p, 1).unwrap(), Polynomial::one(&v));
        assert_eq!(poisson_bracket(&p, &q, 1).unwrap(), -&Polynomial::one(&v));
        assert!(matches!(
            poisson_bracket(&q, &p, 2),
            Err(AlgebraError::NotPhaseSpace { .. })
        ));
    }

    #[test]
    fn display_is_readable() {
        let v = vars2();
        let q = Polynomial::variable(&v, 0).unwrap();
        let p = Polynomial::variable(&v, 1).unwrap();
        let f = &(&q.pow(2).scale(&c(3)) + &p) - &Polynomial::one(&v);
        assert_eq!(f.to_string(), "3*q1^2 + p1 + -1");
    }
}
