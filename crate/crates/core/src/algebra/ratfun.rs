//! Univariate polynomials and rational functions over the Gaussian rationals.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{AlgebraError, ComplexRational};

/// Dense univariate polynomial, coefficients from the constant term upward.
/// The leading coefficient is never zero.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct UnivariatePolynomial {
    coeffs: Vec<ComplexRational>,
}

impl UnivariatePolynomial {
    pub fn new(mut coeffs: Vec<ComplexRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: ComplexRational) -> Self {
        Self::new(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(ComplexRational::one())
    }

    /// The indeterminate `x`.
    pub fn x() -> Self {
        Self::new(vec![ComplexRational::zero(), ComplexRational::one()])
    }

    /// `c·x^k`.
    pub fn monomial(c: ComplexRational, k: usize) -> Self {
        let mut v = vec![ComplexRational::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    /// `x − x0`.
    pub fn linear_factor(x0: &ComplexRational) -> Self {
        Self::new(vec![-x0, ComplexRational::one()])
    }

    pub fn coeffs(&self) -> &[ComplexRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&ComplexRational> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &ComplexRational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Divide by the leading coefficient. The zero polynomial stays zero.
    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(l) if !l.is_one() => self.scale(&l.inv().expect("nonzero leading coefficient")),
            _ => self.clone(),
        }
    }

    pub fn eval(&self, x: &ComplexRational) -> ComplexRational {
        self.coeffs
            .iter()
            .rev()
            .fold(ComplexRational::zero(), |acc, c| &(&acc * x) + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * &ComplexRational::from_integer(k as i64))
                .collect(),
        )
    }

    /// Coefficients reversed with respect to `x^deg`: returns `x^deg · p(1/x)`.
    /// Panics if `deg` is below the degree.
    pub fn reversed(&self, deg: usize) -> Self {
        assert!(self.degree().is_none_or(|d| d <= deg));
        let mut v = vec![ComplexRational::zero(); deg + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            v[deg - k] = c.clone();
        }
        Self::new(v)
    }

    /// Euclidean division; `None` when `divisor` is zero.
    pub fn div_rem(&self, divisor: &Self) -> Option<(Self, Self)> {
        let dd = divisor.degree()?;
        let lead_inv = divisor.leading()?.inv()?;
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree() else {
            return Some((Self::zero(), Self::zero()));
        };
        if nd < dd {
            return Some((Self::zero(), self.clone()));
        }
        let mut quot = vec![ComplexRational::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let c = &rem[k + dd] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = &rem[k + j] - &(&c * d);
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Some((Self::new(quot), Self::new(rem)))
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Multiplicity of `x0` as a root; `None` for the zero polynomial.
    /// Found by repeated synthetic division by `x − x0`.
    pub fn root_multiplicity(&self, x0: &ComplexRational) -> Option<u32> {
        if self.is_zero() {
            return None;
        }
        let mut p = self.coeffs.clone();
        let mut mult = 0;
        loop {
            // synthetic division of p by (x − x0)
            let n = p.len();
            let mut q = vec![ComplexRational::zero(); n.saturating_sub(1)];
            let mut carry = ComplexRational::zero();
            for k in (0..n).rev() {
                let v = &p[k] + &(&carry * x0);
                if k == 0 {
                    carry = v;
                } else {
                    q[k - 1] = v.clone();
                    carry = v;
                }
            }
            if !carry.is_zero() || q.is_empty() {
                return Some(mult);
            }
            mult += 1;
            p = q;
        }
    }
}

impl Add for &UnivariatePolynomial {
    type Output = UnivariatePolynomial;
    fn add(self, rhs: &UnivariatePolynomial) -> UnivariatePolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let zero = ComplexRational::zero();
        UnivariatePolynomial::new(
            (0..n)
                .map(|k| {
                    self.coeffs.get(k).unwrap_or(&zero) + rhs.coeffs.get(k).unwrap_or(&zero)
                })
                .collect(),
        )
    }
}

impl Neg for &UnivariatePolynomial {
    type Output = UnivariatePolynomial;
    fn neg(self) -> UnivariatePolynomial {
        UnivariatePolynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Sub for &UnivariatePolynomial {
    type Output = UnivariatePolynomial;
    fn sub(self, rhs: &UnivariatePolynomial) -> UnivariatePolynomial {
        self + &(-rhs)
    }
}

impl Mul for &UnivariatePolynomial {
    type Output = UnivariatePolynomial;
    fn mul(self, rhs: &UnivariatePolynomial) -> UnivariatePolynomial {
        if self.is_zero() || rhs.is_zero() {
            return UnivariatePolynomial::zero();
        }
        let mut v = vec![ComplexRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        UnivariatePolynomial::new(v)
    }
}

impl fmt::Display for UnivariatePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| {
                let cs = if c.is_real() { c.to_string() } else { format!("({c})") };
                match k {
                    0 => cs,
                    1 if c.is_one() => "x".to_string(),
                    1 => format!("{cs}*x"),
                    _ if c.is_one() => format!("x^{k}"),
                    _ => format!("{cs}*x^{k}"),
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Order of a rational function at a point: `ord(num) − ord(den)`.
/// Negative values are poles; the zero function has infinite order.
#[derive(Clone, Copy, PartialEq, Eq, Debug, PartialOrd, Ord)]
pub enum Order {
    Finite(i64),
    Infinite,
}

impl Order {
    pub fn at_least(self, k: i64) -> bool {
        match self {
            Order::Finite(n) => n >= k,
            Order::Infinite => true,
        }
    }
}

/// `num / den` with `gcd(num, den) = 1` and `den` monic.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RationalFunction {
    num: UnivariatePolynomial,
    den: UnivariatePolynomial,
}

impl RationalFunction {
    pub fn new(num: UnivariatePolynomial, den: UnivariatePolynomial) -> Result<Self, AlgebraError> {
        if den.is_zero() {
            return Err(AlgebraError::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let g = num.gcd(&den);
        let (mut n, _) = num.div_rem(&g).expect("gcd is nonzero");
        let (mut d, _) = den.div_rem(&g).expect("gcd is nonzero");
        let lead_inv = d.leading().and_then(ComplexRational::inv).expect("nonzero");
        n = n.scale(&lead_inv);
        d = d.scale(&lead_inv);
        Ok(Self { num: n, den: d })
    }

    pub fn zero() -> Self {
        Self {
            num: UnivariatePolynomial::zero(),
            den: UnivariatePolynomial::one(),
        }
    }

    pub fn constant(c: ComplexRational) -> Self {
        Self::from_polynomial(UnivariatePolynomial::constant(c))
    }

    pub fn from_polynomial(p: UnivariatePolynomial) -> Self {
        Self {
            num: p,
            den: UnivariatePolynomial::one(),
        }
    }

    /// `c · x^k` for any integer `k`.
    pub fn power_of_x(c: ComplexRational, k: i64) -> Self {
        if k >= 0 {
            Self::from_polynomial(UnivariatePolynomial::monomial(c, k as usize))
        } else {
            Self::new(
                UnivariatePolynomial::constant(c),
                UnivariatePolynomial::monomial(ComplexRational::one(), (-k) as usize),
            )
            .expect("nonzero denominator")
        }
    }

    pub fn numerator(&self) -> &UnivariatePolynomial {
        &self.num
    }

    pub fn denominator(&self) -> &UnivariatePolynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Order at `x0`: positive for zeros, negative for poles.
    pub fn order_at(&self, x0: &ComplexRational) -> Order {
        match self.num.root_multiplicity(x0) {
            None => Order::Infinite,
            Some(zn) => {
                let zd = self.den.root_multiplicity(x0).expect("denominator is nonzero");
                Order::Finite(zn as i64 - zd as i64)
            }
        }
    }

    /// `r(1/x)`, again as a normalized rational function of `x`.
    pub fn compose_reciprocal(&self) -> Self {
        let Some(m) = self.num.degree() else {
            return Self::zero();
        };
        let d = self.den.degree().expect("denominator is nonzero");
        // N(1/x) = x^{-m} rev_m N,  D(1/x) = x^{-d} rev_d D
        let shift = d as i64 - m as i64;
        let base = Self::new(self.num.reversed(m), self.den.reversed(d)).expect("nonzero");
        &base * &Self::power_of_x(ComplexRational::one(), shift)
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, AlgebraError> {
        if rhs.is_zero() {
            return Err(AlgebraError::ZeroDenominator);
        }
        Self::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }

    /// Exact value at `x`; `None` at a pole.
    pub fn eval(&self, x: &ComplexRational) -> Option<ComplexRational> {
        let d = self.den.eval(x);
        d.inv().map(|di| &self.num.eval(x) * &di)
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::new(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
        .expect("product of nonzero denominators")
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::new(&self.num * &rhs.num, &self.den * &rhs.den)
            .expect("product of nonzero denominators")
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.degree() == Some(0) {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}
