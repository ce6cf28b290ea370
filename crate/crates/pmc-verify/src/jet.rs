//! Truncated bivariate Taylor arithmetic ("jets") in two chart variables.
//!
//! A [`Jet`] stores the Taylor coefficients c_ij of a scalar function about an
//! evaluation point, for every monomial δu^i δv^j with i + j ≤ degree, in
//! graded-lexicographic order (c_ij = ∂^{i+j}f / ∂u^i ∂v^j · 1/(i!·j!)).
//! Arithmetic is exact on polynomials of total degree ≤ degree, which makes
//! jets the derivative carrier for the whole geometry pipeline: a quantity
//! computed in jet arithmetic carries its own exact partial derivatives.
//!
//! Truncation is silent — jets *are* truncations. Differentiation
//! ([`Jet::partial_u`], [`Jet::partial_v`]) reduces the degree by one and
//! binary operations truncate to the smaller operand degree, so a jet's
//! degree always states how many derivative orders of it are trustworthy.

use std::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

pub use crate::thresholds::{DEFAULT_JET_DEGREE, DIV_EPSILON};

/// Errors from jet arithmetic and elementary-function composition.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum JetError {
    /// Division where the divisor's constant term is (numerically) zero.
    /// This signals a degenerate chart point.
    #[error("division by jet with singular constant term {value:e} (|.| < {epsilon:e})")]
    DivisionBySingularJet { value: f64, epsilon: f64 },
    /// Elementary function applied outside its domain (e.g. sqrt/log of a
    /// non-positive constant term).
    #[error("{func} undefined at constant term {value}")]
    DomainError { func: &'static str, value: f64 },
    /// Requested partial derivative order exceeds the retained degree.
    #[error("partial order ({i},{j}) exceeds jet degree {degree}")]
    OrderOutOfRange { i: usize, j: usize, degree: usize },
    /// The jet does not retain enough orders for the requested operation.
    #[error("jet degree {degree} insufficient, need at least {needed}")]
    InsufficientDegree { degree: usize, needed: usize },
    /// Coefficient vector length does not match the triangular layout.
    #[error("coefficient vector has length {got}, degree {degree} needs {expected}")]
    CoefficientLength {
        degree: usize,
        expected: usize,
        got: usize,
    },
}

/// Number of coefficients retained at a given total degree.
pub const fn triangle_len(degree: usize) -> usize {
    (degree + 1) * (degree + 2) / 2
}

/// Storage index of the monomial δu^i δv^j (graded-lex order).
#[inline]
const fn index(i: usize, j: usize) -> usize {
    let k = i + j;
    k * (k + 1) / 2 + j
}

const fn factorial(n: usize) -> f64 {
    let mut acc = 1.0;
    let mut k = 2;
    while k <= n {
        acc *= k as f64;
        k += 1;
    }
    acc
}

/// A truncated bivariate Taylor polynomial of fixed total degree.
#[derive(Debug, Clone, PartialEq)]
pub struct Jet {
    degree: usize,
    coeffs: Vec<f64>,
}

impl Jet {
    /// The zero jet of the given degree.
    pub fn zero(degree: usize) -> Self {
        Jet {
            degree,
            coeffs: vec![0.0; triangle_len(degree)],
        }
    }

    /// A constant jet (all derivatives zero).
    pub fn constant(value: f64, degree: usize) -> Self {
        let mut jet = Jet::zero(degree);
        jet.coeffs[0] = value;
        jet
    }

    /// The first chart variable: value + δu.
    pub fn variable_u(value: f64, degree: usize) -> Self {
        let mut jet = Jet::constant(value, degree);
        if degree >= 1 {
            jet.coeffs[index(1, 0)] = 1.0;
        }
        jet
    }

    /// The second chart variable: value + δv.
    pub fn variable_v(value: f64, degree: usize) -> Self {
        let mut jet = Jet::constant(value, degree);
        if degree >= 1 {
            jet.coeffs[index(0, 1)] = 1.0;
        }
        jet
    }

    /// Builds a jet from raw Taylor coefficients in graded-lex order.
    pub fn from_coeffs(degree: usize, coeffs: Vec<f64>) -> Result<Self, JetError> {
        let expected = triangle_len(degree);
        if coeffs.len() != expected {
            return Err(JetError::CoefficientLength {
                degree,
                expected,
                got: coeffs.len(),
            });
        }
        Ok(Jet { degree, coeffs })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// The constant term, i.e. the value at the expansion point.
    pub fn value(&self) -> f64 {
        self.coeffs[0]
    }

    /// Taylor coefficient c_ij; zero for orders beyond the retained degree.
    pub fn coeff(&self, i: usize, j: usize) -> f64 {
        if i + j > self.degree {
            0.0
        } else {
            self.coeffs[index(i, j)]
        }
    }

    /// The partial derivative ∂^{i+j}/∂u^i ∂v^j at the expansion point,
    /// i.e. c_ij · i! · j!.
    pub fn partial(&self, i: usize, j: usize) -> Result<f64, JetError> {
        if i + j > self.degree {
            return Err(JetError::OrderOutOfRange {
                i,
                j,
                degree: self.degree,
            });
        }
        Ok(self.coeffs[index(i, j)] * factorial(i) * factorial(j))
    }

    /// Differentiates with respect to the first variable; degree drops by one.
    pub fn partial_u(&self) -> Result<Jet, JetError> {
        self.shift_derivative(true)
    }

    /// Differentiates with respect to the second variable; degree drops by one.
    pub fn partial_v(&self) -> Result<Jet, JetError> {
        self.shift_derivative(false)
    }

    fn shift_derivative(&self, along_u: bool) -> Result<Jet, JetError> {
        if self.degree == 0 {
            return Err(JetError::InsufficientDegree {
                degree: 0,
                needed: 1,
            });
        }
        let degree = self.degree - 1;
        let mut out = Jet::zero(degree);
        for k in 0..=degree {
            for j in 0..=k {
                let i = k - j;
                let c = if along_u {
                    (i + 1) as f64 * self.coeffs[index(i + 1, j)]
                } else {
                    (j + 1) as f64 * self.coeffs[index(i, j + 1)]
                };
                out.coeffs[index(i, j)] = c;
            }
        }
        Ok(out)
    }

    /// Drops coefficients above `degree` (no-op when already lower).
    pub fn truncated(&self, degree: usize) -> Jet {
        if degree >= self.degree {
            return self.clone();
        }
        let mut out = Jet::zero(degree);
        out.coeffs
            .copy_from_slice(&self.coeffs[..triangle_len(degree)]);
        out
    }

    /// Multiplies every coefficient by a scalar.
    pub fn scale(&self, factor: f64) -> Jet {
        Jet {
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    /// Evaluates the truncated polynomial at offsets (δu, δv).
    pub fn eval(&self, du: f64, dv: f64) -> f64 {
        let mut acc = 0.0;
        for k in 0..=self.degree {
            for j in 0..=k {
                let i = k - j;
                acc += self.coeffs[index(i, j)] * du.powi(i as i32) * dv.powi(j as i32);
            }
        }
        acc
    }

    fn zip(&self, rhs: &Jet, f: impl Fn(f64, f64) -> f64) -> Jet {
        let degree = self.degree.min(rhs.degree);
        let len = triangle_len(degree);
        let coeffs = (0..len)
            .map(|idx| f(self.coeffs[idx], rhs.coeffs[idx]))
            .collect();
        Jet { degree, coeffs }
    }

    fn mul_impl(&self, rhs: &Jet) -> Jet {
        let degree = self.degree.min(rhs.degree);
        let mut out = Jet::zero(degree);
        for ka in 0..=degree {
            for ja in 0..=ka {
                let ia = ka - ja;
                let a = self.coeffs[index(ia, ja)];
                if a == 0.0 {
                    continue;
                }
                for kb in 0..=(degree - ka) {
                    for jb in 0..=kb {
                        let ib = kb - jb;
                        out.coeffs[index(ia + ib, ja + jb)] += a * rhs.coeffs[index(ib, jb)];
                    }
                }
            }
        }
        out
    }

    /// Truncated quotient. Fails when the divisor's constant term is within
    /// [`DIV_EPSILON`] of zero.
    pub fn try_div(&self, rhs: &Jet) -> Result<Jet, JetError> {
        Ok(self.mul_impl(&rhs.recip()?))
    }

    /// Truncated reciprocal series 1/self.
    pub fn recip(&self) -> Result<Jet, JetError> {
        let x0 = self.value();
        if x0.abs() < DIV_EPSILON {
            return Err(JetError::DivisionBySingularJet {
                value: x0,
                epsilon: DIV_EPSILON,
            });
        }
        // f(x) = 1/x: f^{(k)}(x0)/k! = (-1)^k / x0^{k+1}
        let mut taylor = Vec::with_capacity(self.degree + 1);
        let mut t = 1.0 / x0;
        taylor.push(t);
        for _ in 1..=self.degree {
            t = -t / x0;
            taylor.push(t);
        }
        Ok(self.compose(&taylor))
    }

    /// Composes the univariate Taylor series of f about the constant term
    /// with this jet: result = Σ_k taylor[k] · (self − c₀)^k.
    fn compose(&self, taylor: &[f64]) -> Jet {
        let mut w = self.clone();
        w.coeffs[0] = 0.0;
        let mut acc = Jet::constant(taylor[0], self.degree);
        let mut power = Jet::constant(1.0, self.degree);
        for &t in &taylor[1..] {
            power = power.mul_impl(&w);
            acc = acc.zip(&power.scale(t), |a, b| a + b);
        }
        acc
    }

    /// Truncated Taylor expansion of √self; the constant term must be positive.
    pub fn sqrt(&self) -> Result<Jet, JetError> {
        let x0 = self.value();
        if x0 <= 0.0 {
            return Err(JetError::DomainError {
                func: "sqrt",
                value: x0,
            });
        }
        // Ratio of consecutive coefficients of C(1/2, k) x0^{1/2-k}.
        let mut taylor = Vec::with_capacity(self.degree + 1);
        let mut t = x0.sqrt();
        taylor.push(t);
        for k in 1..=self.degree {
            t *= (0.5 - (k as f64 - 1.0)) / (k as f64 * x0);
            taylor.push(t);
        }
        Ok(self.compose(&taylor))
    }

    /// Truncated expansion of self^p (constant term must be positive).
    pub fn powf(&self, p: f64) -> Result<Jet, JetError> {
        let x0 = self.value();
        if x0 <= 0.0 {
            return Err(JetError::DomainError {
                func: "powf",
                value: x0,
            });
        }
        let mut taylor = Vec::with_capacity(self.degree + 1);
        let mut t = x0.powf(p);
        taylor.push(t);
        for k in 1..=self.degree {
            t *= (p - (k as f64 - 1.0)) / (k as f64 * x0);
            taylor.push(t);
        }
        Ok(self.compose(&taylor))
    }

    /// Truncated expansion of exp(self).
    pub fn exp(&self) -> Jet {
        let e = self.value().exp();
        let mut taylor = Vec::with_capacity(self.degree + 1);
        let mut t = e;
        taylor.push(t);
        for k in 1..=self.degree {
            t /= k as f64;
            taylor.push(t);
        }
        self.compose(&taylor)
    }

    /// Truncated expansion of ln(self); the constant term must be positive.
    pub fn ln(&self) -> Result<Jet, JetError> {
        let x0 = self.value();
        if x0 <= 0.0 {
            return Err(JetError::DomainError {
                func: "log",
                value: x0,
            });
        }
        // ln'(x0) = 1/x0, then c_k = -c_{k-1} (k-1) / (k x0).
        let mut taylor = Vec::with_capacity(self.degree + 1);
        taylor.push(x0.ln());
        if self.degree >= 1 {
            let mut t = 1.0 / x0;
            taylor.push(t);
            for k in 2..=self.degree {
                t *= -((k as f64 - 1.0) / (k as f64 * x0));
                taylor.push(t);
            }
        }
        Ok(self.compose(&taylor))
    }

    /// Truncated expansion of sin(self).
    pub fn sin(&self) -> Jet {
        self.compose(&circular_taylor(self.value(), self.degree, 0))
    }

    /// Truncated expansion of cos(self).
    pub fn cos(&self) -> Jet {
        self.compose(&circular_taylor(self.value(), self.degree, 1))
    }
}

/// Taylor coefficients of sin (phase 0) or cos (phase 1) about x0.
fn circular_taylor(x0: f64, degree: usize, phase: usize) -> Vec<f64> {
    let (s, c) = x0.sin_cos();
    let cycle = [s, c, -s, -c];
    let mut taylor = Vec::with_capacity(degree + 1);
    let mut inv_fact = 1.0;
    for k in 0..=degree {
        if k > 0 {
            inv_fact /= k as f64;
        }
        taylor.push(cycle[(k + phase) % 4] * inv_fact);
    }
    taylor
}

impl Add for &Jet {
    type Output = Jet;
    fn add(self, rhs: &Jet) -> Jet {
        self.zip(rhs, |a, b| a + b)
    }
}

impl Sub for &Jet {
    type Output = Jet;
    fn sub(self, rhs: &Jet) -> Jet {
        self.zip(rhs, |a, b| a - b)
    }
}

impl Mul for &Jet {
    type Output = Jet;
    fn mul(self, rhs: &Jet) -> Jet {
        self.mul_impl(rhs)
    }
}

impl Neg for &Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        self.scale(-1.0)
    }
}

impl Add for Jet {
    type Output = Jet;
    fn add(self, rhs: Jet) -> Jet {
        &self + &rhs
    }
}

impl Sub for Jet {
    type Output = Jet;
    fn sub(self, rhs: Jet) -> Jet {
        &self - &rhs
    }
}

impl Mul for Jet {
    type Output = Jet;
    fn mul(self, rhs: Jet) -> Jet {
        &self * &rhs
    }
}

impl Mul<f64> for &Jet {
    type Output = Jet;
    fn mul(self, rhs: f64) -> Jet {
        self.scale(rhs)
    }
}
