//! Polynomials in time.
//!
//! [`Cubic`] is the public fixed-degree type used for phase policies and
//! scalar Hamiltonian terms. [`Series`] is an unbounded-degree scratch type
//! used while substituting coordinate maps; results are narrowed back to
//! [`Cubic`] with an explicit degree check.

use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `c0 + c1 t + c2 t^2 + c3 t^3`
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Cubic(pub [f64; 4]);

impl Cubic {
    pub const ZERO: Cubic = Cubic([0.0; 4]);

    pub fn new(c0: f64, c1: f64, c2: f64, c3: f64) -> Self {
        Cubic([c0, c1, c2, c3])
    }

    pub fn constant(c: f64) -> Self {
        Cubic([c, 0.0, 0.0, 0.0])
    }

    pub fn linear(slope: f64) -> Self {
        Cubic([0.0, slope, 0.0, 0.0])
    }

    pub fn coeffs(&self) -> [f64; 4] {
        self.0
    }

    pub fn eval(&self, t: f64) -> f64 {
        let [c0, c1, c2, c3] = self.0;
        c0 + t * (c1 + t * (c2 + t * c3))
    }

    pub fn derivative(&self) -> Cubic {
        let [_, c1, c2, c3] = self.0;
        Cubic([c1, 2.0 * c2, 3.0 * c3, 0.0])
    }

    pub fn eval_derivative(&self, t: f64) -> f64 {
        self.derivative().eval(t)
    }

    /// Exact `integral_{t0}^{t1} p(t) dt`.
    pub fn integral(&self, t0: f64, t1: f64) -> f64 {
        let [c0, c1, c2, c3] = self.0;
        let anti = |t: f64| t * (c0 + t * (c1 / 2.0 + t * (c2 / 3.0 + t * c3 / 4.0)));
        anti(t1) - anti(t0)
    }

    /// Antiderivative with zero constant term, if it stays cubic.
    pub fn antiderivative(&self) -> Option<Cubic> {
        let [c0, c1, c2, c3] = self.0;
        if c3 != 0.0 {
            return None;
        }
        Some(Cubic([0.0, c0, c1 / 2.0, c2 / 3.0]))
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0.0)
    }

    pub fn max_abs_diff(&self, other: &Cubic) -> f64 {
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

impl Add for Cubic {
    type Output = Cubic;
    fn add(self, rhs: Cubic) -> Cubic {
        let mut c = self.0;
        c.iter_mut().zip(rhs.0).for_each(|(a, b)| *a += b);
        Cubic(c)
    }
}

impl Sub for Cubic {
    type Output = Cubic;
    fn sub(self, rhs: Cubic) -> Cubic {
        self + (-rhs)
    }
}

impl Neg for Cubic {
    type Output = Cubic;
    fn neg(self) -> Cubic {
        Cubic(self.0.map(|c| -c))
    }
}

/// Polynomial in `t` with arbitrary degree; `coeffs[j]` multiplies `t^j`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Series {
    pub coeffs: Vec<f64>,
}

impl Series {
    pub fn zero() -> Self {
        Series { coeffs: Vec::new() }
    }

    pub fn constant(c: f64) -> Self {
        Series { coeffs: vec![c] }
    }

    pub fn from_slice(c: &[f64]) -> Self {
        Series { coeffs: c.to_vec() }
    }

    /// `c * t^power`
    pub fn monomial(c: f64, power: usize) -> Self {
        let mut coeffs = vec![0.0; power + 1];
        coeffs[power] = c;
        Series { coeffs }
    }

    pub fn coeff(&self, j: usize) -> f64 {
        self.coeffs.get(j).copied().unwrap_or(0.0)
    }

    /// Highest power with a nonzero coefficient; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|&c| c != 0.0)
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * t + c)
    }

    pub fn derivative(&self) -> Series {
        Series {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(j, &c)| j as f64 * c)
                .collect(),
        }
    }

    pub fn scale(&self, s: f64) -> Series {
        Series {
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    pub fn to_cubic(&self, what: &str) -> Result<Cubic> {
        match self.degree() {
            Some(d) if d > 3 => Err(Error::DegreeOverflow(format!("{what} has degree {d} > 3"))),
            _ => Ok(Cubic([
                self.coeff(0),
                self.coeff(1),
                self.coeff(2),
                self.coeff(3),
            ])),
        }
    }
}

impl From<Cubic> for Series {
    fn from(c: Cubic) -> Self {
        Series::from_slice(&c.0)
    }
}

impl Add for &Series {
    type Output = Series;
    fn add(self, rhs: &Series) -> Series {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Series {
            coeffs: (0..n).map(|j| self.coeff(j) + rhs.coeff(j)).collect(),
        }
    }
}

impl Sub for &Series {
    type Output = Series;
    fn sub(self, rhs: &Series) -> Series {
        self + &rhs.scale(-1.0)
    }
}

impl Mul for &Series {
    type Output = Series;
    fn mul(self, rhs: &Series) -> Series {
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return Series::zero();
        }
        let mut coeffs = vec![0.0; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Series { coeffs }
    }
}
