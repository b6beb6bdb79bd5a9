use num_complex::Complex64;
use serde::Serialize;

use super::grid::Grid1D;
use crate::error::{Error, Result};

/// Diagnostic attached to a state by the operation that produced it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Warning {
    /// Largest sample magnitude at the box edges exceeds the tail threshold.
    BoundaryTail { magnitude: f64 },
    /// Momentum kick is not an integer multiple of `dp`.
    NonCommensurateKick { kick: f64, deviation: f64 },
}

/// Position-space samples `psi(x_j)` at time `time`.
#[derive(Debug, Clone, PartialEq)]
pub struct WaveFunction {
    pub grid: Grid1D,
    pub samples: Vec<Complex64>,
    pub time: f64,
    pub warnings: Vec<Warning>,
}

/// Momentum-space samples `phi(p_k)` in DFT bin order (see [`Grid1D::p`]).
#[derive(Debug, Clone, PartialEq)]
pub struct MomentumWaveFunction {
    pub grid: Grid1D,
    pub samples: Vec<Complex64>,
    pub time: f64,
    pub warnings: Vec<Warning>,
}

fn check_len(grid: &Grid1D, len: usize) -> Result<()> {
    if len != grid.n_points() {
        return Err(Error::InvalidArgument(format!(
            "expected {} samples, got {len}",
            grid.n_points()
        )));
    }
    Ok(())
}

impl WaveFunction {
    pub fn new(grid: Grid1D, samples: Vec<Complex64>, time: f64) -> Result<Self> {
        check_len(&grid, samples.len())?;
        Ok(Self {
            grid,
            samples,
            time,
            warnings: Vec::new(),
        })
    }

    pub fn from_fn(grid: Grid1D, time: f64, f: impl Fn(f64) -> Complex64) -> Self {
        let samples = grid.positions().map(f).collect();
        Self {
            grid,
            samples,
            time,
            warnings: Vec::new(),
        }
    }

    pub fn norm(&self) -> f64 {
        discrete_norm(&self.samples, self.grid.dx())
    }

    pub fn normalize(&mut self) {
        let n = self.norm();
        if n > 0.0 {
            let inv = 1.0 / n;
            self.samples.iter_mut().for_each(|c| *c *= inv);
        }
    }

    /// `sum_j x_j |psi_j|^2 dx`
    pub fn mean_position(&self) -> f64 {
        let dx = self.grid.dx();
        self.grid
            .positions()
            .zip(&self.samples)
            .map(|(x, c)| x * c.norm_sqr() * dx)
            .sum::<f64>()
            / self.norm().powi(2)
    }

    pub fn position_variance(&self) -> f64 {
        let mean = self.mean_position();
        let dx = self.grid.dx();
        self.grid
            .positions()
            .zip(&self.samples)
            .map(|(x, c)| (x - mean).powi(2) * c.norm_sqr() * dx)
            .sum::<f64>()
            / self.norm().powi(2)
    }

    pub fn boundary_magnitude(&self) -> f64 {
        let first = self.samples.first().map_or(0.0, |c| c.norm());
        let last = self.samples.last().map_or(0.0, |c| c.norm());
        first.max(last)
    }

    pub(crate) fn push_warning(&mut self, w: Warning) {
        if !self.warnings.contains(&w) {
            self.warnings.push(w);
        }
    }
}

impl MomentumWaveFunction {
    pub fn new(grid: Grid1D, samples: Vec<Complex64>, time: f64) -> Result<Self> {
        check_len(&grid, samples.len())?;
        Ok(Self {
            grid,
            samples,
            time,
            warnings: Vec::new(),
        })
    }

    pub fn norm(&self) -> f64 {
        discrete_norm(&self.samples, self.grid.dp())
    }

    /// `sum_k p_k |phi_k|^2 dp`
    pub fn mean_momentum(&self) -> f64 {
        let dp = self.grid.dp();
        self.grid
            .momenta()
            .zip(&self.samples)
            .map(|(p, c)| p * c.norm_sqr() * dp)
            .sum::<f64>()
            / self.norm().powi(2)
    }
}

fn discrete_norm(samples: &[Complex64], weight: f64) -> f64 {
    (samples.iter().map(|c| c.norm_sqr()).sum::<f64>() * weight).sqrt()
}

/// `<a, b> = sum conj(a_j) b_j dx`
pub fn inner_product(a: &WaveFunction, b: &WaveFunction) -> Result<Complex64> {
    same_grid(&a.grid, &b.grid)?;
    let dx = a.grid.dx();
    Ok(a.samples
        .iter()
        .zip(&b.samples)
        .map(|(x, y)| x.conj() * y)
        .sum::<Complex64>()
        * dx)
}

pub fn l2_distance(a: &WaveFunction, b: &WaveFunction) -> Result<f64> {
    same_grid(&a.grid, &b.grid)?;
    Ok(distance_samples(&a.samples, &b.samples, a.grid.dx()))
}

/// `min_theta || a - e^{i theta} b ||`.
///
/// Evaluated at the optimal phase `theta = arg <b, a>` rather than through
/// `(|a|^2 + |b|^2 - 2|<a,b>|)^(1/2)`, which loses half the digits near zero.
pub fn distance_up_to_phase(a: &WaveFunction, b: &WaveFunction) -> Result<f64> {
    let overlap = inner_product(b, a)?;
    let phase = if overlap.norm() > 0.0 {
        overlap / overlap.norm()
    } else {
        Complex64::new(1.0, 0.0)
    };
    let dx = a.grid.dx();
    Ok((a
        .samples
        .iter()
        .zip(&b.samples)
        .map(|(x, y)| (x - phase * y).norm_sqr())
        .sum::<f64>()
        * dx)
        .sqrt())
}

pub fn momentum_l2_distance(a: &MomentumWaveFunction, b: &MomentumWaveFunction) -> Result<f64> {
    same_grid(&a.grid, &b.grid)?;
    Ok(distance_samples(&a.samples, &b.samples, a.grid.dp()))
}

fn distance_samples(a: &[Complex64], b: &[Complex64], weight: f64) -> f64 {
    (a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm_sqr())
        .sum::<f64>()
        * weight)
        .sqrt()
}

pub(crate) fn same_grid(a: &Grid1D, b: &Grid1D) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::GridMismatch)
    }
}
