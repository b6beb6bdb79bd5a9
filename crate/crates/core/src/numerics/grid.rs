use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Uniform periodic 1D grid together with its dual momentum grid.
///
/// Positions are `x_j = x_min + j * dx` for `j = 0..N`. Momenta are stored in
/// DFT order: `p_k = k * dp` for `k = 0..N/2`, followed by `k = -N/2..0`, so
/// the momentum grid covers `[-pi*hbar/dx, pi*hbar/dx)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid1D {
    n_points: usize,
    length: f64,
    x_min: f64,
    hbar: f64,
}

impl Grid1D {
    pub fn new(n_points: usize, length: f64, x_min: f64, hbar: f64) -> Result<Self> {
        if n_points < 8 || !n_points.is_power_of_two() {
            return Err(Error::InvalidGrid(format!(
                "n_points must be a power of two >= 8, got {n_points}"
            )));
        }
        if length <= 0.0 || !length.is_finite() {
            return Err(Error::InvalidGrid(format!(
                "length must be > 0, got {length}"
            )));
        }
        if hbar <= 0.0 || !hbar.is_finite() {
            return Err(Error::InvalidGrid(format!("hbar must be > 0, got {hbar}")));
        }
        if !x_min.is_finite() {
            return Err(Error::InvalidGrid("x_min must be finite".into()));
        }
        Ok(Self {
            n_points,
            length,
            x_min,
            hbar,
        })
    }

    pub fn n_points(&self) -> usize {
        self.n_points
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn x_min(&self) -> f64 {
        self.x_min
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    pub fn dx(&self) -> f64 {
        self.length / self.n_points as f64
    }

    pub fn dp(&self) -> f64 {
        2.0 * PI * self.hbar / self.length
    }

    pub fn x(&self, j: usize) -> f64 {
        self.x_min + j as f64 * self.dx()
    }

    /// Signed DFT frequency index of bin `k`.
    pub fn frequency_index(&self, k: usize) -> i64 {
        let n = self.n_points as i64;
        let k = k as i64;
        if k < n / 2 {
            k
        } else {
            k - n
        }
    }

    pub fn p(&self, k: usize) -> f64 {
        self.frequency_index(k) as f64 * self.dp()
    }

    pub fn positions(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n_points).map(move |j| self.x(j))
    }

    pub fn momenta(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n_points).map(move |k| self.p(k))
    }

    /// Bin holding the momentum `index * dp`, wrapping modulo N.
    pub fn bin_of_index(&self, index: i64) -> usize {
        index.rem_euclid(self.n_points as i64) as usize
    }
}

pub fn make_grid(n_points: usize, length: f64, x_min: f64, hbar: f64) -> Result<Grid1D> {
    Grid1D::new(n_points, length, x_min, hbar)
}
