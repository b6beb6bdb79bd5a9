use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::grid::Grid1D;
use super::wavefunction::{Warning, WaveFunction};
use crate::error::{Error, Result};

/// Samples at the box edges above this magnitude flag the packet.
pub const TAIL_WARNING_THRESHOLD: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GaussianSpec {
    pub x0: f64,
    pub p0: f64,
    pub sigma: f64,
}

impl GaussianSpec {
    pub fn new(x0: f64, p0: f64, sigma: f64) -> Result<Self> {
        if sigma <= 0.0 || !sigma.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "sigma must be > 0, got {sigma}"
            )));
        }
        Ok(Self { x0, p0, sigma })
    }
}

/// `psi(x) ~ exp(-(x - x0)^2 / (4 sigma^2)) exp(i p0 x / hbar)`, unit norm on the grid.
pub fn gaussian_packet(grid: &Grid1D, spec: &GaussianSpec) -> Result<WaveFunction> {
    let spec = GaussianSpec::new(spec.x0, spec.p0, spec.sigma)?;
    let hbar = grid.hbar();
    let mut psi = WaveFunction::from_fn(*grid, 0.0, |x| {
        let envelope = (-(x - spec.x0).powi(2) / (4.0 * spec.sigma * spec.sigma)).exp();
        Complex64::from_polar(envelope, spec.p0 * x / hbar)
    });
    psi.normalize();
    let tail = psi.boundary_magnitude();
    if tail > TAIL_WARNING_THRESHOLD {
        psi.push_warning(Warning::BoundaryTail { magnitude: tail });
    }
    Ok(psi)
}

/// Plane wave `exp(i k dp x / hbar) / sqrt(L)` for integer momentum index `k`.
pub fn plane_wave(grid: &Grid1D, index: i64, time: f64) -> WaveFunction {
    let p = index as f64 * grid.dp();
    let amp = 1.0 / grid.length().sqrt();
    let hbar = grid.hbar();
    WaveFunction::from_fn(*grid, time, |x| Complex64::from_polar(amp, p * x / hbar))
}
