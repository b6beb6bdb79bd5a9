//! Discrete Fourier transforms between position and momentum samples.
//!
//! The continuum convention is
//! `phi(p) = (2 pi hbar)^(-1/2) * integral exp(-i p x / hbar) psi(x) dx`,
//! discretized as
//!
//! ```text
//! phi_k = dx / sqrt(2 pi hbar) * exp(-i p_k x_min / hbar) * FFT(psi)_k
//! psi_j = sqrt(2 pi hbar) / (N dx) * IFFT(exp(+i p_k x_min / hbar) phi_k)_j
//! ```
//!
//! where FFT/IFFT are the unnormalized transforms. With `dx * dp * N = 2 pi hbar`
//! this pair is unitary between the `dx`-weighted and `dp`-weighted norms.

use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use super::grid::Grid1D;
use super::wavefunction::{MomentumWaveFunction, WaveFunction};

/// Forward/inverse FFT plans for one grid size. Plans are `Send + Sync`;
/// build one per propagation or per call.
#[derive(Clone)]
pub struct Spectral {
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
    n: usize,
}

impl std::fmt::Debug for Spectral {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Spectral").field("n", &self.n).finish()
    }
}

impl Spectral {
    pub fn new(n: usize) -> Self {
        let mut planner = FftPlanner::new();
        Self {
            forward: planner.plan_fft_forward(n),
            inverse: planner.plan_fft_inverse(n),
            n,
        }
    }

    pub fn for_grid(grid: &Grid1D) -> Self {
        Self::new(grid.n_points())
    }

    /// Unnormalized forward FFT, in place.
    pub fn fft(&self, buf: &mut [Complex64]) {
        debug_assert_eq!(buf.len(), self.n);
        self.forward.process(buf);
    }

    /// Inverse FFT including the `1/N` factor, in place.
    pub fn ifft(&self, buf: &mut [Complex64]) {
        debug_assert_eq!(buf.len(), self.n);
        self.inverse.process(buf);
        let inv = 1.0 / self.n as f64;
        buf.iter_mut().for_each(|c| *c *= inv);
    }
}

fn origin_phase(grid: &Grid1D, k: usize) -> Complex64 {
    // p_k x_min / hbar = 2 pi * index * x_min / L
    let arg =
        2.0 * std::f64::consts::PI * grid.frequency_index(k) as f64 * grid.x_min() / grid.length();
    Complex64::from_polar(1.0, -arg)
}

pub fn to_momentum_with(plan: &Spectral, psi: &WaveFunction) -> MomentumWaveFunction {
    let grid = psi.grid;
    let mut buf = psi.samples.clone();
    plan.fft(&mut buf);
    let scale = grid.dx() / (2.0 * std::f64::consts::PI * grid.hbar()).sqrt();
    for (k, c) in buf.iter_mut().enumerate() {
        *c *= origin_phase(&grid, k) * scale;
    }
    MomentumWaveFunction {
        grid,
        samples: buf,
        time: psi.time,
        warnings: psi.warnings.clone(),
    }
}

pub fn from_momentum_with(plan: &Spectral, phi: &MomentumWaveFunction) -> WaveFunction {
    let grid = phi.grid;
    let scale = (2.0 * std::f64::consts::PI * grid.hbar()).sqrt() / grid.dx();
    let mut buf: Vec<Complex64> = phi
        .samples
        .iter()
        .enumerate()
        .map(|(k, c)| c * origin_phase(&grid, k).conj() * scale)
        .collect();
    plan.ifft(&mut buf);
    WaveFunction {
        grid,
        samples: buf,
        time: phi.time,
        warnings: phi.warnings.clone(),
    }
}

pub fn to_momentum(psi: &WaveFunction) -> MomentumWaveFunction {
    to_momentum_with(&Spectral::for_grid(&psi.grid), psi)
}

pub fn from_momentum(phi: &MomentumWaveFunction) -> WaveFunction {
    from_momentum_with(&Spectral::for_grid(&phi.grid), phi)
}

/// Band-limited translation `x -> psi(x + s)`: momentum samples are
/// multiplied by `exp(i p s / hbar)`.
pub fn fourier_shift_with(plan: &Spectral, psi: &WaveFunction, s: f64) -> WaveFunction {
    if s == 0.0 {
        return psi.clone();
    }
    let grid = psi.grid;
    let mut buf = psi.samples.clone();
    plan.fft(&mut buf);
    for (k, c) in buf.iter_mut().enumerate() {
        *c *= Complex64::from_polar(1.0, grid.p(k) * s / grid.hbar());
    }
    plan.ifft(&mut buf);
    WaveFunction {
        grid,
        samples: buf,
        time: psi.time,
        warnings: psi.warnings.clone(),
    }
}

pub fn fourier_shift(psi: &WaveFunction, s: f64) -> WaveFunction {
    fourier_shift_with(&Spectral::for_grid(&psi.grid), psi, s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::grid::make_grid;
    use crate::numerics::wavefunction::l2_distance;

    fn max_abs_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
        a.iter()
            .zip(b)
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max)
    }

    fn test_state(grid: Grid1D) -> WaveFunction {
        let mut psi = WaveFunction::from_fn(grid, 0.0, |x| {
            Complex64::from_polar((-(x - 1.0).powi(2) / 2.0).exp(), 1.7 * x)
        });
        psi.normalize();
        psi
    }

    #[test]
    fn round_trip_is_identity() {
        for &n in &[8usize, 64, 1024, 4096] {
            let g = make_grid(n, 40.0, -20.0, 1.3).unwrap();
            let psi = test_state(g);
            let back = from_momentum(&to_momentum(&psi));
            assert!(max_abs_diff(&back.samples, &psi.samples) < 1e-13, "n={n}");
        }
    }

    #[test]
    fn parseval() {
        let g = make_grid(512, 40.0, -20.0, 0.7).unwrap();
        let psi = test_state(g);
        let phi = to_momentum(&psi);
        assert!((phi.norm() - psi.norm()).abs() < 1e-12);
    }

    #[test]
    fn momentum_delta_is_plane_wave() {
        let g = make_grid(64, 10.0, -3.0, 1.0).unwrap();
        let k = 5i64;
        let mut samples = vec![Complex64::new(0.0, 0.0); 64];
        // unit-normalized delta in the dp-weighted norm
        samples[g.bin_of_index(k)] = Complex64::new(1.0 / g.dp().sqrt(), 0.0);
        let phi = MomentumWaveFunction::new(g, samples, 0.0).unwrap();
        let psi = from_momentum(&phi);
        // discrete delta of weight 1/sqrt(dp) maps to e^{i k dp x / hbar} / sqrt(L)
        let expected: Vec<Complex64> = g
            .positions()
            .map(|x| Complex64::from_polar(1.0, k as f64 * g.dp() * x) / g.length().sqrt())
            .collect();
        assert!(max_abs_diff(&psi.samples, &expected) < 1e-13);
    }

    #[test]
    fn linearity() {
        let g = make_grid(128, 20.0, -10.0, 1.0).unwrap();
        let a = to_momentum(&test_state(g));
        let b = to_momentum(&fourier_shift(&test_state(g), 2.5));
        let (ca, cb) = (Complex64::new(0.3, -1.1), Complex64::new(2.0, 0.5));
        let mix = MomentumWaveFunction::new(
            g,
            a.samples
                .iter()
                .zip(&b.samples)
                .map(|(x, y)| ca * x + cb * y)
                .collect(),
            0.0,
        )
        .unwrap();
        let lhs = from_momentum(&mix);
        let (ra, rb) = (from_momentum(&a), from_momentum(&b));
        let rhs: Vec<Complex64> = ra
            .samples
            .iter()
            .zip(&rb.samples)
            .map(|(x, y)| ca * x + cb * y)
            .collect();
        assert!(max_abs_diff(&lhs.samples, &rhs) < 1e-13);
    }

    #[test]
    fn shift_by_dx_is_index_rotation() {
        let g = make_grid(64, 20.0, -10.0, 1.0).unwrap();
        let psi = test_state(g);
        let shifted = fourier_shift(&psi, g.dx());
        let mut expected = psi.samples.clone();
        expected.rotate_left(1);
        assert!(max_abs_diff(&shifted.samples, &expected) < 1e-13);
    }

    #[test]
    fn zero_shift_and_inverse_shift() {
        let g = make_grid(256, 20.0, -10.0, 1.0).unwrap();
        let psi = test_state(g);
        assert_eq!(fourier_shift(&psi, 0.0).samples, psi.samples);
        let back = fourier_shift(&fourier_shift(&psi, 0.731), -0.731);
        assert!(l2_distance(&back, &psi).unwrap() < 1e-13);
    }
}
