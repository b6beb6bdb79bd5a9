//! Split-step propagation under an [`AffineHamiltonian`].
//!
//! One step of length `h` is the symmetric splitting
//! `V(h/2) T(h) V(h/2)` with `V = -F x` applied pointwise and
//! `T = (p - A)^2 / 2m` applied on momentum bins. The scalar term `e(t)`
//! commutes with everything; its exact integral over the whole interval is
//! applied as one global phase.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hamiltonian::AffineHamiltonian;
use crate::numerics::wavefunction::same_grid;
use crate::numerics::{GaussianSpec, Grid1D, Spectral, WaveFunction};

pub const DEFAULT_DT: f64 = 1e-3;

/// Relative slack allowed when checking that `(t_end - t0) / dt` is integral.
const STEP_COUNT_TOL: f64 = 1e-9;

/// Number of steps from `t_start` to `t_end`, and the signed step.
pub fn step_count(t_start: f64, t_end: f64, dt: f64) -> Result<(usize, f64)> {
    if dt <= 0.0 || !dt.is_finite() {
        return Err(Error::InvalidArgument(format!("dt must be > 0, got {dt}")));
    }
    let span = t_end - t_start;
    let steps = span.abs() / dt;
    let n = steps.round();
    if (steps - n).abs() > STEP_COUNT_TOL * steps.max(1.0) {
        return Err(Error::NonIntegralSteps {
            t_start,
            t_end,
            dt,
            steps,
        });
    }
    Ok((n as usize, dt.copysign(span)))
}

/// Reusable propagator for one grid and one Hamiltonian.
#[derive(Debug, Clone)]
pub struct SplitStep {
    grid: Grid1D,
    hamiltonian: AffineHamiltonian,
    plan: Spectral,
}

impl SplitStep {
    pub fn new(grid: Grid1D, hamiltonian: AffineHamiltonian) -> Self {
        Self {
            grid,
            hamiltonian,
            plan: Spectral::for_grid(&grid),
        }
    }

    pub fn propagate(&self, psi: &WaveFunction, t_end: f64, dt: f64) -> Result<WaveFunction> {
        same_grid(&self.grid, &psi.grid)?;
        let (n, h) = step_count(psi.time, t_end, dt)?;
        let mut out = psi.clone();
        out.time = t_end;
        if n == 0 {
            return Ok(out);
        }
        let hbar = self.grid.hbar();
        let ham = &self.hamiltonian;
        let potential_phase = |frac: f64| -> Vec<Complex64> {
            self.grid
                .positions()
                .map(|x| Complex64::from_polar(1.0, ham.force * x * frac * h / hbar))
                .collect()
        };
        let half_v = potential_phase(0.5);
        let full_v = potential_phase(1.0);
        let kinetic: Vec<Complex64> = self
            .grid
            .momenta()
            .map(|p| Complex64::from_polar(1.0, -ham.kinetic(p) * h / hbar))
            .collect();

        let buf = &mut out.samples;
        mul_assign(buf, &half_v);
        for step in 0..n {
            self.plan.fft(buf);
            mul_assign(buf, &kinetic);
            self.plan.ifft(buf);
            mul_assign(buf, if step + 1 == n { &half_v } else { &full_v });
        }
        let scalar = Complex64::from_polar(1.0, -ham.scalar.integral(psi.time, t_end) / hbar);
        buf.iter_mut().for_each(|c| *c *= scalar);
        Ok(out)
    }

    /// `H psi` with the kinetic part on momentum bins and the potential pointwise.
    pub fn apply_hamiltonian(&self, psi: &WaveFunction, t: f64) -> Vec<Complex64> {
        let mut kin = psi.samples.clone();
        self.plan.fft(&mut kin);
        for (p, c) in self.grid.momenta().zip(kin.iter_mut()) {
            *c *= self.hamiltonian.kinetic(p);
        }
        self.plan.ifft(&mut kin);
        for ((x, k), c) in self.grid.positions().zip(kin.iter_mut()).zip(&psi.samples) {
            *k += c * self.hamiltonian.potential(x, t);
        }
        kin
    }
}

fn mul_assign(buf: &mut [Complex64], factors: &[Complex64]) {
    buf.iter_mut().zip(factors).for_each(|(c, f)| *c *= f);
}

/// Evolve `psi` from `psi.time` to `t_end` in steps of `dt`. Backward
/// propagation (`t_end < psi.time`) uses the same step magnitude.
pub fn propagate(
    psi: &WaveFunction,
    hamiltonian: &AffineHamiltonian,
    t_end: f64,
    dt: f64,
) -> Result<WaveFunction> {
    SplitStep::new(psi.grid, *hamiltonian).propagate(psi, t_end, dt)
}

/// Closed-form free evolution of the Gaussian packet of [`crate::numerics::gaussian_packet`]
/// (continuum normalization), sampled on `grid` at time `t`.
pub fn analytic_free_gaussian(
    spec: &GaussianSpec,
    mass: f64,
    grid: &Grid1D,
    t: f64,
) -> WaveFunction {
    let hbar = grid.hbar();
    let sigma2 = spec.sigma * spec.sigma;
    let k = spec.p0 / hbar;
    let z = Complex64::new(1.0, hbar * t / (2.0 * mass * sigma2));
    let norm = (2.0 * std::f64::consts::PI * sigma2).powf(-0.25);
    let prefactor = z.sqrt().inv() * norm * Complex64::from_polar(1.0, k * spec.x0);
    let i = Complex64::i();
    WaveFunction::from_fn(*grid, t, |x| {
        let y = x - spec.x0;
        let exponent = (Complex64::new(-y * y / (4.0 * sigma2), 0.0) + i * (k * y)
            - i * (hbar * k * k * t / (2.0 * mass)))
            / z;
        prefactor * exponent.exp()
    })
}

/// `|| i hbar (psi(t+d) - psi(t-d)) / 2d - H psi(t) ||` for three equally spaced states.
pub fn schrodinger_residual(
    states: [&WaveFunction; 3],
    hamiltonian: &AffineHamiltonian,
) -> Result<f64> {
    let [before, mid, after] = states;
    same_grid(&before.grid, &mid.grid)?;
    same_grid(&mid.grid, &after.grid)?;
    let d1 = mid.time - before.time;
    let d2 = after.time - mid.time;
    if d1.is_nan() || d1 <= 0.0 || (d1 - d2).abs() > 1e-9 * d1 {
        return Err(Error::InvalidArgument(format!(
            "states must be equally spaced in increasing time, got spacings {d1} and {d2}"
        )));
    }
    let grid = mid.grid;
    let hbar = grid.hbar();
    let h_psi = SplitStep::new(grid, *hamiltonian).apply_hamiltonian(mid, mid.time);
    let scale = Complex64::new(0.0, hbar / (d1 + d2));
    let sum: f64 = after
        .samples
        .iter()
        .zip(&before.samples)
        .zip(&h_psi)
        .map(|((a, b), hp)| (scale * (a - b) - hp).norm_sqr())
        .sum();
    Ok((sum * grid.dx()).sqrt())
}
