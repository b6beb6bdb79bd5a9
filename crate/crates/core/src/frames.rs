//! Frame transformations as data.
//!
//! Every transform is an active unitary `U` fixed by its action on the
//! canonical operators, `U x U^-1 = X(x, t)` and `U p U^-1 = P(p, t)`, up to a
//! time-only phase `chi(t)`. For the four kinds handled here both maps are
//! unit-slope affine:
//!
//! ```text
//! X(x, t) = x + shift(t)        P(p, t) = p - kick(t)
//! ```
//!
//! The eigenstate phases satisfy `U^-1 |x0> = e^{i alpha/hbar} |X(x0, t)>` and
//! `U^-1 |p0> = e^{i beta/hbar} |P(p0, t)>`, tied together by
//! `p x = beta - alpha + P X`. On wavefunctions,
//! `psi'(x) = e^{-i alpha(x, t)/hbar} psi(X(x, t))`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::spectral::{fourier_shift_with, from_momentum_with, to_momentum_with};
use crate::numerics::{Grid1D, MomentumWaveFunction, Spectral, Warning, WaveFunction};
use crate::poly::Cubic;

/// Residual time-only phase `chi(t)` of the frame unitary.
pub type ChiPolicy = Cubic;

/// Ratio-to-grid-spacing tolerance below which a kick or shift counts as commensurate.
pub const COMMENSURATE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum TransformKind {
    /// `X = x - a`, `P = p`
    SpatialTranslation { a: f64 },
    /// `X = x`, `P = p - b`
    MomentumTranslation { b: f64 },
    /// `X = x - V t`, `P = p - m V`
    GalileanBoost { velocity: f64, mass: f64 },
    /// `X = x - a t^2 / 2`, `P = p - m a t`
    ConstantAcceleration { acceleration: f64, mass: f64 },
}

impl TransformKind {
    pub fn name(&self) -> &'static str {
        match self {
            TransformKind::SpatialTranslation { .. } => "spatial_translation",
            TransformKind::MomentumTranslation { .. } => "momentum_translation",
            TransformKind::GalileanBoost { .. } => "galilean_boost",
            TransformKind::ConstantAcceleration { .. } => "constant_acceleration",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FrameTransform {
    pub kind: TransformKind,
    pub chi: ChiPolicy,
}

impl FrameTransform {
    pub fn new(kind: TransformKind, chi: ChiPolicy) -> Result<Self> {
        let params: &[f64] = match &kind {
            TransformKind::SpatialTranslation { a } => &[*a],
            TransformKind::MomentumTranslation { b } => &[*b],
            TransformKind::GalileanBoost { velocity, mass } => {
                check_mass(*mass)?;
                &[*velocity]
            }
            TransformKind::ConstantAcceleration { acceleration, mass } => {
                check_mass(*mass)?;
                &[*acceleration]
            }
        };
        if params.iter().chain(chi.0.iter()).any(|v| !v.is_finite()) {
            return Err(Error::InvalidArgument(
                "transform parameters must be finite".into(),
            ));
        }
        Ok(Self { kind, chi })
    }

    pub fn translation(a: f64) -> Self {
        Self {
            kind: TransformKind::SpatialTranslation { a },
            chi: Cubic::ZERO,
        }
    }

    pub fn momentum_translation(b: f64) -> Self {
        Self {
            kind: TransformKind::MomentumTranslation { b },
            chi: Cubic::ZERO,
        }
    }

    pub fn boost(velocity: f64, mass: f64) -> Result<Self> {
        Self::new(TransformKind::GalileanBoost { velocity, mass }, Cubic::ZERO)
    }

    pub fn acceleration(acceleration: f64, mass: f64) -> Result<Self> {
        Self::new(
            TransformKind::ConstantAcceleration { acceleration, mass },
            Cubic::ZERO,
        )
    }

    pub fn with_chi(mut self, chi: ChiPolicy) -> Self {
        self.chi = chi;
        self
    }

    /// `X(x, t) - x`
    pub fn position_shift(&self, t: f64) -> f64 {
        match self.kind {
            TransformKind::SpatialTranslation { a } => -a,
            TransformKind::MomentumTranslation { .. } => 0.0,
            TransformKind::GalileanBoost { velocity, .. } => -velocity * t,
            TransformKind::ConstantAcceleration { acceleration, .. } => -0.5 * acceleration * t * t,
        }
    }

    /// `p - P(p, t)`
    pub fn momentum_kick(&self, t: f64) -> f64 {
        match self.kind {
            TransformKind::SpatialTranslation { .. } => 0.0,
            TransformKind::MomentumTranslation { b } => b,
            TransformKind::GalileanBoost { velocity, mass } => mass * velocity,
            TransformKind::ConstantAcceleration { acceleration, mass } => mass * acceleration * t,
        }
    }

    pub fn coord_map(&self, x: f64, t: f64) -> f64 {
        match self.kind {
            TransformKind::SpatialTranslation { a } => x - a,
            TransformKind::MomentumTranslation { .. } => x,
            TransformKind::GalileanBoost { velocity, .. } => x - velocity * t,
            TransformKind::ConstantAcceleration { acceleration, .. } => {
                x - 0.5 * acceleration * t * t
            }
        }
    }

    pub fn momentum_map(&self, p: f64, t: f64) -> f64 {
        match self.kind {
            TransformKind::SpatialTranslation { .. } => p,
            TransformKind::MomentumTranslation { b } => p - b,
            TransformKind::GalileanBoost { velocity, mass } => p - mass * velocity,
            TransformKind::ConstantAcceleration { acceleration, mass } => {
                p - mass * acceleration * t
            }
        }
    }

    /// Position-eigenstate phase `alpha(x, t)`.
    pub fn alpha(&self, x: f64, t: f64) -> f64 {
        let chi = self.chi.eval(t);
        match self.kind {
            TransformKind::SpatialTranslation { .. } => chi,
            TransformKind::MomentumTranslation { b } => -b * x + chi,
            TransformKind::GalileanBoost {
                velocity: v,
                mass: m,
            } => -m * v * x + 0.5 * m * v * v * t + chi,
            TransformKind::ConstantAcceleration {
                acceleration: a,
                mass: m,
            } => -m * a * t * x + m * a * a * t * t * t / 6.0 + chi,
        }
    }

    /// Momentum-eigenstate phase `beta(p, t)`.
    pub fn beta(&self, p: f64, t: f64) -> f64 {
        let chi = self.chi.eval(t);
        match self.kind {
            TransformKind::SpatialTranslation { a } => p * a + chi,
            TransformKind::MomentumTranslation { .. } => chi,
            TransformKind::GalileanBoost {
                velocity: v,
                mass: m,
            } => p * v * t - 0.5 * m * v * v * t + chi,
            TransformKind::ConstantAcceleration {
                acceleration: a,
                mass: m,
            } => 0.5 * p * a * t * t - m * a * a * t * t * t / 3.0 + chi,
        }
    }

    /// `p x - [beta - alpha + P X]`, identically zero for a consistent transform.
    pub fn bas_residual(&self, x: f64, p: f64, t: f64) -> f64 {
        p * x
            - (self.beta(p, t) - self.alpha(x, t) + self.momentum_map(p, t) * self.coord_map(x, t))
    }

    pub fn commensurability_report(&self, grid: &Grid1D, t: f64) -> CommensurabilityReport {
        let kick = self.momentum_kick(t);
        let shift = self.position_shift(t);
        let kick_in_dp = kick / grid.dp();
        let shift_in_dx = shift / grid.dx();
        let kick_frac = (kick_in_dp - kick_in_dp.round()).abs();
        let shift_frac = (shift_in_dx - shift_in_dx.round()).abs();
        CommensurabilityReport {
            time: t,
            kick,
            kick_in_dp,
            kick_commensurate: kick_frac <= COMMENSURATE_TOL,
            kick_deviation: kick_frac * grid.dp(),
            shift,
            shift_in_dx,
            shift_commensurate: shift_frac <= COMMENSURATE_TOL,
            shift_deviation: shift_frac * grid.dx(),
        }
    }

    /// `psi'(x) = e^{-i alpha(x, t)/hbar} psi(X(x, t))` at the state's own time.
    ///
    /// The argument shift is the band-limited Fourier translation; the phase is
    /// applied pointwise. A kick that is not a multiple of `dp` is still applied
    /// and flagged on the result.
    pub fn apply_position(&self, psi: &WaveFunction) -> WaveFunction {
        self.apply_position_with(&Spectral::for_grid(&psi.grid), psi)
    }

    pub fn apply_position_with(&self, plan: &Spectral, psi: &WaveFunction) -> WaveFunction {
        let t = psi.time;
        let grid = psi.grid;
        let hbar = grid.hbar();
        let mut out = fourier_shift_with(plan, psi, self.position_shift(t));
        for (x, c) in grid.positions().zip(out.samples.iter_mut()) {
            *c *= Complex64::from_polar(1.0, -self.alpha(x, t) / hbar);
        }
        self.flag_kick(&grid, t, &mut out.warnings);
        out
    }

    /// `U^-1` in factored form: kick by `e^{-i k x/hbar}`, translate by
    /// `e^{-i p shift/hbar}`, then the global phase `e^{i alpha(0, t)/hbar}`.
    pub fn apply_position_inverse(&self, psi: &WaveFunction) -> WaveFunction {
        let plan = Spectral::for_grid(&psi.grid);
        let t = psi.time;
        let grid = psi.grid;
        let hbar = grid.hbar();
        let kick = self.momentum_kick(t);
        let mut kicked = psi.clone();
        for (x, c) in grid.positions().zip(kicked.samples.iter_mut()) {
            *c *= Complex64::from_polar(1.0, -kick * x / hbar);
        }
        let mut out = fourier_shift_with(&plan, &kicked, -self.position_shift(t));
        let global = Complex64::from_polar(1.0, self.alpha(0.0, t) / hbar);
        out.samples.iter_mut().for_each(|c| *c *= global);
        self.flag_kick(&grid, t, &mut out.warnings);
        out
    }

    /// `phi'(p) = e^{-i beta(p, t)/hbar} phi(P(p, t))`.
    ///
    /// A commensurate kick is a cyclic shift of momentum bins; otherwise the
    /// band-limited equivalent (a position-space phase kick) is used and the
    /// result is flagged.
    pub fn apply_momentum(&self, phi: &MomentumWaveFunction) -> MomentumWaveFunction {
        let t = phi.time;
        let grid = phi.grid;
        let hbar = grid.hbar();
        let kick = self.momentum_kick(t);
        let report = self.commensurability_report(&grid, t);
        let mut out = if report.kick_commensurate {
            let n = report.kick_in_dp.round() as i64;
            let mut shifted = phi.clone();
            for (m, c) in shifted.samples.iter_mut().enumerate() {
                let src = grid.bin_of_index(grid.frequency_index(m) - n);
                *c = phi.samples[src];
            }
            shifted
        } else {
            let plan = Spectral::for_grid(&grid);
            let mut psi = from_momentum_with(&plan, phi);
            for (x, c) in grid.positions().zip(psi.samples.iter_mut()) {
                *c *= Complex64::from_polar(1.0, kick * x / hbar);
            }
            to_momentum_with(&plan, &psi)
        };
        for (p, c) in grid.momenta().zip(out.samples.iter_mut()) {
            *c *= Complex64::from_polar(1.0, -self.beta(p, t) / hbar);
        }
        self.flag_kick(&grid, t, &mut out.warnings);
        out
    }

    fn flag_kick(&self, grid: &Grid1D, t: f64, warnings: &mut Vec<Warning>) {
        let report = self.commensurability_report(grid, t);
        if !report.kick_commensurate {
            let w = Warning::NonCommensurateKick {
                kick: report.kick,
                deviation: report.kick_deviation,
            };
            if !warnings.contains(&w) {
                warnings.push(w);
            }
        }
    }
}

fn check_mass(m: f64) -> Result<()> {
    if m > 0.0 && m.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("mass must be > 0, got {m}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CommensurabilityReport {
    pub time: f64,
    pub kick: f64,
    pub kick_in_dp: f64,
    pub kick_commensurate: bool,
    pub kick_deviation: f64,
    pub shift: f64,
    pub shift_in_dx: f64,
    pub shift_commensurate: bool,
    pub shift_deviation: f64,
}

pub fn coord_map(tr: &FrameTransform, x: f64, t: f64) -> f64 {
    tr.coord_map(x, t)
}

pub fn momentum_map(tr: &FrameTransform, p: f64, t: f64) -> f64 {
    tr.momentum_map(p, t)
}

pub fn alpha(tr: &FrameTransform, x: f64, t: f64) -> f64 {
    tr.alpha(x, t)
}

pub fn beta(tr: &FrameTransform, p: f64, t: f64) -> f64 {
    tr.beta(p, t)
}

pub fn bas_residual(tr: &FrameTransform, x: f64, p: f64, t: f64) -> f64 {
    tr.bas_residual(x, p, t)
}

pub fn apply_position(tr: &FrameTransform, psi: &WaveFunction) -> WaveFunction {
    tr.apply_position(psi)
}

pub fn apply_momentum(tr: &FrameTransform, phi: &MomentumWaveFunction) -> MomentumWaveFunction {
    tr.apply_momentum(phi)
}

pub fn commensurability_report(
    tr: &FrameTransform,
    grid: &Grid1D,
    t: f64,
) -> CommensurabilityReport {
    tr.commensurability_report(grid, t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{
        distance_up_to_phase, gaussian_packet, l2_distance, make_grid, momentum_l2_distance,
        to_momentum, GaussianSpec,
    };

    fn desk_grid() -> Grid1D {
        make_grid(1024, 40.0, -20.0, 1.0).unwrap()
    }

    fn packet(grid: &Grid1D, time: f64) -> WaveFunction {
        let mut psi =
            gaussian_packet(grid, &GaussianSpec::new(0.5, 4.0 * grid.dp(), 1.0).unwrap()).unwrap();
        psi.time = time;
        psi
    }

    fn zero_kinds() -> [FrameTransform; 4] {
        [
            FrameTransform::translation(0.0),
            FrameTransform::momentum_translation(0.0),
            FrameTransform::boost(0.0, 1.0).unwrap(),
            FrameTransform::acceleration(0.0, 1.0).unwrap(),
        ]
    }

    #[test]
    fn coordinate_and_momentum_maps() {
        assert_eq!(FrameTransform::translation(2.0).coord_map(5.0, 9.0), 3.0);
        assert_eq!(
            FrameTransform::boost(3.0, 1.0).unwrap().coord_map(5.0, 7.0),
            -16.0
        );
        assert_eq!(
            FrameTransform::momentum_translation(4.0).momentum_map(9.0, 0.0),
            5.0
        );
        assert_eq!(
            FrameTransform::acceleration(2.0, 1.0)
                .unwrap()
                .momentum_map(5.0, 3.0),
            -1.0
        );
        for tr in zero_kinds() {
            assert_eq!(tr.coord_map(5.0, 3.0), 5.0);
            assert_eq!(tr.momentum_map(-2.0, 3.0), -2.0);
        }
    }

    #[test]
    fn phase_functions_hand_values() {
        let boost = FrameTransform::boost(3.0, 2.0).unwrap();
        assert_eq!(boost.alpha(5.0, 7.0), 33.0);
        assert_eq!(boost.beta(1.0, 7.0), -42.0);
        let acc = FrameTransform::acceleration(2.0, 1.0).unwrap();
        assert_eq!(acc.alpha(4.0, 3.0), -6.0);
        assert_eq!(acc.beta(5.0, 3.0), 9.0);
        let mt = FrameTransform::momentum_translation(7.0);
        assert_eq!(mt.beta(3.3, 1.2), 0.0);
        assert_eq!(
            FrameTransform::boost(0.0, 2.0).unwrap().alpha(5.0, 7.0),
            0.0
        );
    }

    #[test]
    fn basic_identity_hand_values() {
        assert_eq!(
            FrameTransform::boost(3.0, 2.0)
                .unwrap()
                .bas_residual(5.0, 1.0, 7.0),
            0.0
        );
        assert_eq!(
            FrameTransform::acceleration(2.0, 1.0)
                .unwrap()
                .bas_residual(4.0, 5.0, 3.0),
            0.0
        );
        for tr in zero_kinds() {
            assert_eq!(tr.bas_residual(1.3, -0.7, 2.2), 0.0);
        }
    }

    #[test]
    fn invalid_mass_rejected() {
        assert!(FrameTransform::boost(1.0, 0.0).is_err());
        assert!(FrameTransform::acceleration(1.0, -1.0).is_err());
        assert!(FrameTransform::new(
            TransformKind::SpatialTranslation { a: f64::NAN },
            Cubic::ZERO
        )
        .is_err());
    }

    #[test]
    fn translation_is_pure_shift() {
        let g = desk_grid();
        let psi = packet(&g, 0.8);
        let a = 1.37;
        let out = FrameTransform::translation(a).apply_position(&psi);
        let expected = crate::numerics::fourier_shift(&psi, -a);
        assert!(l2_distance(&out, &expected).unwrap() < 1e-14);
        assert!(out.warnings.is_empty());
    }

    #[test]
    fn translation_with_force_gauge_phase() {
        // chi = -F a t gives psi'(x) = e^{i F a t/hbar} psi(x - a)
        let g = desk_grid();
        let (f, a, t) = (0.7, 1.5, 0.9);
        let psi = packet(&g, t);
        let tr = FrameTransform::translation(a).with_chi(Cubic::linear(-f * a));
        let out = tr.apply_position(&psi);
        let mut expected = crate::numerics::fourier_shift(&psi, -a);
        let ph = Complex64::from_polar(1.0, f * a * t);
        expected.samples.iter_mut().for_each(|c| *c *= ph);
        assert!(l2_distance(&out, &expected).unwrap() < 1e-13);
    }

    #[test]
    fn zero_parameter_transform_is_identity() {
        let g = desk_grid();
        let psi = packet(&g, 0.4);
        for tr in zero_kinds() {
            let out = tr.apply_position(&psi);
            assert!(l2_distance(&out, &psi).unwrap() < 1e-15, "{:?}", tr.kind);
            let phi = to_momentum(&psi);
            let outp = tr.apply_momentum(&phi);
            assert!(momentum_l2_distance(&outp, &phi).unwrap() < 1e-15);
        }
    }

    #[test]
    fn momentum_translation_shifts_momentum_samples() {
        let g = desk_grid();
        let psi = packet(&g, 0.0);
        let phi = to_momentum(&psi);
        let b = 3.0 * g.dp();
        let out = FrameTransform::momentum_translation(b).apply_momentum(&phi);
        for m in 0..g.n_points() {
            let src = g.bin_of_index(g.frequency_index(m) - 3);
            assert_eq!(out.samples[m], phi.samples[src]);
        }
    }

    #[test]
    fn boost_shifts_mean_momentum() {
        // phi'(p) = phi(p - m V): the density moves up by m V
        let g = desk_grid();
        let phi = to_momentum(&packet(&g, 0.6));
        let v = 5.0 * g.dp();
        let out = FrameTransform::boost(v, 1.0).unwrap().apply_momentum(&phi);
        assert!((out.mean_momentum() - (phi.mean_momentum() + v)).abs() < 1e-8);
    }

    #[test]
    fn commensurability() {
        let g = desk_grid();
        let tr = FrameTransform::boost(4.0 * g.dp() / 2.0, 2.0).unwrap();
        assert!(tr.commensurability_report(&g, 1.0).kick_commensurate);
        let tr = FrameTransform::boost(4.5 * g.dp(), 1.0).unwrap();
        let r = tr.commensurability_report(&g, 1.0);
        assert!(!r.kick_commensurate);
        assert!((r.kick_deviation - 0.5 * g.dp()).abs() < 1e-14);
        let r = FrameTransform::translation(3.0 * g.dx()).commensurability_report(&g, 0.0);
        assert!(r.shift_commensurate);
    }

    #[test]
    fn non_commensurate_kick_is_flagged() {
        let g = desk_grid();
        let psi = packet(&g, 0.0);
        let out = FrameTransform::boost(4.5 * g.dp(), 1.0)
            .unwrap()
            .apply_position(&psi);
        assert!(matches!(
            out.warnings[0],
            Warning::NonCommensurateKick { .. }
        ));
        assert!((out.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn chi_only_changes_global_phase() {
        let g = desk_grid();
        let psi = packet(&g, 0.75);
        let tr = FrameTransform::boost(3.0 * g.dp(), 1.0).unwrap();
        let a = tr.apply_position(&psi);
        let b = tr
            .with_chi(Cubic::new(0.3, -1.0, 2.0, 0.5))
            .apply_position(&psi);
        assert!(distance_up_to_phase(&a, &b).unwrap() < 1e-12);
    }

    #[test]
    fn inverse_then_forward_is_identity() {
        let g = desk_grid();
        let psi = packet(&g, 0.9);
        let tr = FrameTransform::boost(6.0 * g.dp(), 1.0)
            .unwrap()
            .with_chi(Cubic::new(0.1, 0.2, 0.0, -0.3));
        let back = tr.apply_position(&tr.apply_position_inverse(&psi));
        assert!(l2_distance(&back, &psi).unwrap() < 1e-12);
    }
}
