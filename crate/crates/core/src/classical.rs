//! Classical counterpart of the frame transforms.
//!
//! For each transform the `F1` function with
//! `P dX - H dt - (p dx - K dt) = dF1` coincides with the eigenstate phase
//! `alpha`, and a Hamilton principal function is carried to the new frame as
//! `S'(x, t) = S(X(x, t), t) - F1(x, t)`.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::frames::{FrameTransform, TransformKind};
use crate::hamiltonian::AffineHamiltonian;
use crate::numerics::{plane_wave, Grid1D, WaveFunction};
use crate::poly::{Cubic, Series};

/// `sum_{i<=1, j<=3} c[i][j] x^i t^j`
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct PolyXT {
    pub c: [[f64; 4]; 2],
}

impl PolyXT {
    pub const ZERO: PolyXT = PolyXT { c: [[0.0; 4]; 2] };

    /// `constant(t) + x * slope(t)`
    pub fn from_parts(constant: Cubic, slope: Cubic) -> Self {
        PolyXT {
            c: [constant.0, slope.0],
        }
    }

    pub fn constant_part(&self) -> Cubic {
        Cubic(self.c[0])
    }

    pub fn slope_part(&self) -> Cubic {
        Cubic(self.c[1])
    }

    pub fn eval(&self, x: f64, t: f64) -> f64 {
        self.constant_part().eval(t) + x * self.slope_part().eval(t)
    }

    pub fn d_dx(&self) -> PolyXT {
        PolyXT::from_parts(self.slope_part(), Cubic::ZERO)
    }

    pub fn d_dt(&self) -> PolyXT {
        PolyXT::from_parts(
            self.constant_part().derivative(),
            self.slope_part().derivative(),
        )
    }

    pub fn sub(&self, other: &PolyXT) -> PolyXT {
        PolyXT::from_parts(
            self.constant_part() - other.constant_part(),
            self.slope_part() - other.slope_part(),
        )
    }

    pub fn add(&self, other: &PolyXT) -> PolyXT {
        PolyXT::from_parts(
            self.constant_part() + other.constant_part(),
            self.slope_part() + other.slope_part(),
        )
    }

    /// `S(x + shift(t), t)`
    pub fn substitute_x(&self, shift: Cubic) -> Result<PolyXT> {
        let slope = Series::from(self.slope_part());
        let constant = &Series::from(self.constant_part()) + &(&slope * &Series::from(shift));
        Ok(PolyXT::from_parts(
            constant
                .to_cubic("substituted principal function")
                .map_err(|e| Error::DegreeOverflow(e.to_string()))?,
            self.slope_part(),
        ))
    }

    pub fn max_abs_diff(&self, other: &PolyXT) -> f64 {
        self.c
            .iter()
            .flatten()
            .zip(other.c.iter().flatten())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    /// Recover the polynomial from point evaluations of a function known to lie
    /// in the family (linear in `x`, cubic in `t`).
    pub fn interpolate(f: impl Fn(f64, f64) -> f64) -> PolyXT {
        let constant = interpolate_cubic(|t| f(0.0, t));
        let slope = interpolate_cubic(|t| f(1.0, t) - f(0.0, t));
        PolyXT::from_parts(constant, slope)
    }
}

/// Newton interpolation through `t = -1, 0, 1, 2`, expanded to monomials.
fn interpolate_cubic(g: impl Fn(f64) -> f64) -> Cubic {
    let nodes = [-1.0, 0.0, 1.0, 2.0];
    let mut dd: Vec<f64> = nodes.iter().map(|&t| g(t)).collect();
    for level in 1..4 {
        for i in (level..4).rev() {
            dd[i] = (dd[i] - dd[i - 1]) / (nodes[i] - nodes[i - level]);
        }
    }
    let mut basis = Series::constant(1.0);
    let mut acc = Series::zero();
    for (i, &coef) in dd.iter().enumerate() {
        acc = &acc + &basis.scale(coef);
        basis = &basis * &Series::from_slice(&[-nodes[i], 1.0]);
    }
    Cubic([acc.coeff(0), acc.coeff(1), acc.coeff(2), acc.coeff(3)])
}

/// `X(x, t) - x` as a polynomial in `t`.
fn shift_poly(tr: &FrameTransform) -> Cubic {
    match tr.kind {
        TransformKind::SpatialTranslation { a } => Cubic::constant(-a),
        TransformKind::MomentumTranslation { .. } => Cubic::ZERO,
        TransformKind::GalileanBoost { velocity, .. } => Cubic::linear(-velocity),
        TransformKind::ConstantAcceleration { acceleration, .. } => {
            Cubic::new(0.0, 0.0, -0.5 * acceleration, 0.0)
        }
    }
}

/// `F1(x, t)` from the exact-differential condition, with the free
/// time-only part set to `chi`.
pub fn f1(tr: &FrameTransform) -> PolyXT {
    let chi = tr.chi;
    match tr.kind {
        TransformKind::SpatialTranslation { .. } => PolyXT::from_parts(chi, Cubic::ZERO),
        TransformKind::MomentumTranslation { b } => PolyXT::from_parts(chi, Cubic::constant(-b)),
        TransformKind::GalileanBoost {
            velocity: v,
            mass: m,
        } => PolyXT::from_parts(
            chi + Cubic::linear(0.5 * m * v * v),
            Cubic::constant(-m * v),
        ),
        TransformKind::ConstantAcceleration {
            acceleration: a,
            mass: m,
        } => PolyXT::from_parts(
            chi + Cubic::new(0.0, 0.0, 0.0, m * a * a / 6.0),
            Cubic::linear(-m * a),
        ),
    }
}

/// `alpha(x, t)` of the quantum transform, rebuilt as a polynomial from point values.
pub fn alpha_poly(tr: &FrameTransform) -> PolyXT {
    PolyXT::interpolate(|x, t| tr.alpha(x, t))
}

/// Largest coefficient deviation between `alpha` and `F1`.
pub fn alpha_equals_f1(tr: &FrameTransform) -> f64 {
    alpha_poly(tr).max_abs_diff(&f1(tr))
}

/// As [`alpha_equals_f1`] with a caller-supplied phase function in place of `alpha`.
pub fn alpha_f1_deviation_with(tr: &FrameTransform, alpha: impl Fn(f64, f64) -> f64) -> f64 {
    PolyXT::interpolate(alpha).max_abs_diff(&f1(tr))
}

/// `beta - [alpha + p x - P X]`
pub fn f4_residual(tr: &FrameTransform, x: f64, p: f64, t: f64) -> f64 {
    tr.beta(p, t) - (tr.alpha(x, t) + p * x - tr.momentum_map(p, t) * tr.coord_map(x, t))
}

/// `S = p0 x - p0^2 t / 2m`
pub fn principal_free(p0: f64, mass: f64) -> PolyXT {
    PolyXT::from_parts(Cubic::linear(-p0 * p0 / (2.0 * mass)), Cubic::constant(p0))
}

/// `S = (p0 + F t) x - (p0^2 t + p0 F t^2 + F^2 t^3 / 3) / 2m`
pub fn principal_uniform_force(p0: f64, mass: f64, force: f64) -> PolyXT {
    let m2 = 2.0 * mass;
    PolyXT::from_parts(
        Cubic::new(
            0.0,
            -p0 * p0 / m2,
            -p0 * force / m2,
            -force * force / (3.0 * m2),
        ),
        Cubic::new(p0, force, 0.0, 0.0),
    )
}

/// `max |dS/dt + H(x, dS/dx, t)|` over the sample points `(x, t)`.
pub fn hj_residual(s: &PolyXT, h: &AffineHamiltonian, samples: &[(f64, f64)]) -> f64 {
    let sx = s.d_dx();
    let st = s.d_dt();
    samples
        .iter()
        .map(|&(x, t)| (st.eval(x, t) + h.evaluate(x, sx.eval(x, t), t)).abs())
        .fold(0.0, f64::max)
}

/// A fixed lattice of `(x, t)` points in `[-3, 3] x [0, 2]`.
pub fn default_samples() -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(35);
    for i in 0..7 {
        for j in 0..5 {
            out.push((-3.0 + i as f64, 0.5 * j as f64));
        }
    }
    out
}

/// `S'(x, t) = S(X(x, t), t) - F1(x, t)`
pub fn transform_principal(s: &PolyXT, tr: &FrameTransform) -> Result<PolyXT> {
    Ok(s.substitute_x(shift_poly(tr))?.sub(&f1(tr)))
}

/// Result of carrying a plane wave `e^{i S / hbar} / sqrt(L)` through a transform.
#[derive(Debug, Clone, Serialize)]
pub struct BridgeOutcome {
    pub max_pointwise_error: f64,
    pub commensurate: bool,
}

/// Compare `apply_position(tr, e^{iS/hbar}/sqrt(L))` against `e^{iS'/hbar}/sqrt(L)`
/// for `S = principal_free(index * dp, mass)` at time `t`.
pub fn semiclassical_bridge(
    tr: &FrameTransform,
    grid: &Grid1D,
    momentum_index: i64,
    mass: f64,
    t: f64,
) -> Result<BridgeOutcome> {
    let hbar = grid.hbar();
    let amp = 1.0 / grid.length().sqrt();
    let s = principal_free(momentum_index as f64 * grid.dp(), mass);
    let s_prime = transform_principal(&s, tr)?;
    let mut psi = plane_wave(grid, momentum_index, t);
    // plane_wave carries only the spatial phase; add the time part of S
    let time_phase = Complex64::from_polar(1.0, s.eval(0.0, t) / hbar);
    psi.samples.iter_mut().for_each(|c| *c *= time_phase);
    let mapped = tr.apply_position(&psi);
    let expected = WaveFunction::from_fn(*grid, t, |x| {
        Complex64::from_polar(amp, s_prime.eval(x, t) / hbar)
    });
    let max_pointwise_error = mapped
        .samples
        .iter()
        .zip(&expected.samples)
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max);
    Ok(BridgeOutcome {
        max_pointwise_error,
        commensurate: tr.commensurability_report(grid, t).kick_commensurate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hamiltonian::transformed_hamiltonian;
    use crate::numerics::make_grid;

    #[test]
    fn f1_hand_values() {
        let boost = FrameTransform::boost(3.0, 2.0).unwrap();
        assert_eq!(f1(&boost).eval(5.0, 7.0), 33.0);
        assert_eq!(f1(&FrameTransform::translation(4.0)), PolyXT::ZERO);
        let acc = FrameTransform::acceleration(2.0, 1.0).unwrap();
        assert_eq!(f1(&acc).eval(4.0, 3.0), -6.0);
    }

    #[test]
    fn interpolation_recovers_cubic() {
        let p = PolyXT {
            c: [[0.5, -1.0, 2.0, 0.25], [3.0, 0.0, -0.5, 1.5]],
        };
        let q = PolyXT::interpolate(|x, t| p.eval(x, t));
        assert!(p.max_abs_diff(&q) < 1e-14);
    }

    #[test]
    fn alpha_matches_f1() {
        let chi = Cubic::new(0.2, -0.4, 0.6, -0.8);
        for tr in [
            FrameTransform::translation(1.2).with_chi(chi),
            FrameTransform::momentum_translation(-0.7).with_chi(chi),
            FrameTransform::boost(3.0, 2.0).unwrap(),
            FrameTransform::acceleration(0.9, 1.4)
                .unwrap()
                .with_chi(chi),
        ] {
            assert!(alpha_equals_f1(&tr) <= 1e-13, "{:?}", tr.kind);
        }
    }

    #[test]
    fn perturbed_alpha_deviation_is_recovered() {
        let tr = FrameTransform::boost(1.1, 0.8).unwrap();
        let eps = 1e-3;
        let d = alpha_f1_deviation_with(&tr, |x, t| tr.alpha(x, t) + eps * x);
        assert!((d - eps).abs() < 1e-13);
    }

    #[test]
    fn f4_identity_and_injected_defect() {
        let tr = FrameTransform::acceleration(0.6, 1.3).unwrap();
        assert!(f4_residual(&tr, 0.7, -1.2, 1.9).abs() < 1e-14);
        assert_eq!(
            f4_residual(&FrameTransform::translation(0.0), 1.0, 2.0, 3.0),
            0.0
        );
        let perturbed = tr.beta(-1.2, 1.9) + 0.125;
        let raw = perturbed
            - (tr.alpha(0.7, 1.9) + -1.2 * 0.7
                - tr.momentum_map(-1.2, 1.9) * tr.coord_map(0.7, 1.9));
        assert!((raw - f4_residual(&tr, 0.7, -1.2, 1.9) - 0.125).abs() < 1e-14);
    }

    #[test]
    fn principal_functions_solve_hj() {
        let samples = default_samples();
        let free = AffineHamiltonian::free(1.0).unwrap();
        assert!(hj_residual(&principal_free(2.0, 1.0), &free, &samples) <= 1e-13);
        let uf = AffineHamiltonian::uniform_force(1.0, 2.0).unwrap();
        assert!(hj_residual(&principal_uniform_force(1.0, 1.0, 2.0), &uf, &samples) <= 1e-13);
        assert_eq!(
            principal_uniform_force(1.5, 2.0, 0.0),
            principal_free(1.5, 2.0)
        );
        assert_eq!(hj_residual(&PolyXT::ZERO, &free, &samples), 0.0);
    }

    #[test]
    fn injected_defect_breaks_hj() {
        let free = AffineHamiltonian::free(1.0).unwrap();
        let mut s = principal_free(2.0, 1.0);
        s.c[1][1] += 1.0; // + x t
        assert!(hj_residual(&s, &free, &default_samples()) > 0.1);
    }

    #[test]
    fn transported_principal_functions() {
        let samples = default_samples();
        let (m, p0, v, a) = (1.0, 0.8, 1.3, 0.6);
        let free = AffineHamiltonian::free(m).unwrap();
        let boost = FrameTransform::boost(v, m).unwrap();
        let s1 = transform_principal(&principal_free(p0, m), &boost).unwrap();
        assert!(hj_residual(&s1, &free, &samples) <= 1e-12);

        let acc = FrameTransform::acceleration(a, m).unwrap();
        let s2 = transform_principal(&principal_free(p0, m), &acc).unwrap();
        let uf = AffineHamiltonian::uniform_force(m, m * a).unwrap();
        assert!(hj_residual(&s2, &uf, &samples) <= 1e-12);
        assert!(
            hj_residual(
                &s2,
                &transformed_hamiltonian(&acc, &free).unwrap(),
                &samples
            ) <= 1e-12
        );

        let id = FrameTransform::translation(0.0);
        assert_eq!(
            transform_principal(&principal_free(p0, m), &id).unwrap(),
            principal_free(p0, m)
        );
    }

    #[test]
    fn substitution_degree_overflow() {
        let s = PolyXT {
            c: [[0.0; 4], [0.0, 0.0, 1.0, 0.0]],
        };
        assert!(matches!(
            s.substitute_x(Cubic::new(0.0, 0.0, 1.0, 0.0)),
            Err(Error::DegreeOverflow(_))
        ));
    }

    #[test]
    fn bridge_on_boost() {
        let g = make_grid(1024, 40.0, -20.0, 1.0).unwrap();
        let tr = FrameTransform::boost(3.0 * g.dp(), 1.0).unwrap();
        let out = semiclassical_bridge(&tr, &g, 4, 1.0, 0.7).unwrap();
        assert!(out.commensurate);
        assert!(
            out.max_pointwise_error <= 1e-10,
            "{}",
            out.max_pointwise_error
        );
    }
}
