//! The affine Hamiltonian family `H = (p - A)^2 / 2m - F x + e(t)` and its
//! image `K = U H U^-1 + i hbar (dU/dt) U^-1` under each frame transform.
//!
//! `K` is computed on phase-space symbols: substitute `x -> X(x, t)`,
//! `p -> P(p, t)`, add the kind-specific correction, and read the result back
//! into the family.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::frames::{ChiPolicy, FrameTransform, TransformKind};
use crate::poly::{Cubic, Series};

/// Coefficient tolerance for comparing Hamiltonians.
pub const COEFF_TOL: f64 = 1e-13;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AffineHamiltonian {
    pub mass: f64,
    #[serde(default)]
    pub momentum_offset: f64,
    #[serde(default)]
    pub force: f64,
    #[serde(default)]
    pub scalar: Cubic,
}

impl AffineHamiltonian {
    pub fn new(mass: f64, momentum_offset: f64, force: f64, scalar: Cubic) -> Result<Self> {
        if mass <= 0.0 || !mass.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "mass must be > 0, got {mass}"
            )));
        }
        if ![momentum_offset, force]
            .iter()
            .chain(scalar.0.iter())
            .all(|v| v.is_finite())
        {
            return Err(Error::InvalidArgument(
                "hamiltonian coefficients must be finite".into(),
            ));
        }
        Ok(Self {
            mass,
            momentum_offset,
            force,
            scalar,
        })
    }

    pub fn free(mass: f64) -> Result<Self> {
        Self::new(mass, 0.0, 0.0, Cubic::ZERO)
    }

    pub fn uniform_force(mass: f64, force: f64) -> Result<Self> {
        Self::new(mass, 0.0, force, Cubic::ZERO)
    }

    pub fn evaluate(&self, x: f64, p: f64, t: f64) -> f64 {
        let q = p - self.momentum_offset;
        q * q / (2.0 * self.mass) - self.force * x + self.scalar.eval(t)
    }

    /// `-F x + e(t)`
    pub fn potential(&self, x: f64, t: f64) -> f64 {
        -self.force * x + self.scalar.eval(t)
    }

    pub fn kinetic(&self, p: f64) -> f64 {
        let q = p - self.momentum_offset;
        q * q / (2.0 * self.mass)
    }

    /// Largest absolute coefficient difference over `(m, A, F, e0..e3)`.
    pub fn coeff_distance(&self, other: &AffineHamiltonian) -> f64 {
        [
            (self.mass - other.mass).abs(),
            (self.momentum_offset - other.momentum_offset).abs(),
            (self.force - other.force).abs(),
            self.scalar.max_abs_diff(&other.scalar),
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }

    fn symbol(&self) -> Symbol {
        let m = self.mass;
        let a = self.momentum_offset;
        Symbol {
            pp: 1.0 / (2.0 * m),
            p: Series::constant(-a / m),
            x: Series::constant(-self.force),
            c: &Series::constant(a * a / (2.0 * m)) + &Series::from(self.scalar),
        }
    }
}

/// `pp p^2 + p(t) p + x(t) x + c(t)`
#[derive(Debug, Clone)]
struct Symbol {
    pp: f64,
    p: Series,
    x: Series,
    c: Series,
}

impl Symbol {
    /// Substitute `x -> x + shift(t)` and `p -> p - kick(t)`.
    fn substitute(&self, shift: &Series, kick: &Series) -> Symbol {
        let pp_kick = kick.scale(-2.0 * self.pp);
        let p = &self.p + &pp_kick;
        let kick_sq = (kick * kick).scale(self.pp);
        let c = &(&(&self.c + &kick_sq) - &(&self.p * kick)) + &(&self.x * shift);
        Symbol {
            pp: self.pp,
            p,
            x: self.x.clone(),
            c,
        }
    }

    fn into_hamiltonian(self, mass: f64) -> Result<AffineHamiltonian> {
        for (name, series) in [("p", &self.p), ("x", &self.x)] {
            // cancellations like (m a) / m - a leave rounding-level t-terms
            let scale = 1.0 + series.coeffs.iter().fold(0.0f64, |acc, c| acc.max(c.abs()));
            if let Some(j) =
                (1..series.coeffs.len()).find(|&j| series.coeff(j).abs() > 1e-12 * scale)
            {
                return Err(Error::DegreeOverflow(format!(
                    "time-dependent {name} coefficient (t^{j}) leaves the affine family"
                )));
            }
        }
        let a = -self.p.coeff(0) * mass;
        let f = -self.x.coeff(0);
        let e = &self.c - &Series::constant(a * a / (2.0 * mass));
        AffineHamiltonian::new(mass, a, f, e.to_cubic("scalar term e(t)")?)
    }
}

fn series_of(c: Cubic) -> Series {
    Series::from(c)
}

/// `K = U H U^-1 + i hbar (dU/dt) U^-1` as an affine Hamiltonian.
///
/// Corrections `i hbar (dU/dt) U^-1` per kind:
/// translation and momentum translation `dchi/dt`;
/// boost `-m V^2/2 + p V + dchi/dt`;
/// acceleration `a t p - m a x - m a^2 t^2 / 2 + dchi/dt`.
pub fn transformed_hamiltonian(
    tr: &FrameTransform,
    h: &AffineHamiltonian,
) -> Result<AffineHamiltonian> {
    let (shift, kick) = match tr.kind {
        TransformKind::SpatialTranslation { a } => (Series::constant(-a), Series::zero()),
        TransformKind::MomentumTranslation { b } => (Series::zero(), Series::constant(b)),
        TransformKind::GalileanBoost { velocity, mass } => (
            Series::monomial(-velocity, 1),
            Series::constant(mass * velocity),
        ),
        TransformKind::ConstantAcceleration { acceleration, mass } => (
            Series::monomial(-0.5 * acceleration, 2),
            Series::monomial(mass * acceleration, 1),
        ),
    };
    let mut k = h.symbol().substitute(&shift, &kick);
    k.c = &k.c + &series_of(tr.chi.derivative());
    match tr.kind {
        TransformKind::SpatialTranslation { .. } | TransformKind::MomentumTranslation { .. } => {}
        TransformKind::GalileanBoost {
            velocity: v,
            mass: m,
        } => {
            k.p = &k.p + &Series::constant(v);
            k.c = &k.c + &Series::constant(-0.5 * m * v * v);
        }
        TransformKind::ConstantAcceleration {
            acceleration: a,
            mass: m,
        } => {
            k.p = &k.p + &Series::monomial(a, 1);
            k.x = &k.x + &Series::constant(-m * a);
            k.c = &k.c + &Series::monomial(-0.5 * m * a * a, 2);
        }
    }
    k.into_hamiltonian(h.mass)
}

/// The `chi` (with `chi(0) = 0`) that makes `K = H`, when a time-only phase can
/// absorb the whole mismatch.
pub fn invariance_chi(tr: &FrameTransform, h: &AffineHamiltonian) -> Result<Option<ChiPolicy>> {
    let bare = tr.with_chi(Cubic::ZERO);
    let k = transformed_hamiltonian(&bare, h)?;
    let scale = |v: f64| COEFF_TOL * v.abs().max(1.0);
    if (k.mass - h.mass).abs() > scale(h.mass)
        || (k.momentum_offset - h.momentum_offset).abs() > scale(h.momentum_offset)
        || (k.force - h.force).abs() > scale(h.force)
    {
        return Ok(None);
    }
    let mut mismatch = k.scalar - h.scalar;
    if mismatch.0[3].abs() > scale(h.scalar.0[3]) {
        return Ok(None);
    }
    mismatch.0[3] = 0.0;
    Ok((-mismatch).antiderivative())
}
