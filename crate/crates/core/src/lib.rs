//! Frame transformations of wavefunctions on a periodic 1D grid.
//!
//! The crate covers the eigenstate phases `alpha`/`beta` of each transform and
//! their consistency relation, the unitary action on sampled states, the
//! transformed Hamiltonian within an affine family, a split-step propagator
//! used to check covariance numerically, and the classical counterpart
//! (`alpha` as the `F1` generating function, principal-function transport).

pub mod classical;
pub mod error;
pub mod frames;
pub mod hamiltonian;
pub mod harness;
pub mod numerics;
pub mod poly;
pub mod propagator;

pub use error::{Error, Result};
pub use frames::{ChiPolicy, FrameTransform, TransformKind};
pub use hamiltonian::{invariance_chi, transformed_hamiltonian, AffineHamiltonian};
pub use numerics::{GaussianSpec, Grid1D, MomentumWaveFunction, WaveFunction};
pub use poly::Cubic;
