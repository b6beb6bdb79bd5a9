//! Grids, wavefunction containers, Fourier transforms, Gaussian packets and distances.

pub mod gaussian;
pub mod grid;
pub mod spectral;
pub mod wavefunction;

pub use gaussian::{gaussian_packet, plane_wave, GaussianSpec};
pub use grid::{make_grid, Grid1D};
pub use spectral::{fourier_shift, from_momentum, to_momentum, Spectral};
pub use wavefunction::{
    distance_up_to_phase, inner_product, l2_distance, momentum_l2_distance, MomentumWaveFunction,
    Warning, WaveFunction,
};
