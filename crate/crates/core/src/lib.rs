//! Spectral simulator and verification lab for the radial defocusing cubic wave
//! equation u_tt − Δu + u³ = 0 on hyperbolic 3-space.
//!
//! The crate works in geodesic polar coordinates with the measure 4π sinh²r dr.
//! The substitution w = sinh(r)·u turns the radial Laplacian into −∂_r² + 1 on a
//! Dirichlet interval, so a sine transform diagonalizes every function of −Δ:
//! heat-flow frequency projections, fractional Sobolev norms and the exact free
//! wave flow. On top of that frame sit Morawetz weights and potentials, a Strang
//! split-step integrator, the frequency-truncation experiment (evolving the full
//! and high-frequency solutions and tracking a modified energy), and a randomized
//! lab for the functional inequalities the construction relies on.

pub mod data;
pub mod dst;
pub mod error;
pub mod grid;
pub mod ineq;
pub mod morawetz;
pub mod solver;
pub mod spectral;
pub mod truncation;

pub use error::{Error, Result};
pub use grid::{
    integrate_measure, radial_derivative, weighted_norm, LpExponent, RadialField, RadialGrid,
    Region, WaveState, WeightedRegionNorm,
};
pub use spectral::{
    apply_multiplier, bernstein_ratio, forward, heat_project, inverse, sobolev_norm,
    wave_propagate_linear, HeatProjection, SpectralField, SymbolMultiplier,
};
