//! Shared oracles for the integration suites. Everything here is independent of
//! the spectral implementation paths it checks: plain finite differences and
//! direct quadrature only.
#![allow(dead_code)] // each test binary uses its own subset

use hypwave_core::grid::{RadialField, RadialGrid, WaveState};
use hypwave_core::solver::{step, CubicSign};
use std::sync::Arc;

/// Centered finite-difference polar Laplacian −(u_rr + 2coth(r)·u_r) with
/// analytically supplied endpoint values u(0) and u(rmax).
pub fn fd_neg_polar_laplacian(
    grid: &Arc<RadialGrid>,
    u: &RadialField,
    u_at_zero: f64,
    u_at_rmax: f64,
) -> Vec<f64> {
    let h = grid.spacing();
    let v = u.values();
    let m = v.len();
    let mut out = vec![0.0; m];
    for j in 0..m {
        let left = if j == 0 { u_at_zero } else { v[j - 1] };
        let right = if j == m - 1 { u_at_rmax } else { v[j + 1] };
        let r = grid.nodes()[j];
        let d2 = (left - 2.0 * v[j] + right) / (h * h);
        let d1 = (right - left) / (2.0 * h);
        out[j] = -(d2 + 2.0 * (r.cosh() / r.sinh()) * d1);
    }
    out
}

/// March a state with the defocusing Strang step, returning every intermediate
/// state (index i holds the state after i steps).
pub fn march(st: &WaveState, dt: f64, steps: usize) -> Vec<WaveState> {
    let mut out = Vec::with_capacity(steps + 1);
    out.push(st.clone());
    for _ in 0..steps {
        let next = step(out.last().unwrap(), dt, CubicSign::Defocusing, 1e8).unwrap();
        out.push(next);
    }
    out
}

/// Centered difference (f(i+k) − f(i−k)) / (2k·dt) of a per-state functional
/// along a marched trajectory.
pub fn centered_rate(values: &[f64], i: usize, k: usize, dt: f64) -> f64 {
    (values[i + k] - values[i - k]) / (2.0 * k as f64 * dt)
}
