//! The sine-spectral frame: the substitution w = sinh(r)·u conjugates the radial
//! hyperbolic Laplacian to −∂_r² + 1, which the sine basis sin(kπr/rmax)
//! diagonalizes with eigenvalues L_k = 1 + (kπ/rmax)². Everything built from
//! functions of −Δ (fractional powers, Sobolev norms, heat-flow projections,
//! the free wave flow) acts diagonally in this frame.
//!
//! The transform is normalized so that the basis e_k(r) = √(2/rmax)·sin(kπr/rmax)
//! is orthonormal in the discrete L²(dr) inner product h·Σ_j, which pins Parseval
//! exactly: Σ_k ŵ_k² = h·Σ_j w_j².

use crate::dst::dst1;
use crate::error::{Error, Result};
use crate::grid::{RadialField, RadialGrid, WaveState};
use std::sync::Arc;

/// Sine coefficients of w = sinh(r)·u on a grid.
#[derive(Debug, Clone)]
pub struct SpectralField {
    grid: Arc<RadialGrid>,
    coeffs: Vec<f64>,
}

impl SpectralField {
    pub fn new(grid: Arc<RadialGrid>, coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.len() != grid.len() {
            return Err(Error::GridMismatch(format!(
                "{} coefficients for {} modes",
                coeffs.len(),
                grid.len()
            )));
        }
        Ok(SpectralField { grid, coeffs })
    }

    pub fn zeros(grid: Arc<RadialGrid>) -> Self {
        let coeffs = vec![0.0; grid.len()];
        SpectralField { grid, coeffs }
    }

    pub fn grid(&self) -> &Arc<RadialGrid> {
        &self.grid
    }

    /// Coefficient for mode k = index + 1.
    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn coeffs_mut(&mut self) -> &mut [f64] {
        &mut self.coeffs
    }

    /// Eigenvalue L_k for the mode at `index` (k = index + 1).
    pub fn eigenvalue_at(&self, index: usize) -> f64 {
        self.grid.eigenvalue(index + 1)
    }

    /// Σ_k ŵ_k², the squared discrete L²(dr) norm of w.
    pub fn l2_sq(&self) -> f64 {
        self.coeffs.iter().map(|c| c * c).sum()
    }
}

/// A spectral function of −Δ, evaluated on eigenvalues L ∈ [1, ∞).
#[derive(Clone)]
pub struct SymbolMultiplier {
    f: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
}

impl SymbolMultiplier {
    pub fn new(f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        SymbolMultiplier { f: Arc::new(f) }
    }

    /// m(L) = L^σ. Total for any real σ since the spectrum starts at 1.
    pub fn power(sigma: f64) -> Self {
        SymbolMultiplier::new(move |l: f64| l.powf(sigma))
    }

    pub fn eval(&self, l: f64) -> f64 {
        (self.f)(l)
    }
}

/// Heat-flow projection pieces: P_{≥s} = e^{sΔ}, P_s = (−sΔ)e^{sΔ}, P_{<s} = 1 − e^{sΔ}.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HeatProjection {
    /// e^{−sL}: the heat-smoothed low-frequency part.
    Geq,
    /// sL·e^{−sL}: the band piece.
    Band,
    /// 1 − e^{−sL}: the high-frequency complement.
    Lt,
}

impl HeatProjection {
    pub fn symbol(self, s: f64) -> SymbolMultiplier {
        match self {
            HeatProjection::Geq => SymbolMultiplier::new(move |l: f64| (-s * l).exp()),
            HeatProjection::Band => SymbolMultiplier::new(move |l: f64| s * l * (-s * l).exp()),
            HeatProjection::Lt => SymbolMultiplier::new(move |l: f64| 1.0 - (-s * l).exp()),
        }
    }
}

/// Forward transform: sine coefficients of w(r_j) = sinh(r_j)·u(r_j).
pub fn forward(u: &RadialField) -> SpectralField {
    let grid = u.grid();
    let w: Vec<f64> = u
        .values()
        .iter()
        .zip(grid.sinh_nodes())
        .map(|(&v, &s)| v * s)
        .collect();
    let scale = grid.spacing() * (2.0 / grid.rmax()).sqrt();
    let coeffs = dst1(&w).into_iter().map(|c| c * scale).collect();
    SpectralField {
        grid: grid.clone(),
        coeffs,
    }
}

/// Inverse transform: reconstruct u(r_j) from sine coefficients of w.
pub fn inverse(c: &SpectralField) -> RadialField {
    let grid = c.grid();
    let scale = (2.0 / grid.rmax()).sqrt();
    let w = dst1(&c.coeffs);
    let values: Vec<f64> = w
        .iter()
        .zip(grid.sinh_nodes())
        .map(|(&wv, &s)| scale * wv / s)
        .collect();
    RadialField::new(grid.clone(), values).expect("inverse transform of finite coefficients")
}

/// Apply m(−Δ) to a field: transform, scale coefficient k by m(L_k), transform back.
pub fn apply_multiplier(u: &RadialField, m: &SymbolMultiplier) -> Result<RadialField> {
    let mut c = forward(u);
    apply_multiplier_spectral(&mut c, m)?;
    Ok(inverse(&c))
}

/// Same as [`apply_multiplier`] but acting in place on coefficients.
pub fn apply_multiplier_spectral(c: &mut SpectralField, m: &SymbolMultiplier) -> Result<()> {
    let grid = c.grid.clone();
    for (i, coeff) in c.coeffs.iter_mut().enumerate() {
        let l = grid.eigenvalue(i + 1);
        let mv = m.eval(l);
        if !mv.is_finite() {
            return Err(Error::NonFiniteSymbol(l));
        }
        *coeff *= mv;
    }
    Ok(())
}

/// ‖(−Δ)^{σ/2} u‖_{L²(dμ)} = (4π Σ_k L_k^σ ŵ_k²)^{1/2}.
pub fn sobolev_norm(u: &RadialField, sigma: f64) -> f64 {
    sobolev_norm_spectral(&forward(u), sigma)
}

pub fn sobolev_norm_spectral(c: &SpectralField, sigma: f64) -> f64 {
    let sum: f64 = c
        .coeffs
        .iter()
        .enumerate()
        .map(|(i, w)| c.grid.eigenvalue(i + 1).powf(sigma) * w * w)
        .sum();
    (4.0 * std::f64::consts::PI * sum).sqrt()
}

/// Heat-flow projection of a field. Requires s > 0.
pub fn heat_project(u: &RadialField, s: f64, mode: HeatProjection) -> Result<RadialField> {
    if !(s > 0.0) {
        return Err(Error::invalid("s", format!("heat time must be positive, got {s}")));
    }
    apply_multiplier(u, &mode.symbol(s))
}

/// Normalized Bernstein ratio for the heat-flow projections.
///
/// `Lt`: ‖(−Δ)^β P_{<s}u‖₂ / (s^{α−β}·‖(−Δ)^α u‖₂), bounded by
/// sup_{x>0} (1−e^{−x})/x^{α−β} = 1 for α−β ∈ (0,1).
/// `Geq`: ‖(−Δ)^α P_{≥s}u‖₂ / (s^{β−α}·‖(−Δ)^β u‖₂), bounded by
/// sup_{x>0} x^{α−β} e^{−x} = ((α−β)/e)^{α−β}.
pub fn bernstein_ratio(
    beta: f64,
    alpha: f64,
    s: f64,
    u: &RadialField,
    mode: HeatProjection,
) -> Result<f64> {
    if !(0.0 <= beta && beta < alpha && alpha < beta + 1.0) {
        return Err(Error::invalid(
            "alpha/beta",
            format!("need 0 <= beta < alpha < beta + 1, got beta = {beta}, alpha = {alpha}"),
        ));
    }
    if !(s > 0.0) {
        return Err(Error::invalid("s", "heat time must be positive"));
    }
    let c = forward(u);
    let theta = alpha - beta;
    let mut num = 0.0;
    let mut den = 0.0;
    match mode {
        HeatProjection::Lt => {
            for (i, w) in c.coeffs().iter().enumerate() {
                let l = c.grid().eigenvalue(i + 1);
                let proj = 1.0 - (-s * l).exp();
                num += l.powf(2.0 * beta) * (proj * w) * (proj * w);
                den += l.powf(2.0 * alpha) * w * w;
            }
            if den == 0.0 {
                return Err(Error::invalid("u", "field must be nonzero"));
            }
            Ok((num / den).sqrt() / s.powf(theta))
        }
        HeatProjection::Geq => {
            for (i, w) in c.coeffs().iter().enumerate() {
                let l = c.grid().eigenvalue(i + 1);
                let proj = (-s * l).exp();
                num += l.powf(2.0 * alpha) * (proj * w) * (proj * w);
                den += l.powf(2.0 * beta) * w * w;
            }
            if den == 0.0 {
                return Err(Error::invalid("u", "field must be nonzero"));
            }
            Ok((num / den).sqrt() * s.powf(theta))
        }
        HeatProjection::Band => Err(Error::invalid("mode", "Bernstein ratio takes Lt or Geq")),
    }
}

/// Exact free wave flow over `dt`: per mode the 2×2 rotation
/// [cos(dt√L), sin(dt√L)/√L; −√L sin(dt√L), cos(dt√L)], a group (any real dt),
/// with per-mode determinant 1 and exact conservation of L·û² + û_t².
pub fn wave_propagate_linear(st: &WaveState, dt: f64) -> WaveState {
    let mut cu = forward(&st.u);
    let mut cv = forward(&st.ut);
    rotate_modes(&mut cu, &mut cv, dt);
    WaveState {
        u: inverse(&cu),
        ut: inverse(&cv),
        t: st.t + dt,
    }
}

/// In-place spectral form of the free flow, for integrators that already hold coefficients.
pub fn rotate_modes(cu: &mut SpectralField, cv: &mut SpectralField, dt: f64) {
    let grid = cu.grid.clone();
    for i in 0..cu.coeffs.len() {
        let sqrt_l = grid.eigenvalue(i + 1).sqrt();
        let (s, c) = (dt * sqrt_l).sin_cos();
        let a = cu.coeffs[i];
        let b = cv.coeffs[i];
        cu.coeffs[i] = c * a + s / sqrt_l * b;
        cv.coeffs[i] = -sqrt_l * s * a + c * b;
    }
}
