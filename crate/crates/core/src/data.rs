//! Initial-data generators: smooth even bumps and rough random-spectrum fields.

use crate::error::{Error, Result};
use crate::grid::{RadialField, RadialGrid, WaveState};
use crate::spectral::{inverse, sobolev_norm, SpectralField};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;

/// Even Gaussian bump u(r) = A·[e^{−((r−c)/w)²} + e^{−((r+c)/w)²}].
///
/// The mirror term keeps u even in r, so w = sinh(r)·u is exactly odd and the
/// sine expansion converges spectrally.
pub fn gaussian_bump(grid: Arc<RadialGrid>, amplitude: f64, width: f64, center: f64) -> Result<RadialField> {
    if !(width > 0.0) {
        return Err(Error::invalid("width", "must be positive"));
    }
    RadialField::from_fn(grid, move |r| {
        let a = (r - center) / width;
        let b = (r + center) / width;
        amplitude * ((-a * a).exp() + (-b * b).exp())
    })
}

/// Radius beyond which a state's fields are numerically negligible
/// (below `floor` times the max amplitude).
pub fn support_radius(st: &WaveState, floor: f64) -> f64 {
    let cutoff = floor * st.u.max_abs().max(st.ut.max_abs()).max(f64::MIN_POSITIVE);
    let mut radius = 0.0;
    for ((&r, &u), &ut) in st
        .grid()
        .nodes()
        .iter()
        .zip(st.u.values())
        .zip(st.ut.values())
    {
        if u.abs() > cutoff || ut.abs() > cutoff {
            radius = r;
        }
    }
    radius
}

/// C^∞ ramp: 1 for x ≤ 0, 0 for x ≥ 1.
fn smooth_ramp(x: f64) -> f64 {
    if x <= 0.0 {
        1.0
    } else if x >= 1.0 {
        0.0
    } else {
        let a = (-1.0 / (1.0 - x)).exp();
        let b = (-1.0 / x).exp();
        a / (a + b)
    }
}

/// Description of a rough random-spectrum datum of target smoothness σ.
#[derive(Debug, Clone)]
pub struct RoughSpec {
    /// Sobolev order the norm is pinned in.
    pub sigma: f64,
    /// Target value of ‖·‖_{H^σ} after cutoff and rescale.
    pub norm: f64,
    /// Highest sine mode populated (fixing this across grids makes refinement
    /// studies compare the same continuum datum).
    pub kmax: usize,
    /// Support radius: a smooth cutoff brings the field to zero over [support−1, support].
    pub support: f64,
}

/// Draw a rough field: ŵ_k ∝ L_k^{−σ/2 − 1/4}·g_k with g_k standard normal, then a
/// smooth compact-support cutoff and an exact rescale to the target H^σ norm.
///
/// The −1/4 makes Σ L_k^σ ŵ_k² ~ Σ 1/k (log-marginal at the cutoff): the datum
/// saturates H^σ and escapes every higher Sobolev space as kmax grows.
pub fn rough_field(grid: Arc<RadialGrid>, spec: &RoughSpec, rng: &mut ChaCha8Rng) -> Result<RadialField> {
    if !(spec.norm >= 0.0) || !spec.norm.is_finite() {
        return Err(Error::invalid("norm", "must be finite and nonnegative"));
    }
    if spec.support <= 1.0 || spec.support >= grid.rmax() {
        return Err(Error::invalid(
            "support",
            format!("need 1 < support < rmax, got {}", spec.support),
        ));
    }
    let kmax = spec.kmax.min(grid.len());
    let mut c = SpectralField::zeros(grid.clone());
    for k in 1..=kmax {
        let l = grid.eigenvalue(k);
        let g: f64 = sample_standard_normal(rng);
        c.coeffs_mut()[k - 1] = l.powf(-spec.sigma / 2.0 - 0.25) * g;
    }
    let raw = inverse(&c);
    let support = spec.support;
    let cut = raw.map_with_radius(&grid, |r, v| v * smooth_ramp(r - (support - 1.0)));
    let norm_now = sobolev_norm(&cut, spec.sigma);
    if norm_now == 0.0 {
        return Ok(RadialField::zeros(grid));
    }
    Ok(cut.scaled(spec.norm / norm_now))
}

impl RadialField {
    fn map_with_radius(&self, grid: &Arc<RadialGrid>, f: impl Fn(f64, f64) -> f64) -> RadialField {
        let values: Vec<f64> = grid
            .nodes()
            .iter()
            .zip(self.values())
            .map(|(&r, &v)| f(r, v))
            .collect();
        RadialField::new(grid.clone(), values).expect("finite map")
    }
}

fn sample_standard_normal(rng: &mut ChaCha8Rng) -> f64 {
    // Box-Muller; two uniforms per draw keeps the stream layout obvious.
    let u1: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
    let u2: f64 = rng.gen_range(0.0..1.0);
    (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
}

/// Deterministic generator for a seed.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
