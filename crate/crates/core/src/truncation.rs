//! The frequency-truncation experiment: split rough data into a smooth large
//! piece and a rough small piece with the heat flow, co-evolve the full solution
//! u and the high-frequency solution ω under the same cubic equation, form
//! v = u − ω, and track the modified energy 𝓔 = E − Σ c_j·M_j − c₄·M̃ together
//! with the growth-rate bound d𝓔/dt ≲ ‖r^(1/2)ω‖²_{L∞(r>1)}·𝓔 + ‖ω‖₄⁴ and its
//! Gronwall closure.

use crate::data::{gaussian_bump, rough_field, seeded_rng, RoughSpec};
use crate::error::{Error, Result};
use crate::grid::{
    radial_derivative, weighted_norm, LpExponent, RadialField, RadialGrid, Region, WaveState,
    WeightedRegionNorm,
};
use crate::morawetz::{
    build_weight, modified_potential, morawetz_potential, MorawetzWeight, WeightFamily,
};
use crate::solver::{check_boundary_guard, energy, step, IntegratorConfig};
use crate::spectral::{heat_project, sobolev_norm, HeatProjection};
use serde::Serialize;
use std::sync::Arc;

/// Initial-data descriptor for an experiment.
#[derive(Debug, Clone, Serialize)]
pub enum DataSpec {
    Zero,
    Bump {
        amplitude: f64,
        width: f64,
        center: f64,
    },
    Rough {
        norm0: f64,
        norm1: f64,
        kmax: usize,
        support: f64,
    },
}

/// Full configuration of a truncation experiment.
#[derive(Debug, Clone, Serialize)]
pub struct TruncationConfig {
    /// Regularity surplus: data lives in H^(1/2+δ) × H^(−1/2+δ).
    pub delta: f64,
    /// Auxiliary regularity for the split norms, in (0, δ/2).
    pub delta1: f64,
    /// Heat-flow cutoff.
    pub s: f64,
    /// Morawetz coefficients c₁..c₄ (nonincreasing, positive).
    pub c: [f64; 4],
    /// Exponent of the A3 weight.
    pub alpha: f64,
    /// Exponent of the A4 weight, below alpha.
    pub alpha_tilde: f64,
    pub rmax: f64,
    pub n: usize,
    pub seed: u64,
    pub data: DataSpec,
    pub integrator: IntegratorConfig,
}

impl TruncationConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.delta > 0.0) {
            return Err(Error::invalid("delta", "must be positive"));
        }
        if !(self.delta1 > 0.0 && self.delta1 < self.delta / 2.0) {
            return Err(Error::invalid(
                "delta1",
                format!("need 0 < delta1 < delta/2, got {}", self.delta1),
            ));
        }
        if !(self.s > 0.0) {
            return Err(Error::invalid("s", "must be positive"));
        }
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(Error::invalid("alpha", "must lie in (0,1)"));
        }
        if !(self.alpha_tilde > 0.0 && self.alpha_tilde < self.alpha) {
            return Err(Error::invalid(
                "alpha_tilde",
                format!("need 0 < alpha_tilde < alpha, got {}", self.alpha_tilde),
            ));
        }
        if self.c.iter().any(|&c| !(c > 0.0)) {
            return Err(Error::invalid("c1..c4", "coefficients must be positive"));
        }
        if !(self.c[3] <= self.c[2] && self.c[2] <= self.c[1] && self.c[1] <= self.c[0]) {
            return Err(Error::invalid("c1..c4", "need c4 <= c3 <= c2 <= c1"));
        }
        Ok(())
    }

    /// Spec-default parameters on a given grid/horizon.
    pub fn default_params(rmax: f64, n: usize, dt: f64, t_final: f64, seed: u64) -> Result<Self> {
        Ok(TruncationConfig {
            delta: 0.25,
            delta1: 0.1,
            s: 0.01,
            c: [1e-2, 1e-3, 1e-3, 1e-4],
            alpha: 0.9,
            alpha_tilde: 0.5,
            rmax,
            n,
            seed,
            data: DataSpec::Rough {
                norm0: 1.0,
                norm1: 1.0,
                kmax: 1024,
                support: 4.0,
            },
            integrator: IntegratorConfig::new(dt, t_final, 10)?,
        })
    }
}

/// The exact additive split of the data at heat time s.
#[derive(Debug, Clone)]
pub struct SplitData {
    pub omega0: RadialField,
    pub omega1: RadialField,
    pub v0: RadialField,
    pub v1: RadialField,
}

/// The four norms of the split and the normalized Bernstein ratio.
#[derive(Debug, Clone, Serialize)]
pub struct SplitNorms {
    /// ‖ω₀‖_{H^(1/2+δ₁)}
    pub omega0_h: f64,
    /// ‖ω₁‖_{H^(−1/2+δ₁)}
    pub omega1_h: f64,
    /// ‖v₀‖_{H¹}
    pub v0_h1: f64,
    /// ‖v₁‖_{L²}
    pub v1_l2: f64,
    /// ‖(ω₀,ω₁)‖ combined over the product space.
    pub omega_combined: f64,
    /// ω-combined norm divided by s^((δ−δ₁)/2).
    pub ratio_vs_s_power: f64,
}

/// ω = P_{<s}(u₀,u₁) (high-frequency), v = u − ω (heat-smoothed); the sum is exact.
pub fn split_data(u0: &RadialField, u1: &RadialField, s: f64) -> Result<SplitData> {
    if !u0.same_grid(u1) {
        return Err(Error::GridMismatch("u0 and u1 on different grids".into()));
    }
    let omega0 = heat_project(u0, s, HeatProjection::Lt)?;
    let omega1 = heat_project(u1, s, HeatProjection::Lt)?;
    let v0 = u0.sub(&omega0)?;
    let v1 = u1.sub(&omega1)?;
    Ok(SplitData {
        omega0,
        omega1,
        v0,
        v1,
    })
}

/// Norms of the split pieces at the auxiliary regularity δ₁.
pub fn split_norms(split: &SplitData, s: f64, delta: f64, delta1: f64) -> SplitNorms {
    let omega0_h = sobolev_norm(&split.omega0, 0.5 + delta1);
    let omega1_h = sobolev_norm(&split.omega1, -0.5 + delta1);
    let v0_h1 = sobolev_norm(&split.v0, 1.0);
    let v1_l2 = sobolev_norm(&split.v1, 0.0);
    let omega_combined = (omega0_h * omega0_h + omega1_h * omega1_h).sqrt();
    let power = s.powf(0.5 * (delta - delta1));
    SplitNorms {
        omega0_h,
        omega1_h,
        v0_h1,
        v1_l2,
        omega_combined,
        ratio_vs_s_power: if power > 0.0 { omega_combined / power } else { 0.0 },
    }
}

/// 𝒩 = −3(v²ω + vω²): the residual making v = u − ω solve v_tt − Δv + v³ = 𝒩
/// when u and ω both solve the cubic equation.
pub fn perturbation_source(v: &RadialField, omega: &RadialField) -> Result<RadialField> {
    v.zip_with(omega, |v, w| -3.0 * (v * v * w + v * w * w))
}

/// The four weights an experiment evaluates.
pub struct WeightSet {
    pub a1: MorawetzWeight,
    pub a2: MorawetzWeight,
    pub a3: MorawetzWeight,
    pub a4: MorawetzWeight,
}

impl WeightSet {
    pub fn build(grid: Arc<RadialGrid>, alpha: f64, alpha_tilde: f64) -> Result<Self> {
        Ok(WeightSet {
            a1: build_weight(WeightFamily::A1, grid.clone())?,
            a2: build_weight(WeightFamily::A2, grid.clone())?,
            a3: build_weight(WeightFamily::A3 { alpha }, grid.clone())?,
            a4: build_weight(WeightFamily::A4 { alpha_tilde }, grid)?,
        })
    }
}

/// The four potentials at a state.
pub struct Potentials {
    pub m1: f64,
    pub m2: f64,
    pub m3: f64,
    pub m_tilde: f64,
}

pub fn potentials(st: &WaveState, weights: &WeightSet) -> Result<Potentials> {
    Ok(Potentials {
        m1: morawetz_potential(st, &weights.a1)?,
        m2: morawetz_potential(st, &weights.a2)?,
        m3: morawetz_potential(st, &weights.a3)?,
        m_tilde: modified_potential(st, &weights.a4)?,
    })
}

/// Modified energy 𝓔 = E − c₁M₁ − c₂M₂ − c₃M₃ − c₄M̃.
pub fn modified_energy(st: &WaveState, c: &[f64; 4], weights: &WeightSet) -> Result<f64> {
    let p = potentials(st, weights)?;
    Ok(energy(st) - c[0] * p.m1 - c[1] * p.m2 - c[2] * p.m3 - c[3] * p.m_tilde)
}

/// One snapshot row of the growth ledger.
#[derive(Debug, Clone, Serialize)]
pub struct LedgerRow {
    pub t: f64,
    pub energy: f64,
    pub m1: f64,
    pub m2: f64,
    pub m3: f64,
    pub m_tilde: f64,
    pub modified_energy: f64,
    /// Centered finite difference of 𝓔 over snapshots (one-sided at the ends).
    pub d_modified_energy_dt: f64,
    /// B(t) = ‖r^(1/2)ω‖²_{L∞(r>1)}·𝓔(t) + ‖ω‖₄⁴.
    pub bound: f64,
    pub neg1_grad_le1: f64,
    pub neg1_grad_gt1: f64,
    pub neg1_l4: f64,
    pub neg2_l4w: f64,
    pub neg3_grad: f64,
    pub neg3_hardy: f64,
    pub neg4_vt: f64,
    pub gronwall_ratio: f64,
    /// ‖r^(1/2)ω‖²_{L∞(r>1)}
    pub omega_rhalf_linf_sq: f64,
    /// ‖ω‖₄⁴
    pub omega_l4x4: f64,
    /// ‖ω‖_{H^(1/2+δ)}
    pub omega_hnorm: f64,
    /// ‖ω_t‖_{H^(−1/2+δ)}
    pub omega_t_hnorm: f64,
}

/// Growth ledger: per-snapshot records of the experiment.
#[derive(Debug, Clone, Default, Serialize)]
pub struct GrowthLedger {
    pub rows: Vec<LedgerRow>,
}

impl GrowthLedger {
    pub const CSV_HEADER: &'static str = "t,E,M1,M2,M3,Mtilde,Ecal,dEcal_dt,bound_B,\
neg1_grad_le1,neg1_grad_gt1,neg1_l4,neg2_l4w,neg3_grad,neg3_hardy,neg4_vt,gronwall_ratio,\
omega_rhalf_linf_sq,omega_l4x4,omega_hnorm,omega_t_hnorm";

    pub fn to_csv(&self) -> String {
        let mut out = String::from(Self::CSV_HEADER);
        out.push('\n');
        for r in &self.rows {
            out.push_str(&format!(
                "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},\
{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}\n",
                r.t,
                r.energy,
                r.m1,
                r.m2,
                r.m3,
                r.m_tilde,
                r.modified_energy,
                r.d_modified_energy_dt,
                r.bound,
                r.neg1_grad_le1,
                r.neg1_grad_gt1,
                r.neg1_l4,
                r.neg2_l4w,
                r.neg3_grad,
                r.neg3_hardy,
                r.neg4_vt,
                r.gronwall_ratio,
                r.omega_rhalf_linf_sq,
                r.omega_l4x4,
                r.omega_hnorm,
                r.omega_t_hnorm,
            ));
        }
        out
    }

    pub fn all_finite(&self) -> bool {
        self.rows.iter().all(|r| {
            [
                r.t,
                r.energy,
                r.m1,
                r.m2,
                r.m3,
                r.m_tilde,
                r.modified_energy,
                r.d_modified_energy_dt,
                r.bound,
                r.gronwall_ratio,
            ]
            .iter()
            .all(|x| x.is_finite())
        })
    }
}

/// Run-level report of the experiment.
#[derive(Debug, Clone, Serialize)]
pub struct TruncationReport {
    pub s: f64,
    pub delta: f64,
    pub delta1: f64,
    pub alpha: f64,
    pub alpha_tilde: f64,
    pub c: [f64; 4],
    pub seed: u64,
    pub split: SplitNorms,
    /// 𝓔 at t = 0 and its supremum over the run.
    pub modified_energy_initial: f64,
    pub modified_energy_sup: f64,
    /// ∫‖r^(1/2)ω‖²_{L∞(r>1)} dt over the run.
    pub omega_weight_integral: f64,
    /// ∫‖ω‖₄⁴ dt and ∫‖v‖₄⁴ dt.
    pub omega_l4tx4: f64,
    pub v_l4tx4: f64,
    /// sup_t (|M₁|+|M₂|+|M₃|).
    pub sup_m_sum: f64,
    /// sup_t 𝓔 / (𝓔(0)·exp(∫‖r^(1/2)ω‖²dt) + ∫‖ω‖₄⁴dt).
    pub gronwall_closure_constant: f64,
    /// max over snapshots of (d𝓔/dt)/B(t).
    pub gronwall_max_ratio: f64,
    /// max over snapshots of max(𝓔/E, E/𝓔).
    pub energy_equivalence_max: f64,
    pub equivalence_window_ok: bool,
    /// ‖r^(1/2)ω‖²_{L²ₜL∞ₓ(r>1)} vs sup_t ‖ω‖_{H^(1/2+δ)}‖ω_t‖_{H^(−1/2+δ)}.
    pub cor35_lhs: f64,
    pub cor35_rhs: f64,
    pub cor35_ratio: f64,
    /// ∫‖v‖₄⁴ vs sup_t(|M₁|+|M₂|+|M₃|) + ∫‖r^(1/2)ω‖² + ∫‖ω‖₄⁴.
    pub cor46_lhs: f64,
    pub cor46_rhs: f64,
    pub cor46_ratio: f64,
}

/// Build the initial state pair (u₀, u₁) for a config.
pub fn build_data(cfg: &TruncationConfig, grid: &Arc<RadialGrid>) -> Result<(RadialField, RadialField)> {
    match &cfg.data {
        DataSpec::Zero => Ok((RadialField::zeros(grid.clone()), RadialField::zeros(grid.clone()))),
        DataSpec::Bump {
            amplitude,
            width,
            center,
        } => Ok((
            gaussian_bump(grid.clone(), *amplitude, *width, *center)?,
            RadialField::zeros(grid.clone()),
        )),
        DataSpec::Rough {
            norm0,
            norm1,
            kmax,
            support,
        } => {
            let mut rng = seeded_rng(cfg.seed);
            let u0 = rough_field(
                grid.clone(),
                &RoughSpec {
                    sigma: 0.5 + cfg.delta,
                    norm: *norm0,
                    kmax: *kmax,
                    support: *support,
                },
                &mut rng,
            )?;
            let u1 = rough_field(
                grid.clone(),
                &RoughSpec {
                    sigma: -0.5 + cfg.delta,
                    norm: *norm1,
                    kmax: *kmax,
                    support: *support,
                },
                &mut rng,
            )?;
            Ok((u0, u1))
        }
    }
}

struct NegativeTermNorms {
    grad_le1: WeightedRegionNorm,
    grad_gt1: WeightedRegionNorm,
    l4_all: WeightedRegionNorm,
    l4w_le1: WeightedRegionNorm,
    grad_alpha_le1: WeightedRegionNorm,
    hardy_le1: WeightedRegionNorm,
    vt_log_le1: WeightedRegionNorm,
    omega_rhalf_gt1: WeightedRegionNorm,
    l4_omega: WeightedRegionNorm,
}

impl NegativeTermNorms {
    fn build(alpha: f64, alpha_tilde: f64) -> Self {
        NegativeTermNorms {
            grad_le1: WeightedRegionNorm::plain(Region::WithinUnit, LpExponent::Finite(2.0)),
            grad_gt1: WeightedRegionNorm::new(
                |r: f64| r.sqrt() * (-r).exp(),
                Region::BeyondUnit,
                LpExponent::Finite(2.0),
            )
            .expect("p >= 1"),
            l4_all: WeightedRegionNorm::plain(Region::All, LpExponent::Finite(4.0)),
            l4w_le1: WeightedRegionNorm::power(-0.25, Region::WithinUnit, LpExponent::Finite(4.0)),
            grad_alpha_le1: WeightedRegionNorm::power(
                -alpha / 2.0,
                Region::WithinUnit,
                LpExponent::Finite(2.0),
            ),
            hardy_le1: WeightedRegionNorm::power(
                -(2.0 + alpha) / 2.0,
                Region::WithinUnit,
                LpExponent::Finite(2.0),
            ),
            vt_log_le1: WeightedRegionNorm::new(
                move |r: f64| r.powf(-alpha_tilde / 2.0) * r.ln().abs().sqrt(),
                Region::WithinUnit,
                LpExponent::Finite(2.0),
            )
            .expect("p >= 1"),
            omega_rhalf_gt1: WeightedRegionNorm::power(0.5, Region::BeyondUnit, LpExponent::Infinity),
            l4_omega: WeightedRegionNorm::plain(Region::All, LpExponent::Finite(4.0)),
        }
    }
}

/// Run the experiment: evolve u and ω independently, ledger v = u − ω.
pub fn run_experiment(cfg: &TruncationConfig) -> Result<(GrowthLedger, TruncationReport)> {
    cfg.validate()?;
    let grid = RadialGrid::new(cfg.rmax, cfg.n)?;
    let (u0, u1) = build_data(cfg, &grid)?;
    let split = split_data(&u0, &u1, cfg.s)?;
    let norms = split_norms(&split, cfg.s, cfg.delta, cfg.delta1);
    let weights = WeightSet::build(grid.clone(), cfg.alpha, cfg.alpha_tilde)?;
    let measures = NegativeTermNorms::build(cfg.alpha, cfg.alpha_tilde);

    let mut u_state = WaveState::new(u0, u1, 0.0)?;
    let mut w_state = WaveState::new(split.omega0.clone(), split.omega1.clone(), 0.0)?;
    check_boundary_guard(&u_state, cfg.integrator.t_final)?;
    check_boundary_guard(&w_state, cfg.integrator.t_final)?;

    let mut rows: Vec<LedgerRow> = Vec::new();
    let mut snapshot = |u_state: &WaveState, w_state: &WaveState| -> Result<()> {
        let v = u_state.u.sub(&w_state.u)?;
        let vt = u_state.ut.sub(&w_state.ut)?;
        let v_state = WaveState::new(v.clone(), vt.clone(), u_state.t)?;
        let p = potentials(&v_state, &weights)?;
        let e = energy(&v_state);
        let ecal = e - cfg.c[0] * p.m1 - cfg.c[1] * p.m2 - cfg.c[2] * p.m3 - cfg.c[3] * p.m_tilde;
        let vr = radial_derivative(&v);
        let x = weighted_norm(&w_state.u, &measures.omega_rhalf_gt1)?.powi(2);
        let omega_l4 = weighted_norm(&w_state.u, &measures.l4_omega)?.powi(4);
        rows.push(LedgerRow {
            t: u_state.t,
            energy: e,
            m1: p.m1,
            m2: p.m2,
            m3: p.m3,
            m_tilde: p.m_tilde,
            modified_energy: ecal,
            d_modified_energy_dt: 0.0,
            bound: x * ecal + omega_l4,
            neg1_grad_le1: weighted_norm(&vr, &measures.grad_le1)?.powi(2),
            neg1_grad_gt1: weighted_norm(&vr, &measures.grad_gt1)?.powi(2),
            neg1_l4: weighted_norm(&v, &measures.l4_all)?.powi(4),
            neg2_l4w: weighted_norm(&v, &measures.l4w_le1)?.powi(4),
            neg3_grad: weighted_norm(&vr, &measures.grad_alpha_le1)?.powi(2),
            neg3_hardy: weighted_norm(&v, &measures.hardy_le1)?.powi(2),
            neg4_vt: weighted_norm(&vt, &measures.vt_log_le1)?.powi(2),
            gronwall_ratio: 0.0,
            omega_rhalf_linf_sq: x,
            omega_l4x4: omega_l4,
            omega_hnorm: sobolev_norm(&w_state.u, 0.5 + cfg.delta),
            omega_t_hnorm: sobolev_norm(&w_state.ut, -0.5 + cfg.delta),
        });
        Ok(())
    };

    snapshot(&u_state, &w_state)?;
    let steps = cfg.integrator.steps();
    for i in 1..=steps {
        u_state = step(
            &u_state,
            cfg.integrator.dt,
            cfg.integrator.nonlinearity,
            cfg.integrator.amplitude_ceiling,
        )?;
        w_state = step(
            &w_state,
            cfg.integrator.dt,
            cfg.integrator.nonlinearity,
            cfg.integrator.amplitude_ceiling,
        )?;
        u_state.t = i as f64 * cfg.integrator.dt;
        w_state.t = u_state.t;
        if i % cfg.integrator.observer_stride == 0 || i == steps {
            snapshot(&u_state, &w_state)?;
        }
    }

    // Fill the finite-difference d𝓔/dt and Gronwall ratios.
    let m = rows.len();
    for j in 0..m {
        let d = if m < 2 {
            0.0
        } else if j == 0 {
            let dt = rows[1].t - rows[0].t;
            (rows[1].modified_energy - rows[0].modified_energy) / dt
        } else if j == m - 1 {
            let dt = rows[m - 1].t - rows[m - 2].t;
            (rows[m - 1].modified_energy - rows[m - 2].modified_energy) / dt
        } else {
            let dt = rows[j + 1].t - rows[j - 1].t;
            (rows[j + 1].modified_energy - rows[j - 1].modified_energy) / dt
        };
        rows[j].d_modified_energy_dt = d;
        rows[j].gronwall_ratio = if rows[j].bound > 0.0 { d / rows[j].bound } else { 0.0 };
    }

    let trapezoid = |f: &dyn Fn(&LedgerRow) -> f64| -> f64 {
        let mut acc = 0.0;
        for w in rows.windows(2) {
            acc += 0.5 * (w[1].t - w[0].t) * (f(&w[0]) + f(&w[1]));
        }
        acc
    };
    let sup = |f: &dyn Fn(&LedgerRow) -> f64| rows.iter().map(|r| f(r)).fold(f64::NEG_INFINITY, f64::max);

    let omega_weight_integral = trapezoid(&|r| r.omega_rhalf_linf_sq);
    let omega_l4tx4 = trapezoid(&|r| r.omega_l4x4);
    let v_l4tx4 = trapezoid(&|r| r.neg1_l4);
    let sup_m_sum = sup(&|r| r.m1.abs() + r.m2.abs() + r.m3.abs());
    let sup_ecal = sup(&|r| r.modified_energy);
    let ecal0 = rows.first().map(|r| r.modified_energy).unwrap_or(0.0);

    let closure_denominator = ecal0 * omega_weight_integral.exp() + omega_l4tx4;
    let gronwall_closure_constant = if closure_denominator > 0.0 {
        sup_ecal / closure_denominator
    } else {
        0.0
    };
    let gronwall_max_ratio = if m > 2 {
        rows[1..m - 1]
            .iter()
            .map(|r| r.gronwall_ratio)
            .fold(f64::NEG_INFINITY, f64::max)
    } else {
        0.0
    };
    let energy_equivalence_max = rows
        .iter()
        .map(|r| {
            if r.energy > 0.0 && r.modified_energy > 0.0 {
                (r.modified_energy / r.energy).max(r.energy / r.modified_energy)
            } else {
                1.0
            }
        })
        .fold(1.0_f64, f64::max);

    let cor35_lhs = omega_weight_integral;
    let cor35_rhs = sup(&|r| r.omega_hnorm * r.omega_t_hnorm).max(0.0);
    let cor46_lhs = v_l4tx4;
    let cor46_rhs = sup_m_sum + omega_weight_integral + omega_l4tx4;

    let report = TruncationReport {
        s: cfg.s,
        delta: cfg.delta,
        delta1: cfg.delta1,
        alpha: cfg.alpha,
        alpha_tilde: cfg.alpha_tilde,
        c: cfg.c,
        seed: cfg.seed,
        split: norms,
        modified_energy_initial: ecal0,
        modified_energy_sup: sup_ecal,
        omega_weight_integral,
        omega_l4tx4,
        v_l4tx4,
        sup_m_sum,
        gronwall_closure_constant,
        gronwall_max_ratio,
        energy_equivalence_max,
        equivalence_window_ok: energy_equivalence_max <= 2.0,
        cor35_lhs,
        cor35_rhs,
        cor35_ratio: if cor35_rhs > 0.0 { cor35_lhs / cor35_rhs } else { 0.0 },
        cor46_lhs,
        cor46_rhs,
        cor46_ratio: if cor46_rhs > 0.0 { cor46_lhs / cor46_rhs } else { 0.0 },
    };

    let ledger = GrowthLedger { rows };
    if !ledger.all_finite() {
        return Err(Error::invalid("ledger", "non-finite ledger entry"));
    }
    Ok((ledger, report))
}
