//! `hypwave solve`: integrate the cubic equation and emit a time series.

use super::{parse_data_spec, DATA_KEYS};
use crate::config::Config;
use crate::manifest::RunManifest;
use crate::{CommonArgs, Failure};
use hypwave_core::grid::{LpExponent, RadialGrid, Region, WaveState, WeightedRegionNorm};
use hypwave_core::solver::{energy, evolve, IntegratorConfig, SeriesRow, TimeSeries};
use hypwave_core::truncation::{build_data, potentials, WeightSet};
use hypwave_core::weighted_norm;

const REQUIRED: &[&str] = &["rmax", "n", "dt", "t_final", "seed", "data.kind"];
const OPTIONAL_BASE: &[&str] = &[
    "observer_stride",
    "alpha",
    "alpha_tilde",
    "c1",
    "c2",
    "c3",
    "c4",
];

pub fn run(args: &CommonArgs) -> Result<(), Failure> {
    let text = std::fs::read_to_string(&args.config).map_err(Failure::io)?;
    let cfg = Config::parse(&text).map_err(|e| Failure::config(e.0))?;
    let optional: Vec<&str> = OPTIONAL_BASE
        .iter()
        .chain(DATA_KEYS.iter())
        .copied()
        .collect();
    cfg.check_schema(REQUIRED, &optional)
        .map_err(|e| Failure::config(e.0))?;

    let rmax = cfg.f64("rmax").map_err(|e| Failure::config(e.0))?;
    let n = cfg.usize("n").map_err(|e| Failure::config(e.0))?;
    let dt = cfg.f64("dt").map_err(|e| Failure::config(e.0))?;
    let t_final = cfg.f64("t_final").map_err(|e| Failure::config(e.0))?;
    let seed = args
        .seed
        .unwrap_or(cfg.u64("seed").map_err(|e| Failure::config(e.0))?);
    let stride = cfg
        .usize_or("observer_stride", 10)
        .map_err(|e| Failure::config(e.0))?;
    let alpha = cfg.f64_or("alpha", 0.9).map_err(|e| Failure::config(e.0))?;
    let alpha_tilde = cfg
        .f64_or("alpha_tilde", 0.5)
        .map_err(|e| Failure::config(e.0))?;
    let c = [
        cfg.f64_or("c1", 1e-2).map_err(|e| Failure::config(e.0))?,
        cfg.f64_or("c2", 1e-3).map_err(|e| Failure::config(e.0))?,
        cfg.f64_or("c3", 1e-3).map_err(|e| Failure::config(e.0))?,
        cfg.f64_or("c4", 1e-4).map_err(|e| Failure::config(e.0))?,
    ];
    let data = parse_data_spec(&cfg).map_err(|e| Failure::config(e.0))?;

    let grid = RadialGrid::new(rmax, n).map_err(Failure::from_core)?;
    let integ = IntegratorConfig::new(dt, t_final, stride).map_err(Failure::from_core)?;
    let weights = WeightSet::build(grid.clone(), alpha, alpha_tilde).map_err(Failure::from_core)?;
    let shim = hypwave_core::truncation::TruncationConfig {
        delta: 0.25,
        delta1: 0.1,
        s: 1.0,
        c,
        alpha,
        alpha_tilde,
        rmax,
        n,
        seed,
        data,
        integrator: integ.clone(),
    };
    let (u0, u1) = build_data(&shim, &grid).map_err(Failure::from_core)?;
    let st = WaveState::new(u0, u1, 0.0).map_err(Failure::from_core)?;

    let l4 = WeightedRegionNorm::plain(Region::All, LpExponent::Finite(4.0));
    let mut series = TimeSeries::default();
    let mut cum = 0.0;
    let mut prev: Option<(f64, f64)> = None;
    let observe = |series: &mut TimeSeries, cum: &mut f64, prev: &mut Option<(f64, f64)>, s: &WaveState| {
        let p = potentials(s, &weights).expect("weights share the grid");
        let e = energy(s);
        let l4x4 = weighted_norm(&s.u, &l4).expect("region nonempty").powi(4);
        if let Some((t0, v0)) = *prev {
            *cum += 0.5 * (s.t - t0) * (v0 + l4x4);
        }
        *prev = Some((s.t, l4x4));
        series.rows.push(SeriesRow {
            t: s.t,
            energy: e,
            m1: p.m1,
            m2: p.m2,
            m3: p.m3,
            m_tilde: p.m_tilde,
            modified_energy: e - c[0] * p.m1 - c[1] * p.m2 - c[2] * p.m3 - c[3] * p.m_tilde,
            l4x4,
            l4tx4_cum: *cum,
        });
    };
    evolve(&st, &integ, |s| observe(&mut series, &mut cum, &mut prev, s))
        .map_err(Failure::from_core)?;

    let out_dir = crate::output_root(&args.out);
    std::fs::create_dir_all(&out_dir).map_err(Failure::io)?;
    let mut manifest = RunManifest::begin("solve", seed, cfg.entries().clone());
    let series_path = out_dir.join("series.csv");
    std::fs::write(&series_path, series.to_csv()).map_err(Failure::io)?;
    manifest.record_output(&series_path);
    let json_path = out_dir.join("series.json");
    let json = serde_json::to_string_pretty(&series).expect("series serializes");
    std::fs::write(&json_path, json).map_err(Failure::io)?;
    manifest.record_output(&json_path);
    manifest.finish_and_write(&out_dir).map_err(Failure::io)?;
    println!("solve: wrote {}", series_path.display());
    Ok(())
}
