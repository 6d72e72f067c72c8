//! `hypwave strichartz`: classify an exponent triple and optionally probe its
//! half-wave constant over a horizon and its double.

use crate::manifest::RunManifest;
use crate::Failure;
use clap::Args;
use hypwave_core::grid::RadialGrid;
use hypwave_core::ineq::{
    admissibility_flags, strichartz_admissible, strichartz_probe, EnsembleSpec, Membership,
    ProbeSampling, StrichartzTriple,
};
use serde::Serialize;
use std::collections::BTreeMap;
use std::path::PathBuf;

#[derive(Debug, Args)]
pub struct StrichartzArgs {
    #[arg(long)]
    pub p: f64,
    #[arg(long)]
    pub q: f64,
    #[arg(long)]
    pub gamma: f64,
    /// Also probe the half-wave constant (requires admissibility).
    #[arg(long, default_value_t = false)]
    pub probe: bool,
    #[arg(long, default_value_t = 10.0)]
    pub horizon: f64,
    #[arg(long, default_value_t = 24.0)]
    pub rmax: f64,
    #[arg(long, default_value_t = 1024)]
    pub n: usize,
    #[arg(long, default_value_t = 12)]
    pub count: usize,
    #[arg(long, default_value_t = 0.1)]
    pub sample_dt: f64,
    #[arg(long, default_value_t = 11)]
    pub seed: u64,
    /// Output directory for probe.json (default: $HYPWAVE_OUT or ./out).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Serialize)]
struct ProbeReport {
    p: f64,
    q: f64,
    gamma: f64,
    membership: String,
    horizon: f64,
    constant: f64,
    constant_doubled_horizon: f64,
    stability_delta: f64,
}

pub fn run(args: &StrichartzArgs) -> Result<(), Failure> {
    let triple = StrichartzTriple::new(args.p, args.q, args.gamma);
    let membership = strichartz_admissible(&triple);
    let flags = admissibility_flags(&triple);
    println!(
        "strichartz ({}, {}, {}): {:?} (in_r = {}, in_e = {}, range_ok = {})",
        args.p, args.q, args.gamma, membership, flags.in_r, flags.in_e, flags.range_ok
    );
    if !args.probe {
        return Ok(());
    }
    if membership == Membership::Neither {
        return Err(Failure::config(
            "cannot probe: the triple is not admissible",
        ));
    }
    let grid = RadialGrid::new(args.rmax, args.n).map_err(Failure::from_core)?;
    let ensemble = EnsembleSpec::new(args.count, args.seed).map_err(Failure::from_core)?;
    let sampling = ProbeSampling { dt: args.sample_dt };
    let c1 = strichartz_probe(&triple, &ensemble, &grid, args.horizon, sampling)
        .map_err(Failure::from_core)?;
    let c2 = strichartz_probe(&triple, &ensemble, &grid, 2.0 * args.horizon, sampling)
        .map_err(Failure::from_core)?;
    let report = ProbeReport {
        p: args.p,
        q: args.q,
        gamma: args.gamma,
        membership: format!("{membership:?}"),
        horizon: args.horizon,
        constant: c1,
        constant_doubled_horizon: c2,
        stability_delta: (c2 - c1).abs() / c1.max(f64::MIN_POSITIVE),
    };
    println!(
        "probe: C({}) = {:.6e}, C({}) = {:.6e}",
        args.horizon,
        c1,
        2.0 * args.horizon,
        c2
    );

    let out_dir = crate::output_root(&args.out);
    std::fs::create_dir_all(&out_dir).map_err(Failure::io)?;
    let mut config = BTreeMap::new();
    for (k, v) in [
        ("p", args.p.to_string()),
        ("q", args.q.to_string()),
        ("gamma", args.gamma.to_string()),
        ("horizon", args.horizon.to_string()),
        ("rmax", args.rmax.to_string()),
        ("n", args.n.to_string()),
        ("count", args.count.to_string()),
        ("sample_dt", args.sample_dt.to_string()),
    ] {
        config.insert(k.to_string(), v);
    }
    let mut manifest = RunManifest::begin("strichartz", args.seed, config);
    let path = out_dir.join("probe.json");
    std::fs::write(&path, serde_json::to_string_pretty(&report).expect("serializes"))
        .map_err(Failure::io)?;
    manifest.record_output(&path);
    manifest.finish_and_write(&out_dir).map_err(Failure::io)?;
    Ok(())
}
