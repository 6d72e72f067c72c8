//! `hypwave inequalities`: the verification suite. Every check reports its
//! empirical max ratio and stability deltas; any failing check exits with
//! code 4.

use crate::config::Config;
use crate::manifest::RunManifest;
use crate::{CommonArgs, Failure};
use hypwave_core::grid::RadialGrid;
use hypwave_core::ineq::{
    interpolation_check, radial_sobolev_check, strichartz_admissible, strichartz_probe,
    CheckReport, EnsembleSpec, Membership, ProbeSampling, StrichartzTriple,
};
use serde::Serialize;

const REQUIRED: &[&str] = &["seed"];
const OPTIONAL: &[&str] = &[
    "count",
    "n",
    "rmax",
    "delta",
    "alpha",
    "sobolev_alpha",
    "horizon",
    "sample_dt",
    "stability_tol",
];

#[derive(Serialize)]
struct SuiteReport {
    checks: Vec<CheckReport>,
    pass: bool,
}

pub fn run(args: &CommonArgs) -> Result<(), Failure> {
    let text = std::fs::read_to_string(&args.config).map_err(Failure::io)?;
    let cfg = Config::parse(&text).map_err(|e| Failure::config(e.0))?;
    cfg.check_schema(REQUIRED, OPTIONAL)
        .map_err(|e| Failure::config(e.0))?;
    let c = |k: &str, d: f64| cfg.f64_or(k, d).map_err(|e| Failure::config(e.0));

    let seed = args
        .seed
        .unwrap_or(cfg.u64("seed").map_err(|e| Failure::config(e.0))?);
    let count = cfg.usize_or("count", 12).map_err(|e| Failure::config(e.0))?;
    let n = cfg.usize_or("n", 1 << 10).map_err(|e| Failure::config(e.0))?;
    let rmax = c("rmax", 24.0)?;
    let delta = c("delta", 0.25)?;
    let alpha = c("alpha", 0.9)?;
    let sobolev_alpha = c("sobolev_alpha", 0.6)?;
    let horizon = c("horizon", 10.0)?;
    let sample_dt = c("sample_dt", 0.1)?;
    let tol = c("stability_tol", 0.15)?;

    let ensemble = EnsembleSpec::new(count, seed).map_err(Failure::from_core)?;
    let grid = RadialGrid::new(rmax, n).map_err(Failure::from_core)?;
    let fine = RadialGrid::new(rmax, 2 * n).map_err(Failure::from_core)?;
    let mut checks: Vec<CheckReport> = Vec::new();

    // Admissibility table consistency.
    {
        let table = [
            (StrichartzTriple::new(4.0, 4.0, 0.5), Membership::InR),
            (StrichartzTriple::new(f64::INFINITY, 2.0, 0.0), Membership::InR),
            (StrichartzTriple::new(2.0, 4.0, 0.5), Membership::InE),
            (StrichartzTriple::new(2.0, 6.0, 2.0 / 3.0), Membership::InE),
            (StrichartzTriple::new(3.0, 3.0, 1.0 / 6.0), Membership::Neither),
            (StrichartzTriple::new(1.5, 4.0, 0.5), Membership::Neither),
        ];
        let bad = table
            .iter()
            .filter(|(t, want)| strichartz_admissible(t) != *want)
            .count();
        checks.push(CheckReport {
            name: "strichartz_admissibility_table".into(),
            parameters: format!("{} triples", table.len()),
            max_ratio: bad as f64,
            stability_deltas: vec![],
            pass: bad == 0,
        });
    }

    // Half-wave probes, horizon-doubling stability.
    let sampling = ProbeSampling { dt: sample_dt };
    for triple in [
        StrichartzTriple::new(f64::INFINITY, 2.0, 0.0),
        StrichartzTriple::new(4.0, 4.0, 0.5),
        StrichartzTriple::new(2.0, 6.0, 1.0 - 2.0 / 6.0),
    ] {
        let c1 = strichartz_probe(&triple, &ensemble, &grid, horizon, sampling)
            .map_err(Failure::from_core)?;
        let c2 = strichartz_probe(&triple, &ensemble, &grid, 2.0 * horizon, sampling)
            .map_err(Failure::from_core)?;
        let delta_h = (c2 - c1).abs() / c1.max(f64::MIN_POSITIVE);
        checks.push(CheckReport {
            name: "strichartz_probe".into(),
            parameters: format!("p={}, q={}, gamma={}", triple.p, triple.q, triple.gamma),
            max_ratio: c1.max(c2),
            stability_deltas: vec![delta_h],
            pass: c1.is_finite() && delta_h <= tol,
        });
    }

    // Time-sampling stability: halving the snapshot stride must not move the
    // mixed-norm constant.
    {
        let triple = StrichartzTriple::new(4.0, 4.0, 0.5);
        let c1 = strichartz_probe(&triple, &ensemble, &grid, horizon, sampling)
            .map_err(Failure::from_core)?;
        let halved = ProbeSampling { dt: 0.5 * sample_dt };
        let c2 = strichartz_probe(&triple, &ensemble, &grid, horizon, halved)
            .map_err(Failure::from_core)?;
        let delta_s = (c2 - c1).abs() / c1.max(f64::MIN_POSITIVE);
        checks.push(CheckReport {
            name: "strichartz_probe_stride_halving".into(),
            parameters: format!("p=4, q=4, dt {sample_dt} vs {}", 0.5 * sample_dt),
            max_ratio: c1.max(c2),
            stability_deltas: vec![delta_s],
            pass: delta_s <= tol,
        });
    }

    // Radial Sobolev embedding, refinement stability plus the pointwise form.
    {
        let coarse =
            radial_sobolev_check(sobolev_alpha, &ensemble, &grid).map_err(Failure::from_core)?;
        let refined =
            radial_sobolev_check(sobolev_alpha, &ensemble, &fine).map_err(Failure::from_core)?;
        let delta_n = (refined.max_embedding_ratio - coarse.max_embedding_ratio).abs()
            / coarse.max_embedding_ratio.max(f64::MIN_POSITIVE);
        checks.push(CheckReport {
            name: "radial_sobolev_embedding".into(),
            parameters: format!("alpha={sobolev_alpha}"),
            max_ratio: coarse.max_embedding_ratio.max(refined.max_embedding_ratio),
            stability_deltas: vec![delta_n],
            pass: delta_n <= tol && coarse.max_pointwise_constant <= 2.0,
        });
    }

    // Weighted interpolation / Hardy suite; re-judge against the configured tolerance.
    let sub_grid = RadialGrid::new(6.0, n.min(1 << 10)).map_err(Failure::from_core)?;
    for mut report in
        interpolation_check(&ensemble, &sub_grid, delta, alpha).map_err(Failure::from_core)?
    {
        report.pass = report.max_ratio.is_finite()
            && report.stability_deltas.iter().all(|d| *d <= tol);
        checks.push(report);
    }

    let pass = checks.iter().all(|c| c.pass);
    let suite = SuiteReport { checks, pass };

    let out_dir = crate::output_root(&args.out);
    std::fs::create_dir_all(&out_dir).map_err(Failure::io)?;
    let mut manifest = RunManifest::begin("inequalities", seed, cfg.entries().clone());
    let report_path = out_dir.join("report.json");
    let json = serde_json::to_string_pretty(&suite).expect("suite serializes");
    std::fs::write(&report_path, json).map_err(Failure::io)?;
    manifest.record_output(&report_path);
    manifest.finish_and_write(&out_dir).map_err(Failure::io)?;

    for check in &suite.checks {
        println!(
            "inequalities: {} [{}] max_ratio {:.4e} deltas {:?} -> {}",
            check.name,
            check.parameters,
            check.max_ratio,
            check.stability_deltas,
            if check.pass { "pass" } else { "FAIL" }
        );
    }
    if suite.pass {
        println!("inequalities: all checks pass -> {}", report_path.display());
        Ok(())
    } else {
        Err(Failure::suite("one or more inequality checks failed"))
    }
}
