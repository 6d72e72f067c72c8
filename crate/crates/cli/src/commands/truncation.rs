//! `hypwave truncation`: the frequency-truncation experiment, optionally as an
//! s-sweep (one ledger + report per s, all indexed by the manifest).

use super::{parse_data_spec, DATA_KEYS};
use crate::config::Config;
use crate::manifest::RunManifest;
use crate::{CommonArgs, Failure};
use hypwave_core::solver::IntegratorConfig;
use hypwave_core::truncation::{run_experiment, GrowthLedger, TruncationConfig, TruncationReport};
use std::sync::Mutex;

const REQUIRED: &[&str] = &[
    "delta",
    "delta1",
    "s",
    "c1",
    "c2",
    "c3",
    "c4",
    "alpha",
    "alpha_tilde",
    "rmax",
    "n",
    "dt",
    "t_final",
    "seed",
    "data.kind",
];

pub fn run(args: &CommonArgs) -> Result<(), Failure> {
    let text = std::fs::read_to_string(&args.config).map_err(Failure::io)?;
    let cfg = Config::parse(&text).map_err(|e| Failure::config(e.0))?;
    cfg.check_schema(REQUIRED, DATA_KEYS)
        .map_err(|e| Failure::config(e.0))?;

    let f = |k: &str| cfg.f64(k).map_err(|e| Failure::config(e.0));
    let seed = args
        .seed
        .unwrap_or(cfg.u64("seed").map_err(|e| Failure::config(e.0))?);
    let sweep = cfg.f64_list("s").map_err(|e| Failure::config(e.0))?;
    let base = TruncationConfig {
        delta: f("delta")?,
        delta1: f("delta1")?,
        s: sweep[0],
        c: [f("c1")?, f("c2")?, f("c3")?, f("c4")?],
        alpha: f("alpha")?,
        alpha_tilde: f("alpha_tilde")?,
        rmax: f("rmax")?,
        n: cfg.usize("n").map_err(|e| Failure::config(e.0))?,
        seed,
        data: parse_data_spec(&cfg).map_err(|e| Failure::config(e.0))?,
        integrator: IntegratorConfig::new(f("dt")?, f("t_final")?, 10)
            .map_err(Failure::from_core)?,
    };
    base.validate().map_err(Failure::from_core)?;

    let out_dir = crate::output_root(&args.out);
    std::fs::create_dir_all(&out_dir).map_err(Failure::io)?;
    let mut manifest = RunManifest::begin("truncation", seed, cfg.entries().clone());

    let results = run_sweep(&base, &sweep, args.jobs.max(1))?;
    for (i, (ledger, report)) in results.iter().enumerate() {
        let (ledger_path, report_path) = if sweep.len() == 1 {
            (out_dir.join("ledger.csv"), out_dir.join("report.json"))
        } else {
            (
                out_dir.join(format!("ledger_{i}.csv")),
                out_dir.join(format!("report_{i}.json")),
            )
        };
        std::fs::write(&ledger_path, ledger.to_csv()).map_err(Failure::io)?;
        let json = serde_json::to_string_pretty(report).expect("report serializes");
        std::fs::write(&report_path, json).map_err(Failure::io)?;
        manifest.record_output(&ledger_path);
        manifest.record_output(&report_path);
        println!(
            "truncation s = {:.3e}: gronwall_max_ratio {:.4}, equivalence {:.4} -> {}",
            report.s,
            report.gronwall_max_ratio,
            report.energy_equivalence_max,
            ledger_path.display()
        );
    }
    manifest.finish_and_write(&out_dir).map_err(Failure::io)?;
    Ok(())
}

type SweepItem = (GrowthLedger, TruncationReport);

/// Run the sweep with at most `jobs` runs in flight; results come back in
/// sweep order regardless of scheduling.
fn run_sweep(base: &TruncationConfig, sweep: &[f64], jobs: usize) -> Result<Vec<SweepItem>, Failure> {
    let slots: Vec<Mutex<Option<Result<SweepItem, Failure>>>> =
        sweep.iter().map(|_| Mutex::new(None)).collect();
    let next = std::sync::atomic::AtomicUsize::new(0);
    std::thread::scope(|scope| {
        for _ in 0..jobs.min(sweep.len()) {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, std::sync::atomic::Ordering::SeqCst);
                if i >= sweep.len() {
                    break;
                }
                let mut cfg = base.clone();
                cfg.s = sweep[i];
                let outcome = run_experiment(&cfg).map_err(Failure::from_core);
                *slots[i].lock().unwrap() = Some(outcome);
            });
        }
    });
    slots
        .into_iter()
        .map(|slot| slot.into_inner().unwrap().expect("every slot filled"))
        .collect()
}
