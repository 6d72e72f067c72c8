//! `hypwave weights`: tabulate a weight family as CSV with the condition
//! validation report appended as comment lines (plus a JSON copy).

use crate::manifest::RunManifest;
use crate::Failure;
use clap::Args;
use hypwave_core::grid::RadialGrid;
use hypwave_core::morawetz::{build_weight, validate_conditions, WeightFamily};
use std::collections::BTreeMap;
use std::path::PathBuf;

#[derive(Debug, Args)]
pub struct WeightsArgs {
    /// Weight family: a1, a2, a3 or a4.
    #[arg(long)]
    pub family: String,
    /// Exponent for the a3 family, in (0, 1).
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Exponent for the a4 family, in (0, 1).
    #[arg(long)]
    pub alpha_tilde: Option<f64>,
    #[arg(long, default_value_t = 10.0)]
    pub rmax: f64,
    #[arg(long, default_value_t = 4096)]
    pub n: usize,
    /// Output directory (default: $HYPWAVE_OUT or ./out).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub fn run(args: &WeightsArgs) -> Result<(), Failure> {
    let family = match args.family.as_str() {
        "a1" => WeightFamily::A1,
        "a2" => WeightFamily::A2,
        "a3" => WeightFamily::A3 {
            alpha: args
                .alpha
                .ok_or_else(|| Failure::config("family a3 needs --alpha"))?,
        },
        "a4" => WeightFamily::A4 {
            alpha_tilde: args
                .alpha_tilde
                .ok_or_else(|| Failure::config("family a4 needs --alpha-tilde"))?,
        },
        other => return Err(Failure::config(format!("unknown family `{other}`"))),
    };
    let grid = RadialGrid::new(args.rmax, args.n).map_err(Failure::from_core)?;
    let weight = build_weight(family, grid).map_err(Failure::from_core)?;
    let report = validate_conditions(&weight);

    let mut csv = weight.to_csv();
    csv.push_str(&format!("# family: {}\n", report.family));
    csv.push_str(&format!("# sup |a'|: {:.6e}\n", report.sup_grad));
    for check in &report.checks {
        if check.passed {
            csv.push_str(&format!(
                "# {}: pass (worst margin {:.3e} at r = {:.4})\n",
                check.name, check.worst_margin, check.worst_r
            ));
        } else {
            let first = check.failing_nodes.first().copied().unwrap_or(0);
            let last = check.failing_nodes.last().copied().unwrap_or(0);
            csv.push_str(&format!(
                "# {}: FAIL on {} nodes (indices {}..{}, worst margin {:.3e} at r = {:.4})\n",
                check.name,
                check.failing_nodes.len(),
                first,
                last,
                check.worst_margin,
                check.worst_r
            ));
        }
    }

    let out_dir = crate::output_root(&args.out);
    std::fs::create_dir_all(&out_dir).map_err(Failure::io)?;
    let mut config = BTreeMap::new();
    config.insert("family".to_string(), args.family.clone());
    if let Some(a) = args.alpha {
        config.insert("alpha".to_string(), a.to_string());
    }
    if let Some(a) = args.alpha_tilde {
        config.insert("alpha_tilde".to_string(), a.to_string());
    }
    config.insert("rmax".to_string(), args.rmax.to_string());
    config.insert("n".to_string(), args.n.to_string());

    let mut manifest = RunManifest::begin("weights", 0, config);
    let csv_path = out_dir.join("weights.csv");
    std::fs::write(&csv_path, csv).map_err(Failure::io)?;
    manifest.record_output(&csv_path);
    let json_path = out_dir.join("validation.json");
    let json = serde_json::to_string_pretty(&report).expect("report serializes");
    std::fs::write(&json_path, json).map_err(Failure::io)?;
    manifest.record_output(&json_path);
    manifest.finish_and_write(&out_dir).map_err(Failure::io)?;
    println!(
        "weights {}: all conditions pass = {} -> {}",
        report.family,
        report.all_passed(),
        csv_path.display()
    );
    Ok(())
}
