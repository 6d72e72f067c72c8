pub mod inequalities;
pub mod solve;
pub mod strichartz;
pub mod truncation;
pub mod weights;

use crate::config::{Config, ConfigResult};
use hypwave_core::truncation::DataSpec;

/// Keys of the `data.*` block, shared by solve and truncation configs.
pub const DATA_KEYS: &[&str] = &[
    "data.kind",
    "data.amplitude",
    "data.width",
    "data.center",
    "data.norm0",
    "data.norm1",
    "data.kmax",
    "data.support",
];

/// Build a DataSpec from the `data.*` keys.
pub fn parse_data_spec(cfg: &Config) -> ConfigResult<DataSpec> {
    let kind = cfg.raw("data.kind").unwrap_or("zero");
    match kind {
        "zero" => Ok(DataSpec::Zero),
        "bump" => Ok(DataSpec::Bump {
            amplitude: cfg.f64("data.amplitude")?,
            width: cfg.f64("data.width")?,
            center: cfg.f64_or("data.center", 0.0)?,
        }),
        "rough" => Ok(DataSpec::Rough {
            norm0: cfg.f64("data.norm0")?,
            norm1: cfg.f64("data.norm1")?,
            kmax: cfg.usize("data.kmax")?,
            support: cfg.f64("data.support")?,
        }),
        other => Err(crate::config::ConfigError(format!(
            "key `data.kind`: expected zero|bump|rough, got `{other}`"
        ))),
    }
}
