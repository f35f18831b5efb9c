//! Flag parsing helpers and the optional JSON config file.

use std::path::Path;

use nilflow::hermitian::{BundleMetricCoeffs, MetricCoeffs};
use num_complex::Complex64;
use serde::Deserialize;

/// Parses `r2,s2,k2,u_re,u_im,v_re,v_im,z_re,z_im`.
pub fn parse_metric(s: &str) -> Result<MetricCoeffs, String> {
    let v = parse_floats(s, 9)?;
    MetricCoeffs::new(
        v[0],
        v[1],
        v[2],
        Complex64::new(v[3], v[4]),
        Complex64::new(v[5], v[6]),
        Complex64::new(v[7], v[8]),
    )
    .map_err(|e| e.to_string())
}

/// Parses `tr2,ts2,tk2`.
pub fn parse_bundle(s: &str) -> Result<BundleMetricCoeffs, String> {
    let v = parse_floats(s, 3)?;
    BundleMetricCoeffs::new(v[0], v[1], v[2]).map_err(|e| e.to_string())
}

fn parse_floats(s: &str, n: usize) -> Result<Vec<f64>, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != n {
        return Err(format!("expected {n} comma-separated values, got {}", parts.len()));
    }
    parts
        .iter()
        .map(|p| p.parse::<f64>().map_err(|e| format!("{p}: {e}")))
        .collect()
}

/// Optional JSON configuration mirroring the command-line flags.
#[derive(Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub rho: Option<u8>,
    pub lambda: Option<f64>,
    pub x: Option<f64>,
    pub y: Option<f64>,
    pub metric: Option<MetricCoeffs>,
    pub bundle: Option<BundleMetricCoeffs>,
    pub tau: Option<f64>,
    pub kappa: Option<f64>,
    pub alpha_prime: Option<f64>,
    pub dt: Option<f64>,
    pub t_max: Option<f64>,
    pub seed: Option<u64>,
    pub out: Option<String>,
    pub format: Option<String>,
}

impl FileConfig {
    pub fn load(path: Option<&Path>) -> Result<Self, String> {
        let Some(path) = path else {
            return Ok(FileConfig::default());
        };
        let body = std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
        serde_json::from_str(&body).map_err(|e| format!("{}: {e}", path.display()))
    }

    pub fn format_enum(&self) -> Option<crate::Format> {
        match self.format.as_deref() {
            Some("json") => Some(crate::Format::Json),
            Some("csv") => Some(crate::Format::Csv),
            _ => None,
        }
    }
}
