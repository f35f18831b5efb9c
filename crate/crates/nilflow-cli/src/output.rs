//! Trajectory export and human-readable summaries.
//!
//! CSV columns are `t,r2,s2,k2,u_re,u_im,tr2,ts2,tk2`; bundle columns stay
//! empty for flat-bundle runs. Floats carry 17 significant digits so a read
//! back followed by a re-export is byte-identical.

use std::io::Write;
use std::path::Path;

use nilflow::flow::{CollapseLimit, CollapseProfile, ConservedConstants, FlowState, QualitativeClass, SolutionKind, TimeDirection};
use nilflow::hermitian::{BundleMetricCoeffs, MetricCoeffs};
use nilflow::lie::JParams;
use num_complex::Complex64;

/// One float with 17 significant digits (round-trip safe).
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

pub const CSV_HEADER: &str = "t,r2,s2,k2,u_re,u_im,tr2,ts2,tk2";

/// Serializes a trajectory to CSV.
pub fn to_csv(states: &[FlowState]) -> String {
    let mut out = String::with_capacity(states.len() * 128);
    out.push_str(CSV_HEADER);
    out.push('\n');
    for s in states {
        let bundle = match &s.h {
            Some(h) => format!("{},{},{}", fmt_f64(h.tr2), fmt_f64(h.ts2), fmt_f64(h.tk2)),
            None => ",,".to_string(),
        };
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            fmt_f64(s.t),
            fmt_f64(s.omega.r2),
            fmt_f64(s.omega.s2),
            fmt_f64(s.omega.k2),
            fmt_f64(s.omega.u.re),
            fmt_f64(s.omega.u.im),
            bundle
        ));
    }
    out
}

/// Reads a trajectory back from CSV.
pub fn from_csv(body: &str) -> Result<Vec<FlowState>, String> {
    let mut lines = body.lines();
    let header = lines.next().ok_or("empty file")?;
    if header != CSV_HEADER {
        return Err(format!("unexpected header: {header}"));
    }
    let mut states = Vec::new();
    for (n, line) in lines.enumerate() {
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 9 {
            return Err(format!("line {}: expected 9 fields", n + 2));
        }
        let f = |i: usize| -> Result<f64, String> {
            fields[i].parse().map_err(|e| format!("line {}: {e}", n + 2))
        };
        let omega = MetricCoeffs::from_parts_unchecked(
            f(1)?,
            f(2)?,
            f(3)?,
            Complex64::new(f(4)?, f(5)?),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
        );
        let h = if fields[6].is_empty() {
            None
        } else {
            Some(
                BundleMetricCoeffs::new(f(6)?, f(7)?, f(8)?)
                    .map_err(|e| format!("line {}: {e}", n + 2))?,
            )
        };
        states.push(FlowState {
            t: f(0)?,
            omega,
            h,
        });
    }
    Ok(states)
}

pub fn write_csv(path: &Path, states: &[FlowState]) -> std::io::Result<()> {
    let mut file = std::fs::File::create(path)?;
    file.write_all(to_csv(states).as_bytes())
}

pub fn write_json(
    path: &Path,
    params: &JParams,
    constants: &ConservedConstants,
    class: &QualitativeClass,
    states: &[FlowState],
) -> std::io::Result<()> {
    let body = serde_json::json!({
        "params": params,
        "constants": constants,
        "classification": class,
        "samples": states,
    });
    std::fs::write(path, serde_json::to_string_pretty(&body).unwrap())
}

pub fn describe_class(class: &QualitativeClass) -> String {
    let kind = match class.kind {
        SolutionKind::Stationary => "Stationary",
        SolutionKind::Immortal => "Immortal",
        SolutionKind::Ancient => "Ancient",
        SolutionKind::Eternal => "Eternal",
    };
    let mut parts = vec![kind.to_string()];
    if let Some(s) = class.forward_slope {
        parts.push(format!("h ~ {s:.4}·t forward"));
    }
    if let Some(s) = class.backward_slope {
        parts.push(format!("h ~ {s:.4}·|t| backward"));
    }
    if let Some(h) = class.fixed_point {
        let dir = match class.fixed_point_direction {
            Some(TimeDirection::Forward) => " (reached forward)",
            Some(TimeDirection::Backward) => " (reached backward)",
            None => "",
        };
        parts.push(format!("h₀ = {h:.6}{dir}"));
    }
    if class.from_explicit_solution {
        parts.push("from the explicit solution".to_string());
    }
    parts.join(", ")
}

pub fn describe_collapse(profile: &CollapseProfile) -> String {
    match profile.limit {
        CollapseLimit::Torus4 => format!(
            "T⁴ base survives (base {:.4}, fiber {:.3e} under (1+t)⁻¹)",
            profile.base_scaled, profile.fiber_scaled
        ),
        CollapseLimit::Point => format!(
            "point (all scaled coefficients shrink; base {:.3e}, fiber {:.3e})",
            profile.base_scaled, profile.fiber_scaled
        ),
    }
}
