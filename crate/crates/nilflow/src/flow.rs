//! The Anomaly flow on the invariant family.
//!
//! For a flat holomorphic bundle the flow collapses to a scalar model problem
//! `h' = K₁ + K₂/h²` for `h = r(t)²`; five conserved quantities reconstruct
//! the full coefficient trajectory from `h`. With the holomorphic tangent
//! bundle and diagonal initial metrics, the bundle metric evolves through an
//! explicit 3-dimensional system coupled to the same scalar equation.
//!
//! The classification of the model problem, the sign law for `K₁`, the
//! stationary connection parameters, the Hull–Strominger–Ivanov residual
//! record and the Gromov–Hausdorff collapse diagnostic are all here.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::GeometryError;
use crate::gauduchon::{
    self, adapted_omega, connection_one_forms_tau, curvature, tables, trace_wedge,
    trace_zeta_coefficient,
};
use crate::hermitian::{
    self, psi_norm, reduce_almost_diagonal, AdaptedCoeffs, BundleMetricCoeffs, MetricCoeffs,
};
use crate::lie::{self, real_structure_constants, GroupId, JParams};
use crate::Result;

const I: Complex64 = Complex64::new(0.0, 1.0);

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// Floor below which the scalar solution counts as blown down.
pub const H_FLOOR: f64 = 1e-8;

/// Derivative magnitude treated as a blow-up of the right-hand side.
pub const DERIVATIVE_CEIL: f64 = 1e8;

/// The five conserved quantities of the flow, fixed by the initial metric.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct ConservedConstants {
    pub c1: f64,
    pub c2: f64,
    pub c3: Complex64,
    pub c4: Complex64,
    pub c5: Complex64,
}

/// Evaluates the five conserved combinations on a metric.
pub fn conserved_constants(omega0: &MetricCoeffs) -> Result<ConservedConstants> {
    let n = psi_norm(omega0)?;
    let m = omega0;
    let c1 = n * (m.r2 * m.k2 - m.z.norm_sqr());
    let c2 = n * (m.s2 * m.k2 - m.v.norm_sqr());
    let c3 = re(n) * (re(m.r2) * m.v - I * m.z * m.u.conj());
    let c4 = re(n) * (re(m.s2) * m.z + I * m.u * m.v);
    let c5 = re(n) * (re(m.k2) * m.u - I * m.z * m.v.conj());
    if !(c1 > 0.0 && c2 > 0.0 && c1 * c2 > c5.norm_sqr()) {
        return Err(GeometryError::NotPositiveDefinite(format!(
            "conserved constants violate positivity: c1={c1} c2={c2} |c5|²={}",
            c5.norm_sqr()
        )));
    }
    Ok(ConservedConstants { c1, c2, c3, c4, c5 })
}

/// Largest relative drift of the five conserved quantities on a later metric.
pub fn conserved_drift(c0: &ConservedConstants, omega_t: &MetricCoeffs) -> Result<f64> {
    let ct = conserved_constants(omega_t)?;
    let scale = c0.c1.abs().max(c0.c2.abs()).max(1e-300);
    let drifts = [
        (ct.c1 - c0.c1).abs(),
        (ct.c2 - c0.c2).abs(),
        (ct.c3 - c0.c3).norm(),
        (ct.c4 - c0.c4).norm(),
        (ct.c5 - c0.c5).norm(),
    ];
    Ok(drifts.into_iter().fold(0.0, f64::max) / scale)
}

/// The almost-diagonal metric determined by the constants and `r²`.
///
/// `s² = (c₂/c₁) r²`, `u = (c₅/c₁) r²`, `k² = (c₁c₂ − |c₅|²)/8`, `v = z = 0`.
pub fn almost_diagonal_solution(c: &ConservedConstants, r2: f64) -> Result<MetricCoeffs> {
    if !(r2 > 0.0) {
        return Err(GeometryError::InvalidArgument(format!(
            "r² must be positive, got {r2}"
        )));
    }
    MetricCoeffs::new(
        r2,
        c.c2 / c.c1 * r2,
        (c.c1 * c.c2 - c.c5.norm_sqr()) / 8.0,
        c.c5 / re(c.c1) * re(r2),
        re(0.0),
        re(0.0),
    )
}

/// Constants of the scalar model problem.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct ModelConstants {
    pub k1: f64,
    pub k2: f64,
    /// Coefficient of `ζ^{12 1̄ 2̄}` in `i∂∂̄ω_t` (time independent).
    pub b: f64,
    /// `Tr(Ω^τ∧Ω^τ) = (c/r⁴) ζ^{12 1̄ 2̄}` along the flow.
    pub c_trace: f64,
    pub alpha_prime: f64,
    pub tau: f64,
}

/// Adapted coefficients of the almost-diagonal solution at a given `r²`.
fn almost_diagonal_adapted(c: &ConservedConstants, r2: f64) -> Result<AdaptedCoeffs> {
    AdaptedCoeffs::new(
        r2,
        c.c2 / c.c1 * r2,
        (c.c1 * c.c2 - c.c5.norm_sqr()) / 8.0,
        c.c5 / re(c.c1) * re(r2),
    )
}

/// Model constants from already-computed conserved quantities.
pub fn model_constants_from_conserved(
    params: &JParams,
    c: &ConservedConstants,
    alpha_prime: f64,
    tau: f64,
) -> Result<ModelConstants> {
    let b = (c.c1 * c.c2 - c.c5.norm_sqr()) / 16.0
        * (params.rho_f() + params.lambda * params.lambda - 2.0 * params.x);
    // trace coefficient scales as 1/r⁴; evaluate at r² = 1
    let c_trace = tables::closed_form_trace_tau(params, &almost_diagonal_adapted(c, 1.0)?, tau);
    Ok(ModelConstants {
        k1: c.c1 * b / 4.0,
        k2: -alpha_prime * c.c1 * c_trace / 16.0,
        b,
        c_trace,
        alpha_prime,
        tau,
    })
}

/// Model constants of the flow starting at `ω₀` (reduced to almost diagonal).
pub fn model_constants(
    params: &JParams,
    omega0: &MetricCoeffs,
    alpha_prime: f64,
    tau: f64,
) -> Result<ModelConstants> {
    let (_, reduced) = reduce_almost_diagonal(params, omega0)?;
    let c = conserved_constants(&reduced)?;
    model_constants_from_conserved(params, &c, alpha_prime, tau)
}

/// Fu–Wang–Wu conformal invariant `γ₁(ω₀) = k⁴(ρ + λ² − 2x)/D`.
pub fn gamma1(params: &JParams, omega0: &MetricCoeffs) -> Result<f64> {
    let d = hermitian::det_quantity(omega0)?;
    Ok(omega0.k2 * omega0.k2 * (params.rho_f() + params.lambda * params.lambda - 2.0 * params.x)
        / d)
}

/// Lifespan class of a model-problem solution.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SolutionKind {
    Stationary,
    Immortal,
    Ancient,
    Eternal,
}

/// Direction in which a fixed point is approached.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TimeDirection {
    Forward,
    Backward,
}

/// Qualitative classification of a model-problem solution.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct QualitativeClass {
    pub kind: SolutionKind,
    /// `h ~ slope · t` as `t → +∞`.
    pub forward_slope: Option<f64>,
    /// `h ~ slope · t` as `t → −∞`.
    pub backward_slope: Option<f64>,
    /// Stationary value `h₀ = √(−K₂/K₁)` when defined or sat upon.
    pub fixed_point: Option<f64>,
    /// Direction in which the fixed point is detected.
    pub fixed_point_direction: Option<TimeDirection>,
    /// Degenerate sign case labeled from the explicit solution rather than
    /// the qualitative sign analysis.
    pub from_explicit_solution: bool,
}

impl QualitativeClass {
    fn new(kind: SolutionKind) -> Self {
        QualitativeClass {
            kind,
            forward_slope: None,
            backward_slope: None,
            fixed_point: None,
            fixed_point_direction: None,
            from_explicit_solution: false,
        }
    }
}

/// Sign-case table of the model problem `h' = K₁ + K₂/h²`, `h > 0`.
pub fn classify_model(k1: f64, k2: f64, h0_init: f64) -> Result<QualitativeClass> {
    if !(h0_init > 0.0) {
        return Err(GeometryError::InvalidArgument(format!(
            "initial value must be positive, got {h0_init}"
        )));
    }
    let mut out;
    if k1 == 0.0 && k2 == 0.0 {
        out = QualitativeClass::new(SolutionKind::Stationary);
        out.fixed_point = Some(h0_init);
        return Ok(out);
    }
    if k2 == 0.0 {
        // linear: h = h₀ + K₁ t, cut where h reaches zero
        out = QualitativeClass::new(if k1 > 0.0 {
            SolutionKind::Immortal
        } else {
            SolutionKind::Ancient
        });
        if k1 > 0.0 {
            out.forward_slope = Some(k1);
        } else {
            out.backward_slope = Some(-k1);
        }
        out.from_explicit_solution = true;
        return Ok(out);
    }
    if k1 == 0.0 {
        // h³ = h₀³ + 3K₂ t
        out = QualitativeClass::new(if k2 > 0.0 {
            SolutionKind::Immortal
        } else {
            SolutionKind::Ancient
        });
        out.from_explicit_solution = true;
        return Ok(out);
    }
    if k1 > 0.0 && k2 > 0.0 {
        out = QualitativeClass::new(SolutionKind::Immortal);
        out.forward_slope = Some(k1);
        return Ok(out);
    }
    if k1 < 0.0 && k2 < 0.0 {
        out = QualitativeClass::new(SolutionKind::Ancient);
        out.backward_slope = Some(-k1);
        return Ok(out);
    }
    // opposite signs: unique stationary point h₀ = √(−K₂/K₁)
    let h_star = (-k2 / k1).sqrt();
    let stationary = (h0_init - h_star).abs() < 1e-12 * h_star.max(1.0);
    if stationary {
        out = QualitativeClass::new(SolutionKind::Stationary);
        out.fixed_point = Some(h_star);
        return Ok(out);
    }
    if k1 > 0.0 {
        // K₂ < 0: above h₀ eternal with forward slope, below h₀ ancient
        if h0_init > h_star {
            out = QualitativeClass::new(SolutionKind::Eternal);
            out.forward_slope = Some(k1);
        } else {
            out = QualitativeClass::new(SolutionKind::Ancient);
        }
        out.fixed_point = Some(h_star);
        out.fixed_point_direction = Some(TimeDirection::Backward);
    } else {
        // K₁ < 0, K₂ > 0: above h₀ eternal, below h₀ immortal toward h₀
        if h0_init > h_star {
            out = QualitativeClass::new(SolutionKind::Eternal);
            out.backward_slope = Some(-k1);
        } else {
            out = QualitativeClass::new(SolutionKind::Immortal);
        }
        out.fixed_point = Some(h_star);
        out.fixed_point_direction = Some(TimeDirection::Forward);
    }
    Ok(out)
}

/// A sampled scalar trajectory with a blow-down flag.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ModelTrajectory {
    /// `(t, h)` samples, one per accepted macro step (plus the start).
    pub samples: Vec<(f64, f64)>,
    /// The solution reached the floor (or the derivative ceiling) before `t_max`.
    pub blown_down: bool,
    /// Last valid time; a `T⁺` estimate when `blown_down` is set.
    pub last_time: f64,
}

fn model_rhs(k1: f64, k2: f64, h: f64) -> f64 {
    k1 + k2 / (h * h)
}

/// Integrates the model problem with fixed-step RK4.
///
/// Degenerate sign cases use the explicit solutions; positivity failures are
/// handled by step halving (at most 40 times) and reported as blow-down with
/// the last valid time.
pub fn integrate_model(k1: f64, k2: f64, h0: f64, dt: f64, t_max: f64) -> Result<ModelTrajectory> {
    if !(h0 > 0.0) {
        return Err(GeometryError::InvalidArgument(format!(
            "h0 must be positive, got {h0}"
        )));
    }
    if !(dt > 0.0 && t_max > 0.0) {
        return Err(GeometryError::InvalidArgument(format!(
            "step and horizon must be positive, got dt={dt}, t_max={t_max}"
        )));
    }
    let steps = (t_max / dt).ceil() as usize;

    if k1 == 0.0 || k2 == 0.0 {
        // explicit solutions: h = h₀ + K₁t or h³ = h₀³ + 3K₂t
        let h_at = |t: f64| -> f64 {
            if k2 == 0.0 {
                h0 + k1 * t
            } else {
                (h0.powi(3) + 3.0 * k2 * t).max(0.0).cbrt()
            }
        };
        let mut samples = vec![(0.0, h0)];
        let mut blown_down = false;
        let mut last_time = 0.0;
        for n in 1..=steps {
            let t = (n as f64 * dt).min(t_max);
            let h = h_at(t);
            if h <= H_FLOOR {
                // bisect the crossing time for the T⁺ estimate
                let t_cross = if k2 == 0.0 {
                    (H_FLOOR - h0) / k1
                } else {
                    (H_FLOOR.powi(3) - h0.powi(3)) / (3.0 * k2)
                };
                samples.push((t_cross, H_FLOOR));
                blown_down = true;
                last_time = t_cross;
                break;
            }
            samples.push((t, h));
            last_time = t;
        }
        return Ok(ModelTrajectory {
            samples,
            blown_down,
            last_time,
        });
    }

    let mut samples = Vec::with_capacity(steps + 1);
    samples.push((0.0, h0));
    let mut t = 0.0;
    let mut h = h0;
    let mut blown_down = false;
    'outer: for n in 1..=steps {
        let t_target = (n as f64 * dt).min(t_max);
        // positivity-guarded advance: halve the local step on rejection,
        // regrow after acceptance, abort after 40 halvings
        let mut dt_local = t_target - t;
        let mut halvings = 0u32;
        while t < t_target - 1e-15 * t_max {
            match rk4_scalar(k1, k2, h, dt_local) {
                Some(next) => {
                    h = next;
                    t += dt_local;
                    dt_local = (t_target - t).min(dt_local * 2.0);
                }
                None => {
                    dt_local /= 2.0;
                    halvings += 1;
                    if halvings > 40 {
                        blown_down = true;
                        break 'outer;
                    }
                }
            }
        }
        if h <= H_FLOOR || model_rhs(k1, k2, h).abs() > DERIVATIVE_CEIL {
            blown_down = true;
            samples.push((t, h.max(0.0)));
            break;
        }
        samples.push((t, h));
    }
    let last_time = samples.last().map(|s| s.0).unwrap_or(0.0);
    Ok(ModelTrajectory {
        samples,
        blown_down,
        last_time,
    })
}

/// One RK4 step; `None` when an intermediate value leaves the feasible cone.
fn rk4_scalar(k1: f64, k2: f64, h: f64, dt: f64) -> Option<f64> {
    let f = |hv: f64| -> Option<f64> {
        if hv <= H_FLOOR || !hv.is_finite() {
            None
        } else {
            Some(model_rhs(k1, k2, hv))
        }
    };
    let k1v = f(h)?;
    let k2v = f(h + 0.5 * dt * k1v)?;
    let k3v = f(h + 0.5 * dt * k2v)?;
    let k4v = f(h + dt * k3v)?;
    let next = h + dt / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
    if next <= H_FLOOR || !next.is_finite() {
        None
    } else {
        Some(next)
    }
}

/// One time-stamped state of the coupled flow.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct FlowState {
    pub t: f64,
    pub omega: MetricCoeffs,
    /// Absent for the flat-bundle flow.
    pub h: Option<BundleMetricCoeffs>,
}

/// Flat-bundle trajectory reconstructed through the almost-diagonal solution.
pub fn integrate_flat_bundle(
    params: &JParams,
    omega0: &MetricCoeffs,
    alpha_prime: f64,
    tau: f64,
    dt: f64,
    t_max: f64,
) -> Result<(ModelConstants, Vec<FlowState>, bool)> {
    let (_, reduced) = reduce_almost_diagonal(params, omega0)?;
    let c = conserved_constants(&reduced)?;
    let mc = model_constants_from_conserved(params, &c, alpha_prime, tau)?;
    let traj = integrate_model(mc.k1, mc.k2, reduced.r2, dt, t_max)?;
    let mut states = Vec::with_capacity(traj.samples.len());
    for &(t, h) in &traj.samples {
        if h <= 0.0 {
            break;
        }
        states.push(FlowState {
            t,
            omega: almost_diagonal_solution(&c, h)?,
            h: None,
        });
    }
    Ok((mc, states, traj.blown_down))
}

/// Right-hand side `d/dt (r², r̃², s̃², k̃²)` of the coupled flow.
///
/// Requires λ = 0 and diagonal metrics; the base coefficients follow the
/// conserved-quantity substitution `s² = (c₂/c₁) r²`, `k² = c₁c₂/8`.
pub fn coupled_rhs(
    params: &JParams,
    state: &FlowState,
    c: &ConservedConstants,
    kappa: f64,
    tau: f64,
    alpha_prime: f64,
) -> Result<[f64; 4]> {
    let h = state.h.as_ref().ok_or_else(|| {
        GeometryError::InvalidArgument("coupled flow needs a bundle metric".into())
    })?;
    gauduchon::check_bundle_gate(params, &state.omega)?;
    let mc = model_constants_from_conserved(params, c, alpha_prime, tau)?;
    let r2 = state.omega.r2;
    let bundle_trace = tables::closed_form_trace_kappa(params, &state.omega, h, kappa)?;
    let dr2 = mc.k1 + mc.k2 / (r2 * r2) + alpha_prime * c.c1 / 16.0 * bundle_trace;

    let (rho, x, y) = (params.rho_f(), params.x, params.y);
    let xy = x * x + y * y;
    let (c1, c2) = (c.c1, c.c2);
    let k1c = kappa - 1.0;
    let k2c = kappa + 1.0;
    let (tr2, ts2, tk2) = (h.tr2, h.ts2, h.tk2);
    let r4 = r2 * r2;

    let dtr2 = 1.0 / (3.0 * c1 * c2 * c2)
        * (2.0 * (c2 * k2c * k2c - c1 * rho * k1c * k1c) * r2 * tk2
            - c1 * c2 * k1c * (c1 * x + c2) * tr2)
        * tk2
        / (r4 * tr2);
    let dts2 = 1.0 / (3.0 * c1 * c1 * c2)
        * (2.0 * (c1 * k2c * k2c * xy - c2 * rho * k1c * k1c) * r2 * tk2
            - c1 * c1 * k1c * (c1 * xy + c2 * x) * ts2)
        * tk2
        / (r4 * ts2);
    let dtk2 = 2.0 / (3.0 * c1 * c1 * c2 * c2)
        * (rho * k1c * k1c * (c1 * c1 * ts2 * ts2 + c2 * c2 * tr2 * tr2)
            - c1 * c2 * k2c * k2c * (xy * tr2 * tr2 + ts2 * ts2))
        * tk2.powi(3)
        / (r2 * tr2 * tr2 * ts2 * ts2);
    Ok([dr2, dtr2, dts2, dtk2])
}

/// A coupled trajectory with a blow-down flag.
#[derive(Clone, Debug)]
pub struct CoupledTrajectory {
    pub states: Vec<FlowState>,
    pub blown_down: bool,
    pub constants: ConservedConstants,
}

/// Integrates the coupled flow with guarded fixed-step RK4.
pub fn integrate_coupled(
    params: &JParams,
    omega0: &MetricCoeffs,
    h0: &BundleMetricCoeffs,
    tau: f64,
    kappa: f64,
    alpha_prime: f64,
    dt: f64,
    t_max: f64,
) -> Result<CoupledTrajectory> {
    if !(dt > 0.0 && t_max > 0.0) {
        return Err(GeometryError::InvalidArgument(format!(
            "step and horizon must be positive, got dt={dt}, t_max={t_max}"
        )));
    }
    if !omega0.is_diagonal() {
        return Err(GeometryError::UnsupportedParameters(
            "coupled flow requires a diagonal initial metric".into(),
        ));
    }
    let c = conserved_constants(omega0)?;
    let state_of = |t: f64, y: &[f64; 4]| -> Result<FlowState> {
        Ok(FlowState {
            t,
            omega: almost_diagonal_solution(&c, y[0])?,
            h: Some(BundleMetricCoeffs::new(y[1], y[2], y[3])?),
        })
    };
    let rhs = |t: f64, y: &[f64; 4]| -> Result<[f64; 4]> {
        let st = state_of(t, y)?;
        coupled_rhs(params, &st, &c, kappa, tau, alpha_prime)
    };

    let mut y = [omega0.r2, h0.tr2, h0.ts2, h0.tk2];
    let mut t = 0.0;
    let steps = (t_max / dt).ceil() as usize;
    let mut states = vec![state_of(0.0, &y)?];
    let mut blown_down = false;
    'outer: for n in 1..=steps {
        let t_target = (n as f64 * dt).min(t_max);
        let mut dt_local = t_target - t;
        let mut halvings = 0u32;
        while t < t_target - 1e-15 * t_max {
            match rk4_vec(&rhs, t, &y, dt_local) {
                Some(next) => {
                    y = next;
                    t += dt_local;
                    dt_local = (t_target - t).min(dt_local * 2.0);
                }
                None => {
                    dt_local /= 2.0;
                    halvings += 1;
                    if halvings > 40 {
                        blown_down = true;
                        break 'outer;
                    }
                }
            }
        }
        states.push(state_of(t, &y)?);
    }
    Ok(CoupledTrajectory {
        states,
        blown_down,
        constants: c,
    })
}

fn rk4_vec<F>(rhs: &F, t: f64, y: &[f64; 4], dt: f64) -> Option<[f64; 4]>
where
    F: Fn(f64, &[f64; 4]) -> Result<[f64; 4]>,
{
    let feasible = |v: &[f64; 4]| v.iter().all(|x| *x > H_FLOOR && x.is_finite());
    let eval = |tv: f64, v: &[f64; 4]| -> Option<[f64; 4]> {
        if !feasible(v) {
            return None;
        }
        rhs(tv, v).ok()
    };
    let add = |a: &[f64; 4], b: &[f64; 4], s: f64| -> [f64; 4] {
        [
            a[0] + s * b[0],
            a[1] + s * b[1],
            a[2] + s * b[2],
            a[3] + s * b[3],
        ]
    };
    let k1 = eval(t, y)?;
    let k2 = eval(t + 0.5 * dt, &add(y, &k1, 0.5 * dt))?;
    let k3 = eval(t + 0.5 * dt, &add(y, &k2, 0.5 * dt))?;
    let k4 = eval(t + dt, &add(y, &k3, dt))?;
    let mut next = *y;
    for i in 0..4 {
        next[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    if feasible(&next) {
        Some(next)
    } else {
        None
    }
}

/// Values of κ for which the bundle system is stationary on balanced starts.
///
/// Roots of `(c₂−ρc₁)κ² + 2(c₂+ρc₁)κ + (c₂−ρc₁) = 0`; assumes `ω₀` balanced
/// (so that the reduced system applies).
pub fn stationary_kappa_values(c: &ConservedConstants, rho: u8) -> Vec<f64> {
    if rho == 0 {
        return vec![-1.0];
    }
    let (c1, c2) = (c.c1, c.c2);
    if (c2 - c1).abs() <= 1e-12 * c1.max(c2) {
        return vec![0.0];
    }
    let root = (c1 * c2).sqrt();
    let mut ks = [
        (c1 + c2 + 2.0 * root) / (c1 - c2),
        (c1 + c2 - 2.0 * root) / (c1 - c2),
    ];
    ks.sort_by(|a, b| a.partial_cmp(b).unwrap());
    ks.to_vec()
}

/// Max-norm residuals of the Hull–Strominger–Ivanov system at a state.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct HsiResiduals {
    /// `ω² ∧ A^κ = 0` (Hermitian-Yang-Mills contraction).
    pub hym_bundle: f64,
    /// `(A^κ)^{2,0} = (A^κ)^{0,2} = 0`.
    pub pq_bundle: f64,
    /// `i∂∂̄ω − (α'/4)(Tr Rm^τ∧Rm^τ − Tr A^κ∧A^κ) = 0`.
    pub anomaly: f64,
    /// `d(‖Ψ‖ ω²) = 0`.
    pub conformally_balanced: f64,
    /// `ω² ∧ Rm^τ = 0` and `(Rm^τ)^{2,0} = (Rm^τ)^{0,2} = 0`.
    pub instanton_tangent: f64,
}

impl HsiResiduals {
    /// Largest of the five residual groups.
    pub fn max(&self) -> f64 {
        self.hym_bundle
            .max(self.pq_bundle)
            .max(self.anomaly)
            .max(self.conformally_balanced)
            .max(self.instanton_tangent)
    }
}

/// Evaluates the five residual groups of the system at `(ω, H)`.
///
/// Residuals are raw max-norm coefficients; thresholds live with the caller.
pub fn hsi_residuals(
    params: &JParams,
    omega: &MetricCoeffs,
    h: &BundleMetricCoeffs,
    tau: f64,
    kappa: f64,
    alpha_prime: f64,
) -> Result<HsiResiduals> {
    let (frame, adapted) = hermitian::adapted_basis(params, omega)?;
    let sc = real_structure_constants(params, &adapted)?;
    let omega_e = adapted_omega();
    let omega2 = omega_e.wedge(&omega_e);

    // bundle curvature, first principles
    let a_curv = gauduchon::bundle_curvature(params, omega, h, kappa)?;
    let mut hym_bundle = 0.0f64;
    for i in 1..=6 {
        for j in 1..=6 {
            hym_bundle = hym_bundle.max(omega2.wedge(a_curv.forms.get(i, j)).max_abs());
        }
    }
    let mut pq_bundle = 0.0f64;
    for i in 1..=6 {
        for j in 1..=6 {
            let in_zeta = frame.to_zeta(a_curv.forms.get(i, j));
            pq_bundle = pq_bundle
                .max(in_zeta.pq_part_zeta(2, 0).max_abs())
                .max(in_zeta.pq_part_zeta(0, 2).max_abs());
        }
    }

    // tangent curvature
    let rm = curvature(&connection_one_forms_tau(&sc, tau), &sc);
    let mut rm_hym = 0.0f64;
    let mut rm_pq = 0.0f64;
    for i in 1..=6 {
        for j in 1..=6 {
            rm_hym = rm_hym.max(omega2.wedge(rm.forms.get(i, j)).max_abs());
            let in_zeta = frame.to_zeta(rm.forms.get(i, j));
            rm_pq = rm_pq
                .max(in_zeta.pq_part_zeta(2, 0).max_abs())
                .max(in_zeta.pq_part_zeta(0, 2).max_abs());
        }
    }

    // anomaly cancellation, as a coefficient of ζ^{12 1̄ 2̄} plus strays
    let b_coeff = {
        let f = hermitian::i_del_delbar_omega(params, omega)?;
        f.coeff(hermitian::Z1212).re
    };
    let (rm_trace, rm_stray) = trace_zeta_coefficient(&trace_wedge(&rm), &adapted);
    let (a_trace, a_stray) = trace_zeta_coefficient(&trace_wedge(&a_curv), &adapted);
    let anomaly = (b_coeff - alpha_prime / 4.0 * (rm_trace - a_trace)).abs()
        + alpha_prime.abs() / 4.0 * (rm_stray + a_stray);

    // conformally balanced: ‖Ψ‖ is constant, so d(‖Ψ‖ω²) = ‖Ψ‖ dω²
    let d_omega2 = sc.differential().apply(&omega2);
    let conformally_balanced = psi_norm(omega)? * d_omega2.max_abs();

    Ok(HsiResiduals {
        hym_bundle,
        pq_bundle,
        anomaly,
        conformally_balanced,
        instanton_tangent: rm_hym.max(rm_pq),
    })
}

/// Rows of the achievable-sign table for `K₁`.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct K1SignRow {
    pub group: GroupId,
    pub negative: bool,
    pub zero: bool,
    pub positive: bool,
}

/// Reproduces the achievable signs of `K₁` for the λ=0 catalog by sampling.
pub fn k1_sign_table() -> Vec<K1SignRow> {
    let omega0 = MetricCoeffs::diagonal(1.0, 1.0, 1.0).expect("identity metric");
    let mut rows = Vec::new();
    let sample_sets: [(GroupId, Vec<JParams>); 4] = [
        (
            GroupId::N2,
            [-1.5, -0.5, 0.0, 0.5, 1.5]
                .iter()
                .flat_map(|&x| {
                    [1.0, -0.7].iter().map(move |&y| {
                        JParams::new(0, 0.0, x, y).expect("valid params")
                    })
                })
                .collect(),
        ),
        (
            GroupId::N3,
            [-2.0, -1.0, -0.3, 0.4, 1.0, 2.0]
                .iter()
                .map(|&x| JParams::new(0, 0.0, x, 0.0).expect("valid params"))
                .collect(),
        ),
        (
            GroupId::N5,
            [(-0.2, 0.0), (0.0, 0.0), (0.5, 0.0), (1.0, 0.0), (1.5, 0.5)]
                .iter()
                .map(|&(x, y)| JParams::new(1, 0.0, x, y).expect("valid params"))
                .collect(),
        ),
        (
            GroupId::N8,
            vec![JParams::new(0, 0.0, 0.0, 0.0).expect("valid params")],
        ),
    ];
    for (group, params_list) in sample_sets {
        let mut row = K1SignRow {
            group,
            negative: false,
            zero: false,
            positive: false,
        };
        for p in params_list {
            debug_assert_eq!(lie::classify_group(&p), group);
            let k1 = model_constants(&p, &omega0, 0.0, -1.0)
                .expect("model constants")
                .k1;
            if k1.abs() < 1e-12 {
                row.zero = true;
            } else if k1 > 0.0 {
                row.positive = true;
            } else {
                row.negative = true;
            }
        }
        rows.push(row);
    }
    rows
}

/// Gromov–Hausdorff collapse verdict under the `(1+t)^{-1}` rescaling.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CollapseLimit {
    /// The 4-torus base survives; the fiber shrinks.
    Torus4,
    /// Every coefficient shrinks.
    Point,
}

/// Scaled-coefficient profile of an immortal trajectory.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct CollapseProfile {
    pub limit: CollapseLimit,
    /// Final `r²/(1+t)` (the base block; `s²` scales with it).
    pub base_scaled: f64,
    /// Final `k²/(1+t)` (the fiber block).
    pub fiber_scaled: f64,
    /// Which of `(r², s², k²)/(1+t)` tend to zero.
    pub tends_to_zero: [bool; 3],
}

/// Reads the scaled coefficient limits off the tail of a trajectory.
///
/// A coefficient counts as shrinking when its `(1+t)^{-1}`-scaled value keeps
/// decaying between the half-horizon and the horizon (sublinear growth);
/// linear growth gives a tail ratio near one. The reported limits are raw;
/// no specific flat metric is asserted.
pub fn collapse_diagnostic(trajectory: &[FlowState]) -> CollapseProfile {
    let last = trajectory.last().expect("non-empty trajectory");
    let scale_at = |s: &FlowState| {
        let f = 1.0 / (1.0 + s.t);
        [s.omega.r2 * f, s.omega.s2 * f, s.omega.k2 * f]
    };
    let end = scale_at(last);
    let half = trajectory
        .iter()
        .min_by(|a, b| {
            (a.t - last.t / 2.0)
                .abs()
                .total_cmp(&(b.t - last.t / 2.0).abs())
        })
        .expect("non-empty trajectory");
    let mid = scale_at(half);
    let tends_to_zero = [
        end[0] < 0.75 * mid[0],
        end[1] < 0.75 * mid[1],
        end[2] < 0.75 * mid[2],
    ];
    let limit = if !tends_to_zero[0] && !tends_to_zero[1] {
        CollapseLimit::Torus4
    } else {
        CollapseLimit::Point
    };
    CollapseProfile {
        limit,
        base_scaled: end[0],
        fiber_scaled: end[2],
        tends_to_zero,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64 as C;

    fn n3() -> JParams {
        JParams::new(0, 0.0, -1.0, 0.0).unwrap()
    }

    #[test]
    fn conserved_constants_of_diagonal_metrics() {
        let m = MetricCoeffs::diagonal(1.0, 1.0, 1.0).unwrap();
        let c = conserved_constants(&m).unwrap();
        let sqrt8 = 8.0f64.sqrt();
        assert!((c.c1 - sqrt8).abs() < 1e-14);
        assert!((c.c2 - sqrt8).abs() < 1e-14);
        assert_eq!(c.c5, C::new(0.0, 0.0));

        let m = MetricCoeffs::diagonal(2.25, 0.64, 1.21).unwrap();
        let c = conserved_constants(&m).unwrap();
        let (r0, s0, k0) = (1.5, 0.8, 1.1);
        assert!((c.c1 - sqrt8 * r0 * k0 / s0).abs() < 1e-12);
        assert!((c.c2 - sqrt8 * s0 * k0 / r0).abs() < 1e-12);
    }

    #[test]
    fn conserved_constants_of_almost_diagonal_metrics() {
        let m = MetricCoeffs::new(1.0, 1.0, 1.0, C::new(0.4, 0.2), C::new(0.0, 0.0), C::new(0.0, 0.0))
            .unwrap();
        let c = conserved_constants(&m).unwrap();
        assert_eq!(c.c3, C::new(0.0, 0.0));
        assert_eq!(c.c4, C::new(0.0, 0.0));
        let n = psi_norm(&m).unwrap();
        assert!((c.c5 - C::new(0.4 * n, 0.2 * n)).norm() < 1e-14);
    }

    #[test]
    fn almost_diagonal_solution_reproduces_constants() {
        let sqrt8 = 8.0f64.sqrt();
        let c = ConservedConstants {
            c1: sqrt8,
            c2: sqrt8,
            c3: C::new(0.0, 0.0),
            c4: C::new(0.0, 0.0),
            c5: C::new(0.0, 0.0),
        };
        let m = almost_diagonal_solution(&c, 1.0).unwrap();
        assert!((m.s2 - 1.0).abs() < 1e-14);
        assert!((m.k2 - 1.0).abs() < 1e-14);
        assert_eq!(m.u, C::new(0.0, 0.0));
        // k² independent of r², u/r² constant
        let m7 = almost_diagonal_solution(&c, 7.0).unwrap();
        assert_eq!(m7.k2, m.k2);
    }

    #[test]
    fn psi_norm_of_reconstructed_solutions() {
        // ‖Ψ‖ = 8c₁/((c₁c₂−|c₅|²) r²), and 8/(c₂ r²) in the diagonal case
        let m = MetricCoeffs::new(
            1.2,
            0.9,
            1.4,
            C::new(0.3, -0.2),
            C::new(0.0, 0.0),
            C::new(0.0, 0.0),
        )
        .unwrap();
        let c = conserved_constants(&m).unwrap();
        for r2 in [0.7, 1.0, 3.5] {
            let sol = almost_diagonal_solution(&c, r2).unwrap();
            let expected = 8.0 * c.c1 / ((c.c1 * c.c2 - c.c5.norm_sqr()) * r2);
            assert!((psi_norm(&sol).unwrap() - expected).abs() < 1e-12 * expected);
        }
        let m = MetricCoeffs::diagonal(1.2, 0.9, 1.4).unwrap();
        let c = conserved_constants(&m).unwrap();
        let sol = almost_diagonal_solution(&c, 2.0).unwrap();
        assert!((psi_norm(&sol).unwrap() - 8.0 / (c.c2 * 2.0)).abs() < 1e-12);
    }

    #[test]
    fn model_constants_on_n3_identity() {
        let m = MetricCoeffs::diagonal(1.0, 1.0, 1.0).unwrap();
        let mc = model_constants(&n3(), &m, 0.0, -1.0).unwrap();
        assert!((mc.k1 - 2.0f64.sqrt() / 2.0).abs() < 1e-12, "{}", mc.k1);
        assert_eq!(mc.k2, 0.0); // α' = 0
        let mc = model_constants(&n3(), &m, 1.0, 1.0).unwrap();
        assert_eq!(mc.k2, 0.0); // τ = 1
    }

    #[test]
    fn model_trace_constant_matches_diagonal_closed_form() {
        // C = (τ−1)(τ²−2τ+5)(c₁²+c₂²)c₁²/2⁷ for diagonal N3 data
        let m = MetricCoeffs::diagonal(1.44, 0.81, 1.96).unwrap();
        let c = conserved_constants(&m).unwrap();
        for tau in [-1.0, 0.0, 2.5] {
            let mc = model_constants(&n3(), &m, 1.0, tau).unwrap();
            let expected = (tau - 1.0) * (tau * tau - 2.0 * tau + 5.0)
                * (c.c1 * c.c1 + c.c2 * c.c2)
                * c.c1
                * c.c1
                / 128.0;
            assert!(
                (mc.c_trace - expected).abs() < 1e-9 * (1.0 + expected.abs()),
                "tau={tau}: {} vs {expected}",
                mc.c_trace
            );
        }
    }

    #[test]
    fn gamma1_examples_and_sign_law() {
        let m = MetricCoeffs::diagonal(1.0, 1.0, 1.0).unwrap();
        assert!((gamma1(&n3(), &m).unwrap() - 2.0).abs() < 1e-14);
        // pluriclosed structure: ρ + λ² − 2x = 0
        let p = JParams::new(0, 0.0, 0.0, 0.4).unwrap();
        assert_eq!(gamma1(&p, &m).unwrap(), 0.0);
    }

    #[test]
    fn classification_examples() {
        let c = classify_model(-1.0, 1.0, 1.0).unwrap();
        assert_eq!(c.kind, SolutionKind::Stationary);
        let c = classify_model(1.0, 1.0, 5.0).unwrap();
        assert_eq!(c.kind, SolutionKind::Immortal);
        assert_eq!(c.forward_slope, Some(1.0));
        let c = classify_model(1.0, -1.0, 0.5).unwrap();
        assert_eq!(c.kind, SolutionKind::Ancient);
        assert_eq!(c.fixed_point, Some(1.0));
        assert_eq!(c.fixed_point_direction, Some(TimeDirection::Backward));
        let c = classify_model(-1.0, 1.0, 0.5).unwrap();
        assert_eq!(c.kind, SolutionKind::Immortal);
        assert_eq!(c.fixed_point_direction, Some(TimeDirection::Forward));
        assert!(classify_model(1.0, 1.0, 0.0).is_err());
    }

    #[test]
    fn integrate_model_explicit_cases() {
        // K₁=0, K₂=1, h₀=1, t=1 → h = 4^{1/3}
        let tr = integrate_model(0.0, 1.0, 1.0, 1e-3, 1.0).unwrap();
        let (t_end, h_end) = *tr.samples.last().unwrap();
        assert!((t_end - 1.0).abs() < 1e-12);
        assert!((h_end - 4.0f64.cbrt()).abs() < 1e-12);
        // K₁=1, K₂=0, h₀=1, t=3 → 4
        let tr = integrate_model(1.0, 0.0, 1.0, 1e-2, 3.0).unwrap();
        assert!((tr.samples.last().unwrap().1 - 4.0).abs() < 1e-12);
        // stationary point
        let tr = integrate_model(-1.0, 1.0, 1.0, 1e-3, 2.0).unwrap();
        for &(_, h) in &tr.samples {
            assert!((h - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn integrate_model_detects_blow_down() {
        // K₁<0, K₂<0 runs ancient; forward it must hit the floor
        let tr = integrate_model(-1.0, -1.0, 1.0, 1e-3, 10.0).unwrap();
        assert!(tr.blown_down);
        assert!(tr.last_time < 1.0); // h' ≤ −1 kills it before t = 1
    }

    #[test]
    fn stationary_kappa_examples() {
        let sqrt8 = 8.0f64.sqrt();
        let c = ConservedConstants {
            c1: sqrt8,
            c2: sqrt8,
            c3: C::new(0.0, 0.0),
            c4: C::new(0.0, 0.0),
            c5: C::new(0.0, 0.0),
        };
        assert_eq!(stationary_kappa_values(&c, 0), vec![-1.0]);
        assert_eq!(stationary_kappa_values(&c, 1), vec![0.0]);
        let c = ConservedConstants {
            c1: 8.0,
            c2: 2.0,
            c3: C::new(0.0, 0.0),
            c4: C::new(0.0, 0.0),
            c5: C::new(0.0, 0.0),
        };
        let ks = stationary_kappa_values(&c, 1);
        assert!((ks[0] - 1.0 / 3.0).abs() < 1e-12);
        assert!((ks[1] - 3.0).abs() < 1e-12);
    }

    #[test]
    fn k1_sign_table_matches_catalog() {
        let rows = k1_sign_table();
        let get = |g: GroupId| rows.iter().find(|r| r.group == g).unwrap();
        let n3 = get(GroupId::N3);
        assert!(n3.negative && n3.positive && !n3.zero);
        let n8 = get(GroupId::N8);
        assert!(!n8.negative && !n8.positive && n8.zero);
        let n2 = get(GroupId::N2);
        assert!(n2.negative && n2.positive && n2.zero);
        let n5 = get(GroupId::N5);
        assert!(n5.negative && n5.positive && n5.zero);
    }

    #[test]
    fn coupled_rhs_matches_chern_system_on_n3() {
        // κ=1, ρ=0, y=0, x=−1 reproduces the explicit ODE system
        let p = n3();
        let omega0 = MetricCoeffs::diagonal(1.2, 0.9, 1.5).unwrap();
        let c = conserved_constants(&omega0).unwrap();
        let h = BundleMetricCoeffs::new(0.8, 1.3, 1.1).unwrap();
        let state = FlowState {
            t: 0.0,
            omega: almost_diagonal_solution(&c, 1.7).unwrap(),
            h: Some(h),
        };
        let (tau, alpha) = (-1.0, 0.7);
        let rhs = coupled_rhs(&p, &state, &c, 1.0, tau, alpha).unwrap();
        let r2 = 1.7f64;
        let expected_dr2 = c.c1 * c.c1 * c.c2 / 32.0
            + alpha * (1.0 - tau) * (tau * tau - 2.0 * tau + 5.0) * c.c1.powi(3)
                * (c.c1 * c.c1 + c.c2 * c.c2)
                / (2048.0 * r2 * r2);
        assert!((rhs[0] - expected_dr2).abs() < 1e-10 * (1.0 + expected_dr2.abs()));
        let f = 8.0 / (3.0 * c.c1 * c.c2);
        assert!((rhs[1] - f * h.tk2 * h.tk2 / (r2 * h.tr2)).abs() < 1e-12);
        assert!((rhs[2] - f * h.tk2 * h.tk2 / (r2 * h.ts2)).abs() < 1e-12);
        let expected_dk = -f * (h.tr2 * h.tr2 + h.ts2 * h.ts2) * h.tk2.powi(3)
            / (r2 * h.tr2 * h.tr2 * h.ts2 * h.ts2);
        assert!((rhs[3] - expected_dk).abs() < 1e-12);
    }

    #[test]
    fn coupled_rhs_bismut_freezes_bundle() {
        // κ=−1 on N3: dk̃²/dt = 0 always; balanced start freezes r̃, s̃ too
        let p = n3();
        let omega0 = MetricCoeffs::diagonal(1.3, 1.3, 0.9).unwrap();
        let c = conserved_constants(&omega0).unwrap();
        let state = FlowState {
            t: 0.0,
            omega: omega0,
            h: Some(BundleMetricCoeffs::new(0.7, 1.9, 1.2).unwrap()),
        };
        let rhs = coupled_rhs(&p, &state, &c, -1.0, -1.0, 0.3).unwrap();
        assert!(rhs[1].abs() < 1e-13);
        assert!(rhs[2].abs() < 1e-13);
        assert!(rhs[3].abs() < 1e-13);

        // unbalanced start: r̃, s̃ move, k̃ does not
        let omega0 = MetricCoeffs::diagonal(1.3, 0.8, 0.9).unwrap();
        let c = conserved_constants(&omega0).unwrap();
        let state = FlowState {
            t: 0.0,
            omega: omega0,
            h: Some(BundleMetricCoeffs::new(0.7, 1.9, 1.2).unwrap()),
        };
        let rhs = coupled_rhs(&p, &state, &c, -1.0, -1.0, 0.3).unwrap();
        assert!(rhs[1].abs() > 1e-6);
        assert!(rhs[3].abs() < 1e-13);
    }

    #[test]
    fn coupled_rhs_matches_diagonal_rates() {
        // the bundle equations are r̃ᵢ² times the diagonal HYM rates, with the
        // conserved substitution s² = (c₂/c₁) r², k² = c₁c₂/8
        let omega0 = MetricCoeffs::diagonal(1.2, 0.9, 1.5).unwrap();
        let c = conserved_constants(&omega0).unwrap();
        let h = BundleMetricCoeffs::new(0.8, 1.3, 1.1).unwrap();
        for (rho, x, y, kappa) in [
            (0u8, -1.0, 0.0, 0.7),
            (1, 0.3, -0.5, -1.4),
            (1, -0.2, 0.9, 2.1),
        ] {
            let p = JParams::new(rho, 0.0, x, y).unwrap();
            let omega_t = almost_diagonal_solution(&c, 1.7).unwrap();
            let state = FlowState {
                t: 0.0,
                omega: omega_t,
                h: Some(h),
            };
            let rhs = coupled_rhs(&p, &state, &c, kappa, -1.0, 0.4).unwrap();
            let rates = crate::gauduchon::hym_diagonal_rates(&p, &omega_t, &h, kappa).unwrap();
            let expected = [h.tr2 * rates[0], h.ts2 * rates[1], h.tk2 * rates[2]];
            for i in 0..3 {
                assert!(
                    (rhs[i + 1] - expected[i]).abs() < 1e-11 * (1.0 + expected[i].abs()),
                    "rho={rho} kappa={kappa} rate {i}: {} vs {}",
                    rhs[i + 1],
                    expected[i]
                );
            }
        }
    }

    #[test]
    fn stationary_kappas_zero_the_bundle_rates() {
        // balanced N5 start: x = −c₂/c₁, y = 0 with ρ = 1
        let omega0 = MetricCoeffs::diagonal(1.0, 0.1, 1.0).unwrap();
        let c = conserved_constants(&omega0).unwrap();
        let x = -c.c2 / c.c1;
        let p = JParams::new(1, 0.0, x, 0.0).unwrap();
        assert!(1.0 + 4.0 * x > 0.0);
        for kappa in stationary_kappa_values(&c, 1) {
            let state = FlowState {
                t: 0.0,
                omega: omega0,
                h: Some(BundleMetricCoeffs::new(0.9, 1.4, 1.2).unwrap()),
            };
            let rhs = coupled_rhs(&p, &state, &c, kappa, -1.0, 0.2).unwrap();
            for r in &rhs[1..] {
                assert!(r.abs() < 1e-12, "kappa={kappa}: {rhs:?}");
            }
        }
    }

    #[test]
    fn collapse_profiles() {
        // growing base: torus
        let c = conserved_constants(&MetricCoeffs::diagonal(1.0, 1.0, 1.0).unwrap()).unwrap();
        let mut states = Vec::new();
        for n in 0..=100 {
            let t = n as f64 * 10.0;
            states.push(FlowState {
                t,
                omega: almost_diagonal_solution(&c, 1.0 + 0.7 * t).unwrap(),
                h: None,
            });
        }
        let profile = collapse_diagnostic(&states);
        assert_eq!(profile.limit, CollapseLimit::Torus4);
        assert!(profile.tends_to_zero[2]);

        // bounded trajectory: point
        let mut states = Vec::new();
        for n in 0..=100 {
            let t = n as f64 * 100.0;
            states.push(FlowState {
                t,
                omega: almost_diagonal_solution(&c, 1.0).unwrap(),
                h: None,
            });
        }
        assert_eq!(collapse_diagnostic(&states).limit, CollapseLimit::Point);
    }

    #[test]
    fn hsi_residuals_flag_defects() {
        let p = n3();
        let omega = MetricCoeffs::diagonal(1.0, 1.0, 1.0).unwrap();
        let h = BundleMetricCoeffs::new(1.0, 1.0, 1.0).unwrap();
        // α' = 0 on a non-pluriclosed structure: the anomaly term survives
        let res = hsi_residuals(&p, &omega, &h, -1.0, -1.0, 0.0).unwrap();
        assert!(res.anomaly > 0.5);
        // unbalanced metric: conformally balanced residual is positive
        let omega_u = MetricCoeffs::diagonal(1.0, 0.6, 1.0).unwrap();
        let res = hsi_residuals(&p, &omega_u, &h, -1.0, -1.0, 0.0).unwrap();
        assert!(res.conformally_balanced > 1e-3);
    }
}
