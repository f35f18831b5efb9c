//! Random-draw equivalence suites for the closed-form tables.
//!
//! Each suite draws `(ρ, λ, x, y)`, a valid metric and a connection parameter
//! from a seeded stream, evaluates the first-principles route and the
//! closed-form route, and records the worst entry-wise relative error. The
//! suites back both the `verify` CLI command and the acceptance tests.

use serde::{Deserialize, Serialize};

use crate::gauduchon::{
    self, connection_one_forms_tau, curvature, tables, trace_wedge, trace_zeta_coefficient,
};
use crate::gauduchon::tables::closed_form_curvature_tau;
use crate::hermitian::{adapted_coeffs, MetricCoeffs};
use crate::lie::real_structure_constants;
use crate::sample;
use crate::tol;
use crate::Result;

/// Options for a verification run.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct VerifyOptions {
    pub seed: u64,
    pub draws: usize,
    /// Test fixture: scales one closed-form coefficient to prove the oracle
    /// catches a defective table entry.
    pub perturb: Option<f64>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            seed: 7,
            draws: 100,
            perturb: None,
        }
    }
}

/// Worst error of one draw.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DrawRecord {
    pub draw: usize,
    pub max_rel_err: f64,
    pub worst_entry: String,
}

/// Outcome of one suite.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SuiteReport {
    pub name: String,
    pub passed: bool,
    pub draws: Vec<DrawRecord>,
    pub worst: f64,
    pub tolerance: f64,
}

impl SuiteReport {
    fn from_draws(name: &str, tolerance: f64, draws: Vec<DrawRecord>) -> Self {
        let worst = draws.iter().map(|d| d.max_rel_err).fold(0.0, f64::max);
        SuiteReport {
            name: name.to_string(),
            passed: worst <= tolerance,
            draws,
            worst,
            tolerance,
        }
    }
}

/// Full verification report.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerifyReport {
    pub options: VerifyOptions,
    pub suites: Vec<SuiteReport>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(|s| s.passed)
    }
}

/// Connection 1-forms: explicit table against the structure-constant formula.
pub fn verify_connection_forms(opts: &VerifyOptions) -> SuiteReport {
    let mut rng = sample::rng(opts.seed);
    let mut draws = Vec::with_capacity(opts.draws);
    for draw in 0..opts.draws {
        let p = sample::params(&mut rng);
        let m = sample::metric(&mut rng);
        let tau = sample::connection_parameter(&mut rng);
        let a = adapted_coeffs(&m).expect("sampled metric is valid");
        let sc = real_structure_constants(&p, &a).expect("valid constants");
        let brute = connection_one_forms_tau(&sc, tau);
        let table = tables::closed_form_connection_tau(&p, &a, tau);
        let scale = brute.forms.max_abs().max(1.0);
        let (err, worst) = table.forms.max_rel_err(&brute.forms, scale);
        draws.push(DrawRecord {
            draw,
            max_rel_err: err,
            worst_entry: format!("sigma[{}][{}]", worst.0, worst.1),
        });
    }
    SuiteReport::from_draws("connection-forms", tol::REL_TOL, draws)
}

/// Closed-form curvature table against `dσ + σ∧σ` (tangent bundle).
pub fn verify_curvature_tau(opts: &VerifyOptions) -> SuiteReport {
    let mut rng = sample::rng(opts.seed);
    let mut draws = Vec::with_capacity(opts.draws);
    for draw in 0..opts.draws {
        let p = sample::params(&mut rng);
        let m = sample::metric(&mut rng);
        let tau = sample::connection_parameter(&mut rng);
        let a = adapted_coeffs(&m).expect("sampled metric is valid");
        let sc = real_structure_constants(&p, &a).expect("valid constants");
        let brute = curvature(&connection_one_forms_tau(&sc, tau), &sc);
        let mut table = closed_form_curvature_tau(&p, &a, tau);
        if let Some(eps) = opts.perturb {
            let f = table.forms.get(1, 2).scale_re(1.0 + eps);
            table.forms.set(1, 2, f);
        }
        let scale = brute.forms.max_abs().max(1.0);
        let (err, worst) = table.forms.max_rel_err(&brute.forms, scale);
        draws.push(DrawRecord {
            draw,
            max_rel_err: err,
            worst_entry: format!("omega[{}][{}]", worst.0, worst.1),
        });
    }
    SuiteReport::from_draws("curvature-tau", tol::REL_TOL, draws)
}

/// Closed-form trace against the wedge trace (tangent bundle).
pub fn verify_trace_tau(opts: &VerifyOptions) -> SuiteReport {
    let mut rng = sample::rng(opts.seed);
    let mut draws = Vec::with_capacity(opts.draws);
    for draw in 0..opts.draws {
        let p = sample::params(&mut rng);
        let m = sample::metric(&mut rng);
        let tau = sample::connection_parameter(&mut rng);
        let a = adapted_coeffs(&m).expect("sampled metric is valid");
        let sc = real_structure_constants(&p, &a).expect("valid constants");
        let tr = trace_wedge(&curvature(&connection_one_forms_tau(&sc, tau), &sc));
        let (coeff, stray) = trace_zeta_coefficient(&tr, &a);
        let closed = tables::closed_form_trace_tau(&p, &a, tau);
        let scale = coeff.abs().max(closed.abs()).max(1.0);
        let err = ((coeff - closed).abs() / scale).max(stray / tr.max_abs().max(1.0));
        draws.push(DrawRecord {
            draw,
            max_rel_err: err,
            worst_entry: "trace".to_string(),
        });
    }
    SuiteReport::from_draws("trace-tau", tol::REL_TOL, draws)
}

/// Bundle curvature and trace tables under the λ = 0 gate.
pub fn verify_bundle_kappa(opts: &VerifyOptions) -> SuiteReport {
    let mut rng = sample::rng(opts.seed);
    let mut draws = Vec::with_capacity(opts.draws);
    for draw in 0..opts.draws {
        let p = sample::params_lambda0(&mut rng);
        let omega = sample::diagonal_metric(&mut rng);
        let h = sample::bundle_metric(&mut rng);
        let kappa = sample::connection_parameter(&mut rng);

        let brute = gauduchon::bundle_curvature(&p, &omega, &h, kappa).expect("λ=0 gate holds");
        let table =
            tables::bundle_curvature_closed_form(&p, &omega, &h, kappa).expect("λ=0 gate holds");
        let scale = brute.forms.max_abs().max(1.0);
        let (curv_err, worst) = table.forms.max_rel_err(&brute.forms, scale);

        let a_w = adapted_coeffs(&omega).expect("diagonal metric");
        let (coeff, stray) = trace_zeta_coefficient(&trace_wedge(&brute), &a_w);
        let closed = tables::closed_form_trace_kappa(&p, &omega, &h, kappa).expect("gate holds");
        let t_scale = coeff.abs().max(closed.abs()).max(1.0);
        let trace_err = ((coeff - closed).abs() / t_scale).max(stray / t_scale);

        draws.push(DrawRecord {
            draw,
            max_rel_err: curv_err.max(trace_err),
            worst_entry: format!("A[{}][{}]", worst.0, worst.1),
        });
    }
    SuiteReport::from_draws("bundle-kappa", tol::REL_TOL, draws)
}

/// Dual-route balanced predicate on random metrics.
pub fn verify_balanced_routes(opts: &VerifyOptions) -> SuiteReport {
    let mut rng = sample::rng(opts.seed);
    let mut draws = Vec::with_capacity(opts.draws);
    for draw in 0..opts.draws {
        let p = sample::params(&mut rng);
        let m = sample::metric(&mut rng);
        // is_balanced errors out when its two routes disagree
        let err = match crate::hermitian::is_balanced(&p, &m) {
            Ok(_) => 0.0,
            Err(_) => 1.0,
        };
        draws.push(DrawRecord {
            draw,
            max_rel_err: err,
            worst_entry: "balanced".to_string(),
        });
    }
    SuiteReport::from_draws("balanced-routes", 0.5, draws)
}

/// Runs every suite.
pub fn run_all(opts: &VerifyOptions) -> Result<VerifyReport> {
    let suites = vec![
        verify_connection_forms(opts),
        verify_curvature_tau(opts),
        verify_trace_tau(opts),
        verify_bundle_kappa(opts),
        verify_balanced_routes(opts),
    ];
    Ok(VerifyReport {
        options: *opts,
        suites,
    })
}

/// Verifies along a flow: balanced/lcK predicates are constant on a trajectory.
pub fn predicate_constant_along_flow<F>(
    states: &[crate::flow::FlowState],
    predicate: F,
) -> Result<bool>
where
    F: Fn(&MetricCoeffs) -> Result<bool>,
{
    let first = predicate(&states[0].omega)?;
    for s in &states[1..] {
        if predicate(&s.omega)? != first {
            return Ok(false);
        }
    }
    Ok(true)
}
