//! Command-line front end: verification suites, flow runs, model-problem
//! classification sweeps, the K₁ sign table and Hull–Strominger–Ivanov
//! residual reports.
//!
//! Exit codes: 0 success, 1 verification/integration failure, 2 invalid
//! configuration.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use nilflow::flow::{
    self, classify_model, collapse_diagnostic, conserved_constants, hsi_residuals,
    integrate_coupled, integrate_flat_bundle, integrate_model, model_constants_from_conserved,
    SolutionKind,
};
use nilflow::gauduchon::tables;
use nilflow::hermitian::{BundleMetricCoeffs, MetricCoeffs};
use nilflow::lie::{classify_group, GroupId, JParams};
use nilflow::verify::{self, VerifyOptions};
use nilflow_cli::config::{parse_bundle, parse_metric, FileConfig};
use nilflow_cli::{output, Format};

#[derive(Parser)]
#[command(name = "nilflow", version, about = "Invariant Hermitian geometry and the Anomaly flow on 2-step nilmanifolds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the seeded random-draw verification suites for the closed-form tables
    Verify(VerifyArgs),
    /// Integrate the Anomaly flow (flat bundle or coupled) and export the trajectory
    Flow(FlowArgs),
    /// Classify the model problem over a (K1, K2, h0) grid with numeric confirmation
    Classify(ClassifyArgs),
    /// Reproduce the achievable-sign table for K1 over the group catalog
    TableK1(TableArgs),
    /// Evaluate the Hull-Strominger-Ivanov residuals at one state
    Hsi(HsiArgs),
}

#[derive(Args)]
struct StructureArgs {
    /// Catalog group fixing the structure coefficients (N2, N3, N5 or N8)
    #[arg(long, conflicts_with_all = ["rho", "lambda", "x", "y"])]
    group: Option<String>,
    /// ρ ∈ {0, 1}
    #[arg(long)]
    rho: Option<u8>,
    /// λ ≥ 0
    #[arg(long)]
    lambda: Option<f64>,
    /// Real part of the ζ^{2 2̄} coefficient
    #[arg(long, allow_negative_numbers = true)]
    x: Option<f64>,
    /// Imaginary part of the ζ^{2 2̄} coefficient
    #[arg(long, allow_negative_numbers = true)]
    y: Option<f64>,
}

impl StructureArgs {
    fn resolve(&self, file: &FileConfig) -> Result<JParams, String> {
        if let Some(g) = &self.group {
            return group_params(g);
        }
        let rho = self.rho.or(file.rho).unwrap_or(0);
        let lambda = self.lambda.or(file.lambda).unwrap_or(0.0);
        let x = self.x.or(file.x).unwrap_or(-1.0);
        let y = self.y.or(file.y).unwrap_or(0.0);
        JParams::new(rho, lambda, x, y).map_err(|e| e.to_string())
    }
}

fn group_params(name: &str) -> Result<JParams, String> {
    let p = match name.to_ascii_uppercase().as_str() {
        "N2" => JParams::new(0, 0.0, 0.0, 1.0),
        "N3" => JParams::new(0, 0.0, -1.0, 0.0),
        "N5" => JParams::new(1, 0.0, 0.0, 0.0),
        "N8" => JParams::new(0, 0.0, 0.0, 0.0),
        other => {
            return Err(format!(
                "group {other} has no parameter mapping (use N2, N3, N5 or N8)"
            ))
        }
    };
    p.map_err(|e| e.to_string())
}

#[derive(Args)]
struct VerifyArgs {
    /// Seed of the ChaCha8 draw stream
    #[arg(long, default_value_t = 7)]
    seed: u64,
    /// Number of random draws per suite
    #[arg(long, default_value_t = 100)]
    draws: usize,
    /// Report file
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Test fixture: perturb one closed-form coefficient by this relative amount
    #[arg(long, hide = true)]
    inject_error: Option<f64>,
}

#[derive(Args)]
struct FlowArgs {
    #[command(flatten)]
    structure: StructureArgs,
    /// Metric coefficients r2,s2,k2,u_re,u_im,v_re,v_im,z_re,z_im
    #[arg(long, value_parser = parse_metric)]
    metric: Option<MetricCoeffs>,
    /// Bundle metric coefficients tr2,ts2,tk2 (enables the coupled flow)
    #[arg(long, value_parser = parse_bundle)]
    bundle: Option<BundleMetricCoeffs>,
    /// Gauduchon parameter of the tangent-bundle connection
    #[arg(long, allow_negative_numbers = true)]
    tau: Option<f64>,
    /// Gauduchon parameter of the bundle connection
    #[arg(long, allow_negative_numbers = true)]
    kappa: Option<f64>,
    /// Slope parameter α'
    #[arg(long = "alpha-prime", allow_negative_numbers = true)]
    alpha_prime: Option<f64>,
    /// Integration step
    #[arg(long)]
    dt: Option<f64>,
    /// Integration horizon
    #[arg(long)]
    t_max: Option<f64>,
    /// Trajectory file
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// JSON file mirroring the flags; explicit flags win
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct ClassifyArgs {
    /// Comma-separated K1 values
    #[arg(long, default_value = "-1,0,1", value_delimiter = ',', allow_negative_numbers = true)]
    k1: Vec<f64>,
    /// Comma-separated K2 values
    #[arg(long, default_value = "-1,0,1", value_delimiter = ',', allow_negative_numbers = true)]
    k2: Vec<f64>,
    /// Integration step for the confirmation runs
    #[arg(long, default_value_t = 1e-3)]
    dt: f64,
}

#[derive(Args)]
struct TableArgs {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Args)]
struct HsiArgs {
    #[command(flatten)]
    structure: StructureArgs,
    #[arg(long, value_parser = parse_metric)]
    metric: Option<MetricCoeffs>,
    #[arg(long, value_parser = parse_bundle)]
    bundle: Option<BundleMetricCoeffs>,
    #[arg(long, allow_negative_numbers = true)]
    tau: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    kappa: Option<f64>,
    #[arg(long = "alpha-prime", allow_negative_numbers = true)]
    alpha_prime: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    config: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Verify(args) => cmd_verify(args),
        Command::Flow(args) => cmd_flow(args),
        Command::Classify(args) => cmd_classify(args),
        Command::TableK1(args) => cmd_table_k1(args),
        Command::Hsi(args) => cmd_hsi(args),
    };
    match result {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn cmd_verify(args: VerifyArgs) -> Result<ExitCode, String> {
    if args.draws == 0 {
        eprintln!("warning: no draws requested, nothing verified");
        if let Some(path) = &args.out {
            std::fs::write(path, "[]\n").map_err(|e| e.to_string())?;
        }
        println!("verify: 0 suites run");
        return Ok(ExitCode::SUCCESS);
    }
    let opts = VerifyOptions {
        seed: args.seed,
        draws: args.draws,
        perturb: args.inject_error,
    };
    let report = verify::run_all(&opts).map_err(|e| e.to_string())?;
    for suite in &report.suites {
        let verdict = if suite.passed { "ok" } else { "FAILED" };
        let worst_draw = suite
            .draws
            .iter()
            .max_by(|a, b| a.max_rel_err.total_cmp(&b.max_rel_err));
        let detail = worst_draw
            .map(|d| format!("draw {} at {}", d.draw, d.worst_entry))
            .unwrap_or_default();
        println!(
            "{:<18} {:>6}   worst {:.3e} (tol {:.1e}, {})",
            suite.name, verdict, suite.worst, suite.tolerance, detail
        );
    }
    if let Some(path) = &args.out {
        let body = serde_json::to_string_pretty(&report).map_err(|e| e.to_string())?;
        std::fs::write(path, body).map_err(|e| e.to_string())?;
        println!("wrote report to {}", path.display());
    }
    if report.passed() {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(1))
    }
}

fn cmd_flow(args: FlowArgs) -> Result<ExitCode, String> {
    let file = FileConfig::load(args.config.as_deref())?;
    let params = args.structure.resolve(&file)?;
    let metric = args
        .metric
        .or(file.metric)
        .unwrap_or_else(|| MetricCoeffs::diagonal(1.0, 1.0, 1.0).expect("identity"));
    let bundle = args.bundle.or(file.bundle);
    let tau = args.tau.or(file.tau).unwrap_or(-1.0);
    let kappa = args.kappa.or(file.kappa).unwrap_or(-1.0);
    let alpha_prime = args.alpha_prime.or(file.alpha_prime).unwrap_or(0.0);
    let dt = args.dt.or(file.dt).unwrap_or(1e-3);
    let t_max = args.t_max.or(file.t_max).unwrap_or(10.0);
    if !(dt > 0.0 && t_max > 0.0) {
        return Err(format!("dt and t-max must be positive (got {dt}, {t_max})"));
    }

    let group = classify_group(&params);
    println!(
        "flow: {} structure (rho={} lambda={} x={} y={}), tau={tau} kappa={kappa} alpha'={alpha_prime}",
        group, params.rho, params.lambda, params.x, params.y
    );

    let (states, blown_down, constants) = if let Some(h0) = bundle {
        let traj = integrate_coupled(&params, &metric, &h0, tau, kappa, alpha_prime, dt, t_max)
            .map_err(|e| e.to_string())?;
        (traj.states, traj.blown_down, traj.constants)
    } else {
        let (_, states, blown) = integrate_flat_bundle(&params, &metric, alpha_prime, tau, dt, t_max)
            .map_err(|e| e.to_string())?;
        let c = conserved_constants(&states[0].omega).map_err(|e| e.to_string())?;
        (states, blown, c)
    };

    let mc = model_constants_from_conserved(&params, &constants, alpha_prime, tau)
        .map_err(|e| e.to_string())?;
    let mut k1_eff = mc.k1;
    if let Some(h0) = &bundle {
        k1_eff += alpha_prime * constants.c1 / 16.0
            * tables::closed_form_trace_kappa(&params, &states[0].omega, h0, kappa)
                .map_err(|e| e.to_string())?;
    }
    println!(
        "constants: c1={:.6} c2={:.6} |c5|={:.6}  K1={:.6} K2={:.6}",
        constants.c1,
        constants.c2,
        constants.c5.norm(),
        k1_eff,
        mc.k2
    );
    let class = classify_model(k1_eff, mc.k2, states[0].omega.r2).map_err(|e| e.to_string())?;
    println!("classification: {}", output::describe_class(&class));

    let last = states.last().expect("at least the initial state");
    println!(
        "final state: t={:.4} r2={:.8}{}",
        last.t,
        last.omega.r2,
        last.h
            .map(|h| format!("  H=({:.8}, {:.8}, {:.8})", h.tr2, h.ts2, h.tk2))
            .unwrap_or_default()
    );
    if blown_down {
        println!("blow-down: reached the positivity floor at t={:.6}", last.t);
    }
    if class.kind == SolutionKind::Immortal && !blown_down {
        let profile = collapse_diagnostic(&states);
        println!("collapse: {}", output::describe_collapse(&profile));
    }
    if let Some(h_last) = &last.h {
        match hsi_residuals(&params, &last.omega, h_last, tau, kappa, alpha_prime) {
            Ok(res) => println!(
                "HSI residuals: hym={:.3e} pq={:.3e} anomaly={:.3e} balanced={:.3e} rm={:.3e}",
                res.hym_bundle,
                res.pq_bundle,
                res.anomaly,
                res.conformally_balanced,
                res.instanton_tangent
            ),
            Err(e) => println!("HSI residuals unavailable: {e}"),
        }
    }

    if let Some(path) = args.out.or(file.out.as_deref().map(PathBuf::from)) {
        let format = args.format.or(file.format_enum()).unwrap_or(Format::Csv);
        match format {
            Format::Csv => output::write_csv(&path, &states).map_err(|e| e.to_string())?,
            Format::Json => {
                output::write_json(&path, &params, &constants, &class, &states)
                    .map_err(|e| e.to_string())?
            }
        }
        println!("wrote trajectory to {} ({} samples)", path.display(), states.len());
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_classify(args: ClassifyArgs) -> Result<ExitCode, String> {
    if !(args.dt > 0.0) {
        return Err(format!("dt must be positive, got {}", args.dt));
    }
    for &k1 in &args.k1 {
        for &k2 in &args.k2 {
            let h_star = if k1 * k2 < 0.0 {
                Some((-k2 / k1).sqrt())
            } else {
                None
            };
            let h0s = match h_star {
                Some(h) => [h / 2.0, h, 2.0 * h],
                None => [0.5, 1.0, 2.0],
            };
            for h0 in h0s {
                let class = classify_model(k1, k2, h0).map_err(|e| e.to_string())?;
                let traj = integrate_model(k1, k2, h0, args.dt, 20.0).map_err(|e| e.to_string())?;
                let last = traj.samples.last().unwrap();
                let confirm = match class.kind {
                    SolutionKind::Stationary => format!("residual {:.1e}", (last.1 - h0).abs()),
                    SolutionKind::Ancient => {
                        if traj.blown_down {
                            format!("blow-down at t={:.3}", traj.last_time)
                        } else {
                            "no blow-down within horizon".to_string()
                        }
                    }
                    _ => format!("h(20)={:.4}", last.1),
                };
                println!(
                    "K1={k1:>4} K2={k2:>4} h0={h0:<7.4} -> {:<40} [{confirm}]",
                    output::describe_class(&class)
                );
            }
        }
    }

    // both lifespans on one group (N3, balanced start, opposite α' signs)
    let p = group_params("N3")?;
    let m = MetricCoeffs::diagonal(1.0, 1.0, 1.0).expect("identity");
    let c = conserved_constants(&m).map_err(|e| e.to_string())?;
    let mut shown = Vec::new();
    for alpha in [0.25, -0.25] {
        let mc = model_constants_from_conserved(&p, &c, alpha, -1.0).map_err(|e| e.to_string())?;
        let h0 = if mc.k2 < 0.0 {
            0.5 * (-mc.k2 / mc.k1).sqrt()
        } else {
            1.0
        };
        let class = classify_model(mc.k1, mc.k2, h0).map_err(|e| e.to_string())?;
        shown.push(class.kind);
        println!(
            "N3, alpha'={alpha:>5}: K1={:.4} K2={:.4} h0={h0:.4} -> {}",
            mc.k1,
            mc.k2,
            output::describe_class(&class)
        );
    }
    if shown.contains(&SolutionKind::Immortal) && shown.contains(&SolutionKind::Ancient) {
        println!("N3 admits both immortal and ancient invariant solutions");
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_table_k1(args: TableArgs) -> Result<ExitCode, String> {
    let computed = flow::k1_sign_table();
    let mark = |b: bool| if b { "yes" } else { "-" };
    // N4 and N6 are not reachable through the λ=0 parameter catalog; their
    // rows are quoted from the classification table, not computed.
    let quoted = [
        (GroupId::N4, true, true, true),
        (GroupId::N6, false, false, true),
    ];
    match args.format {
        Format::Csv => {
            println!("group,K1_negative,K1_zero,K1_positive,source");
            for row in &computed {
                println!(
                    "{},{},{},{},sampled",
                    row.group,
                    mark(row.negative),
                    mark(row.zero),
                    mark(row.positive)
                );
            }
            for (g, n, z, p) in quoted {
                println!(
                    "{},{},{},{},quoted (no parameter mapping)",
                    g,
                    mark(n),
                    mark(z),
                    mark(p)
                );
            }
        }
        Format::Json => {
            let mut rows = Vec::new();
            for row in &computed {
                rows.push(serde_json::json!({
                    "group": row.group.to_string(),
                    "negative": row.negative,
                    "zero": row.zero,
                    "positive": row.positive,
                    "source": "sampled",
                }));
            }
            for (g, n, z, p) in quoted {
                rows.push(serde_json::json!({
                    "group": g.to_string(),
                    "negative": n,
                    "zero": z,
                    "positive": p,
                    "source": "quoted",
                }));
            }
            println!("{}", serde_json::to_string_pretty(&rows).unwrap());
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_hsi(args: HsiArgs) -> Result<ExitCode, String> {
    let file = FileConfig::load(args.config.as_deref())?;
    let params = args.structure.resolve(&file)?;
    let metric = args
        .metric
        .or(file.metric)
        .unwrap_or_else(|| MetricCoeffs::diagonal(1.0, 1.0, 1.0).expect("identity"));
    let bundle = args
        .bundle
        .or(file.bundle)
        .unwrap_or_else(|| BundleMetricCoeffs::new(1.0, 1.0, 1.0).expect("identity"));
    let tau = args.tau.or(file.tau).unwrap_or(-1.0);
    let kappa = args.kappa.or(file.kappa).unwrap_or(-1.0);
    let alpha_prime = args.alpha_prime.or(file.alpha_prime).unwrap_or(0.0);

    let res = hsi_residuals(&params, &metric, &bundle, tau, kappa, alpha_prime)
        .map_err(|e| e.to_string())?;
    let body = serde_json::json!({
        "params": params,
        "metric": metric,
        "bundle": bundle,
        "tau": tau,
        "kappa": kappa,
        "alpha_prime": alpha_prime,
        "residuals": res,
        "max": res.max(),
    });
    let text = serde_json::to_string_pretty(&body).unwrap();
    if let Some(path) = &args.out {
        std::fs::write(path, &text).map_err(|e| e.to_string())?;
        println!("wrote residual report to {}", path.display());
    } else {
        println!("{text}");
    }
    Ok(ExitCode::SUCCESS)
}
