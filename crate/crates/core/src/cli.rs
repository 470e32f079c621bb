//! Command line front end.
//!
//! Exit codes: 0 on success, 1 on numerical failure (tolerance breach,
//! divergent quantity, unattainable step), 2 on configuration errors
//! (including flag parsing).

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::bounds;
use crate::channels::{probe_output, ChannelSpec, ProbeSpec};
use crate::divergences::{default_qfi_step, fidelity, qfi_finite_difference, relative_entropy, relative_entropy_variance};
use crate::error::{Error, Result};
use crate::fock::{dilation_output, moments_covariance, spectral_divergences, TruncationConfig};
use crate::linalg;
use crate::report::LogBase;
use crate::strategy::{bound_gap_report, monte_carlo_discrimination, StrategySpec};
use crate::thermal::{qfi_thermal, renyi_thermal, thermal_divergences, ThermalPair};
use crate::tol;

#[derive(Parser)]
#[command(
    name = "noisebound",
    version,
    about = "Fundamental limits for excess-noise discrimination in bosonic Gaussian channels"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Probe-level divergences against the environment-level limits
    Divergences(DivergencesArgs),
    /// Convergence of probe-level quantities to the limits over a list of N_S
    Sweep(SweepArgs),
    /// Exact photon-counting strategy versus the environment benchmark
    Strategy(StrategyArgs),
    /// Cross-check the covariance path against the number-basis oracle
    OracleCheck(OracleCheckArgs),
    /// Finite-difference quantum Fisher information against the limit
    Qfi(QfiArgs),
}

#[derive(Args)]
struct ChannelArgs {
    /// Transmissivity of the lossy thermal channel, in [0,1]
    #[arg(long)]
    eta: Option<f64>,
    /// Gain of the amplifier channel, ≥ 1
    #[arg(long, conflicts_with = "eta")]
    gain: Option<f64>,
    /// Environment mean photon number under the null hypothesis
    #[arg(long)]
    nb1: f64,
    /// Environment mean photon number under the alternative
    #[arg(long)]
    nb2: f64,
}

impl ChannelArgs {
    fn specs(&self) -> Result<(ChannelSpec, ChannelSpec)> {
        match (self.eta, self.gain) {
            (Some(eta), None) => Ok((
                ChannelSpec::thermal(eta, self.nb1)?,
                ChannelSpec::thermal(eta, self.nb2)?,
            )),
            (None, Some(gain)) => Ok((
                ChannelSpec::amplifier(gain, self.nb1)?,
                ChannelSpec::amplifier(gain, self.nb2)?,
            )),
            _ => Err(Error::Config(
                "exactly one of --eta or --gain is required".into(),
            )),
        }
    }
}

#[derive(Args)]
struct OutputArgs {
    /// Write the report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<OutputFormat>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Csv,
    Json,
}

#[derive(Args)]
struct DivergencesArgs {
    #[command(flatten)]
    channel: ChannelArgs,
    /// Probe mean photon number
    #[arg(long)]
    ns: f64,
    /// Rényi orders for the environment pair, comma separated
    #[arg(long, value_delimiter = ',')]
    alpha: Vec<f64>,
    #[arg(long, value_enum, default_value_t = LogBase::Nats)]
    log_base: LogBase,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    channel: ChannelArgs,
    /// Probe mean photon numbers, comma separated
    #[arg(long, value_delimiter = ',', required = true)]
    ns: Vec<f64>,
    /// Finite-difference step for the QFI column (default: automatic)
    #[arg(long)]
    delta: Option<f64>,
    #[arg(long, value_enum, default_value_t = LogBase::Nats)]
    log_base: LogBase,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct StrategyArgs {
    #[command(flatten)]
    channel: ChannelArgs,
    /// Probe mean photon number
    #[arg(long)]
    ns: f64,
    /// Number of probe uses
    #[arg(long)]
    m: u32,
    /// Type-I error budget, in (0,1)
    #[arg(long)]
    eps: f64,
    /// Seed for the optional Monte Carlo validation section
    #[arg(long)]
    seed: Option<u64>,
    /// Monte Carlo trials per hypothesis
    #[arg(long, default_value_t = 100_000)]
    trials: u64,
    #[arg(long, value_enum, default_value_t = LogBase::Nats)]
    log_base: LogBase,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct OracleCheckArgs {
    #[command(flatten)]
    channel: ChannelArgs,
    /// Probe mean photon number
    #[arg(long)]
    ns: f64,
    /// Per-mode cutoff (default: adaptive from the tail tolerance)
    #[arg(long)]
    nmax: Option<usize>,
    /// Admissible truncated mass per factor state
    #[arg(long, default_value_t = 1e-7)]
    tail_tol: f64,
    /// Rényi orders for the oracle families, comma separated
    #[arg(long, value_delimiter = ',')]
    alpha: Vec<f64>,
    #[arg(long, value_enum, default_value_t = LogBase::Nats)]
    log_base: LogBase,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct QfiArgs {
    /// Transmissivity of the lossy thermal channel, in [0,1]
    #[arg(long)]
    eta: Option<f64>,
    /// Gain of the amplifier channel, ≥ 1
    #[arg(long, conflicts_with = "eta")]
    gain: Option<f64>,
    /// Environment mean photon number at the evaluation point
    #[arg(long)]
    nb: f64,
    /// Probe mean photon number
    #[arg(long)]
    ns: f64,
    /// Finite-difference step (default: automatic)
    #[arg(long)]
    delta: Option<f64>,
    #[command(flatten)]
    output: OutputArgs,
}

/// Parse, run, map errors to exit codes.
pub fn main_entry() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match run(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Config(_) | Error::InvalidSpec(_) => 2,
                _ => 1,
            }
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Divergences(args) => run_divergences(args),
        Command::Sweep(args) => run_sweep(args),
        Command::Strategy(args) => run_strategy(args),
        Command::OracleCheck(args) => run_oracle_check(args),
        Command::Qfi(args) => run_qfi(args),
    }
}

/// Per-base multipliers: `lin` for log-scale quantities, `quad` for their
/// variances.
struct BaseScale {
    lin: f64,
    quad: f64,
}

impl BaseScale {
    fn of(base: LogBase) -> Self {
        match base {
            LogBase::Nats => Self { lin: 1.0, quad: 1.0 },
            LogBase::Bits => Self {
                lin: std::f64::consts::LN_2.recip(),
                quad: (std::f64::consts::LN_2 * std::f64::consts::LN_2).recip(),
            },
        }
    }
}

fn emit(text: String, out: &Option<PathBuf>) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Error::Config(format!("cannot write {}: {e}", path.display()))),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn sig(x: f64) -> String {
    format!("{x:.16e}")
}

fn csv_single(pairs: &[(String, String)]) -> String {
    let header: Vec<&str> = pairs.iter().map(|(k, _)| k.as_str()).collect();
    let row: Vec<&str> = pairs.iter().map(|(_, v)| v.as_str()).collect();
    format!("{}\n{}\n", header.join(","), row.join(","))
}

fn json_pretty(value: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serialization");
    s.push('\n');
    s
}

fn run_divergences(args: DivergencesArgs) -> Result<()> {
    let (c1, c2) = args.channel.specs()?;
    let scale = BaseScale::of(args.log_base);
    let g1 = probe_output(&c1, args.ns)?;
    let g2 = probe_output(&c2, args.ns)?;
    let d_gauss = relative_entropy(&g1, &g2)? * scale.lin;
    let v_gauss = relative_entropy_variance(&g1, &g2)? * scale.quad;
    let f_gauss = fidelity(&g1, &g2)?;
    let pair = ThermalPair::new(c1.n_b(), c2.n_b())?;
    let limit = thermal_divergences(pair)?.in_base(args.log_base);
    let renyi: Vec<(f64, f64)> = args
        .alpha
        .iter()
        .map(|&a| Ok((a, renyi_thermal(a, pair)? * scale.lin)))
        .collect::<Result<_>>()?;

    let renyi_json: Vec<serde_json::Value> = renyi
        .iter()
        .map(|&(a, v)| json!({"alpha": a, "value": v}))
        .collect();
    let doc = json!({
        "schema_version": 1,
        "command": "divergences",
        "log_base": args.log_base,
        "inputs": {"channel1": c1, "channel2": c2, "n_s": args.ns},
        "gaussian": {"d": d_gauss, "v": v_gauss, "f": f_gauss},
        "limit": {"d": limit.d, "v": limit.v, "f": limit.f},
        "gap": {
            "d": limit.d - d_gauss,
            "v": limit.v - v_gauss,
            "f": f_gauss - limit.f,
        },
        "renyi": renyi_json,
    });
    let text = match args.output.format.unwrap_or(OutputFormat::Json) {
        OutputFormat::Json => json_pretty(&doc),
        OutputFormat::Csv => {
            let mut pairs = vec![
                ("n_s".to_string(), sig(args.ns)),
                ("d_gauss".to_string(), sig(d_gauss)),
                ("v_gauss".to_string(), sig(v_gauss)),
                ("f_gauss".to_string(), sig(f_gauss)),
                ("d_limit".to_string(), sig(limit.d)),
                ("v_limit".to_string(), sig(limit.v)),
                ("f_limit".to_string(), sig(limit.f)),
                ("d_gap".to_string(), sig(limit.d - d_gauss)),
                ("v_gap".to_string(), sig(limit.v - v_gauss)),
                ("f_gap".to_string(), sig(f_gauss - limit.f)),
            ];
            for (a, v) in &renyi {
                pairs.push((format!("renyi_{a}"), sig(*v)));
            }
            csv_single(&pairs)
        }
    };
    emit(text, &args.output.out)
}

#[derive(Serialize)]
struct SweepRow {
    n_s: f64,
    d_gauss: f64,
    d_limit: f64,
    v_gauss: f64,
    v_limit: f64,
    f_gauss: f64,
    f_limit: f64,
    qfi_fd: f64,
    qfi_limit: f64,
    d_gap: f64,
    v_gap: f64,
    f_gap: f64,
    qfi_gap: f64,
}

const SWEEP_COLUMNS: [&str; 13] = [
    "n_s", "d_gauss", "d_limit", "v_gauss", "v_limit", "f_gauss", "f_limit", "qfi_fd",
    "qfi_limit", "d_gap", "v_gap", "f_gap", "qfi_gap",
];

fn sweep_row(
    c1: &ChannelSpec,
    c2: &ChannelSpec,
    n_s: f64,
    delta: Option<f64>,
    scale: &BaseScale,
) -> Result<SweepRow> {
    let g1 = probe_output(c1, n_s)?;
    let g2 = probe_output(c2, n_s)?;
    let d_gauss = relative_entropy(&g1, &g2)? * scale.lin;
    let v_gauss = relative_entropy_variance(&g1, &g2)? * scale.quad;
    let f_gauss = fidelity(&g1, &g2)?;
    let pair = ThermalPair::new(c1.n_b(), c2.n_b())?;
    let limit = thermal_divergences(pair)?;
    let (d_limit, v_limit, f_limit) = (limit.d * scale.lin, limit.v * scale.quad, limit.f);
    let x0 = c1.n_b();
    let family = |x: f64| probe_output(&c1.with_n_b(x)?, n_s);
    let step = delta.unwrap_or_else(|| default_qfi_step(x0));
    let qfi_fd = qfi_finite_difference(family, x0, step)?.richardson;
    let qfi_limit = qfi_thermal(x0)?;
    Ok(SweepRow {
        n_s,
        d_gauss,
        d_limit,
        v_gauss,
        v_limit,
        f_gauss,
        f_limit,
        qfi_fd,
        qfi_limit,
        d_gap: d_limit - d_gauss,
        v_gap: v_limit - v_gauss,
        f_gap: f_gauss - f_limit,
        qfi_gap: qfi_limit - qfi_fd,
    })
}

/// Least-squares slope of ln(gap) against ln(n_s); None with fewer than two
/// usable points.
fn loglog_slope(points: &[(f64, f64)]) -> Option<f64> {
    let usable: Vec<(f64, f64)> = points
        .iter()
        .filter(|&&(x, y)| x > 0.0 && y > 0.0 && y.is_finite())
        .map(|&(x, y)| (x.ln(), y.ln()))
        .collect();
    if usable.len() < 2 {
        return None;
    }
    let n = usable.len() as f64;
    let xm = usable.iter().map(|p| p.0).sum::<f64>() / n;
    let ym = usable.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = usable.iter().map(|p| (p.0 - xm) * (p.0 - xm)).sum();
    let sxy: f64 = usable.iter().map(|p| (p.0 - xm) * (p.1 - ym)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

fn run_sweep(args: SweepArgs) -> Result<()> {
    let (c1, c2) = args.channel.specs()?;
    let scale = BaseScale::of(args.log_base);
    // points evaluated concurrently, rows assembled in input order
    let rows: Vec<SweepRow> = args
        .ns
        .par_iter()
        .map(|&n_s| sweep_row(&c1, &c2, n_s, args.delta, &scale))
        .collect::<Result<_>>()?;

    let slope_of = |f: fn(&SweepRow) -> f64| {
        loglog_slope(&rows.iter().map(|r| (r.n_s, f(r))).collect::<Vec<_>>())
    };
    let slopes = [
        ("d_gap", slope_of(|r| r.d_gap)),
        ("v_gap", slope_of(|r| r.v_gap)),
        ("f_gap", slope_of(|r| r.f_gap)),
        ("qfi_gap", slope_of(|r| r.qfi_gap)),
    ];
    for (name, s) in &slopes {
        if s.is_none() {
            eprintln!("warning: too few usable points to fit the {name} slope; omitted");
        }
    }

    let text = match args.output.format.unwrap_or(OutputFormat::Csv) {
        OutputFormat::Csv => {
            let mut out = String::new();
            out.push_str(&SWEEP_COLUMNS.join(","));
            out.push('\n');
            for r in &rows {
                let cells = [
                    r.n_s, r.d_gauss, r.d_limit, r.v_gauss, r.v_limit, r.f_gauss, r.f_limit,
                    r.qfi_fd, r.qfi_limit, r.d_gap, r.v_gap, r.f_gap, r.qfi_gap,
                ];
                let cells: Vec<String> = cells.iter().map(|&x| sig(x)).collect();
                out.push_str(&cells.join(","));
                out.push('\n');
            }
            let fitted: Vec<String> = slopes
                .iter()
                .filter_map(|(name, s)| s.map(|v| format!("{name}={}", sig(v))))
                .collect();
            if !fitted.is_empty() {
                out.push_str(&format!("# log-log slope vs n_s: {}\n", fitted.join(" ")));
            }
            out
        }
        OutputFormat::Json => {
            let slopes_json: serde_json::Value = slopes
                .iter()
                .map(|&(name, s)| (name.to_string(), json!(s)))
                .collect::<serde_json::Map<_, _>>()
                .into();
            json_pretty(&json!({
                "schema_version": 1,
                "command": "sweep",
                "log_base": args.log_base,
                "inputs": {"channel1": c1, "channel2": c2, "n_s": args.ns},
                "rows": rows,
                "slopes": slopes_json,
            }))
        }
    };
    emit(text, &args.output.out)
}

fn run_strategy(args: StrategyArgs) -> Result<()> {
    let (c1, c2) = args.channel.specs()?;
    let scale = BaseScale::of(args.log_base);
    let probe = ProbeSpec::new(args.ns, args.m)?;
    let spec = StrategySpec::new(c1.clone(), c2.clone(), probe, args.eps)?;
    let res = bound_gap_report(&spec, args.ns)?;
    let m = u64::from(args.m);
    let cramer_rao = |nb: f64| (nb > 0.0).then(|| bounds::cramer_rao(m, nb)).transpose();
    let cr1 = cramer_rao(c1.n_b())?;
    let cr2 = cramer_rao(c2.n_b())?;
    let mc = match args.seed {
        Some(seed) if (res.n_eff_1 - res.n_eff_2).abs() > 0.0 => Some(
            monte_carlo_discrimination(m, res.n_eff_1, res.n_eff_2, args.eps, args.trials, seed)?,
        ),
        _ => None,
    };

    let doc = json!({
        "schema_version": 1,
        "command": "strategy",
        "log_base": args.log_base,
        "inputs": {
            "channel1": c1, "channel2": c2, "n_s": args.ns,
            "m": args.m, "epsilon": args.eps,
        },
        "result": {
            "n_eff_1": res.n_eff_1,
            "n_eff_2": res.n_eff_2,
            "dh_strategy": res.dh_strategy * scale.lin,
            "dh_environment": res.dh_environment * scale.lin,
            "second_order": res.second_order * scale.lin,
            "gap": res.gap * scale.lin,
        },
        "cramer_rao_floor": {"nb1": cr1, "nb2": cr2},
        "monte_carlo": mc,
    });
    let text = match args.output.format.unwrap_or(OutputFormat::Json) {
        OutputFormat::Json => json_pretty(&doc),
        OutputFormat::Csv => {
            let mut pairs = vec![
                ("n_s".to_string(), sig(args.ns)),
                ("m".to_string(), args.m.to_string()),
                ("epsilon".to_string(), sig(args.eps)),
                ("n_eff_1".to_string(), sig(res.n_eff_1)),
                ("n_eff_2".to_string(), sig(res.n_eff_2)),
                ("dh_strategy".to_string(), sig(res.dh_strategy * scale.lin)),
                ("dh_environment".to_string(), sig(res.dh_environment * scale.lin)),
                ("second_order".to_string(), sig(res.second_order * scale.lin)),
                ("gap".to_string(), sig(res.gap * scale.lin)),
            ];
            if let Some(mc) = &mc {
                pairs.push(("mc_type_i".to_string(), sig(mc.type_i_hat)));
                pairs.push(("mc_type_ii".to_string(), sig(mc.type_ii_hat)));
                pairs.push(("mc_beta_exact".to_string(), sig(mc.beta_exact)));
            }
            csv_single(&pairs)
        }
    };
    emit(text, &args.output.out)
}

fn run_oracle_check(args: OracleCheckArgs) -> Result<()> {
    let (c1, c2) = args.channel.specs()?;
    let scale = BaseScale::of(args.log_base);
    let cfg = match args.nmax {
        Some(n) => TruncationConfig::new(n, args.tail_tol)?,
        None => {
            let a = TruncationConfig::adaptive(&c1, args.ns, args.tail_tol)?;
            let b = TruncationConfig::adaptive(&c2, args.ns, args.tail_tol)?;
            TruncationConfig::new(a.n_max.max(b.n_max), args.tail_tol)?
        }
    };
    let rho1 = dilation_output(&c1, args.ns, &cfg)?;
    let rho2 = dilation_output(&c2, args.ns, &cfg)?;
    let g1 = probe_output(&c1, args.ns)?;
    let g2 = probe_output(&c2, args.ns)?;
    let moment_resid_1 = linalg::max_abs_diff(&moments_covariance(&rho1), g1.cov());
    let moment_resid_2 = linalg::max_abs_diff(&moments_covariance(&rho2), g2.cov());

    let spectral = spectral_divergences(&rho1, &rho2, &args.alpha)?;
    let d_gauss = relative_entropy(&g1, &g2)?;
    let v_gauss = relative_entropy_variance(&g1, &g2)?;
    let f_gauss = fidelity(&g1, &g2)?;
    let d_resid = (spectral.base.d - d_gauss).abs();
    let v_resid = (spectral.base.v - v_gauss).abs();
    let f_resid = (spectral.base.f - f_gauss).abs();
    let pass = moment_resid_1.max(moment_resid_2) <= tol::FOCK_MOMENT
        && d_resid.max(v_resid).max(f_resid) <= tol::ORACLE_AGREEMENT;

    let renyi_json = |family: &[(f64, f64)]| -> Vec<serde_json::Value> {
        family
            .iter()
            .map(|&(a, v)| json!({"alpha": a, "value": v * scale.lin}))
            .collect::<Vec<_>>()
    };
    let doc = json!({
        "schema_version": 1,
        "command": "oracle-check",
        "log_base": args.log_base,
        "inputs": {
            "channel1": c1, "channel2": c2, "n_s": args.ns,
            "n_max": cfg.n_max, "tail_tol": cfg.tail_tol,
        },
        "tail_mass": {"rho1": rho1.tail_mass(), "rho2": rho2.tail_mass()},
        "moment_residuals": {"rho1": moment_resid_1, "rho2": moment_resid_2},
        "gaussian": {"d": d_gauss * scale.lin, "v": v_gauss * scale.quad, "f": f_gauss},
        "oracle": {
            "d": spectral.base.d * scale.lin,
            "v": spectral.base.v * scale.quad,
            "f": spectral.base.f,
            "trace_distance": spectral.trace_distance,
        },
        "residuals": {"d": d_resid * scale.lin, "v": v_resid * scale.quad, "f": f_resid},
        "petz": renyi_json(&spectral.petz),
        "sandwiched": renyi_json(&spectral.sandwiched),
        "pass": pass,
    });
    let text = match args.output.format.unwrap_or(OutputFormat::Json) {
        OutputFormat::Json => json_pretty(&doc),
        OutputFormat::Csv => csv_single(&[
            ("n_s".to_string(), sig(args.ns)),
            ("n_max".to_string(), cfg.n_max.to_string()),
            ("moment_resid_1".to_string(), sig(moment_resid_1)),
            ("moment_resid_2".to_string(), sig(moment_resid_2)),
            ("d_resid".to_string(), sig(d_resid * scale.lin)),
            ("v_resid".to_string(), sig(v_resid * scale.quad)),
            ("f_resid".to_string(), sig(f_resid)),
            ("pass".to_string(), pass.to_string()),
        ]),
    };
    emit(text, &args.output.out)?;
    if pass {
        Ok(())
    } else {
        Err(Error::InvalidState(format!(
            "oracle disagreement: moments ({:.3e}, {:.3e}), d {:.3e}, v {:.3e}, f {:.3e}",
            moment_resid_1, moment_resid_2, d_resid, v_resid, f_resid
        )))
    }
}

fn run_qfi(args: QfiArgs) -> Result<()> {
    let spec = match (args.eta, args.gain) {
        (Some(eta), None) => ChannelSpec::thermal(eta, args.nb)?,
        (None, Some(gain)) => ChannelSpec::amplifier(gain, args.nb)?,
        _ => {
            return Err(Error::Config(
                "exactly one of --eta or --gain is required".into(),
            ))
        }
    };
    let family = |x: f64| probe_output(&spec.with_n_b(x)?, args.ns);
    let step = args.delta.unwrap_or_else(|| default_qfi_step(args.nb));
    let est = qfi_finite_difference(family, args.nb, step)?;
    let limit = (args.nb > 0.0).then(|| qfi_thermal(args.nb)).transpose()?;
    let rel_gap = limit.map(|l| (l - est.richardson) / l);

    let doc = json!({
        "schema_version": 1,
        "command": "qfi",
        "inputs": {"channel": spec, "n_s": args.ns, "delta": step},
        "estimate": {
            "from_sqrt": est.from_sqrt,
            "from_log": est.from_log,
            "richardson": est.richardson,
        },
        "limit": limit,
        "rel_gap": rel_gap,
    });
    let text = match args.output.format.unwrap_or(OutputFormat::Json) {
        OutputFormat::Json => json_pretty(&doc),
        OutputFormat::Csv => {
            let mut pairs = vec![
                ("n_s".to_string(), sig(args.ns)),
                ("nb".to_string(), sig(args.nb)),
                ("delta".to_string(), sig(step)),
                ("qfi_from_sqrt".to_string(), sig(est.from_sqrt)),
                ("qfi_from_log".to_string(), sig(est.from_log)),
                ("qfi_richardson".to_string(), sig(est.richardson)),
            ];
            if let Some(l) = limit {
                pairs.push(("qfi_limit".to_string(), sig(l)));
                pairs.push(("rel_gap".to_string(), sig(rel_gap.unwrap())));
            }
            csv_single(&pairs)
        }
    };
    emit(text, &args.output.out)
}
