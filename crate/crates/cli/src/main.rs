//! Command-line driver: classify exponent windows, run the degenerate-family
//! sweeps, probe extension-kernel tails, and exercise the identity checks.
//!
//! Exit codes: 0 on success, 2 when a mathematical check disagrees with its
//! prediction, 1 on usage/configuration/runtime errors.

mod config;
mod ladder;
mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};

use config::FileConfig;
use ladder::{parse_index, parse_ladder, Index};
use report::sig;
use restriction_lab::experiments::{
    classify_region, default_deltas, default_lambdas, dilation_p_probe,
    dimension_independence, grid_range, knapp_sweep, tensor_factorization_check,
    RegionConfig,
};
use restriction_lab::exponents::{torus_admissible, ExponentPair};
use restriction_lab::extension::{lp_tail_probe, GrowthClass};
use restriction_lab::functions::TestFunction;
use restriction_lab::norms::minkowski_check;
use restriction_lab::{ExponentPair64, RationalIndex};

#[derive(Parser, Debug)]
#[command(
    name = "restriction-lab",
    version,
    about = "Numerical laboratory for restriction-type inequalities on products of circles"
)]
struct Cli {
    /// `key = value` configuration file; explicit flags take precedence.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
    /// Directory for CSV/SVG artifacts (falls back to $RESTRICTION_LAB_OUT,
    /// then the config `out` key, then the current directory).
    #[arg(long, global = true, value_name = "DIR")]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Classify a (p, q) window empirically and compare with the predicate.
    Region(RegionArgs),
    /// Sweep the shrinking cap-tube family at one exponent pair.
    Knapp(SweepArgs),
    /// Sweep the concentrating frequency-shell family at one p.
    Dilation(DilationArgs),
    /// Probe tail integrability of the surface-measure extension kernel.
    ExtensionTail(TailArgs),
    /// Check that two-factor ratios factor into circle-level ratios.
    TensorCheck(TensorArgs),
    /// Re-run the region classification at several factor counts.
    DimensionCheck(DimensionArgs),
    /// Random-array check of the norm-interchange inequality.
    Minkowski(MinkowskiArgs),
}

#[derive(Args, Debug)]
struct WindowArgs {
    #[arg(long)]
    p_min: Option<f64>,
    #[arg(long)]
    p_max: Option<f64>,
    #[arg(long)]
    p_step: Option<f64>,
    #[arg(long)]
    q_min: Option<f64>,
    #[arg(long)]
    q_max: Option<f64>,
    #[arg(long)]
    q_step: Option<f64>,
}

#[derive(Args, Debug)]
struct FamilyArgs {
    /// Cap widths: `2^-2..2^-7` or a comma list.
    #[arg(long)]
    deltas: Option<String>,
    /// Concentration scales: `2..16` or a comma list.
    #[arg(long)]
    lambdas: Option<String>,
    /// Number of circle factors (ambient dimension is twice this).
    #[arg(long)]
    factors: Option<usize>,
    /// Blow-up threshold on fitted growth rates.
    #[arg(long)]
    threshold: Option<f64>,
    /// Euclidean deferral margin around the boundary curves.
    #[arg(long)]
    margin: Option<f64>,
    /// Nodes per circle (defaults to a resolution-safe value).
    #[arg(long)]
    nodes: Option<usize>,
}

#[derive(Args, Debug)]
struct RegionArgs {
    #[command(flatten)]
    window: WindowArgs,
    #[command(flatten)]
    family: FamilyArgs,
}

#[derive(Args, Debug)]
struct SweepArgs {
    /// Ambient Lebesgue index (accepts `a/b` for exact region answers).
    #[arg(long)]
    p: Option<String>,
    /// Surface Lebesgue index (accepts `a/b`).
    #[arg(long)]
    q: Option<String>,
    #[arg(long)]
    deltas: Option<String>,
    #[arg(long)]
    factors: Option<usize>,
    #[arg(long)]
    nodes: Option<usize>,
    /// Largest allowed |fitted - expected| before exiting with code 2.
    #[arg(long)]
    slope_tolerance: Option<f64>,
}

#[derive(Args, Debug)]
struct DilationArgs {
    #[arg(long)]
    p: Option<String>,
    #[arg(long)]
    lambdas: Option<String>,
    #[arg(long)]
    factors: Option<usize>,
    #[arg(long)]
    slope_tolerance: Option<f64>,
}

#[derive(Args, Debug)]
struct TailArgs {
    /// Dual index p' of the probed L^{p'} tail.
    #[arg(long)]
    p_prime: Option<f64>,
    /// Largest truncation radius; the probe halves it four times.
    #[arg(long)]
    rmax: Option<f64>,
    #[arg(long)]
    factors: Option<usize>,
    #[arg(long)]
    panel_nodes: Option<usize>,
}

#[derive(Args, Debug)]
struct TensorArgs {
    /// Cap width of the tube factor.
    #[arg(long)]
    delta: Option<f64>,
    /// Center angle of the tube factor, in [0, 1).
    #[arg(long)]
    angle: Option<f64>,
    /// Scale of the Gaussian factor.
    #[arg(long)]
    scale: Option<f64>,
    #[arg(long)]
    p: Option<String>,
    #[arg(long)]
    q: Option<String>,
    #[arg(long)]
    nodes: Option<usize>,
    #[arg(long)]
    gap_tolerance: Option<f64>,
}

#[derive(Args, Debug)]
struct DimensionArgs {
    #[command(flatten)]
    window: WindowArgs,
    #[command(flatten)]
    family: FamilyArgs,
    /// Factor counts 1..=N to compare.
    #[arg(long)]
    max_factors: Option<usize>,
}

#[derive(Args, Debug)]
struct MinkowskiArgs {
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    trials: Option<usize>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            use clap::error::ErrorKind;
            return match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    print!("{err}");
                    ExitCode::SUCCESS
                }
                _ => {
                    eprint!("{err}");
                    ExitCode::from(1)
                }
            };
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<bool> {
    let cfg = match &cli.config {
        Some(path) => FileConfig::load(path)?,
        None => FileConfig::default(),
    };
    let out = resolve_out(cli.out.clone(), &cfg);
    match &cli.command {
        Command::Region(a) => region(a, &cfg, &out),
        Command::Knapp(a) => knapp(a, &cfg, &out),
        Command::Dilation(a) => dilation(a, &cfg, &out),
        Command::ExtensionTail(a) => extension_tail(a, &cfg, &out),
        Command::TensorCheck(a) => tensor_check(a, &cfg),
        Command::DimensionCheck(a) => dimension_check(a, &cfg, &out),
        Command::Minkowski(a) => minkowski(a, &cfg),
    }
}

fn resolve_out(flag: Option<PathBuf>, cfg: &FileConfig) -> PathBuf {
    flag.or_else(|| std::env::var_os("RESTRICTION_LAB_OUT").map(PathBuf::from))
        .or_else(|| cfg.get("out").map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("."))
}

fn resolve_f64(flag: Option<f64>, cfg: &FileConfig, key: &str, default: f64) -> Result<f64> {
    match flag {
        Some(v) => Ok(v),
        None => Ok(cfg.parse::<f64>(key)?.unwrap_or(default)),
    }
}

fn resolve_usize(
    flag: Option<usize>,
    cfg: &FileConfig,
    key: &str,
    default: usize,
) -> Result<usize> {
    match flag {
        Some(v) => Ok(v),
        None => Ok(cfg.parse::<usize>(key)?.unwrap_or(default)),
    }
}

fn resolve_opt_usize(
    flag: Option<usize>,
    cfg: &FileConfig,
    key: &str,
) -> Result<Option<usize>> {
    match flag {
        Some(v) => Ok(Some(v)),
        None => cfg.parse::<usize>(key),
    }
}

fn resolve_index(
    flag: &Option<String>,
    cfg: &FileConfig,
    key: &str,
    default: &str,
) -> Result<Index> {
    let raw = flag.as_deref().or_else(|| cfg.get(key)).unwrap_or(default);
    parse_index(raw).with_context(|| format!("value for `{key}`"))
}

fn resolve_ladder(
    flag: &Option<String>,
    cfg: &FileConfig,
    key: &str,
    default: Vec<f64>,
) -> Result<Vec<f64>> {
    match flag.as_deref().or_else(|| cfg.get(key)) {
        Some(raw) => parse_ladder(raw).with_context(|| format!("value for `{key}`")),
        None => Ok(default),
    }
}

fn window_grids(w: &WindowArgs, cfg: &FileConfig) -> Result<(Vec<f64>, Vec<f64>)> {
    let p_min = resolve_f64(w.p_min, cfg, "p-min", 1.0)?;
    let p_max = resolve_f64(w.p_max, cfg, "p-max", 1.6)?;
    let p_step = resolve_f64(w.p_step, cfg, "p-step", 0.05)?;
    let q_min = resolve_f64(w.q_min, cfg, "q-min", 1.0)?;
    let q_max = resolve_f64(w.q_max, cfg, "q-max", 4.0)?;
    let q_step = resolve_f64(w.q_step, cfg, "q-step", 0.05)?;
    Ok((
        grid_range(p_min, p_max, p_step)?,
        grid_range(q_min, q_max, q_step)?,
    ))
}

fn family_config(f: &FamilyArgs, cfg: &FileConfig) -> Result<RegionConfig<f64>> {
    Ok(RegionConfig {
        deltas: resolve_ladder(&f.deltas, cfg, "deltas", default_deltas())?,
        lambdas: resolve_ladder(&f.lambdas, cfg, "lambdas", default_lambdas())?,
        factors: resolve_usize(f.factors, cfg, "factors", 2)?,
        threshold: resolve_f64(f.threshold, cfg, "threshold", 0.05)?,
        boundary_margin: resolve_f64(f.margin, cfg, "margin", 0.05)?,
        nodes: resolve_opt_usize(f.nodes, cfg, "nodes")?,
    })
}

/// The exact region answer when both indices were given as rationals, else
/// the float-tolerance answer.
fn predicted_admissible(p: &Index, q: &Index) -> Result<(bool, &'static str)> {
    if let (Some(pe), Some(qe)) = (p.exact, q.exact) {
        let pair = ExponentPair::<RationalIndex>::new(pe, qe)?;
        Ok((torus_admissible(&pair), " (exact)"))
    } else {
        let pair = ExponentPair64::new(p.value, q.value)?;
        Ok((torus_admissible(&pair), ""))
    }
}

fn region(a: &RegionArgs, cfg: &FileConfig, out: &Path) -> Result<bool> {
    let (p_grid, q_grid) = window_grids(&a.window, cfg)?;
    let rc = family_config(&a.family, cfg)?;
    let table = classify_region(&p_grid, &q_grid, &rc)?;

    let csv = out.join("region.csv");
    report::write_text(&csv, &report::region_csv(&table))?;
    let svg = out.join("region.svg");
    report::write_text(&svg, &report::region_svg(&table, &p_grid, &q_grid))?;

    let deferred = table.cells.len() - table.non_boundary;
    println!(
        "cells: {} ({} non-boundary, {} deferred)",
        table.cells.len(),
        table.non_boundary,
        deferred
    );
    if table.agreement == 1.0 {
        println!("agreement 100% (non-boundary)");
    } else {
        println!(
            "agreement {}% (non-boundary)",
            sig(100.0 * table.agreement)
        );
    }
    println!("wrote {} and {}", csv.display(), svg.display());
    Ok(table.agreement == 1.0)
}

fn knapp(a: &SweepArgs, cfg: &FileConfig, out: &Path) -> Result<bool> {
    let p = resolve_index(&a.p, cfg, "p", "6/5")?;
    let q = resolve_index(&a.q, cfg, "q", "1")?;
    let deltas = resolve_ladder(&a.deltas, cfg, "deltas", default_deltas())?;
    let factors = resolve_usize(a.factors, cfg, "factors", 2)?;
    let nodes = resolve_opt_usize(a.nodes, cfg, "nodes")?;
    let tol = resolve_f64(a.slope_tolerance, cfg, "slope-tolerance", 0.05)?;

    let pair = ExponentPair64::new(p.value, q.value)?;
    let sweep = knapp_sweep(&pair, &deltas, factors, nodes)?;
    let csv = out.join("knapp.csv");
    report::write_text(&csv, &report::sweep_csv(&sweep))?;
    let svg = out.join("knapp.svg");
    report::write_text(&svg, &report::sweep_svg(&sweep))?;

    let (adm, how) = predicted_admissible(&p, &q)?;
    println!("family: {}", sweep.family);
    println!(
        "p = {}, q = {} — predicted {}{how}",
        p.value,
        q.value,
        if adm { "admissible" } else { "inadmissible" }
    );
    let residual = if sweep.residual_rms < 0.05 {
        "<0.05".to_string()
    } else {
        format!("{:.4}", sweep.residual_rms)
    };
    println!(
        "fitted {:.2} expected {:.2} residual {residual}",
        sweep.fit_slope, sweep.expected_fit_slope
    );
    println!(
        "fit slope {} expected {} blow-up rate {}",
        sig(sweep.fit_slope),
        sig(sweep.expected_fit_slope),
        sig(sweep.blowup_slope)
    );
    println!("wrote {} and {}", csv.display(), svg.display());
    Ok((sweep.fit_slope - sweep.expected_fit_slope).abs() <= tol)
}

fn dilation(a: &DilationArgs, cfg: &FileConfig, out: &Path) -> Result<bool> {
    let p = resolve_index(&a.p, cfg, "p", "3/2")?;
    let lambdas = resolve_ladder(&a.lambdas, cfg, "lambdas", default_lambdas())?;
    let factors = resolve_usize(a.factors, cfg, "factors", 2)?;
    let tol = resolve_f64(a.slope_tolerance, cfg, "slope-tolerance", 0.05)?;

    // The surface norm of this family is identically 1, so q is immaterial.
    let pair = ExponentPair64::new(p.value, 1.0)?;
    let sweep = dilation_p_probe(&pair, &lambdas, factors)?;
    let csv = out.join("dilation.csv");
    report::write_text(&csv, &report::sweep_csv(&sweep))?;
    let svg = out.join("dilation.svg");
    report::write_text(&svg, &report::sweep_svg(&sweep))?;

    println!("family: {}", sweep.family);
    println!(
        "p = {} — ratio growth expected {:.4} (positive exactly when p > 4/3)",
        p.value, sweep.expected_fit_slope
    );
    let residual = if sweep.residual_rms < 0.05 {
        "<0.05".to_string()
    } else {
        format!("{:.4}", sweep.residual_rms)
    };
    println!(
        "fitted {:.2} expected {:.2} residual {residual}",
        sweep.fit_slope, sweep.expected_fit_slope
    );
    println!(
        "fit slope {} expected {} blow-up rate {}",
        sig(sweep.fit_slope),
        sig(sweep.expected_fit_slope),
        sig(sweep.blowup_slope)
    );
    println!("wrote {} and {}", csv.display(), svg.display());
    Ok((sweep.fit_slope - sweep.expected_fit_slope).abs() <= tol)
}

fn extension_tail(a: &TailArgs, cfg: &FileConfig, out: &Path) -> Result<bool> {
    let p_prime = resolve_f64(a.p_prime, cfg, "p-prime", 4.5)?;
    let rmax = resolve_f64(a.rmax, cfg, "rmax", 200.0)?;
    let factors = resolve_usize(a.factors, cfg, "factors", 2)?;
    let panel_nodes = resolve_usize(a.panel_nodes, cfg, "panel-nodes", 24)?;

    let radii: Vec<f64> = (0..=4).map(|i| rmax / f64::powi(2.0, 4 - i)).collect();
    let probe = lp_tail_probe(p_prime, &radii, factors, panel_nodes)?;
    let csv = out.join("tail.csv");
    report::write_text(&csv, &report::tail_csv(&probe.radii, &probe.truncated_norms))?;

    println!("p' = {p_prime}, factors = {factors}");
    println!("classification: {}", probe.growth_class);
    println!(
        "density slope {} (fit residual {})",
        sig(probe.density_slope),
        sig(probe.fit_residual)
    );
    println!("wrote {}", csv.display());

    // Consistency with the exact integrability threshold: annulus mass
    // scales like R^{2 - p'/2}, so away from the classifier's margin the
    // verdict is forced.
    let gamma = 2.0 - p_prime / 2.0;
    let expected = if gamma < -0.17 {
        Some(GrowthClass::Converged)
    } else if gamma > 0.17 {
        Some(GrowthClass::Polynomial)
    } else if gamma.abs() < 0.13 {
        Some(GrowthClass::Logarithmic)
    } else {
        None
    };
    Ok(expected.is_none_or(|e| e == probe.growth_class))
}

fn tensor_check(a: &TensorArgs, cfg: &FileConfig) -> Result<bool> {
    let delta = resolve_f64(a.delta, cfg, "delta", 0.125)?;
    let angle = resolve_f64(a.angle, cfg, "angle", 0.0)?;
    let scale = resolve_f64(a.scale, cfg, "scale", 1.0)?;
    let p = resolve_index(&a.p, cfg, "p", "6/5")?;
    let q = resolve_index(&a.q, cfg, "q", "2")?;
    let nodes = resolve_usize(a.nodes, cfg, "nodes", 64)?;
    let tol = resolve_f64(a.gap_tolerance, cfg, "gap-tolerance", 1e-10)?;

    let g = TestFunction::knapp_tube(delta, angle)?;
    let h = TestFunction::gaussian(scale, 2)?;
    let pair = ExponentPair64::new(p.value, q.value)?;
    let gap = tensor_factorization_check(&g, &h, &pair, nodes)?;
    println!(
        "two-factor ratio vs product of circle ratios: relative gap {} (tolerance {:.0e})",
        sig(gap),
        tol
    );
    Ok(gap <= tol)
}

fn dimension_check(a: &DimensionArgs, cfg: &FileConfig, out: &Path) -> Result<bool> {
    let (p_grid, q_grid) = window_grids(&a.window, cfg)?;
    let rc = family_config(&a.family, cfg)?;
    let max_factors = resolve_usize(a.max_factors, cfg, "max-factors", 3)?;
    let counts: Vec<usize> = (1..=max_factors.max(1)).collect();
    let rep = dimension_independence(&counts, &p_grid, &q_grid, &rc)?;

    let mut csv = String::from("factors,p,q,empirical,predicted\n");
    for (n, run) in counts.iter().zip(&rep.runs) {
        for c in &run.cells {
            use std::fmt::Write as _;
            let _ = writeln!(
                csv,
                "{n},{},{},{},{}",
                sig(c.p),
                sig(c.q),
                c.empirical,
                if c.predicted_admissible {
                    "admissible"
                } else {
                    "inadmissible"
                }
            );
        }
    }
    let path = out.join("dimension.csv");
    report::write_text(&path, &csv)?;

    for (n, run) in counts.iter().zip(&rep.runs) {
        let agreement = if run.agreement == 1.0 {
            "100".to_string()
        } else {
            sig(100.0 * run.agreement)
        };
        println!(
            "factors {n}: agreement {agreement}% on {} non-boundary cells",
            run.non_boundary
        );
    }
    match rep.first_divergence {
        None => println!("classification tables identical across factor counts"),
        Some((p, q)) => println!("tables diverge at (p, q) = ({p}, {q})"),
    }
    println!("wrote {}", path.display());
    Ok(rep.identical)
}

fn minkowski(a: &MinkowskiArgs, cfg: &FileConfig) -> Result<bool> {
    let seed = match a.seed {
        Some(s) => s,
        None => cfg.parse::<u64>("seed")?.unwrap_or(7),
    };
    let trials = resolve_usize(a.trials, cfg, "trials", 1000)?;

    // Small multiplicative congruential generator; the test only needs
    // well-spread deterministic samples.
    let mut state = seed.wrapping_mul(2862933555777941757).wrapping_add(3037000493);
    let mut next = move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        (state >> 11) as f64 / (1u64 << 53) as f64
    };

    let mut ok = true;
    let mut worst = f64::NEG_INFINITY;
    for _ in 0..trials {
        let ns = 2 + (next() * 3.0) as usize;
        let na = 2 + (next() * 3.0) as usize;
        let values: Vec<f64> = (0..ns * na).map(|_| 10.0 * next()).collect();
        let sw: Vec<f64> = (0..ns).map(|_| 0.01 + next()).collect();
        let aw: Vec<f64> = (0..na).map(|_| 0.01 + next()).collect();
        let p = 1.0 + 2.0 * next();
        let q = p + 2.0 * next();
        let rep = minkowski_check(&values, &sw, &aw, p, q)?;
        worst = worst.max((rep.lhs - rep.rhs) / rep.rhs.max(1e-300));
        ok &= rep.holds && rep.guaranteed;
    }
    println!(
        "{trials} random interchange trials (seed {seed}): worst signed violation {}",
        sig(worst)
    );
    println!("verdict: {}", if ok { "holds" } else { "VIOLATED" });
    Ok(ok)
}
