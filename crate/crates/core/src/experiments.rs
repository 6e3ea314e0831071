//! Sweep experiments probing where the restriction inequality can hold: the
//! empirical constant `‖f̂|_{T^n}‖_{L^q(σ)} / ‖f‖_{L^p}` is tracked along
//! one-parameter families and its growth rate is fitted.
//!
//! Two independent families witness the two boundary curves. Shrinking-cap
//! tube tensors (`δ → 0`) feel the `q ≤ p'/3` constraint: the ratio scales
//! like `δ^{n(1/q − 3/p')}`. Concentrating frequency-shell dilations
//! (`λ → ∞`) feel the `p < 4/3` constraint: their restricted transform is
//! identically 1 while the ambient norm shrinks like `λ^{2/p − 3/2}` per
//! factor, so the ratio grows like `λ^{n(3/2 − 2/p)}`.

use crate::error::{Error, Result};
use crate::exponents::{torus_admissible, ExponentPair};
use crate::extension::bessel_j0;
use crate::fourier::restrict_ft_to_torus;
use crate::functions::TestFunction;
use crate::geometry::TorusGrid;
use crate::norms::lq_surface_norm;
use crate::numeric::{cast, gauss_legendre_on, log_log_fit, KahanSum, LineFit};
use crate::scalar::{Float, IndexScalar};

/// One `(parameter, ratio)` sample of a sweep.
#[derive(Clone, Copy, Debug)]
pub struct SweepRow<T> {
    pub parameter: T,
    pub ratio: T,
}

/// A fitted one-parameter sweep of the restriction ratio.
#[derive(Clone, Debug)]
pub struct SweepResult<T> {
    pub family: String,
    pub p: T,
    pub q: T,
    /// Name of the swept parameter ("delta" or "lambda").
    pub parameter_name: &'static str,
    pub rows: Vec<SweepRow<T>>,
    /// Least-squares slope of `log ratio` against `log parameter`, over the
    /// `fit_points` rows closest to the degenerate limit.
    pub fit_slope: T,
    /// The closed-form prediction for `fit_slope`.
    pub expected_fit_slope: T,
    /// Growth rate of the ratio as the family degenerates (`δ → 0` means
    /// `−fit_slope`; `λ → ∞` means `+fit_slope`). Positive growth witnesses
    /// inadmissibility.
    pub blowup_slope: T,
    /// RMS log-space residual of the fit.
    pub residual_rms: T,
    pub fit_points: usize,
}

/// Empirical restriction ratio of a single function:
/// `‖f̂|_{T^n}‖_{L^q(σ_n)} / ‖f‖_{L^p(R^{2n})}` at the grid's resolution.
pub fn ratio<T: Float + IndexScalar>(
    f: &TestFunction<T>,
    pair: &ExponentPair<T>,
    grid: &TorusGrid<T>,
) -> Result<T> {
    let samples = restrict_ft_to_torus(f, grid)?;
    let numerator = lq_surface_norm(&samples, pair.q())?;
    let denominator = f.lp_norm_closed_form(pair.p())?;
    if !(denominator > T::zero()) {
        return Err(Error::ZeroNorm("ambient norm of the test function".into()));
    }
    if !(numerator > T::zero()) {
        return Err(Error::ZeroNorm("restricted transform".into()));
    }
    Ok(numerator / denominator)
}

/// `3/p'` computed as `3(1 − 1/p)`, finite for every `p ≥ 1`.
fn three_over_p_prime<T: Float>(p: T) -> T {
    cast::<T>(3.0) * (T::one() - T::one() / p)
}

/// Per-circle restriction ratio of a planar family, used to assemble
/// tensor-power ratios without materializing product grids.
fn circle_ratio<T: Float + IndexScalar>(
    g: &TestFunction<T>,
    grid: &TorusGrid<T>,
    p: T,
    q: T,
) -> Result<T> {
    let samples = restrict_ft_to_torus(g, grid)?;
    let numerator = lq_surface_norm(&samples, q)?;
    let denominator = g.lp_norm_closed_form(p)?;
    if !(numerator > T::zero()) || !(denominator > T::zero()) {
        return Err(Error::ZeroNorm("circle-factor ratio".into()));
    }
    Ok(numerator / denominator)
}

fn resolution_for<T: Float>(delta_min: T, requested: Option<usize>) -> Result<usize> {
    let needed = (cast::<T>(8.0) * cast::<T>(2.0) * T::PI() / delta_min)
        .ceil()
        .to_f64()
        .unwrap_or(f64::INFINITY) as usize;
    let auto = needed.max(256);
    match requested {
        None => Ok(auto),
        Some(n) => {
            // Hard floor: at least four nodes inside the smallest cap.
            let minimum = (cast::<T>(4.0) * cast::<T>(2.0) * T::PI() / delta_min)
                .ceil()
                .to_f64()
                .unwrap_or(f64::INFINITY) as usize;
            if n < minimum {
                Err(Error::UnderResolvedGrid(format!(
                    "{n} nodes per circle cannot resolve width {delta_min} (need >= {minimum})"
                )))
            } else {
                Ok(n)
            }
        }
    }
}

/// The dyadic width ladder `2^-2, …, 2^-7`.
pub fn default_deltas<T: Float>() -> Vec<T> {
    (2..=7).map(|k| cast::<T>(f64::powi(2.0, -k))).collect()
}

/// The half-dyadic concentration ladder `2, 2√2, 4, …, 16`.
pub fn default_lambdas<T: Float>() -> Vec<T> {
    (2..=8)
        .map(|k| cast::<T>(f64::powf(2.0, k as f64 / 2.0)))
        .collect()
}

/// Sweeps the tube family over shrinking cap widths at fixed `(p, q)` and
/// fits the power law of the ratio in `δ`. The tensor of `factors` identical
/// planar tubes is evaluated through per-circle norms (the factorization is
/// exact for separable functions and separately guarded by
/// [`tensor_factorization_check`]). The two coarsest widths sit visibly
/// short of the asymptotic regime, so the fit uses the four finest.
pub fn knapp_sweep<T: Float + IndexScalar>(
    pair: &ExponentPair<T>,
    deltas: &[T],
    factors: usize,
    nodes: Option<usize>,
) -> Result<SweepResult<T>> {
    if factors == 0 {
        return Err(Error::InvalidParameter(
            "sweep needs at least one circle factor".into(),
        ));
    }
    if deltas.len() < 4 {
        return Err(Error::InvalidParameter(format!(
            "width sweep needs at least 4 widths, got {}",
            deltas.len()
        )));
    }
    let quarter = T::one() / cast::<T>(4.0);
    if deltas
        .iter()
        .any(|&d| !(d > T::zero()) || d > quarter)
        || deltas.windows(2).any(|w| w[1] >= w[0])
    {
        return Err(Error::InvalidParameter(
            "widths must lie in (0, 1/4] and decrease strictly".into(),
        ));
    }
    let delta_min = *deltas.last().expect("nonempty");
    let n_nodes = resolution_for(delta_min, nodes)?;
    let grid = TorusGrid::new(1, n_nodes)?;

    let mut rows = Vec::with_capacity(deltas.len());
    for &d in deltas {
        let g = TestFunction::knapp_tube(d, T::zero())?;
        let r1 = circle_ratio(&g, &grid, pair.p(), pair.q())?;
        rows.push(SweepRow {
            parameter: d,
            ratio: r1.powi(factors as i32),
        });
    }

    let fit_points = 4usize;
    let fit = fit_tail(&rows, fit_points)?;
    let nf = cast::<T>(factors as f64);
    let expected = nf * (T::one() / pair.q() - three_over_p_prime(pair.p()));
    Ok(SweepResult {
        family: format!("cap-tube tensor x{factors}"),
        p: pair.p(),
        q: pair.q(),
        parameter_name: "delta",
        rows,
        fit_slope: fit.slope,
        expected_fit_slope: expected,
        blowup_slope: -fit.slope,
        residual_rms: fit.residual_rms,
        fit_points,
    })
}

/// Sweeps the concentrating frequency-shell family over growing `λ`. Each
/// factor's transform is `exp(−πλ²(|ξ|−1)²)`, identically 1 on its circle,
/// so the surface norm is 1 for every `q` and only the ambient `L^p` norm
/// moves. That norm is computed radially from the kernel
/// `g_λ(r) = 2π ∫ exp(−πλ²(ρ−1)²) J₀(2πρr) ρ dρ`.
pub fn dilation_p_probe<T: Float + IndexScalar>(
    pair: &ExponentPair<T>,
    lambdas: &[T],
    factors: usize,
) -> Result<SweepResult<T>> {
    if factors == 0 {
        return Err(Error::InvalidParameter(
            "sweep needs at least one circle factor".into(),
        ));
    }
    if lambdas.len() < 4 {
        return Err(Error::InvalidParameter(format!(
            "concentration sweep needs at least 4 scales, got {}",
            lambdas.len()
        )));
    }
    if lambdas.iter().any(|&l| l < T::one()) || lambdas.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidParameter(
            "concentration scales must be >= 1 and strictly increasing".into(),
        ));
    }

    let mut rows = Vec::with_capacity(lambdas.len());
    for &lambda in lambdas {
        let denom = shell_lp_norms(lambda, &[pair.p()])?[0];
        rows.push(SweepRow {
            parameter: lambda,
            ratio: denom.powi(-(factors as i32)),
        });
    }

    let fit_points = rows.len();
    let fit = fit_tail(&rows, fit_points)?;
    let nf = cast::<T>(factors as f64);
    let expected = nf * (cast::<T>(1.5) - cast::<T>(2.0) / pair.p());
    Ok(SweepResult {
        family: format!("frequency-shell dilation x{factors}"),
        p: pair.p(),
        q: pair.q(),
        parameter_name: "lambda",
        rows,
        fit_slope: fit.slope,
        expected_fit_slope: expected,
        blowup_slope: fit.slope,
        residual_rms: fit.residual_rms,
        fit_points,
    })
}

/// Fits `log ratio ~ log parameter` over the last `points` rows.
fn fit_tail<T: Float>(rows: &[SweepRow<T>], points: usize) -> Result<LineFit<T>> {
    let start = rows.len().saturating_sub(points);
    let xs: Vec<T> = rows[start..].iter().map(|r| r.parameter).collect();
    let ys: Vec<T> = rows[start..].iter().map(|r| r.ratio).collect();
    log_log_fit(&xs, &ys)
}

/// Spatial kernel of the frequency shell at the given radii.
fn shell_kernel<T: Float>(lambda: T, radii: &[T]) -> Vec<T> {
    // The profile exp(−πλ²(ρ−1)²) is below 2e-22 outside |ρ−1| ≤ 4/λ, so a
    // clamped window loses nothing at working precision. 128 nodes resolve
    // the oscillation J₀(2πρr) across the window for every r ≤ 4λ.
    let lo = (T::one() - cast::<T>(4.0) / lambda).max(T::zero());
    let hi = T::one() + cast::<T>(4.0) / lambda;
    let (nodes, weights) = gauss_legendre_on(128, lo, hi);
    let two_pi = cast::<T>(2.0) * T::PI();
    let profile: Vec<T> = nodes
        .iter()
        .zip(&weights)
        .map(|(&rho, &w)| {
            let d = rho - T::one();
            w * (-T::PI() * lambda * lambda * d * d).exp() * rho
        })
        .collect();
    radii
        .iter()
        .map(|&r| {
            let mut acc = KahanSum::<T>::new();
            for (&rho, &c) in nodes.iter().zip(&profile) {
                let kernel = bessel_j0(two_pi * rho * r).expect("nonnegative radius");
                acc.add(c * kernel);
            }
            two_pi * acc.value()
        })
        .collect()
}

/// `L^p(R²)` norms of the shell kernel for each requested `p`, sharing one
/// radial evaluation. Panels of width 1/4 keep the kernel's sign changes at
/// panel scale.
fn shell_lp_norms<T: Float>(lambda: T, ps: &[T]) -> Result<Vec<T>> {
    let r_max = cast::<T>(4.0) * lambda;
    let panel = cast::<T>(0.25);
    let count = (r_max / panel).ceil().to_f64().unwrap_or(0.0) as usize;
    let mut rs = Vec::new();
    let mut ws = Vec::new();
    for i in 0..count {
        let a = panel * cast::<T>(i as f64);
        let b = (a + panel).min(r_max);
        let (nodes, weights) = gauss_legendre_on(12, a, b);
        rs.extend(nodes);
        ws.extend(weights);
    }
    let g = shell_kernel(lambda, &rs);
    let two_pi = cast::<T>(2.0) * T::PI();
    ps.iter()
        .map(|&p| {
            if !(p >= T::one() - cast::<T>(1e-12)) {
                return Err(Error::InvalidParameter(format!(
                    "Lebesgue index must be >= 1, got {p}"
                )));
            }
            let mut acc = KahanSum::<T>::new();
            for ((&r, &w), &gv) in rs.iter().zip(&ws).zip(&g) {
                acc.add(w * two_pi * r * gv.abs().powf(p));
            }
            let norm = acc.value().powf(T::one() / p);
            if !(norm > T::zero()) {
                return Err(Error::ZeroNorm("shell kernel".into()));
            }
            Ok(norm)
        })
        .collect()
}

/// Empirical verdict for one exponent cell.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CellClass {
    /// No probed family shows ratio growth beyond the threshold.
    Admissible,
    /// Some family's ratio grows: the inequality cannot hold here.
    Inadmissible,
    /// Within the safety margin of a boundary curve; deferred.
    Boundary,
}

impl std::fmt::Display for CellClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            CellClass::Admissible => "admissible",
            CellClass::Inadmissible => "inadmissible",
            CellClass::Boundary => "boundary",
        })
    }
}

#[derive(Clone, Copy, Debug)]
pub struct RegionCell<T> {
    pub p: T,
    pub q: T,
    /// Fitted ratio growth of the cap-tube family as `δ → 0`.
    pub cap_blowup: T,
    /// Fitted ratio growth of the shell family as `λ → ∞`.
    pub dilation_blowup: T,
    pub empirical: CellClass,
    pub predicted_admissible: bool,
    /// Agreement with the predicate; `None` on boundary cells.
    pub agrees: Option<bool>,
}

#[derive(Clone, Debug)]
pub struct RegionClassification<T> {
    pub factors: usize,
    pub threshold: T,
    pub boundary_margin: T,
    pub cells: Vec<RegionCell<T>>,
    pub non_boundary: usize,
    /// Fraction of non-boundary cells whose empirical class matches the
    /// predicate.
    pub agreement: T,
}

/// Tuning for [`classify_region`].
#[derive(Clone, Debug)]
pub struct RegionConfig<T> {
    pub deltas: Vec<T>,
    pub lambdas: Vec<T>,
    pub factors: usize,
    /// Fitted-growth threshold above which a cell is flagged inadmissible.
    pub threshold: T,
    /// Euclidean distance to a boundary curve below which a cell is deferred.
    pub boundary_margin: T,
    pub nodes: Option<usize>,
}

impl<T: Float> Default for RegionConfig<T> {
    fn default() -> Self {
        Self {
            deltas: default_deltas(),
            lambdas: default_lambdas(),
            factors: 2,
            threshold: cast::<T>(0.05),
            boundary_margin: cast::<T>(0.05),
            nodes: None,
        }
    }
}

/// Euclidean distance from `(p, q)` to the union of the two boundary curves:
/// the vertical segment `p = 4/3, q ∈ [1, 4/3]` and the curve `q = p'/3`
/// (equivalently `p = 3q/(3q−1)`) for `q ≥ 4/3`. The curved piece is
/// minimized by dense sampling plus ternary refinement.
pub fn boundary_distance<T: Float>(p: T, q: T) -> T {
    let four_thirds = cast::<T>(4.0) / cast::<T>(3.0);
    // Vertical segment.
    let dp = p - four_thirds;
    let seg = if q <= four_thirds {
        dp.abs()
    } else {
        let dq = q - four_thirds;
        (dp * dp + dq * dq).sqrt()
    };

    // Curved piece, parametrized by its q coordinate on [4/3, 4.5].
    let dist_at = |qs: T| {
        let ps = cast::<T>(3.0) * qs / (cast::<T>(3.0) * qs - T::one());
        let dx = p - ps;
        let dy = q - qs;
        (dx * dx + dy * dy).sqrt()
    };
    let lo = four_thirds;
    let hi = cast::<T>(4.5);
    let samples = 600;
    let mut best_i = 0usize;
    let mut best = T::infinity();
    for i in 0..=samples {
        let t = cast::<T>(i as f64 / samples as f64);
        let qs = lo + (hi - lo) * t;
        let d = dist_at(qs);
        if d < best {
            best = d;
            best_i = i;
        }
    }
    let step = (hi - lo) / cast::<T>(samples as f64);
    let mut a = lo + step * cast::<T>(best_i.saturating_sub(1) as f64);
    let mut b = (lo + step * cast::<T>((best_i + 1) as f64)).min(hi);
    for _ in 0..70 {
        let third = (b - a) / cast::<T>(3.0);
        let m1 = a + third;
        let m2 = b - third;
        if dist_at(m1) <= dist_at(m2) {
            b = m2;
        } else {
            a = m1;
        }
    }
    let curve = dist_at((a + b) / cast::<T>(2.0));
    seg.min(curve)
}

/// Classifies every cell of a `(p, q)` grid by fitting both families' ratio
/// growth, defers cells within the margin of the boundary curves, and
/// reports agreement with the exact region predicate.
pub fn classify_region<T: Float + IndexScalar>(
    p_grid: &[T],
    q_grid: &[T],
    cfg: &RegionConfig<T>,
) -> Result<RegionClassification<T>> {
    if p_grid.is_empty() || q_grid.is_empty() {
        return Err(Error::InvalidParameter(
            "region grids must be nonempty".into(),
        ));
    }
    for &p in p_grid {
        if p < T::one() || p > cast::<T>(2.0) {
            return Err(Error::InvalidParameter(format!(
                "region p grid must lie in [1, 2], got {p}"
            )));
        }
    }
    for &q in q_grid {
        if q < T::one() || q > cast::<T>(4.0) {
            return Err(Error::InvalidParameter(format!(
                "region q grid must lie in [1, 4], got {q}"
            )));
        }
    }
    let deltas = &cfg.deltas;
    if deltas.len() < 4 || cfg.lambdas.len() < 4 {
        return Err(Error::InvalidParameter(
            "region classification needs >= 4 widths and >= 4 scales".into(),
        ));
    }
    let delta_min = *deltas.last().expect("nonempty");
    let n_nodes = resolution_for(delta_min, cfg.nodes)?;
    let grid = TorusGrid::new(1, n_nodes)?;

    // Shared caches: per-width circle samples and q-norms; per-scale shell
    // norms for every p.
    let mut width_qnorms: Vec<Vec<T>> = Vec::with_capacity(deltas.len());
    for &d in deltas {
        let g = TestFunction::knapp_tube(d, T::zero())?;
        let samples = restrict_ft_to_torus(&g, &grid)?;
        let per_q: Result<Vec<T>> = q_grid
            .iter()
            .map(|&q| lq_surface_norm(&samples, q))
            .collect();
        width_qnorms.push(per_q?);
    }
    let mut width_denoms: Vec<Vec<T>> = Vec::with_capacity(deltas.len());
    for &d in deltas {
        let g = TestFunction::knapp_tube(d, T::zero())?;
        let per_p: Result<Vec<T>> = p_grid
            .iter()
            .map(|&p| g.lp_norm_closed_form(p))
            .collect();
        width_denoms.push(per_p?);
    }
    let mut shell_norms: Vec<Vec<T>> = Vec::with_capacity(cfg.lambdas.len());
    for &l in &cfg.lambdas {
        shell_norms.push(shell_lp_norms(l, p_grid)?);
    }

    let nf = factors_i32(cfg.factors)?;
    let fit_points = 4usize;
    let mut cells = Vec::with_capacity(p_grid.len() * q_grid.len());
    let mut non_boundary = 0usize;
    let mut agreeing = 0usize;
    for (pi, &p) in p_grid.iter().enumerate() {
        for (qi, &q) in q_grid.iter().enumerate() {
            let pair = ExponentPair::new(p, q)?;
            let predicted = torus_admissible(&pair);

            // Cap-tube growth.
            let rows: Vec<SweepRow<T>> = deltas
                .iter()
                .enumerate()
                .map(|(di, &d)| SweepRow {
                    parameter: d,
                    ratio: (width_qnorms[di][qi] / width_denoms[di][pi]).powi(nf),
                })
                .collect();
            let cap_fit = fit_tail(&rows, fit_points)?;
            let cap_blowup = -cap_fit.slope;

            // Shell growth.
            let rows: Vec<SweepRow<T>> = cfg
                .lambdas
                .iter()
                .enumerate()
                .map(|(li, &l)| SweepRow {
                    parameter: l,
                    ratio: shell_norms[li][pi].powi(-nf),
                })
                .collect();
            let shell_fit = fit_tail(&rows, rows.len())?;
            let dilation_blowup = shell_fit.slope;

            let (empirical, agrees) = if boundary_distance(p, q) < cfg.boundary_margin {
                (CellClass::Boundary, None)
            } else {
                let grows =
                    cap_blowup > cfg.threshold || dilation_blowup > cfg.threshold;
                let class = if grows {
                    CellClass::Inadmissible
                } else {
                    CellClass::Admissible
                };
                let ok = grows != predicted;
                non_boundary += 1;
                if ok {
                    agreeing += 1;
                }
                (class, Some(ok))
            };
            cells.push(RegionCell {
                p,
                q,
                cap_blowup,
                dilation_blowup,
                empirical,
                predicted_admissible: predicted,
                agrees,
            });
        }
    }
    let agreement = if non_boundary == 0 {
        T::one()
    } else {
        cast::<T>(agreeing as f64 / non_boundary as f64)
    };
    Ok(RegionClassification {
        factors: cfg.factors,
        threshold: cfg.threshold,
        boundary_margin: cfg.boundary_margin,
        cells,
        non_boundary,
        agreement,
    })
}

fn factors_i32(factors: usize) -> Result<i32> {
    if factors == 0 || factors > 16 {
        return Err(Error::InvalidParameter(format!(
            "circle factor count must lie in 1..=16, got {factors}"
        )));
    }
    Ok(factors as i32)
}

/// Relative gap between the materialized two-factor ratio on `T²` and the
/// product of the two circle-level ratios. Closed forms make this an exact
/// identity, so anything beyond rounding indicates a broken code path.
pub fn tensor_factorization_check<T: Float + IndexScalar>(
    g: &TestFunction<T>,
    h: &TestFunction<T>,
    pair: &ExponentPair<T>,
    nodes: usize,
) -> Result<T> {
    let product = TestFunction::tensor(vec![g.clone(), h.clone()])?;
    let grid2 = TorusGrid::new(2, nodes)?;
    let direct = ratio(&product, pair, &grid2)?;

    let grid1 = TorusGrid::new(1, nodes)?;
    let rg = circle_ratio(g, &grid1, pair.p(), pair.q())?;
    let rh = circle_ratio(h, &grid1, pair.p(), pair.q())?;
    Ok((direct - rg * rh).abs() / (rg * rh))
}

/// Outcome of running the region classification at several factor counts.
#[derive(Clone, Debug)]
pub struct DimensionReport<T> {
    pub runs: Vec<RegionClassification<T>>,
    /// True when every cell's empirical class coincides across all runs.
    pub identical: bool,
    /// First differing cell, as `(p, q)`, if any.
    pub first_divergence: Option<(T, T)>,
}

/// Runs [`classify_region`] for each factor count and checks that the
/// classification table is the same cell-by-cell — the admissible region
/// does not move with the dimension.
pub fn dimension_independence<T: Float + IndexScalar>(
    factor_counts: &[usize],
    p_grid: &[T],
    q_grid: &[T],
    cfg: &RegionConfig<T>,
) -> Result<DimensionReport<T>> {
    if factor_counts.is_empty() {
        return Err(Error::InvalidParameter(
            "dimension report needs at least one factor count".into(),
        ));
    }
    let mut runs = Vec::with_capacity(factor_counts.len());
    for &n in factor_counts {
        let mut sub = cfg.clone();
        sub.factors = n;
        runs.push(classify_region(p_grid, q_grid, &sub)?);
    }
    let mut identical = true;
    let mut first_divergence = None;
    let base = &runs[0];
    'cells: for run in &runs[1..] {
        for (a, b) in base.cells.iter().zip(&run.cells) {
            if a.empirical != b.empirical {
                identical = false;
                first_divergence = Some((a.p, a.q));
                break 'cells;
            }
        }
    }
    Ok(DimensionReport {
        runs,
        identical,
        first_divergence,
    })
}

/// Inclusive float range with fixed step (last point clamped to `stop` when
/// it lands within half a step).
pub fn grid_range<T: Float>(start: T, stop: T, step: T) -> Result<Vec<T>> {
    if !(step > T::zero()) || stop < start {
        return Err(Error::InvalidParameter(
            "range needs positive step and stop >= start".into(),
        ));
    }
    let count = ((stop - start) / step + cast::<T>(0.5))
        .to_f64()
        .unwrap_or(0.0) as usize;
    let mut out = Vec::with_capacity(count + 1);
    for i in 0..=count {
        let v = start + step * cast::<T>(i as f64);
        out.push(if v > stop { stop } else { v });
    }
    Ok(out)
}
