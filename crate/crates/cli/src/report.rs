//! Deterministic artifact writers. CSV numbers use `{:.14e}` (15 significant
//! digits); SVG files are self-contained with inline styling only, so the
//! same inputs produce byte-identical outputs.

use std::fmt::Write as _;
use std::path::Path;

use anyhow::{Context, Result};
use restriction_lab::experiments::{CellClass, RegionClassification, SweepResult};

pub fn sig(x: f64) -> String {
    format!("{x:.14e}")
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    if let Some(dir) = path.parent() {
        std::fs::create_dir_all(dir)
            .with_context(|| format!("cannot create {}", dir.display()))?;
    }
    std::fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
}

pub fn region_csv(table: &RegionClassification<f64>) -> String {
    let mut out = String::from("p,q,cap_blowup,dilation_blowup,empirical,predicted,agrees\n");
    for c in &table.cells {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{}",
            sig(c.p),
            sig(c.q),
            sig(c.cap_blowup),
            sig(c.dilation_blowup),
            c.empirical,
            if c.predicted_admissible {
                "admissible"
            } else {
                "inadmissible"
            },
            match c.agrees {
                Some(true) => "yes",
                Some(false) => "no",
                None => "deferred",
            }
        );
    }
    out
}

pub fn sweep_csv(result: &SweepResult<f64>) -> String {
    let mut out = format!("{},ratio\n", result.parameter_name);
    for row in &result.rows {
        let _ = writeln!(out, "{},{}", sig(row.parameter), sig(row.ratio));
    }
    out
}

pub fn tail_csv(radii: &[f64], norms: &[f64]) -> String {
    let mut out = String::from("radius,truncated_norm\n");
    for (r, n) in radii.iter().zip(norms) {
        let _ = writeln!(out, "{},{}", sig(*r), sig(*n));
    }
    out
}

fn cell_fill(class: CellClass) -> &'static str {
    match class {
        CellClass::Admissible => "#2e7d32",
        CellClass::Inadmissible => "#c62828",
        CellClass::Boundary => "#f9a825",
    }
}

/// Tri-color heatmap of the classification over the exponent window, with
/// the two boundary curves drawn on top.
pub fn region_svg(table: &RegionClassification<f64>, p_grid: &[f64], q_grid: &[f64]) -> String {
    let (width, height) = (820.0, 620.0);
    let (ml, mr, mt, mb) = (70.0, 20.0, 20.0, 50.0);
    let plot_w = width - ml - mr;
    let plot_h = height - mt - mb;

    let p_step = if p_grid.len() > 1 {
        p_grid[1] - p_grid[0]
    } else {
        0.05
    };
    let q_step = if q_grid.len() > 1 {
        q_grid[1] - q_grid[0]
    } else {
        0.05
    };
    let (p_lo, p_hi) = (p_grid[0] - p_step / 2.0, p_grid[p_grid.len() - 1] + p_step / 2.0);
    let (q_lo, q_hi) = (q_grid[0] - q_step / 2.0, q_grid[q_grid.len() - 1] + q_step / 2.0);
    let x = |p: f64| ml + (p - p_lo) / (p_hi - p_lo) * plot_w;
    let y = |q: f64| mt + (q_hi - q) / (q_hi - q_lo) * plot_h;

    let mut svg = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{height}\" \
         viewBox=\"0 0 {width} {height}\">\n<rect width=\"{width}\" height=\"{height}\" \
         fill=\"#ffffff\"/>\n"
    );
    for c in &table.cells {
        let _ = writeln!(
            svg,
            "<rect x=\"{:.2}\" y=\"{:.2}\" width=\"{:.2}\" height=\"{:.2}\" fill=\"{}\"/>",
            x(c.p - p_step / 2.0),
            y(c.q + q_step / 2.0),
            x(c.p + p_step / 2.0) - x(c.p - p_step / 2.0),
            y(c.q - q_step / 2.0) - y(c.q + q_step / 2.0),
            cell_fill(c.empirical)
        );
    }

    // Boundary curves: the vertical piece p = 4/3 up to the corner, then
    // q = p/(3(p-1)) beyond it.
    let four_thirds = 4.0 / 3.0;
    if p_lo <= four_thirds && four_thirds <= p_hi {
        let q_top = four_thirds.min(q_hi).max(q_lo);
        let _ = writeln!(
            svg,
            "<line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"#000000\" \
             stroke-width=\"2\"/>",
            x(four_thirds),
            y(q_lo.max(1.0)),
            x(four_thirds),
            y(q_top)
        );
    }
    let mut pts = String::new();
    let samples = 256;
    for i in 0..=samples {
        let q = four_thirds.max(q_lo) + (q_hi - four_thirds.max(q_lo)) * i as f64 / samples as f64;
        if q < four_thirds {
            continue;
        }
        let p = 3.0 * q / (3.0 * q - 1.0);
        if p < p_lo || p > p_hi {
            continue;
        }
        let _ = write!(pts, "{:.2},{:.2} ", x(p), y(q));
    }
    if !pts.is_empty() {
        let _ = writeln!(
            svg,
            "<polyline points=\"{}\" fill=\"none\" stroke=\"#000000\" stroke-width=\"2\"/>",
            pts.trim_end()
        );
    }

    // Frame, axis labels, legend.
    let _ = writeln!(
        svg,
        "<rect x=\"{ml:.2}\" y=\"{mt:.2}\" width=\"{plot_w:.2}\" height=\"{plot_h:.2}\" \
         fill=\"none\" stroke=\"#333333\"/>"
    );
    let label = |s: &mut String, tx: f64, ty: f64, text: &str, anchor: &str| {
        let _ = writeln!(
            s,
            "<text x=\"{tx:.2}\" y=\"{ty:.2}\" font-family=\"monospace\" font-size=\"14\" \
             text-anchor=\"{anchor}\" fill=\"#111111\">{text}</text>"
        );
    };
    label(&mut svg, ml, height - 18.0, &format!("p: {:.2} .. {:.2}", p_grid[0], p_grid[p_grid.len() - 1]), "start");
    label(&mut svg, 16.0, mt + 14.0, &format!("q: {:.2} .. {:.2}", q_grid[0], q_grid[q_grid.len() - 1]), "start");
    let legend = [
        ("admissible", cell_fill(CellClass::Admissible)),
        ("inadmissible", cell_fill(CellClass::Inadmissible)),
        ("boundary", cell_fill(CellClass::Boundary)),
    ];
    let mut lx = ml + 150.0;
    for (name, color) in legend {
        let _ = writeln!(
            svg,
            "<rect x=\"{lx:.2}\" y=\"{:.2}\" width=\"14\" height=\"14\" fill=\"{color}\"/>",
            height - 30.0
        );
        label(&mut svg, lx + 20.0, height - 18.0, name, "start");
        lx += 160.0;
    }
    svg.push_str("</svg>\n");
    svg
}

/// Log-log plot of a sweep: sampled ratios as a marked polyline, with a
/// dashed reference line of the predicted slope anchored at the last row.
pub fn sweep_svg(result: &SweepResult<f64>) -> String {
    let (width, height) = (640.0, 480.0);
    let (ml, mr, mt, mb) = (70.0, 20.0, 40.0, 50.0);
    let plot_w = width - ml - mr;
    let plot_h = height - mt - mb;

    let lx: Vec<f64> = result.rows.iter().map(|r| r.parameter.ln()).collect();
    let ly: Vec<f64> = result.rows.iter().map(|r| r.ratio.ln()).collect();
    let anchor = (lx[lx.len() - 1], ly[ly.len() - 1]);
    let ref_y: Vec<f64> = lx
        .iter()
        .map(|&v| anchor.1 + result.expected_fit_slope * (v - anchor.0))
        .collect();
    let min_max = |vals: &[f64]| {
        let lo = vals.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = vals.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        if lo == hi {
            (lo - 1.0, hi + 1.0)
        } else {
            (lo, hi)
        }
    };
    let (x_lo, x_hi) = min_max(&lx);
    let all_y: Vec<f64> = ly.iter().chain(&ref_y).cloned().collect();
    let (y_lo, y_hi) = min_max(&all_y);
    let x = |v: f64| ml + (v - x_lo) / (x_hi - x_lo) * plot_w;
    let y = |v: f64| mt + (y_hi - v) / (y_hi - y_lo) * plot_h;

    let mut svg = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{height}\" \
         viewBox=\"0 0 {width} {height}\">\n<rect width=\"{width}\" height=\"{height}\" \
         fill=\"#ffffff\"/>\n"
    );
    let _ = writeln!(
        svg,
        "<rect x=\"{ml:.2}\" y=\"{mt:.2}\" width=\"{plot_w:.2}\" height=\"{plot_h:.2}\" \
         fill=\"none\" stroke=\"#333333\"/>"
    );
    let poly = |vals_x: &[f64], vals_y: &[f64]| {
        let mut pts = String::new();
        for (&a, &b) in vals_x.iter().zip(vals_y) {
            let _ = write!(pts, "{:.2},{:.2} ", x(a), y(b));
        }
        pts.trim_end().to_string()
    };
    let _ = writeln!(
        svg,
        "<polyline points=\"{}\" fill=\"none\" stroke=\"#bbbbbb\" stroke-width=\"1.5\" \
         stroke-dasharray=\"6 4\"/>",
        poly(&lx, &ref_y)
    );
    let _ = writeln!(
        svg,
        "<polyline points=\"{}\" fill=\"none\" stroke=\"#1565c0\" stroke-width=\"2\"/>",
        poly(&lx, &ly)
    );
    for (&a, &b) in lx.iter().zip(&ly) {
        let _ = writeln!(
            svg,
            "<circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"4\" fill=\"#1565c0\"/>",
            x(a),
            y(b)
        );
    }
    let _ = writeln!(
        svg,
        "<text x=\"{ml:.2}\" y=\"24\" font-family=\"monospace\" font-size=\"14\" \
         fill=\"#111111\">{} sweep at p={}, q={}: fitted {:.4}, expected {:.4}</text>",
        result.family, result.p, result.q, result.fit_slope, result.expected_fit_slope
    );
    let _ = writeln!(
        svg,
        "<text x=\"{ml:.2}\" y=\"{:.2}\" font-family=\"monospace\" font-size=\"14\" \
         fill=\"#111111\">ln {} (left to right)</text>",
        height - 18.0,
        result.parameter_name
    );
    svg.push_str("</svg>\n");
    svg
}
