//! Parsers for numeric CLI inputs: power-of-two tokens (`2^-7`), rationals
//! (`6/5`), and geometric ladders (`2^-2..2^-7` or explicit comma lists).

use anyhow::{bail, Result};
use num_rational::Ratio;

/// A Lebesgue index given on the command line. Rational and integer inputs
/// keep an exact representation so region predicates can be answered without
/// rounding.
#[derive(Clone, Copy, Debug)]
pub struct Index {
    pub value: f64,
    pub exact: Option<Ratio<i64>>,
}

pub fn parse_index(s: &str) -> Result<Index> {
    let s = s.trim();
    if let Some((num, den)) = s.split_once('/') {
        let n: i64 = num.trim().parse().map_err(|_| bad_index(s))?;
        let d: i64 = den.trim().parse().map_err(|_| bad_index(s))?;
        if d == 0 {
            bail!("index `{s}` has zero denominator");
        }
        let r = Ratio::new(n, d);
        return Ok(Index {
            value: *r.numer() as f64 / *r.denom() as f64,
            exact: Some(r),
        });
    }
    if let Ok(n) = s.parse::<i64>() {
        return Ok(Index {
            value: n as f64,
            exact: Some(Ratio::from_integer(n)),
        });
    }
    match s.parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(Index {
            value: v,
            exact: None,
        }),
        _ => Err(bad_index(s)),
    }
}

fn bad_index(s: &str) -> anyhow::Error {
    anyhow::anyhow!("cannot parse index `{s}` (expected a float, integer, or a/b)")
}

/// A single positive number: `2^k` with integer `k`, or any float literal.
pub fn parse_number(s: &str) -> Result<f64> {
    let s = s.trim();
    if let Some(exp) = s.strip_prefix("2^") {
        let k: i32 = exp
            .trim()
            .parse()
            .map_err(|_| anyhow::anyhow!("bad exponent in `{s}`"))?;
        return Ok(f64::powi(2.0, k));
    }
    match s.parse::<f64>() {
        Ok(v) if v.is_finite() && v > 0.0 => Ok(v),
        _ => bail!("cannot parse positive number `{s}`"),
    }
}

/// Geometric ladders: `a..b` steps by factor 2 from `a` toward `b`
/// (inclusive; `b` must be a power-of-two multiple of `a`), and `x,y,z`
/// lists the values verbatim.
pub fn parse_ladder(s: &str) -> Result<Vec<f64>> {
    let s = s.trim();
    if let Some((a, b)) = s.split_once("..") {
        let start = parse_number(a)?;
        let stop = parse_number(b)?;
        if start == stop {
            return Ok(vec![start]);
        }
        let factor = if stop < start { 0.5 } else { 2.0 };
        let mut out = vec![start];
        let mut cur = start;
        for _ in 0..64 {
            cur *= factor;
            out.push(cur);
            if (cur / stop - 1.0).abs() < 1e-9 {
                *out.last_mut().expect("nonempty") = stop;
                return Ok(out);
            }
            if (factor < 1.0 && cur < stop) || (factor > 1.0 && cur > stop) {
                break;
            }
        }
        bail!("ladder `{s}`: endpoint is not a power-of-two multiple of the start");
    }
    let vals: Result<Vec<f64>> = s.split(',').map(parse_number).collect();
    let vals = vals?;
    if vals.is_empty() {
        bail!("ladder `{s}` is empty");
    }
    Ok(vals)
}
