use crate::discretization::{DiscreteFunctional, RadialFunction};
use crate::error::{Error, Result};

const MAX_DOUBLINGS: usize = 60;

/// `I'(tv)v / t = ‖v‖² - ∫ K f(tv) v / t`, positive before the Nehari
/// point on the ray and negative after it.
fn ray_slope(d: &DiscreteFunctional, v: &RadialFunction, norm_sq: f64, t: f64) -> Result<f64> {
    Ok(norm_sq - d.source_pairing(&v.scaled(t), v)? / t)
}

/// The scaling `t > 0` putting `tv` on the Nehari set, with
/// `|I'(tv)v| <= tol ‖v‖²`. The root is bracketed by doubling or halving
/// from `t = 1` and refined by the Illinois variant of regula falsi.
pub fn nehari_project(d: &DiscreteFunctional, v: &RadialFunction, tol: f64) -> Result<(f64, RadialFunction)> {
    let v = d.restrict(v);
    let norm_sq = d.norm_sq(&v)?;
    if norm_sq == 0.0 {
        return Err(Error::InvalidInput("cannot project the zero function".into()));
    }
    let target = tol * norm_sq;
    let slope = |t: f64| ray_slope(d, &v, norm_sq, t);

    let h1 = slope(1.0)?;
    if h1.abs() <= target {
        return Ok((1.0, v));
    }
    // walk from t = 1 toward the sign change, doubling or halving
    let factor = if h1 > 0.0 { 2.0 } else { 0.5 };
    let (mut prev_t, mut prev_h) = (1.0, h1);
    let mut steps = 0;
    let (t_far, h_far) = loop {
        if steps == MAX_DOUBLINGS {
            return Err(Error::NoSignChange { doublings: steps });
        }
        let t = prev_t * factor;
        let h = slope(t)?;
        steps += 1;
        if (h > 0.0) != (h1 > 0.0) {
            break (t, h);
        }
        (prev_t, prev_h) = (t, h);
    };
    let (mut lo, mut h_lo, mut hi, mut h_hi) = if h1 > 0.0 {
        (prev_t, prev_h, t_far, h_far)
    } else {
        (t_far, h_far, prev_t, prev_h)
    };

    // Illinois: halve the retained end's value when the same end survives twice
    let mut side = 0i8;
    for _ in 0..200 {
        let t = (lo * h_hi - hi * h_lo) / (h_hi - h_lo);
        let t = if t > lo && t < hi { t } else { 0.5 * (lo + hi) };
        let h = slope(t)?;
        if (t * h).abs() <= target || hi - lo <= 4.0 * f64::EPSILON * hi {
            return Ok((t, v.scaled(t)));
        }
        if h > 0.0 {
            lo = t;
            h_lo = h;
            if side == 1 {
                h_hi *= 0.5;
            }
            side = 1;
        } else {
            hi = t;
            h_hi = h;
            if side == -1 {
                h_lo *= 0.5;
            }
            side = -1;
        }
    }
    let t = 0.5 * (lo + hi);
    Ok((t, v.scaled(t)))
}
