//! The extremal step functions and the one- and two-parameter 0-1 families
//! that the upper bound reduces to.

use super::StepFunction;
use crate::{Error, Result};

fn check_density(c: f64) -> Result<()> {
    if (0.0..=1.0).contains(&c) {
        Ok(())
    } else {
        Err(Error::DensityOutOfRange(c))
    }
}

/// Value 1 unless both coordinates exceed `1 - √(1-c)`: the quasi-star shape.
pub fn a1(c: f64) -> Result<StepFunction> {
    check_density(c)?;
    let r = (1.0 - c).sqrt();
    StepFunction::from_widths(&[1.0 - r, r], &[1.0, 1.0, 1.0, 0.0])
}

/// Value 1 on `[0, √c)²`, 0 elsewhere: the quasi-clique shape.
pub fn a2(c: f64) -> Result<StepFunction> {
    check_density(c)?;
    let s = c.sqrt();
    StepFunction::from_widths(&[s, 1.0 - s], &[1.0, 0.0, 0.0, 0.0])
}

/// Admissible widths `[1 - √(1-c), √c]` for [`two_step`].
pub fn two_step_interval(c: f64) -> Result<(f64, f64)> {
    check_density(c)?;
    Ok((1.0 - (1.0 - c).sqrt(), c.sqrt()))
}

fn check_in(x: f64, (lo, hi): (f64, f64), what: &str) -> Result<()> {
    let slack = 1e-12;
    if x > 0.0 && x >= lo - slack && x <= hi + slack {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("{what}: x = {x} outside [{lo}, {hi}]")))
    }
}

/// The 0-1 step function with at most two positive row values, mass `c` and
/// first width `x`: widths `t₁ = x`, `t₂ = (c - x²)/(2x)` plus a zero block,
/// ones exactly on blocks `(1,1)`, `(1,2)`, `(2,1)`. Row values are
/// `ℓ₁ = (c + x²)/(2x)` and `ℓ₂ = x`.
///
/// `x = 1 - √(1-c)` gives [`a1`], `x = √c` gives [`a2`].
pub fn two_step(c: f64, x: f64) -> Result<StepFunction> {
    let interval = two_step_interval(c)?;
    check_in(x, interval, "two_step")?;
    let t2 = ((c - x * x) / (2.0 * x)).max(0.0);
    let ell1 = (c + x * x) / (2.0 * x);
    let t3 = (1.0 - ell1).max(0.0);
    #[rustfmt::skip]
    let values = [
        1.0, 1.0, 0.0,
        1.0, 0.0, 0.0,
        0.0, 0.0, 0.0,
    ];
    StepFunction::from_widths(&[x, t2, t3], &values)
}

/// `(c³/x + 9c²x - cx³ - x⁵) / 8`, the value of `S` along [`two_step`].
pub fn s_two_step_closed(c: f64, x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::InvalidParameter(format!("two-step width must be positive, got {x}")));
    }
    check_density(c)?;
    Ok((c.powi(3) / x + 9.0 * c * c * x - c * x.powi(3) - x.powi(5)) / 8.0)
}

/// The same value in the variable `y = x / √c`: `c^{5/2}/8 · (1/y + 9y - y³ - y⁵)`.
pub fn s_two_step_closed_y(c: f64, y: f64) -> Result<f64> {
    if !(y > 0.0) {
        return Err(Error::InvalidParameter(format!("y must be positive, got {y}")));
    }
    check_density(c)?;
    Ok(c * c * c.sqrt() / 8.0 * (1.0 / y + 9.0 * y - y.powi(3) - y.powi(5)))
}

/// Admissible `x` for [`three_step`] at complement mass `s`: `[1 - √(1-s), √s]`.
pub fn three_step_interval(s: f64) -> Result<(f64, f64)> {
    if !(s > 0.0 && s < 1.0) {
        return Err(Error::InvalidParameter(format!("complement mass s = {s} outside (0, 1)")));
    }
    Ok((1.0 - (1.0 - s).sqrt(), s.sqrt()))
}

/// The 0-1 staircase with three positive row values, normalized to `ℓ₁ = 1`,
/// with `1 - mass = s` and last width `x`:
/// `t₁ = 1 - (s + x²)/(2x)`, `t₂ = (s - x²)/(2x)`, `t₃ = x`,
/// so that `ℓ₁ = 1`, `ℓ₂ = 1 - x`, `ℓ₃ = t₁`.
pub fn three_step(s: f64, x: f64) -> Result<StepFunction> {
    let interval = three_step_interval(s)?;
    check_in(x, interval, "three_step")?;
    let t1 = (1.0 - (s + x * x) / (2.0 * x)).max(0.0);
    let t2 = ((s - x * x) / (2.0 * x)).max(0.0);
    StepFunction::from_widths(&[t1, t2, x], &staircase_values(3, 3))
}

/// The expanded six-term polynomial form of `S` along [`three_step`].
pub fn s_three_step_expanded(s: f64, x: f64) -> f64 {
    let p = 1.0 - (s + x * x) / (2.0 * x);
    let q = (s - x * x) / (2.0 * x);
    p.powi(2)
        + q.powi(2) * (1.0 - x).powi(3)
        + x.powi(2) * p.powi(3)
        + 2.0 * p * q * (1.0 - x).powi(2)
        + 2.0 * p * x * p.powi(2)
        + 2.0 * q * x * (1.0 - x) * p.powi(2)
}

fn staircase_values(blocks: usize, kprime: usize) -> Vec<f64> {
    (0..blocks)
        .flat_map(|i| (0..blocks).map(move |j| if i + j + 2 <= kprime + 1 { 1.0 } else { 0.0 }))
        .collect()
}

/// The decreasing 0-1 staircase on the given widths: block `(i, j)`
/// (1-indexed) is 1 iff `i + j <= k' + 1`. With `k'` blocks every row is
/// positive; a trailing block of zeros is allowed (`widths.len() == k' + 1`).
pub fn staircase(widths: &[f64], kprime: usize) -> Result<StepFunction> {
    if kprime == 0 || !(widths.len() == kprime || widths.len() == kprime + 1) {
        return Err(Error::InvalidParameter(format!(
            "staircase with k' = {kprime} needs {kprime} or {} widths, got {}",
            kprime + 1,
            widths.len()
        )));
    }
    StepFunction::from_widths(widths, &staircase_values(widths.len(), kprime))
}
