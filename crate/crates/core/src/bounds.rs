//! Closed-form density bounds for 4-edge paths and walks.
//!
//! In density form a graph with `c = 2e / n^2` satisfies
//! `c^4 <= walks4 / n^5 <= max(star(c), clique(c))`, where
//! `star(c) = (1 - √(1-c))² ((c+1)√(1-c) + c)` and `clique(c) = c^{5/2}`.
//! Path counts are half the walk counts up to `O(n^4)`, hence the `½ n^5`
//! factor in [`BoundReport`].

use std::fmt;

use crate::construct::choose2;
use crate::fmt::sig12;
use crate::{Error, Result};

/// Absolute tolerance below which the two upper branches count as tied.
pub const TIE_TOLERANCE: f64 = 1e-12;

/// Bisection bracket for the crossing point of the two upper branches.
pub const CROSSING_BRACKET: (f64, f64) = (0.01, 0.5);

fn check_density(c: f64) -> Result<f64> {
    if (0.0..=1.0).contains(&c) {
        Ok(c)
    } else {
        Err(Error::DensityOutOfRange(c))
    }
}

/// `c^4`, the walk-density lower bound.
pub fn lower_bound_density(c: f64) -> Result<f64> {
    check_density(c).map(|c| c.powi(4))
}

/// `(1 - √(1-c))² ((c+1)√(1-c) + c)`, attained by the quasi-star shape.
pub fn upper_star_density(c: f64) -> Result<f64> {
    check_density(c).map(star_branch)
}

/// `c^{5/2}`, attained by the quasi-clique shape.
pub fn upper_clique_density(c: f64) -> Result<f64> {
    check_density(c).map(clique_branch)
}

pub(crate) fn star_branch(c: f64) -> f64 {
    let r = (1.0 - c).sqrt();
    (1.0 - r).powi(2) * ((c + 1.0) * r + c)
}

pub(crate) fn clique_branch(c: f64) -> f64 {
    c * c * c.sqrt()
}

/// Which upper-bound branch is larger.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Dominant {
    Star,
    Clique,
    Tie,
}

impl Dominant {
    pub fn of(star: f64, clique: f64) -> Self {
        if (star - clique).abs() <= TIE_TOLERANCE {
            Dominant::Tie
        } else if star > clique {
            Dominant::Star
        } else {
            Dominant::Clique
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Dominant::Star => "star",
            Dominant::Clique => "clique",
            Dominant::Tie => "tie",
        }
    }
}

impl fmt::Display for Dominant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Path-count bounds for one `(n, e)`.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundReport {
    pub n: usize,
    pub e: u64,
    pub c: f64,
    /// `½ c^4 n^5`
    pub lower: f64,
    pub upper_star: f64,
    pub upper_clique: f64,
    pub upper: f64,
    pub dominant: Dominant,
}

pub fn bound_report(n: usize, e: u64) -> Result<BoundReport> {
    if n == 0 {
        return Err(Error::EmptyVertexSet);
    }
    let capacity = choose2(n as u64);
    if e > capacity {
        return Err(Error::TooManyEdges { n, e, capacity });
    }
    let nf = n as f64;
    // Only guards rounding: e <= C(n, 2) already gives c < 1.
    let c = (2.0 * e as f64 / (nf * nf)).clamp(0.0, 1.0);
    let half_n5 = 0.5 * nf.powi(5);
    let (star, clique) = (star_branch(c), clique_branch(c));
    Ok(BoundReport {
        n,
        e,
        c,
        lower: half_n5 * c.powi(4),
        upper_star: half_n5 * star,
        upper_clique: half_n5 * clique,
        upper: half_n5 * star.max(clique),
        dominant: Dominant::of(star, clique),
    })
}

impl fmt::Display for BoundReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n             {}", self.n)?;
        writeln!(f, "e             {}", self.e)?;
        writeln!(f, "c             {}", sig12(self.c))?;
        writeln!(f, "lower         {}", sig12(self.lower))?;
        writeln!(f, "upper_star    {}", sig12(self.upper_star))?;
        writeln!(f, "upper_clique  {}", sig12(self.upper_clique))?;
        writeln!(f, "upper         {}", sig12(self.upper))?;
        writeln!(f, "dominant      {}", self.dominant)
    }
}

/// Root of `star(c) - clique(c)` in `(0, 1)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CrossingPoint {
    pub c0: f64,
    /// `|star(c0) - clique(c0)|`
    pub residual: f64,
    /// Final bracket width.
    pub width: f64,
    pub iterations: usize,
}

/// Bisection of `f` on `[lo, hi]` until the bracket is narrower than `tol`.
pub fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> Result<(f64, f64, usize)> {
    let (flo, fhi) = (f(lo), f(hi));
    if flo == 0.0 {
        return Ok((lo, 0.0, 0));
    }
    if fhi == 0.0 {
        return Ok((hi, 0.0, 0));
    }
    if flo.signum() == fhi.signum() || flo.is_nan() || fhi.is_nan() {
        return Err(Error::Bracket { lo, hi });
    }
    let lo_sign = flo.signum();
    let mut iterations = 0;
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return Ok((mid, 0.0, iterations));
        }
        if fm.signum() == lo_sign {
            lo = mid;
        } else {
            hi = mid;
        }
        iterations += 1;
    }
    Ok((0.5 * (lo + hi), hi - lo, iterations))
}

/// The density `c0 ≈ 0.0865` where the star and clique branches cross.
pub fn crossing_point() -> Result<CrossingPoint> {
    let diff = |c: f64| star_branch(c) - clique_branch(c);
    let (lo, hi) = CROSSING_BRACKET;
    let (c0, width, iterations) = bisect(diff, lo, hi, 1e-12)?;
    Ok(CrossingPoint { c0, residual: diff(c0).abs(), width, iterations })
}

/// Which construction maximizes the number of 2-edge paths, by edge count alone.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Regime {
    Star,
    Clique,
    Transition,
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Regime::Star => "star",
            Regime::Clique => "clique",
            Regime::Transition => "transition",
        })
    }
}

/// Star when `e <= ½C(n,2) - n/2`, clique when `e >= ½C(n,2) + n/2`.
pub fn ak_regime(n: usize, e: u64) -> Result<Regime> {
    if n == 0 {
        return Err(Error::EmptyVertexSet);
    }
    let capacity = choose2(n as u64);
    if e > capacity {
        return Err(Error::TooManyEdges { n, e, capacity });
    }
    // Doubled to stay in integers.
    let (twice_e, m, n) = (2 * e as i128, capacity as i128, n as i128);
    Ok(if twice_e <= m - n {
        Regime::Star
    } else if twice_e >= m + n {
        Regime::Clique
    } else {
        Regime::Transition
    })
}

/// One row of a density sweep.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SweepRow {
    pub c: f64,
    pub lower: f64,
    pub upper_star: f64,
    pub upper_clique: f64,
    pub dominant: Dominant,
}

pub const SWEEP_CSV_HEADER: &str = "c,lower,upper_star,upper_clique,dominant";

pub fn sweep(grid: &[f64]) -> Result<Vec<SweepRow>> {
    grid.iter()
        .map(|&c| {
            let c = check_density(c)?;
            let (upper_star, upper_clique) = (star_branch(c), clique_branch(c));
            Ok(SweepRow {
                c,
                lower: c.powi(4),
                upper_star,
                upper_clique,
                dominant: Dominant::of(upper_star, upper_clique),
            })
        })
        .collect()
}

/// `points` equally spaced densities from 0 to 1 inclusive.
pub fn uniform_grid(points: usize) -> Vec<f64> {
    match points {
        0 => Vec::new(),
        1 => vec![0.0],
        _ => (0..points).map(|i| i as f64 / (points - 1) as f64).collect(),
    }
}

impl SweepRow {
    pub fn csv(&self) -> String {
        format!(
            "{},{},{},{},{}",
            sig12(self.c),
            sig12(self.lower),
            sig12(self.upper_star),
            sig12(self.upper_clique),
            self.dominant
        )
    }
}
