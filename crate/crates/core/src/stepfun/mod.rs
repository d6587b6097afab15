//! Symmetric step functions on the unit square.
//!
//! A step function is given by breakpoints `0 = q_0 < q_1 < ... < q_K = 1`
//! and a symmetric `K x K` matrix of values in `[0, 1]`, constant on each
//! block `[q_{i-1}, q_i) x [q_{j-1}, q_j)`. Widths are `t_i = q_i - q_{i-1}`
//! and the row profile is `ℓ_i = Σ_j t_j A_ij`.

mod families;
mod optimize;

pub use families::{
    a1, a2, s_three_step_expanded, s_two_step_closed, s_two_step_closed_y, staircase, three_step,
    three_step_interval, two_step, two_step_interval,
};
pub use optimize::{
    maximize_s, maximize_s_restarts, MoveKind, OptimizeResult, OptimizerConfig, RestartSummary,
    TraceEntry, TRACE_CSV_HEADER,
};

use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::graph::{Adjacency, Graph};
use crate::{Error, Result};

/// Blocks narrower than this are dropped by the constructors in this module.
pub(crate) const CONSTRUCT_EPS: f64 = 1e-14;

#[derive(Clone, Debug, PartialEq)]
pub struct StepFunction {
    breaks: Vec<f64>,
    values: Vec<f64>,
}

impl StepFunction {
    /// Validates breakpoints (`0 = q_0 < ... < q_K = 1`) and a row-major
    /// `K x K` value matrix that must be exactly symmetric with entries in `[0, 1]`.
    pub fn new(breakpoints: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidStepFunction(msg));
        let k = breakpoints.len().saturating_sub(1);
        if k == 0 {
            return bad("need at least one block".into());
        }
        if breakpoints[0] != 0.0 || breakpoints[k] != 1.0 {
            return bad(format!("breakpoints must run from 0 to 1, got {:?}", breakpoints));
        }
        if breakpoints.windows(2).any(|w| !(w[1] > w[0])) {
            return bad("breakpoints must be strictly increasing".into());
        }
        if values.len() != k * k {
            return bad(format!("expected {} values, got {}", k * k, values.len()));
        }
        for i in 0..k {
            for j in 0..k {
                let v = values[i * k + j];
                if !(0.0..=1.0).contains(&v) {
                    return bad(format!("value {v} at ({i}, {j}) outside [0, 1]"));
                }
                if v != values[j * k + i] {
                    return bad(format!("not symmetric at ({i}, {j})"));
                }
            }
        }
        Ok(StepFunction { breaks: breakpoints, values })
    }

    /// Builds from block widths summing to one (up to rounding); blocks
    /// narrower than `1e-14` are removed together with their row and column.
    pub fn from_widths(widths: &[f64], values: &[f64]) -> Result<Self> {
        let k = widths.len();
        if values.len() != k * k {
            return Err(Error::InvalidStepFunction(format!("expected {} values, got {}", k * k, values.len())));
        }
        if widths.iter().any(|&t| !t.is_finite() || t < -CONSTRUCT_EPS) {
            return Err(Error::InvalidStepFunction(format!("negative width in {widths:?}")));
        }
        let total: f64 = widths.iter().sum();
        if (total - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidStepFunction(format!("widths sum to {total}, expected 1")));
        }
        let keep: Vec<usize> = (0..k).filter(|&i| widths[i] > CONSTRUCT_EPS).collect();
        let mut breaks = Vec::with_capacity(keep.len() + 1);
        breaks.push(0.0);
        let mut acc = 0.0;
        for &i in &keep {
            acc += widths[i];
            breaks.push(acc);
        }
        *breaks.last_mut().unwrap() = 1.0;
        let vals = keep.iter().flat_map(|&i| keep.iter().map(move |&j| values[i * k + j])).collect();
        StepFunction::new(breaks, vals)
    }

    /// The constant function with value `v`.
    pub fn constant(v: f64) -> Result<Self> {
        StepFunction::new(vec![0.0, 1.0], vec![v])
    }

    /// The pixel picture of `g`: `n` equal blocks, value 1 on edges, 0 elsewhere.
    pub fn from_graph(g: &Graph) -> Result<Self> {
        let n = g.n();
        if n == 0 {
            return Err(Error::EmptyVertexSet);
        }
        let mut breaks: Vec<f64> = (0..=n).map(|i| i as f64 / n as f64).collect();
        breaks[n] = 1.0;
        let values = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .map(|(i, j)| if g.is_adjacent(i, j) { 1.0 } else { 0.0 })
            .collect();
        StepFunction::new(breaks, values)
    }

    /// A random step function with `k` blocks and mass `c`: Dirichlet(1)
    /// widths, uniform symmetric values, then [`rescale_to_mass`](Self::rescale_to_mass).
    pub fn random(rng: &mut impl Rng, k: usize, c: f64) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidParameter("need at least one block".into()));
        }
        let raw: Vec<f64> = (0..k).map(|_| -(1.0 - rng.gen::<f64>()).ln() + 1e-6).collect();
        let total: f64 = raw.iter().sum();
        let widths: Vec<f64> = raw.iter().map(|w| w / total).collect();
        let mut values = vec![0.0; k * k];
        for i in 0..k {
            for j in i..k {
                let v = rng.gen::<f64>();
                values[i * k + j] = v;
                values[j * k + i] = v;
            }
        }
        StepFunction::from_widths(&widths, &values)?.rescale_to_mass(c)
    }

    pub fn k(&self) -> usize {
        self.breaks.len() - 1
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breaks
    }

    pub fn widths(&self) -> Vec<f64> {
        self.breaks.windows(2).map(|w| w[1] - w[0]).collect()
    }

    pub fn value(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.k() + j]
    }

    /// Row-major `K x K` values.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// `ℓ_i = Σ_j t_j A_ij`.
    pub fn row_profile(&self) -> Vec<f64> {
        let t = self.widths();
        let k = self.k();
        (0..k).map(|i| (0..k).map(|j| t[j] * self.values[i * k + j]).sum()).collect()
    }

    /// `∬ A = Σ_i t_i ℓ_i`.
    pub fn mass(&self) -> f64 {
        let t = self.widths();
        t.iter().zip(self.row_profile()).map(|(t, l)| t * l).sum()
    }

    /// `S(A) = Σ_{i,j} t_i t_j ℓ_i ℓ_j min(ℓ_i, ℓ_j)`.
    pub fn s_value(&self) -> f64 {
        s_from_profile(&self.widths(), &self.row_profile())
    }

    /// `T(A) = Σ t_{a1} t_{b1} t_{a2} t_{b2} |A_{a1 b1} - A_{a2 b2}|`, the total
    /// pairwise variation, evaluated in `O(K² log K)` by sorting cell values.
    pub fn t_value(&self) -> f64 {
        let t = self.widths();
        let k = self.k();
        let mut cells: Vec<(f64, f64)> = (0..k * k).map(|c| (self.values[c], t[c / k] * t[c % k])).collect();
        cells.sort_by(|a, b| a.0.total_cmp(&b.0));
        let (mut weight_below, mut moment_below, mut total) = (0.0, 0.0, 0.0);
        for &(v, w) in &cells {
            total += w * (v * weight_below - moment_below);
            weight_below += w;
            moment_below += w * v;
        }
        2.0 * total
    }

    /// Sorts blocks by decreasing `ℓ` (stable) and merges neighbouring blocks
    /// whose rows are identical. `S` and the mass are unchanged.
    pub fn normalize(&self) -> StepFunction {
        let k = self.k();
        let ell = self.row_profile();
        let t = self.widths();
        let mut order: Vec<usize> = (0..k).collect();
        order.sort_by(|&a, &b| ell[b].total_cmp(&ell[a]));
        let row_eq = |a: usize, b: usize| (0..k).all(|j| self.values[a * k + j] == self.values[b * k + j]);
        // Groups of consecutive (in sorted order) identical rows.
        let mut groups: Vec<Vec<usize>> = Vec::new();
        for &i in &order {
            match groups.last_mut() {
                Some(g) if row_eq(g[0], i) => g.push(i),
                _ => groups.push(vec![i]),
            }
        }
        if groups.len() == k && order.iter().enumerate().all(|(p, &i)| p == i) {
            return self.clone();
        }
        let widths: Vec<f64> = groups.iter().map(|g| g.iter().map(|&i| t[i]).sum()).collect();
        let m = groups.len();
        let mut values = vec![0.0; m * m];
        for (a, ga) in groups.iter().enumerate() {
            for (b, gb) in groups.iter().enumerate() {
                values[a * m + b] = self.values[ga[0] * k + gb[0]];
            }
        }
        let mut breaks = Vec::with_capacity(m + 1);
        breaks.push(0.0);
        let mut acc = 0.0;
        for w in &widths {
            acc += w;
            breaks.push(acc);
        }
        breaks[m] = 1.0;
        StepFunction { breaks, values }
    }

    /// Rescales values to total mass `c`: multiplicative scaling with
    /// clamping at 1, repeated on the unsaturated cells until the mass is
    /// within `1e-12` of `c`.
    pub fn rescale_to_mass(&self, c: f64) -> Result<StepFunction> {
        if !(0.0..=1.0).contains(&c) {
            return Err(Error::DensityOutOfRange(c));
        }
        let k = self.k();
        let t = self.widths();
        let weight = |cell: usize| t[cell / k] * t[cell % k];
        let mut values = self.values.clone();
        let mass_of = |values: &[f64]| -> f64 { (0..k * k).map(|cell| weight(cell) * values[cell]).sum() };
        for _ in 0..200 {
            let m = mass_of(&values);
            if (m - c).abs() <= 1e-13 {
                break;
            }
            if m > c {
                let f = c / m;
                values.iter_mut().for_each(|v| *v *= f);
                continue;
            }
            let saturated: f64 = (0..k * k).filter(|&cell| values[cell] >= 1.0).map(weight).sum();
            let free_mass = m - saturated;
            if free_mass > 0.0 {
                let f = (c - saturated) / free_mass;
                values.iter_mut().filter(|v| **v < 1.0).for_each(|v| *v = (*v * f).min(1.0));
            } else {
                // Only zeros are unsaturated: lift them uniformly.
                let free_weight: f64 = (0..k * k).filter(|&cell| values[cell] < 1.0).map(weight).sum();
                let lift = ((c - saturated) / free_weight).min(1.0);
                values.iter_mut().filter(|v| **v < 1.0).for_each(|v| *v = lift);
            }
        }
        // Scaling is symmetric cell by cell, but restore exact symmetry anyway.
        for i in 0..k {
            for j in i + 1..k {
                values[j * k + i] = values[i * k + j];
            }
        }
        let out = StepFunction { breaks: self.breaks.clone(), values };
        let m = out.mass();
        if (m - c).abs() > 1e-12 {
            return Err(Error::InvalidStepFunction(format!("could not reach mass {c}, stuck at {m}")));
        }
        Ok(out)
    }

    /// The symmetrized rectangle swap on rows `i1, i2` and columns `j1, j2`:
    /// `A[i1][j1] += ε/(t_{i1} t_{j1})`, `A[i2][j1] -= ε/(t_{i2} t_{j1})`,
    /// `A[i1][j2] -= ε/(t_{i1} t_{j2})`, `A[i2][j2] += ε/(t_{i2} t_{j2})`,
    /// followed by `A ← (A + Aᵀ)/2`. Every row and column integral, and
    /// therefore `S`, is preserved.
    pub fn rect_swap(&self, i1: usize, i2: usize, j1: usize, j2: usize, eps: f64) -> Result<StepFunction> {
        let k = self.k();
        if i1 == i2 || j1 == j2 || [i1, i2, j1, j2].iter().any(|&x| x >= k) {
            return Err(Error::InvalidParameter(format!("bad swap indices ({i1}, {i2}; {j1}, {j2})")));
        }
        let t = self.widths();
        let mut raw = self.values.clone();
        for (i, j, sign) in [(i1, j1, 1.0), (i2, j1, -1.0), (i1, j2, -1.0), (i2, j2, 1.0)] {
            raw[i * k + j] += sign * eps / (t[i] * t[j]);
        }
        let mut values = raw.clone();
        for i in 0..k {
            for j in 0..k {
                values[i * k + j] = 0.5 * (raw[i * k + j] + raw[j * k + i]);
            }
        }
        StepFunction::new(self.breaks.clone(), values)
    }

    /// `A(x, y) ↦ A(x/λ, y/λ)` on `[0, λ)²` and 0 elsewhere, for `0 < λ <= 1`.
    /// Multiplies the mass by `λ²` and `S` by `λ⁵`.
    pub fn shrink(&self, lambda: f64) -> Result<StepFunction> {
        if !(lambda > 0.0 && lambda <= 1.0) {
            return Err(Error::InvalidParameter(format!("shrink factor {lambda} outside (0, 1]")));
        }
        if lambda == 1.0 {
            return Ok(self.clone());
        }
        let k = self.k();
        let mut widths: Vec<f64> = self.widths().iter().map(|t| t * lambda).collect();
        widths.push(1.0 - lambda);
        let m = k + 1;
        let mut values = vec![0.0; m * m];
        for i in 0..k {
            for j in 0..k {
                values[i * m + j] = self.values[i * k + j];
            }
        }
        StepFunction::from_widths(&widths, &values)
    }
}

/// `Σ_{i,j} t_i t_j ℓ_i ℓ_j min(ℓ_i, ℓ_j)` for a bare width/profile pair.
pub fn s_from_profile(widths: &[f64], ell: &[f64]) -> f64 {
    assert_eq!(widths.len(), ell.len());
    let k = widths.len();
    let mut s = 0.0;
    for i in 0..k {
        let (ti, li) = (widths[i], ell[i]);
        s += ti * ti * li * li * li;
        for j in i + 1..k {
            let lj = ell[j];
            s += 2.0 * ti * widths[j] * li * lj * li.min(lj);
        }
    }
    s
}

/// `K`, then the `K + 1` breakpoints, then `K` rows of `K` values.
impl fmt::Display for StepFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = self.k();
        writeln!(f, "{k}")?;
        writeln!(f, "{}", join(&self.breaks))?;
        for i in 0..k {
            writeln!(f, "{}", join(&self.values[i * k..(i + 1) * k]))?;
        }
        Ok(())
    }
}

/// Shortest round-trip form, exponent for very small or large magnitudes.
fn join(xs: &[f64]) -> String {
    xs.iter()
        .map(|x| {
            let s = format!("{x:?}");
            s.strip_suffix(".0").map(str::to_string).unwrap_or(s)
        })
        .collect::<Vec<_>>()
        .join(" ")
}

impl FromStr for StepFunction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut lines = s.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty());
        let mut next = |what: &str| lines.next().ok_or_else(|| Error::parse(0, format!("missing {what}")));
        let (lineno, head) = next("block count")?;
        let k: usize = head.parse().map_err(|_| Error::parse(lineno, format!("bad block count {head:?}")))?;
        let floats = |lineno: usize, line: &str, want: usize| -> Result<Vec<f64>> {
            let v: Vec<f64> = line
                .split_whitespace()
                .map(|t| t.parse::<f64>().map_err(|_| Error::parse(lineno, format!("bad number {t:?}"))))
                .collect::<Result<_>>()?;
            if v.len() != want {
                return Err(Error::parse(lineno, format!("expected {want} numbers, got {}", v.len())));
            }
            Ok(v)
        };
        let (lineno, line) = next("breakpoints")?;
        let breaks = floats(lineno, line, k + 1)?;
        let mut values = Vec::with_capacity(k * k);
        for _ in 0..k {
            let (lineno, line) = next("value row")?;
            values.extend(floats(lineno, line, k)?);
        }
        StepFunction::new(breaks, values)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::count::count_walks4;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Direct O(K⁴) evaluation of T.
    fn t_value_direct(a: &StepFunction) -> f64 {
        let t = a.widths();
        let k = a.k();
        let mut s = 0.0;
        for a1 in 0..k {
            for b1 in 0..k {
                for a2 in 0..k {
                    for b2 in 0..k {
                        s += t[a1] * t[b1] * t[a2] * t[b2] * (a.value(a1, b1) - a.value(a2, b2)).abs();
                    }
                }
            }
        }
        s
    }

    fn random_graph(rng: &mut impl rand::Rng, n: usize) -> Graph {
        let p: f64 = rng.gen();
        let edges: Vec<_> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|_| rng.gen_bool(p))
            .collect();
        Graph::new(n, &edges).unwrap()
    }

    #[test]
    fn validation() {
        assert!(StepFunction::new(vec![0.0, 1.0], vec![1.0]).is_ok());
        assert!(StepFunction::new(vec![0.0, 0.5, 1.0], vec![1.0, 0.5, 0.4, 0.0]).is_err());
        assert!(StepFunction::new(vec![0.0, 0.5, 0.5, 1.0], vec![0.0; 9]).is_err());
        assert!(StepFunction::new(vec![0.0, 0.9], vec![0.0]).is_err());
        assert!(StepFunction::new(vec![0.0, 1.0], vec![1.5]).is_err());
        assert!(StepFunction::from_widths(&[0.5, 0.6], &[0.0; 4]).is_err());
    }

    #[test]
    fn from_graph_examples() {
        let k2 = StepFunction::from_graph(&Graph::complete(2)).unwrap();
        assert_eq!(k2.values(), &[0.0, 1.0, 1.0, 0.0]);
        assert_eq!(k2.mass(), 0.5);
        let empty = StepFunction::from_graph(&Graph::empty(3)).unwrap();
        assert_eq!(empty.mass(), 0.0);
        let k3 = StepFunction::from_graph(&Graph::complete(3)).unwrap();
        assert!((k3.mass() - 2.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn s_value_of_graphs_matches_degree_formula_and_bounds_walks() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..100 {
            let n = rng.gen_range(1..=30);
            let g = random_graph(&mut rng, n);
            let d = g.degrees();
            let exact: u128 = (0..n)
                .flat_map(|i| (0..n).map(move |j| (i, j)))
                .map(|(i, j)| (d[i] * d[j] * d[i].min(d[j])) as u128)
                .sum();
            let n5 = (n as f64).powi(5);
            let s = StepFunction::from_graph(&g).unwrap().s_value();
            assert!((s - exact as f64 / n5).abs() <= 1e-12, "n={n}");
            assert!(exact >= count_walks4(&g));
            assert!(s >= count_walks4(&g) as f64 / n5 - 1e-12);
        }
    }

    #[test]
    fn constant_function_values() {
        let one = StepFunction::constant(1.0).unwrap();
        assert_eq!(one.s_value(), 1.0);
        assert_eq!(one.t_value(), 0.0);
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        // A constant function split into blocks still has T = 0.
        let split = StepFunction::from_widths(&[0.3, 0.7], &[0.4; 4]).unwrap();
        assert_eq!(split.t_value(), 0.0);
        let r = StepFunction::random(&mut rng, 5, 0.3).unwrap();
        assert!((r.t_value() - t_value_direct(&r)).abs() < 1e-14);
    }

    #[test]
    fn t_value_of_zero_one_functions() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..200 {
            let k = rng.gen_range(1..=8);
            let raw: Vec<f64> = (0..k).map(|_| rng.gen::<f64>() + 0.01).collect();
            let total: f64 = raw.iter().sum();
            let widths: Vec<f64> = raw.iter().map(|w| w / total).collect();
            let mut values = vec![0.0; k * k];
            for i in 0..k {
                for j in i..k {
                    let v = if rng.gen_bool(0.5) { 1.0 } else { 0.0 };
                    values[i * k + j] = v;
                    values[j * k + i] = v;
                }
            }
            let a = StepFunction::from_widths(&widths, &values).unwrap();
            let c = a.mass();
            assert!((a.t_value() - 2.0 * c * (1.0 - c)).abs() < 1e-12);
            assert!((t_value_direct(&a) - 2.0 * c * (1.0 - c)).abs() < 1e-12);
        }
    }

    #[test]
    fn rescale_hits_mass_exactly() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for &c in &[0.0, 1e-6, 0.05, 0.3, 0.7, 0.95, 0.999, 1.0] {
            for k in 1..=8 {
                let a = StepFunction::random(&mut rng, k, c).unwrap();
                assert!((a.mass() - c).abs() <= 1e-12, "c={c} k={k}");
                assert!(a.values().iter().all(|v| (0.0..=1.0).contains(v)));
            }
        }
        assert!(StepFunction::constant(0.5).unwrap().rescale_to_mass(1.2).is_err());
        let zero = StepFunction::constant(0.0).unwrap().rescale_to_mass(0.25).unwrap();
        assert!((zero.mass() - 0.25).abs() < 1e-15);
    }

    #[test]
    fn normalize_examples() {
        let a1 = a1(0.75).unwrap();
        assert_eq!(a1.normalize(), a1);
        let swapped = StepFunction::from_widths(&[0.5, 0.5], &[0.0, 1.0, 1.0, 1.0]).unwrap();
        assert_eq!(swapped.normalize(), a1);
        let dup = StepFunction::from_widths(&[0.25, 0.25, 0.5], &[1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 0.0]).unwrap();
        let merged = dup.normalize();
        assert_eq!(merged.k(), 2);
        assert_eq!(merged, a1);
    }

    #[test]
    fn shrink_scales_mass_and_s() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..50 {
            let (k, c) = (rng.gen_range(1..6), rng.gen());
            let a = StepFunction::random(&mut rng, k, c).unwrap();
            let lambda: f64 = rng.gen_range(0.1..1.0);
            let b = a.shrink(lambda).unwrap();
            assert!((b.mass() - lambda.powi(2) * a.mass()).abs() < 1e-13);
            assert!((b.s_value() - lambda.powi(5) * a.s_value()).abs() < 1e-13);
        }
        assert!(StepFunction::constant(1.0).unwrap().shrink(0.0).is_err());
    }

    /// Finds i1 != i2, j1 != j2 with A[i1][j1] < A[i2][j1] and A[i1][j2] > A[i2][j2].
    fn violating_quadruple(a: &StepFunction) -> Option<(usize, usize, usize, usize)> {
        let k = a.k();
        for i1 in 0..k {
            for i2 in 0..k {
                for j1 in 0..k {
                    for j2 in 0..k {
                        if i1 != i2 && j1 != j2 && a.value(i1, j1) < a.value(i2, j1) && a.value(i1, j2) > a.value(i2, j2) {
                            return Some((i1, i2, j1, j2));
                        }
                    }
                }
            }
        }
        None
    }

    #[test]
    fn rect_swap_keeps_profile_and_lowers_t_on_violations() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let mut checked = 0;
        while checked < 300 {
            let k = rng.gen_range(2..=6);
            let c = rng.gen_range(0.1..0.9);
            let a = StepFunction::random(&mut rng, k, c).unwrap();
            let Some((i1, i2, j1, j2)) = violating_quadruple(&a) else { continue };
            let t = a.widths();
            // Small enough that all four cells stay inside [0,1] and ordered.
            let gap = (a.value(i2, j1) - a.value(i1, j1)).min(a.value(i1, j2) - a.value(i2, j2));
            let min_area = t.iter().cloned().fold(f64::INFINITY, f64::min).powi(2);
            let eps = 1e-3 * gap * min_area;
            let Ok(b) = a.rect_swap(i1, i2, j1, j2, eps) else { continue };
            for (x, y) in a.row_profile().iter().zip(b.row_profile()) {
                assert!((x - y).abs() < 1e-14);
            }
            assert!((a.s_value() - b.s_value()).abs() < 1e-14);
            assert!((a.mass() - b.mass()).abs() < 1e-14);
            assert!(b.t_value() < a.t_value(), "T did not drop: {} -> {}", a.t_value(), b.t_value());
            checked += 1;
        }
    }

    #[test]
    fn text_format() {
        let a = StepFunction::from_widths(&[0.25, 0.75], &[1.0, 0.5, 0.5, 0.0]).unwrap();
        assert_eq!(a.to_string(), "2\n0 0.25 1\n1 0.5\n0.5 0\n");
        assert!("2\n0 0.5 1\n1 0.5\n".parse::<StepFunction>().is_err());
        assert!("1\n0 1\nx\n".parse::<StepFunction>().is_err());
    }

    proptest! {
        #[test]
        fn text_round_trip_is_exact(seed in any::<u64>(), k in 1usize..8, c in 0.0f64..1.0) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let a = StepFunction::random(&mut rng, k, c).unwrap();
            let back: StepFunction = a.to_string().parse().unwrap();
            prop_assert_eq!(back, a);
        }

        #[test]
        fn normalize_preserves_s_and_mass(seed in any::<u64>(), k in 1usize..9, c in 0.0f64..1.0) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let a = StepFunction::random(&mut rng, k, c).unwrap();
            let b = a.normalize();
            prop_assert!((a.s_value() - b.s_value()).abs() <= 1e-14);
            prop_assert!((a.mass() - b.mass()).abs() <= 1e-14);
            let ell = b.row_profile();
            prop_assert!(ell.windows(2).all(|w| w[0] >= w[1]));
            prop_assert_eq!(b.normalize(), b);
        }
    }
}
