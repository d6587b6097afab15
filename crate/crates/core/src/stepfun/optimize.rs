//! Hill climbing for `S` at fixed mass over step functions with a block budget.

use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{s_from_profile, StepFunction};
use crate::fmt::sig12;
use crate::{Error, Result};

pub const TRACE_CSV_HEADER: &str = "iter,move_kind,s_value,t_value,mass";

#[derive(Clone, Debug, PartialEq)]
pub struct OptimizerConfig {
    /// Stop after this many consecutive rejected proposals.
    pub patience: usize,
    pub max_iters: usize,
    /// A proposal is accepted iff it raises `S` by more than this.
    pub accept_threshold: f64,
    pub mass_tolerance: f64,
    /// Blocks narrower than this are removed.
    pub min_width: f64,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        OptimizerConfig {
            patience: 200,
            max_iters: 100_000,
            accept_threshold: 1e-14,
            mass_tolerance: 1e-12,
            min_width: 1e-10,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MoveKind {
    Init,
    /// Mass moved between two cells of one column (and their mirror cells).
    Shift,
    /// A rectangle swap followed by a shift.
    Swap,
    /// A block cut in two, with the mass of its row pushed into the first part.
    Split,
    /// Width moved between two blocks, mass restored in one cell.
    Boundary,
}

impl MoveKind {
    pub fn as_str(self) -> &'static str {
        match self {
            MoveKind::Init => "init",
            MoveKind::Shift => "shift",
            MoveKind::Swap => "swap",
            MoveKind::Split => "split",
            MoveKind::Boundary => "boundary",
        }
    }
}

impl fmt::Display for MoveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TraceEntry {
    pub iter: usize,
    pub move_kind: MoveKind,
    pub s_value: f64,
    pub t_value: f64,
    pub mass: f64,
}

impl TraceEntry {
    pub fn csv(&self) -> String {
        format!(
            "{},{},{},{},{}",
            self.iter,
            self.move_kind,
            sig12(self.s_value),
            sig12(self.t_value),
            sig12(self.mass)
        )
    }
}

#[derive(Clone, Debug)]
pub struct OptimizeResult {
    pub function: StepFunction,
    pub s_value: f64,
    pub trace: Vec<TraceEntry>,
    /// Proposals made, accepted or not.
    pub iterations: usize,
}

#[derive(Clone, Debug)]
pub struct RestartSummary {
    pub best: OptimizeResult,
    pub best_index: usize,
    /// Final `S` of every restart, in restart order.
    pub finals: Vec<f64>,
}

/// Mutable working copy: widths and a row-major value matrix.
#[derive(Clone)]
struct Work {
    t: Vec<f64>,
    v: Vec<f64>,
}

impl Work {
    fn of(f: &StepFunction) -> Work {
        Work { t: f.widths(), v: f.values().to_vec() }
    }

    fn k(&self) -> usize {
        self.t.len()
    }

    fn at(&self, i: usize, j: usize) -> f64 {
        self.v[i * self.k() + j]
    }

    fn set(&mut self, i: usize, j: usize, x: f64) {
        let k = self.k();
        self.v[i * k + j] = x;
        self.v[j * k + i] = x;
    }

    /// Mass carried by one unit of value in cell `(i, j)` and its mirror.
    fn weight(&self, i: usize, j: usize) -> f64 {
        self.t[i] * self.t[j] * if i == j { 1.0 } else { 2.0 }
    }

    fn ell(&self) -> Vec<f64> {
        let k = self.k();
        (0..k).map(|i| (0..k).map(|j| self.t[j] * self.v[i * k + j]).sum()).collect()
    }

    fn mass(&self) -> f64 {
        self.t.iter().zip(self.ell()).map(|(t, l)| t * l).sum()
    }

    fn s(&self) -> f64 {
        s_from_profile(&self.t, &self.ell())
    }

    fn remove(&mut self, b: usize) {
        let k = self.k();
        self.v = (0..k)
            .filter(|&i| i != b)
            .flat_map(|i| (0..k).filter(|&j| j != b).map(move |j| (i, j)))
            .map(|(i, j)| self.v[i * k + j])
            .collect();
        self.t.remove(b);
    }

    /// Sets cell `(p, q)` so that the total mass becomes `c`.
    fn restore_mass(&mut self, p: usize, q: usize, c: f64) -> Option<()> {
        let w = self.weight(p, q);
        if w <= 0.0 {
            return None;
        }
        let x = self.at(p, q) + (c - self.mass()) / w;
        if !(-1e-15..=1.0 + 1e-15).contains(&x) {
            return None;
        }
        self.set(p, q, x.clamp(0.0, 1.0));
        Some(())
    }

    /// Merges blocks with identical rows.
    fn merge_identical(&mut self) {
        'outer: loop {
            let k = self.k();
            for i in 0..k {
                for j in i + 1..k {
                    if (0..k).all(|p| self.v[i * k + p] == self.v[j * k + p]) {
                        self.t[i] += self.t[j];
                        self.remove(j);
                        continue 'outer;
                    }
                }
            }
            return;
        }
    }

    fn to_function(&self) -> Result<StepFunction> {
        // Snap the total width to exactly one before handing over.
        let total: f64 = self.t.iter().sum();
        let widths: Vec<f64> = self.t.iter().map(|t| t / total).collect();
        StepFunction::from_widths(&widths, &self.v)
    }
}

fn two_distinct(rng: &mut ChaCha8Rng, k: usize) -> (usize, usize) {
    let a = rng.gen_range(0..k);
    let mut b = rng.gen_range(0..k - 1);
    if b >= a {
        b += 1;
    }
    (a, b)
}

fn shift(w: &mut Work, rng: &mut ChaCha8Rng, c: f64) -> Option<()> {
    let k = w.k();
    let p = rng.gen_range(0..k);
    let (a, b) = two_distinct(rng, k);
    let (wa, wb) = (w.weight(a, p), w.weight(b, p));
    let (va, vb) = (w.at(a, p), w.at(b, p));
    // δ on (a, p) is paid for by -δ·wa/wb on (b, p).
    let lo = (-va).max(-(1.0 - vb) * wb / wa);
    let hi = (1.0 - va).min(vb * wb / wa);
    if !(hi > lo) {
        return None;
    }
    let delta = rng.gen_range(lo..=hi);
    w.set(a, p, (va + delta).clamp(0.0, 1.0));
    w.restore_mass(b, p, c)
}

fn swap(w: &mut Work, rng: &mut ChaCha8Rng, c: f64) -> Option<()> {
    let k = w.k();
    let (i1, i2) = two_distinct(rng, k);
    let (j1, j2) = two_distinct(rng, k);
    // Per-unit-ε change of every cell after symmetrization.
    let mut d = vec![0.0; k * k];
    for (i, j, sign) in [(i1, j1, 1.0), (i2, j1, -1.0), (i1, j2, -1.0), (i2, j2, 1.0)] {
        let x = sign / (w.t[i] * w.t[j]) / 2.0;
        d[i * k + j] += x;
        d[j * k + i] += x;
    }
    let (mut lo, mut hi) = (f64::NEG_INFINITY, f64::INFINITY);
    for (cell, &dc) in d.iter().enumerate() {
        if dc != 0.0 {
            let (a, b) = (-w.v[cell] / dc, (1.0 - w.v[cell]) / dc);
            lo = lo.max(a.min(b));
            hi = hi.min(a.max(b));
        }
    }
    if !(hi > lo) {
        return None;
    }
    let eps = rng.gen_range(lo..=hi);
    for (cell, &dc) in d.iter().enumerate() {
        w.v[cell] = (w.v[cell] + eps * dc).clamp(0.0, 1.0);
    }
    shift(w, rng, c)
}

fn split(w: &mut Work, rng: &mut ChaCha8Rng, min_width: f64) -> Option<()> {
    let k = w.k();
    let j = rng.gen_range(0..k);
    let lambda: f64 = rng.gen_range(0.0..1.0);
    if lambda * w.t[j] < min_width || (1.0 - lambda) * w.t[j] < min_width {
        return None;
    }
    // Old index i maps to i, or i + 1 past j; the new block j + 1 is the tail.
    let m = k + 1;
    let idx = |i: usize| if i <= j { i } else { i + 1 };
    let mut v = vec![0.0; m * m];
    for p in 0..k {
        for q in 0..k {
            v[idx(p) * m + idx(q)] = w.at(p, q);
        }
    }
    for p in (0..k).filter(|&p| p != j) {
        let x = w.at(j, p);
        let head = (x / lambda).min(1.0);
        let tail = ((x - head * lambda) / (1.0 - lambda)).max(0.0);
        for (r, val) in [(j, head), (j + 1, tail)] {
            v[r * m + idx(p)] = val;
            v[idx(p) * m + r] = val;
        }
    }
    let x = w.at(j, j);
    let l2 = lambda * lambda;
    let head = (x / l2).min(1.0);
    let rest = ((x - head * l2) / (1.0 - l2)).max(0.0);
    v[j * m + j] = head;
    v[j * m + j + 1] = rest;
    v[(j + 1) * m + j] = rest;
    v[(j + 1) * m + j + 1] = rest;
    let tj = w.t[j];
    w.t[j] = lambda * tj;
    w.t.insert(j + 1, (1.0 - lambda) * tj);
    w.v = v;
    Some(())
}

fn boundary(w: &mut Work, rng: &mut ChaCha8Rng, c: f64, min_width: f64) -> Option<()> {
    let k = w.k();
    let (alpha, beta) = two_distinct(rng, k);
    let total = w.t[alpha] + w.t[beta];
    let x = rng.gen_range(0.0..total);
    w.t[beta] = x;
    w.t[alpha] = total - x;
    let keep = if x < min_width {
        w.t[alpha] = total;
        w.remove(beta);
        if alpha > beta { alpha - 1 } else { alpha }
    } else if total - x < min_width {
        w.t[beta] = total;
        w.remove(alpha);
        if beta > alpha { beta - 1 } else { beta }
    } else {
        beta
    };
    let p = rng.gen_range(0..w.k());
    w.restore_mass(p, keep, c)
}

fn check_args(c: f64, k: usize) -> Result<()> {
    if !(c > 0.0 && c < 1.0) {
        return Err(Error::DensityOutOfRange(c));
    }
    if k < 2 {
        return Err(Error::InvalidParameter(format!("block budget must be at least 2, got {k}")));
    }
    Ok(())
}

fn entry(iter: usize, move_kind: MoveKind, w: &Work) -> Result<TraceEntry> {
    let f = w.to_function()?;
    Ok(TraceEntry { iter, move_kind, s_value: w.s(), t_value: f.t_value(), mass: w.mass() })
}

/// Maximizes `S` over step functions of mass `c` with at most `k` blocks,
/// starting from [`StepFunction::random`] with `k` blocks.
///
/// Each proposal picks a move family uniformly among those available (split
/// only below the budget) and draws its parameters uniformly from their
/// feasible range. A proposal is kept iff `S` rises by more than
/// `accept_threshold` and the mass stays within `mass_tolerance` of `c`.
pub fn maximize_s(c: f64, k: usize, seed: u64, config: &OptimizerConfig) -> Result<OptimizeResult> {
    maximize_with(c, k, &mut ChaCha8Rng::seed_from_u64(seed), config)
}

fn maximize_with(c: f64, k: usize, rng: &mut ChaCha8Rng, config: &OptimizerConfig) -> Result<OptimizeResult> {
    check_args(c, k)?;
    let start = StepFunction::random(rng, k, c)?;
    let mut work = Work::of(&start);
    work.merge_identical();
    let mut s = work.s();
    let mut trace = vec![entry(0, MoveKind::Init, &work)?];
    let mut rejected = 0;
    let mut iter = 0;
    while iter < config.max_iters && rejected < config.patience {
        iter += 1;
        let mut kinds = vec![MoveKind::Shift, MoveKind::Swap, MoveKind::Boundary];
        if work.k() < k {
            kinds.push(MoveKind::Split);
        }
        if work.k() < 2 {
            kinds.retain(|m| *m == MoveKind::Split);
        }
        let kind = *kinds.choose(rng).expect("at least one move family");
        let mut cand = work.clone();
        let ok = match kind {
            MoveKind::Shift => shift(&mut cand, rng, c),
            MoveKind::Swap => swap(&mut cand, rng, c),
            MoveKind::Split => split(&mut cand, rng, config.min_width),
            MoveKind::Boundary => boundary(&mut cand, rng, c, config.min_width),
            MoveKind::Init => unreachable!(),
        };
        let s_new = cand.s();
        let accepted = ok.is_some()
            && s_new - s > config.accept_threshold
            && (cand.mass() - c).abs() <= config.mass_tolerance;
        if !accepted {
            rejected += 1;
            continue;
        }
        rejected = 0;
        cand.merge_identical();
        work = cand;
        s = work.s();
        trace.push(entry(iter, kind, &work)?);
    }
    let function = work.to_function()?.normalize();
    Ok(OptimizeResult { s_value: function.s_value(), function, trace, iterations: iter })
}

/// Runs `restarts` independent climbs and keeps the best (lowest index on
/// ties). Restart `i` draws from stream `i` of the ChaCha generator seeded
/// with `seed`, so results do not depend on scheduling.
pub fn maximize_s_restarts(
    c: f64,
    k: usize,
    restarts: usize,
    seed: u64,
    config: &OptimizerConfig,
) -> Result<RestartSummary> {
    check_args(c, k)?;
    if restarts == 0 {
        return Err(Error::InvalidParameter("need at least one restart".into()));
    }
    let run = |i: usize| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(i as u64);
        maximize_with(c, k, &mut rng, config)
    };
    #[cfg(feature = "parallel")]
    let results: Vec<Result<OptimizeResult>> = {
        use rayon::prelude::*;
        (0..restarts).into_par_iter().map(run).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let results: Vec<Result<OptimizeResult>> = (0..restarts).map(run).collect();
    let results = results.into_iter().collect::<Result<Vec<_>>>()?;
    let finals: Vec<f64> = results.iter().map(|r| r.s_value).collect();
    let mut best_index = 0;
    for (i, &s) in finals.iter().enumerate() {
        if s > finals[best_index] {
            best_index = i;
        }
    }
    let best = results.into_iter().nth(best_index).expect("index in range");
    Ok(RestartSummary { best, best_index, finals })
}
