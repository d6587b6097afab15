//! The property suites behind `pathdensity verify-all`, sized by a
//! [`VerifyConfig`] that can be read from `key = value` text.

use std::collections::BTreeMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bounds::{crossing_point, upper_clique_density, upper_star_density};
use crate::construct::{choose2, near_regular, quasi_clique, quasi_star, random_gnp, random_regular};
use crate::count::{
    count_p4, count_p4_brute, count_walks4_brute, walks4_codegree_sum, walks4_matrix_power,
};
use crate::graph::{Adjacency, Graph};
use crate::search::{extremal_search, for_each_graph, verify_ahlswede_katona, Statistic, AK_MAX_N};
use crate::stepfun::{
    a1, a2, maximize_s_restarts, s_two_step_closed, three_step, three_step_interval, two_step,
    two_step_interval, OptimizerConfig, StepFunction,
};
use crate::{Error, Result};

/// Densities at which the step-function suites run.
pub const DENSITIES: [f64; 5] = [0.05, 0.0865, 0.3, 0.7, 0.95];

/// Parses `key = value` lines. Blank lines and `#` comments are skipped;
/// repeated keys are an error.
pub fn parse_config(text: &str) -> Result<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or_else(|| Error::parse(i + 1, format!("expected key = value, got {line:?}")))?;
        let (k, v) = (k.trim(), v.trim());
        if k.is_empty() {
            return Err(Error::parse(i + 1, "empty key"));
        }
        if out.insert(k.to_string(), v.to_string()).is_some() {
            return Err(Error::parse(i + 1, format!("duplicate key {k:?}")));
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerifyConfig {
    /// Largest order for exhaustive enumeration (2-path maxima use `min(n_max, 7)`).
    pub n_max: usize,
    pub seed: u64,
    /// Absolute tolerance for floating-point identities.
    pub tolerance: f64,
    pub random_graphs: usize,
    /// Random step functions per density.
    pub samples: usize,
    pub grid_points: usize,
    /// Optimizer restarts per density; 0 skips the optimizer suite.
    pub restarts: usize,
    pub blocks: usize,
    /// Allowed distance of the best optimizer value from the bound.
    pub optimizer_gap: f64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            n_max: 6,
            seed: 1,
            tolerance: 1e-12,
            random_graphs: 200,
            samples: 2000,
            grid_points: 100,
            restarts: 16,
            blocks: 6,
            optimizer_gap: 1e-3,
        }
    }
}

impl VerifyConfig {
    pub const KEYS: [&'static str; 9] = [
        "n_max",
        "seed",
        "tolerance",
        "random_graphs",
        "samples",
        "grid_points",
        "restarts",
        "blocks",
        "optimizer_gap",
    ];

    /// Overrides fields named in `map`; keys it does not know are ignored so
    /// one file can configure several subcommands.
    pub fn apply(&mut self, map: &BTreeMap<String, String>) -> Result<()> {
        fn get<T: std::str::FromStr>(map: &BTreeMap<String, String>, key: &str, slot: &mut T) -> Result<()> {
            if let Some(v) = map.get(key) {
                *slot = v.parse().map_err(|_| Error::InvalidParameter(format!("bad value {v:?} for {key}")))?;
            }
            Ok(())
        }
        get(map, "n_max", &mut self.n_max)?;
        get(map, "seed", &mut self.seed)?;
        get(map, "tolerance", &mut self.tolerance)?;
        get(map, "random_graphs", &mut self.random_graphs)?;
        get(map, "samples", &mut self.samples)?;
        get(map, "grid_points", &mut self.grid_points)?;
        get(map, "restarts", &mut self.restarts)?;
        get(map, "blocks", &mut self.blocks)?;
        get(map, "optimizer_gap", &mut self.optimizer_gap)?;
        self.validate()
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_max == 0 || self.n_max > 8 {
            return Err(Error::InvalidParameter(format!("n_max must be in 1..=8, got {}", self.n_max)));
        }
        if !(self.tolerance >= 0.0) || !(self.optimizer_gap >= 0.0) {
            return Err(Error::InvalidParameter("tolerances must be non-negative".into()));
        }
        if self.grid_points < 2 {
            return Err(Error::InvalidParameter("grid_points must be at least 2".into()));
        }
        if self.blocks < 2 {
            return Err(Error::InvalidParameter("blocks must be at least 2".into()));
        }
        Ok(())
    }
}

/// Outcome of one suite: how many checks ran, how many failed, and the first failure.
#[derive(Clone, Debug, PartialEq)]
pub struct SuiteResult {
    pub name: &'static str,
    pub checks: usize,
    pub failures: usize,
    pub first_failure: Option<String>,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

impl fmt::Display for SuiteResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            write!(f, "PASS {:<22} {} checks", self.name, self.checks)
        } else {
            write!(f, "FAIL {:<22} {}/{} checks failed", self.name, self.failures, self.checks)?;
            if let Some(msg) = &self.first_failure {
                write!(f, "; first: {msg}")?;
            }
            Ok(())
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerifyReport {
    pub suites: Vec<SuiteResult>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(SuiteResult::passed)
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.suites {
            writeln!(f, "{s}")?;
        }
        let ok = self.suites.iter().filter(|s| s.passed()).count();
        write!(f, "{} {ok}/{} suites", if self.passed() { "PASS" } else { "FAIL" }, self.suites.len())
    }
}

struct Suite {
    name: &'static str,
    checks: usize,
    failures: usize,
    first_failure: Option<String>,
}

impl Suite {
    fn new(name: &'static str) -> Self {
        Suite { name, checks: 0, failures: 0, first_failure: None }
    }

    fn check(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(msg());
            }
        }
    }

    fn finish(self) -> SuiteResult {
        SuiteResult { name: self.name, checks: self.checks, failures: self.failures, first_failure: self.first_failure }
    }
}

fn rng_for(cfg: &VerifyConfig, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(stream);
    rng
}

fn bound(c: f64) -> f64 {
    upper_star_density(c).unwrap_or(f64::NAN).max(upper_clique_density(c).unwrap_or(f64::NAN))
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}

fn all_graphs(n_max: usize, mut f: impl FnMut(&Graph)) {
    for n in 1..=n_max {
        for e in 0..=choose2(n as u64) {
            for_each_graph(n, e, |g| f(&g.to_graph())).expect("n within search cap");
        }
    }
}

fn counting_oracles(cfg: &VerifyConfig) -> SuiteResult {
    let mut s = Suite::new("counting-oracles");
    let one = |s: &mut Suite, g: &Graph| {
        let (m, c) = (walks4_matrix_power(g), walks4_codegree_sum(g));
        let b = count_walks4_brute(g).expect("small graph");
        s.check(m == c && c == b, || format!("walks4 {m}/{c}/{b} on {:?}", g.edges()));
        if g.n() <= 12 {
            let (p, pb) = (count_p4(g), count_p4_brute(g).expect("small graph"));
            s.check(p == pb, || format!("p4 {p} vs {pb} on {:?}", g.edges()));
        }
    };
    all_graphs(cfg.n_max.min(5), |g| one(&mut s, g));
    let mut rng = rng_for(cfg, 1);
    for _ in 0..cfg.random_graphs {
        let n = rng.gen_range(1..=20);
        let p = rng.gen::<f64>();
        let g = random_gnp(&mut rng, n, p).expect("p in range");
        one(&mut s, &g);
    }
    s.finish()
}

fn walk_sandwich(cfg: &VerifyConfig) -> SuiteResult {
    let mut s = Suite::new("walk-bounds");
    let tol = cfg.tolerance;
    let one = |s: &mut Suite, g: &Graph| {
        let (n, e) = (g.n() as u128, g.e() as u128);
        let w = walks4_codegree_sum(g);
        s.check(w * n.pow(3) >= 16 * e.pow(4), || format!("lower bound fails on {:?}", g.edges()));
        let density = w as f64 / (n as f64).powi(5);
        let c = g.density();
        s.check(density <= bound(c) + tol.max(1e-9), || format!("upper bound fails at c = {c}"));
    };
    all_graphs(cfg.n_max.min(5), |g| one(&mut s, g));
    let mut rng = rng_for(cfg, 2);
    for _ in 0..cfg.random_graphs {
        let n = rng.gen_range(5..=64);
        let p = rng.gen::<f64>();
        let g = random_gnp(&mut rng, n, p).expect("p in range");
        one(&mut s, &g);
    }
    for _ in 0..cfg.random_graphs.min(50) {
        let n = rng.gen_range(2..=40);
        let d = rng.gen_range(0..n);
        if n * d % 2 == 1 {
            continue;
        }
        let g = random_regular(&mut rng, n, d).expect("parity checked");
        let w = walks4_codegree_sum(&g);
        s.check(w == (n * d.pow(4)) as u128, || format!("{d}-regular on {n}: {w}"));
    }
    s.finish()
}

fn constructions(cfg: &VerifyConfig) -> SuiteResult {
    let mut s = Suite::new("constructions");
    for n in 1..=4 * cfg.n_max {
        for e in 0..=choose2(n as u64) {
            let qc = quasi_clique(n, e).expect("capacity");
            let qs = quasi_star(n, e).expect("capacity");
            let nr = near_regular(n, e).expect("capacity");
            s.check(qc.e() as u64 == e && qs.e() as u64 == e && nr.e() as u64 == e, || format!("edge count at ({n}, {e})"));
            let degs = nr.degrees();
            let spread = degs.iter().max().unwrap() - degs.iter().min().unwrap();
            s.check(spread <= 1, || format!("near_regular spread {spread} at ({n}, {e})"));
        }
    }
    s.finish()
}

fn exhaustive(cfg: &VerifyConfig) -> Result<SuiteResult> {
    let mut s = Suite::new("exhaustive-search");
    for n in 1..=cfg.n_max.min(AK_MAX_N) {
        let rep = verify_ahlswede_katona(n)?;
        for row in &rep.rows {
            s.check(row.passed(), || format!("2-paths at ({n}, {}): max {} vs {}/{}", row.e, row.max, row.quasi_star, row.quasi_clique));
        }
    }
    for n in 1..=cfg.n_max.min(6) {
        for e in 0..=choose2(n as u64) {
            let r = extremal_search(n, e, Statistic::P4)?;
            s.check(r.max_value >= r.quasi_clique_value.max(r.quasi_star_value), || format!("p4 max below a construction at ({n}, {e})"));
            for key in &r.max_witnesses {
                let g = key.to_graph();
                s.check(count_p4(&g) == r.max_value, || format!("witness {key} does not recount"));
            }
        }
    }
    Ok(s.finish())
}

fn closed_forms(cfg: &VerifyConfig) -> Result<SuiteResult> {
    let mut s = Suite::new("closed-forms");
    let tol = cfg.tolerance;
    let cp = crossing_point()?;
    s.check((0.0860..=0.0870).contains(&cp.c0), || format!("crossing point {} outside [0.0860, 0.0870]", cp.c0));
    s.check(cp.residual < 1e-12 && cp.residual <= tol, || format!("crossing residual {}", cp.residual));
    let points = cfg.grid_points;
    for i in 0..points {
        let c = (i + 1) as f64 / (points + 1) as f64;
        let (sa1, sa2) = (a1(c)?.s_value(), a2(c)?.s_value());
        let star = (1.0 - (1.0 - c).sqrt()).powi(2) * ((c + 1.0) * (1.0 - c).sqrt() + c);
        s.check(close(sa1, star, tol), || format!("S(a1({c})) = {sa1} vs {star}"));
        s.check(close(sa2, c.powf(2.5), tol), || format!("S(a2({c})) = {sa2} vs {}", c.powf(2.5)));
    }
    Ok(s.finish())
}

fn argmax_is_endpoint(values: &[f64]) -> bool {
    let mut best = 0;
    for (i, v) in values.iter().enumerate() {
        if *v > values[best] {
            best = i;
        }
    }
    best == 0 || best == values.len() - 1
}

fn families(cfg: &VerifyConfig) -> Result<SuiteResult> {
    let mut s = Suite::new("step-families");
    let tol = cfg.tolerance;
    for i in 1..=50 {
        let c = i as f64 / 51.0;
        let (lo, hi) = two_step_interval(c)?;
        let mut values = Vec::with_capacity(200);
        for j in 0..200 {
            let x = lo + (hi - lo) * j as f64 / 199.0;
            let direct = two_step(c, x)?.s_value();
            let closed = s_two_step_closed(c, x)?;
            s.check(close(direct, closed, tol), || format!("two_step({c}, {x}): {direct} vs {closed}"));
            values.push(direct);
        }
        s.check(argmax_is_endpoint(&values), || format!("two_step interior maximum at c = {c}"));
    }
    for i in 1..=30 {
        let sm = i as f64 / 31.0;
        let (lo, hi) = three_step_interval(sm)?;
        let values = (0..200)
            .map(|j| Ok(three_step(sm, lo + (hi - lo) * j as f64 / 199.0)?.s_value()))
            .collect::<Result<Vec<_>>>()?;
        s.check(argmax_is_endpoint(&values), || format!("three_step interior maximum at s = {sm}"));
    }
    Ok(s.finish())
}

fn random_step_functions(cfg: &VerifyConfig) -> Result<SuiteResult> {
    let mut s = Suite::new("step-function-bound");
    let tol = cfg.tolerance;
    let mut rng = rng_for(cfg, 3);
    for &c in &DENSITIES {
        let b = bound(c);
        for _ in 0..cfg.samples {
            let k = rng.gen_range(1..=8);
            let f = StepFunction::random(&mut rng, k, c)?;
            let sv = f.s_value();
            s.check(sv <= b + tol, || format!("S = {sv} above bound {b} at c = {c}"));
            let n = f.normalize();
            s.check(close(n.s_value(), sv, tol.max(1e-14)), || "normalize changed S".to_string());
        }
    }
    for _ in 0..cfg.random_graphs.min(100) {
        let n = rng.gen_range(1..=30);
        let p = rng.gen::<f64>();
        let g = random_gnp(&mut rng, n, p)?;
        let f = StepFunction::from_graph(&g)?;
        let degree_sum: u128 = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .map(|(i, j)| {
                let (a, b) = (g.degree(i) as u128, g.degree(j) as u128);
                a * b * a.min(b)
            })
            .sum();
        let exact = degree_sum as f64 / (n as f64).powi(5);
        s.check(close(f.s_value(), exact, 1e-12), || format!("S(from_graph) {} vs {exact}", f.s_value()));
        s.check(f.s_value() + 1e-12 >= walks4_codegree_sum(&g) as f64 / (n as f64).powi(5), || "S below walk density".into());
    }
    Ok(s.finish())
}

fn optimizer(cfg: &VerifyConfig) -> Result<SuiteResult> {
    let mut s = Suite::new("optimizer");
    if cfg.restarts == 0 {
        return Ok(s.finish());
    }
    let oc = OptimizerConfig::default();
    for (i, &c) in DENSITIES.iter().enumerate() {
        let r = maximize_s_restarts(c, cfg.blocks, cfg.restarts, cfg.seed.wrapping_add(i as u64), &oc)?;
        let b = bound(c);
        s.check(r.best.s_value <= b + 1e-9, || format!("optimizer exceeded bound at c = {c}"));
        s.check(b - r.best.s_value <= cfg.optimizer_gap, || format!("optimizer gap {} at c = {c}", b - r.best.s_value));
        let monotone = r.best.trace.windows(2).all(|w| w[1].s_value > w[0].s_value);
        let mass_ok = r.best.trace.iter().all(|t| (t.mass - c).abs() <= 1e-12);
        s.check(monotone && mass_ok, || format!("trace not monotone or mass drift at c = {c}"));
    }
    Ok(s.finish())
}

fn sharpness(_cfg: &VerifyConfig) -> Result<SuiteResult> {
    let mut s = Suite::new("sharpness-trend");
    let c = 0.3;
    let mut previous = 0.0;
    for n in [50usize, 100, 200, 400] {
        let e = (c * (n * n) as f64 / 2.0).round() as u64;
        let nf = n as f64;
        let ratio = count_p4(&quasi_clique(n, e)?) as f64 / (0.5 * c.powf(2.5) * nf.powi(5));
        s.check(ratio > previous, || format!("ratio not increasing at n = {n}: {ratio}"));
        previous = ratio;
        let nr = count_p4(&near_regular(n, e)?) as f64;
        s.check(nr <= 0.5 * c.powi(4) * nf.powi(5), || format!("near-regular above the c^4 scale at n = {n}"));
    }
    s.check(previous > 0.9, || format!("ratio {previous} at n = 400"));
    Ok(s.finish())
}

/// Runs every suite. Errors are returned only for invalid configuration;
/// property failures are reported in the result.
pub fn verify_all(cfg: &VerifyConfig) -> Result<VerifyReport> {
    cfg.validate()?;
    Ok(VerifyReport {
        suites: vec![
            counting_oracles(cfg),
            walk_sandwich(cfg),
            constructions(cfg),
            exhaustive(cfg)?,
            closed_forms(cfg)?,
            families(cfg)?,
            random_step_functions(cfg)?,
            optimizer(cfg)?,
            sharpness(cfg)?,
        ],
    })
}
