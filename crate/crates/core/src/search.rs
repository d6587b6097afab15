//! Exhaustive extremal search over every labeled graph with `n <= 8`
//! vertices and a fixed number of edges.
//!
//! Edge sets are bitmasks over the `C(n, 2)` vertex pairs in column order
//! `(0,1), (0,2), (1,2), (0,3), ...`, so the lowest `e` bits form the
//! quasi-clique. Work is split by the lowest set bit (the first edge) and the
//! per-part results are merged with an associative, commutative merge.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::bounds::{ak_regime, Regime};
use crate::construct::{choose2, near_regular, quasi_clique, quasi_star};
use crate::count::{binomial, count_kstars, count_p2, count_p4, walks4_codegree_sum};
use crate::graph::{Adjacency, CanonicalKey};
use crate::{Error, Result};

/// Largest order accepted by [`extremal_search`] and [`p4_extremal_table`].
pub const SEARCH_MAX_N: usize = 8;
/// Largest order accepted by [`verify_ahlswede_katona`].
pub const AK_MAX_N: usize = 7;
/// Witnesses stored per search; [`SearchResult::num_max_classes`] counts all.
pub const WITNESS_CAP: usize = 16;

pub const TABLE_CSV_HEADER: &str = "n,e,max,min,quasi_star,quasi_clique,near_regular,verdict,num_max_classes";

/// A graph on at most 16 vertices with one `u16` neighbourhood mask per vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SmallGraph {
    n: u8,
    rows: [u16; 16],
}

impl SmallGraph {
    pub fn empty(n: usize) -> Result<Self> {
        if n > 16 {
            return Err(Error::SizeCap { what: "SmallGraph", n, max: 16 });
        }
        Ok(SmallGraph { n: n as u8, rows: [0; 16] })
    }

    /// Decodes an edge mask over `pairs` (see [`pair_list`]).
    fn from_mask(n: usize, pairs: &[(u8, u8)], mut mask: u64) -> Self {
        let mut rows = [0u16; 16];
        while mask != 0 {
            let (u, v) = pairs[mask.trailing_zeros() as usize];
            rows[u as usize] |= 1 << v;
            rows[v as usize] |= 1 << u;
            mask &= mask - 1;
        }
        SmallGraph { n: n as u8, rows }
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.n as usize;
        (0..n).flat_map(|u| (u + 1..n).filter(move |&v| self.rows[u] >> v & 1 == 1).map(move |v| (u, v))).collect()
    }

    pub fn to_graph(&self) -> crate::Graph {
        crate::Graph::from_valid_edges(self.n as usize, self.edges())
    }
}

pub struct MaskIter(u16);

impl Iterator for MaskIter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let b = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(b)
    }
}

impl Adjacency for SmallGraph {
    type Neighbors<'a> = MaskIter;

    fn order(&self) -> usize {
        self.n as usize
    }

    fn degree(&self, v: usize) -> usize {
        self.rows[v].count_ones() as usize
    }

    fn is_adjacent(&self, u: usize, v: usize) -> bool {
        self.rows[u] >> v & 1 == 1
    }

    fn common_neighbors(&self, u: usize, v: usize) -> usize {
        (self.rows[u] & self.rows[v]).count_ones() as usize
    }

    fn neighbors(&self, v: usize) -> MaskIter {
        MaskIter(self.rows[v])
    }
}

/// Vertex pairs in column order `(0,1), (0,2), (1,2), (0,3), ...`.
pub fn pair_list(n: usize) -> Vec<(u8, u8)> {
    (1..n).flat_map(|j| (0..j).map(move |i| (i as u8, j as u8))).collect()
}

/// The statistic maximized (and minimized) by a search.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Statistic {
    P2,
    P4,
    Walks4,
    KStar(usize),
}

impl Statistic {
    pub fn evaluate<G: Adjacency + ?Sized>(&self, g: &G) -> u128 {
        match *self {
            Statistic::P2 => count_p2(g),
            Statistic::P4 => count_p4(g),
            Statistic::Walks4 => walks4_codegree_sum(g),
            Statistic::KStar(k) => count_kstars(g, k),
        }
    }
}

impl fmt::Display for Statistic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Statistic::P2 => f.write_str("p2"),
            Statistic::P4 => f.write_str("p4"),
            Statistic::Walks4 => f.write_str("walks4"),
            Statistic::KStar(k) => write!(f, "kstar:{k}"),
        }
    }
}

impl FromStr for Statistic {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "p2" => Ok(Statistic::P2),
            "p4" => Ok(Statistic::P4),
            "walks4" => Ok(Statistic::Walks4),
            _ => {
                let k = s
                    .strip_prefix("kstar:")
                    .and_then(|k| k.parse::<usize>().ok())
                    .filter(|&k| k >= 1)
                    .ok_or_else(|| Error::InvalidParameter(format!("unknown statistic {s:?} (p2|p4|walks4|kstar:K)")))?;
                Ok(Statistic::KStar(k))
            }
        }
    }
}

/// Which of the two standard constructions reach the maximum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    StarAttains,
    CliqueAttains,
    BothAttain,
    OtherAttains,
}

impl Verdict {
    pub fn of(max: u128, quasi_star: u128, quasi_clique: u128) -> Self {
        match (quasi_star == max, quasi_clique == max) {
            (true, true) => Verdict::BothAttain,
            (true, false) => Verdict::StarAttains,
            (false, true) => Verdict::CliqueAttains,
            (false, false) => Verdict::OtherAttains,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::StarAttains => "star_attains",
            Verdict::CliqueAttains => "clique_attains",
            Verdict::BothAttain => "both_attain",
            Verdict::OtherAttains => "other_attains",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SearchResult {
    pub n: usize,
    pub e: u64,
    pub statistic: Statistic,
    pub max_value: u128,
    pub min_value: u128,
    /// Up to [`WITNESS_CAP`] maximizers, smallest keys first.
    pub max_witnesses: Vec<CanonicalKey>,
    /// Number of isomorphism classes attaining the maximum.
    pub num_max_classes: usize,
    pub quasi_star_value: u128,
    pub quasi_clique_value: u128,
    pub near_regular_value: u128,
    pub verdict: Verdict,
    /// Labeled edge sets visited; always `C(C(n,2), e)`.
    pub enumerated: u128,
}

impl SearchResult {
    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{}",
            self.n,
            self.e,
            self.max_value,
            self.min_value,
            self.quasi_star_value,
            self.quasi_clique_value,
            self.near_regular_value,
            self.verdict,
            self.num_max_classes
        )
    }
}

impl fmt::Display for SearchResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n = {}, e = {}, statistic = {}", self.n, self.e, self.statistic)?;
        writeln!(f, "graphs enumerated: {}", self.enumerated)?;
        writeln!(f, "max: {}", self.max_value)?;
        writeln!(f, "min: {}", self.min_value)?;
        writeln!(f, "quasi-star: {}", self.quasi_star_value)?;
        writeln!(f, "quasi-clique: {}", self.quasi_clique_value)?;
        writeln!(f, "near-regular: {}", self.near_regular_value)?;
        writeln!(f, "verdict: {}", self.verdict)?;
        writeln!(f, "maximizing classes: {}", self.num_max_classes)?;
        for key in &self.max_witnesses {
            let edges: Vec<String> = key.to_graph().edges().iter().map(|(u, v)| format!("{u}-{v}")).collect();
            writeln!(f, "  {key}  {}", edges.join(" "))?;
        }
        Ok(())
    }
}

/// Running max/min over one part of the enumeration.
#[derive(Clone, Debug)]
struct Acc {
    count: u128,
    max: u128,
    min: u128,
    classes: BTreeSet<CanonicalKey>,
}

impl Acc {
    fn new() -> Self {
        Acc { count: 0, max: 0, min: u128::MAX, classes: BTreeSet::new() }
    }

    fn push(&mut self, g: &SmallGraph, value: u128) {
        self.count += 1;
        self.min = self.min.min(value);
        if value > self.max || self.count == 1 {
            self.max = value;
            self.classes.clear();
        }
        if value == self.max {
            self.classes.insert(CanonicalKey::of(g).expect("order checked by caller"));
        }
    }

    fn merge(mut self, mut other: Acc) -> Acc {
        if other.count == 0 {
            return self;
        }
        if self.count == 0 {
            return other;
        }
        self.count += other.count;
        self.min = self.min.min(other.min);
        if other.max > self.max {
            self.max = other.max;
            self.classes = std::mem::take(&mut other.classes);
        } else if other.max == self.max {
            self.classes.append(&mut other.classes);
        }
        self
    }
}

fn check_size(n: usize, e: u64, max_n: usize, what: &'static str) -> Result<()> {
    if n == 0 {
        return Err(Error::EmptyVertexSet);
    }
    if n > max_n {
        return Err(Error::SizeCap { what, n, max: max_n });
    }
    let capacity = choose2(n as u64);
    if e > capacity {
        return Err(Error::TooManyEdges { n, e, capacity });
    }
    Ok(())
}

/// Next mask with the same popcount (Gosper's hack).
fn next_combination(x: u64) -> u64 {
    let c = x & x.wrapping_neg();
    let r = x + c;
    (((r ^ x) >> 2) / c) | r
}

/// Visits the edge sets whose lowest edge is `first` (all sets when `e == 0`).
fn for_each_in_part(n: usize, e: u64, first: usize, pairs: &[(u8, u8)], mut f: impl FnMut(&SmallGraph)) {
    let m = pairs.len();
    if e == 0 {
        f(&SmallGraph::from_mask(n, pairs, 0));
        return;
    }
    let rest = (e - 1) as usize;
    let free = m - first - 1;
    if rest > free {
        return;
    }
    let head = 1u64 << first;
    if rest == 0 {
        f(&SmallGraph::from_mask(n, pairs, head));
        return;
    }
    let limit = 1u64 << free;
    let mut tail = (1u64 << rest) - 1;
    while tail < limit {
        f(&SmallGraph::from_mask(n, pairs, head | tail << (first + 1)));
        tail = next_combination(tail);
    }
}

fn parts(n: usize, e: u64) -> Vec<usize> {
    if e == 0 {
        vec![0]
    } else {
        (0..choose2(n as u64) as usize).collect()
    }
}

/// Calls `f` on every labeled graph with `n` vertices and `e` edges, in a
/// fixed order. Sequential.
pub fn for_each_graph(n: usize, e: u64, mut f: impl FnMut(&SmallGraph)) -> Result<()> {
    check_size(n, e, SEARCH_MAX_N, "for_each_graph")?;
    let pairs = pair_list(n);
    for first in parts(n, e) {
        for_each_in_part(n, e, first, &pairs, &mut f);
    }
    Ok(())
}

fn search_parts(n: usize, e: u64, stat: Statistic) -> Acc {
    let pairs = pair_list(n);
    let run = |first: usize| {
        let mut acc = Acc::new();
        for_each_in_part(n, e, first, &pairs, |g| acc.push(g, stat.evaluate(g)));
        acc
    };
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        parts(n, e).into_par_iter().map(run).reduce(Acc::new, Acc::merge)
    }
    #[cfg(not(feature = "parallel"))]
    {
        parts(n, e).into_iter().map(run).fold(Acc::new(), Acc::merge)
    }
}

/// Exact maximum and minimum of `stat` over all labeled graphs with `n`
/// vertices and `e` edges, for `n <= 8`.
pub fn extremal_search(n: usize, e: u64, stat: Statistic) -> Result<SearchResult> {
    check_size(n, e, SEARCH_MAX_N, "extremal_search")?;
    let acc = search_parts(n, e, stat);
    let qs = stat.evaluate(&quasi_star(n, e)?);
    let qc = stat.evaluate(&quasi_clique(n, e)?);
    let nr = stat.evaluate(&near_regular(n, e)?);
    Ok(SearchResult {
        n,
        e,
        statistic: stat,
        max_value: acc.max,
        min_value: acc.min,
        max_witnesses: acc.classes.iter().take(WITNESS_CAP).copied().collect(),
        num_max_classes: acc.classes.len(),
        quasi_star_value: qs,
        quasi_clique_value: qc,
        near_regular_value: nr,
        verdict: Verdict::of(acc.max, qs, qc),
        enumerated: acc.count,
    })
}

/// One edge count of an exhaustive 2-path check.
#[derive(Clone, Debug, PartialEq)]
pub struct AkRow {
    pub e: u64,
    pub max: u128,
    pub quasi_star: u128,
    pub quasi_clique: u128,
    pub regime: Regime,
    /// `max == max(quasi_star, quasi_clique)`.
    pub max_ok: bool,
    /// In the star regime the quasi-star attains the max, in the clique
    /// regime the quasi-clique does; always true in the transition.
    pub regime_ok: bool,
    pub enumeration_ok: bool,
}

impl AkRow {
    pub fn passed(&self) -> bool {
        self.max_ok && self.regime_ok && self.enumeration_ok
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AkReport {
    pub n: usize,
    pub rows: Vec<AkRow>,
}

impl AkReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(AkRow::passed)
    }
}

impl fmt::Display for AkReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{:>3} {:>6} {:>10} {:>12} {:>10}  result", "e", "max", "quasi_star", "quasi_clique", "regime")?;
        for r in &self.rows {
            writeln!(
                f,
                "{:>3} {:>6} {:>10} {:>12} {:>10}  {}",
                r.e,
                r.max,
                r.quasi_star,
                r.quasi_clique,
                r.regime.to_string(),
                if r.passed() { "ok" } else { "FAIL" }
            )?;
        }
        let passed = self.rows.iter().filter(|r| r.passed()).count();
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "{verdict} {passed}/{} edge counts", self.rows.len())
    }
}

/// Checks, for every `0 <= e <= C(n,2)`, that the exhaustive maximum of the
/// 2-path count equals the better of the quasi-star and quasi-clique, and
/// that the right one wins away from the middle range.
pub fn verify_ahlswede_katona(n: usize) -> Result<AkReport> {
    check_size(n, 0, AK_MAX_N, "verify_ahlswede_katona")?;
    let m = choose2(n as u64);
    let rows = (0..=m)
        .map(|e| {
            let r = extremal_search(n, e, Statistic::P2)?;
            let regime = ak_regime(n, e)?;
            let regime_ok = match regime {
                Regime::Star => r.quasi_star_value == r.max_value,
                Regime::Clique => r.quasi_clique_value == r.max_value,
                Regime::Transition => true,
            };
            Ok(AkRow {
                e,
                max: r.max_value,
                quasi_star: r.quasi_star_value,
                quasi_clique: r.quasi_clique_value,
                regime,
                max_ok: r.max_value == r.quasi_star_value.max(r.quasi_clique_value),
                regime_ok,
                enumeration_ok: r.enumerated == binomial(m as u128, e as u128),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(AkReport { n, rows })
}

/// Exhaustive 4-path extremes for every `1 <= n <= n_max` and every `e`.
pub fn p4_extremal_table(n_max: usize) -> Result<Vec<SearchResult>> {
    check_size(n_max.max(1), 0, SEARCH_MAX_N, "p4_extremal_table")?;
    let mut rows = Vec::new();
    for n in 1..=n_max {
        for e in 0..=choose2(n as u64) {
            rows.push(extremal_search(n, e, Statistic::P4)?);
        }
    }
    Ok(rows)
}

/// The table as CSV text, header included.
pub fn table_csv(rows: &[SearchResult]) -> String {
    let mut out = String::from(TABLE_CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&r.csv_row());
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::count::{count_p4_brute, count_walks4};
    use crate::Graph;

    #[test]
    fn small_graph_agrees_with_graph() {
        let pairs = pair_list(6);
        for mask in [0u64, 1, 0b1011_0110_1101, (1 << 15) - 1, 0x5A5A] {
            let s = SmallGraph::from_mask(6, &pairs, mask);
            let g = s.to_graph();
            assert_eq!(g.e(), mask.count_ones() as usize);
            for u in 0..6 {
                assert_eq!(s.degree(u), g.degree(u));
                for v in 0..6 {
                    assert_eq!(s.is_adjacent(u, v), g.is_adjacent(u, v));
                    assert_eq!(s.common_neighbors(u, v), g.common_neighbors(u, v));
                }
            }
            assert_eq!(count_p4(&s), count_p4(&g));
            assert_eq!(walks4_codegree_sum(&s), count_walks4(&g));
            assert_eq!(CanonicalKey::of(&s).unwrap(), g.canonical_key().unwrap());
        }
    }

    #[test]
    fn lowest_bits_are_the_quasi_clique() {
        for n in 1..=8 {
            let pairs = pair_list(n);
            for e in 0..=choose2(n as u64) {
                let s = SmallGraph::from_mask(n, &pairs, (1u64 << e) - 1);
                assert_eq!(s.to_graph(), quasi_clique(n, e).unwrap());
            }
        }
    }

    #[test]
    fn statistic_parsing() {
        assert_eq!("p2".parse::<Statistic>().unwrap(), Statistic::P2);
        assert_eq!("kstar:3".parse::<Statistic>().unwrap(), Statistic::KStar(3));
        assert_eq!("walks4".parse::<Statistic>().unwrap().to_string(), "walks4");
        for bad in ["kstar:0", "kstar:", "p3", ""] {
            assert!(bad.parse::<Statistic>().is_err(), "{bad}");
        }
    }

    #[test]
    fn enumeration_is_complete_and_distinct() {
        for n in 1..=6 {
            let m = choose2(n as u64);
            let mut all = std::collections::HashSet::new();
            for e in 0..=m {
                let mut count = 0u128;
                for_each_graph(n, e, |g| {
                    count += 1;
                    assert_eq!(g.size() as u64, e);
                    assert!(all.insert(g.rows));
                })
                .unwrap();
                assert_eq!(count, binomial(m as u128, e as u128));
            }
            assert_eq!(all.len(), 1 << m);
        }
    }

    #[test]
    fn two_paths_on_four_vertices_with_three_edges() {
        let r = extremal_search(4, 3, Statistic::P2).unwrap();
        assert_eq!(r.enumerated, 20);
        assert_eq!(r.max_value, 3);
        assert_eq!(r.num_max_classes, 2);
        let triangle = Graph::new(4, &[(0, 1), (0, 2), (1, 2)]).unwrap().canonical_key().unwrap();
        let star = Graph::new(4, &[(0, 1), (0, 2), (0, 3)]).unwrap().canonical_key().unwrap();
        assert!(r.max_witnesses.contains(&triangle));
        assert!(r.max_witnesses.contains(&star));
        assert_eq!(r.verdict, Verdict::BothAttain);
    }

    #[test]
    fn four_paths_on_five_vertices_with_four_edges() {
        let r = extremal_search(5, 4, Statistic::P4).unwrap();
        assert_eq!(r.enumerated, 210);
        assert_eq!(r.max_value, 1);
        assert_eq!(r.min_value, 0);
        let path = Graph::new(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap().canonical_key().unwrap();
        assert_eq!(r.max_witnesses, vec![path]);
        assert_eq!(r.verdict, Verdict::OtherAttains);
    }

    #[test]
    fn no_edges() {
        for stat in [Statistic::P2, Statistic::P4, Statistic::Walks4, Statistic::KStar(3)] {
            let r = extremal_search(6, 0, stat).unwrap();
            assert_eq!((r.max_value, r.min_value, r.enumerated), (0, 0, 1));
            assert_eq!(r.num_max_classes, 1);
        }
    }

    #[test]
    fn witnesses_recount_to_the_max() {
        for n in 2..=6 {
            for e in 0..=choose2(n as u64) {
                for stat in [Statistic::P2, Statistic::P4, Statistic::Walks4] {
                    let r = extremal_search(n, e, stat).unwrap();
                    assert!(!r.max_witnesses.is_empty());
                    for key in &r.max_witnesses {
                        assert_eq!(stat.evaluate(&key.to_graph()), r.max_value);
                    }
                    assert!(r.max_value >= r.quasi_star_value.max(r.quasi_clique_value));
                    assert!(r.min_value <= r.near_regular_value);
                }
            }
        }
    }

    #[test]
    fn class_counts_match_brute_force_dedup() {
        let n = 5;
        for e in 0..=10 {
            let r = extremal_search(n, e, Statistic::P4).unwrap();
            let mut keys = BTreeSet::new();
            for_each_graph(n, e, |g| {
                if count_p4_brute(g).unwrap() == r.max_value {
                    keys.insert(CanonicalKey::of(g).unwrap());
                }
            })
            .unwrap();
            assert_eq!(r.num_max_classes, keys.len());
        }
    }

    #[test]
    fn every_graph_meets_the_walk_lower_bound() {
        for n in 1..=6usize {
            for e in 0..=choose2(n as u64) {
                for_each_graph(n, e, |g| {
                    let lhs = walks4_codegree_sum(g) * (n as u128).pow(3);
                    assert!(lhs >= 16 * (e as u128).pow(4));
                })
                .unwrap();
            }
        }
    }

    #[test]
    fn ahlswede_katona_small() {
        for n in 1..=5 {
            let rep = verify_ahlswede_katona(n).unwrap();
            assert_eq!(rep.rows.len() as u64, choose2(n as u64) + 1);
            assert!(rep.passed(), "{rep}");
        }
        assert!(verify_ahlswede_katona(8).is_err());
    }

    #[test]
    fn p4_table_rows() {
        let rows = p4_extremal_table(5).unwrap();
        let k5 = rows.iter().find(|r| r.n == 5 && r.e == 10).unwrap();
        assert_eq!(k5.max_value, 60);
        assert_eq!(k5.quasi_clique_value, 60);
        for r in rows.iter().filter(|r| r.e < 4) {
            assert_eq!(r.max_value, 0);
        }
        assert_eq!(table_csv(&rows), table_csv(&p4_extremal_table(5).unwrap()));
        assert!(table_csv(&rows).starts_with(TABLE_CSV_HEADER));
    }

    #[test]
    fn size_caps() {
        assert!(matches!(extremal_search(9, 3, Statistic::P2), Err(Error::SizeCap { .. })));
        assert!(matches!(extremal_search(4, 7, Statistic::P2), Err(Error::TooManyEdges { .. })));
        assert!(extremal_search(0, 0, Statistic::P2).is_err());
    }
}
