//! Simple undirected graphs stored as per-vertex neighbor bitsets.

mod canonical;
mod io;

pub use canonical::{CanonicalKey, MAX_CANONICAL_ORDER};
pub use io::{parse_auto, parse_edge_list, parse_graph6};

use crate::{Error, Result};

/// Read access to a simple undirected graph.
///
/// The counters in [`crate::count`] are generic over this trait so that the
/// exhaustive search can run them on a stack-allocated adjacency without
/// building a [`Graph`] for every edge subset.
pub trait Adjacency {
    type Neighbors<'a>: Iterator<Item = usize>
    where
        Self: 'a;

    /// Number of vertices.
    fn order(&self) -> usize;

    fn degree(&self, v: usize) -> usize;

    fn is_adjacent(&self, u: usize, v: usize) -> bool;

    /// `|N(u) ∩ N(v)|`; equals `degree(u)` when `u == v`.
    fn common_neighbors(&self, u: usize, v: usize) -> usize;

    fn neighbors(&self, v: usize) -> Self::Neighbors<'_>;

    fn size(&self) -> usize {
        (0..self.order()).map(|v| self.degree(v)).sum::<usize>() / 2
    }
}

/// A simple undirected graph on vertices `0..n`.
///
/// Immutable after construction. Adjacency rows are bitsets of
/// `ceil(n / 64)` words, so degrees and codegrees are popcounts.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    words: usize,
    adj: Vec<u64>,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    /// Builds a graph from an edge list, rejecting out-of-range endpoints,
    /// loops and repeated pairs (in either orientation).
    pub fn new(n: usize, edge_list: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n);
        for &(u, v) in edge_list {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            if g.bit(u, v) {
                return Err(Error::DuplicateEdge(u, v));
            }
            g.set(u, v);
        }
        g.rebuild_edges();
        Ok(g)
    }

    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        Graph { n, words, adj: vec![0; n * words], edges: Vec::new() }
    }

    pub fn complete(n: usize) -> Self {
        Graph::empty(n).complement()
    }

    /// Builds from an edge iterator known to be valid. Used by constructors
    /// inside the crate whose output is correct by construction.
    pub(crate) fn from_valid_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut g = Graph::empty(n);
        for (u, v) in edges {
            debug_assert!(u != v && u < n && v < n && !g.bit(u, v));
            g.set(u, v);
        }
        g.rebuild_edges();
        g
    }

    fn row(&self, v: usize) -> &[u64] {
        &self.adj[v * self.words..(v + 1) * self.words]
    }

    fn bit(&self, u: usize, v: usize) -> bool {
        self.adj[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    fn set(&mut self, u: usize, v: usize) {
        self.adj[u * self.words + v / 64] |= 1 << (v % 64);
        self.adj[v * self.words + u / 64] |= 1 << (u % 64);
    }

    fn rebuild_edges(&mut self) {
        let edges = (0..self.n)
            .flat_map(|u| BitIter::new(self.row(u)).filter(move |&v| v > u).map(move |v| (u, v)))
            .collect();
        self.edges = edges;
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of edges.
    pub fn e(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(u, v)` with `u < v`, lexicographically sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Edge density `c = 2e / n^2`.
    pub fn density(&self) -> f64 {
        if self.n == 0 {
            return 0.0;
        }
        2.0 * self.e() as f64 / (self.n as f64 * self.n as f64)
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> Result<bool> {
        self.check(u)?;
        self.check(v)?;
        Ok(self.bit(u, v))
    }

    /// Number of common neighbours of `u` and `v`; `deg(u)` when `u == v`.
    pub fn codegree(&self, u: usize, v: usize) -> Result<usize> {
        self.check(u)?;
        self.check(v)?;
        Ok(self.common_neighbors(u, v))
    }

    fn check(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        }
    }

    pub fn complement(&self) -> Graph {
        let mut g = Graph::empty(self.n);
        for v in 0..self.n {
            for w in 0..self.words {
                let lo = w * 64;
                let hi = (lo + 64).min(self.n);
                let mut mask = if hi - lo == 64 { u64::MAX } else { (1u64 << (hi - lo)) - 1 };
                if (lo..hi).contains(&v) {
                    mask &= !(1u64 << (v - lo));
                }
                g.adj[v * self.words + w] = !self.adj[v * self.words + w] & mask;
            }
        }
        g.rebuild_edges();
        g
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Graph> {
        if perm.len() != self.n {
            return Err(Error::InvalidParameter(format!(
                "permutation has length {}, expected {}",
                perm.len(),
                self.n
            )));
        }
        let mut seen = vec![false; self.n];
        for &p in perm {
            if p >= self.n || std::mem::replace(&mut seen[p], true) {
                return Err(Error::InvalidParameter("not a permutation".into()));
            }
        }
        Ok(Graph::from_valid_edges(self.n, self.edges.iter().map(|&(u, v)| (perm[u], perm[v]))))
    }

    /// Canonical isomorphism key; see [`CanonicalKey`].
    pub fn canonical_key(&self) -> Result<CanonicalKey> {
        CanonicalKey::of(self)
    }
}

impl Adjacency for Graph {
    type Neighbors<'a> = BitIter<'a>;

    fn order(&self) -> usize {
        self.n
    }

    fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    fn is_adjacent(&self, u: usize, v: usize) -> bool {
        self.bit(u, v)
    }

    fn common_neighbors(&self, u: usize, v: usize) -> usize {
        self.row(u).iter().zip(self.row(v)).map(|(a, b)| (a & b).count_ones() as usize).sum()
    }

    fn neighbors(&self, v: usize) -> BitIter<'_> {
        BitIter::new(self.row(v))
    }

    fn size(&self) -> usize {
        self.edges.len()
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Graph").field("n", &self.n).field("edges", &self.edges).finish()
    }
}

/// Iterator over the set bits of a multi-word bitset.
pub struct BitIter<'a> {
    words: &'a [u64],
    idx: usize,
    cur: u64,
}

impl<'a> BitIter<'a> {
    fn new(words: &'a [u64]) -> Self {
        BitIter { words, idx: 0, cur: words.first().copied().unwrap_or(0) }
    }
}

impl Iterator for BitIter<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.cur != 0 {
                let b = self.cur.trailing_zeros() as usize;
                self.cur &= self.cur - 1;
                return Some(self.idx * 64 + b);
            }
            self.idx += 1;
            self.cur = *self.words.get(self.idx)?;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_graph(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(p) {
                    edges.push((u, v));
                }
            }
        }
        Graph::new(n, &edges).unwrap()
    }

    #[test]
    fn triangle_and_empty() {
        let k3 = Graph::new(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(k3.degrees(), vec![2, 2, 2]);
        assert_eq!(k3.e(), 3);
        let empty = Graph::new(5, &[]).unwrap();
        assert_eq!(empty.degrees(), vec![0; 5]);
    }

    #[test]
    fn rejects_malformed_edges() {
        assert_eq!(Graph::new(2, &[(0, 1), (0, 1)]), Err(Error::DuplicateEdge(0, 1)));
        assert_eq!(Graph::new(2, &[(0, 1), (1, 0)]), Err(Error::DuplicateEdge(1, 0)));
        assert_eq!(Graph::new(3, &[(2, 2)]), Err(Error::SelfLoop(2)));
        assert_eq!(Graph::new(3, &[(0, 3)]), Err(Error::VertexOutOfRange { vertex: 3, n: 3 }));
    }

    #[test]
    fn codegree_examples() {
        let k3 = Graph::complete(3);
        assert_eq!(k3.codegree(0, 1).unwrap(), 1);
        let c4 = Graph::new(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        assert_eq!(c4.codegree(0, 2).unwrap(), 2);
        let p3 = Graph::new(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(p3.codegree(0, 2).unwrap(), 1);
        assert_eq!(p3.codegree(1, 1).unwrap(), 2);
        assert!(p3.codegree(0, 3).is_err());
    }

    #[test]
    fn complement_examples() {
        assert_eq!(Graph::complete(3).complement(), Graph::empty(3));
        assert_eq!(Graph::empty(4).complement(), Graph::complete(4));
        assert_eq!(Graph::complete(4).e(), 6);
        // Crosses a word boundary.
        assert_eq!(Graph::complete(70).e(), 70 * 69 / 2);
    }

    #[test]
    fn degree_and_codegree_invariants_on_random_graphs() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let n = rng.gen_range(1..90);
            let p = rng.gen();
            let g = random_graph(&mut rng, n, p);
            assert_eq!(g.degrees().iter().sum::<usize>(), 2 * g.e());
            let h = g.complement();
            assert_eq!(h.complement(), g);
            for v in 0..n {
                assert_eq!(h.degree(v), n - 1 - g.degree(v));
            }
            for u in 0..n {
                for v in 0..n {
                    let cd = g.codegree(u, v).unwrap();
                    assert!(cd <= g.degree(u).min(g.degree(v)));
                    if u != v {
                        let direct = (0..n).filter(|&w| g.is_adjacent(u, w) && g.is_adjacent(v, w)).count();
                        assert_eq!(cd, direct);
                    }
                }
            }
        }
    }

    #[test]
    fn relabel_preserves_degree_multiset() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let g = random_graph(&mut rng, 12, 0.4);
        let mut perm: Vec<usize> = (0..12).collect();
        perm.shuffle(&mut rng);
        let h = g.relabel(&perm).unwrap();
        for v in 0..12 {
            assert_eq!(h.degree(perm[v]), g.degree(v));
        }
        assert!(g.relabel(&[0, 0, 1]).is_err());
    }
}
