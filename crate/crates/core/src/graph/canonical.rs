use std::fmt;
use std::str::FromStr;

use super::{Adjacency, Graph};
use crate::{Error, Result};

/// Largest order accepted by [`CanonicalKey::of`].
pub const MAX_CANONICAL_ORDER: usize = 10;

/// Isomorphism-invariant key for graphs with at most ten vertices.
///
/// The key is the minimum, over vertex orderings compatible with an
/// invariant-based vertex partition, of the upper-triangle adjacency bits
/// read column by column (`(0,1), (0,2), (1,2), (0,3), ...`, most significant
/// first). Two graphs share a key iff they are isomorphic, and the key
/// decodes back to a representative with [`CanonicalKey::to_graph`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey {
    n: u8,
    code: u64,
}

impl CanonicalKey {
    pub fn of<G: Adjacency + ?Sized>(g: &G) -> Result<Self> {
        let n = g.order();
        if n > MAX_CANONICAL_ORDER {
            return Err(Error::SizeCap { what: "canonical_key", n, max: MAX_CANONICAL_ORDER });
        }
        Ok(CanonicalKey { n: n as u8, code: canonical_code(g) })
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    /// Opaque byte encoding: order followed by the little-endian code.
    pub fn to_bytes(&self) -> [u8; 9] {
        let mut out = [0u8; 9];
        out[0] = self.n;
        out[1..].copy_from_slice(&self.code.to_le_bytes());
        out
    }

    /// The representative graph whose adjacency bits are this key.
    pub fn to_graph(&self) -> Graph {
        let n = self.n();
        let m = n * n.saturating_sub(1) / 2;
        let mut edges = Vec::new();
        let mut pos = 0;
        for j in 1..n {
            for i in 0..j {
                if self.code >> (m - 1 - pos) & 1 == 1 {
                    edges.push((i, j));
                }
                pos += 1;
            }
        }
        Graph::from_valid_edges(n, edges)
    }
}

impl fmt::Display for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{:x}", self.n, self.code)
    }
}

impl FromStr for CanonicalKey {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::parse(1, format!("malformed canonical key {s:?}"));
        let (n, code) = s.split_once(':').ok_or_else(bad)?;
        let n: u8 = n.parse().map_err(|_| bad())?;
        let code = u64::from_str_radix(code, 16).map_err(|_| bad())?;
        let m = n as u32 * (n as u32).saturating_sub(1) / 2;
        if n as usize > MAX_CANONICAL_ORDER || (m < 64 && code >> m != 0) {
            return Err(bad());
        }
        Ok(CanonicalKey { n, code })
    }
}

fn canonical_code<G: Adjacency + ?Sized>(g: &G) -> u64 {
    let n = g.order();
    if n < 2 {
        return 0;
    }
    // Partition vertices by (degree, sorted neighbour degrees); any
    // relabeling respecting the partition order is admissible.
    let mut inv: Vec<(usize, Vec<usize>, usize)> = (0..n)
        .map(|v| {
            let mut nd: Vec<usize> = g.neighbors(v).map(|w| g.degree(w)).collect();
            nd.sort_unstable_by(|a, b| b.cmp(a));
            (g.degree(v), nd, v)
        })
        .collect();
    inv.sort_by(|a, b| (&b.0, &b.1).cmp(&(&a.0, &a.1)));
    let mut class_of_slot = vec![0usize; n];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for (slot, item) in inv.iter().enumerate() {
        let new_class = slot == 0 || (item.0, &item.1) != (inv[slot - 1].0, &inv[slot - 1].1);
        if new_class {
            classes.push(Vec::new());
        }
        classes.last_mut().unwrap().push(item.2);
        class_of_slot[slot] = classes.len() - 1;
    }

    let adj: Vec<u16> = (0..n)
        .map(|v| g.neighbors(v).fold(0u16, |acc, w| acc | 1 << w))
        .collect();
    let m = n * (n - 1) / 2;
    let mut search = Search {
        adj: &adj,
        classes: &classes,
        class_of_slot: &class_of_slot,
        m,
        placed: Vec::with_capacity(n),
        used: 0,
        best: u64::MAX,
    };
    search.extend(0, 0);
    search.best
}

struct Search<'a> {
    adj: &'a [u16],
    classes: &'a [Vec<usize>],
    class_of_slot: &'a [usize],
    m: usize,
    placed: Vec<usize>,
    used: u16,
    best: u64,
}

impl Search<'_> {
    /// `code` holds the bits for pairs among the first `bits` positions.
    fn extend(&mut self, code: u64, bits: usize) {
        let slot = self.placed.len();
        if slot == self.class_of_slot.len() {
            self.best = self.best.min(code);
            return;
        }
        let class = self.class_of_slot[slot];
        for idx in 0..self.classes[class].len() {
            let v = self.classes[class][idx];
            if self.used >> v & 1 == 1 {
                continue;
            }
            let mut next = code;
            for &u in &self.placed {
                next = next << 1 | (self.adj[v] >> u & 1) as u64;
            }
            let next_bits = bits + slot;
            // Prune when this prefix already exceeds the best code's prefix.
            if self.best != u64::MAX && next > self.best >> (self.m - next_bits) {
                continue;
            }
            self.placed.push(v);
            self.used |= 1 << v;
            self.extend(next, next_bits);
            self.used &= !(1 << v);
            self.placed.pop();
        }
    }
}
