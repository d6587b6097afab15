//! Exact counts of 2-edge paths, k-stars, 4-edge paths and 4-edge walks.
//!
//! Every fast counter has an independent brute-force twin used as a test
//! oracle. All counts are `u128`, which covers `n^5 * d^4`-sized walk totals
//! far beyond any graph this crate will hold in memory.

use std::collections::BTreeMap;

use crate::graph::{Adjacency, Graph};
use crate::{Error, Result};

/// Largest order accepted by [`count_walks4_brute`].
pub const WALKS_BRUTE_MAX_N: usize = 25;
/// Largest order accepted by [`count_p4_brute`].
pub const P4_BRUTE_MAX_N: usize = 12;

pub fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) / (i + 1))
}

/// Number of unordered 2-edge paths (cherries), `Σ_v C(deg v, 2)`.
pub fn count_p2<G: Adjacency + ?Sized>(g: &G) -> u128 {
    count_kstars(g, 2)
}

/// Number of k-edge star subgraphs: `Σ_v C(deg v, k)` for `k >= 2`.
///
/// A 1-edge star has no distinguished centre, so `k = 1` returns the edge
/// count rather than `Σ_v deg v = 2e`.
///
/// # Panics
/// If `k == 0`.
pub fn count_kstars<G: Adjacency + ?Sized>(g: &G, k: usize) -> u128 {
    assert!(k >= 1, "k-stars need k >= 1");
    if k == 1 {
        return g.size() as u128;
    }
    (0..g.order()).map(|v| binomial(g.degree(v) as u128, k as u128)).sum()
}

/// Number of 4-edge walks `v0 v1 v2 v3 v4`, the grand sum of `A^4`.
///
/// Computed as `1ᵀ A (A (A (A 1)))` and cross-checked against the
/// degree/codegree double sum; disagreement is an implementation bug and
/// panics.
pub fn count_walks4<G: Adjacency + ?Sized>(g: &G) -> u128 {
    let via_matrix = walks4_matrix_power(g);
    let via_codegree = walks4_codegree_sum(g);
    assert_eq!(via_matrix, via_codegree, "4-walk counters disagree");
    via_matrix
}

/// Grand sum of the fourth power of the adjacency matrix by repeated
/// matrix-vector products.
pub fn walks4_matrix_power<G: Adjacency + ?Sized>(g: &G) -> u128 {
    let n = g.order();
    let mut x = vec![1u128; n];
    for _ in 0..4 {
        x = (0..n).map(|v| g.neighbors(v).map(|w| x[w]).sum()).collect();
    }
    x.iter().sum()
}

/// `Σ_{v1, v3} deg(v1) deg(v3) codeg(v1, v3)` over ordered pairs, diagonal included.
pub fn walks4_codegree_sum<G: Adjacency + ?Sized>(g: &G) -> u128 {
    let n = g.order();
    let deg: Vec<u128> = (0..n).map(|v| g.degree(v) as u128).collect();
    let row = |u: usize| -> u128 {
        if deg[u] == 0 {
            return 0;
        }
        let off: u128 = (u + 1..n)
            .filter(|&v| deg[v] > 0)
            .map(|v| deg[v] * g.common_neighbors(u, v) as u128)
            .sum();
        deg[u] * (2 * off + deg[u] * deg[u])
    };
    (0..n).map(row).sum()
}

/// Direct depth-first enumeration of all 4-edge walks.
pub fn count_walks4_brute<G: Adjacency + ?Sized>(g: &G) -> Result<u128> {
    let n = g.order();
    if n > WALKS_BRUTE_MAX_N {
        return Err(Error::SizeCap { what: "count_walks4_brute", n, max: WALKS_BRUTE_MAX_N });
    }
    fn extend<G: Adjacency + ?Sized>(g: &G, v: usize, steps: usize) -> u128 {
        if steps == 0 {
            return 1;
        }
        g.neighbors(v).map(|w| extend(g, w, steps - 1)).sum()
    }
    Ok((0..n).map(|v| extend(g, v, 4)).sum())
}

/// Number of subgraphs isomorphic to the path with 4 edges (5 distinct vertices).
///
/// Fixes the middle vertex `m` and an unordered pair `{x, y}` of its
/// neighbours; the ends are then any `a ∈ N(x) \ {m, y}` and
/// `b ∈ N(y) \ {m, x}` with `a != b`.
pub fn count_p4<G: Adjacency + ?Sized>(g: &G) -> u128 {
    let n = g.order();
    let mut total = 0u128;
    let mut nbrs = Vec::new();
    for m in 0..n {
        nbrs.clear();
        nbrs.extend(g.neighbors(m).filter(|&w| g.degree(w) >= 2));
        for (i, &x) in nbrs.iter().enumerate() {
            for &y in &nbrs[i + 1..] {
                let adj = g.is_adjacent(x, y) as u128;
                let ends_x = g.degree(x) as u128 - 1 - adj;
                let ends_y = g.degree(y) as u128 - 1 - adj;
                // common neighbours of x and y other than m
                let shared = g.common_neighbors(x, y) as u128 - 1;
                total += ends_x * ends_y - shared;
            }
        }
    }
    total
}

/// Brute force over all injective 5-tuples, keeping one orientation per path.
pub fn count_p4_brute<G: Adjacency + ?Sized>(g: &G) -> Result<u128> {
    let n = g.order();
    if n > P4_BRUTE_MAX_N {
        return Err(Error::SizeCap { what: "count_p4_brute", n, max: P4_BRUTE_MAX_N });
    }
    let mut count = 0u128;
    for v0 in 0..n {
        for v1 in 0..n {
            if v1 == v0 || !g.is_adjacent(v0, v1) {
                continue;
            }
            for v2 in 0..n {
                if [v0, v1].contains(&v2) || !g.is_adjacent(v1, v2) {
                    continue;
                }
                for v3 in 0..n {
                    if [v0, v1, v2].contains(&v3) || !g.is_adjacent(v2, v3) {
                        continue;
                    }
                    for v4 in v0 + 1..n {
                        if ![v1, v2, v3].contains(&v4) && g.is_adjacent(v3, v4) {
                            count += 1;
                        }
                    }
                }
            }
        }
    }
    Ok(count)
}

/// 4-edge walks that revisit a vertex: `walks4 - 2 * p4`.
pub fn degenerate_walks4<G: Adjacency + ?Sized>(g: &G) -> u128 {
    count_walks4(g) - 2 * count_p4(g)
}

/// Homomorphism density of the 4-edge path, `walks4 / n^5`.
pub fn hom_density_p4<G: Adjacency + ?Sized>(g: &G) -> f64 {
    let n = g.order();
    if n == 0 {
        return 0.0;
    }
    count_walks4(g) as f64 / (n as f64).powi(5)
}

/// All exact counts for one graph.
#[derive(Clone, Debug, PartialEq)]
pub struct CountReport {
    pub n: usize,
    pub e: usize,
    pub c: f64,
    pub p2: u128,
    pub p4: u128,
    pub kstars: BTreeMap<usize, u128>,
    pub walks4: u128,
    pub hom_density_p4: f64,
}

impl CountReport {
    pub fn new(g: &Graph, ks: &[usize]) -> Self {
        let walks4 = count_walks4(g);
        let n = g.n();
        CountReport {
            n,
            e: g.e(),
            c: g.density(),
            p2: count_p2(g),
            p4: count_p4(g),
            kstars: ks.iter().map(|&k| (k, count_kstars(g, k))).collect(),
            walks4,
            hom_density_p4: if n == 0 { 0.0 } else { walks4 as f64 / (n as f64).powi(5) },
        }
    }

    pub fn csv_header(&self) -> String {
        let mut h = String::from("n,e,c,p2,p4,walks4,hom_density_p4");
        for k in self.kstars.keys() {
            h.push_str(&format!(",kstar_{k}"));
        }
        h
    }

    pub fn csv_row(&self) -> String {
        use crate::fmt::sig12;
        let mut r = format!(
            "{},{},{},{},{},{},{}",
            self.n,
            self.e,
            sig12(self.c),
            self.p2,
            self.p4,
            self.walks4,
            sig12(self.hom_density_p4)
        );
        for v in self.kstars.values() {
            r.push_str(&format!(",{v}"));
        }
        r
    }
}

impl std::fmt::Display for CountReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        use crate::fmt::sig12;
        let mut rows: Vec<(String, String)> = vec![
            ("n".into(), self.n.to_string()),
            ("e".into(), self.e.to_string()),
            ("c".into(), sig12(self.c)),
            ("p2".into(), self.p2.to_string()),
            ("p4".into(), self.p4.to_string()),
            ("walks4".into(), self.walks4.to_string()),
            ("hom_density_p4".into(), sig12(self.hom_density_p4)),
        ];
        rows.extend(self.kstars.iter().map(|(k, v)| (format!("kstar_{k}"), v.to_string())));
        let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        for (k, v) in rows {
            writeln!(f, "{k:<width$}  {v}")?;
        }
        Ok(())
    }
}
