//! Quasi-cliques, quasi-stars and near-regular graphs with prescribed `(n, e)`.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::graph::Graph;
use crate::{Error, Result};

pub fn choose2(n: u64) -> u64 {
    n * n.saturating_sub(1) / 2
}

fn check_capacity(n: usize, e: u64) -> Result<()> {
    if n == 0 {
        return Err(Error::EmptyVertexSet);
    }
    let capacity = choose2(n as u64);
    if e > capacity {
        return Err(Error::TooManyEdges { n, e, capacity });
    }
    Ok(())
}

/// The unique `(a, b)` with `e = C(a, 2) + b` and `0 <= b < a`.
pub fn clique_decomposition(e: u64) -> (u64, u64) {
    // Start from the float estimate and correct by at most a step or two.
    let mut a = ((1.0 + (1.0 + 8.0 * e as f64).sqrt()) / 2.0).floor() as u64;
    a = a.max(1);
    while choose2(a) > e {
        a -= 1;
    }
    while choose2(a + 1) <= e {
        a += 1;
    }
    (a, e - choose2(a))
}

/// Clique on `0..a`, plus vertex `a` joined to `0..b`.
pub fn quasi_clique(n: usize, e: u64) -> Result<Graph> {
    check_capacity(n, e)?;
    let (a, b) = clique_decomposition(e);
    let (a, b) = (a as usize, b as usize);
    let clique = (0..a).flat_map(|v| (0..v).map(move |u| (u, v)));
    let pendant = (0..b).map(|u| (u, a));
    Ok(Graph::from_valid_edges(n, clique.chain(pendant)))
}

/// Complement of the quasi-clique with `C(n, 2) - e` edges: the last vertices
/// dominate everything and one more vertex dominates partially.
pub fn quasi_star(n: usize, e: u64) -> Result<Graph> {
    check_capacity(n, e)?;
    Ok(quasi_clique(n, choose2(n as u64) - e)?.complement())
}

/// A graph with `e` edges whose degrees differ by at most one.
///
/// Realizes the degree sequence (`r` vertices of degree `d + 1`, the rest of
/// degree `d`, where `2e = nd + r`) with Havel–Hakimi, ties broken by the
/// smallest index so the output is deterministic.
pub fn near_regular(n: usize, e: u64) -> Result<Graph> {
    check_capacity(n, e)?;
    let d = (2 * e / n as u64) as usize;
    let r = (2 * e - d as u64 * n as u64) as usize;
    let mut residual: Vec<usize> = (0..n).map(|v| if v < r { d + 1 } else { d }).collect();
    let mut order: Vec<usize> = (0..n).collect();
    let mut edges = Vec::with_capacity(e as usize);
    loop {
        order.sort_by(|&a, &b| residual[b].cmp(&residual[a]).then(a.cmp(&b)));
        let hub = order[0];
        let k = residual[hub];
        if k == 0 {
            break;
        }
        residual[hub] = 0;
        for &w in &order[1..=k] {
            assert!(residual[w] > 0, "near-regular degree sequence must be graphical");
            residual[w] -= 1;
            edges.push((hub.min(w), hub.max(w)));
        }
    }
    Ok(Graph::from_valid_edges(n, edges))
}

/// Erdős–Rényi `G(n, p)`.
pub fn random_gnp(rng: &mut impl Rng, n: usize, p: f64) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::DensityOutOfRange(p));
    }
    let edges = (0..n).flat_map(|v| (0..v).map(move |u| (u, v))).filter(|_| rng.gen_bool(p)).collect::<Vec<_>>();
    Ok(Graph::from_valid_edges(n, edges))
}

/// A random `d`-regular graph: a circulant start randomized by `10·n·d`
/// degree-preserving double-edge swaps, then a random relabeling.
pub fn random_regular(rng: &mut impl Rng, n: usize, d: usize) -> Result<Graph> {
    if n == 0 {
        return Err(Error::EmptyVertexSet);
    }
    if d >= n || (n * d) % 2 == 1 {
        return Err(Error::InvalidParameter(format!("no {d}-regular graph on {n} vertices")));
    }
    let mut edges: Vec<(usize, usize)> = Vec::with_capacity(n * d / 2);
    for v in 0..n {
        for off in 1..=d / 2 {
            let w = (v + off) % n;
            edges.push((v.min(w), v.max(w)));
        }
        if d % 2 == 1 && v < n / 2 {
            edges.push((v, v + n / 2));
        }
    }
    let mut present: HashSet<(usize, usize)> = edges.iter().copied().collect();
    let norm = |a: usize, b: usize| (a.min(b), a.max(b));
    if edges.len() >= 2 {
        for _ in 0..10 * n * d {
            let i = rng.gen_range(0..edges.len());
            let j = rng.gen_range(0..edges.len());
            let ((a, b), (c, mut dd)) = (edges[i], edges[j]);
            let mut c2 = c;
            if rng.gen_bool(0.5) {
                std::mem::swap(&mut c2, &mut dd);
            }
            let (e1, e2) = (norm(a, c2), norm(b, dd));
            if a == c2 || b == dd || present.contains(&e1) || present.contains(&e2) || e1 == e2 {
                continue;
            }
            present.remove(&edges[i]);
            present.remove(&edges[j]);
            present.insert(e1);
            present.insert(e2);
            edges[i] = e1;
            edges[j] = e2;
        }
    }
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    Graph::new(n, &edges)?.relabel(&perm)
}
