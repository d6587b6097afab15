//! Edge-list text format and graph6 reading.
//!
//! Edge list: first line `n e`, then `e` lines `u v` with `u < v`, 0-indexed.

use std::fmt::Write as _;

use super::Graph;
use crate::{Error, Result};

impl Graph {
    /// Serializes in the edge-list format; [`parse_edge_list`] inverts it.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::with_capacity(8 * (self.e() + 1));
        let _ = writeln!(out, "{} {}", self.n, self.e());
        for &(u, v) in &self.edges {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }
}

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());
    let (hline, header) = lines.next().ok_or_else(|| Error::parse(1, "missing header"))?;
    let [n, e] = parse_pair(hline, header)?;
    let mut edges = Vec::with_capacity(e);
    for (lineno, line) in lines {
        let [u, v] = parse_pair(lineno, line)?;
        if u >= v {
            return Err(Error::parse(lineno, format!("expected u < v, got {u} {v}")));
        }
        edges.push((u, v));
    }
    if edges.len() != e {
        return Err(Error::parse(hline, format!("header declares {e} edges, found {}", edges.len())));
    }
    Graph::new(n, &edges)
}

fn parse_pair(lineno: usize, line: &str) -> Result<[usize; 2]> {
    let mut it = line.split_whitespace().map(|t| {
        t.parse::<usize>()
            .map_err(|_| Error::parse(lineno, format!("not a nonnegative integer: {t:?}")))
    });
    match (it.next(), it.next(), it.next()) {
        (Some(a), Some(b), None) => Ok([a?, b?]),
        _ => Err(Error::parse(lineno, format!("expected two integers, got {line:?}"))),
    }
}

/// Parses a single graph6 string (an optional `>>graph6<<` header is accepted).
pub fn parse_graph6(text: &str) -> Result<Graph> {
    let s = text.trim();
    let s = s.strip_prefix(">>graph6<<").unwrap_or(s).as_bytes();
    let bad = |msg: &str| Error::parse(1, format!("graph6: {msg}"));
    if s.iter().any(|&b| !(63..=126).contains(&b)) {
        return Err(bad("byte outside 63..=126"));
    }
    let (n, body) = match s {
        [] => return Err(bad("empty input")),
        [126, 126, rest @ ..] => {
            if rest.len() < 6 {
                return Err(bad("truncated order"));
            }
            let n = rest[..6].iter().fold(0usize, |acc, &b| acc << 6 | (b - 63) as usize);
            (n, &rest[6..])
        }
        [126, rest @ ..] => {
            if rest.len() < 3 {
                return Err(bad("truncated order"));
            }
            let n = rest[..3].iter().fold(0usize, |acc, &b| acc << 6 | (b - 63) as usize);
            (n, &rest[3..])
        }
        [b, rest @ ..] => ((b - 63) as usize, rest),
    };
    let m = n * n.saturating_sub(1) / 2;
    if body.len() != m.div_ceil(6) {
        return Err(bad("body length does not match order"));
    }
    let bit = |k: usize| (body[k / 6] - 63) >> (5 - k % 6) & 1 == 1;
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bit(k) {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    Graph::new(n, &edges)
}

/// graph6 when the first nonblank line is a single token, edge list otherwise.
pub fn parse_auto(text: &str) -> Result<Graph> {
    let first = text.lines().map(str::trim).find(|l| !l.is_empty()).unwrap_or("");
    if first.starts_with(">>graph6<<") || (!first.is_empty() && first.split_whitespace().count() == 1) {
        parse_graph6(first)
    } else {
        parse_edge_list(text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Adjacency;
    use proptest::prelude::*;

    #[test]
    fn edge_list_text_is_exact() {
        let g = Graph::new(4, &[(2, 3), (0, 1)]).unwrap();
        assert_eq!(g.to_edge_list(), "4 2\n0 1\n2 3\n");
        assert_eq!(parse_edge_list("4 2\n0 1\n2 3\n").unwrap(), g);
    }

    #[test]
    fn edge_list_errors() {
        assert!(matches!(parse_edge_list(""), Err(Error::Parse { .. })));
        assert!(matches!(parse_edge_list("3 1\n1 0\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_edge_list("3 2\n0 1\n"), Err(Error::Parse { .. })));
        assert!(matches!(parse_edge_list("3 1\n0 x\n"), Err(Error::Parse { .. })));
        assert_eq!(parse_edge_list("3 2\n0 1\n0 1\n"), Err(Error::DuplicateEdge(0, 1)));
        assert_eq!(parse_edge_list("3 1\n0 3\n"), Err(Error::VertexOutOfRange { vertex: 3, n: 3 }));
    }

    #[test]
    fn graph6_known_strings() {
        // "Dhc" is the 5-cycle 0-1-2-3-4-0.
        let c5 = parse_graph6("Dhc").unwrap();
        assert_eq!(c5.n(), 5);
        assert_eq!(c5.e(), 5);
        assert!((0..5).all(|v| c5.degree(v) == 2));
        assert_eq!(c5.edges(), &[(0, 1), (0, 4), (1, 2), (2, 3), (3, 4)]);
        let k4 = parse_graph6(">>graph6<<C~").unwrap();
        assert_eq!(k4, Graph::complete(4));
        assert_eq!(parse_graph6("@").unwrap(), Graph::empty(1));
        assert!(parse_graph6("C~~").is_err());
        assert_eq!(parse_auto("C~\n").unwrap(), Graph::complete(4));
        assert_eq!(parse_auto("2 1\n0 1\n").unwrap(), Graph::complete(2));
    }

    fn encode_graph6(g: &Graph) -> String {
        let n = g.n();
        let mut out = vec![(n + 63) as u8];
        let mut bits = Vec::new();
        for j in 1..n {
            for i in 0..j {
                bits.push(g.is_adjacent(i, j));
            }
        }
        for chunk in bits.chunks(6) {
            let mut b = 0u8;
            for (k, &bit) in chunk.iter().enumerate() {
                b |= (bit as u8) << (5 - k);
            }
            out.push(b + 63);
        }
        String::from_utf8(out).unwrap()
    }

    proptest! {
        #[test]
        fn edge_list_and_graph6_round_trip(n in 1usize..40, seed in any::<u64>()) {
            let mut state = seed;
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                    if state >> 62 == 0 {
                        edges.push((u, v));
                    }
                }
            }
            let g = Graph::new(n, &edges).unwrap();
            let text = g.to_edge_list();
            let back = parse_edge_list(&text).unwrap();
            prop_assert_eq!(back.to_edge_list(), text);
            prop_assert_eq!(&back, &g);
            prop_assert_eq!(parse_graph6(&encode_graph6(&g)).unwrap(), g);
        }
    }
}
