//! The `hprod` text format for materialized product graphs.
//!
//! ```text
//! p hprod <N> <M> <q> <k> <d>
//! v <id> <r-digits> <pi-digits>
//! e <id> <id>
//! ```
//!
//! Ids run from 1 to `N`; node `id` is `(r, pi)` with
//! `id - 1 = index(r) * q^d + index(pi)`. Edges have `id1 < id2` and are
//! written in sorted order. Lines starting with `#` are comments.

use std::collections::HashSet;
use std::fmt::Write as _;

use super::{HNode, MaterializedProduct};
use crate::cliquesolver::DenseGraph;
use crate::gf::{FVector, PrimeField};
use crate::graphio::{data_lines, fields, number, parse_err, GraphError};

/// Largest node count accepted by [`parse_hprod`].
pub const MAX_HPROD_NODES: usize = 1 << 16;

/// A parsed `hprod` document.
#[derive(Debug, Clone)]
pub struct HprodGraph {
    pub field: PrimeField,
    pub k: usize,
    pub d: usize,
    /// `nodes[id - 1]`.
    pub nodes: Vec<HNode>,
    pub graph: DenseGraph,
}

impl MaterializedProduct {
    /// Serializes to `hprod`.
    pub fn to_hprod(&self) -> String {
        let f = PrimeField::new(self.q).expect("materialized over a prime field");
        let per_column = f.checked_pow(self.d).expect("materialized size fits");
        let mut out = String::new();
        let n = self.graph.n();
        writeln!(out, "p hprod {} {} {} {} {}", n, self.graph.edge_count(), self.q, self.k, self.d).unwrap();
        for id in 0..n as u64 {
            let r = FVector::from_index(f, self.k, id / per_column);
            let pi = FVector::from_index(f, self.d, id % per_column);
            writeln!(out, "v {} {} {}", id + 1, r.to_digit_string(), pi.to_digit_string()).unwrap();
        }
        for (u, v) in self.graph.edges() {
            writeln!(out, "e {} {}", u + 1, v + 1).unwrap();
        }
        out
    }
}

/// Parses an `hprod` document. Node and edge lines may come in any order
/// after the header; every id must be described exactly once.
pub fn parse_hprod(text: &str) -> Result<HprodGraph, GraphError> {
    let mut lines = data_lines(text);
    let (hline, header) = lines
        .next()
        .ok_or_else(|| parse_err(1, "missing `p hprod` header"))?;
    if header.len() != 7 || header[0] != "p" || header[1] != "hprod" {
        return Err(parse_err(hline, "expected `p hprod <N> <M> <q> <k> <d>`"));
    }
    let n = number(hline, header[2])?;
    let m = number(hline, header[3])?;
    let q = number(hline, header[4])?;
    let k = number(hline, header[5])?;
    let d = number(hline, header[6])?;
    if n > MAX_HPROD_NODES || n > text.len() {
        return Err(parse_err(hline, format!("node count {n} exceeds the limit")));
    }
    let field = u32::try_from(q)
        .ok()
        .and_then(|q| PrimeField::new(q).ok())
        .ok_or_else(|| parse_err(hline, format!("q = {q} is not a supported prime")))?;

    let mut nodes: Vec<Option<HNode>> = vec![None; n];
    let mut distinct = HashSet::new();
    let mut edges = Vec::new();
    let mut seen_edges = HashSet::new();
    for (line, toks) in lines {
        match toks[0] {
            "v" => {
                if toks.len() != 4 {
                    return Err(parse_err(line, "expected `v <id> <r> <pi>`"));
                }
                let id = number(line, toks[1])?;
                if id == 0 || id > n {
                    return Err(parse_err(line, format!("node {id} out of range 1..={n}")));
                }
                let digits = |s: &str, dim: usize| {
                    FVector::from_digit_string(field, s)
                        .ok()
                        .filter(|v| v.dim() == dim)
                        .ok_or_else(|| parse_err(line, format!("{s:?} is not a length-{dim} vector over F_{q}")))
                };
                let node = HNode {
                    r: digits(toks[2], k)?,
                    pi: digits(toks[3], d)?,
                };
                if !distinct.insert(node.clone()) {
                    return Err(parse_err(line, "node listed twice"));
                }
                if nodes[id - 1].replace(node).is_some() {
                    return Err(parse_err(line, format!("node {id} described twice")));
                }
            }
            "e" => {
                let [u, v] = fields::<2>(line, &toks)?;
                if u == 0 || v > n || u >= v {
                    return Err(parse_err(line, format!("edge {u} {v} needs 1 <= id1 < id2 <= {n}")));
                }
                if !seen_edges.insert((u, v)) {
                    return Err(parse_err(line, format!("duplicate edge {u} {v}")));
                }
                if edges.len() == m {
                    return Err(parse_err(line, format!("more than the declared {m} edges")));
                }
                edges.push((u - 1, v - 1));
            }
            other => return Err(parse_err(line, format!("unknown line type {other:?}"))),
        }
    }
    if edges.len() != m {
        return Err(parse_err(hline, format!("declared {m} edges but found {}", edges.len())));
    }
    let nodes = nodes
        .into_iter()
        .enumerate()
        .map(|(i, v)| v.ok_or_else(|| parse_err(hline, format!("node {} is never described", i + 1))))
        .collect::<Result<Vec<_>, _>>()?;
    let graph = DenseGraph::from_edges(n, edges).expect("ids checked");
    Ok(HprodGraph {
        field,
        k,
        d,
        nodes,
        graph,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphio::{attach_labels, ColoredGraph, LabelMode};
    use crate::product::{ProductGraph, Variant, DEFAULT_NODE_BUDGET};
    use crate::sidon::CandidateOrder;

    fn edge_product() -> MaterializedProduct {
        let g = ColoredGraph::new(2, vec![1, 2], [(0, 1)]).unwrap();
        let lg = attach_labels(g, PrimeField::new(2).unwrap(), 4, LabelMode::Adaptive, CandidateOrder::Lexicographic).unwrap();
        ProductGraph::new(lg, Variant::Basic).unwrap().materialize(DEFAULT_NODE_BUDGET).unwrap()
    }

    #[test]
    fn round_trip() {
        let m = edge_product();
        let text = m.to_hprod();
        let h = parse_hprod(&text).unwrap();
        assert_eq!(h.graph.n(), m.graph.n());
        assert_eq!(h.graph.edges().collect::<Vec<_>>(), m.graph.edges().collect::<Vec<_>>());
        assert_eq!((h.field.q(), h.k, h.d), (m.q, m.k, m.d));
        assert_eq!(h.nodes[0].r.to_digit_string(), "00");
    }

    #[test]
    fn header_line_is_exact() {
        let m = edge_product();
        let text = m.to_hprod();
        let first = text.lines().next().unwrap();
        assert_eq!(first, format!("p hprod {} {} 2 2 {}", m.graph.n(), m.graph.edge_count(), m.d));
    }

    #[test]
    fn edges_are_sorted() {
        let text = edge_product().to_hprod();
        let edges: Vec<(usize, usize)> = text
            .lines()
            .filter_map(|l| l.strip_prefix("e "))
            .map(|l| {
                let mut it = l.split(' ').map(|x| x.parse().unwrap());
                (it.next().unwrap(), it.next().unwrap())
            })
            .collect();
        let mut sorted = edges.clone();
        sorted.sort_unstable();
        assert_eq!(edges, sorted);
        assert!(edges.iter().all(|(u, v)| u < v));
    }

    #[test]
    fn rejects_malformed_input() {
        let bad = [
            "",
            "p hprod 1 0 4 1 1\nv 1 0 0\n",
            "p hprod 2 0 2 1 1\nv 1 0 0\n",
            "p hprod 2 1 2 1 1\nv 1 0 0\nv 2 1 1\ne 2 1\n",
            "p hprod 2 0 2 1 1\nv 1 0 0\nv 2 0 0\n",
            "p hprod 1 0 2 1 1\nv 1 00 0\n",
            "p hprod 99999999999 0 2 1 1\n",
            "p hprod 2 1 2 1 1\nv 1 0 0\nv 2 1 1\ne 1 2\ne 1 2\n",
            "p hprod 1 0 2 1 1\nv 1 0 0\nx\n",
        ];
        for text in bad {
            assert!(parse_hprod(text).is_err(), "{text:?}");
        }
        assert!(parse_hprod("# c\np hprod 2 1 2 1 1\nv 2 1 1\ne 1 2\nv 1 0 0\n").is_ok());
    }
}
