//! The product graph `H` built from a labeled multi-colored k-Clique
//! instance.
//!
//! Nodes are pairs `(r, pi)` with `r` in `F_q^k` (the column) and `pi` in
//! `F_q^d` (an encoding `sum_i r[i] * v_i` of one vertex per color). Whether
//! two nodes are adjacent depends on how their columns differ:
//!
//! | `Hamming(r, r')` | basic                      | improved                    |
//! |------------------|----------------------------|-----------------------------|
//! | 0                | never                      | never                       |
//! | 1                | vertex test                | vertex test                 |
//! | 2                | edge test                  | edge test                   |
//! | 3, 4             | always                     | clique test on 3 / 4 colors |
//! | >= 5             | always                     | always                      |
//!
//! Every test decodes `pi' - pi = sum_j (r'[i_j] - r[i_j]) * v_j` over the
//! differing positions `i_j`, with `v_j` ranging over color class `i_j`, and
//! then checks that the decoded vertices are pairwise adjacent in `G`.
//! The decoded tuple is unique whenever the labeling is `2t`-term linearly
//! independent; the decoder checks this on every call instead of assuming
//! it.
//!
//! `H` is never stored unless asked for: [`ProductGraph`] answers adjacency
//! queries directly, and [`ProductGraph::materialize`] builds an explicit
//! graph within a node budget.

mod gap;
pub mod hprod;
mod soundness;

use std::collections::HashMap;
use std::sync::Arc;

use dashmap::DashMap;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cliquesolver::{DenseGraph, SolverError};
use crate::gf::{diff_digits, FVector, FieldElem, GfError, PrimeField};
use crate::graphio::{GraphError, LabeledGraph};

pub use gap::{gap_experiment, GapOptions, GapReport};
pub use soundness::TrCensus;

/// Default node budget for [`ProductGraph::materialize`].
pub const DEFAULT_NODE_BUDGET: u64 = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProductError {
    #[error(transparent)]
    Field(#[from] GfError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error("{variant} variant needs a {required}-term independent labeling, got {found}-term")]
    ArityTooLow {
        variant: Variant,
        required: usize,
        found: usize,
    },
    #[error("operation requires the {expected} variant but the graph is {found}")]
    VariantMismatch { expected: Variant, found: Variant },
    #[error("node (r: {r_dim}, pi: {pi_dim} over F_{q}) does not belong to this product graph")]
    ForeignNode { q: u32, r_dim: usize, pi_dim: usize },
    #[error("decode at positions {positions:?} has {solutions} solutions; labeling is not independent enough")]
    AmbiguousDecode { positions: Vec<usize>, solutions: usize },
    #[error("vertices {0:?} are not a k-clique with one vertex per color")]
    NotAWitness(Vec<usize>),
    #[error("product graph has {nodes} nodes, above the budget of {budget}; use adaptive labeling or a smaller instance")]
    OverBudget { nodes: u128, budget: u64 },
    #[error("node set is not a clique of H")]
    NotAClique,
    #[error("column {0} holds no node of the clique")]
    ColumnNotOccupied(String),
    #[error("internal invariant violated: {0}")]
    InvariantViolation(String),
}

/// Which edge rule `H` uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    /// Gap `q^k` vs `k * q^(k-1)`; needs 4-term independent labels.
    Basic,
    /// Gap `q^k` vs `q^(k-1)`; needs 8-term independent labels.
    Improved,
}

impl Variant {
    /// Independence arity the labeling must have.
    pub fn required_arity(self) -> usize {
        match self {
            Variant::Basic => 4,
            Variant::Improved => 8,
        }
    }

    /// Column distance from which every pair of nodes is adjacent.
    pub fn saturation(self) -> usize {
        match self {
            Variant::Basic => 3,
            Variant::Improved => 5,
        }
    }

    /// Largest clique `H` can have when `G` has no k-clique:
    /// `k * q^(k-1)` (basic) or `q^(k-1)` (improved).
    pub fn soundness_bound(self, q: u32, k: usize) -> u128 {
        let base = (q as u128).pow(k.saturating_sub(1) as u32);
        match self {
            Variant::Basic => k as u128 * base,
            Variant::Improved => base,
        }
    }
}

impl std::fmt::Display for Variant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Variant::Basic => "basic",
            Variant::Improved => "improved",
        })
    }
}

impl std::str::FromStr for Variant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "basic" => Ok(Variant::Basic),
            "improved" => Ok(Variant::Improved),
            other => Err(format!("unknown variant {other:?} (expected basic or improved)")),
        }
    }
}

/// A node `(r, pi)` of `H`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HNode {
    pub r: FVector,
    pub pi: FVector,
}

/// Which rule decided an adjacency query.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TestKind {
    /// Same column.
    NonAdjacent,
    /// Columns at distance 1.
    VertexTest,
    /// Columns at distance 2.
    EdgeTest,
    /// Columns at distance 3 or 4 in the improved variant.
    CliqueTest,
    /// Columns at or beyond the saturation distance.
    AlwaysAdjacent,
}

/// The vertices of `G` certifying an adjacency.
///
/// `vertices[j]` has color `positions[j]`; both are empty unless a test
/// passed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecodeResult {
    pub kind: TestKind,
    pub positions: Vec<usize>,
    pub vertices: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Adjacency {
    pub adjacent: bool,
    pub decode: DecodeResult,
}

impl Adjacency {
    fn fixed(adjacent: bool, kind: TestKind) -> Self {
        Self {
            adjacent,
            decode: DecodeResult {
                kind,
                positions: Vec::new(),
                vertices: Vec::new(),
            },
        }
    }
}

/// How two columns relate: the differing positions and the coefficients
/// `r'[i] - r[i]` on them.
enum ColumnRelation {
    Same,
    Saturated,
    Test { positions: Vec<usize>, coeffs: Vec<u32> },
}

/// An explicit copy of `H`.
#[derive(Debug, Clone)]
pub struct MaterializedProduct {
    pub q: u32,
    pub k: usize,
    pub d: usize,
    /// Node `id` is `(r, pi)` with `id = index(r) * q^d + index(pi)`.
    pub graph: DenseGraph,
}

/// `H` as an implicit adjacency oracle.
#[derive(Debug)]
pub struct ProductGraph {
    labeled: LabeledGraph,
    variant: Variant,
    // (positions, coefficients, delta) flattened into one key
    memo: DashMap<Vec<u32>, Option<Vec<usize>>>,
}

impl ProductGraph {
    pub fn new(labeled: LabeledGraph, variant: Variant) -> Result<Self, ProductError> {
        let required = variant.required_arity();
        if labeled.arity() < required {
            return Err(ProductError::ArityTooLow {
                variant,
                required,
                found: labeled.arity(),
            });
        }
        Ok(Self {
            labeled,
            variant,
            memo: DashMap::new(),
        })
    }

    pub fn labeled(&self) -> &LabeledGraph {
        &self.labeled
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn field(&self) -> PrimeField {
        self.labeled.field()
    }

    pub fn k(&self) -> usize {
        self.labeled.graph().k()
    }

    pub fn d(&self) -> usize {
        self.labeled.dim()
    }

    /// `q^(k+d)` without overflow.
    pub fn node_count(&self) -> u128 {
        (self.field().q() as u128).saturating_pow((self.k() + self.d()) as u32)
    }

    /// `q^k`, the size of the clique a k-clique of `G` yields.
    pub fn column_count(&self) -> u128 {
        (self.field().q() as u128).saturating_pow(self.k() as u32)
    }

    fn check_node(&self, a: &HNode) -> Result<(), ProductError> {
        let q = self.field();
        if a.r.field() != q || a.pi.field() != q || a.r.dim() != self.k() || a.pi.dim() != self.d() {
            return Err(ProductError::ForeignNode {
                q: a.r.field().q(),
                r_dim: a.r.dim(),
                pi_dim: a.pi.dim(),
            });
        }
        Ok(())
    }

    /// The node with the given id (see [`MaterializedProduct`]).
    pub fn node(&self, id: u64) -> HNode {
        let q = self.field();
        let per_column = q.checked_pow(self.d()).expect("id space fits u64");
        HNode {
            r: FVector::from_index(q, self.k(), id / per_column),
            pi: FVector::from_index(q, self.d(), id % per_column),
        }
    }

    pub fn node_id(&self, a: &HNode) -> Result<u64, ProductError> {
        self.check_node(a)?;
        let too_big = || ProductError::OverBudget {
            nodes: self.node_count(),
            budget: u64::MAX,
        };
        let per_column = self.field().checked_pow(self.d()).ok_or_else(too_big)?;
        let r = a.r.to_index().ok_or_else(too_big)?;
        let pi = a.pi.to_index().ok_or_else(too_big)?;
        r.checked_mul(per_column)
            .and_then(|x| x.checked_add(pi))
            .ok_or_else(too_big)
    }

    fn relation(&self, r: &[u32], r2: &[u32]) -> ColumnRelation {
        let positions = diff_digits(r, r2);
        if positions.is_empty() {
            ColumnRelation::Same
        } else if positions.len() >= self.variant.saturation() {
            ColumnRelation::Saturated
        } else {
            let f = self.field();
            let coeffs = positions.iter().map(|&i| f.sub(r2[i - 1], r[i - 1])).collect();
            ColumnRelation::Test { positions, coeffs }
        }
    }

    fn test(&self, positions: &[usize], coeffs: &[u32], pi: &[u32], pi2: &[u32]) -> Result<Adjacency, ProductError> {
        let f = self.field();
        let delta: Vec<u32> = pi2.iter().zip(pi).map(|(&b, &a)| f.sub(b, a)).collect();
        let kind = match positions.len() {
            1 => TestKind::VertexTest,
            2 => TestKind::EdgeTest,
            _ => TestKind::CliqueTest,
        };
        let decoded = self.decode_raw(&delta, positions, coeffs)?;
        let g = self.labeled.graph();
        match decoded {
            Some(vs) if g.is_clique(&vs) => Ok(Adjacency {
                adjacent: true,
                decode: DecodeResult {
                    kind,
                    positions: positions.to_vec(),
                    vertices: vs,
                },
            }),
            _ => Ok(Adjacency::fixed(false, kind)),
        }
    }

    fn adjacency_raw(&self, r: &[u32], pi: &[u32], r2: &[u32], pi2: &[u32]) -> Result<Adjacency, ProductError> {
        match self.relation(r, r2) {
            ColumnRelation::Same => Ok(Adjacency::fixed(false, TestKind::NonAdjacent)),
            ColumnRelation::Saturated => Ok(Adjacency::fixed(true, TestKind::AlwaysAdjacent)),
            ColumnRelation::Test { positions, coeffs } => self.test(&positions, &coeffs, pi, pi2),
        }
    }

    /// Adjacency of two nodes under this graph's variant.
    pub fn adjacent(&self, a: &HNode, b: &HNode) -> Result<Adjacency, ProductError> {
        self.check_node(a)?;
        self.check_node(b)?;
        self.adjacency_raw(a.r.digits(), a.pi.digits(), b.r.digits(), b.pi.digits())
    }

    fn expect_variant(&self, expected: Variant) -> Result<(), ProductError> {
        if self.variant != expected {
            return Err(ProductError::VariantMismatch {
                expected,
                found: self.variant,
            });
        }
        Ok(())
    }

    /// Adjacency under the basic rules; errors on an improved graph.
    pub fn adjacent_basic(&self, a: &HNode, b: &HNode) -> Result<Adjacency, ProductError> {
        self.expect_variant(Variant::Basic)?;
        self.adjacent(a, b)
    }

    /// Adjacency under the improved rules; errors on a basic graph.
    pub fn adjacent_improved(&self, a: &HNode, b: &HNode) -> Result<Adjacency, ProductError> {
        self.expect_variant(Variant::Improved)?;
        self.adjacent(a, b)
    }

    /// Finds the unique `(v_1, ..., v_t)` with `v_j` of color `positions[j]`
    /// and `delta = sum_j coeffs[j] * label(v_j)`.
    ///
    /// `positions` are distinct colors (1-indexed), `1 <= t <= 4`, and all
    /// coefficients nonzero. Two distinct solutions are reported as
    /// [`ProductError::AmbiguousDecode`].
    pub fn decode_delta(
        &self,
        delta: &FVector,
        positions: &[usize],
        coeffs: &[FieldElem],
    ) -> Result<Option<Vec<usize>>, ProductError> {
        let f = self.field();
        if delta.field() != f || delta.dim() != self.d() {
            return Err(GfError::DimensionMismatch {
                left: delta.dim(),
                right: self.d(),
            }
            .into());
        }
        if positions.len() != coeffs.len() || positions.is_empty() || positions.len() > 4 {
            return Err(ProductError::InvariantViolation(format!(
                "decode needs 1..=4 positions with one coefficient each, got {} and {}",
                positions.len(),
                coeffs.len()
            )));
        }
        let mut sorted = positions.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != positions.len() || sorted.iter().any(|&i| i == 0 || i > self.k()) {
            return Err(ProductError::InvariantViolation(format!("bad positions {positions:?}")));
        }
        let mut raw = Vec::with_capacity(coeffs.len());
        for c in coeffs {
            if c.field() != f {
                return Err(GfError::FieldMismatch { left: f.q(), right: c.field().q() }.into());
            }
            if c.is_zero() {
                return Err(GfError::DivisionByZero(f.q()).into());
            }
            raw.push(c.value());
        }
        self.decode_raw(delta.digits(), positions, &raw)
    }

    fn decode_raw(&self, delta: &[u32], positions: &[usize], coeffs: &[u32]) -> Result<Option<Vec<usize>>, ProductError> {
        if positions.len() == 1 {
            return Ok(self.solve_last(delta, positions[0], coeffs[0]).map(|v| vec![v]));
        }
        let mut key = Vec::with_capacity(2 * positions.len() + delta.len());
        key.extend(positions.iter().map(|&p| p as u32));
        key.extend_from_slice(coeffs);
        key.extend_from_slice(delta);
        if let Some(hit) = self.memo.get(&key) {
            return Ok(hit.clone());
        }
        let mut solutions = Vec::new();
        let mut prefix = Vec::with_capacity(positions.len());
        self.enumerate(delta.to_vec(), positions, coeffs, &mut prefix, &mut solutions);
        if solutions.len() > 1 {
            return Err(ProductError::AmbiguousDecode {
                positions: positions.to_vec(),
                solutions: solutions.len(),
            });
        }
        let found = solutions.pop();
        self.memo.insert(key, found.clone());
        Ok(found)
    }

    /// Fixes `v_1 .. v_{t-1}` by enumeration and solves for `v_t`.
    fn enumerate(
        &self,
        residual: Vec<u32>,
        positions: &[usize],
        coeffs: &[u32],
        prefix: &mut Vec<usize>,
        solutions: &mut Vec<Vec<usize>>,
    ) {
        let j = prefix.len();
        if j + 1 == positions.len() {
            if let Some(v) = self.solve_last(&residual, positions[j], coeffs[j]) {
                let mut s = prefix.clone();
                s.push(v);
                solutions.push(s);
            }
            return;
        }
        let f = self.field();
        let g = self.labeled.graph();
        for &v in g.class(positions[j]) {
            let label = self.labeled.label(v).digits();
            let next = residual
                .iter()
                .zip(label)
                .map(|(&x, &l)| f.sub(x, f.mul(coeffs[j], l)))
                .collect();
            prefix.push(v);
            self.enumerate(next, positions, coeffs, prefix, solutions);
            prefix.pop();
        }
    }

    /// The vertex `v` of color `color` with `residual = coeff * label(v)`.
    fn solve_last(&self, residual: &[u32], color: usize, coeff: u32) -> Option<usize> {
        let f = self.field();
        let inv = f.inv(coeff)?;
        let candidate: Vec<u32> = residual.iter().map(|&x| f.mul(inv, x)).collect();
        let v = self.labeled.vertex_of(&candidate)?;
        (self.labeled.graph().color(v) == color).then_some(v)
    }

    /// The clique `{(r, sum_i r[i] * label(v_i)) : r in F_q^k}` built from a
    /// multi-colored k-clique of `G`, in lexicographic order of `r`.
    pub fn yes_clique(&self, witness: &[usize]) -> Result<Vec<HNode>, ProductError> {
        let g = self.labeled.graph();
        if !g.is_multicolored_clique(witness) {
            return Err(ProductError::NotAWitness(witness.to_vec()));
        }
        let mut by_color = witness.to_vec();
        by_color.sort_by_key(|&v| g.color(v));
        let f = self.field();
        let columns = f.checked_pow(self.k()).ok_or(ProductError::OverBudget {
            nodes: self.column_count(),
            budget: u64::MAX,
        })?;
        let d = self.d();
        Ok((0..columns)
            .map(|idx| {
                let r = FVector::from_index(f, self.k(), idx);
                let mut pi = vec![0u32; d];
                for (&ri, &v) in r.digits().iter().zip(&by_color) {
                    for (x, &l) in pi.iter_mut().zip(self.labeled.label(v).digits()) {
                        *x = f.add(*x, f.mul(ri, l));
                    }
                }
                let pi = FVector::new(f, pi).expect("reduced digits");
                HNode { r, pi }
            })
            .collect())
    }

    /// Whether `nodes` are pairwise adjacent, by querying the oracle.
    pub fn verify_clique(&self, nodes: &[HNode]) -> Result<bool, ProductError> {
        for (i, a) in nodes.iter().enumerate() {
            for b in &nodes[i + 1..] {
                if !self.adjacent(a, b)?.adjacent {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Every sum `sum_j coeffs[j] * label(v_j)` over `v_j` in the classes
    /// `positions[j]`, as a map from the delta to whether its tuple passes
    /// the test. Errors if two tuples share a delta, exactly as the decoder
    /// would.
    fn delta_table(&self, positions: &[usize], coeffs: &[u32]) -> Result<HashMap<Vec<u32>, bool>, ProductError> {
        let f = self.field();
        let g = self.labeled.graph();
        let mut table = HashMap::new();
        let mut stack = vec![(Vec::new(), vec![0u32; self.d()])];
        while let Some((tuple, sum)) = stack.pop() {
            let j = tuple.len();
            if j == positions.len() {
                let ok = g.is_clique(&tuple);
                if table.insert(sum, ok).is_some() {
                    return Err(ProductError::AmbiguousDecode {
                        positions: positions.to_vec(),
                        solutions: 2,
                    });
                }
                continue;
            }
            for &v in g.class(positions[j]) {
                let label = self.labeled.label(v).digits();
                let next = sum.iter().zip(label).map(|(&s, &l)| f.add(s, f.mul(coeffs[j], l))).collect();
                let mut t = tuple.clone();
                t.push(v);
                stack.push((t, next));
            }
        }
        Ok(table)
    }

    /// Builds `H` explicitly, refusing when `q^(k+d)` exceeds `budget`.
    ///
    /// For each pair of columns under test, the accepted differences
    /// `pi' - pi` are enumerated once and every node is joined to its
    /// translates. This gives the same edges as querying [`Self::adjacent`]
    /// on every pair. Columns are processed in parallel; the result does not
    /// depend on scheduling.
    pub fn materialize(&self, budget: u64) -> Result<MaterializedProduct, ProductError> {
        let nodes = self.node_count();
        if nodes > budget as u128 {
            return Err(ProductError::OverBudget { nodes, budget });
        }
        let f = self.field();
        let n = nodes as usize;
        let columns = f.checked_pow(self.k()).expect("within budget") as usize;
        let per_column = f.checked_pow(self.d()).expect("within budget") as usize;
        let col_digits: Vec<Vec<u32>> = (0..columns)
            .map(|i| FVector::from_index(f, self.k(), i as u64).into_digits())
            .collect();
        let pi_digits: Vec<Vec<u32>> = (0..per_column)
            .map(|i| FVector::from_index(f, self.d(), i as u64).into_digits())
            .collect();
        let words = n.div_ceil(64);
        let tables: DashMap<(Vec<usize>, Vec<u32>), Arc<Vec<Vec<u32>>>> = DashMap::new();
        let accepted = |positions: &Vec<usize>, coeffs: &Vec<u32>| -> Result<Arc<Vec<Vec<u32>>>, ProductError> {
            let key = (positions.clone(), coeffs.clone());
            if let Some(hit) = tables.get(&key) {
                return Ok(hit.clone());
            }
            let mut deltas: Vec<Vec<u32>> = self
                .delta_table(positions, coeffs)?
                .into_iter()
                .filter_map(|(delta, ok)| ok.then_some(delta))
                .collect();
            deltas.sort_unstable();
            let deltas = Arc::new(deltas);
            tables.insert(key, deltas.clone());
            Ok(deltas)
        };

        // One task per column: fill the rows of its nodes against every
        // other column. Both orders of a column pair are computed, which
        // keeps the tasks independent.
        let blocks: Vec<Vec<Vec<u64>>> = (0..columns)
            .into_par_iter()
            .map(|c| -> Result<Vec<Vec<u64>>, ProductError> {
                let mut rows = vec![vec![0u64; words]; per_column];
                for c2 in (0..columns).filter(|&c2| c2 != c) {
                    let base = c2 * per_column;
                    match self.relation(&col_digits[c], &col_digits[c2]) {
                        ColumnRelation::Same => unreachable!("distinct columns"),
                        ColumnRelation::Saturated => {
                            for row in rows.iter_mut() {
                                set_range(row, base, base + per_column);
                            }
                        }
                        ColumnRelation::Test { positions, coeffs } => {
                            let deltas = accepted(&positions, &coeffs)?;
                            for (p, row) in rows.iter_mut().enumerate() {
                                for delta in deltas.iter() {
                                    let mut idx = 0usize;
                                    for (&a, &b) in pi_digits[p].iter().zip(delta) {
                                        idx = idx * f.q() as usize + f.add(a, b) as usize;
                                    }
                                    let v = base + idx;
                                    row[v / 64] |= 1 << (v % 64);
                                }
                            }
                        }
                    }
                }
                Ok(rows)
            })
            .collect::<Result<_, _>>()?;
        let rows = blocks.into_iter().flatten().collect();
        Ok(MaterializedProduct {
            q: f.q(),
            k: self.k(),
            d: self.d(),
            graph: DenseGraph::from_rows(n, rows),
        })
    }
}

/// Sets bits `lo..hi` of a bitset.
fn set_range(row: &mut [u64], lo: usize, hi: usize) {
    let mut v = lo;
    while v < hi {
        let bit = v % 64;
        let take = (64 - bit).min(hi - v);
        let mask = if take == 64 { u64::MAX } else { ((1u64 << take) - 1) << bit };
        row[v / 64] |= mask;
        v += take;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphio::{attach_labels, parse_mccq, ColoredGraph, LabelMode};
    use crate::sidon::CandidateOrder;

    fn triangle_with_basis_labels(variant: Variant) -> ProductGraph {
        // colors 1..3; vertex i (color i) gets label e_i
        let f = PrimeField::new(2).unwrap();
        let g = ColoredGraph::new(3, vec![1, 2, 3], [(0, 1), (0, 2), (1, 2)]).unwrap();
        let labels = (1..=3).map(|i| FVector::unit(f, i, 3).unwrap()).collect();
        ProductGraph::new(LabeledGraph::new(g, 8, labels).unwrap(), variant).unwrap()
    }

    fn node(q: u32, r: &[u32], pi: &[u32]) -> HNode {
        let f = PrimeField::new(q).unwrap();
        HNode {
            r: FVector::new(f, r.to_vec()).unwrap(),
            pi: FVector::new(f, pi.to_vec()).unwrap(),
        }
    }

    #[test]
    fn identical_nodes_are_not_adjacent() {
        for variant in [Variant::Basic, Variant::Improved] {
            let p = triangle_with_basis_labels(variant);
            let a = node(2, &[0, 1, 0], &[1, 1, 0]);
            let adj = p.adjacent(&a, &a).unwrap();
            assert!(!adj.adjacent);
            assert_eq!(adj.decode.kind, TestKind::NonAdjacent);
        }
    }

    #[test]
    fn vertex_test_decodes_the_color_one_vertex() {
        for variant in [Variant::Basic, Variant::Improved] {
            let p = triangle_with_basis_labels(variant);
            let a = node(2, &[0, 0, 0], &[0, 0, 0]);
            let b = node(2, &[1, 0, 0], &[1, 0, 0]);
            let adj = p.adjacent(&a, &b).unwrap();
            assert!(adj.adjacent);
            assert_eq!(adj.decode.kind, TestKind::VertexTest);
            assert_eq!(adj.decode.vertices, vec![0]);
            assert_eq!(adj.decode.positions, vec![1]);
        }
    }

    #[test]
    fn vertex_test_rejects_wrong_color() {
        let p = triangle_with_basis_labels(Variant::Basic);
        let a = node(2, &[0, 0, 0], &[0, 0, 0]);
        let b = node(2, &[1, 0, 0], &[0, 1, 0]);
        let adj = p.adjacent_basic(&a, &b).unwrap();
        assert!(!adj.adjacent);
        assert!(adj.decode.vertices.is_empty());
    }

    #[test]
    fn distance_three_is_saturated_in_basic() {
        let p = triangle_with_basis_labels(Variant::Basic);
        let a = node(2, &[0, 0, 0], &[0, 1, 1]);
        let b = node(2, &[1, 1, 1], &[1, 0, 1]);
        let adj = p.adjacent_basic(&a, &b).unwrap();
        assert!(adj.adjacent);
        assert_eq!(adj.decode.kind, TestKind::AlwaysAdjacent);
    }

    #[test]
    fn distance_three_runs_the_clique_test_in_improved() {
        let p = triangle_with_basis_labels(Variant::Improved);
        let a = node(2, &[0, 0, 0], &[0, 0, 0]);
        let good = node(2, &[1, 1, 1], &[1, 1, 1]);
        let adj = p.adjacent_improved(&a, &good).unwrap();
        assert!(adj.adjacent);
        assert_eq!(adj.decode.kind, TestKind::CliqueTest);
        assert_eq!(adj.decode.vertices, vec![0, 1, 2]);
        let bad = node(2, &[1, 1, 1], &[1, 0, 1]);
        assert!(!p.adjacent_improved(&a, &bad).unwrap().adjacent);
    }

    #[test]
    fn variant_specific_entry_points_check_the_variant() {
        let p = triangle_with_basis_labels(Variant::Basic);
        let a = node(2, &[0, 0, 0], &[0, 0, 0]);
        assert_eq!(
            p.adjacent_improved(&a, &a).unwrap_err(),
            ProductError::VariantMismatch {
                expected: Variant::Improved,
                found: Variant::Basic
            }
        );
    }

    #[test]
    fn foreign_nodes_are_rejected() {
        let p = triangle_with_basis_labels(Variant::Basic);
        let a = node(2, &[0, 0, 0], &[0, 0, 0]);
        assert!(matches!(p.adjacent(&a, &node(2, &[0, 0], &[0, 0, 0])), Err(ProductError::ForeignNode { .. })));
        assert!(matches!(p.adjacent(&a, &node(3, &[0, 0, 0], &[0, 0, 0])), Err(ProductError::ForeignNode { .. })));
    }

    #[test]
    fn arity_is_checked_at_construction() {
        let text = "p mccq 2 1 2\nc 1 1\nc 2 2\ne 1 2\n";
        let lg = attach_labels(parse_mccq(text).unwrap(), PrimeField::new(2).unwrap(), 4, LabelMode::Adaptive, CandidateOrder::Lexicographic).unwrap();
        assert!(ProductGraph::new(lg.clone(), Variant::Basic).is_ok());
        assert_eq!(
            ProductGraph::new(lg, Variant::Improved).unwrap_err(),
            ProductError::ArityTooLow {
                variant: Variant::Improved,
                required: 8,
                found: 4
            }
        );
    }

    #[test]
    fn decode_delta_cases() {
        let p = triangle_with_basis_labels(Variant::Improved);
        let f = p.field();
        let one = f.one();
        let delta = FVector::new(f, vec![0, 1, 0]).unwrap();
        assert_eq!(p.decode_delta(&delta, &[2], &[one]).unwrap(), Some(vec![1]));
        let zero = FVector::zero(f, 3);
        assert_eq!(p.decode_delta(&zero, &[2], &[one]).unwrap(), None);
        let both = FVector::new(f, vec![1, 1, 0]).unwrap();
        assert_eq!(p.decode_delta(&both, &[1, 2], &[one, one]).unwrap(), Some(vec![0, 1]));
        assert_eq!(p.decode_delta(&both, &[1, 3], &[one, one]).unwrap(), None);
        assert!(p.decode_delta(&both, &[1], &[f.zero()]).is_err());
        assert!(p.decode_delta(&both, &[1, 1], &[one, one]).is_err());
        assert!(p.decode_delta(&both, &[4], &[one]).is_err());
    }

    #[test]
    fn ambiguous_labelings_are_detected() {
        // Labels for colors 1 and 2 are only 2-term independent as a whole:
        // (1,0) + (0,1) = (1,1) + 0 is avoided, but u + v = u' + v' happens.
        let f = PrimeField::new(2).unwrap();
        let g = ColoredGraph::new(2, vec![1, 1, 2, 2], [(0, 2), (1, 3)]).unwrap();
        let labels: Vec<FVector> = [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1]]
            .iter()
            .map(|l| FVector::new(f, l.to_vec()).unwrap())
            .collect();
        // bypass arity checks by claiming 3-term independence (true) and
        // building with an explicit low arity
        let lg = LabeledGraph::new(g, 3, labels).unwrap();
        let p = ProductGraph {
            labeled: lg,
            variant: Variant::Basic,
            memo: DashMap::new(),
        };
        // (1,0,0)+(0,0,1) = (1,0,1) = (0,1,0)+(1,1,1)
        let delta = FVector::new(f, vec![1, 0, 1]).unwrap();
        assert_eq!(
            p.decode_delta(&delta, &[1, 2], &[f.one(), f.one()]).unwrap_err(),
            ProductError::AmbiguousDecode {
                positions: vec![1, 2],
                solutions: 2
            }
        );
    }

    #[test]
    fn yes_clique_of_the_triangle() {
        let p = triangle_with_basis_labels(Variant::Improved);
        let k = p.yes_clique(&[0, 1, 2]).unwrap();
        assert_eq!(k.len(), 8);
        assert!(k[0].r.is_zero() && k[0].pi.is_zero());
        let mut pairs = 0;
        for (i, a) in k.iter().enumerate() {
            for b in &k[i + 1..] {
                assert!(p.adjacent_improved(a, b).unwrap().adjacent);
                pairs += 1;
            }
        }
        assert_eq!(pairs, 28);
        assert!(matches!(p.yes_clique(&[0, 1]), Err(ProductError::NotAWitness(_))));
    }

    #[test]
    fn yes_clique_over_f3_on_an_edge() {
        let g = ColoredGraph::new(2, vec![1, 2], [(0, 1)]).unwrap();
        let lg = attach_labels(g, PrimeField::new(3).unwrap(), 8, LabelMode::Adaptive, CandidateOrder::Lexicographic).unwrap();
        let p = ProductGraph::new(lg, Variant::Improved).unwrap();
        let k = p.yes_clique(&[1, 0]).unwrap();
        assert_eq!(k.len(), 9);
        assert!(p.verify_clique(&k).unwrap());
    }

    #[test]
    fn materialize_sizes_and_budget() {
        let p = triangle_with_basis_labels(Variant::Basic);
        let m = p.materialize(DEFAULT_NODE_BUDGET).unwrap();
        assert_eq!(m.graph.n(), 64);
        assert_eq!(
            p.materialize(63).unwrap_err(),
            ProductError::OverBudget { nodes: 64, budget: 63 }
        );

        let path = ColoredGraph::new(3, vec![1, 2, 3], [(0, 1), (1, 2)]).unwrap();
        let lg = attach_labels(path, PrimeField::new(2).unwrap(), 4, LabelMode::Fixed(45), CandidateOrder::Lexicographic).unwrap();
        let big = ProductGraph::new(lg, Variant::Basic).unwrap();
        assert_eq!(
            big.materialize(DEFAULT_NODE_BUDGET).unwrap_err(),
            ProductError::OverBudget { nodes: 1 << 48, budget: DEFAULT_NODE_BUDGET }
        );

        let single = ColoredGraph::new(1, vec![1], []).unwrap();
        let lg = attach_labels(single, PrimeField::new(2).unwrap(), 4, LabelMode::Adaptive, CandidateOrder::Lexicographic).unwrap();
        assert_eq!(ProductGraph::new(lg, Variant::Basic).unwrap().materialize(DEFAULT_NODE_BUDGET).unwrap().graph.n(), 4);
    }

    #[test]
    fn materialized_edges_agree_with_the_oracle() {
        for variant in [Variant::Basic, Variant::Improved] {
            let p = triangle_with_basis_labels(variant);
            let m = p.materialize(DEFAULT_NODE_BUDGET).unwrap();
            for u in 0..64u64 {
                for v in 0..64u64 {
                    let want = p.adjacent(&p.node(u), &p.node(v)).unwrap().adjacent;
                    assert_eq!(m.graph.has_edge(u as usize, v as usize), want, "{variant} {u} {v}");
                }
            }
        }
    }

    #[test]
    fn set_range_spans_words() {
        let mut row = vec![0u64; 3];
        set_range(&mut row, 60, 130);
        assert_eq!(row[0], 0xf << 60);
        assert_eq!(row[1], u64::MAX);
        assert_eq!(row[2], 0b11);
        let mut row = vec![0u64; 1];
        set_range(&mut row, 3, 3);
        assert_eq!(row[0], 0);
    }

    #[test]
    fn node_ids_round_trip() {
        let p = triangle_with_basis_labels(Variant::Basic);
        for id in 0..64 {
            assert_eq!(p.node_id(&p.node(id)).unwrap(), id);
        }
        assert_eq!(p.node_id(&node(2, &[1, 0, 0], &[0, 0, 1])).unwrap(), 33);
    }
}
