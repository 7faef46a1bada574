//! Exact maximum clique on small dense graphs.
//!
//! Branch and bound in the style of Tomita's MCQ: vertices of the candidate
//! set are greedily colored, and a branch is cut as soon as the current
//! clique plus the number of colors left cannot beat the incumbent. The
//! candidate sets are bitsets, so a graph on a few thousand vertices costs a
//! few dozen words per set.

use thiserror::Error;

/// Default vertex budget for the solver.
pub const DEFAULT_BUDGET: usize = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolverError {
    #[error("vertex {vertex} out of range 0..{n}")]
    OutOfRange { vertex: usize, n: usize },
    #[error("graph has {n} vertices, above the budget of {budget}")]
    OverBudget { n: usize, budget: usize },
}

/// Undirected graph with a symmetric, irreflexive bit-matrix adjacency.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DenseGraph {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl DenseGraph {
    pub fn new(n: usize) -> Self {
        let words = n.div_ceil(64);
        Self {
            n,
            words,
            bits: vec![0; n * words],
        }
    }

    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, SolverError> {
        let mut g = Self::new(n);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Builds a graph from complete adjacency rows, which the caller
    /// guarantees to be symmetric with an empty diagonal.
    pub(crate) fn from_rows(n: usize, rows: Vec<Vec<u64>>) -> Self {
        let mut g = Self::new(n);
        for (u, row) in rows.into_iter().enumerate() {
            g.bits[u * g.words..(u + 1) * g.words].copy_from_slice(&row);
        }
        debug_assert!((0..n).all(|u| !g.has_edge(u, u)));
        g
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub(crate) fn words(&self) -> usize {
        self.words
    }

    fn check(&self, v: usize) -> Result<(), SolverError> {
        if v >= self.n {
            return Err(SolverError::OutOfRange { vertex: v, n: self.n });
        }
        Ok(())
    }

    /// Adds `uv`; self-loops are ignored.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<(), SolverError> {
        self.check(u)?;
        self.check(v)?;
        if u != v {
            self.bits[u * self.words + v / 64] |= 1 << (v % 64);
            self.bits[v * self.words + u / 64] |= 1 << (u % 64);
        }
        Ok(())
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.bits[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    #[inline]
    fn row(&self, u: usize) -> &[u64] {
        &self.bits[u * self.words..(u + 1) * self.words]
    }

    pub fn degree(&self, u: usize) -> usize {
        self.row(u).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n).map(|u| self.degree(u)).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v` in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            ones(self.row(u)).filter(move |&v| v > u).map(move |v| (u, v))
        })
    }

    /// Whether `vertices` are pairwise adjacent.
    pub fn verify_clique(&self, vertices: &[usize]) -> Result<bool, SolverError> {
        for &v in vertices {
            self.check(v)?;
        }
        Ok(vertices
            .iter()
            .enumerate()
            .all(|(i, &u)| vertices[i + 1..].iter().all(|&v| u != v && self.has_edge(u, v))))
    }
}

fn ones(words: &[u64]) -> impl Iterator<Item = usize> + '_ {
    words.iter().enumerate().flat_map(|(i, &w)| {
        let mut w = w;
        std::iter::from_fn(move || {
            if w == 0 {
                return None;
            }
            let b = w.trailing_zeros() as usize;
            w &= w - 1;
            Some(i * 64 + b)
        })
    })
}

/// Outcome of an optimisation or decision search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliqueResult {
    /// Size of the best clique found.
    pub size: usize,
    pub witness: Vec<usize>,
    pub nodes_expanded: u64,
    /// `true` when the search ran to completion, so `size` is the clique
    /// number.
    pub exhausted: bool,
}

/// Outcome of [`exceeds`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decision {
    /// Whether a clique larger than the bound exists.
    pub exceeds: bool,
    /// A clique of size `bound + 1` when `exceeds`, otherwise empty.
    pub witness: Vec<usize>,
    pub nodes_expanded: u64,
}

#[derive(Debug, Clone, Copy)]
pub struct SolveOptions {
    /// Stop as soon as a clique larger than this is found.
    pub ub_hint: Option<usize>,
    pub budget: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self {
            ub_hint: None,
            budget: DEFAULT_BUDGET,
        }
    }
}

struct Search<'a> {
    g: &'a DenseGraph,
    best: Vec<usize>,
    current: Vec<usize>,
    // stop once `best.len() > stop_above`
    stop_above: usize,
    // only cliques larger than this are of interest
    floor: usize,
    nodes: u64,
}

impl Search<'_> {
    fn done(&self) -> bool {
        self.best.len() > self.stop_above
    }

    /// Greedy sequential coloring of `cand` in vertex-id order. Returns the
    /// vertices and their color numbers, colors non-decreasing.
    fn color_sort(&self, cand: &[u64]) -> (Vec<usize>, Vec<usize>) {
        let mut remaining: Vec<usize> = ones(cand).collect();
        let mut verts = Vec::with_capacity(remaining.len());
        let mut colors = Vec::with_capacity(remaining.len());
        let mut color = 0;
        let mut class = vec![0u64; self.g.words()];
        while !remaining.is_empty() {
            color += 1;
            class.iter_mut().for_each(|w| *w = 0);
            let mut rest = Vec::new();
            for v in remaining {
                let clash = self.g.row(v).iter().zip(&class).any(|(a, b)| a & b != 0);
                if clash {
                    rest.push(v);
                } else {
                    class[v / 64] |= 1 << (v % 64);
                    verts.push(v);
                    colors.push(color);
                }
            }
            remaining = rest;
        }
        (verts, colors)
    }

    fn expand(&mut self, mut cand: Vec<u64>) {
        self.nodes += 1;
        let (verts, colors) = self.color_sort(&cand);
        for idx in (0..verts.len()).rev() {
            if self.current.len() + colors[idx] <= self.best.len().max(self.floor) || self.done() {
                return;
            }
            let v = verts[idx];
            self.current.push(v);
            let next: Vec<u64> = cand.iter().zip(self.g.row(v)).map(|(a, b)| a & b).collect();
            if next.iter().all(|&w| w == 0) {
                if self.current.len() > self.best.len() {
                    self.best = self.current.clone();
                }
            } else {
                self.expand(next);
            }
            self.current.pop();
            cand[v / 64] &= !(1 << (v % 64));
        }
    }
}

/// Runs the search on a copy of `g` renumbered by non-increasing degree;
/// returns the best clique in original ids and the node count.
fn run(g: &DenseGraph, stop_above: usize, floor: usize, budget: usize) -> Result<(Vec<usize>, u64), SolverError> {
    if g.n() > budget {
        return Err(SolverError::OverBudget { n: g.n(), budget });
    }
    let mut order: Vec<usize> = (0..g.n()).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let mut rank = vec![0; g.n()];
    for (i, &v) in order.iter().enumerate() {
        rank[v] = i;
    }
    let renumbered = DenseGraph::from_edges(g.n(), g.edges().map(|(u, v)| (rank[u], rank[v])))?;
    let mut s = Search {
        g: &renumbered,
        best: Vec::new(),
        current: Vec::new(),
        stop_above,
        floor,
        nodes: 0,
    };
    if g.n() > 0 {
        let mut all = vec![0u64; g.words()];
        for v in 0..g.n() {
            all[v / 64] |= 1 << (v % 64);
        }
        s.expand(all);
    }
    let mut best: Vec<usize> = s.best.iter().map(|&i| order[i]).collect();
    best.sort_unstable();
    Ok((best, s.nodes))
}

/// Maximum clique. With `ub_hint = Some(b)` the search stops at the first
/// clique of size `b + 1`, which is enough to refute an upper bound `b`.
pub fn max_clique(g: &DenseGraph, opts: SolveOptions) -> Result<CliqueResult, SolverError> {
    let stop_above = opts.ub_hint.unwrap_or(usize::MAX);
    let (witness, nodes_expanded) = run(g, stop_above, 0, opts.budget)?;
    Ok(CliqueResult {
        size: witness.len(),
        exhausted: witness.len() <= stop_above,
        witness,
        nodes_expanded,
    })
}

/// Decides whether `g` has a clique of size greater than `bound`.
pub fn exceeds(g: &DenseGraph, bound: usize, budget: usize) -> Result<Decision, SolverError> {
    let (best, nodes_expanded) = run(g, bound, bound, budget)?;
    let exceeds = best.len() > bound;
    let witness = if exceeds {
        best.into_iter().take(bound + 1).collect()
    } else {
        Vec::new()
    };
    Ok(Decision {
        exceeds,
        witness,
        nodes_expanded,
    })
}
