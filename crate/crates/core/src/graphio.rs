//! Multi-colored k-Clique instances: model, text formats, preprocessing and
//! vertex labeling.
//!
//! Vertices are `0..n` in memory and `1..=n` in files. Colors are `1..=k`
//! everywhere, so color `i` lines up with coordinate `i` of the column index
//! `r` in the product graph.
//!
//! The `mccq` format:
//!
//! ```text
//! p mccq <n> <m> <k>
//! c <vertex> <color>      (n lines, vertex ascending)
//! e <u> <v>               (m lines, u < v, sorted)
//! ```
//!
//! Lines starting with `#` are comments. Plain graphs use the DIMACS
//! `p edge <n> <m>` / `e <u> <v>` format and enter the pipeline only through
//! [`multicolor_preprocess`].

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt::Write as _;

use thiserror::Error;

use crate::gf::{FVector, PrimeField};
use crate::sidon::{self, CandidateOrder, Independence, SidonError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("edge {{{u}, {v}}} joins two vertices of color {color}")]
    IntraColorEdge { u: usize, v: usize, color: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {{{u}, {v}}}")]
    DuplicateEdge { u: usize, v: usize },
    #[error("vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("color {color} out of range 1..={k}")]
    ColorOutOfRange { color: usize, k: usize },
    #[error("color class {0} is empty")]
    EmptyColorClass(usize),
    #[error("number of colors must be at least 1")]
    ZeroColors,
    #[error("labeling is not {t}-term linearly independent (dependent vertices {witness:?})")]
    DependentLabels { t: usize, witness: Vec<usize> },
    #[error("labeling is not injective")]
    DuplicateLabel,
    #[error(transparent)]
    Sidon(#[from] SidonError),
}

pub(crate) fn parse_err(line: usize, msg: impl Into<String>) -> GraphError {
    GraphError::Parse {
        line,
        msg: msg.into(),
    }
}

/// A validated multi-colored graph: colors partition `V` and every color
/// class is an independent set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoredGraph {
    k: usize,
    color: Vec<usize>,
    classes: Vec<Vec<usize>>,
    // sorted neighbor lists
    adj: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
}

impl ColoredGraph {
    /// `colors[v]` is the color (`1..=k`) of vertex `v`; edges are 0-based.
    pub fn new(
        k: usize,
        colors: Vec<usize>,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, GraphError> {
        if k == 0 {
            return Err(GraphError::ZeroColors);
        }
        let n = colors.len();
        let mut classes = vec![Vec::new(); k];
        for (v, &c) in colors.iter().enumerate() {
            if c == 0 || c > k {
                return Err(GraphError::ColorOutOfRange { color: c, k });
            }
            classes[c - 1].push(v);
        }
        if let Some(i) = classes.iter().position(Vec::is_empty) {
            return Err(GraphError::EmptyColorClass(i + 1));
        }
        let mut seen = HashSet::new();
        let mut list = Vec::new();
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w + 1, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u + 1));
            }
            let (u, v) = (u.min(v), u.max(v));
            if colors[u] == colors[v] {
                return Err(GraphError::IntraColorEdge {
                    u: u + 1,
                    v: v + 1,
                    color: colors[u],
                });
            }
            if !seen.insert((u, v)) {
                return Err(GraphError::DuplicateEdge { u: u + 1, v: v + 1 });
            }
            list.push((u, v));
        }
        list.sort_unstable();
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &list {
            adj[u].push(v);
            adj[v].push(u);
        }
        for row in adj.iter_mut() {
            row.sort_unstable();
        }
        Ok(Self {
            k,
            color: colors,
            classes,
            adj,
            edges: list,
        })
    }

    pub fn n(&self) -> usize {
        self.color.len()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Color of `v`, in `1..=k`.
    pub fn color(&self, v: usize) -> usize {
        self.color[v]
    }

    pub fn colors(&self) -> &[usize] {
        &self.color
    }

    /// The vertices of color `i` (`1..=k`), ascending.
    pub fn class(&self, i: usize) -> &[usize] {
        &self.classes[i - 1]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Whether `vertices` are pairwise adjacent.
    pub fn is_clique(&self, vertices: &[usize]) -> bool {
        vertices.iter().all(|&v| v < self.n())
            && vertices
                .iter()
                .enumerate()
                .all(|(i, &u)| vertices[i + 1..].iter().all(|&v| self.has_edge(u, v)))
    }

    /// Whether `vertices` is a k-clique with exactly one vertex per color.
    pub fn is_multicolored_clique(&self, vertices: &[usize]) -> bool {
        if vertices.len() != self.k || !self.is_clique(vertices) {
            return false;
        }
        let colors: BTreeSet<usize> = vertices.iter().map(|&v| self.color[v]).collect();
        colors.len() == self.k
    }

    /// Serializes to `mccq`.
    pub fn to_mccq(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "p mccq {} {} {}", self.n(), self.edges.len(), self.k);
        for (v, c) in self.color.iter().enumerate() {
            let _ = writeln!(out, "c {} {}", v + 1, c);
        }
        for (u, v) in &self.edges {
            let _ = writeln!(out, "e {} {}", u + 1, v + 1);
        }
        out
    }
}

pub(crate) fn data_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            None
        } else {
            Some((i + 1, line.split_whitespace().collect()))
        }
    })
}

pub(crate) fn number(line: usize, tok: &str) -> Result<usize, GraphError> {
    tok.parse()
        .map_err(|_| parse_err(line, format!("expected a nonnegative integer, found {tok:?}")))
}

pub(crate) fn fields<const N: usize>(line: usize, toks: &[&str]) -> Result<[usize; N], GraphError> {
    if toks.len() != N + 1 {
        return Err(parse_err(
            line,
            format!("expected {} fields after {:?}, found {}", N, toks[0], toks.len() - 1),
        ));
    }
    let mut out = [0; N];
    for (slot, tok) in out.iter_mut().zip(&toks[1..]) {
        *slot = number(line, tok)?;
    }
    Ok(out)
}

/// Parses and validates an `mccq` document.
pub fn parse_mccq(text: &str) -> Result<ColoredGraph, GraphError> {
    let mut lines = data_lines(text);
    let (hline, header) = lines
        .next()
        .ok_or_else(|| parse_err(1, "missing `p mccq` header"))?;
    if header.len() != 5 || header[0] != "p" || header[1] != "mccq" {
        return Err(parse_err(hline, "expected `p mccq <n> <m> <k>`"));
    }
    let n = number(hline, header[2])?;
    let m = number(hline, header[3])?;
    let k = number(hline, header[4])?;
    // every vertex needs its own color line
    if n > text.len() || m > text.len() || k > text.len() {
        return Err(parse_err(hline, "declared sizes exceed the input length"));
    }

    let mut colors: Vec<Option<usize>> = vec![None; n];
    let mut color_lines = 0usize;
    let mut edges = Vec::new();
    for (line, toks) in lines {
        match toks[0] {
            "c" => {
                if !edges.is_empty() {
                    return Err(parse_err(line, "color lines must precede edge lines"));
                }
                let [v, c] = fields::<2>(line, &toks)?;
                if v == 0 || v > n {
                    return Err(parse_err(line, format!("vertex {v} out of range 1..={n}")));
                }
                if colors[v - 1].replace(c).is_some() {
                    return Err(parse_err(line, format!("vertex {v} colored twice")));
                }
                color_lines += 1;
            }
            "e" => {
                let [u, v] = fields::<2>(line, &toks)?;
                for w in [u, v] {
                    if w == 0 || w > n {
                        return Err(parse_err(line, format!("vertex {w} out of range 1..={n}")));
                    }
                }
                if u >= v {
                    return Err(parse_err(line, format!("edge endpoints must satisfy u < v, found {u} {v}")));
                }
                if edges.len() == m {
                    return Err(parse_err(line, format!("more than the declared {m} edges")));
                }
                edges.push((u - 1, v - 1));
            }
            other => return Err(parse_err(line, format!("unknown line type {other:?}"))),
        }
    }
    if color_lines != n {
        return Err(parse_err(hline, format!("declared {n} vertices but colored {color_lines}")));
    }
    if edges.len() != m {
        return Err(parse_err(hline, format!("declared {m} edges but found {}", edges.len())));
    }
    let colors = colors.into_iter().map(|c| c.unwrap_or(0)).collect();
    ColoredGraph::new(k, colors, edges)
}

/// An uncolored simple graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlainGraph {
    pub n: usize,
    /// Edges `(u, v)`, 0-based with `u < v`, sorted and deduplicated.
    pub edges: Vec<(usize, usize)>,
}

impl PlainGraph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, GraphError> {
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w + 1, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u + 1));
            }
            set.insert((u.min(v), u.max(v)));
        }
        Ok(Self {
            n,
            edges: set.into_iter().collect(),
        })
    }
}

/// Parses a DIMACS `p edge` (or `p col`) graph. Repeated edges are merged.
pub fn parse_dimacs(text: &str) -> Result<PlainGraph, GraphError> {
    let mut n = None;
    let mut edges = Vec::new();
    for (line, toks) in data_lines(text) {
        match toks[0] {
            // DIMACS comments use `c`
            "c" => {}
            "p" => {
                if n.is_some() {
                    return Err(parse_err(line, "duplicate problem line"));
                }
                if toks.len() != 4 || !matches!(toks[1], "edge" | "col") {
                    return Err(parse_err(line, "expected `p edge <n> <m>`"));
                }
                n = Some(number(line, toks[2])?);
                number(line, toks[3])?;
            }
            "e" => {
                let Some(n) = n else {
                    return Err(parse_err(line, "edge before problem line"));
                };
                let [u, v] = fields::<2>(line, &toks)?;
                for w in [u, v] {
                    if w == 0 || w > n {
                        return Err(parse_err(line, format!("vertex {w} out of range 1..={n}")));
                    }
                }
                if u == v {
                    return Err(parse_err(line, format!("self-loop at vertex {u}")));
                }
                edges.push((u - 1, v - 1));
            }
            other => return Err(parse_err(line, format!("unknown line type {other:?}"))),
        }
    }
    let n = n.ok_or_else(|| parse_err(1, "missing `p edge` header"))?;
    PlainGraph::new(n, edges)
}

/// Standard reduction from k-Clique to multi-colored k-Clique.
///
/// Vertex `(v, i)` of `V x [k]` gets id `(i - 1) * n + v` and color `i`;
/// `(u, i)` and `(v, j)` are adjacent iff `i != j` and `uv` is an edge.
pub fn multicolor_preprocess(g: &PlainGraph, k: usize) -> Result<ColoredGraph, GraphError> {
    let n = g.n;
    let colors = (1..=k).flat_map(|i| std::iter::repeat(i).take(n)).collect();
    let mut edges = Vec::new();
    for i in 0..k {
        for j in 0..k {
            if i == j {
                continue;
            }
            for &(u, v) in &g.edges {
                let a = i * n + u;
                let b = j * n + v;
                if a < b {
                    edges.push((a, b));
                }
            }
        }
    }
    ColoredGraph::new(k, colors, edges)
}

/// Searches for a k-clique with one vertex per color; returns it ordered by
/// color.
pub fn has_k_clique(g: &ColoredGraph) -> Option<Vec<usize>> {
    fn extend(g: &ColoredGraph, chosen: &mut Vec<usize>) -> bool {
        let next = chosen.len() + 1;
        if next > g.k() {
            return true;
        }
        for &v in g.class(next) {
            if chosen.iter().all(|&u| g.has_edge(u, v)) {
                chosen.push(v);
                if extend(g, chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    let mut chosen = Vec::with_capacity(g.k());
    extend(g, &mut chosen).then_some(chosen)
}

/// How the label dimension is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LabelMode {
    /// Smallest dimension at which the greedy construction succeeds.
    #[default]
    Adaptive,
    /// The guaranteed dimension: `ceil(3 log n / log q + 3)` for `t <= 4`,
    /// `ceil((2t-1) log n / log q + 2t - 1)` otherwise.
    Guaranteed,
    /// A caller-chosen dimension.
    Fixed(usize),
}

/// A colored graph whose vertices are identified with a t-term linearly
/// independent set in `F_q^d`.
#[derive(Debug, Clone)]
pub struct LabeledGraph {
    graph: ColoredGraph,
    field: PrimeField,
    dim: usize,
    t: usize,
    labels: Vec<FVector>,
    index: HashMap<Vec<u32>, usize>,
}

impl LabeledGraph {
    /// Wraps an explicit labeling after re-verifying injectivity and t-term
    /// independence.
    pub fn new(graph: ColoredGraph, t: usize, labels: Vec<FVector>) -> Result<Self, GraphError> {
        let (field, dim) = match labels.first() {
            Some(l) => (l.field(), l.dim()),
            None => return Err(GraphError::DuplicateLabel),
        };
        if labels.len() != graph.n() {
            return Err(GraphError::DuplicateLabel);
        }
        let mut index = HashMap::with_capacity(labels.len());
        for (v, l) in labels.iter().enumerate() {
            if l.field() != field || l.dim() != dim {
                return Err(SidonError::Inhomogeneous.into());
            }
            if index.insert(l.digits().to_vec(), v).is_some() {
                return Err(GraphError::DuplicateLabel);
            }
        }
        if let Independence::Dependent { witness } = sidon::verify_t_independent(&labels, t)? {
            return Err(GraphError::DependentLabels { t, witness });
        }
        Ok(Self {
            graph,
            field,
            dim,
            t,
            labels,
            index,
        })
    }

    pub fn graph(&self) -> &ColoredGraph {
        &self.graph
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Independence arity of the labeling.
    pub fn arity(&self) -> usize {
        self.t
    }

    pub fn label(&self, v: usize) -> &FVector {
        &self.labels[v]
    }

    pub fn labels(&self) -> &[FVector] {
        &self.labels
    }

    /// The vertex labeled `digits`, if any.
    #[inline]
    pub fn vertex_of(&self, digits: &[u32]) -> Option<usize> {
        self.index.get(digits).copied()
    }
}

/// Labels `V(G)` in ascending vertex order with a greedily constructed
/// t-term linearly independent set.
pub fn attach_labels(
    graph: ColoredGraph,
    field: PrimeField,
    t: usize,
    mode: LabelMode,
    order: CandidateOrder,
) -> Result<LabeledGraph, GraphError> {
    let n = graph.n();
    let construction = match mode {
        LabelMode::Adaptive => sidon::adaptive_construct(n, field, t, order)?,
        LabelMode::Guaranteed => {
            let d = if t <= 4 {
                sidon::four_term_dimension(n, field)
            } else {
                sidon::guaranteed_dimension(n, field, t)
            };
            sidon::greedy_construct(n, field, t, d, order)?
        }
        LabelMode::Fixed(d) => sidon::greedy_construct(n, field, t, d, order)?,
    };
    LabeledGraph::new(graph, t, construction.set.into_vectors())
}

#[cfg(test)]
mod tests {
    use super::*;

    const TRIANGLE: &str = "p mccq 3 3 3\nc 1 1\nc 2 2\nc 3 3\ne 1 2\ne 1 3\ne 2 3\n";

    fn brute_force_k_clique(g: &PlainGraph, k: usize) -> bool {
        // every k-subset of vertices, by bitmask
        (0u32..1 << g.n).filter(|m| m.count_ones() as usize == k).any(|m| {
            let vs: Vec<usize> = (0..g.n).filter(|&v| m >> v & 1 == 1).collect();
            vs.iter().enumerate().all(|(i, &u)| {
                vs[i + 1..].iter().all(|&v| g.edges.binary_search(&(u, v)).is_ok())
            })
        })
    }

    #[test]
    fn parses_triangle() {
        let g = parse_mccq(TRIANGLE).unwrap();
        assert_eq!((g.n(), g.k(), g.edges().len()), (3, 3, 3));
        assert_eq!(g.to_mccq(), TRIANGLE);
    }

    #[test]
    fn comments_and_blank_lines_are_skipped() {
        let text = "# hello\n\np mccq 2 1 2\n# colors\nc 1 1\nc 2 2\ne 1 2\n";
        assert_eq!(parse_mccq(text).unwrap().edges(), &[(0, 1)]);
    }

    #[test]
    fn rejects_intra_color_edge() {
        let text = "p mccq 3 1 2\nc 1 1\nc 2 1\nc 3 2\ne 1 2\n";
        assert_eq!(
            parse_mccq(text).unwrap_err(),
            GraphError::IntraColorEdge { u: 1, v: 2, color: 1 }
        );
    }

    #[test]
    fn rejects_malformed_input_with_line_numbers() {
        let cases = [
            ("", 1),
            ("p mccq 2 0\n", 1),
            ("p mccq 2 0 2\nc 1 1\nc 3 2\n", 3),
            ("p mccq 2 1 2\nc 1 1\nc 2 2\ne 2 1\n", 4),
            ("p mccq 2 1 2\nc 1 1\nc 2 2\ne 1 2\ne 1 2\n", 5),
            ("p mccq 2 0 2\nc 1 1\nc 1 2\n", 3),
            ("p mccq 2 0 2\nc 1 x\nc 2 2\n", 2),
            ("p mccq 2 0 2\nc 1 1\nq 2 2\n", 3),
            ("p mccq 2 1 2\nc 1 1\ne 1 2\nc 2 2\n", 4),
        ];
        for (text, line) in cases {
            match parse_mccq(text) {
                Err(GraphError::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?} gave {other:?}"),
            }
        }
        assert!(matches!(
            parse_mccq("p mccq 2 0 2\nc 1 1\n"),
            Err(GraphError::Parse { line: 1, .. })
        ));
    }

    #[test]
    fn rejects_empty_color_class_and_bad_colors() {
        assert_eq!(
            parse_mccq("p mccq 2 0 3\nc 1 1\nc 2 2\n").unwrap_err(),
            GraphError::EmptyColorClass(3)
        );
        assert_eq!(
            parse_mccq("p mccq 1 0 1\nc 1 2\n").unwrap_err(),
            GraphError::ColorOutOfRange { color: 2, k: 1 }
        );
        assert_eq!(ColoredGraph::new(0, vec![], []).unwrap_err(), GraphError::ZeroColors);
    }

    #[test]
    fn edgeless_two_colored_is_a_no_instance() {
        let g = parse_mccq("p mccq 2 0 2\nc 1 1\nc 2 2\n").unwrap();
        assert_eq!(has_k_clique(&g), None);
    }

    #[test]
    fn k_clique_oracle_examples() {
        let g = parse_mccq(TRIANGLE).unwrap();
        assert_eq!(has_k_clique(&g), Some(vec![0, 1, 2]));
        let path = ColoredGraph::new(3, vec![1, 2, 3], [(0, 1), (1, 2)]).unwrap();
        assert_eq!(has_k_clique(&path), None);
        let single = ColoredGraph::new(1, vec![1, 1], []).unwrap();
        assert_eq!(has_k_clique(&single), Some(vec![0]));
    }

    #[test]
    fn preprocess_examples() {
        let tri = PlainGraph::new(3, [(0, 1), (0, 2), (1, 2)]).unwrap();
        let g = multicolor_preprocess(&tri, 3).unwrap();
        assert_eq!(g.n(), 9);
        assert!(has_k_clique(&g).is_some());
        let edge = PlainGraph::new(3, [(0, 1)]).unwrap();
        assert!(has_k_clique(&multicolor_preprocess(&edge, 3).unwrap()).is_none());
        let g1 = multicolor_preprocess(&edge, 1).unwrap();
        assert!(g1.edges().is_empty());
        assert_eq!(has_k_clique(&g1).map(|w| w.len()), Some(1));
    }

    #[test]
    fn preprocess_preserves_clique_existence_exhaustively() {
        // every graph on up to 5 vertices, and random ones on 6..=7
        let mut graphs = Vec::new();
        for n in 1..=5usize {
            let pairs: Vec<(usize, usize)> =
                (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
            for mask in 0u32..1 << pairs.len() {
                let es = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &p)| p);
                graphs.push(PlainGraph::new(n, es).unwrap());
            }
        }
        let mut state = 0x9e3779b97f4a7c15u64;
        for n in 6..=7usize {
            for _ in 0..200 {
                let mut es = Vec::new();
                for u in 0..n {
                    for v in u + 1..n {
                        state ^= state << 13;
                        state ^= state >> 7;
                        state ^= state << 17;
                        if state % 2 == 0 {
                            es.push((u, v));
                        }
                    }
                }
                graphs.push(PlainGraph::new(n, es).unwrap());
            }
        }
        for g in &graphs {
            for k in 1..=3 {
                let colored = multicolor_preprocess(g, k).unwrap();
                assert_eq!(
                    has_k_clique(&colored).is_some(),
                    brute_force_k_clique(g, k),
                    "n={} edges={:?} k={k}",
                    g.n,
                    g.edges
                );
            }
        }
    }

    #[test]
    fn dimacs_parsing() {
        let g = parse_dimacs("c comment\np edge 3 3\ne 1 2\ne 2 3\ne 3 2\n").unwrap();
        assert_eq!(g.edges, vec![(0, 1), (1, 2)]);
        assert!(parse_dimacs("e 1 2\n").is_err());
        assert!(parse_dimacs("p edge 2 1\ne 1 3\n").is_err());
        assert!(parse_dimacs("p edge 2 1\ne 1 1\n").is_err());
    }

    #[test]
    fn labels_triangle_adaptively_with_the_standard_basis() {
        let g = parse_mccq(TRIANGLE).unwrap();
        let lg = attach_labels(g, PrimeField::new(2).unwrap(), 8, LabelMode::Adaptive, CandidateOrder::Lexicographic).unwrap();
        assert_eq!(lg.dim(), 3);
        let digits: Vec<&[u32]> = lg.labels().iter().map(|l| l.digits()).collect();
        assert_eq!(digits, vec![&[0, 0, 1][..], &[0, 1, 0], &[1, 0, 0]]);
        assert_eq!(lg.vertex_of(&[0, 1, 0]), Some(1));
        assert_eq!(lg.vertex_of(&[1, 1, 0]), None);
    }

    #[test]
    fn guaranteed_dimension_labeling_of_a_path() {
        let path = ColoredGraph::new(4, vec![1, 2, 3, 4], [(0, 1), (1, 2), (2, 3)]).unwrap();
        let lg = attach_labels(path, PrimeField::new(2).unwrap(), 4, LabelMode::Guaranteed, CandidateOrder::Lexicographic).unwrap();
        assert_eq!(lg.dim(), 9);
    }

    #[test]
    fn single_vertex_labeling() {
        let g = ColoredGraph::new(1, vec![1], []).unwrap();
        let lg = attach_labels(g, PrimeField::new(2).unwrap(), 4, LabelMode::Adaptive, CandidateOrder::Lexicographic).unwrap();
        assert_eq!(lg.dim(), 1);
        assert_eq!(lg.labels().len(), 1);
    }

    #[test]
    fn explicit_labelings_are_reverified() {
        let f = PrimeField::new(2).unwrap();
        let g = ColoredGraph::new(3, vec![1, 2, 3], []).unwrap();
        let dependent = vec![
            FVector::new(f, vec![1, 0]).unwrap(),
            FVector::new(f, vec![0, 1]).unwrap(),
            FVector::new(f, vec![1, 1]).unwrap(),
        ];
        assert_eq!(
            LabeledGraph::new(g.clone(), 4, dependent).unwrap_err(),
            GraphError::DependentLabels { t: 4, witness: vec![0, 1, 2] }
        );
        let repeated = vec![FVector::unit(f, 1, 2).unwrap(); 3];
        assert_eq!(LabeledGraph::new(g, 1, repeated).unwrap_err(), GraphError::DuplicateLabel);
    }
}
