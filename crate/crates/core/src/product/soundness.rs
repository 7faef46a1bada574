//! Diagnostics that follow the soundness argument on concrete cliques of `H`.
//!
//! For a clique `K` let `R` be the set of columns it occupies. Direction `i`
//! is blocked at `r in R` when no column in the direction-`i` neighborhood
//! of `r` is occupied:
//!
//! - basic: the line `{r + a e_i : a != 0}`;
//! - improved: every `r'` with `Hamming(r, r') <= 2` and `i in diff(r, r')`.
//!
//! If `G` has no k-clique, every `r in R` has a blocked direction `i_r`, and
//! the sets `T_r = {r + a e_{i_r}}` cover each free column at most `k` times
//! (basic) or once (improved). If some `r` has no blocked direction, the
//! k-clique of `G` can be read off its neighbors.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use super::{HNode, ProductError, ProductGraph, Variant};
use crate::gf::{diff_digits, FVector};

/// How often free columns are covered by the sets `T_r`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TrCensus {
    /// `|R|`.
    pub occupied: usize,
    /// `(index(r), i_r)` for each occupied column with a blocked direction.
    pub blocked: Vec<(u64, usize)>,
    /// Occupied columns with no blocked direction.
    pub unblocked: Vec<u64>,
    /// Largest number of `T_r` containing one free column.
    pub max_multiplicity: usize,
    /// `k` (basic) or `1` (improved).
    pub allowed: usize,
}

impl TrCensus {
    pub fn holds(&self) -> bool {
        self.max_multiplicity <= self.allowed
    }
}

impl ProductGraph {
    /// Maps each occupied column to the clique member in it. Two members in
    /// one column cannot be adjacent, so that is reported as
    /// [`ProductError::NotAClique`].
    fn occupancy<'a>(&self, clique: &'a [HNode]) -> Result<HashMap<&'a [u32], &'a HNode>, ProductError> {
        let mut cols = HashMap::with_capacity(clique.len());
        for a in clique {
            self.check_node(a)?;
            if cols.insert(a.r.digits(), a).is_some() {
                return Err(ProductError::NotAClique);
            }
        }
        Ok(cols)
    }

    fn in_direction(&self, r: &[u32], r2: &[u32], i: usize) -> bool {
        let diff = diff_digits(r, r2);
        match self.variant {
            Variant::Basic => diff == [i],
            Variant::Improved => (1..=2).contains(&diff.len()) && diff.contains(&i),
        }
    }

    fn blocked_in(&self, clique: &[HNode], r: &[u32]) -> Option<usize> {
        (1..=self.k()).find(|&i| !clique.iter().any(|b| self.in_direction(r, b.r.digits(), i)))
    }

    /// Least direction blocked at column `r`, or `None` when every direction
    /// has an occupied neighbor.
    pub fn blocked_direction(&self, clique: &[HNode], r: &FVector) -> Result<Option<usize>, ProductError> {
        let cols = self.occupancy(clique)?;
        if !cols.contains_key(r.digits()) {
            return Err(ProductError::ColumnNotOccupied(r.to_digit_string()));
        }
        Ok(self.blocked_in(clique, r.digits()))
    }

    /// Counts, for every free column, how many `T_r` contain it.
    pub fn tr_census(&self, clique: &[HNode]) -> Result<TrCensus, ProductError> {
        let cols = self.occupancy(clique)?;
        let f = self.field();
        let mut blocked = Vec::new();
        let mut unblocked = Vec::new();
        let mut cover: BTreeMap<Vec<u32>, usize> = BTreeMap::new();
        for a in clique {
            let index = a.r.to_index().unwrap_or(u64::MAX);
            let Some(i) = self.blocked_in(clique, a.r.digits()) else {
                unblocked.push(index);
                continue;
            };
            blocked.push((index, i));
            for step in 1..f.q() {
                let mut t = a.r.digits().to_vec();
                t[i - 1] = f.add(t[i - 1], step);
                if cols.contains_key(t.as_slice()) {
                    return Err(ProductError::InvariantViolation(format!(
                        "blocked direction {i} at {} reaches an occupied column",
                        a.r.to_digit_string()
                    )));
                }
                *cover.entry(t).or_default() += 1;
            }
        }
        blocked.sort_unstable();
        unblocked.sort_unstable();
        Ok(TrCensus {
            occupied: cols.len(),
            blocked,
            unblocked,
            max_multiplicity: cover.values().copied().max().unwrap_or(0),
            allowed: match self.variant {
                Variant::Basic => self.k(),
                Variant::Improved => 1,
            },
        })
    }

    /// Recovers a k-clique of `G` from a clique of `H` whose columns include
    /// one with an occupied neighbor in every direction.
    ///
    /// Returns the vertices ordered by color, `None` when no such column
    /// exists, and an error if the decoded vertices are not a k-clique.
    pub fn decode_clique(&self, clique: &[HNode]) -> Result<Option<Vec<usize>>, ProductError> {
        self.occupancy(clique)?;
        'center: for a in clique {
            let mut found = Vec::with_capacity(self.k());
            for i in 1..=self.k() {
                let Some(b) = clique.iter().find(|b| self.in_direction(a.r.digits(), b.r.digits(), i)) else {
                    continue 'center;
                };
                let adj = self.adjacency_raw(a.r.digits(), a.pi.digits(), b.r.digits(), b.pi.digits())?;
                if !adj.adjacent {
                    return Err(ProductError::NotAClique);
                }
                let at = adj
                    .decode
                    .positions
                    .iter()
                    .position(|&p| p == i)
                    .expect("direction lies in the difference");
                found.push(adj.decode.vertices[at]);
            }
            if !self.labeled.graph().is_multicolored_clique(&found) {
                return Err(ProductError::InvariantViolation(format!(
                    "vertices {found:?} decoded around column {} are not a k-clique",
                    a.r.to_digit_string()
                )));
            }
            return Ok(Some(found));
        }
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::PrimeField;
    use crate::graphio::{attach_labels, ColoredGraph, LabelMode, LabeledGraph};
    use crate::sidon::CandidateOrder;

    fn triangle(variant: Variant) -> ProductGraph {
        let f = PrimeField::new(2).unwrap();
        let g = ColoredGraph::new(3, vec![1, 2, 3], [(0, 1), (0, 2), (1, 2)]).unwrap();
        let labels = (1..=3).map(|i| FVector::unit(f, i, 3).unwrap()).collect();
        ProductGraph::new(LabeledGraph::new(g, 8, labels).unwrap(), variant).unwrap()
    }

    #[test]
    fn yes_clique_has_no_blocked_direction() {
        for variant in [Variant::Basic, Variant::Improved] {
            let p = triangle(variant);
            let k = p.yes_clique(&[0, 1, 2]).unwrap();
            for a in &k {
                assert_eq!(p.blocked_direction(&k, &a.r).unwrap(), None);
            }
            let census = p.tr_census(&k).unwrap();
            assert_eq!(census.unblocked.len(), 8);
            assert_eq!(census.max_multiplicity, 0);
        }
    }

    #[test]
    fn single_node_is_blocked_in_direction_one() {
        let p = triangle(Variant::Basic);
        let k = vec![p.node(5)];
        assert_eq!(p.blocked_direction(&k, &k[0].r).unwrap(), Some(1));
        assert_eq!(p.decode_clique(&k).unwrap(), None);
        let census = p.tr_census(&k).unwrap();
        assert_eq!(census.blocked, vec![(0, 1)]);
        assert_eq!(census.max_multiplicity, 1);
    }

    #[test]
    fn unoccupied_column_is_an_error() {
        let p = triangle(Variant::Basic);
        let k = vec![p.node(0)];
        let r = FVector::new(p.field(), vec![1, 1, 1]).unwrap();
        assert!(matches!(p.blocked_direction(&k, &r), Err(ProductError::ColumnNotOccupied(_))));
    }

    #[test]
    fn two_nodes_in_one_column_are_not_a_clique() {
        let p = triangle(Variant::Improved);
        let k = vec![p.node(0), p.node(1)];
        assert_eq!(p.tr_census(&k).unwrap_err(), ProductError::NotAClique);
    }

    #[test]
    fn round_trip_on_the_triangle() {
        for variant in [Variant::Basic, Variant::Improved] {
            let p = triangle(variant);
            let k = p.yes_clique(&[2, 0, 1]).unwrap();
            assert_eq!(p.decode_clique(&k).unwrap(), Some(vec![0, 1, 2]));
        }
    }

    #[test]
    fn round_trip_over_f3() {
        let g = ColoredGraph::new(3, vec![1, 2, 3, 1, 2, 3], [(0, 1), (0, 2), (1, 2), (3, 4), (1, 5)]).unwrap();
        let lg = attach_labels(g, PrimeField::new(3).unwrap(), 8, LabelMode::Adaptive, CandidateOrder::Lexicographic).unwrap();
        for variant in [Variant::Basic, Variant::Improved] {
            let p = ProductGraph::new(lg.clone(), variant).unwrap();
            let k = p.yes_clique(&[0, 1, 2]).unwrap();
            assert_eq!(k.len(), 27);
            assert_eq!(p.decode_clique(&k).unwrap(), Some(vec![0, 1, 2]));
        }
    }
}
