//! t-term linearly independent sets in `F_q^d` and the greedy
//! span-avoidance construction.
//!
//! A set is *t-term linearly independent* when every subset of at most `t`
//! vectors is linearly independent. For `t >= 4` such a set is also a linear
//! Sidon set: `a*x + b*y = a*x' + b*y'` with nonzero `a, b` forces
//! `{x, y} = {x', y'}`.
//!
//! The greedy construction walks `F_q^d` in a fixed candidate order and keeps
//! a candidate `w` whenever it is outside the span of every `(t-1)`-subset of
//! the vectors chosen so far. Spans only grow as the set grows, so a rejected
//! candidate stays rejected and the walk never revisits it.

use std::collections::HashMap;

use itertools::Itertools;
use num_bigint::BigUint;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::gf::{Echelon, FVector, GfError, PrimeField};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SidonError {
    #[error(transparent)]
    Field(#[from] GfError),
    #[error("independence arity must be at least 1")]
    ZeroArity,
    #[error("dimension must be at least 1")]
    ZeroDimension,
    #[error("F_{q}^{dim} exhausted at step {step}: no candidate avoids the spans of {placed} chosen vectors")]
    Exhausted {
        q: u32,
        dim: usize,
        step: usize,
        placed: usize,
    },
    #[error("vectors must share a field and a dimension")]
    Inhomogeneous,
}

/// Order in which the greedy construction visits candidates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CandidateOrder {
    /// Base-q lexicographic order, most significant coordinate first.
    #[default]
    Lexicographic,
    /// Lexicographic order pushed through a seeded bijection of `F_q^d`
    /// (a coordinate permutation plus a digit permutation per coordinate).
    Seeded(u64),
}

/// A verified t-term linearly independent set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndependentSet {
    field: PrimeField,
    dim: usize,
    t: usize,
    vectors: Vec<FVector>,
}

impl IndependentSet {
    /// Checks `vectors` and wraps them; returns the dependent witness on
    /// failure.
    pub fn verified(
        field: PrimeField,
        dim: usize,
        t: usize,
        vectors: Vec<FVector>,
    ) -> Result<Result<Self, Vec<usize>>, SidonError> {
        if vectors.iter().any(|v| v.field() != field || v.dim() != dim) {
            return Err(SidonError::Inhomogeneous);
        }
        Ok(match verify_t_independent(&vectors, t)? {
            Independence::Independent => Ok(Self {
                field,
                dim,
                t,
                vectors,
            }),
            Independence::Dependent { witness } => Err(witness),
        })
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn arity(&self) -> usize {
        self.t
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[FVector] {
        &self.vectors
    }

    pub fn into_vectors(self) -> Vec<FVector> {
        self.vectors
    }
}

/// Outcome of [`verify_t_independent`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Independence {
    Independent,
    /// Indices (into the input) of a minimal linearly dependent subset.
    Dependent { witness: Vec<usize> },
}

impl Independence {
    pub fn holds(&self) -> bool {
        matches!(self, Independence::Independent)
    }
}

fn homogeneous(vectors: &[FVector]) -> Result<Option<(PrimeField, usize)>, SidonError> {
    let Some(first) = vectors.first() else {
        return Ok(None);
    };
    let (field, dim) = (first.field(), first.dim());
    if vectors.iter().any(|v| v.field() != field || v.dim() != dim) {
        return Err(SidonError::Inhomogeneous);
    }
    Ok(Some((field, dim)))
}

fn independent(field: PrimeField, dim: usize, vectors: &[FVector], subset: &[usize]) -> bool {
    let mut e = Echelon::new(field, dim);
    subset.iter().all(|&i| e.insert(vectors[i].digits()))
}

/// Checks that every subset of at most `t` vectors is linearly independent.
///
/// Only subsets of size `min(t, n)` are enumerated, since subsets of an
/// independent set are independent. A dependent subset is shrunk to a
/// minimal one before it is returned.
pub fn verify_t_independent(vectors: &[FVector], t: usize) -> Result<Independence, SidonError> {
    let Some((field, dim)) = homogeneous(vectors)? else {
        return Ok(Independence::Independent);
    };
    let m = t.min(vectors.len());
    for subset in (0..vectors.len()).combinations(m) {
        if independent(field, dim, vectors, &subset) {
            continue;
        }
        let mut witness = subset;
        let mut i = 0;
        while i < witness.len() {
            let mut smaller = witness.clone();
            smaller.remove(i);
            if !independent(field, dim, vectors, &smaller) {
                witness = smaller;
            } else {
                i += 1;
            }
        }
        return Ok(Independence::Dependent { witness });
    }
    Ok(Independence::Independent)
}

/// A violation of the linear Sidon property: `a*x + b*y = a*x2 + b*y2`
/// with `{x, y} != {x2, y2}` (indices into the input).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SidonViolation {
    pub a: u32,
    pub b: u32,
    pub x: usize,
    pub y: usize,
    pub x2: usize,
    pub y2: usize,
}

/// Brute-force linear Sidon check over all nonzero coefficient pairs and
/// ordered pairs of distinct vectors.
pub fn is_linear_sidon(vectors: &[FVector]) -> Result<Option<SidonViolation>, SidonError> {
    let Some((field, _)) = homogeneous(vectors)? else {
        return Ok(None);
    };
    let q = field.q();
    for a in 1..q {
        for b in 1..q {
            let mut seen: HashMap<Vec<u32>, (usize, usize)> = HashMap::new();
            for (x, y) in (0..vectors.len()).tuple_combinations().flat_map(|(i, j)| [(i, j), (j, i)]) {
                let (vx, vy) = (vectors[x].digits(), vectors[y].digits());
                if vx == vy {
                    continue;
                }
                let sum: Vec<u32> = vx
                    .iter()
                    .zip(vy)
                    .map(|(&p, &r)| field.add(field.mul(a, p), field.mul(b, r)))
                    .collect();
                match seen.get(&sum) {
                    Some(&(x2, y2)) => {
                        let (w2, z2) = (vectors[x2].digits(), vectors[y2].digits());
                        let same = (vx == w2 && vy == z2) || (vx == z2 && vy == w2);
                        if !same {
                            return Ok(Some(SidonViolation { a, b, x, y, x2, y2 }));
                        }
                    }
                    None => {
                        seen.insert(sum, (x, y));
                    }
                }
            }
        }
    }
    Ok(None)
}

/// `c + m` where `m` is the least integer with `q^m >= n^c`, i.e.
/// `ceil(c * log n / log q + c)` computed without floating point.
fn dimension_with_exponent(n: usize, field: PrimeField, c: usize) -> usize {
    let target = BigUint::from(n.max(1)).pow(c as u32);
    let q = BigUint::from(field.q());
    let mut power = BigUint::from(1u32);
    let mut m = 0;
    while power < target {
        power *= &q;
        m += 1;
    }
    c + m
}

/// Dimension that guarantees the greedy construction of a t-term linearly
/// independent set of size `n`: `ceil((2t-1) log n / log q + 2t - 1)`.
pub fn guaranteed_dimension(n: usize, field: PrimeField, t: usize) -> usize {
    dimension_with_exponent(n, field, (2 * t).saturating_sub(1))
}

/// The sharper bound for 4-term independence: `ceil(3 log n / log q + 3)`.
pub fn four_term_dimension(n: usize, field: PrimeField) -> usize {
    dimension_with_exponent(n, field, 3)
}

/// Smallest `d >= 1` with `q^d >= n`.
pub fn min_dimension(n: usize, field: PrimeField) -> usize {
    let mut d = 1;
    let mut cap = field.q() as u128;
    while cap < n as u128 {
        cap *= field.q() as u128;
        d += 1;
    }
    d
}

/// Work counters of a greedy run.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ConstructionStats {
    /// Candidates drawn from `F_q^d`.
    pub candidates: u64,
    /// Span-membership tests (one per candidate per enumerated subset).
    pub span_tests: u64,
}

/// Visits `F_q^d` in a fixed order without materialising it.
struct CandidateWalk {
    field: PrimeField,
    odometer: Vec<u32>,
    done: bool,
    coordinate_perm: Vec<usize>,
    digit_perms: Vec<Vec<u32>>,
}

impl CandidateWalk {
    fn new(field: PrimeField, dim: usize, order: CandidateOrder) -> Self {
        let q = field.q();
        let (coordinate_perm, digit_perms) = match order {
            CandidateOrder::Lexicographic => ((0..dim).collect(), Vec::new()),
            CandidateOrder::Seeded(seed) => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let mut perm: Vec<usize> = (0..dim).collect();
                perm.shuffle(&mut rng);
                let digits = (0..dim)
                    .map(|_| {
                        let mut p: Vec<u32> = (0..q).collect();
                        p.shuffle(&mut rng);
                        p
                    })
                    .collect();
                (perm, digits)
            }
        };
        Self {
            field,
            odometer: vec![0; dim],
            done: false,
            coordinate_perm,
            digit_perms,
        }
    }

    fn current(&self) -> Option<Vec<u32>> {
        if self.done {
            return None;
        }
        if self.digit_perms.is_empty() {
            return Some(self.odometer.clone());
        }
        let mut w = vec![0; self.odometer.len()];
        for (p, &x) in self.odometer.iter().enumerate() {
            w[self.coordinate_perm[p]] = self.digit_perms[p][x as usize];
        }
        Some(w)
    }

    fn advance(&mut self) {
        for digit in self.odometer.iter_mut().rev() {
            *digit += 1;
            if *digit < self.field.q() {
                return;
            }
            *digit = 0;
        }
        self.done = true;
    }
}

/// Result of a successful greedy run.
#[derive(Debug, Clone)]
pub struct Construction {
    pub set: IndependentSet,
    pub stats: ConstructionStats,
}

/// Greedily builds `n` t-term linearly independent vectors in `F_q^d`.
///
/// Each step takes the first remaining candidate outside the span of every
/// subset of `min(t - 1, |S|)` chosen vectors; in particular `0` is never
/// chosen.
pub fn greedy_construct(
    n: usize,
    field: PrimeField,
    t: usize,
    dim: usize,
    order: CandidateOrder,
) -> Result<Construction, SidonError> {
    if t == 0 {
        return Err(SidonError::ZeroArity);
    }
    if dim == 0 {
        return Err(SidonError::ZeroDimension);
    }
    let mut chosen: Vec<Vec<u32>> = Vec::with_capacity(n);
    let mut stats = ConstructionStats::default();
    let mut walk = CandidateWalk::new(field, dim, order);

    while chosen.len() < n {
        let m = (t - 1).min(chosen.len());
        let bases: Vec<Echelon> = (0..chosen.len())
            .combinations(m)
            .map(|subset| {
                let mut e = Echelon::new(field, dim);
                for i in subset {
                    e.insert(&chosen[i]);
                }
                e
            })
            .collect();
        loop {
            let Some(w) = walk.current() else {
                return Err(SidonError::Exhausted {
                    q: field.q(),
                    dim,
                    step: chosen.len() + 1,
                    placed: chosen.len(),
                });
            };
            walk.advance();
            stats.candidates += 1;
            let mut blocked = false;
            for basis in &bases {
                stats.span_tests += 1;
                if basis.contains(&w) {
                    blocked = true;
                    break;
                }
            }
            if !blocked {
                chosen.push(w);
                break;
            }
        }
    }

    let vectors = chosen
        .into_iter()
        .map(|c| FVector::new(field, c))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Construction {
        set: IndependentSet {
            field,
            dim,
            t,
            vectors,
        },
        stats,
    })
}

/// Tries `d = min_dimension(n), ...` up to [`guaranteed_dimension`] and returns
/// the first dimension at which [`greedy_construct`] succeeds.
pub fn adaptive_construct(
    n: usize,
    field: PrimeField,
    t: usize,
    order: CandidateOrder,
) -> Result<Construction, SidonError> {
    let bound = guaranteed_dimension(n, field, t);
    let mut dim = min_dimension(n, field);
    loop {
        match greedy_construct(n, field, t, dim, order) {
            Ok(c) => return Ok(c),
            Err(SidonError::Exhausted { .. }) if dim < bound => dim += 1,
            Err(e) => return Err(e),
        }
    }
}
