#![allow(dead_code)]

use cliquegap::gf::{FVector, PrimeField};
use cliquegap::graphio::{attach_labels, ColoredGraph, LabelMode, LabeledGraph};
use cliquegap::harness::{generate_instance, GeneratorSpec, InstanceKind};
use cliquegap::product::{HNode, ProductGraph, Variant};
use cliquegap::sidon::CandidateOrder;

/// Clique number by plain include/exclude recursion.
pub fn brute_clique_number(n: usize, adj: &dyn Fn(usize, usize) -> bool) -> usize {
    fn go(v: usize, n: usize, chosen: &mut Vec<usize>, adj: &dyn Fn(usize, usize) -> bool) -> usize {
        if v == n {
            return chosen.len();
        }
        let mut best = go(v + 1, n, chosen, adj);
        if chosen.iter().all(|&u| adj(u, v)) {
            chosen.push(v);
            best = best.max(go(v + 1, n, chosen, adj));
            chosen.pop();
        }
        best
    }
    go(0, n, &mut Vec::new(), adj)
}

/// Every multi-colored k-clique of `g`, each ordered by color.
pub fn all_k_cliques(g: &ColoredGraph) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(g: &ColoredGraph, color: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if color > g.k() {
            out.push(cur.clone());
            return;
        }
        for &v in g.class(color) {
            if cur.iter().all(|&u| g.has_edge(u, v)) {
                cur.push(v);
                go(g, color + 1, cur, out);
                cur.pop();
            }
        }
    }
    go(g, 1, &mut cur, &mut out);
    out
}

/// Adjacency in `H` straight from the definition: try every tuple of
/// vertices on the differing colors.
pub fn definition_adjacent(p: &ProductGraph, a: &HNode, b: &HNode) -> bool {
    let f = p.field();
    let g = p.labeled().graph();
    let diff: Vec<usize> = (1..=p.k()).filter(|&i| a.r.digits()[i - 1] != b.r.digits()[i - 1]).collect();
    let limit = match p.variant() {
        Variant::Basic => 2,
        Variant::Improved => 4,
    };
    if diff.is_empty() {
        return false;
    }
    if diff.len() > limit {
        return true;
    }
    let coeffs: Vec<u32> = diff
        .iter()
        .map(|&i| f.sub(b.r.digits()[i - 1], a.r.digits()[i - 1]))
        .collect();
    let delta: Vec<u32> = b.pi.digits().iter().zip(a.pi.digits()).map(|(&x, &y)| f.sub(x, y)).collect();
    let classes: Vec<&[usize]> = diff.iter().map(|&i| g.class(i)).collect();
    let mut idx = vec![0usize; diff.len()];
    loop {
        let tuple: Vec<usize> = idx.iter().zip(&classes).map(|(&j, c)| c[j]).collect();
        let mut sum = vec![0u32; p.d()];
        for (&v, &c) in tuple.iter().zip(&coeffs) {
            for (s, &l) in sum.iter_mut().zip(p.labeled().label(v).digits()) {
                *s = f.add(*s, f.mul(c, l));
            }
        }
        if sum == delta && g.is_clique(&tuple) {
            return true;
        }
        // odometer
        let mut pos = 0;
        loop {
            if pos == idx.len() {
                return false;
            }
            idx[pos] += 1;
            if idx[pos] < classes[pos].len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

pub fn field(q: u32) -> PrimeField {
    PrimeField::new(q).unwrap()
}

pub fn instance(kind: InstanceKind, n: usize, k: usize, seed: u64) -> ColoredGraph {
    generate_instance(&GeneratorSpec {
        kind,
        n,
        k,
        seed,
        edge_prob: 0.5,
    })
    .unwrap()
}

pub fn labeled(g: &ColoredGraph, q: u32, variant: Variant) -> LabeledGraph {
    attach_labels(g.clone(), field(q), variant.required_arity(), LabelMode::Adaptive, CandidateOrder::Lexicographic).unwrap()
}

pub fn product(g: &ColoredGraph, q: u32, variant: Variant) -> ProductGraph {
    ProductGraph::new(labeled(g, q, variant), variant).unwrap()
}

pub fn vector(q: u32, digits: &[u32]) -> FVector {
    FVector::new(field(q), digits.to_vec()).unwrap()
}
