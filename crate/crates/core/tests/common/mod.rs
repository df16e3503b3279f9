//! Independent reference implementations used by the integration tests.
//! Nothing here goes through the histogram or the log-domain weights.

#![allow(dead_code)]

use std::collections::BTreeMap;

use netimbalance::generators::{
    barabasi_albert, erdos_renyi, path, ring, star, watts_strogatz, GeneratorSeed,
};
use netimbalance::Graph;

/// Floyd–Warshall hop matrix; `None` for unreachable pairs.
pub fn floyd_warshall(g: &Graph) -> Vec<Vec<Option<u32>>> {
    let n = g.node_count();
    let mut d = vec![vec![None; n]; n];
    for (u, row) in d.iter_mut().enumerate() {
        row[u] = Some(0);
    }
    for (u, v) in g.edges() {
        d[u][v] = Some(1);
        d[v][u] = Some(1);
    }
    for k in 0..n {
        for i in 0..n {
            let Some(ik) = d[i][k] else { continue };
            let via = d[k].clone();
            for (ij, kj) in d[i].iter_mut().zip(via) {
                if let Some(kj) = kj {
                    if ij.is_none_or(|cur| ik + kj < cur) {
                        *ij = Some(ik + kj);
                    }
                }
            }
        }
    }
    d
}

/// Hop counts per ordered pair `u != v`, plus the unreachable count.
pub fn oracle_histogram(g: &Graph) -> (BTreeMap<u32, u64>, u64) {
    let d = floyd_warshall(g);
    let mut counts = BTreeMap::new();
    let mut unreachable = 0;
    for (u, row) in d.iter().enumerate() {
        for (v, hop) in row.iter().enumerate() {
            if u == v {
                continue;
            }
            match hop {
                Some(h) => *counts.entry(*h).or_insert(0) += 1,
                None => unreachable += 1,
            }
        }
    }
    (counts, unreachable)
}

/// Plain per-pair weights in linear space.
pub fn pair_weights(g: &Graph, a: f64, h0: f64) -> Vec<f64> {
    let d = floyd_warshall(g);
    let mut out = Vec::new();
    for (u, row) in d.iter().enumerate() {
        for (v, hop) in row.iter().enumerate() {
            if u != v {
                out.push(hop.map_or(0.0, |h| 1.0 / (1.0 + (a * (f64::from(h) - h0)).exp())));
            }
        }
    }
    out
}

/// Imbalance evaluated pair by pair, straight from the definition.
pub fn pairwise_imbalance(g: &Graph, a: f64, h0: f64) -> f64 {
    let n = g.node_count() as f64;
    let w = pair_weights(g, a, h0);
    let total: f64 = w.iter().sum();
    if total == 0.0 {
        return 1.0;
    }
    let entropy: f64 = w
        .iter()
        .filter(|&&x| x > 0.0)
        .map(|&x| {
            let p = x / total;
            -p * p.log2()
        })
        .sum();
    1.0 - entropy / (n * (n - 1.0)).log2()
}

/// Pair-level Jain unfairness `1 - (sum w)^2 / (K sum w^2)`.
pub fn pairwise_jain(g: &Graph, a: f64, h0: f64) -> f64 {
    let w = pair_weights(g, a, h0);
    let s: f64 = w.iter().sum();
    let s2: f64 = w.iter().map(|x| x * x).sum();
    if s2 == 0.0 {
        return 1.0;
    }
    1.0 - s * s / (w.len() as f64 * s2)
}

/// Deterministic mixed-model graph for case index `i`, with `n <= max_n`.
pub fn mixed_graph(i: u64, max_n: usize) -> Graph {
    let seed = GeneratorSeed(1000 + i);
    let n = 3 + (i as usize * 7) % (max_n - 2);
    match i % 7 {
        0 => erdos_renyi(n, 0.05 + 0.1 * (i % 5) as f64, seed).unwrap(),
        1 => erdos_renyi(n, 0.6, seed).unwrap(),
        2 => barabasi_albert(n.max(4), 1 + (i as usize % 3).min(n.max(4) - 2), seed).unwrap(),
        3 => watts_strogatz(n.max(5), 2, 0.2, seed).unwrap(),
        4 => watts_strogatz(n.max(7), 4, 0.05 * (i % 4) as f64, seed).unwrap(),
        5 => ring(n).unwrap(),
        _ => {
            if i.is_multiple_of(2) {
                star(n).unwrap()
            } else {
                path(n).unwrap()
            }
        }
    }
}
