//! Deterministic graph generators: the special graphs, the three random models
//! and the two-cluster dumbbell benchmark.
//!
//! Random generators are pure functions of their parameters and a
//! [`GeneratorSeed`]; the stream is ChaCha8, so output is identical across
//! platforms.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{invalid, Error, Result};
use crate::graph::{Graph, NodeId};

/// Seed for the random generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct GeneratorSeed(pub u64);

impl GeneratorSeed {
    pub fn offset(self, by: u64) -> Self {
        GeneratorSeed(self.0.wrapping_add(by))
    }

    fn rng(self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.0)
    }
}

impl From<u64> for GeneratorSeed {
    fn from(seed: u64) -> Self {
        GeneratorSeed(seed)
    }
}

fn check_probability(p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        invalid(format!("probability {p} outside [0, 1]"))
    }
}

fn build(n: usize, mut adjacency: Vec<BTreeSet<NodeId>>) -> Graph {
    debug_assert_eq!(adjacency.len(), n);
    Graph::from_sorted_adjacency(
        adjacency
            .iter_mut()
            .map(|set| std::mem::take(set).into_iter().collect())
            .collect(),
    )
}

pub fn complete(n: usize) -> Result<Graph> {
    if n == 0 {
        return invalid("complete graph needs n >= 1");
    }
    Ok(Graph::from_sorted_adjacency(
        (0..n)
            .map(|u| (0..n).filter(|&v| v != u).collect())
            .collect(),
    ))
}

pub fn path(n: usize) -> Result<Graph> {
    if n == 0 {
        return invalid("path graph needs n >= 1");
    }
    Graph::from_edges(n, (1..n).map(|i| (i - 1, i)))
}

pub fn ring(n: usize) -> Result<Graph> {
    if n < 3 {
        return invalid("ring graph needs n >= 3");
    }
    Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
}

/// Star with hub 0.
pub fn star(n: usize) -> Result<Graph> {
    if n < 2 {
        return invalid("star graph needs n >= 2");
    }
    Graph::from_edges(n, (1..n).map(|i| (0, i)))
}

/// G(n, p): every unordered pair drawn independently, one uniform draw per pair
/// in lexicographic pair order.
pub fn erdos_renyi(n: usize, p: f64, seed: GeneratorSeed) -> Result<Graph> {
    check_probability(p)?;
    Ok(erdos_renyi_with(n, p, &mut seed.rng()))
}

fn erdos_renyi_with<R: Rng>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut adjacency = vec![Vec::new(); n];
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.gen::<f64>() < p {
                adjacency[u].push(v);
                adjacency[v].push(u);
            }
        }
    }
    // v-lists were filled in increasing u order, so they are already sorted.
    Graph::from_sorted_adjacency(adjacency)
}

/// Preferential attachment starting from a complete seed on `max(m_attach, 2)` nodes.
///
/// Each new node draws `m_attach` distinct targets with probability
/// proportional to current degree.
pub fn barabasi_albert(n: usize, m_attach: usize, seed: GeneratorSeed) -> Result<Graph> {
    if m_attach == 0 || m_attach >= n {
        return invalid(format!(
            "need 1 <= m_attach < n, got m_attach={m_attach}, n={n}"
        ));
    }
    let mut rng = seed.rng();
    let core = m_attach.max(2);
    let mut adjacency = vec![BTreeSet::new(); n];
    // Every node appears once per incident edge endpoint.
    let mut endpoints: Vec<NodeId> = Vec::with_capacity(2 * n * m_attach);
    for u in 0..core {
        for v in (u + 1)..core {
            adjacency[u].insert(v);
            adjacency[v].insert(u);
            endpoints.push(u);
            endpoints.push(v);
        }
    }
    let mut targets = Vec::with_capacity(m_attach);
    for new in core..n {
        targets.clear();
        while targets.len() < m_attach {
            let t = endpoints[rng.gen_range(0..endpoints.len())];
            if !targets.contains(&t) {
                targets.push(t);
            }
        }
        for &t in &targets {
            adjacency[new].insert(t);
            adjacency[t].insert(new);
            endpoints.push(new);
            endpoints.push(t);
        }
    }
    Ok(build(n, adjacency))
}

/// Ring lattice with `k / 2` neighbours per side, each lattice edge `(u, u + j)`
/// rewired with probability `p` to a uniform target that is neither `u` nor
/// already adjacent to `u`.
pub fn watts_strogatz(n: usize, k: usize, p: f64, seed: GeneratorSeed) -> Result<Graph> {
    if k == 0 || !k.is_multiple_of(2) || k >= n {
        return invalid(format!("need even 0 < k < n, got k={k}, n={n}"));
    }
    check_probability(p)?;
    let mut rng = seed.rng();
    let mut adjacency = vec![BTreeSet::new(); n];
    for u in 0..n {
        for j in 1..=k / 2 {
            let v = (u + j) % n;
            adjacency[u].insert(v);
            adjacency[v].insert(u);
        }
    }
    let mut free = Vec::with_capacity(n);
    for j in 1..=k / 2 {
        for u in 0..n {
            let v = (u + j) % n;
            if rng.gen::<f64>() >= p {
                continue;
            }
            if !adjacency[u].contains(&v) || adjacency[u].len() >= n - 1 {
                continue;
            }
            free.clear();
            free.extend((0..n).filter(|&w| w != u && !adjacency[u].contains(&w)));
            let Some(&w) = free.choose(&mut rng) else {
                continue;
            };
            adjacency[u].remove(&v);
            adjacency[v].remove(&u);
            adjacency[u].insert(w);
            adjacency[w].insert(u);
        }
    }
    Ok(build(n, adjacency))
}

/// Internal topology of each dumbbell cluster.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ClusterTopology {
    Complete,
    Ring,
    /// G(size, p), redrawn until connected.
    ErdosRenyi(f64),
}

impl Default for ClusterTopology {
    fn default() -> Self {
        ClusterTopology::ErdosRenyi(0.15)
    }
}

const CLUSTER_RETRIES: usize = 10_000;

/// Two-cluster dumbbell network plus its bridge edge.
#[derive(Debug, Clone, PartialEq)]
pub struct Dumbbell {
    pub graph: Graph,
    pub cluster_size: usize,
    /// Always `(0, cluster_size)`.
    pub bridge: (NodeId, NodeId),
}

impl Dumbbell {
    /// True when `u` lies in cluster A (nodes `0..cluster_size`).
    pub fn in_cluster_a(&self, u: NodeId) -> bool {
        u < self.cluster_size
    }

    pub fn crosses_cut(&self, (u, v): (NodeId, NodeId)) -> bool {
        self.in_cluster_a(u) != self.in_cluster_a(v)
    }
}

pub fn dumbbell(
    cluster_size: usize,
    topology: ClusterTopology,
    seed: GeneratorSeed,
) -> Result<Dumbbell> {
    if cluster_size < 2 {
        return invalid("dumbbell clusters need at least 2 nodes");
    }
    let mut rng = seed.rng();
    let cluster = |rng: &mut ChaCha8Rng| -> Result<Graph> {
        match topology {
            ClusterTopology::Complete => complete(cluster_size),
            ClusterTopology::Ring => ring(cluster_size),
            ClusterTopology::ErdosRenyi(p) => {
                check_probability(p)?;
                for _ in 0..CLUSTER_RETRIES {
                    let g = erdos_renyi_with(cluster_size, p, rng);
                    if g.is_connected() {
                        return Ok(g);
                    }
                }
                Err(Error::InvalidParameter(format!(
                    "no connected G({cluster_size}, {p}) cluster after {CLUSTER_RETRIES} draws"
                )))
            }
        }
    };
    let a = cluster(&mut rng)?;
    let b = cluster(&mut rng)?;
    let bridge = (0, cluster_size);
    let graph = a.disjoint_union(&b).add_edge(bridge.0, bridge.1)?;
    Ok(Dumbbell {
        graph,
        cluster_size,
        bridge,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn special_graph_sizes() {
        assert_eq!(complete(3).unwrap().edge_count(), 3);
        assert_eq!(complete(50).unwrap().edge_count(), 1225);
        assert_eq!(complete(1).unwrap().edge_count(), 0);
        assert_eq!(path(2).unwrap().edge_count(), 1);
        assert_eq!(path(5).unwrap().edge_count(), 4);
        assert_eq!(star(2).unwrap().edge_count(), 1);
        assert!(ring(8).unwrap().degrees().iter().all(|&d| d == 2));
        assert_eq!(ring(3).unwrap(), complete(3).unwrap());
    }

    #[test]
    fn special_graph_preconditions() {
        assert!(complete(0).is_err());
        assert!(path(0).is_err());
        assert!(ring(2).is_err());
        assert!(star(1).is_err());
    }

    #[test]
    fn erdos_renyi_extremes() {
        let s = GeneratorSeed(1);
        assert_eq!(erdos_renyi(50, 0.0, s).unwrap().edge_count(), 0);
        assert_eq!(erdos_renyi(50, 1.0, s).unwrap(), complete(50).unwrap());
        assert!(erdos_renyi(50, 1.5, s).is_err());
        assert!(erdos_renyi(50, -0.1, s).is_err());
    }

    #[test]
    fn erdos_renyi_edge_count_near_mean() {
        // Binomial(1225, 0.1): mean 122.5, sd ~ 10.5.
        let m = erdos_renyi(50, 0.1, GeneratorSeed(42))
            .unwrap()
            .edge_count() as f64;
        let sd = (1225.0f64 * 0.1 * 0.9).sqrt();
        assert!((m - 122.5).abs() < 4.0 * sd, "m = {m}");
    }

    #[test]
    fn barabasi_albert_tree_and_hubs() {
        let tree = barabasi_albert(50, 1, GeneratorSeed(5)).unwrap();
        assert_eq!(tree.edge_count(), 49);
        assert!(tree.is_connected());

        let g = barabasi_albert(50, 3, GeneratorSeed(5)).unwrap();
        assert!(g.is_connected());
        let mut deg = g.degrees();
        deg.sort_unstable();
        assert!(deg[49] > deg[25]);
        assert!(barabasi_albert(5, 5, GeneratorSeed(0)).is_err());
        assert!(barabasi_albert(5, 0, GeneratorSeed(0)).is_err());
    }

    #[test]
    fn watts_strogatz_edge_count() {
        for p in [0.0, 0.1, 0.5, 1.0] {
            let g = watts_strogatz(50, 4, p, GeneratorSeed(9)).unwrap();
            assert_eq!(g.edge_count(), 100);
            g.check_invariants().unwrap();
        }
        let lattice = watts_strogatz(50, 4, 0.0, GeneratorSeed(9)).unwrap();
        assert!(lattice.degrees().iter().all(|&d| d == 4));
        assert!(watts_strogatz(50, 3, 0.1, GeneratorSeed(0)).is_err());
        assert!(watts_strogatz(4, 4, 0.1, GeneratorSeed(0)).is_err());
    }

    #[test]
    fn dumbbell_structure() {
        let d = dumbbell(25, ClusterTopology::Complete, GeneratorSeed(0)).unwrap();
        assert_eq!(d.graph.node_count(), 50);
        assert_eq!(d.graph.edge_count(), 601);
        assert!(dumbbell(2, ClusterTopology::Ring, GeneratorSeed(0)).is_err());
        assert!(dumbbell(1, ClusterTopology::Complete, GeneratorSeed(0)).is_err());
    }

    #[test]
    fn dumbbell_bridge_is_the_only_cut_edge() {
        for seed in 0..5 {
            let d = dumbbell(25, ClusterTopology::default(), GeneratorSeed(seed)).unwrap();
            let crossing: Vec<_> = d.graph.edges().filter(|&e| d.crosses_cut(e)).collect();
            assert_eq!(crossing, vec![d.bridge]);
            assert!(d.graph.is_connected());
            let without =
                Graph::from_edges(50, d.graph.edges().filter(|&e| e != d.bridge)).unwrap();
            assert_eq!(without.component_count(), 2);
        }
    }

    #[test]
    fn generators_are_deterministic() {
        let s = GeneratorSeed(77);
        assert_eq!(erdos_renyi(40, 0.2, s), erdos_renyi(40, 0.2, s));
        assert_eq!(barabasi_albert(40, 2, s), barabasi_albert(40, 2, s));
        assert_eq!(watts_strogatz(40, 4, 0.3, s), watts_strogatz(40, 4, 0.3, s));
        assert_ne!(erdos_renyi(40, 0.2, s), erdos_renyi(40, 0.2, s.offset(1)));
    }
}
