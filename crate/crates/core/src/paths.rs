//! All-pairs shortest hop counts, compressed into a hop histogram.
//!
//! The graph is unweighted, so one BFS per source is exact and costs
//! `O(n (n + m))` in total. The full hop matrix is never needed by the metric;
//! [`hop_matrix`] exists for debugging and oracle tests.

use std::collections::{BTreeMap, VecDeque};
use std::fmt::Write as _;

use rayon::prelude::*;

use crate::error::{invalid, Result};
use crate::graph::{Graph, NodeId};
use crate::scalar::Real;

/// Hop counts from `source`; `None` marks an unreachable node.
pub fn bfs_hops(g: &Graph, source: NodeId) -> Result<Vec<Option<u32>>> {
    if source >= g.node_count() {
        return invalid(format!(
            "source {source} out of range for {} nodes",
            g.node_count()
        ));
    }
    let mut dist = vec![UNSEEN; g.node_count()];
    let mut queue = VecDeque::new();
    bfs_into(g, source, &mut dist, &mut queue);
    Ok(dist
        .into_iter()
        .map(|d| (d != UNSEEN).then_some(d))
        .collect())
}

const UNSEEN: u32 = u32::MAX;

fn bfs_into(g: &Graph, source: NodeId, dist: &mut [u32], queue: &mut VecDeque<NodeId>) {
    dist.fill(UNSEEN);
    queue.clear();
    dist[source] = 0;
    queue.push_back(source);
    while let Some(u) = queue.pop_front() {
        let next = dist[u] + 1;
        for &v in g.neighbors(u) {
            if dist[v] == UNSEEN {
                dist[v] = next;
                queue.push_back(v);
            }
        }
    }
}

/// Full hop matrix; `None` off the reachable set. Debugging aid only.
pub fn hop_matrix(g: &Graph) -> Vec<Vec<Option<u32>>> {
    (0..g.node_count())
        .map(|s| bfs_hops(g, s).expect("source in range"))
        .collect()
}

/// Diameter of a graph as read off its hop histogram.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Diameter {
    /// Fewer than two nodes.
    Undefined,
    Finite(u32),
    /// Some ordered pair is unreachable.
    Infinite,
}

impl Diameter {
    pub fn finite(self) -> Option<u32> {
        match self {
            Diameter::Finite(d) => Some(d),
            _ => None,
        }
    }
}

/// Counts `N_h` of ordered node pairs at each finite hop `h >= 1`, plus the
/// number of unreachable ordered pairs.
///
/// Invariants: `sum N_h + unreachable = n (n - 1)`, every count is even and no
/// stored count is zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HopHistogram {
    n: usize,
    counts: BTreeMap<u32, u64>,
    unreachable: u64,
}

impl HopHistogram {
    /// Builds a histogram from raw counts, dropping zero entries and checking
    /// the pair-count invariants.
    pub fn from_counts(
        n: usize,
        counts: impl IntoIterator<Item = (u32, u64)>,
        unreachable: u64,
    ) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (h, c) in counts {
            if h == 0 {
                return invalid("hop value 0 is not a distinct-pair distance");
            }
            if c > 0 {
                *map.entry(h).or_insert(0) += c;
            }
        }
        let hist = HopHistogram {
            n,
            counts: map,
            unreachable,
        };
        if hist.counts.values().sum::<u64>() + unreachable != hist.total_pairs() {
            return invalid("histogram counts do not sum to n(n-1)");
        }
        if !unreachable.is_multiple_of(2) || hist.counts.values().any(|c| !c.is_multiple_of(2)) {
            return invalid("undirected histogram counts must be even");
        }
        Ok(hist)
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    /// `n (n - 1)`, the number of ordered pairs of distinct nodes.
    pub fn total_pairs(&self) -> u64 {
        let n = self.n as u64;
        n * n.saturating_sub(1)
    }

    pub fn counts(&self) -> &BTreeMap<u32, u64> {
        &self.counts
    }

    pub fn count(&self, h: u32) -> u64 {
        self.counts.get(&h).copied().unwrap_or(0)
    }

    pub fn unreachable(&self) -> u64 {
        self.unreachable
    }

    pub fn reachable_pairs(&self) -> u64 {
        self.total_pairs() - self.unreachable
    }

    /// Undirected edge count; every edge contributes two ordered pairs at `h = 1`.
    pub fn edge_count(&self) -> u64 {
        self.count(1) / 2
    }

    pub fn diameter(&self) -> Diameter {
        if self.n < 2 {
            Diameter::Undefined
        } else if self.unreachable > 0 {
            Diameter::Infinite
        } else {
            Diameter::Finite(*self.counts.keys().next_back().expect("connected, n >= 2"))
        }
    }

    /// `P(h) = N_h / (n (n - 1))` over finite hops.
    pub fn hop_distribution<T: Real>(&self) -> Result<BTreeMap<u32, T>> {
        if self.n < 2 {
            return invalid("hop distribution needs n >= 2");
        }
        let total = T::from_count(self.total_pairs());
        Ok(self
            .counts
            .iter()
            .map(|(&h, &c)| (h, T::from_count(c) / total))
            .collect())
    }

    pub fn unreachable_fraction<T: Real>(&self) -> T {
        if self.n < 2 {
            return T::zero();
        }
        T::from_count(self.unreachable) / T::from_count(self.total_pairs())
    }

    /// CSV with header `h,count` and a trailing `unreachable,<count>` row.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("h,count\n");
        for (h, c) in &self.counts {
            let _ = writeln!(out, "{h},{c}");
        }
        let _ = writeln!(out, "unreachable,{}", self.unreachable);
        out
    }
}

const SOURCES_PER_TASK: usize = 64;

/// Aggregates BFS from every source into a [`HopHistogram`].
///
/// Sources are processed in parallel chunks; partial counts are merged in
/// source order, so the result does not depend on the worker count.
pub fn all_pairs_histogram(g: &Graph) -> HopHistogram {
    let n = g.node_count();
    let sources: Vec<NodeId> = (0..n).collect();
    let partials: Vec<(Vec<u64>, u64)> = sources
        .par_chunks(SOURCES_PER_TASK)
        .map(|chunk| {
            let mut dist = vec![UNSEEN; n];
            let mut queue = VecDeque::with_capacity(n);
            let mut local: Vec<u64> = Vec::new();
            let mut unreachable = 0u64;
            for &s in chunk {
                bfs_into(g, s, &mut dist, &mut queue);
                for (v, &d) in dist.iter().enumerate() {
                    if v == s {
                        continue;
                    }
                    if d == UNSEEN {
                        unreachable += 1;
                    } else {
                        let d = d as usize;
                        if local.len() <= d {
                            local.resize(d + 1, 0);
                        }
                        local[d] += 1;
                    }
                }
            }
            (local, unreachable)
        })
        .collect();

    let mut counts: Vec<u64> = Vec::new();
    let mut unreachable = 0;
    for (local, u) in partials {
        if counts.len() < local.len() {
            counts.resize(local.len(), 0);
        }
        for (acc, c) in counts.iter_mut().zip(local) {
            *acc += c;
        }
        unreachable += u;
    }
    HopHistogram {
        n,
        counts: counts
            .into_iter()
            .enumerate()
            .filter(|&(h, c)| h > 0 && c > 0)
            .map(|(h, c)| (h as u32, c))
            .collect(),
        unreachable,
    }
}
