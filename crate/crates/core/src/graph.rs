//! Undirected simple graphs with dense node ids.

use std::collections::VecDeque;

use crate::error::{invalid, Result};

pub type NodeId = usize;

/// Undirected simple graph on nodes `0..n` stored as sorted adjacency lists.
///
/// Values are immutable once built; [`Graph::add_edge`] returns a new graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adjacency: Vec<Vec<NodeId>>,
    edge_count: usize,
}

impl Graph {
    /// `n` isolated nodes.
    pub fn empty(n: usize) -> Self {
        Graph {
            adjacency: vec![Vec::new(); n],
            edge_count: 0,
        }
    }

    /// Builds a graph from an edge list, rejecting self-loops, duplicates and
    /// out-of-range endpoints.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (NodeId, NodeId)>,
    {
        let mut adjacency = vec![Vec::new(); n];
        for (u, v) in edges {
            if u >= n || v >= n {
                return invalid(format!("edge ({u}, {v}) out of range for {n} nodes"));
            }
            if u == v {
                return invalid(format!("self-loop on node {u}"));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        let mut edge_count = 0;
        for (u, list) in adjacency.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return invalid(format!("duplicate edge ({u}, {})", w[0]));
            }
            edge_count += list.len();
        }
        Ok(Graph {
            adjacency,
            edge_count: edge_count / 2,
        })
    }

    /// Wraps adjacency lists that are already symmetric, sorted and loop-free.
    pub(crate) fn from_sorted_adjacency(adjacency: Vec<Vec<NodeId>>) -> Self {
        let edge_count = adjacency.iter().map(Vec::len).sum::<usize>() / 2;
        let g = Graph {
            adjacency,
            edge_count,
        };
        debug_assert!(g.check_invariants().is_ok());
        g
    }

    pub fn node_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn neighbors(&self, u: NodeId) -> &[NodeId] {
        &self.adjacency[u]
    }

    pub fn degree(&self, u: NodeId) -> usize {
        self.adjacency[u].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adjacency.iter().map(Vec::len).collect()
    }

    pub fn has_edge(&self, u: NodeId, v: NodeId) -> bool {
        u < self.node_count()
            && v < self.node_count()
            && self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Unordered edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// Returns a copy with edge `{u, v}` added.
    pub fn add_edge(&self, u: NodeId, v: NodeId) -> Result<Graph> {
        let n = self.node_count();
        if u >= n || v >= n {
            return invalid(format!("edge ({u}, {v}) out of range for {n} nodes"));
        }
        if u == v {
            return invalid(format!("self-loop on node {u}"));
        }
        if self.has_edge(u, v) {
            return invalid(format!("edge ({u}, {v}) already present"));
        }
        let mut adjacency = self.adjacency.clone();
        for (a, b) in [(u, v), (v, u)] {
            let pos = adjacency[a].binary_search(&b).unwrap_err();
            adjacency[a].insert(pos, b);
        }
        Ok(Graph {
            adjacency,
            edge_count: self.edge_count + 1,
        })
    }

    /// All absent unordered pairs `(u, v)`, `u < v`, lexicographically sorted.
    pub fn non_edges(&self) -> Vec<(NodeId, NodeId)> {
        let n = self.node_count();
        let mut out = Vec::new();
        for u in 0..n {
            let mut present = self.adjacency[u]
                .iter()
                .copied()
                .filter(|&v| v > u)
                .peekable();
            for v in (u + 1)..n {
                if present.peek() == Some(&v) {
                    present.next();
                } else {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Component index for every node, numbered in order of lowest member.
    pub fn components(&self) -> Vec<usize> {
        let n = self.node_count();
        let mut label = vec![usize::MAX; n];
        let mut next = 0;
        let mut queue = VecDeque::new();
        for start in 0..n {
            if label[start] != usize::MAX {
                continue;
            }
            label[start] = next;
            queue.push_back(start);
            while let Some(u) = queue.pop_front() {
                for &v in &self.adjacency[u] {
                    if label[v] == usize::MAX {
                        label[v] = next;
                        queue.push_back(v);
                    }
                }
            }
            next += 1;
        }
        label
    }

    pub fn component_count(&self) -> usize {
        self.components().into_iter().max().map_or(0, |c| c + 1)
    }

    /// True for a single component; graphs with fewer than two nodes count as connected.
    pub fn is_connected(&self) -> bool {
        self.component_count() <= 1
    }

    /// Relabels node `u` as `perm[u]`.
    pub fn relabel(&self, perm: &[NodeId]) -> Result<Graph> {
        let n = self.node_count();
        let mut seen = vec![false; n];
        if perm.len() != n
            || perm
                .iter()
                .any(|&p| p >= n || std::mem::replace(&mut seen[p], true))
        {
            return invalid("relabeling is not a permutation of the node set");
        }
        Graph::from_edges(n, self.edges().map(|(u, v)| (perm[u], perm[v])))
    }

    /// Disjoint union; nodes of `other` are shifted by `self.node_count()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let offset = self.node_count();
        let mut adjacency = self.adjacency.clone();
        adjacency.extend(
            other
                .adjacency
                .iter()
                .map(|list| list.iter().map(|&v| v + offset).collect()),
        );
        Graph::from_sorted_adjacency(adjacency)
    }

    pub fn check_invariants(&self) -> Result<()> {
        let n = self.node_count();
        let mut total = 0;
        for (u, list) in self.adjacency.iter().enumerate() {
            if list.windows(2).any(|w| w[0] >= w[1]) {
                return invalid(format!("adjacency of {u} not strictly sorted"));
            }
            for &v in list {
                if v >= n || v == u || self.adjacency[v].binary_search(&u).is_err() {
                    return invalid(format!("bad adjacency entry {u} -> {v}"));
                }
            }
            total += list.len();
        }
        if total != 2 * self.edge_count {
            return invalid("edge count does not match adjacency");
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn from_edges_rejects_bad_input() {
        assert!(Graph::from_edges(3, [(0, 0)]).is_err());
        assert!(Graph::from_edges(3, [(0, 1), (1, 0)]).is_err());
        assert!(Graph::from_edges(3, [(0, 3)]).is_err());
    }

    #[test]
    fn add_edge_keeps_input() {
        let g = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        let h = g.add_edge(0, 2).unwrap();
        assert_eq!(g.edge_count(), 2);
        assert_eq!(h.edge_count(), 3);
        assert!(h.check_invariants().is_ok());
        assert!(h.add_edge(2, 0).is_err());
        assert!(h.add_edge(1, 1).is_err());
    }

    #[test]
    fn non_edges_of_path3() {
        let g = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(g.non_edges(), vec![(0, 2)]);
    }

    #[test]
    fn components_and_union() {
        let g = Graph::from_edges(2, [(0, 1)]).unwrap();
        let u = g.disjoint_union(&g);
        assert_eq!(u.node_count(), 4);
        assert_eq!(u.component_count(), 2);
        assert!(!u.is_connected());
        assert!(Graph::empty(1).is_connected());
    }

    #[test]
    fn relabel_requires_permutation() {
        let g = Graph::from_edges(3, [(0, 1)]).unwrap();
        assert!(g.relabel(&[0, 0, 1]).is_err());
        let h = g.relabel(&[2, 1, 0]).unwrap();
        assert!(h.has_edge(1, 2));
    }
}
