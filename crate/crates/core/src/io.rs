//! Edge-list text format.
//!
//! One edge per line as two whitespace-separated node tokens. Lines whose first
//! non-blank character is `#` are comments; blank lines are skipped. A line in
//! pipe-delimited AS-relationship form (`a|b|rel`) contributes its first two
//! fields. Tokens are arbitrary strings mapped to dense ids in order of first
//! appearance.
//!
//! A `# nodes: N` comment declares that the labels `0..N` exist, so graphs with
//! isolated nodes survive a write/read round trip.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};

/// A parsed edge list together with its label table and cleanup counts.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeList {
    pub graph: Graph,
    /// Original token for every dense id.
    pub labels: Vec<String>,
    pub duplicates_dropped: usize,
    pub self_loops_dropped: usize,
}

impl EdgeList {
    pub fn dropped(&self) -> usize {
        self.duplicates_dropped + self.self_loops_dropped
    }
}

const NODES_DIRECTIVE: &str = "nodes:";

pub fn parse_edge_list(text: &str) -> Result<EdgeList> {
    let mut ids: HashMap<String, NodeId> = HashMap::new();
    let mut labels: Vec<String> = Vec::new();
    let mut edges: Vec<(NodeId, NodeId)> = Vec::new();
    let mut self_loops_dropped = 0;

    let mut intern = |token: &str, labels: &mut Vec<String>| -> NodeId {
        *ids.entry(token.to_owned()).or_insert_with(|| {
            labels.push(token.to_owned());
            labels.len() - 1
        })
    };

    for (index, raw) in text.lines().enumerate() {
        let line_no = index + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(comment) = line.strip_prefix('#') {
            if let Some(count) = comment.trim().strip_prefix(NODES_DIRECTIVE) {
                let count = count.trim().parse::<usize>().map_err(|_| Error::Parse {
                    line: line_no,
                    message: format!("bad node count in `{line}`"),
                })?;
                for label in 0..count {
                    intern(&label.to_string(), &mut labels);
                }
            }
            continue;
        }
        let (a, b) = if line.contains('|') {
            let mut fields = line.split('|').map(str::trim);
            (fields.next(), fields.next())
        } else {
            let mut fields = line.split_whitespace();
            let pair = (fields.next(), fields.next());
            if fields.next().is_some() {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("expected two node tokens, got `{line}`"),
                });
            }
            pair
        };
        let (a, b) = match (a, b) {
            (Some(a), Some(b)) if !a.is_empty() && !b.is_empty() => (a, b),
            _ => {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("expected two node tokens, got `{line}`"),
                })
            }
        };
        let u = intern(a, &mut labels);
        let v = intern(b, &mut labels);
        if u == v {
            self_loops_dropped += 1;
        } else {
            edges.push((u.min(v), u.max(v)));
        }
    }

    let before = edges.len();
    edges.sort_unstable();
    edges.dedup();
    let duplicates_dropped = before - edges.len();
    let graph = Graph::from_edges(labels.len(), edges)?;
    Ok(EdgeList {
        graph,
        labels,
        duplicates_dropped,
        self_loops_dropped,
    })
}

/// Parses an edge list and keeps only the graph.
pub fn from_edge_list(text: &str) -> Result<Graph> {
    parse_edge_list(text).map(|list| list.graph)
}

/// Serializes `g` with numeric labels, preceded by a `# nodes: N` declaration.
pub fn write_edge_list(g: &Graph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# nodes: {}", g.node_count());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}
