//! Greedy edge addition minimizing the imbalance under one QoS profile.
//!
//! Every round evaluates all absent edges by full recomputation, then commits
//! the minimizer. Ties go to the lexicographically smallest edge, after all
//! candidates are gathered, so the choice does not depend on evaluation order.

use std::cmp::Ordering;
use std::fmt::Write as _;

use rayon::prelude::*;

use crate::error::{invalid, Error, Result};
use crate::graph::{Graph, NodeId};
use crate::imbalance::{imbalance, QoSProfile};
use crate::scalar::Real;

pub type Edge = (NodeId, NodeId);

/// Imbalance of `g + e` for every absent edge `e`, ascending by imbalance and
/// then by edge.
pub fn evaluate_candidates<T: Real>(g: &Graph, profile: &QoSProfile<T>) -> Result<Vec<(Edge, T)>> {
    let candidates = g.non_edges();
    if candidates.is_empty() {
        return Err(Error::NoCandidates);
    }
    let mut ranked = candidates
        .into_par_iter()
        .map(|(u, v)| {
            let report = imbalance(&g.add_edge(u, v)?, profile)?;
            Ok(((u, v), report.imbalance))
        })
        .collect::<Result<Vec<_>>>()?;
    ranked.sort_by(|(ea, ia), (eb, ib)| {
        ia.partial_cmp(ib)
            .unwrap_or(Ordering::Equal)
            .then_with(|| ea.cmp(eb))
    });
    Ok(ranked)
}

/// One committed round of the greedy search.
#[derive(Debug, Clone, PartialEq)]
pub struct RoundTrace<T> {
    pub candidates: usize,
    pub edge: Edge,
    pub imbalance: T,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OptimizationResult<T> {
    pub profile: QoSProfile<T>,
    pub chosen_edges: Vec<Edge>,
    pub i_before: T,
    /// Imbalance after the last committed edge; equals `i_before` if none.
    pub i_after: T,
    pub trace: Vec<RoundTrace<T>>,
    /// Candidates ran out before the budget was spent.
    pub exhausted: bool,
    pub graph: Graph,
}

impl<T: Real> OptimizationResult<T> {
    /// CSV with header `round,candidate_u,candidate_v,I`.
    pub fn trace_csv(&self) -> String {
        let mut out = String::from("round,candidate_u,candidate_v,I\n");
        for (round, step) in self.trace.iter().enumerate() {
            let _ = writeln!(
                out,
                "{},{},{},{}",
                round + 1,
                step.edge.0,
                step.edge.1,
                step.imbalance
            );
        }
        out
    }
}

pub fn greedy_edge_addition<T: Real>(
    g: &Graph,
    profile: &QoSProfile<T>,
    budget: usize,
) -> Result<OptimizationResult<T>> {
    if budget == 0 {
        return invalid("budget must be at least 1");
    }
    let i_before = imbalance(g, profile)?.imbalance;
    let mut current = g.clone();
    let mut trace = Vec::new();
    let mut exhausted = false;
    for _ in 0..budget {
        let ranked = match evaluate_candidates(&current, profile) {
            Ok(r) => r,
            Err(Error::NoCandidates) => {
                exhausted = true;
                break;
            }
            Err(e) => return Err(e),
        };
        let (edge, value) = ranked[0];
        current = current.add_edge(edge.0, edge.1)?;
        trace.push(RoundTrace {
            candidates: ranked.len(),
            edge,
            imbalance: value,
        });
    }
    Ok(OptimizationResult {
        profile: *profile,
        chosen_edges: trace.iter().map(|t| t.edge).collect(),
        i_before,
        i_after: trace.last().map_or(i_before, |t| t.imbalance),
        trace,
        exhausted,
        graph: current,
    })
}
