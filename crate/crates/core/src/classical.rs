//! Classical comparison metrics: hop-count moments, Jain's unfairness on the
//! QoS weights, degree Gini and the algebraic connectivity.

use nalgebra::DMatrix;

use crate::error::{invalid, Error, Result};
use crate::graph::Graph;
use crate::imbalance::{weight, QoSProfile};
use crate::paths::HopHistogram;
use crate::scalar::{softplus, Real};

/// Largest graph handed to the dense eigensolver.
pub const LAMBDA2_MAX_NODES: usize = 2000;

fn no_reachable<T>() -> Result<T> {
    Err(Error::UndefinedMetric("no reachable pair".into()))
}

/// Mean hop count over reachable ordered pairs.
pub fn average_path_length<T: Real>(hist: &HopHistogram) -> Result<T> {
    let reachable = hist.reachable_pairs();
    if reachable == 0 {
        return no_reachable();
    }
    let sum: T = hist
        .counts()
        .iter()
        .map(|(&h, &c)| T::from_count(u64::from(h)) * T::from_count(c))
        .sum();
    Ok(sum / T::from_count(reachable))
}

/// Population variance of the hop count over reachable ordered pairs.
pub fn path_variance<T: Real>(hist: &HopHistogram) -> Result<T> {
    let mean: T = average_path_length(hist)?;
    let total = T::from_count(hist.reachable_pairs());
    let ss: T = hist
        .counts()
        .iter()
        .map(|(&h, &c)| {
            let dev = T::from_count(u64::from(h)) - mean;
            T::from_count(c) * dev * dev
        })
        .sum();
    Ok(ss / total)
}

/// `1 - (sum w)^2 / (K sum w^2)` over all `K = n (n - 1)` ordered pairs,
/// unreachable pairs weighing zero. Returns 1 when every weight is zero.
pub fn jain_unfairness<T: Real>(hist: &HopHistogram, profile: &QoSProfile<T>) -> Result<T> {
    if hist.node_count() < 2 {
        return invalid(format!(
            "Jain index needs n >= 2, got n = {}",
            hist.node_count()
        ));
    }
    if hist.counts().is_empty() {
        return Ok(T::one());
    }
    // The index is scale invariant; rescale by the largest weight in log space.
    let logs: Vec<(T, T)> = hist
        .counts()
        .iter()
        .map(|(&h, &c)| {
            let x = profile.a() * (T::from_u32(h).expect("hop representable") - profile.h0());
            (T::from_count(c), -softplus(x))
        })
        .collect();
    let top = logs
        .iter()
        .map(|&(_, lw)| lw)
        .fold(T::neg_infinity(), T::max);
    let (sum, sum_sq) = logs
        .iter()
        .fold((T::zero(), T::zero()), |(s, s2), &(c, lw)| {
            let w = (lw - top).exp();
            (s + c * w, s2 + c * w * w)
        });
    let k = T::from_count(hist.total_pairs());
    let jfi = sum * sum / (k * sum_sq);
    Ok((T::one() - jfi).max(T::zero()))
}

/// Gini coefficient of the degree sequence,
/// `sum_ij |k_i - k_j| / (2 n sum_i k_i)`.
pub fn degree_gini<T: Real>(g: &Graph) -> Result<T> {
    let mut degrees = g.degrees();
    let total: usize = degrees.iter().sum();
    if total == 0 {
        return Err(Error::UndefinedMetric("graph has no edges".into()));
    }
    degrees.sort_unstable();
    let n = degrees.len();
    // For ascending k, sum_ij |k_i - k_j| = 2 sum_i (2i - n + 1) k_i.
    let weighted: i128 = degrees
        .iter()
        .enumerate()
        .map(|(i, &k)| (2 * i as i128 - n as i128 + 1) * k as i128)
        .sum();
    let num = T::from_i128(2 * weighted).expect("representable");
    let den = T::from_count(2 * n as u64 * total as u64);
    Ok(num / den)
}

/// Second-smallest eigenvalue of the combinatorial Laplacian `L = D - A`.
///
/// Exactly zero for disconnected graphs.
pub fn algebraic_connectivity(g: &Graph) -> Result<f64> {
    let n = g.node_count();
    if n < 2 {
        return invalid(format!("algebraic connectivity needs n >= 2, got n = {n}"));
    }
    if n > LAMBDA2_MAX_NODES {
        return Err(Error::Capacity {
            n,
            cap: LAMBDA2_MAX_NODES,
        });
    }
    if !g.is_connected() {
        return Ok(0.0);
    }
    let mut laplacian = DMatrix::<f64>::zeros(n, n);
    for u in 0..n {
        laplacian[(u, u)] = g.degree(u) as f64;
        for &v in g.neighbors(u) {
            laplacian[(u, v)] = -1.0;
        }
    }
    let mut eigenvalues: Vec<f64> = laplacian.symmetric_eigenvalues().iter().copied().collect();
    eigenvalues.sort_by(f64::total_cmp);
    Ok(eigenvalues[1].max(0.0))
}

/// Mohar's spectral diameter bound for a connected graph,
/// `diam <= 2 ceil((Δ + λ2) / (4 λ2) ln(n - 1))`, with `Δ` the maximum degree.
///
/// For `n = 2` the bound degenerates to 0, so the exact diameter 1 is returned.
pub fn mohar_diameter_bound(g: &Graph) -> Result<u32> {
    let n = g.node_count();
    if n < 2 {
        return invalid(format!("diameter bound needs n >= 2, got n = {n}"));
    }
    if !g.is_connected() {
        return Err(Error::NotConnected);
    }
    if n == 2 {
        return Ok(1);
    }
    let lambda2 = algebraic_connectivity(g)?;
    let max_degree = g.degrees().into_iter().max().unwrap_or(0) as f64;
    let inner = (max_degree + lambda2) / (4.0 * lambda2) * ((n - 1) as f64).ln();
    Ok(2 * inner.ceil() as u32)
}

/// All comparison metrics for one graph and profile.
#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonReport<T> {
    /// `None` when no pair is reachable.
    pub avg_path_length: Option<T>,
    pub path_variance: Option<T>,
    pub jain_unfairness: T,
    /// `None` for an edgeless graph.
    pub degree_gini: Option<T>,
    /// `None` when above [`LAMBDA2_MAX_NODES`].
    pub lambda2: Option<f64>,
    pub reachable_fraction: T,
}

impl<T: Real> ComparisonReport<T> {
    pub const CSV_HEADER: &'static str =
        "avg_path_length,path_variance,jain_unfairness,degree_gini,lambda2,reachable_fraction";

    /// One CSV row; uncomputed fields are left empty.
    pub fn csv_row(&self) -> String {
        fn cell<V: std::fmt::Display>(v: Option<V>) -> String {
            v.map(|v| v.to_string()).unwrap_or_default()
        }
        format!(
            "{},{},{},{},{},{}",
            cell(self.avg_path_length),
            cell(self.path_variance),
            self.jain_unfairness,
            cell(self.degree_gini),
            cell(self.lambda2),
            self.reachable_fraction
        )
    }
}

pub fn comparison_report<T: Real>(
    g: &Graph,
    hist: &HopHistogram,
    profile: &QoSProfile<T>,
) -> Result<ComparisonReport<T>> {
    let lambda2 = match algebraic_connectivity(g) {
        Ok(l) => Some(l),
        Err(Error::Capacity { .. }) | Err(Error::InvalidParameter(_)) => None,
        Err(e) => return Err(e),
    };
    Ok(ComparisonReport {
        avg_path_length: average_path_length(hist).ok(),
        path_variance: path_variance(hist).ok(),
        jain_unfairness: jain_unfairness(hist, profile)?,
        degree_gini: degree_gini(g).ok(),
        lambda2,
        reachable_fraction: T::one() - hist.unreachable_fraction::<T>(),
    })
}

/// Multiset of the `n (n - 1)` pair weights, expanded from the histogram.
pub fn pair_weights<T: Real>(hist: &HopHistogram, profile: &QoSProfile<T>) -> Vec<T> {
    let mut out = Vec::with_capacity(hist.total_pairs() as usize);
    for (&h, &c) in hist.counts() {
        out.extend(std::iter::repeat_n(weight(Some(h), profile), c as usize));
    }
    out.extend(std::iter::repeat_n(T::zero(), hist.unreachable() as usize));
    out
}
