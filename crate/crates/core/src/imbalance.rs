//! The imbalance metric: sigmoid QoS weighting of hop counts, Shannon entropy
//! of the normalized weights, and `I = 1 - H / log2(n (n - 1))`.
//!
//! Everything is evaluated on the hop histogram, never per pair. Pairs with the
//! same hop share one weight, so
//!
//! ```text
//! W = sum_h N_h w(h)
//! H = log2 W - (1 / W) sum_h N_h w(h) log2 w(h)
//! ```
//!
//! Weights are handled in the log domain and rescaled by the largest weight
//! before summing, so steep profiles (large `a`) never underflow a reachable
//! pair to zero weight.
//!
//! The entropy ceiling always counts *all* `n (n - 1)` ordered pairs, including
//! unreachable ones whose weight is zero. A disconnected graph therefore scores
//! higher imbalance than its components would on their own.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rayon::prelude::*;

use crate::classical::{algebraic_connectivity, mohar_diameter_bound};
use crate::error::{invalid, Error, Result};
use crate::graph::Graph;
use crate::paths::{all_pairs_histogram, HopHistogram};
use crate::scalar::{softplus, Real};

/// Sigmoid lens `(a, h0)`: steepness and ideal hop threshold, both positive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QoSProfile<T> {
    a: T,
    h0: T,
}

impl<T: Real> QoSProfile<T> {
    pub fn new(a: T, h0: T) -> Result<Self> {
        if !(a.is_finite() && a > T::zero()) {
            return invalid(format!("steepness a must be finite and > 0, got {a}"));
        }
        if !(h0.is_finite() && h0 > T::zero()) {
            return invalid(format!("threshold h0 must be finite and > 0, got {h0}"));
        }
        Ok(QoSProfile { a, h0 })
    }

    pub fn a(&self) -> T {
        self.a
    }

    pub fn h0(&self) -> T {
        self.h0
    }

    fn exponent(&self, hop: u32) -> T {
        self.a * (T::from_u32(hop).expect("hop representable") - self.h0)
    }
}

/// Stable logistic `1 / (1 + e^x)`.
fn logistic_complement<T: Real>(x: T) -> T {
    let one = T::one();
    if x >= T::zero() {
        let e = (-x).exp();
        e / (one + e)
    } else {
        one / (one + x.exp())
    }
}

/// QoS weight of a pair at `hop`; `None` (unreachable) weighs exactly zero.
pub fn weight<T: Real>(hop: Option<u32>, profile: &QoSProfile<T>) -> T {
    match hop {
        Some(h) => logistic_complement(profile.exponent(h)),
        None => T::zero(),
    }
}

/// Partial derivatives with respect to `(a, h0)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Gradient<T> {
    pub d_a: T,
    pub d_h0: T,
}

/// `dw/da = -(d - h0) w (1 - w)` and `dw/dh0 = a w (1 - w)`.
pub fn weight_gradient<T: Real>(hop: u32, profile: &QoSProfile<T>) -> Gradient<T> {
    let x = profile.exponent(hop);
    let w = logistic_complement(x);
    let w_bar = logistic_complement(-x);
    let spread = w * w_bar;
    Gradient {
        d_a: -(T::from_u32(hop).expect("hop representable") - profile.h0) * spread,
        d_h0: profile.a * spread,
    }
}

/// Result of evaluating one graph under one profile.
#[derive(Debug, Clone, PartialEq)]
pub struct ImbalanceReport<T> {
    pub n: usize,
    pub m: u64,
    pub profile: QoSProfile<T>,
    /// Total weight `W`; may underflow to zero for extreme profiles even when
    /// the entropy below is computed exactly.
    pub total_weight: T,
    /// Shannon entropy in bits.
    pub entropy: T,
    /// `log2(n (n - 1))`.
    pub max_entropy: T,
    pub normalized_entropy: T,
    pub imbalance: T,
    pub per_hop_weight: BTreeMap<u32, T>,
}

impl<T: Real> ImbalanceReport<T> {
    pub const CSV_HEADER: &'static str = "n,m,a,h0,W,H,Q,I";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{}",
            self.n,
            self.m,
            self.profile.a,
            self.profile.h0,
            self.total_weight,
            self.entropy,
            self.normalized_entropy,
            self.imbalance
        )
    }

    /// Flat JSON object with the CSV fields plus the per-hop weights.
    pub fn to_json_text(&self) -> String {
        let mut weights = String::new();
        for (i, (h, w)) in self.per_hop_weight.iter().enumerate() {
            if i > 0 {
                weights.push_str(", ");
            }
            let _ = write!(weights, "\"{h}\": {w}");
        }
        format!(
            "{{\"n\": {}, \"m\": {}, \"a\": {}, \"h0\": {}, \"W\": {}, \"H\": {}, \"Hmax\": {}, \"Q\": {}, \"I\": {}, \"per_hop_weight\": {{{}}}}}",
            self.n,
            self.m,
            self.profile.a,
            self.profile.h0,
            self.total_weight,
            self.entropy,
            self.max_entropy,
            self.normalized_entropy,
            self.imbalance,
            weights
        )
    }
}

/// Log-domain view of the weights of one histogram under one profile.
struct WeightTerms<T> {
    /// `(h, N_h, ln w_h - ln w_max)` per finite hop.
    terms: Vec<(u32, T, T)>,
    /// `ln w_max`.
    log_max: T,
    /// `sum N_h w_h / w_max`.
    scaled_total: T,
}

impl<T: Real> WeightTerms<T> {
    fn new(hist: &HopHistogram, profile: &QoSProfile<T>) -> Option<Self> {
        if hist.counts().is_empty() {
            return None;
        }
        let logs: Vec<(u32, T, T)> = hist
            .counts()
            .iter()
            .map(|(&h, &c)| (h, T::from_count(c), -softplus(profile.exponent(h))))
            .collect();
        let log_max = logs
            .iter()
            .map(|&(_, _, lw)| lw)
            .fold(T::neg_infinity(), T::max);
        let terms: Vec<(u32, T, T)> = logs
            .into_iter()
            .map(|(h, c, lw)| (h, c, lw - log_max))
            .collect();
        let scaled_total = terms.iter().map(|&(_, c, rel)| c * rel.exp()).sum();
        Some(WeightTerms {
            terms,
            log_max,
            scaled_total,
        })
    }

    /// `log2 p_h` for each term.
    fn log2_probabilities(&self) -> impl Iterator<Item = T> + '_ {
        let ln2 = T::LN_2();
        let log2_total = self.scaled_total.log2();
        self.terms
            .iter()
            .map(move |&(_, _, rel)| rel / ln2 - log2_total)
    }

    fn entropy(&self) -> T {
        let ln2 = T::LN_2();
        let weighted: T = self
            .terms
            .iter()
            .map(|&(_, c, rel)| c * rel.exp() * (rel / ln2))
            .sum();
        (self.scaled_total.log2() - weighted / self.scaled_total).max(T::zero())
    }
}

fn max_entropy<T: Real>(hist: &HopHistogram) -> T {
    T::from_count(hist.total_pairs()).log2()
}

fn check_size(hist: &HopHistogram) -> Result<()> {
    if hist.node_count() < 2 {
        return invalid(format!(
            "imbalance needs n >= 2, got n = {}",
            hist.node_count()
        ));
    }
    Ok(())
}

/// Evaluates the metric on a precomputed hop histogram.
///
/// With no reachable pair the total weight is zero and the imbalance is
/// defined as 1.
pub fn imbalance_from_histogram<T: Real>(
    hist: &HopHistogram,
    profile: &QoSProfile<T>,
) -> Result<ImbalanceReport<T>> {
    check_size(hist)?;
    let max_entropy = max_entropy::<T>(hist);
    let per_hop_weight = hist
        .counts()
        .keys()
        .map(|&h| (h, weight(Some(h), profile)))
        .collect();
    let (total_weight, entropy, normalized_entropy) = match WeightTerms::new(hist, profile) {
        None => (T::zero(), T::zero(), T::zero()),
        Some(terms) => {
            let entropy = terms.entropy();
            let q = (entropy / max_entropy).min(T::one()).max(T::zero());
            (terms.scaled_total * terms.log_max.exp(), entropy, q)
        }
    };
    Ok(ImbalanceReport {
        n: hist.node_count(),
        m: hist.edge_count(),
        profile: *profile,
        total_weight,
        entropy,
        max_entropy,
        normalized_entropy,
        imbalance: T::one() - normalized_entropy,
        per_hop_weight,
    })
}

/// All-pairs BFS followed by [`imbalance_from_histogram`].
pub fn imbalance<T: Real>(g: &Graph, profile: &QoSProfile<T>) -> Result<ImbalanceReport<T>> {
    if g.node_count() < 2 {
        return invalid(format!(
            "imbalance needs n >= 2, got n = {}",
            g.node_count()
        ));
    }
    imbalance_from_histogram(&all_pairs_histogram(g), profile)
}

/// Analytic `(dI/da, dI/dh0)`.
///
/// With `p_h = w_h / W` and `g_h = (dw_h/dθ) / w_h`,
/// `dH/dθ = -sum_h N_h p_h g_h (log2 p_h + H)` and `dI/dθ = -(dH/dθ) / Hmax`.
pub fn imbalance_gradient<T: Real>(
    hist: &HopHistogram,
    profile: &QoSProfile<T>,
) -> Result<Gradient<T>> {
    check_size(hist)?;
    let terms = WeightTerms::new(hist, profile).ok_or(Error::UndefinedGradient)?;
    let entropy = terms.entropy();
    let mut d_a = T::zero();
    let mut d_h0 = T::zero();
    for (&(h, count, rel), log2_p) in terms.terms.iter().zip(terms.log2_probabilities()) {
        let p = rel.exp() / terms.scaled_total;
        // 1 - w_h, the factor left after dividing dw/dθ by w.
        let w_bar = logistic_complement(-profile.exponent(h));
        let g_a = -(T::from_u32(h).expect("hop representable") - profile.h0) * w_bar;
        let g_h0 = profile.a * w_bar;
        let common = count * p * (log2_p + entropy);
        d_a = d_a - common * g_a;
        d_h0 = d_h0 - common * g_h0;
    }
    let scale = -T::one() / max_entropy::<T>(hist);
    Ok(Gradient {
        d_a: scale * d_a,
        d_h0: scale * d_h0,
    })
}

/// Limit of the imbalance as `a -> inf` when the weight concentrates uniformly
/// on `k` of the `n (n - 1)` ordered pairs: `1 - log2 k / log2(n (n - 1))`.
pub fn concentrated_limit<T: Real>(k: u64, n: usize) -> Result<T> {
    let pairs = (n as u64).saturating_mul((n as u64).saturating_sub(1));
    if k < 2 || k > pairs {
        return invalid(format!("need 2 <= k <= n(n-1) = {pairs}, got k = {k}"));
    }
    Ok(T::one() - T::from_count(k).log2() / T::from_count(pairs).log2())
}

/// Least upper bound of the imbalance over all graphs on `n` nodes:
/// `1 - 1 / log2(n (n - 1))`.
pub fn sup_imbalance<T: Real>(n: usize) -> Result<T> {
    if n < 2 {
        return invalid(format!("supremum needs n >= 2, got n = {n}"));
    }
    concentrated_limit(2, n)
}

/// Integer threshold `h0` strictly above a spectral upper bound on the
/// diameter, so that `I -> 0` as `a -> inf`.
///
/// Returns `max(ceil(2 ln(n - 1) / λ2), D) + 1`, where `D` is Mohar's bound
/// from [`mohar_diameter_bound`]. The first term alone is not a valid diameter
/// bound (it is below 1 for every complete graph), so it only acts as a floor.
pub fn mohar_sufficient_h0<T: Real>(g: &Graph) -> Result<T> {
    let n = g.node_count();
    if n < 2 {
        return invalid(format!("spectral threshold needs n >= 2, got n = {n}"));
    }
    if !g.is_connected() {
        return Err(Error::NotConnected);
    }
    let lambda2 = algebraic_connectivity(g)?;
    let simplified = (2.0 * ((n - 1) as f64).ln() / lambda2).ceil();
    let rigorous = f64::from(mohar_diameter_bound(g)?);
    Ok(T::lit(simplified.max(rigorous) + 1.0))
}

/// `I(h0, a)` over a grid, from one shared histogram. `values[i][j]` is the
/// imbalance at `h0_grid[i]`, `a_grid[j]`.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseDiagram<T> {
    pub a_grid: Vec<T>,
    pub h0_grid: Vec<T>,
    pub values: Vec<Vec<T>>,
}

impl<T: Real> PhaseDiagram<T> {
    /// CSV with header `h0,a,I`, rows ordered by `h0` then `a`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("h0,a,I\n");
        for (h0, row) in self.h0_grid.iter().zip(&self.values) {
            for (a, value) in self.a_grid.iter().zip(row) {
                let _ = writeln!(out, "{h0},{a},{value}");
            }
        }
        out
    }
}

pub fn phase_diagram<T: Real>(g: &Graph, a_grid: &[T], h0_grid: &[T]) -> Result<PhaseDiagram<T>> {
    if a_grid.is_empty() || h0_grid.is_empty() {
        return invalid("phase diagram grids must be nonempty");
    }
    if g.node_count() < 2 {
        return invalid(format!(
            "imbalance needs n >= 2, got n = {}",
            g.node_count()
        ));
    }
    // Validate every grid point up front so no work starts on bad input.
    for &h0 in h0_grid {
        for &a in a_grid {
            QoSProfile::new(a, h0)?;
        }
    }
    let hist = all_pairs_histogram(g);
    let values = h0_grid
        .par_iter()
        .map(|&h0| {
            a_grid
                .iter()
                .map(|&a| {
                    let profile = QoSProfile::new(a, h0)?;
                    Ok(imbalance_from_histogram(&hist, &profile)?.imbalance)
                })
                .collect::<Result<Vec<T>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PhaseDiagram {
        a_grid: a_grid.to_vec(),
        h0_grid: h0_grid.to_vec(),
        values,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete, erdos_renyi, path, ring, star, GeneratorSeed};

    fn profile(a: f64, h0: f64) -> QoSProfile<f64> {
        QoSProfile::new(a, h0).unwrap()
    }

    #[test]
    fn profile_validation() {
        assert!(QoSProfile::new(0.0, 3.0).is_err());
        assert!(QoSProfile::new(-1.0, 3.0).is_err());
        assert!(QoSProfile::new(1.0, 0.0).is_err());
        assert!(QoSProfile::new(f64::NAN, 3.0).is_err());
        assert!(QoSProfile::new(1.0, f64::INFINITY).is_err());
    }

    #[test]
    fn weight_values() {
        let p = profile(2.0, 3.0);
        assert!((weight(Some(1), &p) - 0.982_013_790_037_908_4).abs() < 1e-15);
        assert!((weight(Some(3), &p) - 0.5).abs() < 1e-15);
        assert_eq!(weight(None, &p), 0.0);
        // Steep profiles saturate instead of overflowing.
        let steep = profile(100.0, 1.5);
        assert_eq!(weight(Some(1), &steep), 1.0);
        assert!(weight(Some(30), &steep) >= 0.0);
    }

    #[test]
    fn complete_graph_is_zero() {
        let r = imbalance(&complete(10).unwrap(), &profile(1.0, 4.0)).unwrap();
        assert!(r.imbalance.abs() < 1e-12);
        assert!((r.normalized_entropy - 1.0).abs() < 1e-12);
        assert_eq!(r.m, 45);
    }

    #[test]
    fn ring8_report() {
        let r = imbalance(&ring(8).unwrap(), &profile(2.0, 3.0)).unwrap();
        assert!((r.total_weight - 38.758_597_264_429_594).abs() < 1e-12);
        assert!((r.entropy - 5.635_545_827_718_933).abs() < 1e-12);
        assert!((r.max_entropy - 56f64.log2()).abs() < 1e-15);
        assert!((r.imbalance - 0.029_584_741_529_418_554).abs() < 1e-12);
        assert_eq!(r.per_hop_weight.len(), 4);
    }

    #[test]
    fn single_edge_on_three_nodes() {
        let g = Graph::from_edges(3, [(0, 1)]).unwrap();
        let r = imbalance(&g, &profile(1.0, 4.0)).unwrap();
        assert!((r.imbalance - (1.0 - 1.0 / 6f64.log2())).abs() < 1e-12);
        assert!((r.imbalance - 0.613_147_192_765_458_4).abs() < 1e-12);
    }

    #[test]
    fn empty_graph_is_one() {
        let r = imbalance(
            &erdos_renyi(50, 0.0, GeneratorSeed(1)).unwrap(),
            &profile(1.0, 4.0),
        )
        .unwrap();
        assert_eq!(r.imbalance, 1.0);
        assert_eq!(r.total_weight, 0.0);
        assert!(imbalance(&Graph::empty(1), &profile(1.0, 4.0)).is_err());
    }

    #[test]
    fn disconnected_ceiling_counts_all_pairs() {
        let g = complete(3).unwrap().disjoint_union(&complete(3).unwrap());
        let r = imbalance(&g, &profile(1.0, 4.0)).unwrap();
        // 12 equal reachable weights out of 30 ordered pairs.
        assert!((r.imbalance - (1.0 - 12f64.log2() / 30f64.log2())).abs() < 1e-12);
    }

    #[test]
    fn steep_star_meets_the_concentrated_limit() {
        let r = imbalance(&star(50).unwrap(), &profile(100.0, 1.5)).unwrap();
        let limit = concentrated_limit::<f64>(98, 50).unwrap();
        assert!((limit - 0.412_473_149_404_288).abs() < 1e-12);
        assert!((r.imbalance - limit).abs() < 1e-6);
    }

    #[test]
    fn extreme_profile_stays_finite() {
        // Every weight underflows in linear space, but the entropy does not.
        let r = imbalance(&path(10).unwrap(), &profile(1000.0, 0.5)).unwrap();
        assert!(r.imbalance.is_finite());
        assert!(r.imbalance > 0.0 && r.imbalance < 1.0);
        assert!((r.imbalance - concentrated_limit::<f64>(18, 10).unwrap()).abs() < 1e-9);
    }

    #[test]
    fn limits_and_supremum() {
        assert!((sup_imbalance::<f64>(50).unwrap() - 0.911_178_741_858_434_4).abs() < 1e-12);
        assert!(sup_imbalance::<f64>(1).is_err());
        assert!(concentrated_limit::<f64>(1, 10).is_err());
        assert!(concentrated_limit::<f64>(91, 10).is_err());
        assert!(concentrated_limit::<f64>(90, 10).unwrap().abs() < 1e-15);
    }

    #[test]
    fn gradient_matches_finite_differences() {
        let hist = all_pairs_histogram(&ring(8).unwrap());
        let (a, h0) = (2.0, 3.0);
        let g = imbalance_gradient(&hist, &profile(a, h0)).unwrap();
        let eval = |a: f64, h0: f64| {
            imbalance_from_histogram(&hist, &profile(a, h0))
                .unwrap()
                .imbalance
        };
        let step = 1e-5;
        let fd_a = (eval(a + step, h0) - eval(a - step, h0)) / (2.0 * step);
        let fd_h0 = (eval(a, h0 + step) - eval(a, h0 - step)) / (2.0 * step);
        assert!((g.d_a - fd_a).abs() < 1e-8);
        assert!((g.d_h0 - fd_h0).abs() < 1e-8);
    }

    #[test]
    fn gradient_undefined_without_pairs() {
        let hist = all_pairs_histogram(&Graph::empty(4));
        assert!(matches!(
            imbalance_gradient(&hist, &profile(1.0, 4.0)),
            Err(Error::UndefinedGradient)
        ));
        let k = imbalance_gradient(
            &all_pairs_histogram(&complete(6).unwrap()),
            &profile(1.0, 4.0),
        )
        .unwrap();
        assert!(k.d_a.abs() < 1e-12 && k.d_h0.abs() < 1e-12);
    }

    #[test]
    fn mohar_threshold() {
        assert_eq!(
            mohar_sufficient_h0::<f64>(&complete(10).unwrap()).unwrap(),
            5.0
        );
        let disconnected = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert!(matches!(
            mohar_sufficient_h0::<f64>(&disconnected),
            Err(Error::NotConnected)
        ));
        let p = path(12).unwrap();
        assert!(mohar_sufficient_h0::<f64>(&p).unwrap() > 11.0);
    }

    #[test]
    fn phase_diagram_shape_and_validation() {
        let g = star(20).unwrap();
        let d = phase_diagram(&g, &[0.5, 1.0, 2.0], &[1.0, 3.0]).unwrap();
        assert_eq!(d.values.len(), 2);
        assert_eq!(d.values[0].len(), 3);
        let direct = imbalance(&g, &profile(2.0, 3.0)).unwrap().imbalance;
        assert_eq!(d.values[1][2], direct);
        assert_eq!(d.to_csv().lines().count(), 7);
        assert!(phase_diagram(&g, &[0.5, -1.0], &[1.0]).is_err());
        assert!(phase_diagram::<f64>(&g, &[], &[1.0]).is_err());
    }

    #[test]
    fn single_precision_tracks_double() {
        let g = ring(20).unwrap();
        let i32_ = imbalance(&g, &QoSProfile::new(1.0f32, 4.0).unwrap())
            .unwrap()
            .imbalance;
        let i64_ = imbalance(&g, &profile(1.0, 4.0)).unwrap().imbalance;
        assert!((f64::from(i32_) - i64_).abs() < 1e-5);
    }

    #[test]
    fn report_formats() {
        let r = imbalance(&path(3).unwrap(), &profile(1.0, 4.0)).unwrap();
        assert_eq!(
            ImbalanceReport::<f64>::CSV_HEADER.split(',').count(),
            r.csv_row().split(',').count()
        );
        let json = r.to_json_text();
        assert!(json.contains("\"I\""));
    }
}
