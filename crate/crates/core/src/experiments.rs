//! Simulation campaigns over the random-graph models: seeded parameter sweeps,
//! the structure-versus-function landscape, the small-world metric comparison
//! and the BA strict-threshold reversal.
//!
//! Run `r` of every grid point uses seed `base_seed + r`, so profiles evaluated
//! at the same grid point see identical graphs. Runs are computed in parallel
//! and aggregated in (grid index, run index) order.

use std::fmt::Write as _;

use rayon::prelude::*;

use crate::classical::{average_path_length, degree_gini, jain_unfairness, path_variance};
use crate::error::{invalid, Result};
use crate::generators::{self, GeneratorSeed};
use crate::graph::Graph;
use crate::imbalance::{imbalance_from_histogram, QoSProfile};
use crate::paths::all_pairs_histogram;
use crate::scalar::Real;

/// Random-graph family swept by [`run_sweep`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Model {
    /// Grid parameter is the edge probability `p`.
    ErdosRenyi,
    /// Grid parameter is `m_attach`, which must be integral.
    BarabasiAlbert,
    /// Grid parameter is the rewiring probability `p`.
    WattsStrogatz { k: usize },
}

impl Model {
    pub fn name(&self) -> &'static str {
        match self {
            Model::ErdosRenyi => "er",
            Model::BarabasiAlbert => "ba",
            Model::WattsStrogatz { .. } => "ws",
        }
    }

    pub fn generate(&self, n: usize, param: f64, seed: GeneratorSeed) -> Result<Graph> {
        match *self {
            Model::ErdosRenyi => generators::erdos_renyi(n, param, seed),
            Model::BarabasiAlbert => {
                if param.fract() != 0.0 || param < 0.0 {
                    return invalid(format!("BA attachment count must be integral, got {param}"));
                }
                generators::barabasi_albert(n, param as usize, seed)
            }
            Model::WattsStrogatz { k } => generators::watts_strogatz(n, k, param, seed),
        }
    }
}

/// `(a, h0)` lenses used when a sweep does not name its own.
pub const DEFAULT_PROFILES: [(f64, f64); 3] = [(1.0, 4.0), (2.0, 3.0), (0.5, 6.0)];

pub fn default_profiles<T: Real>() -> Vec<QoSProfile<T>> {
    DEFAULT_PROFILES
        .iter()
        .map(|&(a, h0)| QoSProfile::new(T::lit(a), T::lit(h0)).expect("valid default profile"))
        .collect()
}

/// `count` evenly spaced values from `start` to `end` inclusive.
pub fn linear_grid(start: f64, end: f64, count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![start],
        _ => (0..count)
            .map(|i| start + (end - start) * i as f64 / (count - 1) as f64)
            .collect(),
    }
}

/// `count` log-spaced values from `lo` to `hi` inclusive; both must be positive.
pub fn log_grid(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    let mut grid: Vec<f64> = linear_grid(lo.ln(), hi.ln(), count)
        .into_iter()
        .map(f64::exp)
        .collect();
    // Pin the endpoints exactly.
    if let Some(first) = grid.first_mut() {
        *first = lo;
    }
    if count > 1 {
        if let Some(last) = grid.last_mut() {
            *last = hi;
        }
    }
    grid
}

/// Mean and sample standard deviation; the deviation is zero for one value.
pub fn mean_std<T: Real>(values: &[T]) -> (T, T) {
    if values.is_empty() {
        return (T::nan(), T::nan());
    }
    let len = T::from_usize(values.len()).expect("length representable");
    let mean = values.iter().copied().sum::<T>() / len;
    if values.len() < 2 {
        return (mean, T::zero());
    }
    let ss: T = values.iter().map(|&v| (v - mean) * (v - mean)).sum();
    (mean, (ss / (len - T::one())).sqrt())
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec<T> {
    pub model: Model,
    pub n: usize,
    pub grid: Vec<f64>,
    pub profiles: Vec<QoSProfile<T>>,
    pub runs: usize,
    pub base_seed: GeneratorSeed,
}

impl<T: Real> SweepSpec<T> {
    fn validate(&self) -> Result<()> {
        if self.runs == 0 {
            return invalid("a sweep needs at least one run");
        }
        if self.grid.is_empty() {
            return invalid("sweep grid is empty");
        }
        if self.profiles.is_empty() {
            return invalid("sweep needs at least one QoS profile");
        }
        if self.n < 2 {
            return invalid(format!("imbalance needs n >= 2, got n = {}", self.n));
        }
        Ok(())
    }
}

/// Aggregate for one (grid value, profile) pair.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepPoint<T> {
    pub param: f64,
    pub profile: QoSProfile<T>,
    pub mean: T,
    /// Sample standard deviation over the runs.
    pub std: T,
    pub values: Vec<T>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult<T> {
    pub model: Model,
    pub n: usize,
    pub runs: usize,
    /// Grid-major, then profile order.
    pub points: Vec<SweepPoint<T>>,
    pub warnings: Vec<String>,
}

impl<T: Real> SweepResult<T> {
    /// Points for one profile, in grid order.
    pub fn series(&self, profile: &QoSProfile<T>) -> Vec<&SweepPoint<T>> {
        self.points
            .iter()
            .filter(|p| &p.profile == profile)
            .collect()
    }

    /// CSV with header `model,n,param,a,h0,runs,mean_I,std_I`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("model,n,param,a,h0,runs,mean_I,std_I\n");
        for p in &self.points {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{}",
                self.model.name(),
                self.n,
                p.param,
                p.profile.a(),
                p.profile.h0(),
                self.runs,
                p.mean,
                p.std
            );
        }
        out
    }
}

fn single_run_warning(runs: usize) -> Vec<String> {
    if runs == 1 {
        vec!["only one run per point: standard deviation reported as 0".to_owned()]
    } else {
        Vec::new()
    }
}

pub fn run_sweep<T: Real>(spec: &SweepSpec<T>) -> Result<SweepResult<T>> {
    spec.validate()?;
    let jobs: Vec<(usize, u64)> = (0..spec.grid.len())
        .flat_map(|g| (0..spec.runs as u64).map(move |r| (g, r)))
        .collect();
    // One graph per (grid value, run); every profile is evaluated on it.
    let per_job: Vec<Vec<T>> = jobs
        .par_iter()
        .map(|&(g, r)| {
            let graph = spec
                .model
                .generate(spec.n, spec.grid[g], spec.base_seed.offset(r))?;
            let hist = all_pairs_histogram(&graph);
            spec.profiles
                .iter()
                .map(|profile| Ok(imbalance_from_histogram(&hist, profile)?.imbalance))
                .collect()
        })
        .collect::<Result<_>>()?;

    let mut points = Vec::with_capacity(spec.grid.len() * spec.profiles.len());
    for (g, &param) in spec.grid.iter().enumerate() {
        let runs = &per_job[g * spec.runs..(g + 1) * spec.runs];
        for (i, profile) in spec.profiles.iter().enumerate() {
            let values: Vec<T> = runs.iter().map(|r| r[i]).collect();
            let (mean, std) = mean_std(&values);
            points.push(SweepPoint {
                param,
                profile: *profile,
                mean,
                std,
                values,
            });
        }
    }
    Ok(SweepResult {
        model: spec.model,
        n: spec.n,
        runs: spec.runs,
        points,
        warnings: single_run_warning(spec.runs),
    })
}

/// One model instance placed on the (degree Gini, imbalance) plane.
#[derive(Debug, Clone, PartialEq)]
pub struct ZooPoint<T> {
    pub model: String,
    pub degree_gini: T,
    pub imbalance: T,
}

pub const ZOO_NODES: usize = 50;

/// Evaluates deterministic and random models at `n = 50` under `profile`.
pub fn zoo_landscape<T: Real>(
    seed: GeneratorSeed,
    profile: &QoSProfile<T>,
) -> Result<Vec<ZooPoint<T>>> {
    let n = ZOO_NODES;
    let mut instances: Vec<(String, Graph)> = vec![
        ("complete".into(), generators::complete(n)?),
        ("ring".into(), generators::ring(n)?),
        ("path".into(), generators::path(n)?),
        ("star".into(), generators::star(n)?),
    ];
    for p in [0.05, 0.1, 0.2] {
        instances.push((format!("er(p={p})"), generators::erdos_renyi(n, p, seed)?));
    }
    for p in [0.01, 0.1, 1.0] {
        instances.push((
            format!("ws(k=4,p={p})"),
            generators::watts_strogatz(n, 4, p, seed)?,
        ));
    }
    for m in [1, 3, 8] {
        instances.push((
            format!("ba(m={m})"),
            generators::barabasi_albert(n, m, seed)?,
        ));
    }
    instances
        .into_par_iter()
        .map(|(model, g)| {
            let hist = all_pairs_histogram(&g);
            Ok(ZooPoint {
                model,
                degree_gini: degree_gini(&g)?,
                imbalance: imbalance_from_histogram(&hist, profile)?.imbalance,
            })
        })
        .collect()
}

pub fn zoo_csv<T: Real>(points: &[ZooPoint<T>]) -> String {
    let mut out = String::from("model,degree_gini,I\n");
    for p in points {
        let _ = writeln!(out, "{},{},{}", p.model, p.degree_gini, p.imbalance);
    }
    out
}

/// Run means of the four metrics at one rewiring probability.
#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonRow<T> {
    pub p: f64,
    pub imbalance: T,
    pub jain_unfairness: T,
    /// Mean over runs with at least one reachable pair.
    pub avg_path_length: T,
    pub path_variance: T,
}

/// Imbalance, Jain's unfairness, average path length and hop variance along the
/// small-world rewiring axis, all computed on the same graphs and weights.
pub fn ws_metric_comparison<T: Real>(
    n: usize,
    k: usize,
    p_grid: &[f64],
    profile: &QoSProfile<T>,
    runs: usize,
    seed: GeneratorSeed,
) -> Result<Vec<ComparisonRow<T>>> {
    if runs == 0 || p_grid.is_empty() {
        return invalid("comparison needs a nonempty grid and at least one run");
    }
    let model = Model::WattsStrogatz { k };
    let jobs: Vec<(usize, u64)> = (0..p_grid.len())
        .flat_map(|g| (0..runs as u64).map(move |r| (g, r)))
        .collect();
    let per_job: Vec<[Option<T>; 4]> = jobs
        .par_iter()
        .map(|&(g, r)| {
            let graph = model.generate(n, p_grid[g], seed.offset(r))?;
            let hist = all_pairs_histogram(&graph);
            Ok([
                Some(imbalance_from_histogram(&hist, profile)?.imbalance),
                Some(jain_unfairness(&hist, profile)?),
                average_path_length(&hist).ok(),
                path_variance(&hist).ok(),
            ])
        })
        .collect::<Result<_>>()?;

    let mean_of = |rows: &[[Option<T>; 4]], col: usize| {
        let vals: Vec<T> = rows.iter().filter_map(|r| r[col]).collect();
        mean_std(&vals).0
    };
    Ok(p_grid
        .iter()
        .enumerate()
        .map(|(g, &p)| {
            let rows = &per_job[g * runs..(g + 1) * runs];
            ComparisonRow {
                p,
                imbalance: mean_of(rows, 0),
                jain_unfairness: mean_of(rows, 1),
                avg_path_length: mean_of(rows, 2),
                path_variance: mean_of(rows, 3),
            }
        })
        .collect())
}

pub fn comparison_csv<T: Real>(rows: &[ComparisonRow<T>]) -> String {
    let mut out = String::from("p,I,jain_unfairness,avg_path_length,path_variance\n");
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            r.p, r.imbalance, r.jain_unfairness, r.avg_path_length, r.path_variance
        );
    }
    out
}

/// Paired BA evaluation under a strict (`h0 = 1`) and a lenient (`h0 = 4`)
/// threshold, both at `a = 2`.
#[derive(Debug, Clone, PartialEq)]
pub struct QosReversal<T> {
    pub strict_values: Vec<T>,
    pub lenient_values: Vec<T>,
    pub mean_strict: T,
    pub std_strict: T,
    pub mean_lenient: T,
    pub std_lenient: T,
    pub warnings: Vec<String>,
}

pub const REVERSAL_STEEPNESS: f64 = 2.0;
pub const REVERSAL_STRICT_H0: f64 = 1.0;
pub const REVERSAL_LENIENT_H0: f64 = 4.0;

pub fn ba_qos_reversal<T: Real>(
    n: usize,
    m_attach: usize,
    runs: usize,
    seed: GeneratorSeed,
) -> Result<QosReversal<T>> {
    if runs == 0 {
        return invalid("reversal needs at least one run");
    }
    let a = T::lit(REVERSAL_STEEPNESS);
    let profiles = vec![
        QoSProfile::new(a, T::lit(REVERSAL_STRICT_H0))?,
        QoSProfile::new(a, T::lit(REVERSAL_LENIENT_H0))?,
    ];
    let spec = SweepSpec {
        model: Model::BarabasiAlbert,
        n,
        grid: vec![m_attach as f64],
        profiles,
        runs,
        base_seed: seed,
    };
    let result = run_sweep(&spec)?;
    let strict = &result.points[0];
    let lenient = &result.points[1];
    Ok(QosReversal {
        strict_values: strict.values.clone(),
        lenient_values: lenient.values.clone(),
        mean_strict: strict.mean,
        std_strict: strict.std,
        mean_lenient: lenient.mean,
        std_lenient: lenient.std,
        warnings: result.warnings,
    })
}

impl<T: Real> QosReversal<T> {
    pub fn to_csv(&self) -> String {
        format!(
            "a,h0,mean_I,std_I\n{a},{},{},{}\n{a},{},{},{}\n",
            REVERSAL_STRICT_H0,
            self.mean_strict,
            self.std_strict,
            REVERSAL_LENIENT_H0,
            self.mean_lenient,
            self.std_lenient,
            a = REVERSAL_STEEPNESS,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grids() {
        assert_eq!(linear_grid(0.0, 0.4, 41).len(), 41);
        assert!((linear_grid(0.0, 0.4, 41)[10] - 0.1).abs() < 1e-15);
        let g = log_grid(1e-3, 1.0, 20);
        assert_eq!(g.len(), 20);
        assert_eq!(g[0], 1e-3);
        assert_eq!(g[19], 1.0);
        assert!(g.windows(2).all(|w| w[1] > w[0]));
    }

    #[test]
    fn mean_std_sample() {
        let (m, s) = mean_std(&[1.0f64, 2.0, 3.0, 4.0]);
        assert_eq!(m, 2.5);
        assert!((s - (5.0f64 / 3.0).sqrt()).abs() < 1e-15);
        assert_eq!(mean_std(&[7.0f64]), (7.0, 0.0));
    }

    #[test]
    fn er_p0_is_exactly_one() {
        let spec = SweepSpec {
            model: Model::ErdosRenyi,
            n: 50,
            grid: vec![0.0],
            profiles: default_profiles::<f64>(),
            runs: 3,
            base_seed: GeneratorSeed(1),
        };
        let result = run_sweep(&spec).unwrap();
        assert!(result.points.iter().all(|p| p.mean == 1.0 && p.std == 0.0));
    }

    #[test]
    fn sweep_rejects_bad_specs() {
        let mut spec = SweepSpec {
            model: Model::BarabasiAlbert,
            n: 20,
            grid: vec![2.5],
            profiles: default_profiles::<f64>(),
            runs: 2,
            base_seed: GeneratorSeed(1),
        };
        assert!(run_sweep(&spec).is_err());
        spec.grid = vec![2.0];
        spec.runs = 0;
        assert!(run_sweep(&spec).is_err());
        spec.runs = 1;
        let result = run_sweep(&spec).unwrap();
        assert_eq!(result.warnings.len(), 1);
        assert!(result.points.iter().all(|p| p.std == 0.0));
    }

    #[test]
    fn single_run_reversal_warns() {
        let r = ba_qos_reversal::<f64>(30, 3, 1, GeneratorSeed(4)).unwrap();
        assert_eq!(r.std_strict, 0.0);
        assert_eq!(r.warnings.len(), 1);
    }

    #[test]
    fn csv_headers() {
        let spec = SweepSpec {
            model: Model::WattsStrogatz { k: 4 },
            n: 20,
            grid: vec![0.1, 0.2],
            profiles: default_profiles::<f64>(),
            runs: 2,
            base_seed: GeneratorSeed(3),
        };
        let csv = run_sweep(&spec).unwrap().to_csv();
        assert!(csv.starts_with("model,n,param,a,h0,runs,mean_I,std_I\nws,20,0.1,1,4,2,"));
        assert_eq!(csv.lines().count(), 1 + 2 * 3);
    }
}
