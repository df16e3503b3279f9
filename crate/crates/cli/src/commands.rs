use std::fmt::Write as _;

use netimbalance::experiments::{
    ba_qos_reversal, comparison_csv, default_profiles, log_grid, run_sweep, ws_metric_comparison,
    zoo_csv, zoo_landscape, Model, SweepSpec,
};
use netimbalance::generators::{ClusterTopology, GeneratorSeed};
use netimbalance::io::{parse_edge_list, write_edge_list};
use netimbalance::{
    all_pairs_histogram, comparison_report, greedy_edge_addition, imbalance,
    imbalance_from_histogram, phase_diagram, ComparisonReport64, Graph, ImbalanceReport64,
    QoSProfile64,
};

use clap::ValueEnum;

use crate::cli::*;
use crate::genspec::GenSpec;
use crate::{emit, Failure};

struct Loaded {
    graph: Graph,
    /// Original node labels when read from a file.
    labels: Option<Vec<String>>,
}

impl Loaded {
    fn label(&self, u: usize) -> String {
        match &self.labels {
            Some(l) => l[u].clone(),
            None => u.to_string(),
        }
    }
}

fn load(args: &GraphArgs) -> Result<Loaded, Failure> {
    if let Some(path) = &args.source.input {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?;
        let list = parse_edge_list(&text)
            .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
        if list.dropped() > 0 {
            eprintln!(
                "note: dropped {} duplicate edges and {} self-loops",
                list.duplicates_dropped, list.self_loops_dropped
            );
        }
        return Ok(Loaded {
            graph: list.graph,
            labels: Some(list.labels),
        });
    }
    let spec = args
        .source
        .generator
        .as_ref()
        .expect("clap enforces one source");
    let graph = spec.build(args.seed).map_err(Failure::Usage)?;
    Ok(Loaded {
        graph,
        labels: None,
    })
}

fn profile(a: f64, h0: f64) -> Result<QoSProfile64, Failure> {
    QoSProfile64::new(a, h0).map_err(|e| Failure::Usage(e.to_string()))
}

fn json_opt(v: Option<f64>) -> String {
    v.map_or_else(|| "null".to_owned(), |x| x.to_string())
}

pub fn compute(args: &ComputeArgs) -> Result<(), Failure> {
    let p = profile(args.profile.a, args.profile.h0)?;
    let loaded = load(&args.graph)?;
    if loaded.graph.node_count() < 2 {
        return Err(Failure::Compute(format!(
            "need n >= 2 nodes, got n = {}",
            loaded.graph.node_count()
        )));
    }
    let hist = all_pairs_histogram(&loaded.graph);
    let report: ImbalanceReport64 = imbalance_from_histogram(&hist, &p)?;
    let classical: Option<ComparisonReport64> = if args.classical {
        Some(comparison_report(&loaded.graph, &hist, &p)?)
    } else {
        None
    };
    let text = match args.format {
        Format::Csv => {
            let mut header = ImbalanceReport64::CSV_HEADER.to_owned();
            let mut row = report.csv_row();
            if let Some(c) = &classical {
                header = format!("{header},{}", ComparisonReport64::CSV_HEADER);
                row = format!("{row},{}", c.csv_row());
            }
            format!("{header}\n{row}\n")
        }
        Format::JsonText => {
            let mut json = report.to_json_text();
            if let Some(c) = &classical {
                json.pop();
                let _ = write!(
                    json,
                    ", \"avg_path_length\": {}, \"path_variance\": {}, \"jain_unfairness\": {}, \"degree_gini\": {}, \"lambda2\": {}, \"reachable_fraction\": {}}}",
                    json_opt(c.avg_path_length),
                    json_opt(c.path_variance),
                    c.jain_unfairness,
                    json_opt(c.degree_gini),
                    json_opt(c.lambda2),
                    c.reachable_fraction
                );
            }
            json + "\n"
        }
    };
    emit(args.output.out.as_deref(), &text)
}

fn sweep_model(model: SweepModel, k: usize) -> Model {
    match model {
        SweepModel::Er => Model::ErdosRenyi,
        SweepModel::Ba => Model::BarabasiAlbert,
        SweepModel::Ws => Model::WattsStrogatz { k },
    }
}

pub fn sweep(args: &SweepArgs) -> Result<(), Failure> {
    let grid = args
        .grid
        .values()
        .ok_or_else(|| Failure::Usage("sweep needs --grid or --log-grid".into()))?;
    let profiles = if args.profiles.is_empty() {
        default_profiles()
    } else {
        args.profiles
            .iter()
            .map(|&ProfilePair(a, h0)| profile(a, h0))
            .collect::<Result<_, _>>()?
    };
    let spec = SweepSpec {
        model: sweep_model(args.model, args.k),
        n: args.n,
        grid,
        profiles,
        runs: args.runs,
        base_seed: GeneratorSeed(args.seed),
    };
    let result = run_sweep(&spec).map_err(|e| Failure::Usage(e.to_string()))?;
    for w in &result.warnings {
        eprintln!("warning: {w}");
    }
    emit(args.output.out.as_deref(), &result.to_csv())
}

fn edge_list_text(loaded: &Loaded, edges: &[(usize, usize)]) -> String {
    edges
        .iter()
        .map(|&(u, v)| format!("{}-{}", loaded.label(u), loaded.label(v)))
        .collect::<Vec<_>>()
        .join(";")
}

pub fn optimize(args: &OptimizeArgs) -> Result<(), Failure> {
    let p = profile(args.profile.a, args.profile.h0)?;
    let also = args
        .also_profile
        .map(|ProfilePair(a, h0)| profile(a, h0))
        .transpose()?;
    let loaded = load(&args.graph)?;
    let result = greedy_edge_addition(&loaded.graph, &p, args.budget as usize)?;
    if result.chosen_edges.is_empty() {
        return Err(netimbalance::Error::NoCandidates.into());
    }
    if result.exhausted {
        eprintln!(
            "warning: graph became complete after {} of {} edges",
            result.chosen_edges.len(),
            args.budget
        );
    }
    let mut rows = vec![("optimized", p, result.i_before, result.i_after)];
    if let Some(b) = also {
        let before = imbalance(&loaded.graph, &b)?.imbalance;
        let after = imbalance(&result.graph, &b)?.imbalance;
        rows.push(("also", b, before, after));
    }
    let added = edge_list_text(&loaded, &result.chosen_edges);
    let text = match args.format {
        Format::Csv => {
            let mut out = String::from("profile,a,h0,I_before,I_after,added_edges\n");
            for (role, prof, before, after) in &rows {
                let _ = writeln!(
                    out,
                    "{role},{},{},{before},{after},{added}",
                    prof.a(),
                    prof.h0()
                );
            }
            out
        }
        Format::JsonText => {
            let profiles: Vec<String> = rows
                .iter()
                .map(|(role, prof, before, after)| {
                    format!(
                        "{{\"profile\": \"{role}\", \"a\": {}, \"h0\": {}, \"I_before\": {before}, \"I_after\": {after}}}",
                        prof.a(),
                        prof.h0()
                    )
                })
                .collect();
            let edges: Vec<String> = result
                .chosen_edges
                .iter()
                .map(|&(u, v)| format!("[\"{}\", \"{}\"]", loaded.label(u), loaded.label(v)))
                .collect();
            format!(
                "{{\"budget\": {}, \"exhausted\": {}, \"added_edges\": [{}], \"profiles\": [{}]}}\n",
                args.budget,
                result.exhausted,
                edges.join(", "),
                profiles.join(", ")
            )
        }
    };
    if let Some(path) = &args.trace {
        emit(Some(path), &result.trace_csv())?;
    }
    emit(args.output.out.as_deref(), &text)
}

pub fn phase(args: &PhaseArgs) -> Result<(), Failure> {
    for &a in &args.a_grid.0 {
        for &h0 in &args.h0_grid.0 {
            profile(a, h0)?;
        }
    }
    let loaded = load(&args.graph)?;
    let diagram = phase_diagram(&loaded.graph, &args.a_grid.0, &args.h0_grid.0)?;
    emit(args.output.out.as_deref(), &diagram.to_csv())
}

pub fn compare(args: &CompareArgs) -> Result<(), Failure> {
    let p = profile(args.a, args.h0)?;
    let grid = args
        .grid
        .values()
        .unwrap_or_else(|| log_grid(0.001, 1.0, 20));
    let rows = ws_metric_comparison(
        args.n,
        args.k,
        &grid,
        &p,
        args.runs,
        GeneratorSeed(args.seed),
    )
    .map_err(|e| Failure::Usage(e.to_string()))?;
    emit(args.output.out.as_deref(), &comparison_csv(&rows))
}

fn spec_from_flags(args: &GenerateArgs, model: GenerateModel) -> Result<GenSpec, Failure> {
    let name = model.to_possible_value().expect("no skipped variants");
    let name = name.get_name();
    let need = |v: Option<usize>, flag: &str| {
        v.ok_or_else(|| Failure::Usage(format!("model {name} needs --{flag}")))
    };
    let need_p = || {
        args.p
            .ok_or_else(|| Failure::Usage(format!("model {name} needs --p")))
    };
    let n = need(args.n, "n")?;
    Ok(match model {
        GenerateModel::Complete => GenSpec::Complete(n),
        GenerateModel::Path => GenSpec::Path(n),
        GenerateModel::Ring => GenSpec::Ring(n),
        GenerateModel::Star => GenSpec::Star(n),
        GenerateModel::Er => GenSpec::ErdosRenyi { n, p: need_p()? },
        GenerateModel::Ba => GenSpec::BarabasiAlbert {
            n,
            m: need(args.m, "m")?,
        },
        GenerateModel::Ws => GenSpec::WattsStrogatz {
            n,
            k: need(args.k, "k")?,
            p: need_p()?,
        },
        GenerateModel::Dumbbell => GenSpec::Dumbbell {
            size: n,
            topology: args
                .p
                .map_or_else(ClusterTopology::default, ClusterTopology::ErdosRenyi),
        },
    })
}

pub fn generate(args: &GenerateArgs) -> Result<(), Failure> {
    let spec = match (&args.generator, args.model) {
        (Some(spec), _) => *spec,
        (None, Some(model)) => spec_from_flags(args, model)?,
        (None, None) => unreachable!("clap enforces one of --gen and --model"),
    };
    let graph = spec.build(args.seed).map_err(Failure::Usage)?;
    emit(args.output.out.as_deref(), &write_edge_list(&graph))
}

pub fn zoo(args: &ZooArgs) -> Result<(), Failure> {
    let p = profile(args.a, args.h0)?;
    let points = zoo_landscape(GeneratorSeed(args.seed), &p)?;
    emit(args.output.out.as_deref(), &zoo_csv(&points))
}

pub fn reversal(args: &ReversalArgs) -> Result<(), Failure> {
    let r = ba_qos_reversal::<f64>(args.n, args.m, args.runs, GeneratorSeed(args.seed))
        .map_err(|e| Failure::Usage(e.to_string()))?;
    for w in &r.warnings {
        eprintln!("warning: {w}");
    }
    emit(args.output.out.as_deref(), &r.to_csv())
}
