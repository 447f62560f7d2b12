use std::fmt;
use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::Path;

use anyhow::{Context, Result};
use degen_core::report::{
    GraphSummary, LabelSummary, Mode as ReportMode, ReportParameters, ReportResult, ReportStats,
    RunReport,
};
use degen_core::scaling::{run_scaling, ScalingConfig, ScalingFamily, ScalingSummary};
use degen_core::{
    approximate_core_decomposition, approximate_degeneracy, core_decomposition, load_auto,
    peel_degeneracy, validate_parameters, within_bound, write_csr, write_edge_list, ApproxOptions,
    Graph, GraphSpec, LoadOptions, RunStats,
};

use crate::{
    ConvertArgs, DegeneracyArgs, Family, Format, GraphSource, KcoreArgs, Mode, RunArgs, ScalingArgs,
};

/// Bad flag values detected after clap parsing.
#[derive(Debug)]
struct UsageError(String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

/// 2 for usage and parameter errors, 1 for everything else.
pub fn exit_code(err: &anyhow::Error) -> u8 {
    let usage = err.chain().any(|cause| {
        cause.is::<UsageError>()
            || matches!(
                cause.downcast_ref::<degen_core::Error>(),
                Some(degen_core::Error::Parameter(_))
            )
    });
    if usage {
        2
    } else {
        1
    }
}

fn load_graph(source: &GraphSource, seed: u64) -> Result<(Graph, String)> {
    if let Some(path) = &source.input {
        let file = File::open(path).with_context(|| format!("cannot open {}", path.display()))?;
        let options = LoadOptions {
            dedup: !source.keep_parallel,
            ..LoadOptions::default()
        };
        let graph = load_auto(BufReader::new(file), &options)
            .with_context(|| format!("cannot load {}", path.display()))?;
        Ok((graph, path.display().to_string()))
    } else {
        let text = source
            .generator
            .as_deref()
            .expect("clap enforces a graph source");
        let spec: GraphSpec = text
            .parse()
            .map_err(|e: degen_core::Error| UsageError(e.to_string()))?;
        let graph = spec.generate(seed).map_err(|e| UsageError(e.to_string()))?;
        Ok((graph, text.to_string()))
    }
}

fn check_parameters(run: &RunArgs) -> Result<()> {
    validate_parameters(run.epsilon, run.c).map_err(|e| UsageError(e.to_string()))?;
    Ok(())
}

fn parameters(run: &RunArgs, opts: ApproxOptions) -> ReportParameters {
    ReportParameters {
        mode: match run.mode {
            Mode::Exact => ReportMode::Exact,
            Mode::Approx => ReportMode::Approx,
        },
        epsilon: run.epsilon,
        c: run.c,
        seed: run.seed,
        lower_start: opts.use_lower_start,
        leaps: opts.use_leaps,
    }
}

pub fn degeneracy(args: DegeneracyArgs) -> Result<()> {
    let run = &args.run;
    check_parameters(run)?;
    let (graph, source) = load_graph(&run.source, run.seed)?;
    let opts = ApproxOptions {
        use_lower_start: args.lower_start,
        use_leaps: args.leaps,
    };

    let (value, used_fallback, stats) = match run.mode {
        Mode::Exact => {
            let started = std::time::Instant::now();
            let value = peel_degeneracy(&graph) as f64;
            let stats = RunStats {
                wall_time: started.elapsed(),
                ..RunStats::default()
            };
            (value, false, stats)
        }
        Mode::Approx => {
            let r = approximate_degeneracy(&graph, run.epsilon, run.c, run.seed, opts)?;
            (r.value, r.used_fallback, r.stats)
        }
    };

    let mut report = RunReport {
        command: "degeneracy".into(),
        graph: GraphSummary::new(source, &graph),
        parameters: parameters(run, opts),
        result: ReportResult::Degeneracy { value },
        used_fallback,
        exact_value: None,
        error_factor: None,
        stats: ReportStats::from(&stats),
    };
    if run.with_exact {
        report = report.with_exact(peel_degeneracy(&graph));
    }
    emit(&report, run.json)
}

pub fn kcore(args: KcoreArgs) -> Result<()> {
    let run = &args.run;
    check_parameters(run)?;
    let (graph, source) = load_graph(&run.source, run.seed)?;

    let exact = (run.mode == Mode::Exact || run.with_exact).then(|| core_decomposition(&graph));
    let (mut labels, used_fallback, stats) = match run.mode {
        Mode::Exact => {
            let exact = exact.as_ref().unwrap();
            let labels = exact.labels.iter().map(|&c| c as f64).collect();
            (labels, false, RunStats::default())
        }
        Mode::Approx => {
            let d = approximate_core_decomposition(&graph, run.epsilon, run.c, run.seed)?;
            let fallback = d.last_loop_label.is_none();
            (d.labels, fallback, d.stats)
        }
    };
    if args.round_labels {
        labels.iter_mut().for_each(|x| *x = x.round());
    }
    let integral = run.mode == Mode::Exact || args.round_labels;

    if let Some(path) = &args.output {
        write_labels(path, &labels, integral)?;
        if graph.is_remapped() {
            write_id_map(&id_map_path(path), graph.original_ids().unwrap())?;
        }
    }

    let mut summary = LabelSummary::from_labels(
        &labels,
        args.output.as_ref().map(|p| p.display().to_string()),
        args.round_labels,
    );
    if let Some(exact) = exact.as_ref().filter(|_| run.with_exact) {
        let hits = labels
            .iter()
            .zip(&exact.labels)
            .filter(|(&label, &c)| within_bound(label, c as f64, run.epsilon))
            .count();
        summary.within_bound = Some(if labels.is_empty() {
            1.0
        } else {
            hits as f64 / labels.len() as f64
        });
    }

    let mut report = RunReport {
        command: "kcore".into(),
        graph: GraphSummary::new(source, &graph),
        parameters: parameters(run, ApproxOptions::default()),
        result: ReportResult::Labels(summary),
        used_fallback,
        exact_value: None,
        error_factor: None,
        stats: ReportStats::from(&stats),
    };
    if let Some(exact) = exact.filter(|_| run.with_exact) {
        report = report.with_exact(exact.degeneracy);
    }
    emit(&report, run.json)
}

/// Sidecar mapping compacted ids back to input ids: `labels.tsv` ->
/// `labels.tsv.ids`.
pub fn id_map_path(labels: &Path) -> std::path::PathBuf {
    let mut name = labels.as_os_str().to_owned();
    name.push(".ids");
    name.into()
}

fn write_labels(path: &Path, labels: &[f64], integral: bool) -> Result<()> {
    let file = File::create(path).with_context(|| format!("cannot write {}", path.display()))?;
    let mut out = BufWriter::new(file);
    for (v, &label) in labels.iter().enumerate() {
        if integral {
            writeln!(out, "{v}\t{}", label as u64)?;
        } else {
            writeln!(out, "{v}\t{label}")?;
        }
    }
    out.flush()
        .with_context(|| format!("cannot write {}", path.display()))
}

fn write_id_map(path: &Path, ids: &[u64]) -> Result<()> {
    let file = File::create(path).with_context(|| format!("cannot write {}", path.display()))?;
    let mut out = BufWriter::new(file);
    for (v, id) in ids.iter().enumerate() {
        writeln!(out, "{v}\t{id}")?;
    }
    out.flush()
        .with_context(|| format!("cannot write {}", path.display()))
}

fn emit(report: &RunReport, json: bool) -> Result<()> {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    if json {
        serde_json::to_writer_pretty(&mut out, report)?;
        writeln!(out)?;
        return Ok(());
    }
    let g = &report.graph;
    let p = &report.parameters;
    writeln!(
        out,
        "graph     {} (n={}, m={}, max degree {})",
        g.source, g.n, g.m, g.max_degree
    )?;
    match p.mode {
        ReportMode::Exact => writeln!(out, "mode      exact")?,
        ReportMode::Approx => writeln!(
            out,
            "mode      approx (epsilon {}, c {}, seed {}{}{})",
            p.epsilon,
            p.c,
            p.seed,
            if p.lower_start { ", lower start" } else { "" },
            if p.leaps { ", leaps" } else { "" }
        )?,
    }
    match &report.result {
        ReportResult::Degeneracy { value } => writeln!(out, "value     {value}")?,
        ReportResult::Labels(s) => {
            writeln!(
                out,
                "labels    {} nodes, min {}, max {}, mean {:.4}",
                s.count, s.min, s.max, s.mean
            )?;
            if let Some(path) = &s.path {
                writeln!(out, "written   {path}")?;
            }
            if let Some(frac) = s.within_bound {
                writeln!(out, "in bound  {:.2}%", frac * 100.0)?;
            }
        }
    }
    if p.mode == ReportMode::Approx {
        writeln!(
            out,
            "fallback  {}",
            if report.used_fallback { "yes" } else { "no" }
        )?;
    }
    if let (Some(exact), Some(factor)) = (report.exact_value, report.error_factor) {
        writeln!(out, "exact     {exact} (error factor {factor:.3})")?;
    }
    let s = &report.stats;
    writeln!(
        out,
        "stats     {} trials, {} samples, {} peels, {:.1} ms",
        s.trials, s.samples_drawn, s.peels, s.wall_ms
    )?;
    Ok(())
}

pub fn bench_scaling(args: ScalingArgs) -> Result<()> {
    validate_parameters(args.epsilon, args.c).map_err(|e| UsageError(e.to_string()))?;
    if args.seeds == 0 {
        return Err(UsageError("--seeds must be at least 1".into()).into());
    }
    let family = match args.family {
        Family::Er => ScalingFamily::Er {
            avg_degree: args.avg_degree,
        },
        Family::CliqueUnion => ScalingFamily::CliqueUnion {
            exponent: args.exponent,
        },
    };
    let config = ScalingConfig {
        family,
        sizes: args.sizes,
        epsilon: args.epsilon,
        c: args.c,
        seeds_per_size: args.seeds,
        base_seed: args.seed,
        options: ApproxOptions {
            use_lower_start: args.lower_start,
            use_leaps: args.leaps,
        },
    };
    let summary = run_scaling(&config).map_err(|e| match e {
        degen_core::Error::Parameter(msg) => anyhow::Error::new(UsageError(msg)),
        other => other.into(),
    })?;

    let stdout = io::stdout();
    let mut out = stdout.lock();
    if args.json {
        serde_json::to_writer_pretty(&mut out, &summary)?;
        writeln!(out)?;
    } else {
        write_scaling_table(&mut out, &summary)?;
    }
    Ok(())
}

fn write_scaling_table(out: &mut impl Write, summary: &ScalingSummary) -> io::Result<()> {
    let clique = matches!(summary.config.family, ScalingFamily::CliqueUnion { .. });
    write!(
        out,
        "{:>8} {:>8} {:>12} {:>9} {:>14} {:>12}",
        "size", "n", "edges", "degen", "samples", "s/(n ln n)"
    )?;
    if clique {
        write!(out, " {:>13}", "s/(n^b ln n)")?;
    }
    writeln!(out, " {:>8} {:>9}", "trials", "fallback")?;
    for r in &summary.rows {
        write!(
            out,
            "{:>8} {:>8} {:>12.0} {:>9.1} {:>14.1} {:>12.6}",
            r.size, r.n, r.mean_edges, r.mean_degeneracy, r.mean_samples, r.samples_per_n_log_n
        )?;
        if let Some(x) = r.samples_per_nb_log_n {
            write!(out, " {x:>13.6}")?;
        }
        writeln!(
            out,
            " {:>8.1} {:>8.0}%",
            r.mean_trials,
            r.fallback_rate * 100.0
        )?;
    }
    if summary.rows.len() >= 2 {
        match (summary.ratio_spread, summary.loglog_exponent) {
            (Some(spread), Some(slope)) => {
                writeln!(out, "spread of s/(n ln n): {spread:.3}")?;
                writeln!(out, "log-log exponent:     {slope:.3}")?;
            }
            _ => writeln!(
                out,
                "no regression: at least one size drew no samples (every run fell back to exact peeling)"
            )?,
        }
    }
    Ok(())
}

pub fn convert(args: ConvertArgs) -> Result<()> {
    let (graph, _) = load_graph(&args.source, args.seed)?;
    let file = File::create(&args.output)
        .with_context(|| format!("cannot write {}", args.output.display()))?;
    let out = BufWriter::new(file);
    match args.format {
        Format::Csr => write_csr(&graph, out)?,
        Format::Edges => write_edge_list(&graph, out)?,
    }
    Ok(())
}
