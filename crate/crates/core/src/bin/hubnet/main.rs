mod args;
mod plot;

use anyhow::{bail, Context};
use clap::error::ErrorKind;
use clap::{CommandFactory, Parser};
use serde::Deserialize;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use args::{AnalyzeArgs, BenchArgs, Cli, Command, GenArgs, MetricsArgs, PlotArgs, SeriesArgs};
use hubnet::bench::{
    analyze_readout, run_experiment, write_aggregate_csv, write_results_csv, ExperimentConfig,
    Model, TrialSpec,
};
use hubnet::netmetrics::{measure, node_degrees, VisitOrder};
use hubnet::seed::rng_from_seed;
use hubnet::tasks::{
    load_mnist, mackey_glass, narma10, write_series_csv, MackeyGlassConfig, NarmaConfig, Task,
};
use hubnet::Network;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Gen(a) => cmd_gen(a),
        Command::Metrics(a) => cmd_metrics(a),
        Command::Bench(a) => cmd_bench(a),
        Command::AnalyzeReadout(a) => cmd_analyze(a),
        Command::Series(a) => cmd_series(a),
        Command::Plot(a) => cmd_plot(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn usage_error(sub: &str, msg: &str) -> ! {
    let mut cmd = Cli::command();
    cmd.build();
    let sub_cmd = cmd.find_subcommand_mut(sub).expect("known subcommand");
    sub_cmd
        .error(ErrorKind::MissingRequiredArgument, msg)
        .exit()
}

fn create(path: &Path) -> anyhow::Result<BufWriter<File>> {
    Ok(BufWriter::new(
        File::create(path).with_context(|| format!("creating {}", path.display()))?,
    ))
}

fn write_text(out: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match out {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display()))?,
        None => {
            let mut out = std::io::stdout().lock();
            if let Err(e) = out.write_all(text.as_bytes()).and_then(|()| out.flush()) {
                if e.kind() != std::io::ErrorKind::BrokenPipe {
                    return Err(e.into());
                }
            }
        }
    }
    Ok(())
}

fn read_network(path: &Path) -> anyhow::Result<Network> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Network::from_json_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn cmd_gen(a: GenArgs) -> anyhow::Result<()> {
    let cfg = a.topology.config(a.n, a.mode, a.seed);
    let net = Network::generate(&cfg)?;
    let mut text = net.to_json_string()?;
    text.push('\n');
    write_text(a.out.as_deref(), &text)
}

fn cmd_metrics(a: MetricsArgs) -> anyhow::Result<()> {
    let net = read_network(&a.input)?;
    let order = a
        .louvain_seed
        .map_or(VisitOrder::Ascending, VisitOrder::Shuffled);
    let m = measure(&net, order)?;
    let mut text = serde_json::to_string_pretty(&m)?;
    text.push('\n');
    write_text(a.out.as_deref(), &text)?;
    if let Some(p) = &a.degrees_out {
        let mut w = create(p)?;
        writeln!(w, "node,degree")?;
        for (i, d) in node_degrees(&net).0.iter().enumerate() {
            writeln!(w, "{i},{d}")?;
        }
        w.flush()?;
    }
    Ok(())
}

fn default_aggregate_path(out: &Path) -> PathBuf {
    let stem = out
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    out.with_file_name(format!("{stem}.aggregate.csv"))
}

fn experiment_from_flags(a: &BenchArgs) -> ExperimentConfig {
    let repeats = a
        .repeats
        .unwrap_or(if a.task.iter().all(|&t| t == Task::Mnist) {
            10
        } else {
            100
        });
    ExperimentConfig {
        grid: ExperimentConfig::product(&a.task, &a.models, &a.n, &a.n_train),
        n_test: a.n_test,
        repeats,
        base_seed: a.seed,
        jobs: a.jobs,
        params: a.esn.params(),
        degree_weight: a.degree_weight,
        mnist_images: a.mnist_images.clone(),
        mnist_labels: a.mnist_labels.clone(),
    }
}

fn cmd_bench(a: BenchArgs) -> anyhow::Result<()> {
    let mut cfg = match &a.config {
        Some(p) => {
            let text =
                std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
            serde_json::from_str::<ExperimentConfig>(&text)
                .with_context(|| format!("parsing {}", p.display()))?
        }
        None => experiment_from_flags(&a),
    };
    if a.config.is_some() {
        cfg.jobs = a.jobs;
    }
    if cfg.needs_mnist() {
        match (&cfg.mnist_images, &cfg.mnist_labels) {
            (Some(_), Some(_)) => {}
            _ => usage_error(
                "bench",
                "task mnist needs --mnist-images and --mnist-labels",
            ),
        }
    }
    if let Some(p) = &a.write_config {
        std::fs::write(p, serde_json::to_string_pretty(&cfg)? + "\n")?;
    }
    let mnist = match (&cfg.mnist_images, &cfg.mnist_labels) {
        (Some(i), Some(l)) if cfg.needs_mnist() => Some(load_mnist(i, l)?),
        _ => None,
    };
    let out = run_experiment(&cfg, mnist.as_ref())?;
    write_results_csv(create(&a.out)?, &out.trials, a.timing)?;
    let agg_path = a
        .aggregate_out
        .clone()
        .unwrap_or_else(|| default_aggregate_path(&a.out));
    write_aggregate_csv(create(&agg_path)?, &out.aggregates)?;
    if !out.failures.is_empty() {
        for (g, msg) in &out.failures {
            eprintln!(
                "aborted {} {} n={} n_train={}: {msg}",
                g.task, g.model, g.n, g.n_train
            );
        }
        bail!("{} grid point(s) aborted", out.failures.len());
    }
    Ok(())
}

fn cmd_analyze(a: AnalyzeArgs) -> anyhow::Result<()> {
    if a.task == Task::Mnist {
        usage_error(
            "analyze-readout",
            "analyze-readout supports mackey-glass and narma10",
        );
    }
    let spec = TrialSpec {
        task: a.task,
        model: a.model,
        n: a.n,
        n_train: a.n_train,
        n_test: a.n_test,
        trial: a.trial,
        base_seed: a.seed,
    };
    let r = analyze_readout(&spec, &a.esn.params())?;
    let mut w = create(&a.out)?;
    writeln!(w, "neuron,degree,raw_weight,normalized_weight,is_input")?;
    for row in &r.rows {
        writeln!(
            w,
            "{},{},{:.16e},{:.16e},{}",
            row.neuron, row.degree, row.raw_weights[0], row.normalized_weight, row.is_input
        )?;
    }
    w.flush()?;
    if let Some(p) = &a.states_out {
        let mut w = create(p)?;
        let s = &r.train_states.0;
        let header: Vec<String> = (0..s.ncols()).map(|i| format!("s{i}")).collect();
        writeln!(w, "{}", header.join(","))?;
        for row in s.row_iter() {
            let cells: Vec<String> = row.iter().map(|v| format!("{v:.16e}")).collect();
            writeln!(w, "{}", cells.join(","))?;
        }
        w.flush()?;
    }
    let summary = serde_json::json!({
        "task": spec.task,
        "model": spec.model,
        "n": spec.n,
        "n_train": spec.n_train,
        "n_test": spec.n_test,
        "pearson_r": r.correlation,
        "test_rmse": r.test_rmse,
        "input_neurons": {"train_rmse": r.input.train_rmse, "test_rmse": r.input.test_rmse},
        "non_input_neurons": {"train_rmse": r.non_input.train_rmse, "test_rmse": r.non_input.test_rmse},
    });
    write_text(None, &(serde_json::to_string_pretty(&summary)? + "\n"))
}

fn cmd_series(a: SeriesArgs) -> anyhow::Result<()> {
    match a.task {
        Task::MackeyGlass => {
            let s = mackey_glass(&MackeyGlassConfig {
                length: a.length,
                transient: a.transient,
                x0: a.x0,
                seed: a.seed,
                ..Default::default()
            });
            write_series_csv(&a.out, if a.raw { &s.raw } else { &s.normalized })?;
        }
        Task::Narma10 => {
            let cfg = NarmaConfig {
                length: a.length,
                seed: a.seed,
                ..Default::default()
            };
            let s = narma10(&cfg, &mut rng_from_seed(a.seed))?;
            write_series_csv(&a.out, &s.x)?;
            if let Some(p) = &a.inputs_out {
                write_series_csv(p, &s.u)?;
            }
        }
        Task::Mnist => usage_error("series", "series supports mackey-glass and narma10"),
    }
    Ok(())
}

#[derive(Debug, Deserialize)]
struct AggregateRow {
    task: Task,
    model: Model,
    n: usize,
    n_train: usize,
    mean: f64,
    ratio_to_esn_ratio_of_means: Option<f64>,
}

fn cmd_plot(a: PlotArgs) -> anyhow::Result<()> {
    let mut reader = csv::Reader::from_path(&a.input)
        .with_context(|| format!("reading {}", a.input.display()))?;
    let mut rows = Vec::new();
    for rec in reader.deserialize::<AggregateRow>() {
        let r = rec.with_context(|| format!("parsing {}", a.input.display()))?;
        if a.task.is_some_and(|t| t != r.task) || a.n.is_some_and(|n| n != r.n) {
            continue;
        }
        let y = if a.ratio {
            r.ratio_to_esn_ratio_of_means
        } else {
            Some(r.mean)
        };
        if let Some(y) = y {
            let label = if a.task.is_some() {
                r.model.to_string()
            } else {
                format!("{} {}", r.task, r.model)
            };
            let label = if a.n.is_some() {
                label
            } else {
                format!("{label} n={}", r.n)
            };
            rows.push((label, r.n_train as f64, y));
        }
    }
    if rows.is_empty() {
        bail!("no rows to plot in {}", a.input.display());
    }
    let y_label = if a.ratio {
        "score relative to ESN"
    } else {
        "mean score"
    };
    let title = a
        .task
        .map_or("aggregate results".to_string(), |t| t.to_string());
    let svg = plot::line_chart(&title, "n_train", y_label, &plot::group(rows));
    std::fs::write(&a.out, svg).with_context(|| format!("writing {}", a.out.display()))?;
    Ok(())
}
