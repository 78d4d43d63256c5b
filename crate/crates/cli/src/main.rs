//! `ivfg`: aggregate intervals, check properties, fuse ensemble scores and
//! compute network centralities from the command line.

mod config;
mod error;
mod output;

use std::fmt::Write as _;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use ivfg_core::ensemble::{self, Labels, ScoreTable, SyntheticSpec};
use ivfg_core::fg::properties;
use ivfg_core::network::{self, AffinityKind, WeightedGraph};
use ivfg_core::{format_sig, miv, FPreset};
use serde::Serialize;

use config::RunConfig;
use error::CliError;

#[derive(Parser, Debug)]
#[command(name = "ivfg", version, about = "Interval-valued Sugeno-like FG-functionals")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct GlobalArgs {
    /// Flat key = value config file.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// xy, lex1, lex2, alpha-beta:A,B, alpha-plus:A or alpha-minus:A.
    #[arg(long, global = true)]
    order: Option<String>,
    /// cardinality, power:P or table:FILE.
    #[arg(long, global = true)]
    measure: Option<String>,
    /// meet, sugeno1, sugeno2, sna or miv[:PRESET].
    #[arg(long = "f", global = true)]
    f: Option<String>,
    /// max, max-square, max-sqrt, proj1, proj1-square, proj1-sqrt, mean or capped-sum.
    #[arg(long = "g", global = true)]
    g: Option<String>,
    /// iv-sugeno1, iv-sugeno2, iv-sugeno3 or network.
    #[arg(long, global = true)]
    preset: Option<String>,
    /// Evaluate functionals that fail the tie check, using the stable sort.
    #[arg(long, global = true)]
    acknowledge_non_wds: bool,
    /// Print JSON instead of the text report.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads (default: all cores). Output does not depend on it.
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Aggregate one interval vector, e.g. "[0.1,0.2] [0.5,0.7]".
    Aggregate {
        intervals: Vec<String>,
        /// Read intervals from FILE ("-" for stdin).
        #[arg(long)]
        input: Option<PathBuf>,
        /// Also print σ, the measures, the F-terms and the G result.
        #[arg(long)]
        trace: bool,
    },
    /// Run the property suite and the tie check for a functional.
    Check {
        #[arg(long)]
        samples: Option<usize>,
        /// Arity for closed-form measures.
        #[arg(long)]
        n: Option<usize>,
    },
    /// Fuse ensemble scores and report accuracy and F1 over random splits.
    Fuse {
        #[arg(long)]
        scores: PathBuf,
        #[arg(long)]
        labels: PathBuf,
        #[arg(long)]
        partitions: Option<usize>,
        #[arg(long)]
        test_fraction: Option<f64>,
        /// Min-max rescale scores within each trial first.
        #[arg(long)]
        rescale: bool,
        /// Write per-trial decisions as CSV.
        #[arg(long)]
        decisions: Option<PathBuf>,
    },
    /// Affinity centralities of a weighted graph.
    Network {
        /// Edge list CSV with header src,dst,weight.
        #[arg(long, conflicts_with = "tokens", required_unless_present = "tokens")]
        edges: Option<PathBuf>,
        /// Whitespace separated token stream.
        #[arg(long)]
        tokens: Option<PathBuf>,
        /// Co-occurrence window for --tokens.
        #[arg(long)]
        window: Option<usize>,
        /// bf or bcf.
        #[arg(long)]
        affinity: Option<String>,
        /// Write the graph's edges as CSV.
        #[arg(long)]
        dump_edges: Option<PathBuf>,
    },
    /// Write a seeded synthetic score table and labels.
    Synth {
        #[arg(long)]
        out_dir: PathBuf,
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long)]
        classes: Option<usize>,
        #[arg(long)]
        bands: Option<usize>,
        #[arg(long)]
        classifiers: Option<usize>,
    },
}

impl GlobalArgs {
    fn run_config(&self) -> Result<RunConfig, CliError> {
        let file = match &self.config {
            Some(path) => RunConfig::from_path(path)?,
            None => RunConfig::default(),
        };
        let flags = RunConfig {
            preset: self.preset.clone(),
            order: self.order.clone(),
            measure: self.measure.clone(),
            f: self.f.clone(),
            g: self.g.clone(),
            seed: self.seed,
            acknowledge_non_wds: self.acknowledge_non_wds.then_some(true),
            ..Default::default()
        };
        Ok(file.merge(flags))
    }
}

fn data_err(path: &std::path::Path, e: impl std::fmt::Display) -> CliError {
    CliError::Data(format!("{}: {e}", path.display()))
}

fn aggregate(
    cfg: &RunConfig,
    json: bool,
    args: Vec<String>,
    input: Option<PathBuf>,
    trace: bool,
) -> Result<String, CliError> {
    let text = match input {
        Some(p) if p.as_os_str() == "-" => read_stdin()?,
        Some(p) => std::fs::read_to_string(&p).map_err(|e| data_err(&p, e))?,
        None if args.is_empty() => read_stdin()?,
        None => args.join(" "),
    };
    let xs = ivfg_core::interval::parse_interval_list(&text)?;
    if xs.is_empty() {
        return Err(CliError::Data("no intervals given".into()));
    }
    let fg = cfg.functional(xs.len(), "iv-sugeno3")?;
    let t = fg.evaluate_traced(&xs)?;
    if json {
        #[derive(Serialize)]
        struct Out<'a> {
            functional: String,
            wds: String,
            flagged: bool,
            inputs: &'a [ivfg_core::Interval],
            result: ivfg_core::Interval,
            #[serde(skip_serializing_if = "Option::is_none")]
            trace: Option<&'a ivfg_core::fg::EvaluationTrace>,
        }
        return output::json(&Out {
            functional: fg.to_string(),
            wds: fg.wds().to_string(),
            flagged: fg.is_flagged(),
            inputs: &xs,
            result: t.result,
            trace: trace.then_some(&t),
        });
    }
    let mut out = format!("{}\n", t.result);
    if trace {
        let sigma: Vec<String> = t.sigma.iter().map(|i| (i + 1).to_string()).collect();
        writeln!(out, "sigma:    {}", sigma.join(" ")).unwrap();
        writeln!(out, "sorted:   {}", output::intervals(&t.sorted)).unwrap();
        writeln!(out, "measures: {}", output::intervals(&t.measures)).unwrap();
        writeln!(out, "F-terms:  {}", output::intervals(&t.terms)).unwrap();
        writeln!(out, "G:        {}", t.result).unwrap();
    }
    Ok(out)
}

fn read_stdin() -> Result<String, CliError> {
    let mut s = String::new();
    std::io::stdin()
        .read_to_string(&mut s)
        .map_err(|e| CliError::Data(format!("stdin: {e}")))?;
    Ok(s)
}

fn check(
    cfg: &RunConfig,
    json: bool,
    samples: Option<usize>,
    n: Option<usize>,
) -> Result<(String, Option<CliError>), CliError> {
    let samples = cfg.param("samples", samples, 2000)?;
    let n = cfg.param("n", n, 3)?;
    let fg = cfg.functional(n, "iv-sugeno3")?;
    let seed = cfg.seed();
    let report = properties::property_suite(&fg, samples, seed);
    let miv_report = match fg.f() {
        FPreset::Miv(spec) => Some(miv::property_suite(spec, samples, seed)),
        _ => None,
    };

    let mut failures: Vec<String> = report
        .unexpected_failures()
        .iter()
        .map(|r| r.name.to_string())
        .collect();
    if let Some(m) = &miv_report {
        failures.extend(
            m.rows
                .iter()
                .filter(|r| r.expected && !r.observed)
                .map(|r| format!("miv clause {}", r.label)),
        );
    }
    let status = (!failures.is_empty()).then(|| {
        CliError::Property(format!("expected properties not observed: {}", failures.join(", ")))
    });

    if json {
        #[derive(Serialize)]
        struct Out<'a> {
            properties: &'a properties::PropertyReport,
            #[serde(skip_serializing_if = "Option::is_none")]
            miv: Option<&'a miv::MivReport>,
        }
        let text = output::json(&Out {
            properties: &report,
            miv: miv_report.as_ref(),
        })?;
        return Ok((text, status));
    }

    let mut out = String::new();
    writeln!(out, "functional: {}", report.functional).unwrap();
    writeln!(out, "wds: {}", report.wds).unwrap();
    writeln!(out, "samples: {}  seed: {}", report.samples, report.seed).unwrap();
    writeln!(out).unwrap();
    writeln!(out, "{:<28} {:<13} {:<13} counterexample", "property", "expected", "observed").unwrap();
    for row in &report.rows {
        let cx = row.counterexample.as_ref().map(|c| c.to_string()).unwrap_or_default();
        writeln!(
            out,
            "{:<28} {:<13} {:<13} {}",
            row.name,
            output::yes_no(row.expected, "expected"),
            output::yes_no(row.observed, "observed"),
            cx
        )
        .unwrap();
    }
    if let Some(m) = &miv_report {
        writeln!(out).unwrap();
        writeln!(out, "M_IV {}", m.spec).unwrap();
        writeln!(out, "{:<28} {:<13} {:<13} counterexample", "clause", "expected", "observed").unwrap();
        for row in &m.rows {
            writeln!(
                out,
                "{:<28} {:<13} {:<13} {}",
                row.label,
                output::yes_no(row.expected, "expected"),
                output::yes_no(row.observed, "observed"),
                row.counterexample.as_deref().unwrap_or("")
            )
            .unwrap();
        }
    }
    let out: String = out.lines().map(|l| format!("{}\n", l.trim_end())).collect();
    Ok((out.trim_end().to_string() + "\n", status))
}

struct FuseArgs {
    scores: PathBuf,
    labels: PathBuf,
    partitions: Option<usize>,
    test_fraction: Option<f64>,
    rescale: bool,
    decisions: Option<PathBuf>,
}

fn fuse(cfg: &RunConfig, json: bool, a: FuseArgs) -> Result<String, CliError> {
    let k = cfg.param("partitions", a.partitions, 10)?;
    let fraction = cfg.param("test_fraction", a.test_fraction, 0.5)?;
    let rescale = a.rescale || cfg.param("rescale", None, false)?;
    let mut table = ScoreTable::from_csv_path(&a.scores).map_err(|e| data_err(&a.scores, e))?;
    if rescale {
        table.rescale_per_trial();
    }
    let labels = Labels::from_csv_path(&a.labels).map_err(|e| data_err(&a.labels, e))?;
    let logits = ensemble::build_interval_logits(&table)?;
    let fg = cfg.functional(logits.bands.len(), "iv-sugeno3")?;
    let decisions = ensemble::fuse_and_decide(&logits, &fg, fg.order())?;
    let partitions = ensemble::make_partitions(&logits.trials, k, fraction, cfg.seed())?;
    let report = ensemble::evaluate(&decisions, &labels, &partitions)?;

    if let Some(path) = &a.decisions {
        write_decisions(path, &logits.classes, &decisions, &labels)?;
    }

    if json {
        #[derive(Serialize)]
        struct Out<'a> {
            functional: String,
            trials: usize,
            classes: &'a [String],
            bands: &'a [String],
            seed: u64,
            test_fraction: f64,
            report: &'a ensemble::FusionReport,
        }
        return output::json(&Out {
            functional: fg.to_string(),
            trials: logits.trials.len(),
            classes: &logits.classes,
            bands: &logits.bands,
            seed: cfg.seed(),
            test_fraction: fraction,
            report: &report,
        });
    }
    let mut out = String::new();
    writeln!(out, "functional: {fg}").unwrap();
    writeln!(
        out,
        "trials: {}  classes: {}  bands: {}  seed: {}",
        logits.trials.len(),
        logits.classes.len(),
        logits.bands.len(),
        cfg.seed()
    )
    .unwrap();
    writeln!(out, "{:<10} {:>6} {:>14} {:>14}", "partition", "test", "accuracy", "f1").unwrap();
    for (i, p) in report.partitions.iter().enumerate() {
        writeln!(
            out,
            "{:<10} {:>6} {:>14} {:>14}",
            i + 1,
            p.test_size,
            format_sig(p.accuracy),
            format_sig(p.f1)
        )
        .unwrap();
    }
    writeln!(
        out,
        "accuracy {} ± {}",
        format_sig(report.accuracy),
        format_sig(report.accuracy_std)
    )
    .unwrap();
    writeln!(out, "f1 {} ± {}", format_sig(report.f1), format_sig(report.f1_std)).unwrap();
    Ok(out)
}

fn csv_writer(path: &std::path::Path) -> Result<csv::Writer<std::fs::File>, CliError> {
    csv::Writer::from_path(path).map_err(|e| data_err(path, e))
}

fn write_decisions(
    path: &std::path::Path,
    classes: &[String],
    decisions: &[ensemble::Decision],
    labels: &Labels,
) -> Result<(), CliError> {
    let mut w = csv_writer(path)?;
    let mut header = vec!["trial_id".to_string(), "decision".into(), "label".into()];
    header.extend(classes.iter().map(|c| format!("aggregate_{c}")));
    w.write_record(&header).map_err(|e| data_err(path, e))?;
    for d in decisions {
        let mut row = vec![
            d.trial_id.clone(),
            d.class_id.clone(),
            labels.get(&d.trial_id).unwrap_or("").to_string(),
        ];
        row.extend(d.aggregates.iter().map(|a| a.to_string()));
        w.write_record(&row).map_err(|e| data_err(path, e))?;
    }
    w.flush().map_err(|e| data_err(path, e))
}

struct NetworkArgs {
    edges: Option<PathBuf>,
    tokens: Option<PathBuf>,
    window: Option<usize>,
    affinity: Option<String>,
    dump_edges: Option<PathBuf>,
}

fn network_cmd(cfg: &RunConfig, json: bool, a: NetworkArgs) -> Result<String, CliError> {
    let kind: AffinityKind = match a.affinity {
        Some(s) => s.parse()?,
        None => cfg.params.get("affinity").map(String::as_str).unwrap_or("bf").parse()?,
    };
    let g = match (&a.edges, &a.tokens) {
        (Some(p), _) => WeightedGraph::from_edge_csv_path(p).map_err(|e| match e {
            network::NetworkError::Io(_) | network::NetworkError::Csv(_) => data_err(p, e),
            other => other.into(),
        })?,
        (None, Some(p)) => {
            let window = cfg.param("window", a.window, 10)?;
            WeightedGraph::from_token_file(p, window).map_err(|e| match e {
                network::NetworkError::Io(_) => data_err(p, e),
                other => other.into(),
            })?
        }
        (None, None) => return Err(CliError::Config("network needs --edges or --tokens".into())),
    };
    if let Some(path) = &a.dump_edges {
        let mut w = csv_writer(path)?;
        w.write_record(["src", "dst", "weight"]).map_err(|e| data_err(path, e))?;
        for (s, d, weight) in g.edges() {
            w.write_record([s, d, &format_sig(weight)]).map_err(|e| data_err(path, e))?;
        }
        w.flush().map_err(|e| data_err(path, e))?;
    }
    if g.is_empty() {
        return Err(CliError::Data("the graph has no actors".into()));
    }
    let fg = cfg.functional(1, "network")?;
    let analysis = network::centralities(&g, kind, &fg)?;

    if json {
        #[derive(Serialize)]
        struct Entry<'a> {
            actor: &'a str,
            interval: ivfg_core::Interval,
        }
        #[derive(Serialize)]
        struct Row<'a> {
            actor: &'a str,
            affinities: Vec<Entry<'a>>,
        }
        #[derive(Serialize)]
        struct Out<'a> {
            report: &'a network::CentralityReport,
            iv_affinities: Vec<Row<'a>>,
        }
        let iv = &analysis.intervals;
        let rows = (0..g.len())
            .map(|x| Row {
                actor: &g.actors()[x],
                affinities: iv
                    .row(x)
                    .iter()
                    .enumerate()
                    .filter(|&(y, v)| y != x && v.upper() > 0.0)
                    .map(|(y, &v)| Entry {
                        actor: &g.actors()[y],
                        interval: v,
                    })
                    .collect(),
            })
            .collect();
        return output::json(&Out {
            report: &analysis.report,
            iv_affinities: rows,
        });
    }
    let mut out = String::from("actor,asymmetry,altruism,egoism,generosity\n");
    for c in &analysis.report.actors {
        writeln!(
            out,
            "{},{},{},{},{}",
            c.actor,
            format_sig(c.asymmetry),
            format_sig(c.altruism),
            format_sig(c.egoism),
            format_sig(c.generosity)
        )
        .unwrap();
    }
    Ok(out)
}

struct SynthArgs {
    out_dir: PathBuf,
    trials: Option<usize>,
    classes: Option<usize>,
    bands: Option<usize>,
    classifiers: Option<usize>,
}

fn synth(cfg: &RunConfig, a: SynthArgs) -> Result<String, CliError> {
    let d = SyntheticSpec::default();
    let spec = SyntheticSpec {
        trials: cfg.param("trials", a.trials, d.trials)?,
        classes: a.classes.unwrap_or(d.classes),
        bands: a.bands.unwrap_or(d.bands),
        classifiers: a.classifiers.unwrap_or(d.classifiers),
        seed: cfg.seed.unwrap_or(d.seed),
    };
    if spec.trials == 0 || spec.classes < 2 || spec.bands == 0 || spec.classifiers == 0 {
        return Err(CliError::Config(
            "synth needs trials, bands, classifiers >= 1 and classes >= 2".into(),
        ));
    }
    std::fs::create_dir_all(&a.out_dir).map_err(|e| data_err(&a.out_dir, e))?;
    let (table, labels) = ensemble::synthetic(&spec);
    let scores = a.out_dir.join("scores.csv");
    let labels_path = a.out_dir.join("labels.csv");
    let file = |p: &PathBuf| std::fs::File::create(p).map_err(|e| data_err(p, e));
    table.write_csv(file(&scores)?).map_err(|e| data_err(&scores, e))?;
    labels.write_csv(file(&labels_path)?).map_err(|e| data_err(&labels_path, e))?;
    Ok(format!(
        "wrote {} and {} ({} trials, seed {})\n",
        scores.display(),
        labels_path.display(),
        spec.trials,
        spec.seed
    ))
}

fn run(cli: Cli) -> Result<(String, Option<CliError>), CliError> {
    if let Some(threads) = cli.global.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| CliError::Config(format!("--threads: {e}")))?;
    }
    let cfg = cli.global.run_config()?;
    let json = cli.global.json;
    let done = |s: String| (s, None);
    match cli.command {
        Command::Aggregate {
            intervals,
            input,
            trace,
        } => aggregate(&cfg, json, intervals, input, trace).map(done),
        Command::Check { samples, n } => check(&cfg, json, samples, n),
        Command::Fuse {
            scores,
            labels,
            partitions,
            test_fraction,
            rescale,
            decisions,
        } => fuse(
            &cfg,
            json,
            FuseArgs {
                scores,
                labels,
                partitions,
                test_fraction,
                rescale,
                decisions,
            },
        )
        .map(done),
        Command::Network {
            edges,
            tokens,
            window,
            affinity,
            dump_edges,
        } => network_cmd(
            &cfg,
            json,
            NetworkArgs {
                edges,
                tokens,
                window,
                affinity,
                dump_edges,
            },
        )
        .map(done),
        Command::Synth {
            out_dir,
            trials,
            classes,
            bands,
            classifiers,
        } => synth(
            &cfg,
            SynthArgs {
                out_dir,
                trials,
                classes,
                bands,
                classifiers,
            },
        )
        .map(done),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn"))
        .format_timestamp(None)
        .init();
    let cli = Cli::parse();
    match run(cli) {
        Ok((text, status)) => {
            print!("{text}");
            match status {
                None => ExitCode::SUCCESS,
                Some(e) => {
                    eprintln!("error: {e}");
                    e.exit_code()
                }
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
