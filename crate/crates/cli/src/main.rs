use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use toposom::pipeline::{self, GenOptions, PipelineError, TrainOptions};
use toposom::{LabelSpace, Seed};

#[derive(Parser)]
#[command(name = "toposom", version, about = "Classify network topologies from adjacency spectra with a hexagonal SOM")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a labeled dataset of topology spectra (CSV).
    Gen {
        #[arg(long, default_value_t = 56)]
        nodes: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Pattern counts for REG3,REG4,REG5,RANDOM,SCALEFREE.
        #[arg(long, value_delimiter = ',', default_values_t = [100, 100, 100, 300, 300])]
        counts: Vec<usize>,
        /// Edge probability of the random family (default 4/(nodes-1)).
        #[arg(long)]
        edge_prob: Option<f64>,
        /// Edges added per new node in the scale-free family.
        #[arg(long, default_value_t = 2)]
        attach: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Train a self-organizing map on a dataset and label its neurons.
    Train {
        dataset: PathBuf,
        #[arg(long, default_value_t = 2000)]
        epochs: usize,
        #[arg(long, default_value_t = 6)]
        neurons: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Label space used for neuron labels (MACRO or FINE).
        #[arg(long, default_value = "MACRO")]
        space: LabelSpace,
        /// Standardize each eigenvalue component before training.
        #[arg(long)]
        zscore: bool,
        #[arg(long)]
        out: PathBuf,
        /// Per-epoch quantization error log (default: <out>.qe.csv).
        #[arg(long)]
        qe_log: Option<PathBuf>,
        /// Also write the labeled, untrained initial map.
        #[arg(long)]
        init_out: Option<PathBuf>,
    },
    /// Score a model against a labeled dataset.
    Eval {
        model: PathBuf,
        dataset: PathBuf,
        #[arg(long, default_value = "MACRO")]
        space: LabelSpace,
        /// Directory for report.txt, confusion.csv and merge_report.csv.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Classify one edge-list graph: `classify MODEL GRAPH`, or
    /// `classify --spectrum-only GRAPH` to print its sorted spectrum.
    Classify {
        #[arg(required = true, num_args = 1..=2)]
        inputs: Vec<PathBuf>,
        #[arg(long)]
        spectrum_only: bool,
    },
    /// Project training vectors and neuron weights onto two principal axes.
    Project {
        model: PathBuf,
        dataset: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
}

fn default_qe_log(out: &Path) -> PathBuf {
    let mut name = out.file_name().unwrap_or_default().to_os_string();
    name.push(".qe.csv");
    out.with_file_name(name)
}

fn fmt4(v: f64) -> String {
    let s = format!("{v:.4}");
    if s == "-0.0000" { "0.0000".into() } else { s }
}

fn run(cli: Cli) -> Result<(), PipelineError> {
    match cli.command {
        Command::Gen { nodes, seed, counts, edge_prob, attach, out } => {
            let opts = GenOptions {
                nodes,
                counts: counts.try_into().map_err(|_| PipelineError::Usage("--counts takes 5 values".into()))?,
                edge_probability: edge_prob.unwrap_or(4.0 / (nodes.max(2) - 1) as f64),
                attach_edges: attach,
                seed: Seed(seed),
            };
            let summary = pipeline::cmd_gen(&opts, &out)?;
            println!("wrote {} patterns to {}", summary.patterns, out.display());
            println!("per label (REG3,REG4,REG5,RANDOM,SCALEFREE): {:?}", summary.per_label);
            println!("connected: {}/{} ({:.3})", summary.connected, summary.patterns, summary.connectivity_rate());
        }
        Command::Train { dataset, epochs, neurons, seed, space, zscore, out, qe_log, init_out } => {
            let opts = TrainOptions { epochs, neurons, seed: Seed(seed), space, standardize: zscore, ..Default::default() };
            let qe_log = qe_log.unwrap_or_else(|| default_qe_log(&out));
            let outcome = pipeline::cmd_train(&dataset, &opts, &out, &qe_log, init_out.as_deref())?;
            let meta = &outcome.trained.model.meta;
            println!("trained {} neurons for {epochs} epochs", outcome.trained.model.som.neurons());
            println!(
                "quantization error: {} -> {}",
                fmt4(meta.initial_qe.unwrap_or(f64::NAN)),
                fmt4(meta.qe_history.last().copied().unwrap_or(f64::NAN))
            );
            let labels: Vec<&str> = outcome
                .trained
                .model
                .neuron_labels
                .iter()
                .map(|l| l.map_or("UNLABELED", |c| outcome.trained.model.class_name(c)))
                .collect();
            println!("neuron labels: {}", labels.join(" "));
            println!("wrote {} and {}", out.display(), qe_log.display());
        }
        Command::Eval { model, dataset, space, out } => {
            let report = pipeline::cmd_eval(&model, &dataset, space, out.as_deref())?;
            print!("{}", report.to_text());
        }
        Command::Classify { inputs, spectrum_only } => {
            if spectrum_only {
                let [graph] = inputs.as_slice() else {
                    return Err(PipelineError::Usage("--spectrum-only takes a single GRAPH".into()));
                };
                let sig = pipeline::cmd_spectrum(graph)?;
                let values: Vec<String> = sig.values().iter().map(|v| fmt4(*v)).collect();
                println!("[{}]", values.join(", "));
            } else {
                let [model, graph] = inputs.as_slice() else {
                    return Err(PipelineError::Usage("expected MODEL GRAPH".into()));
                };
                let p = pipeline::cmd_classify(model, graph)?;
                println!("{}", p.label);
            }
        }
        Command::Project { model, dataset, out, svg } => {
            let records = pipeline::cmd_project(&model, &dataset, &out, svg.as_deref())?;
            println!("wrote {} projected points to {}", records.len(), out.display());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
