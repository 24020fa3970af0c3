//! End-to-end commands: dataset generation, training, evaluation,
//! single-graph classification and 2-D projection, plus their file formats.

pub mod dataset;
pub mod graphfile;
pub mod model;
pub mod projection;

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::classify::{label_neurons, ClassifyError, Evaluation, LabelSpace, TrainingMeta};
use crate::seed::Seed;
use crate::som::{init_som, HexLattice, SomError, TrainConfig};
use crate::spectral::{signature_of, SpectralError, SpectralSignature};
use crate::topology::{Graph, GraphError};

pub use dataset::{generate, Dataset, DatasetRecord, GenOptions, GenSummary};
pub use graphfile::{format_graph, parse_graph};
pub use model::{ModelFile, Standardizer};
pub use projection::{PcaBasis, PointKind, ProjectionRecord};

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("line {line}: {msg}")]
    Parse { line: u64, msg: String },
    #[error("invalid model file: {0}")]
    Model(String),
    #[error("model expects {model}-dimensional signatures, dataset has {dataset}")]
    DimensionMismatch { model: usize, dataset: usize },
    #[error("graph has {graph} nodes but the model expects {model}")]
    NodeCountMismatch { graph: usize, model: usize },
    #[error("covariance is degenerate: all signatures coincide")]
    DegenerateCovariance,
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error(transparent)]
    Som(#[from] SomError),
    #[error(transparent)]
    Classify(#[from] ClassifyError),
}

impl PipelineError {
    /// Process exit status: 1 usage, 2 data/parse, 3 numeric failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            PipelineError::Usage(_) => 1,
            PipelineError::Graph(
                GraphError::InfeasibleDegree { .. }
                | GraphError::InvalidProbability(_)
                | GraphError::InvalidAttachment { .. }
                | GraphError::EmptyGraph,
            ) => 1,
            PipelineError::Som(SomError::InvalidConfig(_) | SomError::InvalidLattice(_)) => 1,
            PipelineError::Graph(GraphError::GenerationExhausted(_)) => 3,
            PipelineError::Spectral(SpectralError::NotConverged(_)) | PipelineError::DegenerateCovariance => 3,
            _ => 2,
        }
    }
}

impl From<csv::Error> for PipelineError {
    fn from(e: csv::Error) -> Self {
        let line = e.position().map_or(0, |p| p.line());
        match e.into_kind() {
            csv::ErrorKind::Io(source) => PipelineError::Io { path: "<csv>".into(), source },
            kind => PipelineError::Parse { line, msg: format!("{kind:?}") },
        }
    }
}

impl From<serde_json::Error> for PipelineError {
    fn from(e: serde_json::Error) -> Self {
        PipelineError::Parse { line: e.line() as u64, msg: e.to_string() }
    }
}

fn read_text(path: &Path) -> Result<String, PipelineError> {
    fs::read_to_string(path).map_err(|source| PipelineError::Io { path: path.into(), source })
}

fn write_text(path: &Path, text: &str) -> Result<(), PipelineError> {
    fs::write(path, text).map_err(|source| PipelineError::Io { path: path.into(), source })
}

pub fn read_dataset(path: &Path) -> Result<Dataset, PipelineError> {
    Dataset::read_csv(read_text(path)?.as_bytes())
}

pub fn write_dataset(path: &Path, ds: &Dataset) -> Result<(), PipelineError> {
    let mut buf = Vec::new();
    ds.write_csv(&mut buf)?;
    fs::write(path, buf).map_err(|source| PipelineError::Io { path: path.into(), source })
}

pub fn read_model(path: &Path) -> Result<ModelFile, PipelineError> {
    ModelFile::from_json(&read_text(path)?)
}

pub fn write_model(path: &Path, model: &ModelFile) -> Result<(), PipelineError> {
    write_text(path, &model.to_json())
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrainOptions {
    pub epochs: usize,
    pub neurons: usize,
    pub seed: Seed,
    pub space: LabelSpace,
    pub standardize: bool,
    pub alpha0: f64,
    pub alpha_min: f64,
    /// Defaults to the lattice diameter (at least 1) when `None`.
    pub sigma0: Option<f64>,
    pub sigma_min: f64,
    pub init_jitter: f64,
}

impl Default for TrainOptions {
    fn default() -> Self {
        let c = TrainConfig::default();
        TrainOptions {
            epochs: c.epochs,
            neurons: 6,
            seed: Seed(0),
            space: LabelSpace::Macro,
            standardize: false,
            alpha0: c.alpha0,
            alpha_min: c.alpha_min,
            sigma0: None,
            sigma_min: c.sigma_min,
            init_jitter: c.init_jitter,
        }
    }
}

impl TrainOptions {
    pub fn lattice(&self) -> Result<HexLattice, PipelineError> {
        Ok(if self.neurons == 6 { HexLattice::default() } else { HexLattice::with_neurons(self.neurons)? })
    }

    pub fn config(&self, lattice: &HexLattice) -> TrainConfig {
        TrainConfig {
            epochs: self.epochs,
            alpha0: self.alpha0,
            alpha_min: self.alpha_min,
            sigma0: self.sigma0.unwrap_or_else(|| lattice.diameter().max(1.0)),
            sigma_min: self.sigma_min,
            shuffle_seed: self.seed,
            init_jitter: self.init_jitter,
        }
    }
}

/// A trained model together with the labeled, untrained map it started from.
#[derive(Debug, Clone)]
pub struct TrainOutcome {
    pub initial: ModelFile,
    pub trained: ModelFile,
}

impl TrainOutcome {
    /// `epoch,quantization_error`; epoch 0 is the initialized map.
    pub fn qe_csv(&self) -> String {
        let meta = &self.trained.model.meta;
        let mut out = String::from("epoch,quantization_error\n");
        if let Some(q) = meta.initial_qe {
            let _ = writeln!(out, "0,{}", dataset::format_real(q));
        }
        for (t, q) in meta.qe_history.iter().enumerate() {
            let _ = writeln!(out, "{},{}", t + 1, dataset::format_real(*q));
        }
        out
    }
}

pub fn train(ds: &Dataset, opts: &TrainOptions) -> Result<TrainOutcome, PipelineError> {
    if ds.is_empty() {
        return Err(SomError::EmptyDataset.into());
    }
    let lattice = opts.lattice()?;
    let config = opts.config(&lattice);
    config.validate()?;
    let raw = ds.features();
    let standardizer = opts.standardize.then(|| Standardizer::fit(&raw));
    let data: Vec<Vec<f64>> = match &standardizer {
        Some(s) => raw.iter().map(|x| s.apply(x)).collect(),
        None => raw,
    };
    let labels = ds.labels();

    let som = init_som(lattice, &data, &config)?;
    let initial_qe = som.quantization_error(&data)?;
    let init_meta = TrainingMeta {
        seed: Some(opts.seed),
        config: Some(config.clone()),
        initial_qe: Some(initial_qe),
        qe_history: Vec::new(),
    };
    let initial = label_neurons(som.clone(), &labels, &data, opts.space)?.with_meta(init_meta.clone());

    let mut som = som;
    let qe_history = som.train(&data, &config)?;
    let trained = label_neurons(som, &labels, &data, opts.space)?.with_meta(TrainingMeta { qe_history, ..init_meta });

    Ok(TrainOutcome {
        initial: ModelFile::new(initial, standardizer.clone()),
        trained: ModelFile::new(trained, standardizer),
    })
}

fn check_dim(model: &ModelFile, ds: &Dataset) -> Result<(), PipelineError> {
    if model.dim() != ds.dim {
        return Err(PipelineError::DimensionMismatch { model: model.dim(), dataset: ds.dim });
    }
    Ok(())
}

fn model_features(model: &ModelFile, ds: &Dataset) -> Vec<Vec<f64>> {
    ds.records.iter().map(|r| model.features(r.signature.values())).collect()
}

#[derive(Debug, Clone)]
pub struct EvalReport {
    pub space: LabelSpace,
    pub evaluation: Evaluation,
    pub neuron_labels: Vec<Option<&'static str>>,
    pub merge: Vec<Vec<usize>>,
}

impl EvalReport {
    pub fn purity(&self) -> f64 {
        self.evaluation.purity
    }

    pub fn merge_csv(&self) -> String {
        let mut out = String::from("neuron,label,REG3,REG4,REG5,RANDOM,SCALEFREE\n");
        for (j, (label, counts)) in self.neuron_labels.iter().zip(&self.merge).enumerate() {
            let cells: Vec<String> = counts.iter().map(|c| c.to_string()).collect();
            let _ = writeln!(out, "{j},{},{}", label.unwrap_or("UNLABELED"), cells.join(","));
        }
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let total = self.evaluation.confusion.total();
        let _ = writeln!(out, "space: {}", self.space);
        let _ = writeln!(out, "samples: {total}");
        let _ = writeln!(
            out,
            "purity: {} ({}/{total})",
            dataset::format_real(self.evaluation.purity),
            self.evaluation.confusion.trace()
        );
        out.push_str("\nconfusion matrix (rows = truth, columns = predicted)\n");
        out.push_str(&self.evaluation.confusion.to_csv());
        out.push_str("\nper-neuron sample counts by fine class\n");
        out.push_str(&self.merge_csv());
        out
    }
}

pub fn evaluate(model: &ModelFile, ds: &Dataset, space: LabelSpace) -> Result<EvalReport, PipelineError> {
    check_dim(model, ds)?;
    let data = model_features(model, ds);
    let labels = ds.labels();
    let evaluation = model.model.evaluate(&labels, &data, space)?;
    let merge = model.model.merge_report(&labels, &data)?;
    let neuron_labels = model
        .model
        .neuron_labels
        .iter()
        .map(|l| l.map(|c| model.model.class_name(c)))
        .collect();
    Ok(EvalReport { space, evaluation, neuron_labels, merge })
}

#[derive(Debug, Clone, PartialEq)]
pub struct Prediction {
    pub signature: SpectralSignature,
    pub neuron: usize,
    pub label: &'static str,
}

pub fn classify_graph(model: &ModelFile, g: &Graph) -> Result<Prediction, PipelineError> {
    if g.n() != model.dim() {
        return Err(PipelineError::NodeCountMismatch { graph: g.n(), model: model.dim() });
    }
    let signature = signature_of(g)?;
    let (neuron, class) = model.model.nearest_labeled(&model.features(signature.values()))?;
    Ok(Prediction { signature, neuron, label: model.model.class_name(class) })
}

/// Projects every training vector and every neuron weight onto the two
/// leading principal axes of the training vectors.
pub fn project(model: &ModelFile, ds: &Dataset) -> Result<(PcaBasis, Vec<ProjectionRecord>), PipelineError> {
    check_dim(model, ds)?;
    let data = model_features(model, ds);
    let basis = PcaBasis::fit(&data)?;
    let mut records: Vec<ProjectionRecord> = ds
        .records
        .iter()
        .zip(&data)
        .map(|(r, x)| {
            let (px, py) = basis.project(x);
            ProjectionRecord { kind: PointKind::TrainVector, id: r.pattern_id, x: px, y: py, label: r.fine_label.to_string() }
        })
        .collect();
    for (j, w) in model.model.som.weights().iter().enumerate() {
        let (px, py) = basis.project(w);
        let label = model.model.neuron_labels[j].map_or("UNLABELED", |c| model.model.class_name(c));
        records.push(ProjectionRecord { kind: PointKind::Neuron, id: j as u64, x: px, y: py, label: label.into() });
    }
    Ok((basis, records))
}

pub fn cmd_gen(opts: &GenOptions, out: &Path) -> Result<GenSummary, PipelineError> {
    let (ds, summary) = generate(opts)?;
    write_dataset(out, &ds)?;
    Ok(summary)
}

/// Writes the trained model to `out`, the per-epoch QE log to `qe_log` and,
/// if requested, the untrained initial model to `init_out`.
pub fn cmd_train(
    dataset: &Path,
    opts: &TrainOptions,
    out: &Path,
    qe_log: &Path,
    init_out: Option<&Path>,
) -> Result<TrainOutcome, PipelineError> {
    let ds = read_dataset(dataset)?;
    let outcome = train(&ds, opts)?;
    write_model(out, &outcome.trained)?;
    write_text(qe_log, &outcome.qe_csv())?;
    if let Some(p) = init_out {
        write_model(p, &outcome.initial)?;
    }
    Ok(outcome)
}

/// Evaluates and, when `out_dir` is given, writes `report.txt`,
/// `confusion.csv` and `merge_report.csv` there.
pub fn cmd_eval(model: &Path, dataset: &Path, space: LabelSpace, out_dir: Option<&Path>) -> Result<EvalReport, PipelineError> {
    let report = evaluate(&read_model(model)?, &read_dataset(dataset)?, space)?;
    if let Some(dir) = out_dir {
        fs::create_dir_all(dir).map_err(|source| PipelineError::Io { path: dir.into(), source })?;
        write_text(&dir.join("report.txt"), &report.to_text())?;
        write_text(&dir.join("confusion.csv"), &report.evaluation.confusion.to_csv())?;
        write_text(&dir.join("merge_report.csv"), &report.merge_csv())?;
    }
    Ok(report)
}

pub fn cmd_spectrum(graph: &Path) -> Result<SpectralSignature, PipelineError> {
    Ok(signature_of(&parse_graph(&read_text(graph)?)?)?)
}

pub fn cmd_classify(model: &Path, graph: &Path) -> Result<Prediction, PipelineError> {
    classify_graph(&read_model(model)?, &parse_graph(&read_text(graph)?)?)
}

pub fn cmd_project(model: &Path, dataset: &Path, out: &Path, svg: Option<&Path>) -> Result<Vec<ProjectionRecord>, PipelineError> {
    let (_, records) = project(&read_model(model)?, &read_dataset(dataset)?)?;
    write_text(out, &projection::projection_csv(&records))?;
    if let Some(p) = svg {
        write_text(p, &projection::projection_svg(&records))?;
    }
    Ok(records)
}
