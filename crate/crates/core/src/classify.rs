//! Neuron labeling, classification and evaluation.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::seed::Seed;
use crate::som::{squared_distance, Som, SomError, TrainConfig};
use crate::topology::{MacroClass, TopologyClass};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ClassifyError {
    #[error("dataset is empty")]
    EmptyDataset,
    #[error("model has no labeled neurons")]
    NoLabeledNeurons,
    #[error("{labels} labels for {samples} samples")]
    LabelCountMismatch { labels: usize, samples: usize },
    #[error("model labeled in {model} space cannot be evaluated in {requested} space")]
    IncompatibleSpace { model: LabelSpace, requested: LabelSpace },
    #[error("unknown label {0:?}")]
    UnknownLabel(String),
    #[error(transparent)]
    Som(#[from] SomError),
}

/// Dataset label: regular graphs split by degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum FineLabel {
    #[serde(rename = "REG3")]
    Reg3,
    #[serde(rename = "REG4")]
    Reg4,
    #[serde(rename = "REG5")]
    Reg5,
    #[serde(rename = "RANDOM")]
    Random,
    #[serde(rename = "SCALEFREE")]
    ScaleFree,
}

impl FineLabel {
    pub const ALL: [FineLabel; 5] =
        [FineLabel::Reg3, FineLabel::Reg4, FineLabel::Reg5, FineLabel::Random, FineLabel::ScaleFree];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        FINE_NAMES[self.index()]
    }

    pub fn macro_class(self) -> MacroClass {
        match self {
            FineLabel::Reg3 | FineLabel::Reg4 | FineLabel::Reg5 => MacroClass::Regular,
            FineLabel::Random => MacroClass::Random,
            FineLabel::ScaleFree => MacroClass::ScaleFree,
        }
    }

    /// Maps a generator class onto the dataset label, if it has one.
    pub fn of_topology(class: &TopologyClass) -> Option<FineLabel> {
        match class {
            TopologyClass::Regular { r: 3 } => Some(FineLabel::Reg3),
            TopologyClass::Regular { r: 4 } => Some(FineLabel::Reg4),
            TopologyClass::Regular { r: 5 } => Some(FineLabel::Reg5),
            TopologyClass::Regular { .. } => None,
            TopologyClass::Random { .. } => Some(FineLabel::Random),
            TopologyClass::ScaleFree { .. } => Some(FineLabel::ScaleFree),
        }
    }
}

const FINE_NAMES: [&str; 5] = ["REG3", "REG4", "REG5", "RANDOM", "SCALEFREE"];
const MACRO_NAMES: [&str; 3] = ["REGULAR", "RANDOM", "SCALEFREE"];

impl fmt::Display for FineLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FineLabel {
    type Err = ClassifyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        FineLabel::ALL
            .into_iter()
            .find(|l| l.name() == s)
            .ok_or_else(|| ClassifyError::UnknownLabel(s.to_string()))
    }
}

/// Which classes labels and predictions live in. Class indices follow the
/// canonical order REG3 < REG4 < REG5 < RANDOM < SCALEFREE (FINE) or
/// REGULAR < RANDOM < SCALEFREE (MACRO).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LabelSpace {
    #[serde(rename = "MACRO")]
    Macro,
    #[serde(rename = "FINE")]
    Fine,
}

impl LabelSpace {
    pub fn class_names(self) -> &'static [&'static str] {
        match self {
            LabelSpace::Macro => &MACRO_NAMES,
            LabelSpace::Fine => &FINE_NAMES,
        }
    }

    pub fn num_classes(self) -> usize {
        self.class_names().len()
    }

    pub fn class_of(self, label: FineLabel) -> usize {
        match self {
            LabelSpace::Fine => label.index(),
            LabelSpace::Macro => label.macro_class() as usize,
        }
    }

    /// Converts a class index of `self` into `target`, when `target` is the
    /// same space or coarser.
    pub fn project(self, class: usize, target: LabelSpace) -> Option<usize> {
        match (self, target) {
            (a, b) if a == b => Some(class),
            (LabelSpace::Fine, LabelSpace::Macro) => Some(LabelSpace::Macro.class_of(FineLabel::ALL[class])),
            _ => None,
        }
    }
}

impl fmt::Display for LabelSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LabelSpace::Macro => "MACRO",
            LabelSpace::Fine => "FINE",
        })
    }
}

impl FromStr for LabelSpace {
    type Err = ClassifyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_uppercase().as_str() {
            "MACRO" => Ok(LabelSpace::Macro),
            "FINE" => Ok(LabelSpace::Fine),
            _ => Err(ClassifyError::UnknownLabel(s.to_string())),
        }
    }
}

/// Provenance carried alongside a trained map.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct TrainingMeta {
    pub seed: Option<Seed>,
    pub config: Option<TrainConfig>,
    pub initial_qe: Option<f64>,
    pub qe_history: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrainedModel {
    pub som: Som,
    pub space: LabelSpace,
    /// Class index in `space` per neuron; `None` for neurons that were no
    /// sample's best match.
    pub neuron_labels: Vec<Option<usize>>,
    pub meta: TrainingMeta,
}

fn check_labeled<S: AsRef<[f64]>>(labels: &[FineLabel], data: &[S]) -> Result<(), ClassifyError> {
    if data.is_empty() {
        return Err(ClassifyError::EmptyDataset);
    }
    if labels.len() != data.len() {
        return Err(ClassifyError::LabelCountMismatch { labels: labels.len(), samples: data.len() });
    }
    Ok(())
}

/// Per-neuron counts of best-matched samples, indexed by class of `space`.
fn bmu_histogram<S: AsRef<[f64]>>(
    som: &Som,
    labels: &[FineLabel],
    data: &[S],
    space: LabelSpace,
) -> Result<Vec<Vec<usize>>, ClassifyError> {
    check_labeled(labels, data)?;
    let mut hist = vec![vec![0; space.num_classes()]; som.neurons()];
    for (label, x) in labels.iter().zip(data) {
        let c = som.bmu(x.as_ref())?;
        hist[c][space.class_of(*label)] += 1;
    }
    Ok(hist)
}

/// Majority vote per neuron over the samples it best matches. Ties go to
/// the class earliest in canonical order.
pub fn label_neurons<S: AsRef<[f64]>>(
    som: Som,
    labels: &[FineLabel],
    data: &[S],
    space: LabelSpace,
) -> Result<TrainedModel, ClassifyError> {
    let hist = bmu_histogram(&som, labels, data, space)?;
    let neuron_labels = hist
        .iter()
        .map(|counts| {
            let mut best: Option<(usize, usize)> = None;
            for (class, &n) in counts.iter().enumerate() {
                if n > 0 && best.map_or(true, |(_, m)| n > m) {
                    best = Some((class, n));
                }
            }
            best.map(|(class, _)| class)
        })
        .collect();
    Ok(TrainedModel { som, space, neuron_labels, meta: TrainingMeta::default() })
}

impl TrainedModel {
    pub fn with_meta(mut self, meta: TrainingMeta) -> Self {
        self.meta = meta;
        self
    }

    pub fn labeled_neurons(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.neuron_labels.iter().enumerate().filter_map(|(j, l)| l.map(|c| (j, c)))
    }

    /// Nearest labeled neuron and its class, lowest index on ties.
    pub fn nearest_labeled(&self, x: &[f64]) -> Result<(usize, usize), ClassifyError> {
        if x.len() != self.som.dim() {
            return Err(SomError::DimensionMismatch { expected: self.som.dim(), got: x.len() }.into());
        }
        let mut best: Option<(usize, usize, f64)> = None;
        for (j, class) in self.labeled_neurons() {
            let d = squared_distance(&self.som.weights()[j], x);
            if best.map_or(true, |(_, _, bd)| d < bd) {
                best = Some((j, class, d));
            }
        }
        best.map(|(j, c, _)| (j, c)).ok_or(ClassifyError::NoLabeledNeurons)
    }

    /// Predicted class index in the model's label space.
    pub fn classify(&self, x: &[f64]) -> Result<usize, ClassifyError> {
        Ok(self.nearest_labeled(x)?.1)
    }

    pub fn class_name(&self, class: usize) -> &'static str {
        self.space.class_names()[class]
    }

    pub fn evaluate<S: AsRef<[f64]>>(
        &self,
        labels: &[FineLabel],
        data: &[S],
        space: LabelSpace,
    ) -> Result<Evaluation, ClassifyError> {
        check_labeled(labels, data)?;
        if self.space.project(0, space).is_none() {
            return Err(ClassifyError::IncompatibleSpace { model: self.space, requested: space });
        }
        let k = space.num_classes();
        let mut counts = vec![vec![0; k]; k];
        for (label, x) in labels.iter().zip(data) {
            let predicted = self.space.project(self.classify(x.as_ref())?, space).expect("checked above");
            counts[space.class_of(*label)][predicted] += 1;
        }
        let confusion = ConfusionMatrix { space, counts };
        let purity = confusion.trace() as f64 / confusion.total() as f64;
        Ok(Evaluation { confusion, purity })
    }

    /// Per-neuron counts of best-matched samples for each FINE class.
    pub fn merge_report<S: AsRef<[f64]>>(
        &self,
        labels: &[FineLabel],
        data: &[S],
    ) -> Result<Vec<Vec<usize>>, ClassifyError> {
        bmu_histogram(&self.som, labels, data, LabelSpace::Fine)
    }
}

/// Rows are true classes, columns predicted classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfusionMatrix {
    pub space: LabelSpace,
    pub counts: Vec<Vec<usize>>,
}

impl ConfusionMatrix {
    pub fn trace(&self) -> usize {
        (0..self.counts.len()).map(|i| self.counts[i][i]).sum()
    }

    pub fn total(&self) -> usize {
        self.counts.iter().flatten().sum()
    }

    pub fn to_csv(&self) -> String {
        let names = self.space.class_names();
        let mut out = format!("truth\\predicted,{}\n", names.join(","));
        for (name, row) in names.iter().zip(&self.counts) {
            let cells: Vec<String> = row.iter().map(|c| c.to_string()).collect();
            out.push_str(&format!("{name},{}\n", cells.join(",")));
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Evaluation {
    pub confusion: ConfusionMatrix,
    pub purity: f64,
}
