//! Versioned model documents (JSON).

use serde::{Deserialize, Serialize};

use super::PipelineError;
use crate::classify::TrainedModel;

pub const MODEL_FORMAT: &str = "toposom-model";
pub const MODEL_VERSION: u32 = 1;

/// Optional z-score standardization applied to signatures before they reach
/// the map. Zero-variance components are only centered.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Standardizer {
    pub mean: Vec<f64>,
    pub scale: Vec<f64>,
}

impl Standardizer {
    pub fn fit(data: &[Vec<f64>]) -> Standardizer {
        let dim = data[0].len();
        let n = data.len() as f64;
        let mut mean = vec![0.0; dim];
        for x in data {
            mean.iter_mut().zip(x).for_each(|(m, v)| *m += v);
        }
        mean.iter_mut().for_each(|m| *m /= n);
        let mut var = vec![0.0; dim];
        for x in data {
            var.iter_mut().zip(x).zip(&mean).for_each(|((s, v), m)| *s += (v - m) * (v - m));
        }
        let scale = var.iter().map(|s| (s / n).sqrt()).map(|sd| if sd > 0.0 { sd } else { 1.0 }).collect();
        Standardizer { mean, scale }
    }

    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        x.iter().zip(&self.mean).zip(&self.scale).map(|((v, m), s)| (v - m) / s).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelFile {
    pub format: String,
    pub version: u32,
    pub model: TrainedModel,
    pub standardizer: Option<Standardizer>,
    pub final_qe: Option<f64>,
}

impl ModelFile {
    pub fn new(model: TrainedModel, standardizer: Option<Standardizer>) -> Self {
        let final_qe = model.meta.qe_history.last().copied();
        ModelFile { format: MODEL_FORMAT.into(), version: MODEL_VERSION, model, standardizer, final_qe }
    }

    /// Input dimension expected from raw signatures.
    pub fn dim(&self) -> usize {
        self.model.som.dim()
    }

    /// Maps a raw signature into the map's feature space.
    pub fn features(&self, raw: &[f64]) -> Vec<f64> {
        match &self.standardizer {
            Some(s) => s.apply(raw),
            None => raw.to_vec(),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("model serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<ModelFile, PipelineError> {
        let m: ModelFile = serde_json::from_str(text)?;
        if m.format != MODEL_FORMAT {
            return Err(PipelineError::Model(format!("unknown format {:?}", m.format)));
        }
        if m.version != MODEL_VERSION {
            return Err(PipelineError::Model(format!("unsupported model version {}", m.version)));
        }
        if m.model.neuron_labels.len() != m.model.som.neurons() {
            return Err(PipelineError::Model("neuron label count does not match neuron count".into()));
        }
        if let Some(s) = &m.standardizer {
            if s.mean.len() != m.dim() || s.scale.len() != m.dim() {
                return Err(PipelineError::Model("standardizer dimension does not match weights".into()));
            }
        }
        Ok(m)
    }
}
