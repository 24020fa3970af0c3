//! Self-organizing feature map on a hexagonal lattice.
//!
//! Online Kohonen training: for each sample in a per-epoch shuffled order,
//! find the best-matching unit `c` and move every neuron `j` by
//!
//! ```text
//! w_j <- w_j + alpha(t) * h(d(j, c), sigma(t)) * (x - w_j)
//! alpha(t) = max(alpha_min, alpha0 * (1 - t / T))
//! sigma(t) = max(sigma_min, sigma0 * (1 - t / T))
//! h(d, sigma) = exp(-d^2 / (2 sigma^2))
//! ```
//!
//! where `d` is the axial hex distance between lattice cells.

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::seed::{stream, Seed};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SomError {
    #[error("dataset is empty")]
    EmptyDataset,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("neuron index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("invalid training configuration: {0}")]
    InvalidConfig(String),
    #[error("invalid lattice: {0}")]
    InvalidLattice(String),
}

/// Neuron positions in axial hex coordinates `(q, r)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HexLattice {
    coords: Vec<(i32, i32)>,
}

impl HexLattice {
    pub fn new(coords: Vec<(i32, i32)>) -> Result<Self, SomError> {
        if coords.is_empty() {
            return Err(SomError::InvalidLattice("no neurons".into()));
        }
        for (i, a) in coords.iter().enumerate() {
            if coords[..i].contains(a) {
                return Err(SomError::InvalidLattice(format!("duplicate cell {a:?}")));
            }
        }
        Ok(HexLattice { coords })
    }

    /// Row-major patch of `m` cells, `floor(sqrt(m))` rows wide enough to
    /// hold them. Six neurons give two rows of three.
    pub fn with_neurons(m: usize) -> Result<Self, SomError> {
        if m == 0 {
            return Err(SomError::InvalidLattice("no neurons".into()));
        }
        let rows = ((m as f64).sqrt().floor() as usize).max(1);
        let cols = m.div_ceil(rows);
        let coords = (0..m).map(|k| ((k % cols) as i32, (k / cols) as i32)).collect();
        HexLattice::new(coords)
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn coords(&self) -> &[(i32, i32)] {
        &self.coords
    }

    pub fn distance(&self, a: usize, b: usize) -> Result<f64, SomError> {
        let ca = *self.coords.get(a).ok_or(SomError::IndexOutOfRange(a))?;
        let cb = *self.coords.get(b).ok_or(SomError::IndexOutOfRange(b))?;
        Ok(hex_distance(ca, cb) as f64)
    }

    pub fn diameter(&self) -> f64 {
        let mut d = 0;
        for &a in &self.coords {
            for &b in &self.coords {
                d = d.max(hex_distance(a, b));
            }
        }
        d as f64
    }
}

impl Default for HexLattice {
    fn default() -> Self {
        HexLattice { coords: vec![(0, 0), (1, 0), (2, 0), (0, 1), (1, 1), (2, 1)] }
    }
}

fn hex_distance(a: (i32, i32), b: (i32, i32)) -> i32 {
    let dq = a.0 - b.0;
    let dr = a.1 - b.1;
    (dq.abs() + dr.abs() + (dq + dr).abs()) / 2
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrainConfig {
    pub epochs: usize,
    pub alpha0: f64,
    pub alpha_min: f64,
    pub sigma0: f64,
    pub sigma_min: f64,
    pub shuffle_seed: Seed,
    pub init_jitter: f64,
}

impl Default for TrainConfig {
    fn default() -> Self {
        TrainConfig {
            epochs: 2000,
            alpha0: 0.5,
            alpha_min: 0.01,
            sigma0: 3.0,
            sigma_min: 0.25,
            shuffle_seed: Seed(0),
            init_jitter: 1e-4,
        }
    }
}

impl TrainConfig {
    pub fn validate(&self) -> Result<(), SomError> {
        let bad = |msg: &str| Err(SomError::InvalidConfig(msg.to_string()));
        if self.epochs == 0 {
            return bad("epochs must be at least 1");
        }
        if !(self.alpha_min > 0.0 && self.alpha_min <= self.alpha0 && self.alpha0 <= 1.0) {
            return bad("need 0 < alpha_min <= alpha0 <= 1");
        }
        if !(self.sigma_min > 0.0 && self.sigma_min <= self.sigma0 && self.sigma0.is_finite()) {
            return bad("need 0 < sigma_min <= sigma0");
        }
        if !(self.init_jitter >= 0.0 && self.init_jitter.is_finite()) {
            return bad("init_jitter must be finite and non-negative");
        }
        Ok(())
    }

    pub fn alpha(&self, t: usize) -> f64 {
        (self.alpha0 * (1.0 - t as f64 / self.epochs as f64)).max(self.alpha_min)
    }

    pub fn sigma(&self, t: usize) -> f64 {
        (self.sigma0 * (1.0 - t as f64 / self.epochs as f64)).max(self.sigma_min)
    }
}

pub fn neighborhood(d: f64, sigma: f64) -> f64 {
    (-d * d / (2.0 * sigma * sigma)).exp()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Som {
    lattice: HexLattice,
    weights: Vec<Vec<f64>>,
}

impl Som {
    pub fn new(lattice: HexLattice, weights: Vec<Vec<f64>>) -> Result<Self, SomError> {
        if weights.len() != lattice.len() {
            return Err(SomError::DimensionMismatch { expected: lattice.len(), got: weights.len() });
        }
        let dim = weights[0].len();
        for w in &weights {
            if w.len() != dim {
                return Err(SomError::DimensionMismatch { expected: dim, got: w.len() });
            }
            if w.iter().any(|x| !x.is_finite()) {
                return Err(SomError::InvalidConfig("non-finite weight".into()));
            }
        }
        Ok(Som { lattice, weights })
    }

    pub fn lattice(&self) -> &HexLattice {
        &self.lattice
    }

    pub fn weights(&self) -> &[Vec<f64>] {
        &self.weights
    }

    pub fn neurons(&self) -> usize {
        self.weights.len()
    }

    pub fn dim(&self) -> usize {
        self.weights[0].len()
    }

    pub fn lattice_distance(&self, a: usize, b: usize) -> Result<f64, SomError> {
        self.lattice.distance(a, b)
    }

    fn check_dim(&self, x: &[f64]) -> Result<(), SomError> {
        if x.len() != self.dim() {
            return Err(SomError::DimensionMismatch { expected: self.dim(), got: x.len() });
        }
        Ok(())
    }

    /// Nearest neuron by Euclidean distance, lowest index on ties.
    pub fn bmu(&self, x: &[f64]) -> Result<usize, SomError> {
        self.check_dim(x)?;
        Ok(self.nearest(x).0)
    }

    fn nearest(&self, x: &[f64]) -> (usize, f64) {
        let mut best = (0, f64::INFINITY);
        for (j, w) in self.weights.iter().enumerate() {
            let d = squared_distance(w, x);
            if d < best.1 {
                best = (j, d);
            }
        }
        best
    }

    /// Mean distance from each sample to its best-matching unit.
    pub fn quantization_error<S: AsRef<[f64]>>(&self, data: &[S]) -> Result<f64, SomError> {
        if data.is_empty() {
            return Err(SomError::EmptyDataset);
        }
        let mut total = 0.0;
        for x in data {
            let x = x.as_ref();
            self.check_dim(x)?;
            total += self.nearest(x).1.sqrt();
        }
        Ok(total / data.len() as f64)
    }

    /// One online update towards `x` with learning rate `alpha` and radius
    /// `sigma`. Returns the best-matching unit.
    pub fn update(&mut self, x: &[f64], alpha: f64, sigma: f64) -> Result<usize, SomError> {
        self.check_dim(x)?;
        let c = self.nearest(x).0;
        for j in 0..self.weights.len() {
            let d = self.lattice.distance(j, c)?;
            let rate = alpha * neighborhood(d, sigma);
            if rate == 0.0 {
                continue;
            }
            for (w, &xi) in self.weights[j].iter_mut().zip(x) {
                // w + rate * (x - w), written as a convex combination so that
                // rate = 1 lands exactly on x; the clamp absorbs rounding.
                let moved = (1.0 - rate) * *w + rate * xi;
                *w = moved.clamp(w.min(xi), w.max(xi));
            }
        }
        Ok(c)
    }

    /// One pass over `data` in the shuffle order for epoch `t`.
    pub fn train_epoch<S: AsRef<[f64]>>(&mut self, data: &[S], t: usize, config: &TrainConfig) -> Result<(), SomError> {
        if t >= config.epochs {
            return Err(SomError::InvalidConfig(format!("epoch {t} outside 0..{}", config.epochs)));
        }
        let alpha = config.alpha(t);
        let sigma = config.sigma(t);
        let mut order: Vec<usize> = (0..data.len()).collect();
        order.shuffle(&mut config.shuffle_seed.derive(stream::SHUFFLE, t as u64).rng());
        for i in order {
            self.update(data[i].as_ref(), alpha, sigma)?;
        }
        Ok(())
    }

    /// Runs all epochs; the returned history holds the quantization error
    /// after each epoch.
    pub fn train<S: AsRef<[f64]>>(&mut self, data: &[S], config: &TrainConfig) -> Result<Vec<f64>, SomError> {
        config.validate()?;
        if data.is_empty() {
            return Err(SomError::EmptyDataset);
        }
        let mut history = Vec::with_capacity(config.epochs);
        for t in 0..config.epochs {
            self.train_epoch(data, t, config)?;
            history.push(self.quantization_error(data)?);
        }
        Ok(history)
    }
}

/// All neurons at the data mean, each offset by a seeded jitter of at most
/// `init_jitter` times the per-component standard deviation.
pub fn init_som<S: AsRef<[f64]>>(lattice: HexLattice, data: &[S], config: &TrainConfig) -> Result<Som, SomError> {
    config.validate()?;
    let first = data.first().ok_or(SomError::EmptyDataset)?.as_ref();
    let dim = first.len();
    let mut mean = vec![0.0; dim];
    for x in data {
        let x = x.as_ref();
        if x.len() != dim {
            return Err(SomError::DimensionMismatch { expected: dim, got: x.len() });
        }
        for (m, v) in mean.iter_mut().zip(x) {
            *m += v;
        }
    }
    let count = data.len() as f64;
    mean.iter_mut().for_each(|m| *m /= count);
    let mut std = vec![0.0; dim];
    for x in data {
        for ((s, v), m) in std.iter_mut().zip(x.as_ref()).zip(&mean) {
            *s += (v - m) * (v - m);
        }
    }
    std.iter_mut().for_each(|s| *s = (*s / count).sqrt());

    let weights = (0..lattice.len())
        .map(|j| {
            let mut rng = config.shuffle_seed.derive(stream::JITTER, j as u64).rng();
            mean.iter()
                .zip(&std)
                .map(|(m, s)| m + config.init_jitter * s * rng.gen_range(-1.0..=1.0))
                .collect()
        })
        .collect();
    Som::new(lattice, weights)
}

pub fn squared_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}
