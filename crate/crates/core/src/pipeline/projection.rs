//! Two-dimensional PCA view of training signatures and neuron weights.

use std::fmt::Write as _;

use super::PipelineError;
use crate::spectral::{symmetric_eigen, SymMatrix};

/// Below this leading covariance eigenvalue the data has no spread to project.
pub const DEGENERATE_VARIANCE: f64 = 1e-12;

/// Mean and the two leading principal axes of a point cloud.
#[derive(Debug, Clone, PartialEq)]
pub struct PcaBasis {
    pub mean: Vec<f64>,
    pub axes: [Vec<f64>; 2],
    pub variances: [f64; 2],
}

impl PcaBasis {
    pub fn fit(data: &[Vec<f64>]) -> Result<PcaBasis, PipelineError> {
        if data.len() < 3 {
            return Err(PipelineError::Usage(format!("projection needs at least 3 rows, got {}", data.len())));
        }
        let dim = data[0].len();
        if dim < 2 {
            return Err(PipelineError::Usage("projection needs at least 2 dimensions".into()));
        }
        let n = data.len() as f64;
        let mut mean = vec![0.0; dim];
        for x in data {
            mean.iter_mut().zip(x).for_each(|(m, v)| *m += v);
        }
        mean.iter_mut().for_each(|m| *m /= n);

        let mut cov = vec![0.0; dim * dim];
        let mut centered = vec![0.0; dim];
        for x in data {
            centered.iter_mut().zip(x).zip(&mean).for_each(|((c, v), m)| *c = v - m);
            for i in 0..dim {
                for j in i..dim {
                    cov[i * dim + j] += centered[i] * centered[j];
                }
            }
        }
        for i in 0..dim {
            for j in i..dim {
                let v = cov[i * dim + j] / (n - 1.0);
                cov[i * dim + j] = v;
                cov[j * dim + i] = v;
            }
        }
        let eig = symmetric_eigen(&SymMatrix::from_row_major(dim, cov)?)?;
        if eig.values[0] < DEGENERATE_VARIANCE {
            return Err(PipelineError::DegenerateCovariance);
        }
        let mut vectors = eig.vectors.into_iter();
        let axes = [vectors.next().unwrap(), vectors.next().unwrap()];
        Ok(PcaBasis { mean, axes, variances: [eig.values[0], eig.values[1].max(0.0)] })
    }

    pub fn project(&self, x: &[f64]) -> (f64, f64) {
        let dot = |axis: &[f64]| x.iter().zip(&self.mean).zip(axis).map(|((v, m), a)| (v - m) * a).sum::<f64>();
        (dot(&self.axes[0]), dot(&self.axes[1]))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PointKind {
    TrainVector,
    Neuron,
}

impl PointKind {
    pub fn as_str(self) -> &'static str {
        match self {
            PointKind::TrainVector => "TRAIN_VECTOR",
            PointKind::Neuron => "NEURON",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProjectionRecord {
    pub kind: PointKind,
    pub id: u64,
    pub x: f64,
    pub y: f64,
    pub label: String,
}

pub fn projection_csv(records: &[ProjectionRecord]) -> String {
    let mut out = String::from("kind,id,x,y,label\n");
    for r in records {
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            r.kind.as_str(),
            r.id,
            super::dataset::format_real(r.x),
            super::dataset::format_real(r.y),
            r.label
        );
    }
    out
}

const PALETTE: [(&str, &str); 6] = [
    ("REG3", "#1f77b4"),
    ("REG4", "#17becf"),
    ("REG5", "#2ca02c"),
    ("RANDOM", "#ff7f0e"),
    ("SCALEFREE", "#d62728"),
    ("", "#7f7f7f"),
];

/// Scatter plot: training vectors as small per-class glyphs, neurons as
/// black stars.
pub fn projection_svg(records: &[ProjectionRecord]) -> String {
    const SIZE: f64 = 640.0;
    const PAD: f64 = 40.0;
    let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for r in records {
        x0 = x0.min(r.x);
        x1 = x1.max(r.x);
        y0 = y0.min(r.y);
        y1 = y1.max(r.y);
    }
    let span = (x1 - x0).max(y1 - y0).max(1e-12);
    let sx = |x: f64| PAD + (x - x0) / span * (SIZE - 2.0 * PAD);
    let sy = |y: f64| SIZE - PAD - (y - y0) / span * (SIZE - 2.0 * PAD);

    let mut out = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{SIZE}\" height=\"{SIZE}\" viewBox=\"0 0 {SIZE} {SIZE}\">\n\
         <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
    );
    for r in records.iter().filter(|r| r.kind == PointKind::TrainVector) {
        let (x, y) = (sx(r.x), sy(r.y));
        let color = PALETTE.iter().find(|(l, _)| *l == r.label).unwrap_or(&PALETTE[5]).1;
        let glyph = match r.label.as_str() {
            "REG3" | "REG4" | "REG5" => format!("<rect x=\"{:.2}\" y=\"{:.2}\" width=\"5\" height=\"5\"", x - 2.5, y - 2.5),
            "RANDOM" => format!("<circle cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"2.5\""),
            _ => format!("<polygon points=\"{:.2},{:.2} {:.2},{:.2} {:.2},{:.2}\"", x, y - 3.0, x - 3.0, y + 2.5, x + 3.0, y + 2.5),
        };
        let _ = writeln!(out, "{glyph} fill=\"none\" stroke=\"{color}\"/>");
    }
    for r in records.iter().filter(|r| r.kind == PointKind::Neuron) {
        let (x, y) = (sx(r.x), sy(r.y));
        let pts: Vec<String> = (0..10)
            .map(|k| {
                let rad = if k % 2 == 0 { 8.0 } else { 3.5 };
                let a = std::f64::consts::PI * (k as f64) / 5.0 - std::f64::consts::FRAC_PI_2;
                format!("{:.2},{:.2}", x + rad * a.cos(), y + rad * a.sin())
            })
            .collect();
        let _ = writeln!(out, "<polygon points=\"{}\" fill=\"black\"><title>neuron {} {}</title></polygon>", pts.join(" "), r.id, r.label);
    }
    out.push_str("</svg>\n");
    out
}
