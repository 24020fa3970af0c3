//! Pattern datasets and their CSV form.
//!
//! Header: `pattern_id,fine_label,gen_params,eig_001,...,eig_NNN`. One row
//! per pattern, LF line endings, reals in shortest round-trip notation.

use std::io::{Read, Write};

use rayon::prelude::*;

use super::PipelineError;
use crate::classify::FineLabel;
use crate::seed::{stream, Seed};
use crate::spectral::{signature_of, SpectralSignature};
use crate::topology::TopologyClass;

/// Per-record tolerance on the eigenvalue sum read back from disk.
pub const TRACE_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq)]
pub struct DatasetRecord {
    pub pattern_id: u64,
    pub fine_label: FineLabel,
    pub gen_params: String,
    pub signature: SpectralSignature,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    pub dim: usize,
    pub records: Vec<DatasetRecord>,
}

impl Dataset {
    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn labels(&self) -> Vec<FineLabel> {
        self.records.iter().map(|r| r.fine_label).collect()
    }

    pub fn features(&self) -> Vec<Vec<f64>> {
        self.records.iter().map(|r| r.signature.values().to_vec()).collect()
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<(), PipelineError> {
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
        let mut header = vec!["pattern_id".to_string(), "fine_label".into(), "gen_params".into()];
        header.extend((1..=self.dim).map(|k| format!("eig_{k:03}")));
        w.write_record(&header)?;
        for r in &self.records {
            let mut row = vec![r.pattern_id.to_string(), r.fine_label.to_string(), r.gen_params.clone()];
            row.extend(r.signature.values().iter().map(|v| format_real(*v)));
            w.write_record(&row)?;
        }
        w.flush().map_err(|e| PipelineError::Io { path: "<dataset>".into(), source: e })?;
        Ok(())
    }

    pub fn read_csv<R: Read>(input: R) -> Result<Dataset, PipelineError> {
        let mut rdr = csv::ReaderBuilder::new().has_headers(true).from_reader(input);
        let header = rdr.headers()?.clone();
        let parse_err = |line: u64, msg: String| PipelineError::Parse { line, msg };
        if header.len() < 4
            || &header[0] != "pattern_id"
            || &header[1] != "fine_label"
            || &header[2] != "gen_params"
        {
            return Err(parse_err(1, "expected header pattern_id,fine_label,gen_params,eig_001,...".into()));
        }
        let dim = header.len() - 3;
        for (k, name) in header.iter().skip(3).enumerate() {
            if name != format!("eig_{:03}", k + 1) {
                return Err(parse_err(1, format!("unexpected column {name:?}")));
            }
        }
        let mut records = Vec::new();
        for row in rdr.records() {
            let row = row?;
            let line = row.position().map_or(0, |p| p.line());
            if row.len() != header.len() {
                return Err(parse_err(line, format!("expected {} fields, found {}", header.len(), row.len())));
            }
            let pattern_id = row[0]
                .parse()
                .map_err(|_| parse_err(line, format!("bad pattern_id {:?}", &row[0])))?;
            let fine_label = row[1].parse().map_err(|_| parse_err(line, format!("bad label {:?}", &row[1])))?;
            let values = row
                .iter()
                .skip(3)
                .map(|s| s.parse::<f64>().ok().filter(|v| v.is_finite()))
                .collect::<Option<Vec<f64>>>()
                .ok_or_else(|| parse_err(line, "eigenvalue is not a finite real".into()))?;
            let trace: f64 = values.iter().sum();
            if trace.abs() > TRACE_TOLERANCE {
                return Err(parse_err(line, format!("eigenvalues sum to {trace}, expected 0")));
            }
            let signature = SpectralSignature::from_sorted(values)
                .map_err(|_| parse_err(line, "eigenvalues are not in descending order".into()))?;
            records.push(DatasetRecord { pattern_id, fine_label, gen_params: row[2].to_string(), signature });
        }
        Ok(Dataset { dim, records })
    }
}

/// Shortest decimal that parses back to the same `f64`.
pub fn format_real(v: f64) -> String {
    format!("{v:?}")
}

/// Dataset composition and generator parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct GenOptions {
    pub nodes: usize,
    /// Pattern counts in canonical label order REG3, REG4, REG5, RANDOM,
    /// SCALEFREE.
    pub counts: [usize; 5],
    pub edge_probability: f64,
    pub attach_edges: usize,
    pub seed: Seed,
}

impl Default for GenOptions {
    fn default() -> Self {
        GenOptions {
            nodes: 56,
            counts: [100, 100, 100, 300, 300],
            edge_probability: 4.0 / 55.0,
            attach_edges: 2,
            seed: Seed(0),
        }
    }
}

impl GenOptions {
    pub fn topology(&self, label: FineLabel) -> TopologyClass {
        match label {
            FineLabel::Reg3 => TopologyClass::Regular { r: 3 },
            FineLabel::Reg4 => TopologyClass::Regular { r: 4 },
            FineLabel::Reg5 => TopologyClass::Regular { r: 5 },
            FineLabel::Random => TopologyClass::Random { p: self.edge_probability },
            FineLabel::ScaleFree => TopologyClass::ScaleFree { m: self.attach_edges },
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GenSummary {
    pub patterns: usize,
    pub connected: usize,
    pub per_label: [usize; 5],
}

impl GenSummary {
    pub fn connectivity_rate(&self) -> f64 {
        self.connected as f64 / self.patterns as f64
    }
}

/// Generates all patterns. Pattern `i` uses the sub-seed
/// `seed.derive(PATTERN, i)`, so the output does not depend on thread
/// scheduling.
pub fn generate(opts: &GenOptions) -> Result<(Dataset, GenSummary), PipelineError> {
    if opts.counts.iter().all(|&c| c == 0) {
        return Err(PipelineError::Usage("all pattern counts are zero".into()));
    }
    let jobs: Vec<(u64, FineLabel)> = FineLabel::ALL
        .iter()
        .zip(opts.counts)
        .flat_map(|(&label, count)| std::iter::repeat(label).take(count))
        .enumerate()
        .map(|(i, label)| (i as u64, label))
        .collect();

    let results: Vec<(DatasetRecord, bool)> = jobs
        .par_iter()
        .map(|&(id, label)| {
            let class = opts.topology(label);
            let g = class.generate(opts.nodes, opts.seed.derive(stream::PATTERN, id))?;
            let signature = signature_of(&g)?;
            let record = DatasetRecord {
                pattern_id: id,
                fine_label: label,
                gen_params: format!("{class};n={}", opts.nodes),
                signature,
            };
            Ok((record, g.is_connected()))
        })
        .collect::<Result<_, PipelineError>>()?;

    let mut per_label = [0; 5];
    let mut connected = 0;
    let mut records = Vec::with_capacity(results.len());
    for (r, conn) in results {
        per_label[r.fine_label.index()] += 1;
        connected += conn as usize;
        records.push(r);
    }
    let summary = GenSummary { patterns: records.len(), connected, per_label };
    Ok((Dataset { dim: opts.nodes, records }, summary))
}
