//! Network topology recognition from adjacency spectra.
//!
//! Graphs from three families (regular, Erdős–Rényi random, Barabási–Albert
//! scale-free) are reduced to their sorted adjacency eigenvalues, which do
//! not depend on node labeling. A small self-organizing map on a hexagonal
//! lattice clusters those signatures; majority-labeled neurons then
//! classify unseen graphs.

pub mod classify;
pub mod pipeline;
pub mod seed;
pub mod som;
pub mod spectral;
pub mod topology;

pub use classify::{label_neurons, FineLabel, LabelSpace, TrainedModel};
pub use seed::Seed;
pub use som::{init_som, HexLattice, Som, TrainConfig};
pub use spectral::{adjacency, eigenvalues, signature_of, SpectralSignature, SymMatrix};
pub use topology::{gen_random, gen_regular, gen_scale_free, Graph, GraphError, TopologyClass};
