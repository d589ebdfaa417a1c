//! Dimer models on rail yard graphs.
//!
//! A rail yard graph is a plane bipartite graph built by concatenating
//! elementary columns of four types (`L+`, `L-`, `R+`, `R-`). Pure dimer
//! coverings of such graphs carry a multivariate weight, and the model is
//! exactly solvable: the partition function factorizes over "hooks", the
//! transfer matrices are half vertex operators on a Fock space of charged
//! partitions, and edge correlations are determinants of a double contour
//! integral kernel which inverts the Kasteleyn matrix.
//!
//! The crate provides three independent routes to the partition function
//! (closed product, transfer matrices, direct enumeration), the correlation
//! kernel in both quadrature and series-extraction form, inverse-Kasteleyn
//! verification, exact sequential sampling, and the Aztec diamond
//! specializations (edge probabilities, creation rates, edge-probability
//! generating function, arctic circle classifier).

pub mod aztec;
pub mod combinatorics;
pub mod fock;
pub mod graph;
pub mod kasteleyn;
pub mod kernel;
pub mod partition_fn;
pub mod render;
pub mod sampler;
pub mod scalar;
pub mod series;

pub use combinatorics::{ChargedPartition, Marble, MayaDiagram, Partition};
pub use graph::{ColumnType, Covering, Edge, Letter, RygSpec, Sign, Vertex};
pub use series::TruncatedSeries;
