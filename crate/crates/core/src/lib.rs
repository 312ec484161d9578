//! Algorithms for cool decorations of graphs and hypergraphs, polynomial
//! certificates for list decorations, completely multiplicative `±1`
//! sequences, golden seeds, and arithmetic cascades.

pub mod cascades;
pub mod clique;
pub mod coloring;
pub mod decorations;
pub mod error;
pub mod graph;
pub mod multiplicative;
pub mod nullstellensatz;
pub mod poly;
pub mod rejmer;
pub mod search;
pub mod seeds;
pub mod sieve;

pub use cascades::{ArithmeticGraphWindow, ChromaticMode, ChromaticReport, RainbowReport};
pub use decorations::{CoolReport, Decoration, DecorationKind, VertexSums};
pub use error::{Error, Result};
pub use graph::{Edge, Graph, Hypergraph, Orientation, Vertex};
pub use multiplicative::{BalanceProfile, MultiplicativeColoring, SignRule};
pub use nullstellensatz::{Certificate, Coefficient, ExpansionBudget, ListMode};
pub use poly::SparsePolynomial;
pub use rejmer::{RejmerRun, RejmerState, Switch};
pub use search::{SearchOutcome, DEFAULT_GRID_BUDGET};
pub use seeds::Seed;
