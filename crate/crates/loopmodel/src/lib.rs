//! Metric-graph models, discrete loop tuples, their flag thickenings, and
//! the pre-cocyclic chain complexes built from them.

mod graph;
mod level;
mod thicken;
mod tower;
mod tuples;

pub use graph::{build_cycle_graph, build_point_graph, build_product_graph, load_edge_list, parse_edge_list, MetricGraph, ModelKind, Thickening};
pub use level::{Caps, LevelChains};
pub use thicken::{thicken_flag_complex, thickening_neighbors, FlagComplex, SimplexList};
pub use tower::{assemble_precocyclic, build_level, diagonal_model, level_inclusion, insert_constant_segment, persistence_inclusions, persistence_map, rotate_segments, DiagonalModel, LoopSpec, LoopTower};
pub use tuples::{enumerate_loop_tuples, satisfies, Budget, TupleSet, DEFAULT_STATE_CAP};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LoopError {
    #[error("degenerate cycle: {0} vertices, at least 3 needed")]
    DegenerateCycle(usize),
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("edge list line {line}: {message}")]
    EdgeList { line: usize, message: String },
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("state-space overflow: level {level} has more than {cap} tuples")]
    StateSpaceOverflow { level: usize, cap: usize },
    #[error("truncation unsound: top dimension {top} cannot carry homology through degree {degree}")]
    TruncationUnsound { top: usize, degree: usize },
    #[error("complex overflow: more than {cap} simplices of dimension {dim}")]
    ComplexOverflow { dim: usize, cap: usize },
    #[error("truncation is not integral: the boundary span is not a direct summand over the integers")]
    NonIntegralTruncation,
    #[error(transparent)]
    Exact(#[from] exactalg::ExactError),
    #[error(transparent)]
    Chain(#[from] chain::ChainError),
    #[error(transparent)]
    Precyclic(#[from] precyclic::PrecyclicError),
    #[error("i/o error: {0}")]
    Io(String),
}
