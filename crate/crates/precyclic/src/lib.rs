//! Pre-cocyclic complexes and the cyclic cochain construction.
//!
//! A pre-cocyclic complex is a tower of cochain complexes `C_1, C_2, ...`
//! with cofaces `d_i: C_ℓ -> C_{ℓ+1}` (`i = 0..ℓ`) and signed cyclic
//! operators `t` on each level. The crate assembles the Hochschild and
//! norm operators, the cone of `1 - t` between the two totalizations with
//! its mixed structure, and a perturbative reduction that replaces every
//! level by its cohomology before forming homotopy fixed points.

mod complex;
mod cyclic;
mod morphism;
mod operators;
mod sdr;
mod transfer;

pub use complex::{validate_relations, Level, PreCocyclicComplex};
pub use cyclic::{cyclic_cochain_mixed, normalized_mixed, restrict_to_zl, CyclicCochains, DegeneracyData, TotLayout};
pub use morphism::{fixed_point_map, PreCocyclicMap};
pub use operators::{hochschild_operators, HochschildOperators};
pub use sdr::{ExplicitSdr, IdentitySdr, LevelSdr};
pub use transfer::{total_to_expanded, ReducedFixedPoints, ReducedLevels, TotalVector};

use chain::ChainError;
use exactalg::ExactError;
use mixed::MixedError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PrecyclicError {
    #[error("level overflow: level {0} requested, {1} available")]
    LevelOverflow(usize, usize),
    #[error("not pre-cocyclic: {0}")]
    NotPreCocyclic(String),
    #[error("degeneracy data invalid: {0}")]
    DegeneracyInvalid(String),
    #[error("cyclicity violated at level {0}")]
    CyclicityViolated(usize),
    #[error("shape error: {0}")]
    Shape(String),
    #[error(transparent)]
    Chain(#[from] ChainError),
    #[error(transparent)]
    Mixed(#[from] MixedError),
    #[error(transparent)]
    Exact(#[from] ExactError),
}
