//! Cochain complexes of finite-dimensional spaces or free abelian groups:
//! cohomology with explicit bases, mapping cones, shifted duals and
//! exactness checks.
//!
//! Grading is cohomological everywhere: differentials raise degree by one.

mod cohomology;
mod complex;
mod cone;
mod dual;
mod exact;
mod report;
mod simplicial;

pub use cohomology::{cohomology, cohomology_basis, cohomology_dims, degree_basis, induced_map, Cohomology, CohomologyBasis, DegreeBasis, Group};
pub use complex::{verify_complex, CochainComplex, GradedMap};
pub use cone::{cone_les_check, mapping_cone, Cone};
pub use dual::{dual_map, dual_shift};
pub use exact::check_exact;
pub use report::Report;
pub use simplicial::{boundary_matrix, simplicial_chains, simplicial_cochains};

use exactalg::ExactError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ChainError {
    #[error("shape error: {0}")]
    Shape(String),
    #[error("coefficient domains differ")]
    DomainMismatch,
    #[error("map has shift {0}: normalize shift first")]
    NormalizeShift(i64),
    #[error("vector is not a cocycle")]
    NotACocycle,
    #[error(transparent)]
    Exact(#[from] ExactError),
}
