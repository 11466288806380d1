//! End products of the pipeline: the equivariant (`S¹`, `Z/ℓ`) and
//! non-equivariant modules of disk bundles over graph models, fundamental
//! classes and their transport in `T`, capacities, and the consistency
//! checks relating them (Gysin, tautological sequence, comparison with the
//! loop-space answer for the circle, loop product).

mod capacity;
mod checks;
mod family;
mod model;
mod oracle;
mod pipeline;
mod product;

pub use capacity::{c1_routes, capacities, fundamental_class, planted_family, C1Routes, CapacityTable, FundamentalReport, PlantedOnsets};
pub use checks::{orbit_free_isomorphisms, spectrality_check, structure_map_surjective, tautological_check, viterbo_compare, TautologicalReport};
pub use family::{noneq_family, pointwise_family, s1_family, s1_family_checked, zl_family, PersistenceFamily, StageCheck};
pub use model::ModelSpec;
pub use oracle::{circle_oracle, OracleRow};
pub use pipeline::{ct_noneq, ct_s1, ct_zl, s1_stage, CTResult, NoneqStage, Params, Provenance, S1Stage, Theory};
pub use product::{loop_product_circle, CircleClass, LoopProduct};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CtError {
    #[error("invalid configuration: {field}: {message}")]
    InvalidConfig { field: String, message: String },
    #[error("fundamental class lost: {0}")]
    FundamentalClassLost(String),
    #[error("scope: circle only")]
    CircleOnly,
    #[error(transparent)]
    Loop(#[from] loopmodel::LoopError),
    #[error(transparent)]
    Precyclic(#[from] precyclic::PrecyclicError),
    #[error(transparent)]
    Mixed(#[from] mixed::MixedError),
    #[error(transparent)]
    Chain(#[from] chain::ChainError),
    #[error(transparent)]
    Exact(#[from] exactalg::ExactError),
}

impl CtError {
    pub(crate) fn config(field: &str, message: impl Into<String>) -> Self {
        CtError::InvalidConfig { field: field.into(), message: message.into() }
    }
}
