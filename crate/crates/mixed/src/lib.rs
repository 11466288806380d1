//! Mixed complexes and their equivariant cohomology.
//!
//! A mixed complex `(M, b, B)` models a complex with a circle action. Its
//! homotopy fixed points `(M[[u]], b + uB)` give a graded module over
//! `K[u]` with `|u| = 2`, computed modulo `u^{K+1}` on a window of degrees
//! where the truncation is invisible. The crate also provides the Gysin
//! sequence, cohomology of cyclic groups through the periodic resolution,
//! and barcodes of the resulting modules.

mod barcode;
mod equivariant;
mod mixed;
mod samples;
mod ucomplex;
mod umodule;
mod zl;

pub use barcode::{barcode, Barcode};
pub use equivariant::{equivariant_complex, equivariant_complex_koszul, equivariant_module, gysin_check, gysin_check_u, GysinReport};
pub use mixed::{dual_shift_mixed, truncate_above, verify_mixed, MixedComplex};
pub use ucomplex::{homotopy_fixed_points, ucone, ucone_maps, UComplex, UMap};
pub use samples::{random_mixed, SampleShape};
pub use umodule::{ranks, MarkedClass, UCohomology, UModule};
pub use zl::{check_zl_action, group_cohomology_complex, zl_cohomology};

use chain::ChainError;
use exactalg::ExactError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MixedError {
    #[error("shape error: {0}")]
    Shape(String),
    #[error("not a module: {0}")]
    NotAModule(String),
    #[error("not a Z/{0} action")]
    NotZlAction(usize),
    #[error(transparent)]
    Chain(#[from] ChainError),
    #[error(transparent)]
    Exact(#[from] ExactError),
}
