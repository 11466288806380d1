//! Exact arithmetic and sparse linear algebra over Q, prime fields and Z.
//!
//! Every computation is exact. Field domains support rank, kernels and
//! solves through incremental echelon forms; the integers support Smith
//! normal forms with unimodular transforms.

mod echelon;
mod integer;
mod matrix;
mod rational;
mod scalar;
mod snf;
mod vector;

pub use echelon::{column_echelon, kernel_basis, rank, solve_dense_rhs, solve_linear, solve_with, Echelon, Reduced};
pub use integer::Integer;
pub use matrix::SparseMatrix;
pub use rational::Rational;
pub use scalar::{is_prime, Domain, Scalar};
pub use snf::{smith_normal_form, SmithForm};
pub use vector::SparseVec;

/// Errors raised by exact linear algebra.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExactError {
    #[error("operation requires a field domain")]
    FieldRequired,
    #[error("operation requires the integer domain")]
    IntegerRequired,
    #[error("{0} is not a prime below 2^62")]
    NotPrime(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands come from different domains")]
    DomainMismatch,
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("cannot parse {0:?} as an exact number")]
    Parse(String),
}
