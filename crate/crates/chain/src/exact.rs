//! Exactness of finite sequences of linear maps.

use exactalg::{rank, SparseMatrix};

use crate::report::Report;
use crate::ChainError;

/// Checks a sequence `V_0 -> V_1 -> ... -> V_n` given by its maps: at every
/// interior joint consecutive maps compose to zero and
/// `rank(in) + rank(out) = dim V_k`.
pub fn check_exact(maps: &[SparseMatrix]) -> Result<Report, ChainError> {
    let mut rep = Report::new("exactness");
    for (k, w) in maps.windows(2).enumerate() {
        let (a, b) = (&w[0], &w[1]);
        if a.rows() != b.cols() {
            return Err(ChainError::Shape(format!("joint {k}: {} vs {}", a.rows(), b.cols())));
        }
        if !b.mul(a)?.is_zero() {
            rep.fail(format!("joint {k}: consecutive maps do not compose to zero"));
            continue;
        }
        let (ra, rb) = (rank(a)?, rank(b)?);
        if ra + rb != a.rows() {
            rep.fail(format!("joint {k}: image rank {ra} and kernel rank {} differ", a.rows() - rb));
        }
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use exactalg::Domain;

    #[test]
    fn short_exact() {
        let q = Domain::Rational;
        let i = SparseMatrix::from_rows_i64(q, &[vec![1], vec![0]]);
        let p = SparseMatrix::from_rows_i64(q, &[vec![0, 1]]);
        assert!(check_exact(&[i.clone(), p.clone()]).unwrap().passed);
        let bad = SparseMatrix::from_rows_i64(q, &[vec![1, 1]]);
        assert!(!check_exact(&[i, bad]).unwrap().passed);
    }
}
