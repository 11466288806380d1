//! Shifted linear duals of complexes and maps.

use exactalg::SparseMatrix;

use crate::complex::{CochainComplex, GradedMap};
use crate::ChainError;

/// `out^q = (C^{d-q})^*` with `δ^q = (-1)^{q+1} (d^{d-q-1})^T`.
pub fn dual_shift(c: &CochainComplex, d: i64) -> Result<CochainComplex, ChainError> {
    c.domain().require_field()?;
    let mut out = CochainComplex::new(c.domain());
    for (&q, &n) in c.dims() {
        out.set_dim(d - q, n);
    }
    for q in out.degrees() {
        if let Some(m) = c.diff_ref(d - q - 1) {
            out.set_diff(q, m.transpose().signed(q + 1))?;
        }
    }
    Ok(out)
}

/// The dual `f^∨: dual_shift(D, d) -> dual_shift(C, d)` of a degree-0 map
/// `f: C -> D`, componentwise the transpose.
pub fn dual_map(f: &GradedMap, source: &CochainComplex, target: &CochainComplex, d: i64) -> Result<GradedMap, ChainError> {
    if f.shift != 0 {
        return Err(ChainError::NormalizeShift(f.shift));
    }
    let mut out = GradedMap::new(0);
    for &q in target.dims().keys() {
        let m: SparseMatrix = f.get(q, source, target);
        out.set(d - q, m.transpose());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::cohomology;
    use exactalg::Domain;

    #[test]
    fn point_moves_to_degree_d() {
        let c = CochainComplex::concentrated(Domain::Rational, 0, 1);
        assert_eq!(dual_shift(&c, 1).unwrap().degrees(), vec![1]);
    }

    #[test]
    fn circle_pattern_is_self_dual() {
        let q = Domain::Rational;
        let mut c = CochainComplex::with_dims(q, [(0, 3), (1, 3)]);
        let d = SparseMatrix::from_rows_i64(q, &[vec![-1, 1, 0], vec![0, -1, 1], vec![1, 0, -1]]);
        c.set_diff(0, d).unwrap();
        let h = cohomology(&dual_shift(&c, 1).unwrap()).unwrap().dims();
        assert_eq!(h, [(0, 1), (1, 1)].into_iter().collect());
    }

    #[test]
    fn double_dual_for_odd_shift_is_identity() {
        let q = Domain::Rational;
        let mut c = CochainComplex::with_dims(q, [(0, 2), (1, 1)]);
        c.set_diff(0, SparseMatrix::from_rows_i64(q, &[vec![2, 3]])).unwrap();
        assert_eq!(dual_shift(&dual_shift(&c, 1).unwrap(), 1).unwrap(), c);
        let twice = dual_shift(&dual_shift(&c, 2).unwrap(), 2).unwrap();
        assert_eq!(twice.dims(), c.dims());
    }

    #[test]
    fn integers_rejected() {
        let c = CochainComplex::concentrated(Domain::Integer, 0, 1);
        assert!(dual_shift(&c, 0).is_err());
    }
}
