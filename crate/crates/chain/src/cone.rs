//! Mapping cones and their long exact cohomology sequences.

use exactalg::SparseMatrix;

use crate::cohomology::{cohomology_basis, induced_map};
use crate::complex::{CochainComplex, GradedMap};
use crate::exact::check_exact;
use crate::report::Report;
use crate::ChainError;

/// `cone(f)^q = D^q ⊕ C^{q+1}` with `d(y, x) = (d y + f x, -d x)`, together
/// with the inclusion of `D` and the projection onto `C` (shift +1).
#[derive(Clone, Debug)]
pub struct Cone {
    pub complex: CochainComplex,
    pub inclusion: GradedMap,
    pub projection: GradedMap,
}

pub fn mapping_cone(f: &GradedMap, source: &CochainComplex, target: &CochainComplex) -> Result<Cone, ChainError> {
    if f.shift != 0 {
        return Err(ChainError::NormalizeShift(f.shift));
    }
    let dom = source.domain();
    let mut degrees: Vec<i64> = target.degrees();
    degrees.extend(source.degrees().into_iter().map(|q| q - 1));
    degrees.sort_unstable();
    degrees.dedup();
    let mut cone = CochainComplex::new(dom);
    for &q in &degrees {
        cone.set_dim(q, target.dim(q) + source.dim(q + 1));
    }
    let mut inclusion = GradedMap::new(0);
    let mut projection = GradedMap::new(1);
    for &q in &degrees {
        let h = [target.dim(q + 1), source.dim(q + 2)];
        let w = [target.dim(q), source.dim(q + 1)];
        let dd = target.diff(q);
        let fx = f.get(q + 1, source, target);
        let dc = source.diff(q + 1).neg();
        cone.set_diff(q, SparseMatrix::block(dom, &h, &w, &[(0, 0, &dd), (0, 1, &fx), (1, 1, &dc)])?)?;
        let id_d = SparseMatrix::identity(target.dim(q), dom);
        inclusion.set(q, SparseMatrix::block(dom, &w, &[target.dim(q)], &[(0, 0, &id_d)])?);
        let id_c = SparseMatrix::identity(source.dim(q + 1), dom);
        projection.set(q, SparseMatrix::block(dom, &[source.dim(q + 1)], &w, &[(0, 1, &id_c)])?);
    }
    Ok(Cone { complex: cone, inclusion, projection })
}

/// Exactness of `H^q(C) -> H^q(D) -> H^q(cone) -> H^{q+1}(C) -> ...` over
/// the degrees `[lo, hi]`.
pub fn cone_les_check(
    f: &GradedMap,
    source: &CochainComplex,
    target: &CochainComplex,
    lo: i64,
    hi: i64,
) -> Result<Report, ChainError> {
    let cone = mapping_cone(f, source, target)?;
    let hc = cohomology_basis(source)?;
    let hd = cohomology_basis(target)?;
    let hk = cohomology_basis(&cone.complex)?;
    let mut maps = Vec::new();
    for q in lo..=hi {
        maps.push(induced_map(f, source, target, &hc, &hd, q)?);
        maps.push(induced_map(&cone.inclusion, target, &cone.complex, &hd, &hk, q)?);
        maps.push(induced_map(&cone.projection, &cone.complex, source, &hk, &hc, q)?);
    }
    let mut rep = Report::new("cone long exact sequence");
    rep.absorb(check_exact(&maps)?);
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::cohomology;
    use exactalg::Domain;

    #[test]
    fn cone_of_identity_is_acyclic() {
        let q = Domain::Rational;
        let mut c = CochainComplex::with_dims(q, [(0, 2), (1, 1)]);
        c.set_diff(0, SparseMatrix::from_rows_i64(q, &[vec![1, -1]])).unwrap();
        let cone = mapping_cone(&GradedMap::identity(&c), &c, &c).unwrap();
        assert!(crate::verify_complex(&cone.complex).passed);
        assert!(cohomology(&cone.complex).unwrap().dims().is_empty());
    }

    #[test]
    fn cone_of_zero_splits() {
        let q = Domain::Rational;
        let c = CochainComplex::with_dims(q, [(0, 1)]);
        let d = CochainComplex::with_dims(q, [(0, 2), (3, 1)]);
        let cone = mapping_cone(&GradedMap::new(0), &c, &d).unwrap();
        let h = cohomology(&cone.complex).unwrap().dims();
        assert_eq!(h, [(-1, 1), (0, 2), (3, 1)].into_iter().collect());
    }

    #[test]
    fn nonzero_shift_rejected() {
        let q = Domain::Rational;
        let c = CochainComplex::with_dims(q, [(0, 1)]);
        assert!(matches!(mapping_cone(&GradedMap::new(1), &c, &c), Err(ChainError::NormalizeShift(1))));
    }
}
