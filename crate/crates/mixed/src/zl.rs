//! Cohomology of `Z/ℓ` with coefficients in a complex, through the
//! two-periodic resolution alternating `1 - σ` and `1 + σ + ... + σ^{ℓ-1}`.

use chain::{dual_shift, CochainComplex, GradedMap};
use exactalg::SparseMatrix;

use crate::ucomplex::UComplex;
use crate::umodule::UCohomology;
use crate::MixedError;

/// Checks that `σ` is a degree-0 chain automorphism with `σ^ℓ = 1`.
pub fn check_zl_action(c: &CochainComplex, sigma: &GradedMap, ell: usize) -> Result<(), MixedError> {
    if sigma.shift != 0 || !sigma.verify(c, c).passed {
        return Err(MixedError::NotZlAction(ell));
    }
    for q in c.degrees() {
        let s = sigma.get(q, c, c);
        let mut p = SparseMatrix::identity(c.dim(q), c.domain());
        for _ in 0..ell {
            p = s.mul(&p)?;
        }
        if p != SparseMatrix::identity(c.dim(q), c.domain()) {
            return Err(MixedError::NotZlAction(ell));
        }
    }
    Ok(())
}

/// `1 - σ` and the norm `Σ σ^i` in degree `q`.
fn resolution_maps(c: &CochainComplex, sigma: &GradedMap, ell: usize, q: i64) -> Result<(SparseMatrix, SparseMatrix), MixedError> {
    let n = c.dim(q);
    let dom = c.domain();
    let s = sigma.get(q, c, c);
    let id = SparseMatrix::identity(n, dom);
    let mut norm = SparseMatrix::zeros(n, n, dom);
    let mut p = id.clone();
    for _ in 0..ell {
        norm = norm.add(&p)?;
        p = s.mul(&p)?;
    }
    Ok((id.sub(&s)?, norm))
}

/// Group cohomology complex `Hom_{Z/ℓ}(P_•, X)` as a complex over
/// `K[u]/u^{K+1}`, `u` being the periodicity class of degree 2. Generator
/// degree `q` is `X^q` (even slot) followed by `X^{q-1}` (odd slot).
pub fn group_cohomology_complex(x: &CochainComplex, sigma: &GradedMap, ell: usize, kmax: usize) -> Result<UComplex, MixedError> {
    check_zl_action(x, sigma, ell)?;
    let dom = x.domain();
    let mut u = UComplex::new(dom, kmax);
    let mut degrees: Vec<i64> = x.degrees();
    degrees.extend(x.degrees().iter().map(|q| q + 1));
    degrees.sort_unstable();
    degrees.dedup();
    for &q in &degrees {
        u.set_gens(q, x.dim(q) + x.dim(q - 1));
    }
    for &q in &degrees {
        let (one_minus, _) = resolution_maps(x, sigma, ell, q)?;
        let d_even = x.diff(q);
        let d_odd = x.diff(q - 1).neg();
        let h = [x.dim(q + 1), x.dim(q)];
        let w = [x.dim(q), x.dim(q - 1)];
        u.set_part(0, q, SparseMatrix::block(dom, &h, &w, &[(0, 0, &d_even), (1, 0, &one_minus), (1, 1, &d_odd)])?)?;
        if kmax >= 1 {
            let (_, norm) = resolution_maps(x, sigma, ell, q - 1)?;
            let h = [x.dim(q - 1), x.dim(q - 2)];
            u.set_part(1, q, SparseMatrix::block(dom, &h, &w, &[(0, 1, &norm)])?)?;
        }
    }
    Ok(u)
}

/// `Ext` over `K[Z/ℓ]` from `C` into `K[-d]`: group cohomology with
/// coefficients in `dual_shift(C, d)` and the contragredient action. The
/// resolution runs one period beyond the reported window `[a, a + 2K + 1]`,
/// so every reported degree is exact.
pub fn zl_cohomology(c: &CochainComplex, sigma: &GradedMap, ell: usize, kmax: usize, d: i64) -> Result<UCohomology, MixedError> {
    check_zl_action(c, sigma, ell)?;
    let x = dual_shift(c, d)?;
    let mut dual_sigma = GradedMap::new(0);
    for q in x.degrees() {
        let s = sigma.get(d - q, c, c);
        let mut inv = SparseMatrix::identity(c.dim(d - q), c.domain());
        for _ in 0..ell.saturating_sub(1) {
            inv = s.mul(&inv)?;
        }
        dual_sigma.set(q, inv.transpose());
    }
    let u = group_cohomology_complex(&x, &dual_sigma, ell, kmax + 1)?;
    let window = u.min_degree().map(|a| (a, a + 2 * kmax as i64 + 1));
    UCohomology::new(&u, window)
}

#[cfg(test)]
mod tests {
    use super::*;
    use exactalg::Domain;

    fn point(dom: Domain) -> (CochainComplex, GradedMap) {
        let c = CochainComplex::concentrated(dom, 0, 1);
        let s = GradedMap::identity(&c);
        (c, s)
    }

    #[test]
    fn trivial_action_mod_three() {
        let (c, s) = point(Domain::prime(3).unwrap());
        let h = zl_cohomology(&c, &s, 3, 3, 0).unwrap();
        assert!((0..=7).all(|q| h.module.dim(q) == 1));
    }

    #[test]
    fn trivial_action_over_q() {
        let (c, s) = point(Domain::Rational);
        let h = zl_cohomology(&c, &s, 3, 3, 0).unwrap();
        assert_eq!(h.module.nonzero_dims(), [(0, 1)].into_iter().collect());
    }

    #[test]
    fn regular_representation_is_acyclic_above_zero() {
        for dom in [Domain::Rational, Domain::prime(3).unwrap()] {
            let c = CochainComplex::concentrated(dom, 0, 3);
            let mut s = GradedMap::new(0);
            s.set(0, SparseMatrix::from_rows_i64(dom, &[vec![0, 0, 1], vec![1, 0, 0], vec![0, 1, 0]]));
            let h = zl_cohomology(&c, &s, 3, 2, 0).unwrap();
            assert_eq!(h.module.nonzero_dims(), [(0, 1)].into_iter().collect());
        }
    }

    #[test]
    fn wrong_order_rejected() {
        let dom = Domain::Rational;
        let c = CochainComplex::concentrated(dom, 0, 1);
        let s = GradedMap::scalar(&c, -1);
        assert!(matches!(zl_cohomology(&c, &s, 3, 1, 0), Err(MixedError::NotZlAction(3))));
        assert!(zl_cohomology(&c, &s, 2, 1, 0).is_ok());
    }
}
