//! Mixed complexes `(M, b, B)` and their shifted duals.

use chain::{dual_shift, verify_complex, CochainComplex, GradedMap, Report};
use exactalg::{kernel_basis, Domain, Echelon, SparseMatrix};

use crate::MixedError;

/// A cochain complex `(M, b)` with an operator `B` of degree −1 such that
/// `b² = B² = bB + Bb = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MixedComplex {
    pub complex: CochainComplex,
    pub bop: GradedMap,
}

impl MixedComplex {
    pub fn new(complex: CochainComplex, bop: GradedMap) -> Self {
        MixedComplex { complex, bop }
    }

    /// `B = 0`.
    pub fn trivial(complex: CochainComplex) -> Self {
        MixedComplex { complex, bop: GradedMap::new(-1) }
    }

    pub fn domain(&self) -> Domain {
        self.complex.domain()
    }

    pub fn direct_sum(&self, other: &MixedComplex) -> Result<MixedComplex, MixedError> {
        let complex = self.complex.direct_sum(&other.complex)?;
        let mut bop = GradedMap::new(-1);
        for q in complex.degrees() {
            let a = self.bop.get(q, &self.complex, &self.complex);
            let b = other.bop.get(q, &other.complex, &other.complex);
            let h = [self.complex.dim(q - 1), other.complex.dim(q - 1)];
            let w = [self.complex.dim(q), other.complex.dim(q)];
            bop.set(q, exactalg::SparseMatrix::block(self.domain(), &h, &w, &[(0, 0, &a), (1, 1, &b)])?);
        }
        Ok(MixedComplex { complex, bop })
    }
}

/// Exact check of the three mixed-complex identities.
pub fn verify_mixed(m: &MixedComplex) -> Report {
    let mut rep = Report::new("mixed complex");
    rep.absorb(verify_complex(&m.complex));
    if m.bop.shift != -1 {
        rep.fail(format!("B has degree {}, expected -1", m.bop.shift));
        return rep;
    }
    let c = &m.complex;
    for (&q, b) in m.bop.components() {
        if b.shape() != (c.dim(q - 1), c.dim(q)) {
            rep.fail(format!("B at degree {q} has shape {:?}", b.shape()));
            return rep;
        }
    }
    for q in c.degrees() {
        let bq = m.bop.get(q, c, c);
        let bb = m.bop.get(q - 1, c, c).mul(&bq);
        match bb {
            Ok(x) if x.is_zero() => {}
            _ => rep.fail(format!("B² is nonzero at degree {q}")),
        }
        let lhs = c.diff(q - 1).mul(&bq).and_then(|x| x.add(&m.bop.get(q + 1, c, c).mul(&c.diff(q))?));
        match lhs {
            Ok(x) if x.is_zero() => {}
            _ => rep.fail(format!("bB + Bb is nonzero at degree {q}")),
        }
    }
    rep
}

/// `out^q = (M^{d-q})^*`: the dual complex of [`dual_shift`] with
/// `B^∨ = (-1)^q B^T` on `out^q`.
pub fn dual_shift_mixed(m: &MixedComplex, d: i64) -> Result<MixedComplex, MixedError> {
    let complex = dual_shift(&m.complex, d)?;
    let mut bop = GradedMap::new(-1);
    for q in complex.degrees() {
        if let Some(b) = m.bop.get_ref(d - q + 1) {
            bop.set(q, b.transpose().signed(q));
        }
    }
    Ok(MixedComplex { complex, bop })
}

/// The good truncation `τ^{≤k}`: degrees above `k` are dropped and `M^k` is
/// replaced by the cocycles `ker b^k`. A sub-mixed complex with the same
/// cohomology as `M` through degree `k`.
pub fn truncate_above(m: &MixedComplex, k: i64) -> Result<MixedComplex, MixedError> {
    let c = &m.complex;
    let dom = m.domain();
    let z = kernel_basis(&c.diff(k))?;
    let zmat = SparseMatrix::from_columns(c.dim(k), dom, z.clone());
    let mut out = CochainComplex::new(dom);
    for (&q, &n) in c.dims().range(..k) {
        out.set_dim(q, n);
    }
    out.set_dim(k, z.len());
    for q in out.degrees() {
        if q < k - 1 {
            out.set_diff(q, c.diff(q))?;
        }
    }
    // b^{k-1} lands in the cocycles; express it in the kernel basis
    let e = {
        let mut e = Echelon::new(c.dim(k), dom, true)?;
        for (i, v) in z.iter().enumerate() {
            e.insert(i, v);
        }
        e
    };
    let prev = c.diff(k - 1);
    let cols = prev.columns().iter().map(|v| e.reduce(v).combo).collect();
    out.set_diff(k - 1, SparseMatrix::from_columns(z.len(), dom, cols))?;
    let mut bop = GradedMap::new(-1);
    for (&q, b) in m.bop.components() {
        if q < k {
            bop.set(q, b.clone());
        } else if q == k {
            bop.set(q, b.mul(&zmat)?);
        }
    }
    Ok(MixedComplex { complex: out, bop })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_line() -> MixedComplex {
        let q = Domain::Rational;
        let c = CochainComplex::with_dims(q, [(0, 1), (1, 1)]);
        let mut b = GradedMap::new(-1);
        b.set(1, SparseMatrix::identity(1, q));
        MixedComplex::new(c, b)
    }

    #[test]
    fn zero_operator_passes() {
        let c = CochainComplex::with_dims(Domain::Rational, [(0, 2), (1, 1)]);
        assert!(verify_mixed(&MixedComplex::trivial(c)).passed);
    }

    #[test]
    fn wrong_degree_fails() {
        let mut m = two_line();
        m.bop.shift = 1;
        assert!(!verify_mixed(&m).passed);
    }

    #[test]
    fn dual_keeps_axioms() {
        let m = two_line();
        assert!(verify_mixed(&m).passed);
        for d in -2..3 {
            assert!(verify_mixed(&dual_shift_mixed(&m, d).unwrap()).passed);
        }
    }

    #[test]
    fn good_truncation_keeps_cocycles() {
        let q = Domain::Rational;
        let mut c = CochainComplex::with_dims(q, [(0, 1), (1, 2), (2, 1)]);
        c.set_diff(0, SparseMatrix::from_rows_i64(q, &[vec![1], vec![0]])).unwrap();
        c.set_diff(1, SparseMatrix::from_rows_i64(q, &[vec![0, 1]])).unwrap();
        let mut b = GradedMap::new(-1);
        b.set(1, SparseMatrix::from_rows_i64(q, &[vec![0, 1]]));
        b.set(2, SparseMatrix::from_rows_i64(q, &[vec![-1], vec![0]]));
        let m = MixedComplex::new(c, b);
        assert!(verify_mixed(&m).passed);
        let t = truncate_above(&m, 1).unwrap();
        assert!(verify_mixed(&t).passed);
        assert_eq!(t.complex.dim(1), 1);
        assert_eq!(t.complex.dim(2), 0);
        assert_eq!(chain::cohomology_dims(&t.complex).unwrap(), chain::cohomology_dims(&m.complex).unwrap().into_iter().filter(|&(d, _)| d <= 1).collect());
    }
}
