//! Equivariant modules of mixed complexes and the Gysin sequence.

use std::collections::BTreeMap;

use chain::{check_exact, cohomology_basis, CohomologyBasis, Report};
use exactalg::{SparseMatrix, SparseVec};

use crate::mixed::{dual_shift_mixed, MixedComplex};
use crate::ucomplex::{homotopy_fixed_points, UComplex};
use crate::umodule::{UCohomology, UModule};
use crate::MixedError;

/// Homotopy fixed points of the shifted dual `dual_shift_mixed(M, d)`,
/// i.e. maps from `M` into the trivial module `K[-d]` over the exterior
/// algebra, as a complex over `K[u]/u^{K+1}`.
pub fn equivariant_complex(m: &MixedComplex, kmax: usize, d: i64) -> Result<UComplex, MixedError> {
    homotopy_fixed_points(&dual_shift_mixed(m, d)?, kmax)
}

/// The equivariant module on its stable window.
pub fn equivariant_module(m: &MixedComplex, kmax: usize, d: i64) -> Result<UModule, MixedError> {
    Ok(UCohomology::new(&equivariant_complex(m, kmax, d)?, None)?.module)
}

/// The same module assembled directly as the Hom complex `Hom_K(M, K[-d])[[u]]`
/// with Koszul signs: `φ ↦ (-1)^{h+1} φ∘b + (-1)^{h+1} u φ∘B` for `φ` of
/// Hom-degree `h`. Independent of [`dual_shift_mixed`]; used as a cross-check.
pub fn equivariant_complex_koszul(m: &MixedComplex, kmax: usize, d: i64) -> Result<UComplex, MixedError> {
    m.domain().require_field()?;
    let c = &m.complex;
    let mut u = UComplex::new(m.domain(), kmax);
    for (&r, &n) in c.dims() {
        u.set_gens(d - r, n);
    }
    for h in u.gen_degrees() {
        // φ ∈ (M^{d-h})^*; φ∘b ∈ (M^{d-h-1})^*
        let b = c.diff(d - h - 1);
        u.set_part(0, h, b.transpose().signed(h + 1))?;
        if kmax >= 1 {
            // φ∘B ∈ (M^{d-h+1})^*
            let bb = m.bop.get(d - h + 1, c, c);
            u.set_part(1, h, bb.transpose().signed(h + 1))?;
        }
    }
    Ok(u)
}

/// Outcome of a Gysin check: exactness plus the three graded pieces.
#[derive(Clone, Debug)]
pub struct GysinReport {
    pub report: Report,
    /// The equivariant module on its stable window.
    pub equivariant: UModule,
    /// Dimensions of the forgetful term `H^*(dual_shift(M, d))`.
    pub forgetful: BTreeMap<i64, usize>,
}

fn coords_or_zero(b: &CohomologyBasis, q: i64, z: &SparseVec) -> Result<SparseVec, MixedError> {
    match b.degree(q) {
        Some(d) => Ok(d.coords(z)?),
        None => Ok(SparseVec::new()),
    }
}

/// Checks `H^{p-2}(E_K) -u-> H^p(E_{K+1}) -> H^p(N) -> H^{p-1}(E_K) -> ...`
/// where `N = dual_shift_mixed(M, d)` and `E_K` are its homotopy fixed points
/// modulo `u^{K+1}`. The sequence comes from the short exact sequence
/// `0 -> E_K[-2] -> E_{K+1} -> N -> 0`, so it is exact in every degree.
pub fn gysin_check(m: &MixedComplex, kmax: usize, d: i64) -> Result<GysinReport, MixedError> {
    let n = dual_shift_mixed(m, d)?;
    gysin_check_u(&homotopy_fixed_points(&n, kmax + 1)?)
}

/// The Gysin sequence of any complex `E` over `K[u]/u^{K+1}` with `K ≥ 1`:
/// `E_{K-1}[-2] -u-> E -> E_0`, the last term being the `u^0` part.
pub fn gysin_check_u(e: &UComplex) -> Result<GysinReport, MixedError> {
    let dom = e.domain();
    let kmax = e.kmax().checked_sub(1).ok_or_else(|| MixedError::Shape("Gysin sequence needs u-order at least 1".into()))?;
    let ek1 = e;
    let ek = e.with_kmax(kmax);
    let base = e.with_kmax(0);
    let (xk, xk1, nc) = (ek.expand()?, ek1.expand()?, base.expand()?);
    let (hk, hk1, hn) = (cohomology_basis(&xk)?, cohomology_basis(&xk1)?, cohomology_basis(&nc)?);
    let mut maps = Vec::new();
    let degrees = xk1.degrees();
    let (Some(&pmin), Some(&pmax)) = (degrees.first(), degrees.last()) else {
        return Ok(GysinReport {
            report: Report::new("gysin sequence"),
            equivariant: UModule::zero(dom, kmax),
            forgetful: BTreeMap::new(),
        });
    };
    for p in pmin..=pmax + 1 {
        // α: u-multiplication E_K^{p-2} -> E_{K+1}^p
        let mut cols = Vec::with_capacity(hk.dim(p - 2));
        if let Some(b) = hk.degree(p - 2) {
            for z in &b.reps {
                let mut img = Vec::new();
                for (j, g, off) in ek.layout(p - 2) {
                    let tgt = ek1.expanded_index(g, 0, j + 1).expect("u-shifted block exists");
                    for k in 0..ek.gens(g) {
                        if let Some(v) = z.get(off + k) {
                            img.push((tgt + k, v.clone()));
                        }
                    }
                }
                cols.push(coords_or_zero(&hk1, p, &SparseVec::from_pairs(img))?);
            }
        }
        maps.push(SparseMatrix::from_columns(hk1.dim(p), dom, cols));
        // β: the u^0 component E_{K+1}^p -> E_0^p
        let mut cols = Vec::new();
        if let Some(b) = hk1.degree(p) {
            for z in &b.reps {
                let comp = match ek1.expanded_index(p, 0, 0) {
                    Some(off) => z.window(off, off + e.gens(p)),
                    None => SparseVec::new(),
                };
                cols.push(coords_or_zero(&hn, p, &comp)?);
            }
        }
        maps.push(SparseMatrix::from_columns(hn.dim(p), dom, cols));
        // γ: [z] -> [(δz)/u] in E_K^{p-1}
        let mut cols = Vec::new();
        if let Some(b) = hn.degree(p) {
            for z in &b.reps {
                let mut img = SparseVec::new();
                for j in 1..=e.part_count().saturating_sub(1).min(kmax + 1) {
                    let Some(part) = e.part_ref(j, p) else { continue };
                    let g = p + 1 - 2 * j as i64;
                    if let Some(off) = ek.expanded_index(g, 0, j - 1) {
                        img = img.add(&part.mul_vec(z).shifted(off));
                    }
                }
                cols.push(coords_or_zero(&hk, p - 1, &img)?);
            }
        }
        maps.push(SparseMatrix::from_columns(hk.dim(p - 1), dom, cols));
    }
    let mut report = Report::new("gysin sequence");
    report.absorb(check_exact(&maps)?);
    Ok(GysinReport {
        report,
        equivariant: UCohomology::new(&ek, None)?.module,
        forgetful: hn.dims(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use chain::{CochainComplex, GradedMap};
    use exactalg::Domain;

    fn q() -> Domain {
        Domain::Rational
    }

    #[test]
    fn point_is_free_rank_one() {
        let m = MixedComplex::trivial(CochainComplex::concentrated(q(), 0, 1));
        let md = equivariant_module(&m, 3, 0).unwrap();
        assert_eq!(md.nonzero_dims(), [(0, 1), (2, 1), (4, 1), (6, 1)].into_iter().collect());
    }

    #[test]
    fn point_plus_shifted_point() {
        let m = MixedComplex::trivial(CochainComplex::with_dims(q(), [(0, 1), (1, 1)]));
        let md = equivariant_module(&m, 2, 1).unwrap();
        assert_eq!((md.lo, md.hi), (0, 4));
        assert!((0..=4).all(|q| md.dim(q) == 1));
    }

    #[test]
    fn two_line_gives_single_torsion_class() {
        let c = CochainComplex::with_dims(q(), [(0, 1), (1, 1)]);
        let mut b = GradedMap::new(-1);
        b.set(1, SparseMatrix::identity(1, q()));
        let md = equivariant_module(&MixedComplex::new(c, b), 3, 0).unwrap();
        assert_eq!(md.nonzero_dims(), [(-1, 1)].into_iter().collect());
    }

    #[test]
    fn trivial_gysin() {
        let m = MixedComplex::trivial(CochainComplex::concentrated(q(), 0, 1));
        let g = gysin_check(&m, 3, 1).unwrap();
        assert!(g.report.passed, "{}", g.report);
        assert_eq!(g.forgetful, [(1, 1)].into_iter().collect());
        for p in [1, 3, 5] {
            assert_eq!(g.equivariant.u_at(p).rows(), 1);
            assert_eq!(exactalg::rank(&g.equivariant.u_at(p)).unwrap(), 1);
        }
    }
}
