//! Graded modules over `K[u]` known on a finite window of degrees.

use std::collections::BTreeMap;

use chain::{degree_basis, CochainComplex, DegreeBasis};
use exactalg::{rank, solve_linear, Domain, SparseMatrix, SparseVec};

use crate::ucomplex::{UComplex, UMap};
use crate::MixedError;

/// A class singled out in a module, transported by module maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkedClass {
    pub degree: i64,
    pub coords: SparseVec,
}

/// Dimensions and `u`-action on the degrees `[lo, hi]`. Degrees below `lo`
/// are zero; degrees above `hi` are unknown.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UModule {
    pub domain: Domain,
    pub kmax: usize,
    pub lo: i64,
    pub hi: i64,
    pub dims: BTreeMap<i64, usize>,
    /// `u: V_q -> V_{q+2}` for `lo <= q` and `q + 2 <= hi`.
    pub u: BTreeMap<i64, SparseMatrix>,
    pub marked: Option<MarkedClass>,
}

impl UModule {
    /// The zero module on an empty window.
    pub fn zero(domain: Domain, kmax: usize) -> Self {
        UModule { domain, kmax, lo: 0, hi: -1, dims: BTreeMap::new(), u: BTreeMap::new(), marked: None }
    }

    pub fn dim(&self, q: i64) -> usize {
        self.dims.get(&q).copied().unwrap_or(0)
    }

    /// Nonzero dimensions only.
    pub fn nonzero_dims(&self) -> BTreeMap<i64, usize> {
        self.dims.iter().filter(|(_, &n)| n > 0).map(|(&q, &n)| (q, n)).collect()
    }

    pub fn in_window(&self, q: i64) -> bool {
        q >= self.lo && q <= self.hi
    }

    pub fn u_at(&self, q: i64) -> SparseMatrix {
        self.u
            .get(&q)
            .cloned()
            .unwrap_or_else(|| SparseMatrix::zeros(self.dim(q + 2), self.dim(q), self.domain))
    }

    /// `u^k: V_q -> V_{q+2k}`, or `None` when the target leaves the window.
    pub fn u_power(&self, q: i64, k: usize) -> Option<SparseMatrix> {
        let top = q + 2 * k as i64;
        if top > self.hi {
            return None;
        }
        let mut m = SparseMatrix::identity(self.dim(q), self.domain);
        for step in 0..k {
            m = self.u_at(q + 2 * step as i64).mul(&m).expect("u shapes");
        }
        Some(m)
    }

    /// Shapes of the `u`-action agree with the dimensions.
    pub fn validate(&self) -> Result<(), MixedError> {
        for (&q, m) in &self.u {
            if !self.in_window(q) || !self.in_window(q + 2) {
                return Err(MixedError::NotAModule(format!("u leaves the window at degree {q}")));
            }
            if m.shape() != (self.dim(q + 2), self.dim(q)) || m.domain() != self.domain {
                return Err(MixedError::NotAModule(format!("u at degree {q} has shape {:?}", m.shape())));
            }
        }
        Ok(())
    }

    /// Whether `x ∈ V_q` lies in `u^k V_{q-2k}`. Degrees below the window are
    /// zero, so only zero is divisible there.
    pub fn divisible(&self, q: i64, x: &SparseVec, k: usize) -> Result<bool, MixedError> {
        if x.is_zero() || k == 0 {
            return Ok(true);
        }
        let src = q - 2 * k as i64;
        if src < self.lo {
            return Ok(false);
        }
        let m = self.u_power(src, k).ok_or_else(|| MixedError::NotAModule("degree above window".into()))?;
        Ok(solve_linear(&m, x)?.is_some())
    }

    /// Direct sum over the intersection of the windows.
    pub fn direct_sum(&self, other: &UModule) -> Result<UModule, MixedError> {
        let lo = self.lo.min(other.lo);
        let hi = self.hi.min(other.hi);
        let mut out = UModule { domain: self.domain, kmax: self.kmax.min(other.kmax), lo, hi, dims: BTreeMap::new(), u: BTreeMap::new(), marked: None };
        for q in lo..=hi {
            out.dims.insert(q, self.dim(q) + other.dim(q));
        }
        for q in lo..=hi - 2 {
            let (a, b) = (self.u_at(q), other.u_at(q));
            let m = SparseMatrix::block(self.domain, &[self.dim(q + 2), other.dim(q + 2)], &[self.dim(q), other.dim(q)], &[(0, 0, &a), (1, 1, &b)])?;
            out.u.insert(q, m);
        }
        Ok(out)
    }
}

/// Cohomology of a [`UComplex`] on a window, with chosen bases so that
/// classes and maps can be expressed in coordinates.
#[derive(Clone, Debug)]
pub struct UCohomology {
    pub complex: UComplex,
    pub expanded: CochainComplex,
    pub bases: BTreeMap<i64, DegreeBasis>,
    pub module: UModule,
}

impl UCohomology {
    /// Computes the module on `window`, defaulting to the stable window.
    pub fn new(complex: &UComplex, window: Option<(i64, i64)>) -> Result<UCohomology, MixedError> {
        let expanded = complex.expand()?;
        let (lo, hi) = match window.or_else(|| complex.stable_window()) {
            Some(w) => w,
            None => {
                return Ok(UCohomology {
                    complex: complex.clone(),
                    expanded,
                    bases: BTreeMap::new(),
                    module: UModule::zero(complex.domain(), complex.kmax()),
                })
            }
        };
        let mut bases = BTreeMap::new();
        let mut dims = BTreeMap::new();
        for q in lo..=hi {
            let b = degree_basis(&expanded, q)?;
            dims.insert(q, b.dim());
            bases.insert(q, b);
        }
        let umap = complex.u_map();
        let mut u = BTreeMap::new();
        for q in lo..=hi - 2 {
            let m = umap.get(q, &expanded, &expanded);
            let src = &bases[&q];
            let tgt = &bases[&(q + 2)];
            let cols = src.reps.iter().map(|z| tgt.coords(&m.mul_vec(z))).collect::<Result<Vec<_>, _>>()?;
            u.insert(q, SparseMatrix::from_columns(tgt.dim(), complex.domain(), cols));
        }
        let module = UModule { domain: complex.domain(), kmax: complex.kmax(), lo, hi, dims, u, marked: None };
        Ok(UCohomology { complex: complex.clone(), expanded, bases, module })
    }

    /// Coordinates of the class of an expanded cocycle in degree `q`.
    pub fn coords(&self, q: i64, z: &SparseVec) -> Result<SparseVec, MixedError> {
        let b = self.bases.get(&q).ok_or_else(|| MixedError::NotAModule(format!("degree {q} outside the window")))?;
        Ok(b.coords(z)?)
    }

    /// Marks the class of the cocycle `z` in degree `q`.
    pub fn mark(&mut self, q: i64, z: &SparseVec) -> Result<(), MixedError> {
        let coords = self.coords(q, z)?;
        self.module.marked = Some(MarkedClass { degree: q, coords });
        Ok(())
    }

    /// Matrices of the map induced by `f` in every window degree `q` whose
    /// image degree lies in the target window.
    pub fn induced(&self, f: &UMap, target: &UCohomology) -> Result<BTreeMap<i64, SparseMatrix>, MixedError> {
        let g = f.expand(&self.complex, &target.complex);
        let mut out = BTreeMap::new();
        for (&q, b) in &self.bases {
            let Some(tb) = target.bases.get(&(q + f.shift)) else { continue };
            let m = g.get(q, &self.expanded, &target.expanded);
            let cols = b.reps.iter().map(|z| tb.coords(&m.mul_vec(z))).collect::<Result<Vec<_>, _>>()?;
            out.insert(q, SparseMatrix::from_columns(tb.dim(), self.complex.domain(), cols));
        }
        Ok(out)
    }
}

/// Ranks of a family of per-degree matrices.
pub fn ranks(maps: &BTreeMap<i64, SparseMatrix>) -> Result<BTreeMap<i64, usize>, MixedError> {
    maps.iter().map(|(&q, m)| Ok((q, rank(m)?))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mixed::MixedComplex;
    use crate::ucomplex::homotopy_fixed_points;

    #[test]
    fn point_module_u_is_iso() {
        let m = MixedComplex::trivial(CochainComplex::concentrated(Domain::Rational, 0, 1));
        let h = UCohomology::new(&homotopy_fixed_points(&m, 3).unwrap(), None).unwrap();
        let md = &h.module;
        assert_eq!((md.lo, md.hi), (0, 6));
        for q in [0, 2, 4] {
            assert_eq!(rank(&md.u_at(q)).unwrap(), 1);
        }
        let x = SparseVec::unit(0, Domain::Rational);
        assert!(md.divisible(4, &x, 2).unwrap());
        assert!(!md.divisible(0, &x, 1).unwrap());
    }

    #[test]
    fn bad_shape_is_not_a_module() {
        let q = Domain::Rational;
        let mut m = UModule::zero(q, 1);
        m.lo = 0;
        m.hi = 2;
        m.dims.insert(0, 1);
        m.u.insert(0, SparseMatrix::identity(1, q));
        assert!(m.validate().is_err());
    }
}
