//! Strong deformation retractions of a level onto its cohomology.

use std::collections::BTreeMap;

use chain::{degree_basis, CochainComplex};
use exactalg::{kernel_basis, Echelon, SparseVec};

use crate::PrecyclicError;

/// Data `(P, I, h)` retracting a complex `(C, ∂)` onto a complex `H` with
/// zero differential: `PI = 1`, `1 - IP = ∂h + h∂`, `h² = hI = Ph = 0`.
/// Vectors of `C` may be representatives modulo a subcomplex that `P`
/// kills and the structure maps preserve.
pub trait LevelSdr: Send + Sync {
    /// Dimensions of `H` by degree.
    fn reduced_dims(&self) -> &BTreeMap<i64, usize>;
    /// `P: C^q -> H^q`.
    fn project(&self, q: i64, v: &SparseVec) -> SparseVec;
    /// `I: H^q -> C^q`.
    fn include(&self, q: i64, x: &SparseVec) -> SparseVec;
    /// `h: C^q -> C^{q-1}`.
    fn homotopy(&self, q: i64, v: &SparseVec) -> SparseVec;
}

/// The trivial retraction `P = I = 1`, `h = 0`, valid when `∂ = 0`.
#[derive(Clone, Debug)]
pub struct IdentitySdr {
    dims: BTreeMap<i64, usize>,
}

impl IdentitySdr {
    pub fn new(c: &CochainComplex) -> Result<Self, PrecyclicError> {
        if c.degrees().iter().any(|&q| c.diff_ref(q).is_some()) {
            return Err(PrecyclicError::Shape("identity retraction needs a zero differential".into()));
        }
        Ok(IdentitySdr { dims: c.dims().clone() })
    }
}

impl LevelSdr for IdentitySdr {
    fn reduced_dims(&self) -> &BTreeMap<i64, usize> {
        &self.dims
    }
    fn project(&self, _: i64, v: &SparseVec) -> SparseVec {
        v.clone()
    }
    fn include(&self, _: i64, x: &SparseVec) -> SparseVec {
        x.clone()
    }
    fn homotopy(&self, _: i64, _: &SparseVec) -> SparseVec {
        SparseVec::new()
    }
}

#[derive(Clone, Debug)]
struct DegreeSplit {
    /// Coordinates against `[∂W^{q-1} | H reps | W^q]`.
    coords: Echelon,
    boundaries: usize,
    reps: Vec<SparseVec>,
    /// Indices of the unit vectors spanning `W^q`.
    complement: Vec<usize>,
}

/// A retraction computed by linear algebra: `C^q = ∂W^{q-1} ⊕ H^q ⊕ W^q`
/// with `W^q` spanned by unit vectors complementing the cocycles.
#[derive(Clone, Debug)]
pub struct ExplicitSdr {
    dims: BTreeMap<i64, usize>,
    splits: BTreeMap<i64, DegreeSplit>,
}

impl ExplicitSdr {
    pub fn new(c: &CochainComplex) -> Result<Self, PrecyclicError> {
        let dom = c.domain();
        let mut complements = BTreeMap::new();
        for q in c.degrees() {
            let n = c.dim(q);
            let kernel = match c.diff_ref(q) {
                Some(d) => kernel_basis(d)?,
                None => (0..n).map(|i| SparseVec::unit(i, dom)).collect(),
            };
            let mut e = Echelon::new(n, dom, false)?;
            for z in &kernel {
                e.insert_untracked(z);
            }
            complements.insert(q, (0..n).filter(|&r| !e.is_pivot_row(r)).collect::<Vec<_>>());
        }
        let mut splits = BTreeMap::new();
        let mut dims = BTreeMap::new();
        for q in c.degrees() {
            let n = c.dim(q);
            let reps = degree_basis(c, q)?.reps;
            let mut coords = Echelon::new(n, dom, true)?;
            let mut id = 0;
            let mut boundaries = 0;
            if let (Some(prev), Some(w)) = (c.diff_ref(q - 1), complements.get(&(q - 1))) {
                for &r in w {
                    coords.insert(id, prev.column(r));
                    id += 1;
                }
                boundaries = w.len();
            }
            for z in &reps {
                coords.insert(id, z);
                id += 1;
            }
            for &r in &complements[&q] {
                coords.insert(id, &SparseVec::unit(r, dom));
                id += 1;
            }
            if coords.rank() != n {
                return Err(PrecyclicError::Shape(format!("degree {q} splitting has rank {} of {n}", coords.rank())));
            }
            if !reps.is_empty() {
                dims.insert(q, reps.len());
            }
            splits.insert(q, DegreeSplit { coords, boundaries, reps, complement: complements[&q].clone() });
        }
        Ok(ExplicitSdr { dims, splits })
    }
}

impl LevelSdr for ExplicitSdr {
    fn reduced_dims(&self) -> &BTreeMap<i64, usize> {
        &self.dims
    }

    fn project(&self, q: i64, v: &SparseVec) -> SparseVec {
        let Some(s) = self.splits.get(&q) else { return SparseVec::new() };
        let combo = s.coords.reduce(v).combo;
        combo.window(s.boundaries, s.boundaries + s.reps.len())
    }

    fn include(&self, q: i64, x: &SparseVec) -> SparseVec {
        let Some(s) = self.splits.get(&q) else { return SparseVec::new() };
        let mut out = SparseVec::new();
        for (i, a) in x.entries() {
            out = out.axpy(a, &s.reps[*i]);
        }
        out
    }

    fn homotopy(&self, q: i64, v: &SparseVec) -> SparseVec {
        let (Some(s), Some(prev)) = (self.splits.get(&q), self.splits.get(&(q - 1))) else { return SparseVec::new() };
        let combo = s.coords.reduce(v).combo;
        let pairs = combo
            .entries()
            .iter()
            .filter(|(i, _)| *i < s.boundaries)
            .map(|(i, a)| (prev.complement[*i], a.clone()))
            .collect();
        SparseVec::from_pairs(pairs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use exactalg::{Domain, SparseMatrix};

    fn check_identities(c: &CochainComplex, s: &dyn LevelSdr) {
        let dom = c.domain();
        for q in c.degrees() {
            for i in 0..c.dim(q) {
                let v = SparseVec::unit(i, dom);
                let ip = s.include(q, &s.project(q, &v));
                let dh = c.diff(q - 1).mul_vec(&s.homotopy(q, &v));
                let hd = s.homotopy(q + 1, &c.diff(q).mul_vec(&v));
                assert_eq!(v.sub(&ip), dh.add(&hd), "degree {q}, vector {i}");
                assert!(s.homotopy(q - 1, &s.homotopy(q, &v)).is_zero());
                assert!(s.project(q - 1, &s.homotopy(q, &v)).is_zero());
            }
            for i in 0..s.reduced_dims().get(&q).copied().unwrap_or(0) {
                let x = SparseVec::unit(i, dom);
                assert_eq!(s.project(q, &s.include(q, &x)), x);
                assert!(s.homotopy(q, &s.include(q, &x)).is_zero());
            }
        }
    }

    #[test]
    fn explicit_identities_on_a_small_complex() {
        let q = Domain::Rational;
        let mut c = CochainComplex::with_dims(q, [(-1, 2), (0, 3), (1, 2)]);
        c.set_diff(-1, SparseMatrix::from_rows_i64(q, &[vec![1, 0], vec![1, 0], vec![0, 0]])).unwrap();
        c.set_diff(0, SparseMatrix::from_rows_i64(q, &[vec![1, -1, 0], vec![0, 0, 0]])).unwrap();
        let s = ExplicitSdr::new(&c).unwrap();
        assert_eq!(s.reduced_dims(), &BTreeMap::from([(-1, 1), (0, 1), (1, 1)]));
        check_identities(&c, &s);
    }
}
