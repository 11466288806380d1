//! Cohomology: graded dimensions, integral ranks with torsion, and explicit
//! bases with coordinate maps.

use std::collections::BTreeMap;

use exactalg::{kernel_basis, rank, smith_normal_form, Echelon, Integer, SparseMatrix, SparseVec};

use crate::complex::{CochainComplex, GradedMap};
use crate::ChainError;

/// One cohomology group: free rank plus torsion coefficients (integers only).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Group {
    pub rank: usize,
    pub torsion: Vec<Integer>,
}

/// Graded cohomology; degrees with zero groups are omitted.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Cohomology {
    pub groups: BTreeMap<i64, Group>,
}

impl Cohomology {
    /// Free ranks per degree (dimensions over a field).
    pub fn dims(&self) -> BTreeMap<i64, usize> {
        self.groups.iter().filter(|(_, g)| g.rank > 0).map(|(&q, g)| (q, g.rank)).collect()
    }

    pub fn dim(&self, q: i64) -> usize {
        self.groups.get(&q).map_or(0, |g| g.rank)
    }

    pub fn is_torsion_free(&self) -> bool {
        self.groups.values().all(|g| g.torsion.is_empty())
    }
}

/// Ranks of every differential; over the integers these are ranks over Q.
fn diff_ranks(c: &CochainComplex) -> Result<BTreeMap<i64, usize>, ChainError> {
    let mut out = BTreeMap::new();
    for q in c.degrees() {
        if let Some(d) = c.diff_ref(q) {
            let r = if c.domain().is_field() {
                rank(d)?
            } else {
                smith_normal_form(d)?.rank()
            };
            out.insert(q, r);
        }
    }
    Ok(out)
}

/// Graded cohomology. Over a field: `dim ker d^q - rank d^{q-1}`. Over the
/// integers: free ranks together with torsion from Smith normal forms.
pub fn cohomology(c: &CochainComplex) -> Result<Cohomology, ChainError> {
    let mut groups = BTreeMap::new();
    if c.domain().is_field() {
        let ranks = diff_ranks(c)?;
        for q in c.degrees() {
            let r_out = ranks.get(&q).copied().unwrap_or(0);
            let r_in = ranks.get(&(q - 1)).copied().unwrap_or(0);
            let h = c.dim(q) - r_out - r_in;
            if h > 0 {
                groups.insert(q, Group { rank: h, torsion: Vec::new() });
            }
        }
    } else {
        let mut ranks = BTreeMap::new();
        let mut torsion: BTreeMap<i64, Vec<Integer>> = BTreeMap::new();
        for q in c.degrees() {
            if let Some(d) = c.diff_ref(q) {
                let s = smith_normal_form(d)?;
                ranks.insert(q, s.rank());
                let t = s.torsion();
                if !t.is_empty() {
                    torsion.insert(q + 1, t);
                }
            }
        }
        for q in c.degrees() {
            let r_out = ranks.get(&q).copied().unwrap_or(0);
            let r_in = ranks.get(&(q - 1)).copied().unwrap_or(0);
            let g = Group { rank: c.dim(q) - r_out - r_in, torsion: torsion.remove(&q).unwrap_or_default() };
            if g.rank > 0 || !g.torsion.is_empty() {
                groups.insert(q, g);
            }
        }
    }
    Ok(Cohomology { groups })
}

/// Field-coefficient graded dimensions.
pub fn cohomology_dims(c: &CochainComplex) -> Result<BTreeMap<i64, usize>, ChainError> {
    c.domain().require_field()?;
    Ok(cohomology(c)?.dims())
}

/// Chosen cocycle representatives in one degree, with the data to express
/// any cocycle in terms of them.
#[derive(Clone, Debug)]
pub struct DegreeBasis {
    pub reps: Vec<SparseVec>,
    echelon: Echelon,
    next_diff: SparseMatrix,
}

impl DegreeBasis {
    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    /// Coordinates of the class of a cocycle `z`.
    pub fn coords(&self, z: &SparseVec) -> Result<SparseVec, ChainError> {
        if !self.next_diff.mul_vec(z).is_zero() {
            return Err(ChainError::NotACocycle);
        }
        let red = self.echelon.reduce(z);
        debug_assert!(red.residual.is_zero());
        Ok(red.combo)
    }

    /// True when the cocycle `z` is a coboundary.
    pub fn is_exact(&self, z: &SparseVec) -> Result<bool, ChainError> {
        Ok(self.coords(z)?.is_zero())
    }

    /// The cocycle `sum a_i rep_i`.
    pub fn lift(&self, a: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (i, c) in a.entries() {
            out = out.axpy(c, &self.reps[*i]);
        }
        out
    }
}

/// Explicit cohomology bases of a field complex in every degree.
#[derive(Clone, Debug)]
pub struct CohomologyBasis {
    pub degrees: BTreeMap<i64, DegreeBasis>,
}

impl CohomologyBasis {
    pub fn dim(&self, q: i64) -> usize {
        self.degrees.get(&q).map_or(0, |b| b.dim())
    }

    pub fn dims(&self) -> BTreeMap<i64, usize> {
        self.degrees.iter().filter(|(_, b)| b.dim() > 0).map(|(&q, b)| (q, b.dim())).collect()
    }

    pub fn degree(&self, q: i64) -> Option<&DegreeBasis> {
        self.degrees.get(&q)
    }
}

/// Bases of `H^q` for all `q`, representatives drawn from a kernel basis
/// of `d^q` and independent modulo the image of `d^{q-1}`.
pub fn cohomology_basis(c: &CochainComplex) -> Result<CohomologyBasis, ChainError> {
    c.domain().require_field()?;
    let mut degrees = BTreeMap::new();
    for q in c.degrees() {
        degrees.insert(q, degree_basis(c, q)?);
    }
    Ok(CohomologyBasis { degrees })
}

pub fn degree_basis(c: &CochainComplex, q: i64) -> Result<DegreeBasis, ChainError> {
    let n = c.dim(q);
    let mut e = Echelon::new(n, c.domain(), true)?;
    if let Some(prev) = c.diff_ref(q - 1) {
        for col in prev.columns() {
            e.insert_untracked(col);
        }
    }
    let kernel = match c.diff_ref(q) {
        Some(d) => kernel_basis(d)?,
        None => (0..n).map(|i| SparseVec::unit(i, c.domain())).collect(),
    };
    let mut reps = Vec::new();
    for z in kernel {
        if e.insert(reps.len(), &z).is_none() {
            reps.push(z);
        }
    }
    Ok(DegreeBasis { reps, echelon: e, next_diff: c.diff(q) })
}

/// Matrix of the map induced on cohomology from degree `q` of the source to
/// degree `q + shift` of the target, in the given bases.
pub fn induced_map(
    f: &GradedMap,
    source: &CochainComplex,
    target: &CochainComplex,
    hs: &CohomologyBasis,
    ht: &CohomologyBasis,
    q: i64,
) -> Result<SparseMatrix, ChainError> {
    let m = f.get(q, source, target);
    let dom = source.domain();
    let cols_n = hs.dim(q);
    let rows_n = ht.dim(q + f.shift);
    let mut cols = Vec::with_capacity(cols_n);
    if let Some(b) = hs.degree(q) {
        for z in &b.reps {
            let img = m.mul_vec(z);
            let coords = match ht.degree(q + f.shift) {
                Some(t) => t.coords(&img)?,
                None => SparseVec::new(),
            };
            cols.push(coords);
        }
    }
    Ok(SparseMatrix::from_columns(rows_n, dom, cols))
}

#[cfg(test)]
mod tests {
    use super::*;
    use exactalg::Domain;

    #[test]
    fn zero_differential_keeps_dims() {
        let c = CochainComplex::with_dims(Domain::Rational, [(0, 2), (1, 3)]);
        let h = cohomology(&c).unwrap();
        assert_eq!(h.dims(), BTreeMap::from([(0, 2), (1, 3)]));
    }

    #[test]
    fn identity_differential_is_acyclic() {
        let q = Domain::Rational;
        let mut c = CochainComplex::with_dims(q, [(0, 1), (1, 1)]);
        c.set_diff(0, SparseMatrix::identity(1, q)).unwrap();
        assert!(cohomology(&c).unwrap().dims().is_empty());
    }

    #[test]
    fn integer_torsion_from_multiplication_by_two() {
        let z = Domain::Integer;
        let mut c = CochainComplex::with_dims(z, [(0, 1), (1, 1)]);
        c.set_diff(0, SparseMatrix::from_rows_i64(z, &[vec![2]])).unwrap();
        let h = cohomology(&c).unwrap();
        assert_eq!(h.dim(0), 0);
        assert_eq!(h.groups[&1].torsion, vec![Integer::from(2)]);
        let f = Domain::prime(2).unwrap();
        let h2 = cohomology(&c.change_domain(f).unwrap()).unwrap();
        assert_eq!(h2.dims(), BTreeMap::from([(0, 1), (1, 1)]));
    }

    #[test]
    fn coordinates_of_cohomologous_cocycles_agree() {
        let q = Domain::Rational;
        let mut c = CochainComplex::with_dims(q, [(0, 1), (1, 2)]);
        c.set_diff(0, SparseMatrix::from_rows_i64(q, &[vec![1], vec![1]])).unwrap();
        let b = cohomology_basis(&c).unwrap();
        assert_eq!(b.dim(1), 1);
        let e0 = SparseVec::unit(0, q);
        let e1 = SparseVec::unit(1, q);
        let c0 = b.degree(1).unwrap().coords(&e0).unwrap();
        let c1 = b.degree(1).unwrap().coords(&e1).unwrap();
        assert_eq!(c0, c1.neg());
        assert!(b.degree(1).unwrap().is_exact(&e0.add(&e1)).unwrap());
    }
}
