//! Incremental column echelon forms over a field: rank, kernels, solves.

use std::collections::HashMap;

use crate::matrix::SparseMatrix;
use crate::scalar::{Domain, Scalar};
use crate::vector::SparseVec;
use crate::ExactError;

/// An echelon basis of a subspace of `K^dim`, built by inserting vectors one
/// at a time. Each stored basis vector has a distinct pivot (its largest
/// index) normalized to one, and remembers how it combines the inserted
/// vectors, addressed by caller-chosen ids.
#[derive(Clone, Debug)]
pub struct Echelon {
    domain: Domain,
    dim: usize,
    pivot_of_row: HashMap<usize, usize>,
    basis: Vec<SparseVec>,
    combos: Vec<SparseVec>,
    track: bool,
}

/// Outcome of reducing a vector against an echelon basis.
#[derive(Clone, Debug)]
pub struct Reduced {
    /// What is left after eliminating every pivot row.
    pub residual: SparseVec,
    /// `v = residual + sum combo[id] * inserted[id]` (when tracking).
    pub combo: SparseVec,
}

impl Echelon {
    /// An empty basis in `K^dim`; `track` enables combination bookkeeping.
    pub fn new(dim: usize, domain: Domain, track: bool) -> Result<Self, ExactError> {
        domain.require_field()?;
        Ok(Echelon { domain, dim, pivot_of_row: HashMap::new(), basis: Vec::new(), combos: Vec::new(), track })
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn basis(&self) -> &[SparseVec] {
        &self.basis
    }

    pub fn pivot_rows(&self) -> Vec<usize> {
        let mut r: Vec<usize> = self.pivot_of_row.keys().copied().collect();
        r.sort_unstable();
        r
    }

    pub fn is_pivot_row(&self, r: usize) -> bool {
        self.pivot_of_row.contains_key(&r)
    }

    /// Eliminates all pivot rows from `v`.
    pub fn reduce(&self, v: &SparseVec) -> Reduced {
        let mut cur = v.clone().into_entries();
        let mut residual: Vec<(usize, Scalar)> = Vec::new();
        let mut combo = SparseVec::new();
        while let Some((r, a)) = cur.last().cloned() {
            match self.pivot_of_row.get(&r) {
                Some(&k) => {
                    let next = SparseVec::from_sorted(cur).axpy(&a.neg(), &self.basis[k]);
                    if self.track {
                        combo = combo.axpy(&a, &self.combos[k]);
                    }
                    cur = next.into_entries();
                }
                None => {
                    residual.push((r, a));
                    cur.pop();
                }
            }
        }
        residual.reverse();
        Reduced { residual: SparseVec::from_sorted(residual), combo }
    }

    /// Inserts `v` under `id`. Returns `None` when `v` enlarges the span, and
    /// otherwise the relation `inserted[id] - sum c_i inserted[i] = 0` as a
    /// combination vector over ids.
    pub fn insert(&mut self, id: usize, v: &SparseVec) -> Option<SparseVec> {
        let red = self.reduce(v);
        let unit = SparseVec::unit(id, self.domain);
        match red.residual.entries().last() {
            None => Some(unit.sub(&red.combo)),
            Some((r, a)) => {
                let inv = a.inv().expect("nonzero pivot in a field");
                let r = *r;
                self.basis.push(red.residual.scale(&inv));
                if self.track {
                    self.combos.push(unit.sub(&red.combo).scale(&inv));
                } else {
                    self.combos.push(SparseVec::new());
                }
                self.pivot_of_row.insert(r, self.basis.len() - 1);
                None
            }
        }
    }

    /// Inserts `v` as a relation: from now on combinations are computed
    /// modulo the span of all such vectors. Returns true when the span grew.
    pub fn insert_untracked(&mut self, v: &SparseVec) -> bool {
        let red = self.reduce(v);
        match red.residual.entries().last() {
            None => false,
            Some((r, a)) => {
                let inv = a.inv().expect("nonzero pivot in a field");
                let r = *r;
                self.basis.push(red.residual.scale(&inv));
                self.combos.push(red.combo.neg().scale(&inv));
                self.pivot_of_row.insert(r, self.basis.len() - 1);
                true
            }
        }
    }

    /// True when `v` lies in the span.
    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).residual.is_zero()
    }
}

/// Reduces the columns of `m` in order of increasing fill, a cheap
/// Markowitz-flavoured ordering that keeps boundary matrices sparse.
fn column_order(m: &SparseMatrix) -> Vec<usize> {
    let mut order: Vec<usize> = (0..m.cols()).collect();
    order.sort_by_key(|&j| (m.column(j).nnz(), j));
    order
}

/// Echelon basis of the column space of `m`, with combinations over column
/// indices, plus a kernel basis.
pub fn column_echelon(m: &SparseMatrix, track: bool) -> Result<(Echelon, Vec<SparseVec>), ExactError> {
    let mut e = Echelon::new(m.rows(), m.domain(), track)?;
    let mut kernel = Vec::new();
    for j in column_order(m) {
        if let Some(rel) = e.insert(j, m.column(j)) {
            kernel.push(rel);
        }
    }
    Ok((e, kernel))
}

/// Exact rank over a field.
pub fn rank(m: &SparseMatrix) -> Result<usize, ExactError> {
    Ok(column_echelon(m, false)?.0.rank())
}

/// A basis of the null space; `cols - rank` linearly independent vectors.
pub fn kernel_basis(m: &SparseMatrix) -> Result<Vec<SparseVec>, ExactError> {
    let (_, mut k) = column_echelon(m, true)?;
    k.sort_by_key(|v| v.last_index());
    Ok(k)
}

/// Any solution of `m x = b`, or `None` when the system is inconsistent.
pub fn solve_linear(m: &SparseMatrix, b: &SparseVec) -> Result<Option<SparseVec>, ExactError> {
    m.domain().require_field()?;
    if let Some(i) = b.last_index() {
        if i >= m.rows() {
            return Err(ExactError::Shape(format!("rhs index {i} beyond {} rows", m.rows())));
        }
    }
    let (e, _) = column_echelon(m, true)?;
    Ok(solve_with(&e, b))
}

/// Solves against a tracked column echelon form.
pub fn solve_with(e: &Echelon, b: &SparseVec) -> Option<SparseVec> {
    let red = e.reduce(b);
    if red.residual.is_zero() {
        Some(red.combo)
    } else {
        None
    }
}

/// Solves `m x = b` given a dense right-hand side length check.
pub fn solve_dense_rhs(m: &SparseMatrix, b: &[Scalar]) -> Result<Option<SparseVec>, ExactError> {
    if b.len() != m.rows() {
        return Err(ExactError::Shape(format!("rhs length {} against {} rows", b.len(), m.rows())));
    }
    solve_linear(m, &SparseVec::from_dense(b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_rank() {
        let q = Domain::Rational;
        assert_eq!(rank(&SparseMatrix::identity(3, q)).unwrap(), 3);
    }

    #[test]
    fn proportional_rows() {
        let q = Domain::Rational;
        let m = SparseMatrix::from_rows_i64(q, &[vec![1, 2], vec![2, 4]]);
        assert_eq!(rank(&m).unwrap(), 1);
        let k = kernel_basis(&m).unwrap();
        assert_eq!(k.len(), 1);
        let v = k[0].to_dense(2, q);
        assert_eq!(v[0], v[1].mul(&q.from_i64(-2)));
        let b = SparseVec::from_dense(&[q.from_i64(1), q.from_i64(3)]);
        assert!(solve_linear(&m, &b).unwrap().is_none());
    }

    #[test]
    fn zero_matrix_kernel() {
        let q = Domain::Rational;
        assert_eq!(kernel_basis(&SparseMatrix::zeros(2, 3, q)).unwrap().len(), 3);
    }

    #[test]
    fn identity_solve() {
        let q = Domain::Rational;
        let b = SparseVec::from_dense(&[q.from_i64(4), q.from_i64(0), q.from_i64(-1)]);
        assert_eq!(solve_linear(&SparseMatrix::identity(3, q), &b).unwrap().unwrap(), b);
    }

    #[test]
    fn integers_rejected() {
        let z = Domain::Integer;
        assert!(matches!(rank(&SparseMatrix::identity(2, z)), Err(ExactError::FieldRequired)));
        assert!(matches!(kernel_basis(&SparseMatrix::identity(2, z)), Err(ExactError::FieldRequired)));
    }

    #[test]
    fn rhs_shape_checked() {
        let q = Domain::Rational;
        let b = vec![q.one(); 3];
        assert!(matches!(solve_dense_rhs(&SparseMatrix::identity(2, q), &b), Err(ExactError::Shape(_))));
    }
}
