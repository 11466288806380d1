//! Column-major sparse matrices over a single coefficient domain.

use std::fmt;

use crate::scalar::{Domain, Scalar};
use crate::vector::SparseVec;
use crate::ExactError;

/// A sparse matrix stored by columns. Every stored entry is nonzero and
/// lies in the matrix's domain.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    domain: Domain,
    columns: Vec<SparseVec>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize, domain: Domain) -> Self {
        SparseMatrix { rows, cols, domain, columns: vec![SparseVec::new(); cols] }
    }

    pub fn identity(n: usize, domain: Domain) -> Self {
        Self::scalar_identity(n, &domain.one())
    }

    /// `a` times the identity.
    pub fn scalar_identity(n: usize, a: &Scalar) -> Self {
        let domain = a.domain();
        let columns = (0..n)
            .map(|i| if a.is_zero() { SparseVec::new() } else { SparseVec::from_sorted(vec![(i, a.clone())]) })
            .collect();
        SparseMatrix { rows: n, cols: n, domain, columns }
    }

    /// Builds from columns; panics when an index is out of range or an
    /// entry comes from another domain.
    pub fn from_columns(rows: usize, domain: Domain, columns: Vec<SparseVec>) -> Self {
        for c in &columns {
            for (i, v) in c.entries() {
                assert!(*i < rows, "row index {i} out of bounds {rows}");
                assert_eq!(v.domain(), domain, "entry domain mismatch");
            }
        }
        SparseMatrix { rows, cols: columns.len(), domain, columns }
    }

    /// Builds from `(row, col, value)` triplets, summing duplicates.
    pub fn from_triplets(
        rows: usize,
        cols: usize,
        domain: Domain,
        triplets: impl IntoIterator<Item = (usize, usize, Scalar)>,
    ) -> Self {
        let mut by_col: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); cols];
        for (r, c, v) in triplets {
            assert!(r < rows && c < cols, "entry ({r},{c}) out of bounds {rows}x{cols}");
            assert_eq!(v.domain(), domain, "entry domain mismatch");
            by_col[c].push((r, v));
        }
        let columns = by_col.into_iter().map(SparseVec::from_pairs).collect();
        SparseMatrix { rows, cols, domain, columns }
    }

    /// Convenience constructor from small integer rows.
    pub fn from_rows_i64(domain: Domain, rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut t = Vec::new();
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, v) in row.iter().enumerate() {
                if *v != 0 {
                    t.push((i, j, domain.from_i64(*v)));
                }
            }
        }
        Self::from_triplets(r, c, domain, t)
    }

    pub fn from_dense(domain: Domain, rows: &[Vec<Scalar>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut t = Vec::new();
        for (i, row) in rows.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                if !v.is_zero() {
                    t.push((i, j, v.clone()));
                }
            }
        }
        Self::from_triplets(r, c, domain, t)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn column(&self, j: usize) -> &SparseVec {
        &self.columns[j]
    }

    pub fn columns(&self) -> &[SparseVec] {
        &self.columns
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(|c| c.nnz()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(|c| c.is_zero())
    }

    pub fn get(&self, r: usize, c: usize) -> Scalar {
        self.columns[c].get(r).cloned().unwrap_or_else(|| self.domain.zero())
    }

    /// All stored entries as `(row, col, value)` in column-major order.
    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> {
        self.columns
            .iter()
            .enumerate()
            .flat_map(|(j, c)| c.entries().iter().map(move |(i, v)| (*i, j, v)))
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut by_col: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); self.rows];
        for (j, c) in self.columns.iter().enumerate() {
            for (i, v) in c.entries() {
                by_col[*i].push((j, v.clone()));
            }
        }
        let columns = by_col.into_iter().map(SparseVec::from_sorted).collect();
        SparseMatrix { rows: self.cols, cols: self.rows, domain: self.domain, columns }
    }

    pub fn mul_vec(&self, x: &SparseVec) -> SparseVec {
        let mut pairs = Vec::new();
        for (j, a) in x.entries() {
            for (i, v) in self.columns[*j].entries() {
                pairs.push((*i, v.mul(a)));
            }
        }
        SparseVec::from_pairs(pairs)
    }

    /// Matrix product `self * o`.
    pub fn mul(&self, o: &SparseMatrix) -> Result<SparseMatrix, ExactError> {
        if self.cols != o.rows {
            return Err(ExactError::Shape(format!(
                "product {}x{} by {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        self.check_domain(o)?;
        let columns = o.columns.iter().map(|c| self.mul_vec(c)).collect();
        Ok(SparseMatrix { rows: self.rows, cols: o.cols, domain: self.domain, columns })
    }

    fn check_domain(&self, o: &SparseMatrix) -> Result<(), ExactError> {
        if self.domain == o.domain {
            Ok(())
        } else {
            Err(ExactError::DomainMismatch)
        }
    }

    fn check_same_shape(&self, o: &SparseMatrix) -> Result<(), ExactError> {
        if self.shape() != o.shape() {
            return Err(ExactError::Shape(format!(
                "{}x{} against {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        self.check_domain(o)
    }

    pub fn add(&self, o: &SparseMatrix) -> Result<SparseMatrix, ExactError> {
        self.check_same_shape(o)?;
        let columns = self.columns.iter().zip(&o.columns).map(|(a, b)| a.add(b)).collect();
        Ok(SparseMatrix { rows: self.rows, cols: self.cols, domain: self.domain, columns })
    }

    pub fn sub(&self, o: &SparseMatrix) -> Result<SparseMatrix, ExactError> {
        self.check_same_shape(o)?;
        let columns = self.columns.iter().zip(&o.columns).map(|(a, b)| a.sub(b)).collect();
        Ok(SparseMatrix { rows: self.rows, cols: self.cols, domain: self.domain, columns })
    }

    pub fn scale(&self, a: &Scalar) -> SparseMatrix {
        let columns = self.columns.iter().map(|c| c.scale(a)).collect();
        SparseMatrix { rows: self.rows, cols: self.cols, domain: self.domain, columns }
    }

    pub fn neg(&self) -> SparseMatrix {
        let columns = self.columns.iter().map(|c| c.neg()).collect();
        SparseMatrix { rows: self.rows, cols: self.cols, domain: self.domain, columns }
    }

    /// Multiplies by `(-1)^k`.
    pub fn signed(&self, k: i64) -> SparseMatrix {
        if k.rem_euclid(2) == 0 {
            self.clone()
        } else {
            self.neg()
        }
    }

    /// Places `blocks[i][j]` at block position `(i, j)`; missing blocks are
    /// zero. Block row heights and column widths are given explicitly.
    pub fn block(
        domain: Domain,
        heights: &[usize],
        widths: &[usize],
        blocks: &[(usize, usize, &SparseMatrix)],
    ) -> Result<SparseMatrix, ExactError> {
        let mut roff = vec![0; heights.len() + 1];
        for (i, h) in heights.iter().enumerate() {
            roff[i + 1] = roff[i] + h;
        }
        let mut coff = vec![0; widths.len() + 1];
        for (j, w) in widths.iter().enumerate() {
            coff[j + 1] = coff[j] + w;
        }
        let mut triplets = Vec::new();
        for (bi, bj, m) in blocks {
            if m.rows != heights[*bi] || m.cols != widths[*bj] {
                return Err(ExactError::Shape(format!(
                    "block ({bi},{bj}) is {}x{}, slot is {}x{}",
                    m.rows, m.cols, heights[*bi], widths[*bj]
                )));
            }
            if m.domain != domain {
                return Err(ExactError::DomainMismatch);
            }
            for (i, j, v) in m.triplets() {
                triplets.push((roff[*bi] + i, coff[*bj] + j, v.clone()));
            }
        }
        Ok(SparseMatrix::from_triplets(roff[heights.len()], coff[widths.len()], domain, triplets))
    }

    /// Rows `[r0, r1)` and columns `[c0, c1)` as a new matrix.
    pub fn submatrix(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> SparseMatrix {
        let columns = self.columns[c0..c1].iter().map(|c| c.window(r0, r1)).collect();
        SparseMatrix { rows: r1 - r0, cols: c1 - c0, domain: self.domain, columns }
    }

    pub fn to_dense(&self) -> Vec<Vec<Scalar>> {
        let mut out = vec![vec![self.domain.zero(); self.cols]; self.rows];
        for (i, j, v) in self.triplets() {
            out[i][j] = v.clone();
        }
        out
    }

    /// Maps every entry into `target` (reduction mod p, or inclusion of Z).
    pub fn change_domain(&self, target: Domain) -> Result<SparseMatrix, ExactError> {
        let mut t = Vec::with_capacity(self.nnz());
        for (i, j, v) in self.triplets() {
            t.push((i, j, v.change_domain(target)?));
        }
        Ok(SparseMatrix::from_triplets(self.rows, self.cols, target, t))
    }

    /// Shape and domain consistency of the stored data.
    pub fn is_well_formed(&self) -> bool {
        self.columns.len() == self.cols
            && self.columns.iter().all(|c| {
                c.entries().windows(2).all(|w| w[0].0 < w[1].0)
                    && c.entries().iter().all(|(i, v)| *i < self.rows && !v.is_zero() && v.domain() == self.domain)
            })
    }
}

impl fmt::Debug for SparseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "SparseMatrix {}x{} over {}", self.rows, self.cols, self.domain)?;
        if self.rows * self.cols <= 400 {
            for row in self.to_dense() {
                let cells: Vec<String> = row.iter().map(|v| v.to_pq()).collect();
                writeln!(f, "  [{}]", cells.join(", "))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_and_transpose() {
        let q = Domain::Rational;
        let a = SparseMatrix::from_rows_i64(q, &[vec![1, 2], vec![0, 1], vec![3, 0]]);
        let b = SparseMatrix::from_rows_i64(q, &[vec![1, 0, 1], vec![0, 1, 0]]);
        let ab = a.mul(&b).unwrap();
        assert_eq!(ab, SparseMatrix::from_rows_i64(q, &[vec![1, 2, 1], vec![0, 1, 0], vec![3, 0, 3]]));
        assert_eq!(ab.transpose(), b.transpose().mul(&a.transpose()).unwrap());
        assert!(a.mul(&a).is_err());
    }

    #[test]
    fn no_explicit_zeros() {
        let q = Domain::Rational;
        let m = SparseMatrix::from_triplets(2, 2, q, vec![(0, 0, q.from_i64(1)), (0, 0, q.from_i64(-1))]);
        assert_eq!(m.nnz(), 0);
        assert!(m.is_well_formed());
    }

    #[test]
    fn block_assembly() {
        let q = Domain::Rational;
        let i = SparseMatrix::identity(2, q);
        let m = SparseMatrix::block(q, &[2, 1], &[2], &[(0, 0, &i)]).unwrap();
        assert_eq!(m.shape(), (3, 2));
        assert_eq!(m.get(1, 1), q.one());
        assert_eq!(m.submatrix(0, 2, 0, 2), i);
    }
}
