//! Smith normal form of integer matrices with explicit unimodular transforms.

use crate::integer::Integer;
use crate::matrix::SparseMatrix;
use crate::scalar::{Domain, Scalar};
use crate::ExactError;

/// `left * m * right = diagonal`, with the nonzero diagonal entries
/// positive and each dividing the next.
#[derive(Clone, Debug)]
pub struct SmithForm {
    /// Nonzero invariant factors `d_1 | d_2 | ...`.
    pub invariants: Vec<Integer>,
    pub left: SparseMatrix,
    pub right: SparseMatrix,
    pub diagonal: SparseMatrix,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.invariants.len()
    }

    /// Invariant factors greater than one: the torsion coefficients of the
    /// cokernel.
    pub fn torsion(&self) -> Vec<Integer> {
        self.invariants.iter().filter(|d| !d.is_one()).cloned().collect()
    }
}

struct Work {
    a: Vec<Vec<Integer>>,
    u: Vec<Vec<Integer>>,
    v: Vec<Vec<Integer>>,
}

impl Work {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap(i, j);
        self.u.swap(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for row in self.a.iter_mut().chain(self.v.iter_mut()) {
            row.swap(i, j);
        }
    }

    /// row_i += c * row_j
    fn add_row(&mut self, i: usize, j: usize, c: &Integer) {
        for m in [&mut self.a, &mut self.u] {
            let src = m[j].clone();
            for (x, y) in m[i].iter_mut().zip(&src) {
                if !y.is_zero() {
                    *x = x.add(&c.mul(y));
                }
            }
        }
    }

    /// col_i += c * col_j
    fn add_col(&mut self, i: usize, j: usize, c: &Integer) {
        for m in [&mut self.a, &mut self.v] {
            for row in m.iter_mut() {
                if !row[j].is_zero() {
                    row[i] = row[i].add(&c.mul(&row[j]));
                }
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for m in [&mut self.a, &mut self.u] {
            for x in m[i].iter_mut() {
                *x = x.neg();
            }
        }
    }
}

fn identity(n: usize) -> Vec<Vec<Integer>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { Integer::one() } else { Integer::zero() }).collect())
        .collect()
}

fn to_sparse(rows: usize, cols: usize, m: &[Vec<Integer>]) -> SparseMatrix {
    let mut t = Vec::new();
    for (i, row) in m.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            if !x.is_zero() {
                t.push((i, j, Scalar::Int(x.clone())));
            }
        }
    }
    SparseMatrix::from_triplets(rows, cols, Domain::Integer, t)
}

/// Smith normal form by elimination with transform accumulation. Pivots are
/// chosen as the entry of least absolute value in the active submatrix.
pub fn smith_normal_form(m: &SparseMatrix) -> Result<SmithForm, ExactError> {
    if m.domain() != Domain::Integer {
        return Err(ExactError::IntegerRequired);
    }
    let (rows, cols) = m.shape();
    let mut a = vec![vec![Integer::zero(); cols]; rows];
    for (i, j, x) in m.triplets() {
        a[i][j] = x.as_integer().expect("integer entry").clone();
    }
    let mut w = Work { a, u: identity(rows), v: identity(cols) };
    let mut invariants = Vec::new();
    for t in 0..rows.min(cols) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if !w.a[i][j].is_zero() {
                        let better = match best {
                            None => true,
                            Some((bi, bj)) => w.a[i][j].abs() < w.a[bi][bj].abs(),
                        };
                        if better {
                            best = Some((i, j));
                        }
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return Ok(finish(rows, cols, w, invariants));
            };
            w.swap_rows(t, pi);
            w.swap_cols(t, pj);
            let p = w.a[t][t].clone();
            let mut clean = true;
            for i in t + 1..rows {
                if !w.a[i][t].is_zero() {
                    let (q, r) = w.a[i][t].div_rem_euclid(&p);
                    w.add_row(i, t, &q.neg());
                    if !r.is_zero() {
                        clean = false;
                    }
                }
            }
            for j in t + 1..cols {
                if !w.a[t][j].is_zero() {
                    let (q, r) = w.a[t][j].div_rem_euclid(&p);
                    w.add_col(j, t, &q.neg());
                    if !r.is_zero() {
                        clean = false;
                    }
                }
            }
            if !clean {
                continue;
            }
            let mut offender = None;
            'scan: for i in t + 1..rows {
                for j in t + 1..cols {
                    if !w.a[i][j].div_rem_euclid(&p).1.is_zero() {
                        offender = Some(i);
                        break 'scan;
                    }
                }
            }
            match offender {
                Some(i) => w.add_row(t, i, &Integer::one()),
                None => break,
            }
        }
        if w.a[t][t].signum() < 0 {
            w.negate_row(t);
        }
        invariants.push(w.a[t][t].clone());
    }
    Ok(finish(rows, cols, w, invariants))
}

fn finish(rows: usize, cols: usize, w: Work, invariants: Vec<Integer>) -> SmithForm {
    SmithForm {
        invariants,
        left: to_sparse(rows, rows, &w.u),
        right: to_sparse(cols, cols, &w.v),
        diagonal: to_sparse(rows, cols, &w.a),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(rows: &[Vec<i64>]) -> SparseMatrix {
        SparseMatrix::from_rows_i64(Domain::Integer, rows)
    }

    fn check(m: &SparseMatrix, s: &SmithForm) {
        let prod = s.left.mul(m).unwrap().mul(&s.right).unwrap();
        assert_eq!(prod, s.diagonal);
        for w in s.invariants.windows(2) {
            assert!(w[1].div_rem_euclid(&w[0]).1.is_zero());
        }
    }

    #[test]
    fn identity_invariants() {
        let m = z(&[vec![1, 0], vec![0, 1]]);
        let s = smith_normal_form(&m).unwrap();
        assert_eq!(s.invariants, vec![Integer::one(), Integer::one()]);
        check(&m, &s);
    }

    #[test]
    fn zero_matrix() {
        let m = SparseMatrix::zeros(2, 3, Domain::Integer);
        let s = smith_normal_form(&m).unwrap();
        assert!(s.invariants.is_empty());
        check(&m, &s);
    }

    #[test]
    fn two_four_six_eight() {
        let m = z(&[vec![2, 4], vec![6, 8]]);
        let s = smith_normal_form(&m).unwrap();
        assert_eq!(s.invariants, vec![Integer::from(2), Integer::from(4)]);
        check(&m, &s);
    }

    #[test]
    fn divisibility_fix_up() {
        let m = z(&[vec![2, 0], vec![0, 3]]);
        let s = smith_normal_form(&m).unwrap();
        assert_eq!(s.invariants, vec![Integer::from(1), Integer::from(6)]);
        check(&m, &s);
    }

    #[test]
    fn rejects_fields() {
        assert!(smith_normal_form(&SparseMatrix::identity(2, Domain::Rational)).is_err());
    }
}
