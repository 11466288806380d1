//! Sparse echelon and Smith forms checked against naive dense elimination.

use exactalg::{kernel_basis, rank, smith_normal_form, solve_linear, Domain, Integer, Rational, Scalar, SparseMatrix, SparseVec};
use proptest::prelude::*;

/// Dense Gaussian elimination over Q with rationals, independent of the
/// sparse code paths.
fn dense_rank(rows: &[Vec<i64>]) -> usize {
    let mut a: Vec<Vec<Rational>> = rows.iter().map(|r| r.iter().map(|&x| Rational::from_int(x)).collect()).collect();
    let n = a.len();
    let m = if n == 0 { 0 } else { a[0].len() };
    let mut r = 0;
    for c in 0..m {
        let Some(p) = (r..n).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        let inv = a[r][c].inv();
        for i in 0..n {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].mul(&inv);
                for j in 0..m {
                    let s = a[r][j].mul(&f);
                    a[i][j] = a[i][j].sub(&s);
                }
            }
        }
        r += 1;
    }
    r
}

fn dense_rank_mod(rows: &[Vec<i64>], p: i64) -> usize {
    let mut a: Vec<Vec<i64>> = rows.iter().map(|r| r.iter().map(|&x| x.rem_euclid(p)).collect()).collect();
    let n = a.len();
    let m = if n == 0 { 0 } else { a[0].len() };
    let mut r = 0;
    let inv = |x: i64| (1..p).find(|y| x * y % p == 1).unwrap();
    for c in 0..m {
        let Some(k) = (r..n).find(|&i| a[i][c] != 0) else { continue };
        a.swap(r, k);
        let iv = inv(a[r][c]);
        for i in 0..n {
            if i != r && a[i][c] != 0 {
                let f = a[i][c] * iv % p;
                for j in 0..m {
                    a[i][j] = (a[i][j] - f * a[r][j]).rem_euclid(p);
                }
            }
        }
        r += 1;
    }
    r
}

/// Product of the nonzero invariant factors equals the gcd of the maximal
/// nonvanishing minors; for small matrices compare the first factor with
/// the gcd of all entries.
fn entry_gcd(rows: &[Vec<i64>]) -> i64 {
    rows.iter().flatten().fold(0i64, |g, &x| num_gcd(g, x.abs()))
}

fn num_gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a
    } else {
        num_gcd(b, a % b)
    }
}

fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..6, 1usize..6).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::collection::vec(prop_oneof![3 => Just(0i64), 2 => -3i64..=3], c), r)
    })
}

proptest! {
    #[test]
    fn rank_matches_dense_over_q(rows in small_matrix()) {
        let m = SparseMatrix::from_rows_i64(Domain::Rational, &rows);
        prop_assert_eq!(rank(&m).unwrap(), dense_rank(&rows));
    }

    #[test]
    fn rank_matches_dense_mod_p(rows in small_matrix()) {
        let f = Domain::prime(5).unwrap();
        let m = SparseMatrix::from_rows_i64(f, &rows);
        prop_assert_eq!(rank(&m).unwrap(), dense_rank_mod(&rows, 5));
    }

    #[test]
    fn kernel_vectors_are_independent_and_annihilated(rows in small_matrix()) {
        let q = Domain::Rational;
        let m = SparseMatrix::from_rows_i64(q, &rows);
        let k = kernel_basis(&m).unwrap();
        prop_assert_eq!(k.len(), m.cols() - dense_rank(&rows));
        for v in &k {
            prop_assert!(m.mul_vec(v).is_zero());
        }
        let km = SparseMatrix::from_columns(m.cols(), q, k.clone());
        prop_assert_eq!(rank(&km).unwrap(), k.len());
    }

    #[test]
    fn solve_reproduces_rhs(rows in small_matrix(), seed in prop::collection::vec(-2i64..=2, 5)) {
        let q = Domain::Rational;
        let m = SparseMatrix::from_rows_i64(q, &rows);
        let x = SparseVec::from_dense(&seed[..m.cols()].iter().map(|&v| q.from_i64(v)).collect::<Vec<_>>());
        let b = m.mul_vec(&x);
        let y = solve_linear(&m, &b).unwrap().expect("consistent system");
        prop_assert_eq!(m.mul_vec(&y), b);
    }

    #[test]
    fn smith_form_is_a_unimodular_diagonalization(rows in small_matrix()) {
        let m = SparseMatrix::from_rows_i64(Domain::Integer, &rows);
        let s = smith_normal_form(&m).unwrap();
        let prod = s.left.mul(&m).unwrap().mul(&s.right).unwrap();
        prop_assert_eq!(&prod, &s.diagonal);
        for (i, j, _) in s.diagonal.triplets() {
            prop_assert_eq!(i, j);
        }
        prop_assert_eq!(s.rank(), dense_rank(&rows));
        for w in s.invariants.windows(2) {
            prop_assert!(w[1].div_rem_euclid(&w[0]).1.is_zero());
        }
        if let Some(d1) = s.invariants.first() {
            prop_assert_eq!(d1.clone(), Integer::from(entry_gcd(&rows)));
        }
        // Unimodular transforms have rational inverses with integer entries:
        // their ranks over F_2 and F_3 are full.
        for p in [2u64, 3] {
            let f = Domain::prime(p).unwrap();
            prop_assert_eq!(rank(&s.left.change_domain(f).unwrap()).unwrap(), m.rows());
            prop_assert_eq!(rank(&s.right.change_domain(f).unwrap()).unwrap(), m.cols());
        }
    }

    #[test]
    fn rational_field_axioms(a in -50i64..50, b in 1i64..50, c in -50i64..50, d in 1i64..50) {
        let x = Rational::new(a, b);
        let y = Rational::new(c, d);
        prop_assert_eq!(x.add(&y).sub(&y), x.clone());
        if !y.is_zero() {
            prop_assert_eq!(x.mul(&y).mul(&y.inv()), x.clone());
        }
        let s: Rational = x.to_pq().parse().unwrap();
        prop_assert_eq!(s, x);
    }
}

#[test]
fn big_entries_stay_exact() {
    let z = Domain::Integer;
    let big = Scalar::Int(Integer::from(i64::MAX));
    let m = SparseMatrix::from_dense(z, &[vec![big.clone(), z.zero()], vec![z.zero(), big.mul(&big)]]);
    let s = smith_normal_form(&m).unwrap();
    assert_eq!(s.invariants[0], Integer::from(i64::MAX));
    assert_eq!(s.invariants[1], Integer::from(i64::MAX).mul(&Integer::from(i64::MAX)));
}
