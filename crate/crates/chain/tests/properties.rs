//! Randomized identities for cohomology, duals and cones.

use std::collections::BTreeMap;

use chain::{cohomology, cone_les_check, dual_shift, mapping_cone, verify_complex, CochainComplex, GradedMap};
use exactalg::{kernel_basis, Domain, Integer, Rational, Scalar, SparseMatrix};
use proptest::prelude::*;

/// Integer matrices whose rows span the left kernel of `a` (over Q),
/// denominators cleared.
fn left_kernel_int(a: &[Vec<i64>], rows: usize) -> Vec<Vec<i64>> {
    let q = Domain::Rational;
    let m = SparseMatrix::from_rows_i64(q, a).transpose();
    let mut out = Vec::new();
    for v in kernel_basis(&m).unwrap() {
        let dense = v.to_dense(rows, q);
        let lcm = dense.iter().fold(Integer::one(), |l, x| {
            let d = x.as_rational().unwrap().denom();
            l.mul(&d).div_exact(&l.gcd(&d))
        });
        out.push(
            dense
                .iter()
                .map(|x| x.as_rational().unwrap().mul(&Rational::from_integer(&lcm)).numer().to_i64().unwrap())
                .collect(),
        );
    }
    out
}

fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let inner = b.len();
    a.iter()
        .map(|r| (0..b.first().map_or(0, |x| x.len())).map(|j| (0..inner).map(|k| r[k] * b[k][j]).sum()).collect())
        .collect()
}

/// A random three-term complex `Z^{n0} -> Z^{n1} -> Z^{n2}` with `d1 d0 = 0`.
fn random_complex(dims: (usize, usize, usize), d0: Vec<Vec<i64>>, mix: Vec<Vec<i64>>) -> CochainComplex {
    let z = Domain::Integer;
    let (n0, n1, n2) = dims;
    let lk = left_kernel_int(&d0, n1);
    let d1: Vec<Vec<i64>> = if lk.is_empty() {
        vec![vec![0; n1]; n2]
    } else {
        let r: Vec<Vec<i64>> = mix.iter().take(n2).map(|row| row.iter().take(lk.len()).copied().collect()).collect();
        mat_mul(&r, &lk)
    };
    let mut c = CochainComplex::with_dims(z, [(0, n0), (1, n1), (2, n2)]);
    c.set_diff(0, SparseMatrix::from_rows_i64(z, &d0)).unwrap();
    c.set_diff(1, SparseMatrix::from_rows_i64(z, &d1)).unwrap();
    c
}

fn complex_strategy() -> impl Strategy<Value = CochainComplex> {
    (1usize..5, 1usize..5, 1usize..5).prop_flat_map(|(n0, n1, n2)| {
        (
            prop::collection::vec(prop::collection::vec(-2i64..=2, n0), n1),
            prop::collection::vec(prop::collection::vec(-2i64..=2, n1), n2),
        )
            .prop_map(move |(d0, mix)| random_complex((n0, n1, n2), d0, mix))
    })
}

fn p_torsion(t: &[Integer], p: u64) -> usize {
    t.iter().filter(|x| x.rem_u64(p) == 0).count()
}

proptest! {
    #[test]
    fn generated_complexes_are_valid(c in complex_strategy()) {
        prop_assert!(verify_complex(&c).passed);
    }

    #[test]
    fn universal_coefficients(c in complex_strategy()) {
        let hz = cohomology(&c).unwrap();
        for p in [2u64, 3, 5] {
            let f = Domain::prime(p).unwrap();
            let hp = cohomology(&c.change_domain(f).unwrap()).unwrap();
            for q in -1..=3 {
                let tors_here = hz.groups.get(&q).map_or(0, |g| p_torsion(&g.torsion, p));
                let tors_next = hz.groups.get(&(q + 1)).map_or(0, |g| p_torsion(&g.torsion, p));
                prop_assert_eq!(hp.dim(q), hz.dim(q) + tors_here + tors_next);
            }
        }
    }

    #[test]
    fn euler_characteristic(c in complex_strategy()) {
        let cq = c.change_domain(Domain::Rational).unwrap();
        let h = cohomology(&cq).unwrap();
        let chi_c: i64 = cq.dims().iter().map(|(&q, &n)| if q % 2 == 0 { n as i64 } else { -(n as i64) }).sum();
        let chi_h: i64 = h.dims().iter().map(|(&q, &n)| if q % 2 == 0 { n as i64 } else { -(n as i64) }).sum();
        prop_assert_eq!(chi_c, chi_h);
    }

    #[test]
    fn dual_shift_reflects_dims(c in complex_strategy(), d in -3i64..4) {
        let cq = c.change_domain(Domain::Rational).unwrap();
        let h: BTreeMap<i64, usize> = cohomology(&cq).unwrap().dims();
        let dual = dual_shift(&cq, d).unwrap();
        prop_assert!(verify_complex(&dual).passed);
        let hd = cohomology(&dual).unwrap();
        for (&q, &n) in &h {
            prop_assert_eq!(hd.dim(d - q), n);
        }
        let twice = dual_shift(&dual, d).unwrap();
        prop_assert_eq!(twice.dims(), cq.dims());
        prop_assert_eq!(cohomology(&twice).unwrap().dims(), h);
    }

    #[test]
    fn cone_sequences_are_exact(c in complex_strategy(), lam in -2i64..=2, hs in prop::collection::vec(-1i64..=1, 32)) {
        let q = Domain::Rational;
        let cq = c.change_domain(q).unwrap();
        // f = lam + d h + h d for a random degree -1 map h
        let mut h = GradedMap::new(-1);
        let mut it = hs.iter().cycle();
        for deg in [1i64, 2] {
            let (r, s) = (cq.dim(deg - 1), cq.dim(deg));
            let rows: Vec<Vec<i64>> = (0..r).map(|_| (0..s).map(|_| *it.next().unwrap()).collect()).collect();
            h.set(deg, SparseMatrix::from_rows_i64(q, &rows));
        }
        let mut f = GradedMap::new(0);
        for deg in 0..=2 {
            let n = cq.dim(deg);
            let mut m = SparseMatrix::scalar_identity(n, &Scalar::Rat(Rational::from_int(lam)));
            if deg >= 1 {
                m = m.add(&cq.diff(deg - 1).mul(&h.get(deg, &cq, &cq)).unwrap()).unwrap();
            }
            if deg <= 1 {
                m = m.add(&h.get(deg + 1, &cq, &cq).mul(&cq.diff(deg)).unwrap()).unwrap();
            }
            f.set(deg, m);
        }
        prop_assert!(f.verify(&cq, &cq).passed);
        let cone = mapping_cone(&f, &cq, &cq).unwrap();
        prop_assert!(verify_complex(&cone.complex).passed);
        prop_assert!(cone.inclusion.verify(&cq, &cone.complex).passed);
        prop_assert!(cone.projection.verify(&cone.complex, &cq).passed);
        let rep = cone_les_check(&f, &cq, &cq, -2, 3).unwrap();
        prop_assert!(rep.passed, "{}", rep);
    }
}
