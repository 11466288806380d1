use mixed::*;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

use chain::{cohomology_dims, CochainComplex, GradedMap};
use exactalg::{rank, Domain, SparseMatrix};

fn domains() -> impl Strategy<Value = Domain> {
    prop_oneof![Just(Domain::Rational), Just(Domain::prime(5).unwrap())]
}

fn sample(seed: u64, dom: Domain) -> MixedComplex {
    let shape = SampleShape { lo: -2, hi: 2, max_dim: 4, pieces: 4 };
    random_mixed(&mut StdRng::seed_from_u64(seed), dom, &shape)
}

fn u_ranks(m: &UModule) -> Vec<(i64, usize)> {
    (m.lo..=m.hi - 2).map(|q| (q, rank(&m.u_at(q)).unwrap())).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn dual_route_and_koszul_route_agree(seed in any::<u64>(), dom in domains(), d in -2i64..3, k in 1usize..4) {
        let m = sample(seed, dom);
        let a = UCohomology::new(&equivariant_complex(&m, k, d).unwrap(), None).unwrap().module;
        let kz = equivariant_complex_koszul(&m, k, d).unwrap();
        prop_assert!(kz.verify().unwrap().passed);
        let b = UCohomology::new(&kz, None).unwrap().module;
        prop_assert_eq!((a.lo, a.hi), (b.lo, b.hi));
        prop_assert_eq!(&a.dims, &b.dims);
        prop_assert_eq!(u_ranks(&a), u_ranks(&b));
    }

    #[test]
    fn gysin_sequence_is_exact(seed in any::<u64>(), dom in domains(), d in -2i64..3, k in 0usize..3) {
        let m = sample(seed, dom);
        let g = gysin_check(&m, k, d).unwrap();
        prop_assert!(g.report.passed, "{}", g.report);
        let n = dual_shift_mixed(&m, d).unwrap();
        prop_assert_eq!(g.forgetful, cohomology_dims(&n.complex).unwrap());
    }

    #[test]
    fn barcode_reconstructs_dimensions(seed in any::<u64>(), dom in domains(), k in 1usize..4) {
        let m = sample(seed, dom);
        let md = equivariant_module(&m, k, 0).unwrap();
        let bc = barcode(&md).unwrap();
        for q in md.lo..=md.hi {
            prop_assert_eq!(bc.dim(q), md.dim(q));
        }
    }

    #[test]
    fn barcode_of_sum_is_union(s1 in any::<u64>(), s2 in any::<u64>(), dom in domains()) {
        let (m1, m2) = (sample(s1, dom), sample(s2, dom));
        let sum = m1.direct_sum(&m2).unwrap();
        // a shared window: all three modules are cut at the same degrees
        let window = |m: &MixedComplex| {
            let u = equivariant_complex(m, 6, 0).unwrap();
            UCohomology::new(&u, Some((-3, 5))).unwrap().module
        };
        let (a, b, c) = (window(&m1), window(&m2), window(&sum));
        prop_assert_eq!(barcode(&c).unwrap(), barcode(&a).unwrap().union(&barcode(&b).unwrap()));
    }

    #[test]
    fn acyclic_input_has_zero_module(dom in domains(), n in 1usize..4, k in 1usize..4) {
        let mut c = CochainComplex::with_dims(dom, [(0, n), (1, n)]);
        c.set_diff(0, SparseMatrix::identity(n, dom)).unwrap();
        let m = MixedComplex::trivial(c);
        prop_assert!(equivariant_module(&m, k, 0).unwrap().nonzero_dims().is_empty());
    }

    #[test]
    fn regular_representation_is_induced(ell in prop_oneof![Just(2usize), Just(3), Just(5)], k in 1usize..3) {
        for dom in [Domain::Rational, Domain::prime(ell as u64).unwrap()] {
            let c = CochainComplex::concentrated(dom, 0, ell);
            let rows: Vec<Vec<i64>> = (0..ell).map(|i| (0..ell).map(|j| i64::from((j + 1) % ell == i)).collect()).collect();
            let mut s = GradedMap::new(0);
            s.set(0, SparseMatrix::from_rows_i64(dom, &rows));
            let h = zl_cohomology(&c, &s, ell, k, 0).unwrap();
            prop_assert_eq!(h.module.nonzero_dims(), [(0, 1)].into_iter().collect());
        }
    }
}

#[test]
fn anticommutation_failure_is_reported() {
    let q = Domain::Rational;
    let mut c = CochainComplex::with_dims(q, [(0, 1), (1, 1)]);
    c.set_diff(0, SparseMatrix::identity(1, q)).unwrap();
    let mut b = GradedMap::new(-1);
    b.set(1, SparseMatrix::identity(1, q));
    let r = verify_mixed(&MixedComplex::new(c, b));
    assert!(!r.passed);
    assert!(r.messages.iter().any(|m| m.contains("bB + Bb")));
}
