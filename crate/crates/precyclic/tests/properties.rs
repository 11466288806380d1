use exactalg::{rank, Domain};
use mixed::{homotopy_fixed_points, random_mixed, SampleShape, UCohomology};
use precyclic::{
    cyclic_cochain_mixed, hochschild_operators, validate_relations, PreCocyclicComplex, ReducedFixedPoints,
    ReducedLevels,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn random_tower(seed: u64, dom: Domain, levels: usize) -> PreCocyclicComplex {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let shape = SampleShape { lo: -2, hi: 1, max_dim: 3, pieces: 3 };
    let m = random_mixed(&mut rng, dom, &shape);
    PreCocyclicComplex::constant(&m.complex, levels)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn constant_towers_satisfy_the_relations(seed in any::<u64>()) {
        let p = random_tower(seed, Domain::Rational, 5);
        prop_assert!(validate_relations(&p).passed);
        for m in 2..=5 {
            prop_assert!(hochschild_operators(&p, m).unwrap().report.passed);
        }
    }

    #[test]
    fn reduction_matches_the_cone(seed in any::<u64>(), prime in prop::sample::select(vec![0u64, 5])) {
        let dom = if prime == 0 { Domain::Rational } else { Domain::prime(prime).unwrap() };
        let p = random_tower(seed, dom, 6);
        let k = 2;
        let cc = cyclic_cochain_mixed(&p, 6).unwrap();
        let full = UCohomology::new(&homotopy_fixed_points(&cc.mixed, k).unwrap(), None).unwrap().module;
        let levels = ReducedLevels::explicit(p).unwrap();
        let red = ReducedFixedPoints::build(&levels, 6, k).unwrap();
        prop_assert!(red.complex.verify().unwrap().passed);
        let small = UCohomology::new(&red.complex, Some((full.lo, full.hi))).unwrap().module;
        prop_assert_eq!(&full.dims, &small.dims);
        for q in full.lo..=full.hi - 2 {
            prop_assert_eq!(rank(&full.u_at(q)).unwrap(), rank(&small.u_at(q)).unwrap());
        }
    }
}
