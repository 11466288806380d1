use std::collections::BTreeMap;

use ctinv::{ct_noneq, ct_s1, ct_zl, noneq_family, s1_family, Params, Theory};
use exactalg::{Domain, Rational};
use loopmodel::{build_cycle_graph, build_point_graph, Caps};

fn r(n: i64) -> Rational {
    Rational::from_int(n)
}

fn params(n: usize, n_cap: usize, k: usize, domain: Domain) -> Params {
    Params { n_points: n, n_cap, u_order: k, domain, caps: Caps::default() }
}

#[test]
fn point_is_one_free_bar() {
    let res = ct_s1(&build_point_graph(), &params(1, 10, 4, Domain::Rational), &r(0)).unwrap();
    let b = res.barcode().unwrap();
    assert_eq!(b.free, vec![0]);
    assert!(b.torsion.is_empty());
    assert_eq!(res.eta_nonzero(), Some(true));
    assert!(res.gysin.as_ref().unwrap().passed);
}

#[test]
fn circle_constants_are_two_free_bars() {
    let g = build_cycle_graph(6, r(6)).unwrap();
    let res = ct_s1(&g, &params(3, 4, 1, Domain::Rational), &r(0)).unwrap();
    let b = res.barcode().unwrap();
    assert_eq!(b.free, vec![0, 1]);
    assert!(b.torsion.is_empty());
    assert_eq!(res.forgetful, Some(BTreeMap::from([(0, 1), (1, 1)])));
    assert_eq!(res.eta_nonzero(), Some(true));
}

#[test]
fn noneq_circle_counts_components() {
    let g = build_cycle_graph(6, r(6)).unwrap();
    let p = params(6, 1, 0, Domain::Rational);
    assert_eq!(ct_noneq(&g, &p, &r(0)).unwrap().dims(), BTreeMap::from([(0, 1), (1, 1)]));
    assert_eq!(ct_noneq(&g, &p, &r(6)).unwrap().dims(), BTreeMap::from([(0, 3), (1, 3)]));
}

#[test]
fn zl_with_trivial_group_is_noneq() {
    let g = build_cycle_graph(6, r(6)).unwrap();
    let p = params(6, 1, 0, Domain::Rational);
    for t in [0, 6] {
        let a = ct_zl(&g, &p, 1, &r(t)).unwrap();
        let b = ct_noneq(&g, &p, &r(t)).unwrap();
        assert_eq!(a.dims(), b.dims());
        assert_eq!(a.theory, Theory::Zl(1));
    }
}

#[test]
fn descending_grid_names_the_field() {
    let g = build_cycle_graph(6, r(6)).unwrap();
    let err = noneq_family(&g, &params(6, 1, 0, Domain::Rational), &[r(6), r(0)], 1).unwrap_err();
    assert!(err.to_string().contains("grid"), "{err}");
}

#[test]
fn s1_family_transports_the_class() {
    let g = build_cycle_graph(6, r(6)).unwrap();
    let fam = s1_family(&g, &params(3, 4, 1, Domain::Rational), &[r(0), r(1), r(3)], 2).unwrap();
    assert!(fam.functoriality.passed, "{}", fam.functoriality);
    assert!(fam.results.iter().all(Result::is_ok));
}
