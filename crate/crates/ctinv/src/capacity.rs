//! Fundamental classes along a family and the capacities read off them.

use std::collections::BTreeMap;

use chain::Report;
use exactalg::{Domain, Rational, SparseMatrix, SparseVec};
use mixed::{MarkedClass, UModule};

use crate::family::{check_grid, PersistenceFamily};
use crate::pipeline::{CTResult, Provenance, Theory};
use crate::CtError;

/// The fundamental class at every grid point and where it first vanishes.
#[derive(Clone, Debug)]
pub struct FundamentalReport {
    pub grid: Vec<Rational>,
    /// `None` where the point was not computed.
    pub nonzero: Vec<Option<bool>>,
    /// First computed `T` at which the class is zero; `None` stands for `∞`.
    pub vanishing: Option<Rational>,
    /// False when some grid point failed, so `∞` is only a lower bound.
    pub complete: bool,
    pub transport: Report,
}

/// Tracks `[X]` along `family`; a computed point without the class is an
/// error rather than a silent zero.
pub fn fundamental_class(family: &PersistenceFamily) -> Result<FundamentalReport, CtError> {
    let mut nonzero = Vec::new();
    for r in &family.results {
        nonzero.push(match r {
            Ok(r) => match r.eta_nonzero() {
                Some(b) => Some(b),
                None => return Err(CtError::FundamentalClassLost(format!("not tracked at T = {}", r.t))),
            },
            Err(_) => None,
        });
    }
    let vanishing = family.grid.iter().zip(&nonzero).find(|(_, n)| **n == Some(false)).map(|(t, _)| t.clone());
    let mut transport = Report::new("fundamental class transport");
    transport.absorb(family.functoriality.clone());
    Ok(FundamentalReport { grid: family.grid.clone(), complete: nonzero.iter().all(Option::is_some), nonzero, vanishing, transport })
}

/// `c̄_k` for `k = 1..=kmax`: the first grid `T` at which the fundamental
/// class is divisible by `u^k`, `None` for `∞`.
#[derive(Clone, Debug)]
pub struct CapacityTable {
    pub kmax: usize,
    pub values: Vec<Option<Rational>>,
    /// Nondecreasing in `k`.
    pub monotone: Report,
    /// False when some grid point failed.
    pub complete: bool,
}

impl CapacityTable {
    pub fn get(&self, k: usize) -> Option<&Rational> {
        self.values.get(k - 1).and_then(Option::as_ref)
    }
}

fn le_infinite(a: &Option<Rational>, b: &Option<Rational>) -> bool {
    match (a, b) {
        (_, None) => true,
        (None, Some(_)) => false,
        (Some(a), Some(b)) => a <= b,
    }
}

/// Capacities of an `S¹` family. Divisibility by `u^k` is only visible
/// when the module is known modulo `u^{k+1}`, so every point must have
/// `u_order > kmax`.
pub fn capacities(family: &PersistenceFamily, kmax: usize) -> Result<CapacityTable, CtError> {
    if family.theory != Theory::S1 {
        return Err(CtError::config("theory", "capacities need the S¹ theory"));
    }
    if kmax == 0 {
        return Err(CtError::config("kmax", "must be positive"));
    }
    let mut values: Vec<Option<Rational>> = vec![None; kmax];
    for (_, r) in family.computed() {
        if r.provenance.u_order <= kmax {
            return Err(CtError::config("kmax", format!("{kmax} needs uorder above it, got {}", r.provenance.u_order)));
        }
        let Some(eta) = &r.fundamental else {
            return Err(CtError::FundamentalClassLost(format!("not tracked at T = {}", r.t)));
        };
        for (k, v) in values.iter_mut().enumerate() {
            if v.is_none() && r.module.divisible(0, eta, k + 1)? {
                *v = Some(r.t.clone());
            }
        }
    }
    let mut monotone = Report::new("capacity monotonicity");
    for k in 1..kmax {
        monotone.require(le_infinite(&values[k - 1], &values[k]), || format!("c̄_{} exceeds c̄_{}", k, k + 1));
    }
    Ok(CapacityTable { kmax, values, monotone, complete: family.results.iter().all(Result::is_ok) })
}

/// `c̄_1` two ways: from the `S¹` family by `u`-divisibility, and as the
/// vanishing time of the class in the non-equivariant family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct C1Routes {
    pub divisibility: Option<Rational>,
    pub vanishing: Option<Rational>,
}

impl C1Routes {
    pub fn agree(&self) -> bool {
        self.divisibility == self.vanishing
    }
}

pub fn c1_routes(s1: &PersistenceFamily, noneq: &PersistenceFamily) -> Result<C1Routes, CtError> {
    if noneq.theory != Theory::NonEquivariant {
        return Err(CtError::config("theory", "second family must be non-equivariant"));
    }
    let divisibility = capacities(s1, 1)?.values[0].clone();
    let vanishing = fundamental_class(noneq)?.vanishing;
    Ok(C1Routes { divisibility, vanishing })
}

/// Where divisibility starts in a synthetic family: `divisible_from[k-1]`
/// is the grid index from which the class is divisible by `u^k`, and
/// `vanish_from` the index from which it is zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlantedOnsets {
    pub divisible_from: Vec<Option<usize>>,
    pub vanish_from: Option<usize>,
}

fn planted_point(dom: Domain, kmax: usize, depth: usize, lo: i64, hi: i64, zero: bool) -> UModule {
    let top = -2 * depth as i64;
    let mut m = UModule::zero(dom, kmax);
    m.lo = lo;
    m.hi = hi;
    for q in lo..=hi {
        m.dims.insert(q, usize::from(q >= top && (q - top) % 2 == 0));
    }
    for q in lo..=hi - 2 {
        if m.dim(q) == 1 {
            m.u.insert(q, SparseMatrix::identity(1, dom));
        }
    }
    let coords = if zero { SparseVec::new() } else { SparseVec::unit(0, dom) };
    m.marked = Some(MarkedClass { degree: 0, coords });
    m
}

/// An `S¹` family of free modules `K[u]` whose generator sits in degree
/// `-2m_i`, with `m_i` the number of onsets reached at index `i`, and
/// whose fundamental class is `u^{m_i}` times the generator (or zero once
/// it has vanished). Its capacities are therefore known in advance.
pub fn planted_family(grid: &[Rational], onsets: &PlantedOnsets, u_order: usize) -> Result<PersistenceFamily, CtError> {
    check_grid(grid)?;
    let depth_at = |i: usize| onsets.divisible_from.iter().filter(|o| o.is_some_and(|o| o <= i)).count();
    let lo = -2 * onsets.divisible_from.len() as i64;
    let hi = 2 * u_order as i64;
    let dom = Domain::Rational;
    let mut results = Vec::new();
    let mut maps = Vec::new();
    for (i, t) in grid.iter().enumerate() {
        let zero = onsets.vanish_from.is_some_and(|v| v <= i);
        let module = planted_point(dom, u_order, depth_at(i), lo, hi, zero);
        let fundamental = module.marked.as_ref().map(|m| m.coords.clone());
        results.push(Ok(CTResult {
            theory: Theory::S1,
            domain: dom,
            t: t.clone(),
            shift: 0,
            groups: BTreeMap::new(),
            module,
            fundamental,
            gysin: None,
            forgetful: None,
            provenance: Provenance { n_points: 0, n_cap: 0, u_order, tuples: Vec::new() },
        }));
        if i > 0 {
            maps.push(None);
        }
    }
    Ok(PersistenceFamily { theory: Theory::S1, grid: grid.to_vec(), results, maps, functoriality: Report::new("persistence functoriality"), stage_checks: Vec::new() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn grid(n: usize) -> Vec<Rational> {
        (0..n as i64).map(|i| Rational::from_int(3 * i)).collect()
    }

    #[test]
    fn planted_onsets_are_recovered() {
        let g = grid(7);
        let on = PlantedOnsets { divisible_from: vec![Some(1), Some(3), None], vanish_from: None };
        let cap = capacities(&planted_family(&g, &on, 4).unwrap(), 3).unwrap();
        assert_eq!(cap.values, vec![Some(g[1].clone()), Some(g[3].clone()), None]);
        assert!(cap.monotone.passed);
    }

    #[test]
    fn vanishing_gives_every_capacity() {
        let g = grid(5);
        let on = PlantedOnsets { divisible_from: vec![None, None], vanish_from: Some(2) };
        let fam = planted_family(&g, &on, 3).unwrap();
        let cap = capacities(&fam, 2).unwrap();
        assert_eq!(cap.values, vec![Some(g[2].clone()), Some(g[2].clone())]);
        assert_eq!(fundamental_class(&fam).unwrap().vanishing, Some(g[2].clone()));
    }

    #[test]
    fn u_order_must_exceed_kmax() {
        let fam = planted_family(&grid(2), &PlantedOnsets { divisible_from: vec![], vanish_from: None }, 2).unwrap();
        assert!(matches!(capacities(&fam, 2), Err(CtError::InvalidConfig { .. })));
    }

    proptest! {
        #[test]
        fn nested_onsets_are_monotone(mut raw in proptest::collection::vec(proptest::option::of(0usize..8), 1..4)) {
            raw.sort_by_key(|o| o.unwrap_or(usize::MAX));
            let k = raw.len();
            let g = grid(8);
            let fam = planted_family(&g, &PlantedOnsets { divisible_from: raw.clone(), vanish_from: None }, k + 1).unwrap();
            let cap = capacities(&fam, k).unwrap();
            prop_assert!(cap.monotone.passed);
            for (j, o) in raw.iter().enumerate() {
                prop_assert_eq!(cap.values[j].clone(), o.map(|i| g[i].clone()));
            }
        }
    }
}
