//! Consistency checks on computed results and families.

use std::collections::BTreeMap;

use chain::{check_exact, Report};
use exactalg::{rank, Rational, SparseMatrix};
use mixed::{ucone, ucone_maps, UCohomology};

use crate::family::PersistenceFamily;
use crate::oracle::OracleRow;
use crate::pipeline::{s1_window, Params, S1Stage, Theory};
use crate::CtError;

/// Exactness of the sequence of the constants into the full model and the
/// relative term, with the relative dimensions that were found.
#[derive(Clone, Debug)]
pub struct TautologicalReport {
    pub report: Report,
    pub relative_dims: BTreeMap<i64, usize>,
}

/// Checks `H(Δ) -> H(W) -> H(cone) -> H(Δ)[1]` on the reported window of an
/// `S¹` stage.
pub fn tautological_check(stage: &S1Stage, p: &Params) -> Result<TautologicalReport, CtError> {
    let d = stage.result.shift;
    let k = p.u_order;
    let (lo, hi) = s1_window(p);
    let diag = stage.diagonal.reduced.complex.raise(d).with_kmax(k);
    let full = stage.complex().clone();
    let f = stage.diagonal.inclusion.raise(d);
    let cone = ucone(&f, &diag, &full)?;
    let (inc, proj) = ucone_maps(&diag, &full, &cone);
    let hd = UCohomology::new(&diag, Some((lo, hi + 1)))?;
    let hw = UCohomology::new(&full, Some((lo, hi + 1)))?;
    let hc = UCohomology::new(&cone, Some((lo, hi + 1)))?;
    let mf = hd.induced(&f, &hw)?;
    let mi = hw.induced(&inc, &hc)?;
    let mp = hc.induced(&proj, &hd)?;
    let mut seq = Vec::new();
    for q in lo..=hi {
        seq.push(mf[&q].clone());
        seq.push(mi[&q].clone());
        seq.push(mp[&q].clone());
    }
    seq.push(mf[&(hi + 1)].clone());
    let mut report = Report::new(format!("tautological sequence at T = {}", stage.result.t));
    report.absorb(check_exact(&seq)?);
    let relative_dims = (lo..=hi).map(|q| (q, hc.module.dim(q))).filter(|p| p.1 > 0).collect();
    Ok(TautologicalReport { report, relative_dims })
}

/// Compares every computed point of a circle family with the oracle on
/// the reported window. Points that failed are reported as missing.
pub fn viterbo_compare(family: &PersistenceFamily, oracle: impl Fn(&Rational) -> OracleRow) -> Report {
    let mut rep = Report::new(format!("{} against the circle answer", family.theory));
    for (t, r) in family.grid.iter().zip(&family.results) {
        let r = match r {
            Ok(r) => r,
            Err(e) => {
                rep.fail(format!("T = {t} not computed: {e}"));
                continue;
            }
        };
        let row = oracle(t);
        let (lo, hi) = (r.module.lo, r.module.hi);
        for q in lo..=hi {
            let expected = match family.theory {
                Theory::NonEquivariant => row.noneq.get(&q).copied().unwrap_or(0),
                Theory::S1 => row.s1.dim(q),
                Theory::Zl(_) => {
                    rep.fail("no circle answer for Z/ℓ");
                    return rep;
                }
            };
            let got = r.module.dim(q);
            rep.require(got == expected, || format!("T = {t}, degree {q}: {got} against {expected}"));
        }
    }
    rep
}

/// Rank changes between consecutive computed points must straddle a
/// multiple of `length`: some `kL` with `T_i < kL <= T_{i+1}`.
pub fn spectrality_check(family: &PersistenceFamily, length: &Rational) -> Report {
    let mut rep = Report::new("spectrality");
    let pts: Vec<_> = family.computed().collect();
    for w in pts.windows(2) {
        let ((_, a), (_, b)) = (w[0], w[1]);
        if a.dims() == b.dims() {
            continue;
        }
        let k = b.t.mul(&length.inv()).floor();
        let kl = Rational::from_integer(&k).mul(length);
        rep.require(k.signum() > 0 && kl > a.t, || format!("ranks change between T = {} and T = {} with no multiple of {length} between", a.t, b.t));
    }
    rep
}

/// Structure maps between consecutive grid points inside `(lo, hi)` must be
/// isomorphisms in every degree of their windows.
pub fn orbit_free_isomorphisms(family: &PersistenceFamily, lo: &Rational, hi: &Rational) -> Result<Report, CtError> {
    let mut rep = Report::new(format!("structure maps inside ({lo}, {hi})"));
    for (i, m) in family.maps.iter().enumerate() {
        let (a, b) = (&family.grid[i], &family.grid[i + 1]);
        if !(a > lo && b < hi) {
            continue;
        }
        let Some(m) = m else {
            rep.fail(format!("map T = {a} -> {b} not computed"));
            continue;
        };
        for (q, x) in m {
            rep.require(is_iso(x)?, || format!("T = {a} -> {b}, degree {q}: not an isomorphism"));
        }
    }
    Ok(rep)
}

fn is_iso(m: &SparseMatrix) -> Result<bool, CtError> {
    Ok(m.rows() == m.cols() && rank(m)? == m.rows())
}

/// Surjectivity in `degree` of the map from grid point `i` to `i + 1`.
pub fn structure_map_surjective(family: &PersistenceFamily, i: usize, degree: i64) -> Result<Option<bool>, CtError> {
    let Some(Some(m)) = family.maps.get(i) else { return Ok(None) };
    let Some(x) = m.get(&degree) else { return Ok(None) };
    Ok(Some(rank(x)? == x.rows()))
}
