//! Families over a grid of `T` values with their structure maps.

use std::collections::BTreeMap;

use chain::{induced_map, Report};
use exactalg::{Rational, SparseMatrix, SparseVec};
use loopmodel::{level_inclusion, persistence_map, MetricGraph};
use mixed::UMap;
use precyclic::ReducedFixedPoints;
use rayon::prelude::*;

use crate::pipeline::{ct_noneq, ct_s1, ct_zl, noneq_stage, s1_stage, shifted_map, zl_stage, CTResult, NoneqStage, Params, S1Stage, Theory};
use crate::CtError;

/// Results over an ascending grid, the maps they induce between
/// consecutive computed points, and the functoriality checks.
#[derive(Clone, Debug)]
pub struct PersistenceFamily {
    pub theory: Theory,
    pub grid: Vec<Rational>,
    /// The result at each grid point, or why it could not be computed.
    pub results: Vec<Result<CTResult, CtError>>,
    /// `maps[i]`: from point `i` to point `i + 1`, per source degree.
    pub maps: Vec<Option<BTreeMap<i64, SparseMatrix>>>,
    /// Composition law and transport of fundamental classes.
    pub functoriality: Report,
    /// Checks run on the data behind each computed point.
    pub stage_checks: Vec<Report>,
}

impl PersistenceFamily {
    pub fn computed(&self) -> impl Iterator<Item = (usize, &CTResult)> {
        self.results.iter().enumerate().filter_map(|(i, r)| r.as_ref().ok().map(|r| (i, r)))
    }

    pub fn result_at(&self, t: &Rational) -> Option<&CTResult> {
        self.grid.iter().position(|g| g == t).and_then(|i| self.results[i].as_ref().ok())
    }
}

pub(crate) fn check_grid(grid: &[Rational]) -> Result<(), CtError> {
    if grid.iter().any(|t| t.signum() < 0) {
        return Err(CtError::config("grid", "values must be nonnegative"));
    }
    if grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(CtError::config("grid", "must be strictly ascending"));
    }
    Ok(())
}

type Induced = BTreeMap<i64, SparseMatrix>;

fn compose(g: &Induced, f: &Induced, shift: i64) -> Result<Induced, CtError> {
    let mut out = BTreeMap::new();
    for (&q, a) in f {
        if let Some(b) = g.get(&(q + shift)) {
            out.insert(q, b.mul(a)?);
        }
    }
    Ok(out)
}

fn transport(rep: &mut Report, maps: &[Option<Induced>], classes: &[Option<SparseVec>], grid: &[Rational]) {
    for (i, m) in maps.iter().enumerate() {
        let (Some(m), Some(a), Some(b)) = (m, &classes[i], &classes[i + 1]) else { continue };
        let Some(m0) = m.get(&0) else { continue };
        rep.require(&m0.mul_vec(a) == b, || format!("fundamental class not transported from T = {} to T = {}", grid[i], grid[i + 1]));
    }
}

fn composition(rep: &mut Report, maps: &[Option<Induced>], i: usize, direct: &Induced, grid: &[Rational]) -> Result<(), CtError> {
    if let (Some(f), Some(g)) = (&maps[i], &maps[i + 1]) {
        let c = compose(g, f, 0)?;
        for (q, m) in direct {
            if c.get(q).is_some_and(|x| x != m) {
                rep.fail(format!("composite T = {} -> {} differs from the direct map in degree {q}", grid[i], grid[i + 2]));
            }
        }
    }
    Ok(())
}

fn s1_map(a: &S1Stage, b: &S1Stage, d: i64) -> Result<UMap, CtError> {
    let f = persistence_map(&a.tower, &b.tower)?;
    Ok(ReducedFixedPoints::transfer_map(&f, &a.levels, &a.reduced, &b.levels, &b.reduced).raise(d))
}

fn s1_induced(a: &S1Stage, b: &S1Stage, d: i64) -> Result<Induced, CtError> {
    Ok(a.cohomology.induced(&s1_map(a, b, d)?, &b.cohomology)?)
}

fn pool<T: Send>(jobs: usize, f: impl FnOnce() -> T + Send) -> T {
    match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
        Ok(p) => p.install(f),
        Err(_) => f(),
    }
}

/// The `S¹` family over a field; `jobs` bounds the worker threads.
pub fn s1_family(g: &MetricGraph, p: &Params, grid: &[Rational], jobs: usize) -> Result<PersistenceFamily, CtError> {
    s1_family_checked(g, p, grid, jobs, &|_| Ok(None))
}

/// A check evaluated on every computed `S¹` stage before it is dropped.
pub type StageCheck<'a> = dyn Fn(&S1Stage) -> Result<Option<Report>, CtError> + Sync + 'a;

/// [`s1_family`], running `check` on each stage.
pub fn s1_family_checked(g: &MetricGraph, p: &Params, grid: &[Rational], jobs: usize, check: &StageCheck) -> Result<PersistenceFamily, CtError> {
    check_grid(grid)?;
    p.check(Theory::S1)?;
    p.domain.require_field()?;
    let d = g.dim as i64;
    pool(jobs.max(1), || {
        let stages: Vec<Result<S1Stage, CtError>> = grid.par_iter().map(|t| s1_stage(g, p, t)).collect();
        let mut maps = Vec::new();
        for w in stages.windows(2) {
            maps.push(match (&w[0], &w[1]) {
                (Ok(a), Ok(b)) => Some(s1_induced(a, b, d)?),
                _ => None,
            });
        }
        let mut rep = Report::new("persistence functoriality");
        for i in 0..stages.len().saturating_sub(2) {
            if let (Ok(a), Ok(c)) = (&stages[i], &stages[i + 2]) {
                if maps[i].is_some() && maps[i + 1].is_some() {
                    composition(&mut rep, &maps, i, &s1_induced(a, c, d)?, grid)?;
                }
            }
        }
        let mut stage_checks = Vec::new();
        for s in stages.iter().flatten() {
            stage_checks.extend(check(s)?);
        }
        let results: Vec<Result<CTResult, CtError>> = stages.into_iter().map(|s| s.map(|s| s.result)).collect();
        let classes: Vec<Option<SparseVec>> = results.iter().map(|r| r.as_ref().ok().and_then(|r| r.fundamental.clone())).collect();
        transport(&mut rep, &maps, &classes, grid);
        Ok(PersistenceFamily { theory: Theory::S1, grid: grid.to_vec(), results, maps, functoriality: rep, stage_checks })
    })
}

fn noneq_induced(a: &NoneqStage, b: &NoneqStage, d: i64) -> Result<Option<Induced>, CtError> {
    let (Some(ha), Some(hb)) = (&a.basis, &b.basis) else { return Ok(None) };
    let f = shifted_map(&level_inclusion(a.level(), b.level())?, -d);
    let mut out = BTreeMap::new();
    for q in 0..=d {
        out.insert(q, induced_map(&f, &a.complex, &b.complex, ha, hb, q)?);
    }
    Ok(Some(out))
}

/// The non-equivariant family: first levels only.
pub fn noneq_family(g: &MetricGraph, p: &Params, grid: &[Rational], jobs: usize) -> Result<PersistenceFamily, CtError> {
    check_grid(grid)?;
    p.check(Theory::NonEquivariant)?;
    let d = g.dim as i64;
    pool(jobs.max(1), || {
        let stages: Vec<Result<NoneqStage, CtError>> = grid.par_iter().map(|t| noneq_stage(g, p, t)).collect();
        let mut maps = Vec::new();
        for w in stages.windows(2) {
            maps.push(match (&w[0], &w[1]) {
                (Ok(a), Ok(b)) => noneq_induced(a, b, d)?,
                _ => None,
            });
        }
        let mut rep = Report::new("persistence functoriality");
        for i in 0..stages.len().saturating_sub(2) {
            if let (Ok(a), Ok(c)) = (&stages[i], &stages[i + 2]) {
                if let Some(direct) = noneq_induced(a, c, d)? {
                    composition(&mut rep, &maps, i, &direct, grid)?;
                }
            }
        }
        let results: Vec<Result<CTResult, CtError>> = stages.into_iter().map(|s| s.map(|s| s.result)).collect();
        let classes: Vec<Option<SparseVec>> = results.iter().map(|r| r.as_ref().ok().and_then(|r| r.fundamental.clone())).collect();
        transport(&mut rep, &maps, &classes, grid);
        Ok(PersistenceFamily { theory: Theory::NonEquivariant, grid: grid.to_vec(), results, maps, functoriality: rep, stage_checks: Vec::new() })
    })
}

/// The `Z/ℓ` map induced by an equivariant chain map `f` on the periodic
/// complexes: `f` on both slots of every generator degree.
fn zl_umap(f: &chain::GradedMap, a: &crate::pipeline::ZlStage, b: &crate::pipeline::ZlStage) -> Result<UMap, CtError> {
    let x = a.level.complex.shift(-a.result.shift);
    let y = b.level.complex.shift(-b.result.shift);
    let dom = a.result.domain;
    let mut out = UMap::new(0);
    for q in a.complex.gen_degrees() {
        let even = f.get(q, &x, &y);
        let odd = f.get(q - 1, &x, &y);
        let h = [y.dim(q), y.dim(q - 1)];
        let w = [x.dim(q), x.dim(q - 1)];
        out.set_part(0, q, SparseMatrix::block(dom, &h, &w, &[(0, 0, &even), (1, 1, &odd)])?);
    }
    Ok(out)
}

fn zl_induced(a: &crate::pipeline::ZlStage, b: &crate::pipeline::ZlStage) -> Result<Option<Induced>, CtError> {
    let (Some(ha), Some(hb)) = (&a.cohomology, &b.cohomology) else { return Ok(None) };
    let f = shifted_map(&level_inclusion(&a.level, &b.level)?, -a.result.shift);
    Ok(Some(ha.induced(&zl_umap(&f, a, b)?, hb)?))
}

/// The `Z/ℓ` family.
pub fn zl_family(g: &MetricGraph, p: &Params, ell: usize, grid: &[Rational], jobs: usize) -> Result<PersistenceFamily, CtError> {
    check_grid(grid)?;
    p.check(Theory::Zl(ell))?;
    pool(jobs.max(1), || {
        let stages: Vec<_> = grid.par_iter().map(|t| zl_stage(g, p, ell, t)).collect();
        let mut maps = Vec::new();
        for w in stages.windows(2) {
            maps.push(match (&w[0], &w[1]) {
                (Ok(a), Ok(b)) => zl_induced(a, b)?,
                _ => None,
            });
        }
        let mut rep = Report::new("persistence functoriality");
        for i in 0..stages.len().saturating_sub(2) {
            if let (Ok(a), Ok(c)) = (&stages[i], &stages[i + 2]) {
                if let Some(direct) = zl_induced(a, c)? {
                    composition(&mut rep, &maps, i, &direct, grid)?;
                }
            }
        }
        let results = stages.into_iter().map(|s| s.map(|s| s.result)).collect();
        Ok(PersistenceFamily { theory: Theory::Zl(ell), grid: grid.to_vec(), results, maps, functoriality: rep, stage_checks: Vec::new() })
    })
}


/// Results computed point by point without structure maps, for the
/// integers where cohomology bases are not available.
pub fn pointwise_family(g: &MetricGraph, p: &Params, theory: Theory, grid: &[Rational], jobs: usize) -> Result<PersistenceFamily, CtError> {
    check_grid(grid)?;
    p.check(theory)?;
    let one = |t: &Rational| match theory {
        Theory::S1 => ct_s1(g, p, t),
        Theory::Zl(l) => ct_zl(g, p, l, t),
        Theory::NonEquivariant => ct_noneq(g, p, t),
    };
    let results = pool(jobs.max(1), || grid.par_iter().map(one).collect());
    let maps = vec![None; grid.len().saturating_sub(1)];
    Ok(PersistenceFamily { theory, grid: grid.to_vec(), results, maps, functoriality: Report::new("persistence functoriality"), stage_checks: Vec::new() })
}
