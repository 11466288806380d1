//! The invariants at one parameter value `T`.

use std::collections::BTreeMap;
use std::fmt;

use chain::{cohomology, cohomology_basis, CochainComplex, CohomologyBasis, GradedMap, Group, Report};
use exactalg::{Domain, Rational, SparseVec};
use loopmodel::{assemble_precocyclic, build_level, diagonal_model, Caps, DiagonalModel, LevelChains, LoopSpec, LoopTower, MetricGraph};
use mixed::{barcode, group_cohomology_complex, gysin_check_u, homotopy_fixed_points, Barcode, UCohomology, UComplex, UMap, UModule};
use precyclic::{cyclic_cochain_mixed, validate_relations, PrecyclicError, ReducedFixedPoints, ReducedLevels};

use crate::CtError;

/// Which invariant is computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Theory {
    S1,
    Zl(usize),
    NonEquivariant,
}

impl fmt::Display for Theory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Theory::S1 => write!(f, "s1"),
            Theory::Zl(l) => write!(f, "zl {l}"),
            Theory::NonEquivariant => write!(f, "noneq"),
        }
    }
}

/// Discretization and truncation parameters shared by a family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Params {
    /// Points per segment `N`.
    pub n_points: usize,
    /// Number of levels `1..=n_cap` entering the cyclic cone.
    pub n_cap: usize,
    /// Reported modules are computed modulo `u^{u_order + 1}`.
    pub u_order: usize,
    pub domain: Domain,
    pub caps: Caps,
}

impl Params {
    /// Checks the invariants tying the parameters to the theory.
    pub fn check(&self, theory: Theory) -> Result<(), CtError> {
        if self.n_points == 0 {
            return Err(CtError::config("N", "must be positive"));
        }
        match theory {
            Theory::S1 if self.n_cap < 2 * self.u_order + 2 => {
                Err(CtError::config("ncap", format!("{} is below 2·uorder + 2 = {}", self.n_cap, 2 * self.u_order + 2)))
            }
            Theory::Zl(0) => Err(CtError::config("ell", "must be positive")),
            Theory::Zl(l) if l > self.n_cap => Err(CtError::config("ell", format!("{l} exceeds ncap {}", self.n_cap))),
            _ => Ok(()),
        }
    }

    pub(crate) fn spec(&self, t: &Rational) -> LoopSpec {
        LoopSpec { n_points: self.n_points, t: t.clone(), domain: self.domain, caps: self.caps }
    }
}

/// Where a result came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Provenance {
    pub n_points: usize,
    pub n_cap: usize,
    pub u_order: usize,
    /// Tuples on each computed level.
    pub tuples: Vec<usize>,
}

/// The invariant of one theory at one `T`.
#[derive(Clone, Debug)]
pub struct CTResult {
    pub theory: Theory,
    pub domain: Domain,
    pub t: Rational,
    /// Degree shift `d`, the model dimension.
    pub shift: i64,
    /// Dimensions and `u`-action on the reported window. Over the integers
    /// only the free ranks are filled in.
    pub module: UModule,
    /// Ranks and torsion per degree (torsion only over the integers).
    pub groups: BTreeMap<i64, Group>,
    /// Coordinates of the fundamental class in degree 0.
    pub fundamental: Option<SparseVec>,
    pub gysin: Option<Report>,
    /// Dimensions of the `u^0` term of the Gysin sequence.
    pub forgetful: Option<BTreeMap<i64, usize>>,
    pub provenance: Provenance,
}

impl CTResult {
    /// Nonzero dimensions (free ranks over the integers).
    pub fn dims(&self) -> BTreeMap<i64, usize> {
        self.module.nonzero_dims()
    }

    pub fn barcode(&self) -> Result<Barcode, CtError> {
        Ok(barcode(&self.module)?)
    }

    pub fn is_torsion_free(&self) -> bool {
        self.groups.values().all(|g| g.torsion.is_empty())
    }

    /// Whether the fundamental class is nonzero, when it is known.
    pub fn eta_nonzero(&self) -> Option<bool> {
        self.fundamental.as_ref().map(|v| !v.is_zero())
    }

    /// `u^k`-divisibility of the fundamental class for `k = 1..=kmax`.
    pub fn eta_divisibility(&self, kmax: usize) -> Result<Vec<bool>, CtError> {
        let Some(eta) = &self.fundamental else { return Ok(Vec::new()) };
        (1..=kmax).map(|k| Ok(self.module.divisible(0, eta, k)?)).collect()
    }
}

fn field_groups(module: &UModule) -> BTreeMap<i64, Group> {
    module.nonzero_dims().into_iter().map(|(q, n)| (q, Group { rank: n, torsion: Vec::new() })).collect()
}

/// Groups of `c` in `[lo, hi]` and the module of their ranks, without `u`.
fn graded_module(c: &CochainComplex, lo: i64, hi: i64, kmax: usize) -> Result<(UModule, BTreeMap<i64, Group>), CtError> {
    let h = cohomology(c)?;
    let groups: BTreeMap<i64, Group> = h.groups.into_iter().filter(|(q, _)| (lo..=hi).contains(q)).collect();
    let mut module = UModule::zero(Domain::Integer, kmax);
    module.lo = lo;
    module.hi = hi;
    for q in lo..=hi {
        module.dims.insert(q, groups.get(&q).map_or(0, |g| g.rank));
    }
    Ok((module, groups))
}

/// Window of the reported `S¹` module in raised degrees: below `2K` for
/// the `u`-truncation and below `n_cap - 1` for the level truncation.
pub(crate) fn s1_window(p: &Params) -> (i64, i64) {
    (0, (2 * p.u_order as i64).min(p.n_cap as i64 - 2))
}

fn check_tower(tower: &LoopTower) -> Result<(), CtError> {
    let rep = validate_relations(&tower.pre);
    if !rep.passed {
        return Err(PrecyclicError::NotPreCocyclic(rep.messages.join("; ")).into());
    }
    Ok(())
}

/// The diagonal piece of an `S¹` computation and its map into the tower.
pub struct DiagonalStage {
    pub model: DiagonalModel,
    pub levels: ReducedLevels,
    pub reduced: ReducedFixedPoints,
    /// `u`-linear map of the (unraised) reduced complexes.
    pub inclusion: UMap,
}

/// Everything an `S¹` result is computed from, kept so that structure maps
/// and products can be evaluated afterwards.
pub struct S1Stage {
    pub tower: LoopTower,
    pub levels: ReducedLevels,
    pub reduced: ReducedFixedPoints,
    pub diagonal: DiagonalStage,
    /// Raised by `d` and truncated at `u^{K+1}`.
    pub cohomology: UCohomology,
    /// Expanded cocycle of the fundamental class in raised degree 0.
    pub eta_cocycle: SparseVec,
    pub result: CTResult,
}

impl S1Stage {
    /// The raised reduced complex truncated at the reported order.
    pub fn complex(&self) -> &UComplex {
        &self.cohomology.complex
    }
}

fn diagonal_stage(g: &MetricGraph, tower: &LoopTower, levels: &ReducedLevels, reduced: &ReducedFixedPoints) -> Result<DiagonalStage, CtError> {
    let model = diagonal_model(g, tower)?;
    let dlev = ReducedLevels::explicit(model.pre.clone())?;
    let dred = ReducedFixedPoints::build(&dlev, reduced.level_cap, reduced.kmax)?;
    let inclusion = ReducedFixedPoints::transfer_map(&model.inclusion, &dlev, &dred, levels, reduced);
    Ok(DiagonalStage { model, levels: dlev, reduced: dred, inclusion })
}

/// The fundamental class `[X]` of the constants: the top class of the
/// first level, as a cocycle in raised degree 0 of the diagonal complex.
fn diagonal_class(diag: &ReducedFixedPoints, d: i64, kmax: usize) -> Result<(UComplex, SparseVec), CtError> {
    let raised = diag.complex.raise(d).with_kmax(kmax);
    let block = diag.layout.get(&-d).and_then(|l| l.iter().find(|b| (b.0, b.1, b.2) == (0, 0, -d)).copied());
    let Some((_, _, _, off, n)) = block else {
        return Err(CtError::FundamentalClassLost(format!("no degree {d} homology on the constants")));
    };
    if n != 1 {
        return Err(CtError::FundamentalClassLost(format!("degree {d} homology of the constants has rank {n}")));
    }
    let idx = raised.expanded_index(0, off, 0).expect("class block is present");
    let z = SparseVec::unit(idx, raised.domain());
    if !raised.expand()?.diff(0).mul_vec(&z).is_zero() {
        return Err(CtError::FundamentalClassLost("top class of the constants is not a cocycle".into()));
    }
    Ok((raised, z))
}

/// The `S¹` invariant over a field, with the data behind it.
pub fn s1_stage(g: &MetricGraph, p: &Params, t: &Rational) -> Result<S1Stage, CtError> {
    p.check(Theory::S1)?;
    p.domain.require_field()?;
    let d = g.dim as i64;
    let k = p.u_order;
    let tower = assemble_precocyclic(g, &p.spec(t), p.n_cap)?;
    check_tower(&tower)?;
    let levels = ReducedLevels::explicit(tower.pre.clone())?;
    let reduced = ReducedFixedPoints::build(&levels, p.n_cap, k + 1)?;
    let raised = reduced.complex.raise(d);
    let gysin = gysin_check_u(&raised)?;
    let mut coh = UCohomology::new(&raised.with_kmax(k), Some(s1_window(p)))?;
    let diagonal = diagonal_stage(g, &tower, &levels, &reduced)?;
    let (draised, z) = diagonal_class(&diagonal.reduced, d, k)?;
    let image = diagonal.inclusion.raise(d).expand(&draised, &coh.complex).get(0, &draised.expand()?, &coh.expanded).mul_vec(&z);
    coh.mark(0, &image)?;
    let fundamental = coh.module.marked.as_ref().map(|m| m.coords.clone());
    let (lo, hi) = s1_window(p);
    let forgetful = gysin.forgetful.iter().filter(|(q, _)| (lo..=hi).contains(*q)).map(|(&q, &n)| (q, n)).collect();
    let result = CTResult {
        theory: Theory::S1,
        domain: p.domain,
        t: t.clone(),
        shift: d,
        groups: field_groups(&coh.module),
        module: coh.module.clone(),
        fundamental,
        gysin: Some(gysin.report),
        forgetful: Some(forgetful),
        provenance: Provenance { n_points: p.n_points, n_cap: p.n_cap, u_order: k, tuples: tower.levels.iter().map(|l| l.tuples.len()).collect() },
    };
    Ok(S1Stage { tower, levels, reduced, diagonal, cohomology: coh, eta_cocycle: image, result })
}

/// The `S¹` invariant. Over the integers the cone is used directly and only
/// ranks and torsion are reported.
pub fn ct_s1(g: &MetricGraph, p: &Params, t: &Rational) -> Result<CTResult, CtError> {
    if p.domain.is_field() {
        return Ok(s1_stage(g, p, t)?.result);
    }
    p.check(Theory::S1)?;
    let d = g.dim as i64;
    let tower = assemble_precocyclic(g, &p.spec(t), p.n_cap)?;
    check_tower(&tower)?;
    let cc = cyclic_cochain_mixed(&tower.pre, p.n_cap)?;
    let fixed = homotopy_fixed_points(&cc.mixed, p.u_order)?.raise(d);
    let (lo, hi) = s1_window(p);
    let (module, groups) = graded_module(&fixed.expand()?, lo, hi, p.u_order)?;
    Ok(CTResult {
        theory: Theory::S1,
        domain: p.domain,
        t: t.clone(),
        shift: d,
        module,
        groups,
        fundamental: None,
        gysin: None,
        forgetful: None,
        provenance: Provenance { n_points: p.n_points, n_cap: p.n_cap, u_order: p.u_order, tuples: tower.levels.iter().map(|l| l.tuples.len()).collect() },
    })
}

/// The non-equivariant invariant: chains of the first level raised by `d`.
pub struct NoneqStage {
    pub tower: LoopTower,
    pub complex: CochainComplex,
    pub basis: Option<CohomologyBasis>,
    pub result: CTResult,
}

impl NoneqStage {
    pub fn level(&self) -> &LevelChains {
        &self.tower.levels[0]
    }
}

pub(crate) fn noneq_stage(g: &MetricGraph, p: &Params, t: &Rational) -> Result<NoneqStage, CtError> {
    p.check(Theory::NonEquivariant)?;
    let d = g.dim as i64;
    let tower = assemble_precocyclic(g, &p.spec(t), 1)?;
    let complex = tower.levels[0].complex.shift(-d);
    let (mut module, groups) = graded_module(&complex, 0, d, 0)?;
    module.domain = p.domain;
    let mut fundamental = None;
    let mut basis = None;
    if p.domain.is_field() {
        let diag = diagonal_model(g, &tower)?;
        let dc = diag.levels[0].complex.shift(-d);
        let hd = cohomology_basis(&dc)?;
        let hw = cohomology_basis(&complex)?;
        let rep = hd.degree(0).filter(|b| b.dim() == 1).ok_or_else(|| CtError::FundamentalClassLost(format!("degree {d} homology of the constants is not of rank 1")))?;
        let inc = shifted_map(&diag.inclusion.levels[0], -d);
        let img = inc.get(0, &dc, &complex).mul_vec(&rep.reps[0]);
        fundamental = Some(hw.degree(0).map(|b| b.coords(&img)).transpose()?.unwrap_or_default());
        basis = Some(hw);
    }
    let result = CTResult {
        theory: Theory::NonEquivariant,
        domain: p.domain,
        t: t.clone(),
        shift: d,
        module,
        groups,
        fundamental,
        gysin: None,
        forgetful: None,
        provenance: Provenance { n_points: p.n_points, n_cap: 1, u_order: 0, tuples: vec![tower.levels[0].tuples.len()] },
    };
    Ok(NoneqStage { tower, complex, basis, result })
}

pub fn ct_noneq(g: &MetricGraph, p: &Params, t: &Rational) -> Result<CTResult, CtError> {
    Ok(noneq_stage(g, p, t)?.result)
}

/// The same components on `C.shift(s)`.
pub(crate) fn shifted_map(f: &GradedMap, s: i64) -> GradedMap {
    let mut out = GradedMap::new(f.shift);
    for (&q, m) in f.components() {
        out.set(q - s, m.clone());
    }
    out
}

/// The `Z/ℓ` stage: group cohomology of the raised level-`ℓ` chains with
/// the cyclic operator, one period beyond the reported window.
pub(crate) struct ZlStage {
    pub level: LevelChains,
    pub complex: UComplex,
    pub cohomology: Option<UCohomology>,
    pub result: CTResult,
}

pub(crate) fn zl_stage(g: &MetricGraph, p: &Params, ell: usize, t: &Rational) -> Result<ZlStage, CtError> {
    p.check(Theory::Zl(ell))?;
    let d = g.dim as i64;
    let (level, sigma) = build_level(g, &p.spec(t), ell)?;
    let x = level.complex.shift(-d);
    let complex = group_cohomology_complex(&x, &shifted_map(&sigma, -d), ell, p.u_order + 1)?;
    let a = complex.min_degree().unwrap_or(0);
    let window = (a, a + 2 * p.u_order as i64 + 1);
    let (module, groups, cohomology) = if p.domain.is_field() {
        let h = UCohomology::new(&complex, Some(window))?;
        (h.module.clone(), field_groups(&h.module), Some(h))
    } else {
        let (m, g) = graded_module(&complex.expand()?, window.0, window.1, p.u_order)?;
        (m, g, None)
    };
    let result = CTResult {
        theory: Theory::Zl(ell),
        domain: p.domain,
        t: t.clone(),
        shift: d,
        module,
        groups,
        fundamental: None,
        gysin: None,
        forgetful: None,
        provenance: Provenance { n_points: p.n_points, n_cap: p.n_cap, u_order: p.u_order, tuples: vec![level.tuples.len()] },
    };
    Ok(ZlStage { level, complex, cohomology, result })
}

pub fn ct_zl(g: &MetricGraph, p: &Params, ell: usize, t: &Rational) -> Result<CTResult, CtError> {
    Ok(zl_stage(g, p, ell, t)?.result)
}
