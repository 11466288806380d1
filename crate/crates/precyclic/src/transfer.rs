//! Homotopy fixed points of the cyclic cone with every level replaced by
//! its cohomology, by the homological perturbation lemma.
//!
//! The base differential is the internal `∂` of the levels (with its
//! totalization signs); the perturbation `X` collects the Hochschild
//! operators, `1 - t` and `u·B_raw`. Every application of `X` raises
//! `p + 2j + e` (level index, `u`-power, cone summand), so all series are
//! finite once levels and `u`-powers are capped.

use std::collections::BTreeMap;

use chain::GradedMap;
use exactalg::{Domain, SparseMatrix, SparseVec};
use mixed::{UComplex, UMap};

use crate::complex::PreCocyclicComplex;
use crate::cyclic::CyclicCochains;
use crate::morphism::PreCocyclicMap;
use crate::operators::{alternating, norm, one_minus_t};
use crate::sdr::{ExplicitSdr, LevelSdr};
use crate::PrecyclicError;

/// A vector of the unreduced fixed points in one total degree, keyed by
/// `(u-power j, cone summand e, level index p)`; the block `(j, e, p)` of a
/// degree-`k` vector lies in `C_{p+1}^{k-2j-e-p}`.
pub type TotalVector = BTreeMap<(usize, usize, usize), SparseVec>;

fn add_into(v: &mut TotalVector, key: (usize, usize, usize), x: SparseVec) {
    if x.is_zero() {
        return;
    }
    let e = v.entry(key).or_default();
    *e = e.add(&x);
    if e.is_zero() {
        v.remove(&key);
    }
}

/// Levels together with retractions onto their cohomology. The level
/// complexes only serve as carriers of cofaces and `t`; their internal
/// differential enters through the retractions.
pub struct ReducedLevels {
    pub pre: PreCocyclicComplex,
    pub sdrs: Vec<Box<dyn LevelSdr>>,
}

impl ReducedLevels {
    pub fn new(pre: PreCocyclicComplex, sdrs: Vec<Box<dyn LevelSdr>>) -> Result<Self, PrecyclicError> {
        if sdrs.len() != pre.max_level() {
            return Err(PrecyclicError::Shape(format!("{} retractions for {} levels", sdrs.len(), pre.max_level())));
        }
        Ok(ReducedLevels { pre, sdrs })
    }

    /// Retractions computed by linear algebra on every level.
    pub fn explicit(pre: PreCocyclicComplex) -> Result<Self, PrecyclicError> {
        let sdrs = (1..=pre.max_level())
            .map(|l| ExplicitSdr::new(pre.complex(l)).map(|s| Box::new(s) as Box<dyn LevelSdr>))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(ReducedLevels { pre, sdrs })
    }

    pub fn domain(&self) -> Domain {
        self.pre.domain()
    }
}

/// The reduced fixed points, its generator layout and the operators needed
/// to move classes and maps between the two pictures.
pub struct ReducedFixedPoints {
    pub complex: UComplex,
    /// Per generator degree: `(e, p, q, offset, dim)`.
    pub layout: BTreeMap<i64, Vec<(usize, usize, i64, usize, usize)>>,
    pub level_cap: usize,
    pub kmax: usize,
    d: Vec<GradedMap>,
    dp: Vec<GradedMap>,
    omt: Vec<GradedMap>,
    nrm: Vec<GradedMap>,
}

impl ReducedFixedPoints {
    pub fn build(levels: &ReducedLevels, level_cap: usize, kmax: usize) -> Result<Self, PrecyclicError> {
        let pre = &levels.pre;
        if level_cap == 0 || level_cap > pre.max_level() {
            return Err(PrecyclicError::LevelOverflow(level_cap, pre.max_level()));
        }
        let d = (1..level_cap).map(|l| alternating(pre, l, l + 1)).collect();
        let dp = (1..level_cap).map(|l| alternating(pre, l, l)).collect();
        let omt = (1..=level_cap).map(|l| one_minus_t(pre, l)).collect();
        let nrm = (1..=level_cap).map(|l| norm(pre, l)).collect();
        let mut layout: BTreeMap<i64, Vec<(usize, usize, i64, usize, usize)>> = BTreeMap::new();
        for e in 0..2usize {
            for p in 0..level_cap {
                for (&q, &n) in levels.sdrs[p].reduced_dims() {
                    if n > 0 {
                        layout.entry(e as i64 + p as i64 + q).or_default().push((e, p, q, 0, n));
                    }
                }
            }
        }
        let mut complex = UComplex::new(levels.domain(), kmax);
        for (&g, list) in layout.iter_mut() {
            list.sort_unstable();
            let mut off = 0;
            for b in list.iter_mut() {
                b.3 = off;
                off += b.4;
            }
            complex.set_gens(g, off);
        }
        let mut out = ReducedFixedPoints { complex, layout, level_cap, kmax, d, dp, omt, nrm };
        out.transfer_differential(levels)?;
        Ok(out)
    }

    fn x(&self, k: i64, v: &TotalVector) -> TotalVector {
        let mut out = TotalVector::new();
        for (&(j, e, p), x) in v {
            let q = k - 2 * j as i64 - e as i64 - p as i64;
            let apply = |m: &GradedMap| m.get_ref(q).map(|a| a.mul_vec(x)).unwrap_or_default();
            if e == 0 {
                if p + 1 < self.level_cap {
                    add_into(&mut out, (j, 0, p + 1), apply(&self.d[p]));
                }
                add_into(&mut out, (j, 1, p), apply(&self.omt[p]));
            } else {
                if p + 1 < self.level_cap {
                    add_into(&mut out, (j, 1, p + 1), apply(&self.dp[p]).neg());
                }
                if j < self.kmax {
                    add_into(&mut out, (j + 1, 0, p), apply(&self.nrm[p]));
                }
            }
        }
        out
    }

    /// `g = -σh` where `σ = (-1)^{p+1+e}` is the sign of `∂` on the block.
    fn g(&self, levels: &ReducedLevels, k: i64, v: &TotalVector) -> TotalVector {
        let mut out = TotalVector::new();
        for (&(j, e, p), x) in v {
            let q = k - 2 * j as i64 - e as i64 - p as i64;
            let h = levels.sdrs[p].homotopy(q, x);
            add_into(&mut out, (j, e, p), if (p + e) % 2 == 0 { h } else { h.neg() });
        }
        out
    }

    fn p(&self, levels: &ReducedLevels, k: i64, v: &TotalVector) -> TotalVector {
        let mut out = TotalVector::new();
        for (&(j, e, p), x) in v {
            let q = k - 2 * j as i64 - e as i64 - p as i64;
            add_into(&mut out, (j, e, p), levels.sdrs[p].project(q, x));
        }
        out
    }

    fn i(&self, levels: &ReducedLevels, k: i64, v: &TotalVector) -> TotalVector {
        let mut out = TotalVector::new();
        for (&(j, e, p), x) in v {
            let q = k - 2 * j as i64 - e as i64 - p as i64;
            add_into(&mut out, (j, e, p), levels.sdrs[p].include(q, x));
        }
        out
    }

    fn accumulate(acc: &mut TotalVector, v: TotalVector) {
        for (key, x) in v {
            add_into(acc, key, x);
        }
    }

    fn transfer_differential(&mut self, levels: &ReducedLevels) -> Result<(), PrecyclicError> {
        let mut parts: BTreeMap<(usize, i64), Vec<SparseVec>> = BTreeMap::new();
        for (&g, list) in &self.layout {
            for &(e, p, _, _, n) in list {
                for i in 0..n {
                    let x = TotalVector::from([((0, e, p), SparseVec::unit(i, levels.domain()))]);
                    let mut acc = TotalVector::new();
                    let mut w = self.x(g, &self.i(levels, g, &x));
                    while !w.is_empty() {
                        Self::accumulate(&mut acc, self.p(levels, g + 1, &w));
                        w = self.x(g, &self.g(levels, g + 1, &w));
                    }
                    for j in 0..=self.kmax {
                        let col = self.reduced_to_gen(g + 1 - 2 * j as i64, j, &acc);
                        parts.entry((j, g)).or_default().push(col);
                    }
                }
            }
        }
        for ((j, g), cols) in parts {
            let rows = self.complex.gens(g + 1 - 2 * j as i64);
            self.complex.set_part(j, g, SparseMatrix::from_columns(rows, levels.domain(), cols))?;
        }
        Ok(())
    }

    /// The `u^j` blocks of a reduced vector as coordinates in generator
    /// degree `g`.
    fn reduced_to_gen(&self, g: i64, j: usize, v: &TotalVector) -> SparseVec {
        let Some(list) = self.layout.get(&g) else { return SparseVec::new() };
        let mut pairs = Vec::new();
        for &(e, p, _, off, _) in list {
            if let Some(x) = v.get(&(j, e, p)) {
                pairs.extend(x.entries().iter().map(|(i, a)| (off + i, a.clone())));
            }
        }
        SparseVec::from_pairs(pairs)
    }

    /// A reduced vector of total degree `k` in expanded coordinates.
    pub fn reduced_to_expanded(&self, k: i64, v: &TotalVector) -> SparseVec {
        let mut out = SparseVec::new();
        for (j, g, off) in self.complex.layout(k) {
            out = out.add(&self.reduced_to_gen(g, j, v).shifted(off));
        }
        out
    }

    /// Inverse of [`Self::reduced_to_expanded`].
    pub fn expanded_to_reduced(&self, k: i64, x: &SparseVec) -> TotalVector {
        let mut out = TotalVector::new();
        for (j, g, off) in self.complex.layout(k) {
            for &(e, p, _, o, n) in self.layout.get(&g).into_iter().flatten() {
                add_into(&mut out, (j, e, p), x.window(off + o, off + o + n));
            }
        }
        out
    }

    /// `P' = P Σ (Xg)^n`: a cocycle of the unreduced fixed points in degree
    /// `k` to a reduced cocycle in expanded coordinates.
    pub fn project_cocycle(&self, levels: &ReducedLevels, k: i64, z: &TotalVector) -> SparseVec {
        let mut acc = self.p(levels, k, z);
        let mut w = self.x(k - 1, &self.g(levels, k, z));
        while !w.is_empty() {
            Self::accumulate(&mut acc, self.p(levels, k, &w));
            w = self.x(k - 1, &self.g(levels, k, &w));
        }
        self.reduced_to_expanded(k, &acc)
    }

    /// `I' = Σ (gX)^n I`: a reduced vector (expanded coordinates) to the
    /// unreduced fixed points.
    pub fn include_cocycle(&self, levels: &ReducedLevels, k: i64, x: &SparseVec) -> TotalVector {
        let mut acc = self.i(levels, k, &self.expanded_to_reduced(k, x));
        let mut w = acc.clone();
        loop {
            w = self.g(levels, k + 1, &self.x(k, &w));
            if w.is_empty() {
                break;
            }
            Self::accumulate(&mut acc, w.clone());
        }
        acc
    }

    /// `P' f I'` for a map of pre-cocyclic complexes, as a `u`-linear map
    /// of reduced complexes.
    pub fn transfer_map(
        f: &PreCocyclicMap,
        src_levels: &ReducedLevels,
        src: &ReducedFixedPoints,
        tgt_levels: &ReducedLevels,
        tgt: &ReducedFixedPoints,
    ) -> UMap {
        let dom = src_levels.domain();
        let mut out = UMap::new(0);
        for (&g, list) in &src.layout {
            let mut cols: Vec<Vec<SparseVec>> = vec![Vec::new(); tgt.kmax + 1];
            for &(e, p, _, _, n) in list {
                for i in 0..n {
                    let x = TotalVector::from([((0, e, p), SparseVec::unit(i, dom))]);
                    let big = src.include_total(src_levels, g, &x);
                    let mut image = TotalVector::new();
                    for (&(j, ee, pp), v) in &big {
                        let q = g - 2 * j as i64 - ee as i64 - pp as i64;
                        if let Some(m) = f.levels.get(pp).and_then(|m| m.get_ref(q)) {
                            add_into(&mut image, (j, ee, pp), m.mul_vec(v));
                        }
                    }
                    let red = tgt.project_total(tgt_levels, g, &image);
                    for (j, c) in cols.iter_mut().enumerate() {
                        c.push(tgt.reduced_to_gen(g - 2 * j as i64, j, &red));
                    }
                }
            }
            for (j, c) in cols.into_iter().enumerate() {
                let rows = tgt.complex.gens(g - 2 * j as i64);
                out.set_part(j, g, SparseMatrix::from_columns(rows, dom, c));
            }
        }
        out
    }

    fn include_total(&self, levels: &ReducedLevels, k: i64, x: &TotalVector) -> TotalVector {
        let mut acc = self.i(levels, k, x);
        let mut w = acc.clone();
        loop {
            w = self.g(levels, k + 1, &self.x(k, &w));
            if w.is_empty() {
                break;
            }
            Self::accumulate(&mut acc, w.clone());
        }
        acc
    }

    fn project_total(&self, levels: &ReducedLevels, k: i64, z: &TotalVector) -> TotalVector {
        let mut acc = self.p(levels, k, z);
        let mut w = self.x(k - 1, &self.g(levels, k, z));
        while !w.is_empty() {
            Self::accumulate(&mut acc, self.p(levels, k, &w));
            w = self.x(k - 1, &self.g(levels, k, &w));
        }
        acc
    }
}

/// A vector of the unreduced fixed points in the expanded coordinates of
/// `homotopy_fixed_points(cc.mixed, K)`.
pub fn total_to_expanded(cc: &CyclicCochains, fixed: &UComplex, k: i64, v: &TotalVector) -> SparseVec {
    let mut out = SparseVec::new();
    for (j, g, off) in fixed.layout(k) {
        for (&(jj, e, p), x) in v {
            if jj != j {
                continue;
            }
            let q = g - e as i64 - p as i64;
            if let Some(o) = cc.layout.cone_offset(e, p, q) {
                out = out.add(&x.shifted(off + o));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclic::cyclic_cochain_mixed;
    use chain::CochainComplex;
    use mixed::{homotopy_fixed_points, UCohomology};

    fn compare(pre: &PreCocyclicComplex, cap: usize, k: usize) {
        let levels = ReducedLevels::explicit(pre.clone()).unwrap();
        let red = ReducedFixedPoints::build(&levels, cap, k).unwrap();
        assert!(red.complex.verify().unwrap().passed);
        let cc = cyclic_cochain_mixed(pre, cap).unwrap();
        let full = homotopy_fixed_points(&cc.mixed, k).unwrap();
        let a = UCohomology::new(&full, None).unwrap().module;
        let b = UCohomology::new(&red.complex, Some((a.lo, a.hi))).unwrap().module;
        assert_eq!(a.dims, b.dims);
        for q in a.lo..=a.hi - 2 {
            assert_eq!(exactalg::rank(&a.u_at(q)).unwrap(), exactalg::rank(&b.u_at(q)).unwrap(), "u rank at {q}");
        }
    }

    #[test]
    fn included_classes_project_back() {
        let p = PreCocyclicComplex::constant_point(Domain::Rational, 6);
        let levels = ReducedLevels::explicit(p.clone()).unwrap();
        let red = ReducedFixedPoints::build(&levels, 6, 2).unwrap();
        let expanded = red.complex.expand().unwrap();
        let cc = cyclic_cochain_mixed(&p, 6).unwrap();
        let full = homotopy_fixed_points(&cc.mixed, 2).unwrap();
        let fexp = full.expand().unwrap();
        for k in [0i64, 2, 4] {
            let basis = chain::degree_basis(&expanded, k).unwrap();
            for z in &basis.reps {
                let big = red.include_cocycle(&levels, k, z);
                let zz = total_to_expanded(&cc, &full, k, &big);
                assert!(fexp.diff(k).mul_vec(&zz).is_zero(), "included class is not a cocycle");
                let back = red.project_cocycle(&levels, k, &big);
                assert_eq!(basis.coords(&back).unwrap(), basis.coords(z).unwrap());
            }
        }
    }

    #[test]
    fn identity_transfers_to_an_isomorphism() {
        let p = PreCocyclicComplex::constant_point(Domain::Rational, 6);
        let levels = ReducedLevels::explicit(p.clone()).unwrap();
        let red = ReducedFixedPoints::build(&levels, 6, 2).unwrap();
        let f = ReducedFixedPoints::transfer_map(&PreCocyclicMap::identity(&p), &levels, &red, &levels, &red);
        assert!(f.verify(&red.complex, &red.complex).unwrap().passed);
        let h = UCohomology::new(&red.complex, Some((0, 4))).unwrap();
        for (q, m) in h.induced(&f, &h).unwrap() {
            assert_eq!(exactalg::rank(&m).unwrap(), h.module.dim(q));
        }
    }

    #[test]
    fn point_reduction_matches_direct() {
        compare(&PreCocyclicComplex::constant_point(Domain::Rational, 6), 6, 2);
    }

    #[test]
    fn constant_tower_with_internal_differential() {
        let q = Domain::Rational;
        let mut c = CochainComplex::with_dims(q, [(-1, 2), (0, 2)]);
        c.set_diff(-1, SparseMatrix::from_rows_i64(q, &[vec![1, 0], vec![0, 0]])).unwrap();
        compare(&PreCocyclicComplex::constant(&c, 5), 5, 1);
    }
}
