//! Totalizations, the cone of `1 - t`, and the normalized variant.

use std::collections::BTreeMap;

use chain::{CochainComplex, GradedMap};
use exactalg::{Domain, SparseMatrix};
use mixed::{truncate_above, verify_mixed, MixedComplex};

use crate::complex::{validate_relations, PreCocyclicComplex};
use crate::operators::{alternating, norm, one_minus_t};
use crate::PrecyclicError;

/// Block structure of `Tot^k = ⊕_p C_{p+1}^{k-p}` for `p < L`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TotLayout {
    pub level_cap: usize,
    /// Per total degree: `(p, q, offset, dim)` with `p` ascending.
    pub blocks: BTreeMap<i64, Vec<(usize, i64, usize, usize)>>,
}

impl TotLayout {
    pub fn new(p: &PreCocyclicComplex, level_cap: usize) -> Self {
        let mut blocks: BTreeMap<i64, Vec<(usize, i64, usize, usize)>> = BTreeMap::new();
        for pp in 0..level_cap {
            for (&q, &n) in p.complex(pp + 1).dims() {
                blocks.entry(pp as i64 + q).or_default().push((pp, q, 0, n));
            }
        }
        for list in blocks.values_mut() {
            list.sort_unstable();
            let mut off = 0;
            for b in list.iter_mut() {
                b.2 = off;
                off += b.3;
            }
        }
        TotLayout { level_cap, blocks }
    }

    pub fn dim(&self, k: i64) -> usize {
        self.blocks.get(&k).map_or(0, |l| l.iter().map(|b| b.3).sum())
    }

    /// Offset of the block `(p, q)` inside `Tot^{p+q}`.
    pub fn offset(&self, p: usize, q: i64) -> Option<usize> {
        self.blocks.get(&(p as i64 + q))?.iter().find(|b| b.0 == p && b.1 == q).map(|b| b.2)
    }

    /// Offset of `(e, p, q)` in `Cone^{e+p+q} = Tot^{e+p+q} ⊕ Tot^{p+q}`.
    pub fn cone_offset(&self, e: usize, p: usize, q: i64) -> Option<usize> {
        let k = p as i64 + q + e as i64;
        let base = if e == 0 { 0 } else { self.dim(k) };
        self.offset(p, q).map(|o| o + base)
    }
}

/// `∂` with sign `(-1)^{p+1}` on the block `p`, plus a horizontal map per
/// level; `horizontal(l)` sends level `l` to level `l + 1`.
fn totalize(
    p: &PreCocyclicComplex,
    lay: &TotLayout,
    horizontal: &dyn Fn(usize) -> GradedMap,
) -> Result<CochainComplex, PrecyclicError> {
    let dom = p.domain();
    let mut c = CochainComplex::new(dom);
    for &k in lay.blocks.keys() {
        c.set_dim(k, lay.dim(k));
    }
    let hmaps: Vec<GradedMap> = (1..lay.level_cap).map(horizontal).collect();
    for (&k, list) in &lay.blocks {
        let mut trip = Vec::new();
        for &(pp, q, off, _) in list {
            let lc = p.complex(pp + 1);
            let sign = if pp % 2 == 0 { -1 } else { 1 };
            if let (Some(d), Some(to)) = (lc.diff_ref(q), lay.offset(pp, q + 1)) {
                for (r, cc, v) in d.triplets() {
                    trip.push((to + r, off + cc, if sign < 0 { v.neg() } else { v.clone() }));
                }
            }
            if pp + 1 < lay.level_cap {
                if let (Some(h), Some(to)) = (hmaps[pp].get_ref(q), lay.offset(pp + 1, q)) {
                    for (r, cc, v) in h.triplets() {
                        trip.push((to + r, off + cc, v.clone()));
                    }
                }
            }
        }
        c.set_diff(k, SparseMatrix::from_triplets(lay.dim(k + 1), lay.dim(k), dom, trip))?;
    }
    Ok(c)
}

/// A level-preserving operator on `Tot`, one graded map per level, shifted
/// by `dp` in `p` (`dp = -1` lowers the level).
fn levelwise(p: &PreCocyclicComplex, lay: &TotLayout, dp: i64, op: &dyn Fn(usize) -> GradedMap) -> GradedMap {
    let dom = p.domain();
    let ops: Vec<GradedMap> = (1..=lay.level_cap).map(op).collect();
    let mut out = GradedMap::new(dp);
    for (&k, list) in &lay.blocks {
        let mut trip = Vec::new();
        for &(pp, q, off, _) in list {
            let target = pp as i64 + dp;
            if target < 0 || target >= lay.level_cap as i64 {
                continue;
            }
            let (Some(m), Some(to)) = (ops[pp].get_ref(q), lay.offset(target as usize, q)) else { continue };
            for (r, cc, v) in m.triplets() {
                trip.push((to + r, off + cc, v.clone()));
            }
        }
        out.set(k, SparseMatrix::from_triplets(lay.dim(k + dp), lay.dim(k), dom, trip));
    }
    out
}

/// The cyclic cochain mixed complex with its block layout.
#[derive(Clone, Debug)]
pub struct CyclicCochains {
    pub mixed: MixedComplex,
    pub layout: TotLayout,
}

/// `Cone^k = Tot^k ⊕ Tot^{k-1}` with `b̄ = [[b, 0], [1 - t, -b']]` and
/// `B̄ = [[0, B_raw], [0, 0]]`, levels `1..=L` (horizontal degrees `p < L`).
pub fn cyclic_cochain_mixed(p: &PreCocyclicComplex, level_cap: usize) -> Result<CyclicCochains, PrecyclicError> {
    let rep = validate_relations(p);
    if !rep.passed {
        return Err(PrecyclicError::NotPreCocyclic(rep.messages.join("; ")));
    }
    cyclic_cochain_mixed_unchecked(p, level_cap)
}

pub(crate) fn cyclic_cochain_mixed_unchecked(p: &PreCocyclicComplex, level_cap: usize) -> Result<CyclicCochains, PrecyclicError> {
    if level_cap == 0 || level_cap > p.max_level() {
        return Err(PrecyclicError::LevelOverflow(level_cap, p.max_level()));
    }
    let dom = p.domain();
    let lay = TotLayout::new(p, level_cap);
    let tb = totalize(p, &lay, &|l| alternating(p, l, l + 1))?;
    let tbp = totalize(p, &lay, &|l| alternating(p, l, l))?;
    let omt = levelwise(p, &lay, 0, &|l| one_minus_t(p, l));
    let nrm = levelwise(p, &lay, 0, &|l| norm(p, l));
    let mut cone = CochainComplex::new(dom);
    let degrees: Vec<i64> = lay.blocks.keys().flat_map(|&k| [k, k + 1]).collect();
    for &k in &degrees {
        cone.set_dim(k, lay.dim(k) + lay.dim(k - 1));
    }
    let mut bop = GradedMap::new(-1);
    for k in cone.degrees() {
        let h = [lay.dim(k + 1), lay.dim(k)];
        let w = [lay.dim(k), lay.dim(k - 1)];
        let b = tb.diff(k);
        let om = omt.get(k, &tb, &tb);
        let bp = tbp.diff(k - 1).neg();
        cone.set_diff(k, SparseMatrix::block(dom, &h, &w, &[(0, 0, &b), (1, 0, &om), (1, 1, &bp)])?)?;
        let hb = [lay.dim(k - 1), lay.dim(k - 2)];
        let nm = nrm.get(k - 1, &tb, &tb);
        bop.set(k, SparseMatrix::block(dom, &hb, &w, &[(0, 1, &nm)])?);
    }
    Ok(CyclicCochains { mixed: MixedComplex::new(cone, bop), layout: lay })
}

/// Extra degeneracies `s: C_ℓ -> C_{ℓ-1}` for `ℓ ≥ 2` (the map on level 1
/// is zero), with `d's + sd' = 1` on every level.
#[derive(Clone, Debug)]
pub struct DegeneracyData {
    /// `s[l - 2]` leaves level `l`.
    pub s: Vec<GradedMap>,
}

impl DegeneracyData {
    /// `s = 1` on every level of a constant pre-cocyclic complex.
    pub fn constant(p: &PreCocyclicComplex) -> Self {
        DegeneracyData { s: (2..=p.max_level()).map(|l| GradedMap::identity(p.complex(l))).collect() }
    }

    fn at(&self, l: usize) -> Option<&GradedMap> {
        l.checked_sub(2).and_then(|i| self.s.get(i))
    }

    /// Checks chain-map laws and `d' s + s d' = 1` on levels `1..top`.
    pub fn validate(&self, p: &PreCocyclicComplex, top: usize) -> Result<(), PrecyclicError> {
        let bad = |m: String| Err(PrecyclicError::DegeneracyInvalid(m));
        for l in 2..=top.min(p.max_level()) {
            match self.at(l) {
                Some(s) if s.shift == 0 && s.verify(p.complex(l), p.complex(l - 1)).passed => {}
                Some(_) => return bad(format!("s on level {l} is not a chain map")),
                None => return bad(format!("missing degeneracy on level {l}")),
            }
        }
        for m in 1..top.min(p.max_level()) {
            let c = p.complex(m);
            let up = p.complex(m + 1);
            let dp_up = alternating(p, m, m);
            let s_up = self.at(m + 1).expect("checked above");
            let right = s_up.compose(&dp_up, c, up, c)?;
            let total = if m >= 2 {
                let left = alternating(p, m - 1, m - 1).compose(self.at(m).expect("checked"), c, p.complex(m - 1), c)?;
                left.add(&right, c, c)?
            } else {
                right
            };
            for q in c.degrees() {
                if total.get(q, c, c) != SparseMatrix::identity(c.dim(q), p.domain()) {
                    return bad(format!("d's + sd' differs from the identity on level {m}, degree {q}"));
                }
            }
        }
        Ok(())
    }
}

/// `(Tot(N), b, B = B_raw s (1 - t))` over levels `1..=L`, cut by the good
/// truncation at the last total degree unaffected by the level cap.
pub fn normalized_mixed(p: &PreCocyclicComplex, s: Option<&DegeneracyData>, level_cap: usize) -> Result<MixedComplex, PrecyclicError> {
    let s = s.ok_or_else(|| PrecyclicError::DegeneracyInvalid("no degeneracies supplied".into()))?;
    let rep = validate_relations(p);
    if !rep.passed {
        return Err(PrecyclicError::NotPreCocyclic(rep.messages.join("; ")));
    }
    if level_cap == 0 || level_cap > p.max_level() {
        return Err(PrecyclicError::LevelOverflow(level_cap, p.max_level()));
    }
    s.validate(p, level_cap)?;
    let lay = TotLayout::new(p, level_cap);
    let tb = totalize(p, &lay, &|l| alternating(p, l, l + 1))?;
    // s (1 - t) on level l + 1 lands on level l; then the norm of level l
    let ops = |l: usize| -> GradedMap {
        if l == 1 {
            return GradedMap::new(0);
        }
        let (c, lo) = (p.complex(l), p.complex(l - 1));
        let st = s.at(l).expect("validated").compose(&one_minus_t(p, l), c, c, lo).expect("shapes");
        norm(p, l - 1).compose(&st, c, lo, lo).expect("shapes")
    };
    let mut bop = levelwise(p, &lay, -1, &ops);
    bop.shift = -1;
    let qmin = (1..=level_cap).filter_map(|l| p.complex(l).min_degree()).min().unwrap_or(0);
    let top = level_cap as i64 - 2 + qmin.min(0);
    let m = MixedComplex::new(tb, bop);
    let t = truncate_above(&m, top)?;
    let rep = verify_mixed(&t);
    if !rep.passed {
        return Err(PrecyclicError::DegeneracyInvalid(rep.messages.join("; ")));
    }
    Ok(t)
}

/// The level-`ℓ` complex with `σ = t` on it.
pub fn restrict_to_zl(p: &PreCocyclicComplex, ell: usize) -> Result<(CochainComplex, GradedMap), PrecyclicError> {
    let lev = p.level(ell)?;
    let c = &lev.complex;
    let dom: Domain = p.domain();
    for q in c.degrees() {
        let t = lev.cyclic.get(q, c, c);
        let mut pow = SparseMatrix::identity(c.dim(q), dom);
        for _ in 0..ell {
            pow = t.mul(&pow)?;
        }
        if pow != SparseMatrix::identity(c.dim(q), dom) {
            return Err(PrecyclicError::CyclicityViolated(ell));
        }
    }
    Ok((c.clone(), lev.cyclic.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use mixed::{homotopy_fixed_points, UCohomology};

    fn q() -> Domain {
        Domain::Rational
    }

    fn fixed_point_module(m: &MixedComplex, k: usize, level_cap: usize) -> mixed::UModule {
        let top = (2 * k).min(level_cap - 2) as i64;
        UCohomology::new(&homotopy_fixed_points(m, k).unwrap(), Some((0, top))).unwrap().module
    }

    #[test]
    fn point_cone_is_mixed_and_polynomial() {
        let p = PreCocyclicComplex::constant_point(q(), 6);
        let cc = cyclic_cochain_mixed(&p, 6).unwrap();
        assert!(verify_mixed(&cc.mixed).passed);
        let md = fixed_point_module(&cc.mixed, 2, 6);
        for k in 0..=4 {
            assert_eq!(md.dim(k), usize::from(k % 2 == 0), "degree {k}");
        }
        for k in [0, 2] {
            assert_eq!(exactalg::rank(&md.u_at(k)).unwrap(), 1);
        }
    }

    #[test]
    fn single_level_is_cohomology_twice() {
        // on level 1, t = 1, so the cone splits as Tot ⊕ Tot[-1]
        let mut c = CochainComplex::with_dims(q(), [(0, 1), (1, 2)]);
        c.set_diff(0, SparseMatrix::from_rows_i64(q(), &[vec![1], vec![1]])).unwrap();
        let p = PreCocyclicComplex::constant(&c, 1);
        let cc = cyclic_cochain_mixed(&p, 1).unwrap();
        let h = chain::cohomology_dims(&cc.mixed.complex).unwrap();
        assert_eq!(h, BTreeMap::from([(1, 1), (2, 1)]));
    }

    #[test]
    fn normalized_agrees_with_cone_on_point() {
        let p = PreCocyclicComplex::constant_point(q(), 8);
        let s = DegeneracyData::constant(&p);
        let nm = normalized_mixed(&p, Some(&s), 8).unwrap();
        let cc = cyclic_cochain_mixed(&p, 8).unwrap();
        let a = fixed_point_module(&nm, 3, 8);
        let b = fixed_point_module(&cc.mixed, 3, 8);
        assert_eq!(a.dims, b.dims);
        assert_eq!(a.nonzero_dims(), BTreeMap::from([(0, 1), (2, 1), (4, 1), (6, 1)]));
    }

    #[test]
    fn missing_degeneracies() {
        let p = PreCocyclicComplex::constant_point(q(), 4);
        assert!(matches!(normalized_mixed(&p, None, 4), Err(PrecyclicError::DegeneracyInvalid(_))));
        let short = DegeneracyData { s: vec![] };
        assert!(matches!(normalized_mixed(&p, Some(&short), 4), Err(PrecyclicError::DegeneracyInvalid(_))));
    }

    #[test]
    fn zl_restriction_signs() {
        let p = PreCocyclicComplex::constant_point(q(), 4);
        let (c, s) = restrict_to_zl(&p, 3).unwrap();
        assert_eq!(s, GradedMap::identity(&c));
        let (c, s) = restrict_to_zl(&p, 2).unwrap();
        assert_eq!(s, GradedMap::scalar(&c, -1));
    }
}
