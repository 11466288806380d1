//! Maps of pre-cocyclic complexes and what they induce downstream.

use chain::{GradedMap, Report};
use exactalg::SparseMatrix;
use mixed::{MixedComplex, UMap};

use crate::complex::PreCocyclicComplex;
use crate::cyclic::CyclicCochains;
use crate::PrecyclicError;

/// Degree-0 chain maps `f_ℓ: C_ℓ -> D_ℓ` commuting with cofaces and `t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PreCocyclicMap {
    /// `levels[ℓ - 1]` acts on level `ℓ`.
    pub levels: Vec<GradedMap>,
}

impl PreCocyclicMap {
    pub fn identity(p: &PreCocyclicComplex) -> Self {
        PreCocyclicMap { levels: (1..=p.max_level()).map(|l| GradedMap::identity(p.complex(l))).collect() }
    }

    /// Exact check of every commutation law on the common levels.
    pub fn verify(&self, src: &PreCocyclicComplex, tgt: &PreCocyclicComplex) -> Report {
        let mut rep = Report::new("pre-cocyclic map");
        let top = src.max_level().min(tgt.max_level()).min(self.levels.len());
        let same = |a: &GradedMap, b: &GradedMap, s: &chain::CochainComplex, t: &chain::CochainComplex| {
            s.degrees().iter().all(|&q| a.get(q, s, t) == b.get(q, s, t))
        };
        for l in 1..=top {
            let (c, d) = (src.complex(l), tgt.complex(l));
            let f = &self.levels[l - 1];
            if !f.verify(c, d).passed {
                rep.fail(format!("level {l} is not a chain map"));
                return rep;
            }
            let a = f.compose(src.cyclic(l), c, c, d);
            let b = tgt.cyclic(l).compose(f, c, d, d);
            if !matches!((a, b), (Ok(a), Ok(b)) if same(&a, &b, c, d)) {
                rep.fail(format!("map does not commute with t at level {l}"));
                return rep;
            }
            if l < top {
                let (cu, du) = (src.complex(l + 1), tgt.complex(l + 1));
                for i in 0..=l {
                    let a = self.levels[l].compose(src.coface(l, i), c, cu, du);
                    let b = tgt.coface(l, i).compose(f, c, d, du);
                    if !matches!((a, b), (Ok(a), Ok(b)) if same(&a, &b, c, du)) {
                        rep.fail(format!("map does not commute with d_{i} at level {l}"));
                        return rep;
                    }
                }
            }
        }
        rep
    }

    /// `g ∘ self`.
    pub fn then(&self, g: &PreCocyclicMap, a: &PreCocyclicComplex, b: &PreCocyclicComplex, c: &PreCocyclicComplex) -> Result<PreCocyclicMap, PrecyclicError> {
        let top = self.levels.len().min(g.levels.len());
        let mut levels = Vec::with_capacity(top);
        for l in 1..=top {
            levels.push(g.levels[l - 1].compose(&self.levels[l - 1], a.complex(l), b.complex(l), c.complex(l))?);
        }
        Ok(PreCocyclicMap { levels })
    }

    /// The induced map of cyclic cochain mixed complexes (block diagonal on
    /// both cone summands).
    pub fn on_cyclic(&self, a: &CyclicCochains, b: &CyclicCochains) -> GradedMap {
        let dom = a.mixed.domain();
        let mut out = GradedMap::new(0);
        for k in a.mixed.complex.degrees() {
            let mut trip = Vec::new();
            for e in 0..2usize {
                let Some(list) = a.layout.blocks.get(&(k - e as i64)) else { continue };
                for &(p, q, _, _) in list {
                    let f = &self.levels[p];
                    let (Some(m), Some(so), Some(to)) = (f.get_ref(q), a.layout.cone_offset(e, p, q), b.layout.cone_offset(e, p, q)) else { continue };
                    for (r, c, v) in m.triplets() {
                        trip.push((to + r, so + c, v.clone()));
                    }
                }
            }
            out.set(k, SparseMatrix::from_triplets(b.mixed.complex.dim(k), a.mixed.complex.dim(k), dom, trip));
        }
        out
    }
}

/// The `u`-linear extension of a strict map of mixed complexes to the
/// homotopy fixed points.
pub fn fixed_point_map(f: &GradedMap, src: &MixedComplex, tgt: &MixedComplex) -> UMap {
    let mut u = UMap::new(0);
    for q in src.complex.degrees() {
        u.set_part(0, q, f.get(q, &src.complex, &tgt.complex));
    }
    u
}
