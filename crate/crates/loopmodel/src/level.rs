//! Truncated simplicial chains of one thickened level, and the chain maps
//! induced by maps of tuples.

use chain::{CochainComplex, GradedMap};
use exactalg::{Domain, Echelon, Rational, SparseMatrix, SparseVec};

use crate::graph::MetricGraph;
use crate::thicken::{thicken_flag_complex, FlagComplex};
use crate::tuples::{enumerate_loop_tuples, TupleSet};
use crate::LoopError;

/// Limits guarding the exponential state space.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    /// Tuples per level.
    pub tuples: usize,
    /// Simplices of any one dimension per level.
    pub simplices: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { tuples: crate::tuples::DEFAULT_STATE_CAP, simplices: 20_000_000 }
    }
}

/// Chains of a flag complex in degrees `-d..=0`, with degree `-d` replaced
/// by `C_d / B_d` (the good truncation at homological degree `d`). The
/// quotient has the non-pivot `d`-simplices of an echelon basis of `B_d`
/// as its basis.
#[derive(Clone, Debug)]
pub struct LevelChains {
    pub tuples: TupleSet,
    pub flag: FlagComplex,
    pub complex: CochainComplex,
    /// Truncation degree `d`.
    pub degree: usize,
    boundaries: Echelon,
    /// Quotient index of each `d`-simplex, `u32::MAX` on pivots.
    position: Vec<u32>,
    /// `d`-simplices forming the quotient basis.
    basis: Vec<u32>,
    /// Coefficient domain of `complex` (the echelon runs over `Q` when
    /// this is the integers).
    domain: Domain,
}

fn oriented(image: &mut [u32]) -> Option<i64> {
    // sort by insertion, tracking the permutation sign
    let mut sign = 1;
    for i in 1..image.len() {
        let mut j = i;
        while j > 0 && image[j - 1] > image[j] {
            image.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
        if j > 0 && image[j - 1] == image[j] {
            return None;
        }
    }
    Some(sign)
}

impl LevelChains {
    /// Enumerates, thickens up to dimension `top` and truncates at `d`.
    pub fn build(
        g: &MetricGraph,
        n_points: usize,
        level: usize,
        t: &Rational,
        top: usize,
        domain: Domain,
        caps: Caps,
    ) -> Result<Self, LoopError> {
        if top < g.dim + 1 {
            return Err(LoopError::TruncationUnsound { top, degree: g.dim });
        }
        let tuples = enumerate_loop_tuples(g, n_points, level, t, caps.tuples)?;
        let flag = thicken_flag_complex(g, &tuples, t, g.dim + 1, caps.simplices)?;
        Self::from_flag(tuples, flag, g.dim, domain)
    }

    /// Truncated chains of an explicit flag complex.
    /// Simplices above dimension `d` are dropped once `B_d` is known.
    pub fn from_flag(tuples: TupleSet, mut flag: FlagComplex, d: usize, domain: Domain) -> Result<Self, LoopError> {
        let field = if domain.is_field() { domain } else { Domain::Rational };
        let nd = flag.count(d);
        let mut boundaries = Echelon::new(nd, field, false)?;
        if d < flag.top() {
            for s in flag.simplices[d + 1].iter() {
                boundaries.insert_untracked(&boundary_of(&flag, d + 1, s, field)?);
            }
        }
        if !domain.is_field() && !boundaries.basis().iter().all(|v| v.entries().iter().all(|(_, a)| a.as_rational().is_some_and(|r| r.is_integer()))) {
            return Err(LoopError::NonIntegralTruncation);
        }
        flag.simplices.truncate(d + 1);
        let mut position = vec![u32::MAX; nd];
        let mut basis = Vec::new();
        for (i, p) in position.iter_mut().enumerate() {
            if !boundaries.is_pivot_row(i) {
                *p = basis.len() as u32;
                basis.push(i as u32);
            }
        }
        let mut complex = CochainComplex::new(domain);
        for k in 0..=d {
            complex.set_dim(-(k as i64), if k == d { basis.len() } else { flag.count(k) });
        }
        for k in 1..=d {
            let mut cols = Vec::new();
            let sources: Vec<usize> = if k == d { basis.iter().map(|&i| i as usize).collect() } else { (0..flag.count(k)).collect() };
            for i in sources {
                cols.push(boundary_of(&flag, k, flag.simplices[k].get(i), domain)?);
            }
            complex.set_diff(-(k as i64), SparseMatrix::from_columns(flag.count(k - 1), domain, cols))?;
        }
        Ok(LevelChains { tuples, flag, complex, degree: d, boundaries, position, basis, domain })
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    /// Class in `C_d / B_d` of a `d`-chain, in quotient coordinates.
    pub fn reduce_top(&self, v: &SparseVec) -> Result<SparseVec, LoopError> {
        let field_v = if self.domain.is_field() { v.clone() } else { change(v, Domain::Rational)? };
        let r = self.boundaries.reduce(&field_v).residual;
        let pairs = r.entries().iter().map(|(i, a)| (self.position[*i] as usize, a.clone())).collect();
        let out = SparseVec::from_sorted(pairs);
        if self.domain.is_field() {
            Ok(out)
        } else {
            change(&out, self.domain)
        }
    }

    /// The `d`-simplex behind quotient basis element `i`.
    pub fn top_basis(&self, i: usize) -> usize {
        self.basis[i] as usize
    }

    /// Chains of the simplices listed, as a vector of this complex in
    /// degree `-k` (reduced into the quotient when `k = d`).
    pub fn chain(&self, k: usize, terms: &[(Vec<u32>, i64)]) -> Result<SparseVec, LoopError> {
        let mut pairs = Vec::new();
        for (s, c) in terms {
            let mut s = s.clone();
            let Some(sign) = oriented(&mut s) else { continue };
            let i = self.flag.simplices[k]
                .index_of(&s)
                .ok_or_else(|| LoopError::InvalidParameters(format!("{s:?} is not a simplex")))?;
            pairs.push((i, self.domain.from_i64(sign * c)));
        }
        let v = SparseVec::from_pairs(pairs);
        if k == self.degree {
            self.reduce_top(&v)
        } else {
            Ok(v)
        }
    }

    /// `φ_*: C(self) -> C(target)` for a map of tuples `φ`, given on tuple
    /// indices. Simplices collapsing under `φ` map to zero.
    pub fn pushforward(&self, target: &LevelChains, phi: &dyn Fn(usize) -> usize) -> Result<GradedMap, LoopError> {
        let dom = self.domain;
        let mut out = GradedMap::new(0);
        let images: Vec<u32> = (0..self.tuples.len()).map(|i| phi(i) as u32).collect();
        for k in 0..=self.degree {
            let q = -(k as i64);
            let sources: Vec<usize> = if k == self.degree { self.basis.iter().map(|&i| i as usize).collect() } else { (0..self.flag.count(k)).collect() };
            let mut cols = Vec::with_capacity(sources.len());
            let mut image = vec![0u32; k + 1];
            for i in sources {
                for (slot, &v) in image.iter_mut().zip(self.flag.simplices[k].get(i)) {
                    *slot = images[v as usize];
                }
                let col = match oriented(&mut image) {
                    None => SparseVec::new(),
                    Some(sign) => {
                        let j = target.flag.simplices[k]
                            .index_of(&image)
                            .ok_or_else(|| LoopError::InvalidParameters("tuple map is not simplicial".into()))?;
                        let v = SparseVec::from_pairs(vec![(j, dom.from_i64(sign))]);
                        if k == self.degree {
                            target.reduce_top(&v)?
                        } else {
                            v
                        }
                    }
                };
                cols.push(col);
            }
            out.set(q, SparseMatrix::from_columns(target.complex.dim(q), dom, cols));
        }
        Ok(out)
    }
}

fn change(v: &SparseVec, target: Domain) -> Result<SparseVec, LoopError> {
    let pairs = v.entries().iter().map(|(i, a)| Ok((*i, a.change_domain(target)?))).collect::<Result<Vec<_>, exactalg::ExactError>>()?;
    Ok(SparseVec::from_sorted(pairs))
}

/// `∂` of the `k`-simplex `s` in `(k-1)`-simplex coordinates.
fn boundary_of(flag: &FlagComplex, k: usize, s: &[u32], dom: Domain) -> Result<SparseVec, LoopError> {
    let mut pairs = Vec::with_capacity(k + 1);
    let mut face = Vec::with_capacity(k);
    for drop in 0..=k {
        face.clear();
        face.extend(s.iter().enumerate().filter(|(j, _)| *j != drop).map(|(_, v)| *v));
        let i = flag.simplices[k - 1]
            .index_of(&face)
            .ok_or_else(|| LoopError::InvalidParameters(format!("face {face:?} missing")))?;
        pairs.push((i, dom.from_i64(if drop % 2 == 0 { 1 } else { -1 })));
    }
    Ok(SparseVec::from_pairs(pairs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_cycle_graph;
    use chain::{cohomology, verify_complex};

    #[test]
    fn level_one_of_the_hexagon() {
        let g = build_cycle_graph(6, Rational::from_int(6)).unwrap();
        for t in [0, 3] {
            for dom in [Domain::Rational, Domain::Integer, Domain::prime(3).unwrap()] {
                let l = LevelChains::build(&g, 3, 1, &Rational::from_int(t), 2, dom, Caps::default()).unwrap();
                assert!(verify_complex(&l.complex).passed);
                let h = cohomology(&l.complex).unwrap();
                assert_eq!(h.dims(), [(-1, 1), (0, 1)].into_iter().collect());
                assert!(h.is_torsion_free());
            }
        }
    }

    #[test]
    fn rotation_is_a_chain_map() {
        let g = build_cycle_graph(6, Rational::from_int(6)).unwrap();
        let l = LevelChains::build(&g, 3, 2, &Rational::from_int(3), 2, Domain::Rational, Caps::default()).unwrap();
        let w = l.tuples.width();
        let rot = |i: usize| {
            let x = l.tuples.get(i);
            let y: Vec<u32> = (0..w).map(|k| x[(k + 3) % w]).collect();
            l.tuples.index_of(&y).unwrap()
        };
        let f = l.pushforward(&l, &rot).unwrap();
        assert!(f.verify(&l.complex, &l.complex).passed);
    }

    #[test]
    fn small_top_is_unsound() {
        let g = build_cycle_graph(6, Rational::from_int(6)).unwrap();
        let e = LevelChains::build(&g, 3, 1, &Rational::zero(), 1, Domain::Rational, Caps::default()).unwrap_err();
        assert!(e.to_string().contains("truncation unsound"));
    }
}
