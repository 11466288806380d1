//! Complexes of free modules over `K[u]/u^{K+1}` with `|u| = 2`.
//!
//! A [`UComplex`] is given by generators per degree and the components
//! `δ_j` of its differential `δ = Σ_j u^j δ_j`; `δ_j` raises the generator
//! degree by `1 - 2j`. Expanding in the `K`-basis `g u^j` gives an ordinary
//! cochain complex.

use std::collections::{BTreeMap, BTreeSet};

use chain::{verify_complex, CochainComplex, GradedMap, Report};
use exactalg::{Domain, SparseMatrix};

use crate::mixed::MixedComplex;
use crate::MixedError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UComplex {
    domain: Domain,
    kmax: usize,
    gens: BTreeMap<i64, usize>,
    /// `parts[j][q]: gens^q -> gens^{q+1-2j}`.
    parts: Vec<BTreeMap<i64, SparseMatrix>>,
}

impl UComplex {
    pub fn new(domain: Domain, kmax: usize) -> Self {
        UComplex { domain, kmax, gens: BTreeMap::new(), parts: Vec::new() }
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    /// Truncation order: series are taken modulo `u^{kmax+1}`.
    pub fn kmax(&self) -> usize {
        self.kmax
    }

    pub fn set_gens(&mut self, q: i64, n: usize) {
        if n == 0 {
            self.gens.remove(&q);
        } else {
            self.gens.insert(q, n);
        }
    }

    pub fn gens(&self, q: i64) -> usize {
        self.gens.get(&q).copied().unwrap_or(0)
    }

    pub fn gen_degrees(&self) -> Vec<i64> {
        self.gens.keys().copied().collect()
    }

    pub fn gen_dims(&self) -> &BTreeMap<i64, usize> {
        &self.gens
    }

    /// Installs `δ_j` on generators of degree `q`.
    pub fn set_part(&mut self, j: usize, q: i64, m: SparseMatrix) -> Result<(), MixedError> {
        let t = q + 1 - 2 * j as i64;
        if m.shape() != (self.gens(t), self.gens(q)) {
            return Err(MixedError::Shape(format!(
                "δ_{j} at degree {q} is {:?}, expected {:?}",
                m.shape(),
                (self.gens(t), self.gens(q))
            )));
        }
        while self.parts.len() <= j {
            self.parts.push(BTreeMap::new());
        }
        if m.is_zero() {
            self.parts[j].remove(&q);
        } else {
            self.parts[j].insert(q, m);
        }
        Ok(())
    }

    pub fn part(&self, j: usize, q: i64) -> SparseMatrix {
        let t = q + 1 - 2 * j as i64;
        self.parts
            .get(j)
            .and_then(|p| p.get(&q))
            .cloned()
            .unwrap_or_else(|| SparseMatrix::zeros(self.gens(t), self.gens(q), self.domain))
    }

    pub fn part_ref(&self, j: usize, q: i64) -> Option<&SparseMatrix> {
        self.parts.get(j).and_then(|p| p.get(&q))
    }

    /// Number of stored components `δ_0, δ_1, ...`.
    pub fn part_count(&self) -> usize {
        self.parts.len()
    }

    /// Lowest generator degree, the bottom of the stable window.
    pub fn min_degree(&self) -> Option<i64> {
        self.gens.keys().next().copied()
    }

    /// Degrees `[a, a + 2 kmax]` whose cohomology agrees with the
    /// untruncated complex.
    pub fn stable_window(&self) -> Option<(i64, i64)> {
        self.min_degree().map(|a| (a, a + 2 * self.kmax as i64))
    }

    /// Generator degree and offset of each `u^j` block in expanded degree `q`.
    pub fn layout(&self, q: i64) -> Vec<(usize, i64, usize)> {
        let mut out = Vec::new();
        let mut off = 0;
        for j in 0..=self.kmax {
            let g = q - 2 * j as i64;
            let n = self.gens(g);
            if n > 0 {
                out.push((j, g, off));
                off += n;
            }
        }
        out
    }

    pub fn expanded_dim(&self, q: i64) -> usize {
        (0..=self.kmax).map(|j| self.gens(q - 2 * j as i64)).sum()
    }

    /// Degrees where the expansion is nonzero.
    pub fn expanded_degrees(&self) -> Vec<i64> {
        let mut s = BTreeSet::new();
        for &g in self.gens.keys() {
            for j in 0..=self.kmax {
                s.insert(g + 2 * j as i64);
            }
        }
        s.into_iter().collect()
    }

    /// The cochain complex with basis `g u^j`, `j <= kmax`, ordered by `j`
    /// and then by generator index.
    pub fn expand(&self) -> Result<CochainComplex, MixedError> {
        let mut c = CochainComplex::new(self.domain);
        let degrees = self.expanded_degrees();
        for &q in &degrees {
            c.set_dim(q, self.expanded_dim(q));
        }
        for &q in &degrees {
            let src = self.layout(q);
            let tgt = self.layout(q + 1);
            let mut t = Vec::new();
            for &(js, gs, os) in &src {
                for &(jt, gt, ot) in &tgt {
                    if jt < js {
                        continue;
                    }
                    let k = jt - js;
                    debug_assert_eq!(gt, gs + 1 - 2 * k as i64);
                    if let Some(m) = self.part_ref(k, gs) {
                        for (i, jj, v) in m.triplets() {
                            t.push((ot + i, os + jj, v.clone()));
                        }
                    }
                }
            }
            let rows = self.expanded_dim(q + 1);
            let cols = self.expanded_dim(q);
            c.set_diff(q, SparseMatrix::from_triplets(rows, cols, self.domain, t))?;
        }
        Ok(c)
    }

    /// Multiplication by `u` on the expansion, as a map of shift 2.
    pub fn u_map(&self) -> GradedMap {
        let mut f = GradedMap::new(2);
        for q in self.expanded_degrees() {
            let src = self.layout(q);
            let tgt = self.layout(q + 2);
            let mut t = Vec::new();
            for &(js, gs, os) in &src {
                if let Some(&(_, _, ot)) = tgt.iter().find(|(jt, gt, _)| *jt == js + 1 && *gt == gs) {
                    for i in 0..self.gens(gs) {
                        t.push((ot + i, os + i, self.domain.one()));
                    }
                }
            }
            f.set(q, SparseMatrix::from_triplets(self.expanded_dim(q + 2), self.expanded_dim(q), self.domain, t));
        }
        f
    }

    /// Index in the expanded basis of degree `gen_degree + 2j` of the
    /// element `g u^j`, where `g` is generator `k`.
    pub fn expanded_index(&self, gen_degree: i64, k: usize, j: usize) -> Option<usize> {
        self.layout(gen_degree + 2 * j as i64)
            .iter()
            .find(|(jj, g, _)| *jj == j && *g == gen_degree)
            .map(|(_, _, o)| o + k)
    }

    /// Relabels degrees by `+s` and multiplies the differential by `(-1)^s`.
    pub fn raise(&self, s: i64) -> UComplex {
        let mut out = UComplex::new(self.domain, self.kmax);
        for (&q, &n) in &self.gens {
            out.gens.insert(q + s, n);
        }
        out.parts = self
            .parts
            .iter()
            .map(|p| p.iter().map(|(&q, m)| (q + s, m.signed(s))).collect())
            .collect();
        out
    }

    /// The same differential truncated at a smaller order.
    pub fn with_kmax(&self, kmax: usize) -> UComplex {
        let mut out = self.clone();
        out.kmax = kmax;
        out.parts.truncate(kmax + 1);
        out
    }

    pub fn verify(&self) -> Result<Report, MixedError> {
        let mut rep = Report::new("u-complex");
        rep.absorb(verify_complex(&self.expand()?));
        Ok(rep)
    }
}

/// `(M[[u]], δ = b + uB)` truncated modulo `u^{K+1}`.
pub fn homotopy_fixed_points(m: &MixedComplex, kmax: usize) -> Result<UComplex, MixedError> {
    let c = &m.complex;
    let mut u = UComplex::new(m.domain(), kmax);
    for (&q, &n) in c.dims() {
        u.set_gens(q, n);
    }
    for q in c.degrees() {
        u.set_part(0, q, c.diff(q))?;
        if kmax >= 1 {
            u.set_part(1, q, m.bop.get(q, c, c))?;
        }
    }
    Ok(u)
}

/// A `u`-linear map `f = Σ u^j f_j` of shift `shift`; `f_j` sends generators
/// of degree `q` to degree `q + shift - 2j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UMap {
    pub shift: i64,
    parts: Vec<BTreeMap<i64, SparseMatrix>>,
}

impl UMap {
    pub fn new(shift: i64) -> Self {
        UMap { shift, parts: Vec::new() }
    }

    pub fn identity(c: &UComplex) -> Self {
        let mut f = UMap::new(0);
        for (&q, &n) in c.gen_dims() {
            f.set_part(0, q, SparseMatrix::identity(n, c.domain()));
        }
        f
    }

    pub fn set_part(&mut self, j: usize, q: i64, m: SparseMatrix) {
        while self.parts.len() <= j {
            self.parts.push(BTreeMap::new());
        }
        if m.is_zero() {
            self.parts[j].remove(&q);
        } else {
            self.parts[j].insert(q, m);
        }
    }

    pub fn part_ref(&self, j: usize, q: i64) -> Option<&SparseMatrix> {
        self.parts.get(j).and_then(|p| p.get(&q))
    }

    pub fn part(&self, j: usize, q: i64, source: &UComplex, target: &UComplex) -> SparseMatrix {
        self.part_ref(j, q).cloned().unwrap_or_else(|| {
            SparseMatrix::zeros(target.gens(q + self.shift - 2 * j as i64), source.gens(q), source.domain())
        })
    }

    pub fn part_count(&self) -> usize {
        self.parts.len()
    }

    /// The same map between raised complexes (see [`UComplex::raise`]).
    pub fn raise(&self, s: i64) -> UMap {
        UMap { shift: self.shift, parts: self.parts.iter().map(|p| p.iter().map(|(&q, m)| (q + s, m.clone())).collect()).collect() }
    }

    /// `self ∘ first`, truncated at the order of `target`.
    pub fn compose(&self, first: &UMap, source: &UComplex, target: &UComplex) -> Result<UMap, MixedError> {
        let mut out = UMap::new(self.shift + first.shift);
        for q in source.gen_degrees() {
            for j in 0..=target.kmax() {
                let mut acc = SparseMatrix::zeros(target.gens(q + out.shift - 2 * j as i64), source.gens(q), source.domain());
                for a in 0..=j {
                    let (Some(f), Some(g)) = (first.part_ref(a, q), self.part_ref(j - a, q + first.shift - 2 * a as i64)) else { continue };
                    acc = acc.add(&g.mul(f)?)?;
                }
                out.set_part(j, q, acc);
            }
        }
        Ok(out)
    }

    /// The expanded map between expansions.
    pub fn expand(&self, source: &UComplex, target: &UComplex) -> GradedMap {
        let mut f = GradedMap::new(self.shift);
        for q in source.expanded_degrees() {
            let src = source.layout(q);
            let tgt = target.layout(q + self.shift);
            let mut t = Vec::new();
            for &(js, gs, os) in &src {
                for &(jt, _, ot) in &tgt {
                    if jt < js {
                        continue;
                    }
                    if let Some(m) = self.part_ref(jt - js, gs) {
                        for (i, jj, v) in m.triplets() {
                            t.push((ot + i, os + jj, v.clone()));
                        }
                    }
                }
            }
            f.set(
                q,
                SparseMatrix::from_triplets(target.expanded_dim(q + self.shift), source.expanded_dim(q), source.domain(), t),
            );
        }
        f
    }

    /// Chain-map law on the expansions.
    pub fn verify(&self, source: &UComplex, target: &UComplex) -> Result<Report, MixedError> {
        let (s, t) = (source.expand()?, target.expand()?);
        Ok(self.expand(source, target).verify(&s, &t))
    }
}

/// Cone of a shift-0 [`UMap`]: generators `target^q ⊕ source^{q+1}` and
/// `δ_j = [[δ_j^T, f_j], [0, -δ_j^S]]`.
pub fn ucone(f: &UMap, source: &UComplex, target: &UComplex) -> Result<UComplex, MixedError> {
    if f.shift != 0 {
        return Err(MixedError::Chain(chain::ChainError::NormalizeShift(f.shift)));
    }
    let kmax = source.kmax().min(target.kmax());
    let dom = source.domain();
    let mut degrees: BTreeSet<i64> = target.gen_degrees().into_iter().collect();
    degrees.extend(source.gen_degrees().into_iter().map(|q| q - 1));
    let mut out = UComplex::new(dom, kmax);
    for &q in &degrees {
        out.set_gens(q, target.gens(q) + source.gens(q + 1));
    }
    let jmax = source.part_count().max(target.part_count()).max(f.part_count()).min(kmax + 1);
    for j in 0..jmax {
        for &q in &degrees {
            let t = q + 1 - 2 * j as i64;
            let h = [target.gens(t), source.gens(t + 1)];
            let w = [target.gens(q), source.gens(q + 1)];
            let a = target.part(j, q);
            let b = f.part(j, q + 1, source, target);
            let c = source.part(j, q + 1).neg();
            out.set_part(j, q, SparseMatrix::block(dom, &h, &w, &[(0, 0, &a), (0, 1, &b), (1, 1, &c)])?)?;
        }
    }
    Ok(out)
}

/// Inclusion of the target into the cone and projection onto the source
/// (shift +1), both `u`-linear with a single component.
pub fn ucone_maps(source: &UComplex, target: &UComplex, cone: &UComplex) -> (UMap, UMap) {
    let dom = source.domain();
    let mut inc = UMap::new(0);
    let mut proj = UMap::new(1);
    for &q in cone.gen_dims().keys() {
        let w = [target.gens(q), source.gens(q + 1)];
        let id_t = SparseMatrix::identity(target.gens(q), dom);
        inc.set_part(0, q, SparseMatrix::block(dom, &w, &[target.gens(q)], &[(0, 0, &id_t)]).expect("block shapes"));
        let id_s = SparseMatrix::identity(source.gens(q + 1), dom);
        proj.set_part(0, q, SparseMatrix::block(dom, &[source.gens(q + 1)], &w, &[(0, 1, &id_s)]).expect("block shapes"));
    }
    (inc, proj)
}

#[cfg(test)]
mod tests {
    use super::*;
    use chain::cohomology;

    #[test]
    fn trivial_point_gives_polynomial_ring() {
        let m = MixedComplex::trivial(CochainComplex::concentrated(Domain::Rational, 0, 1));
        let u = homotopy_fixed_points(&m, 3).unwrap();
        let h = cohomology(&u.expand().unwrap()).unwrap().dims();
        assert_eq!(h, [(0, 1), (2, 1), (4, 1), (6, 1)].into_iter().collect());
    }

    #[test]
    fn two_line_model_keeps_only_degree_zero() {
        let q = Domain::Rational;
        let c = CochainComplex::with_dims(q, [(0, 1), (1, 1)]);
        let mut b = GradedMap::new(-1);
        b.set(1, SparseMatrix::identity(1, q));
        let u = homotopy_fixed_points(&MixedComplex::new(c, b), 3).unwrap();
        let (lo, hi) = u.stable_window().unwrap();
        let h = cohomology(&u.expand().unwrap()).unwrap();
        let in_window: BTreeMap<i64, usize> = h.dims().into_iter().filter(|(d, _)| *d >= lo && *d <= hi).collect();
        assert_eq!(in_window, [(0, 1)].into_iter().collect());
    }

    #[test]
    fn acyclic_input_gives_acyclic_output() {
        let q = Domain::Rational;
        let mut c = CochainComplex::with_dims(q, [(0, 1), (1, 1)]);
        c.set_diff(0, SparseMatrix::identity(1, q)).unwrap();
        let u = homotopy_fixed_points(&MixedComplex::trivial(c), 2).unwrap();
        assert!(cohomology(&u.expand().unwrap()).unwrap().dims().is_empty());
    }

    #[test]
    fn u_map_is_a_chain_map() {
        let m = MixedComplex::trivial(CochainComplex::with_dims(Domain::Rational, [(0, 1), (1, 2)]));
        let u = homotopy_fixed_points(&m, 2).unwrap();
        let e = u.expand().unwrap();
        assert!(u.u_map().verify(&e, &e).passed);
    }
}
