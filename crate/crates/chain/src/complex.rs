//! Finitely supported cochain complexes and graded maps between them.

use std::collections::BTreeMap;

use exactalg::{Domain, SparseMatrix};

use crate::report::Report;
use crate::ChainError;

/// A cochain complex with differentials `d^q: C^q -> C^{q+1}`. Degrees with
/// dimension zero are not stored; missing differentials are zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CochainComplex {
    domain: Domain,
    dims: BTreeMap<i64, usize>,
    diffs: BTreeMap<i64, SparseMatrix>,
}

impl CochainComplex {
    pub fn new(domain: Domain) -> Self {
        CochainComplex { domain, dims: BTreeMap::new(), diffs: BTreeMap::new() }
    }

    /// A complex with the given dimensions and zero differentials.
    pub fn with_dims(domain: Domain, dims: impl IntoIterator<Item = (i64, usize)>) -> Self {
        let mut c = Self::new(domain);
        for (q, n) in dims {
            c.set_dim(q, n);
        }
        c
    }

    /// A single space in one degree.
    pub fn concentrated(domain: Domain, q: i64, n: usize) -> Self {
        Self::with_dims(domain, [(q, n)])
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn set_dim(&mut self, q: i64, n: usize) {
        if n == 0 {
            self.dims.remove(&q);
        } else {
            self.dims.insert(q, n);
        }
        self.diffs.remove(&(q - 1));
        self.diffs.remove(&q);
    }

    /// Installs `d^q`, checking its shape against the stored dimensions.
    pub fn set_diff(&mut self, q: i64, d: SparseMatrix) -> Result<(), ChainError> {
        if d.shape() != (self.dim(q + 1), self.dim(q)) {
            return Err(ChainError::Shape(format!(
                "d^{q} is {}x{}, expected {}x{}",
                d.rows(),
                d.cols(),
                self.dim(q + 1),
                self.dim(q)
            )));
        }
        if d.domain() != self.domain {
            return Err(ChainError::DomainMismatch);
        }
        if d.is_zero() {
            self.diffs.remove(&q);
        } else {
            self.diffs.insert(q, d);
        }
        Ok(())
    }

    pub fn dim(&self, q: i64) -> usize {
        self.dims.get(&q).copied().unwrap_or(0)
    }

    /// The differential leaving degree `q`, zero when not stored.
    pub fn diff(&self, q: i64) -> SparseMatrix {
        match self.diffs.get(&q) {
            Some(d) => d.clone(),
            None => SparseMatrix::zeros(self.dim(q + 1), self.dim(q), self.domain),
        }
    }

    pub fn diff_ref(&self, q: i64) -> Option<&SparseMatrix> {
        self.diffs.get(&q)
    }

    /// Degrees with nonzero dimension, ascending.
    pub fn degrees(&self) -> Vec<i64> {
        self.dims.keys().copied().collect()
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.dims.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.dims.keys().next_back().copied()
    }

    pub fn total_dim(&self) -> usize {
        self.dims.values().sum()
    }

    pub fn dims(&self) -> &BTreeMap<i64, usize> {
        &self.dims
    }

    /// Reindexes so that the new degree `q` is the old degree `q + s`
    /// (the usual `C[s]`), with differentials multiplied by `(-1)^s`.
    pub fn shift(&self, s: i64) -> CochainComplex {
        let mut out = CochainComplex::new(self.domain);
        for (&q, &n) in &self.dims {
            out.dims.insert(q - s, n);
        }
        for (&q, d) in &self.diffs {
            out.diffs.insert(q - s, d.signed(s));
        }
        out
    }

    /// Direct sum; bases are concatenated with `self` first.
    pub fn direct_sum(&self, other: &CochainComplex) -> Result<CochainComplex, ChainError> {
        if self.domain != other.domain {
            return Err(ChainError::DomainMismatch);
        }
        let mut out = CochainComplex::new(self.domain);
        let degrees: std::collections::BTreeSet<i64> = self.dims.keys().chain(other.dims.keys()).copied().collect();
        for &q in &degrees {
            out.set_dim(q, self.dim(q) + other.dim(q));
        }
        for &q in &degrees {
            let h = [self.dim(q + 1), other.dim(q + 1)];
            let w = [self.dim(q), other.dim(q)];
            let (a, b) = (self.diff(q), other.diff(q));
            out.set_diff(q, SparseMatrix::block(self.domain, &h, &w, &[(0, 0, &a), (1, 1, &b)])?)?;
        }
        Ok(out)
    }

    /// Changes coefficients (reduction of integer complexes, mostly).
    pub fn change_domain(&self, target: Domain) -> Result<CochainComplex, ChainError> {
        let mut out = CochainComplex::new(target);
        out.dims = self.dims.clone();
        for (&q, d) in &self.diffs {
            let m = d.change_domain(target)?;
            if !m.is_zero() {
                out.diffs.insert(q, m);
            }
        }
        Ok(out)
    }

    /// Keeps the degrees in `[lo, hi]`, dropping differentials that leave
    /// the window (the brutal truncation).
    pub fn window(&self, lo: i64, hi: i64) -> CochainComplex {
        let mut out = CochainComplex::new(self.domain);
        for (&q, &n) in self.dims.range(lo..=hi) {
            out.dims.insert(q, n);
        }
        for (&q, d) in self.diffs.range(lo..hi) {
            out.diffs.insert(q, d.clone());
        }
        out
    }
}

/// Per-degree matrices `f^q: C^q -> D^{q + shift}` of a graded map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedMap {
    pub shift: i64,
    maps: BTreeMap<i64, SparseMatrix>,
}

impl GradedMap {
    pub fn new(shift: i64) -> Self {
        GradedMap { shift, maps: BTreeMap::new() }
    }

    pub fn identity(c: &CochainComplex) -> Self {
        let mut f = GradedMap::new(0);
        for (&q, &n) in c.dims() {
            f.maps.insert(q, SparseMatrix::identity(n, c.domain()));
        }
        f
    }

    /// `a` times the identity.
    pub fn scalar(c: &CochainComplex, a: i64) -> Self {
        let mut f = GradedMap::new(0);
        if a != 0 {
            for (&q, &n) in c.dims() {
                f.maps.insert(q, SparseMatrix::scalar_identity(n, &c.domain().from_i64(a)));
            }
        }
        f
    }

    pub fn set(&mut self, q: i64, m: SparseMatrix) {
        if m.is_zero() {
            self.maps.remove(&q);
        } else {
            self.maps.insert(q, m);
        }
    }

    /// The component leaving degree `q`, zero-filled to the right shape.
    pub fn get(&self, q: i64, source: &CochainComplex, target: &CochainComplex) -> SparseMatrix {
        match self.maps.get(&q) {
            Some(m) => m.clone(),
            None => SparseMatrix::zeros(target.dim(q + self.shift), source.dim(q), source.domain()),
        }
    }

    pub fn get_ref(&self, q: i64) -> Option<&SparseMatrix> {
        self.maps.get(&q)
    }

    pub fn components(&self) -> &BTreeMap<i64, SparseMatrix> {
        &self.maps
    }

    /// `self ∘ first`.
    pub fn compose(
        &self,
        first: &GradedMap,
        source: &CochainComplex,
        middle: &CochainComplex,
        target: &CochainComplex,
    ) -> Result<GradedMap, ChainError> {
        let mut out = GradedMap::new(first.shift + self.shift);
        for &q in source.dims().keys() {
            let a = first.get(q, source, middle);
            let b = self.get(q + first.shift, middle, target);
            out.set(q, b.mul(&a)?);
        }
        Ok(out)
    }

    pub fn add(&self, other: &GradedMap, source: &CochainComplex, target: &CochainComplex) -> Result<GradedMap, ChainError> {
        if self.shift != other.shift {
            return Err(ChainError::Shape("adding maps of different shifts".into()));
        }
        let mut out = GradedMap::new(self.shift);
        for &q in source.dims().keys() {
            out.set(q, self.get(q, source, target).add(&other.get(q, source, target))?);
        }
        Ok(out)
    }

    pub fn scale(&self, a: i64, domain: Domain) -> GradedMap {
        let s = domain.from_i64(a);
        let mut out = GradedMap::new(self.shift);
        for (&q, m) in &self.maps {
            out.set(q, m.scale(&s));
        }
        out
    }

    /// Shapes match and `d_D f = (-1)^shift f d_C` in every degree.
    pub fn verify(&self, source: &CochainComplex, target: &CochainComplex) -> Report {
        let mut rep = Report::new("chain map");
        for (&q, m) in &self.maps {
            if m.shape() != (target.dim(q + self.shift), source.dim(q)) {
                rep.fail(format!("component at degree {q} has shape {:?}", m.shape()));
                return rep;
            }
        }
        let degrees: std::collections::BTreeSet<i64> =
            source.dims().keys().flat_map(|&q| [q - 1, q]).collect();
        for q in degrees {
            let lhs = target.diff(q + self.shift).mul(&self.get(q, source, target));
            let rhs = self.get(q + 1, source, target).mul(&source.diff(q));
            match (lhs, rhs) {
                (Ok(l), Ok(r)) => {
                    if l != r.signed(self.shift) {
                        rep.fail(format!("chain-map law fails at degree {q}"));
                        return rep;
                    }
                }
                _ => {
                    rep.fail(format!("shape mismatch at degree {q}"));
                    return rep;
                }
            }
        }
        rep
    }
}

/// Checks `d^{q+1} d^q = 0` and the stored shapes.
pub fn verify_complex(c: &CochainComplex) -> Report {
    let mut rep = Report::new("cochain complex");
    for (&q, d) in &c.diffs {
        if d.shape() != (c.dim(q + 1), c.dim(q)) || d.domain() != c.domain() || !d.is_well_formed() {
            rep.fail(format!("differential at degree {q} is malformed"));
            return rep;
        }
    }
    for (&q, d) in &c.diffs {
        if let Some(next) = c.diffs.get(&(q + 1)) {
            match next.mul(d) {
                Ok(p) if p.is_zero() => {}
                _ => {
                    rep.fail(format!("d^{} d^{} is nonzero", q + 1, q));
                    return rep;
                }
            }
        }
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Domain {
        Domain::Rational
    }

    #[test]
    fn injected_square_fails_with_location() {
        let mut c = CochainComplex::with_dims(q(), [(0, 1), (1, 1), (2, 1)]);
        c.set_diff(0, SparseMatrix::identity(1, q())).unwrap();
        c.set_diff(1, SparseMatrix::identity(1, q())).unwrap();
        let r = verify_complex(&c);
        assert!(!r.passed);
        assert!(r.messages[0].contains("d^1 d^0"));
    }

    #[test]
    fn shape_is_checked() {
        let mut c = CochainComplex::with_dims(q(), [(0, 2), (1, 1)]);
        assert!(c.set_diff(0, SparseMatrix::identity(2, q())).is_err());
    }

    #[test]
    fn shift_moves_degrees_and_signs() {
        let mut c = CochainComplex::with_dims(q(), [(0, 1), (1, 1)]);
        c.set_diff(0, SparseMatrix::identity(1, q())).unwrap();
        let s = c.shift(1);
        assert_eq!(s.degrees(), vec![-1, 0]);
        assert_eq!(s.diff(-1), SparseMatrix::identity(1, q()).neg());
    }

    #[test]
    fn identity_is_a_chain_map() {
        let mut c = CochainComplex::with_dims(q(), [(0, 1), (1, 1)]);
        c.set_diff(0, SparseMatrix::identity(1, q())).unwrap();
        assert!(GradedMap::identity(&c).verify(&c, &c).passed);
        let mut bad = GradedMap::new(0);
        bad.set(0, SparseMatrix::identity(1, q()));
        assert!(!bad.verify(&c, &c).passed);
    }
}
