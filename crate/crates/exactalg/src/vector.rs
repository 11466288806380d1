//! Sparse vectors with sorted, strictly nonzero entries.

use crate::scalar::{Domain, Scalar};

/// A sparse vector: entries sorted by index, no stored zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct SparseVec {
    entries: Vec<(usize, Scalar)>,
}

impl SparseVec {
    pub fn new() -> Self {
        SparseVec { entries: Vec::new() }
    }

    /// Builds from unsorted pairs, summing repeated indices and dropping zeros.
    pub fn from_pairs(mut pairs: Vec<(usize, Scalar)>) -> Self {
        pairs.sort_by_key(|(i, _)| *i);
        let mut entries: Vec<(usize, Scalar)> = Vec::with_capacity(pairs.len());
        for (i, v) in pairs {
            match entries.last_mut() {
                Some((j, w)) if *j == i => *w = w.add(&v),
                _ => entries.push((i, v)),
            }
        }
        entries.retain(|(_, v)| !v.is_zero());
        SparseVec { entries }
    }

    /// Builds from pairs already sorted by strictly increasing index.
    pub fn from_sorted(entries: Vec<(usize, Scalar)>) -> Self {
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        let entries = entries.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        SparseVec { entries }
    }

    pub fn unit(i: usize, domain: Domain) -> Self {
        SparseVec { entries: vec![(i, domain.one())] }
    }

    pub fn from_dense(values: &[Scalar]) -> Self {
        let entries = values
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(i, v)| (i, v.clone()))
            .collect();
        SparseVec { entries }
    }

    pub fn to_dense(&self, len: usize, domain: Domain) -> Vec<Scalar> {
        let mut out = vec![domain.zero(); len];
        for (i, v) in &self.entries {
            out[*i] = v.clone();
        }
        out
    }

    pub fn entries(&self) -> &[(usize, Scalar)] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<(usize, Scalar)> {
        self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    /// Largest index carrying a nonzero entry.
    pub fn last_index(&self) -> Option<usize> {
        self.entries.last().map(|(i, _)| *i)
    }

    pub fn get(&self, i: usize) -> Option<&Scalar> {
        self.entries
            .binary_search_by_key(&i, |(j, _)| *j)
            .ok()
            .map(|k| &self.entries[k].1)
    }

    pub fn scale(&self, a: &Scalar) -> SparseVec {
        if a.is_zero() {
            return SparseVec::new();
        }
        SparseVec::from_sorted(self.entries.iter().map(|(i, v)| (*i, v.mul(a))).collect())
    }

    pub fn neg(&self) -> SparseVec {
        SparseVec { entries: self.entries.iter().map(|(i, v)| (*i, v.neg())).collect() }
    }

    /// Returns `self + a * x`.
    pub fn axpy(&self, a: &Scalar, x: &SparseVec) -> SparseVec {
        if a.is_zero() || x.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.entries.len() + x.entries.len());
        let (mut p, mut q) = (0, 0);
        let (s, t) = (&self.entries, &x.entries);
        while p < s.len() || q < t.len() {
            if q == t.len() || (p < s.len() && s[p].0 < t[q].0) {
                out.push(s[p].clone());
                p += 1;
            } else if p == s.len() || t[q].0 < s[p].0 {
                out.push((t[q].0, t[q].1.mul(a)));
                q += 1;
            } else {
                let v = s[p].1.add(&t[q].1.mul(a));
                if !v.is_zero() {
                    out.push((s[p].0, v));
                }
                p += 1;
                q += 1;
            }
        }
        SparseVec { entries: out }
    }

    pub fn add(&self, x: &SparseVec) -> SparseVec {
        match x.entries.first() {
            None => self.clone(),
            Some((_, v)) => self.axpy(&v.domain().one(), x),
        }
    }

    pub fn sub(&self, x: &SparseVec) -> SparseVec {
        match x.entries.first() {
            None => self.clone(),
            Some((_, v)) => self.axpy(&v.domain().one().neg(), x),
        }
    }

    pub fn dot(&self, x: &SparseVec, domain: Domain) -> Scalar {
        let mut acc = domain.zero();
        let (mut p, mut q) = (0, 0);
        while p < self.entries.len() && q < x.entries.len() {
            let (i, j) = (self.entries[p].0, x.entries[q].0);
            if i < j {
                p += 1;
            } else if j < i {
                q += 1;
            } else {
                acc = acc.add(&self.entries[p].1.mul(&x.entries[q].1));
                p += 1;
                q += 1;
            }
        }
        acc
    }

    /// Re-indexes every entry by `offset`.
    pub fn shifted(&self, offset: usize) -> SparseVec {
        SparseVec { entries: self.entries.iter().map(|(i, v)| (i + offset, v.clone())).collect() }
    }

    /// Keeps entries with index in `[lo, hi)`, re-indexed to start at zero.
    pub fn window(&self, lo: usize, hi: usize) -> SparseVec {
        SparseVec {
            entries: self
                .entries
                .iter()
                .filter(|(i, _)| *i >= lo && *i < hi)
                .map(|(i, v)| (i - lo, v.clone()))
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn axpy_cancels() {
        let q = Domain::Rational;
        let x = SparseVec::from_pairs(vec![(0, q.from_i64(1)), (3, q.from_i64(2))]);
        let y = SparseVec::from_pairs(vec![(3, q.from_i64(4)), (5, q.from_i64(1))]);
        let z = y.axpy(&q.from_i64(-2), &x);
        assert_eq!(z, SparseVec::from_pairs(vec![(0, q.from_i64(-2)), (5, q.from_i64(1))]));
    }

    #[test]
    fn from_pairs_merges_duplicates() {
        let q = Domain::Rational;
        let v = SparseVec::from_pairs(vec![(2, q.from_i64(1)), (1, q.from_i64(3)), (2, q.from_i64(-1))]);
        assert_eq!(v.entries(), &[(1, q.from_i64(3))]);
    }
}
