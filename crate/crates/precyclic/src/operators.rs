//! Alternating coface sums and the norm operator on one level.

use chain::{CochainComplex, GradedMap, Report};
use exactalg::SparseMatrix;

use crate::complex::PreCocyclicComplex;
use crate::PrecyclicError;

/// Operators on level `m`: `d = Σ_{i<m} (-1)^i d_i` and
/// `d' = Σ_{i<m-1} (-1)^i d_i` from level `m - 1` (zero when `m = 1`), and
/// `B_raw = 1 + t + ... + t^{m-1}` on level `m`.
#[derive(Clone, Debug)]
pub struct HochschildOperators {
    pub level: usize,
    pub d: GradedMap,
    pub d_prime: GradedMap,
    pub norm: GradedMap,
    /// `d² = 0`, `d'² = 0` into level `m + 1` and `(1 - t) d = d' (1 - t)`.
    pub report: Report,
}

/// Signed sum of the cofaces `d_0..d_{count-1}` leaving level `l`.
pub(crate) fn alternating(p: &PreCocyclicComplex, l: usize, count: usize) -> GradedMap {
    let src = p.complex(l);
    let tgt = p.complex(l + 1);
    let mut out = GradedMap::new(0);
    for q in src.degrees() {
        let mut m = SparseMatrix::zeros(tgt.dim(q), src.dim(q), src.domain());
        for i in 0..count {
            let di = p.coface(l, i).get(q, src, tgt);
            m = if i % 2 == 0 { m.add(&di) } else { m.sub(&di) }.expect("coface shapes");
        }
        out.set(q, m);
    }
    out
}

/// `1 + t + ... + t^{l-1}` on level `l`.
pub(crate) fn norm(p: &PreCocyclicComplex, l: usize) -> GradedMap {
    let c = p.complex(l);
    let mut out = GradedMap::new(0);
    for q in c.degrees() {
        let t = p.cyclic(l).get(q, c, c);
        let mut pow = SparseMatrix::identity(c.dim(q), c.domain());
        let mut sum = SparseMatrix::zeros(c.dim(q), c.dim(q), c.domain());
        for _ in 0..l {
            sum = sum.add(&pow).expect("square");
            pow = t.mul(&pow).expect("square");
        }
        out.set(q, sum);
    }
    out
}

/// `1 - t` on level `l`.
pub(crate) fn one_minus_t(p: &PreCocyclicComplex, l: usize) -> GradedMap {
    let c = p.complex(l);
    let mut out = GradedMap::new(0);
    for q in c.degrees() {
        let id = SparseMatrix::identity(c.dim(q), c.domain());
        out.set(q, id.sub(&p.cyclic(l).get(q, c, c)).expect("square"));
    }
    out
}

fn is_zero_composite(a: &GradedMap, b: &GradedMap, src: &CochainComplex, mid: &CochainComplex, tgt: &CochainComplex) -> bool {
    a.compose(b, src, mid, tgt).map(|m| m.components().is_empty()).unwrap_or(false)
}

pub fn hochschild_operators(p: &PreCocyclicComplex, m: usize) -> Result<HochschildOperators, PrecyclicError> {
    if m == 0 || m > p.max_level() {
        return Err(PrecyclicError::LevelOverflow(m, p.max_level()));
    }
    let mut report = Report::new(format!("hochschild operators at level {m}"));
    let (d, d_prime) = if m == 1 {
        (GradedMap::new(0), GradedMap::new(0))
    } else {
        (alternating(p, m - 1, m), alternating(p, m - 1, m - 1))
    };
    let nrm = norm(p, m);
    if m >= 2 && m < p.max_level() {
        let (a, b, c) = (p.complex(m - 1), p.complex(m), p.complex(m + 1));
        let d_up = alternating(p, m, m + 1);
        let dp_up = alternating(p, m, m);
        report.require(is_zero_composite(&d_up, &d, a, b, c), || "d² is nonzero".into());
        report.require(is_zero_composite(&dp_up, &d_prime, a, b, c), || "d'² is nonzero".into());
    }
    if m >= 2 {
        let (a, b) = (p.complex(m - 1), p.complex(m));
        let lhs = one_minus_t(p, m).compose(&d, a, b, b)?;
        let rhs = d_prime.compose(&one_minus_t(p, m - 1), a, a, b)?;
        let ok = a.degrees().iter().all(|&q| lhs.get(q, a, b) == rhs.get(q, a, b));
        report.require(ok, || "(1 - t) d differs from d' (1 - t)".into());
    }
    Ok(HochschildOperators { level: m, d, d_prime, norm: nrm, report })
}

#[cfg(test)]
mod tests {
    use super::*;
    use exactalg::Domain;

    #[test]
    fn constant_point_level_two() {
        let p = PreCocyclicComplex::constant_point(Domain::Rational, 4);
        let h = hochschild_operators(&p, 2).unwrap();
        assert!(h.report.passed);
        assert!(h.d.components().is_empty());
        assert!(h.norm.components().is_empty());
    }

    #[test]
    fn constant_point_level_three_norm() {
        let q = Domain::Rational;
        let p = PreCocyclicComplex::constant_point(q, 4);
        let h = hochschild_operators(&p, 3).unwrap();
        assert!(h.report.passed);
        let c = p.complex(3);
        assert_eq!(h.norm.get(0, c, c), SparseMatrix::scalar_identity(1, &q.from_i64(3)));
    }

    #[test]
    fn overflow() {
        let p = PreCocyclicComplex::constant_point(Domain::Rational, 2);
        assert!(matches!(hochschild_operators(&p, 3), Err(PrecyclicError::LevelOverflow(3, 2))));
    }
}
