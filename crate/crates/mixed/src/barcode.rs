//! Normal form of a windowed graded `K[u]`-module as free and torsion bars.

use std::collections::BTreeMap;

use exactalg::rank;

use crate::umodule::UModule;
use crate::MixedError;

/// Free generators by degree and torsion bars `(birth, exponent)`: a bar
/// `(g, m)` is a copy of `K[u]/u^m` generated in degree `g`. Bars that
/// persist to the top of the window are reported as free.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Barcode {
    pub free: Vec<i64>,
    pub torsion: Vec<(i64, u32)>,
}

impl Barcode {
    /// Dimension in degree `q` predicted by the bars.
    pub fn dim(&self, q: i64) -> usize {
        let f = self.free.iter().filter(|&&g| g <= q && (q - g) % 2 == 0).count();
        let t = self.torsion.iter().filter(|&&(g, m)| g <= q && q < g + 2 * m as i64 && (q - g) % 2 == 0).count();
        f + t
    }

    /// Multiset union, sorted.
    pub fn union(&self, other: &Barcode) -> Barcode {
        let mut b = self.clone();
        b.free.extend(&other.free);
        b.torsion.extend(&other.torsion);
        b.free.sort_unstable();
        b.torsion.sort_unstable();
        b
    }
}

/// Decomposes a module through the rank invariants of `u`-powers inside
/// each parity class of degrees.
pub fn barcode(m: &UModule) -> Result<Barcode, MixedError> {
    m.validate()?;
    let mut out = Barcode::default();
    if m.hi < m.lo {
        return Ok(out);
    }
    let mut memo: BTreeMap<(i64, i64), usize> = BTreeMap::new();
    let mut r = |a: i64, b: i64| -> Result<usize, MixedError> {
        if a < m.lo || b > m.hi || a > b {
            return Ok(0);
        }
        if let Some(&v) = memo.get(&(a, b)) {
            return Ok(v);
        }
        let p = m.u_power(a, ((b - a) / 2) as usize).expect("inside window");
        let v = rank(&p)?;
        memo.insert((a, b), v);
        Ok(v)
    };
    for parity in 0..2 {
        let start = if (m.lo - parity).rem_euclid(2) == 0 { m.lo } else { m.lo + 1 };
        let top = if (m.hi - start).rem_euclid(2) == 0 { m.hi } else { m.hi - 1 };
        let mut a = start;
        while a <= top {
            let mut b = a;
            while b <= top {
                let n = r(a, b)? + r(a - 2, b + 2)? - r(a - 2, b)? - r(a, b + 2)?;
                for _ in 0..n {
                    if b == top {
                        out.free.push(a);
                    } else {
                        out.torsion.push((a, ((b - a) / 2 + 1) as u32));
                    }
                }
                b += 2;
            }
            a += 2;
        }
    }
    out.free.sort_unstable();
    out.torsion.sort_unstable();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use exactalg::{Domain, SparseMatrix};

    fn module(lo: i64, hi: i64, dims: &[(i64, usize)], u: &[(i64, Vec<Vec<i64>>)]) -> UModule {
        let q = Domain::Rational;
        let mut m = UModule::zero(q, 4);
        m.lo = lo;
        m.hi = hi;
        for d in lo..=hi {
            m.dims.insert(d, 0);
        }
        for &(d, n) in dims {
            m.dims.insert(d, n);
        }
        for (d, rows) in u {
            m.u.insert(*d, SparseMatrix::from_rows_i64(q, rows));
        }
        m
    }

    #[test]
    fn free_rank_one() {
        let m = module(0, 4, &[(0, 1), (2, 1), (4, 1)], &[(0, vec![vec![1]]), (2, vec![vec![1]])]);
        assert_eq!(barcode(&m).unwrap(), Barcode { free: vec![0], torsion: vec![] });
    }

    #[test]
    fn planted_truncated_polynomial() {
        let m = module(-2, 4, &[(-2, 1), (0, 1)], &[(-2, vec![vec![1]]), (0, Vec::new())]);
        let mut m = m;
        m.u.insert(0, SparseMatrix::zeros(0, 1, Domain::Rational));
        assert_eq!(barcode(&m).unwrap(), Barcode { free: vec![], torsion: vec![(-2, 2)] });
    }

    #[test]
    fn reconstruction_identity() {
        let m = module(0, 5, &[(0, 2), (1, 1), (2, 1), (4, 1)], &[
            (0, vec![vec![1, 1]]),
            (2, vec![vec![1]]),
        ]);
        let b = barcode(&m).unwrap();
        for q in 0..=5 {
            assert_eq!(b.dim(q), m.dim(q), "degree {q}");
        }
    }
}
