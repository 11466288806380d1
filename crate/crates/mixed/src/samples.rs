//! Seeded random mixed complexes for property checks.
//!
//! Samples are direct sums of free rank-one exterior modules and zigzag
//! strings, conjugated by random invertible matrices in every degree, so the
//! axioms hold by construction while the matrices look generic.

use std::collections::BTreeMap;

use chain::{CochainComplex, GradedMap};
use exactalg::{Domain, Scalar, SparseMatrix};
use rand::Rng;

use crate::mixed::MixedComplex;

/// Bounds for [`random_mixed`].
#[derive(Clone, Copy, Debug)]
pub struct SampleShape {
    pub lo: i64,
    pub hi: i64,
    pub max_dim: usize,
    pub pieces: usize,
}

impl Default for SampleShape {
    fn default() -> Self {
        SampleShape { lo: -3, hi: 3, max_dim: 6, pieces: 6 }
    }
}

#[derive(Clone, Copy)]
enum Op {
    Small,
    Big,
}

struct Builder {
    degrees: Vec<i64>,
    arrows: Vec<(Op, usize, usize, i64)>,
}

impl Builder {
    fn count(&self, q: i64) -> usize {
        self.degrees.iter().filter(|&&d| d == q).count()
    }
}

fn nonzero<R: Rng>(rng: &mut R) -> i64 {
    let v = rng.gen_range(1..=3);
    if rng.gen_bool(0.5) {
        -v
    } else {
        v
    }
}

fn try_piece<R: Rng>(rng: &mut R, shape: &SampleShape, b: &Builder) -> Option<(Vec<i64>, Vec<(Op, usize, usize, i64)>)> {
    let q = rng.gen_range(shape.lo..=shape.hi);
    let (degs, arrows) = match rng.gen_range(0..3) {
        0 => (vec![q], vec![]),
        1 => {
            // x, bx, Bx, bBx = -Bbx
            let c = nonzero(rng);
            (
                vec![q, q + 1, q - 1, q],
                vec![(Op::Small, 0, 1, 1), (Op::Big, 0, 2, 1), (Op::Small, 2, 3, c), (Op::Big, 1, 3, -c)],
            )
        }
        _ => {
            let len = rng.gen_range(2..=5);
            let mut degs = vec![q];
            let mut arrows = Vec::new();
            for i in 0..len - 1 {
                let small = rng.gen_bool(0.5);
                let step = if small { 1 } else { -1 };
                let op = if small { Op::Small } else { Op::Big };
                let c = nonzero(rng);
                if i % 2 == 0 {
                    degs.push(degs[i] + step);
                    arrows.push((op, i, i + 1, c));
                } else {
                    degs.push(degs[i] - step);
                    arrows.push((op, i + 1, i, c));
                }
            }
            (degs, arrows)
        }
    };
    let mut extra: BTreeMap<i64, usize> = BTreeMap::new();
    for &d in &degs {
        *extra.entry(d).or_default() += 1;
    }
    let fits = extra.iter().all(|(&d, &n)| d >= shape.lo && d <= shape.hi && b.count(d) + n <= shape.max_dim);
    fits.then_some((degs, arrows))
}

/// A random invertible matrix and its inverse, as products of transvections.
fn random_gl<R: Rng>(rng: &mut R, n: usize, dom: Domain) -> (SparseMatrix, SparseMatrix) {
    let mut p = SparseMatrix::identity(n, dom);
    let mut pinv = SparseMatrix::identity(n, dom);
    if n < 2 {
        return (p, pinv);
    }
    for _ in 0..2 * n {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let c = nonzero(rng);
        let e = SparseMatrix::identity(n, dom).add(&SparseMatrix::from_triplets(n, n, dom, vec![(i, j, dom.from_i64(c))])).expect("shape");
        let einv = SparseMatrix::identity(n, dom).add(&SparseMatrix::from_triplets(n, n, dom, vec![(i, j, dom.from_i64(-c))])).expect("shape");
        p = e.mul(&p).expect("shape");
        pinv = pinv.mul(&einv).expect("shape");
    }
    (p, pinv)
}

/// A random mixed complex over a field with degrees in `[lo, hi]` and at
/// most `max_dim` basis vectors per degree. Deterministic in the RNG state.
pub fn random_mixed<R: Rng>(rng: &mut R, dom: Domain, shape: &SampleShape) -> MixedComplex {
    let mut b = Builder { degrees: Vec::new(), arrows: Vec::new() };
    let target = rng.gen_range(1..=shape.pieces);
    let mut placed = 0;
    for _ in 0..8 * shape.pieces {
        if placed == target {
            break;
        }
        if let Some((degs, arrows)) = try_piece(rng, shape, &b) {
            let base = b.degrees.len();
            b.degrees.extend(degs);
            b.arrows.extend(arrows.into_iter().map(|(op, s, t, c)| (op, base + s, base + t, c)));
            placed += 1;
        }
    }
    let mut index = vec![0usize; b.degrees.len()];
    let mut dims: BTreeMap<i64, usize> = BTreeMap::new();
    for (v, &d) in b.degrees.iter().enumerate() {
        let n = dims.entry(d).or_default();
        index[v] = *n;
        *n += 1;
    }
    let mut small: BTreeMap<i64, Vec<(usize, usize, Scalar)>> = BTreeMap::new();
    let mut big: BTreeMap<i64, Vec<(usize, usize, Scalar)>> = BTreeMap::new();
    for &(op, s, t, c) in &b.arrows {
        let target = match op {
            Op::Small => &mut small,
            Op::Big => &mut big,
        };
        target.entry(b.degrees[s]).or_default().push((index[t], index[s], dom.from_i64(c)));
    }
    let mut gl = BTreeMap::new();
    for (&q, &n) in &dims {
        gl.insert(q, random_gl(rng, n, dom));
    }
    let dim = |q: i64| dims.get(&q).copied().unwrap_or(0);
    let conj = |q: i64, t: i64, trip: Vec<(usize, usize, Scalar)>| -> SparseMatrix {
        let m = SparseMatrix::from_triplets(dim(t), dim(q), dom, trip);
        let (pt, _) = &gl[&t];
        let (_, pinv) = &gl[&q];
        pt.mul(&m).and_then(|x| x.mul(pinv)).expect("shape")
    };
    let mut c = CochainComplex::with_dims(dom, dims.clone());
    for (q, trip) in small {
        c.set_diff(q, conj(q, q + 1, trip)).expect("shape");
    }
    let mut bop = GradedMap::new(-1);
    for (q, trip) in big {
        bop.set(q, conj(q, q - 1, trip));
    }
    MixedComplex::new(c, bop)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mixed::verify_mixed;
    use rand::SeedableRng;

    #[test]
    fn samples_satisfy_axioms_and_bounds() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        for dom in [Domain::Rational, Domain::prime(5).unwrap()] {
            for _ in 0..50 {
                let m = random_mixed(&mut rng, dom, &SampleShape::default());
                assert!(verify_mixed(&m).passed);
                for (&q, &n) in m.complex.dims() {
                    assert!((-3..=3).contains(&q) && n <= 6);
                }
            }
        }
    }
}
