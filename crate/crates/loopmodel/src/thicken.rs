//! Flag complexes on tuple sets.

use crate::graph::MetricGraph;
use crate::tuples::{Budget, Search, TupleSet};
use crate::LoopError;

/// `k`-simplices as strictly increasing vertex lists, stored flat and
/// sorted lexicographically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplexList {
    pub dim: usize,
    data: Vec<u32>,
}

impl SimplexList {
    pub fn new(dim: usize, data: Vec<u32>) -> Self {
        SimplexList { dim, data }
    }

    pub fn len(&self) -> usize {
        self.data.len() / (self.dim + 1)
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn get(&self, i: usize) -> &[u32] {
        let w = self.dim + 1;
        &self.data[i * w..(i + 1) * w]
    }

    pub fn iter(&self) -> impl Iterator<Item = &[u32]> {
        self.data.chunks(self.dim + 1)
    }

    pub fn index_of(&self, s: &[u32]) -> Option<usize> {
        let (mut lo, mut hi) = (0, self.len());
        while lo < hi {
            let mid = (lo + hi) / 2;
            match self.get(mid).cmp(s) {
                std::cmp::Ordering::Less => lo = mid + 1,
                std::cmp::Ordering::Greater => hi = mid,
                std::cmp::Ordering::Equal => return Some(mid),
            }
        }
        None
    }
}

/// The flag complex of the thickening graph, up to `top` dimensions.
/// `simplices[k]` lists the `k`-simplices; `simplices[0]` is the vertex set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlagComplex {
    pub simplices: Vec<SimplexList>,
}

impl FlagComplex {
    pub fn vertices(&self) -> usize {
        self.simplices[0].len()
    }

    pub fn top(&self) -> usize {
        self.simplices.len() - 1
    }

    pub fn count(&self, k: usize) -> usize {
        self.simplices.get(k).map_or(0, SimplexList::len)
    }

    /// The flag complex of an explicit graph on `n` vertices.
    /// Fails once some dimension holds more than `cap` simplices.
    pub fn from_graph(n: usize, mut edges: Vec<(u32, u32)>, top: usize, cap: usize) -> Result<Self, LoopError> {
        for e in &mut edges {
            if e.0 > e.1 {
                *e = (e.1, e.0);
            }
        }
        edges.sort_unstable();
        edges.dedup();
        if edges.len() > cap && top >= 1 {
            return Err(LoopError::ComplexOverflow { dim: 1, cap });
        }
        let mut start = vec![0usize; n + 1];
        for &(a, _) in &edges {
            start[a as usize + 1] += 1;
        }
        for i in 0..n {
            start[i + 1] += start[i];
        }
        let fwd: Vec<u32> = edges.iter().map(|e| e.1).collect();
        let forward = |a: u32| &fwd[start[a as usize]..start[a as usize + 1]];
        let mut simplices = vec![SimplexList::new(0, (0..n as u32).collect())];
        if top >= 1 {
            simplices.push(SimplexList::new(1, edges.iter().flat_map(|&(a, b)| [a, b]).collect()));
        }
        for k in 2..=top {
            let prev = &simplices[k - 1];
            let mut data = Vec::new();
            let mut common = Vec::new();
            for s in prev.iter() {
                common.clear();
                common.extend(forward(s[k - 1]).iter().copied());
                for &v in &s[..k - 1] {
                    let f = forward(v);
                    common.retain(|c| f.binary_search(c).is_ok());
                    if common.is_empty() {
                        break;
                    }
                }
                for &c in &common {
                    data.extend_from_slice(s);
                    data.push(c);
                }
                if data.len() > cap * (k + 1) {
                    return Err(LoopError::ComplexOverflow { dim: k, cap });
                }
            }
            simplices.push(SimplexList::new(k, data));
        }
        Ok(FlagComplex { simplices })
    }
}

/// Tuples `y != x` joined to `x` in the thickening graph; for monotone
/// thickenings only the forward ones.
pub fn thickening_neighbors(g: &MetricGraph, b: &Budget, x: &[u32]) -> Result<Vec<u32>, LoopError> {
    let steps: Vec<Vec<u32>> = x.iter().map(|&v| g.steps(v as usize).into_iter().map(|u| u as u32).collect()).collect();
    let choices = |k: usize, _: &[u32]| {
        let mut c = steps[k].clone();
        c.sort_unstable();
        c
    };
    let mut out = Vec::new();
    Search { g, b: *b, cap: usize::MAX }.run(&choices, &mut out)?;
    Ok(out)
}

/// Edges of the thickening graph induced on a set of valid tuples,
/// completed to the flag complex up to dimension `top`.
pub fn thicken_flag_complex(g: &MetricGraph, tuples: &TupleSet, t: &exactalg::Rational, top: usize, cap: usize) -> Result<FlagComplex, LoopError> {
    let b = Budget::new(g, tuples.n_points, tuples.level, t)?;
    let w = tuples.width();
    let mut edges = Vec::new();
    for (i, x) in tuples.iter().enumerate() {
        let ys = thickening_neighbors(g, &b, x)?;
        for y in ys.chunks(w) {
            if y == x {
                continue;
            }
            // subsets such as the diagonal keep the induced subgraph
            if let Some(j) = tuples.index_of(y) {
                edges.push((i as u32, j as u32));
            }
        }
        if edges.len() > 2 * cap {
            return Err(LoopError::ComplexOverflow { dim: 1, cap });
        }
    }
    FlagComplex::from_graph(tuples.len(), edges, top, cap)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_cycle_graph;
    use crate::tuples::{enumerate_loop_tuples, DEFAULT_STATE_CAP};
    use exactalg::Rational;

    #[test]
    fn hexagon_of_constants() {
        let g = build_cycle_graph(6, Rational::from_int(6)).unwrap();
        let t = Rational::zero();
        let s = enumerate_loop_tuples(&g, 3, 1, &t, DEFAULT_STATE_CAP).unwrap();
        let f = thicken_flag_complex(&g, &s, &t, 2, 1000).unwrap();
        assert_eq!((f.count(0), f.count(1), f.count(2)), (6, 6, 0));
    }

    #[test]
    fn cliques_of_a_square_with_diagonal() {
        let f = FlagComplex::from_graph(4, vec![(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)], 3, 100).unwrap();
        assert_eq!(f.count(2), 2);
        assert_eq!(f.count(3), 0);
        assert_eq!(f.simplices[2].get(0), &[0, 1, 2]);
    }
}
