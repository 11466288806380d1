//! Enumeration of discrete loop tuples.
//!
//! A level-`n` tuple is a closed chain `x_0, ..., x_{nN-1}` of vertices,
//! read as segments `q^j = (x_{jN}, ..., x_{jN+N-1})` with the seam
//! convention `q_N^j = q_0^{j+1}`. Every step has length at most one, and
//! for each position `i` the steps `q_i^j -> q_{i+1}^j` summed over `j`
//! stay within `T/N`.

use exactalg::Rational;

use crate::graph::MetricGraph;
use crate::LoopError;

/// Default bound on the number of tuples in one level.
pub const DEFAULT_STATE_CAP: usize = 5_000_000;

/// Integer form of the two constraint families.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Points per segment.
    pub n_points: usize,
    pub level: usize,
    /// Bound on one scaled step (the unit length).
    pub step: i64,
    /// Bound on the scaled per-position sums.
    pub budget: i64,
}

impl Budget {
    pub fn new(g: &MetricGraph, n_points: usize, level: usize, t: &Rational) -> Result<Self, LoopError> {
        if n_points == 0 || level == 0 {
            return Err(LoopError::InvalidParameters(format!("N = {n_points}, level = {level}")));
        }
        if t.signum() < 0 {
            return Err(LoopError::InvalidParameters(format!("T = {t} is negative")));
        }
        let scaled = t.mul(&Rational::new(g.scale(), n_points as i64));
        let budget = scaled.numer().to_string().parse::<i64>().ok().zip(scaled.denom().to_string().parse::<i64>().ok());
        let (p, q) = budget.ok_or_else(|| LoopError::InvalidParameters(format!("T = {t} is too large")))?;
        Ok(Budget { n_points, level, step: g.scale(), budget: p.div_euclid(q) })
    }

    pub fn width(&self) -> usize {
        self.n_points * self.level
    }

    /// The position `i` charged for the step leaving coordinate `k`.
    pub fn position(&self, k: usize) -> usize {
        k % self.n_points
    }
}

/// Tuples of one level, stored flat and sorted lexicographically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TupleSet {
    pub n_points: usize,
    pub level: usize,
    data: Vec<u32>,
}

impl TupleSet {
    pub fn from_sorted(n_points: usize, level: usize, data: Vec<u32>) -> Self {
        TupleSet { n_points, level, data }
    }

    pub fn width(&self) -> usize {
        self.n_points * self.level
    }

    pub fn len(&self) -> usize {
        self.data.len() / self.width()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn get(&self, i: usize) -> &[u32] {
        let w = self.width();
        &self.data[i * w..(i + 1) * w]
    }

    pub fn iter(&self) -> impl Iterator<Item = &[u32]> {
        self.data.chunks(self.width())
    }

    /// Position of a tuple, by binary search.
    pub fn index_of(&self, x: &[u32]) -> Option<usize> {
        let (mut lo, mut hi) = (0, self.len());
        while lo < hi {
            let mid = (lo + hi) / 2;
            match self.get(mid).cmp(x) {
                std::cmp::Ordering::Less => lo = mid + 1,
                std::cmp::Ordering::Greater => hi = mid,
                std::cmp::Ordering::Equal => return Some(mid),
            }
        }
        None
    }

    /// Tuples with every coordinate equal.
    pub fn is_diagonal(x: &[u32]) -> bool {
        x.iter().all(|&v| v == x[0])
    }
}

/// Whether `x` satisfies both constraint families.
pub fn satisfies(g: &MetricGraph, b: &Budget, x: &[u32]) -> bool {
    let w = b.width();
    let mut used = vec![0i64; b.n_points];
    for k in 0..w {
        let d = g.scaled_distance(x[k] as usize, x[(k + 1) % w] as usize);
        if d > b.step {
            return false;
        }
        used[b.position(k)] += d;
    }
    used.iter().all(|&u| u <= b.budget)
}

/// Depth-first search over coordinates; `choices(k, prefix)` lists the
/// candidates for coordinate `k` in increasing order.
pub(crate) struct Search<'a> {
    pub g: &'a MetricGraph,
    pub b: Budget,
    pub cap: usize,
}

impl Search<'_> {
    pub fn run(&self, choices: &dyn Fn(usize, &[u32]) -> Vec<u32>, out: &mut Vec<u32>) -> Result<usize, LoopError> {
        let w = self.b.width();
        let mut used = vec![0i64; self.b.n_points];
        let mut prefix = Vec::with_capacity(w);
        let mut count = 0;
        self.extend(choices, &mut prefix, &mut used, out, &mut count)?;
        Ok(count)
    }

    fn remaining(&self, used: &[i64], k: usize) -> i64 {
        // steps k, ..., w-1 are still open
        let w = self.b.width();
        let steps = (w - k) as i64;
        if steps >= self.b.n_points as i64 {
            used.iter().map(|u| self.b.budget - u).sum::<i64>().min(steps * self.b.step)
        } else {
            (k..w).map(|s| self.b.budget - used[self.b.position(s)]).sum::<i64>().min(steps * self.b.step)
        }
    }

    fn extend(
        &self,
        choices: &dyn Fn(usize, &[u32]) -> Vec<u32>,
        prefix: &mut Vec<u32>,
        used: &mut [i64],
        out: &mut Vec<u32>,
        count: &mut usize,
    ) -> Result<(), LoopError> {
        let w = self.b.width();
        let k = prefix.len();
        if k == w {
            let d = self.g.scaled_distance(prefix[w - 1] as usize, prefix[0] as usize);
            let i = self.b.position(w - 1);
            if d <= self.b.step && used[i] + d <= self.b.budget {
                *count += 1;
                if *count > self.cap {
                    return Err(LoopError::StateSpaceOverflow { level: self.b.level, cap: self.cap });
                }
                out.extend_from_slice(prefix);
            }
            return Ok(());
        }
        for v in choices(k, prefix) {
            let mut charged = None;
            if k > 0 {
                let d = self.g.scaled_distance(prefix[k - 1] as usize, v as usize);
                let i = self.b.position(k - 1);
                if d > self.b.step || used[i] + d > self.b.budget {
                    continue;
                }
                used[i] += d;
                charged = Some((i, d));
                if self.g.scaled_distance(v as usize, prefix[0] as usize) > self.remaining(used, k) {
                    used[i] -= d;
                    continue;
                }
            }
            prefix.push(v);
            let r = self.extend(choices, prefix, used, out, count);
            prefix.pop();
            if let Some((i, d)) = charged {
                used[i] -= d;
            }
            r?;
        }
        Ok(())
    }
}

/// All level-`n` tuples at parameter `T`, in lexicographic order.
pub fn enumerate_loop_tuples(
    g: &MetricGraph,
    n_points: usize,
    level: usize,
    t: &Rational,
    cap: usize,
) -> Result<TupleSet, LoopError> {
    let b = Budget::new(g, n_points, level, t)?;
    let balls: Vec<Vec<u32>> = (0..g.m)
        .map(|u| (0..g.m).filter(|&v| g.scaled_distance(u, v) <= b.step.min(b.budget)).map(|v| v as u32).collect())
        .collect();
    let all: Vec<u32> = (0..g.m as u32).collect();
    let choices = |k: usize, prefix: &[u32]| if k == 0 { all.clone() } else { balls[prefix[k - 1] as usize].clone() };
    let mut data = Vec::new();
    Search { g, b, cap }.run(&choices, &mut data)?;
    Ok(TupleSet::from_sorted(n_points, level, data))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_cycle_graph, build_point_graph};

    fn r(n: i64) -> Rational {
        Rational::from_int(n)
    }

    #[test]
    fn hexagon_three_points() {
        let g = build_cycle_graph(6, r(6)).unwrap();
        assert_eq!(enumerate_loop_tuples(&g, 3, 1, &r(3), DEFAULT_STATE_CAP).unwrap().len(), 42);
    }

    #[test]
    fn square_two_points() {
        let g = build_cycle_graph(4, r(4)).unwrap();
        assert_eq!(enumerate_loop_tuples(&g, 2, 1, &r(2), DEFAULT_STATE_CAP).unwrap().len(), 12);
    }

    #[test]
    fn zero_budget_leaves_the_diagonal() {
        let g = build_cycle_graph(6, r(6)).unwrap();
        for level in 1..=3 {
            let s = enumerate_loop_tuples(&g, 3, level, &r(0), DEFAULT_STATE_CAP).unwrap();
            assert_eq!(s.len(), 6);
            assert!(s.iter().all(TupleSet::is_diagonal));
        }
        let p = build_point_graph();
        assert_eq!(enumerate_loop_tuples(&p, 4, 2, &r(5), DEFAULT_STATE_CAP).unwrap().len(), 1);
    }

    #[test]
    fn matches_brute_force_filtering() {
        let g = build_cycle_graph(5, r(4)).unwrap();
        for (n_points, level, t) in [(2, 1, r(2)), (2, 2, r(3)), (3, 1, r(4)), (1, 3, r(2))] {
            let b = Budget::new(&g, n_points, level, &t).unwrap();
            let w = b.width();
            let mut brute = Vec::new();
            for code in 0..5usize.pow(w as u32) {
                let x: Vec<u32> = (0..w).map(|k| ((code / 5usize.pow((w - 1 - k) as u32)) % 5) as u32).collect();
                if satisfies(&g, &b, &x) {
                    brute.extend(x);
                }
            }
            let s = enumerate_loop_tuples(&g, n_points, level, &t, DEFAULT_STATE_CAP).unwrap();
            assert_eq!(s, TupleSet::from_sorted(n_points, level, brute));
        }
    }

    #[test]
    fn cap_is_enforced() {
        let g = build_cycle_graph(6, r(6)).unwrap();
        let e = enumerate_loop_tuples(&g, 3, 1, &r(3), 10).unwrap_err();
        assert!(e.to_string().contains("state-space overflow"));
    }
}
