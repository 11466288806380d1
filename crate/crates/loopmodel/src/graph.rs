//! Metric graphs standing in for closed Riemannian manifolds.

use std::path::Path;

use exactalg::{Integer, Rational};

use crate::LoopError;

/// How tuples of vertices are joined when the tuple set is thickened.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Thickening {
    /// `x ~ y` when every coordinate of `y` lies in the closed forward
    /// star of the matching coordinate of `x` (or the other way round);
    /// flag complexes are then Freudenthal-type triangulations.
    Monotone { forward: Vec<Vec<usize>> },
    /// `x ~ y` when every coordinate moves by at most one edge.
    Neighbors,
}

/// Which family a graph was built from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModelKind {
    Point,
    Cycle { m: usize },
    Product,
    EdgeList,
}

/// A connected graph with positive edge lengths, its exact shortest-path
/// metric, the declared model dimension and total size.
#[derive(Clone, Debug)]
pub struct MetricGraph {
    pub m: usize,
    pub edges: Vec<(usize, usize, Rational)>,
    pub dist: Vec<Vec<Rational>>,
    pub dim: usize,
    pub size: Rational,
    pub kind: ModelKind,
    pub thickening: Thickening,
    neighbors: Vec<Vec<usize>>,
    scale: i64,
    scaled: Vec<i64>,
}

fn lcm(a: i64, b: i64) -> i64 {
    let (mut x, mut y) = (a, b);
    while y != 0 {
        (x, y) = (y, x % y);
    }
    a / x * b
}

fn to_i64(v: &Integer) -> Option<i64> {
    v.to_string().parse().ok()
}

impl MetricGraph {
    /// Builds the metric by Floyd–Warshall over exact rationals.
    pub fn from_edges(
        m: usize,
        edges: Vec<(usize, usize, Rational)>,
        dim: usize,
        size: Rational,
        kind: ModelKind,
        thickening: Thickening,
    ) -> Result<Self, LoopError> {
        if m == 0 {
            return Err(LoopError::InvalidGraph("no vertices".into()));
        }
        let mut dist: Vec<Vec<Option<Rational>>> = vec![vec![None; m]; m];
        let mut neighbors = vec![Vec::new(); m];
        for (i, row) in dist.iter_mut().enumerate() {
            row[i] = Some(Rational::zero());
        }
        for (u, v, w) in &edges {
            if *u >= m || *v >= m {
                return Err(LoopError::InvalidGraph(format!("edge ({u}, {v}) leaves the vertex range")));
            }
            if w.signum() <= 0 {
                return Err(LoopError::InvalidGraph(format!("edge ({u}, {v}) has length {w}")));
            }
            if u == v {
                continue;
            }
            for (a, b) in [(*u, *v), (*v, *u)] {
                if dist[a][b].as_ref().is_none_or(|d| w < d) {
                    dist[a][b] = Some(w.clone());
                }
                if !neighbors[a].contains(&b) {
                    neighbors[a].push(b);
                }
            }
        }
        for k in 0..m {
            for i in 0..m {
                let Some(ik) = dist[i][k].clone() else { continue };
                for j in 0..m {
                    if let Some(kj) = &dist[k][j] {
                        let s = ik.add(kj);
                        if dist[i][j].as_ref().is_none_or(|d| s < *d) {
                            dist[i][j] = Some(s);
                        }
                    }
                }
            }
        }
        let dist: Vec<Vec<Rational>> = dist
            .into_iter()
            .map(|row| row.into_iter().collect::<Option<Vec<_>>>())
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| LoopError::InvalidGraph("graph is not connected".into()))?;
        let mut scale = 1i64;
        for d in dist.iter().flatten() {
            let q = to_i64(&d.denom()).ok_or_else(|| LoopError::InvalidGraph("edge lengths too fine".into()))?;
            scale = lcm(scale, q);
        }
        let scaled = dist
            .iter()
            .flatten()
            .map(|d| to_i64(&d.mul(&Rational::from_int(scale)).numer()))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| LoopError::InvalidGraph("edge lengths too large".into()))?;
        for list in &mut neighbors {
            list.sort_unstable();
        }
        Ok(MetricGraph { m, edges, dist, dim, size, kind, thickening, neighbors, scale, scaled })
    }

    pub fn distance(&self, u: usize, v: usize) -> &Rational {
        &self.dist[u][v]
    }

    /// Distances times the common denominator [`Self::scale`].
    pub fn scaled_distance(&self, u: usize, v: usize) -> i64 {
        self.scaled[u * self.m + v]
    }

    pub fn scale(&self) -> i64 {
        self.scale
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[v]
    }

    pub fn diameter(&self) -> Rational {
        self.dist.iter().flatten().max().cloned().unwrap_or_else(Rational::zero)
    }

    /// Vertices a coordinate at `v` may move to in one thickening step,
    /// `v` itself first.
    pub fn steps(&self, v: usize) -> Vec<usize> {
        let mut out = vec![v];
        match &self.thickening {
            Thickening::Monotone { forward } => out.extend(forward[v].iter().copied()),
            Thickening::Neighbors => out.extend(self.neighbors[v].iter().copied()),
        }
        out
    }

    /// Symmetry, zero diagonal and the triangle inequality, checked exactly.
    pub fn is_metric(&self) -> bool {
        let n = self.m;
        (0..n).all(|i| self.dist[i][i].is_zero())
            && (0..n).all(|i| (0..n).all(|j| self.dist[i][j] == self.dist[j][i]))
            && (0..n).all(|i| (0..n).all(|j| (0..n).all(|k| self.dist[i][k] <= self.dist[i][j].add(&self.dist[j][k]))))
    }
}

/// The cycle on `m` vertices with edges of length `L/m`.
pub fn build_cycle_graph(m: usize, length: Rational) -> Result<MetricGraph, LoopError> {
    if m < 3 {
        return Err(LoopError::DegenerateCycle(m));
    }
    if length.signum() <= 0 {
        return Err(LoopError::InvalidGraph(format!("total length {length}")));
    }
    let w = length.mul(&Rational::new(1, m as i64));
    let edges = (0..m).map(|i| (i, (i + 1) % m, w.clone())).collect();
    let forward = (0..m).map(|i| vec![(i + 1) % m]).collect();
    MetricGraph::from_edges(m, edges, 1, length, ModelKind::Cycle { m }, Thickening::Monotone { forward })
}

/// A single vertex, the model of a point.
pub fn build_point_graph() -> MetricGraph {
    MetricGraph::from_edges(1, Vec::new(), 0, Rational::zero(), ModelKind::Point, Thickening::Neighbors)
        .expect("one vertex is a metric graph")
}

/// The product with the sum metric; vertex `(a, b)` has index
/// `a * g2.m + b`.
pub fn build_product_graph(g1: &MetricGraph, g2: &MetricGraph) -> MetricGraph {
    let idx = |a: usize, b: usize| a * g2.m + b;
    let mut edges = Vec::new();
    for a in 0..g1.m {
        for (u, v, w) in &g2.edges {
            edges.push((idx(a, *u), idx(a, *v), w.clone()));
        }
    }
    for b in 0..g2.m {
        for (u, v, w) in &g1.edges {
            edges.push((idx(*u, b), idx(*v, b), w.clone()));
        }
    }
    let thickening = match (&g1.thickening, &g2.thickening) {
        (Thickening::Monotone { forward: f1 }, Thickening::Monotone { forward: f2 }) => {
            let mut forward = vec![Vec::new(); g1.m * g2.m];
            for a in 0..g1.m {
                for b in 0..g2.m {
                    let xs: Vec<usize> = std::iter::once(a).chain(f1[a].iter().copied()).collect();
                    let ys: Vec<usize> = std::iter::once(b).chain(f2[b].iter().copied()).collect();
                    for &x in &xs {
                        for &y in &ys {
                            if (x, y) != (a, b) {
                                forward[idx(a, b)].push(idx(x, y));
                            }
                        }
                    }
                }
            }
            Thickening::Monotone { forward }
        }
        _ => Thickening::Neighbors,
    };
    MetricGraph::from_edges(g1.m * g2.m, edges, g1.dim + g2.dim, g1.size.add(&g2.size), ModelKind::Product, thickening)
        .expect("a product of connected graphs is a connected graph")
}

/// Parses the edge-list format: a header line `m d L`, then one line
/// `u v length` per edge. Blank lines and `#` comments are skipped.
pub fn parse_edge_list(text: &str) -> Result<MetricGraph, LoopError> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let bad = |line: usize, what: &str| LoopError::EdgeList { line, message: what.to_string() };
    let (hl, header) = lines.next().ok_or_else(|| bad(1, "missing header `m d L`"))?;
    let h: Vec<&str> = header.split_whitespace().collect();
    if h.len() != 3 {
        return Err(bad(hl, "header must be `m d L`"));
    }
    let m: usize = h[0].parse().map_err(|_| bad(hl, "vertex count"))?;
    let dim: usize = h[1].parse().map_err(|_| bad(hl, "dimension"))?;
    let size: Rational = h[2].parse().map_err(|_| bad(hl, "total size"))?;
    let mut edges = Vec::new();
    for (ln, line) in lines {
        let f: Vec<&str> = line.split_whitespace().collect();
        if f.len() != 3 {
            return Err(bad(ln, "edge must be `u v length`"));
        }
        let u: usize = f[0].parse().map_err(|_| bad(ln, "vertex index"))?;
        let v: usize = f[1].parse().map_err(|_| bad(ln, "vertex index"))?;
        let w: Rational = f[2].parse().map_err(|_| bad(ln, "edge length"))?;
        edges.push((u, v, w));
    }
    MetricGraph::from_edges(m, edges, dim, size, ModelKind::EdgeList, Thickening::Neighbors)
}

pub fn load_edge_list(path: &Path) -> Result<MetricGraph, LoopError> {
    let text = std::fs::read_to_string(path).map_err(|e| LoopError::Io(format!("{}: {e}", path.display())))?;
    parse_edge_list(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn hexagon_distances() {
        let g = build_cycle_graph(6, r(6, 1)).unwrap();
        assert_eq!(g.distance(0, 3), &r(3, 1));
        assert_eq!(g.distance(0, 5), &r(1, 1));
        assert!(g.is_metric());
    }

    #[test]
    fn octagon_half_steps() {
        let g = build_cycle_graph(8, r(4, 1)).unwrap();
        assert_eq!(g.scale(), 2);
        assert!(g.dist.iter().flatten().all(|d| d.mul(&r(2, 1)).is_integer()));
        assert_eq!(g.diameter(), r(2, 1));
    }

    #[test]
    fn short_cycles_are_rejected() {
        assert!(matches!(build_cycle_graph(2, r(1, 1)), Err(LoopError::DegenerateCycle(2))));
    }

    #[test]
    fn product_of_triangles() {
        let c = build_cycle_graph(3, r(3, 1)).unwrap();
        let p = build_product_graph(&c, &c);
        assert_eq!(p.m, 9);
        assert!(p.is_metric());
        assert_eq!(p.distance(0, 2), c.distance(0, 2));
        assert_eq!(p.diameter(), c.diameter().add(&c.diameter()));
        assert_eq!(p.dim, 2);
    }

    #[test]
    fn edge_list_round_trip() {
        let g = parse_edge_list("4 1 4\n0 1 1\n1 2 1\n2 3 1\n3 0 1/1\n").unwrap();
        assert_eq!(g.distance(0, 2), &r(2, 1));
        assert!(matches!(parse_edge_list("3 1 3\n0 1 1\n"), Err(LoopError::InvalidGraph(_))));
        assert!(matches!(parse_edge_list("3 1\n"), Err(LoopError::EdgeList { line: 1, .. })));
    }
}
