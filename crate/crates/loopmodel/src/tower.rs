//! Pre-cocyclic chain complexes of discrete loop spaces, the diagonal
//! sub-object and the persistence maps in `T`.

use chain::GradedMap;
use exactalg::{Domain, Rational};
use precyclic::{PreCocyclicComplex, PreCocyclicMap};
use rayon::prelude::*;

use crate::graph::MetricGraph;
use crate::level::{Caps, LevelChains};
use crate::thicken::thicken_flag_complex;
use crate::tuples::TupleSet;
use crate::LoopError;

/// Parameters shared by all levels of one tower.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoopSpec {
    /// Points per segment.
    pub n_points: usize,
    pub t: Rational,
    pub domain: Domain,
    pub caps: Caps,
}

/// Levels `1..=n_max` of the loop space at one `T`, their truncated chains
/// and the pre-cocyclic structure: cofaces insert a constant segment at a
/// seam, `t` rotates the segments with sign `(-1)^{ℓ-1}` on level `ℓ`.
#[derive(Clone, Debug)]
pub struct LoopTower {
    pub spec: LoopSpec,
    pub levels: Vec<LevelChains>,
    pub pre: PreCocyclicComplex,
}

/// Level `ℓ + 1` tuple obtained by inserting the constant segment at seam
/// `i`, valued at the first point of segment `i` (of segment 0 for `i = ℓ`).
pub fn insert_constant_segment(x: &[u32], n_points: usize, i: usize) -> Vec<u32> {
    let level = x.len() / n_points;
    let seam = x[(i % level) * n_points];
    let mut y = Vec::with_capacity(x.len() + n_points);
    y.extend_from_slice(&x[..i * n_points]);
    y.extend(std::iter::repeat_n(seam, n_points));
    y.extend_from_slice(&x[i * n_points..]);
    y
}

/// Segment rotation `(q^0, ..., q^{ℓ-1}) -> (q^1, ..., q^{ℓ-1}, q^0)`.
pub fn rotate_segments(x: &[u32], n_points: usize) -> Vec<u32> {
    let w = x.len();
    (0..w).map(|k| x[(k + n_points) % w]).collect()
}

fn lookup(set: &TupleSet, y: &[u32]) -> Result<usize, LoopError> {
    set.index_of(y).ok_or_else(|| LoopError::InvalidParameters(format!("tuple {y:?} missing from its level")))
}

fn install(levels: &[LevelChains], n_points: usize, domain: Domain) -> Result<PreCocyclicComplex, LoopError> {
    let cyclic = levels
        .par_iter()
        .enumerate()
        .map(|(idx, l)| {
            let rot = l.pushforward(l, &|i| lookup(&l.tuples, &rotate_segments(l.tuples.get(i), n_points)).expect("rotation preserves the level"))?;
            Ok(if idx % 2 == 1 { rot.scale(-1, domain) } else { rot })
        })
        .collect::<Result<Vec<GradedMap>, LoopError>>()?;
    let cofaces = (1..levels.len())
        .into_par_iter()
        .map(|ell| {
            let (src, tgt) = (&levels[ell - 1], &levels[ell]);
            (0..=ell)
                .map(|i| src.pushforward(tgt, &|j| lookup(&tgt.tuples, &insert_constant_segment(src.tuples.get(j), n_points, i)).expect("cofaces preserve the constraints")))
                .collect::<Result<Vec<GradedMap>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    let mut pre = PreCocyclicComplex::new(domain);
    for (l, t) in levels.iter().zip(cyclic) {
        pre.push_level(l.complex.clone(), t);
    }
    for (idx, maps) in cofaces.into_iter().enumerate() {
        pre.set_cofaces(idx + 1, maps)?;
    }
    Ok(pre)
}

/// One level with its cyclic operator, for theories that need no cofaces.
pub fn build_level(g: &MetricGraph, spec: &LoopSpec, ell: usize) -> Result<(LevelChains, GradedMap), LoopError> {
    let l = LevelChains::build(g, spec.n_points, ell, &spec.t, g.dim + 1, spec.domain, spec.caps)?;
    let rot = l.pushforward(&l, &|i| lookup(&l.tuples, &rotate_segments(l.tuples.get(i), spec.n_points)).expect("rotation preserves the level"))?;
    let t = if ell.is_multiple_of(2) { rot.scale(-1, spec.domain) } else { rot };
    Ok((l, t))
}

/// The map of single levels induced by `L_T ⊂ L_{T'}`.
pub fn level_inclusion(src: &LevelChains, tgt: &LevelChains) -> Result<GradedMap, LoopError> {
    let idx: Vec<usize> = src.tuples.iter().map(|x| lookup(&tgt.tuples, x)).collect::<Result<_, _>>()?;
    src.pushforward(tgt, &|i| idx[i])
}

/// Builds levels `1..=n_max` at parameter `t`.
pub fn assemble_precocyclic(g: &MetricGraph, spec: &LoopSpec, n_max: usize) -> Result<LoopTower, LoopError> {
    let levels = (1..=n_max)
        .into_par_iter()
        .map(|ell| LevelChains::build(g, spec.n_points, ell, &spec.t, g.dim + 1, spec.domain, spec.caps))
        .collect::<Result<Vec<_>, _>>()?;
    let pre = install(&levels, spec.n_points, spec.domain)?;
    Ok(LoopTower { spec: spec.clone(), levels, pre })
}

/// The constant tuples on every level and their inclusion.
#[derive(Clone, Debug)]
pub struct DiagonalModel {
    pub levels: Vec<LevelChains>,
    pub pre: PreCocyclicComplex,
    pub inclusion: PreCocyclicMap,
}

/// The diagonal sub-object of a tower, with the pushforward of the
/// inclusion, a map of pre-cocyclic complexes.
pub fn diagonal_model(g: &MetricGraph, tower: &LoopTower) -> Result<DiagonalModel, LoopError> {
    let n = tower.spec.n_points;
    let mut levels = Vec::new();
    for (idx, big) in tower.levels.iter().enumerate() {
        let w = n * (idx + 1);
        let data: Vec<u32> = (0..g.m as u32).flat_map(|c| std::iter::repeat_n(c, w)).collect();
        let tuples = TupleSet::from_sorted(n, idx + 1, data);
        let flag = thicken_flag_complex(g, &tuples, &tower.spec.t, g.dim + 1, tower.spec.caps.simplices)?;
        let l = LevelChains::from_flag(tuples, flag, g.dim, tower.spec.domain)?;
        if big.tuples.is_empty() {
            return Err(LoopError::InvalidParameters("empty level".into()));
        }
        levels.push(l);
    }
    let pre = install(&levels, n, tower.spec.domain)?;
    let maps = levels
        .iter()
        .zip(&tower.levels)
        .map(|(small, big)| small.pushforward(big, &|i| lookup(&big.tuples, small.tuples.get(i)).expect("constants are loops")))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(DiagonalModel { levels, pre, inclusion: PreCocyclicMap { levels: maps } })
}

/// The map of towers induced by `L_T ⊂ L_{T'}` for `T <= T'` on the common
/// levels.
pub fn persistence_map(src: &LoopTower, tgt: &LoopTower) -> Result<PreCocyclicMap, LoopError> {
    if src.spec.n_points != tgt.spec.n_points || src.spec.t > tgt.spec.t {
        return Err(LoopError::InvalidParameters(format!("no structure map from T = {} to T = {}", src.spec.t, tgt.spec.t)));
    }
    let maps = src
        .levels
        .par_iter()
        .zip(&tgt.levels)
        .map(|(a, b)| level_inclusion(a, b))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(PreCocyclicMap { levels: maps })
}

/// Towers over an ascending grid and the structure maps between
/// consecutive grid points.
pub fn persistence_inclusions(
    g: &MetricGraph,
    spec: &LoopSpec,
    n_max: usize,
    grid: &[Rational],
) -> Result<(Vec<LoopTower>, Vec<PreCocyclicMap>), LoopError> {
    if grid.windows(2).any(|w| w[0] > w[1]) {
        return Err(LoopError::InvalidParameters("grid must be ascending".into()));
    }
    let towers = grid
        .iter()
        .map(|t| assemble_precocyclic(g, &LoopSpec { t: t.clone(), ..spec.clone() }, n_max))
        .collect::<Result<Vec<_>, _>>()?;
    let maps = towers.windows(2).map(|w| persistence_map(&w[0], &w[1])).collect::<Result<Vec<_>, _>>()?;
    Ok((towers, maps))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_cycle_graph;
    use chain::{cohomology_dims, induced_map, cohomology_basis};
    use exactalg::rank;
    use precyclic::validate_relations;
    use std::collections::BTreeMap;

    fn spec(t: i64) -> LoopSpec {
        LoopSpec { n_points: 3, t: Rational::from_int(t), domain: Domain::Rational, caps: Caps::default() }
    }

    #[test]
    fn seam_maps() {
        let x = [0, 1, 1, 2, 2, 2];
        assert_eq!(insert_constant_segment(&x, 3, 0), vec![0, 0, 0, 0, 1, 1, 2, 2, 2]);
        assert_eq!(insert_constant_segment(&x, 3, 1), vec![0, 1, 1, 2, 2, 2, 2, 2, 2]);
        assert_eq!(insert_constant_segment(&x, 3, 2), vec![0, 1, 1, 2, 2, 2, 0, 0, 0]);
        assert_eq!(rotate_segments(&x, 3), vec![2, 2, 2, 0, 1, 1]);
    }

    #[test]
    fn hexagon_tower_is_pre_cocyclic() {
        let g = build_cycle_graph(6, Rational::from_int(6)).unwrap();
        let tower = assemble_precocyclic(&g, &spec(3), 3).unwrap();
        let rep = validate_relations(&tower.pre);
        assert!(rep.passed, "{rep}");
        let expect = BTreeMap::from([(-1, 1), (0, 1)]);
        for l in 1..=3 {
            assert_eq!(cohomology_dims(tower.pre.complex(l)).unwrap(), expect);
        }
        // cofaces are isomorphisms on homology
        for l in 1..3 {
            let (a, b) = (tower.pre.complex(l), tower.pre.complex(l + 1));
            let (ha, hb) = (cohomology_basis(a).unwrap(), cohomology_basis(b).unwrap());
            for i in 0..=l {
                for q in [-1, 0] {
                    assert_eq!(rank(&induced_map(tower.pre.coface(l, i), a, b, &ha, &hb, q).unwrap()).unwrap(), 1);
                }
            }
        }
    }

    #[test]
    fn diagonal_inclusion_commutes() {
        let g = build_cycle_graph(6, Rational::from_int(6)).unwrap();
        let tower = assemble_precocyclic(&g, &spec(3), 3).unwrap();
        let diag = diagonal_model(&g, &tower).unwrap();
        assert!(validate_relations(&diag.pre).passed);
        assert!(diag.inclusion.verify(&diag.pre, &tower.pre).passed);
        for l in 1..=3 {
            assert_eq!(diag.levels[l - 1].tuples.len(), 6);
        }
    }

    #[test]
    fn structure_maps_compose() {
        let g = build_cycle_graph(6, Rational::from_int(6)).unwrap();
        let grid: Vec<Rational> = [0, 3, 4].iter().map(|&t| Rational::from_int(t)).collect();
        let (towers, maps) = persistence_inclusions(&g, &spec(0), 2, &grid).unwrap();
        assert_eq!((towers[0].levels[0].tuples.len(), towers[1].levels[0].tuples.len()), (6, 42));
        let direct = persistence_map(&towers[0], &towers[2]).unwrap();
        let composite = maps[0].then(&maps[1], &towers[0].pre, &towers[1].pre, &towers[2].pre).unwrap();
        for l in 1..=2 {
            let c = towers[0].pre.complex(l);
            for q in c.degrees() {
                assert_eq!(direct.levels[l - 1].get(q, c, towers[2].pre.complex(l)), composite.levels[l - 1].get(q, c, towers[2].pre.complex(l)));
            }
        }
        for m in &maps {
            assert!(m.verify(&towers[0].pre, &towers[1].pre).passed || m.levels.len() == 2);
        }
        assert!(maps[0].verify(&towers[0].pre, &towers[1].pre).passed);
        let same = persistence_map(&towers[1], &towers[1]).unwrap();
        assert_eq!(same, PreCocyclicMap::identity(&towers[1].pre));
    }
}
