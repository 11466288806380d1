//! The levelled data and its relations.

use chain::{CochainComplex, GradedMap, Report};
use exactalg::{Domain, SparseMatrix};

use crate::PrecyclicError;

/// One level `ℓ`: the complex `C_ℓ`, the cofaces `d_0..d_ℓ` into level
/// `ℓ + 1` (empty on the top level) and the signed cyclic operator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Level {
    pub complex: CochainComplex,
    pub cofaces: Vec<GradedMap>,
    pub cyclic: GradedMap,
}

/// Levels `1..=max_level` of a pre-cocyclic complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PreCocyclicComplex {
    domain: Domain,
    levels: Vec<Level>,
}

impl PreCocyclicComplex {
    pub fn new(domain: Domain) -> Self {
        PreCocyclicComplex { domain, levels: Vec::new() }
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn max_level(&self) -> usize {
        self.levels.len()
    }

    /// Appends the next level; returns its index (1-based).
    pub fn push_level(&mut self, complex: CochainComplex, cyclic: GradedMap) -> usize {
        self.levels.push(Level { complex, cofaces: Vec::new(), cyclic });
        self.levels.len()
    }

    /// Installs the cofaces from level `l` to `l + 1`.
    pub fn set_cofaces(&mut self, l: usize, cofaces: Vec<GradedMap>) -> Result<(), PrecyclicError> {
        if l == 0 || l >= self.levels.len() {
            return Err(PrecyclicError::LevelOverflow(l + 1, self.levels.len()));
        }
        if cofaces.len() != l + 1 {
            return Err(PrecyclicError::Shape(format!("level {l} needs {} cofaces, got {}", l + 1, cofaces.len())));
        }
        self.levels[l - 1].cofaces = cofaces;
        Ok(())
    }

    pub fn level(&self, l: usize) -> Result<&Level, PrecyclicError> {
        self.levels.get(l.wrapping_sub(1)).ok_or(PrecyclicError::LevelOverflow(l, self.levels.len()))
    }

    pub fn complex(&self, l: usize) -> &CochainComplex {
        &self.levels[l - 1].complex
    }

    pub fn coface(&self, l: usize, i: usize) -> &GradedMap {
        &self.levels[l - 1].cofaces[i]
    }

    pub fn cyclic(&self, l: usize) -> &GradedMap {
        &self.levels[l - 1].cyclic
    }

    /// The first `l` levels.
    pub fn truncated(&self, l: usize) -> PreCocyclicComplex {
        let mut levels: Vec<Level> = self.levels.iter().take(l).cloned().collect();
        if let Some(top) = levels.last_mut() {
            top.cofaces.clear();
        }
        PreCocyclicComplex { domain: self.domain, levels }
    }

    /// `C` on every level, all cofaces the identity and `t = (-1)^{ℓ-1}`
    /// on level `ℓ`: the pre-cocyclic object of a point when `C = K`.
    pub fn constant(c: &CochainComplex, max_level: usize) -> Self {
        let mut p = PreCocyclicComplex::new(c.domain());
        for l in 1..=max_level {
            p.push_level(c.clone(), GradedMap::scalar(c, if l % 2 == 1 { 1 } else { -1 }));
        }
        for l in 1..max_level {
            p.set_cofaces(l, vec![GradedMap::identity(c); l + 1]).expect("levels exist");
        }
        p
    }

    pub fn constant_point(domain: Domain, max_level: usize) -> Self {
        Self::constant(&CochainComplex::concentrated(domain, 0, 1), max_level)
    }
}

fn compose(a: &GradedMap, b: &GradedMap, src: &CochainComplex, mid: &CochainComplex, tgt: &CochainComplex) -> Option<GradedMap> {
    a.compose(b, src, mid, tgt).ok()
}

fn same(a: &GradedMap, b: &GradedMap, src: &CochainComplex, tgt: &CochainComplex) -> bool {
    src.degrees().iter().all(|&q| a.get(q, src, tgt) == b.get(q, src, tgt))
}

/// Checks shapes, chain-map laws, the coface relations
/// `d_j d_i = d_i d_{j-1}` (`i < j`), the cyclic relations
/// `t d_i = -d_{i-1} t` (`i ≥ 1`) and `t d_0 = (-1)^n d_n` into level `n + 1`,
/// and `t^ℓ = 1` on level `ℓ`. Stops at the first failure.
pub fn validate_relations(p: &PreCocyclicComplex) -> Report {
    let mut rep = Report::new("pre-cocyclic relations");
    let dom = p.domain();
    let top = p.max_level();
    for l in 1..=top {
        let lev = &p.levels[l - 1];
        let c = &lev.complex;
        if !lev.cyclic.verify(c, c).passed || lev.cyclic.shift != 0 {
            rep.fail(format!("cyclic operator at level {l} is not a degree-0 chain map"));
            return rep;
        }
        for q in c.degrees() {
            let t = lev.cyclic.get(q, c, c);
            let mut pow = SparseMatrix::identity(c.dim(q), dom);
            for _ in 0..l {
                pow = t.mul(&pow).expect("square");
            }
            if pow != SparseMatrix::identity(c.dim(q), dom) {
                rep.fail(format!("t^{l} is not the identity at level {l}, degree {q}"));
                return rep;
            }
        }
        if l == top {
            break;
        }
        if lev.cofaces.len() != l + 1 {
            rep.fail(format!("level {l} has {} cofaces, expected {}", lev.cofaces.len(), l + 1));
            return rep;
        }
        let next = &p.levels[l].complex;
        for (i, d) in lev.cofaces.iter().enumerate() {
            if d.shift != 0 || !d.verify(c, next).passed {
                rep.fail(format!("coface d_{i} at level {l} is not a chain map"));
                return rep;
            }
        }
        // cyclic relations into level n + 1 = l + 1, n = l
        let n = l;
        let t_next = &p.levels[l].cyclic;
        for i in 0..=n {
            let lhs = compose(t_next, &lev.cofaces[i], c, next, next);
            let rhs = if i == 0 {
                Some(lev.cofaces[n].scale(if n % 2 == 0 { 1 } else { -1 }, dom))
            } else {
                compose(&lev.cofaces[i - 1], &lev.cyclic, c, c, next).map(|m| m.scale(-1, dom))
            };
            match (lhs, rhs) {
                (Some(a), Some(b)) if same(&a, &b, c, next) => {}
                _ => {
                    rep.fail(format!("cyclic relation fails at (level {}, i = {i})", n + 1));
                    return rep;
                }
            }
        }
        // coface relations from level l through l + 1 into l + 2
        if l + 1 < top {
            let up = &p.levels[l];
            let next2 = &p.levels[l + 1].complex;
            if up.cofaces.len() != l + 2 {
                continue;
            }
            for j in 0..=l + 1 {
                for i in 0..j {
                    let lhs = compose(&up.cofaces[j], &lev.cofaces[i], c, next, next2);
                    let rhs = compose(&up.cofaces[i], &lev.cofaces[j - 1], c, next, next2);
                    match (lhs, rhs) {
                        (Some(a), Some(b)) if same(&a, &b, c, next2) => {}
                        _ => {
                            rep.fail(format!("coface relation fails at (level {l}, i = {i}, j = {j})"));
                            return rep;
                        }
                    }
                }
            }
        }
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_point_validates() {
        let p = PreCocyclicComplex::constant_point(Domain::Rational, 5);
        assert!(validate_relations(&p).passed);
    }

    #[test]
    fn flipped_sign_is_located() {
        let mut p = PreCocyclicComplex::constant_point(Domain::Rational, 5);
        let c = p.complex(3).clone();
        p.levels[2].cyclic = GradedMap::scalar(&c, -1);
        let r = validate_relations(&p);
        assert!(!r.passed);
        assert!(r.messages[0].contains("level 3"), "{}", r);
    }

    #[test]
    fn missing_level_overflows() {
        let p = PreCocyclicComplex::constant_point(Domain::Rational, 2);
        assert!(matches!(p.level(3), Err(PrecyclicError::LevelOverflow(3, 2))));
    }
}
