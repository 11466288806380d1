//! The loop product on the first level of the circle model.
//!
//! Classes live in raised degree 0 (one-cycles of a component) and 1
//! (points of a component). Every component of loops on the circle is
//! detected by two functionals: the coefficient sum of a 0-chain, and the
//! winding of the seam point along a 1-cycle. A product of two classes is
//! computed on explicit representatives: rotation orbits of a loop for
//! one-cycles, a single loop for points. Pairs of representatives whose
//! seam points agree are counted with the sign of the crossing and then
//! concatenated into loops of `2N` points at `2 max(T_A, T_B)`, which
//! bounds every step of the concatenation by the larger budget.

use std::collections::BTreeMap;

use chain::Report;
use exactalg::{rank, Domain, Rational, Scalar, SparseMatrix, SparseVec};
use loopmodel::{satisfies, Budget, LevelChains, MetricGraph, ModelKind};

use crate::pipeline::{noneq_stage, NoneqStage, Params};
use crate::CtError;

/// A class by its coefficient on each winding number.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CircleClass {
    /// Grid point the class is taken at; for products, the target level.
    pub t: Rational,
    /// Raised degree: 0 for one-cycles, 1 for points.
    pub degree: i64,
    pub coeffs: BTreeMap<i64, Scalar>,
}

impl CircleClass {
    pub fn zero(t: Rational, degree: i64) -> Self {
        CircleClass { t, degree, coeffs: BTreeMap::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Equality after inclusion into a common larger `T`.
    pub fn same_class(&self, other: &CircleClass) -> bool {
        self.coeffs == other.coeffs && (self.degree == other.degree || self.is_zero())
    }

    fn add_term(&mut self, w: i64, c: Scalar) {
        let v = self.coeffs.get(&w).map_or(c.clone(), |a| a.add(&c));
        if v.is_zero() {
            self.coeffs.remove(&w);
        } else {
            self.coeffs.insert(w, v);
        }
    }

    pub fn scale(&self, a: &Scalar) -> CircleClass {
        let mut out = CircleClass::zero(self.t.clone(), self.degree);
        for (&w, c) in &self.coeffs {
            out.add_term(w, c.mul(a));
        }
        out
    }
}

struct Point {
    stage: NoneqStage,
    /// Winding number of every tuple.
    windings: Vec<i64>,
}

/// The first levels of the circle model at a set of `T` values.
pub struct LoopProduct {
    g: MetricGraph,
    m: usize,
    n_points: usize,
    domain: Domain,
    points: BTreeMap<Rational, Point>,
}

fn lifted_step(m: usize, a: u32, b: u32) -> i64 {
    let d = (b as i64 - a as i64).rem_euclid(m as i64);
    if d == 0 {
        0
    } else if d == 1 {
        1
    } else if d == m as i64 - 1 {
        -1
    } else {
        panic!("seam moved by more than one edge")
    }
}

fn winding(m: usize, x: &[u32]) -> i64 {
    let total: i64 = (0..x.len()).map(|k| lifted_step(m, x[k], x[(k + 1) % x.len()])).sum();
    total / m as i64
}

fn rotate(m: usize, x: &[u32], v: usize) -> Vec<u32> {
    x.iter().map(|&a| ((a as usize + v) % m) as u32).collect()
}

/// Sign of the crossing of two seam curves with slopes `f` and `g` in the
/// direction `(ds, dr)`: the orientation of (normal, tangent).
fn crossing_sign(f: i64, g: i64, ds: i64, dr: i64) -> i64 {
    (f * dr + g * ds).signum()
}

impl LoopProduct {
    pub fn new(g: &MetricGraph, p: &Params, ts: &[Rational]) -> Result<LoopProduct, CtError> {
        let ModelKind::Cycle { m } = g.kind else { return Err(CtError::CircleOnly) };
        p.domain.require_field()?;
        if p.domain.characteristic() != 0 && (m as u64).is_multiple_of(p.domain.characteristic()) {
            return Err(CtError::config("coeff", format!("characteristic divides m = {m}")));
        }
        let mut points = BTreeMap::new();
        for t in ts {
            let stage = noneq_stage(g, p, t)?;
            let windings = stage.level().tuples.iter().map(|x| winding(m, x)).collect();
            points.insert(t.clone(), Point { stage, windings });
        }
        Ok(LoopProduct { g: g.clone(), m, n_points: p.n_points, domain: p.domain, points })
    }

    fn point(&self, t: &Rational) -> Result<&Point, CtError> {
        self.points.get(t).ok_or_else(|| CtError::config("grid", format!("T = {t} was not prepared")))
    }

    /// Detector values of a raised cocycle `z` in degree `q`.
    fn detect(&self, pt: &Point, t: &Rational, q: i64, z: &SparseVec) -> Result<CircleClass, CtError> {
        let level = pt.stage.level();
        let mut out = CircleClass::zero(t.clone(), q);
        let inv_m = self.domain.from_i64(self.m as i64).inv()?;
        for (i, c) in z.entries() {
            match q {
                0 => {
                    let e = level.flag.simplices[1].get(level.top_basis(*i));
                    let (a, b) = (level.tuples.get(e[0] as usize), level.tuples.get(e[1] as usize));
                    let s = lifted_step(self.m, a[0], b[0]);
                    if s != 0 {
                        out.add_term(pt.windings[e[0] as usize], c.mul(&self.domain.from_i64(s)).mul(&inv_m));
                    }
                }
                1 => out.add_term(pt.windings[*i], c.clone()),
                _ => {}
            }
        }
        Ok(out)
    }

    /// The computed basis of the first level in raised degree `q`.
    pub fn basis_classes(&self, t: &Rational, q: i64) -> Result<Vec<CircleClass>, CtError> {
        let pt = self.point(t)?;
        let basis = pt.stage.basis.as_ref().expect("field coefficients");
        let Some(b) = basis.degree(q) else { return Ok(Vec::new()) };
        b.reps.iter().map(|z| self.detect(pt, t, q, z)).collect()
    }

    /// The detectors are an isomorphism on the computed cohomology at every
    /// prepared `T`.
    pub fn detector_report(&self) -> Result<Report, CtError> {
        let mut rep = Report::new("loop component detectors");
        for (t, pt) in &self.points {
            let ws: Vec<i64> = {
                let mut w = pt.windings.clone();
                w.sort_unstable();
                w.dedup();
                w
            };
            for q in [0, 1] {
                let classes = self.basis_classes(t, q)?;
                let cols = classes
                    .iter()
                    .map(|c| SparseVec::from_pairs(ws.iter().enumerate().filter_map(|(i, w)| c.coeffs.get(w).map(|a| (i, a.clone()))).collect()))
                    .collect();
                let m = SparseMatrix::from_columns(ws.len(), self.domain, cols);
                let ok = classes.len() == ws.len() && rank(&m)? == ws.len();
                rep.require(ok, || format!("T = {t}, degree {q}: {} classes on {} components", classes.len(), ws.len()));
            }
        }
        Ok(rep)
    }

    /// A loop of winding `w` in the first level at `t`.
    fn base_loop(&self, t: &Rational, w: i64) -> Result<Vec<u32>, CtError> {
        let pt = self.point(t)?;
        let level = pt.stage.level();
        let i = pt.windings.iter().position(|&x| x == w).ok_or_else(|| CtError::config("grid", format!("no loop of winding {w} at T = {t}")))?;
        Ok(level.tuples.get(i).to_vec())
    }

    /// The rotation orbit of `x` as a 1-chain of `level`.
    fn orbit_chain(&self, level: &LevelChains, x: &[u32]) -> Result<SparseVec, CtError> {
        let mut terms = Vec::new();
        for v in 0..self.m {
            let a = level.tuples.index_of(&rotate(self.m, x, v));
            let b = level.tuples.index_of(&rotate(self.m, x, v + 1));
            let (Some(a), Some(b)) = (a, b) else { return Err(CtError::FundamentalClassLost("rotation orbit leaves the level".into())) };
            terms.push((vec![a as u32, b as u32], 1));
        }
        Ok(level.chain(1, &terms)?)
    }

    /// The class of a component: its rotation orbit in degree 0, one of
    /// its loops in degree 1, checked against the detectors.
    pub fn generator(&self, t: &Rational, w: i64, q: i64) -> Result<CircleClass, CtError> {
        let pt = self.point(t)?;
        let x = self.base_loop(t, w)?;
        let level = pt.stage.level();
        let z = match q {
            0 => self.orbit_chain(level, &x)?,
            1 => SparseVec::unit(level.tuples.index_of(&x).expect("base loop is a tuple"), self.domain),
            _ => return Err(CtError::config("degree", format!("{q} is not 0 or 1"))),
        };
        let c = self.detect(pt, t, q, &z)?;
        let mut unit = CircleClass::zero(t.clone(), q);
        unit.add_term(w, self.domain.one());
        if c != unit {
            return Err(CtError::FundamentalClassLost(format!("representative of winding {w} in degree {q} is detected as {:?}", c.coeffs)));
        }
        Ok(c)
    }

    /// Product of the generators of windings `wa`, `wb` in degrees `qa`, `qb`.
    fn product_of_generators(&self, ta: &Rational, wa: i64, qa: i64, tb: &Rational, wb: i64, qb: i64) -> Result<CircleClass, CtError> {
        let target_t = if ta > tb { ta.mul(&Rational::from_int(2)) } else { tb.mul(&Rational::from_int(2)) };
        let mut out = CircleClass::zero(target_t.clone(), qa + qb);
        if qa + qb > 1 {
            return Ok(out);
        }
        let budget = Budget::new(&self.g, 2 * self.n_points, 1, &target_t)?;
        let (x, y) = (self.base_loop(ta, wa)?, self.base_loop(tb, wb)?);
        let m = self.m;
        // One-cycles run over the orbit with seam slope 1; points stay put.
        let sa: Vec<usize> = if qa == 0 { (0..m).collect() } else { vec![0] };
        let sb: Vec<usize> = if qb == 0 { (0..m).collect() } else { vec![0] };
        let (fa, fb) = (i64::from(qa == 0), i64::from(qb == 0));
        let mut curve = Vec::new();
        for &v in &sa {
            for &v2 in &sb {
                let (xa, yb) = (rotate(m, &x, v), rotate(m, &y, v2));
                if xa[0] == yb[0] {
                    curve.push((v, v2, [xa, yb].concat()));
                }
            }
        }
        for (_, _, z) in &curve {
            if !satisfies(&self.g, &budget, z) {
                return Err(CtError::FundamentalClassLost(format!("concatenation {z:?} exceeds T = {target_t}")));
            }
        }
        let dom = self.domain;
        if qa + qb == 1 {
            // isolated crossings, counted by the slope of the moving seam
            for (_, _, z) in &curve {
                let s = (fa + fb).signum();
                out.add_term(winding(m, z), dom.from_i64(s));
            }
        } else {
            // the crossing curve, walked in the diagonal direction
            curve.sort_by_key(|c| c.0);
            let inv_m = dom.from_i64(m as i64).inv()?;
            for k in 0..curve.len() {
                let (z0, z1) = (&curve[k].2, &curve[(k + 1) % curve.len()].2);
                let s = crossing_sign(fa, fb, 1, 1) * lifted_step(m, z0[0], z1[0]);
                out.add_term(winding(m, z0), dom.from_i64(s).mul(&inv_m));
            }
        }
        Ok(out)
    }

    /// The product of two classes, extended bilinearly from generators.
    pub fn product(&self, a: &CircleClass, b: &CircleClass) -> Result<CircleClass, CtError> {
        let target_t = if a.t > b.t { a.t.mul(&Rational::from_int(2)) } else { b.t.mul(&Rational::from_int(2)) };
        let mut out = CircleClass::zero(target_t, a.degree + b.degree);
        for (&wa, ca) in &a.coeffs {
            for (&wb, cb) in &b.coeffs {
                let g = self.product_of_generators(&a.t, wa, a.degree, &b.t, wb, b.degree)?;
                for (w, c) in g.coeffs {
                    out.add_term(w, c.mul(ca).mul(cb));
                }
            }
        }
        Ok(out)
    }

    /// At a prepared `T`: the unit law for the fundamental class at `t0`
    /// against every computed class, and graded commutativity on every
    /// computed pair.
    pub fn law_report(&self, t0: &Rational, ts: &[Rational]) -> Result<Report, CtError> {
        let mut rep = Report::new("loop product laws");
        let unit = self.generator(t0, 0, 0)?;
        let mut classes = Vec::new();
        for t in ts {
            for q in [0, 1] {
                classes.extend(self.basis_classes(t, q)?);
            }
        }
        for x in &classes {
            let ux = self.product(&unit, x)?;
            rep.require(ux.same_class(x), || format!("unit fails on the left for {:?} at T = {}: {:?}", x.coeffs, x.t, ux));
            rep.require(self.product(x, &unit)?.same_class(x), || format!("unit fails on the right for {:?} at T = {}", x.coeffs, x.t));
        }
        for x in &classes {
            for y in &classes {
                let sign = if x.degree * y.degree % 2 == 0 { self.domain.one() } else { self.domain.one().neg() };
                let xy = self.product(x, y)?;
                let yx = self.product(y, x)?.scale(&sign);
                rep.require(xy.same_class(&yx), || format!("graded commutativity fails for {:?} and {:?}", x.coeffs, y.coeffs));
            }
        }
        Ok(rep)
    }
}

/// The product of the degree-0 generators of windings `wa` at `ta` and `wb`
/// at `tb` on the circle model.
pub fn loop_product_circle(g: &MetricGraph, p: &Params, ta: &Rational, wa: i64, tb: &Rational, wb: i64) -> Result<CircleClass, CtError> {
    let lp = LoopProduct::new(g, p, &[ta.clone(), tb.clone()])?;
    let a = lp.generator(ta, wa, 0)?;
    let b = lp.generator(tb, wb, 0)?;
    lp.product(&a, &b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use loopmodel::{build_cycle_graph, build_point_graph, Caps};

    fn params() -> Params {
        Params { n_points: 6, n_cap: 2, u_order: 0, domain: Domain::Rational, caps: Caps::default() }
    }

    #[test]
    fn unit_law_and_commutativity_at_small_t() {
        let g = build_cycle_graph(6, Rational::from_int(6)).unwrap();
        let ts = [Rational::from_int(0), Rational::from_int(6)];
        let lp = LoopProduct::new(&g, &params(), &ts).unwrap();
        assert!(lp.detector_report().unwrap().passed);
        let rep = lp.law_report(&ts[0], &ts).unwrap();
        assert!(rep.passed, "{rep}");
    }

    #[test]
    fn windings_add() {
        let g = build_cycle_graph(6, Rational::from_int(6)).unwrap();
        let six = Rational::from_int(6);
        let c = loop_product_circle(&g, &params(), &six, 1, &six, 1).unwrap();
        assert_eq!(c.degree, 0);
        assert_eq!(c.coeffs, BTreeMap::from([(2, Domain::Rational.one())]));
        assert_eq!(c.t, Rational::from_int(12));
    }

    #[test]
    fn point_is_out_of_scope() {
        let r = LoopProduct::new(&build_point_graph(), &params(), &[Rational::zero()]);
        assert!(matches!(r, Err(CtError::CircleOnly)));
    }
}
