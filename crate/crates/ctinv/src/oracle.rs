//! The answer for the circle, derived from its closed geodesics.
//!
//! On a circle of length `L`, loops of length at most `T` fall into
//! components by winding number `w` with `|w| L <= T`. The constant
//! component is a copy of the circle with trivial rotation; every other
//! component retracts onto a single free rotation orbit of geodesics.

use std::collections::BTreeMap;

use exactalg::Rational;
use mixed::Barcode;

/// Expected invariants of the circle at one `T`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleRow {
    pub t: Rational,
    /// Winding numbers of the components present.
    pub windings: Vec<i64>,
    /// Non-equivariant dimensions in raised degrees 0 and 1.
    pub noneq: BTreeMap<i64, usize>,
    /// `S¹` module: free bars from the constants, a bar `K[u]/u` in degree
    /// 0 for every nonconstant component.
    pub s1: Barcode,
}

/// Components and modules of the circle of length `length` at `t`.
pub fn circle_oracle(length: &Rational, t: &Rational) -> OracleRow {
    assert!(length.signum() > 0, "circle length must be positive");
    let w = if t.signum() < 0 { -1 } else { t.mul(&length.inv()).floor().to_i64().expect("winding bound fits i64") };
    let windings: Vec<i64> = (-w..=w).collect();
    let n = windings.len();
    let mut s1 = Barcode { free: vec![0, 1], torsion: vec![(0, 1); n.saturating_sub(1)] };
    if n == 0 {
        s1.free.clear();
    }
    OracleRow { t: t.clone(), windings, noneq: [(0, n), (1, n)].into_iter().filter(|p| p.1 > 0).collect(), s1 }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> Rational {
        Rational::from_int(n)
    }

    #[test]
    fn components_grow_at_multiples_of_the_length() {
        let dims: Vec<usize> = [0, 3, 6, 9, 12].iter().map(|&t| circle_oracle(&r(6), &r(t)).noneq[&0]).collect();
        assert_eq!(dims, vec![1, 1, 3, 3, 5]);
    }

    #[test]
    fn s1_dims_follow_the_bars() {
        let row = circle_oracle(&r(6), &r(6));
        assert_eq!(row.s1.dim(0), 3);
        assert_eq!(row.s1.dim(1), 1);
        assert_eq!(row.s1.dim(2), 1);
    }
}
