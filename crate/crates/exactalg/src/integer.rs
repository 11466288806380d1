//! Arbitrary-precision integers with an inline machine-word fast path.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{Signed, ToPrimitive};

/// An exact integer. Values that fit in an `i64` are always stored inline,
/// so structural equality coincides with numeric equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Integer {
    Small(i64),
    Big(BigInt),
}

impl Integer {
    pub fn zero() -> Self {
        Integer::Small(0)
    }

    pub fn one() -> Self {
        Integer::Small(1)
    }

    /// Canonicalizes a big value, demoting it when it fits in a machine word.
    pub fn from_big(b: BigInt) -> Self {
        match b.to_i64() {
            Some(v) => Integer::Small(v),
            None => Integer::Big(b),
        }
    }

    pub fn to_big(&self) -> BigInt {
        match self {
            Integer::Small(v) => BigInt::from(*v),
            Integer::Big(b) => b.clone(),
        }
    }

    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Integer::Small(v) => Some(*v),
            Integer::Big(_) => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Integer::Small(0))
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Integer::Small(1))
    }

    pub fn signum(&self) -> i32 {
        match self {
            Integer::Small(v) => v.signum() as i32,
            Integer::Big(b) => {
                if b.is_negative() {
                    -1
                } else {
                    1
                }
            }
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        if let (Integer::Small(a), Integer::Small(b)) = (self, o) {
            if let Some(c) = a.checked_add(*b) {
                return Integer::Small(c);
            }
        }
        Integer::from_big(self.to_big() + o.to_big())
    }

    pub fn sub(&self, o: &Self) -> Self {
        if let (Integer::Small(a), Integer::Small(b)) = (self, o) {
            if let Some(c) = a.checked_sub(*b) {
                return Integer::Small(c);
            }
        }
        Integer::from_big(self.to_big() - o.to_big())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if let (Integer::Small(a), Integer::Small(b)) = (self, o) {
            if let Some(c) = a.checked_mul(*b) {
                return Integer::Small(c);
            }
        }
        Integer::from_big(self.to_big() * o.to_big())
    }

    pub fn neg(&self) -> Self {
        if let Integer::Small(a) = self {
            if let Some(c) = a.checked_neg() {
                return Integer::Small(c);
            }
        }
        Integer::from_big(-self.to_big())
    }

    pub fn abs(&self) -> Self {
        if self.signum() < 0 {
            self.neg()
        } else {
            self.clone()
        }
    }

    /// Floor division and remainder with `0 <= r < |o|`.
    pub fn div_rem_euclid(&self, o: &Self) -> (Self, Self) {
        assert!(!o.is_zero(), "division by zero");
        if let (Integer::Small(a), Integer::Small(b)) = (self, o) {
            if let (Some(q), Some(r)) = (a.checked_div_euclid(*b), a.checked_rem_euclid(*b)) {
                return (Integer::Small(q), Integer::Small(r));
            }
        }
        let a = self.to_big();
        let b = o.to_big();
        let mut r = a.mod_floor(&b.abs());
        if r.is_negative() {
            r += b.abs();
        }
        let q = (&a - &r) / &b;
        (Integer::from_big(q), Integer::from_big(r))
    }

    /// Exact division; panics when `o` does not divide `self`.
    pub fn div_exact(&self, o: &Self) -> Self {
        let (q, r) = self.div_rem_euclid(o);
        assert!(r.is_zero(), "inexact integer division");
        q
    }

    pub fn gcd(&self, o: &Self) -> Self {
        if let (Integer::Small(a), Integer::Small(b)) = (self, o) {
            let g = gcd_u64(a.unsigned_abs(), b.unsigned_abs());
            if g <= i64::MAX as u64 {
                return Integer::Small(g as i64);
            }
        }
        Integer::from_big(self.to_big().gcd(&o.to_big()))
    }

    /// Extended gcd: returns `(g, x, y)` with `g = x*self + y*o`, `g >= 0`.
    pub fn ext_gcd(&self, o: &Self) -> (Self, Self, Self) {
        let e = self.to_big().extended_gcd(&o.to_big());
        let (mut g, mut x, mut y) = (e.gcd, e.x, e.y);
        if g.is_negative() {
            g = -g;
            x = -x;
            y = -y;
        }
        (Integer::from_big(g), Integer::from_big(x), Integer::from_big(y))
    }

    /// Residue in `[0, p)`.
    pub fn rem_u64(&self, p: u64) -> u64 {
        match self {
            Integer::Small(v) => (*v as i128).rem_euclid(p as i128) as u64,
            Integer::Big(b) => b.mod_floor(&BigInt::from(p)).to_u64().expect("residue fits"),
        }
    }
}

pub(crate) fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl From<i64> for Integer {
    fn from(v: i64) -> Self {
        Integer::Small(v)
    }
}

impl From<BigInt> for Integer {
    fn from(b: BigInt) -> Self {
        Integer::from_big(b)
    }
}

impl PartialOrd for Integer {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Integer {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Integer::Small(a), Integer::Small(b)) => a.cmp(b),
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl fmt::Display for Integer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Integer::Small(v) => write!(f, "{v}"),
            Integer::Big(b) => write!(f, "{b}"),
        }
    }
}

impl fmt::Debug for Integer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overflow_promotes_and_demotes() {
        let a = Integer::Small(i64::MAX);
        let b = a.add(&Integer::one());
        assert!(matches!(b, Integer::Big(_)));
        let c = b.sub(&Integer::one());
        assert_eq!(c, Integer::Small(i64::MAX));
    }

    #[test]
    fn euclid_remainder_is_nonnegative() {
        let (q, r) = Integer::from(-7).div_rem_euclid(&Integer::from(3));
        assert_eq!((q, r), (Integer::from(-3), Integer::from(2)));
        let (q, r) = Integer::from(7).div_rem_euclid(&Integer::from(-3));
        assert_eq!((q, r), (Integer::from(-2), Integer::from(1)));
    }

    #[test]
    fn ext_gcd_identity() {
        let a = Integer::from(240);
        let b = Integer::from(46);
        let (g, x, y) = a.ext_gcd(&b);
        assert_eq!(g, Integer::from(2));
        assert_eq!(x.mul(&a).add(&y.mul(&b)), g);
    }

    #[test]
    fn min_value_negation() {
        let a = Integer::Small(i64::MIN);
        assert_eq!(a.neg().neg(), a);
        assert_eq!(a.abs().signum(), 1);
    }
}
