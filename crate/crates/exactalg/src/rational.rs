//! Exact rationals in lowest terms with an inline machine-word fast path.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::integer::{gcd_u64, Integer};
use crate::ExactError;

/// A rational number stored in lowest terms with a positive denominator.
/// Values whose numerator and denominator fit in `i64` are stored inline.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Rational {
    Small(i64, i64),
    Big(BigRational),
}

fn canon_i128(n: i128, d: i128) -> Rational {
    debug_assert!(d != 0);
    let (mut n, mut d) = (n, d);
    if d < 0 {
        n = -n;
        d = -d;
    }
    let g = gcd_u128(n.unsigned_abs(), d as u128) as i128;
    let (n, d) = (n / g, d / g);
    match (i64::try_from(n), i64::try_from(d)) {
        (Ok(a), Ok(b)) => Rational::Small(a, b),
        _ => Rational::from_big(BigRational::new(BigInt::from(n), BigInt::from(d))),
    }
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    if a == 0 {
        return b.max(1);
    }
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl Rational {
    pub fn zero() -> Self {
        Rational::Small(0, 1)
    }

    pub fn one() -> Self {
        Rational::Small(1, 1)
    }

    pub fn from_int(v: i64) -> Self {
        Rational::Small(v, 1)
    }

    pub fn from_integer(v: &Integer) -> Self {
        match v {
            Integer::Small(a) => Rational::Small(*a, 1),
            Integer::Big(b) => Rational::from_big(BigRational::from_integer(b.clone())),
        }
    }

    /// Builds `n/d` in lowest terms; panics on a zero denominator.
    pub fn new(n: i64, d: i64) -> Self {
        assert!(d != 0, "zero denominator");
        canon_i128(n as i128, d as i128)
    }

    pub fn from_big(b: BigRational) -> Self {
        match (b.numer().to_i64(), b.denom().to_i64()) {
            (Some(n), Some(d)) => Rational::Small(n, d),
            _ => Rational::Big(b),
        }
    }

    pub fn to_big(&self) -> BigRational {
        match self {
            Rational::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Rational::Big(b) => b.clone(),
        }
    }

    pub fn numer(&self) -> Integer {
        match self {
            Rational::Small(n, _) => Integer::Small(*n),
            Rational::Big(b) => Integer::from_big(b.numer().clone()),
        }
    }

    pub fn denom(&self) -> Integer {
        match self {
            Rational::Small(_, d) => Integer::Small(*d),
            Rational::Big(b) => Integer::from_big(b.denom().clone()),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Rational::Small(0, _))
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Rational::Small(1, 1))
    }

    pub fn is_integer(&self) -> bool {
        matches!(self, Rational::Small(_, 1)) || matches!(self, Rational::Big(b) if b.is_integer())
    }

    pub fn add(&self, o: &Self) -> Self {
        if let (Rational::Small(a, b), Rational::Small(c, d)) = (self, o) {
            if b == d {
                return canon_i128(*a as i128 + *c as i128, *b as i128);
            }
            let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
            if let (Some(x), Some(y)) = (a.checked_mul(d), c.checked_mul(b)) {
                if let (Some(n), Some(m)) = (x.checked_add(y), b.checked_mul(d)) {
                    return canon_i128(n, m);
                }
            }
        }
        Rational::from_big(self.to_big() + o.to_big())
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if let (Rational::Small(a, b), Rational::Small(c, d)) = (self, o) {
            if *a == 0 || *c == 0 {
                return Rational::zero();
            }
            let g1 = gcd_u64(a.unsigned_abs(), d.unsigned_abs()) as i128;
            let g2 = gcd_u64(c.unsigned_abs(), b.unsigned_abs()) as i128;
            let n = (*a as i128 / g1) * (*c as i128 / g2);
            let m = (*b as i128 / g2) * (*d as i128 / g1);
            return canon_i128(n, m);
        }
        Rational::from_big(self.to_big() * o.to_big())
    }

    pub fn neg(&self) -> Self {
        match self {
            Rational::Small(n, d) if *n != i64::MIN => Rational::Small(-n, *d),
            _ => Rational::from_big(-self.to_big()),
        }
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        match self {
            Rational::Small(n, d) => canon_i128(*d as i128, *n as i128),
            Rational::Big(b) => Rational::from_big(b.recip()),
        }
    }

    pub fn signum(&self) -> i32 {
        match self {
            Rational::Small(n, _) => n.signum() as i32,
            Rational::Big(b) => {
                if b.is_zero() {
                    0
                } else if b.is_positive() {
                    1
                } else {
                    -1
                }
            }
        }
    }

    /// Largest integer not above the value.
    pub fn floor(&self) -> Integer {
        Integer::from_big(self.to_big().floor().to_integer())
    }

    /// Serializes as `"p/q"`, or `"p"` when the denominator is one.
    pub fn to_pq(&self) -> String {
        if self.is_integer() {
            format!("{}", self.numer())
        } else {
            format!("{}/{}", self.numer(), self.denom())
        }
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Rational::Small(a, b), Rational::Small(c, d)) => {
                (*a as i128 * *d as i128).cmp(&(*c as i128 * *b as i128))
            }
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_pq())
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_pq())
    }
}

impl FromStr for Rational {
    type Err = ExactError;

    /// Accepts `"p"`, `"p/q"` and finite decimals such as `"-1.25"`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ExactError::Parse(s.to_string());
        let t = s.trim();
        if let Some((p, q)) = t.split_once('/') {
            let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
            let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            return Ok(Rational::from_big(BigRational::new(p, q)));
        }
        if let Some((ip, fp)) = t.split_once('.') {
            if fp.is_empty() || !fp.chars().all(|c| c.is_ascii_digit()) {
                return Err(bad());
            }
            let neg = ip.starts_with('-');
            let ip_digits = ip.trim_start_matches(['-', '+']);
            let whole = if ip_digits.is_empty() {
                BigInt::zero()
            } else {
                BigInt::from_str(ip_digits).map_err(|_| bad())?
            };
            let frac = BigInt::from_str(fp).map_err(|_| bad())?;
            let scale = num_traits::pow(BigInt::from(10), fp.len());
            let mut n = whole * &scale + frac;
            if neg {
                n = -n;
            }
            return Ok(Rational::from_big(BigRational::new(n, scale)));
        }
        let n = BigInt::from_str(t).map_err(|_| bad())?;
        Ok(Rational::from_big(BigRational::new(n, BigInt::one())))
    }
}
