//! Coefficient domains and their exact scalars.

use std::fmt;

use crate::integer::Integer;
use crate::rational::Rational;
use crate::ExactError;

/// The coefficient domain shared by every entry of a matrix or vector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Domain {
    Rational,
    /// Prime field of the given machine-word modulus.
    Prime(u64),
    Integer,
}

impl Domain {
    /// Validates the modulus of a prime field.
    pub fn prime(p: u64) -> Result<Self, ExactError> {
        if is_prime(p) && p < (1u64 << 62) {
            Ok(Domain::Prime(p))
        } else {
            Err(ExactError::NotPrime(p))
        }
    }

    pub fn is_field(self) -> bool {
        !matches!(self, Domain::Integer)
    }

    pub fn zero(self) -> Scalar {
        match self {
            Domain::Rational => Scalar::Rat(Rational::zero()),
            Domain::Prime(p) => Scalar::Mod(0, p),
            Domain::Integer => Scalar::Int(Integer::zero()),
        }
    }

    pub fn one(self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(self, v: i64) -> Scalar {
        match self {
            Domain::Rational => Scalar::Rat(Rational::from_int(v)),
            Domain::Prime(p) => Scalar::Mod((v as i128).rem_euclid(p as i128) as u64, p),
            Domain::Integer => Scalar::Int(Integer::from(v)),
        }
    }

    /// Image of an integer under the canonical ring map.
    pub fn from_integer(self, v: &Integer) -> Scalar {
        match self {
            Domain::Rational => Scalar::Rat(Rational::from_integer(v)),
            Domain::Prime(p) => Scalar::Mod(v.rem_u64(p), p),
            Domain::Integer => Scalar::Int(v.clone()),
        }
    }

    /// Requires a field domain.
    pub fn require_field(self) -> Result<(), ExactError> {
        if self.is_field() {
            Ok(())
        } else {
            Err(ExactError::FieldRequired)
        }
    }

    pub fn characteristic(self) -> u64 {
        match self {
            Domain::Prime(p) => p,
            _ => 0,
        }
    }

    /// Short tag used in reports: `Q`, `Z` or `F<p>`.
    pub fn tag(self) -> String {
        match self {
            Domain::Rational => "Q".into(),
            Domain::Integer => "Z".into(),
            Domain::Prime(p) => format!("F{p}"),
        }
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.tag())
    }
}

/// Deterministic primality test for 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

/// An exact scalar. Binary operations require both operands to come from
/// the same domain; mixing domains is a programming error and panics.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rat(Rational),
    /// Residue `value` modulo the prime `p`, with `value < p`.
    Mod(u64, u64),
    Int(Integer),
}

impl Scalar {
    pub fn domain(&self) -> Domain {
        match self {
            Scalar::Rat(_) => Domain::Rational,
            Scalar::Mod(_, p) => Domain::Prime(*p),
            Scalar::Int(_) => Domain::Integer,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Mod(v, _) => *v == 0,
            Scalar::Int(i) => i.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_one(),
            Scalar::Mod(v, _) => *v == 1,
            Scalar::Int(i) => i.is_one(),
        }
    }

    pub fn add(&self, o: &Scalar) -> Scalar {
        match (self, o) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a.add(b)),
            (Scalar::Mod(a, p), Scalar::Mod(b, q)) if p == q => {
                let s = a + b;
                Scalar::Mod(if s >= *p { s - p } else { s }, *p)
            }
            (Scalar::Int(a), Scalar::Int(b)) => Scalar::Int(a.add(b)),
            _ => panic!("domain mismatch"),
        }
    }

    pub fn sub(&self, o: &Scalar) -> Scalar {
        match (self, o) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a.sub(b)),
            (Scalar::Mod(a, p), Scalar::Mod(b, q)) if p == q => {
                Scalar::Mod(if a >= b { a - b } else { a + p - b }, *p)
            }
            (Scalar::Int(a), Scalar::Int(b)) => Scalar::Int(a.sub(b)),
            _ => panic!("domain mismatch"),
        }
    }

    pub fn mul(&self, o: &Scalar) -> Scalar {
        match (self, o) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a.mul(b)),
            (Scalar::Mod(a, p), Scalar::Mod(b, q)) if p == q => Scalar::Mod(mul_mod(*a, *b, *p), *p),
            (Scalar::Int(a), Scalar::Int(b)) => Scalar::Int(a.mul(b)),
            _ => panic!("domain mismatch"),
        }
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rat(a) => Scalar::Rat(a.neg()),
            Scalar::Mod(a, p) => Scalar::Mod(if *a == 0 { 0 } else { p - a }, *p),
            Scalar::Int(a) => Scalar::Int(a.neg()),
        }
    }

    /// Multiplicative inverse. In the integers only units are invertible.
    pub fn inv(&self) -> Result<Scalar, ExactError> {
        if self.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        match self {
            Scalar::Rat(a) => Ok(Scalar::Rat(a.inv())),
            Scalar::Mod(a, p) => Ok(Scalar::Mod(pow_mod(*a, p - 2, *p), *p)),
            Scalar::Int(a) => {
                if a.abs().is_one() {
                    Ok(self.clone())
                } else {
                    Err(ExactError::FieldRequired)
                }
            }
        }
    }

    /// `self / o` in a field; exact quotient in the integers.
    pub fn div(&self, o: &Scalar) -> Result<Scalar, ExactError> {
        match (self, o) {
            (Scalar::Int(a), Scalar::Int(b)) => {
                if b.is_zero() {
                    return Err(ExactError::DivisionByZero);
                }
                let (q, r) = a.div_rem_euclid(b);
                if r.is_zero() {
                    Ok(Scalar::Int(q))
                } else {
                    Err(ExactError::FieldRequired)
                }
            }
            _ => Ok(self.mul(&o.inv()?)),
        }
    }

    pub fn pow(&self, e: u32) -> Scalar {
        let mut r = self.domain().one();
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    pub fn as_integer(&self) -> Option<&Integer> {
        match self {
            Scalar::Int(i) => Some(i),
            _ => None,
        }
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            Scalar::Rat(r) => Some(r),
            _ => None,
        }
    }

    /// Image of an integer scalar in another domain (reduction or inclusion).
    pub fn change_domain(&self, target: Domain) -> Result<Scalar, ExactError> {
        match self {
            Scalar::Int(i) => Ok(target.from_integer(i)),
            _ if self.domain() == target => Ok(self.clone()),
            Scalar::Rat(r) if r.is_integer() => Ok(target.from_integer(&r.numer())),
            _ => Err(ExactError::DomainMismatch),
        }
    }

    /// Exact textual form: `"p/q"` for rationals, the residue for prime
    /// fields, decimal digits for integers.
    pub fn to_pq(&self) -> String {
        match self {
            Scalar::Rat(r) => r.to_pq(),
            Scalar::Mod(v, _) => v.to_string(),
            Scalar::Int(i) => i.to_string(),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_pq())
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_pq())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_arithmetic() {
        let f = Domain::prime(7).unwrap();
        let a = f.from_i64(3);
        let b = f.from_i64(-2);
        assert_eq!(a.add(&b), f.from_i64(1));
        assert_eq!(a.mul(&a.inv().unwrap()), f.one());
        assert_eq!(b, f.from_i64(5));
        assert!(Domain::prime(9).is_err());
    }

    #[test]
    fn primality() {
        let primes: Vec<u64> = (0..60).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]);
        assert!(is_prime(1_000_000_007));
        assert!(!is_prime(1_000_000_007 * 3));
    }

    #[test]
    fn integer_division_is_exact_only() {
        let z = Domain::Integer;
        assert_eq!(z.from_i64(6).div(&z.from_i64(3)).unwrap(), z.from_i64(2));
        assert!(z.from_i64(7).div(&z.from_i64(3)).is_err());
        assert!(z.from_i64(2).inv().is_err());
    }

    #[test]
    fn reduction_of_integers() {
        let f = Domain::prime(5).unwrap();
        assert_eq!(Domain::Integer.from_i64(-3).change_domain(f).unwrap(), f.from_i64(2));
    }
}
