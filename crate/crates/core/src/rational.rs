//! Exact rational scalars, extended naturals and p-adic valuations.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always stored reduced with a positive denominator.
pub type Rational = num_rational::BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Formats as `num/den`, the canonical wire form.
pub fn rat_to_wire(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Accepts `n`, `n/d` and optional surrounding whitespace.
pub fn rat_from_str(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("bad rational literal `{s}`"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Short display: integers without denominator.
pub fn rat_display(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// A natural number or infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ExtNat {
    Fin(u32),
    Infinity,
}

impl ExtNat {
    pub fn is_infinite(self) -> bool {
        matches!(self, ExtNat::Infinity)
    }

    pub fn finite(self) -> Option<u32> {
        match self {
            ExtNat::Fin(n) => Some(n),
            ExtNat::Infinity => None,
        }
    }
}

impl PartialOrd for ExtNat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtNat {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (ExtNat::Fin(a), ExtNat::Fin(b)) => a.cmp(b),
            (ExtNat::Fin(_), ExtNat::Infinity) => Ordering::Less,
            (ExtNat::Infinity, ExtNat::Fin(_)) => Ordering::Greater,
            (ExtNat::Infinity, ExtNat::Infinity) => Ordering::Equal,
        }
    }
}

impl std::ops::Add for ExtNat {
    type Output = ExtNat;
    fn add(self, rhs: ExtNat) -> ExtNat {
        match (self, rhs) {
            (ExtNat::Fin(a), ExtNat::Fin(b)) => ExtNat::Fin(a + b),
            _ => ExtNat::Infinity,
        }
    }
}

impl fmt::Display for ExtNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtNat::Fin(n) => write!(f, "{n}"),
            ExtNat::Infinity => write!(f, "inf"),
        }
    }
}

/// An integer valuation, `Infinity` for zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Valuation {
    Fin(i64),
    Infinity,
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn vp_int(n: &BigInt, p: &BigInt) -> i64 {
    let mut n = n.abs();
    let mut k = 0;
    loop {
        let (q, r) = n.div_rem(p);
        if !r.is_zero() {
            return k;
        }
        n = q;
        k += 1;
    }
}

/// p-adic valuation of a rational.
pub fn vp(r: &Rational, prime: u64) -> Result<Valuation> {
    if !is_prime(prime) {
        return Err(Error::InvalidArgument(format!("{prime} is not prime")));
    }
    if r.is_zero() {
        return Ok(Valuation::Infinity);
    }
    let p = BigInt::from(prime);
    Ok(Valuation::Fin(vp_int(r.numer(), &p) - vp_int(r.denom(), &p)))
}

/// Whether `a` lies in the product of `k` closed unit balls and `l` open unit balls
/// for the `prime`-adic absolute value.
pub fn domain_member(a: &[Rational], k: usize, l: usize, prime: u64) -> Result<bool> {
    if a.len() != k + l {
        return Err(Error::DimensionMismatch { expected: k + l, found: a.len() });
    }
    for (i, c) in a.iter().enumerate() {
        let need = if i < k { 0 } else { 1 };
        match vp(c, prime)? {
            Valuation::Infinity => {}
            Valuation::Fin(v) if v >= need => {}
            Valuation::Fin(_) => return Ok(false),
        }
    }
    Ok(true)
}

/// Height of a rational: max of |numerator| and denominator.
pub fn height(r: &Rational) -> u64 {
    let n = r.numer().abs().to_u64().unwrap_or(u64::MAX);
    let d = r.denom().to_u64().unwrap_or(u64::MAX);
    n.max(d)
}

pub fn is_one(r: &Rational) -> bool {
    r.is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn valuations() {
        assert_eq!(vp(&rat(12), 2).unwrap(), Valuation::Fin(2));
        assert_eq!(vp(&ratio(1, 9), 3).unwrap(), Valuation::Fin(-2));
        assert_eq!(vp(&rat(0), 5).unwrap(), Valuation::Infinity);
        assert!(vp(&rat(3), 4).is_err());
    }

    #[test]
    fn unit_ball_membership() {
        assert!(domain_member(&[rat(1), rat(2)], 1, 1, 2).unwrap());
        assert!(!domain_member(&[ratio(1, 2), rat(2)], 1, 1, 2).unwrap());
        assert!(!domain_member(&[rat(3), rat(1)], 1, 1, 2).unwrap());
        assert!(domain_member(&[rat(1)], 1, 1, 2).is_err());
    }

    #[test]
    fn wire_format() {
        assert_eq!(rat_to_wire(&ratio(-2, 4)), "-1/2");
        assert_eq!(rat_from_str(" 3/6 ").unwrap(), ratio(1, 2));
        assert_eq!(rat_from_str("-7").unwrap(), rat(-7));
        assert!(rat_from_str("1/0").is_err());
    }

    #[test]
    fn extnat_order() {
        assert!(ExtNat::Infinity > ExtNat::Fin(1000));
        assert_eq!(ExtNat::Fin(2) + ExtNat::Infinity, ExtNat::Infinity);
    }
}
