//! Exact ground fields.
//!
//! Arithmetic goes through a field *context* value so that prime fields can
//! carry their modulus at runtime. `Rationals` is a zero-sized context over
//! arbitrary precision fractions; `PrimeField` stores `p < 2^31`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Runtime description of a ground field, as given on the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldSpec {
    Rationals,
    Prime(u32),
}

impl FieldSpec {
    pub fn characteristic(&self) -> u32 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::Prime(p) => *p,
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "q"),
            FieldSpec::Prime(p) => write!(f, "f{p}"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    /// Accepts `q` (also `Q`, `rationals`) or `f<p>` / `gf<p>` with `p` prime.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().to_ascii_lowercase();
        if t == "q" || t == "rationals" {
            return Ok(FieldSpec::Rationals);
        }
        let digits = t
            .strip_prefix("gf")
            .or_else(|| t.strip_prefix('f'))
            .ok_or_else(|| Error::InvalidField(s.to_string()))?;
        let p: u64 = digits
            .parse()
            .map_err(|_| Error::InvalidField(s.to_string()))?;
        if p >= (1u64 << 31) || !is_prime(p) {
            return Err(Error::InvalidField(s.to_string()));
        }
        Ok(FieldSpec::Prime(p as u32))
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// A field context. Elements are plain values; all operations go through
/// the context so the modulus of a prime field never has to live inside
/// each element.
pub trait Field: Clone + fmt::Debug + PartialEq + Send + Sync + 'static {
    type Elem: Clone + fmt::Debug + PartialEq + Send + Sync;

    fn spec(&self) -> FieldSpec;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    #[allow(clippy::wrong_self_convention)]
    fn from_i64(&self, v: i64) -> Self::Elem;
    /// `num / den`, or `None` when `den` vanishes in the field.
    #[allow(clippy::wrong_self_convention)]
    fn from_ratio(&self, num: i64, den: i64) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse. Panics on zero.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    fn render(&self, a: &Self::Elem) -> String;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    /// `a - c * b`, the elimination kernel.
    fn sub_mul(&self, a: &Self::Elem, c: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.sub(a, &self.mul(c, b))
    }
}

/// The rational numbers with exact big-integer fractions.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn spec(&self) -> FieldSpec {
        FieldSpec::Rationals
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn from_ratio(&self, num: i64, den: i64) -> Option<BigRational> {
        if den == 0 {
            None
        } else {
            Some(BigRational::new(BigInt::from(num), BigInt::from(den)))
        }
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        assert!(!a.is_zero(), "inverse of zero");
        a.recip()
    }
    fn render(&self, a: &BigRational) -> String {
        if a.denom().is_one() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }
    fn is_one(&self, a: &BigRational) -> bool {
        a.is_one()
    }
    fn sub_mul(&self, a: &BigRational, c: &BigRational, b: &BigRational) -> BigRational {
        if c.is_zero() || b.is_zero() {
            return a.clone();
        }
        if c.is_integer() && b.is_integer() && a.is_integer() {
            return BigRational::from_integer(a.numer() - c.numer() * b.numer());
        }
        a - c * b
    }
}

/// `GF(p)` for a prime `p < 2^31`. Elements are canonical residues.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        if (p as u64) >= (1u64 << 31) || !is_prime(p as u64) {
            return Err(Error::InvalidField(format!("f{p}")));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    fn reduce(&self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }

    fn pow(&self, base: u32, mut exp: u32) -> u32 {
        let p = self.p as u64;
        let mut acc = 1u64;
        let mut b = base as u64 % p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * b % p;
            }
            b = b * b % p;
            exp >>= 1;
        }
        acc as u32
    }
}

impl Field for PrimeField {
    type Elem = u32;

    fn spec(&self) -> FieldSpec {
        FieldSpec::Prime(self.p)
    }
    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1 % self.p
    }
    fn from_i64(&self, v: i64) -> u32 {
        self.reduce(v)
    }
    fn from_ratio(&self, num: i64, den: i64) -> Option<u32> {
        let d = self.reduce(den);
        if d == 0 {
            None
        } else {
            Some(self.mul(&self.reduce(num), &self.inv(&d)))
        }
    }
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    fn add(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 + *b as u64) % self.p as u64) as u32
    }
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 + self.p as u64 - *b as u64) % self.p as u64) as u32
    }
    fn neg(&self, a: &u32) -> u32 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 * *b as u64) % self.p as u64) as u32
    }
    fn inv(&self, a: &u32) -> u32 {
        assert!(*a != 0, "inverse of zero");
        self.pow(*a, self.p - 2)
    }
    fn render(&self, a: &u32) -> String {
        a.to_string()
    }
}

/// Parses an entry such as `3`, `-2` or `1/3` into the field.
pub fn parse_entry<F: Field>(field: &F, text: &str) -> Result<F::Elem> {
    let t = text.trim();
    let bad = || Error::Parse(format!("invalid field entry `{text}`"));
    match t.split_once('/') {
        Some((n, d)) => {
            let n: i64 = n.trim().parse().map_err(|_| bad())?;
            let d: i64 = d.trim().parse().map_err(|_| bad())?;
            field.from_ratio(n, d).ok_or_else(bad)
        }
        None => {
            let n: i64 = t.parse().map_err(|_| bad())?;
            Ok(field.from_i64(n))
        }
    }
}

/// Sign helper used for incidence numbers.
pub fn sign<F: Field>(field: &F, s: i8) -> F::Elem {
    if s >= 0 {
        field.one()
    } else {
        field.neg(&field.one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_field_specs() {
        assert_eq!("q".parse::<FieldSpec>().unwrap(), FieldSpec::Rationals);
        assert_eq!("f2".parse::<FieldSpec>().unwrap(), FieldSpec::Prime(2));
        assert_eq!("GF3".parse::<FieldSpec>().unwrap(), FieldSpec::Prime(3));
        assert!("f4".parse::<FieldSpec>().is_err());
        assert!("f".parse::<FieldSpec>().is_err());
        assert!("f2147483659".parse::<FieldSpec>().is_err());
        assert!("r".parse::<FieldSpec>().is_err());
    }

    #[test]
    fn prime_field_arithmetic() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(f.mul(&3, &5), 1);
        assert_eq!(f.inv(&3), 5);
        assert_eq!(f.from_i64(-1), 6);
        assert_eq!(f.from_ratio(1, 2), Some(4));
        assert_eq!(f.from_ratio(1, 7), None);
        assert_eq!(f.sub(&2, &5), 4);
        for a in 1..7 {
            assert_eq!(f.mul(&a, &f.inv(&a)), 1);
        }
    }

    #[test]
    fn rational_entries() {
        let q = Rationals;
        let x = parse_entry(&q, "-3/6").unwrap();
        assert_eq!(q.render(&x), "-1/2");
        assert!(parse_entry(&q, "1/0").is_err());
        assert!(parse_entry(&q, "abc").is_err());
        assert_eq!(
            q.sub_mul(&q.from_i64(5), &q.from_i64(2), &q.from_i64(3)),
            q.from_i64(-1)
        );
    }
}
