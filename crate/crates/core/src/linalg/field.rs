//! Coefficient fields and the arithmetic used by the elimination routines.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::LinalgError;

/// Largest characteristic accepted for prime fields. Products of two
/// residues must fit comfortably in `u128`, and primality is checked by
/// trial division.
pub const MAX_CHARACTERISTIC: u64 = u32::MAX as u64;

/// The coefficient field of a computation: the rationals or a prime field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldSpec {
    Rationals,
    PrimeField(u64),
}

impl FieldSpec {
    /// Prime field of characteristic `p`; rejects composites and `p` above
    /// [`MAX_CHARACTERISTIC`].
    pub fn prime(p: u64) -> Result<Self, LinalgError> {
        if p > MAX_CHARACTERISTIC || !is_prime(p) {
            return Err(LinalgError::NotPrime(p));
        }
        Ok(FieldSpec::PrimeField(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::PrimeField(p) => *p,
        }
    }

    /// Map a rational number to its canonical representative in this field
    /// (itself over Q, the residue in `0..p` over F_p).
    pub fn reduce(&self, q: &BigRational) -> Result<BigRational, LinalgError> {
        match self {
            FieldSpec::Rationals => Ok(q.clone()),
            FieldSpec::PrimeField(p) => {
                let fp = PrimeArith::new(*p);
                let e = fp.embed(q)?;
                Ok(BigRational::from_integer(BigInt::from(e)))
            }
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "q"),
            FieldSpec::PrimeField(p) => write!(f, "fp:{p}"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = LinalgError;

    /// Accepts `q` or `fp:<prime>`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("q") {
            return Ok(FieldSpec::Rationals);
        }
        if let Some(rest) = t.strip_prefix("fp:") {
            let p: u64 = rest
                .trim()
                .parse()
                .map_err(|_| LinalgError::BadFieldSpec(s.to_string()))?;
            return FieldSpec::prime(p);
        }
        Err(LinalgError::BadFieldSpec(s.to_string()))
    }
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

/// Field arithmetic over a concrete element representation.
pub(crate) trait FieldArith {
    type Elem: Clone + PartialEq + fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse; callers never pass zero.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    fn embed(&self, q: &BigRational) -> Result<Self::Elem, LinalgError>;
    fn lift(&self, a: &Self::Elem) -> BigRational;
}

pub(crate) struct RationalArith;

impl FieldArith for RationalArith {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
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
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        a.recip()
    }
    fn embed(&self, q: &BigRational) -> Result<BigRational, LinalgError> {
        Ok(q.clone())
    }
    fn lift(&self, a: &BigRational) -> BigRational {
        a.clone()
    }
}

pub(crate) struct PrimeArith {
    p: u64,
}

impl PrimeArith {
    pub(crate) fn new(p: u64) -> Self {
        PrimeArith { p }
    }

    pub(crate) fn modulus(&self) -> u64 {
        self.p
    }

    fn residue(&self, n: &BigInt) -> u64 {
        let p = BigInt::from(self.p);
        n.mod_floor(&p).to_u64().expect("residue fits in u64")
    }

    pub(crate) fn pow(&self, mut base: u64, mut e: u64) -> u64 {
        let mut acc = 1u64;
        base %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }
}

impl FieldArith for PrimeArith {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + *b as u128) % self.p as u128) as u64
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + self.p as u128 - *b as u128) % self.p as u128) as u64
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u64) -> u64 {
        self.pow(*a, self.p - 2)
    }
    fn embed(&self, q: &BigRational) -> Result<u64, LinalgError> {
        let num = self.residue(q.numer());
        let den = self.residue(q.denom());
        if den == 0 {
            return Err(LinalgError::NotInField {
                value: q.to_string(),
                characteristic: self.p,
            });
        }
        Ok(self.mul(&num, &self.inv(&den)))
    }
    fn lift(&self, a: &u64) -> BigRational {
        BigRational::from_integer(BigInt::from(*a))
    }
}

/// Integer coefficients for fraction-free elimination. `i128` reports
/// overflow through `None`, so callers can retry with `BigInt`.
pub(crate) trait FractionFreeInt: Clone + fmt::Debug {
    fn from_bigint(n: &BigInt) -> Option<Self>;
    fn is_zero(&self) -> bool;
    /// `a*x - b*y`
    fn mul_sub(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self>;
    fn gcd(&self, other: &Self) -> Self;
    fn div_exact(&self, d: &Self) -> Self;
    fn is_unit(&self) -> bool;
}

impl FractionFreeInt for i128 {
    fn from_bigint(n: &BigInt) -> Option<Self> {
        n.to_i128()
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn mul_sub(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self> {
        a.checked_mul(*x)?.checked_sub(b.checked_mul(*y)?)
    }
    fn gcd(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn div_exact(&self, d: &Self) -> Self {
        self / d
    }
    fn is_unit(&self) -> bool {
        *self == 1 || *self == -1
    }
}

impl FractionFreeInt for BigInt {
    fn from_bigint(n: &BigInt) -> Option<Self> {
        Some(n.clone())
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn mul_sub(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self> {
        Some(a * x - b * y)
    }
    fn gcd(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn div_exact(&self, d: &Self) -> Self {
        self / d
    }
    fn is_unit(&self) -> bool {
        self.abs().is_one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_field_specs() {
        assert_eq!("q".parse::<FieldSpec>().unwrap(), FieldSpec::Rationals);
        assert_eq!(
            "fp:7".parse::<FieldSpec>().unwrap(),
            FieldSpec::PrimeField(7)
        );
        assert!(matches!(
            "fp:9".parse::<FieldSpec>(),
            Err(LinalgError::NotPrime(9))
        ));
        assert!("r".parse::<FieldSpec>().is_err());
        assert_eq!(FieldSpec::PrimeField(3).to_string(), "fp:3");
    }

    #[test]
    fn prime_field_embeds_fractions() {
        let f = PrimeArith::new(7);
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        assert_eq!(f.embed(&half).unwrap(), 4);
        let minus_one = BigRational::from_integer(BigInt::from(-1));
        assert_eq!(f.embed(&minus_one).unwrap(), 6);
        let bad = BigRational::new(BigInt::from(1), BigInt::from(7));
        assert!(f.embed(&bad).is_err());
        assert_eq!(f.mul(&f.inv(&3), &3), 1);
    }
}
