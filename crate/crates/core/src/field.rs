//! Exact coefficient fields: the rationals and prime fields.
//!
//! A [`Coeff`] carries enough information to do arithmetic on its own, so
//! polynomials can be added and multiplied without a ring handle. Mixing
//! coefficients of different fields is a logic error and panics; the public
//! constructors never produce such mixtures.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The coefficient field of a ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldSpec {
    #[serde(rename = "QQ")]
    Rationals,
    #[serde(rename = "Fp")]
    Prime(u64),
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl FieldSpec {
    pub fn prime(p: u64) -> Result<Self> {
        // the product of two residues must fit in u128 with room to spare
        if !is_prime(p) || p >= (1 << 62) {
            return Err(Error::NotPrime(p));
        }
        Ok(FieldSpec::Prime(p))
    }

    /// Checks the invariant for values that bypassed [`FieldSpec::prime`],
    /// e.g. after deserialization.
    pub fn validate(&self) -> Result<()> {
        match self {
            FieldSpec::Rationals => Ok(()),
            FieldSpec::Prime(p) => Self::prime(*p).map(|_| ()),
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> Coeff {
        self.from_i64(0)
    }

    pub fn one(&self) -> Coeff {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Coeff {
        match self {
            FieldSpec::Rationals => Coeff::Rational(BigRational::from_integer(BigInt::from(n))),
            FieldSpec::Prime(p) => Coeff::Modular {
                value: n.rem_euclid(*p as i64) as u64,
                modulus: *p,
            },
        }
    }

    pub fn from_bigint(&self, n: &BigInt) -> Coeff {
        match self {
            FieldSpec::Rationals => Coeff::Rational(BigRational::from_integer(n.clone())),
            FieldSpec::Prime(p) => {
                let m = BigInt::from(*p);
                let r = n.mod_floor(&m);
                Coeff::Modular {
                    value: r.to_u64().expect("residue fits"),
                    modulus: *p,
                }
            }
        }
    }

    /// `num / den`; fails when `den` vanishes in the field.
    pub fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Option<Coeff> {
        let d = self.from_bigint(den);
        let inv = d.inv()?;
        Some(&self.from_bigint(num) * &inv)
    }

    /// Whether `c` belongs to this field.
    pub fn owns(&self, c: &Coeff) -> bool {
        match (self, c) {
            (FieldSpec::Rationals, Coeff::Rational(_)) => true,
            (FieldSpec::Prime(p), Coeff::Modular { modulus, .. }) => p == modulus,
            _ => false,
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "QQ"),
            FieldSpec::Prime(p) => write!(f, "ZZ/{p}"),
        }
    }
}

/// A field element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Coeff {
    Rational(BigRational),
    Modular { value: u64, modulus: u64 },
}

fn pow_mod(base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u128;
    let mut b = base as u128 % m as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m as u128;
        }
        b = b * b % m as u128;
        exp >>= 1;
    }
    acc as u64
}

impl Coeff {
    pub fn is_zero(&self) -> bool {
        match self {
            Coeff::Rational(q) => q.is_zero(),
            Coeff::Modular { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Coeff::Rational(q) => q.is_one(),
            Coeff::Modular { value, .. } => *value == 1,
        }
    }

    pub fn field(&self) -> FieldSpec {
        match self {
            Coeff::Rational(_) => FieldSpec::Rationals,
            Coeff::Modular { modulus, .. } => FieldSpec::Prime(*modulus),
        }
    }

    pub fn zero_like(&self) -> Coeff {
        self.field().zero()
    }

    pub fn inv(&self) -> Option<Coeff> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Coeff::Rational(q) => Coeff::Rational(q.recip()),
            Coeff::Modular { value, modulus } => Coeff::Modular {
                value: pow_mod(*value, modulus - 2, *modulus),
                modulus: *modulus,
            },
        })
    }

    /// Whether the printed form starts with a minus sign.
    pub fn is_negative_repr(&self) -> bool {
        match self {
            Coeff::Rational(q) => q.is_negative(),
            Coeff::Modular { value, modulus } => *value > modulus / 2,
        }
    }

    /// Integer numerator/denominator of the symmetric representative.
    pub fn to_ratio(&self) -> (BigInt, BigInt) {
        match self {
            Coeff::Rational(q) => (q.numer().clone(), q.denom().clone()),
            Coeff::Modular { value, modulus } => {
                let v = if *value > modulus / 2 {
                    *value as i128 - *modulus as i128
                } else {
                    *value as i128
                };
                (BigInt::from(v), BigInt::one())
            }
        }
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (n, d) = self.to_ratio();
        if d.is_one() {
            write!(f, "{n}")
        } else {
            write!(f, "{n}/{d}")
        }
    }
}

fn same_modulus(a: u64, b: u64) -> u64 {
    assert_eq!(a, b, "coefficients from different prime fields");
    a
}

impl Add for &Coeff {
    type Output = Coeff;
    fn add(self, rhs: &Coeff) -> Coeff {
        match (self, rhs) {
            (Coeff::Rational(a), Coeff::Rational(b)) => Coeff::Rational(a + b),
            (Coeff::Modular { value: a, modulus: p }, Coeff::Modular { value: b, modulus: q }) => {
                let m = same_modulus(*p, *q);
                Coeff::Modular {
                    value: ((*a as u128 + *b as u128) % m as u128) as u64,
                    modulus: m,
                }
            }
            _ => panic!("coefficients from different fields"),
        }
    }
}

impl Sub for &Coeff {
    type Output = Coeff;
    fn sub(self, rhs: &Coeff) -> Coeff {
        self + &(-rhs)
    }
}

impl Mul for &Coeff {
    type Output = Coeff;
    fn mul(self, rhs: &Coeff) -> Coeff {
        match (self, rhs) {
            (Coeff::Rational(a), Coeff::Rational(b)) => Coeff::Rational(a * b),
            (Coeff::Modular { value: a, modulus: p }, Coeff::Modular { value: b, modulus: q }) => {
                let m = same_modulus(*p, *q);
                Coeff::Modular {
                    value: ((*a as u128 * *b as u128) % m as u128) as u64,
                    modulus: m,
                }
            }
            _ => panic!("coefficients from different fields"),
        }
    }
}

impl Neg for &Coeff {
    type Output = Coeff;
    fn neg(self) -> Coeff {
        match self {
            Coeff::Rational(a) => Coeff::Rational(-a),
            Coeff::Modular { value, modulus } => Coeff::Modular {
                value: (modulus - value) % modulus,
                modulus: *modulus,
            },
        }
    }
}

impl Neg for Coeff {
    type Output = Coeff;
    fn neg(self) -> Coeff {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_check() {
        assert!(FieldSpec::prime(101).is_ok());
        assert!(matches!(FieldSpec::prime(100), Err(Error::NotPrime(100))));
        assert!(FieldSpec::prime(1).is_err());
    }

    #[test]
    fn modular_inverse() {
        let f = FieldSpec::prime(101).unwrap();
        for n in 1..101 {
            let c = f.from_i64(n);
            assert!((&c * &c.inv().unwrap()).is_one());
        }
        assert!(f.zero().inv().is_none());
    }

    #[test]
    fn symmetric_display() {
        let f = FieldSpec::prime(101).unwrap();
        assert_eq!(f.from_i64(-1).to_string(), "-1");
        assert_eq!(f.from_i64(50).to_string(), "50");
        assert_eq!(f.from_i64(51).to_string(), "-50");
        let q = FieldSpec::Rationals;
        let half = q.from_ratio(&BigInt::from(-1), &BigInt::from(2)).unwrap();
        assert_eq!(half.to_string(), "-1/2");
    }

    #[test]
    fn ratio_in_prime_field() {
        let f = FieldSpec::prime(7).unwrap();
        let c = f.from_ratio(&BigInt::from(1), &BigInt::from(2)).unwrap();
        assert_eq!(c, f.from_i64(4));
        assert!(f.from_ratio(&BigInt::from(1), &BigInt::from(14)).is_none());
    }
}
