use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The exact field that scalars live in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ScalarField {
    Rationals,
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

impl ScalarField {
    /// The prime field of order `p`; fails when `p` is not prime.
    pub fn prime(p: u64) -> Result<Self> {
        if is_prime(p) && p < (1u64 << 62) {
            Ok(ScalarField::Prime(p))
        } else {
            Err(Error::invalid(format!("{p} is not a supported prime")))
        }
    }

    pub fn zero(self) -> Scalar {
        match self {
            ScalarField::Rationals => Scalar::Rational(BigRational::zero()),
            ScalarField::Prime(p) => Scalar::Modular { value: 0, modulus: p },
        }
    }

    pub fn one(self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(self, n: i64) -> Scalar {
        match self {
            ScalarField::Rationals => Scalar::Rational(BigRational::from_integer(BigInt::from(n))),
            ScalarField::Prime(p) => Scalar::Modular {
                value: (n as i128).rem_euclid(p as i128) as u64,
                modulus: p,
            },
        }
    }

    /// `n / d` in this field.
    pub fn from_ratio(self, n: i64, d: i64) -> Result<Scalar> {
        let den = self.from_i64(d);
        let inv = den
            .inv()
            .ok_or_else(|| Error::invalid(format!("{d} is not invertible in {self}")))?;
        Ok(&self.from_i64(n) * &inv)
    }

    fn from_bigrational(self, q: &BigRational) -> Result<Scalar> {
        match self {
            ScalarField::Rationals => Ok(Scalar::Rational(q.clone())),
            ScalarField::Prime(p) => {
                let pb = BigInt::from(p);
                let reduce = |n: &BigInt| -> u64 { n.mod_floor(&pb).to_u64().unwrap_or(0) };
                let num = Scalar::Modular { value: reduce(q.numer()), modulus: p };
                let den = Scalar::Modular { value: reduce(q.denom()), modulus: p };
                let inv = den
                    .inv()
                    .ok_or_else(|| Error::invalid(format!("denominator of {q} vanishes mod {p}")))?;
                Ok(&num * &inv)
            }
        }
    }

    /// Parses `"3"`, `"-2/5"` and similar literals.
    pub fn parse(self, text: &str) -> Result<Scalar> {
        let text = text.trim();
        let bad = || Error::invalid(format!("cannot parse scalar {text:?}"));
        let q = match text.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(bad());
                }
                BigRational::new(n, d)
            }
            None => BigRational::from_integer(text.parse().map_err(|_| bad())?),
        };
        self.from_bigrational(&q)
    }

    pub fn contains(self, s: &Scalar) -> bool {
        s.field() == self
    }

    /// Number of elements, `None` for the rationals.
    pub fn order(self) -> Option<u64> {
        match self {
            ScalarField::Rationals => None,
            ScalarField::Prime(p) => Some(p),
        }
    }
}

impl fmt::Display for ScalarField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalarField::Rationals => write!(f, "Q"),
            ScalarField::Prime(p) => write!(f, "F{p}"),
        }
    }
}

impl std::str::FromStr for ScalarField {
    type Err = Error;

    /// Accepts `Q`, `F7`, `Fp7` and `GF(7)` style names.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("q") || t.eq_ignore_ascii_case("rationals") {
            return Ok(ScalarField::Rationals);
        }
        let digits: String = t.chars().filter(|c| c.is_ascii_digit()).collect();
        let prefix_ok = t.starts_with('F') || t.starts_with('f') || t.starts_with("GF") || t.starts_with("gf");
        if prefix_ok && !digits.is_empty() {
            let p: u64 = digits.parse().map_err(|_| Error::invalid(format!("bad field {s:?}")))?;
            return ScalarField::prime(p);
        }
        Err(Error::invalid(format!("unknown field {s:?}")))
    }
}

/// An element of a [`ScalarField`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Modular { value: u64, modulus: u64 },
}

impl Scalar {
    pub fn field(&self) -> ScalarField {
        match self {
            Scalar::Rational(_) => ScalarField::Rationals,
            Scalar::Modular { modulus, .. } => ScalarField::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Modular { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Modular { value, .. } => *value == 1,
        }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rational(q) => Scalar::Rational(q.recip()),
            Scalar::Modular { value, modulus } => Scalar::Modular {
                value: pow_mod(*value, modulus - 2, *modulus),
                modulus: *modulus,
            },
        })
    }

    /// `self += a * b`, the inner loop of elimination.
    pub fn add_mul(&mut self, a: &Scalar, b: &Scalar) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        match (&mut *self, a, b) {
            (Scalar::Rational(s), Scalar::Rational(x), Scalar::Rational(y)) => {
                *s += x * y;
            }
            (Scalar::Modular { value, modulus }, Scalar::Modular { value: x, .. }, Scalar::Modular { value: y, .. }) => {
                let p = *modulus as u128;
                *value = ((*value as u128 + (*x as u128) * (*y as u128) % p) % p) as u64;
            }
            _ => panic!("scalars from different fields"),
        }
    }

    /// `self -= a * b`.
    pub fn sub_mul(&mut self, a: &Scalar, b: &Scalar) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        let neg = -a;
        self.add_mul(&neg, b);
    }

    /// The rational value, when this is a rational scalar.
    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(q) => Some(q),
            Scalar::Modular { .. } => None,
        }
    }

    /// Small integer value when the scalar is one (used for JSON output).
    pub fn as_small_integer(&self) -> Option<i64> {
        match self {
            Scalar::Rational(q) if q.is_integer() => q.numer().to_i64(),
            Scalar::Rational(_) => None,
            Scalar::Modular { value, .. } => i64::try_from(*value).ok(),
        }
    }
}

fn pow_mod(base: u64, mut exp: u64, m: u64) -> u64 {
    let m128 = m as u128;
    let mut acc: u128 = 1 % m128;
    let mut b = (base % m) as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m128;
        }
        b = b * b % m128;
        exp >>= 1;
    }
    acc as u64
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => {
                if q.is_integer() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Scalar::Modular { value, .. } => write!(f, "{value}"),
        }
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Modular { value: a, modulus }, Scalar::Modular { value: b, modulus: q }) if modulus == q => {
                Scalar::Modular {
                    value: ((*a as u128 + *b as u128) % *modulus as u128) as u64,
                    modulus: *modulus,
                }
            }
            _ => panic!("scalars from different fields"),
        }
    }
}

impl<'a> Neg for &'a Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Modular { value, modulus } => Scalar::Modular {
                value: if *value == 0 { 0 } else { modulus - value },
                modulus: *modulus,
            },
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Modular { value: a, modulus }, Scalar::Modular { value: b, modulus: q }) if modulus == q => {
                Scalar::Modular {
                    value: ((*a as u128 * *b as u128) % *modulus as u128) as u64,
                    modulus: *modulus,
                }
            }
            _ => panic!("scalars from different fields"),
        }
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        &self + &rhs
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        &self - &rhs
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_arithmetic() {
        let f = ScalarField::prime(7).unwrap();
        let a = f.from_i64(3);
        let b = f.from_i64(5);
        assert_eq!(&a + &b, f.from_i64(1));
        assert_eq!(&a * &b, f.from_i64(1));
        assert_eq!(a.inv().unwrap(), b);
        assert_eq!(-&a, f.from_i64(4));
        assert!(f.zero().inv().is_none());
    }

    #[test]
    fn parse_round_trips() {
        let q = ScalarField::Rationals;
        let s = q.parse("-6/4").unwrap();
        assert_eq!(s.to_string(), "-3/2");
        let f = ScalarField::Prime(5);
        assert_eq!(f.parse("1/2").unwrap(), f.from_i64(3));
        assert!(f.parse("1/5").is_err());
        assert!(q.parse("x").is_err());
    }

    #[test]
    fn rejects_composite_moduli() {
        assert!(ScalarField::prime(9).is_err());
        assert!(ScalarField::prime(1).is_err());
        assert_eq!("F2".parse::<ScalarField>().unwrap(), ScalarField::Prime(2));
        assert_eq!("Q".parse::<ScalarField>().unwrap(), ScalarField::Rationals);
    }
}
