//! Exact values `a + b√D` with rational `a`, `b` and square-free `D`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadValue {
    a: BigRational,
    b: BigRational,
    d: i64,
}

/// Splits `n = s² · d` with `d` square-free, by trial division.
pub fn squarefree_split(n: i64) -> (u64, i64) {
    assert!(n != 0, "square-free part of zero");
    let sign = n.signum();
    let mut m = n.unsigned_abs();
    let mut s = 1u64;
    let mut d = 1u64;
    let mut p = 2u64;
    while p * p <= m {
        let mut e = 0;
        while m % p == 0 {
            m /= p;
            e += 1;
        }
        s *= p.pow(e / 2);
        if e % 2 == 1 {
            d *= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    d *= m;
    (s, sign * d as i64)
}

impl QuadValue {
    /// Builds `a + b√r` for any nonzero integer `r`, pulling square factors
    /// out of the radicand.
    pub fn new(a: BigRational, b: BigRational, r: i64) -> Self {
        if b.is_zero() {
            return QuadValue { a, b, d: 1 };
        }
        let (s, d) = squarefree_split(r);
        if d == 1 {
            return QuadValue { a: a + b * BigInt::from(s), b: BigRational::zero(), d: 1 };
        }
        QuadValue { a, b: b * BigInt::from(s), d }
    }

    pub fn rational(a: BigRational) -> Self {
        QuadValue { a, b: BigRational::zero(), d: 1 }
    }

    pub fn from_int(x: impl Into<BigInt>) -> Self {
        QuadValue::rational(BigRational::from_integer(x.into()))
    }

    pub fn zero() -> Self {
        QuadValue::from_int(0)
    }

    pub fn a(&self) -> &BigRational {
        &self.a
    }

    pub fn b(&self) -> &BigRational {
        &self.b
    }

    pub fn radicand(&self) -> i64 {
        self.d
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// Integer value, if the value is a rational integer.
    pub fn as_integer(&self) -> Option<BigInt> {
        (self.is_rational() && self.a.is_integer()).then(|| self.a.to_integer())
    }

    /// Complex conjugate: flips `√D` only when `D < 0`.
    pub fn conj(&self) -> Self {
        if self.d < 0 {
            self.galois()
        } else {
            self.clone()
        }
    }

    /// The Galois conjugate `a − b√D`.
    pub fn galois(&self) -> Self {
        QuadValue { a: self.a.clone(), b: -self.b.clone(), d: self.d }
    }

    /// Squared complex absolute value `x · conj(x)`; rational when `D < 0`.
    pub fn abs_sq(&self) -> QuadValue {
        self.try_mul(&self.conj()).expect("a value and its conjugate share a radicand")
    }

    fn common_radicand(&self, other: &Self) -> Result<i64> {
        match (self.is_rational(), other.is_rational()) {
            (true, _) => Ok(other.d),
            (_, true) => Ok(self.d),
            _ if self.d == other.d => Ok(self.d),
            _ => Err(Error::Arithmetic(format!("mixed radicands √{} and √{}", self.d, other.d))),
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        let d = self.common_radicand(other)?;
        Ok(QuadValue::normalized(&self.a + &other.a, &self.b + &other.b, d))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        let d = self.common_radicand(other)?;
        let dd = BigRational::from_integer(BigInt::from(d));
        let a = &self.a * &other.a + &self.b * &other.b * dd;
        let b = &self.a * &other.b + &self.b * &other.a;
        Ok(QuadValue::normalized(a, b, d))
    }

    fn normalized(a: BigRational, b: BigRational, d: i64) -> Self {
        let d = if b.is_zero() { 1 } else { d };
        QuadValue { a, b, d }
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        QuadValue::normalized(&self.a * k, &self.b * k, self.d)
    }

    /// `(2a, 2b)` as integers when the value lies in `½ℤ[√D]`.
    pub fn doubled_parts(&self) -> Option<(BigInt, BigInt)> {
        let two = BigRational::from_integer(2.into());
        let x = &self.a * &two;
        let y = &self.b * &two;
        (x.is_integer() && y.is_integer()).then(|| (x.to_integer(), y.to_integer()))
    }

    /// Approximate complex value, display only.
    pub fn to_f64_pair(&self) -> (f64, f64) {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        if self.d < 0 {
            (a, b * (-self.d as f64).sqrt())
        } else {
            (a + b * (self.d as f64).sqrt(), 0.0)
        }
    }
}

impl Add for &QuadValue {
    type Output = QuadValue;
    fn add(self, rhs: &QuadValue) -> QuadValue {
        self.try_add(rhs).expect("QuadValue addition")
    }
}

impl Sub for &QuadValue {
    type Output = QuadValue;
    fn sub(self, rhs: &QuadValue) -> QuadValue {
        self.try_add(&-rhs).expect("QuadValue subtraction")
    }
}

impl Mul for &QuadValue {
    type Output = QuadValue;
    fn mul(self, rhs: &QuadValue) -> QuadValue {
        self.try_mul(rhs).expect("QuadValue multiplication")
    }
}

impl Neg for &QuadValue {
    type Output = QuadValue;
    fn neg(self) -> QuadValue {
        QuadValue { a: -self.a.clone(), b: -self.b.clone(), d: self.d }
    }
}

impl fmt::Display for QuadValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return write!(f, "{}", self.a);
        }
        let sign = if self.b.is_negative() { "-" } else { "+" };
        let babs = self.b.abs();
        let coef = if babs.is_one() { String::new() } else { format!("{babs}*") };
        write!(f, "{} {} {}sqrt({})", self.a, sign, coef, self.d)
    }
}

#[derive(Serialize, Deserialize)]
struct QuadWire {
    a_num: String,
    a_den: String,
    b_num: String,
    b_den: String,
    #[serde(rename = "D")]
    d: String,
}

impl Serialize for QuadValue {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        QuadWire {
            a_num: self.a.numer().to_string(),
            a_den: self.a.denom().to_string(),
            b_num: self.b.numer().to_string(),
            b_den: self.b.denom().to_string(),
            d: self.d.to_string(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for QuadValue {
    fn deserialize<De: serde::Deserializer<'de>>(de: De) -> std::result::Result<Self, De::Error> {
        use serde::de::Error as _;
        let w = QuadWire::deserialize(de)?;
        let int = |s: &str| s.parse::<BigInt>().map_err(De::Error::custom);
        let rat = |n: &str, d: &str| -> std::result::Result<BigRational, De::Error> {
            let den = int(d)?;
            if den.is_zero() {
                return Err(De::Error::custom("zero denominator"));
            }
            Ok(BigRational::new(int(n)?, den))
        };
        let d: i64 = w.d.parse().map_err(De::Error::custom)?;
        let a = rat(&w.a_num, &w.a_den)?;
        let b = rat(&w.b_num, &w.b_den)?;
        if d == 0 || (!b.is_zero() && squarefree_split(d) != (1, d)) {
            return Err(De::Error::custom(format!("radicand {d} is not square-free")));
        }
        Ok(QuadValue::new(a, b, d))
    }
}
