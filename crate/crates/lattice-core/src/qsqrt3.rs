//! Exact numbers of the form `a + b/√3` with rational `a`, `b`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::Rational64;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{LatticeError, LatticeResult};

/// `a + b/√3`, closed under ring operations and inversion.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct QSqrt3 {
    pub a: Rational64,
    pub b: Rational64,
}

impl QSqrt3 {
    pub const fn new(a: Rational64, b: Rational64) -> Self {
        Self { a, b }
    }

    pub fn int(a: i64) -> Self {
        Self::new(Rational64::from_integer(a), Rational64::zero())
    }

    pub fn rat(n: i64, d: i64) -> Self {
        Self::new(Rational64::new(n, d), Rational64::zero())
    }

    /// `n/d · 1/√3`
    pub fn inv_sqrt3(n: i64, d: i64) -> Self {
        Self::new(Rational64::zero(), Rational64::new(n, d))
    }

    /// `n/d · √3` (= `3n/d · 1/√3`)
    pub fn sqrt3(n: i64, d: i64) -> Self {
        Self::new(Rational64::zero(), Rational64::new(3 * n, d))
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::int(1)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// The integer value, if this number is one.
    pub fn as_integer(&self) -> Option<i64> {
        if self.b.is_zero() && self.a.is_integer() {
            Some(self.a.to_integer())
        } else {
            None
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.a.to_f64().unwrap_or(f64::NAN) + self.b.to_f64().unwrap_or(f64::NAN) / 3f64.sqrt()
    }

    /// Exact sign.
    pub fn signum(&self) -> i32 {
        let sa = sign(&self.a);
        let sb = sign(&self.b);
        if sa == sb || sb == 0 {
            return sa;
        }
        if sa == 0 {
            return sb;
        }
        // opposite signs: compare a² with b²/3
        let lhs = self.a * self.a * Rational64::from_integer(3);
        let rhs = self.b * self.b;
        match lhs.cmp(&rhs) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => 0,
        }
    }

    pub fn abs(&self) -> Self {
        if self.signum() < 0 {
            -*self
        } else {
            *self
        }
    }

    /// Multiplicative inverse; `(a − b/√3)/(a² − b²/3)`.
    pub fn recip(&self) -> LatticeResult<Self> {
        let norm = self.a * self.a - self.b * self.b / Rational64::from_integer(3);
        if norm.is_zero() {
            return Err(LatticeError::ValueError("division by zero".into()));
        }
        Ok(Self::new(self.a / norm, -self.b / norm))
    }
}

fn sign(r: &Rational64) -> i32 {
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}

impl Add for QSqrt3 {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.a + o.a, self.b + o.b)
    }
}

impl Sub for QSqrt3 {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.a - o.a, self.b - o.b)
    }
}

impl Neg for QSqrt3 {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.a, -self.b)
    }
}

impl Mul for QSqrt3 {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let three = Rational64::from_integer(3);
        Self::new(
            self.a * o.a + self.b * o.b / three,
            self.a * o.b + self.b * o.a,
        )
    }
}

impl Mul<i64> for QSqrt3 {
    type Output = Self;
    fn mul(self, k: i64) -> Self {
        let k = Rational64::from_integer(k);
        Self::new(self.a * k, self.b * k)
    }
}

impl PartialOrd for QSqrt3 {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QSqrt3 {
    fn cmp(&self, other: &Self) -> Ordering {
        (*self - *other).signum().cmp(&0)
    }
}

impl fmt::Debug for QSqrt3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for QSqrt3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", self.a),
            (true, false) => write!(f, "{}/√3", self.b),
            (false, false) => write!(f, "{} + {}/√3", self.a, self.b),
        }
    }
}

impl One for QSqrt3 {
    fn one() -> Self {
        QSqrt3::one()
    }
}

#[derive(Serialize, Deserialize)]
struct QSqrt3Repr {
    rational: String,
    sqrt3_rational: String,
}

impl Serialize for QSqrt3 {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        QSqrt3Repr {
            rational: self.a.to_string(),
            sqrt3_rational: self.b.to_string(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for QSqrt3 {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = QSqrt3Repr::deserialize(d)?;
        let a: Rational64 = r.rational.parse().map_err(serde::de::Error::custom)?;
        let b: Rational64 = r.sqrt3_rational.parse().map_err(serde::de::Error::custom)?;
        Ok(Self::new(a, b))
    }
}
