//! Arbitrary-precision integer multiplicities.
//!
//! Almost every multiplicity met in practice fits in a machine word, so the
//! value is kept inline as an `i64` and only promoted to a heap-allocated
//! [`BigInt`] when an operation overflows. A `Big` value never holds a number
//! that fits in `i64`, so equality and hashing work structurally.

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mult(Repr);

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    Small(i64),
    Big(BigInt),
}

impl Mult {
    pub const ZERO: Mult = Mult(Repr::Small(0));
    pub const ONE: Mult = Mult(Repr::Small(1));

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small(0))
    }

    pub fn is_positive(&self) -> bool {
        match &self.0 {
            Repr::Small(v) => *v > 0,
            Repr::Big(b) => b.is_positive(),
        }
    }

    pub fn is_negative(&self) -> bool {
        match &self.0 {
            Repr::Small(v) => *v < 0,
            Repr::Big(b) => b.is_negative(),
        }
    }

    /// The value as an `i64`, if it fits.
    pub fn to_i64(&self) -> Option<i64> {
        match &self.0 {
            Repr::Small(v) => Some(*v),
            Repr::Big(_) => None,
        }
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.to_i64().and_then(|v| u64::try_from(v).ok())
    }

    pub fn to_bigint(&self) -> BigInt {
        match &self.0 {
            Repr::Small(v) => BigInt::from(*v),
            Repr::Big(b) => b.clone(),
        }
    }

    fn from_big(b: BigInt) -> Self {
        match b.to_i64() {
            Some(v) => Mult(Repr::Small(v)),
            None => Mult(Repr::Big(b)),
        }
    }

    /// `self += a * b`, the inner step of every convolution.
    pub fn add_product(&mut self, a: &Mult, b: &Mult) {
        if let (Repr::Small(x), Repr::Small(y), Repr::Small(s)) = (&a.0, &b.0, &self.0) {
            if let Some(v) = x.checked_mul(*y).and_then(|xy| s.checked_add(xy)) {
                self.0 = Repr::Small(v);
                return;
            }
        }
        *self = Mult::from_big(self.to_bigint() + a.to_bigint() * b.to_bigint());
    }
}

impl Default for Mult {
    fn default() -> Self {
        Mult::ZERO
    }
}

macro_rules! from_small {
    ($($t:ty),*) => {$(
        impl From<$t> for Mult {
            fn from(v: $t) -> Self {
                Mult(Repr::Small(i64::from(v)))
            }
        }
    )*};
}
from_small!(i8, i16, i32, i64, u8, u16, u32);

impl From<u64> for Mult {
    fn from(v: u64) -> Self {
        match i64::try_from(v) {
            Ok(s) => Mult(Repr::Small(s)),
            Err(_) => Mult(Repr::Big(BigInt::from(v))),
        }
    }
}

impl From<i128> for Mult {
    fn from(v: i128) -> Self {
        match i64::try_from(v) {
            Ok(s) => Mult(Repr::Small(s)),
            Err(_) => Mult(Repr::Big(BigInt::from(v))),
        }
    }
}

impl From<BigInt> for Mult {
    fn from(b: BigInt) -> Self {
        Mult::from_big(b)
    }
}

impl Ord for Mult {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Small(a), Repr::Small(b)) => a.cmp(b),
            _ => self.to_bigint().cmp(&other.to_bigint()),
        }
    }
}

impl PartialOrd for Mult {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl AddAssign<&Mult> for Mult {
    fn add_assign(&mut self, rhs: &Mult) {
        if let (Repr::Small(a), Repr::Small(b)) = (&self.0, &rhs.0) {
            if let Some(v) = a.checked_add(*b) {
                self.0 = Repr::Small(v);
                return;
            }
        }
        *self = Mult::from_big(self.to_bigint() + rhs.to_bigint());
    }
}

impl SubAssign<&Mult> for Mult {
    fn sub_assign(&mut self, rhs: &Mult) {
        if let (Repr::Small(a), Repr::Small(b)) = (&self.0, &rhs.0) {
            if let Some(v) = a.checked_sub(*b) {
                self.0 = Repr::Small(v);
                return;
            }
        }
        *self = Mult::from_big(self.to_bigint() - rhs.to_bigint());
    }
}

impl Add<&Mult> for &Mult {
    type Output = Mult;
    fn add(self, rhs: &Mult) -> Mult {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for Mult {
    type Output = Mult;
    fn add(mut self, rhs: Mult) -> Mult {
        self += &rhs;
        self
    }
}

impl Sub<&Mult> for &Mult {
    type Output = Mult;
    fn sub(self, rhs: &Mult) -> Mult {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for Mult {
    type Output = Mult;
    fn sub(mut self, rhs: Mult) -> Mult {
        self -= &rhs;
        self
    }
}

impl Mul<&Mult> for &Mult {
    type Output = Mult;
    fn mul(self, rhs: &Mult) -> Mult {
        let mut out = Mult::ZERO;
        out.add_product(self, rhs);
        out
    }
}

impl Mul for Mult {
    type Output = Mult;
    fn mul(self, rhs: Mult) -> Mult {
        &self * &rhs
    }
}

impl Neg for &Mult {
    type Output = Mult;
    fn neg(self) -> Mult {
        match &self.0 {
            Repr::Small(v) => match v.checked_neg() {
                Some(n) => Mult(Repr::Small(n)),
                None => Mult::from_big(-BigInt::from(*v)),
            },
            Repr::Big(b) => Mult::from_big(-b),
        }
    }
}

impl Neg for Mult {
    type Output = Mult;
    fn neg(self) -> Mult {
        -&self
    }
}

impl<'a> Sum<&'a Mult> for Mult {
    fn sum<I: Iterator<Item = &'a Mult>>(iter: I) -> Mult {
        let mut acc = Mult::ZERO;
        for m in iter {
            acc += m;
        }
        acc
    }
}

impl Sum for Mult {
    fn sum<I: Iterator<Item = Mult>>(iter: I) -> Mult {
        let mut acc = Mult::ZERO;
        for m in iter {
            acc += &m;
        }
        acc
    }
}

impl fmt::Display for Mult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(v) => write!(f, "{v}"),
            Repr::Big(b) => write!(f, "{b}"),
        }
    }
}

impl fmt::Debug for Mult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

// JSON numbers are written natively while they fit in i64; larger values
// become decimal strings so no precision is lost.
impl Serialize for Mult {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match &self.0 {
            Repr::Small(v) => serializer.serialize_i64(*v),
            Repr::Big(b) => serializer.serialize_str(&b.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for Mult {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct MultVisitor;

        impl Visitor<'_> for MultVisitor {
            type Value = Mult;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("an integer or a decimal integer string")
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Mult, E> {
                Ok(Mult::from(v))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Mult, E> {
                Ok(Mult::from(v))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<Mult, E> {
                v.parse::<BigInt>()
                    .map(Mult::from_big)
                    .map_err(|_| E::invalid_value(de::Unexpected::Str(v), &self))
            }
        }

        deserializer.deserialize_any(MultVisitor)
    }
}
