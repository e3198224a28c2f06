use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

/// Exact nonnegative rational `num / 2^log2_den`, kept in lowest terms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Dyadic {
    num: BigUint,
    log2_den: u32,
}

impl Dyadic {
    pub fn new(num: impl Into<BigUint>, log2_den: u32) -> Self {
        let mut d = Self {
            num: num.into(),
            log2_den,
        };
        d.normalize();
        d
    }

    pub fn zero() -> Self {
        Self::new(0u32, 0)
    }

    pub fn one() -> Self {
        Self::new(1u32, 0)
    }

    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.log2_den = 0;
            return;
        }
        let tz = self
            .num
            .trailing_zeros()
            .unwrap_or(0)
            .min(self.log2_den as u64) as u32;
        self.num >>= tz;
        self.log2_den -= tz;
    }

    pub fn numerator(&self) -> &BigUint {
        &self.num
    }

    pub fn log2_denominator(&self) -> u32 {
        self.log2_den
    }

    pub fn is_integer(&self) -> bool {
        self.log2_den == 0
    }

    /// Smallest integer not below this value.
    pub fn ceil(&self) -> BigUint {
        let den = BigUint::one() << self.log2_den;
        (&self.num + &den - 1u32) / den
    }

    pub fn to_f64(&self) -> f64 {
        self.num.to_f64().unwrap_or(f64::INFINITY) / 2f64.powi(self.log2_den as i32)
    }

    fn scaled_to(&self, log2_den: u32) -> BigUint {
        &self.num << (log2_den - self.log2_den)
    }
}

impl std::ops::Add for &Dyadic {
    type Output = Dyadic;

    fn add(self, rhs: &Dyadic) -> Dyadic {
        let den = self.log2_den.max(rhs.log2_den);
        Dyadic::new(self.scaled_to(den) + rhs.scaled_to(den), den)
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let den = self.log2_den.max(other.log2_den);
        self.scaled_to(den).cmp(&other.scaled_to(den))
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.log2_den == 0 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/2^{}", self.num, self.log2_den)
        }
    }
}

/// Serialized as `{"num": a, "log2_den": b}`. Numerators beyond `u128`
/// fall back to a decimal string.
impl Serialize for Dyadic {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("Dyadic", 2)?;
        match self.num.to_u128() {
            Some(n) => s.serialize_field("num", &n)?,
            None => s.serialize_field("num", &self.num.to_str_radix(10))?,
        }
        s.serialize_field("log2_den", &self.log2_den)?;
        s.end()
    }
}
