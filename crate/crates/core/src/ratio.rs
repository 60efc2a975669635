//! Exact rationals for reported statistics.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

/// An exact rational. Serializes as `{"exact": "num/den", "decimal": "…"}`;
/// the decimal is presentation only.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Ratio(pub BigRational);

impl Ratio {
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Self {
        Ratio(BigRational::new(num.into(), den.into()))
    }

    pub fn from_counts(num: &BigUint, den: &BigUint) -> Self {
        Ratio(BigRational::new(BigInt::from(num.clone()), BigInt::from(den.clone())))
    }

    pub fn zero() -> Self {
        Ratio(BigRational::zero())
    }

    pub fn half() -> Self {
        Ratio::new(1, 2)
    }

    /// `2^-e`.
    pub fn pow2_neg(e: u32) -> Self {
        Ratio(BigRational::new(BigInt::one(), BigInt::one() << e as usize))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn abs(&self) -> Self {
        Ratio(self.0.abs())
    }

    /// `|self − 1/2|`.
    pub fn deviation_from_half(&self) -> Self {
        Ratio((&self.0 - Ratio::half().0).abs())
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// `num/den` in lowest terms.
    pub fn exact(&self) -> String {
        format!("{}/{}", self.numer(), self.denom())
    }

    /// Scientific rendering with six fractional digits.
    pub fn decimal(&self) -> String {
        format!("{:.6e}", self.to_f64())
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.exact())
    }
}

impl Serialize for Ratio {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Ratio", 2)?;
        st.serialize_field("exact", &self.exact())?;
        st.serialize_field("decimal", &self.decimal())?;
        st.end()
    }
}

impl PartialEq<BigRational> for Ratio {
    fn eq(&self, other: &BigRational) -> bool {
        self.0 == *other
    }
}

impl PartialOrd<BigRational> for Ratio {
    fn partial_cmp(&self, other: &BigRational) -> Option<Ordering> {
        self.0.partial_cmp(other)
    }
}

/// Serializes a `BigUint` as a decimal string so counts beyond 2^53 survive
/// JSON round trips.
pub fn serialize_biguint<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}
