//! Scalar abstractions.
//!
//! Polynomial and matrix code is written against [`Ring`] (an exact
//! integer-like coefficient ring) and polyhedral code against [`Field`]
//! (an exact ordered field). The crate root fixes the arbitrary-precision
//! instantiations; machine-width instantiations such as `i64` and
//! `Ratio<i64>` work for small inputs.

use std::fmt::{Debug, Display};
use std::ops::Neg;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{FromPrimitive, Num, One, Signed, ToPrimitive};

/// Exact commutative ring with ordering, used for polynomial coefficients.
pub trait Ring:
    Clone
    + Debug
    + Display
    + Ord
    + Num
    + Neg<Output = Self>
    + FromPrimitive
    + ToPrimitive
    + Send
    + Sync
    + 'static
{
    fn from_usize_exact(n: usize) -> Self {
        Self::from_usize(n).expect("value fits the coefficient ring")
    }
}

impl<T> Ring for T where
    T: Clone
        + Debug
        + Display
        + Ord
        + Num
        + Neg<Output = T>
        + FromPrimitive
        + ToPrimitive
        + Send
        + Sync
        + 'static
{
}

/// Exact ordered field with a notion of integrality.
pub trait Field: Clone + Debug + Display + Ord + Num + Signed + Send + Sync + 'static {
    fn from_int(n: i64) -> Self;
    fn from_ratio(numer: i64, denom: i64) -> Self;
    fn numer_big(&self) -> BigInt;
    fn denom_big(&self) -> BigInt;
    fn to_f64_lossy(&self) -> f64;

    fn is_integral(&self) -> bool {
        self.denom_big().is_one()
    }

    fn floor_big(&self) -> BigInt {
        self.numer_big().div_floor(&self.denom_big())
    }

    fn ceil_big(&self) -> BigInt {
        let (n, d) = (self.numer_big(), self.denom_big());
        -((-n).div_floor(&d))
    }
}

impl<T> Field for Ratio<T>
where
    T: Clone
        + Debug
        + Display
        + Integer
        + Signed
        + FromPrimitive
        + ToPrimitive
        + Into<BigInt>
        + Send
        + Sync
        + 'static,
{
    fn from_int(n: i64) -> Self {
        Ratio::from_integer(T::from_i64(n).expect("integer fits the field's base ring"))
    }

    fn from_ratio(numer: i64, denom: i64) -> Self {
        Ratio::new(
            T::from_i64(numer).expect("numerator fits"),
            T::from_i64(denom).expect("denominator fits"),
        )
    }

    fn numer_big(&self) -> BigInt {
        self.numer().clone().into()
    }

    fn denom_big(&self) -> BigInt {
        self.denom().clone().into()
    }

    fn to_f64_lossy(&self) -> f64 {
        let n = self.numer().to_f64().unwrap_or(f64::NAN);
        let d = self.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    }
}

/// Lowest common multiple of the denominators of `values` (1 for an empty list).
pub fn denominator_lcm<F: Field>(values: &[F]) -> BigInt {
    values
        .iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(&v.denom_big()))
}

pub(crate) mod display_vec {
    //! Serde helpers: vectors of scalars as decimal / "p/q" strings.
    use std::fmt::Display;

    use num_traits::Num;
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<T: Display, S: Serializer>(v: &[T], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|x| x.to_string()))
    }

    pub fn deserialize<'de, T: Num, D: Deserializer<'de>>(d: D) -> Result<Vec<T>, D::Error> {
        let raw: Vec<String> = Vec::deserialize(d)?;
        raw.iter()
            .map(|s| parse(s).map_err(D::Error::custom))
            .collect()
    }

    /// Accepts `n` and `p/q`; ratio types need the explicit `/1` form.
    pub fn parse<T: Num>(s: &str) -> Result<T, String> {
        let s = s.trim();
        T::from_str_radix(s, 10)
            .or_else(|_| T::from_str_radix(&format!("{s}/1"), 10))
            .map_err(|_| format!("not an exact number: `{s}`"))
    }
}

pub(crate) fn display_one<T: Display, S: serde::Serializer>(
    v: &T,
    s: S,
) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}
