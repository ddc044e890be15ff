//! Exact scalar types used for averaged invariants.
//!
//! Every average in this crate is a quotient of two integers, so the numeric
//! routines are written against [`Scalar`], a small exact-field abstraction
//! over `num-traits`. The crate root fixes [`crate::Rational`] (arbitrary
//! precision) as the default; fixed-width ratios are available when the caller
//! knows the sums stay small.

use std::fmt::{Debug, Display};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{FromPrimitive, Num, Signed, ToPrimitive, Zero};

/// An exact ordered field element.
pub trait Scalar:
    Clone + Ord + Num + Signed + FromPrimitive + Debug + Display + Send + Sync + 'static
{
    fn from_count(value: u64) -> Self {
        Self::from_u64(value).expect("count fits the scalar type")
    }

    fn ratio(numer: u64, denom: u64) -> Self {
        Self::from_count(numer) / Self::from_count(denom)
    }

    /// Lossless widening to an arbitrary-precision rational.
    fn to_big(&self) -> BigRational;
}

impl Scalar for BigRational {
    fn to_big(&self) -> BigRational {
        self.clone()
    }
}

impl Scalar for Ratio<i64> {
    fn to_big(&self) -> BigRational {
        BigRational::new(BigInt::from(*self.numer()), BigInt::from(*self.denom()))
    }
}

impl Scalar for Ratio<i128> {
    fn to_big(&self) -> BigRational {
        BigRational::new(BigInt::from(*self.numer()), BigInt::from(*self.denom()))
    }
}

/// Renders a rational as `p/q`, always with an explicit denominator.
pub fn ratio_string<F: Scalar>(value: &F) -> String {
    let big = value.to_big();
    format!("{}/{}", big.numer(), big.denom())
}

pub(crate) fn serialize_ratio<F: Scalar, S: serde::Serializer>(
    value: &F,
    serializer: S,
) -> std::result::Result<S::Ok, S::Error> {
    serializer.serialize_str(&ratio_string(value))
}

/// Decimal rendering rounded half away from zero; display only.
pub fn decimal_string<F: Scalar>(value: &F, places: u32) -> String {
    let big = value.to_big();
    let scale = BigInt::from(10u32).pow(places);
    let scaled: BigInt = big.numer().abs() * &scale * 2 + big.denom();
    let (q, _) = scaled.div_rem(&(big.denom() * 2));
    let (int_part, frac_part) = q.div_rem(&scale);
    let sign = if big.numer().sign() == Sign::Minus && !q.is_zero() {
        "-"
    } else {
        ""
    };
    if places == 0 {
        return format!("{sign}{int_part}");
    }
    format!(
        "{sign}{int_part}.{:0>width$}",
        frac_part.to_string(),
        width = places as usize
    )
}

/// Parses `p/q` or a bare integer.
pub fn parse_ratio(text: &str) -> Option<BigRational> {
    let text = text.trim();
    match text.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                None
            } else {
                Some(BigRational::new(p, q))
            }
        }
        None => text.parse::<BigInt>().ok().map(BigRational::from_integer),
    }
}

/// Exact binomial coefficient as a big integer.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    num_integer::binomial(BigInt::from(n), BigInt::from(k))
}

pub(crate) fn binomial_u64(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    binomial(n as u64, k as u64)
        .to_u64()
        .expect("binomial coefficient fits in u64")
}

pub(crate) fn big_to_scalar<F: Scalar>(value: &BigInt) -> F {
    let v = value.to_i128().expect("integer fits in i128");
    let magnitude = F::from_u128(v.unsigned_abs()).expect("integer fits the scalar type");
    if v < 0 {
        -magnitude
    } else {
        magnitude
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ratio_and_decimal_rendering() {
        let v = BigRational::new(17.into(), 6.into());
        assert_eq!(ratio_string(&v), "17/6");
        assert_eq!(decimal_string(&v, 6), "2.833333");
        let five = BigRational::from_integer(5.into());
        assert_eq!(ratio_string(&five), "5/1");
        assert_eq!(decimal_string(&five, 6), "5.000000");
        let small = Ratio::<i64>::new(2, 3);
        assert_eq!(decimal_string(&small, 6), "0.666667");
        assert_eq!(decimal_string(&Ratio::<i64>::new(-1, 8), 2), "-0.13");
    }

    #[test]
    fn parse_round_trip() {
        assert_eq!(
            parse_ratio("17/6"),
            Some(BigRational::new(17.into(), 6.into()))
        );
        assert_eq!(parse_ratio("4"), Some(BigRational::from_integer(4.into())));
        assert_eq!(parse_ratio("1/0"), None);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial_u64(9, 4), 126);
        assert_eq!(binomial_u64(3, 5), 0);
        assert_eq!(binomial(60, 30).to_string(), "118264581564861424");
    }

    #[test]
    fn scalar_types_agree() {
        let a: BigRational = Scalar::ratio(17, 6);
        let b: Ratio<i64> = Scalar::ratio(17, 6);
        assert_eq!(a, b.to_big());
        let c: Ratio<i128> = Scalar::ratio(34, 12);
        assert_eq!(c.to_big(), a);
    }
}
