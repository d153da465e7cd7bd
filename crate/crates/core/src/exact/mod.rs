//! Exact scalar arithmetic: arbitrary-precision rationals, integer
//! matrices with determinant / Hermite normal form, and symbolic
//! multiples of powers of pi with certified comparison.

mod matrix;
mod pi;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::str::FromStr;

use crate::{Error, Result};

pub use matrix::{lattice_index, IntMatrix};
pub use pi::{ball_volume, nth_root_enclosure, pi_enclosure, PiScaled};

/// Exact rational scalar. Always reduced, denominator positive; both are
/// maintained by `num_rational::Ratio` on every operation.
pub type Rational = num_rational::BigRational;

/// Rational from an integer.
pub fn rat_int<T: Into<BigInt>>(n: T) -> Rational {
    Rational::from_integer(n.into())
}

/// Rational from numerator and denominator.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"p/q"` or `"p"` (arbitrary precision, optional sign).
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::BadRational(s.to_string());
    match s.split_once('/') {
        Some((num, den)) => {
            let num = BigInt::from_str(num.trim()).map_err(|_| bad())?;
            let den = BigInt::from_str(den.trim()).map_err(|_| bad())?;
            if den.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(num, den))
        }
        None => {
            let num = BigInt::from_str(s).map_err(|_| bad())?;
            Ok(Rational::from_integer(num))
        }
    }
}

/// Formats a rational as `"p/q"`, or `"p"` when the denominator is one.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Largest integer `<= r`.
pub fn rational_floor(r: &Rational) -> BigInt {
    r.floor().to_integer()
}

/// Smallest integer `>= r`.
pub fn rational_ceil(r: &Rational) -> BigInt {
    r.ceil().to_integer()
}

/// True when `r` is an integer.
pub fn is_integer(r: &Rational) -> bool {
    r.denom().is_one()
}

pub fn factorial(n: u32) -> BigInt {
    let mut acc = BigInt::one();
    for k in 2..=n as u64 {
        acc *= k;
    }
    acc
}

pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k as u64 {
        acc = acc * (n as u64 - i) / (i + 1);
    }
    acc
}

/// `2^n` as a rational.
pub fn pow2(n: u32) -> Rational {
    Rational::from_integer(BigInt::one() << n)
}

/// Exact sign of a rational as -1, 0, +1.
pub fn sign(r: &Rational) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}
