use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{factorial, rat_int, Rational};

/// Exact value `coeff * pi^pi_power`.
///
/// Normalized so that a zero coefficient forces `pi_power = 0`; with that,
/// structural equality is mathematical equality (pi is transcendental, so
/// `q1 * pi^a = q2 * pi^b` with `a != b` forces both coefficients to zero).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiScaled {
    coeff: Rational,
    pi_power: u32,
}

impl PiScaled {
    pub fn new(coeff: Rational, pi_power: u32) -> Self {
        if coeff.is_zero() {
            PiScaled { coeff, pi_power: 0 }
        } else {
            PiScaled { coeff, pi_power }
        }
    }

    pub fn from_rational(coeff: Rational) -> Self {
        Self::new(coeff, 0)
    }

    pub fn coeff(&self) -> &Rational {
        &self.coeff
    }

    pub fn pi_power(&self) -> u32 {
        self.pi_power
    }

    pub fn is_rational(&self) -> bool {
        self.pi_power == 0
    }

    /// Exact rational value, when the pi power is zero.
    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then_some(&self.coeff)
    }

    pub fn mul(&self, other: &PiScaled) -> PiScaled {
        PiScaled::new(&self.coeff * &other.coeff, self.pi_power + other.pi_power)
    }

    pub fn mul_rational(&self, r: &Rational) -> PiScaled {
        PiScaled::new(&self.coeff * r, self.pi_power)
    }

    pub fn square(&self) -> PiScaled {
        self.mul(self)
    }

    /// Certified total order. Equal pi powers compare coefficients exactly;
    /// distinct powers are decided through a rational enclosure of pi that is
    /// widened until the comparison resolves (always finitely many steps,
    /// since equality across distinct powers is impossible for nonzero
    /// coefficients).
    pub fn certified_cmp(&self, other: &PiScaled) -> Ordering {
        if self.pi_power == other.pi_power {
            return self.coeff.cmp(&other.coeff);
        }
        // Reduce to sign(q * pi^d - r) with d >= 1.
        let (q, d, r, flip) = if self.pi_power > other.pi_power {
            (&self.coeff, self.pi_power - other.pi_power, &other.coeff, false)
        } else {
            (&other.coeff, other.pi_power - self.pi_power, &self.coeff, true)
        };
        let ord = sign_of_pi_multiple_minus(q, d, r);
        if flip {
            ord.reverse()
        } else {
            ord
        }
    }

    /// Rational enclosure `(lo, hi)` with `lo <= value <= hi`.
    pub fn enclosure(&self, terms: usize) -> (Rational, Rational) {
        if self.pi_power == 0 {
            return (self.coeff.clone(), self.coeff.clone());
        }
        let (pi_lo, pi_hi) = pi_enclosure(terms);
        let (p_lo, p_hi) = (pow(&pi_lo, self.pi_power), pow(&pi_hi, self.pi_power));
        if self.coeff.is_negative() {
            (&self.coeff * p_hi, &self.coeff * p_lo)
        } else {
            (&self.coeff * p_lo, &self.coeff * p_hi)
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.coeff.to_f64().unwrap_or(f64::NAN) * std::f64::consts::PI.powi(self.pi_power as i32)
    }
}

impl std::fmt::Display for PiScaled {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.pi_power {
            0 => write!(f, "{}", super::format_rational(&self.coeff)),
            1 => write!(f, "{}*pi", super::format_rational(&self.coeff)),
            p => write!(f, "{}*pi^{}", super::format_rational(&self.coeff), p),
        }
    }
}

impl PartialOrd for PiScaled {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.certified_cmp(other))
    }
}

fn pow(r: &Rational, e: u32) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..e {
        acc *= r;
    }
    acc
}

/// sign(q * pi^d - r) for d >= 1, via enclosure widening.
fn sign_of_pi_multiple_minus(q: &Rational, d: u32, r: &Rational) -> Ordering {
    if q.is_zero() {
        return Rational::zero().cmp(r);
    }
    // Cheap sign screens before any enclosure work.
    if q.is_positive() && !r.is_positive() {
        return Ordering::Greater;
    }
    if q.is_negative() && !r.is_negative() {
        return Ordering::Less;
    }
    let mut terms = 4usize;
    loop {
        let (pi_lo, pi_hi) = pi_enclosure(terms);
        let (lo, hi) = if q.is_positive() {
            (q * pow(&pi_lo, d), q * pow(&pi_hi, d))
        } else {
            (q * pow(&pi_hi, d), q * pow(&pi_lo, d))
        };
        if &lo > r {
            return Ordering::Greater;
        }
        if &hi < r {
            return Ordering::Less;
        }
        terms *= 2;
        assert!(terms <= 1 << 22, "pi enclosure failed to separate values");
    }
}

/// Certified rational enclosure of pi from Machin's formula
/// `pi = 16 atan(1/5) - 4 atan(1/239)`; each arctangent is bracketed by
/// consecutive partial sums of its alternating series.
pub fn pi_enclosure(terms: usize) -> (Rational, Rational) {
    let (a_lo, a_hi) = atan_inv_enclosure(5, terms);
    let (b_lo, b_hi) = atan_inv_enclosure(239, terms);
    let sixteen = rat_int(16);
    let four = rat_int(4);
    (&sixteen * a_lo - &four * b_hi, &sixteen * a_hi - &four * b_lo)
}

/// Brackets `atan(1/x)` between the partial sums with `2*terms` and
/// `2*terms + 1` terms of `sum (-1)^k / ((2k+1) x^(2k+1))`.
fn atan_inv_enclosure(x: i64, terms: usize) -> (Rational, Rational) {
    let x = BigInt::from(x);
    let x2 = &x * &x;
    let mut acc = Rational::zero();
    let mut xpow = x.clone();
    let mut lo = Rational::zero();
    let mut hi = Rational::zero();
    for k in 0..=(2 * terms) {
        let term = Rational::new(BigInt::one(), BigInt::from(2 * k as i64 + 1) * &xpow);
        if k % 2 == 0 {
            acc += term;
            hi = acc.clone(); // odd number of terms: overshoot
        } else {
            acc -= term;
            lo = acc.clone(); // even number of terms: undershoot
        }
        xpow *= &x2;
    }
    (lo, hi)
}

/// Exact unit-ball volume `kappa_n`.
///
/// Even `n = 2m`: `pi^m / m!`. Odd `n = 2m+1`: `2^n m! / n! * pi^m`.
pub fn ball_volume(n: u32) -> PiScaled {
    let m = n / 2;
    if n % 2 == 0 {
        PiScaled::new(Rational::new(BigInt::one(), factorial(m)), m)
    } else {
        let num = (BigInt::one() << n) * factorial(m);
        PiScaled::new(Rational::new(num, factorial(n)), m)
    }
}

/// Certified enclosure `(lo, hi)` of `q^(1/n)` with width `10^-digits`,
/// satisfying `lo^n <= q <= hi^n` exactly; collapses to a point when `q`
/// is a perfect n-th power of a rational with denominator `10^digits`.
pub fn nth_root_enclosure(q: &Rational, n: u32, digits: u32) -> (Rational, Rational) {
    assert!(n >= 1);
    assert!(!q.is_negative(), "nth root of negative rational");
    let scale = BigInt::from(10u32).pow(digits);
    let scale_n = (&scale).pow(n);
    let scaled = q * Rational::from_integer(scale_n);
    let m = super::rational_floor(&scaled);
    let root = m.nth_root(n);
    let lo = Rational::new(root.clone(), scale.clone());
    if &pow(&lo, n) == q {
        return (lo.clone(), lo);
    }
    let hi = Rational::new(root + BigInt::one(), scale);
    (lo, hi)
}
