//! Exact values of the form `q * c^(e/2)`.
//!
//! Moments of mean-degree-normalized variables pick up half-integer powers of
//! the mean degree `c`. Rather than leave the rationals, we carry the parity
//! of the half-power symbolically: a value is `q * c^(e/2)` with `q` rational
//! and `e` either 0 or 1. Whole powers of `c` are always folded into `q`, so
//! the representation is canonical (and exact zero is `(0, 0)`).

use crate::Rational;
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScaledValue {
    q: Rational,
    e: u8,
}

impl ScaledValue {
    /// `q * c^(e/2)`; a zero rational normalizes to the canonical zero.
    pub fn new(q: Rational, e: u8) -> Self {
        assert!(e <= 1, "half-power exponent must be 0 or 1");
        if q.is_zero() {
            ScaledValue { q, e: 0 }
        } else {
            ScaledValue { q, e }
        }
    }

    pub fn from_rational(q: Rational) -> Self {
        Self::new(q, 0)
    }

    pub fn zero() -> Self {
        Self::from_rational(Rational::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.q.is_zero()
    }

    pub fn rational_part(&self) -> &Rational {
        &self.q
    }

    /// 0 for plain rationals, 1 when a factor `sqrt(c)` is attached.
    pub fn half_power(&self) -> u8 {
        self.e
    }

    /// The plain rational value, available exactly when no `sqrt(c)` factor
    /// is attached.
    pub fn as_rational(&self) -> Option<&Rational> {
        (self.e == 0).then_some(&self.q)
    }

    /// Product, folding whole powers of `c` into the rational part:
    /// `(q1, e1) * (q2, e2) = (q1 q2 c^((e1+e2) div 2), (e1+e2) mod 2)`.
    pub fn mul(&self, other: &ScaledValue, c: &Rational) -> ScaledValue {
        let e = self.e + other.e;
        let mut q = &self.q * &other.q;
        if e == 2 {
            q *= c;
        }
        ScaledValue::new(q, e % 2)
    }

    /// Sum; both operands must carry the same half-power unless one is zero.
    pub fn add(&self, other: &ScaledValue) -> Option<ScaledValue> {
        if self.is_zero() {
            return Some(other.clone());
        }
        if other.is_zero() {
            return Some(self.clone());
        }
        (self.e == other.e).then(|| ScaledValue::new(&self.q + &other.q, self.e))
    }

    pub fn scale(&self, q: &Rational) -> ScaledValue {
        ScaledValue::new(&self.q * q, self.e)
    }

    /// Division by the exact integer `d > 0`.
    pub fn div_int(&self, d: &BigInt) -> ScaledValue {
        assert!(d.is_positive(), "divisor must be positive");
        ScaledValue::new(&self.q / Rational::from_integer(d.clone()), self.e)
    }

    pub fn to_f64(&self, c: &Rational) -> f64 {
        let base = rational_to_f64(&self.q);
        if self.e == 0 {
            base
        } else {
            base * rational_to_f64(c).sqrt()
        }
    }
}

/// Correctly scaled conversion of an exact rational to a double. Unlike a
/// naive numerator/denominator division, this stays accurate when either
/// side individually overflows the double range (moments of large tensor
/// powers routinely do).
pub fn rational_to_f64(q: &Rational) -> f64 {
    if q.is_zero() {
        return 0.0;
    }
    let neg = q.numer().sign() == num_bigint::Sign::Minus;
    let num = q.numer().magnitude();
    let den = q.denom().magnitude();
    let diff = num.bits() as i64 - den.bits() as i64;
    let mag = if diff > 1100 {
        f64::INFINITY
    } else if diff < -1120 {
        0.0
    } else {
        // Shift so the integer quotient carries ~96 significant bits, then
        // undo the shift with an exact power of two.
        let s = 96 - diff;
        let (sn, sd) = if s >= 0 {
            (num << (s as usize), den.clone())
        } else {
            (num.clone(), den << ((-s) as usize))
        };
        let quot = sn / sd;
        quot.to_f64().unwrap_or(f64::INFINITY) * 2f64.powi(-(s as i32))
    };
    if neg {
        -mag
    } else {
        mag
    }
}

impl fmt::Display for ScaledValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.e == 0 {
            write!(f, "{}", self.q)
        } else if self.q.is_one() {
            write!(f, "sqrt(c)")
        } else {
            write!(f, "{}*sqrt(c)", self.q)
        }
    }
}
