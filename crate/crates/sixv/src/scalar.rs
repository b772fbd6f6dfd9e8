//! Scalar fields the whole crate is generic over.
//!
//! Two fields are supported: arbitrary-precision rationals ([`Rat`]) and
//! double-precision complex numbers ([`Cpx`]). Rational values are kept in
//! canonical reduced form (gcd 1, positive denominator) by `num-rational`
//! after every operation, so `==` is true field equality. The complex field
//! carries a relative comparison tolerance that is used only by verification
//! code, never inside the arithmetic itself.

use std::fmt::{Debug, Display};
use std::ops::{Div, Neg, Sub};

use num_traits::{One, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};

/// Arbitrary-precision rational scalar, always stored reduced.
pub type Rat = num_rational::BigRational;

/// Complex double-precision scalar.
pub type Cpx = num_complex::Complex64;

/// Default relative tolerance for complex-mode comparisons.
pub const CPX_REL_TOL: f64 = 1e-9;

/// A field scalar the core algorithms can compute with.
pub trait Scalar:
    Clone
    + PartialEq
    + Debug
    + Display
    + Zero
    + One
    + Neg<Output = Self>
    + Sub<Output = Self>
    + Div<Output = Self>
    + Send
    + Sync
    + 'static
{
    /// Whether arithmetic is exact (equality decidable) rather than floating.
    const EXACT: bool;

    fn from_int(n: i64) -> Self;

    /// Magnitude as an `f64`, used for pivot selection and tolerance scales.
    fn abs_f64(&self) -> f64;

    /// Exact equality in exact fields; relative comparison otherwise.
    fn approx_eq(&self, other: &Self, rel_tol: f64) -> bool;

    /// Multiplicative inverse, `None` for zero.
    fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Self::one() / self.clone())
        }
    }

    fn to_json(&self) -> Value;

    fn from_json(v: &Value) -> Result<Self>;
}

impl Scalar for Rat {
    const EXACT: bool = true;

    fn from_int(n: i64) -> Self {
        Rat::from_integer(n.into())
    }

    fn abs_f64(&self) -> f64 {
        match self.to_f64() {
            Some(x) if x.is_finite() => x.abs(),
            _ => {
                if self.is_zero() {
                    0.0
                } else {
                    f64::INFINITY
                }
            }
        }
    }

    fn approx_eq(&self, other: &Self, _rel_tol: f64) -> bool {
        self == other
    }

    fn to_json(&self) -> Value {
        // "p/q", or just "p" when the denominator is one.
        Value::String(self.to_string())
    }

    fn from_json(v: &Value) -> Result<Self> {
        match v {
            Value::String(s) => s
                .trim()
                .parse()
                .map_err(|e| Error::Invalid(format!("bad rational {s:?}: {e}"))),
            Value::Number(n) => n
                .as_i64()
                .map(Self::from_int)
                .ok_or_else(|| Error::Invalid(format!("expected integer or \"p/q\", got {n}"))),
            other => Err(Error::Invalid(format!("expected rational, got {other}"))),
        }
    }
}

impl Scalar for Cpx {
    const EXACT: bool = false;

    fn from_int(n: i64) -> Self {
        Cpx::new(n as f64, 0.0)
    }

    fn abs_f64(&self) -> f64 {
        self.norm()
    }

    fn approx_eq(&self, other: &Self, rel_tol: f64) -> bool {
        let diff = (self - other).norm();
        let scale = self.norm().max(other.norm());
        if scale <= rel_tol {
            diff <= rel_tol
        } else {
            diff <= rel_tol * scale
        }
    }

    fn to_json(&self) -> Value {
        json!([self.re, self.im])
    }

    fn from_json(v: &Value) -> Result<Self> {
        match v {
            Value::Array(parts) if parts.len() == 2 => {
                let re = parts[0].as_f64();
                let im = parts[1].as_f64();
                match (re, im) {
                    (Some(re), Some(im)) => Ok(Cpx::new(re, im)),
                    _ => Err(Error::Invalid(format!("bad complex {v}"))),
                }
            }
            Value::Number(n) => n
                .as_f64()
                .map(|re| Cpx::new(re, 0.0))
                .ok_or_else(|| Error::Invalid(format!("bad complex {n}"))),
            other => Err(Error::Invalid(format!("expected [re, im], got {other}"))),
        }
    }
}

/// Integer power by repeated squaring; exact in exact fields.
///
/// Negative exponents require a nonzero base.
pub fn pow<K: Scalar>(base: &K, exp: i64) -> Result<K> {
    if exp == 0 {
        return Ok(K::one());
    }
    let (mut b, mut e) = if exp < 0 {
        let inv = base
            .inverse()
            .ok_or_else(|| Error::Domain("zero base with negative exponent".into()))?;
        (inv, exp.unsigned_abs())
    } else {
        (base.clone(), exp as u64)
    };
    let mut acc = K::one();
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b.clone();
        }
        b = b.clone() * b.clone();
        e >>= 1;
    }
    Ok(acc)
}

/// Convenience constructor for rationals.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(num.into(), den.into())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pow_basics() {
        assert_eq!(pow(&rat(2, 3), 3).unwrap(), rat(8, 27));
        assert_eq!(pow(&rat(5, 1), 0).unwrap(), rat(1, 1));
        assert_eq!(pow(&rat(-1, 1), 4 * 3 / 2).unwrap(), rat(1, 1)); // N=4: exponent 6
        assert_eq!(pow(&rat(2, 1), -3).unwrap(), rat(1, 8));
        assert!(matches!(
            pow(&Rat::zero(), -1),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn rational_serialization_round_trip() {
        let v = rat(20, 1);
        assert_eq!(v.to_json(), Value::String("20".into()));
        let w = rat(-3, 4);
        assert_eq!(w.to_json(), Value::String("-3/4".into()));
        assert_eq!(Rat::from_json(&w.to_json()).unwrap(), w);
        assert_eq!(Rat::from_json(&json!(7)).unwrap(), rat(7, 1));
    }

    #[test]
    fn complex_serialization_and_comparison() {
        let z = Cpx::new(1.5, -2.0);
        assert_eq!(Cpx::from_json(&z.to_json()).unwrap(), z);
        assert!(z.approx_eq(&(z + Cpx::new(1e-12, 0.0)), CPX_REL_TOL));
        assert!(!z.approx_eq(&(z + Cpx::new(1e-6, 0.0)), CPX_REL_TOL));
    }

    #[test]
    fn rationals_stay_reduced() {
        let v = rat(4, 6) + rat(2, 6);
        assert_eq!(v, Rat::one());
        let w = rat(1, 2) - rat(3, 2);
        assert_eq!(w.to_string(), "-1");
    }
}
