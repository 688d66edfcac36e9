//! Coefficient rings for truncated series.
//!
//! Series are generic over [`CoefficientRing`]. Three rings are provided:
//! exact rationals ([`Rational`]), the cyclotomic fields `Q(zeta_m)`
//! ([`crate::cyclotomic::Cyclo`]) and double-precision complex numbers
//! (`Complex64`) for the numeric fallback.
//!
//! Each element can report its ring context (`()` for the rationals and the
//! complex floats, the conductor for cyclotomic elements). Series remember the
//! context they were built with and refuse to combine with a different one.

use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::Value;

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub trait CoefficientRing: Clone + fmt::Debug + PartialEq + Send + Sync + 'static {
    type Ctx: Clone + fmt::Debug + PartialEq + Send + Sync;

    fn ring_name(ctx: &Self::Ctx) -> String;
    fn zero_in(ctx: &Self::Ctx) -> Self;
    fn one_in(ctx: &Self::Ctx) -> Self;
    fn from_rational(ctx: &Self::Ctx, r: &Rational) -> Self;
    fn context(&self) -> Self::Ctx;

    fn vanishes(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    /// Multiplicative inverse, `None` when `self` is not a unit.
    fn inv(&self) -> Option<Self>;
    fn to_complex(&self) -> Complex64;

    fn to_json(&self) -> Value;
    fn from_json(ctx: &Self::Ctx, value: &Value) -> Result<Self>;

    /// Whether equality in this ring is exact.
    fn is_exact() -> bool {
        true
    }

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    fn scale(&self, r: &Rational) -> Self {
        self.mul(&Self::from_rational(&self.context(), r))
    }

    fn from_int(ctx: &Self::Ctx, n: i64) -> Self {
        Self::from_rational(ctx, &Rational::from_integer(BigInt::from(n)))
    }

    /// Equality up to `tol` for floating rings; exact rings ignore `tol`.
    fn approx_eq(&self, other: &Self, _tol: f64) -> bool {
        self == other
    }

    fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one_in(&self.context());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    fn display(&self) -> String {
        self.to_json().to_string()
    }
}

/// Rings that contain the roots of unity needed for torsional expansions.
pub trait RootsOfUnity: CoefficientRing {
    /// The element `e^{2 pi i num/den}`.
    fn root_of_unity(ctx: &Self::Ctx, num: i64, den: u64) -> Result<Self>;
}

impl CoefficientRing for Rational {
    type Ctx = ();

    fn ring_name(_: &()) -> String {
        "Q".to_string()
    }
    fn zero_in(_: &()) -> Self {
        Rational::zero()
    }
    fn one_in(_: &()) -> Self {
        Rational::one()
    }
    fn from_rational(_: &(), r: &Rational) -> Self {
        r.clone()
    }
    fn context(&self) {}
    fn vanishes(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn scale(&self, r: &Rational) -> Self {
        self * r
    }
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn to_complex(&self) -> Complex64 {
        Complex64::new(rational_to_f64(self), 0.0)
    }
    fn to_json(&self) -> Value {
        Value::String(format_rational(self))
    }
    fn from_json(_: &(), value: &Value) -> Result<Self> {
        match value {
            Value::String(s) => parse_rational(s),
            Value::Number(n) => n
                .as_i64()
                .map(|v| Rational::from_integer(v.into()))
                .ok_or_else(|| Error::Parse(format!("not an integer: {n}"))),
            other => Err(Error::Parse(format!("expected rational string, got {other}"))),
        }
    }
    fn display(&self) -> String {
        format_rational(self)
    }
}

impl RootsOfUnity for Rational {
    fn root_of_unity(_: &(), num: i64, den: u64) -> Result<Self> {
        let den = den as i64;
        if den == 0 {
            return Err(Error::InvalidArgument("zero denominator".into()));
        }
        // only +1 and -1 live in Q
        if (2 * num).rem_euclid(den) != 0 {
            return Err(Error::RootUnavailable { num, den: den as u64 });
        }
        if num.rem_euclid(den) == 0 {
            Ok(Rational::one())
        } else {
            Ok(-Rational::one())
        }
    }
}

impl CoefficientRing for Complex64 {
    type Ctx = ();

    fn ring_name(_: &()) -> String {
        "C(f64)".to_string()
    }
    fn zero_in(_: &()) -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one_in(_: &()) -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn from_rational(_: &(), r: &Rational) -> Self {
        Complex64::new(rational_to_f64(r), 0.0)
    }
    fn context(&self) {}
    fn vanishes(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn inv(&self) -> Option<Self> {
        if self.vanishes() {
            None
        } else {
            Some(Complex64::new(1.0, 0.0) / self)
        }
    }
    fn to_complex(&self) -> Complex64 {
        *self
    }
    fn to_json(&self) -> Value {
        serde_json::json!([self.re, self.im])
    }
    fn from_json(_: &(), value: &Value) -> Result<Self> {
        let arr = value
            .as_array()
            .filter(|a| a.len() == 2)
            .ok_or_else(|| Error::Parse(format!("expected [re, im], got {value}")))?;
        let re = arr[0].as_f64().ok_or_else(|| Error::Parse("bad real part".into()))?;
        let im = arr[1].as_f64().ok_or_else(|| Error::Parse("bad imaginary part".into()))?;
        Ok(Complex64::new(re, im))
    }
    fn is_exact() -> bool {
        false
    }
    fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        (self - other).norm() <= tol * (1.0 + self.norm().max(other.norm()))
    }
}

impl RootsOfUnity for Complex64 {
    fn root_of_unity(_: &(), num: i64, den: u64) -> Result<Self> {
        if den == 0 {
            return Err(Error::InvalidArgument("zero denominator".into()));
        }
        let r = num.rem_euclid(den as i64) as f64 / den as f64;
        Ok(Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * r))
    }
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // huge numerator/denominator: divide via shifted integers
        let n = r.numer().to_f64().unwrap_or(f64::NAN);
        let d = r.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

/// `p/q` in lowest terms, or `p` for integers.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(p, q))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Falling factorial `x (x-1) ... (x-m+1)`, with `(x)_0 = 1`.
pub fn falling_factorial(x: i64, m: u64) -> BigInt {
    (0..m as i64).fold(BigInt::one(), |acc, i| acc * BigInt::from(x - i))
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Integer power of a rational, allowing negative exponents of nonzero bases.
pub fn rational_pow(base: &Rational, e: i64) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..e.unsigned_abs() {
        acc *= base;
    }
    if e < 0 {
        acc.recip()
    } else {
        acc
    }
}

/// Sign helper used when formatting signed terms.
pub fn is_negative(r: &Rational) -> bool {
    r.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_text_round_trip() {
        for s in ["0", "5", "-7", "1/120", "-1/252", "-1/123456789012345678901234567890"] {
            let r = parse_rational(s).unwrap();
            assert_eq!(format_rational(&r), s);
        }
        assert_eq!(parse_rational("4/8").unwrap(), rat(1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn rational_roots_of_unity() {
        assert_eq!(Rational::root_of_unity(&(), 1, 2).unwrap(), int(-1));
        assert_eq!(Rational::root_of_unity(&(), 4, 2).unwrap(), int(1));
        assert_eq!(Rational::root_of_unity(&(), 0, 1).unwrap(), int(1));
        assert!(Rational::root_of_unity(&(), 1, 3).is_err());
    }

    #[test]
    fn falling_factorials() {
        assert_eq!(falling_factorial(6, 6), BigInt::from(720));
        assert_eq!(falling_factorial(8, 2), BigInt::from(56));
        assert_eq!(falling_factorial(5, 0), BigInt::from(1));
        assert_eq!(binomial(6, 3), BigInt::from(20));
    }
}
