//! Truncated formal Laurent series in `q^{1/L}`.
//!
//! A [`QSeries`] represents `f = sum_e c_e q^{e/L} + O(q^{N/L})` where `L` is
//! the grading denominator and `N` the (exclusive) truncation, both measured on
//! the `1/L` grid. Only nonzero coefficients are stored.
//!
//! Invariants:
//! - every stored exponent `e` satisfies `e < trunc`;
//! - no stored coefficient is zero;
//! - all coefficients live in the ring context `ctx`.
//!
//! Binary operations first bring both operands to the common grading
//! `lcm(L_a, L_b)` and report only coefficients that are determined by both
//! inputs. Asking for a coefficient at or beyond the truncation is an error,
//! never a silent zero.

use std::collections::BTreeMap;
use std::fmt;
use std::ops;

use num_integer::Integer;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::ring::{int, CoefficientRing, Rational};

#[derive(Clone, Debug, PartialEq)]
pub struct QSeries<R: CoefficientRing> {
    denom: u64,
    trunc: i64,
    coeffs: BTreeMap<i64, R>,
    ctx: R::Ctx,
}

/// First place where two series disagree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Discrepancy {
    /// Where the series differ, e.g. `q^3` or `Z^2*q^(1/2)`.
    pub location: String,
    pub left: String,
    pub right: String,
}

impl<R: CoefficientRing> QSeries<R> {
    pub fn zero(ctx: &R::Ctx, denom: u64, trunc: i64) -> Self {
        assert!(denom >= 1, "grading denominator must be positive");
        Self { denom, trunc, coeffs: BTreeMap::new(), ctx: ctx.clone() }
    }

    pub fn one(ctx: &R::Ctx, denom: u64, trunc: i64) -> Self {
        Self::monomial(ctx, denom, trunc, 0, R::one_in(ctx))
    }

    /// `c q^{e/L} + O(q^{trunc/L})`.
    pub fn monomial(ctx: &R::Ctx, denom: u64, trunc: i64, exponent: i64, c: R) -> Self {
        let mut s = Self::zero(ctx, denom, trunc);
        s.set(exponent, c);
        s
    }

    pub fn from_coeffs<I>(ctx: &R::Ctx, denom: u64, trunc: i64, coeffs: I) -> Self
    where
        I: IntoIterator<Item = (i64, R)>,
    {
        let mut s = Self::zero(ctx, denom, trunc);
        for (e, c) in coeffs {
            let acc = s.coeffs.remove(&e).map_or(c.clone(), |old| old.add(&c));
            s.set(e, acc);
        }
        s
    }

    /// Dense constructor: `values[i]` is the coefficient of `q^{(low+i)/L}`.
    pub fn from_dense(ctx: &R::Ctx, denom: u64, low: i64, trunc: i64, values: Vec<R>) -> Self {
        let mut s = Self::zero(ctx, denom, trunc);
        for (i, c) in values.into_iter().enumerate() {
            s.set(low + i as i64, c);
        }
        s
    }

    /// Constant series lifted from a rational.
    pub fn constant(ctx: &R::Ctx, denom: u64, trunc: i64, c: &Rational) -> Self {
        Self::monomial(ctx, denom, trunc, 0, R::from_rational(ctx, c))
    }

    pub fn denom(&self) -> u64 {
        self.denom
    }

    /// Exclusive truncation on the `1/L` grid.
    pub fn trunc(&self) -> i64 {
        self.trunc
    }

    /// Truncation measured in powers of `q`.
    pub fn trunc_q(&self) -> Rational {
        Rational::new(self.trunc.into(), (self.denom as i64).into())
    }

    pub fn ctx(&self) -> &R::Ctx {
        &self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn num_nonzero(&self) -> usize {
        self.coeffs.len()
    }

    /// Lowest exponent carrying a nonzero coefficient.
    pub fn valuation(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = (i64, &R)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    /// Coefficient of `q^{e/L}`.
    pub fn coeff(&self, e: i64) -> Result<R> {
        if e >= self.trunc {
            return Err(Error::BeyondTruncation { exponent: e, trunc: self.trunc });
        }
        Ok(self.coeffs.get(&e).cloned().unwrap_or_else(|| R::zero_in(&self.ctx)))
    }

    /// Coefficient of the integral power `q^n`.
    pub fn coeff_q(&self, n: i64) -> Result<R> {
        self.coeff(n * self.denom as i64)
    }

    fn set(&mut self, e: i64, c: R) {
        if e >= self.trunc || c.vanishes() {
            self.coeffs.remove(&e);
        } else {
            self.coeffs.insert(e, c);
        }
    }

    fn check_ring(&self, other: &Self) -> Result<()> {
        if self.ctx != other.ctx {
            return Err(Error::RingMismatch { left: R::ring_name(&self.ctx), right: R::ring_name(&other.ctx) });
        }
        Ok(())
    }

    /// Re-grade onto `q^{1/new_denom}`; `new_denom` must be a multiple of `L`.
    pub fn with_denom(&self, new_denom: u64) -> Result<Self> {
        if new_denom == 0 || !new_denom.is_multiple_of(self.denom) {
            return Err(Error::InvalidArgument(format!("cannot regrade from 1/{} to 1/{}", self.denom, new_denom)));
        }
        let f = (new_denom / self.denom) as i64;
        Ok(Self {
            denom: new_denom,
            trunc: self.trunc * f,
            coeffs: self.coeffs.iter().map(|(e, c)| (e * f, c.clone())).collect(),
            ctx: self.ctx.clone(),
        })
    }

    fn unify(&self, other: &Self) -> Result<(Self, Self)> {
        self.check_ring(other)?;
        let l = self.denom.lcm(&other.denom);
        Ok((self.with_denom(l)?, other.with_denom(l)?))
    }

    /// Drop everything at or beyond `trunc` (never extends the truncation).
    pub fn truncate(&self, trunc: i64) -> Self {
        let trunc = trunc.min(self.trunc);
        Self {
            denom: self.denom,
            trunc,
            coeffs: self.coeffs.range(..trunc).map(|(e, c)| (*e, c.clone())).collect(),
            ctx: self.ctx.clone(),
        }
    }

    /// Truncate to an integral power of `q`.
    pub fn truncate_q(&self, n: i64) -> Self {
        self.truncate(n * self.denom as i64)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let (a, b) = self.unify(other)?;
        let trunc = a.trunc.min(b.trunc);
        let mut out = a.truncate(trunc);
        for (&e, c) in b.coeffs.range(..trunc) {
            let acc = out.coeffs.remove(&e).map_or(c.clone(), |old| old.add(c));
            out.set(e, acc);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Self {
            denom: self.denom,
            trunc: self.trunc,
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, c.neg())).collect(),
            ctx: self.ctx.clone(),
        }
    }

    pub fn scale(&self, s: &R) -> Self {
        let mut out = Self::zero(&self.ctx, self.denom, self.trunc);
        for (&e, c) in &self.coeffs {
            out.set(e, c.mul(s));
        }
        out
    }

    pub fn scale_rational(&self, r: &Rational) -> Self {
        self.scale(&R::from_rational(&self.ctx, r))
    }

    /// Multiply by `q^{shift/L}`; the truncation moves with the series.
    pub fn shift(&self, shift: i64) -> Self {
        Self {
            denom: self.denom,
            trunc: self.trunc + shift,
            coeffs: self.coeffs.iter().map(|(e, c)| (e + shift, c.clone())).collect(),
            ctx: self.ctx.clone(),
        }
    }

    /// Lower bound on the exponents of the series as known: the valuation, or
    /// the truncation when nothing nonzero is known.
    fn known_order(&self) -> i64 {
        self.valuation().unwrap_or(self.trunc)
    }

    /// Cauchy product. For series without negative exponents the result is
    /// known to `min(N_a, N_b)`; negative offsets lower it accordingly.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        let (a, b) = self.unify(other)?;
        let trunc = (a.trunc + b.known_order().min(0)).min(b.trunc + a.known_order().min(0));
        let mut acc: BTreeMap<i64, R> = BTreeMap::new();
        for (&ea, ca) in &a.coeffs {
            for (&eb, cb) in &b.coeffs {
                let e = ea + eb;
                if e >= trunc {
                    break;
                }
                let p = ca.mul(cb);
                match acc.get_mut(&e) {
                    Some(slot) => *slot = slot.add(&p),
                    None => {
                        acc.insert(e, p);
                    }
                }
            }
        }
        acc.retain(|_, c| !c.vanishes());
        Ok(Self { denom: a.denom, trunc, coeffs: acc, ctx: a.ctx })
    }

    /// Dense coefficient vector for exponents `low..high`.
    pub fn dense(&self, low: i64, high: i64) -> Vec<R> {
        (low..high).map(|e| self.coeffs.get(&e).cloned().unwrap_or_else(|| R::zero_in(&self.ctx))).collect()
    }

    /// Multiplicative inverse. The lowest nonzero coefficient must be a unit;
    /// for valuation `v` the result is known to `N - 2v`.
    pub fn invert(&self) -> Result<Self> {
        let v = self.valuation().ok_or(Error::NotAUnit)?;
        let lead_inv = self.coeffs[&v].inv().ok_or(Error::NotAUnit)?;
        let len = self.trunc - v;
        let b: Vec<R> = self.dense(v, self.trunc).iter().map(|c| c.mul(&lead_inv)).collect();
        let mut c: Vec<R> = Vec::with_capacity(len as usize);
        c.push(R::one_in(&self.ctx));
        for n in 1..len as usize {
            let mut s = R::zero_in(&self.ctx);
            for k in 1..=n {
                if !b[k].vanishes() {
                    s = s.add(&b[k].mul(&c[n - k]));
                }
            }
            c.push(s.neg());
        }
        let c = c.into_iter().map(|x| x.mul(&lead_inv)).collect();
        Ok(Self::from_dense(&self.ctx, self.denom, -v, self.trunc - 2 * v, c))
    }

    /// Formal exponential of a series with no terms of non-positive exponent.
    pub fn exp(&self) -> Result<Self> {
        if self.valuation().is_some_and(|v| v <= 0) {
            return Err(Error::ExpPrecondition);
        }
        let n_max = self.trunc.max(0) as usize;
        let a = self.dense(0, n_max as i64);
        let mut e: Vec<R> = Vec::with_capacity(n_max);
        if n_max > 0 {
            e.push(R::one_in(&self.ctx));
        }
        for n in 1..n_max {
            let mut s = R::zero_in(&self.ctx);
            for k in 1..=n {
                if !a[k].vanishes() {
                    s = s.add(&a[k].mul(&e[n - k]).scale(&int(k as i64)));
                }
            }
            e.push(s.scale(&Rational::new(One::one(), (n as i64).into())));
        }
        Ok(Self::from_dense(&self.ctx, self.denom, 0, self.trunc, e))
    }

    /// Formal logarithm of a series `1 + (positive exponents)`.
    pub fn log(&self) -> Result<Self> {
        if self.valuation().is_some_and(|v| v < 0) || self.trunc <= 0 {
            return Err(Error::LogPrecondition);
        }
        if self.coeffs.get(&0) != Some(&R::one_in(&self.ctx)) {
            return Err(Error::LogPrecondition);
        }
        let n_max = self.trunc as usize;
        let a = self.dense(0, n_max as i64);
        let mut l: Vec<R> = vec![R::zero_in(&self.ctx)];
        for n in 1..n_max {
            let mut s = a[n].scale(&int(n as i64));
            for k in 1..n {
                if !a[n - k].vanishes() && !l[k].vanishes() {
                    s = s.sub(&l[k].mul(&a[n - k]).scale(&int(k as i64)));
                }
            }
            l.push(s.scale(&Rational::new(One::one(), (n as i64).into())));
        }
        Ok(Self::from_dense(&self.ctx, self.denom, 0, self.trunc, l))
    }

    /// Integer power; negative exponents go through [`QSeries::invert`].
    pub fn pow(&self, e: i64) -> Result<Self> {
        let mut base = if e < 0 { self.invert()? } else { self.clone() };
        let mut k = e.unsigned_abs();
        let mut acc = Self::one(&self.ctx, self.denom, base.trunc);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Apply a coefficient map into another ring.
    pub fn map_ring<S, F>(&self, ctx: &S::Ctx, f: F) -> QSeries<S>
    where
        S: CoefficientRing,
        F: Fn(&R) -> S,
    {
        let mut out = QSeries::<S>::zero(ctx, self.denom, self.trunc);
        for (&e, c) in &self.coeffs {
            out.set(e, f(c));
        }
        out
    }

    /// First disagreement below the joint truncation, or `None`.
    pub fn first_difference(&self, other: &Self, tol: f64) -> Result<Option<Discrepancy>> {
        let (a, b) = self.unify(other)?;
        let trunc = a.trunc.min(b.trunc);
        let mut keys: Vec<i64> = a.coeffs.range(..trunc).chain(b.coeffs.range(..trunc)).map(|(e, _)| *e).collect();
        keys.sort_unstable();
        keys.dedup();
        for e in keys {
            let (x, y) = (a.coeff(e)?, b.coeff(e)?);
            if !x.approx_eq(&y, tol) {
                return Ok(Some(Discrepancy {
                    location: format!("q^{}", exponent_label(e, a.denom)),
                    left: x.display(),
                    right: y.display(),
                }));
            }
        }
        Ok(None)
    }

    /// Exact (or tolerance-based, for float rings) agreement to the joint truncation.
    pub fn agrees_with(&self, other: &Self, tol: f64) -> Result<bool> {
        Ok(self.first_difference(other, tol)?.is_none())
    }

    pub fn to_json(&self) -> Value {
        let coeffs: Vec<Value> = self.coeffs.iter().map(|(e, c)| json!([e, c.to_json()])).collect();
        json!({ "denom": self.denom, "trunc": self.trunc, "coeffs": coeffs })
    }

    pub fn from_json(ctx: &R::Ctx, value: &Value) -> Result<Self> {
        let field = |k: &str| value.get(k).ok_or_else(|| Error::Parse(format!("missing field {k}")));
        let denom = field("denom")?.as_u64().filter(|d| *d > 0).ok_or_else(|| Error::Parse("bad denom".into()))?;
        let trunc = field("trunc")?.as_i64().ok_or_else(|| Error::Parse("bad trunc".into()))?;
        let mut s = Self::zero(ctx, denom, trunc);
        for entry in field("coeffs")?.as_array().ok_or_else(|| Error::Parse("coeffs must be an array".into()))? {
            let pair =
                entry.as_array().filter(|p| p.len() == 2).ok_or_else(|| Error::Parse(format!("bad entry {entry}")))?;
            let e = pair[0].as_i64().ok_or_else(|| Error::Parse("bad exponent".into()))?;
            if e >= trunc {
                return Err(Error::BeyondTruncation { exponent: e, trunc });
            }
            let c = R::from_json(ctx, &pair[1])?;
            s.set(e, c);
        }
        Ok(s)
    }

    /// Human-readable rendering, e.g. `1/120 + 2q + 18q^2 + O(q^3)`.
    pub fn to_text(&self) -> String {
        let mut parts: Vec<String> = Vec::new();
        for (&e, c) in &self.coeffs {
            let c = c.display();
            let mono = match exponent_label(e, self.denom).as_str() {
                "0" => String::new(),
                "1" => "q".to_string(),
                x => format!("q^{x}"),
            };
            parts.push(match (c.as_str(), mono.is_empty()) {
                (_, true) => c,
                ("1", false) => mono,
                ("-1", false) => format!("-{mono}"),
                _ if c.contains(['+', ' ']) || c.starts_with('{') || c.starts_with('[') => {
                    format!("({c})*{mono}")
                }
                _ => format!("{c}*{mono}"),
            });
        }
        parts.push(format!("O(q^{})", exponent_label(self.trunc, self.denom)));
        parts.join(" + ").replace("+ -", "- ")
    }
}

impl QSeries<Rational> {
    /// Rational series with integer coefficients `values[n]` at `q^n`.
    pub fn from_ints(values: &[i64], trunc: i64) -> Self {
        Self::from_dense(&(), 1, 0, trunc, values.iter().map(|v| int(*v)).collect())
    }

    /// `q`-adic Laurent polynomial in `q` with rational coefficients.
    pub fn from_rationals(values: &[Rational], trunc: i64) -> Self {
        Self::from_dense(&(), 1, 0, trunc, values.to_vec())
    }
}

pub(crate) fn exponent_label(e: i64, denom: u64) -> String {
    let r = Rational::new(e.into(), (denom as i64).into());
    if r.denom().is_one() {
        r.numer().to_string()
    } else if r.is_zero() {
        "0".into()
    } else {
        format!("({}/{})", r.numer(), r.denom())
    }
}

impl<R: CoefficientRing> fmt::Display for QSeries<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

// Operator sugar for internal computations where the ring context is known
// to agree. These panic on a ring mismatch; use the named methods otherwise.
impl<R: CoefficientRing> ops::Add for &QSeries<R> {
    type Output = QSeries<R>;
    fn add(self, rhs: Self) -> QSeries<R> {
        QSeries::add(self, rhs).expect("ring mismatch in series addition")
    }
}

impl<R: CoefficientRing> ops::Sub for &QSeries<R> {
    type Output = QSeries<R>;
    fn sub(self, rhs: Self) -> QSeries<R> {
        QSeries::sub(self, rhs).expect("ring mismatch in series subtraction")
    }
}

impl<R: CoefficientRing> ops::Mul for &QSeries<R> {
    type Output = QSeries<R>;
    fn mul(self, rhs: Self) -> QSeries<R> {
        QSeries::mul(self, rhs).expect("ring mismatch in series multiplication")
    }
}

impl<R: CoefficientRing> ops::Neg for &QSeries<R> {
    type Output = QSeries<R>;
    fn neg(self) -> QSeries<R> {
        QSeries::neg(self)
    }
}

/// `(q;q)_N = prod_{n=1}^{N} (1 - q^n)`, known to `q^N`.
///
/// Factors with `n >= N` do not touch coefficients below `q^N`, so the
/// truncated product is the Euler function to that order.
pub fn eta_pochhammer(n: i64) -> Result<QSeries<Rational>> {
    if n < 1 {
        return Err(Error::InvalidArgument("eta_pochhammer needs N >= 1".into()));
    }
    let mut c = vec![Rational::zero(); n as usize];
    c[0] = Rational::one();
    for k in 1..n as usize {
        for i in (k..n as usize).rev() {
            let t = c[i - k].clone();
            c[i] -= t;
        }
    }
    Ok(QSeries::from_rationals(&c, n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::rat;

    fn s(values: &[i64], trunc: i64) -> QSeries<Rational> {
        QSeries::from_ints(values, trunc)
    }

    #[test]
    fn add_is_coefficientwise() {
        let a = s(&[1, 2], 5);
        let b = s(&[0, 3, 1], 5);
        assert_eq!(&a + &b, s(&[1, 5, 1], 5));
        assert_eq!(&a + &QSeries::zero(&(), 1, 5), a);
    }

    #[test]
    fn add_unifies_denominators() {
        let half = QSeries::monomial(&(), 2, 10, 1, int(1));
        let whole = QSeries::monomial(&(), 1, 5, 1, int(1));
        let sum = half.add(&whole).unwrap();
        assert_eq!(sum.denom(), 2);
        assert_eq!(sum.trunc(), 10);
        let keys: Vec<i64> = sum.iter().map(|(e, _)| e).collect();
        assert_eq!(keys, vec![1, 2]);
    }

    #[test]
    fn add_takes_minimum_truncation() {
        let a = s(&[1, 1, 1, 1, 1, 1], 6);
        let b = s(&[1], 3);
        let c = &a + &b;
        assert_eq!(c.trunc(), 3);
        assert!(c.coeff(3).is_err());
    }

    #[test]
    fn mul_basic() {
        let a = s(&[1, 1], 6);
        let b = s(&[1, -1], 6);
        assert_eq!(&a * &b, s(&[1, 0, -1], 6));
        let one = QSeries::one(&(), 1, 6);
        assert_eq!(&a * &one, a);
    }

    #[test]
    fn beyond_truncation_is_an_error() {
        let a = s(&[1, 2, 3], 3);
        assert!(matches!(a.coeff(3), Err(Error::BeyondTruncation { .. })));
        assert_eq!(a.coeff(-4).unwrap(), int(0));
    }

    #[test]
    fn invert_geometric() {
        let a = s(&[1, -1], 8);
        assert_eq!(a.invert().unwrap(), s(&[1; 8], 8));
        let one = QSeries::<Rational>::one(&(), 1, 8);
        assert_eq!(one.invert().unwrap(), one);
    }

    #[test]
    fn invert_laurent() {
        // (2q) * (1 + q)  ->  inverse is (1/2) q^{-1} (1 - q + q^2 - ...)
        let a = s(&[0, 2, 2], 8);
        let inv = a.invert().unwrap();
        assert_eq!(inv.valuation(), Some(-1));
        assert_eq!(inv.trunc(), 6);
        assert_eq!(inv.coeff(-1).unwrap(), rat(1, 2));
        assert_eq!(inv.coeff(0).unwrap(), rat(-1, 2));
        let prod = &a * &inv;
        assert_eq!(prod.first_difference(&QSeries::one(&(), 1, 100), 0.0).unwrap(), None);
    }

    #[test]
    fn invert_needs_a_unit() {
        assert!(matches!(QSeries::<Rational>::zero(&(), 1, 5).invert(), Err(Error::NotAUnit)));
    }

    #[test]
    fn exp_of_q() {
        let q = QSeries::monomial(&(), 1, 6, 1, int(1));
        let e = q.exp().unwrap();
        let fact = [1, 1, 2, 6, 24, 120];
        for (n, f) in fact.iter().enumerate() {
            assert_eq!(e.coeff(n as i64).unwrap(), rat(1, *f));
        }
        assert_eq!(QSeries::<Rational>::zero(&(), 1, 6).exp().unwrap(), QSeries::one(&(), 1, 6));
    }

    #[test]
    fn exp_log_preconditions() {
        assert!(matches!(s(&[1, 1], 4).exp(), Err(Error::ExpPrecondition)));
        assert!(matches!(s(&[2, 1], 4).log(), Err(Error::LogPrecondition)));
        assert!(matches!(s(&[0, 1], 4).log(), Err(Error::LogPrecondition)));
    }

    #[test]
    fn pentagonal_numbers() {
        let eta = eta_pochhammer(8).unwrap();
        assert_eq!(eta, s(&[1, -1, -1, 0, 0, 1, 0, 1], 8));
        assert_eq!(eta.invert().unwrap().coeff(5).unwrap(), int(7));
    }

    #[test]
    fn json_shape() {
        let a = QSeries::from_rationals(&[rat(1, 120), int(2), int(18)], 3);
        let v = a.to_json();
        assert_eq!(v.to_string(), r#"{"coeffs":[[0,"1/120"],[1,"2"],[2,"18"]],"denom":1,"trunc":3}"#);
        assert_eq!(QSeries::from_json(&(), &v).unwrap(), a);
    }

    #[test]
    fn text_rendering() {
        let a = QSeries::from_rationals(&[rat(1, 120), int(2), int(-18)], 3);
        assert_eq!(a.to_text(), "1/120 + 2*q - 18*q^2 + O(q^3)");
    }
}
