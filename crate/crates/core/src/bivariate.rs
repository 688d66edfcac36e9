//! Series in an outer formal variable whose coefficients are [`QSeries`].
//!
//! `BiSeries` stores `sum_{low <= t < trunc} A_t(q) V^t` where `V` is one of the
//! outer variables `X`, `Y` or `Z`. All slices share one grading denominator
//! and one `q`-truncation; operations re-normalise to the minimum.

use std::fmt;

use num_integer::Integer;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::ring::{int, CoefficientRing, Rational};
use crate::series::{exponent_label, Discrepancy, QSeries};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OuterVar {
    X,
    Y,
    /// `Z = 2 pi i z`.
    Z,
}

impl OuterVar {
    pub fn name(self) -> &'static str {
        match self {
            OuterVar::X => "X",
            OuterVar::Y => "Y",
            OuterVar::Z => "Z",
        }
    }

    fn parse(s: &str) -> Result<Self> {
        match s {
            "X" => Ok(OuterVar::X),
            "Y" => Ok(OuterVar::Y),
            "Z" => Ok(OuterVar::Z),
            _ => Err(Error::Parse(format!("unknown outer variable {s:?}"))),
        }
    }
}

impl fmt::Display for OuterVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BiSeries<R: CoefficientRing> {
    var: OuterVar,
    low: i64,
    trunc: i64,
    denom: u64,
    qtrunc: i64,
    slices: Vec<QSeries<R>>,
    ctx: R::Ctx,
}

/// A [`BiSeries`] in `Z = 2 pi i z`.
pub type ZSeries<R> = BiSeries<R>;

impl<R: CoefficientRing> BiSeries<R> {
    pub fn zero(ctx: &R::Ctx, var: OuterVar, trunc: i64, denom: u64, qtrunc: i64) -> Self {
        Self { var, low: 0, trunc, denom, qtrunc, slices: Vec::new(), ctx: ctx.clone() }
    }

    pub fn one(ctx: &R::Ctx, var: OuterVar, trunc: i64, denom: u64, qtrunc: i64) -> Self {
        Self::constant(var, trunc, QSeries::one(ctx, denom, qtrunc))
    }

    /// The series `s * V^0`.
    pub fn constant(var: OuterVar, trunc: i64, s: QSeries<R>) -> Self {
        Self::from_slices(var, 0, trunc, vec![s]).expect("single slice is always consistent")
    }

    /// Build from slices `A_low, A_{low+1}, ...`; missing slices up to `trunc`
    /// are zero. Slices are brought to a common grading and `q`-truncation.
    pub fn from_slices(var: OuterVar, low: i64, trunc: i64, slices: Vec<QSeries<R>>) -> Result<Self> {
        let first = slices.first().ok_or_else(|| Error::InvalidArgument("no slices".into()))?;
        let ctx = first.ctx().clone();
        let denom = slices.iter().fold(1u64, |l, s| l.lcm(&s.denom()));
        let mut qtrunc = i64::MAX;
        let mut regraded = Vec::with_capacity(slices.len());
        for s in &slices {
            if s.ctx() != &ctx {
                return Err(Error::RingMismatch { left: R::ring_name(&ctx), right: R::ring_name(s.ctx()) });
            }
            let s = s.with_denom(denom)?;
            qtrunc = qtrunc.min(s.trunc());
            regraded.push(s);
        }
        let mut out = Self { var, low, trunc, denom, qtrunc, slices: regraded, ctx };
        out.normalize();
        Ok(out)
    }

    /// Polynomial in the outer variable with constant (in `q`) coefficients.
    pub fn from_outer_coeffs(
        ctx: &R::Ctx,
        var: OuterVar,
        low: i64,
        trunc: i64,
        denom: u64,
        qtrunc: i64,
        coeffs: Vec<R>,
    ) -> Self {
        let slices = coeffs.into_iter().map(|c| QSeries::monomial(ctx, denom, qtrunc, 0, c)).collect();
        let mut out = Self { var, low, trunc, denom, qtrunc, slices, ctx: ctx.clone() };
        out.normalize();
        out
    }

    fn normalize(&mut self) {
        let hi = (self.trunc - self.low).max(0) as usize;
        self.slices.truncate(hi);
        let qtrunc = self.qtrunc;
        for s in &mut self.slices {
            if s.trunc() > qtrunc {
                *s = s.truncate(qtrunc);
            }
        }
        while self.slices.last().is_some_and(|s| s.is_zero()) {
            self.slices.pop();
        }
        let lead_zero = self.slices.iter().take_while(|s| s.is_zero()).count();
        if lead_zero > 0 {
            self.slices.drain(..lead_zero);
            self.low += lead_zero as i64;
        }
        if self.slices.is_empty() {
            self.low = self.low.min(self.trunc).min(0);
        }
    }

    pub fn var(&self) -> OuterVar {
        self.var
    }

    /// Lowest outer index that may carry a nonzero slice.
    pub fn low(&self) -> i64 {
        self.low
    }

    /// Exclusive outer truncation.
    pub fn trunc(&self) -> i64 {
        self.trunc
    }

    pub fn denom(&self) -> u64 {
        self.denom
    }

    pub fn qtrunc(&self) -> i64 {
        self.qtrunc
    }

    pub fn ctx(&self) -> &R::Ctx {
        &self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.slices.is_empty()
    }

    /// Lowest outer index with a nonzero slice.
    pub fn valuation(&self) -> Option<i64> {
        (!self.slices.is_empty()).then_some(self.low)
    }

    /// Coefficient of `V^t`.
    pub fn slice(&self, t: i64) -> Result<QSeries<R>> {
        if t >= self.trunc {
            return Err(Error::BeyondTruncation { exponent: t, trunc: self.trunc });
        }
        Ok(self.slice_or_zero(t))
    }

    fn slice_or_zero(&self, t: i64) -> QSeries<R> {
        let i = t - self.low;
        if i >= 0 && (i as usize) < self.slices.len() {
            self.slices[i as usize].clone()
        } else {
            QSeries::zero(&self.ctx, self.denom, self.qtrunc)
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.var != other.var {
            return Err(Error::VariableMismatch(self.var, other.var));
        }
        if self.ctx != other.ctx {
            return Err(Error::RingMismatch { left: R::ring_name(&self.ctx), right: R::ring_name(&other.ctx) });
        }
        Ok(())
    }

    fn build(&self, low: i64, trunc: i64, slices: Vec<QSeries<R>>) -> Result<Self> {
        if slices.is_empty() {
            return Ok(Self {
                var: self.var,
                low: 0.min(trunc),
                trunc,
                denom: self.denom,
                qtrunc: self.qtrunc,
                slices,
                ctx: self.ctx.clone(),
            });
        }
        Self::from_slices(self.var, low, trunc, slices)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let trunc = self.trunc.min(other.trunc);
        let low = self.low.min(other.low).min(trunc);
        let slices =
            (low..trunc).map(|t| self.slice_or_zero(t).add(&other.slice_or_zero(t))).collect::<Result<Vec<_>>>()?;
        self.build(low, trunc, slices)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        out.slices = self.slices.iter().map(QSeries::neg).collect();
        out
    }

    pub fn scale(&self, c: &R) -> Self {
        let mut out = self.clone();
        out.slices = self.slices.iter().map(|s| s.scale(c)).collect();
        out.normalize();
        out
    }

    pub fn scale_rational(&self, r: &Rational) -> Self {
        self.scale(&R::from_rational(&self.ctx, r))
    }

    /// Multiply every slice by the same `q`-series.
    pub fn mul_series(&self, s: &QSeries<R>) -> Result<Self> {
        if self.is_zero() {
            let mut out = self.clone();
            out.qtrunc = out.qtrunc.min(s.with_denom(out.denom.lcm(&s.denom()))?.trunc());
            out.denom = out.denom.lcm(&s.denom());
            return Ok(out);
        }
        let slices = self.slices.iter().map(|a| a.mul(s)).collect::<Result<Vec<_>>>()?;
        self.build(self.low, self.trunc, slices)
    }

    /// Multiply by `V^k`.
    pub fn shift_outer(&self, k: i64) -> Self {
        let mut out = self.clone();
        out.low += k;
        out.trunc += k;
        out
    }

    pub fn truncate_outer(&self, trunc: i64) -> Self {
        let mut out = self.clone();
        out.trunc = trunc.min(self.trunc);
        out.normalize();
        out
    }

    pub fn truncate_q(&self, qtrunc: i64) -> Self {
        let mut out = self.clone();
        out.qtrunc = qtrunc.min(self.qtrunc);
        out.normalize();
        out
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let trunc = (self.trunc + other.low).min(other.trunc + self.low);
        if self.is_zero() || other.is_zero() {
            let mut z = self.build(0, trunc, Vec::new())?;
            z.qtrunc = self.qtrunc.min(other.qtrunc);
            return Ok(z);
        }
        let low = self.low + other.low;
        let mut slices = Vec::new();
        for t in low..trunc {
            let mut acc = QSeries::zero(&self.ctx, self.denom.lcm(&other.denom), self.qtrunc.max(other.qtrunc) * 2);
            for (i, a) in self.slices.iter().enumerate() {
                let j = t - self.low - i as i64 - other.low;
                if j < 0 {
                    break;
                }
                if let Some(b) = other.slices.get(j as usize) {
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc.add(&a.mul(b)?)?;
                    }
                }
            }
            slices.push(acc);
        }
        let mut out = Self::from_slices(self.var, low, trunc, slices)?;
        let qt = self.qtrunc.min(other.qtrunc);
        if out.qtrunc > qt {
            out.qtrunc = qt;
            out.normalize();
        }
        Ok(out)
    }

    /// Formal exponential. Requires no negative outer exponents and a constant
    /// slice that is admissible for [`QSeries::exp`].
    pub fn exp(&self) -> Result<Self> {
        if self.valuation().is_some_and(|v| v < 0) {
            return Err(Error::ExpPrecondition);
        }
        let trunc = self.trunc.max(0);
        let a: Vec<QSeries<R>> = (0..trunc).map(|t| self.slice_or_zero(t)).collect();
        let mut e: Vec<QSeries<R>> = Vec::with_capacity(trunc as usize);
        if trunc > 0 {
            e.push(a[0].exp()?);
        }
        for t in 1..trunc as usize {
            let mut acc = QSeries::zero(&self.ctx, self.denom, self.qtrunc);
            for s in 1..=t {
                if !a[s].is_zero() && !e[t - s].is_zero() {
                    acc = acc.add(&a[s].mul(&e[t - s])?.scale_rational(&int(s as i64)))?;
                }
            }
            e.push(acc.scale_rational(&Rational::new(1.into(), (t as i64).into())));
        }
        self.build(0, trunc, e)
    }

    /// Formal logarithm of a series whose constant slice is admissible for
    /// [`QSeries::log`] and which has no negative outer exponents.
    pub fn log(&self) -> Result<Self> {
        if self.valuation() != Some(0) {
            return Err(Error::LogPrecondition);
        }
        let trunc = self.trunc;
        let a: Vec<QSeries<R>> = (0..trunc).map(|t| self.slice_or_zero(t)).collect();
        let a0_inv = a[0].invert()?;
        let mut l: Vec<QSeries<R>> = vec![a[0].log()?];
        for t in 1..trunc as usize {
            let mut acc = a[t].scale_rational(&int(t as i64));
            for s in 1..t {
                if !l[s].is_zero() && !a[t - s].is_zero() {
                    acc = acc.sub(&l[s].mul(&a[t - s])?.scale_rational(&int(s as i64)))?;
                }
            }
            let lt = acc.mul(&a0_inv)?.scale_rational(&Rational::new(1.into(), (t as i64).into()));
            l.push(lt);
        }
        self.build(0, trunc, l)
    }

    /// Multiplicative inverse; the lowest nonzero slice must be invertible.
    pub fn invert(&self) -> Result<Self> {
        let v = self.valuation().ok_or(Error::NotAUnit)?;
        let lead_inv = self.slices[0].invert()?;
        let len = self.trunc - v;
        let b: Vec<QSeries<R>> = (0..len).map(|t| self.slice_or_zero(v + t).mul(&lead_inv)).collect::<Result<_>>()?;
        let mut c: Vec<QSeries<R>> = vec![QSeries::one(&self.ctx, self.denom, lead_inv.trunc())];
        for t in 1..len as usize {
            let mut acc = QSeries::zero(&self.ctx, self.denom, lead_inv.trunc());
            for s in 1..=t {
                if !b[s].is_zero() && !c[t - s].is_zero() {
                    acc = acc.add(&b[s].mul(&c[t - s])?)?;
                }
            }
            c.push(acc.neg());
        }
        let c = c.iter().map(|x| x.mul(&lead_inv)).collect::<Result<Vec<_>>>()?;
        self.build(-v, self.trunc - 2 * v, c)
    }

    /// Integer power, negative exponents through [`BiSeries::invert`].
    pub fn pow(&self, e: i64) -> Result<Self> {
        if e == 0 {
            return Ok(Self::one(&self.ctx, self.var, self.trunc.max(1), self.denom, self.qtrunc));
        }
        let mut base = if e < 0 { self.invert()? } else { self.clone() };
        let mut k = e.unsigned_abs();
        let mut acc: Option<Self> = None;
        while k > 0 {
            if k & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(a) => a.mul(&base)?,
                });
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc.expect("nonzero exponent"))
    }

    /// Substitute `V -> c * W^m` (with `W` the new outer variable), `m >= 1`.
    pub fn substitute_outer(&self, c: &R, m: u32, var: OuterVar) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidArgument("substitution degree must be positive".into()));
        }
        if self.low < 0 && c.inv().is_none() {
            return Err(Error::NotAUnit);
        }
        let m = m as i64;
        let mut slices = Vec::new();
        for (i, s) in self.slices.iter().enumerate() {
            let t = self.low + i as i64;
            let factor = if t >= 0 { c.pow(t as u64) } else { c.inv().expect("checked above").pow((-t) as u64) };
            if i > 0 {
                for _ in 1..m {
                    slices.push(QSeries::zero(&self.ctx, self.denom, self.qtrunc));
                }
            }
            slices.push(s.scale(&factor));
        }
        let mut out = self.build(m * self.low, m * self.trunc, slices)?;
        out.var = var;
        Ok(out)
    }

    /// Apply a map to every slice (e.g. a change of coefficient ring).
    pub fn map_slices<S, F>(&self, ctx: &S::Ctx, f: F) -> BiSeries<S>
    where
        S: CoefficientRing,
        F: Fn(&QSeries<R>) -> QSeries<S>,
    {
        let mut out = BiSeries::<S> {
            var: self.var,
            low: self.low,
            trunc: self.trunc,
            denom: self.denom,
            qtrunc: self.qtrunc,
            slices: self.slices.iter().map(f).collect(),
            ctx: ctx.clone(),
        };
        out.normalize();
        out
    }

    /// First disagreement below both truncations (outer and `q`).
    pub fn first_difference(&self, other: &Self, tol: f64) -> Result<Option<Discrepancy>> {
        self.check(other)?;
        let trunc = self.trunc.min(other.trunc);
        let low = self.low.min(other.low);
        for t in low..trunc {
            if let Some(d) = self.slice_or_zero(t).first_difference(&other.slice_or_zero(t), tol)? {
                return Ok(Some(Discrepancy {
                    location: format!("{}^{}*{}", self.var, t, d.location),
                    left: d.left,
                    right: d.right,
                }));
            }
        }
        Ok(None)
    }

    pub fn to_json(&self) -> Value {
        let slices: Vec<Value> = self.slices.iter().map(QSeries::to_json).collect();
        json!({
            "var": self.var.name(),
            "low": self.low,
            "trunc": self.trunc,
            "denom": self.denom,
            "qtrunc": self.qtrunc,
            "slices": slices,
        })
    }

    pub fn from_json(ctx: &R::Ctx, value: &Value) -> Result<Self> {
        let field = |k: &str| value.get(k).ok_or_else(|| Error::Parse(format!("missing field {k}")));
        let var = OuterVar::parse(field("var")?.as_str().unwrap_or(""))?;
        let int_field = |k: &str| field(k)?.as_i64().ok_or_else(|| Error::Parse(format!("bad {k}")));
        let (low, trunc, qtrunc) = (int_field("low")?, int_field("trunc")?, int_field("qtrunc")?);
        let denom = field("denom")?.as_u64().filter(|d| *d > 0).ok_or_else(|| Error::Parse("bad denom".into()))?;
        let slices = field("slices")?
            .as_array()
            .ok_or_else(|| Error::Parse("slices must be an array".into()))?
            .iter()
            .map(|v| QSeries::from_json(ctx, v))
            .collect::<Result<Vec<_>>>()?;
        let mut out = Self { var, low, trunc, denom, qtrunc, slices, ctx: ctx.clone() };
        if out.slices.iter().any(|s| s.denom() != denom || s.trunc() != qtrunc) {
            return Err(Error::Parse("slice grading does not match header".into()));
        }
        out.normalize();
        Ok(out)
    }

    pub fn to_text(&self) -> String {
        let mut lines = Vec::new();
        for (i, s) in self.slices.iter().enumerate() {
            if !s.is_zero() {
                lines.push(format!("{}^{}: {}", self.var, self.low + i as i64, s));
            }
        }
        lines.push(format!("O({}^{}, q^{})", self.var, self.trunc, exponent_label(self.qtrunc, self.denom)));
        lines.join("\n")
    }
}

impl<R: CoefficientRing> fmt::Display for BiSeries<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Outer-variable Taylor series with rational coefficients, as a `BiSeries`
/// with constant slices.
pub fn outer_taylor<R: CoefficientRing>(
    ctx: &R::Ctx,
    var: OuterVar,
    trunc: i64,
    denom: u64,
    qtrunc: i64,
    coeffs: impl Fn(u64) -> Rational,
) -> BiSeries<R> {
    let coeffs = (0..trunc.max(0) as u64).map(|t| R::from_rational(ctx, &coeffs(t))).collect();
    BiSeries::from_outer_coeffs(ctx, var, 0, trunc, denom, qtrunc, coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{factorial, rat};

    fn geometric(trunc: i64) -> BiSeries<Rational> {
        outer_taylor(&(), OuterVar::Y, trunc, 1, 5, |_| int(1))
    }

    #[test]
    fn substitute_geometric() {
        let x = geometric(6).substitute_outer(&int(-4), 2, OuterVar::X).unwrap();
        assert_eq!(x.var(), OuterVar::X);
        assert_eq!(x.trunc(), 12);
        for t in 0..12 {
            let want = if t % 2 == 0 { num_traits::pow(int(-4), t as usize / 2) } else { int(0) };
            assert_eq!(x.slice(t).unwrap().coeff(0).unwrap(), want);
        }
    }

    #[test]
    fn exp_of_zero_is_one() {
        let z = BiSeries::<Rational>::zero(&(), OuterVar::Z, 6, 1, 5);
        assert_eq!(z.exp().unwrap(), BiSeries::one(&(), OuterVar::Z, 6, 1, 5));
    }

    #[test]
    fn exp_matches_taylor() {
        let x = outer_taylor::<Rational>(&(), OuterVar::X, 8, 1, 4, |t| if t == 1 { int(1) } else { int(0) });
        let e = x.exp().unwrap();
        for t in 0..8u64 {
            let c = e.slice(t as i64).unwrap().coeff(0).unwrap();
            assert_eq!(c, Rational::new(1.into(), factorial(t)));
        }
        assert_eq!(e.log().unwrap(), x);
    }

    #[test]
    fn invert_laurent() {
        // 2 sinh(Z/2)
        let s = outer_taylor::<Rational>(&(), OuterVar::Z, 9, 1, 3, |t| {
            if t % 2 == 1 {
                Rational::new(1.into(), factorial(t) * num_bigint::BigInt::from(1u64 << (t - 1)))
            } else {
                int(0)
            }
        });
        let inv = s.invert().unwrap();
        assert_eq!(inv.low(), -1);
        assert_eq!(inv.trunc(), 7);
        assert_eq!(inv.slice(1).unwrap().coeff(0).unwrap(), rat(-1, 24));
        let one = s.mul(&inv).unwrap();
        assert_eq!(one.trunc(), 8);
        assert_eq!(one.first_difference(&BiSeries::one(&(), OuterVar::Z, 20, 1, 3), 0.0).unwrap(), None);
    }

    #[test]
    fn variable_mismatch() {
        let a = BiSeries::<Rational>::one(&(), OuterVar::X, 3, 1, 3);
        let b = BiSeries::<Rational>::one(&(), OuterVar::Z, 3, 1, 3);
        assert!(matches!(a.add(&b), Err(Error::VariableMismatch(..))));
    }

    #[test]
    fn json_round_trip() {
        let a = geometric(4).mul_series(&QSeries::from_ints(&[1, 2, 3], 3)).unwrap().shift_outer(-1);
        let back = BiSeries::from_json(&(), &a.to_json()).unwrap();
        assert_eq!(back, a);
    }
}
