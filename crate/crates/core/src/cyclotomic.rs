//! Exact arithmetic in the cyclotomic field `Q(zeta_m)`.
//!
//! Elements are residues modulo the `m`-th cyclotomic polynomial `Phi_m`,
//! stored as coordinate vectors of length `phi(m)` in the power basis
//! `1, zeta_m, ..., zeta_m^{phi(m)-1}` with `zeta_m = e^{2 pi i/m}`.
//! Working modulo `Phi_m` (rather than `x^m - 1`) makes every nonzero element
//! invertible.

use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::ring::{format_rational, parse_rational, rational_to_f64, CoefficientRing, Rational, RootsOfUnity};

/// Largest conductor handled exactly; beyond it callers use `Complex64`.
pub const MAX_EXACT_CONDUCTOR: u64 = 12;

/// Ring context of [`Cyclo`]: the conductor `m` of `Q(zeta_m)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Conductor(pub u64);

#[derive(Clone, Debug)]
pub struct Cyclo {
    m: u64,
    coords: Vec<Rational>,
}

/// The coefficient ring `Q(zeta_m)`, available exactly for `m <= 12`.
pub fn cyclo_ring(m: u64) -> Result<Conductor> {
    if m == 0 {
        return Err(Error::InvalidArgument("conductor must be positive".into()));
    }
    if m > MAX_EXACT_CONDUCTOR {
        return Err(Error::ConductorTooLarge(m));
    }
    Ok(Conductor(m))
}

pub fn euler_phi(m: u64) -> u64 {
    let mut n = m;
    let mut phi = m;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            phi -= phi / p;
        }
        p += 1;
    }
    if n > 1 {
        phi -= phi / n;
    }
    phi
}

/// Integer coefficients of `Phi_m`, lowest degree first.
pub fn cyclotomic_polynomial(m: u64) -> Vec<BigInt> {
    assert!(m >= 1);
    // x^m - 1 divided by Phi_d for every proper divisor d
    let mut num: Vec<BigInt> = vec![BigInt::zero(); m as usize + 1];
    num[0] = -BigInt::one();
    num[m as usize] = BigInt::one();
    for d in 1..m {
        if m.is_multiple_of(d) {
            num = div_exact_monic(&num, &cyclotomic_polynomial(d));
        }
    }
    num
}

fn div_exact_monic(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut rem = a.to_vec();
    let db = b.len() - 1;
    let mut quo = vec![BigInt::zero(); rem.len() - db];
    for i in (0..quo.len()).rev() {
        let c = rem[i + db].clone();
        if !c.is_zero() {
            for (j, bj) in b.iter().enumerate() {
                rem[i + j] -= &c * bj;
            }
        }
        quo[i] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero));
    quo
}

fn modulus(m: u64) -> Vec<Rational> {
    cyclotomic_polynomial(m).into_iter().map(Rational::from_integer).collect()
}

fn trim(p: &mut Vec<Rational>) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

/// Remainder of `a` modulo the monic polynomial `f`.
fn poly_rem(mut a: Vec<Rational>, f: &[Rational]) -> Vec<Rational> {
    let df = f.len() - 1;
    while a.len() > df {
        let c = a.pop().expect("nonempty");
        if !c.is_zero() {
            let shift = a.len() - df;
            for j in 0..df {
                a[shift + j] -= &c * &f[j];
            }
        }
    }
    a.resize(df, Rational::zero());
    a
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Quotient and remainder of `a / b` over `Q`, `b` nonzero and trimmed.
fn poly_divmod(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut rem = a.to_vec();
    trim(&mut rem);
    let db = b.len() - 1;
    let lead_inv = b[db].recip();
    if rem.len() <= db {
        return (Vec::new(), rem);
    }
    let mut quo = vec![Rational::zero(); rem.len() - db];
    for i in (0..quo.len()).rev() {
        let c = &rem[i + db] * &lead_inv;
        if !c.is_zero() {
            for (j, bj) in b.iter().enumerate() {
                rem[i + j] -= &c * bj;
            }
        }
        quo[i] = c;
    }
    rem.truncate(db);
    trim(&mut rem);
    (quo, rem)
}

fn poly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len().max(b.len());
    let mut out: Vec<Rational> = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(Rational::zero);
            let y = b.get(i).cloned().unwrap_or_else(Rational::zero);
            x - y
        })
        .collect();
    trim(&mut out);
    out
}

impl Cyclo {
    pub fn from_rational(m: u64, r: &Rational) -> Self {
        let n = euler_phi(m) as usize;
        let mut coords = vec![Rational::zero(); n];
        coords[0] = r.clone();
        Self { m, coords }
    }

    /// Element from power-basis coordinates (extra coordinates are reduced).
    pub fn from_coords(m: u64, coords: Vec<Rational>) -> Self {
        Self { m, coords: poly_rem(coords, &modulus(m)) }
    }

    pub fn conductor(&self) -> u64 {
        self.m
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    /// `Some(r)` when the element is the rational `r`.
    pub fn as_rational(&self) -> Option<Rational> {
        self.coords[1..].iter().all(Zero::is_zero).then(|| self.coords[0].clone())
    }

    /// Re-express in `Q(zeta_M)` for a multiple `M` of the conductor.
    pub fn lift_to(&self, big: u64) -> Result<Self> {
        if !big.is_multiple_of(self.m) {
            return Err(Error::InvalidArgument(format!("{} does not divide {big}", self.m)));
        }
        let step = (big / self.m) as usize;
        let mut p = vec![Rational::zero(); (self.coords.len() - 1) * step + 1];
        for (i, c) in self.coords.iter().enumerate() {
            p[i * step] = c.clone();
        }
        Ok(Self::from_coords(big, p))
    }

    fn promote(&self, other: &Self) -> (Self, Self) {
        if self.m == other.m {
            return (self.clone(), other.clone());
        }
        let l = self.m.lcm(&other.m);
        (self.lift_to(l).expect("divides lcm"), other.lift_to(l).expect("divides lcm"))
    }

    fn inverse(&self) -> Option<Self> {
        let f = modulus(self.m);
        let mut a = self.coords.clone();
        trim(&mut a);
        if a.is_empty() {
            return None;
        }
        // extended Euclid: track s with s * a == r (mod f)
        let (mut r0, mut r1) = (f.clone(), a);
        let (mut s0, mut s1): (Vec<Rational>, Vec<Rational>) = (Vec::new(), vec![Rational::one()]);
        while r1.len() > 1 {
            let (q, r) = poly_divmod(&r0, &r1);
            let s = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            if r1.is_empty() {
                return None;
            }
        }
        let c = r1[0].recip();
        let inv: Vec<Rational> = s1.iter().map(|x| x * &c).collect();
        Some(Self::from_coords(self.m, inv))
    }
}

/// `zeta_m^j`, reduced modulo `Phi_m`.
pub fn zeta_power(m: u64, j: i64) -> Cyclo {
    let e = j.rem_euclid(m as i64) as usize;
    let mut p = vec![Rational::zero(); e + 1];
    p[e] = Rational::one();
    Cyclo::from_coords(m, p)
}

impl PartialEq for Cyclo {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = self.promote(other);
        a.coords == b.coords
    }
}

impl CoefficientRing for Cyclo {
    type Ctx = Conductor;

    fn ring_name(ctx: &Conductor) -> String {
        format!("Q(zeta_{})", ctx.0)
    }
    fn zero_in(ctx: &Conductor) -> Self {
        Cyclo::from_rational(ctx.0, &Rational::zero())
    }
    fn one_in(ctx: &Conductor) -> Self {
        Cyclo::from_rational(ctx.0, &Rational::one())
    }
    fn from_rational(ctx: &Conductor, r: &Rational) -> Self {
        Cyclo::from_rational(ctx.0, r)
    }
    fn context(&self) -> Conductor {
        Conductor(self.m)
    }
    fn vanishes(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }
    fn add(&self, other: &Self) -> Self {
        let (a, b) = self.promote(other);
        let coords = a.coords.iter().zip(&b.coords).map(|(x, y)| x + y).collect();
        Self { m: a.m, coords }
    }
    fn neg(&self) -> Self {
        Self { m: self.m, coords: self.coords.iter().map(|x| -x).collect() }
    }
    fn mul(&self, other: &Self) -> Self {
        let (a, b) = self.promote(other);
        if let Some(r) = b.as_rational() {
            return a.scale(&r);
        }
        Self { m: a.m, coords: poly_rem(poly_mul(&a.coords, &b.coords), &modulus(a.m)) }
    }
    fn scale(&self, r: &Rational) -> Self {
        Self { m: self.m, coords: self.coords.iter().map(|x| x * r).collect() }
    }
    fn inv(&self) -> Option<Self> {
        self.inverse()
    }
    fn to_complex(&self) -> Complex64 {
        let step = 2.0 * std::f64::consts::PI / self.m as f64;
        self.coords
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| Complex64::from_polar(rational_to_f64(c), step * i as f64))
            .sum()
    }
    fn to_json(&self) -> Value {
        let coords: Vec<String> = self.coords.iter().map(format_rational).collect();
        json!({ "conductor": self.m, "coords": coords })
    }
    fn from_json(ctx: &Conductor, value: &Value) -> Result<Self> {
        let m =
            value.get("conductor").and_then(Value::as_u64).ok_or_else(|| Error::Parse("missing conductor".into()))?;
        if m != ctx.0 {
            return Err(Error::RingMismatch { left: Self::ring_name(ctx), right: Self::ring_name(&Conductor(m)) });
        }
        let coords = value
            .get("coords")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("missing coords".into()))?
            .iter()
            .map(|v| v.as_str().ok_or_else(|| Error::Parse(format!("bad coordinate {v}"))).and_then(parse_rational))
            .collect::<Result<Vec<_>>>()?;
        if coords.len() != euler_phi(m) as usize {
            return Err(Error::Parse(format!("expected {} coordinates", euler_phi(m))));
        }
        Ok(Self { m, coords })
    }
    fn display(&self) -> String {
        self.to_string()
    }
}

impl RootsOfUnity for Cyclo {
    fn root_of_unity(ctx: &Conductor, num: i64, den: u64) -> Result<Self> {
        if den == 0 || !ctx.0.is_multiple_of(den) {
            return Err(Error::RootUnavailable { num, den });
        }
        Ok(zeta_power(ctx.0, num * (ctx.0 / den) as i64))
    }
}

impl fmt::Display for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<String> = Vec::new();
        for (i, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => format!("z{}", self.m),
                _ => format!("z{}^{}", self.m, i),
            };
            let (sign, mag) = if c.is_negative() { ("-", -c) } else { ("+", c.clone()) };
            let body = if mono.is_empty() {
                format_rational(&mag)
            } else if mag.is_one() {
                mono
            } else {
                format!("{}*{}", format_rational(&mag), mono)
            };
            terms.push(format!("{sign}{body}"));
        }
        if terms.is_empty() {
            return f.write_str("0");
        }
        let joined = terms.join(" ").replace(" +", " + ").replace(" -", " - ");
        f.write_str(joined.strip_prefix('+').unwrap_or(&joined))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{int, rat};

    #[test]
    fn small_cyclotomic_polynomials() {
        let as_i64 =
            |m| cyclotomic_polynomial(m).iter().map(|c| c.to_string().parse::<i64>().unwrap()).collect::<Vec<_>>();
        assert_eq!(as_i64(1), vec![-1, 1]);
        assert_eq!(as_i64(2), vec![1, 1]);
        assert_eq!(as_i64(3), vec![1, 1, 1]);
        assert_eq!(as_i64(4), vec![1, 0, 1]);
        assert_eq!(as_i64(6), vec![1, -1, 1]);
        assert_eq!(as_i64(12), vec![1, 0, -1, 0, 1]);
        for m in 1..=12 {
            assert_eq!(cyclotomic_polynomial(m).len() as u64 - 1, euler_phi(m));
        }
    }

    #[test]
    fn roots_reduce() {
        assert_eq!(zeta_power(2, 1).as_rational(), Some(int(-1)));
        assert_eq!(zeta_power(1, 5).as_rational(), Some(int(1)));
        let s = zeta_power(3, 1).add(&zeta_power(3, 2));
        assert_eq!(s.as_rational(), Some(int(-1)));
        assert_eq!(zeta_power(6, 2), zeta_power(3, 1));
    }

    #[test]
    fn inverse_of_root() {
        assert_eq!(zeta_power(3, 1).inv().unwrap(), zeta_power(3, 2));
        let one = Cyclo::one_in(&Conductor(5));
        let a = one.sub(&zeta_power(5, 1));
        assert_eq!(a.mul(&a.inv().unwrap()), one);
        assert!(Cyclo::zero_in(&Conductor(7)).inv().is_none());
    }

    #[test]
    fn json_round_trip() {
        let a = Cyclo::from_coords(5, vec![rat(1, 2), int(0), rat(-3, 7)]);
        let v = a.to_json();
        assert_eq!(v.to_string(), r#"{"conductor":5,"coords":["1/2","0","-3/7","0"]}"#);
        assert_eq!(Cyclo::from_json(&Conductor(5), &v).unwrap(), a);
        assert!(Cyclo::from_json(&Conductor(3), &v).is_err());
    }

    #[test]
    fn display() {
        let a = Cyclo::from_coords(3, vec![rat(1, 2), int(-1)]);
        assert_eq!(a.to_string(), "1/2 - z3");
        assert_eq!(Cyclo::zero_in(&Conductor(4)).to_string(), "0");
    }

    #[test]
    fn conductor_limit() {
        assert!(cyclo_ring(12).is_ok());
        assert!(matches!(cyclo_ring(13), Err(Error::ConductorTooLarge(13))));
    }
}
