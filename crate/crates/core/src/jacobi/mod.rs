//! Jacobi theta expansions, torsional Eisenstein series and divisor traces.
//!
//! Everything is expanded in `Z = 2 pi i z`, so coefficients stay rational or
//! cyclotomic. A torsion point `x = alpha tau + beta` is stored reduced to
//! `[0,1)^2`; a [`LiftedPoint`] adds integer translates, which matter for
//! `G_{1,x}` and for the cancellation condition on divisors.

pub mod reconstruct;
pub mod theta;
pub mod torsional;

use std::fmt;

use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::cyclotomic::{Conductor, MAX_EXACT_CONDUCTOR};
use crate::error::{Error, Result};
use crate::ring::{format_rational, parse_rational, Rational};

pub use reconstruct::{theorem3_reconstruct, theta_quotient, trace_series};
pub use theta::{
    theorem1_trace_check, theta_exponential, theta_product, theta_shift_check, theta_shift_direct,
    theta_shift_exponential,
};
pub use torsional::{divisor_g, divisor_trace, eulerian_derivative, torsional_g, torsional_g_lifted};

/// `x = alpha tau + beta` with `alpha, beta` in `[0, 1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TorsionPoint {
    alpha: Rational,
    beta: Rational,
}

fn split_unit(r: &Rational) -> (Rational, i64) {
    let fl = r.floor();
    let n = fl.to_integer().to_i64().expect("lift fits in i64");
    (r - fl, n)
}

impl TorsionPoint {
    /// Reduce `alpha, beta` modulo 1.
    pub fn new(alpha: Rational, beta: Rational) -> Self {
        Self { alpha: split_unit(&alpha).0, beta: split_unit(&beta).0 }
    }

    pub fn origin() -> Self {
        Self { alpha: Rational::zero(), beta: Rational::zero() }
    }

    pub fn alpha(&self) -> &Rational {
        &self.alpha
    }

    pub fn beta(&self) -> &Rational {
        &self.beta
    }

    pub fn is_origin(&self) -> bool {
        self.alpha.is_zero() && self.beta.is_zero()
    }

    /// Denominator of `alpha`: the `q^{1/L}` grading this point needs.
    pub fn grid(&self) -> u64 {
        self.alpha.denom().to_u64().expect("small denominator")
    }

    /// Denominator of `beta`: the conductor of `zeta_beta = e^{2 pi i beta}`.
    pub fn conductor(&self) -> u64 {
        self.beta.denom().to_u64().expect("small denominator")
    }
}

impl fmt::Display for TorsionPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", format_rational(&self.alpha), format_rational(&self.beta))
    }
}

/// A torsion point together with integer lifts:
/// `(alpha + lift_a) tau + (beta + lift_b)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LiftedPoint {
    pub point: TorsionPoint,
    pub lift_a: i64,
    pub lift_b: i64,
}

impl LiftedPoint {
    pub fn new(point: TorsionPoint, lift_a: i64, lift_b: i64) -> Self {
        Self { point, lift_a, lift_b }
    }

    /// Split arbitrary rational coordinates into a reduced point and lifts.
    pub fn from_coordinates(alpha: &Rational, beta: &Rational) -> Self {
        let (a, la) = split_unit(alpha);
        let (b, lb) = split_unit(beta);
        Self { point: TorsionPoint { alpha: a, beta: b }, lift_a: la, lift_b: lb }
    }

    pub fn reduced(point: TorsionPoint) -> Self {
        Self { point, lift_a: 0, lift_b: 0 }
    }

    /// `tau`-coordinate `alpha + lift_a`.
    pub fn a(&self) -> Rational {
        &self.point.alpha + Rational::from_integer(self.lift_a.into())
    }

    /// Real coordinate `beta + lift_b`.
    pub fn b(&self) -> Rational {
        &self.point.beta + Rational::from_integer(self.lift_b.into())
    }

    /// The point `-x`, reduced with matching lifts.
    pub fn neg(&self) -> Self {
        Self::from_coordinates(&-self.a(), &-self.b())
    }
}

impl fmt::Display for LiftedPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.point)?;
        if self.lift_a != 0 || self.lift_b != 0 {
            write!(f, "+{},{}", self.lift_a, self.lift_b)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisorEntry {
    pub mult: i64,
    pub point: LiftedPoint,
}

/// A finite formal sum `sum a_x (x)` of torsion points with chosen lifts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Divisor {
    entries: Vec<DivisorEntry>,
}

impl Divisor {
    pub fn new(entries: Vec<DivisorEntry>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::EmptyDivisor);
        }
        for e in &entries {
            if e.mult == 0 {
                return Err(Error::InvalidArgument(format!("zero multiplicity at {}", e.point)));
            }
            if e.point.point.is_origin() && (e.point.lift_a != 0 || e.point.lift_b != 0) {
                return Err(Error::InvalidArgument("the origin takes no lift".into()));
            }
        }
        Ok(Self { entries })
    }

    /// `a (0)`.
    pub fn origin(mult: i64) -> Self {
        Self { entries: vec![DivisorEntry { mult, point: LiftedPoint::reduced(TorsionPoint::origin()) }] }
    }

    pub fn entries(&self) -> &[DivisorEntry] {
        &self.entries
    }

    /// `deg D = sum a_x`.
    pub fn degree(&self) -> i64 {
        self.entries.iter().map(|e| e.mult).sum()
    }

    /// Total multiplicity at the origin.
    pub fn origin_multiplicity(&self) -> i64 {
        self.entries.iter().filter(|e| e.point.point.is_origin()).map(|e| e.mult).sum()
    }

    pub fn nonzero_points(&self) -> impl Iterator<Item = &DivisorEntry> {
        self.entries.iter().filter(|e| !e.point.point.is_origin())
    }

    /// Least common multiple of the denominators of the `beta` coordinates.
    pub fn conductor(&self) -> u64 {
        self.entries.iter().fold(1, |l, e| l.lcm(&e.point.point.conductor()))
    }

    /// Least common multiple of the denominators of the `alpha` coordinates.
    pub fn grid(&self) -> u64 {
        self.entries.iter().fold(1, |l, e| l.lcm(&e.point.point.grid()))
    }

    /// Require `sum a_x x = 0` exactly under the chosen lifts.
    pub fn check_lifts(&self) -> Result<()> {
        let mut sa = Rational::zero();
        let mut sb = Rational::zero();
        for e in &self.entries {
            let m = Rational::from_integer(e.mult.into());
            sa += &m * e.point.a();
            sb += &m * e.point.b();
        }
        if !sa.is_zero() || !sb.is_zero() {
            return Err(Error::LiftsDoNotCancel { alpha: format_rational(&sa), beta: format_rational(&sb) });
        }
        Ok(())
    }

    /// Parse `mult@alpha,beta[+lift_a,lift_b]` entries separated by `;`.
    /// Coordinates outside `[0,1)` are reduced and the integer parts added to
    /// the lifts.
    pub fn parse(text: &str) -> Result<Self> {
        let mut entries = Vec::new();
        for piece in text.split(';').map(str::trim).filter(|p| !p.is_empty()) {
            let bad = || Error::Parse(format!("bad divisor entry {piece:?}"));
            let (mult, rest) = piece.split_once('@').ok_or_else(bad)?;
            let mult: i64 = mult.trim().parse().map_err(|_| bad())?;
            let (coords, lifts) = match rest.split_once('+') {
                Some((c, l)) => (c, Some(l)),
                None => (rest, None),
            };
            let (a, b) = coords.split_once(',').ok_or_else(bad)?;
            let mut point = LiftedPoint::from_coordinates(&parse_rational(a)?, &parse_rational(b)?);
            if let Some(l) = lifts {
                let (la, lb) = l.split_once(',').ok_or_else(bad)?;
                point.lift_a += la.trim().parse::<i64>().map_err(|_| bad())?;
                point.lift_b += lb.trim().parse::<i64>().map_err(|_| bad())?;
            }
            entries.push(DivisorEntry { mult, point });
        }
        Self::new(entries)
    }
}

impl fmt::Display for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|e| format!("{}@{}", e.mult, e.point)).collect();
        f.write_str(&parts.join(";"))
    }
}

/// Which coefficient ring a computation at a given conductor needs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RingChoice {
    Rational,
    Cyclotomic(Conductor),
    /// Conductor beyond the exact limit: complex floats.
    Complex,
}

pub fn ring_for_conductor(m: u64) -> RingChoice {
    match m {
        1 | 2 => RingChoice::Rational,
        m if m <= MAX_EXACT_CONDUCTOR => RingChoice::Cyclotomic(Conductor(m)),
        _ => RingChoice::Complex,
    }
}

/// Numerator of `beta` over its denominator, for root-of-unity lookups.
pub(crate) fn beta_parts(p: &TorsionPoint) -> (i64, u64) {
    let n = p.beta.numer().to_i64().expect("small numerator");
    (n, p.conductor())
}

/// `alpha = a / L` on the point's own grid.
pub(crate) fn alpha_parts(p: &TorsionPoint) -> (i64, u64) {
    let n = p.alpha.numer().to_i64().expect("small numerator");
    (n, p.grid())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{int, rat};

    #[test]
    fn reduction() {
        let p = TorsionPoint::new(rat(3, 2), rat(-1, 3));
        assert_eq!(p.alpha(), &rat(1, 2));
        assert_eq!(p.beta(), &rat(2, 3));
        let l = LiftedPoint::from_coordinates(&rat(-1, 2), &int(0));
        assert_eq!((l.point.alpha().clone(), l.lift_a), (rat(1, 2), -1));
        assert_eq!(l.neg(), LiftedPoint::reduced(TorsionPoint::new(rat(1, 2), int(0))));
    }

    #[test]
    fn parse_and_cancel() {
        let d = Divisor::parse("2@0,0;-1@0,1/2;-1@0,1/2+0,-1").unwrap();
        assert_eq!(d.degree(), 0);
        assert_eq!(d.origin_multiplicity(), 2);
        assert_eq!(d.conductor(), 2);
        assert!(d.check_lifts().is_ok());
        assert_eq!(d.to_string(), "2@0,0;-1@0,1/2;-1@0,1/2+0,-1");
        // -1/2 as a coordinate is the same as 1/2 lifted by -1
        assert_eq!(Divisor::parse("2@0,0;-1@0,1/2;-1@0,-1/2").unwrap(), d);
        let bad = Divisor::parse("2@0,0;-1@0,1/2;-1@0,1/2").unwrap();
        assert!(matches!(bad.check_lifts(), Err(Error::LiftsDoNotCancel { .. })));
        assert!(matches!(Divisor::parse(""), Err(Error::EmptyDivisor)));
        assert!(Divisor::parse("x@0,0").is_err());
    }

    #[test]
    fn ring_choice() {
        assert_eq!(ring_for_conductor(2), RingChoice::Rational);
        assert_eq!(ring_for_conductor(6), RingChoice::Cyclotomic(Conductor(6)));
        assert_eq!(ring_for_conductor(13), RingChoice::Complex);
    }
}
