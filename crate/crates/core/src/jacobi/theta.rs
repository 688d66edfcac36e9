//! `Theta(z) = (u^{1/2} - u^{-1/2}) prod_{n >= 1} (1 - u q^n)(1 - u^{-1} q^n)/(1 - q^n)^2`
//! and its translates, expanded in `Z = 2 pi i z` (so `u = e^Z`).

use num_bigint::BigInt;
use num_traits::Zero;

use crate::bivariate::{outer_taylor, BiSeries, OuterVar, ZSeries};
use crate::eisenstein::EisensteinTable;
use crate::error::{Error, Result};
use crate::jacobi::{alpha_parts, beta_parts, torsional_g_lifted, LiftedPoint};
use crate::partitions::PartitionWeight;
use crate::ring::{factorial, int, CoefficientRing, Rational, RootsOfUnity};
use crate::series::{eta_pochhammer, Discrepancy, QSeries};

fn exp_scaled(ztrunc: i64, denom: u64, qtrunc: i64, scale: Rational) -> BiSeries<Rational> {
    outer_taylor(&(), OuterVar::Z, ztrunc, denom, qtrunc, |t| {
        num_traits::pow(scale.clone(), t as usize) / Rational::from_integer(factorial(t))
    })
}

fn to_ring<R: CoefficientRing>(ctx: &R::Ctx, s: &BiSeries<Rational>) -> BiSeries<R> {
    s.map_slices(ctx, |q| q.map_ring(ctx, |c| R::from_rational(ctx, c)))
}

/// Triple-product expansion of `Theta` to `(Z^ztrunc, q^qtrunc)`.
pub fn theta_product(ztrunc: i64, qtrunc: i64) -> Result<ZSeries<Rational>> {
    if ztrunc < 1 || qtrunc < 1 {
        return Err(Error::InvalidArgument("truncations must be positive".into()));
    }
    // 2 sinh(Z/2)
    let front = outer_taylor(&(), OuterVar::Z, ztrunc, 1, qtrunc, |t| {
        if t % 2 == 0 {
            Rational::zero()
        } else {
            Rational::new(BigInt::from(1), factorial(t) * num_traits::pow(BigInt::from(2), t as usize - 1))
        }
    });
    // (1 - u q^n)(1 - u^{-1} q^n) = 1 - 2 cosh(Z) q^n + q^{2n}
    let two_cosh = outer_taylor(&(), OuterVar::Z, ztrunc, 1, qtrunc, |t| {
        if t % 2 == 1 {
            Rational::zero()
        } else {
            Rational::new(BigInt::from(2), factorial(t))
        }
    });
    let mut acc = front;
    for n in 1..qtrunc {
        let mut s = QSeries::monomial(&(), 1, qtrunc, 2 * n, int(1));
        s = s.add(&QSeries::one(&(), 1, qtrunc))?;
        let factor = BiSeries::constant(OuterVar::Z, ztrunc, s).sub(&two_cosh.mul_series(&QSeries::monomial(
            &(),
            1,
            qtrunc,
            n,
            int(1),
        ))?)?;
        acc = acc.mul(&factor)?;
    }
    let inv_eta = eta_pochhammer(qtrunc)?.invert()?;
    acc.mul_series(&inv_eta.mul(&inv_eta)?)
}

/// `exp(-sum_{k >= 1} G_{2k} Z^{2k}/(2k)!)` to `(Z^ztrunc, q^qtrunc)`.
fn sigma_exponential(ztrunc: i64, qtrunc: i64) -> Result<ZSeries<Rational>> {
    let kmax = ((ztrunc - 1) / 2).max(1) as u64;
    let table = EisensteinTable::new(kmax, qtrunc)?;
    let mut slices = vec![QSeries::zero(&(), 1, qtrunc)];
    for t in 1..ztrunc {
        if t % 2 == 1 {
            slices.push(QSeries::zero(&(), 1, qtrunc));
        } else {
            let c = Rational::new(BigInt::from(-1), factorial(t as u64));
            slices.push(table.g(t as u64 / 2)?.scale_rational(&c));
        }
    }
    BiSeries::from_slices(OuterVar::Z, 0, ztrunc, slices)?.exp()
}

/// `Theta = Z exp(-sum_{k >= 1} G_{2k} Z^{2k}/(2k)!)` to `(Z^ztrunc, q^qtrunc)`.
pub fn theta_exponential(ztrunc: i64, qtrunc: i64) -> Result<ZSeries<Rational>> {
    Ok(sigma_exponential(ztrunc - 1, qtrunc)?.shift_outer(1))
}

/// Compares the `Z^{2k}` coefficient of `exp(-sum G_{2j} Z^{2j}/(2j)!)` with
/// `Tr_k(phi_Lambda)` for `k <= k_max`.
pub fn theorem1_trace_check(k_max: u64, qtrunc: i64) -> Result<Option<Discrepancy>> {
    let e = sigma_exponential(2 * k_max as i64 + 1, qtrunc)?;
    let table = EisensteinTable::new(k_max.max(1), qtrunc)?;
    for k in 0..=k_max {
        let tr = table.trace(k, &PartitionWeight::PhiLambda)?;
        if let Some(d) = e.slice(2 * k as i64)?.first_difference(&tr, 0.0)? {
            return Ok(Some(Discrepancy { location: format!("Z^{}*{}", 2 * k, d.location), ..d }));
        }
    }
    Ok(None)
}

/// `Theta(z - x)/Theta(-x)` expanded directly from the product, for a nonzero
/// lifted torsion point, to `(Z^ztrunc, q^qtrunc)`.
///
/// With `w = zeta_beta q^alpha` for the reduced point this is
/// `(e^{Z/2} - w e^{-Z/2})/(1 - w) * prod_n (1 - e^Z zeta^{-1} q^{n-alpha})
/// (1 - e^{-Z} zeta q^{n+alpha}) / ((1 - zeta^{-1} q^{n-alpha})(1 - zeta q^{n+alpha}))`,
/// times `e^{lift_a Z}` for a `tau`-translate.
pub fn theta_shift_direct<R: RootsOfUnity>(
    ctx: &R::Ctx,
    x: &LiftedPoint,
    ztrunc: i64,
    qtrunc: i64,
) -> Result<ZSeries<R>> {
    let p = &x.point;
    if p.is_origin() {
        return Err(Error::ZeroPoint);
    }
    let (bn, bd) = beta_parts(p);
    let (an, l) = alpha_parts(p);
    let li = l as i64;
    let trunc = qtrunc * li;
    let zeta = R::root_of_unity(ctx, bn, bd)?;
    let zeta_inv = R::root_of_unity(ctx, -bn, bd)?;
    let exp_half = to_ring::<R>(ctx, &exp_scaled(ztrunc, l, trunc, Rational::new(1.into(), 2.into())));
    let exp_mhalf = to_ring::<R>(ctx, &exp_scaled(ztrunc, l, trunc, Rational::new((-1).into(), 2.into())));
    let exp_p = to_ring::<R>(ctx, &exp_scaled(ztrunc, l, trunc, int(1)));
    let exp_m = to_ring::<R>(ctx, &exp_scaled(ztrunc, l, trunc, int(-1)));
    let one_q = QSeries::one(ctx, l, trunc);
    let one_z = BiSeries::constant(OuterVar::Z, ztrunc, one_q.clone());

    let w = QSeries::monomial(ctx, l, trunc, an, zeta.clone());
    let front = exp_half.sub(&exp_mhalf.mul_series(&w)?)?;
    let mut acc = front.mul_series(&one_q.sub(&w)?.invert()?)?;

    let mut denominator = one_q.clone();
    for n in 1.. {
        let lo = n * li - an;
        if lo >= trunc {
            break;
        }
        let a = QSeries::monomial(ctx, l, trunc, lo, zeta_inv.clone());
        let b = QSeries::monomial(ctx, l, trunc, n * li + an, zeta.clone());
        acc = acc.mul(&one_z.sub(&exp_p.mul_series(&a)?)?)?;
        acc = acc.mul(&one_z.sub(&exp_m.mul_series(&b)?)?)?;
        denominator = denominator.mul(&one_q.sub(&a)?)?.mul(&one_q.sub(&b)?)?;
    }
    acc = acc.mul_series(&denominator.invert()?)?;
    if x.lift_a != 0 {
        let shift = to_ring::<R>(ctx, &exp_scaled(ztrunc, l, trunc, int(x.lift_a)));
        acc = acc.mul(&shift)?;
    }
    Ok(acc)
}

/// `exp(-sum_{j >= 1} Z^j/j! G_{j,-x})`, the Taylor expansion of
/// `log(Theta(z - x)/Theta(-x))` at `z = 0`.
pub fn theta_shift_exponential<R: RootsOfUnity>(
    ctx: &R::Ctx,
    x: &LiftedPoint,
    ztrunc: i64,
    qtrunc: i64,
) -> Result<ZSeries<R>> {
    let neg = x.neg();
    let mut slices = vec![QSeries::zero(ctx, x.point.grid(), qtrunc * x.point.grid() as i64)];
    for j in 1..ztrunc {
        let g = torsional_g_lifted(ctx, j as u32, &neg, qtrunc)?;
        slices.push(g.scale_rational(&Rational::new(BigInt::from(-1), factorial(j as u64))));
    }
    BiSeries::from_slices(OuterVar::Z, 0, ztrunc, slices)?.exp()
}

/// Compares the direct product expansion of `Theta(z - x)/Theta(-x)` with
/// the exponential of torsional Eisenstein series.
pub fn theta_shift_check<R: RootsOfUnity>(
    ctx: &R::Ctx,
    x: &LiftedPoint,
    ztrunc: i64,
    qtrunc: i64,
    tol: f64,
) -> Result<Option<Discrepancy>> {
    let direct = theta_shift_direct::<R>(ctx, x, ztrunc, qtrunc)?;
    let exponential = theta_shift_exponential::<R>(ctx, x, ztrunc, qtrunc)?;
    direct.first_difference(&exponential, tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::rat;

    #[test]
    fn theta_low_order() {
        let t = theta_product(6, 4).unwrap();
        let q0: Vec<Rational> = (0..6).map(|i| t.slice(i).unwrap().coeff(0).unwrap()).collect();
        assert_eq!(q0, vec![int(0), int(1), int(0), rat(1, 24), int(0), rat(1, 1920)]);
        assert_eq!(theta_exponential(6, 4).unwrap().first_difference(&t, 0.0).unwrap(), None);
    }

    #[test]
    fn theta_cubic_coefficient() {
        let e = theta_exponential(5, 6).unwrap();
        let g2 = crate::eisenstein::eisenstein(2, 6).unwrap();
        assert_eq!(e.slice(3).unwrap(), g2.scale_rational(&rat(-1, 2)));
    }

    #[test]
    fn small_trace_check() {
        assert_eq!(theorem1_trace_check(3, 8).unwrap(), None);
    }
}
