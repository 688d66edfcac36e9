//! Torsional Eisenstein series `G_{k,x} = -D^k log Theta |_{z=x}` with
//! `D = (1/2 pi i) d/dz`, and their divisor-weighted sums.
//!
//! With `u = e^{2 pi i z}`,
//! `-D log Theta = 1/2 + u/(1-u) + sum_{n,m >= 1} (u^m - u^{-m}) q^{mn}`.
//! At `x = beta` (no `tau` component) the constant term is the derivative
//! `D^{k-1}[u/(1-u)]` at `u = zeta_beta`, a polynomial in `v = u/(1-u)`.
//! At `x = alpha tau + beta` with `0 < alpha < 1` the geometric series in
//! `u = zeta_beta q^alpha` converges and everything becomes a `q^{1/L}` series.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::eisenstein::{eisenstein, partition_trace};
use crate::error::{Error, Result};
use crate::jacobi::{alpha_parts, beta_parts, Divisor, LiftedPoint, TorsionPoint};
use crate::partitions::PartitionWeight;
use crate::ring::{int, rat, Rational, RootsOfUnity};
use crate::series::QSeries;

/// Coefficients (index = power of `v`) of `D^r[v]`, where `D v^s = s (v^s + v^{s+1})`.
pub fn eulerian_derivative(r: u32) -> Vec<Rational> {
    let mut p = vec![Rational::zero(), Rational::from_integer(1.into())];
    for _ in 0..r {
        let mut next = vec![Rational::zero(); p.len() + 1];
        for (s, c) in p.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sc = c * Rational::from_integer((s as i64).into());
            next[s] += &sc;
            next[s + 1] += sc;
        }
        p = next;
    }
    p
}

fn power_of(n: i64, e: u32) -> Rational {
    Rational::from_integer(num_traits::pow(BigInt::from(n), e as usize))
}

/// `G_{k,x}` for a nonzero reduced torsion point, known below `q^qtrunc`,
/// graded by the denominator of `alpha`.
pub fn torsional_g<R: RootsOfUnity>(ctx: &R::Ctx, k: u32, x: &TorsionPoint, qtrunc: i64) -> Result<QSeries<R>> {
    if x.is_origin() {
        return Err(Error::ZeroPoint);
    }
    if k == 0 {
        return Err(Error::InvalidArgument("torsional series start at k = 1".into()));
    }
    let (bn, bd) = beta_parts(x);
    let (an, grid) = alpha_parts(x);
    let zeta = |j: i64| R::root_of_unity(ctx, bn * j, bd);
    let trunc = qtrunc * grid as i64;
    let half = if k == 1 { rat(1, 2) } else { Rational::zero() };
    let mut terms: Vec<(i64, R)> = Vec::new();

    if an == 0 {
        let z = zeta(1)?;
        let denom = R::one_in(ctx).sub(&z).inv().ok_or(Error::NotAUnit)?;
        let v = z.mul(&denom);
        let mut constant = R::from_rational(ctx, &half);
        let mut vp = R::one_in(ctx);
        for c in eulerian_derivative(k - 1) {
            if !c.is_zero() {
                constant = constant.add(&vp.scale(&c));
            }
            vp = vp.mul(&v);
        }
        terms.push((0, constant));
        let sign = if k.is_multiple_of(2) { int(1) } else { int(-1) };
        for n in 1..trunc {
            let c = zeta(n)?.add(&zeta(-n)?.scale(&sign)).scale(&power_of(n, k - 1));
            for m in 1.. {
                if m * n >= trunc {
                    break;
                }
                terms.push((m * n, c.clone()));
            }
        }
    } else {
        let l = grid as i64;
        terms.push((0, R::from_rational(ctx, &half)));
        for n in 1..trunc {
            let plus = zeta(n)?.scale(&power_of(n, k - 1));
            let minus = zeta(-n)?.scale(&-power_of(-n, k - 1));
            // u^n with u = zeta q^{alpha}: exponents n (mL + a), m >= 0
            for m in 0.. {
                let e = n * (m * l + an);
                if e >= trunc {
                    break;
                }
                terms.push((e, plus.clone()));
            }
            // u^{-n} q^{mn}: exponents n (mL - a), m >= 1
            for m in 1.. {
                let e = n * (m * l - an);
                if e >= trunc {
                    break;
                }
                terms.push((e, minus.clone()));
            }
        }
    }
    Ok(QSeries::from_coeffs(ctx, grid, trunc, terms))
}

/// `G_{k,x}` at a lifted point: a `tau`-translate by `lift_a` adds `lift_a`
/// to `G_{1,x}` and leaves higher `k` unchanged; real translates change nothing.
pub fn torsional_g_lifted<R: RootsOfUnity>(ctx: &R::Ctx, k: u32, x: &LiftedPoint, qtrunc: i64) -> Result<QSeries<R>> {
    let g = torsional_g(ctx, k, &x.point, qtrunc)?;
    if k == 1 && x.lift_a != 0 {
        let shift = QSeries::constant(ctx, g.denom(), g.trunc(), &int(x.lift_a));
        return g.add(&shift);
    }
    Ok(g)
}

/// `G_{k,D} = sum_x a_x G_{k,-x}`; the origin contributes the classical
/// `G_k` for even `k` and nothing for odd `k`.
pub fn divisor_g<R: RootsOfUnity>(ctx: &R::Ctx, k: u32, d: &Divisor, qtrunc: i64) -> Result<QSeries<R>> {
    let mut acc = QSeries::zero(ctx, 1, qtrunc);
    for e in d.entries() {
        let mult = int(e.mult);
        let term = if e.point.point.is_origin() {
            if k % 2 == 1 {
                continue;
            }
            eisenstein(k as u64, qtrunc)?.map_ring(ctx, |c| R::from_rational(ctx, c))
        } else {
            torsional_g_lifted(ctx, k, &e.point.neg(), qtrunc)?
        };
        acc = acc.add(&term.scale_rational(&mult))?;
    }
    Ok(acc)
}

/// `Tr_t(D, phi_J) = sum_{lambda |- t} phi_J(lambda) prod_j G_{j,D}^{m_j}`; `Tr_0 = 1`.
pub fn divisor_trace<R: RootsOfUnity>(ctx: &R::Ctx, t: u32, d: &Divisor, qtrunc: i64) -> Result<QSeries<R>> {
    let gens = (1..=t).map(|j| divisor_g(ctx, j, d, qtrunc)).collect::<Result<Vec<_>>>()?;
    partition_trace(&gens, t as u64, &PartitionWeight::PhiJacobi, &QSeries::one(ctx, 1, qtrunc))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::{zeta_power, Conductor, Cyclo};
    use crate::ring::CoefficientRing;
    use num_complex::Complex64;

    fn pt(a: Rational, b: Rational) -> TorsionPoint {
        TorsionPoint::new(a, b)
    }

    #[test]
    fn eulerian_small() {
        assert_eq!(eulerian_derivative(0), vec![int(0), int(1)]);
        assert_eq!(eulerian_derivative(1), vec![int(0), int(1), int(1)]);
        assert_eq!(eulerian_derivative(2), vec![int(0), int(1), int(3), int(2)]);
    }

    #[test]
    fn half_period_parity() {
        let x = pt(int(0), rat(1, 2));
        for k in [1, 3, 5, 7] {
            assert!(torsional_g::<Rational>(&(), k, &x, 15).unwrap().is_zero(), "k = {k}");
        }
        let g2 = torsional_g::<Rational>(&(), 2, &x, 6).unwrap();
        assert_eq!(g2.coeff(0).unwrap(), rat(-1, 4));
        // 2 sum n (-1)^n q^{mn}: q -> -2, q^2 -> -2 + 4, q^3 -> -2 - 6
        assert_eq!(g2.coeff(1).unwrap(), int(-2));
        assert_eq!(g2.coeff(2).unwrap(), int(2));
        assert_eq!(g2.coeff(3).unwrap(), int(-8));
    }

    #[test]
    fn third_period_constant() {
        let ctx = Conductor(3);
        let g1 = torsional_g::<Cyclo>(&ctx, 1, &pt(int(0), rat(1, 3)), 4).unwrap();
        let z = zeta_power(3, 1);
        let want = Cyclo::from_rational(3, &rat(1, 2)).add(&z.mul(&Cyclo::one_in(&ctx).sub(&z).inv().unwrap()));
        assert_eq!(g1.coeff(0).unwrap(), want);
    }

    #[test]
    fn zero_point_rejected() {
        assert!(matches!(torsional_g::<Rational>(&(), 2, &TorsionPoint::origin(), 5), Err(Error::ZeroPoint)));
    }

    #[test]
    fn negation_parity() {
        let pts = [(int(0), rat(1, 3)), (rat(1, 3), rat(1, 4)), (rat(1, 2), int(0)), (rat(2, 5), rat(3, 5))];
        for (a, b) in pts {
            let x = LiftedPoint::reduced(pt(a, b));
            for k in 1..=5u32 {
                let g = torsional_g_lifted::<Complex64>(&(), k, &x, 8).unwrap();
                let gm = torsional_g_lifted::<Complex64>(&(), k, &x.neg(), 8).unwrap();
                let sign = if k % 2 == 0 { int(1) } else { int(-1) };
                assert!(gm.agrees_with(&g.scale_rational(&sign), 1e-12).unwrap(), "x = {x}, k = {k}");
            }
        }
    }
}
