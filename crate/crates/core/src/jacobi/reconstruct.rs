//! Reconstruction of a theta quotient from its divisor traces.
//!
//! For a torsional divisor `D = a (0) + sum_x a_x (x)` whose lifts satisfy
//! `sum a_x x = 0`, the quotient
//! `F = Theta(z)^a prod_x (Theta(z - x)/Theta(-x))^{a_x}`
//! has the expansion `sum_{t >= 0} Tr_t(D, phi_J) Z^{t+a}`.

use crate::bivariate::{BiSeries, OuterVar, ZSeries};
use crate::error::{Error, Result};
use crate::jacobi::theta::{theta_product, theta_shift_direct};
use crate::jacobi::{divisor_trace, Divisor};
use crate::ring::RootsOfUnity;
use crate::series::Discrepancy;

/// `F` built from product expansions, known for `Z`-exponents below `ztrunc + a`.
pub fn theta_quotient<R: RootsOfUnity>(ctx: &R::Ctx, d: &Divisor, ztrunc: i64, qtrunc: i64) -> Result<ZSeries<R>> {
    d.check_lifts()?;
    let a = d.origin_multiplicity();
    // enough room for the truncation loss of powers and inverses of Theta
    let work = ztrunc + 2 * a.abs() + 2;
    let mut acc = BiSeries::one(ctx, OuterVar::Z, work, d.grid(), qtrunc * d.grid() as i64);
    if a != 0 {
        let theta = theta_product(work, qtrunc)?;
        let theta = theta.map_slices(ctx, |q| q.map_ring(ctx, |c| R::from_rational(ctx, c)));
        acc = acc.mul(&theta.pow(a)?)?;
    }
    for e in d.nonzero_points() {
        let ratio = theta_shift_direct(ctx, &e.point, work, qtrunc)?;
        acc = acc.mul(&ratio.pow(e.mult)?)?;
    }
    if acc.trunc() < ztrunc + a {
        return Err(Error::InvalidArgument("working precision too small".into()));
    }
    Ok(acc.truncate_outer(ztrunc + a))
}

/// `sum_{0 <= t < ztrunc} Tr_t(D, phi_J) Z^{t+a}`.
pub fn trace_series<R: RootsOfUnity>(ctx: &R::Ctx, d: &Divisor, ztrunc: i64, qtrunc: i64) -> Result<ZSeries<R>> {
    if d.entries().is_empty() {
        return Err(Error::EmptyDivisor);
    }
    let slices = (0..ztrunc.max(1)).map(|t| divisor_trace(ctx, t as u32, d, qtrunc)).collect::<Result<Vec<_>>>()?;
    let a = d.origin_multiplicity();
    BiSeries::from_slices(OuterVar::Z, a, ztrunc + a, slices)
}

/// Compare the theta quotient of `D` with its trace expansion to relative
/// order `Z^ztrunc` and `q^qtrunc`.
pub fn theorem3_reconstruct<R: RootsOfUnity>(
    ctx: &R::Ctx,
    d: &Divisor,
    ztrunc: i64,
    qtrunc: i64,
    tol: f64,
) -> Result<Option<Discrepancy>> {
    let f = theta_quotient::<R>(ctx, d, ztrunc, qtrunc)?;
    let traces = trace_series::<R>(ctx, d, ztrunc, qtrunc)?;
    f.first_difference(&traces, tol)
}
