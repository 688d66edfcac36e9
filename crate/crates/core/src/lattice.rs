//! Floating-point lattice sums over `Lambda_tau = Z tau + Z` and numeric
//! spot checks of the analytic identities.
//!
//! Sums run over the ball `0 < |omega| <= R`, ordered by `|omega|` and then
//! by argument, so conditionally convergent sums are reproducible. The
//! regularisation weights each term by `|omega|^{-2js}`; the limit `s -> 0`
//! is taken by polynomial (Neville) extrapolation through a schedule of `s`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::eisenstein::eisenstein;
use crate::error::{Error, Result};
use crate::jacobi::{torsional_g, TorsionPoint};
use crate::partitions::{enumerate, phi_lambda};
use crate::ring::{rational_to_f64, CoefficientRing};
use crate::series::QSeries;

/// Lattice sums are only evaluated comfortably away from the real axis.
pub const MIN_IM_TAU: f64 = 0.5;

pub const DEFAULT_RADIUS: f64 = 200.0;
pub const DEFAULT_SCHEDULE: [f64; 4] = [1.0, 0.5, 0.25, 0.125];

fn check_upper_half_plane(tau: Complex64) -> Result<()> {
    if tau.im <= 0.0 || !tau.im.is_finite() || !tau.re.is_finite() {
        return Err(Error::BadTau(tau.im));
    }
    Ok(())
}

/// Value of a truncated series at `q = e^{2 pi i tau}`, with the tail
/// estimate `|q|^{N/L} / (1 - |q|)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Evaluation {
    pub value: Complex64,
    pub tail_bound: f64,
}

pub fn eval_qseries<R: CoefficientRing>(s: &QSeries<R>, tau: Complex64) -> Result<Evaluation> {
    check_upper_half_plane(tau)?;
    let l = s.denom() as f64;
    let step = Complex64::new(0.0, 2.0 * PI) * tau / l;
    let value = s.iter().map(|(e, c)| c.to_complex() * (step * e as f64).exp()).sum();
    let abs_q = (-2.0 * PI * tau.im).exp();
    let tail_bound = abs_q.powf(s.trunc() as f64 / l) / (1.0 - abs_q);
    Ok(Evaluation { value, tail_bound })
}

/// `G_2^*(tau) = 1/(4 pi Im tau) + G_2(tau)`.
pub fn g2_star(tau: Complex64, terms: i64) -> Result<Complex64> {
    let g2 = eval_qseries(&eisenstein(2, terms)?, tau)?.value;
    Ok(g2 + 1.0 / (4.0 * PI * tau.im))
}

#[derive(Clone, Copy, Debug, PartialEq)]
struct Node {
    omega: Complex64,
    /// Representative of the pair `{omega, -omega}`.
    half: bool,
}

/// The nonzero points of `Lambda_tau` with `|omega| <= R`, in ball order.
#[derive(Clone, Debug)]
pub struct Lattice {
    tau: Complex64,
    radius: f64,
    nodes: Vec<Node>,
}

impl Lattice {
    pub fn new(tau: Complex64, radius: f64) -> Result<Self> {
        check_upper_half_plane(tau)?;
        if tau.im < MIN_IM_TAU {
            return Err(Error::BadTau(tau.im));
        }
        if radius.is_nan() || radius <= 0.0 {
            return Err(Error::InvalidArgument(format!("radius must be positive, got {radius}")));
        }
        let m_max = (radius / tau.im).floor() as i64;
        let mut nodes = Vec::new();
        for m in -m_max..=m_max {
            let shift = m as f64 * tau.re;
            let n_lo = (-radius - shift).floor() as i64;
            let n_hi = (radius - shift).ceil() as i64;
            for n in n_lo..=n_hi {
                if m == 0 && n == 0 {
                    continue;
                }
                let omega = tau * m as f64 + n as f64;
                if omega.norm() <= radius {
                    nodes.push(Node { omega, half: m > 0 || (m == 0 && n > 0) });
                }
            }
        }
        nodes.sort_by(|a, b| a.omega.norm().total_cmp(&b.omega.norm()).then(a.omega.arg().total_cmp(&b.omega.arg())));
        Ok(Self { tau, radius, nodes })
    }

    pub fn tau(&self) -> Complex64 {
        self.tau
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    /// All points in ball order.
    pub fn points(&self) -> impl Iterator<Item = Complex64> + '_ {
        self.nodes.iter().map(|n| n.omega)
    }

    /// One point from each pair `{omega, -omega}`, in ball order.
    pub fn half_points(&self) -> impl Iterator<Item = Complex64> + '_ {
        self.nodes.iter().filter(|n| n.half).map(|n| n.omega)
    }

    fn inverse_weight(omega: Complex64, s: f64) -> Complex64 {
        // 1 / (omega^2 |omega|^{2s})
        omega.powi(-2) * omega.norm().powf(-2.0 * s)
    }

    /// `P_j(s) = sum' omega^{-2j} |omega|^{-2js}` over the full ball.
    pub fn power_sum(&self, j: u32, s: f64) -> Complex64 {
        self.points().map(|w| Self::inverse_weight(w, s).powi(j as i32)).sum()
    }

    /// `e_k` of the set `{1/(omega^2 |omega|^{2s})}`, one element per pair
    /// `+-omega`, from the power sums `P_j / 2` by Newton's identities.
    pub fn elementary_symmetric(&self, k: u32, s: f64) -> Complex64 {
        let p: Vec<Complex64> = (1..=k).map(|j| self.power_sum(j, s) / 2.0).collect();
        newton_elementary(&p)[k as usize]
    }

    /// `e_k` by explicit summation over `k`-element subsets (small balls only).
    pub fn elementary_symmetric_brute(&self, k: u32, s: f64) -> Complex64 {
        let xs: Vec<Complex64> = self.half_points().map(|w| Self::inverse_weight(w, s)).collect();
        subset_products(&xs, k as usize, 0, Complex64::new(1.0, 0.0))
    }
}

fn subset_products(xs: &[Complex64], k: usize, start: usize, acc: Complex64) -> Complex64 {
    if k == 0 {
        return acc;
    }
    let mut total = Complex64::new(0.0, 0.0);
    if start + k > xs.len() {
        return total;
    }
    for i in start..=xs.len() - k {
        total += subset_products(xs, k - 1, i + 1, acc * xs[i]);
    }
    total
}

/// `e_0..=e_k` from power sums `p_1..=p_k`: `k e_k = sum_i (-1)^{i-1} e_{k-i} p_i`.
pub fn newton_elementary(p: &[Complex64]) -> Vec<Complex64> {
    let mut e = vec![Complex64::new(1.0, 0.0)];
    for k in 1..=p.len() {
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 1..=k {
            let term = e[k - i] * p[i - 1];
            acc += if i % 2 == 1 { term } else { -term };
        }
        e.push(acc / k as f64);
    }
    e
}

/// Value at `x0` of the interpolating polynomial through `(xs[i], ys[i])`.
pub fn neville(xs: &[f64], ys: &[Complex64], x0: f64) -> Complex64 {
    let mut p = ys.to_vec();
    let n = xs.len();
    for m in 1..n {
        for i in 0..n - m {
            p[i] = (p[i] * (x0 - xs[i + m]) + p[i + 1] * (xs[i] - x0)) / (xs[i] - xs[i + m]);
        }
    }
    p[0]
}

/// `(2 pi)^{2k} sum_{lambda |- k} phi_Lambda(lambda) prod_j G_{2j}^{m_j}`,
/// with `G_2` replaced by `G_2^*`.
pub fn theorem1_prediction(k: u32, tau: Complex64, terms: i64) -> Result<Complex64> {
    let mut g = vec![g2_star(tau, terms)?];
    for j in 2..=k as u64 {
        g.push(eval_qseries(&eisenstein(2 * j, terms)?, tau)?.value);
    }
    let mut total = Complex64::new(0.0, 0.0);
    for l in enumerate(k as u64) {
        let mut term = Complex64::new(rational_to_f64(&phi_lambda(&l)), 0.0);
        for (j, m) in l.parts_with_multiplicity() {
            term *= g[j - 1].powi(m as i32);
        }
        total += term;
    }
    Ok(total * (2.0 * PI).powi(2 * k as i32))
}

#[derive(Clone, Debug, PartialEq)]
pub struct Theorem1Report {
    pub k: u32,
    pub tau: Complex64,
    pub radius: f64,
    pub schedule: Vec<f64>,
    /// `e_k` at each scheduled `s`.
    pub samples: Vec<Complex64>,
    pub lattice_value: Complex64,
    pub prediction: Complex64,
    pub abs_error: f64,
}

/// Extrapolated `lim_{s -> 0} e_k(Lambda_tau(s))` against the Eisenstein prediction.
pub fn theorem1_numeric(k: u32, lattice: &Lattice, schedule: &[f64]) -> Result<Theorem1Report> {
    if schedule.is_empty() || schedule.iter().any(|s| s.is_nan() || *s <= 0.0) {
        return Err(Error::InvalidArgument("schedule needs positive s values".into()));
    }
    let samples: Vec<Complex64> = schedule.iter().map(|s| lattice.elementary_symmetric(k, *s)).collect();
    let lattice_value = neville(schedule, &samples, 0.0);
    let prediction = theorem1_prediction(k, lattice.tau(), 60)?;
    Ok(Theorem1Report {
        k,
        tau: lattice.tau(),
        radius: lattice.radius(),
        schedule: schedule.to_vec(),
        samples,
        lattice_value,
        prediction,
        abs_error: (lattice_value - prediction).norm(),
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct ModularityReport {
    pub k: u32,
    pub point: TorsionPoint,
    pub image: TorsionPoint,
    pub tau: Complex64,
    pub lhs: Complex64,
    pub rhs: Complex64,
    pub abs_error: f64,
}

/// `G_{k,x}` plus its nonholomorphic correction: `-alpha` at `k = 1`,
/// `1/(4 pi Im tau)` at `k = 2`.
pub fn completed_torsional(k: u32, x: &TorsionPoint, tau: Complex64, terms: i64) -> Result<Complex64> {
    let g = eval_qseries(&torsional_g::<Complex64>(&(), k, x, terms)?, tau)?.value;
    Ok(match k {
        1 => g - rational_to_f64(x.alpha()),
        2 => g + 1.0 / (4.0 * PI * tau.im),
        _ => g,
    })
}

/// Compares the completed series at `-1/tau` with `tau^k` times the
/// completed series at the image point `(beta, -alpha)`.
pub fn modularity_spot_check(k: u32, x: &TorsionPoint, tau: Complex64) -> Result<ModularityReport> {
    check_upper_half_plane(tau)?;
    let image = TorsionPoint::new(x.beta().clone(), -x.alpha().clone());
    let s_tau = -tau.inv();
    let terms = 80;
    let lhs = completed_torsional(k, x, s_tau, terms)?;
    let rhs = tau.powi(k as i32) * completed_torsional(k, &image, tau, terms)?;
    Ok(ModularityReport { k, point: x.clone(), image, tau, lhs, rhs, abs_error: (lhs - rhs).norm() })
}

/// Parse `re,im`.
pub fn parse_tau(text: &str) -> Result<Complex64> {
    let (re, im) = text.split_once(',').ok_or_else(|| Error::Parse(format!("expected re,im, got {text:?}")))?;
    let re: f64 = re.trim().parse().map_err(|_| Error::Parse(format!("bad real part {re:?}")))?;
    let im: f64 = im.trim().parse().map_err(|_| Error::Parse(format!("bad imaginary part {im:?}")))?;
    let tau = Complex64::new(re, im);
    check_upper_half_plane(tau)?;
    Ok(tau)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{int, rat, Rational};

    const I: Complex64 = Complex64::new(0.0, 1.0);

    #[test]
    fn constant_series() {
        let one = QSeries::<Rational>::one(&(), 1, 10);
        assert_eq!(eval_qseries(&one, I).unwrap().value, Complex64::new(1.0, 0.0));
        assert!(eval_qseries(&one, Complex64::new(0.0, -1.0)).is_err());
    }

    #[test]
    fn newton_matches_brute_on_small_ball() {
        let l = Lattice::new(I, 6.0).unwrap();
        for k in 1..=3 {
            for s in [1.0, 0.5] {
                let a = l.elementary_symmetric(k, s);
                let b = l.elementary_symmetric_brute(k, s);
                assert!((a - b).norm() < 1e-12, "k = {k}, s = {s}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn neville_is_exact_on_polynomials() {
        let xs = [1.0, 0.5, 0.25];
        let ys: Vec<Complex64> = xs.iter().map(|x| Complex64::new(3.0 + 2.0 * x - x * x, 0.0)).collect();
        assert!((neville(&xs, &ys, 0.0) - Complex64::new(3.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn g2_star_vanishes_at_i() {
        assert!(g2_star(I, 40).unwrap().norm() < 1e-12);
    }

    #[test]
    fn tau_parsing() {
        assert_eq!(parse_tau("0,2").unwrap(), Complex64::new(0.0, 2.0));
        assert!(parse_tau("0,-1").is_err());
        assert!(parse_tau("abc").is_err());
    }

    #[test]
    fn half_period_modularity() {
        let x = TorsionPoint::new(int(0), rat(1, 2));
        let r = modularity_spot_check(2, &x, Complex64::new(0.0, 2.0)).unwrap();
        assert!(r.abs_error < 1e-9, "{r:?}");
    }
}
