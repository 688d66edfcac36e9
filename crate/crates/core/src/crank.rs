//! Crank statistics, even crank moments and the moment identities.
//!
//! `M(m, n)` is defined by the generating product
//! `prod_{n >= 1} (1 - q^n) / ((1 - z q^n)(1 - z^{-1} q^n)) = sum M(m, n) z^m q^n`.
//! It agrees with the number of partitions of `n` with crank `m` for every
//! `n >= 2`; at `n = 1` the product gives `M(0,1) = -1, M(+-1,1) = 1`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::bivariate::{outer_taylor, BiSeries, OuterVar};
use crate::eisenstein::{bernoulli_numbers, EisensteinTable};
use crate::error::{Error, Result};
use crate::partitions::{enumerate, Partition, PartitionWeight};
use crate::ring::{factorial, falling_factorial, int, Rational};
use crate::series::{eta_pochhammer, Discrepancy, QSeries};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableSource {
    GeneratingFunction,
    Combinatorial,
}

/// `M(m, n)` for `0 <= n <= n_max` and `|m| <= n_max`.
#[derive(Clone, Debug)]
pub struct CrankTable {
    source: TableSource,
    n_max: usize,
    /// `rows[n][m + n_max]`.
    rows: Vec<Vec<i128>>,
}

impl CrankTable {
    /// Expand the generating product to `q^{n_max}`.
    pub fn from_generating_function(n_max: usize) -> Self {
        let w = 2 * n_max + 1;
        let mid = n_max;
        let mut c = vec![vec![0i128; w]; n_max + 1];
        c[0][mid] = 1;
        for k in 1..=n_max {
            // divide by (1 - z q^k) and by (1 - z^{-1} q^k)
            for n in k..=n_max {
                for m in 1..w {
                    c[n][m] += c[n - k][m - 1];
                }
            }
            for n in k..=n_max {
                for m in 0..w - 1 {
                    c[n][m] += c[n - k][m + 1];
                }
            }
            // multiply by (1 - q^k)
            for n in (k..=n_max).rev() {
                for m in 0..w {
                    c[n][m] -= c[n - k][m];
                }
            }
        }
        Self { source: TableSource::GeneratingFunction, n_max, rows: c }
    }

    /// Count partitions of each `n <= n_max` by crank, using the definition
    /// directly. Partitions without ones are counted by largest part; for
    /// `w >= 1` ones the remaining parts split into those in `[2, w]` (free)
    /// and the `mu` parts exceeding `w`, giving crank `mu - w`.
    pub fn combinatorial(n_max: usize) -> Self {
        let len = n_max + 1;
        let w_cols = 2 * n_max + 1;
        let mid = n_max;
        let mut rows = vec![vec![0i128; w_cols]; len];
        rows[0][mid] = 1;

        // exact[r][mu]: partitions of r into exactly mu parts
        let mut exact = vec![vec![0i128; len]; len];
        exact[0][0] = 1;
        for r in 1..len {
            for mu in 1..=r {
                exact[r][mu] = exact[r - 1][mu - 1] + if r >= mu { exact[r - mu][mu] } else { 0 };
            }
        }

        // bounded[r]: partitions of r into parts in [2, w], grown as w increases
        let mut bounded = vec![0i128; len];
        bounded[0] = 1;

        // no ones: largest part l, the rest in [2, l]
        for l in 2..len {
            for r in l..len {
                bounded[r] += bounded[r - l];
            }
            for n in l..len {
                rows[n][mid + l] += bounded[n - l];
            }
        }

        bounded.iter_mut().for_each(|b| *b = 0);
        bounded[0] = 1;
        for w in 1..len {
            if w >= 2 {
                for r in w..len {
                    bounded[r] += bounded[r - w];
                }
            }
            // rest = n - w, split as j (parts in [2, w]) + parts > w (mu of them)
            for mu in 0..len {
                let base = mu * w;
                if w + base >= len {
                    break;
                }
                let crank = mu as i64 - w as i64;
                let col = (mid as i64 + crank) as usize;
                for big in base..len - w {
                    let e = exact[big - base][mu];
                    if e == 0 {
                        continue;
                    }
                    for j in 0..len - w - big {
                        rows[w + big + j][col] += e * bounded[j];
                    }
                }
            }
        }
        Self { source: TableSource::Combinatorial, n_max, rows }
    }

    /// Direct enumeration of all partitions (small `n_max` only).
    pub fn brute_force(n_max: usize) -> Result<Self> {
        let w = 2 * n_max + 1;
        let mut rows = vec![vec![0i128; w]; n_max + 1];
        rows[0][n_max] = 1;
        for (n, row) in rows.iter_mut().enumerate().skip(1) {
            for l in enumerate(n as u64) {
                row[(n_max as i64 + l.crank()?) as usize] += 1;
            }
        }
        Ok(Self { source: TableSource::Combinatorial, n_max, rows })
    }

    pub fn source(&self) -> TableSource {
        self.source
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    /// `M(m, n)`; zero outside the stored range of `m`.
    pub fn count(&self, m: i64, n: usize) -> i128 {
        let col = m + self.n_max as i64;
        if n > self.n_max || col < 0 || col as usize >= self.rows[n].len() {
            return 0;
        }
        self.rows[n][col as usize]
    }

    /// `sum_m M(m, n)`.
    pub fn row_sum(&self, n: usize) -> i128 {
        self.rows[n].iter().sum()
    }

    /// Whether `M(m, n) = M(-m, n)` for every stored entry.
    pub fn is_symmetric(&self) -> bool {
        self.rows.iter().all(|r| r.iter().eq(r.iter().rev()))
    }

    /// `sum_m m^{2k} M(m, n)`, using the symmetry `m <-> -m`.
    pub fn even_moment(&self, k: u32, n: usize) -> BigInt {
        let mut s = BigInt::zero();
        if k == 0 {
            s += BigInt::from(self.count(0, n));
        }
        for m in 1..=self.n_max as i64 {
            let c = self.count(m, n);
            if c != 0 {
                s += BigInt::from(2) * BigInt::from(c) * num_traits::pow(BigInt::from(m), 2 * k as usize);
            }
        }
        s
    }

    /// Counts of `n`'s crank residues modulo `modulus`, indexed by residue.
    pub fn residue_counts(&self, n: usize, modulus: u32) -> Vec<i128> {
        let mut out = vec![0i128; modulus as usize];
        for m in -(self.n_max as i64)..=self.n_max as i64 {
            out[m.rem_euclid(modulus as i64) as usize] += self.count(m, n);
        }
        out
    }
}

/// `C_{2k}(q)` from the generating-function table, known below `q^trunc`.
pub fn moment_definition(k: u32, trunc: i64) -> Result<QSeries<Rational>> {
    check_trunc(trunc)?;
    let table = CrankTable::from_generating_function(trunc as usize - 1);
    Ok(moment_from_table(&table, k, trunc))
}

pub fn moment_from_table(table: &CrankTable, k: u32, trunc: i64) -> QSeries<Rational> {
    let c = (0..trunc.min(table.n_max as i64 + 1) as usize)
        .map(|n| Rational::from_integer(table.even_moment(k, n)))
        .collect();
    QSeries::from_dense(&(), 1, 0, trunc.min(table.n_max as i64 + 1), c)
}

fn check_trunc(trunc: i64) -> Result<()> {
    if trunc < 1 {
        return Err(Error::InvalidArgument("truncation must be at least 1".into()));
    }
    Ok(())
}

/// The coefficients `(2k)_{2k-2n} / (4^n (2n+1))` for `n = 0..=k`.
pub fn corollary_coefficients(k: u32) -> Vec<Rational> {
    (0..=k)
        .map(|n| {
            let num = falling_factorial(2 * k as i64, 2 * (k - n) as u64);
            let den = num_traits::pow(BigInt::from(4), n as usize) * BigInt::from(2 * n + 1);
            Rational::new(num, den)
        })
        .collect()
}

fn inverse_eta(trunc: i64) -> Result<QSeries<Rational>> {
    eta_pochhammer(trunc)?.invert()
}

/// `C_{2k}` as `(1/(q;q)) sum_n (2k)_{2k-2n}/(4^n (2n+1)) Tr_{k-n}(phi_c)`.
pub fn moment_corollary(k: u32, table: &EisensteinTable) -> Result<QSeries<Rational>> {
    let trunc = table.trunc();
    let mut acc = QSeries::zero(&(), 1, trunc);
    for (n, c) in corollary_coefficients(k).into_iter().enumerate() {
        let tr = table.trace((k - n as u32) as u64, &PartitionWeight::PhiCrank)?;
        acc = acc.add(&tr.scale_rational(&c))?;
    }
    acc.mul(&inverse_eta(trunc)?)
}

/// `C_{2k}` as `((2k)!/(q;q)) sum_{lambda |- k} prod_j (1/m_j!)(2/(2j)!)^{m_j} S_lambda`.
pub fn moment_lambert(k: u32, table: &EisensteinTable) -> Result<QSeries<Rational>> {
    let trunc = table.trunc();
    let mut acc = QSeries::zero(&(), 1, trunc);
    for l in enumerate(k as u64) {
        acc = acc.add(&table.lambert_partition(&l)?.scale_rational(&lambert_weight(&l)))?;
    }
    let scale = Rational::from_integer(factorial(2 * k as u64));
    acc.scale_rational(&scale).mul(&inverse_eta(trunc)?)
}

fn lambert_weight(l: &Partition) -> Rational {
    l.parts_with_multiplicity().fold(Rational::one(), |acc, (j, m)| {
        let two_over = Rational::new(BigInt::from(2), factorial(2 * j as u64));
        acc * num_traits::pow(two_over, m as usize) / Rational::from_integer(factorial(m as u64))
    })
}

/// `2 sin(X/2)` as a rational Taylor series.
fn two_sin_half(trunc: i64, qtrunc: i64) -> BiSeries<Rational> {
    outer_taylor(&(), OuterVar::X, trunc, 1, qtrunc, |t| {
        if t % 2 == 0 {
            return Rational::zero();
        }
        let j = (t - 1) / 2;
        let sign = if j % 2 == 0 { 1 } else { -1 };
        Rational::new(BigInt::from(sign), factorial(t) * num_traits::pow(BigInt::from(2), 2 * j as usize))
    })
}

/// Left side of the moment generating function identity: `sum_{k <= K}
/// (-1)^k C_{2k} X^{2k}/(2k)!`, with `C_{2k}` read from the product table.
pub fn theorem2_lhs(big_k: u32, qtrunc: i64) -> Result<BiSeries<Rational>> {
    check_trunc(qtrunc)?;
    let table = CrankTable::from_generating_function(qtrunc as usize - 1);
    let mut slices = Vec::new();
    for t in 0..=2 * big_k {
        if t % 2 == 1 {
            slices.push(QSeries::zero(&(), 1, qtrunc));
            continue;
        }
        let k = t / 2;
        let sign = if k % 2 == 0 { int(1) } else { int(-1) };
        let c = sign / Rational::from_integer(factorial(t as u64));
        slices.push(moment_from_table(&table, k, qtrunc).scale_rational(&c));
    }
    BiSeries::from_slices(OuterVar::X, 0, 2 * big_k as i64 + 2, slices)
}

/// Right side: `(2 sin(X/2)/(q;q)) sum_{k <= K} (-1)^k Tr_k(phi_c) X^{2k-1}`.
pub fn theorem2_rhs(big_k: u32, table: &EisensteinTable) -> Result<BiSeries<Rational>> {
    let qtrunc = table.trunc();
    let mut slices = Vec::new();
    for t in -1..=2 * big_k as i64 - 1 {
        if (t + 1) % 2 == 1 {
            slices.push(QSeries::zero(&(), 1, qtrunc));
            continue;
        }
        let k = ((t + 1) / 2) as u64;
        let sign = if k.is_multiple_of(2) { int(1) } else { int(-1) };
        slices.push(table.trace(k, &PartitionWeight::PhiCrank)?.scale_rational(&sign));
    }
    let traces = BiSeries::from_slices(OuterVar::X, -1, 2 * big_k as i64 + 1, slices)?;
    let sine = two_sin_half(2 * big_k as i64 + 4, qtrunc);
    traces.mul(&sine)?.mul_series(&inverse_eta(qtrunc)?)
}

/// Compare both sides of the moment generating function through
/// `(X^{2K}, q^{qtrunc-1})`.
pub fn theorem2_check(big_k: u32, qtrunc: i64) -> Result<Option<Discrepancy>> {
    let table = EisensteinTable::new(big_k.max(1) as u64, qtrunc)?;
    let lhs = theorem2_lhs(big_k, qtrunc)?.truncate_outer(2 * big_k as i64 + 1);
    let rhs = theorem2_rhs(big_k, &table)?;
    if rhs.trunc() < lhs.trunc() {
        return Err(Error::InvalidArgument("right side known to lower X-order than requested".into()));
    }
    lhs.first_difference(&rhs, 0.0)
}

/// `sin^2 X` as a rational Taylor series.
fn sin_squared(trunc: i64, qtrunc: i64) -> BiSeries<Rational> {
    // sin^2 X = (1 - cos 2X)/2 = sum_{j >= 1} (-1)^{j+1} 2^{2j-1} X^{2j}/(2j)!
    outer_taylor(&(), OuterVar::X, trunc, 1, qtrunc, |t| {
        if t == 0 || t % 2 == 1 {
            return Rational::zero();
        }
        let j = t / 2;
        let sign = if j % 2 == 1 { 1 } else { -1 };
        Rational::new(BigInt::from(sign) * num_traits::pow(BigInt::from(2), 2 * j as usize - 1), factorial(t))
    })
}

/// `exp(-2 sum_k S_{2k-1}/(2k)! (-4X^2)^k)` to `(X^{xtrunc}, q^{qtrunc})`.
pub fn lemma41_lhs(xtrunc: i64, qtrunc: i64) -> Result<BiSeries<Rational>> {
    let ytrunc = (xtrunc + 1) / 2;
    let kmax = (ytrunc - 1).max(1) as u64;
    let table = EisensteinTable::new(kmax, qtrunc)?;
    let mut slices = vec![QSeries::zero(&(), 1, qtrunc)];
    for k in 1..ytrunc.max(1) as u64 {
        let c = Rational::new(BigInt::from(-2), factorial(2 * k));
        slices.push(table.s(k)?.scale_rational(&c));
    }
    let inner = BiSeries::from_slices(OuterVar::Y, 0, ytrunc, slices)?;
    Ok(inner.exp()?.substitute_outer(&int(-4), 2, OuterVar::X)?.truncate_outer(xtrunc))
}

/// `prod_{j >= 1} [1 + 4 sin^2(X) q^j/(1 - q^j)^2]` to `(X^{xtrunc}, q^{qtrunc})`.
pub fn lemma41_rhs(xtrunc: i64, qtrunc: i64) -> Result<BiSeries<Rational>> {
    let sin2 = sin_squared(xtrunc, qtrunc);
    let one = BiSeries::one(&(), OuterVar::X, xtrunc, 1, qtrunc);
    let mut acc = one.clone();
    for j in 1..qtrunc.max(1) {
        // q^j/(1-q^j)^2 = sum_m m q^{jm}
        let mut c = vec![Rational::zero(); qtrunc as usize];
        let mut m = 1;
        while j * m < qtrunc {
            c[(j * m) as usize] = int(4 * m);
            m += 1;
        }
        let factor = one.add(&sin2.mul_series(&QSeries::from_rationals(&c, qtrunc))?)?;
        acc = acc.mul(&factor)?;
    }
    Ok(acc)
}

pub fn lemma41_check(xtrunc: i64, qtrunc: i64) -> Result<Option<Discrepancy>> {
    lemma41_lhs(xtrunc, qtrunc)?.first_difference(&lemma41_rhs(xtrunc, qtrunc)?, 0.0)
}

/// `sin(X)/X` from its Taylor series.
pub fn lemma42_lhs(xtrunc: i64) -> BiSeries<Rational> {
    outer_taylor(&(), OuterVar::X, xtrunc, 1, 1, |t| {
        if t % 2 == 1 {
            return Rational::zero();
        }
        let sign = if (t / 2) % 2 == 0 { 1 } else { -1 };
        Rational::new(BigInt::from(sign), factorial(t + 1))
    })
}

/// `exp(sum_k (-4)^k B_{2k}/((2k)(2k)!) X^{2k})`.
pub fn lemma42_rhs(xtrunc: i64) -> Result<BiSeries<Rational>> {
    let b = bernoulli_numbers(xtrunc.max(0) as u64);
    let arg = outer_taylor(&(), OuterVar::X, xtrunc, 1, 1, |t| {
        if t == 0 || t % 2 == 1 {
            return Rational::zero();
        }
        let k = t / 2;
        let num = num_traits::pow(BigInt::from(-4), k as usize);
        Rational::from_integer(num) * &b[t as usize] / Rational::from_integer(BigInt::from(t) * factorial(t))
    });
    arg.exp()
}

pub fn lemma42_check(xtrunc: i64) -> Result<Option<Discrepancy>> {
    lemma42_lhs(xtrunc).first_difference(&lemma42_rhs(xtrunc)?, 0.0)
}

/// Checks equidistribution of cranks modulo `modulus` on the rows
/// `modulus * n + offset`, `0 <= n <= n_max`, stopping at partition size `cap`.
/// Returns the first failing row.
pub fn congruence_check(
    table: &CrankTable,
    modulus: u32,
    offset: usize,
    n_max: usize,
    cap: usize,
) -> Option<Discrepancy> {
    for n in 0..=n_max {
        let size = modulus as usize * n + offset;
        if size > cap || size > table.n_max() {
            break;
        }
        let counts = table.residue_counts(size, modulus);
        let total: i128 = counts.iter().sum();
        if total % modulus as i128 != 0 || counts.iter().any(|c| *c * modulus as i128 != total) {
            return Some(Discrepancy {
                location: format!("crank residues mod {modulus} at n = {size}"),
                left: format!("{counts:?}"),
                right: format!("each {}/{modulus}", total),
            });
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::partition_counts;
    use crate::ring::rat;

    #[test]
    fn genfun_small_rows() {
        let t = CrankTable::from_generating_function(6);
        assert_eq!(t.count(0, 0), 1);
        assert_eq!((t.count(-1, 1), t.count(0, 1), t.count(1, 1)), (1, -1, 1));
        for m in -6..=6 {
            let want = if [-4, -2, 0, 2, 4].contains(&m) { 1 } else { 0 };
            assert_eq!(t.count(m, 4), want, "m = {m}");
        }
        assert!(t.is_symmetric());
    }

    #[test]
    fn combinatorial_matches_enumeration() {
        let brute = CrankTable::brute_force(18).unwrap();
        let dp = CrankTable::combinatorial(18);
        for n in 0..=18 {
            for m in -18..=18 {
                assert_eq!(brute.count(m, n), dp.count(m, n), "M({m},{n})");
            }
        }
        assert_eq!(dp.row_sum(5), 7);
        assert_eq!(dp.residue_counts(9, 5), vec![6; 5]);
    }

    #[test]
    fn tables_agree_from_two() {
        let g = CrankTable::from_generating_function(30);
        let c = CrankTable::combinatorial(30);
        for n in 2..=30 {
            for m in -30..=30 {
                assert_eq!(g.count(m, n), c.count(m, n));
            }
        }
        let p = partition_counts(31);
        for n in 0..=30 {
            assert_eq!(BigInt::from(g.row_sum(n)), p[n]);
        }
    }

    #[test]
    fn second_moment() {
        let c2 = moment_definition(1, 10).unwrap();
        assert_eq!(c2.coeff(4).unwrap(), int(40));
        let p = partition_counts(10);
        for n in 0..10 {
            assert_eq!(c2.coeff(n as i64).unwrap(), Rational::from_integer(BigInt::from(2 * n) * &p[n]));
        }
    }

    #[test]
    fn displayed_coefficients() {
        assert_eq!(corollary_coefficients(3), vec![int(720), int(30), rat(3, 8), rat(1, 448)]);
        assert_eq!(corollary_coefficients(4), vec![int(40320), int(1680), int(21), rat(1, 8), rat(1, 2304)]);
        assert_eq!(corollary_coefficients(1), vec![int(2), rat(1, 12)]);
    }

    #[test]
    fn three_routes_small() {
        let table = EisensteinTable::new(3, 12).unwrap();
        for k in 1..=3 {
            let d = moment_definition(k, 12).unwrap();
            assert_eq!(moment_corollary(k, &table).unwrap(), d, "k = {k}");
            assert_eq!(moment_lambert(k, &table).unwrap(), d, "k = {k}");
        }
        let c0 = moment_lambert(0, &table).unwrap();
        assert_eq!(c0, moment_definition(0, 12).unwrap());
    }

    #[test]
    fn sine_exponential_small() {
        assert_eq!(lemma42_check(12).unwrap(), None);
        let log = lemma42_lhs(6).log().unwrap();
        assert_eq!(log.slice(2).unwrap().coeff(0).unwrap(), rat(-1, 6));
    }

    #[test]
    fn moment_generating_function_small() {
        assert_eq!(theorem2_check(2, 8).unwrap(), None);
        assert_eq!(lemma41_check(6, 6).unwrap(), None);
    }
}
