//! Eisenstein series, Lambert series, partition Eisenstein series and traces.
//!
//! Conventions: `G_{2k} = -B_{2k}/(2k) + 2 sum_{n >= 1} sigma_{2k-1}(n) q^n` and
//! `S_{2k-1} = sum_{m >= 1} m^{2k-1} q^m / (1 - q^m)`. For a partition
//! `lambda = (1^{m_1}, ..., k^{m_k})`, `G_lambda = prod_j G_{2j}^{m_j}` and
//! the trace of a weight `phi` is `Tr_k(phi) = sum_{lambda |- k} phi(lambda) G_lambda`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::partitions::{enumerate, Partition, PartitionWeight};
use crate::ring::{binomial, CoefficientRing, Rational};
use crate::series::QSeries;

/// Bernoulli numbers `B_0..=B_n` with `B_1 = -1/2`.
pub fn bernoulli_numbers(n: u64) -> Vec<Rational> {
    let mut b: Vec<Rational> = Vec::with_capacity(n as usize + 1);
    b.push(Rational::one());
    for m in 1..=n {
        let s: Rational = (0..m).map(|j| Rational::from_integer(binomial(m + 1, j)) * &b[j as usize]).sum();
        b.push(-s / Rational::from_integer(BigInt::from(m + 1)));
    }
    b
}

pub fn bernoulli(n: u64) -> Rational {
    bernoulli_numbers(n).pop().expect("nonempty")
}

/// `sigma_nu(n) = sum_{d | n} d^nu`.
pub fn sigma_divisor(nu: u32, n: u64) -> BigInt {
    assert!(n >= 1, "sigma_divisor needs n >= 1");
    let mut s = BigInt::zero();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            s += num_traits::pow(BigInt::from(d), nu as usize);
            let e = n / d;
            if e != d {
                s += num_traits::pow(BigInt::from(e), nu as usize);
            }
        }
        d += 1;
    }
    s
}

fn check_weight(weight: u64) -> Result<()> {
    if weight < 2 || weight % 2 == 1 {
        return Err(Error::InvalidArgument(format!("weight must be even and >= 2, got {weight}")));
    }
    Ok(())
}

/// `G_{weight}` known below `q^trunc`.
pub fn eisenstein(weight: u64, trunc: i64) -> Result<QSeries<Rational>> {
    check_weight(weight)?;
    let mut c = vec![-bernoulli(weight) / Rational::from_integer(BigInt::from(weight))];
    for n in 1..trunc.max(1) as u64 {
        c.push(Rational::from_integer(2 * sigma_divisor(weight as u32 - 1, n)));
    }
    c.truncate(trunc.max(0) as usize);
    Ok(QSeries::from_rationals(&c, trunc))
}

/// `S_j = sum_{m >= 1} m^j q^m/(1 - q^m)` for odd `j`, expanded as the double
/// sum `sum_{m, n >= 1} m^j q^{mn}`.
pub fn lambert_s(j: u64, trunc: i64) -> Result<QSeries<Rational>> {
    if j.is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!("Lambert index must be odd, got {j}")));
    }
    let len = trunc.max(0) as usize;
    let mut c = vec![BigInt::zero(); len];
    for m in 1..len {
        let mj = num_traits::pow(BigInt::from(m), j as usize);
        for e in (m..len).step_by(m) {
            c[e] += &mj;
        }
    }
    Ok(QSeries::from_dense(&(), 1, 0, trunc, c.into_iter().map(Rational::from_integer).collect()))
}

/// `sum_{lambda |- t} phi(lambda) prod_j gens[j-1]^{m_j}` for any list of
/// generators indexed by part size. `t = 0` gives `1`.
pub fn partition_trace<R: CoefficientRing>(
    gens: &[QSeries<R>],
    t: u64,
    weight: &PartitionWeight,
    one: &QSeries<R>,
) -> Result<QSeries<R>> {
    if gens.len() < t as usize {
        return Err(Error::InvalidArgument(format!("need {t} generators, have {}", gens.len())));
    }
    let mut powers = PowerCache::new(gens, one);
    let mut acc: Option<QSeries<R>> = None;
    for l in enumerate(t) {
        let c = weight.eval(&l);
        if c.vanishes() {
            continue;
        }
        let term = powers.monomial(&l)?.scale_rational(&c);
        acc = Some(match acc {
            None => term,
            Some(a) => a.add(&term)?,
        });
    }
    Ok(acc.unwrap_or_else(|| one.scale_rational(&Rational::zero())))
}

/// Memoised powers `gens[j-1]^e`.
struct PowerCache<'a, R: CoefficientRing> {
    gens: &'a [QSeries<R>],
    one: &'a QSeries<R>,
    cache: HashMap<(usize, u32), QSeries<R>>,
}

impl<'a, R: CoefficientRing> PowerCache<'a, R> {
    fn new(gens: &'a [QSeries<R>], one: &'a QSeries<R>) -> Self {
        Self { gens, one, cache: HashMap::new() }
    }

    fn power(&mut self, j: usize, e: u32) -> Result<QSeries<R>> {
        if e == 0 {
            return Ok(self.one.clone());
        }
        if let Some(p) = self.cache.get(&(j, e)) {
            return Ok(p.clone());
        }
        let p = self.power(j, e - 1)?.mul(&self.gens[j - 1])?;
        self.cache.insert((j, e), p.clone());
        Ok(p)
    }

    fn monomial(&mut self, l: &Partition) -> Result<QSeries<R>> {
        let mut acc = self.one.clone();
        for (j, m) in l.parts_with_multiplicity() {
            acc = acc.mul(&self.power(j, m)?)?;
        }
        Ok(acc)
    }
}

/// Cached `G_2, ..., G_{2K}` and `S_1, ..., S_{2K-1}` to a fixed truncation.
#[derive(Clone, Debug)]
pub struct EisensteinTable {
    max_k: u64,
    trunc: i64,
    bernoulli: Vec<Rational>,
    g: Vec<QSeries<Rational>>,
    s: Vec<QSeries<Rational>>,
}

impl EisensteinTable {
    pub fn new(max_k: u64, trunc: i64) -> Result<Self> {
        let bernoulli = bernoulli_numbers(2 * max_k);
        let g = (1..=max_k).map(|k| eisenstein(2 * k, trunc)).collect::<Result<Vec<_>>>()?;
        let s = (1..=max_k).map(|k| lambert_s(2 * k - 1, trunc)).collect::<Result<Vec<_>>>()?;
        Ok(Self { max_k, trunc, bernoulli, g, s })
    }

    pub fn max_k(&self) -> u64 {
        self.max_k
    }

    pub fn trunc(&self) -> i64 {
        self.trunc
    }

    pub fn bernoulli(&self, n: u64) -> &Rational {
        &self.bernoulli[n as usize]
    }

    fn check_k(&self, k: u64) -> Result<()> {
        if k == 0 || k > self.max_k {
            return Err(Error::InvalidArgument(format!("index {k} outside 1..={}", self.max_k)));
        }
        Ok(())
    }

    /// `G_{2k}`.
    pub fn g(&self, k: u64) -> Result<&QSeries<Rational>> {
        self.check_k(k)?;
        Ok(&self.g[k as usize - 1])
    }

    /// `S_{2k-1}`.
    pub fn s(&self, k: u64) -> Result<&QSeries<Rational>> {
        self.check_k(k)?;
        Ok(&self.s[k as usize - 1])
    }

    /// `G_2, G_4, ...` as trace generators.
    pub fn generators(&self) -> &[QSeries<Rational>] {
        &self.g
    }

    pub fn one(&self) -> QSeries<Rational> {
        QSeries::one(&(), 1, self.trunc)
    }

    /// `G_lambda = prod_j G_{2j}^{m_j}`.
    pub fn g_partition(&self, l: &Partition) -> Result<QSeries<Rational>> {
        self.check_size(l)?;
        let one = self.one();
        PowerCache::new(&self.g, &one).monomial(l)
    }

    /// `S_lambda = prod_j S_{2j-1}^{m_j}`.
    pub fn lambert_partition(&self, l: &Partition) -> Result<QSeries<Rational>> {
        self.check_size(l)?;
        let one = self.one();
        PowerCache::new(&self.s, &one).monomial(l)
    }

    fn check_size(&self, l: &Partition) -> Result<()> {
        if l.largest_part() > self.max_k {
            return Err(Error::InvalidArgument(format!("partition {l} needs weights beyond {}", 2 * self.max_k)));
        }
        Ok(())
    }

    /// `Tr_k(phi)`, with `Tr_0 = 1`.
    pub fn trace(&self, k: u64, weight: &PartitionWeight) -> Result<QSeries<Rational>> {
        if k > self.max_k {
            return Err(Error::InvalidArgument(format!("trace index {k} beyond table size {}", self.max_k)));
        }
        partition_trace(&self.g, k, weight, &self.one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{int, rat};

    #[test]
    fn bernoulli_values() {
        let b = bernoulli_numbers(8);
        assert_eq!(b[1], rat(-1, 2));
        assert_eq!(b[2], rat(1, 6));
        assert_eq!(b[3], int(0));
        assert_eq!(b[4], rat(-1, 30));
        assert_eq!(b[6], rat(1, 42));
        assert_eq!(b[8], rat(-1, 30));
    }

    #[test]
    fn divisor_sums() {
        assert_eq!(sigma_divisor(1, 1), BigInt::from(1));
        assert_eq!(sigma_divisor(1, 4), BigInt::from(7));
        assert_eq!(sigma_divisor(3, 2), BigInt::from(9));
        assert_eq!(sigma_divisor(0, 12), BigInt::from(6));
    }

    #[test]
    fn g2_expansion() {
        let g2 = eisenstein(2, 5).unwrap();
        let want = [rat(-1, 12), int(2), int(6), int(8), int(14)];
        for (n, w) in want.iter().enumerate() {
            assert_eq!(&g2.coeff(n as i64).unwrap(), w);
        }
        assert_eq!(eisenstein(4, 3).unwrap().coeff(0).unwrap(), rat(1, 120));
        assert_eq!(eisenstein(6, 3).unwrap().coeff(2).unwrap(), int(66));
        assert!(eisenstein(3, 3).is_err());
    }

    #[test]
    fn lambert_matches_bernoulli_shift() {
        for k in 1..=6u64 {
            let s = lambert_s(2 * k - 1, 20).unwrap();
            let b = bernoulli(2 * k) / Rational::from_integer(BigInt::from(4 * k));
            let g = eisenstein(2 * k, 20).unwrap();
            let rhs = &QSeries::constant(&(), 1, 20, &b) + &g.scale_rational(&rat(1, 2));
            assert_eq!(s, rhs, "k = {k}");
        }
    }

    #[test]
    fn small_traces() {
        let t = EisensteinTable::new(3, 10).unwrap();
        let g2 = t.g(1).unwrap().clone();
        let g4 = t.g(2).unwrap().clone();
        assert_eq!(t.trace(0, &PartitionWeight::PhiLambda).unwrap(), t.one());
        assert_eq!(t.trace(1, &PartitionWeight::PhiCrank).unwrap(), g2.scale_rational(&rat(1, 2)));
        let want = &(&g2 * &g2).scale_rational(&rat(1, 8)) - &g4.scale_rational(&rat(1, 24));
        assert_eq!(t.trace(2, &PartitionWeight::PhiLambda).unwrap(), want);
        let l = Partition::from_parts(&[1, 1]).unwrap();
        assert_eq!(t.g_partition(&l).unwrap().coeff(0).unwrap(), rat(1, 144));
        assert_eq!(t.g_partition(&Partition::empty()).unwrap(), t.one());
    }
}
