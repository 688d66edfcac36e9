//! Integer partitions, cycle index polynomials and partition weights.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::ring::{factorial, Rational};
use crate::series::QSeries;

/// A partition stored by multiplicities: `mult[j-1]` is the number of parts
/// equal to `j`. Trailing zero multiplicities are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Partition {
    mult: Vec<u32>,
}

impl Partition {
    pub fn empty() -> Self {
        Self { mult: Vec::new() }
    }

    pub fn from_multiplicities(mut mult: Vec<u32>) -> Self {
        while mult.last() == Some(&0) {
            mult.pop();
        }
        Self { mult }
    }

    /// Build from a list of parts in any order; zero parts are rejected.
    pub fn from_parts(parts: &[u32]) -> Result<Self> {
        let mut mult = Vec::new();
        for &p in parts {
            if p == 0 {
                return Err(Error::InvalidArgument("parts must be positive".into()));
            }
            if mult.len() < p as usize {
                mult.resize(p as usize, 0);
            }
            mult[p as usize - 1] += 1;
        }
        Ok(Self::from_multiplicities(mult))
    }

    pub fn multiplicities(&self) -> &[u32] {
        &self.mult
    }

    /// Multiplicity `m_j` of the part `j`.
    pub fn multiplicity(&self, j: usize) -> u32 {
        if j == 0 {
            return 0;
        }
        self.mult.get(j - 1).copied().unwrap_or(0)
    }

    /// Pairs `(j, m_j)` with `m_j > 0`, increasing in `j`.
    pub fn parts_with_multiplicity(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.mult.iter().enumerate().filter(|(_, m)| **m > 0).map(|(i, m)| (i + 1, *m))
    }

    /// Parts in non-increasing order.
    pub fn parts(&self) -> Vec<u32> {
        let mut out = Vec::new();
        for (j, m) in self.parts_with_multiplicity().collect::<Vec<_>>().into_iter().rev() {
            out.extend(std::iter::repeat_n(j as u32, m as usize));
        }
        out
    }

    pub fn size(&self) -> u64 {
        self.parts_with_multiplicity().map(|(j, m)| j as u64 * m as u64).sum()
    }

    /// Number of parts.
    pub fn length(&self) -> u64 {
        self.mult.iter().map(|m| *m as u64).sum()
    }

    pub fn largest_part(&self) -> u64 {
        self.mult.len() as u64
    }

    /// Number of parts equal to one.
    pub fn ones(&self) -> u64 {
        self.multiplicity(1) as u64
    }

    pub fn is_empty(&self) -> bool {
        self.mult.is_empty()
    }

    /// `z_lambda = prod_j j^{m_j} m_j!`, the centraliser order of the cycle type.
    pub fn z_lambda(&self) -> BigInt {
        self.parts_with_multiplicity()
            .map(|(j, m)| num_traits::pow(BigInt::from(j), m as usize) * factorial(m as u64))
            .product()
    }

    /// The crank: the largest part when there are no ones, otherwise the
    /// number of parts larger than the number of ones, minus the number of ones.
    pub fn crank(&self) -> Result<i64> {
        if self.is_empty() {
            return Err(Error::EmptyPartition);
        }
        let w = self.ones() as usize;
        if w == 0 {
            return Ok(self.largest_part() as i64);
        }
        let mu: u64 = self.mult.iter().skip(w).map(|m| *m as u64).sum();
        Ok(mu as i64 - w as i64)
    }

    /// Canonical order: lexicographic on multiplicity vectors, larger first,
    /// so `(1^k)` leads and `(k)` comes last.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        other.mult.cmp(&self.mult)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts().iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// All partitions of `k` in canonical order; `k = 0` gives the empty partition.
pub fn enumerate(k: u64) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut parts = Vec::new();
    fill(k as u32, k as u32, &mut parts, &mut out);
    out.sort_by(Partition::canonical_cmp);
    out
}

fn fill(rest: u32, max: u32, parts: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if rest == 0 {
        out.push(Partition::from_parts(parts).expect("positive parts"));
        return;
    }
    for p in (1..=max.min(rest)).rev() {
        parts.push(p);
        fill(rest - p, p, parts, out);
        parts.pop();
    }
}

/// Number of partitions `p(n)` for `n < len`, by the usual
/// dynamic programme over part sizes.
pub fn partition_counts(len: usize) -> Vec<BigInt> {
    let mut p = vec![BigInt::zero(); len];
    if len == 0 {
        return p;
    }
    p[0] = BigInt::one();
    for part in 1..len {
        for n in part..len {
            let t = p[n - part].clone();
            p[n] += t;
        }
    }
    p
}

/// `Z(S_k)` as pairs `(lambda, 1/z_lambda)` in canonical order.
pub fn cycle_index(k: u64) -> Vec<(Partition, Rational)> {
    enumerate(k)
        .into_iter()
        .map(|l| {
            let z = l.z_lambda();
            (l, Rational::new(BigInt::one(), z))
        })
        .collect()
}

/// `Z(S_k)` evaluated at `x_j = xs[j-1]`.
pub fn cycle_index_eval(k: u64, xs: &[Rational]) -> Rational {
    cycle_index(k)
        .into_iter()
        .map(|(l, c)| {
            l.parts_with_multiplicity()
                .map(|(j, m)| num_traits::pow(xs[j - 1].clone(), m as usize))
                .fold(c, |acc, v| acc * v)
        })
        .sum()
}

/// Compares `sum_{k <= K} Z(S_k)(x) y^k` with `exp(sum_{j <= K} x_j y^j / j)`
/// through `y^K`. The exponential side is computed by the series recurrence,
/// independently of any partition enumeration.
pub fn polya_check(xs: &[Rational], big_k: u64) -> Result<bool> {
    if big_k == 0 || xs.len() < big_k as usize {
        return Err(Error::InvalidArgument("need K >= 1 and x_1..x_K".into()));
    }
    let trunc = big_k as i64 + 1;
    let lhs: Vec<Rational> = (0..=big_k).map(|k| cycle_index_eval(k, xs)).collect();
    let lhs = QSeries::from_rationals(&lhs, trunc);
    let mut arg = vec![Rational::zero()];
    for j in 1..=big_k as usize {
        arg.push(&xs[j - 1] / Rational::from_integer(BigInt::from(j)));
    }
    let rhs = QSeries::from_rationals(&arg, trunc).exp()?;
    lhs.agrees_with(&rhs, 0.0)
}

fn weight_denominator(l: &Partition, part_factorial: impl Fn(usize) -> BigInt) -> BigInt {
    l.parts_with_multiplicity()
        .map(|(j, m)| factorial(m as u64) * num_traits::pow(part_factorial(j), m as usize))
        .product()
}

fn sign(l: &Partition) -> BigInt {
    if l.length().is_multiple_of(2) {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

/// `(-1)^{l(lambda)} / prod_j m_j! ((2j)!)^{m_j}`.
pub fn phi_lambda(l: &Partition) -> Rational {
    Rational::new(sign(l), weight_denominator(l, |j| factorial(2 * j as u64)))
}

/// `1 / prod_j m_j! ((2j)!)^{m_j}`.
pub fn phi_crank(l: &Partition) -> Rational {
    Rational::new(BigInt::one(), weight_denominator(l, |j| factorial(2 * j as u64)))
}

/// `(-1)^{l(lambda)} / prod_j m_j! (j!)^{m_j}`.
pub fn phi_jacobi(l: &Partition) -> Rational {
    Rational::new(sign(l), weight_denominator(l, |j| factorial(j as u64)))
}

/// A weight function on partitions.
#[derive(Clone)]
pub enum PartitionWeight {
    PhiLambda,
    PhiCrank,
    PhiJacobi,
    Custom { name: String, f: Arc<dyn Fn(&Partition) -> Rational + Send + Sync> },
}

impl PartitionWeight {
    pub fn custom(name: impl Into<String>, f: impl Fn(&Partition) -> Rational + Send + Sync + 'static) -> Self {
        PartitionWeight::Custom { name: name.into(), f: Arc::new(f) }
    }

    pub fn eval(&self, l: &Partition) -> Rational {
        match self {
            PartitionWeight::PhiLambda => phi_lambda(l),
            PartitionWeight::PhiCrank => phi_crank(l),
            PartitionWeight::PhiJacobi => phi_jacobi(l),
            PartitionWeight::Custom { f, .. } => f(l),
        }
    }

    pub fn name(&self) -> &str {
        match self {
            PartitionWeight::PhiLambda => "lambda",
            PartitionWeight::PhiCrank => "crank",
            PartitionWeight::PhiJacobi => "jacobi",
            PartitionWeight::Custom { name, .. } => name,
        }
    }
}

impl fmt::Debug for PartitionWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PartitionWeight({})", self.name())
    }
}
