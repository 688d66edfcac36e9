//! Verification suites: named groups of checks with deterministic JSON reports.
//!
//! Each check group is a plain function returning [`Check`]s, so the CLI suites
//! and the acceptance harness run the same code at different sizes.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};

use crate::crank::{
    congruence_check, corollary_coefficients, lemma41_check, lemma42_check, moment_corollary, moment_definition,
    moment_lambert, theorem2_check, CrankTable,
};
use crate::cyclotomic::Cyclo;
use crate::eisenstein::{eisenstein, sigma_divisor, EisensteinTable};
use crate::error::{Error, Result};
use crate::jacobi::{
    ring_for_conductor, theorem1_trace_check, theorem3_reconstruct, theta_exponential, theta_product,
    theta_shift_check, torsional_g, Divisor, LiftedPoint, RingChoice, TorsionPoint,
};
use crate::lattice::{modularity_spot_check, theorem1_numeric, Lattice, DEFAULT_RADIUS, DEFAULT_SCHEDULE};
use crate::partitions::{cycle_index, partition_counts, polya_check, Partition};
use crate::ring::{int, rat, Rational};
use crate::series::Discrepancy;

/// Tolerance for exact identities evaluated in complex floats (conductor > 12).
pub const COMPLEX_TOL: f64 = 1e-9;
pub const LATTICE_TOL: f64 = 1e-3;
pub const NEWTON_TOL: f64 = 1e-10;
pub const MODULARITY_TOL: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub discrepancy: Option<Discrepancy>,
    /// Measured error and its tolerance, for floating-point checks.
    pub error: Option<(f64, f64)>,
}

impl Check {
    pub fn exact(name: impl Into<String>, discrepancy: Option<Discrepancy>) -> Self {
        Self { name: name.into(), pass: discrepancy.is_none(), discrepancy, error: None }
    }

    pub fn equal<T: PartialEq + fmt::Display>(name: impl Into<String>, left: T, right: T) -> Self {
        let name = name.into();
        let discrepancy = (left != right).then(|| Discrepancy {
            location: name.clone(),
            left: left.to_string(),
            right: right.to_string(),
        });
        Self::exact(name, discrepancy)
    }

    pub fn numeric(name: impl Into<String>, error: f64, tol: f64) -> Self {
        let name = name.into();
        let pass = error.is_finite() && error < tol;
        let discrepancy = (!pass).then(|| Discrepancy {
            location: name.clone(),
            left: format!("{error:e}"),
            right: format!("< {tol:e}"),
        });
        Self { name, pass, discrepancy, error: Some((error, tol)) }
    }

    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("name".into(), json!(self.name));
        m.insert("pass".into(), json!(self.pass));
        if let Some(d) = &self.discrepancy {
            m.insert("discrepancy".into(), discrepancy_json(d));
        }
        if let Some((e, t)) = self.error {
            m.insert("error".into(), json!(e));
            m.insert("tolerance".into(), json!(t));
        }
        Value::Object(m)
    }
}

fn discrepancy_json(d: &Discrepancy) -> Value {
    json!({ "location": d.location, "left": d.left, "right": d.right })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    Theorem1,
    Theorem2,
    Corollary,
    Lemma41,
    Lemma42,
    Polya,
    Congruences,
    Theta,
    Torsional,
    Theorem3,
    Modularity,
    Examples,
}

impl Suite {
    pub const ALL: [Suite; 12] = [
        Suite::Examples,
        Suite::Polya,
        Suite::Lemma42,
        Suite::Lemma41,
        Suite::Theorem2,
        Suite::Corollary,
        Suite::Congruences,
        Suite::Theorem1,
        Suite::Theta,
        Suite::Torsional,
        Suite::Theorem3,
        Suite::Modularity,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Theorem1 => "theorem1",
            Suite::Theorem2 => "theorem2",
            Suite::Corollary => "corollary",
            Suite::Lemma41 => "lemma41",
            Suite::Lemma42 => "lemma42",
            Suite::Polya => "polya",
            Suite::Congruences => "congruences",
            Suite::Theta => "theta",
            Suite::Torsional => "torsional",
            Suite::Theorem3 => "theorem3",
            Suite::Modularity => "modularity",
            Suite::Examples => "examples",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown suite {s:?}")))
    }
}

/// Overrides for suite sizes; `None` means the suite's default.
#[derive(Clone, Debug, Default)]
pub struct SuiteParams {
    /// Coefficients below `q^terms` are compared.
    pub terms: Option<i64>,
    pub k: Option<u32>,
    /// Outer (`Z` or `X`) truncation.
    pub zorder: Option<i64>,
    pub tau: Option<Complex64>,
    pub radius: Option<f64>,
    pub divisor: Option<Divisor>,
    pub seed: u64,
}

pub const DEFAULT_TERMS: i64 = 30;
pub const DEFAULT_K: u32 = 5;

#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub suite: Suite,
    pub params: Map<String, Value>,
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn first_discrepancy(&self) -> Option<&Discrepancy> {
        self.checks.iter().find_map(|c| c.discrepancy.as_ref())
    }

    pub fn to_json(&self) -> Value {
        json!({
            "suite": self.suite.name(),
            "params": Value::Object(self.params.clone()),
            "pass": self.pass(),
            "first_discrepancy": self.first_discrepancy().map(discrepancy_json),
            "checks": self.checks.iter().map(Check::to_json).collect::<Vec<_>>(),
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{:<12} {}\n", self.suite.name(), if self.pass() { "PASS" } else { "FAIL" });
        for c in &self.checks {
            out.push_str(&format!("  {:<4} {}", if c.pass { "ok" } else { "FAIL" }, c.name));
            if let Some((e, t)) = c.error {
                out.push_str(&format!("  (error {e:.3e}, tolerance {t:.0e})"));
            }
            if let Some(d) = c.discrepancy.as_ref().filter(|_| !c.pass) {
                out.push_str(&format!("  at {}: {} != {}", d.location, d.left, d.right));
            }
            out.push('\n');
        }
        out
    }
}

pub fn run(suite: Suite, p: &SuiteParams) -> Result<VerifyReport> {
    let terms = p.terms.unwrap_or(DEFAULT_TERMS);
    if terms < 1 {
        return Err(Error::InvalidArgument("terms must be at least 1".into()));
    }
    let mut params = Map::new();
    params.insert("terms".into(), json!(terms));
    let mut checks = Vec::new();
    match suite {
        Suite::Examples => {
            checks.extend(eisenstein_displays(terms)?);
            checks.extend(cycle_index_examples());
            checks.extend(corollary_displays());
        }
        Suite::Polya => {
            let k = p.k.unwrap_or(8);
            params.insert("k".into(), json!(k));
            params.insert("seed".into(), json!(p.seed));
            checks.extend(cycle_index_examples());
            checks.extend(polya_random(k as u64, 20, p.seed)?);
        }
        Suite::Lemma42 => {
            let x = p.zorder.unwrap_or(10);
            params.insert("zorder".into(), json!(x));
            checks.push(lemma42(x)?);
        }
        Suite::Lemma41 => {
            let x = p.zorder.unwrap_or(10);
            params.insert("zorder".into(), json!(x));
            checks.push(lemma41(x, terms)?);
        }
        Suite::Theorem2 => {
            let k = p.k.unwrap_or(DEFAULT_K);
            params.insert("k".into(), json!(k));
            checks.push(theorem2(k, terms)?);
        }
        Suite::Corollary => {
            let k = p.k.unwrap_or(DEFAULT_K);
            params.insert("k".into(), json!(k));
            checks.extend(corollary(k, terms)?);
            checks.extend(corollary_displays());
        }
        Suite::Congruences => {
            let n = (terms - 1).max(0) as usize;
            params.insert("k".into(), json!(40));
            checks.extend(crank_structure(n));
            checks.extend(crank_congruences(40, 50));
        }
        Suite::Theorem1 => {
            let k = p.k.unwrap_or(DEFAULT_K);
            let radius = p.radius.unwrap_or(DEFAULT_RADIUS);
            params.insert("k".into(), json!(k));
            params.insert("radius".into(), json!(radius));
            checks.push(theorem1_exact(k as u64, terms)?);
            let taus = match p.tau {
                Some(t) => {
                    params.insert("tau".into(), json!([t.re, t.im]));
                    vec![t]
                }
                None => vec![Complex64::new(0.0, 1.0), Complex64::new(0.0, 2.0)],
            };
            checks.extend(theorem1_lattice(&taus, &[1, 2], radius)?);
            if p.tau.is_none() {
                checks.extend(theorem1_vanishing(radius)?);
            }
            checks.extend(newton_vs_brute()?);
        }
        Suite::Theta => {
            let z = p.zorder.unwrap_or(9);
            params.insert("zorder".into(), json!(z));
            checks.extend(theta(z, terms)?);
        }
        Suite::Torsional => {
            let z = p.zorder.unwrap_or(8);
            params.insert("zorder".into(), json!(z));
            checks.extend(torsional(z, terms)?);
            checks.extend(half_period_parity(7, terms)?);
        }
        Suite::Theorem3 => {
            let z = p.zorder.unwrap_or(8);
            params.insert("zorder".into(), json!(z));
            let divisors = match &p.divisor {
                Some(d) => {
                    params.insert("divisor".into(), json!(d.to_string()));
                    vec![d.clone()]
                }
                None => standard_divisors(),
            };
            for d in &divisors {
                checks.push(theorem3(d, z, terms)?);
            }
        }
        Suite::Modularity => {
            let tau = p.tau.unwrap_or(Complex64::new(0.0, 2.0));
            params.insert("tau".into(), json!([tau.re, tau.im]));
            params.remove("terms");
            checks.extend(modularity(tau)?);
        }
    }
    Ok(VerifyReport { suite, params, checks })
}

pub fn run_all(p: &SuiteParams) -> Result<Vec<VerifyReport>> {
    Suite::ALL.into_iter().map(|s| run(s, p)).collect()
}

/// Constant terms of `G_2, G_4, G_6` and `2 sigma_{2k-1}(n)` below `q^trunc`.
pub fn eisenstein_displays(trunc: i64) -> Result<Vec<Check>> {
    let constants = [rat(-1, 12), rat(1, 120), rat(-1, 252)];
    let mut out = Vec::new();
    for (i, c) in constants.into_iter().enumerate() {
        let k = i as u64 + 1;
        let g = eisenstein(2 * k, trunc)?;
        out.push(Check::equal(format!("G_{} constant term", 2 * k), g.coeff(0)?, c));
        let mut discrepancy = None;
        for n in 1..trunc {
            let want = Rational::from_integer(BigInt::from(2) * sigma_divisor(2 * k as u32 - 1, n as u64));
            let got = g.coeff(n)?;
            if got != want {
                discrepancy =
                    Some(Discrepancy { location: format!("q^{n}"), left: got.to_string(), right: want.to_string() });
                break;
            }
        }
        out.push(Check::exact(format!("G_{} coefficients are 2 sigma_{}(n)", 2 * k, 2 * k - 1), discrepancy));
    }
    Ok(out)
}

fn cycle_index_text(k: u64) -> String {
    let terms: Vec<String> = cycle_index(k)
        .into_iter()
        .map(|(l, c)| {
            let monomial: Vec<String> = l
                .parts_with_multiplicity()
                .map(|(j, m)| if m == 1 { format!("x{j}") } else { format!("x{j}^{m}") })
                .collect();
            format!("{}*{}", c, monomial.join("*"))
        })
        .collect();
    terms.join(" + ")
}

/// `Z(S_1), Z(S_2), Z(S_3)` against their closed forms.
pub fn cycle_index_examples() -> Vec<Check> {
    let want = ["1*x1", "1/2*x1^2 + 1/2*x2", "1/6*x1^3 + 1/2*x1*x2 + 1/3*x3"];
    want.iter()
        .enumerate()
        .map(|(i, w)| Check::equal(format!("Z(S_{})", i + 1), cycle_index_text(i as u64 + 1), w.to_string()))
        .collect()
}

fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    let num: i64 = rng.gen_range(-50..=50);
    let den: i64 = rng.gen_range(1..=20);
    rat(num, den)
}

/// The cycle index generating function against the exponential series at
/// `count` seeded random rational specializations.
pub fn polya_random(big_k: u64, count: usize, seed: u64) -> Result<Vec<Check>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for i in 0..count {
        let xs: Vec<Rational> = (0..big_k).map(|_| random_rational(&mut rng)).collect();
        if !polya_check(&xs, big_k)? {
            let shown: Vec<String> = xs.iter().map(ToString::to_string).collect();
            failures.push(Discrepancy {
                location: format!("specialization {i}"),
                left: shown.join(","),
                right: "exp(sum x_j y^j / j)".into(),
            });
        }
    }
    Ok(vec![Check::exact(
        format!("cycle index generating function, K = {big_k}, {count} points"),
        failures.into_iter().next(),
    )])
}

pub fn lemma42(xtrunc: i64) -> Result<Check> {
    Ok(Check::exact(format!("sin X / X as Bernoulli exponential below X^{xtrunc}"), lemma42_check(xtrunc)?))
}

pub fn lemma41(xtrunc: i64, qtrunc: i64) -> Result<Check> {
    Ok(Check::exact(
        format!("Lambert exponential vs sine product below (X^{xtrunc}, q^{qtrunc})"),
        lemma41_check(xtrunc, qtrunc)?,
    ))
}

pub fn theorem2(big_k: u32, qtrunc: i64) -> Result<Check> {
    Ok(Check::exact(
        format!("crank moment generating function through X^{}, below q^{qtrunc}", 2 * big_k),
        theorem2_check(big_k, qtrunc)?,
    ))
}

/// The three routes to `C_{2k}` agree for `1 <= k <= K`.
pub fn corollary(big_k: u32, qtrunc: i64) -> Result<Vec<Check>> {
    let table = EisensteinTable::new(big_k.max(1) as u64, qtrunc)?;
    let mut out = Vec::new();
    for k in 1..=big_k {
        let def = moment_definition(k, qtrunc)?;
        let cor = moment_corollary(k, &table)?;
        let lam = moment_lambert(k, &table)?;
        out.push(Check::exact(format!("C_{} definition = trace formula", 2 * k), def.first_difference(&cor, 0.0)?));
        out.push(Check::exact(format!("C_{} definition = Lambert formula", 2 * k), def.first_difference(&lam, 0.0)?));
    }
    Ok(out)
}

fn rational_list(v: &[Rational]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(", "))
}

/// The displayed coefficient sets for `k = 3` and `k = 4`.
pub fn corollary_displays() -> Vec<Check> {
    let shown = |k: u32| {
        let mut c = corollary_coefficients(k);
        c.reverse();
        rational_list(&c)
    };
    vec![
        Check::equal("k = 3 coefficient set", shown(3), "(1/448, 3/8, 30, 720)".to_string()),
        Check::equal("k = 4 coefficient set", shown(4), "(1/2304, 1/8, 21, 1680, 40320)".to_string()),
    ]
}

fn first_row_failure(n_max: usize, mut ok: impl FnMut(usize) -> Option<(String, String)>) -> Option<Discrepancy> {
    (0..=n_max).find_map(|n| ok(n).map(|(left, right)| Discrepancy { location: format!("n = {n}"), left, right }))
}

/// Row sums, symmetry and the second moment of the crank table for `n <= n_max`,
/// plus agreement of the product table with direct crank counts for `n != 1`.
pub fn crank_structure(n_max: usize) -> Vec<Check> {
    let table = CrankTable::from_generating_function(n_max);
    let direct = CrankTable::combinatorial(n_max);
    let p = partition_counts(n_max + 1);
    let to_big = |x: i128| BigInt::from(x);
    let row_sums = first_row_failure(n_max, |n| {
        let s = to_big(table.row_sum(n));
        (s != p[n]).then(|| (s.to_string(), p[n].to_string()))
    });
    let symmetric = first_row_failure(n_max, |n| {
        let m = (-(n as i64)..=n as i64).find(|m| table.count(*m, n) != table.count(-m, n))?;
        Some((format!("M({m}) = {}", table.count(m, n)), format!("M({}) = {}", -m, table.count(-m, n))))
    });
    let second = first_row_failure(n_max, |n| {
        let got = table.even_moment(1, n);
        let want = BigInt::from(2 * n) * &p[n];
        (got != want).then(|| (got.to_string(), want.to_string()))
    });
    let agree = first_row_failure(n_max, |n| {
        if n == 1 {
            return None;
        }
        let m = (-(n as i64)..=n as i64).find(|m| table.count(*m, n) != direct.count(*m, n))?;
        Some((format!("product M({m}) = {}", table.count(m, n)), format!("direct {}", direct.count(m, n))))
    });
    vec![
        Check::exact(format!("sum_m M(m,n) = p(n), n <= {n_max}"), row_sums),
        Check::exact(format!("M(m,n) = M(-m,n), n <= {n_max}"), symmetric),
        Check::exact(format!("sum_m m^2 M(m,n) = 2n p(n), n <= {n_max}"), second),
        Check::exact(format!("product table = direct crank counts, n <= {n_max}"), agree),
    ]
}

/// Crank equidistribution on `5n+4`, `7n+5`, `11n+6` for `n <= n_max`, the
/// modulus-11 rows capped at partition size `cap11`.
pub fn crank_congruences(n_max: usize, cap11: usize) -> Vec<Check> {
    let top = (7 * n_max + 5).max(5 * n_max + 4);
    let table = CrankTable::combinatorial(top);
    [(5, 4, usize::MAX), (7, 5, usize::MAX), (11, 6, cap11)]
        .into_iter()
        .map(|(m, r, cap)| {
            let name = if cap == usize::MAX {
                format!("cranks equidistributed mod {m} on {m}n+{r}, n <= {n_max}")
            } else {
                format!("cranks equidistributed mod {m} on {m}n+{r}, size <= {cap}")
            };
            Check::exact(name, congruence_check(&table, m, r, n_max, cap))
        })
        .collect()
}

pub fn theorem1_exact(k_max: u64, qtrunc: i64) -> Result<Check> {
    Ok(Check::exact(
        format!("Tr_k(phi_Lambda) = Z^(2k) coefficient, k <= {k_max}, below q^{qtrunc}"),
        theorem1_trace_check(k_max, qtrunc)?,
    ))
}

fn show_tau(t: Complex64) -> String {
    format!("{}+{}i", t.re, t.im)
}

pub fn theorem1_lattice(taus: &[Complex64], ks: &[u32], radius: f64) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for tau in taus {
        let lattice = Lattice::new(*tau, radius)?;
        for k in ks {
            let r = theorem1_numeric(*k, &lattice, &DEFAULT_SCHEDULE)?;
            out.push(Check::numeric(format!("lattice e_{k} at tau = {}", show_tau(*tau)), r.abs_error, LATTICE_TOL));
        }
    }
    Ok(out)
}

/// Odd `e_k` vanish at `tau = i`.
pub fn theorem1_vanishing(radius: f64) -> Result<Vec<Check>> {
    let lattice = Lattice::new(Complex64::new(0.0, 1.0), radius)?;
    [1, 3]
        .into_iter()
        .map(|k| {
            let r = theorem1_numeric(k, &lattice, &DEFAULT_SCHEDULE)?;
            Ok(Check::numeric(format!("lattice e_{k} vanishes at tau = i"), r.lattice_value.norm(), LATTICE_TOL))
        })
        .collect()
}

/// Newton's identities against subset sums at `R = 20`, `k <= 3`, `s in {1, 1/2}`.
pub fn newton_vs_brute() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for tau in [Complex64::new(0.0, 1.0), Complex64::new(0.0, 2.0)] {
        let lattice = Lattice::new(tau, 20.0)?;
        let mut worst: f64 = 0.0;
        for k in 1..=3 {
            for s in [1.0, 0.5] {
                worst =
                    worst.max((lattice.elementary_symmetric(k, s) - lattice.elementary_symmetric_brute(k, s)).norm());
            }
        }
        out.push(Check::numeric(
            format!("Newton e_k = subset sums at R = 20, tau = {}", show_tau(tau)),
            worst,
            NEWTON_TOL,
        ));
    }
    Ok(out)
}

pub fn theta(ztrunc: i64, qtrunc: i64) -> Result<Vec<Check>> {
    let product = theta_product(ztrunc, qtrunc)?;
    let exponential = theta_exponential(ztrunc, qtrunc)?;
    let mut even = None;
    for t in (0..ztrunc).step_by(2) {
        let s = product.slice(t)?;
        if let Some(e) = s.valuation() {
            even = Some(Discrepancy {
                location: format!("Z^{t}*q^{e}"),
                left: s.coeff(e)?.to_string(),
                right: "0".into(),
            });
            break;
        }
    }
    Ok(vec![
        Check::exact(
            format!("triple product = exponential form below (Z^{ztrunc}, q^{qtrunc})"),
            product.first_difference(&exponential, 0.0)?,
        ),
        Check::exact("even Z coefficients vanish", even),
    ])
}

fn shift_check_any(x: &LiftedPoint, ztrunc: i64, qtrunc: i64) -> Result<Option<Discrepancy>> {
    match ring_for_conductor(x.point.conductor()) {
        RingChoice::Rational => theta_shift_check::<Rational>(&(), x, ztrunc, qtrunc, 0.0),
        RingChoice::Cyclotomic(c) => theta_shift_check::<Cyclo>(&c, x, ztrunc, qtrunc, 0.0),
        RingChoice::Complex => theta_shift_check::<Complex64>(&(), x, ztrunc, qtrunc, COMPLEX_TOL),
    }
}

/// `Theta(z - x)/Theta(-x)` against the torsional exponential at the standard points.
pub fn torsional(ztrunc: i64, qtrunc: i64) -> Result<Vec<Check>> {
    let points = [(int(0), rat(1, 2)), (int(0), rat(1, 3)), (int(0), rat(1, 4)), (rat(1, 2), int(0))];
    points
        .into_iter()
        .map(|(a, b)| {
            let x = LiftedPoint::reduced(TorsionPoint::new(a, b));
            let d = shift_check_any(&x, ztrunc, qtrunc)?;
            Ok(Check::exact(format!("theta shift at x = {x} below (Z^{ztrunc}, q^{qtrunc})"), d))
        })
        .collect()
}

/// `G_{k,(0,1/2)} = 0` for odd `k <= k_max`.
pub fn half_period_parity(k_max: u32, qtrunc: i64) -> Result<Vec<Check>> {
    let x = TorsionPoint::new(int(0), rat(1, 2));
    let mut first = None;
    for k in (1..=k_max).step_by(2) {
        let g = torsional_g::<Rational>(&(), k, &x, qtrunc)?;
        if let Some(e) = g.valuation() {
            first = Some(Discrepancy {
                location: format!("k = {k}, q^{e}"),
                left: g.coeff(e)?.to_string(),
                right: "0".into(),
            });
            break;
        }
    }
    Ok(vec![Check::exact(format!("G_k,(0,1/2) = 0 for odd k <= {k_max}"), first)])
}

/// `(0)`, `2(0) - (0,1/2) - (0,1/2)+lift` and `(x1) + (-x1) - (x2) - (-x2)`.
pub fn standard_divisors() -> Vec<Divisor> {
    ["1@0,0", "2@0,0;-1@0,1/2;-1@0,1/2+0,-1", "1@0,1/2;1@0,-1/2;-1@0,1/3;-1@0,-1/3"]
        .into_iter()
        .map(|s| Divisor::parse(s).expect("well-formed divisor"))
        .collect()
}

pub fn theorem3(d: &Divisor, ztrunc: i64, qtrunc: i64) -> Result<Check> {
    let found = match ring_for_conductor(d.conductor()) {
        RingChoice::Rational => theorem3_reconstruct::<Rational>(&(), d, ztrunc, qtrunc, 0.0)?,
        RingChoice::Cyclotomic(c) => theorem3_reconstruct::<Cyclo>(&c, d, ztrunc, qtrunc, 0.0)?,
        RingChoice::Complex => theorem3_reconstruct::<Complex64>(&(), d, ztrunc, qtrunc, COMPLEX_TOL)?,
    };
    Ok(Check::exact(format!("theta quotient of {d} = trace expansion below (Z^{ztrunc}, q^{qtrunc})"), found))
}

/// The three standard modular transformation spot checks.
pub fn modularity(tau: Complex64) -> Result<Vec<Check>> {
    let cases = [(2, int(0), rat(1, 2)), (1, int(0), rat(1, 2)), (3, int(0), rat(1, 3))];
    cases
        .into_iter()
        .map(|(k, a, b)| {
            let x = TorsionPoint::new(a, b);
            let r = modularity_spot_check(k, &x, tau)?;
            Ok(Check::numeric(
                format!("G_{k},({x}) at -1/tau vs tau^{k} G_{k},({}) at tau = {}", r.image, show_tau(tau)),
                r.abs_error,
                MODULARITY_TOL,
            ))
        })
        .collect()
}

/// `Partition` display helper for dump output: `(parts)` with weight values.
pub fn partition_row(l: &Partition) -> Value {
    json!({
        "partition": l.to_string(),
        "parts": l.parts(),
        "z_lambda": l.z_lambda().to_string(),
        "crank": l.crank().ok(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn failing_checks_carry_a_discrepancy() {
        let c = Check::equal("x", 1, 2);
        assert!(!c.pass);
        assert_eq!(c.discrepancy.unwrap().left, "1");
        let n = Check::numeric("y", f64::NAN, 1.0);
        assert!(!n.pass);
        let report =
            VerifyReport { suite: Suite::Examples, params: Map::new(), checks: vec![Check::equal("z", 3, 3), n] };
        assert!(!report.pass());
        assert_eq!(report.to_json()["first_discrepancy"]["location"], "y");
    }
}
