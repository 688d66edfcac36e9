//! `pet`: command-line front end for the q-series engine.
//!
//! Output goes to stdout as JSON (default) or text; timing goes to stderr so
//! repeated runs produce byte-identical stdout.

use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::{json, Value};

use pet_core::crank::{moment_corollary, moment_definition, moment_lambert};
use pet_core::eisenstein::{eisenstein, EisensteinTable};
use pet_core::jacobi::{divisor_g, ring_for_conductor, trace_series, Divisor, RingChoice};
use pet_core::lattice::{parse_tau, theorem1_numeric, Lattice, DEFAULT_RADIUS, DEFAULT_SCHEDULE};
use pet_core::partitions::enumerate;
use pet_core::verify::{self, Suite, SuiteParams, DEFAULT_TERMS};
use pet_core::{BiSeries, CoefficientRing, Cyclo, Error, PartitionWeight, QSeries, Rational, RootsOfUnity};

#[derive(Parser)]
#[command(name = "pet", version, about = "Partition Eisenstein traces, crank moments and theta expansions")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum Phi {
    Lambda,
    Crank,
    Jacobi,
}

impl Phi {
    fn weight(self) -> PartitionWeight {
        match self {
            Phi::Lambda => PartitionWeight::PhiLambda,
            Phi::Crank => PartitionWeight::PhiCrank,
            Phi::Jacobi => PartitionWeight::PhiJacobi,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Definition,
    Corollary,
    Lambert,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SuiteArg {
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
    All,
}

impl SuiteArg {
    fn suite(self) -> Option<Suite> {
        Some(match self {
            SuiteArg::Theorem1 => Suite::Theorem1,
            SuiteArg::Theorem2 => Suite::Theorem2,
            SuiteArg::Corollary => Suite::Corollary,
            SuiteArg::Lemma41 => Suite::Lemma41,
            SuiteArg::Lemma42 => Suite::Lemma42,
            SuiteArg::Polya => Suite::Polya,
            SuiteArg::Congruences => Suite::Congruences,
            SuiteArg::Theta => Suite::Theta,
            SuiteArg::Torsional => Suite::Torsional,
            SuiteArg::Theorem3 => Suite::Theorem3,
            SuiteArg::Modularity => Suite::Modularity,
            SuiteArg::Examples => Suite::Examples,
            SuiteArg::All => return None,
        })
    }
}

#[derive(Subcommand)]
enum Command {
    /// Eisenstein series G_w for even w >= 2.
    Eis {
        #[arg(long)]
        weight: u64,
        /// Coefficients below q^terms.
        #[arg(long, default_value_t = DEFAULT_TERMS)]
        terms: i64,
    },
    /// Partition Eisenstein trace Tr_k(phi).
    Trace {
        #[arg(long)]
        k: u64,
        #[arg(long, value_enum, default_value_t = Phi::Lambda)]
        phi: Phi,
        #[arg(long, default_value_t = DEFAULT_TERMS)]
        terms: i64,
    },
    /// Crank moment C_2k by one of three routes.
    CrankMoments {
        #[arg(long)]
        k: u32,
        #[arg(long, value_enum, default_value_t = Method::Definition)]
        method: Method,
        #[arg(long, default_value_t = DEFAULT_TERMS)]
        terms: i64,
    },
    /// Extrapolated lattice e_k against its Eisenstein prediction.
    Lattice {
        #[arg(long)]
        k: u32,
        /// re,im with im >= 0.5.
        #[arg(long, default_value = "0,2", value_parser = tau_arg, allow_hyphen_values = true)]
        tau: Complex64,
        #[arg(long, default_value_t = DEFAULT_RADIUS)]
        radius: f64,
        /// Comma-separated extrapolation schedule of s values.
        #[arg(long, value_delimiter = ',')]
        s: Option<Vec<f64>>,
    },
    /// Trace expansion sum_t Tr_t(D) Z^(t+a) of a torsional divisor, or G_k,D with --k.
    Jacobi {
        /// Entries mult@alpha,beta[+lift_a,lift_b] separated by ';'.
        #[arg(long, value_parser = divisor_arg, allow_hyphen_values = true)]
        divisor: Divisor,
        #[arg(long, default_value_t = 9)]
        zorder: i64,
        #[arg(long)]
        k: Option<u32>,
        #[arg(long, default_value_t = DEFAULT_TERMS)]
        terms: i64,
    },
    /// Run verification suites.
    Verify {
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
        #[arg(long)]
        terms: Option<i64>,
        #[arg(long)]
        k: Option<u32>,
        #[arg(long)]
        zorder: Option<i64>,
        #[arg(long, value_parser = tau_arg, allow_hyphen_values = true)]
        tau: Option<Complex64>,
        #[arg(long)]
        radius: Option<f64>,
        #[arg(long, value_parser = divisor_arg, allow_hyphen_values = true)]
        divisor: Option<Divisor>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Partitions of k with their statistics and weights.
    DumpPartitions {
        #[arg(long)]
        k: u64,
    },
}

fn tau_arg(s: &str) -> Result<Complex64, String> {
    parse_tau(s).map_err(|e| e.to_string())
}

fn divisor_arg(s: &str) -> Result<Divisor, String> {
    Divisor::parse(s).map_err(|e| e.to_string())
}

fn complex_json(z: Complex64) -> Value {
    json!([z.re, z.im])
}

fn series_out<R: CoefficientRing>(s: &QSeries<R>, format: Format) -> String {
    match format {
        Format::Json => pretty(&s.to_json()),
        Format::Text => s.to_text(),
    }
}

fn bi_out<R: CoefficientRing>(s: &BiSeries<R>, format: Format) -> String {
    match format {
        Format::Json => pretty(&s.to_json()),
        Format::Text => s.to_text(),
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("json values serialize")
}

fn jacobi_out<R: RootsOfUnity>(
    ctx: &R::Ctx,
    d: &Divisor,
    zorder: i64,
    k: Option<u32>,
    terms: i64,
    format: Format,
) -> pet_core::Result<String> {
    d.check_lifts()?;
    Ok(match k {
        Some(k) => series_out(&divisor_g::<R>(ctx, k, d, terms)?, format),
        None => bi_out(&trace_series::<R>(ctx, d, zorder, terms)?, format),
    })
}

/// Output text and whether every check passed.
fn execute(command: Command, format: Format) -> pet_core::Result<(String, bool)> {
    let out = match command {
        Command::Eis { weight, terms } => series_out(&eisenstein(weight, terms)?, format),
        Command::Trace { k, phi, terms } => {
            let table = EisensteinTable::new(k.max(1), terms)?;
            series_out(&table.trace(k, &phi.weight())?, format)
        }
        Command::CrankMoments { k, method, terms } => {
            let s = match method {
                Method::Definition => moment_definition(k, terms)?,
                Method::Corollary => moment_corollary(k, &EisensteinTable::new(k.max(1) as u64, terms)?)?,
                Method::Lambert => moment_lambert(k, &EisensteinTable::new(k.max(1) as u64, terms)?)?,
            };
            series_out(&s, format)
        }
        Command::Lattice { k, tau, radius, s } => {
            if k == 0 {
                return Err(Error::InvalidArgument("k must be at least 1".into()));
            }
            let schedule = s.unwrap_or_else(|| DEFAULT_SCHEDULE.to_vec());
            let r = theorem1_numeric(k, &Lattice::new(tau, radius)?, &schedule)?;
            match format {
                Format::Json => pretty(&json!({
                    "k": r.k,
                    "tau": complex_json(r.tau),
                    "radius": r.radius,
                    "schedule": r.schedule,
                    "samples": r.samples.iter().copied().map(complex_json).collect::<Vec<_>>(),
                    "lattice_value": complex_json(r.lattice_value),
                    "prediction": complex_json(r.prediction),
                    "abs_error": r.abs_error,
                })),
                Format::Text => format!(
                    "e_{} at tau = {}: lattice {}, prediction {}, error {:.3e}\n",
                    r.k, r.tau, r.lattice_value, r.prediction, r.abs_error
                ),
            }
        }
        Command::Jacobi { divisor, zorder, k, terms } => match ring_for_conductor(divisor.conductor()) {
            RingChoice::Rational => jacobi_out::<Rational>(&(), &divisor, zorder, k, terms, format)?,
            RingChoice::Cyclotomic(c) => jacobi_out::<Cyclo>(&c, &divisor, zorder, k, terms, format)?,
            RingChoice::Complex => jacobi_out::<Complex64>(&(), &divisor, zorder, k, terms, format)?,
        },
        Command::Verify { suite, terms, k, zorder, tau, radius, divisor, seed } => {
            let params = SuiteParams { terms, k, zorder, tau, radius, divisor, seed };
            let reports = match suite.suite() {
                Some(s) => vec![verify::run(s, &params)?],
                None => verify::run_all(&params)?,
            };
            let pass = reports.iter().all(|r| r.pass());
            let out = match (format, suite.suite()) {
                (Format::Json, Some(_)) => pretty(&reports[0].to_json()),
                (Format::Json, None) => pretty(&json!({
                    "pass": pass,
                    "reports": reports.iter().map(|r| r.to_json()).collect::<Vec<_>>(),
                })),
                (Format::Text, _) => reports.iter().map(|r| r.to_text()).collect(),
            };
            return Ok((out, pass));
        }
        Command::DumpPartitions { k } => {
            let weights = [PartitionWeight::PhiLambda, PartitionWeight::PhiCrank, PartitionWeight::PhiJacobi];
            let rows: Vec<Value> = enumerate(k)
                .iter()
                .map(|l| {
                    let mut row = verify::partition_row(l);
                    for w in &weights {
                        row[format!("phi_{}", w.name())] = json!(w.eval(l).to_string());
                    }
                    row
                })
                .collect();
            match format {
                Format::Json => pretty(&Value::Array(rows)),
                Format::Text => rows
                    .iter()
                    .map(|r| {
                        format!(
                            "{:<24} z = {:<8} crank = {:<4} phi_lambda = {:<12} phi_crank = {:<12} phi_jacobi = {}\n",
                            r["partition"].as_str().unwrap_or(""),
                            r["z_lambda"].as_str().unwrap_or(""),
                            r["crank"].to_string(),
                            r["phi_lambda"].as_str().unwrap_or(""),
                            r["phi_crank"].as_str().unwrap_or(""),
                            r["phi_jacobi"].as_str().unwrap_or(""),
                        )
                    })
                    .collect(),
            }
        }
    };
    Ok((out, true))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let result = execute(cli.command, cli.format);
    eprintln!("elapsed: {:.3}s", start.elapsed().as_secs_f64());
    match result {
        Ok((out, pass)) => {
            print!("{out}");
            if !out.ends_with('\n') {
                println!();
            }
            if pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
