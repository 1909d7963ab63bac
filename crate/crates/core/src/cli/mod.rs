//! Command-line front end. [`run`] parses arguments, executes one
//! subcommand and writes JSON (or flat text) to the given writer.
//!
//! Exit codes: 0 success, 1 a verification suite failed, 2 invalid input,
//! 3 a resource cap was hit. The environment variables `DYNDEG_MAX_TERMS`
//! and `DYNDEG_MAX_WORK` override the default iterate caps.

mod verify;

use std::ffi::OsString;
use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::exactalg::{parse_rational, Rational};
use crate::fabc::{
    classify, classify_mod_p, family_exceptional_locus, unlikely_intersection_explorer, FabcParams, FamilyParams,
};
use crate::gfam::{negative_answer_report, rational_json, GFamilyParams};
use crate::monomial::{find_m_epsilon, FindM, MonomialAnalysis, MonomialMap};
use crate::ratmap::{degree_sequence, is_algebraically_stable_up_to, MapError, ProjectiveMap, ResourceCaps, Stability};

pub use verify::{run_suite, Suite, SuiteReport};

pub const SCHEMA_VERSION: u64 = 1;
pub const DEFAULT_SEED: u64 = 42;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_CAP: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "dyndeg", version, about = "Degree sequences and dynamical degrees of rational maps")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Human,
}

#[derive(clap::Args, Debug, Clone)]
struct CapArgs {
    /// Maximum number of terms in one coordinate of an iterate.
    #[arg(long)]
    max_terms: Option<usize>,
    /// Maximum estimated term products for one composition.
    #[arg(long)]
    max_work: Option<u64>,
}

impl CapArgs {
    fn caps(&self) -> ResourceCaps {
        let mut caps = ResourceCaps::default();
        if let Some(v) = std::env::var("DYNDEG_MAX_TERMS").ok().and_then(|s| s.parse().ok()) {
            caps.max_terms = v;
        }
        if let Some(v) = std::env::var("DYNDEG_MAX_WORK").ok().and_then(|s| s.parse().ok()) {
            caps.max_work = v;
        }
        if let Some(v) = self.max_terms {
            caps.max_terms = v;
        }
        if let Some(v) = self.max_work {
            caps.max_work = v;
        }
        caps
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Exact degrees of the iterates of a map.
    Degseq {
        /// Map document, e.g. {"N":2,"coords":["X*Y","X*Y+Z^2","Y*Z+Z^2"]}.
        #[arg(long)]
        map: String,
        #[arg(long, default_value_t = 5)]
        nmax: usize,
        #[command(flatten)]
        caps: CapArgs,
    },
    /// First degree drop of a map, if any, up to nmax.
    Stability {
        #[arg(long)]
        map: String,
        #[arg(long, default_value_t = 5)]
        nmax: usize,
        #[command(flatten)]
        caps: CapArgs,
    },
    /// Stability of f_{a,b,c} for rational parameters.
    FabcClassify {
        #[arg(short, long, allow_hyphen_values = true)]
        a: String,
        #[arg(short, long, allow_hyphen_values = true)]
        b: String,
        #[arg(short, long, allow_hyphen_values = true)]
        c: String,
        /// Also print V_0..V_n.
        #[arg(long)]
        vn: Option<usize>,
    },
    /// Least m with V_m ≡ 0 mod p, for one prime or all primes up to pmax.
    FabcModp {
        #[arg(short, long, allow_hyphen_values = true)]
        a: BigInt,
        #[arg(short, long, allow_hyphen_values = true)]
        b: BigInt,
        #[arg(short, long, allow_hyphen_values = true)]
        c: BigInt,
        #[arg(short, long, conflicts_with = "pmax")]
        p: Option<u64>,
        #[arg(long)]
        pmax: Option<u64>,
        /// Search cap (default p²).
        #[arg(long)]
        cap: Option<u64>,
    },
    /// Exceptional parameters of a family (polynomials in T).
    FabcLocus {
        #[arg(short, long, allow_hyphen_values = true)]
        a: String,
        #[arg(short, long, allow_hyphen_values = true)]
        b: String,
        #[arg(short, long, allow_hyphen_values = true)]
        c: String,
        #[arg(long, default_value_t = 30)]
        nmax: u64,
    },
    /// Compares the exceptional sets of two families.
    FabcIntersect {
        #[arg(long, allow_hyphen_values = true)]
        a1: String,
        #[arg(long, allow_hyphen_values = true)]
        b1: String,
        #[arg(long, allow_hyphen_values = true)]
        c1: String,
        #[arg(long, allow_hyphen_values = true)]
        a2: String,
        #[arg(long, allow_hyphen_values = true)]
        b2: String,
        #[arg(long, allow_hyphen_values = true)]
        c2: String,
        #[arg(long, default_value_t = 30)]
        nmax: u64,
    },
    /// Exceptional set of g_{a,b,T}; with --t, the orbit and degree data at t.
    Gfam {
        #[arg(short, long, allow_hyphen_values = true, default_value = "1")]
        a: String,
        #[arg(short, long, allow_hyphen_values = true, default_value = "1")]
        b: String,
        #[arg(short, long, allow_hyphen_values = true)]
        t: Option<String>,
        #[arg(long, default_value_t = 50)]
        nmax: usize,
        /// Print the E(g_{1,1,T}) versus E(g_{1,2,T}) comparison instead.
        #[arg(long)]
        compare: bool,
        #[command(flatten)]
        caps: CapArgs,
    },
    /// Degree, spectral radius and inequality checks for a monomial map.
    Monomial {
        /// Integer matrix as JSON rows, e.g. [[2,1],[1,1]].
        #[arg(long)]
        matrix: String,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        /// Also search for the least m at this epsilon.
        #[arg(long)]
        epsilon: Option<f64>,
        #[arg(long, default_value_t = 64)]
        mcap: u64,
    },
    /// Seeded property suites.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long, default_value_t = 1000)]
        count: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
}

struct Failure {
    code: i32,
    message: String,
}

fn invalid(e: impl std::fmt::Display) -> Failure {
    Failure { code: EXIT_INVALID, message: e.to_string() }
}

fn map_failure(e: MapError) -> Failure {
    match e {
        MapError::ResourceLimit(_) => Failure { code: EXIT_CAP, message: e.to_string() },
        other => invalid(other),
    }
}

fn rational_arg(s: &str) -> Result<Rational, Failure> {
    parse_rational(s).map_err(invalid)
}

/// Runs the command line `args` (including the program name) and returns
/// the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(out, "{}", e.render());
            return if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
        }
    };
    let (code, mut value) = match execute(&cli.command) {
        Ok((code, v)) => (code, v),
        Err(f) => (f.code, json!({ "error": f.message })),
    };
    if let Value::Object(map) = &mut value {
        map.insert("schema".into(), SCHEMA_VERSION.into());
    }
    let text = match cli.format {
        Format::Json => serde_json::to_string(&value).unwrap(),
        Format::Human => human(&value),
    };
    let _ = writeln!(out, "{text}");
    code
}

fn human(v: &Value) -> String {
    match v {
        Value::Object(m) => m
            .iter()
            .map(|(k, v)| match v {
                Value::String(s) => format!("{k}: {s}"),
                other => format!("{k}: {other}"),
            })
            .collect::<Vec<_>>()
            .join("\n"),
        other => other.to_string(),
    }
}

fn execute(cmd: &Command) -> Result<(i32, Value), Failure> {
    match cmd {
        Command::Degseq { map, nmax, caps } => {
            let f = ProjectiveMap::from_json(map).map_err(map_failure)?;
            let seq = degree_sequence(&f, *nmax, &caps.caps()).map_err(map_failure)?;
            let code = if seq.is_truncated() { EXIT_CAP } else { EXIT_OK };
            Ok((code, seq.to_json()))
        }
        Command::Stability { map, nmax, caps } => {
            let f = ProjectiveMap::from_json(map).map_err(map_failure)?;
            let v = match is_algebraically_stable_up_to(&f, *nmax, &caps.caps()).map_err(map_failure)? {
                Stability::StableSoFar(n) => json!({"status": "stable_so_far", "n": n}),
                Stability::DropAt(n) => json!({"status": "drop_at", "n": n}),
            };
            Ok((EXIT_OK, v))
        }
        Command::FabcClassify { a, b, c, vn } => {
            let p = FabcParams::new(rational_arg(a)?, rational_arg(b)?, rational_arg(c)?);
            let mut v = classify(&p).to_json();
            if let Some(n) = vn {
                let seq = p.vn_sequence(*n).map_err(invalid)?;
                v["vn"] = seq.iter().map(rational_json).collect();
            }
            Ok((EXIT_OK, v))
        }
        Command::FabcModp { a, b, c, p, pmax, cap } => {
            let primes: Vec<u64> = match (p, pmax) {
                (Some(p), _) => vec![*p],
                (None, Some(m)) => (2..=*m).filter(|&q| crate::exactalg::is_prime_u64(q)).collect(),
                (None, None) => return Err(invalid("one of --p or --pmax is required")),
            };
            let mut rows = Vec::new();
            for q in primes {
                rows.push(classify_mod_p(a, b, c, q, *cap).map_err(invalid)?.to_json(q));
            }
            let rational = classify(&FabcParams::new(
                Rational::from_integer(a.clone()),
                Rational::from_integer(b.clone()),
                Rational::from_integer(c.clone()),
            ));
            Ok((EXIT_OK, json!({"over_q": rational.to_json(), "results": rows})))
        }
        Command::FabcLocus { a, b, c, nmax } => {
            let f = FamilyParams::parse(a, b, c).map_err(invalid)?;
            let locus = family_exceptional_locus(&f, *nmax).map_err(invalid)?;
            Ok((EXIT_OK, locus.to_json()))
        }
        Command::FabcIntersect { a1, b1, c1, a2, b2, c2, nmax } => {
            let f1 = FamilyParams::parse(a1, b1, c1).map_err(invalid)?;
            let f2 = FamilyParams::parse(a2, b2, c2).map_err(invalid)?;
            let r = unlikely_intersection_explorer(&f1, &f2, *nmax).map_err(invalid)?;
            Ok((EXIT_OK, serde_json::to_value(r).unwrap()))
        }
        Command::Gfam { a, b, t, nmax, compare, caps } => {
            if *compare {
                return Ok((EXIT_OK, serde_json::to_value(negative_answer_report(*nmax as u64)).unwrap()));
            }
            let (ra, rb) = (rational_arg(a)?, rational_arg(b)?);
            let p = GFamilyParams::new(ra.clone(), rb.clone()).map_err(invalid)?;
            let mut v = json!({
                "a": crate::exactalg::format_rational(&ra),
                "b": crate::exactalg::format_rational(&rb),
                "exceptional_prefix": p.exceptional_set(*nmax).iter().map(rational_json).collect::<Vec<_>>(),
                "nmax": nmax,
            });
            if let Some(t) = t {
                let t = rational_arg(t)?;
                let orbit = p.orbit_marked_point(&t, *nmax).map_err(invalid)?;
                let drop = match p.degree_drop(&t, 5, &caps.caps()) {
                    Ok(d) => serde_json::to_value(d).unwrap(),
                    Err(crate::gfam::GfamError::Map(e)) => return Err(map_failure(e)),
                    Err(e) => return Err(invalid(e)),
                };
                v["t"] = rational_json(&t);
                v["marked_orbit"] = serde_json::to_value(orbit).unwrap();
                v["degree_drop_n5"] = drop;
            }
            Ok((EXIT_OK, v))
        }
        Command::Monomial { matrix, tol, epsilon, mcap } => {
            let a = MonomialMap::from_json(matrix).map_err(invalid)?;
            let analysis = MonomialAnalysis::run(&a, *tol).map_err(invalid)?;
            let mut v = analysis.to_json();
            if let Some(eps) = epsilon {
                v["find_m"] = match find_m_epsilon(&a, *eps, *tol, *mcap).map_err(invalid)? {
                    FindM::Found(m) => json!({"epsilon": eps, "m": m}),
                    FindM::NotFoundWithinCap(c) => json!({"epsilon": eps, "m": null, "cap": c}),
                };
            }
            Ok((EXIT_OK, v))
        }
        Command::Verify { suite, count, seed, tol } => {
            let report = run_suite(*suite, *count, *seed, *tol);
            let code = if report.passed() { EXIT_OK } else { EXIT_VERIFY_FAILED };
            Ok((code, report.to_json()))
        }
    }
}
