//! `quiddity`: command-line access to the quiddity-core library.
//!
//! Every command prints one JSON document `{status, payload, provenance}`
//! (or TSV lines for `enumerate --format tsv`). Exit codes:
//!
//! | code | meaning                                          |
//! |------|--------------------------------------------------|
//! | 0    | success / quiddity / irreducible                 |
//! | 1    | not a quiddity (`check`), reducible (`irr`)      |
//! | 2    | refused: infinite ring or candidate budget       |
//! | 3    | excluded size (`irr`)                            |
//! | 64   | parse or usage error                             |
//! | 65   | input is not a quiddity (`irr`)                  |
//! | 70   | internal error                                   |

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value as Json};

use quiddity::enumeration::{
    bounded_search, compute_ell, ell_upper_bound, enumerate_irreducibles, enumerate_quiddities, sl2_order,
    SearchBox, DEFAULT_BUDGET,
};
use quiddity::families::{
    family_irr_poly, family_irr_z, family_q_field, family_zeta8, unboundedness_criteria, Conclusion,
};
use quiddity::irreducibility::{is_irreducible, Verdict};
use quiddity::{parse_ring, Error, QuiddityTuple, Ring};

#[derive(Parser, Debug)]
#[command(name = "quiddity", version, about = "Exact computations with lambda-quiddities over ring towers")]
struct Cli {
    /// Ring expression, e.g. `Z/6`, `Z[X]/(X^2+1)`, `Frac(Z/5[t])`, `Z*Z/2`.
    #[arg(long, global = true)]
    ring: Option<String>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Worker threads for `enumerate` and `ell`; output does not depend on it.
    #[arg(long, global = true)]
    jobs: Option<usize>,

    /// Candidate budget for bounded searches over infinite rings.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: u128,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Tsv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Is the tuple a lambda-quiddity, and with which sign?
    Check {
        #[arg(long)]
        tuple: String,
    },
    /// Irreducibility verdict, with a certificate when reducible.
    Irr {
        #[arg(long)]
        tuple: String,
    },
    /// Quiddities of one size: all classes over a finite ring, or the
    /// irreducible classes inside a box over an infinite one.
    Enumerate {
        #[arg(long)]
        size: usize,
        /// Every tuple instead of one representative per dihedral class.
        #[arg(long)]
        raw: bool,
        /// Only irreducible classes.
        #[arg(long)]
        irreducible: bool,
        /// Coefficient height of the search box (infinite rings).
        #[arg(long)]
        height: Option<u64>,
        /// Polynomial degree of the search box (infinite rings).
        #[arg(long, default_value_t = 0)]
        degree: usize,
    },
    /// Exact maximal size of an irreducible quiddity over a finite ring.
    Ell,
    /// Generate and verify an explicit family.
    Family {
        /// One of irr_Z, irr_ZX, irr_ZkX, q_field, zeta8.
        #[arg(long)]
        name: String,
        /// Parameters as key=value: a (irr_Z), P (irr_ZX, irr_ZkX), k (irr_ZkX), n (q_field), l (zeta8).
        #[arg(long = "param")]
        params: Vec<String>,
        /// Accepted for scripts; members are always verified.
        #[arg(long)]
        verify: bool,
    },
    /// Unboundedness criteria for the polynomial ring over the given ring.
    Criteria,
    /// Order of SL(2, A) and the derived bound on irreducible sizes.
    #[command(name = "sl2-order")]
    Sl2Order,
}

const EXIT_REFUSED: u8 = 2;
const EXIT_EXCLUDED: u8 = 3;
const EXIT_USAGE: u8 = 64;
const EXIT_NOT_QUIDDITY: u8 = 65;
const EXIT_INTERNAL: u8 = 70;

struct Outcome {
    status: &'static str,
    payload: Json,
    provenance: Vec<&'static str>,
    code: u8,
}

impl Outcome {
    fn ok(payload: Json) -> Outcome {
        Outcome {
            status: "ok",
            payload,
            provenance: Vec::new(),
            code: 0,
        }
    }

    fn with(mut self, status: &'static str, code: u8) -> Outcome {
        self.status = status;
        self.code = code;
        self
    }

    fn cite(mut self, claims: &[&'static str]) -> Outcome {
        self.provenance.extend_from_slice(claims);
        self
    }
}

const BOUND_CLAIM: &str =
    "upper bound |SL2(A)|/(2|A|)+2 (|SL2(A)|/|A|+2 in characteristic 2) is a published theorem used as the stopping rule, not re-proved";
const LOWER_CLAIM: &str = "lower bound max(4, char A) (4 in characteristic 2) is a published theorem";
const CRITERIA_CLAIM: &str =
    "conclusions about A[T] follow published criteria; no unbounded family is constructed";
const BOX_CLAIM: &str = "complete within the search box only";

fn error_outcome(err: &Error) -> Outcome {
    let code = match err {
        Error::Parse(_) | Error::InvalidRing(_) | Error::InvalidParameter(_) | Error::UnknownVariable { .. } => {
            EXIT_USAGE
        }
        Error::InfiniteRing { .. } | Error::TooLarge { .. } | Error::BudgetExceeded { .. } => EXIT_REFUSED,
        Error::NotQuiddity => EXIT_NOT_QUIDDITY,
        _ => EXIT_INTERNAL,
    };
    let mut payload = json!({"error": err.to_string()});
    if let Error::Parse(p) = err {
        payload["position"] = json!(p.position);
    }
    if let Error::BudgetExceeded { candidates, budget } = err {
        payload["candidates"] = json!(candidates.to_string());
        payload["budget"] = json!(budget.to_string());
    }
    let status = if code == EXIT_REFUSED { "refused" } else { "error" };
    Outcome::ok(payload).with(status, code)
}

fn ring_arg(cli: &Cli) -> Result<Ring, Error> {
    let expr = cli
        .ring
        .as_deref()
        .ok_or_else(|| Error::InvalidParameter("--ring is required".into()))?;
    parse_ring(expr)
}

fn tuple_json(t: &QuiddityTuple) -> Json {
    t.to_json()
}

fn run(cli: &Cli) -> Result<Outcome, Error> {
    match &cli.command {
        Command::Check { tuple } => {
            let ring = ring_arg(cli)?;
            let t = QuiddityTuple::parse(&ring, tuple)?;
            let payload = |sign: Json| {
                let mut p = json!({"ring": ring.to_string(), "tuple": t.to_json(), "quiddity": !sign.is_null(), "sign": sign});
                if sign.is_null() {
                    p["message"] = json!("not a λ-quiddity");
                }
                p
            };
            match QuiddityTuple::verify(&ring, t.entries().to_vec()) {
                Ok(q) => Ok(Outcome::ok(payload(json!(q.sign().map(|s| s.as_i32()))))),
                Err(Error::NotQuiddity) => Ok(Outcome::ok(payload(Json::Null)).with("no", 1)),
                Err(e) => Err(e),
            }
        }
        Command::Irr { tuple } => {
            let ring = ring_arg(cli)?;
            let t = QuiddityTuple::parse(&ring, tuple)?;
            let q = QuiddityTuple::verify(&ring, t.entries().to_vec())?;
            let verdict = is_irreducible(&q)?;
            let mut payload = json!({
                "ring": ring.to_string(),
                "tuple": q.to_json(),
                "sign": q.sign().map(|s| s.as_i32()),
                "verdict": verdict.name(),
            });
            Ok(match verdict {
                Verdict::Irreducible => Outcome::ok(payload),
                Verdict::Reducible(cert) => {
                    payload["certificate"] = cert.to_json(&ring);
                    Outcome::ok(payload).with("no", 1)
                }
                Verdict::Excluded => Outcome::ok(payload).with("no", EXIT_EXCLUDED),
            })
        }
        Command::Enumerate {
            size,
            raw,
            irreducible,
            height,
            degree,
        } => {
            let ring = ring_arg(cli)?;
            if !ring.is_finite() {
                let Some(height) = height else {
                    return Err(Error::InfiniteRing {
                        ring: ring.to_string(),
                        operation: "enumeration without --height",
                    });
                };
                let found = bounded_search(&ring, *size, SearchBox::new(*height, *degree), cli.budget)?;
                let tuples: Vec<Json> = found.irreducibles.iter().map(tuple_json).collect();
                let mut payload = found.to_json();
                payload["tuples"] = json!(tuples);
                return Ok(Outcome::ok(payload).cite(&[BOX_CLAIM]));
            }
            let tuples = if *irreducible {
                enumerate_irreducibles(&ring, *size)?
            } else {
                enumerate_quiddities(&ring, *size, !raw)?
            };
            Ok(Outcome::ok(json!({
                "ring": ring.to_string(),
                "size": size,
                "canonical_only": *irreducible || !raw,
                "irreducible_only": irreducible,
                "count": tuples.len(),
                "tuples": tuples.iter().map(tuple_json).collect::<Vec<_>>(),
            })))
        }
        Command::Ell => {
            let ring = ring_arg(cli)?;
            let report = compute_ell(&ring)?;
            eprintln!("ell: searched sizes 3..={} in {:?}", report.upper_bound, report.timing);
            Ok(Outcome::ok(report.to_json()).cite(&[BOUND_CLAIM, LOWER_CLAIM]))
        }
        Command::Family { name, params, .. } => family(name, params),
        Command::Criteria => {
            let ring = ring_arg(cli)?;
            let report = unboundedness_criteria(&ring);
            let outcome = Outcome::ok(report.to_json());
            Ok(match report.conclusion {
                Conclusion::Undecided(_) => outcome,
                _ => outcome.cite(&[CRITERIA_CLAIM]),
            })
        }
        Command::Sl2Order => {
            let ring = ring_arg(cli)?;
            Ok(Outcome::ok(json!({
                "ring": ring.to_string(),
                "sl2_order": sl2_order(&ring)?,
                "upper_bound": ell_upper_bound(&ring)?,
                "lower_bound": quiddity::enumeration::ell_lower_bound(&ring),
            }))
            .cite(&[BOUND_CLAIM]))
        }
    }
}

fn param<'a>(params: &'a [(String, String)], key: &str) -> Result<&'a str, Error> {
    params
        .iter()
        .find(|(k, _)| k == key)
        .map(|(_, v)| v.as_str())
        .ok_or_else(|| Error::InvalidParameter(format!("missing --param {key}=...")))
}

fn number(params: &[(String, String)], key: &str) -> Result<u64, Error> {
    param(params, key)?
        .parse()
        .map_err(|_| Error::InvalidParameter(format!("{key} must be a non-negative integer")))
}

fn family(name: &str, raw: &[String]) -> Result<Outcome, Error> {
    let params: Vec<(String, String)> = raw
        .iter()
        .map(|p| {
            p.split_once('=')
                .map(|(k, v)| (k.trim().to_string(), v.trim().to_string()))
                .ok_or_else(|| Error::InvalidParameter(format!("parameter {p:?} is not key=value")))
        })
        .collect::<Result<_, _>>()?;
    let fam = match name {
        "irr_Z" => {
            let z = Ring::integers();
            let a = z.parse_element(param(&params, "a")?)?;
            family_irr_z(z.as_integer(&a).expect("integer payload"))?
        }
        "irr_ZX" | "irr_ZkX" => {
            let expr = if name == "irr_ZX" {
                "Z[X]".to_string()
            } else {
                match number(&params, "k")? {
                    k @ (2 | 3) => format!("Z/{k}[X]"),
                    k => return Err(Error::InvalidParameter(format!("k must be 2 or 3, got {k}"))),
                }
            };
            let ring = parse_ring(&expr)?;
            let p = ring.parse_element(param(&params, "P")?)?;
            family_irr_poly(&ring, &p)?
        }
        "q_field" => family_q_field(number(&params, "n")?)?,
        "zeta8" => family_zeta8(number(&params, "l")?)?,
        other => return Err(Error::InvalidParameter(format!("unknown family {other}"))),
    };
    Ok(Outcome::ok(fam.to_json()))
}

/// Writes to stdout, ignoring a closed pipe.
fn emit(outcome: &Outcome, format: Format) {
    let mut out = std::io::stdout().lock();
    let tsv_rows = outcome.payload.get("tuples").and_then(Json::as_array);
    match (format, tsv_rows) {
        (Format::Tsv, Some(rows)) if outcome.status == "ok" => {
            for row in rows {
                let cells: Vec<&str> = row
                    .as_array()
                    .map(|r| r.iter().filter_map(Json::as_str).collect())
                    .unwrap_or_default();
                if writeln!(out, "{}", cells.join("\t")).is_err() {
                    return;
                }
            }
        }
        _ => {
            let doc = json!({
                "status": outcome.status,
                "payload": outcome.payload,
                "provenance": outcome.provenance,
            });
            let _ = writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("JSON values serialize"));
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build_global() {
            eprintln!("warning: --jobs ignored: {e}");
        }
    }
    let outcome = run(&cli).unwrap_or_else(|e| {
        eprintln!("error: {e}");
        error_outcome(&e)
    });
    emit(&outcome, cli.format);
    ExitCode::from(outcome.code)
}
