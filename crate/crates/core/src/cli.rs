//! Batch front end. Every subcommand writes one JSON document to `out`.
//!
//! Exit codes: 0 success, 1 predicted/verified (or closed form/brute force)
//! mismatch, 2 usage or precondition error.

use std::io::Write;
use std::time::Instant;

use clap::{Arg, ArgAction, ArgMatches, Command};
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::families::{build, degree_two_family, enumerate_good_pairs, Family, FamilySpec, Params};
use crate::field::Field;
use crate::mu_maps::{
    brute_force_degree_one, enumerate_degree_one_line_bijections,
    enumerate_degree_one_mu_bijections, function_set, value_table, DegreeOneTarget,
};
use crate::poly::{Polynomial, ProjValue, RationalMap};
use crate::verify::{check_agw_criterion, is_permutation_of_field_with_jobs};

pub const SCHEMA_VERSION: u32 = 1;

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

fn field_arg() -> Arg {
    Arg::new("field")
        .long("field")
        .required(true)
        .value_name("p^m/e[:c0,..,cm]")
        .help("Field spec, e.g. 3^2/1")
}

fn command() -> Command {
    let mut construct = Command::new("construct")
        .about("Build a family member and optionally verify it exhaustively")
        .arg(
            Arg::new("field")
                .long("field")
                .value_name("p^m/e[:c0,..,cm]")
                .required_unless_present("spec-file")
                .help("Field spec, e.g. 3^2/1"),
        )
        .arg(
            Arg::new("family")
                .long("family")
                .required_unless_present("spec-file")
                .value_parser(Family::ALL.map(|f| f.name()))
                .help("Family name"),
        )
        .arg(
            Arg::new("spec-file")
                .long("spec-file")
                .value_name("PATH")
                .conflicts_with_all(["field", "family"])
                .help("Read family, field and parameters from a `key = value` file"),
        )
        .arg(
            Arg::new("verify")
                .long("verify")
                .action(ArgAction::SetTrue)
                .help("Run the exhaustive permutation check"),
        );
    for key in Params::known_keys() {
        construct = construct.arg(
            Arg::new(key)
                .long(key)
                .value_name("VALUE")
                .conflicts_with("spec-file")
                .allow_hyphen_values(true),
        );
    }

    Command::new("permpoly")
        .about(
            "Permutation polynomials of F_{q^2} and F_{q^3}: constructions and exhaustive checks",
        )
        .version(env!("CARGO_PKG_VERSION"))
        .subcommand_required(true)
        .arg(
            Arg::new("jobs")
                .long("jobs")
                .global(true)
                .default_value("1")
                .value_parser(clap::value_parser!(u64).range(1..))
                .help("Worker threads for exhaustive scans"),
        )
        .arg(
            Arg::new("timing")
                .long("timing")
                .global(true)
                .action(ArgAction::SetTrue)
                .help("Add wall-clock time to the report"),
        )
        .subcommand(construct)
        .subcommand(
            Command::new("verify-poly")
                .about("Exhaustively test whether a polynomial permutes the field")
                .arg(field_arg())
                .arg(
                    Arg::new("poly")
                        .long("poly")
                        .required(true)
                        .allow_hyphen_values(true),
                ),
        )
        .subcommand(
            Command::new("classify-degree1")
                .about("Degree-one maps permuting μ_{q+1} or mapping it onto F_q ∪ {∞}")
                .arg(field_arg()),
        )
        .subcommand(
            Command::new("search-good-pairs")
                .about("Enumerate good pairs of a given degree")
                .arg(field_arg())
                .arg(
                    Arg::new("degree")
                        .long("degree")
                        .required(true)
                        .value_parser(clap::value_parser!(u64)),
                )
                .arg(
                    Arg::new("k")
                        .long("k")
                        .default_value("0")
                        .value_parser(clap::value_parser!(u64)),
                ),
        )
        .subcommand(
            Command::new("check-agw")
                .about("Evaluate both sides of the AGW criterion for x^r h(x^d)")
                .arg(field_arg())
                .arg(
                    Arg::new("r")
                        .long("r")
                        .required(true)
                        .value_parser(clap::value_parser!(u64)),
                )
                .arg(
                    Arg::new("d")
                        .long("d")
                        .required(true)
                        .value_parser(clap::value_parser!(u64)),
                )
                .arg(
                    Arg::new("h")
                        .long("h")
                        .required(true)
                        .allow_hyphen_values(true),
                ),
        )
        .subcommand(
            Command::new("mu-table")
                .about("List μ_D, optionally with the values of num/den on it")
                .arg(field_arg())
                .arg(
                    Arg::new("num")
                        .long("num")
                        .requires("den")
                        .allow_hyphen_values(true),
                )
                .arg(
                    Arg::new("den")
                        .long("den")
                        .requires("num")
                        .allow_hyphen_values(true),
                ),
        )
}

fn str_arg<'a>(m: &'a ArgMatches, id: &str) -> &'a str {
    m.get_one::<String>(id)
        .map(String::as_str)
        .expect("required by clap")
}

fn field_of(m: &ArgMatches) -> Result<Field> {
    str_arg(m, "field").parse()
}

fn proj(f: &Field, v: ProjValue) -> String {
    match v {
        ProjValue::Finite(y) => f.format_element(y),
        ProjValue::Infinity => "inf".to_string(),
    }
}

fn map_json(r: &RationalMap) -> Value {
    json!({ "num": r.num().to_sparse_string(), "den": r.den().to_sparse_string() })
}

/// A command's report and whether it exposed a mismatch.
struct Outcome {
    doc: Map<String, Value>,
    mismatch: bool,
}

impl Outcome {
    fn ok(doc: Value) -> Self {
        Outcome {
            doc: into_map(doc),
            mismatch: false,
        }
    }
}

fn into_map(v: Value) -> Map<String, Value> {
    match v {
        Value::Object(m) => m,
        _ => unreachable!("reports are objects"),
    }
}

fn construct(m: &ArgMatches, jobs: usize) -> Result<Outcome> {
    let spec: FamilySpec = match m.get_one::<String>("spec-file") {
        Some(path) => std::fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("cannot read {path}: {e}")))?
            .parse()?,
        None => {
            let field = field_of(m)?;
            let family: Family = str_arg(m, "family").parse()?;
            let mut params = Params::new();
            for key in Params::known_keys() {
                if let Some(text) = m.get_one::<String>(key) {
                    params.set_text(&field, key, text)?;
                }
            }
            FamilySpec::new(family, field, params)?
        }
    };
    let mut report = build(&spec)?;
    if m.get_flag("verify") {
        report.verify(jobs)?;
    }
    let mismatch = report.mismatch();
    let mut doc = into_map(report.to_json());
    doc.insert("mismatch".into(), Value::Bool(mismatch));
    Ok(Outcome { doc, mismatch })
}

fn verify_poly(m: &ArgMatches, jobs: usize) -> Result<Outcome> {
    let f = field_of(m)?;
    let p = Polynomial::parse(&f, str_arg(m, "poly"))?;
    let rep = is_permutation_of_field_with_jobs(&p, &f, jobs)?;
    let mut doc = into_map(rep.to_json(&f));
    doc.insert("field".into(), json!(f.to_string()));
    doc.insert("polynomial".into(), json!(p.to_sparse_string()));
    Ok(Outcome {
        doc,
        mismatch: false,
    })
}

fn classify_degree1(m: &ArgMatches) -> Result<Outcome> {
    let f = field_of(m)?;
    let mut mismatch = false;
    let mut section = |closed: Vec<RationalMap>, target| -> Result<Value> {
        let brute = brute_force_degree_one(&f, target)?;
        let agree = function_set(&closed)? == function_set(&brute)?;
        mismatch |= !agree;
        Ok(json!({
            "count": closed.len(),
            "maps": closed.iter().map(map_json).collect::<Vec<_>>(),
            "brute_force_count": brute.len(),
            "agree": agree,
        }))
    };
    let mu = section(enumerate_degree_one_mu_bijections(&f)?, DegreeOneTarget::Mu)?;
    let line = section(
        enumerate_degree_one_line_bijections(&f)?,
        DegreeOneTarget::Line,
    )?;
    let doc = json!({
        "field": f.to_string(),
        "mu_permuters": mu,
        "line_bijections": line,
    });
    Ok(Outcome {
        doc: into_map(doc),
        mismatch,
    })
}

fn search_good_pairs(m: &ArgMatches, jobs: usize) -> Result<Outcome> {
    let f = field_of(m)?;
    let degree = *m.get_one::<u64>("degree").expect("required");
    let k = *m.get_one::<u64>("k").expect("defaulted");
    let pairs = enumerate_good_pairs(&f, degree as usize, k, jobs)?;
    let listed: Vec<Value> = pairs
        .iter()
        .map(|p| {
            json!({
                "L": p.l.to_sparse_string(),
                "M": p.m.to_sparse_string(),
                "beta": f.format_element(p.beta),
            })
        })
        .collect();
    let mut distinct_l: Vec<String> = pairs.iter().map(|p| p.l.to_sparse_string()).collect();
    distinct_l.dedup();
    let mut doc = into_map(json!({
        "field": f.to_string(),
        "degree": degree,
        "k": k,
        "count": pairs.len(),
        "distinct_l": distinct_l.len(),
        "pairs": listed,
    }));
    let mut mismatch = false;
    if degree == 2 && f.q() % 2 == 0 && !pairs.is_empty() {
        let mut found: Vec<String> = distinct_l;
        let mut closed: Vec<String> = degree_two_family(&f)?
            .iter()
            .map(|p| p.l.to_sparse_string())
            .collect();
        found.sort();
        closed.sort();
        let agree = found == closed;
        mismatch = !agree;
        doc.insert("closed_form_count".into(), json!(closed.len()));
        doc.insert("matches_closed_form".into(), json!(agree));
    }
    Ok(Outcome { doc, mismatch })
}

fn check_agw(m: &ArgMatches) -> Result<Outcome> {
    let f = field_of(m)?;
    let r = *m.get_one::<u64>("r").expect("required");
    let d = *m.get_one::<u64>("d").expect("required");
    let h = Polynomial::parse(&f, str_arg(m, "h"))?;
    let out = check_agw_criterion(r, d, &h, &f)?;
    let doc = json!({
        "field": f.to_string(),
        "r": r,
        "d": d,
        "h": h.to_sparse_string(),
        "lhs": out.lhs,
        "rhs": out.rhs,
        "agree": out.lhs == out.rhs,
    });
    Ok(Outcome {
        doc: into_map(doc),
        mismatch: out.lhs != out.rhs,
    })
}

fn mu_table(m: &ArgMatches) -> Result<Outcome> {
    let f = field_of(m)?;
    let mu = f.norm_subgroup();
    let mut doc = into_map(json!({
        "field": f.to_string(),
        "order": f.norm_order(),
        "elements": mu.iter().map(|&x| f.format_element(x)).collect::<Vec<_>>(),
    }));
    if let (Some(num), Some(den)) = (m.get_one::<String>("num"), m.get_one::<String>("den")) {
        let r = RationalMap::new(Polynomial::parse(&f, num)?, Polynomial::parse(&f, den)?)?;
        let values = value_table(&r, mu)?;
        doc.insert(
            "values".into(),
            json!(values.iter().map(|&v| proj(&f, v)).collect::<Vec<_>>()),
        );
    }
    Ok(Outcome::ok(Value::Object(doc)))
}

/// Parses `args` (program name first), runs the subcommand and writes the
/// report to `out`, diagnostics to `err`. Returns the exit code.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let matches = match command().try_get_matches_from(args) {
        Ok(m) => m,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{}", e.render());
                    EXIT_USAGE
                }
            };
        }
    };
    let jobs = *matches.get_one::<u64>("jobs").expect("defaulted") as usize;
    let timing = matches.get_flag("timing");
    let (name, sub) = matches.subcommand().expect("subcommand required");
    let start = Instant::now();
    let result = match name {
        "construct" => construct(sub, jobs),
        "verify-poly" => verify_poly(sub, jobs),
        "classify-degree1" => classify_degree1(sub),
        "search-good-pairs" => search_good_pairs(sub, jobs),
        "check-agw" => check_agw(sub),
        "mu-table" => mu_table(sub),
        _ => unreachable!("clap rejects unknown subcommands"),
    };
    match result {
        Ok(Outcome { doc, mismatch }) => {
            let mut full = Map::new();
            full.insert("schema_version".into(), json!(SCHEMA_VERSION));
            full.insert("command".into(), json!(name));
            full.extend(doc);
            if timing {
                full.insert(
                    "elapsed_ms".into(),
                    json!(start.elapsed().as_secs_f64() * 1e3),
                );
            }
            let text = serde_json::to_string_pretty(&Value::Object(full)).expect("plain data");
            let _ = writeln!(out, "{text}");
            if mismatch {
                let _ = writeln!(
                    err,
                    "error: mismatch between predicted and verified results"
                );
                EXIT_MISMATCH
            } else {
                EXIT_OK
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}
