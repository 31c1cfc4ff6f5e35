//! Command-line front end. Every subcommand prints one JSON document on
//! standard output (or CSV for tabular sections with `--csv`); failures
//! print `{"error": kind, "message": ...}` and exit with 1 (structural),
//! 2 (axiom) or 3 (precondition).

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use pmq::bar::{self, HomologyTable};
use pmq::completion::Completion;
use pmq::homology::Coefficients;
use pmq::perm::Perm;
use pmq::{catalog, envelope, io, properties, racks, ring, symgeo, validate, Error, FinitePmq};

#[derive(Parser)]
#[command(name = "pmq", version, about = "Exact computations with finite partially multiplicative quandles")]
struct Cli {
    /// Print tabular sections as CSV instead of JSON.
    #[arg(long, global = true)]
    csv: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check every axiom (and the norm axioms, if a norm is given).
    Validate { file: PathBuf },
    /// Augmentation, local finiteness, intrinsic norm, decomposability,
    /// coconnectedness, pairwise determinedness.
    Props {
        file: PathBuf,
        #[arg(long)]
        rmax: Option<u32>,
    },
    /// Canonical classes of the completion up to a norm.
    Complete {
        file: PathBuf,
        #[arg(long)]
        max_norm: u32,
    },
    /// Presentation of the enveloping group.
    Envelope { file: PathBuf },
    /// The PMQ-ring: quadratic presentation, dual, or Hilbert check.
    Ring {
        file: PathBuf,
        #[arg(long, conflicts_with_all = ["dual", "hilbert"])]
        present: bool,
        #[arg(long, conflicts_with = "hilbert")]
        dual: bool,
        /// Compare quotient dimensions with |Q_ν| for ν up to this degree.
        #[arg(long)]
        hilbert: Option<u32>,
        /// Use the whole degree-2 kernel instead of the strict presentation.
        #[arg(long)]
        degree_two: bool,
    },
    /// The symmetric group with geodesic products.
    Symgeo {
        #[arg(long)]
        d: usize,
        /// Triples of the completion up to this norm, cross-checked against
        /// move classes.
        #[arg(long, conflicts_with = "connect")]
        triples: Option<u32>,
        /// Two transposition sequences, each like "(1,2) (2,3)".
        #[arg(long, num_args = 2, value_names = ["S1", "S2"])]
        connect: Option<Vec<String>>,
    },
    /// Homology of the relative array complex in one grading.
    Homology {
        file: PathBuf,
        /// Factor sequence, space separated, e.g. "(1,2) (1,3)".
        #[arg(long)]
        grading: String,
        /// Prime field coefficients instead of ℤ.
        #[arg(long = "mod")]
        modulus: Option<u64>,
    },
    /// Necessary conditions for the Poincare property.
    Poincare {
        file: PathBuf,
        #[arg(long, default_value_t = 3)]
        budget: u32,
    },
    /// The quandle-like core of a partially multiplicative rack.
    RackCore { file: PathBuf },
    /// Print a built-in structure in the interchange format.
    Example { name: String },
}

/// Output of a successful run.
enum Output {
    Json(Value),
    Csv(String),
}

fn load(path: &PathBuf) -> Result<io::Loaded, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Structural(format!("cannot read {}: {e}", path.display())))?;
    io::from_json_str(&text)
}

fn load_pmq(path: &PathBuf) -> Result<FinitePmq, Error> {
    let loaded = load(path)?;
    let report = validate::validate(&loaded.pmq);
    if !report.is_valid() {
        return Err(Error::Axiom(report.describe(&loaded.pmq)));
    }
    Ok(loaded.pmq)
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report types serialize")
}

fn split_seq(s: &str) -> Vec<String> {
    s.split(|c: char| c.is_whitespace() || c == ';').filter(|t| !t.is_empty()).map(str::to_string).collect()
}

fn example(name: &str) -> Result<(FinitePmq, bool), Error> {
    let parse_n = |prefix: &str| name.strip_prefix(prefix).and_then(|n| n.parse::<u32>().ok());
    Ok(match name {
        "unit" => (catalog::unit_pmq(), false),
        "segre" => (catalog::segre(), false),
        "swap-rack" => (catalog::swap_rack(), true),
        _ if parse_n("sd-geo-").is_some() => (catalog::sd_geo(parse_n("sd-geo-").unwrap() as usize), false),
        _ if parse_n("transpositions-").is_some() => {
            (catalog::transposition_quandle(parse_n("transpositions-").unwrap() as usize), false)
        }
        _ if parse_n("naturals-").is_some() => (catalog::truncated_naturals(parse_n("naturals-").unwrap()), false),
        _ if parse_n("extra-one-").is_some() => (catalog::naturals_with_extra_one(parse_n("extra-one-").unwrap()), false),
        _ => {
            return Err(Error::Structural(format!(
                "unknown example {name:?}; try unit, segre, swap-rack, sd-geo-D, transpositions-D, naturals-N, extra-one-N"
            )))
        }
    })
}

fn run(cli: &Cli) -> Result<(Output, u8), Error> {
    let csv = cli.csv;
    match &cli.command {
        Command::Validate { file } => {
            let loaded = load(file)?;
            let q = &loaded.pmq;
            let report = validate::validate(q);
            let mut out = report.to_json(q);
            let mut valid = report.is_valid();
            if loaded.rack {
                let r = validate::validate_rack(q);
                out["rack"] = r.to_json(q);
                valid = r.is_valid();
            }
            Ok((Output::Json(out), if valid { 0 } else { 2 }))
        }
        Command::Props { file, rmax } => {
            let q = load_pmq(file)?;
            Ok((Output::Json(to_value(&properties::property_report(&q, *rmax)?)), 0))
        }
        Command::Complete { file, max_norm } => {
            let q = load_pmq(file)?;
            let c = Completion::new(&q)?;
            let mut classes = BTreeMap::new();
            let mut table = String::from("norm,class\n");
            for n in 0..=*max_norm {
                let labels: Vec<Vec<String>> = c.classes_at_norm(n).iter().map(|x| c.labels(x)).collect();
                for l in &labels {
                    let _ = writeln!(table, "{n},{}", l.join(" "));
                }
                classes.insert(n, labels);
            }
            if csv {
                return Ok((Output::Csv(table), 0));
            }
            let counts: BTreeMap<u32, usize> = classes.iter().map(|(&n, v)| (n, v.len())).collect();
            let embedding = c.verify_embedding(*max_norm, None)?;
            Ok((Output::Json(json!({"counts": counts, "classes": classes, "embedding": embedding})), 0))
        }
        Command::Envelope { file } => {
            let q = load_pmq(file)?;
            let p = envelope::presentation(&q);
            let text = p.to_text();
            Ok((
                Output::Json(json!({
                    "generators": p.generators,
                    "conjugation_relators": p.count(envelope::RelatorKind::Conjugation),
                    "product_relators": p.count(envelope::RelatorKind::Product),
                    "relators": text.lines().skip(1).collect::<Vec<_>>(),
                })),
                0,
            ))
        }
        Command::Ring { file, dual, hilbert, degree_two, .. } => {
            let q = load_pmq(file)?;
            if *dual {
                return Ok((Output::Json(to_value(&ring::quadratic_dual(&q)?)), 0));
            }
            let p = if *degree_two { ring::degree_two_presentation(&q)? } else { ring::quadratic_presentation(&q)? };
            let mut out = json!({
                "generators": p.generators,
                "relators": p.to_text().lines().collect::<Vec<_>>(),
            });
            if let Some(deg) = hilbert {
                let h = ring::hilbert_check(&q, &p, *deg)?;
                if csv {
                    let mut t = String::from("degree,quotient_dim,elements\n");
                    for r in &h.rows {
                        let _ = writeln!(t, "{},{},{}", r.degree, r.quotient_dim, r.elements);
                    }
                    return Ok((Output::Csv(t), 0));
                }
                out["hilbert"] = to_value(&h);
            }
            Ok((Output::Json(out), 0))
        }
        Command::Symgeo { d, triples, connect } => {
            if *d < 2 {
                return Err(Error::Precondition("d must be at least 2".into()));
            }
            if let Some(pair) = connect {
                let parse = |s: &str| -> Result<Vec<Perm>, Error> {
                    split_seq(s).iter().map(|t| Perm::parse_cycles(*d, t)).collect()
                };
                let (s1, s2) = (parse(&pair[0])?, parse(&pair[1])?);
                return Ok((Output::Json(to_value(&symgeo::clebsch_connect(&s1, &s2)?)), 0));
            }
            if let Some(n_max) = triples {
                let q = catalog::sd_geo(*d);
                let c = Completion::new(&q)?;
                let mut rows = Vec::new();
                let mut all = Vec::new();
                for n in 0..=*n_max {
                    let mut from_triples = symgeo::triples_of_norm(*d, n);
                    let mut from_classes: Vec<_> =
                        c.classes_at_norm(n).iter().map(|x| symgeo::triple_of_hat(x, *d)).collect();
                    from_triples.sort();
                    from_classes.sort();
                    rows.push(json!({
                        "norm": n,
                        "triples": from_triples.len(),
                        "classes": from_classes.len(),
                        "match": from_triples == from_classes,
                    }));
                    all.extend(from_triples);
                }
                if csv {
                    let mut t = String::from("norm,triple\n");
                    for x in &all {
                        let cell = serde_json::to_string(x).expect("triples serialize").replace('"', "\"\"");
                        let _ = writeln!(t, "{},\"{cell}\"", x.norm());
                    }
                    return Ok((Output::Csv(t), 0));
                }
                return Ok((Output::Json(json!({"d": d, "census": rows, "triples": all})), 0));
            }
            let perms = Perm::all(*d);
            let cayley = symgeo::cayley_distances(*d);
            let mut counts: BTreeMap<u32, usize> = BTreeMap::new();
            for p in &perms {
                *counts.entry(symgeo::perm_norm(p)).or_default() += 1;
            }
            let agrees = perms.iter().zip(&cayley).all(|(p, &n)| symgeo::perm_norm(p) == n);
            Ok((
                Output::Json(json!({
                    "d": d,
                    "norm_counts": counts,
                    "norm_equals_cayley_distance": agrees,
                    "enveloping_image": symgeo::env_image_census(*d),
                })),
                0,
            ))
        }
        Command::Homology { file, grading, modulus } => {
            let q = load_pmq(file)?;
            let coeff = modulus.map_or(Coefficients::Integers, Coefficients::Mod);
            if let Coefficients::Mod(p) = coeff {
                if p < 2 || (2..p).take_while(|x| x * x <= p).any(|x| p % x == 0) {
                    return Err(Error::Precondition(format!("{p} is not prime")));
                }
            }
            let t: HomologyTable = bar::homology_in_grading(&q, &split_seq(grading), coeff)?;
            if csv {
                return Ok((Output::Csv(t.to_csv()), 0));
            }
            Ok((Output::Json(to_value(&t)), 0))
        }
        Command::Poincare { file, budget } => {
            let q = load_pmq(file)?;
            let r = bar::poincare_report(&q, *budget)?;
            Ok((Output::Json(to_value(&r)), 0))
        }
        Command::RackCore { file } => {
            let loaded = load(file)?;
            let report = racks::rack_report(&loaded.pmq);
            let r = racks::FinitePmr::new(loaded.pmq)?;
            let core = racks::quandle_like_core(&r)?;
            let core_json = to_value(&io::to_file(&core, false));
            Ok((
                Output::Json(json!({
                    "valid_pmr": report.valid_pmr,
                    "valid_pmq": report.valid_pmq,
                    "core": core_json,
                })),
                0,
            ))
        }
        Command::Example { name } => {
            let (q, rack) = example(name)?;
            Ok((Output::Json(to_value(&io::to_file(&q, rack))), 0))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((out, code)) => {
            let text = match out {
                Output::Json(v) => serde_json::to_string_pretty(&v).expect("JSON values serialize") + "\n",
                Output::Csv(s) => s,
            };
            // A closed pipe (e.g. `| head`) is not an error worth reporting.
            let _ = std::io::stdout().lock().write_all(text.as_bytes());
            ExitCode::from(code)
        }
        Err(e) => {
            let (kind, code) = match &e {
                Error::Structural(_) => ("structural", 1),
                Error::Axiom(_) => ("axiom", 2),
                Error::Precondition(_) => ("precondition", 3),
            };
            let message = match &e {
                Error::Structural(m) | Error::Axiom(m) | Error::Precondition(m) => m.clone(),
            };
            eprintln!("{e}");
            println!("{}", json!({"error": kind, "message": message}));
            ExitCode::from(code)
        }
    }
}
