use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand};
use serde_json::{json, Map, Value};

use dmv_core::bounds::{
    bezout, cebotarev_check, clg_lower_bound, genus_within_bound, hecke_pullback, induction_threshold,
    intersection_ledger_holds, separable_n,
};
use dmv_core::config::{Config, OutputFormat};
use dmv_core::extension::{index_ix, predegree, splitting, zeta_numerator, Extension, ExtensionSpec};
use dmv_core::ffpoly::prime::{enumerate_primes, primes_of_degree};
use dmv_core::ffpoly::text::{parse_field, parse_poly, parse_xpoly};
use dmv_core::ffpoly::{factor, FiniteField, Prime};
use dmv_core::goodprime::{
    count_components, find_good_prime, is_good_prime, shrink_level, DatumSpec, GoodPrimeOutcome, LevelEntrySpec,
    LevelMap, SearchOutcome, SubvarietyDatum,
};
use dmv_core::hecke::{hecke_degree, newton_polygon, projectively_bounded, standard_hecke_matrix};
use dmv_core::json::{parse_matrix, parse_prime};
use dmv_core::localfield::LocalElement;
use dmv_core::verify;
use dmv_core::Error;

const SCHEMA: u32 = 1;

#[derive(Parser)]
#[command(name = "dmv", version, about = "Exact computations on Drinfeld modular varieties")]
struct Cli {
    /// JSON config file; falls back to $DMV_CONFIG.
    #[arg(long, global = true, env = "DMV_CONFIG")]
    config: Option<PathBuf>,
    /// Overrides the configured output format.
    #[arg(long, global = true, value_parser = ["json", "tsv"])]
    output: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Monic irreducibles of F_q[t] by degree.
    Primes {
        #[arg(long)]
        q: String,
        /// Exactly this degree.
        #[arg(long, conflicts_with = "max_degree")]
        degree: Option<usize>,
        /// All degrees up to this one.
        #[arg(long)]
        max_degree: Option<usize>,
    },
    /// Factors a polynomial in F_q[t].
    Factor {
        #[arg(long)]
        q: String,
        #[arg(long)]
        poly: String,
    },
    /// Decomposition of a prime in an extension.
    Splitting {
        /// Extension spec, inline JSON or a file.
        #[arg(long)]
        ext: String,
        #[arg(long)]
        prime: String,
    },
    /// Zeta numerator, class number and genus bounds.
    ClassNumber {
        #[arg(long)]
        ext: String,
    },
    /// D(X) = h(F′)·i(X) for a datum.
    Predegree {
        #[arg(long)]
        datum: String,
    },
    /// Degree of the Hecke correspondence of a local matrix.
    HeckeDegree {
        #[arg(long)]
        q: String,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        prime: String,
        #[arg(long, default_value_t = 1)]
        depth: u32,
        /// Row-major matrix of expressions; defaults to diag(1/π, 1, …, 1).
        #[arg(long)]
        matrix: Option<String>,
    },
    /// Newton polygon of a polynomial in x over F_q(t) at a prime.
    NewtonPolygon {
        #[arg(long)]
        poly: String,
        #[arg(long)]
        prime: String,
        #[arg(long)]
        q: String,
    },
    /// Projective boundedness of a local matrix.
    Bounded {
        #[arg(long)]
        q: String,
        #[arg(long)]
        prime: String,
        #[arg(long)]
        matrix: String,
    },
    /// Searches for a good prime, or tests one.
    GoodPrime {
        #[arg(long)]
        datum: String,
        #[arg(long = "N", default_value_t = 1)]
        n: u32,
        #[arg(long)]
        max_degree: Option<usize>,
        /// Test this prime only.
        #[arg(long)]
        prime: Option<String>,
    },
    /// Replaces a maximal local level by its depth-1 congruence subgroup.
    ShrinkLevel {
        #[arg(long)]
        base: String,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        level: String,
        #[arg(long)]
        prime: String,
    },
    /// Number of geometric components for a level.
    Components {
        #[arg(long)]
        base: String,
        #[arg(long)]
        level: String,
        #[arg(long, default_value_t = 2)]
        r: usize,
    },
    /// Split-prime count against the effective Čebotarev bound.
    Cebotarev {
        #[arg(long)]
        ext: String,
        #[arg(long)]
        i: u32,
    },
    /// Induction thresholds and the intersection ledger.
    Thresholds {
        #[arg(long)]
        r: u32,
        #[arg(long)]
        s: u32,
        #[arg(long)]
        kp: u64,
        #[arg(long = "degZ")]
        deg_z: u64,
    },
    /// Runs the acceptance checks.
    VerifySuite {
        /// Criterion numbers to run; all by default.
        #[arg(long, value_delimiter = ',')]
        only: Vec<u8>,
    },
}

enum Failure {
    Core(Error),
    Input(String),
    /// Exit 2 with a report on stdout.
    Refused { report: Report, tag: &'static str, message: String },
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

type Outcome<T> = Result<T, Failure>;

struct Report {
    body: Map<String, Value>,
    tsv: Option<String>,
    code: u8,
}

impl Report {
    fn new(body: Value) -> Self {
        let body = match body {
            Value::Object(m) => m,
            other => Map::from_iter([("value".to_string(), other)]),
        };
        Report { body, tsv: None, code: 0 }
    }

    fn with_tsv(mut self, tsv: String) -> Self {
        self.tsv = Some(tsv);
        self
    }

    fn render(mut self, config: &Config) -> (String, u8) {
        let out = match config.output {
            OutputFormat::Json => {
                self.body.insert("schema".into(), json!(SCHEMA));
                self.body.insert("config".into(), serde_json::to_value(config).expect("config serializes"));
                serde_json::to_string_pretty(&Value::Object(self.body)).expect("json") + "\n"
            }
            OutputFormat::Tsv => match self.tsv {
                Some(t) => t,
                None => {
                    let mut t = format!("schema\t{SCHEMA}\n");
                    for (k, v) in &self.body {
                        let cell = match v {
                            Value::String(s) => s.clone(),
                            other => other.to_string(),
                        };
                        t.push_str(&format!("{k}\t{cell}\n"));
                    }
                    t
                }
            },
        };
        (out, self.code)
    }
}

fn exit_for(e: &Error) -> u8 {
    match e {
        Error::BudgetExceeded { .. } => 3,
        Error::Parse(_)
        | Error::InvalidArgument(_)
        | Error::NotPrime(_)
        | Error::NotIrreducible(_)
        | Error::ZeroPolynomial
        | Error::FieldTooLarge(_) => 4,
        _ => 2,
    }
}

fn error_json(tag: &str, message: &str) -> String {
    json!({"schema": SCHEMA, "error": tag, "message": message}).to_string()
}

/// Inline JSON when the argument opens with `{` or `[`, else a file path.
fn json_arg<T: serde::de::DeserializeOwned>(arg: &str) -> Outcome<T> {
    let trimmed = arg.trim_start();
    let src = if trimmed.starts_with('{') || trimmed.starts_with('[') {
        arg.to_string()
    } else {
        fs::read_to_string(arg).map_err(|e| Failure::Input(format!("cannot read {arg}: {e}")))?
    };
    serde_json::from_str(&src).map_err(|e| Failure::Input(format!("malformed JSON in {arg}: {e}")))
}

fn load_config(cli: &Cli) -> Outcome<Config> {
    let mut config = match &cli.config {
        Some(path) => {
            let src = fs::read_to_string(path)
                .map_err(|e| Failure::Input(format!("cannot read config {}: {e}", path.display())))?;
            Config::from_json(&src)?
        }
        None => Config::default(),
    };
    if let Some(o) = &cli.output {
        config.output = if o == "tsv" { OutputFormat::Tsv } else { OutputFormat::Json };
    }
    Ok(config)
}

fn extension_arg(arg: &str) -> Outcome<(ExtensionSpec, Extension)> {
    let spec: ExtensionSpec = json_arg(arg)?;
    let ext = Extension::from_spec(&spec)?;
    Ok((spec, ext))
}

fn datum_arg(arg: &str, config: &Config) -> Outcome<(DatumSpec, SubvarietyDatum)> {
    let spec: DatumSpec = json_arg(arg)?;
    let datum = SubvarietyDatum::from_spec(&spec, config.precision)?;
    Ok((datum.to_spec(), datum))
}

fn matrix_arg(arg: &str, prime: &Prime, r: Option<usize>, prec: u32) -> Outcome<dmv_core::localfield::LocalMatrix> {
    let rows: Vec<Vec<String>> = json_arg(arg)?;
    let r = r.unwrap_or(rows.len());
    Ok(parse_matrix(&rows, prime, r, prec)?)
}

fn field_prime(q: &str, prime: &str) -> Outcome<(Arc<FiniteField>, Prime)> {
    let k = parse_field(q)?;
    let p = parse_prime(prime, &k)?;
    Ok((k, p))
}

fn run(command: &Command, config: &Config) -> Outcome<Report> {
    let budget = config.orbit_budget;
    let prec = config.precision;
    match command {
        Command::Primes { q, degree, max_degree } => {
            let k = parse_field(q)?;
            let primes = match (degree, max_degree) {
                (Some(d), _) => primes_of_degree(&k, *d)?,
                (None, Some(d)) => enumerate_primes(&k, *d)?,
                (None, None) => return Err(Failure::Input("one of --degree or --max-degree is required".into())),
            };
            let names: Vec<String> = primes.iter().map(Prime::to_string).collect();
            let tsv = names.iter().map(|p| format!("{p}\n")).collect();
            Ok(Report::new(json!({"q": k.size(), "count": names.len(), "primes": names})).with_tsv(tsv))
        }
        Command::Factor { q, poly } => {
            let k = parse_field(q)?;
            let f = parse_poly(poly, &k)?;
            let fac = factor(&f)?;
            let factors: Vec<Value> = fac
                .factors
                .iter()
                .map(|(g, m)| json!({"factor": g.to_string(), "multiplicity": m, "degree": g.degree()}))
                .collect();
            let mut tsv = String::from("factor\tmultiplicity\n");
            for (g, m) in &fac.factors {
                tsv.push_str(&format!("{g}\t{m}\n"));
            }
            Ok(Report::new(json!({
                "poly": f.to_string(),
                "unit": fac.unit,
                "factors": factors,
                "irreducible": fac.is_irreducible(),
            }))
            .with_tsv(tsv))
        }
        Command::Splitting { ext, prime } => {
            let (spec, e) = extension_arg(ext)?;
            let p = parse_prime(prime, e.base())?;
            let s = splitting(&e, &p)?;
            let places: Vec<Value> = s.places.iter().map(|&(f, e)| json!({"e": e, "f": f})).collect();
            Ok(Report::new(json!({
                "extension": spec,
                "prime": p.to_string(),
                "places": places,
                "unramified": s.unramified,
                "has_degree_one_place": s.has_degree_one_place(),
            }))
            .with_tsv(s.to_tsv()))
        }
        Command::ClassNumber { ext } => {
            let (spec, e) = extension_arg(ext)?;
            let z = zeta_numerator(&e, budget)?;
            let lower = match clg_lower_bound(z.q, z.genus) {
                Ok(b) => Value::String(b.to_string()),
                Err(Error::GenusZero) => Value::Null,
                Err(err) => return Err(err.into()),
            };
            let mut body = serde_json::to_value(&z).expect("zeta serializes");
            body["extension"] = serde_json::to_value(spec).expect("spec serializes");
            body["clg_lower_bound"] = lower;
            body["genus_within_bound"] = json!(genus_within_bound(z.q, &z.class_number, z.genus));
            Ok(Report::new(body))
        }
        Command::Predegree { datum } => {
            let (spec, d) = datum_arg(datum, config)?;
            let i = index_ix(&d, budget)?;
            let dd = predegree(&d.extension, &i, budget)?;
            let h = &dd / &i;
            Ok(Report::new(json!({
                "datum": spec,
                "index": i.to_string(),
                "class_number": h.to_string(),
                "predegree": dd.to_string(),
            })))
        }
        Command::HeckeDegree { q, r, prime, depth, matrix } => {
            let (_, p) = field_prime(q, prime)?;
            let g = match matrix {
                Some(m) => matrix_arg(m, &p, Some(*r), prec)?,
                None => standard_hecke_matrix(&p, *r, prec),
            };
            let degree = hecke_degree(&g, *depth, budget)?;
            Ok(Report::new(json!({
                "prime": p.to_string(),
                "r": r,
                "depth": depth,
                "degree": degree.to_string().parse::<u64>().map(Value::from).unwrap_or_else(|_| degree.to_string().into()),
            })))
        }
        Command::NewtonPolygon { poly, prime, q } => {
            let (k, p) = field_prime(q, prime)?;
            let f = parse_xpoly(poly, &k)?;
            let coeffs: Vec<LocalElement> = f.coeffs.iter().map(|c| LocalElement::from_ratfunc(&p, c, prec)).collect();
            let np = newton_polygon(&coeffs)?;
            let segments: Vec<Value> = np
                .segments
                .iter()
                .map(|s| json!({"slope": s.slope.to_string(), "length": s.length}))
                .collect();
            Ok(Report::new(json!({
                "poly": f.format(),
                "prime": p.to_string(),
                "points": np.points,
                "segments": segments,
                "segment_count": np.segment_count(),
            }))
            .with_tsv(np.to_tsv()))
        }
        Command::Bounded { q, prime, matrix } => {
            let (_, p) = field_prime(q, prime)?;
            let g = matrix_arg(matrix, &p, None, prec)?;
            let bounded = projectively_bounded(&g)?;
            Ok(Report::new(json!({"prime": p.to_string(), "r": g.rows(), "bounded": bounded})))
        }
        Command::GoodPrime { datum, n, max_degree, prime } => {
            let (spec, d) = datum_arg(datum, config)?;
            if let Some(src) = prime {
                let p = parse_prime(src, d.extension.base())?;
                return match is_good_prime(&d, &p)? {
                    GoodPrimeOutcome::Good(cert) => {
                        Ok(Report::new(json!({"datum": spec, "good": true, "certificate": cert.to_json()})))
                    }
                    GoodPrimeOutcome::Refused { condition, reason } => {
                        let report = Report::new(json!({
                            "datum": spec,
                            "good": false,
                            "prime": p.to_string(),
                            "condition": condition,
                            "reason": reason,
                        }));
                        Err(Failure::Refused { report, tag: "Refused", message: reason })
                    }
                };
            }
            let max_degree = max_degree.unwrap_or(config.scan_max_degree as usize);
            match find_good_prime(&d, *n, max_degree, budget)? {
                SearchOutcome::Found(found) => Ok(Report::new(json!({
                    "datum": spec,
                    "found": true,
                    "certificate": found.certificate.to_json(),
                    "level": found.level.to_spec(),
                    "shrink_index": found.shrink_index.to_string(),
                    "predegree": found.predegree.to_string(),
                    "counters": found.counters,
                }))),
                SearchOutcome::NotFound { predegree, counters } => {
                    let report = Report::new(json!({
                        "datum": spec,
                        "found": false,
                        "predegree": predegree.to_string(),
                        "counters": counters,
                    }));
                    let message = format!("no good prime of degree ≤ {max_degree}");
                    Err(Failure::Refused { report, tag: "NotFound", message })
                }
            }
        }
        Command::ShrinkLevel { base, r, level, prime } => {
            let k = parse_field(base)?;
            let entries: Vec<LevelEntrySpec> = json_arg(level)?;
            let map = LevelMap::from_spec(&k, *r, &entries, prec)?;
            let p = parse_prime(prime, &k)?;
            let (shrunk, index) = shrink_level(&map, &p)?;
            Ok(Report::new(json!({
                "prime": p.to_string(),
                "level": shrunk.to_spec(),
                "index": index.to_string(),
            })))
        }
        Command::Components { base, level, r } => {
            let k = parse_field(base)?;
            let entries: Vec<LevelEntrySpec> = json_arg(level)?;
            let map = LevelMap::from_spec(&k, *r, &entries, prec)?;
            let count = count_components(&map);
            Ok(Report::new(json!({
                "level": map.to_spec(),
                "components": count.to_string().parse::<u64>().map(Value::from).unwrap_or_else(|_| count.to_string().into()),
            })))
        }
        Command::Cebotarev { ext, i } => {
            let (spec, e) = extension_arg(ext)?;
            let report = cebotarev_check(&e, *i, budget)?;
            let mut body = serde_json::to_value(&report).expect("report serializes");
            body["extension"] = serde_json::to_value(spec).expect("spec serializes");
            Ok(Report::new(body))
        }
        Command::Thresholds { r, s, kp, deg_z } => {
            if *r == 0 || *kp < 2 || *deg_z == 0 {
                return Err(Failure::Input("need r ≥ 1, kp ≥ 2 and degZ ≥ 1".into()));
            }
            let (kpb, dz) = (num_bigint::BigUint::from(*kp), num_bigint::BigUint::from(*deg_z));
            let index = kpb.pow(r - 1);
            let pulled = hecke_pullback(&dz, &index);
            Ok(Report::new(json!({
                "r": r,
                "s": s,
                "kp": kp,
                "degZ": deg_z,
                "induction_threshold": induction_threshold(&kpb, *r, *s, &dz).to_string(),
                "separable_n": separable_n(*r, *s).to_string(),
                "hecke_pullback": pulled.to_string(),
                "bezout": bezout(&dz, &pulled).to_string(),
                "ledger_bound": (&dz * &dz * &index).to_string(),
                "ledger_holds": intersection_ledger_holds(&dz, &kpb, *r),
            })))
        }
        Command::VerifySuite { only } => {
            let ids: Vec<u8> = if only.is_empty() { (1..=10).collect() } else { only.clone() };
            if let Some(bad) = ids.iter().find(|&&i| !(1..=10).contains(&i)) {
                return Err(Failure::Input(format!("no criterion {bad}")));
            }
            let results: Vec<_> = ids.iter().map(|&i| verify::run_criterion(i, config)).collect();
            let code = verify::exit_code(&results) as u8;
            let tsv = results.iter().map(|r| r.line() + "\n").collect();
            let mut report = Report::new(json!({
                "results": results,
                "all_passed": code == 0,
            }))
            .with_tsv(tsv);
            report.code = code;
            Ok(report)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            eprintln!("{}", error_json("Usage", e.to_string().trim()));
            return ExitCode::from(4);
        }
    };
    let result = load_config(&cli).and_then(|config| run(&cli.command, &config).map(|r| r.render(&config)));
    match result {
        Ok((out, code)) => {
            print!("{out}");
            ExitCode::from(code)
        }
        Err(Failure::Core(e)) => {
            eprintln!("{}", error_json(e.tag(), &e.to_string()));
            ExitCode::from(exit_for(&e))
        }
        Err(Failure::Input(message)) => {
            eprintln!("{}", error_json("Parse", &message));
            ExitCode::from(4)
        }
        Err(Failure::Refused { report, tag, message }) => {
            let config = load_config(&cli).unwrap_or_default();
            print!("{}", report.render(&config).0);
            eprintln!("{}", error_json(tag, &message));
            ExitCode::from(2)
        }
    }
}
