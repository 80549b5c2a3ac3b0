//! `lamistrat`: JSON in, JSON out. Errors go to stderr as
//! `{"error": <kind>, "message": <text>}`.

use std::path::Path;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde_json::{json, Value};

use lamistrat::curvecomplex::{build_slice, enumerate_vertices, separating_classification};
use lamistrat::mcg::{builtin_generators, twist, MappingClass};
use lamistrat::multicurve::{
    cut_invariants, decompose, intersection_number, is_disjoint, parse_weights, strip_peripheral, validate,
    weights_from_json, weights_to_json, Multicurve, MulticurveJson, RationalLamination, DEFAULT_WEIGHT_CAP,
};
use lamistrat::strata::{check_stratification_axioms, enumerate_strata, EnumerateOptions, Support};
use lamistrat::surface::{fixture, fixture_names, Triangulation};
use lamistrat::verify::{self, Options};
use lamistrat::Error;

#[derive(Parser)]
#[command(name = "lamistrat", version, about = "Support strata of weighted multicurves on punctured surfaces")]
struct Cli {
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Sample count for randomized checks.
    #[arg(long, global = true, default_value_t = 1000)]
    samples: usize,
    /// Per-edge weight cap for combinatorial walks.
    #[arg(long, global = true, default_value_t = DEFAULT_WEIGHT_CAP)]
    cap: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Dot,
}

#[derive(Subcommand)]
enum Command {
    /// List the built-in surfaces.
    Fixtures,
    /// Check a weight vector; with --strip, remove puncture links first.
    Validate {
        #[arg(long)]
        surface: String,
        #[arg(long)]
        weights: String,
        #[arg(long)]
        strip: bool,
    },
    /// Connected components with multiplicities.
    Decompose {
        #[arg(long)]
        surface: String,
        #[arg(long)]
        weights: String,
    },
    /// Geometric intersection number.
    Intersect {
        #[arg(long)]
        surface: String,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Whether two multicurves are disjoint.
    Disjoint {
        #[arg(long)]
        surface: String,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Depth of the stratum of a support: a multicurve, a list of component
    /// weight vectors, or a lamination.
    Depth {
        #[arg(long)]
        surface: String,
        #[arg(long)]
        support: String,
    },
    /// Regions left after cutting along a curve.
    Cut {
        #[arg(long)]
        surface: String,
        #[arg(long)]
        curve: String,
    },
    /// Connected curves of bounded total weight; DOT gives the disjointness graph.
    EnumerateCurves {
        #[arg(long)]
        surface: String,
        #[arg(long)]
        max_weight: u64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Summary of the strata window of bounded total weight.
    EnumerateStrata {
        #[arg(long)]
        surface: String,
        #[arg(long)]
        max_weight: u64,
        #[arg(long)]
        include_empty: bool,
    },
    /// The strata window as a poset.
    PosetExport {
        #[arg(long)]
        surface: String,
        #[arg(long)]
        max_weight: u64,
        #[arg(long)]
        include_empty: bool,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// The Dehn twist about a curve as a flip word, or its action.
    Twist {
        #[arg(long)]
        surface: String,
        #[arg(long)]
        curve: String,
        /// Apply the twist this many times to --weights instead of printing it.
        #[arg(long, default_value_t = 1)]
        power: usize,
        #[arg(long)]
        weights: Option<String>,
    },
    /// Apply a mapping class (JSON word, file, or built-in generator name).
    Apply {
        #[arg(long)]
        surface: String,
        #[arg(long)]
        map: String,
        #[arg(long)]
        weights: String,
    },
    /// Run the acceptance suites.
    Verify {
        /// Run only this criterion.
        #[arg(long)]
        criterion: Option<u8>,
    },
}

struct Failure {
    code: u8,
    body: Value,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::BudgetExceeded { .. } | Error::WeightCapExceeded { .. } => 3,
            _ => 1,
        };
        Failure { code, body: json!({"error": e.kind(), "message": e.to_string()}) }
    }
}

type Outcome = Result<Output, Failure>;

enum Output {
    Json(Value),
    Text(String),
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if e.use_stderr() => {
            let msg = e.to_string();
            eprintln!("{}", json!({"error": "InvalidInput", "message": msg.trim_end()}));
            return ExitCode::from(1);
        }
        Err(e) => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
    };
    match run(&cli) {
        Ok(Output::Json(v)) => {
            println!("{v}");
            ExitCode::SUCCESS
        }
        Ok(Output::Text(t)) => {
            print!("{t}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("{}", f.body);
            ExitCode::from(f.code)
        }
    }
}

fn read_arg(text: &str) -> Result<String, Error> {
    let p = Path::new(text);
    if !text.trim_start().starts_with(['{', '[']) && p.is_file() {
        std::fs::read_to_string(p).map_err(|e| Error::InvalidInput(format!("{text}: {e}")))
    } else {
        Ok(text.to_string())
    }
}

fn surface(name: &str) -> Result<Arc<Triangulation>, Error> {
    if fixture_names().contains(&name) {
        return fixture(name);
    }
    if Path::new(name).is_file() {
        return Triangulation::from_json(&read_arg(name)?).map(Arc::new);
    }
    Err(Error::UnknownFixture(name.to_string()))
}

/// Weights given as `1,2,3`, a JSON array, or a multicurve JSON object
/// (inline or in a file) on the same surface.
fn weights(tri: &Arc<Triangulation>, text: &str) -> Result<Vec<BigUint>, Error> {
    let text = read_arg(text)?;
    if text.trim_start().starts_with('{') {
        let m: MulticurveJson =
            serde_json::from_str(&text).map_err(|e| Error::InvalidInput(format!("multicurve JSON: {e}")))?;
        if *surface(&m.triangulation)? != **tri {
            return Err(Error::FrameMismatch);
        }
        return weights_from_json(&m.weights);
    }
    parse_weights(&text)
}

fn multicurve(tri: &Arc<Triangulation>, text: &str) -> Result<Multicurve, Error> {
    validate(tri, weights(tri, text)?)
}

fn support(tri: &Arc<Triangulation>, text: &str, cap: u64) -> Result<Support, Error> {
    let text = read_arg(text)?;
    let t = text.trim_start();
    if t.starts_with('{') {
        let v: Value = serde_json::from_str(t).map_err(|e| Error::InvalidInput(format!("support JSON: {e}")))?;
        if v.get("components").is_some() {
            let l = RationalLamination::from_json(tri, &v, cap)?;
            return lamistrat::strata::support_of(&l);
        }
        return Support::of_multicurve(&multicurve(tri, t)?, cap);
    }
    if t.starts_with("[[") {
        let v: Vec<Vec<Value>> =
            serde_json::from_str(t).map_err(|e| Error::InvalidInput(format!("support JSON: {e}")))?;
        let comps = v.iter().map(|w| validate(tri, weights_from_json(w)?)).collect::<Result<_, _>>()?;
        return Support::new(tri, comps, cap);
    }
    Support::of_multicurve(&multicurve(tri, t)?, cap)
}

fn mapping_class(tri: &Arc<Triangulation>, name: &str, text: &str) -> Result<MappingClass, Error> {
    if let Ok(gens) = builtin_generators(name) {
        if let Some(g) = gens.into_iter().find(|g| g.name == text) {
            return Ok(g.class);
        }
    }
    let text = read_arg(text)?;
    let v: Value = serde_json::from_str(&text).map_err(|e| Error::InvalidInput(format!("mapping class JSON: {e}")))?;
    MappingClass::from_json(tri.clone(), &v)
}

fn run(cli: &Cli) -> Outcome {
    let cap = cli.cap;
    let out = match &cli.command {
        Command::Fixtures => {
            let list: Vec<Value> = fixture_names()
                .iter()
                .map(|&n| {
                    let t = fixture(n)?;
                    let s = t.signature();
                    Ok(json!({
                        "name": n, "genus": s.genus, "punctures": s.punctures, "complexity": s.complexity(),
                        "edges": t.edge_count(), "triangles": t.triangle_count(),
                    }))
                })
                .collect::<Result<_, Error>>()?;
            json!({ "fixtures": list })
        }
        Command::Validate { surface: s, weights: w, strip } => {
            let tri = surface(s)?;
            let w = weights(&tri, w)?;
            if *strip {
                let (m, stripped) = strip_peripheral(&tri, w)?;
                json!({"weights": weights_to_json(m.weights()), "stripped": stripped})
            } else {
                let m = validate(&tri, w)?;
                json!({"valid": true, "weights": weights_to_json(m.weights())})
            }
        }
        Command::Decompose { surface: s, weights: w } => {
            let tri = surface(s)?;
            let parts: Vec<Value> = decompose(&multicurve(&tri, w)?, cap)?
                .iter()
                .map(|(c, k)| json!({"weights": weights_to_json(c.weights()), "multiplicity": k}))
                .collect();
            json!({ "components": parts })
        }
        Command::Intersect { surface: s, a, b } => {
            let tri = surface(s)?;
            let i = intersection_number(&multicurve(&tri, a)?, &multicurve(&tri, b)?, cap)?;
            json!({ "i": weights_to_json(&[i])[0] })
        }
        Command::Disjoint { surface: s, a, b } => {
            let tri = surface(s)?;
            json!({ "disjoint": is_disjoint(&multicurve(&tri, a)?, &multicurve(&tri, b)?, cap)? })
        }
        Command::Depth { surface: s, support: text } => {
            let tri = surface(s)?;
            let sup = support(&tri, text, cap)?;
            json!({"depth": sup.depth(), "components": sup.len(), "support": sup.to_json()})
        }
        Command::Cut { surface: s, curve } => {
            let tri = surface(s)?;
            let r = cut_invariants(&multicurve(&tri, curve)?, cap)?;
            let regions: Vec<[u32; 3]> = r.regions.iter().map(|x| [x.genus, x.punctures, x.boundary]).collect();
            json!({"regions": regions, "separating": r.separating})
        }
        Command::EnumerateCurves { surface: s, max_weight, format } => {
            let tri = surface(s)?;
            let curves = enumerate_vertices(&tri, *max_weight)?;
            match format {
                Format::Json => {
                    let part = separating_classification(&curves, cap)?;
                    let list: Vec<Value> = curves
                        .iter()
                        .enumerate()
                        .map(|(i, c)| {
                            json!({"weights": weights_to_json(c.weights()), "separating": part.separating.contains(&i)})
                        })
                        .collect();
                    json!({ "curves": list })
                }
                Format::Dot => return Ok(Output::Text(build_slice(&curves, cap)?.to_dot())),
            }
        }
        Command::EnumerateStrata { surface: s, max_weight, include_empty } => {
            let tri = surface(s)?;
            let opts = EnumerateOptions { include_empty: *include_empty, cap, ..Default::default() };
            let p = enumerate_strata(&tri, *max_weight, &opts)?;
            let mut by_depth = vec![0usize; p.max_depth() + 1];
            for st in p.strata() {
                by_depth[st.depth] += 1;
            }
            let axioms = check_stratification_axioms(&p);
            json!({
                "strata": p.len(),
                "max_depth": p.max_depth(),
                "bound": tri.signature().max_depth(),
                "by_depth": by_depth,
                "covers": p.cover_relation().len(),
                "axioms": axioms,
            })
        }
        Command::PosetExport { surface: s, max_weight, include_empty, format } => {
            let tri = surface(s)?;
            let opts = EnumerateOptions { include_empty: *include_empty, cap, ..Default::default() };
            let p = enumerate_strata(&tri, *max_weight, &opts)?;
            match format {
                Format::Json => p.to_json(),
                Format::Dot => return Ok(Output::Text(p.to_dot())),
            }
        }
        Command::Twist { surface: s, curve, power, weights: w } => {
            let tri = surface(s)?;
            let t = twist(&multicurve(&tri, curve)?, cap)?;
            match w {
                None => t.power(*power).to_json(),
                Some(w) => {
                    let m = weights(&tri, w)?;
                    let image = t.power(*power).apply_weights(&m, Some(&BigUint::from(u64::MAX)))?;
                    json!({ "weights": weights_to_json(&image) })
                }
            }
        }
        Command::Apply { surface: s, map, weights: w } => {
            let tri = surface(s)?;
            let f = mapping_class(&tri, s, map)?;
            let m = lamistrat::multicurve::NormalCoords::new(tri.clone(), weights(&tri, w)?)?;
            json!({ "weights": weights_to_json(f.apply(&m)?.weights()) })
        }
        Command::Verify { criterion } => {
            let opts = Options { seed: cli.seed, samples: cli.samples };
            let reports = match criterion {
                Some(id) => vec![verify::run(*id, &opts)?],
                None => verify::run_all(&opts)?,
            };
            let passed = reports.iter().all(|r| r.passed);
            let body = json!({"passed": passed, "seed": cli.seed, "samples": cli.samples, "criteria": reports});
            if !passed {
                println!("{body}");
                return Err(Failure { code: 2, body: json!({"error": "VerificationFailed", "message": "some checks failed"}) });
            }
            body
        }
    };
    Ok(Output::Json(out))
}
