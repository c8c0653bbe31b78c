//! Command-line front end: pencil analysis, local/global invariants,
//! member searches, discriminant-curve tools, finite-field oracles, and
//! verification campaigns. Every subcommand prints a single JSON document
//! on standard output.
//!
//! Exit codes: 0 completed, 1 campaign failure, 2 input error.

use clap::{Args, Parser, Subcommand};
use quadrics::arith::{parse_rat, Int, Rat};
use quadrics::error::Error;
use quadrics::fforacle::{self, FFField, FFForm};
use quadrics::harness::{self, CampaignSpec, Constraint, TheoremId};
use quadrics::localglobal::{
    full_local_report, global_witt_index, local_invariants, local_witt_index, Place,
};
use quadrics::pencil::{curve_point_search, odd_degree_point_detector, OddDegreeOutcome, Pencil};
use quadrics::qform::QuadraticForm;
use serde_json::json;
use std::io::Read;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "quadrics", version, about = "Exact analysis of pencils of two quadratic forms over Q")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Smoothness, determinant form, and rank stratification of a pencil
    Analyze(PencilInput),
    /// Local invariants of a quadratic form at one place (or all critical places)
    Local {
        /// "real" or a prime; omitted = every critical place
        #[arg(long)]
        place: Option<String>,
        #[command(flatten)]
        form: FormInput,
    },
    /// Witt index of a quadratic form, locally or globally
    Witt {
        /// global Witt index via the Hasse subform theorem
        #[arg(long, conflicts_with = "place")]
        global: bool,
        #[arg(long)]
        place: Option<String>,
        #[command(flatten)]
        form: FormInput,
    },
    /// Scan pencil members for prescribed hyperbolic content
    MemberSearch {
        /// "real" or a prime; omitted = global Witt index
        #[arg(long)]
        place: Option<String>,
        #[arg(long)]
        r: usize,
        #[arg(long, default_value_t = 50)]
        height: i64,
        #[command(flatten)]
        pencil: PencilInput,
    },
    /// Discriminant hyperelliptic curve y^2 = sign * det(t f + g)
    Curve {
        #[arg(long, default_value_t = -1, allow_hyphen_values = true)]
        sign: i8,
        /// bounded rational point search up to this height
        #[arg(long)]
        points: Option<i64>,
        /// run the odd-degree point detector
        #[arg(long)]
        odd_degree: bool,
        #[command(flatten)]
        pencil: PencilInput,
    },
    /// Finite-field census of the reduced pencil over F_q
    Ff {
        /// odd prime power
        #[arg(long)]
        q: u64,
        /// count the F_q-points of the base locus
        #[arg(long)]
        count_points: bool,
        /// enumerate the r-planes contained in the base locus
        #[arg(long)]
        planes: Option<usize>,
        /// enumeration budget in field operations
        #[arg(long, default_value_t = fforacle::DEFAULT_BUDGET)]
        budget: u128,
        #[command(flatten)]
        pencil: PencilInput,
    },
    /// Run a theorem-verification campaign
    Verify {
        #[arg(long)]
        theorem: String,
        #[arg(long, default_value_t = 10)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        coeff_bound: Option<i64>,
        #[arg(long)]
        height_bound: Option<i64>,
        /// comma-separated places, e.g. "real,2,3,5"
        #[arg(long)]
        places: Option<String>,
    },
    /// Generate a random smooth pencil
    Generate {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 5)]
        coeff_bound: i64,
        /// force (1:0:...:0) onto the base locus
        #[arg(long)]
        has_rational_point: bool,
    },
}

#[derive(Args)]
struct PencilInput {
    /// path to a pencil JSON file {"n", "f", "g"}, or "-" for stdin
    #[arg(value_name = "PENCIL")]
    path: String,
}

#[derive(Args)]
struct FormInput {
    /// path to a form JSON file {"dim", "gram"}, or "-" for stdin
    #[arg(value_name = "FORM", required_unless_present = "diagonal")]
    path: Option<String>,
    /// diagonal entries instead of a file, e.g. "1,1,-1,-1"
    #[arg(long, conflicts_with = "path")]
    diagonal: Option<String>,
}

fn read_source(path: &str) -> Result<String, Error> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| Error::Input(format!("reading stdin: {e}")))?;
        Ok(buf)
    } else {
        std::fs::read_to_string(path).map_err(|e| Error::Input(format!("reading {path}: {e}")))
    }
}

fn parse_json<T: serde::de::DeserializeOwned>(text: &str, what: &str) -> Result<T, Error> {
    serde_json::from_str(text)
        .map_err(|e| Error::Input(format!("malformed {what} JSON: {e}")))
}

fn load_pencil(input: &PencilInput) -> Result<Pencil, Error> {
    parse_json(&read_source(&input.path)?, "pencil")
}

fn load_form(input: &FormInput) -> Result<QuadraticForm, Error> {
    if let Some(diag) = &input.diagonal {
        let entries: Vec<Rat> = diag
            .split(',')
            .map(|s| {
                parse_rat(s).ok_or_else(|| Error::Input(format!("bad rational {s:?}")))
            })
            .collect::<Result<_, _>>()?;
        return Ok(QuadraticForm::from_diagonal(&entries));
    }
    parse_json(&read_source(input.path.as_deref().unwrap())?, "form")
}

fn parse_place(s: &str) -> Result<Place, Error> {
    Place::parse(s)
}

fn parse_places(s: &str) -> Result<Vec<Place>, Error> {
    s.split(',').map(|p| parse_place(p.trim())).collect()
}

/// q = p^m with p an odd prime.
fn split_prime_power(q: u64) -> Result<(u64, u32), Error> {
    let factors = quadrics::arith::factor(&Int::from(q));
    if factors.len() != 1 {
        return Err(Error::Input(format!("{q} is not a prime power")));
    }
    let (p, m) = factors.into_iter().next().unwrap();
    let p: u64 = p.to_string().parse().unwrap();
    Ok((p, m as u32))
}

fn run(cli: Cli) -> Result<serde_json::Value, Error> {
    match cli.command {
        Command::Analyze(input) => {
            let pencil = load_pencil(&input)?;
            let smooth = pencil.is_smooth();
            let strat = pencil.stratify()?;
            let det: Vec<String> = pencil
                .det_coeffs()
                .iter()
                .map(quadrics::arith::rat_to_string)
                .collect();
            Ok(json!({
                "n": pencil.n(),
                "det_coeffs": det,
                "smoothness": smooth,
                "stratification": strat,
            }))
        }
        Command::Local { place, form } => {
            let q = load_form(&form)?;
            match place {
                Some(p) => Ok(json!(local_invariants(&q, &parse_place(&p)?)?)),
                None => Ok(json!(full_local_report(&q)?)),
            }
        }
        Command::Witt {
            global,
            place,
            form,
        } => {
            let q = load_form(&form)?;
            match (global, place) {
                (true, _) | (false, None) => {
                    let rep = global_witt_index(&q)?;
                    Ok(json!({"witt": rep.index, "report": rep}))
                }
                (false, Some(p)) => {
                    let w = local_witt_index(&q, &parse_place(&p)?)?;
                    Ok(json!({"witt": w.index, "report": w}))
                }
            }
        }
        Command::MemberSearch {
            place,
            r,
            height,
            pencil,
        } => {
            let pencil = load_pencil(&pencil)?;
            match place {
                Some(p) => {
                    let place = parse_place(&p)?;
                    match pencil.member_with_local_witt(&place, r, height)? {
                        Some((param, w)) => Ok(json!({
                            "found": true, "parameter": param, "witt": w, "place": place,
                        })),
                        None => Ok(json!({"found": false, "height_bound": height})),
                    }
                }
                None => match pencil.member_with_global_witt(r, height)? {
                    Some((param, rep)) => Ok(json!({
                        "found": true, "parameter": param, "global": rep,
                    })),
                    None => Ok(json!({"found": false, "height_bound": height})),
                },
            }
        }
        Command::Curve {
            sign,
            points,
            odd_degree,
            pencil,
        } => {
            let pencil = load_pencil(&pencil)?;
            let model = pencil.discriminant_curve(sign)?;
            let mut out = json!({
                "sign": model.sign,
                "poly": model.poly.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                "degree": model.degree,
                "genus_arithmetic": model.genus_arithmetic,
                "squarefree": model.squarefree,
            });
            if let Some(bound) = points {
                out["points"] = json!(curve_point_search(&model, bound)?);
            }
            if odd_degree {
                let verdict = match odd_degree_point_detector(&model)? {
                    OddDegreeOutcome::Yes(w) => json!({"verdict": "yes", "witness": format!("{w:?}")}),
                    OddDegreeOutcome::Unknown => json!({"verdict": "unknown"}),
                };
                out["odd_degree"] = verdict;
            }
            Ok(out)
        }
        Command::Ff {
            q,
            count_points,
            planes,
            budget,
            pencil,
        } => {
            let pencil = load_pencil(&pencil)?;
            let (p, m) = split_prime_power(q)?;
            let field = FFField::new(p, m)?;
            let f = FFForm::reduce(pencil.f(), &field)?;
            let g = FFForm::reduce(pencil.g(), &field)?;
            let mut out = json!({"q": q, "p": p, "m": m});
            if count_points {
                out["points"] =
                    json!(fforacle::count_points(&[&f, &g], &field, budget)?);
            }
            if let Some(r) = planes {
                let e =
                    fforacle::enumerate_r_planes(&[&f, &g], &field, r, budget)?;
                out["planes"] = json!({"r": r, "count": e.count, "witnesses": e.witnesses});
            }
            if !count_points && planes.is_none() {
                out["census"] = json!(fforacle::verify_ff_propositions(&pencil, p)?);
            }
            Ok(out)
        }
        Command::Verify {
            theorem,
            samples,
            seed,
            n,
            coeff_bound,
            height_bound,
            places,
        } => {
            let mut spec = CampaignSpec::new(TheoremId::parse(&theorem)?, samples, seed);
            if let Some(n) = n {
                spec.n = n;
            }
            if let Some(b) = coeff_bound {
                spec.coeff_bound = b;
            }
            if let Some(h) = height_bound {
                spec.height_bound = h;
            }
            if let Some(p) = places {
                spec.places = parse_places(&p)?;
            }
            let report = harness::verify(&spec)?;
            let failed = report.campaign_failed();
            let value = serde_json::to_value(&report).unwrap();
            if failed {
                // signal to main via a marker the serializer does not emit
                return Ok(json!({"__campaign_failed": true, "report": value}));
            }
            Ok(value)
        }
        Command::Generate {
            n,
            seed,
            coeff_bound,
            has_rational_point,
        } => {
            let constraints: Vec<Constraint> = if has_rational_point {
                vec![Constraint::HasRationalPoint]
            } else {
                vec![]
            };
            let pencil = harness::generate_smooth_pencil(n, coeff_bound, seed, &constraints)?;
            Ok(json!(pencil))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(value) => {
            if value.get("__campaign_failed").is_some() {
                println!("{}", serde_json::to_string_pretty(&value["report"]).unwrap());
                ExitCode::from(1)
            } else {
                println!("{}", serde_json::to_string_pretty(&value).unwrap());
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
