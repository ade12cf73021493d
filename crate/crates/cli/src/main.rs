use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use g2calc::catalog::{self, CatalogEntry};
use g2calc::curvature::{self, ContactScale};
use g2calc::obstructions::{self, Obs1Outcome, Obs3Case, ObstructionCertificate};
use g2calc::parse::{parse_form, parse_vector};
use g2calc::stability::{self, Classification};
use g2calc::structures::{self, G2Structure, SU3Structure};
use g2calc::verify::{self, Format, Record, Status, VerificationReport};
use g2calc::{parse_algebra, Error, Form, LieAlgebra, Metric, ScalarK};

#[derive(Parser)]
#[command(name = "g2calc", version, about = "Exact verification of G2-structures on nilpotent Lie algebras")]
struct Cli {
    /// Treat flagged discrepancies as failures.
    #[arg(long, global = true)]
    strict: bool,
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: OutFormat,
    /// Seed for the sampling helpers.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, default_value_t = 200)]
    samples: usize,
    /// Catalog directory; defaults to the shipped catalog.
    #[arg(long, global = true)]
    catalog: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Text,
    Records,
}

#[derive(Subcommand)]
enum Command {
    /// Parse structure equations and check the Jacobi identity.
    Parse { equations: String },
    /// Generic closed k-form of an algebra.
    ClosedForms {
        /// Catalog id or structure equations.
        algebra: String,
        #[arg(long, default_value_t = 4)]
        degree: usize,
    },
    /// Stability class of a 3-form in dimension 6 or 7.
    Classify {
        #[arg(allow_hyphen_values = true)] form: String,
        #[arg(long, default_value_t = 7)]
        dim: usize,
    },
    /// Metric induced by a positive 3-form in dimension 7.
    Metric {
        #[arg(allow_hyphen_values = true)] form: String,
    },
    /// Positivity, closedness and coclosedness of a 3-form on an algebra.
    VerifyG2 {
        algebra: String,
        #[arg(allow_hyphen_values = true)] phi: String,
    },
    /// SU(3)-structure induced on the quotient by a central vector.
    Su3Reduce {
        algebra: String,
        #[arg(allow_hyphen_values = true)] phi: String,
        #[arg(long, default_value = "7")]
        x: String,
    },
    /// Coclosed G2-structure on h + R from a half-flat pair on h.
    HalfflatLift {
        algebra: String,
        #[arg(allow_hyphen_values = true)] omega: String,
        #[arg(allow_hyphen_values = true)] psi_minus: String,
    },
    /// Nonexistence certificate for coclosed structures.
    Obstruct {
        algebra: String,
        #[arg(long, requires = "y")]
        x: Option<String>,
        #[arg(long, requires = "x")]
        y: Option<String>,
        /// Sample λ(π_*(ι_X κ)) for the given central vector instead.
        #[arg(long, conflicts_with_all = ["x", "y"])]
        probe: Option<String>,
    },
    /// Block-structure argument stored in a catalog entry.
    BlockProof { entry: String },
    /// Ricci tensor and nilsoliton test for the metric Σ(e^i)².
    Nilsoliton { algebra: String },
    /// Contact, contact-metric and K-contact tests for ξ and the metric Σ(e^i)².
    Contact {
        algebra: String,
        #[arg(long, default_value = "7")]
        xi: String,
        /// Define the endomorphism from half the differential of η.
        #[arg(long)]
        half: bool,
    },
    /// Bryant family of a catalog entry and its elimination script.
    Bryant { entry: String },
    /// Every catalog check.
    PaperVerify {
        #[arg(long)]
        entry: Option<String>,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Syntax { .. }
            | Error::BadRadicand(_)
            | Error::IndexOutOfRange { .. }
            | Error::DuplicateIndex { .. }
            | Error::Catalog { .. } => 2,
            _ => 1,
        };
        Failure { code, message: e.to_string() }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: 2, message: message.into() }
}

struct Ctx {
    catalog: Vec<CatalogEntry>,
}

impl Ctx {
    fn entry(&self, id: &str) -> Result<&CatalogEntry, Failure> {
        catalog::find(&self.catalog, id).ok_or_else(|| usage(format!("unknown catalog entry {id}")))
    }

    /// A catalog id or literal structure equations.
    fn algebra(&self, text: &str) -> Result<(String, LieAlgebra), Failure> {
        match catalog::find(&self.catalog, text) {
            Some(e) => Ok((e.id().to_string(), e.algebra.clone())),
            None if text.trim_start().starts_with('(') => Ok((text.to_string(), parse_algebra(text)?)),
            None => Err(usage(format!("{text} is neither a catalog id nor structure equations"))),
        }
    }
}

fn pass_fail(ok: bool) -> Status {
    if ok {
        Status::Pass
    } else {
        Status::Fail
    }
}

fn run(cli: &Cli) -> Result<(Vec<String>, Vec<Record>), Failure> {
    let catalog = match &cli.catalog {
        Some(dir) => catalog::load_catalog(dir)?,
        None => catalog::load_shipped()?,
    };
    let ctx = Ctx { catalog };
    let mut info = Vec::new();
    let mut records = Vec::new();
    match &cli.command {
        Command::Parse { equations } => {
            let g = LieAlgebra::new(g2calc::parse::parse_structure_equations(equations)?)?;
            info.push(g.to_string());
            let failures = g.jacobi_failures();
            let detail = if failures.is_empty() { "d^2 = 0".to_string() } else { format!("d^2 e^k != 0 for k in {failures:?}") };
            records.push(Record::new(&g.to_string(), "jacobi", pass_fail(failures.is_empty()), detail));
        }
        Command::ClosedForms { algebra, degree } => {
            let (name, g) = ctx.algebra(algebra)?;
            if *degree > g.dim() {
                return Err(usage(format!("degree {degree} exceeds dimension {}", g.dim())));
            }
            let closed = g.closed_forms(*degree);
            info.push(format!("dim {}", closed.dimension()));
            for (lead, f) in &closed.basis {
                info.push(format!("  e{}: {}", lead.word(), f));
            }
            info.push(format!("generic: {}", closed.assembled));
            records.push(Record::new(&name, "closed-forms", Status::Pass, format!("dim {}", closed.dimension())));
        }
        Command::Classify { form, dim } => {
            let rho: Form<ScalarK> = parse_form(form, *dim)?;
            if rho.degree().is_some_and(|d| d != 3) {
                return Err(usage("expected a 3-form"));
            }
            let detail = match dim {
                6 => {
                    let lambda = stability::lambda_invariant(&rho)?;
                    let kind = if lambda.is_negative() {
                        "stable, lambda < 0"
                    } else if lambda.is_positive() {
                        "stable, lambda > 0"
                    } else {
                        "not stable"
                    };
                    format!("lambda {lambda}: {kind}")
                }
                7 => stability::classify_3form_7d(&rho)?.to_string(),
                _ => return Err(usage("classify supports dimensions 6 and 7")),
            };
            records.push(Record::new(form, "classify", Status::Pass, detail));
        }
        Command::Metric { form } => {
            let phi: Form<ScalarK> = parse_form(form, 7)?;
            let m = stability::induced_metric(&phi)?;
            for row in m.entries() {
                info.push(row.iter().map(ToString::to_string).collect::<Vec<_>>().join("\t"));
            }
            records.push(Record::new(form, "metric", Status::Pass, format!("identity: {}", m.is_identity())));
        }
        Command::VerifyG2 { algebra, phi } => {
            let (name, g) = ctx.algebra(algebra)?;
            let phi: Form<ScalarK> = parse_form(phi, g.dim())?;
            let r = structures::verify_g2(&g, &phi)?;
            info.push(format!("star phi = {}", r.star));
            records.push(Record::new(&name, "positive", pass_fail(r.classification == Classification::Positive), r.classification.to_string()));
            records.push(Record::new(&name, "closed", Status::Pass, r.closed.to_string()));
            records.push(Record::new(&name, "coclosed", Status::Pass, r.coclosed.to_string()));
            records.push(Record::new(&name, "metric", Status::Pass, format!("identity: {}", r.metric.is_identity())));
        }
        Command::Su3Reduce { algebra, phi, x } => {
            let (name, g) = ctx.algebra(algebra)?;
            let phi: Form<ScalarK> = parse_form(phi, g.dim())?;
            let x = parse_vector(x, g.dim())?;
            let s = G2Structure::new(g, phi)?;
            let red = structures::su3_reduce(&s, &x)?;
            info.push(format!("quotient {}", red.su3.algebra));
            info.push(format!("omega = {}", red.su3.omega));
            info.push(format!("psi- = {}", red.su3.psi_minus));
            let report = red.su3.verify();
            records.push(Record::new(&name, "su3", pass_fail(report.passed()), report.problems.join("; ")));
            records.push(Record::new(&name, "half-flat", Status::Pass, red.su3.is_half_flat().to_string()));
            if let Some(ok) = red.coclosed_identities {
                records.push(Record::new(&name, "coclosed-identities", pass_fail(ok), "d psi- = 0 and d sigma = psi- ^ d eta"));
            }
        }
        Command::HalfflatLift { algebra, omega, psi_minus } => {
            let (name, h) = ctx.algebra(algebra)?;
            let omega: Form<ScalarK> = parse_form(omega, h.dim())?;
            let psi: Form<ScalarK> = parse_form(psi_minus, h.dim())?;
            let s = SU3Structure::new(h, omega, psi)?;
            let g = structures::coclosed_from_half_flat(&s)?;
            info.push(format!("algebra {}", g.algebra));
            info.push(format!("phi = {}", g.phi));
            records.push(Record::new(&name, "coclosed", pass_fail(g.is_coclosed()), format!("star phi = {}", g.psi)));
        }
        Command::Obstruct { algebra, x, y, probe } => {
            let (name, g) = ctx.algebra(algebra)?;
            if let Some(v) = probe {
                let v = parse_vector(v, g.dim())?;
                let r = obstructions::obs1_probe(&g, &v, cli.samples, cli.seed)?;
                let rec = match r.outcome {
                    Obs1Outcome::Witness { point, lambda } => {
                        let nonzero: Vec<String> = point.iter().filter(|(_, c)| !c.is_zero()).map(|(v, c)| format!("{}={c}", v.name())).collect();
                        Record::new(&name, "probe", Status::Fail, format!("lambda {lambda} < 0 at {}", nonzero.join(",")))
                    }
                    Obs1Outcome::CandidateObstruction => {
                        Record::new(&name, "probe", Status::Flagged, format!("no negative lambda in {} samples (not a proof)", r.samples))
                    }
                };
                records.push(rec);
            } else {
                let cert = match (x, y, catalog::find(&ctx.catalog, algebra)) {
                    (Some(x), Some(y), _) => Some(ObstructionCertificate {
                        cases: vec![Obs3Case { guards: vec![], x: poly_vector(x, g.dim())?, y: poly_vector(y, g.dim())? }],
                    }),
                    (_, _, Some(e)) if e.raw.obs3.is_some() => {
                        let cases = e.raw.obs3.as_ref().unwrap();
                        Some(ObstructionCertificate {
                            cases: cases
                                .iter()
                                .map(|c| {
                                    Ok(Obs3Case {
                                        guards: c.guards.iter().map(|s| g2calc::Var::new(s)).collect(),
                                        x: poly_vector(&c.x, g.dim())?,
                                        y: poly_vector(&c.y, g.dim())?,
                                    })
                                })
                                .collect::<Result<_, Failure>>()?,
                        })
                    }
                    _ => None,
                };
                match cert {
                    Some(c) => match obstructions::check_obs3(&g, &c) {
                        Ok(r) => {
                            for c in &r.cases {
                                info.push(format!("case [{}]: {} identities, {}", c.guards.join(","), c.identities, c.independence));
                            }
                            records.push(Record::new(&name, "obs3", Status::Pass, format!("{} cases", r.cases.len())));
                        }
                        Err(e) => records.push(Record::new(&name, "obs3", Status::Fail, e.to_string())),
                    },
                    None => {
                        let found = obstructions::search_obs3(&g);
                        let detail = match found.first() {
                            Some((x, y)) => format!("X = {x}, Y = {y}"),
                            None => "no pair found".into(),
                        };
                        records.push(Record::new(&name, "obs3-search", pass_fail(!found.is_empty()), detail));
                    }
                }
            }
        }
        Command::BlockProof { entry } => {
            let e = ctx.entry(entry)?;
            if e.raw.block.is_none() {
                return Err(usage(format!("entry {entry} has no block-structure data")));
            }
            records.extend(verify::verify_entry(e, &ctx.catalog).into_iter().filter(|r| r.check == "block"));
        }
        Command::Nilsoliton { algebra } => {
            let (name, g) = ctx.algebra(algebra)?;
            let r = curvature::nilsoliton_check(&g, &Metric::identity(g.dim()))?;
            for row in &r.ricci {
                info.push(row.iter().map(ToString::to_string).collect::<Vec<_>>().join("\t"));
            }
            let detail = match &r.lambda {
                Some(l) => format!("lambda {l}"),
                None => "Ric - lambda Id is not a derivation for any lambda".into(),
            };
            records.push(Record::new(&name, "nilsoliton", pass_fail(r.is_nilsoliton()), detail));
        }
        Command::Contact { algebra, xi, half } => {
            let (name, g) = ctx.algebra(algebra)?;
            let xi = parse_vector(xi, g.dim())?;
            let scale = if *half { ContactScale::Half } else { ContactScale::Full };
            let r = curvature::contact_check(&g, &Metric::identity(g.dim()), &xi, scale)?;
            info.push(format!("eta = {}", r.eta));
            records.push(Record::new(&name, "contact", pass_fail(r.is_contact()), format!("eta ^ (d eta)^n = {}", r.volume)));
            records.push(Record::new(&name, "contact-metric", pass_fail(r.contact_metric), r.contact_metric.to_string()));
            records.push(Record::new(&name, "k-contact", pass_fail(r.k_contact), r.k_contact.to_string()));
        }
        Command::Bryant { entry } => {
            let e = ctx.entry(entry)?;
            if e.raw.bryant.is_none() {
                return Err(usage(format!("entry {entry} has no Bryant-family data")));
            }
            records.extend(
                verify::verify_entry(e, &ctx.catalog)
                    .into_iter()
                    .filter(|r| r.check == "bryant-display" || r.check == "elimination"),
            );
        }
        Command::PaperVerify { entry } => {
            if let Some(id) = entry {
                ctx.entry(id)?;
            }
            records = verify::paper_verify(&ctx.catalog, entry.as_deref()).records;
        }
    }
    Ok((info, records))
}

fn poly_vector(text: &str, dim: usize) -> Result<g2calc::Vector<g2calc::PolyK>, Failure> {
    Ok(parse_vector(text, dim)?)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((info, records)) => {
            let report = VerificationReport::new(records);
            let format = match cli.format {
                OutFormat::Text => {
                    for line in &info {
                        println!("{line}");
                    }
                    Format::Text
                }
                OutFormat::Records => Format::Records,
            };
            print!("{}", report.render(format));
            ExitCode::from(report.exit_code(cli.strict) as u8)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
