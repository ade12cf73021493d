//! Runs every catalog check and renders the results.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::catalog::{coframe_rows, find, CatalogEntry};
use crate::curvature::{self, ContactScale, Verdict};
use crate::error::Result;
use crate::exterior::{Blade, Form, LinearMap, Metric};
use crate::liealg::LieAlgebra;
use crate::obstructions::{self, BlockStructureProof, Obs3Case, ObstructionCertificate};
use crate::parse::{parse_form, parse_poly, parse_scalar, parse_vector};
use crate::poly::{PolyK, Var};
use crate::scalar::ScalarK;
use crate::stability::{self, Classification};
use crate::structures::{self, BryantWeight, G2Structure};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Flagged,
    Fail,
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Flagged => "FLAG",
            Status::Fail => "FAIL",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Record {
    pub entry: String,
    pub check: String,
    pub status: Status,
    pub detail: String,
}

impl Record {
    pub fn new(entry: &str, check: &str, status: Status, detail: impl Into<String>) -> Self {
        Record { entry: entry.into(), check: check.into(), status, detail: detail.into() }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct VerificationReport {
    pub records: Vec<Record>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Records,
}

impl VerificationReport {
    pub fn new(mut records: Vec<Record>) -> Self {
        records.sort_by(|a, b| (&a.entry, &a.check).cmp(&(&b.entry, &b.check)));
        VerificationReport { records }
    }

    pub fn count(&self, s: Status) -> usize {
        self.records.iter().filter(|r| r.status == s).count()
    }

    /// 0 when nothing failed (and, under `strict`, nothing was flagged), else 1.
    pub fn exit_code(&self, strict: bool) -> i32 {
        let bad = self.count(Status::Fail) + if strict { self.count(Status::Flagged) } else { 0 };
        i32::from(bad > 0)
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => {
                let mut out = String::from("entry\tcheck\tstatus\tdetail\n");
                for r in &self.records {
                    out.push_str(&format!("{}\t{}\t{}\t{}\n", r.entry, r.check, r.status, r.detail));
                }
                out
            }
            Format::Records => self
                .records
                .iter()
                .map(|r| serde_json::to_string(r).expect("records serialize") + "\n")
                .collect(),
        }
    }
}

fn status_if(ok: bool) -> Status {
    if ok {
        Status::Pass
    } else {
        Status::Fail
    }
}

fn form_diff<C: crate::coeff::Coeff + std::fmt::Display>(printed: &Form<C>, computed: &Form<C>) -> String {
    let blades: BTreeSet<Blade> = printed.terms().chain(computed.terms()).map(|(b, _)| *b).collect();
    let diffs: Vec<String> = blades
        .into_iter()
        .filter(|b| printed.coeff(*b) != computed.coeff(*b))
        .map(|b| format!("e{}: printed {} computed {}", b.word(), printed.coeff(b), computed.coeff(b)))
        .collect();
    diffs.join("; ")
}

fn standard_psi() -> Form<ScalarK> {
    parse_form("1234+1256+1367+1457+2357-2467+3456", 7).expect("standard 4-form")
}

fn coframe_map(rows: &[String], dim: usize) -> Result<LinearMap> {
    LinearMap::from_coframe(&coframe_rows(rows, dim)?)
}

fn check_step(e: &CatalogEntry) -> Record {
    match (e.algebra.nilpotency_step(), e.raw.tags.step) {
        (Ok(s), Some(t)) => Record::new(e.id(), "step", status_if(s == t), format!("computed {s}, tagged {t}")),
        (Ok(s), None) => Record::new(e.id(), "step", Status::Pass, format!("computed {s}")),
        (Err(err), _) => Record::new(e.id(), "step", Status::Fail, err.to_string()),
    }
}

/// Rank of the span of a parametrised form, one row per parameter.
fn parameter_rank(f: &Form<PolyK>) -> Option<usize> {
    let vars: BTreeSet<Var> = f.terms().flat_map(|(_, c)| c.variables()).collect();
    let blades: Vec<Blade> = f.terms().map(|(b, _)| *b).collect();
    let mut rows = Vec::new();
    for v in &vars {
        let mut row = Vec::with_capacity(blades.len());
        for b in &blades {
            let c = f.coeff(*b);
            if c.total_degree() > 1 || c.coeff_of_power(v, 0).variables().contains(v) {
                return None;
            }
            row.push(c.coeff_of_power(v, 1).as_constant()?);
        }
        rows.push(row);
    }
    Some(if rows.is_empty() { 0 } else { crate::linalg::rank(&rows) })
}

fn check_closed_forms(e: &CatalogEntry) -> Option<Record> {
    let data = e.raw.closed_forms.as_ref()?;
    let closed = e.algebra.closed_forms(data.degree);
    let dim = closed.dimension();
    if dim != data.dimension {
        return Some(Record::new(e.id(), "closed-forms", Status::Fail, format!("dim {dim}, expected {}", data.dimension)));
    }
    let Some(text) = &data.printed else {
        return Some(Record::new(e.id(), "closed-forms", Status::Pass, format!("dim {dim}")));
    };
    let printed: Form<PolyK> = match parse_form(text, e.dim()) {
        Ok(p) => p,
        Err(err) => return Some(Record::new(e.id(), "closed-forms", Status::Fail, err.to_string())),
    };
    if printed == closed.assembled {
        return Some(Record::new(e.id(), "closed-forms", Status::Pass, format!("dim {dim}, printed expression reproduced")));
    }
    let is_closed = e.algebra.d(&printed).is_zero();
    let rank = parameter_rank(&printed);
    Some(if is_closed && rank == Some(dim) {
        Record::new(e.id(), "closed-forms", Status::Pass, format!("dim {dim}, printed expression spans the same space with another parametrisation"))
    } else {
        Record::new(
            e.id(),
            "closed-forms",
            Status::Flagged,
            format!(
                "dim {dim}; printed form closed: {is_closed}, spans {}; differs at {}",
                rank.map_or("a non-linear family".into(), |r| format!("dimension {r}")),
                form_diff(&printed, &closed.assembled)
            ),
        )
    })
}

fn check_obs3(e: &CatalogEntry) -> Option<Record> {
    let cases = e.raw.obs3.as_ref()?;
    let expected = e.raw.expected.obs3.as_deref().unwrap_or("obstructed");
    let cert: Result<ObstructionCertificate> = cases
        .iter()
        .map(|c| {
            Ok(Obs3Case {
                guards: c.guards.iter().map(|g| Var::new(g)).collect(),
                x: parse_vector(&c.x, e.dim())?,
                y: parse_vector(&c.y, e.dim())?,
            })
        })
        .collect::<Result<Vec<_>>>()
        .map(|cases| ObstructionCertificate { cases });
    let outcome = cert.and_then(|c| obstructions::check_obs3(&e.algebra, &c));
    Some(match outcome {
        Ok(r) => {
            let ok = expected == "obstructed";
            let cases: Vec<String> = r.cases.iter().map(|c| format!("[{}] {}", c.guards.join(","), c.independence)).collect();
            Record::new(e.id(), "obs3", status_if(ok), format!("obstructed; {} cases: {}", r.cases.len(), cases.join("; ")))
        }
        Err(err) if expected == "obstructed" => {
            let found = obstructions::search_obs3(&e.algebra);
            match found.first() {
                Some((x, y)) => Record::new(
                    e.id(),
                    "obs3",
                    Status::Flagged,
                    format!("printed certificate fails ({err}); the pair X = {x}, Y = {y} satisfies the hypothesis"),
                ),
                None => Record::new(e.id(), "obs3", Status::Fail, err.to_string()),
            }
        }
        Err(err) => Record::new(e.id(), "obs3", Status::Pass, err.to_string()),
    })
}

fn check_block(e: &CatalogEntry) -> Option<Record> {
    let b = e.raw.block.as_ref()?;
    let proof = || -> Result<_> {
        let x = parse_vector(&b.x, e.dim())?;
        let sigma: Vec<usize> = b.sigma.chars().filter_map(|c| c.to_digit(10).map(|d| d as usize)).collect();
        let p = BlockStructureProof {
            x,
            zero_pattern: b.zero_pattern.iter().map(|[a, c]| (*a, *c)).collect(),
            w: b.w.clone(),
            sigma_word: sigma,
        };
        obstructions::check_block_structure(&e.algebra, &p)
    };
    let expected = e.raw.expected.block.as_deref().unwrap_or("obstructed");
    Some(match proof() {
        Ok(r) => Record::new(
            e.id(),
            "block",
            status_if(expected == "obstructed"),
            format!("obstructed; {} pattern entries vanish, W invariant, sigma coefficient 0", r.pattern_entries),
        ),
        Err(err) => Record::new(e.id(), "block", status_if(expected != "obstructed"), err.to_string()),
    })
}

fn check_existence(e: &CatalogEntry) -> Option<Record> {
    let f = e.raw.four_form.as_ref()?;
    let run = || -> Result<Record> {
        let printed: Form<ScalarK> = parse_form(&f.form, 7)?;
        let printed_closed = e.algebra.d(&printed).is_zero();
        let map = coframe_map(f.coframe.as_deref().unwrap_or_default(), 7)?;
        let phi = structures::standard_phi().pullback(&map)?;
        let class = stability::classify_3form_7d(&phi)?;
        let g = G2Structure::new(e.algebra.clone(), phi)?;
        let metric_ok = g.metric.entries() == &linalg_gram(&map);
        let star_ok = g.psi == printed && standard_psi().pullback(&map)? == printed;
        let exists = class == Classification::Positive && metric_ok && g.is_coclosed();
        let expected = e.raw.expected.existence.unwrap_or(true);
        let detail = format!(
            "coframe 3-form {class}, coclosed: {}; metric = coframe metric: {metric_ok}; printed 4-form closed: {printed_closed}, equals star(phi): {star_ok}",
            g.is_coclosed()
        );
        Ok(if exists != expected {
            Record::new(e.id(), "existence", Status::Fail, detail)
        } else if exists && !(star_ok && printed_closed) {
            Record::new(e.id(), "existence", Status::Flagged, format!("{detail}; {}", form_diff(&printed, &g.psi)))
        } else {
            Record::new(e.id(), "existence", Status::Pass, detail)
        })
    };
    Some(run().unwrap_or_else(|err| Record::new(e.id(), "existence", Status::Fail, err.to_string())))
}

/// The Gram matrix CᵀC of a coframe, i.e. the metric Σ (x^i)².
fn linalg_gram(map: &LinearMap) -> Vec<Vec<ScalarK>> {
    let c = map.entries();
    let n = map.cols();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| c.iter().fold(ScalarK::zero(), |acc, row| acc.add_ref(&row[i].mul_ref(&row[j]))))
                .collect()
        })
        .collect()
}

fn works(alg: &LieAlgebra, phi: &Form<ScalarK>) -> Option<structures::G2Report> {
    let r = structures::verify_g2(alg, phi).ok()?;
    (r.classification == Classification::Positive && r.coclosed && r.metric.is_identity()).then_some(r)
}

/// A coclosed structure with the standard metric among the forms the catalog offers for this entry.
fn rescue(e: &CatalogEntry, all: &[CatalogEntry]) -> Result<Option<(String, Form<ScalarK>)>> {
    let f = e.raw.three_form.as_ref().expect("three-form present");
    if let Some(rows) = &f.coframe {
        let phi = structures::standard_phi().pullback(&coframe_map(rows, 7)?)?;
        if works(&e.algebra, &phi).is_some() {
            return Ok(Some(("the 3-form defined by the printed coframe".into(), phi)));
        }
    }
    let mut others: Vec<&CatalogEntry> = all.iter().filter(|o| o.id() != e.id()).collect();
    others.sort_by_key(|o| o.raw.tags.section != e.raw.tags.section);
    for other in others {
        let Some(t) = &other.raw.three_form else { continue };
        let phi: Form<ScalarK> = parse_form(&t.form, 7)?;
        if works(&e.algebra, &phi).is_some() {
            return Ok(Some((format!("the 3-form printed for {}", other.id()), phi)));
        }
    }
    Ok(None)
}

fn check_three_form(e: &CatalogEntry, all: &[CatalogEntry]) -> Vec<Record> {
    let Some(f) = e.raw.three_form.as_ref() else {
        return Vec::new();
    };
    let run = || -> Result<Vec<Record>> {
        let printed: Form<ScalarK> = parse_form(&f.form, 7)?;
        let expected = e.raw.expected.coclosed.unwrap_or(true);
        let mut out = Vec::new();
        let report = structures::verify_g2(&e.algebra, &printed);
        let printed_ok = report.as_ref().is_ok_and(|r| r.classification == Classification::Positive && r.coclosed);
        let mut detail = match &report {
            Ok(r) => format!("printed form {}, coclosed: {}", r.classification, r.coclosed),
            Err(err) => format!("printed form: {err}"),
        };
        let mut status = status_if(printed_ok == expected);
        let mut chosen = report.ok();
        if let Some(rows) = &f.coframe {
            let from_coframe = structures::standard_phi().pullback(&coframe_map(rows, 7)?)?;
            if from_coframe == printed {
                detail.push_str("; equals the standard form in the printed coframe");
            } else {
                detail.push_str(&format!("; the printed coframe gives another 3-form: {}", form_diff(&printed, &from_coframe)));
                if status == Status::Pass {
                    status = Status::Flagged;
                }
            }
        }
        if !printed_ok && expected {
            if let Some((what, phi)) = rescue(e, all)? {
                detail.push_str(&format!("; {what} is coclosed with the standard metric: {phi}"));
                status = Status::Flagged;
                chosen = structures::verify_g2(&e.algebra, &phi).ok();
            }
        }
        out.push(Record::new(e.id(), "coclosed", status, detail));
        let want = e.raw.expected.metric_identity.unwrap_or(true);
        let metric = match &chosen {
            Some(r) => {
                let identity = r.metric.is_identity();
                let s = if identity == want && status == Status::Flagged { Status::Flagged } else { status_if(identity == want) };
                Record::new(e.id(), "metric", s, format!("induced metric is the identity: {identity}"))
            }
            None => Record::new(e.id(), "metric", Status::Fail, "no positive 3-form to induce a metric"),
        };
        out.push(metric);
        if let (Some(c), Some(r)) = (&e.raw.contact, &chosen) {
            if let Some(star_text) = &c.printed_star {
                let star: Form<ScalarK> = parse_form(star_text, 7)?;
                out.push(if star == r.star {
                    Record::new(e.id(), "printed-star", Status::Pass, "printed dual reproduced")
                } else {
                    Record::new(
                        e.id(),
                        "printed-star",
                        Status::Flagged,
                        format!("computed {} ({} terms), printed has {} terms; {}", r.star, r.star.len(), star.len(), form_diff(&star, &r.star)),
                    )
                });
            }
        }
        Ok(out)
    };
    run().unwrap_or_else(|err| vec![Record::new(e.id(), "coclosed", Status::Fail, err.to_string())])
}

fn rescaled_source(e: &CatalogEntry, all: &[CatalogEntry]) -> Result<Option<LieAlgebra>> {
    let Some(r) = &e.raw.rescaling else { return Ok(None) };
    let Some(src) = find(all, &r.from) else { return Ok(None) };
    let scales = r.scales.iter().map(|s| parse_scalar(s)).collect::<Result<Vec<_>>>()?;
    rescale(&src.algebra, &scales).map(Some)
}

fn check_nilsoliton(e: &CatalogEntry, all: &[CatalogEntry]) -> Option<Record> {
    let want = &e.raw.expected;
    if want.nilsoliton.is_none() && want.nilsoliton_lambda.is_none() {
        return None;
    }
    let judge = |g: &LieAlgebra| -> Result<(bool, String)> {
        let r = curvature::nilsoliton_check(g, &Metric::identity(g.dim()))?;
        let lam = r.lambda.as_ref().map_or("none".to_string(), ToString::to_string);
        let mut ok = r.is_nilsoliton() == want.nilsoliton.unwrap_or(true);
        if let Some(text) = &want.nilsoliton_lambda {
            ok &= parse_scalar(text).ok() == r.lambda;
        }
        let diag: Vec<String> = r.derivation.iter().flat_map(|d| d.iter().enumerate().map(|(i, row)| row[i].to_string())).collect();
        Ok((ok, format!("lambda {lam}; D diagonal [{}]", diag.join(", "))))
    };
    let run = || -> Result<Record> {
        let (ok, detail) = judge(&e.algebra)?;
        if ok {
            return Ok(Record::new(e.id(), "nilsoliton", Status::Pass, detail));
        }
        if let Some(g) = rescaled_source(e, all)? {
            let (ok2, detail2) = judge(&g)?;
            if ok2 {
                return Ok(Record::new(
                    e.id(),
                    "nilsoliton",
                    Status::Flagged,
                    format!("printed equations: {detail}; equations obtained by rescaling: {detail2}"),
                ));
            }
        }
        Ok(Record::new(e.id(), "nilsoliton", Status::Fail, detail))
    };
    Some(run().unwrap_or_else(|err| Record::new(e.id(), "nilsoliton", Status::Fail, err.to_string())))
}

/// Structure equations in the basis f^i = s_i e^i.
pub fn rescale(g: &LieAlgebra, scales: &[ScalarK]) -> Result<LieAlgebra> {
    let n = g.dim();
    let mut diff = Vec::with_capacity(n);
    for (k, de) in g.differentials().iter().enumerate() {
        let mut out = Form::zero(n);
        for (b, c) in de.terms() {
            let denom = b.indices().iter().fold(ScalarK::one(), |acc, &i| acc.mul_ref(&scales[i - 1]));
            out.add_term(*b, c.mul_ref(&scales[k]).div_ref(&denom)?);
        }
        diff.push(out);
    }
    LieAlgebra::new(diff)
}

fn check_rescaling(e: &CatalogEntry, all: &[CatalogEntry]) -> Option<Record> {
    let r = e.raw.rescaling.as_ref()?;
    let run = || -> Result<Record> {
        let Some(src) = find(all, &r.from) else {
            return Ok(Record::new(e.id(), "rescaling", Status::Fail, format!("unknown source entry {}", r.from)));
        };
        let scales = r.scales.iter().map(|s| parse_scalar(s)).collect::<Result<Vec<_>>>()?;
        let computed = rescale(&src.algebra, &scales)?;
        Ok(if computed == e.algebra {
            Record::new(e.id(), "rescaling", Status::Pass, format!("matches {} rescaled", r.from))
        } else {
            Record::new(e.id(), "rescaling", Status::Flagged, format!("printed {}, rescaling {} gives {}", e.algebra, r.from, computed))
        })
    };
    Some(run().unwrap_or_else(|err| Record::new(e.id(), "rescaling", Status::Fail, err.to_string())))
}

fn check_contact(e: &CatalogEntry) -> Option<Record> {
    let c = e.raw.contact.as_ref()?;
    let run = || -> Result<Record> {
        let xi = parse_vector(&c.xi, e.dim())?;
        let id = Metric::identity(e.dim());
        let full = curvature::contact_check(&e.algebra, &id, &xi, ContactScale::Full)?;
        let half = curvature::contact_check(&e.algebra, &id, &xi, ContactScale::Half)?;
        let w = &e.raw.expected;
        let ok = w.contact.is_none_or(|v| v == full.is_contact())
            && w.contact_metric.is_none_or(|v| v == full.contact_metric)
            && w.k_contact.is_none_or(|v| v == full.k_contact);
        Ok(Record::new(
            e.id(),
            "contact",
            status_if(ok),
            format!(
                "contact: {}; contact metric: {} (with the half differential: {}); K-contact: {}",
                full.is_contact(),
                full.contact_metric,
                half.contact_metric,
                full.k_contact
            ),
        ))
    };
    Some(run().unwrap_or_else(|err| Record::new(e.id(), "contact", Status::Fail, err.to_string())))
}

/// d(★φ) over the family, for the given weight.
pub fn bryant_dstar(e: &CatalogEntry, weight: BryantWeight) -> Result<Option<Form<PolyK>>> {
    let Some(b) = &e.raw.bryant else {
        return Ok(None);
    };
    let phi0: Form<ScalarK> = parse_form(&b.phi0, e.dim())?;
    let g0 = G2Structure::new(e.algebra.clone(), phi0)?;
    let a = parse_poly(&b.a)?;
    let alpha = b.alpha.iter().map(|s| parse_poly(s)).collect::<Result<Vec<_>>>()?;
    let star = structures::bryant_family(&g0, &a, &alpha, weight)?;
    Ok(Some(e.algebra.d(&star)))
}

fn check_bryant(e: &CatalogEntry) -> Vec<Record> {
    let Some(b) = &e.raw.bryant else {
        return Vec::new();
    };
    let run = || -> Result<Vec<Record>> {
        let mut out = Vec::new();
        let printed: Form<PolyK> = parse_form(&b.printed_dstar, e.dim())?;
        let dp = bryant_dstar(e, BryantWeight::Printed)?.expect("bryant data present");
        let dm = bryant_dstar(e, BryantWeight::MetricCompatible)?.expect("bryant data present");
        let rec = if printed == dp {
            Record::new(e.id(), "bryant-display", Status::Pass, format!("{} coefficients reproduced", dp.len()))
        } else if printed == dm {
            Record::new(e.id(), "bryant-display", Status::Flagged, "display matches quadratic weight 2, not the weight in the displayed formula")
        } else {
            Record::new(e.id(), "bryant-display", Status::Flagged, format!("differs at {}", form_diff(&printed, &dp)))
        };
        out.push(rec);
        if let Some(script) = &e.script {
            let system: Vec<(String, PolyK)> = dm.terms().map(|(b, c)| (format!("e{}", b.word()), c.clone())).collect();
            let want = e.raw.expected.elimination.as_deref().unwrap_or("no-real-solution");
            let report = curvature::elimination_check(&system, script)?;
            let (got, detail) = match &report.verdict {
                Verdict::NoRealSolution { equation, polynomial } => ("no-real-solution", format!("{equation}: {polynomial} = 0")),
                Verdict::Inconclusive => {
                    let remaining: Vec<String> = report.history.last().into_iter().flatten().map(|(t, p)| format!("{t}: {p}")).collect();
                    ("inconclusive", format!("remaining system after script: {}", remaining.join("; ")))
                }
                Verdict::SolutionFound(_) => ("solution-found", String::new()),
            };
            out.push(Record::new(e.id(), "elimination", status_if(got == want), format!("{got}; {detail}")));
        }
        Ok(out)
    };
    run().unwrap_or_else(|err| vec![Record::new(e.id(), "bryant-display", Status::Fail, err.to_string())])
}

pub fn verify_entry(e: &CatalogEntry, all: &[CatalogEntry]) -> Vec<Record> {
    let mut out = vec![Record::new(e.id(), "jacobi", status_if(e.algebra.jacobi_check()), "d^2 = 0")];
    out.push(check_step(e));
    out.extend(check_closed_forms(e));
    out.extend(check_obs3(e));
    out.extend(check_block(e));
    out.extend(check_existence(e));
    out.extend(check_three_form(e, all));
    out.extend(check_rescaling(e, all));
    out.extend(check_nilsoliton(e, all));
    out.extend(check_contact(e));
    out.extend(check_bryant(e));
    out
}

/// Cross-tabulates existence and nonexistence certificates against the expected partition.
pub fn partition_check(all: &[CatalogEntry], records: &[Record]) -> Record {
    let passed = |id: &str, check: &str| records.iter().any(|r| r.entry == id && r.check == check && r.status != Status::Fail);
    let mut problems = Vec::new();
    let (mut exist, mut absent, mut uncertified) = (Vec::new(), Vec::new(), Vec::new());
    for e in all {
        let Some(admits) = e.raw.expected.admits_coclosed else { continue };
        let certified_absent = passed(e.id(), "obs3") || passed(e.id(), "block");
        let certified_exists = passed(e.id(), "coclosed") || passed(e.id(), "existence");
        let two_step = e.algebra.nilpotency_step().ok() == Some(2);
        if admits {
            if certified_exists {
                exist.push(e.id().to_string());
            } else if two_step {
                problems.push(format!("{} is 2-step but has no existence certificate", e.id()));
            } else {
                uncertified.push(e.id().to_string());
            }
        } else if certified_absent {
            absent.push(e.id().to_string());
        } else {
            problems.push(format!("{} lacks a nonexistence certificate", e.id()));
        }
    }
    let detail = format!(
        "existence certified: {}; nonexistence certified: {}; listed as admitting, no certificate in the catalog: {}",
        exist.join(","),
        absent.join(","),
        uncertified.join(",")
    );
    if problems.is_empty() {
        Record::new("catalog", "partition", Status::Pass, detail)
    } else {
        Record::new("catalog", "partition", Status::Fail, format!("{detail}; {}", problems.join("; ")))
    }
}

/// All checks for the selected entries, evaluated in parallel and merged in order.
pub fn paper_verify(all: &[CatalogEntry], only: Option<&str>) -> VerificationReport {
    let selected: Vec<&CatalogEntry> = all.iter().filter(|e| only.is_none_or(|id| e.id() == id)).collect();
    let mut records: Vec<Record> = selected.par_iter().map(|e| verify_entry(e, all)).flatten().collect();
    if only.is_none() {
        let p = partition_check(all, &records);
        records.push(p);
    }
    VerificationReport::new(records)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_report_has_header_only() {
        let r = VerificationReport::default();
        assert_eq!(r.render(Format::Text).lines().count(), 1);
        assert_eq!(r.render(Format::Records), "");
        assert_eq!(r.exit_code(true), 0);
    }

    #[test]
    fn single_record_and_exit_codes() {
        let r = VerificationReport::new(vec![Record::new("x", "c", Status::Flagged, "d")]);
        assert_eq!(r.render(Format::Records).lines().count(), 1);
        assert!(r.render(Format::Records).contains("\"status\":\"flagged\""));
        assert_eq!(r.exit_code(false), 0);
        assert_eq!(r.exit_code(true), 1);
    }

    #[test]
    fn rescaling_heisenberg() {
        let g = crate::liealg::parse_algebra("(0,0,0,0,0,0,12+34+56)").unwrap();
        let mut s = vec![ScalarK::one(); 6];
        s.push(parse_scalar("1r6/6").unwrap());
        let f = rescale(&g, &s).unwrap();
        assert_eq!(f, crate::liealg::parse_algebra("(0,0,0,0,0,0,1r6/6*12+1r6/6*34+1r6/6*56)").unwrap());
    }
}
