//! Acceptance suite: one line per criterion.
//!
//! Each criterion resolves to PASS, FLAG or FAIL. FLAG means every
//! mathematical statement was re-established, but some printed catalog
//! value disagrees with the computed one. The process exits nonzero
//! when a criterion lands below its pinned outcome.

mod common;

use std::process::ExitCode;

use proptest::prelude::*;
use proptest::test_runner::TestRunner;

use common::*;
use g2calc::catalog::{load_shipped, CatalogEntry};
use g2calc::curvature::nilsoliton_check;
use g2calc::verify::{paper_verify, Record, Status, VerificationReport};
use g2calc::{LieAlgebra, Metric};

/// Absolute tolerance for the floating point Ricci oracle.
const ORACLE_TOL: f64 = 1e-9;

/// Outcome each criterion is expected to reach at least.
const PINNED: [(usize, Status); 10] = [
    (1, Status::Pass),
    (2, Status::Flagged),
    (3, Status::Flagged),
    (4, Status::Pass),
    (5, Status::Flagged),
    (6, Status::Flagged),
    (7, Status::Fail),
    (8, Status::Flagged),
    (9, Status::Pass),
    (10, Status::Pass),
];

struct Outcome {
    status: Status,
    detail: String,
}

fn worst<'a>(records: impl IntoIterator<Item = &'a Record>) -> (Status, Vec<String>, usize) {
    let mut status = Status::Pass;
    let mut notes = Vec::new();
    let mut n = 0;
    for r in records {
        n += 1;
        status = status.max(r.status);
        if r.status != Status::Pass {
            notes.push(format!("{} {} {}", r.entry, r.check, r.status));
        }
    }
    (status, notes, n)
}

fn from_records<'a>(records: impl IntoIterator<Item = &'a Record>, expected: usize) -> Outcome {
    let (mut status, notes, n) = worst(records);
    let mut detail = format!("{n} records");
    if n != expected {
        status = Status::Fail;
        detail.push_str(&format!(", expected {expected}"));
    }
    if !notes.is_empty() {
        detail.push_str(&format!("; {}", notes.join(", ")));
    }
    Outcome { status, detail }
}

fn select<'a>(report: &'a VerificationReport, ids: &'a [&str], checks: &'a [&str]) -> impl Iterator<Item = &'a Record> {
    report.records.iter().filter(move |r| ids.contains(&r.entry.as_str()) && checks.contains(&r.check.as_str()))
}

fn section<'a>(all: &'a [CatalogEntry], name: &str) -> Vec<&'a str> {
    all.iter().filter(|e| e.raw.tags.section == name).map(|e| e.id()).collect()
}

fn criterion_1(all: &[CatalogEntry], report: &VerificationReport) -> Outcome {
    from_records(report.records.iter().filter(|r| r.check == "jacobi"), all.len())
}

fn criterion_2(report: &VerificationReport) -> Outcome {
    let ids = ["g1", "g2", "g3", "g4", "g5", "g6", "g7", "g8", "l1", "l2", "l3", "27A", "27B"];
    from_records(select(report, &ids, &["closed-forms"]), ids.len())
}

fn criterion_3(report: &VerificationReport) -> Outcome {
    let ids = ["g1", "g2", "g3", "g4", "g5", "g6", "g7", "g8", "27A", "27B"];
    from_records(select(report, &ids, &["obs3"]), ids.len())
}

fn criterion_4(report: &VerificationReport) -> Outcome {
    let ids = ["l1", "l2", "l3"];
    from_records(select(report, &ids, &["block"]), ids.len())
}

fn criterion_5(report: &VerificationReport) -> Outcome {
    let ids = ["17", "37A", "37B", "37B1", "37C", "37D", "37D1"];
    from_records(select(report, &ids, &["existence"]), ids.len())
}

/// Levi-Civita connection of the identity metric in floating point.
///
/// Γ[i][j][k] is the e_k component of ∇_{e_i} e_j, from the Koszul formula
/// Γ_ij^k = ½ (c_ij^k − c_jk^i + c_ki^j).
fn christoffel(c: &[Vec<Vec<f64>>]) -> Vec<Vec<Vec<f64>>> {
    let n = c.len();
    let mut g = vec![vec![vec![0.0; n]; n]; n];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                g[i][j][k] = 0.5 * (c[i][j][k] - c[j][k][i] + c[k][i][j]);
            }
        }
    }
    g
}

/// Ricci tensor from R(X,Y)Z = ∇_X∇_Y Z − ∇_Y∇_X Z − ∇_[X,Y] Z.
fn numeric_ricci(alg: &LieAlgebra) -> Vec<Vec<f64>> {
    let n = alg.dim();
    let c: Vec<Vec<Vec<f64>>> = (0..n)
        .map(|i| (0..n).map(|j| (0..n).map(|k| alg.structure_constant(i + 1, j + 1, k + 1).to_f64()).collect()).collect())
        .collect();
    let gam = christoffel(&c);
    let nabla = |x: usize, v: &[f64]| -> Vec<f64> {
        let mut out = vec![0.0; n];
        for (j, vj) in v.iter().enumerate() {
            for k in 0..n {
                out[k] += vj * gam[x][j][k];
            }
        }
        out
    };
    let mut ric = vec![vec![0.0; n]; n];
    for y in 0..n {
        for z in 0..n {
            let mut s = 0.0;
            for x in 0..n {
                let nz_y = gam[y][z].clone();
                let nz_x = gam[x][z].clone();
                let mut r = vec![0.0; n];
                for (k, (a, b)) in nabla(x, &nz_y).iter().zip(nabla(y, &nz_x)).enumerate() {
                    r[k] = a - b;
                }
                for m in 0..n {
                    if c[x][y][m] != 0.0 {
                        for k in 0..n {
                            r[k] -= c[x][y][m] * gam[m][z][k];
                        }
                    }
                }
                s += r[x];
            }
            ric[y][z] = s;
        }
    }
    ric
}

/// Largest entry of D[e_i, e_j] − [D e_i, e_j] − [e_i, D e_j] in floating point.
fn numeric_defect(alg: &LieAlgebra, d: &[Vec<f64>]) -> f64 {
    let n = alg.dim();
    let c = |i: usize, j: usize, k: usize| alg.structure_constant(i + 1, j + 1, k + 1).to_f64();
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for j in i + 1..n {
            for k in 0..n {
                let mut v = 0.0;
                for m in 0..n {
                    v += d[k][m] * c(i, j, m) - d[m][i] * c(m, j, k) - d[m][j] * c(i, m, k);
                }
                worst = worst.max(v.abs());
            }
        }
    }
    worst
}

/// Compares the exact nilsoliton data of one algebra with the numeric oracle.
fn oracle_agrees(alg: &LieAlgebra) -> Result<String, String> {
    let n = alg.dim();
    let exact = nilsoliton_check(alg, &Metric::identity(n)).map_err(|e| e.to_string())?;
    let num = numeric_ricci(alg);
    let mut gap: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            gap = gap.max((exact.ricci[i][j].to_f64() - num[i][j]).abs());
        }
    }
    if gap > ORACLE_TOL {
        return Err(format!("Ricci differs by {gap:.3e}"));
    }
    let scal: f64 = (0..n).map(|i| num[i][i]).sum();
    let sq: f64 = num.iter().flatten().map(|x| x * x).sum();
    let lam = if scal == 0.0 { 0.0 } else { sq / scal };
    let mut d = num.clone();
    for (i, row) in d.iter_mut().enumerate() {
        row[i] -= lam;
    }
    let defect = numeric_defect(alg, &d);
    match &exact.lambda {
        Some(l) if (l.to_f64() - lam).abs() <= ORACLE_TOL && defect <= ORACLE_TOL => Ok(format!("lambda {l}")),
        Some(l) => Err(format!("exact lambda {l}, numeric {lam:.12} with defect {defect:.3e}")),
        None if defect > ORACLE_TOL => Ok("not a nilsoliton".into()),
        None => Err(format!("exact says no nilsoliton, numeric lambda {lam:.12} works")),
    }
}

fn criterion_6(all: &[CatalogEntry], report: &VerificationReport) -> Outcome {
    let mut ids = section(all, "nilsoliton");
    ids.extend(["n2", "n3", "n4", "n5", "n6", "n7", "n10"]);
    let mut out = from_records(select(report, &ids, &["coclosed", "metric", "nilsoliton"]), 3 * ids.len());
    let mut agreed = 0;
    let mut disagreements = Vec::new();
    for e in all.iter().filter(|e| ids.contains(&e.id())) {
        match oracle_agrees(&e.algebra) {
            Ok(_) => agreed += 1,
            Err(msg) => disagreements.push(format!("{}: {msg}", e.id())),
        }
    }
    let reference = all.iter().find(|e| e.id() == "17f").map(|e| oracle_agrees(&e.algebra));
    match reference {
        Some(Ok(msg)) if msg == "lambda -5/12" => agreed += 1,
        other => disagreements.push(format!("17f reference: {other:?}")),
    }
    out.detail.push_str(&format!("; numeric oracle agrees on {agreed} of {} algebras", ids.len() + 1));
    if !disagreements.is_empty() {
        out.status = Status::Fail;
        out.detail.push_str(&format!(" ({})", disagreements.join("; ")));
    }
    out
}

fn criterion_7(report: &VerificationReport) -> Outcome {
    let mut out = from_records(select(report, &["n8f"], &["bryant-display", "elimination"]), 2);
    if let Some(r) = select(report, &["n8f"], &["elimination"]).next() {
        let head: String = r.detail.split(';').next().unwrap_or_default().into();
        out.detail.push_str(&format!("; elimination verdict {head}"));
    }
    out
}

fn criterion_8(report: &VerificationReport) -> Outcome {
    from_records(select(report, &["kcontact"], &["contact", "coclosed", "metric", "printed-star"]), 4)
}

fn criterion_9(report: &VerificationReport) -> Outcome {
    from_records(report.records.iter().filter(|r| r.check == "partition"), 1)
}

fn run_property<S: Strategy>(
    name: &str,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String> {
    TestRunner::new(config()).run(&strategy, test).map_err(|e| format!("{name}: {e}"))
}

fn criterion_10() -> Outcome {
    let mut failures = Vec::new();
    let mut runs = vec![
        run_property("wedge", graded_pair(7), |(p, a, q, b)| wedge_commutes(p, &a, q, &b)),
        run_property("d", (0..53usize, graded_pair(7)), |(i, (p, a, _, b))| d_leibniz(i, p, &a, &b)),
        run_property("contraction", (vector(7), graded_pair(7)), |(x, (p, a, _, b))| contraction_leibniz(&x, p, &a, &b)),
        run_property(
            "double star",
            (prop::collection::vec(1i64..=4, 7), 0..=7usize, 6..=7usize),
            |(d, k, n)| double_star(&d, k, n),
        ),
        run_property("lambda parity", form(6, 3), |rho| lambda_even(&rho)),
        run_property("K squared", form(6, 3), |rho| k_squared(&rho)),
    ];
    let rs = reductions();
    let mut lifts = 0;
    for (name, r) in &rs {
        let lhs = r.su3.psi_plus().map(|pp| pp.wedge(&r.su3.psi_minus));
        let rhs = r.su3.omega.wedge_pow(3).scale_k(&g2calc::ScalarK::frac(2, 3));
        if lhs.as_ref().ok() != Some(&rhs) {
            runs.push(Err(format!("normalisation fails on {name}")));
        }
        if r.su3.is_half_flat() {
            match g2calc::structures::coclosed_from_half_flat(&r.su3) {
                Ok(g) if g.algebra.d(&g.psi).is_zero() => lifts += 1,
                _ => runs.push(Err(format!("half-flat lift fails on {name}"))),
            }
        }
    }
    for r in runs {
        if let Err(e) = r {
            failures.push(e);
        }
    }
    let mut detail = format!("6 properties x {} cases, {} reductions, {lifts} half-flat lifts", config().cases, rs.len());
    if !failures.is_empty() {
        detail.push_str(&format!("; {}", failures.join("; ")));
    }
    Outcome { status: if failures.is_empty() { Status::Pass } else { Status::Fail }, detail }
}

fn main() -> ExitCode {
    let all = load_shipped().expect("shipped catalog loads");
    let report = paper_verify(&all, None);
    let outcomes = [
        criterion_1(&all, &report),
        criterion_2(&report),
        criterion_3(&report),
        criterion_4(&report),
        criterion_5(&report),
        criterion_6(&all, &report),
        criterion_7(&report),
        criterion_8(&report),
        criterion_9(&report),
        criterion_10(),
    ];
    let mut regressions = 0;
    for ((n, pinned), o) in PINNED.iter().zip(&outcomes) {
        let regressed = o.status > *pinned;
        if regressed {
            regressions += 1;
        }
        let mark = if regressed { " REGRESSION" } else { "" };
        println!("criterion {n:>2}: {} (pinned {pinned}){mark}  {}", o.status, o.detail);
    }
    println!("oracle tolerance {ORACLE_TOL:e}; all other comparisons exact");
    if regressions == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
