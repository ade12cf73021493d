//! Checkable nonexistence arguments for coclosed G₂-structures.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coeff::Coeff;
use crate::error::{Error, Result};
use crate::exterior::{blades, Blade, Form, Vector};
use crate::liealg::{GenericClosedForm, LieAlgebra};
use crate::poly::{PolyK, Var};
use crate::scalar::ScalarK;
use crate::stability;

#[derive(Clone, Debug)]
pub struct Obs3Case {
    /// Parameter names c_I; each asserts that the e^I coefficient of κ vanishes.
    pub guards: Vec<Var>,
    pub x: Vector<PolyK>,
    pub y: Vector<PolyK>,
}

#[derive(Clone, Debug)]
pub struct ObstructionCertificate {
    pub cases: Vec<Obs3Case>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CaseReport {
    pub guards: Vec<String>,
    /// Blade coefficients of (ι_X ι_Y κ)² verified to be the zero polynomial.
    pub identities: usize,
    /// How X ∧ Y ≠ 0 is certified on this case's region.
    pub independence: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Obs3Report {
    pub closed_dimension: usize,
    pub cases: Vec<CaseReport>,
}

fn word_blade(v: &Var) -> Result<Blade> {
    let name = v.name();
    let digits = name.strip_prefix('c').ok_or_else(|| Error::BadStep(format!("guard {name} is not c<word>")))?;
    let idx: Vec<usize> = digits
        .chars()
        .map(|ch| ch.to_digit(10).map(|d| d as usize).ok_or_else(|| Error::BadStep(format!("guard {name}"))))
        .collect::<Result<_>>()?;
    Ok(Blade::from_indices(&idx))
}

fn substitute_form(f: &Form<PolyK>, b: &BTreeMap<Var, PolyK>) -> Form<PolyK> {
    if b.is_empty() {
        return f.clone();
    }
    f.map(|p| p.substitute_poly(b))
}

fn substitute_vector(v: &Vector<PolyK>, b: &BTreeMap<Var, PolyK>) -> Vector<PolyK> {
    v.map(|p| p.substitute_poly(b))
}

/// Solves each linear guard constraint and returns the composed bindings.
pub fn guard_bindings(kappa: &Form<PolyK>, guards: &[Var]) -> Result<BTreeMap<Var, PolyK>> {
    let mut bindings: BTreeMap<Var, PolyK> = BTreeMap::new();
    for guard in guards {
        let g = kappa.coeff(word_blade(guard)?).substitute_poly(&bindings);
        if g.is_zero() {
            continue;
        }
        let vars = g.variables();
        let v = if vars.contains(guard) { guard.clone() } else { vars.iter().next_back().cloned().ok_or_else(|| {
            Error::CoverageGap(format!("guard {guard} forces the nonzero constant {g} to vanish"))
        })? };
        let a = g
            .coeff_of_power(&v, 1)
            .as_constant()
            .filter(|c| !c.is_zero() && g.degree_in(&v) == 1)
            .ok_or_else(|| Error::StepNotLinear { equation: guard.to_string(), var: v.to_string() })?;
        let rest = g.sub_ref(&PolyK::from_var(&v).scale(&a));
        let value = rest.scale(&a.inverse()?.neg_ref());
        let single = BTreeMap::from([(v.clone(), value.clone())]);
        for p in bindings.values_mut() {
            *p = p.substitute_poly(&single);
        }
        bindings.insert(v, value);
    }
    Ok(bindings)
}

fn wedge_vectors(x: &Vector<PolyK>, y: &Vector<PolyK>) -> Form<PolyK> {
    x.as_form().wedge(&y.as_form())
}

pub fn check_obs3(g: &LieAlgebra, cert: &ObstructionCertificate) -> Result<Obs3Report> {
    let closed = g.closed_forms(4);
    check_obs3_with(&closed, cert)
}

/// Checks a certificate against a given parametrization of the closed 4-forms.
pub fn check_obs3_with(closed: &GenericClosedForm, cert: &ObstructionCertificate) -> Result<Obs3Report> {
    let kappa = &closed.assembled;
    match cert.cases.last() {
        None => return Err(Error::CoverageGap("certificate has no cases".into())),
        Some(c) if !c.guards.is_empty() => {
            return Err(Error::CoverageGap("the final case must carry no guards".into()))
        }
        _ => {}
    }
    let mut reports = Vec::new();
    for (n, case) in cert.cases.iter().enumerate() {
        let b = guard_bindings(kappa, &case.guards)?;
        let k = substitute_form(kappa, &b);
        let x = substitute_vector(&case.x, &b);
        let y = substitute_vector(&case.y, &b);
        let two = k.contract(&y)?.contract(&x)?;
        let square = two.wedge(&two);
        if let Some((blade, c)) = square.terms().next() {
            return Err(Error::IdentityFails { case: n + 1, detail: format!("coefficient of e{} is {c}", blade.word()) });
        }
        let xy = wedge_vectors(&x, &y);
        let mut independence = None;
        for (blade, p) in xy.terms() {
            if let Some(c) = p.as_constant() {
                if !c.is_zero() {
                    independence = Some(format!("e{} coefficient {c}", blade.word()));
                    break;
                }
            }
            for earlier in cert.cases[..n].iter().filter(|c| c.guards.len() == 1) {
                let gp = k.coeff(word_blade(&earlier.guards[0])?);
                if gp.is_zero() {
                    continue;
                }
                if let Some(q) = p.div_exact(&gp) {
                    if q.is_constant() {
                        independence = Some(format!("e{} coefficient is a multiple of {}", blade.word(), earlier.guards[0]));
                        break;
                    }
                }
            }
            if independence.is_some() {
                break;
            }
        }
        let independence = independence.ok_or_else(|| {
            Error::CoverageGap(format!("case {}: X ^ Y = {xy} is not certified nonzero", n + 1))
        })?;
        reports.push(CaseReport {
            guards: case.guards.iter().map(|v| v.to_string()).collect(),
            identities: blades(7, 4).len(),
            independence,
        });
    }
    Ok(Obs3Report { closed_dimension: closed.dimension(), cases: reports })
}

/// Basis pairs (i, j), i < j, with (ι_{e_i} ι_{e_j} κ)² ≡ 0, plus two-term combinations
/// e_i ± e_k paired with a basis vector.
pub fn search_obs3(g: &LieAlgebra) -> Vec<(Vector<ScalarK>, Vector<ScalarK>)> {
    let closed = g.closed_forms(4);
    let n = g.dim();
    let kappa = &closed.assembled;
    let passes = |x: &Vector<ScalarK>, y: &Vector<ScalarK>| {
        let two = kappa.contract(&y.map(PolyK::from_scalar)).and_then(|f| f.contract(&x.map(PolyK::from_scalar)));
        matches!(two, Ok(t) if t.wedge(&t).is_zero())
    };
    let mut found = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            let (x, y) = (Vector::basis(n, i), Vector::basis(n, j));
            if passes(&x, &y) {
                found.push((x, y));
            }
        }
    }
    if found.is_empty() {
        for i in 1..=n {
            for k in i + 1..=n {
                for s in [ScalarK::one(), ScalarK::from_int(-1)] {
                    let mut c = vec![ScalarK::zero(); n];
                    c[i - 1] = ScalarK::one();
                    c[k - 1] = s.clone();
                    let x = Vector::new(c);
                    for j in (1..=n).filter(|&j| j != i && j != k) {
                        let y = Vector::basis(n, j);
                        if passes(&x, &y) {
                            found.push((x.clone(), y));
                        }
                    }
                }
            }
        }
    }
    found
}

#[derive(Clone, Debug)]
pub struct BlockStructureProof {
    pub x: Vector<ScalarK>,
    /// One-based (a, b) with K_ν[a][b] ≡ 0.
    pub zero_pattern: Vec<(usize, usize)>,
    /// One-based basis indices spanning W.
    pub w: Vec<usize>,
    pub sigma_word: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BlockReport {
    pub nu: Form<PolyK>,
    pub pattern_entries: usize,
    pub w_invariant: bool,
    pub sigma_coefficient: PolyK,
}

pub fn check_block_structure(g: &LieAlgebra, p: &BlockStructureProof) -> Result<BlockReport> {
    let closed = g.closed_forms(4);
    let tau = &closed.assembled;
    let q = g.quotient_by_central(&p.x)?;
    let x = p.x.map(PolyK::from_scalar);
    let nu = q.push_down(&tau.contract(&x)?)?.neg();
    let k = stability::k_matrix(&nu)?;
    for &(a, b) in &p.zero_pattern {
        let entry = &k[a - 1][b - 1];
        if !entry.is_zero() {
            return Err(Error::PatternFails(format!("K[{a}][{b}] = {entry}")));
        }
    }
    let h = g.dim() - 1;
    let w_invariant = (1..=h)
        .filter(|a| !p.w.contains(a))
        .all(|a| p.w.iter().all(|&b| k[a - 1][b - 1].is_zero()));
    if !w_invariant {
        return Err(Error::PatternFails("W is not K-invariant".into()));
    }
    let eta = (1..=g.dim()).fold(Form::zero(g.dim()), |acc, r| {
        acc.add(&Form::monomial(g.dim(), Blade::from_indices(&[r]), PolyK::var(&format!("C{r}"))))
    });
    let sigma = q.push_down(&tau.sub(&q.pull_up(&nu)?.wedge(&eta)))?;
    let coefficient = sigma.coeff(Blade::from_indices(&p.sigma_word));
    if !coefficient.is_zero() {
        return Err(Error::SigmaNonzero(coefficient.to_string()));
    }
    Ok(BlockReport { nu, pattern_entries: p.zero_pattern.len(), w_invariant, sigma_coefficient: coefficient })
}

#[derive(Clone, Debug, PartialEq)]
pub enum Obs1Outcome {
    /// Some sampled closed κ has λ(π_*(ι_X κ)) < 0.
    Witness { point: Vec<(Var, ScalarK)>, lambda: ScalarK },
    /// No sample was negative; this does not prove anything.
    CandidateObstruction,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Obs1Report {
    pub samples: usize,
    pub outcome: Obs1Outcome,
}

pub fn obs1_probe(g: &LieAlgebra, x: &Vector<ScalarK>, samples: usize, seed: u64) -> Result<Obs1Report> {
    let closed = g.closed_forms(4);
    let q = g.quotient_by_central(x)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for s in 0..samples {
        let point: Vec<(Var, ScalarK)> =
            closed.params.iter().map(|v| (v.clone(), ScalarK::from_int(rng.gen_range(-4..=4)))).collect();
        let kappa = closed
            .basis
            .iter()
            .zip(&point)
            .fold(Form::zero(g.dim()), |acc, ((_, f), (_, c))| acc.add(&f.scale_k(c)));
        let nu = q.push_down(&kappa.contract(x)?)?;
        let lambda = stability::lambda_invariant(&nu)?;
        if lambda.is_negative() {
            let _ = s;
            return Ok(Obs1Report { samples: s + 1, outcome: Obs1Outcome::Witness { point, lambda } });
        }
    }
    Ok(Obs1Report { samples, outcome: Obs1Outcome::CandidateObstruction })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::parse_algebra;
    use crate::parse::parse_vector;

    fn case(guards: &[&str], x: &str, y: &str) -> Obs3Case {
        Obs3Case {
            guards: guards.iter().map(|g| Var::new(g)).collect(),
            x: parse_vector(x, 7).unwrap(),
            y: parse_vector(y, 7).unwrap(),
        }
    }

    #[test]
    fn single_case_certificate() {
        let g2 = parse_algebra("(0,0,0,0,23,34,36)").unwrap();
        let cert = ObstructionCertificate { cases: vec![case(&[], "5", "7")] };
        let r = check_obs3(&g2, &cert).unwrap();
        assert_eq!(r.cases.len(), 1);
    }

    #[test]
    fn three_case_certificate() {
        let g1 = parse_algebra("(0,0,0,0,12,15,0)").unwrap();
        let cert = ObstructionCertificate {
            cases: vec![
                case(&["c2356"], "3", "6"),
                case(&["c2456"], "4", "6"),
                case(&[], "c2356*4 - c2456*3", "6"),
            ],
        };
        let r = check_obs3(&g1, &cert).unwrap();
        assert_eq!(r.closed_dimension, 27);
        assert!(r.cases[2].independence.contains("multiple of c2"), "{}", r.cases[2].independence);
        let broken = ObstructionCertificate { cases: vec![case(&[], "3", "6")] };
        assert!(matches!(check_obs3(&g1, &broken), Err(Error::IdentityFails { .. })));
        let gap = ObstructionCertificate { cases: vec![case(&["c2356"], "3", "6")] };
        assert!(matches!(check_obs3(&g1, &gap), Err(Error::CoverageGap(_))));
    }

    #[test]
    fn heisenberg_has_no_basis_certificate() {
        let h = parse_algebra("(0,0,0,0,0,0,12+34+56)").unwrap();
        let closed = h.closed_forms(4);
        for i in 1..=7 {
            for j in i + 1..=7 {
                let cert = ObstructionCertificate {
                    cases: vec![case(&[], &i.to_string(), &j.to_string())],
                };
                assert!(check_obs3_with(&closed, &cert).is_err(), "pair {i} {j}");
            }
        }
    }

    #[test]
    fn block_structure_for_l1() {
        let l1 = parse_algebra("(0,0,0,12,13-24,14+23,0)").unwrap();
        let mut pattern = Vec::new();
        for a in 1..=2 {
            for b in 3..=6 {
                pattern.push((a, b));
            }
        }
        for a in 3..=4 {
            for b in 5..=6 {
                pattern.push((a, b));
            }
        }
        let proof = BlockStructureProof { x: Vector::basis(7, 7), zero_pattern: pattern, w: vec![3, 4, 5, 6], sigma_word: vec![3, 4, 5, 6] };
        let r = check_block_structure(&l1, &proof).unwrap();
        assert!(r.w_invariant);
    }

    #[test]
    fn probe_finds_witnesses() {
        let abelian = LieAlgebra::abelian(7);
        let r = obs1_probe(&abelian, &Vector::basis(7, 7), 200, 7).unwrap();
        assert!(matches!(r.outcome, Obs1Outcome::Witness { .. }));
        let h = parse_algebra("(0,0,0,0,0,0,12+34+56)").unwrap();
        let r = obs1_probe(&h, &Vector::basis(7, 7), 500, 7).unwrap();
        assert!(matches!(r.outcome, Obs1Outcome::Witness { .. }));
    }
}
