//! Left-invariant Riemannian geometry on nilpotent Lie algebras.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exterior::{Form, Metric, Vector};
use crate::liealg::LieAlgebra;
use crate::linalg::{self, Matrix};
use crate::parse::{parse_poly, parse_scalar};
use crate::poly::{PolyK, RatFunK, Var};
use crate::scalar::ScalarK;

/// The algebra rewritten in a metric-orthonormal basis.
#[derive(Clone, Debug)]
pub struct OrthonormalFrame {
    /// Columns are the orthonormal vectors in the original basis.
    pub basis: Matrix<ScalarK>,
    pub algebra: LieAlgebra,
}

pub fn orthonormal_frame(g: &LieAlgebra, metric: &Metric) -> Result<OrthonormalFrame> {
    let n = g.dim();
    if metric.dim() != n {
        return Err(Error::DimMismatch { expected: n, found: metric.dim() });
    }
    if metric.is_identity() {
        return Ok(OrthonormalFrame { basis: linalg::identity(n), algebra: g.clone() });
    }
    if !metric.is_positive_definite() {
        return Err(Error::DegenerateMetric);
    }
    let mut frame: Vec<Vector<ScalarK>> = Vec::with_capacity(n);
    for i in 1..=n {
        let mut v = Vector::basis(n, i);
        for u in &frame {
            let c = metric.inner(&v, u);
            v = Vector::new(v.coords().iter().zip(u.coords()).map(|(a, b)| a.sub_ref(&c.mul_ref(b))).collect());
        }
        let len2 = metric.inner(&v, &v);
        let len = len2.sqrt().ok_or_else(|| Error::IrrationalGramSchmidt(len2.to_string()))?;
        let inv = len.inverse()?;
        frame.push(v.map(|c| c.mul_ref(&inv)));
    }
    let cols: Matrix<ScalarK> = frame.iter().map(|v| v.coords().to_vec()).collect();
    let basis = linalg::transpose(&cols);
    let algebra = g.change_basis(&basis)?;
    Ok(OrthonormalFrame { basis, algebra })
}

/// Ricci operator in a metric-orthonormal basis.
pub fn ricci(g: &LieAlgebra, metric: &Metric) -> Result<Matrix<ScalarK>> {
    g.nilpotency_step()?;
    let frame = orthonormal_frame(g, metric)?;
    Ok(ricci_orthonormal(&frame.algebra))
}

fn ricci_orthonormal(g: &LieAlgebra) -> Matrix<ScalarK> {
    let n = g.dim();
    let c = |i: usize, j: usize, k: usize| g.structure_constant(i + 1, j + 1, k + 1);
    let mut ric = linalg::zeros(n, n);
    for a in 0..n {
        for b in a..n {
            let mut s = ScalarK::zero();
            for i in 0..n {
                for j in 0..n {
                    let first = c(a, i, j).mul_ref(&c(b, i, j)).scale_rational(&-half());
                    let second = c(i, j, a).mul_ref(&c(i, j, b)).scale_rational(&quarter());
                    s = s.add_ref(&first).add_ref(&second);
                }
            }
            ric[a][b] = s.clone();
            ric[b][a] = s;
        }
    }
    ric
}

fn half() -> num_rational::BigRational {
    num_rational::BigRational::new(1.into(), 2.into())
}

fn quarter() -> num_rational::BigRational {
    num_rational::BigRational::new(1.into(), 4.into())
}

/// Derivation defect D[e_i,e_j] − [De_i,e_j] − [e_i,De_j] for every i < j (one-based), zero entries omitted.
pub fn derivation_defect(g: &LieAlgebra, d: &Matrix<ScalarK>) -> Vec<((usize, usize), Vector<ScalarK>)> {
    let n = g.dim();
    let image = |i: usize| Vector::new((0..n).map(|r| d[r][i - 1].clone()).collect());
    let apply = |v: &Vector<ScalarK>| Vector::new(linalg::mat_vec(d, v.coords()));
    let mut out = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            let lhs = apply(&g.bracket_basis(i, j));
            let r1 = g.bracket(&image(i), &Vector::basis(n, j));
            let r2 = g.bracket(&Vector::basis(n, i), &image(j));
            let defect: Vec<ScalarK> = (0..n)
                .map(|k| lhs.coords()[k].sub_ref(&r1.coords()[k]).sub_ref(&r2.coords()[k]))
                .collect();
            if defect.iter().any(|x| !x.is_zero()) {
                out.push(((i, j), Vector::new(defect)));
            }
        }
    }
    out
}

pub fn is_derivation(g: &LieAlgebra, d: &Matrix<ScalarK>) -> bool {
    derivation_defect(g, d).is_empty()
}

#[derive(Clone, Debug, PartialEq)]
pub struct NilsolitonReport {
    pub ricci: Matrix<ScalarK>,
    pub lambda: Option<ScalarK>,
    pub derivation: Option<Matrix<ScalarK>>,
    pub residual: Vec<((usize, usize), Vector<ScalarK>)>,
}

impl NilsolitonReport {
    pub fn is_nilsoliton(&self) -> bool {
        self.lambda.is_some() && self.residual.is_empty()
    }
}

pub fn nilsoliton_check(g: &LieAlgebra, metric: &Metric) -> Result<NilsolitonReport> {
    g.nilpotency_step()?;
    let frame = orthonormal_frame(g, metric)?;
    let alg = &frame.algebra;
    let ric = ricci_orthonormal(alg);
    let n = alg.dim();
    // The defect of Ric − λI is defect(Ric) + λ·[e_i, e_j].
    let base = derivation_defect(alg, &ric);
    let mut lambda: Option<ScalarK> = None;
    'search: for ((i, j), v) in &base {
        for k in 0..n {
            let c = alg.structure_constant(*i, *j, k + 1);
            if !c.is_zero() {
                lambda = Some(v.coords()[k].neg_ref().div_ref(&c)?);
                break 'search;
            }
        }
    }
    if lambda.is_none() && base.is_empty() {
        lambda = Some(if ric.iter().all(|r| r.iter().all(ScalarK::is_zero)) { ScalarK::zero() } else { ric[0][0].clone() });
    }
    let Some(lam) = lambda else {
        return Ok(NilsolitonReport { ricci: ric, lambda: None, derivation: None, residual: base });
    };
    let mut d = ric.clone();
    for (i, row) in d.iter_mut().enumerate() {
        row[i] = row[i].sub_ref(&lam);
    }
    let residual = derivation_defect(alg, &d);
    if residual.is_empty() {
        Ok(NilsolitonReport { ricci: ric, lambda: Some(lam), derivation: Some(d), residual })
    } else {
        Ok(NilsolitonReport { ricci: ric, lambda: None, derivation: None, residual })
    }
}

/// Scale between the 2-form defining the contact endomorphism and dη.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ContactScale {
    /// g(φ̂X, Y) = ½ dη(X, Y)
    Half,
    /// g(φ̂X, Y) = dη(X, Y)
    Full,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ContactReport {
    pub eta: Form<ScalarK>,
    pub xi: Vector<ScalarK>,
    pub volume: Form<ScalarK>,
    pub endomorphism: Matrix<ScalarK>,
    /// φ̂² − (−Id + η⊗ξ); zero exactly for a contact metric structure.
    pub defect: Matrix<ScalarK>,
    pub contact_metric: bool,
    pub k_contact: bool,
}

impl ContactReport {
    pub fn is_contact(&self) -> bool {
        !self.volume.is_zero()
    }
}

/// Levi-Civita connection: entry [i][j] is ∇_{e_i} e_j, with the Koszul formula.
pub fn levi_civita(g: &LieAlgebra, metric: &Metric) -> Result<Vec<Vec<Vector<ScalarK>>>> {
    let n = g.dim();
    let ginv = metric.inverse()?;
    let e = |i: usize| Vector::basis(n, i);
    let mut nabla = vec![vec![Vector::zero(n); n]; n];
    for i in 1..=n {
        for j in 1..=n {
            // 2g(∇_Y X, Z) = g([Y,X],Z) − g([X,Z],Y) + g([Z,Y],X) with Y = e_i, X = e_j.
            let lowered: Vec<ScalarK> = (1..=n)
                .map(|k| {
                    metric
                        .inner(&g.bracket_basis(i, j), &e(k))
                        .sub_ref(&metric.inner(&g.bracket_basis(j, k), &e(i)))
                        .add_ref(&metric.inner(&g.bracket_basis(k, i), &e(j)))
                        .scale_rational(&half())
                })
                .collect();
            nabla[i - 1][j - 1] = Vector::new(linalg::mat_vec(&ginv, &lowered));
        }
    }
    Ok(nabla)
}

pub fn contact_check(g: &LieAlgebra, metric: &Metric, xi: &Vector<ScalarK>, scale: ContactScale) -> Result<ContactReport> {
    let n = g.dim();
    let norm = metric.inner(xi, xi);
    if !norm.is_one() {
        return Err(Error::NotUnit(norm.to_string()));
    }
    let eta = metric.flat(xi);
    let deta = g.d(&eta);
    let volume = eta.wedge(&deta.wedge_pow(((n - 1) / 2) as u32));
    let factor = match scale {
        ContactScale::Half => ScalarK::frac(1, 2),
        ContactScale::Full => ScalarK::one(),
    };
    let omega: Matrix<ScalarK> = (1..=n)
        .map(|a| (1..=n).map(|b| two_form_value(&deta, a, b).mul_ref(&factor)).collect())
        .collect();
    // g(φ̂ e_a, e_b) = Ω_ab, so φ̂ = G⁻¹ Ωᵀ.
    let phi = linalg::mat_mul(&metric.inverse()?, &linalg::transpose(&omega));
    let eta_vec: Vec<ScalarK> = (1..=n).map(|i| eta.coeff_of(&[i])).collect();
    let mut target: Matrix<ScalarK> = linalg::identity::<ScalarK>(n).iter().map(|r| r.iter().map(|x| x.neg_ref()).collect()).collect();
    for (i, row) in target.iter_mut().enumerate() {
        for (j, x) in row.iter_mut().enumerate() {
            *x = x.add_ref(&xi.coords()[i].mul_ref(&eta_vec[j]));
        }
    }
    let defect = linalg::mat_sub(&linalg::mat_mul(&phi, &phi), &target);
    let contact_metric = !volume.is_zero() && linalg::is_zero_matrix(&defect);
    let nabla = levi_civita(g, metric)?;
    let nabla_xi: Vec<Vector<ScalarK>> = (1..=n)
        .map(|y| {
            let mut acc = vec![ScalarK::zero(); n];
            for (j, c) in xi.coords().iter().enumerate() {
                for (slot, v) in acc.iter_mut().zip(nabla[y - 1][j].coords()) {
                    *slot = slot.add_ref(&c.mul_ref(v));
                }
            }
            Vector::new(acc)
        })
        .collect();
    let k_contact = (1..=n).all(|y| {
        (1..=n).all(|z| {
            let a = metric.inner(&nabla_xi[y - 1], &Vector::basis(n, z));
            let b = metric.inner(&nabla_xi[z - 1], &Vector::basis(n, y));
            a.add_ref(&b).is_zero()
        })
    });
    Ok(ContactReport { eta, xi: xi.clone(), volume, endomorphism: phi, defect, contact_metric, k_contact })
}

fn two_form_value(w: &Form<ScalarK>, a: usize, b: usize) -> ScalarK {
    match a.cmp(&b) {
        std::cmp::Ordering::Equal => ScalarK::zero(),
        std::cmp::Ordering::Less => w.coeff_of(&[a, b]),
        std::cmp::Ordering::Greater => w.coeff_of(&[b, a]).neg_ref(),
    }
}

/// One elimination step. Equations are referred to by tag.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "step", rename_all = "snake_case")]
pub enum Step {
    /// Fix a variable to a constant, e.g. 2a = 1 as var = "a", value = "1/2".
    Normalize { var: String, value: String },
    /// Solve the tagged equation for a variable occurring linearly.
    Solve { equation: String, var: String },
    /// Substitute an explicit polynomial for a variable.
    Substitute { var: String, value: String },
}

#[derive(Clone, Debug, PartialEq)]
pub enum Verdict {
    NoRealSolution { equation: String, polynomial: PolyK },
    Inconclusive,
    SolutionFound(BTreeMap<Var, RatFunK>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct EliminationReport {
    pub verdict: Verdict,
    pub history: Vec<Vec<(String, PolyK)>>,
    pub bindings: BTreeMap<Var, RatFunK>,
}

fn substitute_all(system: &mut Vec<(String, PolyK)>, b: &BTreeMap<Var, RatFunK>) -> Result<()> {
    for (_, p) in system.iter_mut() {
        let r = p.substitute(b)?;
        *p = r.normalize().numer().clone();
    }
    system.retain(|(_, p)| !p.is_zero());
    Ok(())
}

fn compose(bindings: &mut BTreeMap<Var, RatFunK>, new: &BTreeMap<Var, RatFunK>) -> Result<()> {
    for r in bindings.values_mut() {
        let num = r.numer().substitute(new)?;
        let den = r.denom().substitute(new)?;
        *r = num.mul_ref(&den.inverse()?).normalize();
    }
    bindings.extend(new.iter().map(|(k, v)| (k.clone(), v.clone())));
    Ok(())
}

fn no_real_solution(p: &PolyK) -> bool {
    let stripped = p.div_monomial(&p.monomial_content()).unwrap_or_else(|| p.clone());
    stripped.total_degree() > 0 && stripped.is_sum_of_even_powers_plus_constant()
}

pub fn elimination_check(system: &[(String, PolyK)], script: &[Step]) -> Result<EliminationReport> {
    let mut current: Vec<(String, PolyK)> = system.iter().filter(|(_, p)| !p.is_zero()).cloned().collect();
    let mut history = vec![current.clone()];
    let mut bindings: BTreeMap<Var, RatFunK> = BTreeMap::new();
    for step in script {
        let new = match step {
            Step::Normalize { var, value } => {
                BTreeMap::from([(Var::new(var), RatFunK::from_poly(PolyK::constant(parse_scalar(value)?)))])
            }
            Step::Substitute { var, value } => BTreeMap::from([(Var::new(var), RatFunK::from_poly(parse_poly(value)?))]),
            Step::Solve { equation, var } => {
                let v = Var::new(var);
                let pos = current
                    .iter()
                    .position(|(t, _)| t == equation)
                    .ok_or_else(|| Error::UnknownEquation(equation.clone()))?;
                let p = current.remove(pos).1;
                if p.degree_in(&v) != 1 {
                    return Err(Error::StepNotLinear { equation: equation.clone(), var: var.clone() });
                }
                let a = p.coeff_of_power(&v, 1);
                if a.variables().contains(&v) {
                    return Err(Error::StepNotLinear { equation: equation.clone(), var: var.clone() });
                }
                if !a.is_constant() && !a.is_sum_of_even_powers_plus_constant() {
                    let forced = current.iter().any(|(_, q)| q.div_exact(&a).is_some_and(|m| m.is_constant()));
                    if forced {
                        return Err(Error::DenominatorVanishesOnConstraint(a.to_string()));
                    }
                }
                let b = p.coeff_of_power(&v, 0);
                BTreeMap::from([(v, RatFunK::new(b.neg_ref(), a)?.normalize())])
            }
        };
        substitute_all(&mut current, &new)?;
        compose(&mut bindings, &new)?;
        history.push(current.clone());
        if let Some((tag, p)) = current.iter().find(|(_, p)| p.is_constant()) {
            return Ok(EliminationReport {
                verdict: Verdict::NoRealSolution { equation: tag.clone(), polynomial: p.clone() },
                history,
                bindings,
            });
        }
    }
    if let Some((tag, p)) = current.iter().find(|(_, p)| no_real_solution(p)) {
        let verdict = Verdict::NoRealSolution { equation: tag.clone(), polynomial: p.clone() };
        return Ok(EliminationReport { verdict, history, bindings });
    }
    let verdict = if current.is_empty() { Verdict::SolutionFound(bindings.clone()) } else { Verdict::Inconclusive };
    Ok(EliminationReport { verdict, history, bindings })
}
