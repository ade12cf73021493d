//! Lie algebras given by Chevalley–Eilenberg structure equations.
//!
//! `(…, 23, …)` in position k means d e^k = e^{23}. Brackets follow from
//! d e^k(e_i, e_j) = −e^k([e_i, e_j]), so [e_i, e_j] = −Σ_k (coefficient of e^{ij} in d e^k) e_k.

use std::collections::HashMap;
use std::fmt;

use crate::coeff::Coeff;
use crate::error::{Error, Result};
use crate::exterior::{blades, Blade, Form, LinearMap, Metric, Vector};
use crate::linalg::{self, Matrix};
use crate::parse;
use crate::poly::{PolyK, Var};
use crate::scalar::ScalarK;

#[derive(Clone)]
pub struct LieAlgebra {
    dim: usize,
    diff: Vec<Form<ScalarK>>,
    blade_d: HashMap<Blade, Form<ScalarK>>,
}

impl PartialEq for LieAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.diff == other.diff
    }
}

impl fmt::Debug for LieAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LieAlgebra{self}")
    }
}

impl fmt::Display for LieAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let entries: Vec<String> = self
            .diff
            .iter()
            .map(|d| d.to_string().replace(" + ", "+").replace(" - ", "-"))
            .collect();
        write!(f, "({})", entries.join(","))
    }
}

pub fn parse_algebra(text: &str) -> Result<LieAlgebra> {
    LieAlgebra::new(parse::parse_structure_equations(text)?)
}

impl LieAlgebra {
    pub fn new(diff: Vec<Form<ScalarK>>) -> Result<Self> {
        let dim = diff.len();
        for d in &diff {
            if d.dim() != dim {
                return Err(Error::DimMismatch { expected: dim, found: d.dim() });
            }
            if d.terms().any(|(b, _)| b.degree() != 2) {
                return Err(Error::WrongDegree { expected: 2, found: d.degree().unwrap_or(0) });
            }
        }
        let mut blade_d: HashMap<Blade, Form<ScalarK>> = HashMap::new();
        blade_d.insert(Blade(0), Form::zero(dim));
        let mut all: Vec<Blade> = (0..=dim).flat_map(|k| blades(dim, k)).collect();
        all.sort_by_key(|b| b.degree());
        for b in all.into_iter().skip(1) {
            let low = b.0.trailing_zeros() as usize;
            let rest = Blade(b.0 & !(1 << low));
            let ei = Form::monomial(dim, Blade(1 << low), ScalarK::one());
            let dr = blade_d[&rest].clone();
            let restf = Form::monomial(dim, rest, ScalarK::one());
            let v = diff[low].wedge(&restf).sub(&ei.wedge(&dr));
            blade_d.insert(b, v);
        }
        Ok(LieAlgebra { dim, diff, blade_d })
    }

    pub fn abelian(dim: usize) -> Self {
        Self::new(vec![Form::zero(dim); dim]).unwrap()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn differentials(&self) -> &[Form<ScalarK>] {
        &self.diff
    }

    /// The Chevalley–Eilenberg differential.
    pub fn d<C: Coeff>(&self, a: &Form<C>) -> Form<C> {
        self.try_d(a).expect("dimension mismatch")
    }

    pub fn try_d<C: Coeff>(&self, a: &Form<C>) -> Result<Form<C>> {
        if a.dim() != self.dim {
            return Err(Error::DimMismatch { expected: self.dim, found: a.dim() });
        }
        let mut out = Form::zero(self.dim);
        for (b, c) in a.terms() {
            for (bb, s) in self.blade_d[b].terms() {
                out.add_term(*bb, c.scaled(s));
            }
        }
        Ok(out)
    }

    /// Generators (one-based) with d(d e^i) ≠ 0; empty when the Jacobi identity holds.
    pub fn jacobi_failures(&self) -> Vec<usize> {
        (0..self.dim).filter(|&i| !self.d(&self.diff[i]).is_zero()).map(|i| i + 1).collect()
    }

    pub fn jacobi_check(&self) -> bool {
        self.jacobi_failures().is_empty()
    }

    /// Structure constant c^k_{ij} (one-based) with [e_i, e_j] = Σ_k c^k_{ij} e_k.
    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> ScalarK {
        match i.cmp(&j) {
            std::cmp::Ordering::Equal => ScalarK::zero(),
            std::cmp::Ordering::Less => self.diff[k - 1].coeff_of(&[i, j]).neg_ref(),
            std::cmp::Ordering::Greater => self.diff[k - 1].coeff_of(&[j, i]),
        }
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> Vector<ScalarK> {
        Vector::new((1..=self.dim).map(|k| self.structure_constant(i, j, k)).collect())
    }

    pub fn bracket(&self, x: &Vector<ScalarK>, y: &Vector<ScalarK>) -> Vector<ScalarK> {
        let mut out = vec![ScalarK::zero(); self.dim];
        for (i, xi) in x.coords().iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.coords().iter().enumerate() {
                if yj.is_zero() || i == j {
                    continue;
                }
                let f = xi.mul_ref(yj);
                for (k, slot) in out.iter_mut().enumerate() {
                    let c = self.structure_constant(i + 1, j + 1, k + 1);
                    if !c.is_zero() {
                        *slot = slot.add_ref(&f.mul_ref(&c));
                    }
                }
            }
        }
        Vector::new(out)
    }

    /// Matrix of ad_x in the basis e_1…e_n (columns are images of basis vectors).
    pub fn ad(&self, x: &Vector<ScalarK>) -> Matrix<ScalarK> {
        let cols: Vec<Vec<ScalarK>> = (1..=self.dim)
            .map(|j| self.bracket(x, &Vector::basis(self.dim, j)).coords().to_vec())
            .collect();
        linalg::transpose(&cols)
    }

    pub fn center(&self) -> Vec<Vector<ScalarK>> {
        let n = self.dim;
        // Rows indexed by (j, k): Σ_i X_i c^k_{ij} = 0.
        let mut rows = Vec::new();
        for j in 1..=n {
            for k in 1..=n {
                let row: Vec<ScalarK> = (1..=n).map(|i| self.structure_constant(i, j, k)).collect();
                if row.iter().any(|c| !c.is_zero()) {
                    rows.push(row);
                }
            }
        }
        linalg::kernel(&rows, n).into_iter().map(Vector::new).collect()
    }

    pub fn is_central(&self, x: &Vector<ScalarK>) -> bool {
        (1..=self.dim).all(|j| self.bracket(x, &Vector::basis(self.dim, j)).is_zero())
    }

    fn span_basis(vectors: Vec<Vec<ScalarK>>) -> Vec<Vec<ScalarK>> {
        if vectors.is_empty() {
            return vectors;
        }
        let (r, piv) = linalg::rref(&vectors);
        r.into_iter().take(piv.len()).collect()
    }

    /// Lower central series C^1 = [g,g], C^{s+1} = [g, C^s], as bases.
    pub fn lower_central_series(&self) -> Vec<Vec<Vec<ScalarK>>> {
        let n = self.dim;
        let mut series = Vec::new();
        let mut cur: Vec<Vec<ScalarK>> = (1..=n).map(|i| Vector::basis(n, i).coords().to_vec()).collect();
        for _ in 0..=n {
            let mut imgs = Vec::new();
            for i in 1..=n {
                for v in &cur {
                    let b = self.bracket(&Vector::basis(n, i), &Vector::new(v.clone()));
                    if !b.is_zero() {
                        imgs.push(b.coords().to_vec());
                    }
                }
            }
            let next = Self::span_basis(imgs);
            let stop = next.is_empty() || next.len() == cur.len();
            series.push(next.clone());
            cur = next;
            if stop {
                break;
            }
        }
        series
    }

    pub fn nilpotency_step(&self) -> Result<usize> {
        let series = self.lower_central_series();
        match series.iter().position(Vec::is_empty) {
            Some(p) => Ok(p + 1),
            None => Err(Error::NotNilpotent),
        }
    }

    /// Re-expresses the algebra in a new basis whose vectors are the columns of `p`.
    pub fn change_basis(&self, p: &Matrix<ScalarK>) -> Result<LieAlgebra> {
        let pinv = linalg::inverse(p)?;
        let map = LinearMap::new(p.clone())?;
        let mut diff = Vec::with_capacity(self.dim);
        for row in &pinv {
            let mut de = Form::zero(self.dim);
            for (j, c) in row.iter().enumerate() {
                if !c.is_zero() {
                    de = de.add(&self.diff[j].scale_k(c));
                }
            }
            diff.push(de.pullback(&map)?);
        }
        LieAlgebra::new(diff)
    }

    pub fn quotient_by_central(&self, x: &Vector<ScalarK>) -> Result<Quotient> {
        self.quotient_by_central_with(x, &Metric::identity(self.dim))
    }

    /// Quotient by span{X}, identifying h with the g-orthogonal complement of X.
    pub fn quotient_by_central_with(&self, x: &Vector<ScalarK>, g: &Metric) -> Result<Quotient> {
        if x.is_zero() {
            return Err(Error::ZeroVector);
        }
        if !self.is_central(x) {
            return Err(Error::NotCentral);
        }
        let n = self.dim;
        let pivot = (0..n).rev().find(|&i| !x.coords()[i].is_zero()).unwrap();
        let xx = g.inner(x, x);
        if xx.is_zero() {
            return Err(Error::DegenerateMetric);
        }
        let mut columns: Vec<Vec<ScalarK>> = Vec::with_capacity(n);
        for j in (0..n).filter(|&j| j != pivot) {
            let ej = Vector::basis(n, j + 1);
            let t = g.inner(&ej, x).div_ref(&xx)?;
            let col: Vec<ScalarK> =
                ej.coords().iter().zip(x.coords()).map(|(a, b)| a.sub_ref(&b.mul_ref(&t))).collect();
            columns.push(col);
        }
        columns.push(x.coords().to_vec());
        let p = linalg::transpose(&columns);
        let pinv = linalg::inverse(&p)?;
        let adapted = self.change_basis(&p)?;
        let h_diff: Vec<Form<ScalarK>> =
            adapted.diff[..n - 1].iter().map(|d| d.restrict_dim(n - 1)).collect();
        let h = LieAlgebra::new(h_diff)?;
        Ok(Quotient { h, p, pinv })
    }

    /// h ⊕ ℝ with a new central generator appended.
    pub fn direct_sum_with_line(&self) -> LieAlgebra {
        let n = self.dim + 1;
        let mut diff: Vec<Form<ScalarK>> = self.diff.iter().map(|d| d.extend_dim(n)).collect();
        diff.push(Form::zero(n));
        LieAlgebra::new(diff).unwrap()
    }

    /// Matrix of d: Λ^k → Λ^{k+1} with columns indexed by `blades(dim, k)`.
    pub fn d_matrix(&self, k: usize) -> (Vec<Blade>, Vec<Blade>, Matrix<ScalarK>) {
        let src = blades(self.dim, k);
        let dst = blades(self.dim, k + 1);
        let index: HashMap<Blade, usize> = dst.iter().enumerate().map(|(i, b)| (*b, i)).collect();
        let mut m = linalg::zeros(dst.len(), src.len());
        for (j, b) in src.iter().enumerate() {
            for (bb, c) in self.blade_d[b].terms() {
                m[index[bb]][j] = c.clone();
            }
        }
        (src, dst, m)
    }

    /// A basis of closed k-forms. Free parameters sit on the lexicographically
    /// earliest words; each is named `c` followed by its index word.
    pub fn closed_forms(&self, k: usize) -> GenericClosedForm {
        let (src, _, m) = self.d_matrix(k);
        let order: Vec<usize> = (0..src.len()).rev().collect();
        let mut ker = linalg::kernel_with_order(&m, src.len(), &order);
        ker.sort_by_key(|(f, _)| src[*f]);
        let mut basis = Vec::new();
        let mut params = Vec::new();
        let mut assembled = Form::<PolyK>::zero(self.dim);
        for (f, v) in ker {
            let mut form = Form::zero(self.dim);
            for (i, c) in v.into_iter().enumerate() {
                form.add_term(src[i], c);
            }
            let var = Var::new(&format!("c{}", src[f].word()));
            assembled = assembled.add(&form.lift::<PolyK>().scale(&PolyK::from_var(&var)));
            basis.push((src[f], form));
            params.push(var);
        }
        GenericClosedForm { degree: k, basis, params, assembled }
    }
}

/// Data of a quotient g → h = g/span{X}.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub h: LieAlgebra,
    /// Columns: the complement basis followed by X, in g coordinates.
    pub p: Matrix<ScalarK>,
    pub pinv: Matrix<ScalarK>,
}

impl Quotient {
    /// π*: forms on h to forms on g.
    pub fn pull_up<C: Coeff>(&self, a: &Form<C>) -> Result<Form<C>> {
        let n = self.p.len();
        a.extend_dim(n).pullback(&LinearMap::new(self.pinv.clone())?)
    }

    /// π_*: restriction to the complement, read as a form on h.
    pub fn push_down<C: Coeff>(&self, a: &Form<C>) -> Result<Form<C>> {
        let n = self.p.len();
        Ok(a.pullback(&LinearMap::new(self.p.clone())?)?.restrict_dim(n - 1))
    }

    /// The complement basis vectors b_1…b_{n−1} in g coordinates.
    pub fn complement(&self) -> Vec<Vector<ScalarK>> {
        let n = self.p.len();
        (0..n - 1).map(|j| Vector::new(self.p.iter().map(|row| row[j].clone()).collect())).collect()
    }
}

/// An arbitrary closed k-form Σ c_I κ_I.
#[derive(Clone, Debug)]
pub struct GenericClosedForm {
    pub degree: usize,
    pub basis: Vec<(Blade, Form<ScalarK>)>,
    pub params: Vec<Var>,
    pub assembled: Form<PolyK>,
}

impl GenericClosedForm {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }
}
