//! Invariants of stable 3-forms in dimensions 6 and 7.

use crate::coeff::Coeff;
use crate::error::{Error, Result};
use crate::exterior::{Blade, Form, Metric, Vector};
use crate::linalg::{self, Matrix};
use crate::scalar::{rational_nth_root, ScalarK};

fn check_shape<C: Coeff>(form: &Form<C>, dim: usize, degree: usize) -> Result<()> {
    if form.dim() != dim {
        return Err(Error::DimMismatch { expected: dim, found: form.dim() });
    }
    if let Some((b, _)) = form.terms().find(|(b, _)| b.degree() != degree) {
        return Err(Error::WrongDegree { expected: degree, found: b.degree() });
    }
    Ok(())
}

/// K[a][b]·e^{1…6} = (ι_{e_b}ρ) ∧ ρ ∧ e^a, indices zero-based in the matrix.
pub fn k_matrix<C: Coeff>(rho: &Form<C>) -> Result<Matrix<C>> {
    check_shape(rho, 6, 3)?;
    let mut k = linalg::zeros(6, 6);
    for b in 0..6 {
        let w = rho.contract_basis(b + 1).wedge(rho);
        for (a, row) in k.iter_mut().enumerate() {
            let ea = Form::monomial(6, Blade::from_indices(&[a + 1]), C::one());
            row[b] = w.wedge(&ea).top_coeff();
        }
    }
    Ok(k)
}

pub fn trace<C: Coeff>(m: &Matrix<C>) -> C {
    m.iter().enumerate().fold(C::zero(), |acc, (i, r)| acc.plus(&r[i]))
}

/// λ(ρ) = tr(K²)/6.
pub fn lambda_invariant<C: Coeff>(rho: &Form<C>) -> Result<C> {
    let k = k_matrix(rho)?;
    Ok(trace(&linalg::mat_mul(&k, &k)).scaled(&ScalarK::frac(1, 6)))
}

/// True when K² = λ·Id exactly.
pub fn k_squares_to_scalar<C: Coeff>(rho: &Form<C>) -> Result<bool> {
    let k = k_matrix(rho)?;
    let lam = trace(&linalg::mat_mul(&k, &k)).scaled(&ScalarK::frac(1, 6));
    let k2 = linalg::mat_mul(&k, &k);
    Ok(k2.iter().enumerate().all(|(i, r)| {
        r.iter().enumerate().all(|(j, x)| if i == j { *x == lam } else { x.is_zero() })
    }))
}

/// Whether span(W) is mapped into itself by K.
pub fn is_invariant_subspace(k: &Matrix<ScalarK>, w: &[Vector<ScalarK>]) -> bool {
    let base: Matrix<ScalarK> = w.iter().map(|v| v.coords().to_vec()).collect();
    let r = linalg::rank(&base);
    w.iter().all(|v| {
        let mut ext = base.clone();
        ext.push(linalg::mat_vec(k, v.coords()));
        linalg::rank(&ext) == r
    })
}

/// B with b_φ(e_i, e_j) = B[i][j]·e^{1…7}, where 6 b_φ(x, y) = ι_xφ ∧ ι_yφ ∧ φ.
pub fn b_matrix<C: Coeff>(phi: &Form<C>) -> Result<Matrix<C>> {
    check_shape(phi, 7, 3)?;
    let contractions: Vec<Form<C>> = (1..=7).map(|i| phi.contract_basis(i)).collect();
    let sixth = ScalarK::frac(1, 6);
    let mut b = linalg::zeros(7, 7);
    for i in 0..7 {
        let left = contractions[i].wedge(phi);
        for j in i..7 {
            let v = left.wedge(&contractions[j]).top_coeff().scaled(&sixth);
            b[j][i] = v.clone();
            b[i][j] = v;
        }
    }
    Ok(b)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Classification {
    Positive,
    Split,
    Degenerate,
}

impl std::fmt::Display for Classification {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Classification::Positive => "positive",
            Classification::Split => "split",
            Classification::Degenerate => "degenerate",
        })
    }
}

/// Definiteness of a symmetric matrix by Sylvester's criterion.
pub fn definiteness(b: &Matrix<ScalarK>) -> Classification {
    let minors = linalg::leading_minors(b);
    if minors.last().map_or(true, ScalarK::is_zero) {
        return Classification::Degenerate;
    }
    let positive = minors.iter().all(ScalarK::is_positive);
    let negative = minors
        .iter()
        .enumerate()
        .all(|(k, m)| if k % 2 == 0 { m.is_negative() } else { m.is_positive() });
    if positive || negative {
        Classification::Positive
    } else {
        Classification::Split
    }
}

pub fn classify_3form_7d(phi: &Form<ScalarK>) -> Result<Classification> {
    Ok(definiteness(&b_matrix(phi)?))
}

/// g_φ = B / (det B)^{1/9} with the orientation making ε(φ) positive.
pub fn induced_metric(phi: &Form<ScalarK>) -> Result<Metric> {
    let b = b_matrix(phi)?;
    match definiteness(&b) {
        Classification::Positive => {}
        c => return Err(Error::NotPositive(c.to_string())),
    }
    let det = linalg::determinant(&b);
    let q = det.as_rational().ok_or_else(|| Error::IrrationalNinthRoot(det.to_string()))?;
    let root = rational_nth_root(&q, 9).ok_or_else(|| Error::IrrationalNinthRoot(det.to_string()))?;
    let root = ScalarK::from_rational(root);
    let inv = root.inverse()?;
    let entries: Matrix<ScalarK> = b.iter().map(|r| r.iter().map(|x| x.mul_ref(&inv)).collect()).collect();
    let orientation = if det.is_negative() { -1 } else { 1 };
    Metric::new(entries, orientation)
}
