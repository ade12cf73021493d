//! G₂-structures on 7-dimensional algebras and SU(3)-structures on their 6-dimensional quotients.

use crate::coeff::Coeff;
use crate::error::{Error, Result};
use crate::exterior::{Blade, Form, Metric, Vector};
use crate::liealg::{LieAlgebra, Quotient};
use crate::linalg::{self, Matrix};
use crate::parse::parse_form;
use crate::poly::PolyK;
use crate::scalar::ScalarK;
use crate::stability::{self, Classification};

pub fn standard_phi() -> Form<ScalarK> {
    parse_form("127 + 347 + 567 + 135 - 146 - 236 - 245", 7).unwrap()
}

/// The pair (ω, ψ₋) induced on ℝ⁶ by the standard 3-form and e₇.
pub fn standard_pair() -> (Form<ScalarK>, Form<ScalarK>) {
    (parse_form("12 + 34 + 56", 6).unwrap(), parse_form("-246 + 136 + 145 + 235", 6).unwrap())
}

#[derive(Clone, Debug)]
pub struct G2Structure {
    pub algebra: LieAlgebra,
    pub phi: Form<ScalarK>,
    pub metric: Metric,
    pub psi: Form<ScalarK>,
}

impl G2Structure {
    pub fn new(algebra: LieAlgebra, phi: Form<ScalarK>) -> Result<Self> {
        if algebra.dim() != 7 {
            return Err(Error::DimMismatch { expected: 7, found: algebra.dim() });
        }
        let metric = stability::induced_metric(&phi)?;
        let psi = phi.hodge_star(&metric)?;
        Ok(G2Structure { algebra, phi, metric, psi })
    }

    pub fn is_closed(&self) -> bool {
        self.algebra.d(&self.phi).is_zero()
    }

    pub fn is_coclosed(&self) -> bool {
        self.algebra.d(&self.psi).is_zero()
    }
}

#[derive(Clone, Debug)]
pub struct G2Report {
    pub classification: Classification,
    pub closed: bool,
    pub coclosed: bool,
    pub metric: Metric,
    pub star: Form<ScalarK>,
}

pub fn verify_g2(algebra: &LieAlgebra, phi: &Form<ScalarK>) -> Result<G2Report> {
    let classification = stability::classify_3form_7d(phi)?;
    let g = G2Structure::new(algebra.clone(), phi.clone())?;
    Ok(G2Report {
        classification,
        closed: g.is_closed(),
        coclosed: g.is_coclosed(),
        metric: g.metric,
        star: g.psi,
    })
}

/// ω(e_i, e_j) as a matrix.
pub fn two_form_matrix(omega: &Form<ScalarK>) -> Matrix<ScalarK> {
    let n = omega.dim();
    let mut m = linalg::zeros(n, n);
    for (b, c) in omega.terms() {
        if let [i, j] = b.indices()[..] {
            m[i - 1][j - 1] = c.clone();
            m[j - 1][i - 1] = c.neg_ref();
        }
    }
    m
}

#[derive(Clone, Debug)]
pub struct SU3Structure {
    pub algebra: LieAlgebra,
    pub omega: Form<ScalarK>,
    pub psi_minus: Form<ScalarK>,
}

#[derive(Clone, Debug, Default)]
pub struct SU3Report {
    pub stable_pair: bool,
    pub orthogonal: bool,
    pub normalized: bool,
    pub h_definite: bool,
    pub problems: Vec<String>,
}

impl SU3Report {
    pub fn passed(&self) -> bool {
        self.stable_pair && self.orthogonal && self.normalized && self.h_definite
    }
}

impl SU3Structure {
    pub fn new(algebra: LieAlgebra, omega: Form<ScalarK>, psi_minus: Form<ScalarK>) -> Result<Self> {
        for f in [&omega, &psi_minus] {
            if f.dim() != 6 || algebra.dim() != 6 {
                return Err(Error::DimMismatch { expected: 6, found: f.dim().max(algebra.dim()) });
            }
        }
        Ok(SU3Structure { algebra, omega, psi_minus })
    }

    /// Orientation of the 6-space fixed by ω³.
    fn orientation(&self) -> i8 {
        if self.omega.wedge_pow(3).top_coeff().is_negative() {
            -1
        } else {
            1
        }
    }

    /// h(x, y) = ω(x, J y) with J = ±K_{ψ₋}/√(−λ), the sign being the orientation of ω³.
    pub fn metric(&self) -> Result<Metric> {
        let lam = stability::lambda_invariant(&self.psi_minus)?;
        if !lam.is_negative() {
            return Err(Error::NotPositive(format!("lambda(psi_-) = {lam}")));
        }
        let root = lam.neg_ref().sqrt().ok_or_else(|| Error::NotPositive(format!("sqrt(-({lam}))")))?;
        let k = stability::k_matrix(&self.psi_minus)?;
        let w = two_form_matrix(&self.omega);
        let mut inv = root.inverse()?;
        if self.orientation() < 0 {
            inv = inv.neg_ref();
        }
        let h: Matrix<ScalarK> =
            linalg::mat_mul(&w, &k).into_iter().map(|r| r.iter().map(|x| x.mul_ref(&inv)).collect()).collect();
        Metric::new(h, self.orientation())
    }

    /// ψ₊, the Hodge dual of ψ₋ up to the sign that makes the pair normalized.
    pub fn psi_plus(&self) -> Result<Form<ScalarK>> {
        Ok(self.psi_minus.hodge_star(&self.metric()?)?.neg())
    }

    pub fn verify(&self) -> SU3Report {
        let mut r = SU3Report::default();
        let omega3 = self.omega.wedge_pow(3);
        let lam = stability::lambda_invariant(&self.psi_minus);
        r.stable_pair = !omega3.is_zero() && matches!(&lam, Ok(l) if l.is_negative());
        if !r.stable_pair {
            r.problems.push("omega^3 = 0 or lambda(psi_-) >= 0".into());
        }
        r.orthogonal = self.omega.wedge(&self.psi_minus).is_zero();
        if !r.orthogonal {
            r.problems.push("omega ^ psi_- != 0".into());
        }
        match self.metric() {
            Ok(h) => {
                r.h_definite = h.is_positive_definite();
                match self.psi_plus() {
                    Ok(pp) => {
                        let lhs = pp.wedge(&self.psi_minus);
                        let rhs = omega3.scale_k(&ScalarK::frac(2, 3));
                        r.normalized = lhs == rhs;
                        if !r.normalized {
                            r.problems.push(format!("psi_+ ^ psi_- = {lhs}, 2/3 omega^3 = {rhs}"));
                        }
                    }
                    Err(e) => r.problems.push(e.to_string()),
                }
            }
            Err(e) => r.problems.push(e.to_string()),
        }
        if !r.h_definite {
            r.problems.push("h not positive definite".into());
        }
        r
    }

    pub fn is_half_flat(&self) -> bool {
        self.algebra.d(&self.omega.wedge(&self.omega)).is_zero() && self.algebra.d(&self.psi_minus).is_zero()
    }
}

#[derive(Clone, Debug)]
pub struct Reduction {
    pub su3: SU3Structure,
    pub quotient: Quotient,
    /// dψ₋ = 0 and d(π*σ) = π*ψ₋ ∧ dη, checked when the 4-form is closed.
    pub coclosed_identities: Option<bool>,
}

pub fn su3_reduce(g: &G2Structure, x: &Vector<ScalarK>) -> Result<Reduction> {
    if x.is_zero() {
        return Err(Error::ZeroVector);
    }
    if !g.algebra.is_central(x) {
        return Err(Error::NotCentral);
    }
    let len2 = g.metric.inner(x, x);
    let len = len2.sqrt().ok_or_else(|| Error::NotUnit(len2.to_string()))?;
    let inv = len.inverse()?;
    let unit = x.map(|c| c.mul_ref(&inv));
    let quotient = g.algebra.quotient_by_central_with(&unit, &g.metric)?;
    let omega = quotient.push_down(&g.phi.contract(&unit)?)?;
    let psi_minus = quotient.push_down(&g.psi.contract(&unit)?.neg())?;
    let su3 = SU3Structure::new(quotient.h.clone(), omega, psi_minus)?;
    let coclosed_identities = if g.is_coclosed() {
        let eta = g.metric.flat(&unit);
        let sigma = su3.omega.wedge(&su3.omega).scale_k(&ScalarK::frac(1, 2));
        let lhs = g.algebra.d(&quotient.pull_up(&sigma)?);
        let rhs = quotient.pull_up(&su3.psi_minus)?.wedge(&g.algebra.d(&eta));
        Some(su3.algebra.d(&su3.psi_minus).is_zero() && lhs == rhs)
    } else {
        None
    };
    Ok(Reduction { su3, quotient, coclosed_identities })
}

/// The G₂-structure φ = ψ₊ + ω∧dt on h ⊕ ℝ, whose dual is ½ω² + ψ₋∧dt.
pub fn coclosed_from_half_flat(s: &SU3Structure) -> Result<G2Structure> {
    if !s.is_half_flat() {
        return Err(Error::NotHalfFlat);
    }
    let algebra = s.algebra.direct_sum_with_line();
    let dt = Form::monomial(7, Blade::from_indices(&[7]), ScalarK::one());
    let phi = s.psi_plus()?.extend_dim(7).add(&s.omega.extend_dim(7).wedge(&dt));
    let expected = s
        .omega
        .wedge(&s.omega)
        .scale_k(&ScalarK::frac(1, 2))
        .extend_dim(7)
        .add(&s.psi_minus.extend_dim(7).wedge(&dt));
    let g = G2Structure::new(algebra, phi)?;
    if g.psi != expected {
        return Err(Error::InvariantViolation {
            entry: "half-flat lift".into(),
            message: format!("star phi = {} but expected {}", g.psi, expected),
        });
    }
    if !g.is_coclosed() {
        return Err(Error::NotHalfFlat);
    }
    Ok(g)
}

/// Weight of the quadratic term i(α∘α) in the family.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BryantWeight {
    /// Coefficient 1, as in the displayed formula.
    Printed,
    /// Coefficient 2, which keeps g_φ = g on a² + |α|² = 1.
    MetricCompatible,
}

/// i(α∘α) = Σ α_j α_k e^j ∧ ι_{e_k} φ₀.
pub fn i_alpha_alpha<C: Coeff>(phi0: &Form<C>, alpha: &[C]) -> Form<C> {
    let n = phi0.dim();
    let mut out = Form::zero(n);
    for (j, aj) in alpha.iter().enumerate() {
        if aj.is_zero() {
            continue;
        }
        let ej = Form::monomial(n, Blade::from_indices(&[j + 1]), C::one());
        for (k, ak) in alpha.iter().enumerate() {
            if ak.is_zero() {
                continue;
            }
            out = out.add(&ej.wedge(&phi0.contract_basis(k + 1)).scale(&aj.times(ak)));
        }
    }
    out
}

/// ★φ = (a² − |α|²)★φ₀ + 2a α∧φ₀ + w·★i(α∘α), all duals taken for the identity metric.
pub fn bryant_family(
    g0: &G2Structure,
    a: &PolyK,
    alpha: &[PolyK],
    weight: BryantWeight,
) -> Result<Form<PolyK>> {
    if !g0.metric.is_identity() {
        return Err(Error::NonIdentityMetric);
    }
    if alpha.len() != 7 {
        return Err(Error::DimMismatch { expected: 7, found: alpha.len() });
    }
    let phi0: Form<PolyK> = g0.phi.lift();
    let norm = alpha.iter().fold(PolyK::zero(), |acc, x| acc.add_ref(&x.mul_ref(x)));
    let lead = a.mul_ref(a).sub_ref(&norm);
    let alpha_form = alpha.iter().enumerate().fold(Form::zero(7), |acc, (j, x)| {
        acc.add(&Form::monomial(7, Blade::from_indices(&[j + 1]), x.clone()))
    });
    let w = match weight {
        BryantWeight::Printed => ScalarK::one(),
        BryantWeight::MetricCompatible => ScalarK::from_int(2),
    };
    let quad = i_alpha_alpha(&phi0, alpha).hodge_star(&g0.metric)?.scale_k(&w);
    Ok(phi0
        .hodge_star(&g0.metric)?
        .scale(&lead)
        .add(&alpha_form.wedge(&phi0).scale(&a.scaled(&ScalarK::from_int(2))))
        .add(&quad))
}

/// The 3-form of the same family, for evaluation at sample points.
pub fn bryant_phi(phi0: &Form<ScalarK>, a: &ScalarK, alpha: &[ScalarK], weight: BryantWeight) -> Result<Form<ScalarK>> {
    let g = Metric::identity(7);
    let norm = alpha.iter().fold(ScalarK::zero(), |acc, x| acc.add_ref(&x.mul_ref(x)));
    let alpha_form = alpha.iter().enumerate().fold(Form::zero(7), |acc, (j, x)| {
        acc.add(&Form::monomial(7, Blade::from_indices(&[j + 1]), x.clone()))
    });
    let w = match weight {
        BryantWeight::Printed => ScalarK::one(),
        BryantWeight::MetricCompatible => ScalarK::from_int(2),
    };
    Ok(phi0
        .scale_k(&a.mul_ref(a).sub_ref(&norm))
        .add(&alpha_form.wedge(phi0).hodge_star(&g)?.scale_k(&a.mul_ref(&ScalarK::from_int(2))))
        .add(&i_alpha_alpha(phi0, alpha).scale_k(&w)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::parse_algebra;

    fn abelian6() -> LieAlgebra {
        LieAlgebra::abelian(6)
    }

    #[test]
    fn standard_pair_is_normalized() {
        let (omega, psi) = standard_pair();
        let s = SU3Structure::new(abelian6(), omega.clone(), psi.clone()).unwrap();
        assert!(s.metric().unwrap().is_identity());
        let r = s.verify();
        assert!(r.passed(), "{:?}", r.problems);
        assert!(s.is_half_flat());
        let doubled = SU3Structure::new(abelian6(), omega, psi.scale_k(&ScalarK::from_int(2))).unwrap();
        let r = doubled.verify();
        assert!(!r.normalized && r.stable_pair && r.orthogonal);
    }

    #[test]
    fn reduction_of_standard_structure() {
        let g = G2Structure::new(LieAlgebra::abelian(7), standard_phi()).unwrap();
        assert!(g.is_closed() && g.is_coclosed());
        let red = su3_reduce(&g, &Vector::basis(7, 7)).unwrap();
        let (omega, psi) = standard_pair();
        assert_eq!(red.su3.omega, omega);
        assert_eq!(red.su3.psi_minus, psi);
        assert_eq!(red.coclosed_identities, Some(true));
        let lifted = coclosed_from_half_flat(&red.su3).unwrap();
        assert_eq!(lifted.phi, standard_phi());
    }

    #[test]
    fn non_unit_central_vector() {
        let g = G2Structure::new(LieAlgebra::abelian(7), standard_phi()).unwrap();
        let x = Vector::new((0..7).map(|i| ScalarK::from_int(if i == 6 { 2 } else { 0 })).collect());
        assert_eq!(su3_reduce(&g, &x).unwrap().su3.omega, standard_pair().0);
        let y = Vector::new([0, 0, 0, 1, 1, 1, 2].into_iter().map(ScalarK::from_int).collect());
        assert!(matches!(su3_reduce(&g, &y), Err(Error::NotUnit(_))));
    }

    #[test]
    fn not_half_flat() {
        let h = parse_algebra("(0,0,0,0,12,13)").unwrap();
        let (omega, psi) = standard_pair();
        let s = SU3Structure::new(h, omega, psi).unwrap();
        assert!(!s.is_half_flat());
        assert!(matches!(coclosed_from_half_flat(&s), Err(Error::NotHalfFlat)));
    }

    #[test]
    fn non_coclosed_on_n8() {
        let n8 = parse_algebra("(0,0,0,0,12,14+25,0)").unwrap();
        let r = verify_g2(&n8, &standard_phi()).unwrap();
        assert!(!r.coclosed);
    }

    #[test]
    fn family_basepoint_and_compatibility() {
        let g0 = G2Structure::new(LieAlgebra::abelian(7), standard_phi()).unwrap();
        let zero = vec![PolyK::zero(); 7];
        let star = bryant_family(&g0, &PolyK::one(), &zero, BryantWeight::MetricCompatible).unwrap();
        assert_eq!(star, g0.psi.lift());
        let mut alpha = vec![ScalarK::zero(); 7];
        alpha[6] = ScalarK::one();
        let compat = bryant_phi(&standard_phi(), &ScalarK::zero(), &alpha, BryantWeight::MetricCompatible).unwrap();
        assert!(stability::induced_metric(&compat).unwrap().is_identity());
        let printed = bryant_phi(&standard_phi(), &ScalarK::zero(), &alpha, BryantWeight::Printed).unwrap();
        assert_ne!(stability::classify_3form_7d(&printed).unwrap(), Classification::Positive);
    }
}
