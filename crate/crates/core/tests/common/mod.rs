#![allow(dead_code)]

use std::sync::OnceLock;

use proptest::prelude::*;
use proptest::test_runner::TestCaseError;
use proptest::test_runner::{Config, RngSeed};

use g2calc::catalog::{self, CatalogEntry};
use g2calc::exterior::blades;
use g2calc::stability;
use g2calc::structures::{self, G2Structure};
use g2calc::{Form, Metric, ScalarK, Vector};

pub fn config() -> Config {
    Config { cases: 1000, rng_seed: RngSeed::Fixed(0x6232), failure_persistence: None, ..Config::default() }
}

pub fn shipped() -> &'static [CatalogEntry] {
    static ALL: OnceLock<Vec<CatalogEntry>> = OnceLock::new();
    ALL.get_or_init(|| catalog::load_shipped().unwrap())
}

pub fn form(dim: usize, k: usize) -> impl Strategy<Value = Form<ScalarK>> {
    let basis = blades(dim, k);
    let n = basis.len();
    prop::collection::vec((0..n, -3i64..=3), 0..8).prop_map(move |terms| {
        let mut f = Form::zero(dim);
        for (i, c) in terms {
            f.add_term(basis[i], ScalarK::from_int(c));
        }
        f
    })
}

pub fn vector(dim: usize) -> impl Strategy<Value = Vector<ScalarK>> {
    prop::collection::vec(-3i64..=3, dim).prop_map(|c| Vector::new(c.into_iter().map(ScalarK::from_int).collect()))
}

pub fn sign(p: usize, q: usize) -> ScalarK {
    ScalarK::from_int(if p * q % 2 == 0 { 1 } else { -1 })
}

pub fn graded_pair(dim: usize) -> impl Strategy<Value = (usize, Form<ScalarK>, usize, Form<ScalarK>)> {
    (0..=dim, 0..=dim).prop_flat_map(move |(p, q)| (Just(p), form(dim, p), Just(q), form(dim, q)))
}

pub fn wedge_commutes(p: usize, a: &Form<ScalarK>, q: usize, b: &Form<ScalarK>) -> Result<(), TestCaseError> {
    prop_assert_eq!(a.wedge(b), b.wedge(a).scale_k(&sign(p, q)));
    Ok(())
}

pub fn d_leibniz(idx: usize, p: usize, a: &Form<ScalarK>, b: &Form<ScalarK>) -> Result<(), TestCaseError> {
    let g = &shipped()[idx % shipped().len()].algebra;
    let lhs = g.d(&a.wedge(b));
    let rhs = g.d(a).wedge(b).add(&a.wedge(&g.d(b)).scale_k(&sign(p, 1)));
    prop_assert_eq!(lhs, rhs);
    Ok(())
}

pub fn contraction_leibniz(x: &Vector<ScalarK>, p: usize, a: &Form<ScalarK>, b: &Form<ScalarK>) -> Result<(), TestCaseError> {
    let lhs = a.wedge(b).contract(x).unwrap();
    let rhs = a.contract(x).unwrap().wedge(b).add(&a.wedge(&b.contract(x).unwrap()).scale_k(&sign(p, 1)));
    prop_assert_eq!(lhs, rhs);
    Ok(())
}

pub fn double_star(squares: &[i64], k: usize, n: usize) -> Result<(), TestCaseError> {
    let diag: Vec<ScalarK> = squares[..n].iter().map(|x| ScalarK::from_int(x * x)).collect();
    let g = Metric::diagonal(&diag).unwrap();
    for b in blades(n, k) {
        let f = Form::monomial(n, b, ScalarK::one());
        let ss = f.hodge_star(&g).unwrap().hodge_star(&g).unwrap();
        prop_assert_eq!(ss, f.scale_k(&sign(k, n - k.min(n))));
    }
    Ok(())
}

pub fn lambda_even(rho: &Form<ScalarK>) -> Result<(), TestCaseError> {
    prop_assert_eq!(stability::lambda_invariant(rho).unwrap(), stability::lambda_invariant(&rho.neg()).unwrap());
    Ok(())
}

pub fn k_squared(rho: &Form<ScalarK>) -> Result<(), TestCaseError> {
    prop_assert!(stability::k_squares_to_scalar(rho).unwrap());
    Ok(())
}

/// Every coclosed structure in the catalog, reduced along each unit central basis vector.
pub fn reductions() -> Vec<(String, structures::Reduction)> {
    let mut out = Vec::new();
    for e in shipped() {
        let Some(f) = &e.raw.three_form else { continue };
        let phi: Form<ScalarK> = g2calc::parse::parse_form(&f.form, 7).unwrap();
        let Ok(g) = G2Structure::new(e.algebra.clone(), phi) else { continue };
        if !g.is_coclosed() {
            continue;
        }
        for i in 1..=7 {
            let x = Vector::basis(7, i);
            if !g.algebra.is_central(&x) {
                continue;
            }
            if let Ok(r) = structures::su3_reduce(&g, &x) {
                out.push((format!("{} / e{i}", e.id()), r));
            }
        }
    }
    out
}

