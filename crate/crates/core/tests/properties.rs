mod common;

use proptest::prelude::*;

use common::*;
use g2calc::exterior::blades;
use g2calc::structures;
use g2calc::{Form, Metric, ScalarK};

proptest! {
    #![proptest_config(config())]

    #[test]
    fn wedge_is_graded_commutative((p, a, q, b) in graded_pair(7)) {
        wedge_commutes(p, &a, q, &b)?;
    }

    #[test]
    fn d_is_an_antiderivation(idx in 0..53usize, (p, a, _q, b) in graded_pair(7)) {
        d_leibniz(idx, p, &a, &b)?;
    }

    #[test]
    fn contraction_is_an_antiderivation(x in vector(7), (p, a, _q, b) in graded_pair(7)) {
        contraction_leibniz(&x, p, &a, &b)?;
    }

    #[test]
    fn double_star_on_diagonal_metrics(d in prop::collection::vec(1i64..=4, 7), k in 0..=7usize, n in 6..=7usize) {
        double_star(&d, k, n)?;
    }

    #[test]
    fn lambda_is_even(rho in form(6, 3)) {
        lambda_even(&rho)?;
    }

    #[test]
    fn k_squares_to_lambda(rho in form(6, 3)) {
        k_squared(&rho)?;
    }
}

#[test]
fn double_star_is_identity_up_to_sign_on_every_blade() {
    for n in [6usize, 7] {
        let g = Metric::identity(n);
        for k in 0..=n {
            for b in blades(n, k) {
                let f = Form::monomial(n, b, ScalarK::one());
                assert_eq!(f.hodge_star(&g).unwrap().hodge_star(&g).unwrap(), f.scale_k(&sign(k, n - k)), "{n} {}", b.word());
            }
        }
    }
}

#[test]
fn su3_normalisation_on_catalog_reductions() {
    let rs = reductions();
    assert!(rs.len() >= 15, "only {} reductions", rs.len());
    for (name, r) in &rs {
        let pp = r.su3.psi_plus().unwrap();
        let lhs = pp.wedge(&r.su3.psi_minus);
        let rhs = r.su3.omega.wedge_pow(3).scale_k(&ScalarK::frac(2, 3));
        assert_eq!(lhs, rhs, "{name}");
        assert_eq!(r.coclosed_identities, Some(true), "{name}");
    }
}

#[test]
fn half_flat_lifts_are_coclosed() {
    let mut lifted = 0;
    for (name, r) in reductions() {
        if !r.su3.is_half_flat() {
            assert!(structures::coclosed_from_half_flat(&r.su3).is_err(), "{name}");
            continue;
        }
        let g = structures::coclosed_from_half_flat(&r.su3).unwrap();
        assert!(g.algebra.d(&g.psi).is_zero(), "{name}");
        lifted += 1;
    }
    assert!(lifted >= 5, "only {lifted} half-flat reductions");
}
