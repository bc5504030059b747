//! Independent oracles: Schur polynomials built from semistandard tableaux,
//! tableau counts, and classical line-bundle cohomology on projective space.

mod common;

use common::*;
use grsod::bott::{bwb, cohomology, Cohomology};
use grsod::tensor::{dim_schur, lr_coefficient, lr_product, tensor_schur, BundleExpression};
use grsod::young::Weight;

#[test]
fn lr_matches_schur_polynomial_products() {
    for r in 1..=3 {
        let shapes = partitions_up_to(5, r);
        for lambda in &shapes {
            let s_lambda = schur_poly(lambda, r);
            for mu in &shapes {
                let oracle = schur_decompose(poly_mul(&s_lambda, &schur_poly(mu, r)), r);
                let ours: Vec<_> = lr_product(lambda, mu)
                    .into_iter()
                    .filter(|(nu, _)| nu.len() <= r)
                    .map(|(nu, c)| (nu, c as i64))
                    .collect();
                let expected: Vec<_> = oracle.clone().into_iter().collect();
                assert_eq!(ours, expected, "({lambda}) * ({mu}) in {r} variables");

                let sum = tensor_schur(&lambda.to_weight(r).unwrap(), mu, r).unwrap();
                assert_eq!(sum.len(), oracle.len());
                for (nu, c) in &oracle {
                    assert_eq!(sum.get(&nu.to_weight(r).unwrap()) as i64, *c);
                    assert_eq!(lr_coefficient(lambda, mu, nu) as i64, *c);
                }
            }
        }
    }
}

#[test]
fn frozen_lr_value() {
    // s_{21}^2 in three variables contains s_{321} twice
    let s = schur_poly(&p(&[2, 1]), 3);
    let dec = schur_decompose(poly_mul(&s, &s), 3);
    assert_eq!(dec[&p(&[3, 2, 1])], 2);
    assert_eq!(lr_coefficient(&p(&[2, 1]), &p(&[2, 1]), &p(&[3, 2, 1])), 2);
}

#[test]
fn weyl_dimension_counts_tableaux() {
    for r in 1..=4 {
        for lambda in partitions_up_to(6, r) {
            let expected = ssyt_count(&lambda, r);
            let wt = lambda.to_weight(r).unwrap();
            assert_eq!(dim_schur(&wt).unwrap(), expected, "({lambda}) at rank {r}");
            for c in 1..=3 {
                assert_eq!(dim_schur(&wt.twist(-c)).unwrap(), expected);
                assert_eq!(dim_schur(&wt.dual()).unwrap(), expected);
            }
        }
    }
}

#[test]
fn line_bundles_on_projective_space() {
    // O(d) on P^{n-1} is L_{(-d)} U
    for n in 2..=6i64 {
        for d in -9..=6i64 {
            let c = bwb(1, n as usize, &w(&[-d]), &Weight::zero(n as usize - 1)).unwrap();
            let (h0, htop) = (binom(n - 1 + d, n - 1), binom(-d - 1, n - 1));
            match c {
                Cohomology::Vanishes => assert_eq!((h0, htop), (0, 0), "O({d}) on P^{}", n - 1),
                Cohomology::Degree { degree, .. } => {
                    let dim = c.dimension().unwrap() as i64;
                    if degree == 0 {
                        assert_eq!((dim, htop), (h0, 0), "O({d}) on P^{}", n - 1);
                    } else {
                        assert_eq!(degree as i64, n - 1);
                        assert_eq!((dim, h0), (htop, 0), "O({d}) on P^{}", n - 1);
                    }
                }
            }
        }
    }
}

#[test]
fn borel_weil_for_schur_powers_of_dual_tautological() {
    // H^0(Gr(k,n), L_λ U^dual) = L_λ V^dual, counted by tableaux with n letters
    for (k, n) in [(1, 3), (2, 4), (2, 5), (3, 5), (3, 6)] {
        for lambda in partitions_up_to(4, k) {
            let expr = BundleExpression::u_schur(k, n, lambda.to_weight(k).unwrap().dual()).unwrap();
            let h = cohomology(&expr).unwrap();
            assert_eq!(h.get(0), ssyt_count(&lambda, n), "({lambda}) on Gr({k},{n})");
            assert_eq!(h.total(), h.get(0));
        }
    }
}
