mod common;

use common::{compare_with_classical, Coefficients};
use higher_hochschild::bar::{classical_hochschild_oracle, multiplication_module, periodic_tor_oracle, two_sided_bar};
use higher_hochschild::cdga::{dual_numbers, exterior, koszul, polynomial};
use higher_hochschild::hochschild::{build_complex, BuildOptions};
use higher_hochschild::homology::homology;
use higher_hochschild::simplicial::standard_model;

#[test]
fn circle_matches_classical_complex() {
    for a in [dual_numbers(), exterior(-1)] {
        for coeff in [Coefficients::None, Coefficients::Regular, Coefficients::Augmentation] {
            let n = compare_with_classical(&a, coeff, 6).unwrap_or_else(|e| panic!("{} {coeff:?}: {e}", a.name()));
            assert!(n > 0);
        }
    }
}

#[test]
fn circle_matches_classical_complex_for_free_algebras() {
    for a in [koszul(), polynomial(-2)] {
        for coeff in [Coefficients::None, Coefficients::Augmentation] {
            compare_with_classical(&a, coeff, 4).unwrap_or_else(|e| panic!("{} {coeff:?}: {e}", a.name()));
        }
    }
}

#[test]
fn dual_numbers_three_ways() {
    let x = standard_model("circle_minimal").unwrap();
    let c = build_complex(&x, &dual_numbers(), None, -5, &BuildOptions::default()).unwrap();
    let o = classical_hochschild_oracle(&dual_numbers(), None, -5).unwrap();
    let expected = vec![2, 1, 1, 1, 1, 1];
    assert_eq!(homology(&c, false).dims(), expected);
    assert_eq!(homology(o.complex(), false).dims(), expected);
    assert_eq!(periodic_tor_oracle(-5), expected);
}

#[test]
fn bar_agrees_with_circle() {
    let x = standard_model("circle_minimal").unwrap();
    for a in [dual_numbers(), exterior(-1), koszul()] {
        let c = build_complex(&x, &a, None, -3, &BuildOptions::default()).unwrap();
        let (env, m) = multiplication_module(&a, -4).unwrap();
        let b = two_sided_bar(&m, &env, &m, -3, 6).unwrap();
        assert_eq!(homology(&b.complex, false).trusted_dims(), homology(&c, false).dims(), "{}", a.name());
    }
}
