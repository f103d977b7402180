//! Cross-module checks: base change, Euler characteristics, classical
//! structure theory on the catalog algebras.

use lab_core::cohomology::{euler_check, whitehead_check, CEComplex, Direction};
use lab_core::field_tower::{validate_field, FieldSpec};
use lab_core::lie::{
    base_change_q, catalog, center, is_nilpotent, is_semisimple, killing_form,
    lower_central_series, restrict_scalars, LieModule,
};
use lab_core::linalg::Matrix;
use lab_core::ring::{qi, Q};

const CATALOG: &[&str] = &[
    "abelian(3)",
    "heisenberg(3)",
    "heisenberg_scaled(3)",
    "sl2",
    "borel_sl2",
    "borel_sl3",
];

/// Cohomology dimensions are insensitive to extending Q to a number field.
#[test]
fn base_change_preserves_cohomology_dims() {
    let l = validate_field(&FieldSpec::galois_from_int_poly(&[-2, 0, 1])).unwrap();
    for name in CATALOG {
        let g = catalog(name).unwrap().algebra;
        let gl = base_change_q(&g, &l);
        for dir in [Direction::Chain, Direction::Cochain] {
            let over_q = CEComplex::new(&g, &LieModule::adjoint(&g), dir).all_dims();
            let over_l = CEComplex::new(&gl, &LieModule::adjoint(&gl), dir).all_dims();
            assert_eq!(
                over_q, over_l,
                "{name}: adjoint dims drift under base change"
            );

            let triv_q = CEComplex::new(&g, &LieModule::trivial(&g, 1), dir).all_dims();
            let triv_l = CEComplex::new(&gl, &LieModule::trivial(&gl, 1), dir).all_dims();
            assert_eq!(
                triv_q, triv_l,
                "{name}: trivial dims drift under base change"
            );
        }
    }
}

/// The alternating sum of cohomology dimensions vanishes for every nonzero
/// algebra, since the complex has zero Euler characteristic already.
#[test]
fn euler_characteristic_vanishes() {
    for name in CATALOG {
        let g = catalog(name).unwrap().algebra;
        for module in [LieModule::trivial(&g, 1), LieModule::adjoint(&g)] {
            for dir in [Direction::Chain, Direction::Cochain] {
                let rep = euler_check(&CEComplex::new(&g, &module, dir));
                assert!(
                    rep.equal,
                    "{name}: {} vs {}",
                    rep.from_spaces, rep.from_dims
                );
                assert_eq!(rep.from_dims, 0, "{name}: nonzero euler characteristic");
            }
        }
    }
}

/// The Heisenberg algebra is two-step nilpotent with one-dimensional
/// center and derived subalgebra; sl2 is not nilpotent.
#[test]
fn central_series_of_heisenberg() {
    let h = catalog("heisenberg(3)").unwrap().algebra;
    let series = lower_central_series(&h);
    let dims: Vec<usize> = series.iter().map(|s| s.dim()).collect();
    assert_eq!(dims, vec![1, 0]);
    assert!(is_nilpotent(&h));
    assert_eq!(center(&h).dim(), 1);
    assert!(center(&h).is_ideal);

    let sl2 = catalog("sl2").unwrap().algebra;
    assert!(!is_nilpotent(&sl2));
    assert_eq!(center(&sl2).dim(), 0);
}

/// Killing form of sl2 on the (h, e, f) basis, and the semisimplicity
/// split across the catalog.
#[test]
fn killing_form_of_sl2() {
    let sl2 = catalog("sl2").unwrap().algebra;
    let expected = Matrix::from_rows(vec![
        vec![qi(8), qi(0), qi(0)],
        vec![qi(0), qi(0), qi(4)],
        vec![qi(0), qi(4), qi(0)],
    ]);
    assert_eq!(killing_form(&sl2), expected);
    assert!(is_semisimple(&sl2));
    for name in ["abelian(3)", "heisenberg(3)", "borel_sl2", "borel_sl3"] {
        let g = catalog(name).unwrap().algebra;
        assert!(!is_semisimple(&g), "{name} has a degenerate Killing form");
    }
}

/// Restriction of scalars multiplies coefficients through the field:
/// [th e, th f] = th^2 [e, f] = 2 h over Q(sqrt 2).
#[test]
fn restriction_matches_field_multiplication() {
    let l = validate_field(&FieldSpec::galois_from_int_poly(&[-2, 0, 1])).unwrap();
    let sl2 = base_change_q(&catalog("sl2").unwrap().algebra, &l);
    let g0 = restrict_scalars(&sl2);
    assert_eq!(g0.dim(), 6);
    g0.validate().unwrap();

    // basis order (j, i) -> 2j + i with j the sl2 index (h, e, f)
    let theta_e = 2 * 1 + 1;
    let theta_f = 2 * 2 + 1;
    let mut x = vec![qi(0); 6];
    let mut y = vec![qi(0); 6];
    x[theta_e] = qi(1);
    y[theta_f] = qi(1);
    let mut expected = vec![qi(0); 6];
    expected[0] = qi(2);
    assert_eq!(g0.bracket(&x, &y), expected);

    // and a cross term: [th e, f] = th [e, f] = th h
    let mut f_plain = vec![qi(0); 6];
    f_plain[2 * 2] = qi(1);
    let mut theta_h = vec![qi(0); 6];
    theta_h[1] = qi(1);
    assert_eq!(g0.bracket(&x, &f_plain), theta_h);
}

/// Vanishing of first cohomology for sl2 with a module built from raw
/// matrices, next to the catalog modules.
#[test]
fn sl2_first_cohomology_vanishes() {
    let sl2 = catalog("sl2").unwrap().algebra;
    let standard = LieModule::new(
        &sl2,
        vec![
            Matrix::from_rows(vec![vec![qi(1), qi(0)], vec![qi(0), qi(-1)]]),
            Matrix::from_rows(vec![vec![qi(0), qi(1)], vec![qi(0), qi(0)]]),
            Matrix::from_rows(vec![vec![qi(0), qi(0)], vec![qi(1), qi(0)]]),
        ],
    )
    .unwrap();
    let rep = whitehead_check(
        &sl2,
        &[
            LieModule::trivial(&sl2, 1),
            LieModule::adjoint(&sl2),
            standard,
        ],
    )
    .unwrap();
    assert_eq!(rep.h1_dims, vec![0, 0, 0]);
    assert!(rep.all_zero);
}

/// Structure constants of the catalog survive a round of serialization
/// through rational strings.
#[test]
fn structure_constants_are_exact_rationals() {
    use lab_core::ring::{format_q, parse_q};
    for name in CATALOG {
        let g = catalog(name).unwrap().algebra;
        for i in 0..g.dim() {
            for j in 0..g.dim() {
                for k in 0..g.dim() {
                    let c: &Q = g.c(i, j, k);
                    assert_eq!(parse_q(&format_q(c)).unwrap(), *c);
                }
            }
        }
    }
}
