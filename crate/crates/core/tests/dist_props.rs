//! Norm and series laws that cut across the distribution-algebra module:
//! convolution of Dirac points, associativity of the ordered product, and
//! scale behavior of the norm.

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use lab_core::dist::{
    mahler_dirac, mahler_multiply, mahler_norm, nu_norm, pbw_multiply, pbw_scale, LogNorm,
    RadiusParam, TruncatedPBWSeries,
};
use lab_core::lie::{catalog, LieAlgebra};
use lab_core::ring::{q, qi, Rationals, Q};

fn radius(p: u64, num: i64, den: i64) -> RadiusParam {
    RadiusParam::new(p, q(num, den)).unwrap()
}

/// Dirac distributions convolve by adding their points: the Mahler
/// coefficients obey the Vandermonde identity.
#[test]
fn dirac_convolution_adds_points() {
    let d23 = mahler_multiply(&mahler_dirac(&[2], 8), &mahler_dirac(&[3], 8)).unwrap();
    assert_eq!(d23, mahler_dirac(&[5], 8));

    let a = mahler_dirac(&[1, 2], 8);
    let b = mahler_dirac(&[2, 1], 8);
    assert_eq!(mahler_multiply(&a, &b).unwrap(), mahler_dirac(&[3, 3], 8));

    // the point at zero is the unit
    let e = mahler_dirac(&[0, 0], 8);
    assert_eq!(mahler_multiply(&a, &e).unwrap(), a);
}

/// Nonzero series with term degree at most one per generator, so triple
/// products stay strictly below the truncation bound.
fn random_series(rng: &mut ChaCha8Rng, alg: &LieAlgebra<Rationals>) -> TruncatedPBWSeries {
    let pool = [qi(1), qi(-1), qi(2), qi(3), q(1, 2), q(-2, 3)];
    loop {
        let terms: Vec<(Vec<u32>, Q)> = (0..rng.gen_range(1..=3))
            .map(|_| {
                let beta: Vec<u32> = (0..alg.dim()).map(|_| rng.gen_range(0..=1u32)).collect();
                (beta, pool[rng.gen_range(0..pool.len())].clone())
            })
            .collect();
        let series = TruncatedPBWSeries::from_terms(alg, 10, terms);
        if !series.is_zero() {
            return series;
        }
    }
}

/// The ordered product is associative whenever every straightening stays
/// below the truncation degree.
#[test]
fn pbw_product_is_associative() {
    let h = catalog("heisenberg(3)").unwrap().algebra;
    let mut rng = ChaCha8Rng::seed_from_u64(0x70_62_77);
    for _ in 0..40 {
        let a = random_series(&mut rng, &h);
        let b = random_series(&mut rng, &h);
        let c = random_series(&mut rng, &h);
        let left = pbw_multiply(&pbw_multiply(&a, &b).unwrap(), &c).unwrap();
        let right = pbw_multiply(&a, &pbw_multiply(&b, &c).unwrap()).unwrap();
        assert!(left.is_exact() && right.is_exact());
        assert_eq!(left, right);
    }
}

/// Reordered generators pick up the structure constant: on the scaled
/// Heisenberg algebra y x = x y - 3 z while x y is already ordered.
#[test]
fn straightening_reorders_generators() {
    let h = catalog("heisenberg_scaled(3)").unwrap().algebra;
    let x = TruncatedPBWSeries::generator(&h, 6, 0);
    let y = TruncatedPBWSeries::generator(&h, 6, 1);

    let xy = pbw_multiply(&x, &y).unwrap();
    assert_eq!(xy.coeff(&[1, 1, 0]), qi(1));
    assert_eq!(xy.coeff(&[0, 0, 1]), qi(0));

    let yx = pbw_multiply(&y, &x).unwrap();
    assert_eq!(yx.coeff(&[1, 1, 0]), qi(1));
    assert_eq!(yx.coeff(&[0, 0, 1]), qi(-3));
}

/// Multiplying a series by a scalar shifts the log norm by minus the
/// scalar's valuation.
#[test]
fn scaling_shifts_the_norm() {
    let h = catalog("heisenberg_scaled(3)").unwrap().algebra;
    let rp = radius(3, 3, 4);
    let lam = TruncatedPBWSeries::from_terms(
        &h,
        6,
        vec![(vec![1, 0, 0], qi(1)), (vec![0, 1, 1], q(1, 2))],
    );
    let base = nu_norm(&lam, &rp);
    assert_eq!(
        nu_norm(&pbw_scale(&qi(9), &lam), &rp),
        base.add(&LogNorm::Finite(qi(-2)))
    );
    assert_eq!(
        nu_norm(&pbw_scale(&q(1, 3), &lam), &rp),
        base.add(&LogNorm::Finite(qi(1)))
    );
    assert_eq!(
        nu_norm(&pbw_scale(&qi(2), &lam), &rp),
        base,
        "units do not move the norm"
    );
}

proptest! {
    /// Dirac points have norm exactly one at any admissible radius.
    #[test]
    fn dirac_norm_is_one(x in -9i64..=9, y in -9i64..=9) {
        let rp = radius(3, 3, 4);
        let d = mahler_dirac(&[x, y], 8);
        prop_assert_eq!(mahler_norm(&d, &rp), LogNorm::Finite(qi(0)));
    }

    /// Scaling by powers of p shifts the norm linearly in the exponent.
    #[test]
    fn power_scaling_is_linear(k in -2i64..=2, c0 in 1i64..=40, c1 in -40i64..=-1) {
        let h = catalog("heisenberg_scaled(3)").unwrap().algebra;
        let rp = radius(3, 3, 4);
        let lam = TruncatedPBWSeries::from_terms(
            &h,
            6,
            vec![(vec![1, 0, 0], qi(c0)), (vec![0, 0, 1], qi(c1))],
        );
        let scale = q(3, 1).pow(k as i32);
        let shifted = nu_norm(&pbw_scale(&scale, &lam), &rp);
        prop_assert_eq!(shifted, nu_norm(&lam, &rp).add(&LogNorm::Finite(qi(-k))));
    }
}
