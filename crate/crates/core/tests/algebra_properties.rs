mod common;

use std::sync::Arc;

use arens_core::{BanachAlgebra, InvertError, LaurentElement, Ring, Tolerances, WeightSequence};
use common::*;
use num_complex::Complex;
use proptest::prelude::*;
use rand::Rng;

const SLACK: f64 = 1e-10;

fn weights() -> Vec<Arc<WeightSequence<f64>>> {
    vec![
        Arc::new(WeightSequence::constant()),
        Arc::new(WeightSequence::geometric(2.0).unwrap()),
        Arc::new(WeightSequence::one_sided(2.0).unwrap()),
        Arc::new(WeightSequence::table(-2, vec![2.0, 1.5, 1.0, 1.2, 1.44]).unwrap()),
    ]
}

fn check_pair<A: BanachAlgebra<Real = f64>>(x: &A, y: &A) {
    let xy = x.checked_mul(y).unwrap();
    let yx = y.checked_mul(x).unwrap();
    assert!(xy.norm() <= x.norm() * y.norm() * (1.0 + SLACK), "{} > {}", xy.norm(), x.norm() * y.norm());
    assert!(x.checked_add(y).unwrap().norm() <= (x.norm() + y.norm()) * (1.0 + SLACK));
    assert!(xy.distance(&yx).unwrap() <= 1e-12 * x.norm() * y.norm());
    let lambda = Complex::new(-1.5, 0.25);
    assert!((x.scale(lambda).norm() - lambda.norm() * x.norm()).abs() <= 1e-12 * x.norm().max(1.0));
}

#[test]
fn finite_space_pairs() {
    let mut rng = rng(1);
    for _ in 0..1000 {
        let m = rng.gen_range(1..=4);
        check_pair(&finite(&mut rng, m, 3.0), &finite(&mut rng, m, 3.0));
    }
}

#[test]
fn beurling_pairs() {
    let mut rng = rng(2);
    for w in weights() {
        for _ in 0..1000 {
            check_pair(&laurent(&mut rng, &w, 6), &laurent(&mut rng, &w, 6));
        }
    }
}

#[test]
fn unit_has_norm_one() {
    assert_eq!(F::one(&arens_core::FiniteSpace { points: 3 }).norm(), 1.0);
    for w in weights() {
        assert_eq!(LaurentElement::one(&w).norm(), 1.0);
    }
}

#[test]
fn l1_of_nonnegatives_is_multiplicative() {
    let w = Arc::new(WeightSequence::<f64>::constant());
    let mut rng = rng(3);
    for _ in 0..500 {
        let mut draw = || {
            let len = rng.gen_range(1..6);
            let lo = rng.gen_range(-3..3);
            LaurentElement::new(
                w.clone(),
                lo,
                (0..len).map(|_| Complex::new(rng.gen_range(0.0..2.0), 0.0)).collect(),
            )
        };
        let (x, y) = (draw(), draw());
        let lhs = x.mul_ref(&y).norm();
        assert!((lhs - x.norm() * y.norm()).abs() <= 1e-12 * lhs.max(1.0));
    }
}

#[test]
fn associativity() {
    let mut rng = rng(4);
    let w = Arc::new(WeightSequence::geometric(1.5).unwrap());
    for _ in 0..200 {
        let (x, y, z) = (laurent(&mut rng, &w, 4), laurent(&mut rng, &w, 4), laurent(&mut rng, &w, 4));
        let scale = x.norm() * y.norm() * z.norm();
        assert!(x.mul_ref(&y).mul_ref(&z).distance(&x.mul_ref(&y.mul_ref(&z))).unwrap() <= 1e-12 * scale);
    }
}

#[test]
fn spec_distances() {
    let w = Arc::new(WeightSequence::<f64>::constant());
    let d0 = LaurentElement::delta(w.clone(), 0);
    let d1 = LaurentElement::delta(w.clone(), 1);
    assert_eq!(d0.distance(&d1).unwrap(), 2.0);
    assert_eq!(d1.add_ref(&d1), LaurentElement::monomial(w.clone(), 1, Complex::new(2.0, 0.0)));
    assert_eq!(d1.mul_ref(&LaurentElement::delta(w, -1)), d0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn finite_inversion_contract(values in prop::collection::vec((-2.0f64..2.0, -2.0f64..2.0), 1..5), zero_at in any::<prop::sample::Index>()) {
        let mut values: Vec<Complex<f64>> = values.into_iter().map(|(a, b)| Complex::new(a, b)).collect();
        let idx = zero_at.index(values.len());
        if idx % 2 == 0 {
            values[idx] = Complex::new(0.0, 0.0);
        }
        let x = F::new(values);
        let tol = Tolerances::default();
        match x.try_invert(&tol) {
            Ok(cert) => prop_assert!(x.mul_ref(&cert.inverse).distance(&x.one_like()).unwrap() < tol.invert),
            Err(InvertError::NotInvertible(w)) => {
                prop_assert!(x.coordinate(w.index).norm() <= tol.singular_rel * x.norm());
            }
            Err(e) => prop_assert!(false, "unexpected {e:?}"),
        }
    }

    #[test]
    fn beurling_inverse_certificates(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let w = Arc::new(WeightSequence::geometric(1.5).unwrap());
        let x = laurent(&mut rng, &w, 4);
        let tol = Tolerances::default();
        if let Ok(cert) = x.try_invert(&tol) {
            prop_assert!(x.mul_ref(&cert.inverse).distance(&x.one_like()).unwrap() < tol.invert);
            prop_assert!(cert.residual < tol.invert);
        }
    }
}
