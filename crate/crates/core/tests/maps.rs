mod common;

use std::sync::Arc;

use num_traits::Zero;
use octobil::maps::{codomain_change_of_basis, Construction};
use octobil::scalar::{self, Scalar};
use octobil::{builtin, BilinearMap, Tensor};

fn catalog() -> Vec<BilinearMap> {
    let mut maps: Vec<BilinearMap> = Construction::FIXED
        .iter()
        .map(|c| BilinearMap::from_construction(*c).unwrap())
        .collect();
    for id in ["poly_mul(3,5)", "poly_mul(1,4)", "complex_poly_mul(4,6)"] {
        maps.push(builtin(id).unwrap());
    }
    maps
}

fn axpy(a: &Scalar, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
    x.iter().zip(y).map(|(u, v)| a * u + v).collect()
}

#[test]
fn every_map_is_bilinear() {
    let mut rng = common::rng(11);
    for f in catalog() {
        let (r, s, _) = f.dims();
        for _ in 0..20 {
            let alpha = common::rationals(&mut rng, 1).pop().unwrap();
            let (x, x2) = (common::rationals(&mut rng, r), common::rationals(&mut rng, r));
            let (y, y2) = (common::rationals(&mut rng, s), common::rationals(&mut rng, s));
            let left = f.evaluate(&axpy(&alpha, &x, &x2), &y).unwrap();
            let expect = axpy(&alpha, &f.evaluate(&x, &y).unwrap(), &f.evaluate(&x2, &y).unwrap());
            assert_eq!(left, expect, "{} not linear in x", f.id());
            let right = f.evaluate(&x, &axpy(&alpha, &y, &y2)).unwrap();
            let expect = axpy(&alpha, &f.evaluate(&x, &y).unwrap(), &f.evaluate(&x, &y2).unwrap());
            assert_eq!(right, expect, "{} not linear in y", f.id());
        }
    }
}

#[test]
fn every_map_is_odd_in_the_first_argument() {
    let mut rng = common::rng(12);
    for f in catalog() {
        let (r, s, _) = f.dims();
        for _ in 0..20 {
            let x = common::rationals(&mut rng, r);
            let y = common::rationals(&mut rng, s);
            let neg: Vec<Scalar> = x.iter().map(|v| -v).collect();
            let lhs = f.evaluate(&neg, &y).unwrap();
            let rhs: Vec<Scalar> = f.evaluate(&x, &y).unwrap().into_iter().map(|v| -v).collect();
            assert_eq!(lhs, rhs, "{}", f.id());
        }
    }
}

#[test]
fn tensor_matches_formula() {
    let mut rng = common::rng(13);
    for f in catalog() {
        let t = f.as_tensor();
        let (r, s, _) = f.dims();
        for _ in 0..25 {
            let x = common::rationals(&mut rng, r);
            let y = common::rationals(&mut rng, s);
            assert_eq!(t.apply(&x, &y), f.evaluate(&x, &y).unwrap(), "{}", f.id());
        }
    }
}

#[test]
fn tensor_json_round_trip() {
    for f in catalog() {
        let json = f.as_tensor().to_json().unwrap();
        let back = Tensor::from_json(&json).unwrap();
        assert_eq!(&back, f.as_tensor(), "{}", f.id());
        assert_eq!(back.to_json().unwrap(), json);
    }
}

#[test]
fn main_f_matches_octonion_oracle() {
    let f = builtin("main_f").unwrap();
    let mut rng = common::rng(14);
    for _ in 0..200 {
        let x = common::ints(&mut rng, 32, 7);
        let y = common::ints(&mut rng, 32, 7);
        let got = f.evaluate(&common::to_scalars(&x), &common::to_scalars(&y)).unwrap();
        assert_eq!(got, common::to_scalars(&common::main_f_oracle(&x, &y)));
    }
}

#[test]
fn algebra_products_have_invertible_frozen_maps() {
    let mut rng = common::rng(15);
    for id in ["real_mul", "complex_mul", "quaternion_mul", "octonion_mul"] {
        let f = builtin(id).unwrap();
        let (r, _, _) = f.dims();
        for _ in 0..50 {
            let x = common::rationals(&mut rng, r);
            if scalar::is_zero_vec(&x) {
                continue;
            }
            assert_eq!(f.fixed_left_matrix(&x).unwrap().rank(), r);
            assert_eq!(f.fixed_right_matrix(&x).unwrap().rank(), r);
        }
    }
}

#[test]
fn intro_f_is_the_degree_one_polynomial_product() {
    let a = builtin("intro_f_deg1").unwrap();
    let b = builtin("poly_mul(2,2)").unwrap();
    assert_eq!(a.as_tensor(), b.as_tensor());
}

#[test]
fn transpose_swaps_arguments() {
    let f = Arc::new(builtin("f2").unwrap());
    let t = f.transpose();
    assert_eq!(t.id(), "f2^T");
    assert_eq!(t.dims(), (16, 32, 40));
    let mut rng = common::rng(16);
    let x = common::rationals(&mut rng, 32);
    let y = common::rationals(&mut rng, 16);
    assert_eq!(t.evaluate(&y, &x).unwrap(), f.evaluate(&x, &y).unwrap());
}

#[test]
fn quotient_of_polynomial_product_is_complex_multiplication() {
    let p = Arc::new(builtin("poly_mul(2,2)").unwrap());
    let q = p.quotient_project(&scalar::ints(&[1, 0, 1])).unwrap();
    assert_eq!(q.dims(), (2, 2, 2));
    let c = builtin("complex_mul").unwrap();
    let m = codomain_change_of_basis(q.as_tensor(), c.as_tensor()).expect("change of basis");
    assert_eq!(m.rank(), 2);
    let mut rng = common::rng(17);
    for _ in 0..20 {
        let x = common::rationals(&mut rng, 2);
        let y = common::rationals(&mut rng, 2);
        assert_eq!(m.mul_vec(&q.evaluate(&x, &y).unwrap()), c.evaluate(&x, &y).unwrap());
    }
}

#[test]
fn dimension_errors() {
    let f = builtin("f1").unwrap();
    assert!(f.evaluate(&scalar::zeros(23), &scalar::zeros(24)).is_err());
    assert!(builtin("complex_poly_mul(3,2)").is_err());
    assert!(builtin("poly_mul(0,2)").is_err());
    assert!(builtin("nonsense").is_err());
    assert!(f.evaluate(&scalar::zeros(24), &scalar::zeros(24)).unwrap().iter().all(Zero::is_zero));
}
