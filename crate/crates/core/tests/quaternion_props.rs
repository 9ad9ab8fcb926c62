mod common;

use std::collections::HashSet;

use common::ring;
use nilprod_core::text::{parse_quaternion, render_quaternion};
use nilprod_core::{Mat2, Quaternion, QuaternionIso, Ring};
use proptest::prelude::*;

fn quat(r: &Ring, idx: u64) -> Quaternion {
    let m = r.unpack(idx);
    Quaternion::new(m.a11, m.a12, m.a21, m.a22)
}

#[test]
fn hamilton_relations() {
    let r = ring("zmod:3^2");
    let minus_one = r.q_neg(&Quaternion::ONE);
    let (i, j, k) = (Quaternion::I, Quaternion::J, Quaternion::K);
    assert_eq!(r.q_mul(&i, &i), minus_one);
    assert_eq!(r.q_mul(&j, &j), minus_one);
    assert_eq!(r.q_mul(&k, &k), minus_one);
    assert_eq!(r.q_mul(&r.q_mul(&i, &j), &k), minus_one);
    assert_eq!(r.q_mul(&i, &j), k);
    assert_eq!(r.q_mul(&j, &i), r.q_neg(&k));
}

#[test]
fn homomorphism_exhaustive_gf3() {
    let r = ring("zmod:3^1");
    let iso = QuaternionIso::build(&r);
    for x in 0..81 {
        for y in 0..81 {
            let (a, b) = (quat(&r, x), quat(&r, y));
            let (ma, mb) = (iso.to_mat(&r, &a), iso.to_mat(&r, &b));
            assert_eq!(iso.to_mat(&r, &r.q_mul(&a, &b)), r.mat_mul(&ma, &mb));
            assert_eq!(iso.to_mat(&r, &r.q_add(&a, &b)), r.mat_add(&ma, &mb));
        }
    }
}

#[test]
fn bijective_on_small_rings() {
    for spec in ["zmod:3^1", "zmod:5^1", "zmod:3^2", "polyq:3^1^2", "polyq:3^2^1"] {
        let r = ring(spec);
        let iso = QuaternionIso::build(&r);
        let count = r.matrix_count().unwrap();
        let mut images = HashSet::new();
        for idx in 0..count {
            let x = quat(&r, idx);
            let m = iso.to_mat(&r, &x);
            images.insert(r.pack(&m));
            assert_eq!(iso.from_mat(&r, &m), x);
        }
        assert_eq!(images.len() as u64, count, "{spec}");
    }
}

#[test]
fn nilpotent_quaternions() {
    for (spec, expected) in [("zmod:3^1", 9), ("zmod:3^2", 729), ("polyq:3^1^2", 729), ("zmod:5^1", 25)] {
        let r = ring(spec);
        let iso = QuaternionIso::build(&r);
        let count = (0..r.matrix_count().unwrap())
            .filter(|&i| iso.is_nilpotent(&r, &quat(&r, i)))
            .count();
        assert_eq!(count, expected, "{spec}");
        let two_n = 2 * r.n() as u64;
        for i in (0..r.matrix_count().unwrap()).step_by(37) {
            let x = quat(&r, i);
            if iso.is_nilpotent(&r, &x) {
                let m = iso.to_mat(&r, &x);
                assert_eq!(r.mat_pow(&m, two_n), Mat2::ZERO);
            }
        }
    }
}

#[test]
fn every_constructed_basis_satisfies_relations() {
    for spec in ["zmod:3^3", "zmod:7^2", "polyq:5^2^2", "polyq:3^3^1", "zmod:11^1", "zmod:13^2"] {
        let r = ring(spec);
        let iso = QuaternionIso::build(&r);
        let [one, i, j, k] = *iso.basis();
        let minus = r.mat_neg(&Mat2::IDENTITY);
        assert_eq!(one, Mat2::IDENTITY);
        for b in [i, j, k] {
            assert_eq!(r.mat_mul(&b, &b), minus, "{spec}");
        }
        assert_eq!(r.mat_product(&[i, j, k]), minus, "{spec}");
        assert!(r.is_unit(iso.coordinate_det()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100_000))]

    #[test]
    fn homomorphism_sampled_z9(x in 0u64..6561, y in 0u64..6561) {
        let r = z9();
        let iso = z9_iso();
        let (a, b) = (quat(r, x), quat(r, y));
        let (ma, mb) = (iso.to_mat(r, &a), iso.to_mat(r, &b));
        prop_assert_eq!(iso.to_mat(r, &r.q_mul(&a, &b)), r.mat_mul(&ma, &mb));
        prop_assert_eq!(iso.to_mat(r, &r.q_add(&a, &b)), r.mat_add(&ma, &mb));
        prop_assert_eq!(iso.from_mat(r, &ma), a);
        prop_assert_eq!(parse_quaternion(r, &render_quaternion(r, &a)).unwrap(), a);
    }
}

fn z9() -> &'static Ring {
    static R: std::sync::OnceLock<Ring> = std::sync::OnceLock::new();
    R.get_or_init(|| ring("zmod:3^2"))
}

fn z9_iso() -> &'static QuaternionIso {
    static I: std::sync::OnceLock<QuaternionIso> = std::sync::OnceLock::new();
    I.get_or_init(|| QuaternionIso::build(z9()))
}
