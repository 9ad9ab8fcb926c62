mod common;

use common::{ring, Zn, M};
use std::collections::HashSet;

use nilprod_core::nilfactor::{
    census_orbit_union, census_set_product, formula_count, formula_divisible, formula_min_s,
    nilpotent_count_check, union_min_s,
};
use nilprod_core::{Gl2, MOrbitAtlas, Ring, DEFAULT_CAP};
use num_bigint::BigUint;

/// Closed form in plain `u128`, kept apart from the library's evaluator; `None` on overflow.
fn checked_formula(q: u128, n: u32, s: u32) -> Option<u128> {
    if n == 1 && s == 1 {
        return Some(q * q);
    }
    if n == 1 && s == 2 {
        return Some(q * q * q - q + 1);
    }
    let numer = (q + 2).checked_mul(q.checked_pow(3 * n + 1)?)? + q * q * q + q * q + 1;
    let denom = q * q + q + 1;
    assert_eq!(numer % denom, 0);
    Some(q.pow(2 * n) - q.pow(n + 1) + numer / denom - 1)
}

fn oracle_formula(q: u128, n: u32, s: u32) -> u128 {
    checked_formula(q, n, s).unwrap()
}

fn atlas(r: &Ring) -> MOrbitAtlas {
    MOrbitAtlas::build(r, &Gl2::new(r, DEFAULT_CAP).unwrap())
}

#[test]
fn formula_frozen_values() {
    assert_eq!(oracle_formula(3, 2, 3), 897);
    assert_eq!(oracle_formula(3, 3, 5), 23361);
    assert_eq!(oracle_formula(3, 1, 3), 33);
    assert_eq!(oracle_formula(5, 1, 3), 145);
    assert_eq!(oracle_formula(5, 1, 2), 121);
    let cases = [(3, 2, 3, 897u64), (3, 1, 2, 25), (3, 1, 1, 9), (3, 3, 5, 23361), (5, 1, 3, 145)];
    for (q, n, s, v) in cases {
        assert_eq!(formula_count(q, n, s).unwrap(), BigUint::from(v));
    }
}

#[test]
fn formula_agrees_with_oracle_and_divides() {
    let mut checked = 0;
    for p in [3u64, 5, 7, 11, 13] {
        for r in 1..=3 {
            let q = p.pow(r);
            for n in 1..=6 {
                assert!(formula_divisible(q, n), "q={q} n={n}");
                for s in formula_min_s(n)..formula_min_s(n) + 3 {
                    let lib = formula_count(q, n, s).unwrap();
                    if let Some(v) = checked_formula(q as u128, n, s) {
                        assert_eq!(lib, BigUint::from(v));
                        checked += 1;
                    }
                }
            }
        }
    }
    assert!(checked > 150);
    assert!(formula_count(3, 3, 4).is_err());
    // q = 2197, n = 6: beyond u128 for q^{3n+1}
    assert!(formula_count(2197, 6, 11).unwrap() > BigUint::from(u128::MAX));
}

#[test]
fn census_equivalence_small_rings() {
    for spec in ["zmod:3^1", "zmod:5^1", "zmod:7^1", "zmod:3^2", "polyq:3^1^2", "polyq:3^2^1"] {
        let r = ring(spec);
        let at = atlas(&r);
        let (q, n) = (r.q() as u64, r.n());
        let expected = formula_count(q, n, union_min_s(n)).unwrap();
        assert_eq!(BigUint::from(at.size()), expected, "{spec}");
        for s in union_min_s(n)..=2 * n + 2 {
            let set = census_set_product(&r, s, DEFAULT_CAP).unwrap();
            assert_eq!(&set, at.union(), "{spec} s={s}");
            assert_eq!(BigUint::from(set.count()), formula_count(q, n, s).unwrap());
            let rep = census_orbit_union(&r, &at, s).unwrap();
            assert_eq!(rep.matches(), Some(true));
        }
    }
}

#[test]
fn small_s_values_over_fields() {
    for (spec, s1, s2) in [("zmod:3^1", 9u64, 25u64), ("zmod:5^1", 25, 121), ("zmod:7^1", 49, 337)] {
        let r = ring(spec);
        assert_eq!(census_set_product(&r, 1, DEFAULT_CAP).unwrap().count(), s1);
        assert_eq!(census_set_product(&r, 2, DEFAULT_CAP).unwrap().count(), s2);
        assert_eq!(formula_count(r.q() as u64, 1, 2).unwrap(), BigUint::from(s2));
    }
}

#[test]
fn set_product_matches_integer_oracle() {
    let z = Zn { m: 9 };
    let nil: Vec<M> = z.all().filter(|x| z.pow(x, 4) == [0; 4]).collect();
    let mut set: HashSet<M> = nil.iter().copied().collect();
    let mut sizes = vec![set.len()];
    for _ in 1..4 {
        set = set
            .iter()
            .flat_map(|x| nil.iter().map(move |y| (x, y)))
            .map(|(x, y)| z.mul(x, y))
            .collect();
        sizes.push(set.len());
    }
    let r = ring("zmod:3^2");
    let lib: Vec<usize> = (1..=4)
        .map(|s| census_set_product(&r, s, DEFAULT_CAP).unwrap().count() as usize)
        .collect();
    assert_eq!(lib, sizes);
    assert_eq!(sizes[0], 729);
    assert_eq!(sizes[2], 897);
}

#[test]
fn nilpotent_counts_all_small_rings() {
    for spec in ["zmod:3^1", "zmod:5^1", "zmod:3^2", "polyq:3^1^2", "polyq:3^2^1", "zmod:7^1"] {
        let (e, f, ok) = nilpotent_count_check(&ring(spec), DEFAULT_CAP).unwrap();
        assert!(ok, "{spec}: {e} vs {f}");
    }
}

#[test]
fn two_factor_products_over_fields_never_trace_zero() {
    for spec in ["zmod:3^1", "zmod:5^1"] {
        let r = ring(spec);
        let nil = r.enumerate_nilpotents(DEFAULT_CAP).unwrap();
        for x in &nil {
            for y in &nil {
                let p = r.mat_mul(x, y);
                assert!(p.is_zero() || !r.trace(&p).is_zero(), "{spec}");
            }
        }
    }
}

#[test]
fn cap_is_enforced() {
    let r = ring("zmod:3^2");
    assert!(census_set_product(&r, 3, 1000).is_err());
}
