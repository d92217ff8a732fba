mod common;

use chainring::codes::{
    code_cardinality, count_self_dual, dual_code, enumerate_codes, enumerate_self_dual, fixed_block_candidates,
    is_self_dual, materialize, DEFAULT_CAP,
};
use chainring::factorization::Variant;
use chainring::ideals::count_ideals;
use chainring::oracle::{all_ideals_bruteforce, closure, dual_bruteforce, pair_codec, span, generating_set, DEFAULT_BOUND};
use chainring::par::Exec;
use common::Fixture;
use num_bigint::BigUint;

fn classification_matches(f: &Fixture) {
    let ctx = f.ctx();
    for (i, ring) in f.dec.rings(Variant::Plain).iter().enumerate() {
        let found = all_ideals_bruteforce(ring, Exec::Parallel).unwrap();
        let d = ctx.degree(i);
        assert_eq!(BigUint::from(found.len()), count_ideals(ctx.p, d, ctx.nu()));
        let mut hit = vec![0; found.len()];
        for spec in &f.ideals[i] {
            let set = closure(&spec.generators(ring).unwrap(), ring, DEFAULT_BOUND).unwrap();
            assert_eq!(BigUint::from(set.len()), spec.cardinality(ctx.p, d, ctx.nu()), "{spec}");
            let j = found.iter().position(|s| *s == set).unwrap_or_else(|| panic!("{spec} not found"));
            hit[j] += 1;
        }
        assert!(hit.iter().all(|&h| h == 1), "not a bijection: {hit:?}");
    }
}

#[test]
fn ideal_classification_on_z4() {
    classification_matches(&Fixture::new(2, 2, 1, 1, 1));
}

#[test]
fn ideal_classification_on_z8() {
    // 8^4 = 4096 elements, the largest ring the exhaustive search accepts
    classification_matches(&Fixture::new(2, 3, 1, 1, 1));
}

#[test]
fn exhaustive_search_refuses_large_rings() {
    let f = Fixture::new(3, 2, 1, 1, 1);
    let ring = &f.dec.rings(Variant::Plain)[0];
    assert!(matches!(
        all_ideals_bruteforce(ring, Exec::Sequential),
        Err(chainring::Error::BoundExceeded { .. })
    ));
}

#[test]
fn closure_is_idempotent() {
    let f = Fixture::new(2, 2, 1, 1, 1);
    let ring = &f.dec.rings(Variant::Plain)[0];
    let codec = pair_codec(ring);
    for spec in &f.ideals[0] {
        let set = closure(&spec.generators(ring).unwrap(), ring, DEFAULT_BOUND).unwrap();
        let again = span(codec, &generating_set(codec, &set), DEFAULT_BOUND).unwrap();
        assert_eq!(again, set);
    }
}

fn duals_match(f: &Fixture) -> usize {
    let ctx = f.ctx();
    let z = ctx.ring();
    let total = BigUint::from(ctx.p).pow(2 * ctx.s * ctx.len as u32);
    let mut self_dual = 0;
    for code in enumerate_codes(ctx, Variant::Plain) {
        let set = materialize(&f.dec, &code, DEFAULT_CAP).unwrap();
        let brute = dual_bruteforce(&set, z, ctx.len, Exec::Parallel).unwrap();
        assert_eq!(BigUint::from(set.len() * brute.len()), total, "{code}");
        let dual = dual_code(&f.dec, &code).unwrap();
        assert_eq!(materialize(&f.dec, &dual, DEFAULT_CAP).unwrap(), brute, "{code}");
        assert_eq!(code_cardinality(ctx, &dual), BigUint::from(brute.len()));
        if ctx.is_self_dual_compatible() && ctx.p == 2 {
            let by_sets = brute == set;
            assert_eq!(is_self_dual(&f.dec, &code).unwrap(), by_sets, "{code}");
            self_dual += by_sets as usize;
        }
    }
    self_dual
}

#[test]
fn dual_table_matches_exhaustive_annihilator_on_z4() {
    let f = Fixture::new(2, 2, 1, 1, 1);
    let n = duals_match(&f);
    assert_eq!(n, enumerate_self_dual(&f.dec, Exec::Sequential).unwrap().count());
}

#[test]
fn dual_table_matches_exhaustive_annihilator_on_z8() {
    let f = Fixture::new(2, 3, 1, 1, 1);
    let n = duals_match(&f);
    assert_eq!(n, 11);
}

#[test]
fn dual_table_matches_exhaustive_annihilator_on_z9() {
    // the two sides differ here: 1 + 3w squares to 7 mod 9
    let f = Fixture::new(3, 2, 1, 1, 1);
    duals_match(&f);
}

#[test]
fn dual_table_with_hat_side_codes() {
    let f = Fixture::new(3, 2, 1, 1, 1);
    let ctx = f.ctx();
    for code in enumerate_codes(ctx, Variant::Hat) {
        let set = materialize(&f.dec, &code, DEFAULT_CAP).unwrap();
        let brute = dual_bruteforce(&set, ctx.ring(), ctx.len, Exec::Parallel).unwrap();
        let dual = dual_code(&f.dec, &code).unwrap();
        assert_eq!(dual.variant, Variant::Plain);
        assert_eq!(materialize(&f.dec, &dual, DEFAULT_CAP).unwrap(), brute, "{code}");
    }
}

#[test]
fn fixed_block_of_length_fourteen_equals_exhaustive_search() {
    // Z_8[x]/<x^2 - 3> with δ = -1 is the fixed factor for both n = 1 and n = 7
    let small = Fixture::new(2, 3, 1, 1, 1);
    let big = Fixture::new(2, 3, 1, 7, 1);
    assert_eq!(small.dec.rings(Variant::Plain)[0].modulus(), big.dec.rings(Variant::Plain)[0].modulus());
    assert_eq!(small.ctx().delta[0], big.ctx().delta[0]);
    let ctx = small.ctx();
    let mut exhaustive = Vec::new();
    for code in enumerate_codes(ctx, Variant::Plain) {
        let set = materialize(&small.dec, &code, DEFAULT_CAP).unwrap();
        if dual_bruteforce(&set, ctx.ring(), ctx.len, Exec::Parallel).unwrap() == set {
            exhaustive.push(code.components[0].clone());
        }
    }
    let listed = fixed_block_candidates(&big.dec, 0, Exec::Parallel).unwrap();
    assert_eq!(listed, exhaustive);
    assert_eq!(count_self_dual(&big.dec, Exec::Parallel).unwrap(), BigUint::from(11u32 * 917));
}

#[test]
fn self_dual_codes_have_half_size() {
    let f = Fixture::new(2, 3, 1, 7, 1);
    let ctx = f.ctx();
    let half = BigUint::from(2u32).pow(ctx.s * ctx.len as u32);
    for code in enumerate_self_dual(&f.dec, Exec::Parallel).unwrap().step_by(97) {
        assert_eq!(code_cardinality(ctx, &code), half, "{code}");
        assert_eq!(dual_code(&f.dec, &code).unwrap().components, code.components);
    }
}
