//! Cross-module properties over random inputs.

use fpeval::costmodel::{implemented_batch_cost, implemented_extension_cost};
use fpeval::format::{parse_point, parse_poly, point_to_json, poly_to_json};
use fpeval::{
    eval_batch_shared, eval_extension, eval_frobenius, eval_naive, eval_naive_embedded,
    frobenius_decompose, implemented_cost, max_depth, random_point, random_poly, recompose,
    subfield_embed, CountMode, ExtField, MulLedger, PrimeModulus,
};
use proptest::prelude::*;

fn prime() -> impl Strategy<Value = PrimeModulus> {
    prop::sample::select(vec![2u64, 3, 5, 7]).prop_map(|p| PrimeModulus::new(p).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn frobenius_matches_oracle_and_contract(
        p in prime(), r in 1usize..=3, n in 0usize..=9, m in 1usize..=3, seed: u64, pick: usize,
    ) {
        let field = ExtField::new(p, m).unwrap();
        let poly = random_poly(seed, p, 1, r, n).unwrap();
        let point = random_point(seed ^ 0x5eed, &field, r);
        let depth = pick % (max_depth(p, n) + 1);
        let mut ledger = MulLedger::structural();
        let v = eval_frobenius(&field, &poly, &point, depth, &mut ledger).unwrap();
        prop_assert_eq!(v, eval_naive(&field, &poly, &point).unwrap());
        prop_assert_eq!(ledger.total(), implemented_cost(p, n, r, depth).unwrap().total);

        let mut aware = MulLedger::new(CountMode::ValueAware);
        let w = eval_frobenius(&field, &poly, &point, depth, &mut aware).unwrap();
        prop_assert_eq!(w, v);
        prop_assert!(aware.total() <= ledger.total());
    }

    #[test]
    fn extension_matches_oracle_and_contract(
        p in prime(), r in 1usize..=2, n in 0usize..=6, s in 2usize..=3, seed: u64, pick: usize,
    ) {
        let m = 2 * s;
        let embedding = subfield_embed(p, s, m).unwrap();
        let field = ExtField::new(p, m).unwrap();
        let poly = random_poly(seed, p, s, r, n).unwrap();
        let point = random_point(seed.wrapping_add(1), &field, r);
        let depth = pick % (max_depth(p, n) + 1);
        let out = eval_extension(&embedding, &poly, &point, Some(depth), CountMode::Structural).unwrap();
        prop_assert_eq!(out.value, eval_naive_embedded(&embedding, &poly, &point).unwrap());
        prop_assert_eq!(out.ledger.total(), implemented_extension_cost(p, s, n, r, depth).unwrap().total);
    }

    #[test]
    fn batch_matches_members(p in prime(), r in 1usize..=2, n in 0usize..=8, count in 1usize..=4, seed: u64, pick: usize) {
        let field = ExtField::new(p, 2).unwrap();
        let polys: Vec<_> = (0..count as u64).map(|k| random_poly(seed ^ k, p, 1, r, n).unwrap()).collect();
        let point = random_point(seed, &field, r);
        let depth = pick % (max_depth(p, n) + 1);
        let mut ledger = MulLedger::structural();
        let values = eval_batch_shared(&field, &polys, &point, depth, &mut ledger).unwrap();
        for (q, v) in polys.iter().zip(values) {
            prop_assert_eq!(v, eval_naive(&field, q, &point).unwrap());
        }
        prop_assert_eq!(ledger.total(), implemented_batch_cost(p, count, n, r, depth).unwrap().total);
    }

    #[test]
    fn decompose_round_trips(p in prime(), r in 1usize..=3, n in 0usize..=12, seed: u64) {
        let poly = random_poly(seed, p, 1, r, n).unwrap();
        prop_assert_eq!(recompose(&frobenius_decompose(&poly).unwrap()), poly);
    }

    #[test]
    fn json_round_trips(p in prime(), s in 1usize..=2, r in 1usize..=3, n in 0usize..=6, m in 1usize..=3, seed: u64) {
        let poly = random_poly(seed, p, s, r, n).unwrap();
        prop_assert_eq!(parse_poly(&poly_to_json(&poly).to_string()).unwrap(), poly);
        let field = ExtField::new(p, m).unwrap();
        let point = random_point(seed, &field, r);
        let (back_field, back) = parse_point(&point_to_json(&field, &point).to_string(), p).unwrap();
        prop_assert_eq!(back_field.degree(), m);
        prop_assert_eq!(back, point);
    }
}
