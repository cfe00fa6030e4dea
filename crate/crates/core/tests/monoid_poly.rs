use std::collections::BTreeSet;

use num_bigint::BigUint;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use subfield_core::census::{brute_force_census, brute_force_members, count_t};
use subfield_core::monoid::{enumerate_monoid, DEFAULT_BOUND};
use subfield_core::poly::{
    commutes_with_frobenius, compose_polys, func_from_poly, interpolate, is_canonical, is_member_t,
    is_subfield_preserving, is_subfield_preserving_literal,
};
use subfield_core::{FieldCtx, FuncTable, MonoidElem, MonoidShape, OrbitTable, PolyRep};

struct Setup {
    ctx: FieldCtx,
    table: OrbitTable,
    shape: MonoidShape,
}

fn setup(p: u32, e: u32, m: u32) -> Setup {
    let ctx = FieldCtx::new(p, e, m, None).unwrap();
    let table = OrbitTable::new(&ctx);
    let shape = MonoidShape::from_table(&table);
    Setup { ctx, table, shape }
}

/// Oracle: composition computed pointwise on tables, independent of `compose`.
fn pointwise(f: &FuncTable, g: &FuncTable) -> Vec<u32> {
    (0..g.len() as u32).map(|x| f.images()[g.images()[x as usize] as usize]).collect()
}

#[test]
fn delta_is_a_homomorphism_on_all_pairs_of_t23() {
    let s = setup(2, 1, 3);
    let all: Vec<_> = enumerate_monoid(&s.shape, DEFAULT_BOUND).unwrap().collect();
    assert_eq!(all.len(), 144);
    let tables: Vec<_> = all.iter().map(|a| a.delta(&s.table).unwrap()).collect();
    for (a, ta) in all.iter().zip(&tables) {
        for (b, tb) in all.iter().zip(&tables) {
            let ab = a.compose(b).unwrap();
            let tab = ab.delta(&s.table).unwrap();
            assert_eq!(tab.images(), pointwise(ta, tb).as_slice());
        }
    }
}

#[test]
fn delta_is_a_bijection_onto_the_canonical_preserving_maps() {
    for (p, e, m) in [(2, 1, 1), (2, 1, 2), (2, 1, 3), (3, 1, 2), (2, 2, 1)] {
        let s = setup(p, e, m);
        let mut images = BTreeSet::new();
        let mut units = 0u64;
        for a in enumerate_monoid(&s.shape, DEFAULT_BOUND).unwrap() {
            let f = a.delta(&s.table).unwrap();
            assert!(commutes_with_frobenius(&s.ctx, &f));
            assert!(is_subfield_preserving(&s.table, &f));
            for x in 0..f.len() as u32 {
                assert_eq!(s.ctx.subfield_degree_idx(f.apply(x)), s.ctx.subfield_degree_idx(x));
            }
            assert_eq!(MonoidElem::delta_inv(&f, &s.table).unwrap(), a);
            assert_eq!(a.is_invertible(), f.is_injective());
            units += a.is_invertible() as u64;
            images.insert(f);
        }
        assert_eq!(BigUint::from(images.len()), s.shape.cardinality());
        assert_eq!(BigUint::from(units), s.shape.unit_count());
        // same set as the exhaustive polynomial search
        let members: BTreeSet<_> = brute_force_members(&s.ctx, DEFAULT_BOUND)
            .unwrap()
            .into_iter()
            .map(|c| func_from_poly(&s.ctx, &PolyRep::reduce(&s.ctx, &c).unwrap()))
            .collect();
        assert_eq!(members, images, "q={} m={m}", s.ctx.q());
    }
}

#[test]
fn units_have_two_sided_inverses_in_t23() {
    let s = setup(2, 1, 3);
    let id = MonoidElem::identity(&s.shape);
    let mut units = 0;
    for a in enumerate_monoid(&s.shape, DEFAULT_BOUND).unwrap() {
        match a.invert() {
            Ok(inv) => {
                units += 1;
                assert_eq!(a.compose(&inv).unwrap(), id);
                assert_eq!(inv.compose(&a).unwrap(), id);
            }
            Err(_) => assert!(!a.delta(&s.table).unwrap().is_injective()),
        }
    }
    assert_eq!(units, 36);
}

#[test]
fn invertibility_frequency_matches_unit_density() {
    let s = setup(3, 1, 2);
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let n = 100_000;
    let hits = (0..n).filter(|_| MonoidElem::random(&s.shape, &mut rng).is_invertible()).count();
    let p = 288.0 / 5832.0;
    let sigma = (p * (1.0 - p) / n as f64).sqrt();
    assert!(((hits as f64 / n as f64) - p).abs() < 3.0 * sigma, "hits = {hits}");
}

#[test]
fn factorization_of_units_in_t32() {
    let s = setup(3, 1, 2);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let base: Vec<u32> = s.table.stratum(1).unwrap().elements().to_vec();
    for _ in 0..500 {
        let u = MonoidElem::random_unit(&s.shape, &mut rng);
        let (sq, h) = u.factor_unit(&s.table).unwrap();
        let hf = h.delta(&s.table).unwrap();
        assert_eq!(sq.compose(&hf), u.delta(&s.table).unwrap());
        for x in 0..sq.len() as u32 {
            if base.contains(&x) {
                assert_eq!(hf.apply(x), x);
            } else {
                assert_eq!(sq.apply(x), x);
            }
        }
        assert!(h.is_invertible());
        assert!(sq.is_injective());
    }
}

#[test]
fn polynomial_round_trip_and_closure_in_t22() {
    let s = setup(2, 1, 2);
    let members: Vec<PolyRep> = (0..16u32)
        .map(|code| PolyRep::reduce(&s.ctx, &[code & 1, (code >> 1) & 1, (code >> 2) & 1, code >> 3]).unwrap())
        .filter(|p| is_member_t(&s.ctx, &s.table, p))
        .collect();
    assert_eq!(members.len(), 8);
    assert!(members.contains(&PolyRep::x(&s.ctx)));
    for f in &members {
        for g in &members {
            assert!(is_member_t(&s.ctx, &s.table, &compose_polys(&s.ctx, f, g)));
        }
    }
}

#[test]
fn canonicity_routes_agree_on_all_256_candidates_of_t23() {
    let s = setup(2, 1, 3);
    let mut canonical = 0;
    for code in 0..256u32 {
        let coeffs: Vec<u32> = (0..8).map(|d| (code >> d) & 1).collect();
        let p = PolyRep::reduce(&s.ctx, &coeffs).unwrap();
        let f = func_from_poly(&s.ctx, &p);
        assert_eq!(interpolate(&s.ctx, &f), p);
        assert!(is_canonical(&s.ctx, &p));
        assert!(commutes_with_frobenius(&s.ctx, &f));
        canonical += 1;
        assert_eq!(is_subfield_preserving(&s.table, &f), is_subfield_preserving_literal(&s.ctx, &f));
    }
    assert_eq!(canonical, 256);
    // and on every map F_8 -> F_8 built from random tables, both canonical and not
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..2000 {
        let f = FuncTable::from_fn(8, |_| rng.gen_range(0..8));
        let p = interpolate(&s.ctx, &f);
        assert_eq!(is_canonical(&s.ctx, &p), commutes_with_frobenius(&s.ctx, &f));
    }
}

#[test]
fn membership_count_matches_formula_over_odd_field() {
    let s = setup(3, 1, 2);
    let counts = brute_force_census(&s.ctx, DEFAULT_BOUND).unwrap();
    assert_eq!(BigUint::from(counts.members), count_t(3, 2).unwrap());
}

#[test]
fn non_prime_base_field() {
    // q = 4, m = 2: T has 1^4 4^4 * 2^6 6^6 elements; check a sample through Δ.
    let s = setup(2, 2, 2);
    assert_eq!(s.shape.cardinality(), count_t(4, 2).unwrap());
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..200 {
        let a = MonoidElem::random(&s.shape, &mut rng);
        let f = a.delta(&s.table).unwrap();
        let p = interpolate(&s.ctx, &f);
        assert!(is_canonical(&s.ctx, &p));
        assert!(is_member_t(&s.ctx, &s.table, &p));
        assert_eq!(MonoidElem::delta_inv(&func_from_poly(&s.ctx, &p), &s.table).unwrap(), a);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn monoid_laws_on_t24(sa in any::<u64>(), sb in any::<u64>(), sc in any::<u64>()) {
        let s = setup(2, 1, 4);
        let a = MonoidElem::random_seeded(&s.shape, sa);
        let b = MonoidElem::random_seeded(&s.shape, sb);
        let c = MonoidElem::random_seeded(&s.shape, sc);
        let ab = a.compose(&b).unwrap();
        prop_assert_eq!(ab.compose(&c).unwrap(), a.compose(&b.compose(&c).unwrap()).unwrap());
        let (ta, tb) = (a.delta(&s.table).unwrap(), b.delta(&s.table).unwrap());
        let tab = ab.delta(&s.table).unwrap();
        prop_assert_eq!(tab.images().to_vec(), pointwise(&ta, &tb));
        let id = MonoidElem::identity(&s.shape);
        prop_assert_eq!(&a.compose(&id).unwrap(), &a);
        prop_assert_eq!(&id.compose(&a).unwrap(), &a);
    }

    #[test]
    fn canonicity_routes_agree_on_random_tables_of_t32(seed in any::<u64>(), canonical in any::<bool>()) {
        let s = setup(3, 1, 2);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = if canonical {
            let coeffs: Vec<u32> = (0..9).map(|_| rng.gen_range(0..3)).collect();
            func_from_poly(&s.ctx, &PolyRep::reduce(&s.ctx, &coeffs).unwrap())
        } else {
            FuncTable::from_fn(9, |_| rng.gen_range(0..9))
        };
        let p = interpolate(&s.ctx, &f);
        prop_assert_eq!(func_from_poly(&s.ctx, &p), f.clone());
        prop_assert_eq!(is_canonical(&s.ctx, &p), commutes_with_frobenius(&s.ctx, &f));
        prop_assert_eq!(is_subfield_preserving(&s.table, &f), is_subfield_preserving_literal(&s.ctx, &f));
    }
}
