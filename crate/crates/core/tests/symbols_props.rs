use cubic_bm::arith::{self, rint};
use cubic_bm::eisenstein::{classify_prime, EisensteinInt, KElem, PlaceK};
use cubic_bm::symbols::{
    hilbert_cubic, hilbert_quadratic, is_cube_local, quadratic_support, sum_over_places, support_places,
    InvariantValue, RationalPlace,
};
use proptest::prelude::*;

/// Generators of the S-units of k for S = places over primes below 50.
fn s_unit_generators() -> Vec<EisensteinInt> {
    let mut gens = vec![EisensteinInt::OMEGA, -EisensteinInt::ONE];
    for p in arith::primes_up_to(49) {
        for w in classify_prime(p).unwrap() {
            gens.push(w.uniformiser().unwrap());
        }
    }
    gens
}

fn s_unit(exps: &[i32]) -> KElem {
    let gens = s_unit_generators();
    gens.iter()
        .zip(exps)
        .fold(KElem::from_int(1), |acc, (g, &e)| acc * KElem::from_eis(*g).pow(e))
}

fn exps() -> impl Strategy<Value = Vec<i32>> {
    // sparse exponents keep the coordinates inside i128
    let n = s_unit_generators().len();
    proptest::collection::vec(prop_oneof![6 => Just(0), 1 => -2..=2i32], n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn reciprocity_for_s_units(x in exps(), y in exps()) {
        let (a, b) = (s_unit(&x), s_unit(&y));
        prop_assert_eq!(sum_over_places(&a, &b, &support_places(&a, &b)).unwrap(), InvariantValue::ZERO);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn bilinear_and_antisymmetric(x in exps(), y in exps(), z in exps(), g in 0usize..17, pi in 0usize..4) {
        let (a, b, c) = (s_unit(&x), s_unit(&y), s_unit(&z));
        let w = [PlaceK::Ramified, PlaceK::Split { p: 7, r: 2 }, PlaceK::Inert { p: 5 }, PlaceK::Split { p: 13, r: 3 }][pi];
        let ab_c = hilbert_cubic(&(a * b), &c, &w).unwrap();
        prop_assert_eq!(ab_c, hilbert_cubic(&a, &c, &w).unwrap() + hilbert_cubic(&b, &c, &w).unwrap());
        prop_assert_eq!(hilbert_cubic(&a, &b, &w).unwrap(), -hilbert_cubic(&b, &a, &w).unwrap());
        let t = KElem::from_eis(s_unit_generators()[g]);
        let cube = t * t * t * c;
        prop_assert_eq!(hilbert_cubic(&cube, &b, &w).unwrap(), hilbert_cubic(&c, &b, &w).unwrap());
    }

    #[test]
    fn quadratic_product_formula(a in -500i128..500, b in -500i128..500) {
        prop_assume!(a != 0 && b != 0);
        let (a, b) = (rint(a), rint(b));
        let total: u8 = quadratic_support(&a, &b).into_iter().map(|v| hilbert_quadratic(&a, &b, v)).sum();
        prop_assert_eq!(total % 2, 0);
    }

    #[test]
    fn local_cubes_match_brute_force(n in 1i128..5000, pi in 0usize..5, k in 1u32..=6) {
        let p = [2u64, 3, 5, 7, 13][pi];
        let m = arith::ipow(p, k);
        prop_assume!(m <= 20_000);
        let u = arith::strip_p(n, p);
        let brute = (0..m).any(|y| arith::rem(y * y * y - u, m) == 0);
        let verdict = is_cube_local(&rint(u), RationalPlace::Prime(p)).0;
        // a unit cube mod p^k for k past the Hensel threshold decides the question
        let threshold = if p == 3 { 2 } else { 1 };
        if k >= threshold {
            prop_assert_eq!(brute, verdict, "u={} p={} k={}", u, p, k);
        }
    }
}

#[test]
fn lambda_and_omega_pair_trivially() {
    let l = KElem::from_eis(EisensteinInt::LAMBDA);
    let om = KElem::from_eis(EisensteinInt::OMEGA);
    assert_eq!(hilbert_cubic(&l, &om, &PlaceK::Ramified).unwrap(), InvariantValue::ZERO);
}
