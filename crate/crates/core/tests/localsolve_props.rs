use cubic_bm::arith::ipow;
use cubic_bm::localsolve::{
    brute_force_points, class_status, has_zp_points, is_els, sample_points, ClassStatus, LocalVerdict,
};
use cubic_bm::surfaces::Surface;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Depth-first search over residue classes mod p^k, pruning empty classes
/// and stopping at the first Hensel-certified one.
fn refinement_oracle(s: &Surface, p: u64, max_depth: u32) -> bool {
    fn go(s: &Surface, p: u64, u: [i128; 3], k: u32, max_depth: u32) -> bool {
        match class_status(s, &u, p, k) {
            ClassStatus::Empty => false,
            ClassStatus::Certified { .. } => true,
            ClassStatus::Undecided if k >= max_depth => false,
            ClassStatus::Undecided => {
                let step = ipow(p, k);
                let pi = p as i128;
                (0..pi * pi * pi).any(|d| {
                    let v = [u[0] + step * (d % pi), u[1] + step * (d / pi % pi), u[2] + step * (d / (pi * pi))];
                    go(s, p, v, k + 1, max_depth)
                })
            }
        }
    }
    let pi = p as i128;
    (0..pi * pi * pi).any(|d| go(s, p, [d % pi, d / pi % pi, d / (pi * pi)], 1, max_depth))
}

fn coeff() -> impl Strategy<Value = i128> {
    (1i128..=60, any::<bool>()).prop_map(|(a, neg)| if neg { -a } else { a })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn pattern_solver_matches_refinement(a0 in coeff(), a1 in coeff(), a2 in coeff(), a3 in coeff(),
                                         p in prop::sample::select(vec![2u64, 3, 5, 7, 13])) {
        let s = Surface::new(a0, a1, a2, a3).unwrap();
        let verdict = has_zp_points(&s, p);
        let level = cubic_bm::localsolve::exhaustion_level(&s, p);
        let oracle = refinement_oracle(&s, p, level + 2);
        prop_assert_eq!(verdict.is_soluble(), oracle, "{} at {}", s, p);
        if let LocalVerdict::Soluble(Some(pt)) = verdict {
            prop_assert!(pt.verify(&s));
            let lifted = pt.lift(&s, pt.prec + 2).unwrap();
            prop_assert!(lifted.verify(&s));
        }
    }

    #[test]
    fn surfaces_with_points_are_els(u in prop::array::uniform3(-6i128..=6),
                                    a1 in coeff(), a2 in coeff(), a3 in coeff()) {
        let a0 = a1 * u[0].pow(3) + a2 * u[1].pow(3) + a3 * u[2].pow(3);
        prop_assume!(a0 != 0);
        let s = Surface::new(a0, a1, a2, a3).unwrap();
        let report = is_els(&s, 50);
        prop_assert!(report.els, "{}", s);
    }
}

#[test]
fn samples_are_certified() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let s = Surface::parse("125,85,68,2").unwrap();
    for p in [2u64, 3, 5, 17] {
        let pts = sample_points(&s, p, 6, 20, &mut rng);
        assert_eq!(pts.len(), 20, "p = {p}");
        assert!(pts.iter().all(|pt| pt.verify(&s)));
    }
}

#[test]
fn u_prime_has_no_small_points() {
    let s = Surface::parse("125,85,68,2").unwrap();
    assert!(brute_force_points(&s, 300).is_empty());
    assert!(is_els(&s, 100).els);
}

#[test]
fn sum_of_three_cubes_four_fails_at_three() {
    let s = Surface::new(4, 1, 1, 1).unwrap();
    let r = is_els(&s, 10);
    assert!(!r.els);
    assert!(matches!(
        r.places.iter().find(|(pl, _)| *pl == cubic_bm::symbols::RationalPlace::Prime(3)),
        Some((_, LocalVerdict::Insoluble { .. }))
    ));
}
