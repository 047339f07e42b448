use cubic_bm::arith::ipow;
use cubic_bm::eisenstein::{canonical_place, LocalNum, PlaceK};
use cubic_bm::invariants::generator::{LinForm, LocalGen, Rep, Term};
use cubic_bm::invariants::*;
use cubic_bm::localsolve::{is_els, sample_points};
use cubic_bm::surfaces::{brauer_classify, AlgebraicPart, Surface, TableModel};
use cubic_bm::symbols::{decompose_local, InvariantValue, RationalPlace};
use cubic_bm::arith::rat;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn nonzero(lim: i128) -> impl Strategy<Value = i128> {
    (1..=lim, any::<bool>()).prop_map(|(a, neg)| if neg { -a } else { a })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn pairing_vanishes_at_integral_points(a1 in nonzero(30), t in prop::sample::select(vec![1i128, -1, 2, -2, 3]),
                                           a3 in nonzero(30), u in prop::array::uniform3(-8i128..=8)) {
        let a2 = a1 * t * t * t;
        let a0 = a1 * u[0].pow(3) + a2 * u[1].pow(3) + a3 * u[2].pow(3);
        prop_assume!(a0 != 0);
        let s = Surface::new(a0, a1, a2, a3).unwrap();
        prop_assume!(brauer_classify(&s).algebraic == AlgebraicPart::Z3);
        let g = choose_generator(&s, 50).unwrap();
        prop_assert_eq!(global_sum_at(&s, &g, &u).unwrap(), InvariantValue::ZERO, "{} at {:?}", s, u);
    }

    #[test]
    fn rescaling_preserves_obstruction(sets in prop::collection::vec(
        (prop::collection::btree_set(0i64..3, 1..=3), prop::sample::select(vec![SetKind::Exact, SetKind::UpperBound, SetKind::Sampled])), 1..5)) {
        let sets: Vec<(RationalPlace, ValueSet)> = sets.into_iter().enumerate().map(|(i, (vals, kind))| {
            (RationalPlace::Prime(i as u64 + 2), ValueSet {
                values: vals.into_iter().map(InvariantValue::new).collect(),
                kind,
                source: Source::GoodReduction,
            })
        }).collect();
        let doubled: Vec<_> = sets.iter().map(|(p, v)| (*p, v.scaled(2))).collect();
        let obstructed = |s: &[(RationalPlace, ValueSet)]| decide(AlgebraicPart::Z3, s).contains(&Verdict::IhpObstructed);
        prop_assert_eq!(obstructed(&sets), obstructed(&doubled));
    }
}

#[test]
fn pairing_on_sum_of_three_cubes_three() {
    let s = Surface::new(3, 1, 1, 1).unwrap();
    let g = choose_generator(&s, 10).unwrap();
    for u in [[1, 1, 1], [4, 4, -5], [4, -5, 4]] {
        assert_eq!(global_sum_at(&s, &g, &u).unwrap(), InvariantValue::ZERO);
    }
}

#[test]
fn mod9_congruence_value_at_sampled_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut done = 0;
    let mut a = 0i128;
    while done < 12 {
        a += 1;
        let (a0, a1, a3) = (2 + 9 * (a % 7), 8 + 9 * (a % 5), 5 - 9 * (a % 4));
        let s = Surface::new(a0, a1, a1, a3).unwrap();
        let g = choose_generator(&s, 10).unwrap();
        let pts = sample_points(&s, 3, 4, 20, &mut rng);
        if pts.is_empty() {
            continue;
        }
        for pt in &pts {
            assert_eq!(eval_two_coeff(&s, &g, pt).unwrap(), InvariantValue::TWO_THIRDS, "{s}");
        }
        done += 1;
    }
}

#[test]
fn split_root_choice_is_immaterial() {
    // 7 | a0: the two-coefficient class at the place over 7 and at its
    // conjugate with the roles of ω and ω² swapped
    let s = Surface::new(7 * 4, 1, 1, 3).unwrap();
    let g = choose_generator(&s, 10).unwrap();
    let p = 7u64;
    let lg = local_generator(&s, &g, p).unwrap();
    let w = canonical_place(p).unwrap();
    let wbar = w.conjugate();
    let prec = lg.prec;
    let c = LocalNum::from_rational(&rat(s.a0, s.a3), p, prec);
    let u1 = LinForm::coordinate(1, 1, p, prec);
    let u2 = LinForm::coordinate(2, 1, p, prec);
    let l0 = u1.add(&u2);
    let l1 = u1.add(&u2.times_omega());
    let l2 = u1.add(&u2.times_omega().times_omega());
    let term = |n, entry: &LinForm, places: &[PlaceK]| Term {
        n,
        entry: entry.clone(),
        other: places.iter().map(|w| decompose_local(&c, w).unwrap()).collect(),
        entry_first: false,
    };
    let gen_at = |places: Vec<PlaceK>, terms: Vec<Term>| LocalGen {
        p,
        prec,
        places,
        reps: vec![Rep { terms, constant: InvariantValue::ZERO }],
    };
    // (c, L1/L2) at the other place
    let swapped = gen_at(vec![wbar], vec![term(1, &l1, &[wbar]), term(-1, &l2, &[wbar])]);
    // (c, L1/L0) summed over both places
    let both = gen_at(vec![w, wbar], vec![term(1, &l1, &[w, wbar]), term(-1, &l0, &[w, wbar])]);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let pts = sample_points(&s, p, 5, 30, &mut rng);
    assert!(!pts.is_empty());
    for pt in &pts {
        let v = lg.eval_point(&s, pt).unwrap();
        assert_eq!(v, swapped.eval_point(&s, pt).unwrap());
        assert_eq!(v, both.eval_point(&s, pt).unwrap());
    }
}

fn family_model(s: &Surface) -> (TableModel, Option<EpsilonData>) {
    match choose_generator(s, DEFAULT_EPS_BOUND).unwrap() {
        Generator::Table { model, eps } => (model, eps),
        g => panic!("unexpected generator {g:?}"),
    }
}

#[test]
fn family_constants_at_sampled_points() {
    for q in [17i128, 53] {
        let s = Surface::new(2, 125, 5 * q, 4 * q).unwrap();
        let (model, eps) = family_model(&s);
        assert!(model.family().is_some());
        let mut rng = ChaCha8Rng::seed_from_u64(q as u64);
        for (p, want) in [(2u64, InvariantValue::ZERO), (3, InvariantValue::THIRD), (q as u64, InvariantValue::ZERO)] {
            let pts = sample_points(&s, p, 6, 50, &mut rng);
            assert_eq!(pts.len(), 50);
            for pt in &pts {
                assert_eq!(eval_table1(&s, &model, eps.as_ref(), pt).unwrap(), want, "q = {q}, p = {p}");
            }
        }
    }
}

#[test]
fn special_points_at_five() {
    let s = Surface::new(2, 125, 85, 68).unwrap();
    let (model, eps) = family_model(&s);
    let want = special_point_value(5).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let pts = sample_points(&s, 5, 6, 60, &mut rng);
    let m = ipow(5, 1);
    let mut checked = 0;
    for pt in &pts {
        let x = model.point(&pt.u);
        if x[0] % m == 0 && x[1] % m != 0 {
            assert_eq!(eval_table1(&s, &model, eps.as_ref(), pt).unwrap(), want);
            checked += 1;
        }
    }
    assert!(checked >= 20);
}

#[test]
fn surjective_prime_realizes_every_value() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for s in [Surface::new(5, 1, 1, 2).unwrap(), Surface::new(7 * 4, 1, 1, 3).unwrap(), Surface::new(2, 19, 1, 1).unwrap()] {
        let (p, _) = surjectivity_witnesses(&s)[0];
        let an = Analyzer::new(&s, AnalysisOptions::default());
        let g = an.generator.as_ref().unwrap();
        let lg = local_generator(&s, g, p).unwrap();
        let pts = sample_points(&s, p, 2, 300, &mut rng);
        let vals: std::collections::BTreeSet<_> = pts.iter().map(|pt| lg.eval_point(&s, pt).unwrap()).collect();
        assert_eq!(vals.len(), 3, "{s} at {p}");
    }
}

#[test]
fn u_prime_report() {
    for q in [17i128, 53] {
        let s = Surface::new(2, 125, 5 * q, 4 * q).unwrap();
        let r = bm_obstruction(&s, &is_els(&s, 100), &AnalysisOptions::default());
        assert!(r.els);
        assert_eq!(r.verdicts, vec![Verdict::IhpObstructed]);
        assert_eq!(r.sumset, vec![InvariantValue::TWO_THIRDS]);
        let third = vec![InvariantValue::THIRD];
        assert_eq!(r.place(RationalPlace::Prime(3)).unwrap().value_set, third);
        assert_eq!(r.place(RationalPlace::Prime(5)).unwrap().value_set, third);
        for p in [2, q as u64] {
            assert_eq!(r.place(RationalPlace::Prime(p)).unwrap().value_set, vec![InvariantValue::ZERO]);
        }
    }
}

#[test]
fn mod9_family_member_report() {
    let s = Surface::parse("17,17,-22,11").unwrap();
    let r = bm_obstruction(&s, &is_els(&s, 100), &AnalysisOptions::default());
    assert!(r.has(Verdict::IhpObstructed));
    assert_eq!(r.place(RationalPlace::Prime(3)).unwrap().value_set, vec![InvariantValue::TWO_THIRDS]);
    let two = &r.place(RationalPlace::Prime(2)).unwrap().value_set;
    assert!(two.iter().all(|v| [InvariantValue::ZERO, InvariantValue::TWO_THIRDS].contains(v)));
    for p in [11, 17] {
        assert_eq!(r.place(RationalPlace::Prime(p)).unwrap().value_set, vec![InvariantValue::ZERO]);
    }
}
