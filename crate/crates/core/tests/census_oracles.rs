use cubic_bm::arith::{factorize, icbrt_exact};
use cubic_bm::census::*;
use cubic_bm::localsolve::{brute_force_points, is_els};
use cubic_bm::surfaces::Surface;
use num_integer::Integer;

fn s_oracle(b: u64) -> u64 {
    let good = |n: u64| factorize(n as i128).iter().all(|&(p, _)| p % 3 == 2);
    let a: Vec<u64> = (1..=b).filter(|&x| x % 18 == 17 && good(x)).collect();
    let c: Vec<u64> = (1..=b).filter(|&x| x % 18 == 11 && good(x)).collect();
    a.iter().map(|x| c.iter().filter(|y| x.gcd(y) == 1).count() as u64).sum()
}

fn mtr_oracle(b: i128) -> u64 {
    let mut n = 0;
    for a1 in 1..=b {
        for a2 in 1..=b {
            for a3 in 1..=b {
                let prod = 4 * a1 * a2 * a3;
                if a1.gcd(&a2).gcd(&a3) == 1 && icbrt_exact(prod).is_some() {
                    n += 1;
                }
            }
        }
    }
    n
}

#[test]
fn s_matches_direct_enumeration() {
    for b in [10, 17, 100, 347, 1000] {
        assert_eq!(count_s(b).unwrap(), s_oracle(b), "B = {b}");
    }
}

#[test]
fn mtr_matches_triple_loop() {
    assert_eq!(count_mtr_positive(2).unwrap(), 3);
    for b in [5u64, 17, 60] {
        assert_eq!(count_mtr_positive(b).unwrap(), mtr_oracle(b as i128), "B = {b}");
    }
    assert_eq!(count_mtr(60, MtrMode::FixedForm).unwrap(), 8 * mtr_oracle(60));
}

#[test]
fn vary_a0_failures_match_factorization() {
    let want = (1..=100i128).filter(|&a0| a0_fails_unit_form(a0)).count() as u64 * 2;
    let by_hand = (1..=100i128)
        .filter(|&a0| factorize(a0).iter().all(|&(p, e)| p == 3 || e >= 3))
        .count() as u64
        * 2;
    assert_eq!(want, by_hand);
    let got = count_criterion_failures(100, Variation::VaryA0 { form: [1, 1, 1] }, false).unwrap();
    assert_eq!(got, want);
}

#[test]
fn els_unit_form_is_the_mod9_condition() {
    let b = 20_000u64;
    let want = (1..=b as i128).filter(|a| !matches!(a.rem_euclid(9), 4 | 5)).count() as u64 * 2;
    assert_eq!(count_els(b, Some([1, 1, 1])).unwrap(), want);
}

#[test]
fn els_fixed_form_matches_per_surface_loop() {
    let b = 300i128;
    let direct = (-b..=b)
        .filter(|&a0| a0 != 0 && is_els(&Surface::new(a0, 1, 1, 2).unwrap(), 50).els)
        .count() as u64;
    assert_eq!(count_els(b as u64, Some([1, 1, 2])).unwrap(), direct);
}

#[test]
fn els_full_matches_per_tuple_loop() {
    let b = 4i128;
    let mut direct = 0;
    for a0 in -b..=b {
        for a1 in -b..=b {
            for a2 in -b..=b {
                for a3 in -b..=b {
                    if let Ok(s) = Surface::new(a0, a1, a2, a3) {
                        direct += u64::from(is_els(&s, 30).els);
                    }
                }
            }
        }
    }
    assert_eq!(count_els(b as u64, None).unwrap(), direct);
}

#[test]
fn shard_layouts_agree() {
    let jobs = [
        CensusJob::Mtr { mode: MtrMode::FixedForm },
        CensusJob::CriterionFailures { which: Variation::VaryAll, els_only: false },
        CensusJob::ElsFixedForm { form: [1, 2, 3] },
    ];
    for job in &jobs {
        let one = run_sharded(job, 24, 1, None).unwrap().value;
        for shards in [2, 5, 7] {
            assert_eq!(run_sharded(job, 24, shards, None).unwrap().value, one, "{job:?}");
        }
    }
}

#[test]
fn checkpoint_resume_reproduces_total() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ck.json");
    let job = CensusJob::Mtr { mode: MtrMode::FixedForm };
    let full = run_sharded(&job, 30, 4, Some(&path)).unwrap().value;
    let text = std::fs::read_to_string(&path).unwrap();
    let mut ck: serde_json::Value = serde_json::from_str(&text).unwrap();
    // forget two shards and resume
    let done = ck["done"].as_object_mut().unwrap();
    done.remove("1");
    done.remove("3");
    std::fs::write(&path, ck.to_string()).unwrap();
    assert_eq!(run_sharded(&job, 30, 4, Some(&path)).unwrap().value, full);
    assert!(run_sharded(&job, 31, 4, Some(&path)).is_err());
}

#[test]
fn csv_rows_are_stable() {
    let job = CensusJob::S;
    let r = run_sharded(&job, 1000, 1, None).unwrap().record;
    let mut a = Vec::new();
    let mut b = Vec::new();
    write_csv(&mut a, std::slice::from_ref(&r), None).unwrap();
    write_csv(&mut b, &[r], None).unwrap();
    assert_eq!(a, b);
    assert!(String::from_utf8(a).unwrap().starts_with("name,B,params,value\nS,1000,"));
}

#[test]
fn vary_all_failure_density_decreases() {
    let density = |b: u64| {
        let n = count_criterion_failures(b, Variation::VaryAll, false).unwrap();
        n as f64 / (2.0 * b as f64).powi(4)
    };
    let d: Vec<f64> = [10, 20, 40].map(density).to_vec();
    assert!(d[0] > d[1] && d[1] > d[2], "{d:?}");
}

#[test]
fn search_certifies_the_mod9_member() {
    let s = Surface::parse("17,17,-22,11").unwrap();
    let out = search_hasse_failures(&CoeffBox::single(&s), &SearchFilters::default());
    assert_eq!(out.certified.len(), 1);
    assert!(out.contradictions.is_empty());
}

#[test]
fn small_box_is_sound() {
    let out = search_hasse_failures(&CoeffBox::symmetric(5), &SearchFilters { point_box: 60, ..Default::default() });
    assert!(out.contradictions.is_empty(), "{:?}", out.contradictions);
    for r in &out.certified {
        let s = Surface::parse(&r.surface).unwrap();
        assert!(brute_force_points(&s, 60).is_empty());
    }
}
