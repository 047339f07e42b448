//! End-to-end checks of the library against known results, run by the
//! `verify-paper` subcommand and by the acceptance test target.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::arith::{self, icbrt_exact, ipow, rint};
use crate::census::{
    a0_fails_unit_form, count_criterion_failures, count_els, count_mtr_positive, count_s, search_hasse_failures,
    CoeffBox, SearchFilters, Variation,
};
use crate::eisenstein::{classify_prime, lambda_expand, EisensteinInt, KElem};
use crate::invariants::{
    bm_obstruction, choose_generator, eval_table1, eval_two_coeff, global_sum_at, local_generator, special_point_value,
    surjective_at, AnalysisOptions, InvError, Generator, Surjectivity, Verdict,
};
use crate::localsolve::{brute_force_points, is_els, sample_points};
use crate::surfaces::{brauer_classify, AlgebraicPart, Surface};
use crate::symbols::{
    hilbert_cubic, is_cube_local, sum_over_places, sum_over_places_with, support_places, Convention, InvariantValue,
    RationalPlace,
};

/// Outcome of one numbered check.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub id: u8,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    pub millis: u128,
}

impl Check {
    pub fn line(&self) -> String {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        format!("criterion {:>2} [{tag}] {} ({} ms): {}", self.id, self.title, self.millis, self.detail)
    }
}

pub const TITLES: [&str; 10] = [
    "cubic reciprocity on S-units",
    "wild place digits",
    "mod 9 congruence at 3",
    "three-prime counterexamples q = 17, 53",
    "mod 18 family member (17, 11)",
    "pairing vanishes on integral points",
    "special point values and surjectivity",
    "oracle equivalences",
    "density and trend checks",
    "soundness negative controls",
];

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit_s: u64, what: &str) -> Result<(), String> {
    ensure(elapsed.as_secs() < limit_s, || format!("{what} took {elapsed:?}, limit {limit_s} s"))
}

/// Runs check `id` (1 to 10).
pub fn run(id: u8) -> Check {
    let start = Instant::now();
    let outcome = match id {
        1 => check_reciprocity(),
        2 => check_wild_digits(),
        3 => check_mod9(),
        4 => check_three_prime(),
        5 => check_mod18_member(),
        6 => check_pairing(),
        7 => check_special_values(),
        8 => check_oracles(),
        9 => check_trends(),
        10 => check_soundness(),
        _ => Err(format!("no check {id}")),
    };
    let title = TITLES.get(usize::from(id).wrapping_sub(1)).copied().unwrap_or("unknown");
    let (passed, detail) = match outcome {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    Check { id, title, passed, detail, millis: start.elapsed().as_millis() }
}

pub fn run_all() -> Vec<Check> {
    (1..=10).map(run).collect()
}

fn s_unit_generators() -> Vec<EisensteinInt> {
    let mut gens = vec![EisensteinInt::OMEGA, -EisensteinInt::ONE];
    for p in arith::primes_up_to(49) {
        for w in classify_prime(p).expect("prime") {
            gens.push(w.uniformiser().expect("finite place"));
        }
    }
    gens
}

/// Random S-unit with sparse small exponents (keeps coordinates in i128).
fn random_s_unit(gens: &[EisensteinInt], rng: &mut ChaCha8Rng) -> KElem {
    gens.iter().fold(KElem::from_int(1), |acc, g| {
        if rng.gen_bool(1.0 / 7.0) {
            acc * KElem::from_eis(*g).pow(rng.gen_range(-2..=2))
        } else {
            acc
        }
    })
}

/// Number of pairs out of `n` whose symbols sum to zero.
pub fn reciprocity_suite(n: usize, conv: Convention, seed: u64) -> usize {
    let gens = s_unit_generators();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .filter(|_| {
            let a = random_s_unit(&gens, &mut rng);
            let b = random_s_unit(&gens, &mut rng);
            sum_over_places_with(&a, &b, &support_places(&a, &b), conv) == Ok(InvariantValue::ZERO)
        })
        .count()
}

fn check_reciprocity() -> Outcome {
    let t = Instant::now();
    let ok = reciprocity_suite(500, Convention::Standard, 1);
    ensure(ok == 500, || format!("{} of 500 pairs violate reciprocity", 500 - ok))?;
    within(t.elapsed(), 10, "reciprocity")?;
    Ok(format!("500/500 pairs sum to 0 in {:?}", t.elapsed()))
}

fn check_wild_digits() -> Outcome {
    let d = |n: i128| lambda_expand(&KElem::from_int(n), 4).map(|e| e.digits()).map_err(|e| e.to_string());
    let (m2, four) = (d(-2)?, d(4)?);
    ensure(m2 == [0, 1, 1], || format!("digits of -2 are {m2:?}"))?;
    ensure(four == [0, 2, 2], || format!("digits of 4 are {four:?}"))?;
    let l = KElem::from_eis(EisensteinInt::LAMBDA);
    let om = KElem::from_eis(EisensteinInt::OMEGA);
    let local = hilbert_cubic(&l, &om, &crate::eisenstein::PlaceK::Ramified).map_err(|e| e.to_string())?;
    let global = sum_over_places(&l, &om, &support_places(&l, &om)).map_err(|e| e.to_string())?;
    ensure(local == InvariantValue::ZERO && global == InvariantValue::ZERO, || {
        format!("(λ, ω) = {local} locally, {global} globally")
    })?;
    Ok("-2 -> (0,1,1), 4 -> (0,2,2), (λ,ω) = 0".into())
}

fn check_mod9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut surfaces = 0;
    let mut points = 0;
    let mut draws = 0;
    while surfaces < 50 {
        draws += 1;
        ensure(draws < 5000, || format!("only {surfaces} soluble surfaces found"))?;
        let pick = |rng: &mut ChaCha8Rng, r: i128| {
            let k: i128 = rng.gen_range(-30..=30);
            r + 9 * k
        };
        let (a0, a1, a3) = (pick(&mut rng, 2), pick(&mut rng, 8), pick(&mut rng, 5));
        let Ok(s) = Surface::new(a0, a1, a1, a3) else { continue };
        let pts = sample_points(&s, 3, 4, 20, &mut rng);
        if pts.len() < 20 {
            continue;
        }
        let g = choose_generator(&s, 10).map_err(|e| e.to_string())?;
        for pt in &pts {
            let v = eval_two_coeff(&s, &g, pt).map_err(|e| format!("{s}: {e}"))?;
            ensure(v == InvariantValue::TWO_THIRDS, || format!("{s} at {:?}: {v}", pt.u))?;
        }
        surfaces += 1;
        points += pts.len();
    }
    Ok(format!("{surfaces} surfaces, {points} points, all 2/3"))
}

fn three_prime_surface(q: i128) -> Surface {
    Surface { a0: 2, a1: 125, a2: 5 * q, a3: 4 * q }
}

fn check_three_prime() -> Outcome {
    let mut notes = Vec::new();
    for q in [17i128, 53] {
        let t = Instant::now();
        let s = three_prime_surface(q);
        let els = is_els(&s, 100);
        ensure(els.els, || format!("q = {q}: not ELS"))?;
        let opts = AnalysisOptions::default();
        let r = bm_obstruction(&s, &els, &opts);
        ensure(r.has(Verdict::IhpObstructed), || format!("q = {q}: verdicts {:?}", r.verdicts))?;
        for pl in &r.places {
            let want = if pl.p == "3" || pl.p == "5" { InvariantValue::THIRD } else { InvariantValue::ZERO };
            ensure(pl.value_set == vec![want] && pl.exact, || format!("q = {q} at {}: {:?}", pl.p, pl.value_set))?;
        }
        // adelic combinations of sampled points at the nontrivial places
        let Ok(Generator::Table { model, eps }) = choose_generator(&s, opts.eps_bound) else {
            return Err(format!("q = {q}: no labeled model"));
        };
        let mut rng = ChaCha8Rng::seed_from_u64(q as u64);
        let primes = [2u64, 3, 5, q as u64];
        let mut per_place = Vec::new();
        for &p in &primes {
            let pts = sample_points(&s, p, 6, 100, &mut rng);
            ensure(pts.len() == 100, || format!("q = {q}: only {} points at {p}", pts.len()))?;
            let vals: Result<Vec<_>, _> = pts.iter().map(|pt| eval_table1(&s, &model, eps.as_ref(), pt)).collect();
            per_place.push(vals.map_err(|e| e.to_string())?);
        }
        for i in 0..100 {
            let total: InvariantValue = per_place.iter().map(|v| v[rng.gen_range(0..v.len())]).sum();
            ensure(total == InvariantValue::TWO_THIRDS, || format!("q = {q}: combination {i} sums to {total}"))?;
        }
        ensure(brute_force_points(&s, 300).is_empty(), || format!("q = {q}: integral point in box 300"))?;
        within(t.elapsed(), 60, &format!("q = {q}"))?;
        notes.push(format!("q={q}: obstructed, 100 combos = 2/3, {:?}", t.elapsed()));
    }
    Ok(notes.join("; "))
}

fn check_mod18_member() -> Outcome {
    let t = Instant::now();
    let s = Surface { a0: 11, a1: 17, a2: 17, a3: -22 };
    let r = bm_obstruction(&s, &is_els(&s, 100), &AnalysisOptions::default());
    ensure(r.has(Verdict::IhpObstructed), || format!("verdicts {:?}", r.verdicts))?;
    for pl in &r.places {
        let ok = match pl.p.as_str() {
            "3" => pl.value_set == vec![InvariantValue::TWO_THIRDS],
            "2" => pl.value_set.iter().all(|v| *v != InvariantValue::THIRD),
            _ => pl.value_set == vec![InvariantValue::ZERO],
        };
        ensure(ok, || format!("at {}: {:?}", pl.p, pl.value_set))?;
    }
    ensure(brute_force_points(&s, 300).is_empty(), || "integral point in box 300".into())?;
    within(t.elapsed(), 30, "analysis")?;
    let two: Vec<String> = r.place(RationalPlace::Prime(2)).map(|p| p.value_set.iter().map(|v| v.to_string()).collect()).unwrap_or_default();
    Ok(format!("obstructed, inv3 = 2/3, inv2 in {{{}}}, {:?}", two.join(","), t.elapsed()))
}

fn check_pairing() -> Outcome {
    let s = Surface { a0: 3, a1: 1, a2: 1, a3: 1 };
    let g = choose_generator(&s, 10).map_err(|e| e.to_string())?;
    for u in [[1, 1, 1], [4, 4, -5]] {
        let v = global_sum_at(&s, &g, &u).map_err(|e| e.to_string())?;
        ensure(v == InvariantValue::ZERO, || format!("(3,1,1,1) at {u:?}: {v}"))?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let (mut done, mut two_coeff, mut draws) = (0, 0, 0);
    while done < 20 {
        draws += 1;
        ensure(draws < 20_000, || format!("only {done} usable surfaces"))?;
        let mut a = [0i128; 3];
        for x in a.iter_mut() {
            *x = rng.gen_range(1..=30) * if rng.gen_bool(0.5) { -1 } else { 1 };
        }
        let u: [i128; 3] = std::array::from_fn(|_| rng.gen_range(-50..=50));
        let a0 = a[0] * u[0].pow(3) + a[1] * u[1].pow(3) + a[2] * u[2].pow(3);
        let Ok(s) = Surface::new(a0, a[0], a[1], a[2]) else { continue };
        if brauer_classify(&s).algebraic == AlgebraicPart::Trivial {
            continue;
        }
        let Ok(g) = choose_generator(&s, 30) else { continue };
        ensure(is_els(&s, 50).els, || format!("{s} has a point but is not ELS"))?;
        let v = match global_sum_at(&s, &g, &u) {
            Ok(v) => v,
            Err(InvError::UnsupportedRow(_)) => continue,
            Err(e) => return Err(format!("{s}: {e}")),
        };
        ensure(v == InvariantValue::ZERO, || format!("{s} at {u:?}: {v}"))?;
        two_coeff += usize::from(matches!(g, Generator::TwoCoeff { .. }));
        done += 1;
    }
    Ok(format!("(3,1,1,1) at 2 points and {done} random surfaces ({two_coeff} two-coefficient) sum to 0"))
}

fn check_special_values() -> Outcome {
    let s = three_prime_surface(17);
    let Ok(Generator::Table { model, eps }) = choose_generator(&s, 200) else {
        return Err("no labeled model".into());
    };
    let want = special_point_value(5).map_err(|e| e.to_string())?;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let pts = sample_points(&s, 5, 6, 100, &mut rng);
    let mut special = 0;
    for pt in &pts {
        let x = model.point(&pt.u);
        if x[0] % 5 == 0 && x[1] % 5 != 0 {
            let v = eval_table1(&s, &model, eps.as_ref(), pt).map_err(|e| e.to_string())?;
            ensure(v == want, || format!("point {:?}: {v}", pt.u))?;
            special += 1;
        }
    }
    ensure(special >= 20, || format!("only {special} special points"))?;
    // surjectivity at a witness prime of random surfaces
    let mut done = 0;
    let mut draws = 0;
    while done < 10 {
        draws += 1;
        ensure(draws < 5000, || format!("only {done} surfaces"))?;
        let p = [2u64, 5, 7, 11, 13][rng.gen_range(0..5)];
        let k: i128 = rng.gen_range(1..=40) * if rng.gen_bool(0.5) { -1 } else { 1 };
        let a: [i128; 3] = std::array::from_fn(|_| rng.gen_range(1..=40));
        let Ok(s) = Surface::new(p as i128 * k, a[0], a[1], a[2]) else { continue };
        if surjective_at(&s, p) != Some(Surjectivity::ConstantTerm) {
            continue;
        }
        let Ok(g) = choose_generator(&s, 30) else { continue };
        let Ok(lg) = local_generator(&s, &g, p) else { continue };
        let pts = sample_points(&s, p, 2, 300, &mut rng);
        let vals: BTreeSet<InvariantValue> = pts.iter().filter_map(|pt| lg.eval_point(&s, pt).ok()).collect();
        ensure(vals.len() == 3, || format!("{s} at {p}: only {vals:?}"))?;
        done += 1;
    }
    Ok(format!("{special} special points at 5 give 1/3; 10 witness primes surjective"))
}

fn s_oracle(b: u64) -> u64 {
    let good = |n: u64| arith::factorize(n as i128).iter().all(|&(p, _)| p % 3 == 2);
    let a: Vec<u64> = (1..=b).filter(|&x| x % 18 == 17 && good(x)).collect();
    let c: Vec<u64> = (1..=b).filter(|&x| x % 18 == 11 && good(x)).collect();
    a.iter().map(|x| c.iter().filter(|y| x.gcd(y) == 1).count() as u64).sum()
}

fn mtr_oracle(b: i128) -> u64 {
    let mut n = 0;
    for a1 in 1..=b {
        for a2 in 1..=b {
            for a3 in 1..=b {
                n += u64::from(a1.gcd(&a2).gcd(&a3) == 1 && icbrt_exact(4 * a1 * a2 * a3).is_some());
            }
        }
    }
    n
}

fn check_oracles() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..1000 {
        let p = [2u64, 3, 5, 7, 13][rng.gen_range(0..5)];
        let u = arith::strip_p(rng.gen_range(1..5000), p);
        let k = if p == 3 { 2 } else { 1 };
        let m = ipow(p, k);
        let brute = (0..m).any(|y| arith::rem(y * y * y - u, m) == 0);
        let got = is_cube_local(&rint(u), RationalPlace::Prime(p)).0;
        ensure(brute == got, || format!("cube test of {u} at {p}: {got}, brute force {brute}"))?;
    }
    for b in [2u64, 30, 60] {
        let (got, want) = (count_mtr_positive(b).map_err(|e| e.to_string())?, mtr_oracle(b as i128));
        ensure(got == want, || format!("Mtr({b}) = {got}, oracle {want}"))?;
    }
    for b in [17u64, 100, 1000] {
        let (got, want) = (count_s(b).map_err(|e| e.to_string())?, s_oracle(b));
        ensure(got == want, || format!("S({b}) = {got}, oracle {want}"))?;
    }
    let got = count_criterion_failures(100, Variation::VaryA0 { form: [1, 1, 1] }, false).map_err(|e| e.to_string())?;
    let want = 2 * (1..=100i128).filter(|&a| a0_fails_unit_form(a)).count() as u64;
    ensure(got == want, || format!("vary_a0 failures {got}, oracle {want}"))?;
    Ok("cube classes (1000), Mtr(<=60), S(<=1000), vary_a0(100) all exact".into())
}

fn check_trends() -> Outcome {
    let t = Instant::now();
    let b = 100_000u64;
    let els = count_els(b, Some([1, 1, 1])).map_err(|e| e.to_string())?;
    let ratio = els as f64 / (2 * b) as f64;
    ensure((ratio / (7.0 / 9.0) - 1.0).abs() < 0.01, || format!("ELS density {ratio:.5}"))?;
    let norm: Vec<f64> = [1_000u64, 10_000, 100_000]
        .iter()
        .map(|&b| count_s(b).map(|s| s as f64 * (b as f64).ln() / (b as f64).powi(2)))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    let center = norm.iter().product::<f64>().cbrt();
    ensure(norm.iter().all(|x| (x / center - 1.0).abs() <= 0.3), || {
        format!("S(B) log B / B^2 = {norm:.5?} leaves the 30% band around {center:.5}")
    })?;
    let dens: Vec<f64> = [20u64, 40, 80]
        .iter()
        .map(|&b| count_criterion_failures(b, Variation::VaryAll, false).map(|n| n as f64 / (2.0 * b as f64).powi(4)))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    ensure(dens[0] > dens[1] && dens[1] > dens[2], || format!("failure densities {dens:.4?}"))?;
    within(t.elapsed(), 600, "trend checks")?;
    Ok(format!("ELS density {ratio:.5}; S norm {norm:.5?}; failure density {dens:.4?}"))
}

fn check_soundness() -> Outcome {
    let out = search_hasse_failures(&CoeffBox::symmetric(5), &SearchFilters { point_box: 100, ..Default::default() });
    ensure(out.contradictions.is_empty(), || format!("certified surfaces with points: {:?}", out.contradictions))?;
    let flipped = reciprocity_suite(500, Convention::FlippedWild, 1);
    ensure(flipped < 500, || "flipped wild convention still satisfies reciprocity".into())?;
    Ok(format!(
        "{} surfaces scanned, {} certified, none with points; flipped convention breaks {} of 500 pairs",
        out.scanned,
        out.certified.len(),
        500 - flipped
    ))
}
