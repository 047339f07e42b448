//! Exact coefficient counts over integer boxes: the mod 18 family, the
//! transcendental condition, local solubility, the surjectivity criteria,
//! and a search for certified integral Hasse failures.
//!
//! Counters run over sub-boxes ("units") that are grouped into shards;
//! totals are integer sums, so any shard layout gives the same result.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Mutex;
use std::time::Instant;

use num_integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{self, factor_with_spf, mobius_table, spf_table};
use crate::invariants::{bm_obstruction, surjectivity_witnesses, AnalysisOptions, ObstructionReport, Surjectivity, Verdict};
use crate::localsolve::{brute_force_points, els_quick, is_els};
use crate::surfaces::Surface;

#[derive(Debug, Error)]
pub enum CensusError {
    #[error("bound {b} exceeds the limit {limit} for {what}")]
    TooLarge { what: &'static str, b: u64, limit: u64 },
    #[error("unknown counter {0:?}")]
    UnknownCounter(String),
    #[error("checkpoint: {0}")]
    Checkpoint(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

/// Outcome of the surjectivity criteria.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CriterionOutcome {
    Pass { p: u64, via: Surjectivity },
    Fail,
}

/// First prime at which a surjectivity criterion holds. A pass rules out
/// an algebraic obstruction to the integral Hasse principle and, for an
/// ELS surface, makes the invariant map at p non-constant.
pub fn criterion_filter(s: &Surface) -> CriterionOutcome {
    match surjectivity_witnesses(s).first() {
        Some(&(p, via)) => CriterionOutcome::Pass { p, via },
        None => CriterionOutcome::Fail,
    }
}

/// Factorizations of 1..=n from one smallest-prime-factor sieve.
struct Factors(Vec<Vec<(u64, u32)>>);

impl Factors {
    fn new(n: usize) -> Self {
        let spf = spf_table(n.max(1));
        Self((0..=n).map(|k| if k < 2 { vec![] } else { factor_with_spf(k, &spf) }).collect())
    }

    fn of(&self, n: u64) -> &[(u64, u32)] {
        &self.0[n as usize]
    }
}

/// Criterion pass on absolute values, with precomputed factorizations.
fn passes(a: [u64; 4], f: &Factors) -> bool {
    let coprime = |p: u64, skip: usize| (0..4).all(|j| j == skip || !a[j].is_multiple_of(p));
    if f.of(a[0]).iter().any(|&(p, e)| p != 3 && e < 3 && coprime(p, 0)) {
        return true;
    }
    (1..4).any(|i| f.of(a[i]).iter().any(|&(p, e)| p >= 17 && e < 3 && coprime(p, i)))
}

/// Every prime of n is ≡ 2 mod 3.
fn all_primes_2mod3(spf: &[u32], n: usize) -> bool {
    let mut n = n;
    while n > 1 {
        let p = spf[n] as usize;
        if p % 3 != 2 {
            return false;
        }
        n /= p;
    }
    true
}

pub const S_LIMIT: u64 = 10_000_000;

/// Coprime pairs a, b ≤ B with a ≡ 17, b ≡ 11 mod 18 and every prime of
/// ab ≡ 2 mod 3, by Möbius inversion over common divisors.
pub fn count_s(b: u64) -> Result<u64, CensusError> {
    if b > S_LIMIT {
        return Err(CensusError::TooLarge { what: "S", b, limit: S_LIMIT });
    }
    let n = b as usize;
    let spf = spf_table(n.max(1));
    let mu = mobius_table(n.max(1));
    let ok = |k: usize, r: usize| k % 18 == r && all_primes_2mod3(&spf, k);
    let good_a: Vec<bool> = (0..=n).map(|k| ok(k, 17)).collect();
    let good_b: Vec<bool> = (0..=n).map(|k| ok(k, 11)).collect();
    let mut total: i64 = 0;
    for d in 1..=n {
        if mu[d] == 0 || d % 2 == 0 || d % 3 == 0 || !all_primes_2mod3(&spf, d) {
            continue;
        }
        let (mut ca, mut cb) = (0i64, 0i64);
        for m in (d..=n).step_by(d) {
            ca += i64::from(good_a[m]);
            cb += i64::from(good_b[m]);
        }
        total += i64::from(mu[d]) * ca * cb;
    }
    Ok(total as u64)
}

/// Positive triples a1, a2, a3 ≤ B with gcd 1 and a1a2a3 ≡ 2 modulo
/// cubes, for a fixed a1.
fn mtr_row(a1: u64, b: u64, f: &Factors) -> u64 {
    let mut count = 0;
    for a2 in 1..=b {
        // a3 ∈ 2(a1a2)² · Q*³, so a3 = r·t³ with r the cube-free part
        let mut exps: BTreeMap<u64, u32> = BTreeMap::new();
        for &(p, e) in f.of(a1).iter().chain(f.of(a2)) {
            *exps.entry(p).or_default() += e;
        }
        let mut r: u64 = 1;
        let mut big = false;
        exps.entry(2).or_default();
        for (&p, &e) in &exps {
            let k = (2 * e + u32::from(p == 2)) % 3;
            r = match r.checked_mul(p.pow(k)) {
                Some(x) if x <= b => x,
                _ => {
                    big = true;
                    break;
                }
            };
        }
        if big {
            continue;
        }
        let g = a1.gcd(&a2);
        let mut t = 1;
        while r * t * t * t <= b {
            if g.gcd(&(r * t * t * t)) == 1 {
                count += 1;
            }
            t += 1;
        }
    }
    count
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MtrMode {
    /// Triples (a1, a2, a3) ∈ ([−B, B] \ {0})³ for one fixed a0.
    FixedForm,
    /// Quadruples with a0 ∈ [−B, B] \ {0} as well.
    Full,
}

pub const MTR_LIMIT: u64 = 10_000;

/// Positive-octant count behind [`count_mtr`].
pub fn count_mtr_positive(b: u64) -> Result<u64, CensusError> {
    if b > MTR_LIMIT {
        return Err(CensusError::TooLarge { what: "Mtr", b, limit: MTR_LIMIT });
    }
    let f = Factors::new(b as usize);
    Ok((1..=b).into_par_iter().map(|a1| mtr_row(a1, b, &f)).sum())
}

/// Coprime coefficient triples with a1a2a3 ≡ 2 modulo cubes. The
/// condition ignores signs, so the count is 8 times the positive octant.
pub fn count_mtr(b: u64, mode: MtrMode) -> Result<u64, CensusError> {
    let fixed = 8 * count_mtr_positive(b)?;
    Ok(match mode {
        MtrMode::FixedForm => fixed,
        MtrMode::Full => 2 * b * fixed,
    })
}

/// Which coefficients range over the box.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Variation {
    /// a0 ∈ [−B, B] \ {0}, (a1, a2, a3) fixed.
    VaryA0 { form: [i128; 3] },
    /// (a1, a2, a3) ∈ ([−B, B] \ {0})³, a0 fixed.
    VaryForm { a0: i128 },
    /// All four coefficients in [−B, B] \ {0}.
    VaryAll,
}

/// A named counter. Both the criteria and local solubility are invariant
/// under sign changes of any coefficient (u_i ↦ −u_i and negating the
/// equation), so the varying coefficients run over positive values and
/// each hit counts 2^(number of varying coefficients).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CensusJob {
    S,
    Mtr { mode: MtrMode },
    ElsFixedForm { form: [i128; 3] },
    ElsFull,
    CriterionFailures { which: Variation, els_only: bool },
    CriterionPasses { which: Variation, els_only: bool },
}

pub const ELS_FIXED_LIMIT: u64 = 100_000;
pub const ELS_FULL_LIMIT: u64 = 30;
pub const VARY_ALL_LIMIT: u64 = 100;
const CHUNK: u64 = 1000;

impl CensusJob {
    /// Parses a counter from its command-line name and optional parameter:
    /// `S`, `Mtr`, `Mtr-full`, `ELS-fixed <a1,a2,a3>`, `ELS-full`, and
    /// `fail-vary-a0 <a1,a2,a3>`, `fail-vary-form <a0>`, `fail-vary-all`
    /// (likewise with `pass-`).
    pub fn from_spec(name: &str, param: Option<&str>, els_only: bool) -> Result<Self, CensusError> {
        let bad = |why: &str| CensusError::UnknownCounter(format!("{name}: {why}"));
        let form = || -> Result<[i128; 3], CensusError> {
            let p = param.ok_or_else(|| bad("needs a form a1,a2,a3"))?;
            let v: Vec<i128> = p.split(',').map(|t| t.trim().parse::<i128>()).collect::<Result<_, _>>().map_err(|_| bad("bad form"))?;
            match v[..] {
                [a, b, c] if a != 0 && b != 0 && c != 0 => Ok([a, b, c]),
                _ => Err(bad("form needs three nonzero integers")),
            }
        };
        let a0 = || -> Result<i128, CensusError> {
            match param.map(|p| p.trim().parse::<i128>()) {
                Some(Ok(a)) if a != 0 => Ok(a),
                _ => Err(bad("needs a nonzero a0")),
            }
        };
        let variation = |v: &str| -> Result<Variation, CensusError> {
            match v {
                "vary-a0" => Ok(Variation::VaryA0 { form: form()? }),
                "vary-form" => Ok(Variation::VaryForm { a0: a0()? }),
                "vary-all" => Ok(Variation::VaryAll),
                _ => Err(CensusError::UnknownCounter(name.into())),
            }
        };
        Ok(match name {
            "S" => CensusJob::S,
            "Mtr" => CensusJob::Mtr { mode: MtrMode::FixedForm },
            "Mtr-full" => CensusJob::Mtr { mode: MtrMode::Full },
            "ELS-fixed" => CensusJob::ElsFixedForm { form: form()? },
            "ELS-full" => CensusJob::ElsFull,
            _ => match name.split_once('-') {
                Some(("fail", v)) => CensusJob::CriterionFailures { which: variation(v)?, els_only },
                Some(("pass", v)) => CensusJob::CriterionPasses { which: variation(v)?, els_only },
                _ => return Err(CensusError::UnknownCounter(name.into())),
            },
        })
    }

    /// Record name.
    pub fn name(&self) -> &'static str {
        match self {
            CensusJob::S => "S",
            CensusJob::Mtr { .. } => "Mtr",
            CensusJob::ElsFixedForm { .. } => "ELS_fixed_form",
            CensusJob::ElsFull => "ELS_full",
            CensusJob::CriterionFailures { .. } => "criterion_fail",
            CensusJob::CriterionPasses { .. } => "criterion_pass",
        }
    }

    /// Parameters in a stable textual form.
    pub fn params(&self) -> String {
        let var = |w: &Variation| match w {
            Variation::VaryA0 { form } => format!("vary_a0 form={},{},{}", form[0], form[1], form[2]),
            Variation::VaryForm { a0 } => format!("vary_form a0={a0}"),
            Variation::VaryAll => "vary_all".into(),
        };
        match self {
            CensusJob::S => "a<=B b<=B".into(),
            CensusJob::Mtr { mode: MtrMode::FixedForm } => "fixed_form box=[-B,B]^3".into(),
            CensusJob::Mtr { mode: MtrMode::Full } => "full box=[-B,B]^4".into(),
            CensusJob::ElsFixedForm { form } => format!("form={},{},{} a0 in [-B,B]", form[0], form[1], form[2]),
            CensusJob::ElsFull => "box=[-B,B]^4".into(),
            CensusJob::CriterionFailures { which, els_only } | CensusJob::CriterionPasses { which, els_only } => {
                format!("{} els_only={els_only}", var(which))
            }
        }
    }

    fn check_bound(&self, b: u64) -> Result<(), CensusError> {
        let (what, limit) = match self {
            CensusJob::S => ("S", S_LIMIT),
            CensusJob::Mtr { .. } => ("Mtr", MTR_LIMIT),
            CensusJob::ElsFixedForm { .. } => ("ELS_fixed_form", ELS_FIXED_LIMIT),
            CensusJob::ElsFull => ("ELS_full", ELS_FULL_LIMIT),
            CensusJob::CriterionFailures { which: Variation::VaryAll, els_only: false }
            | CensusJob::CriterionPasses { which: Variation::VaryAll, els_only: false } => ("vary_all", VARY_ALL_LIMIT),
            CensusJob::CriterionFailures { which: Variation::VaryAll, .. }
            | CensusJob::CriterionPasses { which: Variation::VaryAll, .. } => ("vary_all with ELS", ELS_FULL_LIMIT),
            _ => ("criterion", ELS_FIXED_LIMIT),
        };
        if b > limit {
            return Err(CensusError::TooLarge { what, b, limit });
        }
        Ok(())
    }

    /// Number of independent sub-boxes.
    pub fn units(&self, b: u64) -> u64 {
        match self {
            CensusJob::S => 1,
            CensusJob::ElsFixedForm { .. } => b.div_ceil(CHUNK),
            CensusJob::CriterionFailures { which: Variation::VaryA0 { .. }, .. }
            | CensusJob::CriterionPasses { which: Variation::VaryA0 { .. }, .. } => b.div_ceil(CHUNK),
            _ => b,
        }
    }

    fn count_unit(&self, b: u64, i: u64, f: &Factors) -> u64 {
        match self {
            CensusJob::S => count_s(b).expect("bound checked"),
            CensusJob::Mtr { mode } => {
                let row = 8 * mtr_row(i + 1, b, f);
                if *mode == MtrMode::Full {
                    2 * b * row
                } else {
                    row
                }
            }
            CensusJob::ElsFixedForm { form } => {
                let hits = chunk(b, i)
                    .filter(|&a0| els_quick(&Surface { a0: a0 as i128, a1: form[0], a2: form[1], a3: form[2] }))
                    .count() as u64;
                2 * hits
            }
            CensusJob::ElsFull => {
                let a0 = (i + 1) as i128;
                let mut hits = 0;
                for a1 in 1..=b as i128 {
                    for a2 in 1..=b as i128 {
                        for a3 in 1..=b as i128 {
                            hits += u64::from(els_quick(&Surface { a0, a1, a2, a3 }));
                        }
                    }
                }
                16 * hits
            }
            CensusJob::CriterionFailures { which, els_only } => criterion_unit(which, *els_only, false, b, i, f),
            CensusJob::CriterionPasses { which, els_only } => criterion_unit(which, *els_only, true, b, i, f),
        }
    }
}

fn chunk(b: u64, i: u64) -> impl Iterator<Item = u64> {
    (i * CHUNK + 1)..=((i + 1) * CHUNK).min(b)
}

fn criterion_unit(which: &Variation, els_only: bool, want_pass: bool, b: u64, i: u64, f: &Factors) -> u64 {
    let hit = |a: [u64; 4], signed: [i128; 4]| {
        passes(a, f) == want_pass
            && (!els_only || els_quick(&Surface { a0: signed[0], a1: signed[1], a2: signed[2], a3: signed[3] }))
    };
    match which {
        Variation::VaryA0 { form } => {
            let abs = form.map(|x| x.unsigned_abs() as u64);
            let big = abs.iter().any(|&x| x > b);
            chunk(b, i)
                .filter(|&a0| {
                    if big {
                        let s = Surface { a0: a0 as i128, a1: form[0], a2: form[1], a3: form[2] };
                        (criterion_filter(&s) != CriterionOutcome::Fail) == want_pass && (!els_only || els_quick(&s))
                    } else {
                        hit([a0, abs[0], abs[1], abs[2]], [a0 as i128, form[0], form[1], form[2]])
                    }
                })
                .count() as u64
                * 2
        }
        Variation::VaryForm { a0 } => {
            let a1 = i + 1;
            let mut n = 0;
            for a2 in 1..=b {
                for a3 in 1..=b {
                    let s = Surface { a0: *a0, a1: a1 as i128, a2: a2 as i128, a3: a3 as i128 };
                    let pass = criterion_filter(&s) != CriterionOutcome::Fail;
                    n += u64::from(pass == want_pass && (!els_only || els_quick(&s)));
                }
            }
            8 * n
        }
        Variation::VaryAll => {
            let a0 = i + 1;
            let mut n = 0;
            for a1 in 1..=b {
                for a2 in 1..=b {
                    for a3 in 1..=b {
                        let a = [a0, a1, a2, a3];
                        n += u64::from(hit(a, a.map(|x| x as i128)));
                    }
                }
            }
            16 * n
        }
    }
}

/// Exact count of coefficient tuples in the box failing the criteria.
pub fn count_criterion_failures(b: u64, which: Variation, els_only: bool) -> Result<u64, CensusError> {
    Ok(run_sharded(&CensusJob::CriterionFailures { which, els_only }, b, 1, None)?.value)
}

/// ELS count for a fixed form (a0 ∈ [−B, B] \ {0}) or over the full box.
pub fn count_els(b: u64, form: Option<[i128; 3]>) -> Result<u64, CensusError> {
    let job = match form {
        Some(form) => CensusJob::ElsFixedForm { form },
        None => CensusJob::ElsFull,
    };
    Ok(run_sharded(&job, b, 1, None)?.value)
}

/// One counter value. Wall time is kept out of the record so that
/// identical parameters give identical rows.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusRecord {
    pub name: String,
    #[serde(rename = "B")]
    pub b: u64,
    pub params: String,
    pub value: u64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
struct Checkpoint {
    job: String,
    b: u64,
    shards: u64,
    /// Completed shards and their partial sums.
    done: BTreeMap<u64, u64>,
}

impl Checkpoint {
    fn load(path: &Path, fresh: &Checkpoint) -> Result<Checkpoint, CensusError> {
        if !path.exists() {
            return Ok(fresh.clone());
        }
        let c: Checkpoint =
            serde_json::from_str(&fs::read_to_string(path)?).map_err(|e| CensusError::Checkpoint(e.to_string()))?;
        if (&c.job, c.b, c.shards) != (&fresh.job, fresh.b, fresh.shards) {
            return Err(CensusError::Checkpoint(format!("{} belongs to a different run", path.display())));
        }
        Ok(c)
    }

    fn save(&self, path: &Path) -> Result<(), CensusError> {
        let tmp = path.with_extension("tmp");
        fs::write(&tmp, serde_json::to_string_pretty(self).expect("serializable"))?;
        fs::rename(tmp, path)?;
        Ok(())
    }
}

/// Result of a sharded run.
#[derive(Clone, Debug)]
pub struct RunOutput {
    pub record: CensusRecord,
    pub value: u64,
    pub millis: u128,
}

/// Runs `job` with the units dealt round-robin to `shards` shards. With a
/// checkpoint path, completed shards are recorded after each finishes and
/// skipped when the run is resumed.
pub fn run_sharded(job: &CensusJob, b: u64, shards: u64, checkpoint: Option<&Path>) -> Result<RunOutput, CensusError> {
    job.check_bound(b)?;
    let start = Instant::now();
    let shards = shards.max(1);
    let units = job.units(b);
    let factors = match job {
        CensusJob::Mtr { .. } | CensusJob::CriterionFailures { .. } | CensusJob::CriterionPasses { .. } => {
            Factors::new(b as usize)
        }
        _ => Factors(vec![]),
    };
    let fresh = Checkpoint { job: format!("{}:{}", job.name(), job.params()), b, shards, done: BTreeMap::new() };
    let state = Mutex::new(match checkpoint {
        Some(p) => Checkpoint::load(p, &fresh)?,
        None => fresh,
    });
    let pending: Vec<u64> = {
        let st = state.lock().expect("checkpoint lock");
        (0..shards).filter(|k| !st.done.contains_key(k)).collect()
    };
    pending.into_par_iter().try_for_each(|k| -> Result<(), CensusError> {
        let ids: Vec<u64> = (k..units).step_by(shards as usize).collect();
        let v: u64 = ids.into_par_iter().map(|i| job.count_unit(b, i, &factors)).sum();
        let mut st = state.lock().expect("checkpoint lock");
        st.done.insert(k, v);
        if let Some(p) = checkpoint {
            st.save(p)?;
        }
        Ok(())
    })?;
    let value = state.into_inner().expect("checkpoint lock").done.values().sum();
    let record = CensusRecord { name: job.name().into(), b, params: job.params(), value };
    Ok(RunOutput { record, value, millis: start.elapsed().as_millis() })
}

/// Writes records as CSV, followed by one metadata row with the total
/// wall time.
pub fn write_csv<W: Write>(out: W, records: &[CensusRecord], millis: Option<u128>) -> Result<(), CensusError> {
    let mut w = csv::Writer::from_writer(out);
    for r in records {
        w.serialize(r)?;
    }
    if let Some(ms) = millis {
        w.write_record(["wall_ms", "", "", &ms.to_string()])?;
    }
    w.flush()?;
    Ok(())
}

/// Inclusive coefficient ranges of a search.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoeffBox {
    pub a0: (i128, i128),
    pub a1: (i128, i128),
    pub a2: (i128, i128),
    pub a3: (i128, i128),
}

impl CoeffBox {
    pub fn symmetric(b: i128) -> Self {
        Self { a0: (-b, b), a1: (-b, b), a2: (-b, b), a3: (-b, b) }
    }

    pub fn single(s: &Surface) -> Self {
        Self { a0: (s.a0, s.a0), a1: (s.a1, s.a1), a2: (s.a2, s.a2), a3: (s.a3, s.a3) }
    }
}

/// Options of [`search_hasse_failures`].
#[derive(Clone, Debug)]
pub struct SearchFilters {
    /// Only analyze surfaces failing the criteria (the others cannot be
    /// obstructed).
    pub criterion_fail_only: bool,
    /// Box for the brute-force point check of certified surfaces.
    pub point_box: i128,
    pub analysis: AnalysisOptions,
}

impl Default for SearchFilters {
    fn default() -> Self {
        Self { criterion_fail_only: true, point_box: 100, analysis: AnalysisOptions::default() }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SearchOutcome {
    pub scanned: u64,
    pub els: u64,
    pub analyzed: u64,
    pub certified: Vec<ObstructionReport>,
    pub inconclusive: u64,
    /// Certified surfaces with a point in the box; nonzero means a bug.
    pub contradictions: Vec<String>,
}

/// Scans the box (up to permutation of a1, a2, a3 and sign changes),
/// keeping surfaces that are ELS and fail the criteria, and returns those
/// with a certified obstruction.
pub fn search_hasse_failures(bx: &CoeffBox, filters: &SearchFilters) -> SearchOutcome {
    let range = |r: (i128, i128)| (r.0..=r.1).filter(|&x| x != 0);
    let mut seen = std::collections::BTreeSet::new();
    for a0 in range(bx.a0) {
        for a1 in range(bx.a1) {
            for a2 in range(bx.a2) {
                for a3 in range(bx.a3) {
                    let mut f = [a1, a2, a3];
                    let sgn = f.iter().map(|x| x.signum()).product::<i128>();
                    f = f.map(|x| x.abs());
                    f.sort_unstable();
                    seen.insert(Surface { a0: a0 * sgn, a1: f[0], a2: f[1], a3: f[2] });
                }
            }
        }
    }
    let candidates: Vec<Surface> = seen.into_iter().collect();
    let scanned = candidates.len() as u64;
    let results: Vec<(bool, Option<ObstructionReport>)> = candidates
        .par_iter()
        .map(|s| {
            if !els_quick(s) {
                return (false, None);
            }
            if filters.criterion_fail_only && criterion_filter(s) != CriterionOutcome::Fail {
                return (true, None);
            }
            let els = is_els(s, filters.analysis.prime_bound);
            if !els.els {
                return (false, None);
            }
            (true, Some(bm_obstruction(s, &els, &filters.analysis)))
        })
        .collect();
    let mut out = SearchOutcome {
        scanned,
        els: 0,
        analyzed: 0,
        certified: vec![],
        inconclusive: 0,
        contradictions: vec![],
    };
    for (els, rep) in results {
        out.els += u64::from(els);
        let Some(rep) = rep else { continue };
        out.analyzed += 1;
        if rep.has(Verdict::IhpObstructed) {
            let s = Surface::parse(&rep.surface).expect("own spec");
            if !brute_force_points(&s, filters.point_box).is_empty() {
                out.contradictions.push(rep.surface.clone());
            }
            out.certified.push(rep);
        } else if rep.has(Verdict::Inconclusive) {
            out.inconclusive += 1;
        }
    }
    out
}

/// Writes a run's checkpoint path next to `out` when none is given.
pub fn default_checkpoint(out: &Path) -> PathBuf {
    out.with_extension("checkpoint.json")
}

/// Factorization oracle for the vary_a0 count with form (1, 1, 1): a0
/// fails iff every prime other than 3 occurs to a power ≥ 3.
pub fn a0_fails_unit_form(a0: i128) -> bool {
    arith::factorize(a0).iter().all(|&(p, e)| p == 3 || e >= 3)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counter_names() {
        assert_eq!(CensusJob::from_spec("ELS-fixed", Some("1,1,1"), false).unwrap(), CensusJob::ElsFixedForm { form: [1, 1, 1] });
        assert_eq!(
            CensusJob::from_spec("fail-vary-form", Some("3"), true).unwrap(),
            CensusJob::CriterionFailures { which: Variation::VaryForm { a0: 3 }, els_only: true }
        );
        assert!(CensusJob::from_spec("ELS-fixed", Some("1,0,1"), false).is_err());
        assert!(matches!(CensusJob::from_spec("T", None, false), Err(CensusError::UnknownCounter(_))));
    }

    #[test]
    fn small_s_values() {
        assert_eq!(count_s(10).unwrap(), 0);
        assert_eq!(count_s(17).unwrap(), 1);
    }

    #[test]
    fn mtr_tiny_box() {
        assert_eq!(count_mtr_positive(2).unwrap(), 3);
    }

    #[test]
    fn criterion_examples() {
        let pass = |a0, a1, a2, a3| criterion_filter(&Surface::new(a0, a1, a2, a3).unwrap());
        assert_eq!(pass(5, 1, 1, 1), CriterionOutcome::Pass { p: 5, via: Surjectivity::ConstantTerm });
        assert_eq!(pass(1, 19, 1, 1), CriterionOutcome::Pass { p: 19, via: Surjectivity::SingleCoefficient });
        assert_eq!(pass(2, 125, 85, 68), CriterionOutcome::Fail);
    }

    #[test]
    fn fast_criterion_agrees() {
        let f = Factors::new(60);
        for a0 in 1..=60u64 {
            for a1 in [1u64, 17, 19, 34, 38, 51] {
                for a2 in [1u64, 2, 5, 19, 25] {
                    let a = [a0, a1, a2, 7];
                    let s = Surface::new(a0 as i128, a1 as i128, a2 as i128, 7).unwrap();
                    assert_eq!(passes(a, &f), criterion_filter(&s) != CriterionOutcome::Fail, "{a:?}");
                }
            }
        }
    }
}
