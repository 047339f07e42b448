//! Local invariants of the order-3 algebraic Brauer class of a diagonal
//! cubic surface, per-place value sets and obstruction verdicts.

pub mod generator;
pub mod norm;
mod refine;

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{self, rat, Rational};
use crate::eisenstein::EisError;
use crate::localsolve::{self, ElsReport, LocalPointX, LocalVerdict};
use crate::surfaces::{
    brauer_classify, decomposition_group, is_locally_rational, AlgebraicPart, BrauerShape, DecompGroup, Surface,
    TableModel,
};
use crate::symbols::{hilbert_quadratic, is_local_cube, InvariantValue, RationalPlace, SymbolError};

pub use generator::{local_generator, Generator, LocalGen};
pub use norm::{solve_norm_equation, EpsilonData, DEFAULT_EPS_BOUND};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InvError {
    #[error("decomposition group at {0} is the full group; no closed formula is available")]
    UnsupportedRow(u64),
    #[error("no element of the required norm is known")]
    MissingEpsilon,
    #[error("precision exhausted: {0}")]
    Precision(String),
    #[error(transparent)]
    Symbol(#[from] SymbolError),
    #[error("contract violated: {0}")]
    Contract(String),
    #[error("no supported generator: {0}")]
    NoGenerator(String),
}

impl From<EisError> for InvError {
    fn from(e: EisError) -> Self {
        InvError::Symbol(SymbolError::from(e))
    }
}

/// Arithmetic condition forcing the invariant map at p to be surjective.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Surjectivity {
    /// p ≠ 3, p | a0, p³ ∤ a0 and p ∤ a1a2a3.
    ConstantTerm,
    /// p ≥ 17 divides exactly one of a1, a2, a3, at most twice, and not a0.
    SingleCoefficient,
}

impl fmt::Display for Surjectivity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Surjectivity::ConstantTerm => write!(f, "p | a0, p^3 ∤ a0, p ∤ a1a2a3"),
            Surjectivity::SingleCoefficient => write!(f, "p >= 17 divides exactly one a_i, p^3 ∤ a_i, p ∤ a0"),
        }
    }
}

/// The surjectivity condition satisfied at p, if any.
pub fn surjective_at(s: &Surface, p: u64) -> Option<Surjectivity> {
    let v = |x: i128| arith::vp_int(x, p);
    let f = s.forms();
    if p != 3 && (1..3).contains(&v(s.a0)) && f.iter().all(|&a| v(a) == 0) {
        return Some(Surjectivity::ConstantTerm);
    }
    if p >= 17 && v(s.a0) == 0 {
        let divisible: Vec<u32> = f.iter().map(|&a| v(a)).filter(|&e| e > 0).collect();
        if divisible.len() == 1 && divisible[0] < 3 {
            return Some(Surjectivity::SingleCoefficient);
        }
    }
    None
}

/// All primes at which a surjectivity condition holds, in increasing order.
pub fn surjectivity_witnesses(s: &Surface) -> Vec<(u64, Surjectivity)> {
    s.bad_primes().into_iter().filter_map(|p| surjective_at(s, p).map(|c| (p, c))).collect()
}

/// The mod 9 congruence (a0, a_i, a_m) ≡ (2, 8, 5) for a surface with
/// a_i = a_j, which pins the value at 3 to 2/3.
pub fn mod9_congruence(s: &Surface, gen: &Generator) -> bool {
    match gen {
        Generator::TwoCoeff { i, m, si: 1, sj: 1, .. } => {
            let f = s.forms();
            [s.a0, f[*i], f[*m]].map(|x| x.rem_euclid(9)) == [2, 8, 5]
        }
        _ => false,
    }
}

/// Shape (b, a, a, ±2b) with 2 ∤ ab, for which the value at 2 lies in
/// {0, 2/3}.
pub fn dyadic_shape(s: &Surface) -> bool {
    let f = s.forms();
    f[0] == f[1] && (f[2] == 2 * s.a0 || f[2] == -2 * s.a0) && s.a0 % 2 != 0 && f[0] % 2 != 0
}

/// Value of the generator at a point of a member of the three-prime family
/// with x0 ≡ 0 and x1 ≢ 0 mod p: −(p² − 1)/9 in (1/3)Z/Z.
pub fn special_point_value(p: u64) -> Result<InvariantValue, InvError> {
    match p % 9 {
        2 | 5 => {
            let p = p as i128;
            // −(p² − 1)/9 = −((p² − 1)/3)·(1/3)
            Ok(InvariantValue::new(-((p * p - 1) / 3) as i64))
        }
        _ => Err(InvError::Contract(format!("{p} is not 2 or 5 mod 9"))),
    }
}

/// a_j/a_i = (sj/si)³ for some pair, preferring equal coefficients.
fn two_coeff_pair(s: &Surface) -> Option<Generator> {
    let f = s.forms();
    let mut found = None;
    for (i, j, m) in [(0, 1, 2), (0, 2, 1), (1, 2, 0)] {
        let r = rat(f[j], f[i]);
        let (Some(n), Some(d)) = (arith::icbrt_exact(*r.numer()), arith::icbrt_exact(*r.denom())) else { continue };
        let g = Generator::TwoCoeff { i, j, m, si: d, sj: n };
        if f[i] == f[j] {
            return Some(g);
        }
        found = found.or(Some(g));
    }
    found
}

/// Primes where the generator can differ from zero: 3 and the bad primes.
pub fn support_primes(s: &Surface) -> Vec<u64> {
    let mut ps: BTreeSet<u64> = s.bad_primes().into_iter().collect();
    ps.insert(3);
    ps.into_iter().collect()
}

/// A generator of the algebraic Brauer group modulo constants: the
/// two-coefficient class when two coefficients agree up to a cube,
/// otherwise the first labeled model whose rows at the support primes are
/// all supported (full rows are allowed at surjective primes).
pub fn choose_generator(s: &Surface, eps_bound: i128) -> Result<Generator, InvError> {
    if let Some(g) = two_coeff_pair(s) {
        return Ok(g);
    }
    let primes = support_primes(s);
    let mut cache: HashMap<(Rational, Rational), Option<EpsilonData>> = HashMap::new();
    let mut reasons = Vec::new();
    for model in TableModel::labelings(s) {
        let params = model.params();
        let rows: Vec<(u64, DecompGroup)> = primes.iter().map(|&p| (p, decomposition_group(&params, p))).collect();
        if let Some((p, _)) = rows.iter().find(|(p, r)| *r == DecompGroup::G && surjective_at(s, *p).is_none()) {
            reasons.push(format!("perm {:?}: full row at {p}", model.perm));
            continue;
        }
        let needs_eps = rows.iter().any(|(_, r)| matches!(r, DecompGroup::R | DecompGroup::Q));
        let eps = if needs_eps {
            let m = params.lambda * params.nu;
            let key = (params.mu, m);
            let e = cache.entry(key).or_insert_with(|| solve_norm_equation(&params.mu, &m, eps_bound)).clone();
            if e.is_none() {
                reasons.push(format!("perm {:?}: no norm element within bound {eps_bound}", model.perm));
                continue;
            }
            e
        } else {
            None
        };
        return Ok(Generator::Table { model, eps });
    }
    Err(InvError::NoGenerator(reasons.join("; ")))
}

/// How a value set was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SetKind {
    /// The exact image of the local invariant map.
    Exact,
    /// A superset of the image.
    UpperBound,
    /// Values realized at points; a subset of the image.
    Sampled,
    /// Nothing is known.
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Source {
    Archimedean,
    GoodReduction,
    LocalCubeCoefficient,
    InertUnitCoefficient,
    ConstantRow(DecompGroup),
    Surjective(Surjectivity),
    LocallyRational,
    Mod9Congruence,
    ResidueRefinement { nodes: usize },
    DyadicShape,
    Sampling { points: usize },
    Unavailable(String),
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Source::Archimedean => write!(f, "constant at the real place"),
            Source::GoodReduction => write!(f, "good reduction"),
            Source::LocalCubeCoefficient => write!(f, "pairing coefficient is a local cube"),
            Source::InertUnitCoefficient => write!(f, "pairing coefficient is a unit at an inert prime"),
            Source::ConstantRow(r) => write!(f, "decomposition group {r:?} gives a constant"),
            Source::Surjective(c) => write!(f, "surjective: {c}"),
            Source::LocallyRational => write!(f, "locally rational, evaluated at one point"),
            Source::Mod9Congruence => write!(f, "mod 9 congruence (2, 8, 5)"),
            Source::ResidueRefinement { nodes } => write!(f, "residue refinement over {nodes} classes"),
            Source::DyadicShape => write!(f, "dyadic shape bound (b, a, a, ±2b)"),
            Source::Sampling { points } => write!(f, "{points} sampled points"),
            Source::Unavailable(why) => write!(f, "unavailable: {why}"),
        }
    }
}

/// The values of the local invariant map at one place.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValueSet {
    pub values: BTreeSet<InvariantValue>,
    pub kind: SetKind,
    pub source: Source,
}

impl ValueSet {
    fn exact(values: impl IntoIterator<Item = InvariantValue>, source: Source) -> Self {
        Self { values: values.into_iter().collect(), kind: SetKind::Exact, source }
    }

    fn zero(source: Source) -> Self {
        Self::exact([InvariantValue::ZERO], source)
    }

    fn unknown(why: String) -> Self {
        Self { values: BTreeSet::new(), kind: SetKind::Unknown, source: Source::Unavailable(why) }
    }

    pub fn is_exact(&self) -> bool {
        self.kind == SetKind::Exact
    }

    /// Values are attained at actual points.
    pub fn is_realized(&self) -> bool {
        matches!(self.kind, SetKind::Exact | SetKind::Sampled)
    }

    /// Contains the image of the map.
    pub fn is_superset(&self) -> bool {
        matches!(self.kind, SetKind::Exact | SetKind::UpperBound)
    }

    /// The value set of n times the generator.
    pub fn scaled(&self, n: i64) -> Self {
        Self { values: self.values.iter().map(|&v| v * n).collect(), ..self.clone() }
    }
}

/// Tunables of the analysis.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AnalysisOptions {
    pub eps_bound: i128,
    /// Residue classes visited per place by the refinement.
    pub budget: usize,
    pub samples: usize,
    /// p-adic precision of sampled points.
    pub sample_prec: u32,
    pub seed: u64,
    /// Primes up to this bound are checked for local solubility.
    pub prime_bound: u64,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        Self { eps_bound: DEFAULT_EPS_BOUND, budget: 200_000, samples: 40, sample_prec: 6, seed: 1, prime_bound: 100 }
    }
}

/// Per-surface analysis state: the chosen generator and options.
pub struct Analyzer {
    pub surface: Surface,
    pub shape: BrauerShape,
    pub generator: Result<Generator, InvError>,
    pub opts: AnalysisOptions,
}

impl Analyzer {
    pub fn new(s: &Surface, opts: AnalysisOptions) -> Self {
        let shape = brauer_classify(s);
        let generator = match shape.algebraic {
            AlgebraicPart::Trivial => Err(InvError::NoGenerator("algebraic part is trivial".into())),
            AlgebraicPart::Z3 => choose_generator(s, opts.eps_bound),
        };
        Self { surface: *s, shape, generator, opts }
    }

    /// Exact zero without evaluating anything.
    fn shortcut_zero(&self, gen: &Generator, p: u64) -> Option<Source> {
        let s = &self.surface;
        match gen {
            Generator::TwoCoeff { i, m, .. } => {
                let f = s.forms();
                let c = rat(s.a0, f[*m]);
                if p != 3 && is_local_cube(&c, RationalPlace::Prime(p)) {
                    return Some(Source::LocalCubeCoefficient);
                }
                if p != 3 && [s.a0, f[*i], f[*m]].iter().all(|&x| arith::vp_int(x, p) == 0) {
                    return Some(Source::GoodReduction);
                }
                if p % 3 == 2 && arith::vp_rat(&c, p) == 0 {
                    return Some(Source::InertUnitCoefficient);
                }
                None
            }
            Generator::Table { model, eps } => {
                if p != 3 && s.coeffs().iter().all(|&x| arith::vp_int(x, p) == 0) {
                    return Some(Source::GoodReduction);
                }
                match decomposition_group(&model.params(), p) {
                    r @ (DecompGroup::E | DecompGroup::T) => Some(Source::ConstantRow(r)),
                    DecompGroup::R if eps.is_some() => Some(Source::ConstantRow(DecompGroup::R)),
                    _ => None,
                }
            }
        }
    }

    fn rng(&self, p: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.opts.seed ^ p.wrapping_mul(0x9E37_79B9_7F4A_7C15))
    }

    /// Values of the generator at certified sampled points.
    pub fn sample_values(&self, lg: &LocalGen, count: usize) -> (BTreeSet<InvariantValue>, usize) {
        let mut rng = self.rng(lg.p);
        let pts = localsolve::sample_points(&self.surface, lg.p, self.opts.sample_prec, count, &mut rng);
        let vals: Vec<InvariantValue> = pts.iter().filter_map(|pt| lg.eval_point(&self.surface, pt).ok()).collect();
        let n = vals.len();
        (vals.into_iter().collect(), n)
    }

    /// One certified point of U(Z_p).
    fn some_point(&self, p: u64) -> Option<LocalPointX> {
        if let LocalVerdict::Soluble(Some(pt)) = localsolve::has_zp_points(&self.surface, p) {
            return Some(pt);
        }
        let mut rng = self.rng(p);
        localsolve::sample_points(&self.surface, p, self.opts.sample_prec, 1, &mut rng).pop()
    }

    pub fn value_set(&self, place: RationalPlace) -> ValueSet {
        let RationalPlace::Prime(p) = place else { return ValueSet::zero(Source::Archimedean) };
        let s = &self.surface;
        let gen = match &self.generator {
            Ok(g) => g,
            Err(e) => return ValueSet::unknown(e.to_string()),
        };
        if let Some(src) = self.shortcut_zero(gen, p) {
            return ValueSet::zero(src);
        }
        if let Some(c) = surjective_at(s, p) {
            return ValueSet::exact(InvariantValue::ALL, Source::Surjective(c));
        }
        let lg = match local_generator(s, gen, p) {
            Ok(lg) => lg,
            Err(e) => return ValueSet::unknown(e.to_string()),
        };
        if lg.reps.len() == 1 && lg.reps[0].terms.is_empty() {
            let row = match gen {
                Generator::Table { model, .. } => decomposition_group(&model.params(), p),
                Generator::TwoCoeff { .. } => DecompGroup::E,
            };
            return ValueSet::exact([lg.reps[0].constant], Source::ConstantRow(row));
        }
        if is_locally_rational(s, place) {
            let v = self.some_point(p).map(|pt| lg.eval_point(s, &pt));
            return match v {
                Some(Ok(v)) => ValueSet::exact([v], Source::LocallyRational),
                Some(Err(e)) => ValueSet::unknown(e.to_string()),
                None => ValueSet::unknown(format!("no point found at {p}")),
            };
        }
        if p == 3 && mod9_congruence(s, gen) {
            return ValueSet::exact([InvariantValue::TWO_THIRDS], Source::Mod9Congruence);
        }
        let depth = lg.prec.saturating_sub(2);
        let r = refine::refine(s, &lg, self.opts.budget, depth);
        if r.complete {
            return ValueSet::exact(r.values, Source::ResidueRefinement { nodes: r.nodes });
        }
        if p == 2 && matches!(gen, Generator::TwoCoeff { .. }) && dyadic_shape(s) {
            return ValueSet {
                values: [InvariantValue::ZERO, InvariantValue::TWO_THIRDS].into(),
                kind: SetKind::UpperBound,
                source: Source::DyadicShape,
            };
        }
        let (mut values, n) = self.sample_values(&lg, self.opts.samples);
        values.extend(r.values);
        ValueSet { values, kind: SetKind::Sampled, source: Source::Sampling { points: n } }
    }

    /// Value sets at ∞, 3 and the bad primes, computed in parallel.
    pub fn value_sets(&self) -> Vec<(RationalPlace, ValueSet)> {
        let places: Vec<RationalPlace> = std::iter::once(RationalPlace::Infinity)
            .chain(support_primes(&self.surface).into_iter().map(RationalPlace::Prime))
            .collect();
        places.into_par_iter().map(|pl| (pl, self.value_set(pl))).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    IhpObstructed,
    IsaOffInfinityFails,
    NoAlgebraicObstruction,
    Inconclusive,
    NotLocallySoluble,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlaceReport {
    pub p: String,
    pub value_set: Vec<InvariantValue>,
    pub exact: bool,
    pub kind: SetKind,
    pub source: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructionReport {
    pub surface: String,
    pub els: bool,
    pub brauer_shape: BrauerShape,
    pub generator: Option<String>,
    pub places: Vec<PlaceReport>,
    pub sumset: Vec<InvariantValue>,
    pub verdicts: Vec<Verdict>,
    pub certificates: Vec<String>,
}

impl ObstructionReport {
    pub fn has(&self, v: Verdict) -> bool {
        self.verdicts.contains(&v)
    }

    pub fn place(&self, p: RationalPlace) -> Option<&PlaceReport> {
        let key = p.to_string();
        self.places.iter().find(|r| r.p == key)
    }
}

/// Minkowski sum; unknown sets count as {0, 1/3, 2/3}.
pub fn sumset(sets: &[(RationalPlace, ValueSet)]) -> BTreeSet<InvariantValue> {
    let mut acc: BTreeSet<InvariantValue> = [InvariantValue::ZERO].into();
    for (_, vs) in sets {
        let vals: Vec<InvariantValue> =
            if vs.kind == SetKind::Unknown { InvariantValue::ALL.to_vec() } else { vs.values.iter().copied().collect() };
        acc = acc.iter().flat_map(|&a| vals.iter().map(move |&b| a + b)).collect();
    }
    acc
}

/// Verdicts from per-place value sets. Obstruction needs supersets at
/// every place; non-obstruction and non-constancy need realized values.
pub fn decide(algebraic: AlgebraicPart, sets: &[(RationalPlace, ValueSet)]) -> Vec<Verdict> {
    let mut out = Vec::new();
    let sum = sumset(sets);
    let all_super = sets.iter().all(|(_, v)| v.is_superset());
    let all_realized = sets.iter().all(|(_, v)| v.is_realized());
    if algebraic == AlgebraicPart::Trivial {
        out.push(Verdict::NoAlgebraicObstruction);
    } else if all_super && !sum.contains(&InvariantValue::ZERO) {
        out.push(Verdict::IhpObstructed);
    } else if all_realized && sum.contains(&InvariantValue::ZERO) {
        out.push(Verdict::NoAlgebraicObstruction);
    }
    let nonconstant = sets
        .iter()
        .any(|(pl, v)| *pl != RationalPlace::Infinity && v.is_realized() && v.values.len() >= 2);
    if nonconstant {
        out.push(Verdict::IsaOffInfinityFails);
    }
    if !out.iter().any(|v| matches!(v, Verdict::IhpObstructed | Verdict::NoAlgebraicObstruction)) {
        out.push(Verdict::Inconclusive);
    }
    out
}

/// Full Brauer–Manin analysis of an ELS surface.
pub fn bm_obstruction(s: &Surface, els: &ElsReport, opts: &AnalysisOptions) -> ObstructionReport {
    let an = Analyzer::new(s, opts.clone());
    let mut report = ObstructionReport {
        surface: s.spec(),
        els: els.els,
        brauer_shape: an.shape,
        generator: an.generator.as_ref().ok().map(Generator::describe),
        places: vec![],
        sumset: vec![],
        verdicts: vec![],
        certificates: vec![],
    };
    if !els.els {
        report.verdicts.push(Verdict::NotLocallySoluble);
        for (pl, v) in &els.places {
            if let LocalVerdict::Insoluble { level } = v {
                report.certificates.push(format!("{pl}: no points modulo {pl}^{level}"));
            }
        }
        return report;
    }
    if an.shape.algebraic == AlgebraicPart::Trivial {
        report.verdicts.push(Verdict::NoAlgebraicObstruction);
        report.certificates.push("a cross ratio is a rational cube".into());
        return report;
    }
    let sets = an.value_sets();
    report.sumset = sumset(&sets).into_iter().collect();
    report.verdicts = decide(an.shape.algebraic, &sets);
    for (pl, vs) in &sets {
        let vals: Vec<String> = vs.values.iter().map(|v| v.to_string()).collect();
        report.certificates.push(format!("{pl}: {{{}}} by {}", vals.join(", "), vs.source));
        report.places.push(PlaceReport {
            p: pl.to_string(),
            value_set: vs.values.iter().copied().collect(),
            exact: vs.is_exact(),
            kind: vs.kind,
            source: vs.source.to_string(),
        });
    }
    report
}

/// Value at a certified Z_p point of the two-coefficient class.
pub fn eval_two_coeff(s: &Surface, gen: &Generator, pt: &LocalPointX) -> Result<InvariantValue, InvError> {
    if !matches!(gen, Generator::TwoCoeff { .. }) {
        return Err(InvError::Contract("not a two-coefficient generator".into()));
    }
    local_generator(s, gen, pt.p)?.eval_point(s, pt)
}

/// Value at a certified Z_p point of the class of a labeled model.
pub fn eval_table1(
    s: &Surface,
    model: &TableModel,
    eps: Option<&EpsilonData>,
    pt: &LocalPointX,
) -> Result<InvariantValue, InvError> {
    let gen = Generator::Table { model: *model, eps: eps.cloned() };
    local_generator(s, &gen, pt.p)?.eval_point(s, pt)
}

/// Σ_p inv_p at an integral point; ∞ and the good primes contribute 0.
pub fn global_sum_at(s: &Surface, gen: &Generator, u: &[i128; 3]) -> Result<InvariantValue, InvError> {
    if s.eval(u) != 0 {
        return Err(InvError::Contract(format!("{u:?} is not a point of {s}")));
    }
    support_primes(s).into_iter().map(|p| local_generator(s, gen, p)?.eval_exact(u)).sum()
}

/// Local invariant in Z/2 of the quaternion class
/// (a0(x1 + x2 + 2x3), −3(x1 + x2 + 2x3)(x1 + x2)) at a rational point
/// (or an approximation of a local point fine enough to fix square
/// classes) of u1³ + u2³ + 2u3³ = a0.
pub fn eval_transcendental_2torsion(s: &Surface, u: &[i128; 3], place: RationalPlace) -> Result<u8, InvError> {
    let f = s.forms();
    if f[0] != f[1] || !crate::symbols::is_cube_rational(&rat(f[2], 2 * f[0])) {
        return Err(InvError::Contract(format!("{s} is not of the shape a1 = a2, a3/a1 ≡ 2")));
    }
    let l = u[0] + u[1] + 2 * u[2];
    let m = u[0] + u[1];
    if l == 0 || m == 0 {
        return Err(InvError::Precision("representative vanishes at the point".into()));
    }
    let a = Rational::from_integer(s.a0 * l);
    let b = Rational::from_integer(-3 * l * m);
    Ok(hilbert_quadratic(&a, &b, place))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::localsolve::is_els;

    #[test]
    fn special_values() {
        assert_eq!(special_point_value(5).unwrap(), InvariantValue::THIRD);
        assert_eq!(special_point_value(2).unwrap(), InvariantValue::TWO_THIRDS);
        assert!(special_point_value(17).is_err());
    }

    #[test]
    fn surjectivity_conditions() {
        let s = Surface::new(5, 1, 1, 1).unwrap();
        assert_eq!(surjective_at(&s, 5), Some(Surjectivity::ConstantTerm));
        let s = Surface::new(1, 19, 1, 1).unwrap();
        assert_eq!(surjective_at(&s, 19), Some(Surjectivity::SingleCoefficient));
        let u = Surface::parse("125,85,68,2").unwrap();
        assert!(surjectivity_witnesses(&u).is_empty());
    }

    #[test]
    fn generator_choice() {
        let s = Surface::parse("17,17,-22,11").unwrap();
        assert_eq!(choose_generator(&s, 10).unwrap(), Generator::TwoCoeff { i: 0, j: 1, m: 2, si: 1, sj: 1 });
        let s = Surface::new(7, 2, 16, 5).unwrap();
        assert_eq!(choose_generator(&s, 10).unwrap(), Generator::TwoCoeff { i: 0, j: 1, m: 2, si: 1, sj: 2 });
    }

    #[test]
    fn pairing_vanishes_on_integral_points() {
        let s = Surface::new(3, 1, 1, 1).unwrap();
        let g = choose_generator(&s, 10).unwrap();
        for u in [[1, 1, 1], [4, 4, -5]] {
            assert_eq!(global_sum_at(&s, &g, &u).unwrap(), InvariantValue::ZERO);
        }
    }

    #[test]
    fn sumset_and_decision() {
        let third = ValueSet::exact([InvariantValue::THIRD], Source::GoodReduction);
        let sets = vec![(RationalPlace::Prime(3), third.clone()), (RationalPlace::Prime(5), third)];
        assert_eq!(sumset(&sets), [InvariantValue::TWO_THIRDS].into());
        assert_eq!(decide(AlgebraicPart::Z3, &sets), vec![Verdict::IhpObstructed]);
        let doubled: Vec<_> = sets.iter().map(|(p, v)| (*p, v.scaled(2))).collect();
        assert_eq!(decide(AlgebraicPart::Z3, &doubled), vec![Verdict::IhpObstructed]);
    }

    #[test]
    fn obstruction_for_the_mod9_family_member() {
        let s = Surface::parse("17,17,-22,11").unwrap();
        let r = bm_obstruction(&s, &is_els(&s, 50), &AnalysisOptions::default());
        assert!(r.els);
        assert!(r.has(Verdict::IhpObstructed), "{r:#?}");
    }

    #[test]
    fn transcendental_symbol_at_global_point() {
        let s = Surface::new(4, 1, 1, 2).unwrap();
        let places = [2u64, 3, 5, 7].map(RationalPlace::Prime);
        let total: u8 = places.iter().chain([&RationalPlace::Infinity]).map(|&pl| {
            eval_transcendental_2torsion(&s, &[1, 1, 1], pl).unwrap()
        }).sum();
        assert_eq!(total % 2, 0);
    }
}
