//! Explicit representatives of an order-3 Brauer class and their local
//! evaluation on residue classes of Z_p-points.

use serde::{Deserialize, Serialize};

use crate::arith::{self, ipow, rat, Rational};
use crate::eisenstein::{canonical_place, classify_prime, KElem, LocalNum, PlaceK};
use crate::localsolve::LocalPointX;
use crate::padic;
use crate::surfaces::{decomposition_group, DecompGroup, Surface, TableModel};
use crate::symbols::{self, decompose_local, symbol_from_parts, Convention, Decomposed, InvariantValue};

use super::norm::EpsilonData;
use super::InvError;

/// The generator whose invariants are evaluated.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Generator {
    /// a_i·sj³ = a_j·si³: with L_r = si·u_i + ω^r·sj·u_j the class is
    /// (a0/a_m, L1/L0) at inert places and at 3, and (a0/a_m, L1/L2) at one
    /// place above a split prime.
    TwoCoeff { i: usize, j: usize, m: usize, si: i128, sj: i128 },
    /// Generic formulas on a labeled projective model, normalized by ε.
    Table { model: TableModel, eps: Option<EpsilonData> },
}

impl Generator {
    pub fn describe(&self) -> String {
        match self {
            Generator::TwoCoeff { i, j, m, si, sj } => {
                format!("two-coefficient: ({si})u{} + ({sj})ω·u{} paired with a0/a{}", i + 1, j + 1, m + 1)
            }
            Generator::Table { model, eps } => {
                let e = match eps {
                    Some(e) => format!("eps coords {:?}/3{}", e.coords, if e.inverted { " inverted" } else { "" }),
                    None => "no eps".into(),
                };
                format!("labeled model c = {:?} (perm {:?}), {e}", model.c, model.perm)
            }
        }
    }
}

/// Class depth standing in for an exact point.
const EXACT: u32 = 1 << 20;

/// Working p-adic precision: p^N stays below 10^17.
pub fn work_prec(p: u64) -> u32 {
    let mut n = 0;
    let mut x: i128 = 1;
    while x * (p as i128) < 100_000_000_000_000_000 && n < 48 {
        x *= p as i128;
        n += 1;
    }
    n
}

/// A cube root of x in Q_p, if x is a cube. At primes ≡ 1 mod 3 the root
/// with the least residue mod p is chosen.
pub fn local_cube_root(x: &Rational, p: u64, prec: u32) -> Option<LocalNum> {
    let v = arith::vp_rat(x, p);
    if v.rem_euclid(3) != 0 {
        return None;
    }
    let unit = if v >= 0 {
        x / Rational::from_integer(ipow(p, v as u32))
    } else {
        x * Rational::from_integer(ipow(p, (-v) as u32))
    };
    let u = arith::rat_mod(&unit, p, prec + 3)?;
    let mut root = padic::cube_root_unit(u, p, prec)?;
    if p % 3 == 1 {
        let m = ipow(p, prec);
        let z = padic::lift_root_of_unity(p, padic::primitive_cube_root_of_unity(p), prec);
        let cands = [root, arith::mulmod(root, z, m), arith::mulmod(arith::mulmod(root, z, m), z, m)];
        root = *cands.iter().min_by_key(|c| rem_p(**c, p)).unwrap();
    }
    Some(LocalNum { p, shift: v / 3, a: root, b: 0, prec })
}

fn rem_p(x: i128, p: u64) -> i128 {
    arith::rem(x, p as i128)
}

/// An affine-linear function c + Σ l_i u_i with coefficients in k ⊗ Q_p.
#[derive(Clone, Debug)]
pub struct LinForm {
    pub c: LocalNum,
    pub lin: [LocalNum; 3],
}

impl LinForm {
    fn zero(p: u64, prec: u32) -> LocalNum {
        LocalNum::from_zp(0, p, prec)
    }

    pub fn constant(c: LocalNum) -> Self {
        let z = Self::zero(c.p, c.prec);
        Self { c, lin: [z; 3] }
    }

    /// The coordinate y_j of (1, u1, u2, u3), scaled by an integer.
    pub fn coordinate(j: usize, scale: i128, p: u64, prec: u32) -> Self {
        let z = Self::zero(p, prec);
        if j == 0 {
            return Self::constant(LocalNum::from_zp(scale, p, prec));
        }
        let mut lin = [z; 3];
        lin[j - 1] = LocalNum::from_zp(scale, p, prec);
        Self { c: z, lin }
    }

    pub fn add(&self, o: &Self) -> Self {
        Self { c: self.c.add(&o.c), lin: std::array::from_fn(|i| self.lin[i].add(&o.lin[i])) }
    }

    pub fn mul(&self, x: &LocalNum) -> Self {
        Self { c: self.c.mul(x), lin: std::array::from_fn(|i| self.lin[i].mul(x)) }
    }

    pub fn times_omega(&self) -> Self {
        Self { c: self.c.times_omega(), lin: std::array::from_fn(|i| self.lin[i].times_omega()) }
    }

    /// Lower bound for the p-adic valuation of the linear coefficients;
    /// `None` when the form is constant.
    pub fn slope_valuation(&self) -> Option<i64> {
        self.lin
            .iter()
            .filter(|l| !l.is_indistinguishable_from_zero())
            .map(|l| {
                let va = if l.a == 0 { u32::MAX } else { arith::vp_int(l.a, l.p) };
                let vb = if l.b == 0 { u32::MAX } else { arith::vp_int(l.b, l.p) };
                l.shift as i64 + va.min(vb) as i64
            })
            .min()
    }

    pub fn eval(&self, u: &[i128; 3]) -> Option<LocalNum> {
        let mut acc = self.c;
        for (l, &x) in self.lin.iter().zip(u) {
            if x != 0 && !l.is_indistinguishable_from_zero() {
                acc = acc.add(&l.scale_int(x));
            }
        }
        acc.pull_common_power();
        (!acc.is_indistinguishable_from_zero()).then_some(acc)
    }
}

/// n · (entry, other)_w (or (other, entry)_w) summed over the places.
#[derive(Clone, Debug)]
pub struct Term {
    pub n: i64,
    pub entry: LinForm,
    pub other: Vec<Decomposed>,
    pub entry_first: bool,
}

/// One representative of the invariant: constant + Σ terms.
#[derive(Clone, Debug)]
pub struct Rep {
    pub terms: Vec<Term>,
    pub constant: InvariantValue,
}

/// The invariant map at one rational prime as a list of equivalent
/// representatives; any representative that is determined on a residue
/// class gives the value there.
#[derive(Clone, Debug)]
pub struct LocalGen {
    pub p: u64,
    pub prec: u32,
    pub places: Vec<PlaceK>,
    pub reps: Vec<Rep>,
}

fn ramification(w: &PlaceK) -> i64 {
    if *w == PlaceK::Ramified {
        2
    } else {
        1
    }
}

/// λ-adic digits needed to pin a unit modulo cubes (1 at tame places).
fn digits_needed(w: &PlaceK) -> i64 {
    if *w == PlaceK::Ramified {
        4
    } else {
        1
    }
}

impl LocalGen {
    pub fn constant(p: u64, v: InvariantValue) -> Self {
        Self { p, prec: work_prec(p), places: vec![], reps: vec![Rep { terms: vec![], constant: v }] }
    }

    /// The value on the class u ≡ u* (mod p^k), if some representative is
    /// constant there.
    pub fn eval_class(&self, u: &[i128; 3], k: u32) -> Option<InvariantValue> {
        self.reps.iter().find_map(|r| self.eval_rep(r, u, k))
    }

    fn eval_rep(&self, rep: &Rep, u: &[i128; 3], k: u32) -> Option<InvariantValue> {
        let mut total = rep.constant;
        for t in &rep.terms {
            let val = t.entry.eval(u)?;
            let slope = t.entry.slope_valuation();
            for (w, other) in self.places.iter().zip(&t.other) {
                let d = decompose_local(&val, w).ok()?;
                if let Some(c) = slope {
                    if ramification(w) * (k as i64 + c) < d.0 + digits_needed(w) {
                        return None;
                    }
                }
                let s = if t.entry_first {
                    symbol_from_parts(&d, other, w, Convention::Standard)
                } else {
                    symbol_from_parts(other, &d, w, Convention::Standard)
                }
                .ok()?;
                total = total + s * t.n;
            }
        }
        Some(total)
    }

    /// Value at a certified local point, lifting it until some
    /// representative is determined.
    pub fn eval_point(&self, s: &Surface, pt: &LocalPointX) -> Result<InvariantValue, InvError> {
        let mut pt = *pt;
        loop {
            if let Some(v) = self.eval_class(&pt.u, pt.prec - pt.t) {
                return Ok(v);
            }
            let next = pt.prec + 3;
            if next + 2 > self.prec {
                return Err(InvError::Precision(format!("point {:?} at p = {} undetermined", pt.u, self.p)));
            }
            pt = pt.lift(s, next).ok_or_else(|| InvError::Precision("Hensel lift failed".into()))?;
        }
    }

    /// Value at an exact point of the surface.
    pub fn eval_exact(&self, u: &[i128; 3]) -> Result<InvariantValue, InvError> {
        // an exact point determines every entry outright; only a nonzero
        // entry at working precision is needed
        self.reps
            .iter()
            .find_map(|r| self.eval_rep(r, u, EXACT))
            .ok_or_else(|| InvError::Precision(format!("exact point {u:?} at p = {} undetermined", self.p)))
    }
}

fn local_rat(x: &Rational, p: u64, prec: u32) -> LocalNum {
    LocalNum::from_rational(x, p, prec)
}

fn decompose_all(x: &LocalNum, places: &[PlaceK]) -> Result<Vec<Decomposed>, InvError> {
    places.iter().map(|w| decompose_local(x, w).map_err(InvError::from)).collect()
}

/// Builds the local evaluator of `gen` at the prime p.
pub fn local_generator(s: &Surface, gen: &Generator, p: u64) -> Result<LocalGen, InvError> {
    let prec = work_prec(p);
    match gen {
        Generator::TwoCoeff { i, j, m, si, sj } => two_coeff_local(s, [*i, *j, *m], [*si, *sj], p, prec),
        Generator::Table { model, eps } => table_local(model, eps.as_ref(), p, prec),
    }
}

fn two_coeff_local(s: &Surface, [i, j, m]: [usize; 3], [si, sj]: [i128; 2], p: u64, prec: u32) -> Result<LocalGen, InvError> {
    let f = s.forms();
    let c = rat(s.a0, f[m]);
    let places = if p != 3 && p % 3 == 1 { vec![canonical_place(p)?] } else { classify_prime(p)? };
    let base: [i64; 3] = if p != 3 && p % 3 == 1 { [0, 1, -1] } else { [-1, 1, 0] };
    let cl = local_rat(&c, p, prec);
    let other = decompose_all(&cl, &places)?;
    let ui = LinForm::coordinate(i + 1, si, p, prec);
    let uj = LinForm::coordinate(j + 1, sj, p, prec);
    let l0 = ui.add(&uj);
    let l1 = ui.add(&uj.times_omega());
    let l2 = ui.add(&uj.times_omega().times_omega());
    // L0L1L2 = (si³/a_i)(a0 − a_m u_m³) and (c, a0 − a_m u_m³) = (c, a0),
    // so Σ (c, L_r) = (c, a0) − (c, a_i)
    let ce = KElem::from_rational(&c);
    let mut kconst = InvariantValue::ZERO;
    for w in &places {
        kconst = kconst + symbols::hilbert_cubic(&ce, &KElem::from_int(s.a0), w)?
            - symbols::hilbert_cubic(&ce, &KElem::from_int(f[i]), w)?;
    }
    let forms = [l0, l1, l2];
    let mut shifts: Vec<i64> = base.to_vec();
    shifts.sort_unstable();
    shifts.dedup();
    // the base representative first
    shifts.sort_by_key(|&t| t != 0);
    let reps = shifts
        .into_iter()
        .map(|t| Rep {
            terms: (0..3)
                .filter(|&q| base[q] != t)
                .map(|q| Term { n: base[q] - t, entry: forms[q].clone(), other: other.clone(), entry_first: false })
                .collect(),
            constant: kconst * t,
        })
        .collect();
    Ok(LocalGen { p, prec, places, reps })
}

fn table_local(model: &TableModel, eps: Option<&EpsilonData>, p: u64, prec: u32) -> Result<LocalGen, InvError> {
    let params = model.params();
    let row = decomposition_group(&params, p);
    let zero = || Ok(LocalGen::constant(p, InvariantValue::ZERO));
    let x: [LinForm; 4] = std::array::from_fn(|j| LinForm::coordinate(model.perm[j], model.k[j], p, prec));
    match row {
        DecompGroup::E | DecompGroup::T => zero(),
        DecompGroup::R => match eps {
            // ε ∈ Q(β) is fixed by q, so qε/ε = 1
            Some(_) => zero(),
            None => Err(InvError::MissingEpsilon),
        },
        DecompGroup::S => {
            let alpha = local_cube_root(&params.lambda, p, prec)
                .ok_or_else(|| InvError::Contract(format!("λ not a cube at {p}")))?;
            let places = classify_prime(p)?;
            let nu = decompose_all(&local_rat(&params.nu, p, prec), &places)?;
            // f = (x0 + αωx1)/(x0 + αω²x1)
            let ax1 = x[1].mul(&alpha);
            let m1 = x[0].add(&ax1.times_omega());
            let m2 = x[0].add(&ax1.times_omega().times_omega());
            let terms = vec![
                Term { n: 1, entry: m1, other: nu.clone(), entry_first: true },
                Term { n: -1, entry: m2, other: nu, entry_first: true },
            ];
            Ok(LocalGen { p, prec, places, reps: vec![Rep { terms, constant: InvariantValue::ZERO }] })
        }
        DecompGroup::Q => {
            let eps = eps.ok_or(InvError::MissingEpsilon)?;
            let lnu = params.lambda * params.nu;
            let beta = local_cube_root(&lnu, p, prec)
                .ok_or_else(|| InvError::Contract(format!("λν not a cube at {p}")))?;
            let places = classify_prime(p)?;
            let lam = decompose_all(&local_rat(&params.lambda, p, prec), &places)?;
            let (xi, rxi) = eps.xi_local(&beta);
            let sign = if eps.inverted { -1 } else { 1 };
            let mut constant = InvariantValue::ZERO;
            for (w, l) in places.iter().zip(&lam) {
                let a = symbol_from_parts(&decompose_local(&rxi, w)?, l, w, Convention::Standard)?;
                let b = symbol_from_parts(&decompose_local(&xi, w)?, l, w, Convention::Standard)?;
                constant = constant + (a - b) * sign;
            }
            // h = (x2 + βωx3)/(x2 + βx3), entering with a minus sign
            let bx3 = x[3].mul(&beta);
            let h1 = x[2].add(&bx3.times_omega());
            let h0 = x[2].add(&bx3);
            let terms = vec![
                Term { n: -1, entry: h1, other: lam.clone(), entry_first: true },
                Term { n: 1, entry: h0, other: lam, entry_first: true },
            ];
            Ok(LocalGen { p, prec, places, reps: vec![Rep { terms, constant }] })
        }
        DecompGroup::G => Err(InvError::UnsupportedRow(p)),
    }
}
