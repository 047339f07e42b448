//! Local solubility of diagonal cubic equations over Z_p, with Hensel
//! certificates, plus brute-force integral point search.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::arith::{self, invmod, ipow, rem};
use crate::padic;
use crate::surfaces::Surface;
use crate::symbols::RationalPlace;

/// An approximate Z_p point of the affine integral model with a Hensel
/// certificate: F(u) ≡ 0 mod p^prec and v_p(∂F/∂u_index) = t with
/// prec ≥ 2t + 1, so a genuine Z_p point lies within p^(prec − t).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalPointX {
    pub p: u64,
    pub u: [i128; 3],
    pub prec: u32,
    pub index: usize,
    pub t: u32,
}

impl LocalPointX {
    /// Projective coordinates (x0 : x1 : x2 : x3) = (1 : u1 : u2 : u3).
    pub fn projective(&self) -> [i128; 4] {
        [1, self.u[0], self.u[1], self.u[2]]
    }

    /// Checks the congruence and the certificate against `s`.
    pub fn verify(&self, s: &Surface) -> bool {
        let m = ipow(self.p, self.prec);
        rem(eval_mod(s, &self.u, m), m) == 0
            && self.prec > 2 * self.t
            && derivative_valuation(s, &self.u, self.index, self.p) == Some(self.t)
    }

    /// Newton steps in the certified coordinate up to precision `prec`.
    pub fn lift(&self, s: &Surface, prec: u32) -> Option<Self> {
        let mut pt = *self;
        let p = self.p;
        let a = s.forms()[self.index];
        while pt.prec < prec {
            let next = (2 * (pt.prec - pt.t)).min(prec).max(pt.prec + 1);
            let m = ipow(p, next + pt.t);
            let f = rem(eval_mod(s, &pt.u, m), m);
            let ui = pt.u[self.index];
            let d = arith::mulmod(rem(3 * a, m), arith::mulmod(ui, ui, m), m);
            let pt_t = ipow(p, pt.t);
            if f % pt_t != 0 || d % pt_t != 0 {
                return None;
            }
            let mn = ipow(p, next);
            let dinv = invmod(rem(d / pt_t, mn), mn)?;
            let delta = arith::mulmod(rem(f / pt_t, mn), dinv, mn);
            pt.u[self.index] = rem(ui - delta, mn);
            for (j, x) in pt.u.iter_mut().enumerate() {
                if j != self.index {
                    *x = rem(*x, mn);
                }
            }
            pt.prec = next;
            if !pt.verify(s) {
                return None;
            }
        }
        Some(pt)
    }
}

/// F(u) = a1u1³ + a2u2³ + a3u3³ − a0 reduced modulo m (m < 2^125).
pub fn eval_mod(s: &Surface, u: &[i128; 3], m: i128) -> i128 {
    let cube = |x: i128| {
        let x = rem(x, m);
        arith::mulmod(arith::mulmod(x, x, m), x, m)
    };
    let t = arith::mulmod(rem(s.a1, m), cube(u[0]), m)
        + arith::mulmod(rem(s.a2, m), cube(u[1]), m)
        + arith::mulmod(rem(s.a3, m), cube(u[2]), m);
    rem(t - s.a0, m)
}

fn derivative_valuation(s: &Surface, u: &[i128; 3], i: usize, p: u64) -> Option<u32> {
    (u[i] != 0).then(|| u32::from(p == 3) + arith::vp_int(s.forms()[i], p) + 2 * arith::vp_int(u[i], p))
}

/// Outcome of a local solubility check at one place.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum LocalVerdict {
    Soluble(Option<LocalPointX>),
    /// Insoluble; `level` is the residue precision that suffices to see it.
    Insoluble { level: u32 },
}

impl LocalVerdict {
    pub fn is_soluble(&self) -> bool {
        matches!(self, LocalVerdict::Soluble(_))
    }
}

pub fn has_r_points(_s: &Surface) -> bool {
    true
}

/// A solution of Σ c_i y_i³ = rhs in Z_p (nontrivial when rhs = 0), given
/// modulo p^prec together with the Hensel coordinate and its derivative
/// valuation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagonalSolution {
    pub y: Vec<i128>,
    pub prec: u32,
    pub index: usize,
    pub t: u32,
}

/// Decides solubility of Σ c_i y_i³ = rhs over Z_p.
///
/// Every solution has a minimal term valuation e and a set of terms
/// attaining it; dividing by p^e leaves a congruence mod p (mod 27 at p = 3,
/// where terms of valuation e+1 and e+2 also matter) in which some term has
/// a unit derivative, so Hensel applies. The patterns are finite, which
/// makes the search exact.
pub fn solve_diagonal(c: &[i128], rhs: i128, p: u64, min_prec: u32) -> Option<DiagonalSolution> {
    assert!(c.iter().all(|&x| x != 0), "zero coefficient");
    let n = c.len();
    let v: Vec<u32> = c.iter().map(|&x| arith::vp_int(x, p)).collect();
    let unit: Vec<i128> = c.iter().zip(&v).map(|(&x, &vi)| x / ipow(p, vi)).collect();
    let e_max = if rhs != 0 { arith::vp_int(rhs, p) } else { *v.iter().max().unwrap() };
    let wild = p == 3;
    let modulus: i128 = if wild { 27 } else { p as i128 };
    for e in 0..=e_max {
        // offset of each term above e, or None when it cannot reach e + 2
        let offs: Vec<Option<u32>> = v
            .iter()
            .map(|&vi| {
                let d = (vi as i64 - e as i64).rem_euclid(3) as u32;
                let reach = if wild { 2 } else { 0 };
                (d <= reach && e + d >= vi).then_some(d)
            })
            .collect();
        let r = if rhs == 0 {
            0
        } else {
            let q = rhs / ipow(p, e);
            rem(q, if wild { 27 } else { p as i128 })
        };
        for mask in 1u32..(1 << n) {
            let on: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
            if on.iter().any(|&i| offs[i].is_none()) || !on.iter().any(|&i| offs[i] == Some(0)) {
                continue;
            }
            let coef: Vec<i128> = on
                .iter()
                .map(|&i| rem(unit[i] * ipow(p, offs[i].unwrap()), modulus))
                .collect();
            let Some(w) = find_units(&coef, r, p) else { continue };
            let mut y = vec![0i128; n];
            let mut index = usize::MAX;
            for (k, &i) in on.iter().enumerate() {
                let m_i = (e + offs[i].unwrap() - v[i]) / 3;
                y[i] = ipow(p, m_i) * w[k];
                if offs[i] == Some(0) && index == usize::MAX {
                    index = i;
                }
            }
            if let Some(sol) = hensel_finish(c, rhs, p, &v, &unit, y, index, e, min_prec) {
                return Some(sol);
            }
        }
    }
    None
}

/// Units w with Σ coef_k w_k³ ≡ r (mod p, or mod 27 at p = 3).
fn find_units(coef: &[i128], r: i128, p: u64) -> Option<Vec<i128>> {
    if p == 3 {
        let units = [1i128, 2, 4, 5, 7, 8];
        let n = coef.len();
        let total = 6usize.pow(n as u32);
        for idx in 0..total {
            let mut k = idx;
            let w: Vec<i128> = (0..n)
                .map(|_| {
                    let x = units[k % 6];
                    k /= 6;
                    x
                })
                .collect();
            let s: i128 = coef.iter().zip(&w).map(|(&c, &x)| c * x * x * x).sum();
            if rem(s - r, 27) == 0 {
                return Some(w);
            }
        }
        return None;
    }
    let m = p as i128;
    let is_cube_unit = |x: i128| x != 0 && (p % 3 == 2 || arith::powmod(x, ((p - 1) / 3) as u128, m) == 1);
    let root = |x: i128| padic::cube_root_mod_p(x as u64, p).unwrap() as i128;
    fn go(coef: &[i128], r: i128, m: i128, is_cube: &dyn Fn(i128) -> bool, root: &dyn Fn(i128) -> i128) -> Option<Vec<i128>> {
        let (c0, rest) = coef.split_first().unwrap();
        if rest.is_empty() {
            let x = arith::mulmod(rem(r, m), invmod(*c0, m)?, m);
            return is_cube(x).then(|| vec![root(x)]);
        }
        for w in 1..m {
            let x = arith::mulmod(arith::mulmod(w, w, m), w, m);
            if let Some(mut tail) = go(rest, rem(r - c0 * x, m), m, is_cube, root) {
                tail.insert(0, w);
                return Some(tail);
            }
        }
        None
    }
    go(coef, r, m, &is_cube_unit, &root)
}

#[allow(clippy::too_many_arguments)]
fn hensel_finish(
    c: &[i128],
    rhs: i128,
    p: u64,
    v: &[u32],
    unit: &[i128],
    mut y: Vec<i128>,
    j: usize,
    e: u32,
    min_prec: u32,
) -> Option<DiagonalSolution> {
    let m_j = (e - v[j]) / 3;
    let t = v[j] + 2 * m_j + u32::from(p == 3);
    let prec = min_prec.max(2 * t + 1);
    let work = prec + e + 2;
    let mw = ipow(p, work);
    let mut r = rem(rhs, mw);
    for (i, &yi) in y.iter().enumerate() {
        if i != j {
            let yc = arith::mulmod(arith::mulmod(rem(yi, mw), rem(yi, mw), mw), rem(yi, mw), mw);
            r = rem(r - arith::mulmod(rem(c[i], mw), yc, mw), mw);
        }
    }
    // r ≡ c_j y_j³ has valuation exactly e
    let pe = ipow(p, e);
    if r % pe != 0 {
        return None;
    }
    let md = ipow(p, work - e);
    let q = rem(r / pe, md);
    let target = arith::mulmod(q, invmod(rem(unit[j], md), md)?, md);
    let root = padic::cube_root_unit(target, p, prec)?;
    let mp = ipow(p, prec);
    y[j] = rem(ipow(p, m_j) * root, mp);
    for (i, yi) in y.iter_mut().enumerate() {
        if i != j {
            *yi = rem(*yi, mp);
        }
    }
    let s: i128 = c
        .iter()
        .zip(&y)
        .map(|(&ci, &yi)| arith::mulmod(rem(ci, mp), arith::mulmod(arith::mulmod(yi, yi, mp), yi, mp), mp))
        .sum();
    if rem(s - rhs, mp) != 0 {
        return None;
    }
    Some(DiagonalSolution { y, prec, index: j, t })
}

/// Residue precision sufficient for an exhaustive decision:
/// 2(v_p(3) + max v_p(a_i)) + 1.
pub fn exhaustion_level(s: &Surface, p: u64) -> u32 {
    let mv = s.coeffs().iter().map(|&a| arith::vp_int(a, p)).max().unwrap();
    2 * (u32::from(p == 3) + mv) + 1
}

/// Decides U(Z_p) ≠ ∅, with a certified witness when soluble.
pub fn has_zp_points(s: &Surface, p: u64) -> LocalVerdict {
    has_zp_points_prec(s, p, 1)
}

pub fn has_zp_points_prec(s: &Surface, p: u64, prec: u32) -> LocalVerdict {
    match solve_diagonal(&s.forms(), s.a0, p, prec) {
        Some(sol) => {
            let pt = LocalPointX { p, u: [sol.y[0], sol.y[1], sol.y[2]], prec: sol.prec, index: sol.index, t: sol.t };
            debug_assert!(pt.verify(s));
            LocalVerdict::Soluble(Some(pt))
        }
        None => LocalVerdict::Insoluble { level: exhaustion_level(s, p) },
    }
}

/// True if the projective closure a1x1³ + a2x2³ + a3x3³ = a0x0³ has a
/// Q_p-point.
pub fn has_projective_point(s: &Surface, p: u64) -> bool {
    solve_diagonal(&[-s.a0, s.a1, s.a2, s.a3], 0, p, 1).is_some()
}

/// Local solubility at every place.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElsReport {
    pub places: Vec<(RationalPlace, LocalVerdict)>,
    pub els: bool,
}

/// Checks ∞, every bad prime and every prime ≤ `up_to`. Remaining primes
/// have good reduction and are soluble: for p ≥ 5 the smooth reduction has
/// more points than its boundary curve and Hensel lifts one.
pub fn is_els(s: &Surface, up_to: u64) -> ElsReport {
    let mut primes = s.bad_primes();
    primes.extend(arith::primes_up_to(up_to));
    primes.sort_unstable();
    primes.dedup();
    let mut places = vec![(RationalPlace::Infinity, LocalVerdict::Soluble(None))];
    let mut els = true;
    for p in primes {
        let v = has_zp_points(s, p);
        els &= v.is_soluble();
        places.push((RationalPlace::Prime(p), v));
    }
    // p = 2 is soluble even when of good reduction, but check it directly
    if up_to < 2 && !s.bad_primes().contains(&2) {
        let v = has_zp_points(s, 2);
        els &= v.is_soluble();
        places.push((RationalPlace::Prime(2), v));
        places.sort_by_key(|(pl, _)| *pl);
    }
    ElsReport { places, els }
}

/// Fast boolean ELS test (bad primes and 2 only).
pub fn els_quick(s: &Surface) -> bool {
    let mut primes = s.bad_primes();
    if !primes.contains(&2) {
        primes.push(2);
    }
    primes.into_iter().all(|p| solve_diagonal(&s.forms(), s.a0, p, 1).is_some())
}

/// Largest box accepted by [`brute_force_points`].
pub const MAX_BOX: i128 = 1_000_000;

/// All integral points with |u_i| ≤ box, solving for u3 by exact cube roots.
pub fn brute_force_points(s: &Surface, bound: i128) -> Vec<[i128; 3]> {
    assert!(bound <= MAX_BOX, "box too large");
    let mut out = Vec::new();
    for u1 in -bound..=bound {
        let t1 = s.a0 - s.a1 * u1 * u1 * u1;
        for u2 in -bound..=bound {
            let r = t1 - s.a2 * u2 * u2 * u2;
            if r % s.a3 != 0 {
                continue;
            }
            if let Some(u3) = arith::icbrt_exact(r / s.a3) {
                if u3.abs() <= bound {
                    out.push([u1, u2, u3]);
                }
            }
        }
    }
    out
}

/// Residue class u ≡ u* (mod p^k) of Z_p³ and what is known about it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClassStatus {
    /// F(u*) ≢ 0 mod p^k: no Z_p point in the class.
    Empty,
    /// Hensel along coordinate `index` produces a point in the class.
    Certified { index: usize, t: u32 },
    Undecided,
}

/// Largest exponent M with p^M below 2^120.
fn modulus_cap(p: u64) -> u32 {
    let mut m = 0;
    let mut x: u128 = 1;
    while x.checked_mul(p as u128).is_some_and(|y| y < 1 << 120) {
        x *= p as u128;
        m += 1;
    }
    m
}

/// Lower bound min(v_p(F(u)), M) with M large enough for the Hensel tests
/// at level k, and the derivative valuations.
fn class_data(s: &Surface, u: &[i128; 3], p: u64, k: u32) -> Option<(u32, [Option<u32>; 3])> {
    let ts: [Option<u32>; 3] = std::array::from_fn(|i| derivative_valuation(s, u, i, p));
    let need = ts.iter().flatten().map(|&t| (2 * t + 1).max(k + t)).max().unwrap_or(k).max(k);
    let mm = need.min(modulus_cap(p));
    if mm < k {
        return None;
    }
    let m = ipow(p, mm);
    let f = eval_mod(s, u, m);
    let v = if f == 0 { mm } else { arith::vp_int(f, p) };
    Some((v, ts))
}

/// Status of the class u ≡ u* mod p^k.
pub fn class_status(s: &Surface, u: &[i128; 3], p: u64, k: u32) -> ClassStatus {
    let Some((v, ts)) = class_data(s, u, p, k) else { return ClassStatus::Undecided };
    if v < k {
        return ClassStatus::Empty;
    }
    for (index, t) in ts.iter().enumerate() {
        if let Some(t) = *t {
            if v > 2 * t && v - t >= k {
                return ClassStatus::Certified { index, t };
            }
        }
    }
    ClassStatus::Undecided
}

/// Certified point of the class, lifted to precision `prec`.
pub fn class_point(s: &Surface, u: &[i128; 3], p: u64, k: u32, prec: u32) -> Option<LocalPointX> {
    let ClassStatus::Certified { index, t } = class_status(s, u, p, k) else { return None };
    let (v, _) = class_data(s, u, p, k)?;
    let start = v.min(prec.max(2 * t + 1));
    let m = ipow(p, start);
    let pt = LocalPointX { p, u: u.map(|x| rem(x, m)), prec: start, index, t };
    if start >= prec {
        return Some(pt);
    }
    pt.lift(s, prec)
}

/// Random Z_p points of U to precision `prec`: two coordinates are drawn
/// uniformly mod p^prec and the third is solved for by a p-adic cube root.
pub fn sample_points<R: Rng>(s: &Surface, p: u64, prec: u32, count: usize, rng: &mut R) -> Vec<LocalPointX> {
    let mut out = Vec::with_capacity(count);
    let a = s.forms();
    let m = ipow(p, prec);
    let work = prec + exhaustion_level(s, p) + 4;
    let mw = ipow(p, work);
    let mut attempts = 0;
    while out.len() < count && attempts < 200 * count + 1000 {
        attempts += 1;
        let j = attempts % 3;
        let mut u = [0i128; 3];
        for (i, x) in u.iter_mut().enumerate() {
            if i != j {
                *x = rng.gen_range(0..m);
            }
        }
        // a_j u_j³ = a0 − Σ_{i≠j} a_i u_i³ =: r
        let mut r = rem(s.a0, mw);
        for i in 0..3 {
            if i != j {
                let c = arith::mulmod(arith::mulmod(rem(u[i], mw), rem(u[i], mw), mw), rem(u[i], mw), mw);
                r = rem(r - arith::mulmod(rem(a[i], mw), c, mw), mw);
            }
        }
        if r == 0 {
            continue;
        }
        let vr = arith::vp_int(r, p);
        let va = arith::vp_int(a[j], p);
        if vr < va || !(vr - va).is_multiple_of(3) || vr + prec + 3 > work {
            continue;
        }
        let mj = (vr - va) / 3;
        let md = ipow(p, work - vr);
        let unit_a = a[j] / ipow(p, va);
        let Some(inv) = invmod(rem(unit_a, md), md) else { continue };
        let target = arith::mulmod(rem(r / ipow(p, vr), md), inv, md);
        let Some(root) = padic::cube_root_unit(target, p, prec + 1) else { continue };
        u[j] = ipow(p, mj) * root;
        let t = arith::vp_int(3 * a[j], p) + 2 * mj;
        let pt = LocalPointX { p, u: u.map(|x| rem(x, m)), prec, index: j, t };
        if prec > 2 * t && pt.verify(s) {
            out.push(pt);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let s = Surface::new(11, 17, 17, -22).unwrap();
        assert!(has_zp_points(&s, 3).is_soluble());
        let u = Surface::parse("125,85,68,2").unwrap();
        assert!(has_zp_points(&u, 5).is_soluble());
        let f = Surface::new(4, 1, 1, 1).unwrap();
        assert_eq!(has_zp_points(&f, 3), LocalVerdict::Insoluble { level: 3 });
        assert!(!els_quick(&f));
        assert!(els_quick(&u));
    }

    #[test]
    fn brute_force_examples() {
        let s = Surface::new(3, 1, 1, 1).unwrap();
        let pts = brute_force_points(&s, 10);
        assert!(pts.contains(&[1, 1, 1]));
        assert!(pts.contains(&[4, 4, -5]));
    }

    #[test]
    fn witnesses_lift() {
        for (a0, a1, a2, a3) in [(3, 1, 1, 1), (2, 125, 85, 68), (11, 17, 17, -22), (7, 2, 3, 5)] {
            let s = Surface::new(a0, a1, a2, a3).unwrap();
            for p in [2u64, 3, 5, 7, 17] {
                if let LocalVerdict::Soluble(Some(pt)) = has_zp_points(&s, p) {
                    assert!(pt.verify(&s), "{s} at {p}");
                    let l = pt.lift(&s, pt.prec + 2).unwrap();
                    assert!(l.verify(&s));
                }
            }
        }
    }
}
