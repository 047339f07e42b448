//! Cubic Hilbert symbols over k = Q(ω), cube classes over Q and Q_p, and the
//! quadratic Hilbert symbol over Q.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{self, ipow, rem, Rational};
use crate::eisenstein::{
    self, classify_prime, residue_int, strip_uniformiser, unit_digits, unit_inverse_mod, EisError,
    EisensteinInt, KElem, LocalNum, PlaceK, Residue,
};
use crate::padic::{self, Fp2};

/// Errors raised while evaluating symbols.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SymbolError {
    #[error("zero argument")]
    Zero,
    #[error(transparent)]
    Eisenstein(#[from] EisError),
}

/// An element of (1/3)Z/Z, stored as its numerator class in Z/3.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct InvariantValue(u8);

impl InvariantValue {
    pub const ZERO: Self = Self(0);
    pub const THIRD: Self = Self(1);
    pub const TWO_THIRDS: Self = Self(2);
    pub const ALL: [Self; 3] = [Self(0), Self(1), Self(2)];

    pub fn new(c: i64) -> Self {
        Self(c.rem_euclid(3) as u8)
    }

    pub fn class(&self) -> u8 {
        self.0
    }

    pub fn render(&self) -> &'static str {
        ["0", "1/3", "2/3"][self.0 as usize]
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s.trim() {
            "0" => Some(Self(0)),
            "1/3" => Some(Self(1)),
            "2/3" => Some(Self(2)),
            _ => None,
        }
    }
}

impl fmt::Display for InvariantValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.render())
    }
}

impl Serialize for InvariantValue {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.render())
    }
}

impl<'de> Deserialize<'de> for InvariantValue {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Self::parse(&s).ok_or_else(|| serde::de::Error::custom(format!("bad invariant {s}")))
    }
}

impl Add for InvariantValue {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self((self.0 + o.0) % 3)
    }
}

impl Sub for InvariantValue {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self((self.0 + 3 - o.0) % 3)
    }
}

impl Neg for InvariantValue {
    type Output = Self;
    fn neg(self) -> Self {
        Self((3 - self.0) % 3)
    }
}

impl Mul<i64> for InvariantValue {
    type Output = Self;
    fn mul(self, k: i64) -> Self {
        Self::new(self.0 as i64 * k)
    }
}

impl std::iter::Sum for InvariantValue {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::ZERO, |a, b| a + b)
    }
}

/// Which sign convention the wild formulas use. `FlippedWild` exists only
/// as a negative control for the reciprocity check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Convention {
    #[default]
    Standard,
    FlippedWild,
}

/// Valuation and unit data of a nonzero element at a finite place.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UnitPart {
    /// Residue of the unit part at a split or inert place.
    Tame(Residue),
    /// Representative of the unit part at λ, meaningful modulo 9.
    Wild(EisensteinInt),
}

/// `x = π^v · u`, recorded as `(v, u)`.
pub type Decomposed = (i64, UnitPart);

/// Index i with `u^{(q−1)/3} = ω^i` in the residue field at a tame place.
pub fn cubic_character(u: &Residue, w: &PlaceK) -> Result<InvariantValue, SymbolError> {
    match (*w, *u) {
        (PlaceK::Split { p, r }, Residue::Prime(x)) => {
            let m = p as i128;
            if x % p == 0 {
                return Err(EisError::NotUnit(*w).into());
            }
            let c = arith::powmod(x as i128, ((p - 1) / 3) as u128, m);
            let r = r as i128;
            Ok(if c == 1 {
                InvariantValue(0)
            } else if c == r {
                InvariantValue(1)
            } else {
                debug_assert_eq!(c, arith::mulmod(r, r, m));
                InvariantValue(2)
            })
        }
        (PlaceK::Inert { p }, Residue::Quadratic(a, b)) => {
            if a % p == 0 && b % p == 0 {
                return Err(EisError::NotUnit(*w).into());
            }
            let f = Fp2::new(p);
            let c = f.pow((a, b), ((p * p - 1) / 3) as u128);
            let one = (1, 0);
            let om = (0, 1);
            Ok(if c == one {
                InvariantValue(0)
            } else if c == om {
                InvariantValue(1)
            } else {
                InvariantValue(2)
            })
        }
        _ => panic!("cubic_character needs a split or inert place"),
    }
}

fn residue_pow(u: &Residue, e: i64, w: &PlaceK) -> Residue {
    let q = w.residue_size().unwrap() as i64;
    let e = e.rem_euclid(q - 1) as u128;
    match *u {
        Residue::Prime(x) => {
            let p = w.prime().unwrap() as i128;
            Residue::Prime(arith::powmod(x as i128, e, p) as u64)
        }
        Residue::Quadratic(a, b) => {
            let f = Fp2::new(w.prime().unwrap());
            let (c, d) = f.pow((a, b), e);
            Residue::Quadratic(c, d)
        }
    }
}

fn residue_mul(x: &Residue, y: &Residue, w: &PlaceK) -> Residue {
    match (*x, *y) {
        (Residue::Prime(a), Residue::Prime(b)) => {
            let p = w.prime().unwrap() as i128;
            Residue::Prime(arith::mulmod(a as i128, b as i128, p) as u64)
        }
        (Residue::Quadratic(a, b), Residue::Quadratic(c, d)) => {
            let f = Fp2::new(w.prime().unwrap());
            let (e, g) = f.mul((a, b), (c, d));
            Residue::Quadratic(e, g)
        }
        _ => unreachable!(),
    }
}

fn residue_neg(x: &Residue, w: &PlaceK) -> Residue {
    let p = w.prime().unwrap();
    match *x {
        Residue::Prime(a) => Residue::Prime((p - a % p) % p),
        Residue::Quadratic(a, b) => Residue::Quadratic((p - a % p) % p, (p - b % p) % p),
    }
}

/// Tame symbol: with t = (−1)^{αβ} u_a^β / u_b^α, the value is −i where
/// t^{(q−1)/3} = ω^i.
fn tame(alpha: i64, ua: &Residue, beta: i64, ub: &Residue, w: &PlaceK) -> Result<InvariantValue, SymbolError> {
    let mut t = residue_mul(&residue_pow(ua, beta, w), &residue_pow(ub, -alpha, w), w);
    if (alpha * beta).rem_euclid(2) == 1 {
        t = residue_neg(&t, w);
    }
    Ok(-cubic_character(&t, w)?)
}

/// Canonical digits of a λ-unit, shifted by ω so that b1 ∈ {0, 1}.
fn digits_for_lambda_pairing(u: &EisensteinInt) -> [u8; 3] {
    let (_, d) = unit_digits(u);
    if d[0] == 2 {
        // ω = 1 − λ lowers the first digit by one, and (λ, ω) = 0
        let (_, d2) = unit_digits(&(*u * EisensteinInt::OMEGA));
        debug_assert_eq!(d2[0], 1);
        d2
    } else {
        d
    }
}

/// (λ, u) for a λ-unit u: (b1 − b1²)/3 + b1b2 − b3 with b1 ∈ {0,1}.
pub fn lambda_unit_symbol(u: &EisensteinInt) -> InvariantValue {
    let [b1, b2, b3] = digits_for_lambda_pairing(u).map(|x| x as i64);
    InvariantValue::new((b1 - b1 * b1) / 3 + b1 * b2 - b3)
}

/// (u, u') for λ-units: b1c1(b1 − c1) − b1c2 + b2c1.
pub fn unit_unit_symbol(u: &EisensteinInt, v: &EisensteinInt) -> InvariantValue {
    let (_, b) = unit_digits(u);
    let (_, c) = unit_digits(v);
    let [b1, b2, _] = b.map(|x| x as i64);
    let [c1, c2, _] = c.map(|x| x as i64);
    InvariantValue::new(b1 * c1 * (b1 - c1) - b1 * c2 + b2 * c1)
}

/// (λ^e u, λ^f u') = e(λ, u') − f(λ, u) + (u, u').
fn wild(e: i64, u: &EisensteinInt, f: i64, v: &EisensteinInt, conv: Convention) -> InvariantValue {
    let val = lambda_unit_symbol(v) * e - lambda_unit_symbol(u) * f + unit_unit_symbol(u, v);
    match conv {
        Convention::Standard => val,
        Convention::FlippedWild => -val,
    }
}

/// Symbol from the decompositions of both arguments at a finite place.
pub fn symbol_from_parts(
    x: &Decomposed,
    y: &Decomposed,
    w: &PlaceK,
    conv: Convention,
) -> Result<InvariantValue, SymbolError> {
    match (x.1, y.1) {
        (UnitPart::Tame(ua), UnitPart::Tame(ub)) => tame(x.0, &ua, y.0, &ub, w),
        (UnitPart::Wild(u), UnitPart::Wild(v)) => Ok(wild(x.0, &u, y.0, &v, conv)),
        _ => unreachable!("mixed unit data"),
    }
}

/// Valuation and unit data of an exact nonzero element of k.
pub fn decompose_exact(x: &KElem, w: &PlaceK) -> Result<Decomposed, SymbolError> {
    if x.is_zero() {
        return Err(SymbolError::Zero);
    }
    let (vn, un) = strip_uniformiser(&x.num, w)?;
    let (vd, ud) = strip_uniformiser(&EisensteinInt::from_int(x.den), w)?;
    let v = vn as i64 - vd as i64;
    let unit = match w {
        PlaceK::Ramified => {
            let inv = unit_inverse_mod(&ud, 81);
            UnitPart::Wild((un * inv).reduce(81))
        }
        _ => {
            let rn = residue_int(&un, w);
            let rd = residue_int(&ud, w);
            let rd_inv = match rd {
                Residue::Prime(a) => {
                    let p = w.prime().unwrap() as i128;
                    Residue::Prime(arith::invmod(a as i128, p).unwrap() as u64)
                }
                Residue::Quadratic(a, b) => {
                    let (c, d) = Fp2::new(w.prime().unwrap()).inv((a, b));
                    Residue::Quadratic(c, d)
                }
            };
            UnitPart::Tame(residue_mul(&rn, &rd_inv, w))
        }
    };
    Ok((v, unit))
}

/// Valuation and unit data of a finite-precision element at a place above
/// its prime; fails when the precision cannot pin the needed digits.
pub fn decompose_local(x: &LocalNum, w: &PlaceK) -> Result<Decomposed, SymbolError> {
    let prec_err = |detail: String| SymbolError::Eisenstein(EisError::Precision { place: *w, detail });
    match *w {
        PlaceK::Complex => unreachable!("no local decomposition at the complex place"),
        PlaceK::Split { p, r } => {
            let m = ipow(p, x.prec);
            let om = padic::lift_root_of_unity(p, r, x.prec);
            let val = rem(x.a + arith::mulmod(rem(x.b, m), om, m), m);
            let (v, u) = padic::split_val(val, p, x.prec)
                .ok_or_else(|| prec_err(format!("element vanishes modulo {p}^{}", x.prec)))?;
            Ok((x.shift as i64 + v as i64, UnitPart::Tame(Residue::Prime(rem(u, p as i128) as u64))))
        }
        PlaceK::Inert { p } => {
            if x.is_indistinguishable_from_zero() {
                return Err(prec_err(format!("element vanishes modulo {p}^{}", x.prec)));
            }
            let va = if x.a == 0 { u32::MAX } else { arith::vp_int(x.a, p) };
            let vb = if x.b == 0 { u32::MAX } else { arith::vp_int(x.b, p) };
            let v = va.min(vb);
            if v >= x.prec {
                return Err(prec_err("valuation not determined".into()));
            }
            let pv = ipow(p, v);
            let pm = p as i128;
            let res = Residue::Quadratic(rem(x.a / pv, pm) as u64, rem(x.b / pv, pm) as u64);
            Ok((x.shift as i64 + v as i64, UnitPart::Tame(res)))
        }
        PlaceK::Ramified => {
            let known = 2 * x.prec as i64; // λ-adic absolute precision
            let mut z = EisensteinInt::new(x.a, x.b);
            if z.is_zero() {
                return Err(prec_err(format!("element vanishes modulo 3^{}", x.prec)));
            }
            let mut e = 0i64;
            while let Some(q) = z.div_exact(&EisensteinInt::LAMBDA) {
                z = q;
                e += 1;
                if known - e < 4 {
                    return Err(prec_err(format!("λ-valuation ≥ {e} leaves fewer than 4 digits")));
                }
            }
            if known - e < 4 {
                return Err(prec_err("fewer than 4 λ-adic digits".into()));
            }
            // 3^shift = (−ω²)^shift λ^{2 shift}
            let s = x.shift as i64;
            let w2 = EisensteinInt::new(-1, -1);
            let mut unit = z.reduce(81);
            let k = s.rem_euclid(3) as u32;
            unit = (unit * w2.pow(k)).reduce(81);
            if s.rem_euclid(2) == 1 {
                unit = (-unit).reduce(81);
            }
            Ok((2 * s + e, UnitPart::Wild(unit)))
        }
    }
}

/// The cubic Hilbert symbol (a, b)_w for exact nonzero a, b ∈ k.
pub fn hilbert_cubic(a: &KElem, b: &KElem, w: &PlaceK) -> Result<InvariantValue, SymbolError> {
    hilbert_cubic_with(a, b, w, Convention::Standard)
}

/// [`hilbert_cubic`] with an explicit sign convention.
pub fn hilbert_cubic_with(a: &KElem, b: &KElem, w: &PlaceK, conv: Convention) -> Result<InvariantValue, SymbolError> {
    if a.is_zero() || b.is_zero() {
        return Err(SymbolError::Zero);
    }
    if *w == PlaceK::Complex {
        return Ok(InvariantValue::ZERO);
    }
    symbol_from_parts(&decompose_exact(a, w)?, &decompose_exact(b, w)?, w, conv)
}

/// The cubic Hilbert symbol for finite-precision arguments.
pub fn hilbert_cubic_local(a: &LocalNum, b: &LocalNum, w: &PlaceK) -> Result<InvariantValue, SymbolError> {
    symbol_from_parts(&decompose_local(a, w)?, &decompose_local(b, w)?, w, Convention::Standard)
}

/// All places of k above the given rational primes.
pub fn places_above(primes: &[u64]) -> Vec<PlaceK> {
    let mut out = Vec::new();
    for &p in primes {
        out.extend(classify_prime(p).expect("prime input"));
    }
    out
}

/// Rational primes at which an element of k can fail to be a unit.
pub fn bad_primes(x: &KElem) -> BTreeSet<u64> {
    let mut s: BTreeSet<u64> = arith::prime_divisors(x.num.norm()).into_iter().collect();
    s.extend(arith::prime_divisors(x.den));
    s
}

/// Σ_{w ∈ S} (a, b)_w.
pub fn sum_over_places(a: &KElem, b: &KElem, places: &[PlaceK]) -> Result<InvariantValue, SymbolError> {
    sum_over_places_with(a, b, places, Convention::Standard)
}

pub fn sum_over_places_with(
    a: &KElem,
    b: &KElem,
    places: &[PlaceK],
    conv: Convention,
) -> Result<InvariantValue, SymbolError> {
    places.iter().map(|w| hilbert_cubic_with(a, b, w, conv)).sum()
}

/// Every place where (a, b) can be nonzero: the ramified place and the
/// places over primes dividing either argument.
pub fn support_places(a: &KElem, b: &KElem) -> Vec<PlaceK> {
    let mut primes = bad_primes(a);
    primes.extend(bad_primes(b));
    primes.insert(3);
    places_above(&primes.into_iter().collect::<Vec<_>>())
}

/// A rational place: ∞ or a prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RationalPlace {
    Infinity,
    Prime(u64),
}

impl fmt::Display for RationalPlace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RationalPlace::Infinity => write!(f, "∞"),
            RationalPlace::Prime(p) => write!(f, "{p}"),
        }
    }
}

/// Class of a nonzero rational in Q_v*/Q_v*³.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CubeClass {
    pub place: RationalPlace,
    pub val_mod3: u8,
    /// Class of the unit part; 0 where every unit is a cube.
    pub unit_char: u8,
}

impl CubeClass {
    pub fn is_cube(&self) -> bool {
        self.val_mod3 == 0 && self.unit_char == 0
    }
}

/// Cube class of `x` at `v`, with the local-cube verdict.
pub fn is_cube_local(x: &Rational, v: RationalPlace) -> (bool, CubeClass) {
    assert!(!x.is_zero(), "cube class of zero");
    let class = match v {
        RationalPlace::Infinity => CubeClass { place: v, val_mod3: 0, unit_char: 0 },
        RationalPlace::Prime(p) => {
            let val = arith::vp_rat(x, p);
            let unit = arith::strip_p(*x.numer(), p);
            let den = arith::strip_p(*x.denom(), p);
            let unit_char = match p % 3 {
                2 => 0,
                1 => {
                    let m = p as i128;
                    let u = arith::mulmod(rem(unit, m), arith::invmod(rem(den, m), m).unwrap(), m);
                    let w = PlaceK::Split { p, r: eisenstein::cube_roots_of_unity_mod(p)[0] };
                    cubic_character(&Residue::Prime(u as u64), &w).unwrap().class()
                }
                _ => {
                    let u = arith::mulmod(rem(unit, 9), arith::invmod(rem(den, 9), 9).unwrap(), 9);
                    match u {
                        1 | 8 => 0,
                        2 | 7 => 1,
                        _ => 2,
                    }
                }
            };
            CubeClass { place: v, val_mod3: val.rem_euclid(3) as u8, unit_char }
        }
    };
    (class.is_cube(), class)
}

/// True if `x` is a cube in Q_v.
pub fn is_local_cube(x: &Rational, v: RationalPlace) -> bool {
    is_cube_local(x, v).0
}

/// True if the nonzero rational `x` is a cube in Q.
pub fn is_cube_rational(x: &Rational) -> bool {
    arith::icbrt_exact(*x.numer()).is_some() && arith::icbrt_exact(*x.denom()).is_some()
}

/// Reduces every prime exponent of numerator and denominator modulo 3.
pub fn cube_free_part(x: &Rational) -> Rational {
    assert!(!x.is_zero(), "cube_free_part of zero");
    Rational::new(arith::cube_free_int(*x.numer()), arith::cube_free_int(*x.denom()))
}

/// Quadratic Hilbert symbol (a, b)_v over Q as an element of Z/2 (1 means
/// the symbol is −1).
pub fn hilbert_quadratic(a: &Rational, b: &Rational, v: RationalPlace) -> u8 {
    assert!(!a.is_zero() && !b.is_zero(), "quadratic symbol of zero");
    // reduce rationals to integers modulo squares
    let to_int = |x: &Rational| *x.numer() * *x.denom();
    let (a, b) = (to_int(a), to_int(b));
    match v {
        RationalPlace::Infinity => u8::from(a < 0 && b < 0),
        RationalPlace::Prime(2) => {
            let (al, u) = (arith::vp_int(a, 2) as i128, arith::strip_p(a, 2));
            let (be, w) = (arith::vp_int(b, 2) as i128, arith::strip_p(b, 2));
            let eps = |x: i128| ((x.rem_euclid(4) - 1) / 2) % 2;
            let omg = |x: i128| {
                let r = x.rem_euclid(8);
                u8::from(r == 3 || r == 5) as i128
            };
            ((eps(u) * eps(w) + al * omg(w) + be * omg(u)).rem_euclid(2)) as u8
        }
        RationalPlace::Prime(p) => {
            let (al, u) = (arith::vp_int(a, p) as i128, arith::strip_p(a, p));
            let (be, w) = (arith::vp_int(b, p) as i128, arith::strip_p(b, p));
            let m = p as i128;
            let leg = |x: i128| -> i128 {
                let e = arith::powmod(rem(x, m), ((p - 1) / 2) as u128, m);
                i128::from(e != 1)
            };
            let eps = ((p - 1) / 2) as i128 % 2;
            ((al * be * eps + be * leg(u) + al * leg(w)).rem_euclid(2)) as u8
        }
    }
}

/// Every rational place where the quadratic symbol of two rationals can be
/// nontrivial.
pub fn quadratic_support(a: &Rational, b: &Rational) -> Vec<RationalPlace> {
    let mut primes: BTreeSet<u64> = BTreeSet::new();
    for x in [a, b] {
        primes.extend(arith::prime_divisors(*x.numer()));
        primes.extend(arith::prime_divisors(*x.denom()));
    }
    primes.insert(2);
    let mut out: Vec<RationalPlace> = primes.into_iter().map(RationalPlace::Prime).collect();
    out.push(RationalPlace::Infinity);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, rint};

    fn k(n: i128) -> KElem {
        KElem::from_int(n)
    }

    #[test]
    fn omega_against_primes() {
        let om = KElem::from_eis(EisensteinInt::OMEGA);
        let w7 = PlaceK::Split { p: 7, r: 2 };
        assert_eq!(hilbert_cubic(&om, &k(7), &w7).unwrap(), InvariantValue::new(-(7 - 1) / 3));
        assert_eq!(hilbert_cubic(&om, &k(7), &w7).unwrap(), InvariantValue::THIRD);
        let w5 = PlaceK::Inert { p: 5 };
        assert_eq!(hilbert_cubic(&om, &k(5), &w5).unwrap(), InvariantValue::THIRD);
        for w in [w7, w5, PlaceK::Ramified] {
            assert_eq!(hilbert_cubic(&k(-1), &k(7 * 5 * 3), &w).unwrap(), InvariantValue::ZERO);
        }
    }

    #[test]
    fn wild_units_example() {
        let l = EisensteinInt::LAMBDA;
        let u = EisensteinInt::ONE + l; // digits (1,0,0)
        let v = EisensteinInt::ONE + l * l; // digits (0,1,0)
        let val = hilbert_cubic(&KElem::from_eis(u), &KElem::from_eis(v), &PlaceK::Ramified).unwrap();
        assert_eq!(val, InvariantValue::TWO_THIRDS);
    }

    #[test]
    fn lambda_omega_vanishes() {
        let l = KElem::from_eis(EisensteinInt::LAMBDA);
        let om = KElem::from_eis(EisensteinInt::OMEGA);
        assert_eq!(hilbert_cubic(&l, &om, &PlaceK::Ramified).unwrap(), InvariantValue::ZERO);
        assert_eq!(sum_over_places(&l, &om, &support_places(&l, &om)).unwrap(), InvariantValue::ZERO);
    }

    #[test]
    fn reciprocity_small() {
        let (a, b) = (k(2), k(7));
        assert_eq!(sum_over_places(&a, &b, &support_places(&a, &b)).unwrap(), InvariantValue::ZERO);
    }

    #[test]
    fn cube_tests() {
        assert!(is_local_cube(&rat(4, 5), RationalPlace::Prime(3)));
        assert!(is_local_cube(&rint(5), RationalPlace::Prime(2)));
        assert!(!is_local_cube(&rint(2), RationalPlace::Prime(7)));
        assert!(is_cube_rational(&rint(8)));
        assert!(!is_cube_rational(&rint(2)));
        assert_eq!(cube_free_part(&rint(40)), rint(5));
    }

    #[test]
    fn quadratic_examples() {
        assert_eq!(hilbert_quadratic(&rint(-1), &rint(-1), RationalPlace::Prime(2)), 1);
        assert_eq!(hilbert_quadratic(&rint(1), &rint(7), RationalPlace::Prime(7)), 0);
        assert_eq!(hilbert_quadratic(&rint(-1), &rint(-1), RationalPlace::Infinity), 1);
    }

    #[test]
    fn local_route_matches_exact() {
        let cases = [(12, 7), (-50, 9), (14, 27), (2, 3)];
        for (x, y) in cases {
            let (a, b) = (k(x), k(y));
            for w in support_places(&a, &b) {
                let p = w.prime().unwrap();
                let la = LocalNum::from_kelem(&a, p, 8);
                let lb = LocalNum::from_kelem(&b, p, 8);
                assert_eq!(
                    hilbert_cubic_local(&la, &lb, &w).unwrap(),
                    hilbert_cubic(&a, &b, &w).unwrap(),
                    "{x} {y} at {w}"
                );
            }
        }
    }
}
