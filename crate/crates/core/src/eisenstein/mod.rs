//! Exact arithmetic in Z[ω] and k = Q(ω), places of k, and λ-adic digit
//! expansions at the prime above 3.

mod local;

pub use local::LocalNum;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{self, Rational};
use crate::padic;

/// Errors from Eisenstein and local-field arithmetic.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EisError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("zero has no valuation")]
    Zero,
    #[error("element has negative valuation at {0}, no residue")]
    NotIntegral(PlaceK),
    #[error("element is not a unit at {0}")]
    NotUnit(PlaceK),
    #[error("insufficient precision at {place}: {detail}")]
    Precision { place: PlaceK, detail: String },
}

/// The element a + bω of Z[ω], ω² + ω + 1 = 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct EisensteinInt {
    pub a: i128,
    pub b: i128,
}

impl EisensteinInt {
    pub const ZERO: Self = Self::new(0, 0);
    pub const ONE: Self = Self::new(1, 0);
    pub const OMEGA: Self = Self::new(0, 1);
    /// λ = 1 − ω, the uniformiser above 3.
    pub const LAMBDA: Self = Self::new(1, -1);

    pub const fn new(a: i128, b: i128) -> Self {
        Self { a, b }
    }

    pub const fn from_int(a: i128) -> Self {
        Self { a, b: 0 }
    }

    pub fn is_zero(&self) -> bool {
        self.a == 0 && self.b == 0
    }

    /// a² − ab + b².
    pub fn norm(&self) -> i128 {
        self.a * self.a - self.a * self.b + self.b * self.b
    }

    /// Complex conjugate (a − b) − bω.
    pub fn conj(&self) -> Self {
        Self::new(self.a - self.b, -self.b)
    }

    /// True for the six units ±1, ±ω, ±ω².
    pub fn is_unit(&self) -> bool {
        self.norm() == 1
    }

    /// The six units, in the order 1, ω, ω², −1, −ω, −ω².
    pub fn units() -> [Self; 6] {
        let w2 = Self::new(-1, -1);
        [Self::ONE, Self::OMEGA, w2, -Self::ONE, -Self::OMEGA, -w2]
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut r = Self::ONE;
        let mut b = *self;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b;
            }
            b = b * b;
            e >>= 1;
        }
        r
    }

    /// Exact quotient `self / d`, if `d` divides `self` in Z[ω].
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let n = d.norm();
        if n == 0 {
            return None;
        }
        let z = *self * d.conj();
        (z.a % n == 0 && z.b % n == 0).then(|| Self::new(z.a / n, z.b / n))
    }

    /// Division with remainder of norm smaller than `d`'s.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let n = d.norm();
        assert!(n != 0, "division by zero in Z[ω]");
        let z = *self * d.conj();
        let round = |x: i128| Integer::div_floor(&(2 * x + n), &(2 * n));
        let q = Self::new(round(z.a), round(z.b));
        let r = *self - q * *d;
        debug_assert!(r.norm() < n);
        (q, r)
    }

    /// A greatest common divisor (defined up to units).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut x, mut y) = (*self, *other);
        while !y.is_zero() {
            let (_, r) = x.div_rem(&y);
            x = y;
            y = r;
        }
        x
    }

    /// Reduction of both coordinates modulo `m`.
    pub fn reduce(&self, m: i128) -> Self {
        Self::new(self.a.rem_euclid(m), self.b.rem_euclid(m))
    }
}

impl Add for EisensteinInt {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.a + o.a, self.b + o.b)
    }
}

impl Sub for EisensteinInt {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.a - o.a, self.b - o.b)
    }
}

impl Neg for EisensteinInt {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.a, -self.b)
    }
}

impl Mul for EisensteinInt {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        // (a + bω)(c + dω) = (ac − bd) + (ad + bc − bd)ω
        Self::new(
            self.a * o.a - self.b * o.b,
            self.a * o.b + self.b * o.a - self.b * o.b,
        )
    }
}

impl fmt::Display for EisensteinInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a, self.b) {
            (a, 0) => write!(f, "{a}"),
            (0, b) => write!(f, "{b}ω"),
            (a, b) if b < 0 => write!(f, "{a}-{}ω", -b),
            (a, b) => write!(f, "{a}+{b}ω"),
        }
    }
}

/// Nonzero element of k = Q(ω), stored as `num / den` with `den > 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct KElem {
    pub num: EisensteinInt,
    pub den: i128,
}

impl KElem {
    pub fn new(num: EisensteinInt, den: i128) -> Self {
        assert!(den != 0, "zero denominator");
        let g = num.a.gcd(&num.b).gcd(&den);
        let s = den.signum();
        Self {
            num: EisensteinInt::new(s * num.a / g, s * num.b / g),
            den: s * den / g,
        }
    }

    pub fn from_eis(z: EisensteinInt) -> Self {
        Self::new(z, 1)
    }

    pub fn from_int(n: i128) -> Self {
        Self::new(EisensteinInt::from_int(n), 1)
    }

    pub fn from_rational(x: &Rational) -> Self {
        Self::new(EisensteinInt::from_int(*x.numer()), *x.denom())
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(&self) -> Self {
        let n = self.num.norm();
        assert!(n != 0, "inverse of zero");
        let c = self.num.conj();
        Self::new(
            EisensteinInt::new(c.a * self.den, c.b * self.den),
            n,
        )
    }

    pub fn pow(&self, e: i32) -> Self {
        let base = if e < 0 { self.inv() } else { *self };
        let e = e.unsigned_abs();
        Self::new(base.num.pow(e), base.den.pow(e))
    }
}

impl Mul for KElem {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Self::new(self.num * o.num, self.den * o.den)
    }
}

/// A place of k, with the embedding data used to define residues.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PlaceK {
    Complex,
    /// p ≡ 1 mod 3; the place is the kernel of ω ↦ r in F_p.
    Split { p: u64, r: u64 },
    /// p ≡ 2 mod 3; residue field F_{p²}.
    Inert { p: u64 },
    /// The place above 3, uniformiser λ = 1 − ω.
    Ramified,
}

impl fmt::Display for PlaceK {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PlaceK::Complex => write!(f, "∞"),
            PlaceK::Split { p, r } => write!(f, "({p}, ω-{r})"),
            PlaceK::Inert { p } => write!(f, "({p})"),
            PlaceK::Ramified => write!(f, "(λ)"),
        }
    }
}

impl PlaceK {
    /// Residue characteristic, `None` for the complex place.
    pub fn prime(&self) -> Option<u64> {
        match *self {
            PlaceK::Complex => None,
            PlaceK::Split { p, .. } | PlaceK::Inert { p } => Some(p),
            PlaceK::Ramified => Some(3),
        }
    }

    /// Size of the residue field.
    pub fn residue_size(&self) -> Option<u64> {
        match *self {
            PlaceK::Complex => None,
            PlaceK::Split { p, .. } => Some(p),
            PlaceK::Inert { p } => Some(p * p),
            PlaceK::Ramified => Some(3),
        }
    }

    /// A generator of the prime ideal of Z[ω] at this place.
    pub fn uniformiser(&self) -> Option<EisensteinInt> {
        match *self {
            PlaceK::Complex => None,
            PlaceK::Split { p, r } => {
                let pi = EisensteinInt::from_int(p as i128)
                    .gcd(&EisensteinInt::new(-(r as i128), 1));
                debug_assert_eq!(pi.norm(), p as i128);
                Some(pi)
            }
            PlaceK::Inert { p } => Some(EisensteinInt::from_int(p as i128)),
            PlaceK::Ramified => Some(EisensteinInt::LAMBDA),
        }
    }

    /// The same prime with the other root of x² + x + 1 (identity for
    /// non-split places).
    pub fn conjugate(&self) -> Self {
        match *self {
            PlaceK::Split { p, r } => PlaceK::Split { p, r: p - 1 - r },
            other => other,
        }
    }
}

/// Roots of x² + x + 1 mod p (p ≡ 1 mod 3), ascending.
pub fn cube_roots_of_unity_mod(p: u64) -> [u64; 2] {
    let r = padic::primitive_cube_root_of_unity(p);
    let s = p - 1 - r;
    if r < s {
        [r, s]
    } else {
        [s, r]
    }
}

/// The places of k above the rational prime `p` (canonical split place
/// first).
pub fn classify_prime(p: u64) -> Result<Vec<PlaceK>, EisError> {
    if !arith::is_prime(p) {
        return Err(EisError::NotPrime(p));
    }
    Ok(match p % 3 {
        0 => vec![PlaceK::Ramified],
        2 => vec![PlaceK::Inert { p }],
        _ => {
            let [r, s] = cube_roots_of_unity_mod(p);
            vec![PlaceK::Split { p, r }, PlaceK::Split { p, r: s }]
        }
    })
}

/// The canonical place above `p` (the smaller root for split primes).
pub fn canonical_place(p: u64) -> Result<PlaceK, EisError> {
    Ok(classify_prime(p)?[0])
}

/// Valuation of a nonzero Eisenstein integer at a finite place, with the
/// cofactor left after removing the uniformiser.
pub fn strip_uniformiser(z: &EisensteinInt, w: &PlaceK) -> Result<(u32, EisensteinInt), EisError> {
    if z.is_zero() {
        return Err(EisError::Zero);
    }
    let pi = w.uniformiser().ok_or(EisError::Zero)?;
    let mut v = 0;
    let mut x = *z;
    while let Some(y) = x.div_exact(&pi) {
        x = y;
        v += 1;
    }
    Ok((v, x))
}

/// Normalized valuation of a nonzero element of k at a finite place.
pub fn valuation(x: &KElem, w: &PlaceK) -> Result<i32, EisError> {
    if x.is_zero() {
        return Err(EisError::Zero);
    }
    let (vn, _) = strip_uniformiser(&x.num, w)?;
    let (vd, _) = strip_uniformiser(&EisensteinInt::from_int(x.den), w)?;
    Ok(vn as i32 - vd as i32)
}

/// Element of a residue field of k.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Residue {
    /// F_p (split places) or F_3 (ramified place).
    Prime(u64),
    /// a + bω in F_{p²} (inert places).
    Quadratic(u64, u64),
}

/// Residue of an Eisenstein integer at a finite place.
pub fn residue_int(z: &EisensteinInt, w: &PlaceK) -> Residue {
    match *w {
        PlaceK::Split { p, r } => {
            let m = p as i128;
            Residue::Prime(arith::rem(z.a + z.b * r as i128, m) as u64)
        }
        PlaceK::Inert { p } => {
            let m = p as i128;
            Residue::Quadratic(arith::rem(z.a, m) as u64, arith::rem(z.b, m) as u64)
        }
        PlaceK::Ramified => Residue::Prime(arith::rem(z.a + z.b, 3) as u64),
        PlaceK::Complex => panic!("no residue field at the complex place"),
    }
}

/// Residue of an element of k with non-negative valuation.
pub fn residue(x: &KElem, w: &PlaceK) -> Result<Residue, EisError> {
    if valuation(x, w)? < 0 {
        return Err(EisError::NotIntegral(*w));
    }
    // Remove the common uniformiser power, then reduce num · den⁻¹.
    let (vd, dcof) = strip_uniformiser(&EisensteinInt::from_int(x.den), w)?;
    let mut num = x.num;
    let pi = w.uniformiser().expect("finite place");
    for _ in 0..vd {
        num = num.div_exact(&pi).expect("valuation checked");
    }
    Ok(residue_div(&residue_int(&num, w), &residue_int(&dcof, w), w))
}

fn residue_div(n: &Residue, d: &Residue, w: &PlaceK) -> Residue {
    match (*n, *d) {
        (Residue::Prime(a), Residue::Prime(b)) => {
            let p = w.prime().unwrap() as i128;
            let inv = arith::invmod(b as i128, p).expect("unit denominator");
            Residue::Prime(arith::mulmod(a as i128, inv, p) as u64)
        }
        (Residue::Quadratic(..), Residue::Quadratic(..)) => {
            let p = w.prime().unwrap();
            let f = padic::Fp2::new(p);
            let (a, b) = match *n {
                Residue::Quadratic(a, b) => (a, b),
                _ => unreachable!(),
            };
            let (c, d2) = match *d {
                Residue::Quadratic(c, d2) => (c, d2),
                _ => unreachable!(),
            };
            let q = f.mul((a, b), f.inv((c, d2)));
            Residue::Quadratic(q.0, q.1)
        }
        _ => unreachable!("mismatched residue kinds"),
    }
}

/// λ-adic expansion data of an element at the ramified place:
/// x = ±λ^valuation · (1 + b1λ + b2λ² + b3λ³ + O(λ⁴)).
///
/// Digits are canonical representatives in {0, 1, 2}; they are determined
/// by the unit part modulo λ⁴ = 9·(unit).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LambdaExpansion {
    pub sign: i8,
    pub b1: u8,
    pub b2: u8,
    pub b3: u8,
    pub valuation: i32,
}

impl LambdaExpansion {
    pub fn digits(&self) -> [u8; 3] {
        [self.b1, self.b2, self.b3]
    }

    /// ±(1 + b1λ + b2λ² + b3λ³) as an Eisenstein integer.
    pub fn reconstruct_unit(&self) -> EisensteinInt {
        let l = EisensteinInt::LAMBDA;
        let mut acc = EisensteinInt::ONE;
        let mut lp = EisensteinInt::ONE;
        for d in self.digits() {
            lp = lp * l;
            acc = acc + lp * EisensteinInt::from_int(d as i128);
        }
        if self.sign < 0 {
            -acc
        } else {
            acc
        }
    }
}

/// Sign and canonical digits of a λ-unit given by an Eisenstein integer
/// representative (only its class modulo 9 matters).
pub fn unit_digits(u: &EisensteinInt) -> (i8, [u8; 3]) {
    let u = u.reduce(81);
    let first = (u.a + u.b).rem_euclid(3);
    assert!(first != 0, "unit_digits: not a unit at λ");
    let sign: i8 = if first == 1 { 1 } else { -1 };
    let mut x = EisensteinInt::new(sign as i128 * u.a - 1, sign as i128 * u.b);
    let mut ds = [0u8; 3];
    for d in ds.iter_mut() {
        x = x.div_exact(&EisensteinInt::LAMBDA).expect("digit step divisible by λ");
        let digit = (x.a + x.b).rem_euclid(3);
        *d = digit as u8;
        x = x - EisensteinInt::from_int(digit);
    }
    (sign, ds)
}

/// Smallest depth for which the canonical digits are well defined.
pub const MIN_LAMBDA_DEPTH: u32 = 4;

/// λ-adic expansion of a nonzero element of k at the ramified place.
///
/// `depth` is the power of λ modulo which the unit part is read; digits are
/// pinned once `depth ≥ 4`, smaller depths are a precision error.
pub fn lambda_expand(x: &KElem, depth: u32) -> Result<LambdaExpansion, EisError> {
    if depth < MIN_LAMBDA_DEPTH {
        return Err(EisError::Precision {
            place: PlaceK::Ramified,
            detail: format!("depth {depth} < {MIN_LAMBDA_DEPTH} does not pin b3"),
        });
    }
    let w = PlaceK::Ramified;
    let (vn, un) = strip_uniformiser(&x.num, &w)?;
    let (vd, ud) = strip_uniformiser(&EisensteinInt::from_int(x.den), &w)?;
    // unit part = un / ud; work modulo 81 using the inverse of ud mod 81.
    let inv = unit_inverse_mod(&ud, 81);
    let u = (un * inv).reduce(81);
    let (sign, d) = unit_digits(&u);
    Ok(LambdaExpansion {
        sign,
        b1: d[0],
        b2: d[1],
        b3: d[2],
        valuation: vn as i32 - vd as i32,
    })
}

/// Inverse of a λ-unit modulo the rational integer `m` (a power of 3).
pub fn unit_inverse_mod(u: &EisensteinInt, m: i128) -> EisensteinInt {
    // u⁻¹ = conj(u) / N(u), N(u) is prime to 3.
    let n = u.norm();
    let ninv = arith::invmod(arith::rem(n, m), m).expect("unit norm invertible");
    let c = u.conj();
    EisensteinInt::new(arith::mulmod(arith::rem(c.a, m), ninv, m), arith::mulmod(arith::rem(c.b, m), ninv, m))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn norm_examples() {
        assert_eq!(EisensteinInt::ONE.norm(), 1);
        assert_eq!(EisensteinInt::LAMBDA.norm(), 3);
        let lp = EisensteinInt::new(1, 2);
        assert_eq!(lp * lp, EisensteinInt::from_int(-3));
        let l = EisensteinInt::LAMBDA;
        // λ² − 3λ + 3 = 0
        assert_eq!(l * l - l * EisensteinInt::from_int(3) + EisensteinInt::from_int(3), EisensteinInt::ZERO);
    }

    #[test]
    fn units_are_norm_one() {
        for u in EisensteinInt::units() {
            assert!(u.is_unit());
        }
        let mut count = 0;
        for a in -3..=3 {
            for b in -3..=3 {
                if EisensteinInt::new(a, b).is_unit() {
                    count += 1;
                }
            }
        }
        assert_eq!(count, 6);
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify_prime(7).unwrap(), vec![PlaceK::Split { p: 7, r: 2 }, PlaceK::Split { p: 7, r: 4 }]);
        assert_eq!(classify_prime(5).unwrap(), vec![PlaceK::Inert { p: 5 }]);
        assert_eq!(classify_prime(3).unwrap(), vec![PlaceK::Ramified]);
        assert_eq!(classify_prime(9), Err(EisError::NotPrime(9)));
    }

    #[test]
    fn valuations_and_residues() {
        let three = KElem::from_int(3);
        assert_eq!(valuation(&three, &PlaceK::Ramified).unwrap(), 2);
        let w7 = PlaceK::Split { p: 7, r: 2 };
        assert_eq!(valuation(&KElem::from_int(7), &w7).unwrap(), 1);
        assert_eq!(residue(&KElem::from_eis(EisensteinInt::OMEGA), &w7).unwrap(), Residue::Prime(2));
        // 3 = −ω²λ²
        let w2 = EisensteinInt::new(-1, -1);
        let l = EisensteinInt::LAMBDA;
        assert_eq!(-(w2 * l * l), EisensteinInt::from_int(3));
    }

    #[test]
    fn lambda_expansions_of_small_integers() {
        let e = lambda_expand(&KElem::from_int(-2), 5).unwrap();
        assert_eq!((e.sign, e.digits()), (1, [0, 1, 1]));
        let e = lambda_expand(&KElem::from_int(2), 5).unwrap();
        assert_eq!((e.sign, e.digits()), (-1, [0, 1, 1]));
        let e = lambda_expand(&KElem::from_int(4), 5).unwrap();
        assert_eq!((e.sign, e.digits()), (1, [0, 2, 2]));
        let e = lambda_expand(&KElem::from_eis(EisensteinInt::OMEGA), 5).unwrap();
        assert_eq!((e.sign, e.b1), (1, 2));
        assert!(lambda_expand(&KElem::from_int(2), 3).is_err());
    }

    #[test]
    fn division_with_remainder() {
        let x = EisensteinInt::new(37, -11);
        let y = EisensteinInt::new(5, 3);
        let (q, r) = x.div_rem(&y);
        assert_eq!(q * y + r, x);
        assert!(r.norm() < y.norm());
    }
}
