//! Affine diagonal cubic surfaces a1·u1³ + a2·u2³ + a3·u3³ = a0, their
//! normal forms, Brauer-group shape, and the labeled projective models used
//! by the generic invariant formulas.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{self, rat, rint, Rational};
use crate::localsolve;
use crate::symbols::{is_local_cube, is_cube_rational, RationalPlace};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SurfaceError {
    #[error("coefficient {0} is zero")]
    ZeroCoefficient(&'static str),
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

/// The integral model a1·u1³ + a2·u2³ + a3·u3³ = a0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Surface {
    pub a0: i128,
    pub a1: i128,
    pub a2: i128,
    pub a3: i128,
}

impl Surface {
    pub fn new(a0: i128, a1: i128, a2: i128, a3: i128) -> Result<Self, SurfaceError> {
        for (name, v) in [("a0", a0), ("a1", a1), ("a2", a2), ("a3", a3)] {
            if v == 0 {
                return Err(SurfaceError::ZeroCoefficient(name));
            }
        }
        Ok(Self { a0, a1, a2, a3 })
    }

    /// Parses the text form "a1,a2,a3,a0".
    pub fn parse(spec: &str) -> Result<Self, SurfaceError> {
        let mut vals = Vec::with_capacity(4);
        let mut pos = 0;
        for field in spec.split(',') {
            let t = field.trim();
            let v: i128 = t.parse().map_err(|_| SurfaceError::Parse {
                pos: pos + field.find(|c: char| !c.is_whitespace()).unwrap_or(0),
                msg: format!("expected an integer, found {t:?}"),
            })?;
            vals.push(v);
            pos += field.len() + 1;
        }
        if vals.len() != 4 {
            return Err(SurfaceError::Parse {
                pos: spec.len(),
                msg: format!("expected 4 comma-separated coefficients a1,a2,a3,a0, found {}", vals.len()),
            });
        }
        Self::new(vals[3], vals[0], vals[1], vals[2])
    }

    /// Text form "a1,a2,a3,a0".
    pub fn spec(&self) -> String {
        format!("{},{},{},{}", self.a1, self.a2, self.a3, self.a0)
    }

    pub fn forms(&self) -> [i128; 3] {
        [self.a1, self.a2, self.a3]
    }

    /// Coefficients in the order (a0, a1, a2, a3).
    pub fn coeffs(&self) -> [i128; 4] {
        [self.a0, self.a1, self.a2, self.a3]
    }

    /// a1u1³ + a2u2³ + a3u3³ − a0.
    pub fn eval(&self, u: &[i128; 3]) -> i128 {
        self.a1 * u[0].pow(3) + self.a2 * u[1].pow(3) + self.a3 * u[2].pow(3) - self.a0
    }

    /// Primes dividing 3·a0a1a2a3.
    pub fn bad_primes(&self) -> Vec<u64> {
        let mut ps: Vec<u64> = self.coeffs().iter().flat_map(|&a| arith::prime_divisors(a)).collect();
        ps.push(3);
        ps.sort_unstable();
        ps.dedup();
        ps
    }
}

impl fmt::Display for Surface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}u1^3 + {}u2^3 + {}u3^3 = {}", self.a1, self.a2, self.a3, self.a0)
    }
}

/// Result of [`normalize`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Normalized {
    pub original: Surface,
    /// The normal form: a1, a2, a3 positive and cube-free.
    pub surface: Surface,
    /// Integral points transport as u'_i = scale_i · u_i.
    pub scale: [i128; 3],
    /// Common factor of all four coefficients divided out.
    pub common: i128,
    /// A prime dividing a1, a2, a3 but not a0; the model has no Z_p point.
    pub insoluble_at: Option<u64>,
}

impl Normalized {
    pub fn transport(&self, u: &[i128; 3]) -> [i128; 3] {
        [self.scale[0] * u[0], self.scale[1] * u[1], self.scale[2] * u[2]]
    }
}

/// Divides out the common content, reduces a1..a3 to positive cube-free
/// representatives and records the coordinate scaling.
///
/// a0 keeps its cube part: removing it would change the integral model.
pub fn normalize(s: &Surface) -> Normalized {
    let common = arith::gcd_all(&s.coeffs());
    let t = Surface { a0: s.a0 / common, a1: s.a1 / common, a2: s.a2 / common, a3: s.a3 / common };
    let g = arith::gcd_all(&t.forms());
    let insoluble_at = arith::prime_divisors(g).into_iter().next();
    let mut scale = [1i128; 3];
    let mut forms = t.forms();
    for (i, a) in forms.iter_mut().enumerate() {
        let (r, k) = arith::cube_split(*a);
        // a = r k³ = |r| (sgn(r) k)³
        scale[i] = r.signum() * k;
        *a = r.abs();
    }
    Normalized {
        original: *s,
        surface: Surface { a0: t.a0, a1: forms[0], a2: forms[1], a3: forms[2] },
        scale,
        common,
        insoluble_at,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum AlgebraicPart {
    Trivial,
    Z3,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BrauerShape {
    pub algebraic: AlgebraicPart,
    pub transcendental2: bool,
}

/// The three cross ratios a0a1/(a2a3), a0a2/(a1a3), a0a3/(a1a2).
pub fn cross_ratios(s: &Surface) -> [Rational; 3] {
    [
        rat(s.a0 * s.a1, s.a2 * s.a3),
        rat(s.a0 * s.a2, s.a1 * s.a3),
        rat(s.a0 * s.a3, s.a1 * s.a2),
    ]
}

/// Brauer group modulo constants: algebraic part from the cross ratios,
/// extra 2-torsion when a1a2a3 ≡ 2 modulo cubes.
pub fn brauer_classify(s: &Surface) -> BrauerShape {
    let algebraic = if cross_ratios(s).iter().any(is_cube_rational) {
        AlgebraicPart::Trivial
    } else {
        AlgebraicPart::Z3
    };
    let prod = rint(s.a1) * rint(s.a2) * rint(s.a3);
    BrauerShape { algebraic, transcendental2: is_cube_rational(&(prod / rint(2))) }
}

/// λ, μ, ν of a projective model c0x0³ + c1x1³ + c2x2³ + c3x3³ = 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableParams {
    pub lambda: Rational,
    pub mu: Rational,
    pub nu: Rational,
}

impl TableParams {
    /// λ = a1/a0, μ = a2/a0, ν = −a3a0/(a1a2).
    pub fn of_surface(s: &Surface) -> Self {
        Self {
            lambda: rat(s.a1, s.a0),
            mu: rat(s.a2, s.a0),
            nu: rat(-s.a3 * s.a0, s.a1 * s.a2),
        }
    }

    /// λ = c1/c0, μ = c2/c0, ν = c3c0/(c1c2), so that λμν = c3/c0.
    pub fn of_model(c: &[i128; 4]) -> Self {
        Self {
            lambda: rat(c[1], c[0]),
            mu: rat(c[2], c[0]),
            nu: rat(c[3] * c[0], c[1] * c[2]),
        }
    }
}

/// Decomposition group of the splitting field at a place, named by a
/// generator (G is the whole group).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DecompGroup {
    E,
    T,
    R,
    S,
    Q,
    G,
}

/// First matching row: λ, ν cubes → E; ν → T; λ/ν → R; λ → S; λν → Q.
pub fn decomposition_group(t: &TableParams, p: u64) -> DecompGroup {
    let v = RationalPlace::Prime(p);
    let cube = |x: Rational| is_local_cube(&x, v);
    let (l, n) = (t.lambda, t.nu);
    if cube(l) && cube(n) {
        DecompGroup::E
    } else if cube(n) {
        DecompGroup::T
    } else if cube(l / n) {
        DecompGroup::R
    } else if cube(l) {
        DecompGroup::S
    } else if cube(l * n) {
        DecompGroup::Q
    } else {
        DecompGroup::G
    }
}

/// True if X is rational over Q_v: it has a Q_v-point and some cross ratio
/// is a local cube. Every invariant map is then constant at v.
pub fn is_locally_rational(s: &Surface, v: RationalPlace) -> bool {
    match v {
        RationalPlace::Infinity => true,
        RationalPlace::Prime(p) => {
            cross_ratios(s).iter().any(|c| is_local_cube(c, v)) && localsolve::has_projective_point(s, p)
        }
    }
}

/// A labeled projective model c0x0³ + … + c3x3³ = 0 of a surface, with
/// x_j = k_j · y_{perm[j]} where y = (1, u1, u2, u3).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableModel {
    pub perm: [usize; 4],
    pub c: [i128; 4],
    pub k: [i128; 4],
}

/// The primes (ℓ, p, q) of a recognized member of the three-prime family
/// x0³ + ℓx1³ + pq·x2³ + qℓ²·x3³ = 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyPrimes {
    pub l: u64,
    pub p: u64,
    pub q: u64,
}

impl TableModel {
    /// Model under a labeling: each coefficient is replaced by its positive
    /// cube-free part and the cube moves into k.
    pub fn with_perm(s: &Surface, perm: [usize; 4]) -> Self {
        let d = [-s.a0, s.a1, s.a2, s.a3];
        let mut c = [0i128; 4];
        let mut k = [0i128; 4];
        for j in 0..4 {
            let (r, kk) = arith::cube_split(d[perm[j]]);
            c[j] = r.abs();
            k[j] = r.signum() * kk;
        }
        Self { perm, c, k }
    }

    pub fn params(&self) -> TableParams {
        TableParams::of_model(&self.c)
    }

    /// Projective coordinates of the affine point u.
    pub fn point(&self, u: &[i128; 3]) -> [i128; 4] {
        let y = [1, u[0], u[1], u[2]];
        std::array::from_fn(|j| self.k[j] * y[self.perm[j]])
    }

    /// Recognizes the three-prime family shape (1, ℓ, pq, qℓ²).
    pub fn family(&self) -> Option<FamilyPrimes> {
        let [c0, c1, c2, c3] = self.c;
        if c0 != 1 || c1 < 2 || !arith::is_prime(c1 as u64) {
            return None;
        }
        let l = c1;
        if c3 % (l * l) != 0 {
            return None;
        }
        let q = c3 / (l * l);
        if q < 2 || !arith::is_prime(q as u64) || c2 % q != 0 {
            return None;
        }
        let p = c2 / q;
        if p < 2 || !arith::is_prime(p as u64) || p == q || p == l || q == l {
            return None;
        }
        let mut m = [p.rem_euclid(9), l.rem_euclid(9)];
        m.sort_unstable();
        (q.rem_euclid(9) == 8 && m == [2, 5]).then_some(FamilyPrimes { l: l as u64, p: p as u64, q: q as u64 })
    }

    /// All 24 labelings, family-shaped ones first, otherwise in
    /// lexicographic order of the permutation.
    pub fn labelings(s: &Surface) -> Vec<Self> {
        let mut all: Vec<Self> = permutations4().into_iter().map(|p| Self::with_perm(s, p)).collect();
        all.sort_by_key(|m| m.family().is_none());
        all
    }
}

fn permutations4() -> Vec<[usize; 4]> {
    let mut out = Vec::with_capacity(24);
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let p = [a, b, c, d];
                    let mut seen = [false; 4];
                    if p.iter().all(|&i| !std::mem::replace(&mut seen[i], true)) {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}

/// Index pair (i, j) with a_i = a_j among the form coefficients, if any.
pub fn equal_pair(s: &Surface) -> Option<(usize, usize)> {
    let f = s.forms();
    [(0, 1), (0, 2), (1, 2)].into_iter().find(|&(i, j)| f[i] == f[j])
}

/// gcd(a1, a2, a3) = 1.
pub fn is_primitive(s: &Surface) -> bool {
    s.a1.gcd(&s.a2).gcd(&s.a3) == 1
}

/// Positive representative of a surface under sign changes of the
/// coordinates (u_i ↦ −u_i) and of the whole equation.
pub fn sign_canonical(s: &Surface) -> Surface {
    let sgn = s.a1.signum() * s.a2.signum() * s.a3.signum();
    Surface { a0: s.a0 * sgn, a1: s.a1.abs(), a2: s.a2.abs(), a3: s.a3.abs() }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_round_trip() {
        let s = Surface::parse("125, 85,68,2").unwrap();
        assert_eq!(s.coeffs(), [2, 125, 85, 68]);
        assert_eq!(s.spec(), "125,85,68,2");
        assert!(matches!(Surface::parse("1,x,1,1"), Err(SurfaceError::Parse { pos: 2, .. })));
        assert!(matches!(Surface::parse("1,1,1"), Err(SurfaceError::Parse { .. })));
        assert!(matches!(Surface::parse("1,0,1,1"), Err(SurfaceError::ZeroCoefficient("a2"))));
    }

    #[test]
    fn normalize_examples() {
        let n = normalize(&Surface::new(3, 1, 1, 1).unwrap());
        assert_eq!(n.surface, Surface::new(3, 1, 1, 1).unwrap());
        let n = normalize(&Surface::new(2, 40, 1, 1).unwrap());
        assert_eq!(n.surface.a1, 5);
        assert_eq!(n.scale[0], 2);
        let n = normalize(&Surface::new(24, 8, 1, 1).unwrap());
        assert_eq!((n.surface.a1, n.surface.a0), (1, 24));
        let n = normalize(&Surface::new(3, 2, 4, 6).unwrap());
        assert_eq!(n.insoluble_at, Some(2));
        let n = normalize(&Surface::new(17, 17, 17, -22).unwrap());
        assert_eq!((n.surface.a3, n.scale[2]), (22, -1));
    }

    #[test]
    fn brauer_examples() {
        let s = Surface::new(1, 1, 1, 1).unwrap();
        assert_eq!(brauer_classify(&s).algebraic, AlgebraicPart::Trivial);
        let u = Surface::new(-2, 1, 85, 68).unwrap();
        assert_eq!(brauer_classify(&u).algebraic, AlgebraicPart::Z3);
        let t = Surface::new(5, 1, 1, 2).unwrap();
        assert!(brauer_classify(&t).transcendental2);
    }

    #[test]
    fn family_decomposition_groups() {
        let s = Surface::new(-2, 1, 85, 68).unwrap();
        let m = &TableModel::labelings(&s)[0];
        assert_eq!(m.c, [1, 2, 85, 68]);
        assert_eq!(m.family(), Some(FamilyPrimes { l: 2, p: 5, q: 17 }));
        let t = m.params();
        assert_eq!(decomposition_group(&t, 3), DecompGroup::Q);
        assert_eq!(decomposition_group(&t, 2), DecompGroup::R);
        assert_eq!(decomposition_group(&t, 5), DecompGroup::S);
        // λ = 2 and ν = 2/5 are both cubes in Q_17, so the group is trivial
        assert_eq!(decomposition_group(&t, 17), DecompGroup::E);
        assert_eq!(decomposition_group(&t, 53), DecompGroup::E);
    }

    #[test]
    fn u_prime_labeling() {
        let s = Surface::parse("125,85,68,2").unwrap();
        let m = &TableModel::labelings(&s)[0];
        assert_eq!(m.c, [1, 2, 85, 68]);
        assert_eq!(m.point(&[1, 2, 3]), [5, -1, 2, 3]);
    }
}
