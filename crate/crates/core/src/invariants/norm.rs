//! Elements of prescribed norm in a pure cubic field Q(β), β³ = m.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{self, rint, Rational};
use crate::eisenstein::LocalNum;

/// Default coefficient bound of the ε search.
pub const DEFAULT_EPS_BOUND: i128 = 200;

/// An element ε of Q(β) with Norm(ε) = −μ.
///
/// The field is presented as Q(θ) with θ³ = h·k² (h, k squarefree and
/// coprime) and β = beta_scale · θ. With θ′ = θ²/k the order
/// Z[θ, θ′] + (1/3)-combinations contains the ring of integers, and ε (or
/// 1/ε when `inverted`) is ξ = (x + yθ + zθ′)/3 for `coords` = (x, y, z).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EpsilonData {
    pub m: Rational,
    pub mu: Rational,
    pub h: i128,
    pub k: i128,
    pub beta_scale: Rational,
    pub coords: [i128; 3],
    pub inverted: bool,
}

/// θ³ = h k², β = s θ for m ≠ 0 not a cube.
fn present(m: &Rational) -> (i128, i128, Rational) {
    let (a, b) = (*m.numer(), *m.denom());
    let (r, c) = arith::cube_split(a * b * b);
    let c = r.signum() * c;
    let mut h = 1;
    let mut k = 1;
    for (p, e) in arith::factorize(r.abs()) {
        match e {
            1 => h *= p as i128,
            2 => k *= p as i128,
            _ => unreachable!("cube-free"),
        }
    }
    (h, k, Rational::new(c, b))
}

/// Norm of x + yθ + zθ′.
pub fn norm_xyz(h: i128, k: i128, [x, y, z]: [i128; 3]) -> i128 {
    x * x * x + h * k * k * y * y * y + h * h * k * z * z * z - 3 * h * k * x * y * z
}

/// (x + yθ + zθ′)/3 is an algebraic integer.
fn is_integral(h: i128, k: i128, [x, y, z]: [i128; 3]) -> bool {
    (x * x - h * k * y * z).rem_euclid(3) == 0 && norm_xyz(h, k, [x, y, z]).rem_euclid(27) == 0
}

impl EpsilonData {
    pub fn theta_cubed(&self) -> i128 {
        self.h * self.k * self.k
    }

    /// Norm of the stored element ξ, so that Norm(ε) = ±1 power of it.
    pub fn xi_norm(&self) -> Rational {
        Rational::new(norm_xyz(self.h, self.k, self.coords), 27)
    }

    /// Norm(ε), recomputed from the coordinates.
    pub fn norm(&self) -> Rational {
        let n = self.xi_norm();
        if self.inverted {
            n.recip()
        } else {
            n
        }
    }

    /// ε in the power basis 1, β, β² (for display and exact checks).
    pub fn xi_power_basis(&self) -> [Rational; 3] {
        // θ = β/s, θ′ = θ²/k = β²/(s²k)
        let [x, y, z] = self.coords.map(rint);
        let s = self.beta_scale;
        let three = rint(3);
        [x / three, y / (three * s), z / (three * s * s * rint(self.k))]
    }

    /// ξ and rξ as elements of k ⊗ Q_p, where r maps β to ω²β, given the
    /// image of β in Q_p.
    pub fn xi_local(&self, beta: &LocalNum) -> (LocalNum, LocalNum) {
        let p = beta.p;
        let inv_s = LocalNum::from_rational(&self.beta_scale.recip(), p, beta.prec);
        let theta = beta.mul(&inv_s);
        let inv_k = LocalNum::from_rational(&Rational::new(1, self.k), p, beta.prec);
        let theta2 = theta.mul(&theta).mul(&inv_k);
        let third = LocalNum::from_rational(&Rational::new(1, 3), p, beta.prec);
        let [x, y, z] = self.coords;
        let mut xi = LocalNum::from_zp(x, p, beta.prec);
        if y != 0 {
            xi = xi.add(&theta.scale_int(y));
        }
        if z != 0 {
            xi = xi.add(&theta2.scale_int(z));
        }
        // rξ = (x − yθ) + (zθ′ − yθ)ω, all over 3
        let zero = LocalNum::from_zp(0, p, beta.prec);
        let mut ra = LocalNum::from_zp(x, p, beta.prec);
        let mut rb = zero;
        if y != 0 {
            ra = ra.sub(&theta.scale_int(y));
            rb = rb.sub(&theta.scale_int(y));
        }
        if z != 0 {
            rb = rb.add(&theta2.scale_int(z));
        }
        let rxi = ra.add(&rb.times_omega());
        (xi.mul(&third), rxi.mul(&third))
    }
}

/// Searches ε ∈ Q(β), β³ = m, with Norm(ε) = −μ: integral ε when μ is an
/// integer, or ε = 1/ε″ with ε″ integral when 1/μ is. Coordinates run over
/// |x|, |y|, |z| ≤ bound in shells of increasing max-norm, so the first hit
/// is a smallest one. `None` after exhaustion proves nothing.
pub fn solve_norm_equation(mu: &Rational, m: &Rational, bound: i128) -> Option<EpsilonData> {
    assert!(!mu.is_zero() && !m.is_zero());
    if arith::icbrt_exact(*m.numer()).is_some() && arith::icbrt_exact(*m.denom()).is_some() {
        return None;
    }
    let (h, k, beta_scale) = present(m);
    let make = |coords, inverted| EpsilonData { m: *m, mu: *mu, h, k, beta_scale, coords, inverted };
    if (-*mu).is_one() {
        return Some(make([3, 0, 0], false));
    }
    let (target, inverted) = if mu.is_integer() {
        (-*mu.numer(), false)
    } else if mu.numer().abs() == 1 {
        (-*mu.denom() * mu.numer().signum(), true)
    } else {
        return None;
    };
    let goal = 27 * target;
    for s in 0..=bound {
        for x in -s..=s {
            for y in -s..=s {
                let edge = x.abs() == s || y.abs() == s;
                let zs: Vec<i128> = if edge { (-s..=s).collect() } else { vec![-s, s] };
                for z in zs {
                    let c = [x, y, z];
                    if norm_xyz(h, k, c) == goal && is_integral(h, k, c) {
                        return Some(make(c, inverted));
                    }
                }
            }
        }
    }
    None
}
