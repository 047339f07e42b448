//! Finite-precision p-adic helpers: residue-field arithmetic, cube roots and
//! Hensel lifting in Z/p^n.

use crate::arith::{self, invmod, ipow, mulmod, powmod, rem};

/// A primitive cube root of unity mod p (p ≡ 1 mod 3).
pub fn primitive_cube_root_of_unity(p: u64) -> u64 {
    assert!(p % 3 == 1, "no cube root of unity mod {p}");
    let m = p as i128;
    for g in 2..m {
        let r = powmod(g, ((p - 1) / 3) as u128, m);
        if r != 1 {
            return r as u64;
        }
    }
    unreachable!("F_p* has an element of order divisible by 3")
}

/// Lift of the root `r` of x² + x + 1 mod p to Z/p^n (p ≠ 3).
pub fn lift_root_of_unity(p: u64, r: u64, n: u32) -> i128 {
    let m = ipow(p, n);
    let mut x = r as i128;
    let mut k = 1;
    while k < n {
        k = (2 * k).min(n);
        let mk = ipow(p, k);
        let f = rem(x * x + x + 1, mk);
        let d = invmod(rem(2 * x + 1, mk), mk).expect("p ≠ 3");
        x = rem(x - mulmod(f, d, mk), mk);
    }
    rem(x, m)
}

/// Cube root mod p of `u` (p prime, u ≢ 0), if one exists.
pub fn cube_root_mod_p(u: u64, p: u64) -> Option<u64> {
    let m = p as i128;
    let u = rem(u as i128, m);
    if u == 0 {
        return Some(0);
    }
    if p == 2 || p == 3 {
        return (0..m).find(|&x| rem(x * x * x, m) == u).map(|x| x as u64);
    }
    if p % 3 == 2 {
        // cubing is a bijection; inverse exponent (2p − 1)/3
        return Some(powmod(u, ((2 * p - 1) / 3) as u128, m) as u64);
    }
    if powmod(u, ((p - 1) / 3) as u128, m) != 1 {
        return None;
    }
    // p − 1 = 3^s t with 3 ∤ t; Tonelli–Shanks for cube roots.
    let mut t = p - 1;
    let mut s = 0u32;
    while t.is_multiple_of(3) {
        t /= 3;
        s += 1;
    }
    // a with 3a ≡ 1 mod t (t = 1 gives a = 0 and x0 = 1)
    let a = if t == 1 { 0 } else { invmod(3, t as i128).unwrap() };
    let x0 = powmod(u, a as u128, m);
    // x0³ = u · w with w in the 3-Sylow subgroup
    let w = mulmod(mulmod(mulmod(x0, x0, m), x0, m), invmod(u, m).unwrap(), m);
    let mut z = 2i128;
    while powmod(z, ((p - 1) / 3) as u128, m) == 1 {
        z += 1;
    }
    let c = powmod(z, t as u128, m); // generator of the 3-Sylow subgroup
    // find j with c^j = w⁻¹ (discrete log in a group of order 3^s)
    let target = invmod(w, m).unwrap();
    let j = dlog_3group(c, target, s, m)?;
    if j % 3 != 0 {
        return None;
    }
    let y = powmod(c, j / 3, m);
    let x = mulmod(x0, y, m);
    debug_assert_eq!(mulmod(mulmod(x, x, m), x, m), u);
    Some(x as u64)
}

/// Discrete logarithm of `h` to base `g` where `g` has order 3^s mod m.
fn dlog_3group(g: i128, h: i128, s: u32, m: i128) -> Option<u128> {
    let order: u128 = 3u128.pow(s);
    let gamma = powmod(g, order / 3, m); // element of order 3
    let mut x: u128 = 0;
    let ginv = invmod(g, m)?;
    for k in 0..s {
        // h_k = (g^{-x} h)^{3^{s-1-k}}
        let hk = powmod(mulmod(powmod(ginv, x, m), h, m), 3u128.pow(s - 1 - k), m);
        let d = if hk == 1 {
            0
        } else if hk == gamma {
            1
        } else if hk == mulmod(gamma, gamma, m) {
            2
        } else {
            return None;
        };
        x += d * 3u128.pow(k);
    }
    Some(x)
}

/// Cube root in Z/p^n of a p-adic unit `u` given modulo p^(n+1) (or more).
///
/// Returns `None` when `u` is not a cube in Z_p.
pub fn cube_root_unit(u: i128, p: u64, n: u32) -> Option<i128> {
    let work = n + 2;
    let mw = ipow(p, work);
    let u = rem(u, mw);
    let (mut x, mut k) = if p == 3 {
        if !matches!(rem(u, 9), 1 | 8) {
            return None;
        }
        let x = (0..27).find(|&x| x % 3 != 0 && rem(x * x * x - u, 27) == 0)?;
        (x, 3u32)
    } else {
        (cube_root_mod_p(rem(u, p as i128) as u64, p)? as i128, 1u32)
    };
    // Newton: x ← x − (x³ − u)/(3x²)
    while k < work {
        let x2 = mulmod(x, x, mw);
        let f = rem(mulmod(x2, x, mw) - u, mw);
        if f == 0 {
            break;
        }
        let (fnum, dfac) = if p == 3 { (f / 3, x2) } else { (f, mulmod(3, x2, mw)) };
        let dinv = invmod(rem(dfac, mw), mw)?;
        x = rem(x - mulmod(rem(fnum, mw), dinv, mw), mw);
        k = if p == 3 { 2 * k - 2 } else { 2 * k };
    }
    let m = ipow(p, n);
    let x = rem(x, m);
    debug_assert_eq!(rem(mulmod(mulmod(x, x, m), x, m) - u, m), 0);
    Some(x)
}

/// Arithmetic in F_{p²} = F_p(ω), elements written a + bω.
#[derive(Clone, Copy, Debug)]
pub struct Fp2 {
    pub p: u64,
}

impl Fp2 {
    pub fn new(p: u64) -> Self {
        Self { p }
    }

    fn m(&self) -> i128 {
        self.p as i128
    }

    pub fn reduce(&self, x: (i128, i128)) -> (u64, u64) {
        (rem(x.0, self.m()) as u64, rem(x.1, self.m()) as u64)
    }

    pub fn mul(&self, x: (u64, u64), y: (u64, u64)) -> (u64, u64) {
        let (a, b, c, d) = (x.0 as i128, x.1 as i128, y.0 as i128, y.1 as i128);
        self.reduce((a * c - b * d, a * d + b * c - b * d))
    }

    pub fn pow(&self, x: (u64, u64), mut e: u128) -> (u64, u64) {
        let mut r = (1 % self.p, 0);
        let mut b = x;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        r
    }

    pub fn inv(&self, x: (u64, u64)) -> (u64, u64) {
        let q = (self.p as u128) * (self.p as u128);
        self.pow(x, q - 2)
    }
}

/// Decomposition of a nonzero residue `x mod p^n` as `p^v · u`, with `u`
/// reduced mod p^(n−v); `None` if `x ≡ 0`.
pub fn split_val(x: i128, p: u64, n: u32) -> Option<(u32, i128)> {
    let m = ipow(p, n);
    let x = rem(x, m);
    if x == 0 {
        return None;
    }
    let v = arith::vp_int(x, p);
    Some((v, x / ipow(p, v)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cube_roots_mod_p_brute() {
        for p in [2u64, 3, 5, 7, 13, 19, 31, 37, 109, 163] {
            for u in 1..p {
                let brute = (0..p).any(|x| (x * x * x) % p == u);
                match cube_root_mod_p(u, p) {
                    Some(x) => assert_eq!((x * x * x) % p, u, "p={p} u={u}"),
                    None => assert!(!brute, "p={p} u={u}"),
                }
            }
        }
    }

    #[test]
    fn cube_roots_zp() {
        for p in [2u64, 3, 5, 7, 13] {
            for n in 1..6 {
                let m = ipow(p, n);
                for u in 1..200i128 {
                    if u % p as i128 == 0 {
                        continue;
                    }
                    if let Some(x) = cube_root_unit(u, p, n) {
                        assert_eq!(rem(x * x * x - u, m), 0);
                    } else if ipow(p, n + 2) <= 20_000 {
                        let mm = ipow(p, n + 2);
                        let brute = (0..mm).any(|x| rem(x * x * x - u, mm) == 0);
                        assert!(!brute, "p={p} n={n} u={u}");
                    }
                }
            }
        }
    }

    #[test]
    fn roots_of_unity_lift() {
        for p in [7u64, 13, 19, 31] {
            let r = primitive_cube_root_of_unity(p);
            let x = lift_root_of_unity(p, r, 6);
            let m = ipow(p, 6);
            assert_eq!(rem(x * x + x + 1, m), 0);
            assert_eq!(rem(x, p as i128), r as i128);
        }
    }
}
