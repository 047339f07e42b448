//! Small-integer number theory: primes, factorization, valuations and
//! modular arithmetic on `i128`.

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

/// Exact rational number used for coefficients and parameters.
pub type Rational = Ratio<i128>;

/// Returns true if `n` is prime (trial division; `n` is small in practice).
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = 17u64;
    while d * d <= n {
        if n.is_multiple_of(d) || n.is_multiple_of(d + 2) {
            return false;
        }
        d += 6;
    }
    true
}

/// Primes up to and including `bound` (sieve of Eratosthenes).
pub fn primes_up_to(bound: u64) -> Vec<u64> {
    if bound < 2 {
        return Vec::new();
    }
    let n = bound as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

/// Smallest-prime-factor table for `0..=bound`; entry 0 and 1 are 0.
pub fn spf_table(bound: usize) -> Vec<u32> {
    let mut spf = vec![0u32; bound + 1];
    for i in 2..=bound {
        if spf[i] == 0 {
            let mut j = i;
            while j <= bound {
                if spf[j] == 0 {
                    spf[j] = i as u32;
                }
                j += i;
            }
        }
    }
    spf
}

/// Factorization of `n` using a smallest-prime-factor table.
pub fn factor_with_spf(mut n: usize, spf: &[u32]) -> Vec<(u64, u32)> {
    let mut out: Vec<(u64, u32)> = Vec::new();
    while n > 1 {
        let p = spf[n] as usize;
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        out.push((p as u64, e));
    }
    out
}

/// Prime factorization of `|n|` by trial division, primes ascending.
pub fn factorize(n: i128) -> Vec<(u64, u32)> {
    let mut m = n.unsigned_abs();
    let mut out = Vec::new();
    if m < 2 {
        return out;
    }
    let mut push = |p: u128, m: &mut u128| {
        let mut e = 0;
        while (*m).is_multiple_of(p) {
            *m /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p as u64, e));
        }
    };
    push(2, &mut m);
    push(3, &mut m);
    let mut d: u128 = 5;
    while d * d <= m {
        push(d, &mut m);
        push(d + 2, &mut m);
        d += 6;
    }
    if m > 1 {
        out.push((m as u64, 1));
    }
    out
}

/// The distinct primes dividing `|n|`.
pub fn prime_divisors(n: i128) -> Vec<u64> {
    factorize(n).into_iter().map(|(p, _)| p).collect()
}

/// p-adic valuation of a nonzero integer.
pub fn vp_int(n: i128, p: u64) -> u32 {
    debug_assert!(n != 0);
    let p = p as i128;
    let mut n = n;
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    v
}

/// p-adic valuation of a nonzero rational.
pub fn vp_rat(x: &Rational, p: u64) -> i32 {
    vp_int(*x.numer(), p) as i32 - vp_int(*x.denom(), p) as i32
}

/// `n` with all factors of `p` removed.
pub fn strip_p(mut n: i128, p: u64) -> i128 {
    let p = p as i128;
    while n != 0 && n % p == 0 {
        n /= p;
    }
    n
}

/// Integer power `p^k` as i128 (panics on overflow in debug builds).
pub fn ipow(p: u64, k: u32) -> i128 {
    (p as i128).pow(k)
}

/// Non-negative residue of `a` modulo `m`.
pub fn rem(a: i128, m: i128) -> i128 {
    a.rem_euclid(m)
}

/// `a * b mod m` for operands already reduced below `m < 2^63`.
pub fn mulmod(a: i128, b: i128, m: i128) -> i128 {
    match a.checked_mul(b) {
        Some(x) => rem(x, m),
        None => {
            // double-and-add; operands reduced so sums stay below 2m
            let (mut a, mut b) = (rem(a, m), rem(b, m));
            let mut r = 0i128;
            while b > 0 {
                if b & 1 == 1 {
                    r = rem(r + a, m);
                }
                a = rem(a + a, m);
                b >>= 1;
            }
            r
        }
    }
}

/// `base^e mod m`.
pub fn powmod(base: i128, mut e: u128, m: i128) -> i128 {
    let mut r = 1 % m;
    let mut b = rem(base, m);
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, b, m);
        }
        b = mulmod(b, b, m);
        e >>= 1;
    }
    r
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn invmod(a: i128, m: i128) -> Option<i128> {
    let g = a.rem_euclid(m).extended_gcd(&m);
    if g.gcd != 1 {
        return None;
    }
    Some(rem(g.x, m))
}

/// Image of a rational with p-integral value in `Z/p^k`; `None` if the
/// denominator is divisible by `p`.
pub fn rat_mod(x: &Rational, p: u64, k: u32) -> Option<i128> {
    let m = ipow(p, k);
    let d = invmod(rem(*x.denom(), m), m)?;
    Some(mulmod(rem(*x.numer(), m), d, m))
}

/// Cube-free part of a nonzero integer, sign kept.
pub fn cube_free_int(n: i128) -> i128 {
    assert!(n != 0, "cube_free_int of zero");
    let mut r: i128 = n.signum();
    for (p, e) in factorize(n) {
        r *= ipow(p, e % 3);
    }
    r
}

/// Writes nonzero `n` as `r * k^3` with `r` cube-free (sign on `r`, `k > 0`).
pub fn cube_split(n: i128) -> (i128, i128) {
    assert!(n != 0, "cube_split of zero");
    let mut r: i128 = n.signum();
    let mut k: i128 = 1;
    for (p, e) in factorize(n) {
        r *= ipow(p, e % 3);
        k *= ipow(p, e / 3);
    }
    (r, k)
}

/// Cube-free integer representative of the class of a nonzero rational in
/// `Q*/Q*^3`, with sign.
pub fn cube_class_int(x: &Rational) -> i128 {
    assert!(!x.is_zero(), "cube class of zero");
    // x = n/d ~ n d^2 modulo cubes
    let n = cube_free_int(*x.numer());
    let d = cube_free_int(*x.denom());
    cube_free_int(n * d * d)
}

/// Exact integer cube root if `n` is a perfect cube.
pub fn icbrt_exact(n: i128) -> Option<i128> {
    let r = icbrt_floor(n.abs()) * n.signum();
    (r * r * r == n).then_some(r)
}

/// floor(cbrt(n)) for n >= 0.
pub fn icbrt_floor(n: i128) -> i128 {
    debug_assert!(n >= 0);
    let mut r = (n as f64).cbrt().round() as i128;
    while r > 0 && r * r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// gcd of a slice of integers (non-negative result).
pub fn gcd_all(xs: &[i128]) -> i128 {
    xs.iter().fold(0i128, |g, &x| g.gcd(&x))
}

/// Builds the rational `n/d`.
pub fn rat(n: i128, d: i128) -> Rational {
    Rational::new(n, d)
}

/// Rational from an integer.
pub fn rint(n: i128) -> Rational {
    Rational::from_integer(n)
}

/// True if the rational is ±1.
pub fn is_unit_rat(x: &Rational) -> bool {
    x.abs().is_one()
}

/// Möbius function values on `0..=bound` (entry 0 unused).
pub fn mobius_table(bound: usize) -> Vec<i8> {
    let spf = spf_table(bound);
    let mut mu = vec![0i8; bound + 1];
    if bound >= 1 {
        mu[1] = 1;
    }
    for n in 2..=bound {
        let p = spf[n] as usize;
        let m = n / p;
        mu[n] = if m.is_multiple_of(p) { 0 } else { -mu[m] };
    }
    mu
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorization_round_trip() {
        for n in 1..2000i128 {
            let prod: i128 = factorize(n).iter().map(|&(p, e)| ipow(p, e)).product();
            assert_eq!(prod, n);
        }
    }

    #[test]
    fn cube_free_parts() {
        assert_eq!(cube_free_int(40), 5);
        assert_eq!(cube_free_int(-54), -2);
        assert_eq!(cube_split(250), (2, 5));
        assert_eq!(cube_class_int(&rat(1, 2)), 4);
        assert_eq!(cube_class_int(&rat(4, 5)), 100);
    }

    #[test]
    fn sieve_matches_trial_division() {
        let ps = primes_up_to(500);
        let direct: Vec<u64> = (0..=500).filter(|&n| is_prime(n)).collect();
        assert_eq!(ps, direct);
    }

    #[test]
    fn mobius_small() {
        let mu = mobius_table(12);
        assert_eq!(&mu[1..], &[1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0]);
    }

    #[test]
    fn cube_roots() {
        assert_eq!(icbrt_exact(-125), Some(-5));
        assert_eq!(icbrt_exact(126), None);
        assert_eq!(icbrt_floor(1_000_000_000_000), 10_000);
    }
}
