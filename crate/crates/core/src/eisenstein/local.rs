use crate::arith::{self, ipow, rem, Rational};

use super::{EisensteinInt, KElem};

/// Element `p^shift · (a + bω)` of k ⊗ Q_p, with `a, b` known modulo
/// `p^prec`.
///
/// At split primes the place is chosen later, when the element is embedded
/// into Q_p by a lift of ω.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LocalNum {
    pub p: u64,
    pub shift: i32,
    pub a: i128,
    pub b: i128,
    pub prec: u32,
}

impl LocalNum {
    fn modulus(&self) -> i128 {
        ipow(self.p, self.prec)
    }

    /// A p-adic integer known modulo p^prec.
    pub fn from_zp(x: i128, p: u64, prec: u32) -> Self {
        let m = ipow(p, prec);
        Self { p, shift: 0, a: rem(x, m), b: 0, prec }
    }

    /// Element `a + bω` with `a, b` known modulo p^prec.
    pub fn from_pair(a: i128, b: i128, p: u64, prec: u32) -> Self {
        let m = ipow(p, prec);
        Self { p, shift: 0, a: rem(a, m), b: rem(b, m), prec }
    }

    /// A nonzero rational, carried to `prec` digits after its valuation.
    pub fn from_rational(x: &Rational, p: u64, prec: u32) -> Self {
        Self::from_kelem(&KElem::from_rational(x), p, prec)
    }

    /// Exact element of k, carried to `prec` digits after removing the
    /// p-part of its denominator.
    pub fn from_kelem(x: &KElem, p: u64, prec: u32) -> Self {
        assert!(!x.is_zero(), "local image of zero");
        let vd = arith::vp_int(x.den, p);
        let vn = match (x.num.a, x.num.b) {
            (0, b) => arith::vp_int(b, p),
            (a, 0) => arith::vp_int(a, p),
            (a, b) => arith::vp_int(a, p).min(arith::vp_int(b, p)),
        } as i32;
        let pn = ipow(p, vn as u32);
        let dprime = x.den / ipow(p, vd);
        let m = ipow(p, prec);
        let dinv = arith::invmod(rem(dprime, m), m).expect("denominator prime to p");
        Self {
            p,
            shift: vn - vd as i32,
            a: arith::mulmod(rem(x.num.a / pn, m), dinv, m),
            b: arith::mulmod(rem(x.num.b / pn, m), dinv, m),
            prec,
        }
    }

    pub fn from_eis(z: &EisensteinInt, p: u64, prec: u32) -> Self {
        Self::from_kelem(&KElem::from_eis(*z), p, prec)
    }

    /// True if both coordinates vanish at the working precision.
    pub fn is_indistinguishable_from_zero(&self) -> bool {
        self.a == 0 && self.b == 0
    }

    /// Moves common factors of p from the coordinates into `shift`,
    /// losing the corresponding absolute precision.
    pub fn pull_common_power(&mut self) {
        while self.prec > 0 {
            let p = self.p as i128;
            if self.a % p != 0 || self.b % p != 0 || (self.a == 0 && self.b == 0) {
                break;
            }
            self.a /= p;
            self.b /= p;
            self.prec -= 1;
            self.shift += 1;
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        debug_assert_eq!(self.p, o.p);
        let prec = self.prec.min(o.prec);
        let m = ipow(self.p, prec);
        let (a, b, c, d) = (rem(self.a, m), rem(self.b, m), rem(o.a, m), rem(o.b, m));
        let z = EisensteinInt::new(a, b) * EisensteinInt::new(c, d);
        Self { p: self.p, shift: self.shift + o.shift, a: rem(z.a, m), b: rem(z.b, m), prec }
    }

    pub fn add(&self, o: &Self) -> Self {
        debug_assert_eq!(self.p, o.p);
        let (lo, hi) = if self.shift <= o.shift { (self, o) } else { (o, self) };
        let gap = (hi.shift - lo.shift) as u32;
        let prec = lo.prec.min(hi.prec.saturating_add(gap));
        let m = ipow(self.p, prec);
        let scale = if gap >= prec { 0 } else { ipow(self.p, gap) };
        let a = rem(lo.a + rem(hi.a, m) * scale, m);
        let b = rem(lo.b + rem(hi.b, m) * scale, m);
        Self { p: self.p, shift: lo.shift, a, b, prec }
    }

    pub fn neg(&self) -> Self {
        let m = self.modulus();
        Self { a: rem(-self.a, m), b: rem(-self.b, m), ..*self }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    /// Multiplication by ω: (a + bω)ω = −b + (a − b)ω.
    pub fn times_omega(&self) -> Self {
        let m = self.modulus();
        Self { a: rem(-self.b, m), b: rem(self.a - self.b, m), ..*self }
    }

    /// Multiplication by ω² = −1 − ω.
    pub fn times_omega2(&self) -> Self {
        self.times_omega().times_omega()
    }

    /// Multiplication by an exact nonzero integer.
    pub fn scale_int(&self, k: i128) -> Self {
        assert!(k != 0, "scale by zero");
        let v = arith::vp_int(k, self.p);
        let m = self.modulus();
        let k = rem(k / ipow(self.p, v), m);
        Self {
            shift: self.shift + v as i32,
            a: arith::mulmod(self.a, k, m),
            b: arith::mulmod(self.b, k, m),
            ..*self
        }
    }

    /// Reduces the absolute precision to `prec` (no-op if already lower).
    pub fn truncate(&self, prec: u32) -> Self {
        let prec = prec.min(self.prec);
        let m = ipow(self.p, prec);
        Self { a: rem(self.a, m), b: rem(self.b, m), prec, ..*self }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn from_rational_strips_denominator() {
        let x = LocalNum::from_rational(&arith::rat(2, 5), 5, 6);
        assert_eq!(x.shift, -1);
        assert_eq!(x.a, 2);
        let y = LocalNum::from_rational(&arith::rat(50, 3), 5, 4);
        assert_eq!(y.shift, 2);
        assert_eq!(rem(y.a * 3, 625), 2);
    }

    #[test]
    fn add_aligns_shifts() {
        let x = LocalNum::from_rational(&arith::rint(1), 3, 5);
        let y = LocalNum::from_rational(&arith::rint(9), 3, 5);
        let s = x.add(&y);
        assert_eq!((s.shift, s.a, s.prec), (0, 10, 5));
    }
}
