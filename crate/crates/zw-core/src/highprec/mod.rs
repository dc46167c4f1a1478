//! Arbitrary-precision ball arithmetic: every value carries a certified
//! upper bound on its absolute error, propagated through each operation.
//!
//! A [`Real`] is `m * 2^e ± err` with a `BigInt` mantissa; [`Complex`] is a
//! pair of reals. Arithmetic rounds mantissas to a caller-supplied working
//! precision and accounts for the rounding in the error bound.

mod functions;

pub use functions::{exp, ln, ln2, pi, pow, sin};

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;

/// Nonnegative dyadic magnitude `m * 2^e`, mantissa kept below 2^32.
///
/// Used for error bounds only; all renormalisation rounds up.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Dyadic {
    m: u64,
    e: i64,
}

impl Dyadic {
    pub const ZERO: Dyadic = Dyadic { m: 0, e: 0 };

    pub fn new(m: u64, e: i64) -> Self {
        Dyadic { m, e }.norm()
    }

    pub fn ulp(e: i64) -> Self {
        Dyadic { m: 1, e }
    }

    fn norm(mut self) -> Self {
        if self.m == 0 {
            return Dyadic::ZERO;
        }
        while self.m >= 1 << 32 {
            self.m = (self.m >> 1) + (self.m & 1);
            self.e += 1;
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.m == 0
    }

    pub fn add(self, o: Dyadic) -> Self {
        if self.m == 0 {
            return o;
        }
        if o.m == 0 {
            return self;
        }
        let (hi, lo) = if self.e >= o.e { (self, o) } else { (o, self) };
        let d = hi.e - lo.e;
        // round the low part up into the high part's scale
        let lo_m = if d >= 64 {
            1
        } else {
            (lo.m >> d) + u64::from(lo.m & ((1u64 << d) - 1) != 0)
        };
        Dyadic {
            m: hi.m + lo_m,
            e: hi.e,
        }
        .norm()
    }

    pub fn mul(self, o: Dyadic) -> Self {
        if self.m == 0 || o.m == 0 {
            return Dyadic::ZERO;
        }
        Dyadic {
            m: self.m.checked_mul(o.m).expect("dyadic mantissa overflow"),
            e: self.e + o.e,
        }
        .norm()
    }

    /// Multiply by 2^k.
    pub fn shl(self, k: i64) -> Self {
        if self.m == 0 {
            self
        } else {
            Dyadic {
                m: self.m,
                e: self.e + k,
            }
        }
    }

    pub fn max(self, o: Dyadic) -> Self {
        if self.cmp_mag(&o) == Ordering::Less {
            o
        } else {
            self
        }
    }

    pub fn cmp_mag(&self, o: &Dyadic) -> Ordering {
        if self.m == 0 || o.m == 0 {
            return (self.m != 0).cmp(&(o.m != 0));
        }
        let be1 = self.e + 64 - self.m.leading_zeros() as i64;
        let be2 = o.e + 64 - o.m.leading_zeros() as i64;
        if be1 != be2 {
            return be1.cmp(&be2);
        }
        // same binary magnitude; mantissas are < 2^32 so aligning fits in u128
        let d = (self.e - o.e).unsigned_abs().min(96) as u32;
        if self.e >= o.e {
            ((self.m as u128) << d).cmp(&(o.m as u128))
        } else {
            (self.m as u128).cmp(&((o.m as u128) << d))
        }
    }

    pub fn to_f64(self) -> f64 {
        self.m as f64 * 2f64.powi(self.e.clamp(-1060, 1060) as i32)
    }

    /// log2 of the bound (magnitude order), -inf for zero.
    pub fn log2(self) -> f64 {
        if self.m == 0 {
            f64::NEG_INFINITY
        } else {
            (self.m as f64).log2() + self.e as f64
        }
    }
}

fn bitlen(m: &BigInt) -> i64 {
    m.magnitude().bits() as i64
}

/// High-precision real with a certified error bound: value ∈ m·2^e ± err.
#[derive(Clone, Debug)]
pub struct Real {
    m: BigInt,
    e: i64,
    err: Dyadic,
}

impl Real {
    pub fn zero() -> Self {
        Real {
            m: BigInt::zero(),
            e: 0,
            err: Dyadic::ZERO,
        }
    }

    pub fn one() -> Self {
        Real::from_i64(1)
    }

    pub fn from_i64(v: i64) -> Self {
        Real {
            m: BigInt::from(v),
            e: 0,
            err: Dyadic::ZERO,
        }
    }

    pub fn from_bigint(v: BigInt) -> Self {
        Real {
            m: v,
            e: 0,
            err: Dyadic::ZERO,
        }
    }

    pub fn from_f64(v: f64) -> Self {
        assert!(v.is_finite(), "non-finite f64");
        if v == 0.0 {
            return Real::zero();
        }
        let (mant, exp) = {
            let bits = v.abs().to_bits();
            let raw_exp = ((bits >> 52) & 0x7ff) as i64;
            let frac = bits & ((1u64 << 52) - 1);
            if raw_exp == 0 {
                (frac, -1074)
            } else {
                (frac | (1u64 << 52), raw_exp - 1075)
            }
        };
        let mut m = BigInt::from(mant);
        if v < 0.0 {
            m = -m;
        }
        Real {
            m,
            e: exp,
            err: Dyadic::ZERO,
        }
    }

    /// Round a rational to `prec` bits; exact when the denominator is a power of two.
    pub fn from_ratio(q: &BigRational, prec: u32) -> Self {
        if q.is_zero() {
            return Real::zero();
        }
        let numer = q.numer();
        let denom = q.denom();
        let shift = prec as i64 + 2 + bitlen(denom) - bitlen(numer).min(0);
        let shifted = numer << shift.max(0) as u64;
        let (quot, rem) = num_integer::Integer::div_rem(&shifted, denom);
        let e = -shift.max(0);
        let err = if rem.is_zero() {
            Dyadic::ZERO
        } else {
            Dyadic::ulp(e)
        };
        let mut r = Real { m: quot, e, err };
        r.round(prec);
        r
    }

    pub fn is_exact(&self) -> bool {
        self.err.is_zero()
    }

    pub fn error_bound(&self) -> Dyadic {
        self.err
    }

    pub fn err_add(&mut self, d: Dyadic) {
        self.err = self.err.add(d);
    }

    /// Replace the error bound (used when an algorithm certifies a tighter one).
    pub fn set_err(&mut self, d: Dyadic) {
        self.err = d;
    }

    /// Truncate the mantissa to `prec` bits, charging the dropped part to the bound.
    pub fn round(&mut self, prec: u32) {
        let bl = bitlen(&self.m);
        if bl > prec as i64 {
            let shift = (bl - prec as i64) as u64;
            let dropped = !(&self.m >> shift << shift).is_zero();
            self.m = &self.m >> shift;
            self.e += shift as i64;
            if dropped {
                self.err = self.err.add(Dyadic::ulp(self.e));
            }
        }
    }

    /// Exact multiplication by 2^k.
    pub fn shl(&self, k: i64) -> Real {
        Real {
            m: self.m.clone(),
            e: self.e + k,
            err: self.err.shl(k),
        }
    }

    pub fn neg(&self) -> Real {
        Real {
            m: -&self.m,
            e: self.e,
            err: self.err,
        }
    }

    pub fn abs(&self) -> Real {
        Real {
            m: self.m.abs(),
            e: self.e,
            err: self.err,
        }
    }

    /// Upper bound on |value|.
    pub fn abs_up(&self) -> Dyadic {
        if self.m.is_zero() {
            return self.err;
        }
        let bl = bitlen(&self.m);
        let d = if bl <= 32 {
            Dyadic::new(self.m.magnitude().to_u64().unwrap(), self.e)
        } else {
            let shift = (bl - 32) as u64;
            let top = (self.m.magnitude() >> shift).to_u64().unwrap() + 1;
            Dyadic::new(top, self.e + shift as i64)
        };
        d.add(self.err)
    }

    /// Lower bound on |value| (zero if the ball straddles zero).
    pub fn abs_low(&self) -> Dyadic {
        if self.m.is_zero() {
            return Dyadic::ZERO;
        }
        let bl = bitlen(&self.m);
        let d = if bl <= 32 {
            Dyadic {
                m: self.m.magnitude().to_u64().unwrap(),
                e: self.e,
            }
        } else {
            let shift = (bl - 32) as u64;
            Dyadic {
                m: (self.m.magnitude() >> shift).to_u64().unwrap(),
                e: self.e + shift as i64,
            }
        };
        if self.err.is_zero() {
            return d;
        }
        if d.cmp_mag(&self.err) != Ordering::Greater {
            return Dyadic::ZERO;
        }
        // subtract err, rounding down: align err up into d's scale
        let de = d.e;
        let shift = (self.err.e - de).clamp(-96, 96);
        let err_m = if shift >= 0 {
            (self.err.m as u128) << shift as u32
        } else {
            let k = (-shift) as u32;
            let dropped = self.err.m & ((1u64 << k.min(63)) - 1) != 0 || k > 63;
            ((self.err.m as u128) >> k.min(63)) + u128::from(dropped)
        };
        let dm = d.m as u128;
        if dm <= err_m {
            return Dyadic::ZERO;
        }
        let rem = dm - err_m;
        let mut m = rem;
        let mut e = de;
        while m >= 1 << 32 {
            m >>= 1; // round down
            e += 1;
        }
        Dyadic { m: m as u64, e }
    }

    pub fn contains_zero(&self) -> bool {
        self.abs_low().is_zero()
    }

    pub fn definitely_positive(&self) -> bool {
        self.m.sign() == Sign::Plus && !self.contains_zero()
    }

    pub fn definitely_negative(&self) -> bool {
        self.m.sign() == Sign::Minus && !self.contains_zero()
    }

    pub fn sign_center(&self) -> Ordering {
        self.m.cmp(&BigInt::zero())
    }

    pub fn add(&self, o: &Real, prec: u32) -> Real {
        let mut r = self.add_exact(o);
        r.round(prec);
        r
    }

    fn add_exact(&self, o: &Real) -> Real {
        if self.m.is_zero() && self.err.is_zero() {
            return o.clone();
        }
        if o.m.is_zero() && o.err.is_zero() {
            return self.clone();
        }
        let (hi, lo) = if self.e >= o.e { (self, o) } else { (o, self) };
        let d = hi.e - lo.e;
        // absorb a vanishingly small addend into the error bound
        let hi_bits = hi.e + bitlen(&hi.m);
        let lo_bits = lo.e + bitlen(&lo.m);
        if d > 0 && hi_bits - lo_bits > (1 << 20) {
            let mut r = hi.clone();
            r.err = r.err.add(lo.abs_up()).add(lo.err);
            return r;
        }
        Real {
            m: (&hi.m << d as u64) + &lo.m,
            e: lo.e,
            err: hi.err.add(lo.err),
        }
    }

    pub fn sub(&self, o: &Real, prec: u32) -> Real {
        self.add(&o.neg(), prec)
    }

    pub fn mul(&self, o: &Real, prec: u32) -> Real {
        let err = self
            .abs_up()
            .mul(o.err)
            .add(o.abs_up().mul(self.err))
            .add(self.err.mul(o.err));
        let mut r = Real {
            m: &self.m * &o.m,
            e: self.e + o.e,
            err,
        };
        r.round(prec);
        r
    }

    pub fn mul_i64(&self, k: i64, prec: u32) -> Real {
        let mut r = Real {
            m: &self.m * k,
            e: self.e,
            err: self.err.mul(Dyadic::new(k.unsigned_abs(), 0)),
        };
        r.round(prec);
        r
    }

    pub fn div(&self, o: &Real, prec: u32) -> Real {
        let denom_low = o.abs_low();
        assert!(
            !denom_low.is_zero(),
            "division by a ball containing zero (|center| 2^{:.1}, err 2^{:.1})",
            Dyadic::new(1, o.e + bitlen(&o.m)).log2(),
            o.err.log2()
        );
        if self.m.is_zero() && self.err.is_zero() {
            return Real::zero();
        }
        // quotient of centers at prec+2 guard bits
        let shift = prec as i64 + 2 + bitlen(&o.m) - bitlen(&self.m).min(0);
        let shift = shift.max(0) as u64;
        let num = &self.m << shift;
        let (quot, rem) = num_integer::Integer::div_rem(&num, &o.m);
        let e = self.e - o.e - shift as i64;
        let round_err = if rem.is_zero() {
            Dyadic::ZERO
        } else {
            Dyadic::ulp(e)
        };
        let mut q = Real {
            m: quot,
            e,
            err: Dyadic::ZERO,
        };
        // |x/y - x̂/ŷ| <= (err_x + |q|·err_y) / |y|_low
        let prop = self.err.add(q.abs_up().mul(o.err));
        let inv_low = {
            // 1/denom_low rounded up: 2^64/m scaled
            let m = denom_low.m.max(1);
            Dyadic::new((1u128 << 64).div_ceil(m as u128) as u64, -64 - denom_low.e)
        };
        q.err = prop.mul(inv_low).add(round_err);
        q.round(prec);
        q
    }

    pub fn recip(&self, prec: u32) -> Real {
        Real::one().div(self, prec)
    }

    /// Square root; the argument must not be definitely negative. Balls
    /// straddling zero are clamped to [0, upper].
    pub fn sqrt(&self, prec: u32) -> Real {
        assert!(!self.definitely_negative(), "sqrt of negative value");
        if self.m.is_zero() && self.err.is_zero() {
            return Real::zero();
        }
        if self.contains_zero() {
            let up = self.abs_up();
            // result in [0, sqrt(up)]
            let half_bound = Dyadic::new(up.m + 1, up.e).norm();
            let s = Dyadic {
                m: (half_bound.m as f64).sqrt().ceil() as u64 + 1,
                e: half_bound.e / 2 + half_bound.e % 2,
            }
            .norm();
            let mut r = Real::zero();
            r.err = s;
            return r;
        }
        // scale mantissa so sqrt has ~prec+2 bits
        let bl = bitlen(&self.m);
        let target = 2 * (prec as i64 + 2);
        let mut shift = (target - bl).max(0);
        if (self.e - shift) % 2 != 0 {
            shift += 1;
        }
        let scaled = self.m.magnitude() << shift as u64;
        let root = scaled.sqrt();
        let e = (self.e - shift) / 2;
        let mut r = Real {
            m: BigInt::from(root),
            e,
            err: Dyadic::ulp(e),
        };
        // propagate input error: |sqrt x - sqrt x̂| <= err / (2 sqrt_low)
        if !self.err.is_zero() {
            let rl = r.abs_low();
            assert!(!rl.is_zero());
            let inv = Dyadic::new((1u128 << 64).div_ceil(rl.m.max(1) as u128) as u64, -64 - rl.e);
            r.err = r.err.add(self.err.mul(inv).shl(-1));
        }
        r.round(prec);
        r
    }

    /// Exact integer power by repeated squaring, rounding at each step.
    pub fn pow_i64(&self, k: i64, prec: u32) -> Real {
        if k == 0 {
            return Real::one();
        }
        let mut base = if k < 0 {
            self.recip(prec + 8)
        } else {
            self.clone()
        };
        let mut n = k.unsigned_abs();
        let mut acc = Real::one();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base, prec + 8);
            }
            base = base.mul(&base, prec + 8);
            n >>= 1;
        }
        acc.round(prec);
        acc
    }

    /// Compare centers, ignoring error bounds.
    pub fn cmp_center(&self, o: &Real) -> Ordering {
        self.sub(o, 96).sign_center()
    }

    pub fn to_f64(&self) -> f64 {
        if self.m.is_zero() {
            return 0.0;
        }
        let bl = bitlen(&self.m);
        let (top, e) = if bl <= 63 {
            (self.m.to_i64().unwrap() as f64, self.e)
        } else {
            let shift = (bl - 63) as u64;
            let t = (&self.m >> shift).to_i64().unwrap() as f64;
            (t, self.e + shift as i64)
        };
        top * 2f64.powi(e.clamp(-1060, 1060) as i32)
    }

    /// log2 |value| from the center; `None` when the ball straddles zero.
    pub fn log2_abs(&self) -> Option<f64> {
        if self.contains_zero() {
            return None;
        }
        let bl = bitlen(&self.m);
        let shift = (bl - 53).max(0) as u64;
        let top = (self.m.magnitude() >> shift).to_u64().unwrap();
        Some((top as f64).log2() + (self.e + shift as i64) as f64)
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:.12e}", self.to_f64())?;
        if !self.err.is_zero() {
            write!(f, " (±2^{:.0})", self.err.log2())?;
        }
        Ok(())
    }
}

/// Complex ball: a pair of [`Real`]s.
#[derive(Clone, Debug)]
pub struct Complex {
    pub re: Real,
    pub im: Real,
}

impl Complex {
    pub fn zero() -> Self {
        Complex {
            re: Real::zero(),
            im: Real::zero(),
        }
    }

    pub fn one() -> Self {
        Complex {
            re: Real::one(),
            im: Real::zero(),
        }
    }

    pub fn from_real(re: Real) -> Self {
        Complex {
            re,
            im: Real::zero(),
        }
    }

    pub fn i() -> Self {
        Complex {
            re: Real::zero(),
            im: Real::one(),
        }
    }

    pub fn is_real(&self) -> bool {
        self.im.m.is_zero() && self.im.err.is_zero()
    }

    pub fn neg(&self) -> Self {
        Complex {
            re: self.re.neg(),
            im: self.im.neg(),
        }
    }

    pub fn conj(&self) -> Self {
        Complex {
            re: self.re.clone(),
            im: self.im.neg(),
        }
    }

    pub fn add(&self, o: &Complex, prec: u32) -> Self {
        Complex {
            re: self.re.add(&o.re, prec),
            im: self.im.add(&o.im, prec),
        }
    }

    pub fn sub(&self, o: &Complex, prec: u32) -> Self {
        Complex {
            re: self.re.sub(&o.re, prec),
            im: self.im.sub(&o.im, prec),
        }
    }

    pub fn mul(&self, o: &Complex, prec: u32) -> Self {
        Complex {
            re: self
                .re
                .mul(&o.re, prec)
                .sub(&self.im.mul(&o.im, prec), prec),
            im: self
                .re
                .mul(&o.im, prec)
                .add(&self.im.mul(&o.re, prec), prec),
        }
    }

    pub fn div(&self, o: &Complex, prec: u32) -> Self {
        let denom = o
            .re
            .mul(&o.re, prec)
            .add(&o.im.mul(&o.im, prec), prec);
        let num = self.mul(&o.conj(), prec);
        Complex {
            re: num.re.div(&denom, prec),
            im: num.im.div(&denom, prec),
        }
    }

    pub fn scale(&self, s: &Real, prec: u32) -> Self {
        Complex {
            re: self.re.mul(s, prec),
            im: self.im.mul(s, prec),
        }
    }

    pub fn abs2(&self, prec: u32) -> Real {
        self.re
            .mul(&self.re, prec)
            .add(&self.im.mul(&self.im, prec), prec)
    }

    pub fn abs(&self, prec: u32) -> Real {
        self.abs2(prec).sqrt(prec)
    }

    pub fn contains_zero(&self) -> bool {
        self.re.contains_zero() && self.im.contains_zero()
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }
}

impl fmt::Display for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.m.is_zero() && self.im.err.is_zero() {
            write!(f, "{}", self.re)
        } else {
            write!(f, "{} + {}i", self.re, self.im)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn dyadic_add_rounds_up() {
        let a = Dyadic::new(3, -10);
        let b = Dyadic::new(1, -74); // far below a's scale
        let s = a.add(b);
        assert!(s.cmp_mag(&a) == Ordering::Greater);
    }

    #[test]
    fn real_round_trip_and_error() {
        let x = Real::from_ratio(&BigRational::new(BigInt::from(1), BigInt::from(3)), 128);
        let three = Real::from_i64(3);
        let y = x.mul(&three, 128);
        let diff = y.sub(&Real::one(), 128);
        assert!(diff.abs_up().log2() < -120.0);
    }

    #[test]
    fn division_error_bound_contains_truth() {
        let x = Real::from_i64(1);
        let y = Real::from_i64(7);
        let q = x.div(&y, 200);
        let back = q.mul(&y, 200);
        let diff = back.sub(&Real::one(), 200);
        assert!(diff.contains_zero());
        assert!(diff.abs_up().log2() < -190.0);
    }

    #[test]
    fn sqrt_two_squares_back() {
        let two = Real::from_i64(2);
        let r = two.sqrt(256);
        let sq = r.mul(&r, 256);
        let diff = sq.sub(&two, 256);
        assert!(diff.contains_zero());
        assert!(diff.abs_up().log2() < -250.0);
    }

    #[test]
    fn absorb_tiny_addend() {
        let big = Real::from_i64(1).shl(2_000_000);
        let tiny = Real::from_i64(1).shl(-2_000_000);
        let s = big.add(&tiny, 64);
        assert!(!s.err.is_zero());
        assert!(s.sub(&big, 64).abs_up().log2() < -1_000_000.0);
    }

    #[test]
    fn complex_mul_i_squared() {
        let i = Complex::i();
        let m = i.mul(&i, 64);
        assert_eq!(m.re.to_f64(), -1.0);
        assert_eq!(m.im.to_f64(), 0.0);
    }
}
