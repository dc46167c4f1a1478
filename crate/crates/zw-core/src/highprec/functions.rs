//! Transcendental functions on [`Real`] balls with certified tail bounds.
//!
//! Series are truncated only when the next term is provably below the working
//! ulp, and the truncation is charged to the error bound. Argument reduction
//! uses cached high-precision constants.

use super::{Dyadic, Real};
use num_bigint::BigInt;
use num_traits::Zero;
use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

fn cache() -> &'static Mutex<HashMap<(&'static str, u32), Real>> {
    static CACHE: OnceLock<Mutex<HashMap<(&'static str, u32), Real>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// arctan(1/n) in fixed point at `wp` fractional bits.
fn atan_recip(n: u64, wp: u32) -> Real {
    let one = BigInt::from(1) << wp;
    let n2 = BigInt::from(n) * n;
    let mut num = &one / n; // (1/n) * 2^wp, truncated
    let mut sum = BigInt::zero();
    let mut k: u64 = 0;
    let mut terms: u64 = 0;
    while !num.is_zero() {
        let term = &num / (2 * k + 1);
        if k % 2 == 0 {
            sum += &term;
        } else {
            sum -= &term;
        }
        num = &num / &n2;
        k += 1;
        terms += 1;
    }
    Real {
        m: sum,
        e: -(wp as i64),
        err: Dyadic::new(terms + 2, -(wp as i64)),
    }
}

/// artanh(1/n) in fixed point at `wp` fractional bits (n >= 2).
fn atanh_recip(n: u64, wp: u32) -> Real {
    let one = BigInt::from(1) << wp;
    let n2 = BigInt::from(n) * n;
    let mut num = &one / n;
    let mut sum = BigInt::zero();
    let mut k: u64 = 0;
    let mut terms: u64 = 0;
    while !num.is_zero() {
        sum += &num / (2 * k + 1);
        num = &num / &n2;
        k += 1;
        terms += 1;
    }
    // positive series: tail <= last term * ratio/(1-ratio) <= 1 ulp once num hits 0
    Real {
        m: sum,
        e: -(wp as i64),
        err: Dyadic::new(terms + 2, -(wp as i64)),
    }
}

/// π to `prec` bits (Machin's formula), cached.
pub fn pi(prec: u32) -> Real {
    if let Some(v) = cache().lock().unwrap().get(&("pi", prec)) {
        return v.clone();
    }
    let wp = prec + 24;
    let a = atan_recip(5, wp);
    let b = atan_recip(239, wp);
    let mut v = a.shl(4).sub(&b.shl(2), wp);
    v.round(prec);
    cache().lock().unwrap().insert(("pi", prec), v.clone());
    v
}

/// ln 2 to `prec` bits, cached.
pub fn ln2(prec: u32) -> Real {
    if let Some(v) = cache().lock().unwrap().get(&("ln2", prec)) {
        return v.clone();
    }
    let wp = prec + 24;
    let mut v = atanh_recip(3, wp).shl(1);
    v.round(prec);
    cache().lock().unwrap().insert(("ln2", prec), v.clone());
    v
}

/// e^x. Reduction x = k·ln2 + r, then the Taylor series on |r| ≤ 0.4.
pub fn exp(x: &Real, prec: u32) -> Real {
    let wp = prec + 48;
    let cx = x.to_f64();
    assert!(cx.abs() < 1e15, "exp argument too large: {cx}");
    let k = (cx / std::f64::consts::LN_2).round() as i64;
    let r = x.sub(&ln2(wp).mul_i64(k, wp), wp);
    let mut sum = Real::one();
    let mut term = Real::one();
    let mut n: i64 = 1;
    loop {
        term = term.mul(&r, wp).div(&Real::from_i64(n), wp);
        sum = sum.add(&term, wp);
        if term.abs_up().log2() < -(wp as f64) {
            break;
        }
        n += 1;
        assert!(n < 10_000, "exp series failed to converge");
    }
    // tail <= 2 * |next term|
    sum.err_add(term.abs_up().shl(1));
    let mut out = sum.shl(k);
    out.round(prec);
    out
}

/// Natural log of a definitely-positive ball.
/// Reduction x = v·2^k with v near 1, then artanh series.
pub fn ln(x: &Real, prec: u32) -> Real {
    assert!(x.definitely_positive(), "ln of non-positive value");
    let wp = prec + 48;
    let k = x.to_f64().log2().round() as i64;
    let v = x.shl(-k);
    // t = (v-1)/(v+1), |t| <= 0.172 for v in [2^-0.5, 2^0.5]
    let one = Real::one();
    let t = v.sub(&one, wp).div(&v.add(&one, wp), wp);
    let t2 = t.mul(&t, wp);
    let mut term = t.clone();
    let mut sum = t.clone();
    let mut j: i64 = 1;
    loop {
        term = term.mul(&t2, wp);
        let contrib = term.div(&Real::from_i64(2 * j + 1), wp);
        sum = sum.add(&contrib, wp);
        if contrib.abs_up().log2() < -(wp as f64) {
            break;
        }
        j += 1;
        assert!(j < 10_000, "ln series failed to converge");
    }
    sum.err_add(term.abs_up().shl(1));
    let mut out = sum.shl(1).add(&ln2(wp).mul_i64(k, wp), wp);
    out.round(prec);
    out
}

/// sin x. Reduction mod 2π, then the alternating Taylor series.
pub fn sin(x: &Real, prec: u32) -> Real {
    let cx = x.to_f64();
    assert!(cx.abs() < 1e12, "sin argument too large: {cx}");
    let wp = prec + 48 + (cx.abs().log2().max(0.0) as u32);
    let two_pi = pi(wp).shl(1);
    let q = (cx / (2.0 * std::f64::consts::PI)).round() as i64;
    let r = x.sub(&two_pi.mul_i64(q, wp), wp);
    let r2 = r.mul(&r, wp);
    let mut term = r.clone();
    let mut sum = r.clone();
    let mut k: i64 = 1;
    loop {
        term = term
            .mul(&r2, wp)
            .div(&Real::from_i64((2 * k) * (2 * k + 1)), wp)
            .neg();
        sum = sum.add(&term, wp);
        if k >= 2 && term.abs_up().log2() < -(wp as f64) {
            break;
        }
        k += 1;
        assert!(k < 10_000, "sin series failed to converge");
    }
    sum.err_add(term.abs_up().shl(1));
    let mut out = sum;
    out.round(prec);
    out
}

/// x^y = exp(y ln x) for definitely-positive x.
pub fn pow(x: &Real, y: &Real, prec: u32) -> Real {
    let wp = prec + 16;
    exp(&y.mul(&ln(x, wp), wp), prec)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_close(v: &Real, want: f64, log2_tol: f64) {
        let diff = v.sub(&Real::from_f64(want), 128);
        assert!(
            diff.to_f64().abs().log2() < log2_tol || diff.to_f64() == 0.0,
            "value {} vs {want}",
            v.to_f64()
        );
    }

    #[test]
    fn pi_matches_f64() {
        let p = pi(256);
        assert_close(&p, std::f64::consts::PI, -50.0);
        assert!(p.error_bound().log2() < -250.0);
    }

    #[test]
    fn ln2_exp_ln_roundtrip() {
        let l2 = ln2(256);
        assert_close(&l2, std::f64::consts::LN_2, -50.0);
        let x = Real::from_f64(1.7);
        let y = ln(&exp(&x, 256), 256);
        let diff = y.sub(&x, 256);
        assert!(diff.contains_zero());
        assert!(diff.abs_up().log2() < -240.0);
    }

    #[test]
    fn exp_large_argument() {
        // e^100: check against ln round trip rather than f64
        let x = Real::from_i64(100);
        let v = exp(&x, 256);
        let back = ln(&v, 256);
        assert!(back.sub(&x, 256).abs_up().log2() < -230.0);
    }

    #[test]
    fn sin_known_points() {
        let p = pi(256);
        // sin(pi) = 0 within bound
        let s = sin(&p, 256);
        assert!(s.contains_zero());
        assert!(s.abs_up().log2() < -240.0);
        // sin(pi/2) = 1
        let s2 = sin(&p.shl(-1), 256);
        let diff = s2.sub(&Real::one(), 256);
        assert!(diff.contains_zero() && diff.abs_up().log2() < -240.0);
    }

    #[test]
    fn pow_cube_root() {
        let x = Real::from_i64(8);
        let third = Real::one().div(&Real::from_i64(3), 300);
        let v = pow(&x, &third, 256);
        let diff = v.sub(&Real::from_i64(2), 256);
        assert!(diff.contains_zero() && diff.abs_up().log2() < -240.0);
    }
}
