//! Numeric Γ on the real axis with certified error bounds, via an
//! argument-shifted Stirling series, plus the reflection and duplication
//! identity checks.

use crate::bernoulli::bernoulli;
use crate::error::{Error, Result};
use crate::highprec::{self, Complex, Dyadic, Real};
use num_rational::BigRational;

/// Shift target: the Stirling error floor at argument z is ~e^(-2πz), so the
/// working precision dictates how far to shift. Never below the spec's 20.
fn shift_threshold(wp: u32) -> f64 {
    (0.1151 * (wp as f64 - 8.0) + 4.0).max(20.0)
}

/// ln Γ(y) for a ball y with center ≥ shift_threshold(wp).
fn ln_gamma_stirling(y: &Real, wp: u32) -> Result<Real> {
    let half = Real::from_f64(0.5);
    let ln_y = highprec::ln(y, wp);
    let ln_2pi = highprec::ln(&highprec::pi(wp).shl(1), wp);
    // (y - 1/2) ln y - y + ln(2π)/2
    let mut acc = y
        .sub(&half, wp)
        .mul(&ln_y, wp)
        .sub(y, wp)
        .add(&ln_2pi.shl(-1), wp);
    // + Σ B_{2k} / (2k(2k-1) y^{2k-1}), remainder bounded by the next term
    let y_inv = y.recip(wp);
    let y_inv2 = y_inv.mul(&y_inv, wp);
    let mut pow = y_inv.clone();
    let mut prev_mag = f64::INFINITY;
    let mut k = 1usize;
    loop {
        let coef = bernoulli(2 * k)
            / BigRational::from_integer(num_bigint::BigInt::from((2 * k) * (2 * k - 1)));
        let term = Real::from_ratio(&coef, wp).mul(&pow, wp);
        let mag = term.abs_up().log2();
        if mag >= prev_mag {
            return Err(Error::Precision(format!(
                "Stirling series stopped converging at k={k} for argument {}",
                y.to_f64()
            )));
        }
        if mag < -(wp as f64) {
            // remainder of the real-argument Stirling series is bounded by
            // the first omitted term
            acc.err_add(term.abs_up());
            break;
        }
        acc = acc.add(&term, wp);
        prev_mag = mag;
        pow = pow.mul(&y_inv2, wp);
        k += 1;
        if k > 4 * wp as usize {
            return Err(Error::Precision("Stirling series too long".into()));
        }
    }
    Ok(acc)
}

/// Γ(x) for a real ball, any x off the nonpositive integers.
///
/// The returned ball always contains Γ of every point of the input ball.
/// The error contract (err ≤ 2^(8−prec)·|Γ|) is enforced whenever the input
/// itself is known to at least `prec` bits; an input with a wider bound can
/// only be honoured by a correspondingly wider output ball.
pub fn gamma_real(x: &Real, prec: u32) -> Result<Real> {
    let mut g = gamma_core(x, prec + 40)?;
    g.round(prec);
    let input_adequate =
        x.error_bound().log2() <= -(prec as f64 + 8.0) + x.abs_up().log2().max(0.0);
    if input_adequate {
        let rel = g.error_bound().log2() - g.abs_low().log2();
        if rel > 8.0 - prec as f64 {
            return Err(Error::Precision(format!(
                "gamma error contract missed: relative 2^{rel:.1} at prec {prec}"
            )));
        }
    }
    Ok(g)
}

fn gamma_core(x: &Real, wp: u32) -> Result<Real> {
    let c = x.to_f64();
    // pole guard: ball may not contain a nonpositive integer
    let nearest = c.round();
    if nearest <= 0.0 {
        let dist = x.sub(&Real::from_f64(nearest), wp);
        if dist.contains_zero() {
            return Err(Error::Pole(format!("Γ at {c} (near {nearest})")));
        }
    }
    if c < 0.5 {
        // reflection: Γ(x) = π / (sin(πx) Γ(1-x))
        let pi = highprec::pi(wp);
        let s = highprec::sin(&pi.mul(x, wp), wp);
        let g = gamma_core(&Real::one().sub(x, wp), wp)?;
        return Ok(pi.div(&s.mul(&g, wp), wp));
    }
    let threshold = shift_threshold(wp);
    let shift = (threshold - c).ceil().max(0.0) as i64;
    let y = x.add(&Real::from_i64(shift), wp);
    let ln_g = ln_gamma_stirling(&y, wp)?;
    let mut g = highprec::exp(&ln_g, wp);
    // divide back down: Γ(x) = Γ(x+m) / (x (x+1) ... (x+m-1))
    for i in 0..shift {
        g = g.div(&x.add(&Real::from_i64(i), wp), wp);
    }
    Ok(g)
}

/// Γ(s) for the complex carrier type; only the real axis is supported
/// (the spec's zeta pipeline is real-argument by design).
pub fn gamma_numeric(s: &Complex, prec: u32) -> Result<Complex> {
    if !(s.im.contains_zero() && s.im.error_bound().is_zero()) {
        return Err(Error::InvalidInput(
            "gamma_numeric: off-axis arguments are out of scope".into(),
        ));
    }
    Ok(Complex::from_real(gamma_real(&s.re, prec)?))
}

/// Γ(z)Γ(1−z) − π/sin(πz) as a ball.
pub fn reflection_defect(z: &Real, prec: u32) -> Result<Real> {
    let wp = prec + 16;
    let lhs = gamma_real(z, wp)?.mul(&gamma_real(&Real::one().sub(z, wp), wp)?, wp);
    let pi = highprec::pi(wp);
    let rhs = pi.div(&highprec::sin(&pi.mul(z, wp), wp), wp);
    Ok(lhs.sub(&rhs, prec))
}

/// Γ(z)Γ(z+1/2) − 2^(1−2z) Γ(2z) √π as a ball.
pub fn duplication_defect(z: &Real, prec: u32) -> Result<Real> {
    let wp = prec + 16;
    let lhs = gamma_real(z, wp)?.mul(&gamma_real(&z.add(&Real::from_f64(0.5), wp), wp)?, wp);
    let two = Real::from_i64(2);
    let exponent = Real::one().sub(&z.shl(1), wp);
    let rhs = highprec::pow(&two, &exponent, wp)
        .mul(&gamma_real(&z.shl(1), wp)?, wp)
        .mul(&highprec::pi(wp).sqrt(wp), wp);
    Ok(lhs.sub(&rhs, prec))
}

/// True iff the reflection identity holds at z = num/den within the combined
/// error bounds of both sides.
pub fn check_reflection(num: i64, den: i64, prec: u32) -> Result<bool> {
    let z = Real::from_i64(num).div(&Real::from_i64(den), prec + 16);
    let d = reflection_defect(&z, prec)?;
    Ok(d.contains_zero())
}

/// True iff the duplication identity holds at z within combined bounds.
pub fn check_duplication(z: &Complex, prec: u32) -> Result<bool> {
    if !(z.im.contains_zero() && z.im.error_bound().is_zero()) {
        return Err(Error::InvalidInput(
            "check_duplication: off-axis arguments are out of scope".into(),
        ));
    }
    let d = duplication_defect(&z.re, prec)?;
    Ok(d.contains_zero())
}

#[allow(dead_code)]
fn ulp(e: i64) -> Dyadic {
    Dyadic::ulp(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gamma::{gamma_star_half, gamma_star_int};

    #[test]
    fn gamma_at_small_integers() {
        // Γ(5) = 24
        let g = gamma_real(&Real::from_i64(5), 256).unwrap();
        let d = g.sub(&Real::from_i64(24), 256);
        assert!(d.contains_zero() && d.abs_up().log2() < -240.0);
        // Γ agrees with Γ* at integers 1..=12
        for r in 1..=12i64 {
            let g = gamma_real(&Real::from_i64(r), 192).unwrap();
            let exact = gamma_star_int(r).abs_numeric(192);
            let d = g.sub(&exact, 192);
            assert!(d.contains_zero(), "r={r}");
        }
    }

    #[test]
    fn gamma_at_half() {
        let g = gamma_real(&Real::from_f64(0.5), 256).unwrap();
        let sqrt_pi = highprec::pi(256).sqrt(256);
        let d = g.sub(&sqrt_pi, 256);
        assert!(d.contains_zero() && d.abs_up().log2() < -240.0);
    }

    #[test]
    fn gamma_product_recursion_oracle() {
        // Γ(37/10) = (27/10)(17/10)(7/10) Γ(7/10), with exact tenths
        let prec = 256;
        let tenth = |n: i64| Real::from_i64(n).div(&Real::from_i64(10), prec + 16);
        let lhs = gamma_real(&tenth(37), prec).unwrap();
        let rhs = gamma_real(&tenth(7), prec)
            .unwrap()
            .mul(&tenth(7), prec)
            .mul(&tenth(17), prec)
            .mul(&tenth(27), prec);
        let d = lhs.sub(&rhs, prec);
        assert!(d.contains_zero() && d.abs_up().log2() < -230.0, "defect {}", d);
    }

    #[test]
    fn gamma_negative_half_matches_exact() {
        let g = gamma_real(&Real::from_f64(-0.5), 200).unwrap();
        let exact = gamma_star_half(-1).to_complex(200).re;
        let d = g.sub(&exact, 200);
        assert!(d.contains_zero() && d.abs_up().log2() < -180.0);
        assert!(g.definitely_negative());
    }

    #[test]
    fn pole_rejected() {
        assert!(matches!(
            gamma_real(&Real::from_i64(-3), 128),
            Err(Error::Pole(_))
        ));
        assert!(matches!(
            gamma_real(&Real::from_i64(0), 128),
            Err(Error::Pole(_))
        ));
    }

    #[test]
    fn reflection_and_duplication_at_rational_points() {
        assert!(check_reflection(1, 2, 192).unwrap());
        assert!(check_reflection(1, 3, 192).unwrap());
        let one = Complex::from_real(Real::one());
        assert!(check_duplication(&one, 192).unwrap());
        // defects are tiny, not merely contained in wide balls
        let z = Real::from_i64(1).div(&Real::from_i64(3), 256);
        let d = reflection_defect(&z, 192).unwrap();
        assert!(d.abs_up().log2() < -120.0);
    }

    #[test]
    fn numeric_matches_star_at_integers() {
        for r in 1..=8i64 {
            let g = gamma_real(&Real::from_i64(r), 160).unwrap();
            let e = gamma_star_int(r).abs_numeric(160);
            assert!(g.sub(&e, 160).contains_zero(), "r={r}");
        }
    }
}
