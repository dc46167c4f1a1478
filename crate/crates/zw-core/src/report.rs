//! Comparison reports: the shared output record of every verification,
//! including the "up to sign and powers of 2" comparison discipline.

use crate::error::{Error, Result};
use crate::highprec::Real;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

/// Outcome of one check. `passed` holds iff `nearest_int_deviation <= tolerance`;
/// informational items (positive regulator rank, missing data) set `status`
/// accordingly and never fail a run.
#[derive(Clone, Debug, Serialize)]
pub struct ComparisonReport {
    pub check: String,
    pub subject: String,
    pub r: Option<i64>,
    pub lhs: String,
    pub rhs: String,
    pub ratio: f64,
    pub log2_ratio: f64,
    pub nearest_int_deviation: f64,
    /// k when the ratio is ±2^k.
    pub two_power: Option<i64>,
    pub passed: bool,
    pub status: CheckStatus,
    pub tolerance: f64,
    pub notes: String,
    pub sources: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
    Informational,
}

impl ComparisonReport {
    pub fn exact(check: &str, subject: &str, passed: bool, notes: String) -> Self {
        ComparisonReport {
            check: check.to_string(),
            subject: subject.to_string(),
            r: None,
            lhs: String::new(),
            rhs: String::new(),
            ratio: if passed { 1.0 } else { f64::NAN },
            log2_ratio: 0.0,
            nearest_int_deviation: if passed { 0.0 } else { 1.0 },
            two_power: None,
            passed,
            status: if passed {
                CheckStatus::Pass
            } else {
                CheckStatus::Fail
            },
            tolerance: 0.0,
            notes,
            sources: Vec::new(),
        }
    }

    pub fn skipped(check: &str, subject: &str, notes: String) -> Self {
        ComparisonReport {
            check: check.to_string(),
            subject: subject.to_string(),
            r: None,
            lhs: String::new(),
            rhs: String::new(),
            ratio: f64::NAN,
            log2_ratio: f64::NAN,
            nearest_int_deviation: f64::NAN,
            two_power: None,
            passed: true,
            status: CheckStatus::Skipped,
            tolerance: 0.0,
            notes,
            sources: Vec::new(),
        }
    }

    pub fn with_r(mut self, r: i64) -> Self {
        self.r = Some(r);
        self
    }

    pub fn with_sources(mut self, sources: Vec<String>) -> Self {
        self.sources = sources;
        self
    }
}

/// `passed` iff |log2|x/y| - round(log2|x/y|)| <= tol, i.e. x/y = ±2^k.
///
/// Signs are reported, never gated. Errors if either magnitude straddles zero.
pub fn compare_up_to_sign_and_two(
    check: &str,
    subject: &str,
    x: &Real,
    y: &Real,
    tol: f64,
    prec: u32,
) -> Result<ComparisonReport> {
    if x.contains_zero() {
        return Err(Error::ZeroComparand(format!("{check}: lhs {x}")));
    }
    if y.contains_zero() {
        return Err(Error::ZeroComparand(format!("{check}: rhs {y}")));
    }
    let ratio = x.abs().div(&y.abs(), prec);
    let log2_ratio = crate::highprec::ln(&ratio, prec)
        .div(&crate::highprec::ln2(prec), prec)
        .to_f64();
    let k = log2_ratio.round();
    let dev = (log2_ratio - k).abs();
    let passed = dev <= tol;
    Ok(ComparisonReport {
        check: check.to_string(),
        subject: subject.to_string(),
        r: None,
        lhs: format!("{:.12e}", x.to_f64()),
        rhs: format!("{:.12e}", y.to_f64()),
        ratio: ratio.to_f64(),
        log2_ratio,
        nearest_int_deviation: dev,
        two_power: Some(k as i64),
        passed,
        status: if passed {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        },
        tolerance: tol,
        notes: String::new(),
        sources: Vec::new(),
    })
}

/// `passed` iff | |x/y| - 1 | <= tol (exact-ratio discipline, e.g. the
/// class number formula where the classical theorem is on the nose).
pub fn compare_unit_ratio(
    check: &str,
    subject: &str,
    x: &Real,
    y: &Real,
    tol: f64,
    prec: u32,
) -> Result<ComparisonReport> {
    if x.contains_zero() {
        return Err(Error::ZeroComparand(format!("{check}: lhs {x}")));
    }
    if y.contains_zero() {
        return Err(Error::ZeroComparand(format!("{check}: rhs {y}")));
    }
    let ratio = x.abs().div(&y.abs(), prec);
    let dev = ratio.sub(&Real::one(), prec).to_f64().abs();
    let passed = dev <= tol;
    Ok(ComparisonReport {
        check: check.to_string(),
        subject: subject.to_string(),
        r: None,
        lhs: format!("{:.12e}", x.to_f64()),
        rhs: format!("{:.12e}", y.to_f64()),
        ratio: ratio.to_f64(),
        log2_ratio: ratio.to_f64().abs().log2(),
        nearest_int_deviation: dev,
        two_power: Some(0),
        passed,
        status: if passed {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        },
        tolerance: tol,
        notes: String::new(),
        sources: Vec::new(),
    })
}

/// If q = ±2^k returns k.
pub fn sign_power_of_two(q: &BigRational) -> Option<i64> {
    if q.is_zero() {
        return None;
    }
    let numer = q.numer().abs();
    let denom = q.denom().abs();
    let pow2 = |v: &BigInt| -> Option<i64> {
        let m = v.magnitude();
        if m.count_ones() == 1 {
            Some(m.trailing_zeros().unwrap() as i64)
        } else {
            None
        }
    };
    match (pow2(&numer), pow2(&denom)) {
        (Some(a), Some(b)) => Some(a - b),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn power_of_two_detection() {
        let q = BigRational::new(BigInt::from(-8), BigInt::from(3));
        assert_eq!(sign_power_of_two(&q), None);
        let q = BigRational::new(BigInt::from(-8), BigInt::from(2));
        assert_eq!(sign_power_of_two(&q), Some(2));
        let q = BigRational::new(BigInt::from(1), BigInt::from(16));
        assert_eq!(sign_power_of_two(&q), Some(-4));
        assert_eq!(sign_power_of_two(&BigRational::zero()), None);
    }

    #[test]
    fn up_to_two_comparison() {
        let x = Real::from_f64(-0.25);
        let y = Real::from_f64(4.0);
        let rep = compare_up_to_sign_and_two("t", "s", &x, &y, 1e-9, 128).unwrap();
        assert!(rep.passed);
        assert_eq!(rep.two_power, Some(-4));
        let z = Real::from_f64(3.0);
        let rep = compare_up_to_sign_and_two("t", "s", &x, &z, 1e-6, 128).unwrap();
        assert!(!rep.passed);
    }
}
