//! Hodge data at an infinite place, the attached local Gamma factors, and
//! the exact leading-coefficient ratio identities they satisfy under
//! s ↦ d − s.

use crate::error::{Error, Result};
use crate::gamma::{self, ExactGammaValue};
use crate::highprec::{self, Real};
use crate::report::sign_power_of_two;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PlaceType {
    Real,
    Complex,
}

/// Hodge numbers of weight j on a (d−1)-dimensional fiber at one infinite
/// place. `h[p]` is h(p, j−p) with the symmetric storage h(p,q) = h(q,p);
/// for a real place and even j = 2n the middle h(n,n) splits as
/// h_plus + h_minus under the de Rham conjugation.
#[derive(Clone, Debug)]
pub struct HodgeData {
    pub place: PlaceType,
    pub j: i64,
    pub d: i64,
    pub h: Vec<usize>,
    pub h_plus: usize,
    pub h_minus: usize,
}

impl HodgeData {
    pub fn validate(&self) -> Result<()> {
        if self.d < 1 || self.j < 0 || self.j > 2 * (self.d - 1) {
            return Err(Error::InvalidInput(format!(
                "weight {} out of range for dimension {}",
                self.j, self.d
            )));
        }
        if self.h.len() != self.j as usize + 1 {
            return Err(Error::InvalidInput("h must have j+1 entries".into()));
        }
        for (p, &v) in self.h.iter().enumerate() {
            let p = p as i64;
            let q = self.j - p;
            if v > 0 && (p > self.d - 1 || q > self.d - 1) {
                return Err(Error::InvalidInput(format!(
                    "h({p},{q}) nonzero outside the Hodge range"
                )));
            }
            if self.h[p as usize] != self.h[q as usize] {
                return Err(Error::InvalidInput("Hodge symmetry violated".into()));
            }
        }
        if self.place == PlaceType::Real && self.j % 2 == 0 {
            let n = (self.j / 2) as usize;
            if self.h_plus + self.h_minus != self.h[n] {
                return Err(Error::InvalidInput(
                    "h(n,+) + h(n,−) must equal h(n,n)".into(),
                ));
            }
        }
        Ok(())
    }

    /// Total Betti rank contribution B^j_v = Σ_{p+q=j} h(p,q).
    pub fn betti_rank(&self) -> usize {
        self.h.iter().sum()
    }

    /// Rank of the conjugation-fixed part at a real place.
    pub fn betti_plus(&self) -> usize {
        assert_eq!(self.place, PlaceType::Real);
        let below: usize = self
            .h
            .iter()
            .enumerate()
            .filter(|(p, _)| (*p as i64) < self.j - *p as i64)
            .map(|(_, &v)| v)
            .sum();
        if self.j % 2 == 0 {
            let n = self.j / 2;
            below + if n % 2 == 0 { self.h_plus } else { self.h_minus }
        } else {
            below
        }
    }

    /// The Serre-dual Hodge data: weight 2d−2−j with h'(p',q') = h(d−1−p',
    /// d−1−q'); the (n,±) split carries over unchanged.
    pub fn dual(&self) -> HodgeData {
        let jd = 2 * (self.d - 1) - self.j;
        let mut h = vec![0usize; jd as usize + 1];
        for (pd, slot) in h.iter_mut().enumerate() {
            let p = self.d - 1 - pd as i64;
            if p >= 0 && p <= self.j && self.j - p >= 0 {
                *slot = self.h.get(p as usize).copied().unwrap_or(0);
            }
        }
        HodgeData {
            place: self.place,
            j: jd,
            d: self.d,
            h,
            h_plus: self.h_plus,
            h_minus: self.h_minus,
        }
    }
}

/// Exact leading coefficient (and order) of the local factor Γ^j_v at s = r.
pub fn serre_gamma_leading(hodge: &HodgeData, r: i64) -> (ExactGammaValue, i64) {
    let mut value = ExactGammaValue::one();
    let mut order = 0i64;
    match hodge.place {
        PlaceType::Complex => {
            for (p, &mult) in hodge.h.iter().enumerate() {
                if mult == 0 {
                    continue;
                }
                let p = p as i64;
                let q = hodge.j - p;
                let (g, o) = gamma::gamma_c_star(r - p.min(q));
                value = value.mul(&g.pow(mult as i64));
                order += o * mult as i64;
            }
        }
        PlaceType::Real => {
            for (p, &mult) in hodge.h.iter().enumerate() {
                let p = p as i64;
                let q = hodge.j - p;
                if mult == 0 || p >= q {
                    continue;
                }
                let (g, o) = gamma::gamma_c_star(r - p);
                value = value.mul(&g.pow(mult as i64));
                order += o * mult as i64;
            }
            if hodge.j % 2 == 0 {
                let n = hodge.j / 2;
                if hodge.h_plus > 0 {
                    let (g, o) = gamma::gamma_r_star(r - n);
                    value = value.mul(&g.pow(hodge.h_plus as i64));
                    order += o * hodge.h_plus as i64;
                }
                if hodge.h_minus > 0 {
                    let (g, o) = gamma::gamma_r_star(r - n + 1);
                    value = value.mul(&g.pow(hodge.h_minus as i64));
                    order += o * hodge.h_minus as i64;
                }
            }
        }
    }
    (value, order)
}

/// Numeric Γ^j_v(s) at a generic real point (off the poles).
pub fn serre_gamma_factor(hodge: &HodgeData, s: &Real, prec: u32) -> Result<Real> {
    let wp = prec + 16;
    let pi = highprec::pi(wp);
    let gamma_r = |x: &Real| -> Result<Real> {
        // π^{-x/2} Γ(x/2)
        let g = gamma::gamma_real(&x.shl(-1), wp)?;
        Ok(highprec::pow(&pi, &x.shl(-1).neg(), wp).mul(&g, wp))
    };
    let gamma_c = |x: &Real| -> Result<Real> {
        let g = gamma::gamma_real(x, wp)?;
        Ok(highprec::pow(&pi.shl(1), &x.neg(), wp).mul(&g, wp))
    };
    let mut value = Real::one();
    match hodge.place {
        PlaceType::Complex => {
            for (p, &mult) in hodge.h.iter().enumerate() {
                if mult == 0 {
                    continue;
                }
                let p = p as i64;
                let q = hodge.j - p;
                let arg = s.sub(&Real::from_i64(p.min(q)), wp);
                value = value.mul(&gamma_c(&arg)?.pow_i64(mult as i64, wp), wp);
            }
        }
        PlaceType::Real => {
            for (p, &mult) in hodge.h.iter().enumerate() {
                let p = p as i64;
                if mult == 0 || p >= hodge.j - p {
                    continue;
                }
                let arg = s.sub(&Real::from_i64(p), wp);
                value = value.mul(&gamma_c(&arg)?.pow_i64(mult as i64, wp), wp);
            }
            if hodge.j % 2 == 0 {
                let n = hodge.j / 2;
                if hodge.h_plus > 0 {
                    let arg = s.sub(&Real::from_i64(n), wp);
                    value = value.mul(&gamma_r(&arg)?.pow_i64(hodge.h_plus as i64, wp), wp);
                }
                if hodge.h_minus > 0 {
                    let arg = s.sub(&Real::from_i64(n - 1), wp);
                    value = value.mul(&gamma_r(&arg)?.pow_i64(hodge.h_minus as i64, wp), wp);
                }
            }
        }
    }
    Ok(value)
}

/// Outcome of one exact ratio check: both sides, their π-exponents, and the
/// observed two-power.
#[derive(Clone, Debug)]
pub struct GammaRatioOutcome {
    pub lhs: ExactGammaValue,
    pub rhs: ExactGammaValue,
    pub pi_exponents_match: bool,
    pub two_power: Option<i64>,
    pub passed: bool,
}

fn ratio_outcome(lhs: ExactGammaValue, rhs: ExactGammaValue) -> GammaRatioOutcome {
    let pi_exponents_match = lhs.pi_half_exponent() == rhs.pi_half_exponent();
    let q = lhs.div(&rhs);
    let two_power = if q.pi_half_exponent() == 0 {
        sign_power_of_two(q.coeff())
    } else {
        None
    };
    GammaRatioOutcome {
        lhs,
        rhs,
        pi_exponents_match,
        passed: pi_exponents_match && two_power.is_some(),
        two_power,
    }
}

/// Real place: (Γ^j_v)*(r) / (Γ^{2d-2-j}_v)*(d−r) against
/// ∏_p Γ*(r−p)^{h(p,q)} · π^{−B(r−j/2) + (B^{j,r})⁻} for even j, resp.
/// π^{−B(r−(j+1)/2)} for odd j.
pub fn check_real_place_gamma_ratio(hodge: &HodgeData, r: i64) -> Result<GammaRatioOutcome> {
    hodge.validate()?;
    if hodge.place != PlaceType::Real {
        return Err(Error::InvalidInput("expected a real place".into()));
    }
    let (num, _) = serre_gamma_leading(hodge, r);
    let (den, _) = serre_gamma_leading(&hodge.dual(), hodge.d - r);
    let lhs = num.div(&den);
    let mut rhs = ExactGammaValue::one();
    for (p, &mult) in hodge.h.iter().enumerate() {
        if mult > 0 {
            rhs = rhs.mul(&gamma::gamma_star_int(r - p as i64).pow(mult as i64));
        }
    }
    let b = hodge.betti_rank() as i64;
    let pi_exp = if hodge.j % 2 == 0 {
        let b_minus_r = if r.rem_euclid(2) == 0 {
            b - hodge.betti_plus() as i64
        } else {
            hodge.betti_plus() as i64
        };
        -b * (2 * r - hodge.j) / 2 + b_minus_r
    } else {
        -b * (2 * r - hodge.j - 1) / 2
    };
    rhs = rhs.mul(&ExactGammaValue::new(
        num_rational::BigRational::from_integer(1.into()),
        2 * pi_exp,
        0,
    ));
    Ok(ratio_outcome(lhs, rhs))
}

/// Complex place: (Γ^j_v)*(r) / (Γ^{2d-2-j}_v)*(d−r) against
/// (∏_p Γ*(r−p)^{h(p,q)})² · π^{−B(2r−(j+1))}.
pub fn check_complex_place_gamma_ratio(hodge: &HodgeData, r: i64) -> Result<GammaRatioOutcome> {
    hodge.validate()?;
    if hodge.place != PlaceType::Complex {
        return Err(Error::InvalidInput("expected a complex place".into()));
    }
    let (num, _) = serre_gamma_leading(hodge, r);
    let (den, _) = serre_gamma_leading(&hodge.dual(), hodge.d - r);
    let lhs = num.div(&den);
    let mut rhs = ExactGammaValue::one();
    for (p, &mult) in hodge.h.iter().enumerate() {
        if mult > 0 {
            rhs = rhs.mul(&gamma::gamma_star_int(r - p as i64).pow(2 * mult as i64));
        }
    }
    let b = hodge.betti_rank() as i64;
    let pi_exp = -b * (2 * r - hodge.j - 1);
    rhs = rhs.mul(&ExactGammaValue::new(
        num_rational::BigRational::from_integer(1.into()),
        2 * pi_exp,
        0,
    ));
    Ok(ratio_outcome(lhs, rhs))
}

/// Seeded generator: dimensions ≤ 4, Hodge numbers ≤ 3, symmetry imposed.
pub fn random_hodge(rng: &mut ChaCha8Rng) -> HodgeData {
    loop {
        let d = rng.gen_range(1..=4i64);
        let j = rng.gen_range(0..=2 * (d - 1));
        let place = if rng.gen_bool(0.5) {
            PlaceType::Real
        } else {
            PlaceType::Complex
        };
        let mut h = vec![0usize; j as usize + 1];
        for p in 0..=j {
            let q = j - p;
            if p > q {
                h[p as usize] = h[q as usize];
                continue;
            }
            if p <= d - 1 && q <= d - 1 {
                h[p as usize] = rng.gen_range(0..=3);
            }
        }
        let (mut h_plus, mut h_minus) = (0, 0);
        if place == PlaceType::Real && j % 2 == 0 {
            let n = (j / 2) as usize;
            h_plus = rng.gen_range(0..=h[n]);
            h_minus = h[n] - h_plus;
        }
        let data = HodgeData {
            place,
            j,
            d,
            h,
            h_plus,
            h_minus,
        };
        if data.betti_rank() > 0 {
            return data;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use rand::SeedableRng;

    fn h00_real() -> HodgeData {
        // the number-field H^0 at a real place: h(0,0) = 1, fixed by c
        HodgeData {
            place: PlaceType::Real,
            j: 0,
            d: 1,
            h: vec![1],
            h_plus: 1,
            h_minus: 0,
        }
    }

    #[test]
    fn number_field_h0_case() {
        // r = 2, d = 1: LHS = Γ_R*(2)/Γ_R*(−1) = −1/(2π²);
        // RHS = Γ*(2) π^{−(B(r−0)+B⁻)} = π^{−2}
        let out = check_real_place_gamma_ratio(&h00_real(), 2).unwrap();
        assert!(out.pi_exponents_match);
        assert_eq!(out.two_power, Some(-1));
        assert!(out.passed);
        let lhs = out.lhs;
        assert_eq!(lhs.pi_half_exponent(), -4);
        assert_eq!(
            lhs.coeff(),
            &BigRational::new((-1).into(), 2.into())
        );
    }

    #[test]
    fn real_place_curve_case() {
        // j = 1, d = 2, h(0,1) = h(1,0) = 1 at a real place, r = 1
        let data = HodgeData {
            place: PlaceType::Real,
            j: 1,
            d: 2,
            h: vec![1, 1],
            h_plus: 0,
            h_minus: 0,
        };
        let out = check_real_place_gamma_ratio(&data, 1).unwrap();
        assert!(out.passed, "{:?}", out);
    }

    #[test]
    fn complex_place_weight_one() {
        // Γ^1_v(s) = Γ_C(s)² for h(0,1) = h(1,0) = 1
        let data = HodgeData {
            place: PlaceType::Complex,
            j: 1,
            d: 2,
            h: vec![1, 1],
            h_plus: 0,
            h_minus: 0,
        };
        let s = Real::from_i64(3);
        let v = serre_gamma_factor(&data, &s, 192).unwrap();
        // Γ_C(3) = (2π)^{-3}·2: value² = 4/(2π)^6
        let pi = highprec::pi(208);
        let want = Real::from_i64(4).div(&pi.shl(1).pow_i64(6, 208), 208);
        assert!(v.sub(&want, 192).contains_zero());
        for r in -5..=5 {
            let out = check_complex_place_gamma_ratio(&data, r).unwrap();
            assert!(out.passed, "r={r}: {:?}", out);
        }
    }

    #[test]
    fn random_sweep_both_places() {
        let mut rng = ChaCha8Rng::seed_from_u64(101);
        let mut real_seen = 0;
        let mut complex_seen = 0;
        for i in 0..100 {
            let data = random_hodge(&mut rng);
            for r in -5..=5 {
                let out = match data.place {
                    PlaceType::Real => {
                        real_seen += 1;
                        check_real_place_gamma_ratio(&data, r).unwrap()
                    }
                    PlaceType::Complex => {
                        complex_seen += 1;
                        check_complex_place_gamma_ratio(&data, r).unwrap()
                    }
                };
                assert!(out.passed, "instance {i} r={r}: {:?}", out);
            }
        }
        assert!(real_seen > 0 && complex_seen > 0);
    }

    #[test]
    fn duality_spot_check_on_gamma_factors() {
        // Γ^j_v(s) = Γ^{2d-2-j}_v(s + d − j − 1) at generic s
        let mut rng = ChaCha8Rng::seed_from_u64(103);
        for _ in 0..10 {
            let data = random_hodge(&mut rng);
            let s = Real::from_f64(rng.gen_range(30..60) as f64 / 7.0);
            let lhs = serre_gamma_factor(&data, &s, 160).unwrap();
            let shifted = s.add(&Real::from_i64(data.d - data.j - 1), 200);
            let rhs = serre_gamma_factor(&data.dual(), &shifted, 160).unwrap();
            let diff = lhs.sub(&rhs, 160);
            assert!(
                diff.contains_zero(),
                "j={} d={}: {} vs {}",
                data.j,
                data.d,
                lhs,
                rhs
            );
        }
    }
}
