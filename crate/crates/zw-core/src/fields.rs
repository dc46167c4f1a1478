//! Invariants of ℚ and quadratic fields: discriminant, signature, class
//! number (reduced forms / analytic), fundamental unit and regulator via
//! continued fractions, roots of unity, Minkowski embeddings, Betti ranks,
//! ingested K-group tables, and the Weil-étale cohomology tables.

use crate::error::{Error, Result};
use crate::highprec::{self, Complex, Real};
use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// A number field given by a monic defining polynomial (ascending
/// coefficients, degree ≤ 2 for the computed-invariant paths).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldSpec {
    pub label: String,
    pub poly: Vec<i64>,
}

impl FieldSpec {
    pub fn new(label: &str, poly: &[i64]) -> Result<Self> {
        if poly.last() != Some(&1) {
            return Err(Error::Parse(format!(
                "field {label}: defining polynomial must be monic"
            )));
        }
        if poly.len() < 2 {
            return Err(Error::Parse(format!("field {label}: constant polynomial")));
        }
        Ok(FieldSpec {
            label: label.to_string(),
            poly: poly.to_vec(),
        })
    }

    pub fn rationals() -> Self {
        FieldSpec {
            label: "Q".into(),
            poly: vec![0, 1],
        }
    }

    pub fn degree(&self) -> usize {
        self.poly.len() - 1
    }

    pub fn is_rationals(&self) -> bool {
        self.degree() == 1
    }

    /// Field discriminant: 1 for ℚ; for quadratic fields the squarefree
    /// kernel rule (d if d ≡ 1 mod 4, else 4d).
    pub fn discriminant(&self) -> Result<i64> {
        match self.degree() {
            1 => Ok(1),
            2 => {
                // polynomial discriminant b² − 4c for x² + bx + c
                let b = self.poly[1];
                let c = self.poly[0];
                let delta = b * b - 4 * c;
                if delta == 0 {
                    return Err(Error::InvalidInput(format!(
                        "field {}: defining polynomial is not separable",
                        self.label
                    )));
                }
                let d = squarefree_part(delta);
                Ok(if d.rem_euclid(4) == 1 { d } else { 4 * d })
            }
            n => Err(Error::UnsupportedDegree(format!(
                "computed invariants stop at degree 2, got {n}"
            ))),
        }
    }

    /// (r1, r2): real and complex places.
    pub fn signature(&self) -> Result<(usize, usize)> {
        match self.degree() {
            1 => Ok((1, 0)),
            2 => {
                if self.discriminant()? > 0 {
                    Ok((2, 0))
                } else {
                    Ok((0, 1))
                }
            }
            n => Err(Error::UnsupportedDegree(format!("degree {n}"))),
        }
    }

    pub fn unit_rank(&self) -> Result<usize> {
        let (r1, r2) = self.signature()?;
        Ok(r1 + r2 - 1)
    }

    /// Number of roots of unity: 4 for ℚ(i), 6 for ℚ(√−3), else 2.
    pub fn roots_of_unity(&self) -> Result<u32> {
        Ok(match self.discriminant()? {
            -4 => 4,
            -3 => 6,
            _ => 2,
        })
    }

    /// The integral generator ω as a real or complex ball: √d or (1+√d)/2.
    pub fn omega_numeric(&self, prec: u32) -> Result<Complex> {
        let d = self.discriminant()?;
        if self.degree() == 1 {
            return Ok(Complex::one());
        }
        let d0 = if d % 4 == 0 { d / 4 } else { d };
        let sqrt = Real::from_i64(d0.abs()).sqrt(prec);
        let root = if d0 > 0 {
            Complex::from_real(sqrt)
        } else {
            Complex {
                re: Real::zero(),
                im: sqrt,
            }
        };
        if d % 4 == 0 {
            Ok(root)
        } else {
            // (1 + √d)/2
            Ok(root.add(&Complex::one(), prec).scale(&Real::from_f64(0.5), prec))
        }
    }
}

fn squarefree_part(n: i64) -> i64 {
    let sign = n.signum();
    let mut m = n.unsigned_abs();
    let mut out: i64 = 1;
    let mut p = 2u64;
    while p * p <= m {
        let mut e = 0;
        while m % p == 0 {
            m /= p;
            e += 1;
        }
        if e % 2 == 1 {
            out *= p as i64;
        }
        p += 1;
    }
    out *= m as i64;
    out * sign
}

/// Reduced binary quadratic forms (a, b, c) of discriminant d < 0:
/// |b| ≤ a ≤ c, with b ≥ 0 when |b| = a or a = c.
pub fn reduced_forms(d: i64) -> Vec<(i64, i64, i64)> {
    assert!(d < 0 && (d.rem_euclid(4) == 0 || d.rem_euclid(4) == 1));
    let mut out = Vec::new();
    let bound = ((-d) as f64 / 3.0).sqrt() as i64 + 1;
    for a in 1..=bound {
        for b in -a..=a {
            if (b * b - d) % (4 * a) != 0 {
                continue;
            }
            let c = (b * b - d) / (4 * a);
            if c < a {
                continue;
            }
            if (b < 0) && (b.abs() == a || a == c) {
                continue;
            }
            out.push((a, b, c));
        }
    }
    out
}

/// Class number: 1 for ℚ, reduced-form count for imaginary quadratic,
/// analytic formula (rounded and gated at 1e−6) for real quadratic.
pub fn class_number(spec: &FieldSpec, prec: u32) -> Result<u64> {
    if spec.is_rationals() {
        return Ok(1);
    }
    let d = spec.discriminant()?;
    if d < 0 {
        return Ok(reduced_forms(d).len() as u64);
    }
    // h = √d · L(1, χ_d) / (2 log ε)
    let l1 = crate::zeta::dirichlet_l_one(d, prec)?;
    let reg = regulator(spec, prec)?;
    let sqrt_d = Real::from_i64(d).sqrt(prec);
    let h = sqrt_d.mul(&l1, prec).div(&reg.shl(1), prec);
    let hf = h.to_f64();
    let rounded = hf.round();
    if (hf - rounded).abs() > 1e-6 || rounded < 1.0 {
        return Err(Error::Precision(format!(
            "analytic class number {hf} is not within 1e-6 of a positive integer"
        )));
    }
    Ok(rounded as u64)
}

/// Fundamental unit ε = x + y·ω (coordinates on the integral basis) of a
/// real quadratic field, from the continued fraction of ω.
pub fn fundamental_unit(spec: &FieldSpec) -> Result<(BigInt, BigInt)> {
    let d = spec.discriminant()?;
    if d <= 1 {
        return Err(Error::InvalidInput(format!(
            "{} has unit rank 0",
            spec.label
        )));
    }
    let d0 = if d % 4 == 0 { d / 4 } else { d };
    // continued fraction of ω = (P0 + √d0)/Q0
    let (p0, q0) = if d % 4 == 0 { (0i64, 1i64) } else { (1, 2) };
    let sqrt_floor = isqrt(d0 as u64) as i64;
    let mut p = p0;
    let mut q = q0;
    let mut conv_prev = (BigInt::one(), BigInt::zero()); // p_{-1}, q_{-1}
    let mut conv = (BigInt::zero(), BigInt::one()); // p_{-2}, q_{-2} staging
    let mut first_state: Option<(i64, i64)> = None;
    let mut num = (BigInt::zero(), BigInt::zero());
    for step in 0..10_000 {
        let a = (p + sqrt_floor).div_euclid(q);
        // convergent update
        let pk = BigInt::from(a) * &conv_prev.0 + &conv.0;
        let qk = BigInt::from(a) * &conv_prev.1 + &conv.1;
        conv = conv_prev;
        conv_prev = (pk, qk);
        // state update
        p = a * q - p;
        q = (d0 - p * p) / q;
        match first_state {
            None => first_state = Some((p, q)),
            Some(s) => {
                if (p, q) == s {
                    // period closed at this step; ε = p_{l-1} − ω̄ q_{l-1}
                    num = conv.clone();
                    let _ = step;
                    break;
                }
            }
        }
    }
    let (pk, qk) = num;
    if qk.is_zero() && pk.is_zero() {
        return Err(Error::Precision("continued fraction period not found".into()));
    }
    // ω̄ = −√d0 (d ≡ 0 mod 4)  or  (1 − √d)/2 = 1 − ω (d ≡ 1 mod 4)
    let (x, y) = if d % 4 == 0 {
        (pk, qk)
    } else {
        (&pk - &qk, qk)
    };
    // unit check: |N(x + yω)| = 1
    let norm = unit_norm(d, &x, &y);
    if !norm.abs().is_one() {
        return Err(Error::Precision(format!(
            "continued fraction produced a non-unit of norm {norm}"
        )));
    }
    Ok((x, y))
}

fn unit_norm(d: i64, x: &BigInt, y: &BigInt) -> BigInt {
    if d % 4 == 0 {
        let d0 = d / 4;
        x * x - BigInt::from(d0) * y * y
    } else {
        // N(x + yω) with ω = (1+√d)/2: x² + xy + y²(1−d)/4
        x * x + x * y + y * y * BigInt::from((1 - d) / 4)
    }
}

fn isqrt(n: u64) -> u64 {
    let mut x = (n as f64).sqrt() as u64;
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    while x * x > n {
        x -= 1;
    }
    x
}

/// Regulator: log of the fundamental unit for real quadratic fields, 1 when
/// the unit rank is zero.
pub fn regulator(spec: &FieldSpec, prec: u32) -> Result<Real> {
    if spec.unit_rank()? == 0 {
        return Ok(Real::one());
    }
    let (x, y) = fundamental_unit(spec)?;
    let omega = spec.omega_numeric(prec + 16)?.re;
    let eps = Real::from_bigint(x).add(&Real::from_bigint(y).mul(&omega, prec + 16), prec + 16);
    let eps = if eps.definitely_positive() {
        eps
    } else {
        eps.neg()
    };
    Ok(highprec::ln(&eps, prec))
}

/// The classical invariants bundle.
#[derive(Clone, Debug)]
pub struct FieldInvariants {
    pub degree: usize,
    pub d_f: i64,
    pub r1: usize,
    pub r2: usize,
    pub h: u64,
    pub regulator: Real,
    pub w: u32,
    pub fundamental_unit: Option<(BigInt, BigInt)>,
}

impl FieldInvariants {
    pub fn compute(spec: &FieldSpec, prec: u32) -> Result<Self> {
        let (r1, r2) = spec.signature()?;
        let fundamental_unit = if spec.unit_rank()? > 0 {
            Some(fundamental_unit(spec)?)
        } else {
            None
        };
        Ok(FieldInvariants {
            degree: spec.degree(),
            d_f: spec.discriminant()?,
            r1,
            r2,
            h: class_number(spec, prec)?,
            regulator: regulator(spec, prec)?,
            w: spec.roots_of_unity()?,
            fundamental_unit,
        })
    }

    /// hR/w as a ball.
    pub fn hr_over_w(&self, prec: u32) -> Real {
        Real::from_i64(self.h as i64)
            .mul(&self.regulator, prec)
            .div(&Real::from_i64(self.w as i64), prec)
    }
}

/// Betti ranks of the (−1)^r eigenspaces of conjugation on H^0 of the
/// complex points: a_r = r2 (r even) or r1+r2 (r odd); a_r + b_r = degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BettiRanks {
    pub a_r: usize,
    pub b_r: usize,
}

pub fn betti_ranks(spec: &FieldSpec, r: i64) -> Result<BettiRanks> {
    let (r1, r2) = spec.signature()?;
    let a_r = if r.rem_euclid(2) == 0 { r2 } else { r1 + r2 };
    Ok(BettiRanks {
        a_r,
        b_r: r1 + 2 * r2 - a_r,
    })
}

/// Borel rank of K_{2m-1}(O_F) for m ≥ 2: r2 for even m, r1 + r2 for odd m.
pub fn borel_rank(spec: &FieldSpec, m: i64) -> Result<usize> {
    assert!(m >= 2, "Borel rank applies to K_(2m-1) with m >= 2");
    let (r1, r2) = spec.signature()?;
    Ok(if m % 2 == 0 { r2 } else { r1 + r2 })
}

/// Matrix (σ_i(b_j)) of all embeddings applied to the integral basis.
pub fn embedding_matrix(spec: &FieldSpec, prec: u32) -> Result<Vec<Vec<Complex>>> {
    if spec.is_rationals() {
        return Ok(vec![vec![Complex::one()]]);
    }
    let omega = spec.omega_numeric(prec)?;
    let conj = omega.conj();
    let conj = if spec.discriminant()? > 0 {
        // the other real embedding sends √d ↦ −√d
        let d = spec.discriminant()?;
        let d0 = if d % 4 == 0 { d / 4 } else { d };
        let msqrt = Real::from_i64(d0).sqrt(prec).neg();
        if d % 4 == 0 {
            Complex::from_real(msqrt)
        } else {
            Complex::from_real(msqrt.add(&Real::one(), prec).shl(-1))
        }
    } else {
        conj
    };
    Ok(vec![
        vec![Complex::one(), omega],
        vec![Complex::one(), conj],
    ])
}

/// det(embeddings)² = d_F within tolerance, and det/√|d_F| ∈ {±1, ±i}.
pub fn check_discriminant_det(spec: &FieldSpec, prec: u32, tol: f64) -> Result<(f64, f64, bool)> {
    let m = embedding_matrix(spec, prec)?;
    let det = if m.len() == 1 {
        m[0][0].clone()
    } else {
        m[0][0]
            .mul(&m[1][1], prec)
            .sub(&m[0][1].mul(&m[1][0], prec), prec)
    };
    let d = spec.discriminant()?;
    let det2 = det.mul(&det, prec);
    let target = Complex::from_real(Real::from_i64(d));
    let defect = det2.sub(&target, prec).abs(prec).to_f64();
    // det / √|d| must be a fourth root of unity on the right axis
    let sqrt_abs = Real::from_i64(d.abs()).sqrt(prec);
    let unit = det.scale(&sqrt_abs.recip(prec), prec);
    let (re, im) = unit.to_f64_pair();
    let axis_defect = if d > 0 {
        (re.abs() - 1.0).abs().max(im.abs())
    } else {
        (im.abs() - 1.0).abs().max(re.abs())
    };
    Ok((defect, axis_defect, defect <= tol && axis_defect <= tol))
}

/// K-group table entry, always ingested with provenance.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct KGroupEntry {
    pub rank: usize,
    pub torsion: u64,
    pub source: String,
}

#[derive(Clone, Debug, Default)]
pub struct KGroupTable {
    pub field: String,
    pub entries: BTreeMap<i64, KGroupEntry>,
}

impl KGroupTable {
    pub fn get(&self, n: i64) -> Result<&KGroupEntry> {
        self.entries.get(&n).ok_or_else(|| {
            Error::MissingData(format!("K_{n}({}) not in the ingested table", self.field))
        })
    }

    pub fn torsion(&self, n: i64) -> Result<BigUint> {
        Ok(BigUint::from(self.get(n)?.torsion))
    }

    /// Borel-rule consistency for every odd-index entry.
    pub fn validate_ranks(&self, spec: &FieldSpec) -> Result<()> {
        for (&n, e) in &self.entries {
            if n >= 3 && n % 2 == 1 {
                let m = (n + 1) / 2;
                let expected = borel_rank(spec, m)?;
                if e.rank != expected {
                    return Err(Error::Parse(format!(
                        "K_{n} rank {} contradicts the Borel rank {expected}",
                        e.rank
                    )));
                }
            }
        }
        Ok(())
    }
}

/// One row of a Weil-étale cohomology table. All orders are up to finite
/// 2-torsion (the exact 2-part is not specified by the framework).
#[derive(Clone, Debug, Serialize)]
pub struct CohomologyRow {
    pub degree: i64,
    pub rank: usize,
    /// torsion order, `None` when the entry is torsion-free (order 1)
    pub torsion: Option<u64>,
    pub description: String,
    pub sources: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct WeilEtaleTable {
    pub field: String,
    pub r: i64,
    pub up_to_two_torsion: bool,
    pub rows: Vec<CohomologyRow>,
}

/// The Weil-étale motivic cohomology table of Spec O_F at twist r.
pub fn weil_etale_table(
    spec: &FieldSpec,
    r: i64,
    inv: &FieldInvariants,
    ktable: Option<&KGroupTable>,
) -> Result<WeilEtaleTable> {
    let unit_rank = inv.r1 + inv.r2 - 1;
    let mut rows = Vec::new();
    let row = |degree, rank, torsion: Option<u64>, description: &str, sources: Vec<String>| {
        CohomologyRow {
            degree,
            rank,
            torsion,
            description: description.to_string(),
            sources,
        }
    };
    match r {
        0 => {
            rows.push(row(0, 1, None, "Z", vec![]));
            rows.push(row(1, 0, None, "0", vec![]));
            rows.push(row(
                2,
                unit_rank,
                Some(inv.h),
                "extension of Hom(units, Z) by the dual of the class group",
                vec![],
            ));
            rows.push(row(3, 0, Some(inv.w as u64), "dual of roots of unity", vec![]));
        }
        1 => {
            rows.push(row(1, unit_rank, Some(inv.w as u64), "unit group", vec![]));
            rows.push(row(2, 0, Some(inv.h), "class group", vec![]));
            rows.push(row(3, 1, None, "Z", vec![]));
        }
        r if r > 1 => {
            let kt = ktable.ok_or_else(|| {
                Error::MissingData(format!("K-group table needed for twist {r}"))
            })?;
            let e1 = kt.get(2 * r - 1)?;
            let e2 = kt.get(2 * r - 2)?;
            rows.push(row(
                1,
                borel_rank(spec, r)?,
                Some(e1.torsion),
                &format!("K_{}(O_F)", 2 * r - 1),
                vec![e1.source.clone()],
            ));
            rows.push(row(
                2,
                0,
                Some(e2.torsion),
                &format!("K_{}(O_F)", 2 * r - 2),
                vec![e2.source.clone()],
            ));
        }
        r => {
            let kt = ktable.ok_or_else(|| {
                Error::MissingData(format!("K-group table needed for twist {r}"))
            })?;
            let even = kt.get(-2 * r)?;
            let odd = kt.get(1 - 2 * r)?;
            let rank = borel_rank(spec, 1 - r)?;
            rows.push(row(
                2,
                rank,
                Some(even.torsion),
                &format!(
                    "extension of Hom(K_{}, Z) by the dual of K_{}",
                    1 - 2 * r,
                    -2 * r
                ),
                vec![even.source.clone(), odd.source.clone()],
            ));
            rows.push(row(
                3,
                0,
                Some(odd.torsion),
                &format!("dual of K_{}(O_F) torsion", 1 - 2 * r),
                vec![odd.source.clone()],
            ));
        }
    }
    Ok(WeilEtaleTable {
        field: spec.label.clone(),
        r,
        up_to_two_torsion: true,
        rows,
    })
}

// ---------------------------------------------------------------------------
// file formats (format 1)

#[derive(Debug, Serialize, Deserialize)]
struct FieldFile {
    format: u32,
    label: String,
    poly: Vec<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    h: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    w: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    d: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    reg: Option<String>,
}

/// Parse a field file; provided invariants are cross-checked against the
/// computed ones where both exist.
pub fn load_field_file(content: &str) -> Result<FieldSpec> {
    let file: FieldFile =
        serde_json::from_str(content).map_err(|e| Error::Parse(format!("field file: {e}")))?;
    if file.format != 1 {
        return Err(Error::Parse(format!(
            "unsupported field file format {}",
            file.format
        )));
    }
    let spec = FieldSpec::new(&file.label, &file.poly)?;
    if let Some(d) = file.d {
        let computed = spec.discriminant()?;
        if d != computed {
            return Err(Error::Parse(format!(
                "field {}: stated discriminant {d} != computed {computed}",
                file.label
            )));
        }
    }
    if let Some(w) = file.w {
        let computed = spec.roots_of_unity()?;
        if w != computed {
            return Err(Error::Parse(format!(
                "field {}: stated w {w} != computed {computed}",
                file.label
            )));
        }
    }
    Ok(spec)
}

#[derive(Debug, Serialize, Deserialize)]
struct KGroupFile {
    format: u32,
    field: String,
    groups: Vec<KGroupFileEntry>,
}

#[derive(Debug, Serialize, Deserialize)]
struct KGroupFileEntry {
    n: i64,
    rank: usize,
    torsion: u64,
    source: String,
}

pub fn load_kgroup_file(content: &str) -> Result<KGroupTable> {
    let file: KGroupFile =
        serde_json::from_str(content).map_err(|e| Error::Parse(format!("K-group file: {e}")))?;
    if file.format != 1 {
        return Err(Error::Parse(format!(
            "unsupported K-group file format {}",
            file.format
        )));
    }
    let mut entries = BTreeMap::new();
    for g in file.groups {
        if g.n < 2 {
            return Err(Error::Parse(format!("K-group index {} below 2", g.n)));
        }
        if g.torsion == 0 {
            return Err(Error::Parse("torsion order must be positive".into()));
        }
        entries.insert(
            g.n,
            KGroupEntry {
                rank: g.rank,
                torsion: g.torsion,
                source: g.source,
            },
        );
    }
    Ok(KGroupTable {
        field: file.field,
        entries,
    })
}

/// The seven shipped fixture fields.
pub fn fixture_fields() -> Vec<FieldSpec> {
    vec![
        FieldSpec::new("Q", &[0, 1]).unwrap(),
        FieldSpec::new("Q_i", &[1, 0, 1]).unwrap(),
        FieldSpec::new("Q_sqrt-3", &[1, -1, 1]).unwrap(),
        FieldSpec::new("Q_sqrt-5", &[5, 0, 1]).unwrap(),
        FieldSpec::new("Q_sqrt-23", &[6, -1, 1]).unwrap(),
        FieldSpec::new("Q_sqrt2", &[-2, 0, 1]).unwrap(),
        FieldSpec::new("Q_sqrt5", &[-1, -1, 1]).unwrap(),
    ]
}

/// The standard published K-groups of ℤ in the range the checks need.
pub fn kgroups_of_z() -> KGroupTable {
    let src = "Weibel, Algebraic K-theory of rings of integers in local and global fields (survey table); 2-primary part Rognes-Weibel";
    let data: [(i64, usize, u64); 10] = [
        (2, 0, 2),
        (3, 0, 48),
        (4, 0, 1),
        (5, 1, 1),
        (6, 0, 1),
        (7, 0, 240),
        (8, 0, 1),
        (9, 1, 2),
        (10, 0, 2),
        (11, 0, 1008),
    ];
    KGroupTable {
        field: "Q".into(),
        entries: data
            .into_iter()
            .map(|(n, rank, torsion)| {
                (
                    n,
                    KGroupEntry {
                        rank,
                        torsion,
                        source: src.to_string(),
                    },
                )
            })
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn by_label(label: &str) -> FieldSpec {
        fixture_fields()
            .into_iter()
            .find(|f| f.label == label)
            .unwrap()
    }

    #[test]
    fn discriminants() {
        assert_eq!(by_label("Q").discriminant().unwrap(), 1);
        assert_eq!(by_label("Q_i").discriminant().unwrap(), -4);
        assert_eq!(by_label("Q_sqrt-3").discriminant().unwrap(), -3);
        assert_eq!(by_label("Q_sqrt-5").discriminant().unwrap(), -20);
        assert_eq!(by_label("Q_sqrt-23").discriminant().unwrap(), -23);
        assert_eq!(by_label("Q_sqrt2").discriminant().unwrap(), 8);
        assert_eq!(by_label("Q_sqrt5").discriminant().unwrap(), 5);
        // x² − 12 generates Q(√3): squarefree reduction then congruence
        let f = FieldSpec::new("t", &[-12, 0, 1]).unwrap();
        assert_eq!(f.discriminant().unwrap(), 12);
    }

    #[test]
    fn reduced_form_counts() {
        assert_eq!(reduced_forms(-4).len(), 1);
        assert_eq!(reduced_forms(-20).len(), 2);
        assert_eq!(reduced_forms(-23).len(), 3);
        assert_eq!(reduced_forms(-3).len(), 1);
        // h(−47) = 5, a classical value
        assert_eq!(reduced_forms(-47).len(), 5);
    }

    #[test]
    fn fundamental_units() {
        // ε = 1 + √2
        let (x, y) = fundamental_unit(&by_label("Q_sqrt2")).unwrap();
        assert_eq!((x, y), (BigInt::from(1), BigInt::from(1)));
        // ε = (1+√5)/2 = ω
        let (x, y) = fundamental_unit(&by_label("Q_sqrt5")).unwrap();
        assert_eq!((x, y), (BigInt::from(0), BigInt::from(1)));
        // ε(√13) = (3+√13)/2: x + yω with ω = (1+√13)/2 → (1, 1)
        let f = FieldSpec::new("Q_sqrt13", &[-3, -1, 1]).unwrap();
        assert_eq!(f.discriminant().unwrap(), 13);
        let (x, y) = fundamental_unit(&f).unwrap();
        assert_eq!((x, y), (BigInt::from(1), BigInt::from(1)));
    }

    #[test]
    fn regulators_match_logs() {
        let prec = 128;
        let r = regulator(&by_label("Q_sqrt2"), prec).unwrap();
        let expect = Real::from_f64((1.0 + 2f64.sqrt()).ln());
        assert!((r.to_f64() - expect.to_f64()).abs() < 1e-12);
        let r5 = regulator(&by_label("Q_sqrt5"), prec).unwrap();
        assert!((r5.to_f64() - ((1.0 + 5f64.sqrt()) / 2.0).ln()).abs() < 1e-12);
        // unit rank 0
        let r = regulator(&by_label("Q_sqrt-5"), prec).unwrap();
        assert_eq!(r.to_f64(), 1.0);
    }

    #[test]
    fn roots_of_unity_rule() {
        assert_eq!(by_label("Q").roots_of_unity().unwrap(), 2);
        assert_eq!(by_label("Q_i").roots_of_unity().unwrap(), 4);
        assert_eq!(by_label("Q_sqrt-3").roots_of_unity().unwrap(), 6);
        assert_eq!(by_label("Q_sqrt-23").roots_of_unity().unwrap(), 2);
    }

    #[test]
    fn betti_rank_rule() {
        let b = betti_ranks(&by_label("Q"), 2).unwrap();
        assert_eq!((b.a_r, b.b_r), (0, 1));
        let b = betti_ranks(&by_label("Q_i"), 3).unwrap();
        assert_eq!((b.a_r, b.b_r), (1, 1));
        let b = betti_ranks(&by_label("Q_sqrt2"), 0).unwrap();
        assert_eq!((b.a_r, b.b_r), (0, 2));
        // a_r + b_r = degree always
        for f in fixture_fields() {
            for r in -4..=4 {
                let b = betti_ranks(&f, r).unwrap();
                assert_eq!(b.a_r + b.b_r, f.degree());
            }
        }
    }

    #[test]
    fn embedding_determinants() {
        for f in fixture_fields() {
            let (defect, axis, ok) = check_discriminant_det(&f, 192, 1e-20).unwrap();
            assert!(ok, "{}: defect {defect} axis {axis}", f.label);
        }
    }

    #[test]
    fn kgroup_table_is_borel_consistent() {
        let kt = kgroups_of_z();
        kt.validate_ranks(&FieldSpec::rationals()).unwrap();
        assert_eq!(kt.get(3).unwrap().torsion, 48);
        assert!(kt.get(12).is_err());
    }

    #[test]
    fn field_file_round_trip_and_errors() {
        let spec = load_field_file(
            r#"{"format":1,"label":"Q_sqrt-5","poly":[5,0,1],"d":-20}"#,
        )
        .unwrap();
        assert_eq!(spec.discriminant().unwrap(), -20);
        // minimal Q file
        let q = load_field_file(r#"{"format":1,"label":"Q","poly":[0,1]}"#).unwrap();
        assert!(q.is_rationals());
        // stated invariant contradicting the computed one
        assert!(load_field_file(r#"{"format":1,"label":"x","poly":[5,0,1],"d":-21}"#).is_err());
        // malformed json
        assert!(matches!(
            load_field_file("{"),
            Err(Error::Parse(_))
        ));
        // non-monic
        assert!(load_field_file(r#"{"format":1,"label":"x","poly":[5,0,2]}"#).is_err());
    }

    #[test]
    fn weil_table_shapes() {
        let prec = 128;
        let kt = kgroups_of_z();
        let q = FieldSpec::rationals();
        let inv = FieldInvariants::compute(&q, prec).unwrap();
        // r = 0 for Q: H^0 = Z, H^2 rank 0, H^3 order 2
        let t = weil_etale_table(&q, 0, &inv, None).unwrap();
        assert_eq!(t.rows[0].rank, 1);
        assert_eq!(t.rows[2].rank, 0);
        assert_eq!(t.rows[3].torsion, Some(2));
        // r = −1 for Q: H^2 rank 0 torsion |K_2| = 2; H^3 order |K_3| = 48
        let t = weil_etale_table(&q, -1, &inv, Some(&kt)).unwrap();
        assert_eq!(t.rows[0].degree, 2);
        assert_eq!(t.rows[0].rank, 0);
        assert_eq!(t.rows[0].torsion, Some(2));
        assert_eq!(t.rows[1].torsion, Some(48));
        // vanishing outside degrees 2, 3 for r < 0
        assert_eq!(t.rows.len(), 2);
        assert!(t.up_to_two_torsion);
        // missing K-data
        assert!(matches!(
            weil_etale_table(&q, 7, &inv, Some(&kt)),
            Err(Error::MissingData(_))
        ));
    }
}
