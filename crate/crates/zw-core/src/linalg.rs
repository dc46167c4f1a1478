//! Dense linear algebra over a pluggable field: exact rationals for the
//! Appendix-style determinant machinery, complex balls for the numeric side.
//!
//! Pivoting is deterministic: first usable pivot for exact fields, best
//! lower-bounded magnitude for ball fields.

use crate::highprec::{Complex, Real};
use num_rational::BigRational;
use num_traits::{One, Zero};

pub trait Field {
    type Elem: Clone + std::fmt::Debug;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    /// Pivot preference; NEG_INFINITY means unusable.
    fn pivot_quality(&self, a: &Self::Elem) -> f64;
}

/// Exact rationals.
#[derive(Clone, Copy, Debug, Default)]
pub struct QQ;

impl Field for QQ {
    type Elem = BigRational;
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(v.into())
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn div(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a / b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a.clone()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn pivot_quality(&self, a: &BigRational) -> f64 {
        if a.is_zero() {
            f64::NEG_INFINITY
        } else {
            // deterministic first-usable-pivot policy: every nonzero is equal
            0.0
        }
    }
}

/// Complex balls at a fixed working precision. An entry counts as zero when
/// its center is below `zero_slack` times its accumulated error bound.
#[derive(Clone, Copy, Debug)]
pub struct CC {
    pub prec: u32,
    pub zero_slack_log2: f64,
}

impl CC {
    pub fn new(prec: u32) -> Self {
        // 2^12 slack over the accumulated bound for exactness decisions
        CC {
            prec,
            zero_slack_log2: 12.0,
        }
    }
}

impl Field for CC {
    type Elem = Complex;
    fn zero(&self) -> Complex {
        Complex::zero()
    }
    fn one(&self) -> Complex {
        Complex::one()
    }
    fn from_i64(&self, v: i64) -> Complex {
        Complex::from_real(Real::from_i64(v))
    }
    fn add(&self, a: &Complex, b: &Complex) -> Complex {
        a.add(b, self.prec)
    }
    fn sub(&self, a: &Complex, b: &Complex) -> Complex {
        a.sub(b, self.prec)
    }
    fn mul(&self, a: &Complex, b: &Complex) -> Complex {
        a.mul(b, self.prec)
    }
    fn div(&self, a: &Complex, b: &Complex) -> Complex {
        a.div(b, self.prec)
    }
    fn neg(&self, a: &Complex) -> Complex {
        a.neg()
    }
    fn is_zero(&self, a: &Complex) -> bool {
        let mag = a.re.abs_up().max(a.im.abs_up());
        let err = a.re.error_bound().max(a.im.error_bound());
        if mag.is_zero() {
            return true;
        }
        mag.log2() <= err.log2() + self.zero_slack_log2
    }
    fn pivot_quality(&self, a: &Complex) -> f64 {
        if self.is_zero(a) {
            f64::NEG_INFINITY
        } else {
            a.re.abs_low().max(a.im.abs_low()).log2()
        }
    }
}

#[derive(Debug)]
pub struct Matrix<F: Field> {
    pub rows: usize,
    pub cols: usize,
    data: Vec<F::Elem>,
}

impl<F: Field> Clone for Matrix<F> {
    fn clone(&self) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.clone(),
        }
    }
}

impl<F: Field> Matrix<F> {
    pub fn zeros(f: &F, rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![f.zero(); rows * cols],
        }
    }

    pub fn identity(f: &F, n: usize) -> Self {
        let mut m = Matrix::zeros(f, n, n);
        for i in 0..n {
            m.set(i, i, f.one());
        }
        m
    }

    pub fn from_rows(f: &F, rows: Vec<Vec<F::Elem>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c));
        let _ = f;
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn(f: &F, rows: usize, cols: usize, mut g: impl FnMut(usize, usize) -> F::Elem) -> Self {
        let _ = f;
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(g(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn at(&self, i: usize, j: usize) -> &F::Elem {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F::Elem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self, f: &F) -> Self {
        Matrix::from_fn(f, self.cols, self.rows, |i, j| self.at(j, i).clone())
    }

    pub fn mul(&self, f: &F, o: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.cols, o.rows, "dimension mismatch in matrix product");
        let mut out = Matrix::zeros(f, self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.at(k, j);
                    if f.is_zero(b) {
                        continue;
                    }
                    let v = f.add(out.at(i, j), &f.mul(a, b));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn add(&self, f: &F, o: &Matrix<F>) -> Matrix<F> {
        assert!(self.rows == o.rows && self.cols == o.cols);
        Matrix::from_fn(f, self.rows, self.cols, |i, j| f.add(self.at(i, j), o.at(i, j)))
    }

    pub fn neg(&self, f: &F) -> Matrix<F> {
        Matrix::from_fn(f, self.rows, self.cols, |i, j| f.neg(self.at(i, j)))
    }

    pub fn hstack(&self, f: &F, o: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.rows, o.rows);
        Matrix::from_fn(f, self.rows, self.cols + o.cols, |i, j| {
            if j < self.cols {
                self.at(i, j).clone()
            } else {
                o.at(i, j - self.cols).clone()
            }
        })
    }

    pub fn columns(&self, f: &F, idx: &[usize]) -> Matrix<F> {
        Matrix::from_fn(f, self.rows, idx.len(), |i, j| self.at(i, idx[j]).clone())
    }

    pub fn is_zero_matrix(&self, f: &F) -> bool {
        self.data.iter().all(|e| f.is_zero(e))
    }

    /// Row echelon: returns (echelon form, pivot column indices).
    fn echelon(&self, f: &F) -> (Matrix<F>, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row >= m.rows {
                break;
            }
            // best pivot in this column at or below `row`
            let mut best: Option<(usize, f64)> = None;
            for i in row..m.rows {
                let q = f.pivot_quality(m.at(i, col));
                if q > f64::NEG_INFINITY && best.map_or(true, |(_, bq)| q > bq) {
                    best = Some((i, q));
                }
            }
            let Some((p, _)) = best else { continue };
            if p != row {
                for j in 0..m.cols {
                    let a = m.at(row, j).clone();
                    let b = m.at(p, j).clone();
                    m.set(row, j, b);
                    m.set(p, j, a);
                }
            }
            let inv = f.div(&f.one(), m.at(row, col));
            for j in col..m.cols {
                if f.is_zero(m.at(row, j)) {
                    continue;
                }
                let v = f.mul(m.at(row, j), &inv);
                m.set(row, j, v);
            }
            for i in 0..m.rows {
                if i != row && !f.is_zero(m.at(i, col)) {
                    let c = m.at(i, col).clone();
                    for j in col..m.cols {
                        if f.is_zero(m.at(row, j)) {
                            continue;
                        }
                        let v = f.sub(m.at(i, j), &f.mul(&c, m.at(row, j)));
                        m.set(i, j, v);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self, f: &F) -> usize {
        self.echelon(f).1.len()
    }

    /// Columns of `self` at the pivot positions: a deterministic basis of the
    /// column space.
    pub fn image_basis(&self, f: &F) -> Matrix<F> {
        let (_, pivots) = self.echelon(f);
        self.columns(f, &pivots)
    }

    /// Basis of the kernel as matrix columns (free variables set to one).
    pub fn kernel_basis(&self, f: &F) -> Matrix<F> {
        let (ech, pivots) = self.echelon(f);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Matrix::zeros(f, self.cols, free.len());
        for (k, &fc) in free.iter().enumerate() {
            out.set(fc, k, f.one());
            for (r, &pc) in pivots.iter().enumerate() {
                out.set(pc, k, f.neg(ech.at(r, fc)));
            }
        }
        out
    }

    /// One solution X of self · X = rhs (free variables zero); None if inconsistent.
    pub fn solve(&self, f: &F, rhs: &Matrix<F>) -> Option<Matrix<F>> {
        assert_eq!(self.rows, rhs.rows);
        let aug = self.hstack(f, rhs);
        let (ech, pivots) = aug.echelon(f);
        // any pivot in the rhs block means inconsistency
        if pivots.iter().any(|&p| p >= self.cols) {
            return None;
        }
        let mut x = Matrix::zeros(f, self.cols, rhs.cols);
        for (r, &pc) in pivots.iter().enumerate() {
            for j in 0..rhs.cols {
                x.set(pc, j, ech.at(r, self.cols + j).clone());
            }
        }
        Some(x)
    }

    pub fn inverse(&self, f: &F) -> Option<Matrix<F>> {
        assert!(self.is_square());
        let sol = self.solve(f, &Matrix::identity(f, self.rows))?;
        if self.rank(f) < self.rows {
            return None;
        }
        Some(sol)
    }

    /// Determinant by fraction-full Gaussian elimination.
    pub fn det(&self, f: &F) -> F::Elem {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return f.one();
        }
        let mut m = self.clone();
        let mut det = f.one();
        for col in 0..n {
            let mut best: Option<(usize, f64)> = None;
            for i in col..n {
                let q = f.pivot_quality(m.at(i, col));
                if q > f64::NEG_INFINITY && best.map_or(true, |(_, bq)| q > bq) {
                    best = Some((i, q));
                }
            }
            let Some((p, _)) = best else {
                return f.zero();
            };
            if p != col {
                for j in 0..n {
                    let a = m.at(col, j).clone();
                    let b = m.at(p, j).clone();
                    m.set(col, j, b);
                    m.set(p, j, a);
                }
                det = f.neg(&det);
            }
            let piv = m.at(col, col).clone();
            det = f.mul(&det, &piv);
            for i in col + 1..n {
                if !f.is_zero(m.at(i, col)) {
                    let c = f.div(m.at(i, col), &piv);
                    for j in col..n {
                        let v = f.sub(m.at(i, j), &f.mul(&c, m.at(col, j)));
                        m.set(i, j, v);
                    }
                }
            }
        }
        det
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn m(rows: Vec<Vec<i64>>) -> Matrix<QQ> {
        Matrix::from_rows(
            &QQ,
            rows.into_iter()
                .map(|r| r.into_iter().map(q).collect())
                .collect(),
        )
    }

    #[test]
    fn det_and_rank() {
        let a = m(vec![vec![1, 2], vec![3, 4]]);
        assert_eq!(a.det(&QQ), q(-2));
        assert_eq!(a.rank(&QQ), 2);
        let s = m(vec![vec![1, 2], vec![2, 4]]);
        assert_eq!(s.det(&QQ), q(0));
        assert_eq!(s.rank(&QQ), 1);
    }

    #[test]
    fn kernel_and_image() {
        let a = m(vec![vec![1, 2, 3], vec![2, 4, 6]]);
        let k = a.kernel_basis(&QQ);
        assert_eq!(k.cols, 2);
        // A · k = 0
        assert!(a.mul(&QQ, &k).is_zero_matrix(&QQ));
        let im = a.image_basis(&QQ);
        assert_eq!(im.cols, 1);
    }

    #[test]
    fn solve_consistent_and_not() {
        let a = m(vec![vec![1, 0], vec![0, 0]]);
        let b = m(vec![vec![5], vec![0]]);
        let x = a.solve(&QQ, &b).unwrap();
        assert_eq!(x.at(0, 0), &q(5));
        let bad = m(vec![vec![0], vec![1]]);
        assert!(a.solve(&QQ, &bad).is_none());
    }

    #[test]
    fn inverse_round_trip() {
        let a = m(vec![vec![2, 1], vec![1, 1]]);
        let inv = a.inverse(&QQ).unwrap();
        let prod = a.mul(&QQ, &inv);
        assert_eq!(prod.at(0, 0), &q(1));
        assert_eq!(prod.at(0, 1), &q(0));
        assert_eq!(prod.at(1, 1), &q(1));
    }

    #[test]
    fn ball_field_rank_with_tolerance() {
        let f = CC::new(128);
        let one = f.one();
        let tiny = Complex::from_real(
            Real::from_i64(1)
                .shl(-200)
                .add(&Real::zero(), 128),
        );
        let a = Matrix::from_rows(&f, vec![vec![one.clone(), one.clone()], vec![one.clone(), one.add(&tiny, 128)]]);
        // entries differ by 2^-200: numerically rank 1 at 128-bit working precision
        assert_eq!(a.rank(&f), 1);
    }
}
