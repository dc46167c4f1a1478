//! Base rings for module complexes: ℤ, or an order presented by integer
//! structure constants on a fixed ℤ-basis (ℤ[x]/(f) for monic f).

use crate::error::{Error, Result};
use crate::intmat::IMat;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::sync::Arc;

/// Ring element: coordinates on the ℤ-basis (length 1 for ℤ itself).
pub type RingElem = Vec<BigInt>;

#[derive(Clone, Debug)]
pub enum BaseRing {
    Int,
    Order(Arc<OrderData>),
}

#[derive(Debug)]
pub struct OrderData {
    pub rank: usize,
    /// basis products: table[i][j] = coordinates of b_i · b_j.
    pub table: Vec<Vec<RingElem>>,
    /// defining monic polynomial, ascending coefficients (last = 1).
    pub poly: Vec<BigInt>,
    pub label: String,
}

impl BaseRing {
    pub fn int() -> Self {
        BaseRing::Int
    }

    /// ℤ[x]/(f) for monic f, basis 1, x, …, x^(deg−1).
    pub fn from_poly(label: &str, poly: &[i64]) -> Result<Self> {
        let poly: Vec<BigInt> = poly.iter().map(|&c| BigInt::from(c)).collect();
        if poly.last() != Some(&BigInt::one()) {
            return Err(Error::InvalidInput("polynomial must be monic".into()));
        }
        let deg = poly.len() - 1;
        if deg == 0 {
            return Err(Error::InvalidInput("constant polynomial".into()));
        }
        // powers of x modulo f up to x^(2 deg - 2)
        let mut powers: Vec<RingElem> = Vec::new();
        let mut cur = vec![BigInt::zero(); deg];
        cur[0] = BigInt::one();
        powers.push(cur.clone());
        for _ in 1..(2 * deg).max(1) {
            // multiply by x: shift, reduce the overflow coefficient
            let carry = cur[deg - 1].clone();
            for i in (1..deg).rev() {
                cur[i] = cur[i - 1].clone();
            }
            cur[0] = BigInt::zero();
            if !carry.is_zero() {
                for i in 0..deg {
                    cur[i] -= &carry * &poly[i];
                }
            }
            powers.push(cur.clone());
        }
        let mut table = vec![vec![vec![BigInt::zero(); deg]; deg]; deg];
        for (i, row) in table.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = powers[i + j].clone();
            }
        }
        let ring = BaseRing::Order(Arc::new(OrderData {
            rank: deg,
            table,
            poly,
            label: label.to_string(),
        }));
        ring.check_axioms()?;
        Ok(ring)
    }

    pub fn rank(&self) -> usize {
        match self {
            BaseRing::Int => 1,
            BaseRing::Order(o) => o.rank,
        }
    }

    pub fn zero_elem(&self) -> RingElem {
        vec![BigInt::zero(); self.rank()]
    }

    pub fn one_elem(&self) -> RingElem {
        let mut e = self.zero_elem();
        e[0] = BigInt::one();
        e
    }

    pub fn from_int(&self, v: i64) -> RingElem {
        let mut e = self.zero_elem();
        e[0] = BigInt::from(v);
        e
    }

    pub fn add_elem(&self, a: &RingElem, b: &RingElem) -> RingElem {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    pub fn sub_elem(&self, a: &RingElem, b: &RingElem) -> RingElem {
        a.iter().zip(b).map(|(x, y)| x - y).collect()
    }

    pub fn neg_elem(&self, a: &RingElem) -> RingElem {
        a.iter().map(|x| -x).collect()
    }

    pub fn mul_elem(&self, a: &RingElem, b: &RingElem) -> RingElem {
        match self {
            BaseRing::Int => vec![&a[0] * &b[0]],
            BaseRing::Order(o) => {
                let mut out = vec![BigInt::zero(); o.rank];
                for i in 0..o.rank {
                    if a[i].is_zero() {
                        continue;
                    }
                    for j in 0..o.rank {
                        if b[j].is_zero() {
                            continue;
                        }
                        let c = &a[i] * &b[j];
                        for (k, t) in o.table[i][j].iter().enumerate() {
                            out[k] += &c * t;
                        }
                    }
                }
                out
            }
        }
    }

    pub fn is_zero_elem(&self, a: &RingElem) -> bool {
        a.iter().all(|x| x.is_zero())
    }

    /// Matrix of multiplication by `a` on the ℤ-basis.
    pub fn regular_repr(&self, a: &RingElem) -> IMat {
        let g = self.rank();
        let mut m = IMat::zeros(g, g);
        for j in 0..g {
            let mut basis = self.zero_elem();
            basis[j] = BigInt::one();
            let col = self.mul_elem(a, &basis);
            for (i, v) in col.into_iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    /// Norm of an element (determinant of its regular representation).
    pub fn norm(&self, a: &RingElem) -> BigInt {
        let m = self.regular_repr(a);
        let d = m.to_rational().det(&crate::linalg::QQ);
        d.numer().clone()
    }

    /// Commutativity, associativity, and unit laws on basis elements.
    pub fn check_axioms(&self) -> Result<()> {
        let g = self.rank();
        let basis: Vec<RingElem> = (0..g)
            .map(|i| {
                let mut e = self.zero_elem();
                e[i] = BigInt::one();
                e
            })
            .collect();
        let one = self.one_elem();
        for b in &basis {
            if self.mul_elem(&one, b) != *b {
                return Err(Error::InvalidInput("unit law fails".into()));
            }
        }
        for a in &basis {
            for b in &basis {
                if self.mul_elem(a, b) != self.mul_elem(b, a) {
                    return Err(Error::InvalidInput("multiplication not commutative".into()));
                }
                for c in &basis {
                    let lhs = self.mul_elem(&self.mul_elem(a, b), c);
                    let rhs = self.mul_elem(a, &self.mul_elem(b, c));
                    if lhs != rhs {
                        return Err(Error::InvalidInput("multiplication not associative".into()));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn same_ring(&self, o: &BaseRing) -> bool {
        match (self, o) {
            (BaseRing::Int, BaseRing::Int) => true,
            (BaseRing::Order(a), BaseRing::Order(b)) => {
                a.poly == b.poly && a.rank == b.rank
            }
            _ => false,
        }
    }
}

/// Map of free modules over a base ring: codomain_rank × domain_rank entries.
#[derive(Clone, Debug)]
pub struct FreeModuleMap {
    pub ring: BaseRing,
    pub domain_rank: usize,
    pub codomain_rank: usize,
    entries: Vec<RingElem>,
}

impl FreeModuleMap {
    pub fn zeros(ring: &BaseRing, codomain_rank: usize, domain_rank: usize) -> Self {
        FreeModuleMap {
            ring: ring.clone(),
            domain_rank,
            codomain_rank,
            entries: vec![ring.zero_elem(); codomain_rank * domain_rank],
        }
    }

    pub fn identity(ring: &BaseRing, n: usize) -> Self {
        let mut m = FreeModuleMap::zeros(ring, n, n);
        for i in 0..n {
            m.set(i, i, ring.one_elem());
        }
        m
    }

    pub fn at(&self, i: usize, j: usize) -> &RingElem {
        &self.entries[i * self.domain_rank + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: RingElem) {
        self.entries[i * self.domain_rank + j] = v;
    }

    pub fn compose(&self, inner: &FreeModuleMap) -> FreeModuleMap {
        assert!(self.ring.same_ring(&inner.ring));
        assert_eq!(self.domain_rank, inner.codomain_rank);
        let ring = &self.ring;
        let mut out = FreeModuleMap::zeros(ring, self.codomain_rank, inner.domain_rank);
        for i in 0..self.codomain_rank {
            for k in 0..self.domain_rank {
                let a = self.at(i, k);
                if ring.is_zero_elem(a) {
                    continue;
                }
                for j in 0..inner.domain_rank {
                    let b = inner.at(k, j);
                    if ring.is_zero_elem(b) {
                        continue;
                    }
                    let v = ring.add_elem(out.at(i, j), &ring.mul_elem(a, b));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn add(&self, o: &FreeModuleMap) -> FreeModuleMap {
        assert_eq!(self.domain_rank, o.domain_rank);
        assert_eq!(self.codomain_rank, o.codomain_rank);
        let mut out = self.clone();
        for (a, b) in out.entries.iter_mut().zip(&o.entries) {
            *a = self.ring.add_elem(a, b);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| self.ring.is_zero_elem(e))
    }

    pub fn equals(&self, o: &FreeModuleMap) -> bool {
        self.domain_rank == o.domain_rank
            && self.codomain_rank == o.codomain_rank
            && self.entries == o.entries
    }

    /// Underlying ℤ-matrix via the regular representation blocks.
    pub fn expand_to_int(&self) -> IMat {
        let g = self.ring.rank();
        let mut out = IMat::zeros(self.codomain_rank * g, self.domain_rank * g);
        for i in 0..self.codomain_rank {
            for j in 0..self.domain_rank {
                let block = self.ring.regular_repr(self.at(i, j));
                for bi in 0..g {
                    for bj in 0..g {
                        out.set(i * g + bi, j * g + bj, block.at(bi, bj).clone());
                    }
                }
            }
        }
        out
    }

    /// Determinant of the k×k submatrix with the given rows and columns,
    /// computed in the base ring by cofactor expansion.
    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> RingElem {
        assert_eq!(rows.len(), cols.len());
        let ring = &self.ring;
        match rows.len() {
            0 => ring.one_elem(),
            1 => self.at(rows[0], cols[0]).clone(),
            k => {
                let mut acc = ring.zero_elem();
                for (t, &r) in rows.iter().enumerate() {
                    let sub_rows: Vec<usize> =
                        rows.iter().copied().filter(|&x| x != r).collect();
                    let term = ring.mul_elem(self.at(r, cols[0]), &self.minor(&sub_rows, &cols[1..]));
                    if t % 2 == 0 {
                        acc = ring.add_elem(&acc, &term);
                    } else {
                        acc = ring.sub_elem(&acc, &term);
                    }
                }
                let _ = k;
                acc
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_order_arithmetic() {
        // ℤ[i]: x² + 1
        let ring = BaseRing::from_poly("Z[i]", &[1, 0, 1]).unwrap();
        let i_elem = {
            let mut e = ring.zero_elem();
            e[1] = BigInt::one();
            e
        };
        let sq = ring.mul_elem(&i_elem, &i_elem);
        assert_eq!(sq, vec![BigInt::from(-1), BigInt::zero()]);
        assert_eq!(ring.norm(&i_elem), BigInt::one());
        // N(1 + 2i) = 5
        let z = vec![BigInt::one(), BigInt::from(2)];
        assert_eq!(ring.norm(&z), BigInt::from(5));
    }

    #[test]
    fn non_monic_rejected() {
        assert!(BaseRing::from_poly("bad", &[1, 0, 2]).is_err());
    }

    #[test]
    fn expand_respects_composition() {
        let ring = BaseRing::from_poly("Z[sqrt-5]", &[5, 0, 1]).unwrap();
        let a = {
            // multiplication by 2α on a rank-1 module
            let mut m = FreeModuleMap::zeros(&ring, 1, 1);
            m.set(0, 0, vec![BigInt::zero(), BigInt::from(2)]);
            m
        };
        let comp = a.compose(&a);
        assert_eq!(comp.expand_to_int(), a.expand_to_int().mul(&a.expand_to_int()));
        // N(2α) = 4·5 = 20
        assert_eq!(
            ring.norm(&vec![BigInt::zero(), BigInt::from(2)]),
            BigInt::from(20)
        );
    }

    #[test]
    fn minor_matches_expansion() {
        let ring = BaseRing::int();
        let mut m = FreeModuleMap::zeros(&ring, 2, 2);
        m.set(0, 0, ring.from_int(2));
        m.set(0, 1, ring.from_int(3));
        m.set(1, 0, ring.from_int(5));
        m.set(1, 1, ring.from_int(7));
        let d = m.minor(&[0, 1], &[0, 1]);
        assert_eq!(d, vec![BigInt::from(-1)]);
    }
}
