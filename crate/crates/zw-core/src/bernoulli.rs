//! Exact Bernoulli numbers, cached. Convention: B_1 = -1/2.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::sync::{Mutex, OnceLock};

fn binomial(n: usize, k: usize) -> BigInt {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k.min(n - k) {
        num *= n - i;
        den *= i + 1;
    }
    num / den
}

/// B_n as an exact rational.
pub fn bernoulli(n: usize) -> BigRational {
    static CACHE: OnceLock<Mutex<Vec<BigRational>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(vec![BigRational::one()]));
    let mut v = cache.lock().unwrap();
    while v.len() <= n {
        let m = v.len();
        // sum_{j=0}^{m} C(m+1, j) B_j = 0  for m >= 1
        let mut acc = BigRational::zero();
        for (j, b) in v.iter().enumerate() {
            acc += BigRational::from_integer(binomial(m + 1, j)) * b;
        }
        let bm = -acc / BigRational::from_integer(BigInt::from(m as i64 + 1));
        v.push(bm);
    }
    v[n].clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn known_values() {
        assert_eq!(bernoulli(0), q(1, 1));
        assert_eq!(bernoulli(1), q(-1, 2));
        assert_eq!(bernoulli(2), q(1, 6));
        assert_eq!(bernoulli(3), q(0, 1));
        assert_eq!(bernoulli(4), q(-1, 30));
        assert_eq!(bernoulli(10), q(5, 66));
        assert_eq!(bernoulli(12), q(-691, 2730));
    }
}
