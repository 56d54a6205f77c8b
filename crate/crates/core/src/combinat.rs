//! Small exact combinatorial tables.

use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// `n choose k` as a big integer; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// `n choose k` for small arguments.
pub fn binomial_u64(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k as u128 {
        acc = acc * (n as u128 - i) / (i + 1);
    }
    u64::try_from(acc).expect("binomial overflows u64")
}

/// Falling factorial `(d)_m = d (d-1) ... (d-m+1)` of an integer.
pub fn falling(d: i64, m: u32) -> i64 {
    (0..m as i64).map(|j| d - j).product()
}

/// `n`th Catalan number.
pub fn catalan(n: u64) -> BigInt {
    binomial(2 * n, n) / (n + 1)
}

static STIRLING2: OnceLock<RwLock<Vec<Vec<u64>>>> = OnceLock::new();

/// Stirling number of the second kind `S(n, k)`, from a cached triangle.
///
/// Fits in `u64` for `n <= 25`, far beyond any moment order used here.
pub fn stirling2(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let table = STIRLING2.get_or_init(|| RwLock::new(vec![vec![1]]));
    {
        let t = table.read().unwrap();
        if n < t.len() {
            return t[n][k];
        }
    }
    let mut t = table.write().unwrap();
    while t.len() <= n {
        let m = t.len();
        let prev = &t[m - 1];
        let mut row = vec![0u64; m + 1];
        for j in 1..=m {
            let a = if j < m { prev[j] * j as u64 } else { 0 };
            row[j] = a + prev[j - 1];
        }
        t.push(row);
    }
    t[n][k]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stirling_rows() {
        let row4: Vec<u64> = (0..=4).map(|k| stirling2(4, k)).collect();
        assert_eq!(row4, vec![0, 1, 7, 6, 1]);
        assert_eq!(stirling2(0, 0), 1);
        assert_eq!(stirling2(10, 3), 9330);
    }

    #[test]
    fn powers_expand_into_falling_factorials() {
        for x in -6i64..=6 {
            for n in 0..=7u32 {
                let sum: i64 = (0..=n as usize).map(|k| stirling2(n as usize, k) as i64 * falling(x, k as u32)).sum();
                assert_eq!(sum, x.pow(n));
            }
        }
    }

    #[test]
    fn catalan_values() {
        let c: Vec<BigInt> = (0..8).map(catalan).collect();
        let want = [1, 1, 2, 5, 14, 42, 132, 429];
        assert!(c.iter().zip(want).all(|(a, b)| *a == BigInt::from(b)));
        assert_eq!(catalan(12), BigInt::from(208012));
        assert_eq!(binomial_u64(10, 3), 120);
        assert_eq!(falling(-1, 2), 2);
        assert_eq!(falling(1, 2), 0);
    }
}
