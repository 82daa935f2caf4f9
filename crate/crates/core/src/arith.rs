//! Word-sized modular arithmetic shared by the mod-p and mod-p^M layers.

use crate::error::{Error, Result};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

pub fn require_odd_prime(p: u64) -> Result<()> {
    if p > 2 && is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotOddPrime(p))
    }
}

/// Odd primes in the closed interval `[lo, hi]`.
pub fn odd_primes(lo: u64, hi: u64) -> Vec<u64> {
    (lo.max(3)..=hi).filter(|&n| n % 2 == 1 && is_prime(n)).collect()
}

#[inline]
pub fn mul_mod(a: u64, b: u64, q: u64) -> u64 {
    ((a as u128 * b as u128) % q as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, q: u64) -> u64 {
    let mut acc = 1 % q;
    base %= q;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, q);
        }
        base = mul_mod(base, base, q);
        exp >>= 1;
    }
    acc
}

/// Inverse of `a` modulo `q`, or `None` when `gcd(a, q) != 1`.
pub fn inv_mod(a: u64, q: u64) -> Option<u64> {
    let (mut r0, mut r1) = (q as i128, (a % q) as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let quo = r0 / r1;
        (r0, r1) = (r1, r0 - quo * r1);
        (s0, s1) = (s1, s0 - quo * s1);
    }
    if r0 != 1 {
        return None;
    }
    Some(s0.rem_euclid(q as i128) as u64)
}

/// Reduce a signed integer into `[0, q)`.
#[inline]
pub fn reduce_i64(a: i64, q: u64) -> u64 {
    (a as i128).rem_euclid(q as i128) as u64
}

#[inline]
pub fn neg_mod(a: u64, q: u64) -> u64 {
    if a == 0 {
        0
    } else {
        q - a
    }
}

/// p-adic valuation of a nonzero integer.
pub fn val_p(mut n: u64, p: u64) -> u32 {
    debug_assert!(n != 0);
    let mut v = 0;
    while n.is_multiple_of(p) {
        n /= p;
        v += 1;
    }
    v
}

/// Binomial coefficients `C(n, k)` reduced mod `q` for `0 <= k <= n <= n_max`, built by Pascal's rule.
pub fn binomial_table(n_max: usize, q: u64) -> Vec<Vec<u64>> {
    let mut rows: Vec<Vec<u64>> = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let mut row = vec![0u64; n + 1];
        row[0] = 1 % q;
        row[n] = 1 % q;
        for k in 1..n {
            row[k] = (rows[n - 1][k - 1] + rows[n - 1][k]) % q;
        }
        rows.push(row);
    }
    rows
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_and_inverses() {
        assert_eq!(odd_primes(1, 20), vec![3, 5, 7, 11, 13, 17, 19]);
        assert_eq!(inv_mod(2, 25), Some(13));
        assert_eq!(inv_mod(5, 25), None);
        assert_eq!(pow_mod(2, 10, 1000), 24);
        assert_eq!(val_p(250, 5), 3);
        assert!(require_odd_prime(2).is_err());
        assert!(require_odd_prime(9).is_err());
    }

    #[test]
    fn binomials() {
        let t = binomial_table(6, 1_000_000);
        assert_eq!(t[6][3], 20);
        assert_eq!(t[5][0], 1);
    }
}
