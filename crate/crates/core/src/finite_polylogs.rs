//! Finite polylogarithms and finite star-multiple polylogarithms as polynomials
//! over `F_p`, Bernoulli numbers mod `p`, and the functional equations relating them.
//!
//! For an index `k = (k_1, ..., k_m)` and an odd prime `p`:
//!
//! ```text
//! £*_{p,k}(t)  = sum_{p-1 >= n_1 >= ... >= n_m >= 1} t^{n_1} / (n_1^{k_1} ... n_m^{k_m})
//! £~*_{p,k}(t) = same sum with t^{n_m} in place of t^{n_1}
//! ζ*_p(k)      = £*_{p,k}(1)
//! ```
//!
//! All of these have `p`-integral coefficients; the helpers in this module can
//! produce them modulo `p` or modulo any power `p^e`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::{binomial_table, inv_mod, mul_mod, neg_mod, pow_mod, require_odd_prime};
use crate::error::{Error, Result};
use crate::indices::Index;

/// A polynomial over `F_p` in canonical form (no trailing zero coefficients).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FpPoly {
    prime: u64,
    coeffs: Vec<u64>,
}

/// An element of `F_p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FpValue {
    pub prime: u64,
    pub value: u64,
}

impl FpValue {
    pub fn new(prime: u64, value: i64) -> Self {
        FpValue { prime, value: crate::arith::reduce_i64(value, prime) }
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }
}

impl fmt::Display for FpValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self.value, self.prime)
    }
}

impl FpPoly {
    pub fn new(prime: u64, coeffs: Vec<u64>) -> Self {
        let mut poly = FpPoly { prime, coeffs: coeffs.into_iter().map(|c| c % prime).collect() };
        poly.normalize();
        poly
    }

    pub fn from_signed(prime: u64, coeffs: &[i64]) -> Self {
        FpPoly::new(prime, coeffs.iter().map(|&c| crate::arith::reduce_i64(c, prime)).collect())
    }

    pub fn zero(prime: u64) -> Self {
        FpPoly { prime, coeffs: Vec::new() }
    }

    pub fn monomial(prime: u64, coeff: u64, degree: usize) -> Self {
        let mut c = vec![0; degree + 1];
        c[degree] = coeff;
        FpPoly::new(prime, c)
    }

    fn normalize(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    /// Coefficient of `t^n` (zero past the degree).
    pub fn coeff(&self, n: usize) -> u64 {
        self.coeffs.get(n).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, t: u64) -> u64 {
        let p = self.prime;
        self.coeffs.iter().rev().fold(0, |acc, &c| (mul_mod(acc, t % p, p) + c) % p)
    }

    pub fn add(&self, other: &FpPoly) -> FpPoly {
        assert_eq!(self.prime, other.prime);
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n).map(|i| (self.coeff(i) + other.coeff(i)) % self.prime).collect();
        FpPoly::new(self.prime, c)
    }

    pub fn sub(&self, other: &FpPoly) -> FpPoly {
        assert_eq!(self.prime, other.prime);
        let p = self.prime;
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n).map(|i| (self.coeff(i) + p - other.coeff(i)) % p).collect();
        FpPoly::new(p, c)
    }

    pub fn scale(&self, s: u64) -> FpPoly {
        let p = self.prime;
        FpPoly::new(p, self.coeffs.iter().map(|&c| mul_mod(c, s % p, p)).collect())
    }

    pub fn mul(&self, other: &FpPoly) -> FpPoly {
        assert_eq!(self.prime, other.prime);
        if self.is_zero() || other.is_zero() {
            return FpPoly::zero(self.prime);
        }
        let p = self.prime;
        let mut c = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                c[i + j] = (c[i + j] + a * b) % p;
            }
        }
        FpPoly::new(p, c)
    }

    /// `f(a + b t)` by Horner's rule.
    pub fn compose_affine(&self, a: u64, b: u64) -> FpPoly {
        let p = self.prime;
        let lin = FpPoly::new(p, vec![a % p, b % p]);
        let mut acc = FpPoly::zero(p);
        for &c in self.coeffs.iter().rev() {
            acc = acc.mul(&lin).add(&FpPoly::new(p, vec![c]));
        }
        acc
    }

    /// `t^n f(1/t)`; requires `deg f <= n`.
    pub fn reciprocal(&self, n: usize) -> FpPoly {
        assert!(self.coeffs.len() <= n + 1, "reciprocal needs deg f <= {n}");
        let mut c = vec![0u64; n + 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            c[n - i] = a;
        }
        FpPoly::new(self.prime, c)
    }
}

impl fmt::Display for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| match (i, c) {
                (0, c) => c.to_string(),
                (1, 1) => "t".to_string(),
                (1, c) => format!("{c}t"),
                (i, 1) => format!("t^{i}"),
                (i, c) => format!("{c}t^{i}"),
            })
            .collect();
        f.write_str(&terms.join(" + "))
    }
}

/// Which summation variable carries the power of `t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variable {
    /// `t^{n_1}` (the largest variable): `£*`.
    Outer,
    /// `t^{n_m}` (the smallest variable): `£~*`.
    Inner,
}

/// Coefficients `c_0, ..., c_{p-1}` of a star polylogarithm reduced modulo `modulus`,
/// which must be a power of `p` (all denominators `n < p` are then invertible).
///
/// Chains `n_1 >= ... >= n_m` are summed by accumulating prefix (or suffix) sums one
/// part at a time, so the cost is `O(depth * p)`.
pub fn star_coefficients_mod(p: u64, k: &Index, modulus: u64, var: Variable) -> Vec<u64> {
    let q = modulus;
    let n_max = (p - 1) as usize;
    let inv: Vec<u64> =
        (0..=n_max as u64).map(|n| if n == 0 { 0 } else { inv_mod(n, q).expect("n < p is a unit") }).collect();
    let inv_pow = |n: usize, e: u32| pow_mod(inv[n], e as u64, q);

    let parts = k.parts();
    let order: Vec<u32> = match var {
        Variable::Outer => parts.iter().rev().copied().collect(),
        Variable::Inner => parts.to_vec(),
    };
    // term[n] for the current variable, summed over the already-processed ones
    let mut term: Vec<u64> = (0..=n_max).map(|n| if n == 0 { 0 } else { inv_pow(n, order[0]) }).collect();
    for &e in &order[1..] {
        let mut acc = 0u64;
        let mut next = vec![0u64; n_max + 1];
        match var {
            Variable::Outer => {
                for n in 1..=n_max {
                    acc = (acc + term[n]) % q;
                    next[n] = mul_mod(inv_pow(n, e), acc, q);
                }
            }
            Variable::Inner => {
                for n in (1..=n_max).rev() {
                    acc = (acc + term[n]) % q;
                    next[n] = mul_mod(inv_pow(n, e), acc, q);
                }
            }
        }
        term = next;
    }
    term
}

/// `£_{p,m}(t) = sum_{n=1}^{p-1} t^n / n^m` over `F_p`.
pub fn fpl(p: u64, m: u32) -> Result<FpPoly> {
    require_odd_prime(p)?;
    if m == 0 {
        return Err(Error::OutOfRange("weight m must be positive".into()));
    }
    let c = (0..p).map(|n| if n == 0 { 0 } else { pow_mod(inv_mod(n, p).unwrap(), m as u64, p) }).collect();
    Ok(FpPoly::new(p, c))
}

/// `£*_{p,k}(t)` over `F_p`.
pub fn fsmp_star(p: u64, k: &Index) -> Result<FpPoly> {
    require_odd_prime(p)?;
    Ok(FpPoly::new(p, star_coefficients_mod(p, k, p, Variable::Outer)))
}

/// `£~*_{p,k}(t)` over `F_p`.
pub fn fsmp_star_tilde(p: u64, k: &Index) -> Result<FpPoly> {
    require_odd_prime(p)?;
    Ok(FpPoly::new(p, star_coefficients_mod(p, k, p, Variable::Inner)))
}

/// `ζ*_p(k) = £*_{p,k}(1)`.
pub fn fmzv_star(p: u64, k: &Index) -> Result<FpValue> {
    let poly = fsmp_star(p, k)?;
    Ok(FpValue { prime: p, value: poly.eval(1) })
}

/// `B_n mod p` for `0 <= n <= p - 3` from
/// `B_n = sum_{k=0}^{n} 1/(k+1) sum_{j=0}^{k} (-1)^j C(k,j) j^n` (so `B_1 = -1/2`).
pub fn bernoulli_mod_p(p: u64, n: u64) -> Result<FpValue> {
    require_odd_prime(p)?;
    if n + 3 > p {
        return Err(Error::OutOfRange(format!("need 0 <= n <= p-3, got n={n}, p={p}")));
    }
    let binom = binomial_table(n as usize, p);
    let powers: Vec<u64> = (0..=n).map(|j| if j == 0 && n == 0 { 1 } else { pow_mod(j, n, p) }).collect();
    let mut total = 0u64;
    for (k, row) in binom.iter().enumerate().take(n as usize + 1) {
        let mut inner = 0u64;
        for (j, (&b, &pw)) in row.iter().zip(&powers).enumerate().take(k + 1) {
            let t = mul_mod(b, pw, p);
            inner = if j % 2 == 0 { (inner + t) % p } else { (inner + p - t) % p };
        }
        let w = inv_mod(k as u64 + 1, p).unwrap();
        total = (total + mul_mod(w, inner, p)) % p;
    }
    Ok(FpValue { prime: p, value: total })
}

/// All `B_n mod p` for `0 <= n <= p - 3` via `sum_{j=0}^{n} C(n+1, j) B_j = 0`.
pub fn bernoulli_table_mod_p(p: u64) -> Result<Vec<u64>> {
    require_odd_prime(p)?;
    let top = (p - 3) as usize;
    let binom = binomial_table(top + 1, p);
    let mut b = vec![0u64; top + 1];
    b[0] = 1;
    for n in 1..=top {
        let s = (0..n).fold(0, |acc, j| (acc + mul_mod(binom[n + 1][j], b[j], p)) % p);
        b[n] = mul_mod(neg_mod(s, p), inv_mod(n as u64 + 1, p).unwrap(), p);
    }
    Ok(b)
}

/// An odd prime is regular when it divides none of `B_2, B_4, ..., B_{p-3}`.
pub fn is_regular(p: u64) -> Result<bool> {
    require_odd_prime(p)?;
    for k in (2..=p.saturating_sub(3)).step_by(2) {
        if bernoulli_mod_p(p, k)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `£~*_{p,k}(t) = £~*_{p,k^∨}(1-t) - ζ*_p(k^∨)` in `F_p[t]`.
pub fn check_hoffman_congruence(p: u64, k: &Index) -> Result<bool> {
    let dual = k.hoffman_dual();
    let lhs = fsmp_star_tilde(p, k)?;
    let zeta = fmzv_star(p, &dual)?;
    let rhs = fsmp_star_tilde(p, &dual)?.compose_affine(1, p - 1).sub(&FpPoly::new(p, vec![zeta.value]));
    Ok(lhs == rhs)
}

/// Both reversal identities
/// `£*_{p,k}(t) = (-1)^{wt} t^p £~*_{p,rev k}(1/t)` and
/// `£~*_{p,k}(t) = (-1)^{wt} t^p £*_{p,rev k}(1/t)` in `F_p[t]`.
pub fn check_reversal(p: u64, k: &Index) -> Result<bool> {
    let rev = k.reverse();
    let sign = if k.weight().is_multiple_of(2) { 1 } else { p - 1 };
    let n = p as usize;
    let first = fsmp_star(p, k)? == fsmp_star_tilde(p, &rev)?.reciprocal(n).scale(sign);
    let second = fsmp_star_tilde(p, k)? == fsmp_star(p, &rev)?.reciprocal(n).scale(sign);
    Ok(first && second)
}

/// Right-hand side of the new functional equation,
/// `(t^p - 1) £*_{p,k^∨}(t/(t-1)) - t^p ζ*_p(k^∨)`, cleared of denominators via
/// `(t^p - 1)(t/(t-1))^n = t^n (t-1)^{p-n}` over `F_p`.
pub fn new_fn_eq_rhs(p: u64, k: &Index) -> Result<FpPoly> {
    let dual = k.hoffman_dual();
    let inner = fsmp_star(p, &dual)?;
    let zeta = fmzv_star(p, &dual)?;
    let n_top = p as usize;
    // powers[e] = (t - 1)^e
    let t_minus_one = FpPoly::new(p, vec![p - 1, 1]);
    let mut powers = vec![FpPoly::new(p, vec![1])];
    for e in 1..=n_top {
        powers.push(powers[e - 1].mul(&t_minus_one));
    }
    let mut acc = vec![0u64; n_top + 1];
    for (n, &c) in inner.coeffs().iter().enumerate() {
        if c == 0 {
            continue;
        }
        for (i, &a) in powers[n_top - n].coeffs().iter().enumerate() {
            acc[n + i] = (acc[n + i] + mul_mod(c, a, p)) % p;
        }
    }
    acc[n_top] = (acc[n_top] + p - zeta.value) % p;
    Ok(FpPoly::new(p, acc))
}

/// `£*_{p,k}(t) = (t^p - 1) £*_{p,k^∨}(t/(t-1)) - t^p ζ*_p(k^∨)` in `F_p[t]`.
pub fn check_new_fn_eq(p: u64, k: &Index) -> Result<bool> {
    Ok(fsmp_star(p, k)? == new_fn_eq_rhs(p, k)?)
}

/// `£_{p,m}(-1) = (1 - 2^{m-1}) / (2^{m-2} m) * B_{p-m}` mod `p`, for odd `m` with `1 < m < p - 1`.
pub fn check_bernoulli_polylog(p: u64, m: u32) -> Result<bool> {
    let (lhs, rhs) = bernoulli_polylog_sides(p, m)?;
    Ok(lhs == rhs)
}

/// Both sides of the Bernoulli congruence for `£_{p,m}(-1)`.
pub fn bernoulli_polylog_sides(p: u64, m: u32) -> Result<(FpValue, FpValue)> {
    require_odd_prime(p)?;
    let m64 = m as u64;
    if m.is_multiple_of(2) || m <= 1 || m64 + 1 >= p {
        return Err(Error::Precondition(format!("need odd m with 1 < m < p-1, got m={m}, p={p}")));
    }
    let lhs = fpl(p, m)?.eval(p - 1);
    let num = (1 + p - pow_mod(2, m64 - 1, p)) % p;
    let den = mul_mod(pow_mod(2, m64 - 2, p), m64 % p, p);
    let b = bernoulli_mod_p(p, p - m64)?.value;
    let rhs = mul_mod(mul_mod(num, inv_mod(den, p).unwrap(), p), b, p);
    Ok((FpValue { prime: p, value: lhs }, FpValue { prime: p, value: rhs }))
}

/// `£*_{p,{1}^m}(1/2) mod p`.
pub fn half_value(p: u64, m: u32) -> Result<FpValue> {
    require_odd_prime(p)?;
    if m == 0 {
        return Err(Error::OutOfRange("m must be positive".into()));
    }
    let half = inv_mod(2, p).unwrap();
    Ok(FpValue { prime: p, value: fsmp_star(p, &Index::ones(m as usize))?.eval(half) })
}

/// `£*_{p,{1}^m}(1/2) = 0` mod `p` for even `m` and `p > m + 1`.
pub fn check_half_vanishing(p: u64, m: u32) -> Result<bool> {
    if m == 0 || m % 2 == 1 || (m as u64) + 1 >= p {
        return Err(Error::Precondition(format!("need even m > 0 with p > m+1, got m={m}, p={p}")));
    }
    Ok(half_value(p, m)?.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn idx(s: &str) -> Index {
        s.parse().unwrap()
    }

    #[test]
    fn fpl_examples() {
        assert_eq!(fpl(5, 2).unwrap(), FpPoly::new(5, vec![0, 1, 4, 4, 1]));
        assert_eq!(fpl(3, 1).unwrap(), FpPoly::new(3, vec![0, 1, 2]));
        for p in [3, 5, 7, 11] {
            for m in 1..5 {
                assert_eq!(fpl(p, m).unwrap().eval(0), 0);
            }
        }
        assert!(fpl(9, 2).is_err());
        assert!(fpl(2, 2).is_err());
    }

    #[test]
    fn star_examples() {
        assert_eq!(fsmp_star(3, &idx("1,1")).unwrap(), FpPoly::new(3, vec![0, 1]));
        assert_eq!(fsmp_star_tilde(3, &idx("1,1")).unwrap(), FpPoly::new(3, vec![0, 0, 1]));
        assert_eq!(fmzv_star(3, &idx("1")).unwrap().value, 0);
        assert_eq!(fmzv_star(3, &idx("1,1")).unwrap().value, 1);
    }

    #[test]
    fn depth_one_consistency() {
        for p in crate::arith::odd_primes(3, 100) {
            for m in 1..=10 {
                let k = Index::new(vec![m]).unwrap();
                let base = fpl(p, m).unwrap();
                assert_eq!(fsmp_star(p, &k).unwrap(), base);
                assert_eq!(fsmp_star_tilde(p, &k).unwrap(), base);
            }
        }
    }

    #[test]
    fn wolstenholme_vanishing() {
        for p in crate::arith::odd_primes(3, 100) {
            assert_eq!(fmzv_star(p, &idx("1")).unwrap().value, 0, "p={p}");
        }
    }

    #[test]
    fn bernoulli_examples() {
        assert_eq!(bernoulli_mod_p(7, 0).unwrap().value, 1);
        assert_eq!(bernoulli_mod_p(7, 4).unwrap().value, 3);
        assert_eq!(bernoulli_mod_p(37, 32).unwrap().value, 0);
        assert!(bernoulli_mod_p(7, 5).is_err());
    }

    #[test]
    fn bernoulli_table_agrees_with_double_sum() {
        for p in crate::arith::odd_primes(5, 60) {
            let table = bernoulli_table_mod_p(p).unwrap();
            for n in 0..=p - 3 {
                assert_eq!(table[n as usize], bernoulli_mod_p(p, n).unwrap().value, "p={p} n={n}");
            }
        }
    }

    #[test]
    fn regularity_examples() {
        assert!(is_regular(7).unwrap());
        assert!(!is_regular(37).unwrap());
        assert!(!is_regular(59).unwrap());
        assert!(is_regular(3).unwrap());
    }

    #[test]
    fn hoffman_examples() {
        assert!(check_hoffman_congruence(3, &idx("2")).unwrap());
        assert_eq!(fsmp_star_tilde(3, &idx("2")).unwrap(), FpPoly::new(3, vec![0, 1, 1]));
        for p in crate::arith::odd_primes(3, 50) {
            assert!(check_hoffman_congruence(p, &idx("1")).unwrap());
        }
    }

    #[test]
    fn reversal_examples() {
        assert!(check_reversal(5, &idx("2")).unwrap());
        assert!(check_reversal(3, &idx("1,1")).unwrap());
    }

    #[test]
    fn new_fn_eq_examples() {
        assert_eq!(new_fn_eq_rhs(3, &idx("1")).unwrap(), FpPoly::new(3, vec![0, 1, 2]));
        assert!(check_new_fn_eq(3, &idx("1")).unwrap());
        for p in [5, 7, 11] {
            for k in Index::up_to_weight(3) {
                assert_eq!(new_fn_eq_rhs(p, &k).unwrap().eval(0), 0);
            }
        }
    }

    #[test]
    fn functional_equations_small_sweep() {
        for p in crate::arith::odd_primes(3, 50) {
            for k in Index::up_to_weight(4) {
                assert!(check_hoffman_congruence(p, &k).unwrap(), "hoffman p={p} k={k}");
                assert!(check_reversal(p, &k).unwrap(), "reversal p={p} k={k}");
                assert!(check_new_fn_eq(p, &k).unwrap(), "new fn eq p={p} k={k}");
            }
        }
    }

    #[test]
    fn new_fn_eq_applied_twice_returns() {
        // the dual of the dual is the original index, so the check on k^∨ is the same family
        for p in [5, 7, 13] {
            for k in Index::up_to_weight(4) {
                let d = k.hoffman_dual();
                assert_eq!(
                    check_new_fn_eq(p, &d).unwrap(),
                    check_new_fn_eq(p, &d.hoffman_dual().hoffman_dual()).unwrap()
                );
                assert_eq!(new_fn_eq_rhs(p, &d.hoffman_dual()).unwrap(), new_fn_eq_rhs(p, &k).unwrap());
            }
        }
    }

    #[test]
    fn bernoulli_polylog_examples() {
        let (l, r) = bernoulli_polylog_sides(7, 3).unwrap();
        assert_eq!((l.value, r.value), (2, 2));
        let (l, r) = bernoulli_polylog_sides(5, 3).unwrap();
        assert_eq!((l.value, r.value), (2, 2));
        assert!(check_bernoulli_polylog(7, 2).is_err());
        assert!(check_bernoulli_polylog(7, 1).is_err());
        assert!(check_bernoulli_polylog(7, 7).is_err());
    }

    #[test]
    fn half_vanishing_examples() {
        assert!(check_half_vanishing(5, 2).unwrap());
        assert!(check_half_vanishing(7, 2).unwrap());
        assert_eq!(half_value(5, 1).unwrap().value, 3);
        assert!(check_half_vanishing(5, 1).is_err());
        assert!(check_half_vanishing(5, 4).is_err());
    }

    #[test]
    fn poly_display() {
        assert_eq!(fpl(5, 2).unwrap().to_string(), "t + 4t^2 + 4t^3 + t^4");
        assert_eq!(FpPoly::zero(5).to_string(), "0");
    }
}
