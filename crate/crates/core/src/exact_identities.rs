//! Exact rational polynomials and the one-variable Hoffman (generalized Dilcher) identity
//!
//! ```text
//! sum_{N >= n_1 >= ... >= n_m >= 1} (-1)^{n_1} C(N, n_1) t^{n_m} / (n_1^{k_1} ... n_m^{k_m})
//!   = sum_{N >= n_1 >= ... >= n_{m'} >= 1} ((1 - t)^{n_{m'}} - 1) / (n_1^{k'_1} ... n_{m'}^{k'_{m'}})
//! ```
//!
//! where `k' = k^∨`. This module also hosts a brute-force chain enumerator used as an
//! independent oracle for the mod-p layer.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::finite_polylogs::{FpPoly, Variable};
use crate::indices::Index;

/// A polynomial with exact rational coefficients, trailing zeros stripped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatPoly {
    coeffs: Vec<BigRational>,
}

impl RatPoly {
    pub fn new(coeffs: Vec<BigRational>) -> Self {
        let mut p = RatPoly { coeffs };
        while p.coeffs.last().is_some_and(Zero::is_zero) {
            p.coeffs.pop();
        }
        p
    }

    pub fn zero() -> Self {
        RatPoly { coeffs: Vec::new() }
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> BigRational {
        self.coeffs.get(n).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn eval(&self, t: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * t + c)
    }

    /// Reduce modulo an odd prime `p`; `None` if some denominator is divisible by `p`.
    pub fn reduce_mod_p(&self, p: u64) -> Option<FpPoly> {
        let c = self.coeffs.iter().map(|r| rational_mod_p(r, p)).collect::<Option<Vec<_>>>()?;
        Some(FpPoly::new(p, c))
    }
}

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("({c})"),
                1 => format!("({c})t"),
                _ => format!("({c})t^{i}"),
            })
            .collect();
        f.write_str(&terms.join(" + "))
    }
}

/// `r mod p`, or `None` when `p` divides the denominator.
pub fn rational_mod_p(r: &BigRational, p: u64) -> Option<u64> {
    let pb = BigInt::from(p);
    let num = r.numer().mod_floor(&pb).to_u64().unwrap();
    let den = r.denom().mod_floor(&pb).to_u64().unwrap();
    let inv = crate::arith::inv_mod(den, p)?;
    Some(crate::arith::mul_mod(num, inv, p))
}

fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn inv_pow(n: u64, e: u32) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(n).pow(e))
}

fn binomials(n: u64) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for k in 1..=n {
        let next = &row[k as usize - 1] * BigInt::from(n - k + 1) / BigInt::from(k);
        row.push(next);
    }
    row
}

/// `w(n) = sum over chains N >= n_1 >= ... >= n_m = n` of `outer(n_1) / prod n_i^{k_i}`,
/// built by suffix sums from the outermost variable inwards.
fn inner_weights(n_max: u64, k: &Index, outer: impl Fn(u64) -> BigRational) -> Vec<BigRational> {
    let n = n_max as usize;
    let parts = k.parts();
    let mut term: Vec<BigRational> =
        (0..=n_max).map(|j| if j == 0 { BigRational::zero() } else { outer(j) * inv_pow(j, parts[0]) }).collect();
    for &e in &parts[1..] {
        let mut acc = BigRational::zero();
        let mut next = vec![BigRational::zero(); n + 1];
        for j in (1..=n).rev() {
            acc += &term[j];
            next[j] = &acc * inv_pow(j as u64, e);
        }
        term = next;
    }
    term
}

/// Left-hand side of the identity as a polynomial in `t`.
pub fn dilcher_lhs(n_max: u64, k: &Index) -> RatPoly {
    assert!(n_max >= 1);
    let binom = binomials(n_max);
    let w = inner_weights(n_max, k, |j| {
        let b = BigRational::from_integer(binom[j as usize].clone());
        if j % 2 == 1 {
            -b
        } else {
            b
        }
    });
    RatPoly::new(w)
}

/// Right-hand side of the identity, using the Hoffman dual of `k`.
pub fn dilcher_rhs(n_max: u64, k: &Index) -> RatPoly {
    assert!(n_max >= 1);
    let dual = k.hoffman_dual();
    let w = inner_weights(n_max, &dual, |_| BigRational::one());
    // sum_n w(n) ((1 - t)^n - 1)
    let mut coeffs = vec![BigRational::zero(); n_max as usize + 1];
    for n in 1..=n_max {
        if w[n as usize].is_zero() {
            continue;
        }
        let binom = binomials(n);
        for (i, b) in binom.iter().enumerate().skip(1) {
            let signed = if i % 2 == 1 { -b.clone() } else { b.clone() };
            coeffs[i] += &w[n as usize] * BigRational::from_integer(signed);
        }
    }
    RatPoly::new(coeffs)
}

pub fn check_dilcher(n_max: u64, k: &Index) -> bool {
    dilcher_lhs(n_max, k) == dilcher_rhs(n_max, k)
}

/// Brute-force star polylogarithm truncated at `n_max`: enumerates every chain
/// `n_max >= n_1 >= ... >= n_m >= 1` explicitly and sums exact rationals.
pub fn star_polylog_exact(n_max: u64, k: &Index, var: Variable) -> RatPoly {
    fn rec(parts: &[u32], upper: u64, first: Option<u64>, acc: BigRational, var: Variable, out: &mut [BigRational]) {
        let Some((&e, rest)) = parts.split_first() else {
            return;
        };
        for n in 1..=upper {
            let term = &acc * inv_pow(n, e);
            let first = first.or(Some(n));
            if rest.is_empty() {
                let deg = match var {
                    Variable::Outer => first.unwrap(),
                    Variable::Inner => n,
                };
                out[deg as usize] += term;
            } else {
                rec(rest, n, first, term, var, out);
            }
        }
    }
    let mut out = vec![BigRational::zero(); n_max as usize + 1];
    rec(k.parts(), n_max, None, BigRational::one(), var, &mut out);
    RatPoly::new(out)
}

/// `sum_{n=1}^{N} (-1)^n C(N, n) / n^m`, the left side of Dilcher's classical identity.
pub fn dilcher_classical_lhs(n_max: u64, m: u32) -> BigRational {
    let binom = binomials(n_max);
    (1..=n_max).fold(BigRational::zero(), |acc, n| {
        let b = BigRational::from_integer(binom[n as usize].clone()) * inv_pow(n, m);
        if n % 2 == 1 {
            acc - b
        } else {
            acc + b
        }
    })
}

/// Exact Bernoulli numbers `B_0, ..., B_n` (with `B_1 = -1/2`) from
/// `sum_{j=0}^{n} C(n+1, j) B_j = 0`.
pub fn bernoulli_exact(n: usize) -> Vec<BigRational> {
    let mut b: Vec<BigRational> = vec![BigRational::one()];
    for k in 1..=n {
        let binom = binomials(k as u64 + 1);
        let mut s = BigRational::zero();
        for (j, bj) in b.iter().enumerate() {
            if !bj.is_zero() {
                s += BigRational::from_integer(binom[j].clone()) * bj;
            }
        }
        b.push(-s / int(k as i64 + 1));
    }
    b
}

/// True when `p` divides the numerator of `r` (in lowest terms).
pub fn numerator_divisible_by(r: &BigRational, p: u64) -> bool {
    (r.numer().abs() % BigInt::from(p)).is_zero()
}
