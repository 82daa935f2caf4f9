//! Families indexed by primes, compared "at all but finitely many `p`".
//!
//! A [`PrimeFamily`] holds one payload per odd prime in a finite window. Two families
//! are equal in `A = (prod_p F_p) / (sum_p F_p)` when they agree at every prime above
//! both thresholds; disagreements below the thresholds are reported but do not count.

use std::collections::BTreeMap;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::odd_primes;
use crate::error::{Error, Result};
use crate::etale_congruence::{check_main_congruence, ZArg};
use crate::finite_polylogs::{
    check_new_fn_eq, fmzv_star, fpl, fsmp_star, fsmp_star_tilde, new_fn_eq_rhs, FpPoly, FpValue,
};
use crate::indices::Index;
use crate::padic_cyclotomic::{CycRing, Valuation, DEFAULT_PRECISION};

/// Per-prime object of a family.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Payload {
    Poly(FpPoly),
    Value(FpValue),
    Check { passed: bool, observed: Option<Valuation> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Entry {
    Value(Payload),
    Skipped(String),
}

/// Which per-prime object to build.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilyKind {
    /// `(£_{p,m})_p`, twist `m - 1`.
    APolylog(u32),
    /// `(£*_{p,k})_p`.
    AStar(Index),
    /// `(£~*_{p,k})_p`.
    AStarTilde(Index),
    /// `(ζ*_p(k))_p`.
    AMzvStar(Index),
    /// `(sum_n c_n t^n (t-1)^{p-n} - t^p ζ*_p(k^∨))_p`, the other side of the functional equation.
    KeyFnEqRhs(Index),
}

impl FamilyKind {
    /// Build a kind from its identifier and a parameter (`m` or an index like `1,2`).
    pub fn parse(name: &str, param: &str) -> Result<FamilyKind> {
        let index = || Index::from_str(param);
        Ok(match name {
            "a_polylog" => {
                FamilyKind::APolylog(param.trim().parse().map_err(|_| Error::InvalidIndex(param.to_string()))?)
            }
            "a_star" => FamilyKind::AStar(index()?),
            "a_star_tilde" => FamilyKind::AStarTilde(index()?),
            "a_mzv_star" => FamilyKind::AMzvStar(index()?),
            "key_fn_eq_rhs" => FamilyKind::KeyFnEqRhs(index()?),
            other => return Err(Error::UnknownKind(other.to_string())),
        })
    }

    fn threshold(&self) -> u64 {
        match self {
            FamilyKind::APolylog(m) => next_prime_above(*m as u64 + 1),
            _ => 3,
        }
    }

    fn twist(&self) -> u32 {
        match self {
            FamilyKind::APolylog(m) => m.saturating_sub(1),
            _ => 0,
        }
    }

    fn evaluate(&self, p: u64) -> Result<Payload> {
        Ok(match self {
            FamilyKind::APolylog(m) => Payload::Poly(fpl(p, *m)?),
            FamilyKind::AStar(k) => Payload::Poly(fsmp_star(p, k)?),
            FamilyKind::AStarTilde(k) => Payload::Poly(fsmp_star_tilde(p, k)?),
            FamilyKind::AMzvStar(k) => Payload::Value(fmzv_star(p, k)?),
            FamilyKind::KeyFnEqRhs(k) => Payload::Poly(new_fn_eq_rhs(p, k)?),
        })
    }
}

fn next_prime_above(n: u64) -> u64 {
    (n + 1..).find(|&c| crate::arith::is_prime(c)).unwrap()
}

/// Payloads over a finite window of odd primes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeFamily {
    pub window: Vec<u64>,
    pub values: BTreeMap<u64, Entry>,
    /// Smallest prime from which the defining hypotheses hold.
    pub threshold: u64,
    /// Formal Tate-twist tag; never acted upon, only compared.
    pub twist: u32,
}

impl PrimeFamily {
    fn window(p_max: u64) -> Result<Vec<u64>> {
        let window = odd_primes(3, p_max);
        if window.is_empty() {
            return Err(Error::OutOfRange(format!("no odd primes up to {p_max}")));
        }
        Ok(window)
    }

    fn collect(window: Vec<u64>, threshold: u64, twist: u32, f: impl Fn(u64) -> Entry + Sync) -> PrimeFamily {
        let values = window.par_iter().map(|&p| (p, f(p))).collect::<Vec<_>>().into_iter().collect();
        PrimeFamily { window, values, threshold, twist }
    }

    pub fn get(&self, p: u64) -> Option<&Payload> {
        match self.values.get(&p)? {
            Entry::Value(v) => Some(v),
            Entry::Skipped(_) => None,
        }
    }

    pub fn skipped(&self) -> Vec<(u64, &str)> {
        self.values
            .iter()
            .filter_map(|(&p, e)| match e {
                Entry::Skipped(r) => Some((p, r.as_str())),
                Entry::Value(_) => None,
            })
            .collect()
    }

    /// Replace the payload at one prime.
    pub fn with_entry(mut self, p: u64, entry: Entry) -> PrimeFamily {
        assert!(self.window.contains(&p));
        self.values.insert(p, entry);
        self
    }

    /// Primes at or above the threshold whose check payload failed.
    pub fn failures(&self) -> Vec<u64> {
        self.values
            .iter()
            .filter(|(&p, e)| p >= self.threshold && matches!(e, Entry::Value(Payload::Check { passed: false, .. })))
            .map(|(&p, _)| p)
            .collect()
    }

    /// For report families: every computed prime at or above the threshold passed.
    pub fn holds_in_a(&self) -> bool {
        self.failures().is_empty()
    }
}

/// Evaluate a family at every odd prime up to `p_max`.
pub fn family_build(kind: &FamilyKind, p_max: u64) -> Result<PrimeFamily> {
    let window = PrimeFamily::window(p_max)?;
    let fam = PrimeFamily::collect(window, kind.threshold(), kind.twist(), |p| match kind.evaluate(p) {
        Ok(v) => Entry::Value(v),
        Err(e) => Entry::Skipped(e.to_string()),
    });
    Ok(fam)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyComparison {
    pub equal_in_a: bool,
    /// Every prime where both payloads exist and differ, including those below the thresholds.
    pub exceptional_primes: Vec<u64>,
}

pub fn family_eq(a: &PrimeFamily, b: &PrimeFamily) -> Result<FamilyComparison> {
    if a.window != b.window {
        return Err(Error::WindowMismatch);
    }
    if a.twist != b.twist {
        return Err(Error::TwistMismatch(a.twist, b.twist));
    }
    let exceptional_primes: Vec<u64> =
        a.window.iter().copied().filter(|&p| matches!((a.get(p), b.get(p)), (Some(x), Some(y)) if x != y)).collect();
    let bound = a.threshold.max(b.threshold);
    let equal_in_a = exceptional_primes.iter().all(|&p| p < bound);
    Ok(FamilyComparison { equal_in_a, exceptional_primes })
}

/// Identities checked prime by prime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilyIdentity {
    /// `£*_k(t) = sum_n c_n t^n (t-1)^{p-n} - t^p ζ*(k^∨)` at each `p`.
    KeyFnEq(Index),
    /// The main congruence for `w_{p,m}(z)` at twist 0.
    MainCongruence { m: u32, z: ZArg },
}

/// Pass/fail family for an identity; the claim in `A` is [`PrimeFamily::holds_in_a`].
pub fn check_family_identity(identity: &FamilyIdentity, p_max: u64) -> Result<PrimeFamily> {
    let window = PrimeFamily::window(p_max)?;
    Ok(match identity {
        FamilyIdentity::KeyFnEq(k) => PrimeFamily::collect(window, 3, 0, |p| match check_new_fn_eq(p, k) {
            Ok(passed) => Entry::Value(Payload::Check { passed, observed: None }),
            Err(e) => Entry::Skipped(e.to_string()),
        }),
        FamilyIdentity::MainCongruence { m, z } => {
            let m = *m;
            PrimeFamily::collect(window, next_prime_above(m as u64 + 1), m.saturating_sub(1), |p| {
                if (m as u64) + 1 >= p {
                    return Entry::Skipped("p <= m+1".into());
                }
                if let Err(e) = z.check_prime(p) {
                    return Entry::Skipped(skip_reason(&e));
                }
                let run = CycRing::new(p, DEFAULT_PRECISION).and_then(|ring| check_main_congruence(&ring, m, *z, 0));
                match run {
                    Ok(rep) => Entry::Value(Payload::Check { passed: rep.passed, observed: Some(rep.observed) }),
                    Err(e) => Entry::Skipped(skip_reason(&e)),
                }
            })
        }
    })
}

/// Short reason string for a skipped instance.
pub fn skip_reason(e: &Error) -> String {
    match e {
        Error::Precondition(msg) => msg.clone(),
        Error::UnsupportedZ { .. } => "unsupported z (no p-th root in Q_p)".into(),
        other => other.to_string(),
    }
}
