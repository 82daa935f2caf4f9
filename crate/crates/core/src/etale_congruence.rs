//! The cyclotomic unit `w_{p,m}(z) = prod_i (1 - z^{1/p} ζ^i)^{i^{m-1}}`, its `p`-adic
//! logarithm, and the congruences tying that logarithm to finite polylogarithms.
//!
//! Only arguments `z` with a `p`-th root in `Q_p` are handled, so every computation
//! stays inside `Z_p[ζ_p]`. The root is `r ζ^j` where `r` is the root in `Z_p` and
//! `j` is the twist index.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::arith::{inv_mod, mul_mod, neg_mod, pow_mod, reduce_i64};
use crate::error::{Error, Result};
use crate::finite_polylogs::{fpl, star_coefficients_mod, Variable};
use crate::indices::Index;
use crate::padic_cyclotomic::{pth_root_unit, CycInt, CycRing, PiDigits, Valuation, ZpValue};

/// The argument `z` of the cyclotomic unit, with the shape that determines its `p`-th root.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ZArg {
    /// `z = -1`, root `-1`.
    MinusOne,
    /// `z = c^p` (depends on `p`), root `c`.
    PthPower(i64),
    /// A fixed rational `num/den`; the root is found by `p`-adic analysis when it exists.
    Rational { num: i64, den: i64 },
}

impl ZArg {
    pub fn rational(num: i64, den: i64) -> Result<ZArg> {
        if den == 0 || num == 0 || num == den {
            return Err(Error::Config(format!("z = {num}/{den} must be a rational other than 0 and 1")));
        }
        let (num, den) = if den < 0 { (-num, -den) } else { (num, den) };
        let g = gcd(num.unsigned_abs(), den as u64) as i64;
        Ok(ZArg::Rational { num: num / g, den: den / g })
    }

    /// Error unless `p` divides neither `z` nor `1 - z`.
    pub fn check_prime(&self, p: u64) -> Result<()> {
        let bad = match *self {
            ZArg::MinusOne => p == 2,
            ZArg::PthPower(c) => {
                let c = reduce_i64(c, p);
                c == 0 || c == 1
            }
            ZArg::Rational { num, den } => [num, den, num - den].iter().any(|&x| reduce_i64(x, p) == 0),
        };
        if bad {
            Err(Error::Precondition("p | z(1-z)".into()))
        } else {
            Ok(())
        }
    }

    /// `z` modulo `q`, a power of `p`.
    pub fn value_mod(&self, p: u64, q: u64) -> Result<u64> {
        self.check_prime(p)?;
        Ok(match *self {
            ZArg::MinusOne => q - 1,
            ZArg::PthPower(c) => pow_mod(reduce_i64(c, q), p, q),
            ZArg::Rational { num, den } => mul_mod(reduce_i64(num, q), inv_mod(reduce_i64(den, q), q).unwrap(), q),
        })
    }

    /// The `p`-th root of `z` in `Z_p`, modulo `p^prec`.
    pub fn root_mod(&self, p: u64, prec: u32) -> Result<u64> {
        self.check_prime(p)?;
        let q = p.pow(prec);
        match *self {
            ZArg::MinusOne => Ok(q - 1),
            ZArg::PthPower(c) => Ok(reduce_i64(c, q)),
            ZArg::Rational { .. } => {
                let wide = p.pow(prec + 1);
                let z = ZpValue { prime: p, precision: prec + 1, value: self.value_mod(p, wide)? };
                pth_root_unit(z)?.map(|r| r.value).ok_or_else(|| Error::UnsupportedZ { z: self.to_string(), p })
            }
        }
    }

    /// The chosen root `r ζ^j` as an element of the ring.
    pub fn root(&self, ring: &Arc<CycRing>, j: u64) -> Result<CycInt> {
        let r = self.root_mod(ring.prime(), ring.precision())?;
        Ok(ring.zeta_pow(j as i64).scale(r))
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl fmt::Display for ZArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ZArg::MinusOne => write!(f, "-1"),
            ZArg::PthPower(c) => write!(f, "{c}^p"),
            ZArg::Rational { num, den: 1 } => write!(f, "{num}"),
            ZArg::Rational { num, den } => write!(f, "{num}/{den}"),
        }
    }
}

/// Accepts `-1`, `c^p`, an integer, or `a/b`.
impl FromStr for ZArg {
    type Err = Error;

    fn from_str(s: &str) -> Result<ZArg> {
        let s = s.trim();
        let bad = || Error::Config(format!("cannot parse z value '{s}'"));
        if s == "-1" {
            return Ok(ZArg::MinusOne);
        }
        if let Some(base) = s.strip_suffix("^p") {
            let c: i64 = base.trim().parse().map_err(|_| bad())?;
            if c == 0 || c == 1 {
                return Err(bad());
            }
            return Ok(if c == -1 { ZArg::MinusOne } else { ZArg::PthPower(c) });
        }
        let (num, den) = match s.split_once('/') {
            Some((a, b)) => (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?),
            None => (s.parse().map_err(|_| bad())?, 1),
        };
        let z = ZArg::rational(num, den)?;
        Ok(if z == (ZArg::Rational { num: -1, den: 1 }) { ZArg::MinusOne } else { z })
    }
}

/// Outcome of one valuation check: `passed` iff `observed >= modulus_exponent`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CongruenceReport {
    pub prime: u64,
    pub m: u32,
    pub z: ZArg,
    pub root_choice: u64,
    pub modulus_exponent: usize,
    pub observed: Valuation,
    pub passed: bool,
    pub elapsed_ms: u64,
}

impl CongruenceReport {
    fn new(ring: &CycRing, m: u32, z: ZArg, j: u64, required: usize, observed: Valuation, start: Instant) -> Self {
        CongruenceReport {
            prime: ring.prime(),
            m,
            z,
            root_choice: j,
            modulus_exponent: required,
            observed,
            passed: observed.is_at_least(required),
            elapsed_ms: start.elapsed().as_millis() as u64,
        }
    }

    /// `observed - required`, the room left over in the congruence.
    pub fn slack(&self) -> i64 {
        self.observed.value() as i64 - self.modulus_exponent as i64
    }
}

fn require_m(p: u64, m: u32) -> Result<()> {
    if m <= 1 || m as u64 >= p - 1 {
        return Err(Error::Precondition(format!("need 1 < m < p-1, got m={m}, p={p}")));
    }
    Ok(())
}

/// `prod_{i=0}^{p-1} (1 - root ζ^i)^{i^{m-1}}` with `0^0 = 1`.
///
/// Exponents are exact when `i^{m-1}` fits in 64 bits; beyond that they are reduced
/// modulo `(p-1)p^M`, which kills every unit of `O / p^M`.
pub fn w_product(ring: &Arc<CycRing>, m: u32, root: &CycInt) -> Result<CycInt> {
    if m == 0 {
        return Err(Error::Precondition("m must be positive".into()));
    }
    let p = ring.prime();
    let one = ring.one();
    let mut factors = Vec::with_capacity(p as usize);
    for i in 0..p {
        let f = &one - &(root * &ring.zeta_pow(i as i64));
        if !f.is_unit() {
            return Err(Error::Precondition(format!("1 - root*ζ^{i} is not a unit; p | 1-z")));
        }
        factors.push(f);
    }
    let group_exp = (p - 1) as u128 * ring.modulus() as u128;
    let exps: Vec<u64> = (0..p)
        .map(|i| match i.checked_pow(m - 1) {
            Some(e) => e,
            None => pow_mod(i % group_exp as u64, (m - 1) as u64, group_exp as u64),
        })
        .collect();
    Ok(multi_pow(ring, &factors, &exps).truncate_precision(root.pi_precision()))
}

/// `prod b_i^{e_i}` by simultaneous square-and-multiply.
fn multi_pow(ring: &Arc<CycRing>, bases: &[CycInt], exps: &[u64]) -> CycInt {
    let top = exps.iter().copied().max().unwrap_or(0);
    let bits = 64 - top.leading_zeros();
    let mut acc = ring.one();
    for b in (0..bits).rev() {
        acc = &acc * &acc;
        for (base, &e) in bases.iter().zip(exps) {
            if (e >> b) & 1 == 1 {
                acc = &acc * base;
            }
        }
    }
    acc
}

/// `sum_n c_n x^n` for coefficients given mod `p^M`, by Horner's rule.
fn eval_poly(ring: &Arc<CycRing>, coeffs: &[u64], x: &CycInt) -> CycInt {
    let mut acc = ring.zero();
    for &c in coeffs.iter().rev() {
        acc = &(&acc * x) + &ring.scalar(c);
    }
    acc.truncate_precision(x.pi_precision())
}

fn factorial_mod(n: u64, q: u64) -> u64 {
    (1..=n).fold(1 % q, |acc, k| mul_mod(acc, k, q))
}

/// `(m-1)! (1-ζ)^{p-m} (z-1)^{-1} £_{p,m}(root)`.
pub fn rhs_main(ring: &Arc<CycRing>, m: u32, z: &ZArg, root: &CycInt) -> Result<CycInt> {
    let p = ring.prime();
    require_m(p, m)?;
    let q = ring.modulus();
    let zq = z.value_mod(p, q)?;
    let z_minus_one_inv = inv_mod((zq + q - 1) % q, q).ok_or(Error::NotUnit)?;
    let coeffs = star_coefficients_mod(p, &Index::new(vec![m])?, q, Variable::Outer);
    let polylog = eval_poly(ring, &coeffs, root);
    let one_minus_zeta = &ring.one() - &ring.zeta_pow(1);
    let scalar = mul_mod(factorial_mod(m as u64 - 1, q), z_minus_one_inv, q);
    Ok((&one_minus_zeta.pow(p - m as u64) * &polylog).scale(scalar))
}

/// Shared first half of the congruence checks: the root and `log_p w_{p,m}`.
pub struct Prepared {
    ring: Arc<CycRing>,
    m: u32,
    z: ZArg,
    j: u64,
    root: CycInt,
    log_w: CycInt,
    start: Instant,
}

impl Prepared {
    pub fn new(ring: &Arc<CycRing>, m: u32, z: ZArg, j: u64) -> Result<Prepared> {
        let start = Instant::now();
        require_m(ring.prime(), m)?;
        let root = z.root(ring, j)?;
        let log_w = w_product(ring, m, &root)?.plog()?;
        Ok(Prepared { ring: ring.clone(), m, z, j, root, log_w, start })
    }

    pub fn log_w(&self) -> &CycInt {
        &self.log_w
    }

    fn required(&self) -> usize {
        (self.ring.prime() - self.m as u64 + 1) as usize
    }

    pub fn main_congruence(&self) -> Result<CongruenceReport> {
        let rhs = rhs_main(&self.ring, self.m, &self.z, &self.root)?;
        let observed = (&self.log_w - &rhs).v_pi();
        Ok(CongruenceReport::new(&self.ring, self.m, self.z, self.j, self.required(), observed, self.start))
    }

    pub fn log_fmp(&self) -> Result<CongruenceReport> {
        let ring = &self.ring;
        let q = ring.modulus();
        let m = self.m;
        let xi = &self.root.invert()? - &ring.one();
        let arg = -&xi.invert()?;
        let coeffs = star_coefficients_mod(ring.prime(), &Index::ones(m as usize), q, Variable::Outer);
        let star = eval_poly(ring, &coeffs, &arg);
        let mut p_over = ring.scalar(ring.prime());
        for _ in 1..m {
            p_over = p_over.div_pi()?;
        }
        let mut scalar = factorial_mod(m as u64 - 1, q);
        if m % 2 == 1 {
            scalar = neg_mod(scalar, q);
        }
        let rhs = (&p_over * &star).scale(scalar);
        let observed = (&self.log_w - &rhs).v_pi();
        Ok(CongruenceReport::new(ring, m, self.z, self.j, self.required(), observed, self.start))
    }
}

/// `log_p w_{p,m}(z)` agrees with `(m-1)! (1-ζ)^{p-m} £_{p,m}(z^{1/p}) / (z-1)` modulo `π^{p-m+1}`.
pub fn check_main_congruence(ring: &Arc<CycRing>, m: u32, z: ZArg, j: u64) -> Result<CongruenceReport> {
    Prepared::new(ring, m, z, j)?.main_congruence()
}

/// `log_p w_{p,m}(z)` agrees with `(-1)^m (m-1)! p π^{1-m} £*_{p,{1}^m}(1/(1 - z^{-1/p}))`
/// modulo `π^{p-m+1}`.
pub fn check_log_fmp(ring: &Arc<CycRing>, m: u32, z: ZArg, j: u64) -> Result<CongruenceReport> {
    Prepared::new(ring, m, z, j)?.log_fmp()
}

/// `log_p(1 - z^{1/p})` is integral. The report keeps the observed valuation, which is
/// often larger than 0.
pub fn check_log_integrality(ring: &Arc<CycRing>, z: ZArg, j: u64) -> Result<CongruenceReport> {
    let start = Instant::now();
    let root = z.root(ring, j)?;
    let log = (&ring.one() - &root).plog()?;
    Ok(CongruenceReport::new(ring, 1, z, j, 0, log.v_pi(), start))
}

/// Digits `a_0, ..., a_{p-1}` of `log_p w`, carried with the formal twist `m - 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LambdaValue {
    pub digits: PiDigits,
    pub twist: u32,
}

impl LambdaValue {
    pub fn digit(&self, n: usize) -> u64 {
        self.digits.digit(n).expect("digit index below p")
    }
}

pub fn lambda_digits(ring: &Arc<CycRing>, m: u32, w: &CycInt) -> Result<LambdaValue> {
    if !w.is_unit() {
        return Err(Error::NotUnit);
    }
    let digits = w.plog()?.pi_digits(ring.prime() as usize)?;
    Ok(LambdaValue { digits, twist: m.saturating_sub(1) })
}

/// Digit test for the Soulé element attached to `w_{p,m}(-1)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SouleRecord {
    pub prime: u64,
    pub m: u32,
    pub a1_zero: bool,
    /// `a_{p-m}` of `log_p w_{p,m}(-1) / (m-1)!`.
    pub leading_digit: u64,
    /// `(-1)^m 2^{-1} £_{p,m}(-1) mod p`.
    pub expected_leading: u64,
    pub nonvanishing: bool,
}

impl SouleRecord {
    pub fn leading_matches(&self) -> bool {
        self.leading_digit == self.expected_leading
    }

    /// The leading digit vanishes, so this digit alone decides nothing.
    pub fn inconclusive(&self) -> bool {
        self.leading_digit == 0
    }
}

pub fn check_soule_nonvanishing(ring: &Arc<CycRing>, m: u32) -> Result<SouleRecord> {
    let p = ring.prime();
    require_m(p, m)?;
    if m.is_multiple_of(2) {
        return Err(Error::Precondition(format!("m must be odd, got {m}")));
    }
    let q = ring.modulus();
    let w = w_product(ring, m, &ring.from_i64(-1))?;
    let scaled = w.plog()?.scale(inv_mod(factorial_mod(m as u64 - 1, q), q).unwrap());
    let digits = scaled.pi_digits(p as usize)?;
    let a = |n: usize| digits.digit(n).unwrap();
    let a1_zero = a(1) == 0;
    let leading_digit = a((p - m as u64) as usize);
    let nonvanishing = a1_zero && (2..(p - 1) as usize).any(|n| a(n) != 0);
    let mut expected = mul_mod(fpl(p, m)?.eval(p - 1), inv_mod(2, p).unwrap(), p);
    if m % 2 == 1 {
        expected = neg_mod(expected, p);
    }
    Ok(SouleRecord { prime: p, m, a1_zero, leading_digit, expected_leading: expected, nonvanishing })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic_cyclotomic::DEFAULT_PRECISION;

    fn ring(p: u64) -> Arc<CycRing> {
        CycRing::new(p, DEFAULT_PRECISION).unwrap()
    }

    #[test]
    fn parse_z() {
        assert_eq!("-1".parse::<ZArg>().unwrap(), ZArg::MinusOne);
        assert_eq!("2^p".parse::<ZArg>().unwrap(), ZArg::PthPower(2));
        assert_eq!("32".parse::<ZArg>().unwrap(), ZArg::Rational { num: 32, den: 1 });
        assert_eq!("6/-4".parse::<ZArg>().unwrap(), ZArg::Rational { num: -3, den: 2 });
        assert!("1".parse::<ZArg>().is_err());
        assert!("x".parse::<ZArg>().is_err());
        for s in ["-1", "2^p", "32", "-3/2"] {
            assert_eq!(s.parse::<ZArg>().unwrap().to_string(), s);
        }
    }

    #[test]
    fn z_preconditions() {
        let z = ZArg::Rational { num: 32, den: 1 };
        assert!(z.check_prime(31).is_err());
        assert!(z.check_prime(5).is_ok());
        assert!(ZArg::PthPower(2).check_prime(3).is_ok());
        assert!(ZArg::PthPower(8).check_prime(7).is_err());
        assert!(ZArg::PthPower(10).check_prime(5).is_err());
        assert!(matches!(z.root_mod(7, 3), Err(Error::UnsupportedZ { .. })));
        assert_eq!(z.root_mod(5, 3).unwrap(), 2);
    }

    #[test]
    fn m_one_factorization() {
        for p in [5, 7, 11, 13] {
            let r = ring(p);
            for z in [ZArg::MinusOne, ZArg::PthPower(2), ZArg::PthPower(3)] {
                if z.check_prime(p).is_err() {
                    continue;
                }
                for j in 0..3 {
                    let w = w_product(&r, 1, &z.root(&r, j).unwrap()).unwrap();
                    let zq = z.value_mod(p, r.modulus()).unwrap();
                    assert_eq!(w, r.scalar(1 + r.modulus() - zq));
                }
            }
        }
    }

    #[test]
    fn w_examples() {
        let r = ring(3);
        let w = w_product(&r, 2, &r.from_i64(-1)).unwrap();
        assert_eq!(w, &r.one() + &r.zeta_pow(2));
        let r = ring(5);
        let w = w_product(&r, 2, &r.scalar(2)).unwrap();
        assert_eq!(w.v_pi(), Valuation::Exact(0));
        assert!(w_product(&r, 2, &r.one()).is_err());
    }

    #[test]
    fn rhs_valuation() {
        for p in [5, 7, 11] {
            let r = ring(p);
            for m in 2..(p as u32 - 1) {
                let rhs = rhs_main(&r, m, &ZArg::MinusOne, &r.from_i64(-1)).unwrap();
                assert!(rhs.v_pi().is_at_least((p - m as u64) as usize));
            }
        }
    }

    #[test]
    fn main_congruence_examples() {
        let z32 = ZArg::Rational { num: 32, den: 1 };
        let rep = check_main_congruence(&ring(5), 2, z32, 0).unwrap();
        assert!(rep.passed, "{rep:?}");
        assert_eq!(rep.modulus_exponent, 4);
        for j in 0..3 {
            assert!(check_main_congruence(&ring(7), 2, ZArg::MinusOne, j).unwrap().passed);
        }
        assert!(check_main_congruence(&ring(7), 1, ZArg::MinusOne, 0).is_err());
        assert!(check_log_fmp(&ring(5), 2, z32, 0).unwrap().passed);
        assert!(check_log_fmp(&ring(7), 3, ZArg::MinusOne, 0).unwrap().passed);
    }

    #[test]
    fn higher_precision_agrees() {
        let lo = check_main_congruence(&ring(7), 3, ZArg::PthPower(3), 1).unwrap();
        let hi = check_main_congruence(&CycRing::new(7, 5).unwrap(), 3, ZArg::PthPower(3), 1).unwrap();
        assert!(lo.passed && hi.passed);
        if lo.observed.is_exact() {
            assert_eq!(lo.observed, hi.observed);
        }
    }

    #[test]
    fn all_twists_small_primes() {
        for p in [5u64, 7, 11, 13] {
            let r = ring(p);
            for m in 2..(p as u32 - 1) {
                for j in 0..p {
                    let prep = Prepared::new(&r, m, ZArg::MinusOne, j).unwrap();
                    assert!(prep.main_congruence().unwrap().passed, "p={p} m={m} j={j}");
                    assert!(prep.log_fmp().unwrap().passed, "p={p} m={m} j={j}");
                }
            }
        }
    }

    #[test]
    fn integrality() {
        let z32 = ZArg::Rational { num: 32, den: 1 };
        assert!(check_log_integrality(&ring(5), z32, 0).unwrap().passed);
        assert!(check_log_integrality(&ring(7), ZArg::MinusOne, 0).unwrap().passed);
    }

    #[test]
    fn lambda_examples() {
        let r = ring(5);
        let d = lambda_digits(&r, 2, &r.zeta_pow(1)).unwrap();
        assert!(d.digits.is_zero());
        let w = w_product(&r, 3, &r.from_i64(-1)).unwrap();
        assert_eq!(lambda_digits(&r, 3, &w).unwrap().digit(1), 0);
        assert!(lambda_digits(&r, 2, &r.pi()).is_err());
    }

    #[test]
    fn soule_examples() {
        let rec = check_soule_nonvanishing(&ring(7), 3).unwrap();
        assert!(rec.nonvanishing && rec.leading_matches());
        assert_eq!(rec.leading_digit, 6);
        let rec = check_soule_nonvanishing(&ring(37), 5).unwrap();
        assert_eq!(rec.leading_digit, 0);
        assert!(rec.inconclusive() && rec.leading_matches());
        assert!(check_soule_nonvanishing(&ring(7), 2).is_err());
    }
}
