//! Finite-precision arithmetic in `O = Z_p[ζ_p]`.
//!
//! Elements are stored by their coordinates in the power basis `1, ζ, ..., ζ^{p-2}`
//! modulo `p^M`. Since `p` is totally ramified, `p^M O = π^{M(p-1)} O` for the
//! uniformizer `π = ζ - 1`, so a ring of coefficient precision `M` carries
//! `N = M(p-1)` π-adic digits. Each [`CycInt`] additionally tracks how many of those
//! digits are actually known (`pi_prec`), which drops under exact division by `π` or `p`.
//!
//! Valuations and digit expansions are computed in the π-power basis
//! `1, π, ..., π^{p-2}`, where `v_π(sum d_i π^i) = min_i((p-1) v_p(d_i) + i)`
//! (the candidates are pairwise distinct mod `p - 1`).

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::arith::{binomial_table, inv_mod, mul_mod, neg_mod, pow_mod, require_odd_prime, val_p};
use crate::error::{Error, Result};

/// Coefficient precision used when callers do not choose one.
pub const DEFAULT_PRECISION: u32 = 3;

/// Per-`(p, M)` tables: basis change matrices, `p/π` in the π-basis and Teichmüller lifts.
#[derive(Debug)]
pub struct CycRing {
    p: u64,
    prec: u32,
    modulus: u64,
    /// `zeta_to_pi[j][i] = C(j, i)`: `ζ^j = sum_i C(j,i) π^i`.
    zeta_to_pi: Vec<Vec<u64>>,
    /// `pi_to_zeta[i][j] = (-1)^{i-j} C(i, j)`: `π^i = sum_j (-1)^{i-j} C(i,j) ζ^j`.
    pi_to_zeta: Vec<Vec<u64>>,
    /// `p/π` in the π-basis.
    p_over_pi: Vec<u64>,
    teich: Vec<u64>,
    small_accumulators: bool,
}

type RingCache = Mutex<HashMap<(u64, u32), Arc<CycRing>>>;

fn ring_cache() -> &'static RingCache {
    static CACHE: OnceLock<RingCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

impl CycRing {
    /// The shared ring `Z_p[ζ_p] / p^M`.
    pub fn new(p: u64, prec: u32) -> Result<Arc<CycRing>> {
        require_odd_prime(p)?;
        if prec == 0 {
            return Err(Error::OutOfRange("precision M must be positive".into()));
        }
        let modulus = p
            .checked_pow(prec)
            .filter(|&q| q < 1 << 60)
            .ok_or_else(|| Error::OutOfRange(format!("p^M = {p}^{prec} exceeds 2^60")))?;
        let mut cache = ring_cache().lock().unwrap();
        if let Some(r) = cache.get(&(p, prec)) {
            return Ok(r.clone());
        }
        let ring = Arc::new(CycRing::build(p, prec, modulus));
        cache.insert((p, prec), ring.clone());
        Ok(ring)
    }

    fn build(p: u64, prec: u32, q: u64) -> CycRing {
        let d = (p - 1) as usize;
        let binom = binomial_table(p as usize, q);
        let zeta_to_pi = (0..d).map(|j| (0..d).map(|i| if i <= j { binom[j][i] } else { 0 }).collect()).collect();
        let pi_to_zeta = (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| {
                        if j > i {
                            0
                        } else if (i - j) % 2 == 0 {
                            binom[i][j]
                        } else {
                            neg_mod(binom[i][j], q)
                        }
                    })
                    .collect()
            })
            .collect();
        // p = -π^{p-1} - sum_{k=2}^{p-1} C(p,k) π^{k-1}
        let mut p_over_pi = vec![0u64; d];
        p_over_pi[d - 1] = q - 1;
        for k in 2..p as usize {
            p_over_pi[k - 2] = neg_mod(binom[p as usize][k], q);
        }
        let teich = (0..p).map(|a| teichmuller_raw(p, a, q)).collect();
        let small_accumulators = (q as u128 - 1) * (q as u128 - 1) * (p as u128) < (1u128 << 64);
        CycRing { p, prec, modulus: q, zeta_to_pi, pi_to_zeta, p_over_pi, teich, small_accumulators }
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    /// Coefficient precision `M`.
    pub fn precision(&self) -> u32 {
        self.prec
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// π-adic precision `N = M(p-1)`.
    pub fn pi_precision(&self) -> usize {
        self.prec as usize * self.degree()
    }

    pub fn degree(&self) -> usize {
        (self.p - 1) as usize
    }

    /// Teichmüller lift of a residue, as an integer mod `p^M`.
    pub fn teichmuller(&self, residue: u64) -> u64 {
        self.teich[(residue % self.p) as usize]
    }

    pub fn zero(self: &Arc<Self>) -> CycInt {
        self.wrap(vec![0; self.degree()])
    }

    pub fn one(self: &Arc<Self>) -> CycInt {
        self.scalar(1)
    }

    pub fn scalar(self: &Arc<Self>, a: u64) -> CycInt {
        let mut c = vec![0; self.degree()];
        c[0] = a % self.modulus;
        self.wrap(c)
    }

    pub fn from_i64(self: &Arc<Self>, a: i64) -> CycInt {
        self.scalar(crate::arith::reduce_i64(a, self.modulus))
    }

    /// `ζ^k` for any integer exponent.
    pub fn zeta_pow(self: &Arc<Self>, k: i64) -> CycInt {
        let e = k.rem_euclid(self.p as i64) as usize;
        let mut full = vec![0u64; self.p as usize];
        full[e] = 1;
        self.wrap(self.reduce_cyclic(&full))
    }

    /// The uniformizer `π = ζ - 1`.
    pub fn pi(self: &Arc<Self>) -> CycInt {
        self.zeta_pow(1) - self.one()
    }

    /// Element from coordinates in the ζ-power basis (length `p - 1`, or `p` to be reduced).
    pub fn from_zeta_coords(self: &Arc<Self>, coords: &[i64]) -> Result<CycInt> {
        let q = self.modulus;
        let c: Vec<u64> = coords.iter().map(|&a| crate::arith::reduce_i64(a, q)).collect();
        match c.len() {
            n if n == self.degree() => Ok(self.wrap(c)),
            n if n == self.p as usize => Ok(self.wrap(self.reduce_cyclic(&c))),
            n => Err(Error::OutOfRange(format!("expected {} or {} coordinates, got {n}", self.degree(), self.p))),
        }
    }

    /// Element from coordinates in the π-power basis.
    pub fn from_pi_coords(self: &Arc<Self>, coords: &[u64]) -> CycInt {
        assert_eq!(coords.len(), self.degree());
        let c = coords.iter().map(|&a| a % self.modulus).collect::<Vec<_>>();
        self.wrap(self.pi_to_zeta_coords(&c))
    }

    fn wrap(self: &Arc<Self>, coords: Vec<u64>) -> CycInt {
        CycInt { ring: self.clone(), coords, pi_prec: self.pi_precision() }
    }

    /// Reduce a length-`p` vector (coefficients of `1, ..., ζ^{p-1}`) using `Φ_p(ζ) = 0`.
    fn reduce_cyclic(&self, full: &[u64]) -> Vec<u64> {
        let d = self.degree();
        let top = full[d];
        full[..d].iter().map(|&a| (a + self.modulus - top) % self.modulus).collect()
    }

    pub(crate) fn add_raw(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let q = self.modulus;
        a.iter().zip(b).map(|(&x, &y)| (x + y) % q).collect()
    }

    pub(crate) fn sub_raw(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let q = self.modulus;
        a.iter().zip(b).map(|(&x, &y)| (x + q - y) % q).collect()
    }

    pub(crate) fn scale_raw(&self, a: &[u64], s: u64) -> Vec<u64> {
        let q = self.modulus;
        a.iter().map(|&x| mul_mod(x, s, q)).collect()
    }

    /// Product modulo `ζ^p - 1`, then reduced by `Φ_p`.
    pub(crate) fn mul_raw(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let p = self.p as usize;
        let q = self.modulus;
        let mut full = vec![0u64; p];
        if self.small_accumulators {
            let mut acc = vec![0u64; p];
            for (i, &x) in a.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                // indices i+j < p go to i+j, the rest wrap to i+j-p
                let split = p - i;
                let (lo, hi) = b.split_at(split.min(b.len()));
                for (slot, &y) in acc[i..].iter_mut().zip(lo) {
                    *slot += x * y;
                }
                for (slot, &y) in acc.iter_mut().zip(hi) {
                    *slot += x * y;
                }
            }
            for (f, a) in full.iter_mut().zip(acc) {
                *f = a % q;
            }
        } else {
            let mut acc = vec![0u128; p];
            for (i, &x) in a.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                for (j, &y) in b.iter().enumerate() {
                    let k = if i + j >= p { i + j - p } else { i + j };
                    acc[k] += x as u128 * y as u128;
                }
            }
            for (f, a) in full.iter_mut().zip(acc) {
                *f = (a % q as u128) as u64;
            }
        }
        self.reduce_cyclic(&full)
    }

    pub(crate) fn zeta_to_pi_coords(&self, c: &[u64]) -> Vec<u64> {
        let d = self.degree();
        let q = self.modulus;
        let mut out = vec![0u128; d];
        for (j, &cj) in c.iter().enumerate() {
            if cj == 0 {
                continue;
            }
            for (i, slot) in out.iter_mut().enumerate().take(j + 1) {
                *slot += cj as u128 * self.zeta_to_pi[j][i] as u128;
            }
        }
        out.into_iter().map(|v| (v % q as u128) as u64).collect()
    }

    pub(crate) fn pi_to_zeta_coords(&self, d_coords: &[u64]) -> Vec<u64> {
        let d = self.degree();
        let q = self.modulus;
        let mut out = vec![0u128; d];
        for (i, &di) in d_coords.iter().enumerate() {
            if di == 0 {
                continue;
            }
            for (j, slot) in out.iter_mut().enumerate().take(i + 1) {
                *slot += di as u128 * self.pi_to_zeta[i][j] as u128;
            }
        }
        out.into_iter().map(|v| (v % q as u128) as u64).collect()
    }

    /// Divide a π-basis vector by `π`; the caller guarantees `p | d_0`.
    fn div_pi_in_pi_basis(&self, d: &[u64]) -> Vec<u64> {
        let e = d[0] / self.p;
        let mut out: Vec<u64> = d[1..].to_vec();
        out.push(0);
        for (o, &c) in out.iter_mut().zip(&self.p_over_pi) {
            *o = (*o + mul_mod(e, c, self.modulus)) % self.modulus;
        }
        out
    }

    /// Valuation of a π-basis vector, capped at `cap`.
    fn valuation_pi_basis(&self, d: &[u64], cap: usize) -> Valuation {
        let width = self.degree();
        let mut best = usize::MAX;
        for (i, &c) in d.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let v = width * val_p(c, self.p) as usize + i;
            best = best.min(v);
        }
        if best < cap {
            Valuation::Exact(best)
        } else {
            Valuation::AtLeast(cap)
        }
    }

    fn residue_raw(&self, c: &[u64]) -> u64 {
        c.iter().fold(0, |acc, &x| (acc + x % self.p) % self.p)
    }
}

fn teichmuller_raw(p: u64, a: u64, q: u64) -> u64 {
    let mut x = a % q;
    loop {
        let next = pow_mod(x, p, q);
        if next == x {
            return x;
        }
        x = next;
    }
}

/// π-adic valuation, or a lower bound when the element vanishes at the known precision.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Valuation {
    Exact(usize),
    AtLeast(usize),
}

impl Valuation {
    /// Whether the valuation is certainly at least `bound`.
    pub fn is_at_least(&self, bound: usize) -> bool {
        match *self {
            Valuation::Exact(v) | Valuation::AtLeast(v) => v >= bound,
        }
    }

    pub fn value(&self) -> usize {
        match *self {
            Valuation::Exact(v) | Valuation::AtLeast(v) => v,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Valuation::Exact(_))
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Exact(v) => write!(f, "{v}"),
            Valuation::AtLeast(v) => write!(f, ">={v}"),
        }
    }
}

/// An element of `Z_p[ζ_p]` known modulo `π^{pi_prec}`.
#[derive(Clone)]
pub struct CycInt {
    ring: Arc<CycRing>,
    coords: Vec<u64>,
    pi_prec: usize,
}

impl fmt::Debug for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycInt(p={}, M={}, {:?} + O(π^{}))", self.ring.p, self.ring.prec, self.coords, self.pi_prec)
    }
}

/// Equality of the known digits (modulo `π` to the smaller of the two precisions).
impl PartialEq for CycInt {
    fn eq(&self, other: &Self) -> bool {
        self.same_ring(other).is_ok() && (self - other).v_pi().is_at_least(self.pi_prec.min(other.pi_prec))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CycOp {
    Add,
    Sub,
    Mul,
}

impl CycInt {
    pub fn ring(&self) -> &Arc<CycRing> {
        &self.ring
    }

    pub fn prime(&self) -> u64 {
        self.ring.p
    }

    /// Coordinates in the ζ-power basis, each in `[0, p^M)`.
    pub fn coords(&self) -> &[u64] {
        &self.coords
    }

    /// Number of known π-adic digits.
    pub fn pi_precision(&self) -> usize {
        self.pi_prec
    }

    /// Forget digits at and above `π^n`.
    pub fn truncate_precision(mut self, n: usize) -> CycInt {
        self.pi_prec = self.pi_prec.min(n);
        self
    }

    fn same_ring(&self, other: &CycInt) -> Result<()> {
        if Arc::ptr_eq(&self.ring, &other.ring) || (self.ring.p == other.ring.p && self.ring.prec == other.ring.prec) {
            Ok(())
        } else {
            Err(Error::RingMismatch(self.ring.p, self.ring.prec, other.ring.p, other.ring.prec))
        }
    }

    fn with(&self, coords: Vec<u64>, pi_prec: usize) -> CycInt {
        CycInt { ring: self.ring.clone(), coords, pi_prec }
    }

    /// Ring operation with an explicit ring check; the operator impls panic on mismatch instead.
    pub fn checked_op(&self, other: &CycInt, op: CycOp) -> Result<CycInt> {
        self.same_ring(other)?;
        let prec = self.pi_prec.min(other.pi_prec);
        let c = match op {
            CycOp::Add => self.ring.add_raw(&self.coords, &other.coords),
            CycOp::Sub => self.ring.sub_raw(&self.coords, &other.coords),
            CycOp::Mul => self.ring.mul_raw(&self.coords, &other.coords),
        };
        Ok(self.with(c, prec))
    }

    /// Multiply by an integer given mod `p^M`.
    pub fn scale(&self, s: u64) -> CycInt {
        self.with(self.ring.scale_raw(&self.coords, s % self.ring.modulus), self.pi_prec)
    }

    pub fn pow(&self, mut e: u64) -> CycInt {
        let mut base = self.clone();
        let mut acc = self.ring.one().truncate_precision(self.pi_prec);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Coordinates in the π-power basis.
    pub fn pi_coords(&self) -> Vec<u64> {
        self.ring.zeta_to_pi_coords(&self.coords)
    }

    pub fn v_pi(&self) -> Valuation {
        self.ring.valuation_pi_basis(&self.pi_coords(), self.pi_prec)
    }

    /// Reduction modulo `π`, an element of `F_p`.
    pub fn residue(&self) -> u64 {
        self.ring.residue_raw(&self.coords)
    }

    pub fn is_unit(&self) -> bool {
        self.pi_prec > 0 && self.residue() != 0
    }

    /// Exact division by `π`; one digit of precision is consumed.
    pub fn div_pi(&self) -> Result<CycInt> {
        let d = self.pi_coords();
        if !d[0].is_multiple_of(self.ring.p) {
            return Err(Error::NotDivisible("π"));
        }
        let out = self.ring.div_pi_in_pi_basis(&d);
        Ok(self.with(self.ring.pi_to_zeta_coords(&out), self.pi_prec.saturating_sub(1)))
    }

    /// Exact division by `p`; `p - 1` digits of precision are consumed.
    pub fn div_p(&self) -> Result<CycInt> {
        let p = self.ring.p;
        if self.coords.iter().any(|&c| c % p != 0) {
            return Err(Error::NotDivisible("p"));
        }
        let c = self.coords.iter().map(|&c| c / p).collect();
        Ok(self.with(c, self.pi_prec.saturating_sub(self.ring.degree())))
    }

    /// Multiplicative inverse of a unit by Newton iteration `y <- y(2 - xy)`.
    pub fn invert(&self) -> Result<CycInt> {
        let r = self.residue();
        if r == 0 {
            return Err(Error::NotUnit);
        }
        let ring = &self.ring;
        let mut y = ring.scalar(inv_mod(r, ring.p).unwrap());
        let two = ring.scalar(2);
        let mut known = 1usize;
        while known < ring.pi_precision() {
            y = &y * &(&two - &(self * &y));
            known *= 2;
        }
        Ok(y.truncate_precision(self.pi_prec))
    }

    /// Same value in a ring of larger coefficient precision (digits beyond `pi_prec` stay unknown).
    pub fn lift_to(&self, ring: &Arc<CycRing>) -> CycInt {
        assert_eq!(ring.p, self.ring.p);
        assert!(ring.prec >= self.ring.prec);
        CycInt { ring: ring.clone(), coords: self.coords.clone(), pi_prec: self.pi_prec }
    }

    /// Reduce into a ring of smaller coefficient precision.
    pub fn reduce_to(&self, ring: &Arc<CycRing>) -> CycInt {
        assert_eq!(ring.p, self.ring.p);
        let q = ring.modulus;
        CycInt {
            ring: ring.clone(),
            coords: self.coords.iter().map(|&c| c % q).collect(),
            pi_prec: self.pi_prec.min(ring.pi_precision()),
        }
    }

    /// First `count` Teichmüller digits `a_0, ..., a_{count-1}` of the π-adic expansion,
    /// each reported by its residue in `F_p`.
    pub fn pi_digits(&self, count: usize) -> Result<PiDigits> {
        if count > self.pi_prec {
            return Err(Error::PrecisionExceeded { requested: count, available: self.pi_prec });
        }
        let ring = &self.ring;
        let mut d = self.pi_coords();
        let mut digits = Vec::with_capacity(count);
        for n in 0..count {
            let a = d[0] % ring.p;
            digits.push(a);
            if n + 1 == count {
                break;
            }
            // subtract the Teichmüller representative, then divide by π
            d[0] = (d[0] + ring.modulus - ring.teichmuller(a)) % ring.modulus;
            d = ring.div_pi_in_pi_basis(&d);
        }
        Ok(PiDigits::from_dense(ring.p, digits))
    }

    /// `log_p` of a unit: strip the Teichmüller factor, then sum
    /// `sum_{n>=1} (-1)^{n-1} y^n / n` with `y = u_1 - 1`.
    pub fn plog(&self) -> Result<CycInt> {
        let r = self.residue();
        if r == 0 || self.pi_prec == 0 {
            return Err(Error::NotUnit);
        }
        let ring = &self.ring;
        let p = ring.p;
        let n_target = self.pi_prec;
        let n_max = log_terms(n_target, p);
        let guard = ilog(n_max as u64, p) + 1;
        let work = CycRing::new(p, ring.prec + guard)?;
        let q = work.modulus;

        let u = self.lift_to(&work);
        let r_inv = inv_mod(r, p).unwrap();
        let u1 = work.scale_raw(&u.coords, work.teichmuller(r_inv));
        let mut y = u1;
        y[0] = (y[0] + q - 1) % q;

        let mut power = y.clone();
        let mut acc = vec![0u64; work.degree()];
        for n in 1..=n_max {
            if n > 1 {
                power = work.mul_raw(&power, &y);
            }
            let v = val_p(n as u64, p);
            let mut term = power.clone();
            for _ in 0..v {
                debug_assert!(term.iter().all(|c| c % p == 0));
                term.iter_mut().for_each(|c| *c /= p);
            }
            let unit = n as u64 / p.pow(v);
            let term = work.scale_raw(&term, inv_mod(unit % q, q).unwrap());
            acc = if n % 2 == 1 { work.add_raw(&acc, &term) } else { work.sub_raw(&acc, &term) };
        }
        Ok(CycInt { ring: work, coords: acc, pi_prec: n_target }.reduce_to(ring))
    }

    /// `exp` on elements of valuation at least 2.
    pub fn pexp(&self) -> Result<CycInt> {
        let v = self.v_pi();
        if !v.is_at_least(2) {
            return Err(Error::ValuationTooSmall { found: v.value(), required: 2 });
        }
        let ring = &self.ring;
        let p = ring.p;
        let n_target = self.pi_prec;
        // v(x^n / n!) >= n + 1
        let n_max = n_target;
        let guard = legendre(n_max as u64, p) + 1;
        let work = CycRing::new(p, ring.prec + guard)?;
        let q = work.modulus;
        let x = self.lift_to(&work).coords;

        let mut acc = work.one().coords;
        let mut term = acc.clone();
        for n in 1..=n_max {
            term = work.mul_raw(&term, &x);
            let v = val_p(n as u64, p);
            for _ in 0..v {
                term.iter_mut().for_each(|c| *c /= p);
            }
            let unit = n as u64 / p.pow(v);
            term = work.scale_raw(&term, inv_mod(unit % q, q).unwrap());
            acc = work.add_raw(&acc, &term);
        }
        Ok(CycInt { ring: work, coords: acc, pi_prec: n_target }.reduce_to(ring))
    }
}

/// Number of log-series terms needed for `n` π-adic digits:
/// `N + (p-1)(ceil(log_p N) + 1)`.
fn log_terms(n: usize, p: u64) -> usize {
    let mut ceil_log = 0u32;
    let mut pw = 1u64;
    while pw < n as u64 {
        pw *= p;
        ceil_log += 1;
    }
    n + (p as usize - 1) * (ceil_log as usize + 1)
}

fn ilog(n: u64, p: u64) -> u32 {
    let mut k = 0;
    let mut pw = p;
    while pw <= n {
        pw *= p;
        k += 1;
    }
    k
}

/// `v_p(n!)`.
fn legendre(n: u64, p: u64) -> u32 {
    let mut v = 0;
    let mut pw = p;
    while pw <= n {
        v += (n / pw) as u32;
        pw *= p;
    }
    v
}

impl Add for &CycInt {
    type Output = CycInt;
    fn add(self, rhs: &CycInt) -> CycInt {
        self.checked_op(rhs, CycOp::Add).expect("ring mismatch")
    }
}

impl Sub for &CycInt {
    type Output = CycInt;
    fn sub(self, rhs: &CycInt) -> CycInt {
        self.checked_op(rhs, CycOp::Sub).expect("ring mismatch")
    }
}

impl Mul for &CycInt {
    type Output = CycInt;
    fn mul(self, rhs: &CycInt) -> CycInt {
        self.checked_op(rhs, CycOp::Mul).expect("ring mismatch")
    }
}

impl Add for CycInt {
    type Output = CycInt;
    fn add(self, rhs: CycInt) -> CycInt {
        &self + &rhs
    }
}

impl Sub for CycInt {
    type Output = CycInt;
    fn sub(self, rhs: CycInt) -> CycInt {
        &self - &rhs
    }
}

impl Mul for CycInt {
    type Output = CycInt;
    fn mul(self, rhs: CycInt) -> CycInt {
        &self * &rhs
    }
}

impl Neg for &CycInt {
    type Output = CycInt;
    fn neg(self) -> CycInt {
        &self.ring.zero() - self
    }
}

/// `cyc_arith`: ring operation that reports a ring mismatch as an error.
pub fn cyc_arith(x: &CycInt, y: &CycInt, op: CycOp) -> Result<CycInt> {
    x.checked_op(y, op)
}

/// Teichmüller digits `a_start, a_{start+1}, ...` of a π-adic expansion, stored as
/// residues in `F_p`. Leading zeros are stripped into `start`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PiDigits {
    pub prime: u64,
    pub start: usize,
    pub digits: Vec<u64>,
}

impl PiDigits {
    /// From the dense sequence `a_0, ..., a_{n-1}`.
    pub fn from_dense(prime: u64, dense: Vec<u64>) -> PiDigits {
        let len = dense.len();
        let start = dense.iter().position(|&a| a != 0).unwrap_or(len);
        PiDigits { prime, start, digits: dense[start..].to_vec() }
    }

    /// One past the last known digit index.
    pub fn end(&self) -> usize {
        self.start + self.digits.len()
    }

    /// Digit `a_n`, or `None` if it lies beyond the known precision.
    pub fn digit(&self, n: usize) -> Option<u64> {
        if n < self.start {
            Some(0)
        } else {
            self.digits.get(n - self.start).copied()
        }
    }

    pub fn is_zero(&self) -> bool {
        self.digits.is_empty()
    }
}

/// Scalar in `Z_p` known modulo `p^precision`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ZpValue {
    pub prime: u64,
    pub precision: u32,
    pub value: u64,
}

impl ZpValue {
    pub fn new(prime: u64, precision: u32, value: i64) -> ZpValue {
        let q = prime.pow(precision);
        ZpValue { prime, precision, value: crate::arith::reduce_i64(value, q) }
    }

    pub fn modulus(&self) -> u64 {
        self.prime.pow(self.precision)
    }

    pub fn is_unit(&self) -> bool {
        !self.value.is_multiple_of(self.prime)
    }
}

/// The `(p-1)`-st root of unity (or 0) congruent to `d` mod `p`, modulo `p^M`.
pub fn teichmuller(p: u64, d: u64, prec: u32) -> Result<ZpValue> {
    require_odd_prime(p)?;
    let q = p.pow(prec);
    Ok(ZpValue { prime: p, precision: prec, value: teichmuller_raw(p, d % p, q) })
}

/// A `p`-th root in `Z_p` of a unit `z`, if one exists.
///
/// A root exists iff `z^{p-1} = 1 mod p^2`; it is then
/// `ω(z)^s exp(log_p(<z>)/p)` with `s = p^{-1} mod (p-1)` and `<z> = z/ω(z)`.
/// The result is known modulo `p^{precision - 1}`.
pub fn pth_root_unit(z: ZpValue) -> Result<Option<ZpValue>> {
    let p = z.prime;
    require_odd_prime(p)?;
    if !z.is_unit() {
        return Err(Error::NotUnit);
    }
    if z.precision < 2 {
        return Err(Error::OutOfRange("need precision >= 2 to test for p-th roots".into()));
    }
    let q = z.modulus();
    if pow_mod(z.value, p - 1, p * p) != 1 {
        return Ok(None);
    }
    let ring = CycRing::new(p, z.precision)?;
    let omega = ring.teichmuller(z.value % p);
    let principal = mul_mod(z.value, inv_mod(omega, q).unwrap(), q);
    let log = ring.scalar(principal).plog()?;
    let root_principal = log.div_p()?.pexp()?;
    let s = inv_mod(p % (p - 1), p - 1).unwrap();
    let value = mul_mod(pow_mod(omega, s, q), root_principal.coords()[0], q);
    let out_prec = z.precision - 1;
    Ok(Some(ZpValue { prime: p, precision: out_prec, value: value % p.pow(out_prec) }))
}

/// `v_π( sum_{i=0}^{p-1} i^n ζ^{ij} - (-1)^{n-1} n! p / (j^n π^n) )`.
pub fn lemma_sum_discrepancy(ring: &Arc<CycRing>, n: u64, j: u64) -> Result<Valuation> {
    let p = ring.p;
    if n == 0 || n >= p || j == 0 || j >= p {
        return Err(Error::OutOfRange(format!("need 1 <= n, j <= p-1, got n={n}, j={j}, p={p}")));
    }
    let q = ring.modulus;
    let mut full = vec![0u64; p as usize];
    for i in 0..p {
        let slot = ((i * j) % p) as usize;
        full[slot] = (full[slot] + pow_mod(i, n, q)) % q;
    }
    let sum = ring.wrap(ring.reduce_cyclic(&full));
    let mut p_over = ring.scalar(p);
    for _ in 0..n {
        p_over = p_over.div_pi()?;
    }
    let fact = (1..=n).fold(1u64, |acc, k| mul_mod(acc, k, q));
    let mut coeff = mul_mod(fact, inv_mod(pow_mod(j, n, q), q).unwrap(), q);
    if n.is_multiple_of(2) {
        coeff = neg_mod(coeff, q);
    }
    Ok((&sum - &p_over.scale(coeff)).v_pi())
}

/// The sum `sum_i i^n ζ^{ij}` agrees with `(-1)^{n-1} n! p / (j^n (ζ-1)^n)` modulo `π^{p-n}`.
pub fn check_lemma_sum(ring: &Arc<CycRing>, n: u64, j: u64) -> Result<bool> {
    Ok(lemma_sum_discrepancy(ring, n, j)?.is_at_least((ring.p - n) as usize))
}

/// `v_π((ζ - 1)^{p-1} + p)`.
pub fn pi_power_discrepancy(ring: &Arc<CycRing>) -> Valuation {
    (&ring.pi().pow(ring.p - 1) + &ring.scalar(ring.p)).v_pi()
}

/// `(ζ - 1)^{p-1} = -p` modulo `p(ζ - 1)`.
pub fn check_pi_power_p(ring: &Arc<CycRing>) -> bool {
    pi_power_discrepancy(ring).is_at_least(ring.p as usize)
}
