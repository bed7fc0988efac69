//! Exact arithmetic in cyclotomic fields `Q(ζ_m)`.
//!
//! A [`CycNum`] is stored in the power basis `1, ζ_m, …, ζ_m^{φ(m)-1}` after
//! reduction modulo the cyclotomic polynomial `Φ_m`, and always at its minimal
//! conductor. Both facts together make the representation unique, so equality
//! and hashing are structural.
//!
//! ```
//! use clifford_codes::cyclo::CycNum;
//!
//! let i = CycNum::zeta(4, 1);
//! assert_eq!(&i * &i, CycNum::from_integer(-1));
//!
//! let w = CycNum::zeta(3, 1);
//! assert!((CycNum::one() + &w + &w * &w).is_zero());
//! ```

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::atomic::{AtomicU32, Ordering};
use std::sync::{Arc, OnceLock, RwLock};

use num::complex::Complex64;
use num::integer::Integer;
use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default upper bound on conductors produced by mixed-conductor arithmetic.
pub const DEFAULT_CONDUCTOR_CAP: u32 = 1 << 20;

static CONDUCTOR_CAP: AtomicU32 = AtomicU32::new(DEFAULT_CONDUCTOR_CAP);

/// Sets the process-wide conductor cap used by the checked operations.
pub fn set_conductor_cap(cap: u32) {
    CONDUCTOR_CAP.store(cap.max(1), Ordering::Relaxed);
}

pub fn conductor_cap() -> u32 {
    CONDUCTOR_CAP.load(Ordering::Relaxed)
}

/// Per-conductor constants: `Φ_m`, its degree and the primes dividing `m`.
#[derive(Debug)]
struct FieldData {
    phi: usize,
    /// Coefficients of the monic `Φ_m`, lowest degree first (length `phi + 1`).
    cyclotomic: Vec<BigInt>,
    primes: Vec<u32>,
}

fn field_cache() -> &'static RwLock<HashMap<u32, Arc<FieldData>>> {
    static CACHE: OnceLock<RwLock<HashMap<u32, Arc<FieldData>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

fn field(m: u32) -> Arc<FieldData> {
    if let Some(f) = field_cache().read().expect("field cache poisoned").get(&m) {
        return f.clone();
    }
    let data = Arc::new(FieldData {
        phi: euler_phi(m) as usize,
        cyclotomic: cyclotomic_polynomial(m),
        primes: prime_factors(m),
    });
    field_cache()
        .write()
        .expect("field cache poisoned")
        .entry(m)
        .or_insert(data)
        .clone()
}

pub(crate) fn prime_factors(mut m: u32) -> Vec<u32> {
    let mut primes = Vec::new();
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            primes.push(p);
            while m.is_multiple_of(p) {
                m /= p;
            }
        }
        p += 1;
    }
    if m > 1 {
        primes.push(m);
    }
    primes
}

pub(crate) fn euler_phi(m: u32) -> u32 {
    prime_factors(m).into_iter().fold(m, |acc, p| acc / p * (p - 1))
}

fn mobius(m: u32) -> i32 {
    let mut n = m;
    let mut sign = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

fn poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Exact division of integer polynomials by a monic divisor.
fn poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let mut quot = vec![BigInt::zero(); rem.len() - dd];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (t, d) in den.iter().enumerate() {
            rem[i + t] -= &c * d;
        }
        quot[i] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero));
    quot
}

/// `Φ_m(x) = Π_{d | m} (x^d - 1)^{μ(m/d)}`.
fn cyclotomic_polynomial(m: u32) -> Vec<BigInt> {
    let x_pow_minus_one = |d: u32| {
        let mut p = vec![BigInt::zero(); d as usize + 1];
        p[0] = BigInt::from(-1);
        p[d as usize] = BigInt::one();
        p
    };
    let mut numer = vec![BigInt::one()];
    let mut denom = vec![BigInt::one()];
    for d in 1..=m {
        if !m.is_multiple_of(d) {
            continue;
        }
        match mobius(m / d) {
            1 => numer = poly_mul(&numer, &x_pow_minus_one(d)),
            -1 => denom = poly_mul(&denom, &x_pow_minus_one(d)),
            _ => {}
        }
    }
    poly_div_exact(&numer, &denom)
}

fn checked_lcm(a: u32, b: u32) -> Result<u32> {
    let l = (a as u64).lcm(&(b as u64));
    let cap = conductor_cap();
    if l > cap as u64 {
        return Err(Error::ConductorOverflow {
            left: a,
            right: b,
            lcm: l,
            cap,
        });
    }
    Ok(l as u32)
}

/// An exact element of a cyclotomic field.
///
/// Invariants: `conductor` is the smallest `m` (with `m ≢ 2 mod 4`) such that
/// the value lies in `Q(ζ_m)`; `coeffs` has length at most `φ(m)` and no
/// trailing zeros. Zero is the empty vector at conductor 1.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycNum {
    conductor: u32,
    coeffs: Vec<BigRational>,
}

impl CycNum {
    pub fn zero() -> Self {
        CycNum {
            conductor: 1,
            coeffs: Vec::new(),
        }
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_rational(q: BigRational) -> Self {
        if q.is_zero() {
            Self::zero()
        } else {
            CycNum {
                conductor: 1,
                coeffs: vec![q],
            }
        }
    }

    /// `num / den` as a rational element. Panics if `den == 0`.
    pub fn from_fraction(num: i64, den: i64) -> Self {
        Self::from_rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// The root of unity `ζ_m^k = exp(2πik/m)`.
    pub fn zeta(m: u32, k: u64) -> Self {
        assert!(m >= 1, "conductor must be positive");
        let k = (k % m as u64) as usize;
        let mut poly = vec![BigRational::zero(); k + 1];
        poly[k] = BigRational::one();
        Self::from_representative(m, poly)
    }

    /// Canonicalises an arbitrary representative `Σ coeffs[k]·ζ_m^k`.
    ///
    /// The vector may be of any length; exponents are taken modulo `m`. The
    /// result is reduced modulo `Φ_m` and moved to its minimal conductor, so
    /// applying this to the coefficients of a canonical value is the identity.
    pub fn from_representative(m: u32, coeffs: Vec<BigRational>) -> Self {
        assert!(m >= 1, "conductor must be positive");
        canonical(m, coeffs)
    }

    /// Builds a value from `[num, den, k]` terms at the document conductor `m`.
    pub fn from_terms(m: u32, terms: &[Term]) -> Result<Self> {
        if m == 0 {
            return Err(Error::Parse("conductor must be positive".into()));
        }
        let mut poly = vec![BigRational::zero(); m as usize];
        for t in terms {
            if t.1 == 0 {
                return Err(Error::Parse(format!("zero denominator in term {t:?}")));
            }
            poly[(t.2 % m as u64) as usize] += BigRational::new(BigInt::from(t.0), BigInt::from(t.1));
        }
        Ok(canonical(m, poly))
    }

    /// Expresses the value as `[num, den, k]` terms over `ζ_m` for a document
    /// conductor `m`. Fails when the value does not lie in `Q(ζ_m)` or a
    /// coefficient does not fit in 64 bits.
    pub fn to_terms(&self, m: u32) -> Result<Vec<Term>> {
        if m == 0 || !m.is_multiple_of(self.conductor) {
            return Err(Error::Parse(format!(
                "value of conductor {} cannot be written over ζ_{m}",
                self.conductor
            )));
        }
        let step = (m / self.conductor) as u64;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| {
                let num = c.numer().to_i64();
                let den = c.denom().to_i64();
                match (num, den) {
                    (Some(n), Some(d)) => Ok(Term(n, d, j as u64 * step)),
                    _ => Err(Error::Parse(format!("coefficient {c} exceeds 64 bits"))),
                }
            })
            .collect()
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    /// Power-basis coefficients at the (minimal) conductor.
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.conductor == 1 && self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_rational(&self) -> bool {
        self.conductor == 1
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        if self.conductor != 1 {
            return None;
        }
        Some(self.coeffs.first().cloned().unwrap_or_else(BigRational::zero))
    }

    /// Integer value, if the number is a rational integer that fits in `i64`.
    pub fn as_integer(&self) -> Option<i64> {
        let q = self.as_rational()?;
        if q.is_integer() {
            q.to_integer().to_i64()
        } else {
            None
        }
    }

    pub fn checked_add(&self, other: &CycNum) -> Result<CycNum> {
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.conductor == other.conductor {
            let n = self.coeffs.len().max(other.coeffs.len());
            let mut coeffs = Vec::with_capacity(n);
            for j in 0..n {
                let c = match (self.coeffs.get(j), other.coeffs.get(j)) {
                    (Some(a), Some(b)) => a + b,
                    (Some(a), None) => a.clone(),
                    (None, Some(b)) => b.clone(),
                    (None, None) => unreachable!(),
                };
                coeffs.push(c);
            }
            trim(&mut coeffs);
            return Ok(descend(self.conductor, coeffs));
        }
        let l = checked_lcm(self.conductor, other.conductor)?;
        let mut poly = self.lifted(l);
        for (j, c) in other.lifted(l).into_iter().enumerate() {
            if !c.is_zero() {
                poly[j] += c;
            }
        }
        Ok(canonical(l, poly))
    }

    pub fn checked_sub(&self, other: &CycNum) -> Result<CycNum> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &CycNum) -> Result<CycNum> {
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero());
        }
        if let Some(q) = self.as_rational() {
            return Ok(other.scale(&q));
        }
        if let Some(q) = other.as_rational() {
            return Ok(self.scale(&q));
        }
        let l = checked_lcm(self.conductor, other.conductor)?;
        let (sa, sb) = ((l / self.conductor) as usize, (l / other.conductor) as usize);
        let mut poly = vec![BigRational::zero(); l as usize];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                poly[(i * sa + j * sb) % l as usize] += a * b;
            }
        }
        Ok(canonical(l, poly))
    }

    /// Multiplies by a rational scalar.
    pub fn scale(&self, q: &BigRational) -> CycNum {
        if q.is_zero() || self.is_zero() {
            return Self::zero();
        }
        CycNum {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    /// Divides by a nonzero integer.
    pub fn div_integer(&self, n: i64) -> CycNum {
        assert!(n != 0, "division by zero");
        self.scale(&BigRational::new(BigInt::one(), BigInt::from(n)))
    }

    /// Complex conjugation `ζ_m^k ↦ ζ_m^{m-k}`.
    pub fn conj(&self) -> CycNum {
        if self.conductor <= 2 {
            return self.clone();
        }
        self.galois(self.conductor as u64 - 1)
    }

    /// The Galois automorphism `ζ_m ↦ ζ_m^k` for `gcd(k, m) = 1`.
    pub fn galois(&self, k: u64) -> CycNum {
        let m = self.conductor;
        CycNum::from_representative(m, apply_galois(m, &self.coeffs, k))
    }

    pub fn pow(&self, mut e: u32) -> CycNum {
        let mut base = self.clone();
        let mut acc = CycNum::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// `|a|²` as an exact (real) field element.
    pub fn norm_sqr(&self) -> CycNum {
        self * &self.conj()
    }

    /// Numerical image under `ζ_m ↦ exp(2πi/m)`. Never used for equality.
    pub fn embed(&self) -> Complex64 {
        let m = self.conductor as f64;
        self.coeffs
            .iter()
            .enumerate()
            .map(|(j, c)| {
                let theta = 2.0 * std::f64::consts::PI * j as f64 / m;
                Complex64::from_polar(c.to_f64().unwrap_or(f64::NAN), theta)
            })
            .sum()
    }

    /// Coefficients of the value re-expressed at a multiple `l` of the
    /// conductor, as an unreduced length-`l` representative.
    fn lifted(&self, l: u32) -> Vec<BigRational> {
        let step = (l / self.conductor) as usize;
        let mut poly = vec![BigRational::zero(); l as usize];
        for (j, c) in self.coeffs.iter().enumerate() {
            poly[j * step] = c.clone();
        }
        poly
    }
}

impl Default for CycNum {
    fn default() -> Self {
        Self::zero()
    }
}

/// A textual term `[num, den, k]` meaning `(num/den)·ζ_m^k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term(pub i64, pub i64, pub u64);

fn trim(coeffs: &mut Vec<BigRational>) {
    while coeffs.last().is_some_and(Zero::is_zero) {
        coeffs.pop();
    }
}

fn apply_galois(m: u32, coeffs: &[BigRational], k: u64) -> Vec<BigRational> {
    let mut poly = vec![BigRational::zero(); m as usize];
    for (j, c) in coeffs.iter().enumerate() {
        if !c.is_zero() {
            poly[((j as u64 * k) % m as u64) as usize] += c;
        }
    }
    poly
}

/// Reduces a representative of length at most `m` modulo `Φ_m` in place.
fn reduce_mod_cyclotomic(m: u32, poly: &mut Vec<BigRational>) {
    let f = field(m);
    let phi = f.phi;
    for i in (phi..poly.len()).rev() {
        if poly[i].is_zero() {
            continue;
        }
        let c = std::mem::replace(&mut poly[i], BigRational::zero());
        for (t, coef) in f.cyclotomic[..phi].iter().enumerate() {
            if !coef.is_zero() {
                poly[i - phi + t] -= &c * BigRational::from_integer(coef.clone());
            }
        }
    }
    poly.truncate(phi);
    trim(poly);
}

fn canonical(mut m: u32, poly: Vec<BigRational>) -> CycNum {
    // Fold exponents modulo m.
    let mut folded = if poly.len() > m as usize {
        let mut f = vec![BigRational::zero(); m as usize];
        for (j, c) in poly.into_iter().enumerate() {
            if !c.is_zero() {
                f[j % m as usize] += c;
            }
        }
        f
    } else {
        poly
    };
    // Q(ζ_2k) = Q(ζ_k) for odd k, via ζ_2k = -ζ_k^{(k+1)/2}.
    if m % 4 == 2 {
        let k = m / 2;
        let half = (k as u64).div_ceil(2);
        let mut f = vec![BigRational::zero(); k as usize];
        for (j, c) in folded.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let idx = ((j as u64 * half) % k as u64) as usize;
            if j % 2 == 0 {
                f[idx] += c;
            } else {
                f[idx] -= c;
            }
        }
        folded = f;
        m = k;
    }
    reduce_mod_cyclotomic(m, &mut folded);
    descend(m, folded)
}

/// Moves a reduced value to its minimal conductor.
fn descend(mut m: u32, mut coeffs: Vec<BigRational>) -> CycNum {
    loop {
        if coeffs.len() <= 1 {
            m = 1;
            break;
        }
        let mut moved = false;
        for &p in &field(m).primes {
            let mut d = m / p;
            if d % 4 == 2 {
                d /= 2;
            }
            if d == 1 {
                // Rational values were handled above.
                continue;
            }
            if in_subfield(m, &coeffs, d) {
                coeffs = project_to_subfield(m, &coeffs, d);
                m = d;
                moved = true;
                break;
            }
        }
        if !moved {
            break;
        }
    }
    CycNum { conductor: m, coeffs }
}

/// `x ∈ Q(ζ_d)` iff `x` is fixed by every `σ_k` with `k ≡ 1 (mod d)`.
fn in_subfield(m: u32, coeffs: &[BigRational], d: u32) -> bool {
    (1..m as u64)
        .filter(|&k| k % d as u64 == 1 % d as u64 && k.gcd(&(m as u64)) == 1 && k != 1)
        .all(|k| {
            let mut image = apply_galois(m, coeffs, k);
            reduce_mod_cyclotomic(m, &mut image);
            image == coeffs
        })
}

/// Solves `x = Σ_i y_i ζ_m^{i·m/d}` for the coordinates of `x` in `Q(ζ_d)`.
fn project_to_subfield(m: u32, coeffs: &[BigRational], d: u32) -> Vec<BigRational> {
    let phi_m = field(m).phi;
    let phi_d = field(d).phi;
    let step = (m / d) as usize;
    // Augmented system: rows are coordinates in Q(ζ_m), columns the lifted basis.
    let mut rows = vec![vec![BigRational::zero(); phi_d + 1]; phi_m];
    for i in 0..phi_d {
        let mut b = vec![BigRational::zero(); i * step + 1];
        b[i * step] = BigRational::one();
        reduce_mod_cyclotomic(m, &mut b);
        for (r, c) in b.into_iter().enumerate() {
            rows[r][i] = c;
        }
    }
    for (r, c) in coeffs.iter().enumerate() {
        rows[r][phi_d] = c.clone();
    }
    let mut pivot_row = 0;
    let mut pivots = Vec::with_capacity(phi_d);
    for col in 0..phi_d {
        let Some(p) = (pivot_row..phi_m).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(pivot_row, p);
        let inv = rows[pivot_row][col].recip();
        for x in &mut rows[pivot_row][col..] {
            *x = &*x * &inv;
        }
        let pivot = rows[pivot_row].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != pivot_row && !row[col].is_zero() {
                let factor = row[col].clone();
                for (x, p) in row[col..].iter_mut().zip(&pivot[col..]) {
                    *x -= &factor * p;
                }
            }
        }
        pivots.push((pivot_row, col));
        pivot_row += 1;
    }
    let mut y = vec![BigRational::zero(); phi_d];
    for (r, col) in pivots {
        y[col] = rows[r][phi_d].clone();
    }
    trim(&mut y);
    y
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&CycNum> for &CycNum {
            type Output = CycNum;
            fn $method(self, rhs: &CycNum) -> CycNum {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $trait<CycNum> for CycNum {
            type Output = CycNum;
            fn $method(self, rhs: CycNum) -> CycNum {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&CycNum> for CycNum {
            type Output = CycNum;
            fn $method(self, rhs: &CycNum) -> CycNum {
                (&self).$method(rhs)
            }
        }
        impl $trait<CycNum> for &CycNum {
            type Output = CycNum;
            fn $method(self, rhs: CycNum) -> CycNum {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        CycNum {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        -&self
    }
}

impl std::iter::Sum for CycNum {
    fn sum<I: Iterator<Item = CycNum>>(iter: I) -> CycNum {
        iter.fold(CycNum::zero(), |a, b| a + b)
    }
}

impl<'a> std::iter::Sum<&'a CycNum> for CycNum {
    fn sum<I: Iterator<Item = &'a CycNum>>(iter: I) -> CycNum {
        iter.fold(CycNum::zero(), |a, b| a + b)
    }
}

impl From<i64> for CycNum {
    fn from(n: i64) -> Self {
        CycNum::from_integer(n)
    }
}

/// GAP-style rendering: `E(m)^k` for `ζ_m^k`; conductor 4 uses `i`.
impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (neg, mag) = (c.is_negative(), c.abs());
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let unit = match (self.conductor, j) {
                (_, 0) => String::new(),
                (4, 1) => "i".to_string(),
                (m, 1) => format!("E({m})"),
                (m, k) => format!("E({m})^{k}"),
            };
            match (unit.is_empty(), mag.is_one()) {
                (true, _) => write!(f, "{mag}")?,
                (false, true) => write!(f, "{unit}")?,
                (false, false) => write!(f, "{mag}*{unit}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycNum({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() < tol
    }

    #[test]
    fn cyclotomic_polynomials() {
        let as_i64 = |m| -> Vec<i64> { cyclotomic_polynomial(m).iter().map(|c| c.to_i64().unwrap()).collect() };
        assert_eq!(as_i64(1), vec![-1, 1]);
        assert_eq!(as_i64(2), vec![1, 1]);
        assert_eq!(as_i64(3), vec![1, 1, 1]);
        assert_eq!(as_i64(4), vec![1, 0, 1]);
        assert_eq!(as_i64(8), vec![1, 0, 0, 0, 1]);
        assert_eq!(as_i64(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(as_i64(6), vec![1, -1, 1]);
    }

    #[test]
    fn i_squared_is_minus_one() {
        let i = CycNum::zeta(4, 1);
        let p = &i * &i;
        assert_eq!(p, CycNum::from_integer(-1));
        assert!(p.is_rational());
    }

    #[test]
    fn third_roots_sum_to_zero() {
        let w = CycNum::zeta(3, 1);
        let s = CycNum::one() + &w + &w * &w;
        assert!(s.is_zero());
        assert_eq!(CycNum::zero(), s);
    }

    #[test]
    fn conj_of_zeta8() {
        assert_eq!(CycNum::zeta(8, 1).conj(), CycNum::zeta(8, 7));
    }

    #[test]
    fn zeta2_is_minus_one() {
        let z = CycNum::zeta(2, 1);
        assert_eq!(z.conductor(), 1);
        assert_eq!(z, CycNum::from_integer(-1));
    }

    #[test]
    fn zeta6_is_one_plus_zeta3() {
        let z6 = CycNum::zeta(6, 1);
        let rhs = CycNum::one() + CycNum::zeta(3, 1);
        assert_eq!(z6, rhs);
        assert!(close(z6.embed(), rhs.embed(), 1e-12));
        assert_eq!(z6.conductor(), 3);
    }

    #[test]
    fn embeddings() {
        assert!(close(CycNum::zeta(4, 1).embed(), Complex64::new(0.0, 1.0), 1e-12));
        assert!(close(
            CycNum::from_integer(-1).embed(),
            Complex64::new(-1.0, 0.0),
            1e-12
        ));
        let a = CycNum::one() + CycNum::zeta(8, 1);
        let n = (&a * &a.conj()).embed();
        assert!(close(n, Complex64::new(2.0 + 2f64.sqrt(), 0.0), 1e-10));
    }

    #[test]
    fn subfield_values_drop_conductor() {
        // i written over ζ_8 is ζ_8^2.
        assert_eq!(CycNum::zeta(8, 2), CycNum::zeta(4, 1));
        assert_eq!(CycNum::zeta(8, 2).conductor(), 4);
        // ζ_12^3 = i, ζ_12^4 = ζ_3.
        assert_eq!(CycNum::zeta(12, 3), CycNum::zeta(4, 1));
        assert_eq!(CycNum::zeta(12, 4), CycNum::zeta(3, 1));
        // ζ_8 + ζ_8^7 = √2 stays at conductor 8.
        let r2 = CycNum::zeta(8, 1) + CycNum::zeta(8, 7);
        assert_eq!(r2.conductor(), 8);
        assert_eq!(&r2 * &r2, CycNum::from_integer(2));
        // ζ_8 - ζ_8 + i mixes conductors and descends.
        let s = CycNum::zeta(8, 1) - CycNum::zeta(8, 1) + CycNum::zeta(4, 1);
        assert_eq!(s.conductor(), 4);
        // √-3 = ζ_3 - ζ_3^2 lives at conductor 3 even when built over ζ_12.
        let s3 = CycNum::zeta(12, 4) - CycNum::zeta(12, 8);
        assert_eq!(s3.conductor(), 3);
    }

    #[test]
    fn canonicalize_is_idempotent() {
        let x = CycNum::zeta(12, 5) + CycNum::from_fraction(3, 7) * CycNum::zeta(12, 1);
        let again = CycNum::from_representative(x.conductor(), x.coeffs().to_vec());
        assert_eq!(x, again);
    }

    #[test]
    fn conductor_cap_is_enforced() {
        set_conductor_cap(100);
        let a = CycNum::zeta(16, 1);
        let b = CycNum::zeta(9, 1);
        let err = a.checked_mul(&b).unwrap_err();
        set_conductor_cap(DEFAULT_CONDUCTOR_CAP);
        let msg = err.to_string();
        assert!(msg.contains("16") && msg.contains('9'), "{msg}");
    }

    #[test]
    fn terms_round_trip() {
        let x = CycNum::from_fraction(1, 2) + CycNum::zeta(4, 1);
        let terms = x.to_terms(8).unwrap();
        assert_eq!(CycNum::from_terms(8, &terms).unwrap(), x);
        assert!(CycNum::zeta(3, 1).to_terms(8).is_err());
    }

    #[test]
    fn display() {
        assert_eq!(CycNum::from_fraction(-1, 2).to_string(), "-1/2");
        assert_eq!((CycNum::one() + CycNum::zeta(4, 1)).to_string(), "1 + i");
        assert_eq!(CycNum::zeta(3, 2).to_string(), "-1 - E(3)");
    }
}
