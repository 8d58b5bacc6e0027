//! Exact arithmetic in cyclotomic fields `Q(ζ_N)`.
//!
//! An element over conductor `N` is a residue in `Q[t]/(Φ_N(t))` with `t = ζ_N`,
//! stored as its `φ(N)` coefficients. Arithmetic never checks the conductor cap;
//! only constructors, [`CycScalar::lift`] and parsing do.

use alloc::borrow::Cow;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::sync::atomic::{AtomicU32, Ordering};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::cyclo_table::PHI;
use crate::error::{Error, Result};
use crate::linalg;

pub const DEFAULT_CONDUCTOR_CAP: u32 = 120;

static CONDUCTOR_CAP: AtomicU32 = AtomicU32::new(DEFAULT_CONDUCTOR_CAP);

pub fn conductor_cap() -> u32 {
    CONDUCTOR_CAP.load(Ordering::Relaxed)
}

/// Sets the process-wide conductor cap. Values below 1 are clamped to 1.
pub fn set_conductor_cap(cap: u32) {
    CONDUCTOR_CAP.store(cap.max(1), Ordering::Relaxed);
}

fn check_cap(n: u64) -> Result<()> {
    let cap = conductor_cap();
    if n == 0 || n > cap as u64 {
        return Err(Error::ConductorCap { conductor: n, cap });
    }
    Ok(())
}

pub fn totient(n: u32) -> u32 {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

pub fn mobius(n: u32) -> i64 {
    let mut m = n;
    let mut k = 0;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            m /= p;
            if m % p == 0 {
                return 0;
            }
            k += 1;
        }
        p += 1;
    }
    if m > 1 {
        k += 1;
    }
    if k % 2 == 0 {
        1
    } else {
        -1
    }
}

pub fn divisors(n: u32) -> Vec<u32> {
    (1..=n).filter(|d| n % d == 0).collect()
}

/// Coefficients of `Φ_n`, lowest degree first, computed by exact division of `t^n - 1`.
pub fn cyclotomic_coeffs(n: u32) -> Vec<i64> {
    let mut num: Vec<i64> = alloc::vec![0; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in divisors(n).into_iter().filter(|&d| d < n) {
        let den = cyclotomic_coeffs(d);
        num = int_exact_div(&num, &den);
    }
    num
}

// Division by a monic integer polynomial that is known to be exact.
fn int_exact_div(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let qlen = rem.len() - dd;
    let mut quot = alloc::vec![0; qlen];
    for i in (0..qlen).rev() {
        let c = rem[i + dd];
        quot[i] = c;
        for (j, &dj) in den.iter().enumerate() {
            rem[i + j] -= c * dj;
        }
    }
    quot
}

fn phi_poly(n: u32) -> Cow<'static, [i64]> {
    if (n as usize) < PHI.len() {
        Cow::Owned(PHI[n as usize].iter().map(|&c| c as i64).collect())
    } else {
        Cow::Owned(cyclotomic_coeffs(n))
    }
}

fn q(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// Reduces a coefficient vector modulo `Φ_n` to exactly `φ(n)` entries.
fn reduce_mod(mut c: Vec<BigRational>, n: u32) -> Vec<BigRational> {
    let phi = phi_poly(n);
    let deg = phi.len() - 1;
    while c.len() > deg {
        let top = c.pop().unwrap();
        if top.is_zero() {
            continue;
        }
        let shift = c.len() - deg;
        for (j, &pj) in phi[..deg].iter().enumerate() {
            if pj != 0 {
                c[shift + j] -= &top * q(pj);
            }
        }
    }
    c.resize(deg, BigRational::zero());
    c
}

/// An exact element of `Q(ζ_N)`.
#[derive(Clone)]
pub struct CycScalar {
    n: u32,
    c: Vec<BigRational>,
}

impl CycScalar {
    pub fn zero() -> Self {
        CycScalar { n: 1, c: alloc::vec![BigRational::zero()] }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(v: i64) -> Self {
        CycScalar { n: 1, c: alloc::vec![q(v)] }
    }

    pub fn from_rational(v: BigRational) -> Self {
        CycScalar { n: 1, c: alloc::vec![v] }
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_rational(BigRational::new(num.into(), den.into()))
    }

    /// Builds an element from raw coefficients over conductor `n`.
    pub fn from_coeffs(n: u32, coeffs: Vec<BigRational>) -> Result<Self> {
        check_cap(n as u64)?;
        Ok(CycScalar { n, c: reduce_mod(coeffs, n) })
    }

    /// The primitive root `ζ_n = e^{2πi/n}`.
    pub fn root_of_unity(n: u32) -> Result<Self> {
        check_cap(n as u64)?;
        let mut c = alloc::vec![BigRational::zero(); 2];
        c[1] = BigRational::one();
        Ok(CycScalar { n, c: reduce_mod(c, n) })
    }

    /// `ζ_n^k` for any integer `k`.
    pub fn root_power(n: u32, k: i64) -> Result<Self> {
        check_cap(n as u64)?;
        let e = k.rem_euclid(n as i64) as usize;
        let mut c = alloc::vec![BigRational::zero(); e + 1];
        c[e] = BigRational::one();
        Ok(CycScalar { n, c: reduce_mod(c, n) })
    }

    pub fn conductor(&self) -> u32 {
        self.n
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.c[0].is_one() && self.c[1..].iter().all(Zero::is_zero)
    }

    /// The rational value, if the element lies in `Q`.
    pub fn to_rational(&self) -> Option<BigRational> {
        if self.c[1..].iter().all(Zero::is_zero) {
            Some(self.c[0].clone())
        } else {
            None
        }
    }

    /// The same element over conductor `m`, which must be a multiple of the conductor.
    pub fn lift(&self, m: u32) -> Result<Self> {
        if m == 0 || m % self.n != 0 {
            return Err(Error::NotMultiple { from: self.n, to: m });
        }
        check_cap(m as u64)?;
        Ok(self.lift_unchecked(m))
    }

    fn lift_unchecked(&self, m: u32) -> Self {
        if m == self.n {
            return self.clone();
        }
        let step = (m / self.n) as usize;
        let mut c = alloc::vec![BigRational::zero(); (self.c.len() - 1) * step + 1];
        for (k, v) in self.c.iter().enumerate() {
            c[k * step] = v.clone();
        }
        CycScalar { n: m, c: reduce_mod(c, m) }
    }

    fn align(a: &Self, b: &Self) -> (Cow<'static, [BigRational]>, Cow<'static, [BigRational]>, u32) {
        if a.n == b.n {
            return (Cow::Owned(a.c.clone()), Cow::Owned(b.c.clone()), a.n);
        }
        let m = a.n.lcm(&b.n);
        (Cow::Owned(a.lift_unchecked(m).c), Cow::Owned(b.lift_unchecked(m).c), m)
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.n == other.n {
            let c = self.c.iter().zip(&other.c).map(|(a, b)| a + b).collect();
            return CycScalar { n: self.n, c };
        }
        let (a, b, m) = Self::align(self, other);
        CycScalar { n: m, c: a.iter().zip(b.iter()).map(|(x, y)| x + y).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        CycScalar { n: self.n, c: self.c.iter().map(|v| -v).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.n == 1 {
            return other.scale(&self.c[0]);
        }
        if other.n == 1 {
            return self.scale(&other.c[0]);
        }
        let (a, b, m) = Self::align(self, other);
        let mut prod = alloc::vec![BigRational::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        CycScalar { n: m, c: reduce_mod(prod, m) }
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        CycScalar { n: self.n, c: self.c.iter().map(|v| v * r).collect() }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Multiplicative inverse by the extended Euclidean algorithm against `Φ_N`.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(r) = self.to_rational() {
            return Ok(Self::from_rational(r.recip()));
        }
        let phi: Vec<BigRational> = phi_poly(self.n).iter().map(|&v| q(v)).collect();
        // Invariant: s * a ≡ r0 (mod Φ), t * a ≡ r1 (mod Φ).
        let mut r0 = phi;
        let mut r1 = trimmed(self.c.clone());
        let mut s0: Vec<BigRational> = Vec::new();
        let mut s1: Vec<BigRational> = alloc::vec![BigRational::one()];
        while r1.len() > 1 {
            let (quot, rem) = qpoly_divrem(&r0, &r1);
            let s2 = qpoly_sub(&s0, &qpoly_mul(&quot, &s1));
            r0 = core::mem::replace(&mut r1, rem);
            s0 = core::mem::replace(&mut s1, s2);
        }
        // r1 is a nonzero constant since Φ is irreducible.
        let c = r1[0].recip();
        let out = s1.iter().map(|v| v * &c).collect();
        Ok(CycScalar { n: self.n, c: reduce_mod(out, self.n) })
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }

    /// The same element over its smallest conductor.
    pub fn canonical(&self) -> Self {
        if self.n == 1 {
            return self.clone();
        }
        if self.c[1..].iter().all(Zero::is_zero) {
            return Self::from_rational(self.c[0].clone());
        }
        for d in divisors(self.n) {
            if d == self.n {
                break;
            }
            if d % 4 == 2 || d == 1 {
                continue;
            }
            if let Some(coeffs) = self.project(d) {
                return CycScalar { n: d, c: coeffs };
            }
        }
        self.clone()
    }

    // Coefficients over conductor d if the element lies in Q(ζ_d).
    fn project(&self, d: u32) -> Option<Vec<BigRational>> {
        let k = totient(d) as usize;
        let rows = self.c.len();
        let mut m: linalg::Matrix<BigRational> = alloc::vec![alloc::vec![BigRational::zero(); k]; rows];
        for j in 0..k {
            let mut unit = alloc::vec![BigRational::zero(); k];
            unit[j] = BigRational::one();
            let image = CycScalar { n: d, c: unit }.lift_unchecked(self.n);
            for i in 0..rows {
                m[i][j] = image.c[i].clone();
            }
        }
        linalg::solve(&m, &self.c)
    }

    /// Complex conjugate, i.e. `ζ ↦ ζ^{-1}`.
    pub fn conj(&self) -> Self {
        let n = self.n as usize;
        let mut c = alloc::vec![BigRational::zero(); n.max(1)];
        for (k, v) in self.c.iter().enumerate() {
            let e = (n - k % n) % n;
            c[e] += v;
        }
        CycScalar { n: self.n, c: reduce_mod(c, self.n) }
    }

    /// Parses the scalar grammar, e.g. `"1/2*zeta(8)^3 - 1"`.
    pub fn parse(s: &str) -> Result<Self> {
        crate::expr::parse_scalar(s)
    }

    /// Deterministic text form over the minimal conductor.
    pub fn to_text(&self) -> String {
        alloc::format!("{self}")
    }
}

fn trimmed(mut v: Vec<BigRational>) -> Vec<BigRational> {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    v
}

fn qpoly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = alloc::vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trimmed(out)
}

fn qpoly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = alloc::vec![BigRational::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trimmed(out)
}

fn qpoly_divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut rem = trimmed(a.to_vec());
    let db = b.len() - 1;
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let lead_inv = b[db].recip();
    let mut quot = alloc::vec![BigRational::zero(); rem.len() - db];
    while rem.len() >= b.len() {
        let shift = rem.len() - b.len();
        let c = rem.last().unwrap() * &lead_inv;
        for (j, bj) in b.iter().enumerate() {
            rem[shift + j] -= &c * bj;
        }
        quot[shift] = c;
        rem.pop();
        rem = trimmed(rem);
    }
    (trimmed(quot), rem)
}

impl PartialEq for CycScalar {
    fn eq(&self, other: &Self) -> bool {
        if self.n == other.n {
            return self.c == other.c;
        }
        let (a, b, _) = Self::align(self, other);
        a == b
    }
}

impl Eq for CycScalar {}

impl Default for CycScalar {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for CycScalar {
    fn from(v: i64) -> Self {
        Self::from_int(v)
    }
}

impl linalg::Field for CycScalar {
    fn zero() -> Self {
        CycScalar::zero()
    }
    fn one() -> Self {
        CycScalar::one()
    }
    fn is_zero(&self) -> bool {
        CycScalar::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        CycScalar::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        CycScalar::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        CycScalar::mul(self, other)
    }
    fn neg(&self) -> Self {
        CycScalar::neg(self)
    }
    fn recip(&self) -> Self {
        self.inv().expect("pivot is nonzero")
    }
}

fn write_rational(f: &mut fmt::Formatter<'_>, r: &BigRational) -> fmt::Result {
    if r.denom().is_one() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for CycScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let canon = self.canonical();
        let mut first = true;
        for (k, v) in canon.c.iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            let mag = v.abs();
            if first {
                if v.is_negative() {
                    write!(f, "-")?;
                }
            } else if v.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            if k == 0 {
                write_rational(f, &mag)?;
                continue;
            }
            if !mag.is_one() {
                write_rational(f, &mag)?;
                write!(f, "*")?;
            }
            write!(f, "zeta({})", canon.n)?;
            if k > 1 {
                write!(f, "^{k}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for CycScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycScalar({self})")
    }
}
