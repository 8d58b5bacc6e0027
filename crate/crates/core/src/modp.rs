//! Reduction of cyclotomic data modulo primes `p ≡ 1 (mod N)`, used as a fast
//! certificate of coprimality.

use alloc::vec::Vec;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::Zero;

use crate::scalar::CycScalar;

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, p);
        }
        b = mul_mod(b, b, p);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin for 64-bit integers.
pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n % b == 0 {
            return n == b;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'outer: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut q = 2;
    while q * q <= n {
        if n % q == 0 {
            out.push(q);
            while n % q == 0 {
                n /= q;
            }
        }
        q += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// A prime `p ≡ 1 (mod n)` together with an element of multiplicative order `n`.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Reduction {
    pub p: u64,
    n: u64,
    root: u64,
}

impl Reduction {
    /// The `index`-th prime `p ≡ 1 (mod n)` above `2^40`.
    pub fn new(n: u32, index: usize) -> Self {
        let n = n as u64;
        let mut k = (1u64 << 40) / n;
        let mut found = 0;
        loop {
            let p = k * n + 1;
            if is_prime(p) {
                if found == index {
                    let qs = prime_factors(n);
                    let root = (2..)
                        .map(|a| pow_mod(a, (p - 1) / n, p))
                        .find(|&w| qs.iter().all(|&q| pow_mod(w, n / q, p) != 1))
                        .expect("a generator exists");
                    return Reduction { p, n, root };
                }
                found += 1;
            }
            k += 1;
        }
    }

    fn int(&self, v: &BigInt) -> u64 {
        let (sign, digits) = v.mod_floor(&BigInt::from(self.p)).to_u64_digits();
        debug_assert!(sign != Sign::Minus);
        digits.first().copied().unwrap_or(0)
    }

    /// Image of `c`, or `None` if a denominator vanishes mod `p`.
    pub fn scalar(&self, c: &CycScalar) -> Option<u64> {
        let m = c.conductor() as u64;
        debug_assert_eq!(self.n % m, 0);
        let w = pow_mod(self.root, self.n / m, self.p);
        let mut acc = 0u64;
        let mut wk = 1u64;
        for q in c.coeffs() {
            if !q.is_zero() {
                let den = self.int(q.denom());
                if den == 0 {
                    return None;
                }
                let v = mul_mod(self.int(q.numer()), pow_mod(den, self.p - 2, self.p), self.p);
                acc = (acc + mul_mod(v, wk, self.p)) % self.p;
            }
            wk = mul_mod(wk, w, self.p);
        }
        Some(acc)
    }

    pub fn from_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        mul_mod(a, b, self.p)
    }

    pub fn inv(&self, a: u64) -> u64 {
        pow_mod(a, self.p - 2, self.p)
    }
}

/// Dense univariate polynomials over `F_p`, lowest degree first.
pub(crate) fn trim(mut v: Vec<u64>) -> Vec<u64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

pub(crate) fn poly_mul(r: &Reduction, a: &[u64], b: &[u64]) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = alloc::vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = r.add(out[i + j], r.mul(x, y));
        }
    }
    trim(out)
}

fn poly_rem(r: &Reduction, a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut a = a.to_vec();
    let inv = r.inv(*b.last().unwrap());
    while a.len() >= b.len() {
        let c = r.mul(*a.last().unwrap(), inv);
        let shift = a.len() - b.len();
        for (j, &bj) in b.iter().enumerate() {
            a[shift + j] = (a[shift + j] + r.p - r.mul(c, bj)) % r.p;
        }
        a = trim(a);
    }
    a
}

/// A gcd (not normalized); empty when both inputs vanish.
pub(crate) fn gcd_poly(r: &Reduction, a: &[u64], b: &[u64]) -> Vec<u64> {
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    while !b.is_empty() {
        let rem = poly_rem(r, &a, &b);
        a = b;
        b = rem;
    }
    a
}

/// Degree of the gcd; `None` when both inputs vanish.
pub(crate) fn gcd_degree(r: &Reduction, a: &[u64], b: &[u64]) -> Option<usize> {
    let g = gcd_poly(r, a, b);
    (!g.is_empty()).then(|| g.len() - 1)
}
