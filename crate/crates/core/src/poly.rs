//! Homogeneous polynomials in `(x, y, z)` and their greatest common divisors.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::modp::{self, Reduction};
use crate::scalar::CycScalar;

/// Exponents of `x, y, z`.
pub type Mono = [u32; 3];

/// Homogeneous polynomial with a declared degree.
///
/// Terms are kept in a map ordered lexicographically on exponent triples. Since all
/// terms share one total degree this is the graded lex order, and the leading term
/// is the last entry.
#[derive(Clone, PartialEq, Eq)]
pub struct HomPoly {
    deg: u32,
    terms: BTreeMap<Mono, CycScalar>,
}

fn mono_deg(m: &Mono) -> u32 {
    m[0] + m[1] + m[2]
}

impl HomPoly {
    pub fn zero(deg: u32) -> Self {
        HomPoly { deg, terms: BTreeMap::new() }
    }

    pub fn constant(c: CycScalar) -> Self {
        Self::monomial([0, 0, 0], c)
    }

    pub fn monomial(m: Mono, c: CycScalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        HomPoly { deg: mono_deg(&m), terms }
    }

    /// The variable `x` (0), `y` (1) or `z` (2).
    pub fn var(i: usize) -> Self {
        let mut m = [0, 0, 0];
        m[i] = 1;
        Self::monomial(m, CycScalar::one())
    }

    /// Builds a polynomial from terms, checking homogeneity. Zero coefficients are dropped.
    pub fn from_terms(terms: BTreeMap<Mono, CycScalar>) -> Result<Self> {
        let mut deg = None;
        let mut out = BTreeMap::new();
        for (m, c) in terms {
            if c.is_zero() {
                continue;
            }
            let d = mono_deg(&m);
            if *deg.get_or_insert(d) != d {
                return Err(Error::NotHomogeneous);
            }
            out.insert(m, c);
        }
        Ok(HomPoly { deg: deg.unwrap_or(0), terms: out })
    }

    pub fn parse(s: &str) -> Result<Self> {
        crate::expr::parse_hom(s)
    }

    pub fn degree(&self) -> u32 {
        self.deg
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Mono, &CycScalar)> {
        self.terms.iter()
    }

    /// Terms in descending graded lex order.
    pub fn terms_desc(&self) -> impl Iterator<Item = (&Mono, &CycScalar)> {
        self.terms.iter().rev()
    }

    pub fn leading(&self) -> Option<(&Mono, &CycScalar)> {
        self.terms.iter().next_back()
    }

    pub fn coeff(&self, m: &Mono) -> CycScalar {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    fn add_term(&mut self, m: Mono, c: CycScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(old) => {
                let s = old.add(&c);
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    /// Sum of two polynomials of the same degree (a zero operand adopts the other's degree).
    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        assert_eq!(self.deg, other.deg, "adding polynomials of different degree");
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        HomPoly { deg: self.deg, terms: self.terms.iter().map(|(m, c)| (*m, c.neg())).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: &CycScalar) -> Self {
        if s.is_zero() {
            return Self::zero(self.deg);
        }
        HomPoly { deg: self.deg, terms: self.terms.iter().map(|(m, c)| (*m, c.mul(s))).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.deg + other.deg);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term([ma[0] + mb[0], ma[1] + mb[1], ma[2] + mb[2]], ca.mul(cb));
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::constant(CycScalar::one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// `self(g[0], g[1], g[2])`; the `g[i]` must share one degree.
    pub fn substitute(&self, g: &[HomPoly; 3]) -> HomPoly {
        let d = g.iter().map(|p| p.deg).max().unwrap_or(0);
        let mut powers: [Vec<HomPoly>; 3] = Default::default();
        for (i, gi) in g.iter().enumerate() {
            let top = self.terms.keys().map(|m| m[i]).max().unwrap_or(0);
            let mut v = Vec::with_capacity(top as usize + 1);
            v.push(Self::constant(CycScalar::one()));
            for k in 1..=top as usize {
                let next = v[k - 1].mul(gi);
                v.push(next);
            }
            powers[i] = v;
        }
        let mut out = Self::zero(self.deg * d);
        for (m, c) in &self.terms {
            let term = powers[0][m[0] as usize]
                .mul(&powers[1][m[1] as usize])
                .mul(&powers[2][m[2] as usize]);
            for (tm, tc) in term.terms {
                out.add_term(tm, tc.mul(c));
            }
        }
        out
    }

    pub fn eval(&self, p: &[CycScalar; 3]) -> CycScalar {
        let mut acc = CycScalar::zero();
        for (m, c) in &self.terms {
            let v = p[0].pow(m[0]).mul(&p[1].pow(m[1])).mul(&p[2].pow(m[2])).mul(c);
            acc = acc.add(&v);
        }
        acc
    }

    /// True when the polynomial does not involve `x`.
    pub fn is_binary_form(&self) -> bool {
        self.terms.keys().all(|m| m[0] == 0)
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Self {
        match self.leading() {
            Some((_, c)) => self.scale(&c.inv().expect("nonzero leading coefficient")),
            None => self.clone(),
        }
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &HomPoly) -> Option<HomPoly> {
        let (dm, dc) = d.leading()?;
        let dc_inv = dc.inv().ok()?;
        if self.is_zero() {
            return Some(Self::zero(self.deg.saturating_sub(d.deg)));
        }
        if d.deg > self.deg {
            return None;
        }
        let mut rem = self.clone();
        let mut quot = Self::zero(self.deg - d.deg);
        while let Some((rm, rc)) = rem.leading() {
            if rm[0] < dm[0] || rm[1] < dm[1] || rm[2] < dm[2] {
                return None;
            }
            let qm = [rm[0] - dm[0], rm[1] - dm[1], rm[2] - dm[2]];
            let qc = rc.mul(&dc_inv);
            let step = d.mul(&Self::monomial(qm, qc.clone()));
            rem = rem.sub(&step);
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    /// Largest `v` with `z^v` dividing the polynomial.
    fn z_valuation(&self) -> u32 {
        self.terms.keys().map(|m| m[2]).min().unwrap_or(0)
    }

    fn dehomogenize(&self) -> Bivar {
        let dx = self.terms.keys().map(|m| m[0]).max().unwrap_or(0) as usize;
        let mut out: Bivar = alloc::vec![UniPoly::zero(); dx + 1];
        for (m, c) in &self.terms {
            let slot = &mut out[m[0] as usize];
            slot.set(m[1] as usize, c.clone());
        }
        bivar_trim(out)
    }

    fn homogenize(b: &Bivar) -> HomPoly {
        let mut deg = 0;
        for (i, u) in b.iter().enumerate() {
            if !u.is_zero() {
                deg = deg.max(i + u.degree());
            }
        }
        let mut terms = BTreeMap::new();
        for (i, u) in b.iter().enumerate() {
            for (j, c) in u.0.iter().enumerate() {
                if !c.is_zero() {
                    terms.insert([i as u32, j as u32, (deg - i - j) as u32], c.clone());
                }
            }
        }
        HomPoly { deg: deg as u32, terms }
    }

    pub fn to_text(&self) -> String {
        alloc::format!("{self}")
    }
}

impl fmt::Display for HomPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms_desc() {
            let mut mono = String::new();
            for (i, name) in ["x", "y", "z"].iter().enumerate() {
                if m[i] == 0 {
                    continue;
                }
                if !mono.is_empty() {
                    mono.push('*');
                }
                mono.push_str(name);
                if m[i] > 1 {
                    mono.push_str(&alloc::format!("^{}", m[i]));
                }
            }
            let ctext = c.to_text();
            let composite = ctext[1..].contains(" + ") || ctext[1..].contains(" - ");
            let (neg, body) = if composite {
                (false, alloc::format!("({ctext})"))
            } else if let Some(rest) = ctext.strip_prefix('-') {
                (true, String::from(rest))
            } else {
                (false, ctext)
            };
            let text = if mono.is_empty() {
                body
            } else if body == "1" {
                mono
            } else {
                alloc::format!("{body}*{mono}")
            };
            match (first, neg) {
                (true, true) => write!(f, "-{text}")?,
                (true, false) => write!(f, "{text}")?,
                (false, true) => write!(f, " - {text}")?,
                (false, false) => write!(f, " + {text}")?,
            }
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for HomPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HomPoly[{}]({self})", self.deg)
    }
}

/// Dense univariate polynomial over [`CycScalar`], lowest degree first, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct UniPoly(pub Vec<CycScalar>);

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly(Vec::new())
    }

    pub fn from_coeffs(mut v: Vec<CycScalar>) -> Self {
        while v.last().is_some_and(CycScalar::is_zero) {
            v.pop();
        }
        UniPoly(v)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree; zero for the zero polynomial.
    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    fn set(&mut self, i: usize, c: CycScalar) {
        if self.0.len() <= i {
            self.0.resize(i + 1, CycScalar::zero());
        }
        self.0[i] = c;
        *self = Self::from_coeffs(core::mem::take(&mut self.0));
    }

    pub fn lead(&self) -> Option<&CycScalar> {
        self.0.last()
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.0.len().max(o.0.len());
        let v = (0..n)
            .map(|i| {
                let a = self.0.get(i).cloned().unwrap_or_default();
                match o.0.get(i) {
                    Some(b) => a.add(b),
                    None => a,
                }
            })
            .collect();
        Self::from_coeffs(v)
    }

    pub fn neg(&self) -> Self {
        UniPoly(self.0.iter().map(CycScalar::neg).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut v = alloc::vec![CycScalar::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.0.iter().enumerate() {
                v[i + j] = v[i + j].add(&a.mul(b));
            }
        }
        Self::from_coeffs(v)
    }

    pub fn scale(&self, s: &CycScalar) -> Self {
        Self::from_coeffs(self.0.iter().map(|c| c.mul(s)).collect())
    }

    pub fn monic(&self) -> Self {
        match self.lead() {
            Some(l) => self.scale(&l.inv().expect("nonzero lead")),
            None => Self::zero(),
        }
    }

    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        let dl = d.lead().expect("division by zero polynomial").inv().unwrap();
        let mut rem = self.0.clone();
        let dd = d.0.len() - 1;
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = alloc::vec![CycScalar::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = rem[i + dd].mul(&dl);
            if !c.is_zero() {
                for (j, dj) in d.0.iter().enumerate() {
                    rem[i + j] = rem[i + j].sub(&c.mul(dj));
                }
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        (Self::from_coeffs(quot), Self::from_coeffs(rem))
    }

    /// Monic greatest common divisor (zero if both are zero).
    pub fn gcd(&self, o: &Self) -> Self {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    pub fn eval(&self, x: &CycScalar) -> CycScalar {
        let mut acc = CycScalar::zero();
        for c in self.0.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }
}

/// Polynomial in `x` with coefficients in `K[y]`, indexed by `x`-degree.
type Bivar = Vec<UniPoly>;

fn bivar_trim(mut b: Bivar) -> Bivar {
    while b.last().is_some_and(UniPoly::is_zero) {
        b.pop();
    }
    b
}

fn bivar_content(b: &Bivar) -> UniPoly {
    b.iter().fold(UniPoly::zero(), |g, c| g.gcd(c))
}

fn bivar_div_uni(b: &Bivar, d: &UniPoly) -> Bivar {
    b.iter()
        .map(|c| {
            let (q, r) = c.divrem(d);
            debug_assert!(r.is_zero());
            q
        })
        .collect()
}

fn bivar_primitive(b: &Bivar) -> Bivar {
    let c = bivar_content(b);
    let p = bivar_div_uni(b, &c);
    // normalize the leading scalar so remainders stay small
    let lc = p.last().and_then(|u| u.lead().cloned());
    match lc {
        Some(l) => {
            let inv = l.inv().unwrap();
            p.iter().map(|u| u.scale(&inv)).collect()
        }
        None => p,
    }
}

fn bivar_prem(a: &Bivar, b: &Bivar) -> Bivar {
    let mut r = a.clone();
    let db = b.len() - 1;
    let lb = b[db].clone();
    while r.len() > db {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - db;
        let mut next: Bivar = r.iter().map(|c| c.mul(&lb)).collect();
        for (j, bj) in b.iter().enumerate() {
            next[shift + j] = next[shift + j].sub(&bj.mul(&lr));
        }
        r = bivar_trim(next);
        if r.len() == dr + 1 {
            // leading term did not cancel; cannot happen
            unreachable!("pseudo-division failed to reduce degree");
        }
    }
    r
}

fn bivar_gcd(a: &Bivar, b: &Bivar) -> Bivar {
    if a.is_empty() {
        return bivar_primitive(b);
    }
    if b.is_empty() {
        return bivar_primitive(a);
    }
    let ca = bivar_content(a);
    let cb = bivar_content(b);
    let c = ca.gcd(&cb);
    let (mut p, mut q) = (bivar_primitive(a), bivar_primitive(b));
    if p.len() < q.len() {
        core::mem::swap(&mut p, &mut q);
    }
    while !q.is_empty() {
        let r = bivar_prem(&p, &q);
        p = q;
        q = if r.is_empty() { r } else { bivar_primitive(&r) };
    }
    p.iter().map(|u| u.mul(&c)).collect()
}

// Fixed affine lines `P0 + u·P1` used by the coprimality certificate.
fn line_points() -> [([i64; 3], [i64; 3]); 4] {
    [([1, 3, -2], [2, -1, 5]), ([3, -1, 4], [1, 4, 7]), ([-2, 5, 1], [5, 2, -3]), ([7, 1, -5], [-3, 8, 2])]
}

fn restrict(p: &HomPoly, p0: &[i64; 3], p1: &[i64; 3]) -> UniPoly {
    let lin: [UniPoly; 3] = core::array::from_fn(|i| {
        UniPoly::from_coeffs(alloc::vec![CycScalar::from_int(p0[i]), CycScalar::from_int(p1[i])])
    });
    let top = p.terms.keys().flat_map(|m| m.iter().copied()).max().unwrap_or(0) as usize;
    let powers: [Vec<UniPoly>; 3] = core::array::from_fn(|i| {
        let mut v = alloc::vec![UniPoly::from_coeffs(alloc::vec![CycScalar::one()])];
        for k in 1..=top {
            let next = v[k - 1].mul(&lin[i]);
            v.push(next);
        }
        v
    });
    let mut acc = UniPoly::zero();
    for (m, c) in &p.terms {
        let t = powers[0][m[0] as usize].mul(&powers[1][m[1] as usize]).mul(&powers[2][m[2] as usize]);
        acc = acc.add(&t.scale(c));
    }
    acc
}

/// Certifies `gcd(a, b) = 1` by restricting to a line `P0 + u·P1` with `a(P1) ≠ 0`.
///
/// A common factor `g` satisfies `g(P1) ≠ 0`, so its restriction keeps its degree and
/// would show up in the univariate gcd. A `false` result is inconclusive.
fn certify_coprime(a: &HomPoly, b: &HomPoly) -> bool {
    if certify_coprime_mod_p(&[a, b]) {
        return true;
    }
    for (p0, p1) in line_points() {
        let pt = p1.map(CycScalar::from_int);
        if a.eval(&pt).is_zero() {
            continue;
        }
        let ra = restrict(a, &p0, &p1);
        let rb = restrict(b, &p0, &p1);
        return ra.gcd(&rb).degree() == 0;
    }
    false
}

fn restrict_mod_p(r: &Reduction, p: &HomPoly, p0: &[i64; 3], p1: &[i64; 3]) -> Option<Vec<u64>> {
    let lin: [Vec<u64>; 3] = core::array::from_fn(|i| alloc::vec![r.from_i64(p0[i]), r.from_i64(p1[i])]);
    let mut acc: Vec<u64> = Vec::new();
    for (m, c) in &p.terms {
        let mut t = alloc::vec![r.scalar(c)?];
        for v in 0..3 {
            for _ in 0..m[v] {
                t = modp::poly_mul(r, &t, &lin[v]);
            }
        }
        if acc.len() < t.len() {
            acc.resize(t.len(), 0);
        }
        for (k, x) in t.into_iter().enumerate() {
            acc[k] = r.add(acc[k], x);
        }
    }
    Some(modp::trim(acc))
}

// The same line argument as `certify_coprime`, run after reducing at a prime above
// p ≡ 1 (mod N). If the restriction of `ps[0]` keeps its degree, a common factor over
// the number field reduces to a nonconstant common factor mod p.
fn certify_coprime_mod_p(ps: &[&HomPoly]) -> bool {
    let n = ps
        .iter()
        .flat_map(|p| p.terms.values())
        .fold(1u32, |acc, c| num_integer::Integer::lcm(&acc, &c.conductor()));
    'primes: for index in 0..2 {
        let r = Reduction::new(n, index);
        for (p0, p1) in line_points() {
            let mut rs = Vec::with_capacity(ps.len());
            for p in ps {
                match restrict_mod_p(&r, p, &p0, &p1) {
                    Some(v) => rs.push(v),
                    None => continue 'primes,
                }
            }
            if rs[0].len() != ps[0].deg as usize + 1 {
                continue;
            }
            let mut g = rs[0].clone();
            for other in &rs[1..] {
                if modp::gcd_degree(&r, &g, other) == Some(0) {
                    return true;
                }
                g = modp::gcd_poly(&r, &g, other);
            }
            continue 'primes;
        }
    }
    false
}

/// Monic greatest common divisor of two homogeneous polynomials.
pub fn gcd(a: &HomPoly, b: &HomPoly) -> HomPoly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.deg == 0 || b.deg == 0 {
        return HomPoly::constant(CycScalar::one());
    }
    if certify_coprime(a, b) {
        return HomPoly::constant(CycScalar::one());
    }
    let v = a.z_valuation().min(b.z_valuation());
    let g = bivar_gcd(&a.dehomogenize(), &b.dehomogenize());
    let g = HomPoly::homogenize(&g);
    let zv = HomPoly::monomial([0, 0, v], CycScalar::one());
    g.mul(&zv).monic()
}

/// Monic gcd of a list of homogeneous polynomials.
pub fn gcd_all(ps: &[HomPoly]) -> HomPoly {
    let nonzero: Vec<&HomPoly> = ps.iter().filter(|p| !p.is_zero()).collect();
    if nonzero.len() >= 2 && certify_coprime_mod_p(&nonzero) {
        return HomPoly::constant(CycScalar::one());
    }
    let mut g = HomPoly::zero(0);
    for p in ps {
        g = gcd(&g, p);
        if g.deg == 0 && !g.is_zero() {
            break;
        }
    }
    g
}
