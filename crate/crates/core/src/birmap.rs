//! Plane rational maps as reduced, normalized triples of homogeneous polynomials.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::group::{self, GroupTable};
use crate::poly::{gcd, gcd_all, HomPoly};
use crate::scalar::CycScalar;

/// Default element cap for [`closure`].
pub const DEFAULT_CLOSURE_CAP: usize = 256;

/// A point of the projective plane with first nonzero coordinate equal to 1.
#[derive(Clone, PartialEq, Eq)]
pub struct ProjPoint([CycScalar; 3]);

impl ProjPoint {
    pub fn new(coords: [CycScalar; 3]) -> Result<Self> {
        let Some(lead) = coords.iter().find(|c| !c.is_zero()) else {
            return Err(Error::ZeroPoint);
        };
        let inv = lead.inv()?;
        Ok(ProjPoint(coords.map(|c| c.mul(&inv))))
    }

    pub fn from_ints(c: [i64; 3]) -> Result<Self> {
        Self::new(c.map(CycScalar::from_int))
    }

    pub fn parse(coords: &[&str; 3]) -> Result<Self> {
        let a = CycScalar::parse(coords[0])?;
        let b = CycScalar::parse(coords[1])?;
        let c = CycScalar::parse(coords[2])?;
        Self::new([a, b, c])
    }

    pub fn coords(&self) -> &[CycScalar; 3] {
        &self.0
    }

    pub fn to_strings(&self) -> [String; 3] {
        core::array::from_fn(|i| self.0[i].to_text())
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} : {} : {})", self.0[0], self.0[1], self.0[2])
    }
}

impl fmt::Debug for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Result of evaluating a map at a point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Evaluation {
    Point(ProjPoint),
    /// All components vanish: the point is a base point.
    Indeterminate,
}

/// A rational map `(f1 : f2 : f3)` of the plane.
///
/// Invariant: components share a degree, have no common factor, and the first
/// nonzero coefficient (components in order, monomials in descending graded lex)
/// is 1. Two maps are projectively equal iff they are structurally equal.
#[derive(Clone, PartialEq, Eq)]
pub struct ProjMap {
    comps: [HomPoly; 3],
}

impl ProjMap {
    /// Reduces and normalizes an arbitrary triple.
    pub fn new(comps: [HomPoly; 3]) -> Result<Self> {
        if comps.iter().all(HomPoly::is_zero) {
            return Err(Error::ZeroMap);
        }
        let d = comps.iter().find(|c| !c.is_zero()).map(HomPoly::degree).unwrap();
        if comps.iter().any(|c| !c.is_zero() && c.degree() != d) {
            return Err(Error::DegreeMismatch);
        }
        let g = gcd_all(&comps);
        let reduced: [HomPoly; 3] = if g.degree() > 0 {
            core::array::from_fn(|i| {
                if comps[i].is_zero() {
                    HomPoly::zero(d - g.degree())
                } else {
                    comps[i].div_exact(&g).expect("gcd divides every component")
                }
            })
        } else {
            comps
        };
        let deg = reduced.iter().find(|c| !c.is_zero()).map(HomPoly::degree).unwrap();
        if deg == 0 {
            return Err(Error::DegreeMismatch);
        }
        let lead = reduced.iter().find_map(|c| c.terms_desc().next().map(|(_, v)| v.clone())).unwrap();
        let inv = lead.inv()?;
        let comps = reduced.map(|c| if c.is_zero() { HomPoly::zero(deg) } else { c.scale(&inv) });
        Ok(ProjMap { comps })
    }

    pub fn parse(comps: &[&str; 3]) -> Result<Self> {
        let a = HomPoly::parse(comps[0])?;
        let b = HomPoly::parse(comps[1])?;
        let c = HomPoly::parse(comps[2])?;
        Self::new([a, b, c])
    }

    pub fn identity() -> Self {
        ProjMap { comps: [HomPoly::var(0), HomPoly::var(1), HomPoly::var(2)] }
    }

    /// The diagonal linear map `(a x : b y : c z)`.
    pub fn diagonal(a: CycScalar, b: CycScalar, c: CycScalar) -> Result<Self> {
        Self::new([HomPoly::var(0).scale(&a), HomPoly::var(1).scale(&b), HomPoly::var(2).scale(&c)])
    }

    pub fn components(&self) -> &[HomPoly; 3] {
        &self.comps
    }

    pub fn degree(&self) -> u32 {
        self.comps.iter().map(HomPoly::degree).max().unwrap()
    }

    pub fn component_strings(&self) -> [String; 3] {
        core::array::from_fn(|i| self.comps[i].to_text())
    }

    /// Canonical one-line text form, also used as the deduplication key.
    pub fn to_text(&self) -> String {
        alloc::format!("{self}")
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }

    pub fn evaluate(&self, p: &ProjPoint) -> Evaluation {
        let v: [CycScalar; 3] = core::array::from_fn(|i| self.comps[i].eval(p.coords()));
        match ProjPoint::new(v) {
            Ok(q) => Evaluation::Point(q),
            Err(_) => Evaluation::Indeterminate,
        }
    }
}

impl fmt::Display for ProjMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} : {} : {})", self.comps[0], self.comps[1], self.comps[2])
    }
}

impl fmt::Debug for ProjMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// The product of two maps together with whether a common factor was cancelled.
pub struct Composite {
    pub map: ProjMap,
    pub cancelled: bool,
}

/// `f ∘ g`: `g` is applied first.
pub fn compose(f: &ProjMap, g: &ProjMap) -> Result<ProjMap> {
    compose_detailed(f, g).map(|c| c.map)
}

pub fn compose_detailed(f: &ProjMap, g: &ProjMap) -> Result<Composite> {
    let sub: [HomPoly; 3] = core::array::from_fn(|i| f.comps[i].substitute(&g.comps));
    if sub.iter().all(HomPoly::is_zero) {
        return Err(Error::ZeroMap);
    }
    let full = f.degree() * g.degree();
    let map = ProjMap::new(sub)?;
    let cancelled = map.degree() < full;
    Ok(Composite { map, cancelled })
}

/// `f^n`, by repeated composition.
pub fn iterate(f: &ProjMap, n: u32) -> Result<ProjMap> {
    let mut cur = ProjMap::identity();
    for _ in 0..n {
        cur = compose(f, &cur)?;
    }
    Ok(cur)
}

/// Degrees of `f, f^2, ..., f^n`.
pub fn degree_sequence(f: &ProjMap, n: u32) -> Result<Vec<u32>> {
    let mut out = Vec::with_capacity(n as usize);
    let mut cur = f.clone();
    for m in 1..=n {
        out.push(cur.degree());
        if m < n {
            cur = compose(f, &cur)?;
        }
    }
    Ok(out)
}

pub fn projective_eq(f: &ProjMap, g: &ProjMap) -> bool {
    f == g
}

/// Finite group generated by `gens` under composition, sorted by (degree, text).
pub fn closure(gens: &[ProjMap], cap: usize) -> Result<GroupTable<ProjMap>> {
    group::close(
        ProjMap::identity(),
        gens,
        cap,
        compose,
        ProjMap::to_text,
        |m, _| (m.degree(), m.to_text()),
    )
}

/// Induced map `(y : z) ↦ (p : q)` on the pencil of lines through `(1:0:0)`.
///
/// `p` and `q` are coprime binary forms with the first nonzero coefficient equal to 1.
#[derive(Clone, PartialEq, Eq)]
pub struct PencilMap {
    pub p: HomPoly,
    pub q: HomPoly,
}

impl PencilMap {
    pub fn new(p: HomPoly, q: HomPoly) -> Option<Self> {
        if !p.is_binary_form() || !q.is_binary_form() {
            return None;
        }
        let g = gcd(&p, &q);
        let (p, q) = (p.div_exact(&g)?, q.div_exact(&g)?);
        let deg = if p.is_zero() { q.degree() } else { p.degree() };
        if deg == 0 {
            return None;
        }
        let lead = p.terms_desc().chain(q.terms_desc()).next()?.1.inv().ok()?;
        let fix = |h: HomPoly| if h.is_zero() { HomPoly::zero(deg) } else { h.scale(&lead) };
        Some(PencilMap { p: fix(p), q: fix(q) })
    }

    pub fn identity() -> Self {
        PencilMap { p: HomPoly::var(1), q: HomPoly::var(2) }
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &PencilMap) -> Option<PencilMap> {
        let sub = [HomPoly::zero(other.p.degree()), other.p.clone(), other.q.clone()];
        PencilMap::new(self.p.substitute(&sub), self.q.substitute(&sub))
    }
}

impl fmt::Display for PencilMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} : {})", self.p, self.q)
    }
}

impl fmt::Debug for PencilMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// The action of `f` on the pencil of lines through `(1:0:0)`, or `None` if the
/// pencil is not preserved.
pub fn pencil_action(f: &ProjMap) -> Option<PencilMap> {
    let [_, f2, f3] = &f.comps;
    if f2.is_zero() || f3.is_zero() {
        return None;
    }
    let c = gcd(f2, f3);
    PencilMap::new(f2.div_exact(&c)?, f3.div_exact(&c)?)
}

pub fn evaluate(f: &ProjMap, p: &ProjPoint) -> Evaluation {
    f.evaluate(p)
}

/// Why an orbit check stopped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrbitOutcome {
    /// No orbit point up to step `n` lies in the avoidance set.
    Avoids,
    /// `f^step(B[source])` equals `A[target]`.
    Hits { source: usize, step: u32, target: usize },
    /// `f^step(B[source])` is a base point of `f` that is missing from the avoidance set.
    BasePoint { source: usize, step: u32 },
}

#[derive(Clone, Debug)]
pub struct OrbitCertificate {
    pub outcome: OrbitOutcome,
    /// `orbits[i][m] = f^m(B[i])` for the steps that were computed.
    pub orbits: Vec<Vec<ProjPoint>>,
}

impl OrbitCertificate {
    pub fn avoids(&self) -> bool {
        self.outcome == OrbitOutcome::Avoids
    }
}

/// Checks `f^m(B_i) ≠ A_j` for all `0 ≤ m ≤ n`, recording the orbits.
pub fn orbit_avoids(f: &ProjMap, b: &[ProjPoint], a: &[ProjPoint], n: u32) -> OrbitCertificate {
    let mut orbits = Vec::new();
    for (i, start) in b.iter().enumerate() {
        let mut orbit = alloc::vec![start.clone()];
        let mut cur = start.clone();
        for m in 0..=n {
            if let Some(j) = a.iter().position(|p| *p == cur) {
                orbits.push(orbit);
                return OrbitCertificate {
                    outcome: OrbitOutcome::Hits { source: i, step: m, target: j },
                    orbits,
                };
            }
            if m == n {
                break;
            }
            match f.evaluate(&cur) {
                Evaluation::Point(p) => {
                    orbit.push(p.clone());
                    cur = p;
                }
                Evaluation::Indeterminate => {
                    orbits.push(orbit);
                    return OrbitCertificate { outcome: OrbitOutcome::BasePoint { source: i, step: m }, orbits };
                }
            }
        }
        orbits.push(orbit);
    }
    OrbitCertificate { outcome: OrbitOutcome::Avoids, orbits }
}
