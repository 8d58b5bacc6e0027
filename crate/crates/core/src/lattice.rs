//! Picard lattices of blow-ups of the plane.
//!
//! A class is stored as `ell·L + Σ e_i·E_i`. Curves written `mL - Σ a_i E_i` in the
//! usual notation have `a_i = -e_i`; [`DivisorClass::from_multiplicities`] is the
//! one place that converts.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::birmap::ProjPoint;
use crate::error::{Error, Result};
use crate::linalg;
use crate::scalar::CycScalar;

/// Largest rank for which negative curves are enumerated from coordinates.
pub const MAX_CURVE_RANK: usize = 5;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DivisorClass {
    pub ell: i64,
    pub e: Vec<i64>,
}

impl DivisorClass {
    pub fn new(ell: i64, e: Vec<i64>) -> Self {
        DivisorClass { ell, e }
    }

    pub fn zero(r: usize) -> Self {
        DivisorClass { ell: 0, e: alloc::vec![0; r] }
    }

    pub fn line(r: usize) -> Self {
        DivisorClass { ell: 1, e: alloc::vec![0; r] }
    }

    /// `E_i` for a 1-based index `i`.
    pub fn exceptional(r: usize, i: usize) -> Self {
        let mut e = alloc::vec![0; r];
        e[i - 1] = 1;
        DivisorClass { ell: 0, e }
    }

    /// `mL - Σ a_i E_i`.
    pub fn from_multiplicities(m: i64, a: &[i64]) -> Self {
        DivisorClass { ell: m, e: a.iter().map(|v| -v).collect() }
    }

    /// The canonical class `-3L + Σ E_i`.
    pub fn canonical(r: usize) -> Self {
        DivisorClass { ell: -3, e: alloc::vec![1; r] }
    }

    pub fn rank(&self) -> usize {
        self.e.len()
    }

    /// Multiplicities `a_i = -e_i`.
    pub fn multiplicities(&self) -> Vec<i64> {
        self.e.iter().map(|v| -v).collect()
    }

    /// Coordinates in the basis `(L, E_1, ..., E_r)`.
    pub fn to_vec(&self) -> Vec<i64> {
        let mut v = alloc::vec![self.ell];
        v.extend_from_slice(&self.e);
        v
    }

    pub fn from_vec(v: &[i64]) -> Self {
        DivisorClass { ell: v[0], e: v[1..].to_vec() }
    }

    pub fn add(&self, o: &Self) -> Self {
        DivisorClass { ell: self.ell + o.ell, e: self.e.iter().zip(&o.e).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(-1))
    }

    pub fn scale(&self, k: i64) -> Self {
        DivisorClass { ell: self.ell * k, e: self.e.iter().map(|v| v * k).collect() }
    }

    /// Intersection number, panicking on a rank mismatch.
    pub fn dot(&self, o: &Self) -> i64 {
        assert_eq!(self.rank(), o.rank(), "rank mismatch");
        self.ell * o.ell - self.e.iter().zip(&o.e).map(|(a, b)| a * b).sum::<i64>()
    }

    pub fn self_intersection(&self) -> i64 {
        self.dot(self)
    }

    pub fn dot_canonical(&self) -> i64 {
        self.dot(&Self::canonical(self.rank()))
    }

    /// Indices (0-based) with nonzero `E` coefficient.
    pub fn support(&self) -> Vec<usize> {
        (0..self.e.len()).filter(|&i| self.e[i] != 0).collect()
    }

    /// Deterministic order for curve lists: `(-1)`-classes first, then by `ell`,
    /// support and coefficients.
    pub fn curve_sort_key(&self) -> (i64, i64, Vec<usize>, Vec<i64>) {
        (-self.self_intersection(), self.ell, self.support(), self.e.iter().map(|v| -v).collect())
    }

    /// Readable label such as `E2`, `D12`, `E1-E5`, `D23-E4` or `2L-E1-E2-E3-E4-E5`.
    pub fn label(&self) -> String {
        let mut out = String::new();
        let mut rest = self.e.clone();
        let minus_ones: Vec<usize> = (0..rest.len()).filter(|&i| rest[i] == -1).collect();
        if self.ell == 1 && minus_ones.len() >= 2 {
            out.push_str(&alloc::format!("D{}{}", minus_ones[0] + 1, minus_ones[1] + 1));
            rest[minus_ones[0]] = 0;
            rest[minus_ones[1]] = 0;
        } else if self.ell != 0 {
            push_term(&mut out, self.ell, "L");
        }
        for (i, &v) in rest.iter().enumerate() {
            if v != 0 {
                push_term(&mut out, v, &alloc::format!("E{}", i + 1));
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    /// Parses labels built from `L`, `K`, `E<i>` and `D<ij>` (`= L - E_i - E_j`) with
    /// optional integer coefficients, e.g. `D23-E4` or `-K-L+E1`.
    pub fn parse(label: &str, r: usize) -> Result<Self> {
        let bad = || Error::UnknownLabel(String::from(label));
        let s: Vec<u8> = label.bytes().filter(|b| !b.is_ascii_whitespace()).collect();
        if s.is_empty() {
            return Err(bad());
        }
        let mut acc = Self::zero(r);
        if s == b"0" {
            return Ok(acc);
        }
        let mut pos = 0;
        while pos < s.len() {
            let mut sign = 1;
            if s[pos] == b'+' || s[pos] == b'-' {
                if s[pos] == b'-' {
                    sign = -1;
                }
                pos += 1;
            } else if pos != 0 {
                return Err(bad());
            }
            let start = pos;
            while pos < s.len() && s[pos].is_ascii_digit() {
                pos += 1;
            }
            let coeff: i64 = if start == pos {
                1
            } else {
                core::str::from_utf8(&s[start..pos]).unwrap().parse().map_err(|_| bad())?
            };
            let digit = |p: usize| -> Result<usize> {
                match s.get(p) {
                    Some(d) if d.is_ascii_digit() && *d != b'0' => {
                        let i = (d - b'0') as usize;
                        if i > r {
                            Err(bad())
                        } else {
                            Ok(i)
                        }
                    }
                    _ => Err(bad()),
                }
            };
            let term = match s.get(pos) {
                Some(b'L') => {
                    pos += 1;
                    Self::line(r)
                }
                Some(b'K') => {
                    pos += 1;
                    Self::canonical(r)
                }
                Some(b'E') => {
                    let i = digit(pos + 1)?;
                    pos += 2;
                    Self::exceptional(r, i)
                }
                Some(b'D') => {
                    let i = digit(pos + 1)?;
                    let j = digit(pos + 2)?;
                    if i == j {
                        return Err(bad());
                    }
                    pos += 3;
                    Self::line(r).sub(&Self::exceptional(r, i)).sub(&Self::exceptional(r, j))
                }
                _ => return Err(bad()),
            };
            acc = acc.add(&term.scale(sign * coeff));
        }
        Ok(acc)
    }
}

fn push_term(out: &mut String, v: i64, name: &str) {
    if v < 0 {
        out.push('-');
    } else if !out.is_empty() {
        out.push('+');
    }
    if v.abs() != 1 {
        out.push_str(&alloc::format!("{}", v.abs()));
    }
    out.push_str(name);
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

impl fmt::Debug for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

/// Intersection number with a rank check.
pub fn intersect(c: &DivisorClass, d: &DivisorClass) -> Result<i64> {
    if c.rank() != d.rank() {
        return Err(Error::RankMismatch { left: c.rank(), right: d.rank() });
    }
    Ok(c.dot(d))
}

/// The `g` with `C·(C+K) = 2g - 2`.
pub fn arithmetic_genus(c: &DivisorClass) -> Result<i64> {
    let v = c.self_intersection() + c.dot_canonical();
    if v % 2 != 0 {
        return Err(Error::OddAdjunction);
    }
    Ok(v / 2 + 1)
}

/// One point blown up in the construction of a surface.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BlowupPoint {
    Proper(ProjPoint),
    /// A point infinitely near the proper point `parent`, in the direction of the
    /// line with coefficients `line` through it.
    Near { parent: usize, line: [CycScalar; 3] },
}

/// A blow-up of the plane at explicit points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceModel {
    points: Vec<BlowupPoint>,
    // second point on each direction line, cached for tangency rows
    second: Vec<Option<[CycScalar; 3]>>,
}

fn dot3(a: &[CycScalar; 3], b: &[CycScalar; 3]) -> CycScalar {
    a[0].mul(&b[0]).add(&a[1].mul(&b[1])).add(&a[2].mul(&b[2]))
}

fn parallel(a: &[CycScalar; 3], b: &[CycScalar; 3]) -> bool {
    (0..3).all(|i| {
        let (j, k) = ((i + 1) % 3, (i + 2) % 3);
        a[j].mul(&b[k]).sub(&a[k].mul(&b[j])).is_zero()
    })
}

impl SurfaceModel {
    pub fn new(points: Vec<BlowupPoint>) -> Result<Self> {
        if points.len() > 8 {
            return Err(Error::UnsupportedRank(points.len()));
        }
        let mut second = Vec::with_capacity(points.len());
        for (i, p) in points.iter().enumerate() {
            match p {
                BlowupPoint::Proper(pt) => {
                    let dup = points[..i].iter().any(|q| matches!(q, BlowupPoint::Proper(o) if o == pt));
                    if dup {
                        return Err(Error::InvalidModel(alloc::format!("point {} repeats a proper point", i + 1)));
                    }
                    second.push(None);
                }
                BlowupPoint::Near { parent, line } => {
                    let Some(BlowupPoint::Proper(base)) = points.get(*parent) else {
                        return Err(Error::InvalidModel(alloc::format!(
                            "point {} must be infinitely near a proper point",
                            i + 1
                        )));
                    };
                    if line.iter().all(CycScalar::is_zero) {
                        return Err(Error::InvalidModel(alloc::format!("point {} has a zero direction", i + 1)));
                    }
                    if !dot3(line, base.coords()).is_zero() {
                        return Err(Error::InvalidModel(alloc::format!(
                            "direction of point {} does not pass through its parent",
                            i + 1
                        )));
                    }
                    let dup = points[..i].iter().any(|q| {
                        matches!(q, BlowupPoint::Near { parent: p2, line: l2 } if p2 == parent && parallel(l2, line))
                    });
                    if dup {
                        return Err(Error::InvalidModel(alloc::format!("point {} repeats a direction", i + 1)));
                    }
                    let kernel = linalg::nullspace(&alloc::vec![line.to_vec()], 3);
                    let q = kernel
                        .into_iter()
                        .map(|v| [v[0].clone(), v[1].clone(), v[2].clone()])
                        .find(|v| !parallel(v, base.coords()))
                        .expect("a line has two independent points");
                    second.push(Some(q));
                }
            }
        }
        Ok(SurfaceModel { points, second })
    }

    /// Blow-up of the given proper points.
    pub fn from_points(points: Vec<ProjPoint>) -> Result<Self> {
        Self::new(points.into_iter().map(BlowupPoint::Proper).collect())
    }

    pub fn rank(&self) -> usize {
        self.points.len()
    }

    pub fn points(&self) -> &[BlowupPoint] {
        &self.points
    }

    pub fn canonical(&self) -> DivisorClass {
        DivisorClass::canonical(self.rank())
    }

    /// `K² = 9 - r`.
    pub fn degree(&self) -> i64 {
        9 - self.rank() as i64
    }

    fn proper(&self, i: usize) -> Option<&ProjPoint> {
        match &self.points[i] {
            BlowupPoint::Proper(p) => Some(p),
            BlowupPoint::Near { .. } => None,
        }
    }

    fn near_children(&self, i: usize) -> Vec<usize> {
        (0..self.rank())
            .filter(|&j| matches!(self.points[j], BlowupPoint::Near { parent, .. } if parent == i))
            .collect()
    }

    /// Whether `c` is the class of an irreducible curve of negative self-intersection.
    pub fn is_irreducible_negative(&self, c: &DivisorClass) -> Result<bool> {
        let r = self.rank();
        if c.rank() != r {
            return Err(Error::RankMismatch { left: c.rank(), right: r });
        }
        match c.ell {
            0 => Ok(self.is_exceptional_component(c)),
            1 | 2 => self.is_plane_curve(c),
            m if m < 0 => Ok(false),
            _ => Err(Error::Precondition(String::from(
                "effectiveness is decided only for lines and conics",
            ))),
        }
    }

    fn is_exceptional_component(&self, c: &DivisorClass) -> bool {
        let r = self.rank();
        (0..r).any(|i| {
            let mut target = DivisorClass::exceptional(r, i + 1);
            if self.proper(i).is_some() {
                for j in self.near_children(i) {
                    target.e[j] -= 1;
                }
            }
            target == *c
        })
    }

    fn monomials(deg: i64) -> &'static [[usize; 3]] {
        if deg == 1 {
            &[[1, 0, 0], [0, 1, 0], [0, 0, 1]]
        } else {
            &[[2, 0, 0], [1, 1, 0], [1, 0, 1], [0, 2, 0], [0, 1, 1], [0, 0, 2]]
        }
    }

    fn eval_row(deg: i64, p: &[CycScalar; 3]) -> Vec<CycScalar> {
        Self::monomials(deg)
            .iter()
            .map(|m| p[0].pow(m[0] as u32).mul(&p[1].pow(m[1] as u32)).mul(&p[2].pow(m[2] as u32)))
            .collect()
    }

    // Row of `Q·∇F(P)` in the monomial coefficients of F.
    fn tangent_row(deg: i64, p: &[CycScalar; 3], q: &[CycScalar; 3]) -> Vec<CycScalar> {
        if deg == 1 {
            return q.to_vec();
        }
        Self::monomials(deg)
            .iter()
            .map(|m| {
                let idx: Vec<usize> = (0..3).flat_map(|v| core::iter::repeat(v).take(m[v])).collect();
                let (a, b) = (idx[0], idx[1]);
                q[a].mul(&p[b]).add(&q[b].mul(&p[a]))
            })
            .collect()
    }

    fn apply_row(row: &[CycScalar], f: &[CycScalar]) -> CycScalar {
        row.iter().zip(f).fold(CycScalar::zero(), |acc, (a, b)| acc.add(&a.mul(b)))
    }

    fn is_plane_curve(&self, c: &DivisorClass) -> Result<bool> {
        let deg = c.ell;
        let a = c.multiplicities();
        if a.iter().any(|&v| v != 0 && v != 1) {
            return Ok(false);
        }
        let mut rows = Vec::new();
        for (i, pt) in self.points.iter().enumerate() {
            if a[i] == 0 {
                continue;
            }
            match pt {
                BlowupPoint::Proper(p) => rows.push(Self::eval_row(deg, p.coords())),
                BlowupPoint::Near { parent, .. } => {
                    if a[*parent] == 0 {
                        return Ok(false);
                    }
                    let p = self.proper(*parent).unwrap().coords();
                    let q = self.second[i].as_ref().unwrap();
                    rows.push(Self::tangent_row(deg, p, q));
                }
            }
        }
        let cols = Self::monomials(deg).len();
        let kernel = linalg::nullspace(&rows, cols);
        if kernel.len() != 1 {
            return Ok(false);
        }
        let f = &kernel[0];
        if deg == 2 {
            let two = CycScalar::from_int(2);
            let sym = alloc::vec![
                alloc::vec![f[0].mul(&two), f[1].clone(), f[2].clone()],
                alloc::vec![f[1].clone(), f[3].mul(&two), f[4].clone()],
                alloc::vec![f[2].clone(), f[4].clone(), f[5].mul(&two)],
            ];
            if linalg::determinant(&sym).is_zero() {
                return Ok(false);
            }
        }
        // The class of the strict transform must be exactly `c`.
        let mut actual = Vec::with_capacity(self.rank());
        for (i, pt) in self.points.iter().enumerate() {
            let on = match pt {
                BlowupPoint::Proper(p) => Self::apply_row(&Self::eval_row(deg, p.coords()), f).is_zero(),
                BlowupPoint::Near { parent, .. } => {
                    let p = self.proper(*parent).unwrap().coords();
                    let q = self.second[i].as_ref().unwrap();
                    Self::apply_row(&Self::eval_row(deg, p), f).is_zero()
                        && Self::apply_row(&Self::tangent_row(deg, p, q), f).is_zero()
                }
            };
            actual.push(on as i64);
        }
        Ok(actual == a)
    }
}

// Integer vectors of length `len` with entries in `lo..=hi`, given sum and sum of squares.
fn enumerate_vectors(len: usize, lo: i64, hi: i64, sum: i64, sq: i64, out: &mut Vec<Vec<i64>>) {
    fn rec(prefix: &mut Vec<i64>, left: usize, lo: i64, hi: i64, sum: i64, sq: i64, out: &mut Vec<Vec<i64>>) {
        if left == 0 {
            if sum == 0 && sq == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        if sq < 0 || sum * sum > (left as i64) * sq {
            return;
        }
        for v in lo..=hi {
            if v * v > sq {
                continue;
            }
            prefix.push(v);
            rec(prefix, left - 1, lo, hi, sum - v, sq - v * v, out);
            prefix.pop();
        }
    }
    rec(&mut Vec::with_capacity(len), len, lo, hi, sum, sq, out);
}

fn isqrt(n: i64) -> i64 {
    let mut r = 0;
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// All genus-0 classes with `min_self ≤ C² ≤ -1` and `ell ≥ 0`, from the equations
/// `Σ a_i² = m² + k`, `Σ a_i = 3m + k - 2` (with `k = -C²`) and the Cauchy–Schwarz bound.
///
/// For `m ≥ 1` the multiplicities are non-negative, as for any irreducible curve
/// other than an exceptional component.
pub fn negative_candidates(r: usize, min_self: i64) -> Result<Vec<DivisorClass>> {
    if !(1..=8).contains(&r) {
        return Err(Error::UnsupportedRank(r));
    }
    if !(-3..=-1).contains(&min_self) {
        return Err(Error::Precondition(String::from("min_self must be -1, -2 or -3")));
    }
    let ri = r as i64;
    let mut out = Vec::new();
    for k in 1..=-min_self {
        let mut m = 0;
        loop {
            let sq = m * m + k;
            let sum = 3 * m + k - 2;
            let cs_ok = sum * sum <= ri * sq;
            if !cs_ok && (9 - ri) * m > 0 && m > 3 {
                // past the larger root of the Cauchy-Schwarz quadratic
                let vertex_passed = 2 * (9 - ri) * m + 6 * (k - 2) > 0;
                if vertex_passed {
                    break;
                }
            }
            if cs_ok {
                let bound = isqrt(sq);
                let lo = if m == 0 { -bound } else { 0 };
                let mut vs = Vec::new();
                enumerate_vectors(r, lo, bound, sum, sq, &mut vs);
                out.extend(vs.into_iter().map(|a| DivisorClass::from_multiplicities(m, &a)));
            }
            m += 1;
            if m > 64 {
                break;
            }
        }
    }
    out.sort_by_cached_key(DivisorClass::curve_sort_key);
    out.dedup();
    Ok(out)
}

/// Irreducible curves of negative self-intersection on `model`, in curve order.
pub fn negative_curves(model: &SurfaceModel) -> Result<Vec<DivisorClass>> {
    let r = model.rank();
    if r == 0 {
        return Ok(Vec::new());
    }
    if r > MAX_CURVE_RANK {
        return Err(Error::UnsupportedRank(r));
    }
    let mut out = Vec::new();
    for c in negative_candidates(r, -3)? {
        if model.is_irreducible_negative(&c)? {
            out.push(c);
        }
    }
    Ok(out)
}

/// A conic bundle: fiber class and singular fibers as index pairs into a curve list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConicBundleStructure {
    pub fiber: DivisorClass,
    pub singular_fibers: Vec<(usize, usize)>,
}

impl ConicBundleStructure {
    /// Checks the structural invariants against `curves`.
    pub fn validate(&self, curves: &[DivisorClass]) -> Result<()> {
        let f = &self.fiber;
        let r = f.rank();
        let bad = |m: &str| Err(Error::InvalidBundle(String::from(m)));
        if f.self_intersection() != 0 || f.dot_canonical() != -2 {
            return bad("fiber class needs f.f = 0 and f.K = -2");
        }
        if self.singular_fibers.len() as i64 != r as i64 - 1 {
            return bad("number of singular fibers must be 8 - K^2");
        }
        for &(i, j) in &self.singular_fibers {
            let (Some(c), Some(d)) = (curves.get(i), curves.get(j)) else {
                return bad("fiber component index out of range");
            };
            if c.add(d) != *f || c.self_intersection() != -1 || d.self_intersection() != -1 || c.dot(d) != 1 {
                return bad("singular fiber is not a pair of (-1)-curves meeting once");
            }
        }
        Ok(())
    }
}

fn fiber_pairs(curves: &[DivisorClass], f: &DivisorClass) -> Vec<(usize, usize)> {
    let mut pairs = Vec::new();
    for i in 0..curves.len() {
        if curves[i].self_intersection() != -1 {
            continue;
        }
        for j in i + 1..curves.len() {
            let (c, d) = (&curves[i], &curves[j]);
            if d.self_intersection() == -1 && c.dot(d) == 1 && c.add(d) == *f {
                pairs.push((i, j));
            }
        }
    }
    pairs
}

/// Classes `f` with `f² = 0`, `f·K = -2` and `ell ≥ 1`.
pub fn fiber_candidates(r: usize) -> Vec<DivisorClass> {
    let ri = r as i64;
    let mut out = Vec::new();
    for m in 1..=16i64 {
        let sum = 3 * m - 2;
        if sum * sum > ri * m * m {
            if m > 2 {
                break;
            }
            continue;
        }
        let mut vs = Vec::new();
        enumerate_vectors(r, -m, m, sum, m * m, &mut vs);
        out.extend(vs.into_iter().map(|a| DivisorClass::from_multiplicities(m, &a)));
    }
    out.sort_by_key(|c| (c.ell, c.e.clone()));
    out
}

/// The structure with fiber class `f`, if its singular fibers number `8 - K²`.
pub fn conic_bundle_from_fiber(curves: &[DivisorClass], f: &DivisorClass) -> Result<ConicBundleStructure> {
    let cb = ConicBundleStructure { fiber: f.clone(), singular_fibers: fiber_pairs(curves, f) };
    cb.validate(curves)?;
    Ok(cb)
}

/// All conic-bundle structures on `model`, sorted by fiber class.
pub fn conic_bundle_structures(model: &SurfaceModel) -> Result<Vec<ConicBundleStructure>> {
    let r = model.rank();
    if !(2..=MAX_CURVE_RANK).contains(&r) {
        return Err(Error::UnsupportedRank(r));
    }
    let curves = negative_curves(model)?;
    let mut out = Vec::new();
    for f in fiber_candidates(r) {
        let pairs = fiber_pairs(&curves, &f);
        if pairs.len() == r - 1 {
            out.push(ConicBundleStructure { fiber: f, singular_fibers: pairs });
        }
    }
    Ok(out)
}

/// Classes `t = s + b·f - Σ a_i F_i` with `a_i ∈ {0,1}`, `t² = -n` and genus 0.
///
/// `s` is the first negative curve that is a section and `F_i` is the component of
/// the i-th singular fiber disjoint from `s`.
pub fn formal_sections(
    curves: &[DivisorClass],
    cb: &ConicBundleStructure,
    n: i64,
) -> Result<Vec<DivisorClass>> {
    if !(1..=4).contains(&n) {
        return Err(Error::Precondition(String::from("section self-intersection -n needs 1 <= n <= 4")));
    }
    cb.validate(curves)?;
    let f = &cb.fiber;
    let s = curves
        .iter()
        .find(|c| c.dot(f) == 1)
        .ok_or_else(|| Error::InvalidBundle(String::from("no negative curve is a section")))?;
    let comps: Vec<&DivisorClass> = cb
        .singular_fibers
        .iter()
        .map(|&(i, j)| if s.dot(&curves[i]) == 0 { &curves[i] } else { &curves[j] })
        .collect();
    let s2 = s.self_intersection();
    let mut out = Vec::new();
    for mask in 0u32..(1 << comps.len()) {
        let total = mask.count_ones() as i64;
        let twice_b = total - n - s2;
        if twice_b % 2 != 0 {
            continue;
        }
        let mut t = s.add(&f.scale(twice_b / 2));
        for (i, c) in comps.iter().enumerate() {
            if mask >> i & 1 == 1 {
                t = t.sub(c);
            }
        }
        debug_assert_eq!(t.dot(f), 1);
        debug_assert_eq!(t.self_intersection(), -n);
        debug_assert_eq!(arithmetic_genus(&t), Ok(0));
        out.push(t);
    }
    out.sort_by_cached_key(DivisorClass::curve_sort_key);
    out.dedup();
    Ok(out)
}

/// Irreducible sections of self-intersection `-n`: the formal sections that are curves.
pub fn enumerate_sections(
    curves: &[DivisorClass],
    cb: &ConicBundleStructure,
    n: i64,
) -> Result<Vec<DivisorClass>> {
    let formal = formal_sections(curves, cb, n)?;
    Ok(formal.into_iter().filter(|t| curves.contains(t)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cls(s: &str, r: usize) -> DivisorClass {
        DivisorClass::parse(s, r).unwrap()
    }

    #[test]
    fn form_values() {
        assert_eq!(intersect(&cls("L", 0), &cls("L", 0)), Ok(1));
        assert_eq!(intersect(&cls("K", 5), &cls("K", 5)), Ok(4));
        assert_eq!(intersect(&cls("E2", 5), &cls("D12", 5)), Ok(1));
        assert!(matches!(intersect(&cls("L", 2), &cls("L", 3)), Err(Error::RankMismatch { .. })));
    }

    #[test]
    fn genus_values() {
        assert_eq!(arithmetic_genus(&cls("E1", 1)), Ok(0));
        assert_eq!(arithmetic_genus(&cls("-K", 5)), Ok(1));
        assert_eq!(arithmetic_genus(&cls("2L", 0)), Ok(0));
        assert_eq!(arithmetic_genus(&cls("3L", 0)), Ok(1));
    }

    #[test]
    fn labels_round_trip() {
        for s in ["E2", "D12", "E1-E5", "D23-E4", "2L-E1-E2-E3-E4-E5", "3L-2E1-E2", "-L+E3"] {
            assert_eq!(cls(s, 5).label(), s);
        }
        assert_eq!(cls("-K-L+E1", 5), cls("2L-E2-E3-E4-E5", 5));
        assert!(DivisorClass::parse("E6", 5).is_err());
        assert!(DivisorClass::parse("D11", 5).is_err());
        assert!(DivisorClass::parse("X", 5).is_err());
        assert!(DivisorClass::parse("E1E2", 5).is_err());
    }

    #[test]
    fn candidates_small_ranks() {
        assert_eq!(negative_candidates(1, -1).unwrap(), [cls("E1", 1)]);
        let c3 = negative_candidates(3, -1).unwrap();
        assert_eq!(c3.len(), 6);
        let c5 = negative_candidates(5, -2).unwrap();
        assert!(c5.contains(&cls("D12-E3", 5)));
        assert!(c5.contains(&cls("2L-E1-E2-E3-E4-E5", 5)));
        assert!(c5.iter().all(|c| c.ell <= 2));
    }

    #[test]
    fn exceptional_counts_of_del_pezzo_lattices() {
        let counts: Vec<usize> = (1..=8).map(|r| negative_candidates(r, -1).unwrap().len()).collect();
        assert_eq!(counts, [1, 3, 6, 10, 16, 27, 56, 240]);
    }

    #[test]
    fn model_validation() {
        let p = |c: [i64; 3]| BlowupPoint::Proper(ProjPoint::from_ints(c).unwrap());
        let line = |c: [i64; 3]| c.map(CycScalar::from_int);
        assert!(SurfaceModel::new(alloc::vec![p([1, 0, 0]), p([2, 0, 0])]).is_err());
        assert!(SurfaceModel::new(alloc::vec![p([1, 0, 0]), BlowupPoint::Near { parent: 0, line: line([1, 0, 0]) }]).is_err());
        assert!(SurfaceModel::new(alloc::vec![p([1, 0, 0]), BlowupPoint::Near { parent: 0, line: line([0, 1, 1]) }]).is_ok());
        assert!(SurfaceModel::new(alloc::vec![BlowupPoint::Near { parent: 0, line: line([0, 1, 1]) }]).is_err());
    }

    fn pt(c: [i64; 3]) -> BlowupPoint {
        BlowupPoint::Proper(ProjPoint::from_ints(c).unwrap())
    }

    fn coordinate_points() -> Vec<BlowupPoint> {
        alloc::vec![pt([1, 0, 0]), pt([0, 1, 0]), pt([0, 0, 1])]
    }

    fn labels(cs: &[DivisorClass]) -> Vec<String> {
        cs.iter().map(DivisorClass::label).collect()
    }

    #[test]
    fn hexagon_surface() {
        let m = SurfaceModel::new(coordinate_points()).unwrap();
        let curves = negative_curves(&m).unwrap();
        assert_eq!(labels(&curves), ["E1", "E2", "E3", "D12", "D13", "D23"]);
        let cbs = conic_bundle_structures(&m).unwrap();
        assert_eq!(cbs.len(), 3);
        assert!(cbs.iter().all(|cb| cb.singular_fibers.len() == 2));
    }

    #[test]
    fn quintic_surface() {
        let mut pts = coordinate_points();
        pts.push(pt([1, 1, 1]));
        let m = SurfaceModel::new(pts).unwrap();
        let curves = negative_curves(&m).unwrap();
        assert_eq!(curves.len(), 10);
        assert!(curves.iter().all(|c| c.self_intersection() == -1));
        assert_eq!(conic_bundle_structures(&m).unwrap().len(), 5);
    }

    #[test]
    fn generic_quartic_surface() {
        let mut pts = coordinate_points();
        pts.push(pt([1, 1, 1]));
        pts.push(pt([2, 3, 5]));
        let m = SurfaceModel::new(pts).unwrap();
        let curves = negative_curves(&m).unwrap();
        assert_eq!(curves.len(), 16);
        assert!(curves.contains(&cls("2L-E1-E2-E3-E4-E5", 5)));
        assert_eq!(conic_bundle_structures(&m).unwrap().len(), 10);
    }

    fn s4hat() -> SurfaceModel {
        let mut pts = coordinate_points();
        pts.push(pt([0, 1, 1]));
        pts.push(BlowupPoint::Near { parent: 0, line: [0, 1, 1].map(CycScalar::from_int) });
        SurfaceModel::new(pts).unwrap()
    }

    #[test]
    fn degenerate_quartic_surface() {
        let m = s4hat();
        let curves = negative_curves(&m).unwrap();
        assert_eq!(
            labels(&curves),
            ["E2", "E3", "E4", "E5", "D12", "D13", "D14", "D15", "E1-E5", "D23-E4"]
        );
        let cbs = conic_bundle_structures(&m).unwrap();
        assert_eq!(cbs.len(), 1);
        let cb = &cbs[0];
        assert_eq!(cb.fiber, cls("L-E1", 5));
        assert!(enumerate_sections(&curves, cb, 1).unwrap().is_empty());
        assert!(!formal_sections(&curves, cb, 1).unwrap().is_empty());
        let secs = enumerate_sections(&curves, cb, 2).unwrap();
        assert_eq!(labels(&secs), ["E1-E5", "D23-E4"]);
    }
}

