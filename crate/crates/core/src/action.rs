//! Isometries of Picard lattices and the finite groups they generate.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::group::{self, GroupTable};
use crate::lattice::{ConicBundleStructure, DivisorClass};
use crate::linalg;
use crate::scalar::{divisors, mobius, totient};

/// Cap used when certifying that a single isometry has finite order.
pub const ORDER_CAP: usize = 256;

/// An integer matrix acting on column vectors in the basis `(L, E_1, ..., E_r)`,
/// preserving the intersection form and the canonical class.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeIsometry {
    m: Vec<Vec<i64>>,
}

fn form_sign(i: usize) -> i64 {
    if i == 0 {
        1
    } else {
        -1
    }
}

impl LatticeIsometry {
    pub fn identity(r: usize) -> Self {
        let n = r + 1;
        LatticeIsometry { m: (0..n).map(|i| (0..n).map(|j| (i == j) as i64).collect()).collect() }
    }

    /// Validates `MᵀQM = Q` and `MK = K`.
    pub fn from_matrix(m: Vec<Vec<i64>>) -> Result<Self> {
        let n = m.len();
        if n == 0 || m.iter().any(|row| row.len() != n) {
            return Err(Error::Precondition(String::from("isometry matrix must be square and nonempty")));
        }
        let iso = LatticeIsometry { m };
        for a in 0..n {
            for b in 0..n {
                let v: i64 = (0..n).map(|k| form_sign(k) * iso.m[k][a] * iso.m[k][b]).sum();
                let want = if a == b { form_sign(a) } else { 0 };
                if v != want {
                    return Err(Error::FormViolation);
                }
            }
        }
        let k = DivisorClass::canonical(n - 1);
        if iso.apply(&k) != k {
            return Err(Error::CanonicalViolation);
        }
        Ok(iso)
    }

    /// Reorders a matrix written in the basis `(E_1, ..., E_r, L)` to `(L, E_1, ..., E_r)`.
    pub fn from_matrix_e_first(m: &[Vec<i64>]) -> Result<Self> {
        let n = m.len();
        let idx = |i: usize| if i == 0 { n - 1 } else { i - 1 };
        let re = (0..n).map(|i| (0..n).map(|j| m.get(idx(i)).and_then(|row| row.get(idx(j))).copied().unwrap_or(0)).collect()).collect();
        if m.iter().any(|row| row.len() != n) {
            return Err(Error::Precondition(String::from("isometry matrix must be square and nonempty")));
        }
        Self::from_matrix(re)
    }

    /// The unique linear map sending each `sources[i]` to `targets[i]`.
    ///
    /// Errors are reported in the order: spanning, linearity, integrality, form, canonical class.
    pub fn from_class_images(sources: &[DivisorClass], targets: &[DivisorClass]) -> Result<Self> {
        let Some(first) = sources.first() else {
            return Err(Error::NonSpanning);
        };
        let r = first.rank();
        let n = r + 1;
        if sources.len() != targets.len() {
            return Err(Error::Precondition(String::from("sources and targets differ in length")));
        }
        for c in sources.iter().chain(targets) {
            if c.rank() != r {
                return Err(Error::RankMismatch { left: r, right: c.rank() });
            }
        }
        // Row i of M solves Xᵀ m_i = (row i of Y), X having the sources as columns.
        let xt: Vec<Vec<i64>> = sources.iter().map(DivisorClass::to_vec).collect();
        let xt = linalg::to_rational(&xt);
        if linalg::rank(&xt) < n {
            return Err(Error::NonSpanning);
        }
        let ys: Vec<Vec<i64>> = targets.iter().map(DivisorClass::to_vec).collect();
        let mut rows: Vec<Vec<BigRational>> = Vec::with_capacity(n);
        for i in 0..n {
            let b: Vec<BigRational> = ys.iter().map(|y| BigRational::from_integer(BigInt::from(y[i]))).collect();
            rows.push(linalg::solve(&xt, &b).ok_or(Error::NotLinear)?);
        }
        let mut m = Vec::with_capacity(n);
        for row in rows {
            let mut ints = Vec::with_capacity(n);
            for v in row {
                if !v.is_integer() {
                    return Err(Error::NonIntegral);
                }
                ints.push(v.to_integer().to_i64().ok_or(Error::NonIntegral)?);
            }
            m.push(ints);
        }
        Self::from_matrix(m)
    }

    /// The isometry permuting `curves` by `images` (`curves[i] ↦ curves[images[i]]`).
    pub fn from_curve_permutation(curves: &[DivisorClass], images: &[usize]) -> Result<Self> {
        if images.len() != curves.len() {
            return Err(Error::NotCurvePermutation);
        }
        let mut seen = alloc::vec![false; curves.len()];
        for &j in images {
            if j >= curves.len() || seen[j] {
                return Err(Error::NotCurvePermutation);
            }
            seen[j] = true;
        }
        let targets: Vec<DivisorClass> = images.iter().map(|&j| curves[j].clone()).collect();
        Self::from_class_images(curves, &targets)
    }

    /// Lattice rank minus one, i.e. the number of blown-up points.
    pub fn rank(&self) -> usize {
        self.m.len() - 1
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.m
    }

    pub fn trace(&self) -> i64 {
        (0..self.m.len()).map(|i| self.m[i][i]).sum()
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.rank())
    }

    pub fn apply(&self, c: &DivisorClass) -> DivisorClass {
        let v = c.to_vec();
        let out: Vec<i64> = self.m.iter().map(|row| row.iter().zip(&v).map(|(a, b)| a * b).sum()).collect();
        DivisorClass::from_vec(&out)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.rank() != other.rank() {
            return Err(Error::RankMismatch { left: self.rank(), right: other.rank() });
        }
        let n = self.m.len();
        let m = (0..n)
            .map(|i| (0..n).map(|j| (0..n).map(|k| self.m[i][k] * other.m[k][j]).sum()).collect())
            .collect();
        Ok(LatticeIsometry { m })
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::identity(self.rank());
        for _ in 0..e {
            acc = acc.compose(self).expect("same rank");
        }
        acc
    }

    fn checked_compose(&self, other: &Self) -> Option<Self> {
        let n = self.m.len();
        let mut m = alloc::vec![alloc::vec![0i64; n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut acc = 0i64;
                for k in 0..n {
                    acc = acc.checked_add(self.m[i][k].checked_mul(other.m[k][j])?)?;
                }
                m[i][j] = acc;
            }
        }
        Some(LatticeIsometry { m })
    }

    /// Multiplicative order, or `InfiniteOrder` if it exceeds `cap`.
    ///
    /// Entry growth beyond `i64` also counts as infinite order, since powers of a
    /// finite-order isometry are bounded.
    pub fn order(&self, cap: usize) -> Result<usize> {
        let mut acc = self.clone();
        for k in 1..=cap {
            if acc.is_identity() {
                return Ok(k);
            }
            acc = acc.checked_compose(self).ok_or(Error::InfiniteOrder)?;
        }
        Err(Error::InfiniteOrder)
    }

    /// Index permutation induced on `curves`, if the isometry permutes them.
    pub fn curve_permutation(&self, curves: &[DivisorClass]) -> Result<Vec<usize>> {
        curves
            .iter()
            .map(|c| {
                let img = self.apply(c);
                curves.iter().position(|d| *d == img).ok_or(Error::NotCurvePermutation)
            })
            .collect()
    }

    /// Cycle notation on curve labels, omitting fixed curves.
    pub fn cycles(&self, curves: &[DivisorClass]) -> Result<String> {
        let perm = self.curve_permutation(curves)?;
        let mut seen = alloc::vec![false; perm.len()];
        let mut out = String::new();
        for start in 0..perm.len() {
            if seen[start] || perm[start] == start {
                continue;
            }
            out.push('(');
            let mut i = start;
            let mut first = true;
            while !seen[i] {
                seen[i] = true;
                if !first {
                    out.push(' ');
                }
                out.push_str(&curves[i].label());
                first = false;
                i = perm[i];
            }
            out.push(')');
        }
        if out.is_empty() {
            out.push_str("()");
        }
        Ok(out)
    }
}

impl fmt::Debug for LatticeIsometry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.m)
    }
}

/// A finite group of lattice isometries with its multiplication table.
pub type ActionGroup = GroupTable<LatticeIsometry>;

/// Closes `gens` into a group, ordered by BFS word length and then by matrix entries.
pub fn closure(gens: &[LatticeIsometry], cap: usize) -> Result<ActionGroup> {
    let Some(first) = gens.first() else {
        return Err(Error::Precondition(String::from("at least one generator is required")));
    };
    let r = first.rank();
    if let Some(g) = gens.iter().find(|g| g.rank() != r) {
        return Err(Error::RankMismatch { left: r, right: g.rank() });
    }
    group::close(
        LatticeIsometry::identity(r),
        gens,
        cap,
        |a, b| a.compose(b),
        |g| g.m.clone(),
        |g, len| (len, g.m.clone()),
    )
}

/// Dimension of the subspace fixed by every element.
pub fn invariant_rank(group: &ActionGroup) -> usize {
    let n = group.elements[0].m.len();
    let mut rows = Vec::new();
    for g in &group.elements {
        for i in 0..n {
            rows.push((0..n).map(|j| g.m[i][j] - (i == j) as i64).collect::<Vec<_>>());
        }
    }
    n - linalg::rank(&linalg::to_rational(&rows))
}

/// Fixed-point data for a finite-order automorphism.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FixedLocus {
    pub isolated_points: u32,
    /// Genera of the fixed curves.
    pub curve_genera: Vec<u32>,
    /// Replaces the computed Euler characteristic when set.
    pub chi_override: Option<i64>,
}

impl FixedLocus {
    pub fn points(n: u32) -> Self {
        FixedLocus { isolated_points: n, ..Default::default() }
    }

    pub fn with_chi(chi: i64) -> Self {
        FixedLocus { chi_override: Some(chi), ..Default::default() }
    }

    /// Topological Euler characteristic.
    pub fn chi(&self) -> i64 {
        self.chi_override.unwrap_or_else(|| {
            self.isolated_points as i64 + self.curve_genera.iter().map(|&g| 2 - 2 * g as i64).sum::<i64>()
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LefschetzReport {
    pub order: usize,
    pub trace: i64,
    pub chi: i64,
    pub holds: bool,
}

/// Compares `trace(M)` with `χ(Fix) - 2` for a finite-order isometry.
pub fn lefschetz_check(m: &LatticeIsometry, fix: &FixedLocus) -> Result<LefschetzReport> {
    let order = m.order(ORDER_CAP)?;
    let trace = m.trace();
    let chi = fix.chi();
    Ok(LefschetzReport { order, trace, chi, holds: trace == chi - 2 })
}

/// Permutations induced by every group element on `curves`.
pub fn curve_permutations(group: &ActionGroup, curves: &[DivisorClass]) -> Result<Vec<Vec<usize>>> {
    group.elements.iter().map(|g| g.curve_permutation(curves)).collect()
}

/// Orbits of the group on `curves`, each sorted, listed by smallest member.
pub fn curve_orbits(group: &ActionGroup, curves: &[DivisorClass]) -> Result<Vec<Vec<usize>>> {
    let perms = curve_permutations(group, curves)?;
    let mut orbit_of = alloc::vec![usize::MAX; curves.len()];
    let mut out: Vec<Vec<usize>> = Vec::new();
    for i in 0..curves.len() {
        if orbit_of[i] != usize::MAX {
            continue;
        }
        let mut orb: Vec<usize> = perms.iter().map(|p| p[i]).collect();
        orb.sort_unstable();
        orb.dedup();
        for &j in &orb {
            orbit_of[j] = out.len();
        }
        out.push(orb);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitCheck {
    pub size: usize,
    pub size_divisible: bool,
    /// `a` with orbit sum `= a·K`, if there is one.
    pub multiple_of_k: Option<i64>,
}

impl OrbitCheck {
    pub fn holds(&self) -> bool {
        self.size_divisible && matches!(self.multiple_of_k, Some(a) if a < 0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitReport {
    pub orbits: Vec<Vec<usize>>,
    pub invariant_rank: usize,
    /// Present only when the invariant rank is 1.
    pub checks: Option<Vec<OrbitCheck>>,
}

impl OrbitReport {
    pub fn holds(&self) -> bool {
        self.checks.as_ref().map_or(true, |cs| cs.iter().all(OrbitCheck::holds))
    }
}

fn multiple_of(v: &DivisorClass, k: &DivisorClass) -> Option<i64> {
    let a = v.ell.checked_div(k.ell)?;
    (k.scale(a) == *v).then_some(a)
}

/// Orbit partition of `curves`; with invariant rank 1, also checks that each orbit
/// size is divisible by the degree and each orbit sum is a negative multiple of K.
pub fn orbits(group: &ActionGroup, curves: &[DivisorClass]) -> Result<OrbitReport> {
    let orbits = curve_orbits(group, curves)?;
    let inv = invariant_rank(group);
    let r = group.elements[0].rank();
    let checks = (inv == 1).then(|| {
        let degree = 9 - r;
        let k = DivisorClass::canonical(r);
        orbits
            .iter()
            .map(|orb| {
                let sum = orb.iter().fold(DivisorClass::zero(r), |acc, &i| acc.add(&curves[i]));
                OrbitCheck {
                    size: orb.len(),
                    size_divisible: orb.len() % degree == 0,
                    multiple_of_k: multiple_of(&sum, &k),
                }
            })
            .collect()
    });
    Ok(OrbitReport { orbits, invariant_rank: inv, checks })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairMinimality {
    pub minimal: bool,
    /// A pairwise disjoint orbit of (−1)-curves, as curve indices.
    pub witness: Option<Vec<usize>>,
}

/// Minimal iff no orbit of (−1)-curves consists of pairwise disjoint curves.
///
/// Among disjoint orbits the witness is the one whose members have the smallest
/// `ell`, ties going to the orbit containing the latest curve in list order.
pub fn is_pair_minimal(group: &ActionGroup, curves: &[DivisorClass]) -> Result<PairMinimality> {
    let orbs = curve_orbits(group, curves)?;
    let mut best: Option<((i64, core::cmp::Reverse<usize>), Vec<usize>)> = None;
    for orb in orbs {
        if curves[orb[0]].self_intersection() != -1 {
            continue;
        }
        let disjoint = orb.iter().all(|&i| orb.iter().all(|&j| i == j || curves[i].dot(&curves[j]) == 0));
        if !disjoint {
            continue;
        }
        let key = (
            orb.iter().map(|&i| curves[i].ell).min().unwrap(),
            core::cmp::Reverse(*orb.iter().max().unwrap()),
        );
        if best.as_ref().map_or(true, |(b, _)| key < *b) {
            best = Some((key, orb));
        }
    }
    Ok(PairMinimality { minimal: best.is_none(), witness: best.map(|(_, w)| w) })
}

/// Indices of singular fibers whose two components `m` exchanges.
pub fn twisted_fibers(m: &LatticeIsometry, cb: &ConicBundleStructure, curves: &[DivisorClass]) -> Vec<usize> {
    cb.singular_fibers
        .iter()
        .enumerate()
        .filter(|(_, &(i, j))| m.apply(&curves[i]) == curves[j] || m.apply(&curves[j]) == curves[i])
        .map(|(idx, _)| idx)
        .collect()
}

/// Where `m` sends each singular fiber, if it maps fibers to fibers.
pub fn fiber_permutation(
    m: &LatticeIsometry,
    cb: &ConicBundleStructure,
    curves: &[DivisorClass],
) -> Option<Vec<usize>> {
    cb.singular_fibers
        .iter()
        .map(|&(i, _)| {
            let img = m.apply(&curves[i]);
            cb.singular_fibers.iter().position(|&(a, b)| curves[a] == img || curves[b] == img)
        })
        .collect()
}

/// True iff every singular fiber is twisted by some element of the group.
pub fn is_triple_minimal(group: &ActionGroup, cb: &ConicBundleStructure, curves: &[DivisorClass]) -> bool {
    let mut hit = alloc::vec![false; cb.singular_fibers.len()];
    for g in &group.elements {
        for i in twisted_fibers(g, cb, curves) {
            hit[i] = true;
        }
    }
    hit.iter().all(|&h| h)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistParity {
    pub n: u32,
    /// Number of fibers twisted by `M`.
    pub r: usize,
    /// Number of fibers twisted by `M^n`.
    pub two_k: usize,
    /// 1: `n = 1`; 2: `n > 1`, `k = 0`; 3: `n` odd, `k > 0`; 4: `n` even, `k > 0`.
    pub case: u8,
    pub divides: bool,
    pub parity: bool,
    /// Case-specific conditions on `r`, `n` and the twisted sets.
    pub case_conditions: bool,
    pub consistent: bool,
}

/// Checks the relations between the twisting of `m` and of `m^n`, where `n` is the
/// order of the induced action on the base of the fibration.
pub fn twist_parity_check(
    m: &LatticeIsometry,
    cb: &ConicBundleStructure,
    curves: &[DivisorClass],
    n: u32,
) -> Result<TwistParity> {
    if n == 0 {
        return Err(Error::Precondition(String::from("base order must be positive")));
    }
    m.order(ORDER_CAP)?;
    let mn = m.pow(n);
    if !mn.compose(&mn)?.is_identity() {
        return Err(Error::Precondition(alloc::format!("M^{n} does not act as an involution")));
    }
    let t1 = twisted_fibers(m, cb, curves);
    let tn = twisted_fibers(&mn, cb, curves);
    let (r, two_k) = (t1.len(), tn.len());
    let nn = n as usize;
    let divides = two_k % 2 == 0 && two_k % nn == 0;
    let parity = divides && (two_k / nn) % 2 == r % 2;
    let (case, case_conditions) = if n == 1 {
        (1, two_k >= 2)
    } else if two_k == 0 {
        (2, n % 2 == 0 && (1..=2).contains(&r))
    } else if n % 2 == 1 {
        (3, (1..=2).contains(&r) && t1.iter().all(|i| tn.contains(i)))
    } else {
        let moves = fiber_permutation(m, cb, curves).is_some_and(|p| tn.iter().all(|&i| p[i] != i));
        (4, (1..=2).contains(&r) && t1.iter().all(|i| !tn.contains(i)) && moves)
    };
    Ok(TwistParity {
        n,
        r,
        two_k,
        case,
        divides,
        parity,
        case_conditions,
        consistent: divides && parity && case_conditions,
    })
}

/// Trace of the `e`-th power on a block of primitive `d`-th roots of unity.
pub fn ramanujan_sum(d: u32, e: u32) -> i64 {
    let g = d.gcd(&e);
    let q = d / g;
    mobius(q) * (totient(d) / totient(q)) as i64
}

/// Multiplicities `m_d` of primitive `d`-th roots of unity, for each `d | n`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct CharacterProfile {
    pub entries: Vec<(u32, u32)>,
}

impl CharacterProfile {
    pub fn mult(&self, d: u32) -> u32 {
        self.entries.iter().find(|e| e.0 == d).map_or(0, |e| e.1)
    }

    pub fn trace_of_power(&self, e: u32) -> i64 {
        self.entries.iter().map(|&(d, m)| m as i64 * ramanujan_sum(d, e)).sum()
    }
}

/// Galois-stable eigenvalue profiles of an order-`n` element acting on a rank-`rho`
/// lattice with `1` as an eigenvalue, subject to lower bounds on traces of powers.
pub fn character_admissibility(n: u32, rho: u32, bounds: &[(u32, i64)]) -> Result<Vec<CharacterProfile>> {
    if !(1..=12).contains(&n) || !(1..=9).contains(&rho) {
        return Err(Error::Precondition(String::from("requires 1 <= n <= 12 and 1 <= rho <= 9")));
    }
    let ds = divisors(n);
    let mut out = Vec::new();
    let mut cur = alloc::vec![0u32; ds.len()];
    fn rec(
        idx: usize,
        left: u32,
        ds: &[u32],
        cur: &mut Vec<u32>,
        out: &mut Vec<CharacterProfile>,
    ) {
        if idx == ds.len() {
            if left == 0 {
                out.push(CharacterProfile { entries: ds.iter().copied().zip(cur.iter().copied()).collect() });
            }
            return;
        }
        let phi = totient(ds[idx]);
        for m in 0..=left / phi {
            cur[idx] = m;
            rec(idx + 1, left - m * phi, ds, cur, out);
        }
        cur[idx] = 0;
    }
    rec(0, rho, &ds, &mut cur, &mut out);
    out.retain(|p| {
        let lcm = p.entries.iter().filter(|e| e.1 > 0).fold(1u32, |acc, e| acc.lcm(&e.0));
        p.mult(1) >= 1 && lcm == n && bounds.iter().all(|&(e, b)| p.trace_of_power(e) >= b)
    });
    out.sort();
    Ok(out)
}
