#![allow(dead_code)]

use cremona_core::lattice::{negative_curves, BlowupPoint, SurfaceModel};
use cremona_core::{CycScalar, DivisorClass, ProjMap, ProjPoint};

pub fn pt(c: [i64; 3]) -> BlowupPoint {
    BlowupPoint::Proper(ProjPoint::from_ints(c).unwrap())
}

pub fn s6() -> SurfaceModel {
    SurfaceModel::new(vec![pt([1, 0, 0]), pt([0, 1, 0]), pt([0, 0, 1])]).unwrap()
}

pub fn s5() -> SurfaceModel {
    SurfaceModel::new(vec![pt([1, 0, 0]), pt([0, 1, 0]), pt([0, 0, 1]), pt([1, 1, 1])]).unwrap()
}

pub fn dp4() -> SurfaceModel {
    SurfaceModel::new(vec![pt([1, 0, 0]), pt([0, 1, 0]), pt([0, 0, 1]), pt([1, 1, 1]), pt([2, 3, 5])]).unwrap()
}

pub fn s4hat() -> SurfaceModel {
    SurfaceModel::new(vec![
        pt([1, 0, 0]),
        pt([0, 1, 0]),
        pt([0, 0, 1]),
        pt([0, 1, 1]),
        BlowupPoint::Near { parent: 0, line: [0, 1, 1].map(CycScalar::from_int) },
    ])
    .unwrap()
}

pub fn curves(m: &SurfaceModel) -> Vec<DivisorClass> {
    negative_curves(m).unwrap()
}

pub fn cls(s: &str, r: usize) -> DivisorClass {
    DivisorClass::parse(s, r).unwrap()
}

pub fn labels(cs: &[DivisorClass]) -> Vec<String> {
    cs.iter().map(DivisorClass::label).collect()
}

/// Index permutation from cycles written with curve labels.
pub fn perm(curves: &[DivisorClass], cycles: &[&[&str]]) -> Vec<usize> {
    let r = curves[0].rank();
    let idx = |s: &str| curves.iter().position(|c| *c == cls(s, r)).unwrap_or_else(|| panic!("{s} is not a curve"));
    let mut p: Vec<usize> = (0..curves.len()).collect();
    for cyc in cycles {
        for w in 0..cyc.len() {
            p[idx(cyc[w])] = idx(cyc[(w + 1) % cyc.len()]);
        }
    }
    p
}

pub fn map(c: [&str; 3]) -> ProjMap {
    ProjMap::parse(&c).unwrap()
}

pub fn h1() -> ProjMap {
    map(["y*z", "x*y", "-x*z"])
}

pub fn h2() -> ProjMap {
    map(["y*z*(y-z)", "x*z*(y+z)", "x*y*(y+z)"])
}

pub const G1: &[&[&str]] = &[&["E1-E5", "D23-E4"], &["E2", "D12"], &["E3", "D13"], &["E4", "E5"], &["D14", "D15"]];
pub const G2: &[&[&str]] = &[&["E1-E5", "D23-E4"], &["E2", "D13"], &["E3", "D12"], &["E4", "D14"], &["E5", "D15"]];
