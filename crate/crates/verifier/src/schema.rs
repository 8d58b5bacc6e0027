//! JSON forms of the core types and their conversions.

use std::collections::BTreeMap;

use cremona_core::action::{FixedLocus, LatticeIsometry};
use cremona_core::lattice::{BlowupPoint, ConicBundleStructure, SurfaceModel};
use cremona_core::{CycScalar, DivisorClass, ProjMap, ProjPoint};
use serde::{Deserialize, Serialize};

use crate::error::{Result, VerifierError};

/// A scalar written as a JSON integer or as expression text such as `"3/5"` or `"zeta(8)^3"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScalarJson {
    Int(i64),
    Text(String),
}

impl ScalarJson {
    pub fn to_scalar(&self) -> Result<CycScalar> {
        match self {
            ScalarJson::Int(v) => Ok(CycScalar::from_int(*v)),
            ScalarJson::Text(s) => Ok(CycScalar::parse(s)?),
        }
    }

    pub fn from_scalar(c: &CycScalar) -> Self {
        ScalarJson::Text(c.to_text())
    }
}

fn triple(v: &[ScalarJson; 3]) -> Result<[CycScalar; 3]> {
    Ok([v[0].to_scalar()?, v[1].to_scalar()?, v[2].to_scalar()?])
}

pub fn point(v: &[ScalarJson; 3]) -> Result<ProjPoint> {
    Ok(ProjPoint::new(triple(v)?)?)
}

pub fn point_json(p: &ProjPoint) -> [ScalarJson; 3] {
    p.coords().clone().map(|c| ScalarJson::from_scalar(&c))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum PointJson {
    Proper([ScalarJson; 3]),
    /// Infinitely near the proper point with index `parent`, along `line`.
    Near { parent: usize, line: [ScalarJson; 3] },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelJson {
    pub rank: usize,
    pub points: Vec<PointJson>,
}

impl ModelJson {
    pub fn to_model(&self) -> Result<SurfaceModel> {
        if self.rank != self.points.len() {
            return Err(VerifierError::usage(format!(
                "model rank {} does not match its {} points",
                self.rank,
                self.points.len()
            )));
        }
        let pts = self
            .points
            .iter()
            .map(|p| match p {
                PointJson::Proper(c) => Ok(BlowupPoint::Proper(point(c)?)),
                PointJson::Near { parent, line } => Ok(BlowupPoint::Near { parent: *parent, line: triple(line)? }),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SurfaceModel::new(pts)?)
    }

    pub fn from_model(m: &SurfaceModel) -> Self {
        let points = m
            .points()
            .iter()
            .map(|p| match p {
                BlowupPoint::Proper(q) => PointJson::Proper(point_json(q)),
                BlowupPoint::Near { parent, line } => PointJson::Near {
                    parent: *parent,
                    line: line.clone().map(|c| ScalarJson::from_scalar(&c)),
                },
            })
            .collect();
        ModelJson { rank: m.rank(), points }
    }
}

/// A divisor class, either explicit or as a label such as `"L-E1"` or `"D23-E4"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ClassJson {
    Explicit { ell: i64, e: Vec<i64> },
    Label(String),
}

impl ClassJson {
    pub fn to_class(&self, rank: usize) -> Result<DivisorClass> {
        match self {
            ClassJson::Explicit { ell, e } => {
                if e.len() != rank {
                    return Err(VerifierError::usage(format!("class has {} exceptional entries, expected {rank}", e.len())));
                }
                Ok(DivisorClass::new(*ell, e.clone()))
            }
            ClassJson::Label(s) => Ok(DivisorClass::parse(s, rank)?),
        }
    }

    pub fn from_class(c: &DivisorClass) -> Self {
        ClassJson::Explicit { ell: c.ell, e: c.e.clone() }
    }
}

/// A class as it appears in command output.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveJson {
    pub label: String,
    pub ell: i64,
    pub e: Vec<i64>,
    pub self_intersection: i64,
}

impl CurveJson {
    pub fn new(c: &DivisorClass) -> Self {
        CurveJson { label: c.label(), ell: c.ell, e: c.e.clone(), self_intersection: c.self_intersection() }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Basis {
    /// Rows and columns ordered `L, E1, ..., Er`.
    #[default]
    LFirst,
    /// Rows and columns ordered `E1, ..., Er, L`.
    EFirst,
}

/// An isometry as a matrix whose columns are images of basis vectors, or as a
/// permutation of negative curves written in cycles of labels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IsometryJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "is_default")]
    pub basis: Basis,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub curve_perm: Option<Vec<Vec<String>>>,
}

fn is_default(b: &Basis) -> bool {
    *b == Basis::default()
}

impl IsometryJson {
    pub fn from_matrix(m: &LatticeIsometry) -> Self {
        IsometryJson { matrix: Some(m.matrix().to_vec()), basis: Basis::LFirst, curve_perm: None }
    }

    /// Builds the isometry; a curve permutation needs the model's negative curves.
    pub fn to_isometry(&self, curves: Option<&[DivisorClass]>) -> Result<LatticeIsometry> {
        match (&self.matrix, &self.curve_perm) {
            (Some(m), None) => Ok(match self.basis {
                Basis::LFirst => LatticeIsometry::from_matrix(m.clone())?,
                Basis::EFirst => LatticeIsometry::from_matrix_e_first(m)?,
            }),
            (None, Some(cycles)) => {
                let curves = curves.ok_or_else(|| VerifierError::usage("curve_perm needs a model"))?;
                let images = resolve_cycles(curves, cycles)?;
                Ok(LatticeIsometry::from_curve_permutation(curves, &images)?)
            }
            _ => Err(VerifierError::usage("an isometry needs exactly one of \"matrix\" and \"curve_perm\"")),
        }
    }
}

/// Index permutation of `curves` given by cycles of labels; unlisted curves are fixed.
pub fn resolve_cycles(curves: &[DivisorClass], cycles: &[Vec<String>]) -> Result<Vec<usize>> {
    let r = curves.first().map_or(0, DivisorClass::rank);
    let index = |s: &str| -> Result<usize> {
        let c = DivisorClass::parse(s, r)?;
        curves
            .iter()
            .position(|d| *d == c)
            .ok_or_else(|| VerifierError::usage(format!("{s} is not a negative curve of the model")))
    };
    let mut p: Vec<usize> = (0..curves.len()).collect();
    let mut seen = vec![false; curves.len()];
    for cyc in cycles {
        let idx = cyc.iter().map(|s| index(s)).collect::<Result<Vec<_>>>()?;
        for (w, &i) in idx.iter().enumerate() {
            if std::mem::replace(&mut seen[i], true) {
                return Err(VerifierError::usage(format!("{} appears in two cycles", curves[i].label())));
            }
            p[i] = idx[(w + 1) % idx.len()];
        }
    }
    Ok(p)
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FixedLocusJson {
    #[serde(default)]
    pub isolated_points: u32,
    #[serde(default)]
    pub curve_genera: Vec<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chi: Option<i64>,
}

impl FixedLocusJson {
    pub fn to_locus(&self) -> FixedLocus {
        FixedLocus {
            isolated_points: self.isolated_points,
            curve_genera: self.curve_genera.clone(),
            chi_override: self.chi,
        }
    }
}

pub type MapJson = [String; 3];

pub fn map(m: &MapJson) -> Result<ProjMap> {
    Ok(ProjMap::parse(&[m[0].as_str(), m[1].as_str(), m[2].as_str()])?)
}

pub fn map_json(m: &ProjMap) -> MapJson {
    m.component_strings()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BundleJson {
    pub fiber: CurveJson,
    /// Component labels of each singular fiber.
    pub singular_fibers: Vec<[String; 2]>,
}

impl BundleJson {
    pub fn new(cb: &ConicBundleStructure, curves: &[DivisorClass]) -> Self {
        BundleJson {
            fiber: CurveJson::new(&cb.fiber),
            singular_fibers: cb.singular_fibers.iter().map(|&(i, j)| [curves[i].label(), curves[j].label()]).collect(),
        }
    }
}

/// Source and target classes for extending a partial map of classes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassImagesJson {
    pub sources: Vec<ClassJson>,
    pub targets: Vec<ClassJson>,
}

impl ClassImagesJson {
    pub fn to_isometry(&self, rank: usize) -> Result<LatticeIsometry> {
        let conv = |v: &[ClassJson]| v.iter().map(|c| c.to_class(rank)).collect::<Result<Vec<_>>>();
        Ok(LatticeIsometry::from_class_images(&conv(&self.sources)?, &conv(&self.targets)?)?)
    }
}

/// Named point sets.
pub type PointSets = BTreeMap<String, Vec<[ScalarJson; 3]>>;
