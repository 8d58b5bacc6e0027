//! Scenario data read from `fixtures/<scenario>/{model,maps,isometries,expected}.json`.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::OnceLock;

use cremona_core::action::{FixedLocus, LatticeIsometry};
use cremona_core::lattice::{conic_bundle_from_fiber, negative_curves, ConicBundleStructure, SurfaceModel};
use cremona_core::{DivisorClass, ProjMap, ProjPoint};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Result, VerifierError};
use crate::schema::{self, ClassImagesJson, ClassJson, FixedLocusJson, IsometryJson, MapJson, ModelJson, PointSets};

/// Environment variable overriding the fixture root.
pub const FIXTURE_ENV: &str = "CREMONA_FIXTURES";

pub fn default_root() -> PathBuf {
    match std::env::var_os(FIXTURE_ENV) {
        Some(p) if !p.is_empty() => PathBuf::from(p),
        _ => Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures"),
    }
}

/// How an expected value is known.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Origin {
    /// Stated in the literature; carries a citation key.
    Cited,
    /// Follows directly from the definitions.
    Immediate,
    /// Established by an independent computation.
    Computed,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expectation {
    pub value: Value,
    pub origin: Origin,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub citation: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapsFile {
    #[serde(default)]
    pub maps: BTreeMap<String, MapJson>,
    #[serde(default)]
    pub point_sets: PointSets,
}

/// Data for a twisting check: which isometry, which conic bundle, and the order
/// of the induced action on the base.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TwistJson {
    pub isometry: String,
    pub fiber: ClassJson,
    pub base_order: u32,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IsometriesFile {
    #[serde(default)]
    pub isometries: BTreeMap<String, IsometryJson>,
    #[serde(default)]
    pub fixed_loci: BTreeMap<String, FixedLocusJson>,
    #[serde(default)]
    pub class_images: BTreeMap<String, ClassImagesJson>,
    #[serde(default)]
    pub twists: BTreeMap<String, TwistJson>,
}

/// Expectations keyed by lemma id, then by check name.
pub type ExpectedFile = BTreeMap<String, BTreeMap<String, Expectation>>;

pub struct Scenario {
    pub name: String,
    pub model: Option<SurfaceModel>,
    pub maps: BTreeMap<String, ProjMap>,
    pub point_sets: BTreeMap<String, Vec<ProjPoint>>,
    pub data: IsometriesFile,
    pub expected: ExpectedFile,
    curves: OnceLock<std::result::Result<Vec<DivisorClass>, cremona_core::Error>>,
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path)
        .map_err(|source| VerifierError::Io { path: path.display().to_string(), source })?;
    serde_json::from_str(&text).map_err(|source| VerifierError::Json { path: path.display().to_string(), source })
}

fn missing(kind: &str, name: &str, scenario: &str) -> VerifierError {
    VerifierError::usage(format!("scenario {scenario} has no {kind} named {name:?}"))
}

impl Scenario {
    pub fn load(dir: &Path) -> Result<Self> {
        let name = dir.file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
        let model: Option<ModelJson> = read_json(&dir.join("model.json"))?;
        let maps_file: MapsFile = read_json(&dir.join("maps.json"))?;
        let data: IsometriesFile = read_json(&dir.join("isometries.json"))?;
        let expected: ExpectedFile = read_json(&dir.join("expected.json"))?;
        let maps = maps_file
            .maps
            .iter()
            .map(|(k, m)| Ok((k.clone(), schema::map(m)?)))
            .collect::<Result<_>>()?;
        let point_sets = maps_file
            .point_sets
            .iter()
            .map(|(k, v)| Ok((k.clone(), v.iter().map(schema::point).collect::<Result<Vec<_>>>()?)))
            .collect::<Result<_>>()?;
        Ok(Scenario {
            name,
            model: model.map(|m| m.to_model()).transpose()?,
            maps,
            point_sets,
            data,
            expected,
            curves: OnceLock::new(),
        })
    }

    pub fn model(&self) -> Result<&SurfaceModel> {
        self.model.as_ref().ok_or_else(|| VerifierError::usage(format!("scenario {} has no model", self.name)))
    }

    pub fn rank(&self) -> Result<usize> {
        Ok(self.model()?.rank())
    }

    /// Negative curves of the model, computed once.
    pub fn curves(&self) -> Result<&[DivisorClass]> {
        let model = self.model()?;
        match self.curves.get_or_init(|| negative_curves(model)) {
            Ok(cs) => Ok(cs),
            Err(e) => Err(e.clone().into()),
        }
    }

    pub fn map(&self, name: &str) -> Result<&ProjMap> {
        self.maps.get(name).ok_or_else(|| missing("map", name, &self.name))
    }

    pub fn points(&self, name: &str) -> Result<&[ProjPoint]> {
        self.point_sets.get(name).map(Vec::as_slice).ok_or_else(|| missing("point set", name, &self.name))
    }

    pub fn isometry(&self, name: &str) -> Result<LatticeIsometry> {
        let entry = self.data.isometries.get(name).ok_or_else(|| missing("isometry", name, &self.name))?;
        let curves = if entry.curve_perm.is_some() { Some(self.curves()?) } else { None };
        entry.to_isometry(curves)
    }

    pub fn fixed_locus(&self, name: &str) -> Result<FixedLocus> {
        self.data.fixed_loci.get(name).map(FixedLocusJson::to_locus).ok_or_else(|| missing("fixed locus", name, &self.name))
    }

    pub fn class_images(&self, name: &str) -> Result<&ClassImagesJson> {
        self.data.class_images.get(name).ok_or_else(|| missing("class image set", name, &self.name))
    }

    pub fn twist(&self, name: &str) -> Result<&TwistJson> {
        self.data.twists.get(name).ok_or_else(|| missing("twist", name, &self.name))
    }

    pub fn class(&self, c: &ClassJson) -> Result<DivisorClass> {
        c.to_class(self.rank()?)
    }

    pub fn bundle(&self, fiber: &DivisorClass) -> Result<ConicBundleStructure> {
        Ok(conic_bundle_from_fiber(self.curves()?, fiber)?)
    }
}

/// Every scenario under a fixture root.
pub struct Fixtures {
    pub root: PathBuf,
    pub scenarios: BTreeMap<String, Scenario>,
}

impl Fixtures {
    pub fn open(root: &Path) -> Result<Self> {
        let entries =
            std::fs::read_dir(root).map_err(|source| VerifierError::Io { path: root.display().to_string(), source })?;
        let mut scenarios = BTreeMap::new();
        for entry in entries {
            let entry = entry.map_err(|source| VerifierError::Io { path: root.display().to_string(), source })?;
            if entry.path().is_dir() {
                let s = Scenario::load(&entry.path())?;
                scenarios.insert(s.name.clone(), s);
            }
        }
        Ok(Fixtures { root: root.to_path_buf(), scenarios })
    }

    pub fn open_default() -> Result<Self> {
        Self::open(&default_root())
    }

    pub fn scenario(&self, name: &str) -> Result<&Scenario> {
        self.scenarios
            .get(name)
            .ok_or_else(|| VerifierError::usage(format!("no scenario {name:?} under {}", self.root.display())))
    }
}
