use std::path::{Path, PathBuf};

use cremona_verifier::fixtures::{Fixtures, Origin};
use cremona_verifier::registry::{self, citations, REGISTRY};
use cremona_verifier::report::{Report, Verdict};
use serde_json::{json, Value};

fn copy_dir(from: &Path, to: &Path) {
    std::fs::create_dir_all(to).unwrap();
    for entry in std::fs::read_dir(from).unwrap() {
        let entry = entry.unwrap();
        let target = to.join(entry.file_name());
        if entry.path().is_dir() {
            copy_dir(&entry.path(), &target);
        } else {
            std::fs::copy(entry.path(), target).unwrap();
        }
    }
}

/// A private copy of the fixtures, edited by `mutate`.
fn mutated(tag: &str, mutate: impl FnOnce(&Path)) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("cremona-{tag}-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    copy_dir(&Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures"), &dir);
    mutate(&dir);
    dir
}

fn edit_json(path: &Path, f: impl FnOnce(&mut Value)) {
    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    f(&mut v);
    std::fs::write(path, serde_json::to_string_pretty(&v).unwrap()).unwrap();
}

fn failed_ids(rep: &Report) -> Vec<String> {
    rep.failures().map(|c| c.id.clone()).collect()
}

#[test]
fn fresh_fixtures_pass() {
    let fx = Fixtures::open_default().unwrap();
    let rep = registry::run_all(&fx);
    assert!(rep.pass, "{:?}", failed_ids(&rep));
    assert!(rep.warnings.is_empty());
    // one check per expectation across all scenarios
    let expected: usize = fx.scenarios.values().flat_map(|s| s.expected.values()).map(|m| m.len()).sum();
    assert_eq!(rep.checks.len(), expected);
    let mut ids: Vec<&str> = rep.checks.iter().map(|c| c.id.as_str()).collect();
    let n = ids.len();
    ids.dedup();
    assert_eq!(ids.len(), n, "check ids are unique");
}

#[test]
fn reports_are_stable_across_runs_and_threads() {
    let fx = Fixtures::open_default().unwrap();
    let parallel = registry::run_all(&fx).to_json();
    assert_eq!(registry::run_all(&fx).to_json(), parallel);
    // one lemma at a time, merged afterwards
    let sequential: Vec<_> = REGISTRY.iter().flat_map(|l| registry::run_lemma(&fx, l.id).unwrap().checks).collect();
    assert_eq!(Report::new("all", sequential, Vec::new()).to_json(), parallel);
}

#[test]
fn corrupted_expectation_is_identified() {
    let dir = mutated("expect", |d| {
        edit_json(&d.join("s4hat/expected.json"), |v| v["s4hat-negative-curves"]["count"]["value"] = json!(11));
    });
    let rep = registry::run_all(&Fixtures::open(&dir).unwrap());
    assert!(!rep.pass);
    assert_eq!(failed_ids(&rep), ["s4hat-negative-curves/count"]);
    let c = rep.failures().next().unwrap();
    assert_eq!((c.expected.clone(), c.actual.clone()), (json!(11), json!(10)));
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn corrupted_data_is_identified() {
    // a fifth point on the line through A2 and A3 changes the curve configuration
    let dir = mutated("model", |d| {
        edit_json(&d.join("dp4/model.json"), |v| v["points"][4] = json!({ "proper": [0, 2, 5] }));
    });
    let rep = registry::run_lemma(&Fixtures::open(&dir).unwrap(), "dp4-sixteen-curves").unwrap();
    assert!(!rep.pass);
    assert!(failed_ids(&rep).contains(&"dp4-sixteen-curves/all-minus-one".to_string()));
    // an edited permutation breaks the twisting checks
    let dir2 = mutated("perm", |d| {
        edit_json(&d.join("s4hat/isometries.json"), |v| {
            v["isometries"]["g1"]["curve_perm"] = json!([["E1-E5", "D23-E4"], ["E2", "D12"], ["E3", "D13"], ["E4", "D14"], ["E5", "D15"]]);
        });
    });
    let rep = registry::run_lemma(&Fixtures::open(&dir2).unwrap(), "cs24-lattice").unwrap();
    assert!(failed_ids(&rep).contains(&"cs24-lattice/g1-twisted".to_string()));
    std::fs::remove_dir_all(dir).unwrap();
    std::fs::remove_dir_all(dir2).unwrap();
}

#[test]
fn unused_and_missing_expectations_fail() {
    let dir = mutated("extra", |d| {
        edit_json(&d.join("s6/expected.json"), |v| {
            v["s6-kappa"]["bogus"] = json!({ "value": 1, "origin": "immediate" });
            v["s6-three-bundles"].as_object_mut().unwrap().remove("count");
        });
    });
    let fx = Fixtures::open(&dir).unwrap();
    let rep = registry::run_lemma(&fx, "s6-kappa").unwrap();
    assert_eq!(failed_ids(&rep), ["s6-kappa/bogus"]);
    let rep = registry::run_lemma(&fx, "s6-three-bundles").unwrap();
    assert_eq!(failed_ids(&rep), ["s6-three-bundles/count"]);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn empty_registry_passes_with_warning() {
    let fx = Fixtures::open_default().unwrap();
    let rep = registry::run_all_with(&fx, &[]);
    assert!(rep.pass);
    assert!(rep.checks.is_empty());
    assert_eq!(rep.warnings.len(), 1);
}

#[test]
fn cited_expectations_have_index_entries() {
    let fx = Fixtures::open_default().unwrap();
    let index = citations();
    let mut used = std::collections::BTreeSet::new();
    for s in fx.scenarios.values() {
        for (lemma, checks) in &s.expected {
            assert!(REGISTRY.iter().any(|l| l.id == lemma && l.scenario == s.name), "{lemma} in {}", s.name);
            for (key, exp) in checks {
                match exp.origin {
                    Origin::Cited => {
                        let c = exp.citation.as_ref().unwrap_or_else(|| panic!("{lemma}/{key} lacks a citation"));
                        assert!(index.contains_key(c), "{c} is not in the index");
                        used.insert(c.clone());
                    }
                    _ => assert!(exp.citation.is_none(), "{lemma}/{key}"),
                }
            }
        }
    }
    let unused: Vec<_> = index.keys().filter(|k| !used.contains(*k)).collect();
    assert!(unused.is_empty(), "{unused:?}");
    let rep = registry::run_all(&fx);
    assert!(rep.checks.iter().filter(|c| c.citation.is_some()).all(|c| index.values().any(|t| Some(t) == c.citation.as_ref())));
}

#[test]
fn every_lemma_has_expectations() {
    let fx = Fixtures::open_default().unwrap();
    for l in REGISTRY {
        let rep = registry::run_lemma(&fx, l.id).unwrap();
        assert!(!rep.checks.is_empty(), "{}", l.id);
        assert!(rep.checks.iter().all(|c| c.verdict == Verdict::Pass), "{}", l.id);
    }
    assert!(registry::find("nope").is_err());
}
