//! Machine-readable transcription of the algebras, forms and certificates.

use std::collections::HashSet;
use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::curvature::Step;
use crate::error::{Error, Result};
use crate::exterior::{Form, Vector};
use crate::liealg::{parse_algebra, LieAlgebra};
use crate::parse::{parse_form, parse_poly, parse_scalar, parse_vector};
use crate::poly::PolyK;
use crate::scalar::ScalarK;

#[derive(Clone, Debug, Default, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct Tags {
    #[serde(default)]
    pub decomposable: Option<bool>,
    #[serde(default)]
    pub step: Option<usize>,
    #[serde(default)]
    pub section: String,
}

#[derive(Clone, Debug, Default, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct Expected {
    pub admits_coclosed: Option<bool>,
    pub obs3: Option<String>,
    pub block: Option<String>,
    pub existence: Option<bool>,
    pub coclosed: Option<bool>,
    pub metric_identity: Option<bool>,
    pub nilsoliton: Option<bool>,
    pub nilsoliton_lambda: Option<String>,
    pub contact: Option<bool>,
    pub contact_metric: Option<bool>,
    pub k_contact: Option<bool>,
    pub printed_star: Option<bool>,
    pub bryant_display: Option<bool>,
    pub elimination: Option<String>,
}

impl Expected {
    /// Names of the expectations that are set, paired with the check consuming each.
    pub fn claims(&self) -> Vec<(&'static str, &'static str)> {
        let mut out = Vec::new();
        let mut push = |set: bool, key, check| {
            if set {
                out.push((key, check));
            }
        };
        push(self.admits_coclosed.is_some(), "admits_coclosed", "partition");
        push(self.obs3.is_some(), "obs3", "obs3");
        push(self.block.is_some(), "block", "block");
        push(self.existence.is_some(), "existence", "existence");
        push(self.coclosed.is_some(), "coclosed", "coclosed");
        push(self.metric_identity.is_some(), "metric_identity", "metric");
        push(self.nilsoliton.is_some(), "nilsoliton", "nilsoliton");
        push(self.nilsoliton_lambda.is_some(), "nilsoliton_lambda", "nilsoliton");
        push(self.contact.is_some(), "contact", "contact");
        push(self.contact_metric.is_some(), "contact_metric", "contact");
        push(self.k_contact.is_some(), "k_contact", "contact");
        push(self.printed_star.is_some(), "printed_star", "printed-star");
        push(self.bryant_display.is_some(), "bryant_display", "bryant-display");
        push(self.elimination.is_some(), "elimination", "elimination");
        out
    }
}

#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ClosedFormsData {
    pub degree: usize,
    pub dimension: usize,
    pub printed: Option<String>,
}

#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct CaseData {
    pub guards: Vec<String>,
    pub x: String,
    pub y: String,
}

#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct BlockData {
    pub x: String,
    pub w: Vec<usize>,
    pub sigma: String,
    pub zero_pattern: Vec<[usize; 2]>,
}

#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct FormData {
    pub form: String,
    #[serde(default)]
    pub coframe: Option<Vec<String>>,
}

#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct RescalingData {
    pub from: String,
    pub scales: Vec<String>,
}

#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ContactData {
    pub xi: String,
    #[serde(default)]
    pub printed_star: Option<String>,
}

#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct BryantData {
    pub phi0: String,
    pub a: String,
    pub alpha: Vec<String>,
    pub printed_dstar: String,
    pub script: String,
}

#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct RawEntry {
    pub id: String,
    pub equations: String,
    #[serde(default)]
    pub tags: Tags,
    #[serde(default)]
    pub expected: Expected,
    pub closed_forms: Option<ClosedFormsData>,
    pub obs3: Option<Vec<CaseData>>,
    pub block: Option<BlockData>,
    pub four_form: Option<FormData>,
    pub three_form: Option<FormData>,
    pub rescaling: Option<RescalingData>,
    pub contact: Option<ContactData>,
    pub bryant: Option<BryantData>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct CatalogFile {
    #[serde(default)]
    entry: Vec<RawEntry>,
}

/// A validated catalog entry.
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub raw: RawEntry,
    pub file: String,
    pub algebra: LieAlgebra,
    /// Elimination script, when the entry references one.
    pub script: Option<Vec<Step>>,
}

impl CatalogEntry {
    pub fn id(&self) -> &str {
        &self.raw.id
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }
}

pub fn shipped_catalog_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("catalog")
}

fn violation(entry: &str, message: impl Into<String>) -> Error {
    Error::InvariantViolation { entry: entry.to_string(), message: message.into() }
}

fn check_forms(e: &RawEntry, dim: usize) -> Result<()> {
    let id = &e.id;
    let wrap = |what: &str, r: Result<()>| r.map_err(|err| violation(id, format!("{what}: {err}")));
    if let Some(c) = &e.closed_forms {
        if let Some(p) = &c.printed {
            wrap("closed_forms.printed", parse_form::<PolyK>(p, dim).map(|_| ()))?;
        }
    }
    for (n, case) in e.obs3.iter().flatten().enumerate() {
        wrap(&format!("obs3 case {}", n + 1), parse_vector::<PolyK>(&case.x, dim).map(|_| ()))?;
        wrap(&format!("obs3 case {}", n + 1), parse_vector::<PolyK>(&case.y, dim).map(|_| ()))?;
    }
    if let Some(b) = &e.block {
        wrap("block.x", parse_vector::<ScalarK>(&b.x, dim).map(|_| ()))?;
        wrap("block.sigma", parse_form::<ScalarK>(&b.sigma, dim.saturating_sub(1)).map(|_| ()))?;
    }
    for (name, f) in [("four_form", &e.four_form), ("three_form", &e.three_form)] {
        if let Some(f) = f {
            wrap(name, parse_form::<ScalarK>(&f.form, dim).map(|_| ()))?;
            for row in f.coframe.iter().flatten() {
                wrap(name, parse_form::<ScalarK>(row, dim).map(|_| ()))?;
            }
            if f.coframe.as_ref().is_some_and(|c| c.len() != dim) {
                return Err(violation(id, format!("{name}: coframe must have {dim} rows")));
            }
        }
    }
    if let Some(r) = &e.rescaling {
        for s in &r.scales {
            wrap("rescaling", parse_scalar(s).map(|_| ()))?;
        }
        if r.scales.len() != dim {
            return Err(violation(id, format!("rescaling needs {dim} scales")));
        }
    }
    if let Some(c) = &e.contact {
        wrap("contact.xi", parse_vector::<ScalarK>(&c.xi, dim).map(|_| ()))?;
        if let Some(s) = &c.printed_star {
            wrap("contact.printed_star", parse_form::<ScalarK>(s, dim).map(|_| ()))?;
        }
    }
    if let Some(b) = &e.bryant {
        wrap("bryant.phi0", parse_form::<ScalarK>(&b.phi0, dim).map(|_| ()))?;
        wrap("bryant.printed_dstar", parse_form::<PolyK>(&b.printed_dstar, dim).map(|_| ()))?;
        for v in std::iter::once(&b.a).chain(&b.alpha) {
            wrap("bryant", parse_poly(v).map(|_| ()))?;
        }
    }
    Ok(())
}

/// Parses one catalog file; `base` resolves relative script paths.
pub fn parse_catalog_str(text: &str, file: &str, base: Option<&Path>) -> Result<Vec<CatalogEntry>> {
    let parsed: CatalogFile =
        toml::from_str(text).map_err(|e| Error::Catalog { file: file.to_string(), message: e.to_string() })?;
    let mut out = Vec::with_capacity(parsed.entry.len());
    for raw in parsed.entry {
        let algebra = parse_algebra(&raw.equations).map_err(|e| violation(&raw.id, format!("equations: {e}")))?;
        let failures = algebra.jacobi_failures();
        if !failures.is_empty() {
            return Err(violation(&raw.id, format!("Jacobi identity fails for generators {failures:?}")));
        }
        check_forms(&raw, algebra.dim())?;
        let script = match (&raw.bryant, base) {
            (Some(b), Some(dir)) => {
                let path = dir.join(&b.script);
                let text = std::fs::read_to_string(&path)
                    .map_err(|e| Error::Catalog { file: path.display().to_string(), message: e.to_string() })?;
                let steps: Vec<Step> = serde_json::from_str(&text)
                    .map_err(|e| Error::Catalog { file: path.display().to_string(), message: e.to_string() })?;
                Some(steps)
            }
            _ => None,
        };
        out.push(CatalogEntry { raw, file: file.to_string(), algebra, script });
    }
    Ok(out)
}

/// Loads every `*.toml` file in `dir` (sorted by name) and rejects duplicate ids.
pub fn load_catalog(dir: &Path) -> Result<Vec<CatalogEntry>> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)
        .map_err(|e| Error::Catalog { file: dir.display().to_string(), message: e.to_string() })?
        .filter_map(|d| d.ok().map(|d| d.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "toml"))
        .collect();
    files.sort();
    let mut entries = Vec::new();
    let mut seen = HashSet::new();
    for path in files {
        let text = std::fs::read_to_string(&path)
            .map_err(|e| Error::Catalog { file: path.display().to_string(), message: e.to_string() })?;
        let name = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
        for e in parse_catalog_str(&text, &name, Some(dir))? {
            if !seen.insert(e.raw.id.clone()) {
                return Err(violation(&e.raw.id, "duplicate id"));
            }
            entries.push(e);
        }
    }
    Ok(entries)
}

pub fn load_shipped() -> Result<Vec<CatalogEntry>> {
    load_catalog(&shipped_catalog_dir())
}

pub fn find<'a>(entries: &'a [CatalogEntry], id: &str) -> Option<&'a CatalogEntry> {
    entries.iter().find(|e| e.raw.id == id)
}

/// Coframe rows as 1-forms.
pub fn coframe_rows(rows: &[String], dim: usize) -> Result<Vec<Form<ScalarK>>> {
    rows.iter().map(|r| parse_form(r, dim)).collect()
}

pub fn vector(text: &str, dim: usize) -> Result<Vector<ScalarK>> {
    parse_vector(text, dim)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_file_gives_no_entries() {
        assert!(parse_catalog_str("", "empty.toml", None).unwrap().is_empty());
    }

    #[test]
    fn non_jacobi_entry_rejected() {
        let text = "[[entry]]\nid = \"bad\"\nequations = \"(0,0,0,12,34,15,0)\"\n";
        assert!(matches!(parse_catalog_str(text, "bad.toml", None), Err(Error::InvariantViolation { .. })));
    }

    #[test]
    fn syntax_errors_name_the_file() {
        match parse_catalog_str("[[entry]\n", "broken.toml", None) {
            Err(Error::Catalog { file, .. }) => assert_eq!(file, "broken.toml"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn shipped_catalog_loads() {
        let entries = load_shipped().unwrap();
        assert_eq!(entries.len(), 53);
        assert!(find(&entries, "g1").is_some());
        assert!(find(&entries, "n8f").unwrap().script.is_some());
    }
}
