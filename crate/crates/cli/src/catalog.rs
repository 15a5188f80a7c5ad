//! Locating manifold files.

use std::path::{Path, PathBuf};

use crate::manifest::{ManifoldSpec, SpecError};
use clifford_lab_core::lie::LieModel;

pub const CATALOG_ENV: &str = "CLIFFORD_LAB_CATALOG";

pub fn catalog_dir() -> PathBuf {
    match std::env::var_os(CATALOG_ENV) {
        Some(dir) => PathBuf::from(dir),
        None => Path::new(env!("CARGO_MANIFEST_DIR")).join("catalog"),
    }
}

/// A path as given, else `name` or `name.json` inside the catalog.
pub fn resolve(name: &str) -> PathBuf {
    let direct = PathBuf::from(name);
    if direct.exists() {
        return direct;
    }
    let dir = catalog_dir();
    let file = Path::new(name).file_name().map(PathBuf::from).unwrap_or_else(|| direct.clone());
    for candidate in [dir.join(&file), dir.join(file.with_extension("json"))] {
        if candidate.exists() {
            return candidate;
        }
    }
    direct
}

pub fn load(name: &str) -> Result<(ManifoldSpec, LieModel), SpecError> {
    let path = resolve(name);
    let spec = ManifoldSpec::load(&path)?;
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or(name).to_string();
    let model = spec.to_model(&stem)?;
    Ok((spec, model))
}

/// Catalog entries, sorted by file name.
pub fn entries() -> Vec<PathBuf> {
    let mut out: Vec<PathBuf> = std::fs::read_dir(catalog_dir())
        .map(|rd| rd.filter_map(|e| e.ok().map(|e| e.path())).collect())
        .unwrap_or_default();
    out.retain(|p| p.extension().is_some_and(|e| e == "json"));
    out.sort();
    out
}
