//! Shipped fixtures and the checks run against fibration documents.

use std::fs;
use std::path::{Path, PathBuf};

use serde_json::{json, Value};

use super::{parse_fibration_spec, FibrationSpec};
use crate::error::{Error, Result};
use crate::fibrations::{build_first_integral, check_fibration, find_mobius, pointwise_check, transversality_check, Mobius};
use crate::maps::BiMap;

/// `fixtures/` inside this crate.
pub fn fixtures_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

pub fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::parse(path.display().to_string(), e.to_string()))
}

/// Every `*.json` in `dir`, sorted by stem.
pub fn load_fibrations(dir: &Path) -> Result<Vec<(String, FibrationSpec)>> {
    let mut out = Vec::new();
    let entries = fs::read_dir(dir).map_err(|e| Error::parse(dir.display().to_string(), e.to_string()))?;
    for ent in entries {
        let path = ent.map_err(|e| Error::parse(dir.display().to_string(), e.to_string()))?.path();
        if path.extension().and_then(|e| e.to_str()) != Some("json") {
            continue;
        }
        let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or_default().to_string();
        let spec = parse_fibration_spec(&read_text(&path)?)
            .map_err(|e| Error::parse(path.display().to_string(), e.to_string()))?;
        out.push((stem, spec));
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct FibrationCheck {
    pub name: String,
    /// Exact identity for the stated ψ, when one is stated.
    pub identity: Option<bool>,
    /// ψ recovered from the linear system.
    pub found: Option<Mobius>,
    pub found_agrees: bool,
    pub first_integral: Option<bool>,
    pub transverse: Option<bool>,
    /// Random rational points where V(f(p)) = ψ(V(p)) was confirmed.
    pub pointwise: usize,
}

impl FibrationCheck {
    pub fn passed(&self) -> bool {
        self.identity != Some(false)
            && self.found.is_some()
            && self.found_agrees
            && self.first_integral != Some(false)
            && self.transverse != Some(false)
    }

    pub fn to_value(&self) -> Value {
        json!({
            "name": self.name,
            "verdict": self.passed(),
            "identity": self.identity,
            "mobius_found": self.found.as_ref().map(|m| m.w.clone().map(|c| c.to_string())),
            "first_integral": self.first_integral,
            "transverse": self.transverse,
            "pointwise_samples": self.pointwise,
        })
    }
}

pub const POINTWISE_SAMPLES: usize = 8;

/// Checks one document. The map is the embedded one unless `map` is given;
/// `sibling` is the document named by `transverse_to`.
pub fn check_fibration_spec(
    name: &str,
    spec: &FibrationSpec,
    map: Option<&BiMap>,
    sibling: Option<&FibrationSpec>,
    seed: u64,
) -> Result<FibrationCheck> {
    let built;
    let f = match (map, &spec.map) {
        (Some(f), _) => f,
        (None, Some(m)) => {
            built = m.build()?;
            &built
        }
        (None, None) => return Err(Error::validation("map", "no map given or embedded")),
    };
    let k = f.field();
    let v = spec.fibration_in(k)?;
    let psi = spec.mobius_in(k)?;
    let identity = psi.as_ref().map(|p| check_fibration(f, &v, p)).transpose()?;
    let found = find_mobius(f, &v)?;
    let found_agrees = match (&psi, &found) {
        (Some(p), Some(q)) => p.normalized() == *q,
        (None, Some(_)) => true,
        _ => false,
    };
    let used = psi.clone().or_else(|| found.clone());
    let first_integral = match (spec.first_integral_order, &used) {
        (Some(n), Some(p)) => Some(build_first_integral(f, &v, p, n).is_ok()),
        (Some(_), None) => Some(false),
        _ => None,
    };
    let transverse = match sibling {
        Some(s) => Some(transversality_check(&v, &s.fibration_in(k)?)),
        None => None,
    };
    let pointwise = match &used {
        Some(p) if identity != Some(false) => pointwise_check(f, &v, p, POINTWISE_SAMPLES, seed).unwrap_or(0),
        _ => 0,
    };
    Ok(FibrationCheck { name: name.to_string(), identity, found, found_agrees, first_integral, transverse, pointwise })
}

/// Checks every fibration fixture in `dir`, resolving `transverse_to` by stem.
pub fn check_fibration_dir(dir: &Path, seed: u64) -> Result<Vec<FibrationCheck>> {
    use rayon::prelude::*;
    let all = load_fibrations(dir)?;
    all.par_iter()
        .map(|(name, spec)| {
            let sibling = match &spec.transverse_to {
                Some(t) => Some(
                    &all.iter()
                        .find(|(n, _)| n == t)
                        .ok_or_else(|| Error::validation("transverse_to", format!("{name}: no fixture {t}")))?
                        .1,
                ),
                None => None,
            };
            check_fibration_spec(name, spec, None, sibling, seed)
        })
        .collect()
}
