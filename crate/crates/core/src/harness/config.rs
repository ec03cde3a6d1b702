use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::engine::DEFAULT_MAX_STEPS;
use crate::error::{Error, Result};
use crate::lattice::{Boundary, Mask};

/// A value given either once or as a list.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum OneOrMany<T> {
    One(T),
    Many(Vec<T>),
}

impl<T: Clone> OneOrMany<T> {
    pub fn to_vec(&self) -> Vec<T> {
        match self {
            OneOrMany::One(v) => vec![v.clone()],
            OneOrMany::Many(v) => v.clone(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Analysis {
    Mcl,
    Events,
}

/// Sweep description as read from JSON. Mask paths are relative to the
/// config file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub masks: Vec<PathBuf>,
    /// One shape such as `[70, 70]` or a list of shapes.
    pub dims: OneOrMany<Vec<usize>>,
    #[serde(default = "default_boundary")]
    pub boundary: String,
    pub n_points: OneOrMany<usize>,
    pub seeds: Vec<u64>,
    #[serde(default = "default_max_steps")]
    pub max_steps: u64,
    #[serde(default)]
    pub analyses: Vec<Analysis>,
    /// Horizon for the early SuperRiver screen; off when absent.
    #[serde(default)]
    pub early_screen: Option<u64>,
}

fn default_boundary() -> String {
    "periodic".into()
}

fn default_max_steps() -> u64 {
    DEFAULT_MAX_STEPS
}

/// Masks keyed by file stem.
pub type NamedMasks = Vec<(String, Arc<Mask>)>;

/// One cell of the sweep's cross product.
#[derive(Clone, Debug)]
pub struct ExperimentSpec {
    pub mask_id: String,
    pub mask: Arc<Mask>,
    pub dims: Vec<usize>,
    pub boundary: Vec<Boundary>,
    pub n_points: usize,
    pub seed: u64,
    pub max_steps: u64,
    pub analyses: Vec<Analysis>,
    pub early_screen: Option<u64>,
}

impl SweepConfig {
    pub fn from_json(text: &str) -> Result<SweepConfig> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn load(path: &Path) -> Result<(SweepConfig, NamedMasks)> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let config = SweepConfig::from_json(&text)?;
        let base = path.parent().unwrap_or(Path::new("."));
        let masks = config.load_masks(base)?;
        Ok((config, masks))
    }

    /// Reads every mask, keyed by file stem.
    pub fn load_masks(&self, base: &Path) -> Result<NamedMasks> {
        let mut seen = BTreeSet::new();
        self.masks
            .iter()
            .map(|rel| {
                let path = base.join(rel);
                let text = std::fs::read_to_string(&path).map_err(|e| Error::io(&path, e))?;
                let mask = Mask::parse(&text)
                    .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
                let id = rel
                    .file_stem()
                    .map(|s| s.to_string_lossy().into_owned())
                    .unwrap_or_else(|| rel.display().to_string());
                if !seen.insert(id.clone()) {
                    return Err(Error::Config(format!("two masks share the id {id:?}")));
                }
                Ok((id, Arc::new(mask)))
            })
            .collect()
    }

    /// The full cross product, in output order.
    pub fn expand(&self, masks: &[(String, Arc<Mask>)]) -> Result<Vec<ExperimentSpec>> {
        let seeds: BTreeSet<u64> = self.seeds.iter().copied().collect();
        if seeds.len() != self.seeds.len() {
            return Err(Error::Config("seeds must be distinct".into()));
        }
        let mut analyses = self.analyses.clone();
        analyses.sort();
        analyses.dedup();
        let mut out = Vec::new();
        for (mask_id, mask) in masks {
            for dims in self.dims.to_vec() {
                if dims.len() != mask.dim() {
                    return Err(Error::DimensionMismatch {
                        expected: mask.dim(),
                        found: dims.len(),
                    });
                }
                let boundary = Boundary::parse_list(&self.boundary, dims.len())?;
                for n_points in self.n_points.to_vec() {
                    for &seed in &self.seeds {
                        out.push(ExperimentSpec {
                            mask_id: mask_id.clone(),
                            mask: mask.clone(),
                            dims: dims.clone(),
                            boundary: boundary.clone(),
                            n_points,
                            seed,
                            max_steps: self.max_steps,
                            analyses: analyses.clone(),
                            early_screen: self.early_screen,
                        });
                    }
                }
            }
        }
        Ok(out)
    }
}
