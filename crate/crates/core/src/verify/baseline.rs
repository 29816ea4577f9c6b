//! Regression baselines for the non-explicit constants.
//!
//! A constant the source inequalities leave as "depending only on C_0, n,
//! d" is recorded on first sight as the observed maximum ratio; later runs
//! fail if the observation exceeds the stored value by more than 5%.

use std::collections::BTreeMap;
use std::path::Path;

use crate::verify::report::CheckRecord;
use crate::Result;

/// Multiplicative headroom over a stored baseline.
pub const BASELINE_HEADROOM: f64 = 1.05;

#[derive(Clone, Debug, Default)]
pub struct BaselineStore {
    pub values: BTreeMap<String, f64>,
    dirty: bool,
}

impl BaselineStore {
    /// Load a store; a missing file yields an empty store.
    pub fn load(path: &Path) -> Result<Self> {
        if !path.exists() {
            return Ok(BaselineStore::default());
        }
        let text = std::fs::read_to_string(path)?;
        let values: BTreeMap<String, f64> = serde_json::from_str(&text)?;
        Ok(BaselineStore { values, dirty: false })
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        if let Some(dir) = path.parent() {
            std::fs::create_dir_all(dir)?;
        }
        let mut text = serde_json::to_string_pretty(&self.values).expect("baseline serialization");
        text.push('\n');
        std::fs::write(path, text)?;
        Ok(())
    }

    pub fn dirty(&self) -> bool {
        self.dirty
    }

    /// Compare an observed ratio against the stored baseline, recording it
    /// first if absent.
    pub fn check(&mut self, name: &str, observed: f64) -> CheckRecord {
        match self.values.get(name) {
            Some(&stored) => {
                CheckRecord::exact(format!("baseline/{name}"), observed, stored, BASELINE_HEADROOM)
                    .with_detail(format!("stored baseline {stored}"))
            }
            None => {
                self.values.insert(name.to_string(), observed);
                self.dirty = true;
                CheckRecord::observed(format!("baseline/{name}"), observed, observed)
                    .with_detail("recorded as new baseline".to_string())
            }
        }
    }
}
