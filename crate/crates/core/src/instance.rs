//! Instance files: a self-contained JSON description of a measure, named
//! sampled functions, exponent parameters and a family recipe, plus the
//! deterministic generator behind the corpus and the CLI `gen` command.

use std::collections::BTreeMap;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::families::FamilySpec;
use crate::functionals::{NormParams, SampledFunction, VectorFunction};
use crate::geometry::{Cube, Point};
use crate::measure::{Atom, MeasureSpace};
use crate::{Error, Result};

/// Exponent parameters as stored on disk; `alpha` feeds the dyadic-sum
/// coefficient and is not part of [`NormParams`].
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct ParamSet {
    pub p: f64,
    pub q: f64,
    pub k: f64,
    pub beta: f64,
    pub r: f64,
    pub alpha: f64,
}

impl ParamSet {
    pub fn norm_params(&self) -> Result<NormParams> {
        NormParams::new(self.p, self.q, self.k, self.beta, self.r)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AtomSpec {
    pub position: Vec<f64>,
    pub mass: f64,
}

/// On-disk instance description.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct InstanceFile {
    pub dimension: usize,
    pub growth_exponent: f64,
    pub atoms: Vec<AtomSpec>,
    /// Named value arrays aligned to the atom list.
    pub functions: BTreeMap<String, Vec<f64>>,
    pub params: ParamSet,
    pub family: FamilySpec,
}

impl InstanceFile {
    pub fn measure(&self) -> Result<MeasureSpace> {
        let atoms = self
            .atoms
            .iter()
            .map(|a| {
                Ok(Atom {
                    position: Point::new(a.position.clone())?,
                    mass: a.mass,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        MeasureSpace::new(self.dimension, self.growth_exponent, atoms)
    }

    pub fn function(&self, name: &str) -> Result<SampledFunction> {
        let values = self
            .functions
            .get(name)
            .ok_or_else(|| Error::InvalidInstance(format!("no function named {name:?}")))?;
        SampledFunction::new(&self.measure()?, values.clone())
    }

    /// The default scalar function: `f` if present, else the first name.
    pub fn scalar(&self) -> Result<SampledFunction> {
        if self.functions.contains_key("f") {
            return self.function("f");
        }
        let name = self
            .functions
            .keys()
            .next()
            .ok_or_else(|| Error::InvalidInstance("no functions".into()))?;
        self.function(name)
    }

    /// All functions, in name order, as a vector function.
    pub fn vector(&self) -> Result<VectorFunction> {
        let mu = self.measure()?;
        let components = self
            .functions
            .values()
            .map(|v| SampledFunction::new(&mu, v.clone()))
            .collect::<Result<Vec<_>>>()?;
        VectorFunction::new(components)
    }

    /// Run every structural validation: measure, functions, parameters.
    pub fn validate(&self) -> Result<()> {
        let mu = self.measure()?;
        if self.functions.is_empty() {
            return Err(Error::InvalidInstance("no functions".into()));
        }
        for (name, values) in &self.functions {
            SampledFunction::new(&mu, values.clone()).map_err(|e| {
                Error::InvalidInstance(format!("function {name:?}: {e}"))
            })?;
        }
        self.params.norm_params()?;
        let n = self.growth_exponent;
        if !(self.params.alpha > 0.0 && self.params.alpha < n) {
            return Err(Error::InvalidInstance(format!(
                "alpha must lie in (0, n) = (0, {n}), got {}",
                self.params.alpha
            )));
        }
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let instance: InstanceFile = serde_json::from_str(&text)?;
        instance.validate()?;
        Ok(instance)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json())?;
        Ok(())
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("instance serialization");
        text.push('\n');
        text
    }
}

/// Generator knobs; the distribution is fixed, only size and seed vary.
#[derive(Clone, Copy, Debug)]
pub struct GenConfig {
    pub dimension: usize,
    pub atom_count: usize,
    pub seed: u64,
}

/// Deterministic instance generation: positions uniform in `[0, 100]^d`,
/// masses log-uniform in `[1e-2, 1e2]`, growth exponent uniform in
/// `[d/2, d]`, three function components uniform in `[-10, 10]`.
pub fn generate(config: &GenConfig) -> Result<InstanceFile> {
    if config.dimension != 1 && config.dimension != 2 {
        return Err(Error::InvalidParameter(format!(
            "dimension must be 1 or 2, got {}",
            config.dimension
        )));
    }
    if config.atom_count < 1 || config.atom_count > crate::measure::MAX_ATOMS {
        return Err(Error::InvalidParameter(format!(
            "atom count must lie in [1, {}], got {}",
            crate::measure::MAX_ATOMS,
            config.atom_count
        )));
    }
    let d = config.dimension;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let n = rng.gen_range(d as f64 / 2.0..=d as f64);

    let mut atoms: Vec<AtomSpec> = Vec::with_capacity(config.atom_count);
    while atoms.len() < config.atom_count {
        let position: Vec<f64> = (0..d).map(|_| rng.gen_range(0.0..=100.0)).collect();
        if atoms.iter().any(|a| a.position == position) {
            continue;
        }
        let mass = rng.gen_range((1e-2f64).ln()..=(1e2f64).ln()).exp();
        atoms.push(AtomSpec { position, mass });
    }

    let mut functions = BTreeMap::new();
    for name in ["f", "g", "h"] {
        let values: Vec<f64> = (0..config.atom_count)
            .map(|_| rng.gen_range(-10.0..=10.0))
            .collect();
        functions.insert(name.to_string(), values);
    }

    let family = if d == 1 {
        FamilySpec::Exact1d { k: 2.0 }
    } else {
        let center = Point::new(vec![50.0; d])?;
        FamilySpec::Union(vec![
            FamilySpec::Dyadic {
                root: Cube::bounded(center, 256.0)?,
                depth: 4,
            },
            FamilySpec::CenteredBreakpoints,
            FamilySpec::Sampled { count: 2000, seed: config.seed },
        ])
    };

    let instance = InstanceFile {
        dimension: d,
        growth_exponent: n,
        atoms,
        functions,
        params: ParamSet { p: 2.0, q: 1.0, k: 2.0, beta: 5.0, r: 2.0, alpha: n / 2.0 },
        family,
    };
    instance.validate()?;
    Ok(instance)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generate_is_deterministic() {
        let config = GenConfig { dimension: 1, atom_count: 12, seed: 42 };
        let a = generate(&config).unwrap();
        let b = generate(&config).unwrap();
        assert_eq!(a.to_json(), b.to_json());
        assert_eq!(a.atoms.len(), 12);
        // Distinct positions are guaranteed by the measure constructor.
        a.measure().unwrap();
    }

    #[test]
    fn generate_single_atom() {
        let config = GenConfig { dimension: 1, atom_count: 1, seed: 7 };
        let inst = generate(&config).unwrap();
        inst.validate().unwrap();
        assert_eq!(inst.atoms.len(), 1);
        assert_eq!(inst.functions.len(), 3);
    }

    #[test]
    fn round_trip_through_disk() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("instance.json");
        let inst = generate(&GenConfig { dimension: 1, atom_count: 5, seed: 3 }).unwrap();
        inst.save(&path).unwrap();
        let loaded = InstanceFile::load(&path).unwrap();
        assert_eq!(inst.to_json(), loaded.to_json());
    }

    #[test]
    fn validate_rejects_bad_instances() {
        let mut inst = generate(&GenConfig { dimension: 1, atom_count: 3, seed: 1 }).unwrap();
        inst.functions.get_mut("f").unwrap().pop();
        assert!(inst.validate().is_err());

        let mut inst = generate(&GenConfig { dimension: 1, atom_count: 3, seed: 1 }).unwrap();
        inst.atoms[0].mass = -2.0;
        assert!(inst.validate().is_err());

        let mut inst = generate(&GenConfig { dimension: 1, atom_count: 3, seed: 1 }).unwrap();
        inst.params.alpha = inst.growth_exponent * 2.0;
        assert!(inst.validate().is_err());
    }

    #[test]
    fn d2_instances_validate() {
        let inst = generate(&GenConfig { dimension: 2, atom_count: 6, seed: 9 }).unwrap();
        inst.validate().unwrap();
        let mu = inst.measure().unwrap();
        assert_eq!(mu.dim(), 2);
    }
}
