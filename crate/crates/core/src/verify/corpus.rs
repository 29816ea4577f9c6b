//! Seeded corpora of instances for the verification suites.

use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::instance::{generate, GenConfig, InstanceFile};
use crate::Result;

/// A reproducible list of instances.
#[derive(Clone, Debug)]
pub struct Corpus {
    pub seed: u64,
    pub instances: Vec<InstanceFile>,
}

/// Default corpus: per-instance seeds and atom counts (3 to 12) drawn
/// from a master stream, instances from [`generate`].
pub fn default_corpus(seed: u64, count: usize, dimension: usize) -> Result<Corpus> {
    let mut master = ChaCha8Rng::seed_from_u64(seed);
    let mut instances = Vec::with_capacity(count);
    for _ in 0..count {
        let atom_count = master.gen_range(3..=12);
        let instance_seed: u64 = master.gen();
        instances.push(generate(&GenConfig {
            dimension,
            atom_count,
            seed: instance_seed,
        })?);
    }
    Ok(Corpus { seed, instances })
}

/// Load every `*.json` file in a directory, in name order.
pub fn load_dir(dir: &Path) -> Result<Corpus> {
    let mut paths: Vec<_> = std::fs::read_dir(dir)?
        .filter_map(|e| e.ok())
        .map(|e| e.path())
        .filter(|p| p.extension().map(|e| e == "json").unwrap_or(false))
        .collect();
    paths.sort();
    let instances = paths
        .iter()
        .map(|p| InstanceFile::load(p))
        .collect::<Result<Vec<_>>>()?;
    Ok(Corpus { seed: 0, instances })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_is_reproducible() {
        let a = default_corpus(42, 8, 1).unwrap();
        let b = default_corpus(42, 8, 1).unwrap();
        assert_eq!(a.instances.len(), 8);
        for (x, y) in a.instances.iter().zip(&b.instances) {
            assert_eq!(x.to_json(), y.to_json());
        }
        let c = default_corpus(43, 8, 1).unwrap();
        assert_ne!(a.instances[0].to_json(), c.instances[0].to_json());
    }

    #[test]
    fn atom_counts_in_range() {
        let corpus = default_corpus(7, 20, 1).unwrap();
        for inst in &corpus.instances {
            assert!((3..=12).contains(&inst.atoms.len()));
        }
    }

    #[test]
    fn load_dir_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let corpus = default_corpus(5, 3, 1).unwrap();
        for (i, inst) in corpus.instances.iter().enumerate() {
            inst.save(&dir.path().join(format!("{i:03}.json"))).unwrap();
        }
        let loaded = load_dir(dir.path()).unwrap();
        assert_eq!(loaded.instances.len(), 3);
        assert_eq!(loaded.instances[1].to_json(), corpus.instances[1].to_json());
    }
}
