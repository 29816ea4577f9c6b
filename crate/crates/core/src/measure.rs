//! Finite atomic measures: exact `mu(Q)` queries, radial step profiles
//! `l -> mu(Q(z, l))`, and scale-restricted growth constants.
//!
//! A purely atomic measure violates the growth bound as `l -> 0`, so the
//! growth constant is always taken relative to a smallest scale `l_min`;
//! every inequality suite picks `l_min` as the smallest scale its argument
//! actually probes.

use serde::{Deserialize, Serialize};

use crate::geometry::{Cube, Point};
use crate::{Error, Result};

/// Maximum number of atoms; atom subsets are tracked as `u32` bitmasks.
pub const MAX_ATOMS: usize = 32;

/// A single atom: a position and a positive mass.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Atom {
    pub position: Point,
    pub mass: f64,
}

/// A finite atomic measure on `R^d` with a growth exponent `n` in `(0, d]`.
#[derive(Clone, Debug)]
pub struct MeasureSpace {
    dim: usize,
    growth_exponent: f64,
    atoms: Vec<Atom>,
    total_mass: f64,
}

/// Exact representation of `l -> mu(Q(z, l))` for a fixed center `z`.
///
/// The value is `masses[i]` for `l` in `[breakpoints[i], breakpoints[i+1])`
/// and zero below the first breakpoint; the last value is the total mass.
#[derive(Clone, Debug, PartialEq)]
pub struct StepProfile {
    pub breakpoints: Vec<f64>,
    pub masses: Vec<f64>,
}

impl StepProfile {
    /// `mu(Q(z, l))` for the profile's center.
    pub fn value_at(&self, l: f64) -> f64 {
        match self.breakpoints.partition_point(|&b| b <= l) {
            0 => 0.0,
            i => self.masses[i - 1],
        }
    }

    pub fn total(&self) -> f64 {
        *self.masses.last().unwrap()
    }
}

impl MeasureSpace {
    pub fn new(dim: usize, growth_exponent: f64, atoms: Vec<Atom>) -> Result<Self> {
        if dim != 1 && dim != 2 {
            return Err(Error::InvalidParameter(format!(
                "dimension must be 1 or 2, got {dim}"
            )));
        }
        if !(growth_exponent > 0.0 && growth_exponent <= dim as f64) {
            return Err(Error::InvalidParameter(format!(
                "growth exponent must lie in (0, {dim}], got {growth_exponent}"
            )));
        }
        if atoms.is_empty() {
            return Err(Error::InvalidParameter("at least one atom required".into()));
        }
        if atoms.len() > MAX_ATOMS {
            return Err(Error::InvalidParameter(format!(
                "at most {MAX_ATOMS} atoms supported, got {}",
                atoms.len()
            )));
        }
        for atom in &atoms {
            if atom.position.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: atom.position.dim(),
                });
            }
            if !(atom.mass > 0.0 && atom.mass.is_finite()) {
                return Err(Error::InvalidParameter(format!(
                    "atom masses must be positive and finite, got {}",
                    atom.mass
                )));
            }
        }
        for i in 0..atoms.len() {
            for j in i + 1..atoms.len() {
                if atoms[i].position == atoms[j].position {
                    return Err(Error::InvalidParameter(
                        "atom positions must be pairwise distinct".into(),
                    ));
                }
            }
        }
        let total_mass = atoms.iter().map(|a| a.mass).sum();
        Ok(MeasureSpace {
            dim,
            growth_exponent,
            atoms,
            total_mass,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn growth_exponent(&self) -> f64 {
        self.growth_exponent
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn total_mass(&self) -> f64 {
        self.total_mass
    }

    /// Bitmask of the atoms lying in `Q`.
    pub fn atoms_in(&self, q: &Cube) -> u32 {
        match q {
            Cube::WholeSpace => self.full_mask(),
            Cube::Bounded { center, side } => {
                let mut mask = 0u32;
                for (i, atom) in self.atoms.iter().enumerate() {
                    if atom.position.chebyshev(center) <= side / 2.0 {
                        mask |= 1 << i;
                    }
                }
                mask
            }
        }
    }

    pub fn full_mask(&self) -> u32 {
        if self.atoms.len() == 32 {
            u32::MAX
        } else {
            (1u32 << self.atoms.len()) - 1
        }
    }

    pub fn mask_mass(&self, mask: u32) -> f64 {
        let mut sum = 0.0;
        let mut m = mask;
        while m != 0 {
            let i = m.trailing_zeros() as usize;
            sum += self.atoms[i].mass;
            m &= m - 1;
        }
        sum
    }

    /// `mu(Q)`: total mass of the atoms in `Q`.
    pub fn mass_of(&self, q: &Cube) -> f64 {
        match q {
            Cube::WholeSpace => self.total_mass,
            _ => self.mask_mass(self.atoms_in(q)),
        }
    }

    /// The exact step profile `l -> mu(Q(z, l))`.
    ///
    /// Breakpoints are the sorted distinct values `2 |y_i - z|_inf`; ties
    /// accumulate together.
    pub fn radial_profile(&self, z: &Point) -> StepProfile {
        let mut dists: Vec<(f64, f64)> = self
            .atoms
            .iter()
            .map(|a| (2.0 * a.position.chebyshev(z), a.mass))
            .collect();
        dists.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut breakpoints = Vec::new();
        let mut masses = Vec::new();
        let mut acc = 0.0;
        let mut i = 0;
        while i < dists.len() {
            let d = dists[i].0;
            while i < dists.len() && dists[i].0 == d {
                acc += dists[i].1;
                i += 1;
            }
            breakpoints.push(d);
            masses.push(acc);
        }
        StepProfile { breakpoints, masses }
    }

    /// The scale-restricted growth constant `C_0(l_min)`: the exact supremum
    /// of `mu(Q(x, l)) / l^n` over atoms `x` and scales `l >= l_min`.
    ///
    /// On each profile piece the measure is constant and `l -> mu / l^n`
    /// decreasing, so the supremum is attained at piece left endpoints.
    pub fn growth_constant(&self, l_min: f64) -> Result<f64> {
        if !(l_min > 0.0 && l_min.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "l_min must be positive and finite, got {l_min}"
            )));
        }
        let n = self.growth_exponent;
        let mut best: f64 = 0.0;
        for atom in &self.atoms {
            let profile = self.radial_profile(&atom.position);
            let pieces = profile.breakpoints.len();
            for i in 0..pieces {
                // Skip pieces entirely below l_min.
                if i + 1 < pieces && profile.breakpoints[i + 1] <= l_min {
                    continue;
                }
                let a = profile.breakpoints[i].max(l_min);
                best = best.max(profile.masses[i] / a.powf(n));
            }
        }
        Ok(best)
    }
}
