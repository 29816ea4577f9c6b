//! Doubling-cube machinery: the `(k, beta)` predicate, the smallest
//! doubling dilate `Q*`, the largest small doubling cube centered at an
//! atom, Besicovitch selection for equal-size cubes, and ascending chains
//! of concentric doubling cubes.

use crate::geometry::{Cube, Point};
use crate::measure::MeasureSpace;
use crate::{Error, Result};

/// Default doubling parameters `(2, 2^{d+1})`; "doubling" unqualified
/// means this pair.
pub fn default_beta(dim: usize) -> f64 {
    2f64.powi(dim as i32 + 1)
}

/// Whether `Q` is `(k, beta)`-doubling: `mu(kQ) <= beta * mu(Q)`.
///
/// The whole space is always doubling.
pub fn is_doubling(mu: &MeasureSpace, q: &Cube, k: f64, beta: f64) -> Result<bool> {
    if matches!(q, Cube::WholeSpace) {
        return Ok(true);
    }
    let mass = mu.mass_of(q);
    if mass <= 0.0 {
        return Err(Error::ZeroMeasure);
    }
    Ok(mu.mass_of(&q.dilate(k)?) <= beta * mass)
}

/// The smallest `(2, 2^{d+1})`-doubling cube of the form `2^j Q`, `j >= 0`.
///
/// Terminates because `mu(2^j Q)` stabilizes at the total mass.
pub fn q_star(mu: &MeasureSpace, q: &Cube) -> Result<Cube> {
    if matches!(q, Cube::WholeSpace) {
        return Ok(Cube::WholeSpace);
    }
    if mu.mass_of(q) <= 0.0 {
        return Err(Error::ZeroMeasure);
    }
    let beta = default_beta(mu.dim());
    let mut current = q.clone();
    for _ in 0..20_000 {
        if is_doubling(mu, &current, 2.0, beta)? {
            return Ok(current);
        }
        current = current.dilate(2.0)?;
    }
    Err(Error::InvalidParameter(
        "doubling dilate search did not terminate".into(),
    ))
}

/// The largest `(k, beta)`-doubling cube centered at the atom `x` with
/// sidelength `k^{-j} l(Q)`, `j >= 1`.
///
/// Terminates because sufficiently small cubes isolate the atom, making
/// `mu(kQ) = mu(Q)`.
pub fn largest_small_doubling(
    mu: &MeasureSpace,
    x: &Point,
    q: &Cube,
    k: f64,
    beta: f64,
) -> Result<Cube> {
    if !mu.atoms().iter().any(|a| a.position == *x) {
        return Err(Error::NotAnAtom);
    }
    let side = q
        .side()
        .ok_or_else(|| Error::InvalidParameter("base cube must be bounded".into()))?;
    for j in 1..20_000 {
        let candidate = Cube::bounded(x.clone(), side * k.powi(-j))?;
        if is_doubling(mu, &candidate, k, beta)? {
            return Ok(candidate);
        }
    }
    Err(Error::InvalidParameter(
        "small doubling cube search did not terminate".into(),
    ))
}

/// Greedy Besicovitch selection for equal-size cubes.
///
/// Centers are visited in lexicographic order; a center is kept iff its
/// sup-distance to every kept center exceeds `l/2`. Every input center is
/// then covered by some selected cube, and the pointwise overlap of the
/// selected cubes is at most `3^d`.
///
/// Returns indices into the input slice, in selection order.
pub fn besicovitch_select(centers: &[Point], l: f64) -> Result<Vec<usize>> {
    if !(l > 0.0 && l.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "sidelength must be positive, got {l}"
        )));
    }
    let mut order: Vec<usize> = (0..centers.len()).collect();
    order.sort_by(|&a, &b| {
        centers[a]
            .coords
            .iter()
            .zip(&centers[b].coords)
            .map(|(x, y)| x.total_cmp(y))
            .find(|o| o.is_ne())
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    let mut selected: Vec<usize> = Vec::new();
    for &i in &order {
        if selected
            .iter()
            .all(|&j| centers[i].chebyshev(&centers[j]) > l / 2.0)
        {
            selected.push(i);
        }
    }
    Ok(selected)
}

/// An increasing sequence of concentric doubling cubes `R_1 c R_2 c ...`,
/// ending at the whole space for a finite measure.
#[derive(Clone, Debug)]
pub struct DoublingChain {
    pub cubes: Vec<Cube>,
}

impl DoublingChain {
    pub fn len(&self) -> usize {
        self.cubes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cubes.is_empty()
    }

    /// Locate the last chain cube contained in `outer`. Returns its index.
    pub fn bracket(&self, outer: &Cube) -> Option<usize> {
        self.cubes.iter().rposition(|c| c.is_subset(outer))
    }
}

/// Build an ascending chain of concentric doubling cubes from a doubling
/// seed `R`.
///
/// At step `k`: if the total mass is at most `2^k mu(R)` the chain ends
/// with the whole space; otherwise the next cube is the smallest doubling
/// dilate `2^l R_k` with `l >= 3` whose mass exceeds `2^k mu(R)`.
pub fn doubling_chain(mu: &MeasureSpace, r: &Cube) -> Result<DoublingChain> {
    let beta = default_beta(mu.dim());
    if mu.mass_of(r) <= 0.0 {
        return Err(Error::ZeroMeasure);
    }
    if !is_doubling(mu, r, 2.0, beta)? {
        return Err(Error::InvalidParameter(
            "chain seed must be a doubling cube".into(),
        ));
    }
    let base_mass = mu.mass_of(r);
    let mut cubes = vec![r.clone()];
    let mut k = 1u32;
    while cubes.last().unwrap().is_bounded() {
        let threshold = 2f64.powi(k as i32) * base_mass;
        if mu.total_mass() <= threshold {
            cubes.push(Cube::WholeSpace);
            break;
        }
        let prev = cubes.last().unwrap().clone();
        let mut l = 3u32;
        loop {
            let candidate = prev.dilate(2f64.powi(l as i32))?;
            if mu.mass_of(&candidate) > threshold && is_doubling(mu, &candidate, 2.0, beta)? {
                cubes.push(candidate);
                break;
            }
            l += 1;
            if l > 4000 {
                return Err(Error::InvalidParameter(
                    "chain step search did not terminate".into(),
                ));
            }
        }
        k += 1;
        if k > 200 {
            return Err(Error::InvalidParameter("chain did not terminate".into()));
        }
    }
    Ok(DoublingChain { cubes })
}
