//! Finite cube families over which all suprema are evaluated.
//!
//! The central construction is the exact pattern enumerator for `d = 1`:
//! the value of every norm depends on a cube `Q` only through the atoms in
//! `Q` and in its dilates, so enumerating all realizable membership
//! patterns (with a witness cube per pattern) turns each supremum into an
//! exact finite maximum. For `d = 2` the module ships heuristic families
//! (dyadic, breakpoint-centered, sampled) and norms computed over them are
//! certified lower bounds.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::geometry::{Cube, Point};
use crate::measure::MeasureSpace;
use crate::{Error, Result};

/// How complete a family is with respect to the supremum over all cubes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Completeness {
    /// Every realizable membership pattern has a witness (d = 1 only).
    Exact1d,
    /// Norms over the family are lower bounds for the true suprema.
    Heuristic,
}

/// An explicit finite cube family; every member has positive measure and
/// the whole space appears exactly once.
#[derive(Clone, Debug)]
pub struct CubeFamily {
    pub cubes: Vec<Cube>,
    pub completeness: Completeness,
    /// Dilation parameter used during construction.
    pub dilation: f64,
    /// Indices of cubes that must survive any thinning of the pair set.
    pub pinned: Vec<usize>,
}

impl CubeFamily {
    /// Insert `cube` (deduplicated) and mark it pinned.
    pub fn pin(&mut self, cube: Cube) {
        let key = dedup_key(&cube);
        let idx = match self.cubes.iter().position(|c| dedup_key(c) == key) {
            Some(i) => i,
            None => {
                self.cubes.push(cube);
                self.cubes.len() - 1
            }
        };
        if !self.pinned.contains(&idx) {
            self.pinned.push(idx);
        }
    }
}

/// Family construction recipe, expressible in the CLI config.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub enum FamilySpec {
    Exact1d { k: f64 },
    Dyadic { root: Cube, depth: u32 },
    CenteredBreakpoints,
    Sampled { count: usize, seed: u64 },
    Union(Vec<FamilySpec>),
}

/// A realizable membership pattern for a bounded cube `Q`: the atoms in
/// `Q` and in `kQ`, as inclusive index ranges of the coordinate-sorted
/// atoms, plus a witness cube in the feasible region's interior.
#[derive(Clone, Debug)]
pub struct Pattern {
    pub inner: (usize, usize),
    pub outer: (usize, usize),
    pub witness: Cube,
}

/// Indices of the atoms sorted by coordinate (d = 1).
pub fn sorted_atom_order(mu: &MeasureSpace) -> Vec<usize> {
    let mut order: Vec<usize> = (0..mu.atoms().len()).collect();
    order.sort_by(|&a, &b| {
        mu.atoms()[a].position.coords[0].total_cmp(&mu.atoms()[b].position.coords[0])
    });
    order
}

fn min_positive_gap(xs: &[f64]) -> f64 {
    let mut gap = f64::INFINITY;
    for w in xs.windows(2) {
        let d = w[1] - w[0];
        if d > 0.0 {
            gap = gap.min(d);
        }
    }
    if gap.is_finite() {
        gap
    } else {
        1.0
    }
}

/// One linear bound on the cube center: `c >= a + b*l` or `c <= a + b*l`.
struct CenterBounds {
    lower: Vec<(f64, f64)>,
    upper: Vec<(f64, f64)>,
}

impl CenterBounds {
    fn new() -> Self {
        CenterBounds { lower: Vec::new(), upper: Vec::new() }
    }

    /// Add the constraints for "atoms in `rho * Q(c, l)` are exactly the
    /// sorted-index range `[lo, hi]`", with strict exclusions slackened
    /// by `eps`.
    fn add_level(&mut self, xs: &[f64], range: (usize, usize), rho: f64, eps: f64) {
        let (lo, hi) = range;
        let h = rho / 2.0;
        self.lower.push((xs[hi], -h));
        self.upper.push((xs[lo], h));
        if lo > 0 {
            self.lower.push((xs[lo - 1] + eps, h));
        }
        if hi + 1 < xs.len() {
            self.upper.push((xs[hi + 1] - eps, -h));
        }
    }

    /// Intersect the pairwise lower-vs-upper comparisons into a feasible
    /// interval for `l`, starting from `[l_floor, inf)`.
    fn feasible_interval(&self, l_floor: f64) -> Option<(f64, f64)> {
        let mut lo = l_floor;
        let mut hi = f64::INFINITY;
        for &(al, bl) in &self.lower {
            for &(au, bu) in &self.upper {
                let coeff = bl - bu;
                let rhs = au - al;
                if coeff > 0.0 {
                    hi = hi.min(rhs / coeff);
                } else if coeff < 0.0 {
                    lo = lo.max(rhs / coeff);
                } else if rhs < 0.0 {
                    return None;
                }
            }
        }
        if lo <= hi {
            Some((lo, hi))
        } else {
            None
        }
    }

    fn center_window(&self, l: f64) -> (f64, f64) {
        let cmin = self
            .lower
            .iter()
            .map(|&(a, b)| a + b * l)
            .fold(f64::NEG_INFINITY, f64::max);
        let cmax = self
            .upper
            .iter()
            .map(|&(a, b)| a + b * l)
            .fold(f64::INFINITY, f64::min);
        (cmin, cmax)
    }
}

/// Enumerate nested membership patterns for a list of dilation factors
/// (in ascending order, excluding the implicit factor 1 for `Q` itself).
///
/// Returns, per realizable pattern, the inclusive sorted-index range per
/// level (`ranges[0]` is the atoms in `Q`) and a witness cube.
fn enumerate_multi(
    mu: &MeasureSpace,
    factors: &[f64],
) -> Result<Vec<(Vec<(usize, usize)>, Cube)>> {
    if mu.dim() != 1 {
        return Err(Error::InvalidParameter(
            "exact pattern enumeration requires d = 1".into(),
        ));
    }
    let order = sorted_atom_order(mu);
    let xs: Vec<f64> = order
        .iter()
        .map(|&i| mu.atoms()[i].position.coords[0])
        .collect();
    let gap = min_positive_gap(&xs);
    let eps = gap / 8.0;
    let l_floor = gap * 1e-9;

    let mut out = Vec::new();
    let mut ranges: Vec<(usize, usize)> = Vec::with_capacity(factors.len() + 1);

    fn recurse(
        xs: &[f64],
        factors: &[f64],
        level: usize,
        ranges: &mut Vec<(usize, usize)>,
        eps: f64,
        l_floor: f64,
        gap: f64,
        out: &mut Vec<(Vec<(usize, usize)>, Cube)>,
    ) {
        let m = xs.len();
        if level == factors.len() + 1 {
            // Thin-but-real cells can be infeasible under a generous
            // exclusion slack, so retry with smaller margins before
            // declaring the pattern unrealizable; the floating-point
            // verification pass below guards against bad witnesses.
            let attempt = [eps, eps / 64.0, eps / 4096.0, eps * 1e-9]
                .into_iter()
                .find_map(|e| {
                    let mut bounds = CenterBounds::new();
                    bounds.add_level(xs, ranges[0], 1.0, e);
                    for (t, &rho) in factors.iter().enumerate() {
                        bounds.add_level(xs, ranges[t + 1], rho, e);
                    }
                    bounds.feasible_interval(l_floor).map(|iv| (bounds, iv))
                });
            if let Some((bounds, (lo, hi))) = attempt {
                // Sample the feasible cell on a small grid rather than at a
                // single midpoint: functionals that consult dyadic dilates
                // of the cube (the smallest-doubling-dilate search) can
                // distinguish cubes within one membership cell, so witness
                // diversity matters.
                let mut sides: Vec<f64> = Vec::new();
                if hi.is_finite() {
                    if hi > lo {
                        for t in [0.0, 0.25, 0.5, 0.75, 1.0] {
                            sides.push(lo + t * (hi - lo));
                        }
                    } else {
                        sides.push(lo);
                    }
                } else {
                    sides.push(lo);
                    sides.push((2.0 * lo).max(gap));
                    sides.push((8.0 * lo).max(4.0 * gap));
                }
                for &l in &sides {
                    if !(l > 0.0) {
                        continue;
                    }
                    let (cmin, cmax) = bounds.center_window(l);
                    if cmin <= cmax {
                        for t in [0.0, 0.5, 1.0] {
                            let c = cmin + t * (cmax - cmin);
                            if let Ok(witness) = Cube::bounded(Point::new(vec![c]).unwrap(), l) {
                                out.push((ranges.clone(), witness));
                            }
                        }
                    }
                }
            }
            return;
        }
        let (plo, phi) = if level == 0 {
            (None, None)
        } else {
            let r = ranges[level - 1];
            (Some(r.0), Some(r.1))
        };
        let lo_max = plo.unwrap_or(m - 1);
        for lo in 0..=lo_max {
            let hi_min = phi.unwrap_or(lo).max(lo);
            for hi in hi_min..m {
                if level == 0 && hi < lo {
                    continue;
                }
                ranges.push((lo, hi));
                recurse(xs, factors, level + 1, ranges, eps, l_floor, gap, out);
                ranges.pop();
            }
        }
    }

    recurse(&xs, factors, 0, &mut ranges, eps, l_floor, gap, &mut out);

    // Drop any witness that fails to reproduce its pattern under
    // floating-point membership evaluation.
    let mut checked = Vec::with_capacity(out.len());
    'outer: for (ranges, witness) in out {
        for (t, &(lo, hi)) in ranges.iter().enumerate() {
            let rho = if t == 0 { 1.0 } else { factors[t - 1] };
            let dilated = witness.dilate(rho)?;
            let mask = mu.atoms_in(&dilated);
            let expected = range_mask(&order, lo, hi);
            if mask != expected {
                continue 'outer;
            }
        }
        checked.push((ranges, witness));
    }
    if checked.is_empty() {
        return Err(Error::InvalidParameter(
            "pattern enumeration produced no realizable patterns".into(),
        ));
    }
    Ok(checked)
}

fn range_mask(order: &[usize], lo: usize, hi: usize) -> u32 {
    let mut mask = 0u32;
    for &i in &order[lo..=hi] {
        mask |= 1 << i;
    }
    mask
}

/// Every realizable pair (atoms in `Q`, atoms in `kQ`) for `d = 1`, with a
/// witness cube per pattern.
pub fn enumerate_patterns_1d(mu: &MeasureSpace, k: f64) -> Result<Vec<Pattern>> {
    if !(k > 1.0 && k.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "dilation parameter must exceed 1, got {k}"
        )));
    }
    let multi = enumerate_multi(mu, &[k])?;
    let mut seen = std::collections::HashSet::new();
    Ok(multi
        .into_iter()
        .filter(|(ranges, _)| seen.insert((ranges[0], ranges[1])))
        .map(|(ranges, witness)| Pattern {
            inner: ranges[0],
            outer: ranges[1],
            witness,
        })
        .collect())
}

fn dedup_key(c: &Cube) -> Vec<u64> {
    match c {
        Cube::WholeSpace => vec![u64::MAX],
        Cube::Bounded { center, side } => {
            let mut key: Vec<u64> = center.coords.iter().map(|x| x.to_bits()).collect();
            key.push(side.to_bits());
            key
        }
    }
}

/// Pattern signature used to prune redundant cubes during exact-family
/// enrichment: the atom masks of `Q` and of its standard dilates, plus the
/// mask of its smallest doubling dyadic dilate (which the oscillation
/// functionals consult and which a cube's plain dilate masks do not
/// determine).
fn pattern_key(mu: &MeasureSpace, q: &Cube, k: f64) -> (u32, u32, u32, u32, u32) {
    let q_star_mask = if mu.mass_of(q) > 0.0 {
        crate::doubling::q_star(mu, q)
            .map(|s| mu.atoms_in(&s))
            .unwrap_or(0)
    } else {
        0
    };
    (
        mu.atoms_in(q),
        mu.atoms_in(&q.dilate(1.5).unwrap()),
        mu.atoms_in(&q.dilate(2.0).unwrap()),
        mu.atoms_in(&q.dilate(k).unwrap()),
        q_star_mask,
    )
}

fn exact_1d_cubes(mu: &MeasureSpace, k: f64) -> Result<Vec<Cube>> {
    // Enumerate with every dilation factor the norms actually consult:
    // 3/2 (RBMO weight), 2 (doubling predicate, default Morrey) and the
    // requested k.
    let mut factors = vec![1.5, 2.0, k];
    factors.sort_by(f64::total_cmp);
    factors.dedup();
    let multi = enumerate_multi(mu, &factors)?;

    let mut seen = std::collections::HashSet::new();
    let mut cubes = Vec::new();
    let full = mu.full_mask();
    for (_, witness) in &multi {
        let key = pattern_key(mu, witness, k);
        if seen.insert(key) {
            cubes.push(witness.clone());
        }
    }
    // Dyadic dilates of each witness with a novel pattern: these are the
    // candidate Q* cubes and chain steps the pair terms range over.
    let base: Vec<Cube> = cubes.clone();
    for w in base {
        let mut current = w;
        for _ in 0..100 {
            current = current.dilate(2.0)?;
            let key = pattern_key(mu, &current, k);
            let saturated = key == (full, full, full, full, full);
            if seen.insert(key) {
                cubes.push(current.clone());
            }
            if saturated {
                break;
            }
        }
    }
    Ok(cubes)
}

fn dyadic_cubes(root: &Cube, depth: u32) -> Result<Vec<Cube>> {
    let (center, side) = match root {
        Cube::Bounded { center, side } => (center.clone(), *side),
        Cube::WholeSpace => {
            return Err(Error::InvalidParameter(
                "dyadic family requires a bounded root".into(),
            ))
        }
    };
    let d = center.dim();
    let mut out = Vec::new();
    let mut level = vec![(center, side)];
    out.extend(
        level
            .iter()
            .map(|(c, s)| Cube::Bounded { center: c.clone(), side: *s }),
    );
    for _ in 0..depth {
        let mut next = Vec::with_capacity(level.len() << d);
        for (c, s) in &level {
            let half = s / 2.0;
            for corner in 0..(1usize << d) {
                let coords: Vec<f64> = (0..d)
                    .map(|axis| {
                        let sign = if corner >> axis & 1 == 1 { 1.0 } else { -1.0 };
                        c.coords[axis] + sign * s / 4.0
                    })
                    .collect();
                next.push((Point::new(coords).unwrap(), half));
            }
        }
        out.extend(
            next.iter()
                .map(|(c, s)| Cube::Bounded { center: c.clone(), side: *s }),
        );
        level = next;
    }
    Ok(out)
}

fn breakpoint_cubes(mu: &MeasureSpace) -> Vec<Cube> {
    let mut gap = f64::INFINITY;
    for (i, a) in mu.atoms().iter().enumerate() {
        for b in &mu.atoms()[i + 1..] {
            gap = gap.min(a.position.chebyshev(&b.position));
        }
    }
    let eps = if gap.is_finite() { gap / 8.0 } else { 0.125 };
    let mut out = Vec::new();
    for atom in mu.atoms() {
        let profile = mu.radial_profile(&atom.position);
        for &bp in &profile.breakpoints {
            for side in [bp - eps, bp, bp + eps] {
                if side > 0.0 {
                    out.push(Cube::Bounded {
                        center: atom.position.clone(),
                        side,
                    });
                }
            }
        }
        // Always include a cube isolating the atom.
        out.push(Cube::Bounded {
            center: atom.position.clone(),
            side: eps,
        });
    }
    out
}

fn sampled_cubes(mu: &MeasureSpace, count: usize, seed: u64) -> Vec<Cube> {
    let d = mu.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut lo = vec![f64::INFINITY; d];
    let mut hi = vec![f64::NEG_INFINITY; d];
    for atom in mu.atoms() {
        for axis in 0..d {
            lo[axis] = lo[axis].min(atom.position.coords[axis]);
            hi[axis] = hi[axis].max(atom.position.coords[axis]);
        }
    }
    let span = (0..d)
        .map(|axis| hi[axis] - lo[axis])
        .fold(0.0f64, f64::max)
        .max(1.0);
    let mut min_gap = f64::INFINITY;
    for (i, a) in mu.atoms().iter().enumerate() {
        for b in &mu.atoms()[i + 1..] {
            min_gap = min_gap.min(a.position.chebyshev(&b.position));
        }
    }
    let side_lo = if min_gap.is_finite() { min_gap / 4.0 } else { span / 100.0 };
    let (ln_lo, ln_hi) = (side_lo.ln(), (4.0 * span).ln());

    let mut out = Vec::with_capacity(count);
    let mut attempts = 0usize;
    while out.len() < count && attempts < count.saturating_mul(64).max(1024) {
        attempts += 1;
        let coords: Vec<f64> = (0..d)
            .map(|axis| rng.gen_range(lo[axis] - span / 2.0..=hi[axis] + span / 2.0))
            .collect();
        let side = rng.gen_range(ln_lo..=ln_hi).exp();
        let cube = Cube::Bounded {
            center: Point::new(coords).unwrap(),
            side,
        };
        if mu.mass_of(&cube) > 0.0 {
            out.push(cube);
        }
    }
    out
}

fn collect(mu: &MeasureSpace, spec: &FamilySpec, out: &mut Vec<Cube>) -> Result<bool> {
    match spec {
        FamilySpec::Exact1d { k } => {
            out.extend(exact_1d_cubes(mu, *k)?);
            Ok(true)
        }
        FamilySpec::Dyadic { root, depth } => {
            out.extend(dyadic_cubes(root, *depth)?);
            Ok(false)
        }
        FamilySpec::CenteredBreakpoints => {
            out.extend(breakpoint_cubes(mu));
            Ok(false)
        }
        FamilySpec::Sampled { count, seed } => {
            out.extend(sampled_cubes(mu, *count, *seed));
            Ok(false)
        }
        FamilySpec::Union(specs) => {
            let mut exact = false;
            for s in specs {
                exact |= collect(mu, s, out)?;
            }
            Ok(exact)
        }
    }
}

/// Build a deduplicated family from a recipe; cubes with zero measure are
/// dropped and the whole space is appended once.
pub fn build_family(mu: &MeasureSpace, spec: &FamilySpec) -> Result<CubeFamily> {
    let mut cubes = Vec::new();
    let exact = collect(mu, spec, &mut cubes)?;
    let mut seen = std::collections::HashSet::new();
    let mut deduped = Vec::with_capacity(cubes.len() + 1);
    for cube in cubes {
        if mu.mass_of(&cube) <= 0.0 {
            continue;
        }
        if seen.insert(dedup_key(&cube)) {
            deduped.push(cube);
        }
    }
    deduped.push(Cube::WholeSpace);
    let dilation = spec_dilation(spec).unwrap_or(2.0);
    Ok(CubeFamily {
        cubes: deduped,
        completeness: if exact {
            Completeness::Exact1d
        } else {
            Completeness::Heuristic
        },
        dilation,
        pinned: Vec::new(),
    })
}

fn spec_dilation(spec: &FamilySpec) -> Option<f64> {
    match spec {
        FamilySpec::Exact1d { k } => Some(*k),
        FamilySpec::Union(specs) => specs.iter().find_map(spec_dilation),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measure::Atom;

    fn pt(x: f64) -> Point {
        Point::new(vec![x]).unwrap()
    }

    fn measure(positions: &[f64]) -> MeasureSpace {
        MeasureSpace::new(
            1,
            1.0,
            positions
                .iter()
                .map(|&x| Atom { position: pt(x), mass: 1.0 })
                .collect(),
        )
        .unwrap()
    }

    fn has_pattern(patterns: &[Pattern], inner: (usize, usize), outer: (usize, usize)) -> bool {
        patterns.iter().any(|p| p.inner == inner && p.outer == outer)
    }

    #[test]
    fn three_atom_patterns() {
        let mu = measure(&[0.0, 1.0, 3.0]);
        let patterns = enumerate_patterns_1d(&mu, 2.0).unwrap();
        // Q holds only atom 1 while 2Q holds all three.
        assert!(has_pattern(&patterns, (1, 1), (0, 2)));
        // Q and 2Q both hold exactly atoms {0, 1}.
        assert!(has_pattern(&patterns, (0, 1), (0, 1)));
        // Impossible: Q holds {0, 2} is not contiguous, so never produced;
        // Q holds all three while 2Q holds fewer is never produced.
        assert!(patterns.iter().all(|p| {
            p.outer.0 <= p.inner.0 && p.outer.1 >= p.inner.1
        }));
    }

    #[test]
    fn single_atom_has_one_pattern() {
        let mu = measure(&[5.0]);
        let patterns = enumerate_patterns_1d(&mu, 2.0).unwrap();
        assert_eq!(patterns.len(), 1);
        assert_eq!(patterns[0].inner, (0, 0));
        assert_eq!(patterns[0].outer, (0, 0));
    }

    #[test]
    fn pattern_soundness() {
        let mu = measure(&[0.0, 0.7, 1.1, 4.0, 10.0]);
        let order = sorted_atom_order(&mu);
        let patterns = enumerate_patterns_1d(&mu, 2.0).unwrap();
        assert!(!patterns.is_empty());
        for p in &patterns {
            let inner_mask = mu.atoms_in(&p.witness);
            let outer_mask = mu.atoms_in(&p.witness.dilate(2.0).unwrap());
            assert_eq!(inner_mask, super::range_mask(&order, p.inner.0, p.inner.1));
            assert_eq!(outer_mask, super::range_mask(&order, p.outer.0, p.outer.1));
        }
    }

    #[test]
    fn witness_example_from_three_atoms() {
        // The documented hand check: Q = [0.2, 2.2] holds only atom 1 and
        // 2Q = [-0.8, 3.2] holds all three. Our witness for that pattern
        // must reproduce the same masks.
        let mu = measure(&[0.0, 1.0, 3.0]);
        let patterns = enumerate_patterns_1d(&mu, 2.0).unwrap();
        let p = patterns
            .iter()
            .find(|p| p.inner == (1, 1) && p.outer == (0, 2))
            .unwrap();
        assert_eq!(mu.atoms_in(&p.witness), 0b010);
        assert_eq!(mu.atoms_in(&p.witness.dilate(2.0).unwrap()), 0b111);
    }

    #[test]
    fn exact_family_single_atom() {
        let mu = measure(&[5.0]);
        let family = build_family(&mu, &FamilySpec::Exact1d { k: 2.0 }).unwrap();
        assert_eq!(family.completeness, Completeness::Exact1d);
        assert_eq!(family.cubes.len(), 2);
        assert!(matches!(family.cubes[1], Cube::WholeSpace));
    }

    #[test]
    fn dyadic_counts() {
        let mu = measure(&[0.0, 1.0, 2.0, 3.0, -1.0, -2.0, -3.0, 3.9]);
        let root = Cube::bounded(pt(0.0), 8.0).unwrap();
        let cubes = dyadic_cubes(&root, 3).unwrap();
        assert_eq!(cubes.len(), 15);
        let family = build_family(&mu, &FamilySpec::Dyadic { root, depth: 3 }).unwrap();
        assert_eq!(family.completeness, Completeness::Heuristic);
        // Every kept cube has positive measure.
        assert!(family.cubes.iter().all(|c| mu.mass_of(c) > 0.0));
    }

    #[test]
    fn sampled_family_filters_and_is_deterministic() {
        let mu = measure(&[0.0, 7.0, 31.0]);
        let spec = FamilySpec::Sampled { count: 500, seed: 42 };
        let a = build_family(&mu, &spec).unwrap();
        let b = build_family(&mu, &spec).unwrap();
        assert_eq!(a.cubes, b.cubes);
        assert!(a.cubes.iter().all(|c| mu.mass_of(c) > 0.0));
        assert_eq!(a.cubes.len(), 501);
    }

    #[test]
    fn exact_family_rejected_for_d2() {
        let mu = MeasureSpace::new(
            2,
            1.5,
            vec![Atom {
                position: Point::new(vec![0.0, 0.0]).unwrap(),
                mass: 1.0,
            }],
        )
        .unwrap();
        assert!(build_family(&mu, &FamilySpec::Exact1d { k: 2.0 }).is_err());
    }

    #[test]
    fn whole_space_present_exactly_once() {
        let mu = measure(&[0.0, 1.0]);
        let spec = FamilySpec::Union(vec![
            FamilySpec::Exact1d { k: 2.0 },
            FamilySpec::CenteredBreakpoints,
        ]);
        let family = build_family(&mu, &spec).unwrap();
        assert_eq!(family.completeness, Completeness::Exact1d);
        let n_whole = family
            .cubes
            .iter()
            .filter(|c| matches!(c, Cube::WholeSpace))
            .count();
        assert_eq!(n_whole, 1);
    }
}
