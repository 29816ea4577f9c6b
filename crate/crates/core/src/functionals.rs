//! The norms and means: `m_Q`, Morrey and doubling-type Morrey norms,
//! Campanato norms, the RBMO norm, the sharp maximal operator, their
//! vector-valued `l^r` variants and the net limit of means over doubling
//! cubes.
//!
//! Every supremum is a maximum over an explicit [`CubeFamily`], passed via
//! an [`EvalContext`] that caches the per-cube data (atom mask, measure,
//! `Q*`, doubling flag) and the doubling pair set with its `K_{Q,R}`
//! coefficients. Exactness is a property of the family, not the
//! functional.

use crate::coefficients::delta_with_profile;
use crate::doubling::{default_beta, doubling_chain, is_doubling, q_star};
use crate::exec;
use crate::families::CubeFamily;
use crate::geometry::{Cube, Point};
use crate::measure::MeasureSpace;
use crate::{Error, Result};

/// One real value per atom, aligned by atom index.
#[derive(Clone, Debug)]
pub struct SampledFunction {
    pub values: Vec<f64>,
}

impl SampledFunction {
    pub fn new(mu: &MeasureSpace, values: Vec<f64>) -> Result<Self> {
        if values.len() != mu.atoms().len() {
            return Err(Error::InvalidParameter(format!(
                "expected {} function values, got {}",
                mu.atoms().len(),
                values.len()
            )));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter(
                "function values must be finite".into(),
            ));
        }
        Ok(SampledFunction { values })
    }

    pub fn constant(mu: &MeasureSpace, c: f64) -> Result<Self> {
        SampledFunction::new(mu, vec![c; mu.atoms().len()])
    }

    pub fn abs(&self) -> SampledFunction {
        SampledFunction {
            values: self.values.iter().map(|v| v.abs()).collect(),
        }
    }

    pub fn scale(&self, c: f64) -> SampledFunction {
        SampledFunction {
            values: self.values.iter().map(|v| c * v).collect(),
        }
    }

    pub fn add(&self, other: &SampledFunction) -> SampledFunction {
        SampledFunction {
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

/// Finitely many components over the same measure.
#[derive(Clone, Debug)]
pub struct VectorFunction {
    pub components: Vec<SampledFunction>,
}

impl VectorFunction {
    pub fn new(components: Vec<SampledFunction>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::InvalidParameter(
                "at least one component required".into(),
            ));
        }
        let len = components[0].values.len();
        if components.iter().any(|c| c.values.len() != len) {
            return Err(Error::InvalidParameter(
                "components must share the atom alignment".into(),
            ));
        }
        Ok(VectorFunction { components })
    }
}

/// Exponent bundle `(p, q, k, beta, r)` with `1 <= q <= p <= inf`,
/// `k > 1`, `beta > 1`, `r` in `(1, inf)`.
#[derive(Clone, Copy, Debug, serde::Serialize, serde::Deserialize)]
pub struct NormParams {
    pub p: f64,
    pub q: f64,
    pub k: f64,
    pub beta: f64,
    pub r: f64,
}

impl NormParams {
    pub fn new(p: f64, q: f64, k: f64, beta: f64, r: f64) -> Result<Self> {
        if !(q >= 1.0 && q.is_finite()) {
            return Err(Error::InvalidParameter(format!("q must be >= 1, got {q}")));
        }
        if !(p >= q) {
            return Err(Error::InvalidParameter(format!(
                "p must satisfy q <= p, got p={p} q={q}"
            )));
        }
        if !(k > 1.0 && k.is_finite()) {
            return Err(Error::InvalidParameter(format!("k must exceed 1, got {k}")));
        }
        if !(beta > 1.0 && beta.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "beta must exceed 1, got {beta}"
            )));
        }
        if !(r > 1.0 && r.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "r must lie in (1, inf), got {r}"
            )));
        }
        Ok(NormParams { p, q, k, beta, r })
    }

    /// `1/p`, reading `1/inf` as zero.
    pub fn inv_p(&self) -> f64 {
        if self.p.is_infinite() {
            0.0
        } else {
            1.0 / self.p
        }
    }

    /// The weight exponent `1/p - 1/q` (nonpositive).
    pub fn weight_exponent(&self) -> f64 {
        self.inv_p() - 1.0 / self.q
    }
}

impl Default for NormParams {
    fn default() -> Self {
        NormParams { p: 2.0, q: 1.0, k: 2.0, beta: 5.0, r: 2.0 }
    }
}

/// Cached per-cube data for norm evaluation.
#[derive(Clone, Debug)]
pub struct CubeData {
    pub cube: Cube,
    pub mask: u32,
    pub mass: f64,
    /// `(2, 2^{d+1})`-doubling.
    pub doubling: bool,
    pub q_star_mask: u32,
}

/// A doubling pair `Q subset R` with its coefficient `K_{Q,R}`.
#[derive(Clone, Debug)]
pub struct PairData {
    pub inner: usize,
    pub outer: usize,
    pub k_coeff: f64,
}

/// Doubling cubes beyond this count are thinned to per-mask
/// representatives before pair construction.
const PAIR_SOURCE_CAP: usize = 160;

/// Precomputed evaluation context over a family.
pub struct EvalContext<'a> {
    pub mu: &'a MeasureSpace,
    pub cubes: Vec<CubeData>,
    pub pairs: Vec<PairData>,
}

impl<'a> EvalContext<'a> {
    pub fn new(mu: &'a MeasureSpace, family: &CubeFamily) -> Result<Self> {
        if family.cubes.is_empty() {
            return Err(Error::EmptyFamily);
        }
        let beta = default_beta(mu.dim());
        let cubes: Vec<CubeData> = exec::map_range(family.cubes.len(), |i| {
            let cube = family.cubes[i].clone();
            let mask = mu.atoms_in(&cube);
            let mass = mu.mask_mass(mask);
            let doubling = mass > 0.0 && is_doubling(mu, &cube, 2.0, beta).unwrap_or(false);
            let q_star_mask = if mass > 0.0 {
                q_star(mu, &cube).map(|qs| mu.atoms_in(&qs)).unwrap_or(mask)
            } else {
                mask
            };
            CubeData { cube, mask, mass, doubling, q_star_mask }
        });

        let doubling_idx: Vec<usize> = (0..cubes.len()).filter(|&i| cubes[i].doubling).collect();
        let sources = if doubling_idx.len() <= PAIR_SOURCE_CAP {
            doubling_idx
        } else {
            thin_by_mask(&cubes, &doubling_idx, &family.pinned)
        };

        let pairs: Vec<PairData> = {
            let mut candidate: Vec<(usize, usize)> = Vec::new();
            for &a in &sources {
                if !cubes[a].cube.is_bounded() {
                    continue;
                }
                for &b in &sources {
                    if a != b && cubes[a].cube.is_subset(&cubes[b].cube) {
                        candidate.push((a, b));
                    }
                }
            }
            let mut profile_for: std::collections::HashMap<usize, crate::measure::StepProfile> =
                std::collections::HashMap::new();
            for &(a, _) in &candidate {
                profile_for
                    .entry(a)
                    .or_insert_with(|| mu.radial_profile(cubes[a].cube.center().unwrap()));
            }
            let computed = exec::map_range(candidate.len(), |idx| {
                let (a, b) = candidate[idx];
                let d = delta_with_profile(mu, &profile_for[&a], &cubes[a].cube, &cubes[b].cube)?;
                Ok::<PairData, Error>(PairData { inner: a, outer: b, k_coeff: 1.0 + d })
            });
            computed.into_iter().collect::<Result<Vec<_>>>()?
        };

        Ok(EvalContext { mu, cubes, pairs })
    }
}

/// Keep at most four doubling cubes per atom mask (first, last and two
/// interior picks in family order) plus everything pinned.
fn thin_by_mask(cubes: &[CubeData], doubling_idx: &[usize], pinned: &[usize]) -> Vec<usize> {
    let mut by_mask: std::collections::BTreeMap<u32, Vec<usize>> = std::collections::BTreeMap::new();
    for &i in doubling_idx {
        by_mask.entry(cubes[i].mask).or_default().push(i);
    }
    let mut keep: Vec<usize> = Vec::new();
    for group in by_mask.values() {
        let n = group.len();
        if n <= 4 {
            keep.extend(group);
        } else {
            keep.push(group[0]);
            keep.push(group[n / 3]);
            keep.push(group[2 * n / 3]);
            keep.push(group[n - 1]);
        }
    }
    for &i in pinned {
        if cubes[i].doubling {
            keep.push(i);
        }
    }
    keep.sort_unstable();
    keep.dedup();
    keep
}

fn mask_sum<F>(mu: &MeasureSpace, mask: u32, g: F) -> f64
where
    F: Fn(usize) -> f64,
{
    let mut sum = 0.0;
    let mut m = mask;
    while m != 0 {
        let i = m.trailing_zeros() as usize;
        sum += g(i) * mu.atoms()[i].mass;
        m &= m - 1;
    }
    sum
}

fn mask_mean(mu: &MeasureSpace, mask: u32, f: &SampledFunction) -> f64 {
    mask_sum(mu, mask, |i| f.values[i]) / mu.mask_mass(mask)
}

/// `m_Q(f)`: the mass-weighted average of `f` over the atoms in `Q`.
pub fn mean(mu: &MeasureSpace, f: &SampledFunction, q: &Cube) -> Result<f64> {
    let mask = mu.atoms_in(q);
    if mu.mask_mass(mask) <= 0.0 {
        return Err(Error::ZeroMeasure);
    }
    Ok(mask_mean(mu, mask, f))
}

/// `l^r` norm of a finite vector; single nonzero entries pass through
/// without rounding.
pub fn lr_norm(values: &[f64], r: f64) -> f64 {
    let mut nonzero = values.iter().filter(|v| **v != 0.0);
    let first = match nonzero.next() {
        None => return 0.0,
        Some(v) => v.abs(),
    };
    if nonzero.next().is_none() {
        return first;
    }
    values
        .iter()
        .map(|v| v.abs().powf(r))
        .sum::<f64>()
        .powf(1.0 / r)
}

/// Pointwise `l^r` norm across components, one value per atom.
pub fn lr_values(f: &VectorFunction, r: f64) -> SampledFunction {
    let n = f.components[0].values.len();
    let values = (0..n)
        .map(|i| {
            let at: Vec<f64> = f.components.iter().map(|c| c.values[i]).collect();
            lr_norm(&at, r)
        })
        .collect();
    SampledFunction { values }
}

fn check_finite(value: f64, what: &str) -> Result<f64> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::InvalidParameter(format!(
            "{what} evaluated to a non-finite value"
        )))
    }
}

fn require_finite_p(params: &NormParams) -> Result<()> {
    if params.p.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(
            "this norm requires p < inf".into(),
        ))
    }
}

fn morrey_cube_value(
    ctx: &EvalContext,
    data: &CubeData,
    f: &SampledFunction,
    params: &NormParams,
) -> f64 {
    if data.mass <= 0.0 {
        return 0.0;
    }
    let dilated_mass = ctx.mu.mass_of(&data.cube.dilate(params.k).unwrap());
    let weight = dilated_mass.powf(params.weight_exponent());
    let integral = mask_sum(ctx.mu, data.mask, |i| f.values[i].abs().powf(params.q));
    weight * integral.powf(1.0 / params.q)
}

/// The Morrey norm: max over the family of
/// `mu(kQ)^{1/p - 1/q} (int_Q |f|^q dmu)^{1/q}`.
pub fn morrey_norm_ctx(
    ctx: &EvalContext,
    f: &SampledFunction,
    params: &NormParams,
) -> Result<f64> {
    require_finite_p(params)?;
    let (value, _) = exec::max_indexed(&ctx.cubes, |_, data| {
        morrey_cube_value(ctx, data, f, params)
    });
    check_finite(value, "Morrey norm")
}

pub fn morrey_norm(
    mu: &MeasureSpace,
    f: &SampledFunction,
    params: &NormParams,
    family: &CubeFamily,
) -> Result<f64> {
    morrey_norm_ctx(&EvalContext::new(mu, family)?, f, params)
}

/// Morrey norm together with the index of a maximizing family cube.
pub fn morrey_argmax_ctx(
    ctx: &EvalContext,
    f: &SampledFunction,
    params: &NormParams,
) -> Result<(f64, Option<usize>)> {
    require_finite_p(params)?;
    let (value, arg) = exec::max_indexed(&ctx.cubes, |_, data| {
        morrey_cube_value(ctx, data, f, params)
    });
    Ok((check_finite(value, "Morrey norm")?, arg))
}

/// Result of the doubling-restricted Morrey norm; `degenerate` flags a
/// family without any `(k, beta)`-doubling member.
#[derive(Clone, Copy, Debug)]
pub struct DoublingMorrey {
    pub value: f64,
    pub degenerate: bool,
    /// Index of a maximizing doubling cube, if any.
    pub argmax: Option<usize>,
}

/// The doubling-type Morrey norm: the same maximum restricted to
/// `(k, beta)`-doubling members, weighted by `mu(Q)` instead of `mu(kQ)`.
pub fn morrey_norm_doubling_ctx(
    ctx: &EvalContext,
    f: &SampledFunction,
    params: &NormParams,
) -> Result<DoublingMorrey> {
    require_finite_p(params)?;
    let e = params.weight_exponent();
    let flags: Vec<bool> = ctx
        .cubes
        .iter()
        .map(|d| d.mass > 0.0 && is_doubling(ctx.mu, &d.cube, params.k, params.beta).unwrap_or(false))
        .collect();
    if !flags.iter().any(|&b| b) {
        return Ok(DoublingMorrey { value: 0.0, degenerate: true, argmax: None });
    }
    let (value, argmax) = exec::max_indexed(&ctx.cubes, |i, data| {
        if !flags[i] {
            return f64::NEG_INFINITY;
        }
        let weight = data.mass.powf(e);
        let integral = mask_sum(ctx.mu, data.mask, |i| f.values[i].abs().powf(params.q));
        weight * integral.powf(1.0 / params.q)
    });
    Ok(DoublingMorrey {
        value: check_finite(value.max(0.0), "doubling Morrey norm")?,
        degenerate: false,
        argmax,
    })
}

pub fn morrey_norm_doubling(
    mu: &MeasureSpace,
    f: &SampledFunction,
    params: &NormParams,
    family: &CubeFamily,
) -> Result<DoublingMorrey> {
    morrey_norm_doubling_ctx(&EvalContext::new(mu, family)?, f, params)
}

/// The two summands of a Campanato norm with their argmax indices (cube
/// index for the oscillation term, pair index for the pair term).
#[derive(Clone, Copy, Debug)]
pub struct CampanatoParts {
    pub oscillation: f64,
    pub oscillation_argmax: Option<usize>,
    pub pair: f64,
    pub pair_argmax: Option<usize>,
}

impl CampanatoParts {
    pub fn total(&self) -> f64 {
        self.oscillation + self.pair
    }
}

fn oscillation_cube_value(
    ctx: &EvalContext,
    data: &CubeData,
    f: &SampledFunction,
    params: &NormParams,
) -> f64 {
    if data.mass <= 0.0 {
        return 0.0;
    }
    let m_star = mask_mean(ctx.mu, data.q_star_mask, f);
    let integral = mask_sum(ctx.mu, data.mask, |i| {
        (f.values[i] - m_star).abs().powf(params.q)
    });
    let dilated_mass = ctx.mu.mass_of(&data.cube.dilate(params.k).unwrap());
    dilated_mass.powf(params.weight_exponent()) * integral.powf(1.0 / params.q)
}

/// Campanato norm split into its oscillation and pair terms.
pub fn campanato_parts_ctx(
    ctx: &EvalContext,
    f: &SampledFunction,
    params: &NormParams,
) -> Result<CampanatoParts> {
    let (osc, osc_arg) = exec::max_indexed(&ctx.cubes, |_, data| {
        oscillation_cube_value(ctx, data, f, params)
    });
    let inv_p = params.inv_p();
    let (pair, pair_arg) = exec::max_indexed(&ctx.pairs, |_, p| {
        let dq = &ctx.cubes[p.inner];
        let dr = &ctx.cubes[p.outer];
        let diff = (mask_mean(ctx.mu, dq.mask, f) - mask_mean(ctx.mu, dr.mask, f)).abs();
        dq.mass.powf(inv_p) * diff / p.k_coeff
    });
    check_finite(osc, "Campanato oscillation term")?;
    check_finite(pair, "Campanato pair term")?;
    Ok(CampanatoParts {
        oscillation: osc.max(0.0),
        oscillation_argmax: osc_arg,
        pair: pair.max(0.0),
        pair_argmax: pair_arg,
    })
}

/// The Campanato norm: oscillation term plus pair term.
pub fn campanato_norm_ctx(
    ctx: &EvalContext,
    f: &SampledFunction,
    params: &NormParams,
) -> Result<f64> {
    Ok(campanato_parts_ctx(ctx, f, params)?.total())
}

pub fn campanato_norm(
    mu: &MeasureSpace,
    f: &SampledFunction,
    params: &NormParams,
    family: &CubeFamily,
) -> Result<f64> {
    campanato_norm_ctx(&EvalContext::new(mu, family)?, f, params)
}

fn rbmo_params() -> NormParams {
    NormParams { p: f64::INFINITY, q: 1.0, k: 1.5, beta: 5.0, r: 2.0 }
}

/// The RBMO norm: the Campanato norm at `p = inf`, `q = 1`, `k = 3/2`.
pub fn rbmo_norm_ctx(ctx: &EvalContext, f: &SampledFunction) -> Result<f64> {
    campanato_norm_ctx(ctx, f, &rbmo_params())
}

pub fn rbmo_norm(mu: &MeasureSpace, f: &SampledFunction, family: &CubeFamily) -> Result<f64> {
    rbmo_norm_ctx(&EvalContext::new(mu, family)?, f)
}

fn atom_index(mu: &MeasureSpace, x: &Point) -> Result<usize> {
    mu.atoms()
        .iter()
        .position(|a| a.position == *x)
        .ok_or(Error::NotAnAtom)
}

/// The sharp maximal operator at atom `i`: the 3/2-weighted oscillation
/// sup over cubes containing the atom, plus the pair sup over doubling
/// pairs whose inner cube contains it.
pub fn sharp_maximal_at(ctx: &EvalContext, f: &SampledFunction, i: usize) -> f64 {
    let bit = 1u32 << i;
    let (osc, _) = exec::max_indexed(&ctx.cubes, |_, data| {
        if data.mask & bit == 0 || data.mass <= 0.0 {
            return f64::NEG_INFINITY;
        }
        let m_star = mask_mean(ctx.mu, data.q_star_mask, f);
        let integral = mask_sum(ctx.mu, data.mask, |j| (f.values[j] - m_star).abs());
        integral / ctx.mu.mass_of(&data.cube.dilate(1.5).unwrap())
    });
    let (pair, _) = exec::max_indexed(&ctx.pairs, |_, p| {
        if ctx.cubes[p.inner].mask & bit == 0 {
            return f64::NEG_INFINITY;
        }
        let diff = (mask_mean(ctx.mu, ctx.cubes[p.inner].mask, f)
            - mask_mean(ctx.mu, ctx.cubes[p.outer].mask, f))
        .abs();
        diff / p.k_coeff
    });
    osc.max(0.0) + pair.max(0.0)
}

pub fn sharp_maximal(
    mu: &MeasureSpace,
    f: &SampledFunction,
    x: &Point,
    family: &CubeFamily,
) -> Result<f64> {
    let i = atom_index(mu, x)?;
    Ok(sharp_maximal_at(&EvalContext::new(mu, family)?, f, i))
}

/// `M# f` at every atom.
pub fn sharp_maximal_all(ctx: &EvalContext, f: &SampledFunction) -> Vec<f64> {
    (0..ctx.mu.atoms().len())
        .map(|i| sharp_maximal_at(ctx, f, i))
        .collect()
}

/// The net limit `M(f)` of means over doubling cubes, computed by
/// following an ascending doubling chain to the whole space. For a finite
/// atomic measure this is the global mass-weighted mean.
pub fn net_limit(mu: &MeasureSpace, f: &SampledFunction) -> Result<f64> {
    let mut gap = f64::INFINITY;
    for (i, a) in mu.atoms().iter().enumerate() {
        for b in &mu.atoms()[i + 1..] {
            gap = gap.min(a.position.chebyshev(&b.position));
        }
    }
    let side = if gap.is_finite() { gap / 4.0 } else { 1.0 };
    let seed = Cube::bounded(mu.atoms()[0].position.clone(), side)?;
    let chain = doubling_chain(mu, &seed)?;
    mean(mu, f, chain.cubes.last().unwrap())
}

/// Vector Morrey norm: the scalar norm of the pointwise `l^r` magnitude.
pub fn morrey_norm_lr_ctx(
    ctx: &EvalContext,
    f: &VectorFunction,
    params: &NormParams,
) -> Result<f64> {
    morrey_norm_ctx(ctx, &lr_values(f, params.r), params)
}

pub fn morrey_norm_lr(
    mu: &MeasureSpace,
    f: &VectorFunction,
    params: &NormParams,
    family: &CubeFamily,
) -> Result<f64> {
    morrey_norm_lr_ctx(&EvalContext::new(mu, family)?, f, params)
}

/// Vector Campanato norm split into its two terms: the oscillation term
/// takes the pointwise `l^r` magnitude of `f_j - m_{Q*}(f_j)`, the pair
/// term the `l^r` norm of the component-wise mean differences.
pub fn campanato_parts_lr_ctx(
    ctx: &EvalContext,
    f: &VectorFunction,
    params: &NormParams,
) -> Result<CampanatoParts> {
    let ncomp = f.components.len();
    let (osc, osc_arg) = exec::max_indexed(&ctx.cubes, |_, data| {
        if data.mass <= 0.0 {
            return 0.0;
        }
        let m_star: Vec<f64> = (0..ncomp)
            .map(|j| mask_mean(ctx.mu, data.q_star_mask, &f.components[j]))
            .collect();
        let integral = mask_sum(ctx.mu, data.mask, |i| {
            let at: Vec<f64> = (0..ncomp)
                .map(|j| f.components[j].values[i] - m_star[j])
                .collect();
            lr_norm(&at, params.r).powf(params.q)
        });
        let dilated_mass = ctx.mu.mass_of(&data.cube.dilate(params.k).unwrap());
        dilated_mass.powf(params.weight_exponent()) * integral.powf(1.0 / params.q)
    });
    let inv_p = params.inv_p();
    let (pair, pair_arg) = exec::max_indexed(&ctx.pairs, |_, p| {
        let dq = &ctx.cubes[p.inner];
        let dr = &ctx.cubes[p.outer];
        let diffs: Vec<f64> = (0..ncomp)
            .map(|j| {
                mask_mean(ctx.mu, dq.mask, &f.components[j])
                    - mask_mean(ctx.mu, dr.mask, &f.components[j])
            })
            .collect();
        dq.mass.powf(inv_p) * lr_norm(&diffs, params.r) / p.k_coeff
    });
    check_finite(osc, "vector Campanato oscillation term")?;
    check_finite(pair, "vector Campanato pair term")?;
    Ok(CampanatoParts {
        oscillation: osc.max(0.0),
        oscillation_argmax: osc_arg,
        pair: pair.max(0.0),
        pair_argmax: pair_arg,
    })
}

pub fn campanato_norm_lr_ctx(
    ctx: &EvalContext,
    f: &VectorFunction,
    params: &NormParams,
) -> Result<f64> {
    Ok(campanato_parts_lr_ctx(ctx, f, params)?.total())
}

pub fn campanato_norm_lr(
    mu: &MeasureSpace,
    f: &VectorFunction,
    params: &NormParams,
    family: &CubeFamily,
) -> Result<f64> {
    campanato_norm_lr_ctx(&EvalContext::new(mu, family)?, f, params)
}

/// `||M# f_j(x) : l^r||` at every atom: the scalar sharp maximal operator
/// applied per component, assembled into an `l^r` norm.
pub fn sharp_maximal_lr_all(ctx: &EvalContext, f: &VectorFunction, r: f64) -> Vec<f64> {
    let per_component: Vec<Vec<f64>> = f
        .components
        .iter()
        .map(|c| sharp_maximal_all(ctx, c))
        .collect();
    (0..ctx.mu.atoms().len())
        .map(|i| {
            let at: Vec<f64> = per_component.iter().map(|v| v[i]).collect();
            lr_norm(&at, r)
        })
        .collect()
}

/// `sup_x ||M# f_j(x) : l^r||` over the atoms.
pub fn sharp_maximal_lr_sup(ctx: &EvalContext, f: &VectorFunction, r: f64) -> f64 {
    sharp_maximal_lr_all(ctx, f, r)
        .into_iter()
        .fold(0.0, f64::max)
}
