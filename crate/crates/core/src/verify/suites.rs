//! The verification suites: one function per verified statement, each
//! mapping a corpus to a report of exact checks, observed ratios and
//! baseline comparisons.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coefficients::{delta, geometric_sum, k_coefficient};
use crate::doubling::{besicovitch_select, doubling_chain, largest_small_doubling, q_star};
use crate::exec;
use crate::families::{build_family, Completeness, CubeFamily};
use crate::functionals::{
    campanato_norm_ctx, campanato_norm_lr_ctx, campanato_parts_lr_ctx, mean, morrey_norm_ctx,
    morrey_norm_doubling_ctx, morrey_norm_lr_ctx, net_limit, rbmo_norm_ctx, sharp_maximal_lr_sup,
    EvalContext, NormParams, SampledFunction, VectorFunction,
};
use crate::geometry::{Cube, Point};
use crate::instance::InstanceFile;
use crate::measure::MeasureSpace;
use crate::verify::baseline::BaselineStore;
use crate::verify::corpus::Corpus;
use crate::verify::report::{CheckRecord, VerificationReport};
use crate::{Error, Result};

pub fn suite_names() -> &'static [&'static str] {
    &[
        "theorem1",
        "theorem2",
        "theorem3",
        "lemma1",
        "lemma2",
        "lemma4",
        "prop3",
        "claim1",
        "k-equivalence",
        "campanato-b2",
    ]
}

/// Run one suite by name; `all` concatenates every suite.
pub fn run_suite(
    name: &str,
    corpus: &Corpus,
    baselines: &mut BaselineStore,
) -> Result<VerificationReport> {
    match name {
        "theorem1" => check_theorem1(corpus, baselines),
        "theorem2" => check_theorem2(corpus, baselines),
        "theorem3" => check_theorem3(corpus, baselines),
        "lemma1" => check_lemma1(corpus, baselines),
        "lemma2" => check_lemma2(corpus, baselines),
        "lemma4" => check_lemma4(corpus, baselines),
        "prop3" => check_prop3(corpus, baselines),
        "claim1" => check_claim1(corpus, baselines),
        "k-equivalence" => check_k_equivalence(corpus, baselines),
        "campanato-b2" => check_campanato_k_equivalence(corpus, baselines),
        "all" => {
            let mut merged = VerificationReport::new("all", corpus.seed, corpus.instances.len());
            for suite in suite_names() {
                let report = run_suite(suite, corpus, baselines)?;
                merged.records.extend(report.records);
                merged.warnings.extend(report.warnings);
                merged.baselines.extend(report.baselines);
            }
            Ok(merged)
        }
        other => Err(Error::InvalidParameter(format!("unknown suite {other:?}"))),
    }
}

struct Env {
    mu: MeasureSpace,
    family: CubeFamily,
    params: NormParams,
    heuristic: bool,
}

fn build_env(inst: &InstanceFile) -> Result<Env> {
    let mu = inst.measure()?;
    let family = build_family(&mu, &inst.family)?;
    let heuristic = family.completeness == Completeness::Heuristic;
    Ok(Env { mu, family, params: inst.params.norm_params()?, heuristic })
}

/// Per-instance output: records, named observed ratios to fold into
/// baselines, and warnings.
type InstanceOutput = (Vec<CheckRecord>, Vec<(String, f64)>, Vec<String>);

/// In lower-bound (heuristic-family) mode, failing exact checks become
/// warnings instead of failures.
fn soften(records: &mut [CheckRecord], heuristic: bool, warnings: &mut Vec<String>) {
    if !heuristic {
        return;
    }
    for r in records.iter_mut() {
        if !r.pass && !r.observed_only {
            warnings.push(format!(
                "{}: not asserted on a heuristic family (lhs={}, rhs={}, constant={})",
                r.id, r.lhs, r.rhs, r.constant
            ));
            r.pass = true;
            r.observed_only = true;
        }
    }
}

fn run_per_instance<F>(suite: &str, corpus: &Corpus, f: F) -> Result<VerificationReport>
where
    F: Fn(usize, &InstanceFile) -> Result<InstanceOutput> + Sync,
{
    let outputs: Vec<Result<InstanceOutput>> =
        exec::map_range(corpus.instances.len(), |i| f(i, &corpus.instances[i]));
    let mut report = VerificationReport::new(suite, corpus.seed, corpus.instances.len());
    let mut observed: std::collections::BTreeMap<String, f64> = std::collections::BTreeMap::new();
    for out in outputs {
        let (records, ratios, warnings) = out?;
        report.records.extend(records);
        report.warnings.extend(warnings);
        for (name, value) in ratios {
            let slot = observed.entry(name).or_insert(f64::NEG_INFINITY);
            *slot = slot.max(value);
        }
    }
    report.observed_for_baselines = observed;
    Ok(report)
}

/// Fold the observed per-suite maxima into the baseline store. The
/// observed values are corpus statistics, so the store keys carry the
/// corpus seed: a run over a different corpus records fresh entries
/// instead of reporting spurious regressions.
fn apply_baselines(report: &mut VerificationReport, baselines: &mut BaselineStore) {
    let observed = std::mem::take(&mut report.observed_for_baselines);
    for (name, value) in observed {
        if !value.is_finite() {
            continue;
        }
        let key = format!("{name}@{}", report.seed);
        let record = baselines.check(&key, value);
        report.baselines.insert(name.clone(), baselines.values[&key]);
        report.records.push(record);
    }
}

fn instance_rng(corpus: &Corpus, index: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(
        corpus
            .seed
            .wrapping_mul(0x9E37_79B9_7F4A_7C15)
            .wrapping_add(index as u64),
    )
}

fn min_gap(mu: &MeasureSpace) -> f64 {
    let mut gap = f64::INFINITY;
    for (i, a) in mu.atoms().iter().enumerate() {
        for b in &mu.atoms()[i + 1..] {
            gap = gap.min(a.position.chebyshev(&b.position));
        }
    }
    if gap.is_finite() {
        gap
    } else {
        1.0
    }
}

fn span(mu: &MeasureSpace) -> f64 {
    let mut lo = vec![f64::INFINITY; mu.dim()];
    let mut hi = vec![f64::NEG_INFINITY; mu.dim()];
    for a in mu.atoms() {
        for (axis, &c) in a.position.coords.iter().enumerate() {
            lo[axis] = lo[axis].min(c);
            hi[axis] = hi[axis].max(c);
        }
    }
    lo.iter()
        .zip(&hi)
        .map(|(a, b)| b - a)
        .fold(0.0f64, f64::max)
        .max(1.0)
}

fn atom_centered_cube(mu: &MeasureSpace, rng: &mut ChaCha8Rng) -> Cube {
    let idx = rng.gen_range(0..mu.atoms().len());
    let lo = (min_gap(mu) / 4.0).ln();
    let hi = (4.0 * span(mu)).ln();
    let side = rng.gen_range(lo..=hi).exp();
    Cube::Bounded {
        center: mu.atoms()[idx].position.clone(),
        side,
    }
}

/// Besicovitch replication of the covering argument: atoms of `Q` grouped
/// by the level of their largest small doubling cube; per level, greedy
/// selection must cover the centers, overlap at most `4^d` pointwise, and
/// contain at most `8^d k^{jd}` cubes.
pub fn covering_replication(
    mu: &MeasureSpace,
    q: &Cube,
    k: f64,
    beta: f64,
    prefix: &str,
) -> Result<Vec<CheckRecord>> {
    let d = mu.dim() as i32;
    let side = q
        .side()
        .ok_or_else(|| Error::InvalidParameter("replication requires a bounded cube".into()))?;
    let mut by_level: std::collections::BTreeMap<i32, Vec<Point>> = std::collections::BTreeMap::new();
    for atom in mu.atoms() {
        if !q.contains(&atom.position)? {
            continue;
        }
        let small = largest_small_doubling(mu, &atom.position, q, k, beta)?;
        let j = (side / small.side().unwrap()).ln() / k.ln();
        by_level
            .entry(j.round() as i32)
            .or_default()
            .push(atom.position.clone());
    }
    let mut records = Vec::new();
    let mut worst_overlap = 0.0f64;
    let mut worst_count_ratio = 0.0f64;
    let mut covered = true;
    for (&j, centers) in &by_level {
        let l = side * k.powi(-j);
        let selected = besicovitch_select(centers, l)?;
        let cubes: Vec<Cube> = selected
            .iter()
            .map(|&s| Cube::Bounded { center: centers[s].clone(), side: l })
            .collect();
        for c in centers {
            let mut hit = false;
            for cube in &cubes {
                if cube.contains(c)? {
                    hit = true;
                    break;
                }
            }
            covered &= hit;
        }
        for atom in mu.atoms() {
            let mut overlap = 0usize;
            for cube in &cubes {
                if cube.contains(&atom.position)? {
                    overlap += 1;
                }
            }
            worst_overlap = worst_overlap.max(overlap as f64);
        }
        let bound = 8f64.powi(d) * k.powf(j as f64 * d as f64);
        worst_count_ratio = worst_count_ratio.max(selected.len() as f64 / bound);
    }
    records.push(CheckRecord::assert_that(format!("{prefix}/coverage"), covered));
    records.push(CheckRecord::exact(
        format!("{prefix}/overlap"),
        worst_overlap,
        4f64.powi(d),
        1.0,
    ));
    records.push(CheckRecord::exact(
        format!("{prefix}/cardinality"),
        worst_count_ratio,
        1.0,
        1.0,
    ));
    Ok(records)
}

/// Equivalence of the plain and doubling-restricted Morrey norms, with
/// the proof's explicit constant on the right-hand side, plus the
/// covering replication.
pub fn check_theorem1(corpus: &Corpus, baselines: &mut BaselineStore) -> Result<VerificationReport> {
    let mut report = run_per_instance("theorem1", corpus, |i, inst| {
        let env = build_env(inst)?;
        let params = env.params;
        let d = env.mu.dim() as f64;
        let mut records = Vec::new();
        let mut warnings = Vec::new();

        let threshold = params.k.powf(d * params.p * params.q / (params.p - params.q));
        let ok = params.p > params.q && params.p.is_finite() && params.beta > threshold;
        if !ok {
            warnings.push(format!(
                "theorem1/{i}: precondition beta > k^(dpq/(p-q)) fails (beta {} vs threshold {threshold}), instance skipped",
                params.beta
            ));
            records.push(
                CheckRecord::observed(format!("theorem1/{i}/precondition"), params.beta, threshold)
                    .with_detail("precondition violated; equivalence not asserted".to_string()),
            );
            return Ok((records, Vec::new(), warnings));
        }
        records.push(
            CheckRecord::assert_that(format!("theorem1/{i}/precondition"), ok).with_detail(
                format!("beta {} vs threshold {threshold}", params.beta),
            ),
        );

        let ctx = EvalContext::new(&env.mu, &env.family)?;
        let f = inst.scalar()?;
        let m = morrey_norm_ctx(&ctx, &f, &params)?;
        let dbl = morrey_norm_doubling_ctx(&ctx, &f, &params)?;
        if dbl.degenerate {
            warnings.push(format!(
                "theorem1/{i}: no (k, beta)-doubling cube in the family, equivalence skipped"
            ));
            return Ok((records, Vec::new(), warnings));
        }

        let left_constant = params.beta.powf(1.0 / params.q - params.inv_p());
        records.push(CheckRecord::exact(
            format!("theorem1/{i}/left"),
            dbl.value,
            m,
            left_constant,
        ));

        let t = params.k.powf(d) * params.beta.powf(params.inv_p() - 1.0 / params.q);
        let c = 8f64.powf(d) * t / (1.0 - t);
        records.push(
            CheckRecord::exact(format!("theorem1/{i}/right"), m, dbl.value, c)
                .with_detail(format!("t = {t}, C = {c}")),
        );

        // Covering replication on two deterministic cubes: the heaviest
        // bounded family cube and the first holding at least two atoms.
        let mut picks: Vec<usize> = Vec::new();
        let heaviest = ctx
            .cubes
            .iter()
            .enumerate()
            .filter(|(_, c)| c.cube.is_bounded())
            .max_by(|a, b| a.1.mass.total_cmp(&b.1.mass).then(b.0.cmp(&a.0)))
            .map(|(idx, _)| idx);
        if let Some(idx) = heaviest {
            picks.push(idx);
        }
        if let Some(idx) = ctx
            .cubes
            .iter()
            .position(|c| c.cube.is_bounded() && c.mask.count_ones() >= 2)
        {
            if !picks.contains(&idx) {
                picks.push(idx);
            }
        }
        for (which, idx) in picks.iter().enumerate() {
            records.extend(covering_replication(
                &env.mu,
                &ctx.cubes[*idx].cube,
                params.k,
                params.beta,
                &format!("theorem1/{i}/besicovitch{which}"),
            )?);
        }

        soften(&mut records, env.heuristic, &mut warnings);
        let ratios = if dbl.value > 0.0 {
            vec![("theorem1/observed_c".to_string(), m / dbl.value)]
        } else {
            Vec::new()
        };
        Ok((records, ratios, warnings))
    })?;
    apply_baselines(&mut report, baselines);
    Ok(report)
}

/// Monotonicity of the Morrey norm in the dilation parameter, with the
/// two-sided constant recorded.
pub fn check_k_equivalence(
    corpus: &Corpus,
    baselines: &mut BaselineStore,
) -> Result<VerificationReport> {
    let (k1, k2) = (1.5, 2.0);
    let mut report = run_per_instance("k-equivalence", corpus, |i, inst| {
        let env = build_env(inst)?;
        let ctx = EvalContext::new(&env.mu, &env.family)?;
        let f = inst.scalar()?;
        let p1 = NormParams { k: k1, ..env.params };
        let p2 = NormParams { k: k2, ..env.params };
        let m1 = morrey_norm_ctx(&ctx, &f, &p1)?;
        let m2 = morrey_norm_ctx(&ctx, &f, &p2)?;
        let mut records = vec![CheckRecord::exact(
            format!("k-equivalence/{i}/monotone"),
            m2,
            m1,
            1.0,
        )];
        let mut warnings = Vec::new();
        soften(&mut records, env.heuristic, &mut warnings);
        let ratios = if m2 > 0.0 {
            vec![("k_equivalence/two_sided".to_string(), m1 / m2)]
        } else {
            Vec::new()
        };
        Ok((records, ratios, warnings))
    })?;
    apply_baselines(&mut report, baselines);
    // Reference constant from the claimed comparison, for the report.
    let d = corpus.instances.first().map(|i| i.dimension).unwrap_or(1) as i32;
    report.records.push(
        CheckRecord::observed(
            "k-equivalence/comparison_constant",
            ((k2 - 1.0) / (k1 - 1.0)).powi(d),
            1.0,
        )
        .with_detail(format!("((k2 - 1)/(k1 - 1))^d for k1 = {k1}, k2 = {k2}")),
    );
    Ok(report)
}

/// The elementary properties of the scale coefficient: items (1) to (3)
/// exactly, the quasi-additivity defect (4) and the common-majorant
/// construction (5) against baselines.
pub fn check_lemma2(corpus: &Corpus, baselines: &mut BaselineStore) -> Result<VerificationReport> {
    let mut report = run_per_instance("lemma2", corpus, |i, inst| {
        let mu = inst.measure()?;
        let n = mu.growth_exponent();
        let mut rng = instance_rng(corpus, i);
        let mut records = Vec::new();
        let mut ratios: Vec<(String, f64)> = Vec::new();

        for draw in 0..4 {
            let q = atom_centered_cube(&mu, &mut rng);
            let side = q.side().unwrap();
            let c0 = mu.growth_constant(side)?;

            // (1): delta(Q, rho Q) <= C0 log(rho).
            let rho = rng.gen_range(0.01f64..=16f64.ln()).exp();
            let d1 = delta(&mu, &q, &q.dilate(rho)?)?;
            records.push(CheckRecord::exact(
                format!("lemma2/{i}/{draw}/item1"),
                d1,
                c0 * rho.ln(),
                1.0,
            ));

            // (2): delta(Q, Q*) <= C0 2^{n+1} log 2.
            let qs = q_star(&mu, &q)?;
            let d2 = delta(&mu, &q, &qs)?;
            records.push(CheckRecord::exact(
                format!("lemma2/{i}/{draw}/item2"),
                d2,
                c0 * 2f64.powf(n + 1.0) * 2f64.ln(),
                1.0,
            ));

            // (3): bounded mass growth up to 2^{k0} Q.
            let k0 = rng.gen_range(1..=6);
            let big = q.dilate(2f64.powi(k0))?;
            let theta = mu.mass_of(&big) / mu.mass_of(&q);
            let d3 = delta(&mu, &q, &big)?;
            records.push(CheckRecord::exact(
                format!("lemma2/{i}/{draw}/item3"),
                d3,
                2f64.powf(n) * 2f64.ln() * theta * c0 * geometric_sum(n),
                1.0,
            ));

            // (4): quasi-additivity defect over a random nested triple,
            // recorded as |A - B| / (A + B) where A collects the scales the
            // outer pair adds at the inner center and B the middle pair's
            // own contribution. The ratio is scale-free and at most 1.
            let p = q.clone();
            let mid = shifted_superset(&p, rng.gen_range(1.0..=4.0), &mut rng);
            let outer = shifted_superset(&mid, rng.gen_range(1.0..=4.0), &mut rng);
            let a = delta(&mu, &p, &outer)? - delta(&mu, &p, &mid)?;
            let b = delta_or_zero(&mu, &mid, &outer)?;
            if a + b > 0.0 {
                ratios.push(("lemma2/item4_defect".to_string(), (a - b).abs() / (a + b)));
            }
            // Degenerate triple P = Q: the defect vanishes identically.
            let degenerate =
                (delta(&mu, &p, &outer)? - (delta(&mu, &p, &p)? + delta(&mu, &p, &outer)?)).abs();
            records.push(CheckRecord::exact(
                format!("lemma2/{i}/{draw}/item4_degenerate"),
                degenerate,
                0.0,
                1.0,
            ));

            // (5): construct the common doubling majorant S for a pair
            // Q subset R with l(R) <= 4 l(Q).
            let r = shifted_superset(&q, rng.gen_range(1.0..=4.0), &mut rng);
            if mu.mass_of(&r) > 0.0 {
                let qs = q_star(&mu, &q)?;
                let rs = q_star(&mu, &r)?;
                let j = (qs.side().unwrap() / q.side().unwrap()).log2().round() as i32;
                let s = q_star(&mu, &r.dilate(2f64.powi(j + 1))?)?;
                let contained = qs.is_subset(&s) && rs.is_subset(&s);
                records.push(CheckRecord::assert_that(
                    format!("lemma2/{i}/{draw}/item5_containment"),
                    contained,
                ));
                if contained {
                    let worst = delta_or_zero(&mu, &qs, &s)?.max(delta_or_zero(&mu, &rs, &s)?);
                    ratios.push(("lemma2/item5_delta".to_string(), worst / c0));
                }
            }
        }
        Ok((records, ratios, Vec::new()))
    })?;
    apply_baselines(&mut report, baselines);
    Ok(report)
}

/// A superset of `q` with side `rho * l(q)` and a randomly shifted center.
fn shifted_superset(q: &Cube, rho: f64, rng: &mut ChaCha8Rng) -> Cube {
    let (center, side) = (q.center().unwrap(), q.side().unwrap());
    let new_side = side * rho;
    let coords: Vec<f64> = center
        .coords
        .iter()
        .map(|&c| {
            let slack = (new_side - side) / 2.0;
            c + rng.gen_range(-1.0f64..=1.0) * slack
        })
        .collect();
    Cube::Bounded {
        center: Point::new(coords).unwrap(),
        side: new_side,
    }
}

/// `delta` tolerant of a zero-mass inner cube (contributes nothing).
fn delta_or_zero(mu: &MeasureSpace, q: &Cube, r: &Cube) -> Result<f64> {
    if !q.is_bounded() {
        return Ok(0.0);
    }
    if mu.mass_of(q) <= 0.0 {
        return Ok(0.0);
    }
    delta(mu, q, r)
}

fn recentered(mu: &MeasureSpace, f: &SampledFunction) -> Result<SampledFunction> {
    let m = net_limit(mu, f)?;
    Ok(f.add(&SampledFunction::constant(mu, -m)?))
}

/// Build chains from every atom's isolating cube and pin the chain cubes
/// into the family so the pair set contains every chain step.
fn pin_chains(mu: &MeasureSpace, family: &mut CubeFamily) -> Result<Vec<crate::doubling::DoublingChain>> {
    let gap = min_gap(mu);
    let mut chains = Vec::new();
    for atom in mu.atoms() {
        let seed = Cube::bounded(atom.position.clone(), gap / 4.0)?;
        let chain = doubling_chain(mu, &seed)?;
        for cube in &chain.cubes {
            family.pin(cube.clone());
        }
        chains.push(chain);
    }
    Ok(chains)
}

/// Morrey vs Campanato equivalence for recentred functions, with the
/// exact chain-step inequality along every ascending doubling chain.
pub fn check_theorem2(corpus: &Corpus, baselines: &mut BaselineStore) -> Result<VerificationReport> {
    let mut report = run_per_instance("theorem2", corpus, |i, inst| {
        let mut env = build_env(inst)?;
        let params = env.params;
        let f = recentered(&env.mu, &inst.scalar()?)?;
        let mut records = Vec::new();
        let mut warnings = Vec::new();
        let mut ratios: Vec<(String, f64)> = Vec::new();

        let scale = f.values.iter().fold(0.0f64, |a, v| a.max(v.abs()));
        records.push(CheckRecord::exact(
            format!("theorem2/{i}/mean_zero"),
            net_limit(&env.mu, &f)?.abs(),
            scale.max(1.0),
            1e-12,
        ));

        let chains = pin_chains(&env.mu, &mut env.family)?;
        let ctx = EvalContext::new(&env.mu, &env.family)?;
        let c_norm = campanato_norm_ctx(&ctx, &f, &params)?;
        let m_norm = morrey_norm_ctx(&ctx, &f, &params)?;

        for (which, chain) in chains.iter().enumerate() {
            let r1_mass = env.mu.mass_of(&chain.cubes[0]);
            records.push(CheckRecord::assert_that(
                format!("theorem2/{i}/chain{which}/terminates"),
                matches!(chain.cubes.last(), Some(Cube::WholeSpace)),
            ));
            let growth_ok = chain.cubes.iter().enumerate().all(|(step, cube)| {
                !cube.is_bounded() || env.mu.mass_of(cube) >= 2f64.powi(step as i32) * r1_mass
            });
            records.push(CheckRecord::assert_that(
                format!("theorem2/{i}/chain{which}/mass_growth"),
                growth_ok,
            ));
            for step in 0..chain.cubes.len() - 1 {
                let a = &chain.cubes[step];
                let b = &chain.cubes[step + 1];
                let k_ab = k_coefficient(&env.mu, a, b)?;
                let lhs = r1_mass.powf(params.inv_p())
                    * (mean(&env.mu, &f, a)? - mean(&env.mu, &f, b)?).abs();
                let rhs = 2f64.powf(-(step as f64) * params.inv_p()) * k_ab * c_norm;
                records.push(CheckRecord::exact(
                    format!("theorem2/{i}/chain{which}/step{step}"),
                    lhs,
                    rhs,
                    1.0,
                ));
            }
        }

        if m_norm > 0.0 {
            ratios.push(("theorem2/c_over_m".to_string(), c_norm / m_norm));
        }
        if c_norm > 0.0 {
            ratios.push(("theorem2/m_over_c".to_string(), m_norm / c_norm));
        }

        // Contraction of the norm under |f|, at q = 1.
        let q1 = NormParams { q: 1.0, ..params };
        let c_f = campanato_norm_ctx(&ctx, &f, &q1)?;
        let c_abs = campanato_norm_ctx(&ctx, &f.abs(), &q1)?;
        if c_f > 0.0 {
            ratios.push(("theorem2/b4_contraction".to_string(), c_abs / c_f));
        }

        soften(&mut records, env.heuristic, &mut warnings);
        Ok((records, ratios, warnings))
    })?;
    apply_baselines(&mut report, baselines);
    Ok(report)
}

/// Campanato dilation-parameter equivalence with the subdivision geometry
/// from its proof.
pub fn check_campanato_k_equivalence(
    corpus: &Corpus,
    baselines: &mut BaselineStore,
) -> Result<VerificationReport> {
    let k1 = 1.5;
    let k2 = 2.0 * k1 - 1.0;
    let mut report = run_per_instance("campanato-b2", corpus, |i, inst| {
        let env = build_env(inst)?;
        let ctx = EvalContext::new(&env.mu, &env.family)?;
        let f = inst.scalar()?;
        let p1 = NormParams { k: k1, ..env.params };
        let p2 = NormParams { k: k2, ..env.params };
        let c1 = campanato_norm_ctx(&ctx, &f, &p1)?;
        let c2 = campanato_norm_ctx(&ctx, &f, &p2)?;
        let mut records = vec![CheckRecord::exact(
            format!("campanato-b2/{i}/monotone"),
            c2,
            c1,
            1.0,
        )];
        let mut warnings = Vec::new();
        let mut ratios = Vec::new();
        if c2 > 0.0 {
            ratios.push(("campanato_b2/two_sided".to_string(), c1 / c2));
        }

        // Subdivision geometry: with k2 = 2 k1 - 1 every half of Q
        // satisfies k2 Q_l inside k1 Q, up to boundary rounding.
        let mut rng = instance_rng(corpus, i);
        let mut geometry_ok = true;
        for _ in 0..4 {
            let q = atom_centered_cube(&env.mu, &mut rng);
            let (center, side) = (q.center().unwrap(), q.side().unwrap());
            let outer = q.dilate(k1)?;
            // The inclusion is boundary-tight, so the rounding slack has
            // to cover the center magnitude, not just the side length.
            let scale = center.coords.iter().fold(side, |a, c| a.max(c.abs()));
            let tol = 1e-12 * scale;
            for corner in 0..(1usize << env.mu.dim()) {
                let coords: Vec<f64> = (0..env.mu.dim())
                    .map(|axis| {
                        let sign = if corner >> axis & 1 == 1 { 1.0 } else { -1.0 };
                        center.coords[axis] + sign * side / 4.0
                    })
                    .collect();
                let sub = Cube::Bounded {
                    center: Point::new(coords).unwrap(),
                    side: side / 2.0,
                };
                geometry_ok &= subset_with_slack(&sub.dilate(k2).unwrap(), &outer, tol);
            }
        }
        records.push(CheckRecord::assert_that(
            format!("campanato-b2/{i}/subdivision"),
            geometry_ok,
        ));

        soften(&mut records, env.heuristic, &mut warnings);
        Ok((records, ratios, warnings))
    })?;
    apply_baselines(&mut report, baselines);
    Ok(report)
}

fn subset_with_slack(inner: &Cube, outer: &Cube, tol: f64) -> bool {
    match (inner, outer) {
        (_, Cube::WholeSpace) => true,
        (Cube::WholeSpace, _) => false,
        (
            Cube::Bounded { center: ci, side: li },
            Cube::Bounded { center: co, side: lo },
        ) => ci
            .coords
            .iter()
            .zip(&co.coords)
            .all(|(a, b)| (a - b).abs() + li / 2.0 <= lo / 2.0 + tol),
    }
}

/// Exponential decay of oscillation distributions and the q-oscillation
/// bound for functions of bounded RBMO norm.
pub fn check_lemma1(corpus: &Corpus, baselines: &mut BaselineStore) -> Result<VerificationReport> {
    let mut report = run_per_instance("lemma1", corpus, |i, inst| {
        let env = build_env(inst)?;
        let ctx = EvalContext::new(&env.mu, &env.family)?;
        let f = inst.scalar()?;
        let rbmo = rbmo_norm_ctx(&ctx, &f)?;
        let mut ratios: Vec<(String, f64)> = Vec::new();
        let records = vec![CheckRecord::assert_that(
            format!("lemma1/{i}/norm_finite"),
            rbmo.is_finite(),
        )];
        if rbmo == 0.0 {
            return Ok((records, ratios, Vec::new()));
        }

        // (1): fit C in mu{|f - m_{Q*}| > lambda} <= C mu(3/2 Q)
        // exp(-lambda / ||f||) over the distribution's jump points,
        // with C' fixed to 1.
        let mut envelope: f64 = 0.0;
        for data in ctx.cubes.iter().filter(|c| c.mass > 0.0) {
            let m_star = masked_mean(&env.mu, data.q_star_mask, &f);
            let mut values: Vec<(f64, f64)> = Vec::new();
            for a in 0..env.mu.atoms().len() {
                if data.mask & (1 << a) != 0 {
                    values.push(((f.values[a] - m_star).abs(), env.mu.atoms()[a].mass));
                }
            }
            values.sort_by(|a, b| a.0.total_cmp(&b.0));
            let weight = env.mu.mass_of(&data.cube.dilate(1.5).unwrap());
            let mut tail: f64 = values.iter().map(|v| v.1).sum();
            let mut prev = 0.0;
            for &(v, mass) in &values {
                if v > prev {
                    // On [prev, v) the distribution is `tail`; the
                    // envelope is tightest as lambda approaches v.
                    envelope = envelope.max(tail / weight * (v / rbmo).exp());
                    prev = v;
                }
                tail -= mass;
            }
        }
        ratios.push(("lemma1/envelope_c".to_string(), envelope));

        // (2): q-oscillation over the 3/2-weight against the norm.
        let osc_params = NormParams::new(f64::INFINITY, 2.0, 1.5, 5.0, 2.0)?;
        let singleton = VectorFunction::new(vec![f.clone()])?;
        let osc = campanato_parts_lr_ctx(&ctx, &singleton, &osc_params)?.oscillation;
        ratios.push(("lemma1/q_oscillation".to_string(), osc / rbmo));

        Ok((records, ratios, Vec::new()))
    })?;
    apply_baselines(&mut report, baselines);
    Ok(report)
}

/// Mass-weighted mean of `f` over the atoms in `mask`.
fn masked_mean(mu: &MeasureSpace, mask: u32, f: &SampledFunction) -> f64 {
    let mut sum = 0.0;
    for (i, atom) in mu.atoms().iter().enumerate() {
        if mask & (1 << i) != 0 {
            sum += f.values[i] * atom.mass;
        }
    }
    sum / mu.mask_mass(mask)
}

/// Vector oscillation bound: the `l^r` q-oscillation against the
/// supremum of the assembled sharp maximal values.
pub fn check_lemma4(corpus: &Corpus, baselines: &mut BaselineStore) -> Result<VerificationReport> {
    let mut report = run_per_instance("lemma4", corpus, |i, inst| {
        let env = build_env(inst)?;
        let ctx = EvalContext::new(&env.mu, &env.family)?;
        let vf = inst.vector()?;
        let r = env.params.r;
        let sup_sharp = sharp_maximal_lr_sup(&ctx, &vf, r);
        let records = vec![CheckRecord::assert_that(
            format!("lemma4/{i}/sup_finite"),
            sup_sharp.is_finite(),
        )];
        let mut ratios = Vec::new();
        if sup_sharp > 0.0 {
            let osc_params = NormParams::new(f64::INFINITY, 2.0, 1.5, 5.0, r)?;
            let osc = campanato_parts_lr_ctx(&ctx, &vf, &osc_params)?.oscillation;
            ratios.push(("lemma4/ratio".to_string(), osc / sup_sharp));
        }
        Ok((records, ratios, Vec::new()))
    })?;
    apply_baselines(&mut report, baselines);
    Ok(report)
}

/// The pair-term supremum is dominated by the sharp maximal supremum
/// with constant one, plus the full-norm comparison against baseline.
pub fn check_prop3(corpus: &Corpus, baselines: &mut BaselineStore) -> Result<VerificationReport> {
    let mut report = run_per_instance("prop3", corpus, |i, inst| {
        let env = build_env(inst)?;
        let ctx = EvalContext::new(&env.mu, &env.family)?;
        let vf = inst.vector()?;
        let r = env.params.r;
        let limit_params = NormParams::new(f64::INFINITY, 1.0, 1.5, 5.0, r)?;
        let parts = campanato_parts_lr_ctx(&ctx, &vf, &limit_params)?;
        let sup_sharp = sharp_maximal_lr_sup(&ctx, &vf, r);
        let mut records = vec![CheckRecord::exact(
            format!("prop3/{i}/pair_dominated"),
            parts.pair,
            sup_sharp,
            1.0,
        )];
        let mut warnings = Vec::new();
        let mut ratios = Vec::new();
        if sup_sharp > 0.0 {
            let full = campanato_norm_lr_ctx(&ctx, &vf, &limit_params)?;
            ratios.push(("prop3/b7".to_string(), full / sup_sharp));
        }
        soften(&mut records, env.heuristic, &mut warnings);
        Ok((records, ratios, warnings))
    })?;
    apply_baselines(&mut report, baselines);
    Ok(report)
}

/// Vector Morrey vs Campanato equivalence for recentred components, with
/// the single-component reduction checked bit-for-bit.
pub fn check_theorem3(corpus: &Corpus, baselines: &mut BaselineStore) -> Result<VerificationReport> {
    let mut report = run_per_instance("theorem3", corpus, |i, inst| {
        let env = build_env(inst)?;
        let params = env.params;
        let vf = inst.vector()?;
        let components = vf
            .components
            .iter()
            .map(|c| recentered(&env.mu, c))
            .collect::<Result<Vec<_>>>()?;
        let vf = VectorFunction::new(components)?;
        let ctx = EvalContext::new(&env.mu, &env.family)?;

        let mut records = Vec::new();
        for (j, c) in vf.components.iter().enumerate() {
            let scale = c.values.iter().fold(0.0f64, |a, v| a.max(v.abs()));
            records.push(CheckRecord::exact(
                format!("theorem3/{i}/mean_zero/{j}"),
                net_limit(&env.mu, c)?.abs(),
                scale.max(1.0),
                1e-12,
            ));
        }

        let m = morrey_norm_lr_ctx(&ctx, &vf, &params)?;
        let c = campanato_norm_lr_ctx(&ctx, &vf, &params)?;
        let mut ratios = Vec::new();
        if m > 0.0 {
            ratios.push(("theorem3/c_over_m".to_string(), c / m));
        }
        if c > 0.0 {
            ratios.push(("theorem3/m_over_c".to_string(), m / c));
        }

        // J = 1 reduction reproduces the scalar numbers exactly.
        let first = VectorFunction::new(vec![vf.components[0].clone()])?;
        let m1 = morrey_norm_lr_ctx(&ctx, &first, &params)?;
        let c1 = campanato_norm_lr_ctx(&ctx, &first, &params)?;
        let sm = morrey_norm_ctx(&ctx, &vf.components[0], &params)?;
        let sc = campanato_norm_ctx(&ctx, &vf.components[0], &params)?;
        records.push(CheckRecord::assert_that(
            format!("theorem3/{i}/scalar_reduction"),
            m1 == sm && c1 == sc,
        ));

        let mut warnings = Vec::new();
        soften(&mut records, env.heuristic, &mut warnings);
        Ok((records, ratios, warnings))
    })?;
    apply_baselines(&mut report, baselines);
    Ok(report)
}

/// The telescoping mean bound along an ascending doubling chain for
/// nonnegative functions.
pub fn check_claim1(corpus: &Corpus, baselines: &mut BaselineStore) -> Result<VerificationReport> {
    let mut report = run_per_instance("claim1", corpus, |i, inst| {
        let mut env = build_env(inst)?;
        let params = env.params;
        let f = inst.scalar()?.abs();
        let mut records = vec![CheckRecord::assert_that(
            format!("claim1/{i}/nonnegative"),
            f.values.iter().all(|v| *v >= 0.0),
        )];
        let mut warnings = Vec::new();

        let chains = pin_chains(&env.mu, &mut env.family)?;
        let ctx = EvalContext::new(&env.mu, &env.family)?;
        let c_norm = campanato_norm_ctx(&ctx, &f, &params)?;

        let chain = &chains[0];
        let m1 = mean(&env.mu, &f, &chain.cubes[0])?;
        let mut budget = 0.0;
        for step in 0..chain.cubes.len() - 1 {
            let a = &chain.cubes[step];
            let b = &chain.cubes[step + 1];
            budget += k_coefficient(&env.mu, a, b)?
                * env.mu.mass_of(a).powf(-params.inv_p())
                * c_norm;
            let mk = mean(&env.mu, &f, b)?;
            records.push(CheckRecord::exact(
                format!("claim1/{i}/step{step}"),
                (mk - m1).abs(),
                budget,
                1.0,
            ));
        }

        soften(&mut records, env.heuristic, &mut warnings);
        Ok((records, Vec::new(), warnings))
    })?;
    apply_baselines(&mut report, baselines);
    Ok(report)
}
