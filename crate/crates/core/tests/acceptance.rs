//! Acceptance gate: one test per criterion, each printing a single
//! `criterion NN: PASS/FAIL` line (visible with `--nocapture`, and always
//! on failure).

mod common;

use std::collections::HashSet;
use std::panic::{catch_unwind, resume_unwind, AssertUnwindSafe};
use std::path::PathBuf;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use morrey::coefficients::{delta, k_alpha};
use morrey::doubling::{doubling_chain, q_star};
use morrey::families::{build_family, FamilySpec};
use morrey::functionals::{
    campanato_norm_ctx, campanato_norm_lr_ctx, campanato_parts_ctx, mean, morrey_argmax_ctx,
    morrey_norm_ctx, morrey_norm_doubling_ctx, morrey_norm_lr_ctx, net_limit, sharp_maximal_all,
    sharp_maximal_lr_all, EvalContext, NormParams, SampledFunction, VectorFunction,
};
use morrey::geometry::{Cube, Point};
use morrey::measure::{Atom, MeasureSpace};
use morrey::verify::baseline::BaselineStore;
use morrey::verify::corpus::{default_corpus, Corpus};
use morrey::verify::report::VerificationReport;
use morrey::verify::suites;

fn criterion<F: FnOnce()>(number: u32, label: &str, body: F) {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(()) => println!("criterion {number:02}: PASS - {label}"),
        Err(cause) => {
            println!("criterion {number:02}: FAIL - {label}");
            resume_unwind(cause);
        }
    }
}

fn corpus500() -> Corpus {
    default_corpus(42, 500, 1).unwrap()
}

fn committed_baselines() -> BaselineStore {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("baselines/default.json");
    let store = BaselineStore::load(&path).unwrap();
    assert!(!store.values.is_empty(), "committed baseline store missing");
    store
}

fn assert_all_pass(report: &VerificationReport) {
    let failures: Vec<String> = report
        .failures()
        .iter()
        .map(|r| format!("{}: lhs={} rhs={} constant={}", r.id, r.lhs, r.rhs, r.constant))
        .collect();
    assert!(failures.is_empty(), "failures: {failures:?}");
}

fn point(x: f64) -> Point {
    Point::new(vec![x]).unwrap()
}

fn cube(center: f64, side: f64) -> Cube {
    Cube::bounded(point(center), side).unwrap()
}

fn measure(atoms: &[(f64, f64)]) -> MeasureSpace {
    let atoms = atoms
        .iter()
        .map(|&(x, m)| Atom { position: point(x), mass: m })
        .collect();
    MeasureSpace::new(1, 1.0, atoms).unwrap()
}

/// Smallest positive pairwise atom distance, or 1 for a single atom.
fn min_gap(mu: &MeasureSpace) -> f64 {
    let atoms = mu.atoms();
    let mut gap = f64::INFINITY;
    for i in 0..atoms.len() {
        for j in i + 1..atoms.len() {
            let d = atoms[i].position.chebyshev(&atoms[j].position);
            if d > 0.0 {
                gap = gap.min(d);
            }
        }
    }
    if gap.is_finite() {
        gap
    } else {
        1.0
    }
}

/// Largest pairwise atom distance, or 1 for a single cluster.
fn span(mu: &MeasureSpace) -> f64 {
    let atoms = mu.atoms();
    let mut s = 0.0f64;
    for i in 0..atoms.len() {
        for j in i + 1..atoms.len() {
            s = s.max(atoms[i].position.chebyshev(&atoms[j].position));
        }
    }
    if s > 0.0 {
        s
    } else {
        1.0
    }
}

fn random_atom_cube(mu: &MeasureSpace, rng: &mut ChaCha8Rng) -> Cube {
    let idx = rng.gen_range(0..mu.atoms().len());
    let lo = (min_gap(mu) / 4.0).ln();
    let hi = (4.0 * span(mu)).ln();
    let side = rng.gen_range(lo..=hi).exp();
    Cube::bounded(mu.atoms()[idx].position.clone(), side).unwrap()
}

#[test]
fn criterion_01_doubling_weight_lower_bound() {
    criterion(1, "doubling-restricted norm below beta^(1/q - 1/p) times the full norm", || {
        let corpus = corpus500();
        let report = suites::check_theorem1(&corpus, &mut BaselineStore::default()).unwrap();
        assert_all_pass(&report);
        let left: Vec<_> = report
            .records
            .iter()
            .filter(|r| r.id.ends_with("/left"))
            .collect();
        assert_eq!(left.len(), 500, "every instance must contribute a left-side check");
        for r in left {
            assert!(r.pass, "{} failed", r.id);
            assert!(
                (r.constant - 5f64.sqrt()).abs() <= 1e-12 * 5f64.sqrt(),
                "left constant should be sqrt(beta) = sqrt(5), got {}",
                r.constant
            );
        }
    });
}

#[test]
fn criterion_02_full_norm_upper_bound() {
    criterion(2, "full norm below 8^d t/(1 - t) times the doubling-restricted norm", || {
        let corpus = corpus500();
        let report = suites::check_theorem1(&corpus, &mut BaselineStore::default()).unwrap();
        assert_all_pass(&report);
        let right: Vec<_> = report
            .records
            .iter()
            .filter(|r| r.id.ends_with("/right"))
            .collect();
        assert_eq!(right.len(), 500);
        let t = 2.0 / 5f64.sqrt();
        let c = 8.0 * t / (1.0 - t);
        assert!((c - 67.78).abs() < 0.01, "reference constant drifted: {c}");
        for r in right {
            assert!(r.pass, "{} failed", r.id);
            assert!(
                (r.constant - c).abs() <= 1e-9 * c,
                "right constant should be {c}, got {}",
                r.constant
            );
        }
    });
}

#[test]
fn criterion_03_scale_coefficient_inequalities() {
    criterion(3, "elementary scale-coefficient bounds over 2000 random draws", || {
        let corpus = corpus500();
        let report = suites::check_lemma2(&corpus, &mut BaselineStore::default()).unwrap();
        assert_all_pass(&report);
        for item in ["item1", "item2", "item3"] {
            let records: Vec<_> = report
                .records
                .iter()
                .filter(|r| r.id.ends_with(item))
                .collect();
            assert_eq!(records.len(), 2000, "500 instances x 4 draws of {item}");
            assert!(records.iter().all(|r| r.pass));
        }
    });
}

#[test]
fn criterion_04_quasi_additivity_baseline() {
    criterion(4, "quasi-additivity defect finite and stable across seeds", || {
        // Seed 42 is compared against the committed baseline; other seeds
        // must stay within the same 5% headroom of the stored value.
        let stored = *committed_baselines()
            .values
            .get("lemma2/item4_defect@42")
            .expect("committed defect baseline");
        for seed in [42u64, 43, 7] {
            let corpus = default_corpus(seed, 500, 1).unwrap();
            let mut store = committed_baselines();
            let report = suites::check_lemma2(&corpus, &mut store).unwrap();
            assert_all_pass(&report);
            let defect = report
                .records
                .iter()
                .find(|r| r.id == format!("baseline/lemma2/item4_defect@{seed}"))
                .expect("defect baseline record");
            assert!(defect.lhs.is_finite(), "seed {seed}: {defect:?}");
            assert!(
                defect.lhs <= 1.05 * stored,
                "seed {seed}: defect {} exceeds stored {stored} by more than 5%",
                defect.lhs
            );
            if seed == 42 {
                assert!(!store.dirty(), "seed 42 must match the committed entries");
                assert_eq!(defect.lhs, stored, "seed 42 must reproduce the baseline exactly");
            }
        }
    });
}

#[test]
fn criterion_05_exact_family_dominates_sampling() {
    criterion(5, "exact families dominate 100000 sampled cubes with matching patterns", || {
        let corpus = default_corpus(42, 100, 1).unwrap();
        let slack = 1.0 + 1e-9;
        for (i, inst) in corpus.instances.iter().enumerate() {
            let mu = inst.measure().unwrap();
            let f = inst.scalar().unwrap();
            let params = inst.params.norm_params().unwrap();
            let exact = build_family(&mu, &inst.family).unwrap();
            let sampled = build_family(
                &mu,
                &FamilySpec::Sampled { count: 100_000, seed: 1_000 + i as u64 },
            )
            .unwrap();
            let ctx_e = EvalContext::new(&mu, &exact).unwrap();
            let ctx_s = EvalContext::new(&mu, &sampled).unwrap();

            // Membership pattern of a cube: atoms inside it and inside its
            // k-dilate.
            let pattern = |cube: &Cube| {
                (mu.atoms_in(cube), mu.atoms_in(&cube.dilate(params.k).unwrap()))
            };
            let exact_patterns: HashSet<(u32, u32)> =
                ctx_e.cubes.iter().map(|c| pattern(&c.cube)).collect();
            let check_pattern = |argmax: Option<usize>, what: &str| {
                if let Some(j) = argmax {
                    let p = pattern(&ctx_s.cubes[j].cube);
                    assert!(
                        exact_patterns.contains(&p),
                        "instance {i}: {what} argmax pattern {p:?} unmatched"
                    );
                }
            };

            let (ve, _) = morrey_argmax_ctx(&ctx_e, &f, &params).unwrap();
            let (vs, arg_s) = morrey_argmax_ctx(&ctx_s, &f, &params).unwrap();
            assert!(vs <= ve * slack, "instance {i}: morrey {vs} > {ve}");
            check_pattern(arg_s, "morrey");

            let de = morrey_norm_doubling_ctx(&ctx_e, &f, &params).unwrap();
            let ds = morrey_norm_doubling_ctx(&ctx_s, &f, &params).unwrap();
            if !de.degenerate && !ds.degenerate {
                assert!(ds.value <= de.value * slack, "instance {i}: doubling");
                check_pattern(ds.argmax, "doubling");
            }

            let pe = campanato_parts_ctx(&ctx_e, &f, &params).unwrap();
            let ps = campanato_parts_ctx(&ctx_s, &f, &params).unwrap();
            assert!(
                ps.oscillation <= pe.oscillation * slack,
                "instance {i}: oscillation {} > {}",
                ps.oscillation,
                pe.oscillation
            );
            // The oscillation term also consults the smallest doubling
            // dyadic dilate, so its pattern includes that mask too.
            if let Some(j) = ps.oscillation_argmax {
                let s = &ctx_s.cubes[j];
                let p = (pattern(&s.cube), s.q_star_mask);
                assert!(
                    ctx_e
                        .cubes
                        .iter()
                        .any(|c| (pattern(&c.cube), c.q_star_mask) == p),
                    "instance {i}: oscillation argmax pattern {p:?} unmatched"
                );
            }
        }
    });
}

#[test]
fn criterion_06_chain_inequality() {
    criterion(6, "exact chain-step inequality and chain invariants on all instances", || {
        let corpus = corpus500();
        let report = suites::check_theorem2(&corpus, &mut BaselineStore::default()).unwrap();
        assert_all_pass(&report);
        let steps = report
            .records
            .iter()
            .filter(|r| r.id.contains("/chain") && r.id.contains("/step"))
            .count();
        assert!(steps > 0, "no chain steps exercised");
        for kind in ["/terminates", "/mass_growth"] {
            let records: Vec<_> = report
                .records
                .iter()
                .filter(|r| r.id.ends_with(kind))
                .collect();
            assert!(!records.is_empty());
            assert!(records.iter().all(|r| r.pass));
        }
    });
}

#[test]
fn criterion_07_net_limit_and_equivalence_baselines() {
    criterion(7, "mean net limit equals the global mean; equivalence constants hold", || {
        let corpus = corpus500();
        for inst in &corpus.instances {
            let mu = inst.measure().unwrap();
            let f = inst.scalar().unwrap();
            let limit = net_limit(&mu, &f).unwrap();
            let global = mean(&mu, &f, &Cube::WholeSpace).unwrap();
            assert!(
                (limit - global).abs() <= 1e-12 * global.abs().max(1.0),
                "net limit {limit} vs global mean {global}"
            );
            // Chain-seed independence: chains grown from different atoms
            // all end at the whole space and reproduce the same limit.
            let gap = min_gap(&mu);
            for atom in mu.atoms().iter().take(3) {
                let seed = Cube::bounded(atom.position.clone(), gap / 4.0).unwrap();
                let chain = doubling_chain(&mu, &seed).unwrap();
                let last = mean(&mu, &f, chain.cubes.last().unwrap()).unwrap();
                assert_eq!(last.to_bits(), limit.to_bits(), "seed-dependent limit");
            }
        }
        let mut store = committed_baselines();
        for check in [suites::check_theorem2, suites::check_theorem3] {
            let report = check(&corpus, &mut store).unwrap();
            assert_all_pass(&report);
            for r in report.records.iter().filter(|r| r.id.starts_with("baseline/")) {
                assert!(r.lhs.is_finite(), "{}: non-finite equivalence constant", r.id);
            }
        }
        assert!(!store.dirty());
    });
}

#[test]
fn criterion_08_covering_selection_bounds() {
    criterion(8, "coverage, 4^d overlap and 8^d k^(jd) cardinality over 1000 center sets", || {
        let corpus = corpus500();
        let mut sets = 0usize;
        for (i, inst) in corpus.instances.iter().enumerate() {
            let mu = inst.measure().unwrap();
            let base = mu.atoms()[0].position.clone();
            let reach = mu
                .atoms()
                .iter()
                .fold(0.0f64, |a, atom| a.max(base.chebyshev(&atom.position)));
            let wide = Cube::bounded(base.clone(), 2.0 * reach + 1.0).unwrap();
            let narrow = Cube::bounded(base, reach.max(1.0)).unwrap();
            for (which, q) in [wide, narrow].iter().enumerate() {
                let records =
                    suites::covering_replication(&mu, q, 2.0, 5.0, &format!("set/{i}/{which}"))
                        .unwrap();
                assert_eq!(records.len(), 3);
                for r in &records {
                    assert!(r.pass, "{}: lhs={} rhs={}", r.id, r.lhs, r.rhs);
                }
                sets += 1;
            }
        }
        assert!(sets >= 1000, "only {sets} center sets exercised");
    });
}

#[test]
fn criterion_09_pair_term_domination_and_scalar_reduction() {
    criterion(9, "pair-term supremum below the sharp maximal; single-component reductions exact", || {
        let corpus = corpus500();
        let report = suites::check_prop3(&corpus, &mut BaselineStore::default()).unwrap();
        assert_all_pass(&report);
        let dominated: Vec<_> = report
            .records
            .iter()
            .filter(|r| r.id.ends_with("/pair_dominated"))
            .collect();
        assert_eq!(dominated.len(), 500);
        assert!(dominated.iter().all(|r| r.pass && r.constant == 1.0));

        for inst in corpus.instances.iter().take(50) {
            let mu = inst.measure().unwrap();
            let f = inst.scalar().unwrap();
            let params = inst.params.norm_params().unwrap();
            let family = build_family(&mu, &inst.family).unwrap();
            let ctx = EvalContext::new(&mu, &family).unwrap();
            let single = VectorFunction::new(vec![f.clone()]).unwrap();

            let mv = morrey_norm_lr_ctx(&ctx, &single, &params).unwrap();
            let ms = morrey_norm_ctx(&ctx, &f, &params).unwrap();
            assert_eq!(mv.to_bits(), ms.to_bits());
            let cv = campanato_norm_lr_ctx(&ctx, &single, &params).unwrap();
            let cs = campanato_norm_ctx(&ctx, &f, &params).unwrap();
            assert_eq!(cv.to_bits(), cs.to_bits());
            let sv = sharp_maximal_lr_all(&ctx, &single, params.r);
            let ss = sharp_maximal_all(&ctx, &f);
            assert_eq!(sv.len(), ss.len());
            for (a, b) in sv.iter().zip(&ss) {
                assert_eq!(a.to_bits(), b.to_bits());
            }
        }
    });
}

#[test]
fn criterion_10_closed_form_vs_quadrature() {
    criterion(10, "closed-form scale coefficient matches adaptive quadrature to 1e-9", || {
        let corpus = default_corpus(42, 100, 1).unwrap();
        let mut pairs = 0usize;
        for (i, inst) in corpus.instances.iter().enumerate() {
            let mu = inst.measure().unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(777 + i as u64);
            for draw in 0..10 {
                let q = random_atom_cube(&mu, &mut rng);
                let r = if draw % 3 == 2 {
                    Cube::WholeSpace
                } else {
                    let rho = rng.gen_range(0.0f64..=64f64.ln()).exp();
                    q.dilate(rho.max(1.0)).unwrap()
                };
                let closed = delta(&mu, &q, &r).unwrap();
                let numeric = common::delta_quadrature(&mu, &q, &r);
                assert!(
                    (closed - numeric).abs() <= 1e-9 * closed.abs().max(1e-12),
                    "instance {i} draw {draw}: closed {closed} vs quadrature {numeric}"
                );
                pairs += 1;
            }
        }
        assert_eq!(pairs, 1000);
    });
}

#[test]
fn criterion_11_worked_examples() {
    criterion(11, "pinned worked examples reproduce their hand-computed values", || {
        // Two equal atoms, f = (1, 2): the norm is 3/sqrt(2), attained on a
        // cube holding both atoms.
        let mu = measure(&[(0.0, 1.0), (1.0, 1.0)]);
        let f = SampledFunction::new(&mu, vec![1.0, 2.0]).unwrap();
        let family = build_family(&mu, &FamilySpec::Exact1d { k: 2.0 }).unwrap();
        let params = NormParams::default();
        let ctx = EvalContext::new(&mu, &family).unwrap();
        let value = morrey_norm_ctx(&ctx, &f, &params).unwrap();
        let expected = 3.0 / 2f64.sqrt();
        assert!((value - expected).abs() <= 1e-9 * expected, "{value} vs {expected}");

        // Smallest doubling dyadic dilate of the unit cube in the
        // two-atom, unbalanced-mass measure.
        let mu2 = measure(&[(0.0, 1.0), (0.9, 10.0)]);
        let qs = q_star(&mu2, &cube(0.0, 1.0)).unwrap();
        assert_eq!(qs.side().unwrap(), 2.0);
        assert_eq!(qs.center().unwrap().coords, vec![0.0]);

        // Scale coefficient between the concentric unit and side-4 cubes.
        let d = delta(&mu2, &cube(0.0, 1.0), &cube(0.0, 4.0)).unwrap();
        let exact = (1.0 - 1.0 / 1.8) + 11.0 * (1.0 / 1.8 - 1.0 / 4.0);
        assert!((d - 3.805556).abs() <= 1e-6);
        assert!((d - exact).abs() <= 1e-12 * exact);

        // Power-weighted coefficient for a single atom.
        let mu3 = measure(&[(0.0, 1.0)]);
        let ka = k_alpha(&mu3, &cube(0.0, 1.0), &cube(0.0, 4.0), 0.5).unwrap();
        let exact_ka = 1.0 + 0.5f64.sqrt() + 0.25f64.sqrt();
        assert!((ka - 2.207107).abs() <= 1e-6);
        assert!((ka - exact_ka).abs() <= 1e-12 * exact_ka);

        // Three well-separated unit atoms: the ascending chain from the
        // unit cube jumps to side 256 and then the whole space.
        let mu4 = measure(&[(0.0, 1.0), (10.0, 1.0), (100.0, 1.0)]);
        let chain = doubling_chain(&mu4, &cube(0.0, 1.0)).unwrap();
        let sides: Vec<Option<f64>> = chain.cubes.iter().map(|c| c.side()).collect();
        assert_eq!(sides, vec![Some(1.0), Some(256.0), None]);
        assert!(matches!(chain.cubes.last(), Some(Cube::WholeSpace)));
    });
}
