//! Batch front-end: instance generation, norm computation with printed
//! argmax cubes, and verification suite execution with report files.
//!
//! Exit codes: 0 success, 1 verification failure, 2 input error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};

use morrey::families::{build_family, Completeness, CubeFamily, FamilySpec};
use morrey::functionals::{
    campanato_parts_ctx, campanato_parts_lr_ctx, lr_values, morrey_argmax_ctx,
    morrey_norm_doubling_ctx, net_limit, sharp_maximal_all, sharp_maximal_lr_all, EvalContext,
    NormParams,
};
use morrey::geometry::{Cube, Point};
use morrey::instance::{generate, GenConfig, InstanceFile};
use morrey::measure::MeasureSpace;
use morrey::verify::corpus::load_dir;
use morrey::verify::{default_corpus, run_suite, suite_names, BaselineStore, Corpus};

#[derive(Parser)]
#[command(name = "morrey", version, about = "Exact Morrey/Campanato norms over finite atomic measures")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate deterministic instance files.
    Gen {
        /// Number of atoms (single-instance mode).
        #[arg(long, default_value_t = 5)]
        atoms: usize,
        /// Dimension (1 or 2).
        #[arg(long, default_value_t = 1)]
        dim: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// With a count above 1, `--output` names a directory receiving a
        /// corpus drawn from the default distribution (3 to 12 atoms).
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(long)]
        output: PathBuf,
    },
    /// Evaluate one norm on an instance file.
    Norms {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum)]
        norm: NormName,
        /// Override the instance exponent p ("inf" accepted).
        #[arg(long)]
        p: Option<f64>,
        #[arg(long)]
        q: Option<f64>,
        #[arg(long)]
        k: Option<f64>,
        #[arg(long)]
        beta: Option<f64>,
        #[arg(long)]
        r: Option<f64>,
        #[arg(long)]
        alpha: Option<f64>,
        /// Override the instance family recipe.
        #[arg(long, value_enum)]
        family: Option<FamilyKind>,
        /// Depth for `--family dyadic`.
        #[arg(long, default_value_t = 4)]
        depth: u32,
        /// Cube count for `--family sampled`.
        #[arg(long, default_value_t = 2000)]
        samples: usize,
        /// Seed for `--family sampled`.
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Optional JSON record of the result.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Run a verification suite over a corpus.
    Verify {
        /// One of the suite names, or `all`.
        #[arg(long)]
        suite: String,
        /// Directory of instance files; omitted means a generated corpus.
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 500)]
        count: usize,
        #[arg(long, default_value_t = 1)]
        dim: usize,
        /// Report JSON path.
        #[arg(long)]
        output: Option<PathBuf>,
        /// Optional delimited-table export of the report.
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Baseline store; recorded values are written back on first sight.
        #[arg(long, default_value = "baselines/default.json")]
        baseline_path: PathBuf,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum NormName {
    Morrey,
    MorreyDoubling,
    Campanato,
    Rbmo,
    Sharp,
    NetLimit,
    MorreyLr,
    CampanatoLr,
    SharpLr,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FamilyKind {
    Exact,
    Dyadic,
    Sampled,
    Breakpoints,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> anyhow::Result<ExitCode> {
    match command {
        Command::Gen { atoms, dim, seed, count, output } => cmd_gen(atoms, dim, seed, count, &output),
        Command::Norms {
            input,
            norm,
            p,
            q,
            k,
            beta,
            r,
            alpha,
            family,
            depth,
            samples,
            seed,
            output,
        } => cmd_norms(
            &input,
            norm,
            [p, q, k, beta, r, alpha],
            family,
            depth,
            samples,
            seed,
            output.as_deref(),
        ),
        Command::Verify { suite, input, seed, count, dim, output, csv, baseline_path } => {
            cmd_verify(&suite, input.as_deref(), seed, count, dim, output.as_deref(), csv.as_deref(), &baseline_path)
        }
    }
}

fn cmd_gen(atoms: usize, dim: usize, seed: u64, count: usize, output: &Path) -> anyhow::Result<ExitCode> {
    if count == 1 {
        let inst = generate(&GenConfig { dimension: dim, atom_count: atoms, seed })?;
        if let Some(parent) = output.parent() {
            std::fs::create_dir_all(parent)?;
        }
        inst.save(output)
            .with_context(|| format!("writing {}", output.display()))?;
        println!("wrote {} ({} atoms, d = {dim}, seed {seed})", output.display(), atoms);
    } else {
        let corpus = default_corpus(seed, count, dim)?;
        std::fs::create_dir_all(output)?;
        for (i, inst) in corpus.instances.iter().enumerate() {
            inst.save(&output.join(format!("{i:03}.json")))?;
        }
        println!("wrote {count} instances to {} (d = {dim}, seed {seed})", output.display());
    }
    Ok(ExitCode::SUCCESS)
}

/// Resolve the effective family: a CLI override or the instance's recipe.
fn resolve_family(
    mu: &MeasureSpace,
    inst: &InstanceFile,
    kind: Option<FamilyKind>,
    params: &NormParams,
    depth: u32,
    samples: usize,
    seed: u64,
) -> anyhow::Result<CubeFamily> {
    let spec = match kind {
        None => inst.family.clone(),
        Some(FamilyKind::Exact) => FamilySpec::Exact1d { k: params.k },
        Some(FamilyKind::Sampled) => FamilySpec::Sampled { count: samples, seed },
        Some(FamilyKind::Breakpoints) => FamilySpec::CenteredBreakpoints,
        Some(FamilyKind::Dyadic) => {
            let d = mu.dim();
            let mut lo = vec![f64::INFINITY; d];
            let mut hi = vec![f64::NEG_INFINITY; d];
            for atom in mu.atoms() {
                for (axis, &c) in atom.position.coords.iter().enumerate() {
                    lo[axis] = lo[axis].min(c);
                    hi[axis] = hi[axis].max(c);
                }
            }
            let extent = lo.iter().zip(&hi).map(|(a, b)| b - a).fold(1.0f64, f64::max);
            let side = 2f64.powi((2.0 * extent).log2().ceil() as i32);
            let center: Vec<f64> = lo.iter().zip(&hi).map(|(a, b)| (a + b) / 2.0).collect();
            FamilySpec::Dyadic {
                root: Cube::bounded(Point::new(center)?, side)?,
                depth,
            }
        }
    };
    Ok(build_family(mu, &spec)?)
}

fn describe_cube(family: &[morrey::functionals::CubeData], idx: Option<usize>) -> String {
    match idx {
        None => "none".to_string(),
        Some(i) => match &family[i].cube {
            Cube::WholeSpace => "whole space".to_string(),
            Cube::Bounded { center, side } => {
                format!("center {:?}, side {}", center.coords, side)
            }
        },
    }
}

#[derive(serde::Serialize)]
struct NormRecord {
    norm: String,
    value: f64,
    argmax: Vec<String>,
    completeness: String,
    params: NormParams,
}

#[allow(clippy::too_many_arguments)]
fn cmd_norms(
    input: &Path,
    norm: NormName,
    overrides: [Option<f64>; 6],
    family_kind: Option<FamilyKind>,
    depth: u32,
    samples: usize,
    seed: u64,
    output: Option<&Path>,
) -> anyhow::Result<ExitCode> {
    let inst = InstanceFile::load(input)
        .with_context(|| format!("loading {}", input.display()))?;
    let mu = inst.measure()?;

    let [p, q, k, beta, r, _alpha] = overrides;
    let base = inst.params;
    let params = NormParams::new(
        p.unwrap_or(base.p),
        q.unwrap_or(base.q),
        k.unwrap_or(base.k),
        beta.unwrap_or(base.beta),
        r.unwrap_or(base.r),
    )?;

    if params.p == params.q && matches!(norm, NormName::Morrey | NormName::MorreyDoubling) {
        eprintln!(
            "note: with p = q the comparison factor t = k^d * beta^(1/p - 1/q) = k^d is at \
             least 1, so the plain and doubling-restricted Morrey norms need not be \
             equivalent; both values are still exact over the family"
        );
    }

    let family = resolve_family(&mu, &inst, family_kind, &params, depth, samples, seed)?;
    let completeness = match family.completeness {
        Completeness::Exact1d => "exact",
        Completeness::Heuristic => "heuristic (lower bound)",
    };
    let ctx = EvalContext::new(&mu, &family)?;

    let mut argmax: Vec<String> = Vec::new();
    let value = match norm {
        NormName::Morrey => {
            let (v, arg) = morrey_argmax_ctx(&ctx, &inst.scalar()?, &params)?;
            argmax.push(format!("cube: {}", describe_cube(&ctx.cubes, arg)));
            v
        }
        NormName::MorreyDoubling => {
            let d = morrey_norm_doubling_ctx(&ctx, &inst.scalar()?, &params)?;
            if d.degenerate {
                eprintln!("warning: no (k, beta)-doubling cube in the family; value is 0 by convention");
            }
            argmax.push(format!("cube: {}", describe_cube(&ctx.cubes, d.argmax)));
            d.value
        }
        NormName::Campanato => {
            let parts = campanato_parts_ctx(&ctx, &inst.scalar()?, &params)?;
            argmax.push(format!(
                "oscillation {} at {}",
                parts.oscillation,
                describe_cube(&ctx.cubes, parts.oscillation_argmax)
            ));
            argmax.push(format!(
                "pair term {} at inner {}",
                parts.pair,
                describe_cube(&ctx.cubes, parts.pair_argmax.map(|i| ctx.pairs[i].inner))
            ));
            parts.total()
        }
        NormName::Rbmo => {
            let limit = NormParams::new(f64::INFINITY, 1.0, 1.5, 5.0, params.r)?;
            let parts = campanato_parts_ctx(&ctx, &inst.scalar()?, &limit)?;
            argmax.push(format!(
                "oscillation {} at {}",
                parts.oscillation,
                describe_cube(&ctx.cubes, parts.oscillation_argmax)
            ));
            argmax.push(format!(
                "pair term {} at inner {}",
                parts.pair,
                describe_cube(&ctx.cubes, parts.pair_argmax.map(|i| ctx.pairs[i].inner))
            ));
            parts.total()
        }
        NormName::Sharp => {
            let values = sharp_maximal_all(&ctx, &inst.scalar()?);
            for (i, v) in values.iter().enumerate() {
                argmax.push(format!("atom {i} at {:?}: {v}", mu.atoms()[i].position.coords));
            }
            values.iter().fold(0.0f64, |a, &b| a.max(b))
        }
        NormName::NetLimit => net_limit(&mu, &inst.scalar()?)?,
        NormName::MorreyLr => {
            let magnitude = lr_values(&inst.vector()?, params.r);
            let (v, arg) = morrey_argmax_ctx(&ctx, &magnitude, &params)?;
            argmax.push(format!("cube: {}", describe_cube(&ctx.cubes, arg)));
            v
        }
        NormName::CampanatoLr => {
            let parts = campanato_parts_lr_ctx(&ctx, &inst.vector()?, &params)?;
            argmax.push(format!(
                "oscillation {} at {}",
                parts.oscillation,
                describe_cube(&ctx.cubes, parts.oscillation_argmax)
            ));
            argmax.push(format!(
                "pair term {} at inner {}",
                parts.pair,
                describe_cube(&ctx.cubes, parts.pair_argmax.map(|i| ctx.pairs[i].inner))
            ));
            parts.total()
        }
        NormName::SharpLr => {
            let values = sharp_maximal_lr_all(&ctx, &inst.vector()?, params.r);
            for (i, v) in values.iter().enumerate() {
                argmax.push(format!("atom {i} at {:?}: {v}", mu.atoms()[i].position.coords));
            }
            values.iter().fold(0.0f64, |a, &b| a.max(b))
        }
    };

    println!("norm: {norm:?}");
    println!("value: {value}");
    for line in &argmax {
        println!("argmax: {line}");
    }
    println!("family: {} cubes, {completeness}", ctx.cubes.len());

    if let Some(path) = output {
        let record = NormRecord {
            norm: format!("{norm:?}"),
            value,
            argmax,
            completeness: completeness.to_string(),
            params,
        };
        let mut text = serde_json::to_string_pretty(&record)?;
        text.push('\n');
        if let Some(parent) = path.parent() {
            std::fs::create_dir_all(parent)?;
        }
        std::fs::write(path, text)?;
    }
    Ok(ExitCode::SUCCESS)
}

#[allow(clippy::too_many_arguments)]
fn cmd_verify(
    suite: &str,
    input: Option<&Path>,
    seed: u64,
    count: usize,
    dim: usize,
    output: Option<&Path>,
    csv: Option<&Path>,
    baseline_path: &Path,
) -> anyhow::Result<ExitCode> {
    if suite != "all" && !suite_names().contains(&suite) {
        bail!(
            "unknown suite {suite:?}; expected one of {} or \"all\"",
            suite_names().join(", ")
        );
    }
    let corpus: Corpus = match input {
        Some(dir) => load_dir(dir).with_context(|| format!("loading corpus from {}", dir.display()))?,
        None => default_corpus(seed, count, dim)?,
    };
    let mut baselines = BaselineStore::load(baseline_path)?;
    let report = run_suite(suite, &corpus, &mut baselines)?;
    if baselines.dirty() {
        baselines.save(baseline_path)?;
        eprintln!("recorded new baselines in {}", baseline_path.display());
    }

    println!(
        "suite {}: {} instances, {} checks, {} failures, {} warnings",
        report.suite,
        report.instance_count,
        report.records.len(),
        report.failures().len(),
        report.warnings.len()
    );
    for (name, value) in &report.baselines {
        println!("baseline {name}: {value}");
    }
    for record in report.failures() {
        println!(
            "FAIL {}: lhs {} vs {} * rhs {}{}",
            record.id,
            record.lhs,
            record.constant,
            record.rhs,
            if record.detail.is_empty() { String::new() } else { format!(" ({})", record.detail) }
        );
    }
    for warning in &report.warnings {
        eprintln!("warning: {warning}");
    }

    if let Some(path) = output {
        report.write_json(path)?;
        println!("report written to {}", path.display());
    }
    if let Some(path) = csv {
        report.write_csv(path)?;
        println!("table written to {}", path.display());
    }

    if report.pass() {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(1))
    }
}
