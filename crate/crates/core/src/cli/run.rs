use std::path::{Path, PathBuf};

use rayon::prelude::*;

use super::config::{RunConfig, SCHEMA_VERSION};
use super::report::{
    write_chain, write_constants, write_curve, write_inequalities, write_spectra, write_summary, ConstantsRow, Counts,
    CurveRow, SpectrumRow, Summary, TaskError,
};
use crate::catalog::{chain_check, evaluate_all, ChainReport, InequalityReport, Policy, SpectraBundle};
use crate::error::{invalid, Error, Result};
use crate::grid::{assemble, extrapolate, rasterize, smallest_eigs, Shape};
use crate::spectrum::{ProblemKind, Spectrum};
use crate::two_ball::{c_constant, d_constant, d_prime_reference, endpoint_value, j_of_t};

/// Everything `verify` produced, in deterministic order.
#[derive(Debug, Clone)]
pub struct VerifyOutcome {
    pub spectra: Vec<Spectrum>,
    pub reports: Vec<InequalityReport>,
    pub chains: Vec<ChainReport>,
    pub constants: Vec<ConstantsRow>,
    pub summary: Summary,
}

fn with_pool<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    match threads {
        None => Ok(f()),
        Some(t) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(t)
                .build()
                .map_err(|e| Error::Config(format!("cannot start {t} threads: {e}")))?;
            Ok(pool.install(f))
        }
    }
}

fn spectrum_rows(s: &Spectrum, level: &str, out: &mut Vec<SpectrumRow>) {
    for (i, (v, a)) in s.values.iter().zip(&s.allowance).enumerate() {
        out.push(SpectrumRow {
            domain: s.domain_label.clone(),
            problem: s.kind.as_str().to_string(),
            level: level.to_string(),
            h: s.mesh_width.unwrap_or(f64::NAN),
            index: i,
            value: *v,
            allowance: *a,
        });
    }
}

/// Number of eigenvalues to request so that every index up to `m_max` and
/// every Pólya level up to `k_max` is covered.
pub fn eigen_count(m_max: usize, k_max: usize) -> usize {
    (m_max + 1).max(k_max + 1).max(4)
}

/// Solves every domain × problem × mesh task, evaluates the catalog on the
/// extrapolated spectra, and writes the report files into `out_dir`.
pub fn run_verify(cfg: &RunConfig, out_dir: &Path) -> Result<VerifyOutcome> {
    cfg.validate()?;
    std::fs::create_dir_all(out_dir)?;
    let shapes: Vec<Shape> = cfg.domains.iter().map(|d| d.shape.resolve()).collect::<Result<_>>()?;
    let count = eigen_count(cfg.m_max, cfg.k_max);
    let mut tasks = Vec::new();
    for (di, _) in cfg.domains.iter().enumerate() {
        for &kind in &cfg.problems {
            for level in 0..cfg.mesh.levels {
                tasks.push((di, kind, level, cfg.mesh.h / f64::powi(2.0, level as i32)));
            }
        }
    }
    let solved: Vec<Result<Spectrum>> = with_pool(cfg.threads, || {
        tasks
            .par_iter()
            .map(|&(di, kind, _, h)| {
                let dom = rasterize(&shapes[di], h, cfg.domains[di].label.as_str())?;
                let op = assemble(&dom, kind)?;
                smallest_eigs(&op, count)
            })
            .collect()
    })?;

    let mut errors = Vec::new();
    let mut rows = Vec::new();
    let mut extrapolated = Vec::new();
    let mut bundles: Vec<SpectraBundle> = cfg
        .domains
        .iter()
        .zip(&shapes)
        .map(|(d, s)| SpectraBundle::new(d.label.clone(), 2, Some(s.area())))
        .collect();
    let per = cfg.mesh.levels;
    for (chunk_i, chunk) in solved.chunks(per).enumerate() {
        let (di, kind, _, _) = tasks[chunk_i * per];
        let label = &cfg.domains[di].label;
        let mut levels = Vec::new();
        for (li, r) in chunk.iter().enumerate() {
            match r {
                Ok(s) => {
                    spectrum_rows(s, &li.to_string(), &mut rows);
                    levels.push(s);
                }
                Err(e) => errors.push(TaskError { task: format!("{label}/{kind}/level{li}"), message: e.to_string() }),
            }
        }
        if levels.len() != per {
            continue;
        }
        match extrapolate(levels[per - 2], levels[per - 1]) {
            Ok(e) => {
                spectrum_rows(&e, "extrapolated", &mut rows);
                bundles[di].insert(e.clone())?;
                extrapolated.push(e);
            }
            Err(e) => errors.push(TaskError { task: format!("{label}/{kind}/extrapolate"), message: e.to_string() }),
        }
    }

    let policy = Policy { allowance_scale: cfg.tolerance_scale };
    let mut reports = Vec::new();
    let mut chains = Vec::new();
    for b in &bundles {
        let (r, errs) = evaluate_all(b, cfg.inequalities.as_deref(), cfg.m_max, cfg.k_max, policy);
        reports.extend(r);
        errors.extend(errs.into_iter().map(|(id, e)| TaskError { task: format!("{}/{id}", b.domain), message: e.to_string() }));
        let wants_chain = cfg.inequalities.as_ref().is_none_or(|ids| {
            ids.iter().any(|i| matches!(i.as_str(), "yang1" | "yang2" | "hile_protter" | "ppw_gap"))
        });
        if let (true, Some(s)) = (wants_chain, b.get(ProblemKind::Dirichlet)) {
            for m in 1..=cfg.m_max.min(s.len() - 1) {
                match chain_check(s, m) {
                    Ok(c) => chains.push(c),
                    Err(e) => errors.push(TaskError { task: format!("{}/chain/m{m}", b.domain), message: e.to_string() }),
                }
            }
        }
    }

    let mut files = vec!["spectra.csv".to_string(), "inequalities.csv".into(), "chain.csv".into()];
    write_spectra(&out_dir.join("spectra.csv"), &rows)?;
    write_inequalities(&out_dir.join("inequalities.csv"), &reports)?;
    write_chain(&out_dir.join("chain.csv"), &chains)?;
    let constants = if cfg.dimensions.is_empty() {
        Vec::new()
    } else {
        let c = with_pool(cfg.threads, || run_constants(&cfg.dimensions))??;
        write_constants(&out_dir.join("constants.csv"), &c)?;
        files.push("constants.csv".into());
        c
    };
    files.push("summary.json".into());
    let counts = Counts::tally(&reports);
    let chain_violations = chains.iter().filter(|c| !(c.ordered && c.implications_hold)).count();
    let ok = counts.proven_failed == 0 && chain_violations == 0 && errors.is_empty();
    let summary = Summary {
        schema_version: SCHEMA_VERSION,
        counts,
        chain_rows: chains.len(),
        chain_violations,
        errors,
        files,
        ok,
    };
    write_summary(&out_dir.join("summary.json"), &summary)?;
    Ok(VerifyOutcome { spectra: extrapolated, reports, chains, constants, summary })
}

/// Rows of the constants table, one per dimension, in the given order.
pub fn run_constants(dimensions: &[usize]) -> Result<Vec<ConstantsRow>> {
    dimensions
        .par_iter()
        .map(|&n| {
            let d = d_constant(n)?;
            Ok(ConstantsRow {
                n,
                c_n: c_constant(n)?,
                d_n: d.d,
                minimizer_t: d.minimizer_t,
                j_endpoint: d.j_endpoint,
                d_prime_reference: d_prime_reference(n),
            })
        })
        .collect()
}

/// `J(t)/Γ₁(B₁)` on `points` uniform samples of `t ∈ [0, 1]`.
pub fn run_curve(n: usize, points: usize) -> Result<Vec<CurveRow>> {
    if points < 2 {
        return Err(invalid("a curve needs at least two points"));
    }
    endpoint_value(n)?;
    Ok((0..points)
        .into_par_iter()
        .map(|i| {
            let t = i as f64 / (points - 1) as f64;
            match j_of_t(n, t) {
                Ok(r) => CurveRow { t, ratio: Some(r.ratio), error: None },
                Err(e) => CurveRow { t, ratio: None, error: Some(e.to_string()) },
            }
        })
        .collect())
}

/// Spectra of one problem on one shape at `levels` halved meshes, plus the
/// extrapolation when `levels ≥ 2`.
pub fn run_spectrum(shape: &Shape, kind: ProblemKind, h: f64, levels: usize, m: usize) -> Result<Vec<(String, Spectrum)>> {
    if levels == 0 || m == 0 {
        return Err(invalid("levels and m must be at least 1"));
    }
    shape.validate()?;
    let label = shape.to_string();
    let solved: Vec<Spectrum> = (0..levels)
        .into_par_iter()
        .map(|l| {
            let dom = rasterize(shape, h / f64::powi(2.0, l as i32), label.as_str())?;
            smallest_eigs(&assemble(&dom, kind)?, m)
        })
        .collect::<Result<_>>()?;
    let mut out: Vec<(String, Spectrum)> = solved.iter().enumerate().map(|(i, s)| (i.to_string(), s.clone())).collect();
    if levels >= 2 {
        out.push(("extrapolated".into(), extrapolate(&solved[levels - 2], &solved[levels - 1])?));
    }
    Ok(out)
}

pub(crate) fn spectrum_table(out: &[(String, Spectrum)]) -> Vec<SpectrumRow> {
    let mut rows = Vec::new();
    for (level, s) in out {
        spectrum_rows(s, level, &mut rows);
    }
    rows
}

pub(crate) fn write_constants_file(dir: &Path, rows: &[ConstantsRow]) -> Result<PathBuf> {
    std::fs::create_dir_all(dir)?;
    let p = dir.join("constants.csv");
    write_constants(&p, rows)?;
    Ok(p)
}

pub(crate) fn write_curve_file(dir: &Path, n: usize, rows: &[CurveRow]) -> Result<PathBuf> {
    std::fs::create_dir_all(dir)?;
    let p = dir.join(format!("curve_n{n}.csv"));
    write_curve(&p, rows)?;
    Ok(p)
}
