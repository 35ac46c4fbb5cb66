//! Finite-difference eigenvalue problems on rasterized planar domains.

pub mod assemble;
pub mod domain;
pub mod eigen;

pub use assemble::{assemble, CsrMatrix, DiscreteOperator};
pub use domain::{rasterize, rasterize_on, GridDomain, Lattice, Shape};
pub use eigen::{rayleigh_quotient, smallest_eigenpairs, smallest_eigs, CholeskyFactor, EigenPairs};

use crate::error::{invalid, Error, Result};
use crate::spectrum::{ProblemKind, Provenance, Spectrum};

/// Richardson extrapolation `(4·fine − coarse)/3` of two spectra computed at
/// mesh widths `h` and `h/2`.
///
/// The allowance of each entry is three times the change made by the
/// extrapolation.
pub fn extrapolate(coarse: &Spectrum, fine: &Spectrum) -> Result<Spectrum> {
    if coarse.kind != fine.kind || coarse.dimension != fine.dimension {
        return Err(Error::Mismatch(format!(
            "cannot combine {} (n={}) with {} (n={})",
            coarse.kind, coarse.dimension, fine.kind, fine.dimension
        )));
    }
    if coarse.domain_label != fine.domain_label {
        return Err(Error::Mismatch(format!(
            "domains differ: `{}` vs `{}`",
            coarse.domain_label, fine.domain_label
        )));
    }
    if coarse.len() != fine.len() {
        return Err(Error::Mismatch(format!("lengths differ: {} vs {}", coarse.len(), fine.len())));
    }
    let (hc, hf) = match (coarse.mesh_width, fine.mesh_width) {
        (Some(c), Some(f)) => (c, f),
        _ => return Err(Error::Mismatch("extrapolation needs mesh widths on both spectra".into())),
    };
    if ((hc / hf) - 2.0).abs() > 1e-12 {
        return Err(Error::Mismatch(format!("mesh ratio {} is not 2", hc / hf)));
    }
    let mut pairs: Vec<(f64, f64)> = coarse
        .values
        .iter()
        .zip(&fine.values)
        .map(|(c, f)| {
            let e = (4.0 * f - c) / 3.0;
            (e, 3.0 * (e - f).abs())
        })
        .collect();
    pairs.sort_by(|x, y| x.0.total_cmp(&y.0));
    let (values, allowance): (Vec<f64>, Vec<f64>) = pairs.into_iter().unzip();
    Spectrum::new(
        fine.kind,
        fine.dimension,
        values,
        fine.domain_label.clone(),
        Provenance::DiscreteExtrapolated,
    )?
    .with_mesh_width(hf)
    .with_allowance(allowance)
}

/// Spectra on a sequence of meshes `h, h/2, …` plus the extrapolation of the
/// two finest.
#[derive(Debug, Clone)]
pub struct LevelSpectra {
    pub levels: Vec<Spectrum>,
    pub extrapolated: Spectrum,
}

/// Solves `kind` on `shape` at `levels ≥ 2` successively halved mesh widths.
pub fn solve_levels(
    shape: &Shape,
    label: &str,
    kind: ProblemKind,
    h: f64,
    levels: usize,
    m: usize,
) -> Result<LevelSpectra> {
    if levels < 2 {
        return Err(invalid("extrapolation needs at least two mesh levels"));
    }
    let mut out = Vec::with_capacity(levels);
    let mut hl = h;
    for _ in 0..levels {
        let dom = rasterize(shape, hl, label)?;
        let op = assemble(&dom, kind)?;
        out.push(smallest_eigs(&op, m)?);
        hl *= 0.5;
    }
    let extrapolated = extrapolate(&out[levels - 2], &out[levels - 1])?;
    Ok(LevelSpectra { levels: out, extrapolated })
}

/// Solves `−Δ_h u = f` with zero exterior values.
pub fn solve_poisson(domain: &GridDomain, f: &[f64]) -> Result<Vec<f64>> {
    if f.len() != domain.len() {
        return Err(invalid(format!("right-hand side has {} entries for {} nodes", f.len(), domain.len())));
    }
    let op = assemble(domain, ProblemKind::Dirichlet)?;
    let factor = CholeskyFactor::new(&op.a, 0.0)?;
    let mut u = f.to_vec();
    factor.solve(&mut u);
    Ok(u)
}
