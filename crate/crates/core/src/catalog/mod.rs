//! The inequality catalog: every bound as a checkable predicate over spectra.
//!
//! Reports are oriented as `lhs ≤ rhs`, so `slack = rhs − lhs` is
//! nonnegative exactly when the inequality holds. Lower bounds such as
//! `λ₁(Ω) ≥ λ₁(Ω*)` therefore put the bound on the left.

mod chain;
mod defs;
mod isoperimetric;
mod membrane;
mod plate;
mod polya;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spectrum::{ProblemKind, Spectrum};

pub use chain::{chain_check, ChainReport};
pub use defs::{definitions, lookup, Family, InequalityDef, Requires, Status};
pub use isoperimetric::{eval_isoperimetric, SpectraBundle};
pub use membrane::{eval_membrane_gap, eval_membrane_low, hile_protter_bound, yang1_bound, yang2_bound};
pub use plate::{eval_buckling, eval_plate, hile_yeh_cubic_root};
pub use polya::eval_polya;

/// Relative round-off floor on every tolerance.
pub const RELATIVE_FLOOR: f64 = 1e-9;

/// Scaling applied to discretization allowances.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Policy {
    pub allowance_scale: f64,
}

impl Default for Policy {
    fn default() -> Self {
        Policy { allowance_scale: 1.0 }
    }
}

/// One evaluated inequality.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InequalityReport {
    pub id: String,
    pub domain: String,
    pub m: Option<usize>,
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
    pub holds: bool,
    pub tolerance_used: f64,
    pub status: Status,
    pub family: Family,
    pub citation: String,
    /// Lower end of a two-sided window, when the check is a range check.
    pub reference: Option<f64>,
}

/// Two sides of an inequality plus its slack.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Sides {
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
    pub reference: Option<f64>,
}

impl Sides {
    pub fn le(lhs: f64, rhs: f64) -> Self {
        Sides { lhs, rhs, slack: rhs - lhs, reference: None }
    }

    /// `lower ≤ value ≤ upper`, with `lhs = value` and `rhs = upper`.
    pub fn window(value: f64, lower: f64, upper: f64) -> Self {
        Sides { lhs: value, rhs: upper, slack: (upper - value).min(value - lower), reference: Some(lower) }
    }
}

/// Evaluates `f` on the spectra and propagates their allowances into the
/// slack by one-sided differences.
pub(crate) fn measure<F>(inputs: &[&Spectrum], policy: Policy, f: F) -> Result<(Sides, f64)>
where
    F: Fn(&[&[f64]]) -> Result<Sides>,
{
    let base: Vec<&[f64]> = inputs.iter().map(|s| s.values.as_slice()).collect();
    let sides = f(&base)?;
    let mut propagated = 0.0;
    if sides.slack.is_finite() && policy.allowance_scale > 0.0 {
        for (si, s) in inputs.iter().enumerate() {
            for (i, &a) in s.allowance.iter().enumerate() {
                if a == 0.0 {
                    continue;
                }
                let mut bumped: Vec<Vec<f64>> = inputs.iter().map(|s| s.values.clone()).collect();
                let v = bumped[si][i];
                let step = 1e-7 * v.abs().max(a);
                bumped[si][i] = v + step;
                let views: Vec<&[f64]> = bumped.iter().map(|v| v.as_slice()).collect();
                let moved = f(&views)?.slack;
                let slope = if moved.is_finite() { (moved - sides.slack) / step } else { 0.0 };
                propagated += slope.abs() * a;
            }
        }
    }
    let scale = [sides.lhs, sides.rhs].iter().filter(|v| v.is_finite()).fold(0.0f64, |m, v| m.max(v.abs()));
    let tolerance = (RELATIVE_FLOOR * scale).max(policy.allowance_scale * propagated);
    Ok((sides, tolerance))
}

pub(crate) fn report(
    def: &InequalityDef,
    domain: &str,
    m: Option<usize>,
    (sides, tolerance): (Sides, f64),
) -> InequalityReport {
    InequalityReport {
        id: def.id.to_string(),
        domain: domain.to_string(),
        m,
        lhs: sides.lhs,
        rhs: sides.rhs,
        slack: sides.slack,
        holds: sides.slack >= -tolerance,
        tolerance_used: tolerance,
        status: def.status,
        family: def.family,
        citation: def.citation.to_string(),
        reference: sides.reference,
    }
}

pub(crate) fn expect_kind(s: &Spectrum, kind: ProblemKind) -> Result<()> {
    if s.kind != kind {
        return Err(Error::Mismatch(format!("expected a {kind} spectrum, got {}", s.kind)));
    }
    Ok(())
}

pub(crate) fn expect_family(def: &InequalityDef, families: &[Family]) -> Result<()> {
    if !families.contains(&def.family) {
        return Err(Error::Mismatch(format!("`{}` is a {} inequality", def.id, def.family.as_str())));
    }
    Ok(())
}

/// Runs every applicable catalog entry on `bundle` for indices `m ≤ m_max`
/// and Pólya levels `k ≤ k_max`.
///
/// Entries whose spectra are absent, too short, or of the wrong dimension are
/// skipped; evaluation errors are returned alongside the reports.
pub fn evaluate_all(
    bundle: &SpectraBundle,
    filter: Option<&[String]>,
    m_max: usize,
    k_max: usize,
    policy: Policy,
) -> (Vec<InequalityReport>, Vec<(String, Error)>) {
    let mut out = Vec::new();
    let mut errors = Vec::new();
    for def in definitions() {
        if let Some(ids) = filter {
            if !ids.iter().any(|i| i == def.id) {
                continue;
            }
        }
        if !def.requires.applies(bundle) {
            continue;
        }
        let mut push = |r: Result<Vec<InequalityReport>>| match r {
            Ok(v) => out.extend(v),
            Err(e) => errors.push((def.id.to_string(), e)),
        };
        match def.family {
            Family::Polya => {
                let kind = def.requires.kinds[0];
                let s = bundle.get(kind).expect("checked by applies");
                push(eval_polya(def.id, s, bundle.area.unwrap_or(f64::NAN), k_max, policy));
            }
            Family::Isoperimetric => push(eval_isoperimetric(def.id, bundle, policy).map(|r| vec![r])),
            _ => {
                let s = bundle.get(def.requires.kinds[0]).expect("checked by applies");
                if def.requires.indexed {
                    let top = m_max.min(s.len().saturating_sub(1));
                    for m in 1..=top {
                        push(eval_indexed(def, s, m, policy).map(|r| vec![r]));
                    }
                } else {
                    push(eval_single(def, s, policy).map(|r| vec![r]));
                }
            }
        }
    }
    (out, errors)
}

fn eval_indexed(def: &InequalityDef, s: &Spectrum, m: usize, policy: Policy) -> Result<InequalityReport> {
    match def.family {
        Family::MembraneGap => eval_membrane_gap(def.id, s, m, policy),
        Family::Plate => eval_plate(def.id, s, m, policy),
        _ => Err(Error::Inconsistent(format!("`{}` is not indexed", def.id))),
    }
}

fn eval_single(def: &InequalityDef, s: &Spectrum, policy: Policy) -> Result<InequalityReport> {
    match def.family {
        Family::MembraneLow => eval_membrane_low(def.id, s, policy),
        Family::Plate => eval_plate(def.id, s, 1, policy),
        Family::Buckling => eval_buckling(def.id, s, policy),
        _ => Err(Error::Inconsistent(format!("`{}` needs an index", def.id))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectrum::Provenance;

    #[test]
    fn allowance_propagates_linearly() {
        let s = Spectrum::new(ProblemKind::Dirichlet, 2, vec![1.0, 2.0], "x", Provenance::DiscreteExtrapolated)
            .unwrap()
            .with_allowance(vec![0.1, 0.2])
            .unwrap();
        let (sides, tol) = measure(&[&s], Policy::default(), |v| Ok(Sides::le(v[0][1], 3.0 * v[0][0]))).unwrap();
        assert_eq!(sides.slack, 1.0);
        assert!((tol - 0.5).abs() < 1e-6);
        let (_, tol) =
            measure(&[&s], Policy { allowance_scale: 2.0 }, |v| Ok(Sides::le(v[0][1], 3.0 * v[0][0]))).unwrap();
        assert!((tol - 1.0).abs() < 1e-6);
        let (_, tol) =
            measure(&[&s], Policy { allowance_scale: 0.0 }, |v| Ok(Sides::le(v[0][1], 3.0 * v[0][0]))).unwrap();
        assert!((tol - 3e-9).abs() < 1e-20);
    }

    #[test]
    fn window_slack() {
        let w = Sides::window(5.2, 5.0, 5.5);
        assert!((w.slack - 0.2).abs() < 1e-12);
        assert!(Sides::window(4.0, 5.0, 5.5).slack < 0.0);
        assert!(Sides::window(6.0, 5.0, 5.5).slack < 0.0);
    }
}
