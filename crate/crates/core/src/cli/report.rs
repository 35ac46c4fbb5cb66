use std::path::Path;

use serde::Serialize;

use crate::catalog::{ChainReport, InequalityReport, Status};
use crate::error::Result;

/// Formats with 12 significant digits, switching to exponent form outside
/// `[1e-5, 1e12)`.
pub fn num(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let exp = x.abs().log10().floor() as i32;
    if (-5..12).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        let s = format!("{x:.decimals$}");
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        }
    } else {
        let s = format!("{x:.11e}");
        let (mant, e) = s.split_once('e').expect("exponent form");
        let mant = if mant.contains('.') { mant.trim_end_matches('0').trim_end_matches('.') } else { mant };
        format!("{mant}e{e}")
    }
}

fn opt(x: Option<f64>) -> String {
    x.map(num).unwrap_or_default()
}

fn write_rows(path: &Path, header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(header)?;
    for r in rows {
        w.write_record(&r)?;
    }
    w.flush()?;
    Ok(())
}

/// One eigenvalue of one mesh level (or of the extrapolation).
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumRow {
    pub domain: String,
    pub problem: String,
    pub level: String,
    pub h: f64,
    pub index: usize,
    pub value: f64,
    pub allowance: f64,
}

pub fn write_spectra(path: &Path, rows: &[SpectrumRow]) -> Result<()> {
    write_rows(
        path,
        &["domain", "problem", "level", "h", "index", "value", "allowance"],
        rows.iter().map(|r| {
            vec![
                r.domain.clone(),
                r.problem.clone(),
                r.level.clone(),
                num(r.h),
                r.index.to_string(),
                num(r.value),
                num(r.allowance),
            ]
        }),
    )
}

pub fn write_inequalities(path: &Path, rows: &[InequalityReport]) -> Result<()> {
    write_rows(
        path,
        &["id", "domain", "m", "lhs", "rhs", "slack", "holds", "tolerance", "citation", "status", "window_lower"],
        rows.iter().map(|r| {
            vec![
                r.id.clone(),
                r.domain.clone(),
                r.m.map(|m| m.to_string()).unwrap_or_default(),
                num(r.lhs),
                num(r.rhs),
                num(r.slack),
                r.holds.to_string(),
                num(r.tolerance_used),
                r.citation.clone(),
                r.status.as_str().to_string(),
                opt(r.reference),
            ]
        }),
    )
}

pub fn write_chain(path: &Path, rows: &[ChainReport]) -> Result<()> {
    write_rows(
        path,
        &["domain", "m", "lambda_next", "yang1", "yang2", "hile_protter", "ppw", "hile_protter_slack", "ordered", "implications_hold"],
        rows.iter().map(|c| {
            vec![
                c.domain.clone(),
                c.m.to_string(),
                num(c.lambda_next),
                num(c.yang1),
                num(c.yang2),
                num(c.hile_protter),
                num(c.ppw),
                num(c.hile_protter_slack),
                c.ordered.to_string(),
                c.implications_hold.to_string(),
            ]
        }),
    )
}

/// One row of the constants table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConstantsRow {
    pub n: usize,
    pub c_n: f64,
    pub d_n: f64,
    pub minimizer_t: f64,
    pub j_endpoint: f64,
    pub d_prime_reference: Option<f64>,
}

pub fn write_constants(path: &Path, rows: &[ConstantsRow]) -> Result<()> {
    write_rows(
        path,
        &["n", "c_n", "d_n", "minimizer_t", "J_endpoint", "d_prime_reference"],
        rows.iter().map(|r| {
            vec![r.n.to_string(), num(r.c_n), num(r.d_n), num(r.minimizer_t), num(r.j_endpoint), opt(r.d_prime_reference)]
        }),
    )
}

/// One sample of `J(t)/Γ₁(B₁)`; failed solves keep the row with `ok = false`.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveRow {
    pub t: f64,
    pub ratio: Option<f64>,
    pub error: Option<String>,
}

pub fn write_curve(path: &Path, rows: &[CurveRow]) -> Result<()> {
    write_rows(
        path,
        &["t", "ratio", "ok", "error"],
        rows.iter().map(|r| {
            vec![num(r.t), opt(r.ratio), r.ratio.is_some().to_string(), r.error.clone().unwrap_or_default()]
        }),
    )
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Counts {
    pub proven_held: usize,
    pub proven_failed: usize,
    pub conjecture_held: usize,
    pub conjecture_failed: usize,
    pub informational_inside: usize,
    pub informational_outside: usize,
}

impl Counts {
    pub fn tally(reports: &[InequalityReport]) -> Self {
        let mut c = Counts::default();
        for r in reports {
            let slot = match (r.status, r.holds) {
                (Status::Proven, true) => &mut c.proven_held,
                (Status::Proven, false) => &mut c.proven_failed,
                (Status::Conjecture, true) => &mut c.conjecture_held,
                (Status::Conjecture, false) => &mut c.conjecture_failed,
                (Status::Informational, true) => &mut c.informational_inside,
                (Status::Informational, false) => &mut c.informational_outside,
            };
            *slot += 1;
        }
        c
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TaskError {
    pub task: String,
    pub message: String,
}

/// Contents of `summary.json`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Summary {
    pub schema_version: u32,
    pub counts: Counts,
    pub chain_rows: usize,
    pub chain_violations: usize,
    pub errors: Vec<TaskError>,
    pub files: Vec<String>,
    /// False when any proven inequality fails, the chain ordering breaks, or
    /// any task errored.
    pub ok: bool,
}

pub fn write_summary(path: &Path, summary: &Summary) -> Result<()> {
    let mut text = serde_json::to_string_pretty(summary)?;
    text.push('\n');
    std::fs::write(path, text)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_significant_digits() {
        assert_eq!(num(5.783185962946784), "5.78318596295");
        assert_eq!(num(1.0), "1");
        assert_eq!(num(-0.25), "-0.25");
        assert_eq!(num(104.36310995), "104.36310995");
        assert_eq!(num(1.5e-9), "1.5e-9");
        assert_eq!(num(6.55e13), "6.55e13");
        assert_eq!(num(f64::INFINITY), "inf");
        assert_eq!(num(0.0), "0");
        for x in [std::f64::consts::PI, 1e-7 / 3.0, 2.0e15 / 7.0, 123456.789012345] {
            let back: f64 = num(x).parse().unwrap();
            assert!((back - x).abs() <= 5e-12 * x.abs(), "{x} {}", num(x));
        }
    }
}
