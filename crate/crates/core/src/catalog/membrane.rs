use super::{expect_family, expect_kind, lookup, measure, report, Family, InequalityReport, Policy, Sides};
use crate::error::{invalid, Error, Result};
use crate::specfun::{bessel_zero, brent};
use crate::spectrum::{ProblemKind, Spectrum};

/// `(j_{n/2,1} / j_{n/2−1,1})²`, the value of `λ₂/λ₁` for any `n`-ball.
pub(crate) fn dirichlet_ball_ratio(n: usize) -> Result<f64> {
    let half = n as f64 / 2.0;
    let hi = bessel_zero(half, 1)?.value;
    let lo = bessel_zero(half - 1.0, 1)?.value;
    Ok((hi / lo).powi(2))
}

fn check_prefix(lams: &[f64], n: usize) -> Result<(f64, f64, f64)> {
    if lams.is_empty() || n < 2 {
        return Err(invalid("need m ≥ 1 eigenvalues and n ≥ 2"));
    }
    let m = lams.len() as f64;
    let s: f64 = lams.iter().sum();
    let q: f64 = lams.iter().map(|l| l * l).sum();
    Ok((m, s, q))
}

/// Larger root of `m x² − 2(1+2/n) S x + (1+4/n) Q`, with `S = Σλ_i` and
/// `Q = Σλ_i²` over the given prefix.
pub fn yang1_bound(lams: &[f64], n: usize) -> Result<f64> {
    let (m, s, q) = check_prefix(lams, n)?;
    let nf = n as f64;
    let b = (1.0 + 2.0 / nf) * s;
    let mut disc = b * b - m * (1.0 + 4.0 / nf) * q;
    if disc < 0.0 {
        if disc < -1e-12 * b * b {
            return Err(Error::Inconsistent(format!(
                "Yang discriminant {disc:e} is negative; eigenvalues {lams:?} cannot be a Dirichlet spectrum"
            )));
        }
        disc = 0.0;
    }
    Ok((b + disc.sqrt()) / m)
}

/// `(1+4/n) · mean(λ₁..λ_m)`.
pub fn yang2_bound(lams: &[f64], n: usize) -> Result<f64> {
    let (m, s, _) = check_prefix(lams, n)?;
    Ok((1.0 + 4.0 / n as f64) * s / m)
}

/// `λ_m + (4/mn) Σλ_i`.
pub(crate) fn ppw_bound(lams: &[f64], n: usize) -> Result<f64> {
    let (m, s, _) = check_prefix(lams, n)?;
    Ok(lams[lams.len() - 1] + 4.0 * s / (m * n as f64))
}

/// `Σ λ_i/(x − λ_i)`.
pub(crate) fn hile_protter_sum(lams: &[f64], x: f64) -> f64 {
    lams.iter().map(|l| if x > *l { l / (x - l) } else { f64::INFINITY }).sum()
}

/// The largest `x > λ_m` with `Σ λ_i/(x − λ_i) ≥ mn/4`, i.e. the explicit form
/// of the Hile-Protter bound on `λ_{m+1}`.
pub fn hile_protter_bound(lams: &[f64], n: usize) -> Result<f64> {
    let (m, _, _) = check_prefix(lams, n)?;
    let target = m * n as f64 / 4.0;
    let top = lams[lams.len() - 1];
    let hi = ppw_bound(lams, n)?;
    let g = |x: f64| hile_protter_sum(lams, x) - target;
    if g(hi) >= 0.0 {
        return Ok(hi);
    }
    let mut lo = top + 1e-12 * top.max(1.0);
    while g(lo) < 0.0 {
        lo = top + (lo - top) * 0.5;
        if lo <= top {
            return Ok(top);
        }
    }
    brent(g, lo, hi, 1e-14 * hi)
}

/// Universal gap bounds for `λ_{m+1}` in terms of `λ₁..λ_m`.
pub fn eval_membrane_gap(id: &str, s: &Spectrum, m: usize, policy: Policy) -> Result<InequalityReport> {
    let def = lookup(id)?;
    expect_family(def, &[Family::MembraneGap])?;
    expect_kind(s, ProblemKind::Dirichlet)?;
    if m == 0 {
        return Err(invalid("index m starts at 1"));
    }
    s.require(m + 1)?;
    let n = s.dimension;
    let ball = if def.id == "ratio_ball_m" { dirichlet_ball_ratio(n)? } else { 0.0 };
    let measured = measure(&[s], policy, |v| {
        let lams = &v[0][..m];
        let next = v[0][m];
        Ok(match def.id {
            "ppw_gap" => Sides::le(next, ppw_bound(lams, n)?),
            "yang1" => Sides::le(next, yang1_bound(lams, n)?),
            "yang2" => Sides::le(next, yang2_bound(lams, n)?),
            "hile_protter" => Sides::le(m as f64 * n as f64 / 4.0, hile_protter_sum(lams, next)),
            "ratio_ball_m" => Sides::le(next / lams[m - 1], ball),
            other => return Err(Error::UnknownInequality(other.to_string())),
        })
    })?;
    Ok(report(def, &s.domain_label, Some(m), measured))
}

/// Bounds on the low eigenvalues `λ₂..λ_{n+1}` relative to `λ₁`.
pub fn eval_membrane_low(id: &str, s: &Spectrum, policy: Policy) -> Result<InequalityReport> {
    let def = lookup(id)?;
    expect_family(def, &[Family::MembraneLow])?;
    expect_kind(s, ProblemKind::Dirichlet)?;
    let n = s.dimension;
    if let Some(d) = def.requires.dimension {
        if d != n {
            return Err(Error::Mismatch(format!("`{id}` is stated for n = {d}, spectrum has n = {n}")));
        }
    }
    s.require((def.requires.min_len)(n))?;
    let ball = if def.id == "ppw_sum_disk" { n as f64 * dirichlet_ball_ratio(n)? } else { 0.0 };
    let measured = measure(&[s], policy, |v| {
        let l = v[0];
        let trace = || l[1..=n].iter().sum::<f64>() / l[0];
        Ok(match def.id {
            "sum_n4" => Sides::le(trace(), n as f64 + 4.0),
            "brands" => Sides::le(trace(), n as f64 + 3.0 + l[0] / l[1]),
            "l2l3_window" => Sides::window((l[1] + l[2]) / l[0], 5.077, 5.50661),
            "l3_window" => Sides::window(l[2] / l[0], 35.0 / 11.0, 3.83103),
            "ppw_sum_disk" => Sides::le(trace(), ball),
            other => return Err(Error::UnknownInequality(other.to_string())),
        })
    })?;
    Ok(report(def, &s.domain_label, None, measured))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ball::{dirichlet_ball, rectangle_spectrum, BallSpec};
    use crate::spectrum::Provenance;

    fn synthetic(values: Vec<f64>) -> Spectrum {
        Spectrum::new(ProblemKind::Dirichlet, 2, values, "synthetic", Provenance::ClosedForm).unwrap()
    }

    #[test]
    fn disk_ppw_gap_first_index() {
        let disk = dirichlet_ball(&BallSpec::unit(2).unwrap(), 6).unwrap();
        let r = eval_membrane_gap("ppw_gap", &disk, 1, Policy::default()).unwrap();
        assert!((r.lhs / disk.values[0] - 2.5387).abs() < 1e-4);
        assert!((r.rhs / disk.values[0] - 3.0).abs() < 1e-12);
        assert!(r.holds);
    }

    #[test]
    fn hile_protter_hand_evaluated() {
        // λ = (1, 2, 3), m = 2: 1/(3−1) + 2/(3−2) = 5/2 against mn/4 = 1
        let s = synthetic(vec![1.0, 2.0, 3.0]);
        let r = eval_membrane_gap("hile_protter", &s, 2, Policy::default()).unwrap();
        assert_eq!(r.rhs, 2.5);
        assert_eq!(r.lhs, 1.0);
        assert_eq!(r.slack, 1.5);
        let b = hile_protter_bound(&[1.0, 2.0], 2).unwrap();
        assert!((hile_protter_sum(&[1.0, 2.0], b) - 1.0).abs() < 1e-10);
    }

    #[test]
    fn first_index_collapse() {
        for l in [1.0, 7.5, 123.0] {
            for n in 2..6 {
                let y1 = yang1_bound(&[l], n).unwrap();
                let y2 = yang2_bound(&[l], n).unwrap();
                let ppw = ppw_bound(&[l], n).unwrap();
                let exact = (1.0 + 4.0 / n as f64) * l;
                assert!((y1 - exact).abs() < 1e-12 * exact);
                assert!((y2 - ppw).abs() < 1e-12 * ppw);
                assert!((hile_protter_bound(&[l], n).unwrap() - exact).abs() < 1e-10 * exact);
            }
        }
        let y1 = yang1_bound(&[3.0; 5], 2).unwrap();
        assert!((y1 - 9.0).abs() < 1e-12);
    }

    #[test]
    fn ppw_and_yang2_agree_at_first_index() {
        let disk = dirichlet_ball(&BallSpec::unit(3).unwrap(), 4).unwrap();
        let a = eval_membrane_gap("ppw_gap", &disk, 1, Policy::default()).unwrap();
        let b = eval_membrane_gap("yang2", &disk, 1, Policy::default()).unwrap();
        assert!((a.rhs - b.rhs).abs() <= 1e-12 * a.rhs);
    }

    #[test]
    fn negative_discriminant_is_inconsistent() {
        assert!(matches!(yang1_bound(&[1.0, 100.0], 2), Err(Error::Inconsistent(_))));
        let s = synthetic(vec![1.0, 100.0, 101.0]);
        assert!(eval_membrane_gap("yang1", &s, 2, Policy::default()).is_err());
    }

    #[test]
    fn short_spectrum_rejected() {
        let s = synthetic(vec![1.0, 2.0]);
        assert!(matches!(
            eval_membrane_gap("ppw_gap", &s, 2, Policy::default()),
            Err(Error::SpectrumTooShort { need: 3, have: 2 })
        ));
        assert!(eval_membrane_gap("brands", &s, 1, Policy::default()).is_err());
    }

    #[test]
    fn rectangle_windows_and_brands() {
        let r = rectangle_spectrum(8f64.sqrt(), 3f64.sqrt(), ProblemKind::Dirichlet, 4).unwrap();
        let w = eval_membrane_low("l3_window", &r, Policy::default()).unwrap();
        assert!((w.lhs - 35.0 / 11.0).abs() < 1e-12);
        assert!(w.holds);
        let sq = rectangle_spectrum(1.0, 1.0, ProblemKind::Dirichlet, 4).unwrap();
        // λ = π²(2, 5, 5): (λ₂+λ₃)/λ₁ = 5 against 5 + 2/5
        let b = eval_membrane_low("brands", &sq, Policy::default()).unwrap();
        assert!((b.lhs - 5.0).abs() < 1e-12 && (b.rhs - 5.4).abs() < 1e-12);
        let disk = dirichlet_ball(&BallSpec::unit(2).unwrap(), 4).unwrap();
        let w = eval_membrane_low("l2l3_window", &disk, Policy::default()).unwrap();
        assert!((w.lhs - 5.077).abs() < 1e-2 && w.holds);
        let c = eval_membrane_low("ppw_sum_disk", &disk, Policy::default()).unwrap();
        assert!(c.slack.abs() < 1e-9);
    }
}
