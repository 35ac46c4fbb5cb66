use super::{expect_family, expect_kind, lookup, measure, report, Family, InequalityReport, Policy, Sides};
use crate::ball::{buckling_ball, clamped_ball, BallSpec};
use crate::error::{invalid, Error, Result};
use crate::specfun::brent;
use crate::spectrum::{ProblemKind, Spectrum};

/// The root `x > 1` of `(x − 1)³ = 512x/(n²(n+2))`.
pub fn hile_yeh_cubic_root(n: usize) -> Result<f64> {
    if n < 2 {
        return Err(invalid(format!("dimension must be at least 2, got {n}")));
    }
    let nf = n as f64;
    let k = 512.0 / (nf * nf * (nf + 2.0));
    let g = |x: f64| (x - 1.0).powi(3) - k * x;
    // g(1) < 0 and g grows like x³
    let mut hi = 2.0;
    while g(hi) < 0.0 {
        hi *= 2.0;
    }
    brent(g, 1.0, hi, 1e-14)
}

fn ratio_of_ball(first: &Spectrum) -> f64 {
    first.values[1] / first.values[0]
}

/// Universal bounds for the clamped plate eigenvalues `Γ_i`.
///
/// `m` is ignored by the non-indexed entries.
pub fn eval_plate(id: &str, s: &Spectrum, m: usize, policy: Policy) -> Result<InequalityReport> {
    let def = lookup(id)?;
    expect_family(def, &[Family::Plate])?;
    expect_kind(s, ProblemKind::Clamped)?;
    let n = s.dimension;
    let nf = n as f64;
    let kappa = 8.0 * (nf + 2.0) / (nf * nf);
    if def.requires.indexed {
        if m == 0 {
            return Err(invalid("index m starts at 1"));
        }
        s.require(m + 1)?;
        let mf = m as f64;
        let measured = measure(&[s], policy, |v| {
            let g = &v[0][..m];
            let next = v[0][m];
            let sum: f64 = g.iter().sum();
            let sqrt_sum: f64 = g.iter().map(|x| x.sqrt()).sum();
            Ok(match def.id {
                "ppw_plate_gap" => Sides::le(next, g[m - 1] + kappa / mf * sum),
                "ppw_plate_gap_sqrt" => Sides::le(next, g[m - 1] + kappa / (mf * mf) * sqrt_sum * sqrt_sum),
                "hile_yeh" => {
                    let weighted: f64 = g.iter().map(|x| x.sqrt() / (next - x)).sum();
                    Sides::le(mf * mf / kappa, weighted * sqrt_sum)
                }
                "conj_356" => {
                    let r: f64 = g.iter().map(|x| (x / (next - x)).sqrt()).sum();
                    Sides::le(mf * mf / kappa, r * r)
                }
                "cheb_357" => Sides::le(mf / kappa, g.iter().map(|x| x / (next - x)).sum()),
                "ratio_165" => Sides::le(next / g[m - 1], (1.0 + 4.0 / nf).powi(2)),
                other => return Err(Error::UnknownInequality(other.to_string())),
            })
        })?;
        return Ok(report(def, &s.domain_label, Some(m), measured));
    }
    s.require((def.requires.min_len)(n))?;
    let constant = match def.id {
        "hile_yeh_cubic" => hile_yeh_cubic_root(n)?,
        "plate_ratio_ball" => ratio_of_ball(&clamped_ball(&BallSpec::unit(n)?, 2)?),
        _ => 0.0,
    };
    let measured = measure(&[s], policy, |v| {
        let g = v[0];
        Ok(match def.id {
            "sum_plate_sqrt" => Sides::le(g[1..=n].iter().map(|x| x.sqrt()).sum::<f64>() / g[0].sqrt(), nf + 4.0),
            "sum_plate" => Sides::le(g[1..=n].iter().sum::<f64>() / g[0], nf + 24.0),
            "hile_yeh_cubic" | "plate_ratio_ball" => Sides::le(g[1] / g[0], constant),
            other => return Err(Error::UnknownInequality(other.to_string())),
        })
    })?;
    Ok(report(def, &s.domain_label, None, measured))
}

/// Universal bounds for the buckling eigenvalues `Λ_i`.
pub fn eval_buckling(id: &str, s: &Spectrum, policy: Policy) -> Result<InequalityReport> {
    let def = lookup(id)?;
    expect_family(def, &[Family::Buckling])?;
    expect_kind(s, ProblemKind::Buckling)?;
    let n = s.dimension;
    let nf = n as f64;
    s.require((def.requires.min_len)(n))?;
    let ball = if def.id == "buckling_ratio_ball" {
        ratio_of_ball(&buckling_ball(&BallSpec::unit(n)?, 2)?)
    } else {
        0.0
    };
    let measured = measure(&[s], policy, |v| {
        let l = v[0];
        Ok(match def.id {
            "ppw_buckling" => Sides::le(l[1] / l[0], 1.0 + 4.0 / nf),
            "hile_yeh_buckling" => Sides::le(l[1] / l[0], (nf * nf + 8.0 * nf + 20.0) / (nf + 2.0).powi(2)),
            "sum_buckling" => Sides::le(l[1..=n].iter().sum::<f64>() / l[0], nf + 4.0),
            "buckling_ratio_ball" => Sides::le(l[1] / l[0], ball),
            other => return Err(Error::UnknownInequality(other.to_string())),
        })
    })?;
    Ok(report(def, &s.domain_label, None, measured))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectrum::Provenance;

    #[test]
    fn cubic_roots() {
        assert!((hile_yeh_cubic_root(2).unwrap() - 7.103).abs() < 1e-3);
        assert!((hile_yeh_cubic_root(3).unwrap() - 4.792).abs() < 1e-3);
        for n in 2..10 {
            let x = hile_yeh_cubic_root(n).unwrap();
            let nf = n as f64;
            assert!(((x - 1.0).powi(3) - 512.0 * x / (nf * nf * (nf + 2.0))).abs() < 1e-10 * x);
            // never weaker than the squared PPW ratio
            assert!(x <= (1.0 + 4.0 / nf).powi(2));
        }
    }

    #[test]
    fn clamped_disk_ratio_below_cubic() {
        let disk = clamped_ball(&BallSpec::unit(2).unwrap(), 4).unwrap();
        let r = eval_plate("hile_yeh_cubic", &disk, 1, Policy::default()).unwrap();
        assert!((r.lhs - 4.3311).abs() < 1e-3 && r.holds);
        let c = eval_plate("plate_ratio_ball", &disk, 1, Policy::default()).unwrap();
        assert!(c.slack.abs() < 1e-12);
    }

    #[test]
    fn sum_plate_extreme_profile() {
        // Γ_i = Γ₁ for i ≤ n and Γ_{n+1} = 25Γ₁ saturates both trace forms
        let s = Spectrum::new(ProblemKind::Clamped, 2, vec![1.0, 1.0, 25.0], "x", Provenance::ClosedForm).unwrap();
        let a = eval_plate("sum_plate_sqrt", &s, 1, Policy::default()).unwrap();
        let b = eval_plate("sum_plate", &s, 1, Policy::default()).unwrap();
        assert_eq!(a.lhs, 6.0);
        assert_eq!(a.slack, 0.0);
        assert_eq!(b.lhs, 26.0);
        assert_eq!(b.slack, 0.0);
    }

    #[test]
    fn indexed_plate_bounds_on_ball() {
        let ball = clamped_ball(&BallSpec::unit(2).unwrap(), 10).unwrap();
        for id in ["ppw_plate_gap", "ppw_plate_gap_sqrt", "hile_yeh", "cheb_357", "ratio_165"] {
            for m in 1..=8 {
                let r = eval_plate(id, &ball, m, Policy::default()).unwrap();
                assert!(r.holds, "{id} m={m}: {r:?}");
            }
        }
        // the square-root form is the sharper gap bound
        let a = eval_plate("ppw_plate_gap", &ball, 4, Policy::default()).unwrap();
        let b = eval_plate("ppw_plate_gap_sqrt", &ball, 4, Policy::default()).unwrap();
        assert!(b.rhs <= a.rhs);
    }

    #[test]
    fn buckling_constants() {
        let disk = buckling_ball(&BallSpec::unit(2).unwrap(), 3).unwrap();
        let hy = eval_buckling("hile_yeh_buckling", &disk, Policy::default()).unwrap();
        assert_eq!(hy.rhs, 2.5);
        assert!((hy.lhs - 1.796).abs() < 1e-2);
        let s4 = buckling_ball(&BallSpec::unit(4).unwrap(), 5).unwrap();
        assert_eq!(eval_buckling("ppw_buckling", &s4, Policy::default()).unwrap().rhs, 2.0);
        assert!(eval_buckling("sum_buckling", &disk, Policy::default()).unwrap().holds);
        assert!(eval_buckling("ppw_gap", &disk, Policy::default()).is_err());
    }
}
