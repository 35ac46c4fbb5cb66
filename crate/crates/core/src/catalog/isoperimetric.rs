use std::collections::BTreeMap;
use std::sync::Mutex;

use super::membrane::dirichlet_ball_ratio;
use super::{expect_family, lookup, measure, report, Family, InequalityReport, Policy, Sides};
use crate::ball::{buckling_ball, clamped_ball, dirichlet_ball, neumann_ball_mu1, BallSpec};
use crate::error::{invalid, Error, Result};
use crate::specfun::bessel_zero;
use crate::spectrum::{ProblemKind, Spectrum};
use crate::two_ball::{c_constant, d_constant};

/// The spectra of one domain, with its dimension and measure.
#[derive(Debug, Clone, Default)]
pub struct SpectraBundle {
    pub domain: String,
    pub dimension: usize,
    pub area: Option<f64>,
    pub spectra: Vec<Spectrum>,
}

impl SpectraBundle {
    pub fn new(domain: impl Into<String>, dimension: usize, area: Option<f64>) -> Self {
        SpectraBundle { domain: domain.into(), dimension, area, spectra: Vec::new() }
    }

    /// Adds or replaces the spectrum of `s.kind`.
    pub fn insert(&mut self, s: Spectrum) -> Result<()> {
        if s.dimension != self.dimension {
            return Err(Error::Mismatch(format!(
                "{} spectrum has n = {}, bundle has n = {}",
                s.kind, s.dimension, self.dimension
            )));
        }
        self.spectra.retain(|x| x.kind != s.kind);
        self.spectra.push(s);
        Ok(())
    }

    pub fn with(mut self, s: Spectrum) -> Result<Self> {
        self.insert(s)?;
        Ok(self)
    }

    pub fn get(&self, kind: ProblemKind) -> Option<&Spectrum> {
        self.spectra.iter().find(|s| s.kind == kind)
    }

    fn need(&self, kind: ProblemKind, len: usize) -> Result<&Spectrum> {
        let s = self.get(kind).ok_or(Error::MissingSpectrum(kind))?;
        s.require(len)?;
        Ok(s)
    }

    fn ball(&self) -> Result<BallSpec> {
        let area = self.area.ok_or_else(|| invalid(format!("domain `{}` has no area", self.domain)))?;
        BallSpec::with_volume(self.dimension, area)
    }
}

static D_CACHE: Mutex<BTreeMap<usize, f64>> = Mutex::new(BTreeMap::new());

fn cached_d(n: usize) -> Result<f64> {
    if let Some(d) = D_CACHE.lock().expect("cache poisoned").get(&n) {
        return Ok(*d);
    }
    let d = d_constant(n)?.d;
    D_CACHE.lock().expect("cache poisoned").insert(n, d);
    Ok(d)
}

/// Comparisons between `Ω` and the ball `Ω*` of equal measure, and between
/// different problems on `Ω`.
pub fn eval_isoperimetric(id: &str, bundle: &SpectraBundle, policy: Policy) -> Result<InequalityReport> {
    let def = lookup(id)?;
    expect_family(def, &[Family::Isoperimetric])?;
    let n = bundle.dimension;
    use ProblemKind::*;
    let measured = match def.id {
        "faber_krahn" => {
            let s = bundle.need(Dirichlet, 1)?;
            let star = dirichlet_ball(&bundle.ball()?, 1)?.values[0];
            measure(&[s], policy, |v| Ok(Sides::le(star, v[0][0])))?
        }
        "szego_weinberger" => {
            let s = bundle.need(Neumann, 2)?;
            let star = neumann_ball_mu1(&bundle.ball()?)?;
            measure(&[s], policy, |v| Ok(Sides::le(v[0][1], star)))?
        }
        "ppw_ratio" => {
            let s = bundle.need(Dirichlet, 2)?;
            let ratio = dirichlet_ball_ratio(n)?;
            measure(&[s], policy, |v| Ok(Sides::le(v[0][1] / v[0][0], ratio)))?
        }
        "fixed_lambda1" => {
            let s = bundle.need(Dirichlet, 2)?;
            let half = n as f64 / 2.0;
            let j0 = bessel_zero(half - 1.0, 1)?.value;
            let j1 = bessel_zero(half, 1)?.value;
            measure(&[s], policy, |v| {
                let radius = j0 / v[0][0].sqrt();
                Ok(Sides::le(v[0][1], (j1 / radius).powi(2)))
            })?
        }
        "payne_buckling" => {
            let d = bundle.need(Dirichlet, 2)?;
            let b = bundle.need(Buckling, 1)?;
            measure(&[d, b], policy, |v| Ok(Sides::le(v[0][1], v[1][0])))?
        }
        "krahn_l2" => {
            let s = bundle.need(Dirichlet, 2)?;
            let star = dirichlet_ball(&bundle.ball()?, 1)?.values[0];
            let bound = 2f64.powf(2.0 / n as f64) * star;
            measure(&[s], policy, |v| Ok(Sides::le(bound, v[0][1])))?
        }
        "bramble_payne" => {
            let s = bundle.need(Buckling, 1)?;
            let bound = c_constant(n)? * buckling_ball(&bundle.ball()?, 1)?.values[0];
            measure(&[s], policy, |v| Ok(Sides::le(bound, v[0][0])))?
        }
        "two_ball_lower" => {
            let s = bundle.need(Clamped, 1)?;
            let bound = cached_d(n)? * clamped_ball(&bundle.ball()?, 1)?.values[0];
            measure(&[s], policy, |v| Ok(Sides::le(bound, v[0][0])))?
        }
        "polya_szego_buckling" => {
            let s = bundle.need(Buckling, 1)?;
            let star = buckling_ball(&bundle.ball()?, 1)?.values[0];
            measure(&[s], policy, |v| Ok(Sides::le(star, v[0][0])))?
        }
        other => return Err(Error::UnknownInequality(other.to_string())),
    };
    Ok(report(def, &bundle.domain, None, measured))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ball::{ball_spectrum_of, rectangle_spectrum};
    use std::f64::consts::PI;

    fn disk_bundle() -> SpectraBundle {
        let spec = BallSpec::unit(2).unwrap();
        let mut b = SpectraBundle::new("disk", 2, Some(PI));
        for kind in ProblemKind::ALL {
            b.insert(ball_spectrum_of(kind, &spec, 6).unwrap()).unwrap();
        }
        b
    }

    #[test]
    fn disk_is_the_equality_case() {
        let b = disk_bundle();
        for id in ["faber_krahn", "szego_weinberger", "ppw_ratio", "fixed_lambda1", "payne_buckling", "two_ball_lower"] {
            let r = eval_isoperimetric(id, &b, Policy::default()).unwrap();
            assert!(r.holds && r.slack.abs() <= 1e-8 * r.rhs.abs(), "{id}: {r:?}");
        }
        for id in ["krahn_l2", "bramble_payne"] {
            let r = eval_isoperimetric(id, &b, Policy::default()).unwrap();
            assert!(r.holds && r.slack > 0.1 * r.rhs, "{id}");
        }
    }

    #[test]
    fn square_faber_krahn_strict() {
        let sq = rectangle_spectrum(1.0, 1.0, ProblemKind::Dirichlet, 3).unwrap();
        let b = SpectraBundle::new("square", 2, Some(1.0)).with(sq).unwrap();
        let r = eval_isoperimetric("faber_krahn", &b, Policy::default()).unwrap();
        let j = bessel_zero(0.0, 1).unwrap().value;
        assert!((r.rhs - 2.0 * PI * PI).abs() < 1e-12);
        assert!((r.lhs - j * j * PI).abs() < 1e-9);
        assert!(r.slack > 0.0);
    }

    #[test]
    fn missing_inputs_reported() {
        let b = SpectraBundle::new("none", 2, Some(1.0));
        assert!(matches!(
            eval_isoperimetric("faber_krahn", &b, Policy::default()),
            Err(Error::MissingSpectrum(ProblemKind::Dirichlet))
        ));
        let mut b = disk_bundle();
        b.area = None;
        assert!(eval_isoperimetric("faber_krahn", &b, Policy::default()).is_err());
        assert!(eval_isoperimetric("yang1", &b, Policy::default()).is_err());
        let three = ball_spectrum_of(ProblemKind::Dirichlet, &BallSpec::unit(3).unwrap(), 2).unwrap();
        assert!(b.insert(three).is_err());
    }
}
