//! The two-ball problem: a clamped-plate type eigenproblem posed on a pair of
//! balls `B_a`, `B_b` with `a^n + b^n = 1`, coupled through their boundaries.
//! Its lowest eigenvalue `J(a)`, minimized over `a`, gives the constant `d_n`
//! in `Γ₁(Ω) ≥ d_n Γ₁(Ω*)`.
//!
//! With `k = μ^{1/4}`, `ν = n/2 − 1` and radial solutions
//! `r^{−ν}[A J_ν(kr) + B I_ν(kr)]` on each ball, the Dirichlet condition at the
//! rim eliminates the `I_ν` coefficients and the two coupling conditions leave
//! a 2×2 determinant. After dividing each column by its growing `I_ν` factor it
//! reads
//!
//! `F(k) = b^{n−1} J_ν(ka) G(kb) + a^{n−1} J_ν(kb) G(ka)`,
//! `G(z) = J_{ν+1}(z) + [I_{ν+1}(z)/I_ν(z)] J_ν(z)`,
//!
//! which is symmetric in `a ↔ b` and reduces to the clamped-ball function
//! `G(k)` as `a → 0`.

use rayon::prelude::*;

use crate::ball::{clamped_ball, BallSpec};
use crate::error::{invalid, Error, Result};
use crate::specfun::{self, brent, clamped_secular_raw, j_raw, BESSEL_I_MAX_ARG};

/// Below this radius the small ball is treated as absent.
pub const DEGENERATE_RADIUS: f64 = 1e-3;
/// Number of uniform `t = a^n` samples used before refining the minimum.
pub const T_GRID_POINTS: usize = 65;

/// `J(a)` at one split of the volume.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoBallResult {
    pub n: usize,
    pub a: f64,
    pub b: f64,
    /// `t = a^n`, the volume fraction of the first ball.
    pub t: f64,
    /// Lowest eigenvalue `J(a)`.
    pub j: f64,
    /// `J(a) / Γ₁(B₁)`.
    pub ratio: f64,
}

/// Minimum of `J` over the volume split.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DConstant {
    pub n: usize,
    pub d: f64,
    pub minimizer_a: f64,
    pub minimizer_t: f64,
    /// `Γ₁(B₁) = J(0) = J(1)`.
    pub j_endpoint: f64,
}

fn check_dim(n: usize) -> Result<()> {
    if n < 2 {
        return Err(invalid(format!("dimension must be at least 2, got {n}")));
    }
    Ok(())
}

fn unit_clamped_root(n: usize) -> Result<f64> {
    let g = clamped_ball(&BallSpec::unit(n)?, 1)?.values[0];
    Ok(g.powf(0.25))
}

/// `Γ₁` of the unit ball, the common endpoint value `J(0) = J(1)`.
pub fn endpoint_value(n: usize) -> Result<f64> {
    check_dim(n)?;
    Ok(clamped_ball(&BallSpec::unit(n)?, 1)?.values[0])
}

fn secular_k(n: usize, a: f64, b: f64, k: f64) -> f64 {
    let nu = n as f64 / 2.0 - 1.0;
    let p = (n - 1) as i32;
    b.powi(p) * j_raw(nu, k * a) * clamped_secular_raw(nu, k * b)
        + a.powi(p) * j_raw(nu, k * b) * clamped_secular_raw(nu, k * a)
}

/// The column-scaled secular determinant at eigenvalue `μ`; its sign changes
/// bracket the eigenvalues of the two-ball problem with radii `a` and
/// `b = (1 − a^n)^{1/n}`.
pub fn secular_det(n: usize, a: f64, mu: f64) -> Result<f64> {
    check_dim(n)?;
    if !(a > 0.0 && a < 1.0) {
        return Err(invalid(format!("radius a must lie in (0, 1), got {a}")));
    }
    if !(mu.is_finite() && mu > 0.0) {
        return Err(invalid(format!("eigenvalue must be positive, got {mu}")));
    }
    let b = (1.0 - a.powi(n as i32)).powf(1.0 / n as f64);
    let k = mu.powf(0.25);
    if k * a.max(b) > BESSEL_I_MAX_ARG {
        return Err(Error::Range { what: "two-ball secular argument", value: k });
    }
    Ok(secular_k(n, a, b, k))
}

/// Smallest eigenvalue of the two-ball problem with first radius `a`.
#[allow(non_snake_case)]
pub fn J_of_a(n: usize, a: f64) -> Result<TwoBallResult> {
    check_dim(n)?;
    if !(0.0..=1.0).contains(&a) {
        return Err(invalid(format!("radius a must lie in [0, 1], got {a}")));
    }
    let nf = n as f64;
    let t = a.powi(n as i32);
    let b = (1.0 - t).max(0.0).powf(1.0 / nf);
    let kc = unit_clamped_root(n)?;
    let gamma1 = kc.powi(4);
    let point = |j: f64| TwoBallResult { n, a, b, t, j, ratio: j / gamma1 };
    if a < DEGENERATE_RADIUS || b < DEGENERATE_RADIUS {
        return Ok(point(gamma1));
    }

    // Every root lies below the equal-split value j_{ν,1}·2^{1/n} < 2 k_c.
    let step = kc / 50.0;
    let f = |k: f64| secular_k(n, a, b, k);
    let mut k0 = step;
    let mut f0 = f(k0);
    let mut trace = Vec::new();
    while k0 < 2.5 * kc {
        let k1 = k0 + step;
        let f1 = f(k1);
        trace.push((k1, f1));
        if f0 == 0.0 {
            return Ok(point(k0.powi(4)));
        }
        if f0.signum() != f1.signum() {
            let k = brent(f, k0, k1, 1e-14 * k1)?;
            return Ok(point(k.powi(4)));
        }
        k0 = k1;
        f0 = f1;
    }
    Err(Error::NoConvergence {
        routine: "two-ball root scan",
        detail: format!("no sign change for n={n}, a={a}; scan {trace:?}"),
    })
}

/// `J` as a function of the volume fraction `t = a^n ∈ [0, 1]`.
pub fn j_of_t(n: usize, t: f64) -> Result<TwoBallResult> {
    if !(0.0..=1.0).contains(&t) {
        return Err(invalid(format!("volume fraction must lie in [0, 1], got {t}")));
    }
    check_dim(n)?;
    J_of_a(n, t.powf(1.0 / n as f64))
}

/// Samples `J(t)/Γ₁(B₁)` on `points` uniformly spaced values of `t`.
pub fn curve(n: usize, points: usize) -> Result<Vec<TwoBallResult>> {
    check_dim(n)?;
    if points < 2 {
        return Err(invalid("a curve needs at least two points"));
    }
    (0..points)
        .into_par_iter()
        .map(|i| j_of_t(n, i as f64 / (points - 1) as f64))
        .collect()
}

/// `d_n = min_a J(a) / Γ₁(B₁)`, from a uniform scan in `t` followed by
/// golden-section refinement around the best interior sample.
pub fn d_constant(n: usize) -> Result<DConstant> {
    let samples = curve(n, T_GRID_POINTS)?;
    let j_endpoint = samples[0].j;
    let (best, _) = samples
        .iter()
        .enumerate()
        .min_by(|x, y| x.1.j.total_cmp(&y.1.j))
        .expect("nonempty scan");
    let last = samples.len() - 1;
    if best == 0 || best == last || samples[best].j >= j_endpoint {
        return Ok(DConstant { n, d: 1.0, minimizer_a: 0.0, minimizer_t: 0.0, j_endpoint });
    }
    let eval = |t: f64| j_of_t(n, t).map(|r| r.j);
    let (mut lo, mut hi) = (samples[best - 1].t, samples[best + 1].t);
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let mut f1 = eval(x1)?;
    let mut f2 = eval(x2)?;
    while hi - lo > 1e-7 {
        if f1 < f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = eval(x1)?;
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = eval(x2)?;
        }
    }
    let (t, j) = if f1 < f2 { (x1, f1) } else { (x2, f2) };
    let (t, j) = if samples[best].j < j { (samples[best].t, samples[best].j) } else { (t, j) };
    Ok(DConstant {
        n,
        d: j / j_endpoint,
        minimizer_a: t.powf(1.0 / n as f64),
        minimizer_t: t,
        j_endpoint,
    })
}

/// `c_n = 2^{2/n} (j_{n/2−1,1} / j_{n/2,1})²`, the constant in
/// `Λ₁(Ω) ≥ c_n Λ₁(Ω*)`.
pub fn c_constant(n: usize) -> Result<f64> {
    check_dim(n)?;
    let half = n as f64 / 2.0;
    let lo = specfun::bessel_zero(half - 1.0, 1)?.value;
    let hi = specfun::bessel_zero(half, 1)?.value;
    Ok(2f64.powf(2.0 / n as f64) * (lo / hi).powi(2))
}

/// Published values of the weaker constants `d′_n` from the decoupled
/// two-ball problem, kept as reference data only.
///
/// The source lists the second value under the label `d′_2`; it is taken to
/// belong to `n = 3`.
pub fn d_prime_reference(n: usize) -> Option<f64> {
    match n {
        2 => Some(0.9777),
        3 => Some(0.7391),
        4 => Some(0.6524),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn endpoints_return_clamped_ball() {
        for n in 2..=5 {
            let g = endpoint_value(n).unwrap();
            assert_eq!(J_of_a(n, 0.0).unwrap().j, g);
            assert_eq!(J_of_a(n, 1.0).unwrap().j, g);
            assert_eq!(j_of_t(n, 1.0).unwrap().ratio, 1.0);
        }
    }

    #[test]
    fn small_radius_is_continuous_with_endpoint() {
        for n in [2, 3, 4] {
            let g = endpoint_value(n).unwrap();
            let r = J_of_a(n, 2.0 * DEGENERATE_RADIUS).unwrap();
            assert!((r.j - g).abs() < 1e-3 * g, "n={n} {} {g}", r.j);
        }
    }

    #[test]
    fn equal_split_is_bessel_zero() {
        // a = b: F = 2a^{n-1} J_ν(ka) G(ka), lowest root j_{ν,1}/a.
        for n in 2..=6 {
            let a = 0.5f64.powf(1.0 / n as f64);
            let r = J_of_a(n, a).unwrap();
            let j = specfun::bessel_zero(n as f64 / 2.0 - 1.0, 1).unwrap().value;
            assert!((r.j - (j / a).powi(4)).abs() < 1e-8 * r.j, "n={n}");
        }
    }

    #[test]
    fn secular_root_and_sign() {
        let n = 3;
        let a = 0.6;
        let r = J_of_a(n, a).unwrap();
        let at = secular_det(n, a, r.j).unwrap();
        let below = secular_det(n, a, 0.5 * r.j).unwrap();
        let scale = below.abs().max(secular_det(n, a, 0.9 * r.j).unwrap().abs());
        assert!(at.abs() < 1e-8 * scale);
        for i in 1..20 {
            let mu = r.j * i as f64 / 20.0;
            assert_eq!(secular_det(n, a, mu).unwrap().signum(), below.signum());
        }
    }

    #[test]
    fn symmetric_in_t() {
        for n in [2, 4, 7] {
            for t in [0.1, 0.23, 0.4] {
                let x = j_of_t(n, t).unwrap().j;
                let y = j_of_t(n, 1.0 - t).unwrap().j;
                assert!((x - y).abs() <= 1e-7 * x, "n={n} t={t}");
            }
        }
    }

    #[test]
    fn n2_minimum_at_endpoint() {
        let mid = j_of_t(2, 0.5).unwrap();
        assert!(mid.j > endpoint_value(2).unwrap());
        let d = d_constant(2).unwrap();
        assert_eq!(d.d, 1.0);
        assert_eq!(d.minimizer_t, 0.0);
    }

    #[test]
    fn c_values() {
        let expect = [(2, 0.7877), (3, 0.7759), (4, 0.7872), (5, 0.8020), (6, 0.8163)];
        for (n, c) in expect {
            assert!((c_constant(n).unwrap() - c).abs() < 5e-4, "n={n}");
        }
        assert!(c_constant(50).unwrap() > c_constant(6).unwrap());
        assert!(c_constant(50).unwrap() < 1.0);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(J_of_a(1, 0.5).is_err());
        assert!(J_of_a(2, 1.5).is_err());
        assert!(secular_det(2, 0.0, 1.0).is_err());
        assert!(secular_det(2, 0.5, -1.0).is_err());
        assert!(curve(2, 1).is_err());
    }
}
