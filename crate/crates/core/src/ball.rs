//! Closed-form spectra of balls in `n` dimensions and of planar rectangles.
//!
//! Separating variables on the ball `B_R` gives radial factors
//! `r^{1−n/2} J_ν(kr)` with `ν = n/2 − 1 + ℓ` for angular degree `ℓ`, each
//! eigenvalue repeated `dim H_ℓ` times. The radial conditions used here:
//!
//! * Dirichlet: `J_ν(kR) = 0`.
//! * Neumann: `ℓ J_ν(kR) − kR J_{ν+1}(kR) = 0` (plus the constant mode).
//! * Clamped plate: `J_ν I_{ν+1} + J_{ν+1} I_ν = 0` at `kR`, with `Γ = k⁴`.
//! * Buckling: pairing `r^{1−n/2} J_ν(kr)` with the harmonic `r^ℓ` collapses
//!   the 2×2 determinant to `kR J_{ν+1}(kR)`, so `Λ = j²_{n/2+ℓ,k}/R²`.
//!
//! The lowest root of every family increases with `ℓ`, so the enumeration
//! stops at the first degree whose lowest root exceeds the current cutoff.

use std::f64::consts::PI;

use crate::error::{invalid, Result};
use crate::specfun::{self, unit_ball_volume};
use crate::spectrum::{ProblemKind, Provenance, Spectrum};

/// A ball of radius `radius` in `dimension` dimensions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BallSpec {
    pub dimension: usize,
    pub radius: f64,
}

impl BallSpec {
    pub fn new(dimension: usize, radius: f64) -> Result<Self> {
        if dimension < 2 {
            return Err(invalid(format!("dimension must be at least 2, got {dimension}")));
        }
        if !(radius.is_finite() && radius > 0.0) {
            return Err(invalid(format!("radius must be positive, got {radius}")));
        }
        Ok(BallSpec { dimension, radius })
    }

    pub fn unit(dimension: usize) -> Result<Self> {
        Self::new(dimension, 1.0)
    }

    /// The ball with the same volume as a domain of measure `volume`.
    pub fn with_volume(dimension: usize, volume: f64) -> Result<Self> {
        if !(volume.is_finite() && volume > 0.0) {
            return Err(invalid(format!("volume must be positive, got {volume}")));
        }
        let c = unit_ball_volume(dimension.max(2));
        Self::new(dimension, (volume / c).powf(1.0 / dimension as f64))
    }

    pub fn volume(&self) -> f64 {
        unit_ball_volume(self.dimension) * self.radius.powi(self.dimension as i32)
    }

    fn label(&self) -> String {
        format!("ball(n={},R={})", self.dimension, self.radius)
    }

    /// `n/2 − 1`, the Bessel order of the radial part at `ℓ = 0`.
    fn base_order(&self) -> f64 {
        self.dimension as f64 / 2.0 - 1.0
    }
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// Dimension of the space of degree-`ℓ` spherical harmonics in `n` variables.
pub fn harmonic_multiplicity(n: usize, l: usize) -> usize {
    let lower = if l >= 2 { binomial(l + n - 3, n - 1) } else { 0 };
    binomial(l + n - 1, n - 1) - lower
}

/// Radial roots `kR` of degree `ℓ`, at most `max_count`, not above `limit`.
fn family_roots(kind: ProblemKind, p: f64, l: usize, max_count: usize, limit: f64) -> Result<Vec<f64>> {
    let nu = p + l as f64;
    match kind {
        ProblemKind::Dirichlet => specfun::bessel_zeros_below(nu, max_count, limit),
        ProblemKind::Neumann if l == 0 => specfun::bessel_zeros_below(nu + 1.0, max_count, limit),
        ProblemKind::Neumann => specfun::neumann_radial_roots(p, l, max_count, limit),
        ProblemKind::Clamped => specfun::clamped_roots(nu, max_count, limit),
        ProblemKind::Buckling => specfun::bessel_zeros_below(nu + 1.0, max_count, limit),
    }
}

/// Lowest `count` radial roots over all degrees, with multiplicity, sorted.
fn merged_roots(kind: ProblemKind, spec: &BallSpec, count: usize) -> Result<Vec<f64>> {
    let p = spec.base_order();
    let n = spec.dimension;
    let mut all: Vec<f64> = Vec::new();
    let mut cutoff = f64::INFINITY;
    for l in 0.. {
        let roots = family_roots(kind, p, l, count, cutoff)?;
        if roots.is_empty() {
            break;
        }
        let mult = harmonic_multiplicity(n, l);
        for r in roots {
            all.extend(std::iter::repeat_n(r, mult.min(count)));
        }
        all.sort_by(f64::total_cmp);
        all.truncate(count);
        if all.len() == count {
            cutoff = all[count - 1];
        }
    }
    Ok(all)
}

fn ball_spectrum(kind: ProblemKind, spec: &BallSpec, count: usize) -> Result<Spectrum> {
    if count == 0 {
        return Err(invalid("count must be at least 1"));
    }
    let (need, lead_zero) = match kind {
        ProblemKind::Neumann => (count - 1, true),
        _ => (count, false),
    };
    let roots = if need > 0 { merged_roots(kind, spec, need)? } else { Vec::new() };
    let r = spec.radius;
    let mut values: Vec<f64> = Vec::with_capacity(count);
    if lead_zero {
        values.push(0.0);
    }
    values.extend(roots.into_iter().map(|k| match kind {
        ProblemKind::Clamped => (k / r).powi(4),
        _ => (k / r).powi(2),
    }));
    Spectrum::new(kind, spec.dimension, values, spec.label(), Provenance::ClosedForm)
}

/// The first `count` Dirichlet eigenvalues of the ball.
pub fn dirichlet_ball(spec: &BallSpec, count: usize) -> Result<Spectrum> {
    ball_spectrum(ProblemKind::Dirichlet, spec, count)
}

/// The first `count` Neumann eigenvalues of the ball, starting with `μ₀ = 0`.
pub fn neumann_ball(spec: &BallSpec, count: usize) -> Result<Spectrum> {
    ball_spectrum(ProblemKind::Neumann, spec, count)
}

/// First nonzero Neumann eigenvalue of the ball, carried by the `ℓ = 1` mode.
pub fn neumann_ball_mu1(spec: &BallSpec) -> Result<f64> {
    let p = specfun::bessel_j_deriv_zero(spec.dimension as f64 / 2.0, 1)?;
    Ok((p / spec.radius).powi(2))
}

/// The first `count` clamped-plate eigenvalues of the ball.
pub fn clamped_ball(spec: &BallSpec, count: usize) -> Result<Spectrum> {
    ball_spectrum(ProblemKind::Clamped, spec, count)
}

/// The first `count` buckling eigenvalues of the ball.
pub fn buckling_ball(spec: &BallSpec, count: usize) -> Result<Spectrum> {
    ball_spectrum(ProblemKind::Buckling, spec, count)
}

/// Dispatches on `kind`.
pub fn ball_spectrum_of(kind: ProblemKind, spec: &BallSpec, count: usize) -> Result<Spectrum> {
    ball_spectrum(kind, spec, count)
}

/// Dirichlet or Neumann spectrum of the `a × b` rectangle,
/// `π²(p²/a² + q²/b²)` with `p, q ≥ 1` (Dirichlet) or `p, q ≥ 0` (Neumann).
pub fn rectangle_spectrum(a: f64, b: f64, kind: ProblemKind, count: usize) -> Result<Spectrum> {
    if !(a.is_finite() && b.is_finite() && a > 0.0 && b > 0.0) {
        return Err(invalid(format!("rectangle sides must be positive, got {a} x {b}")));
    }
    if count == 0 {
        return Err(invalid("count must be at least 1"));
    }
    let start = match kind {
        ProblemKind::Dirichlet => 1,
        ProblemKind::Neumann => 0,
        other => return Err(invalid(format!("no separable rectangle spectrum for {other}"))),
    };
    // Every one of the `count` lowest modes has both indices below start + count.
    let mut values = Vec::with_capacity(count * count);
    for p in start..start + count {
        for q in start..start + count {
            let (pf, qf) = (p as f64, q as f64);
            values.push(PI * PI * (pf * pf / (a * a) + qf * qf / (b * b)));
        }
    }
    values.sort_by(f64::total_cmp);
    values.truncate(count);
    Spectrum::new(kind, 2, values, format!("rectangle({a}x{b})"), Provenance::ClosedForm)
}
