//! Rearrangements of grid functions and the Talenti comparison.
//!
//! A grid function is a value per interior node, each node carrying measure
//! `h²`. Its decreasing rearrangement is the vector of values sorted in
//! descending order, read as a step function of the volume variable `s`. The
//! spherically symmetric rearrangement on the disk `Ω*` of radius
//! `R = (|Ω|/π)^{1/2}` evaluates that step function at the volume fraction
//! `(r/R)²`, so node-count rasterization error does not leak into it.

use std::f64::consts::PI;

use crate::error::{invalid, Error, Result};
use crate::grid::{solve_poisson, GridDomain};

/// Calibrated constant of the Talenti domination tolerance `C·h·R·‖f‖_∞`.
///
/// Fixed from the worst ratio `max(u^⋆ − v)_+ / (h R ‖f‖_∞)` observed for
/// `f ≡ 1` on the unit disk over `h = 1/16 … 1/256`, with a factor of two
/// headroom.
pub const TALENTI_C: f64 = 0.6;

/// Values on the interior nodes of a [`GridDomain`].
#[derive(Debug, Clone)]
pub struct GridFunction<'a> {
    pub domain: &'a GridDomain,
    pub values: Vec<f64>,
}

impl<'a> GridFunction<'a> {
    pub fn new(domain: &'a GridDomain, values: Vec<f64>) -> Result<Self> {
        if values.len() != domain.len() {
            return Err(invalid(format!("{} values for {} nodes", values.len(), domain.len())));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(invalid("grid function has non-finite values"));
        }
        Ok(GridFunction { domain, values })
    }

    pub fn from_fn(domain: &'a GridDomain, f: impl Fn(f64, f64) -> f64) -> Result<Self> {
        let values = (0..domain.len())
            .map(|k| {
                let (x, y) = domain.node_xy(k);
                f(x, y)
            })
            .collect();
        Self::new(domain, values)
    }

    pub fn cell_measure(&self) -> f64 {
        self.domain.h * self.domain.h
    }

    pub fn integral(&self) -> f64 {
        self.values.iter().sum::<f64>() * self.cell_measure()
    }

    fn same_domain(&self, other: &GridFunction) -> bool {
        std::ptr::eq(self.domain, other.domain)
            || (self.domain.len() == other.domain.len()
                && self.domain.h == other.domain.h
                && self.domain.shape == other.domain.shape)
    }
}

fn magnitudes(f: &GridFunction, signed: bool) -> Vec<f64> {
    if signed {
        f.values.clone()
    } else {
        f.values.iter().map(|v| v.abs()).collect()
    }
}

/// `μ_f(t)`: measure of `{|f| > t}`, or of `{f > t}` when `signed`.
pub fn distribution(f: &GridFunction, t: f64, signed: bool) -> f64 {
    let count = magnitudes(f, signed).into_iter().filter(|v| *v > t).count();
    count as f64 * f.cell_measure()
}

/// Decreasing rearrangement `f*` as a step function on `[0, N h²)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Rearrangement {
    /// Values in nonincreasing order.
    pub values: Vec<f64>,
    pub cell_measure: f64,
    /// Area of the continuous domain, which fixes the radius of `Ω*`.
    pub area: f64,
}

impl Rearrangement {
    /// `f*(s)`.
    pub fn at_volume(&self, s: f64) -> f64 {
        let i = (s / self.cell_measure).floor().max(0.0) as usize;
        self.values[i.min(self.values.len() - 1)]
    }

    /// Value at volume fraction `q ∈ [0, 1]`.
    pub fn at_fraction(&self, q: f64) -> f64 {
        let n = self.values.len();
        let i = (q.clamp(0.0, 1.0) * n as f64).floor() as usize;
        self.values[i.min(n - 1)]
    }

    /// Radius of the disk with the domain's area.
    pub fn radius(&self) -> f64 {
        (self.area / PI).sqrt()
    }

    /// `f^⋆(r)` on `Ω*`.
    pub fn symmetric_at(&self, r: f64) -> f64 {
        let rr = self.radius();
        self.at_fraction((r / rr).powi(2))
    }

    /// `f_⋆(r)`, the spherically increasing rearrangement.
    pub fn increasing_at(&self, r: f64) -> f64 {
        let rr = self.radius();
        let q = (r / rr).powi(2);
        let n = self.values.len();
        let i = (q.clamp(0.0, 1.0) * n as f64).floor() as usize;
        self.values[n - 1 - i.min(n - 1)]
    }

    pub fn distribution(&self, t: f64) -> f64 {
        self.values.iter().filter(|v| **v > t).count() as f64 * self.cell_measure
    }

    /// `∫ (f*)²` over `[0, N h²)`.
    pub fn l2_squared(&self) -> f64 {
        self.values.iter().map(|v| v * v).sum::<f64>() * self.cell_measure
    }

    /// The increasing rearrangement as a step function (values reversed).
    pub fn reversed(&self) -> Vec<f64> {
        self.values.iter().rev().copied().collect()
    }
}

/// `f*` of `|f|` (or of `f` when `signed`).
pub fn decreasing_rearrangement(f: &GridFunction, signed: bool) -> Rearrangement {
    let mut values = magnitudes(f, signed);
    values.sort_by(|a, b| b.total_cmp(a));
    Rearrangement { values, cell_measure: f.cell_measure(), area: f.domain.area_exact }
}

/// A function of the radius on `[0, R]`.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialProfile {
    pub radii: Vec<f64>,
    pub values: Vec<f64>,
    pub radius: f64,
}

/// Uniform radial grid on `[0, R]` with spacing close to `h` and `R` as a node.
pub fn radial_grid(radius: f64, h: f64) -> Vec<f64> {
    let n = (radius / h).ceil().max(1.0) as usize;
    (0..=n).map(|i| if i == n { radius } else { radius * i as f64 / n as f64 }).collect()
}

/// `f^⋆` sampled on the radial grid of resolution `h`.
pub fn spherical_rearrangement(f: &GridFunction, signed: bool) -> RadialProfile {
    let star = decreasing_rearrangement(f, signed);
    let radius = star.radius();
    let radii = radial_grid(radius, f.domain.h);
    let values = radii.iter().map(|&r| star.symmetric_at(r)).collect();
    RadialProfile { radii, values, radius }
}

/// `∫fg` and its rearrangement bounds `∫f^⋆g_⋆ ≤ ∫fg ≤ ∫f^⋆g^⋆`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProductBounds {
    pub lhs: f64,
    pub upper: f64,
    pub lower: f64,
    /// `1e-9 · h² ‖f‖ ‖g‖`, the round-off allowance.
    pub tolerance: f64,
    pub upper_holds: bool,
    pub lower_holds: bool,
}

/// Compares `∫fg` with the integrals of the signed rearrangements, computed
/// in the volume variable.
pub fn product_bound_check(f: &GridFunction, g: &GridFunction) -> Result<ProductBounds> {
    if !f.same_domain(g) {
        return Err(Error::Mismatch("grid functions live on different domains".into()));
    }
    let w = f.cell_measure();
    let lhs = f.values.iter().zip(&g.values).map(|(a, b)| a * b).sum::<f64>() * w;
    let fs = decreasing_rearrangement(f, true).values;
    let gs = decreasing_rearrangement(g, true).values;
    let upper = fs.iter().zip(&gs).map(|(a, b)| a * b).sum::<f64>() * w;
    let lower = fs.iter().zip(gs.iter().rev()).map(|(a, b)| a * b).sum::<f64>() * w;
    let nf = f.values.iter().map(|v| v * v).sum::<f64>().sqrt();
    let ng = g.values.iter().map(|v| v * v).sum::<f64>().sqrt();
    let tolerance = 1e-9 * w * nf * ng;
    Ok(ProductBounds {
        lhs,
        upper,
        lower,
        tolerance,
        upper_holds: lhs <= upper + tolerance,
        lower_holds: lhs >= lower - tolerance,
    })
}

/// `v(r) = ∫_r^R t^{-1} ∫_0^t τ f^⋆(τ) dτ dt` by nested trapezoid rules on
/// the radial grid of `profile`.
pub fn symmetrized_solution(profile: &RadialProfile) -> RadialProfile {
    let r = &profile.radii;
    let f = &profile.values;
    let n = r.len();
    let mut inner = vec![0.0; n];
    for i in 1..n {
        inner[i] = inner[i - 1] + 0.5 * (r[i] - r[i - 1]) * (r[i - 1] * f[i - 1] + r[i] * f[i]);
    }
    // inner(t)/t → 0 as t → 0
    let g: Vec<f64> = (0..n).map(|i| if r[i] > 0.0 { inner[i] / r[i] } else { 0.0 }).collect();
    let mut v = vec![0.0; n];
    for i in (0..n - 1).rev() {
        v[i] = v[i + 1] + 0.5 * (r[i + 1] - r[i]) * (g[i] + g[i + 1]);
    }
    RadialProfile { radii: r.clone(), values: v, radius: profile.radius }
}

/// Result of comparing the rearranged Poisson solution with the solution of
/// the symmetrized problem.
#[derive(Debug, Clone)]
pub struct TalentiReport {
    pub u: Vec<f64>,
    pub u_star: RadialProfile,
    pub v: RadialProfile,
    /// `max_r (u^⋆ − v)_+`.
    pub violation: f64,
    pub tolerance: f64,
    pub dominated: bool,
}

/// Solves `−Δ_h u = f` on the grid and checks `u^⋆ ≤ v + C h R ‖f‖_∞`.
///
/// Requires `∫f ≥ 0` and `u ≥ −tolerance`; the signed rearrangement of `f` is
/// used in `v`.
pub fn talenti_compare(f: &GridFunction) -> Result<TalentiReport> {
    let h = f.domain.h;
    let fmax = f.values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let total = f.integral();
    if total < -1e-12 * fmax * f.domain.area_exact {
        return Err(Error::Hypothesis(format!("source integral {total} is negative")));
    }
    let u = solve_poisson(f.domain, &f.values)?;
    let f_star = spherical_rearrangement(f, true);
    let radius = f_star.radius;
    let tolerance = TALENTI_C * h * radius * fmax;
    let umin = u.iter().fold(f64::INFINITY, |m, v| m.min(*v));
    if umin < -tolerance {
        return Err(Error::Hypothesis(format!("Poisson solution dips to {umin}, below -{tolerance}")));
    }
    let v = symmetrized_solution(&f_star);
    let ug = GridFunction::new(f.domain, u.clone())?;
    let u_star = spherical_rearrangement(&ug, true);
    let violation = u_star.values.iter().zip(&v.values).map(|(a, b)| (a - b).max(0.0)).fold(0.0, f64::max);
    Ok(TalentiReport { u, u_star, v, violation, tolerance, dominated: violation <= tolerance })
}

/// Slope of the allowance `ε(h) = ENERGY_SLACK · h` when comparing the
/// Dirichlet energy of `f^⋆` with that of `f`.
pub const ENERGY_SLACK: f64 = 4.0;

/// `∑ |∇_h f|² h²` over lattice links, with zero values outside the mask.
pub fn grid_dirichlet_energy(f: &GridFunction) -> f64 {
    let d = f.domain;
    let mut e = 0.0;
    for k in 0..d.len() {
        let (ix, iy) = d.node_site(k);
        for (dx, dy) in [(1, 0), (0, 1), (-1, 0), (0, -1)] {
            match d.at(ix, iy, dx, dy) {
                // interior links are visited from both ends
                Some(nb) => e += 0.5 * (f.values[k] - f.values[nb]).powi(2),
                None => e += f.values[k].powi(2),
            }
        }
    }
    e
}

/// `2π ∫_0^R (dp/dr)² r dr` by first differences on the profile grid.
pub fn radial_dirichlet_energy(p: &RadialProfile) -> f64 {
    let r = &p.radii;
    let v = &p.values;
    let mut e = 0.0;
    for i in 0..r.len() - 1 {
        let dr = r[i + 1] - r[i];
        let slope = (v[i + 1] - v[i]) / dr;
        e += slope * slope * 0.5 * (r[i] + r[i + 1]) * dr;
    }
    2.0 * PI * e
}
