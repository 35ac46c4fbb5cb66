//! Bessel functions of the first kind and modified Bessel functions of real
//! order, together with the root finders built on them.
//!
//! `J_ν(x)` uses three regimes: the power series for `x ≤ 6`, Miller's
//! backward recurrence normalized by the Neumann-type sum
//! `(x/2)^ν = Σ_j (ν+2j) Γ(ν+j)/j! J_{ν+2j}(x)` for moderate arguments, and the
//! Hankel asymptotic expansion once `x ≥ 100` and `x > ν²`. `I_ν(x)` is summed
//! directly; every term of its series is positive so there is no cancellation.
//!
//! Zeros are bracketed by a fixed-step sign scan (consecutive zeros of all the
//! functions used here are more than two units apart) and refined by Newton's
//! method kept inside the bracket, falling back to bisection.

use std::f64::consts::PI;

use crate::error::{invalid, Error, Result};

const SERIES_LIMIT: f64 = 6.0;
const HANKEL_LIMIT: f64 = 100.0;
/// Largest argument accepted by [`bessel_i`]; `I_0(700)` already exceeds `f64::MAX`.
pub const BESSEL_I_MAX_ARG: f64 = 500.0;
const SCAN_STEP: f64 = 0.25;
const SCAN_CEILING: f64 = 1.0e4;

/// The `index`-th positive zero of `J_order`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BesselZero {
    pub order: f64,
    pub index: usize,
    pub value: f64,
}

fn check_order_arg(nu: f64, x: f64) -> Result<()> {
    if !nu.is_finite() || !x.is_finite() {
        return Err(invalid(format!("non-finite Bessel input (nu={nu}, x={x})")));
    }
    if nu < 0.0 {
        return Err(invalid(format!("negative Bessel order {nu}")));
    }
    if x < 0.0 {
        return Err(invalid(format!("negative Bessel argument {x}")));
    }
    Ok(())
}

/// `J_ν(x)` for `ν ≥ 0`, `x ≥ 0`.
pub fn bessel_j(nu: f64, x: f64) -> Result<f64> {
    check_order_arg(nu, x)?;
    Ok(j_raw(nu, x))
}

/// `J′_ν(x)` via `J′_ν = (ν/x) J_ν − J_{ν+1}`.
pub fn bessel_j_prime(nu: f64, x: f64) -> Result<f64> {
    check_order_arg(nu, x)?;
    if x == 0.0 {
        return if nu == 1.0 {
            Ok(0.5)
        } else if nu == 0.0 || nu > 1.0 {
            Ok(0.0)
        } else {
            Err(Error::Range { what: "J'_nu(0) for 0<nu<1", value: nu })
        };
    }
    Ok(jp_raw(nu, x))
}

/// `I_ν(x)` for `ν ≥ 0`, `0 ≤ x ≤ 500`.
pub fn bessel_i(nu: f64, x: f64) -> Result<f64> {
    check_order_arg(nu, x)?;
    if x > BESSEL_I_MAX_ARG {
        return Err(Error::Range { what: "modified Bessel argument", value: x });
    }
    Ok(i_raw(nu, x))
}

/// `I_{ν+1}(x) / I_ν(x)`, bounded in `[0, 1)`.
pub fn bessel_i_ratio(nu: f64, x: f64) -> Result<f64> {
    check_order_arg(nu, x)?;
    if x > BESSEL_I_MAX_ARG {
        return Err(Error::Range { what: "modified Bessel argument", value: x });
    }
    Ok(i_ratio_raw(nu, x))
}

/// Volume of the unit ball in `n` dimensions, `π^{n/2} / Γ(n/2 + 1)`.
pub fn unit_ball_volume(n: usize) -> f64 {
    let half = n as f64 / 2.0;
    PI.powf(half) / libm::tgamma(half + 1.0)
}

pub(crate) fn j_raw(nu: f64, x: f64) -> f64 {
    if x == 0.0 {
        return if nu == 0.0 { 1.0 } else { 0.0 };
    }
    if x <= SERIES_LIMIT {
        j_series(nu, x)
    } else if x >= HANKEL_LIMIT && x > nu * nu {
        j_hankel(nu, x)
    } else {
        j_miller(nu, x)
    }
}

pub(crate) fn jp_raw(nu: f64, x: f64) -> f64 {
    nu / x * j_raw(nu, x) - j_raw(nu + 1.0, x)
}

fn j_series(nu: f64, x: f64) -> f64 {
    let half = 0.5 * x;
    let lead = (nu * half.ln() - libm::lgamma(nu + 1.0)).exp();
    let q = half * half;
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut m = 0.0;
    loop {
        m += 1.0;
        term *= -q / (m * (m + nu));
        sum += term;
        if term.abs() <= 1e-17 * sum.abs() || m > 200.0 {
            break;
        }
    }
    lead * sum
}

fn j_miller(nu: f64, x: f64) -> f64 {
    let whole = nu.floor();
    let frac = nu - whole;
    let target = whole as usize;
    let top = whole.max(x);
    let start = (top + 20.0 + (40.0 * top).sqrt()).ceil() as usize;

    // c_k for even k = 2j: c_0 = Γ(frac+1), c_{2j} = (frac+2j) Γ(frac+j) / j!
    let mut coeff = vec![0.0; start / 2 + 2];
    let g1 = libm::tgamma(frac + 1.0);
    coeff[0] = g1;
    let mut ratio = g1; // Γ(frac+j)/j! at j = 1
    for (j, c) in coeff.iter_mut().enumerate().skip(1) {
        let jf = j as f64;
        if j > 1 {
            ratio *= (frac + jf - 1.0) / jf;
        }
        *c = (frac + 2.0 * jf) * ratio;
    }

    let mut upper = 0.0; // f_{k+1}
    let mut cur = 1e-30; // f_k
    let mut norm = 0.0;
    let mut picked = if start == target { cur } else { 0.0 };
    if start.is_multiple_of(2) {
        norm += coeff[start / 2] * cur;
    }
    for k in (1..=start).rev() {
        let lower = 2.0 * (frac + k as f64) / x * cur - upper;
        upper = cur;
        cur = lower;
        let order = k - 1;
        if order == target {
            picked = cur;
        }
        if order % 2 == 0 {
            norm += coeff[order / 2] * cur;
        }
        if cur.abs() > 1e250 {
            cur *= 1e-250;
            upper *= 1e-250;
            norm *= 1e-250;
            picked *= 1e-250;
        }
    }
    picked * (0.5 * x).powf(frac) / norm
}

fn j_hankel(nu: f64, x: f64) -> f64 {
    let mu = 4.0 * nu * nu;
    let mut p = 0.0;
    let mut q = 0.0;
    let mut term: f64 = 1.0;
    let mut last = f64::INFINITY;
    for k in 0..60 {
        if term.abs() > last {
            break;
        }
        last = term.abs();
        match k % 4 {
            0 => p += term,
            1 => q += term,
            2 => p -= term,
            _ => q -= term,
        }
        if term.abs() < 1e-17 {
            break;
        }
        let odd = (2 * k + 1) as f64;
        term *= (mu - odd * odd) / ((k + 1) as f64 * 8.0 * x);
    }
    let chi = x - (0.5 * nu + 0.25) * PI;
    (2.0 / (PI * x)).sqrt() * (p * chi.cos() - q * chi.sin())
}

pub(crate) fn i_raw(nu: f64, x: f64) -> f64 {
    if x == 0.0 {
        return if nu == 0.0 { 1.0 } else { 0.0 };
    }
    let half = 0.5 * x;
    let lead = (nu * half.ln() - libm::lgamma(nu + 1.0)).exp();
    lead * i_series_sum(nu, half * half)
}

fn i_series_sum(nu: f64, q: f64) -> f64 {
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut m = 0.0;
    loop {
        m += 1.0;
        term *= q / (m * (m + nu));
        sum += term;
        if term <= 1e-17 * sum && m * m > q {
            break;
        }
    }
    sum
}

pub(crate) fn i_ratio_raw(nu: f64, x: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    // I_{ν+1}/I_ν = (x/2)/(ν+1) · S_{ν+1}/S_ν with S the bare series sums.
    let q = 0.25 * x * x;
    0.5 * x / (nu + 1.0) * i_series_sum(nu + 1.0, q) / i_series_sum(nu, q)
}

/// Brent's method on a sign-changing bracket.
pub(crate) fn brent<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, xtol: f64) -> Result<f64> {
    let (mut a, mut b) = (lo, hi);
    let (mut fa, mut fb) = (f(a), f(b));
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(Error::NoConvergence {
            routine: "brent",
            detail: format!("no sign change on [{lo}, {hi}]"),
        });
    }
    let (mut c, mut fc) = (a, fa);
    let mut d = b - a;
    let mut e = d;
    for _ in 0..200 {
        if fb.signum() == fc.signum() {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol = 2.0 * f64::EPSILON * b.abs() + 0.5 * xtol;
        let m = 0.5 * (c - b);
        if m.abs() <= tol || fb == 0.0 {
            return Ok(b);
        }
        if e.abs() >= tol && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * m * s;
                q = 1.0 - s;
            } else {
                let qa = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * m * qa * (qa - r) - (b - a) * (r - 1.0));
                q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            } else {
                p = -p;
            }
            if 2.0 * p < (3.0 * m * q - (tol * q).abs()).min((e * q).abs()) {
                e = d;
                d = p / q;
            } else {
                d = m;
                e = m;
            }
        } else {
            d = m;
            e = m;
        }
        a = b;
        fa = fb;
        b += if d.abs() > tol { d } else { tol.copysign(m) };
        fb = f(b);
    }
    Err(Error::NoConvergence {
        routine: "brent",
        detail: format!("200 iterations on [{lo}, {hi}]"),
    })
}

/// Newton's method restricted to a sign-changing bracket, bisecting whenever
/// a step would leave it.
fn newton_bracketed<F: Fn(f64) -> (f64, f64)>(
    f: F,
    mut lo: f64,
    mut hi: f64,
    guess: f64,
) -> Result<f64> {
    let sign_lo = f(lo).0.signum();
    let mut x = if guess > lo && guess < hi { guess } else { 0.5 * (lo + hi) };
    for _ in 0..200 {
        let (fx, dfx) = f(x);
        if fx == 0.0 {
            return Ok(x);
        }
        if fx.signum() == sign_lo {
            lo = x;
        } else {
            hi = x;
        }
        let mut next = x - fx / dfx;
        if !next.is_finite() || next <= lo || next >= hi {
            next = 0.5 * (lo + hi);
        }
        if (next - x).abs() <= 4.0 * f64::EPSILON * x.abs().max(1.0) || hi - lo <= 1e-15 * x.abs()
        {
            return Ok(next);
        }
        x = next;
    }
    Err(Error::NoConvergence {
        routine: "bracketed newton",
        detail: format!("bracket [{lo}, {hi}] after 200 steps"),
    })
}

/// Fixed-step sign scan from `start`, returning sign-change brackets in
/// increasing order until `max_count` are found or the scan passes `limit`.
pub(crate) fn scan_brackets<F: Fn(f64) -> f64>(
    f: F,
    start: f64,
    step: f64,
    max_count: usize,
    limit: f64,
) -> Result<Vec<(f64, f64)>> {
    let mut out = Vec::new();
    let mut x0 = start;
    let mut f0 = f(x0);
    while out.len() < max_count && x0 <= limit {
        if x0 > SCAN_CEILING {
            return Err(Error::NoConvergence {
                routine: "root scan",
                detail: format!("found {} of {} roots below {SCAN_CEILING}", out.len(), max_count),
            });
        }
        let x1 = x0 + step;
        let f1 = f(x1);
        if f0 == 0.0 {
            out.push((x0, x0));
        } else if f0.signum() != f1.signum() && f1 != 0.0 {
            out.push((x0, x1));
        }
        x0 = x1;
        f0 = f1;
    }
    Ok(out)
}

/// Roots of a continuous scalar function located by [`scan_brackets`] and
/// refined with Brent's method; brackets whose root exceeds `limit` are dropped.
pub(crate) fn scan_roots<F: Fn(f64) -> f64>(
    f: F,
    start: f64,
    max_count: usize,
    limit: f64,
) -> Result<Vec<f64>> {
    let brackets = scan_brackets(&f, start, SCAN_STEP, max_count, limit)?;
    let mut roots = Vec::with_capacity(brackets.len());
    for (a, b) in brackets {
        let r = if a == b { a } else { brent(&f, a, b, 1e-14 * b.max(1.0))? };
        if r <= limit {
            roots.push(r);
        }
    }
    Ok(roots)
}

fn mcmahon(nu: f64, k: usize) -> f64 {
    let beta = (k as f64 + 0.5 * nu - 0.25) * PI;
    let mu = 4.0 * nu * nu;
    let b8 = 8.0 * beta;
    beta - (mu - 1.0) / b8 - 4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / (3.0 * b8.powi(3))
}

fn j_zero_brackets(nu: f64, max_count: usize, limit: f64) -> Result<Vec<(f64, f64)>> {
    // J_ν is positive on (0, j_{ν,1}) and j_{ν,1} > ν.
    let start = if nu == 0.0 { 0.0 } else { nu };
    scan_brackets(|x| j_raw(nu, x), start, 2.0 * SCAN_STEP, max_count, limit)
}

fn refine_j_zero(nu: f64, k: usize, (a, b): (f64, f64)) -> Result<f64> {
    if a == b {
        return Ok(a);
    }
    newton_bracketed(|x| (j_raw(nu, x), jp_raw(nu, x)), a, b, mcmahon(nu, k))
}

/// The `k`-th positive zero `j_{ν,k}` of `J_ν` (`k ≥ 1`).
pub fn bessel_zero(nu: f64, k: usize) -> Result<BesselZero> {
    check_order_arg(nu, 0.0)?;
    if k == 0 {
        return Err(invalid("zero index starts at 1"));
    }
    let brackets = j_zero_brackets(nu, k, f64::INFINITY)?;
    let value = refine_j_zero(nu, k, brackets[k - 1])?;
    Ok(BesselZero { order: nu, index: k, value })
}

/// The first `count` positive zeros of `J_ν`.
pub fn bessel_zeros(nu: f64, count: usize) -> Result<Vec<f64>> {
    check_order_arg(nu, 0.0)?;
    j_zero_brackets(nu, count, f64::INFINITY)?
        .into_iter()
        .enumerate()
        .map(|(i, br)| refine_j_zero(nu, i + 1, br))
        .collect()
}

/// All positive zeros of `J_ν` not exceeding `limit`, at most `max_count`.
pub fn bessel_zeros_below(nu: f64, max_count: usize, limit: f64) -> Result<Vec<f64>> {
    check_order_arg(nu, 0.0)?;
    let mut out = Vec::new();
    for (i, br) in j_zero_brackets(nu, max_count, limit)?.into_iter().enumerate() {
        let z = refine_j_zero(nu, i + 1, br)?;
        if z <= limit {
            out.push(z);
        }
    }
    Ok(out)
}

/// The `k`-th positive root of `d/dr [r^{1−ν} J_ν(r)] = 0`, equivalently
/// `J_ν(r) = r J_{ν+1}(r)`.
///
/// With `ν = n/2` this is the radial Neumann condition for the first
/// nonconstant mode of the `n`-ball; for `ν = 1` it coincides with the zeros
/// of `J′_1`.
pub fn bessel_j_deriv_zero(nu: f64, k: usize) -> Result<f64> {
    check_order_arg(nu, 0.0)?;
    if nu < 1.0 {
        return Err(invalid(format!("order must be at least 1, got {nu}")));
    }
    if k == 0 {
        return Err(invalid("zero index starts at 1"));
    }
    let roots = neumann_radial_roots(nu - 1.0, 1, k, f64::INFINITY)?;
    roots.get(k - 1).copied().ok_or_else(|| Error::NoConvergence {
        routine: "bessel_j_deriv_zero",
        detail: format!("only {} roots located", roots.len()),
    })
}

/// Roots of `ℓ J_ν(x) − x J_{ν+1}(x)` with `ν = p + ℓ`, the Neumann radial
/// condition for angular degree `ℓ ≥ 1` when `p = n/2 − 1`.
pub(crate) fn neumann_radial_roots(p: f64, l: usize, max_count: usize, limit: f64) -> Result<Vec<f64>> {
    let nu = p + l as f64;
    let lf = l as f64;
    // Divide by x^ν so the function stays O(1) near the origin.
    let g = |x: f64| (lf * j_raw(nu, x) - x * j_raw(nu + 1.0, x)) / x.powf(nu);
    scan_roots(g, 1e-2, max_count, limit)
}

/// Clamped-ball secular function for order `ν`:
/// `J_{ν+1}(z) + [I_{ν+1}(z)/I_ν(z)] J_ν(z)`, which is
/// `(J_ν I_{ν+1} + J_{ν+1} I_ν)/I_ν` with the growing factor divided out.
pub fn clamped_secular(nu: f64, z: f64) -> Result<f64> {
    check_order_arg(nu, z)?;
    if z > BESSEL_I_MAX_ARG {
        return Err(Error::Range { what: "clamped secular argument", value: z });
    }
    Ok(clamped_secular_raw(nu, z))
}

pub(crate) fn clamped_secular_raw(nu: f64, z: f64) -> f64 {
    j_raw(nu + 1.0, z) + i_ratio_raw(nu, z) * j_raw(nu, z)
}

/// Positive roots of [`clamped_secular`] for order `ν`.
pub(crate) fn clamped_roots(nu: f64, max_count: usize, limit: f64) -> Result<Vec<f64>> {
    let g = |z: f64| clamped_secular_raw(nu, z) / z.powf(nu + 1.0);
    scan_roots(g, 1e-2, max_count, limit)
}
