use std::f64::consts::PI;

use super::{expect_family, lookup, measure, report, Family, InequalityReport, Policy, Sides};
use crate::error::{invalid, Error, Result};
use crate::spectrum::{ProblemKind, Spectrum};

/// Weyl-type Pólya comparisons `λ_k ≥ 4πk/A` (`k ≥ 1`) and `μ_k ≤ 4πk/A`
/// (`k ≥ 0`) for planar domains, one report per available `k ≤ k_max`.
pub fn eval_polya(id: &str, s: &Spectrum, area: f64, k_max: usize, policy: Policy) -> Result<Vec<InequalityReport>> {
    let def = lookup(id)?;
    expect_family(def, &[Family::Polya])?;
    if s.dimension != 2 {
        return Err(Error::Mismatch(format!("`{id}` is stated for planar domains, spectrum has n = {}", s.dimension)));
    }
    if !(area.is_finite() && area > 0.0) {
        return Err(invalid(format!("area must be positive, got {area}")));
    }
    let weyl = |k: usize| 4.0 * PI * k as f64 / area;
    let mut out = Vec::new();
    match (def.id, s.kind) {
        ("polya_dirichlet", ProblemKind::Dirichlet) => {
            for k in 1..=k_max.min(s.len()) {
                let measured = measure(&[s], policy, |v| Ok(Sides::le(weyl(k), v[0][k - 1])))?;
                out.push(report(def, &s.domain_label, Some(k), measured));
            }
        }
        ("polya_neumann", ProblemKind::Neumann) => {
            for k in 0..=k_max.min(s.len() - 1) {
                let measured = measure(&[s], policy, |v| Ok(Sides::le(v[0][k], weyl(k))))?;
                out.push(report(def, &s.domain_label, Some(k), measured));
            }
        }
        (_, kind) => return Err(Error::Mismatch(format!("`{id}` does not apply to a {kind} spectrum"))),
    }
    Ok(out)
}
