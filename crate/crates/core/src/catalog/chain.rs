use serde::{Deserialize, Serialize};

use super::membrane::{hile_protter_bound, hile_protter_sum, ppw_bound, yang1_bound, yang2_bound};
use super::{expect_kind, RELATIVE_FLOOR};
use crate::error::{invalid, Result};
use crate::spectrum::{ProblemKind, Spectrum};

/// The four explicit bounds on `λ_{m+1}` and their ordering.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChainReport {
    pub domain: String,
    pub m: usize,
    pub lambda_next: f64,
    pub yang1: f64,
    pub yang2: f64,
    pub hile_protter: f64,
    pub ppw: f64,
    /// `Σ λ_i/(λ_{m+1} − λ_i) − mn/4`.
    pub hile_protter_slack: f64,
    /// `yang1 ≤ yang2 ≤ hile_protter ≤ ppw` up to round-off.
    pub ordered: bool,
    /// Whether `λ_{m+1}` satisfies each bound, in chain order.
    pub predicates: [bool; 4],
    /// Each predicate implies all later ones.
    pub implications_hold: bool,
}

/// Evaluates the Yang 1 ⇒ Yang 2 ⇒ Hile-Protter ⇒ PPW chain at index `m`.
pub fn chain_check(s: &Spectrum, m: usize) -> Result<ChainReport> {
    expect_kind(s, ProblemKind::Dirichlet)?;
    if m == 0 {
        return Err(invalid("index m starts at 1"));
    }
    s.require(m + 1)?;
    let n = s.dimension;
    let lams = &s.values[..m];
    let next = s.values[m];
    let bounds = [
        yang1_bound(lams, n)?,
        yang2_bound(lams, n)?,
        hile_protter_bound(lams, n)?,
        ppw_bound(lams, n)?,
    ];
    let eps = |x: f64| RELATIVE_FLOOR * x.abs();
    let ordered = bounds.windows(2).all(|w| w[0] <= w[1] + eps(w[1]));
    let predicates = bounds.map(|b| next <= b + eps(b));
    let implications_hold = (0..4).all(|i| !predicates[i] || predicates[i..].iter().all(|p| *p));
    Ok(ChainReport {
        domain: s.domain_label.clone(),
        m,
        lambda_next: next,
        yang1: bounds[0],
        yang2: bounds[1],
        hile_protter: bounds[2],
        ppw: bounds[3],
        hile_protter_slack: hile_protter_sum(lams, next) - (m * n) as f64 / 4.0,
        ordered,
        predicates,
        implications_hold,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ball::{dirichlet_ball, BallSpec};
    use crate::spectrum::Provenance;

    #[test]
    fn disk_chain_ordered() {
        let disk = dirichlet_ball(&BallSpec::unit(2).unwrap(), 8).unwrap();
        for m in 1..=5 {
            let c = chain_check(&disk, m).unwrap();
            assert!(c.ordered && c.implications_hold, "{c:?}");
            assert!(c.predicates.iter().all(|p| *p));
        }
        let c = chain_check(&disk, 1).unwrap();
        assert!((c.yang1 - c.yang2).abs() < 1e-12 * c.yang2);
        assert!((c.yang2 - c.ppw).abs() < 1e-12 * c.ppw);
    }

    #[test]
    fn predicates_reflect_bound_position() {
        // λ₃ sits between the Yang 2 and Hile-Protter bounds
        let lams = [1.0, 1.5];
        let y2 = yang2_bound(&lams, 2).unwrap();
        let hp = hile_protter_bound(&lams, 2).unwrap();
        assert!(y2 < hp);
        let mid = 0.5 * (y2 + hp);
        let s = Spectrum::new(ProblemKind::Dirichlet, 2, vec![1.0, 1.5, mid], "x", Provenance::ClosedForm).unwrap();
        let c = chain_check(&s, 2).unwrap();
        assert_eq!(c.predicates, [false, false, true, true]);
        assert!(c.implications_hold && c.ordered);
        assert!(c.hile_protter_slack > 0.0);
    }
}
