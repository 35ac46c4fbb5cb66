use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// The four eigenvalue problems handled by the toolkit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProblemKind {
    /// Fixed membrane, `−Δu = λu`, `u = 0` on the boundary.
    Dirichlet,
    /// Free membrane, `−Δv = μv`, `∂v/∂n = 0` on the boundary.
    Neumann,
    /// Clamped plate, `Δ²w = Γw`, `w = ∂w/∂n = 0` on the boundary.
    Clamped,
    /// Buckling, `Δ²v = −ΛΔv`, `v = ∂v/∂n = 0` on the boundary.
    Buckling,
}

impl ProblemKind {
    pub const ALL: [ProblemKind; 4] =
        [ProblemKind::Dirichlet, ProblemKind::Neumann, ProblemKind::Clamped, ProblemKind::Buckling];

    pub fn as_str(self) -> &'static str {
        match self {
            ProblemKind::Dirichlet => "dirichlet",
            ProblemKind::Neumann => "neumann",
            ProblemKind::Clamped => "clamped",
            ProblemKind::Buckling => "buckling",
        }
    }

    /// Power of length in the eigenvalue's units (`−2` for membranes and
    /// buckling, `−4` for the plate); eigenvalues scale as `R^{order}`.
    pub fn scaling_order(self) -> i32 {
        match self {
            ProblemKind::Clamped => -4,
            _ => -2,
        }
    }
}

impl fmt::Display for ProblemKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ProblemKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "dirichlet" | "membrane" | "fixed" => Ok(ProblemKind::Dirichlet),
            "neumann" | "free" => Ok(ProblemKind::Neumann),
            "clamped" | "plate" | "clamped_plate" => Ok(ProblemKind::Clamped),
            "buckling" => Ok(ProblemKind::Buckling),
            other => Err(invalid(format!("unknown problem kind `{other}`"))),
        }
    }
}

/// Where a spectrum's values came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    ClosedForm,
    Discrete,
    DiscreteExtrapolated,
}

impl Provenance {
    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::ClosedForm => "closed_form",
            Provenance::Discrete => "discrete",
            Provenance::DiscreteExtrapolated => "discrete_extrapolated",
        }
    }
}

/// An ordered list of the lowest eigenvalues of one problem on one domain,
/// repeated according to multiplicity.
///
/// For [`ProblemKind::Neumann`] the list starts with the zero eigenvalue
/// `μ₀`; for the other kinds `values[0]` is the first eigenvalue.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    pub kind: ProblemKind,
    pub dimension: usize,
    pub values: Vec<f64>,
    pub domain_label: String,
    pub provenance: Provenance,
    /// Mesh width of the finest grid used, for discrete spectra.
    pub mesh_width: Option<f64>,
    /// Per-entry absolute discretization allowance (zero for closed forms).
    pub allowance: Vec<f64>,
}

impl Spectrum {
    pub fn new(
        kind: ProblemKind,
        dimension: usize,
        values: Vec<f64>,
        domain_label: impl Into<String>,
        provenance: Provenance,
    ) -> Result<Self> {
        let allowance = vec![0.0; values.len()];
        let s = Spectrum {
            kind,
            dimension,
            values,
            domain_label: domain_label.into(),
            provenance,
            mesh_width: None,
            allowance,
        };
        s.validate()?;
        Ok(s)
    }

    pub fn with_mesh_width(mut self, h: f64) -> Self {
        self.mesh_width = Some(h);
        self
    }

    pub fn with_allowance(mut self, allowance: Vec<f64>) -> Result<Self> {
        if allowance.len() != self.values.len() {
            return Err(Error::Mismatch(format!(
                "allowance length {} vs {} values",
                allowance.len(),
                self.values.len()
            )));
        }
        if allowance.iter().any(|a| !a.is_finite() || *a < 0.0) {
            return Err(invalid("allowances must be finite and nonnegative"));
        }
        self.allowance = allowance;
        Ok(self)
    }

    /// Checks the ordering invariants of the type.
    pub fn validate(&self) -> Result<()> {
        if self.dimension < 2 {
            return Err(invalid(format!("dimension must be at least 2, got {}", self.dimension)));
        }
        if self.values.is_empty() {
            return Err(invalid("spectrum has no values"));
        }
        if self.values.iter().any(|v| !v.is_finite()) {
            return Err(invalid("spectrum contains non-finite values"));
        }
        if self.values.windows(2).any(|w| w[1] < w[0]) {
            return Err(invalid("spectrum values must be nondecreasing"));
        }
        match self.kind {
            ProblemKind::Neumann => {
                let scale = self.values.get(1).copied().unwrap_or(1.0).abs().max(1.0);
                if self.values[0].abs() > 1e-8 * scale {
                    return Err(invalid(format!(
                        "Neumann spectrum must start at 0, got {}",
                        self.values[0]
                    )));
                }
                if self.values.len() > 1 && self.values[1] <= 0.0 {
                    return Err(invalid("Neumann spectrum needs a positive first nonzero value"));
                }
            }
            _ => {
                if self.values[0] <= 0.0 {
                    return Err(invalid(format!(
                        "{} eigenvalues must be positive, got {}",
                        self.kind, self.values[0]
                    )));
                }
            }
        }
        if self.kind == ProblemKind::Dirichlet && self.values.len() > 1 {
            let gap = self.values[1] - self.values[0];
            if gap <= 1e-10 * self.values[0] {
                return Err(invalid("first Dirichlet eigenvalue must be simple"));
            }
        }
        if self.allowance.len() != self.values.len() {
            return Err(Error::Mismatch("allowance length differs from values".into()));
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Truncates to the first `count` entries.
    pub fn truncated(mut self, count: usize) -> Self {
        self.values.truncate(count);
        self.allowance.truncate(count);
        self
    }

    /// Multiplies every eigenvalue (and allowance) by `factor`.
    pub fn scaled(mut self, factor: f64) -> Self {
        for v in &mut self.values {
            *v *= factor;
        }
        for a in &mut self.allowance {
            *a *= factor.abs();
        }
        self
    }

    pub(crate) fn require(&self, need: usize) -> Result<()> {
        if self.values.len() < need {
            Err(Error::SpectrumTooShort { need, have: self.values.len() })
        } else {
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_unsorted_and_nonpositive() {
        let d = ProblemKind::Dirichlet;
        assert!(Spectrum::new(d, 2, vec![2.0, 1.0], "x", Provenance::ClosedForm).is_err());
        assert!(Spectrum::new(d, 2, vec![0.0, 1.0], "x", Provenance::ClosedForm).is_err());
        assert!(Spectrum::new(d, 2, vec![1.0, 1.0], "x", Provenance::ClosedForm).is_err());
        assert!(Spectrum::new(d, 1, vec![1.0], "x", Provenance::ClosedForm).is_err());
        assert!(Spectrum::new(d, 2, vec![1.0, 2.0, 2.0], "x", Provenance::ClosedForm).is_ok());
    }

    #[test]
    fn neumann_starts_at_zero() {
        let n = ProblemKind::Neumann;
        assert!(Spectrum::new(n, 2, vec![0.0, 3.0], "x", Provenance::Discrete).is_ok());
        assert!(Spectrum::new(n, 2, vec![0.1, 3.0], "x", Provenance::Discrete).is_err());
    }

    #[test]
    fn kind_round_trip() {
        for k in ProblemKind::ALL {
            assert_eq!(k.as_str().parse::<ProblemKind>().unwrap(), k);
            let json = serde_json::to_string(&k).unwrap();
            assert_eq!(json, format!("\"{}\"", k.as_str()));
        }
        assert!("nonsense".parse::<ProblemKind>().is_err());
    }
}
