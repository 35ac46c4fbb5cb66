use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::catalog::lookup;
use crate::error::{Error, Result};
use crate::grid::Shape;
use crate::spectrum::ProblemKind;

pub const SCHEMA_VERSION: u32 = 1;

/// A shape given either as a tagged object or as a `kind:args` descriptor.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ShapeSpec {
    Text(String),
    Object(Shape),
}

impl ShapeSpec {
    pub fn resolve(&self) -> Result<Shape> {
        let shape = match self {
            ShapeSpec::Text(s) => s.parse()?,
            ShapeSpec::Object(s) => s.clone(),
        };
        shape.validate()?;
        Ok(shape)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DomainEntry {
    pub label: String,
    pub shape: ShapeSpec,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MeshConfig {
    /// Coarsest mesh width.
    pub h: f64,
    /// Number of successively halved meshes.
    pub levels: usize,
}

fn default_k_max() -> usize {
    10
}

fn default_output() -> PathBuf {
    PathBuf::from("specineq-out")
}

fn default_scale() -> f64 {
    1.0
}

/// Input of `specineq verify`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub schema_version: u32,
    pub domains: Vec<DomainEntry>,
    pub problems: Vec<ProblemKind>,
    pub mesh: MeshConfig,
    pub m_max: usize,
    #[serde(default = "default_k_max")]
    pub k_max: usize,
    /// Dimensions for the constants table; empty to skip it.
    #[serde(default)]
    pub dimensions: Vec<usize>,
    /// Restrict the catalog to these ids.
    #[serde(default)]
    pub inequalities: Option<Vec<String>>,
    #[serde(default = "default_output")]
    pub output_dir: PathBuf,
    /// Worker threads; defaults to the available parallelism.
    #[serde(default)]
    pub threads: Option<usize>,
    #[serde(default = "default_scale")]
    pub tolerance_scale: f64,
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: RunConfig = serde_json::from_str(text).map_err(|e| {
            let line = text.lines().nth(e.line().saturating_sub(1)).unwrap_or("").trim();
            Error::Config(format!("line {}, column {}: {e}\n    {line}", e.line(), e.column()))
        })?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Config(m));
        if self.schema_version != SCHEMA_VERSION {
            return bad(format!("unsupported schema_version {}, expected {SCHEMA_VERSION}", self.schema_version));
        }
        if self.domains.is_empty() {
            return bad("no domains given".into());
        }
        if self.problems.is_empty() {
            return bad("no problems given".into());
        }
        if self.mesh.levels < 2 {
            return bad(format!("mesh.levels must be at least 2 for extrapolation, got {}", self.mesh.levels));
        }
        if !(self.mesh.h.is_finite() && self.mesh.h > 0.0) {
            return bad(format!("mesh.h must be positive, got {}", self.mesh.h));
        }
        if self.m_max == 0 {
            return bad("m_max must be at least 1".into());
        }
        if self.threads == Some(0) {
            return bad("threads must be at least 1".into());
        }
        if !(self.tolerance_scale.is_finite() && self.tolerance_scale >= 0.0) {
            return bad(format!("tolerance_scale must be nonnegative, got {}", self.tolerance_scale));
        }
        if let Some(&n) = self.dimensions.iter().find(|n| **n < 2) {
            return bad(format!("dimension {n} is below 2"));
        }
        let mut labels: Vec<&str> = self.domains.iter().map(|d| d.label.as_str()).collect();
        labels.sort_unstable();
        if let Some(w) = labels.windows(2).find(|w| w[0] == w[1]) {
            return bad(format!("duplicate domain label `{}`", w[0]));
        }
        for d in &self.domains {
            d.shape.resolve().map_err(|e| Error::Config(format!("domain `{}`: {e}", d.label)))?;
        }
        if let Some(ids) = &self.inequalities {
            for id in ids {
                lookup(id).map_err(|e| Error::Config(e.to_string()))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const GOOD: &str = r#"{
        "schema_version": 1,
        "domains": [
            {"label": "square", "shape": "rectangle:1,1"},
            {"label": "disk", "shape": {"type": "disk", "radius": 1.0}}
        ],
        "problems": ["dirichlet", "neumann"],
        "mesh": {"h": 0.125, "levels": 2},
        "m_max": 3
    }"#;

    #[test]
    fn parses_with_defaults() {
        let c = RunConfig::from_json(GOOD).unwrap();
        assert_eq!(c.k_max, 10);
        assert_eq!(c.tolerance_scale, 1.0);
        assert_eq!(c.domains[1].shape.resolve().unwrap(), Shape::Disk { radius: 1.0 });
    }

    #[test]
    fn errors_carry_line_context() {
        let broken = GOOD.replace("\"m_max\": 3", "\"m_max\": three");
        match RunConfig::from_json(&broken) {
            Err(Error::Config(m)) => assert!(m.starts_with("line 9") && m.contains("three"), "{m}"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn semantic_checks() {
        for (from, to) in [
            ("\"levels\": 2", "\"levels\": 1"),
            ("\"m_max\": 3", "\"m_max\": 0"),
            ("\"schema_version\": 1", "\"schema_version\": 2"),
            ("rectangle:1,1", "rectangle:1"),
            ("\"label\": \"disk\"", "\"label\": \"square\""),
        ] {
            assert!(matches!(RunConfig::from_json(&GOOD.replace(from, to)), Err(Error::Config(_))), "{to}");
        }
        let empty = GOOD.replace(
            r#"{"label": "square", "shape": "rectangle:1,1"},
            {"label": "disk", "shape": {"type": "disk", "radius": 1.0}}"#,
            "",
        );
        assert!(matches!(RunConfig::from_json(&empty), Err(Error::Config(m)) if m.contains("no domains")));
        let unknown = GOOD.replace("\"m_max\": 3", "\"m_max\": 3, \"inequalities\": [\"nope\"]");
        assert!(RunConfig::from_json(&unknown).is_err());
    }
}
