use serde::{Deserialize, Serialize};

use super::isoperimetric::SpectraBundle;
use crate::error::{Error, Result};
use crate::spectrum::ProblemKind;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Proven,
    Conjecture,
    /// Range checks against known bounds on a supremum; never pass/fail.
    Informational,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Proven => "proven",
            Status::Conjecture => "conjecture",
            Status::Informational => "informational",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    MembraneGap,
    MembraneLow,
    Isoperimetric,
    Plate,
    Buckling,
    Polya,
}

impl Family {
    pub fn as_str(self) -> &'static str {
        match self {
            Family::MembraneGap => "membrane_gap",
            Family::MembraneLow => "membrane_low",
            Family::Isoperimetric => "isoperimetric",
            Family::Plate => "plate",
            Family::Buckling => "buckling",
            Family::Polya => "polya",
        }
    }
}

/// What an inequality needs from its inputs.
#[derive(Debug, Clone, Copy)]
pub struct Requires {
    pub kinds: &'static [ProblemKind],
    /// Only meaningful in this dimension.
    pub dimension: Option<usize>,
    /// Evaluated once per index `m ≥ 1`.
    pub indexed: bool,
    /// Minimum spectrum length as a function of `n` (non-indexed entries).
    pub min_len: fn(usize) -> usize,
    pub needs_area: bool,
}

impl Requires {
    pub fn applies(&self, bundle: &SpectraBundle) -> bool {
        if self.dimension.is_some_and(|d| d != bundle.dimension) {
            return false;
        }
        if self.needs_area && bundle.area.is_none() {
            return false;
        }
        let need = if self.indexed { 2 } else { (self.min_len)(bundle.dimension) };
        self.kinds.iter().all(|k| bundle.get(*k).is_some_and(|s| s.len() >= need))
    }
}

#[derive(Debug, Clone, Copy)]
pub struct InequalityDef {
    pub id: &'static str,
    pub status: Status,
    pub family: Family,
    pub requires: Requires,
    pub citation: &'static str,
    pub summary: &'static str,
}

use ProblemKind::{Buckling as B, Clamped as C, Dirichlet as D, Neumann as N};
use Status::{Conjecture, Informational, Proven};

const fn one(_: usize) -> usize {
    1
}
const fn two(_: usize) -> usize {
    2
}
const fn three(_: usize) -> usize {
    3
}
const fn n_plus_one(n: usize) -> usize {
    n + 1
}

const fn req(kinds: &'static [ProblemKind], min_len: fn(usize) -> usize) -> Requires {
    Requires { kinds, dimension: None, indexed: false, min_len, needs_area: false }
}
const fn indexed(kind: &'static [ProblemKind]) -> Requires {
    Requires { kinds: kind, dimension: None, indexed: true, min_len: two, needs_area: false }
}
const fn planar(r: Requires) -> Requires {
    Requires { dimension: Some(2), ..r }
}
const fn with_area(r: Requires) -> Requires {
    Requires { needs_area: true, ..r }
}

const fn def(
    id: &'static str,
    status: Status,
    family: Family,
    requires: Requires,
    citation: &'static str,
    summary: &'static str,
) -> InequalityDef {
    InequalityDef { id, status, family, requires, citation, summary }
}

static DEFS: [InequalityDef; 35] = [
    def("ppw_gap", Proven, Family::MembraneGap, indexed(&[D]),
        "Payne, Pólya & Weinberger (1956), n-dimensional form",
        "λ_{m+1} − λ_m ≤ (4/mn) Σ_{i≤m} λ_i"),
    def("yang1", Proven, Family::MembraneGap, indexed(&[D]),
        "H. C. Yang (1991), first inequality",
        "λ_{m+1} ≤ larger root of m x² − 2(1+2/n)(Σλ_i)x + (1+4/n)Σλ_i²"),
    def("yang2", Proven, Family::MembraneGap, indexed(&[D]),
        "H. C. Yang (1991), second inequality",
        "λ_{m+1} ≤ (1+4/n)(1/m) Σ_{i≤m} λ_i"),
    def("hile_protter", Proven, Family::MembraneGap, indexed(&[D]),
        "Hile & Protter (1980)",
        "Σ_{i≤m} λ_i/(λ_{m+1} − λ_i) ≥ mn/4"),
    def("ratio_ball_m", Conjecture, Family::MembraneGap, indexed(&[D]),
        "Payne, Pólya & Weinberger (1956), consecutive-ratio conjecture",
        "λ_{m+1}/λ_m ≤ λ₂/λ₁ of a ball"),
    def("sum_n4", Proven, Family::MembraneLow, req(&[D], n_plus_one),
        "Payne, Pólya & Weinberger (1956), trace form",
        "(λ₂ + … + λ_{n+1})/λ₁ ≤ n + 4"),
    def("brands", Proven, Family::MembraneLow, req(&[D], n_plus_one),
        "Brands (1964); extension to n dimensions by Hile & Protter",
        "(λ₂ + … + λ_{n+1})/λ₁ ≤ n + 3 + λ₁/λ₂"),
    def("l2l3_window", Informational, Family::MembraneLow, planar(req(&[D], three)),
        "known bounds 5.077 ≤ sup (λ₂+λ₃)/λ₁ ≤ 5.50661 over planar domains",
        "(λ₂+λ₃)/λ₁ ∈ [5.077, 5.50661]"),
    def("l3_window", Informational, Family::MembraneLow, planar(req(&[D], three)),
        "known bounds 35/11 ≤ sup λ₃/λ₁ ≤ 3.83103 over planar domains",
        "λ₃/λ₁ ∈ [35/11, 3.83103]"),
    def("ppw_sum_disk", Conjecture, Family::MembraneLow, req(&[D], n_plus_one),
        "Payne, Pólya & Weinberger (1956), trace-form conjecture",
        "(λ₂ + … + λ_{n+1})/λ₁ ≤ its value for a ball"),
    def("faber_krahn", Proven, Family::Isoperimetric, with_area(req(&[D], one)),
        "Rayleigh (1877) conjecture; Faber (1923), Krahn (1925)",
        "λ₁(Ω) ≥ λ₁(Ω*)"),
    def("szego_weinberger", Proven, Family::Isoperimetric, with_area(req(&[N], two)),
        "Szegő (1954), Weinberger (1956)",
        "μ₁(Ω) ≤ μ₁(Ω*)"),
    def("ppw_ratio", Proven, Family::Isoperimetric, req(&[D], two),
        "Payne-Pólya-Weinberger conjecture, proved 1990",
        "λ₂/λ₁ ≤ j²_{n/2,1}/j²_{n/2−1,1}"),
    def("fixed_lambda1", Proven, Family::Isoperimetric, req(&[D], two),
        "comparison with the ball of equal λ₁, proved 1990",
        "λ₂(Ω) ≤ λ₂(B_R) where λ₁(B_R) = λ₁(Ω)"),
    def("payne_buckling", Proven, Family::Isoperimetric, req(&[D, B], two),
        "Payne (1955)",
        "Λ₁(Ω) ≥ λ₂(Ω)"),
    def("krahn_l2", Proven, Family::Isoperimetric, with_area(req(&[D], two)),
        "Krahn (1926), second eigenvalue",
        "λ₂(Ω) ≥ 2^{2/n} λ₁(Ω*)"),
    def("bramble_payne", Proven, Family::Isoperimetric, with_area(req(&[B], one)),
        "Bramble & Payne (1963)",
        "Λ₁(Ω) ≥ c_n Λ₁(Ω*)"),
    def("two_ball_lower", Proven, Family::Isoperimetric, with_area(req(&[C], one)),
        "Talenti (1981) two-ball method; Nadirashvili (1995) for n = 2",
        "Γ₁(Ω) ≥ d_n Γ₁(Ω*)"),
    def("polya_szego_buckling", Conjecture, Family::Isoperimetric, with_area(req(&[B], one)),
        "Pólya & Szegő (1951) conjecture",
        "Λ₁(Ω) ≥ Λ₁(Ω*)"),
    def("ppw_plate_gap", Proven, Family::Plate, indexed(&[C]),
        "Payne, Pólya & Weinberger (1956), clamped plate",
        "Γ_{m+1} − Γ_m ≤ 8(n+2)/(n²m) Σ_{i≤m} Γ_i"),
    def("ppw_plate_gap_sqrt", Proven, Family::Plate, indexed(&[C]),
        "square-root form of the Payne-Pólya-Weinberger plate bound",
        "Γ_{m+1} − Γ_m ≤ 8(n+2)/(n²m²) (Σ_{i≤m} Γ_i^{1/2})²"),
    def("hile_yeh", Proven, Family::Plate, indexed(&[C]),
        "Hile & Yeh (1984); Hook (1990); Chen & Qian (1990)",
        "n²m²/(8(n+2)) ≤ (Σ Γ_i^{1/2}/(Γ_{m+1} − Γ_i))(Σ Γ_i^{1/2})"),
    def("conj_356", Conjecture, Family::Plate, indexed(&[C]),
        "conjectured strengthening of the Hile-Yeh bound",
        "(Σ (Γ_i/(Γ_{m+1} − Γ_i))^{1/2})² ≥ n²m²/(8(n+2))"),
    def("cheb_357", Proven, Family::Plate, indexed(&[C]),
        "Chebyshev-sum consequence of the Hile-Yeh bound",
        "Σ Γ_i/(Γ_{m+1} − Γ_i) ≥ n²m/(8(n+2))"),
    def("ratio_165", Proven, Family::Plate, indexed(&[C]),
        "Payne, Pólya & Weinberger (1956), clamped plate ratio",
        "Γ_{m+1}/Γ_m ≤ (1 + 4/n)²"),
    def("sum_plate_sqrt", Proven, Family::Plate, req(&[C], n_plus_one),
        "trace-form bound for the clamped plate",
        "(Γ₂^{1/2} + … + Γ_{n+1}^{1/2})/Γ₁^{1/2} ≤ n + 4"),
    def("sum_plate", Proven, Family::Plate, req(&[C], n_plus_one),
        "trace-form bound for the clamped plate, squared form",
        "(Γ₂ + … + Γ_{n+1})/Γ₁ ≤ n + 24"),
    def("hile_yeh_cubic", Proven, Family::Plate, req(&[C], two),
        "Hile & Yeh (1984), ratio bound",
        "Γ₂/Γ₁ ≤ root x > 1 of (x − 1)³ = 512x/(n²(n+2))"),
    def("plate_ratio_ball", Conjecture, Family::Plate, req(&[C], two),
        "Payne-Pólya-Weinberger-type conjecture for the clamped plate",
        "Γ₂/Γ₁ ≤ its value for a ball"),
    def("ppw_buckling", Proven, Family::Buckling, req(&[B], two),
        "Payne, Pólya & Weinberger (1956), buckling",
        "Λ₂/Λ₁ ≤ 1 + 4/n"),
    def("hile_yeh_buckling", Proven, Family::Buckling, req(&[B], two),
        "Hile & Yeh (1984), buckling",
        "Λ₂/Λ₁ ≤ (n² + 8n + 20)/(n + 2)²"),
    def("sum_buckling", Proven, Family::Buckling, req(&[B], n_plus_one),
        "trace-form bound for buckling",
        "(Λ₂ + … + Λ_{n+1})/Λ₁ ≤ n + 4"),
    def("buckling_ratio_ball", Conjecture, Family::Buckling, req(&[B], two),
        "Payne-Pólya-Weinberger-type conjecture for buckling",
        "Λ₂/Λ₁ ≤ its value for a ball"),
    def("polya_dirichlet", Conjecture, Family::Polya, with_area(planar(req(&[D], one))),
        "Pólya (1954) conjecture; proved for tiling domains (1961)",
        "λ_k ≥ 4πk/A"),
    def("polya_neumann", Conjecture, Family::Polya, with_area(planar(req(&[N], two))),
        "Pólya (1954) conjecture; proved for tiling domains (1961)",
        "μ_k ≤ 4πk/A"),
];

/// The full catalog, in report order.
pub fn definitions() -> &'static [InequalityDef] {
    &DEFS
}

pub fn lookup(id: &str) -> Result<&'static InequalityDef> {
    DEFS.iter().find(|d| d.id == id).ok_or_else(|| Error::UnknownInequality(id.to_string()))
}
