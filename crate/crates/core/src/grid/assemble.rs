use crate::error::{Error, Result};
use crate::grid::domain::{GridDomain, Lattice};
use crate::spectrum::ProblemKind;

/// Square sparse matrix in compressed-row form.
#[derive(Debug, Clone, PartialEq)]
pub struct CsrMatrix {
    pub n: usize,
    pub row_ptr: Vec<usize>,
    pub col_idx: Vec<usize>,
    pub values: Vec<f64>,
}

impl CsrMatrix {
    /// Builds from unsorted triplets, summing duplicates in insertion order.
    pub fn from_triplets(n: usize, mut t: Vec<(usize, usize, f64)>) -> Self {
        t.sort_by_key(|&(r, c, _)| (r, c));
        let mut row_ptr = vec![0usize; n + 1];
        let mut col_idx = Vec::with_capacity(t.len());
        let mut values: Vec<f64> = Vec::with_capacity(t.len());
        let mut last: Option<(usize, usize)> = None;
        for (r, c, v) in t {
            if last == Some((r, c)) {
                *values.last_mut().expect("entry exists") += v;
            } else {
                col_idx.push(c);
                values.push(v);
                row_ptr[r + 1] += 1;
                last = Some((r, c));
            }
        }
        for i in 0..n {
            row_ptr[i + 1] += row_ptr[i];
        }
        CsrMatrix { n, row_ptr, col_idx, values }
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    pub fn row(&self, i: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        let r = self.row_ptr[i]..self.row_ptr[i + 1];
        self.col_idx[r.clone()].iter().copied().zip(self.values[r].iter().copied())
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.row(i).find(|&(c, _)| c == j).map_or(0.0, |(_, v)| v)
    }

    pub fn mul_vec(&self, x: &[f64], y: &mut [f64]) {
        for (i, yi) in y.iter_mut().enumerate() {
            *yi = self.row(i).map(|(c, v)| v * x[c]).sum();
        }
    }

    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        let mut y = vec![0.0; self.n];
        self.mul_vec(x, &mut y);
        y
    }

    /// `max |A − Aᵀ|` over stored entries.
    pub fn asymmetry(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..self.n {
            for (j, v) in self.row(i) {
                worst = worst.max((v - self.get(j, i)).abs());
            }
        }
        worst
    }

    /// Maximum absolute row sum.
    pub fn norm_inf(&self) -> f64 {
        (0..self.n).map(|i| self.row(i).map(|(_, v)| v.abs()).sum::<f64>()).fold(0.0, f64::max)
    }

    pub fn dot_form(&self, x: &[f64], y: &[f64]) -> f64 {
        (0..self.n).map(|i| x[i] * self.row(i).map(|(c, v)| v * y[c]).sum::<f64>()).sum()
    }

    pub(crate) fn scale(mut self, s: f64) -> Self {
        for v in &mut self.values {
            *v *= s;
        }
        self
    }
}

/// A symmetric discrete eigenproblem `A x = θ B x` on a grid domain
/// (`B = I` unless stated).
#[derive(Debug, Clone)]
pub struct DiscreteOperator {
    pub kind: ProblemKind,
    pub h: f64,
    pub label: String,
    pub a: CsrMatrix,
    pub b: Option<CsrMatrix>,
}

impl DiscreteOperator {
    pub fn dim(&self) -> usize {
        self.a.n
    }
}

const DIRS: [(i64, i64); 4] = [(1, 0), (-1, 0), (0, 1), (0, -1)];

/// `−Δ_h` with zero values outside the mask, unscaled (entries 4 and −1).
fn dirichlet_unscaled(d: &GridDomain) -> CsrMatrix {
    let mut t = Vec::with_capacity(5 * d.len());
    for k in 0..d.len() {
        let (ix, iy) = d.node_site(k);
        t.push((k, k, 4.0));
        for (dx, dy) in DIRS {
            if let Some(nb) = d.at(ix, iy, dx, dy) {
                t.push((k, nb, -1.0));
            }
        }
    }
    CsrMatrix::from_triplets(d.len(), t)
}

/// Graph Laplacian over interior links, each of weight `w`: a mirror ghost
/// across every missing link cancels that link's flux.
fn neumann_weighted(d: &GridDomain, w: f64) -> CsrMatrix {
    let mut t = Vec::with_capacity(5 * d.len());
    for k in 0..d.len() {
        let (ix, iy) = d.node_site(k);
        let mut deg = 0.0;
        for (dx, dy) in DIRS {
            if let Some(nb) = d.at(ix, iy, dx, dy) {
                t.push((k, nb, -w));
                deg += w;
            }
        }
        t.push((k, k, deg));
    }
    CsrMatrix::from_triplets(d.len(), t)
}

/// `Lᵀ W L` where `L` evaluates `h² Δ_h w` at interior nodes (weight 1) and at
/// the exterior sites adjacent to them (weight ½). Exterior values are zero;
/// at an exterior site the missing neighbor across it is replaced by its
/// mirror image, which encodes `∂w/∂n = 0`. On a straight edge this gives the
/// standard 13-point stencil with reflected ghosts.
fn clamped_unscaled(d: &GridDomain) -> CsrMatrix {
    let (nx, ny) = d.dims();
    let mut rows: Vec<(f64, Vec<(usize, f64)>)> = Vec::with_capacity(d.len() * 3 / 2);
    for k in 0..d.len() {
        let (ix, iy) = d.node_site(k);
        let mut r = vec![(k, -4.0)];
        for (dx, dy) in DIRS {
            if let Some(nb) = d.at(ix, iy, dx, dy) {
                r.push((nb, 1.0));
            }
        }
        rows.push((1.0, r));
    }
    for iy in 0..ny {
        for ix in 0..nx {
            if d.is_interior(ix, iy) {
                continue;
            }
            let mut r: Vec<(usize, f64)> = Vec::new();
            for (dx, dy) in DIRS {
                let src = d.at(ix, iy, dx, dy).or_else(|| d.at(ix, iy, -dx, -dy));
                if let Some(nb) = src {
                    match r.iter_mut().find(|(c, _)| *c == nb) {
                        Some(e) => e.1 += 1.0,
                        None => r.push((nb, 1.0)),
                    }
                }
            }
            if !r.is_empty() && DIRS.iter().any(|&(dx, dy)| d.at(ix, iy, dx, dy).is_some()) {
                rows.push((0.5, r));
            }
        }
    }
    let mut t = Vec::new();
    for (w, r) in &rows {
        for &(ci, vi) in r {
            for &(cj, vj) in r {
                t.push((ci, cj, w * vi * vj));
            }
        }
    }
    CsrMatrix::from_triplets(d.len(), t)
}

/// Assembles the discrete operator for `kind` on `domain`.
///
/// The Neumann operator lives on the cell-centered lattice; a vertex-lattice
/// domain is resampled first, so its dimension may differ from `domain.len()`.
pub fn assemble(domain: &GridDomain, kind: ProblemKind) -> Result<DiscreteOperator> {
    let h = domain.h;
    let h2 = 1.0 / (h * h);
    let (a, b) = match kind {
        ProblemKind::Dirichlet => (dirichlet_unscaled(domain).scale(h2), None),
        ProblemKind::Neumann => {
            let cells = domain.with_lattice(Lattice::CellCentered)?;
            (neumann_weighted(&cells, h2), None)
        }
        ProblemKind::Clamped => (clamped_unscaled(domain).scale(h2 * h2), None),
        ProblemKind::Buckling => {
            (clamped_unscaled(domain).scale(h2 * h2), Some(dirichlet_unscaled(domain).scale(h2)))
        }
    };
    let op = DiscreteOperator { kind, h, label: domain.label.clone(), a, b };
    let asym = op.a.asymmetry().max(op.b.as_ref().map_or(0.0, |m| m.asymmetry()));
    if asym != 0.0 {
        return Err(Error::Inconsistent(format!("assembled {kind} operator is not symmetric ({asym})")));
    }
    Ok(op)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::domain::{rasterize, Shape};

    #[test]
    fn one_dimensional_clamped_rows() {
        // A single row of nodes. The ghost reflection at x = 0 adds one to the
        // end diagonal, as in the 1-D row (7, -4, 1).
        let d = rasterize(&Shape::Rectangle { a: 8.0, b: 2.0 }, 1.0, "strip").unwrap();
        assert_eq!(d.len(), 7);
        let a = clamped_unscaled(&d);
        assert!(a.asymmetry() == 0.0);
        let diag0 = a.get(0, 0);
        let interior_diag = a.get(3, 3);
        assert_eq!(diag0 - interior_diag, 1.0);
        assert_eq!(a.get(0, 1), -8.0);
        assert_eq!(a.get(0, 2), 1.0);
    }

    #[test]
    fn clamped_interior_is_thirteen_point() {
        let d = rasterize(&Shape::Rectangle { a: 10.0, b: 10.0 }, 1.0, "sq").unwrap();
        let a = clamped_unscaled(&d);
        // center node (5,5) in global coordinates
        let k = (0..d.len()).find(|&k| d.node_xy(k) == (5.0, 5.0)).unwrap();
        let row: Vec<(usize, f64)> = a.row(k).collect();
        assert_eq!(row.len(), 13);
        assert_eq!(a.get(k, k), 20.0);
        let sum: f64 = row.iter().map(|r| r.1).sum();
        assert_eq!(sum, 0.0);
        // corner-adjacent node (1,1): ghost reflections across both edges
        let c = (0..d.len()).find(|&k| d.node_xy(k) == (1.0, 1.0)).unwrap();
        assert_eq!(a.get(c, c), 22.0);
    }

    #[test]
    fn operators_symmetric() {
        let d = rasterize(&Shape::Disk { radius: 1.0 }, 0.1, "disk").unwrap();
        for kind in ProblemKind::ALL {
            let op = assemble(&d, kind).unwrap();
            assert_eq!(op.a.asymmetry(), 0.0);
            if let Some(b) = &op.b {
                assert_eq!(b.asymmetry(), 0.0);
            }
        }
    }

    #[test]
    fn neumann_annihilates_constants() {
        let d = rasterize(&Shape::LShape { size: 1.0, arm: 0.5 }, 0.05, "L").unwrap();
        let op = assemble(&d, ProblemKind::Neumann).unwrap();
        let ones = vec![1.0; op.dim()];
        let scale = op.a.norm_inf();
        assert!(op.a.apply(&ones).iter().all(|v| v.abs() <= 1e-14 * scale));
    }
}
