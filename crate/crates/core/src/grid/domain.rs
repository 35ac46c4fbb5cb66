use std::collections::VecDeque;
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// Analytic planar shapes with exact area.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Shape {
    /// Disk of the given radius centered at the origin.
    Disk { radius: f64 },
    /// Ellipse with semi-axes `a` (along x) and `b` (along y), centered at the origin.
    Ellipse { a: f64, b: f64 },
    /// The rectangle `[0, a] × [0, b]`.
    Rectangle { a: f64, b: f64 },
    /// `[0, size]²` with the square `[arm, size]²` removed.
    #[serde(rename = "lshape")]
    LShape { size: f64, arm: f64 },
    /// Annulus `inner < |x| < outer` centered at the origin.
    Annulus { inner: f64, outer: f64 },
    /// Simple polygon through the listed vertices.
    Polygon { vertices: Vec<[f64; 2]> },
}

fn nonneg(name: &str, v: f64) -> Result<()> {
    if v.is_finite() && v >= 0.0 {
        Ok(())
    } else {
        Err(invalid(format!("{name} must be finite and nonnegative, got {v}")))
    }
}

impl Shape {
    pub fn validate(&self) -> Result<()> {
        match self {
            Shape::Disk { radius } => nonneg("radius", *radius),
            Shape::Ellipse { a, b } | Shape::Rectangle { a, b } => {
                nonneg("a", *a)?;
                nonneg("b", *b)
            }
            Shape::LShape { size, arm } => {
                nonneg("size", *size)?;
                nonneg("arm", *arm)?;
                if arm > size {
                    return Err(invalid(format!("L-shape arm {arm} exceeds size {size}")));
                }
                Ok(())
            }
            Shape::Annulus { inner, outer } => {
                nonneg("inner radius", *inner)?;
                nonneg("outer radius", *outer)?;
                if inner > outer {
                    return Err(invalid(format!("annulus inner radius {inner} exceeds outer {outer}")));
                }
                Ok(())
            }
            Shape::Polygon { vertices } => {
                if vertices.len() < 3 {
                    return Err(invalid("a polygon needs at least three vertices"));
                }
                if vertices.iter().flatten().any(|c| !c.is_finite()) {
                    return Err(invalid("polygon vertices must be finite"));
                }
                Ok(())
            }
        }
    }

    pub fn area(&self) -> f64 {
        match self {
            Shape::Disk { radius } => PI * radius * radius,
            Shape::Ellipse { a, b } => PI * a * b,
            Shape::Rectangle { a, b } => a * b,
            Shape::LShape { size, arm } => size * size - (size - arm) * (size - arm),
            Shape::Annulus { inner, outer } => PI * (outer * outer - inner * inner),
            Shape::Polygon { vertices } => {
                let n = vertices.len();
                let twice: f64 = (0..n)
                    .map(|i| {
                        let [x0, y0] = vertices[i];
                        let [x1, y1] = vertices[(i + 1) % n];
                        x0 * y1 - x1 * y0
                    })
                    .sum();
                0.5 * twice.abs()
            }
        }
    }

    /// Boundary length (Ramanujan's approximation for the ellipse).
    pub fn perimeter(&self) -> f64 {
        match self {
            Shape::Disk { radius } => 2.0 * PI * radius,
            Shape::Ellipse { a, b } => {
                let h = ((a - b) / (a + b)).powi(2);
                PI * (a + b) * (1.0 + 3.0 * h / (10.0 + (4.0 - 3.0 * h).sqrt()))
            }
            Shape::Rectangle { a, b } => 2.0 * (a + b),
            Shape::LShape { size, .. } => 4.0 * size,
            Shape::Annulus { inner, outer } => 2.0 * PI * (inner + outer),
            Shape::Polygon { vertices } => {
                let n = vertices.len();
                (0..n)
                    .map(|i| {
                        let [x0, y0] = vertices[i];
                        let [x1, y1] = vertices[(i + 1) % n];
                        (x1 - x0).hypot(y1 - y0)
                    })
                    .sum()
            }
        }
    }

    fn bounding_box(&self) -> [f64; 4] {
        match self {
            Shape::Disk { radius } => [-radius, -radius, *radius, *radius],
            Shape::Ellipse { a, b } => [-a, -b, *a, *b],
            Shape::Rectangle { a, b } => [0.0, 0.0, *a, *b],
            Shape::LShape { size, .. } => [0.0, 0.0, *size, *size],
            Shape::Annulus { outer, .. } => [-outer, -outer, *outer, *outer],
            Shape::Polygon { vertices } => {
                let mut bb = [f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY];
                for &[x, y] in vertices {
                    bb = [bb[0].min(x), bb[1].min(y), bb[2].max(x), bb[3].max(y)];
                }
                bb
            }
        }
    }

    /// Whether `(x, y)` lies inside the shape by more than `eps`.
    pub fn contains(&self, x: f64, y: f64, eps: f64) -> bool {
        match self {
            Shape::Disk { radius } => x.hypot(y) < radius - eps,
            Shape::Ellipse { a, b } => {
                let (a, b) = (a - eps, b - eps);
                a > 0.0 && b > 0.0 && (x / a).powi(2) + (y / b).powi(2) < 1.0
            }
            Shape::Rectangle { a, b } => x > eps && x < a - eps && y > eps && y < b - eps,
            Shape::LShape { size, arm } => {
                let in_square = x > eps && x < size - eps && y > eps && y < size - eps;
                in_square && (x < arm - eps || y < arm - eps)
            }
            Shape::Annulus { inner, outer } => {
                let r = x.hypot(y);
                r > inner + eps && r < outer - eps
            }
            Shape::Polygon { vertices } => polygon_contains(vertices, x, y, eps),
        }
    }
}

fn polygon_contains(v: &[[f64; 2]], x: f64, y: f64, eps: f64) -> bool {
    let n = v.len();
    let mut inside = false;
    for i in 0..n {
        let [x0, y0] = v[i];
        let [x1, y1] = v[(i + 1) % n];
        // distance to the edge
        let (dx, dy) = (x1 - x0, y1 - y0);
        let len2 = dx * dx + dy * dy;
        let s = if len2 > 0.0 { (((x - x0) * dx + (y - y0) * dy) / len2).clamp(0.0, 1.0) } else { 0.0 };
        if (x - x0 - s * dx).hypot(y - y0 - s * dy) <= eps {
            return false;
        }
        if (y0 > y) != (y1 > y) && x < x0 + (y - y0) * dx / dy {
            inside = !inside;
        }
    }
    inside
}

fn parse_list(s: &str, count: usize) -> Result<Vec<f64>> {
    let vals: std::result::Result<Vec<f64>, _> = s.split(',').map(|t| t.trim().parse::<f64>()).collect();
    let vals = vals.map_err(|e| invalid(format!("bad number in `{s}`: {e}")))?;
    if vals.len() != count {
        return Err(invalid(format!("expected {count} numbers in `{s}`, got {}", vals.len())));
    }
    Ok(vals)
}

impl FromStr for Shape {
    type Err = Error;

    /// Parses `disk:R`, `ellipse:A,B`, `rectangle:A,B`, `lshape:S,ARM`,
    /// `annulus:RI,RO` or `polygon:x,y;x,y;...`.
    fn from_str(s: &str) -> Result<Self> {
        let (kind, args) = s
            .split_once(':')
            .ok_or_else(|| invalid(format!("shape descriptor `{s}` lacks `kind:` prefix")))?;
        let shape = match kind.trim().to_ascii_lowercase().as_str() {
            "disk" => Shape::Disk { radius: parse_list(args, 1)?[0] },
            "ellipse" => {
                let v = parse_list(args, 2)?;
                Shape::Ellipse { a: v[0], b: v[1] }
            }
            "rectangle" | "rect" => {
                let v = parse_list(args, 2)?;
                Shape::Rectangle { a: v[0], b: v[1] }
            }
            "lshape" => {
                let v = parse_list(args, 2)?;
                Shape::LShape { size: v[0], arm: v[1] }
            }
            "annulus" => {
                let v = parse_list(args, 2)?;
                Shape::Annulus { inner: v[0], outer: v[1] }
            }
            "polygon" => {
                let vertices = args
                    .split(';')
                    .filter(|p| !p.trim().is_empty())
                    .map(|p| parse_list(p, 2).map(|v| [v[0], v[1]]))
                    .collect::<Result<Vec<_>>>()?;
                Shape::Polygon { vertices }
            }
            other => return Err(invalid(format!("unknown shape kind `{other}`"))),
        };
        shape.validate()?;
        Ok(shape)
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Shape::Disk { radius } => write!(f, "disk:{radius}"),
            Shape::Ellipse { a, b } => write!(f, "ellipse:{a},{b}"),
            Shape::Rectangle { a, b } => write!(f, "rectangle:{a},{b}"),
            Shape::LShape { size, arm } => write!(f, "lshape:{size},{arm}"),
            Shape::Annulus { inner, outer } => write!(f, "annulus:{inner},{outer}"),
            Shape::Polygon { vertices } => {
                write!(f, "polygon:")?;
                for (i, [x, y]) in vertices.iter().enumerate() {
                    if i > 0 {
                        write!(f, ";")?;
                    }
                    write!(f, "{x},{y}")?;
                }
                Ok(())
            }
        }
    }
}

/// Placement of the lattice relative to the coordinate axes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Lattice {
    /// Nodes at `(ih, jh)`; used by the Dirichlet, clamped and buckling operators.
    Vertex,
    /// Nodes at `((i+½)h, (j+½)h)`; used by the Neumann operator so that
    /// straight edges on the lattice lines sit halfway between nodes.
    CellCentered,
}

/// A shape sampled on a square lattice of width `h`.
#[derive(Debug, Clone)]
pub struct GridDomain {
    pub label: String,
    pub shape: Shape,
    pub h: f64,
    pub lattice: Lattice,
    pub area_exact: f64,
    pub perimeter: f64,
    /// Global lattice index of local column/row 0.
    i0: i64,
    j0: i64,
    nx: usize,
    ny: usize,
    /// Unknown number per lattice site, `usize::MAX` outside.
    index: Vec<usize>,
    /// Local `(ix, iy)` of each unknown.
    nodes: Vec<(usize, usize)>,
}

const PAD: i64 = 3;
const OUTSIDE: usize = usize::MAX;

impl GridDomain {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.nx, self.ny)
    }

    fn offset(&self) -> f64 {
        match self.lattice {
            Lattice::Vertex => 0.0,
            Lattice::CellCentered => 0.5,
        }
    }

    /// Coordinates of lattice site `(ix, iy)` in local indexing.
    pub fn site_xy(&self, ix: usize, iy: usize) -> (f64, f64) {
        let o = self.offset();
        ((self.i0 + ix as i64) as f64 * self.h + o * self.h, (self.j0 + iy as i64) as f64 * self.h + o * self.h)
    }

    /// Coordinates of unknown `k`.
    pub fn node_xy(&self, k: usize) -> (f64, f64) {
        let (ix, iy) = self.nodes[k];
        self.site_xy(ix, iy)
    }

    pub fn node_site(&self, k: usize) -> (usize, usize) {
        self.nodes[k]
    }

    /// Unknown at local site `(ix + dx, iy + dy)`, if that site is interior.
    pub fn at(&self, ix: usize, iy: usize, dx: i64, dy: i64) -> Option<usize> {
        let x = ix as i64 + dx;
        let y = iy as i64 + dy;
        if x < 0 || y < 0 || x >= self.nx as i64 || y >= self.ny as i64 {
            return None;
        }
        let k = self.index[y as usize * self.nx + x as usize];
        (k != OUTSIDE).then_some(k)
    }

    pub fn is_interior(&self, ix: usize, iy: usize) -> bool {
        self.at(ix, iy, 0, 0).is_some()
    }

    /// Node count times `h²`.
    pub fn discrete_area(&self) -> f64 {
        self.len() as f64 * self.h * self.h
    }

    /// The same shape sampled on the other lattice placement.
    pub fn with_lattice(&self, lattice: Lattice) -> Result<GridDomain> {
        if lattice == self.lattice {
            return Ok(self.clone());
        }
        rasterize_on(&self.shape, self.h, lattice, &self.label)
    }
}

/// Samples `shape` on the vertex lattice of width `h`.
pub fn rasterize(shape: &Shape, h: f64, label: impl Into<String>) -> Result<GridDomain> {
    rasterize_on(shape, h, Lattice::Vertex, &label.into())
}

pub fn rasterize_on(shape: &Shape, h: f64, lattice: Lattice, label: &str) -> Result<GridDomain> {
    shape.validate()?;
    if !(h.is_finite() && h > 0.0) {
        return Err(invalid(format!("mesh width must be positive, got {h}")));
    }
    let [x0, y0, x1, y1] = shape.bounding_box();
    let i0 = (x0 / h).floor() as i64 - PAD;
    let j0 = (y0 / h).floor() as i64 - PAD;
    let nx = ((x1 / h).ceil() as i64 + PAD - i0 + 1) as usize;
    let ny = ((y1 / h).ceil() as i64 + PAD - j0 + 1) as usize;
    if nx.saturating_mul(ny) > 50_000_000 {
        return Err(invalid(format!("lattice of {nx}x{ny} sites is too large")));
    }
    let o = match lattice {
        Lattice::Vertex => 0.0,
        Lattice::CellCentered => 0.5,
    };
    let eps = 1e-9 * h;
    let mut index = vec![OUTSIDE; nx * ny];
    let mut nodes = Vec::new();
    for iy in 0..ny {
        let y = ((j0 + iy as i64) as f64 + o) * h;
        for ix in 0..nx {
            let x = ((i0 + ix as i64) as f64 + o) * h;
            if shape.contains(x, y, eps) {
                index[iy * nx + ix] = nodes.len();
                nodes.push((ix, iy));
            }
        }
    }
    if nodes.is_empty() {
        return Err(Error::EmptyDomain);
    }
    let dom = GridDomain {
        label: label.to_string(),
        shape: shape.clone(),
        h,
        lattice,
        area_exact: shape.area(),
        perimeter: shape.perimeter(),
        i0,
        j0,
        nx,
        ny,
        index,
        nodes,
    };
    let components = count_components(&dom);
    if components != 1 {
        return Err(Error::Disconnected { components });
    }
    Ok(dom)
}

fn count_components(d: &GridDomain) -> usize {
    let mut seen = vec![false; d.len()];
    let mut components = 0;
    let mut queue = VecDeque::new();
    for start in 0..d.len() {
        if seen[start] {
            continue;
        }
        components += 1;
        seen[start] = true;
        queue.push_back(start);
        while let Some(k) = queue.pop_front() {
            let (ix, iy) = d.nodes[k];
            for (dx, dy) in [(1, 0), (-1, 0), (0, 1), (0, -1)] {
                if let Some(nb) = d.at(ix, iy, dx, dy) {
                    if !seen[nb] {
                        seen[nb] = true;
                        queue.push_back(nb);
                    }
                }
            }
        }
    }
    components
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_square_quarter() {
        let d = rasterize(&Shape::Rectangle { a: 1.0, b: 1.0 }, 0.25, "sq").unwrap();
        assert_eq!(d.len(), 9);
        let c = d.with_lattice(Lattice::CellCentered).unwrap();
        assert_eq!(c.len(), 16);
        assert_eq!(c.discrete_area(), 1.0);
    }

    #[test]
    fn disk_area_by_lattice_count() {
        let h = 1.0 / 128.0;
        let d = rasterize(&Shape::Disk { radius: 1.0 }, h, "disk").unwrap();
        // direct count of lattice points strictly inside the unit circle
        let m = 128i64;
        let mut count = 0usize;
        for i in -m..=m {
            for j in -m..=m {
                if i * i + j * j < m * m {
                    count += 1;
                }
            }
        }
        assert_eq!(d.len(), count);
        assert!((d.discrete_area() - PI).abs() < 0.03 * PI);
    }

    #[test]
    fn area_gap_bounded_by_perimeter() {
        let shapes = [
            Shape::Disk { radius: 1.0 },
            Shape::Ellipse { a: 2f64.sqrt(), b: 0.5f64.sqrt() },
            Shape::Rectangle { a: 2.0, b: 1.0 },
            Shape::LShape { size: 1.0, arm: 0.5 },
            Shape::Annulus { inner: 0.3, outer: 1.0 },
            Shape::Polygon { vertices: vec![[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]] },
        ];
        for s in &shapes {
            for h in [1.0 / 32.0, 1.0 / 64.0] {
                for lat in [Lattice::Vertex, Lattice::CellCentered] {
                    let d = rasterize_on(s, h, lat, "x").unwrap();
                    let gap = (d.discrete_area() - d.area_exact).abs() / d.area_exact;
                    assert!(gap <= 2.0 * d.perimeter * h / d.area_exact, "{s} {h} {lat:?} gap {gap}");
                }
            }
        }
    }

    #[test]
    fn degenerate_and_disconnected() {
        assert!(matches!(
            rasterize(&Shape::Rectangle { a: 1.0, b: 0.0 }, 0.1, "flat"),
            Err(Error::EmptyDomain)
        ));
        // two triangles touching at one vertex
        let bow = Shape::Polygon {
            vertices: vec![[0.0, 0.0], [1.0, 0.0], [0.5, 0.5], [1.0, 1.0], [0.0, 1.0], [0.5, 0.5]],
        };
        assert!(matches!(rasterize(&bow, 0.05, "bow"), Err(Error::Disconnected { components: 2 })));
        let two = Shape::Annulus { inner: 0.99, outer: 1.0 };
        assert!(matches!(rasterize(&two, 0.1, "thin"), Err(Error::Disconnected { .. }) | Err(Error::EmptyDomain)));
        assert!(rasterize(&Shape::Disk { radius: 1.0 }, 0.0, "x").is_err());
    }

    #[test]
    fn descriptors_round_trip() {
        for s in ["disk:1", "ellipse:2,1", "rectangle:1.5,0.5", "lshape:1,0.5", "annulus:0.2,1", "polygon:0,0;1,0;0,1"] {
            let shape: Shape = s.parse().unwrap();
            assert_eq!(shape.to_string().parse::<Shape>().unwrap(), shape);
        }
        assert!("blob:1".parse::<Shape>().is_err());
        assert!("disk:1,2".parse::<Shape>().is_err());
        assert!("lshape:1,2".parse::<Shape>().is_err());
        let j = serde_json::to_string(&Shape::LShape { size: 1.0, arm: 0.5 }).unwrap();
        assert_eq!(j, r#"{"type":"lshape","size":1.0,"arm":0.5}"#);
    }

    #[test]
    fn polygon_matches_rectangle() {
        let p = Shape::Polygon { vertices: vec![[0.0, 0.0], [2.0, 0.0], [2.0, 1.0], [0.0, 1.0]] };
        let r = Shape::Rectangle { a: 2.0, b: 1.0 };
        assert_eq!(p.area(), r.area());
        let dp = rasterize(&p, 0.1, "p").unwrap();
        let dr = rasterize(&r, 0.1, "r").unwrap();
        assert_eq!(dp.len(), dr.len());
    }
}
