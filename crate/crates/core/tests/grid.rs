use specineq::grid::{assemble, rasterize, smallest_eigs, solve_levels, Shape};
use specineq::two_ball::{c_constant, curve, d_constant};
use specineq::ProblemKind;

fn lambda(shape: &Shape, kind: ProblemKind, h: f64, m: usize) -> Vec<f64> {
    let d = rasterize(shape, h, "t").unwrap();
    smallest_eigs(&assemble(&d, kind).unwrap(), m).unwrap().values
}

#[test]
fn second_order_convergence_on_rectangles() {
    for shape in [Shape::Rectangle { a: 1.0, b: 1.0 }, Shape::Rectangle { a: 2.0, b: 1.0 }] {
        let l: Vec<Vec<f64>> = [1.0 / 8.0, 1.0 / 16.0, 1.0 / 32.0].iter().map(|&h| lambda(&shape, ProblemKind::Dirichlet, h, 3)).collect();
        for (i, ((c, m), f)) in l[0].iter().zip(&l[1]).zip(&l[2]).enumerate() {
            let reference = (4.0 * f - m) / 3.0;
            let q = (c - reference).abs() / (m - reference).abs();
            assert!(q >= 3.5, "{shape:?} index {i}: ratio {q}");
        }
    }
}

#[test]
fn disk_has_smallest_fundamental_among_equal_areas() {
    let area = std::f64::consts::PI;
    let shapes = [
        Shape::Disk { radius: 1.0 },
        Shape::Rectangle { a: area.sqrt(), b: area.sqrt() },
        Shape::Rectangle { a: (2.0 * area).sqrt(), b: (area / 2.0).sqrt() },
    ];
    let l: Vec<f64> = shapes
        .iter()
        .map(|s| solve_levels(s, "t", ProblemKind::Dirichlet, 1.0 / 16.0, 2, 1).unwrap().extrapolated.values[0])
        .collect();
    assert!(l[0] < l[1] && l[1] < l[2], "{l:?}");
}

#[test]
fn buckling_spectrum_positive_and_above_second_membrane() {
    for shape in [Shape::LShape { size: 1.0, arm: 0.5 }, Shape::Ellipse { a: 1.0, b: 0.5 }] {
        let b = lambda(&shape, ProblemKind::Buckling, 1.0 / 32.0, 4);
        assert!(b.iter().all(|v| *v > 0.0));
        let d = lambda(&shape, ProblemKind::Dirichlet, 1.0 / 32.0, 2);
        assert!(b[0] >= d[1] * 0.98, "Λ₁ {} vs λ₂ {}", b[0], d[1]);
    }
}

#[test]
fn two_ball_constants_nonsharp_and_continuous() {
    for n in 2..=8 {
        assert!(c_constant(n).unwrap() < 1.0);
        let d = d_constant(n).unwrap();
        assert!(d.d <= 1.0 && d.d > 0.85);
        let s = curve(n, 65).unwrap();
        let steps: Vec<f64> = s.windows(2).map(|w| (w[1].j - w[0].j).abs()).collect();
        for i in 1..steps.len() - 1 {
            let local = steps[i - 1].max(steps[i + 1]);
            assert!(steps[i] <= 5.0 * local + 1e-9 * s[i].j, "n={n}: jump near t={}", s[i].t);
        }
    }
}

#[test]
fn clamped_corpus_above_two_ball_minimum() {
    // Γ₁(Ω) ≥ min_a J(a) Γ-normalized to |Ω| = π
    let j_min = d_constant(2).unwrap();
    for (shape, area) in [
        (Shape::Rectangle { a: 1.0, b: 1.0 }, 1.0),
        (Shape::LShape { size: 1.0, arm: 0.5 }, 0.75),
        (Shape::Ellipse { a: 1.0, b: 0.5 }, std::f64::consts::PI / 2.0),
    ] {
        let g = solve_levels(&shape, "t", ProblemKind::Clamped, 1.0 / 16.0, 2, 1).unwrap().extrapolated;
        let scaled = g.values[0] * (area / std::f64::consts::PI).powi(2);
        assert!(scaled >= j_min.d * j_min.j_endpoint * (1.0 - 1e-2), "{shape:?}: {scaled}");
    }
}
