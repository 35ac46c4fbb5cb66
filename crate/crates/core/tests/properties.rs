use proptest::prelude::*;

use specineq::ball::{ball_spectrum_of, rectangle_spectrum, BallSpec};
use specineq::catalog::{chain_check, evaluate_all, hile_protter_bound, yang1_bound, yang2_bound, Policy, SpectraBundle};
use specineq::grid::{rasterize, GridDomain, Shape};
use specineq::rearrange::{
    decreasing_rearrangement, distribution, product_bound_check, symmetrized_solution, GridFunction, RadialProfile,
};
use specineq::two_ball::j_of_t;
use specineq::ProblemKind;

fn ellipse() -> GridDomain {
    rasterize(&Shape::Ellipse { a: 1.2, b: 0.7 }, 1.0 / 8.0, "ellipse").unwrap()
}

fn lshape() -> GridDomain {
    rasterize(&Shape::LShape { size: 1.0, arm: 0.5 }, 1.0 / 10.0, "lshape").unwrap()
}

fn values(len: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-5.0f64..5.0, len)
}

fn kinds() -> impl Strategy<Value = ProblemKind> {
    prop::sample::select(ProblemKind::ALL.to_vec())
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 1000, ..ProptestConfig::default() })]

    #[test]
    fn product_bounds_never_violated(
        fv in values(lshape().len()),
        gv in values(lshape().len()),
        quantize in any::<bool>(),
    ) {
        let d = lshape();
        // quantizing produces ties between the two functions' level sets
        let q = |v: Vec<f64>| if quantize { v.into_iter().map(|x| x.round()).collect() } else { v };
        let f = GridFunction::new(&d, q(fv)).unwrap();
        let g = GridFunction::new(&d, q(gv)).unwrap();
        let b = product_bound_check(&f, &g).unwrap();
        prop_assert!(b.upper_holds && b.lower_holds, "{b:?}");
    }
}

proptest! {
    #[test]
    fn equimeasurable_on_node_measure(v in values(ellipse().len()), pick in any::<prop::sample::Index>(), signed in any::<bool>()) {
        let d = ellipse();
        let f = GridFunction::new(&d, v).unwrap();
        let star = decreasing_rearrangement(&f, signed);
        let t = if signed { f.values[pick.index(f.values.len())] } else { f.values[pick.index(f.values.len())].abs() };
        prop_assert_eq!(distribution(&f, t, signed), star.distribution(t));
        prop_assert_eq!(distribution(&f, t - 1e-3, signed), star.distribution(t - 1e-3));
        prop_assert!(star.values.windows(2).all(|w| w[0] >= w[1]));
        let l2: f64 = star.values.iter().map(|x| x * x).sum::<f64>();
        let l2f: f64 = f.values.iter().map(|x| x * x).sum::<f64>();
        prop_assert!((l2 - l2f).abs() <= 1e-12 * l2f);
    }

    #[test]
    fn rearrangement_is_monotone(v in values(ellipse().len()), bump in prop::collection::vec(0.0f64..2.0, ellipse().len())) {
        let d = ellipse();
        let g: Vec<f64> = v.iter().zip(&bump).map(|(a, b)| a + b).collect();
        let fs = decreasing_rearrangement(&GridFunction::new(&d, v).unwrap(), true);
        let gs = decreasing_rearrangement(&GridFunction::new(&d, g).unwrap(), true);
        prop_assert!(fs.values.iter().zip(&gs.values).all(|(a, b)| a <= b));
    }

    #[test]
    fn symmetrized_solution_nonincreasing(
        radius in 0.3f64..2.0,
        h in 0.01f64..0.1,
        heights in prop::collection::vec(0.0f64..3.0, 1..6),
        tail in -0.5f64..0.0,
    ) {
        // a radially decreasing staircase with a small negative tail keeps ∫₀ᵗ τ f ≥ 0
        let r = specineq::rearrange::radial_grid(radius, h);
        let mut steps = heights.clone();
        steps.sort_by(|a, b| b.total_cmp(a));
        let k = steps.len();
        let vals: Vec<f64> = r
            .iter()
            .map(|&x| {
                let i = ((x / radius) * k as f64).floor() as usize;
                if i >= k { tail } else { steps[i] }
            })
            .collect();
        let mut inner = 0.0;
        let mut ok = true;
        for i in 1..r.len() {
            inner += 0.5 * (r[i] - r[i - 1]) * (r[i - 1] * vals[i - 1] + r[i] * vals[i]);
            ok &= inner >= 0.0;
        }
        prop_assume!(ok);
        let v = symmetrized_solution(&RadialProfile { radii: r, values: vals, radius });
        prop_assert!(v.values.windows(2).all(|w| w[1] <= w[0] + 1e-14));
        prop_assert_eq!(*v.values.last().unwrap(), 0.0);
    }

    #[test]
    fn ball_homothety(kind in kinds(), n in 2usize..6, radius in 0.2f64..5.0) {
        let unit = ball_spectrum_of(kind, &BallSpec::unit(n).unwrap(), 8).unwrap();
        let scaled = ball_spectrum_of(kind, &BallSpec::new(n, radius).unwrap(), 8).unwrap();
        let factor = radius.powi(kind.scaling_order());
        for (a, b) in unit.values.iter().zip(&scaled.values) {
            prop_assert!((a * factor - b).abs() <= 1e-10 * b.abs().max(1.0));
        }
        scaled.validate().unwrap();
    }

    #[test]
    fn two_ball_symmetric_in_t(n in 2usize..9, t in 0.01f64..0.49) {
        let a = j_of_t(n, t).unwrap().j;
        let b = j_of_t(n, 1.0 - t).unwrap().j;
        prop_assert!((a - b).abs() <= 1e-7 * a);
    }

    #[test]
    fn universal_chain_on_rectangles(a in 0.3f64..3.0, b in 0.3f64..3.0, m in 1usize..12) {
        let s = rectangle_spectrum(a, b, ProblemKind::Dirichlet, m + 1).unwrap();
        let prefix = &s.values[..m];
        let y1 = yang1_bound(prefix, 2).unwrap();
        let y2 = yang2_bound(prefix, 2).unwrap();
        let hp = hile_protter_bound(prefix, 2).unwrap();
        let ppw = prefix[m - 1] + 4.0 / (2.0 * m as f64) * prefix.iter().sum::<f64>();
        let eps = 1e-12 * ppw;
        prop_assert!(y1 <= y2 + eps && y2 <= hp + eps && hp <= ppw + eps, "{y1} {y2} {hp} {ppw}");
        prop_assert!(s.values[m] <= y1 + eps);
        let c = chain_check(&s, m).unwrap();
        prop_assert!(c.ordered && c.implications_hold);
    }

    #[test]
    fn universal_chain_on_balls(n in 2usize..6, m in 1usize..10) {
        let s = ball_spectrum_of(ProblemKind::Dirichlet, &BallSpec::unit(n).unwrap(), m + 1).unwrap();
        let c = chain_check(&s, m).unwrap();
        prop_assert!(c.ordered && c.implications_hold, "{c:?}");
        prop_assert!(c.predicates.iter().all(|p| *p));
    }

    #[test]
    fn catalog_reports_are_consistent(a in 0.5f64..2.5, b in 0.5f64..2.5) {
        let mut bundle = SpectraBundle::new("rect", 2, Some(a * b));
        for kind in [ProblemKind::Dirichlet, ProblemKind::Neumann] {
            bundle.insert(rectangle_spectrum(a, b, kind, 12).unwrap()).unwrap();
        }
        let (reports, errors) = evaluate_all(&bundle, None, 8, 10, Policy::default());
        prop_assert!(errors.is_empty(), "{errors:?}");
        let (again, _) = evaluate_all(&bundle, None, 8, 10, Policy::default());
        prop_assert_eq!(&reports, &again);
        for r in &reports {
            prop_assert_eq!(r.holds, r.slack >= -r.tolerance_used);
            prop_assert!(!r.citation.is_empty());
            if r.status == specineq::catalog::Status::Proven {
                prop_assert!(r.holds, "{r:?}");
            }
        }
    }
}
