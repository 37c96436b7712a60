use hullwalk::geom2d::{
    area, cauchy_perimeter, convex_hull, diameter, dist_origin_to_boundary, hausdorff, perimeter,
    steiner_area, HAUSDORFF_ANGLES,
};
use hullwalk::Vec2;
use proptest::prelude::*;

fn point() -> impl Strategy<Value = Vec2> {
    (-50.0..50.0f64, -50.0..50.0f64).prop_map(|(x, y)| Vec2::new(x, y))
}

fn points(max: usize) -> impl Strategy<Value = Vec<Vec2>> {
    prop::collection::vec(point(), 1..=max)
}

fn lattice_points(max: usize) -> impl Strategy<Value = Vec<Vec2>> {
    prop::collection::vec(
        (-6i32..=6, -6i32..=6).prop_map(|(x, y)| Vec2::new(x as f64, y as f64)),
        1..=max,
    )
}

fn close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * (1.0 + a.abs().max(b.abs()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn hull_is_idempotent(pts in points(100)) {
        let h = convex_hull(&pts).unwrap();
        let again = convex_hull(h.vertices()).unwrap();
        prop_assert_eq!(again.vertices(), h.vertices());
    }

    #[test]
    fn hull_is_idempotent_with_collinear_points(pts in lattice_points(60)) {
        let h = convex_hull(&pts).unwrap();
        let again = convex_hull(h.vertices()).unwrap();
        prop_assert_eq!(again.vertices(), h.vertices());
    }

    #[test]
    fn cauchy_agrees_with_perimeter(pts in points(100)) {
        let exact = perimeter(&convex_hull(&pts).unwrap());
        let quad = cauchy_perimeter(&pts, 4096).unwrap();
        prop_assert!((exact - quad).abs() <= 10.0 / 4096.0 * diameter(&pts));
    }

    #[test]
    fn adding_points_never_shrinks(pts in points(60), extra in points(10)) {
        let h = convex_hull(&pts).unwrap();
        let mut all = pts.clone();
        all.extend(extra);
        let g = convex_hull(&all).unwrap();
        prop_assert!(perimeter(&g) >= perimeter(&h) * (1.0 - 1e-12));
        prop_assert!(area(&g) >= area(&h) * (1.0 - 1e-12));
    }

    #[test]
    fn translation_and_scaling(pts in points(60), shift in point(), k in 0.01..20.0f64) {
        let h = convex_hull(&pts).unwrap();
        let moved: Vec<Vec2> = pts.iter().map(|&p| p + shift).collect();
        let hm = convex_hull(&moved).unwrap();
        prop_assert!(close(perimeter(&hm), perimeter(&h), 1e-9));
        prop_assert!(close(area(&hm), area(&h), 1e-9));
        let scaled: Vec<Vec2> = pts.iter().map(|&p| p * k).collect();
        let hs = convex_hull(&scaled).unwrap();
        prop_assert!(close(perimeter(&hs), k * perimeter(&h), 1e-9));
        prop_assert!(close(area(&hs), k * k * area(&h), 1e-9));
    }

    #[test]
    fn hausdorff_is_a_metric(a in points(30), b in points(30), c in points(30)) {
        let (ha, hb, hc) = (convex_hull(&a).unwrap(), convex_hull(&b).unwrap(), convex_hull(&c).unwrap());
        let ab = hausdorff(&ha, &hb);
        prop_assert_eq!(ab, hausdorff(&hb, &ha));
        prop_assert_eq!(hausdorff(&ha, &ha), 0.0);
        // grid sampling misses the true sup by at most diam * (1 - cos(pi / angles))
        let span = [a.as_slice(), b.as_slice(), c.as_slice()].concat();
        let tol = diameter(&span) * (1.0 - (std::f64::consts::PI / HAUSDORFF_ANGLES as f64).cos()) + 1e-12;
        prop_assert!(ab <= hausdorff(&ha, &hc) + hausdorff(&hc, &hb) + 2.0 * tol);
    }

    #[test]
    fn steiner_formula(pts in points(40), r in 0.0..5.0f64) {
        let h = convex_hull(&pts).unwrap();
        let s = steiner_area(&h, r).unwrap();
        let expected = area(&h) + r * perimeter(&h) + std::f64::consts::PI * r * r;
        prop_assert!(close(s, expected, 1e-12));
    }
}

#[test]
fn segment_counts_both_sides() {
    let h = convex_hull(&[
        Vec2::new(0.0, 0.0),
        Vec2::new(3.0, 4.0),
        Vec2::new(1.5, 2.0),
    ])
    .unwrap();
    assert_eq!(h.vertices().len(), 2);
    assert!((perimeter(&h) - 10.0).abs() < 1e-12);
    assert_eq!(area(&h), 0.0);
}

#[test]
fn origin_distance_of_square() {
    let sq = [(-1.0, -1.0), (2.0, -1.0), (2.0, 3.0), (-1.0, 3.0)].map(|(x, y)| Vec2::new(x, y));
    let h = convex_hull(&sq).unwrap();
    assert!((dist_origin_to_boundary(&h).unwrap() - 1.0).abs() < 1e-15);
}
