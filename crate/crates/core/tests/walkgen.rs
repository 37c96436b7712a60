use hullwalk::geom2d::{area, convex_hull};
use hullwalk::montecarlo::Moments;
use hullwalk::walkgen::{
    brownian_path, parse_model, psi_scaling, sample_path, ModelRegistry, RngStream, SymMat2,
};
use hullwalk::Vec2;
use proptest::prelude::*;

const FINITE_VARIANCE: [&str; 9] = [
    "lattice",
    "hex6",
    "pr",
    "pr:0.3,-0.2",
    "gauss:2,0.5,1,0.1,0.4",
    "st-binary",
    "st-gauss",
    "pareto:5",
    "pareto:6,0.5,0",
];

fn within(est: &Moments, truth: f64) -> bool {
    (est.mean - truth).abs() <= 5.0 * est.std_error() + 1e-12
}

#[test]
fn increment_moments_match_summary() {
    const N: usize = 1_000_000;
    for (k, spec) in FINITE_VARIANCE.iter().enumerate() {
        let model = parse_model(spec).unwrap();
        let m = model.moments();
        assert!(m.finite_variance, "{spec}");
        let mut rng = RngStream::new(77, k as u64).rng();
        let draws: Vec<Vec2> = (0..N).map(|_| model.sample(&mut rng)).collect();
        let col = |f: &dyn Fn(Vec2) -> f64| {
            Moments::from_slice(&draws.iter().map(|&z| f(z)).collect::<Vec<_>>())
        };
        let mx = col(&|z| z.x);
        let my = col(&|z| z.y);
        let sxx = col(&|z| (z.x - m.mu.x).powi(2));
        let sxy = col(&|z| (z.x - m.mu.x) * (z.y - m.mu.y));
        let syy = col(&|z| (z.y - m.mu.y).powi(2));
        assert!(within(&mx, m.mu.x), "{spec} mean x {}", mx.mean);
        assert!(within(&my, m.mu.y), "{spec} mean y {}", my.mean);
        assert!(within(&sxx, m.sigma.xx), "{spec} s11 {}", sxx.mean);
        assert!(within(&sxy, m.sigma.xy), "{spec} s12 {}", sxy.mean);
        assert!(within(&syy, m.sigma.yy), "{spec} s22 {}", syy.mean);
    }
}

#[test]
fn drift_decomposition() {
    for spec in FINITE_VARIANCE {
        let m = parse_model(spec).unwrap().moments();
        assert!(m.sigma2 >= 0.0 && m.det_sigma >= 0.0);
        if m.has_drift() {
            let (a, b) = (m.sigma2_mu.unwrap(), m.sigma2_perp.unwrap());
            assert!(a >= 0.0 && b >= 0.0);
            assert!((a + b - m.sigma2).abs() < 1e-12, "{spec}");
        } else {
            assert!(m.sigma2_mu.is_none() && m.sigma2_perp.is_none());
        }
    }
}

#[test]
fn heavy_tails_flagged() {
    let p = parse_model("pareto:1.5").unwrap();
    assert!(p.heavy_tailed() && !p.moments().finite_variance);
    assert!(!parse_model("pr").unwrap().heavy_tailed());
}

#[test]
fn paths_start_at_origin_and_repeat() {
    let reg = ModelRegistry::builtin();
    for name in reg.names() {
        let model = reg.parse(name).unwrap();
        let a = sample_path(model.as_ref(), 50, RngStream::new(3, 9));
        let b = sample_path(model.as_ref(), 50, RngStream::new(3, 9));
        let c = sample_path(model.as_ref(), 50, RngStream::new(3, 10));
        assert_eq!(a.positions()[0], Vec2::ZERO);
        assert_eq!(a.steps(), 50);
        assert_eq!(a, b, "{name}");
        assert_ne!(a, c, "{name}");
    }
}

#[test]
fn spec_round_trips() {
    for spec in FINITE_VARIANCE
        .iter()
        .chain(&["pareto:1.5", "pareto:1.5,0.2,0", "gauss"])
    {
        let model = parse_model(spec).unwrap();
        assert_eq!(
            parse_model(&model.spec()).unwrap().spec(),
            model.spec(),
            "{spec}"
        );
    }
    for bad in ["", "pr:1", "pareto:0.5", "gauss:1,2,1", "nope", "lattice:1"] {
        assert!(parse_model(bad).is_err(), "{bad}");
    }
}

proptest! {
    #[test]
    fn psi_is_affine(
        pts in prop::collection::vec((-1e3..1e3f64, -1e3..1e3f64), 3),
        l1 in 0.0..1.0f64,
        l2 in 0.0..1.0f64,
        mu in (0.05..3.0f64, -3.0..3.0f64),
        s2 in 0.01..4.0f64,
        n in 1usize..100_000,
    ) {
        let (l1, l2) = (l1 * (1.0 - l2), l2);
        let l3 = 1.0 - l1 - l2;
        let mu = Vec2::new(mu.0, mu.1);
        let p: Vec<Vec2> = pts.iter().map(|&(x, y)| Vec2::new(x, y)).collect();
        let comb = p[0] * l1 + p[1] * l2 + p[2] * l3;
        let lhs = psi_scaling(comb, mu, s2, n).unwrap();
        let img: Vec<Vec2> = p.iter().map(|&q| psi_scaling(q, mu, s2, n).unwrap()).collect();
        let rhs = img[0] * l1 + img[1] * l2 + img[2] * l3;
        let scale = img.iter().map(|v| v.norm()).fold(1.0, f64::max);
        prop_assert!((lhs - rhs).norm() <= 1e-12 * scale);
    }
}

#[test]
fn brownian_area_scales_with_root_det() {
    let grid = 4096;
    let cov = SymMat2::new(4.0, 1.0, 1.0);
    let (mut base, mut scaled) = (Vec::new(), Vec::new());
    for i in 0..400 {
        let a = brownian_path(SymMat2::IDENTITY, grid, RngStream::new(5, i)).unwrap();
        let b = brownian_path(cov, grid, RngStream::new(5, i)).unwrap();
        base.push(area(&convex_hull(a.positions()).unwrap()));
        scaled.push(area(&convex_hull(b.positions()).unwrap()));
    }
    let ratio = Moments::from_slice(&scaled).mean / Moments::from_slice(&base).mean;
    let expected = cov.det().sqrt();
    assert!(
        (ratio / expected - 1.0).abs() < 0.05,
        "ratio {ratio} vs {expected}"
    );

    let doubled = SymMat2::IDENTITY.scaled(2.0);
    let d: Vec<f64> = (0..400)
        .map(|i| {
            area(
                &convex_hull(
                    brownian_path(doubled, grid, RngStream::new(5, i))
                        .unwrap()
                        .positions(),
                )
                .unwrap(),
            )
        })
        .collect();
    let ratio = Moments::from_slice(&d).mean / Moments::from_slice(&base).mean;
    assert!((ratio / 2.0 - 1.0).abs() < 0.05, "doubling ratio {ratio}");
}
