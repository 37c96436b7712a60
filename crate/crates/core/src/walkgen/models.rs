//! Increment distributions.
//!
//! Each distribution implements [`IncrementModel`] and is registered in a
//! [`ModelRegistry`] under the name used by the model grammar
//! `name[:p1,p2,...]`, e.g. `pr:0.2,0` or `gauss:1,0,1`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::rng::WalkRng;
use crate::error::{Error, Result};
use crate::geom2d::Vec2;

/// Symmetric 2x2 matrix.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SymMat2 {
    pub xx: f64,
    pub xy: f64,
    pub yy: f64,
}

impl SymMat2 {
    pub const ZERO: SymMat2 = SymMat2::new(0.0, 0.0, 0.0);
    pub const IDENTITY: SymMat2 = SymMat2::new(1.0, 0.0, 1.0);

    pub const fn new(xx: f64, xy: f64, yy: f64) -> Self {
        SymMat2 { xx, xy, yy }
    }

    pub fn scaled(self, k: f64) -> Self {
        SymMat2::new(self.xx * k, self.xy * k, self.yy * k)
    }

    pub fn trace(&self) -> f64 {
        self.xx + self.yy
    }

    pub fn det(&self) -> f64 {
        self.xx * self.yy - self.xy * self.xy
    }

    pub fn apply(&self, v: Vec2) -> Vec2 {
        Vec2::new(self.xx * v.x + self.xy * v.y, self.xy * v.x + self.yy * v.y)
    }

    /// `e^T M e`.
    pub fn quad_form(&self, e: Vec2) -> f64 {
        e.dot(self.apply(e))
    }

    pub fn is_finite(&self) -> bool {
        self.xx.is_finite() && self.xy.is_finite() && self.yy.is_finite()
    }

    pub fn is_psd(&self) -> bool {
        let scale = self.xx.abs().max(self.yy.abs()).max(self.xy.abs());
        let tol = 1e-12 * scale;
        self.is_finite() && self.xx >= -tol && self.yy >= -tol && self.det() >= -tol * scale
    }

    /// Principal square root of a PSD matrix:
    /// `sqrt(M) = (M + s I) / t` with `s = sqrt(det M)`, `t = sqrt(tr M + 2 s)`.
    pub fn sqrt_psd(&self) -> Result<SymMat2> {
        if !self.is_psd() {
            return Err(Error::NotPsd);
        }
        let s = self.det().max(0.0).sqrt();
        let t = (self.trace() + 2.0 * s).max(0.0).sqrt();
        if t == 0.0 {
            return Ok(SymMat2::ZERO);
        }
        Ok(SymMat2::new(
            (self.xx + s) / t,
            self.xy / t,
            (self.yy + s) / t,
        ))
    }

    /// Angle of the eigenvector of the largest eigenvalue.
    pub fn principal_angle(&self) -> f64 {
        0.5 * (2.0 * self.xy).atan2(self.xx - self.yy)
    }
}

/// First and second moments of an increment distribution.
///
/// The drift-projected quantities are `None` when the drift is zero. When the
/// variance is infinite, the covariance entries are `+inf`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MomentSummary {
    pub mu: Vec2,
    pub sigma: SymMat2,
    /// `trace(Sigma) = E||Z - mu||^2`.
    pub sigma2: f64,
    /// Variance of `(Z - mu) . mu_hat`.
    pub sigma2_mu: Option<f64>,
    /// Variance of `(Z - mu) . mu_hat_perp`.
    pub sigma2_perp: Option<f64>,
    pub det_sigma: f64,
    /// Covariance of the two projections above.
    pub rho_cross: Option<f64>,
    pub finite_variance: bool,
}

impl MomentSummary {
    pub fn from_mean_cov(mu: Vec2, sigma: SymMat2) -> Self {
        let drift = mu.norm();
        let (sigma2_mu, sigma2_perp, rho_cross) = if drift > 0.0 {
            let along = mu * (1.0 / drift);
            let across = along.perp();
            (
                Some(sigma.quad_form(along).max(0.0)),
                Some(sigma.quad_form(across).max(0.0)),
                Some(along.dot(sigma.apply(across))),
            )
        } else {
            (None, None, None)
        };
        MomentSummary {
            mu,
            sigma,
            sigma2: sigma.trace(),
            sigma2_mu,
            sigma2_perp,
            det_sigma: sigma.det().max(0.0),
            rho_cross,
            finite_variance: true,
        }
    }

    pub fn infinite_variance(mu: Vec2) -> Self {
        let inf = f64::INFINITY;
        MomentSummary {
            mu,
            sigma: SymMat2::new(inf, inf, inf),
            sigma2: inf,
            sigma2_mu: (mu.norm() > 0.0).then_some(inf),
            sigma2_perp: (mu.norm() > 0.0).then_some(inf),
            det_sigma: inf,
            rho_cross: None,
            finite_variance: false,
        }
    }

    pub fn drift(&self) -> f64 {
        self.mu.norm()
    }

    pub fn has_drift(&self) -> bool {
        self.mu.norm() > 0.0
    }
}

/// A step distribution for a planar random walk.
pub trait IncrementModel: Send + Sync + fmt::Debug {
    /// Registry name.
    fn name(&self) -> &'static str;

    /// Canonical specification string; parsing it reproduces the model.
    fn spec(&self) -> String;

    fn moments(&self) -> MomentSummary;

    fn sample(&self, rng: &mut WalkRng) -> Vec2;

    /// Atoms and probabilities, for distributions with finite support.
    fn support(&self) -> Option<Vec<(Vec2, f64)>> {
        None
    }

    fn heavy_tailed(&self) -> bool {
        !self.moments().finite_variance
    }
}

fn fmt_params(name: &str, params: &[f64]) -> String {
    if params.is_empty() {
        return name.to_string();
    }
    let joined: Vec<String> = params.iter().map(|p| p.to_string()).collect();
    format!("{name}:{}", joined.join(","))
}

/// Simple random walk on Z^2.
#[derive(Debug, Clone, Copy, Default)]
pub struct LatticeSrw;

const LATTICE_STEPS: [Vec2; 4] = [
    Vec2::new(1.0, 0.0),
    Vec2::new(-1.0, 0.0),
    Vec2::new(0.0, 1.0),
    Vec2::new(0.0, -1.0),
];

impl IncrementModel for LatticeSrw {
    fn name(&self) -> &'static str {
        "lattice"
    }
    fn spec(&self) -> String {
        "lattice".into()
    }
    fn moments(&self) -> MomentSummary {
        MomentSummary::from_mean_cov(Vec2::ZERO, SymMat2::new(0.5, 0.0, 0.5))
    }
    #[inline]
    fn sample(&self, rng: &mut WalkRng) -> Vec2 {
        LATTICE_STEPS[(rng.next_u64() >> 62) as usize]
    }
    fn support(&self) -> Option<Vec<(Vec2, f64)>> {
        Some(LATTICE_STEPS.iter().map(|&s| (s, 0.25)).collect())
    }
}

/// Six-neighbour walk: the lattice steps plus (-1,1) and (1,-1).
#[derive(Debug, Clone, Copy, Default)]
pub struct Hex6;

const HEX_STEPS: [Vec2; 6] = [
    Vec2::new(1.0, 0.0),
    Vec2::new(-1.0, 0.0),
    Vec2::new(0.0, 1.0),
    Vec2::new(0.0, -1.0),
    Vec2::new(-1.0, 1.0),
    Vec2::new(1.0, -1.0),
];

impl IncrementModel for Hex6 {
    fn name(&self) -> &'static str {
        "hex6"
    }
    fn spec(&self) -> String {
        "hex6".into()
    }
    fn moments(&self) -> MomentSummary {
        MomentSummary::from_mean_cov(Vec2::ZERO, SymMat2::new(2.0 / 3.0, -1.0 / 3.0, 2.0 / 3.0))
    }
    #[inline]
    fn sample(&self, rng: &mut WalkRng) -> Vec2 {
        HEX_STEPS[rng.index(6)]
    }
    fn support(&self) -> Option<Vec<(Vec2, f64)>> {
        Some(HEX_STEPS.iter().map(|&s| (s, 1.0 / 6.0)).collect())
    }
}

/// Unit step in a uniformly random direction, plus a constant drift.
#[derive(Debug, Clone, Copy, Default)]
pub struct PearsonRayleigh {
    pub drift: Vec2,
}

impl IncrementModel for PearsonRayleigh {
    fn name(&self) -> &'static str {
        "pr"
    }
    fn spec(&self) -> String {
        if self.drift == Vec2::ZERO {
            "pr".into()
        } else {
            fmt_params("pr", &[self.drift.x, self.drift.y])
        }
    }
    fn moments(&self) -> MomentSummary {
        // E cos^2 = E sin^2 = 1/2, E cos sin = 0
        MomentSummary::from_mean_cov(self.drift, SymMat2::new(0.5, 0.0, 0.5))
    }
    #[inline]
    fn sample(&self, rng: &mut WalkRng) -> Vec2 {
        let (c, s) = rng.unit_circle();
        Vec2::new(self.drift.x + c, self.drift.y + s)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Gaussian {
    mean: Vec2,
    cov: SymMat2,
    root: SymMat2,
}

impl Gaussian {
    pub fn new(mean: Vec2, cov: SymMat2) -> Result<Self> {
        if !mean.is_finite() {
            return Err(Error::InvalidModel("non-finite mean".into()));
        }
        let root = cov.sqrt_psd()?;
        Ok(Gaussian { mean, cov, root })
    }

    pub fn standard() -> Self {
        Gaussian {
            mean: Vec2::ZERO,
            cov: SymMat2::IDENTITY,
            root: SymMat2::IDENTITY,
        }
    }
}

impl IncrementModel for Gaussian {
    fn name(&self) -> &'static str {
        "gauss"
    }
    fn spec(&self) -> String {
        let c = self.cov;
        if self.mean == Vec2::ZERO {
            fmt_params("gauss", &[c.xx, c.xy, c.yy])
        } else {
            fmt_params("gauss", &[c.xx, c.xy, c.yy, self.mean.x, self.mean.y])
        }
    }
    fn moments(&self) -> MomentSummary {
        MomentSummary::from_mean_cov(self.mean, self.cov)
    }
    #[inline]
    fn sample(&self, rng: &mut WalkRng) -> Vec2 {
        let (a, b) = rng.normal_pair();
        self.mean + self.root.apply(Vec2::new(a, b))
    }
}

/// Steps `(1, +1)` and `(1, -1)` with probability 1/2 each. The fluctuation is
/// orthogonal to the drift, so the perimeter variance is sublinear.
#[derive(Debug, Clone, Copy, Default)]
pub struct SpacetimeBinary;

impl IncrementModel for SpacetimeBinary {
    fn name(&self) -> &'static str {
        "st-binary"
    }
    fn spec(&self) -> String {
        "st-binary".into()
    }
    fn moments(&self) -> MomentSummary {
        MomentSummary::from_mean_cov(Vec2::new(1.0, 0.0), SymMat2::new(0.0, 0.0, 1.0))
    }
    #[inline]
    fn sample(&self, rng: &mut WalkRng) -> Vec2 {
        if rng.next_u64() >> 63 == 0 {
            Vec2::new(1.0, 1.0)
        } else {
            Vec2::new(1.0, -1.0)
        }
    }
    fn support(&self) -> Option<Vec<(Vec2, f64)>> {
        Some(vec![
            (Vec2::new(1.0, 1.0), 0.5),
            (Vec2::new(1.0, -1.0), 0.5),
        ])
    }
}

/// Steps `(1, xi)` with `xi` standard normal: the graph of a Gaussian walk.
#[derive(Debug, Clone, Copy, Default)]
pub struct SpacetimeGaussian;

impl IncrementModel for SpacetimeGaussian {
    fn name(&self) -> &'static str {
        "st-gauss"
    }
    fn spec(&self) -> String {
        "st-gauss".into()
    }
    fn moments(&self) -> MomentSummary {
        MomentSummary::from_mean_cov(Vec2::new(1.0, 0.0), SymMat2::new(0.0, 0.0, 1.0))
    }
    #[inline]
    fn sample(&self, rng: &mut WalkRng) -> Vec2 {
        Vec2::new(1.0, rng.normal())
    }
}

/// Heavy-tailed step: Pareto radius `R = (1 - U)^(-1/alpha) >= 1` in a uniform
/// direction, plus drift. Finite mean for `alpha > 1`, finite variance only
/// for `alpha > 2`.
#[derive(Debug, Clone, Copy)]
pub struct ParetoDirection {
    alpha: f64,
    drift: Vec2,
}

impl ParetoDirection {
    pub const DEFAULT_ALPHA: f64 = 1.5;

    pub fn new(alpha: f64, drift: Vec2) -> Result<Self> {
        if !(alpha > 1.0) || !alpha.is_finite() {
            return Err(Error::InvalidModel(format!(
                "pareto alpha must exceed 1, got {alpha}"
            )));
        }
        if !drift.is_finite() {
            return Err(Error::InvalidModel("non-finite drift".into()));
        }
        Ok(ParetoDirection { alpha, drift })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }
}

impl IncrementModel for ParetoDirection {
    fn name(&self) -> &'static str {
        "pareto"
    }
    fn spec(&self) -> String {
        if self.drift == Vec2::ZERO {
            fmt_params("pareto", &[self.alpha])
        } else {
            fmt_params("pareto", &[self.alpha, self.drift.x, self.drift.y])
        }
    }
    fn moments(&self) -> MomentSummary {
        if self.alpha > 2.0 {
            let second = self.alpha / (self.alpha - 2.0);
            MomentSummary::from_mean_cov(self.drift, SymMat2::new(0.5 * second, 0.0, 0.5 * second))
        } else {
            MomentSummary::infinite_variance(self.drift)
        }
    }
    #[inline]
    fn sample(&self, rng: &mut WalkRng) -> Vec2 {
        let radius = (1.0 - rng.uniform()).powf(-1.0 / self.alpha);
        let (c, s) = rng.unit_circle();
        Vec2::new(self.drift.x + radius * c, self.drift.y + radius * s)
    }
    fn heavy_tailed(&self) -> bool {
        true
    }
}

/// Builds a model from its numeric parameters.
pub type ModelFactory = fn(&[f64]) -> Result<Box<dyn IncrementModel>>;

struct ModelEntry {
    usage: &'static str,
    factory: ModelFactory,
}

/// Name-indexed table of increment models.
pub struct ModelRegistry {
    entries: BTreeMap<&'static str, ModelEntry>,
}

impl Default for ModelRegistry {
    fn default() -> Self {
        Self::builtin()
    }
}

fn expect_params(name: &str, params: &[f64], allowed: &[usize]) -> Result<()> {
    if allowed.contains(&params.len()) {
        Ok(())
    } else {
        Err(Error::InvalidModel(format!(
            "{name} takes {allowed:?} parameters, got {}",
            params.len()
        )))
    }
}

impl ModelRegistry {
    pub fn empty() -> Self {
        ModelRegistry {
            entries: BTreeMap::new(),
        }
    }

    pub fn builtin() -> Self {
        let mut reg = Self::empty();
        reg.register("lattice", "lattice", |p| {
            expect_params("lattice", p, &[0])?;
            Ok(Box::new(LatticeSrw))
        });
        reg.register("hex6", "hex6", |p| {
            expect_params("hex6", p, &[0])?;
            Ok(Box::new(Hex6))
        });
        reg.register("pr", "pr[:dx,dy]", |p| {
            expect_params("pr", p, &[0, 2])?;
            let drift = if p.is_empty() {
                Vec2::ZERO
            } else {
                Vec2::new(p[0], p[1])
            };
            Ok(Box::new(PearsonRayleigh { drift }))
        });
        reg.register("gauss", "gauss[:s11,s12,s22[,mx,my]]", |p| {
            expect_params("gauss", p, &[0, 3, 5])?;
            let cov = if p.is_empty() {
                SymMat2::IDENTITY
            } else {
                SymMat2::new(p[0], p[1], p[2])
            };
            let mean = if p.len() == 5 {
                Vec2::new(p[3], p[4])
            } else {
                Vec2::ZERO
            };
            Ok(Box::new(Gaussian::new(mean, cov)?))
        });
        reg.register("st-binary", "st-binary", |p| {
            expect_params("st-binary", p, &[0])?;
            Ok(Box::new(SpacetimeBinary))
        });
        reg.register("st-gauss", "st-gauss", |p| {
            expect_params("st-gauss", p, &[0])?;
            Ok(Box::new(SpacetimeGaussian))
        });
        reg.register("pareto", "pareto:alpha[,dx,dy]", |p| {
            expect_params("pareto", p, &[0, 1, 3])?;
            let alpha = p.first().copied().unwrap_or(ParetoDirection::DEFAULT_ALPHA);
            let drift = if p.len() == 3 {
                Vec2::new(p[1], p[2])
            } else {
                Vec2::ZERO
            };
            Ok(Box::new(ParetoDirection::new(alpha, drift)?))
        });
        reg
    }

    pub fn register(&mut self, name: &'static str, usage: &'static str, factory: ModelFactory) {
        self.entries.insert(name, ModelEntry { usage, factory });
    }

    pub fn names(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.entries.keys().copied()
    }

    /// One usage line per registered model.
    pub fn usage(&self) -> String {
        let lines: Vec<&str> = self.entries.values().map(|e| e.usage).collect();
        lines.join(" | ")
    }

    pub fn parse(&self, spec: &str) -> Result<Box<dyn IncrementModel>> {
        let spec = spec.trim();
        let (name, args) = match spec.split_once(':') {
            Some((n, a)) => (n, Some(a)),
            None => (spec, None),
        };
        let entry = self.entries.get(name).ok_or_else(|| {
            Error::InvalidModel(format!(
                "unknown model '{name}' (expected {})",
                self.usage()
            ))
        })?;
        let params = match args {
            None => Vec::new(),
            Some(a) => a
                .split(',')
                .map(|s| {
                    s.trim()
                        .parse::<f64>()
                        .ok()
                        .filter(|v| v.is_finite())
                        .ok_or_else(|| {
                            Error::InvalidModel(format!("bad parameter '{s}' in '{spec}'"))
                        })
                })
                .collect::<Result<Vec<_>>>()?,
        };
        (entry.factory)(&params)
    }
}

/// Parses a model specification with the built-in registry.
pub fn parse_model(spec: &str) -> Result<Box<dyn IncrementModel>> {
    ModelRegistry::builtin().parse(spec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::walkgen::rng::RngStream;

    // E||Y|| for Y ~ N(0, c I)
    fn isotropic_norm_mean(c: f64) -> f64 {
        (std::f64::consts::PI * c / 2.0).sqrt()
    }

    #[test]
    fn pr_moments() {
        let m = parse_model("pr").unwrap().moments();
        assert_eq!(m.mu, Vec2::ZERO);
        assert_eq!(m.sigma, SymMat2::new(0.5, 0.0, 0.5));
        assert_eq!(m.sigma2, 1.0);
        assert_eq!(m.det_sigma, 0.25);
        assert_eq!(m.sigma2_mu, None);

        let d = parse_model("pr:0.2,0").unwrap().moments();
        assert_eq!(d.sigma2_mu, Some(0.5));
        assert_eq!(4.0 * d.sigma2_mu.unwrap(), 2.0);
        assert_eq!(d.sigma2_perp, Some(0.5));
        assert_eq!(d.rho_cross, Some(0.0));
    }

    #[test]
    fn spacetime_binary_is_degenerate_along_drift() {
        let m = SpacetimeBinary.moments();
        assert_eq!(m.mu, Vec2::new(1.0, 0.0));
        assert_eq!(m.sigma2_mu, Some(0.0));
        assert_eq!(m.sigma2_perp, Some(1.0));
    }

    #[test]
    fn decomposition_of_total_variance() {
        for spec in [
            "pr:0.3,-0.4",
            "gauss:2,0.5,1,1,1",
            "gauss:1,0.9,1,0,-2",
            "st-gauss",
            "pareto:3,1,2",
        ] {
            let m = parse_model(spec).unwrap().moments();
            let sum = m.sigma2_mu.unwrap() + m.sigma2_perp.unwrap();
            assert!((sum - m.sigma2).abs() < 1e-12, "{spec}");
        }
    }

    #[test]
    fn heavy_tail_flags() {
        let m = parse_model("pareto:1.5").unwrap();
        assert!(m.heavy_tailed());
        assert!(!m.moments().finite_variance);
        assert!(parse_model("pareto").is_ok());
        assert!(parse_model("pareto:1").is_err());
        assert!(parse_model("pareto:3").unwrap().moments().finite_variance);
    }

    #[test]
    fn grammar() {
        for spec in [
            "lattice",
            "hex6",
            "pr",
            "pr:0.2,0",
            "gauss:1,0,1",
            "gauss:1,0.5,2,0.1,0",
            "st-binary",
            "st-gauss",
            "pareto:1.5",
            "pareto:1.7,0.1,0",
        ] {
            let m = parse_model(spec).unwrap();
            assert_eq!(m.spec(), spec);
            assert_eq!(parse_model(&m.spec()).unwrap().spec(), spec);
        }
        assert_eq!(parse_model("gauss").unwrap().spec(), "gauss:1,0,1");
        assert!(matches!(parse_model("gauss:1,0,-1"), Err(Error::NotPsd)));
        assert!(matches!(parse_model("gauss:1,2,1"), Err(Error::NotPsd)));
        assert!(matches!(parse_model("pr:1"), Err(Error::InvalidModel(_))));
        assert!(matches!(parse_model("pr:a,b"), Err(Error::InvalidModel(_))));
        assert!(matches!(parse_model("levy"), Err(Error::InvalidModel(_))));
    }

    #[test]
    fn custom_registration() {
        let mut reg = ModelRegistry::empty();
        reg.register("unit-x", "unit-x", |_| {
            Ok(Box::new(PearsonRayleigh {
                drift: Vec2::new(1.0, 0.0),
            }))
        });
        assert!(reg.parse("unit-x").is_ok());
        assert!(reg.parse("lattice").is_err());
        assert_eq!(reg.names().collect::<Vec<_>>(), vec!["unit-x"]);
    }

    #[test]
    fn matrix_square_root() {
        for m in [
            SymMat2::new(2.0, 0.5, 1.0),
            SymMat2::new(1.0, 1.0, 1.0),
            SymMat2::new(0.0, 0.0, 3.0),
            SymMat2::ZERO,
        ] {
            let r = m.sqrt_psd().unwrap();
            let sq = SymMat2::new(
                r.xx * r.xx + r.xy * r.xy,
                r.xx * r.xy + r.xy * r.yy,
                r.xy * r.xy + r.yy * r.yy,
            );
            assert!(
                (sq.xx - m.xx).abs() < 1e-12
                    && (sq.xy - m.xy).abs() < 1e-12
                    && (sq.yy - m.yy).abs() < 1e-12
            );
        }
    }

    #[test]
    fn supports_match_moments() {
        for spec in ["lattice", "hex6", "st-binary"] {
            let model = parse_model(spec).unwrap();
            let atoms = model.support().unwrap();
            let total: f64 = atoms.iter().map(|a| a.1).sum();
            assert!((total - 1.0).abs() < 1e-15);
            let mu = atoms.iter().fold(Vec2::ZERO, |acc, &(z, p)| acc + z * p);
            let m = model.moments();
            assert!((mu - m.mu).norm() < 1e-15);
            let xx: f64 = atoms.iter().map(|&(z, p)| p * (z.x - mu.x).powi(2)).sum();
            let xy: f64 = atoms
                .iter()
                .map(|&(z, p)| p * (z.x - mu.x) * (z.y - mu.y))
                .sum();
            let yy: f64 = atoms.iter().map(|&(z, p)| p * (z.y - mu.y).powi(2)).sum();
            assert!(
                (xx - m.sigma.xx).abs() < 1e-15
                    && (xy - m.sigma.xy).abs() < 1e-15
                    && (yy - m.sigma.yy).abs() < 1e-15
            );
        }
    }

    #[test]
    fn lattice_steps_are_unit() {
        let mut rng = RngStream::new(5, 0).rng();
        let mut seen = [false; 4];
        for _ in 0..1000 {
            let z = LatticeSrw.sample(&mut rng);
            assert_eq!(z.norm(), 1.0);
            seen[LATTICE_STEPS.iter().position(|&s| s == z).unwrap()] = true;
        }
        assert!(seen.iter().all(|&b| b));
    }

    #[test]
    fn gaussian_norm_anchor() {
        // sample mean of ||Z|| for N(0, I/2) against sqrt(pi c / 2)
        let g = Gaussian::new(Vec2::ZERO, SymMat2::new(0.5, 0.0, 0.5)).unwrap();
        let mut rng = RngStream::new(9, 0).rng();
        let n = 100_000;
        let mean: f64 = (0..n).map(|_| g.sample(&mut rng).norm()).sum::<f64>() / n as f64;
        assert!((mean - isotropic_norm_mean(0.5)).abs() < 5.0 * 0.5 / (n as f64).sqrt());
    }
}
