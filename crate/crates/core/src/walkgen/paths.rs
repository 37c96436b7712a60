use super::models::{Gaussian, IncrementModel, SymMat2};
use super::rng::{RngStream, WalkRng};
use crate::error::{Error, Result};
use crate::geom2d::Vec2;

/// Positions `S_0 = 0, S_1, ..., S_n` of a walk.
#[derive(Debug, Clone, PartialEq)]
pub struct WalkPath {
    positions: Vec<Vec2>,
}

impl WalkPath {
    pub fn from_positions(positions: Vec<Vec2>) -> Result<Self> {
        match positions.first() {
            Some(&p) if p == Vec2::ZERO => Ok(WalkPath { positions }),
            Some(_) => Err(Error::InvalidArgument(
                "walk must start at the origin".into(),
            )),
            None => Err(Error::EmptyInput),
        }
    }

    pub fn from_increments(increments: &[Vec2]) -> Self {
        let mut positions = Vec::with_capacity(increments.len() + 1);
        let mut s = Vec2::ZERO;
        positions.push(s);
        for &z in increments {
            s = s + z;
            positions.push(s);
        }
        WalkPath { positions }
    }

    pub fn positions(&self) -> &[Vec2] {
        &self.positions
    }

    /// Number of steps `n` (one less than the number of positions).
    pub fn steps(&self) -> usize {
        self.positions.len() - 1
    }

    pub fn into_positions(self) -> Vec<Vec2> {
        self.positions
    }
}

/// Lazily generated positions of a walk, starting with the origin.
pub struct Walk<'a, M: IncrementModel + ?Sized> {
    model: &'a M,
    rng: WalkRng,
    pos: Vec2,
    remaining: usize,
    started: bool,
}

impl<'a, M: IncrementModel + ?Sized> Walk<'a, M> {
    pub fn new(model: &'a M, steps: usize, stream: RngStream) -> Self {
        Walk {
            model,
            rng: stream.rng(),
            pos: Vec2::ZERO,
            remaining: steps,
            started: false,
        }
    }
}

impl<M: IncrementModel + ?Sized> Iterator for Walk<'_, M> {
    type Item = Vec2;

    #[inline]
    fn next(&mut self) -> Option<Vec2> {
        if !self.started {
            self.started = true;
            return Some(self.pos);
        }
        if self.remaining == 0 {
            return None;
        }
        self.remaining -= 1;
        self.pos = self.pos + self.model.sample(&mut self.rng);
        Some(self.pos)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.remaining + usize::from(!self.started);
        (n, Some(n))
    }
}

pub fn sample_path<M: IncrementModel + ?Sized>(model: &M, n: usize, stream: RngStream) -> WalkPath {
    WalkPath {
        positions: Walk::new(model, n, stream).collect(),
    }
}

/// Gaussian walk with increments `N(0, cov / grid_n)`: the Brownian motion
/// `cov^{1/2} b` observed at times `k / grid_n`.
pub fn brownian_path(cov: SymMat2, grid_n: usize, stream: RngStream) -> Result<WalkPath> {
    if grid_n == 0 {
        return Err(Error::InvalidArgument("grid_n must be >= 1".into()));
    }
    let step = Gaussian::new(Vec2::ZERO, cov.scaled(1.0 / grid_n as f64))?;
    Ok(sample_path(&step, grid_n, stream))
}

/// Planar Brownian bridge on the grid: `b(k/N) - (k/N) b(1)`.
pub fn bridge_path(grid_n: usize, stream: RngStream) -> Result<WalkPath> {
    let free = brownian_path(SymMat2::IDENTITY, grid_n, stream)?;
    let end = *free.positions.last().unwrap();
    let n = grid_n as f64;
    let positions = free
        .positions
        .iter()
        .enumerate()
        .map(|(k, &p)| p - end * (k as f64 / n))
        .collect();
    Ok(WalkPath { positions })
}

/// Space-time scaling: the drift direction shrinks by `n ||mu||`, the
/// orthogonal direction (drift rotated anticlockwise) by `sqrt(n sigma2_perp)`.
pub fn psi_scaling(p: Vec2, mu: Vec2, sigma2_perp: f64, n: usize) -> Result<Vec2> {
    let drift = mu.norm();
    if !(drift > 0.0) {
        return Err(Error::ZeroDrift);
    }
    if !(sigma2_perp > 0.0) {
        return Err(Error::ZeroPerpVariance);
    }
    if n == 0 {
        return Err(Error::InvalidArgument("n must be >= 1".into()));
    }
    let along = mu * (1.0 / drift);
    let across = along.perp();
    let n = n as f64;
    Ok(Vec2::new(
        p.dot(along) / (n * drift),
        p.dot(across) / (n * sigma2_perp).sqrt(),
    ))
}

/// Centre-of-mass process `G_n = (1/n) sum_{k=1}^n S_k`, `G_0 = 0`.
pub fn center_of_mass(path: &WalkPath) -> WalkPath {
    let mut positions = Vec::with_capacity(path.positions.len());
    positions.push(Vec2::ZERO);
    let mut sum = Vec2::ZERO;
    for (k, &s) in path.positions.iter().enumerate().skip(1) {
        sum = sum + s;
        positions.push(sum * (1.0 / k as f64));
    }
    WalkPath { positions }
}
