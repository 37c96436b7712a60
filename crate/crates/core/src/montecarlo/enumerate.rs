//! Exact moments by enumerating every path of a finite-support walk.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom2d::{area, convex_hull, perimeter, triangle_area, Vec2};
use crate::walkgen::IncrementModel;

/// Largest number of paths (or law atoms) the enumerators will visit.
pub const ENUMERATION_LIMIT: f64 = 1e7;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExactMoments {
    pub n: usize,
    pub el: f64,
    pub var_l: f64,
    pub ea: f64,
}

fn atoms(model: &dyn IncrementModel) -> Result<Vec<(Vec2, f64)>> {
    model.support().ok_or(Error::NotFiniteSupport)
}

fn check_size(support: usize, n: usize) -> Result<()> {
    let paths = (support as f64).powi(n as i32);
    if paths > ENUMERATION_LIMIT {
        return Err(Error::SupportTooLarge {
            paths,
            limit: ENUMERATION_LIMIT,
        });
    }
    Ok(())
}

fn hull_functionals(positions: &[Vec2]) -> (f64, f64) {
    let hull = convex_hull(positions).expect("finite positions");
    (perimeter(&hull), area(&hull))
}

// weighted running mean and second moment (West 1979)
#[derive(Default)]
struct Weighted {
    w: f64,
    mean: f64,
    s: f64,
}

impl Weighted {
    fn push(&mut self, x: f64, w: f64) {
        if w == 0.0 {
            return;
        }
        self.w += w;
        let delta = x - self.mean;
        self.mean += delta * w / self.w;
        self.s += w * delta * (x - self.mean);
    }
}

/// `E L_n`, `Var L_n` and `E A_n` over all `|support|^n` paths.
pub fn enumerate_exact(model: &dyn IncrementModel, n: usize) -> Result<ExactMoments> {
    let support = atoms(model)?;
    check_size(support.len(), n)?;
    let mut stack = Vec::with_capacity(n + 1);
    stack.push(Vec2::ZERO);
    let mut l = Weighted::default();
    let mut a = Weighted::default();

    fn walk(
        support: &[(Vec2, f64)],
        depth: usize,
        prob: f64,
        stack: &mut Vec<Vec2>,
        l: &mut Weighted,
        a: &mut Weighted,
    ) {
        if depth == 0 {
            let (per, ar) = hull_functionals(stack);
            l.push(per, prob);
            a.push(ar, prob);
            return;
        }
        let last = *stack.last().unwrap();
        for &(z, p) in support {
            stack.push(last + z);
            walk(support, depth - 1, prob * p, stack, l, a);
            stack.pop();
        }
    }

    walk(&support, n, 1.0, &mut stack, &mut l, &mut a);
    Ok(ExactMoments {
        n,
        el: l.mean,
        var_l: l.s / l.w,
        ea: a.mean,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MartingaleCheck {
    /// `Var L_n` from direct enumeration.
    pub lhs: f64,
    /// `sum_i E[D_i^2]` with `D_i = E[L_n | F_i] - E[L_n^{(i)} | F_i]`.
    pub rhs: f64,
}

/// Exact check of the martingale-difference decomposition of `Var L_n`,
/// where `L_n^{(i)}` is `L_n` with the `i`-th increment resampled.
/// Intended for `n <= 6`.
pub fn martingale_decomposition_check(
    model: &dyn IncrementModel,
    n: usize,
) -> Result<MartingaleCheck> {
    let support = atoms(model)?;
    check_size(support.len(), n + 1)?;
    let lhs = enumerate_exact(model, n)?.var_l;

    // returns E[L_n | F_depth] for the current prefix
    fn visit(
        support: &[(Vec2, f64)],
        remaining: usize,
        prob: f64,
        stack: &mut Vec<Vec2>,
        acc: &mut f64,
    ) -> f64 {
        if remaining == 0 {
            return hull_functionals(stack).0;
        }
        let last = *stack.last().unwrap();
        let child: Vec<f64> = support
            .iter()
            .map(|&(z, p)| {
                stack.push(last + z);
                let m = visit(support, remaining - 1, prob * p, stack, acc);
                stack.pop();
                m
            })
            .collect();
        // conditional mean with the next increment replaced by an independent copy
        let resampled: f64 = support.iter().zip(&child).map(|(&(_, p), m)| p * m).sum();
        for (&(_, p), m) in support.iter().zip(&child) {
            let d = m - resampled;
            *acc += prob * p * d * d;
        }
        resampled
    }

    let mut stack = vec![Vec2::ZERO];
    let mut rhs = 0.0;
    visit(&support, n, 1.0, &mut stack, &mut rhs);
    Ok(MartingaleCheck { lhs, rhs })
}

fn key(v: Vec2) -> (u64, u64) {
    ((v.x + 0.0).to_bits(), (v.y + 0.0).to_bits())
}

fn convolve(law: &[(Vec2, f64)], step: &[(Vec2, f64)]) -> Vec<(Vec2, f64)> {
    let mut index: HashMap<(u64, u64), usize> = HashMap::new();
    let mut out: Vec<(Vec2, f64)> = Vec::new();
    for &(x, p) in law {
        for &(z, q) in step {
            let y = x + z;
            match index.get(&key(y)) {
                Some(&i) => out[i].1 += p * q,
                None => {
                    index.insert(key(y), out.len());
                    out.push((y, p * q));
                }
            }
        }
    }
    out
}

/// Law of `S_k` as merged atoms.
pub fn position_law(model: &dyn IncrementModel, k: usize) -> Result<Vec<(Vec2, f64)>> {
    let support = atoms(model)?;
    let mut law = vec![(Vec2::ZERO, 1.0)];
    for _ in 0..k {
        law = convolve(&law, &support);
        if law.len() as f64 > ENUMERATION_LIMIT {
            return Err(Error::SupportTooLarge {
                paths: law.len() as f64,
                limit: ENUMERATION_LIMIT,
            });
        }
    }
    Ok(law)
}

/// `E ||S_k||` for `k = 1..=n`.
pub fn exact_norm_means(model: &dyn IncrementModel, n: usize) -> Result<Vec<f64>> {
    let support = atoms(model)?;
    let mut law = vec![(Vec2::ZERO, 1.0)];
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        law = convolve(&law, &support);
        out.push(law.iter().map(|(x, p)| p * x.norm()).sum());
    }
    Ok(out)
}

/// `E T(S_m, S_k - S_m)` where `T(u, v) = |u x v| / 2`; the two arguments
/// are independent with the laws of `S_m` and `S_{k-m}`.
pub fn exact_triangle_mean(model: &dyn IncrementModel, m: usize, k: usize) -> Result<f64> {
    if m > k {
        return Err(Error::InvalidArgument(format!("m = {m} exceeds k = {k}")));
    }
    let a = position_law(model, m)?;
    let b = position_law(model, k - m)?;
    Ok(a.iter()
        .flat_map(|&(u, p)| b.iter().map(move |&(v, q)| p * q * triangle_area(u, v)))
        .sum())
}
