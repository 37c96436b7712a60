//! Convex hulls of planar random walks: geometry kernel, walk models,
//! streaming hull functionals, Monte Carlo estimation and limit constants.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod geom2d;
pub mod hullstream;
pub mod limits;
pub mod montecarlo;
pub mod walkgen;

pub use error::{Error, Result};
pub use geom2d::{ConvexPolygon, Vec2};
