//! Increment models, reproducible random streams and path samplers.

pub mod models;
pub mod paths;
pub mod rng;

pub use models::{
    parse_model, Gaussian, Hex6, IncrementModel, LatticeSrw, ModelFactory, ModelRegistry,
    MomentSummary, ParetoDirection, PearsonRayleigh, SpacetimeBinary, SpacetimeGaussian, SymMat2,
};
pub use paths::{
    bridge_path, brownian_path, center_of_mass, psi_scaling, sample_path, Walk, WalkPath,
};
pub use rng::{RngStream, WalkRng};

/// Moments of the model, for callers holding a boxed model.
pub fn moments(model: &dyn IncrementModel) -> MomentSummary {
    model.moments()
}
