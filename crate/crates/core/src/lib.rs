//! Uniform random points on the unit sphere surface and in the unit ball in
//! any number of dimensions.
//!
//! The main sampler draws `n/2` rejection-sampled points from the unit disk,
//! sorts them by squared radius and rescales each pair by a square root of a
//! ratio of neighbouring radii. Classical generators (Gaussian rescaling, the
//! polar method, Marsaglia's n = 3 and n = 4 constructions, Sibuya's spacing
//! method, cube rejection) are included as baselines and cross-checks, along
//! with goodness-of-fit tests and a runtime harness.
//!
//! Samplers are generic over the scalar type (`f32` or `f64`); the aliases
//! below fix `f64`, which is what the verification and benchmark code uses.

pub mod bench;
pub mod rng;
pub mod samplers;
pub mod scalar;
pub mod verify;

pub use rng::{RngKind, RngStream, ScriptedUniforms, UniformSource};
pub use samplers::{
    draw_disk_pair, BallPoint, DiskPair, SampleError, Sampler, SamplerKind, UnitVector,
};
pub use scalar::Real;

pub type UnitVector64 = UnitVector<f64>;
pub type UnitVector32 = UnitVector<f32>;
pub type BallPoint64 = BallPoint<f64>;
pub type BallPoint32 = BallPoint<f32>;
pub type DiskPair64 = DiskPair<f64>;
pub type DiskPair32 = DiskPair<f32>;
pub type Sampler64 = Sampler<f64>;
pub type Sampler32 = Sampler<f32>;
