//! Linear codes over `Z_{p^2}` under the Lee and Hamming metrics.
//!
//! The crate builds codes from generator matrices, computes their duals, weight
//! distributions and exact covering radii, and audits published covering-radius
//! results for the repetition and block-repetition families by brute force.

pub mod code;
pub mod constructions;
pub mod covering;
pub mod error;
pub mod harness;
pub mod ring;

pub use code::{
    CodeParameters, CodeType, GeneratorMatrix, Limits, LinearCode, WeightDistribution, WordSet,
};
pub use covering::{CoveringResult, Method, SearchOptions};
pub use error::{Error, Result};
pub use ring::{Metric, RingContext, Word};
