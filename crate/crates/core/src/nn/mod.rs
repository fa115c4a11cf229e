//! Minimal differentiable-network kernel: tensors, layers with reverse-mode
//! gradients, the reparameterization trick, closed-form KL for diagonal
//! Gaussians, and an Adam optimizer with a per-epoch learning-rate decay.
//!
//! Everything is generic over the element type so the same graph can train in
//! `f32` and be gradient-checked in `f64`.

pub mod adam;
pub mod layers;
pub mod ops;
pub mod tensor;

pub use adam::{AdamConfig, AdamState};
pub use layers::{Conv2d, Dense, Gradients, Layer, Parameters, ResidualBlock, SeqCache, Sequential, Skip};
pub use ops::{kl_diag_gaussian, reparameterize};
pub use tensor::Tensor;

use thiserror::Error;

/// Element type for network math. Training uses `f32`; gradient checking
/// instantiates the same graph with `f64`.
pub trait Scalar:
    num_traits::Float + num_traits::NumAssign + Default + Send + Sync + std::fmt::Debug + 'static
{
    fn from_f64(v: f64) -> Self;
    fn as_f64(self) -> f64;
}

impl Scalar for f32 {
    fn from_f64(v: f64) -> Self {
        v as f32
    }
    fn as_f64(self) -> f64 {
        self as f64
    }
}

impl Scalar for f64 {
    fn from_f64(v: f64) -> Self {
        v
    }
    fn as_f64(self) -> f64 {
        self
    }
}

#[derive(Debug, Error)]
pub enum NnError {
    #[error("shape mismatch in layer `{layer}`: expected {expected}, got {got}")]
    Shape {
        layer: String,
        expected: String,
        got: String,
    },
    #[error("tensor data length {len} does not match dims {dims:?}")]
    Length { len: usize, dims: Vec<usize> },
    #[error("non-finite value in {context}")]
    NonFinite { context: String },
    #[error("stale backward cache: {0}")]
    StaleCache(String),
    #[error("invalid network config: {0}")]
    Config(String),
}

pub type NnResult<T> = Result<T, NnError>;
