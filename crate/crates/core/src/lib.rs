//! Desk-scale vision-based tactile pipeline: a synthetic soft-finger plant
//! renders labeled deformation images, a supervised variational autoencoder
//! learns 6D force/torque prediction plus a latent deformation code, and a
//! position-based force controller closes the loop on the learned estimate.

pub mod nn;

pub use nn::{NnError, Scalar};
