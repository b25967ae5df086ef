//! Core library for the RADiff pipeline: a conditional latent diffusion model
//! for radio-astronomical image synthesis, together with its evaluation
//! metrics, augmentation experiment harness, and large-scale map compositor.

pub mod augment;
pub mod autoencoder;
pub mod checkpoint;
pub mod compositor;
pub mod conditioning;
pub mod dataio;
pub mod diffusion;
pub mod metrics;
pub mod nn;
pub mod rng;

mod error;

pub use error::{Error, Result};
