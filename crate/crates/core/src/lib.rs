//! Exact computations with PBW bases, canonical bases and diagram-automorphism
//! folding for small-rank quantized enveloping algebras.

pub mod error;
pub mod freealg;
pub mod canonical;
pub mod cartan;
pub mod fold;
pub mod pbw;
pub mod qarith;
pub mod weyl;

pub use error::{Error, Result};
