//! Exact symbolic engine for the intertwining conditions of N-fold
//! supersymmetric quantum mechanics, with the reductions to closed form.

pub mod diffring;
pub mod susy;
pub mod diffop;
pub mod linalg;
pub mod reduction;
pub mod preset;
