//! Exact finite-field algebra for plane curves `g1(x)^l + lambda*g2(y)^l + mu = 0`
//! and censuses of their outer Galois points.

pub mod census;
pub mod curve;
pub mod family;
pub mod ff;
pub mod poly;
pub mod probe;
