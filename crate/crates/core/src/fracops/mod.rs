//! Exact Riemann-Liouville calculus on power-ramp sums plus grid-based
//! fractional integration.
//!
//! Hat basis functions and all their fractional derivatives and
//! integrals are finite sums of truncated powers `c (x-node)_+^p`
//! (left side) or `c (node-x)_+^p` (right side); the calculus acts
//! term-wise through gamma-function ratios, so norms and inner products
//! of derivative images are exact up to quadrature of the kernel
//! primitive.

mod grid;
mod mesh;
mod ramp;

pub use grid::{rl_integral_grid, GridFunction};
pub use mesh::Mesh;
pub use ramp::{
    hat_ramps, hat_ramps_left, l2_inner_ramps, rl_derivative, rl_integral, RampSum, RampTerm, Side,
};
