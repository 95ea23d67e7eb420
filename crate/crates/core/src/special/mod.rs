//! Scalar special functions and singular-weight quadrature primitives.

mod gamma_fn;
mod jacobi;
mod kernel;

pub use gamma_fn::gamma;
pub use jacobi::{gauss_jacobi, JacobiRule};
pub use kernel::kernel_primitive;

pub(crate) use jacobi::cached_rule;
pub(crate) use kernel::{kernel_primitive_graded, kernel_value};
