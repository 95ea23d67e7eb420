//! Finite element spectral analysis of the nonsymmetric fractional elliptic
//! operator `D_a^alpha D_b^beta` on an interval with homogeneous Dirichlet
//! conditions.
//!
//! The crate is organised around the pipeline
//!
//! 1. [`special`] — gamma function, Gauss-Jacobi rules on (0,1) and the
//!    kernel primitive `F(p,q,X,d) = ∫_0^X t^p (t+d)^q dt` that every
//!    analytic stiffness entry reduces to;
//! 2. [`fracops`] — exact Riemann-Liouville calculus on power-ramp sums
//!    (hat functions and their fractional derivatives) plus grid-based
//!    fractional integration;
//! 3. [`assembly`] — mass matrix and the dense nonsymmetric stiffness
//!    matrix, with an independent split-form quadrature oracle;
//! 4. [`eigen`] — dense generalized nonsymmetric eigenvalue solver
//!    (Cholesky reduction, Hessenberg double-shift QR, inverse iteration)
//!    and spectrum classification;
//! 5. [`direct`] — closed-form inverse representation of the operator,
//!    used as an independent solver for the principal eigenpair and for
//!    maximum-principle / boundary blow-up probes.
//!
//! All numerics are generic over the scalar type through the [`Real`]
//! trait; `f64` aliases for the main types live at the crate root.

// negated float comparisons are deliberate NaN guards; index loops in
// the kernels mirror the classic algorithm statements
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

use std::fmt;

use num_traits::{Float, FloatConst, FromPrimitive, NumAssign, ToPrimitive};

pub mod assembly;
pub mod direct;
pub mod eigen;
pub mod fracops;
pub mod matrix;
pub mod special;

pub use assembly::FractionalOrders;
pub use eigen::{Eigenpair, Region, Spectrum, SpectrumReport};
pub use fracops::{GridFunction, Mesh, RampSum, Side};
pub use matrix::Matrix;

/// Scalar type the solver is generic over: `f32` or `f64`.
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + NumAssign
    + std::iter::Sum
    + fmt::Debug
    + fmt::Display
    + fmt::LowerExp
    + Send
    + Sync
    + 'static
{
    /// Converts an `f64` literal; panics only if the value is not
    /// representable at all (never for the constants used here).
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal not representable in scalar type")
    }

    /// Lossy view as `f64`, for error payloads and diagnostics.
    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Complex number over the generic scalar.
pub type Cplx<S> = num_complex::Complex<S>;

pub type Mesh64 = Mesh<f64>;
pub type Orders64 = FractionalOrders<f64>;
pub type RampSum64 = RampSum<f64>;
pub type GridFunction64 = GridFunction<f64>;
pub type Matrix64 = Matrix<f64>;
pub type Spectrum64 = Spectrum<f64>;
pub type SpectrumReport64 = SpectrumReport<f64>;

/// Errors reported by the numerical kernels.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("accuracy not reached in {context}; last two estimates {last:e} and {previous:e}")]
    Accuracy {
        context: String,
        last: f64,
        previous: f64,
    },
    #[error("matrix is not symmetric positive definite (pivot {index})")]
    NotSpd { index: usize },
    #[error("QR iteration did not converge; unconverged block rows {blocks:?}")]
    EigNonConvergence { blocks: Vec<usize> },
    #[error(
        "inverse iteration residual {residual:e} above threshold for eigenvalue {re:e}{im:+e}i \
         (possibly defective or clustered)"
    )]
    ResidualTooLarge { residual: f64, re: f64, im: f64 },
    #[error(
        "power iteration did not converge within {max_iter} iterations; \
         last two estimates {last:e} and {previous:e}"
    )]
    PowerIterDiverged {
        max_iter: usize,
        last: f64,
        previous: f64,
    },
    #[error("index {index} out of range ({len} available)")]
    IndexOutOfRange { index: usize, len: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
