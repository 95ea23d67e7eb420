//! Generalized nonsymmetric eigenvalue solver for the pencil
//! `K U = lambda M U` and classification of the computed spectrum.

mod inverse_iter;
mod qr;
mod reduction;

pub use inverse_iter::eigenvector_inverse_iteration;
pub use qr::eig_nonsymmetric;
pub use reduction::{cholesky_band, reduce_standard, BandCholesky};

use rayon::prelude::*;

use crate::assembly::{mass_matrix, stiffness_matrix, FractionalOrders};
use crate::{Cplx, Matrix, Mesh, Real, Result};

use inverse_iter::{inverse_iteration_raw, residual_tolerance};

/// One computed eigenpair: complex eigenvalue, M-normalized phase-fixed
/// nodal eigenvector on the interior nodes, and relative residual
/// `||K U - lambda M U||_2 / (||K||_F ||U||_2)`.
#[derive(Debug, Clone)]
pub struct Eigenpair<S> {
    pub lambda: Cplx<S>,
    pub vector: Vec<Cplx<S>>,
    pub residual: S,
}

/// Sorted spectrum of a discretized problem together with the context
/// it was computed in.
#[derive(Debug, Clone)]
pub struct Spectrum<S> {
    pub orders: FractionalOrders<S>,
    pub a: S,
    pub b: S,
    pub elements: usize,
    pub pairs: Vec<Eigenpair<S>>,
}

/// Accuracy region by index thirds, after the paper's split of the
/// discrete spectrum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Region {
    Accurate,
    Transitional,
    Inaccurate,
}

impl Region {
    /// Thirds by index; the remainder goes to the last region.
    pub fn of_index(index: usize, total: usize) -> Self {
        let third = total / 3;
        if index < third {
            Region::Accurate
        } else if index < 2 * third {
            Region::Transitional
        } else {
            Region::Inaccurate
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Region::Accurate => "accurate",
            Region::Transitional => "transitional",
            Region::Inaccurate => "inaccurate",
        }
    }
}

/// Classification summary of a spectrum.
#[derive(Debug, Clone)]
pub struct SpectrumReport<S> {
    pub real_count: usize,
    pub conjugate_pairs: usize,
    /// max over the accurate third of `|Arg lambda| - theta`.
    pub cone_margin: S,
    pub regions: Vec<Region>,
    /// Per-eigenvalue `|Arg lambda| - theta` (real eigenvalues snapped
    /// onto the axis).
    pub margins: Vec<S>,
    pub principal_lambda: Cplx<S>,
    pub principal_is_real: bool,
    pub principal_positive: bool,
    /// Largest real eigenvalue (by real part) among the real-flagged
    /// ones, exported for inspection of the complex-branch onset.
    pub largest_real: Option<S>,
}

/// Reality test threshold: `|Im| <= 1e-6 max(1, |lambda|)`.
pub fn is_real_eigenvalue<S: Real>(lambda: Cplx<S>) -> bool {
    lambda.im.abs() <= S::lit(1e-6) * S::one().max(lambda.norm())
}

/// Solves the dense pencil `K U = lambda M U`: Cholesky reduction to a
/// standard problem, double-shift QR for the eigenvalues, inverse
/// iteration on the pencil for each eigenvector, then sorting by
/// ascending |lambda| with ties broken by ascending Arg.
pub fn solve_gevp<S: Real>(k: &Matrix<S>, m: &Matrix<S>) -> Result<Vec<Eigenpair<S>>> {
    let l = cholesky_band(m)?;
    let c = reduce_standard(k, &l);
    let values = eig_nonsymmetric(&c)?;
    let mut pairs: Vec<Eigenpair<S>> = values
        .into_par_iter()
        .map(|lambda| {
            let (vector, residual) = inverse_iteration_raw(k, m, lambda);
            Eigenpair {
                lambda,
                vector,
                residual,
            }
        })
        .collect();
    pairs.sort_by(|x, y| {
        let kx = (x.lambda.norm(), x.lambda.arg());
        let ky = (y.lambda.norm(), y.lambda.arg());
        kx.partial_cmp(&ky).expect("finite eigenvalues")
    });
    Ok(pairs)
}

/// Eigenvalues of the pencil only (no eigenvectors), sorted the same
/// way as [`solve_gevp`]; the cheap path for sweeps and trend checks.
pub fn gevp_eigenvalues<S: Real>(k: &Matrix<S>, m: &Matrix<S>) -> Result<Vec<Cplx<S>>> {
    let l = cholesky_band(m)?;
    let c = reduce_standard(k, &l);
    let mut values = eig_nonsymmetric(&c)?;
    values.sort_by(|x, y| {
        (x.norm(), x.arg())
            .partial_cmp(&(y.norm(), y.arg()))
            .expect("finite eigenvalues")
    });
    Ok(values)
}

/// Assembles the pencil and returns its sorted eigenvalues.
pub fn eigenvalues_for<S: Real>(
    mesh: &Mesh<S>,
    orders: &FractionalOrders<S>,
) -> Result<Vec<Cplx<S>>> {
    let k = stiffness_matrix(mesh, orders)?;
    let m = mass_matrix(mesh);
    gevp_eigenvalues(&k, &m)
}

/// Assembles and solves the eigenproblem for the given mesh and orders.
pub fn solve_eigenproblem<S: Real>(
    mesh: &Mesh<S>,
    orders: &FractionalOrders<S>,
) -> Result<Spectrum<S>> {
    let k = stiffness_matrix(mesh, orders)?;
    let m = mass_matrix(mesh);
    let pairs = solve_gevp(&k, &m)?;
    Ok(Spectrum {
        orders: *orders,
        a: mesh.a(),
        b: mesh.b(),
        elements: mesh.elements(),
        pairs,
    })
}

/// Classifies a sorted spectrum: reality of each eigenvalue, accuracy
/// regions by index thirds, the cone margin over the accurate third and
/// the principal-pair summary.
pub fn classify<S: Real>(spectrum: &Spectrum<S>, orders: &FractionalOrders<S>) -> SpectrumReport<S> {
    let total = spectrum.pairs.len();
    let theta = orders.cone_half_angle();
    let mut real_count = 0usize;
    let mut regions = Vec::with_capacity(total);
    let mut margins = Vec::with_capacity(total);
    let mut cone_margin = S::neg_infinity();
    let mut largest_real: Option<S> = None;

    for (i, pair) in spectrum.pairs.iter().enumerate() {
        let real = is_real_eigenvalue(pair.lambda);
        if real {
            real_count += 1;
            largest_real = Some(match largest_real {
                Some(v) => v.max(pair.lambda.re),
                None => pair.lambda.re,
            });
        }
        let arg = if real {
            if pair.lambda.re >= S::zero() {
                S::zero()
            } else {
                S::PI()
            }
        } else {
            pair.lambda.arg()
        };
        let margin = arg.abs() - theta;
        margins.push(margin);
        let region = Region::of_index(i, total);
        if region == Region::Accurate {
            cone_margin = cone_margin.max(margin);
        }
        regions.push(region);
    }
    // spectra too small for an accurate third fall back to the
    // principal eigenvalue, which is the best-resolved one
    if !cone_margin.is_finite() {
        cone_margin = margins[0];
    }

    let principal = &spectrum.pairs[0];
    let principal_is_real = is_real_eigenvalue(principal.lambda);
    let principal_positive = principal_is_real
        && principal.lambda.re > S::zero()
        && principal.vector.iter().all(|z| z.re > S::zero());

    SpectrumReport {
        real_count,
        conjugate_pairs: (total - real_count) / 2,
        cone_margin,
        regions,
        margins,
        principal_lambda: principal.lambda,
        principal_is_real,
        principal_positive,
        largest_real,
    }
}

impl<S: Real> Spectrum<S> {
    pub fn report(&self) -> SpectrumReport<S> {
        classify(self, &self.orders)
    }

    /// Worst residual over all pairs, against the solver's tolerance.
    pub fn max_residual(&self) -> S {
        self.pairs
            .iter()
            .fold(S::zero(), |acc, p| acc.max(p.residual))
    }

    pub fn residual_tolerance() -> S {
        residual_tolerance::<S>()
    }
}

/// Discrete eigenvalues of the classical Laplacian FEM pencil on N
/// uniform elements of (0, 1): `lambda_j = 6 (1 - cos(j pi h)) /
/// (h^2 (2 + cos(j pi h)))`, an exact oracle for alpha = beta = 1.
pub fn laplacian_fem_eigenvalue<S: Real>(j: usize, elements: usize) -> S {
    let h = S::one() / S::lit(elements as f64);
    let c = (S::PI() * S::lit(j as f64) * h).cos();
    S::lit(6.0) * (S::one() - c) / (h * h * (S::lit(2.0) + c))
}
