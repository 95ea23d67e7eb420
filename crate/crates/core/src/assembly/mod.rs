//! Mass matrix and dense nonsymmetric stiffness assembly.
//!
//! The stiffness realizes the sesquilinear form of the operator in the
//! adjoint-reduced shape `(D_b^beta phi_l, D_a^alpha... )`: for hats both
//! factors are exact ramp sums, so every entry is a short sum of kernel
//! primitives. An independent quadrature oracle for the literal
//! split form of the sesquilinear form lives in [`oracle_stiffness`].

mod oracle;

pub use oracle::oracle_stiffness;

use rayon::prelude::*;

use crate::special::{gamma, kernel_primitive};
use crate::{Error, Matrix, Mesh, Real, Result};

/// The fractional order pair (alpha, beta) with `1 <= alpha + beta <= 2`.
///
/// The operator theory lives on the open interval `1 < alpha + beta < 2`;
/// both boundary sums are admitted because the limit sweeps plot them:
/// sum 2 is attained only at alpha = beta = 1 (the classical Laplacian)
/// and sum 1 is the degenerate-coercivity edge where the discrete pencil
/// still exists but the closed-form inverse does not.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FractionalOrders<S> {
    alpha: S,
    beta: S,
}

impl<S: Real> FractionalOrders<S> {
    pub fn new(alpha: S, beta: S) -> Result<Self> {
        let zero = S::zero();
        let one = S::one();
        if !(alpha >= zero && alpha <= one) || !alpha.is_finite() {
            return Err(Error::Domain(format!("alpha {alpha} outside [0, 1]")));
        }
        if !(beta >= zero && beta <= one) || !beta.is_finite() {
            return Err(Error::Domain(format!("beta {beta} outside [0, 1]")));
        }
        let sum = alpha + beta;
        if !(sum >= one && sum <= S::lit(2.0)) {
            return Err(Error::Domain(format!(
                "alpha + beta = {sum} outside [1, 2]"
            )));
        }
        Ok(Self { alpha, beta })
    }

    #[inline]
    pub fn alpha(&self) -> S {
        self.alpha
    }

    #[inline]
    pub fn beta(&self) -> S {
        self.beta
    }

    /// s = (alpha + beta) / 2.
    #[inline]
    pub fn s(&self) -> S {
        (self.alpha + self.beta) * S::lit(0.5)
    }

    /// Cone half-angle `|beta - alpha| pi / 2`.
    #[inline]
    pub fn cone_half_angle(&self) -> S {
        (self.beta - self.alpha).abs() * S::PI() * S::lit(0.5)
    }

    #[inline]
    pub fn is_symmetric(&self) -> bool {
        self.alpha == self.beta
    }

    #[inline]
    pub fn is_laplacian(&self) -> bool {
        self.alpha == S::one() && self.beta == S::one()
    }
}

/// Mass matrix `M_kl = (phi_l, phi_k)`: tridiagonal with diagonal 2h/3
/// and off-diagonal h/6, dimension N-1.
pub fn mass_matrix<S: Real>(mesh: &Mesh<S>) -> Matrix<S> {
    let n = mesh.interior_count();
    let h = mesh.h();
    let diag = S::lit(2.0) * h / S::lit(3.0);
    let off = h / S::lit(6.0);
    Matrix::from_fn(n, n, |i, j| {
        if i == j {
            diag
        } else if i.abs_diff(j) == 1 {
            off
        } else {
            S::zero()
        }
    })
}

/// Hat second-difference weights over nodes (j+1, j, j-1).
const HAT_WEIGHTS: [(f64, isize); 3] = [(1.0, 1), (-2.0, 0), (1.0, -1)];

/// Dense stiffness matrix `K_kl = B[phi_l, phi_k]` in the adjoint-reduced
/// form `(D_b^beta phi_l, D_a^alpha phi_k)`.
///
/// For a node pair `(x_u, x_v)` (u from phi_l, v from phi_k) the entry
/// integral is `F(1-beta, 1-alpha, x_u - a, x_v - x_u)` when `x_u <= x_v`
/// and `F(1-alpha, 1-beta, x_v - a, x_u - x_v)` otherwise, where F is the
/// kernel primitive. alpha = beta = 1 dispatches to the classical
/// Laplacian stiffness.
pub fn stiffness_matrix<S: Real>(mesh: &Mesh<S>, orders: &FractionalOrders<S>) -> Result<Matrix<S>> {
    let n = mesh.interior_count();
    let h = mesh.h();
    if orders.is_laplacian() {
        let inv_h = S::one() / h;
        return Ok(Matrix::from_fn(n, n, |i, j| {
            if i == j {
                S::lit(2.0) * inv_h
            } else if i.abs_diff(j) == 1 {
                -inv_h
            } else {
                S::zero()
            }
        }));
    }

    let alpha = orders.alpha();
    let beta = orders.beta();
    let p_l = S::one() - beta; // exponent of D_b^beta hat terms
    let p_k = S::one() - alpha;
    let scale = S::one() / (h * h * gamma(S::lit(2.0) - beta)? * gamma(S::lit(2.0) - alpha)?);

    // F tables over integer node pairs: index [min][diff], min + diff <= N.
    // `le` covers pairs where the phi_l node is nearer a, `gt` the swap.
    let nodes = mesh.elements() + 1;
    let build = |lead: S, trail: S| -> Result<Vec<Vec<S>>> {
        (0..nodes)
            .into_par_iter()
            .map(|min| {
                let x = S::lit(min as f64) * h;
                (0..nodes - min)
                    .map(|diff| {
                        let d = S::lit(diff as f64) * h;
                        kernel_primitive(lead, trail, x, d).map_err(|e| match e {
                            Error::Accuracy {
                                context,
                                last,
                                previous,
                            } => Error::Accuracy {
                                context: format!("{context} (node pair min={min}, diff={diff})"),
                                last,
                                previous,
                            },
                            other => other,
                        })
                    })
                    .collect()
            })
            .collect()
    };
    let table_le = build(p_l, p_k)?;
    let table_gt = if orders.is_symmetric() {
        None
    } else {
        Some(build(p_k, p_l)?)
    };
    let f_pair = |u: usize, v: usize| -> S {
        if u <= v {
            table_le[u][v - u]
        } else {
            match &table_gt {
                Some(t) => t[v][u - v],
                None => table_le[v][u - v],
            }
        }
    };

    let mut k = Matrix::zeros(n, n);
    k.par_rows_mut().enumerate().for_each(|(row, out)| {
        let kk = row + 1; // test-function index
        for (col, slot) in out.iter_mut().enumerate() {
            let ll = col + 1; // trial-function index
            let mut acc = S::zero();
            for (wi, oi) in HAT_WEIGHTS {
                let u = (ll as isize + oi) as usize; // node of phi_l term
                for (wj, oj) in HAT_WEIGHTS {
                    let v = (kk as isize + oj) as usize; // node of phi_k term
                    acc += S::lit(wi * wj) * f_pair(u, v);
                }
            }
            *slot = scale * acc;
        }
    });
    Ok(k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    fn mesh(n: usize) -> Mesh<f64> {
        Mesh::new(0.0, 1.0, n).unwrap()
    }

    #[test]
    fn orders_validation() {
        assert!(FractionalOrders::new(0.6f64, 0.9).is_ok());
        assert!(FractionalOrders::new(1.0f64, 1.0).is_ok());
        assert!(FractionalOrders::new(0.5f64, 0.5).is_ok()); // degenerate edge kept for sweeps
        assert!(FractionalOrders::new(0.2f64, 0.3).is_err());
        assert!(FractionalOrders::new(0.4f64, 0.55).is_err());
        assert!(FractionalOrders::new(1.1f64, 0.5).is_err());
        assert!(FractionalOrders::new(-0.1f64, 0.9).is_err());
        let o = FractionalOrders::new(0.2f64, 0.9).unwrap();
        assert_relative_eq!(o.s(), 0.55);
        assert_relative_eq!(o.cone_half_angle(), 0.35 * std::f64::consts::PI);
    }

    #[test]
    fn mass_matrix_smallest_case() {
        let m = mass_matrix(&mesh(2));
        assert_eq!(m.rows(), 1);
        assert_relative_eq!(m[(0, 0)], 2.0 * 0.5 / 3.0, max_relative = 1e-15);
    }

    #[test]
    fn mass_interior_row_sums_equal_h() {
        let m = mass_matrix(&mesh(6));
        let h = 1.0 / 6.0;
        for i in 1..4 {
            let sum: f64 = m.row(i).iter().sum();
            assert_relative_eq!(sum, h, max_relative = 1e-14);
        }
    }

    #[test]
    fn mass_matches_simpson_oracle() {
        // per-element Simpson is exact for the quadratic hat products
        let msh = mesh(5);
        let m = mass_matrix(&msh);
        let hat = |j: usize, x: f64| -> f64 {
            let xj = msh.node(j);
            let h = msh.h();
            (1.0 - (x - xj).abs() / h).max(0.0)
        };
        for k in 1..5 {
            for l in 1..5 {
                let mut want = 0.0;
                for e in 0..5 {
                    let (x0, x1) = (msh.node(e), msh.node(e + 1));
                    let xm = 0.5 * (x0 + x1);
                    want += (x1 - x0) / 6.0
                        * (hat(k, x0) * hat(l, x0)
                            + 4.0 * hat(k, xm) * hat(l, xm)
                            + hat(k, x1) * hat(l, x1));
                }
                assert_abs_diff_eq!(m[(k - 1, l - 1)], want, epsilon = 1e-14);
            }
        }
    }

    #[test]
    fn laplacian_limit_is_classical_stiffness() {
        let msh = mesh(6);
        let k = stiffness_matrix(&msh, &FractionalOrders::new(1.0, 1.0).unwrap()).unwrap();
        let h = msh.h();
        for i in 0usize..5 {
            for j in 0usize..5 {
                let want = if i == j {
                    2.0 / h
                } else if i.abs_diff(j) == 1 {
                    -1.0 / h
                } else {
                    0.0
                };
                assert_abs_diff_eq!(k[(i, j)], want, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn fractional_path_approaches_laplacian() {
        let msh = mesh(6);
        let k1 = stiffness_matrix(&msh, &FractionalOrders::new(1.0, 1.0).unwrap()).unwrap();
        let k2 = stiffness_matrix(&msh, &FractionalOrders::new(0.9999, 0.9999).unwrap()).unwrap();
        for i in 0..5 {
            for j in 0..5 {
                assert_abs_diff_eq!(k1[(i, j)], k2[(i, j)], epsilon = 2e-2);
            }
        }
    }

    #[test]
    fn symmetric_orders_give_symmetric_stiffness() {
        let msh = mesh(8);
        let k = stiffness_matrix(&msh, &FractionalOrders::new(0.75, 0.75).unwrap()).unwrap();
        assert!(k.asymmetry() <= 1e-10);
    }

    #[test]
    fn transpose_swaps_orders() {
        let msh = mesh(8);
        let a = stiffness_matrix(&msh, &FractionalOrders::new(0.4, 0.8).unwrap()).unwrap();
        let b = stiffness_matrix(&msh, &FractionalOrders::new(0.8, 0.4).unwrap()).unwrap();
        let scale = a.max_abs();
        for i in 0..a.rows() {
            for j in 0..a.cols() {
                assert_abs_diff_eq!(a[(i, j)], b[(j, i)], epsilon = 1e-10 * scale);
            }
        }
    }

    #[test]
    fn symmetrized_stiffness_is_positive() {
        // v^T K v = v^T sym(K) v > 0, the coercivity consequence
        let msh = mesh(10);
        let k = stiffness_matrix(&msh, &FractionalOrders::new(0.3, 0.9).unwrap()).unwrap();
        let mut state = 0x243F_6A88_85A3_08D3u64;
        let mut rnd = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state >> 11) as f64 / (1u64 << 53) as f64 - 0.5
        };
        for _ in 0..20 {
            let v: Vec<f64> = (0..k.rows()).map(|_| rnd()).collect();
            let kv = k.matvec(&v);
            let quad: f64 = v.iter().zip(&kv).map(|(a, b)| a * b).sum();
            assert!(quad > 0.0, "quadratic form not positive: {quad}");
        }
    }

    #[test]
    fn mixed_order_one_passes_through_pipeline() {
        // beta = 1 makes one factor a step-function ramp; same path
        let msh = mesh(6);
        let k = stiffness_matrix(&msh, &FractionalOrders::new(0.7, 1.0).unwrap()).unwrap();
        assert!(k.max_abs().is_finite());
        let kt = stiffness_matrix(&msh, &FractionalOrders::new(1.0, 0.7).unwrap()).unwrap();
        let scale = k.max_abs();
        for i in 0..k.rows() {
            for j in 0..k.cols() {
                assert_abs_diff_eq!(k[(i, j)], kt[(j, i)], epsilon = 1e-10 * scale);
            }
        }
    }
}
