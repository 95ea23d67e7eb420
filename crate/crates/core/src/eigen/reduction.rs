//! Cholesky factorization of the tridiagonal SPD mass matrix and the
//! congruence reduction of the pencil (K, M) to a standard problem.

use crate::{Error, Matrix, Real, Result};

/// Lower bidiagonal Cholesky factor of a tridiagonal SPD matrix:
/// `diag[i] = L_ii`, `sub[i] = L_{i,i-1}` (`sub` index 0 unused).
#[derive(Debug, Clone)]
pub struct BandCholesky<S> {
    pub diag: Vec<S>,
    pub sub: Vec<S>,
}

impl<S: Real> BandCholesky<S> {
    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    /// Dense L L^T, for reconstruction checks.
    pub fn reconstruct(&self) -> Matrix<S> {
        let n = self.dim();
        Matrix::from_fn(n, n, |i, j| {
            // (L L^T)_ij = sum_k L_ik L_jk, bidiagonal L
            let mut acc = S::zero();
            for k in 0..n {
                let lik = if k == i {
                    self.diag[i]
                } else if k + 1 == i {
                    self.sub[i]
                } else {
                    S::zero()
                };
                let ljk = if k == j {
                    self.diag[j]
                } else if k + 1 == j {
                    self.sub[j]
                } else {
                    S::zero()
                };
                acc += lik * ljk;
            }
            acc
        })
    }
}

/// Cholesky factorization `L L^T = M` of a symmetric positive definite
/// tridiagonal matrix (only the band of `m` is read).
pub fn cholesky_band<S: Real>(m: &Matrix<S>) -> Result<BandCholesky<S>> {
    assert!(m.is_square());
    let n = m.rows();
    let mut diag = vec![S::zero(); n];
    let mut sub = vec![S::zero(); n];
    for i in 0..n {
        let ls = if i == 0 {
            S::zero()
        } else {
            m[(i, i - 1)] / diag[i - 1]
        };
        let v = m[(i, i)] - ls * ls;
        if !(v > S::zero()) {
            return Err(Error::NotSpd { index: i });
        }
        sub[i] = ls;
        diag[i] = v.sqrt();
    }
    Ok(BandCholesky { diag, sub })
}

/// `C = L^{-1} K L^{-T}`: same eigenvalues as the pencil (K, M), computed
/// by two bidiagonal triangular solves per column.
pub fn reduce_standard<S: Real>(k: &Matrix<S>, l: &BandCholesky<S>) -> Matrix<S> {
    assert!(k.is_square());
    let n = k.rows();
    assert_eq!(n, l.dim());
    // forward solve L Y = K, column by column
    let mut y = k.clone();
    for j in 0..n {
        let mut prev = S::zero();
        for i in 0..n {
            let v = (y[(i, j)] - l.sub[i] * prev) / l.diag[i];
            y[(i, j)] = v;
            prev = v;
        }
    }
    // solve C L^T = Y row by row (forward in the column index)
    let mut c = y;
    for i in 0..n {
        let row = c.row_mut(i);
        let mut prev = S::zero();
        for j in 0..n {
            let v = (row[j] - l.sub[j] * prev) / l.diag[j];
            row[j] = v;
            prev = v;
        }
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::assembly::mass_matrix;
    use crate::Mesh;
    use approx::assert_abs_diff_eq;

    #[test]
    fn identity_factors_to_identity() {
        let l = cholesky_band(&Matrix::<f64>::identity(4)).unwrap();
        for i in 0..4 {
            assert_abs_diff_eq!(l.diag[i], 1.0);
            assert_abs_diff_eq!(l.sub[i], 0.0);
        }
    }

    #[test]
    fn one_by_one() {
        let mut m = Matrix::<f64>::zeros(1, 1);
        m[(0, 0)] = 4.0;
        let l = cholesky_band(&m).unwrap();
        assert_abs_diff_eq!(l.diag[0], 2.0);
    }

    #[test]
    fn mass_matrix_reconstructs() {
        let mesh = Mesh::new(0.0f64, 1.0, 4).unwrap();
        let m = mass_matrix(&mesh);
        let l = cholesky_band(&m).unwrap();
        let r = l.reconstruct();
        for i in 0..3 {
            for j in 0..3 {
                assert_abs_diff_eq!(r[(i, j)], m[(i, j)], epsilon = 1e-14);
            }
        }
    }

    #[test]
    fn non_spd_is_error() {
        let mut m = Matrix::<f64>::identity(3);
        m[(2, 2)] = -1.0;
        assert!(matches!(cholesky_band(&m), Err(Error::NotSpd { index: 2 })));
    }

    #[test]
    fn identity_mass_reduces_to_k() {
        let k = Matrix::from_fn(3, 3, |i, j| (i * 3 + j) as f64);
        let l = cholesky_band(&Matrix::<f64>::identity(3)).unwrap();
        let c = reduce_standard(&k, &l);
        for i in 0..3 {
            for j in 0..3 {
                assert_abs_diff_eq!(c[(i, j)], k[(i, j)], epsilon = 1e-15);
            }
        }
    }

    #[test]
    fn congruence_preserves_symmetry() {
        let mesh = Mesh::new(0.0f64, 1.0, 8).unwrap();
        let m = mass_matrix(&mesh);
        let k = Matrix::from_fn(7, 7, |i, j| 1.0 / (1.0 + (i + j) as f64));
        let l = cholesky_band(&m).unwrap();
        let c = reduce_standard(&k, &l);
        assert!(c.asymmetry() <= 1e-10);
    }
}
