//! Eigenvector recovery by inverse iteration on the shifted pencil
//! (K - lambda M), solved by dense complex LU with partial pivoting.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::{Cplx, Error, Matrix, Real, Result};

/// Fixed seed for the start vector: calls are deterministic.
const START_SEED: u64 = 0x46524143_53504543;

const MAX_SWEEPS: usize = 5;

pub(crate) fn residual_tolerance<S: Real>() -> S {
    S::lit(1e-8).max(S::epsilon() * S::lit(100.0))
}

struct ComplexLu<S> {
    lu: Matrix<Cplx<S>>,
    pivots: Vec<usize>,
}

fn lu_factor<S: Real>(mut a: Matrix<Cplx<S>>) -> ComplexLu<S> {
    let n = a.rows();
    let mut pivots = vec![0usize; n];
    let scale = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .fold(S::zero(), |acc, ij| acc.max(a[ij].norm_sqr()))
        .sqrt();
    let tiny = S::epsilon() * scale.max(S::min_positive_value());
    for col in 0..n {
        // partial pivot by modulus
        let mut best = col;
        let mut best_mag = a[(col, col)].norm_sqr();
        for row in (col + 1)..n {
            let mag = a[(row, col)].norm_sqr();
            if mag > best_mag {
                best = row;
                best_mag = mag;
            }
        }
        pivots[col] = best;
        if best != col {
            for j in 0..n {
                let tmp = a[(col, j)];
                a[(col, j)] = a[(best, j)];
                a[(best, j)] = tmp;
            }
        }
        if a[(col, col)].norm_sqr() == S::zero() {
            // exact singularity at the shift: the standard inverse
            // iteration remedy is a tiny perturbation of the pivot
            a[(col, col)] = Cplx::new(tiny, S::zero());
        }
        let inv = Cplx::new(S::one(), S::zero()) / a[(col, col)];
        for row in (col + 1)..n {
            let factor = a[(row, col)] * inv;
            a[(row, col)] = factor;
            if factor.norm_sqr() != S::zero() {
                for j in (col + 1)..n {
                    let delta = factor * a[(col, j)];
                    a[(row, j)] -= delta;
                }
            }
        }
    }
    ComplexLu { lu: a, pivots }
}

impl<S: Real> ComplexLu<S> {
    fn solve_in_place(&self, b: &mut [Cplx<S>]) {
        let n = b.len();
        for col in 0..n {
            b.swap(col, self.pivots[col]);
            let bc = b[col];
            for row in (col + 1)..n {
                b[row] -= self.lu[(row, col)] * bc;
            }
        }
        for col in (0..n).rev() {
            b[col] /= self.lu[(col, col)];
            let bc = b[col];
            for row in 0..col {
                b[row] -= self.lu[(row, col)] * bc;
            }
        }
    }
}

fn norm2<S: Real>(v: &[Cplx<S>]) -> S {
    v.iter()
        .fold(S::zero(), |acc, z| acc + z.norm_sqr())
        .sqrt()
}

/// Inverse-iteration eigenvector for an eigenvalue estimate; returns the
/// phase-fixed, M-normalized vector and its relative residual
/// `||K U - lambda M U||_2 / (||K||_F ||U||_2)`.
pub(crate) fn inverse_iteration_raw<S: Real>(
    k: &Matrix<S>,
    m: &Matrix<S>,
    lambda: Cplx<S>,
) -> (Vec<Cplx<S>>, S) {
    let n = k.rows();
    let shifted = Matrix::from_fn(n, n, |i, j| Cplx::new(k[(i, j)], S::zero()) - lambda.scale(m[(i, j)]));
    let lu = lu_factor(shifted);
    let k_norm = k.frobenius_norm().max(S::min_positive_value());

    let mut rng = ChaCha8Rng::seed_from_u64(START_SEED);
    let mut v: Vec<Cplx<S>> = (0..n)
        .map(|_| Cplx::new(S::lit(rng.gen_range(-1.0..1.0)), S::zero()))
        .collect();
    let nv = norm2(&v);
    v.iter_mut().for_each(|z| *z = z.unscale(nv));

    let tol = residual_tolerance::<S>();
    let mut residual = S::infinity();
    for _ in 0..MAX_SWEEPS {
        let mut w = v.clone();
        lu.solve_in_place(&mut w);
        let nw = norm2(&w);
        if !nw.is_finite() || nw == S::zero() {
            break;
        }
        w.iter_mut().for_each(|z| *z = z.unscale(nw));
        v = w;
        // residual of the normalized iterate
        let kv = k.matvec_complex(&v);
        let mv = m.matvec_complex(&v);
        let mut r2 = S::zero();
        for i in 0..n {
            r2 += (kv[i] - lambda * mv[i]).norm_sqr();
        }
        residual = r2.sqrt() / k_norm;
        if residual <= tol * S::lit(0.01) {
            break;
        }
    }

    // M-normalize, then rotate the largest-modulus entry onto the
    // positive real axis
    let mv = m.matvec_complex(&v);
    let mut mnorm2 = S::zero();
    for i in 0..n {
        mnorm2 += (v[i].conj() * mv[i]).re;
    }
    let mnorm = mnorm2.max(S::zero()).sqrt().max(S::min_positive_value());
    v.iter_mut().for_each(|z| *z = z.unscale(mnorm));
    let mut top = Cplx::new(S::zero(), S::zero());
    for z in &v {
        if z.norm_sqr() > top.norm_sqr() {
            top = *z;
        }
    }
    if top.norm_sqr() > S::zero() {
        let phase = top.unscale(top.norm());
        let rot = phase.conj();
        v.iter_mut().for_each(|z| *z *= rot);
    }
    (v, residual)
}

/// Public contract: errors when the residual stays above threshold after
/// the iteration cap (eigenvalue possibly defective or clustered).
pub fn eigenvector_inverse_iteration<S: Real>(
    k: &Matrix<S>,
    m: &Matrix<S>,
    lambda: Cplx<S>,
) -> Result<(Vec<Cplx<S>>, S)> {
    let (v, residual) = inverse_iteration_raw(k, m, lambda);
    if residual > residual_tolerance::<S>() {
        return Err(Error::ResidualTooLarge {
            residual: residual.as_f64(),
            re: lambda.re.as_f64(),
            im: lambda.im.as_f64(),
        });
    }
    Ok((v, residual))
}
