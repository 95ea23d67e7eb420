//! Dense nonsymmetric eigenvalues: Householder reduction to upper
//! Hessenberg form followed by the implicit double-shift QR iteration
//! with deflation, after the classic EISPACK/Handbook routines.
//! Eigenvalues only; eigenvectors come from inverse iteration on the
//! original pencil.

use crate::{Cplx, Error, Matrix, Real, Result};

/// Eigenvalues of a real square matrix, in deflation order.
///
/// The sweep budget is 30 n; exceeding it reports the still-active block.
pub fn eig_nonsymmetric<S: Real>(c: &Matrix<S>) -> Result<Vec<Cplx<S>>> {
    assert!(c.is_square());
    let n = c.rows();
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut h = c.clone();
    hessenberg(&mut h);
    francis(&mut h)
}

/// In-place Householder reduction to upper Hessenberg form (no
/// similarity accumulation).
fn hessenberg<S: Real>(h: &mut Matrix<S>) {
    let n = h.rows();
    if n < 3 {
        return;
    }
    let mut ort = vec![S::zero(); n];
    for m in 1..(n - 1) {
        let mut scale = S::zero();
        for i in m..n {
            scale += h[(i, m - 1)].abs();
        }
        if scale == S::zero() {
            continue;
        }
        let mut sigma = S::zero();
        for i in (m..n).rev() {
            ort[i] = h[(i, m - 1)] / scale;
            sigma += ort[i] * ort[i];
        }
        let mut g = sigma.sqrt();
        if ort[m] > S::zero() {
            g = -g;
        }
        let hh = sigma - ort[m] * g;
        ort[m] -= g;

        // (I - u u^T / hh) H
        for j in m..n {
            let mut f = S::zero();
            for i in (m..n).rev() {
                f += ort[i] * h[(i, j)];
            }
            f /= hh;
            for i in m..n {
                h[(i, j)] -= f * ort[i];
            }
        }
        // H (I - u u^T / hh)
        for i in 0..n {
            let mut f = S::zero();
            for j in (m..n).rev() {
                f += ort[j] * h[(i, j)];
            }
            f /= hh;
            for j in m..n {
                h[(i, j)] -= f * ort[j];
            }
        }
        h[(m, m - 1)] = scale * g;
        for i in (m + 1)..n {
            h[(i, m - 1)] = S::zero();
        }
    }
}

/// Implicit double-shift QR on an upper Hessenberg matrix; returns all
/// eigenvalues, complex conjugate pairs from the 2x2 deflated blocks.
fn francis<S: Real>(h: &mut Matrix<S>) -> Result<Vec<Cplx<S>>> {
    let nn = h.rows();
    let mut eigs = vec![Cplx::new(S::zero(), S::zero()); nn];
    let eps = S::epsilon();
    let zero = S::zero();
    let two = S::lit(2.0);

    let mut norm = S::zero();
    for i in 0..nn {
        for j in i.saturating_sub(1)..nn {
            norm += h[(i, j)].abs();
        }
    }
    if norm == zero {
        return Ok(eigs);
    }

    let sweep_budget = 30 * nn;
    let mut sweeps = 0usize;
    let mut exshift = zero;
    let mut iter = 0usize;
    let mut last = nn - 1;

    loop {
        // look for a negligible subdiagonal element
        let mut l = last;
        while l > 0 {
            let mut s = h[(l - 1, l - 1)].abs() + h[(l, l)].abs();
            if s == zero {
                s = norm;
            }
            if h[(l, l - 1)].abs() < eps * s {
                break;
            }
            l -= 1;
        }

        if l == last {
            // one root found
            eigs[last] = Cplx::new(h[(last, last)] + exshift, zero);
            if last == 0 {
                break;
            }
            last -= 1;
            iter = 0;
        } else if l + 1 == last {
            // two roots from the trailing 2x2 block
            let w = h[(last, last - 1)] * h[(last - 1, last)];
            let p = (h[(last - 1, last - 1)] - h[(last, last)]) / two;
            let q = p * p + w;
            let z = q.abs().sqrt();
            let x = h[(last, last)] + exshift;
            if q >= zero {
                // real pair
                let z = if p >= zero { p + z } else { p - z };
                let lam1 = x + z;
                let lam2 = if z != zero { x - w / z } else { lam1 };
                eigs[last - 1] = Cplx::new(lam1, zero);
                eigs[last] = Cplx::new(lam2, zero);
            } else {
                // complex conjugate pair
                eigs[last - 1] = Cplx::new(x + p, z);
                eigs[last] = Cplx::new(x + p, -z);
            }
            if last < 2 {
                break;
            }
            last -= 2;
            iter = 0;
        } else {
            // no convergence yet: form the shift and sweep
            sweeps += 1;
            if sweeps > sweep_budget {
                return Err(Error::EigNonConvergence {
                    blocks: (l..=last).collect(),
                });
            }
            let mut x = h[(last, last)];
            let mut y = h[(last - 1, last - 1)];
            let mut w = h[(last, last - 1)] * h[(last - 1, last)];

            if iter == 10 {
                // exceptional ad hoc shift
                exshift += x;
                for i in l..=last {
                    h[(i, i)] -= x;
                }
                let s = h[(last, last - 1)].abs() + h[(last - 1, last - 2)].abs();
                x = S::lit(0.75) * s;
                y = x;
                w = S::lit(-0.4375) * s * s;
            }
            if iter == 20 {
                // second exceptional shift
                let mut s = (y - x) / two;
                s = s * s + w;
                if s > zero {
                    let mut sq = s.sqrt();
                    if y < x {
                        sq = -sq;
                    }
                    let shift = x - w / ((y - x) / two + sq);
                    for i in l..=last {
                        h[(i, i)] -= shift;
                    }
                    exshift += shift;
                    x = S::lit(0.964);
                    y = x;
                    w = x;
                }
            }
            iter += 1;

            // two consecutive small subdiagonals
            let mut m = last - 2;
            let (mut p, mut q, mut r);
            loop {
                let z = h[(m, m)];
                let rr = x - z;
                let ss = y - z;
                p = (rr * ss - w) / h[(m + 1, m)] + h[(m, m + 1)];
                q = h[(m + 1, m + 1)] - z - rr - ss;
                r = h[(m + 2, m + 1)];
                let s = p.abs() + q.abs() + r.abs();
                p /= s;
                q /= s;
                r /= s;
                if m == l {
                    break;
                }
                let lhs = h[(m, m - 1)].abs() * (q.abs() + r.abs());
                let rhs = eps
                    * p.abs()
                    * (h[(m - 1, m - 1)].abs() + z.abs() + h[(m + 1, m + 1)].abs());
                if lhs < rhs {
                    break;
                }
                m -= 1;
            }
            for i in (m + 2)..=last {
                h[(i, i - 2)] = zero;
                if i > m + 2 {
                    h[(i, i - 3)] = zero;
                }
            }

            // double QR sweep over rows m..=last
            for k in m..last {
                let notlast = k != last - 1;
                let mut x_loc = zero;
                if k != m {
                    p = h[(k, k - 1)];
                    q = h[(k + 1, k - 1)];
                    r = if notlast { h[(k + 2, k - 1)] } else { zero };
                    x_loc = p.abs() + q.abs() + r.abs();
                    if x_loc == zero {
                        continue;
                    }
                    p /= x_loc;
                    q /= x_loc;
                    r /= x_loc;
                }
                let mut s = (p * p + q * q + r * r).sqrt();
                if p < zero {
                    s = -s;
                }
                if s == zero {
                    continue;
                }
                if k != m {
                    h[(k, k - 1)] = -s * x_loc;
                } else if l != m {
                    h[(k, k - 1)] = -h[(k, k - 1)];
                }
                p += s;
                let px = p / s;
                let py = q / s;
                let pz = r / s;
                q /= p;
                r /= p;

                for j in k..nn {
                    let mut f = h[(k, j)] + q * h[(k + 1, j)];
                    if notlast {
                        f += r * h[(k + 2, j)];
                        h[(k + 2, j)] -= f * pz;
                    }
                    h[(k, j)] -= f * px;
                    h[(k + 1, j)] -= f * py;
                }
                let top = last.min(k + 3);
                for i in 0..=top {
                    let mut f = px * h[(i, k)] + py * h[(i, k + 1)];
                    if notlast {
                        f += pz * h[(i, k + 2)];
                        h[(i, k + 2)] -= f * r;
                    }
                    h[(i, k)] -= f;
                    h[(i, k + 1)] -= f * q;
                }
            }
        }
    }
    Ok(eigs)
}
