//! Complex nodal grid functions and product-integration fractional
//! integrals of grid data.

use crate::{Cplx, Error, Real, Result};

use super::{Mesh, Side};

/// Complex nodal values on a mesh, endpoints included.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction<S> {
    mesh: Mesh<S>,
    values: Vec<Cplx<S>>,
}

impl<S: Real> GridFunction<S> {
    pub fn zeros(mesh: Mesh<S>) -> Self {
        Self {
            values: vec![Cplx::new(S::zero(), S::zero()); mesh.node_count()],
            mesh,
        }
    }

    pub fn from_values(mesh: Mesh<S>, values: Vec<Cplx<S>>) -> Result<Self> {
        if values.len() != mesh.node_count() {
            return Err(Error::Domain(format!(
                "grid function needs {} nodal values, got {}",
                mesh.node_count(),
                values.len()
            )));
        }
        Ok(Self { mesh, values })
    }

    pub fn from_real_fn(mesh: Mesh<S>, f: impl Fn(S) -> S) -> Self {
        let values = mesh
            .nodes()
            .map(|x| Cplx::new(f(x), S::zero()))
            .collect();
        Self { mesh, values }
    }

    #[inline]
    pub fn mesh(&self) -> &Mesh<S> {
        &self.mesh
    }

    #[inline]
    pub fn values(&self) -> &[Cplx<S>] {
        &self.values
    }

    #[inline]
    pub fn values_mut(&mut self) -> &mut [Cplx<S>] {
        &mut self.values
    }

    pub fn max_abs(&self) -> S {
        self.values
            .iter()
            .fold(S::zero(), |acc, v| acc.max(v.norm()))
    }

    /// Trapezoidal inner product `h Σ'' f_j conj(g_j)`.
    pub fn trapezoid_inner(&self, other: &Self) -> Cplx<S> {
        assert_eq!(self.values.len(), other.values.len());
        let n = self.values.len() - 1;
        let mut acc = (self.values[0] * other.values[0].conj()
            + self.values[n] * other.values[n].conj())
            .scale(S::lit(0.5));
        for j in 1..n {
            acc += self.values[j] * other.values[j].conj();
        }
        acc.scale(self.mesh.h())
    }

    pub fn trapezoid_norm(&self) -> S {
        self.trapezoid_inner(self).re.max(S::zero()).sqrt()
    }

    pub fn scale(&mut self, factor: Cplx<S>) {
        for v in &mut self.values {
            *v *= factor;
        }
    }
}

/// Fractional integral of order `t ∈ (0, 2)` of a grid function by
/// product integration: the data is interpolated piecewise-linearly and
/// the kernel moments `∫ (x-τ)^{t-1} {1, τ} dτ` are exact per element.
pub fn rl_integral_grid<S: Real>(
    f: &GridFunction<S>,
    t: S,
    side: Side,
) -> Result<GridFunction<S>> {
    if !(t > S::zero() && t < S::lit(2.0)) {
        return Err(Error::Domain(format!("integral order {t} outside (0, 2)")));
    }
    let mesh = *f.mesh();
    let n = mesh.elements();
    let h = mesh.h();
    let inv_gamma = S::one() / crate::special::gamma(t)?;
    let one = S::one();
    let vals = f.values();
    let mut out = vec![Cplx::new(S::zero(), S::zero()); n + 1];

    // Per element at node distance D = k h from the evaluation node:
    // m0(k) = ∫_{D-h}^{D} r^{t-1} dr, m1(k) = ∫ r^{t-1} (D - r) dr for the
    // left integral (r measured towards the evaluation point).
    let pow = |k: usize, e: S| -> S {
        if k == 0 {
            S::zero()
        } else {
            (S::lit(k as f64) * h).powf(e)
        }
    };
    let m0: Vec<S> = (0..=n)
        .map(|k| {
            if k == 0 {
                S::zero()
            } else {
                (pow(k, t) - pow(k - 1, t)) / t
            }
        })
        .collect();
    let mint: Vec<S> = (0..=n)
        .map(|k| {
            if k == 0 {
                S::zero()
            } else {
                (pow(k, t + one) - pow(k - 1, t + one)) / (t + one)
            }
        })
        .collect();

    match side {
        Side::Left => {
            for j in 1..=n {
                let mut acc = Cplx::new(S::zero(), S::zero());
                for m in 0..j {
                    let k = j - m; // element [x_m, x_{m+1}] at distance D = k h
                    let d = S::lit(k as f64) * h;
                    let m1 = d * m0[k] - mint[k];
                    let slope = (vals[m + 1] - vals[m]).unscale(h);
                    acc += vals[m].scale(m0[k]) + slope.scale(m1);
                }
                out[j] = acc.scale(inv_gamma);
            }
        }
        Side::Right => {
            for j in 0..n {
                let mut acc = Cplx::new(S::zero(), S::zero());
                for m in j..n {
                    let k = m + 1 - j; // element [x_m, x_{m+1}], D = k h
                    let d = S::lit(k as f64) * h;
                    let m1 = mint[k] - (d - h) * m0[k];
                    let slope = (vals[m + 1] - vals[m]).unscale(h);
                    acc += vals[m].scale(m0[k]) + slope.scale(m1);
                }
                out[j] = acc.scale(inv_gamma);
            }
        }
    }
    GridFunction::from_values(mesh, out)
}
