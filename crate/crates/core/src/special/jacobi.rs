//! Gauss-Jacobi quadrature on (0,1) with weight `t^p`, built by the
//! Golub-Welsch method: eigenvalues of the symmetric recurrence matrix
//! give the nodes, squared first eigenvector components the weights.

use std::any::{Any, TypeId};
use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use crate::{Error, Real, Result};

/// Quadrature rule integrating `t^p * q(t)` over (0,1) exactly for
/// polynomials `q` of degree <= 2n-1.
#[derive(Debug, Clone, PartialEq)]
pub struct JacobiRule<S> {
    exponent: S,
    nodes: Vec<S>,
    weights: Vec<S>,
}

impl<S: Real> JacobiRule<S> {
    #[inline]
    pub fn exponent(&self) -> S {
        self.exponent
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    #[inline]
    pub fn nodes(&self) -> &[S] {
        &self.nodes
    }

    #[inline]
    pub fn weights(&self) -> &[S] {
        &self.weights
    }

    /// Approximates `∫_0^1 t^p f(t) dt`.
    pub fn integrate(&self, mut f: impl FnMut(S) -> S) -> S {
        self.nodes
            .iter()
            .zip(&self.weights)
            .fold(S::zero(), |acc, (&t, &w)| acc + w * f(t))
    }
}

/// Builds the n-point Gauss-Jacobi rule for weight `t^p` on (0,1).
///
/// `p` must lie in (-1, 2) and `n >= 1`.
pub fn gauss_jacobi<S: Real>(p: S, n: usize) -> Result<JacobiRule<S>> {
    if !(p > S::lit(-1.0) && p < S::lit(2.0)) || !p.is_finite() {
        return Err(Error::Domain(format!(
            "jacobi exponent {p} outside (-1, 2)"
        )));
    }
    if n == 0 {
        return Err(Error::Domain("jacobi order must be at least 1".into()));
    }

    // Recurrence coefficients of the (0, p) Jacobi polynomials on (-1, 1),
    // i.e. weight (1+x)^p; the interval is mapped to (0,1) afterwards.
    let one = S::one();
    let two = S::lit(2.0);
    let mut diag = vec![S::zero(); n];
    let mut off = vec![S::zero(); n]; // off[i] couples i-1 and i, off[0] unused
    diag[0] = p / (two + p);
    for k in 1..n {
        let kf = S::lit(k as f64);
        let denom = two * kf + p;
        diag[k] = p * p / (denom * (denom + two));
        off[k] = two * kf * (kf + p) / (denom * (denom * denom - one).sqrt());
    }

    let mut first = vec![S::zero(); n];
    first[0] = one;
    tridiag_eigen(&mut diag, &mut off, &mut first)?;

    let mu0 = one / (p + one);
    let half = S::lit(0.5);
    let mut pairs: Vec<(S, S)> = diag
        .iter()
        .zip(&first)
        .map(|(&x, &z)| (half * (one + x), mu0 * z * z))
        .collect();
    pairs.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("finite nodes"));

    let (nodes, weights) = pairs.into_iter().unzip();
    Ok(JacobiRule {
        exponent: p,
        nodes,
        weights,
    })
}

/// Implicit-shift QL iteration for a symmetric tridiagonal matrix,
/// accumulating only the first row of the eigenvector matrix (all that
/// Golub-Welsch needs for the weights).
fn tridiag_eigen<S: Real>(d: &mut [S], e: &mut [S], z: &mut [S]) -> Result<()> {
    let n = d.len();
    if n == 1 {
        return Ok(());
    }
    // shift the off-diagonal so e[i] couples i and i+1
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = S::zero();
    let eps = S::epsilon();

    for l in 0..n {
        let mut iter = 0usize;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= eps * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 50 {
                return Err(Error::Accuracy {
                    context: "tridiagonal QL iteration".into(),
                    last: d[l].as_f64(),
                    previous: e[l].as_f64(),
                });
            }
            let two = S::lit(2.0);
            let mut g = (d[l + 1] - d[l]) / (two * e[l]);
            let mut r = g.hypot(S::one());
            let denom = g + if g >= S::zero() { r.abs() } else { -r.abs() };
            g = d[m] - d[l] + e[l] / denom;
            let (mut s, mut c) = (S::one(), S::one());
            let mut p = S::zero();
            let mut underflow = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let mut f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == S::zero() {
                    d[i + 1] -= p;
                    e[m] = S::zero();
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + two * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                f = z[i + 1];
                z[i + 1] = s * z[i] + c * f;
                z[i] = c * z[i] - s * f;
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = S::zero();
        }
    }
    Ok(())
}

type CacheMap = HashMap<(TypeId, u64, u32), Arc<dyn Any + Send + Sync>>;

static RULE_CACHE: OnceLock<RwLock<CacheMap>> = OnceLock::new();

/// Shared rule cache keyed by (scalar type, exponent bits, order).
///
/// Safe under concurrent read/insert; a rule may be built twice under
/// contention, which is acceptable.
pub(crate) fn cached_rule<S: Real>(p: S, n: u32) -> Result<Arc<JacobiRule<S>>> {
    let key = (TypeId::of::<S>(), p.as_f64().to_bits(), n);
    let cache = RULE_CACHE.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(hit) = cache.read().expect("rule cache poisoned").get(&key) {
        return Ok(hit
            .clone()
            .downcast::<JacobiRule<S>>()
            .expect("cache entry type"));
    }
    let rule = Arc::new(gauss_jacobi(p, n as usize)?);
    cache
        .write()
        .expect("rule cache poisoned")
        .insert(key, rule.clone());
    Ok(rule)
}
