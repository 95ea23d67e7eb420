//! Power-ramp sums and their exact Riemann-Liouville calculus.

use crate::special::{gamma, kernel_value};
use crate::{Error, Real, Result};

use super::Mesh;

/// Which truncated power a term uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// `c (x - node)_+^p`
    Left,
    /// `c (node - x)_+^p`
    Right,
}

/// One truncated-power term.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RampTerm<S> {
    pub coeff: S,
    pub node: S,
    pub exponent: S,
}

/// Finite sum of truncated powers, all on the same side; closed under
/// Riemann-Liouville differentiation and integration.
#[derive(Debug, Clone, PartialEq)]
pub struct RampSum<S> {
    side: Side,
    terms: Vec<RampTerm<S>>,
}

impl<S: Real> RampSum<S> {
    pub fn new(side: Side, terms: Vec<RampTerm<S>>) -> Result<Self> {
        for t in &terms {
            if !(t.exponent > S::lit(-1.0)) {
                return Err(Error::Domain(format!(
                    "ramp exponent {} not > -1",
                    t.exponent
                )));
            }
            if !t.coeff.is_finite() || !t.node.is_finite() {
                return Err(Error::Domain("non-finite ramp term".into()));
            }
        }
        Ok(Self { side, terms })
    }

    #[inline]
    pub fn side(&self) -> Side {
        self.side
    }

    #[inline]
    pub fn terms(&self) -> &[RampTerm<S>] {
        &self.terms
    }

    /// Point evaluation; the truncated power is taken as zero at and
    /// below its node (half-open support), so exponent-0 terms are
    /// right-continuous steps.
    pub fn eval(&self, x: S) -> S {
        let mut acc = S::zero();
        for t in &self.terms {
            let dx = match self.side {
                Side::Left => x - t.node,
                Side::Right => t.node - x,
            };
            if dx > S::zero() {
                acc += t.coeff * dx.powf(t.exponent);
            }
        }
        acc
    }

    /// Appends `scale` times another ramp sum of the same side.
    pub fn accumulate(&mut self, other: &RampSum<S>, scale: S) -> Result<()> {
        if other.side != self.side {
            return Err(Error::Domain(
                "cannot combine ramp sums of different sides".into(),
            ));
        }
        self.terms.extend(other.terms.iter().map(|t| RampTerm {
            coeff: scale * t.coeff,
            ..*t
        }));
        Ok(())
    }
}

/// Right-side ramp representation of the interior hat function `phi_j`.
pub fn hat_ramps<S: Real>(mesh: &Mesh<S>, j: usize) -> Result<RampSum<S>> {
    check_interior(mesh, j)?;
    let w = S::one() / mesh.h();
    RampSum::new(
        Side::Right,
        vec![
            RampTerm { coeff: w, node: mesh.node(j + 1), exponent: S::one() },
            RampTerm { coeff: -S::lit(2.0) * w, node: mesh.node(j), exponent: S::one() },
            RampTerm { coeff: w, node: mesh.node(j - 1), exponent: S::one() },
        ],
    )
}

/// Left-side mirror representation of the same hat.
pub fn hat_ramps_left<S: Real>(mesh: &Mesh<S>, j: usize) -> Result<RampSum<S>> {
    check_interior(mesh, j)?;
    let w = S::one() / mesh.h();
    RampSum::new(
        Side::Left,
        vec![
            RampTerm { coeff: w, node: mesh.node(j - 1), exponent: S::one() },
            RampTerm { coeff: -S::lit(2.0) * w, node: mesh.node(j), exponent: S::one() },
            RampTerm { coeff: w, node: mesh.node(j + 1), exponent: S::one() },
        ],
    )
}

fn check_interior<S: Real>(mesh: &Mesh<S>, j: usize) -> Result<()> {
    if j == 0 || j >= mesh.elements() {
        return Err(Error::Domain(format!(
            "hat index {j} not interior (1..{})",
            mesh.elements() - 1
        )));
    }
    Ok(())
}

/// Riemann-Liouville derivative of order `t ∈ [0, 1.5)` on the ramp's
/// own side: term-wise `(c, node, p) -> (c Γ(p+1)/Γ(p+1-t), node, p-t)`.
pub fn rl_derivative<S: Real>(f: &RampSum<S>, t: S) -> Result<RampSum<S>> {
    if !(t >= S::zero() && t < S::lit(1.5)) {
        return Err(Error::Domain(format!("derivative order {t} outside [0, 1.5)")));
    }
    if t == S::zero() {
        return Ok(f.clone());
    }
    let terms = f
        .terms
        .iter()
        .map(|term| {
            let p = term.exponent;
            if !(p - t > S::lit(-1.0)) {
                return Err(Error::Domain(format!(
                    "derivative of order {t} drops exponent {p} to {} <= -1",
                    p - t
                )));
            }
            Ok(RampTerm {
                coeff: term.coeff * gamma(p + S::one())? / gamma(p + S::one() - t)?,
                node: term.node,
                exponent: p - t,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    RampSum::new(f.side, terms)
}

/// Riemann-Liouville integral of order `t > 0` on the ramp's own side:
/// term-wise `(c, node, p) -> (c Γ(p+1)/Γ(p+1+t), node, p+t)`.
pub fn rl_integral<S: Real>(f: &RampSum<S>, t: S) -> Result<RampSum<S>> {
    if !(t > S::zero()) {
        return Err(Error::Domain(format!("integral order {t} not positive")));
    }
    let terms = f
        .terms
        .iter()
        .map(|term| {
            let p = term.exponent;
            Ok(RampTerm {
                coeff: term.coeff * gamma(p + S::one())? / gamma(p + S::one() + t)?,
                node: term.node,
                exponent: p + t,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    RampSum::new(f.side, terms)
}

/// Exact `∫_a^b f g dx` for two ramp sums on the same side.
///
/// Each term pair reduces to the kernel primitive after substituting the
/// distance to the nearer support edge: right side pairs use
/// `X = min(node_i, node_j) - a`, left side `X = b - max(node_i, node_j)`,
/// in both cases `d = |node_i - node_j|`.
pub fn l2_inner_ramps<S: Real>(f: &RampSum<S>, g: &RampSum<S>, mesh: &Mesh<S>) -> Result<S> {
    if f.side != g.side {
        return Err(Error::Domain(
            "inner product needs ramp sums on the same side".into(),
        ));
    }
    let half = S::lit(-0.5);
    for t in f.terms.iter().chain(&g.terms) {
        if !(t.exponent > half) {
            return Err(Error::Domain(format!(
                "exponent {} <= -1/2 makes the product non-integrable",
                t.exponent
            )));
        }
    }
    let mut acc = S::zero();
    for ti in &f.terms {
        for tj in &g.terms {
            let (near, far) = match f.side {
                // support reaches from the node down to a
                Side::Right => {
                    if ti.node <= tj.node {
                        (ti, tj)
                    } else {
                        (tj, ti)
                    }
                }
                // support reaches from the node up to b
                Side::Left => {
                    if ti.node >= tj.node {
                        (ti, tj)
                    } else {
                        (tj, ti)
                    }
                }
            };
            let x = match f.side {
                Side::Right => near.node - mesh.a(),
                Side::Left => mesh.b() - near.node,
            };
            if x <= S::zero() {
                continue;
            }
            let d = (ti.node - tj.node).abs();
            acc += ti.coeff
                    * tj.coeff
                    * kernel_value(near.exponent, far.exponent, x, d)?;
        }
    }
    Ok(acc)
}
