//! Uniform grid on a bounded interval.

use crate::{Error, Real, Result};

/// Uniform mesh on (a, b) with N elements and nodes `x_j = a + j h`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mesh<S> {
    a: S,
    b: S,
    elements: usize,
    h: S,
}

impl<S: Real> Mesh<S> {
    pub fn new(a: S, b: S, elements: usize) -> Result<Self> {
        if !(a < b) || !a.is_finite() || !b.is_finite() {
            return Err(Error::Domain(format!("invalid interval ({a}, {b})")));
        }
        if elements < 2 {
            return Err(Error::Domain(format!(
                "mesh needs at least 2 elements, got {elements}"
            )));
        }
        let h = (b - a) / S::lit(elements as f64);
        Ok(Self { a, b, elements, h })
    }

    #[inline]
    pub fn a(&self) -> S {
        self.a
    }

    #[inline]
    pub fn b(&self) -> S {
        self.b
    }

    #[inline]
    pub fn h(&self) -> S {
        self.h
    }

    /// Number of elements N.
    #[inline]
    pub fn elements(&self) -> usize {
        self.elements
    }

    /// Number of nodes, N + 1.
    #[inline]
    pub fn node_count(&self) -> usize {
        self.elements + 1
    }

    /// Number of interior nodes, N - 1 (the FEM problem dimension).
    #[inline]
    pub fn interior_count(&self) -> usize {
        self.elements - 1
    }

    /// Node coordinate `x_j = a + j h`, `j = 0..=N`.
    #[inline]
    pub fn node(&self, j: usize) -> S {
        debug_assert!(j <= self.elements);
        if j == self.elements {
            self.b
        } else {
            self.a + S::lit(j as f64) * self.h
        }
    }

    pub fn nodes(&self) -> impl Iterator<Item = S> + '_ {
        (0..self.node_count()).map(move |j| self.node(j))
    }
}
