//! Minimal dense row-major matrix used throughout the solver.

use std::io::{self, Write};
use std::ops::{Index, IndexMut};

use crate::{Cplx, Real};

/// Dense row-major matrix over `T` (real scalar or complex).
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Copy + num_traits::Zero> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn identity(n: usize) -> Self
    where
        T: num_traits::One,
    {
        Self::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [T] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// Splits the storage into disjoint row slices for parallel assembly.
    pub fn par_rows_mut(&mut self) -> impl rayon::iter::IndexedParallelIterator<Item = &mut [T]>
    where
        T: Send,
    {
        use rayon::prelude::*;
        self.data.par_chunks_mut(self.cols)
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &T {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl<S: Real> Matrix<S> {
    pub fn matvec(&self, x: &[S]) -> Vec<S> {
        assert_eq!(x.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(x)
                    .fold(S::zero(), |acc, (&a, &b)| acc + a * b)
            })
            .collect()
    }

    /// y = A x for a complex vector, A real.
    pub fn matvec_complex(&self, x: &[Cplx<S>]) -> Vec<Cplx<S>> {
        assert_eq!(x.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(x)
                    .fold(Cplx::new(S::zero(), S::zero()), |acc, (&a, &b)| {
                        acc + b.scale(a)
                    })
            })
            .collect()
    }

    pub fn frobenius_norm(&self) -> S {
        self.data
            .iter()
            .fold(S::zero(), |acc, &v| acc + v * v)
            .sqrt()
    }

    pub fn max_abs(&self) -> S {
        self.data
            .iter()
            .fold(S::zero(), |acc, &v| acc.max(v.abs()))
    }

    /// Largest relative asymmetry `|a_ij - a_ji| / max|a|`.
    pub fn asymmetry(&self) -> S {
        assert!(self.is_square());
        let scale = self.max_abs().max(S::min_positive_value());
        let mut worst = S::zero();
        for i in 0..self.rows {
            for j in (i + 1)..self.cols {
                worst = worst.max((self[(i, j)] - self[(j, i)]).abs());
            }
        }
        worst / scale
    }

    /// Plain-text dump: one row per line, entries space-separated,
    /// 17 significant digits.
    pub fn write_plain<W: Write>(&self, mut w: W) -> io::Result<()> {
        for i in 0..self.rows {
            let mut first = true;
            for j in 0..self.cols {
                if !first {
                    write!(w, " ")?;
                }
                write!(w, "{:.16e}", self[(i, j)])?;
                first = false;
            }
            writeln!(w)?;
        }
        Ok(())
    }
}
