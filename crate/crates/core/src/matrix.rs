//! Dense symmetric integer matrices.
//!
//! These are deliberately plain: factor graphs stay desk-scale, explicit
//! product matrices are capped by a size ceiling, and everything downstream
//! (trace moments, eigensolves) wants predictable dense storage.

use std::fmt;

/// Row-major dense symmetric matrix over `i64`.
///
/// Symmetry is a construction invariant: every constructor either fills both
/// mirror entries or checks them, so `get(i, j) == get(j, i)` always holds.
#[derive(Clone, PartialEq, Eq)]
pub struct IntSymMatrix {
    dim: usize,
    data: Vec<i64>,
}

impl IntSymMatrix {
    pub fn zeros(dim: usize) -> Self {
        IntSymMatrix {
            dim,
            data: vec![0; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = 1;
        }
        m
    }

    /// Builds from an entry function evaluated on `i <= j`; the mirror entry
    /// is filled automatically.
    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> i64) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            for j in i..dim {
                let v = f(i, j);
                m.data[i * dim + j] = v;
                m.data[j * dim + i] = v;
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.dim + j]
    }

    /// Sets the `(i, j)` and `(j, i)` entries.
    pub fn set_sym(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.dim + j] = v;
        self.data[j * self.dim + i] = v;
    }

    pub fn add_assign(&mut self, other: &IntSymMatrix) {
        assert_eq!(self.dim, other.dim, "matrix dimension mismatch");
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += *b;
        }
    }

    pub fn trace(&self) -> i64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    /// Row-major copy as `f64`, for the dense eigensolver.
    pub fn to_f64_vec(&self) -> Vec<f64> {
        self.data.iter().map(|&v| v as f64).collect()
    }

    pub(crate) fn raw(&self) -> &[i64] {
        &self.data
    }
}

impl fmt::Debug for IntSymMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntSymMatrix(dim={})", self.dim)?;
        for i in 0..self.dim {
            let row: Vec<String> = (0..self.dim).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(" "))?;
        }
        Ok(())
    }
}
