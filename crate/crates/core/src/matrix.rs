//! Small dense matrix types. Row-major `f64` storage.

use std::fmt;

use crate::error::{Error, Result};

/// Dense real square matrix with no structural guarantees.
#[derive(Debug, Clone, PartialEq)]
pub struct SquareMatrix {
    dim: usize,
    data: Vec<f64>,
}

impl SquareMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![0.0; dim * dim],
        }
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let dim = rows.len();
        let mut m = Self::zeros(dim);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != dim {
                return Err(Error::InvalidArgument(format!(
                    "row {i} has {} entries, expected {dim}",
                    row.len()
                )));
            }
            m.data[i * dim..(i + 1) * dim].copy_from_slice(row);
        }
        Ok(m)
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.dim + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: f64) {
        self.data[i * self.dim + j] = value;
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.dim);
        (0..self.dim)
            .map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        (0..self.dim).map(|i| self.row(i).to_vec()).collect()
    }
}

/// Dense real symmetric matrix. Both triangles are stored and kept
/// bit-identical by every mutating method.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricMatrix {
    inner: SquareMatrix,
}

impl SymmetricMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            inner: SquareMatrix::zeros(dim),
        }
    }

    /// Accepts `m` only if it is exactly symmetric.
    pub fn try_from_square(m: SquareMatrix) -> Result<Self> {
        for i in 0..m.dim() {
            for j in 0..i {
                if m.get(i, j).to_bits() != m.get(j, i).to_bits() {
                    return Err(Error::InvalidArgument(format!(
                        "matrix is not symmetric at ({i}, {j})"
                    )));
                }
            }
        }
        Ok(Self { inner: m })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        Self::try_from_square(SquareMatrix::from_rows(rows)?)
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.inner.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.inner.get(i, j)
    }

    /// Sets entries (i, j) and (j, i).
    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: f64) {
        self.inner.set(i, j, value);
        self.inner.set(j, i, value);
    }

    pub fn row(&self, i: usize) -> &[f64] {
        self.inner.row(i)
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        self.inner.mul_vec(x)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.inner.data.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    pub fn max_abs_diff(&self, other: &SymmetricMatrix) -> f64 {
        assert_eq!(self.dim(), other.dim());
        self.inner
            .data
            .iter()
            .zip(&other.inner.data)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    pub fn as_square(&self) -> &SquareMatrix {
        &self.inner
    }

    pub(crate) fn data(&self) -> &[f64] {
        &self.inner.data
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        self.inner.to_rows()
    }
}

impl std::ops::Add for &SymmetricMatrix {
    type Output = SymmetricMatrix;

    fn add(self, rhs: &SymmetricMatrix) -> SymmetricMatrix {
        assert_eq!(self.dim(), rhs.dim());
        let data = self
            .inner
            .data
            .iter()
            .zip(&rhs.inner.data)
            .map(|(a, b)| a + b)
            .collect();
        SymmetricMatrix {
            inner: SquareMatrix {
                dim: self.dim(),
                data,
            },
        }
    }
}

fn fmt_rows(f: &mut fmt::Formatter<'_>, m: &SquareMatrix) -> fmt::Result {
    for i in 0..m.dim() {
        let row: Vec<String> = m.row(i).iter().map(|v| format!("{v}")).collect();
        writeln!(f, "{}", row.join(" "))?;
    }
    Ok(())
}

impl fmt::Display for SquareMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_rows(f, self)
    }
}

impl fmt::Display for SymmetricMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_rows(f, &self.inner)
    }
}
