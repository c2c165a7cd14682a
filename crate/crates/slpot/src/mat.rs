//! Dense symmetric matrices, stored row-major and symmetrized on entry so
//! downstream spectral code never sees an asymmetric input.

use alloc::vec;
use alloc::vec::Vec;

use crate::math;

/// Errors raised while constructing or combining matrices.
#[derive(Debug, Clone, PartialEq)]
pub enum MatrixError {
    /// An entry was NaN or infinite.
    NonFinite,
    /// Entry count does not match the declared dimension.
    DimensionMismatch { expected: usize, got: usize },
}

impl core::fmt::Display for MatrixError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            MatrixError::NonFinite => write!(f, "matrix entries must be finite"),
            MatrixError::DimensionMismatch { expected, got } => {
                write!(f, "expected {expected} entries, got {got}")
            }
        }
    }
}

/// Symmetric `n x n` matrix. Construction replaces the input by
/// `(M + M^T) / 2`, so the stored data is exactly symmetric.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix {
    n: usize,
    data: Vec<f64>,
}

impl SymMatrix {
    /// Builds from row-major entries, symmetrizing and checking finiteness.
    pub fn new(n: usize, entries: Vec<f64>) -> Result<Self, MatrixError> {
        Ok(Self::with_asymmetry(n, entries)?.0)
    }

    /// Like [`SymMatrix::new`], additionally reporting the largest absolute
    /// difference `|m_ij - m_ji|` seen before symmetrization.
    pub fn with_asymmetry(n: usize, mut entries: Vec<f64>) -> Result<(Self, f64), MatrixError> {
        if entries.len() != n * n {
            return Err(MatrixError::DimensionMismatch {
                expected: n * n,
                got: entries.len(),
            });
        }
        if entries.iter().any(|x| !x.is_finite()) {
            return Err(MatrixError::NonFinite);
        }
        let mut asym = 0.0f64;
        for i in 0..n {
            for j in (i + 1)..n {
                let a = entries[i * n + j];
                let b = entries[j * n + i];
                let d = math::abs(a - b);
                if d > asym {
                    asym = d;
                }
                let avg = 0.5 * (a + b);
                entries[i * n + j] = avg;
                entries[j * n + i] = avg;
            }
        }
        Ok((SymMatrix { n, data: entries }, asym))
    }

    /// Builds from explicit rows.
    pub fn from_rows(rows: &[&[f64]]) -> Result<Self, MatrixError> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(MatrixError::DimensionMismatch {
                    expected: n * n,
                    got: row.len() * n,
                });
            }
            entries.extend_from_slice(row);
        }
        SymMatrix::new(n, entries)
    }

    /// Diagonal matrix with the given entries.
    pub fn diag(d: &[f64]) -> Self {
        let n = d.len();
        let mut data = vec![0.0; n * n];
        for (i, &x) in d.iter().enumerate() {
            data[i * n + i] = x;
        }
        SymMatrix { n, data }
    }

    /// Identity of size `n`.
    pub fn identity(n: usize) -> Self {
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            data[i * n + i] = 1.0;
        }
        SymMatrix { n, data }
    }

    /// Zero matrix of size `n`.
    pub fn zero(n: usize) -> Self {
        SymMatrix {
            n,
            data: vec![0.0; n * n],
        }
    }

    /// Fills entry `(i, j)` from a callback; only the upper triangle is
    /// sampled, the lower is mirrored.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            for j in i..n {
                let v = f(i, j);
                data[i * n + j] = v;
                data[j * n + i] = v;
            }
        }
        SymMatrix { n, data }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    /// Sets both `(i, j)` and `(j, i)`.
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.n + j] = v;
        self.data[j * self.n + i] = v;
    }

    /// Row-major view of the entries.
    pub fn data(&self) -> &[f64] {
        &self.data
    }

    /// Frobenius norm.
    pub fn frob_norm(&self) -> f64 {
        math::sqrt(self.data.iter().map(|x| x * x).sum())
    }

    /// `s * A`.
    pub fn scaled(&self, s: f64) -> Self {
        SymMatrix {
            n: self.n,
            data: self.data.iter().map(|x| s * x).collect(),
        }
    }

    /// `A + s * I`.
    pub fn add_scaled_identity(&self, s: f64) -> Self {
        let mut out = self.clone();
        for i in 0..self.n {
            out.data[i * self.n + i] += s;
        }
        out
    }

    /// `A + B`.
    pub fn add(&self, other: &SymMatrix) -> Result<Self, MatrixError> {
        if self.n != other.n {
            return Err(MatrixError::DimensionMismatch {
                expected: self.n * self.n,
                got: other.n * other.n,
            });
        }
        Ok(SymMatrix {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(other.data.iter())
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    /// Congruence `Q^T A Q` for a square (not necessarily orthogonal) `Q`
    /// given row-major.
    pub fn congruence(&self, q: &[f64]) -> Self {
        let n = self.n;
        debug_assert_eq!(q.len(), n * n);
        let mut aq = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                let mut s = 0.0;
                for k in 0..n {
                    s += self.data[i * n + k] * q[k * n + j];
                }
                aq[i * n + j] = s;
            }
        }
        let mut out = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                let mut s = 0.0;
                for k in 0..n {
                    s += q[k * n + i] * aq[k * n + j];
                }
                out[i * n + j] = s;
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                let avg = 0.5 * (out[i * n + j] + out[j * n + i]);
                out[i * n + j] = avg;
                out[j * n + i] = avg;
            }
        }
        SymMatrix { n, data: out }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construction_symmetrizes() {
        let m = SymMatrix::new(2, vec![1.0, 3.0, 1.0, 2.0]).unwrap();
        assert_eq!(m.get(0, 1), 2.0);
        assert_eq!(m.get(1, 0), 2.0);
    }

    #[test]
    fn asymmetry_is_reported() {
        let (_, asym) = SymMatrix::with_asymmetry(2, vec![1.0, 3.0, 1.0, 2.0]).unwrap();
        assert_eq!(asym, 2.0);
    }

    #[test]
    fn non_finite_entries_are_rejected() {
        assert_eq!(
            SymMatrix::new(2, vec![1.0, f64::NAN, 0.0, 2.0]),
            Err(MatrixError::NonFinite)
        );
        assert_eq!(
            SymMatrix::new(2, vec![1.0, f64::INFINITY, 0.0, 2.0]),
            Err(MatrixError::NonFinite)
        );
    }

    #[test]
    fn dimension_mismatch_is_rejected() {
        assert_eq!(
            SymMatrix::new(3, vec![0.0; 4]),
            Err(MatrixError::DimensionMismatch {
                expected: 9,
                got: 4
            })
        );
    }

    #[test]
    fn frobenius_norm_of_identity() {
        let id = SymMatrix::identity(4);
        assert!((id.frob_norm() - 2.0).abs() < 1e-15);
    }

    #[test]
    fn add_scaled_identity_shifts_diagonal() {
        let a = SymMatrix::diag(&[1.0, 2.0]);
        let b = a.add_scaled_identity(-0.5);
        assert_eq!(b.get(0, 0), 0.5);
        assert_eq!(b.get(1, 1), 1.5);
        assert_eq!(b.get(0, 1), 0.0);
    }

    #[test]
    fn congruence_with_identity_is_noop() {
        let a = SymMatrix::from_rows(&[&[2.0, 1.0], &[1.0, 2.0]]).unwrap();
        let q = [1.0, 0.0, 0.0, 1.0];
        assert_eq!(a.congruence(&q), a);
    }
}
