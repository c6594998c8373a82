//! Small dense real linear algebra: one-sided Jacobi SVD, kernels,
//! orthonormal bases and principal angles.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Index, IndexMut};

use crate::math;

/// Row-major real matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct DMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl DMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![0.0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for k in 0..n {
            m[(k, k)] = 1.0;
        }
        m
    }

    /// Matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_columns(rows: usize, columns: &[Vec<f64>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "DMatrix::from_columns: ragged input");
            for (i, x) in c.iter().enumerate() {
                m[(i, j)] = *x;
            }
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn columns(&self) -> Vec<Vec<f64>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "DMatrix::matmul shape mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0.0 {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i * other.cols + j] += a * other.data[k * other.cols + j];
                }
            }
        }
        out
    }

    pub fn matvec(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(self.cols, v.len(), "DMatrix::matvec shape mismatch");
        (0..self.rows)
            .map(|i| self.data[i * self.cols..(i + 1) * self.cols].iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect() }
    }
}

impl Index<(usize, usize)> for DMatrix {
    type Output = f64;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for DMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.cols + j]
    }
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm(a: &[f64]) -> f64 {
    math::sqrt(dot(a, a))
}

/// Thin singular value decomposition `A = U diag(s) Vᵀ`.
///
/// `u` is `rows × cols`, `v` is `cols × cols` orthogonal, `s` has `cols`
/// entries sorted in decreasing order. Columns of `u` for zero singular
/// values are zero.
#[derive(Clone, Debug)]
pub struct Svd {
    pub u: DMatrix,
    pub s: Vec<f64>,
    pub v: DMatrix,
}

/// One-sided Jacobi (Hestenes) SVD.
#[allow(clippy::needless_range_loop)] // rotations update two rows in lockstep
pub fn svd(a: &DMatrix) -> Svd {
    let (m, n) = (a.rows, a.cols);
    // Work on columns: store Aᵀ rows for contiguous access.
    let mut w: Vec<Vec<f64>> = a.columns();
    let mut v: Vec<Vec<f64>> = (0..n).map(|j| (0..n).map(|i| if i == j { 1.0 } else { 0.0 }).collect()).collect();
    let eps = 1e-15;
    for _sweep in 0..80 {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let alpha = dot(&w[p], &w[p]);
                let beta = dot(&w[q], &w[q]);
                let gamma = dot(&w[p], &w[q]);
                if gamma == 0.0 || gamma.abs() <= eps * math::sqrt(alpha * beta) {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * gamma);
                let t = zeta.signum() / (zeta.abs() + math::sqrt(1.0 + zeta * zeta));
                let c = 1.0 / math::sqrt(1.0 + t * t);
                let s = c * t;
                for i in 0..m {
                    let (x, y) = (w[p][i], w[q][i]);
                    w[p][i] = c * x - s * y;
                    w[q][i] = s * x + c * y;
                }
                for i in 0..n {
                    let (x, y) = (v[p][i], v[q][i]);
                    v[p][i] = c * x - s * y;
                    v[q][i] = s * x + c * y;
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    let norms: Vec<f64> = w.iter().map(|c| norm(c)).collect();
    order.sort_by(|&i, &j| norms[j].total_cmp(&norms[i]).then(i.cmp(&j)));
    let mut u = DMatrix::zeros(m, n);
    let mut vm = DMatrix::zeros(n, n);
    let mut s = Vec::with_capacity(n);
    for (k, &j) in order.iter().enumerate() {
        let sj = norms[j];
        s.push(sj);
        if sj > 0.0 {
            for i in 0..m {
                u[(i, k)] = w[j][i] / sj;
            }
        }
        for i in 0..n {
            vm[(i, k)] = v[j][i];
        }
    }
    Svd { u, s, v: vm }
}

/// Orthonormal basis (as columns) of the right kernel of `a`: right singular
/// vectors with `σ ≤ threshold`.
pub fn kernel_abs(a: &DMatrix, threshold: f64) -> DMatrix {
    let d = svd(a);
    let cols: Vec<Vec<f64>> = (0..a.cols).filter(|&k| d.s[k] <= threshold).map(|k| d.v.column(k)).collect();
    DMatrix::from_columns(a.cols, &cols)
}

/// Kernel with threshold `relative · σ_max`.
pub fn kernel_rel(a: &DMatrix, relative: f64) -> DMatrix {
    let d = svd(a);
    let smax = d.s.first().copied().unwrap_or(0.0);
    let cols: Vec<Vec<f64>> = (0..a.cols).filter(|&k| d.s[k] <= relative * smax).map(|k| d.v.column(k)).collect();
    DMatrix::from_columns(a.cols, &cols)
}

/// Orthonormal basis (as columns) of the column space of `a`, dropping
/// singular values below `relative · σ_max` (and all of them when the matrix
/// vanishes).
pub fn orth(a: &DMatrix, relative: f64) -> DMatrix {
    let d = svd(a);
    let smax = d.s.first().copied().unwrap_or(0.0);
    let cols: Vec<Vec<f64>> =
        (0..a.cols).filter(|&k| d.s[k] > relative * smax && d.s[k] > 0.0).map(|k| d.u.column(k)).collect();
    DMatrix::from_columns(a.rows, &cols)
}

/// Principal angles between the column spans of two matrices with
/// orthonormal columns, in increasing order. Returns `min(k1, k2)` angles.
///
/// Cosines come from `σ(Q1ᵀQ2)`, sines from `σ((I − Q1Q1ᵀ)Q2)` with `Q2` the
/// smaller basis, combined through `atan2` so small angles keep full
/// relative accuracy.
pub fn principal_angles(q1: &DMatrix, q2: &DMatrix) -> Vec<f64> {
    let (big, small) = if q1.cols >= q2.cols { (q1, q2) } else { (q2, q1) };
    let k = small.cols;
    if k == 0 {
        return Vec::new();
    }
    let cross = big.transpose().matmul(small);
    let mut cosines = svd(&cross).s;
    let proj = big.matmul(&cross);
    let resid = small.sub(&proj);
    let mut sines = svd(&resid).s;
    cosines.sort_by(|a, b| b.total_cmp(a));
    sines.sort_by(|a, b| a.total_cmp(b));
    let mut angles: Vec<f64> =
        cosines.iter().zip(&sines).map(|(c, s)| math::atan2(s.clamp(0.0, 1.0), c.clamp(0.0, 1.0))).collect();
    angles.sort_by(|a, b| a.total_cmp(b));
    angles
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::{normal, sample_rng};

    fn random(rows: usize, cols: usize, seed: u64) -> DMatrix {
        let mut rng = sample_rng(seed, 0);
        DMatrix::from_fn(rows, cols, |_, _| normal(&mut rng))
    }

    #[test]
    fn svd_reconstructs() {
        for (r, c) in [(5, 3), (3, 5), (6, 6)] {
            let a = random(r, c, (r * 10 + c) as u64);
            let d = svd(&a);
            let us = DMatrix::from_fn(r, c, |i, j| d.u[(i, j)] * d.s[j]);
            let back = us.matmul(&d.v.transpose());
            assert!(back.sub(&a).max_abs() < 1e-12);
            assert!(d.s.windows(2).all(|w| w[0] >= w[1]));
            let vtv = d.v.transpose().matmul(&d.v);
            assert!(vtv.sub(&DMatrix::identity(c)).max_abs() < 1e-12);
        }
    }

    #[test]
    fn kernel_of_rank_deficient() {
        // Rank 2 matrix in R^{4x4}.
        let b = random(4, 2, 7);
        let a = b.matmul(&b.transpose());
        let k = kernel_rel(&a, 1e-10);
        assert_eq!(k.cols(), 2);
        assert!(a.matmul(&k).max_abs() < 1e-12);
        assert_eq!(orth(&a, 1e-10).cols(), 2);
    }

    #[test]
    fn principal_angles_known() {
        // span{e1} vs span{cos θ e1 + sin θ e2}.
        let th = 0.3;
        let q1 = DMatrix::from_columns(3, &[vec![1.0, 0.0, 0.0]]);
        let q2 = DMatrix::from_columns(3, &[vec![math::cos(th), math::sin(th), 0.0]]);
        let a = principal_angles(&q1, &q2);
        assert!((a[0] - th).abs() < 1e-15);
        let tiny = 1e-9;
        let q3 = DMatrix::from_columns(3, &[vec![math::cos(tiny), 0.0, math::sin(tiny)]]);
        assert!((principal_angles(&q1, &q3)[0] - tiny).abs() < 1e-20);
    }

    #[test]
    fn principal_angles_symmetric() {
        let q1 = orth(&random(6, 3, 1), 1e-12);
        let q2 = orth(&random(6, 2, 2), 1e-12);
        let a = principal_angles(&q1, &q2);
        let b = principal_angles(&q2, &q1);
        assert_eq!(a.len(), 2);
        for (x, y) in a.iter().zip(&b) {
            assert!((x - y).abs() < 1e-14);
            assert!((0.0..=math::PI / 2.0).contains(x));
        }
    }
}
