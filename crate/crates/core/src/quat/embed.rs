//! Complex embedding `q = a + j·b ↦ [[a, −b̄], [b, ā]]` and the Padé
//! matrix exponential on complex matrices.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Index, IndexMut};

use num_complex::Complex64;

use super::{QuatMatrix, Quaternion};
use crate::error::{Error, Result};
use crate::{math, tol};

/// Dense row-major complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![Complex64::new(0.0, 0.0); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for k in 0..n {
            m[(k, k)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn matmul(&self, other: &CMatrix) -> CMatrix {
        assert_eq!(self.cols, other.rows, "CMatrix::matmul shape mismatch");
        let mut out = CMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                let row = &other.data[k * other.cols..(k + 1) * other.cols];
                let dst = &mut out.data[i * other.cols..(i + 1) * other.cols];
                for (d, b) in dst.iter_mut().zip(row) {
                    *d += a * b;
                }
            }
        }
        out
    }

    /// `Σ c_k · M_k`, all of the same shape.
    fn combine(terms: &[(f64, &CMatrix)]) -> CMatrix {
        let (r, c) = (terms[0].1.rows, terms[0].1.cols);
        let mut out = CMatrix::zeros(r, c);
        for (s, m) in terms {
            for (d, x) in out.data.iter_mut().zip(&m.data) {
                *d += x * *s;
            }
        }
        out
    }

    fn add_identity(&mut self, s: f64) {
        for k in 0..self.rows.min(self.cols) {
            self[(k, k)] += s;
        }
    }

    /// Maximum absolute column sum.
    pub fn norm1(&self) -> f64 {
        (0..self.cols).map(|j| (0..self.rows).map(|i| self[(i, j)].norm()).sum::<f64>()).fold(0.0, f64::max)
    }

    pub fn conj_transpose(&self) -> CMatrix {
        let mut out = CMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn max_abs_diff(&self, other: &CMatrix) -> f64 {
        self.data.iter().zip(&other.data).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    /// Solves `self · X = rhs` by LU with partial pivoting.
    pub fn solve(&self, rhs: &CMatrix) -> CMatrix {
        let n = self.rows;
        assert_eq!(n, self.cols);
        assert_eq!(n, rhs.rows);
        let mut a = self.clone();
        let mut b = rhs.clone();
        let m = b.cols;
        for k in 0..n {
            let p = (k..n).max_by(|&i, &j| a[(i, k)].norm().total_cmp(&a[(j, k)].norm())).unwrap_or(k);
            if p != k {
                for j in 0..n {
                    a.data.swap(k * n + j, p * n + j);
                }
                for j in 0..m {
                    b.data.swap(k * m + j, p * m + j);
                }
            }
            let piv = a[(k, k)];
            for i in k + 1..n {
                let f = a[(i, k)] / piv;
                if f == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in k..n {
                    let akj = a[(k, j)];
                    a[(i, j)] -= f * akj;
                }
                for j in 0..m {
                    let bkj = b[(k, j)];
                    b[(i, j)] -= f * bkj;
                }
            }
        }
        for k in (0..n).rev() {
            for j in 0..m {
                let mut s = b[(k, j)];
                for l in k + 1..n {
                    s -= a[(k, l)] * b[(l, j)];
                }
                b[(k, j)] = s / a[(k, k)];
            }
        }
        b
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = Complex64;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.cols + j]
    }
}

/// Complex `2r × 2c` image of an `r × c` quaternionic matrix.
pub fn complex_embed(a: &QuatMatrix) -> CMatrix {
    let mut m = CMatrix::zeros(2 * a.rows(), 2 * a.cols());
    for p in 0..a.rows() {
        for q in 0..a.cols() {
            let e = a[(p, q)];
            let alpha = Complex64::new(e.w, e.x);
            let beta = Complex64::new(e.y, -e.z);
            m[(2 * p, 2 * q)] = alpha;
            m[(2 * p, 2 * q + 1)] = -beta.conj();
            m[(2 * p + 1, 2 * q)] = beta;
            m[(2 * p + 1, 2 * q + 1)] = alpha.conj();
        }
    }
    m
}

/// Inverse of [`complex_embed`]; fails when the block symmetry is violated
/// by more than `1e-10`.
pub fn complex_unembed(m: &CMatrix) -> Result<QuatMatrix> {
    if m.rows() % 2 != 0 || m.cols() % 2 != 0 {
        return Err(Error::ShapeMismatch { op: "complex_unembed", left: (m.rows(), m.cols()), right: (2, 2) });
    }
    let (r, c) = (m.rows() / 2, m.cols() / 2);
    let mut out = QuatMatrix::zeros(r, c);
    let mut defect = 0.0f64;
    for p in 0..r {
        for q in 0..c {
            let alpha = m[(2 * p, 2 * q)];
            let beta = m[(2 * p + 1, 2 * q)];
            defect = defect
                .max((m[(2 * p + 1, 2 * q + 1)] - alpha.conj()).norm())
                .max((m[(2 * p, 2 * q + 1)] + beta.conj()).norm());
            out[(p, q)] = Quaternion::new(alpha.re, alpha.im, beta.re, -beta.im);
        }
    }
    if defect > tol::EMBED_SYMMETRY {
        return Err(Error::NotQuaternionic { defect });
    }
    Ok(out)
}

const PADE13: [f64; 14] = [
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
];

const THETA13: f64 = 5.371920351148152;

/// Matrix exponential by degree-13 Padé approximation with scaling and
/// squaring.
pub fn expm_complex(a: &CMatrix) -> CMatrix {
    let n = a.rows();
    assert_eq!(n, a.cols(), "expm_complex needs a square matrix");
    if n == 0 {
        return a.clone();
    }
    let norm = a.norm1();
    let s = if norm > THETA13 { math::ceil(math::log2(norm / THETA13)).max(0.0) as i32 } else { 0 };
    let scale = 1.0 / libm::pow(2.0, s as f64);
    let a1 = CMatrix::combine(&[(scale, a)]);
    let b = &PADE13;
    let a2 = a1.matmul(&a1);
    let a4 = a2.matmul(&a2);
    let a6 = a4.matmul(&a2);

    let inner_u = CMatrix::combine(&[(b[13], &a6), (b[11], &a4), (b[9], &a2)]);
    let mut tail_u = CMatrix::combine(&[(b[7], &a6), (b[5], &a4), (b[3], &a2)]);
    tail_u.add_identity(b[1]);
    let u_poly = a6.matmul(&inner_u);
    let u = a1.matmul(&CMatrix::combine(&[(1.0, &u_poly), (1.0, &tail_u)]));

    let inner_v = CMatrix::combine(&[(b[12], &a6), (b[10], &a4), (b[8], &a2)]);
    let mut v = a6.matmul(&inner_v);
    v = CMatrix::combine(&[(1.0, &v), (b[6], &a6), (b[4], &a4), (b[2], &a2)]);
    v.add_identity(b[0]);

    let p = CMatrix::combine(&[(1.0, &v), (1.0, &u)]);
    let q = CMatrix::combine(&[(1.0, &v), (-1.0, &u)]);
    let mut r = q.solve(&p);
    for _ in 0..s {
        r = r.matmul(&r);
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::{random_quat_matrix, SampleRng};
    use rand::SeedableRng;

    #[test]
    fn embed_one_and_j() {
        let one = QuatMatrix::from_rows(1, 1, &[Quaternion::ONE]);
        assert_eq!(complex_embed(&one), CMatrix::identity(2));
        let j = QuatMatrix::from_rows(1, 1, &[Quaternion::J]);
        let e = complex_embed(&j);
        let c = |re| Complex64::new(re, 0.0);
        assert_eq!([e[(0, 0)], e[(0, 1)], e[(1, 0)], e[(1, 1)]], [c(0.0), c(-1.0), c(1.0), c(0.0)]);
    }

    #[test]
    fn roundtrip_and_homomorphism() {
        let mut rng = SampleRng::seed_from_u64(3);
        for _ in 0..50 {
            let a = random_quat_matrix(&mut rng, 3, 3);
            let b = random_quat_matrix(&mut rng, 3, 3);
            let back = complex_unembed(&complex_embed(&a)).unwrap();
            assert!(back.max_abs_diff(&a) <= 1e-14);
            let lhs = complex_embed(&(&a * &b));
            let rhs = complex_embed(&a).matmul(&complex_embed(&b));
            assert!(lhs.max_abs_diff(&rhs) <= 1e-12);
        }
    }

    #[test]
    fn unembed_rejects_broken_symmetry() {
        let mut m = CMatrix::identity(2);
        m[(1, 1)] = Complex64::new(2.0, 0.0);
        assert!(matches!(complex_unembed(&m), Err(Error::NotQuaternionic { .. })));
    }

    #[test]
    fn expm_of_diagonal() {
        let mut a = CMatrix::zeros(2, 2);
        a[(0, 0)] = Complex64::new(0.0, 20.0);
        a[(1, 1)] = Complex64::new(-1.5, 0.0);
        let e = expm_complex(&a);
        assert!((e[(0, 0)] - Complex64::new(libm::cos(20.0), libm::sin(20.0))).norm() < 1e-12);
        assert!((e[(1, 1)].re - libm::exp(-1.5)).abs() < 1e-13);
        assert!(e[(0, 1)].norm() < 1e-14);
    }

    #[test]
    fn expm_nilpotent() {
        let mut a = CMatrix::zeros(3, 3);
        a[(0, 1)] = Complex64::new(2.0, 0.0);
        a[(1, 2)] = Complex64::new(3.0, 0.0);
        let e = expm_complex(&a);
        assert!((e[(0, 2)].re - 3.0).abs() < 1e-12);
        assert!((e[(0, 1)].re - 2.0).abs() < 1e-12);
        assert!((e[(0, 0)].re - 1.0).abs() < 1e-12);
    }
}
