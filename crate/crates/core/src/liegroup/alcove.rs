//! Roots, the alcove `0 ≤ x_n ≤ … ≤ x_1 ≤ 1/2`, its faces and their
//! centralizers.
//!
//! Walls are numbered `0..=n`: wall 0 is `x_1 = 1/2`, wall `k` for
//! `1 ≤ k < n` is `x_k = x_{k+1}`, wall `n` is `x_n = 0`. Vertex `v_m` is the
//! unique vertex off wall `m`: `v_0 = 0`, `v_k = (½, …, ½, 0, …, 0)` with `k`
//! halves.

use alloc::vec;
use alloc::vec::Vec;

use super::{ad_matrix, adjoint_matrix, sp_dim, AlgebraElement, TorusCoordinates};
use crate::error::{Error, Result};
use crate::linalg::{kernel_abs, DMatrix};
use crate::tol;

/// `x ↦ c·x + c0`.
#[derive(Clone, Debug, PartialEq)]
pub struct AffineFunctional {
    pub coeffs: Vec<f64>,
    pub constant: f64,
}

impl AffineFunctional {
    pub fn eval(&self, x: &[f64]) -> f64 {
        self.constant + self.coeffs.iter().zip(x).map(|(a, b)| a * b).sum::<f64>()
    }
}

fn linear(n: usize, terms: &[(usize, f64)], constant: f64) -> AffineFunctional {
    let mut coeffs = vec![0.0; n];
    for &(k, c) in terms {
        coeffs[k] += c;
    }
    AffineFunctional { coeffs, constant }
}

/// Simple roots divided by `2πi`: `x_k − x_{k+1}` for `k < n` and `2x_n`.
pub fn simple_roots(n: usize) -> Vec<AffineFunctional> {
    let mut r: Vec<AffineFunctional> =
        (0..n.saturating_sub(1)).map(|k| linear(n, &[(k, 1.0), (k + 1, -1.0)], 0.0)).collect();
    if n > 0 {
        r.push(linear(n, &[(n - 1, 2.0)], 0.0));
    }
    r
}

/// The minimal root `−2x_1` (divided by `2πi`).
pub fn minimal_root(n: usize) -> AffineFunctional {
    linear(n, &[(0, -2.0)], 0.0)
}

/// Wall functionals, nonnegative exactly on the closed alcove, in wall order.
pub fn alcove_walls(n: usize) -> Vec<AffineFunctional> {
    let mut w = vec![linear(n, &[(0, -1.0)], 0.5)];
    for k in 0..n.saturating_sub(1) {
        w.push(linear(n, &[(k, 1.0), (k + 1, -1.0)], 0.0));
    }
    w.push(linear(n, &[(n - 1, 1.0)], 0.0));
    w
}

/// Whether `x` lies in the closed alcove (within `1e-12`).
pub fn alcove_contains(x: &[f64]) -> bool {
    !x.is_empty() && alcove_walls(x.len()).iter().all(|w| w.eval(x) >= -tol::WALL)
}

/// A face of the alcove, given by its active walls.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlcoveFace {
    n: usize,
    active: Vec<bool>,
}

impl AlcoveFace {
    /// Face with the given active walls; at least one wall must be inactive.
    pub fn new(n: usize, active: Vec<bool>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidRank(0));
        }
        if active.len() != n + 1 || active.iter().all(|a| *a) {
            return Err(Error::UnsupportedFace);
        }
        Ok(Self { n, active })
    }

    fn with_vertices(n: usize, vertices: &[usize]) -> Self {
        let active = (0..=n).map(|m| !vertices.contains(&m)).collect();
        Self { n, active }
    }

    pub fn interior(n: usize) -> Self {
        Self { n, active: vec![false; n + 1] }
    }

    /// The vertex `0`.
    pub fn sigma0(n: usize) -> Self {
        Self::with_vertices(n, &[0])
    }

    /// The vertex `(½, 0, …, 0)`.
    pub fn sigma1(n: usize) -> Self {
        Self::with_vertices(n, &[1])
    }

    /// The open edge joining `σ0` and `σ1`, `{(s, 0, …, 0) : 0 < s < ½}`.
    pub fn sigma01(n: usize) -> Self {
        Self::with_vertices(n, &[0, 1])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn active(&self) -> &[bool] {
        &self.active
    }

    pub fn is_active(&self, wall: usize) -> bool {
        self.active[wall]
    }

    /// Indices `m` of the vertices `v_m` in the closure of the face.
    pub fn vertices(&self) -> Vec<usize> {
        (0..=self.n).filter(|&m| !self.active[m]).collect()
    }

    pub fn dim(&self) -> usize {
        self.vertices().len() - 1
    }

    /// Barycenter of the face's vertices.
    pub fn barycenter(&self) -> TorusCoordinates {
        let vs = self.vertices();
        let mut x = vec![0.0; self.n];
        for &m in &vs {
            for xk in x.iter_mut().take(m) {
                *xk += 0.5;
            }
        }
        for xk in &mut x {
            *xk /= vs.len() as f64;
        }
        TorusCoordinates::new(x)
    }

    /// Edge vectors `v_m − v_{m0}` spanning the face's direction space.
    pub fn directions(&self) -> Vec<Vec<f64>> {
        let vs = self.vertices();
        let vert = |m: usize| (0..self.n).map(|k| if k < m { 0.5 } else { 0.0 }).collect::<Vec<f64>>();
        let base = vert(vs[0]);
        vs[1..].iter().map(|&m| vert(m).iter().zip(&base).map(|(a, b)| a - b).collect()).collect()
    }
}

/// The face whose relative interior contains `x`.
pub fn face_of(x: &TorusCoordinates) -> Result<AlcoveFace> {
    let n = x.n();
    if n == 0 {
        return Err(Error::InvalidRank(0));
    }
    if !alcove_contains(&x.x) {
        return Err(Error::OutsideAlcove);
    }
    let active = alcove_walls(n).iter().map(|w| w.eval(&x.x).abs() <= tol::WALL).collect();
    AlcoveFace::new(n, active)
}

fn basis_elements(n: usize, coords: &DMatrix) -> Vec<AlgebraElement> {
    (0..coords.cols()).map(|j| AlgebraElement::from_coords(n, &coords.column(j))).collect()
}

/// Orthonormal basis of `g_x = ker(Ad_{exp x} − I)`.
pub fn centralizer_algebra(x: &TorusCoordinates) -> Vec<AlgebraElement> {
    let n = x.n();
    let mut m = adjoint_matrix(&x.to_group());
    for k in 0..sp_dim(n) {
        m[(k, k)] -= 1.0;
    }
    basis_elements(n, &kernel_abs(&m, tol::CENTRALIZER_SVD))
}

/// Orthonormal bases of the center `z(g_σ)` and of `[g_σ, g_σ]`, the
/// orthogonal complement of the center in `g_σ`.
pub fn center_and_commutator(face: &AlcoveFace) -> (Vec<AlgebraElement>, Vec<AlgebraElement>) {
    let n = face.n();
    let cent = centralizer_algebra(&face.barycenter());
    let k = cent.len();
    let d = sp_dim(n);
    // Rows: ad(b_i)(y) in sp(n) coordinates for y = Σ c_j b_j.
    let mut stacked = DMatrix::zeros(d * k, k);
    let cent_coords: Vec<Vec<f64>> = cent.iter().map(|b| b.coords()).collect();
    for (i, b) in cent.iter().enumerate() {
        let ad = ad_matrix(b);
        for (j, cj) in cent_coords.iter().enumerate() {
            let col = ad.matvec(cj);
            for (r, v) in col.iter().enumerate() {
                stacked[(i * d + r, j)] = *v;
            }
        }
    }
    let combine = |coef: &[f64]| {
        let mut c = vec![0.0; d];
        for (a, bc) in coef.iter().zip(&cent_coords) {
            for (x, y) in c.iter_mut().zip(bc) {
                *x += a * y;
            }
        }
        AlgebraElement::from_coords(n, &c)
    };
    let svd = crate::linalg::svd(&stacked);
    let mut center = Vec::new();
    let mut commutator = Vec::new();
    for col in 0..k {
        let v = svd.v.column(col);
        if svd.s[col] <= tol::CENTRALIZER_SVD {
            center.push(combine(&v));
        } else {
            commutator.push(combine(&v));
        }
    }
    (center, commutator)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tc(x: &[f64]) -> TorusCoordinates {
        TorusCoordinates::new(x.to_vec())
    }

    #[test]
    fn faces_by_example() {
        let f = face_of(&tc(&[0.3, 0.1])).unwrap();
        assert_eq!(f, AlcoveFace::interior(2));
        assert!(alcove_contains(&[0.3, 0.1]));
        let e = face_of(&tc(&[0.3, 0.0])).unwrap();
        assert_eq!(e.active(), &[false, false, true]);
        assert_eq!(e, AlcoveFace::sigma01(2));
        assert_eq!(face_of(&tc(&[0.5])).unwrap(), AlcoveFace::sigma1(1));
        assert_eq!(face_of(&tc(&[0.0, 0.0, 0.0])).unwrap(), AlcoveFace::sigma0(3));
        assert_eq!(face_of(&tc(&[0.5, 0.0, 0.0])).unwrap(), AlcoveFace::sigma1(3));
        assert_eq!(face_of(&tc(&[0.6])), Err(Error::OutsideAlcove));
        assert_eq!(face_of(&tc(&[0.1, 0.2])), Err(Error::OutsideAlcove));
    }

    #[test]
    fn roots() {
        let r = simple_roots(3);
        assert_eq!(r.len(), 3);
        assert_eq!(r[0].eval(&[0.4, 0.1, 0.05]), 0.4 - 0.1);
        assert_eq!(r[2].eval(&[0.4, 0.1, 0.05]), 0.1);
        assert_eq!(minimal_root(2).eval(&[0.25, 0.0]), -0.5);
    }

    #[test]
    fn face_geometry() {
        for n in 1..=3 {
            assert_eq!(AlcoveFace::sigma0(n).dim(), 0);
            assert_eq!(AlcoveFace::sigma1(n).dim(), 0);
            assert_eq!(AlcoveFace::sigma01(n).dim(), 1);
            assert_eq!(AlcoveFace::interior(n).dim(), n);
            let b = AlcoveFace::sigma01(n).barycenter();
            assert_eq!(b.x[0], 0.25);
            assert_eq!(face_of(&b).unwrap(), AlcoveFace::sigma01(n));
            assert_eq!(
                AlcoveFace::sigma01(n).directions(),
                vec![{
                    let mut d = vec![0.0; n];
                    d[0] = 0.5;
                    d
                }]
            );
            let bi = AlcoveFace::interior(n).barycenter();
            assert_eq!(face_of(&bi).unwrap(), AlcoveFace::interior(n));
        }
    }

    #[test]
    fn centralizer_dimensions() {
        for n in 1..=3 {
            let d = |x: &[f64]| centralizer_algebra(&tc(x)).len();
            let mut x = vec![0.0; n];
            assert_eq!(d(&x), n * (2 * n + 1));
            x[0] = 0.2;
            assert_eq!(d(&x), 1 + (n - 1) * (2 * n - 1));
            x[0] = 0.5;
            assert_eq!(d(&x), 3 + (n - 1) * (2 * n - 1));
        }
    }

    #[test]
    fn centers_and_commutators() {
        for n in 1..=3 {
            let (z, c) = center_and_commutator(&AlcoveFace::sigma0(n));
            assert_eq!((z.len(), c.len()), (0, sp_dim(n)));
            let (z, c) = center_and_commutator(&AlcoveFace::sigma01(n));
            assert_eq!((z.len(), c.len()), (1, (n - 1) * (2 * n - 1)));
            let (z, c) = center_and_commutator(&AlcoveFace::sigma1(n));
            assert_eq!((z.len(), c.len()), (0, 3 + (n - 1) * (2 * n - 1)));
        }
        let (z, c) = center_and_commutator(&AlcoveFace::sigma01(2));
        for b in &c {
            assert!(z[0].ip(b).abs() < 1e-12);
        }
        // The center of u(1) ⊕ sp(n−1) is spanned by i·E_11.
        assert!((z[0].matrix()[(0, 0)].x.abs() - 1.0).abs() < 1e-12);
    }
}
