//! `Sp(n)`, its Lie algebra `sp(n)`, the maximal torus and the adjoint
//! machinery.
//!
//! Tangent vectors at group points are left-trivialized. The inner product
//! on `sp(n)` is `Re tr(X Y†)` throughout.
//!
//! Infinitesimal generators follow `ξ_M(x) = d/dt|₀ exp(tξ)·x`. For the
//! conjugation action this is `Ad_{g⁻¹}ξ − ξ` in the left trivialization at
//! `g`.

mod alcove;

pub use alcove::{
    alcove_contains, alcove_walls, center_and_commutator, centralizer_algebra, face_of, minimal_root, simple_roots,
    AffineFunctional, AlcoveFace,
};

use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};

use rand::Rng;

use crate::error::{Error, Result};
use crate::linalg::DMatrix;
use crate::math::{self, TAU};
use crate::quat::{mat_exp, QuatMatrix, Quaternion};
use crate::sampling::{random_skew, uniform};
use crate::tol;

/// `dim sp(n) = n(2n+1)`.
pub const fn sp_dim(n: usize) -> usize {
    n * (2 * n + 1)
}

/// Element of `Sp(n)`.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupElement {
    mat: QuatMatrix,
}

impl GroupElement {
    /// Checks `‖A†A − I‖ ≤ 1e-10`.
    pub fn new(mat: QuatMatrix) -> Result<Self> {
        if !mat.is_square() {
            return Err(Error::NotSquare { rows: mat.rows(), cols: mat.cols() });
        }
        let residual = mat.unitarity_residual();
        if !(residual <= tol::MEMBERSHIP) {
            return Err(Error::NotUnitary { residual });
        }
        Ok(Self { mat })
    }

    /// Wraps a matrix known to be quaternion-unitary up to rounding.
    pub(crate) fn from_unchecked(mat: QuatMatrix) -> Self {
        debug_assert!(mat.unitarity_residual() < 1e-6);
        Self { mat }
    }

    pub fn identity(n: usize) -> Self {
        Self { mat: QuatMatrix::identity(n) }
    }

    /// `diag(q_1, …, q_n)` for unit quaternions.
    pub fn diagonal(entries: &[Quaternion]) -> Result<Self> {
        Self::new(QuatMatrix::diagonal(entries))
    }

    pub fn exp(x: &AlgebraElement) -> Self {
        Self::from_unchecked(mat_exp(&x.mat).expect("sp(n) elements are square"))
    }

    /// `exp` of a random algebra element of Frobenius norm in `[0, 3)`.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Self {
        let r = uniform(rng, 0.0, 3.0);
        Self::exp(&AlgebraElement::random(rng, n, r))
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.mat.rows()
    }

    #[inline]
    pub fn matrix(&self) -> &QuatMatrix {
        &self.mat
    }

    pub fn into_matrix(self) -> QuatMatrix {
        self.mat
    }

    pub fn inverse(&self) -> Self {
        Self { mat: self.mat.dagger() }
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        check_rank(self.n(), other.n())?;
        Ok(Self { mat: &self.mat * &other.mat })
    }

    pub fn membership_residual(&self) -> f64 {
        self.mat.unitarity_residual()
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.mat.max_abs_diff(&other.mat)
    }

    /// First column `g·e_1`.
    pub fn first_column(&self) -> Vec<Quaternion> {
        self.mat.column(0)
    }
}

impl Mul for &GroupElement {
    type Output = GroupElement;
    fn mul(self, rhs: &GroupElement) -> GroupElement {
        self.try_mul(rhs).expect("GroupElement product")
    }
}

/// Element of `sp(n)`.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraElement {
    mat: QuatMatrix,
}

impl AlgebraElement {
    /// Checks `‖X† + X‖ ≤ 1e-12`.
    pub fn new(mat: QuatMatrix) -> Result<Self> {
        if !mat.is_square() {
            return Err(Error::NotSquare { rows: mat.rows(), cols: mat.cols() });
        }
        let residual = mat.skew_residual();
        if !(residual <= tol::SKEW * (1.0 + mat.norm())) {
            return Err(Error::NotSkewHermitian { residual });
        }
        Ok(Self { mat })
    }

    /// Projects onto the skew-Hermitian part.
    pub fn from_skew_part(mat: &QuatMatrix) -> Self {
        Self { mat: mat.skew_part() }
    }

    pub(crate) fn from_unchecked(mat: QuatMatrix) -> Self {
        Self { mat }
    }

    pub fn zero(n: usize) -> Self {
        Self { mat: QuatMatrix::zeros(n, n) }
    }

    /// Random element of Frobenius norm `norm`.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, n: usize, norm: f64) -> Self {
        Self { mat: random_skew(rng, n, norm) }
    }

    /// Element with the given coordinates in [`sp_basis`].
    pub fn from_coords(n: usize, c: &[f64]) -> Self {
        assert_eq!(c.len(), sp_dim(n), "AlgebraElement::from_coords: wrong length");
        let mut m = QuatMatrix::zeros(n, n);
        for p in 0..n {
            m[(p, p)] = Quaternion::new(0.0, c[3 * p], c[3 * p + 1], c[3 * p + 2]);
        }
        let mut k = 3 * n;
        let s = core::f64::consts::FRAC_1_SQRT_2;
        for p in 0..n {
            for q in p + 1..n {
                let u = Quaternion::new(c[k], c[k + 1], c[k + 2], c[k + 3]) * s;
                m[(p, q)] = u;
                m[(q, p)] = -u.conj();
                k += 4;
            }
        }
        Self { mat: m }
    }

    /// Coordinates in [`sp_basis`] (orthonormal for `ip`).
    pub fn coords(&self) -> Vec<f64> {
        let n = self.n();
        let mut c = Vec::with_capacity(sp_dim(n));
        for p in 0..n {
            let d = self.mat[(p, p)];
            c.extend_from_slice(&[d.x, d.y, d.z]);
        }
        let s = math::sqrt(2.0);
        for p in 0..n {
            for q in p + 1..n {
                // Average the two mirrored entries so non-exact skew input
                // projects orthogonally.
                let u = (self.mat[(p, q)] - self.mat[(q, p)].conj()) * (0.5 * s);
                c.extend_from_slice(&u.to_array());
            }
        }
        c
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.mat.rows()
    }

    #[inline]
    pub fn matrix(&self) -> &QuatMatrix {
        &self.mat
    }

    pub fn scale(&self, s: f64) -> Self {
        Self { mat: self.mat.scale(s) }
    }

    pub fn ip(&self, other: &Self) -> f64 {
        self.mat.ip(&other.mat).expect("rank mismatch in sp(n) inner product")
    }

    pub fn norm(&self) -> f64 {
        self.mat.norm()
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.mat.max_abs_diff(&other.mat)
    }

    pub fn skew_residual(&self) -> f64 {
        self.mat.skew_residual()
    }

    pub fn is_zero(&self, tol: f64) -> bool {
        self.mat.entries().iter().all(|q| q.norm() <= tol)
    }
}

impl Add for &AlgebraElement {
    type Output = AlgebraElement;
    fn add(self, rhs: &AlgebraElement) -> AlgebraElement {
        AlgebraElement { mat: &self.mat + &rhs.mat }
    }
}

impl Sub for &AlgebraElement {
    type Output = AlgebraElement;
    fn sub(self, rhs: &AlgebraElement) -> AlgebraElement {
        AlgebraElement { mat: &self.mat - &rhs.mat }
    }
}

impl Neg for &AlgebraElement {
    type Output = AlgebraElement;
    fn neg(self) -> AlgebraElement {
        self.scale(-1.0)
    }
}

/// Left-trivialized tangent vector `(L_g)_* ξ`.
#[derive(Clone, Debug, PartialEq)]
pub struct TangentVector {
    pub base: GroupElement,
    pub xi: AlgebraElement,
}

impl TangentVector {
    pub fn new(base: GroupElement, xi: AlgebraElement) -> Result<Self> {
        check_rank(base.n(), xi.n())?;
        Ok(Self { base, xi })
    }

    /// The matrix `g·ξ` of the geometric vector.
    pub fn ambient(&self) -> QuatMatrix {
        self.base.matrix() * self.xi.matrix()
    }
}

/// Torus coordinates `x ∈ ℝⁿ` of `diag(e^{2πi x_1}, …, e^{2πi x_n})`.
#[derive(Clone, Debug, PartialEq)]
pub struct TorusCoordinates {
    pub x: Vec<f64>,
}

impl TorusCoordinates {
    pub fn new(x: Vec<f64>) -> Self {
        Self { x }
    }

    pub fn zero(n: usize) -> Self {
        Self { x: alloc::vec![0.0; n] }
    }

    pub fn n(&self) -> usize {
        self.x.len()
    }

    pub fn to_group(&self) -> GroupElement {
        let d: Vec<Quaternion> = self.x.iter().map(|x| Quaternion::exp_i(TAU * x)).collect();
        GroupElement::from_unchecked(QuatMatrix::diagonal(&d))
    }

    /// `diag(2πi x_1, …, 2πi x_n)`.
    pub fn to_algebra(&self) -> AlgebraElement {
        torus_algebra(&self.x)
    }

    pub fn negate(&self) -> Self {
        Self { x: self.x.iter().map(|v| -v).collect() }
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.x.iter().zip(&other.x).fold(0.0, |m, (a, b)| m.max((a - b).abs()))
    }
}

/// `diag(2πi x_1, …, 2πi x_n)`.
pub fn torus_algebra(x: &[f64]) -> AlgebraElement {
    let d: Vec<Quaternion> = x.iter().map(|v| Quaternion::new(0.0, TAU * v, 0.0, 0.0)).collect();
    AlgebraElement::from_unchecked(QuatMatrix::diagonal(&d))
}

/// Recovers `x` from a torus algebra element `diag(2πi x_k)`.
pub fn torus_coords_of(x: &AlgebraElement) -> Vec<f64> {
    (0..x.n()).map(|k| x.matrix()[(k, k)].x / TAU).collect()
}

fn check_rank(a: usize, b: usize) -> Result<()> {
    if a != b {
        return Err(Error::RankMismatch { left: a, right: b });
    }
    Ok(())
}

/// Orthonormal real basis of `sp(n)`: `{i, j, k}·E_pp` for each `p`, then
/// `(u E_pq − ū E_qp)/√2` for `p < q`, `u ∈ {1, i, j, k}`.
pub fn sp_basis(n: usize) -> Vec<AlgebraElement> {
    let d = sp_dim(n);
    (0..d)
        .map(|k| {
            let mut c = alloc::vec![0.0; d];
            c[k] = 1.0;
            AlgebraElement::from_coords(n, &c)
        })
        .collect()
}

/// `[X, Y] = XY − YX`.
pub fn bracket(x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement> {
    check_rank(x.n(), y.n())?;
    let xy = &x.mat * &y.mat;
    let yx = &y.mat * &x.mat;
    Ok(AlgebraElement { mat: &xy - &yx })
}

/// `Ad_g X = g X g⁻¹`.
pub fn adjoint(g: &GroupElement, x: &AlgebraElement) -> Result<AlgebraElement> {
    check_rank(g.n(), x.n())?;
    let gx = &g.mat * &x.mat;
    Ok(AlgebraElement { mat: &gx * &g.mat.dagger() })
}

/// Matrix of `Ad_g` in [`sp_basis`] coordinates.
pub fn adjoint_matrix(g: &GroupElement) -> DMatrix {
    let n = g.n();
    let basis = sp_basis(n);
    let cols: Vec<Vec<f64>> = basis.iter().map(|b| adjoint(g, b).expect("same rank").coords()).collect();
    DMatrix::from_columns(sp_dim(n), &cols)
}

/// Matrix of `ad_X = [X, ·]` in [`sp_basis`] coordinates.
pub fn ad_matrix(x: &AlgebraElement) -> DMatrix {
    let n = x.n();
    let cols: Vec<Vec<f64>> = sp_basis(n).iter().map(|b| bracket(x, b).expect("same rank").coords()).collect();
    DMatrix::from_columns(sp_dim(n), &cols)
}

/// Cartan 3-form on left-trivialized triples, `χ(x, y, z) = ½ (x, [y, z])`.
pub fn cartan_three_form(x1: &AlgebraElement, x2: &AlgebraElement, x3: &AlgebraElement) -> Result<f64> {
    check_rank(x1.n(), x2.n())?;
    let b = bracket(x2, x3)?;
    Ok(0.5 * x1.ip(&b))
}

/// Conjugation-action generator at `g` in the left trivialization,
/// `Ad_{g⁻¹}ξ − ξ`.
pub fn fundamental_vector_conjugation(xi: &AlgebraElement, g: &GroupElement) -> Result<AlgebraElement> {
    let a = adjoint(&g.inverse(), xi)?;
    Ok(&a - xi)
}

/// Generator of a left action on `G` by central differences along
/// `t ↦ exp(tξ)·x`, left-trivialized at `x`.
pub fn fundamental_vector_fd(
    xi: &AlgebraElement,
    x: &GroupElement,
    act: impl Fn(&GroupElement, &GroupElement) -> GroupElement,
    h: f64,
) -> AlgebraElement {
    let plus = act(&GroupElement::exp(&xi.scale(h)), x);
    let minus = act(&GroupElement::exp(&xi.scale(-h)), x);
    let diff = (&plus.mat - &minus.mat).scale(0.5 / h);
    AlgebraElement::from_skew_part(&(&x.mat.dagger() * &diff))
}

/// Left-trivialized derivative from two group samples at `±h`:
/// `g⁻¹ (g₊ − g₋) / 2h`, projected to `sp(n)`.
pub fn left_difference(g: &GroupElement, plus: &GroupElement, minus: &GroupElement, h: f64) -> AlgebraElement {
    let diff = (&plus.mat - &minus.mat).scale(0.5 / h);
    AlgebraElement::from_skew_part(&(&g.mat.dagger() * &diff))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::sample_rng;
    use proptest::prelude::*;

    fn q(x: Quaternion) -> AlgebraElement {
        AlgebraElement::new(QuatMatrix::from_rows(1, 1, &[x])).unwrap()
    }

    // Jacobi identity with brackets expanded as explicit matrix products.
    fn jacobi_oracle(x: &QuatMatrix, y: &QuatMatrix, z: &QuatMatrix) -> f64 {
        let br = |a: &QuatMatrix, b: &QuatMatrix| &(a * b) - &(b * a);
        let s = &(&br(x, &br(y, z)) + &br(y, &br(z, x))) + &br(z, &br(x, y));
        s.norm()
    }

    #[test]
    fn basis_is_orthonormal() {
        for n in 1..=3 {
            let b = sp_basis(n);
            assert_eq!(b.len(), sp_dim(n));
            for (i, x) in b.iter().enumerate() {
                assert!(x.skew_residual() == 0.0);
                for (j, y) in b.iter().enumerate() {
                    let e = if i == j { 1.0 } else { 0.0 };
                    assert!((x.ip(y) - e).abs() < 1e-15);
                }
                let mut c = alloc::vec![0.0; sp_dim(n)];
                c[i] = 1.0;
                let back = x.coords();
                assert!(back.iter().zip(&c).all(|(a, b)| (a - b).abs() < 1e-15));
            }
        }
    }

    #[test]
    fn bracket_examples() {
        let b = bracket(&q(Quaternion::I), &q(Quaternion::J)).unwrap();
        assert_eq!(b.matrix()[(0, 0)], Quaternion::K * 2.0);
        let mut rng = sample_rng(1, 0);
        let x = AlgebraElement::random(&mut rng, 2, 1.0);
        assert!(bracket(&x, &x).unwrap().norm() == 0.0);
        assert!(matches!(bracket(&x, &AlgebraElement::zero(3)), Err(Error::RankMismatch { .. })));
    }

    #[test]
    fn jacobi_identity() {
        let mut rng = sample_rng(2, 0);
        for n in 1..=3 {
            for _ in 0..20 {
                let x = AlgebraElement::random(&mut rng, n, 1.0);
                let y = AlgebraElement::random(&mut rng, n, 1.0);
                let z = AlgebraElement::random(&mut rng, n, 1.0);
                let lhs = &(&bracket(&x, &bracket(&y, &z).unwrap()).unwrap()
                    + &bracket(&y, &bracket(&z, &x).unwrap()).unwrap())
                    + &bracket(&z, &bracket(&x, &y).unwrap()).unwrap();
                assert!(lhs.norm() <= 1e-12);
                assert!(jacobi_oracle(x.matrix(), y.matrix(), z.matrix()) <= 1e-12);
                assert!(bracket(&x, &y).unwrap().skew_residual() <= 1e-12);
            }
        }
    }

    #[test]
    fn adjoint_examples() {
        let mut rng = sample_rng(3, 0);
        let x = AlgebraElement::random(&mut rng, 2, 1.0);
        assert!(adjoint(&GroupElement::identity(2), &x).unwrap().max_abs_diff(&x) == 0.0);
        let gi = GroupElement::diagonal(&[Quaternion::I]).unwrap();
        let a = adjoint(&gi, &q(Quaternion::J)).unwrap();
        assert!(a.matrix()[(0, 0)].max_abs_diff(-Quaternion::J) < 1e-15);
        for n in 1..=3 {
            for _ in 0..20 {
                let g = GroupElement::random(&mut rng, n);
                let h = GroupElement::random(&mut rng, n);
                let x = AlgebraElement::random(&mut rng, n, 1.0);
                let y = AlgebraElement::random(&mut rng, n, 1.0);
                let lhs = adjoint(&g, &x).unwrap().ip(&adjoint(&g, &y).unwrap());
                assert!((lhs - x.ip(&y)).abs() <= 1e-10);
                let gh = adjoint(&(&g * &h), &x).unwrap();
                let g_h = adjoint(&g, &adjoint(&h, &x).unwrap()).unwrap();
                assert!(gh.max_abs_diff(&g_h) <= 1e-10);
            }
        }
    }

    #[test]
    fn adjoint_matrix_is_orthogonal() {
        let mut rng = sample_rng(4, 0);
        let g = GroupElement::random(&mut rng, 3);
        let m = adjoint_matrix(&g);
        let mtm = m.transpose().matmul(&m);
        assert!(mtm.sub(&DMatrix::identity(sp_dim(3))).max_abs() < 1e-12);
    }

    #[test]
    fn exp_lands_in_group() {
        for n in 1..=3 {
            for k in 0..100 {
                let mut rng = sample_rng(5, k);
                let norm = uniform(&mut rng, 0.0, 10.0);
                let x = AlgebraElement::random(&mut rng, n, norm);
                assert!(GroupElement::exp(&x).membership_residual() <= 1e-10);
            }
        }
    }

    #[test]
    fn membership_is_checked() {
        let m = QuatMatrix::from_rows(1, 1, &[Quaternion::real(2.0)]);
        assert!(matches!(GroupElement::new(m.clone()), Err(Error::NotUnitary { .. })));
        assert!(matches!(AlgebraElement::new(m), Err(Error::NotSkewHermitian { .. })));
    }

    #[test]
    fn cartan_examples() {
        let c = cartan_three_form(&q(Quaternion::I), &q(Quaternion::J), &q(Quaternion::K)).unwrap();
        assert!((c - 1.0).abs() < 1e-15);
        let mut rng = sample_rng(6, 0);
        let x = AlgebraElement::random(&mut rng, 2, 1.0);
        let y = AlgebraElement::random(&mut rng, 2, 1.0);
        assert!(cartan_three_form(&x, &x, &y).unwrap().abs() < 1e-15);
    }

    #[test]
    fn cartan_antisymmetric_and_invariant() {
        let mut rng = sample_rng(7, 0);
        for n in 1..=3 {
            for _ in 0..20 {
                let [a, b, c] = core::array::from_fn(|_| AlgebraElement::random(&mut rng, n, 1.0));
                let v = cartan_three_form(&a, &b, &c).unwrap();
                let perms = [
                    (cartan_three_form(&b, &c, &a).unwrap(), 1.0),
                    (cartan_three_form(&c, &a, &b).unwrap(), 1.0),
                    (cartan_three_form(&b, &a, &c).unwrap(), -1.0),
                    (cartan_three_form(&a, &c, &b).unwrap(), -1.0),
                    (cartan_three_form(&c, &b, &a).unwrap(), -1.0),
                ];
                for (p, s) in perms {
                    assert!((p - s * v).abs() <= 1e-12);
                }
                let g = GroupElement::random(&mut rng, n);
                let ad = |x: &AlgebraElement| adjoint(&g, x).unwrap();
                let w = cartan_three_form(&ad(&a), &ad(&b), &ad(&c)).unwrap();
                assert!((w - v).abs() <= 1e-10);
            }
        }
    }

    #[test]
    fn fundamental_vector_examples() {
        let xi = q(Quaternion::I);
        for g in [GroupElement::identity(1), GroupElement::diagonal(&[-Quaternion::ONE]).unwrap()] {
            assert!(fundamental_vector_conjugation(&xi, &g).unwrap().norm() < 1e-15);
        }
        let mut rng = sample_rng(8, 0);
        let eta = AlgebraElement::random(&mut rng, 2, 1.0);
        let g = GroupElement::exp(&eta.scale(0.7));
        assert!(fundamental_vector_conjugation(&eta, &g).unwrap().norm() < 1e-12);

        let conj = |h: &GroupElement, x: &GroupElement| &(h * x) * &h.inverse();
        for n in 1..=3 {
            for _ in 0..10 {
                let xi = AlgebraElement::random(&mut rng, n, 1.0);
                let g = GroupElement::random(&mut rng, n);
                let exact = fundamental_vector_conjugation(&xi, &g).unwrap();
                let fd = fundamental_vector_fd(&xi, &g, conj, 1e-4);
                assert!(exact.max_abs_diff(&fd) <= 1e-6);
            }
        }
    }

    #[test]
    fn torus_identification() {
        let t = TorusCoordinates::new(alloc::vec![0.13, -0.4, 0.25]);
        let a = GroupElement::exp(&t.to_algebra());
        assert!(a.max_abs_diff(&t.to_group()) <= 1e-12);
        assert!(t.to_group().membership_residual() < 1e-15);
        let back = torus_coords_of(&t.to_algebra());
        assert!(back.iter().zip(&t.x).all(|(a, b)| (a - b).abs() < 1e-16));
    }

    proptest! {
        #[test]
        fn coords_roundtrip(seed in any::<u64>(), n in 1usize..=3) {
            let mut rng = sample_rng(seed, 0);
            let x = AlgebraElement::random(&mut rng, n, 2.0);
            let y = AlgebraElement::from_coords(n, &x.coords());
            prop_assert!(x.max_abs_diff(&y) < 1e-14);
            let c = x.coords();
            prop_assert!((crate::linalg::dot(&c, &c) - x.ip(&x)).abs() < 1e-12);
        }
    }
}
