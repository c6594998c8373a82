//! Quaternion scalars and quaternionic matrices.
//!
//! Storage is native (four reals per entry). The complex embedding in
//! [`embed`] is only used for the matrix exponential.

mod embed;
mod matrix;

pub use embed::{complex_embed, complex_unembed, expm_complex, CMatrix};
pub use matrix::{mat_dagger, mat_exp, mat_ip, QuatMatrix};

use core::fmt;
use core::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use crate::math;

/// `w + x·i + y·j + z·k`.
#[derive(Clone, Copy, PartialEq, Default)]
pub struct Quaternion {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Quaternion {
    pub const ZERO: Self = Self::new(0.0, 0.0, 0.0, 0.0);
    pub const ONE: Self = Self::new(1.0, 0.0, 0.0, 0.0);
    pub const I: Self = Self::new(0.0, 1.0, 0.0, 0.0);
    pub const J: Self = Self::new(0.0, 0.0, 1.0, 0.0);
    pub const K: Self = Self::new(0.0, 0.0, 0.0, 1.0);

    #[inline]
    pub const fn new(w: f64, x: f64, y: f64, z: f64) -> Self {
        Self { w, x, y, z }
    }

    #[inline]
    pub const fn real(w: f64) -> Self {
        Self::new(w, 0.0, 0.0, 0.0)
    }

    /// `cos θ + i sin θ`.
    #[inline]
    pub fn exp_i(theta: f64) -> Self {
        Self::new(math::cos(theta), math::sin(theta), 0.0, 0.0)
    }

    #[inline]
    pub fn from_array(c: [f64; 4]) -> Self {
        Self::new(c[0], c[1], c[2], c[3])
    }

    #[inline]
    pub fn to_array(self) -> [f64; 4] {
        [self.w, self.x, self.y, self.z]
    }

    #[inline]
    pub fn conj(self) -> Self {
        Self::new(self.w, -self.x, -self.y, -self.z)
    }

    #[inline]
    pub fn norm_sqr(self) -> f64 {
        self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z
    }

    #[inline]
    pub fn norm(self) -> f64 {
        math::sqrt(self.norm_sqr())
    }

    /// Euclidean inner product of the coefficient vectors, `Re(a · conj(b))`.
    #[inline]
    pub fn dot(self, other: Self) -> f64 {
        self.w * other.w + self.x * other.x + self.y * other.y + self.z * other.z
    }

    /// Multiplicative inverse; infinite components for zero input.
    #[inline]
    pub fn inv(self) -> Self {
        self.conj() / self.norm_sqr()
    }

    /// Unit quaternion in the same direction. Zero maps to zero.
    pub fn normalize(self) -> Self {
        let n = self.norm();
        if n == 0.0 {
            Self::ZERO
        } else {
            self / n
        }
    }

    #[inline]
    pub fn re(self) -> f64 {
        self.w
    }

    /// The imaginary part as a quaternion.
    #[inline]
    pub fn im(self) -> Self {
        Self::new(0.0, self.x, self.y, self.z)
    }

    /// `(re, im_i, im_j, im_k)`.
    #[inline]
    pub fn im_parts(self) -> (f64, f64, f64, f64) {
        (self.w, self.x, self.y, self.z)
    }

    /// The coefficient of `i`.
    #[inline]
    pub fn im_i(self) -> f64 {
        self.x
    }

    #[inline]
    pub fn scale(self, s: f64) -> Self {
        Self::new(self.w * s, self.x * s, self.y * s, self.z * s)
    }

    #[inline]
    pub fn is_finite(self) -> bool {
        self.w.is_finite() && self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    /// Max-abs distance between coefficient vectors.
    pub fn max_abs_diff(self, other: Self) -> f64 {
        let d = self - other;
        d.w.abs().max(d.x.abs()).max(d.y.abs()).max(d.z.abs())
    }
}

/// Hamilton product.
#[inline]
pub fn qmul(a: Quaternion, b: Quaternion) -> Quaternion {
    Quaternion::new(
        a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
        a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
        a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
        a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w,
    )
}

#[inline]
pub fn im_parts(q: Quaternion) -> (f64, f64, f64, f64) {
    q.im_parts()
}

impl Mul for Quaternion {
    type Output = Quaternion;
    #[inline]
    fn mul(self, rhs: Quaternion) -> Quaternion {
        qmul(self, rhs)
    }
}

impl MulAssign for Quaternion {
    #[inline]
    fn mul_assign(&mut self, rhs: Quaternion) {
        *self = qmul(*self, rhs);
    }
}

impl Mul<f64> for Quaternion {
    type Output = Quaternion;
    #[inline]
    fn mul(self, rhs: f64) -> Quaternion {
        self.scale(rhs)
    }
}

impl Mul<Quaternion> for f64 {
    type Output = Quaternion;
    #[inline]
    fn mul(self, rhs: Quaternion) -> Quaternion {
        rhs.scale(self)
    }
}

impl Div<f64> for Quaternion {
    type Output = Quaternion;
    #[inline]
    fn div(self, rhs: f64) -> Quaternion {
        Quaternion::new(self.w / rhs, self.x / rhs, self.y / rhs, self.z / rhs)
    }
}

impl Add for Quaternion {
    type Output = Quaternion;
    #[inline]
    fn add(self, rhs: Quaternion) -> Quaternion {
        Quaternion::new(self.w + rhs.w, self.x + rhs.x, self.y + rhs.y, self.z + rhs.z)
    }
}

impl AddAssign for Quaternion {
    #[inline]
    fn add_assign(&mut self, rhs: Quaternion) {
        *self = *self + rhs;
    }
}

impl Sub for Quaternion {
    type Output = Quaternion;
    #[inline]
    fn sub(self, rhs: Quaternion) -> Quaternion {
        Quaternion::new(self.w - rhs.w, self.x - rhs.x, self.y - rhs.y, self.z - rhs.z)
    }
}

impl SubAssign for Quaternion {
    #[inline]
    fn sub_assign(&mut self, rhs: Quaternion) {
        *self = *self - rhs;
    }
}

impl Neg for Quaternion {
    type Output = Quaternion;
    #[inline]
    fn neg(self) -> Quaternion {
        Quaternion::new(-self.w, -self.x, -self.y, -self.z)
    }
}

impl From<f64> for Quaternion {
    fn from(w: f64) -> Self {
        Self::real(w)
    }
}

impl fmt::Debug for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} + {}i + {}j + {}k)", self.w, self.x, self.y, self.z)
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q() -> impl Strategy<Value = Quaternion> {
        prop::array::uniform4(-10.0f64..10.0).prop_map(Quaternion::from_array)
    }

    // Norm of the product by direct component expansion, independent of qmul.
    fn product_norm_sqr_expanded(a: Quaternion, b: Quaternion) -> f64 {
        let (a0, a1, a2, a3) = a.im_parts();
        let (b0, b1, b2, b3) = b.im_parts();
        let c = [
            a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
            a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
            a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
            a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
        ];
        c.iter().map(|x| x * x).sum()
    }

    #[test]
    fn defining_relations() {
        assert_eq!(Quaternion::I * Quaternion::J, Quaternion::K);
        assert_eq!(Quaternion::J * Quaternion::K, Quaternion::I);
        assert_eq!(Quaternion::K * Quaternion::I, Quaternion::J);
        assert_eq!(Quaternion::I * Quaternion::I, -Quaternion::ONE);
        assert_eq!(Quaternion::J * Quaternion::I, -Quaternion::K);
    }

    #[test]
    fn one_plus_i_times_one_minus_i() {
        let a = Quaternion::new(1.0, 1.0, 0.0, 0.0);
        let b = Quaternion::new(1.0, -1.0, 0.0, 0.0);
        assert_eq!(a * b, Quaternion::real(2.0));
    }

    #[test]
    fn read_off_parts() {
        let q = Quaternion::new(3.0, 5.0, -1.0, 0.0);
        assert_eq!(q.im_parts(), (3.0, 5.0, -1.0, 0.0));
        assert_eq!(Quaternion::I.im_i(), 1.0);
    }

    proptest! {
        #[test]
        fn norm_is_multiplicative(a in q(), b in q()) {
            let lhs = (a * b).norm();
            let rhs = a.norm() * b.norm();
            prop_assert!((lhs - rhs).abs() <= 1e-12 * (1.0 + rhs));
            let expanded = math::sqrt(product_norm_sqr_expanded(a, b));
            prop_assert!((lhs - expanded).abs() <= 1e-12 * (1.0 + rhs));
        }

        #[test]
        fn associative(a in q(), b in q(), c in q()) {
            let d = ((a * b) * c - a * (b * c)).norm();
            prop_assert!(d <= 1e-12 * (1.0 + a.norm() * b.norm() * c.norm()));
        }

        #[test]
        fn conjugation(a in q()) {
            prop_assert_eq!(a.conj().conj(), a);
            let p = a * a.conj();
            prop_assert!((p.w - a.norm_sqr()).abs() <= 1e-12 * (1.0 + a.norm_sqr()));
            prop_assert!(p.im().norm() <= 1e-12 * (1.0 + a.norm_sqr()));
            prop_assert_eq!(a.conj().im_i(), -a.im_i());
        }
    }
}
