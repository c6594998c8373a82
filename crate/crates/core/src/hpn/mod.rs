//! Quaternionic projective space `HP^n` as the closure of the stratum `X_01`.
//!
//! `H^{n+1}` is a right `H`-module and `[Z] = [Z·q]`. Points are stored as
//! unit representatives. Tangent vectors at a representative `Z` are vectors
//! `W ∈ H^{n+1}`, read as velocities of curves `Z + sW`; vertical directions
//! `Z·a` are killed by every form and map. The canonical lift is horizontal:
//! `Σ conj(Z_l) W_l = 0`.

mod forms;
mod maps;
mod moment;
mod scan;
mod space;

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::math::sqrt;
use crate::quat::{QuatMatrix, Quaternion};
use crate::tol;

pub use forms::{hp_omega, omega_chart, omega_chart_coefficients, omega_homogeneous, ChartCoefficients};
pub use maps::{f_table, hp_action, map_f, map_g, normal_form, sp_completion, NormalForm};
pub use moment::{hp_moment, hp_moment_differential};
pub use scan::{
    boundary_coefficient_scan, fd_pullback, moment_cauchy_scan, omega_cauchy_scan, BoundaryRow, CauchyScan,
};
pub use space::HpnSpace;

/// A point `[Z] ∈ HP^n` with unit representative `Z`.
#[derive(Clone, Debug, PartialEq)]
pub struct HPPoint {
    z: Vec<Quaternion>,
}

impl HPPoint {
    /// Normalizes `z`; rejects the zero vector and vectors of length `< 2`.
    pub fn new(z: Vec<Quaternion>) -> Result<Self> {
        if z.len() < 2 {
            return Err(Error::InvalidRank(z.len().saturating_sub(1)));
        }
        let len = qv_norm(&z);
        if !(len > 0.0) || !len.is_finite() {
            return Err(Error::ZeroVector);
        }
        Ok(Self { z: z.into_iter().map(|q| q / len).collect() })
    }

    /// The coordinate point `[e_k]`.
    pub fn basis(n: usize, k: usize) -> Self {
        let mut z = alloc::vec![Quaternion::ZERO; n + 1];
        z[k] = Quaternion::ONE;
        Self { z }
    }

    pub fn coords(&self) -> &[Quaternion] {
        &self.z
    }

    pub fn n(&self) -> usize {
        self.z.len() - 1
    }

    /// Distance of the projectors `Z Z†`; zero iff the classes agree.
    pub fn distance(&self, other: &Self) -> f64 {
        if self.z.len() != other.z.len() {
            return f64::INFINITY;
        }
        projector_distance(&self.z, &other.z)
    }

    /// Right rescaling `Z·q` by a unit quaternion (same class).
    pub fn rescaled(&self, q: Quaternion) -> Self {
        Self { z: self.z.iter().map(|&x| x * q).collect() }
    }
}

/// A horizontal tangent vector at a unit representative.
#[derive(Clone, Debug, PartialEq)]
pub struct HPTangent {
    pub at: HPPoint,
    pub w: Vec<Quaternion>,
}

impl HPTangent {
    /// Checks `Σ conj(Z_l) W_l = 0`.
    pub fn new(at: HPPoint, w: Vec<Quaternion>) -> Result<Self> {
        if w.len() != at.z.len() {
            return Err(Error::RankMismatch { left: at.n(), right: w.len().saturating_sub(1) });
        }
        let residual = qv_inner(&at.z, &w).norm();
        if residual > tol::HORIZONTAL * (1.0 + qv_norm(&w)) {
            return Err(Error::NotHorizontal { residual });
        }
        Ok(Self { at, w })
    }

    /// Horizontal part `W − Z(Z†W)` of an arbitrary representative.
    pub fn project(at: HPPoint, w: &[Quaternion]) -> Self {
        let w = horizontal(&at.z, w);
        Self { at, w }
    }
}

/// `λ = Σ_{l≥2}|Z_l|² / Σ_l |Z_l|²`.
pub fn lambda_of(z: &[Quaternion]) -> Result<f64> {
    let (n1, t) = split_norms(z);
    if n1 + t == 0.0 {
        return Err(Error::ZeroVector);
    }
    Ok(t / (n1 + t))
}

/// `t = |Z_1| / |Z_tail|`, `+∞` when the tail vanishes.
pub fn t_of(z: &[Quaternion]) -> Result<f64> {
    let (n1, t) = split_norms(z);
    if n1 + t == 0.0 {
        return Err(Error::ZeroVector);
    }
    if t == 0.0 {
        return Ok(f64::INFINITY);
    }
    Ok(sqrt(n1 / t))
}

fn split_norms(z: &[Quaternion]) -> (f64, f64) {
    (z[0].norm_sqr(), z[1..].iter().map(|q| q.norm_sqr()).sum())
}

/// Max entry distance between the projectors `a a†` and `b b†`.
pub fn projector_distance(a: &[Quaternion], b: &[Quaternion]) -> f64 {
    let mut d = 0.0f64;
    for p in 0..a.len() {
        for q in 0..a.len() {
            d = d.max((a[p] * a[q].conj()).max_abs_diff(b[p] * b[q].conj()));
        }
    }
    d
}

/// `Σ conj(x_l) y_l`.
pub(crate) fn qv_inner(x: &[Quaternion], y: &[Quaternion]) -> Quaternion {
    x.iter().zip(y).fold(Quaternion::ZERO, |acc, (a, b)| acc + a.conj() * *b)
}

pub(crate) fn qv_norm(x: &[Quaternion]) -> f64 {
    sqrt(x.iter().map(|q| q.norm_sqr()).sum())
}

pub(crate) fn qv_right(x: &[Quaternion], q: Quaternion) -> Vec<Quaternion> {
    x.iter().map(|&a| a * q).collect()
}

pub(crate) fn qv_sub(x: &[Quaternion], y: &[Quaternion]) -> Vec<Quaternion> {
    x.iter().zip(y).map(|(a, b)| *a - *b).collect()
}

pub(crate) fn mat_vec(m: &QuatMatrix, v: &[Quaternion]) -> Vec<Quaternion> {
    (0..m.rows()).map(|p| (0..m.cols()).fold(Quaternion::ZERO, |acc, q| acc + m[(p, q)] * v[q])).collect()
}

/// `W − Z(Z†W)/|Z|²`.
pub(crate) fn horizontal(z: &[Quaternion], w: &[Quaternion]) -> Vec<Quaternion> {
    let a = qv_inner(z, w) / z.iter().map(|q| q.norm_sqr()).sum::<f64>();
    qv_sub(w, &qv_right(z, a))
}

/// Real coordinates `(w_{l1}, …, w_{l4})_l` of a quaternion vector.
pub(crate) fn qv_real(x: &[Quaternion]) -> Vec<f64> {
    x.iter().flat_map(|q| q.to_array()).collect()
}
