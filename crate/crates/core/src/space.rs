//! The quasi-Hamiltonian space contract.
//!
//! Every space carries a *frame*: a fixed real vector space `ℝ^k` whose
//! elements name vector fields on the manifold (left-invariant fields on
//! group factors, generator fields for homogeneous models). Frame fields
//! have constant brackets ([`QHSpace::frame_bracket`]) and explicit flows
//! ([`QHSpace::flow`]), which is what the invariant-frame exterior derivative
//! needs. A frame may be overcomplete; [`QHSpace::tangent_coords`] maps it
//! onto an ambient space in which the tangent space at the point embeds.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Debug;

use rand::Rng;

use crate::liegroup::{sp_basis, sp_dim, AlgebraElement, GroupElement, TorusCoordinates};
use crate::linalg::{svd, DMatrix};
use crate::math::TAU;
use crate::quat::{QuatMatrix, Quaternion};
use crate::sampling::{uniform, SampleRng};

/// One factor of the group `K` acting on the space and receiving the moment
/// map. Torus factors are the diagonal maximal torus of `Sp(n)` and carry
/// elements and algebra elements as diagonal complex matrices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Factor {
    Group(usize),
    Torus(usize),
}

impl Factor {
    pub fn n(&self) -> usize {
        match *self {
            Factor::Group(n) | Factor::Torus(n) => n,
        }
    }

    /// Orthonormal basis of the factor's Lie algebra.
    pub fn algebra_basis(&self) -> Vec<AlgebraElement> {
        match *self {
            Factor::Group(n) => sp_basis(n),
            Factor::Torus(n) => (0..n)
                .map(|k| {
                    let mut d = vec![Quaternion::ZERO; n];
                    d[k] = Quaternion::I;
                    AlgebraElement::from_unchecked(QuatMatrix::diagonal(&d))
                })
                .collect(),
        }
    }

    pub fn algebra_dim(&self) -> usize {
        match *self {
            Factor::Group(n) => sp_dim(n),
            Factor::Torus(n) => n,
        }
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement::identity(self.n())
    }

    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> GroupElement {
        match *self {
            Factor::Group(n) => GroupElement::random(rng, n),
            Factor::Torus(n) => TorusCoordinates::new((0..n).map(|_| uniform(rng, -0.5, 0.5)).collect()).to_group(),
        }
    }

    /// Random algebra element of unit norm.
    pub fn random_algebra<R: Rng + ?Sized>(&self, rng: &mut R) -> AlgebraElement {
        match *self {
            Factor::Group(n) => AlgebraElement::random(rng, n, 1.0),
            Factor::Torus(n) => {
                let x: Vec<f64> = (0..n).map(|_| crate::sampling::normal(rng)).collect();
                let len = crate::linalg::norm(&x);
                crate::liegroup::torus_algebra(&x.iter().map(|v| v / (len * TAU)).collect::<Vec<_>>())
            }
        }
    }

    pub fn zero_algebra(&self) -> AlgebraElement {
        AlgebraElement::zero(self.n())
    }
}

/// A quasi-Hamiltonian `K`-space, `K = Π factors`.
///
/// Generators follow `ξ_M(x) = d/dt|₀ exp(tξ)·x`.
pub trait QHSpace: Sync {
    type Point: Clone + Debug + Send + Sync;

    fn name(&self) -> &'static str;

    /// Rank `n` of the underlying `Sp(n)`.
    fn rank(&self) -> usize;

    /// Manifold dimension.
    fn dim(&self) -> usize;

    fn factors(&self) -> Vec<Factor>;

    /// Dimension of the frame space.
    fn frame_dim(&self) -> usize;

    fn random_point(&self, rng: &mut SampleRng) -> Self::Point;

    /// Non-generic points worth checking in addition to random samples.
    fn special_points(&self) -> Vec<Self::Point> {
        Vec::new()
    }

    /// Action of `(k_1, …, k_m)`, one element per factor.
    fn act(&self, k: &[GroupElement], p: &Self::Point) -> Self::Point;

    /// Moment map, one element per factor.
    fn moment(&self, p: &Self::Point) -> Vec<GroupElement>;

    /// Left-trivialized differential of the moment map along a frame field.
    fn moment_differential(&self, p: &Self::Point, v: &[f64]) -> Vec<AlgebraElement>;

    /// The 2-form on two frame fields.
    fn omega(&self, p: &Self::Point, v: &[f64], w: &[f64]) -> f64;

    /// Flow of the frame field `v` for time `s`.
    fn flow(&self, p: &Self::Point, v: &[f64], s: f64) -> Self::Point;

    /// Frame vector of the Lie bracket of the frame fields `v`, `w`.
    fn frame_bracket(&self, v: &[f64], w: &[f64]) -> Vec<f64>;

    /// Coordinates of the frame field `v` at `p` in an ambient space in which
    /// `T_pM` embeds. Frame directions tangent to the fibres of an
    /// overcomplete frame map to zero.
    fn tangent_coords(&self, p: &Self::Point, v: &[f64]) -> Vec<f64>;

    /// Frame vector of the generator `ξ_M` at `p`.
    fn fundamental(&self, p: &Self::Point, xi: &[AlgebraElement]) -> Vec<f64>;

    /// Pushforward of the frame vector `v` at `p` under the action of `k`,
    /// as a frame vector at `k·p`.
    fn transport(&self, k: &[GroupElement], p: &Self::Point, v: &[f64]) -> Vec<f64>;

    /// `dim` frame vectors whose tangent vectors at `p` are linearly
    /// independent.
    fn tangent_basis(&self, p: &Self::Point) -> Vec<Vec<f64>> {
        let k = self.frame_dim();
        let cols: Vec<Vec<f64>> = (0..k).map(|i| self.tangent_coords(p, &unit(k, i))).collect();
        let m = cols.first().map_or(0, |c| c.len());
        let d = svd(&DMatrix::from_columns(m, &cols));
        let smax = d.s.first().copied().unwrap_or(0.0);
        (0..k).filter(|&i| d.s[i] > 1e-8 * smax).map(|i| d.v.column(i)).collect()
    }

    /// Gram matrix `ω(e_i, e_j)` on the frame basis.
    fn omega_gram(&self, p: &Self::Point) -> DMatrix {
        let k = self.frame_dim();
        let mut g = DMatrix::zeros(k, k);
        for i in 0..k {
            let ei = unit(k, i);
            for j in i + 1..k {
                let w = self.omega(p, &ei, &unit(k, j));
                g[(i, j)] = w;
                g[(j, i)] = -w;
            }
        }
        g
    }
}

/// `i`-th standard basis vector of `ℝ^k`.
pub fn unit(k: usize, i: usize) -> Vec<f64> {
    let mut e = vec![0.0; k];
    e[i] = 1.0;
    e
}

/// Split `v` into consecutive chunks of the given lengths.
pub(crate) fn split<'a>(v: &'a [f64], lens: &[usize]) -> Vec<&'a [f64]> {
    let mut out = Vec::with_capacity(lens.len());
    let mut at = 0;
    for &l in lens {
        out.push(&v[at..at + l]);
        at += l;
    }
    out
}

pub(crate) fn concat(parts: &[&[f64]]) -> Vec<f64> {
    parts.iter().flat_map(|p| p.iter().copied()).collect()
}
