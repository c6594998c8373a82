//! Strata `X_σ = G/[G_σ, G_σ] × exp σ` of the imploded double for the faces
//! `σ0`, `σ01`, `σ1` of the `Sp(n)` alcove.
//!
//! Points are stored as a coset representative `g` and torus coordinates
//! `x` on the face. Tangent vectors are `((L_g)_*ξ, (L_x)_*η)`; the
//! `ξ`-representative is taken orthogonal to `[g_σ, g_σ]` and `η` is the
//! left-trivialized torus velocity `2πi·dx` with `dx` in the face direction.
//!
//! The torus acts by `g ↦ g t⁻¹`.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::liegroup::{
    adjoint, bracket, center_and_commutator, face_of, sp_dim, torus_algebra, AlcoveFace, AlgebraElement, GroupElement,
    TorusCoordinates,
};
use crate::math::TAU;
use crate::quat::Quaternion;
use crate::sampling::{uniform, SampleRng};
use crate::space::{concat, Factor, QHSpace};
use crate::tol;

/// A point `(ḡ, x)` of a stratum.
#[derive(Clone, Debug, PartialEq)]
pub struct StratumPoint {
    face: AlcoveFace,
    pub g: GroupElement,
    pub x: TorusCoordinates,
}

impl StratumPoint {
    /// Checks that `x` lies on `face` and that the ranks agree.
    pub fn new(face: AlcoveFace, g: GroupElement, x: TorusCoordinates) -> Result<Self> {
        if g.n() != face.n() || x.n() != face.n() {
            return Err(Error::RankMismatch { left: face.n(), right: g.n().max(x.n()) });
        }
        if face_of(&x)? != face {
            return Err(Error::WrongFace);
        }
        Ok(Self { face, g, x })
    }

    pub fn face(&self) -> &AlcoveFace {
        &self.face
    }

    pub fn n(&self) -> usize {
        self.face.n()
    }
}

/// Tangent vector at a stratum point.
#[derive(Clone, Debug, PartialEq)]
pub struct StratumTangent {
    pub xi: AlgebraElement,
    /// Torus-coordinate velocity `dx`.
    pub eta: Vec<f64>,
}

fn supported(face: &AlcoveFace) -> bool {
    let n = face.n();
    *face == AlcoveFace::sigma0(n) || *face == AlcoveFace::sigma01(n) || *face == AlcoveFace::sigma1(n)
}

/// The stratum 2-form without representative checks:
/// `−½((Ad_x − Ad_{x⁻¹})ξ1, ξ2) − (ξ1, η2) + (ξ2, η1)`.
pub fn stratum_omega_raw(x: &TorusCoordinates, t1: &StratumTangent, t2: &StratumTangent) -> f64 {
    let xg = x.to_group();
    let diff = &adjoint(&xg, &t1.xi).expect("rank") - &adjoint(&xg.inverse(), &t1.xi).expect("rank");
    let e1 = torus_algebra(&t1.eta);
    let e2 = torus_algebra(&t2.eta);
    -0.5 * diff.ip(&t2.xi) - t1.xi.ip(&e2) + t2.xi.ip(&e1)
}

/// The stratum 2-form; rejects `ξ` not orthogonal to `[g_σ, g_σ]` and `η`
/// outside the face direction.
pub fn stratum_omega(p: &StratumPoint, t1: &StratumTangent, t2: &StratumTangent) -> Result<f64> {
    let space = StratumSpace::new(p.face.clone())?;
    for t in [t1, t2] {
        space.check_tangent(t)?;
    }
    Ok(stratum_omega_raw(&p.x, t1, t2))
}

/// `(Ad_g (exp x)⁻¹, x)`.
pub fn stratum_moment(p: &StratumPoint) -> (GroupElement, TorusCoordinates) {
    let xi = p.x.to_group().inverse();
    (&(&p.g * &xi) * &p.g.inverse(), p.x.clone())
}

/// Residual torus action `g ↦ g·t⁻¹`.
pub fn stratum_t_action(t: &TorusCoordinates, p: &StratumPoint) -> StratumPoint {
    StratumPoint { face: p.face.clone(), g: &p.g * &t.to_group().inverse(), x: p.x.clone() }
}

/// `g·v`, `v = (1, 0, …, 0)`: a complete invariant of the `Sp(n−1)` coset on
/// `σ01`.
pub fn sphere_canonicalize(p: &StratumPoint) -> Result<Vec<Quaternion>> {
    if p.face != AlcoveFace::sigma01(p.n()) {
        return Err(Error::WrongFace);
    }
    Ok(p.g.first_column())
}

/// Distance between the coset classes of two points on the same face of the
/// `σ01` closure (`∞` across faces).
///
/// `σ0`: all representatives agree. `σ01`: first columns. `σ1`: first
/// columns up to a right unit quaternion.
pub fn coset_distance(p: &StratumPoint, q: &StratumPoint) -> f64 {
    if p.face != q.face || !supported(&p.face) {
        return f64::INFINITY;
    }
    let n = p.n();
    let dx = p.x.max_abs_diff(&q.x);
    if p.face == AlcoveFace::sigma0(n) {
        return dx;
    }
    let a = p.g.first_column();
    let b = q.g.first_column();
    let d = if p.face == AlcoveFace::sigma01(n) {
        a.iter().zip(&b).fold(0.0f64, |m, (x, y)| m.max(x.max_abs_diff(*y)))
    } else {
        crate::hpn::projector_distance(&a, &b)
    };
    d.max(dx)
}

/// A stratum `X_σ` as a quasi-Hamiltonian `G × T`-space.
///
/// The frame is `sp(n) × ℝ^{dim σ}`: left-invariant fields on `G` and unit
/// face directions. Frame directions in `[g_σ, g_σ]` are tangent to the
/// cosets and map to zero in [`QHSpace::tangent_coords`].
#[derive(Clone, Debug)]
pub struct StratumSpace {
    face: AlcoveFace,
    commutator: Vec<AlgebraElement>,
    directions: Vec<Vec<f64>>,
}

/// The stratum attached to `face`.
pub fn stratum_space(face: AlcoveFace) -> Result<StratumSpace> {
    StratumSpace::new(face)
}

impl StratumSpace {
    pub fn new(face: AlcoveFace) -> Result<Self> {
        if !supported(&face) {
            return Err(Error::UnsupportedFace);
        }
        let (_, commutator) = center_and_commutator(&face);
        let directions = face
            .directions()
            .into_iter()
            .map(|d| {
                let len = crate::linalg::norm(&d);
                d.into_iter().map(|x| x / len).collect()
            })
            .collect();
        Ok(Self { face, commutator, directions })
    }

    pub fn face(&self) -> &AlcoveFace {
        &self.face
    }

    pub fn commutator(&self) -> &[AlgebraElement] {
        &self.commutator
    }

    fn n(&self) -> usize {
        self.face.n()
    }

    /// Removes the `[g_σ, g_σ]` component of `ξ`.
    pub fn project(&self, xi: &AlgebraElement) -> AlgebraElement {
        let mut out = xi.clone();
        for c in &self.commutator {
            out = &out - &c.scale(c.ip(xi));
        }
        out
    }

    fn check_tangent(&self, t: &StratumTangent) -> Result<()> {
        let residual = self.commutator.iter().fold(0.0f64, |m, c| m.max(c.ip(&t.xi).abs()));
        if residual > tol::COMMUTATOR_ORTHOGONALITY {
            return Err(Error::NotOrthogonalToCommutator { residual });
        }
        let mut rest = t.eta.clone();
        for d in &self.directions {
            let c = crate::linalg::dot(d, &t.eta);
            for (r, di) in rest.iter_mut().zip(d) {
                *r -= c * di;
            }
        }
        let residual = crate::linalg::norm(&rest);
        if residual > tol::COMMUTATOR_ORTHOGONALITY {
            return Err(Error::NotInFaceDirection { residual });
        }
        Ok(())
    }

    /// Frame vector `(ξ, c)` as a tangent: `dx = Σ c_k d_k / 2π`, so that
    /// `η = 2πi·dx` has unit coefficient per direction.
    pub fn tangent(&self, v: &[f64]) -> StratumTangent {
        let d = sp_dim(self.n());
        let xi = AlgebraElement::from_coords(self.n(), &v[..d]);
        let mut eta = vec![0.0; self.n()];
        for (c, dir) in v[d..].iter().zip(&self.directions) {
            for (e, x) in eta.iter_mut().zip(dir) {
                *e += c * x / TAU;
            }
        }
        StratumTangent { xi, eta }
    }

    fn face_point(&self, rng: &mut SampleRng) -> TorusCoordinates {
        let n = self.n();
        let mut x = vec![0.0; n];
        if self.face == AlcoveFace::sigma01(n) {
            x[0] = uniform(rng, 0.05, 0.45);
        } else if self.face == AlcoveFace::sigma1(n) {
            x[0] = 0.5;
        }
        TorusCoordinates::new(x)
    }
}

impl QHSpace for StratumSpace {
    type Point = StratumPoint;

    fn name(&self) -> &'static str {
        "stratum"
    }

    fn rank(&self) -> usize {
        self.n()
    }

    fn dim(&self) -> usize {
        sp_dim(self.n()) - self.commutator.len() + self.face.dim()
    }

    fn factors(&self) -> Vec<Factor> {
        vec![Factor::Group(self.n()), Factor::Torus(self.n())]
    }

    fn frame_dim(&self) -> usize {
        sp_dim(self.n()) + self.directions.len()
    }

    fn random_point(&self, rng: &mut SampleRng) -> StratumPoint {
        let g = GroupElement::random(rng, self.n());
        StratumPoint { face: self.face.clone(), g, x: self.face_point(rng) }
    }

    fn special_points(&self) -> Vec<StratumPoint> {
        let n = self.n();
        let mut x = vec![0.0; n];
        if self.face == AlcoveFace::sigma01(n) {
            x[0] = 0.25;
        } else if self.face == AlcoveFace::sigma1(n) {
            x[0] = 0.5;
        }
        vec![StratumPoint { face: self.face.clone(), g: GroupElement::identity(n), x: TorusCoordinates::new(x) }]
    }

    fn act(&self, k: &[GroupElement], p: &StratumPoint) -> StratumPoint {
        StratumPoint { face: p.face.clone(), g: &(&k[0] * &p.g) * &k[1].inverse(), x: p.x.clone() }
    }

    fn moment(&self, p: &StratumPoint) -> Vec<GroupElement> {
        let (a, x) = stratum_moment(p);
        vec![a, x.to_group()]
    }

    fn moment_differential(&self, p: &StratumPoint, v: &[f64]) -> Vec<AlgebraElement> {
        let t = self.tangent(v);
        let eta = torus_algebra(&t.eta);
        let xg = p.x.to_group();
        let inner = &(&adjoint(&xg, &t.xi).expect("rank") - &eta) - &t.xi;
        vec![adjoint(&p.g, &inner).expect("rank"), eta]
    }

    fn omega(&self, p: &StratumPoint, v: &[f64], w: &[f64]) -> f64 {
        stratum_omega_raw(&p.x, &self.tangent(v), &self.tangent(w))
    }

    fn flow(&self, p: &StratumPoint, v: &[f64], s: f64) -> StratumPoint {
        let t = self.tangent(v);
        let g = &p.g * &GroupElement::exp(&t.xi.scale(s));
        let x = TorusCoordinates::new(p.x.x.iter().zip(&t.eta).map(|(a, b)| a + s * b).collect());
        StratumPoint { face: p.face.clone(), g, x }
    }

    fn frame_bracket(&self, v: &[f64], w: &[f64]) -> Vec<f64> {
        let (a, b) = (self.tangent(v), self.tangent(w));
        let br = bracket(&a.xi, &b.xi).expect("rank");
        concat(&[&br.coords(), &vec![0.0; self.directions.len()]])
    }

    fn tangent_coords(&self, _p: &StratumPoint, v: &[f64]) -> Vec<f64> {
        let d = sp_dim(self.n());
        let xi = self.project(&AlgebraElement::from_coords(self.n(), &v[..d]));
        concat(&[&xi.coords(), &v[d..]])
    }

    fn fundamental(&self, p: &StratumPoint, xi: &[AlgebraElement]) -> Vec<f64> {
        let a = &adjoint(&p.g.inverse(), &xi[0]).expect("rank") - &xi[1];
        concat(&[&a.coords(), &vec![0.0; self.directions.len()]])
    }

    fn transport(&self, k: &[GroupElement], _p: &StratumPoint, v: &[f64]) -> Vec<f64> {
        let d = sp_dim(self.n());
        let xi = adjoint(&k[1], &AlgebraElement::from_coords(self.n(), &v[..d])).expect("rank");
        concat(&[&xi.coords(), &v[d..]])
    }
}
