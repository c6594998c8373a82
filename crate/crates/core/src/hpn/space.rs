use alloc::vec;
use alloc::vec::Vec;

use super::maps::act_raw;
use super::{horizontal, hp_moment, hp_moment_differential, hp_omega, mat_vec, qv_real, HPPoint};
use crate::error::{Error, Result};
use crate::liegroup::{adjoint, bracket, left_difference, sp_dim, torus_algebra, AlgebraElement, GroupElement};
use crate::quat::{QuatMatrix, Quaternion};
use crate::sampling::{random_unit_vector, SampleRng};
use crate::space::{Factor, QHSpace};
use crate::tol;

/// `HP^n` as a quasi-Hamiltonian `Sp(n) × T`-space.
///
/// The frame is `sp(n+1)` acting linearly: `X` names the field `Z ↦ X·Z`,
/// whose flow is `exp(sX)·Z`. These are generator fields of a left action,
/// so their bracket is `−[X, Y]`.
#[derive(Clone, Debug)]
pub struct HpnSpace {
    n: usize,
}

impl HpnSpace {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidRank(0));
        }
        Ok(Self { n })
    }

    fn alg(&self, v: &[f64]) -> AlgebraElement {
        AlgebraElement::from_coords(self.n + 1, v)
    }

    /// The tangent `X·Z` of the frame vector `v` at `p`.
    pub fn tangent(&self, p: &HPPoint, v: &[f64]) -> Vec<Quaternion> {
        mat_vec(self.alg(v).matrix(), p.coords())
    }

    fn embed(&self, t1: Quaternion, g: &QuatMatrix) -> QuatMatrix {
        QuatMatrix::diagonal(&[t1]).block_diag(g)
    }
}

impl QHSpace for HpnSpace {
    type Point = HPPoint;

    fn name(&self) -> &'static str {
        "hpn"
    }

    fn rank(&self) -> usize {
        self.n
    }

    fn dim(&self) -> usize {
        4 * self.n
    }

    fn factors(&self) -> Vec<Factor> {
        vec![Factor::Group(self.n), Factor::Torus(self.n)]
    }

    fn frame_dim(&self) -> usize {
        sp_dim(self.n + 1)
    }

    fn random_point(&self, rng: &mut SampleRng) -> HPPoint {
        HPPoint::new(random_unit_vector(rng, self.n + 1)).expect("unit vector")
    }

    fn special_points(&self) -> Vec<HPPoint> {
        let mut z = vec![Quaternion::ZERO; self.n + 1];
        z[0] = Quaternion::ONE;
        z[1] = Quaternion::ONE;
        vec![HPPoint::new(z).expect("nonzero")]
    }

    fn act(&self, k: &[GroupElement], p: &HPPoint) -> HPPoint {
        act_raw(k[0].matrix(), k[1].matrix()[(0, 0)], p)
    }

    fn moment(&self, p: &HPPoint) -> Vec<GroupElement> {
        let (a, x) = hp_moment(p);
        vec![a, x.to_group()]
    }

    fn moment_differential(&self, p: &HPPoint, v: &[f64]) -> Vec<AlgebraElement> {
        if let Ok((a, b)) = hp_moment_differential(p, &self.tangent(p, v)) {
            return vec![a, b];
        }
        let h = tol::FD_STEP_FIRST;
        let (plus, minus) = (hp_moment(&self.flow(p, v, h)), hp_moment(&self.flow(p, v, -h)));
        let dx: Vec<f64> = plus.1.x.iter().zip(&minus.1.x).map(|(a, b)| (a - b) / (2.0 * h)).collect();
        vec![left_difference(&hp_moment(p).0, &plus.0, &minus.0, h), torus_algebra(&dx)]
    }

    fn omega(&self, p: &HPPoint, v: &[f64], w: &[f64]) -> f64 {
        hp_omega(p, &self.tangent(p, v), &self.tangent(p, w))
    }

    fn flow(&self, p: &HPPoint, v: &[f64], s: f64) -> HPPoint {
        let e = GroupElement::exp(&self.alg(v).scale(s));
        HPPoint::new(mat_vec(e.matrix(), p.coords())).expect("unitary flow")
    }

    fn frame_bracket(&self, v: &[f64], w: &[f64]) -> Vec<f64> {
        bracket(&self.alg(v), &self.alg(w)).expect("rank").scale(-1.0).coords()
    }

    fn tangent_coords(&self, p: &HPPoint, v: &[f64]) -> Vec<f64> {
        qv_real(&horizontal(p.coords(), &self.tangent(p, v)))
    }

    fn fundamental(&self, _p: &HPPoint, xi: &[AlgebraElement]) -> Vec<f64> {
        let m = self.embed(xi[1].matrix()[(0, 0)], xi[0].matrix());
        AlgebraElement::from_unchecked(m).coords()
    }

    fn transport(&self, k: &[GroupElement], _p: &HPPoint, v: &[f64]) -> Vec<f64> {
        let l = GroupElement::from_unchecked(self.embed(k[1].matrix()[(0, 0)], k[0].matrix()));
        adjoint(&l, &self.alg(v)).expect("rank").coords()
    }
}
