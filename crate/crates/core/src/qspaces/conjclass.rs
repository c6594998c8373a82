use alloc::vec;
use alloc::vec::Vec;

use crate::error::Result;
use crate::liegroup::{
    adjoint, adjoint_matrix, bracket, fundamental_vector_conjugation, sp_dim, AlgebraElement, GroupElement,
};
use crate::linalg::kernel_abs;
use crate::sampling::SampleRng;
use crate::space::{Factor, QHSpace};
use crate::tol;

/// `ω_g(v_ξ, v_η) = ½((η, Ad_g ξ) − (ξ, Ad_g η))` on generator fields.
pub fn conjclass_omega(g: &GroupElement, xi: &AlgebraElement, eta: &AlgebraElement) -> Result<f64> {
    let a = adjoint(g, xi)?;
    let b = adjoint(g, eta)?;
    Ok(0.5 * (eta.ip(&a) - xi.ip(&b)))
}

/// Conjugacy class `C = {k g0 k⁻¹}` with the inclusion moment map, modelled
/// as a homogeneous space: points are group elements, tangent vectors are
/// named by generators `ξ ∈ sp(n)`.
#[derive(Clone, Debug)]
pub struct ConjugacyClass {
    g0: GroupElement,
    centralizer_dim: usize,
}

/// The conjugacy class through `g0`.
pub fn conjclass_make(g0: GroupElement) -> ConjugacyClass {
    let mut m = adjoint_matrix(&g0);
    for k in 0..sp_dim(g0.n()) {
        m[(k, k)] -= 1.0;
    }
    let centralizer_dim = kernel_abs(&m, tol::CENTRALIZER_SVD).cols();
    ConjugacyClass { g0, centralizer_dim }
}

impl ConjugacyClass {
    pub fn base(&self) -> &GroupElement {
        &self.g0
    }

    fn alg(&self, v: &[f64]) -> AlgebraElement {
        AlgebraElement::from_coords(self.g0.n(), v)
    }
}

impl QHSpace for ConjugacyClass {
    type Point = GroupElement;

    fn name(&self) -> &'static str {
        "conjclass"
    }

    fn rank(&self) -> usize {
        self.g0.n()
    }

    fn dim(&self) -> usize {
        sp_dim(self.g0.n()) - self.centralizer_dim
    }

    fn factors(&self) -> Vec<Factor> {
        vec![Factor::Group(self.g0.n())]
    }

    fn frame_dim(&self) -> usize {
        sp_dim(self.g0.n())
    }

    fn random_point(&self, rng: &mut SampleRng) -> GroupElement {
        let k = GroupElement::random(rng, self.g0.n());
        &(&k * &self.g0) * &k.inverse()
    }

    fn special_points(&self) -> Vec<GroupElement> {
        vec![self.g0.clone()]
    }

    fn act(&self, k: &[GroupElement], g: &GroupElement) -> GroupElement {
        &(&k[0] * g) * &k[0].inverse()
    }

    fn moment(&self, g: &GroupElement) -> Vec<GroupElement> {
        vec![g.clone()]
    }

    fn moment_differential(&self, g: &GroupElement, v: &[f64]) -> Vec<AlgebraElement> {
        vec![fundamental_vector_conjugation(&self.alg(v), g).expect("rank")]
    }

    fn omega(&self, g: &GroupElement, v: &[f64], w: &[f64]) -> f64 {
        conjclass_omega(g, &self.alg(v), &self.alg(w)).expect("rank")
    }

    fn flow(&self, g: &GroupElement, v: &[f64], s: f64) -> GroupElement {
        let e = GroupElement::exp(&self.alg(v).scale(s));
        &(&e * g) * &e.inverse()
    }

    fn frame_bracket(&self, v: &[f64], w: &[f64]) -> Vec<f64> {
        // Generator fields of a left action are an anti-homomorphism.
        bracket(&self.alg(v), &self.alg(w)).expect("rank").scale(-1.0).coords()
    }

    fn tangent_coords(&self, g: &GroupElement, v: &[f64]) -> Vec<f64> {
        fundamental_vector_conjugation(&self.alg(v), g).expect("rank").coords()
    }

    fn fundamental(&self, _g: &GroupElement, xi: &[AlgebraElement]) -> Vec<f64> {
        xi[0].coords()
    }

    fn transport(&self, k: &[GroupElement], _g: &GroupElement, v: &[f64]) -> Vec<f64> {
        adjoint(&k[0], &self.alg(v)).expect("rank").coords()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liegroup::TorusCoordinates;
    use crate::quat::Quaternion;
    use crate::sampling::sample_rng;

    #[test]
    fn central_class_is_a_point() {
        let mut rng = sample_rng(31, 0);
        let c = conjclass_make(GroupElement::diagonal(&[-Quaternion::ONE, -Quaternion::ONE]).unwrap());
        assert_eq!(c.dim(), 0);
        let g = c.random_point(&mut rng);
        let xi = AlgebraElement::random(&mut rng, 2, 1.0);
        let eta = AlgebraElement::random(&mut rng, 2, 1.0);
        assert!(conjclass_omega(&g, &xi, &eta).unwrap().abs() < 1e-14);
    }

    #[test]
    fn generic_class_dimension() {
        let g0 = TorusCoordinates::new(vec![0.31, 0.12]).to_group();
        let c = conjclass_make(g0);
        assert_eq!(c.dim(), 8);
        let mut rng = sample_rng(32, 0);
        let g = c.random_point(&mut rng);
        let xi = AlgebraElement::random(&mut rng, 2, 1.0);
        assert!(conjclass_omega(&g, &xi, &xi).unwrap().abs() < 1e-15);
    }

    #[test]
    fn omega_depends_only_on_tangent_vector() {
        // Adding a centralizer element to ξ does not change ω.
        let mut rng = sample_rng(33, 0);
        let c = conjclass_make(TorusCoordinates::new(vec![0.31, 0.12]).to_group());
        let k = GroupElement::random(&mut rng, 2);
        let g = &(&k * c.base()) * &k.inverse();
        let z = adjoint(&k, &TorusCoordinates::new(vec![0.7, -0.2]).to_algebra()).unwrap();
        let xi = AlgebraElement::random(&mut rng, 2, 1.0);
        let eta = AlgebraElement::random(&mut rng, 2, 1.0);
        let a = conjclass_omega(&g, &xi, &eta).unwrap();
        let b = conjclass_omega(&g, &(&xi + &z), &eta).unwrap();
        assert!((a - b).abs() < 1e-12);
        assert!(fundamental_vector_conjugation(&z, &g).unwrap().norm() < 1e-12);
    }
}
