use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::liegroup::{adjoint, AlgebraElement, GroupElement};
use crate::sampling::SampleRng;
use crate::space::{Factor, QHSpace};

/// Internal fusion of two group factors `i < j` of a quasi-Hamiltonian
/// space: the diagonal `G` acts on both, the moment becomes `Φ_i Φ_j`, and
/// the 2-form gains `½(Φ_i*θ_L, Φ_j*θ_R)`.
///
/// The fused factor takes position `i`; factor `j` is removed.
#[derive(Clone, Debug)]
pub struct Fused<S> {
    inner: S,
    i: usize,
    j: usize,
}

impl<S: QHSpace> Fused<S> {
    /// Fuses the first two factors.
    pub fn new(inner: S) -> Result<Self> {
        Self::with_factors(inner, 0, 1)
    }

    pub fn with_factors(inner: S, i: usize, j: usize) -> Result<Self> {
        let f = inner.factors();
        match (f.get(i), f.get(j)) {
            (Some(Factor::Group(a)), Some(Factor::Group(b))) if i < j && a == b => Ok(Self { inner, i, j }),
            _ => Err(Error::NothingToFuse),
        }
    }

    pub fn inner(&self) -> &S {
        &self.inner
    }

    /// Expands `(k_0, …)` on the fused factors to the inner factor list.
    fn expand<T: Clone>(&self, k: &[T]) -> Vec<T> {
        let mut out: Vec<T> = k.to_vec();
        out.insert(self.j, k[self.i].clone());
        out
    }

    fn correction(&self, p: &S::Point, v: &[f64], w: &[f64]) -> f64 {
        let phi = self.inner.moment(p);
        let dv = self.inner.moment_differential(p, v);
        let dw = self.inner.moment_differential(p, w);
        let r = |d: &AlgebraElement| adjoint(&phi[self.j], d).expect("rank");
        0.5 * (dv[self.i].ip(&r(&dw[self.j])) - dw[self.i].ip(&r(&dv[self.j])))
    }
}

/// Fusion of the two factors of a double.
pub fn fuse_double(d: crate::qspaces::DoubleSpace) -> Result<Fused<crate::qspaces::DoubleSpace>> {
    Fused::new(d)
}

impl<S: QHSpace> QHSpace for Fused<S> {
    type Point = S::Point;

    fn name(&self) -> &'static str {
        "fused"
    }

    fn rank(&self) -> usize {
        self.inner.rank()
    }

    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn factors(&self) -> Vec<Factor> {
        let mut f = self.inner.factors();
        f.remove(self.j);
        f
    }

    fn frame_dim(&self) -> usize {
        self.inner.frame_dim()
    }

    fn random_point(&self, rng: &mut SampleRng) -> S::Point {
        self.inner.random_point(rng)
    }

    fn special_points(&self) -> Vec<S::Point> {
        self.inner.special_points()
    }

    fn act(&self, k: &[GroupElement], p: &S::Point) -> S::Point {
        self.inner.act(&self.expand(k), p)
    }

    fn moment(&self, p: &S::Point) -> Vec<GroupElement> {
        let mut m = self.inner.moment(p);
        let pj = m.remove(self.j);
        m[self.i] = &m[self.i] * &pj;
        m
    }

    fn moment_differential(&self, p: &S::Point, v: &[f64]) -> Vec<AlgebraElement> {
        // (Φ_i Φ_j)⁻¹ d(Φ_i Φ_j) = Ad_{Φ_j⁻¹} θ_i + θ_j.
        let phi_j = self.inner.moment(p).swap_remove(self.j);
        let mut d = self.inner.moment_differential(p, v);
        let dj = d.remove(self.j);
        d[self.i] = &adjoint(&phi_j.inverse(), &d[self.i]).expect("rank") + &dj;
        d
    }

    fn omega(&self, p: &S::Point, v: &[f64], w: &[f64]) -> f64 {
        self.inner.omega(p, v, w) + self.correction(p, v, w)
    }

    fn flow(&self, p: &S::Point, v: &[f64], s: f64) -> S::Point {
        self.inner.flow(p, v, s)
    }

    fn frame_bracket(&self, v: &[f64], w: &[f64]) -> Vec<f64> {
        self.inner.frame_bracket(v, w)
    }

    fn tangent_coords(&self, p: &S::Point, v: &[f64]) -> Vec<f64> {
        self.inner.tangent_coords(p, v)
    }

    fn fundamental(&self, p: &S::Point, xi: &[AlgebraElement]) -> Vec<f64> {
        self.inner.fundamental(p, &self.expand(xi))
    }

    fn transport(&self, k: &[GroupElement], p: &S::Point, v: &[f64]) -> Vec<f64> {
        self.inner.transport(&self.expand(k), p, v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qspaces::{double_moment, DoubleSpace, Product};
    use crate::sampling::sample_rng;

    #[test]
    fn fused_moment_is_product() {
        let mut rng = sample_rng(41, 0);
        let f = fuse_double(DoubleSpace::new(2).unwrap()).unwrap();
        let p = f.random_point(&mut rng);
        let (a, b) = double_moment(&p);
        let m = f.moment(&p);
        assert_eq!(m.len(), 1);
        assert!(m[0].max_abs_diff(&(&a * &b)) < 1e-15);
        let expect = &(&(&p.u * &p.v.inverse()) * &p.u.inverse()) * &p.v;
        assert!(m[0].max_abs_diff(&expect) < 1e-14);
    }

    #[test]
    fn correction_vanishes_on_equal_tangents() {
        let mut rng = sample_rng(42, 0);
        let f = fuse_double(DoubleSpace::new(1).unwrap()).unwrap();
        let p = f.random_point(&mut rng);
        let v: Vec<f64> = (0..f.frame_dim()).map(|_| crate::sampling::normal(&mut rng)).collect();
        assert!(f.correction(&p, &v, &v).abs() < 1e-15);
    }

    #[test]
    fn rejects_missing_factors() {
        let c = crate::qspaces::conjclass_make(GroupElement::identity(2));
        assert!(matches!(Fused::new(c), Err(Error::NothingToFuse)));
        let prod = Product::new(DoubleSpace::new(1).unwrap(), DoubleSpace::new(2).unwrap());
        assert!(matches!(Fused::with_factors(prod.clone(), 1, 2), Err(Error::NothingToFuse)));
        assert!(Fused::with_factors(prod, 2, 3).is_ok());
    }
}
