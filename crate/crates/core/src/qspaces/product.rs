use alloc::vec::Vec;

use crate::liegroup::{AlgebraElement, GroupElement};
use crate::sampling::SampleRng;
use crate::space::{concat, Factor, QHSpace};

/// Product `A × B` acted on by `K_A × K_B`, with moment `Φ_A × Φ_B` and
/// 2-form `ω_A + ω_B`. Frames are concatenated.
#[derive(Clone, Debug)]
pub struct Product<A, B> {
    a: A,
    b: B,
}

impl<A: QHSpace, B: QHSpace> Product<A, B> {
    pub fn new(a: A, b: B) -> Self {
        Self { a, b }
    }

    fn split_k<'k, T>(&self, k: &'k [T]) -> (&'k [T], &'k [T]) {
        k.split_at(self.a.factors().len())
    }

    fn split_v<'v>(&self, v: &'v [f64]) -> (&'v [f64], &'v [f64]) {
        v.split_at(self.a.frame_dim())
    }
}

impl<A: QHSpace, B: QHSpace> QHSpace for Product<A, B> {
    type Point = (A::Point, B::Point);

    fn name(&self) -> &'static str {
        "product"
    }

    fn rank(&self) -> usize {
        self.a.rank().max(self.b.rank())
    }

    fn dim(&self) -> usize {
        self.a.dim() + self.b.dim()
    }

    fn factors(&self) -> Vec<Factor> {
        let mut f = self.a.factors();
        f.extend(self.b.factors());
        f
    }

    fn frame_dim(&self) -> usize {
        self.a.frame_dim() + self.b.frame_dim()
    }

    fn random_point(&self, rng: &mut SampleRng) -> Self::Point {
        let pa = self.a.random_point(rng);
        (pa, self.b.random_point(rng))
    }

    fn act(&self, k: &[GroupElement], p: &Self::Point) -> Self::Point {
        let (ka, kb) = self.split_k(k);
        (self.a.act(ka, &p.0), self.b.act(kb, &p.1))
    }

    fn moment(&self, p: &Self::Point) -> Vec<GroupElement> {
        let mut m = self.a.moment(&p.0);
        m.extend(self.b.moment(&p.1));
        m
    }

    fn moment_differential(&self, p: &Self::Point, v: &[f64]) -> Vec<AlgebraElement> {
        let (va, vb) = self.split_v(v);
        let mut d = self.a.moment_differential(&p.0, va);
        d.extend(self.b.moment_differential(&p.1, vb));
        d
    }

    fn omega(&self, p: &Self::Point, v: &[f64], w: &[f64]) -> f64 {
        let (va, vb) = self.split_v(v);
        let (wa, wb) = self.split_v(w);
        self.a.omega(&p.0, va, wa) + self.b.omega(&p.1, vb, wb)
    }

    fn flow(&self, p: &Self::Point, v: &[f64], s: f64) -> Self::Point {
        let (va, vb) = self.split_v(v);
        (self.a.flow(&p.0, va, s), self.b.flow(&p.1, vb, s))
    }

    fn frame_bracket(&self, v: &[f64], w: &[f64]) -> Vec<f64> {
        let (va, vb) = self.split_v(v);
        let (wa, wb) = self.split_v(w);
        concat(&[&self.a.frame_bracket(va, wa), &self.b.frame_bracket(vb, wb)])
    }

    fn tangent_coords(&self, p: &Self::Point, v: &[f64]) -> Vec<f64> {
        let (va, vb) = self.split_v(v);
        concat(&[&self.a.tangent_coords(&p.0, va), &self.b.tangent_coords(&p.1, vb)])
    }

    fn fundamental(&self, p: &Self::Point, xi: &[AlgebraElement]) -> Vec<f64> {
        let (xa, xb) = self.split_k(xi);
        concat(&[&self.a.fundamental(&p.0, xa), &self.b.fundamental(&p.1, xb)])
    }

    fn transport(&self, k: &[GroupElement], p: &Self::Point, v: &[f64]) -> Vec<f64> {
        let (ka, kb) = self.split_k(k);
        let (va, vb) = self.split_v(v);
        concat(&[&self.a.transport(ka, &p.0, va), &self.b.transport(kb, &p.1, vb)])
    }
}
