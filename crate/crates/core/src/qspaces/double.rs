use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::liegroup::{adjoint, bracket, sp_dim, AlgebraElement, GroupElement};
use crate::quat::Quaternion;
use crate::sampling::SampleRng;
use crate::space::{concat, split, Factor, QHSpace};

/// A point `(u, v)` of `D(G) = G × G`.
#[derive(Clone, Debug, PartialEq)]
pub struct DoublePoint {
    pub u: GroupElement,
    pub v: GroupElement,
}

impl DoublePoint {
    pub fn new(u: GroupElement, v: GroupElement) -> Result<Self> {
        if u.n() != v.n() {
            return Err(Error::RankMismatch { left: u.n(), right: v.n() });
        }
        Ok(Self { u, v })
    }
}

/// Tangent vector at `(u, v)`, left-trivialized at each factor.
#[derive(Clone, Debug, PartialEq)]
pub struct DoubleTangent {
    pub a: AlgebraElement,
    pub b: AlgebraElement,
}

fn check(n: usize, m: usize) -> Result<()> {
    if n != m {
        return Err(Error::RankMismatch { left: n, right: m });
    }
    Ok(())
}

/// `(g1, g2)·(u, v) = (g1 u g2⁻¹, g2 v g2⁻¹)`.
pub fn double_act(g1: &GroupElement, g2: &GroupElement, p: &DoublePoint) -> Result<DoublePoint> {
    check(g1.n(), p.u.n())?;
    check(g2.n(), p.u.n())?;
    let g2i = g2.inverse();
    Ok(DoublePoint { u: &(g1 * &p.u) * &g2i, v: &(g2 * &p.v) * &g2i })
}

/// `(Φ1, Φ2) = (u v⁻¹ u⁻¹, v)`.
pub fn double_moment(p: &DoublePoint) -> (GroupElement, GroupElement) {
    (&(&p.u * &p.v.inverse()) * &p.u.inverse(), p.v.clone())
}

fn omega_raw(v: &GroupElement, t1: &DoubleTangent, t2: &DoubleTangent) -> f64 {
    let ad = |x: &AlgebraElement| adjoint(v, x).expect("rank checked");
    let first = ad(&t1.a).ip(&t2.a) - ad(&t2.a).ip(&t1.a);
    let b2 = &t2.b + &ad(&t2.b);
    let b1 = &t1.b + &ad(&t1.b);
    let second = t1.a.ip(&b2) - t2.a.ip(&b1);
    -0.5 * first - 0.5 * second
}

/// `ω = −½(Ad_v u*θ_L, u*θ_L) − ½(u*θ_L, v*(θ_L + θ_R))` with the pairing
/// `(α, β)(X, Y) = (αX, βY) − (αY, βX)`.
pub fn double_omega(p: &DoublePoint, t1: &DoubleTangent, t2: &DoubleTangent) -> Result<f64> {
    let n = p.u.n();
    for x in [&t1.a, &t1.b, &t2.a, &t2.b] {
        check(n, x.n())?;
    }
    Ok(omega_raw(&p.v, t1, t2))
}

/// Left-trivialized `dΦ = (Ad_u(Ad_v a − Ad_v b − a), b)`.
pub fn double_moment_differential(p: &DoublePoint, t: &DoubleTangent) -> (AlgebraElement, AlgebraElement) {
    let adv = |x: &AlgebraElement| adjoint(&p.v, x).expect("rank");
    let inner = &(&adv(&t.a) - &adv(&t.b)) - &t.a;
    (adjoint(&p.u, &inner).expect("rank"), t.b.clone())
}

/// The double `D(Sp(n))` as a quasi-Hamiltonian `G × G`-space.
#[derive(Clone, Debug)]
pub struct DoubleSpace {
    n: usize,
}

impl DoubleSpace {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidRank(0));
        }
        Ok(Self { n })
    }

    fn tangent(&self, v: &[f64]) -> DoubleTangent {
        let d = sp_dim(self.n);
        let parts = split(v, &[d, d]);
        DoubleTangent {
            a: AlgebraElement::from_coords(self.n, parts[0]),
            b: AlgebraElement::from_coords(self.n, parts[1]),
        }
    }

    fn frame(&self, t: &DoubleTangent) -> Vec<f64> {
        concat(&[&t.a.coords(), &t.b.coords()])
    }
}

impl QHSpace for DoubleSpace {
    type Point = DoublePoint;

    fn name(&self) -> &'static str {
        "double"
    }

    fn rank(&self) -> usize {
        self.n
    }

    fn dim(&self) -> usize {
        2 * sp_dim(self.n)
    }

    fn factors(&self) -> Vec<Factor> {
        vec![Factor::Group(self.n), Factor::Group(self.n)]
    }

    fn frame_dim(&self) -> usize {
        2 * sp_dim(self.n)
    }

    fn random_point(&self, rng: &mut SampleRng) -> DoublePoint {
        DoublePoint { u: GroupElement::random(rng, self.n), v: GroupElement::random(rng, self.n) }
    }

    fn special_points(&self) -> Vec<DoublePoint> {
        let n = self.n;
        let id = GroupElement::identity(n);
        let mut diag_i = vec![Quaternion::ONE; n];
        diag_i[0] = Quaternion::I;
        let vi = GroupElement::diagonal(&diag_i).expect("unit diagonal");
        let minus = GroupElement::diagonal(&vec![-Quaternion::ONE; n]).expect("unit diagonal");
        vec![
            DoublePoint { u: id.clone(), v: vi },
            DoublePoint { u: id.clone(), v: minus },
            DoublePoint { u: id.clone(), v: id },
        ]
    }

    fn act(&self, k: &[GroupElement], p: &DoublePoint) -> DoublePoint {
        double_act(&k[0], &k[1], p).expect("rank")
    }

    fn moment(&self, p: &DoublePoint) -> Vec<GroupElement> {
        let (a, b) = double_moment(p);
        vec![a, b]
    }

    fn moment_differential(&self, p: &DoublePoint, v: &[f64]) -> Vec<AlgebraElement> {
        let (a, b) = double_moment_differential(p, &self.tangent(v));
        vec![a, b]
    }

    fn omega(&self, p: &DoublePoint, v: &[f64], w: &[f64]) -> f64 {
        omega_raw(&p.v, &self.tangent(v), &self.tangent(w))
    }

    fn flow(&self, p: &DoublePoint, v: &[f64], s: f64) -> DoublePoint {
        let t = self.tangent(v);
        DoublePoint { u: &p.u * &GroupElement::exp(&t.a.scale(s)), v: &p.v * &GroupElement::exp(&t.b.scale(s)) }
    }

    fn frame_bracket(&self, v: &[f64], w: &[f64]) -> Vec<f64> {
        let (x, y) = (self.tangent(v), self.tangent(w));
        let t = DoubleTangent { a: bracket(&x.a, &y.a).expect("rank"), b: bracket(&x.b, &y.b).expect("rank") };
        self.frame(&t)
    }

    fn tangent_coords(&self, _p: &DoublePoint, v: &[f64]) -> Vec<f64> {
        v.to_vec()
    }

    fn fundamental(&self, p: &DoublePoint, xi: &[AlgebraElement]) -> Vec<f64> {
        let a = &adjoint(&p.u.inverse(), &xi[0]).expect("rank") - &xi[1];
        let b = &adjoint(&p.v.inverse(), &xi[1]).expect("rank") - &xi[1];
        self.frame(&DoubleTangent { a, b })
    }

    fn transport(&self, k: &[GroupElement], _p: &DoublePoint, v: &[f64]) -> Vec<f64> {
        let t = self.tangent(v);
        let a = adjoint(&k[1], &t.a).expect("rank");
        let b = adjoint(&k[1], &t.b).expect("rank");
        self.frame(&DoubleTangent { a, b })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::sample_rng;

    fn rand_tangent(rng: &mut SampleRng, n: usize) -> DoubleTangent {
        DoubleTangent { a: AlgebraElement::random(rng, n, 1.0), b: AlgebraElement::random(rng, n, 1.0) }
    }

    #[test]
    fn action_examples() {
        let mut rng = sample_rng(21, 0);
        let s = DoubleSpace::new(2).unwrap();
        let p = s.random_point(&mut rng);
        let id = GroupElement::identity(2);
        let q = double_act(&id, &id, &p).unwrap();
        assert!(q.u.max_abs_diff(&p.u) < 1e-15 && q.v.max_abs_diff(&p.v) < 1e-15);
        let g = GroupElement::random(&mut rng, 2);
        let r = double_act(&g, &id, &DoublePoint { u: id.clone(), v: p.v.clone() }).unwrap();
        assert!(r.u.max_abs_diff(&g) < 1e-15 && r.v.max_abs_diff(&p.v) < 1e-15);
        assert!(double_act(&GroupElement::identity(1), &id, &p).is_err());
    }

    #[test]
    fn action_composes() {
        let mut rng = sample_rng(22, 0);
        for n in 1..=3 {
            let s = DoubleSpace::new(n).unwrap();
            let p = s.random_point(&mut rng);
            let [g1, g2, h1, h2] = core::array::from_fn(|_| GroupElement::random(&mut rng, n));
            let lhs = double_act(&(&g1 * &h1), &(&g2 * &h2), &p).unwrap();
            let rhs = double_act(&g1, &g2, &double_act(&h1, &h2, &p).unwrap()).unwrap();
            assert!(lhs.u.max_abs_diff(&rhs.u) <= 1e-10 && lhs.v.max_abs_diff(&rhs.v) <= 1e-10);
        }
    }

    #[test]
    fn moment_examples_and_equivariance() {
        let mut rng = sample_rng(23, 0);
        let n = 2;
        let id = GroupElement::identity(n);
        let v = GroupElement::random(&mut rng, n);
        let (a, b) = double_moment(&DoublePoint { u: id.clone(), v: v.clone() });
        assert!(a.max_abs_diff(&v.inverse()) < 1e-14 && b.max_abs_diff(&v) == 0.0);
        let u = GroupElement::random(&mut rng, n);
        let (a, b) = double_moment(&DoublePoint { u, v: id.clone() });
        assert!(a.max_abs_diff(&id) < 1e-14 && b.max_abs_diff(&id) == 0.0);
        let s = DoubleSpace::new(n).unwrap();
        for _ in 0..20 {
            let p = s.random_point(&mut rng);
            let g1 = GroupElement::random(&mut rng, n);
            let g2 = GroupElement::random(&mut rng, n);
            let (a, b) = double_moment(&double_act(&g1, &g2, &p).unwrap());
            let (a0, b0) = double_moment(&p);
            assert!(a.max_abs_diff(&(&(&g1 * &a0) * &g1.inverse())) <= 1e-10);
            assert!(b.max_abs_diff(&(&(&g2 * &b0) * &g2.inverse())) <= 1e-10);
        }
    }

    #[test]
    fn omega_examples() {
        let mut rng = sample_rng(24, 0);
        let s = DoubleSpace::new(2).unwrap();
        let p = s.random_point(&mut rng);
        let t = rand_tangent(&mut rng, 2);
        assert!(double_omega(&p, &t, &t).unwrap().abs() < 1e-15);
        let id = GroupElement::identity(2);
        let e = DoublePoint { u: id.clone(), v: id };
        let (t1, t2) = (rand_tangent(&mut rng, 2), rand_tangent(&mut rng, 2));
        let expect = -t1.a.ip(&t2.b) + t2.a.ip(&t1.b);
        assert!((double_omega(&e, &t1, &t2).unwrap() - expect).abs() < 1e-14);
        let w12 = double_omega(&p, &t1, &t2).unwrap();
        let w21 = double_omega(&p, &t2, &t1).unwrap();
        assert!((w12 + w21).abs() < 1e-14);
    }

    #[test]
    fn moment_differential_matches_fd() {
        let mut rng = sample_rng(25, 0);
        let s = DoubleSpace::new(2).unwrap();
        let p = s.random_point(&mut rng);
        let v: Vec<f64> = (0..s.frame_dim()).map(|_| crate::sampling::normal(&mut rng)).collect();
        let h = 1e-5;
        let (pp, pm) = (s.moment(&s.flow(&p, &v, h)), s.moment(&s.flow(&p, &v, -h)));
        let m0 = s.moment(&p);
        let exact = s.moment_differential(&p, &v);
        for k in 0..2 {
            let fd = crate::liegroup::left_difference(&m0[k], &pp[k], &pm[k], h);
            assert!(fd.max_abs_diff(&exact[k]) < 1e-8);
        }
    }
}
