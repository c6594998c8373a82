use alloc::vec::Vec;

use crate::liegroup::{left_difference, AlgebraElement};
use crate::linalg::norm;
use crate::sampling::{normal, SampleRng};
use crate::space::QHSpace;

/// Left-trivialized differential of the moment map along the frame field
/// `v` by central differences along its flow.
pub fn fd_differential<S: QHSpace>(space: &S, p: &S::Point, v: &[f64], h: f64) -> Vec<AlgebraElement> {
    let base = space.moment(p);
    let plus = space.moment(&space.flow(p, v, h));
    let minus = space.moment(&space.flow(p, v, -h));
    base.iter().zip(plus.iter().zip(&minus)).map(|(g, (a, b))| left_difference(g, a, b, h)).collect()
}

/// `dω(X, Y, Z)` on frame fields by the invariant-frame formula
/// `Xω(Y,Z) − Yω(X,Z) + Zω(X,Y) − ω([X,Y],Z) + ω([X,Z],Y) − ω([Y,Z],X)`,
/// with directional derivatives by central differences along flows.
pub fn fd_d2form<S: QHSpace>(space: &S, p: &S::Point, x: &[f64], y: &[f64], z: &[f64], h: f64) -> f64 {
    let der = |d: &[f64], a: &[f64], b: &[f64]| {
        (space.omega(&space.flow(p, d, h), a, b) - space.omega(&space.flow(p, d, -h), a, b)) / (2.0 * h)
    };
    der(x, y, z) - der(y, x, z) + der(z, x, y) - space.omega(p, &space.frame_bracket(x, y), z)
        + space.omega(p, &space.frame_bracket(x, z), y)
        - space.omega(p, &space.frame_bracket(y, z), x)
}

/// Unit vector in the frame space.
pub fn random_frame_vector(rng: &mut SampleRng, k: usize) -> Vec<f64> {
    let v: Vec<f64> = (0..k).map(|_| normal(rng)).collect();
    let len = norm(&v);
    v.into_iter().map(|x| x / len).collect()
}
