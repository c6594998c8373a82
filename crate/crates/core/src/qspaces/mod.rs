//! Model quasi-Hamiltonian spaces: the double `D(G)`, conjugacy classes,
//! products and internal fusion.

mod conjclass;
mod double;
mod fusion;
mod product;

pub use conjclass::{conjclass_make, conjclass_omega, ConjugacyClass};
pub use double::{
    double_act, double_moment, double_moment_differential, double_omega, DoublePoint, DoubleSpace, DoubleTangent,
};
pub use fusion::{fuse_double, Fused};
pub use product::Product;
