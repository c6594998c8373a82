//! Quasi-Hamiltonian (group-valued moment map) structures for the compact
//! symplectic group `Sp(n)`.
//!
//! The crate is `no_std` with `alloc`. It provides
//!
//! * [`quat`]: quaternion scalars and quaternionic matrices, with the complex
//!   embedding used for matrix exponentials;
//! * [`liegroup`]: `Sp(n)`, `sp(n)`, the maximal torus, the Cartan 3-form and
//!   the alcove/face/centralizer combinatorics;
//! * [`qspaces`]: the double `D(G)`, conjugacy classes, products and internal
//!   fusion behind the [`QHSpace`] contract;
//! * [`implosion`]: the strata `X_σ` of the imploded double;
//! * [`hpn`]: quaternionic projective space `HP^n` as the closure of `X_01`;
//! * [`verify`]: finite-difference exterior calculus and the axiom checkers.
//!
//! IO, parallel execution and the command line live in the `qmoment` crate.

#![no_std]
#![forbid(unsafe_code)]
// `!(x <= tol)` is deliberate: NaN must fail the comparison.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;
#[cfg(test)]
extern crate std;

mod error;
pub mod hpn;
pub mod implosion;
pub mod liegroup;
pub mod linalg;
pub(crate) mod math;
pub mod qspaces;
pub mod quat;
pub mod sampling;
pub mod space;
pub mod tol;
pub mod verify;

pub use error::{Error, Result};
pub use liegroup::{AlcoveFace, AlgebraElement, GroupElement, TangentVector, TorusCoordinates};
pub use quat::{QuatMatrix, Quaternion};
pub use space::{Factor, QHSpace};
