//! Finite-difference exterior calculus and the axiom, equivariance and
//! roundtrip checkers.
//!
//! Every check evaluates a residual per sample from an RNG derived from
//! `(seed, sample index)` alone, so reports do not depend on evaluation
//! order. Aggregation runs over the fixed index set.

mod axioms;
mod calculus;
mod checks;
mod suites;

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linalg::{principal_angles, DMatrix};
use crate::sampling::{sample_rng, SampleRng};
use crate::tol;

pub use axioms::{
    check_axiom_one, check_axiom_three, check_axiom_two, check_moment_differential, check_moment_equivariance,
    check_omega_invariance, kernel_comparison,
};
pub use calculus::{fd_d2form, fd_differential, random_frame_vector};
pub use checks::{
    check_boundary_scan, check_cauchy_scans, check_centralizer_dimensions, check_map_g_equivariance,
    check_moment_at_vertex, check_moment_consistency, check_projective_invariance, check_roundtrip_hp,
    check_roundtrip_stratum, check_stratum_representatives, check_substrate, check_triple_agreement,
};
pub use suites::{
    conformance_notes, forms_suite, roundtrip_suite, verify_suite, ConformanceNote, SpaceKind, SuiteReport,
};

/// Tolerances per check family.
#[derive(Clone, Debug, PartialEq)]
pub struct Tolerances {
    pub axiom_one: f64,
    pub axiom_two: f64,
    pub axiom_three: f64,
    pub equivariance: f64,
    pub roundtrip: f64,
    pub closed_form: f64,
    pub fd_agreement: f64,
    pub moment: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            axiom_one: tol::AXIOM_ONE,
            axiom_two: tol::AXIOM_TWO,
            axiom_three: tol::AXIOM_THREE,
            equivariance: tol::EQUIVARIANCE,
            roundtrip: tol::ROUNDTRIP,
            closed_form: tol::CLOSED_FORM_AGREEMENT,
            fd_agreement: tol::FD_AGREEMENT,
            moment: tol::MOMENT_AGREEMENT,
        }
    }
}

/// Sampling and step configuration of a verification run.
#[derive(Clone, Debug, PartialEq)]
pub struct SampleConfig {
    pub n: usize,
    pub samples: usize,
    pub seed: u64,
    /// Step for second-order exterior derivatives.
    pub h: f64,
    /// Step for first derivatives.
    pub h_first: f64,
    pub tolerances: Tolerances,
}

impl SampleConfig {
    pub fn new(n: usize, samples: usize, seed: u64) -> Self {
        Self {
            n,
            samples,
            seed,
            h: tol::FD_STEP_EXTERIOR,
            h_first: tol::FD_STEP_FIRST,
            tolerances: Tolerances::default(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::InvalidRank(0));
        }
        if self.samples == 0 {
            return Err(Error::InvalidConfig("samples must be at least 1"));
        }
        if !(self.h > 0.0 && self.h.is_finite() && self.h_first > 0.0 && self.h_first.is_finite()) {
            return Err(Error::InvalidConfig("finite-difference steps must be positive"));
        }
        Ok(())
    }

    /// RNG of sample `index` for the check family `salt`.
    pub fn rng(&self, salt: u64, index: usize) -> SampleRng {
        sample_rng(self.seed.wrapping_add(salt.wrapping_mul(0x9E37_79B9_7F4A_7C15)), index as u64)
    }
}

/// Outcome of one check.
#[derive(Clone, Debug, PartialEq)]
pub struct VerificationReport {
    pub name: String,
    pub residuals: Vec<f64>,
    pub max: f64,
    pub mean: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub notes: Vec<String>,
}

impl VerificationReport {
    /// `pass ⇔ max ≤ tolerance`; any NaN residual fails.
    pub fn from_residuals(name: &str, residuals: Vec<f64>, tolerance: f64) -> Self {
        let nan = residuals.iter().any(|r| r.is_nan());
        let max = if nan { f64::NAN } else { residuals.iter().fold(0.0f64, |m, r| m.max(*r)) };
        let mean = if residuals.is_empty() { 0.0 } else { residuals.iter().sum::<f64>() / residuals.len() as f64 };
        Self {
            name: name.to_string(),
            residuals,
            max,
            mean,
            tolerance,
            pass: !nan && max <= tolerance,
            notes: Vec::new(),
        }
    }

    pub fn with_note(mut self, note: &str) -> Self {
        self.notes.push(note.to_string());
        self
    }
}

/// Principal-angle comparison of two subspaces given by orthonormal columns.
#[derive(Clone, Debug, PartialEq)]
pub struct SubspaceComparison {
    pub dim_a: usize,
    pub dim_b: usize,
    /// Sorted increasingly, in `[0, π/2]`.
    pub angles: Vec<f64>,
}

impl SubspaceComparison {
    pub fn new(a: &DMatrix, b: &DMatrix) -> Self {
        Self { dim_a: a.cols(), dim_b: b.cols(), angles: principal_angles(a, b) }
    }

    /// Largest principal angle; `π/2` on a dimension mismatch.
    pub fn max_angle(&self) -> f64 {
        if self.dim_a != self.dim_b {
            return core::f64::consts::FRAC_PI_2;
        }
        self.angles.last().copied().unwrap_or(0.0)
    }

    pub fn equal(&self, tolerance: f64) -> bool {
        self.dim_a == self.dim_b && self.max_angle() < tolerance
    }
}

/// Evaluates per-sample residuals; implementations must return them in
/// index order.
pub trait Executor: Sync {
    fn run(&self, count: usize, f: &(dyn Fn(usize) -> f64 + Sync)) -> Vec<f64>;
}

/// In-order, single-threaded executor.
#[derive(Clone, Copy, Debug, Default)]
pub struct Sequential;

impl Executor for Sequential {
    fn run(&self, count: usize, f: &(dyn Fn(usize) -> f64 + Sync)) -> Vec<f64> {
        (0..count).map(f).collect()
    }
}

/// Generic defect check: `f(index, rng)` per sample.
pub fn check_defect(
    name: &str,
    cfg: &SampleConfig,
    exec: &dyn Executor,
    salt: u64,
    tolerance: f64,
    f: &(dyn Fn(&mut SampleRng) -> f64 + Sync),
) -> VerificationReport {
    let residuals = exec.run(cfg.samples, &|i| f(&mut cfg.rng(salt, i)));
    VerificationReport::from_residuals(name, residuals, tolerance)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn report_semantics() {
        let r = VerificationReport::from_residuals("x", vec![1e-9, 3e-9], 2e-9);
        assert!(!r.pass);
        assert_eq!(r.max, 3e-9);
        assert!((r.mean - 2e-9).abs() < 1e-24);
        let r = VerificationReport::from_residuals("x", vec![1e-9, f64::NAN], 1.0);
        assert!(!r.pass && r.max.is_nan());
        assert!(VerificationReport::from_residuals("x", vec![], 0.0).pass);
    }

    #[test]
    fn config_validation() {
        assert!(SampleConfig::new(1, 1, 0).validate().is_ok());
        assert_eq!(SampleConfig::new(0, 1, 0).validate(), Err(Error::InvalidRank(0)));
        assert!(SampleConfig::new(1, 0, 0).validate().is_err());
        let mut c = SampleConfig::new(1, 1, 0);
        c.h = 0.0;
        assert!(c.validate().is_err());
    }

    #[test]
    fn subspace_comparison_is_symmetric() {
        let a = DMatrix::from_columns(3, &[vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0]]);
        let s = 0.1f64;
        let b = DMatrix::from_columns(3, &[vec![1.0, 0.0, 0.0], vec![0.0, s.cos(), s.sin()]]);
        let (x, y) = (SubspaceComparison::new(&a, &b), SubspaceComparison::new(&b, &a));
        assert_eq!(x.angles, y.angles);
        assert!((x.max_angle() - 0.1).abs() < 1e-14);
        let c = DMatrix::from_columns(3, &[vec![1.0, 0.0, 0.0]]);
        assert_eq!(SubspaceComparison::new(&a, &c).max_angle(), core::f64::consts::FRAC_PI_2);
    }
}
