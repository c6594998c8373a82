//! Seeded sampling.
//!
//! Per-sample generators are derived from `(master seed, index)` by a
//! SplitMix64 mix, so results do not depend on evaluation order.

use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::quat::{QuatMatrix, Quaternion};

pub type SampleRng = ChaCha8Rng;

/// One round of SplitMix64.
pub fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed for sample `index` under `master`.
pub fn sample_seed(master: u64, index: u64) -> u64 {
    splitmix64(splitmix64(master) ^ index.wrapping_mul(0xD1B5_4A32_D192_ED03))
}

/// Generator for sample `index` under `master`.
pub fn sample_rng(master: u64, index: u64) -> SampleRng {
    SampleRng::seed_from_u64(sample_seed(master, index))
}

pub fn normal<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    rng.sample(StandardNormal)
}

/// Quaternion with independent standard normal components.
pub fn random_quaternion<R: Rng + ?Sized>(rng: &mut R) -> Quaternion {
    Quaternion::new(normal(rng), normal(rng), normal(rng), normal(rng))
}

/// Uniform on the unit 3-sphere.
pub fn random_unit_quaternion<R: Rng + ?Sized>(rng: &mut R) -> Quaternion {
    loop {
        let q = random_quaternion(rng);
        if q.norm() > 1e-6 {
            return q.normalize();
        }
    }
}

pub fn random_quat_matrix<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> QuatMatrix {
    QuatMatrix::from_fn(rows, cols, |_, _| random_quaternion(rng))
}

/// Random `n × n` skew-Hermitian matrix of Frobenius norm `norm`.
pub fn random_skew<R: Rng + ?Sized>(rng: &mut R, n: usize, norm: f64) -> QuatMatrix {
    let s = random_quat_matrix(rng, n, n).skew_part();
    let len = s.norm();
    if len == 0.0 {
        return s;
    }
    s.scale(norm / len)
}

/// Uniform on the unit sphere of `H^n`.
pub fn random_unit_vector<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<Quaternion> {
    loop {
        let v: Vec<Quaternion> = (0..n).map(|_| random_quaternion(rng)).collect();
        let len = crate::math::sqrt(v.iter().map(|q| q.norm_sqr()).sum());
        if len > 1e-6 {
            return v.into_iter().map(|q| q / len).collect();
        }
    }
}

/// Uniform on `[lo, hi)`.
pub fn uniform<R: Rng + ?Sized>(rng: &mut R, lo: f64, hi: f64) -> f64 {
    lo + (hi - lo) * rng.random::<f64>()
}
