use alloc::vec;
use alloc::vec::Vec;

use super::{horizontal, mat_vec, qv_inner, qv_norm, qv_right, HPPoint};
use crate::error::{Error, Result};
use crate::implosion::StratumPoint;
use crate::liegroup::{face_of, AlcoveFace, GroupElement, TorusCoordinates};
use crate::math::{sqrt, TAU};
use crate::quat::{QuatMatrix, Quaternion};
use crate::tol;

/// Relative size below which a coordinate block counts as zero.
const DEGENERATE: f64 = 1e-14;

/// `(ḡ, x) ↦ [√(1−2x_1), √(2x_1)·g·e_1]` on the closure of `X_01`.
pub fn map_g(p: &StratumPoint) -> Result<HPPoint> {
    let n = p.n();
    let face = p.face();
    if *face != AlcoveFace::sigma0(n) && *face != AlcoveFace::sigma01(n) && *face != AlcoveFace::sigma1(n) {
        return Err(Error::UnsupportedFace);
    }
    let x1 = p.x.x[0];
    let mut z = Vec::with_capacity(n + 1);
    z.push(Quaternion::real(sqrt((1.0 - 2.0 * x1).max(0.0))));
    let r = sqrt(2.0 * x1);
    z.extend(p.g.first_column().into_iter().map(|q| q * r));
    HPPoint::new(z)
}

/// Inverse of [`map_g`]: `[Z] ↦ (ḡ, (λ/2, 0, …, 0))` with `g·e_1 =
/// Z_tail Z̄_1 / (|Z_1| |Z_tail|)`.
///
/// The coset representative comes from the closed-form table when it is
/// unitary, else from [`sp_completion`].
pub fn map_f(z: &HPPoint) -> Result<StratumPoint> {
    let n = z.n();
    let zc = z.coords();
    let lambda = super::lambda_of(zc)?;
    let x1 = lambda / 2.0;
    let mut x = vec![0.0; n];
    if x1 <= tol::WALL {
        return StratumPoint::new(AlcoveFace::sigma0(n), GroupElement::identity(n), TorusCoordinates::new(x));
    }
    if 0.5 - x1 <= tol::WALL {
        let tail = &zc[1..];
        let c = qv_right(tail, Quaternion::real(1.0 / qv_norm(tail)));
        x[0] = 0.5;
        return StratumPoint::new(AlcoveFace::sigma1(n), sp_completion(&c)?, TorusCoordinates::new(x));
    }
    x[0] = x1;
    let x = TorusCoordinates::new(x);
    let face = face_of(&x)?;
    StratumPoint::new(face, coset_representative(zc)?, x)
}

fn first_column(z: &[Quaternion]) -> Vec<Quaternion> {
    let r1 = z[0].norm();
    let s = qv_norm(&z[1..]);
    qv_right(&z[1..], z[0].conj() / (r1 * s))
}

fn coset_representative(z: &[Quaternion]) -> Result<GroupElement> {
    for corrected in [false, true] {
        if let Some(a) = f_table(z, corrected) {
            if a.unitarity_residual() <= tol::F_TABLE_GUARD {
                return Ok(GroupElement::from_unchecked(a));
            }
        }
    }
    sp_completion(&first_column(z))
}

/// The closed-form coset representative `A_{p, n−q}`, or `None` where a
/// denominator vanishes.
///
/// Column 1 is `Z_{p+1} Z̄_1 / (|Z_1| √S_{n+1})`. Column `n−q`, `q ≤ n−2`,
/// has `|Z_{q+3}| Z_{p+1} / (√S_{q+2} √S_{q+3})` in rows `p ≤ q+1` and
/// `±√S_{q+2} Z_{q+3} / (√S_{q+3} |Z_{q+3}|)` in row `q+2`, where
/// `S_m = Σ_{l=2}^m |Z_l|²`. The table as stated uses `+`, which is not
/// orthogonal to column 1 for `n ≥ 2`; `corrected` selects `−`.
pub fn f_table(z: &[Quaternion], corrected: bool) -> Option<QuatMatrix> {
    let n = z.len() - 1;
    let scale = qv_norm(z);
    let tiny = DEGENERATE * scale;
    if z[0].norm() <= tiny {
        return None;
    }
    // s[m] = S_m for m = 1..=n+1 (S_1 = 0).
    let mut s = vec![0.0; n + 2];
    for m in 2..=n + 1 {
        s[m] = s[m - 1] + z[m - 1].norm_sqr();
    }
    if sqrt(s[n + 1]) <= tiny {
        return None;
    }
    let sign = if corrected { -1.0 } else { 1.0 };
    let mut a = QuatMatrix::zeros(n, n);
    a.set_column(0, &first_column(z));
    for q in 0..n.saturating_sub(1) {
        let col = n - q - 1;
        let znext = z[q + 2];
        let (sa, sb) = (sqrt(s[q + 2]), sqrt(s[q + 3]));
        if sa <= tiny || znext.norm() <= tiny {
            return None;
        }
        for p in 1..=q + 1 {
            a[(p - 1, col)] = z[p] * (znext.norm() / (sa * sb));
        }
        a[(q + 1, col)] = znext * (sign * sa / (sb * znext.norm()));
    }
    Some(a)
}

/// Deterministic `Sp(n)` completion of a unit vector `c`.
///
/// Pivot is the first index of maximal `|c_k|`; the remaining standard basis
/// vectors are orthogonalized against the columns so far (two passes,
/// quaternionic projections `v − u(u†v)`).
pub fn sp_completion(c: &[Quaternion]) -> Result<GroupElement> {
    let n = c.len();
    let len = qv_norm(c);
    if (len - 1.0).abs() > 1e-10 {
        return Err(Error::NotUnit { norm: len });
    }
    let mut pivot = 0;
    for k in 1..n {
        if c[k].norm() > c[pivot].norm() {
            pivot = k;
        }
    }
    let mut cols: Vec<Vec<Quaternion>> = vec![c.to_vec()];
    for k in (0..n).filter(|&k| k != pivot) {
        let mut v = vec![Quaternion::ZERO; n];
        v[k] = Quaternion::ONE;
        for _ in 0..2 {
            for u in &cols {
                let s = qv_inner(u, &v);
                v = super::qv_sub(&v, &qv_right(u, s));
            }
        }
        let l = qv_norm(&v);
        cols.push(qv_right(&v, Quaternion::real(1.0 / l)));
    }
    let mut m = QuatMatrix::zeros(n, n);
    for (j, col) in cols.iter().enumerate() {
        m.set_column(j, col);
    }
    Ok(GroupElement::from_unchecked(m))
}

/// `(g, t)·[Z] = [t_1 Z_1, g·Z_tail]`, `t_1 = e^{2πi x_1}`.
pub fn hp_action(g: &GroupElement, t: &TorusCoordinates, z: &HPPoint) -> Result<HPPoint> {
    if g.n() != z.n() || t.n() != z.n() {
        return Err(Error::RankMismatch { left: z.n(), right: if g.n() != z.n() { g.n() } else { t.n() } });
    }
    Ok(act_raw(g.matrix(), Quaternion::exp_i(TAU * t.x[0]), z))
}

pub(crate) fn act_raw(g: &QuatMatrix, t1: Quaternion, z: &HPPoint) -> HPPoint {
    let zc = z.coords();
    let mut out = Vec::with_capacity(zc.len());
    out.push(t1 * zc[0]);
    out.extend(mat_vec(g, &zc[1..]));
    HPPoint { z: out }
}

/// Normal form `[Z] = (g, 1)·[t, 1, 0, …, 0]` of an interior point.
#[derive(Clone, Debug)]
pub struct NormalForm {
    pub t: f64,
    pub z0: HPPoint,
    pub g: GroupElement,
    pub torus: TorusCoordinates,
    scale: f64,
    phase: Quaternion,
}

/// Normal form of an interior point; `Z_1` has its quaternionic phase
/// absorbed by the projective rescaling, so the torus part is trivial.
pub fn normal_form(z: &HPPoint) -> Result<NormalForm> {
    let zc = z.coords();
    let n = z.n();
    let r1 = zc[0].norm();
    let s = qv_norm(&zc[1..]);
    if r1 <= DEGENERATE || s <= DEGENERATE {
        return Err(Error::BoundaryPoint);
    }
    let phase = zc[0].conj() / r1;
    let t = r1 / s;
    let c = qv_right(&zc[1..], phase / s);
    let g = sp_completion(&c)?;
    let mut z0 = vec![Quaternion::ZERO; n + 1];
    z0[0] = Quaternion::real(t);
    z0[1] = Quaternion::ONE;
    Ok(NormalForm { t, z0: HPPoint::new(z0)?, g, torus: TorusCoordinates::zero(n), scale: s, phase })
}

impl NormalForm {
    /// The unnormalized chart point `(t, 1, 0, …, 0)`.
    pub fn chart_point(&self) -> Vec<Quaternion> {
        let mut z = vec![Quaternion::ZERO; self.z0.z.len()];
        z[0] = Quaternion::real(self.t);
        z[1] = Quaternion::ONE;
        z
    }

    /// Transports a tangent at the unit representative `Z` to the chart at
    /// `(t, 1, 0, …, 0)`, satisfying `t w_1 + w_2 = 0`.
    pub fn to_chart(&self, w: &[Quaternion]) -> Vec<Quaternion> {
        let ginv = self.g.inverse();
        let mut y = Vec::with_capacity(w.len());
        y.push(w[0] * self.phase / self.scale);
        y.extend(mat_vec(ginv.matrix(), &w[1..]).into_iter().map(|q| q * self.phase / self.scale));
        horizontal(&self.chart_point(), &y)
    }
}
