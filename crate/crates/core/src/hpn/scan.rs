use alloc::vec;
use alloc::vec::Vec;

use super::{hp_moment, hp_omega, map_f, mat_vec, omega_chart_coefficients, HPPoint};
use crate::error::{Error, Result};
use crate::implosion::{sphere_canonicalize, stratum_omega_raw, StratumTangent};
use crate::liegroup::AlgebraElement;
use crate::quat::{QuatMatrix, Quaternion};

/// FD pullback of the stratum 2-form through [`map_f`] at the representative
/// `z` (not necessarily unit) on the tangents `v`, `w`.
///
/// `ξ` is rebuilt from the central difference of the first column `c` of
/// the coset representative: first column `g⁻¹dc`, first row its negative
/// conjugate, lower block zero. This is independent of the representative
/// chosen for `g`.
pub fn fd_pullback(z: &[Quaternion], v: &[Quaternion], w: &[Quaternion], h: f64) -> Result<f64> {
    let base = map_f(&HPPoint::new(z.to_vec())?)?;
    let ginv = base.g.inverse();
    let n = base.n();
    let lift = |d: &[Quaternion]| -> Result<StratumTangent> {
        let probe = |s: f64| -> Result<(Vec<Quaternion>, f64)> {
            let zs: Vec<Quaternion> = z.iter().zip(d).map(|(a, b)| *a + *b * s).collect();
            let p = map_f(&HPPoint::new(zs)?)?;
            Ok((sphere_canonicalize(&p)?, p.x.x[0]))
        };
        let ((cp, xp), (cm, xm)) = (probe(h)?, probe(-h)?);
        let dc: Vec<Quaternion> = cp.iter().zip(&cm).map(|(a, b)| (*a - *b) / (2.0 * h)).collect();
        let col = mat_vec(ginv.matrix(), &dc);
        let mut m = QuatMatrix::zeros(n, n);
        for p in 0..n {
            m[(p, 0)] = col[p];
            if p > 0 {
                m[(0, p)] = -col[p].conj();
            }
        }
        let mut eta = vec![0.0; n];
        eta[0] = (xp - xm) / (2.0 * h);
        Ok(StratumTangent { xi: AlgebraElement::from_skew_part(&m), eta })
    };
    Ok(stratum_omega_raw(&base.x, &lift(v)?, &lift(w)?))
}

/// One row of the `dx13∧dx14` coefficient scan.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundaryRow {
    pub t: f64,
    pub lambda: f64,
    /// Closed form `sin(2πμ)/(λμ)` of the pulled-back 2-form.
    pub closed_form: f64,
    /// The reduced coefficient `−2 sin(2πλ)(t + t⁻¹)`.
    pub reduced: f64,
    /// FD pullback on `v = (j, −t j)`, `w = (k, −t k)` at `[t, 1]`.
    pub fd: f64,
}

/// Scan of the `dx13∧dx14` coefficient along `t`; all `t` must be positive.
pub fn boundary_coefficient_scan(ts: &[f64], h: f64) -> Result<Vec<BoundaryRow>> {
    if ts.iter().any(|t| !(*t > 0.0) || !t.is_finite()) {
        return Err(Error::InvalidConfig("scan parameters must be positive and finite"));
    }
    ts.iter()
        .map(|&t| {
            let c = omega_chart_coefficients(t);
            let z = [Quaternion::real(t), Quaternion::ONE];
            let v = [Quaternion::J, -(Quaternion::J * t)];
            let w = [Quaternion::K, -(Quaternion::K * t)];
            let fd = fd_pullback(&z, &v, &w, h)?;
            Ok(BoundaryRow { t, lambda: c.lambda, closed_form: c.c1314, reduced: c.reduced_c1314, fd })
        })
        .collect()
}

/// Values along a sequence of points approaching a boundary face and the
/// successive gaps between them.
#[derive(Clone, Debug, PartialEq)]
pub struct CauchyScan {
    pub gaps: Vec<f64>,
}

impl CauchyScan {
    fn from_values<T>(values: &[T], dist: impl Fn(&T, &T) -> f64) -> Self {
        Self { gaps: values.windows(2).map(|w| dist(&w[0], &w[1])).collect() }
    }

    /// Successive gaps shrink strictly.
    pub fn is_monotone(&self) -> bool {
        self.gaps.windows(2).all(|w| w[1] < w[0])
    }
}

/// `hp_omega(Z(ε); X·Z(ε), Y·Z(ε))` along the ray `ε ↦ Z(ε)`.
pub fn omega_cauchy_scan(
    ray: impl Fn(f64) -> Vec<Quaternion>,
    x: &AlgebraElement,
    y: &AlgebraElement,
    eps: &[f64],
) -> Result<(Vec<f64>, CauchyScan)> {
    let values = eps
        .iter()
        .map(|&e| {
            let z = HPPoint::new(ray(e))?;
            let (v, w) = (mat_vec(x.matrix(), z.coords()), mat_vec(y.matrix(), z.coords()));
            Ok(hp_omega(&z, &v, &w))
        })
        .collect::<Result<Vec<f64>>>()?;
    let scan = CauchyScan::from_values(&values, |a, b| (a - b).abs());
    Ok((values, scan))
}

/// `hp_moment(Z(ε))` along the ray, with gaps in the max-entry norm.
pub fn moment_cauchy_scan(ray: impl Fn(f64) -> Vec<Quaternion>, eps: &[f64]) -> Result<CauchyScan> {
    let values = eps.iter().map(|&e| Ok(hp_moment(&HPPoint::new(ray(e))?))).collect::<Result<Vec<_>>>()?;
    Ok(CauchyScan::from_values(&values, |a, b| a.0.max_abs_diff(&b.0).max(a.1.max_abs_diff(&b.1))))
}
