use alloc::vec::Vec;

use super::{normal_form, qv_inner, qv_norm, qv_right, qv_sub, HPPoint};
use crate::error::{Error, Result};
use crate::math::{sin, PI, TAU};
use crate::quat::Quaternion;
use crate::tol;

/// Coefficients of the chart 2-form at `[t, 1, 0, …, 0]`:
/// `c_1112 dx11∧dx12 + c_1314 dx13∧dx14 + c_tail Σ_{p≥3}(dx_p1∧dx_p2 − dx_p3∧dx_p4)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChartCoefficients {
    pub lambda: f64,
    pub c1112: f64,
    pub c1314: f64,
    pub c_tail: f64,
    /// The reduced `dx13∧dx14` coefficient `−2 sin(2πλ)(t + t⁻¹)`, kept for
    /// comparison; it does not match the pullback.
    pub reduced_c1314: f64,
}

/// `sin(2πs)/s`, continuous at `0`.
fn sin2pi_over(s: f64) -> f64 {
    if s == 0.0 {
        TAU
    } else {
        sin(TAU * s) / s
    }
}

/// Chart coefficients for `t ∈ [0, ∞)`.
///
/// `c_1314 = −sin(2πλ)(t + t⁻¹)² = sin(2πμ)/(λμ)`, `μ = 1 − λ`, evaluated
/// through the smaller of `λ`, `μ` so that both limits are accurate.
pub fn omega_chart_coefficients(t: f64) -> ChartCoefficients {
    let lambda = 1.0 / (1.0 + t * t);
    let mu = t * t / (1.0 + t * t);
    let c1314 = if mu <= lambda { sin2pi_over(mu) / lambda } else { -sin2pi_over(lambda) / mu };
    ChartCoefficients {
        lambda,
        c1112: TAU,
        c1314,
        c_tail: 2.0 * sin(PI * lambda),
        reduced_c1314: -2.0 * sin(TAU * lambda) * (t + 1.0 / t),
    }
}

/// The 2-form in the chart at `[t, 1, 0, …, 0]` on tangents with
/// `t w_1 + w_2 = 0`, in real coordinates `w_l = w_l1 + w_l2 i + w_l3 j + w_l4 k`.
pub fn omega_chart(t: f64, v: &[Quaternion], w: &[Quaternion]) -> Result<f64> {
    if !(t >= 0.0) || !t.is_finite() {
        return Err(Error::BoundaryPoint);
    }
    if v.len() != w.len() || v.len() < 2 {
        return Err(Error::RankMismatch { left: v.len().saturating_sub(1), right: w.len().saturating_sub(1) });
    }
    for x in [v, w] {
        let residual = (x[0] * t + x[1]).norm();
        if residual > tol::HORIZONTAL * (1.0 + t) * (1.0 + qv_norm(x)) {
            return Err(Error::NotHorizontal { residual });
        }
    }
    let c = omega_chart_coefficients(t);
    let wedge = |p: usize, a: usize, b: usize| {
        let (x, y) = (v[p].to_array(), w[p].to_array());
        x[a] * y[b] - x[b] * y[a]
    };
    let mut out = c.c1112 * wedge(0, 0, 1) + c.c1314 * wedge(0, 2, 3);
    for p in 2..v.len() {
        out += c.c_tail * (wedge(p, 0, 1) - wedge(p, 2, 3));
    }
    Ok(out)
}

/// First-column data of the pullback along `V` at a representative `Z`:
/// `c = Z_tail Z̄_1/(|Z_1||Z_tail|)`, `a = c†dc`, `P = dc − c a`, `dλ`.
pub(crate) struct ColumnData {
    pub c: Vec<Quaternion>,
    pub a: Quaternion,
    pub p: Vec<Quaternion>,
    pub lambda: f64,
    pub dlambda: f64,
}

pub(crate) fn column_data(z: &[Quaternion], v: &[Quaternion]) -> Result<ColumnData> {
    let scale = qv_norm(z);
    let r1 = z[0].norm();
    let s = qv_norm(&z[1..]);
    if r1 <= 1e-14 * scale || s <= 1e-14 * scale {
        return Err(Error::BoundaryPoint);
    }
    let (zt, vt) = (&z[1..], &v[1..]);
    let dr1 = (z[0].conj() * v[0]).re() / r1;
    let ds = qv_inner(zt, vt).re() / s;
    let c = qv_right(zt, z[0].conj() / (r1 * s));
    let num: Vec<Quaternion> =
        vt.iter().zip(zt).map(|(vp, zp)| (*vp * z[0].conj() + *zp * v[0].conj()) / (r1 * s)).collect();
    let dc = qv_sub(&num, &qv_right(&c, Quaternion::real(dr1 / r1 + ds / s)));
    let a = qv_inner(&c, &dc);
    let p = qv_sub(&dc, &qv_right(&c, a));
    let t2 = s * s;
    let nn = r1 * r1 + t2;
    let dt = 2.0 * qv_inner(zt, vt).re();
    let dn = 2.0 * qv_inner(z, v).re();
    Ok(ColumnData { c, a, p, lambda: t2 / nn, dlambda: (dt * nn - t2 * dn) / (nn * nn) })
}

/// The 2-form in homogeneous coordinates at any representative `Z` with
/// `Z_1 ≠ 0` and `Z_tail ≠ 0`:
///
/// `ω = −½[Re((e^{iθ}a_V e^{−iθ} − e^{−iθ}a_V e^{iθ}) ā_W) + 4 sin θ Re(i⟨P_V, P_W⟩)]
///      − Re(a_V η̄_W) + Re(a_W η̄_V)`, `θ = πλ`, `η = πi dλ`.
pub fn omega_homogeneous(z: &[Quaternion], v: &[Quaternion], w: &[Quaternion]) -> Result<f64> {
    let dv = column_data(z, v)?;
    let dw = column_data(z, w)?;
    let theta = PI * dv.lambda;
    let (e, ei) = (Quaternion::exp_i(theta), Quaternion::exp_i(-theta));
    let rot = e * dv.a * ei - ei * dv.a * e;
    let first = (rot * dw.a.conj()).re() + 4.0 * sin(theta) * (Quaternion::I * qv_inner(&dv.p, &dw.p)).re();
    let eta_v = Quaternion::new(0.0, PI * dv.dlambda, 0.0, 0.0);
    let eta_w = Quaternion::new(0.0, PI * dw.dlambda, 0.0, 0.0);
    Ok(-0.5 * first - (dv.a * eta_w.conj()).re() + (dw.a * eta_v.conj()).re())
}

/// The 2-form on all of `HP^n`, at the unit representative of `z`.
///
/// Interior points go through the normal form and the chart; within
/// [`tol::HP_CHART_FLOOR`] of the two boundary faces the limit forms are used:
/// `2π Re(i V_1 W̄_1)/|Z|²` near `Z_1 = 0` and
/// `2π Re(i Z_1⟨W_tail, V_tail⟩Z̄_1)/|Z|⁴` near `Z_tail = 0`.
pub fn hp_omega(z: &HPPoint, v: &[Quaternion], w: &[Quaternion]) -> f64 {
    let zc = z.coords();
    let r = qv_norm(zc);
    let nn = r * r;
    if zc[0].norm() < tol::HP_CHART_FLOOR {
        return TAU * (Quaternion::I * v[0] * w[0].conj()).re() / nn;
    }
    if qv_norm(&zc[1..]) < tol::HP_CHART_FLOOR {
        let inner = qv_inner(&w[1..], &v[1..]);
        return TAU * (Quaternion::I * zc[0] * inner * zc[0].conj()).re() / (nn * nn);
    }
    let nf = normal_form(z).expect("interior point");
    omega_chart(nf.t, &nf.to_chart(v), &nf.to_chart(w)).expect("chart tangents")
}
