use alloc::vec;

use super::forms::column_data;
use super::HPPoint;
use crate::error::{Error, Result};
use crate::liegroup::{torus_algebra, AlgebraElement, GroupElement, TorusCoordinates};
use crate::math::{sin, PI};
use crate::quat::{QuatMatrix, Quaternion};
use crate::tol;

/// Moment map `[Z] ↦ (I + C, (λ/2, 0, …, 0))`,
/// `C_pq = Z_{p+1} ū [(e^{−iπλ} − 1)/λ] u Z̄_{q+1} / |Z|²`, `u = Z_1/|Z_1|`.
///
/// The bracket is smooth in `λ` and equals `−2` at `Z_1 = 0`, where `u` is
/// irrelevant; at `Z_tail = 0`, `C = 0`.
pub fn hp_moment(z: &HPPoint) -> (GroupElement, TorusCoordinates) {
    let zc = z.coords();
    let n = z.n();
    let lambda = super::lambda_of(zc).expect("nonzero");
    let mut x = vec![0.0; n];
    x[0] = lambda / 2.0;
    let mut m = QuatMatrix::identity(n);
    if lambda > 0.0 {
        let r1 = zc[0].norm();
        let u = if r1 > 0.0 { zc[0] / r1 } else { Quaternion::ONE };
        // (e^{−iπλ} − 1)/λ = −2i sin(πλ/2) e^{−iπλ/2}/λ.
        let f = Quaternion::I * Quaternion::exp_i(-PI * lambda / 2.0) * (-2.0 * sin(PI * lambda / 2.0) / lambda);
        let k = u.conj() * f * u;
        for p in 0..n {
            for q in 0..n {
                m[(p, q)] += zc[p + 1] * k * zc[q + 1].conj();
            }
        }
    }
    (GroupElement::from_unchecked(m), TorusCoordinates::new(x))
}

/// Left-trivialized differential of [`hp_moment`] along `V` at an interior
/// point:
/// `Φ⁻¹dΦ = c(e^{iθ}ae^{−iθ} − η − a)c† + P(e^{−iθ} − 1)c† − c(e^{iθ} − 1)P†`
/// on the group factor and `η = πi dλ` on the torus factor.
pub fn hp_moment_differential(z: &HPPoint, v: &[Quaternion]) -> Result<(AlgebraElement, AlgebraElement)> {
    let zc = z.coords();
    if zc[0].norm() < tol::HP_BOUNDARY || super::qv_norm(&zc[1..]) < tol::HP_BOUNDARY {
        return Err(Error::BoundaryPoint);
    }
    let d = column_data(zc, v)?;
    let n = z.n();
    let theta = PI * d.lambda;
    let (e, ei) = (Quaternion::exp_i(theta), Quaternion::exp_i(-theta));
    let eta = Quaternion::new(0.0, PI * d.dlambda, 0.0, 0.0);
    let mid = e * d.a * ei - eta - d.a;
    let (l, r) = (ei - Quaternion::ONE, e - Quaternion::ONE);
    let m = QuatMatrix::from_fn(n, n, |p, q| {
        d.c[p] * mid * d.c[q].conj() + d.p[p] * l * d.c[q].conj() - d.c[p] * r * d.p[q].conj()
    });
    let mut dx = vec![0.0; n];
    dx[0] = d.dlambda / 2.0;
    Ok((AlgebraElement::from_skew_part(&m), torus_algebra(&dx)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hpn::{hp_action, map_f, mat_vec};
    use crate::implosion::stratum_moment;
    use crate::liegroup::left_difference;
    use crate::sampling::{random_unit_quaternion, random_unit_vector, sample_rng, uniform};
    use alloc::vec::Vec;

    #[test]
    fn examples() {
        let (a, x) = hp_moment(&HPPoint::basis(2, 0));
        assert!(a.max_abs_diff(&GroupElement::identity(2)) <= 1e-6);
        assert_eq!(x.x, vec![0.0, 0.0]);
        let (a, x) = hp_moment(&HPPoint::new(vec![Quaternion::ONE, Quaternion::ONE]).unwrap());
        assert!(a.matrix()[(0, 0)].max_abs_diff(-Quaternion::I) < 1e-15);
        assert!((x.x[0] - 0.25).abs() < 1e-15);
    }

    #[test]
    fn matches_stratum_moment_and_is_equivariant() {
        let mut rng = sample_rng(81, 0);
        for n in 1..=3 {
            for _ in 0..100 {
                let z = HPPoint::new(random_unit_vector(&mut rng, n + 1)).unwrap();
                let (a, x) = hp_moment(&z);
                assert!(a.membership_residual() <= 1e-12);
                let (b, y) = stratum_moment(&map_f(&z).unwrap());
                assert!(a.max_abs_diff(&b) <= 1e-8);
                assert!(x.max_abs_diff(&y) <= 1e-15);
                let g = GroupElement::random(&mut rng, n);
                let t = TorusCoordinates::new((0..n).map(|_| uniform(&mut rng, -0.5, 0.5)).collect());
                let (c, xc) = hp_moment(&hp_action(&g, &t, &z).unwrap());
                assert!(c.max_abs_diff(&(&(&g * &a) * &g.inverse())) <= 1e-8);
                assert!(xc.max_abs_diff(&x) <= 1e-15);
                let zq = z.rescaled(random_unit_quaternion(&mut rng));
                assert!(hp_moment(&zq).0.max_abs_diff(&a) <= 1e-10);
            }
        }
    }

    #[test]
    fn differential_matches_fd() {
        let mut rng = sample_rng(82, 0);
        let h = 1e-5;
        for n in 1..=3 {
            for _ in 0..20 {
                let z = HPPoint::new(random_unit_vector(&mut rng, n + 1)).unwrap();
                let x = AlgebraElement::random(&mut rng, n + 1, 1.0);
                let v = mat_vec(x.matrix(), z.coords());
                let at = |s: f64| {
                    let e = GroupElement::exp(&x.scale(s));
                    hp_moment(&HPPoint::new(mat_vec(e.matrix(), z.coords())).unwrap())
                };
                let (plus, minus) = (at(h), at(-h));
                let fd = left_difference(&hp_moment(&z).0, &plus.0, &minus.0, h);
                let dx: Vec<f64> = plus.1.x.iter().zip(&minus.1.x).map(|(a, b)| (a - b) / (2.0 * h)).collect();
                let (dg, dt) = hp_moment_differential(&z, &v).unwrap();
                assert!(dg.max_abs_diff(&fd) <= 1e-7, "n={n}");
                assert!(dt.max_abs_diff(&torus_algebra(&dx)) <= 1e-7);
            }
        }
    }
}
