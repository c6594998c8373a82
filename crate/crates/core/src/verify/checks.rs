use alloc::vec;
use alloc::vec::Vec;

use super::{check_defect, Executor, SampleConfig, VerificationReport};
use crate::hpn::{
    boundary_coefficient_scan, fd_pullback, horizontal, hp_action, hp_moment, hp_omega, map_f, map_g,
    moment_cauchy_scan, normal_form, omega_cauchy_scan, omega_chart, omega_homogeneous, HPPoint,
};
use crate::implosion::{
    coset_distance, stratum_moment, stratum_omega, stratum_omega_raw, stratum_space, StratumTangent,
};
use crate::liegroup::{centralizer_algebra, AlcoveFace, AlgebraElement, GroupElement, TorusCoordinates};
use crate::quat::{complex_embed, complex_unembed, Quaternion};
use crate::sampling::{
    random_quat_matrix, random_quaternion, random_unit_quaternion, random_unit_vector, uniform, SampleRng,
};
use crate::space::QHSpace;
use crate::tol;

fn with_samples(cfg: &SampleConfig, samples: usize) -> SampleConfig {
    SampleConfig { samples, ..cfg.clone() }
}

/// Quaternion algebra, embedding roundtrip and `exp` membership at fixed
/// sample counts (1000 triples, 100 matrices per rank `1..=3`).
pub fn check_substrate(cfg: &SampleConfig, exec: &dyn Executor) -> Vec<VerificationReport> {
    let triples = with_samples(cfg, 1000);
    let algebra = check_defect("quaternion_algebra", &triples, exec, 11, tol::ALGEBRA, &|rng| {
        let (a, b, c) = (random_quaternion(rng), random_quaternion(rng), random_quaternion(rng));
        let assoc = ((a * b) * c).max_abs_diff(a * (b * c));
        let norm = ((a * b).norm() - a.norm() * b.norm()).abs();
        assoc.max(norm)
    });
    let mats = with_samples(cfg, 100);
    let embed = check_defect("embed_roundtrip", &mats, exec, 12, 1e-14, &|rng| {
        (1..=3)
            .map(|n| {
                let a = random_quat_matrix(rng, n, n);
                complex_unembed(&complex_embed(&a)).map_or(f64::INFINITY, |b| b.max_abs_diff(&a))
            })
            .fold(0.0, f64::max)
    });
    let exp = check_defect("exp_membership", &mats, exec, 13, tol::MEMBERSHIP, &|rng| {
        (1..=3)
            .map(|n| {
                let norm = uniform(rng, 0.0, 10.0);
                GroupElement::exp(&AlgebraElement::random(rng, n, norm)).membership_residual()
            })
            .fold(0.0, f64::max)
    });
    vec![algebra, embed, exp]
}

/// Numeric centralizer dimensions at `σ0`, `σ01`, `σ1` against
/// `n(2n+1)`, `1 + (n−1)(2n−1)`, `3 + (n−1)(2n−1)`.
pub fn check_centralizer_dimensions(n: usize) -> VerificationReport {
    let closed = [n * (2 * n + 1), 1 + (n - 1) * (2 * n - 1), 3 + (n - 1) * (2 * n - 1)];
    let faces = [AlcoveFace::sigma0(n), AlcoveFace::sigma01(n), AlcoveFace::sigma1(n)];
    let residuals = faces
        .iter()
        .zip(closed)
        .map(|(f, c)| (centralizer_algebra(&f.barycenter()).len() as f64 - c as f64).abs())
        .collect();
    VerificationReport::from_residuals("centralizer_dimensions", residuals, 0.0)
}

/// Stratum 2-form is unchanged by `[g_σ, g_σ]` shifts of `ξ` and agrees
/// with the checked evaluator on projected representatives.
pub fn check_stratum_representatives(cfg: &SampleConfig, exec: &dyn Executor) -> VerificationReport {
    let space = stratum_space(AlcoveFace::sigma01(cfg.n)).expect("supported face");
    check_defect("stratum_representatives", cfg, exec, 14, 1e-10, &|rng| {
        let p = space.random_point(rng);
        let k = space.frame_dim();
        let v: Vec<f64> = (0..k).map(|_| crate::sampling::normal(rng)).collect();
        let w: Vec<f64> = (0..k).map(|_| crate::sampling::normal(rng)).collect();
        let (t1, t2) = (space.tangent(&v), space.tangent(&w));
        let base = stratum_omega_raw(&p.x, &t1, &t2);
        let mut shifted = t1.xi.clone();
        for c in space.commutator() {
            shifted = &shifted + &c.scale(crate::sampling::normal(rng));
        }
        let moved = stratum_omega_raw(&p.x, &StratumTangent { xi: shifted, eta: t1.eta.clone() }, &t2);
        let proj = |t: &StratumTangent| StratumTangent { xi: space.project(&t.xi), eta: t.eta.clone() };
        let checked = stratum_omega(&p, &proj(&t1), &proj(&t2)).unwrap_or(f64::INFINITY);
        (moved - base).abs().max((checked - base).abs())
    })
}

fn random_hp(rng: &mut SampleRng, n: usize) -> HPPoint {
    HPPoint::new(random_unit_vector(rng, n + 1)).expect("unit vector")
}

fn random_torus(rng: &mut SampleRng, n: usize) -> TorusCoordinates {
    TorusCoordinates::new((0..n).map(|_| uniform(rng, -0.5, 0.5)).collect())
}

/// `map_f ∘ map_g = id` on the stratum (coset distance).
pub fn check_roundtrip_stratum(cfg: &SampleConfig, exec: &dyn Executor) -> VerificationReport {
    let space = stratum_space(AlcoveFace::sigma01(cfg.n)).expect("supported face");
    check_defect("roundtrip_stratum", cfg, exec, 21, cfg.tolerances.roundtrip, &|rng| {
        let p = space.random_point(rng);
        map_g(&p).and_then(|z| map_f(&z)).map_or(f64::INFINITY, |q| coset_distance(&p, &q))
    })
}

/// `map_g ∘ map_f = id` on `HP^n` (projector distance).
pub fn check_roundtrip_hp(cfg: &SampleConfig, exec: &dyn Executor) -> VerificationReport {
    check_defect("roundtrip_hp", cfg, exec, 22, cfg.tolerances.roundtrip, &|rng| {
        let z = random_hp(rng, cfg.n);
        map_f(&z).and_then(|p| map_g(&p)).map_or(f64::INFINITY, |w| w.distance(&z))
    })
}

/// `map_g((g, t)·p) = (g, t)·map_g(p)`.
pub fn check_map_g_equivariance(cfg: &SampleConfig, exec: &dyn Executor) -> VerificationReport {
    let space = stratum_space(AlcoveFace::sigma01(cfg.n)).expect("supported face");
    check_defect("map_g_equivariance", cfg, exec, 23, cfg.tolerances.roundtrip, &|rng| {
        let p = space.random_point(rng);
        let g = GroupElement::random(rng, cfg.n);
        let t = random_torus(rng, cfg.n);
        let lhs = map_g(&space.act(&[g.clone(), t.to_group()], &p));
        let rhs = map_g(&p).and_then(|z| hp_action(&g, &t, &z));
        match (lhs, rhs) {
            (Ok(a), Ok(b)) => a.distance(&b),
            _ => f64::INFINITY,
        }
    })
}

/// Exported operations agree on `Z` and `Z·q`.
pub fn check_projective_invariance(cfg: &SampleConfig, exec: &dyn Executor) -> VerificationReport {
    check_defect("projective_invariance", cfg, exec, 24, cfg.tolerances.roundtrip, &|rng| {
        let n = cfg.n;
        let z = random_hp(rng, n);
        let q = random_unit_quaternion(rng);
        let zq = z.rescaled(q);
        let v: Vec<Quaternion> = (0..=n).map(|_| random_quaternion(rng)).collect();
        let w: Vec<Quaternion> = (0..=n).map(|_| random_quaternion(rng)).collect();
        let right = |x: &[Quaternion]| x.iter().map(|a| *a * q).collect::<Vec<_>>();
        let f = match (map_f(&z), map_f(&zq)) {
            (Ok(a), Ok(b)) => coset_distance(&a, &b),
            _ => f64::INFINITY,
        };
        let (ma, mb) = (hp_moment(&z), hp_moment(&zq));
        let m = ma.0.max_abs_diff(&mb.0).max(ma.1.max_abs_diff(&mb.1));
        let o = (hp_omega(&z, &v, &w) - hp_omega(&zq, &right(&v), &right(&w))).abs();
        let g = GroupElement::random(rng, n);
        let t = random_torus(rng, n);
        let a = match (hp_action(&g, &t, &z), hp_action(&g, &t, &zq)) {
            (Ok(a), Ok(b)) => a.distance(&b),
            _ => f64::INFINITY,
        };
        f.max(m).max(o).max(a)
    })
}

/// Chart (via normal form), homogeneous and FD-pullback evaluations of the
/// 2-form on random horizontal tangents at random interior points.
pub fn check_triple_agreement(cfg: &SampleConfig, exec: &dyn Executor) -> Vec<VerificationReport> {
    let n = cfg.n;
    let eval = |rng: &mut SampleRng| -> Option<(f64, f64, f64)> {
        let z = random_hp(rng, n);
        let v = horizontal(z.coords(), &(0..=n).map(|_| random_quaternion(rng)).collect::<Vec<_>>());
        let w = horizontal(z.coords(), &(0..=n).map(|_| random_quaternion(rng)).collect::<Vec<_>>());
        let nf = normal_form(&z).ok()?;
        let chart = omega_chart(nf.t, &nf.to_chart(&v), &nf.to_chart(&w)).ok()?;
        let homog = omega_homogeneous(z.coords(), &v, &w).ok()?;
        let fd = fd_pullback(z.coords(), &v, &w, cfg.h_first).ok()?;
        Some((chart, homog, fd))
    };
    let pick = |name: &str, tolerance: f64, f: fn((f64, f64, f64)) -> f64| {
        check_defect(name, cfg, exec, 25, tolerance, &|rng| eval(rng).map_or(f64::INFINITY, f))
    };
    vec![
        pick("chart_vs_homogeneous", cfg.tolerances.closed_form, |(a, b, _)| (a - b).abs()),
        pick("chart_vs_fd_pullback", cfg.tolerances.fd_agreement, |(a, _, c)| (a - c).abs()),
        pick("homogeneous_vs_fd_pullback", cfg.tolerances.fd_agreement, |(_, b, c)| (b - c).abs()),
    ]
}

/// `hp_moment = stratum_moment ∘ map_f` on the interior.
pub fn check_moment_consistency(cfg: &SampleConfig, exec: &dyn Executor) -> VerificationReport {
    check_defect("moment_consistency", cfg, exec, 26, cfg.tolerances.moment, &|rng| {
        let z = random_hp(rng, cfg.n);
        let (a, x) = hp_moment(&z);
        map_f(&z).map_or(f64::INFINITY, |p| {
            let (b, y) = stratum_moment(&p);
            a.max_abs_diff(&b).max(x.max_abs_diff(&y))
        })
    })
}

/// `hp_moment([1, 0, …, 0]) = (I, 0)`.
pub fn check_moment_at_vertex(n: usize) -> VerificationReport {
    let (a, x) = hp_moment(&HPPoint::basis(n, 0));
    let r = a.max_abs_diff(&GroupElement::identity(n)).max(x.max_abs_diff(&TorusCoordinates::zero(n)));
    VerificationReport::from_residuals("moment_at_vertex", vec![r], tol::MOMENT_AT_VERTEX)
}

/// Gap ratios of `hp_omega` and `hp_moment` along rays into both boundary
/// faces (`|Z_1|` resp. `|Z_tail|` = `10⁻³ … 10⁻⁶`); shrinking gaps give
/// ratios below one. Smooth limits give ratios near `0.1`; about one ray in
/// a thousand has a first-order term small enough that the `10⁻³` step is
/// not yet asymptotic.
pub fn check_cauchy_scans(cfg: &SampleConfig, exec: &dyn Executor) -> VerificationReport {
    let eps = [1e-3, 1e-4, 1e-5, 1e-6];
    check_defect("cauchy_scans", cfg, exec, 27, tol::CAUCHY_RATIO, &|rng| {
        let n = cfg.n;
        let u = random_unit_quaternion(rng);
        let head = random_unit_quaternion(rng);
        let tail = random_unit_vector(rng, n);
        let x = AlgebraElement::random(rng, n + 1, 1.0);
        let y = AlgebraElement::random(rng, n + 1, 1.0);
        let to_z1 = |e: f64| {
            let mut z = vec![u * e];
            z.extend(tail.iter().copied());
            z
        };
        let to_tail = |e: f64| {
            let mut z = vec![head];
            z.extend(tail.iter().map(|q| *q * e));
            z
        };
        let mut worst = 0.0f64;
        for ray in [&to_z1 as &dyn Fn(f64) -> Vec<Quaternion>, &to_tail] {
            let scans = [omega_cauchy_scan(ray, &x, &y, &eps).map(|s| s.1), moment_cauchy_scan(ray, &eps)];
            for s in scans {
                let Ok(s) = s else { return f64::INFINITY };
                for g in s.gaps.windows(2) {
                    worst = worst.max(if g[0] > 0.0 { g[1] / g[0] } else { f64::INFINITY });
                }
            }
        }
        worst
    })
}

/// Closed-form and FD columns of the coefficient scan on `t ∈ [0.2, 5]`.
pub fn check_boundary_scan(cfg: &SampleConfig) -> VerificationReport {
    let ts: Vec<f64> = (0..=24).map(|k| 0.2 * libm::pow(25.0, k as f64 / 24.0)).collect();
    let residuals = match boundary_coefficient_scan(&ts, cfg.h_first) {
        Ok(rows) => rows.iter().map(|r| (r.closed_form - r.fd).abs()).collect(),
        Err(_) => vec![f64::INFINITY],
    };
    VerificationReport::from_residuals("boundary_scan_agreement", residuals, cfg.tolerances.fd_agreement)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::Sequential;

    #[test]
    fn centralizers() {
        for n in 1..=3 {
            assert!(check_centralizer_dimensions(n).pass);
        }
    }

    #[test]
    fn hp_checks_pass_for_small_runs() {
        for n in 1..=3 {
            let cfg = SampleConfig::new(n, 10, 5);
            let mut reports = vec![
                check_roundtrip_stratum(&cfg, &Sequential),
                check_roundtrip_hp(&cfg, &Sequential),
                check_map_g_equivariance(&cfg, &Sequential),
                check_projective_invariance(&cfg, &Sequential),
                check_moment_consistency(&cfg, &Sequential),
                check_moment_at_vertex(n),
                check_cauchy_scans(&cfg, &Sequential),
                check_stratum_representatives(&cfg, &Sequential),
            ];
            reports.extend(check_triple_agreement(&cfg, &Sequential));
            for r in reports {
                assert!(r.pass, "n={n} {}: {}", r.name, r.max);
            }
        }
        assert!(check_boundary_scan(&SampleConfig::new(1, 1, 0)).pass);
    }

    #[test]
    fn substrate() {
        for r in check_substrate(&SampleConfig::new(1, 1, 3), &Sequential) {
            assert!(r.pass, "{}: {}", r.name, r.max);
        }
    }
}
