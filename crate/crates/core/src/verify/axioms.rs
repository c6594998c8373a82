use alloc::vec::Vec;

use super::calculus::{fd_d2form, fd_differential, random_frame_vector};
use super::{Executor, SampleConfig, SubspaceComparison, VerificationReport};
use crate::liegroup::{adjoint, adjoint_matrix, cartan_three_form, AlgebraElement};
use crate::linalg::{kernel_abs, kernel_rel, svd, DMatrix};
use crate::space::{Factor, QHSpace};
use crate::tol;

/// `|dω + Φ*χ|` on random unit frame triples at random points.
pub fn check_axiom_one<S: QHSpace>(space: &S, cfg: &SampleConfig, exec: &dyn Executor) -> VerificationReport {
    let residuals = exec.run(cfg.samples, &|i| {
        let mut rng = cfg.rng(1, i);
        let p = space.random_point(&mut rng);
        let k = space.frame_dim();
        let (x, y, z) =
            (random_frame_vector(&mut rng, k), random_frame_vector(&mut rng, k), random_frame_vector(&mut rng, k));
        let d = fd_d2form(space, &p, &x, &y, &z, cfg.h);
        let (dx, dy, dz) =
            (space.moment_differential(&p, &x), space.moment_differential(&p, &y), space.moment_differential(&p, &z));
        let chi: f64 = (0..dx.len()).map(|f| cartan_three_form(&dx[f], &dy[f], &dz[f]).expect("rank")).sum();
        (d + chi).abs()
    });
    VerificationReport::from_residuals("axiom_one", residuals, cfg.tolerances.axiom_one)
}

/// `|ω(ξ_M, w) − ½ Σ_f (θ_L + θ_R)(dΦ_f(w)) · ξ_f|` with `dΦ` by finite
/// differences.
pub fn check_axiom_three<S: QHSpace>(space: &S, cfg: &SampleConfig, exec: &dyn Executor) -> VerificationReport {
    let residuals = exec.run(cfg.samples, &|i| {
        let mut rng = cfg.rng(3, i);
        let p = space.random_point(&mut rng);
        let xi: Vec<AlgebraElement> = space.factors().iter().map(|f| f.random_algebra(&mut rng)).collect();
        let w = random_frame_vector(&mut rng, space.frame_dim());
        let lhs = space.omega(&p, &space.fundamental(&p, &xi), &w);
        let phi = space.moment(&p);
        let dphi = fd_differential(space, &p, &w, cfg.h_first);
        let rhs: f64 = (0..xi.len())
            .map(|f| {
                let right = adjoint(&phi[f], &dphi[f]).expect("rank");
                0.5 * (&dphi[f] + &right).ip(&xi[f])
            })
            .sum();
        (lhs - rhs).abs()
    });
    VerificationReport::from_residuals("axiom_three", residuals, cfg.tolerances.axiom_three)
}

/// Orthonormal basis of the column span, dropping directions below
/// `1e-8 · max(1, σ_max)`.
fn span(a: &DMatrix) -> DMatrix {
    if a.cols() == 0 {
        return a.clone();
    }
    let d = svd(a);
    let cutoff = tol::KERNEL_RELATIVE * d.s[0].max(1.0);
    let cols: Vec<Vec<f64>> = (0..a.cols()).filter(|&k| d.s[k] > cutoff).map(|k| d.u.column(k)).collect();
    DMatrix::from_columns(a.rows(), &cols)
}

/// `ker ω_p` versus `{ξ_M | ξ ∈ ker(Ad_{Φ(p)} + 1)}` at `p`.
pub fn kernel_comparison<S: QHSpace>(space: &S, p: &S::Point) -> SubspaceComparison {
    let basis = space.tangent_basis(p);
    let m = basis.len();
    let amb: Vec<Vec<f64>> = basis.iter().map(|b| space.tangent_coords(p, b)).collect();
    let rows = space.tangent_coords(p, &alloc::vec![0.0; space.frame_dim()]).len();
    let tangent = DMatrix::from_columns(rows, &amb);
    let gram = DMatrix::from_fn(m, m, |i, j| space.omega(p, &basis[i], &basis[j]));
    let k1 = span(&tangent.matmul(&kernel_rel(&gram, tol::KERNEL_RELATIVE)));

    let factors = space.factors();
    let phi = space.moment(p);
    let mut cols = Vec::new();
    for (f, factor) in factors.iter().enumerate() {
        let Factor::Group(n) = *factor else { continue };
        let mut a = adjoint_matrix(&phi[f]);
        for k in 0..a.rows() {
            a[(k, k)] += 1.0;
        }
        let ker = kernel_abs(&a, tol::CENTRALIZER_SVD);
        for c in ker.columns() {
            let xi: Vec<AlgebraElement> = factors
                .iter()
                .enumerate()
                .map(|(g, fac)| if g == f { AlgebraElement::from_coords(n, &c) } else { fac.zero_algebra() })
                .collect();
            cols.push(space.tangent_coords(p, &space.fundamental(p, &xi)));
        }
    }
    let k2 = span(&DMatrix::from_columns(rows, &cols));
    SubspaceComparison::new(&k1, &k2)
}

/// Kernel comparison on random samples followed by the special points.
pub fn check_axiom_two<S: QHSpace>(space: &S, cfg: &SampleConfig, exec: &dyn Executor) -> VerificationReport {
    let special = space.special_points();
    let residuals = exec.run(cfg.samples + special.len(), &|i| {
        let p = if i < cfg.samples { space.random_point(&mut cfg.rng(2, i)) } else { special[i - cfg.samples].clone() };
        kernel_comparison(space, &p).max_angle()
    });
    VerificationReport::from_residuals("axiom_two", residuals, cfg.tolerances.axiom_two)
}

/// `Φ(k·p) = k Φ(p) k⁻¹` factorwise.
pub fn check_moment_equivariance<S: QHSpace>(space: &S, cfg: &SampleConfig, exec: &dyn Executor) -> VerificationReport {
    let residuals = exec.run(cfg.samples, &|i| {
        let mut rng = cfg.rng(4, i);
        let p = space.random_point(&mut rng);
        let k: Vec<_> = space.factors().iter().map(|f| f.random_element(&mut rng)).collect();
        let lhs = space.moment(&space.act(&k, &p));
        let rhs = space.moment(&p);
        lhs.iter().zip(&rhs).zip(&k).fold(0.0f64, |m, ((a, b), g)| m.max(a.max_abs_diff(&(&(g * b) * &g.inverse()))))
    });
    VerificationReport::from_residuals("moment_equivariance", residuals, cfg.tolerances.equivariance)
}

/// `ω_{k·p}(k_*v, k_*w) = ω_p(v, w)`.
pub fn check_omega_invariance<S: QHSpace>(space: &S, cfg: &SampleConfig, exec: &dyn Executor) -> VerificationReport {
    let residuals = exec.run(cfg.samples, &|i| {
        let mut rng = cfg.rng(5, i);
        let p = space.random_point(&mut rng);
        let k: Vec<_> = space.factors().iter().map(|f| f.random_element(&mut rng)).collect();
        let (v, w) =
            (random_frame_vector(&mut rng, space.frame_dim()), random_frame_vector(&mut rng, space.frame_dim()));
        let q = space.act(&k, &p);
        (space.omega(&q, &space.transport(&k, &p, &v), &space.transport(&k, &p, &w)) - space.omega(&p, &v, &w)).abs()
    });
    VerificationReport::from_residuals("omega_invariance", residuals, cfg.tolerances.closed_form)
}

/// Closed-form moment differential against finite differences.
pub fn check_moment_differential<S: QHSpace>(space: &S, cfg: &SampleConfig, exec: &dyn Executor) -> VerificationReport {
    let residuals = exec.run(cfg.samples, &|i| {
        let mut rng = cfg.rng(6, i);
        let p = space.random_point(&mut rng);
        let v = random_frame_vector(&mut rng, space.frame_dim());
        let exact = space.moment_differential(&p, &v);
        let fd = fd_differential(space, &p, &v, cfg.h_first);
        exact.iter().zip(&fd).fold(0.0f64, |m, (a, b)| m.max(a.max_abs_diff(b)))
    });
    VerificationReport::from_residuals("moment_differential", residuals, cfg.tolerances.axiom_three)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liegroup::{GroupElement, TorusCoordinates};
    use crate::qspaces::{conjclass_make, fuse_double, DoublePoint, DoubleSpace};
    use crate::quat::Quaternion;
    use crate::verify::Sequential;

    #[test]
    fn double_kernels_at_special_points() {
        let s = DoubleSpace::new(1).unwrap();
        let vi = GroupElement::diagonal(&[Quaternion::I]).unwrap();
        let p = DoublePoint::new(GroupElement::identity(1), vi).unwrap();
        let c = kernel_comparison(&s, &p);
        assert_eq!((c.dim_a, c.dim_b), (4, 4));
        assert!(c.max_angle() < 1e-10);
        let mut rng = crate::sampling::sample_rng(111, 0);
        let c = kernel_comparison(&s, &s.random_point(&mut rng));
        assert_eq!((c.dim_a, c.dim_b), (0, 0));
        let minus = GroupElement::diagonal(&[-Quaternion::ONE]).unwrap();
        let c = kernel_comparison(&s, &DoublePoint::new(GroupElement::identity(1), minus).unwrap());
        assert_eq!((c.dim_a, c.dim_b), (0, 0));
    }

    #[test]
    fn double_passes_axioms() {
        let cfg = SampleConfig::new(1, 10, 7);
        let s = DoubleSpace::new(1).unwrap();
        for r in [
            check_axiom_one(&s, &cfg, &Sequential),
            check_axiom_two(&s, &cfg, &Sequential),
            check_axiom_three(&s, &cfg, &Sequential),
            check_moment_equivariance(&s, &cfg, &Sequential),
            check_omega_invariance(&s, &cfg, &Sequential),
            check_moment_differential(&s, &cfg, &Sequential),
        ] {
            assert!(r.pass, "{}: {}", r.name, r.max);
        }
    }

    #[test]
    fn class_and_fused_pass_axiom_one() {
        let cfg = SampleConfig::new(2, 5, 8);
        let c = conjclass_make(TorusCoordinates::new(alloc::vec![0.31, 0.12]).to_group());
        assert!(check_axiom_one(&c, &cfg, &Sequential).pass);
        let f = fuse_double(DoubleSpace::new(1).unwrap()).unwrap();
        assert!(check_axiom_three(&f, &cfg, &Sequential).pass);
    }
}
