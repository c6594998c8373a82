use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::axioms::{
    check_axiom_one, check_axiom_three, check_axiom_two, check_moment_differential, check_moment_equivariance,
    check_omega_invariance,
};
use super::checks::*;
use super::{Executor, SampleConfig, VerificationReport};
use crate::error::Result;
use crate::hpn::HpnSpace;
use crate::implosion::stratum_space;
use crate::liegroup::{AlcoveFace, TorusCoordinates};
use crate::qspaces::{conjclass_make, fuse_double, DoubleSpace};
use crate::space::QHSpace;

/// The space a verification suite runs on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpaceKind {
    Double,
    ConjClass,
    Fused,
    Stratum,
    Hpn,
}

impl SpaceKind {
    pub const ALL: [SpaceKind; 5] =
        [SpaceKind::Double, SpaceKind::ConjClass, SpaceKind::Fused, SpaceKind::Stratum, SpaceKind::Hpn];

    pub fn name(self) -> &'static str {
        match self {
            SpaceKind::Double => "double",
            SpaceKind::ConjClass => "conjclass",
            SpaceKind::Fused => "fused",
            SpaceKind::Stratum => "stratum",
            SpaceKind::Hpn => "hpn",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.name() == s)
    }
}

/// A convention resolution applied by the implementation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConformanceNote {
    pub key: &'static str,
    pub text: &'static str,
}

const NOTES: [ConformanceNote; 8] = [
    ConformanceNote {
        key: "map_g_orientation",
        text: "map_g uses first coordinate sqrt(1 - 2 x1) against sqrt(2 x1) g e1, so sigma0 maps to [1, 0, ..., 0], \
               sigma1 maps to [0, g e1] and map_f inverts map_g",
    },
    ConformanceNote {
        key: "torus_entry",
        text: "the torus coordinate x acts through exp(2 pi i x); on HP^n the first coordinate enters as \
               exp(-pi i lambda) with lambda = 2 x1",
    },
    ConformanceNote {
        key: "boundary_limit",
        text: "the dx13^dx14 chart coefficient sin(2 pi mu)/(lambda mu) tends to +2 pi as t -> 0 and to -2 pi as \
               t -> inf; the coefficient -2 sin(2 pi lambda)(t + 1/t) tends to 0 and does not match the FD pullback, \
               and no 4 pi limit is observed",
    },
    ConformanceNote {
        key: "generator_convention",
        text: "fundamental vector fields are xi_M = d/dt exp(t xi) x; with the opposite sign the \
               contraction axiom fails by an overall sign",
    },
    ConformanceNote {
        key: "chart_coefficients",
        text: "the chart 2-form is 2 pi dx11^dx12 + sin(2 pi mu)/(lambda mu) dx13^dx14 + 2 sin(pi lambda) \
               sum_p (dx_p1^dx_p2 - dx_p3^dx_p4), obtained by substitution and checked against the FD pullback",
    },
    ConformanceNote {
        key: "f_table_sign",
        text: "the explicit completion table is used with a minus sign in row q+2, which makes it unitary for \
               n >= 2; a Gram-Schmidt completion is the fallback",
    },
    ConformanceNote {
        key: "action_side",
        text: "the torus acts on HP^n by left multiplication t1 Z1, which is well defined on right H-lines",
    },
    ConformanceNote {
        key: "moment_phase",
        text: "the HP^n moment block is Z_tail u* [(exp(-i pi lambda) - 1)/lambda] u Z_tail* / N, matching \
               stratum_moment composed with map_f",
    },
];

/// Notes attached to reports on `kind`.
pub fn conformance_notes(kind: SpaceKind) -> Vec<ConformanceNote> {
    let keys: &[&str] = match kind {
        SpaceKind::Hpn => &[
            "map_g_orientation",
            "torus_entry",
            "boundary_limit",
            "generator_convention",
            "chart_coefficients",
            "f_table_sign",
            "action_side",
            "moment_phase",
        ],
        SpaceKind::Stratum => &["torus_entry", "generator_convention"],
        _ => &["generator_convention"],
    };
    NOTES.iter().filter(|n| keys.contains(&n.key)).cloned().collect()
}

/// Checks of one suite run.
#[derive(Clone, Debug, PartialEq)]
pub struct SuiteReport {
    pub suite: String,
    pub space: SpaceKind,
    pub n: usize,
    pub checks: Vec<VerificationReport>,
    pub conformance_notes: Vec<ConformanceNote>,
}

impl SuiteReport {
    fn new(suite: &str, space: SpaceKind, n: usize, checks: Vec<VerificationReport>) -> Self {
        Self { suite: suite.into(), space, n, checks, conformance_notes: conformance_notes(space) }
    }

    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn check(&self, name: &str) -> Option<&VerificationReport> {
        self.checks.iter().find(|c| c.name == name)
    }
}

fn generic_torus(n: usize) -> TorusCoordinates {
    TorusCoordinates::new((0..n).map(|k| 0.37 - 0.11 * k as f64).collect())
}

fn axiom_checks<S: QHSpace>(space: &S, cfg: &SampleConfig, exec: &dyn Executor) -> Vec<VerificationReport> {
    vec![
        check_axiom_one(space, cfg, exec),
        check_axiom_two(space, cfg, exec),
        check_axiom_three(space, cfg, exec),
        check_moment_equivariance(space, cfg, exec),
        check_omega_invariance(space, cfg, exec),
        check_moment_differential(space, cfg, exec),
    ]
}

/// The three-axiom suite with equivariance, invariance and moment
/// differential checks on `kind`, plus the space-specific checks.
pub fn verify_suite(kind: SpaceKind, cfg: &SampleConfig, exec: &dyn Executor) -> Result<SuiteReport> {
    cfg.validate()?;
    let n = cfg.n;
    let mut checks = check_substrate(cfg, exec);
    match kind {
        SpaceKind::Double => checks.extend(axiom_checks(&DoubleSpace::new(n)?, cfg, exec)),
        SpaceKind::ConjClass => {
            checks.extend(axiom_checks(&conjclass_make(generic_torus(n).to_group()), cfg, exec));
        }
        SpaceKind::Fused => checks.extend(axiom_checks(&fuse_double(DoubleSpace::new(n)?)?, cfg, exec)),
        SpaceKind::Stratum => {
            checks.extend(axiom_checks(&stratum_space(AlcoveFace::sigma01(n))?, cfg, exec));
            checks.push(check_stratum_representatives(cfg, exec));
            checks.push(check_centralizer_dimensions(n));
        }
        SpaceKind::Hpn => {
            checks.extend(axiom_checks(&HpnSpace::new(n)?, cfg, exec));
            checks.extend(check_triple_agreement(cfg, exec));
            checks.push(check_moment_consistency(cfg, exec));
            checks.push(check_moment_at_vertex(n));
            checks.push(check_cauchy_scans(cfg, exec));
            checks.push(check_boundary_scan(cfg));
        }
    }
    Ok(SuiteReport::new("verify", kind, n, checks))
}

/// Roundtrips, `map_g` equivariance and projective well-definedness.
pub fn roundtrip_suite(cfg: &SampleConfig, exec: &dyn Executor) -> Result<SuiteReport> {
    cfg.validate()?;
    let checks = vec![
        check_roundtrip_stratum(cfg, exec),
        check_roundtrip_hp(cfg, exec),
        check_map_g_equivariance(cfg, exec),
        check_projective_invariance(cfg, exec),
    ];
    Ok(SuiteReport::new("roundtrip", SpaceKind::Hpn, cfg.n, checks))
}

/// Chart, homogeneous and FD-pullback agreement of the `HP^n` 2-form.
pub fn forms_suite(cfg: &SampleConfig, exec: &dyn Executor) -> Result<SuiteReport> {
    cfg.validate()?;
    Ok(SuiteReport::new("forms", SpaceKind::Hpn, cfg.n, check_triple_agreement(cfg, exec)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::Sequential;

    #[test]
    fn notes_cover_required_keys() {
        let keys: Vec<_> = conformance_notes(SpaceKind::Hpn).iter().map(|n| n.key).collect();
        for k in ["map_g_orientation", "torus_entry", "boundary_limit"] {
            assert!(keys.contains(&k));
        }
        assert_eq!(conformance_notes(SpaceKind::Double).len(), 1);
        for k in SpaceKind::ALL {
            assert_eq!(SpaceKind::parse(k.name()), Some(k));
        }
    }

    #[test]
    fn small_suites_pass() {
        let cfg = SampleConfig::new(1, 4, 9);
        for kind in SpaceKind::ALL {
            let r = verify_suite(kind, &cfg, &Sequential).unwrap();
            for c in &r.checks {
                assert!(c.pass, "{}: {} {}", kind.name(), c.name, c.max);
            }
        }
        assert!(roundtrip_suite(&cfg, &Sequential).unwrap().pass());
        assert!(forms_suite(&cfg, &Sequential).unwrap().pass());
        assert!(verify_suite(SpaceKind::Double, &SampleConfig::new(0, 4, 9), &Sequential).is_err());
    }
}
