//! Tolerances shared across the crate.
//!
//! Algebraic identities are held to [`ALGEBRA`], group membership to
//! [`MEMBERSHIP`]. Verification thresholds mirror the acceptance gates.

/// Exact algebraic identities (associativity, homomorphism, antisymmetry).
pub const ALGEBRA: f64 = 1e-12;

/// Membership of a matrix in `Sp(n)`.
pub const MEMBERSHIP: f64 = 1e-10;

/// Membership of a matrix in `sp(n)`.
pub const SKEW: f64 = 1e-12;

/// Complex-embedding unembed symmetry check.
pub const EMBED_SYMMETRY: f64 = 1e-10;

/// Singular-value threshold for centralizer kernels.
pub const CENTRALIZER_SVD: f64 = 1e-8;

/// Relative singular-value threshold for numeric kernels of 2-forms.
pub const KERNEL_RELATIVE: f64 = 1e-8;

/// Alcove wall activity.
pub const WALL: f64 = 1e-12;

/// Orthogonality of stratum tangents to `[g_σ, g_σ]`.
pub const COMMUTATOR_ORTHOGONALITY: f64 = 1e-10;

/// Horizontality / chart constraint of `HP^n` tangents.
pub const HORIZONTAL: f64 = 1e-10;

/// Unitarity guard for the closed-form coset representative table.
pub const F_TABLE_GUARD: f64 = 1e-8;

/// Relative distance from the boundary faces of `HP^n` below which points
/// count as boundary points for the closed-form moment differential.
pub const HP_BOUNDARY: f64 = 1e-6;

/// `hp_omega` switches to the boundary-limit forms below this distance;
/// the chart stays well conditioned down to it, while the limit forms carry
/// an `O(distance)` error.
pub const HP_CHART_FLOOR: f64 = 1e-12;

/// Default step for second-order exterior derivatives.
pub const FD_STEP_EXTERIOR: f64 = 1e-3;

/// Default step for first derivatives.
pub const FD_STEP_FIRST: f64 = 1e-5;

/// Axiom (i) residual gate.
pub const AXIOM_ONE: f64 = 1e-4;

/// Axiom (ii) maximal principal angle gate.
pub const AXIOM_TWO: f64 = 1e-6;

/// Axiom (iii) residual gate.
pub const AXIOM_THREE: f64 = 1e-5;

/// Equivariance and invariance identities.
pub const EQUIVARIANCE: f64 = 1e-10;

/// Roundtrips between the stratum closure and `HP^n`.
pub const ROUNDTRIP: f64 = 1e-10;

/// Agreement of two closed-form expressions of the same 2-form.
pub const CLOSED_FORM_AGREEMENT: f64 = 1e-8;

/// Agreement of a closed form with a finite-difference pullback.
pub const FD_AGREEMENT: f64 = 1e-4;

/// Agreement of two closed-form expressions of the moment map.
pub const MOMENT_AGREEMENT: f64 = 1e-8;

/// `hp_moment` at the point `[1, 0, …, 0]`.
pub const MOMENT_AT_VERTEX: f64 = 1e-6;

/// Largest ratio of successive gaps in a boundary Cauchy scan: gaps must
/// not grow.
pub const CAUCHY_RATIO: f64 = 1.0;
