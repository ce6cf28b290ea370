//! Numeric thresholds and tolerances used across the verification pipeline.
//!
//! Everything the crate compares against lives here, with the rationale for
//! each value, so that no check depends on an ad-hoc magic number.

/// Default retained total degree of the jets an immersion is evaluated at.
///
/// Laplacians of derived scalars (|φ|², |T|², …) consume two derivative
/// orders, and the derived scalars themselves consume two orders of the
/// immersion; degree 4 is the minimum that makes every Laplacian identity
/// computable pointwise.
pub const DEFAULT_JET_DEGREE: usize = 4;

/// Constant terms below this magnitude make a jet a singular denominator.
///
/// Signals a degenerate chart point rather than a numerical accident:
/// legitimate denominators in the pipeline (metric determinants, frame
/// norms) are O(1) on sane charts.
pub const DIV_EPSILON: f64 = 1e-12;

/// Absolute tolerance for quadric membership and tangency checks.
///
/// Double-precision projection noise is ~1e-14 on unit-scale data; 1e-9
/// leaves three orders of margin while still catching off-manifold inputs.
pub const TANGENCY_TOL: f64 = 1e-9;

/// Catalog surfaces must satisfy the quadric equation to this accuracy.
///
/// The closed-form parametrizations satisfy it up to rounding (~1e-16),
/// so 1e-12 is a strict but safe membership gate.
pub const QUADRIC_MEMBERSHIP_TOL: f64 = 1e-12;

/// Minimum Gram determinant of the coordinate tangent vectors.
///
/// Below this the chart point is treated as a degenerate immersion point.
pub const GRAM_DET_THRESHOLD: f64 = 1e-10;

/// |H| below this is a minimal point; operations needing φ_H refuse to
/// divide by |H| and report `MinimalPoint` instead.
pub const MINIMAL_H_THRESHOLD: f64 = 1e-10;

/// Squared-norm threshold for accepting a Gram–Schmidt candidate axis when
/// completing the normal frame. Axes whose projection onto the remaining
/// normal space is shorter than this are skipped.
pub const FRAME_PROJECTION_THRESHOLD: f64 = 1e-4;

/// A surface point counts as pmc when the normal-connection residual of H
/// is below this. Catalog pmc surfaces sit near 1e-13; the perturbed
/// negative control exceeds 1e-3, so 1e-8 separates them cleanly.
pub const PMC_RESIDUAL_TOL: f64 = 1e-8;

/// Default residual tolerance for the identity suite.
pub const IDENTITY_TOL: f64 = 1e-7;

/// Agreement required between the two printed forms of the Δ|φ|² identity,
/// and for other paired-route term cross-checks.
pub const CROSSCHECK_TOL: f64 = 1e-10;

/// Golden-value tolerance: closed-form expected values vs the evaluated
/// geometric state on catalog surfaces.
pub const GOLDEN_TOL: f64 = 1e-9;

/// Relative tolerance when matching an observed quantity to a theorem's
/// equality case.
pub const EQUALITY_CASE_REL_TOL: f64 = 1e-7;

/// Step for central finite differences in the derivative oracle.
pub const FD_STEP: f64 = 1e-4;

/// Scaled agreement required between jet partials and the central-difference
/// oracle: |jet − fd| ≤ FD_REL_TOL · (1 + max(|jet|, |fd|)).
pub const FD_REL_TOL: f64 = 1e-5;
