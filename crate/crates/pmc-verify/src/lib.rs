//! Verification engine for surfaces with parallel mean curvature vector
//! (pmc surfaces) immersed in product spaces M^n(c) × ℝ.
//!
//! The ambient space M^n(c) × ℝ is realized as a quadric-times-line inside a
//! flat (possibly Lorentzian) ℝ^{n+2}, and every geometric quantity of an
//! immersed surface — fundamental forms, shape operators, the tangent/normal
//! split of the vertical direction ξ, traceless second fundamental form,
//! Laplacians and covariant-derivative norms — is computed pointwise in exact
//! truncated-Taylor ("jet") arithmetic. On top of that state the crate
//! evaluates Simons-type identities as scale-normalized residuals and checks
//! the hypotheses and conclusions of gap/classification theorems for pmc
//! surfaces against a catalog of closed-form model surfaces.
//!
//! Module map:
//!
//! * [`jet`] — bivariate truncated Taylor arithmetic (the derivative substrate)
//! * [`ambient`] — space forms, the product space, signature inner products,
//!   the ambient curvature tensor and tangent projections
//! * [`surface`] — immersions and the full pointwise geometric state
//! * [`catalog`] — closed-form model surfaces with expected values
//! * [`identities`] — residual evaluation of the proved identities
//! * [`gates`] — hypothesis/conclusion checks for the classification theorems
//! * [`report`] — deterministic JSON/CSV/text report emission
//! * [`cli`] — the `pmc-verify` command-line front end

pub mod ambient;
pub mod catalog;
pub mod cli;
pub mod gates;
pub mod identities;
pub mod jet;
pub mod report;
pub mod surface;
pub mod thresholds;

pub use ambient::{AmbientError, ProductSpace, SpaceForm};
pub use catalog::{list_catalog, make_surface, CatalogError, CatalogSpec, ExpectedValues, Family};
pub use gates::{check_gate, GateConfig, GateReport, GateStatus, Theorem};
pub use identities::{
    evaluate_identity, run_suite, IdentityKind, IdentityReport, NormalDirection, SuiteConfig,
    SuiteResult,
};
pub use jet::{Jet, JetError};
pub use surface::{evaluate_state, GeometricState, GridSpec, Immersion, SurfaceError};
