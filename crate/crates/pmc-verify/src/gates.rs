//! Hypothesis and conclusion checks for the classification theorems.
//!
//! A gate takes a sampled surface, verifies the theorem's numerical
//! hypotheses (margins are exact minima over the sample grid — "sup over
//! the surface" is approximated by the grid and reported as such), and
//! matches the observed state against the theorem's conclusion cases:
//!
//! * `Sphere2` — pmc 2-spheres: either a minimal surface in a totally
//!   umbilical hypersurface of M^n(c) or a standard sphere in M³(c);
//! * `GapCneg` — complete nonminimal pmc, c < 0, pinched |φ|²: round sphere;
//! * `GapCpos` — complete nonminimal pmc, c > 0, pinched |φ|²: ξ is normal
//!   and the surface is a round sphere (|φ|² = 0) or the torus case
//!   |φ|² = 2|H|² + 2c;
//! * `GapMain` — the sharper c > 0 gap with the |T|-branch hypotheses and
//!   the same two conclusion cases.
//!
//! Completeness and global topology cannot be checked numerically; they are
//! taken from the immersion metadata and echoed in the report as assumed.

// Index loops below mirror the tensor-index notation of the formulas.
#![allow(clippy::needless_range_loop)]

use rayon::prelude::*;

use crate::surface::{evaluate_state, GridSpec, Immersion, SurfaceError, Topology};
use crate::thresholds::{
    DEFAULT_JET_DEGREE, EQUALITY_CASE_REL_TOL, IDENTITY_TOL, PMC_RESIDUAL_TOL,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Theorem {
    /// The pmc 2-sphere theorem (both curvature signs).
    Sphere2,
    /// The c < 0 gap theorem.
    GapCneg,
    /// The c > 0 gap theorem with the ⟨φ(T,T),H⟩ ≤ 0 hypothesis.
    GapCpos,
    /// The main c > 0 gap theorem with the |T|-branch hypotheses.
    GapMain,
}

impl Theorem {
    pub const ALL: [Theorem; 4] = [
        Theorem::Sphere2,
        Theorem::GapCneg,
        Theorem::GapCpos,
        Theorem::GapMain,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Theorem::Sphere2 => "sphere2",
            Theorem::GapCneg => "gap-cneg",
            Theorem::GapCpos => "gap-cpos",
            Theorem::GapMain => "gap-main",
        }
    }

    pub fn parse(name: &str) -> Option<Theorem> {
        Theorem::ALL.into_iter().find(|t| t.name() == name)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct GateConfig {
    pub grid: GridSpec,
    pub degree: usize,
    /// Slack tolerance when testing non-strict hypothesis inequalities.
    pub tol: f64,
    /// Applicability threshold on the pmc residual.
    pub pmc_tol: f64,
    /// Relative tolerance for matching a conclusion equality case.
    pub equality_rel_tol: f64,
}

impl Default for GateConfig {
    fn default() -> Self {
        GateConfig {
            grid: GridSpec::default(),
            degree: DEFAULT_JET_DEGREE,
            tol: IDENTITY_TOL,
            pmc_tol: PMC_RESIDUAL_TOL,
            equality_rel_tol: EQUALITY_CASE_REL_TOL,
        }
    }
}

/// Range of an observed quantity over the sample grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MinMax {
    pub min: f64,
    pub max: f64,
}

impl MinMax {
    fn of(values: impl IntoIterator<Item = f64>) -> MinMax {
        let mut min = f64::INFINITY;
        let mut max = f64::NEG_INFINITY;
        for v in values {
            min = min.min(v);
            max = max.max(v);
        }
        MinMax { min, max }
    }
}

/// Measured quantities and equality-case flags.
#[derive(Debug, Clone, PartialEq)]
pub struct Observed {
    pub phi2: MinMax,
    pub t2: MinMax,
    pub h_norm: MinMax,
    pub sigma2: MinMax,
    pub pmc_residual_max: f64,
    /// |φ|² = 0 within tolerance.
    pub umbilical: bool,
    /// |φ|² = 2|H|² + 2c within tolerance.
    pub gap_equality: bool,
    /// |T|² = 0 within tolerance (ξ normal to the surface).
    pub xi_normal: bool,
}

/// Global hypotheses taken on trust from the immersion metadata.
#[derive(Debug, Clone, PartialEq)]
pub struct Assumptions {
    pub complete: bool,
    pub topology: &'static str,
}

#[derive(Debug, Clone, PartialEq)]
pub enum GateStatus {
    /// The theorem does not speak about this surface (wrong curvature sign,
    /// minimal surface for the nonminimal theorems, wrong topology).
    NotApplicable { reason: String },
    /// The surface fails the pmc precondition; this is a verification
    /// failure, not an inapplicability.
    PmcViolated { max_residual: f64 },
    Evaluated {
        /// Named hypothesis slacks, minimized over the grid.
        margins: Vec<(String, f64)>,
        hypothesis_satisfied: bool,
        /// Alternative readings of an ambiguous hypothesis, when the
        /// statement admits more than one (the c < 0 sphere theorem).
        readings: Vec<(String, bool)>,
        predicted_case: String,
        /// False only when the hypotheses hold but no conclusion case
        /// matches the observed state — which would falsify the theorem.
        conclusion_consistent: bool,
        observed: Observed,
        assumed: Assumptions,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct GateReport {
    pub theorem: Theorem,
    pub surface: String,
    pub status: GateStatus,
}

impl GateReport {
    /// True when the gate found an actual inconsistency: a pmc violation or
    /// a satisfied hypothesis whose conclusion matches no case.
    pub fn verification_failed(&self) -> bool {
        match &self.status {
            GateStatus::NotApplicable { .. } => false,
            GateStatus::PmcViolated { .. } => true,
            GateStatus::Evaluated {
                conclusion_consistent,
                ..
            } => !conclusion_consistent,
        }
    }
}

struct PointSample {
    phi2: f64,
    t2: f64,
    h_norm: f64,
    h2: f64,
    sigma2: f64,
    phi_tt_h: f64,
    pmc_residual: f64,
    minimal: bool,
}

fn sample_grid(im: &Immersion, config: &GateConfig) -> Result<Vec<PointSample>, SurfaceError> {
    config
        .grid
        .points(&im.domain)
        .par_iter()
        .map(|&point| {
            let state = evaluate_state(im, point, config.degree)?;
            let tau = state.t_frame_at();
            let ah = state.shape_in_direction_frame(&state.mean_curvature_at());
            let phi_tt_h = tau[0] * (ah[0][0] * tau[0] + ah[0][1] * tau[1])
                + tau[1] * (ah[1][0] * tau[0] + ah[1][1] * tau[1])
                - state.t2_value() * state.h2_value();
            Ok(PointSample {
                phi2: state.phi2_value(),
                t2: state.t2_value(),
                h_norm: state.h_norm_value(),
                h2: state.h2_value(),
                sigma2: state.sigma2_value(),
                phi_tt_h,
                pmc_residual: state.pmc_residual()?,
                minimal: state.minimal(),
            })
        })
        .collect()
}

fn observe(samples: &[PointSample], c: f64, eq_tol: f64) -> Observed {
    let phi2 = MinMax::of(samples.iter().map(|s| s.phi2));
    let t2 = MinMax::of(samples.iter().map(|s| s.t2));
    let h_norm = MinMax::of(samples.iter().map(|s| s.h_norm));
    let sigma2 = MinMax::of(samples.iter().map(|s| s.sigma2));
    let pmc_residual_max = samples
        .iter()
        .map(|s| s.pmc_residual)
        .fold(0.0f64, f64::max);
    let gap_target = 2.0 * h_norm.max * h_norm.max + 2.0 * c;
    let gap_deviation = samples
        .iter()
        .map(|s| (s.phi2 - (2.0 * s.h2 + 2.0 * c)).abs())
        .fold(0.0f64, f64::max);
    Observed {
        phi2,
        t2,
        h_norm,
        sigma2,
        pmc_residual_max,
        umbilical: phi2.max.abs() <= eq_tol * (1.0 + sigma2.max),
        gap_equality: gap_deviation <= eq_tol * (1.0 + gap_target.abs()),
        xi_normal: t2.max.abs() <= eq_tol,
    }
}

/// Evaluates one classification theorem on a sampled surface.
pub fn check_gate(
    theorem: Theorem,
    im: &Immersion,
    config: &GateConfig,
) -> Result<GateReport, SurfaceError> {
    let c = im.space.curvature();
    let not_applicable = |reason: String| GateReport {
        theorem,
        surface: im.name.clone(),
        status: GateStatus::NotApplicable { reason },
    };

    match theorem {
        Theorem::GapCneg if c >= 0.0 => {
            return Ok(not_applicable(format!("requires c < 0, surface has c = {c}")));
        }
        Theorem::GapCpos | Theorem::GapMain if c <= 0.0 => {
            return Ok(not_applicable(format!("requires c > 0, surface has c = {c}")));
        }
        Theorem::Sphere2 if c == 0.0 => {
            return Ok(not_applicable("requires c != 0".into()));
        }
        Theorem::Sphere2 if im.topology != Topology::Sphere => {
            return Ok(not_applicable(format!(
                "stated for 2-spheres; surface topology is {}",
                im.topology.name()
            )));
        }
        _ => {}
    }

    let samples = sample_grid(im, config)?;
    let observed = observe(&samples, c, config.equality_rel_tol);
    let assumed = Assumptions {
        complete: im.complete,
        topology: im.topology.name(),
    };

    if observed.pmc_residual_max > config.pmc_tol {
        return Ok(GateReport {
            theorem,
            surface: im.name.clone(),
            status: GateStatus::PmcViolated {
                max_residual: observed.pmc_residual_max,
            },
        });
    }
    let any_minimal = samples.iter().any(|s| s.minimal);
    if any_minimal && theorem != Theorem::Sphere2 {
        return Ok(not_applicable("minimal surface; theorem requires nonminimal pmc".into()));
    }

    let tol = config.tol;
    let min_of = |f: &dyn Fn(&PointSample) -> f64| -> f64 {
        samples.iter().map(f).fold(f64::INFINITY, f64::min)
    };

    let status = match theorem {
        Theorem::GapCneg => {
            let margin_phi = min_of(&|s| 2.0 * s.h2 + c * (4.0 - 5.0 * s.t2) - s.phi2);
            let margin_tt = min_of(&|s| s.phi_tt_h);
            // the |φ|² bound is strict in the statement
            let satisfied = margin_phi > 0.0 && margin_tt >= -tol;
            let (case, consistent) = if !satisfied {
                ("hypothesis violated".to_string(), true)
            } else if observed.umbilical {
                (
                    "case: |phi|^2 = 0, round sphere in M^3(c)".to_string(),
                    true,
                )
            } else {
                ("no conclusion case matched within tolerance".to_string(), false)
            };
            GateStatus::Evaluated {
                margins: vec![
                    ("2|H|^2+c(4-5|T|^2) - |phi|^2".into(), margin_phi),
                    ("<phi(T.T).H>".into(), margin_tt),
                ],
                hypothesis_satisfied: satisfied,
                readings: Vec::new(),
                predicted_case: case,
                conclusion_consistent: consistent,
                observed,
                assumed,
            }
        }
        Theorem::GapCpos => {
            let margin_phi = min_of(&|s| 2.0 * s.h2 + c * (2.0 - 3.0 * s.t2) - s.phi2);
            let margin_tt = min_of(&|s| -s.phi_tt_h);
            let satisfied = margin_phi >= -tol && margin_tt >= -tol;
            let (case, consistent) = gap_conclusion(satisfied, &observed);
            GateStatus::Evaluated {
                margins: vec![
                    ("2|H|^2+c(2-3|T|^2) - |phi|^2".into(), margin_phi),
                    ("-<phi(T.T).H>".into(), margin_tt),
                ],
                hypothesis_satisfied: satisfied,
                readings: Vec::new(),
                predicted_case: case,
                conclusion_consistent: consistent,
                observed,
                assumed,
            }
        }
        Theorem::GapMain => {
            let margin_phi = min_of(&|s| 2.0 * s.h2 + 2.0 * c - 2.5 * c * s.t2 - s.phi2);
            let branch_a = observed.t2.max <= tol;
            let margin_b_t = observed.t2.min - 2.0 / 3.0;
            let margin_b_h =
                min_of(&|s| (3.0 * s.t2 - 2.0) * s.h2 - c * s.t2 * (1.0 - s.t2));
            let branch_b = margin_b_t > 0.0 && margin_b_h >= -tol;
            let satisfied = margin_phi >= -tol && (branch_a || branch_b);
            let (case, consistent) = gap_conclusion(satisfied, &observed);
            GateStatus::Evaluated {
                margins: vec![
                    ("2|H|^2+2c-(5c/2)|T|^2 - |phi|^2".into(), margin_phi),
                    ("branch a: -|T|^2".into(), -observed.t2.max),
                    ("branch b: |T|^2 - 2/3".into(), margin_b_t),
                    (
                        "branch b: (3|T|^2-2)|H|^2 - c|T|^2(1-|T|^2)".into(),
                        margin_b_h,
                    ),
                ],
                hypothesis_satisfied: satisfied,
                readings: vec![
                    ("branch a: |T| = 0".into(), branch_a),
                    ("branch b: |T|^2 > 2/3 with |H|^2 bound".into(), branch_b),
                ],
                predicted_case: case,
                conclusion_consistent: consistent,
                observed,
                assumed,
            }
        }
        Theorem::Sphere2 => {
            let margin_sigma = min_of(&|s| c * (2.0 - 3.0 * s.t2) - s.sigma2);
            let (satisfied, margins, readings) = if c > 0.0 {
                let margin_t = 2.0 / 3.0 - observed.t2.max;
                (
                    margin_t >= -tol && margin_sigma >= -tol,
                    vec![
                        ("2/3 - |T|^2".into(), margin_t),
                        ("c(2-3|T|^2) - |sigma|^2".into(), margin_sigma),
                    ],
                    Vec::new(),
                )
            } else {
                // c < 0: the statement "(|T|²=0 or |T|²≥2/3) and bound" is
                // ambiguous about whether the bound applies to the |T|²=0
                // alternative; both readings are evaluated and reported.
                let t_alternative = samples
                    .iter()
                    .all(|s| s.t2 <= tol || s.t2 >= 2.0 / 3.0 - tol);
                let bound_everywhere = margin_sigma >= -tol;
                let reading_a = t_alternative && bound_everywhere;
                let reading_b = samples.iter().all(|s| {
                    s.t2 <= tol
                        || (s.t2 >= 2.0 / 3.0 - tol
                            && c * (2.0 - 3.0 * s.t2) - s.sigma2 >= -tol)
                });
                (
                    reading_a || reading_b,
                    vec![("c(2-3|T|^2) - |sigma|^2".into(), margin_sigma)],
                    vec![
                        (
                            "reading A: (|T|^2=0 or |T|^2>=2/3) and bound everywhere".into(),
                            reading_a,
                        ),
                        (
                            "reading B: |T|^2=0, or |T|^2>=2/3 with the bound".into(),
                            reading_b,
                        ),
                    ],
                )
            };
            let (case, consistent) = if !satisfied {
                ("hypothesis violated".to_string(), true)
            } else if any_minimal {
                (
                    "minimal surface in a totally umbilical hypersurface of M^n(c)".to_string(),
                    true,
                )
            } else if observed.umbilical {
                ("standard sphere in M^3(c)".to_string(), true)
            } else {
                ("no conclusion case matched within tolerance".to_string(), false)
            };
            GateStatus::Evaluated {
                margins,
                hypothesis_satisfied: satisfied,
                readings,
                predicted_case: case,
                conclusion_consistent: consistent,
                observed,
                assumed,
            }
        }
    };

    Ok(GateReport {
        theorem,
        surface: im.name.clone(),
        status,
    })
}

/// Conclusion matching shared by the two c > 0 gap theorems.
fn gap_conclusion(satisfied: bool, observed: &Observed) -> (String, bool) {
    if !satisfied {
        return ("hypothesis violated".to_string(), true);
    }
    if !observed.xi_normal {
        return (
            "conclusion violated: xi is not normal to the surface".to_string(),
            false,
        );
    }
    if observed.umbilical {
        (
            "case (1): |phi|^2 = 0, round sphere in M^3(c)".to_string(),
            true,
        )
    } else if observed.gap_equality {
        (
            "case (2): |phi|^2 = 2|H|^2+2c, torus S^1(r) x S^1(sqrt(1/c - r^2)) in M^3(c)"
                .to_string(),
            true,
        )
    } else {
        (
            "no conclusion case matched within tolerance".to_string(),
            false,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{make_surface, CatalogSpec, Family};
    use std::f64::consts::PI;

    fn gate(theorem: Theorem, family: Family, c: f64, param: Option<f64>) -> GateReport {
        let (im, _) = make_surface(&CatalogSpec::new(family, c, param)).unwrap();
        check_gate(theorem, &im, &GateConfig::default()).unwrap()
    }

    #[test]
    fn gap_main_is_sharp_on_the_clifford_torus() {
        let report = gate(Theorem::GapMain, Family::CliffordTorus, 1.0, Some(0.6));
        assert!(!report.verification_failed());
        match &report.status {
            GateStatus::Evaluated {
                margins,
                hypothesis_satisfied,
                predicted_case,
                observed,
                ..
            } => {
                assert!(hypothesis_satisfied);
                // the pinching bound is attained: the first margin is 0
                let (name, value) = &margins[0];
                assert!(name.contains("2|H|^2+2c"));
                assert!(value.abs() <= 1e-9, "sharpness margin {value:e}");
                assert!(predicted_case.contains("case (2)"));
                assert!(observed.gap_equality);
                assert!(observed.xi_normal);
            }
            other => panic!("unexpected status {other:?}"),
        }
    }

    #[test]
    fn gap_cpos_agrees_on_the_torus() {
        let report = gate(Theorem::GapCpos, Family::CliffordTorus, 1.0, Some(0.6));
        match &report.status {
            GateStatus::Evaluated {
                hypothesis_satisfied,
                predicted_case,
                margins,
                ..
            } => {
                assert!(hypothesis_satisfied);
                assert!(margins[0].1.abs() <= 1e-9, "equality margin");
                assert!(predicted_case.contains("case (2)"));
            }
            other => panic!("unexpected status {other:?}"),
        }
    }

    #[test]
    fn round_sphere_lands_in_case_one() {
        let report = gate(Theorem::GapMain, Family::RoundSphere, 1.0, Some(PI / 4.0));
        match &report.status {
            GateStatus::Evaluated {
                hypothesis_satisfied,
                predicted_case,
                ..
            } => {
                assert!(hypothesis_satisfied);
                assert!(predicted_case.contains("case (1)"));
            }
            other => panic!("unexpected status {other:?}"),
        }
        assert!(!report.verification_failed());
    }

    #[test]
    fn horosphere_violates_the_cneg_hypothesis() {
        let report = gate(Theorem::GapCneg, Family::Horosphere, -1.0, None);
        match &report.status {
            GateStatus::Evaluated {
                margins,
                hypothesis_satisfied,
                predicted_case,
                observed,
                ..
            } => {
                // sup|φ|² = 0 is not below 2|H|² + 4c = −2
                assert!(!hypothesis_satisfied);
                assert!((margins[0].1 - (-2.0)).abs() <= 1e-9, "margin {}", margins[0].1);
                assert_eq!(predicted_case, "hypothesis violated");
                // flatness confirmed: the surface is umbilical with K = 0
                assert!(observed.umbilical);
            }
            other => panic!("unexpected status {other:?}"),
        }
        assert!(!report.verification_failed());
    }

    #[test]
    fn hyperbolic_sphere_witnesses_the_cneg_theorem() {
        // ρ = 0.8 < arccoth(√2): sup|φ|² = 0 < 2coth²(0.8) − 4 > 0
        let report = gate(Theorem::GapCneg, Family::RoundSphere, -1.0, Some(0.8));
        match &report.status {
            GateStatus::Evaluated {
                hypothesis_satisfied,
                predicted_case,
                ..
            } => {
                assert!(hypothesis_satisfied);
                assert!(predicted_case.contains("round sphere"));
            }
            other => panic!("unexpected status {other:?}"),
        }
        assert!(!report.verification_failed());
    }

    #[test]
    fn sphere_theorem_on_geodesic_spheres() {
        let report = gate(Theorem::Sphere2, Family::RoundSphere, 1.0, Some(PI / 3.0));
        match &report.status {
            GateStatus::Evaluated {
                margins,
                hypothesis_satisfied,
                predicted_case,
                ..
            } => {
                assert!(hypothesis_satisfied);
                // |T|² = 0 ≤ 2/3 and |σ|² = 2cot²(π/3) = 2/3 ≤ c(2−3|T|²) = 2
                assert!((margins[0].1 - 2.0 / 3.0).abs() <= 1e-9, "2/3 − |T|²");
                assert!((margins[1].1 - 4.0 / 3.0).abs() <= 1e-9, "2 − 2/3");
                assert_eq!(predicted_case, "standard sphere in M^3(c)");
            }
            other => panic!("unexpected status {other:?}"),
        }

        // minimal slice sphere: the other conclusion branch
        let report = gate(Theorem::Sphere2, Family::Slice, 1.0, None);
        match &report.status {
            GateStatus::Evaluated { predicted_case, .. } => {
                assert!(predicted_case.contains("minimal surface in a totally umbilical"));
            }
            other => panic!("unexpected status {other:?}"),
        }
    }

    #[test]
    fn sphere_theorem_reports_both_negative_curvature_readings() {
        let report = gate(Theorem::Sphere2, Family::RoundSphere, -1.0, Some(0.8));
        match &report.status {
            GateStatus::Evaluated {
                readings,
                hypothesis_satisfied,
                predicted_case,
                ..
            } => {
                assert_eq!(readings.len(), 2);
                // |T|² = 0 but |σ|² > 0 > c(2−3|T|²): the conjunctive reading
                // fails while the disjunctive one holds
                assert!(!readings[0].1, "reading A should fail: {readings:?}");
                assert!(readings[1].1, "reading B should hold: {readings:?}");
                assert!(hypothesis_satisfied);
                assert_eq!(predicted_case, "standard sphere in M^3(c)");
            }
            other => panic!("unexpected status {other:?}"),
        }
    }

    #[test]
    fn wrong_sign_and_minimal_surfaces_are_not_applicable() {
        let report = gate(Theorem::GapCneg, Family::CliffordTorus, 1.0, Some(0.6));
        assert!(matches!(report.status, GateStatus::NotApplicable { .. }));

        let report = gate(Theorem::GapMain, Family::Slice, 1.0, None);
        match &report.status {
            GateStatus::NotApplicable { reason } => assert!(reason.contains("minimal")),
            other => panic!("unexpected status {other:?}"),
        }

        let report = gate(Theorem::Sphere2, Family::CliffordTorus, 1.0, Some(0.6));
        match &report.status {
            GateStatus::NotApplicable { reason } => assert!(reason.contains("topology")),
            other => panic!("unexpected status {other:?}"),
        }
    }

    #[test]
    fn perturbed_graph_fails_the_pmc_precondition() {
        let report = gate(Theorem::GapMain, Family::PerturbedGraph, 1.0, Some(0.1));
        match &report.status {
            GateStatus::PmcViolated { max_residual } => {
                assert!(*max_residual > 1e-3, "residual {max_residual:e}");
            }
            other => panic!("unexpected status {other:?}"),
        }
        assert!(report.verification_failed());
    }

    #[test]
    fn torus_sweep_sits_exactly_on_the_case_two_equality() {
        // |φ|² = 2|H|² + 2c holds identically across the family
        for r in [0.55, 0.6, 0.65] {
            let (im, expected) =
                make_surface(&CatalogSpec::new(Family::CliffordTorus, 1.0, Some(r))).unwrap();
            let h = expected.h_norm.unwrap();
            let phi2 = expected.phi2.unwrap();
            assert!(
                (phi2 - (2.0 * h * h + 2.0)).abs() <= 1e-12,
                "closed-form equality at r = {r}"
            );
            let report = check_gate(Theorem::GapMain, &im, &GateConfig::default()).unwrap();
            match &report.status {
                GateStatus::Evaluated {
                    predicted_case,
                    margins,
                    ..
                } => {
                    assert!(predicted_case.contains("case (2)"), "r = {r}");
                    assert!(margins[0].1.abs() <= 1e-9, "sharp at r = {r}");
                }
                other => panic!("unexpected status {other:?}"),
            }
        }
    }

    #[test]
    fn cylinder_is_excluded_by_the_gap_hypotheses() {
        // |T| = 1 violates the pinching bound by exactly c/2 for GapMain
        let report = gate(Theorem::GapMain, Family::VerticalCylinder, 1.0, Some(0.6));
        match &report.status {
            GateStatus::Evaluated {
                hypothesis_satisfied,
                margins,
                predicted_case,
                ..
            } => {
                assert!(!hypothesis_satisfied);
                assert!((margins[0].1 - (-0.5)).abs() <= 1e-9, "margin {}", margins[0].1);
                assert_eq!(predicted_case, "hypothesis violated");
            }
            other => panic!("unexpected status {other:?}"),
        }
        assert!(!report.verification_failed());
    }
}
