//! Closed-form model surfaces in M³(c) × ℝ with known geometric invariants.
//!
//! Every family is parametrized so the image satisfies the quadric equation
//! exactly and, except for the perturbed graph, so that the expected values
//! are constant over the chart (homogeneous surfaces). Expected values come
//! with the closed forms of their derivation:
//!
//! * Clifford-type torus S¹(r) × S¹(s), r² + s² = 1/c: principal curvatures
//!   k₁ = √c·s/r and k₂ = −√c·r/s with respect to H/|H|, so
//!   |H| = √c|s² − r²|/(2rs) and |φ|² = (r² + s²)/(2r²s²);
//! * geodesic sphere of radius ρ in M³(c): umbilical with
//!   |H| = √c·cot(√c·ρ) for c > 0 and √|c|·coth(√|c|·ρ) for c < 0;
//! * horosphere (c < 0): flat, umbilical, |H| = √|c|;
//! * vertical cylinder γ × ℝ over a circle of geodesic curvature
//!   k = √c·s/r in M³(c): |H| = k/2, |φ|² = k²/2, |T| = 1;
//! * slice M²(c) × {0}: totally geodesic, K = c;
//! * perturbed graph t = ε·u over the slice: stays on the product exactly
//!   but is not pmc for ε ≠ 0 (the non-example every negative test needs).

use std::f64::consts::PI;

use thiserror::Error;

use crate::ambient::ProductSpace;
use crate::jet::Jet;
use crate::surface::{ChartDomain, Immersion, Topology};
use crate::thresholds::MINIMAL_H_THRESHOLD;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum CatalogError {
    #[error("parameter {name} = {value} outside its domain for {family}: {constraint}")]
    BadParameters {
        family: &'static str,
        name: &'static str,
        value: f64,
        constraint: &'static str,
    },
    #[error("family {family} requires {constraint}, got c = {c}")]
    WrongCurvatureSign {
        family: &'static str,
        c: f64,
        constraint: &'static str,
    },
    #[error("unknown surface family '{0}'")]
    UnknownFamily(String),
}

/// The model surface families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Slice,
    RoundSphere,
    CliffordTorus,
    MinimalCliffordTorus,
    Horosphere,
    VerticalCylinder,
    PerturbedGraph,
}

impl Family {
    pub const ALL: [Family; 7] = [
        Family::Slice,
        Family::RoundSphere,
        Family::CliffordTorus,
        Family::MinimalCliffordTorus,
        Family::Horosphere,
        Family::VerticalCylinder,
        Family::PerturbedGraph,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Family::Slice => "slice",
            Family::RoundSphere => "round_sphere",
            Family::CliffordTorus => "clifford_torus",
            Family::MinimalCliffordTorus => "minimal_clifford_torus",
            Family::Horosphere => "horosphere",
            Family::VerticalCylinder => "vertical_cylinder",
            Family::PerturbedGraph => "perturbed_graph",
        }
    }

    pub fn parse(name: &str) -> Result<Family, CatalogError> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == name)
            .ok_or_else(|| CatalogError::UnknownFamily(name.to_string()))
    }
}

/// A fully specified catalog surface.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CatalogSpec {
    pub family: Family,
    pub c: f64,
    /// Family-specific parameter: torus/cylinder radius r, sphere geodesic
    /// radius ρ, graph amplitude ε. Ignored by slice/horosphere, and by the
    /// minimal torus (whose radius is forced to r² = 1/(2c)).
    pub param: Option<f64>,
}

impl CatalogSpec {
    pub fn new(family: Family, c: f64, param: Option<f64>) -> Self {
        CatalogSpec { family, c, param }
    }
}

/// Closed-form invariants of a catalog surface. `None` marks quantities
/// that are not constant over the chart (perturbed graph only).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpectedValues {
    pub h_norm: Option<f64>,
    pub t2: Option<f64>,
    pub phi2: Option<f64>,
    pub gauss: Option<f64>,
    pub pmc: bool,
    pub minimal: bool,
}

impl ExpectedValues {
    /// Consistency of the closed forms with 2K = 2c(1−|T|²) + 2|H|² − |φ|².
    pub fn gauss_consistency_residual(&self, c: f64) -> Option<f64> {
        let (h, t2, phi2, k) = (self.h_norm?, self.t2?, self.phi2?, self.gauss?);
        Some((2.0 * k - (2.0 * c * (1.0 - t2) + 2.0 * h * h - phi2)).abs())
    }
}

/// One row of the catalog listing.
#[derive(Debug, Clone)]
pub struct FamilyInfo {
    pub family: Family,
    pub parameter: &'static str,
    pub curvature_sign: &'static str,
    pub witnesses: &'static str,
    pub constraint: &'static str,
}

/// Complete, stable-ordered listing of the catalog.
pub fn list_catalog() -> Vec<FamilyInfo> {
    vec![
        FamilyInfo {
            family: Family::Slice,
            parameter: "(none)",
            curvature_sign: "c != 0",
            witnesses: "totally geodesic baseline; minimal case of the sphere theorem",
            constraint: "none",
        },
        FamilyInfo {
            family: Family::RoundSphere,
            parameter: "rho (geodesic radius)",
            curvature_sign: "c != 0",
            witnesses: "case (1) |phi|^2 = 0 of the gap theorems; sphere theorem",
            constraint: "0 < rho < pi/sqrt(c) for c > 0; rho > 0 for c < 0",
        },
        FamilyInfo {
            family: Family::CliffordTorus,
            parameter: "r (first circle radius)",
            curvature_sign: "c > 0",
            witnesses: "case (2) |phi|^2 = 2|H|^2 + 2c of the gap theorems; sharp equality",
            constraint: "0 < r < 1/sqrt(c); r^2 != 1/(2c) for nonminimal",
        },
        FamilyInfo {
            family: Family::MinimalCliffordTorus,
            parameter: "(none; r^2 = 1/(2c))",
            curvature_sign: "c > 0",
            witnesses: "minimal pmc surface with parallel second fundamental form",
            constraint: "none",
        },
        FamilyInfo {
            family: Family::Horosphere,
            parameter: "(none)",
            curvature_sign: "c < 0 only",
            witnesses: "flat umbilical surface excluded by the c < 0 gap theorem",
            constraint: "none",
        },
        FamilyInfo {
            family: Family::VerticalCylinder,
            parameter: "r (circle radius)",
            curvature_sign: "c > 0",
            witnesses: "|T| = 1 surface; exercises every T-dependent term",
            constraint: "0 < r < 1/sqrt(c)",
        },
        FamilyInfo {
            family: Family::PerturbedGraph,
            parameter: "eps (graph amplitude)",
            curvature_sign: "c > 0",
            witnesses: "non-pmc negative control",
            constraint: "eps != 0 for the non-pmc control",
        },
    ]
}

fn bad(
    family: &'static str,
    name: &'static str,
    value: f64,
    constraint: &'static str,
) -> CatalogError {
    CatalogError::BadParameters {
        family,
        name,
        value,
        constraint,
    }
}

fn require_sign(
    family: &'static str,
    c: f64,
    positive: Option<bool>,
) -> Result<(), CatalogError> {
    match positive {
        Some(true) if c <= 0.0 => Err(CatalogError::WrongCurvatureSign {
            family,
            c,
            constraint: "c > 0",
        }),
        Some(false) if c >= 0.0 => Err(CatalogError::WrongCurvatureSign {
            family,
            c,
            constraint: "c < 0",
        }),
        None if c == 0.0 => Err(CatalogError::WrongCurvatureSign {
            family,
            c,
            constraint: "c != 0",
        }),
        _ => Ok(()),
    }
}

/// Builds the immersion and expected values for a catalog spec.
pub fn make_surface(spec: &CatalogSpec) -> Result<(Immersion, ExpectedValues), CatalogError> {
    let c = spec.c;
    match spec.family {
        Family::Slice => {
            require_sign("slice", c, None)?;
            let space = ProductSpace::new(c, 3).unwrap();
            let im = if c > 0.0 {
                let scale = 1.0 / c.sqrt();
                Immersion::new(
                    space,
                    ChartDomain::new([0.1, PI - 0.1], [0.0, 2.0 * PI]),
                    "slice",
                    Topology::Sphere,
                    true,
                    vec![("c".into(), c)],
                    move |u, v, degree| {
                        let uj = Jet::variable_u(u, degree);
                        let vj = Jet::variable_v(v, degree);
                        vec![
                            uj.cos().scale(scale),
                            (&uj.sin() * &vj.cos()).scale(scale),
                            (&uj.sin() * &vj.sin()).scale(scale),
                            Jet::zero(degree),
                            Jet::zero(degree),
                        ]
                    },
                )
            } else {
                let scale = 1.0 / (-c).sqrt();
                Immersion::new(
                    space,
                    ChartDomain::new([0.1, 1.6], [0.0, 2.0 * PI]),
                    "slice",
                    Topology::Plane,
                    true,
                    vec![("c".into(), c)],
                    move |u, v, degree| {
                        let uj = Jet::variable_u(u, degree);
                        let vj = Jet::variable_v(v, degree);
                        // cosh/sinh via exp
                        let e = uj.exp();
                        let einv = e.recip().unwrap();
                        let cosh = (&e + &einv).scale(0.5);
                        let sinh = (&e - &einv).scale(0.5);
                        vec![
                            cosh.scale(scale),
                            (&sinh * &vj.cos()).scale(scale),
                            (&sinh * &vj.sin()).scale(scale),
                            Jet::zero(degree),
                            Jet::zero(degree),
                        ]
                    },
                )
            };
            let expected = ExpectedValues {
                h_norm: Some(0.0),
                t2: Some(0.0),
                phi2: Some(0.0),
                gauss: Some(c),
                pmc: true,
                minimal: true,
            };
            Ok((im, expected))
        }
        Family::RoundSphere => {
            require_sign("round_sphere", c, None)?;
            let rho = spec.param.unwrap_or(PI / 4.0);
            let space = ProductSpace::new(c, 3).unwrap();
            let (im, h_norm, gauss) = if c > 0.0 {
                let sc = c.sqrt();
                if rho <= 0.0 || rho >= PI / sc {
                    return Err(bad("round_sphere", "rho", rho, "0 < rho < pi/sqrt(c)"));
                }
                let (sr, cr) = ((sc * rho).sin() / sc, (sc * rho).cos() / sc);
                let im = Immersion::new(
                    space,
                    ChartDomain::new([0.1, PI - 0.1], [0.0, 2.0 * PI]),
                    "round_sphere",
                    Topology::Sphere,
                    true,
                    vec![("c".into(), c), ("rho".into(), rho)],
                    move |u, v, degree| {
                        let uj = Jet::variable_u(u, degree);
                        let vj = Jet::variable_v(v, degree);
                        vec![
                            Jet::constant(cr, degree),
                            (&uj.sin() * &vj.cos()).scale(sr),
                            (&uj.sin() * &vj.sin()).scale(sr),
                            uj.cos().scale(sr),
                            Jet::zero(degree),
                        ]
                    },
                );
                let h = sc * (sc * rho).cos().abs() / (sc * rho).sin();
                (im, h, c + h * h)
            } else {
                let sc = (-c).sqrt();
                if rho <= 0.0 {
                    return Err(bad("round_sphere", "rho", rho, "rho > 0"));
                }
                let (sh, ch) = ((sc * rho).sinh() / sc, (sc * rho).cosh() / sc);
                let im = Immersion::new(
                    space,
                    ChartDomain::new([0.1, PI - 0.1], [0.0, 2.0 * PI]),
                    "round_sphere",
                    Topology::Sphere,
                    true,
                    vec![("c".into(), c), ("rho".into(), rho)],
                    move |u, v, degree| {
                        let uj = Jet::variable_u(u, degree);
                        let vj = Jet::variable_v(v, degree);
                        vec![
                            Jet::constant(ch, degree),
                            (&uj.sin() * &vj.cos()).scale(sh),
                            (&uj.sin() * &vj.sin()).scale(sh),
                            uj.cos().scale(sh),
                            Jet::zero(degree),
                        ]
                    },
                );
                let h = sc * (sc * rho).cosh() / (sc * rho).sinh();
                (im, h, c + h * h)
            };
            let expected = ExpectedValues {
                h_norm: Some(h_norm),
                t2: Some(0.0),
                phi2: Some(0.0),
                gauss: Some(gauss),
                pmc: true,
                minimal: h_norm < MINIMAL_H_THRESHOLD,
            };
            Ok((im, expected))
        }
        Family::CliffordTorus | Family::MinimalCliffordTorus => {
            let family = spec.family.name();
            require_sign("clifford_torus", c, Some(true))?;
            let r = match spec.family {
                Family::MinimalCliffordTorus => 1.0 / (2.0 * c).sqrt(),
                _ => spec.param.unwrap_or(0.6),
            };
            if r <= 0.0 || r * r >= 1.0 / c {
                return Err(bad(family, "r", r, "0 < r < 1/sqrt(c)"));
            }
            let s = (1.0 / c - r * r).sqrt();
            let space = ProductSpace::new(c, 3).unwrap();
            let im = Immersion::new(
                space,
                ChartDomain::new([0.0, 2.0 * PI * r], [0.0, 2.0 * PI * s]),
                family,
                Topology::Torus,
                true,
                vec![("c".into(), c), ("r".into(), r)],
                move |u, v, degree| {
                    let au = Jet::variable_u(u, degree).scale(1.0 / r);
                    let av = Jet::variable_v(v, degree).scale(1.0 / s);
                    vec![
                        au.cos().scale(r),
                        au.sin().scale(r),
                        av.cos().scale(s),
                        av.sin().scale(s),
                        Jet::zero(degree),
                    ]
                },
            );
            // k₁ = √c·s/r, k₂ = −√c·r/s with respect to E₃ = H/|H|
            let h_norm = c.sqrt() * (s * s - r * r).abs() / (2.0 * r * s);
            let phi2 = (r * r + s * s) / (2.0 * r * r * s * s);
            let expected = ExpectedValues {
                h_norm: Some(h_norm),
                t2: Some(0.0),
                phi2: Some(phi2),
                gauss: Some(0.0),
                pmc: true,
                minimal: h_norm < MINIMAL_H_THRESHOLD,
            };
            Ok((im, expected))
        }
        Family::Horosphere => {
            require_sign("horosphere", c, Some(false))?;
            let scale = 1.0 / (-c).sqrt();
            let space = ProductSpace::new(c, 3).unwrap();
            let im = Immersion::new(
                space,
                ChartDomain::new([-1.0, 1.0], [-1.0, 1.0]),
                "horosphere",
                Topology::Plane,
                true,
                vec![("c".into(), c)],
                move |u, v, degree| {
                    let uj = Jet::variable_u(u, degree);
                    let vj = Jet::variable_v(v, degree);
                    let q = (&(&uj * &uj) + &(&vj * &vj)).scale(0.5);
                    vec![
                        (&Jet::constant(1.0, degree) + &q).scale(scale),
                        uj.scale(scale),
                        vj.scale(scale),
                        q.scale(scale),
                        Jet::zero(degree),
                    ]
                },
            );
            let expected = ExpectedValues {
                h_norm: Some((-c).sqrt()),
                t2: Some(0.0),
                phi2: Some(0.0),
                gauss: Some(0.0),
                pmc: true,
                minimal: false,
            };
            Ok((im, expected))
        }
        Family::VerticalCylinder => {
            require_sign("vertical_cylinder", c, Some(true))?;
            let r = spec.param.unwrap_or(0.6);
            if r <= 0.0 || r * r >= 1.0 / c {
                return Err(bad("vertical_cylinder", "r", r, "0 < r < 1/sqrt(c)"));
            }
            let s = (1.0 / c - r * r).sqrt();
            let space = ProductSpace::new(c, 3).unwrap();
            let im = Immersion::new(
                space,
                ChartDomain::new([-1.0, 1.0], [0.0, 2.0 * PI * r]),
                "vertical_cylinder",
                Topology::Cylinder,
                true,
                vec![("c".into(), c), ("r".into(), r)],
                move |u, v, degree| {
                    let av = Jet::variable_v(v, degree).scale(1.0 / r);
                    vec![
                        av.cos().scale(r),
                        av.sin().scale(r),
                        Jet::constant(s, degree),
                        Jet::zero(degree),
                        Jet::variable_u(u, degree),
                    ]
                },
            );
            // geodesic curvature of the base circle in M³(c)
            let k = c.sqrt() * s / r;
            let expected = ExpectedValues {
                h_norm: Some(k / 2.0),
                t2: Some(1.0),
                phi2: Some(k * k / 2.0),
                gauss: Some(0.0),
                pmc: true,
                minimal: k / 2.0 < MINIMAL_H_THRESHOLD,
            };
            Ok((im, expected))
        }
        Family::PerturbedGraph => {
            require_sign("perturbed_graph", c, Some(true))?;
            let eps = spec.param.unwrap_or(0.1);
            let scale = 1.0 / c.sqrt();
            let space = ProductSpace::new(c, 3).unwrap();
            let im = Immersion::new(
                space,
                ChartDomain::new([0.4, PI - 0.4], [0.0, 2.0 * PI]),
                "perturbed_graph",
                Topology::Disk,
                false,
                vec![("c".into(), c), ("eps".into(), eps)],
                move |u, v, degree| {
                    let uj = Jet::variable_u(u, degree);
                    let vj = Jet::variable_v(v, degree);
                    vec![
                        uj.cos().scale(scale),
                        (&uj.sin() * &vj.cos()).scale(scale),
                        (&uj.sin() * &vj.sin()).scale(scale),
                        Jet::zero(degree),
                        uj.scale(eps),
                    ]
                },
            );
            let expected = ExpectedValues {
                h_norm: None,
                t2: Some(c * eps * eps / (1.0 + c * eps * eps)),
                phi2: None,
                gauss: None,
                pmc: eps == 0.0,
                minimal: false,
            };
            Ok((im, expected))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::{evaluate_state, GridSpec};
    use crate::thresholds::{GOLDEN_TOL, QUADRIC_MEMBERSHIP_TOL};

    fn assert_close(a: f64, b: f64, tol: f64, what: &str) {
        assert!(
            (a - b).abs() <= tol,
            "{what}: {a} vs {b} (|diff| = {:e})",
            (a - b).abs()
        );
    }

    /// The standard spread of specs used across the test suite.
    pub(crate) fn golden_specs() -> Vec<CatalogSpec> {
        vec![
            CatalogSpec::new(Family::CliffordTorus, 1.0, Some(0.55)),
            CatalogSpec::new(Family::CliffordTorus, 1.0, Some(0.6)),
            CatalogSpec::new(Family::CliffordTorus, 1.0, Some(0.65)),
            CatalogSpec::new(Family::RoundSphere, 1.0, Some(PI / 4.0)),
            CatalogSpec::new(Family::RoundSphere, 1.0, Some(PI / 3.0)),
            CatalogSpec::new(Family::Horosphere, -1.0, None),
            CatalogSpec::new(Family::VerticalCylinder, 1.0, Some(0.6)),
            CatalogSpec::new(Family::Slice, 1.0, None),
            CatalogSpec::new(Family::Slice, -1.0, None),
            CatalogSpec::new(Family::MinimalCliffordTorus, 1.0, None),
        ]
    }

    #[test]
    fn golden_values_across_the_catalog() {
        let grid = GridSpec::default();
        for spec in golden_specs() {
            let (im, expected) = make_surface(&spec).unwrap();
            for point in grid.points(&im.domain) {
                let state = evaluate_state(&im, point, 4).unwrap();
                let label = format!("{} c={} at {:?}", im.name, spec.c, point);
                if let Some(h) = expected.h_norm {
                    assert_close(state.h_norm_value(), h, GOLDEN_TOL, &format!("|H| {label}"));
                }
                if let Some(t2) = expected.t2 {
                    assert_close(state.t2_value(), t2, GOLDEN_TOL, &format!("|T|² {label}"));
                }
                if let Some(phi2) = expected.phi2 {
                    assert_close(
                        state.phi2_value(),
                        phi2,
                        GOLDEN_TOL,
                        &format!("|φ|² {label}"),
                    );
                }
                if let Some(k) = expected.gauss {
                    let (ki, ke) = state.gaussian_curvature_two_ways().unwrap();
                    assert_close(ki, k, 1e-8, &format!("K intrinsic {label}"));
                    assert_close(ke, k, GOLDEN_TOL, &format!("K extrinsic {label}"));
                }
                assert_eq!(state.minimal(), expected.minimal, "minimal flag {label}");
            }
        }
    }

    #[test]
    fn golden_examples_pinned() {
        // clifford_torus(c=1, r=0.6): |H| = 7/24, |φ|² = 625/288, K = 0
        let (_, expected) =
            make_surface(&CatalogSpec::new(Family::CliffordTorus, 1.0, Some(0.6))).unwrap();
        assert_close(expected.h_norm.unwrap(), 7.0 / 24.0, 1e-15, "|H|");
        assert_close(expected.phi2.unwrap(), 625.0 / 288.0, 1e-12, "|φ|²");
        assert_close(expected.gauss.unwrap(), 0.0, 0.0, "K");
        // minimal torus: r² = 1/2, |φ|² = 2
        let (im, expected) =
            make_surface(&CatalogSpec::new(Family::MinimalCliffordTorus, 1.0, None)).unwrap();
        let r = im.params.iter().find(|(k, _)| k == "r").unwrap().1;
        assert_close(r * r, 0.5, 1e-15, "r²");
        assert_close(expected.h_norm.unwrap(), 0.0, 1e-15, "|H|");
        assert_close(expected.phi2.unwrap(), 2.0, 1e-12, "|φ|²");
        // horosphere: |H| = 1, |φ|² = 0, K = 0
        let (_, expected) =
            make_surface(&CatalogSpec::new(Family::Horosphere, -1.0, None)).unwrap();
        assert_close(expected.h_norm.unwrap(), 1.0, 1e-15, "|H|");
        assert_close(expected.phi2.unwrap(), 0.0, 0.0, "|φ|²");
        assert_close(expected.gauss.unwrap(), 0.0, 0.0, "K");
    }

    #[test]
    fn quadric_membership_is_exact() {
        let grid = GridSpec::default();
        let mut specs = golden_specs();
        specs.push(CatalogSpec::new(Family::PerturbedGraph, 1.0, Some(0.1)));
        for spec in specs {
            let (im, _) = make_surface(&spec).unwrap();
            for point in grid.points(&im.domain) {
                let jets = im.eval_jets(point[0], point[1], 2);
                let values: Vec<f64> = jets.iter().map(|j| j.value()).collect();
                let res = im.space.quadric_residual(&values);
                assert!(
                    res <= QUADRIC_MEMBERSHIP_TOL,
                    "{} at {:?}: quadric residual {res:e}",
                    im.name,
                    point
                );
            }
        }
    }

    #[test]
    fn pmc_flags_match_measured_residuals() {
        let grid = GridSpec::default();
        for spec in golden_specs() {
            let (im, expected) = make_surface(&spec).unwrap();
            assert!(expected.pmc);
            for point in grid.points(&im.domain) {
                let state = evaluate_state(&im, point, 4).unwrap();
                let res = state.pmc_residual().unwrap();
                assert!(res <= 1e-10, "{} at {:?}: {res:e}", im.name, point);
            }
        }
        let (im, expected) =
            make_surface(&CatalogSpec::new(Family::PerturbedGraph, 1.0, Some(0.1))).unwrap();
        assert!(!expected.pmc);
        let max = grid
            .points(&im.domain)
            .into_iter()
            .map(|p| evaluate_state(&im, p, 4).unwrap().pmc_residual().unwrap())
            .fold(0.0f64, f64::max);
        assert!(max > 1e-3, "perturbed graph pmc residual {max:e}");
    }

    #[test]
    fn state_invariants_hold_across_the_catalog() {
        // frame orthonormality, T + N = ξ, trace φ_α = 0, |φ|² = |σ|² − 2|H|²,
        // |φ_H T|² = ½|T|²|φ_H|², and the two curvature routes agreeing to
        // relative 1e-7 — on every family, including the inhomogeneous
        // perturbed graph where K varies over the chart
        let grid = GridSpec::new(4, 4);
        let mut specs = golden_specs();
        specs.push(CatalogSpec::new(Family::PerturbedGraph, 1.0, Some(0.1)));
        for spec in specs {
            let (im, _) = make_surface(&spec).unwrap();
            let space = im.space;
            for point in grid.points(&im.domain) {
                let state = evaluate_state(&im, point, 4).unwrap();
                let label = format!("{} c={} at {point:?}", im.name, spec.c);
                let mut basis = state.tangent_frame_at().to_vec();
                basis.extend(state.normal_frame_at());
                for (i, a) in basis.iter().enumerate() {
                    for (j, b) in basis.iter().enumerate() {
                        let expected = if i == j { 1.0 } else { 0.0 };
                        assert_close(
                            space.inner(a, b).unwrap(),
                            expected,
                            1e-12,
                            &format!("frame ⟨E_{i},E_{j}⟩ {label}"),
                        );
                    }
                }
                let split = state.split_xi();
                for (k, &xi_k) in space.xi().iter().enumerate() {
                    assert_close(
                        split.t_ambient[k] + split.n_ambient[k],
                        xi_k,
                        1e-12,
                        &format!("T+N=ξ {label}"),
                    );
                }
                for alpha in 0..state.normal_rank() {
                    let phi = state.phi_matrix(alpha);
                    assert_close(phi[0][0] + phi[1][1], 0.0, 1e-12, &format!("tr φ {label}"));
                }
                assert_close(
                    state.phi2_value(),
                    state.sigma2_value() - 2.0 * state.h2_value(),
                    1e-12,
                    &format!("|φ|² relation {label}"),
                );
                if !state.minimal() {
                    let phi_h = state.phi_h_matrix().unwrap();
                    let tau = state.t_frame_at();
                    let pt = [
                        phi_h[0][0] * tau[0] + phi_h[0][1] * tau[1],
                        phi_h[1][0] * tau[0] + phi_h[1][1] * tau[1],
                    ];
                    assert_close(
                        pt[0] * pt[0] + pt[1] * pt[1],
                        0.5 * state.t2_value() * state.phi_h2_value().unwrap(),
                        1e-10,
                        &format!("|φ_H T|² {label}"),
                    );
                }
                let (ki, ke) = state.gaussian_curvature_two_ways().unwrap();
                assert!(
                    (ki - ke).abs() <= 1e-7 * (1.0 + ki.abs().max(ke.abs())),
                    "Gauss agreement {label}: {ki} vs {ke}"
                );
            }
        }
    }

    #[test]
    fn operation_entry_points_match_state_methods() {
        use crate::surface::{
            covariant_gradient_norm, intrinsic_laplacian, normal_connection_residual, NamedField,
            OperatorField, SurfaceError,
        };
        let (im, _) =
            make_surface(&CatalogSpec::new(Family::VerticalCylinder, 1.0, Some(0.6))).unwrap();
        let point = [0.2, 1.1];
        let state = evaluate_state(&im, point, 4).unwrap();
        assert_eq!(
            intrinsic_laplacian(&im, point, NamedField::T2).unwrap(),
            state.laplacian(NamedField::T2).unwrap()
        );
        assert_eq!(
            normal_connection_residual(&im, point).unwrap(),
            state.pmc_residual().unwrap()
        );
        assert_eq!(
            covariant_gradient_norm(&im, point, OperatorField::PhiH).unwrap(),
            state.covariant_gradient_norm(OperatorField::PhiH).unwrap()
        );
        // minimal surface: φ_H-dependent entry points report the condition
        let (slice, _) = make_surface(&CatalogSpec::new(Family::Slice, 1.0, None)).unwrap();
        assert!(matches!(
            intrinsic_laplacian(&slice, [1.0, 1.0], NamedField::PhiH2),
            Err(SurfaceError::MinimalPoint { .. })
        ));
    }

    #[test]
    fn expected_values_satisfy_gauss_relation() {
        for spec in golden_specs() {
            let (_, expected) = make_surface(&spec).unwrap();
            if let Some(res) = expected.gauss_consistency_residual(spec.c) {
                assert!(res <= 1e-12, "{:?}: {res:e}", spec.family);
            }
        }
    }

    #[test]
    fn hyperbolic_sphere_expected_values() {
        // c = −1, ρ = 0.8: |H| = coth(0.8), K = coth²(0.8) − 1 = 1/sinh²(0.8)
        let (im, expected) =
            make_surface(&CatalogSpec::new(Family::RoundSphere, -1.0, Some(0.8))).unwrap();
        let coth = 0.8f64.cosh() / 0.8f64.sinh();
        assert_close(expected.h_norm.unwrap(), coth, 1e-14, "|H|");
        assert_close(
            expected.gauss.unwrap(),
            1.0 / 0.8f64.sinh().powi(2),
            1e-12,
            "K",
        );
        let state = evaluate_state(&im, [1.0, 1.3], 4).unwrap();
        assert_close(state.h_norm_value(), coth, 1e-11, "|H| measured");
        assert_close(state.phi2_value(), 0.0, 1e-11, "|φ|² measured");
    }

    #[test]
    fn bad_parameters_are_rejected() {
        assert!(matches!(
            make_surface(&CatalogSpec::new(Family::CliffordTorus, 1.0, Some(1.2))),
            Err(CatalogError::BadParameters { .. })
        ));
        assert!(matches!(
            make_surface(&CatalogSpec::new(Family::CliffordTorus, 1.0, Some(1.0))),
            Err(CatalogError::BadParameters { .. })
        ));
        assert!(matches!(
            make_surface(&CatalogSpec::new(Family::CliffordTorus, -1.0, Some(0.6))),
            Err(CatalogError::WrongCurvatureSign { .. })
        ));
        assert!(matches!(
            make_surface(&CatalogSpec::new(Family::Horosphere, 1.0, None)),
            Err(CatalogError::WrongCurvatureSign { .. })
        ));
        assert!(matches!(
            make_surface(&CatalogSpec::new(Family::RoundSphere, 1.0, Some(4.0))),
            Err(CatalogError::BadParameters { .. })
        ));
        assert!(matches!(
            make_surface(&CatalogSpec::new(Family::Slice, 0.0, None)),
            Err(CatalogError::WrongCurvatureSign { .. })
        ));
    }

    #[test]
    fn listing_is_complete_and_annotated() {
        let listing = list_catalog();
        assert_eq!(listing.len(), Family::ALL.len());
        let torus = listing
            .iter()
            .find(|f| f.family == Family::CliffordTorus)
            .unwrap();
        assert!(torus.constraint.contains("r^2 != 1/(2c)"));
        let horo = listing
            .iter()
            .find(|f| f.family == Family::Horosphere)
            .unwrap();
        assert!(horo.curvature_sign.contains("c < 0"));
        let graph = listing
            .iter()
            .find(|f| f.family == Family::PerturbedGraph)
            .unwrap();
        assert!(graph.witnesses.contains("non-pmc"));
        assert_eq!(Family::parse("clifford_torus"), Ok(Family::CliffordTorus));
        assert!(matches!(
            Family::parse("nosuch"),
            Err(CatalogError::UnknownFamily(_))
        ));
    }

    #[test]
    fn scaling_by_curvature_is_exact() {
        // same families at c ≠ 1 exercise the c-dependence of every formula
        for spec in [
            CatalogSpec::new(Family::CliffordTorus, 2.5, Some(0.3)),
            CatalogSpec::new(Family::RoundSphere, 0.7, Some(0.9)),
            CatalogSpec::new(Family::VerticalCylinder, 1.8, Some(0.4)),
            CatalogSpec::new(Family::Horosphere, -2.0, None),
        ] {
            let (im, expected) = make_surface(&spec).unwrap();
            let point = GridSpec::default().points(&im.domain)[27];
            let state = evaluate_state(&im, point, 4).unwrap();
            assert_close(
                state.h_norm_value(),
                expected.h_norm.unwrap(),
                1e-10,
                &format!("|H| {} c={}", im.name, spec.c),
            );
            assert_close(
                state.phi2_value(),
                expected.phi2.unwrap(),
                1e-9,
                &format!("|φ|² {} c={}", im.name, spec.c),
            );
            let (ki, ke) = state.gaussian_curvature_two_ways().unwrap();
            assert_close(ki, expected.gauss.unwrap(), 1e-8, "K intrinsic");
            assert_close(ke, expected.gauss.unwrap(), 1e-9, "K extrinsic");
        }
    }
}
