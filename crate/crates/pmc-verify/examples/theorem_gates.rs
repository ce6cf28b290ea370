//! Classification-theorem gates across the catalog.
//!
//! Each gate checks the numerical hypotheses of one theorem on a sampled
//! surface and matches the observed state against the conclusion cases.
//! The run shows the full spread of outcomes: the sharp equality case at
//! the Clifford torus, the round-sphere case, hypothesis violations
//! (horosphere, cylinder), inapplicability (wrong curvature sign, minimal
//! surfaces) and a pmc violation on the perturbed graph.
//!
//! Run: cargo run --example theorem_gates

use pmc_verify::catalog::{make_surface, CatalogSpec, Family};
use pmc_verify::gates::{check_gate, GateConfig, GateStatus, Theorem};

fn main() {
    let surfaces = [
        CatalogSpec::new(Family::CliffordTorus, 1.0, Some(0.6)),
        CatalogSpec::new(Family::RoundSphere, 1.0, Some(std::f64::consts::PI / 4.0)),
        CatalogSpec::new(Family::RoundSphere, -1.0, Some(0.8)),
        CatalogSpec::new(Family::VerticalCylinder, 1.0, Some(0.6)),
        CatalogSpec::new(Family::Horosphere, -1.0, None),
        CatalogSpec::new(Family::Slice, 1.0, None),
        CatalogSpec::new(Family::PerturbedGraph, 1.0, Some(0.1)),
    ];
    let config = GateConfig::default();

    for spec in surfaces {
        let (im, _) = make_surface(&spec).unwrap();
        println!("=== {} (c = {}) ===", im.name, spec.c);
        for theorem in Theorem::ALL {
            let report = check_gate(theorem, &im, &config).unwrap();
            match &report.status {
                GateStatus::NotApplicable { reason } => {
                    println!("  {:<9} n/a: {reason}", theorem.name());
                }
                GateStatus::PmcViolated { max_residual } => {
                    println!(
                        "  {:<9} FAIL: pmc residual {max_residual:.2e} exceeds the predicate",
                        theorem.name()
                    );
                }
                GateStatus::Evaluated {
                    margins,
                    hypothesis_satisfied,
                    predicted_case,
                    readings,
                    ..
                } => {
                    let outcome = if *hypothesis_satisfied {
                        format!("hypothesis holds: {predicted_case}")
                    } else {
                        predicted_case.clone()
                    };
                    println!("  {:<9} {outcome}", theorem.name());
                    for (name, value) in margins {
                        println!("            margin {name} = {value:+.3e}");
                    }
                    for (name, holds) in readings {
                        println!("            {name}: {holds}");
                    }
                }
            }
        }
        println!();
    }
}
