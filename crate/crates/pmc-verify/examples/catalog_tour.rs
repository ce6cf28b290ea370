//! Tour of the surface catalog: closed-form invariants vs measured state.
//!
//! Run: cargo run --example catalog_tour

use pmc_verify::catalog::{list_catalog, make_surface, CatalogSpec, Family};
use pmc_verify::surface::{evaluate_state, GridSpec};

fn main() {
    println!("=== catalog listing ===\n");
    for info in list_catalog() {
        println!("{:<24} {}", info.family.name(), info.curvature_sign);
        println!("    parameter:  {}", info.parameter);
        println!("    witnesses:  {}", info.witnesses);
        println!("    constraint: {}", info.constraint);
    }

    println!("\n=== closed forms vs measured values (mid-chart point) ===\n");
    let specs = [
        CatalogSpec::new(Family::CliffordTorus, 1.0, Some(0.6)),
        CatalogSpec::new(Family::MinimalCliffordTorus, 1.0, None),
        CatalogSpec::new(Family::RoundSphere, 1.0, Some(std::f64::consts::PI / 3.0)),
        CatalogSpec::new(Family::RoundSphere, -1.0, Some(0.8)),
        CatalogSpec::new(Family::Horosphere, -1.0, None),
        CatalogSpec::new(Family::VerticalCylinder, 1.0, Some(0.6)),
        CatalogSpec::new(Family::Slice, 1.0, None),
        CatalogSpec::new(Family::Slice, -1.0, None),
    ];
    println!(
        "{:<24} {:>5} {:>12} {:>12} {:>12} {:>12} {:>9}",
        "surface", "c", "|H|", "|phi|^2", "|T|^2", "K", "pmc res"
    );
    for spec in specs {
        let (im, expected) = make_surface(&spec).unwrap();
        let point = GridSpec::default().points(&im.domain)[27];
        let state = evaluate_state(&im, point, 4).unwrap();
        let (k, _) = state.gaussian_curvature_two_ways().unwrap();
        println!(
            "{:<24} {:>5} {:>12.8} {:>12.8} {:>12.8} {:>12.8} {:>9.1e}",
            im.name,
            spec.c,
            state.h_norm_value(),
            state.phi2_value(),
            state.t2_value(),
            k,
            state.pmc_residual().unwrap()
        );
        let dh = (state.h_norm_value() - expected.h_norm.unwrap()).abs();
        let dphi = (state.phi2_value() - expected.phi2.unwrap()).abs();
        let dk = (k - expected.gauss.unwrap()).abs();
        println!(
            "{:<24} {:>5} {:>12.1e} {:>12.1e} {:>12} {:>12.1e}  (deviation from closed form)",
            "", "", dh, dphi, "", dk
        );
    }

    // the negative control is deliberately not pmc
    let (im, expected) =
        make_surface(&CatalogSpec::new(Family::PerturbedGraph, 1.0, Some(0.1))).unwrap();
    let max_res = GridSpec::default()
        .points(&im.domain)
        .into_iter()
        .map(|p| evaluate_state(&im, p, 4).unwrap().pmc_residual().unwrap())
        .fold(0.0f64, f64::max);
    println!(
        "\n{} (eps = 0.1): pmc flag {}, max pmc residual over the grid {max_res:.3e}",
        im.name, expected.pmc
    );
}
