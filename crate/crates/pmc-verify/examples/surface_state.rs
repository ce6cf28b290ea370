//! The complete pointwise geometric state of an immersed surface.
//!
//! Evaluates the Clifford torus S¹(0.6) × S¹(0.8) in S³ × ℝ and prints
//! everything the verification engine derives from the immersion: metric,
//! frames, second fundamental form, mean curvature, the ξ split, traceless
//! operators and the Gaussian curvature computed two independent ways.
//!
//! Run: cargo run --example surface_state

use pmc_verify::catalog::{make_surface, CatalogSpec, Family};
use pmc_verify::surface::evaluate_state;

fn main() {
    let spec = CatalogSpec::new(Family::CliffordTorus, 1.0, Some(0.6));
    let (im, expected) = make_surface(&spec).unwrap();
    let point = [0.9, 1.4];
    let state = evaluate_state(&im, point, 4).unwrap();

    println!("=== {} at chart point {point:?} ===\n", im.name);

    let g = state.metric_at();
    println!("first fundamental form:");
    println!("  g = [[{:.6}, {:.6}], [{:.6}, {:.6}]]", g[0][0], g[0][1], g[1][0], g[1][1]);
    let gamma = state.christoffel_at();
    let max_gamma = gamma
        .iter()
        .flatten()
        .flatten()
        .fold(0.0f64, |m, x| m.max(x.abs()));
    println!("  max |Γ^k_ij| = {max_gamma:.2e} (flat chart)");

    println!("\nframes (ambient coordinates):");
    let tf = state.tangent_frame_at();
    println!("  E1 = {:?}", rounded(&tf[0]));
    println!("  E2 = {:?}", rounded(&tf[1]));
    for (alpha, nf) in state.normal_frame_at().iter().enumerate() {
        println!("  E{} = {:?}", alpha + 3, rounded(nf));
    }

    println!("\nsecond fundamental form in the frames:");
    for (alpha, block) in state.sff_at().iter().enumerate() {
        println!(
            "  σ^{}: [[{:+.6}, {:+.6}], [{:+.6}, {:+.6}]]",
            alpha + 3,
            block[0][0],
            block[0][1],
            block[1][0],
            block[1][1]
        );
    }

    println!("\nscalars (measured vs closed form):");
    println!(
        "  |H|    = {:.12}  (expected {:.12} = 7/24)",
        state.h_norm_value(),
        expected.h_norm.unwrap()
    );
    println!(
        "  |φ|²   = {:.12}  (expected {:.12} = 625/288)",
        state.phi2_value(),
        expected.phi2.unwrap()
    );
    println!("  |σ|²   = {:.12}  (337/144 = {:.12})", state.sigma2_value(), 337.0 / 144.0);
    println!("  |T|²   = {:.2e}", state.t2_value());

    let split = state.split_xi();
    println!("\nvertical field split (T + N = ξ):");
    println!("  T = {:?}", rounded(&split.t_ambient));
    println!("  N = {:?}", rounded(&split.n_ambient));
    println!("  ν₃ = {:+.6}, ν₄ = {:+.6}", split.nu[0], split.nu[1]);

    let (ki, ke) = state.gaussian_curvature_two_ways().unwrap();
    println!("\nGaussian curvature two ways (the Gauss-equation test):");
    println!("  intrinsic (Christoffel jets): {ki:+.3e}");
    println!("  extrinsic (2K = 2c(1−|T|²)+4|H|²−|σ|²): {ke:+.3e}");

    println!("\npmc residual |∇⊥H|/(1+|H|): {:.2e}", state.pmc_residual().unwrap());
    println!(
        "q-form: Q(E1,E1) = {:+.6}, Q(E2,E2) = {:+.6}, Q(E1,E2) = {:+.2e}",
        state.q_form(0, 0),
        state.q_form(1, 1),
        state.q_form(0, 1)
    );
}

fn rounded(v: &[f64]) -> Vec<f64> {
    v.iter().map(|x| (x * 1e6).round() / 1e6).collect()
}
