//! Truncated Taylor arithmetic in two chart variables.
//!
//! Jets carry exact partial derivatives through arbitrary arithmetic, which
//! is what makes every curvature computation in this crate derivative-exact
//! instead of finite-difference-approximate.
//!
//! Run: cargo run --example jet_calculus

use pmc_verify::jet::Jet;

fn main() {
    println!("=== jet calculus ===\n");

    // (1+u)(1+v) expanded about the origin
    let p = &Jet::variable_u(1.0, 4) * &Jet::variable_v(1.0, 4);
    println!("(1+u)(1+v):");
    println!("  c00 = {}, c10 = {}, c01 = {}, c11 = {}", p.coeff(0, 0), p.coeff(1, 0), p.coeff(0, 1), p.coeff(1, 1));

    // sin(u)cos(u) = ½ sin(2u) = u − (2/3)u³ + …
    let u = Jet::variable_u(0.0, 4);
    let half_sin2 = &u.sin() * &u.cos();
    println!("\nsin(u)·cos(u) about 0 (should be u − 2/3·u³):");
    println!("  u coefficient:  {:+.12}", half_sin2.coeff(1, 0));
    println!("  u³ coefficient: {:+.12}  (−2/3 = {:+.12})", half_sin2.coeff(3, 0), -2.0 / 3.0);

    // binomial series of √(4+u)
    let root = Jet::variable_u(4.0, 4).sqrt().unwrap();
    println!("\n√(4+u) about 0:");
    for (k, expect) in [(0, 2.0), (1, 0.25), (2, -1.0 / 64.0), (3, 1.0 / 512.0)] {
        println!("  u^{k}: {:+.9}  (binomial series {expect:+.9})", root.coeff(k, 0));
    }

    // derivatives of a composite function, compared with central differences
    let f = |u: f64, v: f64| (u.sin() + (1.0 + v * v).ln()).exp();
    let (u0, v0) = (0.4, -0.3);
    let jet = {
        let uj = Jet::variable_u(u0, 4);
        let vj = Jet::variable_v(v0, 4);
        (&uj.sin() + &(&Jet::constant(1.0, 4) + &(&vj * &vj)).ln().unwrap()).exp()
    };
    let h = 1e-5;
    let fd = (f(u0 + h, v0) - f(u0 - h, v0)) / (2.0 * h);
    println!("\nexp(sin u + ln(1+v²)) at ({u0}, {v0}):");
    println!("  ∂u  via jets:               {:+.12}", jet.partial(1, 0).unwrap());
    println!("  ∂u  via central differences: {fd:+.12}");
    println!("  ∂³u∂v via jets:             {:+.12}", jet.partial(3, 1).unwrap());

    // degree bookkeeping: differentiation spends one order
    println!("\ndegrees: f has degree {}, ∂u f has degree {}", jet.degree(), jet.partial_u().unwrap().degree());
}
