//! The ambient product space M^n(c) × ℝ and its curvature tensor.
//!
//! The space form is a quadric in flat (possibly Lorentzian) coordinates,
//! so the curvature tensor has the closed form
//!
//!   R(X,Y)Z = c{⟨Y,Z⟩X − ⟨X,Z⟩Y − ⟨Y,ξ⟩⟨Z,ξ⟩X + ⟨X,ξ⟩⟨Z,ξ⟩Y
//!              + ⟨X,Z⟩⟨Y,ξ⟩ξ − ⟨Y,Z⟩⟨X,ξ⟩ξ}
//!
//! with ξ the unit vertical field. This example checks its symmetries on
//! random tangent vectors for both curvature signs.
//!
//! Run: cargo run --example ambient_curvature

use pmc_verify::ambient::ProductSpace;

fn main() {
    println!("=== ambient curvature of M^3(c) x R ===\n");

    for c in [1.0, -1.0_f64] {
        let space = ProductSpace::new(c, 3).unwrap();
        let p = if c > 0.0 {
            // a sphere point with line coordinate 0.3
            let mut p = vec![0.6, 0.4, 0.48, 0.5, 0.3];
            let norm: f64 = p[..4].iter().map(|x| x * x).sum::<f64>().sqrt();
            for x in &mut p[..4] {
                *x /= norm * c.sqrt();
            }
            p
        } else {
            // upper hyperboloid sheet: x0 = sqrt(1/|c| + |x|²)
            let spatial = [0.4, -0.2, 0.7];
            let s: f64 = spatial.iter().map(|x| x * x).sum();
            vec![(1.0 / (-c) + s).sqrt(), spatial[0], spatial[1], spatial[2], 0.3]
        };
        println!("c = {c}: quadric residual at p: {:.2e}", space.quadric_residual(&p));

        // random-ish tangent vectors via projection
        let raw = [
            vec![0.3, -0.9, 0.2, 0.5, 0.7],
            vec![-0.6, 0.1, 0.8, -0.2, 0.4],
            vec![0.2, 0.4, -0.5, 0.9, -0.3],
            vec![0.8, -0.1, 0.3, 0.1, 0.6],
        ];
        let tangents: Vec<Vec<f64>> = raw
            .iter()
            .map(|w| space.tangential_project(&p, w).unwrap())
            .collect();
        let (x, y, z, w) = (&tangents[0], &tangents[1], &tangents[2], &tangents[3]);

        let rxyz = space.curvature_op(x, y, z, &p).unwrap();
        let ryxz = space.curvature_op(y, x, z, &p).unwrap();
        let antisym: f64 = rxyz
            .iter()
            .zip(&ryxz)
            .map(|(a, b)| (a + b).abs())
            .fold(0.0, f64::max);

        let rxyw = space.curvature_op(x, y, w, &p).unwrap();
        let compat = space.inner(&rxyz, w).unwrap() + space.inner(&rxyw, z).unwrap();

        let ryzx = space.curvature_op(y, z, x, &p).unwrap();
        let rzxy = space.curvature_op(z, x, y, &p).unwrap();
        let bianchi: f64 = (0..5)
            .map(|k| (rxyz[k] + ryzx[k] + rzxy[k]).abs())
            .fold(0.0, f64::max);

        println!("  antisymmetry in (X,Y):   {antisym:.2e}");
        println!("  metric compatibility:    {:.2e}", compat.abs());
        println!("  first Bianchi identity:  {bianchi:.2e}");

        // the vertical direction is flat
        let r_vertical = space.curvature_op(x, y, &space.xi(), &p).unwrap();
        let vertical_norm: f64 = r_vertical.iter().map(|a| a.abs()).fold(0.0, f64::max);
        println!("  R(X,Y)ξ  (flat factor):  {vertical_norm:.2e}\n");
    }

    let flat = ProductSpace::new(0.0, 3).unwrap();
    let p = vec![0.0, 1.0, 2.0, 3.0, 0.5];
    let x = flat.tangential_project(&p, &[0.1, 0.5, -0.4, 0.2, 0.9]).unwrap();
    let y = flat.tangential_project(&p, &[-0.7, 0.2, 0.3, 0.8, -0.1]).unwrap();
    let r = flat.curvature_op(&x, &y, &x, &p).unwrap();
    println!(
        "c = 0: curvature vanishes identically, |R(X,Y)X| = {:.2e}",
        r.iter().map(|a| a.abs()).fold(0.0, f64::max)
    );
}
