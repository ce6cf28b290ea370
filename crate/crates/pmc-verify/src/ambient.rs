//! The ambient product manifold M^n(c) × ℝ.
//!
//! The space form M^n(c) is realized as a quadric in a flat (n+1)-dimensional
//! space — the sphere ⟨x,x⟩ = 1/c in Euclidean space for c > 0, the upper
//! hyperboloid sheet ⟨x,x⟩_L = 1/c in Lorentzian space (signature −,+,…,+)
//! for c < 0, and the hyperplane x₀ = 0 for c = 0 — with one extra flat
//! coordinate for the ℝ factor. In this model the Levi-Civita connection of
//! the product is a flat derivative followed by a projection, and the
//! vertical unit field ξ = ∂/∂t is literally a constant coordinate vector.

// Index loops below mirror the tensor-index notation of the formulas.
#![allow(clippy::needless_range_loop)]

use thiserror::Error;

use crate::jet::Jet;
use crate::thresholds::TANGENCY_TOL;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum AmbientError {
    #[error("expected vectors of dimension {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("vector is not tangent to the product (residual {residual:e} > {tol:e})")]
    NotTangent { residual: f64, tol: f64 },
    #[error("point is not on the product manifold (residual {residual:e} > {tol:e})")]
    OffManifold { residual: f64, tol: f64 },
    #[error("space form dimension must be at least 2, got {n}")]
    InvalidDimension { n: usize },
}

/// A complete simply-connected space form M^n(c).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpaceForm {
    /// Sectional curvature.
    pub c: f64,
    /// Dimension n ≥ 2.
    pub n: usize,
}

/// The product M^n(c) × ℝ, embedded in flat ℝ^{n+2}.
///
/// Coordinates 0..=n parametrize the quadric factor (coordinate 0 carries
/// the Lorentz sign when c < 0); coordinate n+1 is the line factor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProductSpace {
    pub base: SpaceForm,
    /// Tolerance for quadric-membership and tangency checks.
    pub tangency_tol: f64,
}

impl ProductSpace {
    pub fn new(c: f64, n: usize) -> Result<Self, AmbientError> {
        if n < 2 {
            return Err(AmbientError::InvalidDimension { n });
        }
        Ok(ProductSpace {
            base: SpaceForm { c, n },
            tangency_tol: TANGENCY_TOL,
        })
    }

    pub fn curvature(&self) -> f64 {
        self.base.c
    }

    /// Number of flat ambient coordinates: n+1 quadric + 1 line.
    pub fn ambient_dim(&self) -> usize {
        self.base.n + 2
    }

    /// Index of the line-factor coordinate.
    pub fn line_index(&self) -> usize {
        self.base.n + 1
    }

    /// Signature weight of coordinate k (−1 only for k = 0 when c < 0).
    pub fn metric_weight(&self, k: usize) -> f64 {
        if k == 0 && self.base.c < 0.0 {
            -1.0
        } else {
            1.0
        }
    }

    /// The vertical unit field ξ = ∂/∂t, constant in this model.
    pub fn xi(&self) -> Vec<f64> {
        let mut v = vec![0.0; self.ambient_dim()];
        v[self.line_index()] = 1.0;
        v
    }

    /// Signature inner product without a dimension check (internal use).
    pub(crate) fn dot(&self, a: &[f64], b: &[f64]) -> f64 {
        debug_assert_eq!(a.len(), self.ambient_dim());
        debug_assert_eq!(b.len(), self.ambient_dim());
        let mut acc = 0.0;
        for k in 0..a.len() {
            acc += self.metric_weight(k) * a[k] * b[k];
        }
        acc
    }

    /// Signature inner product restricted to the quadric-factor coordinates.
    pub(crate) fn dot_base(&self, a: &[f64], b: &[f64]) -> f64 {
        let mut acc = 0.0;
        for k in 0..=self.base.n {
            acc += self.metric_weight(k) * a[k] * b[k];
        }
        acc
    }

    /// Signature inner product of jet-valued ambient vectors.
    pub(crate) fn dot_jets(&self, a: &[Jet], b: &[Jet]) -> Jet {
        debug_assert_eq!(a.len(), self.ambient_dim());
        let degree = a
            .iter()
            .chain(b.iter())
            .map(Jet::degree)
            .min()
            .unwrap_or(0);
        let mut acc = Jet::zero(degree);
        for k in 0..a.len() {
            let term = &a[k] * &b[k];
            acc = &acc + &term.scale(self.metric_weight(k));
        }
        acc
    }

    pub(crate) fn dot_base_jets(&self, a: &[Jet], b: &[Jet]) -> Jet {
        let degree = a
            .iter()
            .chain(b.iter())
            .map(Jet::degree)
            .min()
            .unwrap_or(0);
        let mut acc = Jet::zero(degree);
        for k in 0..=self.base.n {
            let term = &a[k] * &b[k];
            acc = &acc + &term.scale(self.metric_weight(k));
        }
        acc
    }

    /// The ambient inner product, with the Lorentz block for c < 0.
    pub fn inner(&self, a: &[f64], b: &[f64]) -> Result<f64, AmbientError> {
        let dim = self.ambient_dim();
        if a.len() != dim {
            return Err(AmbientError::DimensionMismatch {
                expected: dim,
                got: a.len(),
            });
        }
        if b.len() != dim {
            return Err(AmbientError::DimensionMismatch {
                expected: dim,
                got: b.len(),
            });
        }
        Ok(self.dot(a, b))
    }

    /// Deviation of p from the product manifold: |⟨p_M, p_M⟩ − 1/c| for
    /// c ≠ 0, |p₀| for the flat model.
    pub fn quadric_residual(&self, p: &[f64]) -> f64 {
        let c = self.base.c;
        if c == 0.0 {
            p[0].abs()
        } else {
            (self.dot_base(p, p) - 1.0 / c).abs()
        }
    }

    /// Deviation of w from the tangent space of the product at p.
    pub fn tangency_residual(&self, p: &[f64], w: &[f64]) -> f64 {
        if self.base.c == 0.0 {
            w[0].abs()
        } else {
            self.dot_base(p, w).abs()
        }
    }

    /// Unit normal of the quadric factor at p (zero on the line coordinate).
    /// For c < 0 this vector is timelike with ⟨ν,ν⟩ = −1.
    pub fn quadric_normal(&self, p: &[f64]) -> Vec<f64> {
        let mut v = vec![0.0; self.ambient_dim()];
        let c = self.base.c;
        if c == 0.0 {
            v[0] = 1.0;
        } else {
            let scale = c.abs().sqrt();
            for k in 0..=self.base.n {
                v[k] = scale * p[k];
            }
        }
        v
    }

    /// Projects w onto the tangent space of the product at p, realizing the
    /// Levi-Civita connection of the product as flat derivative + projection.
    /// For c ≠ 0 this subtracts c⟨w_M, p_M⟩ p_M on the quadric factor.
    pub fn tangential_project(&self, p: &[f64], w: &[f64]) -> Result<Vec<f64>, AmbientError> {
        let residual = self.quadric_residual(p);
        if residual > self.tangency_tol {
            return Err(AmbientError::OffManifold {
                residual,
                tol: self.tangency_tol,
            });
        }
        let dim = self.ambient_dim();
        if w.len() != dim {
            return Err(AmbientError::DimensionMismatch {
                expected: dim,
                got: w.len(),
            });
        }
        let mut out = w.to_vec();
        let c = self.base.c;
        if c == 0.0 {
            out[0] = 0.0;
        } else {
            let factor = c * self.dot_base(w, p);
            for k in 0..=self.base.n {
                out[k] -= factor * p[k];
            }
        }
        Ok(out)
    }

    /// Jet-valued version of [`tangential_project`]; p is the (jet) position.
    pub(crate) fn tangential_project_jets(&self, p: &[Jet], w: &[Jet]) -> Vec<Jet> {
        let c = self.base.c;
        let mut out = w.to_vec();
        if c == 0.0 {
            out[0] = Jet::zero(out[0].degree());
        } else {
            let factor = self.dot_base_jets(w, p).scale(c);
            for k in 0..=self.base.n {
                out[k] = &out[k] - &(&factor * &p[k]);
            }
        }
        out
    }

    /// The curvature tensor R̄(X,Y)Z of M^n(c) × ℝ:
    ///
    /// R̄(X,Y)Z = c{⟨Y,Z⟩X − ⟨X,Z⟩Y − ⟨Y,ξ⟩⟨Z,ξ⟩X + ⟨X,ξ⟩⟨Z,ξ⟩Y
    ///            + ⟨X,Z⟩⟨Y,ξ⟩ξ − ⟨Y,Z⟩⟨X,ξ⟩ξ}
    ///
    /// X, Y, Z must be tangent to the product at p.
    pub fn curvature_op(
        &self,
        x: &[f64],
        y: &[f64],
        z: &[f64],
        p: &[f64],
    ) -> Result<Vec<f64>, AmbientError> {
        let dim = self.ambient_dim();
        for v in [x, y, z, p] {
            if v.len() != dim {
                return Err(AmbientError::DimensionMismatch {
                    expected: dim,
                    got: v.len(),
                });
            }
        }
        let residual = self.quadric_residual(p);
        if residual > self.tangency_tol {
            return Err(AmbientError::OffManifold {
                residual,
                tol: self.tangency_tol,
            });
        }
        for v in [x, y, z] {
            let residual = self.tangency_residual(p, v);
            if residual > self.tangency_tol {
                return Err(AmbientError::NotTangent {
                    residual,
                    tol: self.tangency_tol,
                });
            }
        }
        let c = self.base.c;
        let t = self.line_index();
        let (yz, xz) = (self.dot(y, z), self.dot(x, z));
        let (x_xi, y_xi, z_xi) = (x[t], y[t], z[t]);
        let mut out = vec![0.0; dim];
        let coeff_x = c * (yz - y_xi * z_xi);
        let coeff_y = c * (-xz + x_xi * z_xi);
        let coeff_xi = c * (xz * y_xi - yz * x_xi);
        for k in 0..dim {
            out[k] = coeff_x * x[k] + coeff_y * y[k];
        }
        out[t] += coeff_xi;
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn assert_close(a: f64, b: f64, tol: f64, what: &str) {
        assert!((a - b).abs() <= tol, "{what}: {a} vs {b}");
    }

    fn norm(v: &[f64]) -> f64 {
        v.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    #[test]
    fn lorentz_signature_inner_product() {
        let space = ProductSpace::new(-1.0, 3).unwrap();
        let e0 = vec![1.0, 0.0, 0.0, 0.0, 0.0];
        assert_eq!(space.inner(&e0, &e0).unwrap(), -1.0);
        // hyperboloid point satisfies ⟨x,x⟩ = 1/c
        assert_eq!(space.quadric_residual(&e0), 0.0);
    }

    #[test]
    fn euclidean_inner_product_is_kronecker() {
        let space = ProductSpace::new(1.0, 3).unwrap();
        for i in 0..5 {
            for j in 0..5 {
                let mut a = vec![0.0; 5];
                let mut b = vec![0.0; 5];
                a[i] = 1.0;
                b[j] = 1.0;
                let expected = if i == j { 1.0 } else { 0.0 };
                assert_eq!(space.inner(&a, &b).unwrap(), expected);
            }
        }
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let space = ProductSpace::new(1.0, 3).unwrap();
        let short = vec![1.0; 4];
        let ok = vec![1.0; 5];
        assert!(matches!(
            space.inner(&short, &ok),
            Err(AmbientError::DimensionMismatch { .. })
        ));
    }

    /// A quadric point of S³(1) ⊂ ℝ⁵ with line coordinate t.
    fn sphere_point(space: &ProductSpace, angles: [f64; 3], t: f64) -> Vec<f64> {
        let [a, b, g] = angles;
        let r = 1.0 / space.base.c.sqrt();
        vec![
            r * a.cos(),
            r * a.sin() * b.cos(),
            r * a.sin() * b.sin() * g.cos(),
            r * a.sin() * b.sin() * g.sin(),
            t,
        ]
    }

    fn random_tangent(space: &ProductSpace, p: &[f64], rng: &mut StdRng) -> Vec<f64> {
        let raw: Vec<f64> = (0..space.ambient_dim())
            .map(|_| rng.gen_range(-1.0..1.0))
            .collect();
        space.tangential_project(p, &raw).unwrap()
    }

    #[test]
    fn constant_curvature_plane_section() {
        // X, Y orthonormal, both ⊥ ξ, Z = Y gives R̄(X,Y)Y = cX.
        let space = ProductSpace::new(1.0, 3).unwrap();
        let p = sphere_point(&space, [0.0, 0.0, 0.0], 0.3);
        let x = vec![0.0, 1.0, 0.0, 0.0, 0.0];
        let y = vec![0.0, 0.0, 1.0, 0.0, 0.0];
        let r = space.curvature_op(&x, &y, &y, &p).unwrap();
        for k in 0..5 {
            assert_close(r[k], x[k], 1e-15, "R(X,Y)Y = X on the sphere factor");
        }
    }

    #[test]
    fn vertical_direction_is_flat() {
        let space = ProductSpace::new(1.0, 3).unwrap();
        let p = sphere_point(&space, [0.0, 0.0, 0.0], -0.7);
        let x = vec![0.0, 1.0, 0.0, 0.0, 0.0];
        let y = vec![0.0, 0.0, 1.0, 0.0, 0.0];
        let xi = space.xi();
        let r = space.curvature_op(&x, &y, &xi, &p).unwrap();
        assert_close(norm(&r), 0.0, 1e-15, "R(X,Y)ξ = 0");
    }

    #[test]
    fn curvature_symmetries_on_random_tangents() {
        for &c in &[1.0, -1.0, 0.0, 2.5, -0.4] {
            let space = ProductSpace::new(c, 3).unwrap();
            let p = if c > 0.0 {
                sphere_point(&space, [0.9, 1.2, 0.4], 0.2)
            } else if c < 0.0 {
                let s = 1.0 / (-c).sqrt();
                // upper hyperboloid sheet
                let (w1, w2, w3) = (0.4, -0.3, 0.6);
                let spatial: f64 = w1 * w1 + w2 * w2 + w3 * w3;
                vec![s * (1.0 + spatial).sqrt(), s * w1, s * w2, s * w3, 0.1]
            } else {
                vec![0.0, 0.4, -0.2, 0.9, 0.5]
            };
            assert!(space.quadric_residual(&p) <= 1e-12);
            let mut rng = StdRng::seed_from_u64(0x9e3779b97f4a7c15);
            for _ in 0..20 {
                let x = random_tangent(&space, &p, &mut rng);
                let y = random_tangent(&space, &p, &mut rng);
                let z = random_tangent(&space, &p, &mut rng);
                let w = random_tangent(&space, &p, &mut rng);

                let rxyz = space.curvature_op(&x, &y, &z, &p).unwrap();
                let ryxz = space.curvature_op(&y, &x, &z, &p).unwrap();
                for k in 0..5 {
                    assert_eq!(rxyz[k] + ryxz[k], 0.0, "antisymmetry in (X,Y)");
                }

                let compat =
                    space.dot(&rxyz, &w) + space.dot(&space.curvature_op(&x, &y, &w, &p).unwrap(), &z);
                assert_close(compat, 0.0, 1e-12, "metric compatibility");

                let ryzx = space.curvature_op(&y, &z, &x, &p).unwrap();
                let rzxy = space.curvature_op(&z, &x, &y, &p).unwrap();
                let bianchi: f64 = (0..5)
                    .map(|k| (rxyz[k] + ryzx[k] + rzxy[k]).abs())
                    .fold(0.0, f64::max);
                assert!(bianchi <= 1e-12, "first Bianchi identity, got {bianchi}");

                if c == 0.0 {
                    assert_close(norm(&rxyz), 0.0, 1e-15, "flat product has R̄ = 0");
                }
            }
        }
    }

    #[test]
    fn projection_is_idempotent_and_kills_the_normal() {
        let space = ProductSpace::new(1.0, 3).unwrap();
        let p = sphere_point(&space, [1.1, 0.3, 2.0], 0.0);
        let mut rng = StdRng::seed_from_u64(42);
        for _ in 0..10 {
            let raw: Vec<f64> = (0..5).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let once = space.tangential_project(&p, &raw).unwrap();
            let twice = space.tangential_project(&p, &once).unwrap();
            for k in 0..5 {
                assert_close(once[k], twice[k], 1e-14, "idempotence");
            }
            assert!(space.tangency_residual(&p, &once) <= 1e-12);
        }
        // the quadric position direction projects to zero on the base factor
        let radial: Vec<f64> = p.iter().enumerate().map(|(k, &x)| if k < 4 { x } else { 0.0 }).collect();
        let projected = space.tangential_project(&p, &radial).unwrap();
        for k in 0..4 {
            assert_close(projected[k], 0.0, 1e-14, "normal direction killed");
        }
    }

    #[test]
    fn off_manifold_is_rejected() {
        let space = ProductSpace::new(1.0, 3).unwrap();
        let bad = vec![2.0, 0.0, 0.0, 0.0, 0.0];
        assert!(matches!(
            space.tangential_project(&bad, &[1.0, 0.0, 0.0, 0.0, 0.0]),
            Err(AmbientError::OffManifold { .. })
        ));
        let p = sphere_point(&space, [0.5, 0.5, 0.5], 0.0);
        let not_tangent = vec![p[0], p[1], p[2], p[3], 0.0];
        assert!(matches!(
            space.curvature_op(&not_tangent, &space.xi(), &space.xi(), &p),
            Err(AmbientError::NotTangent { .. })
        ));
    }

    /// Independent oracle for R̄ on M³(c) × ℝ: a polar chart with the
    /// closed-form round (or hyperbolic) metric, Christoffel symbols by
    /// central differences of the metric, curvature by central differences
    /// of the Christoffels.
    mod chart_oracle {
        use super::*;

        const H: f64 = 1e-4;

        fn chart(space: &ProductSpace, q: [f64; 4]) -> Vec<f64> {
            let c = space.base.c;
            let r = 1.0 / c.abs().sqrt();
            let [t1, t2, t3, t] = q;
            if c > 0.0 {
                vec![
                    r * t1.cos(),
                    r * t1.sin() * t2.cos(),
                    r * t1.sin() * t2.sin() * t3.cos(),
                    r * t1.sin() * t2.sin() * t3.sin(),
                    t,
                ]
            } else {
                vec![
                    r * t1.cosh(),
                    r * t1.sinh() * t2.cos(),
                    r * t1.sinh() * t2.sin() * t3.cos(),
                    r * t1.sinh() * t2.sin() * t3.sin(),
                    t,
                ]
            }
        }

        /// Round/hyperbolic metric of M³(c) × ℝ in polar coordinates.
        fn metric(c: f64, q: [f64; 4]) -> [[f64; 4]; 4] {
            let radial = if c > 0.0 { q[0].sin() } else { q[0].sinh() };
            let mut g = [[0.0; 4]; 4];
            g[0][0] = 1.0 / c.abs();
            g[1][1] = radial * radial / c.abs();
            g[2][2] = (radial * q[1].sin()).powi(2) / c.abs();
            g[3][3] = 1.0;
            g
        }

        fn metric_inv(c: f64, q: [f64; 4]) -> [[f64; 4]; 4] {
            let g = metric(c, q);
            let mut inv = [[0.0; 4]; 4];
            for k in 0..4 {
                inv[k][k] = 1.0 / g[k][k];
            }
            inv
        }

        fn shifted(q: [f64; 4], k: usize, delta: f64) -> [f64; 4] {
            let mut out = q;
            out[k] += delta;
            out
        }

        fn christoffel(c: f64, q: [f64; 4]) -> [[[f64; 4]; 4]; 4] {
            let inv = metric_inv(c, q);
            let mut dg = [[[0.0; 4]; 4]; 4]; // dg[k][i][j] = ∂_k g_ij
            for k in 0..4 {
                let gp = metric(c, shifted(q, k, H));
                let gm = metric(c, shifted(q, k, -H));
                for i in 0..4 {
                    for j in 0..4 {
                        dg[k][i][j] = (gp[i][j] - gm[i][j]) / (2.0 * H);
                    }
                }
            }
            let mut gamma = [[[0.0; 4]; 4]; 4]; // Γ^k_ij
            for k in 0..4 {
                for i in 0..4 {
                    for j in 0..4 {
                        let mut acc = 0.0;
                        for l in 0..4 {
                            acc += 0.5 * inv[k][l] * (dg[i][j][l] + dg[j][i][l] - dg[l][i][j]);
                        }
                        gamma[k][i][j] = acc;
                    }
                }
            }
            gamma
        }

        /// R^l_{k,ij} = ∂_i Γ^l_jk − ∂_j Γ^l_ik + Γ^l_im Γ^m_jk − Γ^l_jm Γ^m_ik
        fn riemann_mixed(c: f64, q: [f64; 4], k: usize, i: usize, j: usize) -> [f64; 4] {
            let gp_i = christoffel(c, shifted(q, i, H));
            let gm_i = christoffel(c, shifted(q, i, -H));
            let gp_j = christoffel(c, shifted(q, j, H));
            let gm_j = christoffel(c, shifted(q, j, -H));
            let g0 = christoffel(c, q);
            let mut out = [0.0; 4];
            for l in 0..4 {
                let mut acc = (gp_i[l][j][k] - gm_i[l][j][k]) / (2.0 * H)
                    - (gp_j[l][i][k] - gm_j[l][i][k]) / (2.0 * H);
                for m in 0..4 {
                    acc += g0[l][i][m] * g0[m][j][k] - g0[l][j][m] * g0[m][i][k];
                }
                out[l] = acc;
            }
            out
        }

        fn jacobian_column(space: &ProductSpace, q: [f64; 4], k: usize) -> Vec<f64> {
            // analytic chart differential via small central difference of the
            // chart map itself; step chosen so the error is ≪ the tolerance
            let h = 1e-6;
            let p_plus = chart(space, shifted(q, k, h));
            let p_minus = chart(space, shifted(q, k, -h));
            (0..5).map(|a| (p_plus[a] - p_minus[a]) / (2.0 * h)).collect()
        }

        fn check_against_chart(c: f64) {
            let space = ProductSpace::new(c, 3).unwrap();
            let q = [0.7, 0.9, 1.1, 0.3];
            let p = chart(&space, q);
            assert!(space.quadric_residual(&p) <= 1e-12);
            // all index triples with i < j so the section is nondegenerate
            for (i, j, k) in [(0, 1, 2), (0, 2, 1), (1, 2, 0), (0, 3, 1), (1, 3, 2), (2, 3, 0)] {
                let x = jacobian_column(&space, q, i);
                let y = jacobian_column(&space, q, j);
                let z = jacobian_column(&space, q, k);
                let ambient = space.curvature_op(&x, &y, &z, &p).unwrap();
                let mixed = riemann_mixed(c, q, k, i, j);
                let mut pushed = [0.0; 5];
                for l in 0..4 {
                    let col = jacobian_column(&space, q, l);
                    for a in 0..5 {
                        pushed[a] += mixed[l] * col[a];
                    }
                }
                for a in 0..5 {
                    assert!(
                        (ambient[a] - pushed[a]).abs() <= 1e-6,
                        "c = {c}, component {a} of R({i},{j}){k}: {} vs {}",
                        ambient[a],
                        pushed[a]
                    );
                }
            }
        }

        #[test]
        fn ambient_curvature_matches_chart_riemann_spherical() {
            check_against_chart(1.0);
            check_against_chart(2.5);
        }

        #[test]
        fn ambient_curvature_matches_chart_riemann_hyperbolic() {
            check_against_chart(-1.0);
            check_against_chart(-0.7);
        }
    }
}
