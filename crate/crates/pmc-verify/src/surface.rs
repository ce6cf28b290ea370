//! Pointwise geometry of an immersed surface in M^n(c) × ℝ.
//!
//! [`evaluate_state`] takes a parametrized immersion, evaluates it in jet
//! arithmetic at a chart point, and derives the complete geometric state:
//! first and second fundamental forms, Christoffel symbols, orthonormal
//! tangent and normal frames, shape operators, the tangent/normal split of
//! the vertical field ξ, traceless operators, curvature and the quadratic
//! form Q. Every intermediate quantity is kept as a jet of its residual
//! degree, so derived scalars can be re-differentiated (Laplacians,
//! covariant-derivative norms) without any nested numeric differentiation.
//!
//! Sign conventions, fixed once for the whole crate:
//! * Weingarten: ∇̄_X V = −A_V X + ∇⊥_X V, so ⟨A_V X, Y⟩ = ⟨σ(X,Y), V⟩;
//! * mean curvature: H = ½ trace_g σ;
//! * Laplacian: analyst sign, Δ of a convex bump at its maximum is negative.

// Index loops below mirror the tensor-index notation of the formulas.
#![allow(clippy::needless_range_loop)]

use thiserror::Error;

use crate::ambient::ProductSpace;
use crate::jet::{Jet, JetError};
use crate::thresholds::{FRAME_PROJECTION_THRESHOLD, GRAM_DET_THRESHOLD, MINIMAL_H_THRESHOLD};

#[derive(Debug, Clone, Error, PartialEq)]
pub enum SurfaceError {
    #[error(transparent)]
    Jet(#[from] JetError),
    #[error("point ({u}, {v}) lies outside the chart domain")]
    PointOutsideChart { u: f64, v: f64 },
    #[error("immersion returned {got} coordinates, ambient dimension is {expected}")]
    ImmersionDimension { expected: usize, got: usize },
    #[error("image point off the product manifold (quadric residual {residual:e} > {tol:e})")]
    OffManifold { residual: f64, tol: f64 },
    #[error("degenerate metric: Gram determinant {det:e} below threshold {threshold:e}")]
    DegenerateMetric { det: f64, threshold: f64 },
    #[error("operation needs φ_H but |H| = {h_norm:e} is below the minimal-point threshold")]
    MinimalPoint { h_norm: f64 },
    #[error("jet degree too low: need {needed} derivative orders, have {available}")]
    InsufficientJetDegree { needed: usize, available: usize },
    #[error("could not complete the normal frame (got {got} of {needed} vectors)")]
    FrameConstruction { needed: usize, got: usize },
    #[error("{what} requires base dimension n = 3, space has n = {n}")]
    WrongDimension { what: &'static str, n: usize },
}

/// Rectangular chart domain [u₀,u₁] × [v₀,v₁].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChartDomain {
    pub u: [f64; 2],
    pub v: [f64; 2],
}

impl ChartDomain {
    pub fn new(u: [f64; 2], v: [f64; 2]) -> Self {
        ChartDomain { u, v }
    }

    pub fn contains(&self, point: [f64; 2]) -> bool {
        point[0] >= self.u[0]
            && point[0] <= self.u[1]
            && point[1] >= self.v[0]
            && point[1] <= self.v[1]
    }
}

/// Regular midpoint sampling grid over a chart domain.
///
/// Points are strictly interior and emitted in row-major order (u outer,
/// v inner), which fixes the ordering of every report in the crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GridSpec {
    pub nu: usize,
    pub nv: usize,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec { nu: 8, nv: 8 }
    }
}

impl GridSpec {
    pub fn new(nu: usize, nv: usize) -> Self {
        GridSpec { nu, nv }
    }

    pub fn points(&self, domain: &ChartDomain) -> Vec<[f64; 2]> {
        let mut out = Vec::with_capacity(self.nu * self.nv);
        for i in 0..self.nu {
            let u = domain.u[0] + (domain.u[1] - domain.u[0]) * (i as f64 + 0.5) / self.nu as f64;
            for j in 0..self.nv {
                let v =
                    domain.v[0] + (domain.v[1] - domain.v[0]) * (j as f64 + 0.5) / self.nv as f64;
                out.push([u, v]);
            }
        }
        out
    }
}

/// Intrinsic type of the full (unparametrized) surface; used by the theorem
/// gates to record which global hypotheses are taken on trust.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Topology {
    Sphere,
    Torus,
    Plane,
    Cylinder,
    Disk,
}

impl Topology {
    pub fn name(&self) -> &'static str {
        match self {
            Topology::Sphere => "sphere",
            Topology::Torus => "torus",
            Topology::Plane => "plane",
            Topology::Cylinder => "cylinder",
            Topology::Disk => "disk",
        }
    }
}

type EvalFn = dyn Fn(f64, f64, usize) -> Vec<Jet> + Send + Sync;

/// A parametrized immersion chart into M^n(c) × ℝ, evaluated in jets.
pub struct Immersion {
    pub space: ProductSpace,
    pub domain: ChartDomain,
    pub name: String,
    pub params: Vec<(String, f64)>,
    pub topology: Topology,
    /// Completeness of the underlying surface; not checkable numerically,
    /// recorded so theorem gates can report it as an assumption.
    pub complete: bool,
    eval: Box<EvalFn>,
}

impl Immersion {
    pub fn new(
        space: ProductSpace,
        domain: ChartDomain,
        name: impl Into<String>,
        topology: Topology,
        complete: bool,
        params: Vec<(String, f64)>,
        eval: impl Fn(f64, f64, usize) -> Vec<Jet> + Send + Sync + 'static,
    ) -> Self {
        Immersion {
            space,
            domain,
            name: name.into(),
            params,
            topology,
            complete,
            eval: Box::new(eval),
        }
    }

    /// Ambient coordinate functions as jets of the requested degree.
    pub fn eval_jets(&self, u: f64, v: f64, degree: usize) -> Vec<Jet> {
        (self.eval)(u, v, degree)
    }
}

impl std::fmt::Debug for Immersion {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Immersion")
            .field("name", &self.name)
            .field("params", &self.params)
            .field("domain", &self.domain)
            .finish()
    }
}

/// Scalar fields derived from the state that can be re-differentiated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NamedField {
    /// |φ|², squared norm of the traceless second fundamental form.
    Phi2,
    /// |φ_H|², squared norm of φ_H = A_H/|H| − |H|·id (nonminimal only).
    PhiH2,
    /// |φ₄|² = |φ|² − |φ_H|² (n = 3, nonminimal only).
    Phi42,
    /// |T|², squared norm of the tangent part of ξ.
    T2,
    /// |φ|² − c|T|².
    Phi2MinusCT2,
}

/// Operator fields whose covariant-derivative norm can be evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OperatorField {
    /// φ_H = A_H/|H| − |H|·id (equals φ₃ in the frame E₃ = H/|H|).
    PhiH,
    /// φ₄ = A₄, the shape operator of the last normal frame field (n = 3).
    Phi4,
    /// A_V for V the α-th normal frame field.
    ShapeOperator(usize),
}

/// Tangent/normal split of the vertical field ξ along the surface.
#[derive(Debug, Clone, PartialEq)]
pub struct XiSplit {
    pub t_ambient: Vec<f64>,
    pub n_ambient: Vec<f64>,
    pub t2: f64,
    /// ν_α = ⟨N, E_α⟩ per normal frame vector.
    pub nu: Vec<f64>,
}

type JetVec = Vec<Jet>;
type JetMat = [[Jet; 2]; 2];

fn jv_values(v: &[Jet]) -> Vec<f64> {
    v.iter().map(Jet::value).collect()
}

fn jv_partial(v: &[Jet], along_u: bool) -> Result<JetVec, JetError> {
    v.iter()
        .map(|j| if along_u { j.partial_u() } else { j.partial_v() })
        .collect()
}

fn jv_sub(a: &[Jet], b: &[Jet]) -> JetVec {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn jv_scale_jet(v: &[Jet], s: &Jet) -> JetVec {
    v.iter().map(|x| x * s).collect()
}

fn jet_mat(entries: Vec<Jet>) -> JetMat {
    let mut it = entries.into_iter();
    [
        [it.next().unwrap(), it.next().unwrap()],
        [it.next().unwrap(), it.next().unwrap()],
    ]
}

/// Determinant by Laplace expansion; matrices here are at most 6×6.
fn det_small(m: &[Vec<f64>]) -> f64 {
    let n = m.len();
    if n == 1 {
        return m[0][0];
    }
    let mut acc = 0.0;
    let mut sign = 1.0;
    for col in 0..n {
        let minor: Vec<Vec<f64>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(k, _)| *k != col)
                    .map(|(_, &x)| x)
                    .collect()
            })
            .collect();
        acc += sign * m[0][col] * det_small(&minor);
        sign = -sign;
    }
    acc
}

/// Complete pointwise geometric state of an immersed surface.
///
/// All fields are jets expanded about the evaluation point; the accessor
/// methods return plain values at the point.
pub struct GeometricState {
    space: ProductSpace,
    point: [f64; 2],
    degree: usize,
    position: JetVec,
    tangent: [JetVec; 2],
    metric: JetMat,
    metric_inv: JetMat,
    metric_det: Jet,
    christoffel: [[[Jet; 2]; 2]; 2],
    frame: [JetVec; 2],
    frame_coeff: JetMat,
    normal_frame: Vec<JetVec>,
    sigma: [[JetVec; 2]; 2],
    sff: Vec<JetMat>,
    mean_curvature: JetVec,
    h2: Jet,
    h_norm: Option<Jet>,
    minimal: bool,
    xi_jets: JetVec,
    t_ambient: JetVec,
    n_ambient: JetVec,
    t2: Jet,
    hn: Jet,
    a_h: JetMat,
    a_n: JetMat,
    sigma2: Jet,
    phi2: Jet,
    phi_h2: Option<Jet>,
    nu: Vec<Jet>,
}

/// Evaluates the complete geometric state of `im` at a chart point.
///
/// `degree` is the retained jet degree of the immersion; degree 4 makes
/// every Laplacian identity computable, lower degrees yield progressively
/// less differentiable states.
pub fn evaluate_state(
    im: &Immersion,
    point: [f64; 2],
    degree: usize,
) -> Result<GeometricState, SurfaceError> {
    if degree < 2 {
        return Err(SurfaceError::InsufficientJetDegree {
            needed: 2,
            available: degree,
        });
    }
    if !im.domain.contains(point) {
        return Err(SurfaceError::PointOutsideChart {
            u: point[0],
            v: point[1],
        });
    }
    let space = im.space;
    let dim = space.ambient_dim();
    let position = im.eval_jets(point[0], point[1], degree);
    if position.len() != dim {
        return Err(SurfaceError::ImmersionDimension {
            expected: dim,
            got: position.len(),
        });
    }
    let quadric_residual = space.quadric_residual(&jv_values(&position));
    if quadric_residual > space.tangency_tol {
        return Err(SurfaceError::OffManifold {
            residual: quadric_residual,
            tol: space.tangency_tol,
        });
    }

    let xu = jv_partial(&position, true)?;
    let xv = jv_partial(&position, false)?;
    let g00 = space.dot_jets(&xu, &xu);
    let g01 = space.dot_jets(&xu, &xv);
    let g11 = space.dot_jets(&xv, &xv);
    let det = &(&g00 * &g11) - &(&g01 * &g01);
    if det.value() < GRAM_DET_THRESHOLD || g00.value() < GRAM_DET_THRESHOLD {
        return Err(SurfaceError::DegenerateMetric {
            det: det.value(),
            threshold: GRAM_DET_THRESHOLD,
        });
    }
    let inv00 = g11.try_div(&det)?;
    let inv01 = g01.try_div(&det)?.scale(-1.0);
    let inv11 = g00.try_div(&det)?;
    let metric = [[g00.clone(), g01.clone()], [g01.clone(), g11.clone()]];
    let metric_inv = [[inv00.clone(), inv01.clone()], [inv01, inv11]];
    let tangent = [xu, xv];

    // Γ^k_ij = ½ g^{kl} (∂_i g_jl + ∂_j g_il − ∂_l g_ij)
    let mut dg: Vec<Vec<Jet>> = Vec::with_capacity(2);
    for d in 0..2 {
        let mut block = Vec::with_capacity(4);
        for i in 0..2 {
            for j in 0..2 {
                block.push(if d == 0 {
                    metric[i][j].partial_u()?
                } else {
                    metric[i][j].partial_v()?
                });
            }
        }
        dg.push(block);
    }
    let dg_at = |d: usize, i: usize, j: usize| -> &Jet { &dg[d][i * 2 + j] };
    let mut gamma_entries: Vec<Jet> = Vec::with_capacity(8);
    for k in 0..2 {
        for i in 0..2 {
            for j in 0..2 {
                let mut acc: Option<Jet> = None;
                for l in 0..2 {
                    let sum = &(dg_at(i, j, l) + dg_at(j, i, l)) - dg_at(l, i, j);
                    let term = (&metric_inv[k][l] * &sum).scale(0.5);
                    acc = Some(match acc {
                        Some(a) => &a + &term,
                        None => term,
                    });
                }
                gamma_entries.push(acc.unwrap());
            }
        }
    }
    let mut gamma_it = gamma_entries.into_iter();
    let mut next_gamma = || gamma_it.next().unwrap();
    let christoffel = [
        [
            [next_gamma(), next_gamma()],
            [next_gamma(), next_gamma()],
        ],
        [
            [next_gamma(), next_gamma()],
            [next_gamma(), next_gamma()],
        ],
    ];

    // Second fundamental form: project the flat second derivative onto the
    // product tangent space, then remove the surface-tangential part.
    let xuu = jv_partial(&tangent[0], true)?;
    let xuv = jv_partial(&tangent[0], false)?;
    let xvv = jv_partial(&tangent[1], false)?;
    let second = [[xuu, xuv.clone()], [xuv, xvv]];
    let mut sigma_flat: Vec<JetVec> = Vec::with_capacity(4);
    for a in 0..2 {
        for b in 0..2 {
            let projected = space.tangential_project_jets(&position, &second[a][b]);
            let mut normal_part = projected.clone();
            for k in 0..2 {
                let mut coeff: Option<Jet> = None;
                for l in 0..2 {
                    let term = &metric_inv[k][l] * &space.dot_jets(&projected, &tangent[l]);
                    coeff = Some(match coeff {
                        Some(c) => &c + &term,
                        None => term,
                    });
                }
                normal_part = jv_sub(&normal_part, &jv_scale_jet(&tangent[k], &coeff.unwrap()));
            }
            sigma_flat.push(normal_part);
        }
    }
    let mut sig_it = sigma_flat.into_iter();
    let mut next_sig = || sig_it.next().unwrap();
    let sigma = [[next_sig(), next_sig()], [next_sig(), next_sig()]];

    // H = ½ trace_g σ
    let mut mean_curvature = vec![Jet::zero(degree.saturating_sub(2)); dim];
    for a in 0..2 {
        for b in 0..2 {
            let w = jv_scale_jet(&sigma[a][b], &metric_inv[a][b].scale(0.5));
            for k in 0..dim {
                mean_curvature[k] = &mean_curvature[k] + &w[k];
            }
        }
    }
    let h2 = space.dot_jets(&mean_curvature, &mean_curvature);
    let minimal = h2.value() < MINIMAL_H_THRESHOLD * MINIMAL_H_THRESHOLD;
    let h_norm = if minimal { None } else { Some(h2.sqrt()?) };

    // Orthonormal tangent frame from Gram–Schmidt on (x_u, x_v).
    let s1 = g00.sqrt()?;
    let e1 = jv_scale_jet(&tangent[0], &s1.recip()?);
    let w = jv_sub(&tangent[1], &jv_scale_jet(&tangent[0], &g01.try_div(&g00)?));
    let w2 = space.dot_jets(&w, &w);
    let s2 = w2.sqrt()?;
    let e2 = jv_scale_jet(&w, &s2.recip()?);
    let frame_coeff = [
        [s1.recip()?, Jet::zero(s1.degree())],
        [g01.scale(-1.0).try_div(&(&g00 * &s2))?, s2.recip()?],
    ];
    let frame = [e1, e2];

    // Normal frame: E₃ = H/|H| when nonminimal, then deterministic
    // Gram–Schmidt on the ambient axes (fixed order) for the rest.
    let needed = space.base.n - 1;
    let mut normal_frame: Vec<JetVec> = Vec::with_capacity(needed);
    if let Some(h_norm) = &h_norm {
        normal_frame.push(jv_scale_jet(&mean_curvature, &h_norm.recip()?));
    }
    for axis in 0..dim {
        if normal_frame.len() == needed {
            break;
        }
        let e_axis: JetVec = (0..dim)
            .map(|k| Jet::constant(if k == axis { 1.0 } else { 0.0 }, degree))
            .collect();
        let mut w = space.tangential_project_jets(&position, &e_axis);
        for f in frame.iter().chain(normal_frame.iter()) {
            let coeff = space.dot_jets(&w, f);
            w = jv_sub(&w, &jv_scale_jet(f, &coeff));
        }
        let n2 = space.dot_jets(&w, &w);
        if n2.value() > FRAME_PROJECTION_THRESHOLD {
            let norm = n2.sqrt()?;
            normal_frame.push(jv_scale_jet(&w, &norm.recip()?));
        }
    }
    if normal_frame.len() < needed {
        return Err(SurfaceError::FrameConstruction {
            needed,
            got: normal_frame.len(),
        });
    }
    // Fix the orientation of the last normal vector so the full ambient
    // basis (E₁, E₂, normal frame, quadric normal) is positively oriented.
    {
        let mut columns: Vec<Vec<f64>> = Vec::with_capacity(dim);
        columns.push(jv_values(&frame[0]));
        columns.push(jv_values(&frame[1]));
        for f in &normal_frame {
            columns.push(jv_values(f));
        }
        columns.push(space.quadric_normal(&jv_values(&position)));
        let rows: Vec<Vec<f64>> = (0..dim)
            .map(|r| columns.iter().map(|c| c[r]).collect())
            .collect();
        if det_small(&rows) < 0.0 {
            let last = normal_frame.last_mut().unwrap();
            *last = last.iter().map(|j| j.scale(-1.0)).collect();
        }
    }

    // ξ split: T = g^{kl}⟨ξ, x_l⟩ ∂_k, N = ξ − T.
    let xi_jets: JetVec = space
        .xi()
        .iter()
        .map(|&w| Jet::constant(w, degree))
        .collect();
    let mut t_ambient = vec![Jet::zero(degree.saturating_sub(1)); dim];
    for k in 0..2 {
        let mut coeff: Option<Jet> = None;
        for l in 0..2 {
            let term = &metric_inv[k][l] * &space.dot_jets(&xi_jets, &tangent[l]);
            coeff = Some(match coeff {
                Some(c) => &c + &term,
                None => term,
            });
        }
        let w = jv_scale_jet(&tangent[k], &coeff.unwrap());
        for i in 0..dim {
            t_ambient[i] = &t_ambient[i] + &w[i];
        }
    }
    let n_ambient = jv_sub(&xi_jets, &t_ambient);
    let t2 = space.dot_jets(&xi_jets, &t_ambient);
    let hn = space.dot_jets(&mean_curvature, &n_ambient);

    // Mixed-component shape operators (A_V)^k_l = g^{km} ⟨σ_ml, V⟩.
    let mixed_op = |v: &JetVec| -> JetMat {
        let mut entries: Vec<Jet> = Vec::with_capacity(4);
        for k in 0..2 {
            for l in 0..2 {
                let mut acc: Option<Jet> = None;
                for m in 0..2 {
                    let term = &metric_inv[k][m] * &space.dot_jets(&sigma[m][l], v);
                    acc = Some(match acc {
                        Some(a) => &a + &term,
                        None => term,
                    });
                }
                entries.push(acc.unwrap());
            }
        }
        jet_mat(entries)
    };
    let a_h = mixed_op(&mean_curvature);
    let a_n = mixed_op(&n_ambient);

    // |σ|² = g^{ik} g^{jl} ⟨σ_ij, σ_kl⟩ (frame-free)
    let mut sigma2: Option<Jet> = None;
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    let term = &(&metric_inv[i][k] * &metric_inv[j][l])
                        * &space.dot_jets(&sigma[i][j], &sigma[k][l]);
                    sigma2 = Some(match sigma2 {
                        Some(a) => &a + &term,
                        None => term,
                    });
                }
            }
        }
    }
    let sigma2 = sigma2.unwrap();
    let phi2 = &sigma2 - &h2.scale(2.0);
    let phi_h2 = match &h_norm {
        Some(_) => {
            // |φ_H|² = |A_H|²/|H|² − 2|H|²
            let mut tr: Option<Jet> = None;
            for k in 0..2 {
                for l in 0..2 {
                    let term = &a_h[k][l] * &a_h[l][k];
                    tr = Some(match tr {
                        Some(a) => &a + &term,
                        None => term,
                    });
                }
            }
            Some(&tr.unwrap().try_div(&h2)? - &h2.scale(2.0))
        }
        None => None,
    };

    // σ^α_ab = ⟨σ(E_a, E_b), E_α⟩ in the orthonormal frames.
    let nu: Vec<Jet> = normal_frame
        .iter()
        .map(|f| space.dot_jets(&xi_jets, f))
        .collect();
    let mut sff: Vec<JetMat> = Vec::with_capacity(needed);
    for f in &normal_frame {
        let mut entries: Vec<Jet> = Vec::with_capacity(4);
        for a in 0..2 {
            for b in 0..2 {
                let mut acc: Option<Jet> = None;
                for i in 0..2 {
                    for j in 0..2 {
                        let term = &(&frame_coeff[a][i] * &frame_coeff[b][j])
                            * &space.dot_jets(&sigma[i][j], f);
                        acc = Some(match acc {
                            Some(x) => &x + &term,
                            None => term,
                        });
                    }
                }
                entries.push(acc.unwrap());
            }
        }
        sff.push(jet_mat(entries));
    }

    Ok(GeometricState {
        space,
        point,
        degree,
        position,
        tangent,
        metric,
        metric_inv,
        metric_det: det,
        christoffel,
        frame,
        frame_coeff,
        normal_frame,
        sigma,
        sff,
        mean_curvature,
        h2,
        h_norm,
        minimal,
        xi_jets,
        t_ambient,
        n_ambient,
        t2,
        hn,
        a_h,
        a_n,
        sigma2,
        phi2,
        phi_h2,
        nu,
    })
}

impl GeometricState {
    pub fn space(&self) -> &ProductSpace {
        &self.space
    }

    pub fn point(&self) -> [f64; 2] {
        self.point
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn curvature_constant(&self) -> f64 {
        self.space.curvature()
    }

    pub fn minimal(&self) -> bool {
        self.minimal
    }

    pub fn position_at(&self) -> Vec<f64> {
        jv_values(&self.position)
    }

    /// Position coordinate as a jet field (e.g. for Laplacian tests on
    /// ambient height functions).
    pub fn position_jet(&self, k: usize) -> &Jet {
        &self.position[k]
    }

    pub fn metric_at(&self) -> [[f64; 2]; 2] {
        [
            [self.metric[0][0].value(), self.metric[0][1].value()],
            [self.metric[1][0].value(), self.metric[1][1].value()],
        ]
    }

    pub fn metric_inv_at(&self) -> [[f64; 2]; 2] {
        [
            [self.metric_inv[0][0].value(), self.metric_inv[0][1].value()],
            [self.metric_inv[1][0].value(), self.metric_inv[1][1].value()],
        ]
    }

    pub fn metric_det_at(&self) -> f64 {
        self.metric_det.value()
    }

    /// The metric coefficient g_ab as a jet field (for derivative oracles).
    pub fn metric_jet(&self, a: usize, b: usize) -> &Jet {
        &self.metric[a][b]
    }

    /// Γ^k_ij at the point.
    pub fn christoffel_at(&self) -> [[[f64; 2]; 2]; 2] {
        let mut out = [[[0.0; 2]; 2]; 2];
        for k in 0..2 {
            for i in 0..2 {
                for j in 0..2 {
                    out[k][i][j] = self.christoffel[k][i][j].value();
                }
            }
        }
        out
    }

    pub fn tangent_frame_at(&self) -> [Vec<f64>; 2] {
        [jv_values(&self.frame[0]), jv_values(&self.frame[1])]
    }

    /// Coordinate components of the orthonormal tangent frame:
    /// E_a = Σ_i coeff[a][i] ∂_i.
    pub fn frame_coeff_at(&self) -> [[f64; 2]; 2] {
        [
            [self.frame_coeff[0][0].value(), self.frame_coeff[0][1].value()],
            [self.frame_coeff[1][0].value(), self.frame_coeff[1][1].value()],
        ]
    }

    pub fn normal_frame_at(&self) -> Vec<Vec<f64>> {
        self.normal_frame.iter().map(|f| jv_values(f)).collect()
    }

    /// Number of normal frame vectors (n − 1).
    pub fn normal_rank(&self) -> usize {
        self.normal_frame.len()
    }

    pub fn mean_curvature_at(&self) -> Vec<f64> {
        jv_values(&self.mean_curvature)
    }

    pub fn h2_value(&self) -> f64 {
        self.h2.value()
    }

    /// |H| at the point (zero at minimal points).
    pub fn h_norm_value(&self) -> f64 {
        self.h_norm.as_ref().map_or(0.0, Jet::value)
    }

    pub fn t2_value(&self) -> f64 {
        self.t2.value()
    }

    pub fn sigma2_value(&self) -> f64 {
        self.sigma2.value()
    }

    pub fn phi2_value(&self) -> f64 {
        self.phi2.value()
    }

    /// ⟨H, N⟩ at the point.
    pub fn hn_value(&self) -> f64 {
        self.hn.value()
    }

    pub fn phi_h2_value(&self) -> Result<f64, SurfaceError> {
        self.phi_h2
            .as_ref()
            .map(Jet::value)
            .ok_or(SurfaceError::MinimalPoint {
                h_norm: self.h_norm_value(),
            })
    }

    /// |φ₄|² = |φ|² − |φ_H|² for n = 3.
    pub fn phi4_2_value(&self) -> Result<f64, SurfaceError> {
        self.require_n3("|φ₄|²")?;
        Ok(self.phi2.value() - self.phi_h2_value()?)
    }

    fn require_n3(&self, what: &'static str) -> Result<(), SurfaceError> {
        if self.space.base.n != 3 {
            return Err(SurfaceError::WrongDimension {
                what,
                n: self.space.base.n,
            });
        }
        Ok(())
    }

    /// σ^α_ab in the orthonormal frames, one 2×2 block per normal direction.
    pub fn sff_at(&self) -> Vec<[[f64; 2]; 2]> {
        self.sff
            .iter()
            .map(|m| {
                [
                    [m[0][0].value(), m[0][1].value()],
                    [m[1][0].value(), m[1][1].value()],
                ]
            })
            .collect()
    }

    /// σ^α_ab as a jet field (for derivative oracles).
    pub fn sff_jet(&self, alpha: usize, a: usize, b: usize) -> &Jet {
        &self.sff[alpha][a][b]
    }

    /// σ_ij (coordinate directions) as an ambient vector at the point.
    pub fn sigma_at(&self, i: usize, j: usize) -> Vec<f64> {
        jv_values(&self.sigma[i][j])
    }

    /// Shape operator A_α as a matrix in the orthonormal tangent frame.
    pub fn shape_operator(&self, alpha: usize) -> [[f64; 2]; 2] {
        let m = &self.sff[alpha];
        [
            [m[0][0].value(), m[0][1].value()],
            [m[1][0].value(), m[1][1].value()],
        ]
    }

    /// Traceless part φ_α = A_α − ½(trace A_α)·id.
    pub fn phi_matrix(&self, alpha: usize) -> [[f64; 2]; 2] {
        let mut m = self.shape_operator(alpha);
        let half_trace = 0.5 * (m[0][0] + m[1][1]);
        m[0][0] -= half_trace;
        m[1][1] -= half_trace;
        m
    }

    /// φ_H = A_H/|H| − |H|·id in the orthonormal tangent frame.
    pub fn phi_h_matrix(&self) -> Result<[[f64; 2]; 2], SurfaceError> {
        let h = self.h_norm.as_ref().ok_or(SurfaceError::MinimalPoint {
            h_norm: self.h_norm_value(),
        })?;
        let h = h.value();
        let ah = self.shape_in_direction_frame(&jv_values(&self.mean_curvature));
        let mut out = [[0.0; 2]; 2];
        for a in 0..2 {
            for b in 0..2 {
                out[a][b] = ah[a][b] / h - if a == b { h } else { 0.0 };
            }
        }
        Ok(out)
    }

    /// ⟨σ(E_a, E_b), V⟩ for an arbitrary ambient vector V, at the point.
    pub fn shape_in_direction_frame(&self, v: &[f64]) -> [[f64; 2]; 2] {
        let mut out = [[0.0; 2]; 2];
        for a in 0..2 {
            for b in 0..2 {
                let mut acc = 0.0;
                for i in 0..2 {
                    for j in 0..2 {
                        let s = &self.sigma[i][j];
                        let mut dot = 0.0;
                        for (k, sk) in s.iter().enumerate() {
                            dot += self.space.metric_weight(k) * sk.value() * v[k];
                        }
                        acc +=
                            self.frame_coeff[a][i].value() * self.frame_coeff[b][j].value() * dot;
                    }
                }
                out[a][b] = acc;
            }
        }
        out
    }

    /// A_N in the orthonormal tangent frame.
    pub fn a_n_frame(&self) -> [[f64; 2]; 2] {
        self.shape_in_direction_frame(&jv_values(&self.n_ambient))
    }

    /// ν_α = ⟨ξ, E_α⟩ per normal frame vector.
    pub fn nu_at(&self) -> Vec<f64> {
        self.nu.iter().map(Jet::value).collect()
    }

    /// T in the orthonormal tangent frame: τ_a = ⟨ξ, E_a⟩.
    pub fn t_frame_at(&self) -> [f64; 2] {
        let xi = self.space.xi();
        [
            self.space.dot(&xi, &jv_values(&self.frame[0])),
            self.space.dot(&xi, &jv_values(&self.frame[1])),
        ]
    }

    /// Tangent/normal split of ξ, with |T|² and the ν_α list.
    pub fn split_xi(&self) -> XiSplit {
        XiSplit {
            t_ambient: jv_values(&self.t_ambient),
            n_ambient: jv_values(&self.n_ambient),
            t2: self.t2.value(),
            nu: self.nu_at(),
        }
    }

    /// The named derived scalar as a jet field about the point.
    pub fn field_jet(&self, field: NamedField) -> Result<Jet, SurfaceError> {
        match field {
            NamedField::Phi2 => Ok(self.phi2.clone()),
            NamedField::T2 => Ok(self.t2.clone()),
            NamedField::PhiH2 => self.phi_h2.clone().ok_or(SurfaceError::MinimalPoint {
                h_norm: self.h_norm_value(),
            }),
            NamedField::Phi42 => {
                self.require_n3("|φ₄|²")?;
                let phi_h2 = self.phi_h2.clone().ok_or(SurfaceError::MinimalPoint {
                    h_norm: self.h_norm_value(),
                })?;
                Ok(&self.phi2 - &phi_h2)
            }
            NamedField::Phi2MinusCT2 => Ok(&self.phi2 - &self.t2.scale(self.space.curvature())),
        }
    }

    /// Laplace–Beltrami of a scalar jet field at the point (analyst sign):
    /// Δs = g^{ij}(∂_i ∂_j s − Γ^k_ij ∂_k s).
    pub fn laplacian_of(&self, field: &Jet) -> Result<f64, SurfaceError> {
        if field.degree() < 2 {
            return Err(SurfaceError::InsufficientJetDegree {
                needed: 2,
                available: field.degree(),
            });
        }
        let ginv = self.metric_inv_at();
        let gamma = self.christoffel_at();
        let grad = [field.partial(1, 0)?, field.partial(0, 1)?];
        let hess = [
            [field.partial(2, 0)?, field.partial(1, 1)?],
            [field.partial(1, 1)?, field.partial(0, 2)?],
        ];
        let mut acc = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                let mut corr = 0.0;
                for k in 0..2 {
                    corr += gamma[k][i][j] * grad[k];
                }
                acc += ginv[i][j] * (hess[i][j] - corr);
            }
        }
        Ok(acc)
    }

    /// Laplacian of one of the named derived scalars.
    pub fn laplacian(&self, field: NamedField) -> Result<f64, SurfaceError> {
        let jet = self.field_jet(field)?;
        self.laplacian_of(&jet)
    }

    /// Components of R(∂_u, ∂_v)∂_k from the Christoffel jets:
    /// out[l][k] = R^l_{k,uv}. Needs one derivative order on Γ.
    pub fn riemann_uv(&self) -> Result<[[f64; 2]; 2], SurfaceError> {
        if self.degree < 3 {
            return Err(SurfaceError::InsufficientJetDegree {
                needed: 3,
                available: self.degree,
            });
        }
        let gamma = self.christoffel_at();
        let mut out = [[0.0; 2]; 2];
        for l in 0..2 {
            for k in 0..2 {
                // ∂_u Γ^l_vk − ∂_v Γ^l_uk + Γ^l_um Γ^m_vk − Γ^l_vm Γ^m_uk
                let mut acc = self.christoffel[l][1][k].partial(1, 0)?
                    - self.christoffel[l][0][k].partial(0, 1)?;
                for m in 0..2 {
                    acc += gamma[l][0][m] * gamma[m][1][k] - gamma[l][1][m] * gamma[m][0][k];
                }
                out[l][k] = acc;
            }
        }
        Ok(out)
    }

    /// Gaussian curvature two ways: intrinsically from the Christoffel jets
    /// and extrinsically from 2K = 2c(1 − |T|²) + 4|H|² − |σ|². Agreement of
    /// the two is the Gauss-equation test.
    pub fn gaussian_curvature_two_ways(&self) -> Result<(f64, f64), SurfaceError> {
        let riem = self.riemann_uv()?;
        let g = self.metric_at();
        // K = ⟨R(∂u,∂v)∂v, ∂u⟩ / det g
        let intrinsic = (g[0][0] * riem[0][1] + g[0][1] * riem[1][1]) / self.metric_det_at();
        let c = self.space.curvature();
        let extrinsic =
            0.5 * (2.0 * c * (1.0 - self.t2.value()) + 4.0 * self.h2.value() - self.sigma2.value());
        Ok((intrinsic, extrinsic))
    }

    /// Mixed components (A_H)^k_l as jet fields.
    pub fn a_h_jets(&self) -> &JetMat {
        &self.a_h
    }

    /// Mixed components (A_N)^k_l as jet fields.
    pub fn a_n_jets(&self) -> &JetMat {
        &self.a_n
    }

    /// φ_H = A_H/|H| − |H|·id as a mixed-component jet field.
    pub fn phi_h_jets(&self) -> Result<JetMat, SurfaceError> {
        let h = self.h_norm.as_ref().ok_or(SurfaceError::MinimalPoint {
            h_norm: self.h_norm_value(),
        })?;
        let mut out = self.a_h.clone();
        for (k, row) in out.iter_mut().enumerate() {
            for (l, entry) in row.iter_mut().enumerate() {
                *entry = entry.try_div(h)?;
                if k == l {
                    *entry = &*entry - h;
                }
            }
        }
        Ok(out)
    }

    /// A_V as a mixed-component jet field, V the α-th normal frame field.
    pub fn shape_operator_jets(&self, alpha: usize) -> JetMat {
        let v = &self.normal_frame[alpha];
        let mut entries: Vec<Jet> = Vec::with_capacity(4);
        for k in 0..2 {
            for l in 0..2 {
                let mut acc: Option<Jet> = None;
                for m in 0..2 {
                    let term =
                        &self.metric_inv[k][m] * &self.space.dot_jets(&self.sigma[m][l], v);
                    acc = Some(match acc {
                        Some(a) => &a + &term,
                        None => term,
                    });
                }
                entries.push(acc.unwrap());
            }
        }
        jet_mat(entries)
    }

    /// Values of the covariant derivative (∇_d A)^k_l of a mixed-component
    /// operator jet field, for both coordinate directions d.
    pub fn covariant_derivative_values(
        &self,
        op: &JetMat,
    ) -> Result<[[[f64; 2]; 2]; 2], SurfaceError> {
        if op[0][0].degree() < 1 {
            return Err(SurfaceError::InsufficientJetDegree {
                needed: 1,
                available: op[0][0].degree(),
            });
        }
        let gamma = self.christoffel_at();
        let vals = [
            [op[0][0].value(), op[0][1].value()],
            [op[1][0].value(), op[1][1].value()],
        ];
        let mut out = [[[0.0; 2]; 2]; 2];
        for d in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    let mut acc = if d == 0 {
                        op[k][l].partial(1, 0)?
                    } else {
                        op[k][l].partial(0, 1)?
                    };
                    for m in 0..2 {
                        acc += gamma[k][d][m] * vals[m][l] - gamma[m][d][l] * vals[k][m];
                    }
                    out[d][k][l] = acc;
                }
            }
        }
        Ok(out)
    }

    /// |∇A|² = g^{cd} tr((∇_c A)(∇_d A)) for a g-self-adjoint operator field.
    pub fn covariant_gradient_norm_of(&self, op: &JetMat) -> Result<f64, SurfaceError> {
        let nabla = self.covariant_derivative_values(op)?;
        let ginv = self.metric_inv_at();
        let mut acc = 0.0;
        for c in 0..2 {
            for d in 0..2 {
                let mut tr = 0.0;
                for k in 0..2 {
                    for l in 0..2 {
                        tr += nabla[c][k][l] * nabla[d][l][k];
                    }
                }
                acc += ginv[c][d] * tr;
            }
        }
        Ok(acc)
    }

    /// |∇A|² for one of the named operator fields. The quantity is
    /// frame-independent only when the defining normal field is parallel in
    /// the normal bundle (E₃ = H/|H| on pmc surfaces, E₄ for n = 3 pmc).
    pub fn covariant_gradient_norm(&self, which: OperatorField) -> Result<f64, SurfaceError> {
        match which {
            OperatorField::PhiH => {
                let op = self.phi_h_jets()?;
                self.covariant_gradient_norm_of(&op)
            }
            OperatorField::Phi4 => {
                self.require_n3("φ₄")?;
                let op = self.shape_operator_jets(self.normal_frame.len() - 1);
                self.covariant_gradient_norm_of(&op)
            }
            OperatorField::ShapeOperator(alpha) => {
                let op = self.shape_operator_jets(alpha);
                self.covariant_gradient_norm_of(&op)
            }
        }
    }

    /// Normal-bundle part of the flat derivative of an ambient jet field:
    /// values of ∇⊥_d V at the point.
    pub fn normal_connection_derivative(
        &self,
        field: &[Jet],
        along_u: bool,
    ) -> Result<Vec<f64>, SurfaceError> {
        let jets = self.normal_connection_derivative_jets(field, along_u)?;
        Ok(jv_values(&jets))
    }

    fn normal_connection_derivative_jets(
        &self,
        field: &[Jet],
        along_u: bool,
    ) -> Result<JetVec, SurfaceError> {
        let deriv = jv_partial(field, along_u)?;
        let projected = self.space.tangential_project_jets(&self.position, &deriv);
        let mut out = projected;
        for f in &self.frame {
            let coeff = self.space.dot_jets(&out, f);
            out = jv_sub(&out, &jv_scale_jet(f, &coeff));
        }
        Ok(out)
    }

    /// Coordinate tangent vector x_u or x_v as ambient jets.
    pub fn coordinate_tangent_jets(&self, i: usize) -> &JetVec {
        &self.tangent[i]
    }

    /// The vertical field ξ as (constant) ambient jets.
    pub fn xi_ambient_jets(&self) -> &JetVec {
        &self.xi_jets
    }

    /// Ambient jets of the tangent part T of ξ.
    pub fn t_ambient_jets(&self) -> &JetVec {
        &self.t_ambient
    }

    /// Ambient jets of the normal part N of ξ.
    pub fn n_ambient_jets(&self) -> &JetVec {
        &self.n_ambient
    }

    /// Ambient jets of the mean curvature vector H.
    pub fn mean_curvature_jets(&self) -> &JetVec {
        &self.mean_curvature
    }

    /// ω_d = ⟨∇⊥_d E₃, E₄⟩ as a jet, the normal connection form (n = 3).
    pub fn normal_connection_form(&self, along_u: bool) -> Result<Jet, SurfaceError> {
        self.require_n3("normal connection form")?;
        let d3 = self.normal_connection_derivative_jets(&self.normal_frame[0], along_u)?;
        Ok(self.space.dot_jets(&d3, &self.normal_frame[1]))
    }

    /// Normal-connection residual of V = the α-th normal frame field:
    /// max over coordinate directions of |∇⊥_X V|.
    pub fn parallelism_residual(&self, alpha: usize) -> Result<f64, SurfaceError> {
        let mut max = 0.0f64;
        for along_u in [true, false] {
            let d = self.normal_connection_derivative_jets(&self.normal_frame[alpha], along_u)?;
            let norm2 = self.space.dot_jets(&d, &d).value();
            max = max.max(norm2.max(0.0).sqrt());
        }
        Ok(max)
    }

    /// Max over coordinate directions of |∇⊥_X H| / (1 + |H|); zero exactly
    /// when the surface is pmc at the point.
    pub fn pmc_residual(&self) -> Result<f64, SurfaceError> {
        let mut max = 0.0f64;
        for along_u in [true, false] {
            let d = self.normal_connection_derivative_jets(&self.mean_curvature, along_u)?;
            let norm2 = self.space.dot_jets(&d, &d).value();
            max = max.max(norm2.max(0.0).sqrt());
        }
        Ok(max / (1.0 + self.h_norm_value()))
    }

    /// Q(E_a, E_b) = 2⟨σ(E_a,E_b), H⟩ − c⟨E_a,ξ⟩⟨E_b,ξ⟩ in the orthonormal
    /// tangent frame.
    pub fn q_form(&self, a: usize, b: usize) -> f64 {
        let sh = self.shape_in_direction_frame(&jv_values(&self.mean_curvature));
        let tau = self.t_frame_at();
        2.0 * sh[a][b] - self.space.curvature() * tau[a] * tau[b]
    }
}

/// Evaluates the Laplace–Beltrami operator of a named derived scalar at a
/// chart point, using jets of [`crate::thresholds::DEFAULT_JET_DEGREE`].
pub fn intrinsic_laplacian(
    im: &Immersion,
    point: [f64; 2],
    field: NamedField,
) -> Result<f64, SurfaceError> {
    let state = evaluate_state(im, point, crate::thresholds::DEFAULT_JET_DEGREE)?;
    state.laplacian(field)
}

/// Normal-connection residual of H at a chart point; see
/// [`GeometricState::pmc_residual`].
pub fn normal_connection_residual(im: &Immersion, point: [f64; 2]) -> Result<f64, SurfaceError> {
    let state = evaluate_state(im, point, crate::thresholds::DEFAULT_JET_DEGREE)?;
    state.pmc_residual()
}

/// |∇A|² of a named operator field at a chart point.
pub fn covariant_gradient_norm(
    im: &Immersion,
    point: [f64; 2],
    which: OperatorField,
) -> Result<f64, SurfaceError> {
    let state = evaluate_state(im, point, crate::thresholds::DEFAULT_JET_DEGREE)?;
    state.covariant_gradient_norm(which)
}
