//! Residual evaluation of the proved identities for surfaces in M^n(c) × ℝ.
//!
//! Each [`IdentityKind`] is one equation: the left side is always computed
//! through the jet pipeline (a Laplacian of a derived scalar field, an
//! intrinsic curvature tensor, a connection form), the right side is
//! assembled from named algebraic terms of the geometric state, and the two
//! are compared through a scale-normalized residual
//!
//! ```text
//! residual = |lhs − rhs| / (1 + Σ |term|)
//! ```
//!
//! so identities whose terms span orders of magnitude as c and |H| vary are
//! judged on equal footing. The right side is *defined* as the sum of the
//! reported terms, so a report's terms always sum to its `rhs` exactly.
//!
//! Every kind carries an applicability predicate (pmc required, nonminimal
//! required, n = 3 required); points where a predicate fails produce a
//! report marked not-applicable, which is not a failure.

// Index loops below mirror the tensor-index notation of the formulas.
#![allow(clippy::needless_range_loop)]

use rayon::prelude::*;

use crate::surface::{
    evaluate_state, GeometricState, GridSpec, Immersion, NamedField, OperatorField, SurfaceError,
};
use crate::thresholds::{CROSSCHECK_TOL, DEFAULT_JET_DEGREE, IDENTITY_TOL, PMC_RESIDUAL_TOL};

/// The identities the suite can evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IdentityKind {
    /// Gauss equation: intrinsic R(X,Y)Z against the ambient curvature plus
    /// shape-operator terms.
    GaussEq,
    /// Codazzi equation for a parallel normal field V:
    /// (∇_X A_V)Y = (∇_Y A_V)X + c⟨V,N⟩(⟨Y,T⟩X − ⟨X,T⟩Y).
    Codazzi,
    /// [A_V, A_U] = 0 for V parallel in the normal bundle.
    RicciCommute,
    /// Ricci equation: ⟨R⊥(X,Y)E₃,E₄⟩ = ⟨[A₃,A₄]X,Y⟩ (the ambient term
    /// vanishes in product spaces).
    NormalCurvature,
    /// ½Δ|A_V|² for V parallel with constant trace (Simons-type equation).
    SimonsAV,
    /// ½Δ|φ_H|² for nonminimal pmc surfaces.
    SimonsPhiH,
    /// ½Δ|φ₄|² for nonminimal pmc surfaces in M³(c) × ℝ.
    SimonsPhi4,
    /// ½Δ|φ|², both printed forms cross-checked termwise.
    SimonsPhi,
    /// ½Δ|T|² for pmc surfaces.
    LaplacianT,
    /// ½Δ(|φ|² − c|T|²) for nonminimal pmc surfaces in M³(c) × ℝ.
    DeltaSum,
    /// |φ_H T|² = ½|T|²|φ_H|².
    PhiTNorm,
    /// Schwarz inequality ⟨H,N⟩² ≤ (1 − |T|²)|H|² (nonnegative slack).
    SchwarzBound,
}

/// Applicability predicate of an identity kind.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Requirements {
    pub pmc: bool,
    pub nonminimal: bool,
    pub n3: bool,
    /// Takes an auxiliary normal field V.
    pub aux: bool,
}

impl IdentityKind {
    pub const ALL: [IdentityKind; 12] = [
        IdentityKind::GaussEq,
        IdentityKind::Codazzi,
        IdentityKind::RicciCommute,
        IdentityKind::NormalCurvature,
        IdentityKind::SimonsAV,
        IdentityKind::SimonsPhiH,
        IdentityKind::SimonsPhi4,
        IdentityKind::SimonsPhi,
        IdentityKind::LaplacianT,
        IdentityKind::DeltaSum,
        IdentityKind::PhiTNorm,
        IdentityKind::SchwarzBound,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            IdentityKind::GaussEq => "gauss-eq",
            IdentityKind::Codazzi => "codazzi",
            IdentityKind::RicciCommute => "ricci-commute",
            IdentityKind::NormalCurvature => "normal-curvature",
            IdentityKind::SimonsAV => "simons-av",
            IdentityKind::SimonsPhiH => "simons-phi-h",
            IdentityKind::SimonsPhi4 => "simons-phi4",
            IdentityKind::SimonsPhi => "simons-phi",
            IdentityKind::LaplacianT => "laplacian-t",
            IdentityKind::DeltaSum => "delta-sum",
            IdentityKind::PhiTNorm => "phi-t-norm",
            IdentityKind::SchwarzBound => "schwarz-bound",
        }
    }

    pub fn parse(name: &str) -> Option<IdentityKind> {
        IdentityKind::ALL.into_iter().find(|k| k.name() == name)
    }

    pub fn requires(&self) -> Requirements {
        let (pmc, nonminimal, n3, aux) = match self {
            IdentityKind::GaussEq => (false, false, false, false),
            IdentityKind::Codazzi => (true, false, false, true),
            IdentityKind::RicciCommute => (true, false, false, false),
            IdentityKind::NormalCurvature => (false, false, true, false),
            IdentityKind::SimonsAV => (true, false, false, true),
            IdentityKind::SimonsPhiH => (true, true, false, false),
            IdentityKind::SimonsPhi4 => (true, true, true, false),
            IdentityKind::SimonsPhi => (true, true, true, false),
            IdentityKind::LaplacianT => (true, false, false, false),
            IdentityKind::DeltaSum => (true, true, true, false),
            IdentityKind::PhiTNorm => (false, true, false, false),
            IdentityKind::SchwarzBound => (false, false, false, false),
        };
        Requirements {
            pmc,
            nonminimal,
            n3,
            aux,
        }
    }
}

/// Choice of the auxiliary normal field V for Codazzi and the A_V Simons
/// equation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NormalDirection {
    /// V = H (parallel exactly when the surface is pmc).
    MeanCurvature,
    /// V = E₄, the last normal frame field (parallel for n = 3 pmc).
    FrameE4,
}

impl NormalDirection {
    pub fn name(&self) -> &'static str {
        match self {
            NormalDirection::MeanCurvature => "H",
            NormalDirection::FrameE4 => "E4",
        }
    }
}

/// Outcome of one identity at one point.
#[derive(Debug, Clone, PartialEq)]
pub struct IdentityReport {
    pub kind: IdentityKind,
    pub aux: Option<NormalDirection>,
    pub point: [f64; 2],
    pub lhs: f64,
    pub rhs: f64,
    /// Named terms of the right side; they sum to `rhs` exactly.
    pub terms: Vec<(String, f64)>,
    /// Differences between independent routes to the same term, when the
    /// identity has two printed forms.
    pub crosschecks: Vec<(String, f64)>,
    pub residual: f64,
    pub applicable: bool,
    pub reason: Option<String>,
}

impl IdentityReport {
    fn not_applicable(
        kind: IdentityKind,
        aux: Option<NormalDirection>,
        point: [f64; 2],
        reason: String,
    ) -> Self {
        IdentityReport {
            kind,
            aux,
            point,
            lhs: 0.0,
            rhs: 0.0,
            terms: Vec::new(),
            crosschecks: Vec::new(),
            residual: 0.0,
            applicable: false,
            reason: Some(reason),
        }
    }

    fn from_terms(
        kind: IdentityKind,
        aux: Option<NormalDirection>,
        point: [f64; 2],
        lhs: f64,
        terms: Vec<(String, f64)>,
        crosschecks: Vec<(String, f64)>,
        one_sided: bool,
    ) -> Self {
        let rhs: f64 = terms.iter().map(|(_, v)| v).sum();
        let scale: f64 = 1.0 + terms.iter().map(|(_, v)| v.abs()).sum::<f64>();
        let defect = if one_sided {
            // inequality: only a positive excess of lhs over rhs is a defect
            (lhs - rhs).max(0.0)
        } else {
            (lhs - rhs).abs()
        };
        IdentityReport {
            kind,
            aux,
            point,
            lhs,
            rhs,
            terms,
            crosschecks,
            residual: defect / scale,
            applicable: true,
            reason: None,
        }
    }
}

type Mat2 = [[f64; 2]; 2];

fn mat_mul(a: &Mat2, b: &Mat2) -> Mat2 {
    let mut out = [[0.0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                out[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    out
}

fn mat_trace(a: &Mat2) -> f64 {
    a[0][0] + a[1][1]
}

/// Squared Frobenius norm; equals tr(A²) for the symmetric matrices here.
fn mat_frob2(a: &Mat2) -> f64 {
    a.iter().flatten().map(|x| x * x).sum()
}

fn mat_apply(a: &Mat2, v: [f64; 2]) -> [f64; 2] {
    [
        a[0][0] * v[0] + a[0][1] * v[1],
        a[1][0] * v[0] + a[1][1] * v[1],
    ]
}

fn mat_axpy(out: &mut Mat2, s: f64, a: &Mat2) {
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] += s * a[i][j];
        }
    }
}

/// Evaluates one identity at one chart point (jets of the default degree).
pub fn evaluate_identity(
    kind: IdentityKind,
    im: &Immersion,
    point: [f64; 2],
    aux: Option<NormalDirection>,
    pmc_tol: f64,
) -> Result<IdentityReport, SurfaceError> {
    let state = evaluate_state(im, point, DEFAULT_JET_DEGREE)?;
    evaluate_identity_at(kind, &state, aux, pmc_tol)
}

/// Evaluates one identity on an already-computed state.
pub fn evaluate_identity_at(
    kind: IdentityKind,
    state: &GeometricState,
    aux: Option<NormalDirection>,
    pmc_tol: f64,
) -> Result<IdentityReport, SurfaceError> {
    let req = kind.requires();
    let aux = if req.aux {
        Some(aux.unwrap_or(NormalDirection::MeanCurvature))
    } else {
        None
    };
    let point = state.point();
    let n = state.space().base.n;

    if req.n3 && n != 3 {
        return Ok(IdentityReport::not_applicable(
            kind,
            aux,
            point,
            format!("requires n = 3, space has n = {n}"),
        ));
    }
    if aux == Some(NormalDirection::FrameE4) && n != 3 {
        return Ok(IdentityReport::not_applicable(
            kind,
            aux,
            point,
            format!("aux field E4 requires n = 3, space has n = {n}"),
        ));
    }
    if req.nonminimal && state.minimal() {
        return Ok(IdentityReport::not_applicable(
            kind,
            aux,
            point,
            "minimal point (|H| below threshold)".into(),
        ));
    }
    if req.pmc {
        let res = state.pmc_residual()?;
        if res > pmc_tol {
            return Ok(IdentityReport::not_applicable(
                kind,
                aux,
                point,
                format!("pmc residual exceeded: {res:e} > {pmc_tol:e}"),
            ));
        }
    }

    let c = state.curvature_constant();
    let t2 = state.t2_value();
    let h2 = state.h2_value();
    let hn = state.hn_value();
    let tau = state.t_frame_at();
    let phi2 = state.phi2_value();
    let sigma2 = state.sigma2_value();
    let a_n = state.a_n_frame();

    let report = match kind {
        IdentityKind::GaussEq => {
            // ⟨R(E₁,E₂)E_k, E_d⟩ compared componentwise; the reported point
            // is the (k,d) pair with the largest mismatch.
            let riem = state.riemann_uv()?;
            let f = state.frame_coeff_at();
            let g = state.metric_at();
            let jac = f[0][0] * f[1][1] - f[0][1] * f[1][0];
            let shape: Vec<Mat2> = (0..state.normal_rank())
                .map(|alpha| state.shape_operator(alpha))
                .collect();
            let mut best: Option<(f64, f64, f64, f64)> = None; // (mismatch, lhs, c-term, a-term)
            for k in 0..2 {
                for d in 0..2 {
                    // intrinsic side: coordinate components, then frame
                    let mut lhs = 0.0;
                    for l in 0..2 {
                        let mut vl = 0.0;
                        for kappa in 0..2 {
                            vl += f[k][kappa] * riem[l][kappa];
                        }
                        for m in 0..2 {
                            lhs += jac * vl * g[l][m] * f[d][m];
                        }
                    }
                    let delta = |i: usize, j: usize| if i == j { 1.0 } else { 0.0 };
                    let term_c = c
                        * (delta(1, k) * delta(0, d) - delta(0, k) * delta(1, d)
                            - tau[1] * tau[k] * delta(0, d)
                            + tau[0] * tau[k] * delta(1, d)
                            + delta(0, k) * tau[1] * tau[d]
                            - delta(1, k) * tau[0] * tau[d]);
                    let term_a: f64 = shape
                        .iter()
                        .map(|a| a[1][k] * a[0][d] - a[0][k] * a[1][d])
                        .sum();
                    let mismatch = (lhs - term_c - term_a).abs();
                    if best.is_none_or(|(m, ..)| mismatch > m) {
                        best = Some((mismatch, lhs, term_c, term_a));
                    }
                }
            }
            let (_, lhs, term_c, term_a) = best.unwrap();
            IdentityReport::from_terms(
                kind,
                aux,
                point,
                lhs,
                vec![
                    ("curvature block".into(), term_c),
                    ("shape-operator block".into(), term_a),
                ],
                Vec::new(),
                false,
            )
        }
        IdentityKind::Codazzi => {
            let direction = aux.unwrap();
            let (op, vn) = match direction {
                NormalDirection::MeanCurvature => (state.a_h_jets().clone(), hn),
                NormalDirection::FrameE4 => {
                    (state.shape_operator_jets(n - 2), state.nu_at()[n - 2])
                }
            };
            let nabla = state.covariant_derivative_values(&op)?;
            let f = state.frame_coeff_at();
            let g = state.metric_at();
            // coordinate components of (∇_X A_V)Y for X = E₁, Y = E₂ and of
            // the swapped derivative
            let mut w_xy = [0.0; 2];
            let mut w_yx = [0.0; 2];
            for k in 0..2 {
                for cdir in 0..2 {
                    for l in 0..2 {
                        w_xy[k] += f[0][cdir] * f[1][l] * nabla[cdir][k][l];
                        w_yx[k] += f[1][cdir] * f[0][l] * nabla[cdir][k][l];
                    }
                }
            }
            let frame_component = |w: &[f64; 2], d: usize| -> f64 {
                let mut acc = 0.0;
                for l in 0..2 {
                    for m in 0..2 {
                        acc += w[l] * g[l][m] * f[d][m];
                    }
                }
                acc
            };
            let mut best: Option<(f64, f64, f64, f64)> = None;
            for d in 0..2 {
                let lhs = frame_component(&w_xy, d);
                let t1 = frame_component(&w_yx, d);
                let delta = |i: usize, j: usize| if i == j { 1.0 } else { 0.0 };
                let t2_term = c * vn * (tau[1] * delta(0, d) - tau[0] * delta(1, d));
                let mismatch = (lhs - t1 - t2_term).abs();
                if best.is_none_or(|(m, ..)| mismatch > m) {
                    best = Some((mismatch, lhs, t1, t2_term));
                }
            }
            let (_, lhs, t1, t2_term) = best.unwrap();
            IdentityReport::from_terms(
                kind,
                aux,
                point,
                lhs,
                vec![
                    ("(grad_Y A_V)X".into(), t1),
                    ("c<V.N>(<Y.T>X - <X.T>Y)".into(), t2_term),
                ],
                Vec::new(),
                false,
            )
        }
        IdentityKind::RicciCommute => {
            let rank = state.normal_rank();
            let mut worst = 0.0f64;
            for alpha in 0..rank {
                for beta in (alpha + 1)..rank {
                    let a = state.shape_operator(alpha);
                    let b = state.shape_operator(beta);
                    let comm_ab = mat_mul(&a, &b);
                    let comm_ba = mat_mul(&b, &a);
                    for i in 0..2 {
                        for j in 0..2 {
                            worst = worst.max((comm_ab[i][j] - comm_ba[i][j]).abs());
                        }
                    }
                }
            }
            IdentityReport::from_terms(kind, aux, point, worst, Vec::new(), Vec::new(), false)
        }
        IdentityKind::NormalCurvature => {
            // ⟨R⊥(∂u,∂v)E₃, E₄⟩ = ∂_u ω_v − ∂_v ω_u against the commutator
            let omega_u = state.normal_connection_form(true)?;
            let omega_v = state.normal_connection_form(false)?;
            let lhs = omega_v.partial(1, 0)? - omega_u.partial(0, 1)?;
            let a3 = state.shape_operator_jets(0);
            let a4 = state.shape_operator_jets(1);
            let a3v = [
                [a3[0][0].value(), a3[0][1].value()],
                [a3[1][0].value(), a3[1][1].value()],
            ];
            let a4v = [
                [a4[0][0].value(), a4[0][1].value()],
                [a4[1][0].value(), a4[1][1].value()],
            ];
            let comm = {
                let ab = mat_mul(&a3v, &a4v);
                let ba = mat_mul(&a4v, &a3v);
                let mut out = [[0.0; 2]; 2];
                for i in 0..2 {
                    for j in 0..2 {
                        out[i][j] = ab[i][j] - ba[i][j];
                    }
                }
                out
            };
            // ⟨[A₃,A₄]∂_u, ∂_v⟩ in coordinates
            let g = state.metric_at();
            let commutator = comm[0][0] * g[0][1] + comm[1][0] * g[1][1];
            IdentityReport::from_terms(
                kind,
                aux,
                point,
                lhs,
                vec![
                    ("<[A_3,A_4]X.Y>".into(), commutator),
                    ("ambient <R(X,Y)V.U>".into(), 0.0),
                ],
                Vec::new(),
                false,
            )
        }
        IdentityKind::SimonsAV => {
            let direction = aux.unwrap();
            let (op, av_frame, vn) = match direction {
                NormalDirection::MeanCurvature => {
                    let av = state.shape_in_direction_frame(&state.mean_curvature_at());
                    (state.a_h_jets().clone(), av, hn)
                }
                NormalDirection::FrameE4 => {
                    let alpha = n - 2;
                    let residual = state.parallelism_residual(alpha)?;
                    if residual > pmc_tol {
                        return Ok(IdentityReport::not_applicable(
                            kind,
                            aux,
                            point,
                            format!("aux field E4 not parallel: residual {residual:e}"),
                        ));
                    }
                    (
                        state.shape_operator_jets(alpha),
                        state.shape_operator(alpha),
                        state.nu_at()[alpha],
                    )
                }
            };
            // trace A_V must be constant for the identity to hold
            let tr_jet = &op[0][0] + &op[1][1];
            let tr_drift = tr_jet
                .partial(1, 0)?
                .abs()
                .max(tr_jet.partial(0, 1)?.abs());
            if tr_drift > pmc_tol * (1.0 + tr_jet.value().abs()) {
                return Ok(IdentityReport::not_applicable(
                    kind,
                    aux,
                    point,
                    format!("trace A_V not constant: drift {tr_drift:e}"),
                ));
            }
            let av2_jet = {
                let mut acc = &op[0][0] * &op[0][0];
                acc = &acc + &(&op[0][1] * &op[1][0]);
                acc = &acc + &(&op[1][0] * &op[0][1]);
                acc = &acc + &(&op[1][1] * &op[1][1]);
                acc
            };
            let lhs = 0.5 * state.laplacian_of(&av2_jet)?;
            let grad = state.covariant_gradient_norm_of(&op)?;
            let av2 = mat_frob2(&av_frame);
            let avt = mat_apply(&av_frame, tau);
            let avt2 = avt[0] * avt[0] + avt[1] * avt[1];
            let avtt = avt[0] * tau[0] + avt[1] * tau[1];
            let tr_av = mat_trace(&av_frame);
            let tr_an_av = mat_trace(&mat_mul(&a_n, &av_frame));
            let mut alpha_cubic = 0.0;
            let mut alpha_mixed = 0.0;
            let av_sq = mat_mul(&av_frame, &av_frame);
            for alpha in 0..state.normal_rank() {
                let a = state.shape_operator(alpha);
                alpha_cubic += mat_trace(&a) * mat_trace(&mat_mul(&av_sq, &a));
                alpha_mixed -= mat_trace(&mat_mul(&av_frame, &a)).powi(2);
            }
            IdentityReport::from_terms(
                kind,
                aux,
                point,
                lhs,
                vec![
                    ("|grad A_V|^2".into(), grad),
                    ("c(2-|T|^2)|A_V|^2".into(), c * (2.0 - t2) * av2),
                    ("-4c|A_V T|^2".into(), -4.0 * c * avt2),
                    ("3c tr(A_V)<A_V T.T>".into(), 3.0 * c * tr_av * avtt),
                    ("2c tr(A_N A_V)<V.N>".into(), 2.0 * c * tr_an_av * vn),
                    ("-c(tr A_V)^2".into(), -c * tr_av * tr_av),
                    ("-2c tr(A_V)<H.N><V.N>".into(), -2.0 * c * tr_av * hn * vn),
                    ("sum_a tr(A_a)tr(A_V^2 A_a)".into(), alpha_cubic),
                    ("-sum_a tr(A_V A_a)^2".into(), alpha_mixed),
                ],
                Vec::new(),
                false,
            )
        }
        IdentityKind::SimonsPhiH => {
            let lhs = 0.5 * state.laplacian(NamedField::PhiH2)?;
            let phi_h = state.phi_h_matrix()?;
            let phi_h2 = state.phi_h2_value()?;
            let h_norm = state.h_norm_value();
            let grad = state.covariant_gradient_norm(OperatorField::PhiH)?;
            let bracket = c * (2.0 - 3.0 * t2) + 4.0 * h2 - sigma2;
            let pht = mat_apply(&phi_h, tau);
            let phtt = pht[0] * tau[0] + pht[1] * tau[1];
            let tr_an_phi = mat_trace(&mat_mul(&a_n, &phi_h));
            IdentityReport::from_terms(
                kind,
                aux,
                point,
                lhs,
                vec![
                    ("|grad phi_H|^2".into(), grad),
                    (
                        "{c(2-3|T|^2)+4|H|^2-|sigma|^2}|phi_H|^2".into(),
                        bracket * phi_h2,
                    ),
                    ("-2c|H|<phi_H T.T>".into(), -2.0 * c * h_norm * phtt),
                    (
                        "(2c/|H|)<H.N>tr(A_N phi_H)".into(),
                        2.0 * c / h_norm * hn * tr_an_phi,
                    ),
                ],
                Vec::new(),
                false,
            )
        }
        IdentityKind::SimonsPhi4 => {
            let lhs = 0.5 * state.laplacian(NamedField::Phi42)?;
            let phi4 = state.shape_operator(1);
            let phi42 = state.phi4_2_value()?;
            let nu4 = state.nu_at()[1];
            let grad = state.covariant_gradient_norm(OperatorField::Phi4)?;
            let bracket = c * (2.0 - 3.0 * t2) + 4.0 * h2 - sigma2;
            let tr_an_phi4 = mat_trace(&mat_mul(&a_n, &phi4));
            IdentityReport::from_terms(
                kind,
                aux,
                point,
                lhs,
                vec![
                    ("|grad phi_4|^2".into(), grad),
                    (
                        "{c(2-3|T|^2)+4|H|^2-|sigma|^2}|phi_4|^2".into(),
                        bracket * phi42,
                    ),
                    ("2c nu_4 tr(A_N phi_4)".into(), 2.0 * c * nu4 * tr_an_phi4),
                ],
                Vec::new(),
                false,
            )
        }
        IdentityKind::SimonsPhi => {
            let lhs = 0.5 * state.laplacian(NamedField::Phi2)?;
            let phi3 = state.phi_h_matrix()?;
            let phi4 = state.shape_operator(1);
            let nu = state.nu_at();
            let grad3 = state.covariant_gradient_norm(OperatorField::PhiH)?;
            let grad4 = state.covariant_gradient_norm(OperatorField::Phi4)?;
            let ah = state.shape_in_direction_frame(&state.mean_curvature_at());
            let phi_tt_h = tau[0] * (ah[0][0] * tau[0] + ah[0][1] * tau[1])
                + tau[1] * (ah[1][0] * tau[0] + ah[1][1] * tau[1])
                - t2 * h2;
            // first printed form: 2c|ν₃φ₃ + ν₄φ₄|²
            let mut combo = [[0.0; 2]; 2];
            mat_axpy(&mut combo, nu[0], &phi3);
            mat_axpy(&mut combo, nu[1], &phi4);
            let last_a = 2.0 * c * mat_frob2(&combo);
            // second printed form: 2c|A_N|² − 4c⟨H,N⟩²
            let last_b = 2.0 * c * mat_frob2(&a_n) - 4.0 * c * hn * hn;
            IdentityReport::from_terms(
                kind,
                aux,
                point,
                lhs,
                vec![
                    ("|grad phi_3|^2".into(), grad3),
                    ("|grad phi_4|^2".into(), grad4),
                    ("-|phi|^4".into(), -phi2 * phi2),
                    (
                        "{c(2-3|T|^2)+2|H|^2}|phi|^2".into(),
                        (c * (2.0 - 3.0 * t2) + 2.0 * h2) * phi2,
                    ),
                    ("-2c<phi(T.T).H>".into(), -2.0 * c * phi_tt_h),
                    ("2c|nu_3 phi_3 + nu_4 phi_4|^2".into(), last_a),
                ],
                vec![(
                    "2c|nu_3 phi_3+nu_4 phi_4|^2 vs 2c|A_N|^2-4c<H.N>^2".into(),
                    (last_a - last_b).abs(),
                )],
                false,
            )
        }
        IdentityKind::LaplacianT => {
            let lhs = 0.5 * state.laplacian(NamedField::T2)?;
            let an2 = mat_frob2(&a_n);
            let ah = state.shape_in_direction_frame(&state.mean_curvature_at());
            let phi_tt_h = tau[0] * (ah[0][0] * tau[0] + ah[0][1] * tau[1])
                + tau[1] * (ah[1][0] * tau[0] + ah[1][1] * tau[1])
                - t2 * h2;
            IdentityReport::from_terms(
                kind,
                aux,
                point,
                lhs,
                vec![
                    ("|A_N|^2".into(), an2),
                    ("-1/2|T|^2|phi|^2".into(), -0.5 * t2 * phi2),
                    ("-2<phi(T.T).H>".into(), -2.0 * phi_tt_h),
                    ("c|T|^2(1-|T|^2)".into(), c * t2 * (1.0 - t2)),
                    ("-|T|^2|H|^2".into(), -t2 * h2),
                ],
                Vec::new(),
                false,
            )
        }
        IdentityKind::DeltaSum => {
            let lhs = 0.5 * state.laplacian(NamedField::Phi2MinusCT2)?;
            let grad3 = state.covariant_gradient_norm(OperatorField::PhiH)?;
            let grad4 = state.covariant_gradient_norm(OperatorField::Phi4)?;
            let an2 = mat_frob2(&a_n);
            IdentityReport::from_terms(
                kind,
                aux,
                point,
                lhs,
                vec![
                    ("|grad phi_3|^2".into(), grad3),
                    ("|grad phi_4|^2".into(), grad4),
                    (
                        "{-|phi|^2+(c/2)(4-5|T|^2)+2|H|^2}|phi|^2".into(),
                        (-phi2 + 0.5 * c * (4.0 - 5.0 * t2) + 2.0 * h2) * phi2,
                    ),
                    ("c|A_N|^2".into(), c * an2),
                    ("-4c<H.N>^2".into(), -4.0 * c * hn * hn),
                    ("c|T|^2|H|^2".into(), c * t2 * h2),
                    ("-c^2|T|^2(1-|T|^2)".into(), -c * c * t2 * (1.0 - t2)),
                ],
                Vec::new(),
                false,
            )
        }
        IdentityKind::PhiTNorm => {
            let phi_h = state.phi_h_matrix()?;
            let pht = mat_apply(&phi_h, tau);
            let lhs = pht[0] * pht[0] + pht[1] * pht[1];
            let phi_h2 = state.phi_h2_value()?;
            IdentityReport::from_terms(
                kind,
                aux,
                point,
                lhs,
                vec![("1/2|T|^2|phi_H|^2".into(), 0.5 * t2 * phi_h2)],
                Vec::new(),
                false,
            )
        }
        IdentityKind::SchwarzBound => IdentityReport::from_terms(
            kind,
            aux,
            point,
            hn * hn,
            vec![
                ("|H|^2".into(), h2),
                ("-|T|^2|H|^2".into(), -t2 * h2),
            ],
            Vec::new(),
            true,
        ),
    };
    Ok(report)
}

/// Expansion of the declared kinds into (kind, aux) tasks: kinds with an
/// auxiliary field run once with V = H and once with V = E₄.
pub fn expand_kinds(kinds: &[IdentityKind]) -> Vec<(IdentityKind, Option<NormalDirection>)> {
    let mut out = Vec::new();
    for &kind in kinds {
        if kind.requires().aux {
            out.push((kind, Some(NormalDirection::MeanCurvature)));
            out.push((kind, Some(NormalDirection::FrameE4)));
        } else {
            out.push((kind, None));
        }
    }
    out
}

#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub grid: GridSpec,
    pub kinds: Vec<IdentityKind>,
    pub degree: usize,
    /// Residual tolerance for a pass verdict.
    pub tol: f64,
    /// Applicability threshold on the pmc residual.
    pub pmc_tol: f64,
    /// Tolerance for paired-route term cross-checks.
    pub crosscheck_tol: f64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            grid: GridSpec::default(),
            kinds: IdentityKind::ALL.to_vec(),
            degree: DEFAULT_JET_DEGREE,
            tol: IDENTITY_TOL,
            pmc_tol: PMC_RESIDUAL_TOL,
            crosscheck_tol: CROSSCHECK_TOL,
        }
    }
}

/// One entry of a suite run: either a report or a point-level error.
#[derive(Debug, Clone)]
pub enum SuiteEntry {
    Report(IdentityReport),
    Error {
        kind: IdentityKind,
        aux: Option<NormalDirection>,
        point: [f64; 2],
        message: String,
    },
}

#[derive(Debug, Clone)]
pub struct KindSummary {
    pub kind: IdentityKind,
    pub aux: Option<NormalDirection>,
    pub evaluated: usize,
    pub not_applicable: usize,
    pub failed: usize,
    pub max_residual: f64,
    pub max_crosscheck: f64,
    pub pass: bool,
}

#[derive(Debug, Clone)]
pub struct SuiteSummary {
    pub per_kind: Vec<KindSummary>,
    pub max_residual: f64,
    pub pass: bool,
}

#[derive(Debug, Clone)]
pub struct SuiteResult {
    pub surface: String,
    pub entries: Vec<SuiteEntry>,
    pub summary: SuiteSummary,
}

/// Runs the identity suite over a sampling grid.
///
/// Entries come out in deterministic order: tasks in declared kind order
/// (aux H before E₄), grid points row-major within each task. Point-level
/// errors become per-point failure entries; the suite never aborts.
pub fn run_suite(im: &Immersion, config: &SuiteConfig) -> SuiteResult {
    let points = config.grid.points(&im.domain);
    let states: Vec<Result<GeometricState, SurfaceError>> = points
        .par_iter()
        .map(|&p| evaluate_state(im, p, config.degree))
        .collect();
    let tasks = expand_kinds(&config.kinds);

    let mut entries = Vec::with_capacity(tasks.len() * points.len());
    let mut per_kind = Vec::with_capacity(tasks.len());
    for &(kind, aux) in &tasks {
        let mut summary = KindSummary {
            kind,
            aux,
            evaluated: 0,
            not_applicable: 0,
            failed: 0,
            max_residual: 0.0,
            max_crosscheck: 0.0,
            pass: true,
        };
        for (point, state) in points.iter().zip(&states) {
            match state {
                Ok(state) => match evaluate_identity_at(kind, state, aux, config.pmc_tol) {
                    Ok(report) => {
                        if report.applicable {
                            summary.evaluated += 1;
                            summary.max_residual = summary.max_residual.max(report.residual);
                            for (_, v) in &report.crosschecks {
                                summary.max_crosscheck = summary.max_crosscheck.max(*v);
                            }
                        } else {
                            summary.not_applicable += 1;
                        }
                        entries.push(SuiteEntry::Report(report));
                    }
                    Err(err) => {
                        summary.failed += 1;
                        entries.push(SuiteEntry::Error {
                            kind,
                            aux,
                            point: *point,
                            message: err.to_string(),
                        });
                    }
                },
                Err(err) => {
                    summary.failed += 1;
                    entries.push(SuiteEntry::Error {
                        kind,
                        aux,
                        point: *point,
                        message: err.to_string(),
                    });
                }
            }
        }
        summary.pass = summary.failed == 0
            && summary.max_residual <= config.tol
            && summary.max_crosscheck <= config.crosscheck_tol;
        per_kind.push(summary);
    }
    let max_residual = per_kind
        .iter()
        .map(|s| s.max_residual)
        .fold(0.0f64, f64::max);
    let pass = per_kind.iter().all(|s| s.pass);
    SuiteResult {
        surface: im.name.clone(),
        entries,
        summary: SuiteSummary {
            per_kind,
            max_residual,
            pass,
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{make_surface, CatalogSpec, Family};

    fn assert_close(a: f64, b: f64, tol: f64, what: &str) {
        assert!(
            (a - b).abs() <= tol,
            "{what}: {a} vs {b} (|diff| = {:e})",
            (a - b).abs()
        );
    }

    fn surface(family: Family, c: f64, param: Option<f64>) -> crate::surface::Immersion {
        make_surface(&CatalogSpec::new(family, c, param)).unwrap().0
    }

    fn term(report: &IdentityReport, name: &str) -> f64 {
        report
            .terms
            .iter()
            .find(|(k, _)| k == name)
            .unwrap_or_else(|| panic!("missing term {name} in {:?}", report.terms))
            .1
    }

    #[test]
    fn simons_phi_h_on_clifford_torus() {
        let im = surface(Family::CliffordTorus, 1.0, Some(0.6));
        let report = evaluate_identity(
            IdentityKind::SimonsPhiH,
            &im,
            [0.9, 1.4],
            None,
            PMC_RESIDUAL_TOL,
        )
        .unwrap();
        assert!(report.applicable);
        // the curvature bracket c(2−3|T|²)+4|H|²−|σ|² = 2 + 49/144 − 337/144
        // vanishes, as do the gradient and T terms, so lhs = rhs = 0
        assert_close(report.lhs, 0.0, 1e-10, "lhs");
        assert_close(report.rhs, 0.0, 1e-10, "rhs");
        assert_close(
            term(&report, "{c(2-3|T|^2)+4|H|^2-|sigma|^2}|phi_H|^2"),
            0.0,
            1e-10,
            "bracket term",
        );
        assert_close(term(&report, "|grad phi_H|^2"), 0.0, 1e-15, "gradient term");
        assert!(report.residual <= 1e-9, "residual {:e}", report.residual);
    }

    #[test]
    fn laplacian_t_on_vertical_cylinder() {
        let im = surface(Family::VerticalCylinder, 1.0, Some(0.6));
        let report = evaluate_identity(
            IdentityKind::LaplacianT,
            &im,
            [0.3, 1.2],
            None,
            PMC_RESIDUAL_TOL,
        )
        .unwrap();
        assert!(report.applicable);
        // circle curvature k = √c·s/r; hand evaluation of each term
        let k: f64 = 0.8 / 0.6;
        assert_close(report.lhs, 0.0, 1e-11, "½Δ|T|²");
        assert_close(term(&report, "|A_N|^2"), 0.0, 1e-12, "|A_N|²");
        assert_close(
            term(&report, "-1/2|T|^2|phi|^2"),
            -0.25 * k * k,
            1e-11,
            "−½|T|²|φ|²",
        );
        assert_close(
            term(&report, "-2<phi(T.T).H>"),
            0.5 * k * k,
            1e-11,
            "−2⟨φ(T,T),H⟩",
        );
        assert_close(term(&report, "c|T|^2(1-|T|^2)"), 0.0, 1e-11, "c|T|²(1−|T|²)");
        assert_close(
            term(&report, "-|T|^2|H|^2"),
            -0.25 * k * k,
            1e-11,
            "−|T|²|H|²",
        );
        assert!(report.residual <= 1e-10, "residual {:e}", report.residual);
    }

    #[test]
    fn laplacian_t_degenerates_correctly_when_t_vanishes() {
        // torus: every T term vanishes and |A_N|² equals the rhs remainder
        let im = surface(Family::CliffordTorus, 1.0, Some(0.6));
        let report = evaluate_identity(
            IdentityKind::LaplacianT,
            &im,
            [1.0, 1.0],
            None,
            PMC_RESIDUAL_TOL,
        )
        .unwrap();
        for name in [
            "-1/2|T|^2|phi|^2",
            "-2<phi(T.T).H>",
            "c|T|^2(1-|T|^2)",
            "-|T|^2|H|^2",
        ] {
            assert_close(term(&report, name), 0.0, 1e-13, name);
        }
        assert_close(term(&report, "|A_N|^2"), report.rhs, 1e-13, "|A_N|² = rhs");
        assert_close(report.lhs, 0.0, 1e-12, "½Δ|T|² = 0");
    }

    #[test]
    fn gauss_equation_on_slice_and_nonpmc_graph() {
        let im = surface(Family::Slice, 1.0, None);
        let report =
            evaluate_identity(IdentityKind::GaussEq, &im, [1.1, 2.0], None, PMC_RESIDUAL_TOL)
                .unwrap();
        assert!(report.applicable);
        assert!(report.residual <= 1e-9, "slice residual {:e}", report.residual);

        // Gauss needs no pmc hypothesis: holds on the perturbed graph too
        let im = surface(Family::PerturbedGraph, 1.0, Some(0.1));
        let report =
            evaluate_identity(IdentityKind::GaussEq, &im, [1.2, 2.4], None, PMC_RESIDUAL_TOL)
                .unwrap();
        assert!(report.applicable);
        assert!(report.residual <= 1e-8, "graph residual {:e}", report.residual);
    }

    #[test]
    fn ricci_commute_on_clifford_torus() {
        let im = surface(Family::CliffordTorus, 1.0, Some(0.6));
        let report = evaluate_identity(
            IdentityKind::RicciCommute,
            &im,
            [0.8, 0.8],
            None,
            PMC_RESIDUAL_TOL,
        )
        .unwrap();
        assert!(report.applicable);
        assert!(report.lhs <= 1e-12, "commutator norm {:e}", report.lhs);
    }

    #[test]
    fn normal_curvature_holds_even_off_pmc() {
        // the Ricci equation is frame-generic; the perturbed graph gives a
        // nonzero connection form that must still match the commutator
        let im = surface(Family::PerturbedGraph, 1.0, Some(0.15));
        let report = evaluate_identity(
            IdentityKind::NormalCurvature,
            &im,
            [1.3, 2.8],
            None,
            PMC_RESIDUAL_TOL,
        )
        .unwrap();
        assert!(report.applicable);
        assert!(report.residual <= 1e-8, "residual {:e}", report.residual);
    }

    #[test]
    fn simons_av_with_e4_on_minimal_torus() {
        let im = surface(Family::MinimalCliffordTorus, 1.0, None);
        let report = evaluate_identity(
            IdentityKind::SimonsAV,
            &im,
            [0.7, 1.1],
            Some(NormalDirection::FrameE4),
            PMC_RESIDUAL_TOL,
        )
        .unwrap();
        assert!(report.applicable, "reason: {:?}", report.reason);
        assert!(report.residual <= 1e-9, "residual {:e}", report.residual);

        // V = H on the nonminimal torus balances nontrivial terms
        let im = surface(Family::CliffordTorus, 1.0, Some(0.6));
        let report = evaluate_identity(
            IdentityKind::SimonsAV,
            &im,
            [0.7, 1.1],
            Some(NormalDirection::MeanCurvature),
            PMC_RESIDUAL_TOL,
        )
        .unwrap();
        assert!(report.applicable);
        assert!(report.residual <= 1e-9, "residual {:e}", report.residual);
        assert!(
            term(&report, "sum_a tr(A_a)tr(A_V^2 A_a)").abs() > 1e-3,
            "cubic trace term should be nonzero on the torus"
        );
    }

    #[test]
    fn simons_phi_two_forms_agree() {
        for (family, param) in [
            (Family::CliffordTorus, Some(0.6)),
            (Family::VerticalCylinder, Some(0.6)),
        ] {
            let im = surface(family, 1.0, param);
            let report = evaluate_identity(
                IdentityKind::SimonsPhi,
                &im,
                [0.4, 0.9],
                None,
                PMC_RESIDUAL_TOL,
            )
            .unwrap();
            assert!(report.applicable);
            assert!(report.residual <= 1e-9, "residual {:e}", report.residual);
            let (_, diff) = &report.crosschecks[0];
            assert!(*diff <= 1e-10, "cross-check {diff:e}");
        }
    }

    #[test]
    fn suite_on_torus_passes_all_kinds() {
        let im = surface(Family::CliffordTorus, 1.0, Some(0.6));
        let config = SuiteConfig {
            grid: GridSpec::new(4, 4),
            ..SuiteConfig::default()
        };
        let result = run_suite(&im, &config);
        assert!(result.summary.pass, "summary: {:#?}", result.summary);
        assert_eq!(
            result.entries.len(),
            expand_kinds(&config.kinds).len() * 16
        );
        assert!(result.summary.max_residual <= 1e-7);
    }

    #[test]
    fn suite_applicability_filtering() {
        // slice: minimal, so the φ_H identities are not applicable but the
        // hypothesis-free ones pass
        let im = surface(Family::Slice, 1.0, None);
        let config = SuiteConfig {
            grid: GridSpec::new(2, 2),
            ..SuiteConfig::default()
        };
        let result = run_suite(&im, &config);
        assert!(result.summary.pass);
        for summary in &result.summary.per_kind {
            match summary.kind {
                IdentityKind::SimonsPhiH
                | IdentityKind::SimonsPhi4
                | IdentityKind::SimonsPhi
                | IdentityKind::DeltaSum
                | IdentityKind::PhiTNorm => {
                    assert_eq!(summary.not_applicable, 4, "{:?}", summary.kind);
                    assert_eq!(summary.evaluated, 0);
                }
                IdentityKind::GaussEq | IdentityKind::SchwarzBound => {
                    assert_eq!(summary.evaluated, 4, "{:?}", summary.kind);
                }
                _ => {}
            }
        }

        // non-pmc surface: pmc-gated identities report the reason
        let im = surface(Family::PerturbedGraph, 1.0, Some(0.1));
        let report = evaluate_identity(
            IdentityKind::SimonsPhiH,
            &im,
            [1.3, 2.0],
            None,
            PMC_RESIDUAL_TOL,
        )
        .unwrap();
        assert!(!report.applicable);
        assert!(report.reason.as_ref().unwrap().contains("pmc residual"));
    }

    #[test]
    fn suite_ordering_is_deterministic() {
        let im = surface(Family::CliffordTorus, 1.0, Some(0.6));
        let config = SuiteConfig {
            grid: GridSpec::new(2, 3),
            kinds: vec![IdentityKind::GaussEq, IdentityKind::Codazzi],
            ..SuiteConfig::default()
        };
        let result = run_suite(&im, &config);
        // gauss-eq (no aux), codazzi(H), codazzi(E4): 3 tasks × 6 points
        assert_eq!(result.entries.len(), 18);
        let kinds: Vec<(IdentityKind, Option<NormalDirection>)> = result
            .entries
            .iter()
            .map(|e| match e {
                SuiteEntry::Report(r) => (r.kind, r.aux),
                SuiteEntry::Error { kind, aux, .. } => (*kind, *aux),
            })
            .collect();
        assert!(kinds[..6].iter().all(|(k, _)| *k == IdentityKind::GaussEq));
        assert!(kinds[6..12]
            .iter()
            .all(|(k, a)| *k == IdentityKind::Codazzi
                && *a == Some(NormalDirection::MeanCurvature)));
        assert!(kinds[12..]
            .iter()
            .all(|(k, a)| *k == IdentityKind::Codazzi && *a == Some(NormalDirection::FrameE4)));
        // same config twice gives identical reports
        let again = run_suite(&im, &config);
        for (a, b) in result.entries.iter().zip(&again.entries) {
            match (a, b) {
                (SuiteEntry::Report(x), SuiteEntry::Report(y)) => {
                    assert_eq!(x.lhs.to_bits(), y.lhs.to_bits());
                    assert_eq!(x.residual.to_bits(), y.residual.to_bits());
                }
                _ => panic!("entry mismatch"),
            }
        }
    }

    #[test]
    fn terms_sum_to_rhs() {
        let im = surface(Family::VerticalCylinder, 1.0, Some(0.5));
        for (kind, aux) in expand_kinds(&IdentityKind::ALL) {
            let report =
                evaluate_identity(kind, &im, [0.2, 0.7], aux, PMC_RESIDUAL_TOL).unwrap();
            if report.applicable {
                let sum: f64 = report.terms.iter().map(|(_, v)| v).sum();
                assert!(
                    (sum - report.rhs).abs() <= 1e-12,
                    "{kind:?}: terms sum {sum} vs rhs {}",
                    report.rhs
                );
            }
        }
    }

    #[test]
    fn suite_passes_at_generic_curvatures() {
        // c ≠ ±1 exercises the c-dependence of every coefficient in the
        // identities; residuals must stay at rounding level
        let config = SuiteConfig {
            grid: GridSpec::new(3, 3),
            ..SuiteConfig::default()
        };
        for (family, c, param) in [
            (Family::CliffordTorus, 2.5, Some(0.3)),
            (Family::VerticalCylinder, 1.8, Some(0.4)),
            (Family::RoundSphere, 0.7, Some(0.9)),
            (Family::RoundSphere, -1.5, Some(0.8)),
            (Family::Horosphere, -2.0, None),
        ] {
            let im = surface(family, c, param);
            let result = run_suite(&im, &config);
            assert!(
                result.summary.pass,
                "{family:?} at c = {c}: {:#?}",
                result.summary
            );
            assert!(
                result.summary.max_residual <= 1e-9,
                "{family:?} at c = {c}: max residual {:e}",
                result.summary.max_residual
            );
        }
    }

    #[test]
    fn schwarz_bound_has_nonnegative_slack() {
        for (family, c, param) in [
            (Family::CliffordTorus, 1.0, Some(0.6)),
            (Family::VerticalCylinder, 1.0, Some(0.6)),
            (Family::Horosphere, -1.0, None),
            (Family::PerturbedGraph, 1.0, Some(0.2)),
        ] {
            let im = surface(family, c, param);
            let report = evaluate_identity(
                IdentityKind::SchwarzBound,
                &im,
                GridSpec::new(3, 3).points(&im.domain)[4],
                None,
                PMC_RESIDUAL_TOL,
            )
            .unwrap();
            assert!(report.applicable);
            assert!(
                report.residual <= 1e-12,
                "{family:?} slack violated: {:e}",
                report.residual
            );
        }
    }
}
