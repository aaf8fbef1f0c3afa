//! Every identity the harness checks, with its suite, threshold and sampling plan.

use std::collections::BTreeMap;

use elliptic_fusion::elliptic::theta;
use elliptic_fusion::face::{extended_adjacent, extended_squares, FaceModel, Height, Level};
use elliptic_fusion::fusion::{self, Method, SignChoice};
use elliptic_fusion::intertwiner::{self, Orientation};
use elliptic_fusion::tensor::{residual, residual_scalar};
use elliptic_fusion::{vertex, Complex64, EllipticContext, Error, Result, Theta};
use serde::Serialize;

use crate::config::{Suite, SuiteConfig};
use crate::HarnessError;

/// A value recorded with a report: complex numbers as `[re, im]`, heights as integers.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(untagged)]
pub enum ParamValue {
    Complex([f64; 2]),
    Integer(i64),
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
#[serde(transparent)]
pub struct Params(BTreeMap<&'static str, ParamValue>);

impl Params {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn complex(mut self, name: &'static str, z: Complex64) -> Self {
        self.0.insert(name, ParamValue::Complex([z.re, z.im]));
        self
    }

    pub fn int(mut self, name: &'static str, n: i64) -> Self {
        self.0.insert(name, ParamValue::Integer(n));
        self
    }

    pub fn iter(&self) -> impl Iterator<Item = (&&'static str, &ParamValue)> {
        self.0.iter()
    }

    pub fn get(&self, name: &str) -> Option<ParamValue> {
        self.0.get(name).copied()
    }
}

/// Where the evaluation points of an identity come from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Plan {
    /// Uses the first `min(points, cap)` sampled pairs, each `fan` times
    /// (e.g. once per height block).
    Sampled { cap: Option<usize>, fan: usize },
    /// A fixed number of deterministic evaluations that need no sample.
    Fixed(usize),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sample {
    pub u: Complex64,
    pub v: Complex64,
}

pub struct Outcome {
    pub residual: f64,
    pub params: Params,
}

type EvalFn = fn(&Env, usize, Sample) -> Result<Outcome>;

pub struct Identity {
    pub id: &'static str,
    pub suite: Suite,
    /// Threshold as a multiple of the configured tolerance.
    pub tol_factor: f64,
    pub plan: Plan,
    eval: EvalFn,
}

impl Identity {
    pub fn threshold(&self, tol: f64) -> f64 {
        self.tol_factor * tol
    }

    pub fn evaluations(&self, points: usize) -> usize {
        match self.plan {
            Plan::Sampled { cap, fan } => cap.map_or(points, |c| c.min(points)) * fan,
            Plan::Fixed(n) => n,
        }
    }

    pub fn is_sampled(&self) -> bool {
        matches!(self.plan, Plan::Sampled { .. })
    }

    /// Index of the sampled pair used by evaluation `index`.
    pub fn sample_index(&self, index: usize) -> usize {
        match self.plan {
            Plan::Sampled { fan, .. } => index / fan,
            Plan::Fixed(_) => 0,
        }
    }

    pub fn evaluate(&self, env: &Env, index: usize, sample: Sample) -> Result<Outcome> {
        (self.eval)(env, index, sample)
    }
}

/// Height squares (and corner pairs) on which the fused weights are finite
/// at integer heights; found once at a reference point since the poles
/// come from height brackets only.
struct HeightSets {
    w22_bprime: Vec<[Height; 4]>,
    w22_unitarity: Vec<(Height, Height)>,
    w22_crossing: Vec<[Height; 4]>,
}

/// Shared, read-only evaluation state.
pub struct Env {
    pub ctx: EllipticContext,
    /// Integer heights.
    pub model: FaceModel,
    /// Heights shifted by one half, used where integer heights reach `[0]`.
    pub shifted: FaceModel,
    sets: HeightSets,
}

pub const FACE_SHIFT: f64 = 0.5;
const REFERENCE_U: Complex64 = Complex64::new(0.37, 0.03);

impl Env {
    pub fn new(config: &SuiteConfig) -> std::result::Result<Self, HarnessError> {
        let ctx = EllipticContext::new(config.r, Complex64::new(0.0, config.tau_im))
            .and_then(|c| c.with_cutoff(config.cutoff))
            .and_then(|c| c.with_tol(config.tol))
            .map_err(|e| HarnessError::Config(e.to_string()))?;
        let model = FaceModel::new(ctx.clone());
        let shifted = FaceModel::new(ctx.clone()).with_shift(FACE_SHIFT);
        let range = 1..=height_max(&ctx);
        let squares = extended_squares(range.clone());
        let u = REFERENCE_U;
        let sets = HeightSets {
            w22_bprime: squares
                .iter()
                .copied()
                .filter(|&[_, b, _, cc]| b == cc && range.contains(&(b - 1)) && range.contains(&(b + 1)))
                .filter(|&[a, b, d, cc]| {
                    model.w22(a, b, d, cc, u, Some(b - 1)).is_ok() && model.w22(a, b, d, cc, u, Some(b + 1)).is_ok()
                })
                .collect(),
            w22_unitarity: range
                .clone()
                .flat_map(|a| range.clone().map(move |cc| (a, cc)))
                .filter(|&(a, cc)| extended_adjacent(a, cc) || (a - cc).abs() == 4)
                .filter(|&(a, cc)| model.w22_unitarity_residual(a, cc, u).is_ok())
                .collect(),
            w22_crossing: squares
                .iter()
                .copied()
                .filter(|&[a, b, d, cc]| model.w22_crossing_residual(a, b, d, cc, u).is_ok())
                .collect(),
        };
        Ok(Self { ctx, model, shifted, sets })
    }
}

/// Largest integer height strictly below `r`.
fn height_max(ctx: &EllipticContext) -> Height {
    (ctx.r().ceil() as Height) - 1
}

fn worst<T>(items: impl IntoIterator<Item = T>, mut f: impl FnMut(T) -> Result<f64>) -> Result<f64> {
    let mut w = 0.0f64;
    for item in items {
        let r = f(item)?;
        // NaN must not be swallowed by max
        w = if r.is_nan() { f64::NAN } else { w.max(r) };
        if w.is_nan() {
            break;
        }
    }
    Ok(w)
}

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm()
}

fn at_u(residual: f64, s: Sample) -> Outcome {
    Outcome { residual, params: Params::new().complex("u", s.u) }
}

fn at_uv(residual: f64, s: Sample) -> Outcome {
    Outcome { residual, params: Params::new().complex("u", s.u).complex("v", s.v) }
}

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// `(k, u, τ, ϑ_k(u|τ))` frozen from a 60-digit evaluation.
pub const THETA_ORACLE: [(u8, Complex64, Complex64, Complex64); 10] = [
    (1, Complex64::new(0.3, 0.0), Complex64::new(0.0, 0.8), Complex64::new(0.86103817205252424568, 0.0)),
    (0, Complex64::new(0.3, 0.0), Complex64::new(0.0, 0.8), Complex64::new(1.0499926949135374994, 0.0)),
    (2, Complex64::new(0.3, 0.0), Complex64::new(0.0, 0.8), Complex64::new(0.62049463303791608015, 0.0)),
    (3, Complex64::new(0.3, 0.0), Complex64::new(0.0, 0.8), Complex64::new(0.94986798513848476643, 0.0)),
    (1, Complex64::new(0.21, 0.07), Complex64::new(0.0, 1.2), Complex64::new(0.48878271416639409271, 0.13662899223658431442)),
    (0, Complex64::new(0.21, 0.07), Complex64::new(0.0, 0.6), Complex64::new(0.91574135552003050774, 0.13306607261855666099)),
    (2, Complex64::new(-0.44, 0.03), Complex64::new(0.0, 0.6), Complex64::new(0.21894825252404491768, 0.10879270705622051183)),
    (3, Complex64::new(0.13, -0.05), Complex64::new(0.0, 1.2), Complex64::new(1.0331336436649183711, 0.010734279006467666943)),
    (1, Complex64::new(0.0625, 0.0), Complex64::new(0.1, 0.9), Complex64::new(0.19038178424098372293, 0.013852395080860724356)),
    (0, Complex64::new(0.4, 0.1), Complex64::new(-0.2, 1.1), Complex64::new(1.0643688309956157295, -0.016017786384071864384)),
];

const HEIGHT_BLOCKS: [(Height, Height); 3] = [(3, 5), (3, 3), (3, 1)];
const DUAL_FUSED_BLOCKS: [(Height, Height); 6] = [(3, 5), (3, 3), (3, 1), (2, 4), (4, 4), (2, 2)];

const fn sampled() -> Plan {
    Plan::Sampled { cap: None, fan: 1 }
}

const fn pairs(cap: usize) -> Plan {
    Plan::Sampled { cap: Some(cap), fan: 1 }
}

const fn blocks(fan: usize) -> Plan {
    Plan::Sampled { cap: None, fan }
}

macro_rules! identity {
    ($id:literal, $suite:ident, $factor:expr, $plan:expr, $eval:expr) => {
        Identity { id: $id, suite: Suite::$suite, tol_factor: $factor, plan: $plan, eval: $eval }
    };
}

/// The full catalogue, in id order.
pub fn catalogue() -> Vec<Identity> {
    let mut all = vec![
        // theta-core
        identity!("theta.oracle", ThetaCore, 1e-3, Plan::Fixed(THETA_ORACLE.len()), |env, i, _| {
            let (k, u, tau, want) = THETA_ORACLE[i];
            let got = theta(Theta::try_from(k)?, u, tau, env.ctx.cutoff())?;
            let params = Params::new().int("k", k as i64).complex("u", u).complex("tau", tau);
            Ok(Outcome { residual: rel(got, want), params })
        }),
        identity!("theta.quasi_periodicity", ThetaCore, 1e-1, sampled(), |env, _, s| {
            let (tau, n) = (env.ctx.tau(), env.ctx.cutoff());
            let a = theta(Theta::T1, s.u + 1.0, tau, n)?;
            let b = theta(Theta::T1, s.u, tau, n)?;
            Ok(at_u((a + b).norm() / b.norm(), s))
        }),
        identity!("theta.duplication", ThetaCore, 1e-1, sampled(), |env, _, s| {
            let ctx = &env.ctx;
            let w = s.u / (2.0 * ctx.r());
            let lhs = ctx.theta_half(Theta::T1, w) * ctx.theta_half(Theta::T2, w);
            let rhs = ctx.theta_tau(Theta::T0, c(0.0)) * ctx.theta_tau(Theta::T1, s.u / ctx.r());
            Ok(at_u(rel(lhs, rhs), s))
        }),
        identity!("theta.bracket_two_form", ThetaCore, 1e-1, sampled(), |env, _, s| {
            Ok(at_u(rel(env.ctx.bracket_product_form(s.u), env.ctx.bracket(s.u)), s))
        }),
        // vertex
        identity!("vertex.unitarity", Vertex, 1.0, sampled(), |env, _, s| {
            Ok(at_u(vertex::unitarity_residual(s.u, &env.ctx)?, s))
        }),
        identity!("vertex.crossing", Vertex, 1.0, sampled(), |env, _, s| {
            Ok(at_u(vertex::crossing_residual(s.u, &env.ctx)?, s))
        }),
        identity!("vertex.initial", Vertex, 1.0, Plan::Fixed(1), |env, _, _| {
            Ok(Outcome { residual: vertex::initial_residual(&env.ctx)?, params: Params::new().complex("u", c(0.0)) })
        }),
        identity!("vertex.limit", Vertex, 1e5, Plan::Fixed(1), |env, _, _| {
            let delta = 1e-6;
            let residual = vertex::limit_residual(delta, &env.ctx)?;
            Ok(Outcome { residual, params: Params::new().complex("u", c(-1.0 + delta)) })
        }),
        identity!("vertex.ybe", Vertex, 10.0, pairs(10), |env, _, s| {
            Ok(at_uv(vertex::ybe_residual(s.u, s.v, &env.ctx)?, s))
        }),
        // fusion
        identity!("fusion.r21_agreement", Fusion, 1.0, sampled(), |env, _, s| {
            Ok(at_u(fusion::fuse21_agreement_residual(s.u, &env.ctx)?, s))
        }),
        identity!("fusion.r21_prefactor", Fusion, 1.0, sampled(), |env, _, s| {
            let prod = vertex::r0_scalar(s.u, &env.ctx)? * vertex::r0_scalar(s.u + 1.0, &env.ctx)?;
            Ok(at_u(residual_scalar(prod, fusion::r21_prefactor(s.u, &env.ctx)?), s))
        }),
        identity!("fusion.r21_split", Fusion, 1e-1, sampled(), |env, _, s| {
            Ok(at_u(fusion::fuse21_split_residual(s.u, &env.ctx)?, s))
        }),
        identity!("fusion.r21_absorption", Fusion, 1.0, sampled(), |env, _, s| {
            Ok(at_u(fusion::fuse21_absorption_residual(s.u, &env.ctx)?, s))
        }),
        identity!("fusion.r22_agreement", Fusion, 1.0, sampled(), |env, _, s| {
            Ok(at_u(fusion::fuse22_agreement_residual(s.u, &env.ctx)?, s))
        }),
        identity!("fusion.r22_split", Fusion, 1e-1, sampled(), |env, _, s| {
            Ok(at_u(fusion::fuse22_split_residual(s.u, &env.ctx)?, s))
        }),
        identity!("fusion.r22_p_invariance", Fusion, 1.0, sampled(), |env, _, s| {
            Ok(at_u(fusion::p_invariance_residual(&fusion::fuse22(s.u, &env.ctx, Method::ClosedForm)?.matrix)?, s))
        }),
        identity!("fusion.r22_z2_invariance", Fusion, 1.0, sampled(), |env, _, s| {
            Ok(at_u(fusion::z2_residual(&fusion::fuse22(s.u, &env.ctx, Method::ClosedForm)?.matrix)?, s))
        }),
        identity!("fusion.r22_ybe", Fusion, 10.0, pairs(10), |env, _, s| {
            Ok(at_uv(fusion::ybe22_residual(s.u, s.v, &env.ctx)?, s))
        }),
        // gauge
        identity!("gauge.equivalence", Gauge, 1.0, sampled(), |env, _, s| {
            Ok(at_u(fusion::gauge_residual(s.u, &env.ctx, SignChoice::PRINCIPAL)?, s))
        }),
        identity!("gauge.sign_choices", Gauge, 1.0, sampled(), |env, _, s| {
            Ok(at_u(worst(SignChoice::all(), |signs| fusion::gauge_residual(s.u, &env.ctx, signs))?, s))
        }),
        identity!("gauge.q_gram", Gauge, 1e-3, Plan::Fixed(1), |env, _, _| {
            let g = fusion::gauge_pair(&env.ctx)?;
            let params = Params::new().complex("x2", g.x2).complex("y2", g.y2);
            Ok(Outcome { residual: residual(&g.q, &g.q_closed)?, params })
        }),
        identity!("gauge.r22_crossing", Gauge, 10.0, sampled(), |env, _, s| {
            Ok(at_u(fusion::crossing22_residual(s.u, &env.ctx)?, s))
        }),
        // fateev
        identity!("fateev.ftilde_reflection", Fateev, 1.0, sampled(), |env, _, s| {
            Ok(at_u(fusion::ftilde_reflection_residual(s.u, &env.ctx)?, s))
        }),
        identity!("fateev.ftilde_product", Fateev, 1.0, sampled(), |env, _, s| {
            Ok(at_u(fusion::ftilde_product_residual(s.u, &env.ctx)?, s))
        }),
        identity!("fateev.p_invariance", Fateev, 1.0, sampled(), |env, _, s| {
            Ok(at_u(fusion::fateev_p_invariance_residual(s.u, &env.ctx)?, s))
        }),
        identity!("fateev.t_invariance", Fateev, 1.0, sampled(), |env, _, s| {
            Ok(at_u(fusion::fateev_t_invariance_residual(s.u, &env.ctx)?, s))
        }),
        identity!("fateev.crossing", Fateev, 1.0, sampled(), |env, _, s| {
            Ok(at_u(fusion::fateev_crossing_residual(s.u, &env.ctx)?, s))
        }),
        // face
        identity!("face.initial", Face, 1.0, Plan::Fixed(1), |env, _, _| {
            let hmax = height_max(&env.ctx);
            let m = &env.model;
            let mut sq = Vec::new();
            for a in 1..=hmax {
                for b in [a - 1, a + 1] {
                    for d in [a - 1, a + 1] {
                        for cc in [b - 1, b + 1] {
                            if [b, d, cc].iter().all(|h| (1..=hmax).contains(h)) && (d - cc).abs() == 1 {
                                sq.push((a, b, d, cc));
                            }
                        }
                    }
                }
            }
            let residual = worst(sq, |(a, b, d, cc)| {
                let want = if b == d { c(1.0) } else { c(0.0) };
                Ok((m.w(a, b, d, cc, c(0.0))? - want).norm())
            })?;
            Ok(Outcome { residual, params: Params::new().complex("u", c(0.0)) })
        }),
        identity!("face.w21_vanishing", Face, 1.0, Plan::Fixed(1), |env, _, _| {
            let (m, hmax) = (&env.model, height_max(&env.ctx));
            let mut scale = 0.0f64;
            let mut at_minus_one = 0.0f64;
            for [a, b, d, cc] in w21_squares(hmax) {
                let ap = interior_aprime(a, b, hmax);
                scale = scale.max(m.w21(a, b, d, cc, REFERENCE_U, ap)?.norm());
                at_minus_one = at_minus_one.max(m.w21(a, b, d, cc, c(-1.0), ap)?.norm());
            }
            let params = Params::new().complex("u", c(-1.0)).complex("reference", REFERENCE_U);
            Ok(Outcome { residual: at_minus_one / scale, params })
        }),
        identity!("face.w21_aprime_choice", Face, 1e-1, sampled(), |env, _, s| {
            let (m, hmax) = (&env.model, height_max(&env.ctx));
            let squares = w21_squares(hmax).into_iter().filter(|&[a, b, _, _]| a == b && a > 1 && a < hmax);
            let r = worst(squares, |[a, b, d, cc]| {
                Ok(residual_scalar(m.w21(a, b, d, cc, s.u, Some(a - 1))?, m.w21(a, b, d, cc, s.u, Some(a + 1))?))
            })?;
            Ok(at_u(r, s))
        }),
        identity!("face.w22_bprime_choice", Face, 1e-1, sampled(), |env, _, s| {
            let m = &env.model;
            let r = worst(&env.sets.w22_bprime, |&[a, b, d, cc]| {
                Ok(residual_scalar(m.w22(a, b, d, cc, s.u, Some(b - 1))?, m.w22(a, b, d, cc, s.u, Some(b + 1))?))
            })?;
            Ok(at_u(r, s))
        }),
        identity!("face.w22_unitarity", Face, 10.0, sampled(), |env, _, s| {
            let r = worst(&env.sets.w22_unitarity, |&(a, cc)| env.model.w22_unitarity_residual(a, cc, s.u))?;
            Ok(at_u(r, s))
        }),
        identity!("face.w22_crossing", Face, 10.0, sampled(), |env, _, s| {
            let r = worst(&env.sets.w22_crossing, |&[a, b, d, cc]| env.model.w22_crossing_residual(a, b, d, cc, s.u))?;
            Ok(at_u(r, s))
        }),
        identity!("face.ybe_level1", Face, 10.0, pairs(5), |env, i, s| {
            let a3 = [4, 2][i % 2];
            let r = env.model.ybe_residual(Level::One, 3, a3, s.u, s.v)?;
            Ok(Outcome { residual: r, params: at_uv(r, s).params.int("a0", 3).int("a3", a3 as i64) })
        }),
        identity!("face.ybe_level22", Face, 10.0, pairs(5), |env, i, s| {
            let a3 = [3, 5, 1][i % 3];
            let r = env.shifted.ybe_residual(Level::TwoTwo, 3, a3, s.u, s.v)?;
            Ok(Outcome { residual: r, params: at_uv(r, s).params.int("a0", 3).int("a3", a3 as i64) })
        }),
        // vertex-face (natural orientation throughout)
        identity!("vertex_face.level1", VertexFace, 10.0, pairs(10), |env, _, s| {
            Ok(with_a(at_uv(intertwiner::vertex_face_residual(&env.model, s.u, s.v, 3)?, s), 3))
        }),
        identity!("vertex_face.level1_dual", VertexFace, 10.0, pairs(10), |env, _, s| {
            Ok(with_a(at_uv(intertwiner::dual_vertex_face_residual(&env.model, s.u, s.v, 3)?, s), 3))
        }),
        identity!("vertex_face.fused", VertexFace, 10.0, pairs(10), |env, _, s| {
            let r = intertwiner::fused_vertex_face_residual(&env.model, s.u, s.v, 3, Orientation::Natural)?;
            Ok(with_a(at_uv(r, s), 3))
        }),
        identity!("vertex_face.fused_dual", VertexFace, 10.0, pairs(10), |env, _, s| {
            let r = intertwiner::fused_dual_vertex_face_residual(&env.model, s.u, s.v, 3, Orientation::Natural)?;
            Ok(with_a(at_uv(r, s), 3))
        }),
        // inversion
        identity!("inversion.level1_a", Inversion, 1.0, sampled(), |env, i, s| {
            let b = 2 + (i % 3) as Height;
            Ok(with_b(at_u(intertwiner::inversion_a_residual(&env.model, s.u, b)?, s), b))
        }),
        identity!("inversion.level1_b", Inversion, 1.0, sampled(), |env, i, s| {
            let b = 2 + (i % 3) as Height;
            Ok(with_b(at_u(intertwiner::inversion_b_residual(&env.model, s.u, b)?, s), b))
        }),
        identity!("inversion.fused_a", Inversion, 1.0, sampled(), |env, _, s| {
            Ok(with_b(at_u(intertwiner::fused_inversion_a_residual(&env.model, s.u, 3)?, s), 3))
        }),
        identity!("inversion.fused_b", Inversion, 1.0, sampled(), |env, _, s| {
            Ok(with_b(at_u(intertwiner::fused_inversion_b_residual(&env.model, s.u, 3)?, s), 3))
        }),
        // closed-form
        identity!("closed_form.psi2", ClosedForm, 1.0, blocks(HEIGHT_BLOCKS.len()), |env, i, s| {
            let (a, b) = HEIGHT_BLOCKS[i % HEIGHT_BLOCKS.len()];
            let cmp = intertwiner::psi2_closed_form_comparison(&env.model, s.u, a, b)?;
            Ok(scaled_outcome(cmp, s, a, b))
        }),
        identity!("closed_form.psi2_dual", ClosedForm, 1.0, blocks(HEIGHT_BLOCKS.len()), |env, i, s| {
            let (a, b) = HEIGHT_BLOCKS[i % HEIGHT_BLOCKS.len()];
            let cmp = intertwiner::psi2_dual_closed_form_comparison(&env.model, s.u, a, b)?;
            Ok(scaled_outcome(cmp, s, a, b))
        }),
        identity!("closed_form.psi2_c_choice", ClosedForm, 1e-1, sampled(), |env, i, s| {
            let a = 2 + (i % 3) as Height;
            Ok(with_a(at_u(intertwiner::psi2_middle_residual(&env.model, s.u, a)?, s), a))
        }),
        identity!("closed_form.psi2_dual_split", ClosedForm, 1e-1, blocks(HEIGHT_BLOCKS.len()), |env, i, s| {
            let (a, b) = HEIGHT_BLOCKS[i % HEIGHT_BLOCKS.len()];
            let r = intertwiner::psi2_dual_split_residual(&env.model, s.u, a, b)?;
            Ok(with_b(with_a(at_u(r, s), a), b))
        }),
        // dual-fused
        identity!("dual_fused.from_shifted_fused", DualFused, 10.0, sampled(), |env, i, s| {
            let (a, b) = DUAL_FUSED_BLOCKS[i % DUAL_FUSED_BLOCKS.len()];
            let r = intertwiner::dual_fused_residual(&env.model, s.u, a, b)?;
            Ok(with_b(with_a(at_u(r, s), a), b))
        }),
    ];
    all.sort_by_key(|i| i.id);
    all
}

fn with_a(mut o: Outcome, a: Height) -> Outcome {
    o.params = o.params.int("a", a as i64);
    o
}

fn with_b(mut o: Outcome, b: Height) -> Outcome {
    o.params = o.params.int("b", b as i64);
    o
}

/// Reports the residual against the closed form as written; the best-fit
/// scalar between the two constructions is recorded alongside.
fn scaled_outcome(cmp: intertwiner::ScaleComparison, s: Sample, a: Height, b: Height) -> Outcome {
    let params = Params::new().complex("u", s.u).complex("scale", cmp.scale).int("a", a as i64).int("b", b as i64);
    Outcome { residual: cmp.direct_residual, params }
}

/// Level-(2,1) admissible squares with heights in `1..=hmax`.
fn w21_squares(hmax: Height) -> Vec<[Height; 4]> {
    let range = 1..=hmax;
    let mut out = Vec::new();
    for a in range.clone() {
        for b in [a - 2, a, a + 2] {
            for d in [a - 1, a + 1] {
                for cc in [d - 2, d, d + 2] {
                    if [b, d, cc].iter().all(|h| range.contains(h)) && (b - cc).abs() == 1 {
                        out.push([a, b, d, cc]);
                    }
                }
            }
        }
    }
    out
}

/// An intermediate height between `a` and `b` that stays inside `1..=hmax`.
fn interior_aprime(a: Height, b: Height, hmax: Height) -> Option<Height> {
    [a + 1, a - 1].into_iter().find(|&h| (h - b).abs() == 1 && (1..=hmax).contains(&h))
}

/// The identities of the given suites, in id order.
pub fn select(suites: &[Suite]) -> Vec<Identity> {
    catalogue().into_iter().filter(|i| suites.contains(&i.suite)).collect()
}

/// Whether an error marks a singular point rather than a wrong identity.
pub fn is_exclusion(e: &Error) -> bool {
    matches!(e, Error::Pole { .. } | Error::Domain(_))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_unique_and_sorted() {
        let all = catalogue();
        for w in all.windows(2) {
            assert!(w[0].id < w[1].id, "{} / {}", w[0].id, w[1].id);
        }
    }

    #[test]
    fn every_suite_is_populated() {
        let all = catalogue();
        for s in Suite::ALL {
            assert!(all.iter().any(|i| i.suite == s), "{s}");
        }
    }

    #[test]
    fn height_sets_are_nonempty() {
        let env = Env::new(&SuiteConfig::default()).unwrap();
        assert!(!env.sets.w22_bprime.is_empty());
        assert!(!env.sets.w22_unitarity.is_empty());
        assert!(!env.sets.w22_crossing.is_empty());
    }

    #[test]
    fn evaluation_counts() {
        let all = catalogue();
        let get = |id: &str| all.iter().find(|i| i.id == id).unwrap();
        assert_eq!(get("vertex.ybe").evaluations(25), 10);
        assert_eq!(get("face.ybe_level22").evaluations(25), 5);
        assert_eq!(get("closed_form.psi2").evaluations(25), 75);
        assert_eq!(get("theta.oracle").evaluations(25), 10);
        assert_eq!(get("vertex.ybe").evaluations(3), 3);
    }
}
