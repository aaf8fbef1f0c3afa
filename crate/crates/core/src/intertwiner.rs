//! Intertwining vectors between the vertex and face pictures, their duals,
//! their fusions, and the correspondences they satisfy.
//!
//! Everything takes a [`FaceModel`], so heights pick up the model's
//! dynamical shift exactly as the face weights do.

use num_complex::Complex64;

use crate::elliptic::{c, checked_div, Theta};
use crate::error::{Error, Result};
use crate::face::{extended_adjacent, FaceModel, Height};
use crate::fusion::{fuse22, gauge_pair, Method};
use crate::tensor::{residual, residual_slices, sym_restrict, ComplexMatrix};
use crate::vertex::baxter_r;

/// `ψ(u)^a_b = (ψ₊, ψ₋)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Intertwiner {
    pub u: Complex64,
    pub a: Height,
    pub b: Height,
    pub components: [Complex64; 2],
}

/// `ψ*(u)^a_b = (ψ*₊, ψ*₋)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DualIntertwiner {
    pub u: Complex64,
    pub a: Height,
    pub b: Height,
    pub components: [Complex64; 2],
}

/// `ψ^(2)(u)^a_b` with components ordered `μ = 2, 0, −2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FusedIntertwiner {
    pub u: Complex64,
    pub a: Height,
    pub b: Height,
    pub components: [Complex64; 3],
}

/// `ψ*^(2)(u)^a_b` with components ordered `μ = 2, 0, −2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FusedDualIntertwiner {
    pub u: Complex64,
    pub a: Height,
    pub b: Height,
    pub components: [Complex64; 3],
}

macro_rules! spin_access {
    ($t:ty) => {
        impl $t {
            pub fn component(&self, eps: i32) -> Complex64 {
                self.components[crate::tensor::spin_index(eps)]
            }
        }
    };
}
spin_access!(Intertwiner);
spin_access!(DualIntertwiner);

macro_rules! weight_access {
    ($t:ty) => {
        impl $t {
            pub fn component(&self, mu: i32) -> Complex64 {
                self.components[crate::tensor::weight_index(mu)]
            }
        }
    };
}
weight_access!(FusedIntertwiner);
weight_access!(FusedDualIntertwiner);

fn require_unit_step(a: Height, b: Height) -> Result<()> {
    if (a - b).abs() != 1 {
        return Err(Error::Argument(format!("intertwiner heights {a}, {b} must differ by 1")));
    }
    Ok(())
}

fn require_fused_step(a: Height, b: Height) -> Result<()> {
    if !extended_adjacent(a, b) {
        return Err(Error::Argument(format!("fused intertwiner heights {a}, {b} must differ by 0 or 2")));
    }
    Ok(())
}

/// `ψ_±(u)^a_b = ϑ_{0,3}(((a−b)u + a)/(2r) | τ/2)`.
pub fn psi(model: &FaceModel, u: Complex64, a: Height, b: Height) -> Result<Intertwiner> {
    require_unit_step(a, b)?;
    let ctx = model.ctx();
    let arg = ((a - b) as f64 * u + model.height(a)) / (2.0 * ctx.r());
    Ok(Intertwiner { u, a, b, components: [ctx.theta_half(Theta::T0, arg), ctx.theta_half(Theta::T3, arg)] })
}

/// `ψ*_ε(u)^a_b = −ε (a−b)/(2[b][u]) C² ψ_{−ε}(u−1)^a_b`.
pub fn psi_dual(model: &FaceModel, u: Complex64, a: Height, b: Height) -> Result<DualIntertwiner> {
    require_unit_step(a, b)?;
    let ctx = model.ctx();
    let den = 2.0 * model.height_bracket(b) * ctx.bracket(u);
    let f = checked_div(-(a - b) as f64 * ctx.c_const().powi(2), den, "dual intertwiner", u)?;
    let shifted = psi(model, u - 1.0, a, b)?.components;
    Ok(DualIntertwiner { u, a, b, components: [f * shifted[1], -f * shifted[0]] })
}

fn default_middle(a: Height, b: Height) -> Result<Height> {
    [a + 1, a - 1]
        .into_iter()
        .find(|&h| (h - b).abs() == 1)
        .ok_or_else(|| Error::Admissibility(format!("no height adjacent to both {a} and {b}")))
}

/// `ψ^(2)(u)^a_b`, either as `π(ψ(u+1)^a_c ⊗ ψ(u)^c_b)` or from the closed form.
pub fn psi2(
    model: &FaceModel,
    u: Complex64,
    a: Height,
    b: Height,
    method: Method,
    middle: Option<Height>,
) -> Result<FusedIntertwiner> {
    require_fused_step(a, b)?;
    let components = match method {
        Method::ByDefinition => {
            let cc = match middle {
                Some(cc) if (a - cc).abs() == 1 && (cc - b).abs() == 1 => cc,
                Some(cc) => {
                    return Err(Error::Admissibility(format!("c = {cc} is not adjacent to both {a} and {b}")))
                }
                None => default_middle(a, b)?,
            };
            let x = psi(model, u + 1.0, a, cc)?.components;
            let y = psi(model, u, cc, b)?.components;
            sym_restrict([x[0] * y[0], x[0] * y[1], x[1] * y[0], x[1] * y[1]])
        }
        Method::ClosedForm => psi2_closed_form(model, u, a, b),
    };
    Ok(FusedIntertwiner { u, a, b, components })
}

fn psi2_closed_form(model: &FaceModel, u: Complex64, a: Height, b: Height) -> [Complex64; 3] {
    let ctx = model.ctx();
    let r = ctx.r();
    let n = model.height(a);
    let t2 = |k, x: Complex64| ctx.theta_half(k, x);
    let th0 = |x: Complex64| ctx.theta_tau(Theta::T0, x);
    let (arg_a, arg_b, middle) = match b - a {
        2 => ((u - n + 1.0) / (2.0 * r), (u - n - 1.0) / (2.0 * r), 2.0 * th0((u - n) / r) * th0(c(1.0 / r))),
        0 => ((u - n + 1.0) / (2.0 * r), (u + n + 1.0) / (2.0 * r), 2.0 * th0(c(n / r)) * th0((u + 1.0) / r)),
        _ => ((u + n + 1.0) / (2.0 * r), (u + n - 1.0) / (2.0 * r), 2.0 * th0((u + n) / r) * th0(c(1.0 / r))),
    };
    [
        t2(Theta::T0, arg_a) * t2(Theta::T0, arg_b),
        middle,
        t2(Theta::T3, arg_a) * t2(Theta::T3, arg_b),
    ]
}

/// Which of the two equal middle components of the fused dual covector is
/// read off for `μ = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DualSplit {
    /// `(ε₁, ε₂) = (+, −)`.
    PlusMinus,
    /// `(ε₁, ε₂) = (−, +)`.
    MinusPlus,
}

/// `Σ_c ψ*(u)^a_c ⊗ ψ*(u+1)^c_b` as a covector on `V⊗V`.
fn psi2_dual_raw(model: &FaceModel, u: Complex64, a: Height, b: Height) -> Result<[Complex64; 4]> {
    let mut w = [c(0.0); 4];
    for cc in [a - 1, a + 1] {
        if (cc - b).abs() != 1 {
            continue;
        }
        let x = psi_dual(model, u, a, cc)?.components;
        let y = psi_dual(model, u + 1.0, cc, b)?.components;
        for i in 0..2 {
            for j in 0..2 {
                w[2 * i + j] += x[i] * y[j];
            }
        }
    }
    Ok(w)
}

/// `ψ*^(2)(u)^a_b`, either from the fused covector (with the given split) or
/// from the closed form.
pub fn psi2_dual(
    model: &FaceModel,
    u: Complex64,
    a: Height,
    b: Height,
    method: Method,
) -> Result<FusedDualIntertwiner> {
    psi2_dual_split(model, u, a, b, method, DualSplit::PlusMinus)
}

pub fn psi2_dual_split(
    model: &FaceModel,
    u: Complex64,
    a: Height,
    b: Height,
    method: Method,
    split: DualSplit,
) -> Result<FusedDualIntertwiner> {
    require_fused_step(a, b)?;
    let components = match method {
        Method::ByDefinition => {
            let w = psi2_dual_raw(model, u, a, b)?;
            let mid = match split {
                DualSplit::PlusMinus => w[1],
                DualSplit::MinusPlus => w[2],
            };
            [w[0], mid, w[3]]
        }
        Method::ClosedForm => psi2_dual_closed_form(model, u, a, b)?,
    };
    Ok(FusedDualIntertwiner { u, a, b, components })
}

fn psi2_dual_closed_form(model: &FaceModel, u: Complex64, a: Height, b: Height) -> Result<[Complex64; 3]> {
    let ctx = model.ctx();
    let r = ctx.r();
    let n = model.height(a);
    let br = |x: Complex64| ctx.bracket(x);
    let t2 = |k, x: Complex64| ctx.theta_half(k, x);
    let th = |k, x: Complex64| ctx.theta_tau(k, x);
    let cst = ctx.c_const();
    let buu = br(u) * br(u + 1.0);
    let outer = |m1: f64, m2: f64, arg: Complex64| -> Result<[Complex64; 3]> {
        let pre = checked_div(cst.powi(4), 4.0 * br(c(m1)) * br(c(m2)) * buu, "fused dual closed form", u)?;
        let (t3, t0) = (t2(Theta::T3, arg), t2(Theta::T0, arg));
        Ok([pre * t3 * t3, -pre * t3 * t0, pre * t0 * t0])
    };
    match b - a {
        2 => outer(n + 1.0, n + 2.0, (u - n - 1.0) / (2.0 * r)),
        -2 => outer(n - 1.0, n - 2.0, (u + n - 1.0) / (2.0 * r)),
        _ => {
            let den = 4.0 * br(c(n)) * br(c(n + 1.0)) * br(c(n - 1.0)) * buu;
            let pre = checked_div(-cst.powi(5), den, "fused dual closed form", u)?;
            let a1 = (u + n + 1.0) / (2.0 * r);
            let a2 = (u - n - 1.0) / (2.0 * r);
            let a3 = (u - n + 1.0) / (2.0 * r);
            let a4 = (u + n - 1.0) / (2.0 * r);
            let t1m = th(Theta::T1, c((n - 1.0) / r));
            let t1p = th(Theta::T1, c((n + 1.0) / r));
            let side = |k| t2(k, a1) * t2(k, a2) * t1m + t2(k, a3) * t2(k, a4) * t1p;
            let mid = -t2(Theta::T1, c(n / r)) * t2(Theta::T2, c(1.0 / r)) * th(Theta::T0, u / r);
            Ok([pre * side(Theta::T3), pre * mid, pre * side(Theta::T0)])
        }
    }
}

/// How the R-matrix elements are contracted in a correspondence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    /// Summed indices on the input side for the direct relations, on the
    /// output side for the dual ones.
    Natural,
    /// The opposite contraction (the matrix transposed).
    Transposed,
}

impl Orientation {
    fn apply(self, m: ComplexMatrix) -> ComplexMatrix {
        match self {
            Orientation::Natural => m,
            Orientation::Transposed => m.transpose(),
        }
    }
}

fn in_range(model: &FaceModel, h: Height) -> bool {
    let x = model.height(h);
    x > 0.0 && x < model.ctx().r()
}

/// `Σ R(u−v)^{..}_{ε₁ε₂} ψ(u)^a_b ψ(v)^b_c = Σ_{b'} ψ_{ε₂}(v)^a_{b'} ψ_{ε₁}(u)^{b'}_c W(a b; b' c | u−v)`,
/// over `b = a±1` and `c = b±1`.
pub fn vertex_face_residual(model: &FaceModel, u: Complex64, v: Complex64, a: Height) -> Result<f64> {
    let rm = baxter_r(u - v, model.ctx())?.into_matrix();
    let (mut lhs, mut rhs) = (Vec::new(), Vec::new());
    for b in [a - 1, a + 1] {
        for cc in [b - 1, b + 1] {
            let pu = psi(model, u, a, b)?.components;
            let pv = psi(model, v, b, cc)?.components;
            for e1 in 0..2 {
                for e2 in 0..2 {
                    let mut l = c(0.0);
                    for f1 in 0..2 {
                        for f2 in 0..2 {
                            l += rm[(2 * e1 + e2, 2 * f1 + f2)] * pu[f1] * pv[f2];
                        }
                    }
                    let mut r = c(0.0);
                    for bp in [a - 1, a + 1] {
                        if (bp - cc).abs() != 1 {
                            continue;
                        }
                        r += psi(model, v, a, bp)?.components[e2]
                            * psi(model, u, bp, cc)?.components[e1]
                            * model.w(a, b, bp, cc, u - v)?;
                    }
                    lhs.push(l);
                    rhs.push(r);
                }
            }
        }
    }
    Ok(residual_slices(&lhs, &rhs))
}

/// Dual correspondence with `ψ*`:
/// `Σ R(u−v)^{ε₁ε₂}_{..} ψ*(u)^a_b ψ*(v)^b_c = Σ_{b'} ψ*_{ε₂}(v)^a_{b'} ψ*_{ε₁}(u)^{b'}_c W(c b'; b a | u−v)`.
pub fn dual_vertex_face_residual(model: &FaceModel, u: Complex64, v: Complex64, a: Height) -> Result<f64> {
    let rm = baxter_r(u - v, model.ctx())?.into_matrix();
    let (mut lhs, mut rhs) = (Vec::new(), Vec::new());
    for b in [a - 1, a + 1] {
        for cc in [b - 1, b + 1] {
            let pu = psi_dual(model, u, a, b)?.components;
            let pv = psi_dual(model, v, b, cc)?.components;
            for e1 in 0..2 {
                for e2 in 0..2 {
                    let mut l = c(0.0);
                    for f1 in 0..2 {
                        for f2 in 0..2 {
                            l += rm[(2 * f1 + f2, 2 * e1 + e2)] * pu[f1] * pv[f2];
                        }
                    }
                    let mut r = c(0.0);
                    for bp in [a - 1, a + 1] {
                        if (bp - cc).abs() != 1 {
                            continue;
                        }
                        r += psi_dual(model, v, a, bp)?.components[e2]
                            * psi_dual(model, u, bp, cc)?.components[e1]
                            * model.w(cc, bp, b, a, u - v)?;
                    }
                    lhs.push(l);
                    rhs.push(r);
                }
            }
        }
    }
    Ok(residual_slices(&lhs, &rhs))
}

fn fused_heights(model: &FaceModel, a: Height) -> Vec<(Height, Height)> {
    let mut out = Vec::new();
    for b in [a - 2, a, a + 2] {
        for cc in [b - 2, b, b + 2] {
            if in_range(model, b) && in_range(model, cc) {
                out.push((b, cc));
            }
        }
    }
    out
}

/// Fused correspondence with `R^(2,2)` and `W₂₂`, over `b ∈ {a, a±2}` and
/// `c ∈ {b, b±2}` inside `(0, r)`.
pub fn fused_vertex_face_residual(
    model: &FaceModel,
    u: Complex64,
    v: Complex64,
    a: Height,
    orientation: Orientation,
) -> Result<f64> {
    let rm = orientation.apply(fuse22(u - v, model.ctx(), Method::ClosedForm)?.matrix);
    let p2 = |w, x, y| psi2(model, w, x, y, Method::ByDefinition, None).map(|p| p.components);
    let (mut lhs, mut rhs) = (Vec::new(), Vec::new());
    for (b, cc) in fused_heights(model, a) {
        let pu = p2(u, a, b)?;
        let pv = p2(v, b, cc)?;
        for m1 in 0..3 {
            for m2 in 0..3 {
                let mut l = c(0.0);
                for k1 in 0..3 {
                    for k2 in 0..3 {
                        l += rm[(3 * m1 + m2, 3 * k1 + k2)] * pu[k1] * pv[k2];
                    }
                }
                let mut r = c(0.0);
                for bp in [a - 2, a, a + 2] {
                    if !extended_adjacent(bp, cc) || !in_range(model, bp) {
                        continue;
                    }
                    r += p2(v, a, bp)?[m2] * p2(u, bp, cc)?[m1] * model.w22(a, b, bp, cc, u - v, None)?;
                }
                lhs.push(l);
                rhs.push(r);
            }
        }
    }
    Ok(residual_slices(&lhs, &rhs))
}

/// `ψ*^(2)(·)^x_y` avoids `[0]` and `[r]`: the lower height and every
/// intermediate height lie inside `(0, r)`.
fn dual_regular(model: &FaceModel, x: Height, y: Height) -> bool {
    in_range(model, y) && [x - 1, x + 1].into_iter().filter(|h| (h - y).abs() == 1).all(|h| in_range(model, h))
}

/// Fused dual correspondence with `R^(2,2)` and `W₂₂(c b'; b a)`, over the
/// height tuples where every dual vector involved is regular.
pub fn fused_dual_vertex_face_residual(
    model: &FaceModel,
    u: Complex64,
    v: Complex64,
    a: Height,
    orientation: Orientation,
) -> Result<f64> {
    let rm = orientation.apply(fuse22(u - v, model.ctx(), Method::ClosedForm)?.matrix);
    let d2 = |w, x, y| psi2_dual(model, w, x, y, Method::ByDefinition).map(|p| p.components);
    let (mut lhs, mut rhs) = (Vec::new(), Vec::new());
    for (b, cc) in fused_heights(model, a) {
        let primes = [a - 2, a, a + 2].into_iter().filter(|&bp| extended_adjacent(bp, cc) && in_range(model, bp));
        let regular = dual_regular(model, a, b)
            && dual_regular(model, b, cc)
            && primes.clone().all(|bp| dual_regular(model, a, bp) && dual_regular(model, bp, cc));
        if !regular {
            continue;
        }
        let pu = d2(u, a, b)?;
        let pv = d2(v, b, cc)?;
        for m1 in 0..3 {
            for m2 in 0..3 {
                let mut l = c(0.0);
                for k1 in 0..3 {
                    for k2 in 0..3 {
                        l += rm[(3 * k1 + k2, 3 * m1 + m2)] * pu[k1] * pv[k2];
                    }
                }
                let mut r = c(0.0);
                for bp in [a - 2, a, a + 2] {
                    if !extended_adjacent(bp, cc) || !in_range(model, bp) {
                        continue;
                    }
                    r += d2(v, a, bp)?[m2] * d2(u, bp, cc)?[m1] * model.w22(cc, bp, b, a, u - v, None)?;
                }
                lhs.push(l);
                rhs.push(r);
            }
        }
    }
    Ok(residual_slices(&lhs, &rhs))
}

/// `Σ_ε ψ*_ε(u)^a_b ψ_ε(u)^b_c = δ_{ac}` for `a, c = b±1`.
pub fn inversion_a_residual(model: &FaceModel, u: Complex64, b: Height) -> Result<f64> {
    let hs = [b - 1, b + 1];
    let mut m = ComplexMatrix::zeros(2, 2);
    for (i, &a) in hs.iter().enumerate() {
        for (j, &cc) in hs.iter().enumerate() {
            let d = psi_dual(model, u, a, b)?.components;
            let p = psi(model, u, b, cc)?.components;
            m[(i, j)] = d[0] * p[0] + d[1] * p[1];
        }
    }
    residual(&m, &ComplexMatrix::identity(2))
}

/// `Σ_{a=b±1} ψ*_{ε'}(u)^a_b ψ_ε(u)^b_a = δ_{ε'ε}`.
pub fn inversion_b_residual(model: &FaceModel, u: Complex64, b: Height) -> Result<f64> {
    let mut m = ComplexMatrix::zeros(2, 2);
    for a in [b - 1, b + 1] {
        let d = psi_dual(model, u, a, b)?.components;
        let p = psi(model, u, b, a)?.components;
        for ep in 0..2 {
            for e in 0..2 {
                m[(ep, e)] += d[ep] * p[e];
            }
        }
    }
    residual(&m, &ComplexMatrix::identity(2))
}

/// `Σ_μ ψ*^(2)_μ(u)^a_b ψ^(2)_μ(u)^b_c = δ_{ac}` for `a, c ∈ {b, b±2}`.
pub fn fused_inversion_a_residual(model: &FaceModel, u: Complex64, b: Height) -> Result<f64> {
    let hs = [b - 2, b, b + 2];
    let mut m = ComplexMatrix::zeros(3, 3);
    for (i, &a) in hs.iter().enumerate() {
        for (j, &cc) in hs.iter().enumerate() {
            let d = psi2_dual(model, u, a, b, Method::ByDefinition)?.components;
            let p = psi2(model, u, b, cc, Method::ByDefinition, None)?.components;
            m[(i, j)] = (0..3).map(|k| d[k] * p[k]).sum();
        }
    }
    residual(&m, &ComplexMatrix::identity(3))
}

/// `Σ_{a ∈ {b, b±2}} ψ*^(2)_{μ'}(u)^a_b ψ^(2)_μ(u)^b_a = δ_{μ'μ}`.
pub fn fused_inversion_b_residual(model: &FaceModel, u: Complex64, b: Height) -> Result<f64> {
    let mut m = ComplexMatrix::zeros(3, 3);
    for a in [b - 2, b, b + 2] {
        let d = psi2_dual(model, u, a, b, Method::ByDefinition)?.components;
        let p = psi2(model, u, b, a, Method::ByDefinition, None)?.components;
        for mp in 0..3 {
            for mu in 0..3 {
                m[(mp, mu)] += d[mp] * p[mu];
            }
        }
    }
    residual(&m, &ComplexMatrix::identity(3))
}

/// Independence of `ψ^(2)(u)^a_a` from the intermediate height.
pub fn psi2_middle_residual(model: &FaceModel, u: Complex64, a: Height) -> Result<f64> {
    let x = psi2(model, u, a, a, Method::ByDefinition, Some(a - 1))?.components;
    let y = psi2(model, u, a, a, Method::ByDefinition, Some(a + 1))?.components;
    Ok(residual_slices(&x, &y))
}

/// The fused dual covector annihilates antisymmetric tensors: its `(+,−)`
/// and `(−,+)` components coincide.
pub fn psi2_dual_split_residual(model: &FaceModel, u: Complex64, a: Height, b: Height) -> Result<f64> {
    let w = psi2_dual_raw(model, u, a, b)?;
    Ok(residual_slices(&[w[1]], &[w[2]]))
}

/// A closed form compared with its fusion construction: the best scalar
/// `s` with `fused ≈ s·closed` and the residual left after dividing it out.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaleComparison {
    pub scale: Complex64,
    pub direct_residual: f64,
    pub residual_after_scale: f64,
}

pub fn compare_with_scale(fused: &[Complex64], closed: &[Complex64]) -> ScaleComparison {
    let (num, den) = fused
        .iter()
        .zip(closed)
        .fold((c(0.0), 0.0), |(n, d), (f, k)| (n + k.conj() * f, d + k.norm_sqr()));
    let scale = if den > 0.0 { num / den } else { c(1.0) };
    let scaled: Vec<Complex64> = closed.iter().map(|k| scale * k).collect();
    ScaleComparison {
        scale,
        direct_residual: residual_slices(fused, closed),
        residual_after_scale: residual_slices(fused, &scaled),
    }
}

pub fn psi2_closed_form_comparison(model: &FaceModel, u: Complex64, a: Height, b: Height) -> Result<ScaleComparison> {
    let fused = psi2(model, u, a, b, Method::ByDefinition, None)?.components;
    let closed = psi2(model, u, a, b, Method::ClosedForm, None)?.components;
    Ok(compare_with_scale(&fused, &closed))
}

pub fn psi2_dual_closed_form_comparison(
    model: &FaceModel,
    u: Complex64,
    a: Height,
    b: Height,
) -> Result<ScaleComparison> {
    let fused = psi2_dual(model, u, a, b, Method::ByDefinition)?.components;
    let closed = psi2_dual(model, u, a, b, Method::ClosedForm)?.components;
    Ok(compare_with_scale(&fused, &closed))
}

/// Right-hand side of the relation between `ψ*^(2)(u)` and `ψ^(2)(u−1)`:
/// `−C⁴/(4[u][u+1]) · ϑ₃(0)/ϑ₃(1/r) · g_a/(g_b (a,b)₂) · Σ_{ε'} Q^{ε'}_ε ψ^(2)_{ε'}(u−1)^a_b`.
pub fn dual_fused_rhs(model: &FaceModel, u: Complex64, a: Height, b: Height) -> Result<[Complex64; 3]> {
    let ctx = model.ctx();
    let q = gauge_pair(ctx)?.q;
    let th3 = checked_div(
        ctx.theta_tau(Theta::T3, c(0.0)),
        ctx.theta_tau(Theta::T3, c(1.0 / ctx.r())),
        "theta-3 ratio",
        u,
    )?;
    let heights = checked_div(model.g(a)?, model.g(b)? * model.pairing(a, b, 2)?, "height factor", u)?;
    let pre = checked_div(-ctx.c_const().powi(4), 4.0 * ctx.bracket(u) * ctx.bracket(u + 1.0), "dual relation prefactor", u)?
        * th3
        * heights;
    let p = psi2(model, u - 1.0, a, b, Method::ByDefinition, None)?.components;
    let mut out = [c(0.0); 3];
    for (e, slot) in out.iter_mut().enumerate() {
        *slot = pre * (0..3).map(|ep| q[(ep, e)] * p[ep]).sum::<Complex64>();
    }
    Ok(out)
}

pub fn dual_fused_residual(model: &FaceModel, u: Complex64, a: Height, b: Height) -> Result<f64> {
    let lhs = psi2_dual(model, u, a, b, Method::ByDefinition)?.components;
    Ok(residual_slices(&lhs, &dual_fused_rhs(model, u, a, b)?))
}
