//! Fused R-matrices `R^(2,1)`, `R^(2,2)`, Fateev's 21-vertex matrix and the
//! gauge transformation between the last two.

use num_complex::Complex64;

use crate::elliptic::{c, checked_div, jacobi, EllipticContext, JacobiKind, Theta};
use crate::error::{Error, Result};
use crate::tensor::{
    self, embed_two_site, embedding, flip, kron, partial_transpose_first, residual, restriction, ComplexMatrix,
};
use crate::vertex::baxter_r;

/// How a fused object is assembled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    /// Project a product of lower-level objects onto the symmetric subspace.
    ByDefinition,
    /// Evaluate the explicit theta-function expressions.
    ClosedForm,
}

/// `R^(2,1)(u)` on `V^(2)⊗V`, basis `(μ,ε)` row-major.
#[derive(Debug, Clone)]
pub struct RMatrix6 {
    pub u: Complex64,
    pub matrix: ComplexMatrix,
}

/// `R^(2,2)(u)` on `V^(2)⊗V^(2)`, basis `(μ₁,μ₂)` row-major.
#[derive(Debug, Clone)]
pub struct RMatrix9 {
    pub u: Complex64,
    pub matrix: ComplexMatrix,
}

/// Scale used to decide that two constructions disagree.
const CONSISTENCY_TOL: f64 = 1e-9;

fn r4(u: Complex64, ctx: &EllipticContext) -> Result<ComplexMatrix> {
    Ok(baxter_r(u, ctx)?.into_matrix())
}

/// `R₁₃(u+1) R₂₃(u)` on `V⊗V⊗V` before projection.
fn fuse21_raw(u: Complex64, ctx: &EllipticContext) -> Result<ComplexMatrix> {
    let dims = [2, 2, 2];
    let r13 = embed_two_site(&r4(u + 1.0, ctx)?, 0, 2, &dims);
    let r23 = embed_two_site(&r4(u, ctx)?, 1, 2, &dims);
    Ok(&r13 * &r23)
}

fn fuse21_by_definition(u: Complex64, ctx: &EllipticContext) -> Result<ComplexMatrix> {
    let id2 = ComplexMatrix::identity(2);
    let raw = fuse21_raw(u, ctx)?;
    Ok(tensor::product(&[&kron(&restriction(), &id2), &raw, &kron(&embedding(), &id2)]))
}

/// ϑ_k(a/(2r) | τ/2).
fn tt(ctx: &EllipticContext, k: Theta, a: Complex64) -> Complex64 {
    ctx.theta_half(k, a / (2.0 * ctx.r()))
}

/// The u-independent constants shared by the closed forms.
struct FusionConstants {
    t20: Complex64,
    h1: Complex64,
    h2: Complex64,
    o1: Complex64,
    o2: Complex64,
}

impl FusionConstants {
    fn new(ctx: &EllipticContext) -> Self {
        Self {
            t20: tt(ctx, Theta::T2, c(0.0)),
            h1: tt(ctx, Theta::T1, c(1.0)),
            h2: tt(ctx, Theta::T2, c(1.0)),
            o1: tt(ctx, Theta::T1, c(2.0)),
            o2: tt(ctx, Theta::T2, c(2.0)),
        }
    }
}

fn fuse21_closed_form(u: Complex64, ctx: &EllipticContext) -> Result<ComplexMatrix> {
    let k = FusionConstants::new(ctx);
    let t = |th, a: Complex64| tt(ctx, th, a);
    let (t1, t2) = (Theta::T1, Theta::T2);
    let t12 = |a| t(t1, a) * t(t2, a);
    let d2 = checked_div(c(1.0), k.t20 * k.t20 * t(t2, u + 2.0), "R21 closed form", u)?;
    let d1 = checked_div(c(1.0), k.t20 * k.t20 * t(t1, u + 2.0), "R21 closed form", u)?;
    let d12 = checked_div(c(1.0), k.t20 * t12(u + 2.0), "R21 closed form", u)?;

    let pp = k.h2 * k.h2 * t(t2, u) * d2;
    let zm = -k.h1 * k.h2 * t(t1, u) * d2;
    let mp = -k.h1 * k.h1 * t(t2, u) * d2;
    let pm = k.h2 * k.h2 * t(t1, u) * d1;
    let zp = k.h1 * k.h2 * t(t2, u) * d1;
    let mm = -k.h1 * k.h1 * t(t1, u) * d1;
    let pm0 = k.o1 * t(t2, u + 1.0).powi(2) * d12;
    let pp0 = -k.o1 * t(t1, u + 1.0).powi(2) * d12;
    let zz = k.o2 * t12(u + 1.0) * d12;

    let z = c(0.0);
    let m = ComplexMatrix::from_rows(&[
        [pp, z, z, zm, mp, z],
        [z, pm, zp, z, z, mm],
        [z, pm0, zz, z, z, pp0],
        [pp0, z, z, zz, pm0, z],
        [mm, z, z, zp, pm, z],
        [z, mp, zm, z, z, pp],
    ]);
    Ok(m.scale(r21_prefactor(u, ctx)?))
}

/// `R^(2,1)₀(u) = R₀(u+1) R₀(u) = −[u+1]/[u]`.
pub fn r21_prefactor(u: Complex64, ctx: &EllipticContext) -> Result<Complex64> {
    checked_div(-ctx.bracket(u + 1.0), ctx.bracket(u), "R21 prefactor", u)
}

/// `R^(2,2)₀(u) = [u+1]/[u−1]`.
pub fn r22_prefactor(u: Complex64, ctx: &EllipticContext) -> Result<Complex64> {
    checked_div(ctx.bracket(u + 1.0), ctx.bracket(u - 1.0), "R22 prefactor", u)
}

pub fn fuse21(u: Complex64, ctx: &EllipticContext, method: Method) -> Result<RMatrix6> {
    let matrix = match method {
        Method::ByDefinition => fuse21_by_definition(u, ctx)?,
        Method::ClosedForm => fuse21_closed_form(u, ctx)?,
    };
    Ok(RMatrix6 { u, matrix })
}

/// Both constructions, failing with a consistency error if they disagree.
pub fn fuse21_checked(u: Complex64, ctx: &EllipticContext) -> Result<RMatrix6> {
    let a = fuse21(u, ctx, Method::ByDefinition)?;
    let b = fuse21(u, ctx, Method::ClosedForm)?;
    let res = residual(&a.matrix, &b.matrix)?;
    if res > CONSISTENCY_TOL {
        return Err(Error::Consistency { what: "R21 constructions", residual: res });
    }
    Ok(a)
}

pub fn fuse21_agreement_residual(u: Complex64, ctx: &EllipticContext) -> Result<f64> {
    residual(&fuse21(u, ctx, Method::ByDefinition)?.matrix, &fuse21(u, ctx, Method::ClosedForm)?.matrix)
}

/// For `μ = 0` input, feeding `v₊⊗v₋` or `v₋⊗v₊` into the projected product
/// gives the same column.
pub fn fuse21_split_residual(u: Complex64, ctx: &EllipticContext) -> Result<f64> {
    let id2 = ComplexMatrix::identity(2);
    let left = &kron(&restriction(), &id2) * &fuse21_raw(u, ctx)?;
    split_columns_residual(&left, 2)
}

/// Compare the columns `(+−, e)` and `(−+, e)` of a matrix acting on
/// `V⊗V⊗C^tail`.
fn split_columns_residual(m: &ComplexMatrix, tail: usize) -> Result<f64> {
    let col = |pair: usize, e: usize| -> Vec<Complex64> { (0..m.rows()).map(|i| m[(i, pair * tail + e)]).collect() };
    let mut worst = 0.0f64;
    for e in 0..tail {
        worst = worst.max(tensor::residual_slices(&col(1, e), &col(2, e)));
    }
    Ok(worst)
}

/// `R^(2,1) Π = R^(2,1)`: projecting after right-multiplying the raw product
/// by the symmetrizer changes nothing.
pub fn fuse21_absorption_residual(u: Complex64, ctx: &EllipticContext) -> Result<f64> {
    let id2 = ComplexMatrix::identity(2);
    let raw = fuse21_raw(u, ctx)?;
    let pi3 = kron(&tensor::symmetrizer(), &id2);
    let left = &kron(&restriction(), &id2) * &raw;
    residual(&(&left * &pi3), &left)
}

fn fuse22_raw(u: Complex64, ctx: &EllipticContext) -> Result<ComplexMatrix> {
    let dims = [3, 2, 2];
    let a = embed_two_site(&fuse21_by_definition(u, ctx)?, 0, 2, &dims);
    let b = embed_two_site(&fuse21_by_definition(u - 1.0, ctx)?, 0, 1, &dims);
    Ok(&a * &b)
}

fn fuse22_by_definition(u: Complex64, ctx: &EllipticContext) -> Result<ComplexMatrix> {
    let id3 = ComplexMatrix::identity(3);
    let raw = fuse22_raw(u, ctx)?;
    Ok(tensor::product(&[&kron(&id3, &restriction()), &raw, &kron(&id3, &embedding())]))
}

/// The nine entry functions of `R^(2,2)` (before the prefactor), possibly
/// with the star substitution applied.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Letters {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
    pub d: Complex64,
    pub e: Complex64,
    pub f: Complex64,
    pub g: Complex64,
    pub h: Complex64,
    pub i: Complex64,
}

/// Evaluate the letters. With `star`, every theta whose argument depends on
/// `u` is replaced by ϑ₁ → −ϑ₂, ϑ₂ → ϑ₁.
pub fn letters(u: Complex64, ctx: &EllipticContext, star: bool) -> Result<Letters> {
    let k = FusionConstants::new(ctx);
    let tu = |which: u8, a: Complex64| match (which, star) {
        (1, false) => tt(ctx, Theta::T1, a),
        (2, false) => tt(ctx, Theta::T2, a),
        (1, true) => -tt(ctx, Theta::T2, a),
        _ => tt(ctx, Theta::T1, a),
    };
    let tu12 = |a| tu(1, a) * tu(2, a);
    let (h12, o12, t20) = (k.h1 * k.h2, k.o1 * k.o2, k.t20);
    let inv = |den: Complex64| checked_div(c(1.0), den, "R22 closed form", u);

    let d3 = inv(t20.powi(3) * tu(2, u + 2.0) * tu12(u + 1.0))?;
    let d2 = inv(t20 * t20 * tu12(u + 2.0))?;
    let d3b = inv(t20.powi(3) * tu12(u + 2.0) * tu12(u + 1.0))?;
    let d4 = inv(t20.powi(4) * tu(2, u + 2.0) * tu12(u + 1.0))?;

    let (um, up) = (u - 1.0, u + 1.0);
    Ok(Letters {
        a: -k.o1 * tu(2, u) * h12 * tu12(u) * d3,
        b: -k.o2 * tu(1, u) * h12 * tu12(u) * d3,
        c: tu(2, u).powi(2) * o12 * d2,
        d: -k.o1 * k.o1 * tu12(u) * d2,
        e: k.o1 * h12 * (tu(2, up).powi(3) * tu(2, um) + tu(1, up).powi(3) * tu(1, um)) * d3b
            + k.o2 * k.o2 * tu12(u) * d2,
        f: k.o2 * k.o2 * tu12(u) * d2,
        g: tu(2, u)
            * (k.h1.powi(4) * tu(1, um) * tu(2, up) + k.h2.powi(4) * tu(2, um) * tu(1, up))
            * d4,
        h: k.o1 * tu(1, u).powi(3) * h12 * d3,
        i: -k.o1 * (k.h2 * k.h2 * tu(1, up).powi(3) * tu(2, um) + k.h1 * k.h1 * tu(2, up).powi(3) * tu(1, um)) * d3b
            - tu(1, u).powi(2) * o12 * d2,
    })
}

fn fuse22_closed_form(u: Complex64, ctx: &EllipticContext) -> Result<ComplexMatrix> {
    let l = letters(u, ctx, false)?;
    let s = letters(u, ctx, true)?;
    let z = c(0.0);
    let m = ComplexMatrix::from_rows(&[
        [l.g, z, l.a, z, l.b, z, l.a, z, l.h],
        [z, l.f, z, l.c, z, s.c, z, l.d, z],
        [s.a, z, s.g, z, s.b, z, s.h, z, s.a],
        [z, l.c, z, l.f, z, l.d, z, s.c, z],
        [l.i, z, s.i, z, l.e, z, s.i, z, l.i],
        [z, s.c, z, l.d, z, l.f, z, l.c, z],
        [s.a, z, s.h, z, s.b, z, s.g, z, s.a],
        [z, l.d, z, s.c, z, l.c, z, l.f, z],
        [l.h, z, l.a, z, l.b, z, l.a, z, l.g],
    ]);
    Ok(m.scale(r22_prefactor(u, ctx)?))
}

pub fn fuse22(u: Complex64, ctx: &EllipticContext, method: Method) -> Result<RMatrix9> {
    let matrix = match method {
        Method::ByDefinition => fuse22_by_definition(u, ctx)?,
        Method::ClosedForm => fuse22_closed_form(u, ctx)?,
    };
    Ok(RMatrix9 { u, matrix })
}

pub fn fuse22_checked(u: Complex64, ctx: &EllipticContext) -> Result<RMatrix9> {
    let a = fuse22(u, ctx, Method::ByDefinition)?;
    let b = fuse22(u, ctx, Method::ClosedForm)?;
    let res = residual(&a.matrix, &b.matrix)?;
    if res > CONSISTENCY_TOL {
        return Err(Error::Consistency { what: "R22 constructions", residual: res });
    }
    Ok(a)
}

fn r22(u: Complex64, ctx: &EllipticContext) -> Result<ComplexMatrix> {
    Ok(fuse22(u, ctx, Method::ClosedForm)?.matrix)
}

pub fn fuse22_agreement_residual(u: Complex64, ctx: &EllipticContext) -> Result<f64> {
    residual(&fuse22(u, ctx, Method::ByDefinition)?.matrix, &fuse22(u, ctx, Method::ClosedForm)?.matrix)
}

/// Per-letter comparison of the starred closed-form letters against the
/// corresponding entries of the definitional matrix.
pub fn star_letter_residuals(u: Complex64, ctx: &EllipticContext) -> Result<Vec<(&'static str, f64)>> {
    let def = fuse22(u, ctx, Method::ByDefinition)?.matrix;
    let pre = r22_prefactor(u, ctx)?;
    let s = letters(u, ctx, true)?;
    let entries: [(&str, Complex64, (usize, usize)); 6] = [
        ("A*", s.a, (2, 0)),
        ("B*", s.b, (2, 4)),
        ("C*", s.c, (1, 5)),
        ("G*", s.g, (2, 2)),
        ("H*", s.h, (2, 6)),
        ("I*", s.i, (4, 2)),
    ];
    Ok(entries
        .into_iter()
        .map(|(name, v, idx)| (name, tensor::residual_scalar(pre * v, def[idx])))
        .collect())
}

/// For `μ₂ = 0` input, `v₊⊗v₋` and `v₋⊗v₊` in the second factor give the
/// same projected column.
pub fn fuse22_split_residual(u: Complex64, ctx: &EllipticContext) -> Result<f64> {
    let left = &kron(&ComplexMatrix::identity(3), &restriction()) * &fuse22_raw(u, ctx)?;
    // column index (μ₁, ε₁, ε₂): compare (μ₁,+,−) with (μ₁,−,+)
    let mut worst = 0.0f64;
    for mu in 0..3 {
        let col = |j: usize| -> Vec<Complex64> { (0..left.rows()).map(|i| left[(i, mu * 4 + j)]).collect() };
        worst = worst.max(tensor::residual_slices(&col(1), &col(2)));
    }
    Ok(worst)
}

/// `R^(2,2)(u)^{ε₁ε₂}_{ε₁'ε₂'} = R^(2,2)(u)^{ε₂ε₁}_{ε₂'ε₁'}`.
pub fn p_invariance_residual(m: &ComplexMatrix) -> Result<f64> {
    let p = flip(3);
    residual(m, &tensor::product(&[&p, m, &p]))
}

/// `R^(2,2)(u)^{ε₁ε₂}_{ε₁'ε₂'} = R^(2,2)(u)^{−ε₁−ε₂}_{−ε₁'−ε₂'}`.
pub fn z2_residual(m: &ComplexMatrix) -> Result<f64> {
    let n = m.rows();
    let rev = ComplexMatrix::from_fn(n, n, |i, j| m[(n - 1 - i, n - 1 - j)]);
    residual(m, &rev)
}

/// Transposition symmetry `M = Mᵗ`.
pub fn t_invariance_residual(m: &ComplexMatrix) -> Result<f64> {
    residual(m, &m.transpose())
}

/// `R₁₂(u−v) R₁₃(u) R₂₃(v)` braid relation for `R^(2,2)` on `(V^(2))^{⊗3}`.
pub fn ybe22_residual(u: Complex64, v: Complex64, ctx: &EllipticContext) -> Result<f64> {
    tensor::ybe_residual(&r22(u - v, ctx)?, &r22(u, ctx)?, &r22(v, ctx)?, 3)
}

/// `R^(2,2)(−u−1) = (Q⁻¹⊗1) (P R^(2,2)(u) P)^{t₁} (Q⊗1)`.
pub fn crossing22_residual(u: Complex64, ctx: &EllipticContext) -> Result<f64> {
    let q = gauge_pair(ctx)?.q;
    let id3 = ComplexMatrix::identity(3);
    let p = flip(3);
    let pt = partial_transpose_first(&tensor::product(&[&p, &r22(u, ctx)?, &p]), 3, 3)?;
    let rhs = tensor::product(&[&kron(&q.inverse()?, &id3), &pt, &kron(&q, &id3)]);
    residual(&r22(-u - 1.0, ctx)?, &rhs)
}

/// Fateev's 21-vertex R-matrix `F̃(u)·M(u)`.
#[derive(Debug, Clone)]
pub struct FateevMatrix {
    pub u: Complex64,
    pub ftilde: Complex64,
    unnormalized: ComplexMatrix,
}

impl FateevMatrix {
    pub fn unnormalized(&self) -> &ComplexMatrix {
        &self.unnormalized
    }

    pub fn matrix(&self) -> ComplexMatrix {
        self.unnormalized.scale(self.ftilde)
    }

    /// Entry `R_F(u)^{ij}_{kl}` with `i, j, k, l ∈ {0, 1, 2}`.
    pub fn element(m: &ComplexMatrix, i: usize, j: usize, k: usize, l: usize) -> Complex64 {
        m[(3 * k + l, 3 * i + j)]
    }
}

fn sn(u: Complex64, ctx: &EllipticContext) -> Result<Complex64> {
    jacobi(JacobiKind::Sn, u, ctx)
}

fn fateev_unnormalized(u: Complex64, ctx: &EllipticContext) -> Result<ComplexMatrix> {
    let cn = |v| jacobi(JacobiKind::Cn, v, ctx);
    let dn = |v| jacobi(JacobiKind::Dn, v, ctx);
    let (s1l, s2l, c2l, d2l) = (sn(c(1.0), ctx)?, sn(c(2.0), ctx)?, cn(c(2.0))?, dn(c(2.0))?);
    let (snu, snu1) = (sn(u, ctx)?, sn(u + 1.0, ctx)?);
    let k = checked_div(s1l * s2l, snu * snu1, "Fateev weight", u)?;
    let inv_u = checked_div(s2l, snu, "Fateev weight", u)?;
    let inv_u1 = checked_div(s2l, snu1, "Fateev weight", u)?;

    let s1 = c2l + k;
    let s2 = c2l + d2l - 1.0 + k;
    let s3 = d2l + k;
    let (big_t, t, a) = (c(1.0), c2l, d2l);
    let r = cn(u)? * inv_u;
    let mu = -cn(u + 1.0)? * inv_u1;
    let big_r = inv_u;
    let nu = -inv_u1;
    let q = dn(u)? * inv_u;
    let rho = -dn(u + 1.0)? * inv_u1;

    let z = c(0.0);
    Ok(ComplexMatrix::from_rows(&[
        [s1, z, z, z, mu, z, z, z, nu],
        [z, t, z, r, z, z, z, z, z],
        [z, z, big_t, z, z, z, big_r, z, z],
        [z, r, z, t, z, z, z, z, z],
        [mu, z, z, z, s2, z, z, z, rho],
        [z, z, z, z, z, a, z, q, z],
        [z, z, big_r, z, z, z, big_t, z, z],
        [z, z, z, z, z, q, z, a, z],
        [nu, z, z, z, rho, z, z, z, s3],
    ]))
}

pub fn fateev_r(u: Complex64, ctx: &EllipticContext) -> Result<FateevMatrix> {
    Ok(FateevMatrix { u, ftilde: ftilde(u, ctx)?, unnormalized: fateev_unnormalized(u, ctx)? })
}

/// `F̃(u) = R^(2,2)₀(u) ϑ₀(2/r|τ) ϑ₁(u/r|τ) / (ϑ₀(0|τ) ϑ₁((u+2)/r|τ))`.
pub fn ftilde(u: Complex64, ctx: &EllipticContext) -> Result<Complex64> {
    let r = ctx.r();
    let num = ctx.theta_tau(Theta::T0, c(2.0 / r)) * ctx.theta_tau(Theta::T1, u / r);
    let den = ctx.theta_tau(Theta::T0, c(0.0)) * ctx.theta_tau(Theta::T1, (u + 2.0) / r);
    Ok(r22_prefactor(u, ctx)? * checked_div(num, den, "F-tilde", u)?)
}

/// `F̃(u) = F̃(−u−1)`.
pub fn ftilde_reflection_residual(u: Complex64, ctx: &EllipticContext) -> Result<f64> {
    Ok(tensor::residual_scalar(ftilde(u, ctx)?, ftilde(-u - 1.0, ctx)?))
}

/// `F̃(u) F̃(−u) = sn²λu / (sn²λu − sn²2λ)`.
pub fn ftilde_product_residual(u: Complex64, ctx: &EllipticContext) -> Result<f64> {
    let lhs = ftilde(u, ctx)? * ftilde(-u, ctx)?;
    let s = sn(u, ctx)?.powi(2);
    let rhs = checked_div(s, s - sn(c(2.0), ctx)?.powi(2), "F-tilde product", u)?;
    Ok(tensor::residual_scalar(lhs, rhs))
}

pub fn fateev_t_invariance_residual(u: Complex64, ctx: &EllipticContext) -> Result<f64> {
    t_invariance_residual(&fateev_r(u, ctx)?.matrix())
}

pub fn fateev_p_invariance_residual(u: Complex64, ctx: &EllipticContext) -> Result<f64> {
    p_invariance_residual(&fateev_r(u, ctx)?.matrix())
}

/// `R_F(u)^{ij}_{kl} = R_F(−u−1)^{kj}_{il}`.
pub fn fateev_crossing_residual(u: Complex64, ctx: &EllipticContext) -> Result<f64> {
    let m = fateev_r(u, ctx)?.matrix();
    let n = fateev_r(-u - 1.0, ctx)?.matrix();
    let mut crossed = ComplexMatrix::zeros(9, 9);
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                for l in 0..3 {
                    crossed[(3 * k + l, 3 * i + j)] = FateevMatrix::element(&n, k, j, i, l);
                }
            }
        }
    }
    residual(&m, &crossed)
}

/// Signs of the square roots `x`, `y` in the gauge matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SignChoice {
    pub x_negative: bool,
    pub y_negative: bool,
}

impl SignChoice {
    pub const PRINCIPAL: SignChoice = SignChoice { x_negative: false, y_negative: false };

    pub fn all() -> [SignChoice; 4] {
        [
            SignChoice { x_negative: false, y_negative: false },
            SignChoice { x_negative: true, y_negative: false },
            SignChoice { x_negative: false, y_negative: true },
            SignChoice { x_negative: true, y_negative: true },
        ]
    }
}

/// The gauge matrix `U` and the crossing matrix `Q = UᵗU`.
#[derive(Debug, Clone)]
pub struct GaugePair {
    pub x2: Complex64,
    pub y2: Complex64,
    pub u: ComplexMatrix,
    /// `UᵗU` assembled from `U`.
    pub q: ComplexMatrix,
    /// `½(1+y², 0, 1−y²; 0, 2x², 0; 1−y², 0, 1+y²)`.
    pub q_closed: ComplexMatrix,
}

pub fn gauge_pair(ctx: &EllipticContext) -> Result<GaugePair> {
    gauge_pair_with_signs(ctx, SignChoice::PRINCIPAL)
}

pub fn gauge_pair_with_signs(ctx: &EllipticContext, signs: SignChoice) -> Result<GaugePair> {
    let th = |k, v: f64| ctx.theta_tau(k, c(v));
    let rinv = 1.0 / ctx.r();
    let at = c(rinv);
    let x2 = -0.5
        * checked_div(
            th(Theta::T0, 0.0) * th(Theta::T3, rinv),
            th(Theta::T0, rinv) * th(Theta::T3, 0.0),
            "gauge x^2",
            at,
        )?;
    let y2 = -checked_div(
        th(Theta::T2, 0.0) * th(Theta::T3, rinv),
        th(Theta::T2, rinv) * th(Theta::T3, 0.0),
        "gauge y^2",
        at,
    )?;
    let sign = |neg: bool| if neg { -1.0 } else { 1.0 };
    let x = sign(signs.x_negative) * x2.sqrt();
    let y = sign(signs.y_negative) * y2.sqrt();
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let z = c(0.0);
    let diag = ComplexMatrix::from_rows(&[[c(1.0), z, z], [z, x, z], [z, z, y]]);
    let h = ComplexMatrix::from_real_rows(&[[s, 0.0, s], [0.0, 1.0, 0.0], [s, 0.0, -s]]);
    let u = &diag * &h;
    let q = &u.transpose() * &u;
    let q_closed = ComplexMatrix::from_rows(&[
        [0.5 * (1.0 + y2), z, 0.5 * (1.0 - y2)],
        [z, x2, z],
        [0.5 * (1.0 - y2), z, 0.5 * (1.0 + y2)],
    ]);
    Ok(GaugePair { x2, y2, u, q, q_closed })
}

/// `R_F(u) = (U⊗U) R^(2,2)(u) (U⊗U)⁻¹`.
pub fn gauge_residual(u: Complex64, ctx: &EllipticContext, signs: SignChoice) -> Result<f64> {
    let g = gauge_pair_with_signs(ctx, signs)?;
    let uu = kron(&g.u, &g.u);
    let conj = tensor::product(&[&uu, &r22(u, ctx)?, &uu.inverse()?]);
    residual(&conj, &fateev_r(u, ctx)?.matrix())
}
