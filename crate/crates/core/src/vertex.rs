//! Baxter's eight-vertex R-matrix on `V⊗V`.

use num_complex::Complex64;

use crate::elliptic::{c, checked_div, triple_product, EllipticContext, Theta};
use crate::error::Result;
use crate::tensor::{self, flip, kron, partial_transpose_first, residual, sigma_y, ComplexMatrix};

/// The scalar factor `R₀(u)`:
///
/// ```text
/// z^{-(r-1)/(2r)} (px²z; x⁴,p)(x²z; x⁴,p)(p/z; x⁴,p)(x⁴/z; x⁴,p)
///               / (px²/z; x⁴,p)(x²/z; x⁴,p)(pz; x⁴,p)(x⁴z; x⁴,p)
/// ```
///
/// with `z = x^{2u}`. Every power of `x` goes through `log x = −iπ/(rτ)`.
pub fn r0_scalar(u: Complex64, ctx: &EllipticContext) -> Result<Complex64> {
    let lx = ctx.log_x();
    let z = (2.0 * u * lx).exp();
    let zi = (-2.0 * u * lx).exp();
    let (x2, x4, p) = (ctx.x_pow(c(2.0)), ctx.x_pow(c(4.0)), ctx.p());
    let n = ctx.product_terms(if x4.norm() > p.norm() { x4 } else { p });
    let tp = |a: Complex64| triple_product(a, x4, p, n);
    let num = tp(p * x2 * z)? * tp(x2 * z)? * tp(p * zi)? * tp(x4 * zi)?;
    let den = tp(p * x2 * zi)? * tp(x2 * zi)? * tp(p * z)? * tp(x4 * z)?;
    let prefactor = (-(ctx.r() - 1.0) / (2.0 * ctx.r()) * 2.0 * u * lx).exp();
    Ok(prefactor * checked_div(num, den, "R0 scalar factor", u)?)
}

/// The four Boltzmann weights of the eight-vertex model, without `R₀`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BaxterWeights {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
    pub d: Complex64,
}

pub fn baxter_weights(u: Complex64, ctx: &EllipticContext) -> Result<BaxterWeights> {
    let r2 = 2.0 * ctx.r();
    let t = |k, arg: Complex64| ctx.theta_half(k, arg);
    let one = c(1.0 / r2);
    let arg = u / r2;
    let shifted = (u + 1.0) / r2;
    let t20 = t(Theta::T2, c(0.0));
    let den2 = t20 * t(Theta::T2, shifted);
    let den1 = t20 * t(Theta::T1, shifted);
    Ok(BaxterWeights {
        a: checked_div(t(Theta::T2, one) * t(Theta::T2, arg), den2, "Baxter weight a", u)?,
        b: checked_div(t(Theta::T2, one) * t(Theta::T1, arg), den1, "Baxter weight b", u)?,
        c: checked_div(t(Theta::T1, one) * t(Theta::T2, arg), den1, "Baxter weight c", u)?,
        d: checked_div(-t(Theta::T1, one) * t(Theta::T1, arg), den2, "Baxter weight d", u)?,
    })
}

/// `R(u)` in the basis `(++, +−, −+, −−)`, together with its scalar factor.
#[derive(Debug, Clone)]
pub struct RMatrix4 {
    u: Complex64,
    r0: Complex64,
    weights: BaxterWeights,
    matrix: ComplexMatrix,
}

impl RMatrix4 {
    pub fn u(&self) -> Complex64 {
        self.u
    }

    pub fn r0(&self) -> Complex64 {
        self.r0
    }

    pub fn weights(&self) -> BaxterWeights {
        self.weights
    }

    /// `R₀(u)` times the weight matrix.
    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    /// The weight matrix alone.
    pub fn unnormalized(&self) -> ComplexMatrix {
        weight_matrix(&self.weights)
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }
}

fn weight_matrix(w: &BaxterWeights) -> ComplexMatrix {
    let z = c(0.0);
    ComplexMatrix::from_rows(&[[w.a, z, z, w.d], [z, w.b, w.c, z], [z, w.c, w.b, z], [w.d, z, z, w.a]])
}

pub fn baxter_r(u: Complex64, ctx: &EllipticContext) -> Result<RMatrix4> {
    let weights = baxter_weights(u, ctx)?;
    let r0 = r0_scalar(u, ctx)?;
    let matrix = weight_matrix(&weights).scale(r0);
    Ok(RMatrix4 { u, r0, weights, matrix })
}

fn r(u: Complex64, ctx: &EllipticContext) -> Result<ComplexMatrix> {
    Ok(baxter_r(u, ctx)?.into_matrix())
}

/// `R(u) P R(−u) P = id`.
pub fn unitarity_residual(u: Complex64, ctx: &EllipticContext) -> Result<f64> {
    let p = flip(2);
    let lhs = tensor::product(&[&r(u, ctx)?, &p, &r(-u, ctx)?, &p]);
    residual(&lhs, &ComplexMatrix::identity(4))
}

/// The same product with `R(u)` in both slots. This does not hold for
/// generic `u`; kept to document the sign of the spectral argument.
pub fn unitarity_same_argument_residual(u: Complex64, ctx: &EllipticContext) -> Result<f64> {
    let p = flip(2);
    let ru = r(u, ctx)?;
    residual(&tensor::product(&[&ru, &p, &ru, &p]), &ComplexMatrix::identity(4))
}

/// `R(−u−1) = −(σʸ⊗1)⁻¹ (P R(u) P)^{t₁} (σʸ⊗1)`.
pub fn crossing_residual(u: Complex64, ctx: &EllipticContext) -> Result<f64> {
    crossing_residual_with_sign(u, ctx, -1.0)
}

/// Crossing with a chosen overall sign; `+1` is the unsigned form.
pub fn crossing_residual_with_sign(u: Complex64, ctx: &EllipticContext, sign: f64) -> Result<f64> {
    let p = flip(2);
    let s = kron(&sigma_y(), &ComplexMatrix::identity(2));
    let s_inv = s.inverse()?;
    let pt = partial_transpose_first(&tensor::product(&[&p, &r(u, ctx)?, &p]), 2, 2)?;
    let rhs = tensor::product(&[&s_inv, &pt, &s]).scale(c(sign));
    residual(&r(-u - 1.0, ctx)?, &rhs)
}

/// `R(0) = P`.
pub fn initial_residual(ctx: &EllipticContext) -> Result<f64> {
    residual(&r(c(0.0), ctx)?, &flip(2))
}

/// `R(−1+δ)` against `P − id`; the error is first order in `δ`.
pub fn limit_residual(delta: f64, ctx: &EllipticContext) -> Result<f64> {
    let target = &flip(2) - &ComplexMatrix::identity(4);
    residual(&r(c(-1.0 + delta), ctx)?, &target)
}

/// `R₁₂(u−v) R₁₃(u) R₂₃(v) = R₂₃(v) R₁₃(u) R₁₂(u−v)`.
pub fn ybe_residual(u: Complex64, v: Complex64, ctx: &EllipticContext) -> Result<f64> {
    tensor::ybe_residual(&r(u - v, ctx)?, &r(u, ctx)?, &r(v, ctx)?, 2)
}

pub fn symmetry_residual(u: Complex64, ctx: &EllipticContext) -> Result<f64> {
    let m = r(u, ctx)?;
    residual(&m, &m.transpose())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> EllipticContext {
        EllipticContext::default_regime()
    }

    fn z(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn r0_at_origin_is_one() {
        assert!((r0_scalar(c(0.0), &ctx()).unwrap() - 1.0).norm() < 1e-15);
    }

    #[test]
    fn r0_shift_relation() {
        let ctx = ctx();
        let u = c(0.37);
        let lhs = r0_scalar(u, &ctx).unwrap() * r0_scalar(u + 1.0, &ctx).unwrap();
        let rhs = -ctx.bracket(u + 1.0) / ctx.bracket(u);
        assert!(tensor::residual_scalar(lhs, rhs) < 1e-9);
    }

    #[test]
    fn initial_and_limit() {
        let ctx = ctx();
        assert!(initial_residual(&ctx).unwrap() < 1e-12);
        assert!(limit_residual(1e-6, &ctx).unwrap() < 1e-4);
    }

    #[test]
    fn unitarity_and_crossing() {
        let ctx = ctx();
        for u in [c(0.37), z(0.61, 0.04), z(0.2, -0.08)] {
            assert!(unitarity_residual(u, &ctx).unwrap() < 1e-9);
            assert!(crossing_residual(u, &ctx).unwrap() < 1e-9);
            assert!(symmetry_residual(u, &ctx).unwrap() < 1e-12);
        }
    }

    #[test]
    fn literal_forms_do_not_hold() {
        let ctx = ctx();
        let u = c(0.37);
        assert!(unitarity_same_argument_residual(u, &ctx).unwrap() > 1e-3);
        assert!(crossing_residual_with_sign(u, &ctx, 1.0).unwrap() > 1e-3);
    }

    #[test]
    fn vertex_ybe() {
        let ctx = ctx();
        assert!(ybe_residual(z(0.37, 0.03), z(0.11, -0.02), &ctx).unwrap() < 1e-8);
    }

    #[test]
    fn sparsity_pattern() {
        let m = baxter_r(z(0.3, 0.05), &ctx()).unwrap();
        for (i, j) in [(0, 1), (0, 2), (1, 0), (1, 3), (2, 0), (2, 3), (3, 1), (3, 2)] {
            assert_eq!(m.matrix()[(i, j)], c(0.0));
        }
        let w = m.weights();
        assert!((m.matrix()[(0, 3)] - m.r0() * w.d).norm() < 1e-15);
        assert_eq!(m.unnormalized()[(1, 2)], w.c);
    }

    #[test]
    fn pole_of_weights() {
        // ϑ₁((1+u)/(2r) | τ/2) vanishes at u = −1
        let err = baxter_weights(c(-1.0), &ctx()).unwrap_err();
        assert!(err.is_pole());
    }
}
