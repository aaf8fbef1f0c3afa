//! Theta functions, Jacobi elliptic functions, q-products and the bracket `[u]`.
//!
//! All theta functions are evaluated from the product form of ϑ₁ in the
//! nome `p̃ = exp(2πiτ)`; ϑ₀, ϑ₂ and ϑ₃ are obtained from ϑ₁ by half-period
//! shifts. Note that ϑ₀ here is the function often written ϑ₄ elsewhere.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Default truncation order of every series and product.
pub const DEFAULT_CUTOFF: usize = 32;
/// Default comparison tolerance carried by a context.
pub const DEFAULT_TOL: f64 = 1e-9;
/// Absolute magnitude below which a denominator counts as a pole.
pub const POLE_EPS: f64 = 1e-12;

/// Adaptive products stop once a correction term drops below this.
const ADAPTIVE_EPS: f64 = 1e-18;
const ADAPTIVE_MAX_TERMS: usize = 100_000;

const I: Complex64 = Complex64::new(0.0, 1.0);

pub(crate) fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// Divide, reporting a pole when the denominator is numerically zero.
pub(crate) fn checked_div(
    num: Complex64,
    den: Complex64,
    what: &'static str,
    at: Complex64,
) -> Result<Complex64> {
    if den.norm() < POLE_EPS {
        return Err(Error::Pole { what, at });
    }
    Ok(num / den)
}

/// Which of the four theta functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Theta {
    T0,
    T1,
    T2,
    T3,
}

impl TryFrom<u8> for Theta {
    type Error = Error;

    fn try_from(k: u8) -> Result<Self> {
        match k {
            0 => Ok(Theta::T0),
            1 => Ok(Theta::T1),
            2 => Ok(Theta::T2),
            3 => Ok(Theta::T3),
            _ => Err(Error::Argument(format!("theta index must be 0..=3, got {k}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Truncation {
    /// Exactly this many factors per product (per index for double products).
    Fixed(usize),
    /// Stop once a factor differs from 1 by less than 1e-18.
    Adaptive,
}

impl Truncation {
    fn terms(self) -> (usize, bool) {
        match self {
            Truncation::Fixed(n) => (n, false),
            Truncation::Adaptive => (ADAPTIVE_MAX_TERMS, true),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JacobiKind {
    Sn,
    Cn,
    Dn,
}

fn check_modulus(tau_m: Complex64) -> Result<()> {
    if !(tau_m.im > 0.0) {
        return Err(Error::Domain(format!(
            "modular parameter must have positive imaginary part, got {tau_m}"
        )));
    }
    Ok(())
}

/// `exp(2πiτ')`, the nome of a modular argument.
pub fn nome(tau_m: Complex64) -> Complex64 {
    (2.0 * PI * I * tau_m).exp()
}

fn theta1_product(u: Complex64, tau_m: Complex64, trunc: Truncation) -> Complex64 {
    let q = nome(tau_m);
    let cos2 = (2.0 * PI * u).cos();
    let (terms, adaptive) = trunc.terms();
    let mut prod = c(1.0);
    let mut qn = c(1.0);
    for _ in 0..terms {
        qn *= q;
        prod *= (1.0 - qn) * (1.0 - 2.0 * qn * cos2 + qn * qn);
        if adaptive && qn.norm() * (1.0 + 2.0 * cos2.norm()) < ADAPTIVE_EPS {
            break;
        }
    }
    // p̃^{1/8} taken as exp(iπτ/4), never through a complex root.
    2.0 * (PI * I * tau_m / 4.0).exp() * (PI * u).sin() * prod
}

fn theta_trunc(k: Theta, u: Complex64, tau_m: Complex64, trunc: Truncation) -> Complex64 {
    match k {
        Theta::T1 => theta1_product(u, tau_m, trunc),
        Theta::T2 => theta1_product(u + 0.5, tau_m, trunc),
        Theta::T0 => {
            let phase = (PI * I * (u + tau_m / 4.0)).exp();
            -I * phase * theta1_product(u + tau_m / 2.0, tau_m, trunc)
        }
        Theta::T3 => {
            let phase = (PI * I * (u + tau_m / 4.0)).exp();
            phase * theta1_product(u + (tau_m + 1.0) / 2.0, tau_m, trunc)
        }
    }
}

/// ϑ_k(u | τ') truncated to `cutoff` product factors.
pub fn theta(k: Theta, u: Complex64, tau_m: Complex64, cutoff: usize) -> Result<Complex64> {
    check_modulus(tau_m)?;
    if cutoff < 1 {
        return Err(Error::Argument("cutoff must be at least 1".into()));
    }
    Ok(theta_trunc(k, u, tau_m, Truncation::Fixed(cutoff)))
}

/// `(a; q)_∞` truncated to `cutoff` factors.
pub fn single_product(a: Complex64, q: Complex64, cutoff: usize) -> Result<Complex64> {
    if q.norm() >= 1.0 {
        return Err(Error::Domain(format!("product base {q} has modulus >= 1")));
    }
    let mut prod = c(1.0);
    let mut qm = c(1.0);
    for _ in 0..cutoff {
        prod *= 1.0 - a * qm;
        qm *= q;
    }
    Ok(prod)
}

/// Double-base product `(a; q1, q2)_∞ = ∏_{m,n≥0} (1 − a q1^m q2^n)` over
/// `0 ≤ m, n < cutoff`.
pub fn triple_product(a: Complex64, q1: Complex64, q2: Complex64, cutoff: usize) -> Result<Complex64> {
    for q in [q1, q2] {
        if q.norm() >= 1.0 {
            return Err(Error::Domain(format!("product base {q} has modulus >= 1")));
        }
    }
    let mut prod = c(1.0);
    let mut q1m = c(1.0);
    for _ in 0..cutoff {
        let mut term = a * q1m;
        for _ in 0..cutoff {
            prod *= 1.0 - term;
            term *= q2;
        }
        q1m *= q1;
    }
    Ok(prod)
}

/// `Θ_q(z) = (z; q)_∞ (q/z; q)_∞ (q; q)_∞`.
pub fn theta_q(z: Complex64, q: Complex64, cutoff: usize) -> Result<Complex64> {
    Ok(single_product(z, q, cutoff)? * single_product(q / z, q, cutoff)? * single_product(q, q, cutoff)?)
}

/// The parameter bundle `(r, τ)` with its derived constants.
///
/// `x = exp(−iπ/(rτ))`, `p = x^{2r} = exp(−2πi/τ)` and
/// `C = x^{−r/4} e^{−iπ/4} τ^{1/2}` (principal root) are computed once from
/// their exponents.
#[derive(Debug, Clone)]
pub struct EllipticContext {
    r: f64,
    tau: Complex64,
    truncation: Truncation,
    tol: f64,
    log_x: Complex64,
    x: Complex64,
    p: Complex64,
    c_const: Complex64,
}

impl EllipticContext {
    pub fn new(r: f64, tau: Complex64) -> Result<Self> {
        if !(r > 2.0) || !r.is_finite() {
            return Err(Error::Domain(format!("r must be a finite real > 2, got {r}")));
        }
        check_modulus(tau)?;
        let log_x = -PI * I / (r * tau);
        let x = log_x.exp();
        let p = (-2.0 * PI * I / tau).exp();
        if nome(tau).norm() >= 1.0 || p.norm() >= 1.0 {
            return Err(Error::Domain(format!("nomes of tau = {tau} are not inside the unit disc")));
        }
        let c_const = (-r / 4.0 * log_x).exp() * (-PI * I / 4.0).exp() * tau.sqrt();
        Ok(Self {
            r,
            tau,
            truncation: Truncation::Fixed(DEFAULT_CUTOFF),
            tol: DEFAULT_TOL,
            log_x,
            x,
            p,
            c_const,
        })
    }

    /// r = 6, τ = 1.2i: all nomes real and small, `[n] > 0` for heights 1..=5.
    pub fn default_regime() -> Self {
        Self::new(6.0, Complex64::new(0.0, 1.2)).expect("default regime is valid")
    }

    pub fn with_cutoff(mut self, cutoff: usize) -> Result<Self> {
        if cutoff < 1 {
            return Err(Error::Argument("cutoff must be at least 1".into()));
        }
        self.truncation = Truncation::Fixed(cutoff);
        Ok(self)
    }

    pub fn adaptive(mut self) -> Self {
        self.truncation = Truncation::Adaptive;
        self
    }

    pub fn with_tol(mut self, tol: f64) -> Result<Self> {
        if !(tol > 0.0) {
            return Err(Error::Argument(format!("tolerance must be positive, got {tol}")));
        }
        self.tol = tol;
        Ok(self)
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn tau(&self) -> Complex64 {
        self.tau
    }

    pub fn truncation(&self) -> Truncation {
        self.truncation
    }

    /// Fixed truncation order (the adaptive mode reports its hard cap).
    pub fn cutoff(&self) -> usize {
        self.truncation.terms().0
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn x(&self) -> Complex64 {
        self.x
    }

    pub fn log_x(&self) -> Complex64 {
        self.log_x
    }

    pub fn p(&self) -> Complex64 {
        self.p
    }

    /// `x^w` through the stored exponent.
    pub fn x_pow(&self, w: Complex64) -> Complex64 {
        (w * self.log_x).exp()
    }

    /// The normalisation constant `C` of `[u] = C ϑ₁(u/r | τ)`.
    pub fn c_const(&self) -> Complex64 {
        self.c_const
    }

    /// ϑ_k(u | τ).
    pub fn theta_tau(&self, k: Theta, u: Complex64) -> Complex64 {
        theta_trunc(k, u, self.tau, self.truncation)
    }

    /// ϑ_k(u | τ/2).
    pub fn theta_half(&self, k: Theta, u: Complex64) -> Complex64 {
        theta_trunc(k, u, self.tau / 2.0, self.truncation)
    }

    /// `[u] = C ϑ₁(u/r | τ)`; vanishes on `rℤ + rτℤ`.
    pub fn bracket(&self, u: Complex64) -> Complex64 {
        self.c_const * self.theta_tau(Theta::T1, u / self.r)
    }

    /// `[u]` through its product form `x^{u²/r − u} Θ_{x^{2r}}(x^{2u})`.
    pub fn bracket_product_form(&self, u: Complex64) -> Complex64 {
        let prefactor = self.x_pow(u * u / self.r - u);
        let z = self.x_pow(2.0 * u);
        let (terms, adaptive) = self.truncation.terms();
        let n = if adaptive { self.adaptive_terms(self.p) } else { terms };
        prefactor * theta_q(z, self.p, n).expect("|p| < 1 checked on construction")
    }

    /// Number of factors needed for `base^n` to fall below the adaptive threshold.
    pub(crate) fn adaptive_terms(&self, base: Complex64) -> usize {
        let m = base.norm();
        if m == 0.0 {
            return 1;
        }
        ((ADAPTIVE_EPS.ln() / m.ln()).ceil() as usize + 1).min(ADAPTIVE_MAX_TERMS)
    }

    /// Number of factors per index used for double-base products.
    pub(crate) fn product_terms(&self, slowest_base: Complex64) -> usize {
        match self.truncation {
            Truncation::Fixed(n) => n,
            Truncation::Adaptive => self.adaptive_terms(slowest_base),
        }
    }
}

/// Jacobi `sn λu`, `cn λu`, `dn λu` as theta ratios at argument `u/r`.
pub fn jacobi(kind: JacobiKind, u: Complex64, ctx: &EllipticContext) -> Result<Complex64> {
    let v = u / ctx.r();
    let zero = c(0.0);
    let den0 = ctx.theta_tau(Theta::T0, v);
    let (num, den) = match kind {
        JacobiKind::Sn => (
            ctx.theta_tau(Theta::T3, zero) * ctx.theta_tau(Theta::T1, v),
            ctx.theta_tau(Theta::T2, zero) * den0,
        ),
        JacobiKind::Cn => (
            ctx.theta_tau(Theta::T0, zero) * ctx.theta_tau(Theta::T2, v),
            ctx.theta_tau(Theta::T2, zero) * den0,
        ),
        JacobiKind::Dn => (
            ctx.theta_tau(Theta::T0, zero) * ctx.theta_tau(Theta::T3, v),
            ctx.theta_tau(Theta::T3, zero) * den0,
        ),
    };
    checked_div(num, den, "jacobi elliptic function", u)
}

pub fn bracket(u: Complex64, ctx: &EllipticContext) -> Complex64 {
    ctx.bracket(u)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> EllipticContext {
        EllipticContext::default_regime()
    }

    fn rel(a: Complex64, b: Complex64) -> f64 {
        (a - b).norm() / a.norm().max(b.norm()).max(1e-300)
    }

    #[test]
    fn theta1_is_odd_and_vanishes_at_origin() {
        let tau = Complex64::new(0.0, 1.2);
        assert!(theta(Theta::T1, c(0.0), tau, 32).unwrap().norm() < 1e-15);
        let u = Complex64::new(0.23, 0.04);
        let a = theta(Theta::T1, u, tau, 32).unwrap();
        let b = theta(Theta::T1, -u, tau, 32).unwrap();
        assert!((a + b).norm() < 1e-15);
    }

    #[test]
    fn theta2_is_shifted_theta1() {
        let tau = Complex64::new(0.0, 1.2);
        let a = theta(Theta::T2, c(0.37), tau, 32).unwrap();
        let b = theta(Theta::T1, c(0.87), tau, 32).unwrap();
        assert!(rel(a, b) < 1e-15);
    }

    #[test]
    fn theta_rejects_bad_arguments() {
        let err = theta(Theta::T1, c(0.1), Complex64::new(0.3, 0.0), 32).unwrap_err();
        assert!(matches!(err, Error::Domain(_)));
        let err = theta(Theta::T1, c(0.1), Complex64::new(0.3, -1.0), 32).unwrap_err();
        assert!(matches!(err, Error::Domain(_)));
        let err = theta(Theta::T1, c(0.1), Complex64::new(0.0, 1.0), 0).unwrap_err();
        assert!(matches!(err, Error::Argument(_)));
        assert!(Theta::try_from(4).is_err());
    }

    #[test]
    fn context_invariants() {
        let ctx = ctx();
        assert!(nome(ctx.tau()).norm() < 1.0 && ctx.p().norm() < 1.0);
        let x2r = ctx.x_pow(c(2.0 * ctx.r()));
        assert!(rel(x2r, ctx.p()) < 10.0 * f64::EPSILON);
        // purely imaginary τ: x, p real in (0,1), C real positive
        for v in [ctx.x(), ctx.p()] {
            assert!(v.im.abs() < 1e-15 && v.re > 0.0 && v.re < 1.0);
        }
        assert!(ctx.c_const().im.abs() < 1e-14 && ctx.c_const().re > 0.0);
        assert!(EllipticContext::new(2.0, Complex64::new(0.0, 1.0)).is_err());
        assert!(EllipticContext::new(6.0, Complex64::new(1.0, 0.0)).is_err());
        assert!(ctx.clone().with_cutoff(0).is_err());
        assert!(ctx.with_tol(0.0).is_err());
    }

    #[test]
    fn jacobi_at_origin() {
        let ctx = ctx();
        assert!(jacobi(JacobiKind::Sn, c(0.0), &ctx).unwrap().norm() < 1e-15);
        assert!(rel(jacobi(JacobiKind::Cn, c(0.0), &ctx).unwrap(), c(1.0)) < 1e-15);
        assert!(rel(jacobi(JacobiKind::Dn, c(0.0), &ctx).unwrap(), c(1.0)) < 1e-15);
    }

    #[test]
    fn jacobi_pythagorean() {
        let ctx = ctx();
        let sn = jacobi(JacobiKind::Sn, c(0.37), &ctx).unwrap();
        let cn = jacobi(JacobiKind::Cn, c(0.37), &ctx).unwrap();
        assert!((sn * sn + cn * cn - 1.0).norm() < ctx.tol());
    }

    #[test]
    fn jacobi_reports_pole() {
        let ctx = ctx();
        // ϑ₀(v|τ) vanishes at v = τ/2, i.e. u = rτ/2
        let u = ctx.r() * ctx.tau() / 2.0;
        assert!(jacobi(JacobiKind::Sn, u, &ctx).unwrap_err().is_pole());
    }

    #[test]
    fn bracket_zeros_and_forms() {
        let ctx = ctx();
        assert!(bracket(c(0.0), &ctx).norm() < 1e-15);
        assert!(bracket(c(ctx.r()), &ctx).norm() < 1e-14);
        let u = c(0.37);
        assert!(rel(ctx.bracket(u), ctx.bracket_product_form(u)) < 1e-10);
    }

    #[test]
    fn products_trivial_cases() {
        let q1 = Complex64::new(0.3, 0.1);
        let q2 = c(0.2);
        assert_eq!(triple_product(c(0.0), q1, q2, 16).unwrap(), c(1.0));
        let a = Complex64::new(0.4, -0.2);
        let collapsed = triple_product(a, q1, c(0.0), 40).unwrap();
        assert!(rel(collapsed, single_product(a, q1, 40).unwrap()) < 1e-15);
        assert!(triple_product(a, c(1.0), q2, 4).is_err());
        assert!(single_product(a, c(-1.5), 4).is_err());
    }

    #[test]
    fn adaptive_matches_fixed() {
        let fixed = ctx();
        let adaptive = ctx().adaptive();
        for u in [c(0.37), Complex64::new(1.3, -0.2)] {
            assert!(rel(fixed.bracket(u), adaptive.bracket(u)) < 1e-14);
            assert!(rel(fixed.bracket_product_form(u), adaptive.bracket_product_form(u)) < 1e-14);
        }
    }
}
