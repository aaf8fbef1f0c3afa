//! SOS face weights `W`, their fusions `W₂₁`, `W₂₂`, and the crossing
//! factors `g_a`, `(a,b)_M`.
//!
//! A square is written `W(a b; d c | u)` with `a` north-west, `b`
//! north-east, `d` south-west and `c` south-east. Heights are integers; a
//! real dynamical shift `ξ` (default 0) is added wherever a height enters a
//! bracket, so weights can be probed away from the integer lattice where
//! some fused weights pass through `[0]`.

use num_complex::Complex64;

use crate::elliptic::{c, checked_div, EllipticContext};
use crate::error::{Error, Result};
use crate::tensor::{residual, ComplexMatrix};
use crate::vertex::r0_scalar;

pub type Height = i32;

/// Below this `|[1+u]|` the weights switch to the regular form at `u = −1`.
const REMOVABLE_EPS: f64 = 1e-6;

/// Fusion level of a face weight.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Level {
    One,
    TwoOne,
    TwoTwo,
}

/// A height square with its spectral parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FaceWeightQuery {
    pub a: Height,
    pub b: Height,
    pub d: Height,
    pub c: Height,
    pub u: Complex64,
    pub level: Level,
}

impl FaceWeightQuery {
    pub fn admissible(&self) -> bool {
        let unit = |x: Height, y: Height| (x - y).abs() == 1;
        let ext = |x: Height, y: Height| matches!(x - y, -2 | 0 | 2);
        let (a, b, d, c) = (self.a, self.b, self.d, self.c);
        match self.level {
            Level::One => unit(a, b) && unit(a, d) && unit(b, c) && unit(d, c),
            Level::TwoOne => ext(a, b) && ext(d, c) && unit(a, d) && unit(b, c),
            Level::TwoTwo => ext(a, b) && ext(a, d) && ext(b, c) && ext(d, c),
        }
    }
}

/// `|x − y| ∈ {0, 2}`.
pub fn extended_adjacent(x: Height, y: Height) -> bool {
    matches!(x - y, -2 | 0 | 2)
}

fn unit_adjacent(x: Height, y: Height) -> bool {
    (x - y).abs() == 1
}

#[derive(Debug, Clone)]
pub struct FaceModel {
    ctx: EllipticContext,
    shift: f64,
}

impl FaceModel {
    pub fn new(ctx: EllipticContext) -> Self {
        Self { ctx, shift: 0.0 }
    }

    pub fn with_shift(mut self, shift: f64) -> Self {
        self.shift = shift;
        self
    }

    pub fn ctx(&self) -> &EllipticContext {
        &self.ctx
    }

    pub fn shift(&self) -> f64 {
        self.shift
    }

    /// The effective (shifted) value of a height.
    pub fn height(&self, a: Height) -> f64 {
        a as f64 + self.shift
    }

    fn br(&self, u: Complex64) -> Complex64 {
        self.ctx.bracket(u)
    }

    /// `[a + ξ]`.
    pub fn height_bracket(&self, a: Height) -> Complex64 {
        self.br(c(self.height(a)))
    }

    /// The level-1 weight; zero for non-admissible squares.
    pub fn w(&self, a: Height, b: Height, d: Height, cc: Height, u: Complex64) -> Result<Complex64> {
        if !(unit_adjacent(a, b) && unit_adjacent(a, d) && unit_adjacent(b, cc) && unit_adjacent(d, cc)) {
            return Ok(c(0.0));
        }
        if b == d && cc != a {
            return r0_scalar(u, &self.ctx);
        }
        let n = c(self.height(a));
        let s = (b - a) as f64;
        let num = if b == d { self.br(n - s * u) * self.br(c(1.0)) } else { self.br(n + s) * self.br(u) };
        Ok(self.r0_over_bracket(u)? * checked_div(num, self.br(n), "face weight", u)?)
    }

    /// `R₀(u)/[1+u]`. Both vanish at `u = −1`; near there the equivalent
    /// `−1/([u] R₀(u+1))` is used, which is regular.
    fn r0_over_bracket(&self, u: Complex64) -> Result<Complex64> {
        let den = self.br(1.0 + u);
        if den.norm() > REMOVABLE_EPS {
            return Ok(r0_scalar(u, &self.ctx)? / den);
        }
        checked_div(c(-1.0), self.br(u) * r0_scalar(u + 1.0, &self.ctx)?, "face weight", u)
    }

    /// `W₂₁(a b; d c | u) = Σ_{d'} W(a a'; d d' | u+1) W(a' b; d' c | u)`.
    ///
    /// Without `aprime` the first valid intermediate height is used.
    pub fn w21(
        &self,
        a: Height,
        b: Height,
        d: Height,
        cc: Height,
        u: Complex64,
        aprime: Option<Height>,
    ) -> Result<Complex64> {
        let ap = match aprime {
            Some(ap) if unit_adjacent(a, ap) && unit_adjacent(ap, b) => ap,
            Some(ap) => {
                return Err(Error::Admissibility(format!("a' = {ap} is not adjacent to both {a} and {b}")))
            }
            None => [a + 1, a - 1].into_iter().find(|&h| unit_adjacent(h, b)).ok_or_else(|| {
                Error::Admissibility(format!("no intermediate height between {a} and {b}"))
            })?,
        };
        let mut sum = c(0.0);
        for dp in [d - 1, d + 1] {
            sum += self.w(a, ap, d, dp, u + 1.0)? * self.w(ap, b, dp, cc, u)?;
        }
        Ok(sum)
    }

    /// `W₂₂(a b; d c | u) = Σ_{a'} W₂₁(a b; a' b' | u−1) W₂₁(a' b'; d c | u)`.
    pub fn w22(
        &self,
        a: Height,
        b: Height,
        d: Height,
        cc: Height,
        u: Complex64,
        bprime: Option<Height>,
    ) -> Result<Complex64> {
        let bp = match bprime {
            Some(bp) if unit_adjacent(b, bp) && unit_adjacent(bp, cc) => bp,
            Some(bp) => {
                return Err(Error::Admissibility(format!("b' = {bp} is not adjacent to both {b} and {cc}")))
            }
            None => [b + 1, b - 1].into_iter().find(|&h| unit_adjacent(h, cc)).ok_or_else(|| {
                Error::Admissibility(format!("no intermediate height between {b} and {cc}"))
            })?,
        };
        let mut sum = c(0.0);
        // a' with |a' − b'| = 4 would need W₂₁ of a non-admissible square
        for ap in [a - 1, a + 1].into_iter().filter(|&ap| extended_adjacent(ap, bp)) {
            sum += self.w21(a, b, ap, bp, u - 1.0, None)? * self.w21(ap, bp, d, cc, u, None)?;
        }
        Ok(sum)
    }

    pub fn weight(&self, q: &FaceWeightQuery) -> Result<Complex64> {
        match q.level {
            Level::One => self.w(q.a, q.b, q.d, q.c, q.u),
            Level::TwoOne => self.w21(q.a, q.b, q.d, q.c, q.u, None),
            Level::TwoTwo => self.w22(q.a, q.b, q.d, q.c, q.u, None),
        }
    }

    fn require_positive_height(&self, a: Height) -> Result<()> {
        let h = self.height(a);
        if !(h > 0.0 && h < self.ctx.r()) {
            return Err(Error::Domain(format!("height {h} outside (0, {})", self.ctx.r())));
        }
        Ok(())
    }

    /// `g_a = ε_a √[a]`.
    pub fn g(&self, a: Height) -> Result<Complex64> {
        self.require_positive_height(a)?;
        Ok(epsilon(a) as f64 * self.height_bracket(a).sqrt())
    }

    /// `[A; B] = [A][A−1]⋯[A−B+1] / [B][B−1]⋯[1]` (plain integer arguments).
    pub fn qbinomial(&self, big_a: Height, big_b: Height) -> Result<Complex64> {
        if big_b < 0 {
            return Err(Error::Argument(format!("q-binomial lower index {big_b} is negative")));
        }
        let mut num = c(1.0);
        let mut den = c(1.0);
        for k in 0..big_b {
            num *= self.br(c((big_a - k) as f64));
            den *= self.br(c((k + 1) as f64));
        }
        checked_div(num, den, "q-binomial", c(big_a as f64))
    }

    /// `[A, B] = [A][A+1]⋯[B]` over shifted heights; empty (=1) when `B < A`.
    pub fn bracket_product(&self, big_a: Height, big_b: Height) -> Complex64 {
        (big_a..=big_b).map(|k| self.height_bracket(k)).product::<Complex64>()
    }

    /// `(a,b)_M = [(a+b−M)/2, (a+b+M)/2] / ([M; (a−b+M)/2] √([a][b]))`.
    pub fn pairing(&self, a: Height, b: Height, m: Height) -> Result<Complex64> {
        let k2 = a - b + m;
        if k2 % 2 != 0 || k2 < 0 || k2 > 2 * m {
            return Err(Error::Argument(format!("({a},{b})_{m}: (a-b+M)/2 must be an integer in 0..=M")));
        }
        if (a + b - m) % 2 != 0 {
            return Err(Error::Argument(format!("({a},{b})_{m}: a+b-M must be even")));
        }
        self.require_positive_height(a)?;
        self.require_positive_height(b)?;
        let lo = (a + b - m) / 2;
        if lo < 1 {
            return Err(Error::Domain(format!("({a},{b})_{m}: product starts at non-positive height {lo}")));
        }
        let hi = (a + b + m) / 2;
        let den = self.qbinomial(m, k2 / 2)? * (self.height_bracket(a) * self.height_bracket(b)).sqrt();
        checked_div(self.bracket_product(lo, hi), den, "height pairing", c(a as f64))
    }

    /// `Σ_s W₂₂(a s; d c | −u) W₂₂(a b; s c | u) = δ_{bd}`, worst over the
    /// admissible `b`, `d` for fixed corners `a`, `c`.
    pub fn w22_unitarity_residual(&self, a: Height, cc: Height, u: Complex64) -> Result<f64> {
        let mids: Vec<Height> = [a - 2, a, a + 2].into_iter().filter(|&h| extended_adjacent(h, cc)).collect();
        let n = mids.len();
        let mut lhs = ComplexMatrix::zeros(n, n);
        for (i, &b) in mids.iter().enumerate() {
            for (j, &d) in mids.iter().enumerate() {
                let mut sum = c(0.0);
                for &s in &mids {
                    sum += self.w22(a, s, d, cc, -u, None)? * self.w22(a, b, s, cc, u, None)?;
                }
                lhs[(i, j)] = sum;
            }
        }
        residual(&lhs, &ComplexMatrix::identity(n))
    }

    /// `W₂₂(d c; a b | u) = (b,c)₂ g_a g_c / ((a,d)₂ g_b g_d) · W₂₂(a d; b c | −1−u)`.
    pub fn w22_crossing_residual(&self, a: Height, b: Height, d: Height, cc: Height, u: Complex64) -> Result<f64> {
        let lhs = self.w22(d, cc, a, b, u, None)?;
        let factor = checked_div(
            self.pairing(b, cc, 2)? * self.g(a)? * self.g(cc)?,
            self.pairing(a, d, 2)? * self.g(b)? * self.g(d)?,
            "crossing factor",
            u,
        )?;
        let rhs = factor * self.w22(a, d, b, cc, -1.0 - u, None)?;
        Ok(crate::tensor::residual_scalar(lhs, rhs))
    }

    /// Face Yang-Baxter equation `X₁(u) X₂(u+v) X₁(v) = X₂(v) X₁(u+v) X₂(u)`
    /// on paths `(a₀, a₁, a₂, a₃)` with fixed ends, where `X_j(w)` replaces
    /// the height `a_j` through the face weight at level `level`.
    pub fn ybe_residual(&self, level: Level, a0: Height, a3: Height, u: Complex64, v: Complex64) -> Result<f64> {
        let steps: &[Height] = match level {
            Level::One => &[1, -1],
            Level::TwoTwo => &[2, 0, -2],
            Level::TwoOne => return Err(Error::Argument("face YBE is defined for square weights only".into())),
        };
        let mut paths = Vec::new();
        for s1 in steps {
            for s2 in steps {
                let (a1, a2) = (a0 + s1, a0 + s1 + s2);
                if steps.contains(&(a3 - a2)) {
                    paths.push([a0, a1, a2, a3]);
                }
            }
        }
        if paths.is_empty() {
            return Err(Error::Admissibility(format!("no paths from {a0} to {a3}")));
        }
        let weight = |a: Height, b: Height, d: Height, cc: Height, w: Complex64| match level {
            Level::One => self.w(a, b, d, cc, w),
            _ => self.w22(a, b, d, cc, w, None),
        };
        let x = |j: usize, w: Complex64| -> Result<ComplexMatrix> {
            let n = paths.len();
            let mut m = ComplexMatrix::zeros(n, n);
            for (i, p) in paths.iter().enumerate() {
                for (k, q) in paths.iter().enumerate() {
                    if (0..4).any(|t| t != j && p[t] != q[t]) {
                        continue;
                    }
                    m[(k, i)] = weight(p[j - 1], p[j], q[j], p[j + 1], w)?;
                }
            }
            Ok(m)
        };
        let lhs = crate::tensor::product(&[&x(1, u)?, &x(2, u + v)?, &x(1, v)?]);
        let rhs = crate::tensor::product(&[&x(2, v)?, &x(1, u + v)?, &x(2, u)?]);
        residual(&lhs, &rhs)
    }
}

/// `ε_a = (−1)^{⌊a/2⌋}`, one solution of `ε_a ε_{a+1} = (−1)^a`.
pub fn epsilon(a: Height) -> i32 {
    if a.div_euclid(2).rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// All level-2 extended-admissible squares with heights in `range`.
pub fn extended_squares(range: std::ops::RangeInclusive<Height>) -> Vec<[Height; 4]> {
    let mut out = Vec::new();
    for a in range.clone() {
        for b in range.clone() {
            for d in range.clone() {
                for cc in range.clone() {
                    if extended_adjacent(a, b)
                        && extended_adjacent(a, d)
                        && extended_adjacent(b, cc)
                        && extended_adjacent(d, cc)
                    {
                        out.push([a, b, d, cc]);
                    }
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn model() -> FaceModel {
        FaceModel::new(EllipticContext::default_regime())
    }

    fn z(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn level_one_special_values() {
        let m = model();
        let u = z(0.37, 0.02);
        let r0 = r0_scalar(u, m.ctx()).unwrap();
        assert!((m.w(2, 3, 3, 4, u).unwrap() - r0).norm() < 1e-15);
        assert_eq!(m.w(3, 5, 4, 4, u).unwrap(), c(0.0));
        for (a, b, d, cc) in [(3, 4, 4, 3), (3, 2, 2, 3), (3, 4, 4, 5), (3, 4, 2, 3), (3, 2, 4, 3)] {
            let w0 = m.w(a, b, d, cc, c(0.0)).unwrap();
            let expect = if b == d { 1.0 } else { 0.0 };
            assert!((w0 - expect).norm() < 1e-12, "{a}{b}{d}{cc}: {w0}");
        }
    }

    #[test]
    fn w21_choice_and_vanishing() {
        let m = model();
        let u = c(0.37);
        let x = m.w21(3, 3, 4, 4, u, Some(2)).unwrap();
        let y = m.w21(3, 3, 4, 4, u, Some(4)).unwrap();
        assert!(crate::tensor::residual_scalar(x, y) < 1e-10);
        assert!(m.w21(3, 3, 4, 4, u, Some(5)).is_err());
        assert!(m.w21(3, 7, 4, 6, u, None).is_err());
        assert!(m.w21(3, 5, 4, 6, c(-1.0), None).unwrap().norm() < 1e-12);
    }

    #[test]
    fn w22_choice_unitarity_crossing() {
        let m = model();
        let u = z(0.37, 0.03);
        let x = m.w22(3, 3, 3, 3, u, Some(2)).unwrap();
        let y = m.w22(3, 3, 3, 3, u, Some(4)).unwrap();
        assert!(crate::tensor::residual_scalar(x, y) < 1e-10);
        assert!(m.w22_unitarity_residual(3, 3, u).unwrap() < 1e-8);
        assert!(m.w22_crossing_residual(3, 3, 3, 3, u).unwrap() < 1e-8);
        assert!(m.w22_crossing_residual(3, 5, 3, 3, u).unwrap() < 1e-8);
    }

    #[test]
    fn face_ybe_levels() {
        let (u, v) = (z(0.37, 0.03), z(0.11, -0.02));
        let m = model();
        assert!(m.ybe_residual(Level::One, 3, 4, u, v).unwrap() < 1e-9);
        let shifted = model().with_shift(0.5);
        assert!(shifted.ybe_residual(Level::TwoTwo, 3, 3, u, v).unwrap() < 1e-8);
        assert!(m.ybe_residual(Level::TwoOne, 3, 3, u, v).is_err());
    }

    #[test]
    fn integer_heights_hit_the_zero_bracket() {
        // the a' = 0 intermediate needs [0] in a denominator
        let m = model();
        assert!(m.w22(1, 1, 1, 1, c(0.37), None).unwrap_err().is_pole());
    }

    #[test]
    fn epsilon_sequence() {
        let seq: Vec<i32> = (1..=5).map(epsilon).collect();
        assert_eq!(seq, vec![1, -1, -1, 1, 1]);
        for a in 1..5 {
            assert_eq!(epsilon(a) * epsilon(a + 1), if a % 2 == 0 { 1 } else { -1 });
        }
    }

    #[test]
    fn pairing_and_products() {
        let m = model();
        assert_eq!(m.bracket_product(4, 3), c(1.0));
        assert!(m.pairing(3, 4, 2).is_err());
        assert!(m.pairing(0, 2, 2).is_err());
        assert!(m.g(6).is_err());
        // (n,n)_2 = [n−1][n][n+1] / ([2;1] [n]) = [n−1][n+1][1] / [2]
        let n = 3;
        let br = |x: f64| m.ctx().bracket(c(x));
        let want = br(2.0) * br(4.0) * br(1.0) / br(2.0);
        let got = m.pairing(n, n, 2).unwrap();
        assert!(crate::tensor::residual_scalar(got, want) < 1e-14, "{got} vs {want}");
    }

    #[test]
    fn query_admissibility() {
        let q = FaceWeightQuery { a: 3, b: 5, d: 3, c: 3, u: c(0.3), level: Level::TwoTwo };
        assert!(q.admissible());
        assert!(!FaceWeightQuery { level: Level::One, ..q }.admissible());
        assert_eq!(extended_squares(3..=3).len(), 1);
    }

    proptest! {
        #[test]
        fn epsilon_constraint(a in -50i32..50) {
            let sign = if a.rem_euclid(2) == 0 { 1 } else { -1 };
            prop_assert_eq!(epsilon(a) * epsilon(a + 1), sign);
        }

        #[test]
        fn pairing_symmetric(a in 1i32..6, b in 1i32..6, m in 0i32..3) {
            let model = model();
            if let (Ok(x), Ok(y)) = (model.pairing(a, b, m), model.pairing(b, a, m)) {
                prop_assert_eq!(x, y);
            }
        }
    }
}
