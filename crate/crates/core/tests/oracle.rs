//! Values frozen from a 60-digit evaluation (see `oracle/generate.py`), plus
//! small independent re-derivations written directly in the tests.

use elliptic_fusion::elliptic::{jacobi, theta, triple_product};
use elliptic_fusion::face::FaceModel;
use elliptic_fusion::vertex::r0_scalar;
use elliptic_fusion::{Complex64, EllipticContext, JacobiKind, Theta};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm()
}

const THETA_TABLE: [(u8, Complex64, Complex64, Complex64); 10] = [
    (1, Complex64::new(0.3, 0.0), Complex64::new(0.0, 0.8), Complex64::new(0.86103817205252424568, 0.0)),
    (0, Complex64::new(0.3, 0.0), Complex64::new(0.0, 0.8), Complex64::new(1.0499926949135374994, 0.0)),
    (2, Complex64::new(0.3, 0.0), Complex64::new(0.0, 0.8), Complex64::new(0.62049463303791608015, 0.0)),
    (3, Complex64::new(0.3, 0.0), Complex64::new(0.0, 0.8), Complex64::new(0.94986798513848476643, 0.0)),
    (
        1,
        Complex64::new(0.21, 0.07),
        Complex64::new(0.0, 1.2),
        Complex64::new(0.48878271416639409271, 0.13662899223658431442),
    ),
    (
        0,
        Complex64::new(0.21, 0.07),
        Complex64::new(0.0, 0.6),
        Complex64::new(0.91574135552003050774, 0.13306607261855666099),
    ),
    (
        2,
        Complex64::new(-0.44, 0.03),
        Complex64::new(0.0, 0.6),
        Complex64::new(0.21894825252404491768, 0.10879270705622051183),
    ),
    (
        3,
        Complex64::new(0.13, -0.05),
        Complex64::new(0.0, 1.2),
        Complex64::new(1.0331336436649183711, 0.010734279006467666943),
    ),
    (
        1,
        Complex64::new(0.0625, 0.0),
        Complex64::new(0.1, 0.9),
        Complex64::new(0.19038178424098372293, 0.013852395080860724356),
    ),
    (
        0,
        Complex64::new(0.4, 0.1),
        Complex64::new(-0.2, 1.1),
        Complex64::new(1.0643688309956157295, -0.016017786384071864384),
    ),
];

#[test]
fn theta_matches_high_precision_values() {
    for (k, u, tau, want) in THETA_TABLE {
        let got = theta(Theta::try_from(k).unwrap(), u, tau, 64).unwrap();
        assert!(rel(got, want) < 1e-12, "theta_{k}({u} | {tau}) = {got}, want {want}");
    }
}

#[test]
fn triple_product_matches_high_precision_values() {
    let got = triple_product(c(0.3, 0.0), c(0.1, 0.0), c(0.05, 0.0), 32).unwrap();
    assert!(rel(got, c(0.66489179946594100401, 0.0)) < 1e-13);
    let got = triple_product(c(0.2, 0.1), c(0.0, 0.3), c(-0.25, 0.0), 32).unwrap();
    assert!(rel(got, c(0.86075960885280701732, -0.12243102541121617497)) < 1e-13);
}

#[test]
fn context_functions_match_high_precision_values() {
    let ctx = EllipticContext::default_regime();
    let dn = jacobi(JacobiKind::Dn, c(0.37, 0.05), &ctx).unwrap();
    assert!(rel(dn, c(0.99328871469977660521, -0.0018162828090602762941)) < 1e-12);
    assert!(rel(ctx.bracket(c(0.37, 0.0)), c(0.31577251483433350544, 0.0)) < 1e-10);
    assert!(rel(ctx.bracket(c(1.3, -0.2)), c(1.0386284353663903763, -0.13405645756555268525)) < 1e-10);
    assert!(rel(r0_scalar(c(0.37, 0.0), &ctx).unwrap(), c(1.698598453816232188, 0.0)) < 1e-11);
    let r0 = r0_scalar(c(0.61, 0.04), &ctx).unwrap();
    assert!(rel(r0, c(2.6930919684049183727, 0.26315297848853493098)) < 1e-11);
}

/// ϑ₁ by its Fourier series, a different representation from the library's
/// product.
fn theta1_series(u: Complex64, tau: Complex64) -> Complex64 {
    let pi = std::f64::consts::PI;
    let mut sum = c(0.0, 0.0);
    for n in 0..30 {
        let half = n as f64 + 0.5;
        let q = (c(0.0, pi) * tau * half * half).exp();
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        sum += sign * q * ((2 * n + 1) as f64 * pi * u).sin();
    }
    2.0 * sum
}

#[test]
fn theta_product_matches_fourier_series() {
    let tau = c(0.0, 1.2);
    for u in [c(0.1, 0.0), c(0.37, 0.05), c(-0.8, 0.2), c(1.4, -0.1)] {
        let got = theta(Theta::T1, u, tau, 32).unwrap();
        assert!(rel(got, theta1_series(u, tau)) < 1e-13, "u = {u}");
    }
}

/// Level-1 weight written out branch by branch from the bracket formulas,
/// evaluated for every corner choice without skipping inadmissible ones.
fn face_weight_oracle(ctx: &EllipticContext, a: i32, b: i32, d: i32, cc: i32, u: Complex64) -> Complex64 {
    let adj = |x: i32, y: i32| (x - y).abs() == 1;
    if !(adj(a, b) && adj(a, d) && adj(b, cc) && adj(d, cc)) {
        return c(0.0, 0.0);
    }
    let br = |x: Complex64| ctx.bracket(x);
    let n = c(a as f64, 0.0);
    let r0 = r0_scalar(u, ctx).unwrap();
    let one = c(1.0, 0.0);
    match (b - a, d - a, cc - a) {
        (1, 1, 2) | (-1, -1, -2) => r0,
        (1, 1, 0) => r0 * br(n - u) * br(one) / (br(n) * br(one + u)),
        (-1, -1, 0) => r0 * br(n + u) * br(one) / (br(n) * br(one + u)),
        (1, -1, 0) => r0 * br(n + 1.0) * br(u) / (br(n) * br(one + u)),
        (-1, 1, 0) => r0 * br(n - 1.0) * br(u) / (br(n) * br(one + u)),
        other => panic!("unexpected square {other:?}"),
    }
}

#[test]
fn w21_matches_direct_enumeration() {
    let ctx = EllipticContext::default_regime();
    let model = FaceModel::new(ctx.clone());
    let u = c(0.37, 0.0);
    let (a, b, d, cc) = (3, 5, 4, 6);
    let ap = 4;
    let mut want = c(0.0, 0.0);
    for dp in [d - 1, d + 1] {
        want += face_weight_oracle(&ctx, a, ap, d, dp, u + 1.0) * face_weight_oracle(&ctx, ap, b, dp, cc, u);
    }
    let got = model.w21(a, b, d, cc, u, None).unwrap();
    assert!(rel(got, want) < 1e-13, "{got} vs {want}");
}

#[test]
fn level_one_weights_match_oracle() {
    let ctx = EllipticContext::default_regime();
    let model = FaceModel::new(ctx.clone());
    let u = c(0.23, -0.04);
    for a in 2..=4 {
        for b in [a - 1, a + 1] {
            for d in [a - 1, a + 1] {
                for cc in a - 2..=a + 2 {
                    let got = model.w(a, b, d, cc, u).unwrap();
                    let want = face_weight_oracle(&ctx, a, b, d, cc, u);
                    assert!((got - want).norm() < 1e-13, "W({a} {b}; {d} {cc})");
                }
            }
        }
    }
}
