use elliptic_fusion::elliptic::{jacobi, nome, theta};
use elliptic_fusion::face::FaceModel;
use elliptic_fusion::fusion::{self, Method};
use elliptic_fusion::intertwiner;
use elliptic_fusion::tensor::residual_scalar;
use elliptic_fusion::vertex;
use elliptic_fusion::{Complex64, EllipticContext, JacobiKind, Theta};
use proptest::prelude::*;

fn ctx() -> EllipticContext {
    EllipticContext::default_regime()
}

/// Spectral parameters in the window used by the harness.
fn spectral() -> impl Strategy<Value = Complex64> {
    (0.05f64..0.95, -0.1f64..0.1).prop_map(|(re, im)| Complex64::new(re, im))
}

fn anywhere() -> impl Strategy<Value = Complex64> {
    (-2.0f64..2.0, -0.3f64..0.3).prop_map(|(re, im)| Complex64::new(re, im))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn theta1_antiperiodic(u in anywhere()) {
        let tau = Complex64::new(0.0, 1.2);
        let a = theta(Theta::T1, u + 1.0, tau, 32).unwrap();
        let b = theta(Theta::T1, u, tau, 32).unwrap();
        prop_assert!((a + b).norm() / b.norm().max(1e-300) < 1e-10);
    }

    #[test]
    fn duplication(u in anywhere()) {
        let ctx = ctx();
        let r = ctx.r();
        let lhs = ctx.theta_half(Theta::T1, u / (2.0 * r)) * ctx.theta_half(Theta::T2, u / (2.0 * r));
        let rhs = ctx.theta_tau(Theta::T0, Complex64::new(0.0, 0.0)) * ctx.theta_tau(Theta::T1, u / r);
        prop_assert!((lhs - rhs).norm() / rhs.norm().max(1e-300) < 1e-10);
    }

    #[test]
    fn bracket_forms_agree(u in anywhere()) {
        let ctx = ctx();
        let a = ctx.bracket(u);
        let b = ctx.bracket_product_form(u);
        prop_assert!((a - b).norm() / a.norm().max(1e-300) < 1e-10);
    }

    #[test]
    fn doubling_cutoff_is_below_truncation_bound(u in anywhere(), k in 0u8..4, n in 4usize..12) {
        let tau = Complex64::new(0.0, 0.6);
        let k = Theta::try_from(k).unwrap();
        let a = theta(k, u, tau, n).unwrap();
        let b = theta(k, u, tau, 2 * n).unwrap();
        let bound = nome(tau).norm().powi(n as i32);
        prop_assert!((a - b).norm() / b.norm() < bound);
    }

    #[test]
    fn jacobi_parity_and_pythagoras(u in spectral()) {
        let ctx = ctx();
        let sn = |v| jacobi(JacobiKind::Sn, v, &ctx).unwrap();
        let cn = |v| jacobi(JacobiKind::Cn, v, &ctx).unwrap();
        let dn = |v| jacobi(JacobiKind::Dn, v, &ctx).unwrap();
        prop_assert!((sn(u) + sn(-u)).norm() < 1e-13);
        prop_assert!((cn(u) - cn(-u)).norm() < 1e-13);
        prop_assert!((dn(u) - dn(-u)).norm() < 1e-13);
        prop_assert!((sn(u) * sn(u) + cn(u) * cn(u) - 1.0).norm() < 1e-9);
    }

    #[test]
    fn baxter_unitarity_crossing_symmetry(u in spectral()) {
        let ctx = ctx();
        prop_assert!(vertex::unitarity_residual(u, &ctx).unwrap() < 1e-9);
        prop_assert!(vertex::crossing_residual(u, &ctx).unwrap() < 1e-9);
        prop_assert!(vertex::symmetry_residual(u, &ctx).unwrap() < 1e-12);
    }

    #[test]
    fn fused_constructions_agree(u in spectral()) {
        let ctx = ctx();
        prop_assert!(fusion::fuse21_agreement_residual(u, &ctx).unwrap() < 1e-9);
        prop_assert!(fusion::fuse22_agreement_residual(u, &ctx).unwrap() < 1e-9);
        let m = fusion::fuse22(u, &ctx, Method::ByDefinition).unwrap().matrix;
        prop_assert!(fusion::p_invariance_residual(&m).unwrap() < 1e-12);
        prop_assert!(fusion::z2_residual(&m).unwrap() < 1e-12);
    }

    #[test]
    fn gauge_equivalence(u in spectral()) {
        let ctx = ctx();
        prop_assert!(fusion::gauge_residual(u, &ctx, fusion::SignChoice::PRINCIPAL).unwrap() < 1e-9);
        prop_assert!(fusion::crossing22_residual(u, &ctx).unwrap() < 1e-8);
    }

    #[test]
    fn ftilde_equations(u in spectral()) {
        let ctx = ctx();
        prop_assert!(fusion::ftilde_reflection_residual(u, &ctx).unwrap() < 1e-9);
        prop_assert!(fusion::ftilde_product_residual(u, &ctx).unwrap() < 1e-9);
    }

    #[test]
    fn inversion_relations(u in spectral(), b in 2i32..5) {
        let model = FaceModel::new(ctx());
        prop_assert!(intertwiner::inversion_a_residual(&model, u, b).unwrap() < 1e-9);
        prop_assert!(intertwiner::inversion_b_residual(&model, u, b).unwrap() < 1e-9);
    }

    #[test]
    fn fused_intertwiner_closed_forms(u in spectral(), block in 0usize..3) {
        let model = FaceModel::new(ctx());
        let (a, b) = [(3, 5), (3, 3), (3, 1)][block];
        let p4 = intertwiner::psi2_closed_form_comparison(&model, u, a, b).unwrap();
        let p6 = intertwiner::psi2_dual_closed_form_comparison(&model, u, a, b).unwrap();
        prop_assert!(p4.direct_residual < 1e-9);
        prop_assert!(p6.direct_residual < 1e-9);
    }

    #[test]
    fn r21_prefactor_identity(u in spectral()) {
        let ctx = ctx();
        let prod = vertex::r0_scalar(u, &ctx).unwrap() * vertex::r0_scalar(u + 1.0, &ctx).unwrap();
        prop_assert!(residual_scalar(prod, fusion::r21_prefactor(u, &ctx).unwrap()) < 1e-9);
    }
}

#[test]
fn w21_vanishes_at_minus_one_on_every_square() {
    let model = FaceModel::new(ctx());
    let u_ref = Complex64::new(0.37, 0.0);
    let mut scale = 0.0f64;
    let mut worst = 0.0f64;
    for a in 1..=5i32 {
        for b in [a - 2, a, a + 2] {
            for d in [a - 1, a + 1] {
                for cc in [d - 2, d, d + 2] {
                    if !(1..=5).contains(&b) || !(1..=5).contains(&d) || !(1..=5).contains(&cc) || (b - cc).abs() != 1 {
                        continue;
                    }
                    scale = scale.max(model.w21(a, b, d, cc, u_ref, None).unwrap().norm());
                    worst = worst.max(model.w21(a, b, d, cc, Complex64::new(-1.0, 0.0), None).unwrap().norm());
                }
            }
        }
    }
    assert!(scale > 0.0);
    assert!(worst < 1e-9 * scale, "{worst} vs scale {scale}");
}

#[test]
fn all_gauge_sign_choices_work() {
    let ctx = ctx();
    for signs in fusion::SignChoice::all() {
        assert!(fusion::gauge_residual(Complex64::new(0.41, 0.02), &ctx, signs).unwrap() < 1e-9);
    }
}
