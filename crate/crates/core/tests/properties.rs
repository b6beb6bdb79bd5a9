use frameshift::classical::{
    alpha_equals_f1, default_samples, f4_residual, hj_residual, principal_uniform_force,
    transform_principal, PolyXT,
};
use frameshift::numerics::{
    distance_up_to_phase, fourier_shift, from_momentum, gaussian_packet, l2_distance, make_grid,
    momentum_l2_distance, to_momentum,
};
use frameshift::propagator::propagate;
use frameshift::{
    transformed_hamiltonian, AffineHamiltonian, Cubic, FrameTransform, GaussianSpec, Grid1D,
    TransformKind, WaveFunction,
};
use num_complex::Complex64;
use proptest::prelude::*;

fn grid() -> Grid1D {
    make_grid(256, 40.0, -20.0, 1.0).unwrap()
}

fn kind() -> impl Strategy<Value = TransformKind> {
    let p = -2.0..2.0f64;
    let m = 0.5..2.0f64;
    prop_oneof![
        p.clone()
            .prop_map(|a| TransformKind::SpatialTranslation { a }),
        p.clone()
            .prop_map(|b| TransformKind::MomentumTranslation { b }),
        (p.clone(), m.clone())
            .prop_map(|(velocity, mass)| TransformKind::GalileanBoost { velocity, mass }),
        (p, m).prop_map(|(acceleration, mass)| TransformKind::ConstantAcceleration {
            acceleration,
            mass
        }),
    ]
}

fn chi() -> impl Strategy<Value = Cubic> {
    prop::array::uniform4(-1.0..1.0f64).prop_map(Cubic)
}

fn transform() -> impl Strategy<Value = FrameTransform> {
    (kind(), chi()).prop_map(|(k, c)| FrameTransform::new(k, c).unwrap())
}

fn packet() -> impl Strategy<Value = WaveFunction> {
    (-2.0..2.0f64, -4i32..=4, 0.8..1.5f64).prop_map(|(x0, q, sigma)| {
        let g = grid();
        gaussian_packet(
            &g,
            &GaussianSpec::new(x0, q as f64 * g.dp(), sigma).unwrap(),
        )
        .unwrap()
    })
}

fn with_time(mut psi: WaveFunction, t: f64) -> WaveFunction {
    psi.time = t;
    psi
}

proptest! {
    #[test]
    fn basic_identity_holds(tr in transform(), x in -5.0..5.0f64, p in -5.0..5.0f64, t in -2.0..2.0f64) {
        prop_assert!(tr.bas_residual(x, p, t).abs() <= 1e-12);
        prop_assert!(f4_residual(&tr, x, p, t).abs() <= 1e-12);
    }

    #[test]
    fn alpha_is_f1(tr in transform()) {
        prop_assert!(alpha_equals_f1(&tr) <= 1e-13);
    }

    #[test]
    fn chi_only_changes_global_phase(k in kind(), c in chi(), psi in packet(), t in 0.0..1.0f64) {
        let psi = with_time(psi, t);
        let bare = FrameTransform::new(k, Cubic::ZERO).unwrap();
        let gauged = bare.with_chi(c);
        let a = bare.apply_position(&psi);
        let b = gauged.apply_position(&psi);
        let phase = Complex64::from_polar(1.0, -c.eval(t));
        let mut rotated = a.clone();
        rotated.samples.iter_mut().for_each(|z| *z *= phase);
        prop_assert!(l2_distance(&rotated, &b).unwrap() <= 1e-12);
        prop_assert!(distance_up_to_phase(&a, &b).unwrap() <= 1e-12);
    }

    #[test]
    fn hj_transport_with_random_gauge(
        tr in transform(),
        p0 in -1.5..1.5f64,
        m in 0.5..2.0f64,
        f in -1.5..1.5f64,
        e in prop::array::uniform3(-1.0..1.0f64),
    ) {
        let h = AffineHamiltonian::new(m, 0.0, f, Cubic::new(e[0], e[1], e[2], 0.0)).unwrap();
        let e_int = Cubic::new(e[0], e[1], e[2], 0.0).antiderivative().unwrap();
        let base = principal_uniform_force(p0, m, f);
        let s = PolyXT::from_parts(base.constant_part() - e_int, base.slope_part());
        let samples = default_samples();
        prop_assert!(hj_residual(&s, &h, &samples) <= 1e-12);
        let tr = match tr.kind {
            TransformKind::GalileanBoost { velocity, .. } => FrameTransform::new(TransformKind::GalileanBoost { velocity, mass: m }, tr.chi).unwrap(),
            TransformKind::ConstantAcceleration { acceleration, .. } => FrameTransform::new(TransformKind::ConstantAcceleration { acceleration, mass: m }, tr.chi).unwrap(),
            _ => tr,
        };
        let k = transformed_hamiltonian(&tr, &h).unwrap();
        let s_prime = transform_principal(&s, &tr).unwrap();
        prop_assert!(hj_residual(&s_prime, &k, &samples) <= 1e-11);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn momentum_round_trip(psi in packet()) {
        let back = from_momentum(&to_momentum(&psi));
        prop_assert!(l2_distance(&psi, &back).unwrap() <= 1e-12);
        prop_assert!((to_momentum(&psi).norm() - psi.norm()).abs() <= 1e-12);
    }

    #[test]
    fn shifts_compose(psi in packet(), s1 in -3.0..3.0f64, s2 in -3.0..3.0f64) {
        let two = fourier_shift(&fourier_shift(&psi, s1), s2);
        let one = fourier_shift(&psi, s1 + s2);
        prop_assert!(l2_distance(&two, &one).unwrap() <= 1e-10);
    }

    #[test]
    fn transform_is_unitary_and_invertible(tr in transform(), psi in packet(), t in 0.0..1.0f64) {
        let psi = with_time(psi, t);
        let out = tr.apply_position(&psi);
        prop_assert!((out.norm() - psi.norm()).abs() <= 1e-12);
        let back = tr.apply_position_inverse(&out);
        prop_assert!(l2_distance(&back, &psi).unwrap() <= 1e-10);
    }

    #[test]
    fn commensurate_duality(q in -6i32..=6, m in prop::sample::select(vec![0.5, 1.0, 2.0]), c in chi(), psi in packet(), step in 0usize..4) {
        let g = grid();
        let tr = FrameTransform::new(
            TransformKind::GalileanBoost { velocity: q as f64 * g.dp() / m, mass: m },
            c,
        ).unwrap();
        let psi = with_time(psi, 0.25 * step as f64);
        let lhs = to_momentum(&tr.apply_position(&psi));
        let rhs = tr.apply_momentum(&to_momentum(&psi));
        prop_assert!(momentum_l2_distance(&lhs, &rhs).unwrap() <= 1e-10);
    }

    #[test]
    fn propagation_is_unitary(psi in packet(), m in 0.5..2.0f64, a in -1.0..1.0f64, f in -1.0..1.0f64, e in chi()) {
        let h = AffineHamiltonian::new(m, a, f, e).unwrap();
        let out = propagate(&psi, &h, 0.2, 1e-2).unwrap();
        prop_assert!((out.norm() - psi.norm()).abs() <= 1e-12);
        let back = propagate(&out, &h, 0.0, 1e-2).unwrap();
        prop_assert!(l2_distance(&back, &psi).unwrap() <= 1e-10);
    }
}
