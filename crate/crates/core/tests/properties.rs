use fluxbound::ab_spectrum::{flux_decompose, master_xi_of_energy, solve_bound_energy, DiracChannel};
use fluxbound::ac_spectrum::{ac_bound_energy, ac_solve_cross_check, AcChannel};
use fluxbound::numkernel::{bessel_j, bessel_k, find_root_bracketed, gamma_fn, sin_pi, Bracket};
use fluxbound::Extension;
use proptest::prelude::*;

fn extended_beta() -> impl Strategy<Value = f64> {
    prop_oneof![0.001f64..0.499, 0.501f64..0.999]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn gamma_reflection(x in 0.001f64..0.999) {
        let v = gamma_fn(x).unwrap() * gamma_fn(1.0 - x).unwrap() * sin_pi(x) / std::f64::consts::PI;
        prop_assert!((v - 1.0).abs() < 1e-10);
    }

    #[test]
    fn bessel_recurrences(a in -2.0f64..2.0, z in 0.01f64..50.0) {
        let (jm, j0, jp) = (bessel_j(a - 1.0, z).unwrap(), bessel_j(a, z).unwrap(), bessel_j(a + 1.0, z).unwrap());
        let scale = jm.abs().max(jp.abs()).max((2.0 * a / z * j0).abs());
        prop_assert!((jm + jp - 2.0 * a / z * j0).abs() <= 1e-9 * scale);
        let (km, k0, kp) = (bessel_k(a - 1.0, z).unwrap(), bessel_k(a, z).unwrap(), bessel_k(a + 1.0, z).unwrap());
        let scale = km.abs().max(kp.abs()).max((2.0 * a / z * k0).abs());
        prop_assert!((kp - km - 2.0 * a / z * k0).abs() <= 1e-9 * scale);
        prop_assert_eq!(bessel_k(-a, z).unwrap(), k0);
    }

    #[test]
    fn root_stays_in_bracket(c in -0.99f64..0.99, p in 1u32..6) {
        let f = |x: f64| (x - c).powi(2 * p as i32 - 1);
        let b = Bracket::new(f, -1.0, 1.0).unwrap();
        let r = find_root_bracketed(f, b, 1e-14, 0.0).unwrap();
        prop_assert!((-1.0..=1.0).contains(&r));
        prop_assert!((r - c).abs() < 1e-3);
    }

    #[test]
    fn flux_parts(mu in -50.0f64..50.0) {
        let p = flux_decompose(mu);
        prop_assert!(p.beta >= 0.0 && p.beta < 1.0);
        prop_assert!((p.n as f64 + p.beta - mu).abs() <= 1e-13);
    }

    #[test]
    fn extension_angle_round_trip(theta in 0.0f64..(std::f64::consts::TAU - 1e-3)) {
        let e = Extension::from_theta(theta).unwrap();
        let back = Extension::from_xi(e.xi()).unwrap();
        prop_assert!((back.theta() - e.theta()).abs() < 1e-9);
    }

    #[test]
    fn master_round_trip(beta in extended_beta(), n in -3i64..3, e0 in -0.97f64..0.97) {
        let ch = DiracChannel::new(1.0, -n, -1, n as f64 + beta).unwrap();
        let x = master_xi_of_energy(&ch, e0).unwrap();
        prop_assert!(x < 0.0);
        let lv = solve_bound_energy(&ch, &Extension::from_xi(x).unwrap()).unwrap().unwrap();
        prop_assert!((lv.energy - e0).abs() < 1e-9);
    }

    #[test]
    fn reflection_symmetry(beta in 0.01f64..0.49, lx in -5.0f64..5.0) {
        let ext = Extension::from_xi(-lx.exp()).unwrap();
        let a = solve_bound_energy(&DiracChannel::new(1.0, 0, -1, beta).unwrap(), &ext).unwrap().unwrap();
        let b = solve_bound_energy(&DiracChannel::new(1.0, 0, -1, 1.0 - beta).unwrap(), &ext).unwrap().unwrap();
        prop_assert!((a.energy + b.energy).abs() <= 1e-8);
    }

    #[test]
    fn levels_exist_only_for_negative_xi(beta in extended_beta(), x in -20.0f64..20.0) {
        let ch = DiracChannel::new(1.0, 0, -1, beta).unwrap();
        let lv = solve_bound_energy(&ch, &Extension::from_xi(x).unwrap()).unwrap();
        prop_assert_eq!(lv.is_some(), x < 0.0);
        if let Some(lv) = lv {
            prop_assert!(lv.energy.abs() < 1.0 && lv.lambda > 0.0);
        }
    }

    #[test]
    fn ac_closed_form_agrees_with_root_finder(g in 0.05f64..0.95, lx in -2.0f64..2.0) {
        let ch = AcChannel::with_gamma(1.0, g).unwrap();
        let ext = Extension::from_xi(-lx.exp()).unwrap();
        let a = ac_bound_energy(&ch, &ext).unwrap().unwrap().energy;
        let b = ac_solve_cross_check(&ch, &ext).unwrap().unwrap().energy;
        prop_assert!(a < 0.0);
        prop_assert!((a - b).abs() <= 1e-9 * a.abs().max(1.0));
    }
}
