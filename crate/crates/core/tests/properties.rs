use coherent_lab::cli::{parse_complex, parse_grid};
use coherent_lab::contraction::power_law_fit;
use coherent_lab::fock::{commutator, mat_exp, FockDim, OperatorMatrix};
use coherent_lab::landau::sturmian_radial;
use coherent_lab::su11::{
    normal_form_factors, perelomov_ncs, su11_generators, BargmannIndex, SU11Parameter,
};
use coherent_lab::weyl::{number_coherent_state, weyl_operator, WeylParameter};
use coherent_lab::Complex64;
use proptest::prelude::*;

fn dim(n: usize) -> FockDim {
    FockDim::new(n).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn h4_states_are_normalized(n in 0usize..10, r in 0.0f64..2.0, t in 0.0f64..6.3) {
        let p = WeylParameter::new(Complex64::from_polar(r, t)).unwrap();
        let s = number_coherent_state(n, &p, dim(96)).unwrap();
        prop_assert!((s.coeffs.norm() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn su11_states_are_normalized(
        n in 0usize..6,
        k in 0.5f64..4.0,
        tau in 0.0f64..1.0,
        phi in 0.0f64..6.3,
    ) {
        let p = SU11Parameter::new(tau, phi).unwrap();
        let s = perelomov_ncs(n, BargmannIndex::new(k).unwrap(), &p, dim(128)).unwrap();
        prop_assert!((s.coeffs.norm() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn normal_form_factors_stay_in_disc(tau in 0.0f64..30.0, phi in -10.0f64..10.0) {
        let p = SU11Parameter::new(tau, phi).unwrap();
        let (zeta, eta) = normal_form_factors(&p).unwrap();
        prop_assert!(zeta.norm() < 1.0);
        prop_assert!(eta <= 0.0);
        // 1 - |zeta|^2 = e^eta
        prop_assert!((1.0 - zeta.norm_sqr() - eta.exp()).abs() < 1e-12);
        prop_assert!((0.0..std::f64::consts::TAU).contains(&p.phi()));
    }

    #[test]
    fn su11_closure_for_any_index(k in 0.05f64..20.0) {
        let d = dim(24);
        let g = su11_generators(BargmannIndex::new(k).unwrap(), d);
        let lhs = commutator(&g.k_minus, &g.k_plus).unwrap();
        let rhs = g.k_zero.scaled(Complex64::new(2.0, 0.0));
        let scale = k + 24.0;
        prop_assert!(lhs.block_max_diff(&rhs, 23).unwrap() / scale < 1e-13);
    }

    #[test]
    fn weyl_operator_is_unitary_on_interior(r in 0.0f64..1.5, t in 0.0f64..6.3) {
        let d = dim(64);
        let u = weyl_operator(&WeylParameter::new(Complex64::from_polar(r, t)).unwrap(), d).unwrap();
        let prod = u.adjoint().compose(&u).unwrap();
        prop_assert!(prod.block_max_diff(&OperatorMatrix::identity(d), 16).unwrap() < 1e-10);
    }

    #[test]
    fn exponential_of_antihermitian_diagonal(values in proptest::collection::vec(-3.0f64..3.0, 4)) {
        let d = dim(4);
        let m = OperatorMatrix::diagonal(d, |i| Complex64::new(0.0, values[i]));
        let e = mat_exp(&m).unwrap();
        for (i, v) in values.iter().enumerate() {
            prop_assert!((e.get(i, i) - Complex64::new(0.0, *v).exp()).norm() < 1e-13);
        }
    }

    #[test]
    fn sturmian_values_are_finite(n in 0usize..60, m in 0usize..20, y in 0.0f64..300.0) {
        prop_assert!(sturmian_radial(n, m, y).unwrap().is_finite());
    }

    #[test]
    fn complex_parsing_round_trips(re in -1e6f64..1e6, im in -1e6f64..1e6) {
        let z = parse_complex(&format!("{re:?},{im:?}")).unwrap();
        prop_assert_eq!(z, Complex64::new(re, im));
    }

    #[test]
    fn grid_parsing_hits_endpoints(lo in -10.0f64..0.0, span in 0.1f64..10.0, count in 2usize..200) {
        let hi = lo + span;
        let g = parse_grid(&format!("{lo:?}:{hi:?}:{count}")).unwrap();
        prop_assert_eq!(g.len(), count);
        prop_assert_eq!(g[0], lo);
        prop_assert!((g[count - 1] - hi).abs() <= 1e-12 * hi.abs().max(1.0));
    }

    #[test]
    fn power_fit_is_exact_for_power_laws(order in -4.0f64..4.0, pre in 0.01f64..100.0) {
        let xs = [0.2, 0.1, 0.05, 0.025];
        let ys: Vec<f64> = xs.iter().map(|x: &f64| pre * x.powf(order)).collect();
        let fit = power_law_fit(&xs, &ys).unwrap();
        prop_assert!((fit.order - order).abs() < 1e-10);
        prop_assert!((fit.prefactor / pre - 1.0).abs() < 1e-9);
    }
}
