use gme_core::families::{ghz_w_point, ghz_w_wt_point};
use gme_core::fmt::sig15;
use gme_core::linalg::{hermitian_eig, partial_trace, ComplexMatrix, DensityMatrix, Pair, PureState3, Qubit, C64};
use gme_core::measures::{
    hyperdeterminant_tangle, measure_report, pure_concurrence_2q, wootters_concurrence,
};
use gme_core::roof::{avg_tangle, decompose_from_isometry};
use gme_core::sampling::{haar_unitary_2, random_local_unitary, RngSpec};
use gme_core::schmidt::{pairwise_via_reshape, schmidt_decompose, SchmidtForm};
use proptest::prelude::*;

fn state() -> impl Strategy<Value = PureState3> {
    prop::array::uniform16(-1.0f64..1.0)
        .prop_filter("nonzero", |x| x.iter().map(|v| v * v).sum::<f64>() > 1e-3)
        .prop_map(|x| PureState3::normalized(std::array::from_fn(|i| C64::new(x[2 * i], x[2 * i + 1]))).unwrap())
}

/// States with some amplitudes forced to zero, to hit degenerate branches.
fn sparse_state() -> impl Strategy<Value = PureState3> {
    (state(), any::<u8>()).prop_filter_map("nonzero", |(psi, mask)| {
        let mut a = *psi.amplitudes();
        for (i, z) in a.iter_mut().enumerate() {
            if mask & (1 << i) != 0 {
                *z = C64::new(0.0, 0.0);
            }
        }
        PureState3::normalized(a).ok()
    })
}

fn any_state() -> impl Strategy<Value = PureState3> {
    prop_oneof![state(), sparse_state()]
}

fn mixture(states: &[PureState3], weights: &[f64]) -> DensityMatrix {
    let total: f64 = weights.iter().sum();
    let mut m = ComplexMatrix::zeros(8, 8);
    for (psi, w) in states.iter().zip(weights) {
        m = &m + &ComplexMatrix::outer(psi.amplitudes()).scale_real(w / total);
    }
    DensityMatrix::new(m).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn report_invariants(psi in any_state()) {
        let r = measure_report(&psi).unwrap();
        for v in r.values() {
            prop_assert!((0.0..=1.0).contains(&v));
        }
        for pair in Pair::ALL {
            prop_assert!((r.pairwise(pair).powi(2) - r.reduced(pair).powi(2) - r.tau).abs() < 1e-9);
        }
        prop_assert_eq!(r.mpc, r.pc_ab.min(r.pc_ac).min(r.pc_bc));
        prop_assert_eq!(r.gmc, r.c_a_bc.min(r.c_b_ac).min(r.c_c_ab));
        prop_assert!(r.mpc <= r.gmc + 1e-9);
    }

    #[test]
    fn monogamy_every_relabeling(psi in any_state()) {
        let r = measure_report(&psi).unwrap();
        for x in Qubit::ALL {
            let (y, z) = x.others();
            let c = |a: Qubit, b: Qubit| {
                let pair = Pair::ALL.into_iter().find(|p| p.qubits() == (a, b) || p.qubits() == (b, a)).unwrap();
                r.reduced(pair)
            };
            prop_assert!(c(x, y).powi(2) + c(x, z).powi(2) <= r.cut(x).powi(2) + 1e-9);
        }
    }

    #[test]
    fn tangle_matches_hyperdeterminant(psi in any_state()) {
        let r = measure_report(&psi).unwrap();
        prop_assert!((r.tau - hyperdeterminant_tangle(&psi)).abs() < 1e-8);
    }

    #[test]
    fn local_unitary_invariance(psi in any_state(), seed in any::<u64>()) {
        let u = random_local_unitary(&mut RngSpec::new(seed).rng());
        let a = measure_report(&psi).unwrap();
        let b = measure_report(&u.apply(&psi)).unwrap();
        prop_assert!(a.max_abs_diff(&b) < 1e-9);
    }

    #[test]
    fn canonical_form_round_trip(psi in any_state()) {
        let (form, u) = schmidt_decompose(&psi).unwrap();
        prop_assert!((0.0..=std::f64::consts::PI).contains(&form.phi()));
        prop_assert!(form.lambda().iter().all(|&l| l >= 0.0));
        prop_assert!(u.apply(&psi).fidelity(&form.to_state()) > 1.0 - 1e-9);
        let back = u.inverse().apply(&form.to_state());
        prop_assert!(back.fidelity(&psi) > 1.0 - 1e-9);
    }

    #[test]
    fn canonical_form_is_idempotent(l in prop::array::uniform5(0.0f64..1.0), phi in 0.0f64..std::f64::consts::PI) {
        let n = l.iter().map(|x| x * x).sum::<f64>().sqrt();
        prop_assume!(n > 1e-3 && l[0] / n > 1e-3);
        let form = SchmidtForm::new(l.map(|x| x / n), phi).unwrap();
        let (again, _) = schmidt_decompose(&form.to_state()).unwrap();
        let r0 = measure_report(&form.to_state()).unwrap();
        let r1 = measure_report(&again.to_state()).unwrap();
        prop_assert!(r0.max_abs_diff(&r1) < 1e-9);
    }

    #[test]
    fn reshaping_reproduces_pairwise(psi in any_state()) {
        let r = measure_report(&psi).unwrap();
        for pair in Pair::ALL {
            prop_assert!((pairwise_via_reshape(&psi, pair).unwrap() - r.pairwise(pair)).abs() < 1e-8);
        }
    }

    #[test]
    fn partial_trace_is_a_state(psis in prop::collection::vec(state(), 1..4), w in prop::collection::vec(0.1f64..1.0, 3)) {
        let rho = mixture(&psis, &w[..psis.len()]);
        for keep in [vec![Qubit::A], vec![Qubit::B, Qubit::C], vec![Qubit::A, Qubit::C]] {
            let red = partial_trace(&rho, &keep).unwrap();
            prop_assert!((red.matrix().trace().re - 1.0).abs() < 1e-12);
            prop_assert!(red.matrix().hermiticity_error() < 1e-14);
        }
    }

    #[test]
    fn wootters_in_range_and_pure_limit(psis in prop::collection::vec(state(), 1..4), w in prop::collection::vec(0.1f64..1.0, 3)) {
        let rho = mixture(&psis, &w[..psis.len()]);
        let ab = partial_trace(&rho, &[Qubit::A, Qubit::B]).unwrap();
        let c = wootters_concurrence(&ab).unwrap();
        prop_assert!((0.0..=1.0).contains(&c));

        // a pure two-qubit state: |0⟩ on C makes ρ_AB pure
        let a = psis[0].amplitudes();
        let phi = PureState3::normalized([a[0], C64::new(0.0, 0.0), a[1], C64::new(0.0, 0.0), a[2], C64::new(0.0, 0.0), a[3], C64::new(0.0, 0.0)]);
        prop_assume!(phi.is_ok());
        let phi = phi.unwrap();
        let amps = phi.amplitudes();
        let two = [amps[0], amps[2], amps[4], amps[6]];
        let pure = pure_concurrence_2q(&two).unwrap();
        let mixed = wootters_concurrence(&partial_trace(&phi.density(), &[Qubit::A, Qubit::B]).unwrap()).unwrap();
        prop_assert!((pure - mixed).abs() < 1e-7);
    }

    #[test]
    fn eigendecomposition_reconstructs(x in prop::collection::vec(-1.0f64..1.0, 32)) {
        let mut m = ComplexMatrix::zeros(4, 4);
        for i in 0..4 {
            for j in 0..4 {
                m[(i, j)] = C64::new(x[4 * i + j], x[16 + 4 * i + j]);
            }
        }
        let h = m.hermitian_part();
        let eig = hermitian_eig(&h).unwrap();
        prop_assert!((&eig.reconstruct() - &h).frobenius_norm() < 1e-12);
        prop_assert!(eig.values.windows(2).all(|w| w[0] >= w[1]));
    }

    #[test]
    fn isometric_mixing_reconstructs(a in state(), b in state(), w in 0.05f64..0.95, seed in any::<u64>()) {
        prop_assume!(a.fidelity(&b) < 0.99);
        let rho = mixture(&[a, b], &[w, 1.0 - w]);
        let u = haar_unitary_2(&mut RngSpec::new(seed).rng());
        let d = decompose_from_isometry(&rho, &u).unwrap();
        prop_assert!(d.residual < 1e-9);
        prop_assert!((d.weights.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        prop_assert!(avg_tangle(&d).unwrap() >= 0.0);
    }

    #[test]
    fn family_curves_dominate(p in 0.0f64..=1.0, n in 1u32..6) {
        let g = ghz_w_point(p).unwrap();
        prop_assert!(g.mpc >= g.tau && g.tau >= 0.0 && g.c_ab >= 0.0);
        let r = ghz_w_wt_point(p, n).unwrap();
        prop_assert!(r.mpc >= r.tau && r.tau >= 0.0 && r.c_ab >= 0.0);
    }

    #[test]
    fn sig15_round_trips(x in prop::num::f64::NORMAL) {
        let back: f64 = sig15(x).parse().unwrap();
        prop_assert!(((back - x) / x).abs() <= 1e-14);
    }
}
