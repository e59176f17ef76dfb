use gmqd::channels::{apply_scenario, ChannelKind, Locality, NoiseScenario};
use gmqd::states::random_density;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn arb_scenario() -> impl Strategy<Value = NoiseScenario> {
    (0usize..5, 0usize..3, 0.0f64..=1.0, 0.0f64..=1.0).prop_map(|(k, l, ga, gb)| {
        NoiseScenario::with_locality(ChannelKind::ALL[k], Locality::ALL[l], ga, gb).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn random_states_stay_states(seed in any::<u64>(), s in arb_scenario()) {
        let rho = random_density(&mut ChaCha8Rng::seed_from_u64(seed), 6);
        // apply_scenario validates its output, so success already means a state
        let out = apply_scenario(&rho, &s).unwrap();
        let m = out.matrix();
        let tr = m.trace().unwrap();
        prop_assert!((tr.re - 1.0).abs() <= 1e-12 && tr.im.abs() <= 1e-12);
        prop_assert!(m.hermiticity_defect() <= 1e-12);
        let min = out.eigenvalues()[0];
        prop_assert!(min >= -1e-9, "min eigenvalue {}", min);
    }
}
