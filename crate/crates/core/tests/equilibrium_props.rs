mod common;

use common::{
    interior_cost_by_solve, profile, random_network, random_noise, rng, variances_by_squaring,
};
use crowdwise_core::{
    best_response, classify_profile, common_cost, estimation_variances, pareto_segment,
    zstar_membership, BestResponseSet, Verdict,
};
use proptest::prelude::*;
use rand::Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn point_response_beats_a_grid(seed in any::<u64>(), n in 2usize..=6) {
        let mut r = rng(seed);
        let net = random_network(&mut r, n, 0.4);
        let noise = random_noise(&mut r, n);
        let z: Vec<f64> = (0..n).map(|_| r.random_range(0.0..0.95)).collect();
        let i = r.random_range(0..n);
        let b = match best_response(&net, &noise, &profile(&z), i).unwrap() {
            BestResponseSet::Point(b) => b,
            other => return Err(TestCaseError::fail(format!("{other:?}"))),
        };
        let cost_at = |zi: f64| {
            let mut zz = z.clone();
            zz[i] = zi;
            interior_cost_by_solve(net.matrix(), &zz, noise.sigma2())
        };
        let best = cost_at(b);
        for k in 0..=500 {
            let zi = k as f64 / 500.0 * (1.0 - 1e-6);
            prop_assert!(best <= cost_at(zi) * (1.0 + 1e-10));
        }
    }

    #[test]
    fn pareto_profiles_reach_the_minimum(seed in any::<u64>(), n in 2usize..=6, frac in 0.01f64..=1.0) {
        let mut r = rng(seed);
        let net = random_network(&mut r, n, 0.4);
        let noise = random_noise(&mut r, n);
        let seg = pareto_segment(&net, &noise).unwrap();
        let alpha = frac * seg.alpha_star;
        let z = seg.profile(alpha).unwrap();
        let v = common_cost(&net, &z, &noise).unwrap();
        prop_assert!((v - seg.v_min).abs() <= 1e-12 * seg.v_min);
        let oracle = interior_cost_by_solve(net.matrix(), z.as_slice(), noise.sigma2());
        prop_assert!((oracle - seg.v_min).abs() <= 1e-9 * seg.v_min);
        let m = zstar_membership(&net, &noise, &z).unwrap();
        prop_assert!(m.is_member);
        prop_assert!((m.alpha_hat - alpha).abs() <= 1e-9 * alpha.max(1.0));
        prop_assert_eq!(classify_profile(&net, &noise, &z).unwrap().verdict, Verdict::StrictNashInterior);
    }

    #[test]
    fn not_nash_deviations_are_real(seed in any::<u64>(), n in 2usize..=6) {
        let mut r = rng(seed);
        let net = random_network(&mut r, n, 0.4);
        let noise = random_noise(&mut r, n);
        let z: Vec<f64> = (0..n)
            .map(|_| if r.random_bool(0.2) { 1.0 } else { r.random_range(0.0..0.99) })
            .collect();
        let report = classify_profile(&net, &noise, &profile(&z)).unwrap();
        if report.verdict == Verdict::NotNash {
            let dev = report.best_deviation.unwrap();
            prop_assert!(dev.gain > 0.0);
            let now = variances_by_squaring(net.matrix(), &z, noise.sigma2())[dev.agent];
            let mut moved = z.clone();
            moved[dev.agent] = dev.to.unwrap_or(0.5);
            let after = variances_by_squaring(net.matrix(), &moved, noise.sigma2())[dev.agent];
            prop_assert!(now - after > 0.0);
            prop_assert!(((now - after) - dev.gain).abs() <= 1e-9 * now);
        }
    }

    #[test]
    fn own_choice_is_irrelevant_when_others_are_stubborn(seed in any::<u64>(), n in 2usize..=6) {
        let mut r = rng(seed);
        let net = random_network(&mut r, n, 0.4);
        let noise = random_noise(&mut r, n);
        let i = r.random_range(0..n);
        let mut z: Vec<f64> = (0..n).map(|_| r.random_range(0.0..0.99)).collect();
        let j = (i + 1 + r.random_range(0..n - 1)) % n;
        z[j] = 1.0;
        let costs: Vec<f64> = [0.0, 0.3, 0.7, 0.999]
            .iter()
            .map(|&zi| {
                let mut zz = z.clone();
                zz[i] = zi;
                estimation_variances(&net, &profile(&zz), &noise).unwrap()[i]
            })
            .collect();
        prop_assert!(costs.iter().all(|c| (c - costs[0]).abs() <= 1e-10));
        let set = best_response(&net, &noise, &profile(&z), i).unwrap();
        prop_assert!(set.point().is_none());
    }
}
