use cpint::harness::random::{
    dyadic, random_bv, random_bv_normalized, random_distribution, random_l1, random_test, rng_for,
};
use cpint::harness::RandomParams;
use cpint::io::{FunctionFile, Kind};
use cpint::stieltjes::{holder_check, integrate_product, integrate_product_normalized};
use cpint::{convolve_bv, convolve_l1, pairing_convolution, BVFunction, Distribution};
use proptest::prelude::*;

fn params() -> RandomParams {
    RandomParams::default()
}

fn config() -> ProptestConfig {
    ProptestConfig { cases: 64, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn alexiewicz_norms_are_equivalent(seed in any::<u64>()) {
        let f = random_distribution(&mut rng_for(seed, 0), &params());
        let (n, p) = (f.alexiewicz_norm(), f.alexiewicz_norm_prime());
        prop_assert!(p <= n + 1e-12);
        prop_assert!(n <= 2.0 * p + 1e-12);
    }

    #[test]
    fn integral_is_additive_over_intervals(seed in any::<u64>(), a in -5.0..5.0f64, b in -5.0..5.0f64, c in -5.0..5.0f64) {
        let f = random_distribution(&mut rng_for(seed, 0), &params());
        let i = |x: f64, y: f64| f.integral(x.into(), y.into());
        prop_assert!((i(a, b) + i(b, c) - i(a, c)).abs() < 1e-12);
    }

    #[test]
    fn translation_is_an_isometry(seed in any::<u64>(), k in -64i32..64) {
        let f = random_distribution(&mut rng_for(seed, 0), &params());
        let z = f64::from(k) / 16.0;
        let t = f.translate(z);
        prop_assert_eq!(t.alexiewicz_norm(), f.alexiewicz_norm());
        prop_assert_eq!(t.alexiewicz_norm_prime(), f.alexiewicz_norm_prime());
    }

    #[test]
    fn variation_is_subadditive(seed in any::<u64>()) {
        let mut rng = rng_for(seed, 1);
        let g = random_bv(&mut rng, &params());
        let h = random_bv(&mut rng, &params());
        let sum = BVFunction::linear_combine(1.0, &g, 1.0, &h);
        prop_assert!(sum.variation() <= g.variation() + h.variation() + 1e-12);
        prop_assert!(g.essential_variation() <= g.variation() + 1e-12);
    }

    #[test]
    fn product_integral_ignores_normalization(seed in any::<u64>(), gamma in 0.0..=1.0f64) {
        let mut rng = rng_for(seed, 2);
        let f = random_distribution(&mut rng, &params());
        let g = random_bv(&mut rng, &params());
        let base = integrate_product(&f, &g);
        prop_assert_eq!(integrate_product_normalized(&f, &g, gamma).unwrap(), base);
    }

    #[test]
    fn holder_chain_holds(seed in any::<u64>()) {
        let mut rng = rng_for(seed, 3);
        let f = random_distribution(&mut rng, &params());
        let g = random_bv(&mut rng, &params());
        let b = holder_check(&f, &g);
        prop_assert!(b.holds(1e-9), "{b:?}");
    }

    #[test]
    fn convolution_is_uniformly_bounded(seed in any::<u64>(), x in -12.0..12.0f64) {
        let mut rng = rng_for(seed, 4);
        let f = random_distribution(&mut rng, &params());
        let g = random_bv(&mut rng, &params());
        let h = convolve_bv(&f, &g);
        prop_assert!(h.eval(x).abs() <= f.alexiewicz_norm() * g.bv_norm() + 1e-9);
    }

    #[test]
    fn convolution_is_linear_in_f(seed in any::<u64>(), a in -2.0..2.0f64, b in -2.0..2.0f64, x in -12.0..12.0f64) {
        let mut rng = rng_for(seed, 5);
        let f1 = random_distribution(&mut rng, &params());
        let f2 = random_distribution(&mut rng, &params());
        let g = random_bv(&mut rng, &params());
        let lhs = convolve_bv(&Distribution::linear_combine(a, &f1, b, &f2), &g).eval(x);
        let rhs = a * convolve_bv(&f1, &g).eval(x) + b * convolve_bv(&f2, &g).eval(x);
        prop_assert!((lhs - rhs).abs() < 1e-10);
    }

    #[test]
    fn convolution_commutes_with_dyadic_shifts(seed in any::<u64>(), k in -64i32..64) {
        let mut rng = rng_for(seed, 6);
        let f = random_distribution(&mut rng, &params());
        let g = random_bv_normalized(&mut rng, &params());
        let z = f64::from(k) / 16.0;
        let shifted = convolve_bv(&f.translate(z), &g);
        let expected = convolve_bv(&f, &g).translate(z);
        prop_assert_eq!(shifted.rep().max_coeff_diff(expected.rep()), 0.0);
    }

    #[test]
    fn pairing_moves_onto_the_test_function(seed in any::<u64>()) {
        let mut rng = rng_for(seed, 7);
        let f = random_distribution(&mut rng, &params());
        let g = random_l1(&mut rng, &params().with_degree(2));
        let phi = random_test(&mut rng, &params());
        let direct = convolve_l1(&f, &g).unwrap().pairing(&phi);
        let moved = pairing_convolution(&f, &g, &phi);
        prop_assert!((direct - moved).abs() <= 1e-9 * direct.abs().max(1.0));
    }

    #[test]
    fn json_round_trip_is_lossless(seed in any::<u64>()) {
        let mut rng = rng_for(seed, 8);
        let f = random_distribution(&mut rng, &params());
        let g = random_bv(&mut rng, &params());
        let ff = FunctionFile::from_distribution(&f);
        let back = FunctionFile::from_json(&ff.to_json()).unwrap().to_distribution().unwrap();
        prop_assert_eq!(back.primitive().rep().max_coeff_diff(f.primitive().rep()), 0.0);
        let gf = FunctionFile::from_bv(&g);
        prop_assert_eq!(gf.kind, Kind::Bv);
        let back = FunctionFile::from_json(&gf.to_json()).unwrap().to_bv().unwrap();
        prop_assert_eq!(back.point_values(), g.point_values());
        prop_assert_eq!(back.rep().max_coeff_diff(g.rep()), 0.0);
    }

    #[test]
    fn dyadic_samples_stay_in_range(seed in any::<u64>(), bits in 0u32..8) {
        let x = dyadic(&mut rng_for(seed, 9), -3.0, 5.0, bits);
        prop_assert!((-3.0..=5.0).contains(&x));
        prop_assert_eq!((x * f64::from(1u32 << bits)).fract(), 0.0);
    }
}
