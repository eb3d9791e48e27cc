use num_complex::Complex64;
use proptest::prelude::*;

use starinv_core::bounds::{self, Regime};
use starinv_core::series::{self, NormalizedSchlicht, PowerSeries};
use starinv_core::verify::{self, Subject, Tolerance};
use starinv_core::zoo;

const REL: f64 = 1e-8;
const ABS: f64 = 1e-12;

fn close(a: Complex64, b: Complex64, scale: f64) -> bool {
    (a - b).norm() <= REL * scale + ABS
}

fn unit_series(order: usize) -> impl Strategy<Value = PowerSeries> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), order).prop_map(|tail| {
        let mut coeffs = vec![Complex64::new(1.0, 0.0)];
        coeffs.extend(tail.into_iter().map(|(re, im)| Complex64::new(re, im)));
        PowerSeries::new(coeffs).unwrap()
    })
}

fn sampled(order: usize) -> impl Strategy<Value = (f64, NormalizedSchlicht)> {
    (0usize..10, any::<u64>()).prop_map(move |(tenth, seed)| {
        let alpha = tenth as f64 / 10.0;
        let f = zoo::sample_starlike(alpha, seed, order)
            .unwrap()
            .realize()
            .unwrap();
        (alpha, f)
    })
}

/// Test-only oracle: solve f(g(w)) = w degree by degree.
fn forward_substitution_inverse(f: &NormalizedSchlicht, n_max: usize) -> Vec<Complex64> {
    let mut g = vec![Complex64::new(0.0, 0.0); n_max + 1];
    g[1] = Complex64::new(1.0, 0.0);
    for n in 2..=n_max {
        let partial = PowerSeries::new(g.clone()).unwrap();
        let fg = series::compose(&f.series().truncated(n_max), &partial).unwrap();
        g[n] = -fg[n];
    }
    g
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn unit_pow_group_law(h in unit_series(10), b1 in -3.0f64..3.0, b2 in -3.0f64..3.0) {
        let lhs = series::unit_pow(&h, b1 + b2).unwrap();
        let rhs = series::ps_mul(&series::unit_pow(&h, b1).unwrap(), &series::unit_pow(&h, b2).unwrap()).unwrap();
        let scale = lhs.max_abs().max(rhs.max_abs());
        for k in 0..=10 {
            prop_assert!(close(lhs[k], rhs[k], scale), "k={k}: {} vs {}", lhs[k], rhs[k]);
        }
    }

    #[test]
    fn unit_pow_integer_matches_repeated_product(h in unit_series(8), k in -3i32..=4) {
        let pw = series::unit_pow(&h, k as f64).unwrap();
        let base = if k >= 0 { h.clone() } else { series::unit_pow(&h, -1.0).unwrap() };
        let mut product = PowerSeries::one(8);
        for _ in 0..k.unsigned_abs() {
            product = series::ps_mul(&product, &base).unwrap();
        }
        let scale = pw.max_abs().max(product.max_abs());
        for i in 0..=8 {
            prop_assert!(close(pw[i], product[i], scale));
        }
    }

    #[test]
    fn reversion_round_trip((alpha, f) in sampled(16)) {
        let report = verify::verify_roundtrip(&Subject::new("s", alpha, f), 16, Tolerance::new(REL, ABS)).unwrap();
        prop_assert!(report.all_pass(), "{:?}", report.failures().next());
    }

    #[test]
    fn reversion_matches_forward_substitution((_alpha, f) in sampled(12)) {
        let lagrange = series::revert(&f, 12).unwrap();
        let oracle = forward_substitution_inverse(&f, 12);
        let scale = lagrange.series().max_abs();
        for (n, &want) in oracle.iter().enumerate() {
            prop_assert!(close(lagrange.coeff(n), want, scale));
        }
    }

    #[test]
    fn jabotinsky_consistency((alpha, f) in sampled(19)) {
        let report = verify::verify_jabotinsky(
            &Subject::new("s", alpha, f),
            &[-3, -2, -1, 1, 2, 3],
            15,
            Tolerance::new(REL, ABS),
        ).unwrap();
        prop_assert!(report.all_pass(), "{:?}", report.failures().next());
    }

    #[test]
    fn log_derivative_adds_over_products(h1 in unit_series(9), h2 in unit_series(9)) {
        // F = z h1 h2 has zF'/F = 1 + zh1'/h1 + zh2'/h2.
        let f1 = NormalizedSchlicht::from_unit(&h1).unwrap();
        let f2 = NormalizedSchlicht::from_unit(&h2).unwrap();
        let prod = NormalizedSchlicht::from_unit(&series::ps_mul(&h1, &h2).unwrap()).unwrap();
        let q = series::log_derivative(&prod, 9).unwrap();
        let q1 = series::log_derivative(&f1, 9).unwrap();
        let q2 = series::log_derivative(&f2, 9).unwrap();
        let scale = q.max_abs().max(q1.max_abs()).max(q2.max_abs());
        prop_assert!(close(q[0], Complex64::new(1.0, 0.0), 1.0));
        for n in 1..=9 {
            prop_assert!(close(q[n], q1[n] + q2[n], scale));
        }
    }

    #[test]
    fn sigma_transform_inverts((_alpha, f) in sampled(16)) {
        let back = zoo::to_sigma(&f).unwrap().to_schlicht().unwrap();
        for n in 0..=16 {
            prop_assert!(close(back.coeff(n), f.coeff(n), f.series().max_abs()));
        }
    }

    #[test]
    fn sigma_inverse_matches_reciprocal_power((_alpha, f) in sampled(14)) {
        let b = zoo::sigma_inverse_coeffs(&f, 10).unwrap();
        let block = series::inverse_power_coeffs(&f, -1, 10).unwrap();
        for n in 0..=10 {
            prop_assert!(close(b.coeff(n), block.coeff(n as i64).unwrap(), 1.0 + b.coeff(n).norm()));
        }
    }

    #[test]
    fn regime_boundaries_are_half_open(n in 2usize..20) {
        for k in 0..n {
            let alpha = k as f64 / n as f64;
            prop_assert_eq!(bounds::interval_index(alpha, n).unwrap(), k);
            let below = alpha - 1e-9;
            if below >= 0.0 {
                prop_assert_eq!(bounds::interval_index(below, n).unwrap(), k - 1);
            }
        }
    }
}

#[test]
fn koebe_alpha_n_is_sparse_and_real() {
    for n in 2..7 {
        for i in 0..10 {
            let alpha = i as f64 / 10.0;
            let f = zoo::koebe_alpha_n(alpha, n, 30).unwrap();
            for j in 0..=30 {
                if j % n != 1 {
                    assert_eq!(f.coeff(j), Complex64::new(0.0, 0.0));
                }
                assert!(f.coeff(j).im.abs() <= 1e-15);
            }
            let k = zoo::koebe_alpha(alpha, 30).unwrap();
            assert!(k.series().coeffs().iter().all(|c| c.im.abs() <= 1e-15));
        }
    }
}

#[test]
fn sampler_one_atom_collapses_to_koebe_alpha() {
    for i in 0..10 {
        let alpha = i as f64 / 10.0;
        let spec = zoo::StarlikeSpec::new(
            alpha,
            vec![zoo::Atom {
                re: 1.0,
                im: 0.0,
                lambda: 1.0,
            }],
            24,
        )
        .unwrap();
        let f = spec.realize().unwrap();
        let k = zoo::koebe_alpha(alpha, 24).unwrap();
        for n in 0..=24 {
            assert!((f.coeff(n) - k.coeff(n)).norm() <= 1e-12 * k.coeff(n).norm());
        }
    }
}

#[test]
fn sampled_margin_is_nonnegative() {
    // High order so the truncated tail is invisible at r = 0.9.
    for seed in 0..100u64 {
        let alpha = (seed % 10) as f64 / 10.0;
        let f = zoo::sample_starlike(alpha, seed, 300)
            .unwrap()
            .realize()
            .unwrap();
        let margin = zoo::starlike_order_margin(&f, alpha, &[0.3, 0.6, 0.9], 48).unwrap();
        assert!(margin >= -1e-6, "seed {seed}: margin {margin}");
    }
}

#[test]
fn gamma_product_matches_lanczos_gamma() {
    use statrs::function::gamma::gamma;
    for n in 1..=12usize {
        for i in 0..100 {
            let alpha = i as f64 / 100.0;
            let c = 2.0 * n as f64 * (1.0 - alpha);
            for m in 0..=n + 1 {
                let args = [c + 1.0, m as f64 + 1.0, c + 1.0 - m as f64];
                if args.iter().any(|&a| a <= 0.05) {
                    continue;
                }
                let lanczos = gamma(args[0]) / (gamma(args[1]) * gamma(args[2]));
                let product = bounds::gamma_ratio_product(c, m);
                assert!(
                    (product - lanczos).abs() <= 1e-10 * lanczos.abs(),
                    "c={c} m={m}: {product} vs {lanczos}"
                );
            }
        }
    }
}

#[test]
fn exactly_one_regime_per_point() {
    for n in 2..=15usize {
        for i in 0..1000 {
            let alpha = i as f64 / 1000.0;
            let k = bounds::interval_index(alpha, n).unwrap();
            let t1 = bounds::thm1_bound(n, alpha).unwrap();
            let expected = if k == n - 1 {
                Regime::T1c
            } else if k <= 1 {
                Regime::T1a
            } else {
                Regime::T1b
            };
            assert_eq!(t1.regime, expected);
            let t3 = bounds::thm3_bound(n, alpha).unwrap();
            assert_eq!(
                t3.regime,
                if k == n - 1 { Regime::T3c } else { Regime::T3b }
            );
            assert!(t1.value >= 0.0 && t3.value >= 0.0);
        }
    }
}

#[test]
fn thm1_nonincreasing_within_regimes() {
    for n in 2..=12usize {
        let mut prev: Option<(Regime, usize, f64)> = None;
        for i in 0..2000 {
            let alpha = i as f64 / 2000.0;
            let b = bounds::thm1_bound(n, alpha).unwrap();
            if let Some((regime, k, value)) = prev {
                if regime == b.regime && k == b.interval_k {
                    assert!(b.value <= value * (1.0 + 1e-12), "n={n} α={alpha}");
                }
            }
            prev = Some((b.regime, b.interval_k, b.value));
        }
    }
}
