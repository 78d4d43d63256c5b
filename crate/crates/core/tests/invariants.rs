use ivfg_core::ensemble::make_partitions;
use ivfg_core::fg::scalar_sugeno;
use ivfg_core::network::{self, AffinityKind, AffinityMatrix, IvAffinityMatrix};
use ivfg_core::{
    AdmissibleOrder, Aggregator, FPreset, FgFunctional, Interval, IvFuzzyMeasure, MivSpec, Outer,
    ScalarMeasure, ScalarOp,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn interval() -> impl Strategy<Value = Interval> {
    prop_oneof![
        (0.0..=1.0f64, 0.0..=1.0f64).prop_map(|(a, b)| Interval::new(a.min(b), a.max(b)).unwrap()),
        // Quarter grid, so that exact ties are common.
        (0u8..=4, 0u8..=4).prop_map(|(a, b)| {
            let (a, b) = (a as f64 / 4.0, b as f64 / 4.0);
            Interval::new(a.min(b), a.max(b)).unwrap()
        }),
    ]
}

fn order() -> impl Strategy<Value = AdmissibleOrder> {
    prop_oneof![
        Just(AdmissibleOrder::xu_yager()),
        Just(AdmissibleOrder::lex1()),
        Just(AdmissibleOrder::lex2()),
        (0.0..=1.0f64, 0.0..=1.0f64)
            .prop_filter("alpha != beta", |(a, b)| (a - b).abs() > 1e-3)
            .prop_map(|(a, b)| AdmissibleOrder::alpha_beta(a, b).unwrap()),
    ]
}

fn f_preset() -> impl Strategy<Value = FPreset> {
    prop_oneof![
        Just(FPreset::Meet),
        Just(FPreset::Sugeno1),
        Just(FPreset::Sugeno2),
        Just(FPreset::Miv(MivSpec::new(0.5, ScalarOp::Product, ScalarOp::Product).unwrap())),
    ]
}

fn aggregator() -> impl Strategy<Value = Aggregator> {
    prop_oneof![
        Just(Aggregator::Max(Outer::Identity)),
        Just(Aggregator::Max(Outer::Square)),
        Just(Aggregator::Proj1(Outer::Sqrt)),
        Just(Aggregator::Mean),
        Just(Aggregator::CappedSum),
    ]
}

proptest! {
    #[test]
    fn order_is_total_and_transitive(ord in order(), x in interval(), y in interval(), z in interval()) {
        prop_assert_eq!(ord.compare(x, y), ord.compare(y, x).reverse());
        if ord.le(x, y) && ord.le(y, z) {
            prop_assert!(ord.le(x, z));
        }
        if ord.le(x, y) && ord.le(y, x) {
            prop_assert!(x.approx_eq(y, 1e-9));
        }
    }

    #[test]
    fn order_refines_componentwise(ord in order(), x in interval(), y in interval()) {
        let lo = Interval::new(x.lower().min(y.lower()), x.upper().min(y.upper())).unwrap();
        let hi = Interval::new(x.lower().max(y.lower()), x.upper().max(y.upper())).unwrap();
        prop_assert!(ord.le(lo, hi));
        prop_assert_eq!(ord.min(x, y), if ord.le(x, y) { x } else { y });
    }

    #[test]
    fn k_lambda_round_trip(x in interval(), alpha in prop_oneof![Just(0.0), Just(1.0), 0.0..=1.0f64]) {
        let back = Interval::from_k_lambda(alpha, x.k_alpha(alpha), x.lambda_alpha(alpha));
        prop_assert!(back.approx_eq(x, 1e-12), "{} -> {}", x, back);
    }

    #[test]
    fn display_parse_round_trip(x in interval()) {
        let back: Interval = x.to_string().parse().unwrap();
        prop_assert!(back.approx_eq(x, 1e-11));
    }

    #[test]
    fn symmetric_measure_ignores_input_order(
        ord in order(),
        f in f_preset(),
        g in aggregator(),
        xs in prop::collection::vec(interval(), 1..6),
        rot in 0usize..6,
    ) {
        let n = xs.len();
        let fg = FgFunctional::new(IvFuzzyMeasure::power(n, 1.5).unwrap(), ord, f, g).unwrap();
        let mut ys = xs.clone();
        ys.rotate_left(rot % n);
        ys.reverse();
        let (a, b) = (fg.evaluate(&xs).unwrap(), fg.evaluate(&ys).unwrap());
        prop_assert!(a.approx_eq(b, 1e-12), "{} vs {}", a, b);
    }

    #[test]
    fn max_with_meet_never_leaves_the_input_range(
        ord in order(),
        xs in prop::collection::vec(interval(), 1..5),
        seed in any::<u64>(),
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = IvFuzzyMeasure::random_monotone(xs.len(), &ord, &mut rng).unwrap();
        let fg = FgFunctional::new(m, ord, FPreset::Meet, Aggregator::Max(Outer::Identity)).unwrap();
        let s = fg.evaluate(&xs).unwrap();
        prop_assert!(ord.le(ord.min_of(&xs).unwrap(), s) && ord.le(s, ord.max_of(&xs).unwrap()));
    }

    #[test]
    fn degenerate_inputs_recover_the_scalar_integral(
        xs in prop::collection::vec(0.0..=1.0f64, 1..7),
        p in prop_oneof![Just(1.0), 0.5..3.0f64],
    ) {
        let n = xs.len();
        let fg = FgFunctional::new(
            IvFuzzyMeasure::power(n, p).unwrap(),
            AdmissibleOrder::xu_yager(),
            FPreset::Meet,
            Aggregator::Max(Outer::Identity),
        )
        .unwrap();
        let ivs: Vec<Interval> = xs.iter().map(|&x| Interval::degenerate(x).unwrap()).collect();
        let got = fg.evaluate(&ivs).unwrap();
        let want = scalar_sugeno(&ScalarMeasure::power(n, p).unwrap(), &xs).unwrap();
        prop_assert!((got.lower() - want).abs() < 1e-12 && (got.upper() - want).abs() < 1e-12);
    }

    #[test]
    fn partitions_split_every_trial_once(
        n in 2usize..60,
        k in 1usize..6,
        fraction in 0.1..0.9f64,
        seed in any::<u64>(),
    ) {
        let ids: Vec<String> = (0..n).map(|i| format!("t{i:03}")).collect();
        let Ok(parts) = make_partitions(&ids, k, fraction, seed) else {
            return Ok(());
        };
        prop_assert_eq!(parts.len(), k);
        for p in &parts {
            prop_assert_eq!(p.train.len() + p.test.len(), n);
            prop_assert!(!p.test.is_empty());
            let mut all: Vec<&String> = p.train.iter().chain(&p.test).collect();
            all.sort();
            all.dedup();
            prop_assert_eq!(all.len(), n);
        }
    }

    #[test]
    fn network_invariants(n in 2usize..40, degree in 1usize..5, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = network::random_graph(&mut rng, n, degree);
        for kind in [AffinityKind::Bf, AffinityKind::Bcf] {
            let f = AffinityMatrix::compute(&g, kind);
            prop_assert!(f.row(0).iter().all(|v| (0.0..=1.0 + 1e-12).contains(v)));
            prop_assert!(IvAffinityMatrix::from_affinities(&f).is_symmetric());
            let report = network::centralities(&g, kind, &FgFunctional::network(1).unwrap()).unwrap().report;
            for c in &report.actors {
                prop_assert_eq!(c.generosity, c.altruism - c.egoism);
                prop_assert!((0.0..=1.0).contains(&c.asymmetry));
            }
        }
        let bf = AffinityMatrix::compute(&g, AffinityKind::Bf);
        for x in 0..n {
            if g.row_sum(x) > 0.0 {
                prop_assert!((bf.row(x).iter().sum::<f64>() - 1.0).abs() < 1e-9);
            }
        }
    }
}

/// The worked example with `G` = mean, `F = X²Y + X(1 − Y)` and
/// `m(A) = (|A|/n)²`, evaluated on degenerate inputs.
fn closed_form(xs: &[f64], shift: usize) -> f64 {
    let n = xs.len() as f64;
    let mut sorted = xs.to_vec();
    sorted.sort_by(f64::total_cmp);
    let mean = sorted.iter().sum::<f64>() / n;
    let correction: f64 = sorted
        .iter()
        .enumerate()
        .map(|(k, &x)| {
            let i = (k + 1) as f64;
            ((n - i + shift as f64) / n).powi(2) * (x * x - x)
        })
        .sum::<f64>()
        / n;
    mean + correction
}

fn example_functional(n: usize) -> FgFunctional {
    FgFunctional::new(
        IvFuzzyMeasure::power(n, 2.0).unwrap(),
        AdmissibleOrder::xu_yager(),
        FPreset::Sugeno1,
        Aggregator::Mean,
    )
    .unwrap()
}

#[test]
fn closed_form_example_uses_tail_cardinality() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for n in 1..=6 {
        let fg = example_functional(n);
        for _ in 0..200 {
            let xs: Vec<f64> = (0..n).map(|_| rand::Rng::gen::<f64>(&mut rng)).collect();
            let ivs: Vec<Interval> = xs.iter().map(|&x| Interval::degenerate(x).unwrap()).collect();
            let got = fg.evaluate(&ivs).unwrap();
            let want = closed_form(&xs, 1);
            assert!((got.lower() - want).abs() < 1e-12, "n={n} {xs:?}: {got} vs {want}");
            assert!(got.is_degenerate());
        }
    }
}

#[test]
fn printed_coefficient_differs() {
    let fg = example_functional(2);
    let x = Interval::degenerate(0.5).unwrap();
    let got = fg.evaluate(&[x, x]).unwrap();
    // m(E_σ(1)) = 1 and m(E_σ(2)) = 1/4 give 0.5 − (1 + 1/4)·0.25/2.
    assert!((got.lower() - 0.34375).abs() < 1e-15);
    assert!((closed_form(&[0.5, 0.5], 1) - 0.34375).abs() < 1e-15);
    // With ((n − i)/n)² the coefficients are 1/4 and 0.
    assert!((closed_form(&[0.5, 0.5], 0) - 0.46875).abs() < 1e-15);
}
