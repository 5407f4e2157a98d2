use capdp::gen::Rng64;
use capdp::*;
use proptest::prelude::*;

fn knapsack_items() -> impl Strategy<Value = (Vec<(usize, i64)>, usize)> {
    (prop::collection::vec((1usize..=12, 1i64..=40), 0..20), 0usize..=80)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn knapsack_solvers_agree((items, cap) in knapsack_items()) {
        let inst = Knapsack::new(items, cap).unwrap();
        let bellman = solve_knapsack_bellman(&inst).unwrap();
        prop_assert_eq!(&solve_knapsack_td(&inst).unwrap(), &bellman);
        prop_assert_eq!(Ext::Finite(solve_knapsack_value_domain(&inst).unwrap()), bellman.at(cap));
    }

    #[test]
    fn knapsack_is_scalar_generic((items, cap) in knapsack_items()) {
        let narrow: Vec<(usize, i32)> = items.iter().map(|&(w, v)| (w, v as i32)).collect();
        let wide: Vec<(usize, i128)> = items.iter().map(|&(w, v)| (w, v as i128)).collect();
        let a = solve_knapsack_td(&KnapsackInstance::new(narrow, cap).unwrap()).unwrap();
        let b = solve_knapsack_td(&KnapsackInstance::new(wide, cap).unwrap()).unwrap();
        let a: Vec<Option<i128>> = a.iter().map(|e| e.finite().map(i128::from)).collect();
        let b: Vec<Option<i128>> = b.iter().map(|e| e.finite()).collect();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn unbounded_solvers_agree(
        items in prop::collection::vec((1usize..=15, 1i64..=30), 1..8),
        cap in 0usize..=600,
    ) {
        let inst = Unbounded::new(items, cap).unwrap();
        let dp = solve_unbounded_dp(&inst).unwrap().at(cap);
        prop_assert_eq!(Ext::Finite(solve_unbounded_doubling(&inst).unwrap()), dp);
        prop_assert_eq!(Ext::Finite(solve_unbounded_steinitz(&inst).unwrap()), dp);
        prop_assert_eq!(Ext::Finite(solve_unbounded_value_domain(&inst).unwrap()), dp);
    }

    #[test]
    fn separated_matches_dp(
        a in prop::collection::vec(-50i64..=50, 1..60),
        k in 1usize..6,
        delta in 1usize..5,
    ) {
        let dp = sparse_separated_dp(&a, k, delta);
        match solve_sparse_separated(&a, k, delta) {
            Ok(sol) => prop_assert_eq!(sol.value, dp.unwrap() as i128),
            Err(e) => prop_assert_eq!(Err(e), dp),
        }
    }

    #[test]
    fn monge_solvers_agree(seed in any::<u64>(), n in 1usize..40) {
        let mut rng = Rng64::new(seed);
        let g: Monge = gen_random_monge(&mut rng, n, 5).unwrap();
        let dp = monge_dp_profile(&g, 0, n).unwrap();
        prop_assert_eq!(&monge_all_k(&g, 0, n).unwrap(), &dp);
        let k = 1 + (seed as usize % n);
        prop_assert_eq!(Ext::Finite(monge_best_path(&g, 0, n, k).unwrap().value as i64), dp.at_most().at(k));
        prop_assert_eq!(monge_all_targets(&g, 0, k).unwrap(), monge_dp_all_targets(&g, 0, k).unwrap());
    }
}

#[test]
fn knapsack_gadgets_reproduce_small_optima() {
    let mut rng = Rng64::new(2);
    for _ in 0..50 {
        let n = 1 + rng.below(3) as usize;
        let items: Vec<(usize, i64)> = (0..n).map(|_| (1 + rng.below(3) as usize, rng.range_i64(1, 6))).collect();
        let cap = rng.below(7) as usize;
        let inst = Knapsack::new(items, cap).unwrap();
        let want = solve_knapsack_bellman(&inst).unwrap().at(cap).finite().unwrap() as i128;
        for gadget in [knapsack_to_dag(&inst).unwrap(), knapsack_to_transitive_dag(&inst).unwrap()] {
            let sol = solve_lagrangian(&gadget.dag, gadget.source, gadget.sink, gadget.budget);
            let best = dp_hop_profile(&gadget.dag, gadget.source, gadget.sink, gadget.budget)
                .unwrap()
                .at_most()
                .at(gadget.budget);
            let best = best.finite().unwrap() as i128;
            assert_eq!((best - gadget.offset.to_wide()) / gadget.scale.to_wide(), want);
            // Gadget profiles need not be concave; the search then yields an upper bound.
            if let Ok(sol) = sol {
                assert!(sol.value >= best);
            }
        }
    }
}
