use mckp::bissa::{bissa, BissaOutcome};
use mckp::frontier::pareto_filter;
use mckp::harness::{generate, Correlation, GenSpec};
use mckp::kissa::{certify, compute_j1, kissa, KissaConfig, SelectionRule, Termination};
use mckp::model::Instance;
use mckp::oracle::{brute_force, dp_solve, is_pareto_optimal};
use proptest::prelude::*;

fn instances() -> impl Strategy<Value = Instance<f64>> {
    prop::collection::vec(prop::collection::vec((0u32..=40, 0u32..=40), 1..=5), 1..=5).prop_flat_map(|cats| {
        let low: u32 = cats.iter().map(|c| c.iter().map(|x| x.1).min().unwrap()).sum();
        let high: u32 = cats.iter().map(|c| c.iter().map(|x| x.1).max().unwrap()).sum();
        (Just(cats), low.max(1)..=high.max(1)).prop_map(|(cats, b)| {
            let pairs: Vec<Vec<(f64, f64)>> = cats
                .iter()
                .map(|c| c.iter().map(|&(p, c)| (p as f64, c as f64)).collect())
                .collect();
            Instance::from_pairs(&pairs, b as f64).unwrap()
        })
    })
}

fn rules() -> impl Strategy<Value = SelectionRule> {
    prop_oneof![
        Just(SelectionRule::MaxProfit),
        Just(SelectionRule::First),
        Just(SelectionRule::BestSlack),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn run_invariants(inst in instances(), rule in rules()) {
        let Ok(BissaOutcome::Straddle(pair)) = bissa(&inst) else { return Ok(()); };
        prop_assert!(!compute_j1(&inst, &pair.xa, &pair.xb).is_empty());

        let config = KissaConfig { rule, ..KissaConfig::default() };
        let run = kissa(&inst, &pair, &config).unwrap();
        let best = brute_force(&inst).unwrap().optimum_profit;

        let mut profit = pair.point_a.f1;
        for it in &run.iterations {
            if it.chosen.is_some() {
                prop_assert!(it.xa_point.f1 > profit);
                prop_assert!(it.xa_point.cost() <= inst.budget());
                profit = it.xa_point.f1;
            } else {
                prop_assert_eq!(it.xa_point.f1, profit);
            }
        }
        prop_assert_eq!(run.improvements, run.iterations.iter().filter(|it| it.chosen.is_some()).count());

        let fin = inst.evaluate(&run.final_selection).unwrap();
        prop_assert_eq!(fin, run.final_point);
        prop_assert!(inst.is_feasible(&run.final_selection).unwrap());
        prop_assert!(pair.point_a.f1 <= fin.f1 && fin.f1 <= best);

        for (j, &i) in run.final_selection.chosen().iter().enumerate() {
            let front = pareto_filter(j, inst.category(j)).pareto_items;
            let it = inst.item(j, i);
            prop_assert!(
                front.iter().any(|&k| inst.item(j, k) == it),
                "category {} item {} left the frontier", j, i
            );
        }

        if certify(&inst, &run, true) {
            prop_assert!(is_pareto_optimal(&inst, &run.final_selection).unwrap());
            prop_assert!(run.termination != Termination::MaxIterations);
        }
        prop_assert!(!certify(&inst, &run, false));
    }

    #[test]
    fn dp_bounds_generated_runs(seed in 0u64..10_000, weak in any::<bool>()) {
        let corr = if weak { Correlation::Weak } else { Correlation::Uncorrelated };
        let inst = generate(&GenSpec::new(8, 6, corr, seed)).unwrap();
        let exact = dp_solve(&inst).unwrap().optimum_profit;
        let outcome = bissa(&inst).unwrap();
        let fin = match &outcome {
            BissaOutcome::Optimal { point, .. } => point.f1,
            BissaOutcome::Straddle(pair) => kissa(&inst, pair, &KissaConfig::default()).unwrap().final_point.f1,
        };
        prop_assert!(outcome.feasible_point().f1 <= fin && fin <= exact);
    }
}

#[test]
fn iteration_cap_stops_the_run() {
    // Weakly correlated instances are where improvements show up.
    for seed in 1..=50 {
        let inst = generate(&GenSpec::new(20, 20, Correlation::Weak, seed)).unwrap();
        let Ok(BissaOutcome::Straddle(pair)) = bissa(&inst) else {
            continue;
        };
        let full = kissa(&inst, &pair, &KissaConfig::default()).unwrap();
        if full.improvements == 0 {
            continue;
        }
        let config = KissaConfig {
            max_iterations: 1,
            ..KissaConfig::default()
        };
        let capped = kissa(&inst, &pair, &config).unwrap();
        assert_eq!(capped.termination, Termination::MaxIterations);
        assert_eq!(capped.improvements, 1);
        assert!(!certify(&inst, &capped, true));
        return;
    }
    panic!("no improving instance among 50 seeds");
}
