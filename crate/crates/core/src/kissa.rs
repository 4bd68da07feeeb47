//! Chebyshev improvement of a bisection result.
//!
//! Starting from a feasible/infeasible straddle `(x^A, x^B)`, each iteration
//! looks at the categories where `x^A` is less profitable than `x^B`, solves
//! an augmented Chebyshev subproblem in each of them with the reference point
//! just above the category's ideal point and weights anchored at
//! `(p(x^A_j), -c(x^B_j))`, and swaps in one of the resulting items if that
//! raises profit and keeps the budget. The run stops when no category offers
//! a profitable item (`J` empty) or none of them fits (`J^b` empty).

use crate::bissa::StraddlePair;
use crate::error::{Error, Result};
use crate::frontier::{delta_bound, solve_chebyshev_subproblem, RhoBound};
use crate::model::{Instance, ObjectivePoint, Selection};
use crate::oracle;
use crate::scalar::Scalar;

/// How `j*` is picked among the feasible improving categories.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SelectionRule {
    /// Largest total profit after the swap.
    #[default]
    MaxProfit,
    /// Lowest category index.
    First,
    /// Largest remaining budget after the swap.
    BestSlack,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KissaConfig<T> {
    pub rho: T,
    pub epsilon: T,
    pub rule: SelectionRule,
    pub max_iterations: usize,
}

impl<T: Scalar> Default for KissaConfig<T> {
    fn default() -> Self {
        KissaConfig {
            rho: T::parse_decimal("1e-7").expect("literal"),
            epsilon: T::parse_decimal("1e-4").expect("literal"),
            rule: SelectionRule::MaxProfit,
            max_iterations: 10_000,
        }
    }
}

impl<T: Scalar> KissaConfig<T> {
    pub fn validate(&self) -> Result<()> {
        if self.rho <= T::zero() || self.epsilon <= T::zero() {
            return Err(Error::InvalidInstance(format!(
                "rho and epsilon must be positive (rho={}, epsilon={})",
                self.rho, self.epsilon
            )));
        }
        if self.max_iterations == 0 {
            return Err(Error::InvalidInstance("max_iterations must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct KissaIteration<T> {
    pub iter: usize,
    pub j1: Vec<usize>,
    pub j: Vec<usize>,
    pub jb: Vec<usize>,
    pub chosen: Option<usize>,
    /// Image of `x^A` at the end of the iteration.
    pub xa_point: ObjectivePoint<T>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Termination {
    /// No category produced a more profitable Chebyshev solution.
    JEmpty,
    /// Every profitable swap would break the budget.
    JbEmpty,
    MaxIterations,
}

#[derive(Debug, Clone, PartialEq)]
pub struct KissaRun<T> {
    pub final_selection: Selection,
    pub final_point: ObjectivePoint<T>,
    pub iterations: Vec<KissaIteration<T>>,
    pub improvements: usize,
    pub termination: Termination,
    pub rho: RhoBound<T>,
    /// Set by [`certify`].
    pub optimal_certificate: bool,
}

/// Result of one Step 1: the Chebyshev solution for every `j ∈ J¹` and the
/// subset `J` where it is strictly more profitable than `x^A_j`.
#[derive(Debug, Clone, PartialEq)]
pub struct KissaStep {
    pub j1: Vec<usize>,
    /// `(j, x^P_j)` for each `j ∈ J¹`, ascending in `j`.
    pub candidates: Vec<(usize, usize)>,
    pub j: Vec<usize>,
}

/// `{ j : p(x^A_j) < p(x^B_j) }`.
pub fn compute_j1<T: Scalar>(instance: &Instance<T>, xa: &Selection, xb: &Selection) -> Vec<usize> {
    (0..instance.num_categories())
        .filter(|&j| instance.item(j, xa.get(j)).profit < instance.item(j, xb.get(j)).profit)
        .collect()
}

pub fn kissa_step<T: Scalar>(
    instance: &Instance<T>,
    xa: &Selection,
    xb: &Selection,
    config: &KissaConfig<T>,
    rho: &RhoBound<T>,
) -> Result<KissaStep> {
    let j1 = compute_j1(instance, xa, xb);
    let mut candidates = Vec::with_capacity(j1.len());
    let mut j_set = Vec::new();
    for &j in &j1 {
        let cat = instance.category(j);
        let ystar = ObjectivePoint::new(cat.max_profit() + config.epsilon, -cat.min_cost() + config.epsilon);
        let a = instance.item(j, xa.get(j));
        let b = instance.item(j, xb.get(j));
        let lambda = [T::one() / (ystar.f1 - a.profit), T::one() / (ystar.f2 + b.cost)];
        let xp = solve_chebyshev_subproblem(cat, lambda, &ystar, rho.rho)?;
        candidates.push((j, xp));
        if a.profit < cat.item(xp).profit {
            j_set.push(j);
        }
    }
    Ok(KissaStep {
        j1,
        candidates,
        j: j_set,
    })
}

pub fn kissa<T: Scalar>(
    instance: &Instance<T>,
    straddle: &StraddlePair<T>,
    config: &KissaConfig<T>,
) -> Result<KissaRun<T>> {
    config.validate()?;
    instance.check_selection(&straddle.xa)?;
    instance.check_selection(&straddle.xb)?;
    if !instance.is_feasible(&straddle.xa)? {
        return Err(Error::InvalidSelection("x^A must be feasible".into()));
    }
    let rho = delta_bound(instance, config.rho);
    let budget = instance.budget();
    let xb = &straddle.xb;
    let mut xa = straddle.xa.clone();
    let mut point = instance.point_of(&xa);
    let mut iterations = Vec::new();
    let mut improvements = 0;

    for iter in 1..=config.max_iterations {
        let step = kissa_step(instance, &xa, xb, config, &rho)?;
        let mut record = KissaIteration {
            iter,
            j1: step.j1.clone(),
            j: step.j.clone(),
            jb: Vec::new(),
            chosen: None,
            xa_point: point,
        };
        if step.j.is_empty() {
            iterations.push(record);
            return Ok(finish(xa, point, iterations, improvements, Termination::JEmpty, rho));
        }

        // Image of x^{A_j} for each j ∈ J that stays within budget.
        let swaps: Vec<(usize, usize, ObjectivePoint<T>)> = step
            .candidates
            .iter()
            .filter(|(j, _)| step.j.contains(j))
            .map(|&(j, i)| {
                let old = instance.item(j, xa.get(j));
                let new = instance.item(j, i);
                let p = ObjectivePoint::new(point.f1 - old.profit + new.profit, point.f2 + old.cost - new.cost);
                (j, i, p)
            })
            .filter(|(_, _, p)| p.f2 >= -budget)
            .collect();
        record.jb = swaps.iter().map(|s| s.0).collect();
        if swaps.is_empty() {
            iterations.push(record);
            return Ok(finish(xa, point, iterations, improvements, Termination::JbEmpty, rho));
        }

        let (j_star, item, next) = pick(&swaps, config.rule, budget);
        debug_assert!(next.f1 > point.f1);
        xa = xa.with_item(j_star, item);
        point = next;
        improvements += 1;
        record.chosen = Some(j_star);
        record.xa_point = point;
        iterations.push(record);
    }
    Ok(finish(
        xa,
        point,
        iterations,
        improvements,
        Termination::MaxIterations,
        rho,
    ))
}

fn pick<T: Scalar>(
    swaps: &[(usize, usize, ObjectivePoint<T>)],
    rule: SelectionRule,
    budget: T,
) -> (usize, usize, ObjectivePoint<T>) {
    let key = |p: &ObjectivePoint<T>| match rule {
        SelectionRule::MaxProfit => p.f1,
        SelectionRule::BestSlack => budget + p.f2,
        SelectionRule::First => T::zero(),
    };
    // Strict comparison keeps the lowest category index on ties.
    let mut best = swaps[0];
    for s in &swaps[1..] {
        if key(&s.2) > key(&best.2) {
            best = *s;
        }
    }
    best
}

fn finish<T: Scalar>(
    xa: Selection,
    point: ObjectivePoint<T>,
    iterations: Vec<KissaIteration<T>>,
    improvements: usize,
    termination: Termination,
    rho: RhoBound<T>,
) -> KissaRun<T> {
    KissaRun {
        final_selection: xa,
        final_point: point,
        iterations,
        improvements,
        termination,
        rho,
        optimal_certificate: false,
    }
}

/// Certificate that the run's result is optimal.
///
/// Both stopping conditions certify optimality only when the final `x^A` is
/// Pareto optimal on the whole multiple-choice set, which is checked here by
/// exhaustive search when `oracle_pareto_check` is set and the instance is
/// small enough. Without that check no certificate is issued.
pub fn certify<T: Scalar>(instance: &Instance<T>, run: &KissaRun<T>, oracle_pareto_check: bool) -> bool {
    if run.termination == Termination::MaxIterations || !oracle_pareto_check {
        return false;
    }
    oracle::is_pareto_optimal(instance, &run.final_selection).unwrap_or(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bissa::{bissa, BissaOutcome};
    use crate::model::sample_instance;
    use crate::Exact;

    fn sel(v: &[usize]) -> Selection {
        Selection::new(v.to_vec())
    }

    fn straddle_of<T: Scalar>(inst: &Instance<T>) -> StraddlePair<T> {
        match bissa(inst).unwrap() {
            BissaOutcome::Straddle(s) => s,
            other => panic!("expected straddle, got {other:?}"),
        }
    }

    #[test]
    fn j1_examples() {
        let inst = sample_instance(4.0f64);
        assert!(compute_j1(&inst, &sel(&[0, 1]), &sel(&[0, 1])).is_empty());
        // x^A = 1001, x^B = 0110: profits 2 < 3 and 2 < 4.
        assert_eq!(compute_j1(&inst, &sel(&[0, 1]), &sel(&[1, 0])), vec![0, 1]);
        // x^A already max-profit in each category.
        assert!(compute_j1(&inst, &sel(&[1, 0]), &sel(&[0, 1])).is_empty());
    }

    #[test]
    fn sample_step_finds_profitable_item_in_first_category() {
        // x^A = 1010, x^B = 0110. Only category 1 is in J¹; its Chebyshev
        // solution is the (3, 3) item (see the frontier tests for the values).
        let inst = sample_instance(4.0f64);
        let cfg = KissaConfig::default();
        let rho = delta_bound(&inst, cfg.rho);
        let step = kissa_step(&inst, &sel(&[0, 0]), &sel(&[1, 0]), &cfg, &rho).unwrap();
        assert_eq!(step.j1, vec![0]);
        assert_eq!(step.candidates, vec![(0, 1)]);
        assert_eq!(step.j, vec![0]);
        let inst = sample_instance(Exact::from_integer(4));
        let cfg = KissaConfig::default();
        let rho = delta_bound(&inst, cfg.rho);
        let step = kissa_step(&inst, &sel(&[0, 0]), &sel(&[1, 0]), &cfg, &rho).unwrap();
        assert_eq!(step.candidates, vec![(0, 1)]);
    }

    #[test]
    fn unique_profit_max_never_enters_j() {
        let inst = Instance::from_pairs(&[vec![(1.0, 1.0), (9.0, 2.0), (5.0, 5.0)]], 100.0).unwrap();
        let cfg = KissaConfig::default();
        let rho = delta_bound(&inst, cfg.rho);
        let step = kissa_step(&inst, &sel(&[1]), &sel(&[2]), &cfg, &rho).unwrap();
        assert!(step.j1.is_empty() && step.j.is_empty());
    }

    #[test]
    fn singleton_categories_give_empty_j() {
        let inst = Instance::from_pairs(&[vec![(1.0, 1.0)], vec![(2.0, 2.0)]], 10.0).unwrap();
        let cfg = KissaConfig::default();
        let rho = delta_bound(&inst, cfg.rho);
        let step = kissa_step(&inst, &sel(&[0, 0]), &sel(&[0, 0]), &cfg, &rho).unwrap();
        assert!(step.j.is_empty());
    }

    #[test]
    fn sample_run_stops_on_budget_and_is_certified() {
        let inst = sample_instance(4.0f64);
        let straddle = straddle_of(&inst);
        let run = kissa(&inst, &straddle, &KissaConfig::default()).unwrap();
        assert_eq!(run.final_selection.to_binary(&[2, 2]), "1010");
        assert_eq!(run.improvements, 0);
        // Swapping in (3, 3) would cost 5 > 4.
        assert_eq!(run.termination, Termination::JbEmpty);
        assert_eq!(run.iterations.len(), 1);
        assert_eq!(run.iterations[0].j1, vec![0]);
        assert!(certify(&inst, &run, true));
        assert!(!certify(&inst, &run, false));
    }

    #[test]
    fn max_iteration_run_is_not_certified() {
        let inst = sample_instance(4.0f64);
        let straddle = straddle_of(&inst);
        let mut run = kissa(&inst, &straddle, &KissaConfig::default()).unwrap();
        run.termination = Termination::MaxIterations;
        assert!(!certify(&inst, &run, true));
    }

    #[test]
    fn dominated_final_selection_is_not_certified() {
        let inst = sample_instance(4.0f64);
        let straddle = straddle_of(&inst);
        let mut run = kissa(&inst, &straddle, &KissaConfig::default()).unwrap();
        // 0101 is dominated by 1010.
        run.final_selection = sel(&[1, 1]);
        assert!(!certify(&inst, &run, true));
    }

    #[test]
    fn improves_on_unsupported_point() {
        // Category 0 has an unsupported item (6, 5) between (0, 0) and (10, 7).
        // Bisection stops at x^A = (0,0)+(0,0), x^B = (10,7)+(0,0); the
        // Chebyshev step reaches (6, 5), which fits the budget of 6.
        let inst = Instance::from_pairs(&[vec![(0.0, 0.0), (6.0, 5.0), (10.0, 7.0)], vec![(0.0, 0.0)]], 6.0).unwrap();
        let straddle = straddle_of(&inst);
        assert_eq!(straddle.xa.chosen(), &[0, 0]);
        assert_eq!(straddle.xb.chosen(), &[2, 0]);
        let run = kissa(&inst, &straddle, &KissaConfig::default()).unwrap();
        assert_eq!(run.final_selection.chosen(), &[1, 0]);
        assert_eq!(run.improvements, 1);
        assert_eq!(run.final_point.f1, 6.0);
        assert_eq!(run.iterations.last().unwrap().chosen, None);
    }

    #[test]
    fn rules_choose_different_categories() {
        let swaps = vec![
            (0, 1, ObjectivePoint::new(10.0, -8.0)),
            (2, 1, ObjectivePoint::new(12.0, -9.5)),
            (3, 0, ObjectivePoint::new(11.0, -7.0)),
        ];
        assert_eq!(pick(&swaps, SelectionRule::MaxProfit, 10.0).0, 2);
        assert_eq!(pick(&swaps, SelectionRule::First, 10.0).0, 0);
        assert_eq!(pick(&swaps, SelectionRule::BestSlack, 10.0).0, 3);
    }

    #[test]
    fn config_validation() {
        let mut cfg = KissaConfig::<f64>::default();
        assert_eq!(cfg.rho, 1e-7);
        assert_eq!(cfg.epsilon, 1e-4);
        cfg.rho = 0.0;
        assert!(cfg.validate().is_err());
    }
}
