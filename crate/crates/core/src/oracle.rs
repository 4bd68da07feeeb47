//! Exact solvers used as ground truth.
//!
//! [`brute_force`] and [`pareto_enumerate`] enumerate the whole
//! multiple-choice set and are only meant for tiny instances.
//! [`dp_solve`] is a dynamic program over integer costs: after each category
//! it keeps the nondominated `(cost, profit)` states, and states whose
//! Lagrangian upper bound falls below a greedy incumbent are dropped.

use crate::error::{Error, Result};
use crate::frontier::{pareto_filter, supported_filter};
use crate::model::{Instance, ObjectivePoint, Selection};
use crate::scalar::Scalar;

/// Largest selection count [`brute_force`] will enumerate.
pub const BRUTE_FORCE_LIMIT: u128 = 10_000_000;
/// Largest selection count [`pareto_enumerate`] will enumerate.
pub const PARETO_ENUMERATION_LIMIT: u128 = 100_000;
/// Memory ceiling for the DP state tables.
pub const DP_MEMORY_LIMIT_BYTES: usize = 2 << 30;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Brute,
    Dp,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExactResult<T> {
    pub optimum_profit: T,
    pub optimum_selection: Selection,
    pub method: Method,
}

fn guard<T: Scalar>(instance: &Instance<T>, limit: u128, what: &str) -> Result<()> {
    let count = instance.selection_count();
    if count > limit {
        return Err(Error::GuardExceeded(format!(
            "{what} would enumerate {count} selections (limit {limit})"
        )));
    }
    Ok(())
}

/// Visits every selection in lexicographic order.
fn for_each_selection<T: Scalar>(instance: &Instance<T>, mut visit: impl FnMut(&[usize])) {
    let sizes: Vec<usize> = instance.categories().iter().map(|c| c.len()).collect();
    let mut idx = vec![0usize; sizes.len()];
    loop {
        visit(&idx);
        let mut j = sizes.len();
        loop {
            if j == 0 {
                return;
            }
            j -= 1;
            idx[j] += 1;
            if idx[j] < sizes[j] {
                break;
            }
            idx[j] = 0;
        }
    }
}

fn infeasible<T: Scalar>(instance: &Instance<T>) -> Error {
    Error::Infeasible {
        min_cost: instance.min_total_cost().to_f64().unwrap_or(f64::NAN),
        budget: instance.budget().to_f64().unwrap_or(f64::NAN),
    }
}

/// Most profitable feasible selection; ties go to the lexicographically
/// smallest selection.
pub fn brute_force<T: Scalar>(instance: &Instance<T>) -> Result<ExactResult<T>> {
    guard(instance, BRUTE_FORCE_LIMIT, "brute force")?;
    let budget = instance.budget();
    let mut best: Option<(T, Vec<usize>)> = None;
    for_each_selection(instance, |idx| {
        let (mut p, mut c) = (T::zero(), T::zero());
        for (j, &i) in idx.iter().enumerate() {
            let it = instance.item(j, i);
            p = p + it.profit;
            c = c + it.cost;
        }
        if c <= budget && best.as_ref().is_none_or(|(bp, _)| p > *bp) {
            best = Some((p, idx.to_vec()));
        }
    });
    let (optimum_profit, sel) = best.ok_or_else(|| infeasible(instance))?;
    Ok(ExactResult {
        optimum_profit,
        optimum_selection: Selection::new(sel),
        method: Method::Brute,
    })
}

/// All Pareto optimal selections of the bi-objective problem, in
/// lexicographic order, with their images.
pub fn pareto_enumerate<T: Scalar>(instance: &Instance<T>) -> Result<Vec<(Selection, ObjectivePoint<T>)>> {
    guard(instance, PARETO_ENUMERATION_LIMIT, "Pareto enumeration")?;
    let mut all = Vec::new();
    for_each_selection(instance, |idx| {
        let sel = Selection::new(idx.to_vec());
        let p = instance.point_of(&sel);
        all.push((sel, p));
    });
    let images: Vec<ObjectivePoint<T>> = all.iter().map(|(_, p)| *p).collect();
    Ok(all
        .into_iter()
        .filter(|(_, p)| !images.iter().any(|q| q.dominates(p)))
        .collect())
}

/// Whether no selection dominates `sel`, by exhaustive search.
pub fn is_pareto_optimal<T: Scalar>(instance: &Instance<T>, sel: &Selection) -> Result<bool> {
    guard(instance, BRUTE_FORCE_LIMIT, "Pareto check")?;
    let target = instance.evaluate(sel)?;
    let mut dominated = false;
    for_each_selection(instance, |idx| {
        if !dominated {
            let p = instance.point_of(&Selection::new(idx.to_vec()));
            dominated = p.dominates(&target);
        }
    });
    Ok(!dominated)
}

pub fn dp_solve<T: Scalar>(instance: &Instance<T>) -> Result<ExactResult<T>> {
    dp_solve_with(instance, true)
}

#[derive(Clone, Copy)]
struct State<T> {
    cost: i64,
    profit: T,
    parent: u32,
    item: u32,
}

/// Category data after cost shifting: frontier items only, cheapest at 0.
struct Reduced<T> {
    items: Vec<usize>,
    costs: Vec<i64>,
    profits: Vec<T>,
}

/// `prune = false` keeps every nondominated state (no bounding).
pub(crate) fn dp_solve_with<T: Scalar>(instance: &Instance<T>, prune: bool) -> Result<ExactResult<T>> {
    let budget = instance
        .budget()
        .to_exact_integer()
        .ok_or_else(|| Error::Unsupported(format!("budget {} is not an integer", instance.budget())))?;

    let mut reduced = Vec::with_capacity(instance.num_categories());
    let mut base_cost = 0i64;
    for (j, cat) in instance.categories().iter().enumerate() {
        let mut costs = Vec::with_capacity(cat.len());
        for it in cat.items() {
            costs.push(
                it.cost
                    .to_exact_integer()
                    .ok_or_else(|| Error::Unsupported(format!("category {j}: cost {} is not an integer", it.cost)))?,
            );
        }
        let frontier = pareto_filter(j, cat).pareto_items;
        let min_cost = costs[frontier[0]];
        base_cost += min_cost;
        reduced.push(Reduced {
            costs: frontier.iter().map(|&i| costs[i] - min_cost).collect(),
            profits: frontier.iter().map(|&i| cat.item(i).profit).collect(),
            items: frontier,
        });
    }
    let capacity = budget - base_cost;
    if capacity < 0 {
        return Err(infeasible(instance));
    }

    let bound = if prune {
        LagrangianBound::new(instance, &reduced, capacity)
    } else {
        None
    };

    let state_bytes = std::mem::size_of::<State<T>>();
    let mut stored = 0usize;
    let mut layers: Vec<Vec<State<T>>> = Vec::with_capacity(reduced.len());
    let mut current = vec![State {
        cost: 0,
        profit: T::zero(),
        parent: 0,
        item: 0,
    }];
    for (j, cat) in reduced.iter().enumerate() {
        let mut next = Vec::with_capacity(current.len() * cat.costs.len());
        for (s, state) in current.iter().enumerate() {
            for (k, (&c, &p)) in cat.costs.iter().zip(&cat.profits).enumerate() {
                let cost = state.cost + c;
                if cost > capacity {
                    break;
                }
                let profit = state.profit + p;
                if let Some(b) = &bound {
                    if !b.may_reach(j + 1, cost, profit, capacity) {
                        continue;
                    }
                }
                next.push(State {
                    cost,
                    profit,
                    parent: s as u32,
                    item: k as u32,
                });
            }
        }
        next.sort_by(|a, b| a.cost.cmp(&b.cost).then(b.profit.partial_cmp(&a.profit).unwrap()));
        let mut kept: Vec<State<T>> = Vec::with_capacity(next.len());
        for st in next {
            if kept.last().is_none_or(|last| st.profit > last.profit) {
                kept.push(st);
            }
        }
        stored += kept.len() + current.len();
        if stored.saturating_mul(state_bytes) > DP_MEMORY_LIMIT_BYTES {
            return Err(Error::GuardExceeded(format!(
                "DP state tables exceed {} bytes after category {j}",
                DP_MEMORY_LIMIT_BYTES
            )));
        }
        if kept.is_empty() {
            // Only possible when the bound discarded everything, which means
            // the incumbent itself is wrong.
            return Err(Error::Unsupported("DP bound discarded every state".into()));
        }
        layers.push(std::mem::replace(&mut current, kept));
    }

    // States are sorted by cost with strictly increasing profit.
    let last = current.len() - 1;
    let optimum_profit = current[last].profit;
    let mut chosen = vec![0usize; reduced.len()];
    let mut pos = last;
    let mut layer = &current;
    for j in (0..reduced.len()).rev() {
        let st = layer[pos];
        chosen[j] = reduced[j].items[st.item as usize];
        pos = st.parent as usize;
        layer = &layers[j];
    }
    Ok(ExactResult {
        optimum_profit,
        optimum_selection: Selection::new(chosen),
        method: Method::Dp,
    })
}

/// `profit + Σ_{j ≥ k} max_i (p_ij - μ c_ij) + μ (capacity - cost)` bounds the
/// profit of every completion of a state; μ is the LP-critical slope.
struct LagrangianBound {
    mu: f64,
    suffix: Vec<f64>,
    incumbent: f64,
    slack: f64,
}

impl LagrangianBound {
    fn new<T: Scalar>(instance: &Instance<T>, reduced: &[Reduced<T>], capacity: i64) -> Option<Self> {
        // Incremental hull steps, steepest first.
        let mut steps: Vec<(f64, usize, i64, f64)> = Vec::new();
        for (j, cat) in instance.categories().iter().enumerate() {
            let f = pareto_filter(j, cat);
            let hull = supported_filter(&f, cat).hull_items;
            for w in hull.windows(2) {
                let (a, b) = (cat.item(w[0]), cat.item(w[1]));
                let dp = (b.profit - a.profit).to_f64()?;
                let dc = (b.cost - a.cost).to_exact_integer()?;
                steps.push((dp / dc as f64, j, dc, dp));
            }
        }
        steps.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap().then(a.1.cmp(&b.1)));

        let base: f64 = reduced.iter().map(|r| r.profits[0].to_f64().unwrap_or(0.0)).sum();
        let mut incumbent = base;
        let mut left = capacity;
        let mut blocked = vec![false; reduced.len()];
        let mut mu = None;
        for &(slope, j, dc, dp) in &steps {
            if blocked[j] {
                continue;
            }
            if dc <= left {
                left -= dc;
                incumbent += dp;
            } else {
                blocked[j] = true;
                mu.get_or_insert(slope);
            }
        }
        // Everything fits: the most profitable selection is the incumbent and
        // μ = 0 bounds by plain profit.
        let mu = mu.unwrap_or(0.0);

        let mut suffix = vec![0.0; reduced.len() + 1];
        for j in (0..reduced.len()).rev() {
            let r = &reduced[j];
            let best = r
                .costs
                .iter()
                .zip(&r.profits)
                .map(|(&c, p)| p.to_f64().unwrap_or(0.0) - mu * c as f64)
                .fold(f64::NEG_INFINITY, f64::max);
            suffix[j] = suffix[j + 1] + best;
        }
        let scale = incumbent.abs() + suffix[0].abs() + mu * capacity as f64 + 1.0;
        Some(LagrangianBound {
            mu,
            suffix,
            incumbent,
            slack: 1e-9 * scale,
        })
    }

    fn may_reach<T: Scalar>(&self, next: usize, cost: i64, profit: T, capacity: i64) -> bool {
        let ub = profit.to_f64().unwrap_or(f64::INFINITY) + self.suffix[next] + self.mu * (capacity - cost) as f64;
        ub >= self.incumbent - self.slack
    }
}
