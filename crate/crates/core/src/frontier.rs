//! Per-category Pareto sets, their supported subsets, and the augmented
//! Chebyshev subproblem solved on a single category.
//!
//! All of this works category by category: profit and cost are additively
//! separable, so every Pareto optimal selection is built from category-level
//! Pareto items (the converse is false).

use crate::error::{Error, Result};
use crate::model::{Category, Instance, ObjectivePoint};
use crate::scalar::Scalar;

/// Nondominated items of one category, ordered by increasing profit (and
/// therefore increasing cost).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CategoryFrontier {
    pub category_index: usize,
    pub pareto_items: Vec<usize>,
}

/// The frontier items lying on its concave majorant in `(f1, f2)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportedFrontier {
    pub category_index: usize,
    pub hull_items: Vec<usize>,
}

/// Trade-off bound for the augmentation coefficient.
///
/// `delta` is `None` when no pair of items trades one objective against the
/// other, in which case any positive `rho` works.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RhoBound<T> {
    pub delta: Option<T>,
    pub rho: T,
}

pub fn pareto_filter<T: Scalar>(category_index: usize, cat: &Category<T>) -> CategoryFrontier {
    let items = cat.items();
    let mut order: Vec<usize> = (0..items.len()).collect();
    // Cheapest first; among equal cost the most profitable, then lowest index.
    order.sort_by(|&a, &b| {
        let (x, y) = (&items[a], &items[b]);
        x.cost
            .partial_cmp(&y.cost)
            .unwrap()
            .then(y.profit.partial_cmp(&x.profit).unwrap())
            .then(a.cmp(&b))
    });
    let mut pareto_items = Vec::new();
    let mut best: Option<T> = None;
    for i in order {
        let p = items[i].profit;
        if best.is_none_or(|b| p > b) {
            pareto_items.push(i);
            best = Some(p);
        }
    }
    CategoryFrontier {
        category_index,
        pareto_items,
    }
}

pub fn instance_frontiers<T: Scalar>(instance: &Instance<T>) -> Vec<CategoryFrontier> {
    instance
        .categories()
        .iter()
        .enumerate()
        .map(|(j, c)| pareto_filter(j, c))
        .collect()
}

/// Upper concave hull of the frontier. Collinear frontier points are kept:
/// they maximize the same weighted sum as the hull edge they sit on.
pub fn supported_filter<T: Scalar>(frontier: &CategoryFrontier, cat: &Category<T>) -> SupportedFrontier {
    let pt = |i: usize| cat.item(i).point();
    let mut hull: Vec<usize> = Vec::with_capacity(frontier.pareto_items.len());
    for &c in &frontier.pareto_items {
        while hull.len() >= 2 {
            let a = pt(hull[hull.len() - 2]);
            let b = pt(hull[hull.len() - 1]);
            if strictly_below(&a, &b, &pt(c)) {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(c);
    }
    SupportedFrontier {
        category_index: frontier.category_index,
        hull_items: hull,
    }
}

/// `b` lies strictly below the segment `a`–`c`, assuming `a.f1 < b.f1 < c.f1`.
pub(crate) fn strictly_below<T: Scalar>(a: &ObjectivePoint<T>, b: &ObjectivePoint<T>, c: &ObjectivePoint<T>) -> bool {
    (b.f2 - a.f2) * (c.f1 - a.f1) < (c.f2 - a.f2) * (b.f1 - a.f1)
}

/// Smallest trade-off ratio over ordered item pairs `(t, u)` of one category
/// where `u` wins on the sum of objectives but `t` still wins somewhere:
/// `min_{l: t_l > u_l} (t_l - u_l) / Σ_l (u_l - t_l)`.
pub fn category_delta<T: Scalar>(cat: &Category<T>) -> Option<T> {
    let points: Vec<ObjectivePoint<T>> = cat.items().iter().map(|it| it.point()).collect();
    let mut best: Option<T> = None;
    for t in &points {
        for u in &points {
            let gain = (u.f1 - t.f1) + (u.f2 - t.f2);
            if gain <= T::zero() {
                continue;
            }
            let advantage = [t.f1 - u.f1, t.f2 - u.f2]
                .into_iter()
                .filter(|d| *d > T::zero())
                .reduce(T::min_of);
            if let Some(adv) = advantage {
                let ratio = adv / gain;
                best = Some(best.map_or(ratio, |b| b.min_of(ratio)));
            }
        }
    }
    best
}

/// δ over every category, and the coefficient actually used:
/// `min(configured, δ/2)`.
pub fn delta_bound<T: Scalar>(instance: &Instance<T>, configured_rho: T) -> RhoBound<T> {
    let delta = instance
        .categories()
        .iter()
        .filter_map(category_delta)
        .reduce(T::min_of);
    let rho = match delta {
        Some(d) => configured_rho.min_of(d * T::half()),
        None => configured_rho,
    };
    RhoBound { delta, rho }
}

/// `max_l λ_l [(y*_l - d_l) + ρ Σ_s (y*_s - d_s)]` for the point `d`.
pub fn chebyshev_value<T: Scalar>(point: &ObjectivePoint<T>, lambda: [T; 2], ystar: &ObjectivePoint<T>, rho: T) -> T {
    let g1 = ystar.f1 - point.f1;
    let g2 = ystar.f2 - point.f2;
    let aug = rho * (g1 + g2);
    (lambda[0] * (g1 + aug)).max_of(lambda[1] * (g2 + aug))
}

/// Index of the item minimizing the augmented Chebyshev scalarization; ties go
/// to the lowest index.
pub fn solve_chebyshev_subproblem<T: Scalar>(
    cat: &Category<T>,
    lambda: [T; 2],
    ystar: &ObjectivePoint<T>,
    rho: T,
) -> Result<usize> {
    if lambda.iter().any(|l| *l <= T::zero()) {
        return Err(Error::InvalidReferencePoint(format!(
            "weights must be positive, got ({}, {})",
            lambda[0], lambda[1]
        )));
    }
    if rho <= T::zero() {
        return Err(Error::InvalidReferencePoint(format!("rho must be positive, got {rho}")));
    }
    if ystar.f1 <= cat.max_profit() || ystar.f2 <= -cat.min_cost() {
        return Err(Error::InvalidReferencePoint(format!(
            "{ystar} does not strictly dominate every item"
        )));
    }
    let mut best = 0;
    let mut best_value = chebyshev_value(&cat.item(0).point(), lambda, ystar, rho);
    for (i, item) in cat.items().iter().enumerate().skip(1) {
        let v = chebyshev_value(&item.point(), lambda, ystar, rho);
        if v < best_value {
            best = i;
            best_value = v;
        }
    }
    Ok(best)
}
