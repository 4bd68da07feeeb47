//! Instances, selections and the bi-objective image of a selection.
//!
//! A selection picks exactly one item per category, so the multiple-choice
//! constraint cannot be violated by construction. Its image is
//! `(f1, f2) = (total profit, -total cost)`, and both objectives are maximized.

mod format;

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{sum, Scalar};

pub use format::{read_instance, write_instance};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Item<T> {
    pub profit: T,
    pub cost: T,
}

impl<T: Scalar> Item<T> {
    pub fn new(profit: T, cost: T) -> Result<Self> {
        if !profit.is_finite_value() || !cost.is_finite_value() {
            return Err(Error::InvalidInstance(format!("item ({profit}, {cost}) is not finite")));
        }
        if profit < T::zero() || cost < T::zero() {
            return Err(Error::InvalidInstance(format!(
                "item ({profit}, {cost}) has a negative coefficient"
            )));
        }
        Ok(Item { profit, cost })
    }

    /// The item's image `(p, -c)` in objective space.
    pub fn point(&self) -> ObjectivePoint<T> {
        ObjectivePoint::new(self.profit, -self.cost)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Category<T> {
    items: Vec<Item<T>>,
}

impl<T: Scalar> Category<T> {
    pub fn new(items: Vec<Item<T>>) -> Result<Self> {
        if items.is_empty() {
            return Err(Error::InvalidInstance("category has no items".into()));
        }
        Ok(Category { items })
    }

    /// Builds a category from `(profit, cost)` pairs.
    pub fn from_pairs(pairs: &[(T, T)]) -> Result<Self> {
        let items = pairs
            .iter()
            .map(|&(p, c)| Item::new(p, c))
            .collect::<Result<Vec<_>>>()?;
        Category::new(items)
    }

    pub fn items(&self) -> &[Item<T>] {
        &self.items
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn item(&self, i: usize) -> &Item<T> {
        &self.items[i]
    }

    pub fn max_profit(&self) -> T {
        self.items
            .iter()
            .fold(self.items[0].profit, |m, it| m.max_of(it.profit))
    }

    pub fn min_cost(&self) -> T {
        self.items.iter().fold(self.items[0].cost, |m, it| m.min_of(it.cost))
    }

    pub fn max_cost(&self) -> T {
        self.items.iter().fold(self.items[0].cost, |m, it| m.max_of(it.cost))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Instance<T> {
    categories: Vec<Category<T>>,
    budget: T,
}

impl<T: Scalar> Instance<T> {
    pub fn new(categories: Vec<Category<T>>, budget: T) -> Result<Self> {
        if categories.is_empty() {
            return Err(Error::InvalidInstance("instance has no categories".into()));
        }
        if !budget.is_finite_value() || budget <= T::zero() {
            return Err(Error::InvalidInstance(format!(
                "budget must be positive and finite, got {budget}"
            )));
        }
        Ok(Instance { categories, budget })
    }

    /// Convenience constructor from nested `(profit, cost)` pairs.
    pub fn from_pairs(categories: &[Vec<(T, T)>], budget: T) -> Result<Self> {
        let cats = categories
            .iter()
            .map(|c| Category::from_pairs(c))
            .collect::<Result<Vec<_>>>()?;
        Instance::new(cats, budget)
    }

    pub fn categories(&self) -> &[Category<T>] {
        &self.categories
    }

    pub fn category(&self, j: usize) -> &Category<T> {
        &self.categories[j]
    }

    pub fn num_categories(&self) -> usize {
        self.categories.len()
    }

    pub fn budget(&self) -> T {
        self.budget
    }

    pub fn with_budget(&self, budget: T) -> Result<Self> {
        Instance::new(self.categories.clone(), budget)
    }

    pub fn item(&self, j: usize, i: usize) -> &Item<T> {
        &self.categories[j].items[i]
    }

    /// Number of selections, saturating at `u128::MAX`.
    pub fn selection_count(&self) -> u128 {
        self.categories
            .iter()
            .fold(1u128, |acc, c| acc.saturating_mul(c.len() as u128))
    }

    pub fn check_selection(&self, sel: &Selection) -> Result<()> {
        if sel.len() != self.categories.len() {
            return Err(Error::InvalidSelection(format!(
                "selection has {} entries, instance has {} categories",
                sel.len(),
                self.categories.len()
            )));
        }
        for (j, (&i, cat)) in sel.0.iter().zip(&self.categories).enumerate() {
            if i >= cat.len() {
                return Err(Error::InvalidSelection(format!(
                    "category {j}: item {i} out of range (category has {} items)",
                    cat.len()
                )));
            }
        }
        Ok(())
    }

    /// Image of a selection. Fails if the selection does not fit the instance.
    pub fn evaluate(&self, sel: &Selection) -> Result<ObjectivePoint<T>> {
        self.check_selection(sel)?;
        Ok(self.point_of(sel))
    }

    pub fn is_feasible(&self, sel: &Selection) -> Result<bool> {
        self.check_selection(sel)?;
        Ok(self.cost_of(sel) <= self.budget)
    }

    pub(crate) fn point_of(&self, sel: &Selection) -> ObjectivePoint<T> {
        ObjectivePoint::new(self.profit_of(sel), -self.cost_of(sel))
    }

    pub(crate) fn cost_of(&self, sel: &Selection) -> T {
        sum(sel.0.iter().enumerate().map(|(j, &i)| self.item(j, i).cost))
    }

    pub(crate) fn profit_of(&self, sel: &Selection) -> T {
        sum(sel.0.iter().enumerate().map(|(j, &i)| self.item(j, i).profit))
    }

    /// Σ_j min_i c_ij, the cost of the cheapest selection.
    pub fn min_total_cost(&self) -> T {
        sum(self.categories.iter().map(Category::min_cost))
    }

    /// Σ_j max_i c_ij.
    pub fn max_total_cost(&self) -> T {
        sum(self.categories.iter().map(Category::max_cost))
    }
}

/// One chosen item index per category.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Selection(Vec<usize>);

impl Selection {
    pub fn new(chosen: Vec<usize>) -> Self {
        Selection(chosen)
    }

    pub fn chosen(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, j: usize) -> usize {
        self.0[j]
    }

    /// Copy of `self` with category `j` switched to item `i`.
    pub fn with_item(&self, j: usize, i: usize) -> Selection {
        let mut next = self.0.clone();
        next[j] = i;
        Selection(next)
    }

    /// Renders the selection as the 0/1 vector `x` used in the literature,
    /// categories concatenated in order (e.g. `1010`).
    pub fn to_binary(&self, sizes: &[usize]) -> String {
        let mut out = String::new();
        for (&i, &n) in self.0.iter().zip(sizes) {
            for k in 0..n {
                out.push(if k == i { '1' } else { '0' });
            }
        }
        out
    }
}

impl fmt::Display for Selection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

impl From<Vec<usize>> for Selection {
    fn from(v: Vec<usize>) -> Self {
        Selection(v)
    }
}

/// `(f1, f2) = (profit, -cost)`; both coordinates are maximized.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ObjectivePoint<T> {
    pub f1: T,
    pub f2: T,
}

impl<T: Scalar> ObjectivePoint<T> {
    pub fn new(f1: T, f2: T) -> Self {
        ObjectivePoint { f1, f2 }
    }

    /// Pareto dominance under maximization of both coordinates.
    pub fn dominates(&self, other: &Self) -> bool {
        self.f1 >= other.f1 && self.f2 >= other.f2 && (self.f1 > other.f1 || self.f2 > other.f2)
    }

    pub fn cost(&self) -> T {
        -self.f2
    }

    pub fn coord(&self, l: usize) -> T {
        match l {
            0 => self.f1,
            1 => self.f2,
            _ => panic!("objective index {l} out of range"),
        }
    }
}

impl<T: Scalar> std::ops::Add for ObjectivePoint<T> {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        ObjectivePoint::new(self.f1 + rhs.f1, self.f2 + rhs.f2)
    }
}

impl<T: fmt::Display> fmt::Display for ObjectivePoint<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.f1, self.f2)
    }
}

pub fn dominates<T: Scalar>(a: &ObjectivePoint<T>, b: &ObjectivePoint<T>) -> bool {
    a.dominates(b)
}

pub fn evaluate<T: Scalar>(instance: &Instance<T>, sel: &Selection) -> Result<ObjectivePoint<T>> {
    instance.evaluate(sel)
}

pub fn is_feasible<T: Scalar>(instance: &Instance<T>, sel: &Selection) -> Result<bool> {
    instance.is_feasible(sel)
}

/// The two-category example instance used throughout the tests:
/// category 1 = {(2, 1.9), (3, 3)}, category 2 = {(4, 2), (2, 1)}.
pub fn sample_instance<T: Scalar>(budget: T) -> Instance<T> {
    let d = |s: &str| T::parse_decimal(s).expect("literal");
    Instance::from_pairs(
        &[
            vec![(d("2"), d("1.9")), (d("3"), d("3"))],
            vec![(d("4"), d("2")), (d("2"), d("1"))],
        ],
        budget,
    )
    .expect("fixture is valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Exact;
    use proptest::prelude::*;

    const TOL: f64 = 1e-12;

    fn sample() -> Instance<f64> {
        sample_instance(4.0)
    }

    fn assert_point(p: ObjectivePoint<f64>, f1: f64, f2: f64) {
        assert!(
            (p.f1 - f1).abs() <= TOL && (p.f2 - f2).abs() <= TOL,
            "{p} != ({f1}, {f2})"
        );
    }

    #[test]
    fn evaluate_sample_selections() {
        let inst = sample();
        // x = 1010
        assert_point(inst.evaluate(&Selection::new(vec![0, 0])).unwrap(), 6.0, -3.9);
        // x = 0110
        assert_point(inst.evaluate(&Selection::new(vec![1, 0])).unwrap(), 7.0, -5.0);
        // x = 0101: profit 3 + 2 = 5
        assert_point(inst.evaluate(&Selection::new(vec![1, 1])).unwrap(), 5.0, -4.0);
    }

    #[test]
    fn evaluate_exact_is_exact() {
        let inst = sample_instance(Exact::from_integer(4));
        let p = inst.evaluate(&Selection::new(vec![0, 0])).unwrap();
        assert_eq!(p.f1, Exact::from_integer(6));
        assert_eq!(p.f2, Exact::new(-39, 10));
    }

    #[test]
    fn zero_item() {
        let inst = Instance::from_pairs(&[vec![(0.0, 0.0)]], 1.0).unwrap();
        assert_point(inst.evaluate(&Selection::new(vec![0])).unwrap(), 0.0, 0.0);
    }

    #[test]
    fn evaluate_rejects_bad_selection() {
        let inst = sample();
        assert!(matches!(
            inst.evaluate(&Selection::new(vec![0, 2])),
            Err(Error::InvalidSelection(_))
        ));
        assert!(matches!(
            inst.evaluate(&Selection::new(vec![0])),
            Err(Error::InvalidSelection(_))
        ));
    }

    #[test]
    fn feasibility_on_sample() {
        let inst = sample();
        // x = 1001 costs 2.9
        assert!(inst.is_feasible(&Selection::new(vec![0, 1])).unwrap());
        // x = 0110 costs 5
        assert!(!inst.is_feasible(&Selection::new(vec![1, 0])).unwrap());
    }

    #[test]
    fn slack_budget_makes_everything_feasible() {
        let inst = sample().with_budget(5.0).unwrap();
        for a in 0..2 {
            for b in 0..2 {
                assert!(inst.is_feasible(&Selection::new(vec![a, b])).unwrap());
            }
        }
    }

    #[test]
    fn dominance_examples() {
        let p = ObjectivePoint::new;
        assert!(dominates(&p(6.0, -3.9), &p(5.0, -4.0)));
        assert!(!dominates(&p(6.0, -3.9), &p(6.0, -3.9)));
        assert!(!dominates(&p(4.0, -2.9), &p(7.0, -5.0)));
        assert!(!dominates(&p(7.0, -5.0), &p(4.0, -2.9)));
    }

    #[test]
    fn constructors_validate() {
        assert!(Item::new(-1.0, 1.0).is_err());
        assert!(Item::new(1.0, -1.0).is_err());
        assert!(Item::new(f64::NAN, 1.0).is_err());
        assert!(Category::<f64>::new(vec![]).is_err());
        assert!(Instance::<f64>::new(vec![], 1.0).is_err());
        assert!(Instance::from_pairs(&[vec![(1.0, 1.0)]], 0.0).is_err());
    }

    #[test]
    fn binary_rendering() {
        assert_eq!(Selection::new(vec![0, 1]).to_binary(&[2, 2]), "1001");
        assert_eq!(Selection::new(vec![1, 0]).to_binary(&[2, 2]), "0110");
    }

    fn small_instance() -> impl Strategy<Value = (Instance<f64>, Selection)> {
        prop::collection::vec(prop::collection::vec((0u32..60, 0u32..60), 1..5), 1..5)
            .prop_flat_map(|cats| {
                let sel = cats.iter().map(|c| 0..c.len()).collect::<Vec<_>>();
                (Just(cats), sel)
            })
            .prop_map(|(cats, sel)| {
                let pairs: Vec<Vec<(f64, f64)>> = cats
                    .iter()
                    .map(|c| c.iter().map(|&(p, c)| (p as f64, c as f64)).collect())
                    .collect();
                (Instance::from_pairs(&pairs, 100.0).unwrap(), Selection::new(sel))
            })
    }

    fn point() -> impl Strategy<Value = ObjectivePoint<f64>> {
        (-5i32..5, -5i32..5).prop_map(|(a, b)| ObjectivePoint::new(a as f64, b as f64))
    }

    proptest! {
        #[test]
        fn evaluation_is_additive((inst, sel) in small_instance()) {
            let whole = inst.evaluate(&sel).unwrap();
            let mut acc = ObjectivePoint::new(0.0, 0.0);
            for (j, cat) in inst.categories().iter().enumerate() {
                let sub = Instance::new(vec![cat.clone()], 1.0).unwrap();
                acc = acc + sub.evaluate(&Selection::new(vec![sel.get(j)])).unwrap();
            }
            prop_assert_eq!(whole, acc);
        }

        #[test]
        fn feasibility_matches_image((inst, sel) in small_instance(), budget in 1u32..200) {
            let inst = inst.with_budget(budget as f64).unwrap();
            let p = inst.evaluate(&sel).unwrap();
            prop_assert_eq!(inst.is_feasible(&sel).unwrap(), p.f2 >= -inst.budget());
        }

        #[test]
        fn dominance_is_strict_partial_order(a in point(), b in point(), c in point()) {
            prop_assert!(!a.dominates(&a));
            prop_assert!(!(a.dominates(&b) && b.dominates(&a)));
            if a.dominates(&b) && b.dominates(&c) {
                prop_assert!(a.dominates(&c));
            }
        }
    }
}
