//! Supported-solution bisection.
//!
//! A weighted sum `w·f1 + (1-w)·f2` is additively separable, so maximizing it
//! over the multiple-choice set is a per-category argmax. Bisection on `w`
//! walks the supported frontier from the cheapest selection towards the most
//! profitable one and stops at the two adjacent supported points that
//! bracket the budget: `x^A` feasible, `x^B` infeasible.

use crate::error::{Error, Result};
use crate::model::{Instance, ObjectivePoint, Selection};
use crate::scalar::Scalar;

/// Safety valve on bisection steps.
pub const MAX_BISECTION_STEPS: usize = 200;

#[derive(Debug, Clone, PartialEq)]
pub struct WeightStep<T> {
    pub weight: T,
    pub selection: Selection,
    pub point: ObjectivePoint<T>,
    pub feasible: bool,
}

/// Every scalarization solved during one bisection, in order.
///
/// The first entry (weight 0) is the lexicographic minimum-cost selection,
/// which breaks cost ties by profit instead of by index.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightTrace<T> {
    pub steps: Vec<WeightStep<T>>,
}

impl<T> Default for WeightTrace<T> {
    fn default() -> Self {
        WeightTrace { steps: Vec::new() }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StraddlePair<T> {
    pub xa: Selection,
    pub xb: Selection,
    pub point_a: ObjectivePoint<T>,
    pub point_b: ObjectivePoint<T>,
    /// `c(x^B) - c(x^A)`.
    pub gap_cost: T,
    pub trace: WeightTrace<T>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OptimalReason {
    /// The most profitable selection fits the budget.
    MaxProfitFits,
    /// A supported Pareto selection uses the budget exactly.
    ZeroSlack,
}

#[derive(Debug, Clone, PartialEq)]
pub enum BissaOutcome<T> {
    Optimal {
        selection: Selection,
        point: ObjectivePoint<T>,
        reason: OptimalReason,
        trace: WeightTrace<T>,
    },
    Straddle(StraddlePair<T>),
}

impl<T: Scalar> BissaOutcome<T> {
    /// The best feasible selection found.
    pub fn feasible_selection(&self) -> &Selection {
        match self {
            BissaOutcome::Optimal { selection, .. } => selection,
            BissaOutcome::Straddle(s) => &s.xa,
        }
    }

    pub fn feasible_point(&self) -> ObjectivePoint<T> {
        match self {
            BissaOutcome::Optimal { point, .. } => *point,
            BissaOutcome::Straddle(s) => s.point_a,
        }
    }

    pub fn trace(&self) -> &WeightTrace<T> {
        match self {
            BissaOutcome::Optimal { trace, .. } => trace,
            BissaOutcome::Straddle(s) => &s.trace,
        }
    }

    pub fn is_optimal(&self) -> bool {
        matches!(self, BissaOutcome::Optimal { .. })
    }
}

/// Per-category argmax of `w·p - (1-w)·c`; ties go to the lower cost, then
/// the lower index.
pub fn solve_linear<T: Scalar>(instance: &Instance<T>, w: T) -> Selection {
    let v = T::one() - w;
    let chosen = instance
        .categories()
        .iter()
        .map(|cat| {
            let score = |i: usize| {
                let it = cat.item(i);
                w * it.profit - v * it.cost
            };
            let mut best = 0;
            let mut best_score = score(0);
            for i in 1..cat.len() {
                let s = score(i);
                if s > best_score || (s == best_score && cat.item(i).cost < cat.item(best).cost) {
                    best = i;
                    best_score = s;
                }
            }
            best
        })
        .collect();
    Selection::new(chosen)
}

/// Cheapest item per category, most profitable among equally cheap ones.
pub fn min_cost_selection<T: Scalar>(instance: &Instance<T>) -> Selection {
    let chosen = instance
        .categories()
        .iter()
        .map(|cat| {
            let mut best = 0;
            for i in 1..cat.len() {
                let (a, b) = (cat.item(i), cat.item(best));
                if a.cost < b.cost || (a.cost == b.cost && a.profit > b.profit) {
                    best = i;
                }
            }
            best
        })
        .collect();
    Selection::new(chosen)
}

struct Side<T> {
    weight: T,
    selection: Selection,
    point: ObjectivePoint<T>,
}

pub fn bissa<T: Scalar>(instance: &Instance<T>) -> Result<BissaOutcome<T>> {
    let budget = instance.budget();
    let mut trace = WeightTrace::default();
    let record = |trace: &mut WeightTrace<T>, weight: T, selection: &Selection| {
        let point = instance.point_of(selection);
        trace.steps.push(WeightStep {
            weight,
            selection: selection.clone(),
            point,
            feasible: point.cost() <= budget,
        });
        point
    };

    let cheapest = min_cost_selection(instance);
    let lo_point = record(&mut trace, T::zero(), &cheapest);
    if lo_point.cost() > budget {
        return Err(Error::Infeasible {
            min_cost: lo_point.cost().to_f64().unwrap_or(f64::NAN),
            budget: budget.to_f64().unwrap_or(f64::NAN),
        });
    }
    if lo_point.cost() == budget {
        return Ok(BissaOutcome::Optimal {
            selection: cheapest,
            point: lo_point,
            reason: OptimalReason::ZeroSlack,
            trace,
        });
    }

    let richest = solve_linear(instance, T::one());
    let hi_point = record(&mut trace, T::one(), &richest);
    if hi_point.cost() <= budget {
        return Ok(BissaOutcome::Optimal {
            selection: richest,
            point: hi_point,
            reason: OptimalReason::MaxProfitFits,
            trace,
        });
    }

    let mut lo = Side {
        weight: T::zero(),
        selection: cheapest,
        point: lo_point,
    };
    let mut hi = Side {
        weight: T::one(),
        selection: richest,
        point: hi_point,
    };

    for _ in 0..MAX_BISECTION_STEPS {
        let mut w = (lo.weight + hi.weight) * T::half();
        let mut sel = solve_linear(instance, w);
        let mut point = record(&mut trace, w, &sel);

        if point == lo.point || point == hi.point {
            // The midpoint landed on a known vertex. Probe the weight whose
            // level line passes through both ends: anything it finds above
            // the segment is a supported point between them.
            let d1 = hi.point.f1 - lo.point.f1;
            let d2 = hi.point.f2 - lo.point.f2;
            w = -d2 / (d1 - d2);
            sel = solve_linear(instance, w);
            point = record(&mut trace, w, &sel);
            let between = lo.point.f1 < point.f1 && point.f1 < hi.point.f1;
            if !(between && above(&lo.point, &point, &hi.point)) {
                return Ok(straddle(instance, lo, hi, trace));
            }
        }

        if point.cost() == budget {
            return Ok(BissaOutcome::Optimal {
                selection: sel,
                point,
                reason: OptimalReason::ZeroSlack,
                trace,
            });
        }
        let side = Side {
            weight: w,
            selection: sel,
            point,
        };
        if point.cost() < budget {
            lo = side;
        } else {
            hi = side;
        }
    }
    Err(Error::IterationLimit {
        what: "supported-solution bisection",
        limit: MAX_BISECTION_STEPS,
    })
}

/// `b` lies strictly above the segment `a`–`c`.
fn above<T: Scalar>(a: &ObjectivePoint<T>, b: &ObjectivePoint<T>, c: &ObjectivePoint<T>) -> bool {
    (b.f2 - a.f2) * (c.f1 - a.f1) > (c.f2 - a.f2) * (b.f1 - a.f1)
}

fn straddle<T: Scalar>(instance: &Instance<T>, lo: Side<T>, hi: Side<T>, trace: WeightTrace<T>) -> BissaOutcome<T> {
    debug_assert!(lo.point.cost() <= instance.budget() && hi.point.cost() > instance.budget());
    BissaOutcome::Straddle(StraddlePair {
        gap_cost: hi.point.cost() - lo.point.cost(),
        xa: lo.selection,
        xb: hi.selection,
        point_a: lo.point,
        point_b: hi.point,
        trace,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frontier::pareto_filter;
    use crate::model::sample_instance;
    use crate::Exact;

    #[test]
    fn extreme_weights_on_sample() {
        let inst = sample_instance(4.0f64);
        let richest = solve_linear(&inst, 1.0);
        assert_eq!(richest.to_binary(&[2, 2]), "0110");
        assert_eq!(inst.evaluate(&richest).unwrap(), ObjectivePoint::new(7.0, -5.0));
        let cheapest = solve_linear(&inst, 0.0);
        assert_eq!(cheapest.to_binary(&[2, 2]), "1001");
        let p = inst.evaluate(&cheapest).unwrap();
        assert!((p.f1 - 4.0).abs() < 1e-12 && (p.f2 + 2.9).abs() < 1e-12);
    }

    #[test]
    fn zero_weight_tie_goes_to_lowest_index() {
        let inst = Instance::from_pairs(&[vec![(1.0, 5.0), (3.0, 5.0), (2.0, 5.0)]], 10.0).unwrap();
        assert_eq!(solve_linear(&inst, 0.0).chosen(), &[0]);
        // The lexicographic start prefers profit instead.
        assert_eq!(min_cost_selection(&inst).chosen(), &[1]);
    }

    #[test]
    fn sample_straddle() {
        // All four selections: 1010 (6,-3.9) feasible, 1001 (4,-2.9) feasible,
        // 0110 (7,-5) infeasible, 0101 (5,-4) dominated. 1010 is supported
        // (slopes -0.5 then -1.1), so the adjacent straddle is 1010 / 0110.
        let out = bissa(&sample_instance(4.0f64)).unwrap();
        let BissaOutcome::Straddle(s) = out else {
            panic!("expected straddle")
        };
        assert_eq!(s.xa.to_binary(&[2, 2]), "1010");
        assert_eq!(s.xb.to_binary(&[2, 2]), "0110");
        assert!((s.gap_cost - 1.1).abs() < 1e-12);
        assert!(s.point_a.f1 < s.point_b.f1);
    }

    #[test]
    fn sample_straddle_exact() {
        let out = bissa(&sample_instance(Exact::from_integer(4))).unwrap();
        let BissaOutcome::Straddle(s) = out else {
            panic!("expected straddle")
        };
        assert_eq!(s.gap_cost, Exact::new(11, 10));
    }

    #[test]
    fn slack_budget_is_optimal() {
        let out = bissa(&sample_instance(6.0f64)).unwrap();
        assert!(matches!(
            out,
            BissaOutcome::Optimal {
                reason: OptimalReason::MaxProfitFits,
                ..
            }
        ));
        assert_eq!(out.feasible_selection().to_binary(&[2, 2]), "0110");
    }

    #[test]
    fn zero_slack_is_optimal() {
        // 1010 costs exactly 3.9 in exact arithmetic.
        let out = bissa(&sample_instance(Exact::new(39, 10))).unwrap();
        match out {
            BissaOutcome::Optimal { selection, reason, .. } => {
                assert_eq!(reason, OptimalReason::ZeroSlack);
                assert_eq!(selection.to_binary(&[2, 2]), "1010");
            }
            other => panic!("expected optimal, got {other:?}"),
        }
    }

    #[test]
    fn infeasible_instance() {
        let out = bissa(&sample_instance(2.5f64));
        assert!(matches!(out, Err(Error::Infeasible { .. })));
    }

    #[test]
    fn straddle_components_are_category_pareto() {
        let inst = Instance::from_pairs(
            &[
                vec![(1.0, 5.0), (3.0, 5.0), (9.0, 9.0), (5.0, 6.0)],
                vec![(2.0, 1.0), (8.0, 7.0), (4.0, 2.0), (4.0, 3.0)],
                vec![(1.0, 1.0), (6.0, 4.0), (7.0, 8.0)],
            ],
            14.0,
        )
        .unwrap();
        let BissaOutcome::Straddle(s) = bissa(&inst).unwrap() else {
            panic!()
        };
        for (j, cat) in inst.categories().iter().enumerate() {
            let f = pareto_filter(j, cat);
            assert!(f.pareto_items.contains(&s.xa.get(j)));
            assert!(f.pareto_items.contains(&s.xb.get(j)));
        }
        assert!(inst.is_feasible(&s.xa).unwrap());
        assert!(!inst.is_feasible(&s.xb).unwrap());
    }
}
