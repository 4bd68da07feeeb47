//! Seeded instance generator.
//!
//! The stream is ChaCha8 (`rand_chacha::ChaCha8Rng::seed_from_u64`). Integers
//! in `[lo, hi]` are drawn from raw `next_u64` words by rejection: words at or
//! above the largest multiple of the range size are discarded, accepted
//! words map to `lo + word % size`. Draw order, per category and item in
//! index order:
//!
//! * uncorrelated: profit `U[1,1000]`, then cost `U[1,1000]`;
//! * weak: cost `U[1,1000]`, then noise `U[-100,100]`, profit
//!   `max(1, cost + noise)`.
//!
//! The budget is `round(L + r·(U - L))` with `L`/`U` the sums of per-category
//! minimum/maximum costs and `r` the budget ratio.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use super::{Correlation, GenSpec};
use crate::error::Result;
use crate::model::{Category, Instance, Item};

pub const COEFFICIENT_RANGE: (i64, i64) = (1, 1000);
pub const WEAK_NOISE: i64 = 100;

pub fn uniform_int(rng: &mut impl RngCore, lo: i64, hi: i64) -> i64 {
    debug_assert!(lo <= hi);
    let size = (hi - lo) as u64 + 1;
    // 2^64 mod size, computed without overflow.
    let reject = (u64::MAX % size + 1) % size;
    loop {
        let word = rng.next_u64();
        if word <= u64::MAX - reject {
            return lo + (word % size) as i64;
        }
    }
}

pub fn generate(spec: &GenSpec) -> Result<Instance<f64>> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let (lo, hi) = COEFFICIENT_RANGE;
    let mut categories = Vec::with_capacity(spec.m);
    for _ in 0..spec.m {
        let mut items = Vec::with_capacity(spec.n);
        for _ in 0..spec.n {
            let (profit, cost) = match spec.correlation {
                Correlation::Uncorrelated => {
                    let p = uniform_int(&mut rng, lo, hi);
                    let c = uniform_int(&mut rng, lo, hi);
                    (p, c)
                }
                Correlation::Weak => {
                    let c = uniform_int(&mut rng, lo, hi);
                    let noise = uniform_int(&mut rng, -WEAK_NOISE, WEAK_NOISE);
                    ((c + noise).max(1), c)
                }
            };
            items.push(Item::new(profit as f64, cost as f64)?);
        }
        categories.push(Category::new(items)?);
    }
    let low: f64 = categories.iter().map(Category::min_cost).sum();
    let high: f64 = categories.iter().map(Category::max_cost).sum();
    let budget = (low + spec.budget_ratio * (high - low)).round();
    Instance::new(categories, budget)
}
