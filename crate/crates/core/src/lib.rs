//! Multiple-choice knapsack (MCKP) heuristics built on a bi-objective view of
//! the problem: maximize total profit and minimize total cost over the
//! multiple-choice set, then recover budget-feasible solutions from Pareto
//! optimal ones.
//!
//! The pipeline is
//!
//! 1. [`bissa::bissa`]: weight bisection over linear scalarizations, which
//!    returns a feasible and an infeasible supported solution bracketing the
//!    budget (or a certified optimum);
//! 2. [`kissa::kissa`]: per-category augmented Chebyshev subproblems that
//!    move the feasible solution towards unsupported Pareto points;
//! 3. [`oracle`]: brute force and dynamic programming ground truth.
//!
//! All algorithms are generic over [`Scalar`]. The aliases at the crate root
//! fix the scalar to `f64`; [`Exact`] is the rational type used where binary
//! floating point is not precise enough.

pub mod bissa;
pub mod error;
pub mod frontier;
pub mod harness;
pub mod kissa;
pub mod model;
pub mod oracle;
pub mod scalar;

pub use error::{Error, Result};
pub use model::{read_instance, write_instance, Selection};
pub use scalar::Scalar;

/// Exact rational scalar.
pub type Exact = num_rational::Ratio<i128>;

pub type Item = model::Item<f64>;
pub type Category = model::Category<f64>;
pub type Instance = model::Instance<f64>;
pub type ObjectivePoint = model::ObjectivePoint<f64>;
pub type RhoBound = frontier::RhoBound<f64>;
pub type StraddlePair = bissa::StraddlePair<f64>;
pub type BissaOutcome = bissa::BissaOutcome<f64>;
pub type KissaConfig = kissa::KissaConfig<f64>;
pub type KissaRun = kissa::KissaRun<f64>;
pub type ExactResult = oracle::ExactResult<f64>;
