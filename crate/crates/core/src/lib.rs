//! Exact classification of the non-dominated points of finite multi-objective
//! outcome sets.
//!
//! Points are labeled extreme supported, supported, weakly supported only,
//! unsupported or dominated. Each notion of supportedness is tested by its own
//! exact rational LP, so the known equivalences (weighted-sum optimality with
//! nonnegative weights vs. boundary of the upper image, with positive weights
//! vs. the non-dominated frontier) are checked on every instance rather than
//! assumed.
//!
//! ```
//! use moco_supported::{classify_all, validate_instance, Label, Rational};
//!
//! let rows = [[2, 9, 1], [3, 6, 1], [8, 3, 1], [6, 5, 1]]
//!     .iter()
//!     .map(|r| r.iter().map(|&x| Rational::from(x)).collect())
//!     .collect();
//! let set = validate_instance(rows, 3).unwrap();
//! let labels: Vec<Label> = classify_all(&set).unwrap().iter().map(|c| c.label).collect();
//! assert_eq!(labels[3], Label::WeaklySupportedOnly);
//! ```

pub mod biobjective;
pub mod classifier;
pub mod dominance;
pub mod error;
pub mod exec;
pub mod instances;
pub mod lp;
pub mod rational;
pub mod weightspace;

pub use biobjective::{dichotomic_extremes, weighted_sum_argmin, DichotomicResult};
pub use classifier::{
    analyze, classify_all, cross_check, is_extreme_supported, is_on_boundary_upper_image,
    is_on_frontier, supported_witness, weakly_supported_witness, Analysis, Classification,
    CrossCheckReport, Label, PointVerdict, WeightVector,
};
pub use dominance::{dominates, filter_nondominated, validate_instance, OutcomePoint, OutcomeSet};
pub use error::{Error, Result};
pub use exec::Execution;
pub use instances::{
    enumerate_assignment, enumerate_knapsack, lift_zero_objective, parse_instance,
    serialize_instance, AssignmentSpec, EnumerationCap, Instance, KnapsackSpec,
};
pub use lp::{lp_feasible, lp_solve, LinearProgram, LpOutcome, LpStatus};
pub use rational::Rational;
pub use weightspace::{cell_membership, decompose, weight_cell, WeightCell};
