//! Dichotomic weighted-sum search for the extreme supported points of a
//! bi-objective outcome set.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::classifier::WeightVector;
use crate::dominance::{OutcomePoint, OutcomeSet};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::rational::Rational;

/// A minimizer of `λ·y` over `set`; ties go to the lexicographically smallest
/// coordinate vector, which is always non-dominated.
pub fn weighted_sum_argmin<'a>(lambda: &WeightVector, set: &'a OutcomeSet) -> Result<&'a OutcomePoint> {
    if lambda.dim() != set.p() {
        return Err(Error::dims(set.p(), lambda.dim(), "weight vector"));
    }
    let mut best: Option<(&OutcomePoint, Rational)> = None;
    for q in set.points() {
        let v = lambda.value(q);
        let better = match &best {
            None => true,
            Some((b, bv)) => match v.cmp(bv) {
                Ordering::Less => true,
                Ordering::Equal => q.coords < b.coords,
                Ordering::Greater => false,
            },
        };
        if better {
            best = Some((q, v));
        }
    }
    best.map(|(q, _)| q).ok_or(Error::EmptySet)
}

/// Two-stage lexicographic minimum under the objective order `order`.
fn lexicographic_min(set: &OutcomeSet, order: [usize; 2]) -> &OutcomePoint {
    set.points()
        .iter()
        .min_by(|a, b| {
            a.coords[order[0]]
                .cmp(&b.coords[order[0]])
                .then_with(|| a.coords[order[1]].cmp(&b.coords[order[1]]))
        })
        .expect("outcome sets are nonempty")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DichotomicResult {
    /// Increasing in the first objective, decreasing in the second.
    pub extremes: Vec<OutcomePoint>,
    /// A strictly positive weight under which each extreme is the unique
    /// weighted-sum minimizer.
    pub witness_weights: Vec<WeightVector>,
    /// Anchors count one call each.
    pub oracle_calls: usize,
}

/// The weight normal to the segment from `a` to `b` (`a₁ < b₁`, `a₂ > b₂`).
fn segment_normal(a: &OutcomePoint, b: &OutcomePoint) -> WeightVector {
    let n = vec![
        &a.coords[1] - &b.coords[1],
        &b.coords[0] - &a.coords[0],
    ];
    WeightVector::normalized(n).expect("consecutive extremes differ in both objectives")
}

fn midpoint(a: &WeightVector, b: &WeightVector) -> WeightVector {
    let half = Rational::new(1, 2);
    let v = a
        .as_slice()
        .iter()
        .zip(b.as_slice())
        .map(|(x, y)| (x + y) * &half)
        .collect();
    WeightVector::new(v).expect("midpoint of two simplex points lies on the simplex")
}

pub fn dichotomic_extremes(set: &OutcomeSet) -> Result<DichotomicResult> {
    dichotomic_extremes_with(set, Execution::default())
}

pub fn dichotomic_extremes_with(set: &OutcomeSet, exec: Execution) -> Result<DichotomicResult> {
    if set.p() != 2 {
        return Err(Error::Invalid(format!(
            "dichotomic search needs exactly 2 objectives, got {}",
            set.p()
        )));
    }
    let first = lexicographic_min(set, [0, 1]);
    let last = lexicographic_min(set, [1, 0]);
    if first.coords == last.coords {
        return Ok(DichotomicResult {
            extremes: vec![first.clone()],
            witness_weights: vec![WeightVector::barycenter(2)],
            oracle_calls: 2,
        });
    }
    let (inner, probes) = search(set, first, last, exec)?;
    let mut extremes = Vec::with_capacity(inner.len() + 2);
    extremes.push(first.clone());
    extremes.extend(inner);
    extremes.push(last.clone());

    let normals: Vec<WeightVector> = extremes.windows(2).map(|w| segment_normal(&w[0], &w[1])).collect();
    let axis = |i: usize| WeightVector::new(if i == 0 {
        vec![Rational::one(), Rational::zero()]
    } else {
        vec![Rational::zero(), Rational::one()]
    })
    .expect("unit vectors are normalized");
    let mut witness_weights = Vec::with_capacity(extremes.len());
    witness_weights.push(midpoint(&axis(0), &normals[0]));
    for w in normals.windows(2) {
        witness_weights.push(midpoint(&w[0], &w[1]));
    }
    witness_weights.push(midpoint(&normals[normals.len() - 1], &axis(1)));

    Ok(DichotomicResult {
        extremes,
        witness_weights,
        oracle_calls: 2 + probes,
    })
}

/// Extremes strictly between `a` and `b`, and the number of probes spent.
fn search(
    set: &OutcomeSet,
    a: &OutcomePoint,
    b: &OutcomePoint,
    exec: Execution,
) -> Result<(Vec<OutcomePoint>, usize)> {
    let lambda = segment_normal(a, b);
    let c = weighted_sum_argmin(&lambda, set)?;
    if lambda.value(c) >= lambda.value(a) {
        return Ok((Vec::new(), 1));
    }
    let (left, right) = exec.join(|| search(set, a, c, exec), || search(set, c, b, exec));
    let (mut left, lp) = left?;
    let (right, rp) = right?;
    left.push(c.clone());
    left.extend(right);
    Ok((left, 1 + lp + rp))
}
