//! Executable supportedness tests.
//!
//! Each characterization is decided by its own exact LP, with no shared
//! formulation between the two sides of an equivalence:
//!
//! | test                          | characterization                              |
//! |-------------------------------|-----------------------------------------------|
//! | [`weakly_supported_witness`]  | optimal for some `λ ≥ 0`, `Σλ = 1`            |
//! | [`supported_witness`]         | optimal for some `λ > 0`, `Σλ = 1`            |
//! | [`is_on_frontier`]            | `conv(Y_N) ∩ (y − R^p_≥) = {y}`               |
//! | [`is_on_boundary_upper_image`]| `y ∈ ∂ conv(Y_N + R^p_≥)`                     |
//! | [`is_extreme_supported`]      | `y` is a vertex of `conv(Y_N + R^p_≥)`        |
//!
//! [`classify_all`] combines them and refuses to report a classification in
//! which weak supportedness and boundary membership disagree, strict
//! supportedness and frontier membership disagree, or (for `p = 2`) weak and
//! strict supportedness disagree.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::dominance::{filter_nondominated_with, OutcomePoint, OutcomeSet};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::lp::{lp_solve, Constraint, LinearProgram, LpStatus};
use crate::rational::{dot, sub_vec, Rational};

/// A normalized weight vector in `Λ_p^0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Rational>", into = "Vec<Rational>")]
pub struct WeightVector(Vec<Rational>);

impl WeightVector {
    /// Fails unless every component is nonnegative and they sum to exactly one.
    pub fn new(lambda: Vec<Rational>) -> Result<Self> {
        if lambda.is_empty() {
            return Err(Error::InvalidWeight("empty".into()));
        }
        if let Some(neg) = lambda.iter().find(|l| l.is_negative()) {
            return Err(Error::InvalidWeight(format!("negative component {neg}")));
        }
        let sum: Rational = lambda.iter().sum();
        if sum != Rational::one() {
            return Err(Error::InvalidWeight(format!("components sum to {sum}, not 1")));
        }
        Ok(WeightVector(lambda))
    }

    /// Scales a nonnegative, nonzero direction onto the simplex.
    pub fn normalized(direction: Vec<Rational>) -> Result<Self> {
        let sum: Rational = direction.iter().sum();
        if !sum.is_positive() {
            return Err(Error::InvalidWeight("direction has no positive mass".into()));
        }
        Self::new(direction.into_iter().map(|d| d / &sum).collect())
    }

    pub fn barycenter(p: usize) -> Self {
        let w = Rational::new(1, p as i64);
        WeightVector(vec![w; p])
    }

    /// Membership of `Λ_p` (all components > 0).
    pub fn strictly_positive(&self) -> bool {
        self.0.iter().all(Rational::is_positive)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[Rational] {
        &self.0
    }

    pub fn value(&self, y: &OutcomePoint) -> Rational {
        dot(&self.0, &y.coords)
    }

    /// Whether `y` minimizes `λ·y'` over every point of `set`.
    pub fn certifies(&self, y: &OutcomePoint, set: &OutcomeSet) -> bool {
        let v = self.value(y);
        set.points().iter().all(|q| v <= self.value(q))
    }
}

impl TryFrom<Vec<Rational>> for WeightVector {
    type Error = Error;
    fn try_from(v: Vec<Rational>) -> Result<Self> {
        WeightVector::new(v)
    }
}

impl From<WeightVector> for Vec<Rational> {
    fn from(w: WeightVector) -> Self {
        w.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Label {
    Dominated,
    Unsupported,
    WeaklySupportedOnly,
    Supported,
    ExtremeSupported,
}

impl Label {
    pub const ALL: [Label; 5] = [
        Label::Dominated,
        Label::Unsupported,
        Label::WeaklySupportedOnly,
        Label::Supported,
        Label::ExtremeSupported,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Label::Dominated => "dominated",
            Label::Unsupported => "unsupported",
            Label::WeaklySupportedOnly => "weakly-supported-only",
            Label::Supported => "supported",
            Label::ExtremeSupported => "extreme-supported",
        }
    }

    pub fn is_weakly_supported(self) -> bool {
        self >= Label::WeaklySupportedOnly
    }

    pub fn is_supported(self) -> bool {
        self >= Label::Supported
    }
}

impl std::fmt::Display for Label {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub id: String,
    pub label: Label,
    pub weak_witness: Option<WeightVector>,
    pub strict_witness: Option<WeightVector>,
    pub frontier: bool,
    pub boundary: bool,
    #[serde(default)]
    pub vertex: bool,
    /// For dominated points, a non-dominated point that dominates it.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dominated_by: Option<String>,
}

impl Classification {
    /// Checks the structural invariants tying label, witnesses and flags.
    pub fn check_invariants(&self) -> std::result::Result<(), String> {
        let fail = |m: &str| Err(format!("{}: {m}", self.id));
        match self.label {
            Label::ExtremeSupported | Label::Supported => {
                match &self.strict_witness {
                    Some(w) if w.strictly_positive() => {}
                    _ => return fail("supported label without strictly positive witness"),
                }
                if !(self.frontier && self.boundary) {
                    return fail("supported point off frontier or boundary");
                }
                if self.vertex != (self.label == Label::ExtremeSupported) {
                    return fail("vertex flag disagrees with label");
                }
            }
            Label::WeaklySupportedOnly => {
                match &self.weak_witness {
                    Some(w) if !w.strictly_positive() => {}
                    _ => return fail("weakly-supported-only without zero-component witness"),
                }
                if !self.boundary || self.frontier || self.strict_witness.is_some() {
                    return fail("weakly-supported-only flags inconsistent");
                }
            }
            Label::Unsupported => {
                if self.boundary || self.frontier {
                    return fail("unsupported point on boundary or frontier");
                }
                if self.weak_witness.is_some() || self.strict_witness.is_some() {
                    return fail("unsupported point with witness");
                }
            }
            Label::Dominated => {
                if self.weak_witness.is_some() || self.strict_witness.is_some() {
                    return fail("dominated point with witness");
                }
            }
        }
        Ok(())
    }
}

fn ones(n: usize) -> Vec<Rational> {
    vec![Rational::one(); n]
}

fn others(yn: &OutcomeSet, idx: usize) -> impl Iterator<Item = &OutcomePoint> {
    yn.points()
        .iter()
        .enumerate()
        .filter(move |(j, _)| *j != idx)
        .map(|(_, q)| q)
}

/// Some `λ ∈ Λ_p^0` for which `y` is weighted-sum optimal over `yn`, if any.
pub fn weakly_supported_witness(y: &OutcomePoint, yn: &OutcomeSet) -> Result<Option<WeightVector>> {
    let idx = yn.require(y)?;
    let p = yn.p();
    if yn.len() == 1 {
        return Ok(Some(WeightVector::barycenter(p)));
    }
    let mut lp = LinearProgram::minimize(vec![Rational::zero(); p]);
    lp.push(Constraint::eq(ones(p), Rational::one()));
    for q in others(yn, idx) {
        lp.push(Constraint::ge(sub_vec(&q.coords, &y.coords), Rational::zero()));
    }
    let out = lp_solve(&lp)?;
    out.solution.map(WeightVector::new).transpose()
}

/// Some `λ ∈ Λ_p` for which `y` is weighted-sum optimal over `yn`, if any.
///
/// Maximizes `t` subject to `λ_i ≥ t`; the returned weight is the LP optimizer
/// and is returned only when the optimal `t` is strictly positive.
pub fn supported_witness(y: &OutcomePoint, yn: &OutcomeSet) -> Result<Option<WeightVector>> {
    let idx = yn.require(y)?;
    let p = yn.p();
    // variables: λ_1..λ_p, t
    let mut objective = vec![Rational::zero(); p + 1];
    objective[p] = Rational::one();
    let mut lp = LinearProgram::maximize(objective);
    let mut sum = ones(p);
    sum.push(Rational::zero());
    lp.push(Constraint::eq(sum, Rational::one()));
    for i in 0..p {
        let mut row = vec![Rational::zero(); p + 1];
        row[i] = Rational::one();
        row[p] = -Rational::one();
        lp.push(Constraint::ge(row, Rational::zero()));
    }
    for q in others(yn, idx) {
        let mut row = sub_vec(&q.coords, &y.coords);
        row.push(Rational::zero());
        lp.push(Constraint::ge(row, Rational::zero()));
    }
    let out = lp_solve(&lp)?;
    match (out.status, out.value, out.solution) {
        (LpStatus::Optimal, Some(t), Some(mut sol)) if t.is_positive() => {
            sol.truncate(p);
            Ok(Some(WeightVector::new(sol)?))
        }
        _ => Ok(None),
    }
}

/// Whether no convex combination of `yn` other than `y` itself lies weakly
/// below `y`.
///
/// Minimizes `Σ_k (z_k − y_k)` over `z = Σ μ_j y^j ≤ y`, `μ` in the simplex;
/// `y` is on the frontier iff the minimum is zero.
pub fn is_on_frontier(y: &OutcomePoint, yn: &OutcomeSet) -> Result<bool> {
    yn.require(y)?;
    let p = yn.p();
    let n = yn.len();
    let diffs: Vec<Vec<Rational>> = yn
        .points()
        .iter()
        .map(|q| sub_vec(&q.coords, &y.coords))
        .collect();
    let objective = diffs.iter().map(|d| d.iter().sum()).collect();
    let mut lp = LinearProgram::minimize(objective);
    lp.push(Constraint::eq(ones(n), Rational::one()));
    for k in 0..p {
        let row = diffs.iter().map(|d| d[k].clone()).collect();
        lp.push(Constraint::le(row, Rational::zero()));
    }
    let out = lp_solve(&lp)?;
    match (out.status, out.value) {
        (LpStatus::Optimal, Some(v)) => Ok(v.is_zero()),
        (status, _) => Err(Error::Consistency(format!(
            "frontier LP for {} returned {status:?}; μ = e_y is always feasible and the objective is bounded",
            y.id
        ))),
    }
}

/// Whether `y` lies on the boundary of the upper image.
///
/// Maximizes `ε ≥ 0` such that some convex combination `c` of `yn` satisfies
/// `c + ε·e ≤ y`; `y` is interior iff the maximum is positive.
pub fn is_on_boundary_upper_image(y: &OutcomePoint, yn: &OutcomeSet) -> Result<bool> {
    yn.require(y)?;
    let p = yn.p();
    let n = yn.len();
    // variables: μ_1..μ_n, ε
    let mut objective = vec![Rational::zero(); n + 1];
    objective[n] = Rational::one();
    let mut lp = LinearProgram::maximize(objective);
    let mut sum = ones(n);
    sum.push(Rational::zero());
    lp.push(Constraint::eq(sum, Rational::one()));
    for k in 0..p {
        let mut row: Vec<Rational> = yn
            .points()
            .iter()
            .map(|q| &q.coords[k] - &y.coords[k])
            .collect();
        row.push(Rational::one());
        lp.push(Constraint::le(row, Rational::zero()));
    }
    let out = lp_solve(&lp)?;
    match (out.status, out.value) {
        (LpStatus::Optimal, Some(eps)) => Ok(eps.is_zero()),
        (status, _) => Err(Error::Consistency(format!(
            "boundary LP for {} returned {status:?}; ε = 0, μ = e_y is always feasible and ε is bounded",
            y.id
        ))),
    }
}

/// Whether `y` is a vertex of the upper image: no convex combination of the
/// other points lies weakly below it.
pub fn is_extreme_supported(y: &OutcomePoint, yn: &OutcomeSet) -> Result<bool> {
    let idx = yn.require(y)?;
    if yn.len() == 1 {
        return Ok(true);
    }
    let p = yn.p();
    let rest: Vec<&OutcomePoint> = others(yn, idx).collect();
    let mut lp = LinearProgram::minimize(vec![Rational::zero(); rest.len()]);
    lp.push(Constraint::eq(ones(rest.len()), Rational::one()));
    for k in 0..p {
        let row = rest.iter().map(|q| &q.coords[k] - &y.coords[k]).collect();
        lp.push(Constraint::le(row, Rational::zero()));
    }
    Ok(lp_solve(&lp)?.status == LpStatus::Infeasible)
}

/// Raw outcomes of all five independent tests for one non-dominated point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointTests {
    pub weak_witness: Option<WeightVector>,
    pub strict_witness: Option<WeightVector>,
    pub frontier: bool,
    pub boundary: bool,
    pub vertex: bool,
}

pub fn run_point_tests(y: &OutcomePoint, yn: &OutcomeSet) -> Result<PointTests> {
    Ok(PointTests {
        weak_witness: weakly_supported_witness(y, yn)?,
        strict_witness: supported_witness(y, yn)?,
        frontier: is_on_frontier(y, yn)?,
        boundary: is_on_boundary_upper_image(y, yn)?,
        vertex: is_extreme_supported(y, yn)?,
    })
}

/// Verdicts of the proven equivalences for one non-dominated point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointVerdict {
    pub id: String,
    pub weakly_supported: bool,
    pub boundary: bool,
    pub supported: bool,
    pub frontier: bool,
    /// weakly supported ⟺ on the boundary of the upper image
    pub weak_iff_boundary: bool,
    /// supported ⟺ on the non-dominated frontier
    pub strict_iff_frontier: bool,
    /// `p = 2` only: weakly supported ⟺ supported
    pub biobjective_collapse: Option<bool>,
    /// witnesses re-verified as exact optimality certificates, vertex ⇒ supported
    pub certificates_sound: bool,
}

impl PointVerdict {
    pub fn passed(&self) -> bool {
        self.weak_iff_boundary
            && self.strict_iff_frontier
            && self.biobjective_collapse.unwrap_or(true)
            && self.certificates_sound
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossCheckReport {
    pub p: usize,
    pub points: Vec<PointVerdict>,
}

impl CrossCheckReport {
    pub fn all_passed(&self) -> bool {
        self.points.iter().all(PointVerdict::passed)
    }

    pub fn weak_iff_boundary(&self) -> bool {
        self.points.iter().all(|v| v.weak_iff_boundary)
    }

    pub fn strict_iff_frontier(&self) -> bool {
        self.points.iter().all(|v| v.strict_iff_frontier)
    }

    pub fn biobjective_collapse(&self) -> Option<bool> {
        (self.p == 2).then(|| self.points.iter().all(|v| v.biobjective_collapse == Some(true)))
    }

    pub fn certificates_sound(&self) -> bool {
        self.points.iter().all(|v| v.certificates_sound)
    }
}

fn verdict(y: &OutcomePoint, yn: &OutcomeSet, t: &PointTests) -> PointVerdict {
    let weak = t.weak_witness.is_some();
    let strict = t.strict_witness.is_some();
    let sound_weak = t.weak_witness.as_ref().is_none_or(|w| w.certifies(y, yn));
    let sound_strict = t
        .strict_witness
        .as_ref()
        .is_none_or(|w| w.strictly_positive() && w.certifies(y, yn));
    PointVerdict {
        id: y.id.clone(),
        weakly_supported: weak,
        boundary: t.boundary,
        supported: strict,
        frontier: t.frontier,
        weak_iff_boundary: weak == t.boundary,
        strict_iff_frontier: strict == t.frontier,
        biobjective_collapse: (yn.p() == 2).then_some(weak == strict),
        certificates_sound: sound_weak && sound_strict && (!t.vertex || strict) && (!strict || weak),
    }
}

/// Full per-point outcome: classification plus the equivalence verdicts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Analysis {
    pub classifications: Vec<Classification>,
    pub cross_check: CrossCheckReport,
}

impl Analysis {
    pub fn count(&self, label: Label) -> usize {
        self.classifications.iter().filter(|c| c.label == label).count()
    }

    pub fn ids_with(&self, label: Label) -> Vec<&str> {
        self.classifications
            .iter()
            .filter(|c| c.label == label)
            .map(|c| c.id.as_str())
            .collect()
    }
}

/// Runs every test on every non-dominated point, never failing on a theorem
/// violation (see [`classify_all`] for the strict variant).
pub fn analyze(set: &OutcomeSet) -> Result<Analysis> {
    analyze_with(set, Execution::default())
}

pub fn analyze_with(set: &OutcomeSet, exec: Execution) -> Result<Analysis> {
    let filter = filter_nondominated_with(set, exec);
    let yn = &filter.nondominated;
    let tests: Vec<Result<PointTests>> = exec.map(yn.points(), |y| run_point_tests(y, yn));
    let tests: Vec<PointTests> = tests.into_iter().collect::<Result<_>>()?;

    let verdicts: Vec<PointVerdict> = yn
        .points()
        .iter()
        .zip(&tests)
        .map(|(y, t)| verdict(y, yn, t))
        .collect();

    let mut by_id = yn.points().iter().map(|q| q.id.as_str()).zip(tests);
    let mut classifications = Vec::with_capacity(set.len());
    for (i, y) in set.points().iter().enumerate() {
        if let Some(dom) = filter.dominated_by[i] {
            classifications.push(Classification {
                id: y.id.clone(),
                label: Label::Dominated,
                weak_witness: None,
                strict_witness: None,
                frontier: false,
                boundary: false,
                vertex: false,
                dominated_by: Some(set.points()[dom].id.clone()),
            });
            continue;
        }
        let (id, t) = by_id.next().expect("non-dominated points are visited in order");
        debug_assert_eq!(id, y.id);
        let label = match (&t.strict_witness, &t.weak_witness) {
            (Some(_), _) if t.vertex => Label::ExtremeSupported,
            (Some(_), _) => Label::Supported,
            (None, Some(_)) => Label::WeaklySupportedOnly,
            (None, None) => Label::Unsupported,
        };
        classifications.push(Classification {
            id: y.id.clone(),
            label,
            weak_witness: t.weak_witness,
            strict_witness: t.strict_witness,
            frontier: t.frontier,
            boundary: t.boundary,
            vertex: t.vertex,
            dominated_by: None,
        });
    }

    Ok(Analysis {
        classifications,
        cross_check: CrossCheckReport {
            p: set.p(),
            points: verdicts,
        },
    })
}

/// Labels every point of `set`; fails with [`Error::Consistency`] and a
/// diagnostic dump if any proven equivalence or label invariant is violated.
pub fn classify_all(set: &OutcomeSet) -> Result<Vec<Classification>> {
    classify_all_with(set, Execution::default())
}

pub fn classify_all_with(set: &OutcomeSet, exec: Execution) -> Result<Vec<Classification>> {
    let analysis = analyze_with(set, exec)?;
    ensure_consistent(set, &analysis)?;
    Ok(analysis.classifications)
}

/// Turns any failed verdict or label invariant into a consistency error.
pub fn ensure_consistent(set: &OutcomeSet, analysis: &Analysis) -> Result<()> {
    let mut problems = Vec::new();
    for v in analysis.cross_check.points.iter().filter(|v| !v.passed()) {
        problems.push(format!("{v:?}"));
    }
    for c in &analysis.classifications {
        if let Err(e) = c.check_invariants() {
            problems.push(e);
        }
    }
    if problems.is_empty() {
        return Ok(());
    }
    let mut dump = format!("p = {}, points:", set.p());
    for q in set.points() {
        let coords: Vec<String> = q.coords.iter().map(ToString::to_string).collect();
        let _ = write!(dump, " {}=({})", q.id, coords.join(","));
    }
    Err(Error::Consistency(format!("{}; {dump}", problems.join("; "))))
}

/// Equivalence verdicts for every non-dominated point.
pub fn cross_check(set: &OutcomeSet) -> Result<CrossCheckReport> {
    Ok(analyze(set)?.cross_check)
}
