//! Weight space decomposition.
//!
//! The cell `Λ(y)` of a non-dominated point `y` is the set of normalized
//! weights `λ ≥ 0` under which `y` is weighted-sum optimal. Cells are kept as
//! exact H-representations. For `p = 3` they are also projected onto
//! `(λ₁, λ₂)` with `λ₃ = 1 − λ₁ − λ₂` and their vertices enumerated; for
//! `p = 2` the cell is reported as an interval of `λ₁`.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::classifier::WeightVector;
use crate::dominance::{filter_nondominated_with, OutcomePoint, OutcomeSet};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::lp::{lp_feasible, lp_solve, Constraint, LinearProgram, LpStatus, Relation};
use crate::rational::{sub_vec, Rational};

/// A point of the projected weight triangle, `(λ₁, λ₂)`.
pub type Point2 = [Rational; 2];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HalfSpace {
    pub coeffs: Vec<Rational>,
    pub relation: RelationTag,
    pub rhs: Rational,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RelationTag {
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = "=")]
    Eq,
    #[serde(rename = ">=")]
    Ge,
}

impl RelationTag {
    pub fn as_str(self) -> &'static str {
        match self {
            RelationTag::Le => "<=",
            RelationTag::Eq => "=",
            RelationTag::Ge => ">=",
        }
    }
}

impl From<&Constraint> for HalfSpace {
    fn from(c: &Constraint) -> Self {
        HalfSpace {
            coeffs: c.coeffs.clone(),
            relation: match c.relation {
                Relation::Le => RelationTag::Le,
                Relation::Eq => RelationTag::Eq,
                Relation::Ge => RelationTag::Ge,
            },
            rhs: c.rhs.clone(),
        }
    }
}

impl HalfSpace {
    pub fn to_constraint(&self) -> Constraint {
        let relation = match self.relation {
            RelationTag::Le => Relation::Le,
            RelationTag::Eq => Relation::Eq,
            RelationTag::Ge => Relation::Ge,
        };
        Constraint::new(self.coeffs.clone(), relation, self.rhs.clone())
    }

    pub fn is_satisfied_by(&self, lambda: &[Rational]) -> bool {
        self.to_constraint().is_satisfied_by(lambda)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightCell {
    pub id: String,
    /// Constraints over `λ ∈ R^p`, including `λ ≥ 0` and `Σλ = 1`.
    pub hrep: Vec<HalfSpace>,
    /// `p = 3`: counter-clockwise vertices of the projected cell, starting at
    /// the lexicographically smallest one.
    pub projected_vertices: Option<Vec<Point2>>,
    /// `p = 2`: the cell as `[lo, hi]` in `λ₁`.
    pub projected_interval: Option<[Rational; 2]>,
    pub nonempty: bool,
    /// Whether the cell has nonempty interior relative to the weight simplex.
    pub is_full_dimensional: bool,
}

impl WeightCell {
    pub fn contains(&self, lambda: &[Rational]) -> bool {
        self.hrep.iter().all(|h| h.is_satisfied_by(lambda))
    }

    /// Strict satisfaction of every inequality (equalities still exact).
    pub fn contains_strictly(&self, lambda: &[Rational]) -> bool {
        self.hrep.iter().all(|h| {
            let lhs = crate::rational::dot(&h.coeffs, lambda);
            match h.relation {
                RelationTag::Le => lhs < h.rhs,
                RelationTag::Ge => lhs > h.rhs,
                RelationTag::Eq => lhs == h.rhs,
            }
        })
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CellOptions {
    /// Drop half-spaces implied by the remaining ones (one LP each).
    pub prune_redundant: bool,
}

fn unit(p: usize, i: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); p];
    v[i] = Rational::one();
    v
}

fn cell_constraints(y: &OutcomePoint, idx: usize, yn: &OutcomeSet) -> Vec<Constraint> {
    let p = yn.p();
    let mut cs: Vec<Constraint> = (0..p)
        .map(|i| Constraint::ge(unit(p, i), Rational::zero()))
        .collect();
    cs.push(Constraint::eq(vec![Rational::one(); p], Rational::one()));
    for (j, q) in yn.points().iter().enumerate() {
        if j != idx {
            cs.push(Constraint::ge(sub_vec(&q.coords, &y.coords), Rational::zero()));
        }
    }
    cs
}

pub fn weight_cell(y: &OutcomePoint, yn: &OutcomeSet) -> Result<WeightCell> {
    weight_cell_with(y, yn, CellOptions::default())
}

pub fn weight_cell_with(y: &OutcomePoint, yn: &OutcomeSet, opts: CellOptions) -> Result<WeightCell> {
    let idx = yn.require(y)?;
    let p = yn.p();
    let mut cs = cell_constraints(y, idx, yn);
    let nonempty = lp_feasible(&cs, p)?.is_some();
    let is_full_dimensional = nonempty && full_dimensional(&cs, p)?;
    if opts.prune_redundant && nonempty {
        cs = prune_redundant(cs, p)?;
    }
    let projected_vertices = (p == 3).then(|| if nonempty { project_polygon(&cs) } else { Vec::new() });
    let projected_interval = if p == 2 && nonempty {
        Some(project_interval(&cs))
    } else {
        None
    };
    Ok(WeightCell {
        id: y.id.clone(),
        hrep: cs.iter().map(HalfSpace::from).collect(),
        projected_vertices,
        projected_interval,
        nonempty,
        is_full_dimensional,
    })
}

/// Maximizes `t` with every inequality slackened by `t`; positive iff the
/// cell has relative interior points that are strictly inside every facet.
fn full_dimensional(cs: &[Constraint], p: usize) -> Result<bool> {
    let mut objective = vec![Rational::zero(); p + 1];
    objective[p] = Rational::one();
    let mut lp = LinearProgram::maximize(objective);
    for j in 0..p {
        lp.set_free(j);
    }
    for c in cs {
        let mut coeffs = c.coeffs.clone();
        match c.relation {
            Relation::Eq => {
                coeffs.push(Rational::zero());
                lp.push(Constraint::eq(coeffs, c.rhs.clone()));
            }
            Relation::Ge => {
                coeffs.push(-Rational::one());
                lp.push(Constraint::ge(coeffs, c.rhs.clone()));
            }
            Relation::Le => {
                coeffs.push(Rational::one());
                lp.push(Constraint::le(coeffs, c.rhs.clone()));
            }
        }
    }
    let out = lp_solve(&lp)?;
    match (out.status, out.value) {
        (LpStatus::Optimal, Some(t)) => Ok(t.is_positive()),
        // Unbounded only if every inequality is vacuous, which λ ≥ 0 rules out.
        (LpStatus::Unbounded, _) => Ok(true),
        _ => Ok(false),
    }
}

fn prune_redundant(mut cs: Vec<Constraint>, p: usize) -> Result<Vec<Constraint>> {
    let mut i = 0;
    while i < cs.len() {
        if cs[i].relation == Relation::Eq {
            i += 1;
            continue;
        }
        let candidate = cs[i].clone();
        let rest: Vec<Constraint> = cs
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, c)| c.clone())
            .collect();
        let (sense, bound_ok): (_, fn(&Rational, &Rational) -> bool) = match candidate.relation {
            Relation::Ge => (crate::lp::Sense::Minimize, |v, b| v >= b),
            _ => (crate::lp::Sense::Maximize, |v, b| v <= b),
        };
        let mut lp = LinearProgram::new(sense, candidate.coeffs.clone());
        for j in 0..p {
            lp.set_free(j);
        }
        lp.constraints = rest.clone();
        let out = lp_solve(&lp)?;
        let redundant = matches!((out.status, &out.value), (LpStatus::Optimal, Some(v)) if bound_ok(v, &candidate.rhs));
        if redundant {
            cs = rest;
        } else {
            i += 1;
        }
    }
    Ok(cs)
}

/// `g·u ≥ h` in projected coordinates.
struct HalfPlane {
    g: [Rational; 2],
    h: Rational,
}

fn project_constraints(cs: &[Constraint]) -> Vec<HalfPlane> {
    let mut out = Vec::new();
    for c in cs {
        let a = &c.coeffs;
        let g = [&a[0] - &a[2], &a[1] - &a[2]];
        let h = &c.rhs - &a[2];
        let neg = |g: &[Rational; 2], h: &Rational| HalfPlane {
            g: [-&g[0], -&g[1]],
            h: -h,
        };
        match c.relation {
            Relation::Ge => out.push(HalfPlane { g, h }),
            Relation::Le => out.push(neg(&g, &h)),
            Relation::Eq => {
                out.push(neg(&g, &h));
                out.push(HalfPlane { g, h });
            }
        }
    }
    out
}

fn satisfies(planes: &[HalfPlane], u: &Point2) -> bool {
    planes
        .iter()
        .all(|hp| &hp.g[0] * &u[0] + &hp.g[1] * &u[1] >= hp.h)
}

/// Pairwise boundary-line intersection, feasibility filter, exact dedupe and
/// counter-clockwise ordering around the centroid.
fn project_polygon(cs: &[Constraint]) -> Vec<Point2> {
    let planes = project_constraints(cs);
    let lines: Vec<&HalfPlane> = planes
        .iter()
        .filter(|hp| !(hp.g[0].is_zero() && hp.g[1].is_zero()))
        .collect();
    let mut verts: Vec<Point2> = Vec::new();
    for (i, a) in lines.iter().enumerate() {
        for b in &lines[i + 1..] {
            let det = &a.g[0] * &b.g[1] - &a.g[1] * &b.g[0];
            if det.is_zero() {
                continue;
            }
            let x = (&a.h * &b.g[1] - &a.g[1] * &b.h) / &det;
            let y = (&a.g[0] * &b.h - &a.h * &b.g[0]) / &det;
            let u = [x, y];
            if satisfies(&planes, &u) && !verts.contains(&u) {
                verts.push(u);
            }
        }
    }
    sort_ccw(&mut verts);
    verts
}

fn sort_ccw(verts: &mut [Point2]) {
    if verts.len() < 2 {
        return;
    }
    let n = Rational::from(verts.len() as i64);
    let cx = verts.iter().map(|v| &v[0]).sum::<Rational>() / &n;
    let cy = verts.iter().map(|v| &v[1]).sum::<Rational>() / &n;
    let half = |dx: &Rational, dy: &Rational| dy.is_negative() || (dy.is_zero() && dx.is_negative());
    verts.sort_by(|a, b| {
        let (ax, ay) = (&a[0] - &cx, &a[1] - &cy);
        let (bx, by) = (&b[0] - &cx, &b[1] - &cy);
        match half(&ax, &ay).cmp(&half(&bx, &by)) {
            Ordering::Equal => {
                let cross = &ax * &by - &ay * &bx;
                // positive cross: a comes first
                Rational::zero().cmp(&cross)
            }
            o => o,
        }
    });
    let start = verts
        .iter()
        .enumerate()
        .min_by(|(_, a), (_, b)| a.cmp(b))
        .map(|(i, _)| i)
        .unwrap_or(0);
    verts.rotate_left(start);
}

/// With `λ₂ = 1 − λ₁`, every constraint is `(a₁ − a₂)·λ₁ (rel) b − a₂`.
fn project_interval(cs: &[Constraint]) -> [Rational; 2] {
    let mut lo = Rational::zero();
    let mut hi = Rational::one();
    for c in cs {
        let g = &c.coeffs[0] - &c.coeffs[1];
        let h = &c.rhs - &c.coeffs[1];
        if g.is_zero() {
            continue;
        }
        let bound = &h / &g;
        let lower = match c.relation {
            Relation::Ge => g.is_positive(),
            Relation::Le => g.is_negative(),
            Relation::Eq => {
                lo = lo.max(bound.clone());
                hi = hi.min(bound);
                continue;
            }
        };
        if lower {
            lo = lo.max(bound);
        } else {
            hi = hi.min(bound);
        }
    }
    [lo, hi]
}

/// One cell per weakly supported non-dominated point, in input order.
pub fn decompose(set: &OutcomeSet) -> Result<Vec<WeightCell>> {
    decompose_with(set, CellOptions::default(), Execution::default())
}

pub fn decompose_with(set: &OutcomeSet, opts: CellOptions, exec: Execution) -> Result<Vec<WeightCell>> {
    let yn = filter_nondominated_with(set, exec).nondominated;
    let cells: Vec<Result<WeightCell>> = exec.map(yn.points(), |y| weight_cell_with(y, &yn, opts));
    let mut out = Vec::new();
    for c in cells {
        let c = c?;
        if c.nonempty {
            out.push(c);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Membership {
    /// Lexicographically smallest minimizer.
    pub argmin: String,
    /// Every non-dominated point attaining the minimum, in input order.
    pub ties: Vec<String>,
    pub value: Rational,
}

/// The non-dominated points minimizing `λ·y`.
pub fn cell_membership(lambda: &WeightVector, set: &OutcomeSet) -> Result<Membership> {
    if lambda.dim() != set.p() {
        return Err(Error::dims(set.p(), lambda.dim(), "weight vector"));
    }
    let yn = filter_nondominated_with(set, Execution::Sequential).nondominated;
    let values: Vec<Rational> = yn.points().iter().map(|q| lambda.value(q)).collect();
    let best = values.iter().min().cloned().ok_or(Error::EmptySet)?;
    let tied: Vec<&OutcomePoint> = yn
        .points()
        .iter()
        .zip(&values)
        .filter(|(_, v)| **v == best)
        .map(|(q, _)| q)
        .collect();
    let argmin = tied
        .iter()
        .min_by(|a, b| a.coords.cmp(&b.coords))
        .map(|q| q.id.clone())
        .ok_or(Error::EmptySet)?;
    Ok(Membership {
        argmin,
        ties: tied.iter().map(|q| q.id.clone()).collect(),
        value: best,
    })
}
