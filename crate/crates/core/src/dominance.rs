//! Outcome-space data model, the component-wise order and Pareto filtering.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::rational::Rational;

/// A point `y` in objective space.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OutcomePoint {
    pub id: String,
    pub coords: Vec<Rational>,
}

impl OutcomePoint {
    pub fn new(id: impl Into<String>, coords: Vec<Rational>) -> Self {
        OutcomePoint {
            id: id.into(),
            coords,
        }
    }

    pub fn from_ints(id: impl Into<String>, coords: &[i64]) -> Self {
        Self::new(id, coords.iter().map(|&c| Rational::from(c)).collect())
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }
}

/// `a ≤ b` in the Pareto sense: `a_k ≤ b_k` for every `k` and `a ≠ b`.
pub fn dominates(a: &OutcomePoint, b: &OutcomePoint) -> Result<bool> {
    if a.dim() != b.dim() {
        return Err(Error::dims(a.dim(), b.dim(), format!("{} vs {}", a.id, b.id)));
    }
    Ok(dominates_coords(&a.coords, &b.coords))
}

pub(crate) fn dominates_coords(a: &[Rational], b: &[Rational]) -> bool {
    let mut strict = false;
    for (x, y) in a.iter().zip(b) {
        if x > y {
            return false;
        }
        if x < y {
            strict = true;
        }
    }
    strict
}

/// A validated, duplicate-free, nonempty finite set of outcomes with `p ≥ 2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutcomeSet {
    p: usize,
    points: Vec<OutcomePoint>,
    /// How many input rows collapsed onto each stored point (only entries > 1).
    multiplicity: BTreeMap<String, usize>,
}

impl OutcomeSet {
    pub fn p(&self) -> usize {
        self.p
    }

    pub fn points(&self) -> &[OutcomePoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn multiplicity(&self, id: &str) -> usize {
        if self.points.iter().any(|q| q.id == id) {
            self.multiplicity.get(id).copied().unwrap_or(1)
        } else {
            0
        }
    }

    pub fn multiplicities(&self) -> &BTreeMap<String, usize> {
        &self.multiplicity
    }

    pub fn get(&self, id: &str) -> Option<&OutcomePoint> {
        self.points.iter().find(|q| q.id == id)
    }

    pub fn position_of(&self, y: &OutcomePoint) -> Option<usize> {
        self.points.iter().position(|q| q.coords == y.coords)
    }

    /// Index of `y` (matched by coordinates), or a precondition error.
    pub(crate) fn require(&self, y: &OutcomePoint) -> Result<usize> {
        if y.dim() != self.p {
            return Err(Error::dims(self.p, y.dim(), y.id.clone()));
        }
        self.position_of(y).ok_or_else(|| Error::NotInSet(y.id.clone()))
    }

    /// Builds a set from already-validated parts; duplicates are collapsed.
    pub fn from_points(p: usize, points: Vec<OutcomePoint>) -> Result<Self> {
        if p < 2 {
            return Err(Error::TooFewObjectives(p));
        }
        if points.is_empty() {
            return Err(Error::EmptySet);
        }
        let mut seen: HashMap<Vec<Rational>, usize> = HashMap::new();
        let mut kept: Vec<OutcomePoint> = Vec::new();
        let mut counts: Vec<usize> = Vec::new();
        for (row, point) in points.into_iter().enumerate() {
            if point.dim() != p {
                return Err(Error::dims(p, point.dim(), format!("point {}", row + 1)));
            }
            match seen.get(&point.coords) {
                Some(&idx) => counts[idx] += 1,
                None => {
                    if kept.iter().any(|q| q.id == point.id) {
                        return Err(Error::Invalid(format!("duplicate point id {:?}", point.id)));
                    }
                    seen.insert(point.coords.clone(), kept.len());
                    kept.push(point);
                    counts.push(1);
                }
            }
        }
        let multiplicity = kept
            .iter()
            .zip(&counts)
            .filter(|(_, &c)| c > 1)
            .map(|(q, &c)| (q.id.clone(), c))
            .collect();
        Ok(OutcomeSet {
            p,
            points: kept,
            multiplicity,
        })
    }

    /// A new set over the given subset of stored indices (order preserved).
    pub(crate) fn subset(&self, indices: &[usize]) -> OutcomeSet {
        let points = indices.iter().map(|&i| self.points[i].clone()).collect();
        let multiplicity = indices
            .iter()
            .filter_map(|&i| {
                let id = &self.points[i].id;
                self.multiplicity.get(id).map(|&c| (id.clone(), c))
            })
            .collect();
        OutcomeSet {
            p: self.p,
            points,
            multiplicity,
        }
    }

    /// Applies `f` to every coordinate vector, keeping ids. Fails if the map
    /// merges distinct points.
    pub fn map_coords<F>(&self, p: usize, f: F) -> Result<OutcomeSet>
    where
        F: Fn(&[Rational]) -> Vec<Rational>,
    {
        let points: Vec<OutcomePoint> = self
            .points
            .iter()
            .map(|q| OutcomePoint::new(q.id.clone(), f(&q.coords)))
            .collect();
        let mut out = OutcomeSet::from_points(p, points)?;
        if out.len() != self.len() {
            return Err(Error::Invalid("coordinate map merged distinct points".into()));
        }
        out.multiplicity = self.multiplicity.clone();
        Ok(out)
    }
}

/// Validates raw rows into an [`OutcomeSet`]. Points are named `y1, y2, …` by
/// the 1-based row of their first occurrence.
pub fn validate_instance(raw: Vec<Vec<Rational>>, p: usize) -> Result<OutcomeSet> {
    let points = raw
        .into_iter()
        .enumerate()
        .map(|(i, coords)| OutcomePoint::new(format!("y{}", i + 1), coords))
        .collect();
    OutcomeSet::from_points(p, points)
}

/// Result of Pareto filtering.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParetoFilter {
    /// The non-dominated subset, in input order.
    pub nondominated: OutcomeSet,
    /// Per input point: `None` if non-dominated, otherwise the index (into the
    /// input set) of a non-dominated point that dominates it.
    pub dominated_by: Vec<Option<usize>>,
}

impl ParetoFilter {
    pub fn is_dominated(&self, index: usize) -> bool {
        self.dominated_by[index].is_some()
    }
}

pub fn filter_nondominated(set: &OutcomeSet) -> ParetoFilter {
    filter_nondominated_with(set, Execution::default())
}

/// Pairwise O(n²) filter.
pub fn filter_nondominated_with(set: &OutcomeSet, exec: Execution) -> ParetoFilter {
    let pts = set.points();
    let indices: Vec<usize> = (0..pts.len()).collect();
    let dominated: Vec<bool> = exec.map(&indices, |&i| {
        pts.iter()
            .any(|q| dominates_coords(&q.coords, &pts[i].coords))
    });
    let kept: Vec<usize> = indices.iter().copied().filter(|&i| !dominated[i]).collect();
    // By transitivity and finiteness every dominated point has a dominator
    // among the retained ones.
    let dominated_by = indices
        .iter()
        .map(|&i| {
            if !dominated[i] {
                return None;
            }
            kept.iter()
                .copied()
                .find(|&j| dominates_coords(&pts[j].coords, &pts[i].coords))
        })
        .collect();
    ParetoFilter {
        nondominated: set.subset(&kept),
        dominated_by,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(c: &[i64]) -> OutcomePoint {
        OutcomePoint::from_ints("q", c)
    }

    fn ints(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| Rational::from(x)).collect())
            .collect()
    }

    #[test]
    fn dominance_examples() {
        let a = OutcomePoint::new(
            "c",
            vec![Rational::from(6), Rational::new(21, 5), Rational::from(1)],
        );
        assert!(dominates(&a, &pt(&[6, 5, 1])).unwrap());
        assert!(!dominates(&pt(&[2, 9, 1]), &pt(&[2, 9, 1])).unwrap());
        assert!(!dominates(&pt(&[3, 6, 1]), &pt(&[2, 9, 1])).unwrap());
        assert!(!dominates(&pt(&[2, 9, 1]), &pt(&[3, 6, 1])).unwrap());
        assert!(matches!(
            dominates(&pt(&[1, 2]), &pt(&[1, 2, 3])),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn validation_collapses_duplicates() {
        let set = validate_instance(ints(&[&[2, 9, 1], &[2, 9, 1], &[3, 6, 1]]), 3).unwrap();
        assert_eq!(set.len(), 2);
        assert_eq!(set.multiplicity("y1"), 2);
        assert_eq!(set.multiplicity("y3"), 1);
        assert_eq!(set.points()[1].id, "y3");
    }

    #[test]
    fn validation_errors() {
        assert!(matches!(
            validate_instance(ints(&[&[1, 2], &[3]]), 2),
            Err(Error::DimensionMismatch { .. })
        ));
        assert_eq!(
            validate_instance(ints(&[&[1], &[2]]), 1),
            Err(Error::TooFewObjectives(1))
        );
        assert_eq!(validate_instance(vec![], 2), Err(Error::EmptySet));
        assert!(Error::EmptySet.to_string().contains("empty outcome set"));
        assert!(Error::TooFewObjectives(1)
            .to_string()
            .contains("bi-objective minimum violated"));
    }

    #[test]
    fn four_point_layer_is_an_antichain() {
        let set = validate_instance(ints(&[&[2, 9, 1], &[3, 6, 1], &[8, 3, 1], &[6, 5, 1]]), 3).unwrap();
        let f = filter_nondominated(&set);
        assert_eq!(f.nondominated.len(), 4);
        assert!(f.dominated_by.iter().all(Option::is_none));
    }

    #[test]
    fn filter_keeps_singleton_and_records_dominators() {
        let set = validate_instance(ints(&[&[0, 0]]), 2).unwrap();
        assert_eq!(filter_nondominated(&set).nondominated.len(), 1);

        let set = validate_instance(ints(&[&[2, 9], &[3, 9], &[7, 7], &[3, 6], &[8, 3], &[6, 5]]), 2).unwrap();
        let f = filter_nondominated(&set);
        let ids: Vec<_> = f.nondominated.points().iter().map(|q| q.id.as_str()).collect();
        assert_eq!(ids, ["y1", "y4", "y5", "y6"]);
        assert_eq!(f.dominated_by[1], Some(0));
        let w = f.dominated_by[2].unwrap();
        assert!(dominates_coords(&set.points()[w].coords, &set.points()[2].coords));
    }
}
