//! Instance documents, brute-force enumeration of small knapsack and
//! assignment problems, the zero-objective lift and seeded generators.
//!
//! Instance text is UTF-8 JSON in one of three shapes:
//!
//! ```json
//! {"objectives": 3, "points": [[2, 9, 1], [3, "13/2", 1]], "ids": ["a", "b"]}
//! {"knapsack": {"objectives": 2, "capacity": 5, "items": [{"weight": 2, "costs": [-3, -1]}]}}
//! {"assignment": {"n": 2, "costs": [[[1, 0], [0, 1]], [[0, 1], [1, 0]]]}}
//! ```
//!
//! Explicit coordinates are JSON integers or strings holding `"a/b"`,
//! integer or finite-decimal literals. `"ids"` is optional.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::dominance::{OutcomePoint, OutcomeSet};
use crate::error::{Error, Result};
use crate::rational::Rational;

/// Name of the environment variable overriding [`EnumerationCap`].
pub const ENUM_CAP_ENV: &str = "MOCO_ENUM_CAP";

/// Upper bounds on the number of candidate solutions a brute-force
/// enumeration may visit. Exceeding a cap is a refusal, never a truncation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationCap {
    /// Default `2^20` (20 items).
    pub knapsack_subsets: u64,
    /// Default `8!`.
    pub assignment_permutations: u64,
}

impl Default for EnumerationCap {
    fn default() -> Self {
        EnumerationCap {
            knapsack_subsets: 1 << 20,
            assignment_permutations: 40_320,
        }
    }
}

impl EnumerationCap {
    /// Defaults, with both caps replaced by `$MOCO_ENUM_CAP` when it is set.
    pub fn from_env() -> Result<Self> {
        match std::env::var(ENUM_CAP_ENV) {
            Ok(v) => {
                let n: u64 = v
                    .trim()
                    .parse()
                    .map_err(|_| Error::Invalid(format!("{ENUM_CAP_ENV}={v:?} is not an integer")))?;
                Ok(EnumerationCap {
                    knapsack_subsets: n,
                    assignment_permutations: n,
                })
            }
            Err(_) => Ok(Self::default()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KnapsackItem {
    pub weight: u64,
    pub costs: Vec<i64>,
}

/// Minimize the summed cost vector over item subsets of total weight at most
/// `capacity`. Profit-maximizing instances are expressed with negated profits.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KnapsackSpec {
    pub objectives: usize,
    pub capacity: u64,
    pub items: Vec<KnapsackItem>,
}

/// Minimize the summed cost vector over all perfect matchings of an `n × n`
/// bipartite graph; `costs[i][j]` is the vector for assigning `i` to `j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AssignmentSpec {
    pub n: usize,
    pub costs: Vec<Vec<Vec<i64>>>,
}

impl AssignmentSpec {
    pub fn objectives(&self) -> Option<usize> {
        self.costs.first()?.first().map(Vec::len)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Instance {
    Explicit(OutcomeSet),
    Knapsack(KnapsackSpec),
    Assignment(AssignmentSpec),
}

impl Instance {
    /// The outcome set, enumerating combinatorial instances under `cap`.
    pub fn into_outcome_set(self, cap: EnumerationCap) -> Result<OutcomeSet> {
        match self {
            Instance::Explicit(s) => Ok(s),
            Instance::Knapsack(k) => enumerate_knapsack(&k, cap),
            Instance::Assignment(a) => enumerate_assignment(&a, cap),
        }
    }
}

fn field_err(path: &str, msg: impl std::fmt::Display) -> Error {
    Error::Parse(format!("{path}: {msg}"))
}

/// Parses an instance document. JSON syntax errors carry line and column;
/// content errors carry the offending field path.
pub fn parse_instance(text: &str) -> Result<Instance> {
    let doc: Value = serde_json::from_str(text).map_err(|e| {
        Error::Parse(format!("line {}, column {}: {e}", e.line(), e.column()))
    })?;
    let obj = doc
        .as_object()
        .ok_or_else(|| field_err("$", "instance document must be a JSON object"))?;

    if let Some(k) = obj.get("knapsack") {
        let mut spec: KnapsackSpecDoc =
            serde_json::from_value(k.clone()).map_err(|e| field_err("knapsack", e))?;
        if spec.objectives.is_none() {
            spec.objectives = obj.get("objectives").and_then(Value::as_u64).map(|p| p as usize);
        }
        return validate_knapsack(spec).map(Instance::Knapsack);
    }
    if let Some(a) = obj.get("assignment") {
        let spec: AssignmentSpec =
            serde_json::from_value(a.clone()).map_err(|e| field_err("assignment", e))?;
        validate_assignment(&spec)?;
        return Ok(Instance::Assignment(spec));
    }
    parse_explicit(obj).map(Instance::Explicit)
}

#[derive(Deserialize)]
struct KnapsackSpecDoc {
    objectives: Option<usize>,
    capacity: u64,
    items: Vec<KnapsackItem>,
}

fn validate_knapsack(doc: KnapsackSpecDoc) -> Result<KnapsackSpec> {
    let p = match (doc.objectives, doc.items.first()) {
        (Some(p), _) => p,
        (None, Some(item)) => item.costs.len(),
        (None, None) => {
            return Err(field_err("knapsack.objectives", "required when there are no items"));
        }
    };
    if p < 2 {
        return Err(Error::TooFewObjectives(p));
    }
    for (i, item) in doc.items.iter().enumerate() {
        if item.costs.len() != p {
            return Err(Error::dims(p, item.costs.len(), format!("knapsack.items[{i}].costs")));
        }
    }
    Ok(KnapsackSpec {
        objectives: p,
        capacity: doc.capacity,
        items: doc.items,
    })
}

fn validate_assignment(spec: &AssignmentSpec) -> Result<()> {
    if spec.n == 0 {
        return Err(field_err("assignment.n", "must be at least 1"));
    }
    if spec.costs.len() != spec.n {
        return Err(Error::dims(spec.n, spec.costs.len(), "assignment.costs rows"));
    }
    let p = spec.objectives().unwrap_or(0);
    if p < 2 {
        return Err(Error::TooFewObjectives(p));
    }
    for (i, row) in spec.costs.iter().enumerate() {
        if row.len() != spec.n {
            return Err(Error::dims(spec.n, row.len(), format!("assignment.costs[{i}]")));
        }
        for (j, c) in row.iter().enumerate() {
            if c.len() != p {
                return Err(Error::dims(p, c.len(), format!("assignment.costs[{i}][{j}]")));
            }
        }
    }
    Ok(())
}

fn parse_explicit(obj: &serde_json::Map<String, Value>) -> Result<OutcomeSet> {
    let p = obj
        .get("objectives")
        .ok_or_else(|| field_err("objectives", "missing"))?
        .as_u64()
        .ok_or_else(|| field_err("objectives", "must be a nonnegative integer"))? as usize;
    if p < 2 {
        return Err(Error::TooFewObjectives(p));
    }
    let rows = obj
        .get("points")
        .ok_or_else(|| field_err("points", "missing"))?
        .as_array()
        .ok_or_else(|| field_err("points", "must be an array"))?;
    let ids: Option<Vec<String>> = match obj.get("ids") {
        None => None,
        Some(v) => Some(serde_json::from_value(v.clone()).map_err(|e| field_err("ids", e))?),
    };
    if let Some(ids) = &ids {
        if ids.len() != rows.len() {
            return Err(Error::dims(rows.len(), ids.len(), "ids"));
        }
    }
    let mut points = Vec::with_capacity(rows.len());
    for (i, row) in rows.iter().enumerate() {
        let path = format!("points[{i}]");
        let entries = row.as_array().ok_or_else(|| field_err(&path, "must be an array"))?;
        if entries.len() != p {
            return Err(Error::dims(p, entries.len(), path));
        }
        let coords = entries
            .iter()
            .enumerate()
            .map(|(k, v)| {
                Rational::deserialize(v).map_err(|e| field_err(&format!("points[{i}][{k}]"), e))
            })
            .collect::<Result<Vec<_>>>()?;
        let id = match &ids {
            Some(ids) => ids[i].clone(),
            None => format!("y{}", i + 1),
        };
        points.push(OutcomePoint::new(id, coords));
    }
    OutcomeSet::from_points(p, points)
}

/// Serializes an instance into the document format read by [`parse_instance`].
pub fn serialize_instance(instance: &Instance) -> String {
    let doc = match instance {
        Instance::Explicit(set) => {
            // Collapsed duplicates are written back out so multiplicities survive.
            let rows: Vec<&OutcomePoint> = set
                .points()
                .iter()
                .flat_map(|q| std::iter::repeat_n(q, set.multiplicity(&q.id)))
                .collect();
            let points: Vec<&Vec<Rational>> = rows.iter().map(|q| &q.coords).collect();
            let ids: Vec<&str> = rows.iter().map(|q| q.id.as_str()).collect();
            json!({ "objectives": set.p(), "points": points, "ids": ids })
        }
        Instance::Knapsack(k) => json!({ "knapsack": k }),
        Instance::Assignment(a) => json!({ "assignment": a }),
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("instance documents serialize");
    s.push('\n');
    s
}

/// All subsets of total weight at most the capacity, mapped to summed costs.
pub fn enumerate_knapsack(spec: &KnapsackSpec, cap: EnumerationCap) -> Result<OutcomeSet> {
    let n = spec.items.len();
    let p = spec.objectives;
    if n >= 64 || (1u64 << n) > cap.knapsack_subsets {
        return Err(Error::CapExceeded(format!(
            "{n} knapsack items need 2^{n} subsets, cap is {}",
            cap.knapsack_subsets
        )));
    }
    let mut points = Vec::new();
    for mask in 0u64..(1u64 << n) {
        let mut weight = 0u64;
        let mut cost = vec![0i64; p];
        for (i, item) in spec.items.iter().enumerate() {
            if mask >> i & 1 == 1 {
                weight += item.weight;
                for (c, x) in cost.iter_mut().zip(&item.costs) {
                    *c += x;
                }
            }
        }
        if weight <= spec.capacity {
            points.push(OutcomePoint::from_ints(format!("k{mask}"), &cost));
        }
    }
    OutcomeSet::from_points(p, points)
}

/// All `n!` assignments, mapped to summed cost vectors.
pub fn enumerate_assignment(spec: &AssignmentSpec, cap: EnumerationCap) -> Result<OutcomeSet> {
    validate_assignment(spec)?;
    let n = spec.n;
    let count = (1..=n as u64).try_fold(1u64, |acc, k| acc.checked_mul(k));
    if count.is_none_or(|c| c > cap.assignment_permutations) {
        return Err(Error::CapExceeded(format!(
            "assignment of size {n} needs {n}! permutations, cap is {}",
            cap.assignment_permutations
        )));
    }
    let p = spec.objectives().unwrap_or(0);
    let mut perm: Vec<usize> = (0..n).collect();
    let mut points = Vec::new();
    loop {
        let mut cost = vec![0i64; p];
        for (i, &j) in perm.iter().enumerate() {
            for (c, x) in cost.iter_mut().zip(&spec.costs[i][j]) {
                *c += x;
            }
        }
        let id: String = perm.iter().map(|j| j.to_string()).collect::<Vec<_>>().join("-");
        points.push(OutcomePoint::from_ints(format!("a{id}"), &cost));
        if !next_permutation(&mut perm) {
            break;
        }
    }
    OutcomeSet::from_points(p, points)
}

fn next_permutation(v: &mut [usize]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).expect("suffix has a larger element");
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Appends a constant zero objective to every point.
pub fn lift_zero_objective(set: &OutcomeSet) -> OutcomeSet {
    set.map_coords(set.p() + 1, |c| {
        let mut v = c.to_vec();
        v.push(Rational::zero());
        v
    })
    .expect("appending a constant keeps points distinct")
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `n` integer points with coordinates uniform in `[0, max]`; duplicates collapse.
pub fn random_points(seed: u64, p: usize, n: usize, max: i64) -> Result<OutcomeSet> {
    let mut r = rng(seed);
    let points = (0..n)
        .map(|i| {
            let c: Vec<i64> = (0..p).map(|_| r.gen_range(0..=max)).collect();
            OutcomePoint::from_ints(format!("y{}", i + 1), &c)
        })
        .collect();
    OutcomeSet::from_points(p, points)
}

/// Weights uniform in `1..=20`, profits uniform in `1..=20` stored as negated
/// costs, capacity half the total weight (rounded down).
pub fn random_knapsack(seed: u64, items: usize, p: usize) -> KnapsackSpec {
    let mut r = rng(seed);
    let items: Vec<KnapsackItem> = (0..items)
        .map(|_| KnapsackItem {
            weight: r.gen_range(1..=20),
            costs: (0..p).map(|_| -r.gen_range(1..=20i64)).collect(),
        })
        .collect();
    let capacity = items.iter().map(|i| i.weight).sum::<u64>() / 2;
    KnapsackSpec {
        objectives: p,
        capacity,
        items,
    }
}

/// Cost vectors uniform in `0..=20`.
pub fn random_assignment(seed: u64, n: usize, p: usize) -> AssignmentSpec {
    let mut r = rng(seed);
    let costs = (0..n)
        .map(|_| {
            (0..n)
                .map(|_| (0..p).map(|_| r.gen_range(0..=20i64)).collect())
                .collect()
        })
        .collect();
    AssignmentSpec { n, costs }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn coords(set: &OutcomeSet) -> BTreeSet<Vec<Rational>> {
        set.points().iter().map(|q| q.coords.clone()).collect()
    }

    fn ints(rows: &[&[i64]]) -> BTreeSet<Vec<Rational>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| Rational::from(x)).collect())
            .collect()
    }

    #[test]
    fn parses_four_point_document() {
        let inst = parse_instance(r#"{"objectives": 3, "points": [[2,9,1],[3,6,1],[8,3,1],[6,5,1]]}"#).unwrap();
        let Instance::Explicit(set) = inst else { panic!() };
        assert_eq!(set.p(), 3);
        assert_eq!(set.len(), 4);
    }

    #[test]
    fn parse_rejections_and_rationals() {
        assert_eq!(
            parse_instance(r#"{"objectives": 1, "points": [[1]]}"#),
            Err(Error::TooFewObjectives(1))
        );
        let Instance::Explicit(set) = parse_instance(r#"{"objectives": 2, "points": [["9/2", 1]]}"#).unwrap() else {
            panic!()
        };
        assert_eq!(set.points()[0].coords[0], Rational::new(9, 2));

        let err = parse_instance("{\"objectives\": 2,\n \"points\": [[1, 2],]}").unwrap_err();
        assert!(err.to_string().contains("line 2"), "{err}");
        let err = parse_instance(r#"{"objectives": 2, "points": [[1, 2], [1, "x"]]}"#).unwrap_err();
        assert!(err.to_string().contains("points[1][1]"), "{err}");
        let err = parse_instance(r#"{"objectives": 2, "points": [[1, 2], [1]]}"#).unwrap_err();
        assert!(matches!(err, Error::DimensionMismatch { .. }));
        assert_eq!(
            parse_instance(r#"{"objectives": 2, "points": []}"#),
            Err(Error::EmptySet)
        );
        assert!(parse_instance(r#"{"objectives": 2, "points": [[1.5, 2]]}"#).is_err());
    }

    #[test]
    fn parses_knapsack_and_assignment() {
        let k = parse_instance(r#"{"knapsack": {"capacity": 1, "items": [{"weight": 1, "costs": [1, 4]}, {"weight": 1, "costs": [4, 1]}]}}"#)
            .unwrap();
        let Instance::Knapsack(spec) = &k else { panic!() };
        assert_eq!(spec.objectives, 2);
        let set = k.into_outcome_set(EnumerationCap::default()).unwrap();
        assert_eq!(coords(&set), ints(&[&[0, 0], &[1, 4], &[4, 1]]));

        let bad = parse_instance(r#"{"knapsack": {"capacity": 1, "items": [{"weight": 1, "costs": [1, 4]}, {"weight": 1, "costs": [4]}]}}"#);
        assert!(matches!(bad, Err(Error::DimensionMismatch { .. })));

        let a = parse_instance(r#"{"assignment": {"n": 2, "costs": [[[1,0],[0,1]],[[0,1],[1,0]]]}}"#).unwrap();
        let set = a.into_outcome_set(EnumerationCap::default()).unwrap();
        assert_eq!(coords(&set), ints(&[&[2, 0], &[0, 2]]));
    }

    #[test]
    fn empty_knapsack_is_the_zero_point() {
        let spec = KnapsackSpec {
            objectives: 2,
            capacity: 0,
            items: vec![],
        };
        let set = enumerate_knapsack(&spec, EnumerationCap::default()).unwrap();
        assert_eq!(coords(&set), ints(&[&[0, 0]]));
        assert!(parse_instance(r#"{"knapsack": {"capacity": 0, "items": []}}"#).is_err());
        assert!(parse_instance(r#"{"knapsack": {"objectives": 3, "capacity": 0, "items": []}}"#).is_ok());
    }

    #[test]
    fn caps_refuse() {
        let spec = random_knapsack(1, 21, 2);
        assert!(matches!(
            enumerate_knapsack(&spec, EnumerationCap::default()),
            Err(Error::CapExceeded(_))
        ));
        let small = EnumerationCap {
            knapsack_subsets: 8,
            assignment_permutations: 6,
        };
        assert!(enumerate_knapsack(&random_knapsack(1, 3, 2), small).is_ok());
        assert!(enumerate_knapsack(&random_knapsack(1, 4, 2), small).is_err());
        assert!(enumerate_assignment(&random_assignment(1, 3, 2), small).is_ok());
        assert!(enumerate_assignment(&random_assignment(1, 4, 2), small).is_err());
        assert!(matches!(
            enumerate_assignment(&random_assignment(1, 9, 2), EnumerationCap::default()),
            Err(Error::CapExceeded(_))
        ));
    }

    #[test]
    fn single_assignment() {
        let spec = AssignmentSpec {
            n: 1,
            costs: vec![vec![vec![3, 7]]],
        };
        let set = enumerate_assignment(&spec, EnumerationCap::default()).unwrap();
        assert_eq!(coords(&set), ints(&[&[3, 7]]));
    }

    #[test]
    fn next_permutation_visits_all() {
        let mut v = vec![0, 1, 2, 3];
        let mut seen = BTreeSet::new();
        loop {
            seen.insert(v.clone());
            if !next_permutation(&mut v) {
                break;
            }
        }
        assert_eq!(seen.len(), 24);
    }

    #[test]
    fn lift_appends_zero() {
        let set = OutcomeSet::from_points(
            2,
            vec![OutcomePoint::from_ints("a", &[2, 9]), OutcomePoint::from_ints("b", &[6, 5])],
        )
        .unwrap();
        let lifted = lift_zero_objective(&set);
        assert_eq!(lifted.p(), 3);
        assert_eq!(coords(&lifted), ints(&[&[2, 9, 0], &[6, 5, 0]]));
        assert_eq!(lifted.points()[1].id, "b");
    }

    #[test]
    fn generators_are_deterministic() {
        let a = serialize_instance(&Instance::Knapsack(random_knapsack(7, 10, 2)));
        let b = serialize_instance(&Instance::Knapsack(random_knapsack(7, 10, 2)));
        assert_eq!(a, b);
        assert_ne!(a, serialize_instance(&Instance::Knapsack(random_knapsack(8, 10, 2))));
        assert_eq!(random_points(3, 3, 20, 100).unwrap(), random_points(3, 3, 20, 100).unwrap());
    }

    #[test]
    fn documents_round_trip() {
        let fixtures = vec![
            Instance::Explicit(random_points(11, 3, 15, 100).unwrap()),
            Instance::Knapsack(random_knapsack(11, 6, 3)),
            Instance::Assignment(random_assignment(11, 4, 2)),
            parse_instance(r#"{"objectives": 2, "points": [["9/2", "-1/3"], ["0.25", 4]], "ids": ["p", "q"]}"#).unwrap(),
        ];
        for inst in fixtures {
            let text = serialize_instance(&inst);
            assert_eq!(parse_instance(&text).unwrap(), inst, "{text}");
        }
    }
}
