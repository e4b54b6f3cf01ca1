//! Independent oracles for the integration and acceptance suites. Nothing in
//! here calls the LP kernel.
#![allow(dead_code)]

use std::collections::BTreeMap;

use moco_supported::instances::{AssignmentSpec, KnapsackSpec};
use moco_supported::{Label, OutcomePoint, OutcomeSet, Rational};

pub fn set_from(rows: &[Vec<i64>]) -> OutcomeSet {
    let p = rows[0].len();
    let points = rows
        .iter()
        .enumerate()
        .map(|(i, r)| OutcomePoint::from_ints(format!("y{}", i + 1), r))
        .collect();
    OutcomeSet::from_points(p, points).unwrap()
}

pub fn four_point_set() -> OutcomeSet {
    set_from(&[vec![2, 9, 1], vec![3, 6, 1], vec![8, 3, 1], vec![6, 5, 1]])
}

/// Integer coordinates of a point; the oracles only handle integral data.
pub fn int_coords(q: &OutcomePoint) -> Vec<i64> {
    q.coords.iter().map(|c| c.to_i64().expect("integral test data")).collect()
}

pub fn brute_dominates(a: &[i64], b: &[i64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y) && a != b
}

/// O(n²) pairwise Pareto filter: indices of non-dominated rows.
pub fn brute_nondominated(rows: &[Vec<i64>]) -> Vec<usize> {
    (0..rows.len())
        .filter(|&i| !rows.iter().any(|r| brute_dominates(r, &rows[i])))
        .collect()
}

fn cross(o: (i64, i64), a: (i64, i64), b: (i64, i64)) -> i128 {
    (a.0 - o.0) as i128 * (b.1 - o.1) as i128 - (a.1 - o.1) as i128 * (b.0 - o.0) as i128
}

/// Bi-objective labels from planar geometry alone: the lower-left convex
/// chain of the non-dominated points (sorted by the first objective) gives
/// the extreme points; points on a chain edge are supported; the rest are
/// unsupported.
pub fn planar_labels(set: &OutcomeSet) -> BTreeMap<String, Label> {
    assert_eq!(set.p(), 2);
    let rows: Vec<Vec<i64>> = set.points().iter().map(int_coords).collect();
    let nd = brute_nondominated(&rows);
    let mut labels: BTreeMap<String, Label> = set
        .points()
        .iter()
        .map(|q| (q.id.clone(), Label::Dominated))
        .collect();
    let mut pts: Vec<((i64, i64), usize)> = nd.iter().map(|&i| ((rows[i][0], rows[i][1]), i)).collect();
    pts.sort();
    // Non-dominated points sorted by y1 have strictly decreasing y2, so the
    // lower hull of the staircase is the non-dominated frontier.
    let mut hull: Vec<((i64, i64), usize)> = Vec::new();
    for &pt in &pts {
        while hull.len() >= 2 && cross(hull[hull.len() - 2].0, hull[hull.len() - 1].0, pt.0) <= 0 {
            hull.pop();
        }
        hull.push(pt);
    }
    for &(_, i) in &pts {
        labels.insert(set.points()[i].id.clone(), Label::Unsupported);
    }
    for w in hull.windows(2) {
        let (a, b) = (w[0].0, w[1].0);
        for &(c, i) in &pts {
            if c.0 > a.0 && c.0 < b.0 && cross(a, b, c) == 0 {
                labels.insert(set.points()[i].id.clone(), Label::Supported);
            }
        }
    }
    for &(_, i) in &hull {
        labels.insert(set.points()[i].id.clone(), Label::ExtremeSupported);
    }
    labels
}

/// Recursive include/exclude enumeration, independent of the bitmask loop.
pub fn knapsack_oracle(spec: &KnapsackSpec) -> Vec<Vec<i64>> {
    fn go(spec: &KnapsackSpec, i: usize, weight: u64, cost: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if weight > spec.capacity {
            return;
        }
        if i == spec.items.len() {
            out.push(cost.clone());
            return;
        }
        go(spec, i + 1, weight, cost, out);
        let item = &spec.items[i];
        for (c, x) in cost.iter_mut().zip(&item.costs) {
            *c += x;
        }
        go(spec, i + 1, weight + item.weight, cost, out);
        for (c, x) in cost.iter_mut().zip(&item.costs) {
            *c -= x;
        }
    }
    let mut out = Vec::new();
    go(spec, 0, 0, &mut vec![0; spec.objectives], &mut out);
    out.sort();
    out.dedup();
    out
}

/// Assignment outcomes by recursive choice of unused columns.
pub fn assignment_oracle(spec: &AssignmentSpec) -> Vec<Vec<i64>> {
    fn go(spec: &AssignmentSpec, row: usize, used: &mut Vec<bool>, cost: Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if row == spec.n {
            out.push(cost);
            return;
        }
        for col in 0..spec.n {
            if used[col] {
                continue;
            }
            used[col] = true;
            let next: Vec<i64> = cost.iter().zip(&spec.costs[row][col]).map(|(a, b)| a + b).collect();
            go(spec, row + 1, used, next, out);
            used[col] = false;
        }
    }
    let p = spec.costs[0][0].len();
    let mut out = Vec::new();
    go(spec, 0, &mut vec![false; spec.n], vec![0; p], &mut out);
    out.sort();
    out.dedup();
    out
}

/// Whether some grid weight `k / denom` (all `k_i ≥ 0`, `Σk = denom`) makes row
/// `idx` weighted-sum optimal, optionally with every `k_i > 0`.
pub fn grid_certifies(rows: &[Vec<i64>], idx: usize, denom: i64, strict: bool) -> bool {
    let p = rows[0].len();
    let mut k = vec![0i64; p];
    fn rec(rows: &[Vec<i64>], idx: usize, k: &mut Vec<i64>, pos: usize, left: i64, strict: bool) -> bool {
        let p = k.len();
        if pos == p - 1 {
            k[pos] = left;
            if strict && k.contains(&0) {
                return false;
            }
            let val = |r: &Vec<i64>| r.iter().zip(k.iter()).map(|(a, b)| a * b).sum::<i64>();
            let v = val(&rows[idx]);
            return rows.iter().all(|r| v <= val(r));
        }
        for x in 0..=left {
            k[pos] = x;
            if rec(rows, idx, k, pos + 1, left - x, strict) {
                return true;
            }
        }
        false
    }
    rec(rows, idx, &mut k, 0, denom, strict)
}

/// All grid weights with denominator `denom` on the `p`-simplex.
pub fn simplex_grid(p: usize, denom: i64) -> Vec<Vec<Rational>> {
    fn rec(p: usize, denom: i64, pos: usize, left: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<Rational>>) {
        if pos == p - 1 {
            cur.push(left);
            out.push(cur.iter().map(|&k| Rational::new(k, denom)).collect());
            cur.pop();
            return;
        }
        for x in 0..=left {
            cur.push(x);
            rec(p, denom, pos + 1, left - x, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(p, denom, 0, denom, &mut Vec::new(), &mut out);
    out
}

/// Deterministic instance parameters for suite index `i`.
pub fn suite_shape(i: u64, dims: &[usize], min_n: usize, max_n: usize) -> (usize, usize) {
    let p = dims[(i as usize) % dims.len()];
    let span = (max_n - min_n + 1) as u64;
    let n = min_n + ((i.wrapping_mul(2_654_435_761) >> 7) % span) as usize;
    (p, n)
}
