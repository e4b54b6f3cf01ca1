//! Deterministic SVG figures: projected weight cells (p = 3), weight
//! intervals (p = 2) and labeled bi-objective outcome sets.

use std::fmt::Write;

use moco_supported::{Classification, Label, OutcomeSet, Rational, WeightCell};

const PALETTE: [&str; 8] = [
    "#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f", "#edc948", "#b07aa1", "#9c755f",
];
const MARGIN: f64 = 40.0;
const SIDE: f64 = 360.0;

fn f(x: &Rational) -> f64 {
    x.to_f64()
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

fn open(out: &mut String, w: f64, h: f64) {
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(out, r#"<rect width="{w}" height="{h}" fill="white"/>"#);
}

/// `λ₁` rightward, `λ₂` upward, unit simplex as a right triangle.
fn simplex_xy(a: &Rational, b: &Rational) -> (f64, f64) {
    (MARGIN + f(a) * SIDE, MARGIN + (1.0 - f(b)) * SIDE)
}

pub fn triobjective_cells(cells: &[WeightCell]) -> String {
    let size = 2.0 * MARGIN + SIDE;
    let mut out = String::new();
    open(&mut out, size, size);
    let (x0, y0) = (MARGIN, MARGIN + SIDE);
    let _ = writeln!(
        out,
        r#"<polygon points="{x0:.3},{y0:.3} {:.3},{y0:.3} {x0:.3},{MARGIN:.3}" fill="none" stroke="black"/>"#,
        MARGIN + SIDE
    );
    let _ = writeln!(out, r#"<text x="{:.3}" y="{:.3}" text-anchor="middle">λ1</text>"#, MARGIN + SIDE / 2.0, y0 + 28.0);
    let _ = writeln!(out, r#"<text x="{:.3}" y="{:.3}" text-anchor="middle">λ2</text>"#, MARGIN - 24.0, MARGIN + SIDE / 2.0);
    for (i, c) in cells.iter().enumerate() {
        let Some(verts) = &c.projected_vertices else { continue };
        let color = PALETTE[i % PALETTE.len()];
        let pts: Vec<(f64, f64)> = verts.iter().map(|[a, b]| simplex_xy(a, b)).collect();
        let id = escape(&c.id);
        match pts.len() {
            0 => continue,
            1 => {
                let (x, y) = pts[0];
                let _ = writeln!(out, r#"<circle cx="{x:.3}" cy="{y:.3}" r="4" fill="{color}" stroke="black"/>"#);
            }
            2 => {
                let _ = writeln!(
                    out,
                    r#"<line x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}" stroke="{color}" stroke-width="3"/>"#,
                    pts[0].0, pts[0].1, pts[1].0, pts[1].1
                );
            }
            _ => {
                let list: Vec<String> = pts.iter().map(|(x, y)| format!("{x:.3},{y:.3}")).collect();
                let _ = writeln!(
                    out,
                    r#"<polygon points="{}" fill="{color}" fill-opacity="0.55" stroke="black"/>"#,
                    list.join(" ")
                );
            }
        }
        let n = pts.len() as f64;
        let (cx, cy) = pts.iter().fold((0.0, 0.0), |(sx, sy), (x, y)| (sx + x / n, sy + y / n));
        // Lower-dimensional cells get their label nudged off the drawing.
        let (dx, dy) = if pts.len() < 3 { (8.0, -8.0) } else { (0.0, 4.0) };
        let _ = writeln!(
            out,
            r#"<text x="{:.3}" y="{:.3}" text-anchor="middle">{id}</text>"#,
            cx + dx,
            cy + dy
        );
    }
    out.push_str("</svg>\n");
    out
}

pub fn biobjective_intervals(cells: &[WeightCell]) -> String {
    let (w, h) = (2.0 * MARGIN + SIDE, 140.0);
    let (top, bar) = (40.0, 40.0);
    let mut out = String::new();
    open(&mut out, w, h);
    let x = |v: &Rational| MARGIN + f(v) * SIDE;
    for (i, c) in cells.iter().enumerate() {
        let Some([lo, hi]) = &c.projected_interval else { continue };
        let color = PALETTE[i % PALETTE.len()];
        let id = escape(&c.id);
        let (a, b) = (x(lo), x(hi));
        if lo == hi {
            let _ = writeln!(
                out,
                r#"<line x1="{a:.3}" y1="{:.3}" x2="{a:.3}" y2="{:.3}" stroke="{color}" stroke-width="3"/>"#,
                top - 6.0,
                top + bar + 6.0
            );
            let _ = writeln!(out, r#"<text x="{a:.3}" y="{:.3}" text-anchor="middle">{id}</text>"#, top - 10.0);
        } else {
            let _ = writeln!(
                out,
                r#"<rect x="{a:.3}" y="{top:.3}" width="{:.3}" height="{bar:.3}" fill="{color}" fill-opacity="0.55" stroke="black"/>"#,
                b - a
            );
            let _ = writeln!(
                out,
                r#"<text x="{:.3}" y="{:.3}" text-anchor="middle">{id}</text>"#,
                (a + b) / 2.0,
                top + bar / 2.0 + 4.0
            );
        }
    }
    let base = top + bar + 24.0;
    let _ = writeln!(out, r#"<text x="{MARGIN:.3}" y="{base:.3}" text-anchor="middle">0</text>"#);
    let _ = writeln!(out, r#"<text x="{:.3}" y="{base:.3}" text-anchor="middle">1</text>"#, MARGIN + SIDE);
    let _ = writeln!(out, r#"<text x="{:.3}" y="{base:.3}" text-anchor="middle">λ1</text>"#, MARGIN + SIDE / 2.0);
    out.push_str("</svg>\n");
    out
}

fn marker(out: &mut String, label: Label, x: f64, y: f64) {
    let _ = match label {
        Label::ExtremeSupported => writeln!(out, r#"<circle cx="{x:.3}" cy="{y:.3}" r="5" fill="black"/>"#),
        Label::Supported => writeln!(
            out,
            r#"<rect x="{:.3}" y="{:.3}" width="9" height="9" fill="black"/>"#,
            x - 4.5,
            y - 4.5
        ),
        Label::WeaklySupportedOnly => writeln!(
            out,
            r#"<polygon points="{x:.3},{:.3} {:.3},{:.3} {:.3},{:.3}" fill="black"/>"#,
            y - 6.0,
            x - 5.0,
            y + 4.0,
            x + 5.0,
            y + 4.0
        ),
        Label::Unsupported => writeln!(
            out,
            r#"<path d="M{:.3},{:.3} L{:.3},{:.3} M{:.3},{:.3} L{:.3},{:.3}" stroke="black" stroke-width="2"/>"#,
            x - 5.0,
            y - 5.0,
            x + 5.0,
            y + 5.0,
            x - 5.0,
            y + 5.0,
            x + 5.0,
            y - 5.0
        ),
        Label::Dominated => writeln!(
            out,
            r#"<polygon points="{x:.3},{:.3} {:.3},{y:.3} {x:.3},{:.3} {:.3},{y:.3}" fill="none" stroke="gray"/>"#,
            y - 6.0,
            x + 6.0,
            y + 6.0,
            x - 6.0
        ),
    };
}

/// Objective space with one marker shape per label and the extreme points
/// joined in order of the first objective.
pub fn biobjective_points(set: &OutcomeSet, labels: &[Classification]) -> String {
    let size = 2.0 * MARGIN + SIDE;
    let mut out = String::new();
    open(&mut out, size + 150.0, size);
    let xs: Vec<f64> = set.points().iter().map(|q| f(&q.coords[0])).collect();
    let ys: Vec<f64> = set.points().iter().map(|q| f(&q.coords[1])).collect();
    let span = |v: &[f64]| {
        let lo = v.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = v.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        if hi > lo { (lo, hi - lo) } else { (lo - 1.0, 2.0) }
    };
    let ((x0, xw), (y0, yw)) = (span(&xs), span(&ys));
    let inner = SIDE - 20.0;
    let px = |x: f64| MARGIN + 10.0 + (x - x0) / xw * inner;
    let py = |y: f64| MARGIN + 10.0 + (1.0 - (y - y0) / yw) * inner;

    let _ = writeln!(
        out,
        r#"<rect x="{MARGIN:.3}" y="{MARGIN:.3}" width="{SIDE:.3}" height="{SIDE:.3}" fill="none" stroke="black"/>"#
    );
    let _ = writeln!(out, r#"<text x="{:.3}" y="{:.3}" text-anchor="middle">y1</text>"#, MARGIN + SIDE / 2.0, MARGIN + SIDE + 28.0);
    let _ = writeln!(out, r#"<text x="{:.3}" y="{:.3}" text-anchor="middle">y2</text>"#, MARGIN - 24.0, MARGIN + SIDE / 2.0);

    let mut chain: Vec<(f64, f64)> = labels
        .iter()
        .zip(xs.iter().zip(&ys))
        .filter(|(c, _)| c.label == Label::ExtremeSupported)
        .map(|(_, (&x, &y))| (x, y))
        .collect();
    chain.sort_by(|a, b| a.0.total_cmp(&b.0));
    if chain.len() > 1 {
        let list: Vec<String> = chain.iter().map(|&(x, y)| format!("{:.3},{:.3}", px(x), py(y))).collect();
        let _ = writeln!(out, r#"<polyline points="{}" fill="none" stroke="gray" stroke-dasharray="4 3"/>"#, list.join(" "));
    }
    for (c, (&x, &y)) in labels.iter().zip(xs.iter().zip(&ys)) {
        let (sx, sy) = (px(x), py(y));
        marker(&mut out, c.label, sx, sy);
        let _ = writeln!(out, r#"<text x="{:.3}" y="{:.3}">{}</text>"#, sx + 7.0, sy - 7.0, escape(&c.id));
    }
    for (i, l) in Label::ALL.iter().rev().enumerate() {
        let y = MARGIN + 10.0 + 22.0 * i as f64;
        marker(&mut out, *l, size + 10.0, y);
        let _ = writeln!(out, r#"<text x="{:.3}" y="{:.3}">{l}</text>"#, size + 22.0, y + 4.0);
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use moco_supported::{classify_all, decompose, validate_instance};

    fn set(rows: &[&[i64]]) -> OutcomeSet {
        let raw = rows.iter().map(|r| r.iter().map(|&x| Rational::from(x)).collect()).collect();
        validate_instance(raw, rows[0].len()).unwrap()
    }

    #[test]
    fn weight_cells_are_drawn_and_labeled() {
        let s = set(&[&[2, 9, 1], &[3, 6, 1], &[8, 3, 1], &[6, 5, 1]]);
        let cells = decompose(&s).unwrap();
        let svg = triobjective_cells(&cells);
        assert_eq!(svg.matches("<polygon").count(), 1 + 3);
        assert_eq!(svg.matches("<circle").count(), 1);
        for id in ["y1", "y2", "y3", "y4"] {
            assert!(svg.contains(&format!(">{id}</text>")));
        }
        // (3/4, 1/4) lands at x = 40 + 270, y = 40 + 270.
        assert!(svg.contains("310.000,310.000"));
        assert_eq!(svg, triobjective_cells(&decompose(&s).unwrap()));
    }

    #[test]
    fn interval_bar_has_one_segment_per_cell() {
        let s = set(&[&[2, 9], &[3, 6], &[8, 3], &[9, 9]]);
        let svg = biobjective_intervals(&decompose(&s).unwrap());
        assert_eq!(svg.matches("fill-opacity").count(), 3);
    }

    #[test]
    fn objective_markers_follow_labels() {
        let s = set(&[&[2, 9], &[3, 6], &[8, 3], &[6, 5], &[9, 9]]);
        let labels = classify_all(&s).unwrap();
        let svg = biobjective_points(&s, &labels);
        assert!(svg.contains("<polyline"));
        // Legend entries add one marker of each kind.
        assert_eq!(svg.matches("<circle").count(), 3 + 1);
        assert_eq!(svg.matches("<path").count(), 1 + 1);
        assert_eq!(svg.matches("stroke=\"gray\"/>").count(), 1 + 1);
        assert_eq!(svg, biobjective_points(&s, &labels));
    }

    #[test]
    fn ids_are_escaped() {
        assert_eq!(escape("a<b&c"), "a&lt;b&amp;c");
    }
}
