//! Deterministic SVG figures.
//!
//! Lattice coordinates map to pixels by `(x − x_min + 1)·scale` and
//! `(y_max − y + 1)·scale`, so the same data and scale always give the same bytes.

use std::fmt::Write;

use crate::cycles::Cycle;
use crate::metric::Ball;
use crate::ops::Point;

const PALETTE: [&str; 6] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf",
];

pub enum Figure<'a> {
    /// Closed `K` cycles drawn as polygons; fixed points as dots.
    Cycles(&'a [Cycle]),
    /// One point chain per parabola class, each chain ordered along the curve.
    Parabolas(&'a [(i64, Vec<Point>)]),
    Ball(&'a Ball),
    /// Bar per residue class; the highlighted bar is drawn in a second color.
    Histogram {
        counts: &'a [u64],
        highlight: Option<usize>,
    },
}

struct Frame {
    x_min: i64,
    y_max: i64,
    scale: i64,
    width: i64,
    height: i64,
}

impl Frame {
    fn around<'a>(points: impl Iterator<Item = &'a Point>, scale: u32) -> Frame {
        let (mut x_min, mut x_max, mut y_min, mut y_max) = (0, 0, 0, 0);
        for (i, p) in points.enumerate() {
            if i == 0 {
                (x_min, x_max, y_min, y_max) = (p.x, p.x, p.y, p.y);
            }
            x_min = x_min.min(p.x);
            x_max = x_max.max(p.x);
            y_min = y_min.min(p.y);
            y_max = y_max.max(p.y);
        }
        let scale = i64::from(scale.max(1));
        Frame {
            x_min,
            y_max,
            scale,
            width: (x_max - x_min + 2) * scale,
            height: (y_max - y_min + 2) * scale,
        }
    }

    fn px(&self, p: Point) -> (i64, i64) {
        (
            (p.x - self.x_min + 1) * self.scale,
            (self.y_max - p.y + 1) * self.scale,
        )
    }

    fn header(&self, out: &mut String) {
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {w} {h}" width="{w}" height="{h}">"#,
            w = self.width,
            h = self.height
        );
        let _ = writeln!(
            out,
            r#"<rect x="0" y="0" width="{}" height="{}" fill="white"/>"#,
            self.width, self.height
        );
    }

    fn coords(&self, pts: &[Point]) -> String {
        pts.iter()
            .map(|&p| {
                let (x, y) = self.px(p);
                format!("{x},{y}")
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

pub fn render(fig: &Figure, scale: u32) -> String {
    let mut out = String::new();
    match fig {
        Figure::Cycles(cycles) => {
            let frame = Frame::around(cycles.iter().flat_map(|c| c.ordered_points.iter()), scale);
            frame.header(&mut out);
            for (i, c) in cycles.iter().enumerate() {
                let color = PALETTE[i % PALETTE.len()];
                if c.cardinality == 1 {
                    let (x, y) = frame.px(c.base);
                    let _ = writeln!(
                        out,
                        r#"<circle cx="{x}" cy="{y}" r="{}" fill="{color}"/>"#,
                        frame.scale / 3 + 1
                    );
                } else {
                    let _ = writeln!(
                        out,
                        r#"<polygon points="{}" fill="none" stroke="{color}" stroke-width="1"/>"#,
                        frame.coords(&c.ordered_points)
                    );
                }
            }
        }
        Figure::Parabolas(chains) => {
            let frame = Frame::around(chains.iter().flat_map(|(_, pts)| pts.iter()), scale);
            frame.header(&mut out);
            for (i, (m, pts)) in chains.iter().enumerate() {
                let color = PALETTE[i % PALETTE.len()];
                let _ = writeln!(
                    out,
                    r#"<polyline data-vertex="{m}" points="{}" fill="none" stroke="{color}" stroke-width="1"/>"#,
                    frame.coords(pts)
                );
            }
        }
        Figure::Ball(ball) => {
            let frame = Frame::around(ball.points.iter().chain([&ball.center]), scale);
            frame.header(&mut out);
            let side = (frame.scale * 4 / 5).max(1);
            for &p in &ball.points {
                let (x, y) = frame.px(p);
                let fill = if p == ball.center {
                    PALETTE[1]
                } else {
                    PALETTE[0]
                };
                let _ = writeln!(
                    out,
                    r#"<rect x="{}" y="{}" width="{side}" height="{side}" fill="{fill}"/>"#,
                    x - side / 2,
                    y - side / 2
                );
            }
        }
        Figure::Histogram { counts, highlight } => {
            let scale = i64::from(scale.max(1));
            let bar = 2 * scale;
            let height = 100 * scale;
            let width = bar * (counts.len() as i64 + 2);
            let top = counts.iter().copied().max().unwrap_or(0).max(1);
            let _ = writeln!(
                out,
                r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {width} {height}" width="{width}" height="{height}">"#
            );
            let _ = writeln!(
                out,
                r#"<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>"#
            );
            for (l, &c) in counts.iter().enumerate() {
                let h = (c as u128 * (height - 2 * scale) as u128 / top as u128) as i64;
                let fill = if Some(l) == *highlight {
                    PALETTE[1]
                } else {
                    PALETTE[0]
                };
                let _ = writeln!(
                    out,
                    r#"<rect data-residue="{l}" x="{}" y="{}" width="{}" height="{h}" fill="{fill}"/>"#,
                    bar * (l as i64 + 1),
                    height - scale - h,
                    bar - 1
                );
            }
        }
    }
    out.push_str("</svg>\n");
    out
}
