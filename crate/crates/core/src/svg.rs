//! Deterministic SVG pictures of subdivisions and tropical curves.
//!
//! Coordinates are exact until the final pixel conversion, which rounds to
//! two decimals, so identical input gives byte-identical output. The y-axis
//! points up.

use std::fmt::Write;

use num_traits::{One, Signed, Zero};

use crate::curve::TropicalCurve;
use crate::lattice::{LatticePoint, PointConfiguration};
use crate::rational::{int, ratio, to_decimal, Point2, Rational};
use crate::subdivision::MarkedSubdivision;

pub const BACKGROUND: &str = "#ffffff";
pub const CELL_FILL: &str = "#f4f1e8";
pub const CELL_STROKE: &str = "#404040";
pub const CURVE_STROKE: &str = "#1f4e9a";
pub const HEAVY_STROKE: &str = "#b03a2e";
pub const MARKED_FILL: &str = "#000000";
pub const UNMARKED_FILL: &str = "#ffffff";
pub const POINT_STROKE: &str = "#000000";
pub const SINGULAR_STROKE: &str = "#e08a00";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SvgOptions {
    /// Margin around the drawn objects as a fraction of their extent.
    pub padding: Rational,
    /// Side length of one square panel in pixels.
    pub size: u32,
    /// Point of the curve's plane to mark as singular.
    pub singular_point: Option<Point2>,
}

impl Default for SvgOptions {
    fn default() -> Self {
        SvgOptions {
            padding: ratio(1, 5),
            size: 360,
            singular_point: None,
        }
    }
}

/// Square window `[x0, x0 + side] × [y0, y0 + side]` mapped onto a panel.
struct Viewport {
    x0: Rational,
    y0: Rational,
    side: Rational,
    size: Rational,
}

impl Viewport {
    fn around<'a>(points: impl IntoIterator<Item = &'a Point2>, opts: &SvgOptions) -> Viewport {
        let pts: Vec<&Point2> = points.into_iter().collect();
        let (mut xmin, mut xmax, mut ymin, mut ymax) = match pts.first() {
            Some(p) => (p.x.clone(), p.x.clone(), p.y.clone(), p.y.clone()),
            None => (
                Rational::zero(),
                Rational::zero(),
                Rational::zero(),
                Rational::zero(),
            ),
        };
        for p in &pts {
            xmin = xmin.min(p.x.clone());
            xmax = xmax.max(p.x.clone());
            ymin = ymin.min(p.y.clone());
            ymax = ymax.max(p.y.clone());
        }
        let span = (&xmax - &xmin).max(&ymax - &ymin).max(Rational::one());
        let pad = &span * &opts.padding;
        let side = &span + &pad * int(2);
        let two = int(2);
        Viewport {
            x0: (&xmin + &xmax) / &two - &side / &two,
            y0: (&ymin + &ymax) / &two - &side / &two,
            side,
            size: int(opts.size as i64),
        }
    }

    fn px(&self, p: &Point2) -> (String, String) {
        let x = (&p.x - &self.x0) / &self.side * &self.size;
        let y = (&self.y0 + &self.side - &p.y) / &self.side * &self.size;
        (to_decimal(&x, 2), to_decimal(&y, 2))
    }

    /// Where the ray from `p` in direction `d` leaves the window.
    fn exit(&self, p: &Point2, d: (i64, i64)) -> Point2 {
        let mut t: Option<Rational> = None;
        for (start, dir, lo) in [(&p.x, d.0, &self.x0), (&p.y, d.1, &self.y0)] {
            if dir == 0 {
                continue;
            }
            let bound = if dir > 0 { lo + &self.side } else { lo.clone() };
            let s = (bound - start) / int(dir);
            let s = if s.is_negative() { Rational::zero() } else { s };
            t = Some(match t {
                Some(cur) => cur.min(s),
                None => s,
            });
        }
        let t = t.unwrap_or_default();
        Point2::new(&p.x + &t * int(d.0), &p.y + &t * int(d.1))
    }
}

fn lattice(p: LatticePoint) -> Point2 {
    Point2::new(int(p.i), int(p.j))
}

fn open(out: &mut String, width: u32, height: u32) {
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    let _ = writeln!(
        out,
        r#"<rect width="{width}" height="{height}" fill="{BACKGROUND}"/>"#
    );
}

fn segment(out: &mut String, vp: &Viewport, a: &Point2, b: &Point2, class: &str, weight: i64) {
    let ((x1, y1), (x2, y2)) = (vp.px(a), vp.px(b));
    let (stroke, width) = if weight >= 2 {
        (HEAVY_STROKE, "3.5")
    } else {
        (CURVE_STROKE, "2")
    };
    let _ = writeln!(
        out,
        r#"<line class="{class} weight-{weight}" x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="{stroke}" stroke-width="{width}"/>"#
    );
    if weight >= 2 {
        let mid = Point2::new((&a.x + &b.x) / int(2), (&a.y + &b.y) / int(2));
        let (mx, my) = vp.px(&mid);
        let _ = writeln!(
            out,
            r#"<text class="weight" x="{mx}" y="{my}" dx="6" dy="-6" fill="{HEAVY_STROKE}" font-family="sans-serif" font-size="14">{weight}</text>"#
        );
    }
}

fn curve_body(out: &mut String, curve: &TropicalCurve, opts: &SvgOptions) {
    let vp = Viewport::around(
        curve
            .vertices
            .iter()
            .map(|v| &v.point)
            .chain(opts.singular_point.as_ref()),
        opts,
    );
    for e in &curve.edges {
        let (a, b) = (&curve.vertices[e.from].point, &curve.vertices[e.to].point);
        segment(out, &vp, a, b, "edge", e.weight);
    }
    for r in &curve.rays {
        let a = &curve.vertices[r.vertex].point;
        segment(out, &vp, a, &vp.exit(a, r.direction), "ray", r.weight);
    }
    for v in &curve.vertices {
        let (x, y) = vp.px(&v.point);
        let _ = writeln!(
            out,
            r#"<circle class="vertex" cx="{x}" cy="{y}" r="3" fill="{CURVE_STROKE}"/>"#
        );
    }
    if let Some(p) = &opts.singular_point {
        let (x, y) = vp.px(p);
        let _ = writeln!(
            out,
            r#"<circle class="singular" cx="{x}" cy="{y}" r="7" fill="none" stroke="{SINGULAR_STROKE}" stroke-width="2.5"/>"#
        );
    }
}

fn subdivision_body(
    out: &mut String,
    config: &PointConfiguration,
    ms: &MarkedSubdivision,
    opts: &SvgOptions,
) {
    let corners: Vec<Point2> = config.polygon().iter().map(|&p| lattice(p)).collect();
    let vp = Viewport::around(&corners, opts);
    for cell in &ms.cells {
        let pts: Vec<String> = cell
            .polygon(config)
            .into_iter()
            .map(|p| {
                let (x, y) = vp.px(&lattice(p));
                format!("{x},{y}")
            })
            .collect();
        let _ = writeln!(
            out,
            r#"<polygon class="cell" points="{}" fill="{CELL_FILL}" stroke="{CELL_STROKE}" stroke-width="1.5"/>"#,
            pts.join(" ")
        );
    }
    let marked = ms.marked_points();
    for (k, &p) in config.points().iter().enumerate() {
        let (x, y) = vp.px(&lattice(p));
        let (class, fill) = if marked.contains(k) {
            ("marked", MARKED_FILL)
        } else {
            ("unmarked", UNMARKED_FILL)
        };
        let _ = writeln!(
            out,
            r#"<circle class="{class}" cx="{x}" cy="{y}" r="4" fill="{fill}" stroke="{POINT_STROKE}" stroke-width="1.2"/>"#
        );
    }
}

/// A tropical curve with rays cut off at the window boundary.
pub fn render_curve(curve: &TropicalCurve, opts: &SvgOptions) -> String {
    let mut out = String::new();
    open(&mut out, opts.size, opts.size);
    curve_body(&mut out, curve, opts);
    out.push_str("</svg>\n");
    out
}

/// A marked subdivision: cells outlined, marked points black, unmarked white.
pub fn render_subdivision(
    config: &PointConfiguration,
    ms: &MarkedSubdivision,
    opts: &SvgOptions,
) -> String {
    let mut out = String::new();
    open(&mut out, opts.size, opts.size);
    subdivision_body(&mut out, config, ms, opts);
    out.push_str("</svg>\n");
    out
}

/// The subdivision on the left and its dual curve on the right.
pub fn render_pair(
    config: &PointConfiguration,
    curve: &TropicalCurve,
    opts: &SvgOptions,
) -> String {
    let mut out = String::new();
    open(&mut out, 2 * opts.size, opts.size);
    out.push_str("<g class=\"subdivision\">\n");
    subdivision_body(&mut out, config, &curve.subdivision, opts);
    out.push_str("</g>\n");
    let _ = writeln!(
        out,
        r#"<g class="curve" transform="translate({},0)">"#,
        opts.size
    );
    curve_body(&mut out, curve, opts);
    out.push_str("</g>\n</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::dual_curve;
    use crate::subdivision::HeightVector;

    #[test]
    fn single_vertex_curve() {
        let cfg = PointConfiguration::from_pairs(&[(0, 0), (1, 0), (0, 1)]).unwrap();
        let curve = dual_curve(&cfg, &HeightVector::from_i64(&[0, 0, 0])).unwrap();
        let svg = render_curve(&curve, &SvgOptions::default());
        assert_eq!(svg.matches(r#"class="vertex""#).count(), 1);
        assert_eq!(svg.matches(r#"class="ray "#).count(), 3);
        assert!(!svg.contains("class=\"weight\""));
        // vertex at the centre of the window
        assert!(svg.contains(r#"cx="180" cy="180""#));
    }

    #[test]
    fn rays_stop_at_the_window() {
        let vp = Viewport::around([&Point2::origin()], &SvgOptions::default());
        let exit = vp.exit(&Point2::origin(), (1, 1));
        assert_eq!(exit, Point2::new(ratio(7, 10), ratio(7, 10)));
    }
}
