//! Plain SVG figures. Coordinates are drawn from `f64` approximations; the
//! exact values are kept in `data-exact` attributes.

use std::fmt::Write;

use crate::geometry::{Point, Polygon};
use crate::slices::SliceBody;

const UNIT: f64 = 60.0;
const MARGIN: f64 = 40.0;

struct Frame {
    x0: f64,
    y0: f64,
    x1: f64,
    y1: f64,
    sx: f64,
    sy: f64,
}

impl Frame {
    fn new(xs: &[f64], ys: &[f64], target: f64) -> Self {
        let lo = |v: &[f64]| v.iter().cloned().fold(0.0_f64, f64::min).floor();
        let hi = |v: &[f64]| v.iter().cloned().fold(0.0_f64, f64::max).ceil().max(lo(v) + 1.0);
        let (x0, x1, y0, y1) = (lo(xs), hi(xs), lo(ys), hi(ys));
        let sx = (target / (x1 - x0)).clamp(UNIT / 4.0, UNIT * 4.0);
        let sy = (target / (y1 - y0)).clamp(UNIT / 4.0, UNIT * 4.0);
        Self { x0, y0, x1, y1, sx, sy }
    }

    fn width(&self) -> f64 {
        (self.x1 - self.x0) * self.sx + 2.0 * MARGIN
    }

    fn height(&self) -> f64 {
        (self.y1 - self.y0) * self.sy + 2.0 * MARGIN
    }

    fn px(&self, x: f64) -> f64 {
        MARGIN + (x - self.x0) * self.sx
    }

    fn py(&self, y: f64) -> f64 {
        MARGIN + (self.y1 - y) * self.sy
    }

    fn header(&self, out: &mut String, title: &str) {
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{:.1}" height="{:.1}" font-family="sans-serif" font-size="11">"#,
            self.width(),
            self.height()
        );
        let _ = writeln!(out, "<title>{}</title>", escape(title));
        let step_x = grid_step(self.x1 - self.x0);
        let step_y = grid_step(self.y1 - self.y0);
        let mut x = self.x0;
        while x <= self.x1 + 1e-9 {
            let _ = writeln!(
                out,
                r##"<line x1="{0:.2}" y1="{1:.2}" x2="{0:.2}" y2="{2:.2}" stroke="#ddd"/>"##,
                self.px(x),
                self.py(self.y0),
                self.py(self.y1)
            );
            x += step_x;
        }
        let mut y = self.y0;
        while y <= self.y1 + 1e-9 {
            let _ = writeln!(
                out,
                r##"<line x1="{0:.2}" y1="{1:.2}" x2="{2:.2}" y2="{1:.2}" stroke="#ddd"/>"##,
                self.px(self.x0),
                self.py(y),
                self.px(self.x1)
            );
            y += step_y;
        }
        let _ = writeln!(
            out,
            r##"<line class="axis" x1="{:.2}" y1="{2:.2}" x2="{:.2}" y2="{2:.2}" stroke="#000"/>"##,
            self.px(self.x0),
            self.px(self.x1),
            self.py(0.0)
        );
        let _ = writeln!(
            out,
            r##"<line class="axis" x1="{0:.2}" y1="{1:.2}" x2="{0:.2}" y2="{2:.2}" stroke="#000"/>"##,
            self.px(0.0),
            self.py(self.y0),
            self.py(self.y1)
        );
    }
}

fn grid_step(span: f64) -> f64 {
    let mut step = 1.0;
    while span / step > 20.0 {
        step *= 2.0;
    }
    step
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

fn exact(p: &Point) -> String {
    escape(&format!("({}, {})", p.x, p.y))
}

/// Axes, unit grid, the filled polygon and labelled vertices.
pub fn polygon_svg(poly: &Polygon, title: &str) -> String {
    let pts: Vec<(f64, f64)> = poly.vertices().iter().map(Point::to_f64).collect();
    let xs: Vec<f64> = pts.iter().map(|p| p.0).collect();
    let ys: Vec<f64> = pts.iter().map(|p| p.1).collect();
    let frame = Frame::new(&xs, &ys, 8.0 * UNIT);
    let mut out = String::new();
    frame.header(&mut out, title);
    let path: Vec<String> = pts
        .iter()
        .map(|&(x, y)| format!("{:.3},{:.3}", frame.px(x), frame.py(y)))
        .collect();
    let _ = writeln!(
        out,
        r##"<polygon class="body" points="{}" fill="#4a7ebb" fill-opacity="0.35" stroke="#1f4e8c" stroke-width="1.5"/>"##,
        path.join(" ")
    );
    for (v, &(x, y)) in poly.vertices().iter().zip(&pts) {
        let _ = writeln!(
            out,
            r##"<circle class="vertex" cx="{:.3}" cy="{:.3}" r="3" fill="#1f4e8c" data-exact="{}"/>"##,
            frame.px(x),
            frame.py(y),
            exact(v)
        );
        let _ = writeln!(
            out,
            r#"<text x="{:.3}" y="{:.3}">({x:.6}, {y:.6})</text>"#,
            frame.px(x) + 5.0,
            frame.py(y) - 5.0
        );
    }
    out.push_str("</svg>\n");
    out
}

/// The sampled `f(r)` curve with the affine bound `g` in the legend.
pub fn slice_svg(body: &SliceBody, title: &str) -> String {
    let pts: Vec<(f64, f64)> = body
        .f_samples
        .iter()
        .map(|s| (crate::exactnum::to_f64(&s.r), s.value.to_f64()))
        .collect();
    let xs: Vec<f64> = pts.iter().map(|p| p.0).collect();
    let ys: Vec<f64> = pts.iter().map(|p| p.1).collect();
    let frame = Frame::new(&xs, &ys, 8.0 * UNIT);
    let mut out = String::new();
    frame.header(&mut out, title);
    let path: Vec<String> = pts
        .iter()
        .map(|&(x, y)| format!("{:.3},{:.3}", frame.px(x), frame.py(y)))
        .collect();
    let _ = writeln!(
        out,
        r##"<polyline class="f" points="{}" fill="none" stroke="#b5332e" stroke-width="1.5"/>"##,
        path.join(" ")
    );
    for (s, &(x, y)) in body.f_samples.iter().zip(&pts) {
        let _ = writeln!(
            out,
            r##"<circle class="sample" cx="{:.3}" cy="{:.3}" r="2.5" fill="#b5332e" data-r="{}" data-exact="{}"/>"##,
            frame.px(x),
            frame.py(y),
            escape(&s.r.to_string()),
            escape(&s.value.to_string())
        );
    }
    let g = &body.g;
    let _ = writeln!(
        out,
        r#"<text class="legend" x="{:.1}" y="{:.1}">f(r) sampled; g(r, t) = {} + ({})·r + ({})·t</text>"#,
        MARGIN,
        MARGIN / 2.0,
        g.c0,
        g.cr,
        g.ct
    );
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::QuadNum;
    use crate::slices::{assemble_slice_body, builtin, uniform_samples};

    #[test]
    fn polygon_figure() {
        let poly = Polygon::hull(vec![Point::ints(0, 0), Point::ints(0, 2), Point::ints(2, 0)]).unwrap();
        let svg = polygon_svg(&poly, "triangle");
        assert!(svg.starts_with("<svg"));
        assert_eq!(svg.matches("class=\"vertex\"").count(), 3);
        assert!(svg.contains("(2.000000, 0.000000)"));
        assert!(svg.contains("data-exact=\"(2, 0)\""));
    }

    #[test]
    fn irrational_labels() {
        let r = QuadNum::new(crate::exactnum::int(1), crate::exactnum::int(-1), 2.into()).unwrap();
        let poly = Polygon::hull(vec![
            Point::ints(0, 0),
            Point::new(r.clone(), QuadNum::zero()),
            Point::new(QuadNum::zero(), r),
        ])
        .unwrap();
        let svg = polygon_svg(&poly, "t");
        assert!(svg.contains("√2"), "{svg}");
    }

    #[test]
    fn slice_figure() {
        let b = builtin("fano").unwrap();
        let body = assemble_slice_body(
            &b.model,
            &b.path,
            &b.c,
            &uniform_samples(&crate::exactnum::int(0), &crate::exactnum::int(1), 4),
        )
        .unwrap();
        let svg = slice_svg(&body, "fano");
        assert_eq!(svg.matches("class=\"sample\"").count(), 5);
        assert!(svg.contains("g(r, t) = 24"));
    }
}
