//! SVG rendering of drawings. Coordinates are printed to 12 significant
//! digits and the exact values are kept in a comment; the JSON stays the
//! source of truth.

use std::fmt::Write as _;

use num_rational::BigRational;
use num_traits::ToPrimitive;
use psembed_core::chains::Direction;
use psembed_core::route::DeltaLayout;
use psembed_core::{Drawing, RationalPoint};

use crate::format::format_rational;

/// Decimal with 12 significant digits, trailing zeros trimmed.
pub fn sig12(v: f64) -> String {
    if v == 0.0 || !v.is_finite() {
        return "0".into();
    }
    let mag = v.abs().log10().floor() as i32;
    let decimals = (11 - mag).max(0) as usize;
    let mut s = format!("{v:.decimals$}");
    if s.contains('.') {
        while s.ends_with('0') {
            s.pop();
        }
        if s.ends_with('.') {
            s.pop();
        }
    }
    if s == "-0" {
        s = "0".into();
    }
    s
}

fn f(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or(0.0)
}

/// SVG y grows downwards, so every y is negated.
fn pt(p: &RationalPoint) -> String {
    format!("{},{}", sig12(f(&p.x)), sig12(-f(&p.y)))
}

fn exact(p: &RationalPoint) -> String {
    format!("({} {})", format_rational(&p.x), format_rational(&p.y))
}

/// Renders `drawing`. With `debug` set and a layout present, the interval
/// bounds and the routed line positions are drawn behind the edges; the
/// direction is needed to map the sheared frame back to the plane.
pub fn render(drawing: &Drawing, debug: Option<&Direction>) -> String {
    let all: Vec<&RationalPoint> =
        drawing.vertex_points.iter().chain(drawing.edges.iter().flat_map(|e| e.poly.iter())).collect();
    let (mut x0, mut y0, mut x1, mut y1) = (f64::MAX, f64::MAX, f64::MIN, f64::MIN);
    for p in &all {
        let (x, y) = (f(&p.x), -f(&p.y));
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    if all.is_empty() {
        (x0, y0, x1, y1) = (0.0, 0.0, 1.0, 1.0);
    }
    let span = (x1 - x0).max(y1 - y0).max(1e-9);
    let margin = span * 0.05;
    let stroke = span / 600.0;
    let radius = span / 150.0;

    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{} {} {} {}">"#,
        sig12(x0 - margin),
        sig12(y0 - margin),
        sig12(x1 - x0 + 2.0 * margin),
        sig12(y1 - y0 + 2.0 * margin)
    )
    .unwrap();
    out.push_str("<!-- exact coordinates\n");
    for (v, p) in drawing.vertex_points.iter().enumerate() {
        writeln!(out, "v{v} {}", exact(p)).unwrap();
    }
    for e in &drawing.edges {
        let poly: Vec<String> = e.poly.iter().map(exact).collect();
        writeln!(out, "e{}-{} {}", e.u, e.v, poly.join(" ")).unwrap();
    }
    out.push_str("-->\n");

    if let (Some(dir), Some(layout)) = (debug, &drawing.layout) {
        debug_layers(&mut out, layout, &dir.t, stroke);
    }

    writeln!(out, r#"<g fill="none" stroke="black" stroke-width="{}" stroke-linejoin="round">"#, sig12(stroke)).unwrap();
    for e in &drawing.edges {
        let pts: Vec<String> = e.poly.iter().map(pt).collect();
        writeln!(out, r#"<path d="M{}"><title>{}-{}</title></path>"#, pts.join(" L"), e.u, e.v).unwrap();
    }
    out.push_str("</g>\n");
    writeln!(out, r#"<g fill="crimson">"#).unwrap();
    for (v, p) in drawing.vertex_points.iter().enumerate() {
        writeln!(
            out,
            r#"<circle cx="{}" cy="{}" r="{}"><title>{v}</title></circle>"#,
            sig12(f(&p.x)),
            sig12(-f(&p.y)),
            sig12(radius)
        )
        .unwrap();
    }
    out.push_str("</g>\n</svg>\n");
    out
}

/// A line `X = p + s·(Y − y_mid)` of the `(X, Y)` frame between `y_lo` and
/// `y_hi`, mapped to the plane by `x = X − t·Y`.
fn frame_line(layout: &DeltaLayout, t: &BigRational, p: &BigRational, s: &BigRational) -> String {
    let at = |y: &BigRational| {
        let big_x = p + s * (y - &layout.y_mid);
        RationalPoint::new(big_x - t * y, y.clone())
    };
    format!("M{} L{}", pt(&at(&layout.y_lo)), pt(&at(&layout.y_hi)))
}

fn debug_layers(out: &mut String, layout: &DeltaLayout, t: &BigRational, stroke: f64) {
    let zero = BigRational::from_integer(0.into());
    writeln!(out, r#"<g id="delta" fill="none" stroke="steelblue" stroke-width="{}">"#, sig12(stroke)).unwrap();
    for (i, (l, r)) in layout.bounds.iter().enumerate() {
        for b in [l, r] {
            writeln!(out, r#"<path d="{}"><title>interval {i}</title></path>"#, frame_line(layout, t, b, &zero)).unwrap();
        }
    }
    out.push_str("</g>\n");
    writeln!(
        out,
        r#"<g id="gamma" fill="none" stroke="orange" stroke-width="{}" stroke-dasharray="{}">"#,
        sig12(stroke / 2.0),
        sig12(stroke * 4.0)
    )
    .unwrap();
    for (i, groups) in layout.groups.iter().enumerate() {
        let s = if DeltaLayout::is_sheared(i) { layout.slope.clone() } else { zero.clone() };
        for (event, pos) in groups {
            for p in pos {
                writeln!(out, r#"<path d="{}"><title>event {event}</title></path>"#, frame_line(layout, t, p, &s)).unwrap();
            }
        }
    }
    out.push_str("</g>\n");
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_digits() {
        assert_eq!(sig12(1.0 / 3.0), "0.333333333333");
        assert_eq!(sig12(2.0 / 3.0 * 1000.0), "666.666666667");
        assert_eq!(sig12(-2.5), "-2.5");
        assert_eq!(sig12(1e15), "1000000000000000");
        assert_eq!(sig12(0.0), "0");
    }
}
