//! Minimal static SVG rendering on the unit square.

use std::fmt::Write;

use prd_core::PrdPolygon;

const SIZE: f64 = 480.0;
const MARGIN: f64 = 60.0;
const PLOT: f64 = SIZE - 2.0 * MARGIN;

fn px(x: f64) -> f64 {
    MARGIN + x * PLOT
}

fn py(y: f64) -> f64 {
    SIZE - MARGIN - y * PLOT
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

fn frame(title: &str, x_label: &str, y_label: &str) -> String {
    let mut s = String::new();
    writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}" font-family="sans-serif" font-size="12">"#
    )
    .unwrap();
    writeln!(s, r#"<rect width="{SIZE}" height="{SIZE}" fill="white"/>"#).unwrap();
    writeln!(
        s,
        r#"<text x="{:.1}" y="30" text-anchor="middle" font-size="14">{}</text>"#,
        SIZE / 2.0,
        escape(title)
    )
    .unwrap();
    for i in 0..=5 {
        let t = i as f64 / 5.0;
        writeln!(
            s,
            "<line x1=\"{:.1}\" y1=\"{:.1}\" x2=\"{:.1}\" y2=\"{:.1}\" stroke=\"#ddd\"/>",
            px(t),
            py(0.0),
            px(t),
            py(1.0)
        )
        .unwrap();
        writeln!(
            s,
            "<line x1=\"{:.1}\" y1=\"{:.1}\" x2=\"{:.1}\" y2=\"{:.1}\" stroke=\"#ddd\"/>",
            px(0.0),
            py(t),
            px(1.0),
            py(t)
        )
        .unwrap();
        writeln!(
            s,
            r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">{t:.1}</text>"#,
            px(t),
            py(0.0) + 18.0
        )
        .unwrap();
        writeln!(
            s,
            r#"<text x="{:.1}" y="{:.1}" text-anchor="end">{t:.1}</text>"#,
            px(0.0) - 6.0,
            py(t) + 4.0
        )
        .unwrap();
    }
    writeln!(
        s,
        r#"<rect x="{MARGIN}" y="{MARGIN}" width="{PLOT}" height="{PLOT}" fill="none" stroke="black"/>"#
    )
    .unwrap();
    writeln!(
        s,
        r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">{}</text>"#,
        SIZE / 2.0,
        SIZE - 15.0,
        escape(x_label)
    )
    .unwrap();
    writeln!(
        s,
        r#"<text x="18" y="{:.1}" text-anchor="middle" transform="rotate(-90 18 {:.1})">{}</text>"#,
        SIZE / 2.0,
        SIZE / 2.0,
        escape(y_label)
    )
    .unwrap();
    s
}

/// Filled PRD region: recall on x, precision on y.
pub fn render_region(polygon: &PrdPolygon, title: &str) -> String {
    let mut s = frame(title, "recall", "precision");
    if !polygon.is_degenerate() {
        let points: Vec<String> = polygon
            .vertices()
            .iter()
            .map(|v| format!("{:.3},{:.3}", px(v.recall), py(v.precision)))
            .collect();
        writeln!(
            s,
            "<polygon class=\"prd-region\" points=\"{}\" fill=\"#4477aa\" fill-opacity=\"0.5\" stroke=\"#224466\"/>",
            points.join(" ")
        )
        .unwrap();
    }
    s.push_str("</svg>\n");
    s
}

/// Scatter of `(x, y, label)` with the diagonal `x = y`.
pub fn render_scatter(points: &[(f64, f64, String)], x_label: &str, y_label: &str) -> String {
    let mut s = frame("", x_label, y_label);
    writeln!(
        s,
        "<line class=\"diagonal\" x1=\"{:.1}\" y1=\"{:.1}\" x2=\"{:.1}\" y2=\"{:.1}\" stroke=\"#888\" stroke-dasharray=\"4 4\"/>",
        px(0.0),
        py(0.0),
        px(1.0),
        py(1.0)
    )
    .unwrap();
    for (x, y, label) in points {
        writeln!(
            s,
            "<circle class=\"model\" cx=\"{:.3}\" cy=\"{:.3}\" r=\"4\" fill=\"#cc6677\"><title>{}</title></circle>",
            px(*x),
            py(*y),
            escape(label)
        )
        .unwrap();
    }
    s.push_str("</svg>\n");
    s
}

/// Plot coordinates of a rendered polygon's vertices, mapped back to
/// `(recall, precision)`.
pub fn region_vertices(svg: &str) -> Option<Vec<(f64, f64)>> {
    let start =
        svg.find("class=\"prd-region\" points=\"")? + "class=\"prd-region\" points=\"".len();
    let end = start + svg[start..].find('"')?;
    svg[start..end]
        .split(' ')
        .map(|pair| {
            let (x, y) = pair.split_once(',')?;
            let x: f64 = x.parse().ok()?;
            let y: f64 = y.parse().ok()?;
            Some(((x - MARGIN) / PLOT, (SIZE - MARGIN - y) / PLOT))
        })
        .collect()
}
