use std::path::Path;

use svg::node::element::path::Data;
use svg::node::element::{Circle, Line, Path as SvgPath, Text};
use svg::Document;

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 400.0;
const MARGIN: f64 = 48.0;

/// `σ_min(t)` curves, one per regime, with exact rank-drop shifts marked.
pub fn sigma_plot(path: &Path, title: &str, curves: &[(usize, Vec<(f64, f64)>)], roots: &[f64]) -> std::io::Result<()> {
    let pts = curves.iter().flat_map(|(_, c)| c.iter());
    let (mut x0, mut x1, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, 0.0f64);
    for &(t, s) in pts {
        x0 = x0.min(t);
        x1 = x1.max(t);
        y1 = y1.max(s);
    }
    if !(x1 > x0) {
        x1 = x0 + 1.0;
    }
    if y1 <= 0.0 {
        y1 = 1.0;
    }
    let sx = |t: f64| MARGIN + (t - x0) / (x1 - x0) * (WIDTH - 2.0 * MARGIN);
    let sy = |s: f64| HEIGHT - MARGIN - s / y1 * (HEIGHT - 2.0 * MARGIN);

    let mut doc = Document::new()
        .set("viewBox", (0, 0, WIDTH, HEIGHT))
        .set("width", WIDTH)
        .set("height", HEIGHT)
        .set("font-family", "sans-serif")
        .set("font-size", 12);
    doc = doc
        .add(Line::new().set("x1", MARGIN).set("y1", sy(0.0)).set("x2", WIDTH - MARGIN).set("y2", sy(0.0)).set("stroke", "black"))
        .add(Line::new().set("x1", MARGIN).set("y1", MARGIN).set("x2", MARGIN).set("y2", HEIGHT - MARGIN).set("stroke", "black"))
        .add(Text::new(title).set("x", MARGIN).set("y", MARGIN / 2.0))
        .add(Text::new(format!("{x0:.3}")).set("x", MARGIN).set("y", HEIGHT - MARGIN / 3.0))
        .add(Text::new(format!("{x1:.3}")).set("x", WIDTH - MARGIN).set("y", HEIGHT - MARGIN / 3.0).set("text-anchor", "end"))
        .add(Text::new(format!("{y1:.3}")).set("x", MARGIN - 4.0).set("y", MARGIN).set("text-anchor", "end"));

    let colors = ["#1f77b4", "#ff7f0e"];
    for (i, (k, curve)) in curves.iter().enumerate() {
        let Some(&(t, s)) = curve.first() else { continue };
        let mut data = Data::new().move_to((sx(t), sy(s)));
        for &(t, s) in &curve[1..] {
            data = data.line_to((sx(t), sy(s)));
        }
        doc = doc.add(
            SvgPath::new()
                .set("d", data)
                .set("fill", "none")
                .set("stroke", colors[i % colors.len()])
                .set("stroke-width", 1.5)
                .set("data-columns", *k),
        );
    }
    for &r in roots {
        doc = doc.add(Circle::new().set("cx", sx(r)).set("cy", sy(0.0)).set("r", 4).set("fill", "crimson"));
    }
    svg::save(path, &doc)
}
