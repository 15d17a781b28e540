//! Lossy SVG rendering. Points are mapped into the viewport with exact
//! rationals first, so huge coordinates only lose precision at the very end.

use num_traits::{ToPrimitive, Zero};
use spannerdraw_core::metrics::bounding_box;
use spannerdraw_core::{Drawing, Rational};

const MARGIN: f64 = 10.0;

pub fn render(d: &Drawing, viewport: u32) -> String {
    let size = viewport as f64;
    let inner = (size - 2.0 * MARGIN).max(1.0);
    let mut out = format!(
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n\
         <!-- visualization only; coordinates lossy -->\n\
         <svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{viewport}\" height=\"{viewport}\" viewBox=\"0 0 {viewport} {viewport}\">\n"
    );
    let Some(bb) = bounding_box(d) else {
        out.push_str("</svg>\n");
        return out;
    };
    let span = bb.width().max(bb.height());
    let scale = if span.is_zero() { Rational::zero() } else { Rational::from_float(inner).unwrap() / span };
    let pos: Vec<(f64, f64)> = d
        .coords()
        .iter()
        .map(|p| {
            let x = ((&p.x - &bb.min.x) * &scale).to_f64().unwrap_or(0.0);
            let y = ((&bb.max.y - &p.y) * &scale).to_f64().unwrap_or(0.0);
            (MARGIN + x, MARGIN + y)
        })
        .collect();
    out.push_str("  <g stroke=\"black\" stroke-width=\"1\">\n");
    for (u, v) in d.graph().edges() {
        let (a, b) = (pos[u], pos[v]);
        out.push_str(&format!(
            "    <line x1=\"{:.3}\" y1=\"{:.3}\" x2=\"{:.3}\" y2=\"{:.3}\"/>\n",
            a.0, a.1, b.0, b.1
        ));
    }
    out.push_str("  </g>\n  <g fill=\"steelblue\">\n");
    for (x, y) in &pos {
        out.push_str(&format!("    <circle cx=\"{x:.3}\" cy=\"{y:.3}\" r=\"3\"/>\n"));
    }
    out.push_str("  </g>\n</svg>\n");
    out
}
