//! Text and JSON renderings of metric reports and verification results.

use serde_json::{json, Map, Value};
use spannerdraw_core::drawing::format_rational;
use spannerdraw_core::interval::decimal;
use spannerdraw_core::verify::{BoundCheck, Verdict};
use spannerdraw_core::{Ext, Interval, MetricReport, Rational};

const DIGITS: usize = 15;

fn ext_exact(e: &Ext) -> String {
    match e {
        Ext::Finite(r) => format_rational(r),
        Ext::Infinite => "inf".into(),
    }
}

fn interval_json(iv: &Option<Interval>) -> Value {
    match iv {
        None => Value::Null,
        Some(iv) => {
            let (lo, hi) = iv.to_decimal(DIGITS);
            json!({
                "lo": ext_exact(&iv.lo),
                "hi": ext_exact(&iv.hi),
                "lo_decimal": lo,
                "hi_decimal": hi,
            })
        }
    }
}

fn interval_text(iv: &Option<Interval>) -> String {
    iv.as_ref().map_or("n/a".into(), |iv| iv.to_string())
}

/// Extra lines contributed by a construction, in insertion order.
pub type Extras = Vec<(String, Value)>;

pub fn metrics_json(r: &MetricReport, extras: &Extras) -> Value {
    let mut m = Map::new();
    m.insert("spanning_ratio".into(), interval_json(&r.spanning_ratio));
    m.insert("edge_length_ratio".into(), interval_json(&r.edge_length_ratio));
    m.insert("width".into(), json!(format_rational(&r.width)));
    m.insert("height".into(), json!(format_rational(&r.height)));
    m.insert("planar".into(), json!(r.planar));
    m.insert("proper".into(), json!(r.proper));
    m.insert("no_three_collinear".into(), json!(r.no_three_collinear));
    m.insert(
        "min_pairwise_distance_sq".into(),
        r.min_pairwise_distance_sq.as_ref().map_or(Value::Null, |x| json!(format_rational(x))),
    );
    m.insert("connected".into(), json!(r.connected));
    for (k, v) in extras {
        m.insert(k.clone(), v.clone());
    }
    Value::Object(m)
}

pub fn metrics_text(r: &MetricReport, extras: &Extras) -> String {
    let approx = |x: &Rational| decimal(x, DIGITS, false);
    let mut lines = vec![
        format!("spanning_ratio: {}", interval_text(&r.spanning_ratio)),
        format!("edge_length_ratio: {}", interval_text(&r.edge_length_ratio)),
        format!("width: {} (~{})", format_rational(&r.width), approx(&r.width)),
        format!("height: {} (~{})", format_rational(&r.height), approx(&r.height)),
        format!("planar: {}", r.planar),
        format!("proper: {}", r.proper),
        format!("no_three_collinear: {}", r.no_three_collinear),
        format!(
            "min_pairwise_distance_sq: {}",
            r.min_pairwise_distance_sq.as_ref().map_or("n/a".into(), format_rational)
        ),
        format!("connected: {}", r.connected),
    ];
    for (k, v) in extras {
        let shown = match v {
            Value::String(s) => s.clone(),
            other => other.to_string(),
        };
        lines.push(format!("{k}: {shown}"));
    }
    lines.join("\n") + "\n"
}

pub fn verdict_name(v: &Verdict) -> &'static str {
    match v {
        Verdict::Consistent => "Consistent",
        Verdict::InconsistentWithTheorem => "InconsistentWithTheorem",
        Verdict::Undecided => "Undecided",
    }
}

/// Per-vertex census lines plus the verdict.
pub struct VertexLine {
    pub vertex: usize,
    pub counts: Vec<(u32, usize)>,
}

pub fn verify_text(lines: &[VertexLine], check: &BoundCheck, limit: &Rational) -> String {
    let mut out = format!("annulus limit: {} (~{})\n", format_rational(limit), decimal(limit, DIGITS, false));
    for l in lines {
        let counts: Vec<String> = l.counts.iter().map(|(i, c)| format!("A{i}={c}")).collect();
        let over: Vec<_> = check.violations.iter().filter(|v| v.vertex == l.vertex).collect();
        let status = if over.is_empty() {
            "ok".to_string()
        } else {
            let applicable = over[0].applicable;
            format!("violation{}", if applicable { "" } else { " (not applicable: neighbors share a component)" })
        };
        out.push_str(&format!("vertex {}: {} {}\n", l.vertex, counts.join(" "), status));
    }
    out.push_str(&format!("violations: {}\n", check.violations.len()));
    if let Some(sr) = &check.spanning_ratio {
        out.push_str(&format!("spanning_ratio: {sr}\n"));
    }
    out.push_str(&format!("verdict: {}\n", verdict_name(&check.verdict)));
    out
}

pub fn verify_json(lines: &[VertexLine], check: &BoundCheck, limit: &Rational) -> Value {
    json!({
        "limit": format_rational(limit),
        "vertices": lines.iter().map(|l| json!({
            "vertex": l.vertex,
            "counts": l.counts.iter().map(|(i, c)| json!([i, c])).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
        "violations": check.violations.iter().map(|v| json!({
            "vertex": v.vertex,
            "annulus": v.annulus,
            "count": v.count,
            "applicable": v.applicable,
        })).collect::<Vec<_>>(),
        "spanning_ratio": interval_json(&check.spanning_ratio),
        "verdict": verdict_name(&check.verdict),
    })
}
