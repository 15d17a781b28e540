//! The `spannerdraw/1` graph and drawing files.
//!
//! Reading is lenient about layout and accepts decimal coordinates; writing
//! always produces the canonical form: fixed key order, sorted edges,
//! reduced `num/den` strings, one edge or coordinate pair per line.

use serde::Deserialize;
use serde_json::Value;
use spannerdraw_core::drawing::{format_rational, parse_rational};
use spannerdraw_core::{Drawing, Graph, Point};

pub const VERSION: &str = "spannerdraw/1";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphFile {
    pub graph: Graph,
    pub names: Option<Vec<String>>,
    pub coords: Option<Vec<Point>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Raw {
    version: String,
    n: usize,
    edges: Vec<[usize; 2]>,
    #[serde(default)]
    names: Option<Vec<String>>,
    #[serde(default)]
    coords: Option<Vec<[Value; 2]>>,
}

fn number(v: &Value) -> Result<spannerdraw_core::Rational, String> {
    let text = match v {
        Value::String(s) => s.clone(),
        Value::Number(n) => n.to_string(),
        other => return Err(format!("coordinate must be a string or number, got {other}")),
    };
    parse_rational(&text).map_err(|e| e.to_string())
}

impl GraphFile {
    pub fn parse(text: &str) -> Result<GraphFile, String> {
        let raw: Raw = serde_json::from_str(text).map_err(|e| format!("malformed file: {e}"))?;
        if raw.version != VERSION {
            return Err(format!("unsupported version {:?}, expected {VERSION:?}", raw.version));
        }
        let edges: Vec<(usize, usize)> = raw.edges.iter().map(|&[u, v]| (u, v)).collect();
        let graph = Graph::from_edges(raw.n, &edges).map_err(|e| e.to_string())?;
        if let Some(names) = &raw.names {
            if names.len() != raw.n {
                return Err(format!("{} names for {} vertices", names.len(), raw.n));
            }
        }
        let coords = match raw.coords {
            None => None,
            Some(cs) => {
                if cs.len() != raw.n {
                    return Err(format!("{} coordinates for {} vertices", cs.len(), raw.n));
                }
                let pts = cs
                    .iter()
                    .map(|[x, y]| Ok(Point::new(number(x)?, number(y)?)))
                    .collect::<Result<Vec<_>, String>>()?;
                Some(pts)
            }
        };
        Ok(GraphFile { graph, names: raw.names, coords })
    }

    pub fn from_drawing(d: &Drawing, names: Option<Vec<String>>) -> GraphFile {
        GraphFile { graph: d.graph().clone(), names, coords: Some(d.coords().to_vec()) }
    }

    pub fn drawing(&self) -> Result<Drawing, String> {
        let coords = self.coords.clone().ok_or("file has no coordinates")?;
        Drawing::new(self.graph.clone(), coords).map_err(|e| e.to_string())
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        s.push_str("{\n");
        s.push_str(&format!("  \"version\": \"{VERSION}\",\n"));
        s.push_str(&format!("  \"n\": {},\n", self.graph.n()));
        if let Some(names) = &self.names {
            let items: Vec<String> = names.iter().map(|x| serde_json::to_string(x).unwrap()).collect();
            s.push_str(&format!("  \"names\": {},\n", block(&items)));
        }
        let edges: Vec<String> = self.graph.edges().iter().map(|(u, v)| format!("[{u}, {v}]")).collect();
        s.push_str(&format!("  \"edges\": {}", block(&edges)));
        if let Some(coords) = &self.coords {
            let items: Vec<String> = coords
                .iter()
                .map(|p| format!("[\"{}\", \"{}\"]", format_rational(&p.x), format_rational(&p.y)))
                .collect();
            s.push_str(&format!(",\n  \"coords\": {}", block(&items)));
        }
        s.push_str("\n}\n");
        s
    }
}

fn block(items: &[String]) -> String {
    if items.is_empty() {
        return "[]".into();
    }
    format!("[\n    {}\n  ]", items.join(",\n    "))
}
