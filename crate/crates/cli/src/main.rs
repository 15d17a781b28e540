//! `spannerdraw`: draw graphs with small spanning ratio and check drawings.
//!
//! Exit codes: 0 success, 2 unreadable input or bad arguments, 3 input
//! violates the command's precondition, 4 internal inconsistency, 5 I/O.

mod files;
mod report;
mod svg;

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;
use spannerdraw_core::drawing::parse_rational;
use spannerdraw_core::{generators, layout, metrics, verify};
use spannerdraw_core::{Drawing, Epsilon, Error, Graph, Rational, RootedTree};

use files::GraphFile;
use report::{Extras, VertexLine};

#[derive(Parser)]
#[command(name = "spannerdraw", version, about = "Straight-line drawings with spanning ratio close to 1")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Construction {
    /// Planar drawing of a connected planar graph
    Planar,
    /// Proper drawing of a connected graph, no three vertices collinear
    Proper,
    /// Proper tree drawing with polynomial edge-length ratio
    TreeProper,
    /// Planar tree drawing with polynomial edge-length ratio
    TreePlanar,
    /// Bounded-degree spanning tree drawn properly, other edges added
    Tough,
}

#[derive(Clone, Copy, ValueEnum)]
enum Recognizer {
    /// Some straight-line drawing has spanning ratio 1
    Sr1,
    /// Some planar straight-line drawing has spanning ratio 1
    PlanarSr1,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Tree,
    Planar,
    Triangulation,
    Connected,
    Path,
}

#[derive(Subcommand)]
enum Cmd {
    /// Construct a drawing of the input graph
    Draw {
        construction: Construction,
        /// Graph file, `-` for stdin
        input: PathBuf,
        /// Where to write the drawing; stdout if absent
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long, default_value = "1")]
        epsilon: String,
        /// Degree target for `tough`
        #[arg(long, default_value_t = 3)]
        d_target: usize,
        /// Root for the tree constructions
        #[arg(long, default_value_t = 0)]
        root: usize,
        #[arg(long, default_value = "1/1000000000")]
        rel_tol: String,
        /// Accepted for symmetry with `generate`; constructions are deterministic
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Report exact and certified metrics of a drawing
    Metrics {
        input: PathBuf,
        #[arg(long, default_value = "1/1000000000")]
        rel_tol: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Annulus census of every vertex against a spanning ratio `s`
    Verify {
        input: PathBuf,
        #[arg(long)]
        s: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Decide whether a graph has a drawing with spanning ratio 1
    Recognize {
        recognizer: Recognizer,
        input: PathBuf,
        /// For `sr1`: write the collinear witness drawing here
        #[arg(long)]
        witness: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Render a drawing as SVG (lossy, for viewing only)
    ExportSvg {
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 800)]
        viewport: u32,
    },
    /// Write a seeded random test graph
    Generate {
        family: Family,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Maximum degree for trees
        #[arg(long, default_value_t = 3)]
        max_degree: usize,
        /// Edge probability or kept fraction, depending on the family
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

enum Failure {
    Parse(String),
    Precondition(Error),
    Internal(String),
    Io(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Parse(_) => 2,
            Failure::Precondition(_) => 3,
            Failure::Internal(_) => 4,
            Failure::Io(_) => 5,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Parse(m) => format!("parse error: {m}"),
            Failure::Precondition(e) => format!("{}: {e}", e.name()),
            Failure::Internal(m) => format!("internal error: {m}"),
            Failure::Io(m) => format!("I/O error: {m}"),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Internal(m) => Failure::Internal(m),
            Error::InvalidInput(m) => Failure::Parse(m),
            other => Failure::Precondition(other),
        }
    }
}

type Res<T> = Result<T, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

fn read_input(path: &Path) -> Res<GraphFile> {
    let text = if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(|e| Failure::Io(e.to_string()))?;
        s
    } else {
        fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?
    };
    GraphFile::parse(&text).map_err(Failure::Parse)
}

fn write_out(path: Option<&Path>, text: &str) -> Res<()> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Io(format!("{}: {e}", p.display()))),
        None => io::stdout().write_all(text.as_bytes()).map_err(|e| Failure::Io(e.to_string())),
    }
}

fn rational_arg(name: &str, s: &str) -> Res<Rational> {
    parse_rational(s).map_err(|e| Failure::Parse(format!("--{name}: {e}")))
}

fn run(cmd: Cmd) -> Res<()> {
    match cmd {
        Cmd::Draw { construction, input, output, epsilon, d_target, root, rel_tol, seed: _, format } => {
            let file = read_input(&input)?;
            let eps = Epsilon::new(rational_arg("epsilon", &epsilon)?).map_err(|e| Failure::Parse(e.to_string()))?;
            let tol = rational_arg("rel-tol", &rel_tol)?;
            let (drawing, extras) = draw(construction, &file.graph, &eps, d_target, root)?;
            let out = GraphFile::from_drawing(&drawing, file.names.clone());
            write_out(output.as_deref(), &out.to_text())?;
            let rep = metrics::report(&drawing, &tol);
            let text = match format {
                Format::Text => report::metrics_text(&rep, &extras),
                Format::Json => serde_json::to_string_pretty(&report::metrics_json(&rep, &extras)).unwrap() + "\n",
            };
            // The report shares stdout only when the drawing went to a file.
            if output.is_some() {
                print!("{text}");
            } else {
                eprint!("{text}");
            }
            Ok(())
        }
        Cmd::Metrics { input, rel_tol, format } => {
            let d = read_input(&input)?.drawing().map_err(Failure::Parse)?;
            let tol = rational_arg("rel-tol", &rel_tol)?;
            let rep = metrics::report(&d, &tol);
            match format {
                Format::Text => print!("{}", report::metrics_text(&rep, &Vec::new())),
                Format::Json => println!("{}", serde_json::to_string_pretty(&report::metrics_json(&rep, &Vec::new())).unwrap()),
            }
            Ok(())
        }
        Cmd::Verify { input, s, format } => {
            let s = rational_arg("s", &s)?;
            if s < Rational::from_integer(1.into()) {
                return Err(Failure::Parse("--s must be at least 1".into()));
            }
            let d = read_input(&input)?.drawing().map_err(Failure::Parse)?;
            let check = verify::annulus_bound_check(&d, &s)?;
            let mut lines = Vec::new();
            for v in 0..d.n() {
                if let Ok(c) = verify::annulus_census(&d, v) {
                    lines.push(VertexLine { vertex: v, counts: c.counts.into_iter().collect() });
                }
            }
            let limit = Rational::from_integer(verify::PACKING_CONSTANT.into()) * &s * &s;
            match format {
                Format::Text => print!("{}", report::verify_text(&lines, &check, &limit)),
                Format::Json => println!("{}", serde_json::to_string_pretty(&report::verify_json(&lines, &check, &limit)).unwrap()),
            }
            if check.verdict == verify::Verdict::InconsistentWithTheorem {
                return Err(Failure::Internal("overfull annulus with spanning ratio at most s".into()));
            }
            Ok(())
        }
        Cmd::Recognize { recognizer, input, witness, format } => {
            let g = read_input(&input)?.graph;
            let (answer, class) = match recognizer {
                Recognizer::Sr1 => (verify::recognize_sr1(&g)?, None),
                Recognizer::PlanarSr1 => {
                    let c = verify::planar_sr1_class(&g);
                    (c.is_some(), c.map(|c| format!("{c:?}")))
                }
            };
            if let (Some(path), Recognizer::Sr1) = (&witness, recognizer) {
                if let Some(d) = verify::sr1_witness(&g)? {
                    write_out(Some(path), &GraphFile::from_drawing(&d, None).to_text())?;
                }
            }
            match format {
                Format::Text => {
                    println!("{answer}");
                    if let Some(c) = class {
                        println!("class: {c}");
                    }
                }
                Format::Json => println!("{}", json!({ "answer": answer, "class": class })),
            }
            Ok(())
        }
        Cmd::ExportSvg { input, out, viewport } => {
            let d = read_input(&input)?.drawing().map_err(Failure::Parse)?;
            write_out(Some(&out), &svg::render(&d, viewport))
        }
        Cmd::Generate { family, n, seed, max_degree, p, output } => {
            if n == 0 {
                return Err(Failure::Parse("--n must be positive".into()));
            }
            let mut rng = generators::rng(seed);
            let g = match family {
                Family::Tree => generators::random_tree(n, max_degree.max(2), &mut rng),
                Family::Planar => generators::random_connected_planar(n, p, &mut rng),
                Family::Triangulation => {
                    if n < 3 {
                        return Err(Failure::Parse("triangulations need n >= 3".into()));
                    }
                    generators::random_triangulation(n, &mut rng)
                }
                Family::Connected => generators::random_connected(n, p, &mut rng),
                Family::Path => generators::path(n),
            };
            let f = GraphFile { graph: g, names: None, coords: None };
            write_out(output.as_deref(), &f.to_text())
        }
    }
}

fn rooted(g: &Graph, root: usize) -> Res<RootedTree> {
    if root >= g.n() {
        return Err(Failure::Parse(format!("--root {root} is not a vertex")));
    }
    Ok(RootedTree::from_tree_graph(g.clone(), root)?)
}

fn draw(c: Construction, g: &Graph, eps: &Epsilon, d_target: usize, root: usize) -> Res<(Drawing, Extras)> {
    let mut extras = Extras::new();
    let d = match c {
        Construction::Planar => layout::draw_planar_spanner(g, eps)?,
        Construction::Proper => layout::draw_proper_spanner(g, eps)?,
        Construction::TreeProper => layout::draw_tree_proper(&rooted(g, root)?, eps)?,
        Construction::TreePlanar => {
            let (d, st) = layout::draw_tree_planar_with_stats(&rooted(g, root)?, eps)?;
            extras.push(("n_prime".into(), json!(st.n_prime)));
            extras.push(("tree_height".into(), json!(st.height)));
            extras.push(("recurrence_width".into(), json!(st.recurrence_width.to_string())));
            d
        }
        Construction::Tough => {
            let td = layout::draw_graph_via_tough_tree(g, d_target, eps)?;
            extras.push(("tree_max_degree".into(), json!(td.tree_max_degree)));
            extras.push(("target_met".into(), json!(td.target_met)));
            if !td.target_met {
                eprintln!(
                    "warning: DegreeTargetMissed: spanning tree has degree {} above target {d_target}",
                    td.tree_max_degree
                );
            }
            td.drawing
        }
    };
    Ok((d, extras))
}
