//! Executable forms of the bound arguments: the annulus census around a
//! vertex, the spanning-ratio consequence of an overfull annulus, and the
//! recognizers for drawings with spanning ratio exactly 1.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::drawing::Drawing;
use crate::error::{Error, Result};
use crate::geom::{int, Point, Rational};
use crate::graph::{hamiltonian_path, is_connected, Graph, HAMILTONIAN_LIMIT};
use crate::interval::{sqrt_rational, Ext, Interval};
use crate::metrics::spanning_ratio;

/// Neighbors per annulus in a drawing with spanning ratio `s` are at most
/// `PACKING_CONSTANT * s^2`.
pub const PACKING_CONSTANT: i64 = 48;

/// Neighbors of `center` binned by normalized distance. Annulus `i >= 1`
/// holds distances in `(2^(i-1), 2^i]`, except that distance exactly 1
/// (the shortest edge itself) goes to annulus 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnnulusCensus {
    pub center: usize,
    pub shortest_incident_edge_len: Interval,
    pub counts: BTreeMap<u32, usize>,
    /// Always 0 after normalization; kept as a checkable invariant.
    pub inside_unit: usize,
}

/// Binning is exact: it compares squared length ratios with powers of 4.
pub fn annulus_census(d: &Drawing, center: usize) -> Result<AnnulusCensus> {
    let g = d.graph();
    if center >= g.n() || g.degree(center) == 0 {
        return Err(Error::InvalidInput(format!("vertex {center} has no incident edge")));
    }
    let c = d.point(center);
    let lens: Vec<Rational> = g.neighbors(center).iter().map(|&v| c.dist_sq(d.point(v))).collect();
    let min = lens.iter().min().unwrap().clone();
    if min.is_zero() {
        return Err(Error::InvalidInput(format!("zero-length edge at vertex {center}")));
    }
    let (lo, hi) = sqrt_rational(&min, 64);
    let mut counts = BTreeMap::new();
    let mut inside_unit = 0;
    for l in &lens {
        let q = l / &min;
        if q < Rational::one() {
            inside_unit += 1;
            continue;
        }
        // smallest i >= 1 with q <= 4^i
        let mut i = 1u32;
        let mut bound = int(4);
        while q > bound {
            bound *= int(4);
            i += 1;
        }
        *counts.entry(i).or_insert(0) += 1;
    }
    Ok(AnnulusCensus {
        center,
        shortest_incident_edge_len: Interval::new(Ext::Finite(lo), Ext::Finite(hi)),
        counts,
        inside_unit,
    })
}

/// An annulus holding more neighbors than the packing bound allows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub vertex: usize,
    pub annulus: u32,
    pub count: usize,
    /// The bound argument needs every path between two neighbors of the
    /// vertex to pass through it. When that fails the overfull annulus says
    /// nothing about the spanning ratio.
    pub applicable: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    /// No applicable violation, or the certified spanning ratio exceeds `s`
    /// as the bound argument demands.
    Consistent,
    /// An applicable violation with spanning ratio certified at most `s`.
    /// Only an implementation bug can produce this.
    InconsistentWithTheorem,
    /// The enclosure could not be separated from `s`.
    Undecided,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundCheck {
    pub violations: Vec<Violation>,
    /// Spanning ratio enclosure, computed only when some violation applies.
    pub spanning_ratio: Option<Interval>,
    pub verdict: Verdict,
}

/// Census of every vertex against `48 s^2`, then the implication
/// "applicable violation implies spanning ratio above `s`".
pub fn annulus_bound_check(d: &Drawing, s: &Rational) -> Result<BoundCheck> {
    if *s < Rational::one() {
        return Err(Error::InvalidInput("s must be at least 1".into()));
    }
    let limit = int(PACKING_CONSTANT) * s * s;
    let g = d.graph();
    let mut violations = Vec::new();
    for v in 0..g.n() {
        if g.degree(v) == 0 || Rational::from_integer(BigInt::from(g.degree(v))) <= limit {
            continue;
        }
        let census = match annulus_census(d, v) {
            Ok(c) => c,
            // A zero-length edge already makes the spanning ratio infinite.
            Err(Error::InvalidInput(_)) => continue,
            Err(e) => return Err(e),
        };
        let over: Vec<(u32, usize)> = census
            .counts
            .iter()
            .filter(|(_, &c)| Rational::from_integer(BigInt::from(c)) > limit)
            .map(|(&i, &c)| (i, c))
            .collect();
        if over.is_empty() {
            continue;
        }
        let applicable = separates_neighbors(g, v);
        violations.extend(over.into_iter().map(|(annulus, count)| Violation { vertex: v, annulus, count, applicable }));
    }
    if !violations.iter().any(|v| v.applicable) {
        return Ok(BoundCheck { violations, spanning_ratio: None, verdict: Verdict::Consistent });
    }
    let mut tol = Rational::new(BigInt::one(), BigInt::from(1_000_000_000u64));
    let floor = Rational::new(BigInt::one(), BigInt::one() << 200u32);
    loop {
        let sr = spanning_ratio(d, &tol)?;
        let verdict = if sr.lo > Ext::Finite(s.clone()) {
            Some(Verdict::Consistent)
        } else if sr.hi <= Ext::Finite(s.clone()) {
            Some(Verdict::InconsistentWithTheorem)
        } else if tol <= floor {
            Some(Verdict::Undecided)
        } else {
            None
        };
        if let Some(verdict) = verdict {
            return Ok(BoundCheck { violations, spanning_ratio: Some(sr), verdict });
        }
        tol = &tol * &tol;
    }
}

/// Whether all neighbors of `v` lie in different components of `G - v`.
fn separates_neighbors(g: &Graph, v: usize) -> bool {
    let mut removed = vec![false; g.n()];
    removed[v] = true;
    let (comp, _) = g.components_without(&removed);
    let mut seen = std::collections::HashSet::new();
    g.neighbors(v).iter().all(|&w| seen.insert(comp[w]))
}

/// `2^floor((degree - 1) / (48 s^2))`: the longest edge at a vertex of this
/// degree is at least this many times the shortest in any drawing with
/// spanning ratio at most `s`.
pub fn star_elr_lower_bound(degree: usize, s: &Rational) -> Result<BigInt> {
    if degree == 0 || *s < Rational::one() {
        return Err(Error::InvalidInput("need degree >= 1 and s >= 1".into()));
    }
    let k = (Rational::from_integer(BigInt::from(degree - 1)) / (int(PACKING_CONSTANT) * s * s)).floor();
    let k: usize = k
        .to_integer()
        .try_into()
        .map_err(|_| Error::InvalidInput("bound exponent too large".into()))?;
    Ok(BigInt::one() << k)
}

/// Whether some straight-line drawing of `g` has spanning ratio exactly 1,
/// which happens exactly when `g` has a Hamiltonian path.
pub fn recognize_sr1(g: &Graph) -> Result<bool> {
    Ok(hamiltonian_path(g, HAMILTONIAN_LIMIT)?.is_some())
}

/// The drawing behind [`recognize_sr1`]: the `i`-th vertex of a Hamiltonian
/// path at `(i, 0)`.
pub fn sr1_witness(g: &Graph) -> Result<Option<Drawing>> {
    let Some(path) = hamiltonian_path(g, HAMILTONIAN_LIMIT)? else {
        return Ok(None);
    };
    let mut coords = vec![Point::origin(); g.n()];
    for (i, &v) in path.iter().enumerate() {
        coords[v] = Point::from_ints(i as i64, 0);
    }
    Ok(Some(Drawing::new(g.clone(), coords)?))
}

/// The graph classes with a planar drawing of spanning ratio exactly 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlanarSr1Class {
    /// `P_n`: all vertices on a line.
    Path,
    /// `K_1 + P_(n-1)`: a path and one vertex off its line.
    Fan,
    /// `K_2 + P_(n-2)`: a path and two adjacent apexes, their edge crossing
    /// the line beyond an end of the path.
    AdjacentApexes,
    /// `co-K_2 + P_(n-2)`: two apexes on opposite sides, collinear with an
    /// inner path vertex.
    SeparatedApexes,
    Octahedron,
}

pub fn recognize_planar_sr1(g: &Graph) -> bool {
    planar_sr1_class(g).is_some()
}

/// The class of `g`, tried in the order listed in [`PlanarSr1Class`].
pub fn planar_sr1_class(g: &Graph) -> Option<PlanarSr1Class> {
    let n = g.n();
    let m = g.m();
    if is_path_graph(g, &vec![false; n]) {
        return Some(PlanarSr1Class::Path);
    }
    let universal: Vec<usize> = (0..n).filter(|&v| g.degree(v) == n - 1).collect();
    if n >= 3 && m == 2 * n - 3 {
        for &a in universal.iter().take(3) {
            if is_path_graph(g, &mask(n, &[a])) {
                return Some(PlanarSr1Class::Fan);
            }
        }
    }
    if n >= 4 && m == 3 * n - 6 && universal.len() >= 2 && universal.len() <= 4 {
        for (i, &a) in universal.iter().enumerate() {
            for &b in &universal[i + 1..] {
                if is_path_graph(g, &mask(n, &[a, b])) {
                    return Some(PlanarSr1Class::AdjacentApexes);
                }
            }
        }
    }
    if n >= 5 && m == 3 * n - 7 {
        let apex: Vec<usize> = (0..n).filter(|&v| g.degree(v) == n - 2).collect();
        if apex.len() <= 4 {
            for (i, &a) in apex.iter().enumerate() {
                for &b in &apex[i + 1..] {
                    if !g.has_edge(a, b) && is_path_graph(g, &mask(n, &[a, b])) {
                        return Some(PlanarSr1Class::SeparatedApexes);
                    }
                }
            }
        }
    }
    if n == 6 && m == 12 && (0..n).all(|v| g.degree(v) == 4) {
        return Some(PlanarSr1Class::Octahedron);
    }
    None
}

fn mask(n: usize, vs: &[usize]) -> Vec<bool> {
    let mut m = vec![false; n];
    for &v in vs {
        m[v] = true;
    }
    m
}

/// Whether the vertices not in `removed` induce a path (one vertex counts).
fn is_path_graph(g: &Graph, removed: &[bool]) -> bool {
    let keep: Vec<usize> = (0..g.n()).filter(|&v| !removed[v]).collect();
    if keep.is_empty() {
        return false;
    }
    let h = g.induced(&keep);
    h.m() + 1 == h.n() && h.max_degree() <= 2 && is_connected(&h)
}
