//! Exact predicates and certified metrics of drawings.

use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::drawing::{ceil_log2, Drawing};
use crate::error::{Error, Result};
use crate::geom::{Frame, Point, Rational};
use crate::graph::is_connected;
use crate::interval::{sqrt_rational, sqrt_scaled, Ext, Interval};

/// Working precision in bits at which enclosures start.
const START_PREC: u64 = 64;
/// Escalation stops here even if the tolerance is not met.
const MAX_PREC: u64 = 1 << 14;

pub fn default_rel_tol() -> Rational {
    Rational::new(BigInt::one(), BigInt::from(1_000_000_000u64))
}

/// Everything the CLI reports about a drawing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MetricReport {
    /// `None` when fewer than two vertices; `Err`-free disconnected inputs
    /// are reported as `Disconnected` by [`spanning_ratio`] and show up here
    /// as `None` as well.
    pub spanning_ratio: Option<Interval>,
    pub edge_length_ratio: Option<Interval>,
    pub width: Rational,
    pub height: Rational,
    pub planar: bool,
    pub proper: bool,
    pub no_three_collinear: bool,
    pub min_pairwise_distance_sq: Option<Rational>,
    pub connected: bool,
}

pub fn report(d: &Drawing, rel_tol: &Rational) -> MetricReport {
    let bb = bounding_box(d);
    let (width, height) = bb.as_ref().map_or((Rational::zero(), Rational::zero()), |b| (b.width(), b.height()));
    MetricReport {
        spanning_ratio: spanning_ratio(d, rel_tol).ok(),
        edge_length_ratio: edge_length_ratio(d, rel_tol).ok(),
        width,
        height,
        planar: is_planar_drawing(d),
        proper: is_proper_drawing(d),
        no_three_collinear: no_three_collinear(d),
        min_pairwise_distance_sq: min_pairwise_distance_sq(d).ok(),
        connected: is_connected(d.graph()),
    }
}

/// Certified enclosure of the spanning ratio with `hi / lo - 1 <= rel_tol`.
///
/// Distances are handled in fixed point: every Euclidean length is rounded
/// down and up to a multiple of `2^-s` on the drawing's integer grid, and
/// two Dijkstra runs per source give lower and upper path lengths. The scale
/// `s` is picked from the closest vertex pair so that the error is relative.
pub fn spanning_ratio(d: &Drawing, rel_tol: &Rational) -> Result<Interval> {
    let g = d.graph();
    let n = g.n();
    if n < 2 {
        return Err(Error::InvalidInput("spanning ratio needs at least 2 vertices".into()));
    }
    if !is_connected(g) {
        return Err(Error::Disconnected);
    }
    let f = Frame::new(d.coords());
    let dsq: Vec<Vec<BigUint>> = (0..n)
        .into_par_iter()
        .map(|u| (0..n).map(|v| f.dist_sq(u, v).to_biguint().unwrap()).collect())
        .collect();
    let min_sq = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .map(|(u, v)| &dsq[u][v])
        .min()
        .unwrap();
    if min_sq.is_zero() {
        return Ok(Interval::infinite());
    }
    let min_log = (min_sq.bits() as i64 - 1) / 2;
    let mut prec = START_PREC;
    loop {
        let shift = prec as i64 + ceil_log2(n) as i64 + 2 - min_log;
        let iv = spanning_ratio_at(d, &dsq, shift);
        let tight = iv.relative_width().is_some_and(|w| &w <= rel_tol);
        if tight || prec >= MAX_PREC {
            return Ok(iv.simplified(prec + 16));
        }
        prec *= 2;
    }
}

fn spanning_ratio_at(d: &Drawing, dsq: &[Vec<BigUint>], shift: i64) -> Interval {
    let g = d.graph();
    let n = g.n();
    let mut lo_w = vec![Vec::new(); n];
    let mut hi_w = vec![Vec::new(); n];
    for u in 0..n {
        for &v in g.neighbors(u) {
            let (l, h) = sqrt_scaled(&dsq[u][v], shift);
            lo_w[u].push((v, l));
            hi_w[u].push((v, h));
        }
    }
    // Per source: best lower ratio and best upper ratio as (num, den).
    let per_source: Vec<((BigUint, BigUint), (BigUint, BigUint))> = (0..n)
        .into_par_iter()
        .map(|u| {
            let plo = dijkstra(&lo_w, u);
            let phi = dijkstra(&hi_w, u);
            let mut best_lo = (BigUint::zero(), BigUint::one());
            let mut best_hi = (BigUint::zero(), BigUint::one());
            for v in u + 1..n {
                let (dlo, dhi) = sqrt_scaled(&dsq[u][v], shift);
                if frac_gt(&plo[v], &dhi, &best_lo) {
                    best_lo = (plo[v].clone(), dhi);
                }
                if frac_gt(&phi[v], &dlo, &best_hi) {
                    best_hi = (phi[v].clone(), dlo);
                }
            }
            (best_lo, best_hi)
        })
        .collect();
    let mut best_lo = (BigUint::zero(), BigUint::one());
    let mut best_hi = (BigUint::zero(), BigUint::one());
    for (l, h) in per_source {
        if frac_gt(&l.0, &l.1, &best_lo) {
            best_lo = l;
        }
        if frac_gt(&h.0, &h.1, &best_hi) {
            best_hi = h;
        }
    }
    let to_rat = |(a, b): (BigUint, BigUint)| {
        Rational::new(BigInt::from_biguint(Sign::Plus, a), BigInt::from_biguint(Sign::Plus, b))
    };
    Interval::new(Ext::Finite(to_rat(best_lo)), Ext::Finite(to_rat(best_hi)))
}

/// `a / b > best.0 / best.1`, with `b = 0` treated as `+inf`.
fn frac_gt(a: &BigUint, b: &BigUint, best: &(BigUint, BigUint)) -> bool {
    if b.is_zero() {
        return !best.1.is_zero();
    }
    if best.1.is_zero() {
        return false;
    }
    (a * &best.1).cmp(&(&best.0 * b)) == Ordering::Greater
}

fn dijkstra(w: &[Vec<(usize, BigUint)>], s: usize) -> Vec<BigUint> {
    let n = w.len();
    let mut dist: Vec<Option<BigUint>> = vec![None; n];
    let mut done = vec![false; n];
    let mut heap = BinaryHeap::new();
    dist[s] = Some(BigUint::zero());
    heap.push(Reverse((BigUint::zero(), s)));
    while let Some(Reverse((du, u))) = heap.pop() {
        if done[u] {
            continue;
        }
        done[u] = true;
        for (v, wt) in &w[u] {
            if done[*v] {
                continue;
            }
            let cand = &du + wt;
            if dist[*v].as_ref().is_none_or(|dv| cand < *dv) {
                dist[*v] = Some(cand.clone());
                heap.push(Reverse((cand, *v)));
            }
        }
    }
    dist.into_iter().map(|d| d.expect("connected graph")).collect()
}

/// Certified longest-to-shortest edge ratio.
pub fn edge_length_ratio(d: &Drawing, rel_tol: &Rational) -> Result<Interval> {
    let edges = d.graph().edges();
    if edges.is_empty() {
        return Err(Error::NoEdges);
    }
    let f = Frame::new(d.coords());
    let lens: Vec<BigInt> = edges.iter().map(|&(u, v)| f.dist_sq(u, v)).collect();
    let max = lens.iter().max().unwrap();
    let min = lens.iter().min().unwrap();
    if min.is_zero() {
        return Ok(Interval::infinite());
    }
    let q = Rational::new(max.clone(), min.clone());
    let mut prec = START_PREC;
    loop {
        let (lo, hi) = sqrt_rational(&q, prec);
        let iv = Interval::new(Ext::Finite(lo), Ext::Finite(hi));
        if iv.relative_width().is_some_and(|w| &w <= rel_tol) || prec >= MAX_PREC {
            return Ok(iv);
        }
        prec *= 2;
    }
}

/// True iff closed edge segments meet only at shared endpoints and all
/// vertices occupy distinct points.
pub fn is_planar_drawing(d: &Drawing) -> bool {
    let f = Frame::new(d.coords());
    if has_coincident(d) {
        return false;
    }
    let edges = d.graph().edges();
    for (i, &(a, b)) in edges.iter().enumerate() {
        for &(c, e) in &edges[i + 1..] {
            if !boxes_overlap(&f, a, b, c, e) {
                continue;
            }
            let shared = [(a, b, c, e), (a, b, e, c), (b, a, c, e), (b, a, e, c)]
                .into_iter()
                .find(|t| t.0 == t.2);
            let bad = match shared {
                // Common endpoint p: the segments p-q and p-r only touch at p
                // unless they run along the same ray.
                Some((p, q, _, r)) => {
                    f.orient(p, q, r).is_eq() && (f.in_box(r, p, q) || f.in_box(q, p, r))
                }
                None => segments_intersect(&f, a, b, c, e),
            };
            if bad {
                return false;
            }
        }
    }
    true
}

fn boxes_overlap(f: &Frame, a: usize, b: usize, c: usize, e: usize) -> bool {
    (0..2).all(|ax| {
        let (lo1, hi1) = if f.cmp_axis(a, b, ax).is_le() { (a, b) } else { (b, a) };
        let (lo2, hi2) = if f.cmp_axis(c, e, ax).is_le() { (c, e) } else { (e, c) };
        f.cmp_axis(lo1, hi2, ax).is_le() && f.cmp_axis(lo2, hi1, ax).is_le()
    })
}

/// Closed segments `ab` and `ce` share at least one point.
fn segments_intersect(f: &Frame, a: usize, b: usize, c: usize, e: usize) -> bool {
    let o1 = f.orient(a, b, c);
    let o2 = f.orient(a, b, e);
    let o3 = f.orient(c, e, a);
    let o4 = f.orient(c, e, b);
    if o1 != o2 && o3 != o4 && o1.is_ne() && o2.is_ne() && o3.is_ne() && o4.is_ne() {
        return true;
    }
    (o1.is_eq() && f.in_box(c, a, b))
        || (o2.is_eq() && f.in_box(e, a, b))
        || (o3.is_eq() && f.in_box(a, c, e))
        || (o4.is_eq() && f.in_box(b, c, e))
}

fn has_coincident(d: &Drawing) -> bool {
    let mut pts: Vec<&Point> = d.coords().iter().collect();
    pts.sort_unstable();
    pts.windows(2).any(|w| w[0] == w[1])
}

/// Distinct vertex positions and no vertex in the open interior of an edge.
pub fn is_proper_drawing(d: &Drawing) -> bool {
    if has_coincident(d) {
        return false;
    }
    let f = Frame::new(d.coords());
    let edges = d.graph().edges();
    (0..d.n()).all(|w| {
        edges
            .iter()
            .all(|&(a, b)| w == a || w == b || !(f.orient(a, b, w).is_eq() && f.in_box(w, a, b)))
    })
}

/// Exact test over all vertex triples; coincident points count as collinear.
pub fn no_three_collinear(d: &Drawing) -> bool {
    let n = d.n();
    if has_coincident(d) {
        return n < 3;
    }
    let f = Frame::new(d.coords());
    (0..n).into_par_iter().all(|a| {
        (a + 1..n).all(|b| (b + 1..n).all(|c| f.orient(a, b, c).is_ne()))
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundingBox {
    pub min: Point,
    pub max: Point,
}

impl BoundingBox {
    pub fn width(&self) -> Rational {
        &self.max.x - &self.min.x
    }

    pub fn height(&self) -> Rational {
        &self.max.y - &self.min.y
    }
}

/// Exact bounding box; `None` for the empty drawing.
pub fn bounding_box(d: &Drawing) -> Option<BoundingBox> {
    bounding_box_of(d.coords())
}

pub fn bounding_box_of(pts: &[Point]) -> Option<BoundingBox> {
    let first = pts.first()?;
    let mut min = first.clone();
    let mut max = first.clone();
    for p in &pts[1..] {
        if p.x < min.x {
            min.x = p.x.clone();
        }
        if p.y < min.y {
            min.y = p.y.clone();
        }
        if p.x > max.x {
            max.x = p.x.clone();
        }
        if p.y > max.y {
            max.y = p.y.clone();
        }
    }
    Some(BoundingBox { min, max })
}

pub fn min_pairwise_distance_sq(d: &Drawing) -> Result<Rational> {
    let n = d.n();
    if n < 2 {
        return Err(Error::InvalidInput("need at least 2 vertices".into()));
    }
    let f = Frame::new(d.coords());
    let best = (0..n)
        .into_par_iter()
        .map(|u| (u + 1..n).map(|v| f.dist_sq(u, v)).min())
        .flatten()
        .min()
        .unwrap();
    Ok(Rational::new(best, f.scale() * f.scale()))
}

/// Exact squared length of every edge.
pub fn edge_lengths_sq(d: &Drawing) -> Vec<((usize, usize), Rational)> {
    d.graph()
        .edges()
        .into_iter()
        .map(|(u, v)| ((u, v), d.point(u).dist_sq(d.point(v))))
        .collect()
}
