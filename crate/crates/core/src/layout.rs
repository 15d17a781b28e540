//! The drawing constructions.
//!
//! Every coordinate is an exact rational. The incremental spanners keep a
//! disk around the partial drawing and put the next vertex far outside it;
//! the tree layouts recurse and translate whole sub-drawings.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::drawing::{ceil_log2, Drawing, Epsilon};
use crate::error::{Error, Result, SpanningTreeError};
use crate::geom::{int, rat, Frame, Point, Rational};
use crate::graph::{connected_prefix_order, degree_bounded_spanning_tree, is_connected, Graph, RootedTree, VertexOrder};
use crate::interval::sqrt_rational;
use crate::metrics::bounding_box_of;
use crate::planar::augment_to_maximal_with_canonical_order;

/// Bits of precision for the apex of the base triangle.
const APEX_PREC: u64 = 64;

/// Disk strictly containing all `pts` in its interior: centre and radius.
fn enclosing_disk(pts: &[Point]) -> (Point, Rational) {
    let bb = bounding_box_of(pts).expect("nonempty point set");
    let (w, h) = (bb.width(), bb.height());
    let two = int(2);
    let centre = Point::new((&bb.min.x + &bb.max.x) / &two, (&bb.min.y + &bb.max.y) / &two);
    // (w+h)/2 beats the half diagonal unless one side is zero.
    let rho = match (w.is_zero(), h.is_zero()) {
        (false, false) => (&w + &h) / &two,
        (true, true) => rat(1, 2),
        _ => &w + &h,
    };
    (centre, rho)
}

/// Full output of the planar spanner pipeline.
#[derive(Debug, Clone)]
pub struct PlanarSpanner {
    /// The input graph, drawn.
    pub host: Drawing,
    /// The triangulated supergraph on the same positions.
    pub full: Drawing,
    pub order: VertexOrder,
}

/// Planar drawing of a connected planar graph with spanning ratio below
/// `1 + eps`.
pub fn draw_planar_spanner(h: &Graph, eps: &Epsilon) -> Result<Drawing> {
    Ok(planar_spanner_construction(h, eps)?.host)
}

pub fn planar_spanner_construction(h: &Graph, eps: &Epsilon) -> Result<PlanarSpanner> {
    let n = h.n();
    if n == 0 || !is_connected(h) {
        return Err(Error::NotConnected);
    }
    if n <= 2 {
        let coords: Vec<Point> = (0..n as i64).map(|i| Point::from_ints(i, 0)).collect();
        let d = Drawing::new(h.clone(), coords)?;
        return Ok(PlanarSpanner {
            host: d.clone(),
            full: d,
            order: VertexOrder::new((0..n).collect())?,
        });
    }
    let co = augment_to_maximal_with_canonical_order(h)?;
    let e = eps.value().clone().min(Rational::one());
    let o = co.order.as_slice().to_vec();
    let g = &co.supergraph;
    let mut coords = vec![Point::origin(); n];
    let base = &e / int(2);
    let apex_sq = Rational::one() - &e * &e / int(16);
    let apex_y = sqrt_rational(&apex_sq, APEX_PREC).1;
    coords[o[1]] = Point::new(base.clone(), Rational::zero());
    coords[o[2]] = Point::new(&base / int(2), apex_y);
    let mut placed: Vec<Point> = o[..3].iter().map(|&v| coords[v].clone()).collect();
    let mut contour = vec![o[0], o[2], o[1]];
    for (idx, &v) in o.iter().enumerate().skip(3) {
        let k = idx + 1;
        let hits: Vec<usize> = (0..contour.len()).filter(|&i| g.has_edge(v, contour[i])).collect();
        let (p, q) = match (hits.first(), hits.last()) {
            (Some(&p), Some(&q)) if p < q && hits.len() == q - p + 1 => (p, q),
            _ => return Err(Error::Internal(format!("neighbors of vertex {v} are not a contour subpath"))),
        };
        let sub: Vec<Point> = contour[p..=q].iter().map(|&w| coords[w].clone()).collect();
        let pt = place_next_vertex(&placed, &sub, k, &e);
        coords[v] = pt.clone();
        placed.push(pt);
        contour.splice(p + 1..q, [v]);
    }
    let full = Drawing::new(g.clone(), coords.clone())?;
    let host = Drawing::new(h.clone(), coords)?;
    Ok(PlanarSpanner { host, full, order: co.order })
}

/// Position of `v_k` given the partial drawing and the contour subpath
/// `w_p..w_q` of its neighbors (x-increasing).
///
/// x is the midpoint of the subpath ends; y clears every line through
/// consecutive subpath vertices at both ends and the top of the disk, and
/// then adds `(k+1) delta / eps` and rounds up to an integer.
pub fn place_next_vertex(placed: &[Point], subpath: &[Point], k: usize, eps: &Rational) -> Point {
    assert!(subpath.len() >= 2, "subpath needs two ends");
    let (centre, rho) = enclosing_disk(placed);
    let delta = &rho * int(2);
    let (xp, xq) = (&subpath[0].x, &subpath[subpath.len() - 1].x);
    let x = (xp + xq) / int(2);
    let mut top = &centre.y + &rho;
    for s in subpath.windows(2) {
        let slope = (&s[1].y - &s[0].y) / (&s[1].x - &s[0].x);
        for xv in [xp, xq] {
            let y = &s[0].y + (xv - &s[0].x) * &slope;
            if y > top {
                top = y;
            }
        }
    }
    let clear = Rational::from_integer(BigInt::from(k + 1)) * &delta / eps;
    let y = (top + clear).ceil();
    Point::new(x, y)
}

/// Proper drawing of a connected graph, no three vertices collinear, with
/// spanning ratio below `1 + eps`. Positions come from a BFS spanning tree;
/// the other edges are added as segments.
pub fn draw_proper_spanner(g: &Graph, eps: &Epsilon) -> Result<Drawing> {
    let n = g.n();
    if n == 0 || !is_connected(g) {
        return Err(Error::NotConnected);
    }
    let (_, parent) = g.bfs(0);
    let mut t = Graph::new(n);
    for (v, p) in parent.iter().enumerate() {
        if let Some(p) = p {
            t.add_edge(*p, v);
        }
    }
    let tree = RootedTree::from_tree_graph(t, 0)?;
    let order = connected_prefix_order(&tree);
    let e = eps.value();
    let mut coords = vec![Point::origin(); n];
    // Integer coordinates throughout, so collinearity is a divisibility test.
    let mut placed: Vec<(BigInt, BigInt)> = vec![(BigInt::zero(), BigInt::zero())];
    for (idx, &v) in order.as_slice().iter().enumerate().skip(1) {
        let k = idx + 1;
        let pts: Vec<Point> = placed.iter().map(|(x, y)| Point::new(x.clone().into(), y.clone().into())).collect();
        let (centre, rho) = enclosing_disk(&pts);
        let clear = Rational::from_integer(BigInt::from(k + 1)) * (&rho * int(2)) / e;
        let x = (&centre.x + &rho + clear).ceil().to_integer();
        let y0 = centre.y.ceil().to_integer();
        let mut bad = std::collections::BTreeSet::new();
        for i in 0..placed.len() {
            for j in i + 1..placed.len() {
                let (ax, ay) = &placed[i];
                let (bx, by) = &placed[j];
                let dx = bx - ax;
                if dx.is_zero() {
                    continue;
                }
                let num = (&x - ax) * (by - ay);
                if (&num % &dx).is_zero() {
                    let yl = ay + num / &dx;
                    if yl >= y0 {
                        bad.insert(yl);
                    }
                }
            }
        }
        let mut y = y0;
        while bad.contains(&y) {
            y += 1;
        }
        coords[v] = Point::new(x.clone().into(), y.clone().into());
        placed.push((x, y));
    }
    Drawing::new(g.clone(), coords)
}

/// Proper drawing of a tree with no three vertices collinear, all pairwise
/// distances at least 1, and spanning ratio at most `(gamma+2)/gamma`.
/// The root is at the origin, the top-left corner of the bounding box.
pub fn draw_tree_proper(t: &RootedTree, eps: &Epsilon) -> Result<Drawing> {
    let n = t.n();
    let d = t.max_degree().max(2);
    let adj: Vec<Vec<usize>> = (0..n).map(|v| t.graph().neighbors(v).to_vec()).collect();
    let mut ctx = ProperTree {
        adj,
        allowed: vec![false; n],
        d,
        gamma: int(eps.gamma() as i64),
    };
    let all: Vec<usize> = (0..n).collect();
    let (pts, _) = ctx.draw(&all, t.root(), Rational::one())?;
    let mut coords = vec![Point::origin(); n];
    for (v, p) in pts {
        coords[v] = p;
    }
    Drawing::new(t.graph().clone(), coords)
}

/// `(1 + eta) (gamma+2)/(gamma+1) (gamma+2) n^(log2(gamma+2) / log2(d/(d-1)))`,
/// the closed-form width bound of [`draw_tree_proper`] at the top level.
pub fn proper_tree_width_bound(n: usize, d: usize, gamma: u64, eta: f64) -> f64 {
    let g = gamma as f64;
    let d = d.max(2) as f64;
    let expo = (g + 2.0).log2() / (d / (d - 1.0)).log2();
    (1.0 + eta) * (g + 2.0) / (g + 1.0) * (g + 2.0) * (n as f64).powf(expo)
}

struct ProperTree {
    adj: Vec<Vec<usize>>,
    allowed: Vec<bool>,
    d: usize,
    gamma: Rational,
}

impl ProperTree {
    /// Drawing of the part `verts` rooted at `root`, with the root at the
    /// origin, x >= 0 and -eta <= y <= 0. Returns points and width.
    fn draw(&mut self, verts: &[usize], root: usize, eta: Rational) -> Result<(Vec<(usize, Point)>, Rational)> {
        if verts.len() == 1 {
            return Ok((vec![(root, Point::origin())], Rational::zero()));
        }
        let (u, v, part2) = self.separate(verts, root)?;
        let mut in2 = vec![false; self.adj.len()];
        for &x in &part2 {
            in2[x] = true;
        }
        let part1: Vec<usize> = verts.iter().copied().filter(|&x| !in2[x]).collect();
        debug_assert!(part1.contains(&u));
        let third = &eta / int(3);
        let (p1, w1) = self.draw(&part1, root, third.clone())?;
        let (p2, w2) = self.draw(&part2, v, third.clone())?;
        let shift_x = &w1 + &self.gamma * (&w1 + &eta + Rational::one());
        let delta = pick_delta(&p1, &p2, &shift_x, &third)?;
        let shift_y = -(&third + &delta);
        let mut out = p1;
        out.extend(p2.into_iter().map(|(x, p)| (x, p.translate(&shift_x, &shift_y))));
        Ok((out, shift_x + w2))
    }

    /// Separator edge `(u, v)` of the part, `u` on the root side, and the
    /// vertices below `v`.
    fn separate(&mut self, verts: &[usize], root: usize) -> Result<(usize, usize, Vec<usize>)> {
        for &x in verts {
            self.allowed[x] = true;
        }
        let mut order = Vec::with_capacity(verts.len());
        let mut parent = std::collections::HashMap::new();
        let mut stack = vec![root];
        parent.insert(root, usize::MAX);
        while let Some(x) = stack.pop() {
            order.push(x);
            for &y in &self.adj[x] {
                if self.allowed[y] && !parent.contains_key(&y) {
                    parent.insert(y, x);
                    stack.push(y);
                }
            }
        }
        for &x in verts {
            self.allowed[x] = false;
        }
        let n = verts.len();
        if order.len() != n {
            return Err(Error::Internal("tree part is not connected".into()));
        }
        let mut size: std::collections::HashMap<usize, usize> = order.iter().map(|&x| (x, 1)).collect();
        for &x in order.iter().rev() {
            let p = parent[&x];
            if p != usize::MAX {
                let s = size[&x];
                *size.get_mut(&p).unwrap() += s;
            }
        }
        let (big, u, v) = order
            .iter()
            .filter(|&&x| parent[&x] != usize::MAX)
            .map(|&x| (size[&x].max(n - size[&x]), parent[&x], x))
            .min()
            .unwrap();
        if n > 2 && big > ((self.d - 1) * n).div_ceil(self.d) {
            return Err(Error::Internal(format!("separator part {big} too large for n = {n}")));
        }
        // Vertices in the subtree of v: those whose DFS ancestry reaches v.
        let mut below = std::collections::HashSet::from([v]);
        for &x in &order {
            let p = parent[&x];
            if p != usize::MAX && below.contains(&p) {
                below.insert(x);
            }
        }
        let part2: Vec<usize> = order.iter().copied().filter(|x| below.contains(x)).collect();
        Ok((u, v, part2))
    }
}

/// Smallest delta from the scan `(eta/3) j / (J+1)` (J = 1, 3, 7, ..., j odd)
/// such that no line through two vertices of one part meets a vertex of the
/// other once part 2 is shifted by `(shift_x, -eta/3 - delta)`.
fn pick_delta(p1: &[(usize, Point)], p2: &[(usize, Point)], shift_x: &Rational, third: &Rational) -> Result<Rational> {
    let mut big_j: u64 = 1;
    while big_j < 1 << 20 {
        for j in (1..=big_j).step_by(2) {
            let delta = third * Rational::new(BigInt::from(j), BigInt::from(big_j + 1));
            let shift_y = -(third + &delta);
            let pts: Vec<Point> = p1
                .iter()
                .map(|(_, p)| p.clone())
                .chain(p2.iter().map(|(_, p)| p.translate(shift_x, &shift_y)))
                .collect();
            if cross_parts_clear(&Frame::new(&pts), p1.len()) {
                return Ok(delta);
            }
        }
        big_j = 2 * big_j + 1;
    }
    Err(Error::Internal("no admissible vertical offset found".into()))
}

fn cross_parts_clear(f: &Frame, n1: usize) -> bool {
    let n = f.len();
    let pairs_in = |lo: usize, hi: usize, olo: usize, ohi: usize| {
        (lo..hi).all(|a| (a + 1..hi).all(|b| (olo..ohi).all(|c| f.orient(a, b, c).is_ne())))
    };
    pairs_in(0, n1, n1, n) && pairs_in(n1, n, 0, n1)
}

/// Size and shape numbers of a [`draw_tree_planar`] run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanarTreeStats {
    /// Vertices after adding dummy children.
    pub n_prime: usize,
    pub height: u64,
    /// Width predicted by the block recurrence at the root.
    pub recurrence_width: BigInt,
}

/// Planar drawing of a tree with spanning ratio at most `(gamma+2)/gamma`
/// and all edges of length at least 1.
pub fn draw_tree_planar(t: &RootedTree, eps: &Epsilon) -> Result<Drawing> {
    Ok(draw_tree_planar_with_stats(t, eps)?.0)
}

pub fn draw_tree_planar_with_stats(t: &RootedTree, eps: &Epsilon) -> Result<(Drawing, PlanarTreeStats)> {
    let g = t.graph();
    let n = g.n();
    let leaf = |v: usize| g.degree(v) <= 1;
    let root = if leaf(t.root()) { t.root() } else { (0..n).find(|&v| leaf(v)).unwrap() };
    if g.max_degree() <= 2 {
        // A path: lay it out along the x-axis starting at the chosen end.
        let mut coords = vec![Point::origin(); n];
        let (order, _) = g.bfs(root);
        for (i, &v) in order.iter().enumerate() {
            coords[v] = Point::from_ints(i as i64, 0);
        }
        let stats = PlanarTreeStats {
            n_prime: n,
            height: 0,
            recurrence_width: BigInt::from(n.saturating_sub(1)),
        };
        return Ok((Drawing::new(g.clone(), coords)?, stats));
    }
    let (bfs, parent) = g.bfs(root);
    let mut children: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &v in &bfs[1..] {
        children[parent[v].unwrap()].push(v);
    }
    // Dummies give every internal vertex at least two children.
    for v in 0..n {
        if children[v].len() == 1 {
            let id = children.len();
            children.push(Vec::new());
            children[v].push(id);
        }
    }
    let total = children.len();
    let mut post = Vec::with_capacity(total);
    let mut stack = vec![(root, false)];
    while let Some((v, done)) = stack.pop() {
        if done {
            post.push(v);
        } else {
            stack.push((v, true));
            stack.extend(children[v].iter().map(|&c| (c, false)));
        }
    }
    let gamma = BigInt::from(eps.gamma());
    let mut size = vec![1usize; total];
    let mut width = vec![BigInt::zero(); total];
    let mut height = vec![0u64; total];
    let mut offset = vec![(BigInt::zero(), 0i64); total];
    for &v in &post {
        if children[v].is_empty() {
            continue;
        }
        size[v] = 1 + children[v].iter().map(|&c| size[c]).sum::<usize>();
        let mut kids = children[v].clone();
        kids.sort_by_key(|&c| (size[c], c));
        let gap = BigInt::from(ceil_log2(size[v]));
        let last = kids.len() - 1;
        let mut dj = BigInt::zero();
        for (i, &c) in kids.iter().enumerate() {
            let x = if i == 0 { BigInt::zero() } else { &dj + &gamma * (&dj + &gap) };
            dj = &x + &width[c];
            let lift = if i == last { 0 } else { 1 };
            offset[c] = (x, -lift);
            height[v] = height[v].max(height[c] + lift as u64);
        }
        width[v] = dj;
        children[v] = kids;
    }
    let mut pos = vec![(BigInt::zero(), 0i64); total];
    let mut stack = vec![root];
    while let Some(v) = stack.pop() {
        for &c in &children[v] {
            pos[c] = (&pos[v].0 + &offset[c].0, pos[v].1 + offset[c].1);
            stack.push(c);
        }
    }
    let max_x = pos.iter().map(|p| &p.0).max().unwrap().clone();
    if max_x > width[root] {
        return Err(Error::Internal("realized width exceeds the recurrence".into()));
    }
    let coords = pos[..n].iter().map(|(x, y)| Point::new(x.clone().into(), int(*y))).collect();
    let stats = PlanarTreeStats { n_prime: total, height: height[root], recurrence_width: width[root].clone() };
    Ok((Drawing::new(g.clone(), coords)?, stats))
}

/// Drawing produced by [`draw_graph_via_tough_tree`].
#[derive(Debug, Clone)]
pub struct ToughDrawing {
    pub drawing: Drawing,
    /// Maximum degree of the spanning tree that was drawn.
    pub tree_max_degree: usize,
    /// Whether the tree met the requested degree.
    pub target_met: bool,
}

/// Spanning tree of degree at most `d_target` if local search finds one,
/// drawn by [`draw_tree_proper`]; the remaining edges become segments.
pub fn draw_graph_via_tough_tree(g: &Graph, d_target: usize, eps: &Epsilon) -> Result<ToughDrawing> {
    let (tree, target_met) = match degree_bounded_spanning_tree(g, d_target) {
        Ok(t) => (t, true),
        Err(SpanningTreeError::Missed(m)) => (m.tree, false),
        Err(SpanningTreeError::Graph(e)) => return Err(e),
    };
    let tree_max_degree = tree.max_degree();
    let drawing = draw_tree_proper(&tree, eps)?.with_graph(g.clone())?;
    Ok(ToughDrawing { drawing, tree_max_degree, target_met })
}

/// True when `p` is strictly left of, and weakly above, every vertex on its
/// way to the root: the monotonicity both tree layouts promise.
pub fn root_paths_monotone(d: &Drawing, t: &RootedTree, strict: bool) -> bool {
    (0..t.n()).all(|v| match t.parent(v) {
        None => true,
        Some(p) => {
            let (a, b) = (d.point(p), d.point(v));
            if strict {
                a.x < b.x && a.y > b.y
            } else {
                a.x <= b.x && a.y >= b.y
            }
        }
    })
}
