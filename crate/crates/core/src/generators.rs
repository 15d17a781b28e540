//! Seeded random instances for tests, benchmarks and the CLI fixtures.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::drawing::Drawing;
use crate::geom::{Point, Rational};
use crate::graph::Graph;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random triangulation on `n >= 3` vertices: stacked insertions into random
/// faces followed by random edge flips.
pub fn random_triangulation<R: Rng>(n: usize, rng: &mut R) -> Graph {
    assert!(n >= 3);
    // ccw rotations; faces are (a, b, c) with a -> b -> c ccw.
    let mut rot: Vec<Vec<usize>> = vec![vec![2, 1], vec![0, 2], vec![1, 0]];
    rot.resize(n, Vec::new());
    let mut faces: Vec<[usize; 3]> = vec![[0, 1, 2], [0, 2, 1]];
    for v in 3..n {
        let fi = rng.gen_range(0..faces.len());
        let [a, b, c] = faces.swap_remove(fi);
        // v sits inside the ccw triangle a b c
        // The face wedge at a runs ccw from b to c, and so on around.
        for (x, after) in [(a, b), (b, c), (c, a)] {
            let p = rot[x].iter().position(|&w| w == after).unwrap();
            rot[x].insert(p + 1, v);
        }
        rot[v] = vec![a, b, c];
        faces.extend([[a, b, v], [b, c, v], [c, a, v]]);
    }
    let mut g = Graph::new(n);
    for (u, r) in rot.iter().enumerate() {
        for &w in r {
            if u < w {
                g.add_edge(u, w);
            }
        }
    }
    for _ in 0..3 * n {
        let edges = g.edges();
        let (a, b) = edges[rng.gen_range(0..edges.len())];
        if g.degree(a) <= 3 || g.degree(b) <= 3 {
            continue;
        }
        let pa = rot[a].iter().position(|&w| w == b).unwrap();
        let pb = rot[b].iter().position(|&w| w == a).unwrap();
        let c = rot[b][(pb + rot[b].len() - 1) % rot[b].len()];
        let d = rot[a][(pa + rot[a].len() - 1) % rot[a].len()];
        if c == d || g.has_edge(c, d) {
            continue;
        }
        rot[a].remove(pa);
        rot[b].remove(pb);
        g.remove_edge(a, b);
        // c sees a then b consecutively (ccw b after a); d sees b then a.
        let i = rot[c].iter().position(|&w| w == a).unwrap();
        rot[c].insert(i + 1, d);
        let j = rot[d].iter().position(|&w| w == b).unwrap();
        rot[d].insert(j + 1, c);
        g.add_edge(c, d);
    }
    g
}

/// Random spanning tree of a connected graph (random-order Kruskal).
pub fn random_spanning_tree<R: Rng>(g: &Graph, rng: &mut R) -> Graph {
    let mut edges = g.edges();
    edges.shuffle(rng);
    let mut parent: Vec<usize> = (0..g.n()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut t = Graph::new(g.n());
    for (u, v) in edges {
        let (a, b) = (find(&mut parent, u), find(&mut parent, v));
        if a != b {
            parent[a] = b;
            t.add_edge(u, v);
        }
    }
    t
}

/// Connected planar graph: a random spanning tree of a random triangulation
/// plus each remaining edge with probability `keep`.
pub fn random_connected_planar<R: Rng>(n: usize, keep: f64, rng: &mut R) -> Graph {
    if n < 3 {
        return path(n);
    }
    let tri = random_triangulation(n, rng);
    let mut g = random_spanning_tree(&tri, rng);
    for (u, v) in tri.edges() {
        if !g.has_edge(u, v) && rng.gen_bool(keep) {
            g.add_edge(u, v);
        }
    }
    g
}

/// Random tree with maximum degree at most `max_deg >= 2` (or a single
/// edge when `n = 2`): each new vertex attaches to a random earlier vertex
/// with spare degree.
pub fn random_tree<R: Rng>(n: usize, max_deg: usize, rng: &mut R) -> Graph {
    assert!(max_deg >= 2 || n <= 2);
    let mut g = Graph::new(n);
    for v in 1..n {
        let open: Vec<usize> = (0..v).filter(|&u| g.degree(u) < max_deg).collect();
        let u = open[rng.gen_range(0..open.len())];
        g.add_edge(u, v);
    }
    g
}

/// Random connected graph: random tree plus each other pair with
/// probability `p`.
pub fn random_connected<R: Rng>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut g = random_tree(n, n.max(2), rng);
    for u in 0..n {
        for v in u + 1..n {
            if !g.has_edge(u, v) && rng.gen_bool(p) {
                g.add_edge(u, v);
            }
        }
    }
    g
}

pub fn path(n: usize) -> Graph {
    let mut g = Graph::new(n);
    for i in 1..n {
        g.add_edge(i - 1, i);
    }
    g
}

/// Random connected graph with distinct random rational coordinates of
/// mixed denominators.
pub fn random_drawing<R: Rng>(n: usize, p: f64, rng: &mut R) -> Drawing {
    let g = random_connected(n, p, rng);
    let mut pts: Vec<Point> = Vec::with_capacity(n);
    while pts.len() < n {
        let den = rng.gen_range(1..=16i64);
        let q = Point::new(
            Rational::new(rng.gen_range(-200..=200i64).into(), den.into()),
            Rational::new(rng.gen_range(-200..=200i64).into(), den.into()),
        );
        if !pts.contains(&q) {
            pts.push(q);
        }
    }
    Drawing::new(g, pts).expect("sizes match")
}
