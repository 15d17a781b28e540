//! Combinatorial planar embeddings, a path-addition planarity test, and the
//! augmentation of a connected planar graph to a triangulation whose
//! canonical ordering keeps every prefix of the input connected.
//!
//! Rotations list neighbours in counter-clockwise order. Faces keep the face
//! on the left: after the dart `u -> v` a face walk continues with
//! `v -> prev_ccw(v, u)`.

use std::collections::{HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::graph::{is_connected, Graph, VertexOrder};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RotationSystem {
    graph: Graph,
    rotation: Vec<Vec<usize>>,
    outer_face: Vec<usize>,
}

impl RotationSystem {
    /// Checks that each rotation is a permutation of the neighbourhood and
    /// that the face count satisfies Euler's formula per component.
    /// The outer face is the longest face, ties broken by smallest dart.
    pub fn new(graph: Graph, rotation: Vec<Vec<usize>>) -> Result<Self> {
        if rotation.len() != graph.n() {
            return Err(Error::InvalidInput("rotation length differs from vertex count".into()));
        }
        for (v, r) in rotation.iter().enumerate() {
            let mut s = r.clone();
            s.sort_unstable();
            if s != graph.neighbors(v) {
                return Err(Error::InvalidInput(format!("rotation at {v} is not a permutation of its neighbours")));
            }
        }
        let mut rs = RotationSystem { graph, rotation, outer_face: Vec::new() };
        let faces = rs.faces();
        let (_, comps) = rs.graph.components();
        let n = rs.graph.n() as i64;
        let m = rs.graph.m() as i64;
        if n - m + faces.len() as i64 != 2 * comps as i64 {
            return Err(Error::NotPlanar);
        }
        rs.outer_face = pick_outer(&faces);
        Ok(rs)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn rotation(&self, v: usize) -> &[usize] {
        &self.rotation[v]
    }

    pub fn rotations(&self) -> &[Vec<usize>] {
        &self.rotation
    }

    /// Vertex sequence of the designated outer face walk.
    pub fn outer_face(&self) -> &[usize] {
        &self.outer_face
    }

    pub fn next_ccw(&self, v: usize, u: usize) -> usize {
        next_ccw(&self.rotation, v, u)
    }

    pub fn prev_ccw(&self, v: usize, u: usize) -> usize {
        prev_ccw(&self.rotation, v, u)
    }

    /// All face walks as vertex sequences; isolated vertices give one empty
    /// face each.
    pub fn faces(&self) -> Vec<Vec<usize>> {
        faces_of(&self.rotation)
    }

    /// The face walk containing dart `u -> v`.
    pub fn face_of_dart(&self, u: usize, v: usize) -> Vec<usize> {
        walk(&self.rotation, u, v)
    }
}

fn pos(rot: &[usize], u: usize) -> usize {
    rot.iter().position(|&w| w == u).expect("dart not in rotation")
}

fn next_ccw(rot: &[Vec<usize>], v: usize, u: usize) -> usize {
    let r = &rot[v];
    r[(pos(r, u) + 1) % r.len()]
}

fn prev_ccw(rot: &[Vec<usize>], v: usize, u: usize) -> usize {
    let r = &rot[v];
    r[(pos(r, u) + r.len() - 1) % r.len()]
}

fn walk(rot: &[Vec<usize>], u0: usize, v0: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let (mut u, mut v) = (u0, v0);
    loop {
        out.push(u);
        let w = prev_ccw(rot, v, u);
        u = v;
        v = w;
        if (u, v) == (u0, v0) {
            return out;
        }
    }
}

fn faces_of(rot: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut seen: HashSet<(usize, usize)> = HashSet::new();
    let mut faces = Vec::new();
    for (u, r) in rot.iter().enumerate() {
        if r.is_empty() {
            faces.push(Vec::new());
            continue;
        }
        for &v in r {
            if seen.contains(&(u, v)) {
                continue;
            }
            let f = walk(rot, u, v);
            for i in 0..f.len() {
                seen.insert((f[i], f[(i + 1) % f.len()]));
            }
            faces.push(f);
        }
    }
    faces
}

fn min_dart(f: &[usize]) -> (usize, usize) {
    (0..f.len()).map(|i| (f[i], f[(i + 1) % f.len()])).min().unwrap_or((usize::MAX, usize::MAX))
}

fn pick_outer(faces: &[Vec<usize>]) -> Vec<usize> {
    faces
        .iter()
        .min_by(|a, b| b.len().cmp(&a.len()).then(min_dart(a).cmp(&min_dart(b))))
        .cloned()
        .unwrap_or_default()
}

/// Outcome of the planarity test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Planarity {
    Planar(RotationSystem),
    NonPlanar,
}

/// Planarity test by path addition on each biconnected block; block
/// embeddings are glued at cut vertices by concatenating rotations.
pub fn planarity_test_embed(g: &Graph) -> Result<Planarity> {
    if !is_connected(g) {
        return Err(Error::NotConnected);
    }
    let n = g.n();
    if n >= 3 && g.m() > 3 * n - 6 {
        return Ok(Planarity::NonPlanar);
    }
    let mut rotation = vec![Vec::new(); n];
    for block in blocks(g) {
        match embed_block(&block)? {
            None => return Ok(Planarity::NonPlanar),
            Some(rots) => {
                for (v, r) in rots {
                    rotation[v].extend(r);
                }
            }
        }
    }
    match RotationSystem::new(g.clone(), rotation) {
        Ok(rs) => Ok(Planarity::Planar(rs)),
        Err(Error::NotPlanar) => Err(Error::Internal("block embeddings failed Euler's formula".into())),
        Err(e) => Err(e),
    }
}

/// Edge sets of the biconnected components, in DFS discovery order.
fn blocks(g: &Graph) -> Vec<Vec<(usize, usize)>> {
    let n = g.n();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut time = 0;
    let mut out = Vec::new();
    let mut estack: Vec<(usize, usize)> = Vec::new();
    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        disc[root] = time;
        low[root] = time;
        time += 1;
        // (vertex, parent, next neighbour index)
        let mut stack = vec![(root, usize::MAX, 0usize)];
        while let Some(&mut (u, p, ref mut i)) = stack.last_mut() {
            if let Some(&w) = g.neighbors(u).get(*i) {
                *i += 1;
                if w == p {
                    continue;
                }
                if disc[w] == usize::MAX {
                    estack.push((u, w));
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    stack.push((w, u, 0));
                } else if disc[w] < disc[u] {
                    estack.push((u, w));
                    low[u] = low[u].min(disc[w]);
                }
            } else {
                stack.pop();
                if p != usize::MAX {
                    low[p] = low[p].min(low[u]);
                    if low[u] >= disc[p] {
                        let mut block = Vec::new();
                        while let Some(e) = estack.pop() {
                            block.push(e);
                            if e == (p, u) {
                                break;
                            }
                        }
                        out.push(block);
                    }
                }
            }
        }
    }
    out
}

/// Rotation around each vertex of a block, keyed by vertex.
type BlockRotations = Vec<(usize, Vec<usize>)>;

/// Embeds one biconnected block; returns per-vertex rotations or `None`
/// if the block is not planar.
fn embed_block(block: &[(usize, usize)]) -> Result<Option<BlockRotations>> {
    if block.len() == 1 {
        let (u, v) = block[0];
        return Ok(Some(vec![(u, vec![v]), (v, vec![u])]));
    }
    let mut verts: Vec<usize> = block.iter().flat_map(|&(u, v)| [u, v]).collect();
    verts.sort_unstable();
    verts.dedup();
    let local = |v: usize| verts.binary_search(&v).unwrap();
    let b = verts.len();
    let mut adj = vec![Vec::new(); b];
    for &(u, v) in block {
        let (a, c) = (local(u), local(v));
        adj[a].push(c);
        adj[c].push(a);
    }
    for a in &mut adj {
        a.sort_unstable();
    }
    let faces = match dmp(&adj) {
        Some(f) => f,
        None => return Ok(None),
    };
    // At b: after dart a -> b comes b -> c, so next_ccw(b, c) = a.
    let mut succ: Vec<Vec<(usize, usize)>> = vec![Vec::new(); b];
    for f in &faces {
        let l = f.len();
        for i in 0..l {
            let (a, bb, c) = (f[i], f[(i + 1) % l], f[(i + 2) % l]);
            succ[bb].push((c, a));
        }
    }
    let mut out = Vec::with_capacity(b);
    for v in 0..b {
        let mut s = succ[v].clone();
        s.sort_unstable();
        let deg = adj[v].len();
        if s.len() != deg || s.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::Internal(format!("inconsistent face set at block vertex {v}")));
        }
        let next = |x: usize| s[s.binary_search_by_key(&x, |p| p.0).unwrap()].1;
        let start = adj[v][0];
        let mut rot = vec![verts[start]];
        let mut cur = next(start);
        while cur != start {
            rot.push(verts[cur]);
            cur = next(cur);
            if rot.len() > deg {
                return Err(Error::Internal("rotation does not close".into()));
            }
        }
        if rot.len() != deg {
            return Err(Error::Internal(format!("rotation at block vertex {v} splits into several cycles")));
        }
        out.push((verts[v], rot));
    }
    Ok(Some(out))
}

/// Demoucron, Malgrange and Pertuiset on a biconnected graph given by
/// sorted adjacency lists. Returns face cycles.
fn dmp(adj: &[Vec<usize>]) -> Option<Vec<Vec<usize>>> {
    let b = adj.len();
    let m: usize = adj.iter().map(Vec::len).sum::<usize>() / 2;
    let mut in_h = vec![false; b];
    let mut edge_in: HashSet<(usize, usize)> = HashSet::new();
    let key = |u: usize, v: usize| (u.min(v), u.max(v));

    let cycle = initial_cycle(adj);
    for i in 0..cycle.len() {
        in_h[cycle[i]] = true;
        edge_in.insert(key(cycle[i], cycle[(i + 1) % cycle.len()]));
    }
    let mut rev = cycle.clone();
    rev.reverse();
    let mut faces = vec![cycle, rev];

    while edge_in.len() < m {
        // Fragments: (attachments, path between the first two attachments).
        let mut frags: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
        for u in 0..b {
            for &v in &adj[u] {
                if u < v && in_h[u] && in_h[v] && !edge_in.contains(&(u, v)) {
                    frags.push((vec![u, v], vec![u, v]));
                }
            }
        }
        let mut comp = vec![usize::MAX; b];
        for s in 0..b {
            if in_h[s] || comp[s] != usize::MAX {
                continue;
            }
            let mut members = vec![s];
            comp[s] = s;
            let mut i = 0;
            while i < members.len() {
                let u = members[i];
                i += 1;
                for &w in &adj[u] {
                    if !in_h[w] && comp[w] == usize::MAX {
                        comp[w] = s;
                        members.push(w);
                    }
                }
            }
            let mut att: Vec<usize> = members
                .iter()
                .flat_map(|&u| adj[u].iter().copied().filter(|&w| in_h[w]))
                .collect();
            att.sort_unstable();
            att.dedup();
            debug_assert!(att.len() >= 2, "block fragment with fewer than two attachments");
            let path = fragment_path(adj, &comp, s, att[0], att[1]);
            frags.push((att, path));
        }
        let face_sets: Vec<HashSet<usize>> = faces.iter().map(|f| f.iter().copied().collect()).collect();
        let mut choice: Option<(usize, usize)> = None;
        for (fi, (att, _)) in frags.iter().enumerate() {
            let adm: Vec<usize> = (0..faces.len())
                .filter(|&j| att.iter().all(|a| face_sets[j].contains(a)))
                .collect();
            if adm.is_empty() {
                return None;
            }
            if adm.len() == 1 {
                choice = Some((fi, adm[0]));
                break;
            }
            if choice.is_none() {
                choice = Some((fi, adm[0]));
            }
        }
        let (fi, face_idx) = choice.expect("at least one fragment remains");
        let path = &frags[fi].1;
        let face = faces.swap_remove(face_idx);
        let (f1, f2) = split_face(&face, path);
        faces.push(f1);
        faces.push(f2);
        for w in path.windows(2) {
            edge_in.insert(key(w[0], w[1]));
        }
        for &v in path {
            in_h[v] = true;
        }
    }
    Some(faces)
}

fn initial_cycle(adj: &[Vec<usize>]) -> Vec<usize> {
    // Edge (0, v) plus a shortest v-0 path that avoids it.
    let u = 0;
    let v = adj[0][0];
    let b = adj.len();
    let mut parent = vec![usize::MAX; b];
    let mut q = VecDeque::from([v]);
    parent[v] = v;
    while let Some(x) = q.pop_front() {
        for &w in &adj[x] {
            if x == v && w == u {
                continue;
            }
            if parent[w] == usize::MAX {
                parent[w] = x;
                q.push_back(w);
            }
        }
    }
    let mut cyc = vec![u];
    let mut cur = parent[u];
    while cur != v {
        cyc.push(cur);
        cur = parent[cur];
    }
    cyc.push(v);
    cyc
}

fn fragment_path(adj: &[Vec<usize>], comp: &[usize], c: usize, a1: usize, a2: usize) -> Vec<usize> {
    let b = adj.len();
    let mut parent = vec![usize::MAX; b];
    let mut q = VecDeque::new();
    for &w in &adj[a1] {
        if comp[w] == c && parent[w] == usize::MAX {
            parent[w] = a1;
            q.push_back(w);
        }
    }
    while let Some(x) = q.pop_front() {
        if adj[x].contains(&a2) {
            let mut path = vec![a2, x];
            let mut cur = x;
            while parent[cur] != a1 {
                cur = parent[cur];
                path.push(cur);
            }
            path.push(a1);
            path.reverse();
            return path;
        }
        for &w in &adj[x] {
            if comp[w] == c && parent[w] == usize::MAX {
                parent[w] = x;
                q.push_back(w);
            }
        }
    }
    unreachable!("component fragment is connected to both attachments")
}

/// Splits face `f` along `path` (from `path[0]` to its last vertex, both on
/// `f`). Each new face keeps the orientation of `f`.
fn split_face(f: &[usize], path: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let l = f.len();
    let a1 = path[0];
    let a2 = *path.last().unwrap();
    let i = f.iter().position(|&x| x == a1).unwrap();
    let j = f.iter().position(|&x| x == a2).unwrap();
    let inner = &path[1..path.len() - 1];
    let arc = |from: usize, to: usize| {
        let mut out = Vec::new();
        let mut k = from;
        loop {
            out.push(f[k]);
            if k == to {
                return out;
            }
            k = (k + 1) % l;
        }
    };
    let mut f1 = arc(i, j);
    f1.extend(inner.iter().rev());
    let mut f2 = arc(j, i);
    f2.extend(inner.iter());
    (f1, f2)
}

/// A triangulation containing the input, with a canonical ordering whose
/// every prefix also induces a connected subgraph of the input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalOrder {
    pub order: VertexOrder,
    pub supergraph: Graph,
    /// Edges of the input graph, as `(u, v)` with `u < v`, sorted.
    pub host_edges: Vec<(usize, usize)>,
    /// Counter-clockwise rotations of `supergraph`; the outer face contains
    /// the dart `v2 -> v1`.
    pub rotation: Vec<Vec<usize>>,
}

impl CanonicalOrder {
    pub fn host(&self) -> Graph {
        Graph::from_edges(self.supergraph.n(), &self.host_edges).expect("host edges are valid")
    }

    /// Contour `P_k` (from `v1` to `v2`) of the prefix of length `k >= 2`,
    /// read off the restricted embedding.
    pub fn contour(&self, k: usize) -> Vec<usize> {
        let pos = self.order.positions();
        let restricted: Vec<Vec<usize>> = (0..self.supergraph.n())
            .map(|v| {
                if pos[v] < k {
                    self.rotation[v].iter().copied().filter(|&w| pos[w] < k).collect()
                } else {
                    Vec::new()
                }
            })
            .collect();
        let o = self.order.as_slice();
        let f = walk(&restricted, o[1], o[0]);
        // f = [v2, v1, w2, ..., w_{x-1}]; the contour is v1 .. v2.
        let mut c: Vec<usize> = f[1..].to_vec();
        c.push(o[1]);
        c
    }
}

/// Incremental augmentation to a triangulation. Maintains the embedding of `L`: the prefix
/// triangulation plus every input edge not yet inside it.
pub fn augment_to_maximal_with_canonical_order(h: &Graph) -> Result<CanonicalOrder> {
    let n = h.n();
    if n < 3 {
        return Err(Error::TooSmall);
    }
    let rs = match planarity_test_embed(h)? {
        Planarity::Planar(rs) => rs,
        Planarity::NonPlanar => return Err(Error::NotPlanar),
    };
    let mut rot: Vec<Vec<usize>> = rs.rotations().to_vec();
    let (v1, v2) = base_edge(rs.outer_face());
    let mut g = Graph::new(n);
    g.add_edge(v1, v2);
    let mut in_prefix = vec![false; n];
    in_prefix[v1] = true;
    in_prefix[v2] = true;
    let mut contour = vec![v1, v2];
    let mut order = vec![v1, v2];

    for k in 3..=n {
        let x = contour.len();
        let index_of = |v: usize, c: &[usize]| c.iter().position(|&w| w == v).unwrap();
        // Candidates with their contour span (a, b), 0-based.
        let mut cands: Vec<(usize, usize, usize)> = Vec::new();
        let push = |v: usize, rot: &Vec<Vec<usize>>, cands: &mut Vec<(usize, usize, usize)>| {
            if in_prefix[v] || cands.iter().any(|c| c.2 == v) {
                return;
            }
            let idx: Vec<usize> = rot[v].iter().filter(|&&w| in_prefix[w]).map(|&w| index_of(w, &contour)).collect();
            let a = *idx.iter().min().unwrap();
            let b = *idx.iter().max().unwrap();
            cands.push((a, b, v));
        };
        for i in 0..x {
            if i + 1 < x {
                push(next_ccw(&rot, contour[i], contour[i + 1]), &rot, &mut cands);
            }
            if i > 0 {
                push(prev_ccw(&rot, contour[i], contour[i - 1]), &rot, &mut cands);
            }
        }
        if cands.is_empty() {
            return Err(Error::Internal(format!("no candidate vertex at step {k}")));
        }
        cands.sort_unstable_by_key(|&(a, _, v)| (a, v));
        let cand_set: HashSet<usize> = cands.iter().map(|c| c.2).collect();
        let &(a, b, v) = cands
            .iter()
            .find(|&&(a, b, v)| a == b || inside(&rot, &contour, &in_prefix, a, b, v).iter().all(|u| !cand_set.contains(u)))
            .ok_or_else(|| Error::Internal(format!("no candidate of depth 0 at step {k}")))?;

        if k == n {
            close_last(&mut rot, &contour, v, &mut g)?;
            order.push(v);
            break;
        }
        let w = |i: usize| contour[i];
        if a == b {
            if a + 1 < x && next_ccw(&rot, w(a), w(a + 1)) == v {
                insert_before(&mut rot[w(a + 1)], w(a), v);
                insert_after(&mut rot[v], w(a), w(a + 1));
                g.add_edge(v, w(a));
                g.add_edge(v, w(a + 1));
                contour.insert(a + 1, v);
            } else {
                if a == 0 || prev_ccw(&rot, w(a), w(a - 1)) != v {
                    return Err(Error::Internal("candidate edge not at a wedge boundary".into()));
                }
                insert_after(&mut rot[w(a - 1)], w(a), v);
                insert_before(&mut rot[v], w(a), w(a - 1));
                g.add_edge(v, w(a));
                g.add_edge(v, w(a - 1));
                contour.insert(a, v);
            }
        } else {
            attach_fan(&mut rot, &contour, &in_prefix, a, b, v)?;
            for i in a..=b {
                g.add_edge(v, w(i));
            }
            contour.splice(a + 1..b, [v]);
        }
        in_prefix[v] = true;
        order.push(v);
    }

    if g.m() != 3 * n - 6 {
        return Err(Error::Internal(format!("augmented graph has {} edges, expected {}", g.m(), 3 * n - 6)));
    }
    for (u, w) in h.edges() {
        if !g.has_edge(u, w) {
            return Err(Error::Internal(format!("input edge ({u},{w}) lost")));
        }
    }
    Ok(CanonicalOrder {
        order: VertexOrder::new(order)?,
        supergraph: g,
        host_edges: h.edges(),
        rotation: rot,
    })
}

/// Smallest edge on the outer walk, oriented so the walk contains `v2 -> v1`.
fn base_edge(outer: &[usize]) -> (usize, usize) {
    let l = outer.len();
    let darts: Vec<(usize, usize)> = (0..l).map(|i| (outer[i], outer[(i + 1) % l])).collect();
    let (a, b) = darts.iter().map(|&(x, y)| (x.min(y), x.max(y))).min().unwrap();
    if darts.contains(&(b, a)) {
        (a, b)
    } else {
        (b, a)
    }
}

fn insert_after(r: &mut Vec<usize>, anchor: usize, v: usize) {
    let p = pos(r, anchor);
    r.insert(p + 1, v);
}

fn insert_before(r: &mut Vec<usize>, anchor: usize, v: usize) {
    let p = pos(r, anchor);
    r.insert(p, v);
}

/// Entries of `r` strictly between `from` and `to` in ccw order.
fn between(r: &[usize], from: usize, to: usize) -> Vec<usize> {
    let l = r.len();
    let mut out = Vec::new();
    let mut k = (pos(r, from) + 1) % l;
    while r[k] != to {
        out.push(r[k]);
        k = (k + 1) % l;
    }
    out
}

/// Non-prefix vertices inside the reference cycle of `v`.
fn inside(rot: &[Vec<usize>], contour: &[usize], in_prefix: &[bool], a: usize, b: usize, v: usize) -> Vec<usize> {
    let mut seeds = between(&rot[contour[a]], contour[a + 1], v);
    for i in a + 1..b {
        seeds.extend(between(&rot[contour[i]], contour[i + 1], contour[i - 1]));
    }
    seeds.extend(between(&rot[contour[b]], v, contour[b - 1]));
    seeds.extend(between(&rot[v], contour[a], contour[b]));
    let mut seen: HashSet<usize> = HashSet::new();
    let mut stack: Vec<usize> = seeds.into_iter().filter(|&u| u != v && !in_prefix[u]).collect();
    while let Some(u) = stack.pop() {
        if !seen.insert(u) {
            continue;
        }
        for &w in &rot[u] {
            if w != v && !in_prefix[w] && !seen.contains(&w) {
                stack.push(w);
            }
        }
    }
    seen.into_iter().collect()
}

/// Case `a < b`: move the {v}-bridges out of the reference cycle and fan
/// `v` onto `w_a .. w_b`.
fn attach_fan(
    rot: &mut [Vec<usize>],
    contour: &[usize],
    in_prefix: &[bool],
    a: usize,
    b: usize,
    v: usize,
) -> Result<()> {
    let w = |i: usize| contour[i];
    if !between(&rot[w(a)], w(a + 1), v).is_empty() || !between(&rot[w(b)], v, w(b - 1)).is_empty() {
        return Err(Error::Internal("edges inside the reference cycle at its ends".into()));
    }
    let inner = between(&rot[v], w(a), w(b));
    let bridges: Vec<usize> = inner.iter().copied().filter(|&u| !in_prefix[u]).collect();
    let outside = between(&rot[v], w(b), w(a));
    let mut r: Vec<usize> = (a..=b).map(w).collect();
    r.extend(bridges);
    r.extend(outside);
    rot[v] = r;
    for i in a + 1..b {
        let wedge = between(&rot[w(i)], w(i + 1), w(i - 1));
        match wedge.as_slice() {
            [] => insert_after(&mut rot[w(i)], w(i + 1), v),
            [u] if *u == v => {}
            _ => return Err(Error::Internal("contour vertex has edges inside the reference cycle".into())),
        }
    }
    Ok(())
}

/// Last step: `v` sees the whole contour and closes the outer triangle.
fn close_last(rot: &mut [Vec<usize>], contour: &[usize], v: usize, g: &mut Graph) -> Result<()> {
    let x = contour.len();
    let w = |i: usize| contour[i];
    let check = |wedge: Vec<usize>| match wedge.as_slice() {
        [] => Ok(false),
        [u] if *u == v => Ok(true),
        _ => Err(Error::Internal("unexpected edges in the final outer wedge".into())),
    };
    if !check(between(&rot[w(0)], w(1), w(x - 1)))? {
        insert_after(&mut rot[w(0)], w(1), v);
    }
    if !check(between(&rot[w(x - 1)], w(0), w(x - 2)))? {
        insert_before(&mut rot[w(x - 1)], w(x - 2), v);
    }
    for i in 1..x - 1 {
        if !check(between(&rot[w(i)], w(i + 1), w(i - 1)))? {
            insert_after(&mut rot[w(i)], w(i + 1), v);
        }
    }
    rot[v] = contour.to_vec();
    for &c in contour {
        g.add_edge(v, c);
    }
    Ok(())
}

/// Checks every canonical-ordering invariant; `Err` carries the reason.
pub fn canonical_order_validate(co: &CanonicalOrder) -> std::result::Result<(), String> {
    let g = &co.supergraph;
    let n = g.n();
    let o = co.order.as_slice();
    if n < 3 || o.len() != n {
        return Err("need at least 3 vertices and a full order".into());
    }
    if g.m() != 3 * n - 6 {
        return Err(format!("supergraph has {} edges, expected {}", g.m(), 3 * n - 6));
    }
    for &(u, v) in &co.host_edges {
        if !g.has_edge(u, v) {
            return Err(format!("host edge ({u},{v}) missing from supergraph"));
        }
    }
    if !g.has_edge(o[0], o[1]) {
        return Err("v1 v2 is not an edge".into());
    }
    RotationSystem::new(g.clone(), co.rotation.clone()).map_err(|e| format!("rotation system invalid: {e}"))?;
    let outer = walk(&co.rotation, o[1], o[0]);
    if outer != [o[1], o[0], o[n - 1]] {
        return Err(format!("outer face {outer:?} is not the triangle v1 v2 vn"));
    }
    let pos = co.order.positions();
    let mut prev = vec![o[0], o[1]];
    for k in 3..=n {
        let vk = o[k - 1];
        let prefix: Vec<usize> = o[..k].to_vec();
        let gk = g.induced(&prefix);
        if !is_biconnected(&gk) {
            return Err(format!("G_{k} is not 2-connected"));
        }
        // Combinatorial contour: neighbours of v_k on the previous contour
        // must form an interval of at least two vertices.
        let idx: Vec<usize> = prev.iter().enumerate().filter(|(_, &w)| g.has_edge(vk, w)).map(|(i, _)| i).collect();
        let earlier = g.neighbors(vk).iter().filter(|&&w| pos[w] < k - 1).count();
        if idx.len() < 2 || idx.len() != earlier || idx.last().unwrap() - idx[0] + 1 != idx.len() {
            return Err(format!("neighbours of v_{k} do not form a contour interval"));
        }
        let mut expect = prev[..=idx[0]].to_vec();
        expect.push(vk);
        expect.extend_from_slice(&prev[*idx.last().unwrap()..]);
        let face = co.contour(k);
        if face != expect {
            return Err(format!("contour of G_{k} from the embedding {face:?} differs from {expect:?}"));
        }
        if !face.contains(&vk) {
            return Err(format!("v_{k} is not on the outer face of G_{k}"));
        }
        prev = expect;
    }
    let host = co.host();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut c = x;
        while p[c] != r {
            let nx = p[c];
            p[c] = r;
            c = nx;
        }
        r
    }
    let mut comps = 0usize;
    for (k, &v) in o.iter().enumerate() {
        comps += 1;
        for &w in host.neighbors(v) {
            if pos[w] < k {
                let (a, b) = (find(&mut parent, v), find(&mut parent, w));
                if a != b {
                    parent[a] = b;
                    comps -= 1;
                }
            }
        }
        if comps != 1 {
            return Err(format!("host prefix of length {} is disconnected", k + 1));
        }
    }
    Ok(())
}

/// Connected, at least 3 vertices, and no articulation point.
pub fn is_biconnected(g: &Graph) -> bool {
    let n = g.n();
    if n < 3 || !is_connected(g) {
        return false;
    }
    blocks(g).len() == 1
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(n: usize, e: &[(usize, usize)]) -> Graph {
        Graph::from_edges(n, e).unwrap()
    }

    fn complete(n: usize) -> Graph {
        let mut g = Graph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    fn cycle(n: usize) -> Graph {
        graph(n, &(0..n).map(|i| (i, (i + 1) % n)).collect::<Vec<_>>())
    }

    fn embed(g: &Graph) -> RotationSystem {
        match planarity_test_embed(g).unwrap() {
            Planarity::Planar(rs) => rs,
            Planarity::NonPlanar => panic!("expected planar"),
        }
    }

    #[test]
    fn k4_has_four_triangles() {
        let rs = embed(&complete(4));
        let f = rs.faces();
        assert_eq!(f.len(), 4);
        assert!(f.iter().all(|x| x.len() == 3));
    }

    #[test]
    fn nonplanar_examples() {
        assert_eq!(planarity_test_embed(&complete(5)).unwrap(), Planarity::NonPlanar);
        let k33 = graph(6, &[(0, 3), (0, 4), (0, 5), (1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5)]);
        assert_eq!(planarity_test_embed(&k33).unwrap(), Planarity::NonPlanar);
        // Petersen graph
        let mut e = vec![];
        for i in 0..5 {
            e.push((i, (i + 1) % 5));
            e.push((i, i + 5));
            e.push((i + 5, (i + 2) % 5 + 5));
        }
        assert_eq!(planarity_test_embed(&graph(10, &e)).unwrap(), Planarity::NonPlanar);
    }

    #[test]
    fn cycle_has_two_faces() {
        assert_eq!(embed(&cycle(6)).faces().len(), 2);
    }

    #[test]
    fn blocks_glue_at_cut_vertices() {
        // two triangles sharing vertex 2, plus a pendant edge
        let g = graph(6, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4), (4, 5)]);
        let rs = embed(&g);
        assert_eq!(rs.faces().len(), 2 + 7 - 6);
    }

    #[test]
    fn single_vertex_and_edge() {
        assert_eq!(embed(&Graph::new(1)).faces().len(), 1);
        assert_eq!(embed(&graph(2, &[(0, 1)])).faces().len(), 1);
        assert_eq!(planarity_test_embed(&Graph::new(2)), Err(Error::NotConnected));
    }

    #[test]
    fn augment_triangle() {
        let co = augment_to_maximal_with_canonical_order(&cycle(3)).unwrap();
        assert_eq!(co.supergraph.m(), 3);
        canonical_order_validate(&co).unwrap();
    }

    #[test]
    fn augment_path3() {
        let h = graph(3, &[(0, 1), (1, 2)]);
        let co = augment_to_maximal_with_canonical_order(&h).unwrap();
        assert_eq!(co.supergraph, complete(3));
        assert_eq!(co.host_edges, vec![(0, 1), (1, 2)]);
        canonical_order_validate(&co).unwrap();
    }

    #[test]
    fn augment_c4_gives_k4() {
        let co = augment_to_maximal_with_canonical_order(&cycle(4)).unwrap();
        assert_eq!(co.supergraph, complete(4));
        canonical_order_validate(&co).unwrap();
    }

    #[test]
    fn augment_errors() {
        assert_eq!(augment_to_maximal_with_canonical_order(&complete(5)), Err(Error::NotPlanar));
        assert_eq!(augment_to_maximal_with_canonical_order(&Graph::new(3)), Err(Error::NotConnected));
        assert_eq!(augment_to_maximal_with_canonical_order(&complete(2)), Err(Error::TooSmall));
    }

    #[test]
    fn augment_star_and_trees() {
        let star = graph(6, &[(0, 1), (0, 2), (0, 3), (0, 4), (0, 5)]);
        let co = augment_to_maximal_with_canonical_order(&star).unwrap();
        canonical_order_validate(&co).unwrap();
        let t = graph(7, &[(0, 1), (1, 2), (1, 3), (3, 4), (3, 5), (5, 6)]);
        let co = augment_to_maximal_with_canonical_order(&t).unwrap();
        canonical_order_validate(&co).unwrap();
    }

    #[test]
    fn validator_rejects_broken_orders() {
        let h = graph(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]);
        let co = augment_to_maximal_with_canonical_order(&h).unwrap();
        canonical_order_validate(&co).unwrap();
        let o = co.order.as_slice().to_vec();
        // v1 v2 not an edge: swap v2 with some non-neighbour of v1
        if let Some(i) = (2..5).find(|&i| !co.supergraph.has_edge(o[0], o[i])) {
            let mut bad = o.clone();
            bad.swap(1, i);
            let b = CanonicalOrder { order: VertexOrder::new(bad).unwrap(), ..co.clone() };
            assert!(canonical_order_validate(&b).is_err());
        }
        // disconnected host prefix: reverse everything past v2
        let mut bad = o.clone();
        bad[2..].reverse();
        let b = CanonicalOrder { order: VertexOrder::new(bad).unwrap(), ..co.clone() };
        assert!(canonical_order_validate(&b).is_err());
    }

    #[test]
    fn augmentation_is_deterministic() {
        let h = graph(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 3)]);
        let a = augment_to_maximal_with_canonical_order(&h).unwrap();
        let b = augment_to_maximal_with_canonical_order(&h).unwrap();
        assert_eq!(a, b);
        canonical_order_validate(&a).unwrap();
    }
}
