//! Simple undirected graphs, rooted trees and the small exact oracles that
//! operate on them.

use std::collections::VecDeque;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{DegreeTargetMissed, Error, Result, SpanningTreeError};

/// Default vertex limit for the subset DP in [`hamiltonian_path_exists`].
pub const HAMILTONIAN_LIMIT: usize = 24;
/// Vertex limit for [`toughness_bruteforce`].
pub const TOUGHNESS_LIMIT: usize = 12;

/// Undirected simple graph on vertices `0..n` with sorted adjacency lists.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph { adj: vec![Vec::new(); n] }
    }

    /// Builds a graph from an edge list, rejecting loops, duplicates and
    /// out-of-range endpoints.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidInput(format!("edge ({u},{v}) out of range for n = {n}")));
            }
            if u == v {
                return Err(Error::InvalidInput(format!("self-loop at {u}")));
            }
            if g.has_edge(u, v) {
                return Err(Error::InvalidInput(format!("duplicate edge ({u},{v})")));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Inserts `uv`; returns false if it was already present.
    pub fn add_edge(&mut self, u: usize, v: usize) -> bool {
        assert!(u != v, "self-loop");
        match self.adj[u].binary_search(&v) {
            Ok(_) => false,
            Err(i) => {
                self.adj[u].insert(i, v);
                let j = self.adj[v].binary_search(&u).unwrap_err();
                self.adj[v].insert(j, u);
                true
            }
        }
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) -> bool {
        match self.adj[u].binary_search(&v) {
            Err(_) => false,
            Ok(i) => {
                self.adj[u].remove(i);
                let j = self.adj[v].binary_search(&u).unwrap();
                self.adj[v].remove(j);
                true
            }
        }
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.m());
        for (u, nb) in self.adj.iter().enumerate() {
            out.extend(nb.iter().filter(|&&v| v > u).map(|&v| (u, v)));
        }
        out
    }

    /// Subgraph induced by `keep`, relabelled in the order given.
    pub fn induced(&self, keep: &[usize]) -> Graph {
        let mut idx = vec![usize::MAX; self.n()];
        for (i, &v) in keep.iter().enumerate() {
            idx[v] = i;
        }
        let mut g = Graph::new(keep.len());
        for (i, &v) in keep.iter().enumerate() {
            for &w in &self.adj[v] {
                if idx[w] != usize::MAX && idx[w] > i {
                    g.add_edge(i, idx[w]);
                }
            }
        }
        g
    }

    /// Component label per vertex plus the number of components. Vertices with
    /// `removed[v]` set get label `usize::MAX` and are not counted.
    pub fn components_without(&self, removed: &[bool]) -> (Vec<usize>, usize) {
        let n = self.n();
        let mut comp = vec![usize::MAX; n];
        let mut count = 0;
        let mut stack = Vec::new();
        for s in 0..n {
            if removed[s] || comp[s] != usize::MAX {
                continue;
            }
            comp[s] = count;
            stack.push(s);
            while let Some(u) = stack.pop() {
                for &w in &self.adj[u] {
                    if !removed[w] && comp[w] == usize::MAX {
                        comp[w] = count;
                        stack.push(w);
                    }
                }
            }
            count += 1;
        }
        (comp, count)
    }

    pub fn components(&self) -> (Vec<usize>, usize) {
        self.components_without(&vec![false; self.n()])
    }

    pub fn is_tree(&self) -> bool {
        self.n() >= 1 && self.m() + 1 == self.n() && is_connected(self)
    }

    /// BFS order and parent array from `root`; unreachable vertices are absent.
    pub fn bfs(&self, root: usize) -> (Vec<usize>, Vec<Option<usize>>) {
        let mut parent = vec![None; self.n()];
        let mut seen = vec![false; self.n()];
        let mut order = Vec::with_capacity(self.n());
        let mut q = VecDeque::from([root]);
        seen[root] = true;
        while let Some(u) = q.pop_front() {
            order.push(u);
            for &w in &self.adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = Some(u);
                    q.push_back(w);
                }
            }
        }
        (order, parent)
    }
}

pub fn is_connected(g: &Graph) -> bool {
    g.components().1 <= 1
}

/// Tree with a designated root and an ordered child list per vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootedTree {
    graph: Graph,
    root: usize,
    children: Vec<Vec<usize>>,
    parent: Vec<Option<usize>>,
}

impl RootedTree {
    /// Roots a tree graph; children are listed in ascending id order.
    pub fn from_tree_graph(graph: Graph, root: usize) -> Result<Self> {
        if root >= graph.n() || !graph.is_tree() {
            return Err(Error::NotATree);
        }
        let (order, parent) = graph.bfs(root);
        let mut children = vec![Vec::new(); graph.n()];
        for &v in &order[1..] {
            children[parent[v].unwrap()].push(v);
        }
        for c in &mut children {
            c.sort_unstable();
        }
        Ok(RootedTree { graph, root, children, parent })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn children(&self, v: usize) -> &[usize] {
        &self.children[v]
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    pub fn max_degree(&self) -> usize {
        self.graph.max_degree()
    }

    /// Reorders the children of `v`; `order` must be a permutation of them.
    pub fn set_children(&mut self, v: usize, order: Vec<usize>) {
        let mut a = order.clone();
        let mut b = self.children[v].clone();
        a.sort_unstable();
        b.sort_unstable();
        assert_eq!(a, b, "set_children: not a permutation of the children");
        self.children[v] = order;
    }

    /// Preorder (parents before children) following the child order.
    pub fn preorder(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.n());
        let mut stack = vec![self.root];
        while let Some(u) = stack.pop() {
            out.push(u);
            stack.extend(self.children[u].iter().rev());
        }
        out
    }

    /// Number of vertices in the subtree of each vertex.
    pub fn subtree_sizes(&self) -> Vec<usize> {
        let mut size = vec![1; self.n()];
        for &v in self.preorder().iter().rev() {
            if let Some(p) = self.parent[v] {
                size[p] += size[v];
            }
        }
        size
    }
}

/// A permutation of `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexOrder {
    order: Vec<usize>,
}

impl VertexOrder {
    pub fn new(order: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; order.len()];
        for &v in &order {
            if v >= order.len() || seen[v] {
                return Err(Error::InvalidInput("vertex order is not a permutation".into()));
            }
            seen[v] = true;
        }
        Ok(VertexOrder { order })
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// Inverse permutation: `positions()[v]` is the index of `v`.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.order.len()];
        for (i, &v) in self.order.iter().enumerate() {
            pos[v] = i;
        }
        pos
    }
}

/// BFS order of the tree from its root; every prefix induces a subtree.
pub fn connected_prefix_order(t: &RootedTree) -> VertexOrder {
    let mut order = Vec::with_capacity(t.n());
    let mut q = VecDeque::from([t.root()]);
    while let Some(u) = q.pop_front() {
        order.push(u);
        q.extend(t.children(u).iter().copied());
    }
    VertexOrder { order }
}

/// Subset DP; see [`hamiltonian_path`].
pub fn hamiltonian_path_exists(g: &Graph) -> Result<bool> {
    hamiltonian_path(g, HAMILTONIAN_LIMIT).map(|p| p.is_some())
}

/// Finds a Hamiltonian path by DP over vertex subsets. `reach[mask]` is the
/// bitset of possible end vertices of a path covering exactly `mask`.
pub fn hamiltonian_path(g: &Graph, limit: usize) -> Result<Option<Vec<usize>>> {
    let n = g.n();
    if n > limit || n > 31 {
        return Err(Error::InstanceTooLarge { n, limit: limit.min(31) });
    }
    if n == 0 {
        return Ok(Some(Vec::new()));
    }
    let nbr: Vec<u32> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u32, |acc, &w| acc | (1 << w)))
        .collect();
    let full = (1usize << n) - 1;
    let mut reach = vec![0u32; full + 1];
    for v in 0..n {
        reach[1 << v] = 1 << v;
    }
    for mask in 1..=full {
        let ends = reach[mask];
        if ends == 0 {
            continue;
        }
        // Union of neighbourhoods of the current ends, outside the mask.
        let mut ext = 0u32;
        let mut e = ends;
        while e != 0 {
            let v = e.trailing_zeros() as usize;
            e &= e - 1;
            ext |= nbr[v];
        }
        ext &= !(mask as u32);
        while ext != 0 {
            let w = ext.trailing_zeros() as usize;
            ext &= ext - 1;
            if nbr[w] & ends != 0 {
                reach[mask | (1 << w)] |= 1 << w;
            }
        }
    }
    if reach[full] == 0 {
        return Ok(None);
    }
    let mut path = Vec::with_capacity(n);
    let mut mask = full;
    let mut v = reach[full].trailing_zeros() as usize;
    loop {
        path.push(v);
        let rest = mask & !(1 << v);
        if rest == 0 {
            break;
        }
        let cand = reach[rest] & nbr[v];
        v = cand.trailing_zeros() as usize;
        mask = rest;
    }
    Ok(Some(path))
}

/// Tree edge `(u, v)` with `u` on the root side whose removal leaves parts of
/// size at most `ceil((d-1) n / d)`. Minimises the larger part, then `(u, v)`.
pub fn edge_separator(t: &RootedTree, d: usize) -> Result<(usize, usize)> {
    let n = t.n();
    if n < 2 {
        return Err(Error::InvalidInput("edge separator needs at least 2 vertices".into()));
    }
    if t.max_degree() > d {
        return Err(Error::InvalidInput(format!(
            "tree has degree {} above the declared bound {d}",
            t.max_degree()
        )));
    }
    let size = t.subtree_sizes();
    let mut best: Option<(usize, (usize, usize))> = None;
    for v in 0..n {
        if let Some(p) = t.parent(v) {
            let big = size[v].max(n - size[v]);
            let key = (big, (p, v));
            if best.is_none_or(|b| key < b) {
                best = Some(key);
            }
        }
    }
    let (big, e) = best.unwrap();
    if n > 2 && big > ((d - 1) * n).div_ceil(d) {
        return Err(Error::Internal(format!("separator part {big} exceeds bound for n = {n}, d = {d}")));
    }
    Ok(e)
}

/// Spanning tree with maximum degree at most `d_target`, found by local
/// improvement from a DFS tree. A swap adds a non-tree edge `xy` whose ends
/// both have degree at most `k - 2` and drops a tree edge at a degree-`k`
/// vertex on the cycle it closes.
pub fn degree_bounded_spanning_tree(
    g: &Graph,
    d_target: usize,
) -> std::result::Result<RootedTree, SpanningTreeError> {
    let n = g.n();
    if n == 0 || !is_connected(g) {
        return Err(Error::NotConnected.into());
    }
    let mut tree = dfs_tree(g);
    loop {
        let k = tree.max_degree();
        if k <= d_target || !improve_once(g, &mut tree, k) {
            break;
        }
    }
    let achieved = tree.max_degree();
    let rooted = RootedTree::from_tree_graph(tree, 0).map_err(SpanningTreeError::Graph)?;
    if achieved > d_target {
        return Err(DegreeTargetMissed { achieved, target: d_target, tree: rooted }.into());
    }
    Ok(rooted)
}

fn dfs_tree(g: &Graph) -> Graph {
    let mut t = Graph::new(g.n());
    let mut seen = vec![false; g.n()];
    let mut stack = vec![(0usize, 0usize)];
    seen[0] = true;
    while let Some(&mut (u, ref mut i)) = stack.last_mut() {
        if let Some(&w) = g.neighbors(u).get(*i) {
            *i += 1;
            if !seen[w] {
                seen[w] = true;
                t.add_edge(u, w);
                stack.push((w, 0));
            }
        } else {
            stack.pop();
        }
    }
    t
}

fn tree_path(t: &Graph, x: usize, y: usize) -> Vec<usize> {
    let (_, parent) = t.bfs(x);
    let mut path = vec![y];
    let mut cur = y;
    while let Some(p) = parent[cur] {
        path.push(p);
        cur = p;
    }
    path.reverse();
    path
}

fn improve_once(g: &Graph, t: &mut Graph, k: usize) -> bool {
    if k < 3 {
        return false;
    }
    for (x, y) in g.edges() {
        if t.has_edge(x, y) || t.degree(x) + 2 > k || t.degree(y) + 2 > k {
            continue;
        }
        let path = tree_path(t, x, y);
        if let Some(i) = (1..path.len() - 1).find(|&i| t.degree(path[i]) == k) {
            t.remove_edge(path[i], path[i + 1]);
            t.add_edge(x, y);
            return true;
        }
    }
    false
}

/// Toughness of a small graph, or the sentinel for graphs that no vertex
/// subset splits (complete graphs).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Toughness {
    Finite(BigRational),
    Unsplittable,
}

/// Minimum of `|S| / c(G - S)` over all `S` leaving at least two components.
pub fn toughness_bruteforce(g: &Graph) -> Result<Toughness> {
    let n = g.n();
    if n > TOUGHNESS_LIMIT {
        return Err(Error::InstanceTooLarge { n, limit: TOUGHNESS_LIMIT });
    }
    let mut best: Option<BigRational> = None;
    let mut removed = vec![false; n];
    for mask in 0u32..(1 << n) {
        for (v, r) in removed.iter_mut().enumerate() {
            *r = mask >> v & 1 == 1;
        }
        let (_, c) = g.components_without(&removed);
        if c >= 2 {
            let q = BigRational::new(BigInt::from(mask.count_ones()), BigInt::from(c));
            if best.as_ref().is_none_or(|b| q < *b) {
                best = Some(q);
            }
        }
    }
    Ok(best.map_or(Toughness::Unsplittable, Toughness::Finite))
}
