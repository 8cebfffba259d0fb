//! Simple undirected graphs and the structural queries the rest of the crate
//! builds on: cycles of a given parity, components and covers.
//!
//! Vertices are dense indices `0..n`. Edges are stored with the smaller
//! endpoint first, so the derived ordering on [`Edge`] is the canonical edge
//! order used for every tie-break in the crate.

use alloc::collections::{BTreeSet, VecDeque};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::{Error, Result};

pub type Vertex = usize;
pub type EdgeSet = BTreeSet<Edge>;
pub type VertexSet = BTreeSet<Vertex>;

/// Unordered vertex pair, smaller endpoint first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    u: Vertex,
    v: Vertex,
}

impl Edge {
    /// Canonical edge between `a` and `b`. The endpoints must differ.
    pub fn new(a: Vertex, b: Vertex) -> Self {
        debug_assert_ne!(a, b, "self-loop");
        if a < b {
            Edge { u: a, v: b }
        } else {
            Edge { u: b, v: a }
        }
    }

    pub fn u(&self) -> Vertex {
        self.u
    }

    pub fn v(&self) -> Vertex {
        self.v
    }

    pub fn endpoints(&self) -> (Vertex, Vertex) {
        (self.u, self.v)
    }

    pub fn contains(&self, w: Vertex) -> bool {
        self.u == w || self.v == w
    }

    /// The endpoint opposite to `w`, if `w` is an endpoint.
    pub fn other(&self, w: Vertex) -> Option<Vertex> {
        if w == self.u {
            Some(self.v)
        } else if w == self.v {
            Some(self.u)
        } else {
            None
        }
    }

    pub fn shares_vertex(&self, other: &Edge) -> bool {
        self.contains(other.u) || self.contains(other.v)
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.u, self.v)
    }
}

/// Simple undirected graph without isolated vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    vertex_count: usize,
    edges: Vec<Edge>,
    adjacency: Vec<Vec<Vertex>>,
}

impl Graph {
    /// Builds a graph, rejecting self-loops, parallel edges, out-of-range
    /// endpoints and isolated vertices.
    pub fn new<I>(vertex_count: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        if vertex_count == 0 {
            return Err(Error::EmptyGraph);
        }
        let mut set = EdgeSet::new();
        for (a, b) in edges {
            for vertex in [a, b] {
                if vertex >= vertex_count {
                    return Err(Error::VertexOutOfRange { vertex, vertex_count });
                }
            }
            if a == b {
                return Err(Error::SelfLoop(a));
            }
            let edge = Edge::new(a, b);
            if !set.insert(edge) {
                return Err(Error::DuplicateEdge(edge));
            }
        }
        let mut adjacency = vec![Vec::new(); vertex_count];
        for e in &set {
            adjacency[e.u].push(e.v);
            adjacency[e.v].push(e.u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        if let Some(v) = adjacency.iter().position(Vec::is_empty) {
            return Err(Error::IsolatedVertex(v));
        }
        Ok(Graph {
            vertex_count,
            edges: set.into_iter().collect(),
            adjacency,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> core::ops::Range<Vertex> {
        0..self.vertex_count
    }

    /// Edges in canonical order.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_set(&self) -> EdgeSet {
        self.edges.iter().copied().collect()
    }

    /// Neighbors of `v` in increasing order.
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, e: &Edge) -> bool {
        e.v < self.vertex_count && self.edges.binary_search(e).is_ok()
    }

    /// Fails with [`Error::NotAnEdge`] on the first edge of `edges` missing from the graph.
    pub fn check_edges<'a, I>(&self, edges: I) -> Result<()>
    where
        I: IntoIterator<Item = &'a Edge>,
    {
        match edges.into_iter().find(|e| !self.has_edge(e)) {
            Some(e) => Err(Error::NotAnEdge(*e)),
            None => Ok(()),
        }
    }

    /// Edges with both endpoints in `vertices`.
    pub fn induced_edges(&self, vertices: &VertexSet) -> EdgeSet {
        self.edges
            .iter()
            .filter(|e| vertices.contains(&e.u) && vertices.contains(&e.v))
            .copied()
            .collect()
    }
}

/// Vertices touched by `edges`.
pub fn vertices_of<'a, I>(edges: I) -> VertexSet
where
    I: IntoIterator<Item = &'a Edge>,
{
    edges.into_iter().flat_map(|e| [e.u, e.v]).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

/// Simple cycle `v_1, ..., v_n` closing back to `v_1`.
///
/// Stored rotated so that the smallest vertex comes first, followed by its
/// smaller cycle neighbor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cycle {
    vertices: Vec<Vertex>,
}

impl Cycle {
    /// Validates `sequence` against `edges` (consecutive pairs and the closing
    /// pair must be edges, vertices distinct, length at least 3).
    pub fn from_sequence(sequence: Vec<Vertex>, edges: &EdgeSet) -> Option<Self> {
        let n = sequence.len();
        if n < 3 {
            return None;
        }
        let distinct: VertexSet = sequence.iter().copied().collect();
        if distinct.len() != n {
            return None;
        }
        let closed = (0..n).all(|i| {
            let (a, b) = (sequence[i], sequence[(i + 1) % n]);
            a != b && edges.contains(&Edge::new(a, b))
        });
        closed.then(|| Cycle::normalized(sequence))
    }

    fn normalized(mut seq: Vec<Vertex>) -> Self {
        let n = seq.len();
        let start = (0..n).min_by_key(|&i| seq[i]).unwrap_or(0);
        seq.rotate_left(start);
        if seq[n - 1] < seq[1] {
            seq[1..].reverse();
        }
        Cycle { vertices: seq }
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn parity(&self) -> Parity {
        if self.len() % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.vertices.contains(&v)
    }

    /// Edges in traversal order: `(v_1,v_2), ..., (v_n,v_1)`.
    pub fn edges(&self) -> Vec<Edge> {
        let n = self.len();
        (0..n)
            .map(|i| Edge::new(self.vertices[i], self.vertices[(i + 1) % n]))
            .collect()
    }

    /// The cycle's vertices starting at `v` (which must lie on the cycle).
    pub fn rotated_to(&self, v: Vertex) -> Vec<Vertex> {
        let mut seq = self.vertices.clone();
        if let Some(i) = seq.iter().position(|&w| w == v) {
            seq.rotate_left(i);
        }
        seq
    }
}

/// Adjacency lists of the subgraph spanned by an edge subset. Vertices not
/// touched by the subset simply have no neighbors.
#[derive(Clone, Debug)]
pub(crate) struct Adjacency {
    lists: Vec<Vec<Vertex>>,
}

impl Adjacency {
    pub(crate) fn new<'a, I>(vertex_count: usize, edges: I) -> Self
    where
        I: IntoIterator<Item = &'a Edge>,
    {
        let mut lists = vec![Vec::new(); vertex_count];
        for e in edges {
            lists[e.u].push(e.v);
            lists[e.v].push(e.u);
        }
        for list in &mut lists {
            list.sort_unstable();
        }
        Adjacency { lists }
    }

    pub(crate) fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.lists[v]
    }

    pub(crate) fn degree(&self, v: Vertex) -> usize {
        self.lists[v].len()
    }

    fn vertex_count(&self) -> usize {
        self.lists.len()
    }

    /// Components with at least one edge, each sorted, ordered by smallest vertex.
    pub(crate) fn components(&self) -> Vec<Vec<Vertex>> {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] || self.degree(s) == 0 {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for &w in self.neighbors(u) {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// BFS tree rooted at `root`: (parent, depth) with `usize::MAX` for unreached.
    fn bfs_tree(&self, root: Vertex) -> (Vec<Vertex>, Vec<usize>) {
        let n = self.vertex_count();
        let mut parent = vec![usize::MAX; n];
        let mut depth = vec![usize::MAX; n];
        depth[root] = 0;
        parent[root] = root;
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for &w in self.neighbors(u) {
                if depth[w] == usize::MAX {
                    depth[w] = depth[u] + 1;
                    parent[w] = u;
                    queue.push_back(w);
                }
            }
        }
        (parent, depth)
    }

    /// Odd cycle in the component of `root`, from the first same-depth edge of
    /// a BFS tree. Absent iff the component is bipartite.
    pub(crate) fn odd_cycle_from(&self, root: Vertex) -> Option<Vec<Vertex>> {
        let (parent, depth) = self.bfs_tree(root);
        for u in 0..self.vertex_count() {
            if depth[u] == usize::MAX {
                continue;
            }
            for &w in self.neighbors(u) {
                if w > u && depth[w] == depth[u] {
                    return Some(tree_cycle(&parent, &depth, u, w));
                }
            }
        }
        None
    }

    /// Biconnected components as edge lists, each sorted, ordered by first edge.
    fn blocks(&self) -> Vec<Vec<Edge>> {
        struct State<'a> {
            adj: &'a Adjacency,
            disc: Vec<usize>,
            low: Vec<usize>,
            timer: usize,
            stack: Vec<Edge>,
            blocks: Vec<Vec<Edge>>,
        }

        fn visit(st: &mut State<'_>, u: Vertex, parent: Vertex) {
            st.disc[u] = st.timer;
            st.low[u] = st.timer;
            st.timer += 1;
            for &w in st.adj.neighbors(u) {
                if st.disc[w] == usize::MAX {
                    st.stack.push(Edge::new(u, w));
                    visit(st, w, u);
                    st.low[u] = st.low[u].min(st.low[w]);
                    if st.low[w] >= st.disc[u] {
                        let tree_edge = Edge::new(u, w);
                        let mut block = Vec::new();
                        while let Some(e) = st.stack.pop() {
                            block.push(e);
                            if e == tree_edge {
                                break;
                            }
                        }
                        block.sort_unstable();
                        st.blocks.push(block);
                    }
                } else if w != parent && st.disc[w] < st.disc[u] {
                    st.stack.push(Edge::new(u, w));
                    st.low[u] = st.low[u].min(st.disc[w]);
                }
            }
        }

        let n = self.vertex_count();
        let mut st = State {
            adj: self,
            disc: vec![usize::MAX; n],
            low: vec![0; n],
            timer: 0,
            stack: Vec::new(),
            blocks: Vec::new(),
        };
        for s in 0..n {
            if st.disc[s] == usize::MAX && self.degree(s) > 0 {
                visit(&mut st, s, usize::MAX);
            }
        }
        let mut blocks = st.blocks;
        blocks.sort();
        blocks
    }
}

/// Cycle closed by the non-tree edge `(x, y)`: `x .. lca .. y`.
fn tree_cycle(parent: &[Vertex], depth: &[usize], x: Vertex, y: Vertex) -> Vec<Vertex> {
    let (mut a, mut b) = (x, y);
    let mut left = Vec::new();
    let mut right = Vec::new();
    while depth[a] > depth[b] {
        left.push(a);
        a = parent[a];
    }
    while depth[b] > depth[a] {
        right.push(b);
        b = parent[b];
    }
    while a != b {
        left.push(a);
        right.push(b);
        a = parent[a];
        b = parent[b];
    }
    left.push(a);
    left.extend(right.into_iter().rev());
    left
}

/// Even cycle inside one biconnected block, if the block has one.
///
/// A block that is a single edge or an odd cycle has none. Any other block
/// with more edges than vertices contains two vertices joined by three
/// internally disjoint paths, two of which have equal parity.
fn even_cycle_in_block(vertex_count: usize, block: &[Edge]) -> Option<Vec<Vertex>> {
    if block.len() < 3 {
        return None;
    }
    let adj = Adjacency::new(vertex_count, block);
    let members = vertices_of(block);
    let root = *members.first()?;

    if block.len() == members.len() {
        let cycle = trace_simple_cycle(&adj, root);
        return (cycle.len() % 2 == 0).then_some(cycle);
    }

    // Any cycle of the block, then an ear hanging off it.
    let cycle = adj.odd_cycle_from(root).or_else(|| {
        let (parent, depth) = adj.bfs_tree(root);
        block
            .iter()
            .find(|e| parent[e.u] != e.v && parent[e.v] != e.u)
            .map(|e| tree_cycle(&parent, &depth, e.u, e.v))
    })?;
    let m = cycle.len();
    let mut position = vec![usize::MAX; vertex_count];
    for (i, &v) in cycle.iter().enumerate() {
        position[v] = i;
    }
    let on_cycle = |v: Vertex| position[v] != usize::MAX;
    let cycle_edges: EdgeSet = (0..m).map(|i| Edge::new(cycle[i], cycle[(i + 1) % m])).collect();

    let leaving = block
        .iter()
        .find(|e| !cycle_edges.contains(e) && (on_cycle(e.u) || on_cycle(e.v)))?;
    let (x, y) = if on_cycle(leaving.u) {
        (leaving.u, leaving.v)
    } else {
        (leaving.v, leaving.u)
    };

    let ear = if on_cycle(y) {
        vec![x, y]
    } else {
        let mut parent = vec![usize::MAX; vertex_count];
        parent[y] = y;
        let mut queue = VecDeque::from([y]);
        let mut end = None;
        'search: while let Some(u) = queue.pop_front() {
            for &w in adj.neighbors(u) {
                if w == x || parent[w] != usize::MAX {
                    continue;
                }
                parent[w] = u;
                if on_cycle(w) {
                    end = Some(w);
                    break 'search;
                }
                queue.push_back(w);
            }
        }
        let mut back = vec![end?];
        while *back.last()? != y {
            let last = *back.last()?;
            back.push(parent[last]);
        }
        back.push(x);
        back.reverse();
        back
    };
    let z = *ear.last()?;

    let (i, j) = (position[x], position[z]);
    let forward: Vec<Vertex> = (0..=(j + m - i) % m).map(|k| cycle[(i + k) % m]).collect();
    let backward: Vec<Vertex> = (0..=(i + m - j) % m).map(|k| cycle[(i + m - k) % m]).collect();

    let parity = |p: &Vec<Vertex>| (p.len() - 1) % 2;
    let (a, b) = if parity(&forward) == parity(&ear) {
        (forward, ear)
    } else if parity(&backward) == parity(&ear) {
        (backward, ear)
    } else {
        (forward, backward)
    };
    let mut out = a;
    out.extend(b[1..b.len() - 1].iter().rev());
    Some(out)
}

/// Walks a component in which every vertex has degree 2.
fn trace_simple_cycle(adj: &Adjacency, start: Vertex) -> Vec<Vertex> {
    let mut seq = vec![start];
    let mut prev = start;
    let mut cur = adj.neighbors(start)[0];
    while cur != start {
        seq.push(cur);
        let next = adj
            .neighbors(cur)
            .iter()
            .copied()
            .find(|&w| w != prev)
            .unwrap_or(start);
        prev = cur;
        cur = next;
    }
    seq
}

/// An even cycle of the subgraph spanned by `restrict`, or `None` if it has none.
pub fn find_even_cycle(g: &Graph, restrict: &EdgeSet) -> Option<Cycle> {
    let adj = Adjacency::new(g.vertex_count(), restrict);
    adj.blocks()
        .iter()
        .find_map(|block| even_cycle_in_block(g.vertex_count(), block))
        .map(Cycle::normalized)
}

/// An odd cycle of the subgraph spanned by `restrict` whose component is more
/// than the cycle itself, together with a cycle vertex of degree at least 3.
///
/// The returned vertex has a neighbor off the cycle whenever one exists.
pub fn find_non_isolated_odd_cycle(g: &Graph, restrict: &EdgeSet) -> Option<(Cycle, Vertex)> {
    let adj = Adjacency::new(g.vertex_count(), restrict);
    for comp in adj.components() {
        if comp.iter().all(|&v| adj.degree(v) == 2) {
            continue;
        }
        let Some(seq) = adj.odd_cycle_from(comp[0]) else {
            continue;
        };
        let cycle = Cycle::normalized(seq);
        let branch = cycle
            .vertices()
            .iter()
            .copied()
            .filter(|&v| adj.neighbors(v).iter().any(|&w| !cycle.contains(w)))
            .min()
            .or_else(|| {
                cycle
                    .vertices()
                    .iter()
                    .copied()
                    .filter(|&v| adj.degree(v) >= 3)
                    .min()
            })?;
        return Some((cycle, branch));
    }
    None
}

/// Every vertex of `g` is an endpoint of some edge in `f`.
pub fn is_edge_cover(g: &Graph, f: &EdgeSet) -> bool {
    let covered = vertices_of(f);
    g.vertices().all(|v| covered.contains(&v))
}

/// Every edge of `restrict` has an endpoint in `s`.
pub fn is_vertex_cover(restrict: &EdgeSet, s: &VertexSet) -> bool {
    restrict.iter().all(|e| s.contains(&e.u) || s.contains(&e.v))
}

/// Pairwise non-incident edges.
pub fn is_matching(edges: &EdgeSet) -> bool {
    let touched = vertices_of(edges);
    touched.len() == 2 * edges.len()
}
