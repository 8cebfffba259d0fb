//! Matchings, edge covers and fractional matchings.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::graph::{Edge, EdgeSet, Graph, Vertex, VertexSet};
use crate::{rational, Error, Rational, Result};

const NONE: usize = usize::MAX;

/// Maximum-cardinality matching by Edmonds' blossom algorithm.
///
/// Augmenting paths are grown from exposed roots in increasing vertex order;
/// odd cycles met during the search are contracted onto their base.
pub fn maximum_matching(g: &Graph) -> EdgeSet {
    let mate = Blossom::new(g).run();
    (0..g.vertex_count())
        .filter(|&v| mate[v] != NONE && v < mate[v])
        .map(|v| Edge::new(v, mate[v]))
        .collect()
}

pub fn has_perfect_matching(g: &Graph) -> bool {
    2 * maximum_matching(g).len() == g.vertex_count()
}

struct Blossom<'g> {
    g: &'g Graph,
    mate: Vec<usize>,
    parent: Vec<usize>,
    base: Vec<usize>,
    even: Vec<bool>,
    in_blossom: Vec<bool>,
    queue: VecDeque<usize>,
}

impl<'g> Blossom<'g> {
    fn new(g: &'g Graph) -> Self {
        let n = g.vertex_count();
        Blossom {
            g,
            mate: vec![NONE; n],
            parent: vec![NONE; n],
            base: (0..n).collect(),
            even: vec![false; n],
            in_blossom: vec![false; n],
            queue: VecDeque::new(),
        }
    }

    fn run(mut self) -> Vec<usize> {
        for root in 0..self.g.vertex_count() {
            if self.mate[root] != NONE {
                continue;
            }
            if let Some(end) = self.augmenting_path(root) {
                self.augment(end);
            }
        }
        self.mate
    }

    fn augment(&mut self, mut v: usize) {
        while v != NONE {
            let pv = self.parent[v];
            let next = self.mate[pv];
            self.mate[v] = pv;
            self.mate[pv] = v;
            v = next;
        }
    }

    fn lowest_common_base(&self, mut a: usize, mut b: usize) -> usize {
        let mut seen = vec![false; self.g.vertex_count()];
        loop {
            a = self.base[a];
            seen[a] = true;
            if self.mate[a] == NONE {
                break;
            }
            a = self.parent[self.mate[a]];
        }
        loop {
            b = self.base[b];
            if seen[b] {
                return b;
            }
            b = self.parent[self.mate[b]];
        }
    }

    fn mark_path(&mut self, mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            self.in_blossom[self.base[v]] = true;
            self.in_blossom[self.base[self.mate[v]]] = true;
            self.parent[v] = child;
            child = self.mate[v];
            v = self.parent[self.mate[v]];
        }
    }

    fn augmenting_path(&mut self, root: usize) -> Option<usize> {
        let n = self.g.vertex_count();
        self.even.iter_mut().for_each(|x| *x = false);
        self.parent.iter_mut().for_each(|x| *x = NONE);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i;
        }
        self.queue.clear();
        self.even[root] = true;
        self.queue.push_back(root);

        while let Some(v) = self.queue.pop_front() {
            for i in 0..self.g.neighbors(v).len() {
                let to = self.g.neighbors(v)[i];
                if self.base[v] == self.base[to] || self.mate[v] == to {
                    continue;
                }
                let to_is_even = to == root || (self.mate[to] != NONE && self.parent[self.mate[to]] != NONE);
                if to_is_even {
                    let cur = self.lowest_common_base(v, to);
                    self.in_blossom.iter_mut().for_each(|x| *x = false);
                    self.mark_path(v, cur, to);
                    self.mark_path(to, cur, v);
                    for u in 0..n {
                        if self.in_blossom[self.base[u]] {
                            self.base[u] = cur;
                            if !self.even[u] {
                                self.even[u] = true;
                                self.queue.push_back(u);
                            }
                        }
                    }
                } else if self.parent[to] == NONE {
                    self.parent[to] = v;
                    if self.mate[to] == NONE {
                        return Some(to);
                    }
                    let m = self.mate[to];
                    self.even[m] = true;
                    self.queue.push_back(m);
                }
            }
        }
        None
    }
}

/// Minimum edge cover: a maximum matching plus, for every exposed vertex, its
/// lowest incident edge. Its size is `|V| - |M|`.
pub fn minimum_edge_cover(g: &Graph) -> EdgeSet {
    let mut cover = maximum_matching(g);
    let matched = crate::graph::vertices_of(&cover);
    for v in g.vertices() {
        if !matched.contains(&v) {
            cover.insert(Edge::new(v, g.neighbors(v)[0]));
        }
    }
    cover
}

/// Size of a minimum edge cover.
pub fn edge_cover_number(g: &Graph) -> usize {
    g.vertex_count() - maximum_matching(g).len()
}

/// Minimum vertex cover of the subgraph spanned by `restrict`, by exhaustive
/// search in order of size (lexicographically least among the smallest).
pub fn minimum_vertex_cover_exact(g: &Graph, restrict: &EdgeSet, bound: usize) -> Result<VertexSet> {
    if g.vertex_count() > bound {
        return Err(Error::SearchBoundExceeded {
            vertices: g.vertex_count(),
            bound,
        });
    }
    g.check_edges(restrict)?;
    let touched: Vec<Vertex> = crate::graph::vertices_of(restrict).into_iter().collect();
    for size in 0..=touched.len() {
        let mut found = None;
        for_each_combination(touched.len(), size, &mut |pick| {
            let set: VertexSet = pick.iter().map(|&i| touched[i]).collect();
            if crate::graph::is_vertex_cover(restrict, &set) {
                found = Some(set);
                true
            } else {
                false
            }
        });
        if let Some(set) = found {
            return Ok(set);
        }
    }
    Ok(touched.into_iter().collect())
}

/// Calls `visit` on each `k`-subset of `0..n` in lexicographic order until it
/// returns `true`. Returns whether it stopped early.
pub(crate) fn for_each_combination(n: usize, k: usize, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
    fn go(
        start: usize,
        n: usize,
        k: usize,
        pick: &mut Vec<usize>,
        visit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        if pick.len() == k {
            return visit(pick);
        }
        let needed = k - pick.len();
        for i in start..=(n - needed) {
            pick.push(i);
            if go(i + 1, n, k, pick, visit) {
                return true;
            }
            pick.pop();
        }
        false
    }
    if k > n {
        return false;
    }
    go(0, n, k, &mut Vec::with_capacity(k), visit)
}

/// Edge weighting `f: E -> [0, 1]` with every vertex sum at most 1.
///
/// Only strictly positive weights are stored, so the stored keys are exactly
/// the support `E(f)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FractionalMatching<'g> {
    graph: &'g Graph,
    weights: BTreeMap<Edge, Rational>,
}

impl<'g> FractionalMatching<'g> {
    pub fn new<I>(graph: &'g Graph, weights: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Edge, Rational)>,
    {
        let mut map = BTreeMap::new();
        for (e, w) in weights {
            if !graph.has_edge(&e) {
                return Err(Error::NotAnEdge(e));
            }
            if w < Rational::zero() || w > Rational::one() {
                return Err(Error::WeightOutOfRange(e));
            }
            if map.contains_key(&e) {
                return Err(Error::DuplicateEdge(e));
            }
            if !w.is_zero() {
                map.insert(e, w);
            }
        }
        let f = FractionalMatching { graph, weights: map };
        if let Some(v) = graph.vertices().find(|&v| f.vertex_sum(v) > Rational::one()) {
            return Err(Error::OverloadedVertex(v));
        }
        Ok(f)
    }

    /// Skips validation; callers guarantee the invariants.
    pub(crate) fn from_parts(graph: &'g Graph, mut weights: BTreeMap<Edge, Rational>) -> Self {
        weights.retain(|_, w| !w.is_zero());
        FractionalMatching { graph, weights }
    }

    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    pub fn weight(&self, e: &Edge) -> Rational {
        self.weights.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    /// Positive weights in canonical edge order.
    pub fn weights(&self) -> &BTreeMap<Edge, Rational> {
        &self.weights
    }

    pub fn support(&self) -> EdgeSet {
        self.weights.keys().copied().collect()
    }

    pub fn vertex_sum(&self, v: Vertex) -> Rational {
        self.graph
            .neighbors(v)
            .iter()
            .map(|&w| self.weight(&Edge::new(v, w)))
            .sum()
    }

    pub fn vertex_sums(&self) -> Vec<Rational> {
        self.graph.vertices().map(|v| self.vertex_sum(v)).collect()
    }

    /// Every vertex sum equals exactly 1.
    pub fn is_perfect(&self) -> bool {
        self.graph
            .vertices()
            .all(|v| self.vertex_sum(v) == Rational::one())
    }

    /// Same vertex sums everywhere.
    pub fn is_equivalent(&self, other: &FractionalMatching<'_>) -> bool {
        self.vertex_sums() == other.vertex_sums()
    }

    /// Distinct positive weights.
    pub fn range(&self) -> BTreeSet<Rational> {
        self.weights.values().cloned().collect()
    }

    /// Total weight `sum_e f(e)`.
    pub fn total_weight(&self) -> Rational {
        self.weights.values().sum()
    }

    /// Support contains no pendant edge (one endpoint of support degree 1, the other above 1).
    pub fn support_has_pendant_edge(&self) -> bool {
        let support = self.support();
        let adj = crate::graph::Adjacency::new(self.graph.vertex_count(), &support);
        support.iter().any(|e| {
            let (a, b) = (adj.degree(e.u()), adj.degree(e.v()));
            (a == 1 && b > 1) || (b == 1 && a > 1)
        })
    }
}

/// A fractional perfect matching, if one exists.
///
/// Computed through the bipartite double cover: vertex `v` appears once on
/// each side, every edge `(u, v)` yields the arcs `u -> v` and `v -> u`, and a
/// perfect matching of that bipartite graph halves into a `{1/2, 1}`-valued
/// fractional perfect matching. The double cover has no perfect matching
/// exactly when the graph has no fractional perfect matching.
pub fn fractional_perfect_matching(g: &Graph) -> Option<FractionalMatching<'_>> {
    let all: Vec<Vertex> = g.vertices().collect();
    let arcs = double_cover_matching(g, &all)?;
    let half = rational(1, 2);
    let mut weights: BTreeMap<Edge, Rational> = BTreeMap::new();
    for (u, v) in arcs {
        *weights.entry(Edge::new(u, v)).or_insert_with(Rational::zero) += &half;
    }
    Some(FractionalMatching::from_parts(g, weights))
}

/// Perfect matching of the double cover restricted to `vertices`, as arcs
/// `(left, right)`. Kuhn's augmenting paths in increasing vertex order.
pub(crate) fn double_cover_matching(g: &Graph, vertices: &[Vertex]) -> Option<Vec<(Vertex, Vertex)>> {
    let n = g.vertex_count();
    let mut inside = vec![false; n];
    for &v in vertices {
        inside[v] = true;
    }
    let mut right_mate = vec![NONE; n];

    fn try_left(
        g: &Graph,
        inside: &[bool],
        u: Vertex,
        visited: &mut [bool],
        right_mate: &mut [usize],
    ) -> bool {
        for &w in g.neighbors(u) {
            if !inside[w] || visited[w] {
                continue;
            }
            visited[w] = true;
            if right_mate[w] == NONE || try_left(g, inside, right_mate[w], visited, right_mate) {
                right_mate[w] = u;
                return true;
            }
        }
        false
    }

    let mut visited = vec![false; n];
    for &u in vertices {
        visited.iter_mut().for_each(|x| *x = false);
        if !try_left(g, &inside, u, &mut visited, &mut right_mate) {
            return None;
        }
    }
    Some(vertices.iter().map(|&w| (right_mate[w], w)).collect())
}
