#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use adgame_core::matching::{fractional_perfect_matching, FractionalMatching};
use adgame_core::{Edge, Graph, Rational, Vertex};
use num_traits::{One, Zero};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::Rng;

pub fn graph(n: usize, edges: &[(usize, usize)]) -> Graph {
    Graph::new(n, edges.iter().copied()).unwrap()
}

pub fn k2() -> Graph {
    graph(2, &[(0, 1)])
}

pub fn p3() -> Graph {
    graph(3, &[(0, 1), (1, 2)])
}

pub fn c3() -> Graph {
    graph(3, &[(0, 1), (1, 2), (0, 2)])
}

pub fn c4() -> Graph {
    graph(4, &[(0, 1), (1, 2), (2, 3), (0, 3)])
}

pub fn c6() -> Graph {
    graph(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 5)])
}

/// Two triangles joined by the bridge (2,3).
pub fn tt6() -> Graph {
    graph(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (2, 3)])
}

/// v1..v8 as 0..7: v1 adjacent to v2 and v4, v2 to v3, v4 to v5..v8.
pub fn star8() -> Graph {
    graph(8, &[(0, 1), (0, 3), (1, 2), (3, 4), (3, 5), (3, 6), (3, 7)])
}

pub fn fixtures() -> Vec<(&'static str, Graph)> {
    vec![
        ("K2", k2()),
        ("P3", p3()),
        ("C3", c3()),
        ("C4", c4()),
        ("C6", c6()),
        ("TT6", tt6()),
        ("STAR8", star8()),
    ]
}

pub fn r(numer: i64, denom: i64) -> Rational {
    Rational::new(numer.into(), denom.into())
}

fn is_connected(n: usize, edges: &[(usize, usize)]) -> bool {
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(u) = stack.pop() {
        for &w in &adj[u] {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// Every connected labeled graph on `n >= 2` vertices.
pub fn all_connected_graphs(n: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let mut out = Vec::new();
    for mask in 0u64..(1 << pairs.len()) {
        let edges: Vec<(usize, usize)> = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &p)| p)
            .collect();
        if edges.len() + 1 >= n && is_connected(n, &edges) {
            out.push(graph(n, &edges));
        }
    }
    out
}

/// A random connected graph: a random spanning tree plus each remaining pair
/// with probability `density`, under a random labeling.
pub fn random_connected_graph(rng: &mut StdRng, n: usize, density: f64) -> Graph {
    let mut labels: Vec<usize> = (0..n).collect();
    labels.shuffle(rng);
    let mut edges = BTreeSet::new();
    for i in 1..n {
        let j = rng.gen_range(0..i);
        edges.insert(Edge::new(labels[i], labels[j]));
    }
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(density) {
                edges.insert(Edge::new(u, v));
            }
        }
    }
    Graph::new(n, edges.iter().map(|e| e.endpoints())).unwrap()
}

/// [`random_connected_graph`] with a density drawn from `[0, max_density)`.
pub fn random_graph(rng: &mut StdRng, n: usize, max_density: f64) -> Graph {
    let density = rng.gen_range(0.0..max_density);
    random_connected_graph(rng, n, density)
}

/// The corpus for the exhaustive comparisons: all connected labeled graphs
/// with up to `exhaustive` vertices, then `samples` random connected graphs
/// for each larger order up to `max`.
pub fn corpus(rng: &mut StdRng, exhaustive: usize, max: usize, samples: usize) -> Vec<Graph> {
    let mut out: Vec<Graph> = (2..=exhaustive).flat_map(all_connected_graphs).collect();
    for n in exhaustive + 1..=max {
        for _ in 0..samples {
            out.push(random_graph(rng, n, 0.6));
        }
    }
    out
}

/// Whether the subgraph induced by `group` is spanned by vertex-disjoint
/// single edges and odd cycles.
pub fn spanned_by_edges_and_odd_cycles(g: &Graph, group: &[Vertex]) -> bool {
    fn cycles_back(
        g: &Graph,
        start: Vertex,
        at: Vertex,
        path: &mut Vec<Vertex>,
        free: &mut BTreeSet<Vertex>,
    ) -> bool {
        for &w in g.neighbors(at) {
            if w == start && path.len() >= 3 && path.len() % 2 == 1 && cover(g, free) {
                return true;
            }
            if free.remove(&w) {
                path.push(w);
                if cycles_back(g, start, w, path, free) {
                    return true;
                }
                path.pop();
                free.insert(w);
            }
        }
        false
    }

    fn cover(g: &Graph, free: &mut BTreeSet<Vertex>) -> bool {
        let Some(&v) = free.iter().next() else {
            return true;
        };
        free.remove(&v);
        for &w in g.neighbors(v) {
            if free.remove(&w) {
                if cover(g, free) {
                    free.insert(w);
                    free.insert(v);
                    return true;
                }
                free.insert(w);
            }
        }
        let mut path = vec![v];
        let found = cycles_back(g, v, v, &mut path, free);
        free.insert(v);
        found
    }

    let mut free: BTreeSet<Vertex> = group.iter().copied().collect();
    cover(g, &mut free)
}

/// Brute-force delta-partitionability: try every split of the vertices into
/// `delta` groups of equal size and test each group independently.
pub fn partition_oracle(g: &Graph, delta: usize) -> bool {
    let n = g.vertex_count();
    if n % delta != 0 || n / delta < 2 {
        return false;
    }
    let size = n / delta;
    let mut group_of = vec![usize::MAX; n];

    fn assign(
        g: &Graph,
        v: usize,
        size: usize,
        delta: usize,
        used: usize,
        group_of: &mut Vec<usize>,
    ) -> bool {
        let n = g.vertex_count();
        if v == n {
            return (0..delta).all(|k| {
                let members: Vec<Vertex> = (0..n).filter(|&u| group_of[u] == k).collect();
                spanned_by_edges_and_odd_cycles(g, &members)
            });
        }
        // groups are opened in order so each split is seen once
        for k in 0..=used.min(delta - 1) {
            if group_of.iter().filter(|&&x| x == k).count() == size {
                continue;
            }
            group_of[v] = k;
            if assign(g, v + 1, size, delta, used.max(k + 1), group_of) {
                return true;
            }
            group_of[v] = usize::MAX;
        }
        false
    }

    assign(g, 0, size, delta, 0, &mut group_of)
}

/// Random rational in `[0, 1]` with a small denominator.
pub fn random_probability(rng: &mut StdRng) -> Rational {
    let denom = rng.gen_range(1..=12);
    r(rng.gen_range(0..=denom), denom)
}

/// Random distribution over `keys` with support of random size.
pub fn random_distribution<K: Copy + Ord>(rng: &mut StdRng, keys: &[K]) -> Vec<(K, Rational)> {
    let k = rng.gen_range(1..=keys.len());
    let chosen: Vec<K> = keys.choose_multiple(rng, k).copied().collect();
    let raw: Vec<i64> = chosen.iter().map(|_| rng.gen_range(1..=6)).collect();
    let total: i64 = raw.iter().sum();
    chosen
        .into_iter()
        .zip(raw)
        .map(|(key, w)| (key, r(w, total)))
        .collect()
}

/// A random connected graph on `n` vertices that has a fractional perfect
/// matching: vertices are first split into single edges and odd cycles.
pub fn random_fpm_graph(rng: &mut StdRng, n: usize) -> Graph {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut edges = BTreeSet::new();
    let mut rest = &order[..];
    let mut pieces: Vec<&[usize]> = Vec::new();
    while !rest.is_empty() {
        let mut sizes = vec![2];
        if rest.len() >= 3 {
            sizes.extend((3..=rest.len()).step_by(2));
        }
        sizes.retain(|&s| rest.len() - s != 1);
        let s = *sizes.choose(rng).unwrap();
        pieces.push(&rest[..s]);
        rest = &rest[s..];
    }
    for piece in &pieces {
        if piece.len() == 2 {
            edges.insert(Edge::new(piece[0], piece[1]));
        } else {
            for i in 0..piece.len() {
                edges.insert(Edge::new(piece[i], piece[(i + 1) % piece.len()]));
            }
        }
    }
    for w in pieces.windows(2) {
        edges.insert(Edge::new(*w[0].choose(rng).unwrap(), *w[1].choose(rng).unwrap()));
    }
    let density = rng.gen_range(0.0..0.5);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(density) {
                edges.insert(Edge::new(u, v));
            }
        }
    }
    Graph::new(n, edges.iter().map(|e| e.endpoints())).unwrap()
}

/// A random fractional perfect matching: a convex combination of
/// half-integral ones found under random relabelings of `g`.
pub fn random_fpm<'g>(rng: &mut StdRng, g: &'g Graph) -> FractionalMatching<'g> {
    let n = g.vertex_count();
    let parts = rng.gen_range(1..=4);
    let coefficients: Vec<i64> = (0..parts).map(|_| rng.gen_range(1..=5)).collect();
    let total: i64 = coefficients.iter().sum();
    let mut weights: BTreeMap<Edge, Rational> = BTreeMap::new();
    for c in coefficients {
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(rng);
        let relabeled = Graph::new(n, g.edges().iter().map(|e| (perm[e.u()], perm[e.v()]))).unwrap();
        let f = fractional_perfect_matching(&relabeled).expect("graph has an FPM");
        let mut inverse = vec![0; n];
        for (i, &p) in perm.iter().enumerate() {
            inverse[p] = i;
        }
        for (e, w) in f.weights() {
            let original = Edge::new(inverse[e.u()], inverse[e.v()]);
            *weights.entry(original).or_insert_with(Rational::zero) += w * r(c, total);
        }
    }
    let f = FractionalMatching::new(g, weights).unwrap();
    assert!(f.is_perfect());
    f
}

/// Checks that the support of `f` splits into weight-1 single edges and odd
/// cycles carrying 1/2 on every edge.
pub fn is_canonical(f: &FractionalMatching<'_>) -> bool {
    let g = f.graph();
    let support = f.support();
    let mut adj: BTreeMap<Vertex, Vec<Vertex>> = BTreeMap::new();
    for e in &support {
        adj.entry(e.u()).or_default().push(e.v());
        adj.entry(e.v()).or_default().push(e.u());
    }
    let mut seen = BTreeSet::new();
    for start in g.vertices() {
        if seen.contains(&start) {
            continue;
        }
        let mut component = BTreeSet::from([start]);
        let mut stack = vec![start];
        while let Some(u) = stack.pop() {
            for &w in adj.get(&u).into_iter().flatten() {
                if component.insert(w) {
                    stack.push(w);
                }
            }
        }
        seen.extend(component.iter().copied());
        let edges: Vec<&Edge> = support.iter().filter(|e| component.contains(&e.u())).collect();
        let ok = if component.len() == 2 {
            edges.len() == 1 && f.weight(edges[0]).is_one()
        } else {
            component.len() % 2 == 1
                && component.len() >= 3
                && edges.len() == component.len()
                && component.iter().all(|v| adj[v].len() == 2)
                && edges.iter().all(|e| f.weight(e) == r(1, 2))
        };
        if !ok {
            return false;
        }
    }
    true
}
