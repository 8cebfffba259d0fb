//! Support-shrinking reductions of fractional matchings.
//!
//! Both reductions keep every vertex sum unchanged and only ever remove edges
//! from the support. Applied in sequence to a fractional perfect matching they
//! leave a support made of isolated single edges (weight 1) and isolated odd
//! cycles (weight 1/2).

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::graph::{find_even_cycle, find_non_isolated_odd_cycle, Adjacency, Edge, Vertex};
use crate::matching::FractionalMatching;
use crate::{rational, Error, Rational, Result};

/// Removes every even cycle from the support of `f`.
///
/// Each round takes an even cycle, picks its lightest edge `e0` (first in
/// canonical order on ties), and adds `-f(e0), +f(e0), -f(e0), ...` around the
/// cycle starting at `e0`. Vertex sums are untouched and `e0` drops out.
pub fn eliminate_even_cycles<'g>(f: &FractionalMatching<'g>) -> FractionalMatching<'g> {
    let g = f.graph();
    let mut weights = f.weights().clone();
    loop {
        let support = weights.keys().copied().collect();
        let Some(cycle) = find_even_cycle(g, &support) else {
            break;
        };
        let edges = cycle.edges();
        let start = lightest(&edges, &weights, |_| Rational::one());
        let amount = weights[&edges[start]].clone();
        for (offset, e) in edges.iter().cycle().skip(start).take(edges.len()).enumerate() {
            let w = weights.get_mut(e).expect("cycle edge in support");
            if offset % 2 == 0 {
                *w -= &amount;
            } else {
                *w += &amount;
            }
        }
        weights.retain(|_, w| !w.is_zero());
    }
    FractionalMatching::from_parts(g, weights)
}

/// Index of the edge minimising `f(e) / scale(e)`, ties to the canonically
/// smallest edge.
fn lightest(edges: &[Edge], weights: &BTreeMap<Edge, Rational>, scale: impl Fn(&Edge) -> Rational) -> usize {
    let mut best = 0;
    let mut best_value = &weights[&edges[0]] / scale(&edges[0]);
    for (i, e) in edges.iter().enumerate().skip(1) {
        let value = &weights[e] / scale(e);
        if value < best_value || (value == best_value && *e < edges[best]) {
            best = i;
            best_value = value;
        }
    }
    best
}

/// Makes every odd cycle of the support an isolated component.
///
/// `f` must be perfect and its support free of even cycles. While some odd
/// cycle `C` has a vertex `v0` with an extra support edge `(v0, v1)`, walk
/// from `v1` (never straight back) until the walk closes on itself at `v_l`.
/// The cycle, the handle `v0 .. v_l` and the closing odd cycle get signed
/// coefficients in `{±1/2, ±1}` that cancel at every vertex; shifting `f` along
/// them by the largest feasible amount zeroes one edge. Rounds repeat until
/// `C` or `(v0, v1)` leaves the support.
pub fn isolate_odd_cycles<'g>(f: &FractionalMatching<'g>) -> Result<FractionalMatching<'g>> {
    if !f.is_perfect() {
        return Err(Error::NotPerfect);
    }
    let g = f.graph();
    if find_even_cycle(g, &f.support()).is_some() {
        return Err(Error::EvenCyclePresent);
    }

    let half = rational(1, 2);
    let mut weights = f.weights().clone();
    loop {
        let support = weights.keys().copied().collect();
        let Some((cycle, v0)) = find_non_isolated_odd_cycle(g, &support) else {
            break;
        };
        let adj = Adjacency::new(g.vertex_count(), &support);
        let v1 = adj
            .neighbors(v0)
            .iter()
            .copied()
            .find(|&w| !cycle.contains(w))
            .ok_or(Error::EvenCyclePresent)?;

        let ring = cycle.rotated_to(v0);
        let ring_edges: Vec<Edge> = (0..ring.len())
            .map(|i| Edge::new(ring[i], ring[(i + 1) % ring.len()]))
            .collect();
        let anchor = Edge::new(v0, v1);

        while ring_edges
            .iter()
            .chain([&anchor])
            .all(|e| weights.contains_key(e))
        {
            let adj = Adjacency::new(g.vertex_count(), weights.keys());
            let (path, closing) = closing_walk(&adj, v0, v1);
            debug_assert!(path[1..].iter().all(|&v| v == v0 || !cycle.contains(v)));

            let mut coefficient: Vec<(Edge, Rational)> = Vec::new();
            for (i, e) in ring_edges.iter().enumerate() {
                let c = if i % 2 == 0 { half.clone() } else { -half.clone() };
                coefficient.push((*e, c));
            }
            // The ring is odd, so its last coefficient is +1/2 like its first.
            let mut last_sign = Rational::one();
            for k in 0..closing {
                let c = if k % 2 == 0 {
                    -Rational::one()
                } else {
                    Rational::one()
                };
                last_sign = c.clone();
                coefficient.push((Edge::new(path[k], path[k + 1]), c));
            }
            let r = path.len() - 1;
            for k in closing..r {
                let sign = if (k - closing) % 2 == 0 {
                    -&last_sign
                } else {
                    last_sign.clone()
                };
                let c = sign * &half;
                coefficient.push((Edge::new(path[k], path[k + 1]), c));
            }

            let edges: Vec<Edge> = coefficient.iter().map(|(e, _)| *e).collect();
            let magnitude: BTreeMap<Edge, Rational> =
                coefficient.iter().map(|(e, c)| (*e, c.abs())).collect();
            let pick = lightest(&edges, &weights, |e| magnitude[e].clone());
            let flip = coefficient[pick].1.is_positive();
            let step = &weights[&edges[pick]] / &magnitude[&edges[pick]];

            for (e, c) in &coefficient {
                let delta = if flip { -c * &step } else { c * &step };
                *weights.get_mut(e).expect("walk edge in support") += delta;
            }
            debug_assert!(weights.values().all(|w| !w.is_negative()));
            weights.retain(|_, w| !w.is_zero());
        }
    }
    let out = FractionalMatching::from_parts(g, weights);
    debug_assert!(out.is_equivalent(f));
    Ok(out)
}

/// Walk `v0, v1, v2, ...` always taking the smallest support neighbor other
/// than the previous vertex, until a vertex repeats. Returns the walk with the
/// repeated vertex appended, and the index `l` of its first occurrence.
fn closing_walk(adj: &Adjacency, v0: Vertex, v1: Vertex) -> (Vec<Vertex>, usize) {
    let mut path = alloc::vec![v0, v1];
    loop {
        let len = path.len();
        let (prev, cur) = (path[len - 2], path[len - 1]);
        // Perfect supports have no pendant edges, so a way forward exists.
        let next = adj
            .neighbors(cur)
            .iter()
            .copied()
            .find(|&w| w != prev)
            .expect("support vertex of degree at least 2");
        if let Some(l) = path.iter().position(|&w| w == next) {
            path.push(next);
            return (path, l);
        }
        path.push(next);
    }
}

/// Both reductions in sequence: the result's support consists of single
/// edges of weight 1 and isolated odd cycles of weight 1/2.
pub fn canonicalize_fpm<'g>(f: &FractionalMatching<'g>) -> Result<FractionalMatching<'g>> {
    if !f.is_perfect() {
        return Err(Error::NotPerfect);
    }
    isolate_odd_cycles(&eliminate_even_cycles(f))
}

/// Component of a canonical support.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Piece {
    Single(Edge),
    OddCycle(crate::graph::Cycle),
}

impl Piece {
    pub fn edges(&self) -> Vec<Edge> {
        match self {
            Piece::Single(e) => alloc::vec![*e],
            Piece::OddCycle(c) => c.edges(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        match self {
            Piece::Single(_) => 2,
            Piece::OddCycle(c) => c.len(),
        }
    }
}

/// Splits the support of `f` into single edges of weight 1 and odd cycles of
/// weight 1/2, or `None` if some component is anything else.
pub fn canonical_pieces(f: &FractionalMatching<'_>) -> Option<Vec<Piece>> {
    let g = f.graph();
    let support = f.support();
    let adj = Adjacency::new(g.vertex_count(), &support);
    let half = rational(1, 2);
    let mut pieces = Vec::new();
    for comp in adj.components() {
        let comp_edges: Vec<Edge> = support
            .iter()
            .filter(|e| comp.contains(&e.u()))
            .copied()
            .collect();
        if comp.len() == 2 && comp_edges.len() == 1 {
            if f.weight(&comp_edges[0]) != Rational::one() {
                return None;
            }
            pieces.push(Piece::Single(comp_edges[0]));
            continue;
        }
        let is_odd_ring = comp.len() % 2 == 1
            && comp.len() >= 3
            && comp.iter().all(|&v| adj.degree(v) == 2)
            && comp_edges.iter().all(|e| f.weight(e) == half);
        if !is_odd_ring {
            return None;
        }
        let mut seq = alloc::vec![comp[0]];
        let mut prev = comp[0];
        let mut cur = adj.neighbors(comp[0])[0];
        while cur != comp[0] {
            seq.push(cur);
            let next = adj.neighbors(cur).iter().copied().find(|&w| w != prev)?;
            prev = cur;
            cur = next;
        }
        pieces.push(Piece::OddCycle(crate::graph::Cycle::from_sequence(
            seq, &support,
        )?));
    }
    Some(pieces)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::*;
    use crate::graph::Graph;

    fn uniform<'g>(g: &'g Graph, edges: &[(usize, usize)], w: Rational) -> FractionalMatching<'g> {
        FractionalMatching::new(g, edges.iter().map(|&(a, b)| (Edge::new(a, b), w.clone()))).unwrap()
    }

    #[test]
    fn even_cycle_elimination_on_c4() {
        let g = c4();
        let f = uniform(&g, &[(0, 1), (1, 2), (2, 3), (0, 3)], rational(1, 2));
        let out = eliminate_even_cycles(&f);
        assert!(out.is_equivalent(&f));
        // Lightest edge (0,1) goes to zero; its opposite (2,3) too.
        assert_eq!(out.support(), [Edge::new(1, 2), Edge::new(0, 3)].into());
        assert!(out.weights().values().all(|w| *w == Rational::one()));
    }

    #[test]
    fn eliminations_leave_odd_and_single_supports_alone() {
        let g = c3();
        let f = uniform(&g, &[(0, 1), (1, 2), (0, 2)], rational(1, 2));
        assert_eq!(eliminate_even_cycles(&f), f);
        assert_eq!(isolate_odd_cycles(&f).unwrap(), f);
        assert_eq!(canonicalize_fpm(&f).unwrap(), f);

        let g = k2();
        let f = uniform(&g, &[(0, 1)], Rational::one());
        assert_eq!(eliminate_even_cycles(&f), f);
        assert_eq!(canonicalize_fpm(&f).unwrap(), f);
    }

    #[test]
    fn tt6_triangles_are_already_isolated() {
        let g = tt6();
        let f = uniform(
            &g,
            &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)],
            rational(1, 2),
        );
        assert_eq!(isolate_odd_cycles(&f).unwrap(), f);
        assert_eq!(canonicalize_fpm(&f).unwrap(), f);
        assert_eq!(canonical_pieces(&f).unwrap().len(), 2);
    }

    fn weighted<'g>(g: &'g Graph, entries: &[((usize, usize), (i64, i64))]) -> FractionalMatching<'g> {
        FractionalMatching::new(
            g,
            entries
                .iter()
                .map(|&((a, b), (p, q))| (Edge::new(a, b), rational(p, q))),
        )
        .unwrap()
    }

    /// Bridge at 1/2, near triangle edges at 1/4, far edges at 3/4. One inner
    /// round along the handle (2,3) and the triangle {3,4,5} zeroes (0,2) and
    /// leaves the perfect matching {(0,1),(2,3),(4,5)}.
    #[test]
    fn bridged_triangles_collapse_to_a_matching() {
        let g = tt6();
        let f = weighted(
            &g,
            &[
                ((0, 1), (3, 4)),
                ((0, 2), (1, 4)),
                ((1, 2), (1, 4)),
                ((2, 3), (1, 2)),
                ((3, 4), (1, 4)),
                ((3, 5), (1, 4)),
                ((4, 5), (3, 4)),
            ],
        );
        assert!(f.is_perfect());
        let out = isolate_odd_cycles(&f).unwrap();
        assert!(out.is_equivalent(&f));
        assert_eq!(
            out.support(),
            [Edge::new(0, 1), Edge::new(2, 3), Edge::new(4, 5)].into()
        );
        assert!(out.weights().values().all(|w| *w == Rational::one()));
    }

    /// Bowtie: triangles {0,1,2} and {0,3,4} share vertex 0. The walk from
    /// (0,3) closes back on 0 itself, so there is no handle.
    #[test]
    fn bowtie_closes_on_the_branch_vertex() {
        let g = Graph::new(5, [(0, 1), (1, 2), (0, 2), (0, 3), (3, 4), (0, 4)]).unwrap();
        let f = weighted(
            &g,
            &[
                ((0, 1), (1, 4)),
                ((0, 2), (1, 4)),
                ((1, 2), (3, 4)),
                ((0, 3), (1, 4)),
                ((0, 4), (1, 4)),
                ((3, 4), (3, 4)),
            ],
        );
        assert!(f.is_perfect());
        let out = isolate_odd_cycles(&f).unwrap();
        let expected = weighted(
            &g,
            &[
                ((1, 2), (1, 1)),
                ((0, 3), (1, 2)),
                ((0, 4), (1, 2)),
                ((3, 4), (1, 2)),
            ],
        );
        assert_eq!(out, expected);
        assert_eq!(canonical_pieces(&out).unwrap().len(), 2);
    }

    #[test]
    fn rejects_even_cycles_and_imperfect_inputs() {
        let g = c4();
        let f = uniform(&g, &[(0, 1), (1, 2), (2, 3), (0, 3)], rational(1, 2));
        assert_eq!(isolate_odd_cycles(&f), Err(Error::EvenCyclePresent));
        let f = uniform(&g, &[(0, 1)], Rational::one());
        assert_eq!(canonicalize_fpm(&f), Err(Error::NotPerfect));
    }
}
